//! Subcommands.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use mutata::classify::families::Shape;
use mutata::companion::CompanionJson;
use mutata::explore::{ClassStatus, Truncation};
use mutata::{
    apply_sequence, apply_sequence_diagram, classify, companion_positivity, enumerate_class, find_admissible_for,
    generate_family, is_admissible, scan_family_occurrences, Caps, Companion, Diagram, ExchangeMatrix, FamilyKind,
    VerdictKind,
};
use serde_json::{json, Value};

use crate::input::{self, Loaded, Seed};
use crate::{CliError, EXIT_CAP};

#[derive(Debug, Parser)]
#[command(name = "mutata", version, about = "Mutation classes of skew-symmetrizable matrices and their diagrams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a matrix or diagram file.
    Check { input: PathBuf },
    /// Mutate at one vertex or along a sequence; output uses the input format.
    Mutate {
        input: PathBuf,
        #[arg(short = 'k', long = "vertex", conflicts_with = "seq")]
        vertex: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        seq: Option<Vec<usize>>,
    },
    /// Find an admissible companion, or check a given one.
    Companion {
        input: PathBuf,
        #[arg(long, conflicts_with = "check")]
        find: bool,
        #[arg(long, value_name = "FILE")]
        check: Option<PathBuf>,
    },
    /// Full classification verdict as JSON.
    Classify {
        input: PathBuf,
        /// Print the one-line summary instead of JSON.
        #[arg(long)]
        text: bool,
    },
    /// Mutation class operations.
    Class {
        #[command(subcommand)]
        action: ClassAction,
    },
    /// Induced subdiagrams belonging to the named families.
    Scan {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "critical")]
        family: Vec<String>,
    },
    /// Members of a family, one diagram per line. `--family extended:D --params n=4`.
    Generate {
        #[arg(long)]
        family: String,
        #[arg(long, value_delimiter = ',')]
        params: Vec<String>,
    },
    /// Replay an exported session `{"seed", "path"}` and print the resulting diagram.
    Replay { export: PathBuf },
    /// Local HTTP session service.
    Serve {
        #[arg(long, default_value_t = 8731)]
        port: u16,
    },
}

#[derive(Debug, Subcommand)]
pub enum ClassAction {
    /// Breadth-first enumeration, one member per line then a status line.
    Enumerate {
        input: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
        /// Count labeled matrices instead of isomorphism classes.
        #[arg(long)]
        labeled: bool,
    },
}

fn write_err(e: std::io::Error) -> CliError {
    if e.kind() == std::io::ErrorKind::BrokenPipe {
        // The reader went away, e.g. `| head`; not an input error.
        return CliError { error: "BrokenPipe".into(), message: e.to_string(), code: 0 };
    }
    CliError::invalid("Io", e.to_string())
}

fn line(out: &mut dyn Write, v: &impl serde::Serialize) -> Result<(), CliError> {
    let s = serde_json::to_string(v).expect("value serializes");
    writeln!(out, "{s}").map_err(write_err)
}

fn pretty(out: &mut dyn Write, v: &impl serde::Serialize) -> Result<(), CliError> {
    let s = serde_json::to_string_pretty(v).expect("value serializes");
    writeln!(out, "{s}").map_err(write_err)
}

fn caps() -> Result<Caps, CliError> {
    Ok(Caps::from_env()?)
}

/// Run a parsed command; the returned value is the exit code.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Check { input } => check(&input, out),
        Command::Mutate { input, vertex, seq } => {
            let path = match (vertex, seq) {
                (Some(k), None) => vec![k],
                (None, Some(s)) => s,
                _ => return Err(CliError::invalid("BadParams", "give -k <vertex> or --seq a,b,c")),
            };
            mutate(&input, &path, out)
        }
        Command::Companion { input, find: _, check } => companion(&input, check.as_deref(), out),
        Command::Classify { input, text } => classify_cmd(&input, text, out),
        Command::Class { action: ClassAction::Enumerate { input, cap, labeled } } => enumerate(&input, cap, labeled, out),
        Command::Scan { input, family } => scan(&input, &family, out),
        Command::Generate { family, params } => generate(&family, &params, out),
        Command::Replay { export } => replay(&export, out),
        Command::Serve { port } => {
            crate::service::serve(port, caps()?).map_err(|e| CliError::invalid("Io", e.to_string()))?;
            Ok(0)
        }
    }
}

fn check(path: &Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let loaded = input::load(path)?;
    let g = loaded.seed.diagram();
    let b = loaded.seed.matrix()?;
    let kind = match loaded.seed {
        Seed::Matrix(_) => "matrix",
        Seed::Diagram(_) => "diagram",
    };
    line(
        out,
        &json!({
            "valid": true,
            "kind": kind,
            "n": b.n(),
            "symmetrizer": b.symmetrizer(),
            "skew_symmetric": b.is_skew_symmetric(),
            "connected": g.is_connected(),
            "max_weight": g.max_weight(),
            "diagram": g,
        }),
    )?;
    Ok(0)
}

fn vertices_in_range(n: usize, path: &[usize]) -> Result<(), CliError> {
    match path.iter().find(|&&k| k >= n) {
        Some(&k) => Err(mutata::Error::BadVertex { vertex: k, n }.into()),
        None => Ok(()),
    }
}

fn mutate(path: &Path, steps: &[usize], out: &mut dyn Write) -> Result<i32, CliError> {
    let Loaded { seed, format } = input::load(path)?;
    let result = match seed {
        Seed::Matrix(b) => {
            vertices_in_range(b.n(), steps)?;
            Seed::Matrix(apply_sequence(&b, steps))
        }
        Seed::Diagram(g) => {
            vertices_in_range(g.n(), steps)?;
            Seed::Diagram(apply_sequence_diagram(&g, steps))
        }
    };
    write!(out, "{}", input::render(&result, format)?).map_err(write_err)?;
    Ok(0)
}

/// Exchange matrix carrying the companion's magnitudes and the diagram's orientation.
fn matrix_for_companion(seed: &Seed, a: &Companion) -> Result<ExchangeMatrix, CliError> {
    match seed {
        Seed::Matrix(b) => Ok(b.clone()),
        Seed::Diagram(g) => {
            let n = g.n();
            if a.n() != n {
                return Err(mutata::Error::DifferentShape(format!("companion has {} rows, diagram {n} vertices", a.n())).into());
            }
            let rows = (0..n).map(|i| (0..n).map(|j| g.signed(i, j).signum() * a.get(i, j).abs()).collect()).collect();
            let b = ExchangeMatrix::new(rows)?;
            if mutata::diagram_of(&b) != *g {
                return Err(mutata::Error::NotACompanion("companion weights disagree with the diagram".into()).into());
            }
            Ok(b)
        }
    }
}

fn companion(path: &Path, check: Option<&Path>, out: &mut dyn Write) -> Result<i32, CliError> {
    let loaded = input::load(path)?;
    let g = loaded.seed.diagram();
    match check {
        Some(file) => {
            let v: Value = serde_json::from_str(&input::read_source(file)?)
                .map_err(|e| CliError::parse(format!("invalid JSON: {e}")))?;
            let a: Companion = match v.get("A") {
                Some(_) => serde_json::from_value::<CompanionJson>(v).map(|c| c.a),
                None => serde_json::from_value(v),
            }
            .map_err(|e| CliError::invalid("NotACompanion", e.to_string()))?;
            let b = matrix_for_companion(&loaded.seed, &a)?;
            let report = is_admissible(&b, &a)?;
            let positivity = report.admissible.then(|| companion_positivity(&b, &a));
            line(out, &json!({ "admissible": report.admissible, "violations": report.violations, "positivity": positivity }))?;
        }
        None => {
            let b = loaded.seed.matrix()?;
            match find_admissible_for(&b) {
                Some(a) => {
                    let positivity = companion_positivity(&b, &a);
                    line(out, &json!({ "A": a, "bound_to": g, "matrix": b.rows(), "positivity": positivity }))?;
                }
                None => line(out, &json!({ "A": null, "bound_to": g, "matrix": b.rows() }))?,
            }
        }
    }
    Ok(0)
}

fn classify_cmd(path: &Path, text: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let b = input::load(path)?.seed.matrix()?;
    let v = classify(&b, &caps()?)?;
    if text {
        writeln!(out, "{}", v.summary()).map_err(write_err)?;
    } else {
        pretty(out, &v)?;
    }
    Ok(if matches!(v.kind, VerdictKind::Unknown(_)) { EXIT_CAP } else { 0 })
}

fn enumerate(path: &Path, cap: Option<usize>, labeled: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = input::load(path)?.seed.diagram();
    let mut caps = caps()?;
    if let Some(c) = cap {
        caps.max_members = c;
    }
    caps.labeled |= labeled;
    let e = enumerate_class(&g, &caps)?;
    for m in &e.members {
        line(out, m)?;
    }
    line(out, &json!({ "status": e.status, "size": e.size(), "certificate": e.certificate }))?;
    Ok(match e.status {
        ClassStatus::Complete | ClassStatus::Truncated(Truncation::Infinite) => 0,
        ClassStatus::Truncated(_) => EXIT_CAP,
    })
}

fn parse_kinds(names: &[String]) -> Result<Vec<FamilyKind>, CliError> {
    names.iter().map(|s| FamilyKind::parse(s).map_err(CliError::from)).collect()
}

fn scan(path: &Path, family: &[String], out: &mut dyn Write) -> Result<i32, CliError> {
    let g = input::load(path)?.seed.diagram();
    let kinds = parse_kinds(family)?;
    let occ = scan_family_occurrences(&g, &kinds)?;
    line(out, &occ)?;
    Ok(0)
}

fn generate(family: &str, params: &[String], out: &mut dyn Write) -> Result<i32, CliError> {
    let (kind, code) = family
        .split_once(':')
        .ok_or_else(|| CliError::invalid("BadParams", "family must look like kind:code, e.g. extended:D"))?;
    let kind = FamilyKind::parse(kind)?;
    let mut map = BTreeMap::new();
    for p in params.iter().filter(|p| !p.is_empty()) {
        let (k, v) = p.split_once('=').ok_or_else(|| CliError::invalid("BadParams", format!("bad parameter {p:?}")))?;
        let v: usize = v.parse().map_err(|_| CliError::invalid("BadParams", format!("bad value in {p:?}")))?;
        map.insert(k.to_string(), v);
    }
    let shape = Shape::from_code(kind, code, &map)?;
    for g in generate_family(shape)? {
        line(out, &g)?;
    }
    Ok(0)
}

/// Seed and path from an exported session.
pub fn replay_export(v: &Value) -> Result<Diagram, CliError> {
    let path: Vec<usize> = serde_json::from_value(v.get("path").cloned().unwrap_or(json!([])))
        .map_err(|e| CliError::parse(format!("path: {e}")))?;
    let seed = match (v.get("matrix"), v.get("seed")) {
        (Some(m), _) => input::seed_from_json(json!({ "matrix": m }))?.seed,
        (None, Some(s)) => input::seed_from_json(s.clone())?.seed,
        (None, None) => return Err(CliError::parse("export has no seed")),
    };
    let g = seed.diagram();
    vertices_in_range(g.n(), &path)?;
    Ok(match seed {
        Seed::Matrix(b) => mutata::diagram_of(&apply_sequence(&b, &path)),
        Seed::Diagram(g) => apply_sequence_diagram(&g, &path),
    })
}

fn replay(path: &Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let v: Value = serde_json::from_str(&input::read_source(path)?)
        .map_err(|e| CliError::parse(format!("invalid JSON: {e}")))?;
    let g = replay_export(&v)?;
    let key = mutata::canonical_key(&g)?;
    line(out, &json!({ "diagram": g, "canonical_key": key }))?;
    Ok(0)
}
