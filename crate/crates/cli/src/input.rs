//! Reading and writing the interchange formats.

use std::io::Read;
use std::path::Path;

use mutata::{diagram_of, realize_matrix, Diagram, ExchangeMatrix};
use serde_json::Value;

use crate::CliError;

/// How an input file was written; `mutate` answers in the same format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    /// First line `n`, then `n` rows of whitespace-separated integers.
    Text,
    /// JSON array of rows, or `{"matrix": rows}`.
    MatrixJson,
    /// `{"n": .., "edges": [..]}`.
    DiagramJson,
}

#[derive(Debug, Clone)]
pub enum Seed {
    Matrix(ExchangeMatrix),
    Diagram(Diagram),
}

impl Seed {
    pub fn diagram(&self) -> Diagram {
        match self {
            Seed::Matrix(b) => diagram_of(b),
            Seed::Diagram(g) => g.clone(),
        }
    }

    /// The matrix itself, or a realization of the diagram.
    pub fn matrix(&self) -> Result<ExchangeMatrix, CliError> {
        match self {
            Seed::Matrix(b) => Ok(b.clone()),
            Seed::Diagram(g) => Ok(realize_matrix(g)?),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Loaded {
    pub seed: Seed,
    pub format: Format,
}

pub fn read_source(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::io(path, e))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
    }
}

pub fn load(path: &Path) -> Result<Loaded, CliError> {
    parse(&read_source(path)?)
}

pub fn parse(text: &str) -> Result<Loaded, CliError> {
    let t = text.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        let v: Value = serde_json::from_str(t).map_err(|e| CliError::parse(format!("invalid JSON: {e}")))?;
        return seed_from_json(v);
    }
    Ok(Loaded { seed: Seed::Matrix(parse_text_matrix(t)?), format: Format::Text })
}

pub fn seed_from_json(v: Value) -> Result<Loaded, CliError> {
    if v.get("edges").is_some() {
        let g: Diagram = serde_json::from_value(v).map_err(|e| CliError::invalid("InvalidDiagram", e.to_string()))?;
        return Ok(Loaded { seed: Seed::Diagram(g), format: Format::DiagramJson });
    }
    let rows = match v {
        Value::Object(mut m) => m.remove("matrix").ok_or_else(|| CliError::parse("expected a diagram or a matrix"))?,
        other => other,
    };
    let rows: Vec<Vec<i64>> =
        serde_json::from_value(rows).map_err(|e| CliError::parse(format!("matrix rows: {e}")))?;
    Ok(Loaded { seed: Seed::Matrix(ExchangeMatrix::new(rows)?), format: Format::MatrixJson })
}

fn parse_text_matrix(t: &str) -> Result<ExchangeMatrix, CliError> {
    let mut tokens = t.split_whitespace().map(|tok| tok.parse::<i64>().map_err(|_| CliError::parse(format!("not an integer: {tok:?}"))));
    let n = tokens.next().ok_or_else(|| CliError::parse("empty input"))??;
    let n = usize::try_from(n).map_err(|_| CliError::parse("negative size"))?;
    let mut rows = vec![vec![0i64; n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = tokens.next().ok_or_else(|| CliError::parse(format!("missing entry ({i},{j})")))??;
        }
    }
    if tokens.next().is_some() {
        return Err(CliError::parse("trailing data after the matrix"));
    }
    Ok(ExchangeMatrix::new(rows)?)
}

pub fn matrix_text(b: &ExchangeMatrix) -> String {
    let mut s = format!("{}\n", b.n());
    for row in b.rows() {
        let cells: Vec<String> = row.iter().map(i64::to_string).collect();
        s.push_str(&cells.join(" "));
        s.push('\n');
    }
    s
}

/// Render a seed in the given format.
pub fn render(seed: &Seed, format: Format) -> Result<String, CliError> {
    Ok(match (format, seed) {
        (Format::DiagramJson, s) => format!("{}\n", serde_json::to_string(&s.diagram()).expect("diagram serializes")),
        (Format::Text, s) => matrix_text(&s.matrix()?),
        (Format::MatrixJson, s) => format!("{}\n", serde_json::to_string(&s.matrix()?.rows()).expect("rows serialize")),
    })
}
