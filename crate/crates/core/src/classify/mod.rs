//! Finite, affine and minimal infinite type recognition with certificates.

pub mod families;
mod recognize;

use serde::Serialize;

pub use families::{generate_family, FamilyKind, FamilyLabel, Shape};
pub use recognize::{
    contains_family, recognize, recognize_dynkin, recognize_extended_dynkin, scan_family_occurrences, Occurrence,
};

use crate::companion::{companion_positivity, find_admissible_for, Companion};
use crate::diagram::{diagram_of, induced_subdiagram, realize_matrix, Diagram};
use crate::error::{Error, Result};
use crate::explore::{infinitude_certificate, search_to_target, Caps, InfinitudeCertificate};
use crate::linalg::{ExchangeMatrix, PositivityReport};
use crate::mutation::apply_sequence_diagram;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", content = "label")]
pub enum VerdictKind {
    FiniteType(FamilyLabel),
    Affine(FamilyLabel),
    MinimalInfinite,
    OtherInfinite,
    /// Caps prevented a full answer; the string says what is known.
    Unknown(String),
    /// The property asked of a single decider does not hold.
    Rejected,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type")]
pub enum Certificate {
    /// Mutating along `path` yields a diagram of type `target`.
    MutationPath { path: Vec<usize>, target: FamilyLabel },
    /// An induced subdiagram from a named family.
    Occurrence { occurrence: Occurrence },
    /// The admissible companion found (or none) and the definiteness of its symmetrization.
    Companion { companion: Option<Companion>, report: Option<PositivityReport> },
    Infinitude { certificate: InfinitudeCertificate },
    /// Infinite type while every vertex-deleted subdiagram is of finite type.
    VertexDeletion { infinite_type: bool, all_deletions_finite: bool },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassVerdict {
    #[serde(flatten)]
    pub kind: VerdictKind,
    pub certificates: Vec<Certificate>,
    /// Set by [`classify`] and [`is_minimal_infinite`].
    pub minimal_infinite: Option<bool>,
    /// Set by [`classify_acyclic`].
    pub finite_mutation_class: Option<bool>,
}

impl ClassVerdict {
    fn new(kind: VerdictKind, certificates: Vec<Certificate>) -> Self {
        ClassVerdict { kind, certificates, minimal_infinite: None, finite_mutation_class: None }
    }

    pub fn holds(&self) -> bool {
        !matches!(self.kind, VerdictKind::Rejected | VerdictKind::Unknown(_))
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        let mut s = match &self.kind {
            VerdictKind::FiniteType(l) => format!("finite type {l}"),
            VerdictKind::Affine(l) => format!("affine type {l}"),
            VerdictKind::MinimalInfinite => "minimal infinite type".to_string(),
            VerdictKind::OtherInfinite => "infinite type".to_string(),
            VerdictKind::Unknown(why) => format!("unknown ({why})"),
            VerdictKind::Rejected => "property does not hold".to_string(),
        };
        if self.minimal_infinite == Some(true) && !matches!(self.kind, VerdictKind::MinimalInfinite) {
            s.push_str(", minimal infinite");
        }
        match self.finite_mutation_class {
            Some(true) => s.push_str(", finite mutation class"),
            Some(false) => s.push_str(", infinite mutation class"),
            None => {}
        }
        s
    }

    /// Replay every certificate against the exchange matrix it was issued for.
    pub fn verify(&self, b: &ExchangeMatrix) -> Result<bool> {
        let g = diagram_of(b);
        for c in &self.certificates {
            let ok = match c {
                Certificate::MutationPath { path, target } => {
                    path.iter().all(|&k| k < g.n())
                        && recognize(target.family(), &apply_sequence_diagram(&g, path))? == Some(*target)
                }
                Certificate::Occurrence { occurrence } => {
                    recognize(occurrence.label.family(), &induced_subdiagram(&g, &occurrence.vertices))?
                        == Some(occurrence.label)
                }
                Certificate::Companion { companion, report } => {
                    let found = find_admissible_for(b);
                    match (companion, &found) {
                        (None, None) => report.is_none(),
                        (Some(a), Some(_)) => {
                            crate::companion::is_admissible(b, a)?.admissible
                                && report.as_ref() == Some(&companion_positivity(b, a))
                        }
                        _ => false,
                    }
                }
                Certificate::Infinitude { certificate } => certificate.verify(&g),
                Certificate::VertexDeletion { infinite_type, all_deletions_finite } => {
                    let (inf, all) = vertex_deletion_check(&g)?;
                    inf == *infinite_type && all == *all_deletions_finite
                }
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn require_connected(g: &Diagram) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

fn companion_evidence(b: &ExchangeMatrix) -> (Option<Companion>, Option<PositivityReport>) {
    match find_admissible_for(b) {
        Some(a) => {
            let r = companion_positivity(b, &a);
            (Some(a), Some(r))
        }
        None => (None, None),
    }
}

fn companion_cert(ev: &(Option<Companion>, Option<PositivityReport>)) -> Certificate {
    Certificate::Companion { companion: ev.0.clone(), report: ev.1.clone() }
}

/// Finite type test by a positive admissible companion; no label search.
pub fn has_positive_companion(b: &ExchangeMatrix) -> bool {
    find_admissible_for(b).is_some_and(|a| companion_positivity(b, &a).is_positive())
}

fn label_path(g: &Diagram, kind: FamilyKind, caps: &Caps) -> Result<Option<(Vec<usize>, FamilyLabel)>> {
    let path = search_to_target(g, |d| matches!(recognize(kind, d), Ok(Some(_))), caps)?;
    Ok(path.map(|p| {
        let label = recognize(kind, &apply_sequence_diagram(g, &p)).ok().flatten().expect("target reached");
        (p, label)
    }))
}

/// Finite type exactly when some admissible companion is positive definite.
///
/// The Dynkin label comes with a mutation path to a Dynkin diagram.
pub fn is_finite_type(b: &ExchangeMatrix, caps: &Caps) -> Result<ClassVerdict> {
    let g = diagram_of(b);
    require_connected(&g)?;
    let ev = companion_evidence(b);
    if !ev.1.as_ref().is_some_and(|r| r.is_positive()) {
        return Ok(ClassVerdict::new(VerdictKind::Rejected, vec![companion_cert(&ev)]));
    }
    Ok(match label_path(&g, FamilyKind::Dynkin, caps)? {
        Some((path, target)) => ClassVerdict::new(
            VerdictKind::FiniteType(target),
            vec![companion_cert(&ev), Certificate::MutationPath { path, target }],
        ),
        None => ClassVerdict::new(
            VerdictKind::Unknown("finite type; Dynkin label not reached within caps".into()),
            vec![companion_cert(&ev)],
        ),
    })
}

/// Affine exactly when an admissible companion is semipositive of corank one and no induced
/// subdiagram belongs to a critical family.
pub fn affine_recognize(b: &ExchangeMatrix, caps: &Caps) -> Result<ClassVerdict> {
    let g = diagram_of(b);
    require_connected(&g)?;
    let ev = companion_evidence(b);
    if !ev.1.as_ref().is_some_and(|r| r.is_affine_like()) {
        return Ok(ClassVerdict::new(VerdictKind::Rejected, vec![companion_cert(&ev)]));
    }
    if let Some(occurrence) = contains_family(&g, &[FamilyKind::Critical])? {
        return Ok(ClassVerdict::new(
            VerdictKind::Rejected,
            vec![companion_cert(&ev), Certificate::Occurrence { occurrence }],
        ));
    }
    Ok(match label_path(&g, FamilyKind::Extended, caps)? {
        Some((path, target)) => ClassVerdict::new(
            VerdictKind::Affine(target),
            vec![companion_cert(&ev), Certificate::MutationPath { path, target }],
        ),
        None => ClassVerdict::new(
            VerdictKind::Unknown("affine; extended Dynkin label not reached within caps".into()),
            vec![companion_cert(&ev)],
        ),
    })
}

/// Whether `g` has infinite type, and whether every vertex-deleted subdiagram has finite type.
fn vertex_deletion_check(g: &Diagram) -> Result<(bool, bool)> {
    let finite = |d: &Diagram| -> Result<bool> {
        for comp in d.components() {
            if !has_positive_companion(&realize_matrix(&induced_subdiagram(d, &comp))?) {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let infinite = !finite(g)?;
    let mut all = true;
    for v in 0..g.n() {
        let rest: Vec<usize> = (0..g.n()).filter(|&u| u != v).collect();
        if !finite(&induced_subdiagram(g, &rest))? {
            all = false;
            break;
        }
    }
    Ok((infinite, all))
}

/// Minimal infinite type.
///
/// With at least five vertices, or three for skew-symmetric realizations, this is decided by a
/// semipositive corank-one admissible companion with a sincere radical vector. Smaller diagrams
/// fall back to checking infinite type and finite type of all vertex deletions.
pub fn is_minimal_infinite(g: &Diagram, _caps: &Caps) -> Result<ClassVerdict> {
    require_connected(g)?;
    let b = realize_matrix(g)?;
    let n = g.n();
    let mut v = if n >= 5 || (n >= 3 && b.is_skew_symmetric()) {
        let ev = companion_evidence(&b);
        let holds = ev.1.as_ref().is_some_and(|r| r.is_affine_like() && r.sincere[0]);
        ClassVerdict::new(if holds { VerdictKind::MinimalInfinite } else { VerdictKind::Rejected }, vec![companion_cert(&ev)])
    } else {
        let (infinite_type, all_deletions_finite) = vertex_deletion_check(g)?;
        let kind = if infinite_type && all_deletions_finite { VerdictKind::MinimalInfinite } else { VerdictKind::Rejected };
        ClassVerdict::new(
            kind,
            vec![Certificate::VertexDeletion { infinite_type, all_deletions_finite }],
        )
    };
    v.minimal_infinite = Some(v.kind == VerdictKind::MinimalInfinite);
    Ok(v)
}

/// Finiteness of the mutation class of a connected acyclic diagram with at least three
/// vertices: finite exactly for Dynkin and extended Dynkin diagrams.
pub fn classify_acyclic(g: &Diagram, caps: &Caps) -> Result<ClassVerdict> {
    require_connected(g)?;
    if g.n() < 3 {
        return Err(Error::InvalidDiagram("acyclic classification needs at least three vertices".into()));
    }
    if !g.is_acyclic() {
        return Err(Error::NotAcyclic);
    }
    let mut v = if let Some(target) = recognize_dynkin(g)? {
        ClassVerdict::new(VerdictKind::FiniteType(target), vec![Certificate::MutationPath { path: vec![], target }])
    } else if let Some(target) = recognize_extended_dynkin(g)? {
        ClassVerdict::new(VerdictKind::Affine(target), vec![Certificate::MutationPath { path: vec![], target }])
    } else {
        let certs = infinitude_certificate(g, caps)?
            .map(|certificate| vec![Certificate::Infinitude { certificate }])
            .unwrap_or_default();
        ClassVerdict::new(VerdictKind::OtherInfinite, certs)
    };
    v.finite_mutation_class = Some(!matches!(v.kind, VerdictKind::OtherInfinite));
    Ok(v)
}

/// Full classification of a connected exchange matrix: finite type, affine, minimal infinite or
/// other infinite type, with certificates.
pub fn classify(b: &ExchangeMatrix, caps: &Caps) -> Result<ClassVerdict> {
    let g = diagram_of(b);
    require_connected(&g)?;
    let finite = is_finite_type(b, caps)?;
    if finite.kind != VerdictKind::Rejected {
        return Ok(ClassVerdict { minimal_infinite: Some(false), ..finite });
    }
    let minimal = is_minimal_infinite(&g, caps)?;
    let is_minimal = minimal.kind == VerdictKind::MinimalInfinite;
    let affine = affine_recognize(b, caps)?;
    if affine.kind != VerdictKind::Rejected {
        return Ok(ClassVerdict { minimal_infinite: Some(is_minimal), ..affine });
    }
    if is_minimal {
        let mut certificates = minimal.certificates;
        certificates.extend(affine.certificates.into_iter().filter(|c| matches!(c, Certificate::Occurrence { .. })));
        return Ok(ClassVerdict { certificates, ..minimal });
    }
    let mut certificates = affine.certificates;
    if let Some(certificate) = infinitude_certificate(&g, caps)? {
        certificates.push(Certificate::Infinitude { certificate });
    }
    Ok(ClassVerdict { minimal_infinite: Some(false), ..ClassVerdict::new(VerdictKind::OtherInfinite, certificates) })
}
