//! Breadth-first exploration of mutation classes.

use std::collections::HashMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::companion::find_admissible_for;
use crate::diagram::{canonical_key, labeled_key, realize_matrix, CanonicalKey, Diagram, DEFAULT_CANON_CAP};
use crate::error::{Error, Result};
use crate::linalg::psd_classify;
use crate::mutation::{apply_sequence_diagram, mutate_diagram};

/// Exploration bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Caps {
    pub max_members: usize,
    pub max_weight: i64,
    pub max_seconds: Option<f64>,
    /// Deduplicate labeled diagrams instead of isomorphism classes.
    pub labeled: bool,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_members: 200_000, max_weight: 1_000_000, max_seconds: Some(600.0), labeled: false }
    }
}

impl Caps {
    /// Parse `members=N,weight=W,seconds=S,labeled=true`; unspecified fields keep defaults.
    pub fn parse(s: &str) -> Result<Caps> {
        let mut caps = Caps::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| Error::Parse(format!("bad cap {part:?}")))?;
            let bad = |_: std::num::ParseIntError| Error::Parse(format!("bad value for {k}: {v:?}"));
            let badf = |_: std::num::ParseFloatError| Error::Parse(format!("bad value for {k}: {v:?}"));
            match k.trim() {
                "members" => caps.max_members = v.trim().parse().map_err(bad)?,
                "weight" => caps.max_weight = v.trim().parse().map_err(bad)?,
                "seconds" => {
                    caps.max_seconds = if v.trim() == "none" { None } else { Some(v.trim().parse().map_err(badf)?) }
                }
                "labeled" => caps.labeled = matches!(v.trim(), "1" | "true" | "yes"),
                other => return Err(Error::Parse(format!("unknown cap {other:?}"))),
            }
        }
        Ok(caps)
    }

    /// Defaults overridden by the `MUTATA_CAPS` environment variable.
    pub fn from_env() -> Result<Caps> {
        match std::env::var("MUTATA_CAPS") {
            Ok(s) => Caps::parse(&s),
            Err(_) => Ok(Caps::default()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertificateKind {
    /// An edge of weight greater than 4.
    WeightOver4,
    /// Three vertices spanning a connected subdiagram with a weight-4 edge that is not an
    /// oriented triangle with weights (4,1,1), (4,2,2), (4,3,3) or (4,4,4).
    BadWeight4Triple,
    /// A non-oriented chordless cycle that is not simply-laced.
    NonOrientedNonSimplyLacedCycle,
    /// A non-oriented cycle and a vertex joined to an odd number of its vertices, all weights below 4.
    OddAttachment,
    /// No oriented cycles and at least two non-oriented ones.
    TwoNonOrientedCycles,
    /// Indefinite admissible companion and a weight-4 edge or non-oriented cycle whose radical
    /// vector is not radical for the whole form.
    RadicalEscape,
}

/// Witness that a connected diagram with at least three vertices has an infinite mutation class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfinitudeCertificate {
    pub kind: CertificateKind,
    /// Mutation path from the seed to the diagram carrying the witness.
    pub path: Vec<usize>,
    pub vertices: Vec<usize>,
}

impl InfinitudeCertificate {
    /// Replay the path and re-check the hypothesis on the witness vertices.
    pub fn verify(&self, seed: &Diagram) -> bool {
        if self.path.iter().any(|&k| k >= seed.n()) || seed.n() < 3 || !seed.is_connected() {
            return false;
        }
        let g = apply_sequence_diagram(seed, &self.path);
        if self.vertices.iter().any(|&v| v >= g.n()) {
            return false;
        }
        check_rule(&g, self.kind, &self.vertices)
    }
}

const ALLOWED_TRIANGLES: [[i64; 3]; 4] = [[1, 1, 4], [2, 2, 4], [3, 3, 4], [4, 4, 4]];

fn check_rule(g: &Diagram, kind: CertificateKind, vs: &[usize]) -> bool {
    let sub = g.permuted(vs);
    match kind {
        CertificateKind::WeightOver4 => vs.len() == 2 && g.weight(vs[0], vs[1]) > 4,
        CertificateKind::BadWeight4Triple => {
            vs.len() == 3 && g.weight(vs[0], vs[1]) == 4 && sub.is_connected() && !allowed_triangle(&sub)
        }
        CertificateKind::NonOrientedNonSimplyLacedCycle => {
            let c = sub.chordless_cycles();
            vs.len() >= 3 && c.len() == 1 && c[0].vertices.len() == vs.len() && !c[0].oriented && !c[0].simply_laced
        }
        CertificateKind::OddAttachment => {
            let k = vs.len() - 1;
            let cyc = g.permuted(&vs[..k]);
            let c = cyc.chordless_cycles();
            k >= 3
                && c.len() == 1
                && c[0].vertices.len() == k
                && !c[0].oriented
                && sub.max_weight() < 4
                && vs[..k].iter().filter(|&&u| g.adjacent(u, vs[k])).count() % 2 == 1
        }
        CertificateKind::TwoNonOrientedCycles => {
            let c = sub.chordless_cycles();
            sub.is_connected() && c.iter().all(|x| !x.oriented) && c.len() >= 2
        }
        CertificateKind::RadicalEscape => radical_escape(g, &g.chordless_cycles()).iter().any(|x| x == vs),
    }
}

fn allowed_triangle(t: &Diagram) -> bool {
    let c = t.chordless_cycles();
    if c.len() != 1 || !c[0].oriented {
        return false;
    }
    let mut w = [t.weight(0, 1), t.weight(1, 2), t.weight(0, 2)];
    w.sort_unstable();
    ALLOWED_TRIANGLES.contains(&w)
}

/// Witness sets for the radical-escape rule, in the order weight-4 edges then cycles.
fn radical_escape(g: &Diagram, cycles: &[crate::diagram::CycleRecord]) -> Vec<Vec<usize>> {
    let Ok(b) = realize_matrix(g) else { return Vec::new() };
    let Some(a) = find_admissible_for(&b) else { return Vec::new() };
    let form = a.symmetrized(&b);
    if psd_classify(&form).is_semipositive() {
        return Vec::new();
    }
    let n = g.n();
    let mut sets: Vec<Vec<usize>> = g.edges().iter().filter(|e| e.weight == 4).map(|e| vec![e.from, e.to]).collect();
    sets.extend(cycles.iter().filter(|c| !c.oriented).map(|c| c.vertices.clone()));
    sets.into_iter()
        .filter(|x| {
            psd_classify(&form.restricted(x)).kernel_basis.iter().any(|u| {
                let mut full = vec![0i64; n];
                for (t, &v) in x.iter().enumerate() {
                    full[v] = u[t];
                }
                !form.is_radical(&full)
            })
        })
        .collect()
}

/// First applicable infinitude rule on `g` itself, with an empty path.
pub fn static_certificate(g: &Diagram) -> Option<InfinitudeCertificate> {
    let n = g.n();
    if n < 3 || !g.is_connected() {
        return None;
    }
    let cert = |kind, vertices| Some(InfinitudeCertificate { kind, path: Vec::new(), vertices });
    let edges = g.edges();
    if let Some(e) = edges.iter().find(|e| e.weight > 4) {
        return cert(CertificateKind::WeightOver4, vec![e.from.min(e.to), e.from.max(e.to)]);
    }
    for e in edges.iter().filter(|e| e.weight == 4) {
        let (a, b) = (e.from.min(e.to), e.from.max(e.to));
        for v in 0..n {
            if v == a || v == b || !(g.adjacent(v, a) || g.adjacent(v, b)) {
                continue;
            }
            if !allowed_triangle(&g.permuted(&[a, b, v])) {
                return cert(CertificateKind::BadWeight4Triple, vec![a, b, v]);
            }
        }
    }
    let cycles = g.chordless_cycles();
    if let Some(c) = cycles.iter().find(|c| !c.oriented && !c.simply_laced) {
        return cert(CertificateKind::NonOrientedNonSimplyLacedCycle, c.vertices.clone());
    }
    for c in cycles.iter().filter(|c| !c.oriented) {
        for k in 0..n {
            if c.vertices.contains(&k) {
                continue;
            }
            let attached = c.vertices.iter().filter(|&&u| g.adjacent(u, k)).count();
            let mut vs = c.vertices.clone();
            vs.push(k);
            if attached % 2 == 1 && g.permuted(&vs).max_weight() < 4 {
                return cert(CertificateKind::OddAttachment, vs);
            }
        }
    }
    if cycles.len() >= 2 && cycles.iter().all(|c| !c.oriented) {
        return cert(CertificateKind::TwoNonOrientedCycles, (0..n).collect());
    }
    radical_escape(g, &cycles).into_iter().next().and_then(|x| cert(CertificateKind::RadicalEscape, x))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Truncation {
    MemberCap,
    TimeCap,
    WeightCap,
    /// An infinitude certificate was found.
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassStatus {
    Complete,
    Truncated(Truncation),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassMember {
    pub key: CanonicalKey,
    /// The seed mutated along `path`, in the seed's labeling.
    pub diagram: Diagram,
    pub path: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassEnumeration {
    pub status: ClassStatus,
    pub members: Vec<ClassMember>,
    pub certificate: Option<InfinitudeCertificate>,
    #[serde(skip)]
    labeled: bool,
}

impl ClassEnumeration {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn is_complete(&self) -> bool {
        self.status == ClassStatus::Complete
    }

    /// Every mutation of every member lands back in the member set.
    pub fn closure_audit(&self) -> bool {
        let keys: std::collections::HashSet<&CanonicalKey> = self.members.iter().map(|m| &m.key).collect();
        self.members.par_iter().all(|m| {
            (0..m.diagram.n()).all(|k| {
                let d = mutate_diagram(&m.diagram, k);
                let key = if self.labeled { labeled_key(&d) } else { canonical_key(&d).expect("within cap") };
                keys.contains(&key)
            })
        })
    }

}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Watch {
    Nothing,
    WeightOnly,
    AllRules,
}

struct Outcome {
    enumeration: ClassEnumeration,
    hit: Option<Vec<usize>>,
}

type Target<'a> = &'a (dyn Fn(&Diagram) -> bool + Sync);

fn explore(seed: &Diagram, caps: &Caps, watch: Watch, target: Option<Target<'_>>) -> Result<Outcome> {
    if !caps.labeled && seed.n() > DEFAULT_CANON_CAP {
        return Err(Error::CapExceeded(format!("class exploration limited to {DEFAULT_CANON_CAP} vertices")));
    }
    let start = Instant::now();
    let key_of = |d: &Diagram| if caps.labeled { labeled_key(d) } else { canonical_key(d).expect("within cap") };
    let watched = seed.n() >= 3 && seed.is_connected();
    let check = |d: &Diagram, path: &[usize]| -> Option<InfinitudeCertificate> {
        if !watched {
            return None;
        }
        let found = match watch {
            Watch::Nothing => None,
            Watch::WeightOnly => d.edges().iter().find(|e| e.weight > 4).map(|e| InfinitudeCertificate {
                kind: CertificateKind::WeightOver4,
                path: Vec::new(),
                vertices: vec![e.from.min(e.to), e.from.max(e.to)],
            }),
            Watch::AllRules => static_certificate(d),
        };
        found.map(|c| InfinitudeCertificate { path: path.to_vec(), ..c })
    };
    let mut members = vec![ClassMember { key: key_of(seed), diagram: seed.clone(), path: Vec::new() }];
    let mut index: HashMap<CanonicalKey, usize> = HashMap::from([(members[0].key.clone(), 0)]);
    let finish = |members: Vec<ClassMember>, status, certificate, hit| {
        Ok(Outcome { enumeration: ClassEnumeration { status, members, certificate, labeled: caps.labeled }, hit })
    };
    if target.is_some_and(|t| t(seed)) {
        return finish(members, ClassStatus::Complete, None, Some(Vec::new()));
    }
    if watch != Watch::Nothing {
        if let Some(c) = check(seed, &[]).or_else(|| if watched { static_certificate(seed) } else { None }) {
            return finish(members, ClassStatus::Truncated(Truncation::Infinite), Some(c), None);
        }
    }
    if seed.max_weight() > caps.max_weight {
        return finish(members, ClassStatus::Truncated(Truncation::WeightCap), None, None);
    }
    let mut level = vec![0usize];
    while !level.is_empty() {
        if let Some(limit) = caps.max_seconds {
            if start.elapsed().as_secs_f64() > limit {
                return finish(members, ClassStatus::Truncated(Truncation::TimeCap), None, None);
            }
        }
        let children: Vec<(usize, usize, CanonicalKey, Diagram)> = level
            .par_iter()
            .flat_map_iter(|&p| {
                let d = &members[p].diagram;
                (0..d.n()).map(move |k| (p, k, mutate_diagram(d, k)))
            })
            .map(|(p, k, d)| (p, k, key_of(&d), d))
            .collect();
        let mut next = Vec::new();
        for (p, k, key, d) in children {
            if index.contains_key(&key) {
                continue;
            }
            // A new member beyond the cap proves the class is larger; it is not kept.
            if members.len() >= caps.max_members {
                return finish(members, ClassStatus::Truncated(Truncation::MemberCap), None, None);
            }
            let mut path = members[p].path.clone();
            path.push(k);
            let weight = d.max_weight();
            let cert = check(&d, &path);
            let hit = target.is_some_and(|t| t(&d));
            index.insert(key.clone(), members.len());
            next.push(members.len());
            members.push(ClassMember { key, diagram: d, path: path.clone() });
            if hit {
                return finish(members, ClassStatus::Complete, None, Some(path));
            }
            if let Some(c) = cert {
                return finish(members, ClassStatus::Truncated(Truncation::Infinite), Some(c), None);
            }
            if weight > caps.max_weight {
                return finish(members, ClassStatus::Truncated(Truncation::WeightCap), None, None);
            }
        }
        next.sort_by(|&a, &b| members[a].key.cmp(&members[b].key));
        level = next;
    }
    finish(members, ClassStatus::Complete, None, None)
}

/// Members of the mutation class of `g` up to isomorphism, with shortest paths from `g`.
///
/// Stops early with an infinitude certificate when one of the static rules applies to `g`
/// or an edge of weight above 4 appears (connected diagrams with at least three vertices).
pub fn enumerate_class(g: &Diagram, caps: &Caps) -> Result<ClassEnumeration> {
    Ok(explore(g, caps, Watch::WeightOnly, None)?.enumeration)
}

/// Like [`enumerate_class`] without any certificate checks; only caps stop the search.
pub fn enumerate_class_unchecked(g: &Diagram, caps: &Caps) -> Result<ClassEnumeration> {
    Ok(explore(g, caps, Watch::Nothing, None)?.enumeration)
}

/// First infinitude certificate on `g` or, failing that, on a class member reached by BFS.
///
/// `None` when the class closes up or caps are hit without a witness.
pub fn infinitude_certificate(g: &Diagram, caps: &Caps) -> Result<Option<InfinitudeCertificate>> {
    if g.n() < 3 || !g.is_connected() {
        return Ok(None);
    }
    Ok(explore(g, caps, Watch::AllRules, None)?.enumeration.certificate)
}

/// Shortest mutation path from `g` to a diagram satisfying `target`.
pub fn search_to_target(g: &Diagram, target: impl Fn(&Diagram) -> bool + Sync, caps: &Caps) -> Result<Option<Vec<usize>>> {
    Ok(explore(g, caps, Watch::Nothing, Some(&target))?.hit)
}
