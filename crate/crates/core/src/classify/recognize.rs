use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use super::families::{family_members, FamilyKind, FamilyLabel, Shape};
use crate::diagram::{canonical_key, induced_subdiagram, CanonicalKey, Diagram, DEFAULT_CANON_CAP};
use crate::error::{Error, Result};
use crate::graph;

/// Cheap isomorphism invariant: sorted per-vertex multisets of signed weights.
fn invariant(g: &Diagram) -> Vec<Vec<i64>> {
    let n = g.n();
    let mut rows: Vec<Vec<i64>> = (0..n)
        .map(|v| {
            let mut r: Vec<i64> = (0..n).map(|u| g.signed(v, u)).filter(|&s| s != 0).collect();
            r.sort_unstable();
            r
        })
        .collect();
    rows.sort();
    rows
}

struct FamilyIndex {
    by_key: HashMap<CanonicalKey, FamilyLabel>,
    invariants: HashSet<Vec<Vec<i64>>>,
}

impl FamilyIndex {
    fn build(kind: FamilyKind, v: usize) -> Self {
        let mut by_key = HashMap::new();
        let mut invariants = HashSet::new();
        for shape in Shape::with_vertices(kind, v) {
            for (key, g) in family_members(shape) {
                invariants.insert(invariant(&g));
                by_key.entry(key).or_insert(shape.label());
            }
        }
        FamilyIndex { by_key, invariants }
    }

    fn lookup(&self, g: &Diagram) -> Option<FamilyLabel> {
        if self.by_key.is_empty() || !self.invariants.contains(&invariant(g)) {
            return None;
        }
        self.by_key.get(&canonical_key(g).ok()?).copied()
    }
}

type IndexCache = Mutex<HashMap<(FamilyKind, usize), Arc<FamilyIndex>>>;

fn index(kind: FamilyKind, v: usize) -> Arc<FamilyIndex> {
    static CACHE: OnceLock<IndexCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(ix) = cache.lock().unwrap().get(&(kind, v)) {
        return ix.clone();
    }
    let built = Arc::new(FamilyIndex::build(kind, v));
    cache.lock().unwrap().entry((kind, v)).or_insert(built).clone()
}

/// The family type of `g` within `kind`, if any.
pub fn recognize(kind: FamilyKind, g: &Diagram) -> Result<Option<FamilyLabel>> {
    if g.n() > DEFAULT_CANON_CAP {
        return Err(Error::CapExceeded(format!("recognition limited to {DEFAULT_CANON_CAP} vertices")));
    }
    if g.n() < kind.min_vertices() || !g.is_connected() {
        return Ok(None);
    }
    Ok(index(kind, g.n()).lookup(g))
}

pub fn recognize_dynkin(g: &Diagram) -> Result<Option<FamilyLabel>> {
    recognize(FamilyKind::Dynkin, g)
}

pub fn recognize_extended_dynkin(g: &Diagram) -> Result<Option<FamilyLabel>> {
    recognize(FamilyKind::Extended, g)
}

/// An induced subdiagram isomorphic to a family member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Occurrence {
    pub label: FamilyLabel,
    /// Sorted vertex set of the subdiagram.
    pub vertices: Vec<usize>,
}

/// Every connected induced subdiagram matching a member of one of `kinds`,
/// ordered by size and then by vertex set.
pub fn scan_family_occurrences(g: &Diagram, kinds: &[FamilyKind]) -> Result<Vec<Occurrence>> {
    let n = g.n();
    if n > DEFAULT_CANON_CAP {
        return Err(Error::CapExceeded(format!("scans limited to {DEFAULT_CANON_CAP} vertices")));
    }
    let adj = g.adjacency();
    let mut out = Vec::new();
    for size in 1..=n {
        let relevant: Vec<FamilyKind> = kinds.iter().copied().filter(|k| k.min_vertices() <= size).collect();
        if relevant.is_empty() {
            continue;
        }
        let indexes: Vec<(FamilyKind, Arc<FamilyIndex>)> = relevant.iter().map(|&k| (k, index(k, size))).collect();
        if indexes.iter().all(|(_, ix)| ix.by_key.is_empty()) {
            continue;
        }
        let mut found: Vec<Occurrence> = Vec::new();
        for mask in 1u64..1 << n {
            if mask.count_ones() as usize != size || !graph::is_connected_subset(&adj, mask) {
                continue;
            }
            let vs: Vec<usize> = graph::members(mask).collect();
            let sub = induced_subdiagram(g, &vs);
            for (_, ix) in &indexes {
                if let Some(label) = ix.lookup(&sub) {
                    found.push(Occurrence { label, vertices: vs.clone() });
                }
            }
        }
        found.sort_by(|a, b| a.vertices.cmp(&b.vertices));
        out.extend(found);
    }
    Ok(out)
}

/// Whether some induced subdiagram belongs to one of `kinds`.
pub fn contains_family(g: &Diagram, kinds: &[FamilyKind]) -> Result<Option<Occurrence>> {
    let n = g.n();
    if n > DEFAULT_CANON_CAP {
        return Err(Error::CapExceeded(format!("scans limited to {DEFAULT_CANON_CAP} vertices")));
    }
    let adj = g.adjacency();
    for size in 1..=n {
        for &kind in kinds {
            if kind.min_vertices() > size {
                continue;
            }
            let ix = index(kind, size);
            if ix.by_key.is_empty() {
                continue;
            }
            for mask in 1u64..1 << n {
                if mask.count_ones() as usize != size || !graph::is_connected_subset(&adj, mask) {
                    continue;
                }
                let vs: Vec<usize> = graph::members(mask).collect();
                if let Some(label) = ix.lookup(&induced_subdiagram(g, &vs)) {
                    return Ok(Some(Occurrence { label, vertices: vs }));
                }
            }
        }
    }
    Ok(None)
}
