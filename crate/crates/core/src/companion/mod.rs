//! Quasi-Cartan companions and admissibility.

mod gf2;

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::diagram::{diagram_of, realize_matrix, CycleRecord, Diagram};
use crate::error::{Error, Result};
use crate::linalg::{psd_classify, ExchangeMatrix, PositivityReport, SymmetricForm};
use gf2::Gf2System;

/// Integer matrix with 2 on the diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Companion {
    n: usize,
    entries: Vec<i64>,
}

impl Companion {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotACompanion("matrix is not square".into()));
        }
        if let Some(i) = (0..n).find(|&i| rows[i][i] != 2) {
            return Err(Error::NotACompanion(format!("diagonal entry {i} is not 2")));
        }
        Ok(Self::from_rows_unchecked(rows))
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<Vec<i64>>) -> Self {
        Companion { n: rows.len(), entries: rows.into_iter().flatten().collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n).map(|i| self.entries[i * self.n..(i + 1) * self.n].to_vec()).collect()
    }

    /// Check `|a_ij| = |b_ij|`, sign-symmetry and symmetrizability by the symmetrizer of `b`.
    pub fn check_companion_of(&self, b: &ExchangeMatrix) -> Result<()> {
        let n = self.n;
        if b.n() != n {
            return Err(Error::DifferentShape(format!("companion has {n} rows, matrix has {}", b.n())));
        }
        let d = b.symmetrizer();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let (a, bij) = (self.get(i, j), b.get(i, j));
                if a.abs() != bij.abs() {
                    return Err(Error::NotACompanion(format!("|a_{i}{j}| != |b_{i}{j}|")));
                }
                if a.signum() != self.get(j, i).signum() {
                    return Err(Error::NotACompanion(format!("a_{i}{j} and a_{j}{i} differ in sign")));
                }
                if d[i] as i128 * a as i128 != d[j] as i128 * self.get(j, i) as i128 {
                    return Err(Error::NotACompanion(format!("d a is not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(())
    }

    /// The symmetrized form `D A`.
    pub fn symmetrized(&self, b: &ExchangeMatrix) -> SymmetricForm<BigRational> {
        let d = b.symmetrizer();
        let rows: Vec<Vec<i64>> = (0..self.n).map(|i| (0..self.n).map(|j| d[i] * self.get(i, j)).collect()).collect();
        SymmetricForm::from_integers(&rows).expect("companion is symmetrizable")
    }

    pub fn restricted(&self, idx: &[usize]) -> Companion {
        Companion::from_rows_unchecked(idx.iter().map(|&i| idx.iter().map(|&j| self.get(i, j)).collect()).collect())
    }
}

impl Serialize for Companion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Companion {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Companion::new(Vec::<Vec<i64>>::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Companion together with the diagram it is bound to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompanionJson {
    #[serde(rename = "A")]
    pub a: Companion,
    pub bound_to: Diagram,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// Sign of each edge of the diagram; an edge `{i, j}` is `Plus` when `a_ij > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSignView(pub BTreeMap<(usize, usize), Sign>);

impl EdgeSignView {
    pub fn of(a: &Companion) -> Self {
        let mut m = BTreeMap::new();
        for i in 0..a.n() {
            for j in i + 1..a.n() {
                let v = a.get(i, j);
                if v != 0 {
                    m.insert((i, j), if v > 0 { Sign::Plus } else { Sign::Minus });
                }
            }
        }
        EdgeSignView(m)
    }

    pub fn plus_count(&self, cycle: &[usize]) -> usize {
        let k = cycle.len();
        (0..k)
            .filter(|&t| {
                let (u, v) = (cycle[t], cycle[(t + 1) % k]);
                self.0.get(&(u.min(v), u.max(v))) == Some(&Sign::Plus)
            })
            .count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleViolation {
    pub cycle: CycleRecord,
    /// Sign of the product of `-a_ij` along the cycle.
    pub product_sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub violations: Vec<CycleViolation>,
}

/// Admissibility: along every chordless cycle, oriented cycles carry an odd number of
/// positive entries and non-oriented cycles an even number.
pub fn is_admissible(b: &ExchangeMatrix, a: &Companion) -> Result<AdmissibilityReport> {
    a.check_companion_of(b)?;
    let signs = EdgeSignView::of(a);
    let violations: Vec<CycleViolation> = diagram_of(b)
        .chordless_cycles()
        .into_iter()
        .filter_map(|c| {
            let plus = signs.plus_count(&c.vertices);
            let odd = plus % 2 == 1;
            (odd != c.oriented).then_some(CycleViolation { product_sign: if odd { -1 } else { 1 }, cycle: c })
        })
        .collect();
    Ok(AdmissibilityReport { admissible: violations.is_empty(), violations })
}

/// An admissible companion of `b`, or `None` when none exists.
pub fn find_admissible_for(b: &ExchangeMatrix) -> Option<Companion> {
    let g = diagram_of(b);
    let n = g.n();
    let edges = g.edges();
    let index: BTreeMap<(usize, usize), usize> =
        edges.iter().enumerate().map(|(t, e)| ((e.from.min(e.to), e.from.max(e.to)), t)).collect();
    let mut sys = Gf2System::new(edges.len());
    for c in g.chordless_cycles() {
        let k = c.vertices.len();
        let vars: Vec<usize> = (0..k)
            .map(|t| {
                let (u, v) = (c.vertices[t], c.vertices[(t + 1) % k]);
                index[&(u.min(v), u.max(v))]
            })
            .collect();
        sys.push(&vars, c.oriented);
    }
    let x = sys.solve()?;
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        rows[i][i] = 2;
        for j in 0..n {
            if i != j && b.get(i, j) != 0 {
                let plus = x[index[&(i.min(j), i.max(j))]];
                rows[i][j] = if plus { b.get(i, j).abs() } else { -b.get(i, j).abs() };
            }
        }
    }
    Some(Companion::from_rows_unchecked(rows))
}

/// Realize `g` and search for an admissible companion of the realization.
pub fn find_admissible(g: &Diagram) -> Result<Option<(ExchangeMatrix, Companion)>> {
    let b = realize_matrix(g)?;
    Ok(find_admissible_for(&b).map(|a| (b, a)))
}

/// Vertex set `S` with `sign_change(a, S) == a2`, built by stripping vertices in BFS order.
///
/// `None` when no such set exists.
pub fn sign_change_witness(b: &ExchangeMatrix, a: &Companion, a2: &Companion) -> Result<Option<Vec<usize>>> {
    if a.n() != a2.n() || a.n() != b.n() {
        return Err(Error::DifferentShape("companions of different sizes".into()));
    }
    for m in [a, a2] {
        if !is_admissible(b, m)?.admissible {
            return Err(Error::NotAdmissible);
        }
    }
    let n = a.n();
    let adj = b.adjacency();
    let mut flipped = vec![false; n];
    let mut placed = vec![false; n];
    for comp in crate::graph::components(&adj) {
        let root = comp[0];
        let mut order = vec![root];
        placed[root] = true;
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for v in crate::graph::members(adj[u]) {
                if placed[v] {
                    continue;
                }
                placed[v] = true;
                order.push(v);
            }
        }
        let mut done = vec![false; n];
        done[root] = true;
        for &v in &order[1..] {
            let mut same = false;
            let mut diff = false;
            for u in crate::graph::members(adj[v]) {
                if !done[u] {
                    continue;
                }
                let current = if flipped[u] { -a.get(u, v) } else { a.get(u, v) };
                if current == a2.get(u, v) {
                    same = true;
                } else {
                    diff = true;
                }
            }
            if same && diff {
                return Ok(None);
            }
            flipped[v] = diff;
            done[v] = true;
        }
    }
    let set: Vec<usize> = (0..n).filter(|&v| flipped[v]).collect();
    Ok((crate::mutation::sign_change(a, &set) == *a2).then_some(set))
}

/// Definiteness data of `D A`.
pub fn companion_positivity(b: &ExchangeMatrix, a: &Companion) -> PositivityReport {
    psd_classify(&a.symmetrized(b))
}
