//! Weighted oriented graphs attached to exchange matrices.

mod canon;
mod realize;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{self, bit, Mask};
use crate::linalg::ExchangeMatrix;

pub use canon::{canonical_form, canonical_key, canonical_key_with_cap, labeled_key, CanonicalKey, DEFAULT_CANON_CAP};
pub use realize::realize_matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    #[serde(rename = "w")]
    pub weight: i64,
}

/// Diagram on vertices `0..n`.
///
/// Stored as a signed weight matrix: `+w` at `(i, j)` for an arrow `i -> j` of weight `w`,
/// `-w` at `(j, i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DiagramJson", into = "DiagramJson")]
pub struct Diagram {
    n: usize,
    signed: Vec<i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct DiagramJson {
    n: usize,
    edges: Vec<Edge>,
}

impl TryFrom<DiagramJson> for Diagram {
    type Error = Error;

    fn try_from(j: DiagramJson) -> Result<Self> {
        Diagram::new(j.n, j.edges)
    }
}

impl From<Diagram> for DiagramJson {
    fn from(d: Diagram) -> Self {
        DiagramJson { n: d.n, edges: d.edges() }
    }
}

/// Integer square root when `x` is a perfect square.
pub(crate) fn exact_sqrt(x: i128) -> Option<i128> {
    if x < 0 {
        return None;
    }
    let mut r = (x as f64).sqrt() as i128;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    (r * r == x).then_some(r)
}

/// A chordless cycle with its orientation data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleRecord {
    /// Vertices in cyclic order starting from the smallest.
    pub vertices: Vec<usize>,
    pub oriented: bool,
    pub simply_laced: bool,
}

impl Diagram {
    /// Validating constructor.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        if n > graph::MAX_VERTICES {
            return Err(Error::InvalidDiagram(format!("{n} vertices exceed the supported size")));
        }
        let mut signed = vec![0; n * n];
        for e in edges {
            if e.from >= n || e.to >= n {
                return Err(Error::InvalidDiagram(format!("edge {}->{} out of range", e.from, e.to)));
            }
            if e.from == e.to {
                return Err(Error::InvalidDiagram(format!("loop at {}", e.from)));
            }
            if e.weight <= 0 {
                return Err(Error::InvalidDiagram(format!("edge {}->{} has weight {}", e.from, e.to, e.weight)));
            }
            if signed[e.from * n + e.to] != 0 {
                return Err(Error::InvalidDiagram(format!("duplicate edge between {} and {}", e.from, e.to)));
            }
            signed[e.from * n + e.to] = e.weight;
            signed[e.to * n + e.from] = -e.weight;
        }
        let d = Diagram { n, signed };
        d.validate()?;
        Ok(d)
    }

    /// Build from `(from, to, weight)` triples.
    pub fn from_triples(n: usize, edges: &[(usize, usize, i64)]) -> Result<Self> {
        Self::new(n, edges.iter().map(|&(from, to, weight)| Edge { from, to, weight }))
    }

    pub(crate) fn from_signed(n: usize, signed: Vec<i64>) -> Self {
        Diagram { n, signed }
    }

    pub fn empty(n: usize) -> Self {
        Diagram { n, signed: vec![0; n * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `+w` for `i -> j`, `-w` for `j -> i`, 0 when not adjacent.
    pub fn signed(&self, i: usize, j: usize) -> i64 {
        self.signed[i * self.n + j]
    }

    pub(crate) fn signed_matrix(&self) -> &[i64] {
        &self.signed
    }

    pub fn weight(&self, i: usize, j: usize) -> i64 {
        self.signed(i, j).abs()
    }

    pub fn has_arrow(&self, i: usize, j: usize) -> bool {
        self.signed(i, j) > 0
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.signed(i, j) != 0
    }

    /// Edges oriented as arrows, sorted by unordered vertex pair.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let s = self.signed(i, j);
                if s > 0 {
                    out.push(Edge { from: i, to: j, weight: s });
                } else if s < 0 {
                    out.push(Edge { from: j, to: i, weight: -s });
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.signed.iter().filter(|&&s| s > 0).count()
    }

    pub fn max_weight(&self) -> i64 {
        self.signed.iter().copied().max().unwrap_or(0)
    }

    pub fn is_simply_laced(&self) -> bool {
        self.max_weight() <= 1
    }

    pub(crate) fn adjacency(&self) -> Vec<Mask> {
        (0..self.n)
            .map(|i| (0..self.n).filter(|&j| self.adjacent(i, j)).fold(0, |m, j| m | bit(j)))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && graph::is_connected_subset(&self.adjacency(), graph::full(self.n))
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        graph::components(&self.adjacency())
    }

    pub fn cycle_record(&self, vertices: Vec<usize>) -> CycleRecord {
        let k = vertices.len();
        let forward = (0..k).all(|t| self.has_arrow(vertices[t], vertices[(t + 1) % k]));
        let backward = (0..k).all(|t| self.has_arrow(vertices[(t + 1) % k], vertices[t]));
        let simply_laced = (0..k).all(|t| self.weight(vertices[t], vertices[(t + 1) % k]) == 1);
        CycleRecord { vertices, oriented: forward || backward, simply_laced }
    }

    /// Chordless cycles sorted by their sorted vertex sets.
    pub fn chordless_cycles(&self) -> Vec<CycleRecord> {
        graph::chordless_cycles(&self.adjacency())
            .into_iter()
            .map(|c| self.cycle_record(c))
            .collect()
    }

    /// No oriented cycles at all.
    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm on the arrows.
        let mut indeg: Vec<usize> = (0..self.n).map(|j| (0..self.n).filter(|&i| self.has_arrow(i, j)).count()).collect();
        let mut stack: Vec<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for w in 0..self.n {
                if self.has_arrow(v, w) {
                    indeg[w] -= 1;
                    if indeg[w] == 0 {
                        stack.push(w);
                    }
                }
            }
        }
        seen == self.n
    }

    /// Every chordless cycle has a perfect-square weight product.
    pub fn validate(&self) -> Result<()> {
        for i in 0..self.n {
            if self.signed(i, i) != 0 {
                return Err(Error::InvalidDiagram(format!("loop at {i}")));
            }
            for j in 0..self.n {
                if self.signed(i, j) != -self.signed(j, i) {
                    return Err(Error::InvalidDiagram(format!("inconsistent pair ({i},{j})")));
                }
            }
        }
        for c in graph::chordless_cycles(&self.adjacency()) {
            let k = c.len();
            let mut prod: i128 = 1;
            for t in 0..k {
                prod = prod
                    .checked_mul(self.weight(c[t], c[(t + 1) % k]) as i128)
                    .ok_or_else(|| Error::InvalidDiagram("cycle weight product overflows".into()))?;
            }
            if exact_sqrt(prod).is_none() {
                return Err(Error::InvalidDiagram(format!("cycle {c:?} has non-square weight product {prod}")));
            }
        }
        Ok(())
    }

    /// Relabel: vertex `perm[i]` of `self` becomes vertex `i`.
    pub fn permuted(&self, perm: &[usize]) -> Diagram {
        let m = perm.len();
        let mut signed = vec![0; m * m];
        for a in 0..m {
            for b in 0..m {
                signed[a * m + b] = self.signed(perm[a], perm[b]);
            }
        }
        Diagram { n: m, signed }
    }

    /// Same graph with every arrow reversed.
    pub fn opposite(&self) -> Diagram {
        Diagram { n: self.n, signed: self.signed.iter().map(|s| -s).collect() }
    }
}

/// The diagram of an exchange matrix: an arrow `i -> j` of weight `|b_ij b_ji|` when `b_ij > 0`.
pub fn diagram_of(b: &ExchangeMatrix) -> Diagram {
    let n = b.n();
    let mut signed = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            let p = b.get(i, j);
            if p > 0 {
                let w = p * -b.get(j, i);
                signed[i * n + j] = w;
                signed[j * n + i] = -w;
            }
        }
    }
    Diagram { n, signed }
}

/// Induced subdiagram on `vertices`; vertex `t` of the result is `vertices[t]`.
pub fn induced_subdiagram(g: &Diagram, vertices: &[usize]) -> Diagram {
    g.permuted(vertices)
}
