//! Mutation of exchange matrices, diagrams and companions.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::companion::Companion;
use crate::diagram::{exact_sqrt, Diagram};
use crate::error::{Error, Result};
use crate::linalg::{determinant, ExactScalar, ExchangeMatrix};

fn pos(x: i64) -> i64 {
    x.max(0)
}

/// Matrix mutation at `k`.
///
/// # Panics
/// If `k` is out of range or an entry overflows `i64`.
pub fn mutate_matrix(b: &ExchangeMatrix, k: usize) -> ExchangeMatrix {
    let n = b.n();
    assert!(k < n, "mutation vertex {k} out of range");
    let mut e = b.entries().to_vec();
    for i in 0..n {
        for j in 0..n {
            e[i * n + j] = if i == k || j == k {
                -b.get(i, j)
            } else {
                let (bik, bkj) = (b.get(i, k), b.get(k, j));
                let delta = pos(bik.checked_mul(bkj).expect("entry overflow"));
                b.get(i, j).checked_add(bik.signum() * delta).expect("entry overflow")
            };
        }
    }
    ExchangeMatrix::from_parts(n, e, b.symmetrizer().to_vec())
}

/// Diagram mutation at `k`.
///
/// Arrows at `k` are reversed; for each path `i -> k -> j` the edge between `i` and `j`
/// is replaced according to `±sqrt(c) ± sqrt(c') = sqrt(ab)`.
///
/// # Panics
/// If `k` is out of range or the input violates the cycle square condition.
pub fn mutate_diagram(g: &Diagram, k: usize) -> Diagram {
    let n = g.n();
    assert!(k < n, "mutation vertex {k} out of range");
    let mut s = g.signed_matrix().to_vec();
    for v in 0..n {
        s[k * n + v] = -s[k * n + v];
        s[v * n + k] = -s[v * n + k];
    }
    for i in 0..n {
        if !g.has_arrow(i, k) {
            continue;
        }
        for j in 0..n {
            if !g.has_arrow(k, j) {
                continue;
            }
            let ab = g.weight(i, k) as i128 * g.weight(k, j) as i128;
            let c = g.weight(i, j) as i128;
            // sigma = +1 when j -> i closes an oriented triangle.
            let sigma = -(g.signed(i, j).signum() as i128);
            let root = exact_sqrt(ab * c).expect("triangle weight product is not a square");
            let c_new = ab + c - 2 * sigma * root;
            // Sign of sqrt(ab) - sigma * sqrt(c).
            let dir = if sigma <= 0 || ab > c {
                1
            } else if ab == c {
                0
            } else {
                -1
            };
            let w = i64::try_from(c_new).expect("weight overflow");
            s[i * n + j] = dir * w;
            s[j * n + i] = -dir * w;
        }
    }
    Diagram::from_signed(n, s)
}

/// Companion mutation at `k`, relative to the exchange matrix `b` before mutation.
pub fn mutate_companion(b: &ExchangeMatrix, a: &Companion, k: usize) -> Companion {
    let n = b.n();
    assert!(k < n, "mutation vertex {k} out of range");
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = if i == j {
                2
            } else if j == k {
                b.get(i, k).signum() * a.get(i, k)
            } else if i == k {
                -b.get(k, j).signum() * a.get(k, j)
            } else {
                let s = (a.get(i, k) * a.get(k, j)).signum();
                a.get(i, j) - s * pos(b.get(i, k) * b.get(k, j))
            };
        }
    }
    Companion::from_rows_unchecked(out)
}

/// Negate row and column `v` for every `v` in `set`.
pub fn sign_change(a: &Companion, set: &[usize]) -> Companion {
    let n = a.n();
    let mut flip = vec![1i64; n];
    for &v in set {
        flip[v] = -flip[v];
    }
    Companion::from_rows_unchecked(
        (0..n).map(|i| (0..n).map(|j| flip[i] * flip[j] * a.get(i, j)).collect()).collect(),
    )
}

/// Integer change of basis `E` with `E^T (D A) E = D A'` where `A'` is the mutated companion,
/// possibly after a sign change at `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceWitness {
    /// Column `i` is the image of `e_i`.
    pub matrix: Vec<Vec<i64>>,
    pub det: i64,
    /// `Some(k)` when the congruence holds only after negating row and column `k` of `A'`.
    pub sign_fix: Option<usize>,
}

impl CongruenceWitness {
    pub fn verify(&self, b: &ExchangeMatrix, a: &Companion, k: usize) -> bool {
        let mutated = mutate_companion(b, a, k);
        let target = match self.sign_fix {
            Some(v) => sign_change(&mutated, &[v]),
            None => mutated,
        };
        let n = b.n();
        let d = b.symmetrizer();
        let e = &self.matrix;
        for i in 0..n {
            for j in 0..n {
                let mut acc: i128 = 0;
                for p in 0..n {
                    for q in 0..n {
                        acc += e[p][i] as i128 * d[p] as i128 * a.get(p, q) as i128 * e[q][j] as i128;
                    }
                }
                if acc != d[i] as i128 * target.get(i, j) as i128 {
                    return false;
                }
            }
        }
        true
    }
}

/// Witness of the congruence between `D A` and `D A'` for mutation at `k`.
///
/// Tries `e_i -> e_i - a_ki e_k` on the vertices with `b_ik > 0` (and `e_k -> -e_k`), then the
/// variant on `b_ik < 0`, which needs a sign change at `k`.
pub fn congruence_witness(b: &ExchangeMatrix, a: &Companion, k: usize) -> Result<CongruenceWitness> {
    let n = b.n();
    if k >= n {
        return Err(Error::BadVertex { vertex: k, n });
    }
    for (positive, sign_fix) in [(true, None), (false, Some(k))] {
        let mut e = vec![vec![0i64; n]; n];
        for i in 0..n {
            e[i][i] = 1;
            let bik = b.get(i, k);
            if i != k && ((positive && bik > 0) || (!positive && bik < 0)) {
                e[k][i] = -a.get(k, i);
            }
        }
        e[k][k] = -1;
        let rows: Vec<Vec<BigRational>> =
            e.iter().map(|r| r.iter().map(|&x| BigRational::from_int(x)).collect()).collect();
        let det = determinant(&rows).to_integer().try_into().unwrap_or(0);
        let w = CongruenceWitness { matrix: e, det, sign_fix };
        if w.verify(b, a, k) {
            return Ok(w);
        }
    }
    Err(Error::WitnessNotFound)
}

pub fn apply_sequence(b: &ExchangeMatrix, path: &[usize]) -> ExchangeMatrix {
    path.iter().fold(b.clone(), |m, &k| mutate_matrix(&m, k))
}

pub fn apply_sequence_diagram(g: &Diagram, path: &[usize]) -> Diagram {
    path.iter().fold(g.clone(), |d, &k| mutate_diagram(&d, k))
}

/// Mutate the pair `(B, A)` along `path`.
pub fn apply_sequence_companion(b: &ExchangeMatrix, a: &Companion, path: &[usize]) -> (ExchangeMatrix, Companion) {
    path.iter().fold((b.clone(), a.clone()), |(m, c), &k| (mutate_matrix(&m, k), mutate_companion(&m, &c, k)))
}
