use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::Diagram;
use crate::error::{Error, Result};
use crate::linalg::{find_symmetrizer, ExchangeMatrix};

/// Factorizations `(p, q)` of `w`, balanced ones first.
fn factorizations(w: i64) -> Vec<(i64, i64)> {
    let mut out: Vec<(i64, i64)> = (1..=w).filter(|p| w % p == 0).map(|p| (p, w / p)).collect();
    out.sort_by_key(|&(p, q)| ((p - q).abs(), p > q));
    out
}

/// A skew-symmetrizable matrix whose diagram is `g`.
///
/// Each arrow `i -> j` of weight `w` gets `b_ij = p`, `b_ji = -q` with `pq = w`.
/// Balanced factorizations are tried first, so square weights give skew-symmetric output.
pub fn realize_matrix(g: &Diagram) -> Result<ExchangeMatrix> {
    let n = g.n();
    let edges = g.edges();
    let options: Vec<Vec<(i64, i64)>> = edges.iter().map(|e| factorizations(e.weight)).collect();
    let mut ratio: Vec<Option<(BigRational, usize)>> = vec![None; n];
    let mut choice = vec![0usize; edges.len()];
    if !assign(&edges, &options, 0, &mut ratio, &mut choice) {
        return Err(Error::Unrealizable);
    }
    let mut rows = vec![vec![0i64; n]; n];
    for (i, e) in edges.iter().enumerate() {
        let (p, q) = options[i][choice[i]];
        rows[e.from][e.to] = p;
        rows[e.to][e.from] = -q;
    }
    let d = find_symmetrizer(&rows)?;
    Ok(ExchangeMatrix::from_parts(n, rows.into_iter().flatten().collect(), d))
}

// ratio[v] = (d_v / d_root, root) for vertices already constrained.
fn assign(
    edges: &[super::Edge],
    options: &[Vec<(i64, i64)>],
    idx: usize,
    ratio: &mut Vec<Option<(BigRational, usize)>>,
    choice: &mut [usize],
) -> bool {
    if idx == edges.len() {
        return true;
    }
    let e = edges[idx];
    for (c, &(p, q)) in options[idx].iter().enumerate() {
        // d_from * p = d_to * q
        let factor = BigRational::new(BigInt::from(p), BigInt::from(q));
        let saved = ratio.clone();
        let ok = match (ratio[e.from].clone(), ratio[e.to].clone()) {
            (None, None) => {
                ratio[e.from] = Some((BigRational::one(), e.from));
                ratio[e.to] = Some((factor, e.from));
                true
            }
            (Some((rf, root)), None) => {
                ratio[e.to] = Some((rf * factor, root));
                true
            }
            (None, Some((rt, root))) => {
                ratio[e.from] = Some((rt / factor, root));
                true
            }
            (Some((rf, a)), Some((rt, b))) if a == b => rf * factor == rt,
            (Some((rf, a)), Some((rt, b))) => {
                // Rescale component `b` so that the new edge holds.
                let scale = rf * factor / rt;
                for slot in ratio.iter_mut() {
                    if let Some((r, root)) = slot {
                        if *root == b {
                            *slot = Some((r.clone() * scale.clone(), a));
                        }
                    }
                }
                true
            }
        };
        if ok {
            choice[idx] = c;
            if assign(edges, options, idx + 1, ratio, choice) {
                return true;
            }
        }
        *ratio = saved;
    }
    false
}
