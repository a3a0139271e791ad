use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{self, bit, Mask};

/// First obstruction found by [`check_skew_symmetrizable`]. Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SkewViolation {
    NotSquare,
    TooLarge(usize),
    NonZeroDiagonal { index: usize },
    SignPair { i: usize, j: usize },
    Cycle { cycle: Vec<usize>, lhs: BigInt, rhs: BigInt },
}

impl fmt::Display for SkewViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SkewViolation::NotSquare => write!(f, "matrix is not square"),
            SkewViolation::TooLarge(n) => write!(f, "{n} rows exceed the supported size"),
            SkewViolation::NonZeroDiagonal { index } => write!(f, "diagonal entry {index} is nonzero"),
            SkewViolation::SignPair { i, j } => write!(f, "entries ({i},{j}) and ({j},{i}) are not sign-skew"),
            SkewViolation::Cycle { cycle, lhs, rhs } => {
                write!(f, "cycle {cycle:?} has product {lhs}, expected {rhs}")
            }
        }
    }
}

/// Test `D B` skew-symmetric for some positive diagonal `D`.
///
/// Sign-skew-symmetry is checked entrywise, then the cycle product identity on every
/// chordless cycle of the graph of nonzero entries.
pub fn check_skew_symmetrizable(rows: &[Vec<i64>]) -> std::result::Result<(), SkewViolation> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(SkewViolation::NotSquare);
    }
    if n > graph::MAX_VERTICES {
        return Err(SkewViolation::TooLarge(n));
    }
    for i in 0..n {
        if rows[i][i] != 0 {
            return Err(SkewViolation::NonZeroDiagonal { index: i });
        }
        for j in i + 1..n {
            let (a, b) = (rows[i][j], rows[j][i]);
            let ok = (a == 0 && b == 0) || (a.signum() * b.signum() == -1);
            if !ok {
                return Err(SkewViolation::SignPair { i, j });
            }
        }
    }
    if propagate(rows).is_some() {
        return Ok(());
    }
    let adj = adjacency(rows);
    for cycle in graph::chordless_cycles(&adj) {
        if let Some(v) = cycle_violation(rows, &cycle) {
            return Err(v);
        }
    }
    unreachable!("inconsistent symmetrizer without a violating chordless cycle")
}

fn cycle_violation(rows: &[Vec<i64>], cycle: &[usize]) -> Option<SkewViolation> {
    let k = cycle.len();
    let mut lhs = BigInt::one();
    let mut rhs = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    for t in 0..k {
        let (a, b) = (cycle[t], cycle[(t + 1) % k]);
        lhs *= rows[a][b];
        rhs *= rows[b][a];
    }
    (lhs != rhs).then(|| SkewViolation::Cycle { cycle: cycle.to_vec(), lhs, rhs })
}

fn adjacency(rows: &[Vec<i64>]) -> Vec<Mask> {
    let n = rows.len();
    (0..n)
        .map(|i| (0..n).filter(|&j| rows[i][j] != 0).fold(0, |m, j| m | bit(j)))
        .collect()
}

/// Spanning-forest propagation of `d_j = -d_i B_ij / B_ji`; `None` on inconsistency.
fn propagate(rows: &[Vec<i64>]) -> Option<Vec<i64>> {
    let n = rows.len();
    let mut d: Vec<Option<BigRational>> = vec![None; n];
    let mut out = vec![0i64; n];
    for root in 0..n {
        if d[root].is_some() {
            continue;
        }
        d[root] = Some(BigRational::one());
        let mut comp = vec![root];
        let mut head = 0;
        while head < comp.len() {
            let i = comp[head];
            head += 1;
            let di = d[i].clone().unwrap();
            for j in 0..n {
                if rows[i][j] == 0 {
                    continue;
                }
                let dj = -di.clone() * BigRational::from_integer(rows[i][j].into())
                    / BigRational::from_integer(rows[j][i].into());
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        comp.push(j);
                    }
                    Some(existing) if *existing != dj => return None,
                    Some(_) => {}
                }
            }
        }
        let lcm = comp.iter().fold(BigInt::one(), |acc, &v| acc.lcm(d[v].as_ref().unwrap().denom()));
        let ints: Vec<BigInt> = comp
            .iter()
            .map(|&v| (d[v].as_ref().unwrap() * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        for (&v, x) in comp.iter().zip(&ints) {
            out[v] = (x / &g).abs().to_i64()?;
        }
    }
    Some(out)
}

/// Minimal positive integer symmetrizer, normalized to gcd 1 on each connected component.
pub fn find_symmetrizer(rows: &[Vec<i64>]) -> Result<Vec<i64>> {
    check_skew_symmetrizable(rows).map_err(Error::NotSkewSymmetrizable)?;
    propagate(rows).ok_or_else(|| Error::CapExceeded("symmetrizer exceeds i64".into()))
}

/// Skew-symmetrizable integer matrix. Entries are validated at construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix {
    n: usize,
    entries: Vec<i64>,
    symmetrizer: Vec<i64>,
}

impl ExchangeMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let symmetrizer = find_symmetrizer(&rows)?;
        let n = rows.len();
        Ok(ExchangeMatrix { n, entries: rows.into_iter().flatten().collect(), symmetrizer })
    }

    /// Caller guarantees `d_i b_ij = -d_j b_ji` with the given normalized `d`.
    pub(crate) fn from_parts(n: usize, entries: Vec<i64>, symmetrizer: Vec<i64>) -> Self {
        ExchangeMatrix { n, entries, symmetrizer }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == -self.get(j, i)))
    }

    pub(crate) fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub(crate) fn adjacency(&self) -> Vec<Mask> {
        adjacency(&self.rows())
    }
}

impl Serialize for ExchangeMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExchangeMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<i64>>::deserialize(d)?;
        ExchangeMatrix::new(rows).map_err(serde::de::Error::custom)
    }
}
