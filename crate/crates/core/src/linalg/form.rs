use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::ExactScalar;
use crate::error::{Error, Result};

/// Symmetric bilinear form given by its Gram matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricForm<T> {
    n: usize,
    entries: Vec<T>,
}

impl<T: ExactScalar> SymmetricForm<T> {
    pub fn new(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DifferentShape("form must be square".into()));
            }
            entries.extend(row);
        }
        for i in 0..n {
            for j in 0..i {
                if entries[i * n + j] != entries[j * n + i] {
                    return Err(Error::DifferentShape(format!("entry ({i},{j}) breaks symmetry")));
                }
            }
        }
        Ok(SymmetricForm { n, entries })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&v| T::from_int(v)).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.n + j]
    }

    /// Form in the basis `e_{perm[0]}, e_{perm[1]}, ...`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        self.restricted(perm)
    }

    /// Restriction to the span of the listed basis vectors, in the given order.
    pub fn restricted(&self, idx: &[usize]) -> Self {
        let m = idx.len();
        let mut entries = Vec::with_capacity(m * m);
        for &i in idx {
            for &j in idx {
                entries.push(self.get(i, j).clone());
            }
        }
        SymmetricForm { n: m, entries }
    }

    /// `C u` for an integer vector `u`.
    pub fn apply(&self, u: &[i64]) -> Vec<T> {
        (0..self.n)
            .map(|i| {
                let mut acc = T::zero();
                for (j, &uj) in u.iter().enumerate() {
                    if uj != 0 {
                        acc = acc + self.get(i, j).clone() * T::from_int(uj);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_radical(&self, u: &[i64]) -> bool {
        self.apply(u).iter().all(|x| x.is_zero())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Definiteness {
    Positive,
    Semipositive,
    Indefinite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositivityReport {
    pub class: Definiteness,
    /// Nullity of the Gram matrix.
    pub corank: usize,
    /// Primitive integer basis of the radical; first nonzero coordinate positive.
    pub kernel_basis: Vec<Vec<i64>>,
    /// One flag per kernel vector: all coordinates nonzero.
    pub sincere: Vec<bool>,
}

impl PositivityReport {
    pub fn is_positive(&self) -> bool {
        self.class == Definiteness::Positive
    }

    pub fn is_semipositive(&self) -> bool {
        self.class != Definiteness::Indefinite
    }

    /// Semipositive of corank one.
    pub fn is_affine_like(&self) -> bool {
        self.class == Definiteness::Semipositive && self.corank == 1
    }
}

/// Definiteness, corank and radical of a symmetric form by exact elimination.
pub fn psd_classify<T: ExactScalar>(form: &SymmetricForm<T>) -> PositivityReport {
    let n = form.n;
    let semipositive = schur_semipositive(form);
    let kernel = kernel_basis(form);
    let corank = kernel.len();
    let class = match (semipositive, corank) {
        (false, _) => Definiteness::Indefinite,
        (true, 0) => Definiteness::Positive,
        (true, _) => Definiteness::Semipositive,
    };
    let sincere = kernel.iter().map(|u| u.len() == n && u.iter().all(|&x| x != 0)).collect();
    PositivityReport { class, corank, kernel_basis: kernel, sincere }
}

/// Whether the radical contains a vector with all coordinates nonzero.
pub fn kernel_sincerity(report: &PositivityReport) -> Result<bool> {
    let Some(first) = report.kernel_basis.first() else {
        return Err(Error::EmptyKernel);
    };
    // A subspace avoids a coordinate hyperplane unless the coordinate vanishes on all of it.
    Ok((0..first.len()).all(|i| report.kernel_basis.iter().any(|u| u[i] != 0)))
}

fn schur_semipositive<T: ExactScalar>(form: &SymmetricForm<T>) -> bool {
    let n = form.n;
    let mut m = form.entries.clone();
    let mut active: Vec<usize> = (0..n).collect();
    loop {
        let mut pivot = None;
        for &i in &active {
            let d = &m[i * n + i];
            if d.is_negative() {
                return false;
            }
            if d.is_zero() {
                if active.iter().any(|&j| !m[i * n + j].is_zero()) {
                    return false;
                }
            } else if pivot.is_none() {
                pivot = Some(i);
            }
        }
        let Some(p) = pivot else { return true };
        active.retain(|&i| i != p);
        let pp = m[p * n + p].clone();
        for &i in &active {
            if m[i * n + p].is_zero() {
                continue;
            }
            let f = m[i * n + p].clone() / pp.clone();
            for &j in &active {
                let v = m[i * n + j].clone() - f.clone() * m[p * n + j].clone();
                m[i * n + j] = v;
            }
        }
    }
}

fn kernel_basis<T: ExactScalar>(form: &SymmetricForm<T>) -> Vec<Vec<i64>> {
    let n = form.n;
    let mut m: Vec<Vec<T>> = (0..n).map(|i| (0..n).map(|j| form.get(i, j).clone()).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(r) = (row..n).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, r);
        let inv = T::one() / m[row][col].clone();
        for c in col..n {
            m[row][c] = m[row][c].clone() * inv.clone();
        }
        for r2 in 0..n {
            if r2 != row && !m[r2][col].is_zero() {
                let f = m[r2][col].clone();
                for c in col..n {
                    let v = m[r2][c].clone() - f.clone() * m[row][c].clone();
                    m[r2][c] = v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); n];
            v[f] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].to_big_rational();
            }
            primitive(&v)
        })
        .collect()
}

/// Scale a rational vector to a primitive integer vector with first nonzero entry positive.
fn primitive(v: &[BigRational]) -> Vec<i64> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    let g = if g.is_zero() { BigInt::one() } else { g };
    ints.iter()
        .map(|x| (x * &sign / &g).to_i64().expect("kernel coordinate exceeds i64"))
        .collect()
}

/// Exact determinant.
pub fn determinant<T: ExactScalar>(rows: &[Vec<T>]) -> T {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut det = T::one();
    for col in 0..n {
        let Some(r) = (col..n).find(|&r| !m[r][col].is_zero()) else { return T::zero() };
        if r != col {
            m.swap(r, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det = det * p.clone();
        for r2 in col + 1..n {
            if m[r2][col].is_zero() {
                continue;
            }
            let f = m[r2][col].clone() / p.clone();
            for c in col..n {
                let v = m[r2][c].clone() - f.clone() * m[col][c].clone();
                m[r2][c] = v;
            }
        }
    }
    det
}
