use std::fmt;

use serde::{Deserialize, Serialize};

use super::Diagram;
use crate::error::{Error, Result};
use crate::graph::{bit, Mask};

pub const DEFAULT_CANON_CAP: usize = 12;

/// Isomorphism-invariant byte string. Equal keys iff isomorphic diagrams.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        if s.len() % 2 != 0 {
            return Err(Error::Parse("odd-length hex key".into()));
        }
        (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(&s[i..i + 2], 16).map_err(|e| Error::Parse(e.to_string())))
            .collect::<Result<Vec<u8>>>()
            .map(CanonicalKey)
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for CanonicalKey {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for CanonicalKey {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CanonicalKey::from_hex(&s).map_err(serde::de::Error::custom)
    }
}

fn encode(n: usize, code: &[i64]) -> CanonicalKey {
    let mut out = vec![n as u8];
    for &v in code {
        let mut z = ((v << 1) ^ (v >> 63)) as u64;
        loop {
            let byte = (z & 0x7f) as u8;
            z >>= 7;
            if z == 0 {
                out.push(byte);
                break;
            }
            out.push(byte | 0x80);
        }
    }
    CanonicalKey(out)
}

fn upper_code(n: usize, vals: &[i64], perm: &[usize]) -> Vec<i64> {
    let mut code = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for a in 0..n {
        for b in a + 1..n {
            code.push(vals[perm[a] * n + perm[b]]);
        }
    }
    code
}

pub fn canonical_key(g: &Diagram) -> Result<CanonicalKey> {
    canonical_key_with_cap(g, DEFAULT_CANON_CAP)
}

pub fn canonical_key_with_cap(g: &Diagram, cap: usize) -> Result<CanonicalKey> {
    if g.n() > cap {
        return Err(Error::CapExceeded(format!("canonical key limited to {cap} vertices, got {}", g.n())));
    }
    Ok(canonical_form(g).0)
}

/// Key together with an ordering `perm` such that `g.permuted(&perm)` is the canonical labeling.
pub fn canonical_form(g: &Diagram) -> (CanonicalKey, Vec<usize>) {
    let (code, perm) = canonical_order_of(g.n(), g.signed_matrix());
    (encode(g.n(), &code), perm)
}

/// Key of the labeled diagram itself, without symmetry reduction.
pub fn labeled_key(g: &Diagram) -> CanonicalKey {
    let perm: Vec<usize> = (0..g.n()).collect();
    encode(g.n(), &upper_code(g.n(), g.signed_matrix(), &perm))
}

/// Minimal upper-triangle code over all orderings, for a matrix that is symmetric or antisymmetric.
fn canonical_order_of(n: usize, vals: &[i64]) -> (Vec<i64>, Vec<usize>) {
    let mut search = Search { n, vals, twins: twins(n, vals), best: None };
    search.run(vec![0; n]);
    search.best.unwrap_or_default()
}

// twins[u] has v when swapping u and v is an automorphism.
fn twins(n: usize, vals: &[i64]) -> Vec<Mask> {
    let mut out = vec![0; n];
    for u in 0..n {
        for v in u + 1..n {
            if vals[u * n + v] != vals[v * n + u] {
                continue;
            }
            let same = (0..n)
                .filter(|&x| x != u && x != v)
                .all(|x| vals[u * n + x] == vals[v * n + x] && vals[x * n + u] == vals[x * n + v]);
            if same {
                out[u] |= bit(v);
                out[v] |= bit(u);
            }
        }
    }
    out
}

struct Search<'a> {
    n: usize,
    vals: &'a [i64],
    twins: Vec<Mask>,
    best: Option<(Vec<i64>, Vec<usize>)>,
}

impl Search<'_> {
    fn refine(&self, colors: &mut [u32]) {
        let n = self.n;
        let mut count = colors.iter().max().map_or(0, |&c| c as usize + 1);
        loop {
            let sigs: Vec<(u32, Vec<(u32, i64)>)> = (0..n)
                .map(|v| {
                    let mut nb: Vec<(u32, i64)> = (0..n)
                        .filter(|&u| u != v && self.vals[v * n + u] != 0)
                        .map(|u| (colors[u], self.vals[v * n + u]))
                        .collect();
                    nb.sort_unstable();
                    (colors[v], nb)
                })
                .collect();
            let mut distinct: Vec<&(u32, Vec<(u32, i64)>)> = sigs.iter().collect();
            distinct.sort();
            distinct.dedup();
            if distinct.len() == count {
                return;
            }
            count = distinct.len();
            for v in 0..n {
                colors[v] = distinct.binary_search(&&sigs[v]).unwrap() as u32;
            }
        }
    }

    fn run(&mut self, mut colors: Vec<u32>) {
        let n = self.n;
        self.refine(&mut colors);
        let count = colors.iter().max().map_or(0, |&c| c as usize + 1);
        if count == n {
            let mut perm = vec![0; n];
            for v in 0..n {
                perm[colors[v] as usize] = v;
            }
            let code = upper_code(n, self.vals, &perm);
            if self.best.as_ref().is_none_or(|(b, _)| code < *b) {
                self.best = Some((code, perm));
            }
            return;
        }
        let mut sizes = vec![0usize; count];
        for &c in &colors {
            sizes[c as usize] += 1;
        }
        let target = sizes.iter().position(|&s| s > 1).unwrap() as u32;
        let mut tried: Mask = 0;
        for v in 0..n {
            if colors[v] != target || self.twins[v] & tried != 0 {
                continue;
            }
            tried |= bit(v);
            let child: Vec<u32> = (0..n)
                .map(|w| {
                    let c = colors[w];
                    if c < target || w == v {
                        c
                    } else {
                        c + 1
                    }
                })
                .collect();
            self.run(child);
        }
    }
}
