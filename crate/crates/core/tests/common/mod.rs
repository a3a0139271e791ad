#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use mutata::{canonical_key, mutate_diagram, CanonicalKey, Diagram, Edge};
use rayon::prelude::*;

/// Connected diagrams on `1..=max_n` vertices up to isomorphism, grouped by size.
///
/// `keep` is checked on induced subdiagrams while a vertex is being attached and must be
/// hereditary; `keep_final` filters completed diagrams before they are extended further.
pub fn connected_diagrams(
    max_n: usize,
    weights: &[i64],
    keep: &(dyn Fn(&Diagram) -> bool + Sync),
    keep_final: &(dyn Fn(&Diagram) -> bool + Sync),
) -> Vec<Vec<Diagram>> {
    let single = Diagram::empty(1);
    let mut levels = vec![if keep(&single) && keep_final(&single) { vec![single] } else { vec![] }];
    for s in 2..=max_n {
        let parents = levels.last().unwrap();
        let found: Vec<(CanonicalKey, Diagram)> = parents
            .par_iter()
            .flat_map_iter(|p| {
                let mut out = Vec::new();
                let mut choice = vec![0i64; s - 1];
                attach(p, weights, keep, 0, &mut choice, &mut out);
                out
            })
            .filter(|d| keep_final(d))
            .map(|d| (canonical_key(&d).unwrap(), d))
            .collect();
        let mut seen = HashMap::new();
        for (k, d) in found {
            seen.entry(k).or_insert(d);
        }
        let mut level: Vec<(CanonicalKey, Diagram)> = seen.into_iter().collect();
        level.sort_by(|a, b| a.0.cmp(&b.0));
        levels.push(level.into_iter().map(|(_, d)| d).collect());
    }
    levels
}

fn extended(p: &Diagram, choice: &[i64], upto: usize) -> Option<Diagram> {
    // Vertices 0..=upto of the parent plus the new vertex, which gets index upto+1.
    let m = upto + 1;
    let mut edges: Vec<Edge> = p
        .edges()
        .into_iter()
        .filter(|e| e.from < m && e.to < m)
        .collect();
    for (j, &c) in choice.iter().enumerate().take(m) {
        if c > 0 {
            edges.push(Edge { from: j, to: m, weight: c });
        } else if c < 0 {
            edges.push(Edge { from: m, to: j, weight: -c });
        }
    }
    Diagram::new(m + 1, edges).ok()
}

fn attach(
    p: &Diagram,
    weights: &[i64],
    keep: &(dyn Fn(&Diagram) -> bool + Sync),
    j: usize,
    choice: &mut Vec<i64>,
    out: &mut Vec<Diagram>,
) {
    let n = p.n();
    if j == n {
        if choice.iter().any(|&c| c != 0) {
            out.push(extended(p, choice, n - 1).unwrap());
        }
        return;
    }
    let mut options = vec![0i64];
    for &w in weights {
        options.push(w);
        options.push(-w);
    }
    for c in options {
        choice[j] = c;
        if let Some(d) = extended(p, choice, j) {
            if keep(&d) {
                attach(p, weights, keep, j + 1, choice, out);
            }
        }
    }
    choice[j] = 0;
}

/// Chordless cycles by brute force over vertex subsets: each induced subgraph that is
/// connected and 2-regular. Returned as sorted vertex sets with an orientation flag.
pub fn oracle_cycles(g: &Diagram) -> Vec<(Vec<usize>, bool)> {
    let n = g.n();
    let mut out = Vec::new();
    for mask in 1u32..1 << n {
        let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if vs.len() < 3 {
            continue;
        }
        if !vs.iter().all(|&v| vs.iter().filter(|&&u| g.adjacent(u, v)).count() == 2) {
            continue;
        }
        // Walk the cycle from its first vertex.
        let nb = |v: usize| vs.iter().copied().filter(|&u| g.adjacent(u, v)).collect::<Vec<_>>();
        let mut order = vec![vs[0]];
        let (mut prev, mut cur) = (vs[0], nb(vs[0])[0]);
        while cur != vs[0] && order.len() <= vs.len() {
            order.push(cur);
            let ns = nb(cur);
            let next = if ns[0] != prev { ns[0] } else { ns[1] };
            prev = cur;
            cur = next;
        }
        if order.len() != vs.len() {
            continue;
        }
        let k = order.len();
        let fwd = (0..k).all(|t| g.has_arrow(order[t], order[(t + 1) % k]));
        let bwd = (0..k).all(|t| g.has_arrow(order[(t + 1) % k], order[t]));
        out.push((vs, fwd || bwd));
    }
    out
}

pub enum BfsOutcome {
    /// The class closed up; carries its size and maximal weight.
    Closed { size: usize, max_weight: i64 },
    /// A member satisfying the stop predicate was reached.
    Stopped,
    Capped,
}

/// Plain BFS over a mutation class up to isomorphism.
pub fn oracle_bfs(seed: &Diagram, stop: impl Fn(&Diagram) -> bool, cap: usize) -> BfsOutcome {
    if stop(seed) {
        return BfsOutcome::Stopped;
    }
    let mut seen = HashSet::from([canonical_key(seed).unwrap()]);
    let mut queue = VecDeque::from([seed.clone()]);
    let mut max_weight = seed.max_weight();
    while let Some(d) = queue.pop_front() {
        for k in 0..d.n() {
            let m = mutate_diagram(&d, k);
            if seen.insert(canonical_key(&m).unwrap()) {
                if stop(&m) {
                    return BfsOutcome::Stopped;
                }
                if seen.len() > cap {
                    return BfsOutcome::Capped;
                }
                max_weight = max_weight.max(m.max_weight());
                queue.push_back(m);
            }
        }
    }
    BfsOutcome::Closed { size: seen.len(), max_weight }
}

/// Finite type by definition: every member of the class has all weights at most 3.
/// `None` when the cap is reached first.
pub fn oracle_finite_type(g: &Diagram, cap: usize) -> Option<bool> {
    if !g.is_connected() {
        let mut all = true;
        for c in g.components() {
            all &= oracle_finite_type(&g.permuted(&c), cap)?;
        }
        return Some(all);
    }
    match oracle_bfs(g, |d| d.max_weight() >= 4, cap) {
        BfsOutcome::Closed { .. } => Some(true),
        BfsOutcome::Stopped => Some(false),
        BfsOutcome::Capped => None,
    }
}

/// Minimal infinite type by definition: infinite type, and every vertex-deleted subdiagram
/// of finite type.
pub fn oracle_minimal_infinite(g: &Diagram, cap: usize) -> Option<bool> {
    if oracle_finite_type(g, cap)? {
        return Some(false);
    }
    for v in 0..g.n() {
        let rest: Vec<usize> = (0..g.n()).filter(|&u| u != v).collect();
        if !oracle_finite_type(&g.permuted(&rest), cap)? {
            return Some(false);
        }
    }
    Some(true)
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Number of isomorphism classes in the mutation class, by labeled BFS and
/// normalization over all relabelings.
pub fn oracle_class_size(seed: &Diagram) -> usize {
    let perms = permutations(seed.n());
    let normal = |d: &Diagram| {
        perms
            .iter()
            .map(|p| {
                let q = d.permuted(p);
                (0..q.n()).flat_map(|i| (0..q.n()).map(move |j| (i, j))).map(|(i, j)| q.signed(i, j)).collect::<Vec<_>>()
            })
            .min()
            .unwrap()
    };
    let mut seen = HashSet::from([normal(seed)]);
    let mut queue = vec![seed.clone()];
    while let Some(d) = queue.pop() {
        for k in 0..d.n() {
            let m = mutate_diagram(&d, k);
            if seen.insert(normal(&m)) {
                queue.push(m);
            }
        }
    }
    seen.len()
}
