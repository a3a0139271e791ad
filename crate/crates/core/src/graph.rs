//! Bitmask helpers for small undirected graphs.

pub(crate) type Mask = u64;

pub(crate) const MAX_VERTICES: usize = 64;

pub(crate) fn bit(i: usize) -> Mask {
    1 << i
}

pub(crate) fn members(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// Connected components, each sorted, ordered by smallest vertex.
pub(crate) fn components(adj: &[Mask]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut seen: Mask = 0;
    let mut out = Vec::new();
    for s in 0..n {
        if seen & bit(s) != 0 {
            continue;
        }
        let comp = reach(adj, s, full(n));
        seen |= comp;
        out.push(members(comp).collect());
    }
    out
}

pub(crate) fn full(n: usize) -> Mask {
    if n == 64 {
        Mask::MAX
    } else {
        (1 << n) - 1
    }
}

/// Vertices of `within` reachable from `s` inside `within`.
pub(crate) fn reach(adj: &[Mask], s: usize, within: Mask) -> Mask {
    let mut seen = bit(s);
    let mut frontier = bit(s);
    while frontier != 0 {
        let mut next = 0;
        for v in members(frontier) {
            next |= adj[v] & within;
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen
}

pub(crate) fn is_connected_subset(adj: &[Mask], set: Mask) -> bool {
    if set == 0 {
        return false;
    }
    reach(adj, set.trailing_zeros() as usize, set) == set
}

/// All chordless cycles (length at least three), each starting at its smallest vertex,
/// sorted lexicographically by sorted vertex set.
pub(crate) fn chordless_cycles(adj: &[Mask]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut out = Vec::new();
    for s in 0..n {
        let above = !full(s + 1);
        for p1 in members(adj[s] & above) {
            let mut path = vec![s, p1];
            extend(adj, s, above, &mut path, bit(s) | bit(p1), 0, &mut out);
        }
    }
    out.sort_by_cached_key(|c| {
        let mut k = c.clone();
        k.sort_unstable();
        k
    });
    out
}

// `blocked` holds vertices adjacent to interior path vertices other than the last one.
fn extend(
    adj: &[Mask],
    s: usize,
    above: Mask,
    path: &mut Vec<usize>,
    used: Mask,
    blocked: Mask,
    out: &mut Vec<Vec<usize>>,
) {
    let last = *path.last().unwrap();
    let p1 = path[1];
    let cands = adj[last] & above & !used & !blocked;
    for v in members(cands) {
        if adj[v] & bit(s) != 0 {
            if p1 < v {
                let mut c = path.clone();
                c.push(v);
                out.push(c);
            }
        } else {
            path.push(v);
            let inner = if path.len() > 2 { adj[last] } else { 0 };
            extend(adj, s, above, path, used | bit(v), blocked | inner, out);
            path.pop();
        }
    }
}
