//! Dense linear systems over GF(2).

#[derive(Debug, Clone)]
pub(crate) struct Gf2System {
    vars: usize,
    rows: Vec<(Vec<u64>, bool)>,
}

impl Gf2System {
    pub fn new(vars: usize) -> Self {
        Gf2System { vars, rows: Vec::new() }
    }

    pub fn push(&mut self, vars: &[usize], rhs: bool) {
        let mut row = vec![0u64; self.vars.div_ceil(64)];
        for &v in vars {
            row[v / 64] ^= 1 << (v % 64);
        }
        self.rows.push((row, rhs));
    }

    /// A solution with free variables set to zero, or `None` when inconsistent.
    pub fn solve(&self) -> Option<Vec<bool>> {
        let mut rows = self.rows.clone();
        let get = |r: &[u64], c: usize| r[c / 64] >> (c % 64) & 1 == 1;
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.vars {
            let Some(p) = (rank..rows.len()).find(|&r| get(&rows[r].0, col)) else { continue };
            rows.swap(rank, p);
            let (prow, prhs) = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && get(&row.0, col) {
                    for (x, y) in row.0.iter_mut().zip(&prow) {
                        *x ^= y;
                    }
                    row.1 ^= prhs;
                }
            }
            pivots.push(col);
            rank += 1;
        }
        if rows[rank..].iter().any(|(_, rhs)| *rhs) {
            return None;
        }
        let mut x = vec![false; self.vars];
        for (r, &col) in pivots.iter().enumerate() {
            x[col] = rows[r].1;
        }
        Some(x)
    }
}
