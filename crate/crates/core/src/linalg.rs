//! Exact linear algebra over `Z/N`.
//!
//! Every module in this crate is a finite abelian group of exponent dividing
//! some `N`, so all lattices of interest contain `N·Z^d` and can be handled as
//! submodules of `(Z/N)^d`. Entries stay in `[0, N)` and never grow.

/// `(g, s, t)` with `g = gcd(a, b) = s·a + t·b`, `g ≥ 0`.
pub(crate) fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    ext_gcd(a, b).0
}

/// Like `ext_gcd`, but returns the trivial combination `(a, 1, 0)` when `a | b`
/// so that eliminating a multiple never disturbs the pivot line.
fn pivot_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if a != 0 && b % a == 0 {
        (a, 1, 0)
    } else {
        ext_gcd(a, b)
    }
}

/// Echelon form of a submodule of `(Z/N)^d` with the Howell property: for
/// every column `c`, the elements vanishing before `c` are spanned by rows
/// `c..d`. Row `c` (when filled) has pivot `rows[c][c]`, a proper divisor of `N`.
#[derive(Debug, Clone)]
pub(crate) struct Howell {
    modulus: i64,
    rows: Vec<Vec<i64>>,
    filled: Vec<bool>,
}

impl Howell {
    pub fn new(dim: usize, modulus: i64) -> Self {
        assert!(modulus >= 1);
        Howell { modulus, rows: vec![vec![0; dim]; dim], filled: vec![false; dim] }
    }

    /// Builds the closed form spanned by `gens`.
    pub fn span(dim: usize, modulus: i64, gens: impl IntoIterator<Item = Vec<i64>>) -> Self {
        let mut h = Howell::new(dim, modulus);
        for g in gens {
            h.insert(g);
        }
        h.close();
        h
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn md(&self, x: i64) -> i64 {
        x.rem_euclid(self.modulus)
    }

    pub fn insert(&mut self, v: Vec<i64>) {
        self.insert_from(v, 0);
    }

    fn insert_from(&mut self, mut v: Vec<i64>, start: usize) {
        debug_assert_eq!(v.len(), self.dim());
        for x in v.iter_mut() {
            *x = x.rem_euclid(self.modulus);
        }
        for c in start..self.dim() {
            let b = v[c];
            if b == 0 {
                continue;
            }
            let a = if self.filled[c] { self.rows[c][c] } else { self.modulus };
            let (g, s, t) = ext_gcd(a, b);
            let (ag, bg) = (a / g, b / g);
            let row = &self.rows[c];
            let new_row: Vec<i64> = (0..v.len()).map(|k| self.md(s * row[k] + t * v[k])).collect();
            let new_v: Vec<i64> = (0..v.len()).map(|k| self.md(ag * v[k] - bg * row[k])).collect();
            debug_assert_eq!(new_v[c], 0);
            self.rows[c] = new_row;
            self.filled[c] = true;
            v = new_v;
        }
    }

    /// Restores the Howell property after insertions.
    pub fn close(&mut self) {
        for c in 0..self.dim() {
            if !self.filled[c] {
                continue;
            }
            let p = self.rows[c][c];
            let mult = self.modulus / p;
            let w: Vec<i64> = self.rows[c].iter().map(|&x| self.md(mult * x)).collect();
            self.insert_from(w, c + 1);
        }
    }

    pub fn pivot(&self, c: usize) -> Option<i64> {
        self.filled[c].then(|| self.rows[c][c])
    }

    pub fn row(&self, c: usize) -> &[i64] {
        &self.rows[c]
    }

    /// Subtracts rows with pivots in `cols` from `v` until those columns vanish.
    /// Returns the quotient for each row used, or the first column that cannot
    /// be cleared.
    pub fn reduce(&self, v: &mut [i64], cols: std::ops::Range<usize>) -> Result<Vec<(usize, i64)>, usize> {
        let mut used = Vec::new();
        for x in v.iter_mut() {
            *x = x.rem_euclid(self.modulus);
        }
        for c in cols {
            let x = v[c];
            if x == 0 {
                continue;
            }
            let Some(p) = self.pivot(c) else { return Err(c) };
            if x % p != 0 {
                return Err(c);
            }
            let q = x / p;
            for (k, r) in self.rows[c].iter().enumerate() {
                v[k] = (v[k] - q * r).rem_euclid(self.modulus);
            }
            used.push((c, q));
        }
        Ok(used)
    }

    #[cfg(test)]
    pub fn contains(&self, v: &[i64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w, 0..self.dim()).is_ok() && w.iter().all(|&x| x == 0)
    }
}

/// Smith form of a matrix over `Z/N` together with the column transform.
///
/// The quotient `(Z/N)^cols / rowspace` is `⊕ Z/factors[t]`, and a row vector
/// `c` maps to coordinates `(c·V)_t mod factors[t]`. Row `t` of `v_inv` is a
/// preimage of the `t`-th coordinate generator.
#[derive(Debug, Clone)]
pub(crate) struct SmithForm {
    pub factors: Vec<i64>,
    pub v: Vec<Vec<i64>>,
    pub v_inv: Vec<Vec<i64>>,
}

pub(crate) fn smith_mod(mut m: Vec<Vec<i64>>, cols: usize, modulus: i64) -> SmithForm {
    let n = modulus;
    let md = |x: i64| x.rem_euclid(n);
    for row in m.iter_mut() {
        debug_assert_eq!(row.len(), cols);
        for x in row.iter_mut() {
            *x = md(*x);
        }
    }
    let rows = m.len();
    let mut v: Vec<Vec<i64>> = (0..cols).map(|i| (0..cols).map(|j| md((i == j) as i64)).collect()).collect();
    let mut v_inv = v.clone();
    let mut diag = vec![0i64; cols];

    // column op on (t, j): col_t ← s·col_t + u·col_j ; col_j ← −bg·col_t + ag·col_j
    let col_op =
        |m: &mut Vec<Vec<i64>>, v: &mut Vec<Vec<i64>>, v_inv: &mut Vec<Vec<i64>>, t: usize, j: usize, s: i64, u: i64, ag: i64, bg: i64| {
            for row in m.iter_mut().chain(v.iter_mut()) {
                let (x, y) = (row[t], row[j]);
                row[t] = md(s * x + u * y);
                row[j] = md(-bg * x + ag * y);
            }
            // inverse block [[ag, bg], [-u, s]] applied to rows t, j of v_inv
            let (rt, rj) = (v_inv[t].clone(), v_inv[j].clone());
            for k in 0..rt.len() {
                v_inv[t][k] = md(ag * rt[k] + bg * rj[k]);
                v_inv[j][k] = md(-u * rt[k] + s * rj[k]);
            }
        };

    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j] < m[bi][bj]) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        if pj != t {
            for row in m.iter_mut().chain(v.iter_mut()) {
                row.swap(t, pj);
            }
            v_inv.swap(t, pj);
        }
        loop {
            for i in t + 1..rows {
                let b = m[i][t];
                if b == 0 {
                    continue;
                }
                let a = m[t][t];
                let (g, s, u) = pivot_gcd(a, b);
                let (ag, bg) = (a / g, b / g);
                let (rt, ri) = (m[t].clone(), m[i].clone());
                for k in 0..cols {
                    m[t][k] = md(s * rt[k] + u * ri[k]);
                    m[i][k] = md(-bg * rt[k] + ag * ri[k]);
                }
            }
            for j in t + 1..cols {
                let b = m[t][j];
                if b == 0 {
                    continue;
                }
                let a = m[t][t];
                let (g, s, u) = pivot_gcd(a, b);
                col_op(&mut m, &mut v, &mut v_inv, t, j, s, u, a / g, b / g);
            }
            if (t + 1..rows).any(|i| m[i][t] != 0) {
                continue;
            }
            let g = gcd(m[t][t], n);
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % g != 0));
            match bad {
                Some(i) => {
                    let ri = m[i].clone();
                    for k in 0..cols {
                        m[t][k] = md(m[t][k] + ri[k]);
                    }
                }
                None => break,
            }
        }
        diag[t] = m[t][t];
        t += 1;
    }
    let factors = diag.iter().map(|&d| if d == 0 { n } else { gcd(d, n) }).collect();
    SmithForm { factors, v, v_inv }
}

impl SmithForm {
    pub fn coordinates(&self, c: &[i64]) -> Vec<i64> {
        let cols = self.v.len();
        (0..cols)
            .map(|t| {
                let s: i64 = (0..cols).map(|k| c[k] * self.v[k][t]).sum();
                s.rem_euclid(self.factors[t])
            })
            .collect()
    }
}
