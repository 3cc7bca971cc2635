//! Linear algebra over `Z/e`.
//!
//! A matrix over `Z/e` is brought to diagonal form `U A V = S` by invertible
//! row and column operations. Row operations are kept as a list and replayed
//! on vectors, so tall matrices never materialize `U`.

use num_bigint::BigUint;

/// A dense matrix over `Z/modulus`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZmodMatrix {
    rows: usize,
    cols: usize,
    modulus: u64,
    data: Vec<u64>,
}

impl ZmodMatrix {
    pub fn zeros(rows: usize, cols: usize, modulus: u64) -> Self {
        assert!(modulus >= 1);
        ZmodMatrix {
            rows,
            cols,
            modulus,
            data: vec![0; rows * cols],
        }
    }

    /// Builds the matrix whose columns are `columns`.
    pub fn from_columns(rows: usize, modulus: u64, columns: &[Vec<u64>]) -> Self {
        let mut m = Self::zeros(rows, columns.len(), modulus);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.modulus;
    }

    /// `A y`.
    pub fn mul_vec(&self, y: &[u64]) -> Vec<u64> {
        let e = self.modulus;
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(0u64, |acc, j| (acc + self.get(i, j) * (y[j] % e)) % e)
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug)]
enum RowOp {
    Swap(usize, usize),
    /// rows (a, b) <- ([x y; z w] applied to (row a, row b))
    Mix {
        a: usize,
        b: usize,
        x: u64,
        y: u64,
        z: u64,
        w: u64,
    },
}

/// Diagonal form `U A V = S` of a matrix over `Z/e`.
#[derive(Clone, Debug)]
pub struct Diagonalized {
    rows: usize,
    cols: usize,
    modulus: u64,
    diag: Vec<u64>,
    row_ops: Vec<RowOp>,
    v: Vec<u64>,
}

/// `(g, x, y)` with `x a + y b = g = gcd(a, b)`; `(a, 1, 0)` when `a | b`.
fn bezout(a: u64, b: u64) -> (u64, i64, i64) {
    if a != 0 && b.is_multiple_of(a) {
        return (a, 1, 0);
    }
    let (mut r0, mut r1) = (a as i64, b as i64);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 as u64, s0, t0)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn modinv(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (g, x, _) = bezout(a % m, m);
    debug_assert_eq!(g, 1);
    x.rem_euclid(m as i64) as u64
}

impl Diagonalized {
    pub fn new(matrix: &ZmodMatrix) -> Self {
        let (rows, cols, e) = (matrix.rows, matrix.cols, matrix.modulus);
        let mut a = matrix.data.clone();
        let mut v = vec![0u64; cols * cols];
        for j in 0..cols {
            v[j * cols + j] = 1 % e;
        }
        let mut row_ops = Vec::new();
        let red = |x: i64| x.rem_euclid(e as i64) as u64;
        let k = rows.min(cols);
        let mut diag = Vec::with_capacity(k);

        for t in 0..k {
            // pivot: nonzero entry generating the largest ideal
            let mut best: Option<(u64, usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = a[i * cols + j];
                    if x != 0 {
                        let g = gcd(x, e);
                        if best.is_none_or(|(bg, _, _)| g < bg) {
                            best = Some((g, i, j));
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else { break };
            if pi != t {
                for c in 0..cols {
                    a.swap(pi * cols + c, t * cols + c);
                }
                row_ops.push(RowOp::Swap(t, pi));
            }
            if pj != t {
                for r in 0..rows {
                    a.swap(r * cols + pj, r * cols + t);
                }
                for r in 0..cols {
                    v.swap(r * cols + pj, r * cols + t);
                }
            }
            loop {
                for i in t + 1..rows {
                    let b = a[i * cols + t];
                    if b == 0 {
                        continue;
                    }
                    let p = a[t * cols + t];
                    let (g, x, y) = bezout(p, b);
                    let (x, y) = (red(x), red(y));
                    let z = red(-((b / g) as i64));
                    let w = (p / g) % e;
                    for c in t..cols {
                        let (rt, ri) = (a[t * cols + c], a[i * cols + c]);
                        a[t * cols + c] = (x * rt + y * ri) % e;
                        a[i * cols + c] = (z * rt + w * ri) % e;
                    }
                    row_ops.push(RowOp::Mix { a: t, b: i, x, y, z, w });
                }
                for j in t + 1..cols {
                    let b = a[t * cols + j];
                    if b == 0 {
                        continue;
                    }
                    let p = a[t * cols + t];
                    let (g, x, y) = bezout(p, b);
                    let (x, y) = (red(x), red(y));
                    let z = red(-((b / g) as i64));
                    let w = (p / g) % e;
                    for r in 0..rows {
                        let (ct, cj) = (a[r * cols + t], a[r * cols + j]);
                        a[r * cols + t] = (x * ct + y * cj) % e;
                        a[r * cols + j] = (z * ct + w * cj) % e;
                    }
                    for r in 0..cols {
                        let (ct, cj) = (v[r * cols + t], v[r * cols + j]);
                        v[r * cols + t] = (x * ct + y * cj) % e;
                        v[r * cols + j] = (z * ct + w * cj) % e;
                    }
                }
                if (t + 1..rows).all(|i| a[i * cols + t] == 0) {
                    break;
                }
            }
            diag.push(a[t * cols + t]);
        }
        diag.resize(k, 0);
        Diagonalized {
            rows,
            cols,
            modulus: e,
            diag,
            row_ops,
            v,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `U t`.
    fn apply_rows(&self, t: &[u64]) -> Vec<u64> {
        let e = self.modulus;
        let mut u: Vec<u64> = t.iter().map(|&x| x % e).collect();
        for op in &self.row_ops {
            match *op {
                RowOp::Swap(i, j) => u.swap(i, j),
                RowOp::Mix { a, b, x, y, z, w } => {
                    let (ua, ub) = (u[a], u[b]);
                    u[a] = (x * ua + y * ub) % e;
                    u[b] = (z * ua + w * ub) % e;
                }
            }
        }
        u
    }

    /// `gcd(s_i, e)` for each diagonal position; `e` where `s_i = 0`.
    fn ideal(&self, i: usize) -> u64 {
        let s = self.diag.get(i).copied().unwrap_or(0);
        gcd(s, self.modulus)
    }

    /// Some `y` with `A y = t`, if one exists.
    pub fn solve(&self, t: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(t.len(), self.rows);
        let e = self.modulus;
        let ut = self.apply_rows(t);
        let mut z = vec![0u64; self.cols];
        for (i, &c) in ut.iter().enumerate() {
            if i >= self.diag.len() {
                if c != 0 {
                    return None;
                }
                continue;
            }
            let s = self.diag[i];
            let g = gcd(s, e);
            if c % g != 0 {
                return None;
            }
            let m = e / g;
            z[i] = ((c / g) % m) * modinv((s / g) % m, m) % m;
        }
        Some(self.apply_v(&z))
    }

    fn apply_v(&self, z: &[u64]) -> Vec<u64> {
        let (n, e) = (self.cols, self.modulus);
        (0..n)
            .map(|r| (0..n).fold(0, |acc, c| (acc + self.v[r * n + c] * z[c]) % e))
            .collect()
    }

    /// Generators of `{ y : A y = 0 }`.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let e = self.modulus;
        let mut gens = Vec::new();
        for j in 0..self.cols {
            let scale = if j < self.diag.len() { e / gcd(self.diag[j], e) } else { 1 };
            if scale % e == 0 {
                continue;
            }
            let mut z = vec![0u64; self.cols];
            z[j] = scale;
            gens.push(self.apply_v(&z));
        }
        gens
    }

    /// Size of the column span.
    pub fn image_order(&self) -> BigUint {
        (0..self.diag.len())
            .map(|i| BigUint::from(self.modulus / self.ideal(i)))
            .product()
    }

    /// A canonical key of the coset `t + span(columns)`: two vectors share a
    /// key exactly when their difference lies in the column span.
    pub fn coset_key(&self, t: &[u64]) -> Vec<u64> {
        let ut = self.apply_rows(t);
        ut.into_iter()
            .enumerate()
            .map(|(i, c)| if i < self.diag.len() { c % self.ideal(i) } else { c })
            .collect()
    }

    pub fn in_span(&self, t: &[u64]) -> bool {
        self.coset_key(t).iter().all(|&c| c == 0)
    }
}
