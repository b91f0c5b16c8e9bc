//! Dense matrices over `Rat` with exact linear algebra.
//!
//! Rank and nullspace come from rational Gauss-Jordan elimination; a
//! fraction-free (Bareiss) route over a denominator-cleared copy is kept as
//! an independent cross-check for rank and determinant.

use num_bigint::BigInt;
use num_traits::Zero;
use std::ops::{Add, Index, Mul, Sub};

use crate::poly::QPoly;
use crate::rat::Rat;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    a: Vec<Rat>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, a: Vec<Rat>) -> Self {
        assert_eq!(a.len(), rows * cols, "entry count mismatch");
        RatMatrix { rows, cols, a }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix::new(rows, cols, vec![Rat::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut a = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                a.push(f(i, j));
            }
        }
        RatMatrix::new(rows, cols, a)
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Invalid("ragged matrix rows".into()));
        }
        Ok(RatMatrix::new(r, c, rows.into_iter().flatten().collect()))
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        RatMatrix::from_fn(r, c, |i, j| Rat::from_int(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.a[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.a[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.a[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> RatMatrix {
        RatMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> Rat {
        assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(Rat::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn scale(&self, r: &Rat) -> RatMatrix {
        RatMatrix::new(self.rows, self.cols, self.a.iter().map(|x| x * r).collect())
    }

    pub fn pow(&self, e: u64) -> RatMatrix {
        assert!(self.is_square());
        let mut acc = RatMatrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Kronecker product; index (i, j) of the result with i = i1 * rows2 + i2.
    pub fn kron(&self, other: &RatMatrix) -> RatMatrix {
        let (r1, c1, r2, c2) = (self.rows, self.cols, other.rows, other.cols);
        RatMatrix::from_fn(r1 * r2, c1 * c2, |i, j| {
            self.get(i / r2, j / c2) * other.get(i % r2, j % c2)
        })
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..m.cols {
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.a.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, col).recip().expect("pivot nonzero");
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, col).is_zero() {
                    continue;
                }
                let factor = m.get(i, col).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j) - &(m.get(r, j) * &factor);
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rank together with a right-kernel basis from a single elimination.
    pub fn rank_and_nullspace(&self) -> (usize, Vec<Vec<Rat>>) {
        let (m, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.get(r, free).clone();
            }
            basis.push(v);
        }
        (pivots.len(), basis)
    }

    /// Basis of the right kernel { v : Av = 0 }.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        self.rank_and_nullspace().1
    }

    pub fn det(&self) -> Rat {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Rat::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !m.get(i, col).is_zero()) else {
                return Rat::zero();
            };
            if p != col {
                for j in 0..n {
                    m.a.swap(p * n + j, col * n + j);
                }
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det *= &pivot;
            let inv = pivot.recip().expect("pivot nonzero");
            for i in col + 1..n {
                if m.get(i, col).is_zero() {
                    continue;
                }
                let factor = m.get(i, col) * &inv;
                for j in col..n {
                    let v = m.get(i, j) - &(m.get(col, j) * &factor);
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// Rank and (for square input) determinant by Bareiss fraction-free
    /// elimination on a row-wise denominator-cleared integer copy.
    /// Independent of the rational Gauss route.
    pub fn rank_det_bareiss(&self) -> (usize, Option<Rat>) {
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(self.rows);
        let mut row_scale = Rat::one();
        for i in 0..self.rows {
            let mut lcm = BigInt::from(1);
            for v in self.row(i) {
                lcm = num_integer::lcm(lcm, v.denom().clone());
            }
            row_scale *= Rat::from_int(lcm.clone());
            m.push(
                self.row(i)
                    .iter()
                    .map(|v| v.numer() * (&lcm / v.denom()))
                    .collect(),
            );
        }
        let (rows, cols) = (self.rows, self.cols);
        let mut prev = BigInt::from(1);
        let mut sign = 1i64;
        let mut r = 0;
        let mut last_pivot = BigInt::from(1);
        for col in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            if p != r {
                m.swap(p, r);
                sign = -sign;
            }
            let pivot = m[r][col].clone();
            for i in r + 1..rows {
                for j in col + 1..cols {
                    let num = &pivot * &m[i][j] - &m[i][col] * &m[r][j];
                    m[i][j] = num / &prev; // exact by the Bareiss identity
                }
                m[i][col] = BigInt::zero();
            }
            prev = pivot.clone();
            last_pivot = pivot;
            r += 1;
        }
        let det = if self.is_square() {
            Some(if r < rows {
                Rat::zero()
            } else {
                let d = Rat::from_int(last_pivot) * Rat::from_int(BigInt::from(sign));
                &d / &row_scale
            })
        } else {
            None
        };
        (r, det)
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = RatMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rat::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(RatMatrix::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }

    /// Characteristic polynomial, monic of degree n (Faddeev-LeVerrier).
    pub fn char_poly(&self) -> QPoly {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[n] = Rat::one();
        let mut m = self.clone(); // M_1 = A
        for k in 1..=n {
            let c = -(m.trace() / Rat::from_int(k as i64));
            coeffs[n - k] = c.clone();
            if k < n {
                let mut shifted = m;
                for i in 0..n {
                    let v = shifted.get(i, i) + &c;
                    shifted.set(i, i, v);
                }
                m = self * &shifted;
            }
        }
        QPoly::from_coeffs(coeffs)
    }

    /// Inertia (n_pos, n_neg, n_zero) of a symmetric matrix, exact.
    ///
    /// Symmetric elimination on diagonal pivots; when every remaining
    /// diagonal entry vanishes but some off-diagonal entry b != 0 survives,
    /// that 2x2 hyperbolic block contributes (+1, -1) and is eliminated by
    /// M[i][j] -= (M[i][p] M[q][j] + M[i][q] M[p][j]) / b.
    pub fn inertia(&self) -> Result<(usize, usize, usize)> {
        if !self.is_symmetric() {
            return Err(Error::Invalid("inertia of a non-symmetric matrix".into()));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut active: Vec<usize> = (0..n).collect();
        let (mut pos, mut neg) = (0usize, 0usize);
        loop {
            if active.is_empty() {
                break;
            }
            if let Some(&p) = active.iter().find(|&&p| !m.get(p, p).is_zero()) {
                let pivot = m.get(p, p).clone();
                if pivot.is_positive() {
                    pos += 1;
                } else {
                    neg += 1;
                }
                active.retain(|&i| i != p);
                for &i in &active {
                    if m.get(i, p).is_zero() {
                        continue;
                    }
                    let fi = m.get(i, p) / &pivot;
                    for &j in &active {
                        let v = m.get(i, j) - &(&fi * m.get(p, j));
                        m.set(i, j, v);
                    }
                }
                continue;
            }
            // all active diagonal entries are zero
            let mut pair = None;
            'outer: for (ai, &p) in active.iter().enumerate() {
                for &q in &active[ai + 1..] {
                    if !m.get(p, q).is_zero() {
                        pair = Some((p, q));
                        break 'outer;
                    }
                }
            }
            let Some((p, q)) = pair else {
                break; // remaining block is zero
            };
            pos += 1;
            neg += 1;
            let b = m.get(p, q).clone();
            active.retain(|&i| i != p && i != q);
            for &i in &active {
                for &j in &active {
                    let corr = &(m.get(i, p) * m.get(q, j)) + &(m.get(i, q) * m.get(p, j));
                    let v = m.get(i, j) - &(&corr / &b);
                    m.set(i, j, v);
                }
            }
        }
        Ok((pos, neg, n - pos - neg))
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        self.get(i, j)
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RatMatrix::new(
            self.rows,
            self.cols,
            self.a.iter().zip(&rhs.a).map(|(x, y)| x + y).collect(),
        )
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RatMatrix::new(
            self.rows,
            self.cols,
            self.a.iter().zip(&rhs.a).map(|(x, y)| x - y).collect(),
        )
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + &(aik * b);
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

impl std::fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(Rat::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vec<Rat>], v: &[Rat]) -> bool {
    if v.iter().all(Rat::is_zero) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let b = RatMatrix::from_rows(basis.to_vec()).expect("basis rows");
    let mut rows = basis.to_vec();
    rows.push(v.to_vec());
    let ext = RatMatrix::from_rows(rows).expect("extended rows");
    b.rank() == ext.rank()
}
