//! Small dense linear algebra over a generic [`Scalar`].
//!
//! Vectors are columns (`Vec<S>`), matrices act on the left, and `a.mul(&b)`
//! applies `b` first. Blocks in this crate are tiny (a handful of rows), so
//! everything is plain row-major storage with no blocking or SIMD.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{dim_check, Error, Result};
use crate::scalar::{abs_f64, Rational, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds from nested rows. `cols` is needed for the 0-row case.
    pub fn from_rows(rows: Vec<Vec<S>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            dim_check(r.len() == cols, || {
                format!("row {i} has {} entries, expected {cols}", r.len())
            })?;
            data.extend(r);
        }
        Ok(Self {
            rows: n,
            cols,
            data,
        })
    }

    pub fn scalar(v: S) -> Self {
        Self {
            rows: 1,
            cols: 1,
            data: vec![v],
        }
    }

    pub fn diagonal(entries: &[S]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { S::zero() })
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

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// `self ∘ other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * other.get(l, j).clone();
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, r: &S) -> Self {
        self.map(|a| a.clone() * r.clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a.clone())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Kronecker product; row index `(p, q) ↦ p·other.rows + q`.
    pub fn kron(&self, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            let (p, q) = (r / other.rows, r % other.rows);
            let (i, j) = (c / other.cols, c % other.cols);
            self.get(p, i).clone() * other.get(q, j).clone()
        })
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| a.approx_eq(b, tol))
    }

    /// Max-abs entry, as a float.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(abs_f64).fold(0.0, f64::max)
    }

    /// Gauss–Jordan inverse. Exact for rationals; partial pivoting for floats.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Singular(format!(
                "{}x{} matrix is not square",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a.get(r, col).is_negligible())
                .max_by(|&r, &s| abs_f64(a.get(r, col)).total_cmp(&abs_f64(a.get(s, col))))
                .ok_or_else(|| Error::Singular(format!("{n}x{n} matrix has rank < {n}")))?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = a.get(col, col).clone();
            for j in 0..n {
                a.set(col, j, a.get(col, j).clone() / p.clone());
                inv.set(col, j, inv.get(col, j).clone() / p.clone());
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = a.get(r, j).clone() - f.clone() * a.get(col, j).clone();
                    a.set(r, j, v);
                    let w = inv.get(r, j).clone() - f.clone() * inv.get(col, j).clone();
                    inv.set(r, j, w);
                }
            }
        }
        Ok(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_ok()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Block-diagonal `diag(self, other)`.
    pub fn block_diag(&self, other: &Self) -> Self {
        Self::from_fn(self.rows + other.rows, self.cols + other.cols, |i, j| {
            match (i < self.rows, j < self.cols) {
                (true, true) => self.get(i, j).clone(),
                (false, false) => other.get(i - self.rows, j - self.cols).clone(),
                _ => S::zero(),
            }
        })
    }

    /// Copy of rows `r0..r1`, columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j).clone())
    }
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn vadd<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn vsub<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn vscale<S: Scalar>(r: &S, a: &[S]) -> Vec<S> {
    a.iter().map(|x| r.clone() * x.clone()).collect()
}

pub fn vzero<S: Scalar>(n: usize) -> Vec<S> {
    vec![S::zero(); n]
}

pub fn vapprox_eq<S: Scalar>(a: &[S], b: &[S], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.approx_eq(y, tol))
}

pub fn unit<S: Scalar>(n: usize, i: usize) -> Vec<S> {
    let mut v = vzero(n);
    v[i] = S::one();
    v
}

/// Matrix exponential by scaling and squaring with a Taylor base step.
///
/// The argument is scaled by `2^-s` until its max-row-sum norm is at most
/// 1/2; the Taylor series is then summed until terms drop below 1e-18 of the
/// running sum, and the result is squared `s` times.
pub fn expm(a: &Matrix<f64>) -> Matrix<f64> {
    assert!(a.is_square(), "expm of non-square matrix");
    let norm = (0..a.rows())
        .map(|i| a.row(i).iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut squarings = 0u32;
    let mut scaled_norm = norm;
    while scaled_norm > 0.5 {
        scaled_norm /= 2.0;
        squarings += 1;
    }
    let scaled = a.scale(&(0.5f64).powi(squarings as i32));
    let mut result = exp_taylor(&scaled);
    for _ in 0..squarings {
        result = result.mul(&result);
    }
    result
}

/// Taylor series of `exp`, for arguments of small norm.
pub(crate) fn exp_taylor(a: &Matrix<f64>) -> Matrix<f64> {
    let n = a.rows();
    let mut sum = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for k in 1..=30 {
        term = term.mul(a).scale(&(1.0 / k as f64));
        sum = sum.add(&term);
        if term.max_abs() <= 1e-18 * sum.max_abs().max(1.0) {
            break;
        }
    }
    sum
}

/// Rank by fraction-free (Bareiss) elimination. Rows are scaled to integers
/// first, so intermediate entries stay integral and no gcd work is done
/// inside the sweep.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();
    let height = m.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..width {
        if rank == height {
            break;
        }
        let Some(p) = (rank..height).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..height {
            for c in col + 1..width {
                let v = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

fn integer_row(r: &[Rational]) -> Vec<BigInt> {
    let lcm = r
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    r.iter()
        .map(|q| q.numer() * (&lcm / q.denom()))
        .collect()
}

/// Reduced row echelon form over the rationals; returns the nonzero rows and
/// the pivot columns.
pub fn rref(rows: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let Some(width) = rows.first().map(Vec::len) else {
        return (Vec::new(), Vec::new());
    };
    let mut m = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for c in 0..width {
                    let v = &m[i][c] - &f * &m[r][c];
                    m[i][c] = v;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

/// Basis of `{x : A x = 0}` for `A` given by rows of width `width`.
pub fn nullspace(rows: &[Vec<Rational>], width: usize) -> Vec<Vec<Rational>> {
    let (reduced, pivots) = rref(rows);
    let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); width];
            v[f] = Rational::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn qm(rows: &[&[i64]]) -> Matrix<Rational> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect(), cols)
            .unwrap()
    }

    #[test]
    fn inverse_exact() {
        let a = qm(&[&[2, 1], &[7, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(inv, qm(&[&[4, -1], &[-7, 2]]));
        assert!(a.mul(&inv).is_identity());
    }

    #[test]
    fn singular_detected() {
        let a = qm(&[&[1, 2], &[2, 4]]);
        assert!(matches!(a.inverse(), Err(Error::Singular(_))));
        let z = Matrix::<f64>::zeros(1, 1);
        assert!(z.inverse().is_err());
    }

    #[test]
    fn kron_index_order() {
        let a = qm(&[&[1, 2], &[3, 4]]);
        let b = qm(&[&[0, 5], &[6, 7]]);
        let k = a.kron(&b);
        // row (p,q) = (1,0), col (i,j) = (0,1): a[1][0]*b[0][1] = 3*5
        assert_eq!(k.get(2, 1), &q(15));
    }

    #[test]
    fn bareiss_rank_matches_rref() {
        let rows = vec![
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![Rational::from_ratio(1, 2), q(0), q(1)],
        ];
        assert_eq!(rank(&rows), 2);
        assert_eq!(rref(&rows).0.len(), 2);
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[vec![q(0), q(0)]]), 0);
    }

    #[test]
    fn nullspace_is_annihilated() {
        let rows = vec![vec![q(1), q(1), q(0)], vec![q(0), q(1), q(1)]];
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 1);
        for r in &rows {
            assert!(dot(r, &ns[0]).is_zero());
        }
    }

    #[test]
    fn expm_of_diagonal_and_nilpotent() {
        let d = Matrix::diagonal(&[1.0, -2.0]);
        let e = expm(&d);
        assert!((e.get(0, 0) - 1f64.exp()).abs() < 1e-14);
        assert!((e.get(1, 1) - (-2f64).exp()).abs() < 1e-15);
        let n = Matrix::from_rows(vec![vec![0.0, 3.0], vec![0.0, 0.0]], 2).unwrap();
        let en = expm(&n);
        assert_eq!(en.get(0, 1), &3.0);
        assert_eq!(en.get(0, 0), &1.0);
    }

    #[test]
    fn expm_rotation_large_angle() {
        let t = 7.5f64;
        let r = Matrix::from_rows(vec![vec![0.0, -t], vec![t, 0.0]], 2).unwrap();
        let e = expm(&r);
        assert!((e.get(0, 0) - t.cos()).abs() < 1e-13);
        assert!((e.get(1, 0) - t.sin()).abs() < 1e-13);
    }
}
