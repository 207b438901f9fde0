//! Bilinear maps `μ: V₁ × V₂ → V₀`, stored with index order `[k][i][j]`
//! (core output, V₁ input, V₂ input).

use crate::error::{dim_check, Result};
use crate::linalg::{vzero, Matrix};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct BilinearMap<S> {
    n0: usize,
    n1: usize,
    n2: usize,
    coeffs: Vec<S>,
}

impl<S: Scalar> BilinearMap<S> {
    pub fn zeros(n0: usize, n1: usize, n2: usize) -> Self {
        Self {
            n0,
            n1,
            n2,
            coeffs: vec![S::zero(); n0 * n1 * n2],
        }
    }

    pub fn from_fn(
        n0: usize,
        n1: usize,
        n2: usize,
        mut f: impl FnMut(usize, usize, usize) -> S,
    ) -> Self {
        let mut coeffs = Vec::with_capacity(n0 * n1 * n2);
        for k in 0..n0 {
            for i in 0..n1 {
                for j in 0..n2 {
                    coeffs.push(f(k, i, j));
                }
            }
        }
        Self { n0, n1, n2, coeffs }
    }

    /// From nested `[k][i][j]` arrays with the given shape.
    pub fn from_nested(n0: usize, n1: usize, n2: usize, nested: Vec<Vec<Vec<S>>>) -> Result<Self> {
        dim_check(nested.len() == n0, || {
            format!("bilinear map has {} core slices, expected {n0}", nested.len())
        })?;
        let mut coeffs = Vec::with_capacity(n0 * n1 * n2);
        for slice in nested {
            dim_check(slice.len() == n1, || {
                format!("bilinear slice has {} rows, expected {n1}", slice.len())
            })?;
            for row in slice {
                dim_check(row.len() == n2, || {
                    format!("bilinear row has {} entries, expected {n2}", row.len())
                })?;
                coeffs.extend(row);
            }
        }
        Ok(Self { n0, n1, n2, coeffs })
    }

    /// The 1×1×1 map with the single coefficient `c`.
    pub fn scalar(c: S) -> Self {
        Self {
            n0: 1,
            n1: 1,
            n2: 1,
            coeffs: vec![c],
        }
    }

    /// `(n0, n1, n2)`.
    pub fn shape(&self) -> (usize, usize, usize) {
        (self.n0, self.n1, self.n2)
    }

    pub fn get(&self, k: usize, i: usize, j: usize) -> &S {
        &self.coeffs[(k * self.n1 + i) * self.n2 + j]
    }

    pub fn set(&mut self, k: usize, i: usize, j: usize, v: S) {
        let idx = (k * self.n1 + i) * self.n2 + j;
        self.coeffs[idx] = v;
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<S>>> {
        (0..self.n0)
            .map(|k| {
                (0..self.n1)
                    .map(|i| (0..self.n2).map(|j| self.get(k, i, j).clone()).collect())
                    .collect()
            })
            .collect()
    }

    pub fn entries(&self) -> &[S] {
        &self.coeffs
    }

    pub fn eval(&self, x: &[S], y: &[S]) -> Vec<S> {
        assert_eq!((x.len(), y.len()), (self.n1, self.n2), "bilinear argument shape");
        let mut out: Vec<S> = vzero(self.n0);
        for (k, o) in out.iter_mut().enumerate() {
            for (i, xi) in x.iter().enumerate() {
                if xi.is_zero() {
                    continue;
                }
                for (j, yj) in y.iter().enumerate() {
                    *o = o.clone() + self.get(k, i, j).clone() * xi.clone() * yj.clone();
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        assert_eq!(self.shape(), other.shape(), "bilinear shape");
        Self {
            n0: self.n0,
            n1: self.n1,
            n2: self.n2,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, r: &S) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| r.clone() * c.clone()).collect(),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    /// `μ ∘ (b₁ × b₂)`, i.e. `(x, y) ↦ μ(b₁x, b₂y)`.
    pub fn precompose(&self, b1: &Matrix<S>, b2: &Matrix<S>) -> Self {
        assert_eq!((b1.rows(), b2.rows()), (self.n1, self.n2), "precompose shape");
        let (m1, m2) = (b1.cols(), b2.cols());
        // contract the V₂ slot first, then V₁
        let mut half = vec![S::zero(); self.n0 * self.n1 * m2];
        for k in 0..self.n0 {
            for p in 0..self.n1 {
                for q in 0..self.n2 {
                    let c = self.get(k, p, q);
                    if c.is_zero() {
                        continue;
                    }
                    for j in 0..m2 {
                        let idx = (k * self.n1 + p) * m2 + j;
                        half[idx] = half[idx].clone() + c.clone() * b2.get(q, j).clone();
                    }
                }
            }
        }
        Self::from_fn(self.n0, m1, m2, |k, i, j| {
            (0..self.n1).fold(S::zero(), |acc, p| {
                acc + half[(k * self.n1 + p) * m2 + j].clone() * b1.get(p, i).clone()
            })
        })
    }

    /// `a₀ ∘ μ`.
    pub fn postcompose(&self, a0: &Matrix<S>) -> Self {
        assert_eq!(a0.cols(), self.n0, "postcompose shape");
        Self::from_fn(a0.rows(), self.n1, self.n2, |k, i, j| {
            (0..self.n0).fold(S::zero(), |acc, l| {
                acc + a0.get(k, l).clone() * self.get(l, i, j).clone()
            })
        })
    }

    /// The map viewed as a linear map `V₁ ⊗ V₂ → V₀`: an `n0 × (n1·n2)`
    /// matrix whose column `i·n2 + j` matches [`Matrix::kron`] ordering.
    pub fn flatten(&self) -> Matrix<S> {
        Matrix::from_fn(self.n0, self.n1 * self.n2, |k, c| {
            self.get(k, c / self.n2, c % self.n2).clone()
        })
    }

    pub fn unflatten(m: &Matrix<S>, n1: usize, n2: usize) -> Self {
        assert_eq!(m.cols(), n1 * n2, "unflatten shape");
        Self::from_fn(m.rows(), n1, n2, |k, i, j| m.get(k, i * n2 + j).clone())
    }

    /// Swaps the V₂ input index with the core output index:
    /// `⟨μ*(x, η), y⟩ = ⟨η, μ(x, y)⟩`. The result has shape `(n2, n1, n0)`.
    pub fn dual_over_first(&self) -> Self {
        Self::from_fn(self.n2, self.n1, self.n0, |j, i, k| self.get(k, i, j).clone())
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.shape() == other.shape()
            && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a.approx_eq(b, tol))
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> BilinearMap<T> {
        BilinearMap {
            n0: self.n0,
            n1: self.n1,
            n2: self.n2,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}
