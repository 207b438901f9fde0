//! The Lie algebra `aut(ℝ^[n])` of quadruples `(A₁, A₂, A₀, α)`.
//!
//! It is the semidirect product of `gl(V₁) ⊕ gl(V₂) ⊕ gl(V₀)` with
//! `T = Hom(V₁ ⊗ V₂, V₀)` under
//! `(A₁,A₂,A₀) ▷ ν = A₀∘ν − ν∘(A₁×I) − ν∘(I×A₂)`.
//!
//! # Exponential
//!
//! `Aut(ℝ^[n])` embeds in `GL(n₁) × GL(n₂) × GL(n₁n₂ + n₀)` by
//! `a ↦ (a₁, a₂, [[a₁⊗a₂, 0], [μ̂, a₀]])`, where `μ̂` is `μ` flattened to a
//! map `V₁⊗V₂ → V₀`; the third block reproduces the product rule exactly.
//! The derivative of the embedding sends `X` to
//! `(A₁, A₂, [[A₁⊗I + I⊗A₂, 0], [α̂, A₀]])`.
//!
//! [`der_exp`] scales `X` by `2⁻ᵏ`, sums the Taylor series of that
//! generator (which yields all four blocks of `exp(2⁻ᵏX)` to roundoff), and
//! squares `k` times with [`aut_compose`]. The result is certified by
//! recomputing with two extra halvings and comparing.

use crate::aut::{aut_compose, DvsAut};
use crate::bilinear::BilinearMap;
use crate::dvs::Dims;
use crate::error::{dim_check, Error, Result};
use crate::linalg::{exp_taylor, expm, Matrix};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct DvsDer<S> {
    pub a1: Matrix<S>,
    pub a2: Matrix<S>,
    pub a0: Matrix<S>,
    pub alpha: BilinearMap<S>,
}

impl<S: Scalar> DvsDer<S> {
    pub fn new(a1: Matrix<S>, a2: Matrix<S>, a0: Matrix<S>, alpha: BilinearMap<S>) -> Result<Self> {
        dim_check(a1.is_square() && a2.is_square() && a0.is_square(), || {
            "derivation blocks must be square".into()
        })?;
        dim_check(alpha.shape() == (a0.rows(), a1.rows(), a2.rows()), || {
            format!("alpha has shape {:?}", alpha.shape())
        })?;
        Ok(Self { a1, a2, a0, alpha })
    }

    pub fn zero(d: Dims) -> Self {
        Self {
            a1: Matrix::zeros(d.n1, d.n1),
            a2: Matrix::zeros(d.n2, d.n2),
            a0: Matrix::zeros(d.n0, d.n0),
            alpha: BilinearMap::zeros(d.n0, d.n1, d.n2),
        }
    }

    pub fn from_scalars(a1: S, a2: S, a0: S, alpha: S) -> Self {
        Self {
            a1: Matrix::scalar(a1),
            a2: Matrix::scalar(a2),
            a0: Matrix::scalar(a0),
            alpha: BilinearMap::scalar(alpha),
        }
    }

    pub fn dims(&self) -> Dims {
        Dims::new(self.a1.rows(), self.a2.rows(), self.a0.rows())
    }

    pub fn is_zero(&self) -> bool {
        self.a1.is_zero() && self.a2.is_zero() && self.a0.is_zero() && self.alpha.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            a1: self.a1.add(&o.a1),
            a2: self.a2.add(&o.a2),
            a0: self.a0.add(&o.a0),
            alpha: self.alpha.add(&o.alpha),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-S::one()))
    }

    pub fn scale(&self, r: &S) -> Self {
        Self {
            a1: self.a1.scale(r),
            a2: self.a2.scale(r),
            a0: self.a0.scale(r),
            alpha: self.alpha.scale(r),
        }
    }

    /// Blockwise max-abs norm.
    pub fn max_abs(&self) -> f64 {
        [self.a1.max_abs(), self.a2.max_abs(), self.a0.max_abs(), self.alpha.max_abs()]
            .into_iter()
            .fold(0.0, f64::max)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> DvsDer<T> {
        DvsDer {
            a1: self.a1.map(f),
            a2: self.a2.map(f),
            a0: self.a0.map(f),
            alpha: self.alpha.map(f),
        }
    }

    pub fn to_f64(&self) -> DvsDer<f64> {
        self.map(|v| v.to_f64())
    }

    /// Coordinates in the order `A₁, A₂, A₀, α` (each row-major).
    pub fn to_coords(&self) -> Vec<S> {
        self.a1
            .entries()
            .iter()
            .chain(self.a2.entries())
            .chain(self.a0.entries())
            .chain(self.alpha.entries())
            .cloned()
            .collect()
    }

    pub fn from_coords(d: Dims, c: &[S]) -> Result<Self> {
        let (s1, s2, s0) = (d.n1 * d.n1, d.n2 * d.n2, d.n0 * d.n0);
        dim_check(c.len() == der_dim(d), || {
            format!("{} coordinates for aut of dims {d}", c.len())
        })?;
        let mut off = 0;
        let mut take = |n: usize| {
            let s = &c[off..off + n];
            off += n;
            s
        };
        let b1 = take(s1);
        let a1 = Matrix::from_fn(d.n1, d.n1, |i, j| b1[i * d.n1 + j].clone());
        let b2 = take(s2);
        let a2 = Matrix::from_fn(d.n2, d.n2, |i, j| b2[i * d.n2 + j].clone());
        let b0 = take(s0);
        let a0 = Matrix::from_fn(d.n0, d.n0, |i, j| b0[i * d.n0 + j].clone());
        let bt = take(d.n0 * d.n1 * d.n2);
        let alpha = BilinearMap::from_fn(d.n0, d.n1, d.n2, |k, i, j| {
            bt[(k * d.n1 + i) * d.n2 + j].clone()
        });
        Ok(Self { a1, a2, a0, alpha })
    }
}

/// `dim aut(ℝ^[n]) = n₁² + n₂² + n₀² + n₀n₁n₂`.
pub fn der_dim(d: Dims) -> usize {
    d.n1 * d.n1 + d.n2 * d.n2 + d.n0 * d.n0 + d.n0 * d.n1 * d.n2
}

/// `(A₁,A₂,A₀) ▷ ν = A₀∘ν − ν∘(A₁×I) − ν∘(I×A₂)`.
pub fn triangle_action<S: Scalar>(
    a1: &Matrix<S>,
    a2: &Matrix<S>,
    a0: &Matrix<S>,
    nu: &BilinearMap<S>,
) -> Result<BilinearMap<S>> {
    let (n0, n1, n2) = nu.shape();
    dim_check(
        (a1.rows(), a1.cols(), a2.rows(), a2.cols(), a0.rows(), a0.cols())
            == (n1, n1, n2, n2, n0, n0),
        || format!("triangle action blocks do not match tensor shape {:?}", nu.shape()),
    )?;
    let i1 = Matrix::identity(n1);
    let i2 = Matrix::identity(n2);
    Ok(nu
        .postcompose(a0)
        .sub(&nu.precompose(a1, &i2))
        .sub(&nu.precompose(&i1, a2)))
}

/// `[X, Y] = ([A₁,B₁], [A₂,B₂], [A₀,B₀], (A)▷ν − (B)▷μ)`.
pub fn der_bracket<S: Scalar>(x: &DvsDer<S>, y: &DvsDer<S>) -> Result<DvsDer<S>> {
    dim_check(x.dims() == y.dims(), || {
        format!("bracket of derivations with dims {} and {}", x.dims(), y.dims())
    })?;
    let upsilon = triangle_action(&x.a1, &x.a2, &x.a0, &y.alpha)?
        .sub(&triangle_action(&y.a1, &y.a2, &y.a0, &x.alpha)?);
    Ok(DvsDer {
        a1: x.a1.commutator(&y.a1),
        a2: x.a2.commutator(&y.a2),
        a0: x.a0.commutator(&y.a0),
        alpha: upsilon,
    })
}

/// The generator `[[A₁⊗I + I⊗A₂, 0], [α̂, A₀]]` of the embedded flow.
fn embedded_generator(x: &DvsDer<f64>) -> Matrix<f64> {
    let d = x.dims();
    let m = d.n1 * d.n2;
    let k = x.a1.kron(&Matrix::identity(d.n2)).add(&Matrix::identity(d.n1).kron(&x.a2));
    let flat = x.alpha.flatten();
    Matrix::from_fn(m + d.n0, m + d.n0, |r, c| match (r < m, c < m) {
        (true, true) => *k.get(r, c),
        (false, true) => *flat.get(r - m, c),
        (false, false) => *x.a0.get(r - m, c - m),
        (true, false) => 0.0,
    })
}

/// `exp` of a small derivation, read off the Taylor series of the embedding.
fn exp_base_step(x: &DvsDer<f64>) -> DvsAut<f64> {
    let d = x.dims();
    let m = d.n1 * d.n2;
    let big = exp_taylor(&embedded_generator(x));
    let mu_flat = big.block(m, m + d.n0, 0, m);
    DvsAut {
        a1: exp_taylor(&x.a1),
        a2: exp_taylor(&x.a2),
        a0: big.block(m, m + d.n0, m, m + d.n0),
        mu: BilinearMap::unflatten(&mu_flat, d.n1, d.n2),
    }
}

fn exp_with_halvings(x: &DvsDer<f64>, halvings: u32) -> Result<DvsAut<f64>> {
    let h = 0.5f64.powi(halvings as i32);
    let mut g = exp_base_step(&x.scale(&h));
    for _ in 0..halvings {
        g = aut_compose(&g, &g)?;
    }
    Ok(g)
}

/// Number of halvings bringing the embedded generator's norm to ≤ 1/4.
fn halvings_for(x: &DvsDer<f64>) -> u32 {
    let gen = embedded_generator(x);
    let norm = (0..gen.rows())
        .map(|i| gen.row(i).iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0f64, f64::max)
        .max(x.a1.max_abs() * x.a1.rows() as f64)
        .max(x.a2.max_abs() * x.a2.rows() as f64);
    let mut k = 0;
    let mut n = norm;
    while n > 0.25 {
        n /= 2.0;
        k += 1;
    }
    k
}

/// `exp: aut(ℝ^[n]) → Aut(ℝ^[n])`.
///
/// Fails with [`Error::ToleranceNotMet`] when two refinements of the scaling
/// disagree by more than `tol` (relative to the result's size), which only
/// happens for very large arguments.
pub fn der_exp(x: &DvsDer<f64>, tol: f64) -> Result<DvsAut<f64>> {
    if !(tol > 0.0) {
        return Err(Error::Input(format!("tolerance must be positive, got {tol}")));
    }
    let k = halvings_for(x);
    let coarse = exp_with_halvings(x, k)?;
    let fine = exp_with_halvings(x, k + 2)?;
    let scale = 1.0
        + [coarse.a1.max_abs(), coarse.a2.max_abs(), coarse.a0.max_abs(), coarse.mu.max_abs()]
            .into_iter()
            .fold(0.0, f64::max);
    let gap = coarse.distance(&fine);
    if !gap.is_finite() || gap > tol * scale {
        return Err(Error::ToleranceNotMet(format!(
            "refinements differ by {gap:.3e} (relative tolerance {tol:.1e})"
        )));
    }
    Ok(fine)
}

/// Plain matrix exponential of each block, for the cases `α = 0`; used as
/// an independent check of [`der_exp`].
pub fn exp_blocks(x: &DvsDer<f64>) -> (Matrix<f64>, Matrix<f64>, Matrix<f64>) {
    (expm(&x.a1), expm(&x.a2), expm(&x.a0))
}

/// Second-difference estimate of the bracket from the group commutator:
/// `(C(h,h) − e)/h²` with `C(t,s) = exp(tX)exp(sY)exp(−tX)exp(−sY)`.
/// The error is `O(h)` plus roundoff of order `ε/h²`.
pub fn commutator_oracle(x: &DvsDer<f64>, y: &DvsDer<f64>, h: f64) -> Result<DvsDer<f64>> {
    dim_check(x.dims() == y.dims(), || "oracle derivations differ in dims".into())?;
    if !(h > 0.0) {
        return Err(Error::Input(format!("step must be positive, got {h}")));
    }
    let tol = 1e-12;
    let ex = der_exp(&x.scale(&h), tol)?;
    let ey = der_exp(&y.scale(&h), tol)?;
    let exi = der_exp(&x.scale(&-h), tol)?;
    let eyi = der_exp(&y.scale(&-h), tol)?;
    let c = aut_compose(&aut_compose(&aut_compose(&ex, &ey)?, &exi)?, &eyi)?;
    let d = x.dims();
    let inv_h2 = 1.0 / (h * h);
    Ok(DvsDer {
        a1: c.a1.sub(&Matrix::identity(d.n1)).scale(&inv_h2),
        a2: c.a2.sub(&Matrix::identity(d.n2)).scale(&inv_h2),
        a0: c.a0.sub(&Matrix::identity(d.n0)).scale(&inv_h2),
        alpha: c.mu.scale(&inv_h2),
    })
}
