//! The automorphism group `Aut(ℝ^[n])`.
//!
//! An automorphism is a quadruple `(a₁, a₂, a₀, μ)` acting by
//! `(x, y, z) ↦ (a₁x, a₂y, a₀z + μ(x, y))`. The action is not linear on the
//! total space, so there is no single-matrix form; the quadruple is the
//! coordinate system. The product is
//! `(a₁,a₂,a₀,μ)·(b₁,b₂,b₀,ν) = (a₁b₁, a₂b₂, a₀b₀, μ∘(b₁×b₂) + a₀∘ν)`.

use crate::bilinear::BilinearMap;
use crate::dvs::{Dims, DvsElement};
use crate::error::{dim_check, Error, Result};
use crate::linalg::{vadd, Matrix};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct DvsAut<S> {
    pub a1: Matrix<S>,
    pub a2: Matrix<S>,
    pub a0: Matrix<S>,
    pub mu: BilinearMap<S>,
}

/// Membership of an automorphism in the distinguished subgroups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AutClass {
    /// `a₁ = I` only.
    InK1,
    /// `a₂ = I` only.
    InK2,
    /// `a₁ = I` and `a₂ = I`: the core `GL(V₀) ⋉ T = K₁ ∩ K₂`.
    InG0,
    General,
}

impl<S: Scalar> DvsAut<S> {
    /// Checks block shapes against each other. Invertibility is not checked
    /// here; [`aut_inverse`] reports singular blocks.
    pub fn new(a1: Matrix<S>, a2: Matrix<S>, a0: Matrix<S>, mu: BilinearMap<S>) -> Result<Self> {
        dim_check(a1.is_square() && a2.is_square() && a0.is_square(), || {
            "automorphism blocks must be square".into()
        })?;
        dim_check(mu.shape() == (a0.rows(), a1.rows(), a2.rows()), || {
            format!(
                "mu has shape {:?}, expected {:?}",
                mu.shape(),
                (a0.rows(), a1.rows(), a2.rows())
            )
        })?;
        Ok(Self { a1, a2, a0, mu })
    }

    pub fn identity(d: Dims) -> Self {
        Self {
            a1: Matrix::identity(d.n1),
            a2: Matrix::identity(d.n2),
            a0: Matrix::identity(d.n0),
            mu: BilinearMap::zeros(d.n0, d.n1, d.n2),
        }
    }

    /// The 1×1×1 automorphism `(a₁, a₂, a₀, μ)` from integers.
    pub fn from_scalars(a1: S, a2: S, a0: S, mu: S) -> Self {
        Self {
            a1: Matrix::scalar(a1),
            a2: Matrix::scalar(a2),
            a0: Matrix::scalar(a0),
            mu: BilinearMap::scalar(mu),
        }
    }

    pub fn dims(&self) -> Dims {
        Dims::new(self.a1.rows(), self.a2.rows(), self.a0.rows())
    }

    pub fn is_identity(&self) -> bool {
        self.a1.is_identity() && self.a2.is_identity() && self.a0.is_identity() && self.mu.is_zero()
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.a1.approx_eq(&other.a1, tol)
            && self.a2.approx_eq(&other.a2, tol)
            && self.a0.approx_eq(&other.a0, tol)
            && self.mu.approx_eq(&other.mu, tol)
    }

    /// Blockwise max-abs distance.
    pub fn distance(&self, other: &Self) -> f64 {
        [
            self.a1.sub(&other.a1).max_abs(),
            self.a2.sub(&other.a2).max_abs(),
            self.a0.sub(&other.a0).max_abs(),
            self.mu.sub(&other.mu).max_abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> DvsAut<T> {
        DvsAut {
            a1: self.a1.map(f),
            a2: self.a2.map(f),
            a0: self.a0.map(f),
            mu: self.mu.map(f),
        }
    }

    pub fn to_f64(&self) -> DvsAut<f64> {
        self.map(|v| v.to_f64())
    }

    pub fn apply(&self, v: &DvsElement<S>) -> Result<DvsElement<S>> {
        aut_apply(self, v)
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        aut_compose(self, other)
    }

    pub fn inverse(&self) -> Result<Self> {
        aut_inverse(self)
    }
}

pub fn aut_apply<S: Scalar>(a: &DvsAut<S>, v: &DvsElement<S>) -> Result<DvsElement<S>> {
    v.check_dims(a.dims())?;
    let z = vadd(&a.a0.mul_vec(&v.z), &a.mu.eval(&v.x, &v.y));
    Ok(DvsElement::new(a.a1.mul_vec(&v.x), a.a2.mul_vec(&v.y), z))
}

/// `a · b`, acting as "apply `b`, then `a`".
pub fn aut_compose<S: Scalar>(a: &DvsAut<S>, b: &DvsAut<S>) -> Result<DvsAut<S>> {
    dim_check(a.dims() == b.dims(), || {
        format!("cannot compose automorphisms of dims {} and {}", a.dims(), b.dims())
    })?;
    Ok(DvsAut {
        a1: a.a1.mul(&b.a1),
        a2: a.a2.mul(&b.a2),
        a0: a.a0.mul(&b.a0),
        mu: a.mu.precompose(&b.a1, &b.a2).add(&b.mu.postcompose(&a.a0)),
    })
}

/// `(a₁⁻¹, a₂⁻¹, a₀⁻¹, −a₀⁻¹∘μ∘(a₁⁻¹×a₂⁻¹))`.
pub fn aut_inverse<S: Scalar>(a: &DvsAut<S>) -> Result<DvsAut<S>> {
    let i1 = a.a1.inverse().map_err(|e| singular("a1", e))?;
    let i2 = a.a2.inverse().map_err(|e| singular("a2", e))?;
    let i0 = a.a0.inverse().map_err(|e| singular("a0", e))?;
    let mu = a.mu.precompose(&i1, &i2).postcompose(&i0).neg();
    Ok(DvsAut {
        a1: i1,
        a2: i2,
        a0: i0,
        mu,
    })
}

fn singular(block: &str, e: Error) -> Error {
    match e {
        Error::Singular(msg) => Error::Singular(format!("block {block}: {msg}")),
        other => other,
    }
}

/// `φ(a) = (σ₁∘a∘0_I, σ₂∘a∘0_II) = (a₁, a₂)`.
pub fn aut_project<S: Scalar>(a: &DvsAut<S>) -> (Matrix<S>, Matrix<S>) {
    (a.a1.clone(), a.a2.clone())
}

pub fn aut_classify<S: Scalar>(a: &DvsAut<S>) -> AutClass {
    match (a.a1.is_identity(), a.a2.is_identity()) {
        (true, true) => AutClass::InG0,
        (true, false) => AutClass::InK1,
        (false, true) => AutClass::InK2,
        (false, false) => AutClass::General,
    }
}

pub fn in_k1<S: Scalar>(a: &DvsAut<S>) -> bool {
    a.a1.is_identity()
}

pub fn in_k2<S: Scalar>(a: &DvsAut<S>) -> bool {
    a.a2.is_identity()
}

/// Writes `a = k₁ · k₂` with `k₁ ∈ K₁` and `k₂ ∈ K₂`:
/// `k₁ = (I, a₂, a₀, μ∘(a₁⁻¹×I))`, `k₂ = (a₁, I, I, 0)`.
pub fn aut_factor<S: Scalar>(a: &DvsAut<S>) -> Result<(DvsAut<S>, DvsAut<S>)> {
    let d = a.dims();
    let i1 = a.a1.inverse().map_err(|e| singular("a1", e))?;
    let k1 = DvsAut {
        a1: Matrix::identity(d.n1),
        a2: a.a2.clone(),
        a0: a.a0.clone(),
        mu: a.mu.precompose(&i1, &Matrix::identity(d.n2)),
    };
    let k2 = DvsAut {
        a1: a.a1.clone(),
        a2: Matrix::identity(d.n2),
        a0: Matrix::identity(d.n0),
        mu: BilinearMap::zeros(d.n0, d.n1, d.n2),
    };
    Ok((k1, k2))
}

/// Reconstructs the quadruple of a map known only through its action, by
/// evaluating on `(eᵢ,0,0)`, `(0,fⱼ,0)`, `(0,0,l_k)` and `(eᵢ,fⱼ,0)`.
///
/// Test oracles use this to fit a quadruple to a composite of actions
/// without going through the product formula.
pub fn fit_from_action<S: Scalar>(
    d: Dims,
    act: impl Fn(&DvsElement<S>) -> DvsElement<S>,
) -> DvsAut<S> {
    use crate::linalg::{unit, vsub, vzero};
    let (n1, n2, n0) = (d.n1, d.n2, d.n0);
    let col1: Vec<Vec<S>> = (0..n1)
        .map(|i| act(&DvsElement::new(unit(n1, i), vzero(n2), vzero(n0))).x)
        .collect();
    let col2: Vec<Vec<S>> = (0..n2)
        .map(|j| act(&DvsElement::new(vzero(n1), unit(n2, j), vzero(n0))).y)
        .collect();
    let col0: Vec<Vec<S>> = (0..n0)
        .map(|k| act(&DvsElement::new(vzero(n1), vzero(n2), unit(n0, k))).z)
        .collect();
    let base = act(&DvsElement::zero(d)).z;
    let mut mu = BilinearMap::zeros(n0, n1, n2);
    for i in 0..n1 {
        for j in 0..n2 {
            let z = vsub(&act(&DvsElement::new(unit(n1, i), unit(n2, j), vzero(n0))).z, &base);
            for (k, zk) in z.into_iter().enumerate() {
                mu.set(k, i, j, zk);
            }
        }
    }
    DvsAut {
        a1: Matrix::from_fn(n1, n1, |r, c| col1[c][r].clone()),
        a2: Matrix::from_fn(n2, n2, |r, c| col2[c][r].clone()),
        a0: Matrix::from_fn(n0, n0, |r, c| col0[c][r].clone()),
        mu,
    }
}
