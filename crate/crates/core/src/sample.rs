//! Random fixtures for property checks.
//!
//! Entries are small rationals `p/q` with `|p| ≤ 4`, `1 ≤ q ≤ 3`, which keeps
//! exact products of a few hundred factors cheap while still exercising
//! non-integral arithmetic. Float fixtures use the same values.

use rand::Rng;

use crate::algebra::DvsDer;
use crate::aut::DvsAut;
use crate::bilinear::BilinearMap;
use crate::dvs::{Dims, DvsElement};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

pub fn scalar<S: Scalar, R: Rng + ?Sized>(rng: &mut R) -> S {
    S::from_ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

pub fn nonzero_scalar<S: Scalar, R: Rng + ?Sized>(rng: &mut R) -> S {
    loop {
        let v: S = scalar(rng);
        if !v.is_zero() {
            return v;
        }
    }
}

pub fn vector<S: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<S> {
    (0..n).map(|_| scalar(rng)).collect()
}

pub fn matrix<S: Scalar, R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix<S> {
    Matrix::from_fn(rows, cols, |_, _| scalar(rng))
}

pub fn invertible<S: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix<S> {
    loop {
        let m = matrix(rng, n, n);
        if m.is_invertible() {
            return m;
        }
    }
}

pub fn bilinear<S: Scalar, R: Rng + ?Sized>(rng: &mut R, d: Dims) -> BilinearMap<S> {
    BilinearMap::from_fn(d.n0, d.n1, d.n2, |_, _, _| scalar(rng))
}

pub fn element<S: Scalar, R: Rng + ?Sized>(rng: &mut R, d: Dims) -> DvsElement<S> {
    DvsElement::new(vector(rng, d.n1), vector(rng, d.n2), vector(rng, d.n0))
}

pub fn aut<S: Scalar, R: Rng + ?Sized>(rng: &mut R, d: Dims) -> DvsAut<S> {
    DvsAut {
        a1: invertible(rng, d.n1),
        a2: invertible(rng, d.n2),
        a0: invertible(rng, d.n0),
        mu: bilinear(rng, d),
    }
}

/// A random element of the core subgroup `GL(V₀) ⋉ T`.
pub fn core_aut<S: Scalar, R: Rng + ?Sized>(rng: &mut R, d: Dims) -> DvsAut<S> {
    DvsAut {
        a1: Matrix::identity(d.n1),
        a2: Matrix::identity(d.n2),
        a0: invertible(rng, d.n0),
        mu: bilinear(rng, d),
    }
}

pub fn der<S: Scalar, R: Rng + ?Sized>(rng: &mut R, d: Dims) -> DvsDer<S> {
    DvsDer {
        a1: matrix(rng, d.n1, d.n1),
        a2: matrix(rng, d.n2, d.n2),
        a0: matrix(rng, d.n0, d.n0),
        alpha: bilinear(rng, d),
    }
}

/// Uniform `[-1, 1]` float derivation, for the numerical exponential checks.
pub fn float_der<R: Rng + ?Sized>(rng: &mut R, d: Dims) -> DvsDer<f64> {
    let mut u = || rng.gen_range(-1.0..=1.0);
    DvsDer {
        a1: Matrix::from_fn(d.n1, d.n1, |_, _| u()),
        a2: Matrix::from_fn(d.n2, d.n2, |_, _| u()),
        a0: Matrix::from_fn(d.n0, d.n0, |_, _| u()),
        alpha: BilinearMap::from_fn(d.n0, d.n1, d.n2, |_, _, _| u()),
    }
}
