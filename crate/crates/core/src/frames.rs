//! Frames `Ω = (U, V, W; μ)` of a double vector space and the simply
//! transitive right action of `Aut(ℝ^[n])` on them.
//!
//! A frame acts on coordinates by `Ωξ = (Ux, Vy, Wz + μ(Ux, Vy))`, i.e. it is
//! the automorphism `(U, V, W, μ∘(U×V))`. Requiring `Ωξ = (Ωa)(a⁻¹ξ)` for all
//! `ξ` forces
//!
//! ```text
//! Ω·a = (U a₁, V a₂, W a₀, μ′),   μ′(p, q) = μ(p, q) + W μ̃(a₁⁻¹U⁻¹p, a₂⁻¹V⁻¹q)
//! ```
//!
//! for `a = (a₁, a₂, a₀, μ̃)`, which is the same as
//! `frame_to_aut(Ω·a) = frame_to_aut(Ω)·a`.

use crate::aut::{aut_apply, aut_compose, aut_inverse, DvsAut};
use crate::bilinear::BilinearMap;
use crate::dvs::{Dims, DvsElement};
use crate::error::{dim_check, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Frame<S> {
    pub u: Matrix<S>,
    pub v: Matrix<S>,
    pub w: Matrix<S>,
    pub mu: BilinearMap<S>,
}

impl<S: Scalar> Frame<S> {
    /// Rejects non-square or singular bases.
    pub fn new(u: Matrix<S>, v: Matrix<S>, w: Matrix<S>, mu: BilinearMap<S>) -> Result<Self> {
        let f = DvsAut::new(u, v, w, mu)?;
        aut_inverse(&f)?;
        Ok(Self { u: f.a1, v: f.a2, w: f.a0, mu: f.mu })
    }

    pub fn canonical(d: Dims) -> Self {
        let id = DvsAut::identity(d);
        Self { u: id.a1, v: id.a2, w: id.a0, mu: id.mu }
    }

    pub fn from_scalars(u: S, v: S, w: S, mu: S) -> Self {
        Self {
            u: Matrix::scalar(u),
            v: Matrix::scalar(v),
            w: Matrix::scalar(w),
            mu: BilinearMap::scalar(mu),
        }
    }

    pub fn dims(&self) -> Dims {
        Dims::new(self.u.rows(), self.v.rows(), self.w.rows())
    }
}

pub fn frame_eval<S: Scalar>(f: &Frame<S>, xi: &DvsElement<S>) -> Result<DvsElement<S>> {
    aut_apply(&frame_to_aut(f), xi)
}

/// `(U, V, W, μ∘(U×V))`.
pub fn frame_to_aut<S: Scalar>(f: &Frame<S>) -> DvsAut<S> {
    DvsAut {
        a1: f.u.clone(),
        a2: f.v.clone(),
        a0: f.w.clone(),
        mu: f.mu.precompose(&f.u, &f.v),
    }
}

/// Inverse of [`frame_to_aut`].
pub fn aut_to_frame<S: Scalar>(g: &DvsAut<S>) -> Result<Frame<S>> {
    let i1 = g.a1.inverse()?;
    let i2 = g.a2.inverse()?;
    g.a0.inverse()?;
    Ok(Frame {
        u: g.a1.clone(),
        v: g.a2.clone(),
        w: g.a0.clone(),
        mu: g.mu.precompose(&i1, &i2),
    })
}

pub fn frame_act<S: Scalar>(f: &Frame<S>, a: &DvsAut<S>) -> Result<Frame<S>> {
    dim_check(f.dims() == a.dims(), || {
        format!("frame of dims {} acted on by automorphism of dims {}", f.dims(), a.dims())
    })?;
    aut_inverse(a)?;
    let u2 = f.u.mul(&a.a1);
    let v2 = f.v.mul(&a.a2);
    let shift = a.mu.precompose(&u2.inverse()?, &v2.inverse()?).postcompose(&f.w);
    Ok(Frame {
        u: u2,
        v: v2,
        w: f.w.mul(&a.a0),
        mu: f.mu.add(&shift),
    })
}

/// The unique `a` with `frame_act(f, a) = g`.
pub fn frame_transition<S: Scalar>(f: &Frame<S>, g: &Frame<S>) -> Result<DvsAut<S>> {
    dim_check(f.dims() == g.dims(), || {
        format!("frames of dims {} and {}", f.dims(), g.dims())
    })?;
    aut_compose(&aut_inverse(&frame_to_aut(f))?, &frame_to_aut(g))
}
