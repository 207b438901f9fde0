//! The dual `𝕍*_I = (V*_I; V₁, V₀*)` over the first side.
//!
//! Dualizing the fibers of `V → V₁` swaps the roles of `V₂` and `V₀`: an
//! element of the dual is `(x, η₀, ζ₂)` with `x ∈ V₁`, `η₀ ∈ V₀*` on the
//! second side and `ζ₂ ∈ V₂*` in the core, so the dual dims are
//! `(n₁, n₀, n₂)`.
//!
//! `f(a) = (a₁⁻¹, a₀ᵀ, a₂ᵀ, μ*∘(a₁⁻¹×I))` is an anti-isomorphism
//! `Aut(V) → Aut(V*_I)`; `g ↦ f(g⁻¹)` is the induced homomorphism.

use crate::aut::{aut_inverse, DvsAut};
use crate::bilinear::BilinearMap;
use crate::dvs::{Dims, DvsElement};
use crate::error::{dim_check, Error, Result};
use crate::linalg::{dot, Matrix};
use crate::scalar::{abs_f64, Scalar};

pub fn dual_dims(d: Dims) -> Dims {
    d.dual()
}

/// `μ*` with `⟨μ*(v₁, η₀), v₂⟩ = ⟨η₀, μ(v₁, v₂)⟩`: swaps the output and
/// second-input indices.
pub fn mu_dual_i<S: Scalar>(mu: &BilinearMap<S>) -> BilinearMap<S> {
    mu.dual_over_first()
}

pub fn f_dual<S: Scalar>(a: &DvsAut<S>) -> Result<DvsAut<S>> {
    let i1 = a.a1.inverse()?;
    let n0 = a.a0.rows();
    Ok(DvsAut {
        mu: mu_dual_i(&a.mu).precompose(&i1, &Matrix::identity(n0)),
        a1: i1,
        a2: a.a0.transpose(),
        a0: a.a2.transpose(),
    })
}

/// Inverse of [`f_dual`]: `(b₁⁻¹, b₀ᵀ, b₂ᵀ, (ν∘(b₁⁻¹×I))*)`.
pub fn f_dual_inverse<S: Scalar>(b: &DvsAut<S>) -> Result<DvsAut<S>> {
    let i1 = b.a1.inverse()?;
    let n2 = b.a2.rows();
    Ok(DvsAut {
        mu: mu_dual_i(&b.mu.precompose(&i1, &Matrix::identity(n2))),
        a1: i1,
        a2: b.a0.transpose(),
        a0: b.a2.transpose(),
    })
}

/// `g ↦ f(g⁻¹)`.
pub fn dual_rep<S: Scalar>(g: &DvsAut<S>) -> Result<DvsAut<S>> {
    f_dual(&aut_inverse(g)?)
}

/// `⟨(x, y, z), (x, η₀, ζ₂)⟩ = ⟨η₀, z⟩ + ⟨ζ₂, y⟩`.
pub fn pair<S: Scalar>(v: &DvsElement<S>, w: &DvsElement<S>) -> Result<S> {
    dim_check(w.dims() == v.dims().dual(), || {
        format!("pairing {} with {}; expected dual dims", v.dims(), w.dims())
    })?;
    // floats carry round-off from whatever produced the two base points
    let scale = v.x.iter().map(abs_f64).fold(1.0, f64::max);
    if !v.x.iter().zip(&w.x).all(|(a, b)| a.approx_eq(b, 1e-9 * scale)) {
        return Err(Error::BaseMismatch("pairing elements over different points of V1".into()));
    }
    Ok(dot(&w.y, &v.z) + dot(&w.z, &v.y))
}
