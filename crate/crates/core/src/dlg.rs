//! Concrete double Lie groups and a sampled checker for the axioms.
//!
//! A double Lie group is a group `G` with an epimorphism
//! `φ = (φ₁, φ₂): G → G₁ × G₂` whose kernel is the image of the core `G₀`.
//! `K₁ = φ⁻¹({e} × G₂)` and `K₂ = φ⁻¹(G₁ × {e})` are normal, meet in the
//! core, and (in the connected case) `G = K₁K₂`.
//!
//! Three finite-dimensional families are provided:
//!
//! * the trivial product `GL(d₁) × GL(d₂) × GL(d₀)`;
//! * the semidirect product `(GL(d₁) × GL(d₂)) ⋉ GL(d₁d₂)` where `(g₁, g₂)`
//!   acts on the core by conjugation with `g₁ ⊗ g₂`;
//! * `Aut(ℝ^[n])`.

use std::fmt;

use rand::Rng;

use crate::aut::{self, DvsAut};
use crate::dvs::Dims;
use crate::error::{Error, Result};
pub use crate::report::PropertyOutcome;
use crate::linalg::Matrix;
use crate::sample;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DlgKind {
    TrivialProduct { d1: usize, d2: usize, d0: usize },
    /// Core `GL(d1·d2)`, acted on by conjugation with `g₁ ⊗ g₂`.
    TensorSemidirect { d1: usize, d2: usize },
    Aut(Dims),
}

/// How the projection `φ` is wired. Anything but `Canonical` is a negative
/// control: `TransposedSecond` reports `φ₂(g)ᵀ`, which is not a homomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Wiring {
    #[default]
    Canonical,
    TransposedSecond,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DlgSpec {
    pub kind: DlgKind,
    pub wiring: Wiring,
}

/// Group elements. `Product` serves both matrix families: `(g₁, g₂, g₀)`.
#[derive(Debug, Clone, PartialEq)]
pub enum DlgElement<S> {
    Product {
        g1: Matrix<S>,
        g2: Matrix<S>,
        g0: Matrix<S>,
    },
    Aut(DvsAut<S>),
}

/// Core elements: `GL(d₀)` for the matrix families, `GL(V₀) ⋉ T` (stored as
/// an automorphism with `a₁ = I`, `a₂ = I`) for `Aut`.
#[derive(Debug, Clone, PartialEq)]
pub enum CoreElement<S> {
    Matrix(Matrix<S>),
    Aut(DvsAut<S>),
}

impl fmt::Display for DlgKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DlgKind::TrivialProduct { d1, d2, d0 } => write!(f, "GL({d1})xGL({d2})xGL({d0})"),
            DlgKind::TensorSemidirect { d1, d2 } => {
                write!(f, "(GL({d1})xGL({d2}))|x GL({})", d1 * d2)
            }
            DlgKind::Aut(d) => write!(f, "Aut(R^{d})"),
        }
    }
}

impl<S: Scalar> DlgElement<S> {
    pub fn as_aut(&self) -> Option<&DvsAut<S>> {
        match self {
            DlgElement::Aut(a) => Some(a),
            DlgElement::Product { .. } => None,
        }
    }
}

impl DlgSpec {
    pub fn new(kind: DlgKind) -> Self {
        Self {
            kind,
            wiring: Wiring::Canonical,
        }
    }

    pub fn aut(d: Dims) -> Self {
        Self::new(DlgKind::Aut(d))
    }

    pub fn with_wiring(mut self, wiring: Wiring) -> Self {
        self.wiring = wiring;
        self
    }

    /// `(dim G₁-matrices, dim G₂-matrices, dim core matrices)`.
    fn block_sizes(&self) -> (usize, usize, usize) {
        match self.kind {
            DlgKind::TrivialProduct { d1, d2, d0 } => (d1, d2, d0),
            DlgKind::TensorSemidirect { d1, d2 } => (d1, d2, d1 * d2),
            DlgKind::Aut(d) => (d.n1, d.n2, d.n0),
        }
    }

    fn mismatch<S>(&self, e: &DlgElement<S>) -> Error {
        let got = match e {
            DlgElement::Product { .. } => "matrix-triple element",
            DlgElement::Aut(_) => "automorphism element",
        };
        Error::Input(format!("{got} does not belong to {}", self.kind))
    }

    pub fn check<S: Scalar>(&self, e: &DlgElement<S>) -> Result<()> {
        let (d1, d2, d0) = self.block_sizes();
        match (self.kind, e) {
            (DlgKind::Aut(d), DlgElement::Aut(a)) if a.dims() == d => Ok(()),
            (DlgKind::TrivialProduct { .. } | DlgKind::TensorSemidirect { .. }, DlgElement::Product { g1, g2, g0 })
                if g1.rows() == d1 && g2.rows() == d2 && g0.rows() == d0 =>
            {
                Ok(())
            }
            _ => Err(self.mismatch(e)),
        }
    }

    pub fn identity<S: Scalar>(&self) -> DlgElement<S> {
        let (d1, d2, d0) = self.block_sizes();
        match self.kind {
            DlgKind::Aut(d) => DlgElement::Aut(DvsAut::identity(d)),
            _ => DlgElement::Product {
                g1: Matrix::identity(d1),
                g2: Matrix::identity(d2),
                g0: Matrix::identity(d0),
            },
        }
    }

    pub fn mul<S: Scalar>(&self, a: &DlgElement<S>, b: &DlgElement<S>) -> Result<DlgElement<S>> {
        self.check(a)?;
        self.check(b)?;
        match (self.kind, a, b) {
            (DlgKind::Aut(_), DlgElement::Aut(x), DlgElement::Aut(y)) => {
                Ok(DlgElement::Aut(aut::aut_compose(x, y)?))
            }
            (
                DlgKind::TrivialProduct { .. },
                DlgElement::Product { g1, g2, g0 },
                DlgElement::Product { g1: h1, g2: h2, g0: h0 },
            ) => Ok(DlgElement::Product {
                g1: g1.mul(h1),
                g2: g2.mul(h2),
                g0: g0.mul(h0),
            }),
            (
                DlgKind::TensorSemidirect { .. },
                DlgElement::Product { g1, g2, g0 },
                DlgElement::Product { g1: h1, g2: h2, g0: h0 },
            ) => {
                let r = g1.kron(g2);
                let twisted = r.mul(h0).mul(&r.inverse()?);
                Ok(DlgElement::Product {
                    g1: g1.mul(h1),
                    g2: g2.mul(h2),
                    g0: g0.mul(&twisted),
                })
            }
            _ => Err(self.mismatch(a)),
        }
    }

    pub fn inv<S: Scalar>(&self, a: &DlgElement<S>) -> Result<DlgElement<S>> {
        self.check(a)?;
        match (self.kind, a) {
            (DlgKind::Aut(_), DlgElement::Aut(x)) => Ok(DlgElement::Aut(aut::aut_inverse(x)?)),
            (DlgKind::TrivialProduct { .. }, DlgElement::Product { g1, g2, g0 }) => {
                Ok(DlgElement::Product {
                    g1: g1.inverse()?,
                    g2: g2.inverse()?,
                    g0: g0.inverse()?,
                })
            }
            (DlgKind::TensorSemidirect { .. }, DlgElement::Product { g1, g2, g0 }) => {
                let r = g1.kron(g2);
                let r_inv = r.inverse()?;
                Ok(DlgElement::Product {
                    g1: g1.inverse()?,
                    g2: g2.inverse()?,
                    g0: r_inv.mul(&g0.inverse()?).mul(&r),
                })
            }
            _ => Err(self.mismatch(a)),
        }
    }

    /// `φ(g) = (φ₁(g), φ₂(g))`, honoring the wiring.
    pub fn project<S: Scalar>(&self, a: &DlgElement<S>) -> Result<(Matrix<S>, Matrix<S>)> {
        self.check(a)?;
        let (p1, p2) = match a {
            DlgElement::Aut(x) => aut::aut_project(x),
            DlgElement::Product { g1, g2, .. } => (g1.clone(), g2.clone()),
        };
        Ok(match self.wiring {
            Wiring::Canonical => (p1, p2),
            Wiring::TransposedSecond => (p1, p2.transpose()),
        })
    }

    /// The core inclusion `i: G₀ → G`.
    pub fn include_core<S: Scalar>(&self, c: &CoreElement<S>) -> Result<DlgElement<S>> {
        let (d1, d2, d0) = self.block_sizes();
        match (self.kind, c) {
            (DlgKind::Aut(d), CoreElement::Aut(a))
                if a.dims() == d && a.a1.is_identity() && a.a2.is_identity() =>
            {
                Ok(DlgElement::Aut(a.clone()))
            }
            (DlgKind::TrivialProduct { .. } | DlgKind::TensorSemidirect { .. }, CoreElement::Matrix(m))
                if m.rows() == d0 && m.is_square() =>
            {
                Ok(DlgElement::Product {
                    g1: Matrix::identity(d1),
                    g2: Matrix::identity(d2),
                    g0: m.clone(),
                })
            }
            _ => Err(Error::Input(format!("core element does not belong to {}", self.kind))),
        }
    }

    /// Recovers the core element when `g` lies in `i(G₀)`.
    pub fn core_part<S: Scalar>(&self, a: &DlgElement<S>) -> Option<CoreElement<S>> {
        match a {
            DlgElement::Aut(x) if x.a1.is_identity() && x.a2.is_identity() => {
                Some(CoreElement::Aut(x.clone()))
            }
            DlgElement::Product { g1, g2, g0 } if g1.is_identity() && g2.is_identity() => {
                Some(CoreElement::Matrix(g0.clone()))
            }
            _ => None,
        }
    }

    pub fn in_k1<S: Scalar>(&self, a: &DlgElement<S>) -> Result<bool> {
        Ok(self.project(a)?.0.is_identity())
    }

    pub fn in_k2<S: Scalar>(&self, a: &DlgElement<S>) -> Result<bool> {
        Ok(self.project(a)?.1.is_identity())
    }

    /// `g = k₁ · k₂` with `k₁ ∈ K₁`, `k₂ ∈ K₂`.
    pub fn factor<S: Scalar>(&self, a: &DlgElement<S>) -> Result<(DlgElement<S>, DlgElement<S>)> {
        self.check(a)?;
        match a {
            DlgElement::Aut(x) => {
                let (k1, k2) = aut::aut_factor(x)?;
                Ok((DlgElement::Aut(k1), DlgElement::Aut(k2)))
            }
            DlgElement::Product { g1, g2, g0 } => {
                let (d1, d2, d0) = self.block_sizes();
                // (I, g₂, g₀)·(g₁, I, I): the twist of the identity core is trivial
                Ok((
                    DlgElement::Product {
                        g1: Matrix::identity(d1),
                        g2: g2.clone(),
                        g0: g0.clone(),
                    },
                    DlgElement::Product {
                        g1: g1.clone(),
                        g2: Matrix::identity(d2),
                        g0: Matrix::identity(d0),
                    },
                ))
            }
        }
    }

    pub fn sample<S: Scalar, R: Rng + ?Sized>(&self, rng: &mut R) -> DlgElement<S> {
        let (d1, d2, d0) = self.block_sizes();
        match self.kind {
            DlgKind::Aut(d) => DlgElement::Aut(sample::aut(rng, d)),
            _ => DlgElement::Product {
                g1: sample::invertible(rng, d1),
                g2: sample::invertible(rng, d2),
                g0: sample::invertible(rng, d0),
            },
        }
    }

    pub fn sample_core<S: Scalar, R: Rng + ?Sized>(&self, rng: &mut R) -> CoreElement<S> {
        match self.kind {
            DlgKind::Aut(d) => CoreElement::Aut(sample::core_aut(rng, d)),
            _ => CoreElement::Matrix(sample::invertible(rng, self.block_sizes().2)),
        }
    }

    /// A random element of `K₁` (`side == 1`) or `K₂` (`side == 2`).
    pub fn sample_k<S: Scalar, R: Rng + ?Sized>(&self, rng: &mut R, side: u8) -> DlgElement<S> {
        let mut g = self.sample(rng);
        match &mut g {
            DlgElement::Aut(a) => {
                if side == 1 {
                    a.a1 = Matrix::identity(a.a1.rows());
                } else {
                    a.a2 = Matrix::identity(a.a2.rows());
                }
            }
            DlgElement::Product { g1, g2, .. } => {
                if side == 1 {
                    *g1 = Matrix::identity(g1.rows());
                } else {
                    *g2 = Matrix::identity(g2.rows());
                }
            }
        }
        g
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DlgReport {
    pub group: String,
    pub trials: usize,
    pub properties: Vec<PropertyOutcome>,
}

impl DlgReport {
    pub fn all_pass(&self) -> bool {
        self.properties.iter().all(|p| p.pass)
    }

    pub fn get(&self, name: &str) -> Option<&PropertyOutcome> {
        self.properties.iter().find(|p| p.name == name)
    }
}

/// Sampled check of the double-Lie-group axioms with exact equality per
/// sample. Samples are drawn from `rng`; the caller seeds it.
pub fn dlg_verify<S: Scalar, R: Rng + ?Sized>(
    spec: &DlgSpec,
    trials: usize,
    rng: &mut R,
) -> Result<DlgReport> {
    let mut hom = PropertyOutcome::new("phi_homomorphism");
    let mut kernel = PropertyOutcome::new("kernel_equals_core_image");
    let mut normal1 = PropertyOutcome::new("k1_normal");
    let mut normal2 = PropertyOutcome::new("k2_normal");
    let mut factor = PropertyOutcome::new("factorization_k1_k2");
    let mut diagram = PropertyOutcome::new("diagram_commutes");

    let e = spec.identity::<S>();
    let (e1, e2) = spec.project(&e)?;
    diagram.check(e1.is_identity() && e2.is_identity(), || "phi(e) != (e, e)".into());

    for t in 0..trials {
        let g = spec.sample::<S, R>(rng);
        let h = spec.sample::<S, R>(rng);
        let gh = spec.mul(&g, &h)?;
        let (g1, g2) = spec.project(&g)?;
        let (h1, h2) = spec.project(&h)?;
        let (p1, p2) = spec.project(&gh)?;
        hom.check(p1 == g1.mul(&h1) && p2 == g2.mul(&h2), || {
            format!("trial {t}: phi(gh) != phi(g)phi(h) for g={g:?}, h={h:?}")
        });

        // every included core element projects to the identity, and every
        // kernel element (conjugates of core elements) decodes back to it
        let c = spec.sample_core::<S, R>(rng);
        let ic = spec.include_core(&c)?;
        let (c1, c2) = spec.project(&ic)?;
        kernel.check(c1.is_identity() && c2.is_identity(), || {
            format!("trial {t}: core element {c:?} leaves the kernel")
        });
        let conj = spec.mul(&spec.mul(&g, &ic)?, &spec.inv(&g)?)?;
        let (k1p, k2p) = spec.project(&conj)?;
        let in_kernel = k1p.is_identity() && k2p.is_identity();
        let decoded = spec
            .core_part(&conj)
            .map(|cc| spec.include_core(&cc).map(|back| back == conj).unwrap_or(false))
            .unwrap_or(false);
        kernel.check(in_kernel == decoded, || {
            format!("trial {t}: kernel element {conj:?} is not a core image")
        });

        let k1 = spec.sample_k::<S, R>(rng, 1);
        let n1 = spec.mul(&spec.mul(&g, &k1)?, &spec.inv(&g)?)?;
        normal1.check(spec.in_k1(&n1)?, || format!("trial {t}: g k1 g^-1 = {n1:?} not in K1"));
        let k2 = spec.sample_k::<S, R>(rng, 2);
        let n2 = spec.mul(&spec.mul(&g, &k2)?, &spec.inv(&g)?)?;
        normal2.check(spec.in_k2(&n2)?, || format!("trial {t}: g k2 g^-1 = {n2:?} not in K2"));

        let (f1, f2) = spec.factor(&g)?;
        let ok = spec.in_k1(&f1)? && spec.in_k2(&f2)? && spec.mul(&f1, &f2)? == g;
        factor.check(ok, || format!("trial {t}: factorization of {g:?} failed"));

        // K₁ ∩ K₂ = i(G₀), and the inverse is compatible with φ
        let both = spec.in_k1(&g)? && spec.in_k2(&g)?;
        diagram.check(both == spec.core_part(&g).is_some(), || {
            format!("trial {t}: K1 ∩ K2 membership disagrees with core image for {g:?}")
        });
        let (q1, q2) = spec.project(&spec.inv(&g)?)?;
        diagram.check(q1.mul(&g1).is_identity() && q2.mul(&g2).is_identity(), || {
            format!("trial {t}: phi(g^-1) != phi(g)^-1")
        });
    }

    Ok(DlgReport {
        group: spec.kind.to_string(),
        trials,
        properties: vec![hom, kernel, normal1, normal2, factor, diagram],
    })
}
