//! The trivial double vector space `ℝ^[n] = V₁ ⊕ V₂ ⊕ V₀`.
//!
//! An element `ξ = (x, y, z)` lies over `x ∈ V₁` for the first bundle
//! structure and over `y ∈ V₂` for the second. The first addition `+₁`
//! requires equal `x` and adds `(y, z)`; the second addition `+₂` requires
//! equal `y` and adds `(x, z)`. Scalar multiplications follow the same
//! pattern. The core is `{(0, 0, z)}`.
//!
//! Any other double vector space is handled through a chosen decomposition,
//! so these canonical coordinates are the only representation in the crate.

use std::fmt;

use crate::bilinear::BilinearMap;
use crate::error::{dim_check, Error, Result};
use crate::linalg::{vadd, vscale, vzero, Matrix};
use crate::scalar::Scalar;

/// Fiber dimension triple `(n₁, n₂, n₀)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dims {
    pub n1: usize,
    pub n2: usize,
    pub n0: usize,
}

impl Dims {
    pub const fn new(n1: usize, n2: usize, n0: usize) -> Self {
        Self { n1, n2, n0 }
    }

    pub fn total(&self) -> usize {
        self.n1 + self.n2 + self.n0
    }

    /// Dimensions of the dual over V₁: V₂ and V₀ swap roles.
    pub fn dual(&self) -> Self {
        Self::new(self.n1, self.n0, self.n2)
    }
}

impl fmt::Display for Dims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n1, self.n2, self.n0)
    }
}

impl std::str::FromStr for Dims {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(str::trim)
            .collect();
        let parse = |p: &str| {
            p.parse::<usize>()
                .map_err(|_| Error::Input(format!("bad dimension `{p}` in `{s}`")))
        };
        match parts.as_slice() {
            [a, b, c] => Ok(Dims::new(parse(a)?, parse(b)?, parse(c)?)),
            _ => Err(Error::Input(format!("expected n1,n2,n0 but got `{s}`"))),
        }
    }
}

/// Which of the two vector-bundle structures an operation uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// Fibers over V₁ (`x` fixed).
    I,
    /// Fibers over V₂ (`y` fixed).
    II,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DvsElement<S> {
    pub x: Vec<S>,
    pub y: Vec<S>,
    pub z: Vec<S>,
}

impl<S: Scalar> DvsElement<S> {
    pub fn new(x: Vec<S>, y: Vec<S>, z: Vec<S>) -> Self {
        Self { x, y, z }
    }

    pub fn zero(d: Dims) -> Self {
        Self::new(vzero(d.n1), vzero(d.n2), vzero(d.n0))
    }

    pub fn from_ints(x: &[i64], y: &[i64], z: &[i64]) -> Self {
        let conv = |v: &[i64]| v.iter().map(|&a| S::from_i64(a)).collect();
        Self::new(conv(x), conv(y), conv(z))
    }

    pub fn dims(&self) -> Dims {
        Dims::new(self.x.len(), self.y.len(), self.z.len())
    }

    pub fn core(z: Vec<S>, d: Dims) -> Self {
        Self::new(vzero(d.n1), vzero(d.n2), z)
    }

    pub fn is_core(&self) -> bool {
        self.x.iter().chain(&self.y).all(|c| c.is_zero())
    }

    /// `0_I(x) = (x, 0, 0)`.
    pub fn zero_over_first(x: Vec<S>, d: Dims) -> Self {
        Self::new(x, vzero(d.n2), vzero(d.n0))
    }

    /// `0_II(y) = (0, y, 0)`.
    pub fn zero_over_second(y: Vec<S>, d: Dims) -> Self {
        Self::new(vzero(d.n1), y, vzero(d.n0))
    }

    pub fn check_dims(&self, d: Dims) -> Result<()> {
        dim_check(self.dims() == d, || {
            format!("element has dims {}, expected {d}", self.dims())
        })
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        use crate::linalg::vapprox_eq;
        vapprox_eq(&self.x, &other.x, tol)
            && vapprox_eq(&self.y, &other.y, tol)
            && vapprox_eq(&self.z, &other.z, tol)
    }
}

/// `u +₁ v` or `u +₂ v`.
pub fn dvs_add<S: Scalar>(side: Side, u: &DvsElement<S>, v: &DvsElement<S>) -> Result<DvsElement<S>> {
    v.check_dims(u.dims())?;
    match side {
        Side::I => {
            if u.x != v.x {
                return Err(Error::BaseMismatch(format!(
                    "+₁ needs equal V₁ components, got {:?} and {:?}",
                    u.x, v.x
                )));
            }
            Ok(DvsElement::new(u.x.clone(), vadd(&u.y, &v.y), vadd(&u.z, &v.z)))
        }
        Side::II => {
            if u.y != v.y {
                return Err(Error::BaseMismatch(format!(
                    "+₂ needs equal V₂ components, got {:?} and {:?}",
                    u.y, v.y
                )));
            }
            Ok(DvsElement::new(vadd(&u.x, &v.x), u.y.clone(), vadd(&u.z, &v.z)))
        }
    }
}

/// `r ·₁ u` or `r ·₂ u`.
pub fn dvs_scale<S: Scalar>(side: Side, r: &S, u: &DvsElement<S>) -> DvsElement<S> {
    match side {
        Side::I => DvsElement::new(u.x.clone(), vscale(r, &u.y), vscale(r, &u.z)),
        Side::II => DvsElement::new(vscale(r, &u.x), u.y.clone(), vscale(r, &u.z)),
    }
}

/// A linear splitting, recorded by its offset `μ` from the canonical one:
/// `ψ(v₁, v₂) = (v₁, v₂, μ(v₁, v₂))`.
///
/// Decompositions form an affine space over `T = Hom(V₁ ⊗ V₂, V₀)`; see
/// [`splitting_translate`] and [`decomposition_transition`].
#[derive(Debug, Clone, PartialEq)]
pub struct Splitting<S> {
    pub mu: BilinearMap<S>,
}

impl<S: Scalar> Splitting<S> {
    pub fn canonical(d: Dims) -> Self {
        Self {
            mu: BilinearMap::zeros(d.n0, d.n1, d.n2),
        }
    }

    pub fn new(mu: BilinearMap<S>) -> Self {
        Self { mu }
    }

    pub fn dims(&self) -> Dims {
        let (n0, n1, n2) = self.mu.shape();
        Dims::new(n1, n2, n0)
    }
}

/// The decomposition `Ψ(v₁, v₂, v₀) = ψ(v₁, v₂) +₂ (0_II(v₂) +₁ v₀)`.
pub fn decomposition_apply<S: Scalar>(
    s: &Splitting<S>,
    v1: &[S],
    v2: &[S],
    v0: &[S],
) -> Result<DvsElement<S>> {
    let d = s.dims();
    dim_check(v1.len() == d.n1 && v2.len() == d.n2 && v0.len() == d.n0, || {
        format!(
            "decomposition inputs ({},{},{}) do not match splitting dims {d}",
            v1.len(),
            v2.len(),
            v0.len()
        )
    })?;
    let mut z = s.mu.eval(v1, v2);
    for (zk, ck) in z.iter_mut().zip(v0) {
        *zk = zk.clone() + ck.clone();
    }
    Ok(DvsElement::new(v1.to_vec(), v2.to_vec(), z))
}

/// Translates a splitting by `m ∈ T`.
pub fn splitting_translate<S: Scalar>(s: &Splitting<S>, m: &BilinearMap<S>) -> Result<Splitting<S>> {
    dim_check(s.mu.shape() == m.shape(), || {
        format!("translation shape {:?} vs splitting {:?}", m.shape(), s.mu.shape())
    })?;
    Ok(Splitting::new(s.mu.add(m)))
}

/// The unique `m` with `splitting_translate(a, m) = b`; the coordinate
/// change `Ψ_a⁻¹ ∘ Ψ_b` is `(id, id, id, m)`.
pub fn decomposition_transition<S: Scalar>(
    a: &Splitting<S>,
    b: &Splitting<S>,
) -> Result<BilinearMap<S>> {
    dim_check(a.mu.shape() == b.mu.shape(), || {
        format!("splittings of shapes {:?} and {:?}", a.mu.shape(), b.mu.shape())
    })?;
    Ok(b.mu.sub(&a.mu))
}

/// A linear section of `V → V₂`: `y ↦ (base, y, slope·y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSection<S> {
    pub base: Vec<S>,
    pub slope: Matrix<S>,
}

/// A core section: `y ↦ (0, y, value)`, with `0 ∈ V₁` of dimension `n1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoreSection<S> {
    pub value: Vec<S>,
    pub n1: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Section<S> {
    Linear(LinearSection<S>),
    Core(CoreSection<S>),
}

impl<S: Scalar> Section<S> {
    pub fn eval(&self, y: &[S]) -> Result<DvsElement<S>> {
        section_eval(self, y)
    }

    pub fn dims(&self) -> Dims {
        match self {
            Section::Linear(l) => Dims::new(l.base.len(), l.slope.cols(), l.slope.rows()),
            // n2 is not recorded by a core section; the caller's y decides it
            Section::Core(c) => Dims::new(c.n1, 0, c.value.len()),
        }
    }

    /// Whether the section lives in the double vector space of dims `d`.
    pub fn fits(&self, d: Dims) -> bool {
        match self {
            Section::Linear(_) => self.dims() == d,
            Section::Core(c) => c.n1 == d.n1 && c.value.len() == d.n0,
        }
    }
}

impl<S: Scalar> LinearSection<S> {
    /// Image in `V₁`; the projection `Γ_ℓ → V₁` of the linear-section sequence.
    pub fn base_point(&self) -> &[S] {
        &self.base
    }
}

pub fn section_eval<S: Scalar>(s: &Section<S>, y: &[S]) -> Result<DvsElement<S>> {
    match s {
        Section::Linear(l) => {
            dim_check(y.len() == l.slope.cols(), || {
                format!("section expects y of length {}, got {}", l.slope.cols(), y.len())
            })?;
            Ok(DvsElement::new(l.base.clone(), y.to_vec(), l.slope.mul_vec(y)))
        }
        Section::Core(c) => Ok(DvsElement::new(vzero(c.n1), y.to_vec(), c.value.clone())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type E = DvsElement<Rational>;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn e(x: i64, y: i64, z: i64) -> E {
        E::from_ints(&[x], &[y], &[z])
    }

    #[test]
    fn additions() {
        assert_eq!(dvs_add(Side::I, &e(1, 2, 3), &e(1, 4, 5)).unwrap(), e(1, 6, 8));
        assert_eq!(dvs_add(Side::II, &e(1, 2, 3), &e(4, 2, 5)).unwrap(), e(5, 2, 8));
        assert!(matches!(
            dvs_add(Side::I, &e(1, 2, 3), &e(9, 4, 5)),
            Err(Error::BaseMismatch(_))
        ));
        assert!(matches!(
            dvs_add(Side::II, &e(1, 2, 3), &e(9, 4, 5)),
            Err(Error::BaseMismatch(_))
        ));
        let wide = E::from_ints(&[1, 0], &[2], &[3]);
        assert!(matches!(dvs_add(Side::I, &e(1, 2, 3), &wide), Err(Error::DimMismatch(_))));
    }

    #[test]
    fn scalings() {
        assert_eq!(dvs_scale(Side::I, &q(2), &e(1, 2, 3)), e(1, 4, 6));
        assert_eq!(dvs_scale(Side::II, &q(0), &e(1, 2, 3)), e(0, 2, 0));
        assert_eq!(dvs_scale(Side::I, &q(1), &e(1, 2, 3)), e(1, 2, 3));
        let d = Dims::new(1, 1, 1);
        assert_eq!(dvs_scale(Side::I, &q(0), &e(1, 2, 3)), E::zero_over_first(vec![q(1)], d));
    }

    #[test]
    fn decomposition_examples() {
        let d = Dims::new(1, 1, 1);
        let canon = Splitting::<Rational>::canonical(d);
        assert_eq!(decomposition_apply(&canon, &[q(1)], &[q(2)], &[q(3)]).unwrap(), e(1, 2, 3));

        let s = Splitting::new(BilinearMap::scalar(q(7)));
        // ψ(2,3) +₂ (0_II(3) +₁ (0,0,5)), evaluated with the two additions
        let psi = DvsElement::new(vec![q(2)], vec![q(3)], s.mu.eval(&[q(2)], &[q(3)]));
        let inner = dvs_add(Side::I, &E::zero_over_second(vec![q(3)], d), &E::core(vec![q(5)], d)).unwrap();
        let oracle = dvs_add(Side::II, &psi, &inner).unwrap();
        assert_eq!(oracle, e(2, 3, 47));
        assert_eq!(decomposition_apply(&s, &[q(2)], &[q(3)], &[q(5)]).unwrap(), oracle);

        assert_eq!(decomposition_apply(&s, &[q(0)], &[q(0)], &[q(9)]).unwrap(), e(0, 0, 9));
        assert!(decomposition_apply(&s, &[q(0), q(1)], &[q(0)], &[q(9)]).is_err());
    }

    #[test]
    fn translate_and_transition() {
        let s = Splitting::new(BilinearMap::scalar(q(7)));
        let back = splitting_translate(&s, &BilinearMap::scalar(q(-7))).unwrap();
        assert!(back.mu.is_zero());
        let b = Splitting::new(BilinearMap::scalar(q(12)));
        assert_eq!(decomposition_transition(&s, &b).unwrap(), BilinearMap::scalar(q(5)));
        assert!(decomposition_transition(&s, &s).unwrap().is_zero());
        let m = BilinearMap::scalar(q(4));
        let t = splitting_translate(&s, &m).unwrap();
        assert_eq!(decomposition_transition(&s, &t).unwrap(), m);
    }

    #[test]
    fn section_examples() {
        let lin = Section::Linear(LinearSection {
            base: vec![q(1)],
            slope: Matrix::scalar(q(2)),
        });
        assert_eq!(lin.eval(&[q(3)]).unwrap(), e(1, 3, 6));
        assert_eq!(lin.eval(&[q(0)]).unwrap(), e(1, 0, 0));
        let core = Section::Core(CoreSection { value: vec![q(5)], n1: 1 });
        assert_eq!(core.eval(&[q(9)]).unwrap(), e(0, 9, 5));
        assert!(lin.eval(&[q(1), q(2)]).is_err());
    }

    #[test]
    fn dims_parse() {
        assert_eq!("2,3,1".parse::<Dims>().unwrap(), Dims::new(2, 3, 1));
        assert_eq!("(1, 1, 1)".parse::<Dims>().unwrap(), Dims::new(1, 1, 1));
        assert!("1,2".parse::<Dims>().is_err());
        assert_eq!(Dims::new(1, 2, 3).dual().dual(), Dims::new(1, 2, 3));
    }
}
