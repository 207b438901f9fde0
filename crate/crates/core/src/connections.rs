//! Connection conditions at the Lie-algebra level.
//!
//! An ambient algebra has coordinates ordered `[𝔤₁ | 𝔤₂ | 𝔤₀]` with the
//! quotient onto `𝔤₁ ⊕ 𝔤₂` given by the first `side1 + side2` coordinates.
//! `𝔨₁ = ker φ₁` is spanned by everything past `𝔤₁`; `𝔨₂ = ker φ₂` by `𝔤₁`
//! together with the core.

use num_traits::{One, Zero};

use crate::algebra::{der_bracket, der_dim, DvsDer};
use crate::dla::{DoubleLieAlgebra, LieAlgebraSpec};
use crate::dvs::Dims;
use crate::error::{dim_check, Error, Result};
use crate::linalg::{rank, rref, unit, Matrix};
use crate::report::CheckReport;
use crate::scalar::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct AmbientAlgebra {
    pub lie: LieAlgebraSpec,
    pub side1: usize,
    pub side2: usize,
    /// Coordinate names used in counterexamples.
    pub labels: Vec<String>,
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{}", i + 1)).collect()
}

impl AmbientAlgebra {
    pub fn new(lie: LieAlgebraSpec, side1: usize, side2: usize) -> Result<Self> {
        if side1 + side2 > lie.dim {
            return Err(Error::Input(format!("sides {side1}+{side2} exceed dimension {}", lie.dim)));
        }
        let labels = default_labels(lie.dim);
        Ok(Self { lie, side1, side2, labels })
    }

    /// `(ℝ^{n₁+n₂+n₀}; ℝ^{n₁}, ℝ^{n₂})` with all brackets zero: the Lie algebra
    /// of a trivial product of vector groups.
    pub fn abelian(n1: usize, n2: usize, n0: usize) -> Self {
        Self::new(LieAlgebraSpec::abelian(n1 + n2 + n0), n1, n2).expect("sides fit")
    }

    pub fn from_double(d: &DoubleLieAlgebra) -> Self {
        Self::new(d.lie.clone(), d.n1, d.n2).expect("sides fit")
    }

    /// `aut(ℝ^[n])` in the coordinates `A₁, A₂, A₀, α` (row-major each).
    pub fn aut(d: Dims) -> Self {
        let n = der_dim(d);
        let basis: Vec<DvsDer<Rational>> =
            (0..n).map(|i| DvsDer::from_coords(d, &unit(n, i)).expect("basis length")).collect();
        let brackets: Vec<Vec<Vec<Rational>>> = basis
            .iter()
            .map(|x| basis.iter().map(|y| der_bracket(x, y).expect("same dims").to_coords()).collect())
            .collect();
        let lie = LieAlgebraSpec::from_fn(n, |i, j, k| brackets[i][j][k].clone());
        let mut labels = Vec::with_capacity(n);
        for (name, r, c) in [("A1", d.n1, d.n1), ("A2", d.n2, d.n2), ("A0", d.n0, d.n0)] {
            for i in 0..r {
                for j in 0..c {
                    labels.push(format!("{name}[{i}][{j}]"));
                }
            }
        }
        for k in 0..d.n0 {
            for i in 0..d.n1 {
                for j in 0..d.n2 {
                    labels.push(format!("alpha[{k}][{i}][{j}]"));
                }
            }
        }
        Self { lie, side1: d.n1 * d.n1, side2: d.n2 * d.n2, labels }
    }

    pub fn dim(&self) -> usize {
        self.lie.dim
    }

    pub fn quotient_dim(&self) -> usize {
        self.side1 + self.side2
    }

    /// `𝔨₁ = ker φ₁`.
    pub fn k1(&self) -> SubspaceSpec {
        SubspaceSpec::coordinate(self.dim(), self.side1..self.dim())
    }

    /// `𝔨₂ = ker φ₂`.
    pub fn k2(&self) -> SubspaceSpec {
        let n = self.dim();
        let idx: Vec<usize> = (0..self.side1).chain(self.quotient_dim()..n).collect();
        SubspaceSpec::from_span(n, idx.into_iter().map(|i| unit(n, i)).collect()).expect("unit vectors")
    }

    pub fn core(&self) -> SubspaceSpec {
        SubspaceSpec::coordinate(self.dim(), self.quotient_dim()..self.dim())
    }

    /// Renders a vector as a combination of the labelled coordinates.
    pub fn describe(&self, v: &[Rational]) -> String {
        let terms: Vec<String> = v
            .iter()
            .zip(&self.labels)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| format!("{}*{l}", format_rational(c)))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// A subspace stored as the nonzero rows of its reduced echelon form.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceSpec {
    pub ambient: usize,
    pub basis: Vec<Vec<Rational>>,
}

impl SubspaceSpec {
    pub fn from_span(ambient: usize, span: Vec<Vec<Rational>>) -> Result<Self> {
        dim_check(span.iter().all(|v| v.len() == ambient), || {
            format!("spanning vectors must have length {ambient}")
        })?;
        let (basis, _) = rref(&span);
        Ok(Self { ambient, basis })
    }

    pub fn coordinate(ambient: usize, range: std::ops::Range<usize>) -> Self {
        Self::from_span(ambient, range.map(|i| unit(ambient, i)).collect()).expect("unit vectors")
    }

    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn joint_rank(h: &SubspaceSpec, k: &SubspaceSpec) -> usize {
    let rows: Vec<Vec<Rational>> = h.basis.iter().chain(&k.basis).cloned().collect();
    rank(&rows)
}

/// `trivial_intersection` (`H ∩ K = 0`) and `spans_ambient` (`H + K` is
/// everything), by exact rank computation.
pub fn complement_check(h: &SubspaceSpec, k: &SubspaceSpec) -> Result<CheckReport> {
    dim_check(h.ambient == k.ambient, || {
        format!("subspaces of ambient dimensions {} and {}", h.ambient, k.ambient)
    })?;
    let r = joint_rank(h, k);
    let meet = h.dim() + k.dim() - r;
    let mut report = CheckReport::default();
    report.push("trivial_intersection".into(), meet == 0, || {
        format!("dim(H ∩ K) = {meet}")
    });
    report.push("spans_ambient".into(), r == h.ambient, || {
        format!("dim(H + K) = {r} < {}", h.ambient)
    });
    Ok(report)
}

/// `(H₁, H₂)` is a connection iff `H₁ ∩ H₂ = 0`, given that `Hᵢ` complements
/// `𝔨ᵢ`. A failed complement check is a [`Error::PreconditionFailed`].
pub fn dlg_connection_check(amb: &AmbientAlgebra, h1: &SubspaceSpec, h2: &SubspaceSpec) -> Result<CheckReport> {
    for (name, h, k) in [("H1", h1, amb.k1()), ("H2", h2, amb.k2())] {
        let pre = complement_check(h, &k)?;
        let failure = pre.failures().next().map(|f| f.counterexample.clone().unwrap_or_default());
        if let Some(why) = failure {
            return Err(Error::PreconditionFailed(format!(
                "{name} is not a complement of k{}: {why}",
                &name[1..]
            )));
        }
    }
    let meet = h1.dim() + h2.dim() - joint_rank(h1, h2);
    let mut report = CheckReport::default();
    report.push("h1_h2_trivial_intersection".into(), meet == 0, || {
        format!("dim(H1 ∩ H2) = {meet}")
    });
    Ok(report)
}

/// A linear map `𝔤₁ ⊕ 𝔤₂ → 𝔤`; column `i` is the image of the `i`-th basis
/// vector of the quotient.
#[derive(Debug, Clone, PartialEq)]
pub struct SplittingMap {
    pub matrix: Matrix<Rational>,
}

impl SplittingMap {
    /// `(A₁, A₂) ↦ (A₁, A₂, 0, …)`.
    pub fn canonical(amb: &AmbientAlgebra) -> Self {
        let q = amb.quotient_dim();
        Self { matrix: Matrix::from_fn(amb.dim(), q, |r, c| if r == c { Rational::one() } else { Rational::zero() }) }
    }

    pub fn image(&self, i: usize) -> Vec<Rational> {
        self.matrix.column(i)
    }
}

fn bracket_report(
    amb: &AmbientAlgebra,
    name: &str,
    pairs: impl Iterator<Item = (Vec<Rational>, Vec<Rational>)>,
) -> (bool, Option<String>) {
    for (x, y) in pairs {
        let b = amb.lie.bracket(&x, &y);
        if b.iter().any(|v| !v.is_zero()) {
            return (
                false,
                Some(format!("{name}: [{}, {}] = {}", amb.describe(&x), amb.describe(&y), amb.describe(&b))),
            );
        }
    }
    (true, None)
}

/// The conditions `[𝔤₀, s(𝔤₁ ⊕ 𝔤₂)] = 0` (`core_condition`) and
/// `[s(𝔤₁), s(𝔤₂)] = 0` (`sides_condition`), plus their conjunction
/// (`connection`), on spanning vectors.
pub fn splitting_connection_check(amb: &AmbientAlgebra, s: &SplittingMap) -> Result<CheckReport> {
    let q = amb.quotient_dim();
    if s.matrix.rows() != amb.dim() || s.matrix.cols() != q {
        return Err(Error::DimMismatch(format!(
            "splitting is {}×{}, expected {}×{q}",
            s.matrix.rows(),
            s.matrix.cols(),
            amb.dim()
        )));
    }
    for i in 0..q {
        let col = s.image(i);
        if col[..q] != unit::<Rational>(q, i)[..] {
            return Err(Error::NotASection(format!("quotient of s(e{}) is not e{}", i + 1, i + 1)));
        }
    }
    let gens1: Vec<_> = (0..amb.side1).map(|i| s.image(i)).collect();
    let gens2: Vec<_> = (amb.side1..q).map(|i| s.image(i)).collect();
    Ok(splitting_span_check(amb, &gens1, &gens2))
}

/// [`splitting_connection_check`] on arbitrary spanning sets of `s(𝔤₁)` and
/// `s(𝔤₂)`.
pub fn splitting_span_check(amb: &AmbientAlgebra, gens1: &[Vec<Rational>], gens2: &[Vec<Rational>]) -> CheckReport {
    let core = amb.core().basis;
    let image: Vec<_> = gens1.iter().chain(gens2).cloned().collect();
    let (c_ok, c_ex) = bracket_report(
        amb,
        "core",
        core.iter().flat_map(|c| image.iter().map(move |v| (c.clone(), v.clone()))),
    );
    let (s_ok, s_ex) = bracket_report(
        amb,
        "sides",
        gens1.iter().flat_map(|a| gens2.iter().map(move |b| (a.clone(), b.clone()))),
    );
    let mut report = CheckReport::default();
    report.push("core_condition".into(), c_ok, || c_ex.clone().unwrap_or_default());
    report.push("sides_condition".into(), s_ok, || s_ex.clone().unwrap_or_default());
    report.push("connection".into(), c_ok && s_ok, || {
        c_ex.clone().or(s_ex.clone()).unwrap_or_default()
    });
    report
}
