//! Čech models of double principal bundles and their associated double
//! vector bundles.
//!
//! The base is replaced by the nerve of a finite cover: charts, ordered
//! overlaps and triple overlaps. A principal bundle is a transition family
//! `g(i, j)` in a double Lie group; an associated element is a pair
//! `(chart, value)` subject to
//!
//! ```text
//! (i, v) ~ (j, ρ(g(j, i)) v)
//! ```
//!
//! so moving a value from chart `i` to chart `j` applies `ρ(g(j, i))`. The
//! cocycle condition is `g(i, j) g(j, k) = g(i, k)` with `g(j, i) = g(i, j)⁻¹`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::aut::{aut_apply, aut_compose, DvsAut};
use crate::dlg::{DlgElement, DlgKind, DlgSpec};
use crate::report::CheckReport;
use crate::duality::{dual_rep, pair};
use crate::dvs::{dvs_add, dvs_scale, Dims, DvsElement, Section, Side};
use crate::error::{Error, Result};
use crate::linalg::{unit, vzero, Matrix};
use crate::bilinear::BilinearMap;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverGraph {
    charts: usize,
    overlaps: BTreeSet<(usize, usize)>,
    triples: BTreeSet<(usize, usize, usize)>,
}

impl CoverGraph {
    /// Overlaps are closed under reversal; self-overlaps are implicit and
    /// dropped. Every triple needs its three pairwise overlaps.
    pub fn new(charts: usize, overlaps: &[(usize, usize)], triples: &[(usize, usize, usize)]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for &(i, j) in overlaps {
            if i >= charts || j >= charts {
                return Err(Error::Input(format!("overlap ({i},{j}) names a chart ≥ {charts}")));
            }
            if i != j {
                set.insert((i, j));
                set.insert((j, i));
            }
        }
        let mut tri = BTreeSet::new();
        for &(i, j, k) in triples {
            for (a, b) in [(i, j), (j, k), (i, k)] {
                if a != b && !set.contains(&(a, b)) {
                    return Err(Error::Input(format!(
                        "triple ({i},{j},{k}) lacks the overlap ({a},{b})"
                    )));
                }
            }
            tri.insert((i, j, k));
        }
        Ok(Self { charts, overlaps: set, triples: tri })
    }

    /// `0 – 1 – … – (n−1) – 0` with no triple overlaps.
    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(n, &edges, &[]).expect("cycle cover is well formed")
    }

    /// All pairs overlap; all increasing triples are recorded.
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        let mut triples = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
                for k in j + 1..n {
                    triples.push((i, j, k));
                }
            }
        }
        Self::new(n, &edges, &triples).expect("complete cover is well formed")
    }

    pub fn charts(&self) -> usize {
        self.charts
    }

    /// Ordered overlaps, both directions.
    pub fn overlaps(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.overlaps.iter().copied()
    }

    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.triples.iter().copied()
    }

    pub fn overlap(&self, i: usize, j: usize) -> bool {
        (i == j && i < self.charts) || self.overlaps.contains(&(i, j))
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.overlaps.range((i, 0)..(i + 1, 0)).map(|&(_, j)| j)
    }

    pub fn is_connected(&self) -> bool {
        self.charts == 0 || (0..self.charts).all(|j| self.shortest_path(0, j).is_some())
    }

    /// Breadth-first, visiting neighbors in increasing order. The path
    /// includes both endpoints.
    pub fn shortest_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        if from >= self.charts || to >= self.charts {
            return None;
        }
        let mut parent = vec![usize::MAX; self.charts];
        parent[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(c) = queue.pop_front() {
            if c == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for n in self.neighbors(c) {
                if parent[n] == usize::MAX {
                    parent[n] = c;
                    queue.push_back(n);
                }
            }
        }
        None
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrincipalCocycle<S> {
    pub cover: CoverGraph,
    pub group: DlgSpec,
    g: BTreeMap<(usize, usize), DlgElement<S>>,
}

impl<S: Scalar> PrincipalCocycle<S> {
    /// Transitions given in only one direction are completed by inverses.
    /// Every overlap needs a transition in at least one direction.
    pub fn new(
        cover: CoverGraph,
        group: DlgSpec,
        transitions: BTreeMap<(usize, usize), DlgElement<S>>,
    ) -> Result<Self> {
        let mut g = BTreeMap::new();
        for (&(i, j), t) in &transitions {
            if i == j || !cover.overlap(i, j) {
                return Err(Error::Input(format!("transition given on ({i},{j}), which is not an overlap")));
            }
            group.check(t)?;
            g.insert((i, j), t.clone());
        }
        for (i, j) in cover.overlaps() {
            if g.contains_key(&(i, j)) {
                continue;
            }
            match transitions.get(&(j, i)) {
                Some(t) => {
                    g.insert((i, j), group.inv(t)?);
                }
                None => {
                    return Err(Error::Input(format!("overlap ({i},{j}) has no transition")));
                }
            }
        }
        Ok(Self { cover, group, g })
    }

    /// Transitions from chart potentials: `g(i, j) = hᵢ⁻¹ hⱼ` on every
    /// overlap, which always satisfies the cocycle condition.
    pub fn from_potentials(cover: CoverGraph, group: DlgSpec, h: &[DlgElement<S>]) -> Result<Self> {
        if h.len() != cover.charts() {
            return Err(Error::Input(format!("{} potentials for {} charts", h.len(), cover.charts())));
        }
        let mut t = BTreeMap::new();
        for (i, j) in cover.overlaps() {
            t.insert((i, j), group.mul(&group.inv(&h[i])?, &h[j])?);
        }
        Self::new(cover, group, t)
    }

    pub fn transition(&self, i: usize, j: usize) -> Result<DlgElement<S>> {
        if i == j && i < self.cover.charts() {
            return Ok(self.group.identity());
        }
        self.g.get(&(i, j)).cloned().ok_or(Error::NoOverlap(i, j))
    }

    pub fn transitions(&self) -> impl Iterator<Item = (&(usize, usize), &DlgElement<S>)> {
        self.g.iter()
    }
}

fn family_check<T: PartialEq + std::fmt::Debug>(
    cover: &CoverGraph,
    prefix: &str,
    get: impl Fn(usize, usize) -> Result<T>,
    mul: impl Fn(&T, &T) -> Result<T>,
    is_identity: impl Fn(&T) -> bool,
) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    for (i, j) in cover.overlaps().filter(|(i, j)| i < j) {
        let prod = mul(&get(i, j)?, &get(j, i)?)?;
        report.push(format!("{prefix}inverse({i},{j})"), is_identity(&prod), || {
            format!("g({i},{j}) g({j},{i}) = {prod:?}")
        });
    }
    for (i, j, k) in cover.triples() {
        let lhs = mul(&get(i, j)?, &get(j, k)?)?;
        let rhs = get(i, k)?;
        let ok = lhs == rhs;
        report.push(format!("{prefix}triple({i},{j},{k})"), ok, || {
            format!("g({i},{j}) g({j},{k}) = {lhs:?} but g({i},{k}) = {rhs:?}")
        });
    }
    Ok(report)
}

fn is_group_identity<S: Scalar>(e: &DlgElement<S>) -> bool {
    match e {
        DlgElement::Aut(a) => a.is_identity(),
        DlgElement::Product { g1, g2, g0 } => g1.is_identity() && g2.is_identity() && g0.is_identity(),
    }
}

/// Inverse symmetry on every overlap and the triple condition on every
/// triple, exactly.
pub fn cocycle_verify<S: Scalar>(pc: &PrincipalCocycle<S>) -> Result<CheckReport> {
    family_check(
        &pc.cover,
        "",
        |i, j| pc.transition(i, j),
        |a, b| pc.group.mul(a, b),
        is_group_identity,
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct DpbReport {
    pub total: CheckReport,
    pub first: CheckReport,
    pub second: CheckReport,
    /// Overlaps whose transition lies in the core subgroup.
    pub core_valued: Vec<(usize, usize)>,
}

impl DpbReport {
    pub fn all_pass(&self) -> bool {
        self.total.all_pass() && self.first.all_pass() && self.second.all_pass()
    }
}

/// [`cocycle_verify`] plus the cocycle conditions for the two quotient
/// bundles, with transitions `φ₁(g(i, j))` and `φ₂(g(i, j))`.
pub fn dpb_cocycle_verify<S: Scalar>(pc: &PrincipalCocycle<S>) -> Result<DpbReport> {
    let total = cocycle_verify(pc)?;
    let mul = |a: &Matrix<S>, b: &Matrix<S>| Ok(a.mul(b));
    let first = family_check(
        &pc.cover,
        "phi1_",
        |i, j| Ok(pc.group.project(&pc.transition(i, j)?)?.0),
        mul,
        Matrix::is_identity,
    )?;
    let second = family_check(
        &pc.cover,
        "phi2_",
        |i, j| Ok(pc.group.project(&pc.transition(i, j)?)?.1),
        mul,
        Matrix::is_identity,
    )?;
    let core_valued = pc
        .transitions()
        .filter(|(_, t)| pc.group.core_part(t).is_some())
        .map(|(&k, _)| k)
        .collect();
    Ok(DpbReport { total, first, second, core_valued })
}

/// A double Lie group morphism into `Aut(ℝ^[n])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepSpec {
    /// The identity of `Aut(ℝ^[n])`.
    Identity,
    /// `(g₁, g₂, g₀) ↦ (g₁, g₂, g₀, 0)` for a trivial product of general
    /// linear groups.
    Standard,
    /// `g ↦ f(ρ(g)⁻¹)`, acting on the dual over the first side.
    Dual(Box<RepSpec>),
}

impl RepSpec {
    pub fn dual(&self) -> Self {
        RepSpec::Dual(Box::new(self.clone()))
    }

    /// Dims of the fiber the representation acts on.
    pub fn dims(&self, group: &DlgSpec) -> Result<Dims> {
        match (self, group.kind) {
            (RepSpec::Identity, DlgKind::Aut(d)) => Ok(d),
            (RepSpec::Standard, DlgKind::TrivialProduct { d1, d2, d0 }) => Ok(Dims::new(d1, d2, d0)),
            (RepSpec::Dual(inner), _) => Ok(inner.dims(group)?.dual()),
            _ => Err(Error::Input(format!("representation {self:?} is not defined on {}", group.kind))),
        }
    }

    pub fn apply<S: Scalar>(&self, group: &DlgSpec, g: &DlgElement<S>) -> Result<DvsAut<S>> {
        self.dims(group)?;
        group.check(g)?;
        match (self, g) {
            (RepSpec::Identity, DlgElement::Aut(a)) => Ok(a.clone()),
            (RepSpec::Standard, DlgElement::Product { g1, g2, g0 }) => Ok(DvsAut {
                a1: g1.clone(),
                a2: g2.clone(),
                a0: g0.clone(),
                mu: BilinearMap::zeros(g0.rows(), g1.rows(), g2.rows()),
            }),
            (RepSpec::Dual(inner), _) => dual_rep(&inner.apply(group, g)?),
            _ => Err(Error::Input(format!("representation {self:?} cannot act on {g:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AssocElement<S> {
    pub chart: usize,
    pub value: DvsElement<S>,
}

impl<S: Scalar> AssocElement<S> {
    pub fn new(chart: usize, value: DvsElement<S>) -> Self {
        Self { chart, value }
    }
}

fn check_element<S: Scalar>(pc: &PrincipalCocycle<S>, rep: &RepSpec, e: &AssocElement<S>) -> Result<()> {
    if e.chart >= pc.cover.charts() {
        return Err(Error::Input(format!("chart {} out of range", e.chart)));
    }
    e.value.check_dims(rep.dims(&pc.group)?)
}

/// `ρ(g(j, i))`, the chart change from `i` to `j`.
pub fn chart_change<S: Scalar>(pc: &PrincipalCocycle<S>, rep: &RepSpec, i: usize, j: usize) -> Result<DvsAut<S>> {
    if !pc.cover.overlap(i, j) {
        return Err(Error::NoOverlap(i, j));
    }
    rep.apply(&pc.group, &pc.transition(j, i)?)
}

/// Moves `e` along `path`, which starts at `e.chart`. An empty path is the
/// identity.
pub fn transport<S: Scalar>(
    pc: &PrincipalCocycle<S>,
    rep: &RepSpec,
    e: &AssocElement<S>,
    path: &[usize],
) -> Result<AssocElement<S>> {
    check_element(pc, rep, e)?;
    let Some((&first, rest)) = path.split_first() else {
        return Ok(e.clone());
    };
    if first != e.chart {
        return Err(Error::Input(format!("path starts at chart {first}, element lives in chart {}", e.chart)));
    }
    let mut cur = first;
    let mut value = e.value.clone();
    for &next in rest {
        value = aut_apply(&chart_change(pc, rep, cur, next)?, &value)?;
        cur = next;
    }
    Ok(AssocElement::new(cur, value))
}

/// Expresses `e` in chart `target` along the shortest overlap path.
pub fn to_chart<S: Scalar>(
    pc: &PrincipalCocycle<S>,
    rep: &RepSpec,
    e: &AssocElement<S>,
    target: usize,
) -> Result<AssocElement<S>> {
    let path = pc.cover.shortest_path(e.chart, target).ok_or(Error::NoOverlap(e.chart, target))?;
    transport(pc, rep, e, &path)
}

/// Product of chart changes around `path`, as a single automorphism.
pub fn holonomy<S: Scalar>(pc: &PrincipalCocycle<S>, rep: &RepSpec, path: &[usize]) -> Result<DvsAut<S>> {
    let d = rep.dims(&pc.group)?;
    let mut acc = DvsAut::identity(d);
    for w in path.windows(2) {
        acc = aut_compose(&chart_change(pc, rep, w[0], w[1])?, &acc)?;
    }
    Ok(acc)
}

/// `e₁ +ᵢ e₂`: `e₂` is moved to `e₁`'s chart, then added there.
pub fn assoc_fiber_op<S: Scalar>(
    pc: &PrincipalCocycle<S>,
    rep: &RepSpec,
    side: Side,
    e1: &AssocElement<S>,
    e2: &AssocElement<S>,
) -> Result<AssocElement<S>> {
    check_element(pc, rep, e1)?;
    let moved = to_chart(pc, rep, e2, e1.chart)?;
    Ok(AssocElement::new(e1.chart, dvs_add(side, &e1.value, &moved.value)?))
}

pub fn assoc_scale<S: Scalar>(
    pc: &PrincipalCocycle<S>,
    rep: &RepSpec,
    side: Side,
    r: &S,
    e: &AssocElement<S>,
) -> Result<AssocElement<S>> {
    check_element(pc, rep, e)?;
    Ok(AssocElement::new(e.chart, dvs_scale(side, r, &e.value)))
}

/// `Πᵢ[p, v] = [φᵢ(p), σᵢ(v)]`, as `(chart, vector)`.
pub fn assoc_project<S: Scalar>(
    pc: &PrincipalCocycle<S>,
    rep: &RepSpec,
    side: Side,
    e: &AssocElement<S>,
) -> Result<(usize, Vec<S>)> {
    check_element(pc, rep, e)?;
    Ok(match side {
        Side::I => (e.chart, e.value.x.clone()),
        Side::II => (e.chart, e.value.y.clone()),
    })
}

/// The representation of the dual associated bundle.
pub fn dual_bundle<S: Scalar>(pc: &PrincipalCocycle<S>, rep: &RepSpec) -> Result<RepSpec> {
    rep.dims(&pc.group)?;
    Ok(rep.dual())
}

/// `⟨[p, v], [q, η]⟩`, evaluated in the chart of `v` after moving `η` there
/// with the dual representation.
pub fn assoc_pair<S: Scalar>(
    pc: &PrincipalCocycle<S>,
    rep: &RepSpec,
    v: &AssocElement<S>,
    eta: &AssocElement<S>,
) -> Result<S> {
    check_element(pc, rep, v)?;
    let moved = to_chart(pc, &rep.dual(), eta, v.chart)?;
    pair(&v.value, &moved.value)
}

/// Per-chart section data.
#[derive(Debug, Clone, PartialEq)]
pub struct BundleSection<S> {
    pub charts: Vec<Section<S>>,
}

/// Overlap compatibility `s_j(y) = ρ(g(j, i)) s_i(ρ₂(g(i, j)) y)`, checked at
/// `y = 0` and on a basis of `V₂` (both sides are affine in `y`).
pub fn section_check<S: Scalar>(
    pc: &PrincipalCocycle<S>,
    rep: &RepSpec,
    s: &BundleSection<S>,
) -> Result<CheckReport> {
    let d = rep.dims(&pc.group)?;
    if s.charts.len() != pc.cover.charts() {
        return Err(Error::Input(format!(
            "section given on {} charts, cover has {}",
            s.charts.len(),
            pc.cover.charts()
        )));
    }
    for (i, sec) in s.charts.iter().enumerate() {
        if !sec.fits(d) {
            return Err(Error::DimMismatch(format!("section on chart {i} has dims {}", sec.dims())));
        }
    }
    let mut probes: Vec<Vec<S>> = vec![vzero(d.n2)];
    probes.extend((0..d.n2).map(|t| unit(d.n2, t)));
    let mut report = CheckReport::default();
    for (i, j) in pc.cover.overlaps() {
        let g_ji = chart_change(pc, rep, i, j)?;
        let g_ij = chart_change(pc, rep, j, i)?;
        let mut bad = None;
        for y in &probes {
            let lhs = s.charts[j].eval(y)?;
            let yi = g_ij.a2.mul_vec(y);
            let rhs = aut_apply(&g_ji, &s.charts[i].eval(&yi)?)?;
            if lhs != rhs {
                bad = Some(format!("at y={y:?}: s_j = {lhs:?}, transported s_i = {rhs:?}"));
                break;
            }
        }
        let ok = bad.is_none();
        report.push(format!("overlap({i},{j})"), ok, || bad.unwrap_or_default());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::aut_inverse;
    use crate::dvs::{CoreSection, LinearSection};
    use crate::scalar::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn aq(a1: i64, a2: i64, a0: i64, mu: i64) -> DlgElement<Rational> {
        DlgElement::Aut(DvsAut::from_scalars(q(a1), q(a2), q(a0), q(mu)))
    }

    fn one_dims() -> DlgSpec {
        DlgSpec::aut(Dims::new(1, 1, 1))
    }

    fn cycle_with(g20: DlgElement<Rational>) -> PrincipalCocycle<Rational> {
        let e = one_dims().identity();
        let t = BTreeMap::from([((0, 1), e.clone()), ((1, 2), e), ((2, 0), g20)]);
        PrincipalCocycle::new(CoverGraph::cycle(3), one_dims(), t).unwrap()
    }

    #[test]
    fn cover_paths() {
        let c = CoverGraph::cycle(4);
        assert_eq!(c.shortest_path(0, 2), Some(vec![0, 1, 2]));
        assert_eq!(c.shortest_path(3, 3), Some(vec![3]));
        assert!(c.is_connected());
        let split = CoverGraph::new(3, &[(0, 1)], &[]).unwrap();
        assert!(!split.is_connected());
        assert!(CoverGraph::new(3, &[(0, 1)], &[(0, 1, 2)]).is_err());
    }

    #[test]
    fn missing_transition_is_input_error() {
        let t = BTreeMap::from([((0, 1), one_dims().identity())]);
        let err = PrincipalCocycle::<Rational>::new(CoverGraph::cycle(3), one_dims(), t).unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }

    #[test]
    fn cocycle_examples() {
        assert!(cocycle_verify(&cycle_with(aq(2, 3, 5, 7))).unwrap().all_pass());
        let a = aq(2, 3, 5, 7);
        let a_inv = one_dims().inv(&a).unwrap();
        let mk = |g02| {
            let t = BTreeMap::from([((0, 1), a.clone()), ((1, 2), a_inv.clone()), ((0, 2), g02)]);
            PrincipalCocycle::new(CoverGraph::complete(3), one_dims(), t).unwrap()
        };
        assert!(cocycle_verify(&mk(one_dims().identity())).unwrap().all_pass());
        let bad = cocycle_verify(&mk(a.clone())).unwrap();
        assert!(!bad.get("triple(0,1,2)").unwrap().pass);
    }

    #[test]
    fn loop_transport_example() {
        let pc = cycle_with(aq(2, 3, 5, 7));
        let rep = RepSpec::Identity;
        let e = AssocElement::new(0, DvsElement::<Rational>::from_ints(&[1], &[1], &[1]));
        let back = transport(&pc, &rep, &e, &[0, 1, 2, 0]).unwrap();
        // chart change 2 → 0 applies g(0, 2) = g(2, 0)⁻¹
        let g_inv = aut_inverse(&DvsAut::from_scalars(q(2), q(3), q(5), q(7))).unwrap();
        assert_eq!(back.value, aut_apply(&g_inv, &e.value).unwrap());
        assert_eq!(
            back.value,
            DvsElement::new(vec![Rational::from_ratio(1, 2)], vec![Rational::from_ratio(1, 3)], vec![Rational::from_ratio(-1, 30)])
        );
        assert_eq!(transport(&pc, &rep, &e, &[]).unwrap(), e);
        let there = transport(&pc, &rep, &e, &[0, 2, 1]).unwrap();
        assert_eq!(transport(&pc, &rep, &there, &[1, 2, 0]).unwrap(), e);
        assert_eq!(holonomy(&pc, &rep, &[0, 1, 2, 0]).unwrap(), g_inv);
        assert!(matches!(
            transport(&pc, &rep, &e, &[0, 0, 1]),
            Ok(_)
        ));
        let sq = PrincipalCocycle::from_potentials(CoverGraph::cycle(4), one_dims(), &vec![one_dims().identity(); 4]).unwrap();
        assert!(matches!(transport(&sq, &rep, &e, &[0, 2]), Err(Error::NoOverlap(0, 2))));
    }

    #[test]
    fn fiber_op_examples() {
        let pc = cycle_with(aq(2, 3, 5, 7));
        let rep = RepSpec::Identity;
        let u = AssocElement::new(0, DvsElement::<Rational>::from_ints(&[1], &[2], &[3]));
        let v = AssocElement::new(0, DvsElement::from_ints(&[1], &[4], &[5]));
        let s = assoc_fiber_op(&pc, &rep, Side::I, &u, &v).unwrap();
        assert_eq!(s, AssocElement::new(0, DvsElement::from_ints(&[1], &[6], &[8])));
        // the same pair written in chart 2: the sum agrees after transport
        let u2 = to_chart(&pc, &rep, &u, 2).unwrap();
        let v2 = to_chart(&pc, &rep, &v, 2).unwrap();
        let s2 = assoc_fiber_op(&pc, &rep, Side::I, &u2, &v).unwrap();
        assert_eq!(to_chart(&pc, &rep, &s2, 0).unwrap(), s);
        let s3 = assoc_fiber_op(&pc, &rep, Side::I, &u, &v2).unwrap();
        assert_eq!(s3, s);
        let w = AssocElement::new(0, DvsElement::from_ints(&[9], &[4], &[5]));
        assert!(matches!(assoc_fiber_op(&pc, &rep, Side::I, &u, &w), Err(Error::BaseMismatch(_))));
    }

    #[test]
    fn dual_bundle_examples() {
        let pc = cycle_with(aq(2, 3, 5, 7));
        let dual = dual_bundle(&pc, &RepSpec::Identity).unwrap();
        let t = dual.apply(&pc.group, &aq(2, 3, 5, 7)).unwrap();
        let r = Rational::from_ratio;
        assert_eq!(t, DvsAut::from_scalars(q(2), r(1, 5), r(1, 3), r(-7, 15)));
        assert!(dual.apply(&pc.group, &one_dims().identity::<Rational>()).unwrap().is_identity());
        let v = AssocElement::new(0, DvsElement::<Rational>::from_ints(&[1], &[2], &[3]));
        let eta = AssocElement::new(0, DvsElement::from_ints(&[1], &[-1], &[4]));
        let here = assoc_pair(&pc, &RepSpec::Identity, &v, &eta).unwrap();
        let v2 = to_chart(&pc, &RepSpec::Identity, &v, 2).unwrap();
        assert_eq!(assoc_pair(&pc, &RepSpec::Identity, &v2, &eta).unwrap(), here);
    }

    #[test]
    fn section_examples() {
        let d = Dims::new(1, 2, 1);
        let group = DlgSpec::aut(d);
        let id = PrincipalCocycle::<Rational>::from_potentials(CoverGraph::cycle(3), group, &vec![group.identity(); 3]).unwrap();
        let lin = Section::Linear(LinearSection {
            base: vec![q(2)],
            slope: Matrix::from_rows(vec![vec![q(1), q(-3)]], 2).unwrap(),
        });
        let s = BundleSection { charts: vec![lin.clone(); 3] };
        assert!(section_check(&id, &RepSpec::Identity, &s).unwrap().all_pass());

        let shear = DvsAut {
            a1: Matrix::scalar(q(2)),
            a2: Matrix::from_rows(vec![vec![q(1), q(1)], vec![q(0), q(1)]], 2).unwrap(),
            a0: Matrix::identity(1),
            mu: BilinearMap::from_fn(1, 1, 2, |_, _, j| q(j as i64 + 1)),
        };
        let h = vec![group.identity(), DlgElement::Aut(shear.clone()), DlgElement::Aut(shear)];
        let pc = PrincipalCocycle::from_potentials(CoverGraph::cycle(3), group, &h).unwrap();
        let core = Section::Core(CoreSection { value: vec![q(5)], n1: 1 });
        let cs = BundleSection { charts: vec![core; 3] };
        assert!(section_check(&pc, &RepSpec::Identity, &cs).unwrap().all_pass());
        assert!(!section_check(&pc, &RepSpec::Identity, &s).unwrap().all_pass());
    }

    #[test]
    fn dpb_projection_checks() {
        let d = Dims::new(2, 2, 1);
        let a = DvsAut {
            a1: Matrix::from_rows(vec![vec![q(1), q(1)], vec![q(0), q(1)]], 2).unwrap(),
            a2: Matrix::from_rows(vec![vec![q(1), q(2)], vec![q(0), q(1)]], 2).unwrap(),
            a0: Matrix::scalar(q(3)),
            mu: BilinearMap::zeros(1, 2, 2),
        };
        let b = DvsAut {
            a2: Matrix::from_rows(vec![vec![q(1), q(0)], vec![q(1), q(1)]], 2).unwrap(),
            ..a.clone()
        };
        let good = DlgSpec::aut(d);
        let h = vec![good.identity(), DlgElement::Aut(a), DlgElement::Aut(b)];
        let pc = PrincipalCocycle::from_potentials(CoverGraph::complete(3), good, &h).unwrap();
        let report = dpb_cocycle_verify(&pc).unwrap();
        assert!(report.all_pass(), "{report:?}");
        let mut broken = pc.clone();
        broken.group = good.with_wiring(crate::dlg::Wiring::TransposedSecond);
        let report = dpb_cocycle_verify(&broken).unwrap();
        assert!(report.total.all_pass() && report.first.all_pass());
        assert!(!report.second.all_pass());
    }
}
