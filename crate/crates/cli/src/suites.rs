//! Invariant suites, one per library module.
//!
//! Every property draws from its own generator, seeded from the run seed and
//! the property name, so reports do not depend on which properties ran
//! before.

use std::collections::BTreeMap;

use doublevec::algebra::{commutator_oracle, der_bracket, der_exp, triangle_action, DvsDer};
use doublevec::aut::{aut_apply, aut_compose, aut_factor, aut_inverse, in_k1, in_k2, DvsAut};
use doublevec::bundles::{
    assoc_fiber_op, assoc_pair, assoc_project, assoc_scale, cocycle_verify, dpb_cocycle_verify, to_chart,
    AssocElement, CoverGraph, PrincipalCocycle, RepSpec,
};
use doublevec::connections::{
    complement_check, dlg_connection_check, splitting_connection_check, splitting_span_check, AmbientAlgebra,
    SplittingMap, SubspaceSpec,
};
use doublevec::dla::{
    build_double_algebra, ce_differential, cocycle_basis, double_fixtures, jacobi_check, random_cochain,
    random_combination, split_cocycle_check, DoubleModule, LieAlgebraSpec,
};
use doublevec::dlg::{dlg_verify, DlgElement, DlgSpec, PropertyOutcome};
use doublevec::duality::{dual_rep, f_dual, f_dual_inverse, pair};
use doublevec::dvs::{dvs_add, dvs_scale, Dims, DvsElement, Side};
use doublevec::frames::{aut_to_frame, frame_act, frame_eval, frame_to_aut, frame_transition, Frame};
use doublevec::json;
use doublevec::linalg::{rank, unit, Matrix};
use doublevec::report::CheckReport;
use doublevec::sample;
use doublevec::scalar::{Rational, Scalar, ScalarKind};
use doublevec::BilinearMap;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::CliError;

pub const SUITES: [&str; 7] = ["aut", "dual", "frames", "algebra", "bundles", "dla", "connections"];

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub dims: Dims,
    pub trials: usize,
    pub seed: u64,
    pub scalar: ScalarKind,
    pub tol: f64,
    /// Parsed fixture and the name it is reported under.
    pub fixture: Option<(String, Value)>,
}

/// A finished run. `properties` is sorted by name.
#[derive(Debug, Clone)]
pub struct Report {
    pub suite: String,
    pub fixture: String,
    pub dims: Option<Dims>,
    pub scalar: ScalarKind,
    pub trials: usize,
    pub seed: u64,
    pub properties: Vec<PropertyOutcome>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.properties.iter().all(|p| p.pass)
    }

    pub fn to_json(&self) -> Value {
        let props: Vec<Value> = self
            .properties
            .iter()
            .map(|p| {
                let mut o = json!({"name": p.name, "pass": p.pass});
                if let Some(c) = &p.counterexample {
                    o["counterexample"] = json!(c);
                }
                o
            })
            .collect();
        let mut out = json!({
            "suite": self.suite,
            "fixture": self.fixture,
            "scalar": match self.scalar { ScalarKind::Rational => "rational", ScalarKind::Float => "float" },
            "trials": self.trials,
            "seed": self.seed,
            "pass": self.all_pass(),
            "properties": props,
        });
        if let Some(d) = self.dims {
            out["dims"] = json::dims_to_json(d);
        }
        out
    }
}

fn property_rng(seed: u64, name: &str) -> ChaCha8Rng {
    // FNV-1a of the name, mixed into the run seed
    let h = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3));
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

/// Collects properties and hands each its own generator.
struct Runner {
    seed: u64,
    out: BTreeMap<String, PropertyOutcome>,
}

impl Runner {
    fn new(seed: u64) -> Self {
        Self { seed, out: BTreeMap::new() }
    }

    /// Runs `f` with a fresh outcome and generator. Library errors inside a
    /// property count as failures of that property.
    fn prop(&mut self, name: &str, f: impl FnOnce(&mut PropertyOutcome, &mut ChaCha8Rng) -> doublevec::Result<()>) {
        let mut p = PropertyOutcome::new(name);
        let mut rng = property_rng(self.seed, name);
        if let Err(e) = f(&mut p, &mut rng) {
            p.fail(|| format!("error: {e}"));
        }
        self.out.insert(name.to_string(), p);
    }

    /// One property per check-report entry group: fails with the first
    /// failing entry's name and witness.
    fn from_report(&mut self, name: &str, r: &CheckReport) {
        let mut p = PropertyOutcome::new(name);
        if let Some(f) = r.failures().next() {
            p.fail(|| format!("{}: {}", f.name, f.counterexample.clone().unwrap_or_default()));
        }
        self.out.insert(name.to_string(), p);
    }

    fn finish(self) -> Vec<PropertyOutcome> {
        self.out.into_values().collect()
    }
}

trait Close {
    fn close(&self, other: &Self, tol: f64) -> bool;
}

impl<S: Scalar> Close for DvsAut<S> {
    fn close(&self, other: &Self, tol: f64) -> bool {
        self.approx_eq(other, tol)
    }
}

impl<S: Scalar> Close for DvsElement<S> {
    fn close(&self, other: &Self, tol: f64) -> bool {
        self.approx_eq(other, tol)
    }
}

impl<S: Scalar> Close for Frame<S> {
    fn close(&self, other: &Self, tol: f64) -> bool {
        frame_to_aut(self).approx_eq(&frame_to_aut(other), tol)
    }
}

impl Close for Vec<Rational> {
    fn close(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Report, CliError> {
    let exact_only = matches!(name, "bundles" | "dla" | "connections");
    if exact_only && cfg.scalar == ScalarKind::Float {
        return Err(CliError::Input(format!("suite `{name}` runs over exact rationals only")));
    }
    if !(cfg.tol > 0.0) {
        return Err(CliError::Input(format!("tolerance must be positive, got {}", cfg.tol)));
    }
    let mut dims = Some(cfg.dims);
    let properties = match name {
        "aut" => dispatch(cfg, aut_suite::<Rational>, aut_suite::<f64>),
        "dual" => dispatch(cfg, dual_suite::<Rational>, dual_suite::<f64>),
        "frames" => dispatch(cfg, frames_suite::<Rational>, frames_suite::<f64>),
        "algebra" => algebra_suite(cfg),
        "bundles" => {
            let (d, props) = bundles_suite(cfg)?;
            dims = Some(d);
            props
        }
        "dla" => {
            dims = None;
            dla_suite(cfg)?
        }
        "connections" => {
            dims = None;
            connections_suite(cfg)?
        }
        other => return Err(CliError::Input(format!("unknown suite `{other}`; expected one of {}", SUITES.join(", ")))),
    };
    Ok(Report {
        suite: name.to_string(),
        fixture: cfg.fixture.as_ref().map(|(n, _)| n.clone()).unwrap_or_else(|| "generated".into()),
        dims,
        scalar: cfg.scalar,
        trials: cfg.trials,
        seed: cfg.seed,
        properties,
    })
}

fn dispatch(
    cfg: &SuiteConfig,
    exact: fn(&SuiteConfig) -> Vec<PropertyOutcome>,
    float: fn(&SuiteConfig) -> Vec<PropertyOutcome>,
) -> Vec<PropertyOutcome> {
    match cfg.scalar {
        ScalarKind::Rational => exact(cfg),
        ScalarKind::Float => float(cfg),
    }
}

fn aut_suite<S: Scalar>(cfg: &SuiteConfig) -> Vec<PropertyOutcome> {
    let (d, n, tol) = (cfg.dims, cfg.trials, cfg.tol);
    let mut run = Runner::new(cfg.seed);
    run.prop("associativity", |p, r| {
        for t in 0..n {
            let (a, b, c) = (sample::aut::<S, _>(r, d), sample::aut::<S, _>(r, d), sample::aut::<S, _>(r, d));
            let lhs = aut_compose(&aut_compose(&a, &b)?, &c)?;
            let rhs = aut_compose(&a, &aut_compose(&b, &c)?)?;
            p.check(lhs.close(&rhs, tol), || format!("trial {t}: (ab)c != a(bc) for a={a:?}, b={b:?}, c={c:?}"));
        }
        Ok(())
    });
    run.prop("identity", |p, r| {
        let e = DvsAut::identity(d);
        for t in 0..n {
            let a = sample::aut::<S, _>(r, d);
            let ok = aut_compose(&a, &e)?.close(&a, tol) && aut_compose(&e, &a)?.close(&a, tol);
            p.check(ok, || format!("trial {t}: ae != a or ea != a for a={a:?}"));
        }
        Ok(())
    });
    run.prop("inverse", |p, r| {
        let e = DvsAut::identity(d);
        for t in 0..n {
            let a = sample::aut::<S, _>(r, d);
            let i = aut_inverse(&a)?;
            let ok = aut_compose(&a, &i)?.close(&e, tol) && aut_compose(&i, &a)?.close(&e, tol);
            p.check(ok, || format!("trial {t}: inverse round trip fails for a={a:?}"));
        }
        Ok(())
    });
    run.prop("faithful_action", |p, r| {
        for t in 0..n {
            let (a, b) = (sample::aut::<S, _>(r, d), sample::aut::<S, _>(r, d));
            let v = sample::element::<S, _>(r, d);
            let lhs = aut_apply(&aut_compose(&a, &b)?, &v)?;
            let rhs = aut_apply(&a, &aut_apply(&b, &v)?)?;
            p.check(lhs.close(&rhs, tol), || format!("trial {t}: (ab)v != a(bv) for v={v:?}"));
        }
        Ok(())
    });
    run.prop("factorization", |p, r| {
        for t in 0..n {
            let a = sample::aut::<S, _>(r, d);
            let (k1, k2) = aut_factor(&a)?;
            let ok = in_k1(&k1) && in_k2(&k2) && aut_compose(&k1, &k2)?.close(&a, tol);
            p.check(ok, || format!("trial {t}: a != k1 k2 for a={a:?}"));
        }
        Ok(())
    });
    run.prop("fiberwise_linear", |p, r| {
        for t in 0..n {
            let a = sample::aut::<S, _>(r, d);
            for side in [Side::I, Side::II] {
                let u = sample::element::<S, _>(r, d);
                let mut v = sample::element::<S, _>(r, d);
                match side {
                    Side::I => v.x = u.x.clone(),
                    Side::II => v.y = u.y.clone(),
                }
                let c: S = sample::scalar(r);
                let lhs = aut_apply(&a, &dvs_add(side, &u, &dvs_scale(side, &c, &v))?)?;
                let rhs = dvs_add(side, &aut_apply(&a, &u)?, &dvs_scale(side, &c, &aut_apply(&a, &v)?))?;
                p.check(lhs.close(&rhs, tol), || format!("trial {t}: not linear on the {side:?} fibers"));
            }
        }
        Ok(())
    });
    if S::KIND == ScalarKind::Rational {
        let mut r = property_rng(cfg.seed, "double_lie_group");
        match dlg_verify::<Rational, _>(&DlgSpec::aut(d), n, &mut r) {
            Ok(rep) => {
                for prop in rep.properties {
                    let name = format!("dlg_{}", prop.name);
                    run.out.insert(name.clone(), PropertyOutcome { name, ..prop });
                }
            }
            Err(e) => run.prop("dlg_axioms", |_, _| Err(e)),
        }
    }
    run.finish()
}

fn dual_suite<S: Scalar>(cfg: &SuiteConfig) -> Vec<PropertyOutcome> {
    let (d, n, tol) = (cfg.dims, cfg.trials, cfg.tol);
    let mut run = Runner::new(cfg.seed);
    run.prop("anti_homomorphism", |p, r| {
        p.check(f_dual(&DvsAut::<S>::identity(d))?.is_identity(), || "f(e) != e".into());
        for t in 0..n {
            let (a, b) = (sample::aut::<S, _>(r, d), sample::aut::<S, _>(r, d));
            let lhs = f_dual(&aut_compose(&a, &b)?)?;
            let rhs = aut_compose(&f_dual(&b)?, &f_dual(&a)?)?;
            p.check(lhs.close(&rhs, tol), || format!("trial {t}: f(ab) != f(b)f(a) for a={a:?}, b={b:?}"));
        }
        Ok(())
    });
    run.prop("bijective", |p, r| {
        for t in 0..n {
            let a = sample::aut::<S, _>(r, d);
            p.check(f_dual_inverse(&f_dual(&a)?)?.close(&a, tol), || format!("trial {t}: f^-1(f(a)) != a for a={a:?}"));
        }
        Ok(())
    });
    run.prop("dual_rep_homomorphism", |p, r| {
        for t in 0..n {
            let (a, b) = (sample::aut::<S, _>(r, d), sample::aut::<S, _>(r, d));
            let lhs = dual_rep(&aut_compose(&a, &b)?)?;
            let rhs = aut_compose(&dual_rep(&a)?, &dual_rep(&b)?)?;
            p.check(lhs.close(&rhs, tol), || format!("trial {t}: dual_rep(ab) != dual_rep(a)dual_rep(b)"));
        }
        Ok(())
    });
    run.prop("pairing_invariance", |p, r| {
        for t in 0..n {
            let g = sample::aut::<S, _>(r, d);
            let v = sample::element::<S, _>(r, d);
            let mut w = sample::element::<S, _>(r, d.dual());
            w.x = v.x.clone();
            let lhs = pair(&aut_apply(&g, &v)?, &aut_apply(&dual_rep(&g)?, &w)?)?;
            let rhs = pair(&v, &w)?;
            p.check(lhs.approx_eq(&rhs, tol), || format!("trial {t}: <gv, g*w> = {lhs:?} but <v, w> = {rhs:?}"));
        }
        Ok(())
    });
    run.prop("pairing_nondegenerate", |p, r| {
        let x = sample::vector::<S, _>(r, d.n1);
        let m = d.n2 + d.n0;
        let basis = |i: usize, dd: Dims| {
            let e = unit::<S>(m, i);
            DvsElement::new(x.clone(), e[..dd.n2].to_vec(), e[dd.n2..].to_vec())
        };
        let rows: Vec<Vec<S>> =
            (0..m).map(|i| (0..m).map(|j| pair(&basis(i, d), &basis(j, d.dual()))).collect()).collect::<Result<_, _>>()?;
        let mat = Matrix::from_rows(rows, m)?;
        p.check(mat.is_invertible(), || format!("pairing matrix {mat:?} is singular"));
        Ok(())
    });
    run.prop("kernel_correspondence", |p, r| {
        for t in 0..n {
            let mut a = sample::aut::<S, _>(r, d);
            a.a1 = Matrix::identity(d.n1);
            let fa = f_dual(&a)?;
            p.check(in_k1(&fa), || format!("trial {t}: f maps {a:?} outside the dual K1"));
            let mut c = sample::core_aut::<S, _>(r, d);
            c.a0 = Matrix::identity(d.n0);
            let fc = f_dual(&c)?;
            p.check(in_k1(&fc) && fc.a0.is_identity(), || format!("trial {t}: f maps {c:?} outside the dual core"));
        }
        Ok(())
    });
    run.finish()
}

fn frames_suite<S: Scalar>(cfg: &SuiteConfig) -> Vec<PropertyOutcome> {
    let (d, n, tol) = (cfg.dims, cfg.trials, cfg.tol);
    let frame = |r: &mut ChaCha8Rng| aut_to_frame(&sample::aut::<S, _>(r, d));
    let mut run = Runner::new(cfg.seed);
    run.prop("action_identity", |p, r| {
        for t in 0..n {
            let f = frame(r)?;
            p.check(frame_act(&f, &DvsAut::identity(d))?.close(&f, tol), || format!("trial {t}: F.e != F"));
        }
        Ok(())
    });
    run.prop("action_compatibility", |p, r| {
        for t in 0..n {
            let f = frame(r)?;
            let (a, b) = (sample::aut::<S, _>(r, d), sample::aut::<S, _>(r, d));
            let lhs = frame_act(&f, &aut_compose(&a, &b)?)?;
            let rhs = frame_act(&frame_act(&f, &a)?, &b)?;
            p.check(lhs.close(&rhs, tol), || format!("trial {t}: F.(ab) != (F.a).b"));
        }
        Ok(())
    });
    run.prop("free", |p, r| {
        for t in 0..n {
            let f = frame(r)?;
            let a = sample::aut::<S, _>(r, d);
            let back = frame_transition(&f, &frame_act(&f, &a)?)?;
            p.check(back.close(&a, tol), || format!("trial {t}: transition(F, F.a) != a for a={a:?}"));
        }
        Ok(())
    });
    run.prop("transitive", |p, r| {
        for t in 0..n {
            let (f, g) = (frame(r)?, frame(r)?);
            let moved = frame_act(&f, &frame_transition(&f, &g)?)?;
            p.check(moved.close(&g, tol), || format!("trial {t}: F.transition(F, G) != G"));
        }
        Ok(())
    });
    run.prop("well_defined", |p, r| {
        for t in 0..n {
            let f = frame(r)?;
            let a = sample::aut::<S, _>(r, d);
            let xi = sample::element::<S, _>(r, d);
            let lhs = frame_eval(&f, &xi)?;
            let rhs = frame_eval(&frame_act(&f, &a)?, &aut_apply(&aut_inverse(&a)?, &xi)?)?;
            p.check(lhs.close(&rhs, tol), || format!("trial {t}: F xi != (F.a)(a^-1 xi) for xi={xi:?}"));
        }
        Ok(())
    });
    run.prop("eval_isomorphism", |p, r| {
        for t in 0..n {
            let f = frame(r)?;
            let u = sample::element::<S, _>(r, d);
            let mut v = sample::element::<S, _>(r, d);
            v.x = u.x.clone();
            let lhs = frame_eval(&f, &dvs_add(Side::I, &u, &v)?)?;
            let rhs = dvs_add(Side::I, &frame_eval(&f, &u)?, &frame_eval(&f, &v)?)?;
            let core = frame_eval(&f, &DvsElement::core(u.z.clone(), d))?;
            p.check(lhs.close(&rhs, tol) && core.is_core(), || format!("trial {t}: frame evaluation is not a DVS map"));
        }
        Ok(())
    });
    run.finish()
}

fn algebra_suite(cfg: &SuiteConfig) -> Vec<PropertyOutcome> {
    let (d, n, tol) = (cfg.dims, cfg.trials, cfg.tol);
    let mut run = Runner::new(cfg.seed);
    let b = |x: &DvsDer<Rational>, y: &DvsDer<Rational>| der_bracket(x, y);
    run.prop("jacobi", |p, r| {
        for t in 0..n {
            let (x, y, z) = (sample::der::<Rational, _>(r, d), sample::der(r, d), sample::der(r, d));
            let s = b(&x, &b(&y, &z)?)?.add(&b(&y, &b(&z, &x)?)?).add(&b(&z, &b(&x, &y)?)?);
            p.check(s.is_zero(), || format!("trial {t}: Jacobi sum {s:?}"));
        }
        Ok(())
    });
    run.prop("antisymmetry", |p, r| {
        for t in 0..n {
            let (x, y) = (sample::der::<Rational, _>(r, d), sample::der(r, d));
            p.check(b(&x, &y)?.add(&b(&y, &x)?).is_zero(), || format!("trial {t}: [x,y] != -[y,x]"));
        }
        Ok(())
    });
    run.prop("quotient_homomorphism", |p, r| {
        for t in 0..n {
            let (x, y) = (sample::der::<Rational, _>(r, d), sample::der(r, d));
            let z = b(&x, &y)?;
            p.check(z.a1 == x.a1.commutator(&y.a1) && z.a2 == x.a2.commutator(&y.a2), || {
                format!("trial {t}: side blocks of the bracket are not commutators")
            });
        }
        Ok(())
    });
    run.prop("triangle_action", |p, r| {
        for t in 0..n {
            let (x, y) = (sample::der::<Rational, _>(r, d), sample::der::<Rational, _>(r, d));
            let nu = sample::bilinear::<Rational, _>(r, d);
            let act = |a1: &Matrix<Rational>, a2: &Matrix<Rational>, a0: &Matrix<Rational>, v: &BilinearMap<Rational>| {
                triangle_action(a1, a2, a0, v)
            };
            let lhs = act(&x.a1.commutator(&y.a1), &x.a2.commutator(&y.a2), &x.a0.commutator(&y.a0), &nu)?;
            let rhs = act(&x.a1, &x.a2, &x.a0, &act(&y.a1, &y.a2, &y.a0, &nu)?)?
                .sub(&act(&y.a1, &y.a2, &y.a0, &act(&x.a1, &x.a2, &x.a0, &nu)?)?);
            p.check(lhs == rhs, || format!("trial {t}: the triangle action does not respect brackets"));
        }
        Ok(())
    });
    let float_trials = n.min(200);
    run.prop("exp_closed_forms", |p, r| {
        for t in 0..float_trials {
            let x = sample::float_der(r, d);
            let pure = DvsDer { a1: Matrix::zeros(d.n1, d.n1), a2: Matrix::zeros(d.n2, d.n2), a0: Matrix::zeros(d.n0, d.n0), alpha: x.alpha.clone() };
            let want = DvsAut { a1: Matrix::identity(d.n1), a2: Matrix::identity(d.n2), a0: Matrix::identity(d.n0), mu: x.alpha.clone() };
            let got = der_exp(&pure, tol)?;
            p.check(got.distance(&want) <= 1e-12, || format!("trial {t}: exp(0,0,0,nu) = {got:?}"));
            let blocks = DvsDer { alpha: BilinearMap::zeros(d.n0, d.n1, d.n2), ..x };
            let got = der_exp(&blocks, tol)?;
            let (e1, e2, e0) = doublevec::algebra::exp_blocks(&blocks);
            let want = DvsAut { a1: e1, a2: e2, a0: e0, mu: BilinearMap::zeros(d.n0, d.n1, d.n2) };
            p.check(got.distance(&want) <= 1e-12 * 10.0, || format!("trial {t}: exp(A1,A2,A0,0) = {got:?}"));
        }
        Ok(())
    });
    run.prop("exp_one_parameter", |p, r| {
        for t in 0..float_trials {
            let x = sample::float_der(r, d);
            let (s, u) = (r.gen_range(-1.0..=1.0), r.gen_range(-1.0..=1.0));
            let prod = aut_compose(&der_exp(&x.scale(&s), tol)?, &der_exp(&x.scale(&u), tol)?)?;
            let err = prod.distance(&der_exp(&x.scale(&(s + u)), tol)?);
            p.check(err <= tol.max(1e-12), || format!("trial {t}: exp(sX)exp(tX) off by {err:.3e} at s={s}, t={u}"));
        }
        Ok(())
    });
    run.prop("commutator_oracle", |p, r| {
        for t in 0..float_trials.min(100) {
            let (x, y) = (sample::float_der(r, d), sample::float_der(r, d));
            let exact = der_bracket(&x, &y)?;
            let scale = exact.max_abs().max(1e-3);
            let e3 = commutator_oracle(&x, &y, 1e-3)?.sub(&exact).max_abs() / scale;
            let e4 = commutator_oracle(&x, &y, 1e-4)?.sub(&exact).max_abs() / scale;
            p.check(e4 < 1e-3 && e4 < e3, || format!("trial {t}: oracle errors {e3:.3e} at h=1e-3, {e4:.3e} at h=1e-4"));
        }
        Ok(())
    });
    run.finish()
}

fn fixture(cfg: &SuiteConfig) -> Option<&Value> {
    cfg.fixture.as_ref().map(|(_, v)| v)
}

fn bundles_suite(cfg: &SuiteConfig) -> Result<(Dims, Vec<PropertyOutcome>), CliError> {
    let (pc, rep) = match fixture(cfg) {
        Some(v) => {
            let b = json::bundle_from_json::<Rational>(v).map_err(CliError::input)?;
            (b.cocycle, b.rep)
        }
        None => {
            let mut r = property_rng(cfg.seed, "fixture");
            let h: Vec<_> = (0..3).map(|_| DlgElement::Aut(sample::aut::<Rational, _>(&mut r, cfg.dims))).collect();
            let pc = PrincipalCocycle::from_potentials(CoverGraph::complete(3), DlgSpec::aut(cfg.dims), &h)
                .map_err(CliError::op)?;
            (pc, RepSpec::Identity)
        }
    };
    let d = rep.dims(&pc.group).map_err(CliError::input)?;
    let charts = pc.cover.charts();
    let n = cfg.trials;
    let mut run = Runner::new(cfg.seed);
    match cocycle_verify(&pc) {
        Ok(rep) => run.from_report("cocycle", &rep),
        Err(e) => run.prop("cocycle", |_, _| Err(e)),
    }
    match dpb_cocycle_verify(&pc) {
        Ok(rep) => {
            run.from_report("side_cocycle_1", &rep.first);
            run.from_report("side_cocycle_2", &rep.second);
        }
        Err(e) => run.prop("side_cocycles", |_, _| Err(e)),
    }
    let elem = |r: &mut ChaCha8Rng, chart: usize| AssocElement::new(chart, sample::element::<Rational, _>(r, d));
    run.prop("fiber_ops_chart_independent", |p, r| {
        for t in 0..n {
            let (home, target) = (r.gen_range(0..charts), r.gen_range(0..charts));
            let side = if t % 2 == 0 { Side::I } else { Side::II };
            let e1 = elem(r, home);
            let mut v = sample::element::<Rational, _>(r, d);
            match side {
                Side::I => v.x = e1.value.x.clone(),
                Side::II => v.y = e1.value.y.clone(),
            }
            let e2 = to_chart(&pc, &rep, &AssocElement::new(home, v), target)?;
            let e1t = to_chart(&pc, &rep, &e1, target)?;
            let here = to_chart(&pc, &rep, &assoc_fiber_op(&pc, &rep, side, &e1, &e2)?, target)?;
            let there = assoc_fiber_op(&pc, &rep, side, &e1t, &e2)?;
            p.check(here == there, || format!("trial {t}: {side:?} sum of charts {home}/{target} depends on the chart"));
            let c: Rational = sample::scalar(r);
            let s1 = to_chart(&pc, &rep, &assoc_scale(&pc, &rep, side, &c, &e1)?, target)?;
            let s2 = assoc_scale(&pc, &rep, side, &c, &e1t)?;
            p.check(s1 == s2, || format!("trial {t}: {side:?} scaling depends on the chart"));
        }
        Ok(())
    });
    run.prop("projections_intertwine", |p, r| {
        for t in 0..n {
            let home = r.gen_range(0..charts);
            let e = elem(r, home);
            for j in pc.cover.neighbors(e.chart).collect::<Vec<_>>() {
                let g = doublevec::bundles::chart_change(&pc, &rep, e.chart, j)?;
                let moved = to_chart(&pc, &rep, &e, j)?;
                let (_, p1) = assoc_project(&pc, &rep, Side::I, &moved)?;
                let (_, p2) = assoc_project(&pc, &rep, Side::II, &moved)?;
                p.check(p1 == g.a1.mul_vec(&e.value.x) && p2 == g.a2.mul_vec(&e.value.y), || {
                    format!("trial {t}: projections of chart {} -> {j} do not intertwine", e.chart)
                });
            }
        }
        Ok(())
    });
    run.prop("pairing_chart_independent", |p, r| {
        let dual = rep.dual();
        let dd = dual.dims(&pc.group)?;
        for t in 0..n {
            let (home, target) = (r.gen_range(0..charts), r.gen_range(0..charts));
            let v = elem(r, home);
            let mut w = sample::element::<Rational, _>(r, dd);
            w.x = v.value.x.clone();
            let eta = AssocElement::new(home, w);
            let base = assoc_pair(&pc, &rep, &v, &eta)?;
            let moved_eta = assoc_pair(&pc, &rep, &v, &to_chart(&pc, &dual, &eta, target)?)?;
            let moved_v = assoc_pair(&pc, &rep, &to_chart(&pc, &rep, &v, target)?, &eta)?;
            p.check(base == moved_eta && base == moved_v, || format!("trial {t}: pairing depends on the chart"));
        }
        Ok(())
    });
    run.prop("interchange_on_fibers", |p, r| {
        for t in 0..n {
            let home = r.gen_range(0..charts);
            let (x1, x2) = (sample::vector::<Rational, _>(r, d.n1), sample::vector(r, d.n1));
            let (y1, y2) = (sample::vector::<Rational, _>(r, d.n2), sample::vector(r, d.n2));
            let mut mk = |x: &Vec<Rational>, y: &Vec<Rational>| {
                AssocElement::new(home, DvsElement::new(x.clone(), y.clone(), sample::vector(r, d.n0)))
            };
            let (u, v, w, s) = (mk(&x1, &y1), mk(&x1, &y2), mk(&x2, &y1), mk(&x2, &y2));
            let op = |side, a: &AssocElement<Rational>, b: &AssocElement<Rational>| assoc_fiber_op(&pc, &rep, side, a, b);
            let lhs = op(Side::II, &op(Side::I, &u, &v)?, &op(Side::I, &w, &s)?)?;
            let rhs = op(Side::I, &op(Side::II, &u, &w)?, &op(Side::II, &v, &s)?)?;
            p.check(lhs == rhs, || format!("trial {t}: interchange law fails on the fibers over chart {home}"));
        }
        Ok(())
    });
    run.prop("core_preserved", |p, r| {
        for t in 0..n {
            let e = AssocElement::new(r.gen_range(0..charts), DvsElement::core(sample::vector(r, d.n0), d));
            for j in 0..charts {
                let m = to_chart(&pc, &rep, &e, j)?;
                p.check(m.value.is_core(), || format!("trial {t}: core element leaves the core in chart {j}"));
            }
        }
        Ok(())
    });
    Ok((d, run.finish()))
}

fn dla_fixtures(cfg: &SuiteConfig) -> Result<Vec<(String, LieAlgebraSpec, LieAlgebraSpec, DoubleModule)>, CliError> {
    let Some(v) = fixture(cfg) else {
        return Ok(double_fixtures());
    };
    let g1 = json::lie_from_json(json::field(v, "g1").map_err(CliError::input)?).map_err(CliError::input)?;
    let g2 = json::lie_from_json(json::field(v, "g2").map_err(CliError::input)?).map_err(CliError::input)?;
    let module = parse_double_module(v, &g1, &g2)?;
    Ok(vec![("input".into(), g1, g2, module)])
}

/// `rho1`, `rho2` action lists (trivial when absent) on a carrier of size
/// `module_dim`.
pub fn parse_double_module(v: &Value, g1: &LieAlgebraSpec, g2: &LieAlgebraSpec) -> Result<DoubleModule, CliError> {
    let m = match v.get("module_dim") {
        Some(m) => Some(json::usize_of(m).map_err(CliError::input)?),
        None => None,
    };
    let side = |key: &str, g: &LieAlgebraSpec| match v.get(key) {
        Some(a) => json::module_from_json(a, g, m).map(Some),
        None => Ok(None),
    };
    let rho1 = side("rho1", g1).map_err(CliError::input)?;
    let rho2 = side("rho2", g2).map_err(CliError::input)?;
    let dim = m.or(rho1.as_ref().map(|r| r.dim)).or(rho2.as_ref().map(|r| r.dim)).unwrap_or(1);
    let rho1 = rho1.unwrap_or_else(|| doublevec::dla::ModuleSpec::trivial(g1, dim));
    let rho2 = rho2.unwrap_or_else(|| doublevec::dla::ModuleSpec::trivial(g2, dim));
    DoubleModule::new(g1, g2, rho1, rho2).map_err(CliError::input)
}

fn dla_suite(cfg: &SuiteConfig) -> Result<Vec<PropertyOutcome>, CliError> {
    let fixtures = dla_fixtures(cfg)?;
    let n = cfg.trials;
    let mut run = Runner::new(cfg.seed);
    run.prop("d_squared_zero", |p, r| {
        for (name, g1, g2, module) in &fixtures {
            let total = g1.direct_sum(g2);
            let rho = module.total();
            for degree in 0..=1 {
                for t in 0..n.min(20) {
                    let c = random_cochain(r, degree, total.dim, rho.dim);
                    let dd = ce_differential(&total, &rho, &ce_differential(&total, &rho, &c)?)?;
                    p.check(dd.is_zero(), || format!("{name}, degree {degree}, trial {t}: d(dc) != 0"));
                }
            }
        }
        Ok(())
    });
    run.prop("split_criterion_equivalence", |p, r| {
        for (name, g1, g2, module) in &fixtures {
            let total = g1.direct_sum(g2);
            let rho = module.total();
            let basis = cocycle_basis(&total, &rho, 2)?;
            for t in 0..n {
                let c = if t % 2 == 0 {
                    random_combination(r, &basis, 2, total.dim, rho.dim)
                } else {
                    random_cochain(r, 2, total.dim, rho.dim)
                };
                let split = split_cocycle_check(g1, g2, module, &c)?.all_pass();
                let closed = ce_differential(&total, &rho, &c)?.is_zero();
                p.check(split == closed, || format!("{name}, trial {t}: split criterion {split}, d omega = 0 is {closed}"));
            }
        }
        Ok(())
    });
    run.prop("built_algebra_jacobi", |p, r| {
        for (name, g1, g2, module) in &fixtures {
            let total = g1.direct_sum(g2);
            let basis = cocycle_basis(&total, &module.total(), 2)?;
            for t in 0..n.min(10) {
                let c = random_combination(r, &basis, 2, total.dim, module.dim());
                let alg = build_double_algebra(g1, g2, module, &c)?;
                let j = jacobi_check(&alg.lie);
                p.check(j.all_pass(), || format!("{name}, trial {t}: {:?}", j.failures().next()));
            }
        }
        Ok(())
    });
    run.prop("exactness", |p, r| {
        for (name, g1, g2, module) in &fixtures {
            let total = g1.direct_sum(g2);
            let basis = cocycle_basis(&total, &module.total(), 2)?;
            let c = random_combination(r, &basis, 2, total.dim, module.dim());
            let alg = build_double_algebra(g1, g2, module, &c)?;
            let ex = alg.exactness_check(g1, g2);
            p.check(ex.all_pass(), || format!("{name}: {:?}", ex.failures().next()));
        }
        Ok(())
    });
    run.prop("core_central_iff_trivial_action", |p, r| {
        for (name, g1, g2, module) in &fixtures {
            let total = g1.direct_sum(g2);
            let basis = cocycle_basis(&total, &module.total(), 2)?;
            let c = random_combination(r, &basis, 2, total.dim, module.dim());
            let alg = build_double_algebra(g1, g2, module, &c)?;
            let trivial = module.total().is_trivial();
            p.check(alg.core_is_central() == trivial, || format!("{name}: core central {}, action trivial {trivial}", alg.core_is_central()));
        }
        Ok(())
    });
    Ok(run.finish())
}

fn vectors(v: &Value, key: &str) -> Result<Vec<Vec<Rational>>, CliError> {
    let arr = json::field(v, key).map_err(CliError::input)?;
    arr.as_array()
        .ok_or_else(|| CliError::Input(format!("`{key}` must be a list of vectors")))?
        .iter()
        .map(|x| json::vec_from_json(x).map_err(CliError::input))
        .collect()
}

fn connections_suite(cfg: &SuiteConfig) -> Result<Vec<PropertyOutcome>, CliError> {
    let mut run = Runner::new(cfg.seed);
    if let Some(v) = fixture(cfg) {
        let lie = json::lie_from_json(json::field(v, "constants").map_err(CliError::input)?).map_err(CliError::input)?;
        let s1 = json::usize_of(json::field(v, "side1").map_err(CliError::input)?).map_err(CliError::input)?;
        let s2 = json::usize_of(json::field(v, "side2").map_err(CliError::input)?).map_err(CliError::input)?;
        let amb = AmbientAlgebra::new(lie, s1, s2).map_err(CliError::input)?;
        if let Some(s) = v.get("splitting") {
            let m = json::matrix_from_json(s, amb.dim(), amb.quotient_dim()).map_err(CliError::input)?;
            let rep = splitting_connection_check(&amb, &SplittingMap { matrix: m }).map_err(CliError::op)?;
            for c in rep.checks {
                run.out.insert(c.name.clone(), c);
            }
        }
        if v.get("h1").is_some() || v.get("h2").is_some() {
            let h1 = SubspaceSpec::from_span(amb.dim(), vectors(v, "h1")?).map_err(CliError::input)?;
            let h2 = SubspaceSpec::from_span(amb.dim(), vectors(v, "h2")?).map_err(CliError::input)?;
            match dlg_connection_check(&amb, &h1, &h2) {
                Ok(rep) => {
                    for c in rep.checks {
                        run.out.insert(c.name.clone(), c);
                    }
                }
                Err(e) => run.prop("preconditions", |_, _| Err(e)),
            }
        }
        if run.out.is_empty() {
            return Err(CliError::Input("connections fixture needs `splitting` or `h1`/`h2`".into()));
        }
        return Ok(run.finish());
    }
    let n = cfg.trials;
    run.prop("trivial_product_sections_pass", |p, r| {
        let amb = AmbientAlgebra::abelian(cfg.dims.n1, cfg.dims.n2, cfg.dims.n0);
        for t in 0..n.min(50) {
            let s = random_section(r, &amb);
            let rep = splitting_connection_check(&amb, &s)?;
            p.check(rep.all_pass(), || format!("trial {t}: {:?}", rep.failures().next()));
        }
        Ok(())
    });
    run.prop("aut_canonical_core_condition_fails", |p, _| {
        let amb = AmbientAlgebra::aut(Dims::new(1, 1, 1));
        let rep = splitting_connection_check(&amb, &SplittingMap::canonical(&amb))?;
        let core = rep.get("core_condition").expect("reported");
        let sides = rep.get("sides_condition").expect("reported");
        p.check(!core.pass, || "the core condition unexpectedly holds".into());
        p.check(sides.pass, || format!("the sides condition unexpectedly fails: {:?}", sides.counterexample));
        Ok(())
    });
    run.prop("complement_rank_consistency", |p, r| {
        for t in 0..n {
            let dim = r.gen_range(2..=5);
            let k = r.gen_range(0..=dim);
            let h = SubspaceSpec::from_span(dim, (0..k).map(|_| sample::vector(r, dim)).collect())?;
            let kk = SubspaceSpec::from_span(dim, (0..dim - k).map(|_| sample::vector(r, dim)).collect())?;
            let rep = complement_check(&h, &kk)?;
            let meet = rep.get("trivial_intersection").expect("reported").pass;
            let spans = rep.get("spans_ambient").expect("reported").pass;
            let all: Vec<_> = h.basis.iter().chain(&kk.basis).cloned().collect();
            p.check(spans == (rank(&all) == dim), || format!("trial {t}: span test disagrees with rank"));
            if meet && h.dim() + kk.dim() == dim {
                p.check(spans, || format!("trial {t}: complementary dimensions and trivial meet, yet no span"));
            }
        }
        Ok(())
    });
    run.prop("splitting_basis_independence", |p, r| {
        let ambients = [AmbientAlgebra::aut(Dims::new(1, 1, 1)), AmbientAlgebra::abelian(1, 1, 1), AmbientAlgebra::aut(Dims::new(1, 1, 2))];
        for t in 0..n.min(60) {
            let amb = &ambients[t % ambients.len()];
            let s = random_section(r, amb);
            let base = splitting_connection_check(amb, &s)?;
            let q = amb.quotient_dim();
            let mix = |r: &mut ChaCha8Rng, cols: std::ops::Range<usize>| {
                let gens: Vec<_> = cols.clone().map(|c| s.image(c)).collect();
                let pm = sample::invertible::<Rational, _>(r, gens.len());
                (0..gens.len())
                    .map(|j| {
                        let mut v = vec![Rational::from_i64(0); amb.dim()];
                        for (i, g) in gens.iter().enumerate() {
                            for (vk, gk) in v.iter_mut().zip(g) {
                                *vk = vk.clone() + pm.get(i, j).clone() * gk.clone();
                            }
                        }
                        v
                    })
                    .collect::<Vec<_>>()
            };
            let g1 = mix(r, 0..amb.side1);
            let g2 = mix(r, amb.side1..q);
            let changed = splitting_span_check(amb, &g1, &g2);
            for name in ["core_condition", "sides_condition", "connection"] {
                let (a, b) = (base.get(name).expect("reported").pass, changed.get(name).expect("reported").pass);
                p.check(a == b, || format!("trial {t}: {name} changes under a change of basis"));
            }
        }
        Ok(())
    });
    Ok(run.finish())
}

/// Identity on the quotient coordinates, random entries elsewhere.
fn random_section(r: &mut ChaCha8Rng, amb: &AmbientAlgebra) -> SplittingMap {
    let mut s = SplittingMap::canonical(amb);
    for c in 0..amb.quotient_dim() {
        for row in amb.quotient_dim()..amb.dim() {
            s.matrix.set(row, c, sample::scalar(r));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(d: Dims) -> SuiteConfig {
        SuiteConfig { dims: d, trials: 20, seed: 7, scalar: ScalarKind::Rational, tol: 1e-9, fixture: None }
    }

    #[test]
    fn generated_suites_pass() {
        for s in SUITES {
            let rep = run_suite(s, &cfg(Dims::new(2, 1, 1))).unwrap();
            assert!(rep.all_pass(), "{s}: {:?}", rep.properties.iter().find(|p| !p.pass));
        }
    }

    #[test]
    fn float_suites_pass() {
        let mut c = cfg(Dims::new(2, 2, 2));
        c.scalar = ScalarKind::Float;
        for s in ["aut", "dual", "frames"] {
            let rep = run_suite(s, &c).unwrap();
            assert!(rep.all_pass(), "{s}: {:?}", rep.properties.iter().find(|p| !p.pass));
        }
        assert!(matches!(run_suite("dla", &c), Err(CliError::Input(_))));
    }

    #[test]
    fn properties_are_sorted_and_deterministic() {
        let a = run_suite("aut", &cfg(Dims::new(1, 1, 1))).unwrap();
        let b = run_suite("aut", &cfg(Dims::new(1, 1, 1))).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        let names: Vec<_> = a.properties.iter().map(|p| p.name.clone()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
    }

    #[test]
    fn per_property_streams_differ() {
        use rand::RngCore;
        assert_ne!(property_rng(1, "a").next_u64(), property_rng(1, "b").next_u64());
        assert_eq!(property_rng(1, "a").next_u64(), property_rng(1, "a").next_u64());
    }

    #[test]
    fn unknown_suite_is_input_error() {
        assert!(matches!(run_suite("nope", &cfg(Dims::new(1, 1, 1))), Err(CliError::Input(_))));
    }
}
