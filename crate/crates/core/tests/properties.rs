use doublevec::algebra::{der_bracket, der_exp, triangle_action, DvsDer};
use doublevec::aut::{aut_apply, aut_compose, aut_factor, aut_inverse, in_k1, in_k2, DvsAut};
use doublevec::dvs::{dvs_add, dvs_scale, Dims, DvsElement, Side};
use doublevec::linalg::{vadd, Matrix};
use doublevec::sample;
use doublevec::scalar::{Rational, Scalar};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn dims() -> impl Strategy<Value = Dims> {
    (1usize..=3, 1usize..=3, 1usize..=2).prop_map(|(a, b, c)| Dims::new(a, b, c))
}

fn q(n: i64) -> Rational {
    Rational::from_i64(n)
}

mod dvs {
    use super::*;
    use doublevec::dvs::{section_eval, splitting_translate, decomposition_transition, LinearSection, Section, Splitting};

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn interchange_law(seed: u64, d in dims()) {
            let mut r = rng(seed);
            let (x1, x2) = (sample::vector::<Rational, _>(&mut r, d.n1), sample::vector(&mut r, d.n1));
            let (y1, y2) = (sample::vector::<Rational, _>(&mut r, d.n2), sample::vector(&mut r, d.n2));
            let mut z = || sample::vector::<Rational, _>(&mut r, d.n0);
            let u = DvsElement::new(x1.clone(), y1.clone(), z());
            let v = DvsElement::new(x1, y2.clone(), z());
            let w = DvsElement::new(x2.clone(), y1, z());
            let t = DvsElement::new(x2, y2, z());
            let lhs = dvs_add(Side::II, &dvs_add(Side::I, &u, &v).unwrap(), &dvs_add(Side::I, &w, &t).unwrap()).unwrap();
            let rhs = dvs_add(Side::I, &dvs_add(Side::II, &u, &w).unwrap(), &dvs_add(Side::II, &v, &t).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn core_closure(seed: u64, d in dims()) {
            let mut r = rng(seed);
            let a = DvsElement::core(sample::vector::<Rational, _>(&mut r, d.n0), d);
            let b = DvsElement::core(sample::vector::<Rational, _>(&mut r, d.n0), d);
            let c: Rational = sample::scalar(&mut r);
            let s1 = dvs_add(Side::I, &a, &b).unwrap();
            prop_assert!(s1.is_core());
            prop_assert_eq!(&s1, &dvs_add(Side::II, &a, &b).unwrap());
            prop_assert_eq!(dvs_scale(Side::I, &c, &a), dvs_scale(Side::II, &c, &a));
        }

        #[test]
        fn fiber_vector_space_axioms(seed: u64, d in dims()) {
            let mut r = rng(seed);
            let x = sample::vector::<Rational, _>(&mut r, d.n1);
            let mut e = || DvsElement::new(x.clone(), sample::vector(&mut r, d.n2), sample::vector(&mut r, d.n0));
            let (u, v) = (e(), e());
            let zero = DvsElement::zero_over_first(x.clone(), d);
            prop_assert_eq!(dvs_add(Side::I, &u, &zero).unwrap(), u.clone());
            let (a, b) = (q(2), Rational::from_ratio(-1, 3));
            let lhs = dvs_scale(Side::I, &(a.clone() + b.clone()), &u);
            let rhs = dvs_add(Side::I, &dvs_scale(Side::I, &a, &u), &dvs_scale(Side::I, &b, &u)).unwrap();
            prop_assert_eq!(lhs, rhs);
            let lhs = dvs_scale(Side::I, &a, &dvs_add(Side::I, &u, &v).unwrap());
            let rhs = dvs_add(Side::I, &dvs_scale(Side::I, &a, &u), &dvs_scale(Side::I, &a, &v)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn splittings_form_a_torsor(seed: u64, d in dims()) {
            let mut r = rng(seed);
            let a = Splitting::new(sample::bilinear::<Rational, _>(&mut r, d));
            let b = Splitting::new(sample::bilinear::<Rational, _>(&mut r, d));
            let m = decomposition_transition(&a, &b).unwrap();
            prop_assert_eq!(splitting_translate(&a, &m).unwrap(), b);
            let zero = doublevec::BilinearMap::zeros(d.n0, d.n1, d.n2);
            prop_assert_eq!(splitting_translate(&a, &zero).unwrap(), a.clone());
            let m2 = sample::bilinear::<Rational, _>(&mut r, d);
            if !m2.is_zero() {
                prop_assert_ne!(splitting_translate(&a, &m2).unwrap(), a);
            }
        }

        #[test]
        fn linear_sections_are_linear(seed: u64, d in dims()) {
            let mut r = rng(seed);
            let s = Section::Linear(LinearSection {
                base: sample::vector::<Rational, _>(&mut r, d.n1),
                slope: sample::matrix(&mut r, d.n0, d.n2),
            });
            let (y, y2) = (sample::vector::<Rational, _>(&mut r, d.n2), sample::vector(&mut r, d.n2));
            let c: Rational = sample::scalar(&mut r);
            let sum = section_eval(&s, &vadd(&y, &y2)).unwrap();
            let added = dvs_add(Side::I, &section_eval(&s, &y).unwrap(), &section_eval(&s, &y2).unwrap()).unwrap();
            prop_assert_eq!(sum, added);
            let scaled = section_eval(&s, &doublevec::linalg::vscale(&c, &y)).unwrap();
            prop_assert_eq!(scaled, dvs_scale(Side::I, &c, &section_eval(&s, &y).unwrap()));
        }
    }
}

mod aut_group {
    use super::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn group_axioms(seed: u64, d in dims()) {
            let mut r = rng(seed);
            let a = sample::aut::<Rational, _>(&mut r, d);
            let b = sample::aut::<Rational, _>(&mut r, d);
            let c = sample::aut::<Rational, _>(&mut r, d);
            let ab_c = aut_compose(&aut_compose(&a, &b).unwrap(), &c).unwrap();
            let a_bc = aut_compose(&a, &aut_compose(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            let e = DvsAut::identity(d);
            prop_assert_eq!(aut_compose(&a, &e).unwrap(), a.clone());
            prop_assert_eq!(aut_compose(&e, &a).unwrap(), a.clone());
            prop_assert!(aut_compose(&a, &aut_inverse(&a).unwrap()).unwrap().is_identity());
            prop_assert!(aut_compose(&aut_inverse(&a).unwrap(), &a).unwrap().is_identity());
        }

        #[test]
        fn action_is_faithful(seed: u64, d in dims()) {
            let mut r = rng(seed);
            let a = sample::aut::<Rational, _>(&mut r, d);
            let b = sample::aut::<Rational, _>(&mut r, d);
            let v = sample::element(&mut r, d);
            let lhs = aut_apply(&aut_compose(&a, &b).unwrap(), &v).unwrap();
            let rhs = aut_apply(&a, &aut_apply(&b, &v).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn factorization(seed: u64, d in dims()) {
            let mut r = rng(seed);
            let a = sample::aut::<Rational, _>(&mut r, d);
            let (k1, k2) = aut_factor(&a).unwrap();
            prop_assert!(in_k1(&k1));
            prop_assert!(in_k2(&k2));
            prop_assert_eq!(aut_compose(&k1, &k2).unwrap(), a);
        }

        #[test]
        fn linear_on_both_fibers(seed: u64, d in dims()) {
            let mut r = rng(seed);
            let a = sample::aut::<Rational, _>(&mut r, d);
            let x = sample::vector::<Rational, _>(&mut r, d.n1);
            let y = sample::vector::<Rational, _>(&mut r, d.n2);
            let u = DvsElement::new(x.clone(), sample::vector(&mut r, d.n2), sample::vector(&mut r, d.n0));
            let v = DvsElement::new(x, sample::vector(&mut r, d.n2), sample::vector(&mut r, d.n0));
            let lhs = aut_apply(&a, &dvs_add(Side::I, &u, &v).unwrap()).unwrap();
            let rhs = dvs_add(Side::I, &aut_apply(&a, &u).unwrap(), &aut_apply(&a, &v).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            let u = DvsElement::new(sample::vector(&mut r, d.n1), y.clone(), sample::vector(&mut r, d.n0));
            let v = DvsElement::new(sample::vector(&mut r, d.n1), y, sample::vector(&mut r, d.n0));
            let lhs = aut_apply(&a, &dvs_add(Side::II, &u, &v).unwrap()).unwrap();
            let rhs = dvs_add(Side::II, &aut_apply(&a, &u).unwrap(), &aut_apply(&a, &v).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}

mod aut_algebra {
    use super::*;

    fn close(a: &DvsAut<f64>, b: &DvsAut<f64>, tol: f64) -> bool {
        a.distance(b) <= tol * (1.0 + a.a0.max_abs().max(a.mu.max_abs()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn jacobi(seed: u64, d in dims()) {
            let mut r = rng(seed);
            let x = sample::der::<Rational, _>(&mut r, d);
            let y = sample::der::<Rational, _>(&mut r, d);
            let z = sample::der::<Rational, _>(&mut r, d);
            let b = |p: &DvsDer<Rational>, q: &DvsDer<Rational>| der_bracket(p, q).unwrap();
            let sum = b(&x, &b(&y, &z)).add(&b(&y, &b(&z, &x))).add(&b(&z, &b(&x, &y)));
            prop_assert!(sum.is_zero());
            prop_assert!(b(&x, &y).add(&b(&y, &x)).is_zero());
        }

        #[test]
        fn bracket_projects_to_commutators(seed: u64, d in dims()) {
            let mut r = rng(seed);
            let x = sample::der::<Rational, _>(&mut r, d);
            let y = sample::der::<Rational, _>(&mut r, d);
            let b = der_bracket(&x, &y).unwrap();
            prop_assert_eq!(b.a1, x.a1.commutator(&y.a1));
            prop_assert_eq!(b.a2, x.a2.commutator(&y.a2));
        }

        #[test]
        fn triangle_is_an_action(seed: u64, d in dims()) {
            let mut r = rng(seed);
            let x = sample::der::<Rational, _>(&mut r, d);
            let y = sample::der::<Rational, _>(&mut r, d);
            let nu = sample::bilinear::<Rational, _>(&mut r, d);
            let act = |p: &DvsDer<Rational>, n: &doublevec::BilinearMap<Rational>| triangle_action(&p.a1, &p.a2, &p.a0, n).unwrap();
            let xy = DvsDer { a1: x.a1.commutator(&y.a1), a2: x.a2.commutator(&y.a2), a0: x.a0.commutator(&y.a0), alpha: nu.clone() };
            let lhs = act(&xy, &nu);
            let rhs = act(&x, &act(&y, &nu)).sub(&act(&y, &act(&x, &nu)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn exp_one_parameter(seed: u64, d in dims(), s in -1.0f64..1.0, t in -1.0f64..1.0) {
            let mut r = rng(seed);
            let x = sample::float_der(&mut r, d);
            let es = der_exp(&x.scale(&s), 1e-9).unwrap();
            let et = der_exp(&x.scale(&t), 1e-9).unwrap();
            let est = der_exp(&x.scale(&(s + t)), 1e-9).unwrap();
            prop_assert!(close(&aut_compose(&es, &et).unwrap(), &est, 1e-9));
            let back = aut_compose(&est, &der_exp(&x.scale(&-(s + t)), 1e-9).unwrap()).unwrap();
            prop_assert!(close(&back, &DvsAut::identity(d), 1e-9));
        }
    }
}

mod duality {
    use super::*;
    use doublevec::duality::{dual_rep, f_dual, f_dual_inverse, pair};

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn anti_homomorphism(seed: u64, d in dims()) {
            let mut r = rng(seed);
            let a = sample::aut::<Rational, _>(&mut r, d);
            let b = sample::aut::<Rational, _>(&mut r, d);
            let lhs = f_dual(&aut_compose(&a, &b).unwrap()).unwrap();
            let rhs = aut_compose(&f_dual(&b).unwrap(), &f_dual(&a).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert!(f_dual(&DvsAut::<Rational>::identity(d)).unwrap().is_identity());
        }

        #[test]
        fn bijective(seed: u64, d in dims()) {
            let mut r = rng(seed);
            let a = sample::aut::<Rational, _>(&mut r, d);
            prop_assert_eq!(f_dual_inverse(&f_dual(&a).unwrap()).unwrap(), a.clone());
            let b = sample::aut::<Rational, _>(&mut r, d.dual());
            prop_assert_eq!(f_dual(&f_dual_inverse(&b).unwrap()).unwrap(), b);
        }

        #[test]
        fn pairing_invariance(seed: u64, d in dims()) {
            let mut r = rng(seed);
            let g = sample::aut::<Rational, _>(&mut r, d);
            let v = sample::element::<Rational, _>(&mut r, d);
            let mut w = sample::element::<Rational, _>(&mut r, d.dual());
            w.x = v.x.clone();
            let gv = aut_apply(&g, &v).unwrap();
            let gw = aut_apply(&dual_rep(&g).unwrap(), &w).unwrap();
            prop_assert_eq!(pair(&gv, &gw).unwrap(), pair(&v, &w).unwrap());
        }

        #[test]
        fn kernel_classes(seed: u64, d in dims()) {
            let mut r = rng(seed);
            let mut a = sample::aut::<Rational, _>(&mut r, d);
            a.a1 = Matrix::identity(d.n1);
            prop_assert!(in_k1(&f_dual(&a).unwrap()));
            let mut c = sample::core_aut::<Rational, _>(&mut r, d);
            c.a0 = Matrix::identity(d.n0);
            let fc = f_dual(&c).unwrap();
            prop_assert!(in_k1(&fc) && fc.a0.is_identity());
        }
    }
}

mod frames {
    use super::*;
    use doublevec::frames::{aut_to_frame, frame_act, frame_eval, frame_to_aut, frame_transition, Frame};

    fn frame(r: &mut ChaCha8Rng, d: Dims) -> Frame<Rational> {
        aut_to_frame(&sample::aut(r, d)).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn right_action(seed: u64, d in dims()) {
            let mut r = rng(seed);
            let f = frame(&mut r, d);
            let a = sample::aut::<Rational, _>(&mut r, d);
            let b = sample::aut::<Rational, _>(&mut r, d);
            prop_assert_eq!(frame_act(&f, &DvsAut::identity(d)).unwrap(), f.clone());
            let lhs = frame_act(&f, &aut_compose(&a, &b).unwrap()).unwrap();
            let rhs = frame_act(&frame_act(&f, &a).unwrap(), &b).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn free_and_transitive(seed: u64, d in dims()) {
            let mut r = rng(seed);
            let f = frame(&mut r, d);
            let g = frame(&mut r, d);
            let t = frame_transition(&f, &g).unwrap();
            prop_assert_eq!(frame_act(&f, &t).unwrap(), g);
            prop_assert!(frame_transition(&f, &f).unwrap().is_identity());
        }

        #[test]
        fn reconstruction_is_well_defined(seed: u64, d in dims()) {
            let mut r = rng(seed);
            let f = frame(&mut r, d);
            let a = sample::aut::<Rational, _>(&mut r, d);
            let xi = sample::element::<Rational, _>(&mut r, d);
            let moved = aut_apply(&aut_inverse(&a).unwrap(), &xi).unwrap();
            prop_assert_eq!(frame_eval(&f, &xi).unwrap(), frame_eval(&frame_act(&f, &a).unwrap(), &moved).unwrap());
        }

        #[test]
        fn eval_is_a_dvs_isomorphism(seed: u64, d in dims()) {
            let mut r = rng(seed);
            let f = frame(&mut r, d);
            let x = sample::vector::<Rational, _>(&mut r, d.n1);
            let u = DvsElement::new(x.clone(), sample::vector(&mut r, d.n2), sample::vector(&mut r, d.n0));
            let v = DvsElement::new(x, sample::vector(&mut r, d.n2), sample::vector(&mut r, d.n0));
            let lhs = frame_eval(&f, &dvs_add(Side::I, &u, &v).unwrap()).unwrap();
            let rhs = dvs_add(Side::I, &frame_eval(&f, &u).unwrap(), &frame_eval(&f, &v).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            let c = DvsElement::core(sample::vector::<Rational, _>(&mut r, d.n0), d);
            prop_assert!(frame_eval(&f, &c).unwrap().is_core());
            prop_assert_eq!(aut_to_frame(&frame_to_aut(&f)).unwrap(), f);
        }
    }
}

mod bundles {
    use super::*;
    use doublevec::bundles::{
        assoc_fiber_op, assoc_pair, assoc_project, assoc_scale, chart_change, holonomy, to_chart, transport,
        AssocElement, CoverGraph, PrincipalCocycle, RepSpec,
    };
    use doublevec::dlg::{DlgElement, DlgSpec};

    fn cover() -> impl Strategy<Value = CoverGraph> {
        prop_oneof![Just(CoverGraph::cycle(3)), Just(CoverGraph::complete(3)), Just(CoverGraph::cycle(4))]
    }

    fn bundle(r: &mut ChaCha8Rng, cover: CoverGraph, d: Dims) -> PrincipalCocycle<Rational> {
        let group = DlgSpec::aut(d);
        let h: Vec<_> = (0..cover.charts()).map(|_| DlgElement::Aut(sample::aut(r, d))).collect();
        PrincipalCocycle::from_potentials(cover, group, &h).unwrap()
    }

    fn elem(r: &mut ChaCha8Rng, pc: &PrincipalCocycle<Rational>, rep: &RepSpec) -> AssocElement<Rational> {
        let d = rep.dims(&pc.group).unwrap();
        AssocElement::new(r.gen_range(0..pc.cover.charts()), sample::element(r, d))
    }

    use rand::Rng;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn fiber_ops_are_chart_independent(seed: u64, c in cover(), d in dims(), side in prop_oneof![Just(Side::I), Just(Side::II)]) {
            let mut r = rng(seed);
            let pc = bundle(&mut r, c, d);
            let rep = RepSpec::Identity;
            let e1 = elem(&mut r, &pc, &rep);
            let mut e2 = to_chart(&pc, &rep, &elem(&mut r, &pc, &rep), e1.chart).unwrap();
            match side {
                Side::I => e2.value.x = e1.value.x.clone(),
                Side::II => e2.value.y = e1.value.y.clone(),
            }
            let target = r.gen_range(0..pc.cover.charts());
            let e2_elsewhere = to_chart(&pc, &rep, &e2, target).unwrap();
            let sum = assoc_fiber_op(&pc, &rep, side, &e1, &e2).unwrap();
            let sum2 = assoc_fiber_op(&pc, &rep, side, &e1, &e2_elsewhere).unwrap();
            prop_assert_eq!(&sum, &sum2);
            let e1_t = to_chart(&pc, &rep, &e1, target).unwrap();
            let sum_t = assoc_fiber_op(&pc, &rep, side, &e1_t, &e2_elsewhere).unwrap();
            prop_assert_eq!(to_chart(&pc, &rep, &sum, target).unwrap(), sum_t);
            let s: Rational = sample::scalar(&mut r);
            let scaled_t = assoc_scale(&pc, &rep, side, &s, &e1_t).unwrap();
            prop_assert_eq!(to_chart(&pc, &rep, &assoc_scale(&pc, &rep, side, &s, &e1).unwrap(), target).unwrap(), scaled_t);
        }

        #[test]
        fn projections_intertwine(seed: u64, c in cover(), d in dims()) {
            let mut r = rng(seed);
            let pc = bundle(&mut r, c, d);
            let rep = RepSpec::Identity;
            let e = elem(&mut r, &pc, &rep);
            for j in pc.cover.neighbors(e.chart).collect::<Vec<_>>() {
                let g = chart_change(&pc, &rep, e.chart, j).unwrap();
                let moved = to_chart(&pc, &rep, &e, j).unwrap();
                let (_, p1) = assoc_project(&pc, &rep, Side::I, &moved).unwrap();
                let (_, p2) = assoc_project(&pc, &rep, Side::II, &moved).unwrap();
                prop_assert_eq!(p1, g.a1.mul_vec(&e.value.x));
                prop_assert_eq!(p2, g.a2.mul_vec(&e.value.y));
            }
        }

        #[test]
        fn pairing_is_chart_independent(seed: u64, c in cover(), d in dims()) {
            let mut r = rng(seed);
            let pc = bundle(&mut r, c, d);
            let rep = RepSpec::Identity;
            let dual = rep.dual();
            let v = elem(&mut r, &pc, &rep);
            let mut eta = AssocElement::new(v.chart, sample::element(&mut r, d.dual()));
            eta.value.x = v.value.x.clone();
            let target = r.gen_range(0..pc.cover.charts());
            let eta_t = to_chart(&pc, &dual, &eta, target).unwrap();
            let v_t = to_chart(&pc, &rep, &v, target).unwrap();
            let p = assoc_pair(&pc, &rep, &v, &eta).unwrap();
            prop_assert_eq!(&assoc_pair(&pc, &rep, &v, &eta_t).unwrap(), &p);
            prop_assert_eq!(assoc_pair(&pc, &rep, &v_t, &eta).unwrap(), p);
        }

        #[test]
        fn interchange_on_fibers(seed: u64, c in cover(), d in dims()) {
            let mut r = rng(seed);
            let pc = bundle(&mut r, c, d);
            let rep = RepSpec::Identity;
            let chart = r.gen_range(0..pc.cover.charts());
            let (x1, x2) = (sample::vector::<Rational, _>(&mut r, d.n1), sample::vector(&mut r, d.n1));
            let (y1, y2) = (sample::vector::<Rational, _>(&mut r, d.n2), sample::vector(&mut r, d.n2));
            let mut mk = |x: &Vec<Rational>, y: &Vec<Rational>| {
                let e = AssocElement::new(chart, DvsElement::new(x.clone(), y.clone(), sample::vector(&mut r, d.n0)));
                let t = r.gen_range(0..pc.cover.charts());
                to_chart(&pc, &rep, &e, t).unwrap()
            };
            let (u, v, w, t) = (mk(&x1, &y1), mk(&x1, &y2), mk(&x2, &y1), mk(&x2, &y2));
            let op = |s, a: &AssocElement<Rational>, b: &AssocElement<Rational>| assoc_fiber_op(&pc, &rep, s, a, b).unwrap();
            let lhs = op(Side::II, &op(Side::I, &u, &v), &op(Side::I, &w, &t));
            let rhs = op(Side::I, &op(Side::II, &u, &w), &op(Side::II, &v, &t));
            let rhs = to_chart(&pc, &rep, &rhs, lhs.chart).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn core_stays_core(seed: u64, c in cover(), d in dims()) {
            let mut r = rng(seed);
            let pc = bundle(&mut r, c, d);
            let rep = RepSpec::Identity;
            let chart = r.gen_range(0..pc.cover.charts());
            let e = AssocElement::new(chart, DvsElement::core(sample::vector::<Rational, _>(&mut r, d.n0), d));
            for j in 0..pc.cover.charts() {
                let m = to_chart(&pc, &rep, &e, j).unwrap();
                prop_assert!(m.value.is_core());
            }
            let first = pc.cover.neighbors(chart).next();
            if let Some(j) = first {
                let g = chart_change(&pc, &rep, chart, j).unwrap();
                prop_assert_eq!(transport(&pc, &rep, &e, &[chart, j]).unwrap().value.z, g.a0.mul_vec(&e.value.z));
            }
        }

        #[test]
        fn holonomy_is_conjugated_by_base_change(seed: u64, d in dims()) {
            let mut r = rng(seed);
            // a cocycle on the 3-cycle without a triple condition can carry holonomy
            let cover = CoverGraph::cycle(3);
            let group = DlgSpec::aut(d);
            let t: std::collections::BTreeMap<_, _> =
                [(0, 1), (1, 2), (2, 0)].into_iter().map(|k| (k, DlgElement::Aut(sample::aut::<Rational, _>(&mut r, d)))).collect();
            let pc = PrincipalCocycle::new(cover, group, t).unwrap();
            let rep = RepSpec::Identity;
            let h0 = holonomy(&pc, &rep, &[0, 1, 2, 0]).unwrap();
            let h1 = holonomy(&pc, &rep, &[1, 2, 0, 1]).unwrap();
            let g10 = chart_change(&pc, &rep, 0, 1).unwrap();
            let lhs = aut_compose(&h1, &g10).unwrap();
            let rhs = aut_compose(&g10, &h0).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}

mod dla {
    use super::*;
    use doublevec::dla::{
        build_double_algebra, ce_differential, cocycle_basis, jacobi_check, random_cochain, random_combination,
        split_cocycle_check, DoubleModule, LieAlgebraSpec, ModuleSpec,
    };

    fn algebra() -> impl Strategy<Value = LieAlgebraSpec> {
        prop_oneof![
            Just(LieAlgebraSpec::abelian(1)),
            Just(LieAlgebraSpec::abelian(2)),
            Just(LieAlgebraSpec::aff1()),
            Just(LieAlgebraSpec::heisenberg()),
            Just(LieAlgebraSpec::sl2()),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn d_squared_is_zero(seed: u64, g in algebra(), degree in 0usize..=1, adjoint: bool) {
            let mut r = rng(seed);
            let module = if adjoint { ModuleSpec::adjoint(&g) } else { ModuleSpec::trivial(&g, 2) };
            let c = random_cochain(&mut r, degree, g.dim, module.dim);
            let dd = ce_differential(&g, &module, &ce_differential(&g, &module, &c).unwrap()).unwrap();
            prop_assert!(dd.is_zero());
        }

        #[test]
        fn split_criterion_matches_differential(seed: u64, g1 in algebra(), g2 in algebra(), cocycle: bool) {
            let mut r = rng(seed);
            let module = DoubleModule::trivial(&g1, &g2, 1);
            let total = g1.direct_sum(&g2);
            let rho = module.total();
            let n = total.dim;
            let c = if cocycle {
                let basis = cocycle_basis(&total, &rho, 2).unwrap();
                random_combination(&mut r, &basis, 2, n, 1)
            } else {
                random_cochain(&mut r, 2, n, 1)
            };
            let split = split_cocycle_check(&g1, &g2, &module, &c).unwrap().all_pass();
            let closed = ce_differential(&total, &rho, &c).unwrap().is_zero();
            prop_assert_eq!(split, closed);
            if cocycle {
                prop_assert!(closed);
            }
        }

        #[test]
        fn built_algebras_satisfy_jacobi(seed: u64, g1 in algebra(), g2 in algebra()) {
            let mut r = rng(seed);
            let module = DoubleModule::trivial(&g1, &g2, 1);
            let total = g1.direct_sum(&g2);
            let basis = cocycle_basis(&total, &module.total(), 2).unwrap();
            let c = random_combination(&mut r, &basis, 2, total.dim, 1);
            let d = build_double_algebra(&g1, &g2, &module, &c).unwrap();
            prop_assert!(jacobi_check(&d.lie).all_pass());
            prop_assert!(d.exactness_check(&g1, &g2).all_pass());
            prop_assert!(d.core_is_central());
        }

        #[test]
        fn nontrivial_action_moves_the_core(seed: u64, w in 1i64..4) {
            let mut r = rng(seed);
            let g1 = LieAlgebraSpec::abelian(1);
            let g2 = LieAlgebraSpec::abelian(1);
            let rho1 = ModuleSpec::character(&[q(w)]);
            let rho2 = ModuleSpec::trivial(&g2, 1);
            let module = DoubleModule::new(&g1, &g2, rho1, rho2).unwrap();
            let total = g1.direct_sum(&g2);
            let basis = cocycle_basis(&total, &module.total(), 2).unwrap();
            let c = random_combination(&mut r, &basis, 2, total.dim, 1);
            let d = build_double_algebra(&g1, &g2, &module, &c).unwrap();
            prop_assert!(jacobi_check(&d.lie).all_pass());
            prop_assert!(!d.core_is_central());
        }
    }
}

mod connections {
    use super::*;
    use doublevec::connections::{
        complement_check, splitting_connection_check, splitting_span_check, AmbientAlgebra, SplittingMap,
        SubspaceSpec,
    };
    use doublevec::linalg::rank;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn complement_rank_consistency(seed: u64, n in 2usize..=4) {
            let mut r = rng(seed);
            let k = n / 2;
            let h = SubspaceSpec::from_span(n, (0..k).map(|_| sample::vector(&mut r, n)).collect()).unwrap();
            let kk = SubspaceSpec::from_span(n, (0..n - k).map(|_| sample::vector(&mut r, n)).collect()).unwrap();
            let rep = complement_check(&h, &kk).unwrap();
            let trivial = rep.get("trivial_intersection").unwrap().pass;
            let spans = rep.get("spans_ambient").unwrap().pass;
            if trivial && h.dim() + kk.dim() == n {
                prop_assert!(spans);
            }
            let all: Vec<_> = h.basis.iter().chain(&kk.basis).cloned().collect();
            prop_assert_eq!(spans, rank(&all) == n);
        }

        #[test]
        fn splitting_check_is_basis_independent(seed: u64, n0 in 1usize..=2) {
            let mut r = rng(seed);
            let d = Dims::new(1, 1, n0);
            let amb = if seed % 2 == 0 { AmbientAlgebra::aut(d) } else { AmbientAlgebra::abelian(1, 1, n0) };
            let q = amb.quotient_dim();
            // a random section: identity on the quotient, random core part
            let mut s = SplittingMap::canonical(&amb);
            for c in 0..q {
                for row in q..amb.dim() {
                    s.matrix.set(row, c, sample::scalar(&mut r));
                }
            }
            let base = splitting_connection_check(&amb, &s).unwrap();
            let p1 = sample::invertible::<Rational, _>(&mut r, amb.side1);
            let p2 = sample::invertible::<Rational, _>(&mut r, amb.side2);
            let mix = |p: &Matrix<Rational>, cols: std::ops::Range<usize>| -> Vec<Vec<Rational>> {
                let gens: Vec<_> = cols.clone().map(|c| s.image(c)).collect();
                (0..p.cols())
                    .map(|j| {
                        let mut v = vec![Rational::from_i64(0); amb.dim()];
                        for (i, g) in gens.iter().enumerate() {
                            for (vk, gk) in v.iter_mut().zip(g) {
                                *vk = vk.clone() + p.get(i, j).clone() * gk.clone();
                            }
                        }
                        v
                    })
                    .collect()
            };
            let changed = splitting_span_check(&amb, &mix(&p1, 0..amb.side1), &mix(&p2, amb.side1..q));
            for name in ["core_condition", "sides_condition", "connection"] {
                prop_assert_eq!(base.get(name).unwrap().pass, changed.get(name).unwrap().pass);
            }
        }
    }
}
