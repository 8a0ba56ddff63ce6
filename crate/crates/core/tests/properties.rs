//! Algebraic laws checked on random inputs.

use std::cmp::Ordering;

use dcoset::action::GroupActionSpec;
use dcoset::cli::parse_poly;
use dcoset::fforacle::{enumerate_orbits, FpConfig, FpSet};
use dcoset::geometry::ConstructibleSet;
use dcoset::groebner::{groebner_basis, is_groebner_basis, normal_form, s_polynomial};
use dcoset::polyring::{
    rat, ratio, Assignment, Monomial, MonomialOrder, Polynomial, Rational, RationalPoint, Ring, Value,
};
use dcoset::scenarios::objects::{f_on_cone, punctured_cone, scaling_on_bottom, unipotent_on_mat};
use dcoset::Ideal;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

/// Fixed seed so runs are reproducible; PROPTEST_RNG_SEED overrides it.
fn config(cases: u32) -> ProptestConfig {
    let mut c = ProptestConfig::with_cases(cases);
    if std::env::var_os("PROPTEST_RNG_SEED").is_none() {
        c.rng_seed = RngSeed::Fixed(0x5eed_0001);
    }
    c
}

fn ring3(order: MonomialOrder) -> Ring {
    Ring::new(["x", "y", "z"], order).unwrap()
}

fn orders() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![
        Just(MonomialOrder::Lex),
        Just(MonomialOrder::GrevLex),
        Just(MonomialOrder::Block(vec![true, false, false])),
        Just(MonomialOrder::Block(vec![false, true, true])),
    ]
}

fn coeff() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=3).prop_map(|(n, d)| ratio(n, d))
}

fn term(max_deg: u32) -> impl Strategy<Value = (Vec<u32>, Rational)> {
    (prop::collection::vec(0..=max_deg, 3), coeff())
}

/// Random polynomial in x, y, z with each exponent at most `max_deg`.
fn poly(ring: Ring, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(term(max_deg), 0..=max_terms)
        .prop_map(move |ts| Polynomial::from_terms(&ring, ts.into_iter().map(|(e, c)| (Monomial::new(e), c))).unwrap())
}

/// Generators of total degree at most 3.
fn small_gens(ring: Ring) -> impl Strategy<Value = Vec<Polynomial>> {
    gens(ring, 3, 3)
}

/// Up to `max_gens` generators of up to `max_terms` terms, total degree at most 3.
fn gens(ring: Ring, max_gens: usize, max_terms: usize) -> impl Strategy<Value = Vec<Polynomial>> {
    let t =
        (prop::collection::vec(0u32..=3, 3), coeff()).prop_filter("degree ≤ 3", |(e, _)| e.iter().sum::<u32>() <= 3);
    prop::collection::vec(prop::collection::vec(t, 1..=max_terms), 1..=max_gens).prop_map(move |gs| {
        gs.into_iter()
            .map(|ts| Polynomial::from_terms(&ring, ts.into_iter().map(|(e, c)| (Monomial::new(e), c))).unwrap())
            .collect()
    })
}

fn point3() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-4i64..=4).prop_map(rat), 3)
}

fn mono() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u32..=3, 3).prop_map(Monomial::new)
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn ring_laws(f in poly(ring3(MonomialOrder::GrevLex), 2, 4),
                 g in poly(ring3(MonomialOrder::GrevLex), 2, 4),
                 h in poly(ring3(MonomialOrder::GrevLex), 2, 4)) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
        prop_assert_eq!(&f * &f.ring().one(), f.clone());
    }

    #[test]
    fn evaluation_is_a_homomorphism(f in poly(ring3(MonomialOrder::Lex), 2, 4),
                                    g in poly(ring3(MonomialOrder::Lex), 2, 4),
                                    p in point3()) {
        let ev = |q: &Polynomial| q.eval(&p).unwrap();
        prop_assert_eq!(ev(&(&f * &g)), ev(&f) * ev(&g));
        prop_assert_eq!(ev(&(&f + &g)), ev(&f) + ev(&g));
    }

    #[test]
    fn substitution_is_a_homomorphism(f in poly(ring3(MonomialOrder::GrevLex), 2, 3),
                                      g in poly(ring3(MonomialOrder::GrevLex), 2, 3),
                                      img in poly(ring3(MonomialOrder::GrevLex), 1, 3)) {
        let r = f.ring().clone();
        let mut a = Assignment::new();
        a.insert("x".into(), Value::Poly(img));
        a.insert("y".into(), Value::Rational(ratio(2, 3)));
        let s = |q: &Polynomial| q.substitute(&a, &r).unwrap();
        prop_assert_eq!(s(&(&f * &g)), &s(&f) * &s(&g));
        prop_assert_eq!(s(&(&f - &g)), &s(&f) - &s(&g));
    }

    #[test]
    fn monomial_orders_are_admissible(order in orders(), a in mono(), b in mono(), c in mono()) {
        let ab = order.compare(&a, &b);
        prop_assert_eq!(ab, order.compare(&b, &a).reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        if ab != Ordering::Greater && order.compare(&b, &c) != Ordering::Greater {
            prop_assert_ne!(order.compare(&a, &c), Ordering::Greater);
        }
        prop_assert_eq!(order.compare(&a.mul(&c), &b.mul(&c)), ab);
        prop_assert_ne!(order.compare(&Monomial::one(3), &a), Ordering::Greater);
    }

    #[test]
    fn parse_print_round_trip(f in poly(ring3(MonomialOrder::GrevLex), 3, 5)) {
        let again = parse_poly(&f.to_string(), f.ring()).unwrap();
        prop_assert_eq!(again, f);
    }
}

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn groebner_basis_properties(order in orders(), gens in small_gens(ring3(MonomialOrder::GrevLex))) {
        let r = ring3(order.clone());
        let gens: Vec<Polynomial> = gens.iter().map(|g| g.with_order(&order)).collect();
        let gb = groebner_basis(&gens);
        prop_assert!(is_groebner_basis(&gb));
        for (i, f) in gb.iter().enumerate() {
            for g in &gb[i + 1..] {
                prop_assert!(normal_form(&s_polynomial(f, g), &gb).is_zero());
            }
        }
        let mut rev = gens.clone();
        rev.reverse();
        prop_assert_eq!(groebner_basis(&rev), gb.clone());
        // membership is consistent with the generators
        let ideal = Ideal::new(&r, gens.clone()).unwrap();
        for g in &gens {
            prop_assert!(ideal.member(g).unwrap());
            prop_assert!(ideal.member(&(g * &r.var("x").unwrap())).unwrap());
        }
    }

    #[test]
    fn elimination_is_sound(gens in small_gens(ring3(MonomialOrder::GrevLex))) {
        let r = ring3(MonomialOrder::GrevLex);
        let ideal = Ideal::new(&r, gens).unwrap();
        let elim = ideal.eliminate(&["x"]).unwrap();
        for g in elim.generators() {
            prop_assert!(g.support_vars().iter().all(|&i| elim.ring().vars()[i] != "x"));
            prop_assert!(ideal.member(&g.embed(&r).unwrap()).unwrap());
        }
    }

    #[test]
    fn saturation_is_extensive_and_idempotent(gens in small_gens(ring3(MonomialOrder::GrevLex))) {
        let r = ring3(MonomialOrder::GrevLex);
        let ideal = Ideal::new(&r, gens).unwrap();
        let x = r.var("x").unwrap();
        let sat = ideal.saturate(&x).unwrap();
        prop_assert!(sat.contains_ideal(&ideal).unwrap());
        prop_assert!(sat.saturate(&x).unwrap().equals(&sat).unwrap());
    }

    #[test]
    // Sparse inputs: set operations nest several eliminations and exact
    // coefficients can grow quickly on dense random ideals.
    fn constructible_boolean_laws(a in gens(ring3(MonomialOrder::GrevLex), 2, 2),
                                  b in gens(ring3(MonomialOrder::GrevLex), 2, 2),
                                  p in point3()) {
        let r = ring3(MonomialOrder::GrevLex);
        let x = r.var("x").unwrap();
        let sa = ConstructibleSet::locally_closed(Ideal::new(&r, a).unwrap(), Ideal::new(&r, [x]).unwrap()).unwrap();
        let sb = ConstructibleSet::closed(Ideal::new(&r, b).unwrap());
        let u = sa.union(&sb).unwrap();
        let i = sa.intersection(&sb).unwrap();
        let d = sa.difference(&sb).unwrap();
        prop_assert!(u.set_equals(&sb.union(&sa).unwrap()).unwrap());
        prop_assert!(u.contains(&sa).unwrap() && u.contains(&sb).unwrap());
        prop_assert!(sa.contains(&i).unwrap());
        prop_assert!(d.intersection(&sb).unwrap().is_empty().unwrap());
        prop_assert!(d.union(&i).unwrap().set_equals(&sa).unwrap());
        let q = RationalPoint::from_coords(p);
        let (ia, ib) = (sa.contains_point(&q).unwrap(), sb.contains_point(&q).unwrap());
        prop_assert_eq!(u.contains_point(&q).unwrap(), ia || ib);
        prop_assert_eq!(i.contains_point(&q).unwrap(), ia && ib);
        prop_assert_eq!(d.contains_point(&q).unwrap(), ia && !ib);
        prop_assert_eq!(sa.complement().unwrap().contains_point(&q).unwrap(), !ia);
    }
}

fn rat_pt(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-6i64..=6, 1i64..=3).prop_map(|(a, b)| ratio(a, b)), n)
}

fn nonzero() -> impl Strategy<Value = Rational> {
    (1i64..=6, 1i64..=3, any::<bool>()).prop_map(|(a, b, neg)| ratio(if neg { -a } else { a }, b))
}

/// Torus parameters `(s, 1/s)`.
fn torus(s: Rational) -> Vec<Rational> {
    let u = ratio(1, 1) / &s;
    vec![s, u]
}

proptest! {
    #![proptest_config(config(50))]

    #[test]
    fn invariants_hold_on_samples(l in rat_pt(1), x in rat_pt(4), s in nonzero()) {
        let u = unipotent_on_mat();
        let p = RationalPoint::from_coords(x.clone());
        let moved = u.apply(&l, &p).unwrap();
        let det = |q: &RationalPoint| &q.coords()[0] * &q.coords()[3] - &q.coords()[1] * &q.coords()[2];
        prop_assert_eq!(det(&moved), det(&p));
        prop_assert_eq!(&moved.coords()[2..], &p.coords()[2..]);

        let f = f_on_cone();
        let m = f.apply(&l, &p).unwrap();
        prop_assert_eq!(&m.coords()[1], &p.coords()[1]);
        prop_assert_eq!(&m.coords()[3], &p.coords()[3]);

        let sc = scaling_on_bottom();
        let g = torus(s.clone());
        prop_assert!(sc.is_group_element(&g).unwrap());
        let y = sc.apply(&g, &p).unwrap();
        prop_assert!(y.coords().iter().zip(p.coords()).all(|(a, b)| *a == &s * b));
    }

    #[test]
    fn group_laws(l1 in rat_pt(1), l2 in rat_pt(1), x in rat_pt(4), s1 in nonzero(), s2 in nonzero()) {
        let p = RationalPoint::from_coords(x);
        let sum = vec![&l1[0] + &l2[0]];
        for a in [unipotent_on_mat(), f_on_cone()] {
            let twice = a.apply(&l1, &a.apply(&l2, &p).unwrap()).unwrap();
            prop_assert_eq!(twice, a.apply(&sum, &p).unwrap());
            prop_assert_eq!(a.apply(a.identity(), &p).unwrap(), p.clone());
        }
        let sc = scaling_on_bottom();
        let twice = sc.apply(&torus(s1.clone()), &sc.apply(&torus(s2.clone()), &p).unwrap()).unwrap();
        prop_assert_eq!(twice, sc.apply(&torus(&s1 * &s2), &p).unwrap());
    }
}

proptest! {
    #![proptest_config(config(16))]

    #[test]
    fn orbit_closure_contains_and_is_stable(x in prop::collection::vec((-3i64..=3).prop_map(rat), 4), l in rat_pt(1)) {
        let u = unipotent_on_mat();
        let p = RationalPoint::from_coords(x);
        let closure = u.orbit_closure(&p).unwrap();
        prop_assert!(closure.ideal().vanishes_at(p.coords()).unwrap());
        let moved = u.apply(&l, &p).unwrap();
        prop_assert!(closure.ideal().vanishes_at(moved.coords()).unwrap());
        prop_assert!(u.same_orbit(&p, &p).unwrap());
        prop_assert!(u.same_orbit(&p, &moved).unwrap() && u.same_orbit(&moved, &p).unwrap());
    }

    #[test]
    fn same_orbit_is_symmetric(x in prop::collection::vec((-2i64..=2).prop_map(rat), 4),
                               y in prop::collection::vec((-2i64..=2).prop_map(rat), 4)) {
        let u = unipotent_on_mat();
        let (p, q) = (RationalPoint::from_coords(x), RationalPoint::from_coords(y));
        prop_assert_eq!(u.same_orbit(&p, &q).unwrap(), u.same_orbit(&q, &p).unwrap());
    }

    #[test]
    fn orbit_censuses_partition(p in prop::sample::select(vec![3u64, 5, 7])) {
        let cfg = FpConfig::new(p).unwrap();
        let u = enumerate_orbits(&unipotent_on_mat(), &|_| true, cfg).unwrap();
        prop_assert!(u.is_partition());
        prop_assert_eq!(u.group_order as u64, p);
        prop_assert_eq!(u.fixed_points().len() as u64, p * p);

        let x = FpSet::new(&punctured_cone(), cfg).unwrap();
        let f = enumerate_orbits(&f_on_cone(), &|q| x.contains(q), cfg).unwrap();
        prop_assert!(f.is_partition());

        let s = enumerate_orbits(&scaling_on_bottom(), &|_| true, cfg).unwrap();
        prop_assert!(s.is_partition());
        prop_assert_eq!(s.group_order as u64, p - 1);
    }
}

#[test]
fn translation_base_point_is_in_every_closure() {
    let space = Ring::grevlex(["x"]).unwrap();
    let j = GroupActionSpec::joint_ring(&space, &["l"]).unwrap();
    let act = &j.var("x").unwrap() + &j.var("l").unwrap();
    let a = GroupActionSpec::new("T", &space, &["l"], vec![], vec![act], vec![rat(0)]).unwrap();
    assert!(a.base_in_all_orbit_closures(&RationalPoint::from_ints(&[0])).unwrap());
}
