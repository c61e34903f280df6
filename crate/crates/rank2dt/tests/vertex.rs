//! Quotient and vertex characters, duality, signs and vertex measures.

mod common;

use proptest::prelude::*;
use rank2dt::algebra::{Exp3, KClass};
use rank2dt::boxes::*;
use rank2dt::toric::*;
use rank2dt::vertex::*;
use common::*;

const SEED: u64 = 7;

#[test]
fn normal_quotient_character() {
    let c = chart_fixture("normal");
    let q = quotient_character(&c).unwrap().to_class().unwrap();
    let expected = class(0, &[
        (1, 0, [1, 0, 1]), (1, 0, [0, 1, 1]), (1, 0, [2, 0, 1]), (1, 0, [0, 2, 1]),
        (1, 0, [1, 1, 1]), (1, 0, [3, 0, 1]), (1, 0, [2, 1, 1]), (1, 0, [1, 2, 1]),
    ]);
    assert_eq!(q, expected);
    assert_eq!(c.size(), 8);
}

#[test]
fn normal_vertex_character_term_by_term() {
    let c = chart_fixture("normal");
    let v = vertex_class(&c).unwrap();
    let terms: Vec<(i64, i32, Exp3)> = PRINTED_V_NORMAL.iter().map(|(w, m)| (*m, 0, *w)).collect();
    assert_eq!(v.len(), 56);
    assert_eq!(v, class(0, &terms));
    assert!(serre_dual_check(&v));
}

#[test]
fn normal2_characters() {
    let c = chart_fixture("normal2");
    assert_eq!(c.size(), 4);
    assert_eq!(c.omega(), 2);
    let q = quotient_character(&c).unwrap().to_class().unwrap();
    assert_eq!(q, class(1, &[(1, 0, [1, 1, 0]), (1, 0, [1, 0, 1]), (1, 0, [0, 1, 1]), (1, 1, [1, 1, 1])]));
    let v = vertex_class(&c).unwrap();
    let fixed = class(1, &[(2, 1, [0, 0, 0]), (-1, 0, [0, 0, 0]), (-2, -1, [-1, -1, -1]), (1, 0, [-1, -1, -1])]);
    assert_eq!(v.t0_fixed_part(), fixed);
    assert_eq!(tangent_class(1), class(1, &[(2, 1, [0, 0, 0]), (-1, 0, [0, 0, 0])]));
}

#[test]
fn abnormal_pair_fixed_parts() {
    let a = vertex_class(&chart_fixture("abnormal-pi")).unwrap();
    let b = vertex_class(&chart_fixture("abnormal-pi-prime")).unwrap();
    assert_eq!(a.t0_fixed_part(), class(0, &[(1, 0, [-1, -1, -1]), (-1, 0, [0, 0, 0])]));
    assert_eq!(b.t0_fixed_part(), class(0, &[(1, 0, [1, 1, 1]), (-1, 0, [-2, -2, -2])]));
}

#[test]
fn vertex_measures_of_the_examples() {
    for (name, w, omega) in [("normal", 1, 1), ("normal2", 2, 2), ("abnormal-pi", 0, 1), ("abnormal-pi-prime", 2, 1)] {
        let c = chart_fixture(name);
        assert_eq!(dt_vertex_weight(&c, SEED).unwrap(), int(w), "{name}");
        assert_eq!(c.omega(), omega, "{name}");
    }
}

#[test]
fn vertex_measure_does_not_depend_on_the_seed() {
    let c = chart_fixture("normal2");
    for seed in [0, 1, 99] {
        assert_eq!(dt_vertex_weight(&c, seed).unwrap(), int(2));
    }
}

#[test]
fn abnormal_pair_is_one_balanced_buddy_group() {
    let names = ["abnormal-pi", "abnormal-pi-prime", "normal", "normal2"];
    let classes: Vec<Enumerated> = names
        .iter()
        .map(|n| {
            let config = chart_fixture(n);
            Enumerated { size: config.size(), omega: config.omega(), config }
        })
        .collect();
    let weights = class_weights(&classes, SEED).unwrap();
    let groups = buddy_groups(&classes, &weights).unwrap();
    assert_eq!(groups.len(), 1);
    assert_eq!(groups[0].members, vec![0, 1]);
    assert!(groups[0].balanced());
}

fn withlegs_classes(name: &str) -> (KClass, KClass, KClass) {
    let (x, g) = global_fixture(name);
    let cl = global_classes(&x, &g).unwrap().expect("fixed points exist");
    let ei = x.edge_between(0, 1).unwrap();
    (cl.vertices[&0].clone(), cl.vertices[&1].clone(), cl.edges[&ei].clone())
}

#[test]
fn withlegs_pi_characters() {
    let (v0, v1, e) = withlegs_classes("withlegs-pi");
    let (printed_v0, printed_e) = printed_withlegs("withlegs-pi");
    assert_eq!(v0, printed_v0);
    assert!(v1.is_zero());
    assert_eq!(e, printed_e);
}

#[test]
fn withlegs_pi_prime_characters() {
    let (v0, v1, e) = withlegs_classes("withlegs-pi-prime");
    let (printed_v0, printed_e) = printed_withlegs("withlegs-pi-prime");
    assert_eq!(v0, printed_v0);
    assert!(v1.is_zero());
    assert_eq!(e, printed_e);
}

#[test]
fn withlegs_pi_double_prime_characters() {
    let (v0, v1, e) = withlegs_classes("withlegs-pi-double-prime");
    let (printed_v0, printed_e) = printed_withlegs("withlegs-pi-double-prime");
    assert_eq!(v0, printed_v0);
    assert!(v1.is_zero());
    assert_eq!(e, printed_e);
    // the edge alone has a positive fixed part; it cancels against the vertex
    assert_eq!(e.t_fixed_part().rank(), 1);
    assert_eq!((&v0 + &e).t_fixed_part().rank(), 0);
}

#[test]
fn conifold_weights_and_signs_of_the_leg_examples() {
    for (name, w) in [("withlegs-pi", 1), ("withlegs-pi-prime", 2), ("withlegs-pi-double-prime", 1)] {
        let (x, g) = global_fixture(name);
        assert_eq!(g.omega(&x).unwrap(), w as u64, "{name}");
        assert_eq!(dt_global_weight(&x, &g, SEED).unwrap(), int(w), "{name}");
        let s = global_sign_exponents(&x, &g).unwrap().expect("fixed points exist");
        assert_eq!(s.split, s.formula, "{name}");
        let ei = x.edge_between(0, 1).unwrap();
        assert_eq!(edge_sign_exponent(&x, &g.hull, ei, &g.edges[&ei]), 0, "{name}");
    }
}

#[test]
fn serre_duality_examples() {
    let t1 = class(0, &[(1, 0, [1, 0, 0])]);
    assert!(!serre_dual_check(&t1));
    let pair = class(0, &[(1, 0, [1, 0, 0]), (-1, 0, [-2, -1, -1])]);
    assert!(serre_dual_check(&pair));
    let s = canonical_split(&pair, KAPPA).unwrap();
    assert_eq!(&s.plus + &s.minus, pair);
    assert_eq!(s.plus.len(), 1);
}

#[test]
fn empty_leg_has_zero_edge_class() {
    let chart = ChartToricData::standard([1, 1, 1]);
    for axis in 0..3 {
        let e = edge_class(&KClass::zero(0), chart.edge_flags(axis), axis, -1, -1).unwrap();
        assert!(e.is_zero());
        assert_eq!(e111(-1, &DoubleSquareConfig::empty(chart.edge_flags(axis))), 0);
    }
}

#[test]
fn small_vertex_series_matches_the_euler_series() {
    let chart = ChartToricData::standard([1, 1, 1]);
    let w = w_series(chart, 3, SEED).unwrap();
    let legs = [0, 1, 2].map(|i| DoubleSquareConfig::empty(chart.edge_flags(i)));
    assert_eq!(w, comb_series(chart, legs, 3).unwrap());
}

#[test]
fn fingerprints_ignore_term_order_and_see_tags() {
    let a = class(1, &[(1, 1, [1, 0, 0]), (2, 0, [0, 1, 0])]);
    let b = class(1, &[(2, 0, [0, 1, 0]), (1, 1, [1, 0, 0])]);
    assert_eq!(fingerprint(&a), fingerprint(&b));
    assert_ne!(fingerprint(&a), fingerprint(&forget_tags(&a)));
    assert_eq!(restrict_t0(&class(0, &[(1, 0, [2, 1, 1])])), class(0, &[(1, 0, [1, 0, 0])]));
}

fn small_classes() -> Vec<Enumerated> {
    let chart = ChartToricData::standard([1, 1, 1]);
    let legs = [0, 1, 2].map(|i| DoubleSquareConfig::empty(chart.edge_flags(i)));
    enumerate_boxes(chart, legs, 4).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn vertex_classes_are_self_dual(i in 0usize..1000) {
        let classes = small_classes();
        let c = &classes[i % classes.len()].config;
        let v = vertex_class(c).unwrap();
        prop_assert!(serre_dual_check(&v));
        let s = split_vertex(c, &ChartFactors::local(c).unwrap()).unwrap();
        prop_assert_eq!(s.sign_exponent(), v111(c));
    }

    #[test]
    fn dual_sums_are_self_dual(w in prop::array::uniform3(-3i32..4), m in -3i64..4) {
        let k = class(0, &[(m, 0, w)]);
        let sym = &k + &serre_dual(&k, KAPPA);
        prop_assert!(serre_dual_check(&sym));
    }
}
