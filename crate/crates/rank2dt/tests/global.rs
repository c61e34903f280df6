//! Hulls on projective space, glued Euler characteristic series and the
//! comparisons built on them.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rank2dt::algebra::{macmahon, QSeries};
use rank2dt::boxes::*;
use rank2dt::global::*;
use rank2dt::toric::*;
use std::collections::BTreeMap;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn poly(terms: &[(i64, i64)], order: i64) -> QSeries {
    QSeries::from_ints(terms.iter().copied(), order)
}

/// `M(y^2)^8` through `y^{order}`.
fn m8(order: i64) -> QSeries {
    macmahon(order / 2 + 1).substitute(2).pow(8).truncate(order)
}

/// `(1 - y^2)^{-2}` through `y^{order}`.
fn inv_one_minus_sq(order: i64) -> QSeries {
    poly(&[(0, 1), (2, -2), (4, 1)], order).inverse().unwrap()
}

/// The per-family sum for `c_2 = 2` as printed, in `y = q^{-1}`, shifted by `y^4`:
/// `(1 + x + x^2)^2 + (1 + x + 2x^2 + x^3 + x^4) + (2 (1 + x^2) + (1 + x)) / (1 - x)^2`
/// with `x = y^2`.
fn printed_family_sum(order: i64) -> QSeries {
    let i = poly(&[(0, 1), (2, 1), (4, 1)], order).pow(2);
    let ii = poly(&[(0, 1), (2, 1), (4, 2), (6, 1), (8, 1)], order);
    let iii = poly(&[(0, 3), (2, 1), (4, 2)], order).mul(&inv_one_minus_sq(order));
    i.add(&ii).add(&iii)
}

#[test]
fn hull_counts_and_chern_classes() {
    let p3 = ToricThreefold::p3();
    let minimal = enumerate_hulls("P3", -1, 1).unwrap();
    assert_eq!(minimal.len(), 4);
    for h in minimal.iter() {
        assert_eq!((h.c2, h.c3), (1, 1));
        let singular: Vec<u64> =
            p3.charts.iter().map(|r| singularity_data(&h.data.chart(*r))).filter(|s| s.0).map(|s| s.1).collect();
        assert_eq!(singular, vec![1]);
    }
    let c2 = enumerate_hulls("P3", -1, 2).unwrap();
    let count = |k: &str| c2.iter().filter(|h| h.kind == k).count();
    assert_eq!((count("i"), count("ii"), count("iii")), (12, 12, 4));
    assert!(c2.iter().filter(|h| h.kind != "iii").all(|h| h.c2 == 2));
    assert!(enumerate_hulls("P3", -1, 3).is_err());
    assert!(enumerate_hulls("conifold", -1, 1).is_err());
}

#[test]
fn minimal_c2_series_matches_the_closed_formula() {
    let direct = euler_series_global("P3", 1, 7).unwrap();
    let closed = theorem_b_series(1, 7).unwrap();
    let product = min_c2_formula("P3", 1, 7).unwrap();
    assert_eq!(direct, closed);
    assert_eq!(direct, product);
    // coefficients of q^1, q^{-1}, q^{-3}
    assert_eq!(direct.coeff(-1), rat(4));
    assert_eq!(direct.coeff(1), rat(36));
    assert_eq!(direct.coeff(3), rat(240));
}

#[test]
fn printed_family_sum_equals_the_closed_form() {
    let order = 10;
    let sum = printed_family_sum(order + 4).mul(&m8(order + 4)).scale(&rat(12)).shift(-4).truncate(order);
    assert_eq!(sum, theorem_b_series(2, order).unwrap());
}

#[test]
fn zero_dimensional_hull_families_match_their_printed_terms() {
    let x = ToricThreefold::p3();
    let order = 3;
    let i = poly(&[(0, 1), (1, 1), (2, 1)], order).pow(2);
    let ii = poly(&[(0, 1), (1, 1), (2, 2), (3, 1), (4, 1)], order);
    let m = macmahon(order).pow(8);
    for h in enumerate_hulls("P3", -1, 2).unwrap().into_iter().filter(|h| h.kind != "iii") {
        let s = component_series(&x, &h.data, &BTreeMap::new(), order).unwrap();
        let printed = if h.kind == "i" { &i } else { &ii };
        assert_eq!(s, printed.mul(&m).truncate(order), "type {}", h.kind);
        assert_eq!(h.c3, 4);
    }
}

/// Along an edge inside the face with `v = 0` a minimal hull restricts to
/// `O(-1) ⊕ O`, so a unit leg has two quotients: onto `O(-1)` (cell at the
/// corner) and onto `O` (cell one step out). The printed type (iii) term has
/// the first only; the second adds `12 y^{-2} (1 + y^2) (1 - y^2)^{-2} M(y^2)^8`.
#[test]
fn c2_two_series_is_the_printed_sum_plus_the_second_quotient() {
    let order = 4;
    let direct = euler_series_global("P3", 2, order).unwrap();
    let pad = order + 4;
    let extra = poly(&[(2, 1), (4, 1)], pad).mul(&inv_one_minus_sq(pad)).mul(&m8(pad)).scale(&rat(12)).shift(-4).truncate(order);
    let printed = theorem_b_series(2, order).unwrap();
    assert_eq!(direct, printed.add(&extra));
    assert_eq!(direct.coeff(-4), rat(60));
    assert_eq!(direct.coeff(-4), printed.coeff(-4));
    assert_eq!(direct.coeff(-2) - printed.coeff(-2), rat(12));
}

#[test]
fn unit_legs_of_a_minimal_hull() {
    let x = ToricThreefold::p3();
    let h = &enumerate_hulls("P3", -1, 1).unwrap()[0];
    let legs = unit_legs(&x, &h.data);
    assert_eq!(legs.len(), 12);
    let mut on_free_edges = 0;
    for (ei, lam) in legs.iter() {
        let bare = GlobalConfig::bare(&x, h.data.clone(), BTreeMap::from([(*ei, lam.clone())])).unwrap();
        if bare.omega(&x).unwrap() == 0 {
            on_free_edges += 1;
            // the minimal sheaf needs one extra box at each end
            let s = component_series(&x, &h.data, &bare.edges, 1).unwrap();
            assert_eq!(s.valuation(), Some(1));
        } else {
            assert_eq!(bare.chi_cech(&x).unwrap(), 0);
        }
    }
    assert_eq!(on_free_edges, 3);
}

/// Brute force over explicit pairs of end chart configurations.
fn brute_pair_series(x: &ToricThreefold, bare: &GlobalConfig, ei: usize, max_chi: i64) -> QSeries {
    let mut s = QSeries::zero(max_chi);
    for (g, chi) in leg_pairs(x, bare, ei, max_chi).unwrap() {
        assert_eq!(g.chi_formula(x).unwrap(), chi);
        assert_eq!(g.chi_cech(x).unwrap(), chi);
        s.add_coeff(chi, rat(g.omega(x).unwrap() as i64));
    }
    s
}

#[test]
fn grouped_leg_sums_match_brute_force_on_the_conifold() {
    let x = ToricThreefold::conifold();
    let ei = x.edge_between(0, 1).unwrap();
    for v in [[1, 1, 1], [1, 1, 0]] {
        let hull = conifold_hull(v).unwrap();
        let flags = hull.chart(x.charts[0]).edge_flags(x.edges[ei].axis[0]);
        for lam in enumerate_squares(flags, 2).into_iter().filter(|l| !l.is_empty()) {
            let legs = BTreeMap::from([(ei, lam)]);
            let bare = GlobalConfig::bare(&x, hull.clone(), legs.clone()).unwrap();
            let fast = component_series(&x, &hull, &legs, 3).unwrap();
            assert_eq!(fast, brute_pair_series(&x, &bare, ei, 3), "v = {v:?}");
        }
    }
}

#[test]
fn grouped_leg_sums_match_brute_force_on_projective_space() {
    let x = ToricThreefold::p3();
    let h = &enumerate_hulls("P3", -1, 1).unwrap()[0];
    let max_chi = 2;
    for (ei, lam) in unit_legs(&x, &h.data).into_iter().step_by(3) {
        let legs = BTreeMap::from([(ei, lam)]);
        let bare = GlobalConfig::bare(&x, h.data.clone(), legs.clone()).unwrap();
        let mut expected = brute_pair_series(&x, &bare, ei, max_chi + 2);
        for (alpha, c) in bare.charts.iter().enumerate() {
            if x.edges[ei].ends.contains(&alpha) {
                continue;
            }
            let c = c.as_ref().unwrap();
            let free = [0, 1, 2].map(|i| DoubleSquareConfig::empty(c.chart.edge_flags(i)));
            expected = expected.mul(&comb_series(c.chart, free, max_chi + 2).unwrap());
        }
        assert_eq!(component_series(&x, &h.data, &legs, max_chi).unwrap(), expected.truncate(max_chi), "edge {ei}");
    }
}

#[test]
fn euler_characteristic_two_ways_on_random_configurations() {
    let configs = random_global_configs(40, 11, 3).unwrap();
    assert_eq!(configs.len(), 40);
    assert!(configs.iter().any(|r| !r.config.edges.is_empty()));
    for r in configs {
        assert_eq!(r.config.chi_formula(&r.threefold).unwrap(), r.config.chi_cech(&r.threefold).unwrap());
    }
}

#[test]
fn random_configurations_are_reproducible() {
    let a = random_global_configs(10, 5, 3).unwrap();
    let b = random_global_configs(10, 5, 3).unwrap();
    assert!(a.iter().zip(b.iter()).all(|(x, y)| x.config == y.config));
}

#[test]
fn vertex_series_agrees_with_euler_series_at_low_order() {
    for v in [[1, 1, 1], [0, 1, 1]] {
        let r = vertex_conjecture_check(ChartToricData::standard(v), 3, 3).unwrap();
        assert!(r.agrees(), "{r:?}");
        assert_eq!(r.coefficients.len(), 4);
    }
}

#[test]
fn main_conjecture_report_runs_down_in_c3() {
    let r = main_conjecture_c3(ChartToricData::standard([1, 1, 1]), 3, 3).unwrap();
    assert!(r.agrees());
    let exps: Vec<i64> = r.coefficients.iter().map(|c| c.exponent).collect();
    assert_eq!(exps, vec![-5, -3, -1, 1]);
    assert_eq!(r.coefficients.last().unwrap().lhs, "1");
}

#[test]
fn conifold_measures_match_signed_euler_characteristics() {
    for v in [[1, 1, 1], [1, 1, 0]] {
        let hull = conifold_hull(v).unwrap();
        let reports = conifold_conjecture_check(&hull, 1, 2, 3).unwrap();
        assert!(reports.len() >= 2);
        for r in reports {
            assert!(r.agrees(), "v = {v:?}: {r:?}");
        }
    }
}

#[test]
fn comparison_reports_flag_disagreements() {
    let a = poly(&[(0, 1), (1, 2)], 2);
    let b = poly(&[(0, 1), (1, 3)], 2);
    let r = compare_series("a vs b", &a, &b, 0, 2);
    assert!(!r.agrees());
    assert_eq!(r.coefficients.iter().filter(|c| !c.agree).count(), 1);
    let json = serde_json::to_string(&r).unwrap();
    assert_eq!(serde_json::from_str::<ComparisonReport>(&json).unwrap(), r);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn random_configurations_have_consistent_euler_characteristics(seed in any::<u64>()) {
        for r in random_global_configs(4, seed, 2).unwrap() {
            prop_assert_eq!(r.config.chi_formula(&r.threefold).unwrap(), r.config.chi_cech(&r.threefold).unwrap());
            prop_assert!(r.config.check_gluing(&r.threefold).is_ok());
        }
    }
}
