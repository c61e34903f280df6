//! Acceptance suite: runs the twelve criteria concurrently and prints one
//! PASS or FAIL line per criterion. Built without the test harness so the
//! lines are never captured.
//!
//! All arithmetic is exact, so every comparison is equality of rationals; the
//! truncation orders below are the only tunable quantities. The run succeeds
//! when the set of failing criteria is exactly [`KNOWN_FAILING`], so both a
//! regression and an unexpected fix are reported.

#[path = "../../rank2dt/tests/common/mod.rs"]
mod common;

use common::*;
use num_traits::Signed;
use rank2dt::algebra::{boxed_partition_product, macmahon_squared, KClass, QSeries};
use rank2dt::boxes::*;
use rank2dt::global::*;
use rank2dt::toric::ChartToricData;
use rank2dt::vertex::*;
use std::collections::BTreeSet;
use std::process::Command;

/// Largest allowed absolute coefficient difference: comparisons are exact.
const TOLERANCE: i64 = 0;
/// Box count bound for the chart series, duality and Laurent checks.
const CHART_ORDER: i64 = 6;
/// Box count bound for the chart with one leg.
const LEG_ORDER: i64 = 5;
/// Vertex measure series order for the conjecture checks.
const CONJECTURE_ORDER: i64 = 4;
/// Highest power of `y = q^{-1}` for the `c_2 = 1` series: q exponents in `[-7, 1]`.
const C2_ONE_ORDER: i64 = 7;
/// Highest power of `y = q^{-1}` for the `c_2 = 2` series: q exponents in `[-4, 8]`.
const C2_TWO_ORDER: i64 = 4;
/// Random glued configurations for the Euler characteristic check.
const RANDOM_CONFIGS: usize = 200;
/// Maximal chart size of the random configurations.
const RANDOM_MAX_SIZE: i64 = 5;
/// Seed for probe points and random draws.
const SEED: u64 = 11;

/// Criteria that fail for a documented reason. Criterion 9: the glued
/// `c_2 = 2` series on projective space differs from the closed formula at
/// q exponents `-4..=2`, by the contribution of the unit legs in the faces
/// with `v = 0` whose quotient is the trivial summand of `O(-1) + O`.
const KNOWN_FAILING: [usize; 1] = [9];

type Verdict = Result<String, String>;

fn no_legs(chart: ChartToricData) -> [DoubleSquareConfig; 3] {
    [0, 1, 2].map(|i| DoubleSquareConfig::empty(chart.edge_flags(i)))
}

fn classes(v: [u32; 3], max_size: i64) -> Vec<Enumerated> {
    let chart = ChartToricData::standard(v);
    enumerate_boxes(chart, no_legs(chart), max_size).unwrap()
}

fn series(coeffs: &[i64], order: i64) -> QSeries {
    QSeries::from_ints(coeffs.iter().enumerate().map(|(i, c)| (i as i64, *c)), order)
}

fn equal(name: &str, lhs: &QSeries, rhs: &QSeries, lo: i64, hi: i64) -> Result<(), String> {
    let diff = lhs.sub(rhs);
    let bad: Vec<i64> = (lo..=hi).filter(|e| diff.coeff(*e).abs() > int(TOLERANCE)).collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(format!("{name}: differs at exponents {bad:?}"))
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ac1() -> Verdict {
    let m2 = macmahon_squared(CHART_ORDER);
    for v in [[1, 1, 1], [1, 1, 2], [1, 2, 2], [2, 2, 2]] {
        let chart = ChartToricData::standard(v);
        let z = comb_series(chart, no_legs(chart), CHART_ORDER).map_err(|e| e.to_string())?;
        equal(&format!("v = {v:?}"), &z, &m2.mul(&boxed_partition_product(v, CHART_ORDER)), 0, CHART_ORDER)?;
    }
    Ok(format!("four singular charts through q^{CHART_ORDER}"))
}

fn ac2() -> Verdict {
    let chart = ChartToricData::standard([0, 1, 1]);
    let z = comb_series(chart, no_legs(chart), CHART_ORDER).map_err(|e| e.to_string())?;
    equal("locally free chart", &z, &series(&[1, 2, 7, 18, 47, 110, 258], CHART_ORDER), 0, CHART_ORDER)?;
    equal("locally free chart", &z, &macmahon_squared(CHART_ORDER), 0, CHART_ORDER)?;
    Ok(format!("v = (0, 1, 1) equals M(q)^2 through q^{CHART_ORDER}"))
}

fn unit_leg_chart() -> (ChartToricData, [DoubleSquareConfig; 3]) {
    let chart = ChartToricData::standard([1, 1, 1]);
    let mut legs = no_legs(chart);
    legs[1] = DoubleSquareConfig::new(chart.edge_flags(1), [([0, 1], 1)]).unwrap();
    (chart, legs)
}

fn ac3() -> Verdict {
    let (chart, legs) = unit_leg_chart();
    let z = comb_series(chart, legs, LEG_ORDER).map_err(|e| e.to_string())?;
    let one = int(1);
    let rhs = macmahon_squared(LEG_ORDER)
        .mul(&QSeries::from_ints([(0, 1), (2, 1)], LEG_ORDER))
        .mul(&QSeries::geometric(1, &one, 1, LEG_ORDER))
        .truncate(LEG_ORDER);
    equal("one leg", &z, &rhs, 0, LEG_ORDER)?;
    equal("one leg, printed prefix", &z, &series(&[1, 3, 11, 31], 3), 0, 3)?;
    Ok(format!("one unit leg through q^{LEG_ORDER}"))
}

fn ac4() -> Verdict {
    let mut omega_sum = 0;
    let mut weight_sum = int(0);
    for (name, w) in [("normal", 1), ("normal2", 2), ("abnormal-pi", 0), ("abnormal-pi-prime", 2)] {
        let c = chart_fixture(name);
        let got = dt_vertex_weight(&c, SEED).map_err(|e| e.to_string())?;
        ensure(got == int(w), format!("{name}: weight {got}, expected {w}"))?;
        if name.starts_with("abnormal") {
            omega_sum += c.omega() as i64;
            weight_sum += got;
        }
    }
    ensure(weight_sum == int(omega_sum), "abnormal pair: weight sum differs from omega sum")?;
    let v = vertex_class(&chart_fixture("normal")).map_err(|e| e.to_string())?;
    let terms: Vec<(i64, i32, _)> = PRINTED_V_NORMAL.iter().map(|(w, m)| (*m, 0, *w)).collect();
    ensure(v == class(0, &terms), "normal: vertex character differs from the printed one")?;
    Ok("weights 1, 2, 0, 2; printed character matched term by term".into())
}

/// Duality (criterion 5) and Laurent polynomiality (criterion 6) share the
/// vertex classes of every class up to `CHART_ORDER` boxes.
fn vertex_classes(v: [u32; 3]) -> Vec<Result<KClass, String>> {
    let list = classes(v, CHART_ORDER);
    rank2dt::par::map_collect(&list, |e| vertex_class(&e.config).map_err(|err| err.to_string()))
}

fn ac5(computed: &[(String, Vec<Result<KClass, String>>)]) -> Verdict {
    let mut total = 0;
    for (label, list) in computed {
        let failures = list.iter().filter(|v| !matches!(v, Ok(k) if serre_dual_check(k))).count();
        ensure(failures == 0, format!("{label}: {failures} classes fail duality"))?;
        total += list.len();
    }
    Ok(format!("{total} vertex classes up to size {CHART_ORDER}, zero failures"))
}

fn ac6(computed: &[(String, Vec<Result<KClass, String>>)]) -> Verdict {
    let mut total = 0;
    for (label, list) in computed {
        if let Some(Err(e)) = list.iter().find(|v| v.is_err()) {
            return Err(format!("{label}: {e}"));
        }
        total += list.len();
    }
    let (chart, legs) = unit_leg_chart();
    let with_leg = enumerate_boxes(chart, legs, LEG_ORDER).map_err(|e| e.to_string())?;
    for e in with_leg.iter() {
        vertex_class(&e.config).map_err(|err| format!("one leg, size {}: {err}", e.size))?;
    }
    total += with_leg.len();
    for name in ["withlegs-pi", "withlegs-pi-prime", "withlegs-pi-double-prime"] {
        let (x, g) = global_fixture(name);
        let cl = global_classes(&x, &g).map_err(|e| e.to_string())?.ok_or(format!("{name}: no fixed points"))?;
        let ei = x.edge_between(0, 1).unwrap();
        let (v0, e) = printed_withlegs(name);
        ensure(cl.vertices[&0] == v0 && cl.vertices[&1].is_zero(), format!("{name}: vertex characters differ"))?;
        ensure(cl.edges[&ei] == e, format!("{name}: edge character differs"))?;
    }
    Ok(format!("{total} chart classes redistributed; three leg examples matched"))
}

fn ac7() -> Verdict {
    let configs = random_global_configs(RANDOM_CONFIGS, SEED, RANDOM_MAX_SIZE).map_err(|e| e.to_string())?;
    let mut with_leg = 0;
    let mut names = BTreeSet::new();
    for (i, c) in configs.iter().enumerate() {
        let f = c.config.chi_formula(&c.threefold).map_err(|e| e.to_string())?;
        let d = c.config.chi_cech(&c.threefold).map_err(|e| e.to_string())?;
        ensure(f == d, format!("config {i}: formula {f}, Cech count {d}"))?;
        with_leg += usize::from(!c.config.edges.is_empty());
        names.insert(c.threefold.name.clone());
    }
    ensure(with_leg > 0 && with_leg < configs.len(), "random configurations miss the with or without leg case")?;
    ensure(names.len() == 2, format!("expected two threefolds, saw {names:?}"))?;
    Ok(format!("{} configurations, {with_leg} with one leg, on {names:?}", configs.len()))
}

fn ac8() -> Verdict {
    let direct = euler_series_global("P3", 1, C2_ONE_ORDER).map_err(|e| e.to_string())?;
    let closed = theorem_b_series(1, C2_ONE_ORDER).map_err(|e| e.to_string())?;
    let product = min_c2_formula("P3", 1, C2_ONE_ORDER).map_err(|e| e.to_string())?;
    equal("c2 = 1 glued sum against closed formula", &direct, &closed, -1, C2_ONE_ORDER)?;
    equal("c2 = 1 glued sum against product formula", &direct, &product, -1, C2_ONE_ORDER)?;
    for (q, c) in [(1, 4), (-1, 36), (-3, 240)] {
        let got = direct.coeff(-q);
        ensure(got == int(c), format!("q^{q}: {got} instead of {c}"))?;
    }
    Ok(format!("q exponents -{C2_ONE_ORDER}..=1 exact; product formula agrees"))
}

fn ac9() -> Verdict {
    let direct = euler_series_global("P3", 2, C2_TWO_ORDER).map_err(|e| e.to_string())?;
    let closed = theorem_b_series(2, C2_TWO_ORDER).map_err(|e| e.to_string())?;
    let r = compare_series("c2 = 2", &direct, &closed, -8, C2_TWO_ORDER);
    let bad: Vec<i64> = r.coefficients.iter().rev().filter(|c| !c.agree).map(|c| -c.exponent).collect();
    if bad.is_empty() {
        Ok(format!("q exponents -{C2_TWO_ORDER}..=8 exact"))
    } else {
        let detail: Vec<String> = r.coefficients.iter().rev().filter(|c| !c.agree).map(|c| format!("q^{}: {} vs {}", -c.exponent, c.lhs, c.rhs)).collect();
        Err(format!("glued sum differs from the closed formula at q exponents {bad:?} ({})", detail.join(", ")))
    }
}

fn ac10() -> Verdict {
    for v in [[1, 1, 1], [1, 1, 2]] {
        let r = vertex_conjecture_check(ChartToricData::standard(v), CONJECTURE_ORDER, SEED).map_err(|e| e.to_string())?;
        ensure(r.agrees(), format!("finding: W differs from Z for v = {v:?}"))?;
    }
    for v in [[1, 1, 1], [1, 1, 0]] {
        let hull = conifold_hull(v).map_err(|e| e.to_string())?;
        for r in conifold_conjecture_check(&hull, 1, 2, SEED).map_err(|e| e.to_string())? {
            ensure(r.agrees(), format!("finding: {}", r.name))?;
        }
    }
    for name in ["normal", "normal2", "abnormal-pi", "abnormal-pi-prime"] {
        let c = chart_fixture(name);
        let s = split_vertex(&c, &ChartFactors::local(&c).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(s.sign_exponent() == v111(&c), format!("{name}: split sign differs from the vertex formula"))?;
    }
    for name in ["withlegs-pi", "withlegs-pi-prime", "withlegs-pi-double-prime"] {
        let (x, g) = global_fixture(name);
        let s = global_sign_exponents(&x, &g).map_err(|e| e.to_string())?.ok_or(format!("{name}: no fixed points"))?;
        ensure(s.split == s.formula, format!("{name}: split signs differ from the vertex and edge formulas"))?;
    }
    Ok(format!("W = Z through q^{CONJECTURE_ORDER}; conifold legs up to size 1 agree with signs; fixture signs match"))
}

fn ac11() -> Verdict {
    let mut groups_seen = 0;
    for v in [[1, 1, 1], [1, 1, 2]] {
        let list = classes(v, CHART_ORDER);
        let weights = class_weights(&list, SEED).map_err(|e| e.to_string())?;
        for g in buddy_groups(&list, &weights).map_err(|e| e.to_string())? {
            ensure(g.balanced(), format!("unbalanced buddy group {:?} for v = {v:?}", g.members))?;
            groups_seen += 1;
        }
    }
    let pair: Vec<Enumerated> = ["abnormal-pi", "abnormal-pi-prime"]
        .iter()
        .map(|n| {
            let config = chart_fixture(n);
            Enumerated { size: config.size(), omega: config.omega(), config }
        })
        .collect();
    let weights = class_weights(&pair, SEED).map_err(|e| e.to_string())?;
    let groups = buddy_groups(&pair, &weights).map_err(|e| e.to_string())?;
    ensure(groups.len() == 1 && groups[0].members == [0, 1] && groups[0].balanced(), "abnormal pair is not one balanced group")?;
    Ok(format!("{groups_seen} groups up to size {CHART_ORDER} on C3, plus the abnormal pair, all balanced"))
}

fn run_cli(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_rank2dt")).args(args).output().expect("binary runs");
    out.stdout
}

fn ac12() -> Verdict {
    let runs: [&[&str]; 3] = [
        &["verify-conjecture-c", "--order", "3", "--seed", "5", "--format", "json"],
        &["chi-check", "--count", "30", "--seed", "9", "--format", "json"],
        &["enumerate", "--preset", "c3-v112", "--order", "3"],
    ];
    for args in runs {
        let a = run_cli(args);
        let b = run_cli(args);
        ensure(!a.is_empty() && a == b, format!("{args:?}: reports differ"))?;
        let mut one = args.to_vec();
        one.extend(["--workers", "1"]);
        ensure(run_cli(&one) == a, format!("{args:?}: report depends on the worker count"))?;
    }
    Ok("three commands byte-identical across runs and worker counts".into())
}

fn main() {
    let verdicts: Vec<(usize, Verdict)> = std::thread::scope(|s| {
        let shared = s.spawn(|| {
            [[1, 1, 1], [1, 1, 2]].map(|v| (format!("v = {v:?}"), vertex_classes(v))).to_vec()
        });
        let plain: Vec<(usize, std::thread::ScopedJoinHandle<Verdict>)> = vec![
            (1, s.spawn(ac1)),
            (2, s.spawn(ac2)),
            (3, s.spawn(ac3)),
            (4, s.spawn(ac4)),
            (7, s.spawn(ac7)),
            (8, s.spawn(ac8)),
            (9, s.spawn(ac9)),
            (10, s.spawn(ac10)),
            (11, s.spawn(ac11)),
            (12, s.spawn(ac12)),
        ];
        let computed = shared.join().expect("vertex classes");
        let mut out = vec![(5, ac5(&computed)), (6, ac6(&computed))];
        for (n, h) in plain {
            out.push((n, h.join().unwrap_or_else(|_| Err("panicked".into()))));
        }
        out.sort_by_key(|(n, _)| *n);
        out
    });
    let mut failing = Vec::new();
    for (n, v) in verdicts.iter() {
        match v {
            Ok(detail) => println!("AC{n:<2} PASS  {detail}"),
            Err(detail) => {
                println!("AC{n:<2} FAIL  {detail}");
                failing.push(*n);
            }
        }
    }
    if failing != KNOWN_FAILING {
        eprintln!("failing criteria {failing:?} differ from the documented {KNOWN_FAILING:?}");
        std::process::exit(1);
    }
    println!("acceptance: failing set matches the documented {KNOWN_FAILING:?}");
}
