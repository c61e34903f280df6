//! Fixture loading and printed characters shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use rank2dt::algebra::{BundleTag, Exp3, KClass};
use rank2dt::boxes::{parse, DoubleBoxConfig, GlobalConfig, Loaded};
use rank2dt::toric::ToricThreefold;
use std::path::PathBuf;

pub fn fixture(name: &str) -> Loaded {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.json"));
    parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

pub fn chart_fixture(name: &str) -> DoubleBoxConfig {
    match fixture(name) {
        Loaded::Chart { config, .. } => config,
        other => panic!("{name} is not a chart document: {other:?}"),
    }
}

pub fn global_fixture(name: &str) -> (ToricThreefold, GlobalConfig) {
    match fixture(name) {
        Loaded::Global { threefold, config, .. } => (threefold, config),
        other => panic!("{name} is not a global document: {other:?}"),
    }
}

/// A class over one projective line from `(multiplicity, degree of O(d), weight)` terms.
pub fn class(factors: u32, terms: &[(i64, i32, Exp3)]) -> KClass {
    let mut k = KClass::zero(factors);
    for (m, d, w) in terms {
        k.add_term(*m, BundleTag::single(1, *d), *w);
    }
    k
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub const PRINTED_V_NORMAL: [(Exp3, i64); 56] = [
    ([-4, 0, 0], -1), ([-4, 2, -1], -1), ([-4, 2, 0], 1), ([-3, -1, 0], -2), ([-3, 0, -2], -1),
    ([-3, 1, -1], -1), ([-3, 1, 0], 1), ([-3, 2, -1], -1), ([-3, 2, 0], 1), ([-2, -2, 0], -2),
    ([-2, -1, -2], -1), ([-2, -1, 0], -1), ([-2, 0, -2], -1), ([-2, 0, -1], -1), ([-2, 0, 0], 1),
    ([-2, 1, -1], -2), ([-2, 1, 0], 2), ([-1, -3, 0], -1), ([-1, -2, -2], -1), ([-1, -2, 0], -1),
    ([-1, -1, -2], -1), ([-1, -1, 0], -1), ([-1, 0, -2], -1), ([-1, 0, -1], -3), ([-1, 0, 0], 3),
    ([-1, 0, 1], 1), ([-1, 1, 1], 1), ([-1, 2, -1], 1), ([0, -3, 0], -1), ([0, -2, -2], -1),
    ([0, -1, -2], -1), ([0, -1, -1], -3), ([0, -1, 0], 3), ([0, -1, 1], 1), ([0, 0, -1], 1),
    ([0, 0, 1], 1), ([0, 1, -1], 1), ([0, 1, 1], 1), ([0, 2, -1], 1), ([1, -2, -1], -2),
    ([1, -2, 0], 2), ([1, -1, -1], -1), ([1, -1, 0], 1), ([1, -1, 1], 1), ([1, 0, -1], 1),
    ([1, 0, 1], 1), ([1, 1, -1], 2), ([2, -3, -1], -1), ([2, -3, 0], 1), ([2, -2, -1], -1),
    ([2, -2, 0], 1), ([2, -1, 1], 1), ([2, 0, -1], 2), ([3, -3, -1], -1), ([3, -3, 0], 1),
    ([3, -1, -1], 1),
];


/// The printed vertex character at the chart with the boxes and the printed
/// edge character along the compact curve, for the leg examples on the
/// resolved conifold. The other vertex character is zero.
pub fn printed_withlegs(name: &str) -> (KClass, KClass) {
    match name {
        "withlegs-pi" => (
            class(0, &[
                (-1, 0, [-2, 0, 0]), (-1, 0, [-1, 0, 0]), (-1, 0, [0, -2, 0]), (-1, 0, [0, -1, 0]),
                (1, 0, [-1, 0, -1]), (1, 0, [0, -1, -1]), (1, 0, [1, -1, -1]), (1, 0, [-1, 1, -1]),
            ]),
            class(0, &[(2, 0, [1, -1, 0]), (2, 0, [-1, 1, 0]), (-2, 0, [-2, 0, -1]), (-2, 0, [0, -2, -1])]),
        ),
        "withlegs-pi-prime" => (
            class(1, &[
                (-1, 0, [-2, 0, 0]), (1, 0, [-1, 0, 0]), (-1, 1, [-1, 0, 0]), (-1, 0, [0, -2, 0]), (1, 0, [0, -1, 0]),
                (-1, 1, [0, -1, 0]), (-2, 0, [-1, -1, 0]), (1, 1, [-1, -1, 0]), (2, 0, [0, 0, -1]), (-1, -1, [0, 0, -1]),
                (-1, 0, [-1, 0, -1]), (1, -1, [-1, 0, -1]), (-1, 0, [0, -1, -1]), (1, -1, [0, -1, -1]),
                (1, 0, [1, -1, -1]), (1, 0, [-1, 1, -1]),
            ]),
            class(1, &[
                (2, 1, [0, 0, 0]), (-1, 0, [0, 0, 0]), (1, 1, [1, -1, 0]), (1, 1, [-1, 1, 0]), (-1, -1, [-2, 0, -1]),
                (-1, -1, [0, -2, -1]), (-2, -1, [-1, -1, -1]), (1, 0, [-1, -1, -1]),
            ]),
        ),
        "withlegs-pi-double-prime" => (
            class(0, &[
                (-1, 0, [0, 0, 0]), (-1, 0, [-1, 0, 0]), (-1, 0, [0, -1, 0]), (1, 0, [-1, 0, -1]), (1, 0, [0, -1, -1]),
                (1, 0, [-1, -1, -1]),
            ]),
            class(0, &[
                (1, 0, [0, 0, 0]), (1, 0, [1, -1, 0]), (1, 0, [-1, 1, 0]), (-1, 0, [-2, 0, -1]), (-1, 0, [0, -2, -1]),
                (-1, 0, [-1, -1, -1]),
            ]),
        ),
        other => panic!("no printed characters for {other}"),
    }
}
