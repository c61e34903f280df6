//! Serre duality of characters and the plus/minus splittings that determine
//! signs of Calabi-Yau specialized weights.
//!
//! Duality is taken with respect to a character `κ` of the canonical bundle,
//! `(1, 1, 1)` in a chart: `k` is self-dual when `k = -κ^{-1} k̄`.

use super::character::{edge_reflexive_character, g_plus_class, quotient_character_with, redistribute_edge, vertex_class_with, ChartFactors};
use crate::algebra::{exp_add, exp_neg, is_t0_fixed, BundleTag, Exp3, KClass};
use crate::boxes::{DoubleBoxConfig, DoubleSquareConfig};
use crate::error::{Error, Result};
use crate::toric::{reflexive_character, Flag};

/// The canonical character of a chart.
pub const KAPPA: Exp3 = [1, 1, 1];

/// `-κ^{-1} k̄`.
pub fn serre_dual(k: &KClass, kappa: Exp3) -> KClass {
    -&k.bar().shift(exp_neg(kappa))
}

/// Whether `k = -(t1 t2 t3)^{-1} k̄`.
pub fn serre_dual_check(k: &KClass) -> bool {
    serre_dual_check_with(k, KAPPA)
}

/// Whether `k = -κ^{-1} k̄` for a given canonical character.
pub fn serre_dual_check_with(k: &KClass, kappa: Exp3) -> bool {
    *k == serre_dual(k, kappa)
}

/// A splitting `k = plus + minus` with `minus = -κ^{-1} plus̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    /// The half that determines the sign.
    pub plus: KClass,
    /// The dual half.
    pub minus: KClass,
}

impl Split {
    /// `plus(1, 1, 1)` modulo 2, after restricting to a closed point of the base.
    pub fn sign_exponent(&self) -> u8 {
        self.plus.rank().rem_euclid(2) as u8
    }

    /// Rank of the terms of `plus` that move under the Calabi-Yau subtorus.
    pub fn moving_rank(&self) -> i64 {
        self.plus.filter_weights(|w| !is_t0_fixed(w)).rank()
    }
}

fn checked(k: &KClass, plus: KClass, kappa: Exp3, what: &str) -> Result<Split> {
    let minus = k - &plus;
    if minus != serre_dual(&plus, kappa) {
        return Err(Error::DualityViolated(format!("{what}: minus part is not dual to the plus part")));
    }
    Ok(Split { plus, minus })
}

/// Splits a self-dual class by choosing, from every pair of dual terms, the
/// one with the larger `(weight, tag)`.
///
/// Every Laurent polynomial splitting of `k` has the same `plus(1, 1, 1)`
/// modulo 2: two choices differ by a class `D` with `D = κ^{-1} D̄`, whose
/// terms come in pairs of equal multiplicity because `w = -w - κ` has no
/// solution when `κ` has an odd entry.
pub fn canonical_split(k: &KClass, kappa: Exp3) -> Result<Split> {
    if kappa.iter().all(|x| x % 2 == 0) {
        return Err(Error::InvalidInput("canonical character with only even entries".into()));
    }
    let mut plus = KClass::zero(k.factor_count());
    for ((tag, w), m) in k.iter() {
        let dw = exp_add(exp_neg(*w), exp_neg(kappa));
        let dtag = tag.dual();
        if (*w, tag) > (dw, &dtag) {
            plus.add_term(*m, tag.clone(), *w);
        }
    }
    checked(k, plus, kappa, "canonical split")
}

/// The splitting of `E_αβ` induced by `G⁺_αβ`; requires a Calabi-Yau edge.
pub fn split_edge(q_edge: &KClass, flags: [Flag; 2], axis: usize, m: i32, m_prime: i32) -> Result<Split> {
    let n = q_edge.factor_count();
    let p = edge_reflexive_character(flags, axis, n);
    let e = super::character::edge_class(q_edge, flags, axis, m, m_prime)?;
    let plus = redistribute_edge(&g_plus_class(q_edge, &p, axis), axis, m, m_prime)?;
    checked(&e, plus, KAPPA, "edge")
}

/// Splitting of `V_α`.
///
/// Without legs the plus part is `Q P̄ - Q Q̄ (1 - t1)(1 - t2)/(t1 t2)`, checked to
/// be a Laurent polynomial. With legs the canonical pairing of
/// [`canonical_split`] is used.
pub fn split_vertex(c: &DoubleBoxConfig, f: &ChartFactors) -> Result<Split> {
    let v = vertex_class_with(c, f)?;
    if c.has_legs() {
        return canonical_split(&v, KAPPA);
    }
    let q = quotient_character_with(c, f)?.to_class()?;
    let p = KClass::from_laurent(f.count, &reflexive_character(&c.chart));
    let qq = (&q * &q.bar()).mul_one_minus(0, 1).mul_one_minus(1, 1).shift([-1, -1, 0]);
    let plus = &(&q * &p.bar()) - &qq;
    checked(&v, plus, KAPPA, "vertex")
}

/// Predicted `E⁺(1, 1, 1) mod 2 = m |λ| (v_1 + v_2 + 1)` for the transverse flags.
pub fn e111(m: i32, lam: &DoubleSquareConfig) -> u8 {
    let s = m as i64 * lam.size() as i64 * (lam.flags[0].v as i64 + lam.flags[1].v as i64 + 1);
    s.rem_euclid(2) as u8
}

/// Predicted `V⁺(1, 1, 1) mod 2 = Σ_i |λ_i| v_{ρ_i}`, with `ρ_i` the face normal to axis `i`.
pub fn v111(c: &DoubleBoxConfig) -> u8 {
    let v = c.chart.v();
    let s: i64 = (0..3).map(|i| c.legs[i].size() as i64 * v[i] as i64).sum();
    s.rem_euclid(2) as u8
}

/// Whether the `T_0`-fixed part of `x` is `T_C - Ω_C ⊗ (t1 t2 t3)^{-1}`, the
/// situation in which the sign of the weight is `(-1)^{dim + moving rank}`.
pub fn has_expected_obstructions(x: &KClass, n: u32) -> bool {
    let mut expect = KClass::zero(n);
    for i in 1..=n {
        expect.add_term(2, BundleTag::single(i, 1), [0, 0, 0]);
        expect.add_term(-1, BundleTag::trivial(), [0, 0, 0]);
        expect.add_term(-2, BundleTag::single(i, -1), exp_neg(KAPPA));
        expect.add_term(1, BundleTag::trivial(), exp_neg(KAPPA));
    }
    x.t0_fixed_part() == expect
}
