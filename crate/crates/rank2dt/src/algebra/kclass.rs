//! K-theory classes over a product of projective lines with torus weights.
//!
//! A term is `m * L * t^w` where `L` is a line bundle `O(d_1, ..., d_N)` on
//! `(P^1)^N`, recorded as a [`BundleTag`].

use super::laurent::{exp_add, exp_neg, Exp3, LaurentPoly3};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Line bundle `O(d_1, ..., d_N)` on `(P^1)^N`, stored as sorted `(factor, degree)`
/// pairs with nonzero degrees. Factor indices start at 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BundleTag(Vec<(u32, i32)>);

impl BundleTag {
    /// The trivial bundle.
    pub fn trivial() -> Self {
        Self(Vec::new())
    }

    /// `O(d)` pulled back from factor `i`.
    pub fn single(i: u32, d: i32) -> Self {
        if d == 0 {
            Self::trivial()
        } else {
            Self(vec![(i, d)])
        }
    }

    /// Builds a tag from arbitrary `(factor, degree)` pairs.
    pub fn from_degrees<I: IntoIterator<Item = (u32, i32)>>(it: I) -> Self {
        let mut map = BTreeMap::new();
        for (i, d) in it {
            *map.entry(i).or_insert(0) += d;
        }
        Self(map.into_iter().filter(|(_, d)| *d != 0).collect())
    }

    /// Whether this is the trivial bundle.
    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    /// The `(factor, degree)` pairs.
    pub fn degrees(&self) -> &[(u32, i32)] {
        &self.0
    }

    /// Largest factor index used, or 0.
    pub fn max_factor(&self) -> u32 {
        self.0.iter().map(|(i, _)| *i).max().unwrap_or(0)
    }

    /// Tensor product.
    pub fn tensor(&self, other: &Self) -> Self {
        Self::from_degrees(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Dual bundle.
    pub fn dual(&self) -> Self {
        Self(self.0.iter().map(|(i, d)| (*i, -*d)).collect())
    }
}

impl fmt::Display for BundleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "O");
        }
        write!(f, "O(")?;
        for (n, (i, d)) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}@{}", d, i)?;
        }
        write!(f, ")")
    }
}

/// Element of `K_0((P^1)^N) ⊗ Z[t1^±, t2^±, t3^±]` restricted to sums of tagged monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KClass {
    factors: u32,
    terms: BTreeMap<(BundleTag, Exp3), i64>,
}

impl KClass {
    /// The zero class over `(P^1)^factors`.
    pub fn zero(factors: u32) -> Self {
        Self { factors, terms: BTreeMap::new() }
    }

    /// A single term `m * tag * t^w`.
    pub fn term(factors: u32, m: i64, tag: BundleTag, w: Exp3) -> Self {
        let mut k = Self::zero(factors);
        k.add_term(m, tag, w);
        k
    }

    /// Embeds a Laurent polynomial with trivial tags.
    pub fn from_laurent(factors: u32, p: &LaurentPoly3) -> Self {
        let mut k = Self::zero(factors);
        for (e, c) in p.iter() {
            k.add_term(*c, BundleTag::trivial(), *e);
        }
        k
    }

    /// Number of projective line factors of the base.
    pub fn factor_count(&self) -> u32 {
        self.factors
    }

    /// Returns the same class viewed over a base with at least `n` factors.
    pub fn with_factor_count(mut self, n: u32) -> Self {
        self.factors = self.factors.max(n);
        self
    }

    /// Adds `m * tag * t^w` in place, merging equal keys and dropping zeros.
    pub fn add_term(&mut self, m: i64, tag: BundleTag, w: Exp3) {
        if m == 0 {
            return;
        }
        assert!(
            tag.max_factor() <= self.factors,
            "tag index {} exceeds factor count {}",
            tag.max_factor(),
            self.factors
        );
        let key = (tag, w);
        let entry = self.terms.entry(key.clone()).or_insert(0);
        *entry += m;
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    /// Iterates over `((tag, weight), multiplicity)`.
    pub fn iter(&self) -> impl Iterator<Item = (&(BundleTag, Exp3), &i64)> {
        self.terms.iter()
    }

    /// Number of distinct `(tag, weight)` keys.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Whether the class is zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same as [`Self::is_zero`]: no terms.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplicity of a given `(tag, weight)`.
    pub fn mult(&self, tag: &BundleTag, w: Exp3) -> i64 {
        self.terms.get(&(tag.clone(), w)).copied().unwrap_or(0)
    }

    /// Sum of all multiplicities.
    pub fn rank(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Forgets tags and returns the underlying character.
    pub fn character(&self) -> LaurentPoly3 {
        LaurentPoly3::from_terms(self.terms.iter().map(|((_, w), m)| (*w, *m)))
    }

    /// The bar involution: weights and tag degrees are negated.
    pub fn bar(&self) -> Self {
        let mut out = Self::zero(self.factors);
        for ((tag, w), m) in self.terms.iter() {
            out.add_term(*m, tag.dual(), exp_neg(*w));
        }
        out
    }

    /// Multiplies by the monomial `t^e`.
    pub fn shift(&self, e: Exp3) -> Self {
        let mut out = Self::zero(self.factors);
        for ((tag, w), m) in self.terms.iter() {
            out.add_term(*m, tag.clone(), exp_add(*w, e));
        }
        out
    }

    /// Multiplies by an integer.
    pub fn scale(&self, c: i64) -> Self {
        let mut out = Self::zero(self.factors);
        if c == 0 {
            return out;
        }
        for ((tag, w), m) in self.terms.iter() {
            out.add_term(*m * c, tag.clone(), *w);
        }
        out
    }

    /// Applies an exponent substitution to every term.
    pub fn map_weights<F: Fn(Exp3) -> Exp3>(&self, f: F) -> Self {
        let mut out = Self::zero(self.factors);
        for ((tag, w), m) in self.terms.iter() {
            out.add_term(*m, tag.clone(), f(*w));
        }
        out
    }

    /// Keeps the terms whose weight satisfies `pred`.
    pub fn filter_weights<F: Fn(Exp3) -> bool>(&self, pred: F) -> Self {
        let mut out = Self::zero(self.factors);
        for ((tag, w), m) in self.terms.iter() {
            if pred(*w) {
                out.add_term(*m, tag.clone(), *w);
            }
        }
        out
    }

    /// Terms fixed by the full torus (weight zero).
    pub fn t_fixed_part(&self) -> Self {
        self.filter_weights(|w| w == [0, 0, 0])
    }

    /// Terms fixed by the Calabi-Yau subtorus (weights `(k, k, k)`).
    pub fn t0_fixed_part(&self) -> Self {
        self.filter_weights(is_t0_fixed)
    }

    /// Multiplies by `(1 - t_axis)^power`.
    pub fn mul_one_minus(&self, axis: usize, power: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..power {
            let mut e = [0; 3];
            e[axis] = 1;
            out = &out - &out.shift(e);
        }
        out
    }

    /// Exact division by `(1 - t_axis)`.
    ///
    /// Succeeds iff along every line parallel to the axis (fixed tag and other
    /// exponents) the multiplicities sum to zero.
    pub fn div_one_minus(&self, axis: usize) -> Result<Self> {
        let mut lines: BTreeMap<(BundleTag, [i32; 2]), BTreeMap<i32, i64>> = BTreeMap::new();
        for ((tag, w), m) in self.terms.iter() {
            let rest = other_two(*w, axis);
            *lines.entry((tag.clone(), rest)).or_default().entry(w[axis]).or_insert(0) += *m;
        }
        let mut out = Self::zero(self.factors);
        for ((tag, rest), line) in lines {
            let mut acc = 0i64;
            for (k, m) in line.iter() {
                acc += m;
                if acc != 0 {
                    // The running sum stays constant until the next exponent.
                    let next = line.range(k + 1..).next().map(|(n, _)| *n);
                    let end = match next {
                        Some(n) => n,
                        None => {
                            return Err(Error::NotPolynomial(format!(
                                "nonzero remainder {acc} along axis {} at tag {tag}",
                                axis + 1
                            )))
                        }
                    };
                    for j in *k..end {
                        out.add_term(acc, tag.clone(), join_two(rest, axis, j));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Whether a weight is fixed by the Calabi-Yau subtorus.
pub fn is_t0_fixed(w: Exp3) -> bool {
    w[0] == w[1] && w[1] == w[2]
}

fn other_two(w: Exp3, axis: usize) -> [i32; 2] {
    match axis {
        0 => [w[1], w[2]],
        1 => [w[0], w[2]],
        _ => [w[0], w[1]],
    }
}

fn join_two(rest: [i32; 2], axis: usize, k: i32) -> Exp3 {
    match axis {
        0 => [k, rest[0], rest[1]],
        1 => [rest[0], k, rest[1]],
        _ => [rest[0], rest[1], k],
    }
}

impl Add for &KClass {
    type Output = KClass;
    fn add(self, rhs: &KClass) -> KClass {
        let mut out = self.clone();
        out.factors = out.factors.max(rhs.factors);
        for ((tag, w), m) in rhs.terms.iter() {
            out.add_term(*m, tag.clone(), *w);
        }
        out
    }
}

impl Sub for &KClass {
    type Output = KClass;
    fn sub(self, rhs: &KClass) -> KClass {
        let mut out = self.clone();
        out.factors = out.factors.max(rhs.factors);
        for ((tag, w), m) in rhs.terms.iter() {
            out.add_term(-*m, tag.clone(), *w);
        }
        out
    }
}

impl Neg for &KClass {
    type Output = KClass;
    fn neg(self) -> KClass {
        self.scale(-1)
    }
}

impl Mul for &KClass {
    type Output = KClass;
    fn mul(self, rhs: &KClass) -> KClass {
        let mut out = KClass::zero(self.factors.max(rhs.factors));
        for ((ta, wa), ma) in self.terms.iter() {
            for ((tb, wb), mb) in rhs.terms.iter() {
                out.add_term(ma * mb, ta.tensor(tb), exp_add(*wa, *wb));
            }
        }
        out
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, ((tag, w), m)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            write!(f, "{:+}*{}*t^({},{},{})", m, tag, w[0], w[1], w[2])?;
        }
        Ok(())
    }
}

/// A K-class divided by `(1-t1)^a1 (1-t2)^a2 (1-t3)^a3`.
///
/// Characters of quotients with infinite legs live here until redistribution
/// clears the denominators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FracK {
    /// Numerator.
    pub num: KClass,
    /// Exponents of the `(1 - t_i)` denominators.
    pub den: [u32; 3],
}

impl FracK {
    /// A polynomial class viewed as a fraction with trivial denominator.
    pub fn poly(k: KClass) -> Self {
        Self { num: k, den: [0; 3] }
    }

    /// `k / (1 - t_axis)`.
    pub fn over_one_minus(k: KClass, axis: usize) -> Self {
        let mut den = [0; 3];
        den[axis] = 1;
        Self { num: k, den }
    }

    fn lift(&self, den: [u32; 3]) -> KClass {
        let mut n = self.num.clone();
        for (i, (&have, &want)) in self.den.iter().zip(den.iter()).enumerate() {
            n = n.mul_one_minus(i, want - have);
        }
        n
    }

    /// Sum of two fractions over the least common denominator.
    pub fn add(&self, other: &Self) -> Self {
        let den = [
            self.den[0].max(other.den[0]),
            self.den[1].max(other.den[1]),
            self.den[2].max(other.den[2]),
        ];
        Self { num: &self.lift(den) + &other.lift(den), den }
    }

    /// Difference of two fractions.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        Self { num: -&self.num, den: self.den }
    }

    /// Product of two fractions.
    pub fn mul(&self, other: &Self) -> Self {
        Self {
            num: &self.num * &other.num,
            den: [self.den[0] + other.den[0], self.den[1] + other.den[1], self.den[2] + other.den[2]],
        }
    }

    /// Multiplies by a polynomial class.
    pub fn mul_poly(&self, k: &KClass) -> Self {
        Self { num: &self.num * k, den: self.den }
    }

    /// Multiplies by `t^e`.
    pub fn shift(&self, e: Exp3) -> Self {
        Self { num: self.num.shift(e), den: self.den }
    }

    /// Bar involution, using `1/(1 - t^{-1}) = -t/(1 - t)`.
    pub fn bar(&self) -> Self {
        let mut num = self.num.bar();
        for (i, &a) in self.den.iter().enumerate() {
            let mut e = [0; 3];
            e[i] = a as i32;
            num = num.shift(e);
            if a % 2 == 1 {
                num = -&num;
            }
        }
        Self { num, den: self.den }
    }

    /// Cancels the denominators exactly, failing if a remainder survives.
    pub fn into_poly(self) -> Result<KClass> {
        let mut n = self.num;
        for (i, &a) in self.den.iter().enumerate() {
            for _ in 0..a {
                n = n.div_one_minus(i)?;
            }
        }
        Ok(n)
    }
}
