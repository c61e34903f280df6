//! Equivariant cohomology of `(P^1)^N` with nilpotent hyperplane classes.
//!
//! A class is a map from square-free monomials `h_I` (encoded as bit masks) to
//! coefficients. Multiplication drops any product containing `h_i^2`.
//!
//! Two evaluation strategies for `∫ e(K)` at the Calabi-Yau locus are provided:
//!
//! * [`euler_class`] + [`localization_integral`] + [`RationalFn::specialize_cy`]
//!   works with full rational functions in `s1, s2, s3`;
//! * [`cy_integral`] substitutes random integers for `s1, s2` and keeps only the
//!   formal direction `S = s1 + s2 + s3`, working modulo a power of `S`.

use super::kclass::{BundleTag, KClass};
use super::laurent::Exp3;
use super::rational::{probe_points, MPoly, RationalFn};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt::Debug;

/// Commutative ring used as coefficient ring of [`CohClass`].
pub trait Coeff: Clone + PartialEq + Debug {
    /// Additive identity.
    fn ring_zero() -> Self;
    /// Multiplicative identity.
    fn ring_one() -> Self;
    /// Whether the element is zero.
    fn is_ring_zero(&self) -> bool;
    /// Sum.
    fn ring_add(&self, o: &Self) -> Self;
    /// Product.
    fn ring_mul(&self, o: &Self) -> Self;
    /// Integer embedding.
    fn ring_from_int(c: i64) -> Self;
}

impl Coeff for RationalFn {
    fn ring_zero() -> Self {
        RationalFn::int(0)
    }
    fn ring_one() -> Self {
        RationalFn::int(1)
    }
    fn is_ring_zero(&self) -> bool {
        RationalFn::is_zero(self)
    }
    fn ring_add(&self, o: &Self) -> Self {
        RationalFn::add(self, o)
    }
    fn ring_mul(&self, o: &Self) -> Self {
        RationalFn::mul(self, o)
    }
    fn ring_from_int(c: i64) -> Self {
        RationalFn::int(c)
    }
}

impl Coeff for BigRational {
    fn ring_zero() -> Self {
        Zero::zero()
    }
    fn ring_one() -> Self {
        One::one()
    }
    fn is_ring_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn ring_add(&self, o: &Self) -> Self {
        self + o
    }
    fn ring_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn ring_from_int(c: i64) -> Self {
        BigRational::from_integer(BigInt::from(c))
    }
}

/// Class in `H^*((P^1)^N) ⊗ C` where `h_i^2 = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct CohClass<C: Coeff> {
    factors: u32,
    coeffs: BTreeMap<u64, C>,
}

impl<C: Coeff> CohClass<C> {
    /// The zero class.
    pub fn zero(factors: u32) -> Self {
        assert!(factors <= 64, "at most 64 projective line factors are supported");
        Self { factors, coeffs: BTreeMap::new() }
    }

    /// A scalar class `c * 1`.
    pub fn scalar(factors: u32, c: C) -> Self {
        let mut out = Self::zero(factors);
        out.add_coeff(0, c);
        out
    }

    /// The first Chern class `Σ d_i h_i` of a line bundle plus a scalar.
    pub fn linear(factors: u32, tag: &BundleTag, scalar: C) -> Self {
        let mut out = Self::scalar(factors, scalar);
        for (i, d) in tag.degrees() {
            out.add_coeff(1u64 << (i - 1), C::ring_from_int(*d as i64));
        }
        out
    }

    fn add_coeff(&mut self, mask: u64, c: C) {
        if c.is_ring_zero() {
            return;
        }
        let next = match self.coeffs.get(&mask) {
            Some(old) => old.ring_add(&c),
            None => c,
        };
        if next.is_ring_zero() {
            self.coeffs.remove(&mask);
        } else {
            self.coeffs.insert(mask, next);
        }
    }

    /// Number of factors `N`.
    pub fn factor_count(&self) -> u32 {
        self.factors
    }

    /// Coefficient of the monomial `h_I`.
    pub fn coeff(&self, mask: u64) -> C {
        self.coeffs.get(&mask).cloned().unwrap_or_else(C::ring_zero)
    }

    /// The scalar (degree zero) part.
    pub fn scalar_part(&self) -> C {
        self.coeff(0)
    }

    /// Whether the class is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Sum.
    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.factors = out.factors.max(o.factors);
        for (m, c) in o.coeffs.iter() {
            out.add_coeff(*m, c.clone());
        }
        out
    }

    /// Product, discarding monomials with a repeated factor.
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.factors.max(o.factors));
        for (ma, ca) in self.coeffs.iter() {
            for (mb, cb) in o.coeffs.iter() {
                if ma & mb != 0 {
                    continue;
                }
                out.add_coeff(ma | mb, ca.ring_mul(cb));
            }
        }
        out
    }

    /// Multiplies every coefficient by a scalar.
    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.factors);
        for (m, x) in self.coeffs.iter() {
            out.add_coeff(*m, x.ring_mul(c));
        }
        out
    }

    /// Nilpotent part (everything except the scalar term).
    fn nilpotent(&self) -> Self {
        let mut out = self.clone();
        out.coeffs.remove(&0);
        out
    }

    /// `self^k` for `k >= 0`.
    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::scalar(self.factors, C::ring_one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }
}

impl CohClass<RationalFn> {
    /// Inverse of a class with invertible scalar part, via the finite geometric series.
    pub fn inverse(&self) -> Option<Self> {
        let c0inv = self.scalar_part().inv()?;
        let n = self.nilpotent().scale(&c0inv.neg());
        let mut term = Self::scalar(self.factors, RationalFn::int(1));
        let mut acc = term.clone();
        for _ in 0..self.factors {
            term = term.mul(&n);
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        Some(acc.scale(&c0inv))
    }
}

/// Equivariant Euler class `∏ (c_1(L) + w·s)^m` of a K-class, with rational function coefficients.
///
/// Returns `Ok(None)` when a positive-multiplicity factor is identically zero
/// (trivial tag, weight zero), and [`Error::IllDefinedEuler`] when such a factor
/// would have to be inverted.
pub fn euler_class(k: &KClass) -> Result<Option<CohClass<RationalFn>>> {
    let n = k.factor_count();
    if let Some(z) = zero_factor_verdict(k)? {
        return Ok(z);
    }
    let mut acc = CohClass::scalar(n, RationalFn::int(1));
    for ((tag, w), m) in k.iter() {
        let factor = CohClass::linear(n, tag, RationalFn::from_poly(MPoly::linear(*w)));
        let f = if *m > 0 {
            factor.pow(*m as u32)
        } else {
            factor
                .inverse()
                .ok_or_else(|| Error::IllDefinedEuler(format!("cannot invert {tag} at weight {w:?}")))?
                .pow((-*m) as u32)
        };
        acc = acc.mul(&f);
    }
    Ok(Some(acc))
}

/// Handles identically vanishing factors before any division.
///
/// `Ok(Some(None))` means the Euler class is exactly zero, `Ok(None)` means no
/// verdict and the product must be computed.
fn zero_factor_verdict(k: &KClass) -> Result<Option<Option<CohClass<RationalFn>>>> {
    let m0 = k.mult(&BundleTag::trivial(), [0, 0, 0]);
    for ((tag, w), m) in k.iter() {
        if *w == [0, 0, 0] && *m < 0 {
            return Err(Error::IllDefinedEuler(format!(
                "factor {tag} with weight zero appears with multiplicity {m}"
            )));
        }
    }
    if m0 > 0 {
        return Ok(Some(None));
    }
    Ok(None)
}

/// Integration over `(P^1)^N`: the coefficient of `h_1 ... h_N`.
pub fn localization_integral<C: Coeff>(c: &CohClass<C>) -> C {
    let n = c.factor_count();
    let top = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    c.coeff(top)
}

/// `∫ e(k)` over `(P^1)^N` through the fully symbolic path, specialized to the
/// Calabi-Yau locus and evaluated by probes.
pub fn cy_integral_symbolic(k: &KClass, seed: u64) -> Result<BigRational> {
    match euler_class(k)? {
        None => Ok(BigRational::zero()),
        Some(c) => localization_integral(&c).specialize_cy()?.constant_value(seed, 3),
    }
}

/// Polynomial in a single variable `S` truncated modulo `S^len`.
#[derive(Clone, Debug, PartialEq)]
struct Trunc {
    c: Vec<BigRational>,
}

impl Trunc {
    fn zero(len: usize) -> Self {
        Self { c: vec![BigRational::zero(); len] }
    }
    fn constant(len: usize, a: BigRational) -> Self {
        let mut t = Self::zero(len);
        t.c[0] = a;
        t
    }
    fn linear(len: usize, a: BigRational, b: BigRational) -> Self {
        let mut t = Self::constant(len, a);
        if len > 1 {
            t.c[1] = b;
        }
        t
    }
    fn mul(&self, o: &Self) -> Self {
        let len = self.c.len();
        let mut out = Self::zero(len);
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    out.c[i + j] += a * b;
                }
            }
        }
        out
    }
    /// Inverse of `a + b S` for `a != 0`.
    fn inv_linear(len: usize, a: &BigRational, b: &BigRational) -> Self {
        let mut out = Self::zero(len);
        let r = -(b / a);
        let mut p = BigRational::one() / a;
        for i in 0..len {
            out.c[i] = p.clone();
            p *= &r;
        }
        out
    }
}

impl Coeff for Trunc {
    fn ring_zero() -> Self {
        Trunc { c: Vec::new() }
    }
    fn ring_one() -> Self {
        Trunc { c: vec![BigRational::one()] }
    }
    fn is_ring_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
    fn ring_add(&self, o: &Self) -> Self {
        let len = self.c.len().max(o.c.len());
        let mut out = Trunc::zero(len);
        for (i, x) in self.c.iter().enumerate() {
            out.c[i] += x;
        }
        for (i, x) in o.c.iter().enumerate() {
            out.c[i] += x;
        }
        out
    }
    fn ring_mul(&self, o: &Self) -> Self {
        let len = self.c.len().max(o.c.len());
        let a = self.padded(len);
        let b = o.padded(len);
        Trunc::mul(&a, &b)
    }
    fn ring_from_int(c: i64) -> Self {
        Trunc { c: vec![BigRational::from_integer(BigInt::from(c))] }
    }
}

impl Trunc {
    fn padded(&self, len: usize) -> Self {
        let mut c = self.c.clone();
        c.resize(len, BigRational::zero());
        Self { c }
    }
}

fn binom(n: i64, k: u32) -> BigRational {
    // Generalized binomial coefficient for integer n.
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k as i64 {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    BigRational::new(num, den)
}

/// `∫ e(k)` at one probe `(s1, s2)` of the Calabi-Yau plane.
///
/// Writing `s3 = S - s1 - s2` every factor becomes `a + b S + c_1(L)` with `a`
/// rational and `b` the third weight; `a = 0` exactly for weights `(j, j, j)`.
/// Factors with `a = 0` and negative multiplicity are cleared by multiplying
/// with a known power of `S`, after which everything is a polynomial in `S`
/// and only the coefficients up to that power matter.
fn cy_integral_at(k: &KClass, s1: &BigRational, s2: &BigRational) -> Result<BigRational> {
    let n = k.factor_count();
    let nn = n as i64;
    let weight_parts = |w: Exp3| -> (BigRational, BigRational) {
        let a = BigRational::from_integer(BigInt::from(w[0] - w[2])) * s1
            + BigRational::from_integer(BigInt::from(w[1] - w[2])) * s2;
        (a, BigRational::from_integer(BigInt::from(w[2])))
    };
    let mut order: i64 = 0;
    for ((_, w), m) in k.iter() {
        let (a, _) = weight_parts(*w);
        if a.is_zero() && *m < 0 {
            order += -*m + nn;
        }
    }
    let len = order as usize + 1;
    let mut acc = CohClass::scalar(n, Trunc::constant(len, BigRational::one()));
    let mut den = BigRational::one();
    for ((tag, w), m) in k.iter() {
        let (a, b) = weight_parts(*w);
        let nil = CohClass::linear(n, tag, Trunc::zero(len));
        let c0 = Trunc::linear(len, a.clone(), b.clone());
        let factor = if *m > 0 {
            let mut f = CohClass::zero(n);
            let mut npow = CohClass::scalar(n, Trunc::constant(len, BigRational::one()));
            for j in 0..=(*m as u32).min(n) {
                let mut c0pow = Trunc::constant(len, binom(*m, j));
                for _ in 0..(*m as u32 - j) {
                    c0pow = c0pow.mul(&c0);
                }
                f = f.add(&npow.scale(&c0pow));
                npow = npow.mul(&nil);
            }
            f
        } else {
            let p = -*m;
            let mut f = CohClass::zero(n);
            let mut npow = CohClass::scalar(n, Trunc::constant(len, BigRational::one()));
            if a.is_zero() {
                if b.is_zero() {
                    return Err(Error::IllDefinedEuler(format!("weight {w:?} inverted")));
                }
                // (bS + n)^{-p} * (bS)^{p+N} = Σ_j binom(-p, j) n^j (bS)^{N-j}
                for _ in 0..(p + nn) {
                    den *= &b;
                }
                for j in 0..=n {
                    let mut c0pow = Trunc::constant(len, binom(-p, j));
                    for _ in 0..(n - j) {
                        c0pow = c0pow.mul(&c0);
                    }
                    f = f.add(&npow.scale(&c0pow));
                    npow = npow.mul(&nil);
                }
            } else {
                let inv = Trunc::inv_linear(len, &a, &b);
                let mut invpow = Trunc::constant(len, BigRational::one());
                for _ in 0..p {
                    invpow = invpow.mul(&inv);
                }
                for j in 0..=n {
                    f = f.add(&npow.scale(&invpow.mul(&Trunc::constant(len, binom(-p, j)))));
                    npow = npow.mul(&nil);
                    invpow = invpow.mul(&inv);
                }
            }
            f
        };
        acc = acc.mul(&factor);
    }
    let top = localization_integral(&acc).padded(len);
    for j in 0..order as usize {
        if !top.c[j].is_zero() {
            return Err(Error::PoleOnCYLocus);
        }
    }
    Ok(&top.c[order as usize] / den)
}

/// `∫ e(k)` over `(P^1)^N` at the Calabi-Yau locus by the fast probe path.
///
/// Applies the zero-factor bookkeeping of [`euler_class`], then evaluates at
/// `points` deterministic probes and requires all values to agree.
pub fn cy_integral(k: &KClass, seed: u64, points: usize) -> Result<BigRational> {
    if let Some(z) = zero_factor_verdict(k)? {
        debug_assert!(z.is_none());
        return Ok(BigRational::zero());
    }
    let probes = probe_points(seed, points.max(3), |s| {
        // Reject probes where a weight that is not (j, j, j) happens to vanish.
        k.iter().all(|((_, w), _)| {
            super::kclass::is_t0_fixed(*w) || {
                let a = BigRational::from_integer(BigInt::from(w[0] - w[2])) * &s[0]
                    + BigRational::from_integer(BigInt::from(w[1] - w[2])) * &s[1];
                !a.is_zero()
            }
        })
    });
    let mut value: Option<BigRational> = None;
    for p in probes.iter() {
        let v = cy_integral_at(k, &p[0], &p[1])?;
        match &value {
            None => value = Some(v),
            Some(prev) if *prev != v => return Err(Error::NotConstant(format!("{prev} vs {v}"))),
            _ => {}
        }
    }
    Ok(value.expect("at least one probe"))
}
