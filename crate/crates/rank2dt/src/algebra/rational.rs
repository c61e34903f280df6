//! Rational functions in the equivariant parameters `s1, s2, s3`.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector of a monomial `s1^a s2^b s3^c`.
pub type SExp = [u32; 3];

/// Polynomial in `s1, s2, s3` with exact rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MPoly {
    terms: BTreeMap<SExp, BigRational>,
}

impl MPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// A constant.
    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term([0, 0, 0], c);
        p
    }

    /// An integer constant.
    pub fn int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    /// The linear form `w1 s1 + w2 s2 + w3 s3`.
    pub fn linear(w: [i32; 3]) -> Self {
        let mut p = Self::zero();
        for (i, &c) in w.iter().enumerate() {
            let mut e = [0; 3];
            e[i] = 1;
            p.add_term(e, BigRational::from_integer(BigInt::from(c)));
        }
        p
    }

    /// The variable `s_i` for `i` in `0..3`.
    pub fn var(i: usize) -> Self {
        let mut w = [0; 3];
        w[i] = 1;
        Self::linear(w)
    }

    /// Adds `c * s^e` in place.
    pub fn add_term(&mut self, e: SExp, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Whether the polynomial is zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates over nonzero terms.
    pub fn iter(&self) -> impl Iterator<Item = (&SExp, &BigRational)> {
        self.terms.iter()
    }

    /// Sum.
    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms.iter() {
            out.add_term(*e, c.clone());
        }
        out
    }

    /// Difference.
    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms.iter() {
            out.add_term(*e, -c.clone());
        }
        out
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }

    /// Product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in self.terms.iter() {
            for (b, cb) in other.terms.iter() {
                out.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2]], ca * cb);
            }
        }
        out
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    /// Total degree of each term if all agree, `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| e[0] + e[1] + e[2]);
        let first = it.next()?;
        if it.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Value at a rational point.
    pub fn eval(&self, s: &[BigRational; 3]) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in self.terms.iter() {
            let mut t = c.clone();
            for i in 0..3 {
                for _ in 0..e[i] {
                    t *= &s[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes `s3 = -s1 - s2`.
    pub fn restrict_cy(&self) -> Self {
        let l = MPoly::linear([-1, -1, 0]);
        let mut out = Self::zero();
        for (e, c) in self.terms.iter() {
            let mut t = Self::zero();
            t.add_term([e[0], e[1], 0], c.clone());
            for _ in 0..e[2] {
                t = t.mul(&l);
            }
            out = out.add(&t);
        }
        out
    }

    /// Exact division by `s1 + s2 + s3`, or `None` if it does not divide.
    pub fn div_by_cy_form(&self) -> Option<Self> {
        // View the polynomial in s3 with coefficients in Q[s1, s2] and divide by s3 + a.
        let a = MPoly::linear([1, 1, 0]);
        let mut by_deg: BTreeMap<u32, MPoly> = BTreeMap::new();
        for (e, c) in self.terms.iter() {
            by_deg.entry(e[2]).or_default().add_term([e[0], e[1], 0], c.clone());
        }
        let top = match by_deg.keys().next_back() {
            Some(&t) => t,
            None => return Some(Self::zero()),
        };
        if top == 0 {
            return None;
        }
        let mut q: Vec<MPoly> = vec![MPoly::zero(); top as usize];
        let coeff = |j: u32| by_deg.get(&j).cloned().unwrap_or_default();
        q[top as usize - 1] = coeff(top);
        for j in (1..top).rev() {
            q[j as usize - 1] = coeff(j).sub(&a.mul(&q[j as usize]));
        }
        let rem = coeff(0).sub(&a.mul(&q[0]));
        if !rem.is_zero() {
            return None;
        }
        let mut out = Self::zero();
        for (j, qj) in q.into_iter().enumerate() {
            for (e, c) in qj.terms {
                out.add_term([e[0], e[1], j as u32], c);
            }
        }
        Some(out)
    }

    fn content(&self) -> Option<BigRational> {
        // gcd of numerators over lcm of denominators, sign of the leading term.
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for c in self.terms.values() {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        if g.is_zero() {
            return None;
        }
        let lead = self.terms.values().next_back()?;
        let mut content = BigRational::new(g, l);
        if lead.is_negative() {
            content = -content;
        }
        Some(content)
    }

    fn min_exponents(&self) -> SExp {
        let mut m = [u32::MAX; 3];
        for e in self.terms.keys() {
            for i in 0..3 {
                m[i] = m[i].min(e[i]);
            }
        }
        if self.terms.is_empty() {
            [0; 3]
        } else {
            m
        }
    }

    fn divide_monomial(&self, e: SExp) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| ([k[0] - e[0], k[1] - e[1], k[2] - e[2]], c.clone())).collect(),
        }
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})*s^({},{},{})", c, e[0], e[1], e[2])?;
        }
        Ok(())
    }
}

/// Quotient of two polynomials in `s1, s2, s3`, reduced by content and by common monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFn {
    num: MPoly,
    den: MPoly,
}

impl RationalFn {
    /// Builds `num / den`, rejecting a zero denominator.
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return Self { num, den: MPoly::int(1) };
        }
        let mn = num.min_exponents();
        let md = den.min_exponents();
        let common = [mn[0].min(md[0]), mn[1].min(md[1]), mn[2].min(md[2])];
        let num = num.divide_monomial(common);
        let den = den.divide_monomial(common);
        let cd = den.content().expect("nonzero denominator");
        let inv = BigRational::one() / cd;
        Self { num: num.scale(&inv), den: den.scale(&inv) }
    }

    /// A polynomial viewed as a rational function.
    pub fn from_poly(p: MPoly) -> Self {
        Self::normalized(p, MPoly::int(1))
    }

    /// A constant.
    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(MPoly::constant(c))
    }

    /// An integer constant.
    pub fn int(c: i64) -> Self {
        Self::from_poly(MPoly::int(c))
    }

    /// Numerator.
    pub fn numer(&self) -> &MPoly {
        &self.num
    }

    /// Denominator.
    pub fn denom(&self) -> &MPoly {
        &self.den
    }

    /// Whether the function is zero.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Degree of homogeneity (numerator minus denominator), if both are homogeneous.
    pub fn homogeneity(&self) -> Option<i64> {
        if self.num.is_zero() {
            return Some(0);
        }
        Some(self.num.homogeneous_degree()? as i64 - self.den.homogeneous_degree()? as i64)
    }

    /// Sum.
    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::normalized(self.num.add(&o.num), self.den.clone());
        }
        Self::normalized(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    /// Difference.
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }

    /// Product.
    pub fn mul(&self, o: &Self) -> Self {
        Self::normalized(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(Self::normalized(self.den.clone(), self.num.clone()))
        }
    }

    /// Value at a rational point, `None` if the denominator vanishes there.
    pub fn eval(&self, s: &[BigRational; 3]) -> Option<BigRational> {
        let d = self.den.eval(s);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(s) / d)
    }

    /// Restriction to the Calabi-Yau locus `s3 = -s1 - s2`.
    ///
    /// Factors of `s1 + s2 + s3` are cancelled between numerator and denominator
    /// before substituting.
    pub fn specialize_cy(&self) -> Result<Self> {
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        while den.restrict_cy().is_zero() {
            den = den.div_by_cy_form().ok_or(Error::PoleOnCYLocus)?;
            if num.is_zero() {
                break;
            }
            num = num.div_by_cy_form().ok_or(Error::PoleOnCYLocus)?;
        }
        Ok(Self::normalized(num.restrict_cy(), den.restrict_cy()))
    }

    /// Exact value of a degree zero function of `s1, s2`, certified by random probes.
    ///
    /// Draws `points` probes with a fixed-seed generator, each coordinate in
    /// `[1, 10^6]`, skipping probes where the denominator vanishes or where the
    /// ratio `s1/s2` repeats an earlier one.
    pub fn constant_value(&self, seed: u64, points: usize) -> Result<BigRational> {
        let probes = probe_points(seed, points.max(3), |s| !self.den.eval(s).is_zero());
        let mut value: Option<BigRational> = None;
        for s in probes.iter() {
            let v = self.eval(s).expect("probe avoids poles");
            match &value {
                None => value = Some(v),
                Some(prev) if *prev != v => {
                    return Err(Error::NotConstant(format!("{prev} vs {v}")));
                }
                _ => {}
            }
        }
        Ok(value.expect("at least one probe"))
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] / [{}]", self.num, self.den)
    }
}

/// Deterministic probe points `(s1, s2, -s1 - s2)` on the Calabi-Yau plane.
///
/// Coordinates are integers in `[1, 10^6]` with pairwise distinct ratios; `ok`
/// filters out points where the caller's denominator vanishes.
pub fn probe_points<F: Fn(&[BigRational; 3]) -> bool>(
    seed: u64,
    count: usize,
    ok: F,
) -> Vec<[BigRational; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<[BigRational; 3]> = Vec::new();
    let mut ratios: Vec<BigRational> = Vec::new();
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        assert!(attempts < 10_000, "could not find admissible probe points");
        let a: i64 = rng.gen_range(1..=1_000_000);
        let b: i64 = rng.gen_range(1..=1_000_000);
        let r = BigRational::new(BigInt::from(a), BigInt::from(b));
        if ratios.contains(&r) {
            continue;
        }
        let s1 = BigRational::from_integer(BigInt::from(a));
        let s2 = BigRational::from_integer(BigInt::from(b));
        let s3 = -(&s1 + &s2);
        let p = [s1, s2, s3];
        if !ok(&p) {
            continue;
        }
        ratios.push(r);
        out.push(p);
    }
    out
}
