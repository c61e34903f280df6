//! Laurent polynomials in three torus characters with integer coefficients.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// Exponent vector of a torus character `t1^k1 t2^k2 t3^k3`.
pub type Exp3 = [i32; 3];

/// Componentwise sum of exponent vectors.
pub fn exp_add(a: Exp3, b: Exp3) -> Exp3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

/// Componentwise negation of an exponent vector.
pub fn exp_neg(a: Exp3) -> Exp3 {
    [-a[0], -a[1], -a[2]]
}

/// Element of `Z[t1^±, t2^±, t3^±]`, stored as a sparse map without zero entries.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaurentPoly3 {
    terms: BTreeMap<Exp3, i64>,
}

impl LaurentPoly3 {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::monomial([0, 0, 0], 1)
    }

    /// The single term `c * t^e`.
    pub fn monomial(e: Exp3, c: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (Exp3, i64)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    /// Adds `c * t^e` in place.
    pub fn add_term(&mut self, e: Exp3, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(e).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    /// Coefficient of `t^e`.
    pub fn coeff(&self, e: Exp3) -> i64 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    /// Iterates over nonzero terms in exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (&Exp3, &i64)> {
        self.terms.iter()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Whether the polynomial is zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same as [`Self::is_zero`]: no terms.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The bar involution `t^k -> t^{-k}`.
    pub fn bar(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (exp_neg(*e), *c)))
    }

    /// Multiplies by the monomial `t^e`.
    pub fn shift(&self, e: Exp3) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (exp_add(*k, e), *c)))
    }

    /// Applies an exponent substitution to every term.
    pub fn map_exponents<F: Fn(Exp3) -> Exp3>(&self, f: F) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (f(*k), *c)))
    }

    /// Value at `t1 = t2 = t3 = 1`.
    pub fn eval_one(&self) -> i64 {
        self.terms.values().sum()
    }
}

impl Add for &LaurentPoly3 {
    type Output = LaurentPoly3;
    fn add(self, rhs: &LaurentPoly3) -> LaurentPoly3 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly3 {
    type Output = LaurentPoly3;
    fn add(mut self, rhs: LaurentPoly3) -> LaurentPoly3 {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly3> for LaurentPoly3 {
    fn add_assign(&mut self, rhs: &LaurentPoly3) {
        for (e, c) in rhs.terms.iter() {
            self.add_term(*e, *c);
        }
    }
}

impl SubAssign<&LaurentPoly3> for LaurentPoly3 {
    fn sub_assign(&mut self, rhs: &LaurentPoly3) {
        for (e, c) in rhs.terms.iter() {
            self.add_term(*e, -*c);
        }
    }
}

impl Sub for &LaurentPoly3 {
    type Output = LaurentPoly3;
    fn sub(self, rhs: &LaurentPoly3) -> LaurentPoly3 {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly3 {
    type Output = LaurentPoly3;
    fn sub(mut self, rhs: LaurentPoly3) -> LaurentPoly3 {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly3 {
    type Output = LaurentPoly3;
    fn neg(self) -> LaurentPoly3 {
        LaurentPoly3::from_terms(self.terms.iter().map(|(e, c)| (*e, -*c)))
    }
}

impl Mul for &LaurentPoly3 {
    type Output = LaurentPoly3;
    fn mul(self, rhs: &LaurentPoly3) -> LaurentPoly3 {
        let mut out = LaurentPoly3::zero();
        for (a, ca) in self.terms.iter() {
            for (b, cb) in rhs.terms.iter() {
                out.add_term(exp_add(*a, *b), ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly3 {
    type Output = LaurentPoly3;
    fn mul(self, rhs: LaurentPoly3) -> LaurentPoly3 {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{:+}*t^({},{},{})", c, e[0], e[1], e[2])?;
        }
        Ok(())
    }
}
