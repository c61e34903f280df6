//! Truncated Laurent series in one variable with exact rational coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A Laurent series known exactly up to and including the exponent `order`.
///
/// Coefficients above `order` are never stored. The variable may stand for
/// `q`, `q^-1` or `q^-2`; callers keep track of which.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: BTreeMap<i64, BigRational>,
    order: i64,
}

fn rat(c: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}

impl QSeries {
    /// The zero series known through `order`.
    pub fn zero(order: i64) -> Self {
        Self { coeffs: BTreeMap::new(), order }
    }

    /// The constant 1 known through `order`.
    pub fn one(order: i64) -> Self {
        Self::monomial(0, rat(1), order)
    }

    /// `c q^e` known through `order`.
    pub fn monomial(e: i64, c: BigRational, order: i64) -> Self {
        let mut s = Self::zero(order);
        s.add_coeff(e, c);
        s
    }

    /// Builds a series from integer coefficients.
    pub fn from_ints<I: IntoIterator<Item = (i64, i64)>>(it: I, order: i64) -> Self {
        let mut s = Self::zero(order);
        for (e, c) in it {
            s.add_coeff(e, rat(c));
        }
        s
    }

    /// Adds `c q^e`; ignored above the truncation order.
    pub fn add_coeff(&mut self, e: i64, c: BigRational) {
        if e > self.order || c.is_zero() {
            return;
        }
        let next = self.coeffs.get(&e).cloned().unwrap_or_else(BigRational::zero) + c;
        if next.is_zero() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, next);
        }
    }

    /// Truncation order.
    pub fn order(&self) -> i64 {
        self.order
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Coefficient of `q^e` (zero if unknown or absent).
    pub fn coeff(&self, e: i64) -> BigRational {
        self.coeffs.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Iterates over nonzero coefficients in exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (&i64, &BigRational)> {
        self.coeffs.iter()
    }

    /// Whether every known coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowers the truncation order, dropping coefficients above it.
    pub fn truncate(&self, order: i64) -> Self {
        let order = order.min(self.order);
        Self {
            coeffs: self.coeffs.range(..=order).map(|(e, c)| (*e, c.clone())).collect(),
            order,
        }
    }

    /// Sum, known through the smaller order.
    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.truncate(o.order);
        for (e, c) in o.coeffs.iter() {
            out.add_coeff(*e, c.clone());
        }
        out
    }

    /// Difference.
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(), order: self.order }
    }

    /// Multiplies by a scalar.
    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        Self { coeffs: self.coeffs.iter().map(|(e, x)| (*e, x * c)).collect(), order: self.order }
    }

    /// Multiplies by `q^k`; the order shifts with it.
    pub fn shift(&self, k: i64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(), order: self.order + k }
    }

    /// Product. Known through `min(val(a) + ord(b), val(b) + ord(a))`.
    pub fn mul(&self, o: &Self) -> Self {
        let order = match (self.valuation(), o.valuation()) {
            (Some(va), Some(vb)) => (va + o.order).min(vb + self.order),
            (None, Some(vb)) => vb + self.order,
            (Some(va), None) => va + o.order,
            (None, None) => self.order.min(o.order),
        };
        let mut out = Self::zero(order);
        for (ea, ca) in self.coeffs.iter() {
            for (eb, cb) in o.coeffs.range(..=order - ea) {
                out.add_coeff(ea + eb, ca * cb);
            }
        }
        out
    }

    /// Non-negative power.
    pub fn pow(&self, k: u32) -> Self {
        if k == 0 {
            return Self::one(self.order - self.valuation().unwrap_or(0));
        }
        let mut out = self.clone();
        for _ in 1..k {
            out = out.mul(self);
        }
        out
    }

    /// Multiplicative inverse; `None` for the zero series.
    pub fn inverse(&self) -> Option<Self> {
        let v = self.valuation()?;
        let lead = self.coeff(v);
        let rel = self.order - v;
        // Normalize to 1 + higher terms, invert by recursion on coefficients.
        let unit = self.shift(-v).scale(&(BigRational::one() / &lead));
        let mut inv = vec![BigRational::zero(); (rel + 1) as usize];
        inv[0] = BigRational::one();
        for n in 1..=rel {
            let mut acc = BigRational::zero();
            for (e, c) in unit.coeffs.range(1..=n) {
                acc -= c * &inv[(n - e) as usize];
            }
            inv[n as usize] = acc;
        }
        let mut out = Self::zero(rel);
        for (i, c) in inv.into_iter().enumerate() {
            out.add_coeff(i as i64, c);
        }
        Some(out.scale(&(BigRational::one() / lead)).shift(-v))
    }

    /// Substitutes `q -> q^k` for `k >= 1`.
    pub fn substitute(&self, k: i64) -> Self {
        assert!(k >= 1, "substitution power must be positive");
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e * k, c.clone())).collect(),
            order: self.order * k + k - 1,
        }
    }

    /// `1 / (1 - c q^k)^p` through `order`, for `k >= 1`.
    pub fn geometric(k: i64, c: &BigRational, p: u32, order: i64) -> Self {
        let mut base = Self::zero(order);
        let mut j = 0i64;
        let mut cj = BigRational::one();
        while j * k <= order {
            base.add_coeff(j * k, cj.clone());
            cj *= c;
            j += 1;
        }
        let mut out = Self::one(order);
        for _ in 0..p {
            out = out.mul(&base);
        }
        out
    }

    /// Integer coefficients, if all are integral.
    pub fn integer_coeffs(&self) -> Option<Vec<(i64, BigInt)>> {
        self.coeffs
            .iter()
            .map(|(e, c)| if c.is_integer() { Some((*e, c.to_integer())) } else { None })
            .collect()
    }

    /// Renders as `exponent<TAB>coefficient` lines sorted by exponent.
    pub fn to_lines(&self) -> String {
        let mut s = String::new();
        for (e, c) in self.coeffs.iter() {
            s.push_str(&format!("{e}\t{c}\n"));
        }
        s
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.coeffs.iter() {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            write!(f, "{}*q^{}", c.abs(), e)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order + 1)
    }
}

/// MacMahon function `M(q) = ∏_{k>0} (1 - q^k)^{-k}` through `order`.
pub fn macmahon(order: i64) -> QSeries {
    let mut out = QSeries::one(order);
    for k in 1..=order.max(0) {
        out = out.mul(&QSeries::geometric(k, &rat(1), k as u32, order));
    }
    out
}

/// `M(q)^2` through `order`.
pub fn macmahon_squared(order: i64) -> QSeries {
    let m = macmahon(order);
    m.mul(&m)
}

/// `∏_{i,j,k} (1 - q^{i+j+k-1}) / (1 - q^{i+j+k-2})` over the box `v1 × v2 × v3`,
/// the generating function of 3D partitions inside the box.
pub fn boxed_partition_product(v: [u32; 3], order: i64) -> QSeries {
    // Collect exponent multiplicities of numerator minus denominator factors.
    let mut net: BTreeMap<i64, i64> = BTreeMap::new();
    for i in 1..=v[0] as i64 {
        for j in 1..=v[1] as i64 {
            for k in 1..=v[2] as i64 {
                *net.entry(i + j + k - 1).or_insert(0) += 1;
                *net.entry(i + j + k - 2).or_insert(0) -= 1;
            }
        }
    }
    let mut out = QSeries::one(order);
    for (e, m) in net {
        if m == 0 {
            continue;
        }
        if m > 0 {
            let f = QSeries::from_ints([(0, 1), (e, -1)], order);
            out = out.mul(&f.pow(m as u32));
        } else {
            out = out.mul(&QSeries::geometric(e, &rat(1), (-m) as u32, order));
        }
    }
    out.truncate(order)
}
