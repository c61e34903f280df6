//! Quotient characters, the local `Ext` characters of vertices and edges, and
//! their redistribution into Laurent polynomials.

use crate::algebra::{exp_neg, BundleTag, Exp3, FracK, KClass};
use crate::boxes::{lift, Cell, DoubleBoxConfig, DoubleSquareConfig};
use crate::error::{Error, Result};
use crate::toric::{other_axes, reflexive_character, Flag};
use std::collections::HashMap;

/// Character of the quotient `R/F` on one chart.
///
/// The finite part covers the analysis box `[lo, hi]`; along each axis the
/// cross-section `edges[i]` repeats from `tail_start[i]` to infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotCharacter {
    /// Number of `P^1` factors of the base.
    pub factors: u32,
    /// Terms inside the analysis box.
    pub finite: KClass,
    /// Per axis, the cross-section character with zero exponent along the axis.
    pub edges: [KClass; 3],
    /// Per axis, the first leg layer not included in `finite`.
    pub tail_start: Exp3,
}

impl QuotCharacter {
    /// The full character as a fraction with `(1 - t_i)` denominators.
    pub fn as_frac(&self) -> FracK {
        let mut q = FracK::poly(self.finite.clone());
        for i in 0..3 {
            if self.edges[i].is_zero() {
                continue;
            }
            let mut e = [0; 3];
            e[i] = self.tail_start[i];
            q = q.add(&FracK::over_one_minus(self.edges[i].shift(e), i));
        }
        q
    }

    /// The character as a Laurent polynomial when there are no legs.
    pub fn to_class(&self) -> Result<KClass> {
        self.as_frac().into_poly()
    }
}

/// Factor numbering of a chart: for each component (in the order of
/// [`DoubleBoxConfig::components`]) the `P^1` factor it moves with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartFactors {
    /// Per component, the factor index (from 1) if the component is free.
    pub per_component: Vec<Option<u32>>,
    /// Number of factors of the base.
    pub count: u32,
}

impl ChartFactors {
    /// Numbers the free components of a single chart consecutively.
    pub fn local(c: &DoubleBoxConfig) -> Result<Self> {
        let comps = c.components().ok_or_else(|| Error::InvalidInput("configuration has conflicting lines".into()))?;
        let mut count = 0;
        let per_component = comps
            .iter()
            .map(|comp| {
                comp.is_free().then(|| {
                    count += 1;
                    count
                })
            })
            .collect();
        Ok(Self { per_component, count })
    }
}

/// The quotient character of a chart configuration with its own factor numbering.
pub fn quotient_character(c: &DoubleBoxConfig) -> Result<QuotCharacter> {
    quotient_character_with(c, &ChartFactors::local(c)?)
}

/// The quotient character with a prescribed factor numbering.
///
/// Points with `δ = 2` count twice with trivial tag, points outside `D` and
/// points of components with a forced line count once with trivial tag, and
/// points of a free component count once with the tag `O(1)` of its factor.
pub fn quotient_character_with(c: &DoubleBoxConfig, f: &ChartFactors) -> Result<QuotCharacter> {
    let comps = c.components().ok_or_else(|| Error::InvalidInput("configuration has conflicting lines".into()))?;
    if comps.len() != f.per_component.len() {
        return Err(Error::InvalidInput("factor numbering does not match the components".into()));
    }
    let (lo, hi) = c.analysis_box();
    let mut tag_of: HashMap<Exp3, BundleTag> = HashMap::new();
    let mut tail_tag: HashMap<(usize, Cell), BundleTag> = HashMap::new();
    for (comp, factor) in comps.iter().zip(f.per_component.iter()) {
        if let Some(i) = factor {
            for k in comp.points.iter() {
                tag_of.insert(*k, BundleTag::single(*i, 1));
            }
            for t in comp.tails.iter() {
                tail_tag.insert(*t, BundleTag::single(*i, 1));
            }
        }
    }
    let mut finite = KClass::zero(f.count);
    for k in c.support(lo, hi) {
        let d = c.delta(k);
        let tag = if d == 1 { tag_of.get(&k).cloned().unwrap_or_else(BundleTag::trivial) } else { BundleTag::trivial() };
        finite.add_term(d as i64, tag, k);
    }
    let edges = [0, 1, 2].map(|i| {
        let mut e = KClass::zero(f.count);
        for (cell, d) in c.legs[i].cells.iter() {
            let tag = if *d == 1 { tail_tag.get(&(i, *cell)).cloned().unwrap_or_else(BundleTag::trivial) } else { BundleTag::trivial() };
            e.add_term(*d as i64, tag, lift(i, 0, *cell));
        }
        e
    });
    Ok(QuotCharacter { factors: f.count, finite, edges, tail_start: hi.map(|x| x + 1) })
}

/// Cross-section character of a leg with trivial tags, placed in the plane
/// orthogonal to `axis`.
pub fn edge_quotient_character(lam: &DoubleSquareConfig, axis: usize, factors: u32) -> KClass {
    let mut e = KClass::zero(factors);
    for (cell, d) in lam.cells.iter() {
        e.add_term(*d as i64, BundleTag::trivial(), lift(axis, 0, *cell));
    }
    e
}

/// Generator character `P(R_αβ)` of the reflexive sheaf along the edge with
/// the given transverse flags, in the plane orthogonal to `axis`.
pub fn edge_reflexive_character(flags: [Flag; 2], axis: usize, factors: u32) -> KClass {
    let sq = DoubleSquareConfig::empty(flags);
    let d = sq.d_corner();
    let mut out = KClass::zero(factors);
    for a in flags[0].u..=d[0] {
        for b in flags[1].u..=d[1] {
            let mut m = 0i64;
            for (ea, eb, s) in [(0, 0, 1), (1, 0, -1), (0, 1, -1), (1, 1, 1)] {
                m += s * sq.chi_r([a - ea, b - eb]) as i64;
            }
            out.add_term(m, BundleTag::trivial(), lift(axis, 0, [a, b]));
        }
    }
    out
}

fn unit(i: usize) -> Exp3 {
    let mut e = [0; 3];
    e[i] = 1;
    e
}

fn one(factors: u32) -> KClass {
    KClass::term(factors, 1, BundleTag::trivial(), [0, 0, 0])
}

/// `G_αβ = -Q P̄ - Q̄ P / (t_a t_b) + Q Q̄ (1 - t_a)(1 - t_b) / (t_a t_b)` for a
/// leg along `axis`, with `(a, b)` the transverse axes.
pub fn g_class(q: &KClass, p: &KClass, axis: usize) -> KClass {
    let (a, b) = other_axes(axis);
    let mut tab = [0; 3];
    tab[a] = -1;
    tab[b] = -1;
    let qb = q.bar();
    let t1 = -&(q * &p.bar());
    let t2 = (&qb * p).shift(tab);
    let t3 = (q * &qb).mul_one_minus(a, 1).mul_one_minus(b, 1).shift(tab);
    &(&t1 - &t2) + &t3
}

/// `G⁺_αβ = -Q P̄ - Q Q̄ (1 - t_a) / t_a`, the half of `G_αβ` used for signs.
pub fn g_plus_class(q: &KClass, p: &KClass, axis: usize) -> KClass {
    let (a, _) = other_axes(axis);
    let mut ta = [0; 3];
    ta[a] = -1;
    let t1 = -&(q * &p.bar());
    let t2 = (q * &q.bar()).mul_one_minus(a, 1).shift(ta);
    &t1 - &t2
}

/// Redistributed edge class `E = (t_1 G(t_2 t_1^{-m}, t_3 t_1^{-m'}) - G(t_2, t_3)) / (1 - t_1)`
/// for any class `g` in the plane orthogonal to `axis`.
pub fn redistribute_edge(g: &KClass, axis: usize, m: i32, m_prime: i32) -> Result<KClass> {
    let (a, b) = other_axes(axis);
    let sub = g.map_weights(|w| {
        let mut out = w;
        out[axis] = w[axis] - m * w[a] - m_prime * w[b];
        out
    });
    let num = &sub.shift(unit(axis)) - g;
    num.div_one_minus(axis)
}

/// The edge class `E_αβ` from the leg character, the transverse flags and the
/// normal bundle degrees.
pub fn edge_class(q_edge: &KClass, flags: [Flag; 2], axis: usize, m: i32, m_prime: i32) -> Result<KClass> {
    let p = edge_reflexive_character(flags, axis, q_edge.factor_count());
    redistribute_edge(&g_class(q_edge, &p, axis), axis, m, m_prime)
}

/// `V_α` before clearing denominators: the vertex trace plus `Σ_i G_i / (1 - t_i)`.
pub fn vertex_frac(c: &DoubleBoxConfig, q: &QuotCharacter) -> FracK {
    let n = q.factors;
    let p = KClass::from_laurent(n, &reflexive_character(&c.chart));
    let qf = q.as_frac();
    let qb = qf.bar();
    let t3 = exp_neg([1, 1, 1]);
    let mut cube = one(n);
    for i in 0..3 {
        cube = cube.mul_one_minus(i, 1);
    }
    let mut v = qf.mul_poly(&p.bar());
    v = v.sub(&qb.mul_poly(&p).shift(t3));
    v = v.add(&qf.mul(&qb).mul_poly(&cube).shift(t3));
    for i in 0..3 {
        if q.edges[i].is_zero() {
            continue;
        }
        let pe = edge_reflexive_character(c.chart.edge_flags(i), i, n);
        v = v.add(&FracK::over_one_minus(g_class(&q.edges[i], &pe, i), i));
    }
    v
}

/// The redistributed vertex class `V_α`, a Laurent polynomial.
pub fn vertex_class(c: &DoubleBoxConfig) -> Result<KClass> {
    vertex_class_with(c, &ChartFactors::local(c)?)
}

/// The redistributed vertex class with a prescribed factor numbering.
pub fn vertex_class_with(c: &DoubleBoxConfig, f: &ChartFactors) -> Result<KClass> {
    let q = quotient_character_with(c, f)?;
    vertex_frac(c, &q).into_poly()
}

/// Tangent class `Σ_i (2 [O(1)]_i - 1)` of `(P^1)^n`.
pub fn tangent_class(n: u32) -> KClass {
    let mut t = KClass::zero(n);
    for i in 1..=n {
        t.add_term(2, BundleTag::single(i, 1), [0, 0, 0]);
        t.add_term(-1, BundleTag::trivial(), [0, 0, 0]);
    }
    t
}
