//! Equivariant vertex measures, their generating series, buddy groups and
//! per-class weight reports.

use super::character::{edge_class, quotient_character_with, tangent_class, vertex_class_with, ChartFactors};
use super::split::{canonical_split, split_edge, split_vertex, v111, e111, KAPPA};
use crate::algebra::{cy_integral, BundleTag, KClass, QSeries};
use crate::boxes::{enumerate_boxes, leg_at_beta, DoubleBoxConfig, DoubleSquareConfig, Enumerated, GlobalConfig};
use crate::error::{Error, Result};
use crate::par;
use crate::toric::{ChartToricData, ToricThreefold};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;

/// Number of probe points used when specializing to the Calabi-Yau locus.
pub const PROBES: usize = 3;

/// `w(π) = ∫ e(T_C - V_π)` at `s1 + s2 + s3 = 0` for a chart without legs.
pub fn dt_vertex_weight(c: &DoubleBoxConfig, seed: u64) -> Result<BigRational> {
    if c.has_legs() {
        return Err(Error::InvalidInput("the vertex measure is defined for configurations without legs".into()));
    }
    let f = ChartFactors::local(c)?;
    let v = vertex_class_with(c, &f)?;
    cy_integral(&(&tangent_class(f.count) - &v), seed, PROBES)
}

/// Vertex and edge classes of a glued configuration in the global torus basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalClasses {
    /// `V_α` for every chart of `Y`, keyed by chart.
    pub vertices: BTreeMap<usize, KClass>,
    /// `E_αβ` for every edge with a nonempty leg, keyed by edge.
    pub edges: BTreeMap<usize, KClass>,
    /// Number of `P^1` factors of the fixed component.
    pub factors: u32,
}

impl GlobalClasses {
    /// `Σ V_α + Σ E_αβ`.
    pub fn total(&self) -> KClass {
        let mut t = KClass::zero(self.factors);
        for k in self.vertices.values().chain(self.edges.values()) {
            t = &t + k;
        }
        t
    }
}

/// Computes every `V_α` and `E_αβ` with moduli factors numbered after gluing.
/// Returns `None` when the configuration has no fixed points.
pub fn global_classes(x: &ToricThreefold, g: &GlobalConfig) -> Result<Option<GlobalClasses>> {
    let glued = match g.glued_factors(x)? {
        Some(gf) => gf,
        None => return Ok(None),
    };
    let n = glued.count;
    let mut vertices = BTreeMap::new();
    let mut quot = BTreeMap::new();
    for (alpha, c) in g.charts.iter().enumerate() {
        let Some(c) = c else { continue };
        let f = ChartFactors { per_component: glued.per_chart[alpha].clone(), count: n };
        let q = quotient_character_with(c, &f)?;
        let v = super::character::vertex_frac(c, &q).into_poly()?;
        vertices.insert(alpha, v.map_weights(|w| x.to_global(alpha, w)));
        quot.insert(alpha, q);
    }
    let mut edges = BTreeMap::new();
    for ei in g.edges.keys() {
        let e = &x.edges[*ei];
        let alpha = e.ends[0];
        let c = g.charts[alpha].as_ref().expect("chart in Y");
        let q_edge = &quot[&alpha].edges[e.axis[0]];
        let k = edge_class(q_edge, c.chart.edge_flags(e.axis[0]), e.axis[0], e.m, e.m_prime)?;
        edges.insert(*ei, k.map_weights(|w| x.to_global(alpha, w)));
    }
    Ok(Some(GlobalClasses { vertices, edges, factors: n }))
}

/// `w(π̂) = ∫ e(T_C - Σ V_α - Σ E_αβ)` at the Calabi-Yau locus, with the vertex
/// and edge terms never separated.
pub fn dt_global_weight(x: &ToricThreefold, g: &GlobalConfig, seed: u64) -> Result<BigRational> {
    match global_classes(x, g)? {
        None => Ok(BigRational::zero()),
        Some(cl) => cy_integral(&(&tangent_class(cl.factors) - &cl.total()), seed, PROBES),
    }
}

/// Conifold weight of two chart configurations sharing one leg along the
/// compact edge.
pub fn dt_conifold_weight(x: &ToricThreefold, hull: crate::toric::GlobalToricData, c0: DoubleBoxConfig, c1: DoubleBoxConfig, seed: u64) -> Result<BigRational> {
    let ei = x.edge_between(0, 1).ok_or_else(|| Error::InvalidInput("charts 0 and 1 are not joined by an edge".into()))?;
    let e = &x.edges[ei];
    let lam = c0.legs[e.axis[0]].clone();
    if leg_at_beta(x, ei, &lam) != c1.legs[e.axis[1]] {
        return Err(Error::GluingMismatch("the two charts disagree on the compact leg".into()));
    }
    let mut legs = BTreeMap::new();
    if !lam.is_empty() {
        legs.insert(ei, lam);
    }
    let mut g = GlobalConfig::bare(x, hull, legs)?;
    g.set_chart(0, c0)?;
    g.set_chart(1, c1)?;
    dt_global_weight(x, &g, seed)
}

/// Exponent of the predicted sign `(-1)^{|λ| (m (v_1 + v_2 + 1) + v_3 + v_4)}`
/// for a leg along an edge of a Calabi-Yau threefold.
pub fn edge_sign_exponent(x: &ToricThreefold, hull: &crate::toric::GlobalToricData, edge: usize, lam: &DoubleSquareConfig) -> u8 {
    let e = &x.edges[edge];
    let v = |f: usize| hull.faces[f].v as i64;
    let s = lam.size() as i64 * (e.m as i64 * (v(e.shared[0]) + v(e.shared[1]) + 1) + v(e.rho3) + v(e.rho4));
    s.rem_euclid(2) as u8
}

/// Sign exponents of a glued configuration: from the plus/minus splittings
/// and from the closed formulas, summed over vertices and edges of `Y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignExponents {
    /// `Σ V⁺(1,1,1) + Σ E⁺(1,1,1) mod 2` from the splittings.
    pub split: u8,
    /// The same from the closed formulas.
    pub formula: u8,
    /// Per edge with a leg: `(split, formula)` for `E⁺`.
    pub edges: Vec<(usize, u8, u8)>,
    /// Per chart of `Y`: `(split, formula)` for `V⁺`.
    pub vertices: Vec<(usize, u8, u8)>,
    /// Moving rank of `Σ V⁺ + Σ E⁺`.
    pub moving_rank: i64,
}

/// Plus/minus splittings of every vertex and edge of a glued configuration on
/// a Calabi-Yau threefold, with the dualities checked.
pub fn global_sign_exponents(x: &ToricThreefold, g: &GlobalConfig) -> Result<Option<SignExponents>> {
    let glued = match g.glued_factors(x)? {
        Some(gf) => gf,
        None => return Ok(None),
    };
    let n = glued.count;
    let mut out = SignExponents { split: 0, formula: 0, edges: Vec::new(), vertices: Vec::new(), moving_rank: 0 };
    let mut quot = BTreeMap::new();
    for (alpha, c) in g.charts.iter().enumerate() {
        let Some(c) = c else { continue };
        let f = ChartFactors { per_component: glued.per_chart[alpha].clone(), count: n };
        let s = split_vertex(c, &f)?;
        let (a, b) = (s.sign_exponent(), v111(c));
        out.vertices.push((alpha, a, b));
        out.split ^= a;
        out.formula ^= b;
        out.moving_rank += s.moving_rank();
        quot.insert(alpha, quotient_character_with(c, &f)?);
    }
    for (ei, lam) in g.edges.iter() {
        let e = &x.edges[*ei];
        let alpha = e.ends[0];
        let c = g.charts[alpha].as_ref().expect("chart in Y");
        let s = split_edge(&quot[&alpha].edges[e.axis[0]], c.chart.edge_flags(e.axis[0]), e.axis[0], e.m, e.m_prime)?;
        let (a, b) = (s.sign_exponent(), e111(e.m, lam));
        out.edges.push((*ei, a, b));
        out.split ^= a;
        out.formula ^= b;
        out.moving_rank += s.moving_rank();
    }
    Ok(Some(out))
}

/// Weight of every enumerated class without legs, in enumeration order.
pub fn class_weights(classes: &[Enumerated], seed: u64) -> Result<Vec<BigRational>> {
    par::map_collect(classes, |e| dt_vertex_weight(&e.config, seed)).into_iter().collect()
}

/// `W(q) = Σ w(π) q^{|π|}` over classes without legs with `|π| <= order`.
pub fn w_series(chart: ChartToricData, order: i64, seed: u64) -> Result<QSeries> {
    let legs = [0, 1, 2].map(|i| DoubleSquareConfig::empty(chart.edge_flags(i)));
    let classes = enumerate_boxes(chart, legs, order)?;
    let weights = class_weights(&classes, seed)?;
    let mut s = QSeries::zero(order);
    for (e, w) in classes.iter().zip(weights) {
        s.add_coeff(e.size, w);
    }
    Ok(s)
}

/// Classes whose weights individually differ from `ω` and whose vertex
/// characters agree after restriction to the Calabi-Yau subtorus `T_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuddyGroup {
    /// Indices into the class list.
    pub members: Vec<usize>,
    /// `Σ w(π)` over the group.
    pub weight_sum: BigRational,
    /// `Σ ω(π)` over the group.
    pub omega_sum: u64,
}

impl BuddyGroup {
    /// Whether the weight-sum law holds on the group.
    pub fn balanced(&self) -> bool {
        self.weight_sum == BigRational::from_integer(BigInt::from(self.omega_sum))
    }
}

/// Detects buddy groups among classes without legs.
///
/// Anomalous classes (`w ≠ ω`) of the same size are grouped by the restriction
/// of `V_π` to `T_0` with tags forgotten. Points of one connected `T_0`-fixed
/// family share this restriction, so it is a necessary condition for being
/// buddies; it is not proven sufficient. Singleton groups are returned as well
/// so that unexplained anomalies stay visible.
pub fn buddy_groups(classes: &[Enumerated], weights: &[BigRational]) -> Result<Vec<BuddyGroup>> {
    let mut groups: BTreeMap<(i64, String), Vec<usize>> = BTreeMap::new();
    for (i, (e, w)) in classes.iter().zip(weights).enumerate() {
        if *w == BigRational::from_integer(BigInt::from(e.omega)) {
            continue;
        }
        let v = vertex_class_with(&e.config, &ChartFactors::local(&e.config)?)?;
        groups.entry((e.size, fingerprint(&restrict_t0(&forget_tags(&v))))).or_default().push(i);
    }
    Ok(groups
        .into_values()
        .map(|members| {
            let weight_sum = members.iter().fold(BigRational::zero(), |acc, i| acc + &weights[*i]);
            let omega_sum = members.iter().map(|i| classes[*i].omega).sum();
            BuddyGroup { members, weight_sum, omega_sum }
        })
        .collect())
}

/// The class with every tag replaced by the trivial bundle.
pub fn forget_tags(k: &KClass) -> KClass {
    let mut out = KClass::zero(0);
    for ((_, w), m) in k.iter() {
        out.add_term(*m, BundleTag::trivial(), *w);
    }
    out
}

/// Restriction to `T_0 = {t1 t2 t3 = 1}`: every weight is reduced to
/// `(w1 - w3, w2 - w3, 0)`.
pub fn restrict_t0(k: &KClass) -> KClass {
    k.map_weights(|w| [w[0] - w[2], w[1] - w[2], 0])
}

/// Hex SHA-256 of the canonical text form of a class (terms in sorted order).
pub fn fingerprint(k: &KClass) -> String {
    hex::encode(Sha256::digest(k.to_string().as_bytes()))
}

/// A per-class weight record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightReport {
    /// Canonical key: the decrement map as `[k1, k2, k3, d]` entries.
    pub key: Vec<[i32; 4]>,
    /// Renormalized size.
    pub size: i64,
    /// Euler characteristic of the fixed component.
    pub omega: u64,
    /// Calabi-Yau specialized weight, as a reduced fraction.
    pub weight: String,
    /// Fingerprint of `V_π`.
    pub vertex_fingerprint: String,
    /// Fingerprints of the edge classes `E` along legs, by axis.
    pub edge_fingerprints: Vec<(usize, String)>,
    /// `V⁺(1, 1, 1) mod 2` from the splitting.
    pub vertex_sign_exponent: u8,
}

/// Builds the weight report of one chart configuration. For a configuration
/// with legs the weight field is empty, since no standalone vertex measure
/// exists; edge fingerprints use the given normal bundle degrees per axis.
pub fn weight_report(c: &DoubleBoxConfig, size: i64, degrees: [(i32, i32); 3], seed: u64) -> Result<WeightReport> {
    let f = ChartFactors::local(c)?;
    let v = vertex_class_with(c, &f)?;
    let q = quotient_character_with(c, &f)?;
    let weight = if c.has_legs() { String::new() } else { dt_vertex_weight(c, seed)?.to_string() };
    let mut edge_fingerprints = Vec::new();
    for i in 0..3 {
        if c.legs[i].is_empty() {
            continue;
        }
        let e = edge_class(&q.edges[i], c.chart.edge_flags(i), i, degrees[i].0, degrees[i].1)?;
        edge_fingerprints.push((i, fingerprint(&e)));
    }
    let sign = if c.has_legs() { canonical_split(&v, KAPPA)?.sign_exponent() } else { split_vertex(c, &f)?.sign_exponent() };
    Ok(WeightReport {
        key: c.dec.iter().map(|(k, d)| [k[0], k[1], k[2], *d as i32]).collect(),
        size,
        omega: c.omega(),
        weight,
        vertex_fingerprint: fingerprint(&v),
        edge_fingerprints,
        vertex_sign_exponent: sign,
    })
}

/// Converts an integral rational to `i64`, if it is one.
pub fn as_integer(r: &BigRational) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}
