//! Euler characteristic generating functions of torus fixed quotients, glued
//! over all charts, and the closed formulas they are compared with.
//!
//! Series of `χ(Q)` use a variable `x`; global series use `y = q^{-1}`, so the
//! coefficient of `q^{c_3}` sits at the exponent `-c_3`.

use super::hulls::{enumerate_hulls, Hull};
use crate::algebra::{boxed_partition_product, macmahon, QSeries};
use crate::boxes::{
    cell_at_beta, comb_series, enumerate_boxes, enumerate_squares, f_correction, g_correction, Cell, DoubleBoxConfig,
    DoubleSquareConfig, GlobalConfig,
};
use crate::error::{Error, Result};
use crate::par;
use crate::toric::{singularity_data, GlobalToricData, P1Point, ToricThreefold};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::{BTreeMap, HashMap};

fn rat(c: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}

/// The part of `χ(Q)` carried by one end chart of a leg: its size plus the
/// slab renormalization of the leg.
pub fn edge_size(c: &DoubleBoxConfig, axis: usize) -> i64 {
    c.size() + c.slab_weights()[axis]
}

/// Contribution `f + g` of a leg to `χ(Q)` without the slab terms.
fn leg_constant(x: &ToricThreefold, hull: &GlobalToricData, edge: usize, lam: &DoubleSquareConfig) -> i64 {
    let e = &x.edges[edge];
    let (f3, f4) = (hull.faces[e.rho3], hull.faces[e.rho4]);
    f_correction(e.m, e.m_prime, lam) + g_correction(lam, [f3.u, f4.u], [f3.v, f4.v], [0, 0])
}

fn no_legs(c: &DoubleBoxConfig) -> [DoubleSquareConfig; 3] {
    [0, 1, 2].map(|i| DoubleSquareConfig::empty(c.chart.edge_flags(i)))
}

/// How the components of one end chart meet the leg: per component reaching
/// the leg, its forced line and its tail cells in the first end's order.
type Signature = Vec<(Option<P1Point>, Vec<Cell>)>;

/// Groups the configurations of one end chart by their [`Signature`], summing
/// `2^{free components away from the leg} x^{edge size}` within each group.
fn side_signatures(x: &ToricThreefold, edge: usize, c: &DoubleBoxConfig, axis: usize, at_beta: bool, bound: i64) -> Result<BTreeMap<Signature, QSeries>> {
    let mut out: BTreeMap<Signature, QSeries> = BTreeMap::new();
    for item in enumerate_boxes(c.chart, c.legs.clone(), bound)? {
        let s = edge_size(&item.config, axis);
        if s > bound {
            continue;
        }
        let comps = item.config.components().expect("enumerated classes are valid");
        let local = comps.iter().filter(|k| k.is_free() && k.tails.is_empty()).count();
        let mut sig: Signature = comps
            .iter()
            .filter(|k| !k.tails.is_empty())
            .map(|k| {
                let mut cells: Vec<Cell> =
                    k.tails.iter().filter(|(i, _)| *i == axis).map(|(_, cell)| if at_beta { cell_at_beta(x, edge, *cell) } else { *cell }).collect();
                cells.sort();
                (k.label, cells)
            })
            .collect();
        sig.sort();
        out.entry(sig).or_insert_with(|| QSeries::zero(bound)).add_coeff(s, rat(1 << local));
    }
    Ok(out)
}

/// Number of free lines after joining the leg components of two end charts
/// through shared tail cells, or `None` when two forced lines collide.
fn glued_free(a: &Signature, b: &Signature) -> Option<u32> {
    let n = a.len() + b.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    let mut owner: HashMap<Cell, usize> = HashMap::new();
    for (i, (_, cells)) in b.iter().enumerate() {
        for c in cells {
            owner.insert(*c, a.len() + i);
        }
    }
    for (i, (_, cells)) in a.iter().enumerate() {
        for c in cells {
            if let Some(j) = owner.get(c) {
                let (ra, rb) = (find(&mut parent, i), find(&mut parent, *j));
                parent[ra] = rb;
            }
        }
    }
    let labels: Vec<Option<P1Point>> = a.iter().chain(b.iter()).map(|(l, _)| *l).collect();
    let mut root_label: BTreeMap<usize, Option<P1Point>> = BTreeMap::new();
    for (i, l) in labels.iter().enumerate() {
        let r = find(&mut parent, i);
        let entry = root_label.entry(r).or_insert(None);
        if let Some(l) = l {
            match entry {
                None => *entry = Some(*l),
                Some(old) if old != l => return None,
                _ => {}
            }
        }
    }
    Some(root_label.values().filter(|l| l.is_none()).count() as u32)
}

/// `Σ ω x^{χ}` over pairs of configurations on the two end charts of `edge`,
/// with the leg fixed by `bare` and `χ` counting both charts and the leg.
fn leg_pair_series(x: &ToricThreefold, bare: &GlobalConfig, edge: usize, max_chi: i64) -> Result<QSeries> {
    let e = &x.edges[edge];
    let lam = &bare.edges[&edge];
    let ca = bare.charts[e.ends[0]].as_ref().expect("chart in Y");
    let cb = bare.charts[e.ends[1]].as_ref().expect("chart in Y");
    let base = leg_constant(x, &bare.hull, edge, lam);
    let (sa0, sb0) = (edge_size(ca, e.axis[0]), edge_size(cb, e.axis[1]));
    let side_a = side_signatures(x, edge, ca, e.axis[0], false, max_chi - base - sb0)?;
    let side_b = side_signatures(x, edge, cb, e.axis[1], true, max_chi - base - sa0)?;
    let mut total = QSeries::zero(max_chi);
    for (ka, sa) in side_a.iter() {
        for (kb, sb) in side_b.iter() {
            if let Some(n) = glued_free(ka, kb) {
                total = total.add(&sa.mul(sb).shift(base).scale(&rat(1 << n)));
            }
        }
    }
    Ok(total.truncate(max_chi))
}

/// `Σ ω x^{χ(Q)}` over torus fixed quotients of a hull with the given legs
/// and `χ(Q) <= max_chi`.
///
/// Charts away from the legs contribute their chart series; the two end
/// charts of a leg are summed jointly because components reaching the leg
/// share one line. At most one nonempty leg is supported.
pub fn component_series(x: &ToricThreefold, hull: &GlobalToricData, legs: &BTreeMap<usize, DoubleSquareConfig>, max_chi: i64) -> Result<QSeries> {
    let legs: BTreeMap<usize, DoubleSquareConfig> = legs.iter().filter(|(_, l)| !l.is_empty()).map(|(e, l)| (*e, l.clone())).collect();
    if legs.len() > 1 {
        return Err(Error::InvalidInput("at most one leg is supported".into()));
    }
    let bare = GlobalConfig::bare(x, hull.clone(), legs.clone())?;
    let (pair, ends) = match legs.keys().next() {
        Some(ei) => (leg_pair_series(x, &bare, *ei, max_chi)?, x.edges[*ei].ends.to_vec()),
        None => (QSeries::one(max_chi), Vec::new()),
    };
    let Some(low) = pair.valuation() else {
        return Ok(QSeries::zero(max_chi));
    };
    let others: Vec<DoubleBoxConfig> =
        bare.charts.iter().enumerate().filter(|(a, _)| !ends.contains(a)).filter_map(|(_, c)| c.clone()).collect();
    let factors = par::map_collect(&others, |c| comb_series(c.chart, no_legs(c), max_chi - low.min(0)));
    let mut out = pair;
    for f in factors {
        out = out.mul(&f?);
    }
    Ok(out.truncate(max_chi))
}

/// Every pair of end chart configurations along `edge` with `χ <= max_chi`,
/// as glued configurations over `Y` together with `χ(Q)`.
///
/// Meant for open threefolds with two charts such as the resolved conifold.
pub fn leg_pairs(x: &ToricThreefold, bare: &GlobalConfig, edge: usize, max_chi: i64) -> Result<Vec<(GlobalConfig, i64)>> {
    let e = &x.edges[edge];
    let ca = bare.charts[e.ends[0]].as_ref().ok_or_else(|| Error::InvalidInput("edge end outside Y".into()))?;
    let cb = bare.charts[e.ends[1]].as_ref().ok_or_else(|| Error::InvalidInput("edge end outside Y".into()))?;
    let base = bare.edges.get(&edge).map(|lam| leg_constant(x, &bare.hull, edge, lam)).unwrap_or(0);
    let (sa0, sb0) = (edge_size(ca, e.axis[0]), edge_size(cb, e.axis[1]));
    let side = |c: &DoubleBoxConfig, axis: usize, bound: i64| -> Result<Vec<(DoubleBoxConfig, i64)>> {
        Ok(enumerate_boxes(c.chart, c.legs.clone(), bound)?
            .into_iter()
            .map(|item| {
                let s = edge_size(&item.config, axis);
                (item.config, s)
            })
            .filter(|(_, s)| *s <= bound)
            .collect())
    };
    let side_a = side(ca, e.axis[0], max_chi - base - sb0)?;
    let side_b = side(cb, e.axis[1], max_chi - base - sa0)?;
    let mut out = Vec::new();
    for (a, sa) in side_a.iter() {
        for (b, sb) in side_b.iter() {
            let chi = sa + sb + base;
            if chi > max_chi {
                continue;
            }
            let mut g = bare.clone();
            g.set_chart(e.ends[0], a.clone())?;
            g.set_chart(e.ends[1], b.clone())?;
            out.push((g, chi));
        }
    }
    Ok(out)
}

/// Legs of renormalized size one along every edge of `x`.
pub fn unit_legs(x: &ToricThreefold, hull: &GlobalToricData) -> Vec<(usize, DoubleSquareConfig)> {
    let mut out = Vec::new();
    for (ei, e) in x.edges_in_y() {
        let flags = hull.chart(x.charts[e.ends[0]]).edge_flags(e.axis[0]);
        for lam in enumerate_squares(flags, 1) {
            if lam.size() == 1 {
                out.push((ei, lam));
            }
        }
    }
    out
}

/// The `y = q^{-1}` series of one hull and leg choice: `Σ ω y^{-c_3(F)}` with
/// `c_3(F) = c_3(R) - 2 χ(Q) + Σ |λ| (c_1(X) · C) + c_1 L`, where `L` is the
/// number of leg units.
fn hull_term(x: &ToricThreefold, h: &Hull, c1: i64, legs: &BTreeMap<usize, DoubleSquareConfig>, order: i64) -> Result<QSeries> {
    let units: i64 = legs.values().map(|l| l.size() as i64).sum();
    let offset = h.c3 + legs.iter().map(|(e, l)| l.size() as i64 * x.edges[*e].c1_dot_c as i64).sum::<i64>() + c1 * units;
    let max_chi = (order + offset).div_euclid(2);
    Ok(component_series(x, &h.data, legs, max_chi)?.substitute(2).shift(-offset).truncate(order))
}

/// `Σ_{c_3} e(M(2, c_1, c_2, c_3)^T) q^{c_3}` on projective space with
/// `c_1 = -1`, as a series in `y = q^{-1}` through `y^{order}`.
///
/// Hulls with `c_2' = c_2` carry zero-dimensional quotients; hulls with
/// `c_2' = c_2 - 1` carry quotients with one unit leg.
pub fn euler_series_global(preset: &str, c2: i64, order: i64) -> Result<QSeries> {
    let c1 = -1;
    let x = ToricThreefold::preset(preset)?;
    let hulls = enumerate_hulls(preset, c1, c2)?;
    let mut tasks: Vec<(Hull, BTreeMap<usize, DoubleSquareConfig>)> = Vec::new();
    for h in hulls {
        match c2 - h.c2 {
            0 => tasks.push((h, BTreeMap::new())),
            1 => {
                for (ei, lam) in unit_legs(&x, &h.data) {
                    tasks.push((h.clone(), BTreeMap::from([(ei, lam)])));
                }
            }
            d => return Err(Error::UnsupportedPreset(format!("quotients with {d} leg units"))),
        }
    }
    let parts = par::map_collect(&tasks, |(h, legs)| hull_term(&x, h, c1, legs, order));
    let mut total = QSeries::zero(order);
    for p in parts {
        total = total.add(&p?);
    }
    Ok(total)
}

/// `M(y^2)^k` through `y^{order}`.
fn macmahon_y2(k: u32, order: i64) -> QSeries {
    macmahon(order.max(0) / 2 + 1).substitute(2).pow(k).truncate(order)
}

/// The product formula for minimal `c_2`:
/// `M(y^2)^{2 e(X)} Σ_R y^{-c_3(R)} Π_{singular charts} (boxed partitions)(y^2)`,
/// over the hulls with `c_2(R) = c_2`.
pub fn min_c2_formula(preset: &str, c2: i64, order: i64) -> Result<QSeries> {
    let x = ToricThreefold::preset(preset)?;
    let hulls: Vec<Hull> = enumerate_hulls(preset, -1, c2)?.into_iter().filter(|h| h.c2 == c2).collect();
    let top = hulls.iter().map(|h| h.c3).max().unwrap_or(0);
    let inner_order = order + top;
    let mut poly = QSeries::zero(inner_order);
    for h in hulls.iter() {
        let mut term = QSeries::one(inner_order);
        for rays in x.charts.iter() {
            let chart = h.data.chart(*rays);
            if singularity_data(&chart).0 {
                term = term.mul(&boxed_partition_product(chart.v(), inner_order).substitute(2).truncate(inner_order));
            }
        }
        poly = poly.add(&term.shift(-h.c3).truncate(inner_order));
    }
    let m = macmahon_y2(2 * x.euler_characteristic() as u32, inner_order);
    Ok(poly.mul(&m).truncate(order))
}

/// The closed formulas for projective space with `c_1 = -1`, in `y = q^{-1}`:
/// `4 (y + y^{-1}) M(y^2)^8` for `c_2 = 1` and
/// `12 (2y^8 - y^6 + y^4 - 4y^2 + 3 + 5y^{-4}) (1 - y^2)^{-2} M(y^2)^8` for `c_2 = 2`.
pub fn theorem_b_series(c2: i64, order: i64) -> Result<QSeries> {
    let pad = order + 4;
    let m8 = macmahon_y2(8, pad);
    let s = match c2 {
        1 => QSeries::from_ints([(1, 4), (-1, 4)], pad).mul(&m8),
        2 => {
            let num = QSeries::from_ints([(8, 24), (6, -12), (4, 12), (2, -48), (0, 36), (-4, 60)], pad);
            num.mul(&QSeries::geometric(2, &rat(1), 2, pad)).mul(&m8)
        }
        _ => return Err(Error::UnsupportedPreset(format!("no closed formula for c2 = {c2}"))),
    };
    Ok(s.truncate(order))
}
