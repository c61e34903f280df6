//! Coefficientwise comparisons of vertex measure series with Euler
//! characteristic series, for `C^3` and for the resolved conifold with one leg.

use super::series::leg_pairs;
use crate::algebra::QSeries;
use crate::boxes::{comb_series, enumerate_squares, DoubleSquareConfig, GlobalConfig};
use crate::error::{Error, Result};
use crate::par;
use crate::toric::{singularity_data, ChartToricData, GlobalToricData, P1Point, ToricThreefold};
use crate::vertex::{dt_global_weight, edge_sign_exponent, w_series};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// One coefficient of a comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientVerdict {
    /// Exponent in the report's variable.
    pub exponent: i64,
    /// Left hand side coefficient.
    pub lhs: String,
    /// Right hand side coefficient.
    pub rhs: String,
    /// Whether they are equal.
    pub agree: bool,
}

/// A coefficientwise comparison of two series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonReport {
    /// What is being compared.
    pub name: String,
    /// Per coefficient verdicts over the compared range.
    pub coefficients: Vec<CoefficientVerdict>,
}

impl ComparisonReport {
    /// Whether every compared coefficient agrees.
    pub fn agrees(&self) -> bool {
        self.coefficients.iter().all(|c| c.agree)
    }
}

/// Compares the coefficients of `lhs` and `rhs` at every exponent in `lo..=hi`.
pub fn compare_series(name: &str, lhs: &QSeries, rhs: &QSeries, lo: i64, hi: i64) -> ComparisonReport {
    let coefficients = (lo..=hi)
        .map(|e| {
            let (l, r) = (lhs.coeff(e), rhs.coeff(e));
            CoefficientVerdict { exponent: e, lhs: l.to_string(), rhs: r.to_string(), agree: l == r }
        })
        .collect();
    ComparisonReport { name: name.to_string(), coefficients }
}

fn no_legs(chart: ChartToricData) -> [DoubleSquareConfig; 3] {
    [0, 1, 2].map(|i| DoubleSquareConfig::empty(chart.edge_flags(i)))
}

/// `W(q) = Z(q)` on a chart without legs through `q^{order}`: the vertex
/// measure series against the Euler characteristic series.
pub fn vertex_conjecture_check(chart: ChartToricData, order: i64, seed: u64) -> Result<ComparisonReport> {
    let w = w_series(chart, order, seed)?;
    let z = comb_series(chart, no_legs(chart), order)?;
    Ok(compare_series(&format!("W = Z for v = {:?}", chart.v()), &w, &z, 0, order))
}

/// The main conjecture on `C^3` through `order` boxes, in powers of `q^{c_3}`:
/// `Σ DT q^{c_3}` against `Z(q^{-2}) q^{c_3(R)}`. Both sides carry the factor
/// `q^{c_3(R)}` and the exponent `c_3 = c_3(R) - 2|π|`.
pub fn main_conjecture_c3(chart: ChartToricData, order: i64, seed: u64) -> Result<ComparisonReport> {
    let c3r = singularity_data(&chart).1 as i64;
    let w = w_series(chart, order, seed)?;
    let z = comb_series(chart, no_legs(chart), order)?;
    let mut coefficients: Vec<CoefficientVerdict> = (0..=order)
        .map(|n| {
            let (l, r) = (w.coeff(n), z.coeff(n));
            CoefficientVerdict { exponent: c3r - 2 * n, lhs: l.to_string(), rhs: r.to_string(), agree: l == r }
        })
        .collect();
    coefficients.reverse();
    Ok(ComparisonReport { name: format!("main conjecture on C3, v = {:?}", chart.v()), coefficients })
}

/// The resolved conifold hull with `v = (v_1, v_2, v_3, 0)` on the faces
/// `ρ_1, ρ_2` along the compact curve, `ρ_3` at chart 0 and `ρ_4` at chart 1.
pub fn conifold_hull(v: [u32; 3]) -> Result<GlobalToricData> {
    let p = |k: i64, vi: u32| if vi > 0 { Some(P1Point::affine(k)) } else { None };
    GlobalToricData::new(&[0; 6], &[v[0], v[1], v[2], 0, 0, 0], &[p(0, v[0]), p(1, v[1]), p(2, v[2]), None, None, None])
}

/// Per leg: the measure series `Σ w(π̂) x^{χ}` against the signed Euler
/// characteristic series `(-1)^{|λ|(m (v_1 + v_2 + 1) + v_3 + v_4)} Σ ω x^{χ}`
/// on the resolved conifold, for every leg `λ` along the compact curve with
/// `|λ| <= max_leg`, through `x^{order}`.
pub fn conifold_conjecture_check(hull: &GlobalToricData, max_leg: u32, order: i64, seed: u64) -> Result<Vec<ComparisonReport>> {
    let x = ToricThreefold::conifold();
    let ei = x.edge_between(0, 1).ok_or_else(|| Error::InvalidInput("no compact curve".into()))?;
    let e = &x.edges[ei];
    if hull.faces[e.rho4].v != 0 {
        return Err(Error::InvalidInput("the face at chart 1 must have v = 0".into()));
    }
    let flags = hull.chart(x.charts[e.ends[0]]).edge_flags(e.axis[0]);
    let mut reports = Vec::new();
    for lam in enumerate_squares(flags, max_leg) {
        let legs = if lam.is_empty() { BTreeMap::new() } else { BTreeMap::from([(ei, lam.clone())]) };
        let bare = GlobalConfig::bare(&x, hull.clone(), legs)?;
        let pairs = leg_pairs(&x, &bare, ei, order)?;
        let values = par::map_collect(&pairs, |(g, chi)| -> Result<(i64, BigRational, u64)> {
            Ok((*chi, dt_global_weight(&x, g, seed)?, g.omega(&x)?))
        });
        let sign = if edge_sign_exponent(&x, hull, ei, &lam) == 1 { -1 } else { 1 };
        let mut w = QSeries::zero(order);
        let mut z = QSeries::zero(order);
        for v in values {
            let (chi, wt, om) = v?;
            w.add_coeff(chi, wt);
            z.add_coeff(chi, BigRational::from_integer(BigInt::from(sign * om as i64)));
        }
        let lo = pairs.iter().map(|(_, c)| *c).min().unwrap_or(0);
        let cells: Vec<String> = lam.cells.iter().map(|(c, d)| format!("{c:?}x{d}")).collect();
        reports.push(compare_series(&format!("conifold leg [{}], |λ| = {}", cells.join(" "), lam.size()), &w, &z, lo, order));
    }
    Ok(reports)
}
