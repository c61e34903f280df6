//! Smooth toric threefolds given by a fan: charts, edges with normal bundle
//! degrees, intersection numbers and the shipped presets.

use super::data::{other_axes, GlobalToricData};
use crate::algebra::Exp3;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Integer 3x3 matrix stored by rows.
pub type Mat3 = [[i32; 3]; 3];

fn det3(m: &Mat3) -> i32 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Inverse of a unimodular integer matrix.
fn inv3(m: &Mat3) -> Option<Mat3> {
    let d = det3(m);
    if d.abs() != 1 {
        return None;
    }
    let mut out = [[0; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            // cofactor of (j, i)
            let (r0, r1) = other_axes(j);
            let (c0, c1) = other_axes(i);
            let minor = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            *x = sign * minor * d;
        }
    }
    Some(out)
}

fn dot(a: [i32; 3], b: [i32; 3]) -> i32 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// A torus invariant curve `C_{αβ}` joining two charts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    /// The charts `α` and `β`.
    pub ends: [usize; 2],
    /// Local axis of the curve in `α` and in `β`.
    pub axis: [usize; 2],
    /// Rays of the two faces containing the curve, in `α`'s cross-section order.
    pub shared: [usize; 2],
    /// Local axes of `shared` in `β`.
    #[serde(rename = "betaAxes")]
    pub beta_axes: [usize; 2],
    /// Normal bundle degree along the first shared face.
    pub m: i32,
    /// Normal bundle degree along the second shared face.
    #[serde(rename = "mPrime")]
    pub m_prime: i32,
    /// `c_1(X) · C_{αβ} = 2 + m + m'`.
    #[serde(rename = "c1dotC")]
    pub c1_dot_c: i32,
    /// The face through `α` transverse to the curve.
    pub rho3: usize,
    /// The face through `β` transverse to the curve.
    pub rho4: usize,
}

impl Edge {
    /// Coordinate of the curve direction in `β` for a point `k` of `α`'s chart.
    pub fn beta_leg_coordinate(&self, k: Exp3) -> i32 {
        let (a, b) = other_axes(self.axis[0]);
        -k[self.axis[0]] - self.m * k[a] - self.m_prime * k[b]
    }

    /// Maps a cross-section cell (in `α`'s order) and a `β` leg coordinate to a point of `β`.
    pub fn beta_point(&self, cell: [i32; 2], leg: i32) -> Exp3 {
        let mut k = [0; 3];
        k[self.axis[1]] = leg;
        k[self.beta_axes[0]] = cell[0];
        k[self.beta_axes[1]] = cell[1];
        k
    }
}

/// A smooth toric threefold described by rays, maximal cones and derived edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricThreefold {
    /// Preset name.
    pub name: String,
    /// Primitive ray generators.
    pub rays: Vec<[i32; 3]>,
    /// Maximal cones as ordered ray triples; the order fixes local axes.
    pub charts: Vec<[usize; 3]>,
    /// Edges between charts sharing two rays.
    pub edges: Vec<Edge>,
    /// Charts belonging to the open subset of interest (all charts when compact).
    #[serde(rename = "inY")]
    pub in_y: Vec<bool>,
    /// Polarization as a divisor `Σ h_ρ D_ρ`, when the variety is projective.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polarization: Option<Vec<i64>>,
    /// Intersection numbers `D_ρ · H^2`.
    #[serde(default, rename = "dH2", skip_serializing_if = "Option::is_none")]
    pub dh2: Option<Vec<i64>>,
}

impl ToricThreefold {
    /// Builds the threefold from a fan, deriving edges and intersection numbers.
    pub fn from_fan(name: &str, rays: Vec<[i32; 3]>, charts: Vec<[usize; 3]>, polarization: Option<Vec<i64>>) -> Result<Self> {
        for c in charts.iter() {
            let m = [rays[c[0]], rays[c[1]], rays[c[2]]];
            if det3(&m).abs() != 1 {
                return Err(Error::InvalidInput(format!("cone {c:?} is not smooth")));
            }
        }
        let mut x = Self {
            name: name.to_string(),
            in_y: vec![true; charts.len()],
            rays,
            charts,
            edges: Vec::new(),
            polarization: None,
            dh2: None,
        };
        x.edges = x.derive_edges()?;
        if let Some(h) = polarization {
            let n = x.rays.len();
            let mut dh2 = vec![0; n];
            for (r, out) in dh2.iter_mut().enumerate() {
                for a in 0..n {
                    for b in 0..n {
                        if h[a] != 0 && h[b] != 0 {
                            *out += h[a] * h[b] * x.intersection(r, a, b);
                        }
                    }
                }
            }
            x.polarization = Some(h);
            x.dh2 = Some(dh2);
        }
        Ok(x)
    }

    /// Marks which charts form the open subset `Y`.
    pub fn with_open_subset(mut self, in_y: Vec<bool>) -> Self {
        self.in_y = in_y;
        self
    }

    /// Row matrix of the chart's rays; local coordinates are `k = N w`.
    pub fn chart_matrix(&self, alpha: usize) -> Mat3 {
        let c = self.charts[alpha];
        [self.rays[c[0]], self.rays[c[1]], self.rays[c[2]]]
    }

    /// Local coordinates of a character `w` in chart `α`.
    pub fn to_local(&self, alpha: usize, w: Exp3) -> Exp3 {
        let n = self.chart_matrix(alpha);
        [dot(n[0], w), dot(n[1], w), dot(n[2], w)]
    }

    /// Character `w` with the given local coordinates in chart `α`.
    pub fn to_global(&self, alpha: usize, k: Exp3) -> Exp3 {
        let inv = inv3(&self.chart_matrix(alpha)).expect("smooth cone");
        [dot(inv[0], k), dot(inv[1], k), dot(inv[2], k)]
    }

    fn derive_edges(&self) -> Result<Vec<Edge>> {
        let mut edges = Vec::new();
        for a in 0..self.charts.len() {
            for b in a + 1..self.charts.len() {
                let ca = self.charts[a];
                let cb = self.charts[b];
                let shared: Vec<usize> = ca.iter().copied().filter(|r| cb.contains(r)).collect();
                if shared.len() != 2 {
                    continue;
                }
                let axis_a = (0..3).find(|i| !cb.contains(&ca[*i])).expect("one ray differs");
                let axis_b = (0..3).find(|i| !ca.contains(&cb[*i])).expect("one ray differs");
                let (i1, i2) = other_axes(axis_a);
                let sh = [ca[i1], ca[i2]];
                let pos = |r: usize| (0..3).find(|i| cb[*i] == r).expect("shared ray");
                let inv = inv3(&self.chart_matrix(a)).expect("smooth cone");
                // coefficients of n_β in the basis of α's rays: c_j = <m_j, n_β>
                let nb = self.rays[cb[axis_b]];
                let coef: [i32; 3] = [
                    (0..3).map(|r| inv[r][0] * nb[r]).sum(),
                    (0..3).map(|r| inv[r][1] * nb[r]).sum(),
                    (0..3).map(|r| inv[r][2] * nb[r]).sum(),
                ];
                if coef[axis_a] != -1 {
                    return Err(Error::InvalidInput(format!("charts {a} and {b} do not glue along a curve")));
                }
                let m = -coef[i1];
                let m_prime = -coef[i2];
                edges.push(Edge {
                    ends: [a, b],
                    axis: [axis_a, axis_b],
                    shared: sh,
                    beta_axes: [pos(sh[0]), pos(sh[1])],
                    m,
                    m_prime,
                    c1_dot_c: 2 + m + m_prime,
                    rho3: ca[axis_a],
                    rho4: cb[axis_b],
                });
            }
        }
        Ok(edges)
    }

    /// Edges with both ends in the open subset `Y`.
    pub fn edges_in_y(&self) -> impl Iterator<Item = (usize, &Edge)> {
        self.edges.iter().enumerate().filter(|(_, e)| self.in_y[e.ends[0]] && self.in_y[e.ends[1]])
    }

    /// Edges of chart `α`, with the local axis of the curve in `α`.
    pub fn chart_edges(&self, alpha: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.ends[0] == alpha {
                out.push((i, e.axis[0]));
            } else if e.ends[1] == alpha {
                out.push((i, e.axis[1]));
            }
        }
        out
    }

    /// Topological Euler characteristic (number of charts).
    pub fn euler_characteristic(&self) -> usize {
        self.charts.len()
    }

    fn is_cone(&self, rays: &BTreeSet<usize>) -> bool {
        self.charts.iter().any(|c| rays.iter().all(|r| c.contains(r)))
    }

    /// A dual vector `m` with `<m, n_r> = 1` vanishing on the rest of a cone
    /// containing `r` and `others`.
    fn dual_vector(&self, r: usize, others: &BTreeSet<usize>) -> Option<[i32; 3]> {
        for (alpha, c) in self.charts.iter().enumerate() {
            if c.contains(&r) && others.iter().all(|o| c.contains(o)) {
                let inv = inv3(&self.chart_matrix(alpha)).expect("smooth cone");
                let j = (0..3).find(|i| c[*i] == r).expect("ray in cone");
                return Some([inv[0][j], inv[1][j], inv[2][j]]);
            }
        }
        None
    }

    /// Triple intersection number `D_a · D_b · D_c`.
    pub fn intersection(&self, a: usize, b: usize, c: usize) -> i64 {
        let set: BTreeSet<usize> = [a, b, c].into_iter().collect();
        if set.len() == 3 {
            return if self.is_cone(&set) { 1 } else { 0 };
        }
        // a repeated divisor: replace one copy by a linearly equivalent sum
        let (r, rest) = if a == b {
            (a, [a, c])
        } else if a == c {
            (a, [a, b])
        } else {
            (b, [b, a])
        };
        let others: BTreeSet<usize> = rest.iter().copied().filter(|x| *x != r).collect();
        let Some(m) = self.dual_vector(r, &others) else {
            return 0;
        };
        let mut total = 0;
        for (rho, n) in self.rays.iter().enumerate() {
            if rho == r {
                continue;
            }
            let k = dot(m, *n) as i64;
            if k != 0 {
                total -= k * self.intersection(rho, rest[0], rest[1]);
            }
        }
        total
    }

    /// `C^3` as a single chart.
    pub fn c3() -> Self {
        Self::from_fan("C3", vec![[1, 0, 0], [0, 1, 0], [0, 0, 1]], vec![[0, 1, 2]], None).expect("valid fan")
    }

    /// Projective space with polarization `H = D_{ρ4}`.
    pub fn p3() -> Self {
        Self::from_fan(
            "P3",
            vec![[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]],
            vec![[0, 1, 2], [1, 2, 3], [0, 2, 3], [0, 1, 3]],
            Some(vec![0, 0, 0, 1]),
        )
        .expect("valid fan")
    }

    /// `(P^1)^3` with polarization `a_1 D_{e1} + a_2 D_{e2} + a_3 D_{e3}`.
    pub fn p1_cubed(a: [i64; 3]) -> Self {
        let rays = vec![[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, 0, 0], [0, -1, 0], [0, 0, -1]];
        let mut charts = Vec::new();
        for s in 0..8usize {
            let pick = |i: usize| if s & (1 << i) == 0 { i } else { i + 3 };
            charts.push([pick(0), pick(1), pick(2)]);
        }
        Self::from_fan("P1xP1xP1", rays, charts, Some(vec![a[0], a[1], a[2], 0, 0, 0])).expect("valid fan")
    }

    /// A smooth projective compactification of the resolved conifold.
    ///
    /// Charts 0 and 1 form the resolved conifold `Y`; the compact curve joins
    /// them along the third axis of chart 0 with normal degrees `(-1, -1)`.
    pub fn conifold() -> Self {
        let rays = vec![[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, -1], [-1, 0, 0], [0, -1, 0]];
        let charts = vec![[0, 1, 2], [0, 1, 3], [0, 5, 2], [0, 5, 3], [4, 1, 3], [4, 5, 3], [4, 1, 2], [4, 5, 2]];
        // H = D_{ρ0} + D_{ρ1} + 3 D_{ρ2}, ample on this compactification
        let x = Self::from_fan("conifold", rays, charts, Some(vec![1, 1, 3, 0, 0, 0])).expect("valid fan");
        let mut in_y = vec![false; 8];
        in_y[0] = true;
        in_y[1] = true;
        x.with_open_subset(in_y)
    }

    /// Looks up a preset by name.
    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "C3" | "c3" => Ok(Self::c3()),
            "P3" | "p3" => Ok(Self::p3()),
            "P1xP1xP1" | "p1p1p1" => Ok(Self::p1_cubed([1, 1, 1])),
            "conifold" => Ok(Self::conifold()),
            other => Err(Error::UnsupportedPreset(other.to_string())),
        }
    }

    /// Index of the edge joining two charts, if any.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.edges.iter().position(|e| (e.ends[0] == a && e.ends[1] == b) || (e.ends[0] == b && e.ends[1] == a))
    }
}

/// Slope stability of a reflexive sheaf with the given toric data.
///
/// For every line `q` (the points `p_ρ` and one generic line suffice) the
/// weighted count `Σ_{p_ρ = q} (D_ρ H^2) v_ρ` must stay below half the total.
pub fn mu_stable(g: &GlobalToricData, x: &ToricThreefold) -> Result<bool> {
    let dh2 = x.dh2.as_ref().ok_or_else(|| Error::InvalidInput(format!("{} has no polarization", x.name)))?;
    if dh2.len() != g.faces.len() {
        return Err(Error::InvalidInput("face count does not match the threefold".into()));
    }
    let total: i64 = g.faces.iter().zip(dh2).map(|(f, d)| d * f.v as i64).sum();
    if total <= 0 {
        return Ok(false);
    }
    let points: BTreeSet<_> = g.faces.iter().filter_map(|f| f.p).collect();
    for q in points {
        let s: i64 = g.faces.iter().zip(dh2).filter(|(f, _)| f.p == Some(q)).map(|(f, d)| d * f.v as i64).sum();
        if 2 * s >= total {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Limiting flag data `(u2, u3, v2, v3, p2, p3)` of the sheaf along an edge,
/// in `α`'s cross-section order, after checking both endpoint charts agree.
pub fn edge_restriction_data(
    g: &GlobalToricData,
    x: &ToricThreefold,
    edge: usize,
) -> Result<[super::data::Flag; 2]> {
    let e = x.edges.get(edge).ok_or_else(|| Error::InvalidInput(format!("no edge {edge}")))?;
    let ca = g.chart(x.charts[e.ends[0]]);
    let cb = g.chart(x.charts[e.ends[1]]);
    let from_a = ca.edge_flags(e.axis[0]);
    let from_b = [cb.flags[e.beta_axes[0]], cb.flags[e.beta_axes[1]]];
    if from_a != from_b {
        return Err(Error::GluingMismatch(format!("edge {edge}: {from_a:?} vs {from_b:?}")));
    }
    Ok(from_a)
}
