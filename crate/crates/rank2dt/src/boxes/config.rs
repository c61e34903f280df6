//! Double box configurations on one chart, stored through their
//! characteristic function.

use super::square::{Cell, DoubleSquareConfig};
use crate::algebra::Exp3;
use crate::error::{Error, Result};
use crate::toric::{other_axes, ChartToricData, P1Point, Sub};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// Projection of a point onto the cross-section of the leg along axis `i`.
pub fn proj(i: usize, k: Exp3) -> Cell {
    let (a, b) = other_axes(i);
    [k[a], k[b]]
}

/// The point of the leg along axis `i` with leg coordinate `x` over cell `c`.
pub fn lift(i: usize, x: i32, c: Cell) -> Exp3 {
    let (a, b) = other_axes(i);
    let mut k = [0; 3];
    k[i] = x;
    k[a] = c[0];
    k[b] = c[1];
    k
}

/// A connected set of lattice points where the subsheaf is a line inside a
/// rank 2 part of the reflexive sheaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Points of the component inside the analysis box.
    pub points: Vec<Exp3>,
    /// The line imposed by neighbouring face points, if any.
    pub label: Option<P1Point>,
    /// Leg cross-section cells `(axis, cell)` the component reaches at infinity.
    pub tails: Vec<(usize, Cell)>,
}

impl Component {
    /// Whether the line is free, giving a `P^1` of fixed points.
    pub fn is_free(&self) -> bool {
        self.label.is_none()
    }
}

/// A moduli component in the sense of the `(proj)` test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuliComponent {
    /// Boxes lying in exactly two partitions, truncated to the analysis box.
    pub boxes: Vec<Exp3>,
    /// Whether the component carries a `P^1` of deformations.
    pub has_moduli: bool,
}

/// A double box configuration on one chart.
///
/// The class is the characteristic function `χ = χ_0 - dec`, where `χ_0` is
/// the largest characteristic function below the reflexive sheaf with the
/// given leg asymptotics (the bare leg cylinders) and `dec` is a finitely
/// supported decrement. Equal classes have equal stored data.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DoubleBoxConfig {
    /// Toric data of the reflexive hull on the chart.
    pub chart: ChartToricData,
    /// Leg asymptotics along the three axes (empty squares for no leg).
    pub legs: [DoubleSquareConfig; 3],
    /// Finite decrement relative to the bare leg cylinders.
    pub dec: BTreeMap<Exp3, u8>,
}

impl DoubleBoxConfig {
    /// The configuration with no boxes beyond the leg cylinders.
    pub fn bare(chart: ChartToricData, legs: [DoubleSquareConfig; 3]) -> Result<Self> {
        for (i, leg) in legs.iter().enumerate() {
            if leg.flags != chart.edge_flags(i) {
                return Err(Error::GluingMismatch(format!("leg {i} flags do not match the chart")));
            }
        }
        Ok(Self { chart, legs, dec: BTreeMap::new() })
    }

    /// The empty configuration without legs.
    pub fn empty(chart: ChartToricData) -> Self {
        let legs = [0, 1, 2].map(|i| DoubleSquareConfig::empty(chart.edge_flags(i)));
        Self { chart, legs, dec: BTreeMap::new() }
    }

    /// Builds a configuration and checks it is a valid characteristic function.
    pub fn new(chart: ChartToricData, legs: [DoubleSquareConfig; 3], dec: BTreeMap<Exp3, u8>) -> Result<Self> {
        let mut c = Self::bare(chart, legs)?;
        c.dec = dec.into_iter().filter(|(_, d)| *d > 0).collect();
        c.validate()?;
        Ok(c)
    }

    /// Whether the reflexive hull is singular on this chart.
    pub fn is_singular(&self) -> bool {
        crate::toric::singularity_data(&self.chart).0
    }

    /// Whether some leg is nonempty.
    pub fn has_legs(&self) -> bool {
        self.legs.iter().any(|l| !l.is_empty())
    }

    /// Corner `u + v` of the region `D` where the hull is all of `C^2`.
    pub fn d_corner(&self) -> Exp3 {
        let u = self.chart.u();
        let v = self.chart.v();
        [0, 1, 2].map(|i| u[i] + v[i] as i32)
    }

    /// Whether `k` lies in `D`.
    pub fn in_d(&self, k: Exp3) -> bool {
        let d = self.d_corner();
        (0..3).all(|i| k[i] >= d[i])
    }

    /// Characteristic function of the hull.
    pub fn chi_r(&self, k: Exp3) -> u8 {
        self.chart.chi(k)
    }

    /// Characteristic function of the bare leg cylinders.
    pub fn chi0(&self, k: Exp3) -> u8 {
        let mut x = self.chart.chi(k);
        for (i, leg) in self.legs.iter().enumerate() {
            if !leg.is_empty() {
                x = x.min(leg.chi(proj(i, k)));
            }
        }
        x
    }

    /// Decrement at `k`.
    pub fn dec_at(&self, k: Exp3) -> u8 {
        self.dec.get(&k).copied().unwrap_or(0)
    }

    /// Characteristic function of the subsheaf.
    pub fn chi(&self, k: Exp3) -> u8 {
        self.chi0(k).saturating_sub(self.dec_at(k))
    }

    /// Deficit `δ = χ_R - χ`, the multiplicity of the quotient at `k`.
    pub fn delta(&self, k: Exp3) -> u8 {
        self.chi_r(k) - self.chi(k)
    }

    /// Total decrement.
    pub fn level(&self) -> u32 {
        self.dec.values().map(|d| *d as u32).sum()
    }

    /// Per axis, the coordinate beyond which `χ_0` no longer changes.
    pub fn stable_from(&self) -> Exp3 {
        let mut t = self.d_corner();
        for (j, leg) in self.legs.iter().enumerate() {
            if leg.is_empty() {
                continue;
            }
            let (a, b) = other_axes(j);
            let e = leg.extent();
            t[a] = t[a].max(e[0]);
            t[b] = t[b].max(e[1]);
        }
        t
    }

    /// Analysis box `[lo, hi]`: below `lo` everything vanishes and the layer
    /// `hi` repeats to infinity.
    pub fn analysis_box(&self) -> (Exp3, Exp3) {
        let lo = self.chart.u().map(|x| x - 1);
        let mut hi = self.stable_from();
        for k in self.dec.keys() {
            for i in 0..3 {
                hi[i] = hi[i].max(k[i]);
            }
        }
        (lo, hi.map(|x| x + 1))
    }

    /// Points of the box `[lo, hi]` where `δ > 0`.
    pub fn support(&self, lo: Exp3, hi: Exp3) -> BTreeSet<Exp3> {
        let mut out: BTreeSet<Exp3> = self.dec.keys().copied().collect();
        for (i, leg) in self.legs.iter().enumerate() {
            for c in leg.cells.keys() {
                for x in lo[i]..=hi[i] {
                    out.insert(lift(i, x, *c));
                }
            }
        }
        out.retain(|k| (0..3).all(|i| k[i] >= lo[i] && k[i] <= hi[i]) && self.delta(*k) > 0);
        out
    }

    /// Sum of the deficit over the box.
    pub fn box_delta(&self, lo: Exp3, hi: Exp3) -> i64 {
        self.support(lo, hi).iter().map(|k| self.delta(*k) as i64).sum()
    }

    /// Per leg, the renormalization carried by the slab `u_i <= k_i < u_i + v_i`.
    ///
    /// Over each leg cell, a point counts with the smallest deficit met along
    /// the leg above it, which is the number of partition legs through it.
    pub fn slab_weights(&self) -> [i64; 3] {
        let u = self.chart.u();
        let d = self.d_corner();
        let mut w = [0i64; 3];
        for (i, leg) in self.legs.iter().enumerate() {
            for (c, dc) in leg.cells.iter() {
                let mut run = *dc;
                for x in (u[i]..d[i]).rev() {
                    run = run.min(self.delta(lift(i, x, *c)));
                    w[i] += run as i64;
                }
            }
        }
        w
    }

    /// Renormalized size `|π| = Σ|π_i| - |π_out|`.
    ///
    /// Every point counts with its deficit minus the number of partition legs
    /// through it. For legs over `D'` whose slab is not fully removed the
    /// representative is chosen with the third partition's leg starting at
    /// `D`; the total `χ` of a global configuration does not depend on this.
    pub fn size(&self) -> i64 {
        let (lo, hi) = self.analysis_box();
        let d = self.d_corner();
        let mut s = self.box_delta(lo, hi);
        let slab = self.slab_weights();
        for (i, leg) in self.legs.iter().enumerate() {
            let layers = (hi[i] - d[i] + 1) as i64;
            s -= leg.size() as i64 * layers + slab[i];
        }
        s
    }

    /// Checks that `χ` is a characteristic function of a subsheaf.
    pub fn validate(&self) -> Result<()> {
        for (k, x) in self.dec.iter() {
            if *x > self.chi0(*k) {
                return Err(Error::InvalidInput(format!("decrement at {k:?} exceeds the available rank")));
            }
            for j in 0..3 {
                let mut up = *k;
                up[j] += 1;
                let mut down = *k;
                down[j] -= 1;
                if self.chi(up) < self.chi(*k) || self.chi(down) > self.chi(*k) {
                    return Err(Error::InvalidInput(format!("characteristic function not monotone at {k:?}")));
                }
            }
        }
        if self.components().is_none() {
            return Err(Error::InvalidInput("a component of ones is forced onto two different lines".into()));
        }
        Ok(())
    }

    /// Connected components of points of `D` where `χ = 1`.
    ///
    /// Returns `None` when a component touches face points carrying two
    /// different lines, so that no subsheaf has this characteristic function.
    pub fn components(&self) -> Option<Vec<Component>> {
        let (lo, hi) = self.analysis_box();
        self.components_in(lo, hi)
    }

    /// Components computed in a given box (which must contain the analysis box).
    pub fn components_in(&self, lo: Exp3, hi: Exp3) -> Option<Vec<Component>> {
        let ones: BTreeSet<Exp3> =
            self.support(lo, hi).into_iter().filter(|k| self.in_d(*k) && self.chi(*k) == 1).collect();
        let mut seen: HashMap<Exp3, usize> = HashMap::new();
        let mut out = Vec::new();
        for start in ones.iter() {
            if seen.contains_key(start) {
                continue;
            }
            let id = out.len();
            seen.insert(*start, id);
            let mut pts = vec![*start];
            let mut label: Option<P1Point> = None;
            let mut i = 0;
            while i < pts.len() {
                let k = pts[i];
                i += 1;
                for j in 0..3 {
                    for s in [-1, 1] {
                        let mut n = k;
                        n[j] += s;
                        if n[j] > hi[j] {
                            continue;
                        }
                        if ones.contains(&n) {
                            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(n) {
                                e.insert(id);
                                pts.push(n);
                            }
                        } else if s < 0 && !self.in_d(n) && self.chi(n) == 1 {
                            if let Sub::Line(p) = self.chart.space(n) {
                                match label {
                                    None => label = Some(p),
                                    Some(old) if old != p => return None,
                                    _ => {}
                                }
                            }
                        }
                    }
                }
            }
            pts.sort();
            let mut tails = Vec::new();
            for (a, leg) in self.legs.iter().enumerate() {
                for c in leg.cells.keys() {
                    if leg.in_d(*c) && pts.binary_search(&lift(a, hi[a], *c)).is_ok() {
                        tails.push((a, *c));
                    }
                }
            }
            out.push(Component { points: pts, label, tails });
        }
        Some(out)
    }

    /// Whether the characteristic function is realized by some subsheaf.
    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Number of free components.
    pub fn free_components(&self) -> usize {
        self.components().map(|c| c.iter().filter(|x| x.is_free()).count()).unwrap_or(0)
    }

    /// Weight `ω = e(C_π) = 2^{#free components}` on the chart alone.
    pub fn omega(&self) -> u64 {
        1u64 << self.free_components()
    }

    /// Corner of the partition `π_i`.
    pub fn partition_corner(&self, i: usize) -> Exp3 {
        let mut c = self.d_corner();
        c[i] = self.chart.u()[i];
        c
    }

    /// A representative triple `(π_1, π_2, π_3)` truncated to the analysis box.
    ///
    /// Zeros in each face region go to that partition, zeros in `D` to all
    /// three, and every component of ones to the first two partitions it can
    /// be added to.
    pub fn representative(&self) -> Result<[BTreeSet<Exp3>; 3]> {
        if !self.is_singular() {
            return Err(Error::InvalidInput("representatives are defined for singular charts".into()));
        }
        let (lo, hi) = self.analysis_box();
        let corners = [0, 1, 2].map(|i| self.partition_corner(i));
        let mut parts: [BTreeSet<Exp3>; 3] = Default::default();
        for k in self.support(lo, hi) {
            if self.in_d(k) {
                if self.chi(k) == 0 {
                    for p in parts.iter_mut() {
                        p.insert(k);
                    }
                }
            } else if let Some(i) = (0..3).find(|i| (0..3).all(|j| k[j] >= corners[*i][j])) {
                parts[i].insert(k);
            }
        }
        let comps = self.components_in(lo, hi).ok_or_else(|| Error::InvalidInput("invalid configuration".into()))?;
        for comp in comps {
            let set: BTreeSet<Exp3> = comp.points.iter().copied().collect();
            let mut chosen = 0;
            for i in 0..3 {
                if chosen == 2 {
                    break;
                }
                let ok = comp.points.iter().all(|k| {
                    (0..3).all(|j| {
                        let mut n = *k;
                        n[j] -= 1;
                        n[j] < corners[i][j] || parts[i].contains(&n) || set.contains(&n)
                    })
                });
                if ok {
                    parts[i].extend(comp.points.iter().copied());
                    chosen += 1;
                }
            }
            if chosen < 2 {
                return Err(Error::NotADoubleBox("a component of ones fits into fewer than two partitions".into()));
            }
        }
        Ok(parts)
    }

    /// Moduli components by the projection test on a reconstructed representative.
    ///
    /// Locally free charts carry no exactly-two condition; there every free
    /// component of ones is reported with moduli.
    pub fn moduli_components(&self) -> Result<Vec<ModuliComponent>> {
        let comps = self.components().ok_or_else(|| Error::InvalidInput("invalid configuration".into()))?;
        if !self.is_singular() {
            return Ok(comps.into_iter().map(|c| ModuliComponent { has_moduli: c.is_free(), boxes: c.points }).collect());
        }
        let parts = self.representative()?;
        let d = self.d_corner();
        let mut out = Vec::new();
        for comp in comps {
            let has_moduli = (0..3).all(|i| {
                let (a, b) = other_axes(i);
                let slab: BTreeSet<Cell> = parts[i]
                    .iter()
                    .filter(|k| k[i] == d[i] - 1 && k[a] >= d[a] && k[b] >= d[b])
                    .map(|k| proj(i, *k))
                    .collect();
                comp.points.iter().all(|k| slab.contains(&proj(i, *k)))
            });
            out.push(ModuliComponent { boxes: comp.points, has_moduli });
        }
        Ok(out)
    }

    /// Canonical class of a finite raw triple of 3D partitions.
    pub fn canonicalize(chart: ChartToricData, triple: &[BTreeSet<Exp3>; 3]) -> Result<Self> {
        let probe = Self::empty(chart);
        let corners = [0, 1, 2].map(|i| probe.partition_corner(i));
        for (i, part) in triple.iter().enumerate() {
            for k in part.iter() {
                if (0..3).any(|j| k[j] < corners[i][j]) {
                    return Err(Error::InvalidInput(format!("box {k:?} lies outside the cone of π_{}", i + 1)));
                }
                for j in 0..3 {
                    let mut n = *k;
                    n[j] -= 1;
                    if n[j] >= corners[i][j] && !part.contains(&n) {
                        return Err(Error::InvalidInput(format!("π_{} is not a 3D partition at {k:?}", i + 1)));
                    }
                }
            }
        }
        let all: BTreeSet<Exp3> = triple.iter().flat_map(|p| p.iter().copied()).collect();
        let mut dec = BTreeMap::new();
        for k in all {
            let count = triple.iter().filter(|p| p.contains(&k)).count() as u8;
            let out = probe.in_d(k);
            if out && count == 1 {
                return Err(Error::NotADoubleBox(format!("box {k:?} of π_out lies in exactly one partition")));
            }
            dec.insert(k, count - u8::from(out));
        }
        Self::new(chart, probe.legs, dec)
    }

    /// Points of the box with their deficit, in sorted order.
    pub fn deficits(&self) -> Vec<(Exp3, u8)> {
        let (lo, hi) = self.analysis_box();
        self.support(lo, hi).into_iter().map(|k| (k, self.delta(k))).collect()
    }
}
