//! Configurations glued over several charts, leg corrections and the two
//! computations of `χ(Q)`.

use super::config::DoubleBoxConfig;
use super::square::{Cell, DoubleSquareConfig};
use crate::algebra::Exp3;
use crate::error::{Error, Result};
use crate::toric::{edge_restriction_data, GlobalToricData, P1Point, ToricThreefold};
use std::collections::{BTreeMap, HashMap};

/// The correction `f_{m,m'}(λ) = Σ_c δ(c) (1 - m c_1 - m' c_2)`.
pub fn f_correction(m: i32, m_prime: i32, lam: &DoubleSquareConfig) -> i64 {
    lam.cells.iter().map(|(c, d)| *d as i64 * (1 - m as i64 * c[0] as i64 - m_prime as i64 * c[1] as i64)).sum()
}

/// The correction `g = -|λ|(u + u' + v + v') + w + w'`, where `w`, `w'` are the
/// slab renormalizations of the chosen representatives at the two ends.
pub fn g_correction(lam: &DoubleSquareConfig, u: [i32; 2], v: [u32; 2], slab: [i64; 2]) -> i64 {
    -(lam.size() as i64) * (u[0] as i64 + u[1] as i64 + v[0] as i64 + v[1] as i64) + slab[0] + slab[1]
}

/// Leg corrections `(f, g)` with a common representative whose third
/// partition has `lambda3` cells in its leg at both ends.
pub fn leg_corrections(m: i32, m_prime: i32, lam: &DoubleSquareConfig, u: [i32; 2], v: [u32; 2], lambda3: u32) -> (i64, i64) {
    let slab = [v[0] as i64 * lambda3 as i64, v[1] as i64 * lambda3 as i64];
    (f_correction(m, m_prime, lam), g_correction(lam, u, v, slab))
}

/// Rewrites a leg given in `α`'s cross-section order into `β`'s.
pub fn leg_at_beta(x: &ToricThreefold, edge: usize, lam: &DoubleSquareConfig) -> DoubleSquareConfig {
    let e = &x.edges[edge];
    let swap = e.beta_axes[0] > e.beta_axes[1];
    let flags = if swap { [lam.flags[1], lam.flags[0]] } else { lam.flags };
    let cells = lam.cells.iter().map(|(c, d)| (if swap { [c[1], c[0]] } else { *c }, *d)).collect();
    DoubleSquareConfig { flags, cells }
}

/// Maps a cell in `α`'s cross-section order to `β`'s order.
pub fn cell_at_beta(x: &ToricThreefold, edge: usize, c: Cell) -> Cell {
    let e = &x.edges[edge];
    if e.beta_axes[0] > e.beta_axes[1] {
        [c[1], c[0]]
    } else {
        c
    }
}

/// Assignment of `P^1` factors to chart components after gluing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluedFactors {
    /// Per chart, per component: the factor it moves with, if free.
    pub per_chart: Vec<Vec<Option<u32>>>,
    /// Number of factors.
    pub count: u32,
}

/// A torus fixed subsheaf of a reflexive sheaf on a threefold (or its open
/// part `Y`), given chart by chart with matching legs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalConfig {
    /// The reflexive hull.
    pub hull: GlobalToricData,
    /// Nonempty legs along edges of `Y`, in the first end's cross-section order.
    pub edges: BTreeMap<usize, DoubleSquareConfig>,
    /// Chart configurations, indexed by chart; `None` outside `Y`.
    pub charts: Vec<Option<DoubleBoxConfig>>,
}

impl GlobalConfig {
    /// The configuration with the given legs and no further boxes.
    pub fn bare(x: &ToricThreefold, hull: GlobalToricData, edges: BTreeMap<usize, DoubleSquareConfig>) -> Result<Self> {
        let mut charts: Vec<Option<DoubleBoxConfig>> = Vec::new();
        for (alpha, rays) in x.charts.iter().enumerate() {
            if !x.in_y[alpha] {
                charts.push(None);
                continue;
            }
            let chart = hull.chart(*rays);
            let mut legs = [0, 1, 2].map(|i| DoubleSquareConfig::empty(chart.edge_flags(i)));
            for (ei, axis) in x.chart_edges(alpha) {
                if let Some(lam) = edges.get(&ei) {
                    let e = &x.edges[ei];
                    if !(x.in_y[e.ends[0]] && x.in_y[e.ends[1]]) {
                        return Err(Error::InvalidInput(format!("edge {ei} is not a compact edge of Y")));
                    }
                    edge_restriction_data(&hull, x, ei)?;
                    if lam.flags != chart.edge_flags(axis) && e.ends[0] == alpha {
                        return Err(Error::GluingMismatch(format!("edge {ei}: leg flags differ from the hull")));
                    }
                    legs[axis] = if e.ends[0] == alpha { lam.clone() } else { leg_at_beta(x, ei, lam) };
                }
            }
            charts.push(Some(DoubleBoxConfig::bare(chart, legs)?));
        }
        Ok(Self { hull, edges, charts })
    }

    /// Adds decrements chart by chart and validates every chart.
    pub fn with_decrements(mut self, decs: BTreeMap<usize, BTreeMap<Exp3, u8>>) -> Result<Self> {
        for (alpha, dec) in decs {
            let c = self
                .charts
                .get_mut(alpha)
                .and_then(|c| c.as_mut())
                .ok_or_else(|| Error::InvalidInput(format!("chart {alpha} is not part of Y")))?;
            *c = DoubleBoxConfig::new(c.chart, c.legs.clone(), dec)?;
        }
        Ok(self)
    }

    /// Replaces the configuration of one chart after checking its legs.
    pub fn set_chart(&mut self, alpha: usize, cfg: DoubleBoxConfig) -> Result<()> {
        match self.charts.get(alpha).and_then(|c| c.as_ref()) {
            Some(old) if old.legs == cfg.legs && old.chart == cfg.chart => {
                self.charts[alpha] = Some(cfg);
                Ok(())
            }
            Some(_) => Err(Error::GluingMismatch(format!("chart {alpha}: legs or hull differ"))),
            None => Err(Error::InvalidInput(format!("chart {alpha} is not part of Y"))),
        }
    }

    /// Checks that the legs in both end charts of every edge agree.
    pub fn check_gluing(&self, x: &ToricThreefold) -> Result<()> {
        for (ei, e) in x.edges_in_y() {
            let a = self.charts[e.ends[0]].as_ref().expect("chart in Y");
            let b = self.charts[e.ends[1]].as_ref().expect("chart in Y");
            let la = &a.legs[e.axis[0]];
            let lb = &b.legs[e.axis[1]];
            if leg_at_beta(x, ei, la) != *lb {
                return Err(Error::GluingMismatch(format!("edge {ei}: legs differ at the two ends")));
            }
        }
        Ok(())
    }

    fn charts_in_y(&self) -> impl Iterator<Item = (usize, &DoubleBoxConfig)> {
        self.charts.iter().enumerate().filter_map(|(a, c)| c.as_ref().map(|c| (a, c)))
    }

    /// `χ(Q)` from `Σ_α |π_α| + Σ_edges (f + g)`.
    pub fn chi_formula(&self, x: &ToricThreefold) -> Result<i64> {
        self.check_gluing(x)?;
        let mut chi: i64 = self.charts_in_y().map(|(_, c)| c.size()).sum();
        for (ei, lam) in self.edges.iter() {
            let e = &x.edges[*ei];
            let a = self.charts[e.ends[0]].as_ref().expect("chart in Y");
            let b = self.charts[e.ends[1]].as_ref().expect("chart in Y");
            let f3 = self.hull.faces[e.rho3];
            let f4 = self.hull.faces[e.rho4];
            let slab = [a.slab_weights()[e.axis[0]], b.slab_weights()[e.axis[1]]];
            chi += f_correction(e.m, e.m_prime, lam) + g_correction(lam, [f3.u, f4.u], [f3.v, f4.v], slab);
        }
        Ok(chi)
    }

    /// `χ(Q)` from the Čech complex of the affine cover, truncated at each
    /// chart's analysis box and evaluated at `t = (1, 1, 1)`.
    pub fn chi_cech(&self, x: &ToricThreefold) -> Result<i64> {
        self.check_gluing(x)?;
        let mut his: HashMap<usize, Exp3> = HashMap::new();
        let mut chi = 0i64;
        for (alpha, c) in self.charts_in_y() {
            let (lo, hi) = c.analysis_box();
            chi += c.box_delta(lo, hi);
            his.insert(alpha, hi);
        }
        for (ei, lam) in self.edges.iter() {
            let e = &x.edges[*ei];
            let ha = his[&e.ends[0]][e.axis[0]] as i64;
            let hb = his[&e.ends[1]][e.axis[1]] as i64;
            for (c, d) in lam.cells.iter() {
                let lin = e.m as i64 * c[0] as i64 + e.m_prime as i64 * c[1] as i64;
                chi += *d as i64 * (-ha - hb - 1 - lin);
            }
        }
        Ok(chi)
    }

    /// `c_3(Q) = 2 χ(Q) - Σ_edges |λ| (c_1(X) · C)`.
    pub fn c3(&self, x: &ToricThreefold) -> Result<i64> {
        let chi = self.chi_cech(x)?;
        let legs: i64 = self.edges.iter().map(|(ei, lam)| lam.size() as i64 * x.edges[*ei].c1_dot_c as i64).sum();
        Ok(2 * chi - legs)
    }

    /// Sum of the chart sizes, the exponent of the combinatorial series.
    pub fn comb_size(&self) -> i64 {
        self.charts_in_y().map(|(_, c)| c.size()).sum()
    }

    /// Moduli factors of the glued fixed component.
    ///
    /// For every chart of `Y` (indexed like `charts`) and every component of
    /// that chart, in the order of [`DoubleBoxConfig::components`], the
    /// `P^1` factor (numbered from 1) it moves with, or `None` if its line is
    /// forced. Returns `None` when components glued along an edge are forced
    /// onto different lines.
    pub fn glued_factors(&self, x: &ToricThreefold) -> Result<Option<GluedFactors>> {
        self.check_gluing(x)?;
        let mut nodes: Vec<Option<P1Point>> = Vec::new();
        let mut owner: Vec<Vec<usize>> = vec![Vec::new(); self.charts.len()];
        let mut index: HashMap<(usize, usize, Cell), usize> = HashMap::new();
        for (alpha, c) in self.charts_in_y() {
            let comps = match c.components() {
                Some(v) => v,
                None => return Ok(None),
            };
            for comp in comps {
                let id = nodes.len();
                nodes.push(comp.label);
                owner[alpha].push(id);
                for (axis, cell) in comp.tails {
                    index.insert((alpha, axis, cell), id);
                }
            }
        }
        let mut parent: Vec<usize> = (0..nodes.len()).collect();
        fn find(p: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while p[r] != r {
                r = p[r];
            }
            let mut j = i;
            while p[j] != r {
                let next = p[j];
                p[j] = r;
                j = next;
            }
            r
        }
        for (ei, lam) in self.edges.iter() {
            let e = &x.edges[*ei];
            for c in lam.cells.keys() {
                let a = index.get(&(e.ends[0], e.axis[0], *c));
                let b = index.get(&(e.ends[1], e.axis[1], cell_at_beta(x, *ei, *c)));
                if let (Some(a), Some(b)) = (a, b) {
                    let (ra, rb) = (find(&mut parent, *a), find(&mut parent, *b));
                    if ra != rb {
                        parent[ra] = rb;
                    }
                }
            }
        }
        let mut labels: BTreeMap<usize, Option<P1Point>> = BTreeMap::new();
        for i in 0..nodes.len() {
            let r = find(&mut parent, i);
            let entry = labels.entry(r).or_insert(None);
            if let Some(l) = nodes[i] {
                match entry {
                    None => *entry = Some(l),
                    Some(old) if *old != l => return Ok(None),
                    _ => {}
                }
            }
        }
        // number the free roots in order of first appearance
        let mut numbering: HashMap<usize, u32> = HashMap::new();
        let mut count = 0u32;
        let mut per_chart = Vec::with_capacity(self.charts.len());
        for ids in owner {
            let mut row = Vec::with_capacity(ids.len());
            for id in ids {
                let r = find(&mut parent, id);
                if labels[&r].is_some() {
                    row.push(None);
                } else {
                    let f = *numbering.entry(r).or_insert_with(|| {
                        count += 1;
                        count
                    });
                    row.push(Some(f));
                }
            }
            per_chart.push(row);
        }
        Ok(Some(GluedFactors { per_chart, count }))
    }

    /// Number of `P^1` factors of the fixed component after gluing, or `None`
    /// if components glued along an edge are forced onto different lines.
    pub fn glued_free_count(&self, x: &ToricThreefold) -> Result<Option<usize>> {
        Ok(self.glued_factors(x)?.map(|g| g.count as usize))
    }

    /// Weight `ω = e(C)` of the glued fixed component (0 when invalid).
    pub fn omega(&self, x: &ToricThreefold) -> Result<u64> {
        Ok(self.glued_free_count(x)?.map(|n| 1u64 << n).unwrap_or(0))
    }
}

