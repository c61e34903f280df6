//! Breadth-first enumeration of double box configurations by total decrement.
//!
//! Starting from the bare leg cylinders `χ_0`, each step lowers the
//! characteristic function by one at a point whose lower neighbours are all
//! strictly smaller. Every finitely supported monotone decrement is reached
//! this way (remove minimal points first), and levels are deduplicated by
//! their sparse decrement map.

use super::config::{lift, DoubleBoxConfig};
use super::square::DoubleSquareConfig;
use crate::algebra::Exp3;
use crate::error::Result;
use crate::par;
use crate::toric::ChartToricData;
use std::collections::{BTreeMap, BTreeSet, HashSet};

type State = Vec<(Exp3, u8)>;

/// The truncated lattice in which enumeration up to a given level happens.
///
/// Along every axis the layer `hi` repeats to infinity and is never
/// decremented; a decrement deeper than `t_i + levelmax` along axis `i` would
/// force a chain longer than the level budget, so nothing is lost.
struct Grid {
    bare: DoubleBoxConfig,
    hi: Exp3,
    corners: Vec<Exp3>,
    base_size: i64,
    base_slab: i64,
    levelmax: u32,
}

impl Grid {
    fn new(bare: DoubleBoxConfig, max_size: i64) -> Self {
        let base_size = bare.size();
        let base_slab: i64 = bare.slab_weights().iter().sum();
        // the slab renormalization can grow by at most this much
        let u = bare.chart.u();
        let d = bare.d_corner();
        let mut slack = 0i64;
        for (i, leg) in bare.legs.iter().enumerate() {
            for (c, dc) in leg.cells.iter() {
                let mut run = *dc;
                for x in (u[i]..d[i]).rev() {
                    run = run.min(bare.delta(lift(i, x, *c)));
                    slack += (*dc - run) as i64;
                }
            }
        }
        let levelmax = (max_size - base_size + slack).max(0) as u32;
        let t = bare.stable_from();
        let hi = t.map(|x| x + levelmax as i32 + 1);
        let lo = bare.chart.u();
        let mut corners = Vec::new();
        for a in lo[0]..hi[0] {
            for b in lo[1]..hi[1] {
                for c in lo[2]..hi[2] {
                    let k = [a, b, c];
                    let x = bare.chi0(k);
                    if x == 0 {
                        continue;
                    }
                    if (0..3).all(|j| {
                        let mut n = k;
                        n[j] -= 1;
                        bare.chi0(n) < x
                    }) {
                        corners.push(k);
                    }
                }
            }
        }
        Self { bare, hi, corners, base_size, base_slab, levelmax }
    }

    fn clamp(&self, k: Exp3) -> Exp3 {
        [0, 1, 2].map(|i| k[i].min(self.hi[i]))
    }

    fn dec(state: &State, k: Exp3) -> u8 {
        match state.binary_search_by(|(p, _)| p.cmp(&k)) {
            Ok(i) => state[i].1,
            Err(_) => 0,
        }
    }

    fn chi(&self, state: &State, k: Exp3) -> u8 {
        let k = self.clamp(k);
        self.bare.chi0(k).saturating_sub(Self::dec(state, k))
    }

    fn successors(&self, state: &State) -> Vec<State> {
        let mut cand: BTreeSet<Exp3> = self.corners.iter().copied().collect();
        for (k, _) in state.iter() {
            cand.insert(*k);
            for j in 0..3 {
                let mut n = *k;
                n[j] += 1;
                cand.insert(n);
            }
        }
        let mut out = Vec::new();
        for p in cand {
            if (0..3).any(|i| p[i] >= self.hi[i]) {
                continue;
            }
            let x = self.chi(state, p);
            if x == 0 {
                continue;
            }
            let ok = (0..3).all(|j| {
                let mut n = p;
                n[j] -= 1;
                self.chi(state, n) < x
            });
            if ok {
                let mut s = state.clone();
                match s.binary_search_by(|(q, _)| q.cmp(&p)) {
                    Ok(i) => s[i].1 += 1,
                    Err(i) => s.insert(i, (p, 1)),
                }
                out.push(s);
            }
        }
        out
    }

    fn config(&self, state: &State) -> DoubleBoxConfig {
        let mut c = self.bare.clone();
        c.dec = state.iter().copied().collect::<BTreeMap<_, _>>();
        c
    }

    /// Size through the incremental formula `base + level - Δslab`.
    fn size(&self, cfg: &DoubleBoxConfig) -> i64 {
        let slab: i64 = cfg.slab_weights().iter().sum();
        self.base_size + cfg.level() as i64 - (slab - self.base_slab)
    }
}

/// An enumerated class together with its size and chart weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumerated {
    /// The configuration.
    pub config: DoubleBoxConfig,
    /// Renormalized size `|π|`.
    pub size: i64,
    /// Weight `ω` on the chart.
    pub omega: u64,
}

/// Enumerates all double box configurations with the given leg asymptotics
/// and `|π| <= max_size`, one canonical representative per class.
///
/// Results are sorted by size and then by decrement map, so the output is
/// deterministic regardless of the parallel backend.
pub fn enumerate_boxes(chart: ChartToricData, legs: [DoubleSquareConfig; 3], max_size: i64) -> Result<Vec<Enumerated>> {
    let bare = DoubleBoxConfig::bare(chart, legs)?;
    enumerate_from(bare, max_size, true)
}

/// Enumerates all monotone decrements (valid or not) up to `max_size`; with
/// `only_valid` the ones with conflicting forced lines are dropped.
pub fn enumerate_from(bare: DoubleBoxConfig, max_size: i64, only_valid: bool) -> Result<Vec<Enumerated>> {
    let grid = Grid::new(bare, max_size);
    let mut level: Vec<State> = vec![Vec::new()];
    let mut out = Vec::new();
    for lvl in 0..=grid.levelmax {
        let evaluated = par::map_collect(&level, |s| {
            let cfg = grid.config(s);
            let size = grid.size(&cfg);
            if size > max_size {
                return None;
            }
            match cfg.components() {
                Some(comps) => {
                    let free = comps.iter().filter(|c| c.is_free()).count();
                    Some(Enumerated { config: cfg, size, omega: 1u64 << free })
                }
                None if !only_valid => Some(Enumerated { config: cfg, size, omega: 0 }),
                None => None,
            }
        });
        out.extend(evaluated.into_iter().flatten());
        if lvl == grid.levelmax {
            break;
        }
        let succ = par::map_collect(&level, |s| grid.successors(s));
        let mut seen: HashSet<State> = HashSet::new();
        let mut next = Vec::new();
        for list in succ {
            for s in list {
                if seen.insert(s.clone()) {
                    next.push(s);
                }
            }
        }
        next.sort();
        level = next;
    }
    out.sort_by(|a, b| a.size.cmp(&b.size).then_with(|| a.config.dec.cmp(&b.config.dec)));
    Ok(out)
}
