//! Double square configurations: leg cross-sections along a toric line.

use crate::error::{Error, Result};
use crate::toric::{Flag, Sub};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashSet};

/// A 2D cell in the cross-section coordinates of an edge.
pub type Cell = [i32; 2];

/// A finite 2D partition based at a corner, stored as column heights.
///
/// Column `j` holds the cells `(base[0] + j, base[1] + r)` for `r < heights[j]`;
/// heights are weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition2D {
    /// Corner of the partition.
    pub base: Cell,
    /// Column heights, weakly decreasing, no trailing zeros.
    pub heights: Vec<u32>,
}

impl Partition2D {
    /// Builds a partition, rejecting increasing column heights.
    pub fn new(base: Cell, mut heights: Vec<u32>) -> Result<Self> {
        while heights.last() == Some(&0) {
            heights.pop();
        }
        if heights.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::InvalidInput(format!("column heights {heights:?} are not decreasing")));
        }
        Ok(Self { base, heights })
    }

    /// The empty partition at `base`.
    pub fn empty(base: Cell) -> Self {
        Self { base, heights: Vec::new() }
    }

    /// Number of cells.
    pub fn len(&self) -> usize {
        self.heights.iter().map(|h| *h as usize).sum()
    }

    /// Whether there are no cells.
    pub fn is_empty(&self) -> bool {
        self.heights.is_empty()
    }

    /// The cells of the partition.
    pub fn cells(&self) -> BTreeSet<Cell> {
        let mut out = BTreeSet::new();
        for (j, h) in self.heights.iter().enumerate() {
            for r in 0..*h as i32 {
                out.insert([self.base[0] + j as i32, self.base[1] + r]);
            }
        }
        out
    }
}

/// A double square configuration in canonical form.
///
/// The class is stored as the deficit `δ = χ_R - χ` of the characteristic
/// function on the cross-section, which is finite and equal for all
/// representatives of the class. `flags` are the limiting flags of the two
/// transverse faces, in increasing local axis order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DoubleSquareConfig {
    /// Transverse flags `(R_{i'}, R_{i''})`.
    pub flags: [Flag; 2],
    /// Cells with nonzero deficit; values are 1 or 2.
    pub cells: BTreeMap<Cell, u8>,
}

impl DoubleSquareConfig {
    /// The empty configuration over the given flags.
    pub fn empty(flags: [Flag; 2]) -> Self {
        Self { flags, cells: BTreeMap::new() }
    }

    /// Builds a configuration from deficit cells and checks it.
    pub fn new(flags: [Flag; 2], cells: impl IntoIterator<Item = (Cell, u8)>) -> Result<Self> {
        let s = Self { flags, cells: cells.into_iter().filter(|(_, d)| *d > 0).collect() };
        s.validate()?;
        Ok(s)
    }

    /// Whether the leg is empty.
    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Weight space of the reflexive sheaf along the edge.
    pub fn space_r(&self, c: Cell) -> Sub {
        self.flags[0].at(c[0]).meet(self.flags[1].at(c[1]))
    }

    /// Characteristic function of the reflexive sheaf along the edge.
    pub fn chi_r(&self, c: Cell) -> u8 {
        self.space_r(c).dim()
    }

    /// Deficit at a cell.
    pub fn delta(&self, c: Cell) -> u8 {
        self.cells.get(&c).copied().unwrap_or(0)
    }

    /// Characteristic function of the subsheaf along the edge.
    pub fn chi(&self, c: Cell) -> u8 {
        self.chi_r(c).saturating_sub(self.delta(c))
    }

    /// The corner of the region `D'` where the reflexive sheaf is all of `C^2`.
    pub fn d_corner(&self) -> Cell {
        [self.flags[0].u + self.flags[0].v as i32, self.flags[1].u + self.flags[1].v as i32]
    }

    /// Whether a cell lies in `D'`.
    pub fn in_d(&self, c: Cell) -> bool {
        let d = self.d_corner();
        c[0] >= d[0] && c[1] >= d[1]
    }

    /// Size `|λ| = Σ_i |λ_i| - |λ_out|`, which equals the total deficit.
    pub fn size(&self) -> u32 {
        self.cells.values().map(|d| *d as u32).sum()
    }

    /// One past the largest coordinate of a cell in each direction, or the
    /// flag jump when larger.
    pub fn extent(&self) -> Cell {
        let d = self.d_corner();
        let mut e = d;
        for c in self.cells.keys() {
            e[0] = e[0].max(c[0] + 1);
            e[1] = e[1].max(c[1] + 1);
        }
        e
    }

    /// Checks deficit bounds, monotonicity and consistency of forced lines.
    pub fn validate(&self) -> Result<()> {
        for (c, d) in self.cells.iter() {
            if *d > self.chi_r(*c) {
                return Err(Error::InvalidInput(format!("cell {c:?}: deficit {d} exceeds the reflexive rank")));
            }
            for j in 0..2 {
                let mut n = *c;
                n[j] += 1;
                if self.chi(n) < self.chi(*c) {
                    return Err(Error::InvalidInput(format!("cell {c:?}: characteristic function not monotone")));
                }
            }
        }
        // the only cells where χ can drop below its upper neighbours are deficit cells,
        // so monotonicity at their lower neighbours is also required
        for c in self.cells.keys() {
            for j in 0..2 {
                let mut n = *c;
                n[j] -= 1;
                if self.chi(n) > self.chi(*c) {
                    return Err(Error::InvalidInput(format!("cell {c:?}: characteristic function not monotone")));
                }
            }
        }
        if self.components().is_none() {
            return Err(Error::InvalidInput("two different lines forced on one component".into()));
        }
        Ok(())
    }

    /// Connected components of cells of `D'` where the subsheaf is a line,
    /// with the line forced by neighbouring face cells, if any.
    ///
    /// Returns `None` when some component is forced to two different lines.
    pub fn components(&self) -> Option<Vec<(Vec<Cell>, Option<Sub>)>> {
        let ones: BTreeSet<Cell> = self.cells.keys().copied().filter(|c| self.in_d(*c) && self.chi(*c) == 1).collect();
        let mut seen: HashSet<Cell> = HashSet::new();
        let mut out = Vec::new();
        for start in ones.iter() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = vec![*start];
            seen.insert(*start);
            let mut label: Option<Sub> = None;
            let mut i = 0;
            while i < comp.len() {
                let c = comp[i];
                i += 1;
                for j in 0..2 {
                    for s in [-1, 1] {
                        let mut n = c;
                        n[j] += s;
                        if ones.contains(&n) {
                            if seen.insert(n) {
                                comp.push(n);
                            }
                        } else if s < 0 && !self.in_d(n) && self.chi(n) == 1 {
                            let l = self.space_r(n);
                            match label {
                                None => label = Some(l),
                                Some(old) if old != l => return None,
                                _ => {}
                            }
                        }
                    }
                }
            }
            comp.sort();
            out.push((comp, label));
        }
        Some(out)
    }

    /// Reconstructs a representative triple `(λ_1, λ_2, λ_3)` of cell sets.
    ///
    /// `λ_1` and `λ_2` are the parts over the two face regions, `λ_3` lives in
    /// `D'`; each free component of ones is put into the lowest admissible pair.
    pub fn representative(&self) -> [BTreeSet<Cell>; 3] {
        let d = self.d_corner();
        let mut parts: [BTreeSet<Cell>; 3] = Default::default();
        for (c, dv) in self.cells.iter() {
            if !self.in_d(*c) {
                // face region: cells with c[0] < d[0] belong to λ_1 (based on the p_{i'} side)
                let idx = if c[0] < d[0] { 0 } else { 1 };
                parts[idx].insert(*c);
            } else if *dv == 2 {
                for p in parts.iter_mut() {
                    p.insert(*c);
                }
            }
        }
        let corners = [[self.flags[0].u, d[1]], [d[0], self.flags[1].u], d];
        if let Some(comps) = self.components() {
            for (comp, _) in comps {
                let mut chosen = 0;
                for (idx, part) in parts.iter_mut().enumerate() {
                    if chosen == 2 {
                        break;
                    }
                    let ok = comp.iter().all(|c| {
                        (0..2).all(|j| {
                            let mut n = *c;
                            n[j] -= 1;
                            n[j] < corners[idx][j] || part.contains(&n) || comp.contains(&n)
                        })
                    });
                    if ok {
                        part.extend(comp.iter().copied());
                        chosen += 1;
                    }
                }
            }
        }
        parts
    }

    /// Canonical class of a raw triple of 2D partitions based at the three corners.
    pub fn from_triple(flags: [Flag; 2], triple: &[BTreeSet<Cell>; 3]) -> Result<Self> {
        let probe = Self::empty(flags);
        let d = probe.d_corner();
        let corners = [[flags[0].u, d[1]], [d[0], flags[1].u], d];
        for (idx, part) in triple.iter().enumerate() {
            for c in part.iter() {
                if c[0] < corners[idx][0] || c[1] < corners[idx][1] {
                    return Err(Error::InvalidInput(format!("cell {c:?} below the corner of partition {}", idx + 1)));
                }
                for j in 0..2 {
                    let mut n = *c;
                    n[j] -= 1;
                    if n[j] >= corners[idx][j] && !part.contains(&n) {
                        return Err(Error::InvalidInput(format!("partition {} is not downward closed at {c:?}", idx + 1)));
                    }
                }
            }
        }
        let all: BTreeSet<Cell> = triple.iter().flat_map(|p| p.iter().copied()).collect();
        let mut cells = BTreeMap::new();
        for c in all {
            let count = triple.iter().filter(|p| p.contains(&c)).count() as u8;
            let out = probe.in_d(c);
            if out && count == 1 {
                return Err(Error::NotADoubleBox(format!("cell {c:?} of λ_out lies in exactly one partition")));
            }
            cells.insert(c, count - u8::from(out));
        }
        Self::new(flags, cells)
    }
}

/// All valid double square configurations over the given flags with `|λ| <= max_size`.
pub fn enumerate_squares(flags: [Flag; 2], max_size: u32) -> Vec<DoubleSquareConfig> {
    let root = DoubleSquareConfig::empty(flags);
    let mut level: BTreeSet<DoubleSquareConfig> = BTreeSet::new();
    level.insert(root.clone());
    let mut out = vec![root];
    let lo = [flags[0].u, flags[1].u];
    for _ in 0..max_size {
        let mut next = BTreeSet::new();
        for s in level.iter() {
            // candidate cells: corners of χ_R and neighbours of deficit cells
            let mut cand: BTreeSet<Cell> = BTreeSet::new();
            let d = s.d_corner();
            for c in [lo, [lo[0], d[1]], [d[0], lo[1]], d] {
                cand.insert(c);
            }
            for c in s.cells.keys() {
                cand.insert(*c);
                cand.insert([c[0] + 1, c[1]]);
                cand.insert([c[0], c[1] + 1]);
            }
            for c in cand {
                let x = s.chi(c);
                if x == 0 {
                    continue;
                }
                if (0..2).all(|j| {
                    let mut n = c;
                    n[j] -= 1;
                    s.chi(n) < x
                }) {
                    let mut t = s.clone();
                    *t.cells.entry(c).or_insert(0) += 1;
                    next.insert(t);
                }
            }
        }
        out.extend(next.iter().filter(|t| t.components().is_some()).cloned());
        level = next;
    }
    out
}
