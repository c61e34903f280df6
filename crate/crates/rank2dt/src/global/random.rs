//! Seeded random glued configurations for property checks.

use super::conjecture::conifold_hull;
use super::hulls::enumerate_hulls;
use crate::boxes::{enumerate_boxes, enumerate_squares, DoubleSquareConfig, Enumerated, GlobalConfig};
use crate::error::Result;
use crate::toric::{ChartToricData, GlobalToricData, ToricThreefold};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, HashMap};

/// A random glued configuration and the threefold it lives on.
#[derive(Clone, Debug)]
pub struct RandomConfig {
    /// The threefold.
    pub threefold: ToricThreefold,
    /// The configuration.
    pub config: GlobalConfig,
}

type ChartKey = (ChartToricData, [DoubleSquareConfig; 3]);

/// Draws `count` glued configurations, alternating between projective space
/// (hulls of `c_2 <= 2`) and the resolved conifold (`v = (1, 1, 1, 0)` and
/// `(1, 1, 0, 0)`). About half carry one leg of size 1 or 2 on a random edge;
/// every chart gets a uniformly chosen class with `|π| <= max_size`.
pub fn random_global_configs(count: usize, seed: u64, max_size: i64) -> Result<Vec<RandomConfig>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p3 = ToricThreefold::p3();
    let conifold = ToricThreefold::conifold();
    let p3_hulls: Vec<GlobalToricData> = enumerate_hulls("P3", -1, 2)?.into_iter().map(|h| h.data).collect();
    let conifold_hulls = [conifold_hull([1, 1, 1])?, conifold_hull([1, 1, 0])?];
    let mut cache: HashMap<ChartKey, Vec<Enumerated>> = HashMap::new();
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let (x, hull) = if i % 2 == 0 {
            (&p3, p3_hulls.choose(&mut rng).expect("hulls").clone())
        } else {
            (&conifold, conifold_hulls.choose(&mut rng).expect("hulls").clone())
        };
        let mut legs = BTreeMap::new();
        if rng.gen_bool(0.5) {
            let edges: Vec<usize> = x.edges_in_y().map(|(ei, _)| ei).collect();
            let ei = *edges.choose(&mut rng).expect("an edge in Y");
            let e = &x.edges[ei];
            let flags = hull.chart(x.charts[e.ends[0]]).edge_flags(e.axis[0]);
            let squares: Vec<DoubleSquareConfig> = enumerate_squares(flags, 2).into_iter().filter(|s| !s.is_empty()).collect();
            if let Some(lam) = squares.choose(&mut rng) {
                legs.insert(ei, lam.clone());
            }
        }
        let mut g = GlobalConfig::bare(x, hull, legs)?;
        for alpha in 0..g.charts.len() {
            let Some(c) = g.charts[alpha].clone() else { continue };
            let key = (c.chart, c.legs.clone());
            if !cache.contains_key(&key) {
                cache.insert(key.clone(), enumerate_boxes(c.chart, c.legs.clone(), max_size)?);
            }
            let list = &cache[&key];
            if !list.is_empty() {
                let pick = rng.gen_range(0..list.len());
                g.set_chart(alpha, list[pick].config.clone())?;
            }
        }
        out.push(RandomConfig { threefold: x.clone(), config: g });
    }
    Ok(out)
}
