//! JSON documents for chart and global configurations.
//!
//! A chart document lists the hull flags, the legs by axis with their
//! cross-section deficits, and either the decrements relative to the bare leg
//! cylinders (`cells`, entries `[k1, k2, k3, d]`) or a raw triple of finite 3D
//! partitions (`partitions`). A global document names a threefold preset, the
//! hull faces, legs by edge endpoints and per-chart decrements.

use super::config::DoubleBoxConfig;
use super::glue::GlobalConfig;
use super::square::DoubleSquareConfig;
use crate::algebra::Exp3;
use crate::error::{Error, Result};
use crate::toric::{ChartToricData, GlobalToricData, ToricThreefold};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Schema tag of chart documents.
pub const CHART_SCHEMA: &str = "rank2dt/config@1";
/// Schema tag of global documents.
pub const GLOBAL_SCHEMA: &str = "rank2dt/global-config@1";

/// A leg: cross-section cells `[a, b, δ]` in the chart's increasing axis order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegDoc {
    /// Local axis of the leg.
    pub axis: usize,
    /// Deficit cells.
    pub cells: Vec<[i32; 3]>,
}

/// A chart configuration document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigDoc {
    /// Schema tag.
    pub schema: String,
    /// Optional label.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Hull data on the chart.
    pub chart: ChartToricData,
    /// Nonempty legs.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub legs: Vec<LegDoc>,
    /// Decrements `[k1, k2, k3, d]` relative to the bare leg cylinders.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cells: Vec<[i32; 4]>,
    /// Alternatively, three finite 3D partitions given by their boxes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partitions: Option<[Vec<Exp3>; 3]>,
}

/// Decrements of one chart of a global configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartCellsDoc {
    /// Chart index in the preset.
    pub chart: usize,
    /// Decrements `[k1, k2, k3, d]`.
    pub cells: Vec<[i32; 4]>,
}

/// A leg along the edge joining two charts, in the first chart's cross-section order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeLegDoc {
    /// The two charts joined by the edge.
    pub ends: [usize; 2],
    /// Deficit cells `[a, b, δ]`.
    pub cells: Vec<[i32; 3]>,
}

/// A global configuration document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalConfigDoc {
    /// Schema tag.
    pub schema: String,
    /// Optional label.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Threefold preset name.
    pub preset: String,
    /// Hull faces indexed by ray.
    pub hull: GlobalToricData,
    /// Legs along compact edges.
    #[serde(default)]
    pub edges: Vec<EdgeLegDoc>,
    /// Per-chart decrements.
    #[serde(default)]
    pub charts: Vec<ChartCellsDoc>,
}

/// A parsed document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Loaded {
    /// A configuration on one chart.
    Chart {
        /// Optional label from the document.
        name: Option<String>,
        /// The configuration.
        config: DoubleBoxConfig,
    },
    /// A configuration glued over a threefold.
    Global {
        /// Optional label from the document.
        name: Option<String>,
        /// The threefold.
        threefold: ToricThreefold,
        /// The configuration.
        config: GlobalConfig,
    },
}

fn dec_map(cells: &[[i32; 4]]) -> Result<BTreeMap<Exp3, u8>> {
    let mut out = BTreeMap::new();
    for c in cells {
        if !(0..=2).contains(&c[3]) {
            return Err(Error::InvalidInput(format!("decrement {} at {:?} is not in 0..=2", c[3], &c[..3])));
        }
        if out.insert([c[0], c[1], c[2]], c[3] as u8).is_some() {
            return Err(Error::InvalidInput(format!("point {:?} listed twice", &c[..3])));
        }
    }
    Ok(out)
}

fn square(flags: [crate::toric::Flag; 2], cells: &[[i32; 3]]) -> Result<DoubleSquareConfig> {
    let mut map = BTreeMap::new();
    for c in cells {
        if !(0..=2).contains(&c[2]) {
            return Err(Error::InvalidInput(format!("leg deficit {} is not in 0..=2", c[2])));
        }
        map.insert([c[0], c[1]], c[2] as u8);
    }
    DoubleSquareConfig::new(flags, map)
}

impl ConfigDoc {
    /// Builds and validates the configuration.
    pub fn to_config(&self) -> Result<DoubleBoxConfig> {
        if self.schema != CHART_SCHEMA {
            return Err(Error::InvalidInput(format!("unknown schema {:?}", self.schema)));
        }
        let chart = self.chart;
        let mut legs = [0, 1, 2].map(|i| DoubleSquareConfig::empty(chart.edge_flags(i)));
        for leg in self.legs.iter() {
            if leg.axis > 2 {
                return Err(Error::InvalidInput(format!("leg axis {} out of range", leg.axis)));
            }
            legs[leg.axis] = square(chart.edge_flags(leg.axis), &leg.cells)?;
        }
        if let Some(parts) = &self.partitions {
            if legs.iter().any(|l| !l.is_empty()) || !self.cells.is_empty() {
                return Err(Error::InvalidInput("partitions cannot be combined with legs or cells".into()));
            }
            let triple = parts.clone().map(|p| p.into_iter().collect::<BTreeSet<Exp3>>());
            return DoubleBoxConfig::canonicalize(chart, &triple);
        }
        DoubleBoxConfig::new(chart, legs, dec_map(&self.cells)?)
    }

    /// The document of a configuration in decrement form.
    pub fn from_config(c: &DoubleBoxConfig, name: Option<String>) -> Self {
        let legs = c
            .legs
            .iter()
            .enumerate()
            .filter(|(_, l)| !l.is_empty())
            .map(|(axis, l)| LegDoc { axis, cells: l.cells.iter().map(|(k, d)| [k[0], k[1], *d as i32]).collect() })
            .collect();
        let cells = c.dec.iter().map(|(k, d)| [k[0], k[1], k[2], *d as i32]).collect();
        Self { schema: CHART_SCHEMA.into(), name, chart: c.chart, legs, cells, partitions: None }
    }
}

impl GlobalConfigDoc {
    /// Builds and validates the glued configuration.
    pub fn to_config(&self) -> Result<(ToricThreefold, GlobalConfig)> {
        if self.schema != GLOBAL_SCHEMA {
            return Err(Error::InvalidInput(format!("unknown schema {:?}", self.schema)));
        }
        let x = ToricThreefold::preset(&self.preset)?;
        if self.hull.faces.len() != x.rays.len() {
            return Err(Error::InvalidInput(format!("hull has {} faces, preset has {} rays", self.hull.faces.len(), x.rays.len())));
        }
        let mut edges = BTreeMap::new();
        for leg in self.edges.iter() {
            let ei = x
                .edge_between(leg.ends[0], leg.ends[1])
                .ok_or_else(|| Error::InvalidInput(format!("charts {:?} do not share an edge", leg.ends)))?;
            let e = &x.edges[ei];
            let mut cells = leg.cells.clone();
            if e.ends[0] != leg.ends[0] {
                // given in the other end's order
                let swap = e.beta_axes[0] > e.beta_axes[1];
                if swap {
                    for c in cells.iter_mut() {
                        c.swap(0, 1);
                    }
                }
            }
            let flags = self.hull.chart(x.charts[e.ends[0]]).edge_flags(e.axis[0]);
            edges.insert(ei, square(flags, &cells)?);
        }
        let mut decs = BTreeMap::new();
        for c in self.charts.iter() {
            decs.insert(c.chart, dec_map(&c.cells)?);
        }
        let g = GlobalConfig::bare(&x, self.hull.clone(), edges)?.with_decrements(decs)?;
        Ok((x, g))
    }
}

/// Parses a chart or global document, dispatching on its schema tag.
pub fn parse(text: &str) -> Result<Loaded> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
    let schema = v.get("schema").and_then(|s| s.as_str()).unwrap_or(CHART_SCHEMA).to_string();
    let mut v = v;
    if v.get("schema").is_none() {
        v["schema"] = serde_json::Value::String(CHART_SCHEMA.into());
    }
    match schema.as_str() {
        CHART_SCHEMA => {
            let doc: ConfigDoc = serde_json::from_value(v).map_err(|e| Error::InvalidInput(e.to_string()))?;
            Ok(Loaded::Chart { name: doc.name.clone(), config: doc.to_config()? })
        }
        GLOBAL_SCHEMA => {
            let doc: GlobalConfigDoc = serde_json::from_value(v).map_err(|e| Error::InvalidInput(e.to_string()))?;
            let (threefold, config) = doc.to_config()?;
            Ok(Loaded::Global { name: doc.name.clone(), threefold, config })
        }
        other => Err(Error::InvalidInput(format!("unknown schema {other:?}"))),
    }
}
