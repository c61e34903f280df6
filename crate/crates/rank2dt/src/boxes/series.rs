//! Chart generating functions `Σ ω q^{|π|}`.

use super::config::DoubleBoxConfig;
use super::enumerate::{enumerate_from, Enumerated};
use super::square::DoubleSquareConfig;
use crate::algebra::QSeries;
use crate::error::Result;
use crate::toric::ChartToricData;

/// Sums `ω q^{|π|}` over enumerated classes, truncated at `order`.
pub fn series_of(classes: &[Enumerated], order: i64) -> QSeries {
    QSeries::from_ints(classes.iter().map(|c| (c.size, c.omega as i64)), order)
}

/// The combinatorial series of one chart with given leg asymptotics through `q^order`.
pub fn comb_series(chart: ChartToricData, legs: [DoubleSquareConfig; 3], order: i64) -> Result<QSeries> {
    let bare = DoubleBoxConfig::bare(chart, legs)?;
    let classes = enumerate_from(bare, order, true)?;
    Ok(series_of(&classes, order))
}
