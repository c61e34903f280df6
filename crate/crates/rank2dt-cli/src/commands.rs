//! Command implementations on top of the library.

use crate::report::{ClassLine, Outcome, Report};
use crate::{Command, RunConfig};
use rank2dt::algebra::{boxed_partition_product, macmahon_squared, QSeries};
use rank2dt::boxes::{comb_series, enumerate_boxes, parse, DoubleSquareConfig, Loaded};
use rank2dt::global::{
    compare_series, conifold_conjecture_check, conifold_hull, euler_series_global, main_conjecture_c3, min_c2_formula,
    random_global_configs, theorem_b_series, vertex_conjecture_check, CoefficientVerdict, ComparisonReport,
};
use rank2dt::toric::ChartToricData;
use rank2dt::vertex::{dt_global_weight, dt_vertex_weight};
use rank2dt::{Error, Result};

/// Charts checked by `verify-theorem-a` when no preset is given.
const THEOREM_A_CHARTS: [[u32; 3]; 4] = [[1, 1, 1], [1, 1, 2], [1, 2, 2], [0, 1, 1]];
/// Charts checked by the conjecture commands when no preset is given.
const CONJECTURE_CHARTS: [[u32; 3]; 2] = [[1, 1, 1], [1, 1, 2]];

/// Runs one command.
pub(crate) fn dispatch(cmd: &Command, run: &RunConfig) -> Result<Report> {
    match cmd {
        Command::Enumerate => enumerate(run),
        Command::Zseries => zseries(run),
        Command::Wseries => wseries(run),
        Command::VertexWeight => vertex_weight(run),
        Command::VerifyTheoremA => verify_theorem_a(run),
        Command::VerifyTheoremB { c2 } => verify_theorem_b(run, *c2),
        Command::VerifyConjectureC => verify_conjecture_c(run),
        Command::VerifyMainConjecture => verify_main_conjecture(run),
        Command::ChiCheck { count } => chi_check(run, *count),
    }
}

/// Parses `c3-vABC` into chart data with `v = (A, B, C)` and distinct points.
pub(crate) fn chart_preset(name: &str) -> Result<ChartToricData> {
    let digits = name.strip_prefix("c3-v").ok_or_else(|| Error::UnsupportedPreset(name.to_string()))?;
    let v: Vec<u32> = digits.chars().map(|c| c.to_digit(10)).collect::<Option<_>>().ok_or_else(|| Error::UnsupportedPreset(name.to_string()))?;
    match v.as_slice() {
        [a, b, c] => Ok(ChartToricData::standard([*a, *b, *c])),
        _ => Err(Error::UnsupportedPreset(name.to_string())),
    }
}

fn load(run: &RunConfig) -> Result<Option<Loaded>> {
    let Some(path) = &run.config else { return Ok(None) };
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    parse(&text).map(Some)
}

fn no_legs(chart: ChartToricData) -> [DoubleSquareConfig; 3] {
    [0, 1, 2].map(|i| DoubleSquareConfig::empty(chart.edge_flags(i)))
}

/// The chart and leg asymptotics named by `--preset` or a chart document.
fn chart_input(run: &RunConfig) -> Result<(ChartToricData, [DoubleSquareConfig; 3])> {
    match (load(run)?, &run.preset) {
        (Some(Loaded::Chart { config, .. }), _) => Ok((config.chart, config.legs)),
        (Some(Loaded::Global { .. }), _) => Err(Error::InvalidInput("expected a chart document".into())),
        (None, Some(p)) => {
            let chart = chart_preset(p)?;
            Ok((chart, no_legs(chart)))
        }
        (None, None) => Err(Error::InvalidInput("give --preset or --config".into())),
    }
}

fn charts_or_default(run: &RunConfig, default: &[[u32; 3]]) -> Result<Vec<ChartToricData>> {
    match &run.preset {
        Some(p) => Ok(vec![chart_preset(p)?]),
        None => Ok(default.iter().map(|v| ChartToricData::standard(*v)).collect()),
    }
}

fn report(name: &str, run: &RunConfig) -> Report {
    Report::new(name, run.preset.as_deref(), run.order)
}

fn enumerate(run: &RunConfig) -> Result<Report> {
    let (chart, legs) = chart_input(run)?;
    let mut r = report("enumerate", run);
    r.classes = enumerate_boxes(chart, legs, run.order)?
        .into_iter()
        .map(|e| ClassLine { size: e.size, omega: e.omega, cells: e.config.dec.iter().map(|(k, d)| [k[0], k[1], k[2], *d as i32]).collect() })
        .collect();
    r.values.insert("classes".into(), r.classes.len().to_string());
    Ok(r)
}

fn zseries(run: &RunConfig) -> Result<Report> {
    let (chart, legs) = chart_input(run)?;
    Ok(report("zseries", run).with_series(&comb_series(chart, legs, run.order)?))
}

fn wseries(run: &RunConfig) -> Result<Report> {
    let (chart, legs) = chart_input(run)?;
    if legs.iter().any(|l| !l.is_empty()) {
        return Err(Error::InvalidInput("the vertex measure series is defined for charts without legs".into()));
    }
    Ok(report("wseries", run).with_series(&rank2dt::vertex::w_series(chart, run.order, run.seed)?))
}

fn vertex_weight(run: &RunConfig) -> Result<Report> {
    let loaded = load(run)?.ok_or_else(|| Error::InvalidInput("vertex-weight needs --config".into()))?;
    let mut r = report("vertex-weight", run);
    match loaded {
        Loaded::Chart { config, .. } => {
            r.values.insert("weight".into(), dt_vertex_weight(&config, run.seed)?.to_string());
            r.values.insert("omega".into(), config.omega().to_string());
            r.values.insert("size".into(), config.size().to_string());
        }
        Loaded::Global { threefold, config, .. } => {
            r.values.insert("weight".into(), dt_global_weight(&threefold, &config, run.seed)?.to_string());
            r.values.insert("omega".into(), config.omega(&threefold)?.to_string());
            r.values.insert("chi".into(), config.chi_formula(&threefold)?.to_string());
        }
    }
    Ok(r)
}

fn verify_theorem_a(run: &RunConfig) -> Result<Report> {
    let mut r = report("verify-theorem-a", run);
    let m2 = macmahon_squared(run.order);
    for chart in charts_or_default(run, &THEOREM_A_CHARTS)? {
        let v = chart.v();
        let lhs = comb_series(chart, no_legs(chart), run.order)?;
        let rhs = m2.mul(&boxed_partition_product(v, run.order)).truncate(run.order);
        r.compare(vec![compare_series(&format!("Z = M^2 x boxed partitions for v = {v:?}"), &lhs, &rhs, 0, run.order)], Outcome::Mismatch);
    }
    Ok(r)
}

/// A comparison of two series in `y = q^{-1}` over `y^lo..=y^hi`, reported in
/// powers of `q` in increasing order.
fn compare_in_q(name: &str, lhs: &QSeries, rhs: &QSeries, lo: i64, hi: i64) -> ComparisonReport {
    let y = compare_series(name, lhs, rhs, lo, hi);
    let coefficients = y.coefficients.into_iter().rev().map(|c| CoefficientVerdict { exponent: -c.exponent, ..c }).collect();
    ComparisonReport { name: y.name, coefficients }
}

fn verify_theorem_b(run: &RunConfig, c2: i64) -> Result<Report> {
    let top = match c2 {
        1 => 1,
        2 => 8,
        _ => return Err(Error::InvalidInput(format!("c2 must be 1 or 2, got {c2}"))),
    };
    let mut r = report("verify-theorem-b", run);
    r.values.insert("c2".into(), c2.to_string());
    let direct = euler_series_global("P3", c2, run.order)?;
    let closed = theorem_b_series(c2, run.order)?;
    let mut reports = vec![compare_in_q(&format!("P3, c1 = -1, c2 = {c2}: glued sum = closed formula"), &direct, &closed, -top, run.order)];
    if c2 == 1 {
        let product = min_c2_formula("P3", c2, run.order)?;
        reports.push(compare_in_q("P3, c1 = -1, c2 = 1: glued sum = minimal c2 product formula", &direct, &product, -top, run.order));
    }
    r.compare(reports, Outcome::Mismatch);
    Ok(r)
}

fn verify_conjecture_c(run: &RunConfig) -> Result<Report> {
    let mut r = report("verify-conjecture-c", run);
    for chart in charts_or_default(run, &CONJECTURE_CHARTS)? {
        r.compare(vec![vertex_conjecture_check(chart, run.order, run.seed)?], Outcome::Finding);
    }
    Ok(r)
}

fn verify_main_conjecture(run: &RunConfig) -> Result<Report> {
    let mut r = report("verify-main-conjecture", run);
    for chart in charts_or_default(run, &CONJECTURE_CHARTS)? {
        r.compare(vec![main_conjecture_c3(chart, run.order, run.seed)?], Outcome::Finding);
    }
    for v in [[1, 1, 1], [1, 1, 0]] {
        let hull = conifold_hull(v)?;
        r.compare(conifold_conjecture_check(&hull, 1, run.order, run.seed)?, Outcome::Finding);
    }
    Ok(r)
}

fn chi_check(run: &RunConfig, count: usize) -> Result<Report> {
    let mut r = report("chi-check", run);
    let configs: Vec<(rank2dt::toric::ToricThreefold, rank2dt::boxes::GlobalConfig)> = match load(run)? {
        Some(Loaded::Global { threefold, config, .. }) => vec![(threefold, config)],
        Some(Loaded::Chart { .. }) => return Err(Error::InvalidInput("chi-check needs a global document".into())),
        None => random_global_configs(count, run.seed, run.order)?.into_iter().map(|c| (c.threefold, c.config)).collect(),
    };
    let mut coefficients = Vec::with_capacity(configs.len());
    for (i, (x, g)) in configs.iter().enumerate() {
        let (f, c) = (g.chi_formula(x)?, g.chi_cech(x)?);
        coefficients.push(CoefficientVerdict { exponent: i as i64, lhs: f.to_string(), rhs: c.to_string(), agree: f == c });
    }
    r.values.insert("checked".into(), configs.len().to_string());
    r.values.insert("disagreements".into(), coefficients.iter().filter(|c| !c.agree).count().to_string());
    let report = ComparisonReport { name: "chi by formula = chi by Cech count, per configuration".into(), coefficients };
    r.compare(vec![report], Outcome::Mismatch);
    Ok(r)
}
