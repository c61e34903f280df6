//! Report documents and their text and JSON renderings.

use rank2dt::algebra::QSeries;
use rank2dt::global::ComparisonReport;
use rank2dt::Error;
use serde::Serialize;
use std::collections::BTreeMap;

/// How a command ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    /// Success, or every comparison agreed.
    Ok,
    /// A comparison against a theorem or an identity failed.
    Mismatch,
    /// A comparison against a conjecture failed. Exits like a mismatch; the
    /// report carries the distinction.
    Finding,
    /// The input could not be used.
    InputError,
}

impl Outcome {
    /// Process exit status.
    pub fn code(self) -> u8 {
        match self {
            Outcome::Ok => 0,
            Outcome::Mismatch | Outcome::Finding => 1,
            Outcome::InputError => 2,
        }
    }
}

/// Exit outcome for a library error: input problems versus failed computations.
pub fn error_outcome(e: &Error) -> Outcome {
    match e {
        Error::InvalidInput(_) | Error::UnsupportedPreset(_) | Error::NotADoubleBox(_) | Error::GluingMismatch(_) | Error::NotTetrahedron(_) => {
            Outcome::InputError
        }
        _ => Outcome::Mismatch,
    }
}

/// One enumerated class.
#[derive(Clone, Debug, Serialize)]
pub struct ClassLine {
    /// Renormalized size.
    pub size: i64,
    /// Euler characteristic of the fixed component.
    pub omega: u64,
    /// Decrements `[k1, k2, k3, d]`.
    pub cells: Vec<[i32; 4]>,
}

/// The report of one command run. Contains no timings or paths, so equal
/// inputs give byte-identical reports.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    /// Command name.
    pub command: String,
    /// Outcome.
    pub outcome: Outcome,
    /// Preset name, when one was used.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    /// Truncation order or maximal size.
    pub order: i64,
    /// Named scalar results.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, String>,
    /// A series as `(exponent, coefficient)` pairs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<Vec<(i64, String)>>,
    /// Enumerated classes.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub classes: Vec<ClassLine>,
    /// Coefficientwise comparisons.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub comparisons: Vec<ComparisonReport>,
}

impl Report {
    /// An empty successful report.
    pub fn new(command: &str, preset: Option<&str>, order: i64) -> Self {
        Self {
            command: command.to_string(),
            outcome: Outcome::Ok,
            preset: preset.map(str::to_string),
            order,
            values: BTreeMap::new(),
            series: None,
            classes: Vec::new(),
            comparisons: Vec::new(),
        }
    }

    /// Sets the series field.
    pub fn with_series(mut self, s: &QSeries) -> Self {
        self.series = Some(s.iter().map(|(e, c)| (*e, c.to_string())).collect());
        self
    }

    /// Adds comparisons; a disagreement sets `on_failure` as the outcome.
    pub fn compare(&mut self, reports: Vec<ComparisonReport>, on_failure: Outcome) {
        if reports.iter().any(|r| !r.agrees()) {
            self.outcome = on_failure;
        }
        self.comparisons.extend(reports);
    }

    /// Tab separated rendering: series as `exponent<TAB>coefficient` lines.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (k, v) in self.values.iter() {
            s.push_str(&format!("{k}\t{v}\n"));
        }
        for c in self.classes.iter() {
            let cells: Vec<String> = c.cells.iter().map(|x| format!("{},{},{}:{}", x[0], x[1], x[2], x[3])).collect();
            s.push_str(&format!("{}\t{}\t{}\n", c.size, c.omega, cells.join(" ")));
        }
        if let Some(series) = &self.series {
            for (e, c) in series {
                s.push_str(&format!("{e}\t{c}\n"));
            }
        }
        for r in self.comparisons.iter() {
            s.push_str(&format!("# {}: {}\n", r.name, if r.agrees() { "agree" } else { "DIFFER" }));
            for c in r.coefficients.iter() {
                s.push_str(&format!("{}\t{}\t{}\t{}\n", c.exponent, c.lhs, c.rhs, if c.agree { "ok" } else { "differ" }));
            }
        }
        if !self.comparisons.is_empty() {
            s.push_str(&format!("status\t{}\n", self.status_word()));
        }
        s
    }

    /// Pretty JSON rendering with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    fn status_word(&self) -> &'static str {
        match self.outcome {
            Outcome::Ok => "ok",
            Outcome::Mismatch => "mismatch",
            Outcome::Finding => "finding",
            Outcome::InputError => "input-error",
        }
    }
}
