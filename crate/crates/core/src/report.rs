//! Verification reports: a pass/fail verdict with the measured values that
//! back it, serialisable to JSON and to CSV.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

/// Significant digits kept for every float that leaves the library.
pub const REPORT_DIGITS: usize = 12;

pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 || digits == 0 {
        return x;
    }
    format!("{:.*e}", digits - 1, x).parse().unwrap_or(x)
}

pub fn round12(x: f64) -> f64 {
    round_sig(x, REPORT_DIGITS)
}

/// Text form of `round12(x)`, in exponent notation for very small or very
/// large magnitudes.
pub fn format_float(x: f64) -> String {
    let r = round12(x);
    if r != 0.0 && r.is_finite() && !(1e-4..1e15).contains(&r.abs()) {
        format!("{r:e}")
    } else {
        r.to_string()
    }
}

pub(crate) fn serialize_round12<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round12(*x))
}

/// One measured case: the graph, what was checked on it, and the numbers.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub n: usize,
    pub what: String,
    pub graph: String,
    pub ok: bool,
    pub values: BTreeMap<String, f64>,
}

/// Separation between two values whose strict order is being asserted.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Gap {
    pub n: usize,
    pub between: String,
    pub gap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub passed: bool,
    pub min_gap: Option<f64>,
    pub gaps: Vec<Gap>,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(check: &str) -> Self {
        VerificationReport {
            check: check.to_string(),
            params: BTreeMap::new(),
            passed: true,
            min_gap: None,
            gaps: Vec::new(),
            witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    /// Adds a witness; a failing one marks the whole report failed.
    pub fn record(&mut self, ok: bool, n: usize, what: &str, graph: &str, values: &[(&str, f64)]) {
        self.passed &= ok;
        self.witnesses.push(Witness {
            n,
            what: what.to_string(),
            graph: graph.to_string(),
            ok,
            values: values
                .iter()
                .map(|(k, v)| (k.to_string(), round12(*v)))
                .collect(),
        });
    }

    pub fn gap(&mut self, n: usize, between: &str, gap: f64) {
        let gap = round12(gap);
        self.min_gap = Some(self.min_gap.map_or(gap, |g| g.min(gap)));
        self.gaps.push(Gap {
            n,
            between: between.to_string(),
            gap,
        });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn failures(&self) -> impl Iterator<Item = &Witness> {
        self.witnesses.iter().filter(|w| !w.ok)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report fields are plain data")
    }

    pub const CSV_HEADER: [&'static str; 7] = ["check", "passed", "n", "what", "graph", "ok", "values"];

    /// One row per witness; `values` is `key=value` pairs joined by `;`.
    pub fn csv_rows(&self) -> Vec<[String; 7]> {
        self.witnesses
            .iter()
            .map(|w| {
                let values = w
                    .values
                    .iter()
                    .map(|(k, v)| format!("{k}={}", format_float(*v)))
                    .collect::<Vec<_>>()
                    .join(";");
                [
                    self.check.clone(),
                    self.passed.to_string(),
                    w.n.to_string(),
                    w.what.clone(),
                    w.graph.clone(),
                    w.ok.to_string(),
                    values,
                ]
            })
            .collect()
    }
}
