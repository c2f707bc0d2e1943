//! Structured pass/fail reports and their CSV/JSON serialization.
//!
//! Reports never embed wall-clock data in the serialized form: a rerun with
//! the same seed and config must produce byte-identical artifacts.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;

/// One numeric comparison inside a bound audit.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub observed: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Outcome of an inequality audit: every check with its margin.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundReport {
    pub title: String,
    pub checks: Vec<BoundCheck>,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl BoundReport {
    pub fn new(title: impl Into<String>) -> Self {
        BoundReport { title: title.into(), checks: Vec::new(), pass: true, notes: Vec::new() }
    }

    /// Record `observed ≤ bound`.
    pub fn check_le(&mut self, name: impl Into<String>, observed: f64, bound: f64) {
        let pass = observed <= bound;
        self.pass &= pass;
        self.checks.push(BoundCheck { name: name.into(), observed, bound, pass });
    }

    /// Record `observed ≥ bound`.
    pub fn check_ge(&mut self, name: impl Into<String>, observed: f64, bound: f64) {
        let pass = observed >= bound;
        self.pass &= pass;
        self.checks.push(BoundCheck { name: name.into(), observed, bound, pass });
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

/// Pass/fail verdict against a corridor `[lo, hi]` (either side optional).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Criterion {
    pub name: String,
    pub observed: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lo: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hi: Option<f64>,
    pub pass: bool,
}

impl Criterion {
    pub fn corridor(name: impl Into<String>, observed: f64, lo: f64, hi: f64) -> Self {
        let pass = observed >= lo && observed <= hi;
        Criterion { name: name.into(), observed, lo: Some(lo), hi: Some(hi), pass }
    }

    pub fn at_most(name: impl Into<String>, observed: f64, hi: f64) -> Self {
        let pass = observed <= hi;
        Criterion { name: name.into(), observed, lo: None, hi: Some(hi), pass }
    }

    pub fn at_least(name: impl Into<String>, observed: f64, lo: f64) -> Self {
        let pass = observed >= lo;
        Criterion { name: name.into(), observed, lo: Some(lo), hi: None, pass }
    }

    pub fn summary_line(&self) -> String {
        let corridor = match (self.lo, self.hi) {
            (Some(l), Some(h)) => format!("[{l}, {h}]"),
            (Some(l), None) => format!("[{l}, inf)"),
            (None, Some(h)) => format!("(-inf, {h}]"),
            (None, None) => "(unbounded)".into(),
        };
        format!(
            "{}: {} — observed {:.6e} vs {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.observed,
            corridor
        )
    }
}

/// Per-scale (or per-node) numeric rows, written as CSV.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Table {
    pub key: String,
    pub columns: Vec<String>,
    pub rows: Vec<TableRow>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableRow {
    pub key: f64,
    pub values: Vec<f64>,
}

impl Table {
    pub fn new(key: impl Into<String>, columns: &[&str]) -> Self {
        Table {
            key: key.into(),
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, key: f64, values: Vec<f64>) {
        debug_assert_eq!(values.len(), self.columns.len());
        self.rows.push(TableRow { key, values });
    }

    pub fn write_csv<W: Write>(&self, w: &mut W) -> Result<()> {
        write!(w, "{}", self.key)?;
        for c in &self.columns {
            write!(w, ",{c}")?;
        }
        writeln!(w)?;
        for row in &self.rows {
            write!(w, "{}", fmt_f64(row.key))?;
            for v in &row.values {
                write!(w, ",{}", fmt_f64(*v))?;
            }
            writeln!(w)?;
        }
        Ok(())
    }
}

/// Deterministic float formatting for CSV artifacts (shortest round-trip).
fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

/// Full experiment outcome: reproducible from `(seed, config)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment_id: String,
    pub spec_summary: String,
    pub version: String,
    pub seed: u64,
    pub n_rep: u64,
    pub config_hash: String,
    pub table: Table,
    pub criteria: Vec<Criterion>,
    pub pass: bool,
    /// Wall-clock seconds; excluded from artifacts so reruns are byte-identical.
    #[serde(skip)]
    pub runtime: Duration,
}

impl ExperimentReport {
    pub fn new(id: impl Into<String>, spec_summary: impl Into<String>, seed: u64, n_rep: u64) -> Self {
        ExperimentReport {
            experiment_id: id.into(),
            spec_summary: spec_summary.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            seed,
            n_rep,
            config_hash: String::new(),
            table: Table::default(),
            criteria: Vec::new(),
            pass: true,
            runtime: Duration::ZERO,
        }
    }

    pub fn push_criterion(&mut self, c: Criterion) {
        self.pass &= c.pass;
        self.criteria.push(c);
    }

    pub fn finish(&mut self, config_hash: String, runtime: Duration) {
        self.config_hash = config_hash;
        self.runtime = runtime;
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Write `<dir>/<name>.json` and/or `<dir>/<name>.csv`.
    pub fn write(&self, dir: &Path, name: &str, json: bool, csv: bool) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        if json {
            std::fs::write(dir.join(format!("{name}.json")), self.to_json()?)?;
        }
        if csv {
            let mut buf = Vec::new();
            self.table.write_csv(&mut buf)?;
            std::fs::write(dir.join(format!("{name}.csv")), buf)?;
        }
        Ok(())
    }

    pub fn print_verdicts(&self) {
        for c in &self.criteria {
            println!("{}", c.summary_line());
        }
    }
}

/// SHA-256 of the canonical JSON encoding of a config value.
pub fn config_hash<T: Serialize>(config: &T) -> String {
    // BTreeMap round-trip sorts object keys so the hash is key-order-free
    let value: serde_json::Value = serde_json::to_value(config).unwrap_or(serde_json::Value::Null);
    let canon = canonicalize(&value);
    let mut h = Sha256::new();
    h.update(canon.to_string().as_bytes());
    hex(&h.finalize())
}

fn canonicalize(v: &serde_json::Value) -> serde_json::Value {
    match v {
        serde_json::Value::Object(m) => {
            let sorted: BTreeMap<_, _> = m.iter().map(|(k, v)| (k.clone(), canonicalize(v))).collect();
            serde_json::Value::Object(sorted.into_iter().collect())
        }
        serde_json::Value::Array(a) => serde_json::Value::Array(a.iter().map(canonicalize).collect()),
        other => other.clone(),
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
