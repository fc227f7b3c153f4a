//! JSONL report records shared by every experiment.
//!
//! One record per line, machine-readable, appendable.  Records go to
//! stdout; human commentary goes to stderr, so a report can be piped or
//! redirected without contamination.

use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use oddaut_core::FieldSpec;
use serde::{Deserialize, Serialize};

/// One line of a report.  Serialization order is declaration order;
/// absent optional fields are omitted rather than written as null.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub experiment: String,
    /// Field designation including the modulus, enough to reproduce the
    /// run exactly.
    pub field: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub map: Option<String>,
    /// Tame word in the line serialization, outermost letter first.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub word: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub parity: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub inverse_verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub fixed_points: Option<usize>,
    /// Cycle length -> count, fixed points included as length 1.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cycle_histogram: Option<BTreeMap<usize, usize>>,
    /// Decimal string; group orders overflow any machine integer long
    /// before the point ceiling does.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub group_order: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    pub elapsed_ms: u64,
    pub version: String,
    /// Present (and true) exactly when the record is an odd automorphism
    /// with a formally verified inverse.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<bool>,
}

impl ReportRecord {
    pub fn new(experiment: &str, field: &FieldSpec, n: usize) -> ReportRecord {
        ReportRecord {
            experiment: experiment.to_string(),
            field: field.designation_with_modulus(),
            n,
            map: None,
            word: None,
            parity: None,
            inverse_verified: None,
            fixed_points: None,
            cycle_histogram: None,
            group_order: None,
            seed: None,
            elapsed_ms: 0,
            version: env!("CARGO_PKG_VERSION").to_string(),
            witness: None,
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report records always serialize")
    }
}

/// Emits records to stdout and, when a path is given, appends them to a
/// file as well.
pub struct Reporter {
    file: Option<std::fs::File>,
}

impl Reporter {
    pub fn new(path: Option<&Path>) -> Result<Reporter> {
        let file = match path {
            None => None,
            Some(p) => Some(
                OpenOptions::new()
                    .create(true)
                    .append(true)
                    .open(p)
                    .with_context(|| format!("opening report file {}", p.display()))?,
            ),
        };
        Ok(Reporter { file })
    }

    pub fn emit(&mut self, record: &ReportRecord) -> Result<()> {
        let line = record.to_json_line();
        println!("{line}");
        if let Some(f) = &mut self.file {
            writeln!(f, "{line}").context("appending to report file")?;
        }
        Ok(())
    }
}
