//! JSON experiment configuration.
//!
//! A config file supplies defaults for the command-line flags; explicit
//! flags always win.  Every field is optional so partial configs are
//! fine.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

/// Field designation inside a config file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldConfig {
    pub p: u32,
    pub m: u32,
    /// Modulus coefficients `a0..am`, constant term first; the built-in
    /// default for the field is used when omitted.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub modulus: Option<Vec<u32>>,
}

/// Which family a search samples from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchFamily {
    /// Random tame words.
    Tame,
    /// Nagata's map conjugated by short random tame words.
    ConjugatedNagata,
    /// Map/inverse pairs read from a candidate file.
    Candidates,
}

impl FromStr for SearchFamily {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<SearchFamily> {
        match s {
            "tame" => Ok(SearchFamily::Tame),
            "conjugated-nagata" => Ok(SearchFamily::ConjugatedNagata),
            "candidates" => Ok(SearchFamily::Candidates),
            other => bail!(
                "unknown search family `{other}` \
                 (expected tame, conjugated-nagata or candidates)"
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Must match the subcommand when present.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub experiment: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub field: Option<FieldConfig>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub word_length: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub degree_bound: Option<u32>,
    /// Report file to append to, same as `--out`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub output: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub family: Option<SearchFamily>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub candidates: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<ExperimentConfig> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}
