//! Settings file for `--config`: a flat TOML table whose keys are the long flag names
//! (with `_` or `-`). Command-line flags take precedence over the file.

use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Deserialize;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub family: Option<String>,
    pub n: Option<u32>,
    pub m: Option<u32>,
    pub mu: Option<String>,
    pub word: Option<String>,
    pub steps: Option<usize>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    #[serde(alias = "stop_radius")]
    pub stop_radius: Option<f64>,
    pub rmax: Option<f64>,
    pub step: Option<f64>,
    pub bins: Option<usize>,
    pub volume: Option<f64>,
    #[serde(alias = "k_max")]
    pub k_max: Option<usize>,
    #[serde(alias = "n_min")]
    pub n_min: Option<u32>,
    #[serde(alias = "n_max")]
    pub n_max: Option<u32>,
    #[serde(alias = "m_min")]
    pub m_min: Option<u32>,
    #[serde(alias = "m_max")]
    pub m_max: Option<u32>,
    pub parity: Option<String>,
    pub cap: Option<u32>,
    #[serde(alias = "out_csv")]
    pub out_csv: Option<PathBuf>,
    #[serde(alias = "out_svg")]
    pub out_svg: Option<PathBuf>,
    pub format: Option<String>,
    pub threads: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}
