use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::{Deserialize, Serialize};

/// Record of one run: enough to repeat it with `hyperwalk replay`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    /// Resolved flag values keyed by long flag name.
    pub parameters: BTreeMap<String, String>,
    pub tool_version: String,
    pub seed: u64,
    pub timestamp: String,
    /// Output depends on the seed only through Monte Carlo sampling.
    pub statistical: bool,
}

impl RunManifest {
    pub fn new(command: &str, parameters: BTreeMap<String, String>, seed: u64, statistical: bool) -> Self {
        RunManifest {
            command: command.into(),
            parameters,
            tool_version: env!("CARGO_PKG_VERSION").into(),
            seed,
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            statistical,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }

    pub fn write(&self, path: &Path) -> anyhow::Result<()> {
        std::fs::write(path, self.to_json() + "\n").with_context(|| format!("writing manifest {}", path.display()))
    }

    pub fn read(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading manifest {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing manifest {}", path.display()))
    }

    /// Command-line arguments that repeat this run.
    pub fn to_args(&self) -> Vec<String> {
        let mut args = vec![self.command.clone()];
        for (key, value) in &self.parameters {
            args.push(format!("--{key}"));
            args.push(value.clone());
        }
        args
    }
}

/// `out.csv` → `out.csv.manifest.json`.
pub fn sidecar_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_args() {
        let mut p = BTreeMap::new();
        p.insert("family".to_string(), "reflection".to_string());
        p.insert("n".to_string(), "4".to_string());
        let m = RunManifest::new("check", p, 0, false);
        let back: RunManifest = serde_json::from_str(&m.to_json()).unwrap();
        assert_eq!(back, m);
        assert_eq!(m.to_args(), ["check", "--family", "reflection", "--n", "4"]);
        assert_eq!(sidecar_path(Path::new("x/out.csv")), PathBuf::from("x/out.csv.manifest.json"));
    }
}
