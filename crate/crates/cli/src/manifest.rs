use std::fs;
use std::path::Path;
use std::time::Duration;

use anyhow::Context;
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Provenance of one `enumerate` run. `output_sha256` covers the emitted
/// records only, so it does not depend on the thread count.
#[derive(Serialize, Debug)]
pub struct RunManifest {
    pub command: Vec<String>,
    pub format_version: u32,
    pub catalog_version: u32,
    pub budget_nodes: Option<u64>,
    pub budget_secs: Option<f64>,
    pub threads: usize,
    pub exhaustive: bool,
    pub counts: serde_json::Value,
    pub wall_time_secs: f64,
    pub output_sha256: String,
}

impl RunManifest {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        command: Vec<String>,
        budget_nodes: Option<u64>,
        budget_secs: Option<f64>,
        threads: usize,
        exhaustive: bool,
        counts: serde_json::Value,
        wall: Duration,
        output: &str,
    ) -> Self {
        RunManifest {
            command,
            format_version: ybe::records::FORMAT_VERSION,
            catalog_version: ybe::catalog::CATALOG_VERSION,
            budget_nodes,
            budget_secs,
            threads,
            exhaustive,
            counts,
            wall_time_secs: wall.as_secs_f64(),
            output_sha256: hex::encode(Sha256::digest(output.as_bytes())),
        }
    }

    pub fn write(&self, path: &Path) -> anyhow::Result<()> {
        let json = serde_json::to_string_pretty(self)?;
        fs::write(path, json + "\n").with_context(|| format!("writing {}", path.display()))
    }
}
