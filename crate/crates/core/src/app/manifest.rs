use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// How one output file was produced: the exact command line, a digest of the
/// resolved configuration, the seed and the crate version.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub args: Vec<String>,
    /// SHA-256 of the resolved configuration serialised as JSON.
    pub config_digest: String,
    pub seed: Option<u64>,
    pub version: String,
    pub started_unix: u64,
    pub finished_unix: u64,
}

fn now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

impl RunManifest {
    pub fn start<C: Serialize>(command: &str, args: Vec<String>, config: &C, seed: Option<u64>) -> Self {
        let json = serde_json::to_vec(config).unwrap_or_default();
        let digest = Sha256::digest(&json);
        Self {
            command: command.to_string(),
            args,
            config_digest: digest.iter().map(|b| format!("{b:02x}")).collect(),
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            started_unix: now(),
            finished_unix: 0,
        }
    }

    pub fn finish(mut self) -> Self {
        self.finished_unix = now();
        self
    }
}
