//! Output files and the run manifest that hashes them.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::CliResult;

/// Collects output files written during one command.
pub struct Outputs {
    dir: PathBuf,
    files: Vec<(String, String)>,
}

impl Outputs {
    /// Outputs rooted at `dir`, which is created if missing.
    pub fn in_dir(dir: &Path) -> CliResult<Self> {
        fs::create_dir_all(dir)?;
        Ok(Self { dir: dir.to_path_buf(), files: Vec::new() })
    }

    /// Outputs rooted at the parent of a single output path.
    pub fn beside(path: &Path) -> Self {
        let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Self { dir, files: Vec::new() }
    }

    /// Writes `bytes` to `name` under the output directory and records its hash.
    pub fn put(&mut self, name: &str, bytes: &[u8]) -> CliResult<()> {
        fs::write(self.dir.join(name), bytes)?;
        self.files.push((name.to_string(), sha256_hex(bytes)));
        Ok(())
    }

    /// Writes `name` as the manifest of every file put so far.
    pub fn finish(self, name: &str, command: &str, config: Value, seeds: &[u64]) -> CliResult<()> {
        let outputs: Vec<Value> =
            self.files.iter().map(|(file, hash)| json!({ "file": file, "sha256": hash })).collect();
        let manifest = json!({
            "command": command,
            "version": env!("CARGO_PKG_VERSION"),
            "config": config,
            "seeds": seeds,
            "outputs": outputs,
        });
        let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serialises");
        text.push('\n');
        fs::write(self.dir.join(name), text)?;
        Ok(())
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Pretty JSON with a trailing newline.
pub fn json_bytes(value: &Value) -> Vec<u8> {
    let mut text = serde_json::to_string_pretty(value).expect("summary serialises");
    text.push('\n');
    text.into_bytes()
}
