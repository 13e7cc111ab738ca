use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

use diffscheme::engine::EngineStats;

/// Writes `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Serialize)]
pub struct InputRecord {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub tool_version: String,
    pub inputs: Vec<InputRecord>,
    pub flags: BTreeMap<String, String>,
    pub engine_stats: Option<EngineStats>,
    pub outputs: Vec<String>,
    /// Hash over every input hash, in order.
    pub input_hash: String,
    pub timestamp: u64,
}

impl RunManifest {
    pub fn new(subcommand: &str) -> Self {
        RunManifest {
            subcommand: subcommand.into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            inputs: Vec::new(),
            flags: BTreeMap::new(),
            engine_stats: None,
            outputs: Vec::new(),
            input_hash: String::new(),
            timestamp: 0,
        }
    }

    /// Records an input by name and content. Canned problems use their canonical source text.
    pub fn input(&mut self, path: impl Into<String>, content: &[u8]) -> &mut Self {
        self.inputs.push(InputRecord {
            path: path.into(),
            sha256: sha256_hex(content),
        });
        self
    }

    pub fn flag(&mut self, name: &str, value: impl ToString) -> &mut Self {
        self.flags.insert(name.into(), value.to_string());
        self
    }

    /// Writes every output atomically, then the manifest itself next to `manifest_path`.
    pub fn write(mut self, files: &[(PathBuf, Vec<u8>)], manifest_path: &Path) -> Result<()> {
        for (path, bytes) in files {
            write_atomic(path, bytes)?;
            self.outputs.push(path.display().to_string());
        }
        let joined: String = self.inputs.iter().map(|i| i.sha256.as_str()).collect();
        self.input_hash = sha256_hex(joined.as_bytes());
        self.timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let mut json = serde_json::to_vec_pretty(&self)?;
        json.push(b'\n');
        write_atomic(manifest_path, &json)
    }
}
