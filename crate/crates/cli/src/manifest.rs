//! Output directory bookkeeping and the run manifest.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    /// Path relative to the output directory.
    pub path: String,
    pub bytes: u64,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub seed: u64,
    /// RFC 3339, UTC.
    pub timestamp: String,
    /// Fully resolved configuration.
    pub config: serde_json::Value,
    pub notes: Vec<String>,
    pub files: Vec<FileDigest>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

/// Writes files into one directory and remembers their digests.
#[derive(Debug)]
pub struct OutputDir {
    root: PathBuf,
    files: Vec<FileDigest>,
}

impl OutputDir {
    pub fn create(root: &Path) -> Result<Self> {
        fs::create_dir_all(root).with_context(|| format!("cannot create output directory {}", root.display()))?;
        Ok(Self { root: root.to_path_buf(), files: Vec::new() })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn write(&mut self, name: &str, bytes: &[u8]) -> Result<()> {
        let path = self.root.join(name);
        fs::write(&path, bytes).with_context(|| format!("cannot write {}", path.display()))?;
        self.files.push(FileDigest { path: name.to_string(), bytes: bytes.len() as u64, sha256: sha256_hex(bytes) });
        Ok(())
    }

    /// Writes `manifest.json` listing every file written so far.
    pub fn finish(
        self,
        command: &str,
        seed: u64,
        config: serde_json::Value,
        notes: Vec<String>,
    ) -> Result<RunManifest> {
        let manifest = RunManifest {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            seed,
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            config,
            notes,
            files: self.files,
        };
        let mut text = serde_json::to_string_pretty(&manifest)?;
        text.push('\n');
        let path = self.root.join(MANIFEST_FILE);
        fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))?;
        Ok(manifest)
    }
}

/// Checks that every file listed in a manifest exists with the recorded digest.
pub fn verify(dir: &Path, manifest: &RunManifest) -> Result<()> {
    for f in &manifest.files {
        let bytes = fs::read(dir.join(&f.path)).with_context(|| format!("missing {}", f.path))?;
        anyhow::ensure!(sha256_hex(&bytes) == f.sha256, "digest mismatch for {}", f.path);
        anyhow::ensure!(bytes.len() as u64 == f.bytes, "size mismatch for {}", f.path);
    }
    Ok(())
}
