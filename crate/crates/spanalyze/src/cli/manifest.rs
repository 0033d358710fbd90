//! Run manifest and output-directory bookkeeping: every file a command
//! writes is recorded with its content hash; inputs are hashed too, so
//! two runs over identical inputs and config produce byte-identical
//! manifests. A lock file guards the output directory against
//! concurrent invocations.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

pub fn hash_file(path: &Path) -> Result<String> {
    let bytes = fs::read(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    Ok(sha256_hex(&bytes))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub tool_version: String,
    pub config_hash: String,
    pub inputs: BTreeMap<String, String>,
    pub outputs: BTreeMap<String, String>,
}

/// Records every write below the output directory and serializes the
/// manifest at the end of a command.
pub struct OutputWriter {
    root: PathBuf,
    manifest: RunManifest,
    _lock: LockGuard,
}

impl OutputWriter {
    pub fn create(
        root: &Path,
        command: &str,
        config_path: &Path,
        input_files: &BTreeMap<String, PathBuf>,
    ) -> Result<OutputWriter> {
        fs::create_dir_all(root).map_err(|e| Error::io(root.display().to_string(), e))?;
        let lock = LockGuard::acquire(root)?;
        let mut inputs = BTreeMap::new();
        for (name, path) in input_files {
            inputs.insert(name.clone(), hash_file(path)?);
        }
        let config_hash = hash_file(config_path)?;
        Ok(OutputWriter {
            root: root.to_path_buf(),
            manifest: RunManifest {
                command: command.to_string(),
                tool_version: env!("CARGO_PKG_VERSION").to_string(),
                config_hash,
                inputs,
                outputs: BTreeMap::new(),
            },
            _lock: lock,
        })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn path(&self, rel: &str) -> PathBuf {
        self.root.join(rel)
    }

    pub fn exists(&self, rel: &str) -> bool {
        self.root.join(rel).is_file()
    }

    /// Writes one declared output file (creating parent directories) and
    /// records its hash under the relative path.
    pub fn write(&mut self, rel: &str, bytes: &[u8]) -> Result<()> {
        let path = self.root.join(rel);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).map_err(|e| Error::io(parent.display().to_string(), e))?;
        }
        fs::write(&path, bytes).map_err(|e| Error::io(path.display().to_string(), e))?;
        self.manifest
            .outputs
            .insert(rel.to_string(), sha256_hex(bytes));
        Ok(())
    }

    /// Reads a previously persisted artifact; a missing file is the
    /// documented missing-artifact error carrying the artifact name.
    pub fn read_artifact(&self, rel: &str, artifact: &str) -> Result<Vec<u8>> {
        let path = self.root.join(rel);
        fs::read(&path).map_err(|_| Error::MissingArtifact {
            name: artifact.to_string(),
        })
    }

    /// Serializes the manifest; call last so every output is declared.
    pub fn finish(self) -> Result<()> {
        let json = serde_json::to_vec_pretty(&self.manifest)
            .map_err(|e| Error::Invalid(format!("serialize manifest: {e}")))?;
        let path = self.root.join("manifest.json");
        let mut bytes = json;
        bytes.push(b'\n');
        fs::write(&path, &bytes).map_err(|e| Error::io(path.display().to_string(), e))?;
        Ok(())
    }
}

/// Exclusive advisory lock on the output directory, released on drop.
struct LockGuard {
    path: PathBuf,
}

impl LockGuard {
    fn acquire(root: &Path) -> Result<LockGuard> {
        let path = root.join(".lock");
        match fs::OpenOptions::new().write(true).create_new(true).open(&path) {
            Ok(_) => Ok(LockGuard { path }),
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => Err(Error::Invalid(
                format!(
                    "output directory is locked by another run (remove {} if stale)",
                    path.display()
                ),
            )),
            Err(e) => Err(Error::io(path.display().to_string(), e)),
        }
    }
}

impl Drop for LockGuard {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.path);
    }
}
