use std::path::{Path, PathBuf};
use std::time::Duration;

use mopls::Result;
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct FileDigest {
    pub path: PathBuf,
    pub sha256: String,
}

impl FileDigest {
    pub fn of(path: &Path) -> Result<Self> {
        let bytes = std::fs::read(path)?;
        Ok(FileDigest {
            path: path.to_path_buf(),
            sha256: hex::encode(Sha256::digest(&bytes)),
        })
    }
}

/// Record written beside every file the tool produces.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    pub parameters: serde_json::Value,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
    pub tool_version: &'static str,
    pub wall_time_secs: f64,
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

pub fn write_manifests(
    parameters: serde_json::Value,
    inputs: &[PathBuf],
    outputs: &[PathBuf],
    elapsed: Duration,
) -> Result<()> {
    if outputs.is_empty() {
        return Ok(());
    }
    let manifest = RunManifest {
        command: std::env::args().collect(),
        parameters,
        inputs: inputs.iter().map(|p| FileDigest::of(p)).collect::<Result<_>>()?,
        outputs: outputs.iter().map(|p| FileDigest::of(p)).collect::<Result<_>>()?,
        tool_version: env!("CARGO_PKG_VERSION"),
        wall_time_secs: elapsed.as_secs_f64(),
    };
    let text = serde_json::to_string_pretty(&manifest)?;
    for out in outputs {
        std::fs::write(manifest_path(out), &text)?;
    }
    Ok(())
}
