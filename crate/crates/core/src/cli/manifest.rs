use std::fs::File;
use std::io::{self, BufReader};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::export::{write_json, ImageNormalization};
use super::Command;

pub const MANIFEST_SCHEMA_VERSION: u32 = 1;

/// Record written next to every artifact; `verify --manifest` replays it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema_version: u32,
    pub tool_version: String,
    pub timestamp_utc: String,
    /// Worker threads used; outputs do not depend on it.
    pub threads: Option<usize>,
    #[serde(flatten)]
    pub command: Command,
    pub outputs: Vec<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub image_normalization: Option<ImageNormalization>,
}

impl RunManifest {
    pub fn new(command: Command, threads: Option<usize>, outputs: Vec<PathBuf>) -> Self {
        Self {
            schema_version: MANIFEST_SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp_utc: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            threads,
            command,
            outputs,
            image_normalization: None,
        }
    }

    pub fn write(&self, path: &Path) -> io::Result<()> {
        write_json(File::create(path)?, self)
    }

    pub fn read(path: &Path) -> io::Result<Self> {
        let m: Self = serde_json::from_reader(BufReader::new(File::open(path)?))?;
        if m.schema_version != MANIFEST_SCHEMA_VERSION {
            return Err(io::Error::new(
                io::ErrorKind::InvalidData,
                format!("unsupported manifest schema {}", m.schema_version),
            ));
        }
        Ok(m)
    }
}

/// `<output>.manifest.json`.
pub fn manifest_path(output: &Path) -> PathBuf {
    let mut s = output.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}
