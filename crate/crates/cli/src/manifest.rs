use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::args::RunArgs;
use crate::emit::Rendered;
use crate::error::{CliError, CliResult};

pub const TOOL: &str = "ringphase";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub file: String,
    pub rows: usize,
    pub columns: Vec<String>,
}

/// Everything needed to regenerate a run. File names are relative to the
/// directory holding the manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub params: RunArgs,
    pub outputs: Vec<OutputRecord>,
}

impl RunManifest {
    pub fn new(command: &str, params: &RunArgs, outputs: &[Rendered]) -> Self {
        Self {
            tool: TOOL.to_string(),
            version: VERSION.to_string(),
            command: command.to_string(),
            params: params.clone(),
            outputs: outputs
                .iter()
                .map(|r| OutputRecord { file: r.file.clone(), rows: r.rows, columns: r.columns.clone() })
                .collect(),
        }
    }

    pub fn file_name(command: &str) -> String {
        format!("{command}.manifest.json")
    }

    pub fn to_json(&self) -> CliResult<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(CliError::io(path))?;
        Self::from_json(&text).map_err(|source| CliError::Manifest { path: path.to_path_buf(), source })
    }
}
