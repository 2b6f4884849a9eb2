//! Batch experiments behind the `cantor` command line: seeded sampling,
//! plot-data emission and verification suites with JSON reports.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{CfError, Result};

pub mod gen;
pub mod plot;
pub mod verify;

pub use plot::{cmd_plot, PlotPoint, PlotSeries, PlotWhich};
pub use verify::{cmd_verify, run_suite, Suite, VerifyReport};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        })
    }
}

impl FromStr for OutputFormat {
    type Err = CfError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(CfError::parse(format!("unknown output format {s:?}"))),
        }
    }
}

/// Scale and output settings shared by every command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub samples: usize,
    pub depth: usize,
    pub bits: u32,
    pub output_format: OutputFormat,
    /// `None` writes to standard output.
    #[serde(skip)]
    pub output_path: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            samples: 2000,
            depth: 40,
            bits: 1024,
            output_format: OutputFormat::Json,
            output_path: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(CfError::domain("samples must be >= 1"));
        }
        if self.depth == 0 {
            return Err(CfError::domain("depth must be >= 1"));
        }
        if self.bits < crate::sample::MIN_SAMPLE_BITS {
            return Err(CfError::domain(format!(
                "bits must be >= {}",
                crate::sample::MIN_SAMPLE_BITS
            )));
        }
        if (self.bits as usize) < 3 * self.depth {
            return Err(CfError::domain(format!(
                "bits ({}) must be at least 3 x depth ({})",
                self.bits,
                3 * self.depth
            )));
        }
        Ok(())
    }

    /// Writes `content` to the configured path, or to standard output.
    pub fn emit(&self, content: &str) -> Result<()> {
        write_output(self.output_path.as_deref(), content)
    }
}

pub fn write_output(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(path) => std::fs::write(path, content).map_err(|e| CfError::io(path, e)),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(content.as_bytes())
                .and_then(|_| lock.flush())
                .map_err(|e| CfError::io(Path::new("<stdout>"), e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_guards() {
        assert!(RunConfig::default().validate().is_ok());
        let bad = [
            RunConfig { samples: 0, ..Default::default() },
            RunConfig { depth: 0, ..Default::default() },
            RunConfig { bits: 32, ..Default::default() },
            RunConfig { depth: 400, bits: 1024, ..Default::default() },
        ];
        for config in bad {
            assert!(config.validate().is_err(), "{config:?}");
        }
    }

    #[test]
    fn io_errors_name_the_path() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("missing").join("out.json");
        let err = write_output(Some(&path), "{}").unwrap_err();
        assert!(err.to_string().contains("missing"), "{err}");
    }
}
