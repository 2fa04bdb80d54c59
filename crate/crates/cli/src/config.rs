//! Run configuration: command-line flags layered over an optional TOML file.

use std::fs;
use std::path::Path;

use poncelet_core::loci::GridSpec;
use poncelet_core::verify::SuiteConfig;
use serde::Deserialize;

use crate::CliError;

/// Smallest grid a trace may be sampled on.
pub const MIN_GRID: usize = 8;

/// Contents of a `--config` file. Every key is optional.
///
/// ```toml
/// f = 2.0
///
/// [grid]
/// count = 800
/// lo = -20.0
/// hi = 20.0
///
/// [suite]
/// samples = 300
///
/// [suite.tolerances]
/// fit = 1e-7
/// ```
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub f: Option<f64>,
    pub grid: GridFile,
    pub suite: SuiteConfig,
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridFile {
    pub count: Option<usize>,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }
}

/// Resolved settings for one family sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub n: usize,
    pub f: f64,
    pub grid: GridSpec,
}

/// Flag values that override the file.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub f: Option<f64>,
    pub count: Option<usize>,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
}

impl RunConfig {
    pub fn resolve(n: usize, file: &FileConfig, flags: Overrides) -> Result<Self, CliError> {
        let d = GridSpec::default();
        let f = flags.f.or(file.f).unwrap_or(1.0);
        let count = flags.count.or(file.grid.count).unwrap_or(d.count);
        let lo = flags.lo.or(file.grid.lo).unwrap_or(d.lo);
        let hi = flags.hi.or(file.grid.hi).unwrap_or(d.hi);
        if n < 3 {
            return Err(CliError::Usage(format!("N must be at least 3, got {n}")));
        }
        if !(f > 0.0 && f.is_finite()) {
            return Err(CliError::Usage(format!("f must be positive, got {f}")));
        }
        if count < MIN_GRID {
            return Err(CliError::Usage(format!("grid count must be at least {MIN_GRID}, got {count}")));
        }
        let grid = GridSpec::new(count, lo, hi).map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(Self { n, f, grid })
    }
}
