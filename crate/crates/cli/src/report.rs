use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// CSV tables only.
    Csv,
    /// CSV tables plus SVG figures.
    Svg,
}

/// Where and how results are written.
#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output directory (created if missing).
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

impl OutputArgs {
    pub fn figures(&self) -> bool {
        self.format == Format::Svg
    }

    pub fn prepare(&self) -> Result<&Path> {
        fs::create_dir_all(&self.out).with_context(|| format!("cannot create {}", self.out.display()))?;
        Ok(&self.out)
    }

    pub fn write(&self, name: &str, body: impl FnOnce(&mut BufWriter<File>) -> io::Result<()>) -> Result<()> {
        let path = self.prepare()?.join(name);
        let file = File::create(&path).with_context(|| format!("cannot write {}", path.display()))?;
        let mut w = BufWriter::new(file);
        body(&mut w)
            .and_then(|_| w.flush())
            .with_context(|| format!("cannot write {}", path.display()))?;
        log::info!("wrote {}", path.display());
        Ok(())
    }

    pub fn write_text(&self, name: &str, text: &str) -> Result<()> {
        self.write(name, |w| w.write_all(text.as_bytes()))
    }
}

/// Outcome of one embedded check.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Prints one line per check; returns the names of the failures.
pub fn summarize(checks: &[Check]) -> Vec<String> {
    for c in checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {}: {}", c.name, c.detail);
    }
    checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect()
}
