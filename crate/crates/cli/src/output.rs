//! Exit-code classification, result files and the run manifest.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::anyhow;
use serde::Serialize;
use serde_json::Value;

/// A failed run: usage and configuration problems exit 2, data problems exit 3.
#[derive(Debug)]
pub enum Failure {
    Usage(anyhow::Error),
    Data(anyhow::Error),
}

impl Failure {
    pub fn usage(msg: impl std::fmt::Display) -> Self {
        Self::Usage(anyhow!("{msg}"))
    }

    pub fn data(msg: impl std::fmt::Display) -> Self {
        Self::Data(anyhow!("{msg}"))
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) => 2,
            Self::Data(_) => 3,
        }
    }

    pub fn message(&self) -> String {
        match self {
            Self::Usage(e) | Self::Data(e) => format!("{e:#}"),
        }
    }
}

impl From<spatent::Error> for Failure {
    fn from(e: spatent::Error) -> Self {
        match e {
            spatent::Error::InvalidParameter(_) => Self::Usage(e.into()),
            _ => Self::Data(e.into()),
        }
    }
}

pub type CliResult<T> = Result<T, Failure>;

/// Adds context to a library error without changing its classification.
pub trait Context<T> {
    fn context(self, what: impl std::fmt::Display) -> CliResult<T>;
}

impl<T> Context<T> for spatent::Result<T> {
    fn context(self, what: impl std::fmt::Display) -> CliResult<T> {
        self.map_err(|e| match Failure::from(e) {
            Failure::Usage(e) => Failure::Usage(e.context(what.to_string())),
            Failure::Data(e) => Failure::Data(e.context(what.to_string())),
        })
    }
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub inputs: Vec<String>,
    pub parameters: Value,
    pub seed: Option<u64>,
    pub version: &'static str,
    pub outputs: Vec<String>,
    pub duration_seconds: f64,
}

/// Collects the files of one run; the manifest goes last.
pub struct Outputs {
    dir: PathBuf,
    written: Vec<String>,
    started: Instant,
}

impl Outputs {
    pub fn create(dir: &Path) -> CliResult<Self> {
        fs::create_dir_all(dir).map_err(|e| {
            Failure::data(format!(
                "cannot create output directory {}: {e}",
                dir.display()
            ))
        })?;
        Ok(Self {
            dir: dir.to_path_buf(),
            written: Vec::new(),
            started: Instant::now(),
        })
    }

    pub fn write(&mut self, name: &str, contents: &str) -> CliResult<()> {
        let path = self.dir.join(name);
        fs::write(&path, contents)
            .map_err(|e| Failure::data(format!("cannot write {}: {e}", path.display())))?;
        self.written.push(path.display().to_string());
        Ok(())
    }

    pub fn write_json(&mut self, name: &str, value: &impl Serialize) -> CliResult<()> {
        let mut text = serde_json::to_string_pretty(value).map_err(Failure::data)?;
        text.push('\n');
        self.write(name, &text)
    }

    pub fn finish(
        self,
        command: &str,
        inputs: Vec<String>,
        parameters: Value,
        seed: Option<u64>,
    ) -> CliResult<()> {
        let manifest = RunManifest {
            command: command.to_owned(),
            inputs,
            parameters,
            seed,
            version: env!("CARGO_PKG_VERSION"),
            outputs: self.written.clone(),
            duration_seconds: self.started.elapsed().as_secs_f64(),
        };
        let mut out = Outputs {
            written: Vec::new(),
            ..self
        };
        out.write_json("manifest.json", &manifest)
    }
}

pub fn read_text(path: &Path, failure: impl FnOnce(String) -> Failure) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| failure(format!("cannot read {}: {e}", path.display())))
}
