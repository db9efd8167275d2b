use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use tempfile::NamedTempFile;

use crate::{CliError, CliResult, Options};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Everything a command produced. Only the JSON body and the CSV/artifact
/// files are deterministic; timings go to a separate sidecar.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub seed: u64,
    pub tol: f64,
    pub config: Value,
    pub results: BTreeMap<String, Value>,
    pub assertions: Vec<Assertion>,
    #[serde(skip)]
    pub csv: BTreeMap<String, String>,
    /// Extra files, e.g. witness certificates, keyed by file name.
    #[serde(skip)]
    pub artifacts: BTreeMap<String, String>,
    #[serde(skip)]
    pub timing: BTreeMap<String, f64>,
}

impl Report {
    pub fn new(command: &str, opts: &Options, config: Value) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            seed: opts.seed,
            tol: opts.tol,
            config,
            results: BTreeMap::new(),
            assertions: Vec::new(),
            csv: BTreeMap::new(),
            artifacts: BTreeMap::new(),
            timing: BTreeMap::new(),
        }
    }

    pub fn result<T: Serialize>(&mut self, key: &str, value: &T) {
        let v = serde_json::to_value(value).expect("report values serialise");
        self.results.insert(key.to_string(), v);
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.assertions.push(Assertion {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }

    /// Runs `f` and records its wall time under `step`.
    pub fn timed<T>(&mut self, step: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timing.insert(step.to_string(), start.elapsed().as_secs_f64());
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        for a in &self.assertions {
            let mark = if a.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{mark} {}: {}\n", a.name, a.detail));
        }
        out
    }

    /// Writes `<stem>.json`, `<stem>.<name>.csv`, artifacts and the
    /// `<stem>.timing.json` sidecar into `opts.out_dir`.
    pub fn write(&self, stem: &str, opts: &Options) -> CliResult<Vec<PathBuf>> {
        let dir = &opts.out_dir;
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        let mut written = Vec::new();
        if opts.json {
            written.push(write_atomic(&dir.join(format!("{stem}.json")), &self.to_json())?);
        }
        if opts.csv {
            for (name, body) in &self.csv {
                written.push(write_atomic(&dir.join(format!("{stem}.{name}.csv")), body)?);
            }
        }
        for (name, body) in &self.artifacts {
            written.push(write_atomic(&dir.join(name), body)?);
        }
        let mut timing = serde_json::to_string_pretty(&self.timing).expect("timings serialise");
        timing.push('\n');
        written.push(write_atomic(&dir.join(format!("{stem}.timing.json")), &timing)?);
        Ok(written)
    }
}

/// Temp file in the target directory, then rename over the target.
pub fn write_atomic(path: &Path, contents: &str) -> CliResult<PathBuf> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let mut tmp = NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(contents.as_bytes()).map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(path.to_path_buf())
}

/// Real/imaginary pairs for JSON.
pub fn complex_pairs(values: &[orbitlab::C64]) -> Vec<[f64; 2]> {
    values.iter().map(|z| [z.re, z.im]).collect()
}
