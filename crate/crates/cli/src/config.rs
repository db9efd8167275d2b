//! TOML run configuration.
//!
//! ```toml
//! seed = 7
//! tol = 1e-8
//!
//! [operator]
//! kind = "root-perturbed"   # harmonic | root-perturbed | rotation | matrix
//! space = "c"               # c | c0, diagonal kinds only
//! m = 2
//! p = 1.0
//!
//! [[probes]]
//! name = "one"
//! kind = "one"              # one | unit | prefix
//! expect = "growing"        # optional compactness verdict to assert
//!
//! [diagnostics]
//! operations = ["compactness", "mean-ergodic"]
//! epsilons = [1.0]
//! horizons = [100, 200, 400]
//!
//! [output]
//! name = "run"
//! ```

use std::path::{Path, PathBuf};

use orbitlab::gallery::SymbolFamily;
use orbitlab::matrix_file::parse_matrix;
use orbitlab::operators::{DiagonalOperator, DiagonalSymbol, MatrixOperator, Operator};
use orbitlab::orbits::Verdict;
use orbitlab::{FiniteVector, NormTag, SeqVector, SpaceTag, Vector, C64};
use serde::{Deserialize, Serialize};

use crate::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_tol")]
    pub tol: f64,
    pub operator: OperatorSpec,
    #[serde(default)]
    pub probes: Vec<ProbeSpec>,
    pub diagnostics: DiagnosticSpec,
    #[serde(default)]
    pub output: OutputSpec,
}

fn default_tol() -> f64 {
    1e-8
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OperatorKind {
    Harmonic,
    RootPerturbed,
    Rotation,
    Matrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceSpec {
    #[default]
    C,
    C0,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormSpec {
    #[default]
    Euclidean,
    Sup,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorSpec {
    pub kind: OperatorKind,
    #[serde(default)]
    pub space: SpaceSpec,
    pub m: Option<u32>,
    pub p: Option<f64>,
    pub angle: Option<f64>,
    /// Matrix file, relative to the config file.
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub norm: NormSpec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProbeKind {
    One,
    Unit,
    Prefix,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeSpec {
    pub name: String,
    pub kind: ProbeKind,
    /// 1-based.
    pub index: Option<u64>,
    /// `[re, im]` pairs: the prefix of a sequence or the coordinates of a
    /// matrix probe.
    pub values: Option<Vec<[f64; 2]>>,
    pub limit: Option<[f64; 2]>,
    pub expect: Option<Verdict>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Operation {
    Compactness,
    Difference,
    MeanErgodic,
    Decomposition,
    Spectrum,
    Jdlg,
    Ktz,
    Halfsum,
    Witness,
}

impl Operation {
    fn needs_matrix(self) -> bool {
        matches!(
            self,
            Operation::Decomposition | Operation::Spectrum | Operation::Jdlg | Operation::Ktz | Operation::Halfsum
        )
    }

    fn needs_probe(self) -> bool {
        matches!(
            self,
            Operation::Compactness | Operation::Difference | Operation::Decomposition | Operation::Witness
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagnosticSpec {
    pub operations: Vec<Operation>,
    #[serde(default = "default_epsilons")]
    pub epsilons: Vec<f64>,
    #[serde(default = "default_horizons")]
    pub horizons: Vec<u64>,
    #[serde(default = "default_step")]
    pub step: u64,
    #[serde(default = "default_ktz_horizon")]
    pub ktz_horizon: u64,
    #[serde(default = "default_witness_count")]
    pub witness_count: usize,
    #[serde(default = "default_witness_horizon")]
    pub witness_horizon: u64,
    #[serde(default = "default_samples")]
    pub samples: usize,
}

fn default_epsilons() -> Vec<f64> {
    vec![1.0]
}
fn default_horizons() -> Vec<u64> {
    vec![100, 200, 400]
}
fn default_step() -> u64 {
    1
}
fn default_ktz_horizon() -> u64 {
    200
}
fn default_witness_count() -> usize {
    20
}
fn default_witness_horizon() -> u64 {
    10_000
}
fn default_samples() -> usize {
    200
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub dir: Option<PathBuf>,
    #[serde(default = "default_name")]
    pub name: String,
}

fn default_name() -> String {
    "run".into()
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec {
            dir: None,
            name: default_name(),
        }
    }
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl RunConfig {
    pub fn parse(text: &str) -> CliResult<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| bad(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> CliResult<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(bad(format!("tol must be positive, got {}", self.tol)));
        }
        let d = &self.diagnostics;
        if d.operations.is_empty() {
            return Err(bad("diagnostics.operations is empty"));
        }
        if d.horizons.is_empty() || d.horizons[0] == 0 || d.horizons.windows(2).any(|w| w[0] >= w[1]) {
            return Err(bad(format!(
                "horizons must be positive and strictly increasing, got {:?}",
                d.horizons
            )));
        }
        if d.epsilons.is_empty() || d.epsilons.iter().any(|&e| !(e > 4.0 * self.tol) || !e.is_finite()) {
            return Err(bad(format!("epsilons must exceed 4·tol, got {:?}", d.epsilons)));
        }
        if d.step == 0 || d.ktz_horizon == 0 || d.witness_count == 0 || d.witness_horizon == 0 {
            return Err(bad("step, ktz_horizon, witness_count and witness_horizon must be ≥ 1"));
        }
        let matrix = self.operator.kind == OperatorKind::Matrix;
        for op in &d.operations {
            if op.needs_matrix() && !matrix {
                return Err(bad(format!("operation {op:?} needs a matrix operator")));
            }
            if *op == Operation::Witness && matrix {
                return Err(bad("operation witness needs a diagonal operator"));
            }
            if op.needs_probe() && self.probes.is_empty() {
                return Err(bad(format!("operation {op:?} needs at least one probe")));
            }
        }
        let mut names: Vec<&str> = self.probes.iter().map(|p| p.name.as_str()).collect();
        names.sort_unstable();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err(bad("probe names must be unique"));
        }
        let o = &self.operator;
        match o.kind {
            OperatorKind::RootPerturbed if o.m.is_none() || o.p.is_none() => {
                Err(bad("root-perturbed operator needs m and p"))
            }
            OperatorKind::Rotation if o.angle.is_none() => Err(bad("rotation operator needs angle")),
            OperatorKind::Matrix if o.path.is_none() => Err(bad("matrix operator needs path")),
            _ => Ok(()),
        }
    }

    /// Builds the operator; matrix paths resolve against `base_dir`.
    pub fn build_operator(&self, base_dir: &Path) -> CliResult<Operator> {
        let o = &self.operator;
        let space = match o.space {
            SpaceSpec::C => SpaceTag::C,
            SpaceSpec::C0 => SpaceTag::C0,
        };
        let op: Operator = match o.kind {
            OperatorKind::Harmonic => SymbolFamily::harmonic().operator(space)?.into(),
            OperatorKind::RootPerturbed => {
                let family = SymbolFamily::root_perturbed(o.m.unwrap_or(1), o.p.unwrap_or(1.0))
                    .map_err(|e| bad(e.to_string()))?;
                family.operator(space)?.into()
            }
            OperatorKind::Rotation => {
                DiagonalOperator::new(DiagonalSymbol::constant(o.angle.unwrap_or(0.0)), space).into()
            }
            OperatorKind::Matrix => {
                let path = base_dir.join(o.path.as_ref().expect("validated"));
                let text = std::fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
                let entries = parse_matrix(&text).map_err(|e| bad(format!("{}: {e}", path.display())))?;
                MatrixOperator::new(entries, self.norm_tag()).map_err(|e| bad(e.to_string()))?.into()
            }
        };
        Ok(op)
    }

    pub fn norm_tag(&self) -> NormTag {
        match self.operator.norm {
            NormSpec::Euclidean => NormTag::Euclidean,
            NormSpec::Sup => NormTag::Sup,
        }
    }

    pub fn build_probe(&self, spec: &ProbeSpec, op: &Operator) -> CliResult<Vector> {
        let pairs = |v: &[[f64; 2]]| v.iter().map(|&[re, im]| C64::new(re, im)).collect::<Vec<_>>();
        match op {
            Operator::Diagonal(d) => {
                let v = match spec.kind {
                    ProbeKind::One => SeqVector::one(),
                    ProbeKind::Unit => {
                        let k = spec.index.ok_or_else(|| bad(format!("probe {} needs index", spec.name)))?;
                        SeqVector::unit(k).map_err(|e| bad(e.to_string()))?
                    }
                    ProbeKind::Prefix => {
                        let values = spec
                            .values
                            .as_ref()
                            .ok_or_else(|| bad(format!("probe {} needs values", spec.name)))?;
                        let [re, im] = spec.limit.unwrap_or([0.0, 0.0]);
                        let limit = C64::new(re, im);
                        let space = if limit == C64::new(0.0, 0.0) { SpaceTag::C0 } else { SpaceTag::C };
                        SeqVector::from_prefix(space, &pairs(values), limit).map_err(|e| bad(e.to_string()))?
                    }
                };
                if d.space() == SpaceTag::C0 && v.space() != SpaceTag::C0 {
                    return Err(bad(format!("probe {} is not in c0", spec.name)));
                }
                Ok(Vector::Seq(v))
            }
            Operator::Matrix(m) => {
                let n = m.dim();
                let coords = match spec.kind {
                    ProbeKind::One => vec![C64::new(1.0, 0.0); n],
                    ProbeKind::Unit => {
                        let k = spec.index.ok_or_else(|| bad(format!("probe {} needs index", spec.name)))?;
                        if k == 0 || k as usize > n {
                            return Err(bad(format!("probe {} index {k} outside 1..={n}", spec.name)));
                        }
                        let mut c = vec![C64::new(0.0, 0.0); n];
                        c[k as usize - 1] = C64::new(1.0, 0.0);
                        c
                    }
                    ProbeKind::Prefix => {
                        let values = spec
                            .values
                            .as_ref()
                            .ok_or_else(|| bad(format!("probe {} needs values", spec.name)))?;
                        if values.len() != n {
                            return Err(bad(format!(
                                "probe {} has {} coordinates, operator dimension is {n}",
                                spec.name,
                                values.len()
                            )));
                        }
                        pairs(values)
                    }
                };
                Ok(Vector::Finite(
                    FiniteVector::from_slice(&coords, m.norm_tag()).map_err(|e| bad(e.to_string()))?,
                ))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"
seed = 3
[operator]
kind = "harmonic"
[[probes]]
name = "one"
kind = "one"
[diagnostics]
operations = ["compactness"]
"#;

    #[test]
    fn defaults() {
        let cfg = RunConfig::parse(BASE).unwrap();
        assert_eq!(cfg.tol, 1e-8);
        assert_eq!(cfg.diagnostics.horizons, vec![100, 200, 400]);
        assert_eq!(cfg.output.name, "run");
    }

    #[test]
    fn rejects_bad_horizons_and_keys() {
        let text = BASE.replace("operations = [\"compactness\"]", "operations = [\"compactness\"]\nhorizons = [200, 100]");
        assert!(matches!(RunConfig::parse(&text), Err(CliError::Config(_))));
        let text = BASE.replace("seed = 3", "seed = 3\ncolour = 1");
        assert!(matches!(RunConfig::parse(&text), Err(CliError::Config(_))));
        let text = BASE.replace("[\"compactness\"]", "[\"halfsum\"]");
        assert!(matches!(RunConfig::parse(&text), Err(CliError::Config(_))));
    }
}
