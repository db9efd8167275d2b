use std::fmt;
use std::str::FromStr;

use orbitlab::gallery::{self, DiagnosticPlan, SymbolFamily};
use orbitlab::linalg::{operator_norm, CMatrix};
use orbitlab::operators::MatrixOperator;
use orbitlab::orbits::Verdict;
use orbitlab::{NormTag, SeqVector, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::report::Report;
use crate::run::{halfsum_section, ktz_section, witness_section, Outcome, WitnessRequest};
use crate::{CliError, CliResult, Options};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum DemoName {
    Example33,
    Example43,
    Witness,
    Ktz,
    Halfsum,
}

impl DemoName {
    pub const ALL: [DemoName; 5] = [
        DemoName::Example33,
        DemoName::Example43,
        DemoName::Witness,
        DemoName::Ktz,
        DemoName::Halfsum,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DemoName::Example33 => "example33",
            DemoName::Example43 => "example43",
            DemoName::Witness => "witness",
            DemoName::Ktz => "ktz",
            DemoName::Halfsum => "halfsum",
        }
    }
}

impl fmt::Display for DemoName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DemoName {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        DemoName::ALL
            .into_iter()
            .find(|d| d.as_str() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown demo {s:?}; expected one of example33, example43, witness, ktz, halfsum")))
    }
}

/// Size of the witness demo.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessSize {
    pub count: usize,
    pub horizon: u64,
    pub samples: usize,
}

impl Default for WitnessSize {
    fn default() -> Self {
        WitnessSize {
            count: 20,
            horizon: 10_000,
            samples: 200,
        }
    }
}

/// ε for the saturating side of the `m = 2` demo. At ε = 1 the orbit of
/// `(I − T²)𝟙` still separates every point up to horizon 1600; at 1.5 it
/// levels off at 192 points from horizon 200 on.
pub const EXAMPLE43_SATURATION_EPSILON: f64 = 1.5;
pub const EXAMPLE43_HORIZONS: [u64; 3] = [200, 400, 800];

pub fn cmd_demo(name: DemoName, opts: &Options, witness: WitnessSize) -> CliResult<Outcome> {
    opts.validate()?;
    let config = json!({ "demo": name.as_str() });
    let mut report = Report::new(&format!("demo {name}"), opts, config);
    match name {
        DemoName::Example33 => example33(&mut report, opts)?,
        DemoName::Example43 => example43(&mut report, opts)?,
        DemoName::Witness => {
            let op = gallery::example_3_3(SymbolFamily::harmonic())?;
            let x = SeqVector::one();
            report.config = json!({
                "demo": "witness",
                "symbol": SymbolFamily::harmonic(),
                "x": "one",
                "count": witness.count,
                "horizon": witness.horizon,
                "samples": witness.samples,
            });
            let req = WitnessRequest {
                op: &op,
                x: &x,
                count: witness.count,
                horizon: witness.horizon,
                samples: witness.samples,
                certificate_name: "witness.ladder.cert".into(),
            };
            witness_section(&mut report, "witness", &req, opts)?;
        }
        DemoName::Ktz => ktz(&mut report, opts)?,
        DemoName::Halfsum => halfsum(&mut report, opts)?,
    }
    Ok(Outcome {
        report,
        options: opts.clone(),
        stem: name.as_str().to_string(),
    })
}

fn plan(opts: &Options) -> DiagnosticPlan {
    DiagnosticPlan {
        tol: opts.tol,
        ..DiagnosticPlan::default()
    }
}

fn example33(report: &mut Report, opts: &Options) -> CliResult<()> {
    let family = SymbolFamily::harmonic();
    let op = gallery::example_3_3(family)?;
    let plan = plan(opts);
    report.config = json!({ "demo": "example33", "symbol": family, "plan": plan });
    let audit = report.timed("audit", || gallery::audit_example_3_3(&op, &plan))?;
    report.check(
        "orbit_of_one",
        audit.orbit_of_one.verdict == Verdict::Growing,
        format!(
            "verdict {}, packing at ε = {} is {:?}",
            audit.orbit_of_one.verdict, plan.growth_epsilon, audit.orbit_of_one.packing_numbers[0]
        ),
    );
    report.check(
        "orbit_of_c0_probe",
        audit.orbit_of_c0_probe.verdict == Verdict::Saturating,
        format!(
            "verdict {}, packing {:?}",
            audit.orbit_of_c0_probe.verdict, audit.orbit_of_c0_probe.packing_numbers[0]
        ),
    );
    report.check(
        "not_mean_ergodic_on_c",
        !audit.verdict.is_mean_ergodic,
        format!("reason {:?}", audit.verdict.reason),
    );
    report.check("isometry", audit.isometry_defect <= opts.tol, format!("defect {:e}", audit.isometry_defect));
    report.csv.insert("orbit_of_one".into(), audit.orbit_of_one.to_csv());
    report.csv.insert("difference_orbit_of_one".into(), audit.difference_orbit_of_one.to_csv());
    report.csv.insert("orbit_of_c0_probe".into(), audit.orbit_of_c0_probe.to_csv());
    report.result("audit", &audit);
    Ok(())
}

fn example43(report: &mut Report, opts: &Options) -> CliResult<()> {
    let family = SymbolFamily::root_perturbed(2, 1.0)?;
    let op = gallery::example_4_3(family)?;
    let plan = DiagnosticPlan {
        saturation_epsilon: EXAMPLE43_SATURATION_EPSILON,
        horizons: EXAMPLE43_HORIZONS.to_vec(),
        ..plan(opts)
    };
    report.config = json!({ "demo": "example43", "symbol": family, "plan": plan });
    let audit = report.timed("audit", || gallery::audit_example_4_3(&op, &plan))?;
    report.check(
        "range_vector_saturates",
        audit.orbit_of_range_vector.verdict == Verdict::Saturating,
        format!(
            "orbit of (I − T²)𝟙 at ε = {}: verdict {}, packing {:?}",
            plan.saturation_epsilon, audit.orbit_of_range_vector.verdict, audit.orbit_of_range_vector.packing_numbers[0]
        ),
    );
    report.check(
        "one_minus_symbol_grows",
        audit.orbit_of_one_minus_symbol.verdict == Verdict::Growing,
        format!(
            "orbit of 𝟙 − (a_k) at ε = {}: verdict {}, packing {:?}",
            plan.growth_epsilon,
            audit.orbit_of_one_minus_symbol.verdict,
            audit.orbit_of_one_minus_symbol.packing_numbers[0]
        ),
    );
    report.check(
        "limits",
        audit.limit_range_vector.norm() <= opts.tol && (audit.limit_one_minus_symbol - C64::new(2.0, 0.0)).norm() <= opts.tol,
        format!(
            "lim (I − T²)𝟙 = {}, lim 𝟙 − (a_k) = {}",
            audit.limit_range_vector, audit.limit_one_minus_symbol
        ),
    );
    report.csv.insert("orbit_of_range_vector".into(), audit.orbit_of_range_vector.to_csv());
    report.csv.insert("orbit_of_one_minus_symbol".into(), audit.orbit_of_one_minus_symbol.to_csv());
    report.result("audit", &audit);
    Ok(())
}

/// Bundled `diag(1, 0.9)`; `‖Tⁿ(I − T)‖ = 0.1·0.9ⁿ` exactly.
pub const KTZ_HORIZON: u64 = 200;

fn ktz(report: &mut Report, opts: &Options) -> CliResult<()> {
    let op = MatrixOperator::from_diagonal(&[C64::new(1.0, 0.0), C64::new(0.9, 0.0)], NormTag::Euclidean)?;
    report.config = json!({ "demo": "ktz", "matrix": "diag(1, 0.9)", "horizon": KTZ_HORIZON });
    ktz_section(report, "ktz", &op, KTZ_HORIZON, opts.tol);
    if let Some(curve) = report.results.get("ktz").and_then(|v| v["decay_curve"].as_array()) {
        let deviation = curve
            .iter()
            .enumerate()
            .map(|(n, d)| (d.as_f64().unwrap_or(f64::NAN) - 0.1 * 0.9f64.powi(n as i32)).abs())
            .fold(0.0, f64::max);
        report.check(
            "ktz/closed_form",
            deviation <= 1e-12,
            format!("max |‖Tⁿ(I−T)‖ − 0.1·0.9ⁿ| = {deviation:e} for n ≤ {KTZ_HORIZON}"),
        );
    }
    let jordan = MatrixOperator::new(
        CMatrix::from_row_slice(2, 2, &[C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)]),
        NormTag::Euclidean,
    )?;
    let rejected = orbitlab::jdlg::ktz_check(&jordan, KTZ_HORIZON, opts.tol);
    report.check(
        "ktz/jordan_rejected",
        rejected.is_err(),
        match &rejected {
            Err(e) => format!("Jordan block at 1 rejected: {e}"),
            Ok(_) => "Jordan block at 1 was accepted".into(),
        },
    );
    Ok(())
}

pub const HALFSUM_DIM: usize = 4;

/// Seeded random complex matrix scaled to operator norm 1.
pub fn random_contraction(n: usize, seed: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = CMatrix::from_fn(n, n, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let norm = operator_norm(&m, NormTag::Euclidean);
    m / C64::new(norm, 0.0)
}

fn halfsum(report: &mut Report, opts: &Options) -> CliResult<()> {
    let op = MatrixOperator::new(random_contraction(HALFSUM_DIM, opts.seed), NormTag::Euclidean)?;
    report.config = json!({ "demo": "halfsum", "dim": HALFSUM_DIM, "seed": opts.seed });
    halfsum_section(report, "halfsum", &op, opts.tol);
    Ok(())
}
