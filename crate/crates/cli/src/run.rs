use std::path::{Path, PathBuf};

use orbitlab::ergodic::{decomposition_check, diagonal_mean_ergodic_verdict, fix_separation_check, mean_ergodic_projection};
use orbitlab::jdlg::{half_sum, jdlg_split, ktz_check, spectrum_report};
use orbitlab::linalg::{certify_power_bounded, CMatrix};
use orbitlab::operators::{DiagonalOperator, MatrixOperator, Operator};
use orbitlab::orbits;
use orbitlab::witness::{bp_test, c0_witness, LadderCertificate, WitnessOptions};
use orbitlab::{Execution, SeqVector};
use serde_json::json;

use crate::config::{Operation, RunConfig};
use crate::report::{complex_pairs, Report};
use crate::{CliError, CliResult, Options};

/// Slack on `‖x_m‖ ≥ δ/M` and on the subset-sum bound.
pub const WITNESS_MARGIN: f64 = 1e-6;
/// Coordinates stored per ladder vector in a certificate.
pub const CERTIFICATE_PREFIX: usize = 256;

pub(crate) fn matrix_json(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

fn failed(report: &mut Report, name: &str, err: orbitlab::Error) {
    report.check(name, false, err.to_string());
}

pub(crate) fn ktz_section(report: &mut Report, key: &str, op: &MatrixOperator, horizon: u64, tol: f64) -> bool {
    match report.timed(key, || ktz_check(op, horizon, tol)) {
        Ok(k) => {
            report.result(
                key,
                &json!({
                    "horizon": horizon,
                    "decay_curve": k.decay_curve,
                    "convergence_curve": k.convergence_curve,
                    "limit_projection": matrix_json(&k.limit_projection),
                    "spectrum": k.spectrum,
                    "pass": k.pass,
                    "tol": tol,
                }),
            );
            let mut csv = String::from("n,decay,convergence\n");
            for (n, (d, c)) in k.decay_curve.iter().zip(&k.convergence_curve).enumerate() {
                csv.push_str(&format!("{n},{d:?},{c:?}\n"));
            }
            report.csv.insert(key.replace('/', "_"), csv);
            report.check(
                key,
                k.pass,
                format!(
                    "‖Tⁿ(I−T)‖ ends at {:e}, ‖Tⁿ−P‖ ends at {:e} (tol {tol:e})",
                    k.decay_curve.last().copied().unwrap_or(f64::NAN),
                    k.convergence_curve.last().copied().unwrap_or(f64::NAN)
                ),
            );
            true
        }
        Err(e) => {
            failed(report, key, e);
            false
        }
    }
}

/// Eigenvalues of `½(I + T)` are either strictly inside the disc or at 1.
pub(crate) fn halfsum_section(report: &mut Report, key: &str, op: &MatrixOperator, tol: f64) {
    match report.timed(key, || half_sum(op, tol)) {
        Ok(h) => {
            let dichotomy = h
                .spectrum
                .eigenvalues
                .iter()
                .all(|z| z.norm() < 1.0 - 1e-12 || (z - orbitlab::C64::new(1.0, 0.0)).norm() <= 1e-9);
            report.result(
                key,
                &json!({
                    "t_eigenvalues": complex_pairs(&orbitlab::linalg::eigenvalues(op.entries())),
                    "t_norm": op.operator_norm(),
                    "s": matrix_json(h.s.entries()),
                    "s_spectrum": h.spectrum,
                    "peripheral_in_one": h.peripheral_in_one,
                }),
            );
            report.check(
                key,
                h.peripheral_in_one && dichotomy,
                format!(
                    "{} eigenvalues of (I+T)/2, spectral radius {:.12}, peripheral {:?}",
                    h.spectrum.eigenvalues.len(),
                    h.spectrum.spectral_radius(),
                    complex_pairs(&h.spectrum.peripheral)
                ),
            );
        }
        Err(e) => failed(report, key, e),
    }
}

pub(crate) struct WitnessRequest<'a> {
    pub op: &'a DiagonalOperator,
    pub x: &'a SeqVector,
    pub count: usize,
    pub horizon: u64,
    pub samples: usize,
    pub certificate_name: String,
}

pub(crate) fn witness_section(report: &mut Report, key: &str, req: &WitnessRequest<'_>, opts: &Options) -> CliResult<()> {
    let options = WitnessOptions {
        samples: req.samples,
        seed: opts.seed,
        execution: Execution::default(),
    };
    let outcome = report.timed(key, || c0_witness(req.op, req.x, req.count, req.horizon, opts.tol, &options));
    let (audit, complete) = match outcome {
        Ok(a) => (a, true),
        Err(orbitlab::Error::HorizonExhausted { partial, .. }) => (*partial, false),
        Err(e) => {
            failed(report, key, e);
            return Ok(());
        }
    };
    report.result(&format!("{key}/audit"), &audit);
    report.check(
        &format!("{key}/ladder"),
        complete,
        format!(
            "{} of {} rungs found with exponents ≤ {}",
            audit.ladder.len(),
            req.count,
            req.horizon
        ),
    );
    let floor = audit.delta / audit.m_bound - WITNESS_MARGIN;
    let min_norm = audit
        .ladder_norms
        .iter()
        .map(|c| c.value - c.error_bound)
        .fold(f64::INFINITY, f64::min);
    report.check(
        &format!("{key}/norms"),
        !audit.ladder.is_empty() && audit.all_norms_at_least(floor),
        format!("min certified ‖x_m‖ {min_norm} against δ/M − {WITNESS_MARGIN:e} = {floor}"),
    );
    let s = &audit.subset_sums;
    report.check(
        &format!("{key}/subset_sums"),
        s.samples >= req.samples && s.max_norm <= s.bound + WITNESS_MARGIN,
        format!("{} samples, max {} against 1 + 2M‖x‖ = {}", s.samples, s.max_norm, s.bound),
    );
    let cert = LadderCertificate::from_audit(&audit, CERTIFICATE_PREFIX);
    report.artifacts.insert(req.certificate_name.clone(), cert.to_text());
    report.result(
        &format!("{key}/certificate"),
        &json!({
            "file": req.certificate_name,
            "prefix_len": CERTIFICATE_PREFIX,
            "vectors": cert.entries.len(),
            "truncation": cert.truncation(),
        }),
    );
    let bp = cert
        .vectors()
        .and_then(|v| bp_test(&v, req.samples, opts.tol, opts.seed, Execution::default()));
    match bp {
        Ok(bp) => {
            report.result(&format!("{key}/bp_test"), &bp);
            report.check(
                &format!("{key}/bp_test"),
                bp.ladder_detected,
                format!(
                    "subset-sum bound {} (< 10·‖x₁‖ = {}), min ‖x_m‖ {}",
                    bp.unconditional_bound,
                    10.0 * bp.first_norm,
                    bp.cauchy_defect
                ),
            );
        }
        Err(e) => failed(report, &format!("{key}/bp_test"), e),
    }
    Ok(())
}

#[derive(Clone, Debug, Default)]
pub struct RunOverrides {
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    pub out_dir: Option<PathBuf>,
    pub json: bool,
    pub csv: bool,
}

/// A finished command: the report, where to write it and its file stem.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub options: Options,
    pub stem: String,
}

pub fn cmd_run(config_path: &Path, overrides: &RunOverrides) -> CliResult<Outcome> {
    let cfg = RunConfig::load(config_path)?;
    let base = config_path.parent().unwrap_or_else(|| Path::new("."));
    let opts = Options {
        seed: overrides.seed.unwrap_or(cfg.seed),
        tol: overrides.tol.unwrap_or(cfg.tol),
        out_dir: overrides
            .out_dir
            .clone()
            .or_else(|| cfg.output.dir.clone())
            .unwrap_or_else(|| Options::default().out_dir),
        json: overrides.json || !overrides.csv,
        csv: overrides.csv,
    };
    opts.validate()?;
    let op = cfg.build_operator(base)?;
    let probes = cfg
        .probes
        .iter()
        .map(|p| Ok((p, cfg.build_probe(p, &op)?)))
        .collect::<CliResult<Vec<_>>>()?;
    let echo = serde_json::to_value(&cfg).map_err(|e| CliError::Config(e.to_string()))?;
    let mut report = Report::new("run", &opts, echo);
    let d = &cfg.diagnostics;
    let tol = opts.tol;

    let mut operations = d.operations.clone();
    operations.sort();
    operations.dedup();
    for operation in operations {
        match operation {
            Operation::Compactness | Operation::Difference => {
                for (spec, v) in &probes {
                    let (name, outcome) = if operation == Operation::Compactness {
                        let key = format!("compactness/{}", spec.name);
                        let r = report.timed(&key, || orbits::compactness_diagnostic(&op, v, &d.epsilons, &d.horizons, tol));
                        (key, r)
                    } else {
                        let key = format!("difference/{}", spec.name);
                        let r = report.timed(&key, || {
                            orbits::difference_diagnostic(&op, v, d.step, &d.epsilons, &d.horizons, tol)
                        });
                        (key, r)
                    };
                    match outcome {
                        Ok(r) => {
                            report.csv.insert(name.replace('/', "_"), r.to_csv());
                            if let (Some(expect), Operation::Compactness) = (spec.expect, operation) {
                                report.check(
                                    &name,
                                    r.verdict == expect,
                                    format!("verdict {} (expected {expect}), packing {:?}", r.verdict, r.packing_numbers),
                                );
                            }
                            report.result(&name, &r);
                        }
                        Err(e) => failed(&mut report, &name, e),
                    }
                }
            }
            Operation::MeanErgodic => mean_ergodic_section(&mut report, &op, tol),
            Operation::Decomposition => {
                let m = op.as_matrix().expect("validated");
                for (spec, v) in &probes {
                    let key = format!("decomposition/{}", spec.name);
                    let x = v.as_finite().expect("matrix probes are finite");
                    match report.timed(&key, || decomposition_check(m, x, tol)) {
                        Ok(parts) => {
                            report.result(
                                &key,
                                &json!({
                                    "fix_part": complex_pairs(parts.fix_part.coords().as_slice()),
                                    "range_part": complex_pairs(parts.range_part.coords().as_slice()),
                                    "residual": parts.residual,
                                    "tol": tol,
                                }),
                            );
                            report.check(&key, parts.residual <= tol, format!("residual {:e}", parts.residual));
                        }
                        Err(e) => failed(&mut report, &key, e),
                    }
                }
            }
            Operation::Spectrum => {
                let m = op.as_matrix().expect("validated");
                let spectrum = spectrum_report(m.entries(), tol);
                let cert = certify_power_bounded(m.entries(), tol);
                report.result("spectrum", &json!({ "report": spectrum, "power_bound": cert }));
            }
            Operation::Jdlg => {
                let m = op.as_matrix().expect("validated");
                match report.timed("jdlg", || jdlg_split(m, tol)) {
                    Ok(s) => {
                        report.result(
                            "jdlg",
                            &json!({
                                "rev_dim": s.rev_dim(),
                                "aws_dim": s.aws_dim(),
                                "projection": matrix_json(&s.projection),
                                "aws_spectral_radius": s.aws_spectral_radius,
                                "rev_power_sup": s.rev_power_sup,
                                "rev_condition": s.rev_condition,
                                "rev_eigenvalues": complex_pairs(&s.rev_eigenvalues),
                                "residual": s.residual,
                                "tol": tol,
                            }),
                        );
                        report.check(
                            "jdlg",
                            s.group_bounded(),
                            format!(
                                "sup ‖rev_actionⁿ‖ over |n| ≤ 1000 is {} (condition {})",
                                s.rev_power_sup, s.rev_condition
                            ),
                        );
                    }
                    Err(e) => failed(&mut report, "jdlg", e),
                }
            }
            Operation::Ktz => {
                ktz_section(&mut report, "ktz", op.as_matrix().expect("validated"), d.ktz_horizon, tol);
            }
            Operation::Halfsum => halfsum_section(&mut report, "halfsum", op.as_matrix().expect("validated"), tol),
            Operation::Witness => {
                let diag = op.as_diagonal().expect("validated");
                for (spec, v) in &probes {
                    let x = v.as_seq().expect("diagonal probes are sequences");
                    let req = WitnessRequest {
                        op: diag,
                        x,
                        count: d.witness_count,
                        horizon: d.witness_horizon,
                        samples: d.samples,
                        certificate_name: format!("{}.{}.ladder.cert", cfg.output.name, spec.name),
                    };
                    witness_section(&mut report, &format!("witness/{}", spec.name), &req, &opts)?;
                }
            }
        }
    }
    Ok(Outcome {
        report,
        options: opts,
        stem: cfg.output.name.clone(),
    })
}

fn mean_ergodic_section(report: &mut Report, op: &Operator, tol: f64) {
    match op {
        Operator::Diagonal(d) => match report.timed("mean_ergodic", || diagonal_mean_ergodic_verdict(d)) {
            Ok(v) => report.result("mean_ergodic", &v),
            Err(e) => failed(report, "mean_ergodic", e),
        },
        Operator::Matrix(m) => {
            let verdict = fix_separation_check(m, tol);
            let dec = mean_ergodic_projection(m, tol);
            match (verdict, dec) {
                (Ok(v), Ok(dec)) => {
                    report.result(
                        "mean_ergodic",
                        &json!({
                            "verdict": v,
                            "projection": matrix_json(dec.projection.entries()),
                            "fix_dim": dec.fix_basis.len(),
                            "range_dim": dec.range_basis.len(),
                            "residual": dec.residual,
                            "oblique_factor": dec.oblique_factor,
                            "bound_m": dec.bound_m,
                            "rate_bound_n1000": dec.rate_bound(1000),
                            "tol": tol,
                        }),
                    );
                    report.check(
                        "mean_ergodic",
                        v.is_mean_ergodic,
                        format!("projection residual {:e}", dec.residual),
                    );
                }
                (Err(e), _) | (_, Err(e)) => failed(report, "mean_ergodic", e),
            }
        }
    }
}
