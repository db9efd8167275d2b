use std::path::Path;

use orbitlab::witness::{bp_test, LadderCertificate};
use orbitlab::Execution;
use serde_json::json;

use crate::report::Report;
use crate::run::Outcome;
use crate::{CliError, CliResult, Options};

/// Re-reads a ladder certificate and re-runs `bp_test` on it.
pub fn cmd_verify_certificate(path: &Path, samples: usize, opts: &Options) -> CliResult<Outcome> {
    opts.validate()?;
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let cert = LadderCertificate::parse(&text)?;
    let config = json!({
        "certificate": path.display().to_string(),
        "samples": samples,
    });
    let mut report = Report::new("verify-certificate", opts, config);
    report.result(
        "certificate",
        &json!({
            "delta": cert.delta,
            "m_bound": cert.m_bound,
            "x_norm": cert.x_norm,
            "vectors": cert.entries.len(),
            "prefix_len": cert.prefix_len,
            "truncation": cert.truncation(),
        }),
    );
    let outcome = report.timed("bp_test", || {
        cert.vectors()
            .and_then(|v| bp_test(&v, samples, opts.tol, opts.seed, Execution::default()))
    });
    match outcome {
        Ok(bp) => {
            report.check(
                "bp_test",
                bp.ladder_detected,
                format!(
                    "subset-sum bound {} against 10·‖x₁‖ = {}, min ‖x_m‖ {}",
                    bp.unconditional_bound,
                    10.0 * bp.first_norm,
                    bp.cauchy_defect
                ),
            );
            report.result("bp_test", &bp);
        }
        Err(orbitlab::Error::InvalidArgument(msg)) => report.check("bp_test", false, msg),
        Err(e) => return Err(e.into()),
    }
    Ok(Outcome {
        report,
        options: opts.clone(),
        stem: "verify".into(),
    })
}
