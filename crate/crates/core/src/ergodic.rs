//! Cesàro means `A_n = (1/n) Σ_{k<n} Tᵏ`, mean-ergodic projections and
//! verdicts.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector};
use crate::operators::{DiagonalOperator, MatrixOperator, Operator, SymbolShape, DIAGONAL_PROBE_PREFIX};
use crate::seqspace::{sup_norm, FiniteVector, NormTag, SeqVector, SpaceTag, TailCertificate, Vector, C64};

/// Cesàro horizons used as evidence in verdicts.
pub const EVIDENCE_HORIZONS: [u64; 3] = [10, 100, 1000];

/// `(1/n) Σ_{j<n} e^{ijθ}`: the Dirichlet kernel
/// `e^{i(n−1)θ/2} sin(nθ/2) / (n sin(θ/2))`, or 1 when `e^{iθ} = 1`.
pub fn cesaro_factor(theta: f64, n: u64) -> C64 {
    let phi = theta.rem_euclid(TAU);
    if phi == 0.0 {
        return C64::new(1.0, 0.0);
    }
    let nf = n as f64;
    let half = 0.5 * phi;
    let modulus = (nf * half).sin() / (nf * half.sin());
    C64::from_polar(modulus, ((nf - 1.0) * half).rem_euclid(TAU))
}

/// `A_n x`. Diagonal operators use the closed form per coordinate and at
/// the limit; matrices sum directly.
pub fn cesaro(op: &Operator, x: &Vector, n: u64) -> Result<Vector> {
    if n == 0 {
        return Err(Error::InvalidArgument("Cesàro index must be ≥ 1".into()));
    }
    match (op, x) {
        (Operator::Diagonal(d), Vector::Seq(v)) => Ok(Vector::Seq(cesaro_diagonal(d, v, n)?)),
        (Operator::Matrix(m), Vector::Finite(v)) => {
            let mut acc = CVector::zeros(v.len());
            let mut current = v.coords().clone();
            for _ in 0..n {
                acc += &current;
                current = m.entries() * &current;
            }
            Ok(Vector::Finite(FiniteVector::new(acc / C64::new(n as f64, 0.0), v.norm_tag())?))
        }
        _ => Err(Error::KindMismatch(
            "diagonal operators act on sequences, matrices on finite vectors".into(),
        )),
    }
}

pub fn cesaro_diagonal(op: &DiagonalOperator, v: &SeqVector, n: u64) -> Result<SeqVector> {
    if n == 0 {
        return Err(Error::InvalidArgument("Cesàro index must be ≥ 1".into()));
    }
    if op.space() == SpaceTag::C0 && v.space() == SpaceTag::C {
        return Err(Error::TagMismatch("operator acts on c0 but the vector lives in c".into()));
    }
    let symbol = op.symbol().clone();
    let limit_factor = cesaro_factor(symbol.limit_angle(), n);
    let limit = limit_factor * v.limit();
    // |c_k − c_∞| ≤ (1/n) Σ_{j<n} j·|θ_k − θ_∞| = ((n−1)/2)·|θ_k − θ_∞|, |c_k| ≤ 1
    let drift = symbol
        .angle_tail()
        .scaled(0.5 * (n as f64 - 1.0) * v.limit().norm());
    let tail = v.tail().plus(&drift);
    // |c_k x_k| ≤ |x_k| ≤ |x_∞| + env, which is |c_∞ x_∞| + env when c_∞ = 1.
    let envelope = if limit_factor == C64::new(1.0, 0.0) {
        Some(v.envelope().unwrap_or(v.tail()))
    } else {
        None
    };
    let inner = v.coord_fn().clone();
    let coord = Arc::new(move |k| cesaro_factor(symbol.angle(k), n) * inner(k));
    SeqVector::from_parts(v.space(), limit, tail, envelope, coord)
}

/// `A_n` as a matrix.
pub fn cesaro_matrix(m: &CMatrix, n: u64) -> CMatrix {
    let dim = m.nrows();
    let mut acc = CMatrix::zeros(dim, dim);
    let mut current = linalg::identity(dim);
    for _ in 0..n {
        acc += &current;
        current = &current * m;
    }
    acc / C64::new(n.max(1) as f64, 0.0)
}

/// Projection onto `fix(T)` along `rg(I − T)` with certificates.
#[derive(Clone, Debug)]
pub struct ErgodicDecomposition {
    pub projection: MatrixOperator,
    pub fix_basis: Vec<FiniteVector>,
    pub range_basis: Vec<FiniteVector>,
    /// `max(‖P² − P‖, ‖TP − P‖, ‖PT − P‖)`.
    pub residual: f64,
    /// `‖Z‖` for the group inverse `Z = (I − T + P)⁻¹ − P` of `I − T`;
    /// `A_n − P = (1/n)(I − Tⁿ)Z`.
    pub oblique_factor: f64,
    /// Sampled `sup_{n ≤ 1000} ‖Tⁿ‖`.
    pub power_bound: f64,
    /// `M = sup ‖Tⁿ‖ + 1`.
    pub bound_m: f64,
}

impl ErgodicDecomposition {
    /// `(1 + sup‖Tⁿ‖)·‖Z‖/n`, an upper bound for `‖A_n − P‖`.
    pub fn rate_bound(&self, n: u64) -> f64 {
        self.bound_m * self.oblique_factor / n as f64
    }
}

const POWER_SAMPLE: u64 = 1000;

fn sup_power_norm(m: &MatrixOperator, horizon: u64) -> f64 {
    let mut sup: f64 = 1.0;
    let mut current = linalg::identity(m.dim());
    for _ in 0..horizon {
        current = &current * m.entries();
        sup = sup.max(m.norm_of(&current));
    }
    sup
}

fn vectors(basis: &CMatrix, tag: NormTag) -> Result<Vec<FiniteVector>> {
    (0..basis.ncols())
        .map(|j| FiniteVector::new(basis.column(j).into_owned(), tag))
        .collect()
}

pub fn mean_ergodic_projection(op: &MatrixOperator, tol: f64) -> Result<ErgodicDecomposition> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let t = op.entries();
    let n = op.dim();
    let cert = linalg::certify_power_bounded(t, tol);
    if !cert.power_bounded {
        return Err(Error::NotPowerBounded(cert.reason));
    }
    let rank_tol = tol.max(1e-10);
    let one = C64::new(1.0, 0.0);
    let shifted = linalg::identity(n) - t;
    let fix = linalg::null_space(&shifted, rank_tol);
    let projection = if fix.ncols() == 0 {
        CMatrix::zeros(n, n)
    } else {
        linalg::eigenprojection(t, one, rank_tol).ok_or_else(|| {
            Error::NotPowerBounded("eigenvalue 1 is defective".into())
        })?
    };
    let range = linalg::column_space(&shifted, rank_tol);
    if fix.ncols() + range.ncols() != n {
        return Err(Error::DecompositionFailure {
            residual: (fix.ncols() + range.ncols()) as f64 - n as f64,
            tol,
        });
    }
    let scale = 1.0_f64.max(linalg::max_abs(&projection));
    let residual = [
        linalg::max_abs(&(&projection * &projection - &projection)),
        linalg::max_abs(&(t * &projection - &projection)),
        linalg::max_abs(&(&projection * t - &projection)),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    if residual > tol * scale {
        return Err(Error::ProjectionDefect { defect: residual, tol });
    }
    let group = linalg::inverse(&(&shifted + &projection))
        .ok_or_else(|| Error::NotPowerBounded("I − T + P is singular".into()))?
        - &projection;
    let power_bound = sup_power_norm(op, POWER_SAMPLE);
    Ok(ErgodicDecomposition {
        projection: MatrixOperator::new(projection, op.norm_tag())?,
        fix_basis: vectors(&fix, op.norm_tag())?,
        range_basis: vectors(&range, op.norm_tag())?,
        residual,
        oblique_factor: op.norm_of(&group),
        power_bound,
        bound_m: power_bound + 1.0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictReason {
    FixSeparates,
    LimitFunctionalObstruction,
    FiniteDim,
    CesaroConverged,
}

impl fmt::Display for VerdictReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictReason::FixSeparates => "fix-separates",
            VerdictReason::LimitFunctionalObstruction => "limit-functional-obstruction",
            VerdictReason::FiniteDim => "finite-dim",
            VerdictReason::CesaroConverged => "cesaro-converged",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeanErgodicVerdict {
    pub is_mean_ergodic: bool,
    pub reason: VerdictReason,
    pub evidence: BTreeMap<String, f64>,
}

/// Compares `dim ker(I − T)` with `dim ker(I − Tᵀ)` and cross-checks with
/// `‖A_n − P‖` at `n = 1000`.
pub fn fix_separation_check(op: &MatrixOperator, tol: f64) -> Result<MeanErgodicVerdict> {
    let dec = mean_ergodic_projection(op, tol)?;
    let t = op.entries();
    let rank_tol = tol.max(1e-10);
    let n = op.dim();
    let fix_dim = linalg::null_space(&(linalg::identity(n) - t), rank_tol).ncols();
    let adjoint_fix_dim = linalg::null_space(&(linalg::identity(n) - t.transpose()), rank_tol).ncols();
    let semisimple = fix_dim == 0 || linalg::is_semisimple(t, C64::new(1.0, 0.0), rank_tol);
    let cesaro_gap = op.norm_of(&(cesaro_matrix(t, 1000) - dec.projection.entries()));
    let mut evidence = BTreeMap::new();
    evidence.insert("fix_dim".into(), fix_dim as f64);
    evidence.insert("adjoint_fix_dim".into(), adjoint_fix_dim as f64);
    evidence.insert("cesaro_gap_n1000".into(), cesaro_gap);
    evidence.insert("cesaro_bound_n1000".into(), dec.rate_bound(1000));
    Ok(MeanErgodicVerdict {
        is_mean_ergodic: fix_dim == adjoint_fix_dim && semisimple,
        reason: VerdictReason::FixSeparates,
        evidence,
    })
}

/// Least-squares slope of `log y` against `log n`.
pub fn loglog_slope(ns: &[f64], ys: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = ns
        .iter()
        .zip(ys)
        .filter(|(_, y)| **y > 0.0)
        .map(|(n, y)| (n.ln(), y.ln()))
        .collect();
    let m = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / m, sy / m);
    let (num, den) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| {
        (a + (x - mx) * (y - my), b + (x - mx) * (x - mx))
    });
    num / den
}

/// `x_k = 1/k` on coordinates with `a_k ≠ 1`: a `c₀` probe with no fixed
/// component.
fn c0_rate_probe(op: &DiagonalOperator) -> Result<SeqVector> {
    let symbol = op.symbol().clone();
    SeqVector::from_fn(SpaceTag::C0, C64::new(0.0, 0.0), TailCertificate::new(1.0, 1.0)?, move |k| {
        if symbol.angle(k).rem_euclid(TAU) == 0.0 {
            C64::new(0.0, 0.0)
        } else {
            C64::new(1.0 / k.max(1) as f64, 0.0)
        }
    })
}

/// Symbolic verdict for a unimodular diagonal operator.
///
/// On `c₀` every such operator is mean ergodic. On `c` it is mean ergodic iff
/// `a_∞ ≠ 1` when `a_k ≠ 1` infinitely often: with `a_∞ = 1` the limit
/// functional is fixed by the adjoint but vanishes on `fix(T)`.
pub fn diagonal_mean_ergodic_verdict(op: &DiagonalOperator) -> Result<MeanErgodicVerdict> {
    const TOL: f64 = 1e-10;
    let symbol = op.symbol();
    let mut evidence = BTreeMap::new();
    let dop: Operator = op.clone().into();

    if op.space() == SpaceTag::C0 {
        let probe = c0_rate_probe(op)?;
        let mut ns = Vec::new();
        let mut norms = Vec::new();
        for n in EVIDENCE_HORIZONS {
            let a = cesaro(&dop, &Vector::Seq(probe.clone()), n)?;
            let c = sup_norm(a.as_seq().expect("sequence in, sequence out"), TOL)?;
            evidence.insert(format!("probe_cesaro_norm_n{n}"), c.value);
            evidence.insert(format!("probe_cesaro_error_n{n}"), c.error_bound);
            ns.push(n as f64);
            norms.push(c.value + c.error_bound);
        }
        let constant = ns.iter().zip(&norms).map(|(n, y)| n * y).fold(0.0, f64::max);
        evidence.insert("rate_constant".into(), constant);
        evidence.insert("rate_exponent".into(), loglog_slope(&ns, &norms));
        return Ok(MeanErgodicVerdict {
            is_mean_ergodic: true,
            reason: VerdictReason::CesaroConverged,
            evidence,
        });
    }

    let limit_fixed = symbol.limit_angle().rem_euclid(TAU) == 0.0;
    if limit_fixed {
        let fixed_coords = match symbol.shape() {
            // Family symbols satisfy a_k ≠ a_∞ = 1 for every k.
            SymbolShape::Family(_) => 0,
            SymbolShape::Constant { .. } => u64::MAX,
            SymbolShape::Custom => (1..=DIAGONAL_PROBE_PREFIX)
                .filter(|&k| symbol.angle(k).rem_euclid(TAU) == 0.0)
                .count() as u64,
        };
        if fixed_coords == u64::MAX {
            // a ≡ 1: T = I.
            evidence.insert("fix_dim_is_whole_space".into(), 1.0);
            return Ok(MeanErgodicVerdict {
                is_mean_ergodic: true,
                reason: VerdictReason::CesaroConverged,
                evidence,
            });
        }
        evidence.insert("fixed_coordinates".into(), fixed_coords as f64);
        for n in EVIDENCE_HORIZONS {
            let a = cesaro(&dop, &Vector::Seq(SeqVector::one()), n)?;
            let a = a.as_seq().expect("sequence in, sequence out");
            let c = sup_norm(a, TOL)?;
            evidence.insert(format!("one_cesaro_norm_n{n}"), c.value);
            evidence.insert(format!("one_cesaro_error_n{n}"), c.error_bound);
            evidence.insert(format!("one_cesaro_limit_n{n}"), a.limit().norm());
        }
        return Ok(MeanErgodicVerdict {
            is_mean_ergodic: false,
            reason: VerdictReason::LimitFunctionalObstruction,
            evidence,
        });
    }

    // a_∞ ≠ 1: beyond K with angle_tail(K) ≤ |1 − a_∞|/2 every a_k stays
    // |1 − a_∞|/2 away from 1; the finitely many a_k = 1 span fix(T).
    let gap_limit = (C64::new(1.0, 0.0) - symbol.limit_value()).norm();
    let cutoff = symbol.angle_tail().index_for(0.5 * gap_limit)?;
    let mut dist = 0.5 * gap_limit;
    let mut fixed = 0u64;
    for k in 1..=cutoff {
        if symbol.angle(k).rem_euclid(TAU) == 0.0 {
            fixed += 1;
        } else {
            dist = dist.min((C64::new(1.0, 0.0) - symbol.value(k)).norm());
        }
    }
    evidence.insert("fixed_coordinates".into(), fixed as f64);
    evidence.insert("distance_to_one_lower_bound".into(), dist);
    evidence.insert("cesaro_rate_constant".into(), 2.0 / dist);
    for n in EVIDENCE_HORIZONS {
        let a = cesaro(&dop, &Vector::Seq(SeqVector::one()), n)?;
        let c = sup_norm(a.as_seq().expect("sequence in, sequence out"), TOL)?;
        evidence.insert(format!("one_cesaro_norm_n{n}"), c.value);
    }
    Ok(MeanErgodicVerdict {
        is_mean_ergodic: true,
        reason: VerdictReason::CesaroConverged,
        evidence,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionParts {
    pub fix_part: FiniteVector,
    pub range_part: FiniteVector,
    pub residual: f64,
}

/// `x = Px + (x − Px)` with `T(Px) = Px` and `x − Px ∈ rg(I − T)` checked.
pub fn decomposition_check(op: &MatrixOperator, x: &FiniteVector, tol: f64) -> Result<DecompositionParts> {
    let dec = mean_ergodic_projection(op, tol)?;
    decompose(&dec, op, x, tol)
}

pub fn decompose(
    dec: &ErgodicDecomposition,
    op: &MatrixOperator,
    x: &FiniteVector,
    tol: f64,
) -> Result<DecompositionParts> {
    let fix = dec.projection.apply(x)?;
    let range = FiniteVector::new(x.coords() - fix.coords(), x.norm_tag())?;
    let fixed_defect = crate::seqspace::norm_of(&(op.entries() * fix.coords() - fix.coords()), x.norm_tag());
    let ls_defect = if dec.range_basis.is_empty() {
        range.norm()
    } else {
        let q = CMatrix::from_columns(
            &dec.range_basis.iter().map(|v| v.coords().clone()).collect::<Vec<_>>(),
        );
        let projected = &q * (q.adjoint() * range.coords());
        crate::seqspace::norm_of(&(range.coords() - projected), x.norm_tag())
    };
    let residual = fixed_defect.max(ls_defect);
    let scale = 1.0_f64.max(x.norm());
    if residual > tol * scale {
        return Err(Error::DecompositionFailure { residual, tol });
    }
    Ok(DecompositionParts {
        fix_part: fix,
        range_part: range,
        residual,
    })
}
