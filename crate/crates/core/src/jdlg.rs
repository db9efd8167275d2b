//! Splitting into the reversible part (unimodular spectrum, where powers
//! form a bounded group) and the stable part (powers tend to zero), plus
//! peripheral-spectrum checks and the half-sum `½(I + T)`.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ergodic::mean_ergodic_projection;
use crate::linalg::{self, CMatrix, CVector, CLUSTER_RADIUS};
use crate::operators::{DiagonalOperator, MatrixOperator, Operator, SymbolShape};
use crate::orbits::{self, CompactnessReport, Verdict};
use crate::seqspace::{FiniteVector, NormTag, SeqVector, SpaceTag, Vector, C64};

/// Default `N` for the bounded-group surrogate `sup_{|n|≤N} ‖Rⁿ‖`.
pub const GROUP_HORIZON: u64 = 1000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    /// Sorted by decreasing modulus, then argument.
    pub eigenvalues: Vec<C64>,
    /// Eigenvalues with `|λ| ≥ 1 − tol`.
    pub peripheral: Vec<C64>,
    pub semisimple_flags: Vec<bool>,
    pub tol: f64,
}

impl SpectrumReport {
    /// `σ(T) ∩ 𝕋 ⊆ {1}` within tolerance.
    pub fn peripheral_in_one(&self) -> bool {
        self.peripheral
            .iter()
            .all(|l| (l - C64::new(1.0, 0.0)).norm() <= self.tol.max(CLUSTER_RADIUS))
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.first().map_or(0.0, |l| l.norm())
    }
}

fn sort_spectrum(eigs: &mut [C64]) {
    eigs.sort_by(|a, b| {
        b.norm()
            .total_cmp(&a.norm())
            .then(a.arg().rem_euclid(TAU).total_cmp(&b.arg().rem_euclid(TAU)))
    });
}

pub fn spectrum_report(m: &CMatrix, tol: f64) -> SpectrumReport {
    let mut eigenvalues = linalg::eigenvalues(m);
    sort_spectrum(&mut eigenvalues);
    let peripheral: Vec<C64> = eigenvalues
        .iter()
        .copied()
        .filter(|l| l.norm() >= 1.0 - tol)
        .collect();
    let rank_tol = tol.max(1e-10);
    let semisimple_flags = peripheral
        .iter()
        .map(|&l| linalg::is_semisimple(m, l, rank_tol))
        .collect();
    SpectrumReport {
        eigenvalues,
        peripheral,
        semisimple_flags,
        tol,
    }
}

/// `E = E_rev ⊕ E_aws` for a power-bounded matrix.
#[derive(Clone, Debug)]
pub struct JdlgSplit {
    /// Projection onto `E_rev` along `E_aws`.
    pub projection: CMatrix,
    /// Orthonormal columns spanning `E_rev`.
    pub rev_basis: CMatrix,
    /// Orthonormal columns spanning `E_aws`.
    pub aws_basis: CMatrix,
    /// `T` restricted to `E_rev` in the `rev_basis` coordinates.
    pub rev_action: CMatrix,
    pub aws_spectral_radius: f64,
    /// `sup_{|n| ≤ GROUP_HORIZON} ‖rev_actionⁿ‖₂`.
    pub rev_power_sup: f64,
    /// Condition number of an eigenbasis of `rev_action`, which bounds every
    /// power of it.
    pub rev_condition: f64,
    pub rev_eigenvalues: Vec<C64>,
    /// `max(‖P² − P‖, ‖TP − PT‖)`.
    pub residual: f64,
}

impl JdlgSplit {
    pub fn rev_dim(&self) -> usize {
        self.rev_basis.ncols()
    }

    pub fn aws_dim(&self) -> usize {
        self.aws_basis.ncols()
    }

    pub fn rev_vectors(&self, tag: NormTag) -> Result<Vec<FiniteVector>> {
        columns(&self.rev_basis, tag)
    }

    pub fn aws_vectors(&self, tag: NormTag) -> Result<Vec<FiniteVector>> {
        columns(&self.aws_basis, tag)
    }

    /// The reversible part acts as a bounded group.
    pub fn group_bounded(&self) -> bool {
        self.rev_power_sup <= self.rev_condition * (1.0 + 1e-6) + 1e-9
    }
}

fn columns(m: &CMatrix, tag: NormTag) -> Result<Vec<FiniteVector>> {
    (0..m.ncols())
        .map(|j| FiniteVector::new(m.column(j).into_owned(), tag))
        .collect()
}

fn require_power_bounded(m: &CMatrix, tol: f64) -> Result<linalg::SpectralCertificate> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let cert = linalg::certify_power_bounded(m, tol);
    if !cert.power_bounded {
        return Err(Error::NotPowerBounded(cert.reason));
    }
    Ok(cert)
}

pub fn jdlg_split(op: &MatrixOperator, tol: f64) -> Result<JdlgSplit> {
    let t = op.entries();
    let n = op.dim();
    let cert = require_power_bounded(t, tol)?;
    let rank_tol = tol.max(1e-10);
    let mut projection = CMatrix::zeros(n, n);
    for cluster in &cert.peripheral {
        let p = linalg::eigenprojection(t, cluster.center, rank_tol).ok_or_else(|| {
            Error::NotPowerBounded(format!("peripheral eigenvalue {} is defective", cluster.center))
        })?;
        projection += p;
    }
    let scale = 1.0_f64.max(linalg::max_abs(&projection));
    let residual = linalg::max_abs(&(&projection * &projection - &projection))
        .max(linalg::max_abs(&(t * &projection - &projection * t)));
    if residual > tol * scale {
        return Err(Error::ProjectionDefect { defect: residual, tol });
    }
    let rev_basis = linalg::column_space(&projection, rank_tol);
    let aws_basis = linalg::column_space(&(linalg::identity(n) - &projection), rank_tol);
    if rev_basis.ncols() + aws_basis.ncols() != n {
        return Err(Error::DecompositionFailure {
            residual: (rev_basis.ncols() + aws_basis.ncols()) as f64 - n as f64,
            tol,
        });
    }
    let rev_action = rev_basis.adjoint() * t * &rev_basis;

    let eigs = linalg::eigenvalues(t);
    let aws_spectral_radius = eigs
        .iter()
        .map(|l| l.norm())
        .filter(|&r| r < 1.0 - tol)
        .fold(0.0, f64::max);

    let mut rev_eigenvalues = linalg::eigenvalues(&rev_action);
    sort_spectrum(&mut rev_eigenvalues);
    let (rev_power_sup, rev_condition) = if rev_action.nrows() == 0 {
        (0.0, 1.0)
    } else {
        let mut eigvecs: Vec<CVector> = Vec::new();
        for cluster in linalg::cluster_eigenvalues(&rev_eigenvalues, CLUSTER_RADIUS.max(tol)) {
            let shifted = &rev_action - linalg::identity(rev_action.nrows()) * cluster.center;
            let k = linalg::null_space(&shifted, rank_tol);
            eigvecs.extend(k.column_iter().map(|c| c.into_owned()));
        }
        let w = CMatrix::from_columns(&eigvecs);
        let sv = linalg::singular_values(&w);
        let condition = if sv.len() == rev_action.nrows() && sv[sv.len() - 1] > 0.0 {
            sv[0] / sv[sv.len() - 1]
        } else {
            f64::INFINITY
        };
        let inverse = linalg::inverse(&rev_action)
            .ok_or_else(|| Error::NotPowerBounded("reversible part is not invertible".into()))?;
        let mut sup: f64 = 1.0;
        let (mut fwd, mut bwd) = (linalg::identity(rev_action.nrows()), linalg::identity(rev_action.nrows()));
        for _ in 0..GROUP_HORIZON {
            fwd = &fwd * &rev_action;
            bwd = &bwd * &inverse;
            sup = sup.max(linalg::operator_norm(&fwd, NormTag::Euclidean));
            sup = sup.max(linalg::operator_norm(&bwd, NormTag::Euclidean));
        }
        (sup, condition)
    };

    Ok(JdlgSplit {
        projection,
        rev_basis,
        aws_basis,
        rev_action,
        aws_spectral_radius,
        rev_power_sup,
        rev_condition,
        rev_eigenvalues,
        residual,
    })
}

#[derive(Clone, Debug)]
pub struct KtzReport {
    /// `‖Tⁿ(I − T)‖` for `n = 0..=horizon`.
    pub decay_curve: Vec<f64>,
    /// `‖Tⁿ − P‖` for `n = 0..=horizon`, `P` the mean-ergodic projection.
    pub convergence_curve: Vec<f64>,
    pub limit_projection: CMatrix,
    pub spectrum: SpectrumReport,
    pub pass: bool,
}

fn eventually_nonincreasing(curve: &[f64]) -> bool {
    let start = curve.len() - curve.len().div_ceil(4);
    curve[start..]
        .windows(2)
        .all(|w| w[1] <= w[0] * (1.0 + 1e-9) + 1e-15)
}

/// For power-bounded `T` with `σ(T) ∩ 𝕋 ⊆ {1}`: `‖Tⁿ(I − T)‖ → 0` and
/// `Tⁿ → P` in norm. Passes when both curves are eventually nonincreasing,
/// the decay ends at most `tol` and `‖Tⁿ − P‖` ends within `‖Z‖·tol`, the
/// bound implied by `Tⁿ − P = Tⁿ(I − T)Z`.
pub fn ktz_check(op: &MatrixOperator, horizon: u64, tol: f64) -> Result<KtzReport> {
    if horizon == 0 {
        return Err(Error::InvalidArgument("horizon must be ≥ 1".into()));
    }
    let t = op.entries();
    require_power_bounded(t, tol)?;
    let spectrum = spectrum_report(t, tol);
    if !spectrum.peripheral_in_one() {
        return Err(Error::PeripheralSpectrum(format!(
            "peripheral spectrum {:?} is not contained in {{1}}",
            spectrum.peripheral
        )));
    }
    let dec = mean_ergodic_projection(op, tol)?;
    let p = dec.projection.entries().clone();
    let diff = linalg::identity(op.dim()) - t;
    let mut power = linalg::identity(op.dim());
    let mut decay_curve = Vec::with_capacity(horizon as usize + 1);
    let mut convergence_curve = Vec::with_capacity(horizon as usize + 1);
    for _ in 0..=horizon {
        decay_curve.push(op.norm_of(&(&power * &diff)));
        convergence_curve.push(op.norm_of(&(&power - &p)));
        power = &power * t;
    }
    let decay_end = *decay_curve.last().expect("nonempty");
    let conv_end = *convergence_curve.last().expect("nonempty");
    let pass = eventually_nonincreasing(&decay_curve)
        && eventually_nonincreasing(&convergence_curve)
        && decay_end <= tol
        && conv_end <= dec.oblique_factor.max(1.0) * tol;
    Ok(KtzReport {
        decay_curve,
        convergence_curve,
        limit_projection: p,
        spectrum,
        pass,
    })
}

#[derive(Clone, Debug)]
pub struct PeripheralCheck {
    pub almost_periodic: bool,
    pub split: JdlgSplit,
    /// `‖T^N (I − P)‖` at the decay horizon `N`.
    pub aws_decay: f64,
    pub decay_horizon: u64,
    /// Orbit diagnostics of seeded random vectors.
    pub orbit_reports: Vec<CompactnessReport>,
}

/// Finite peripheral spectrum: almost periodic when the split spans, the
/// stable part decays and orbit diagnostics of random vectors saturate.
pub fn countable_peripheral_check(op: &MatrixOperator, tol: f64, seed: u64) -> Result<PeripheralCheck> {
    let split = jdlg_split(op, tol)?;
    let n = op.dim();
    let r = split.aws_spectral_radius;
    let decay_horizon = if r <= 0.0 {
        n as u64
    } else {
        ((tol.ln() / r.ln()).ceil() as u64).clamp(1, 100_000) + n as u64
    };
    let aws = linalg::identity(n) - &split.projection;
    let aws_decay = op.norm_of(&(linalg::power(op.entries(), decay_horizon) * aws));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let operator: Operator = op.clone().into();
    let mut orbit_reports = Vec::new();
    for _ in 0..3 {
        let v = CVector::from_fn(n, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let x = FiniteVector::new(v, op.norm_tag())?;
        let eps = 0.25 * x.norm();
        orbit_reports.push(orbits::compactness_diagnostic(
            &operator,
            &Vector::Finite(x),
            &[eps],
            &[100, 200, 400, 800],
            tol.max(1e-12),
        )?);
    }
    let almost_periodic = split.rev_dim() + split.aws_dim() == n
        && aws_decay <= 1e-6
        && split.group_bounded()
        && orbit_reports.iter().all(|r| r.verdict == Verdict::Saturating);
    Ok(PeripheralCheck {
        almost_periodic,
        split,
        aws_decay,
        decay_horizon,
        orbit_reports,
    })
}

#[derive(Clone, Debug)]
pub struct HalfSum {
    pub s: MatrixOperator,
    pub spectrum: SpectrumReport,
    /// `σ(S) ∩ 𝕋 ⊆ {1}` within tolerance and `ρ(S) < 1 + tol`.
    pub peripheral_in_one: bool,
}

/// `S = ½(I + T)` for a contraction `T`.
pub fn half_sum(op: &MatrixOperator, tol: f64) -> Result<HalfSum> {
    let norm = op.operator_norm();
    if norm > 1.0 + tol {
        return Err(Error::NotContraction { norm, tol });
    }
    let s = (linalg::identity(op.dim()) + op.entries()) * C64::new(0.5, 0.0);
    let spectrum = spectrum_report(&s, tol);
    let peripheral_in_one = spectrum.spectral_radius() < 1.0 + tol
        && spectrum.eigenvalues.iter().all(|l| {
            l.norm() < 1.0 - tol || (l - C64::new(1.0, 0.0)).norm() <= tol
        });
    Ok(HalfSum {
        s: MatrixOperator::new(s, op.norm_tag())?,
        spectrum,
        peripheral_in_one,
    })
}

/// Spectrum samples of `½(I + T)` for a diagonal `T`: `(1 + a_k)/2` for
/// `k ≤ prefix` and `(1 + a_∞)/2`.
pub fn half_sum_diagonal(op: &DiagonalOperator, prefix: u64, tol: f64) -> Result<SpectrumReport> {
    if prefix == 0 {
        return Err(Error::InvalidArgument("prefix must be ≥ 1".into()));
    }
    let half = |a: C64| (C64::new(1.0, 0.0) + a) * 0.5;
    let mut eigenvalues: Vec<C64> = (1..=prefix).map(|k| half(op.symbol().value(k))).collect();
    eigenvalues.push(half(op.symbol().limit_value()));
    sort_spectrum(&mut eigenvalues);
    let peripheral: Vec<C64> = eigenvalues.iter().copied().filter(|l| l.norm() >= 1.0 - tol).collect();
    let semisimple_flags = vec![true; peripheral.len()];
    Ok(SpectrumReport {
        eigenvalues,
        peripheral,
        semisimple_flags,
        tol,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AapSpace {
    C0,
    WholeSpace,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagonalJdlgReport {
    pub aap_description: String,
    pub aap: AapSpace,
    pub rev_equals_aap: bool,
    pub p_is_identity_on_aap: bool,
    /// Orbit of `e₁ + e₂` (in `c₀`).
    pub c0_probe: CompactnessReport,
    /// Orbit of `𝟙`.
    pub one_probe: CompactnessReport,
    /// The numeric diagnostics agree with the symbolic description.
    pub cross_check_consistent: bool,
}

/// Symbolic almost-periodic part for the supported symbol families.
pub fn diagonal_jdlg(op: &DiagonalOperator) -> Result<DiagonalJdlgReport> {
    const TOL: f64 = 1e-8;
    let horizons = [100, 200, 400, 800];
    let (aap, aap_description) = match op.symbol().shape() {
        SymbolShape::Family(f) => {
            if op.space() == SpaceTag::C0 {
                (
                    AapSpace::C0,
                    format!("E_aap = E_rev = c0 (whole space); symbol -> e^(2 pi i/{}), a_k != a_inf", f.m()),
                )
            } else {
                (
                    AapSpace::C0,
                    format!(
                        "E_aap = E_rev = c0, a proper subspace of c; symbol -> e^(2 pi i/{}), a_k != a_inf",
                        f.m()
                    ),
                )
            }
        }
        SymbolShape::Constant { angle } => (
            AapSpace::WholeSpace,
            format!("E_aap = E_rev = whole space; T is the rotation by angle {angle}"),
        ),
        SymbolShape::Custom => {
            return Err(Error::UnsupportedSymbol(
                "diagonal_jdlg only covers harmonic, root-perturbed and constant symbols".into(),
            ))
        }
    };
    let dop: Operator = op.clone().into();
    let one = C64::new(1.0, 0.0);
    let probe = SeqVector::from_prefix(SpaceTag::C0, &[one, one], C64::new(0.0, 0.0))?;
    let c0_probe = orbits::compactness_diagnostic(&dop, &Vector::Seq(probe), &[1.0], &horizons, TOL)?;
    let one_probe = if op.space() == SpaceTag::C {
        orbits::compactness_diagnostic(&dop, &Vector::Seq(SeqVector::one()), &[1.0], &horizons, TOL)?
    } else {
        // 𝟙 ∉ c₀; the c₀ probe is the only meaningful one.
        c0_probe.clone()
    };
    let expect_one = match (aap, op.space()) {
        (AapSpace::C0, SpaceTag::C) => Verdict::Growing,
        _ => Verdict::Saturating,
    };
    let cross_check_consistent =
        c0_probe.verdict == Verdict::Saturating && one_probe.verdict == expect_one;
    Ok(DiagonalJdlgReport {
        aap_description,
        aap,
        rev_equals_aap: true,
        p_is_identity_on_aap: true,
        c0_probe,
        one_probe,
        cross_check_consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::SymbolFamily;
    use crate::operators::DiagonalSymbol;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn diag(entries: &[C64]) -> MatrixOperator {
        MatrixOperator::from_diagonal(entries, NormTag::Euclidean).unwrap()
    }

    fn dmat(entries: &[C64]) -> CMatrix {
        CMatrix::from_diagonal(&CVector::from_column_slice(entries))
    }

    #[test]
    fn split_of_diagonal() {
        let s = jdlg_split(&diag(&[c(1.0, 0.0), c(0.0, 1.0), c(0.5, 0.0)]), 1e-9).unwrap();
        assert!(linalg::max_abs(&(&s.projection - dmat(&[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]))) < 1e-10);
        assert!((s.aws_spectral_radius - 0.5).abs() < 1e-12);
        assert_eq!((s.rev_dim(), s.aws_dim()), (2, 1));
        assert!(s.group_bounded());
    }

    #[test]
    fn split_of_identity_and_contraction() {
        let s = jdlg_split(&MatrixOperator::identity(3, NormTag::Euclidean), 1e-9).unwrap();
        assert_eq!(s.aws_dim(), 0);
        assert!(linalg::max_abs(&(&s.projection - linalg::identity(3))) < 1e-10);
        let s = jdlg_split(&diag(&[c(0.5, 0.0), c(0.0, 0.3)]), 1e-9).unwrap();
        assert_eq!(linalg::max_abs(&s.projection), 0.0);
        assert_eq!(s.rev_dim(), 0);
    }

    #[test]
    fn ktz_on_diag() {
        let r = ktz_check(&diag(&[c(1.0, 0.0), c(0.9, 0.0)]), 200, 1e-9).unwrap();
        for (n, d) in r.decay_curve.iter().enumerate() {
            assert!((d - 0.1 * 0.9f64.powi(n as i32)).abs() < 1e-12);
        }
        assert!(linalg::max_abs(&(&r.limit_projection - dmat(&[c(1.0, 0.0), c(0.0, 0.0)]))) < 1e-12);
        assert!(r.pass);
    }

    #[test]
    fn ktz_identity_and_jordan() {
        let r = ktz_check(&MatrixOperator::identity(2, NormTag::Euclidean), 10, 1e-9).unwrap();
        assert!(r.decay_curve.iter().all(|&d| d == 0.0));
        let j = MatrixOperator::new(
            CMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)]),
            NormTag::Euclidean,
        )
        .unwrap();
        let r = ktz_check(&j, 200, 1e-9).unwrap();
        assert!(r.pass);
        assert!(linalg::max_abs(&r.limit_projection) < 1e-12);
    }

    #[test]
    fn ktz_preconditions() {
        let jordan_at_one = MatrixOperator::new(
            CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]),
            NormTag::Euclidean,
        )
        .unwrap();
        assert!(matches!(ktz_check(&jordan_at_one, 10, 1e-9), Err(Error::NotPowerBounded(_))));
        assert!(matches!(ktz_check(&diag(&[c(-1.0, 0.0)]), 10, 1e-9), Err(Error::PeripheralSpectrum(_))));
    }

    #[test]
    fn peripheral_checks() {
        let r = countable_peripheral_check(
            &diag(&[c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.3, 0.0)]),
            1e-9,
            7,
        )
        .unwrap();
        assert!(r.almost_periodic, "{:?}", r.orbit_reports.iter().map(|o| &o.packing_numbers).collect::<Vec<_>>());

        let theta = 2.0_f64.sqrt();
        let rot = MatrixOperator::new(
            CMatrix::from_row_slice(
                2,
                2,
                &[c(theta.cos(), 0.0), c(-theta.sin(), 0.0), c(theta.sin(), 0.0), c(theta.cos(), 0.0)],
            ),
            NormTag::Euclidean,
        )
        .unwrap();
        assert!(countable_peripheral_check(&rot, 1e-9, 7).unwrap().almost_periodic);
        assert!(countable_peripheral_check(&diag(&[c(2.0, 0.0)]), 1e-9, 7).is_err());
    }

    #[test]
    fn half_sums() {
        let h = half_sum(&diag(&[c(-1.0, 0.0), c(-1.0, 0.0)]), 1e-9).unwrap();
        assert!(h.spectrum.eigenvalues.iter().all(|l| l.norm() < 1e-15));
        let h = half_sum(&MatrixOperator::identity(2, NormTag::Euclidean), 1e-9).unwrap();
        assert!(h.spectrum.eigenvalues.iter().all(|l| (l - c(1.0, 0.0)).norm() < 1e-15));
        assert!(h.peripheral_in_one);
        let theta = 0.7;
        let h = half_sum(&diag(&[C64::from_polar(1.0, theta)]), 1e-9).unwrap();
        assert!((h.spectrum.eigenvalues[0].norm() - (theta / 2.0).cos().abs()).abs() < 1e-14);
        assert!(h.peripheral_in_one);
        assert!(matches!(half_sum(&diag(&[c(1.5, 0.0)]), 1e-9), Err(Error::NotContraction { .. })));
    }

    #[test]
    fn diagonal_half_sum() {
        let op = SymbolFamily::harmonic().operator(SpaceTag::C).unwrap();
        let r = half_sum_diagonal(&op, 100, 1e-9).unwrap();
        assert!(r.peripheral_in_one());
        assert_eq!(r.eigenvalues.len(), 101);
    }

    #[test]
    fn diagonal_jdlg_families() {
        let op = SymbolFamily::harmonic().operator(SpaceTag::C).unwrap();
        let r = diagonal_jdlg(&op).unwrap();
        assert_eq!(r.aap, AapSpace::C0);
        assert!(r.p_is_identity_on_aap && r.rev_equals_aap);
        assert!(r.cross_check_consistent, "{:?} {:?}", r.c0_probe.packing_numbers, r.one_probe.packing_numbers);

        let op = SymbolFamily::root_perturbed(2, 1.0).unwrap().operator(SpaceTag::C).unwrap();
        let r = diagonal_jdlg(&op).unwrap();
        assert!(r.cross_check_consistent, "{:?} {:?}", r.c0_probe.packing_numbers, r.one_probe.packing_numbers);

        let rot = DiagonalOperator::new(DiagonalSymbol::constant(2.0 * PI / 5.0), SpaceTag::C);
        let r = diagonal_jdlg(&rot).unwrap();
        assert_eq!(r.aap, AapSpace::WholeSpace);
        assert!(r.cross_check_consistent, "{:?} {:?}", r.c0_probe.packing_numbers, r.one_probe.packing_numbers);

        let custom = DiagonalSymbol::custom(0.0, crate::seqspace::TailCertificate::new(1.0, 2.0).unwrap(), |k| {
            1.0 / (k * k) as f64
        })
        .unwrap();
        let op = DiagonalOperator::new(custom, SpaceTag::C);
        assert!(matches!(diagonal_jdlg(&op), Err(Error::UnsupportedSymbol(_))));
    }
}
