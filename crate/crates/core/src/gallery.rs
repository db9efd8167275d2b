//! Counterexample operators: unimodular diagonal symbols converging to a
//! root of unity, on `c` and `c₀`.

use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::ergodic::{diagonal_mean_ergodic_verdict, MeanErgodicVerdict};
use crate::error::{Error, Result};
use crate::operators::{DiagonalOperator, DiagonalSymbol, SymbolShape};
use crate::orbits::{self, CompactnessReport};
use crate::seqspace::{sup_norm, SeqVector, SpaceTag, TailCertificate, Vector, C64};

/// `θ_k = 2π/m + π/k^p`, converging to the `m`th root of unity `e^{2πi/m}`.
/// `m = 1, p = 1` is the harmonic symbol `θ_k = π/k`. Arbitrary symbols go
/// through [`DiagonalSymbol::custom`] instead.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SymbolFamily {
    Harmonic,
    RootPerturbed { m: u32, p: f64 },
}

impl SymbolFamily {
    pub fn harmonic() -> Self {
        SymbolFamily::Harmonic
    }

    pub fn root_perturbed(m: u32, p: f64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("root order m must be ≥ 1".into()));
        }
        if !(p > 0.0 && p.is_finite()) {
            return Err(Error::InvalidArgument(format!("rate p must be positive, got {p}")));
        }
        Ok(SymbolFamily::RootPerturbed { m, p })
    }

    pub fn m(&self) -> u32 {
        match *self {
            SymbolFamily::Harmonic => 1,
            SymbolFamily::RootPerturbed { m, .. } => m,
        }
    }

    pub fn p(&self) -> f64 {
        match *self {
            SymbolFamily::Harmonic => 1.0,
            SymbolFamily::RootPerturbed { p, .. } => p,
        }
    }

    /// `2π/m` reduced to `[0, 2π)`.
    pub fn limit_angle(&self) -> f64 {
        (TAU / self.m() as f64).rem_euclid(TAU)
    }

    pub fn symbol(&self) -> DiagonalSymbol {
        let base = self.limit_angle();
        let p = self.p();
        let angle: Arc<dyn Fn(u64) -> f64 + Send + Sync> = if p == 1.0 {
            Arc::new(move |k| base + PI / k.max(1) as f64)
        } else {
            Arc::new(move |k| base + PI / (k.max(1) as f64).powf(p))
        };
        let tail = TailCertificate::new(PI, p).expect("p validated positive");
        DiagonalSymbol::build(angle, base, tail, SymbolShape::Family(*self))
            .expect("finite limit angle")
    }

    pub fn operator(&self, space: SpaceTag) -> Result<DiagonalOperator> {
        Ok(DiagonalOperator::new(self.symbol(), space))
    }
}

/// The isometry on `c` whose symbol converges to 1 without ever equalling 1.
pub fn example_3_3(family: SymbolFamily) -> Result<DiagonalOperator> {
    if family.m() != 1 {
        return Err(Error::InvalidArgument(format!(
            "example_3_3 needs m = 1, got m = {}; use example_4_3",
            family.m()
        )));
    }
    family.operator(SpaceTag::C)
}

/// The isometry on `c` whose symbol converges to a nontrivial `m`th root of
/// unity.
pub fn example_4_3(family: SymbolFamily) -> Result<DiagonalOperator> {
    if family.m() < 2 {
        return Err(Error::InvalidArgument(
            "example_4_3 needs m ≥ 2; m = 1 is example_3_3".into(),
        ));
    }
    family.operator(SpaceTag::C)
}

/// Horizons, epsilons and tolerance for the orbit diagnostics in an audit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticPlan {
    pub horizons: Vec<u64>,
    /// Used where an orbit is expected to grow.
    pub growth_epsilon: f64,
    /// Used where an orbit is expected to saturate.
    pub saturation_epsilon: f64,
    pub tol: f64,
}

impl Default for DiagnosticPlan {
    fn default() -> Self {
        DiagnosticPlan {
            horizons: vec![100, 200, 400],
            growth_epsilon: 1.0,
            saturation_epsilon: 1.0,
            tol: 1e-8,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Example33Audit {
    /// `max |‖Tⁿv‖ − ‖v‖|` over probes and sampled `n ≤ 10³`.
    pub isometry_defect: f64,
    /// No `k` with `a_k = 1`, so `fix(T) = {0}`.
    pub fix_trivial: bool,
    pub verdict: MeanErgodicVerdict,
    /// `|lim (I − Tⁿ)𝟙|` for `n = 1..=8`.
    pub difference_limits: Vec<f64>,
    pub orbit_of_one: CompactnessReport,
    pub difference_orbit_of_one: CompactnessReport,
    /// Orbit of the `c₀` probe `e₁ + e₂ + e₃`.
    pub orbit_of_c0_probe: CompactnessReport,
    /// Packing of the orbit `{±e₁}` at ε = 1.
    pub e1_packing: usize,
}

fn isometry_defect(op: &DiagonalOperator, probes: &[SeqVector], tol: f64) -> Result<f64> {
    let mut worst = 0.0_f64;
    for v in probes {
        let base = sup_norm(v, tol)?;
        for n in [1u64, 2, 7, 64, 333, 1000] {
            let image = sup_norm(&op.power_apply(n, v)?, tol)?;
            let gap = (image.value - base.value).abs() - image.error_bound - base.error_bound;
            worst = worst.max(gap.max(0.0));
        }
    }
    Ok(worst)
}

pub fn c0_probe() -> SeqVector {
    let one = C64::new(1.0, 0.0);
    SeqVector::from_prefix(SpaceTag::C0, &[one, one, one], C64::new(0.0, 0.0))
        .expect("finite prefix")
}

/// `𝟙 − (a_k) = (I − T)𝟙`.
pub fn one_minus_symbol(op: &DiagonalOperator) -> Result<SeqVector> {
    op.power_difference(0, 1, &SeqVector::one())
}

pub fn audit_example_3_3(op: &DiagonalOperator, plan: &DiagnosticPlan) -> Result<Example33Audit> {
    let one = SeqVector::one();
    let e1 = SeqVector::unit(1)?;
    let probes = [one.clone(), e1.clone(), c0_probe()];
    let isometry_defect = isometry_defect(op, &probes, plan.tol)?;
    let fix_trivial = matches!(op.symbol().shape(), SymbolShape::Family(f) if f.m() == 1);
    let verdict = diagonal_mean_ergodic_verdict(op)?;
    let difference_limits = (1..=8)
        .map(|n| Ok(op.power_difference(0, n, &one)?.limit().norm()))
        .collect::<Result<Vec<_>>>()?;
    let dop = op.clone().into();
    let orbit_of_one = orbits::compactness_diagnostic(
        &dop,
        &Vector::Seq(one.clone()),
        &[plan.growth_epsilon],
        &plan.horizons,
        plan.tol,
    )?;
    let difference_orbit_of_one = orbits::difference_diagnostic(
        &dop,
        &Vector::Seq(one),
        1,
        &[plan.saturation_epsilon],
        &plan.horizons,
        plan.tol,
    )?;
    let orbit_of_c0_probe = orbits::compactness_diagnostic(
        &dop,
        &Vector::Seq(c0_probe()),
        &[plan.saturation_epsilon],
        &plan.horizons,
        plan.tol,
    )?;
    let e1_cloud = orbits::orbit(&dop, &Vector::Seq(e1), 50)?;
    let e1_packing = orbits::packing_number(&e1_cloud, 1.0, plan.tol)?;
    Ok(Example33Audit {
        isometry_defect,
        fix_trivial,
        verdict,
        difference_limits,
        orbit_of_one,
        difference_orbit_of_one,
        orbit_of_c0_probe,
        e1_packing,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Example43Audit {
    pub m: u32,
    /// `lim (𝟙 − (a_k)) = 1 − ξ`.
    pub limit_one_minus_symbol: C64,
    /// `lim (I − T^m)𝟙 = 1 − ξ^m = 0`.
    pub limit_range_vector: C64,
    /// Orbit of `(I − T^m)𝟙`.
    pub orbit_of_range_vector: CompactnessReport,
    /// Orbit of `𝟙 − (a_k) ∈ rg(I − T)`.
    pub orbit_of_one_minus_symbol: CompactnessReport,
}

pub fn audit_example_4_3(op: &DiagonalOperator, plan: &DiagnosticPlan) -> Result<Example43Audit> {
    let m = match op.symbol().shape() {
        SymbolShape::Family(f) if f.m() >= 2 => f.m(),
        _ => {
            return Err(Error::NotApplicable(
                "audit_example_4_3 needs a root-perturbed symbol with m ≥ 2".into(),
            ))
        }
    };
    let one = SeqVector::one();
    let range_vector = op.power_difference(0, m as i64, &one)?;
    let x = one_minus_symbol(op)?;
    let dop = op.clone().into();
    let orbit_of_range_vector = orbits::difference_diagnostic(
        &dop,
        &Vector::Seq(one),
        m as u64,
        &[plan.saturation_epsilon],
        &plan.horizons,
        plan.tol,
    )?;
    let orbit_of_one_minus_symbol = orbits::compactness_diagnostic(
        &dop,
        &Vector::Seq(x.clone()),
        &[plan.growth_epsilon],
        &plan.horizons,
        plan.tol,
    )?;
    Ok(Example43Audit {
        m,
        limit_one_minus_symbol: x.limit(),
        limit_range_vector: range_vector.limit(),
        orbit_of_range_vector,
        orbit_of_one_minus_symbol,
    })
}
