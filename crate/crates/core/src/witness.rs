//! Extraction of a `c₀`-ladder from a non-compact orbit of a diagonal
//! isometry whose difference orbits are compact, and the subset-sum test
//! that recognises such ladders.
//!
//! For a unimodular diagonal `T` with `P = I` on the almost-periodic part,
//! a pair `(S, T') = (Tˢ, Tᵗ)` enters only through its gap `D = s − t`:
//! `x_m = T'^{−1}(T'x − Sx) = (I − T^D)x`, and every smallness condition is a
//! norm of `(T^D − I)(T^Δ − I)x` because `T` is an isometry.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::jdlg::diagonal_jdlg;
use crate::operators::{DiagonalOperator, Operator};
use crate::orbits::{self, Verdict};
use crate::seqspace::{lin_comb, sup_norm, Certified, SeqVector, SpaceTag, Vector, C64};

/// Minimum number of random subsets in an audit.
pub const MIN_SUBSET_SAMPLES: usize = 200;
pub const HISTOGRAM_BINS: usize = 10;

/// Orbit-separation threshold for the greedy pool of exponents.
pub const POOL_SEPARATION: f64 = 1.0;

/// Horizons and ε used to check the orbit preconditions.
const PRECONDITION_HORIZONS: [u64; 3] = [100, 200, 400];
const PRECONDITION_EPSILON: f64 = 1.0;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectedPair {
    /// Exponent of `S_m`.
    pub s: u64,
    /// Exponent of `T_m`.
    pub t: u64,
}

impl SelectedPair {
    pub fn gap(&self) -> u64 {
        self.s - self.t
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubsetStats {
    pub samples: usize,
    pub seed: u64,
    pub max_norm: f64,
    /// `1 + 2M‖x‖`.
    pub bound: f64,
    pub within_bound: usize,
    /// Counts over `[0, bound]` in [`HISTOGRAM_BINS`] equal bins; the last
    /// bin also collects values above the bound.
    pub histogram: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessAudit {
    /// Certified minimum of `‖P(Sx − Tx)‖` over distinct pool members.
    pub delta: f64,
    /// `sup ‖S‖ + 1`.
    pub m_bound: f64,
    pub x_norm: f64,
    #[serde(skip)]
    pub ladder: Vec<SeqVector>,
    pub ladder_norms: Vec<Certified>,
    pub selection_log: Vec<SelectedPair>,
    pub subset_sums: SubsetStats,
    pub pool_size: usize,
    pub requested: usize,
    pub horizon: u64,
    /// Every ladder norm is at least `δ/M − tol`, so `Σ x_m` cannot converge.
    pub series_diverges: bool,
    pub index_zero_reading: String,
}

impl WitnessAudit {
    pub fn all_norms_at_least(&self, bound: f64) -> bool {
        self.ladder_norms.iter().all(|c| c.value - c.error_bound >= bound)
    }
}

/// Random index subsets, sizes uniform in `1..=count`.
fn sample_subsets(count: usize, samples: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let size = rng.gen_range(1..=count);
            let mut picked = index::sample(&mut rng, count, size).into_vec();
            picked.sort_unstable();
            picked
        })
        .collect()
}

fn subset_norms(vectors: &[SeqVector], subsets: &[Vec<usize>], tol: f64, exec: Execution) -> Result<Vec<Certified>> {
    exec.map_slice(subsets, |subset| {
        let members: Vec<SeqVector> = subset.iter().map(|&i| vectors[i].clone()).collect();
        let ones = vec![C64::new(1.0, 0.0); members.len()];
        sup_norm(&lin_comb(&ones, &members)?, tol)
    })
    .into_iter()
    .collect()
}

fn histogram(values: &[f64], bound: f64) -> Vec<usize> {
    let mut bins = vec![0; HISTOGRAM_BINS];
    for &v in values {
        let i = ((v / bound) * HISTOGRAM_BINS as f64).floor();
        let i = if i.is_finite() && i >= 0.0 { i as usize } else { 0 };
        bins[i.min(HISTOGRAM_BINS - 1)] += 1;
    }
    bins
}

#[derive(Clone, Debug)]
pub struct WitnessOptions {
    pub samples: usize,
    pub seed: u64,
    pub execution: Execution,
}

impl Default for WitnessOptions {
    fn default() -> Self {
        WitnessOptions {
            samples: MIN_SUBSET_SAMPLES,
            seed: 0,
            execution: Execution::default(),
        }
    }
}

/// Runs the inductive ladder construction up to `count` rungs using
/// exponents `0..=horizon`.
///
/// Pair `m+1` must satisfy `‖(S − T)(∏S_i − ∏T_i)x‖ ≤ 1/(2^{m+1}M)` for every
/// product over a subset of the pairs chosen so far; the empty product
/// contributes the zero vector. Stops with
/// [`Error::HorizonExhausted`] carrying the partial audit if no admissible
/// pair exists within the horizon.
pub fn c0_witness(
    op: &DiagonalOperator,
    x: &SeqVector,
    count: usize,
    horizon: u64,
    tol: f64,
    options: &WitnessOptions,
) -> Result<WitnessAudit> {
    if count == 0 || horizon == 0 {
        return Err(Error::InvalidArgument("count and horizon must be ≥ 1".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    if options.samples < MIN_SUBSET_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "need at least {MIN_SUBSET_SAMPLES} subset samples, got {}",
            options.samples
        )));
    }
    let jdlg = diagonal_jdlg(op).map_err(|e| Error::NotApplicable(format!("no certified projection: {e}")))?;
    if !jdlg.p_is_identity_on_aap {
        return Err(Error::NotApplicable("P is not certified to be the identity".into()));
    }
    let dop: Operator = op.clone().into();
    let xv = Vector::Seq(x.clone());
    let orbit_report = orbits::compactness_diagnostic(
        &dop,
        &xv,
        &[PRECONDITION_EPSILON],
        &PRECONDITION_HORIZONS,
        tol,
    )?;
    if orbit_report.verdict != Verdict::Growing {
        return Err(Error::NotApplicable(format!(
            "orbit of x is not growing (verdict {}, packing {:?})",
            orbit_report.verdict, orbit_report.packing_numbers[0]
        )));
    }
    let diff_report = orbits::difference_diagnostic(
        &dop,
        &xv,
        1,
        &[PRECONDITION_EPSILON],
        &PRECONDITION_HORIZONS,
        tol,
    )?;
    if diff_report.verdict != Verdict::Saturating {
        return Err(Error::NotApplicable(format!(
            "difference orbit is not saturating (verdict {}, packing {:?})",
            diff_report.verdict, diff_report.packing_numbers[0]
        )));
    }

    let m_bound = 2.0;
    let x_norm = sup_norm(x, tol)?;
    let gaps = orbits::gap_norms(op, x, horizon, tol, options.execution)?;

    // Greedy separated pool of exponents; distances depend on gaps only.
    let mut pool: Vec<u64> = Vec::new();
    for n in 0..=horizon {
        if pool
            .iter()
            .all(|&p| gaps[(n - p) as usize].certainly_above(POOL_SEPARATION))
        {
            pool.push(n);
        }
    }
    let mut has_gap = vec![false; horizon as usize + 1];
    for (i, &a) in pool.iter().enumerate() {
        for &b in &pool[i + 1..] {
            has_gap[(b - a) as usize] = true;
        }
    }
    let pool_gaps: Vec<u64> = (1..=horizon).filter(|&d| has_gap[d as usize]).collect();
    let delta = pool_gaps
        .iter()
        .map(|&d| gaps[d as usize].value - gaps[d as usize].error_bound)
        .fold(f64::INFINITY, f64::min);
    let delta = if delta.is_finite() { delta } else { 0.0 };

    let mut used = vec![false; horizon as usize + 1];
    let mut selection_log: Vec<SelectedPair> = Vec::new();
    let mut sums: BTreeSet<u64> = BTreeSet::from([0]);
    let mut pool_set = vec![false; horizon as usize + 1];
    for &p in &pool {
        pool_set[p as usize] = true;
    }

    while selection_log.len() < count {
        let step = selection_log.len();
        let threshold = 1.0 / (2f64.powi(step as i32 + 1) * m_bound);
        let mut found = None;
        'gaps: for &d in &pool_gaps {
            for &delta_sum in sums.iter().filter(|&&s| s != 0) {
                if !pair_is_small(op, x, d, delta_sum, threshold)? {
                    continue 'gaps;
                }
            }
            let pair = (0..=horizon - d).find(|&t| {
                let s = t + d;
                pool_set[t as usize] && pool_set[s as usize] && !used[t as usize] && !used[s as usize]
            });
            if let Some(t) = pair {
                found = Some(SelectedPair { s: t + d, t });
                break;
            }
        }
        match found {
            Some(pair) => {
                used[pair.s as usize] = true;
                used[pair.t as usize] = true;
                let g = pair.gap();
                let shifted: Vec<u64> = sums.iter().map(|s| s + g).collect();
                sums.extend(shifted);
                selection_log.push(pair);
            }
            None => break,
        }
    }

    let audit = finish_audit(op, x, delta, m_bound, x_norm, selection_log, pool.len(), count, horizon, tol, options)?;
    if audit.ladder.len() < count {
        return Err(Error::HorizonExhausted {
            requested: count,
            partial: Box::new(audit),
        });
    }
    Ok(audit)
}

/// `‖(T^D − I)(T^Δ − I)x‖ ≤ threshold`, certified; refines the tolerance
/// while the answer is undecided and rejects if the budget runs out.
fn pair_is_small(op: &DiagonalOperator, x: &SeqVector, d: u64, delta_sum: u64, threshold: f64) -> Result<bool> {
    let inner = op.power_difference(delta_sum as i64, 0, x)?;
    let v = op.power_difference(d as i64, 0, &inner)?;
    let mut tol = threshold / 4.0;
    for _ in 0..4 {
        match sup_norm(&v, tol) {
            Ok(c) if c.certainly_at_most(threshold) => return Ok(true),
            Ok(c) if c.certainly_above(threshold) => return Ok(false),
            Ok(_) => tol /= 16.0,
            Err(Error::IndexBudgetExceeded { .. }) | Err(Error::UnreachableTolerance { .. }) => return Ok(false),
            Err(e) => return Err(e),
        }
    }
    Ok(false)
}

#[allow(clippy::too_many_arguments)]
fn finish_audit(
    op: &DiagonalOperator,
    x: &SeqVector,
    delta: f64,
    m_bound: f64,
    x_norm: Certified,
    selection_log: Vec<SelectedPair>,
    pool_size: usize,
    requested: usize,
    horizon: u64,
    tol: f64,
    options: &WitnessOptions,
) -> Result<WitnessAudit> {
    // x_m = T_m^{-1}(T_m x − S_m x) = (I − T^{D_m})x
    let ladder = selection_log
        .iter()
        .map(|p| op.power_difference(0, p.gap() as i64, x))
        .collect::<Result<Vec<_>>>()?;
    let ladder_norms = options
        .execution
        .map_slice(&ladder, |v| sup_norm(v, tol))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let bound = 1.0 + 2.0 * m_bound * (x_norm.value + x_norm.error_bound);
    let subset_sums = if ladder.is_empty() {
        SubsetStats {
            samples: 0,
            seed: options.seed,
            max_norm: 0.0,
            bound,
            within_bound: 0,
            histogram: vec![0; HISTOGRAM_BINS],
        }
    } else {
        let subsets = sample_subsets(ladder.len(), options.samples, options.seed);
        let norms = subset_norms(&ladder, &subsets, tol, options.execution)?;
        let uppers: Vec<f64> = norms.iter().map(|c| c.value + c.error_bound).collect();
        SubsetStats {
            samples: subsets.len(),
            seed: options.seed,
            max_norm: uppers.iter().copied().fold(0.0, f64::max),
            bound,
            within_bound: uppers.iter().filter(|&&u| u <= bound + tol).count(),
            histogram: histogram(&uppers, bound),
        }
    };
    let floor = delta / m_bound - tol;
    let series_diverges = !ladder_norms.is_empty()
        && ladder_norms.iter().all(|c| c.value - c.error_bound >= floor);
    Ok(WitnessAudit {
        delta,
        m_bound,
        x_norm: x_norm.value,
        ladder,
        ladder_norms,
        selection_log,
        subset_sums,
        pool_size,
        requested,
        horizon,
        series_diverges,
        index_zero_reading: "products range over subsets of the chosen pairs; the empty product gives the zero vector".into(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BpReport {
    pub unconditional_bound: f64,
    pub cauchy_defect: f64,
    pub first_norm: f64,
    pub ladder_detected: bool,
    pub samples: usize,
    pub seed: u64,
}

/// Bounded random subset sums together with terms bounded below detect a
/// `c₀` ladder: detected iff the largest sampled subset-sum norm is below
/// ten times `‖x₁‖` and `min ‖x_m‖ > tol`.
pub fn bp_test(vectors: &[SeqVector], samples: usize, tol: f64, seed: u64, execution: Execution) -> Result<BpReport> {
    if vectors.len() < 2 {
        return Err(Error::InvalidArgument("bp_test needs at least two vectors".into()));
    }
    if samples < 100 {
        return Err(Error::InvalidArgument(format!("bp_test needs ≥ 100 samples, got {samples}")));
    }
    let norms = execution
        .map_slice(vectors, |v| sup_norm(v, tol))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let subsets = sample_subsets(vectors.len(), samples, seed);
    let sums = subset_norms(vectors, &subsets, tol, execution)?;
    let unconditional_bound = sums.iter().map(|c| c.value + c.error_bound).fold(0.0, f64::max);
    let cauchy_defect = norms.iter().map(|c| c.value).fold(f64::INFINITY, f64::min);
    let first_norm = norms[0].value;
    Ok(BpReport {
        unconditional_bound,
        cauchy_defect,
        first_norm,
        ladder_detected: unconditional_bound < 10.0 * first_norm && cauchy_defect > tol,
        samples,
        seed,
    })
}

pub const CERTIFICATE_HEADER: &str = "ORBITLAB-LADDER v1";

/// Ladder vectors truncated to a prefix, with the limit, the tail
/// certificate and the truncation error `tail.bound(prefix_len)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LadderCertificate {
    pub delta: f64,
    pub m_bound: f64,
    pub x_norm: f64,
    pub prefix_len: usize,
    pub entries: Vec<CertificateEntry>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertificateEntry {
    pub limit: C64,
    pub tail_constant: f64,
    pub tail_exponent: f64,
    pub truncation: f64,
    pub prefix: Vec<C64>,
}

impl LadderCertificate {
    pub fn from_audit(audit: &WitnessAudit, prefix_len: usize) -> Self {
        let entries = audit
            .ladder
            .iter()
            .map(|v| CertificateEntry {
                limit: v.limit(),
                tail_constant: v.tail().constant(),
                tail_exponent: v.tail().exponent(),
                truncation: v.tail().bound(prefix_len as u64),
                prefix: v.prefix(prefix_len),
            })
            .collect();
        LadderCertificate {
            delta: audit.delta,
            m_bound: audit.m_bound,
            x_norm: audit.x_norm,
            prefix_len,
            entries,
        }
    }

    /// Largest truncation error over the entries.
    pub fn truncation(&self) -> f64 {
        self.entries.iter().map(|e| e.truncation).fold(0.0, f64::max)
    }

    /// Prefix followed by the constant limit; differs from the original
    /// ladder by at most [`truncation`](Self::truncation) in norm.
    pub fn vectors(&self) -> Result<Vec<SeqVector>> {
        self.entries
            .iter()
            .map(|e| {
                let space = if e.limit == C64::new(0.0, 0.0) { SpaceTag::C0 } else { SpaceTag::C };
                SeqVector::from_prefix(space, &e.prefix, e.limit)
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        writeln!(w, "{CERTIFICATE_HEADER}").unwrap();
        writeln!(w, "delta {:?}", self.delta).unwrap();
        writeln!(w, "m_bound {:?}", self.m_bound).unwrap();
        writeln!(w, "x_norm {:?}", self.x_norm).unwrap();
        writeln!(w, "prefix_len {}", self.prefix_len).unwrap();
        writeln!(w, "vectors {}", self.entries.len()).unwrap();
        for (i, e) in self.entries.iter().enumerate() {
            writeln!(
                w,
                "vector {} limit {:?} {:?} tail {:?} {:?} truncation {:?}",
                i + 1,
                e.limit.re,
                e.limit.im,
                e.tail_constant,
                e.tail_exponent,
                e.truncation
            )
            .unwrap();
            for z in &e.prefix {
                writeln!(w, "{:?} {:?}", z.re, z.im).unwrap();
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let mut next = |what: &str| {
            lines.next().ok_or_else(|| Error::Parse {
                line: 0,
                msg: format!("unexpected end of certificate, expected {what}"),
            })
        };
        let (line, header) = next("header")?;
        if header != CERTIFICATE_HEADER {
            return Err(Error::Parse {
                line,
                msg: format!("expected header {CERTIFICATE_HEADER:?}, got {header:?}"),
            });
        }
        let mut keyed = |key: &str| -> Result<(usize, String)> {
            let (line, content) = next(key)?;
            match content.split_once(' ') {
                Some((k, v)) if k == key => Ok((line, v.to_string())),
                _ => Err(Error::Parse {
                    line,
                    msg: format!("expected `{key} <value>`"),
                }),
            }
        };
        let delta = num(keyed("delta")?)?;
        let m_bound = num(keyed("m_bound")?)?;
        let x_norm = num(keyed("x_norm")?)?;
        let prefix_len = num::<usize>(keyed("prefix_len")?)?;
        let count = num::<usize>(keyed("vectors")?)?;
        let mut entries = Vec::with_capacity(count);
        for i in 0..count {
            let (line, content) = next("vector line")?;
            let toks: Vec<&str> = content.split_whitespace().collect();
            let shape_ok = toks.len() == 10
                && toks[0] == "vector"
                && toks[1] == (i + 1).to_string()
                && toks[2] == "limit"
                && toks[5] == "tail"
                && toks[8] == "truncation";
            if !shape_ok {
                return Err(Error::Parse {
                    line,
                    msg: format!("malformed vector line for entry {}", i + 1),
                });
            }
            let f = |s: &str| num::<f64>((line, s.to_string()));
            let limit = C64::new(f(toks[3])?, f(toks[4])?);
            let (tail_constant, tail_exponent, truncation) = (f(toks[6])?, f(toks[7])?, f(toks[9])?);
            let mut prefix = Vec::with_capacity(prefix_len);
            for _ in 0..prefix_len {
                let (line, content) = next("coordinate")?;
                let (re, im) = content.split_once(' ').ok_or(Error::Parse {
                    line,
                    msg: "expected `re im`".into(),
                })?;
                prefix.push(C64::new(num((line, re.into()))?, num((line, im.into()))?));
            }
            entries.push(CertificateEntry {
                limit,
                tail_constant,
                tail_exponent,
                truncation,
                prefix,
            });
        }
        if let Some((line, extra)) = lines.find(|(_, l)| !l.is_empty()) {
            return Err(Error::Parse {
                line,
                msg: format!("trailing content {extra:?}"),
            });
        }
        Ok(LadderCertificate {
            delta,
            m_bound,
            x_norm,
            prefix_len,
            entries,
        })
    }
}

fn num<T: std::str::FromStr>((line, s): (usize, String)) -> Result<T> {
    s.trim().parse().map_err(|_| Error::Parse {
        line,
        msg: format!("cannot parse {s:?}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::SymbolFamily;

    fn harmonic() -> DiagonalOperator {
        SymbolFamily::harmonic().operator(SpaceTag::C).unwrap()
    }

    #[test]
    fn single_rung() {
        let audit = c0_witness(&harmonic(), &SeqVector::one(), 1, 200, 1e-8, &WitnessOptions::default()).unwrap();
        assert_eq!(audit.ladder.len(), 1);
        assert!((audit.delta - 2.0).abs() < 1e-8);
        assert_eq!(audit.m_bound, 2.0);
        let n = audit.ladder_norms[0];
        assert!(n.value >= audit.delta / audit.m_bound - 1e-8);
        assert!(n.value <= 2.0 * audit.m_bound * audit.x_norm + 1e-8);
        assert_eq!(audit.ladder[0].space(), SpaceTag::C0);
        assert!(audit.subset_sums.samples >= MIN_SUBSET_SAMPLES);
        assert_eq!(audit.subset_sums.within_bound, audit.subset_sums.samples);
    }

    #[test]
    fn compact_orbit_is_not_applicable() {
        let r = c0_witness(&harmonic(), &SeqVector::unit(1).unwrap(), 3, 100, 1e-8, &WitnessOptions::default());
        assert!(matches!(r, Err(Error::NotApplicable(_))));
    }

    #[test]
    fn exhaustion_reports_partial_ladder() {
        match c0_witness(&harmonic(), &SeqVector::one(), 3, 60, 1e-8, &WitnessOptions::default()) {
            Err(Error::HorizonExhausted { requested, partial }) => {
                assert_eq!(requested, 3);
                assert!(!partial.ladder.is_empty() && partial.ladder.len() < 3);
            }
            other => panic!("expected exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn bp_rejects_convergent_and_unbounded_series() {
        let geometric: Vec<SeqVector> = (1..=30u64)
            .map(|m| SeqVector::unit(m).unwrap().scale(C64::new(0.5f64.powi(m as i32), 0.0)))
            .collect();
        let r = bp_test(&geometric, 200, 1e-8, 1, Execution::Sequential).unwrap();
        assert!(!r.ladder_detected);
        assert!(r.cauchy_defect < 1e-8);

        let e1 = SeqVector::unit(1).unwrap();
        let growing: Vec<SeqVector> = (1..=10).map(|m| e1.scale(C64::new(m as f64, 0.0))).collect();
        let r = bp_test(&growing, 200, 1e-8, 1, Execution::Sequential).unwrap();
        assert!(!r.ladder_detected, "{r:?}");
    }

    #[test]
    fn bp_detects_unit_vectors() {
        let units: Vec<SeqVector> = (1..=20).map(|m| SeqVector::unit(m).unwrap()).collect();
        let r = bp_test(&units, 200, 1e-8, 3, Execution::Sequential).unwrap();
        assert!(r.ladder_detected);
        assert_eq!(r.unconditional_bound, 1.0);
    }

    #[test]
    fn bp_preconditions() {
        let e1 = SeqVector::unit(1).unwrap();
        assert!(bp_test(std::slice::from_ref(&e1), 200, 1e-8, 0, Execution::Sequential).is_err());
        assert!(bp_test(&[e1.clone(), e1], 50, 1e-8, 0, Execution::Sequential).is_err());
    }

    #[test]
    fn subsets_are_reproducible() {
        assert_eq!(sample_subsets(7, 50, 9), sample_subsets(7, 50, 9));
        assert!(sample_subsets(7, 50, 9).iter().all(|s| !s.is_empty() && s.len() <= 7));
    }

    #[test]
    fn certificate_round_trip() {
        let audit = c0_witness(&harmonic(), &SeqVector::one(), 1, 100, 1e-8, &WitnessOptions::default()).unwrap();
        let cert = LadderCertificate::from_audit(&audit, 64);
        let text = cert.to_text();
        assert!(text.starts_with(CERTIFICATE_HEADER));
        let back = LadderCertificate::parse(&text).unwrap();
        assert_eq!(back, cert);
        assert!(back.truncation() > 0.0);
        assert!(LadderCertificate::parse(&text.replace("v1", "v2")).is_err());
    }
}
