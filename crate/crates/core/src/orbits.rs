//! Orbit clouds and packing/covering diagnostics.
//!
//! Greedy packings scan points in label order and are prefix-consistent, so
//! a single pass over the largest horizon yields the packing number at every
//! smaller horizon.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::operators::{DiagonalOperator, Operator, OperatorWord};
use crate::seqspace::{sup_norm, Certified, FiniteVector, SeqVector, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Exponent(u64),
    Word(OperatorWord),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Exponent(n) => write!(f, "{n}"),
            Label::Word(w) => write!(f, "{w}"),
        }
    }
}

#[derive(Clone, Debug)]
enum Metric {
    Pairwise,
    /// Point `i` is `Tⁿⁱ·base` for a diagonal isometry `T`, so
    /// `d(i, j) = ‖(T^{|nᵢ−nⱼ|} − I)·base‖` depends on the gap alone.
    IsometricGaps { op: DiagonalOperator, base: SeqVector },
}

/// Pairwise certified distances of a cloud at one tolerance.
#[derive(Debug)]
pub struct DistanceTable {
    n: usize,
    entries: TableEntries,
}

#[derive(Debug)]
enum TableEntries {
    /// Upper triangle, row-major.
    Dense(Vec<Certified>),
    Gaps { exponents: Vec<u64>, by_gap: Vec<Certified> },
}

impl DistanceTable {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> Certified {
        if i == j {
            return Certified::exact(0.0);
        }
        let (i, j) = (i.min(j), i.max(j));
        match &self.entries {
            TableEntries::Dense(d) => d[i * self.n - i * (i + 1) / 2 + (j - i - 1)],
            TableEntries::Gaps { exponents, by_gap } => {
                by_gap[exponents[i].abs_diff(exponents[j]) as usize]
            }
        }
    }
}

/// A finite labelled point set in one normed space.
#[derive(Debug)]
pub struct OrbitCloud {
    labels: Vec<Label>,
    points: Vec<Vector>,
    metric: Metric,
    execution: Execution,
    cache: Mutex<HashMap<u64, Arc<DistanceTable>>>,
}

impl Clone for OrbitCloud {
    fn clone(&self) -> Self {
        OrbitCloud {
            labels: self.labels.clone(),
            points: self.points.clone(),
            metric: self.metric.clone(),
            execution: self.execution,
            cache: Mutex::new(self.cache.lock().expect("cache lock").clone()),
        }
    }
}

impl OrbitCloud {
    pub fn from_points(labels: Vec<Label>, points: Vec<Vector>) -> Result<Self> {
        if labels.len() != points.len() {
            return Err(Error::DimensionMismatch {
                expected: labels.len(),
                got: points.len(),
            });
        }
        let mut sorted = labels.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("cloud labels must be unique".into()));
        }
        if let Some(first) = points.first() {
            let finite = first.as_finite().is_some();
            if points.iter().any(|p| p.as_finite().is_some() != finite) {
                return Err(Error::KindMismatch("cloud mixes sequences and finite vectors".into()));
            }
        }
        Ok(OrbitCloud {
            labels,
            points,
            metric: Metric::Pairwise,
            execution: Execution::default(),
            cache: Mutex::new(HashMap::new()),
        })
    }

    fn isometric(op: &DiagonalOperator, base: &SeqVector, exponents: Vec<u64>) -> Result<Self> {
        let points = exponents
            .iter()
            .map(|&n| Ok(Vector::Seq(op.power_apply(n, base)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut cloud =
            Self::from_points(exponents.into_iter().map(Label::Exponent).collect(), points)?;
        cloud.metric = Metric::IsometricGaps {
            op: op.clone(),
            base: base.clone(),
        };
        Ok(cloud)
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    /// Forces the all-pairs metric even where the gap shortcut applies.
    pub fn pairwise(mut self) -> Self {
        self.metric = Metric::Pairwise;
        self.cache.lock().expect("cache lock").clear();
        self
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn horizon(&self) -> usize {
        self.points.len()
    }

    /// One certified distance, bypassing the cache.
    pub fn distance(&self, i: usize, j: usize, tol: f64) -> Result<Certified> {
        self.points[i].distance(&self.points[j], tol)
    }

    /// All pairwise distances at `tol`, computed once and cached.
    pub fn distances(&self, tol: f64) -> Result<Arc<DistanceTable>> {
        if let Some(t) = self.cache.lock().expect("cache lock").get(&tol.to_bits()) {
            return Ok(t.clone());
        }
        let n = self.len();
        let entries = match &self.metric {
            Metric::Pairwise => {
                let rows = self.execution.map(n, |i| {
                    ((i + 1)..n)
                        .map(|j| self.distance(i, j, tol))
                        .collect::<Result<Vec<_>>>()
                });
                let mut dense = Vec::with_capacity(n * n.saturating_sub(1) / 2);
                for row in rows {
                    dense.extend(row?);
                }
                TableEntries::Dense(dense)
            }
            Metric::IsometricGaps { op, base } => {
                let exponents: Vec<u64> = self
                    .labels
                    .iter()
                    .map(|l| match l {
                        Label::Exponent(e) => *e,
                        Label::Word(_) => unreachable!("isometric clouds carry exponents"),
                    })
                    .collect();
                let span = match (exponents.iter().min(), exponents.iter().max()) {
                    (Some(lo), Some(hi)) => hi - lo,
                    _ => 0,
                };
                let by_gap = gap_norms(op, base, span, tol, self.execution)?;
                TableEntries::Gaps { exponents, by_gap }
            }
        };
        let table = Arc::new(DistanceTable { n, entries });
        self.cache
            .lock()
            .expect("cache lock")
            .insert(tol.to_bits(), table.clone());
        Ok(table)
    }

    pub fn diameter(&self, tol: f64) -> Result<Certified> {
        let d = self.distances(tol)?;
        let mut best = Certified::exact(0.0);
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                let c = d.get(i, j);
                if c.value > best.value {
                    best = c;
                }
            }
        }
        Ok(best)
    }
}

/// `‖(T^D − I)·base‖` for `D = 0..=span`.
pub fn gap_norms(
    op: &DiagonalOperator,
    base: &SeqVector,
    span: u64,
    tol: f64,
    execution: Execution,
) -> Result<Vec<Certified>> {
    execution
        .map(span as usize + 1, |d| {
            if d == 0 {
                Ok(Certified::exact(0.0))
            } else {
                sup_norm(&op.power_difference(d as i64, 0, base)?, tol)
            }
        })
        .into_iter()
        .collect()
}

fn check_horizon(horizon: u64) -> Result<()> {
    if horizon == 0 {
        return Err(Error::InvalidArgument("horizon must be ≥ 1".into()));
    }
    Ok(())
}

/// `T¹x, …, T^horizon x`.
pub fn orbit(op: &Operator, x: &Vector, horizon: u64) -> Result<OrbitCloud> {
    check_horizon(horizon)?;
    match (op, x) {
        (Operator::Diagonal(d), Vector::Seq(v)) => {
            OrbitCloud::isometric(d, v, (1..=horizon).collect())
        }
        (Operator::Matrix(m), Vector::Finite(v)) => {
            let mut points = Vec::with_capacity(horizon as usize);
            let mut current = v.clone();
            for _ in 0..horizon {
                current = m.apply(&current)?;
                points.push(Vector::Finite(current.clone()));
            }
            OrbitCloud::from_points((1..=horizon).map(Label::Exponent).collect(), points)
        }
        _ => Err(Error::KindMismatch(
            "diagonal operators act on sequences, matrices on finite vectors".into(),
        )),
    }
}

/// `Tⁿ(I − T)x` for `1 ≤ n ≤ horizon`.
pub fn difference_orbit(op: &Operator, x: &Vector, horizon: u64) -> Result<OrbitCloud> {
    difference_orbit_step(op, x, 1, horizon)
}

/// `Tⁿ(I − Tˢ)x` for `1 ≤ n ≤ horizon`.
pub fn difference_orbit_step(op: &Operator, x: &Vector, step: u64, horizon: u64) -> Result<OrbitCloud> {
    if step == 0 {
        return Err(Error::InvalidArgument("step must be ≥ 1".into()));
    }
    let s = i64::try_from(step).map_err(|_| Error::InvalidArgument("step too large".into()))?;
    let base = match (op, x) {
        (Operator::Diagonal(d), Vector::Seq(v)) => Vector::Seq(d.power_difference(0, s, v)?),
        (Operator::Matrix(m), Vector::Finite(v)) => {
            let moved = m.power_apply(step, v)?;
            Vector::Finite(FiniteVector::new(v.coords() - moved.coords(), v.norm_tag())?)
        }
        _ => {
            return Err(Error::KindMismatch(
                "diagonal operators act on sequences, matrices on finite vectors".into(),
            ))
        }
    };
    orbit(op, &base, horizon)
}

/// Words of total degree `1..=max_degree` applied to `x`, graded
/// lexicographic order (degree first, then larger leading exponents first).
pub fn word_orbit(generators: &[Operator], x: &Vector, max_degree: u32) -> Result<OrbitCloud> {
    if generators.is_empty() {
        return Err(Error::InvalidArgument("word_orbit needs a generator".into()));
    }
    if max_degree == 0 {
        return Err(Error::InvalidArgument("max_degree must be ≥ 1".into()));
    }
    let mut words = Vec::new();
    for degree in 1..=max_degree {
        let mut level = Vec::new();
        compositions(degree, generators.len(), &mut Vec::new(), &mut level);
        level.sort_by(|a, b| b.cmp(a));
        words.extend(level);
    }
    let mut labels = Vec::with_capacity(words.len());
    let mut points = Vec::with_capacity(words.len());
    for w in words {
        let word = OperatorWord::new(w);
        points.push(word.apply(generators, x)?);
        labels.push(Label::Word(word));
    }
    OrbitCloud::from_points(labels, points)
}

fn compositions(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if parts == 1 {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in 0..=total {
        prefix.push(first);
        compositions(total - first, parts - 1, prefix, out);
        prefix.pop();
    }
}

fn check_epsilon(epsilon: f64, tol: f64) -> Result<()> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    if !(epsilon > 4.0 * tol) || !epsilon.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "epsilon {epsilon} must exceed 4·tol = {}",
            4.0 * tol
        )));
    }
    Ok(())
}

/// Indices picked by the greedy packing among the first `limit` points.
fn greedy_packing(table: &DistanceTable, epsilon: f64, limit: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..limit {
        if chosen.iter().all(|&j| table.get(i, j).certainly_above(epsilon)) {
            chosen.push(i);
        }
    }
    chosen
}

/// Greedy ε-net centres: a point is covered when some centre is certainly
/// within ε.
fn greedy_net(table: &DistanceTable, epsilon: f64, limit: usize) -> Vec<usize> {
    let mut centres: Vec<usize> = Vec::new();
    for i in 0..limit {
        if !centres.iter().any(|&j| table.get(i, j).certainly_at_most(epsilon)) {
            centres.push(i);
        }
    }
    centres
}

fn count_below(picked: &[usize], prefixes: &[usize]) -> Vec<usize> {
    prefixes
        .iter()
        .map(|&p| picked.iter().take_while(|&&i| i < p).count())
        .collect()
}

/// Size of a greedily built set whose pairwise distances are certainly
/// greater than `epsilon`.
pub fn packing_number(cloud: &OrbitCloud, epsilon: f64, tol: f64) -> Result<usize> {
    check_epsilon(epsilon, tol)?;
    let table = cloud.distances(tol)?;
    Ok(greedy_packing(&table, epsilon, cloud.len()).len())
}

/// Greedy ε-net size; lies between the packing numbers at 2ε and ε.
pub fn covering_estimate(cloud: &OrbitCloud, epsilon: f64, tol: f64) -> Result<usize> {
    check_epsilon(epsilon, tol)?;
    let table = cloud.distances(tol)?;
    Ok(greedy_net(&table, epsilon, cloud.len()).len())
}

/// Packing numbers of the prefixes of the given lengths.
pub fn packing_profile(cloud: &OrbitCloud, epsilon: f64, tol: f64, prefixes: &[usize]) -> Result<Vec<usize>> {
    check_epsilon(epsilon, tol)?;
    let limit = prefixes.iter().copied().max().unwrap_or(0).min(cloud.len());
    let table = cloud.distances(tol)?;
    Ok(count_below(&greedy_packing(&table, epsilon, limit), prefixes))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Saturating,
    Growing,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Saturating => "saturating",
            Verdict::Growing => "growing",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Growth of the packing number per horizon doubling, one entry per step.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthStat {
    pub epsilon: f64,
    pub per_doubling: Vec<f64>,
}

/// Minimum growth per doubling counted as "growing".
pub const GROWTH_THRESHOLD: f64 = 0.10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompactnessReport {
    pub epsilons: Vec<f64>,
    pub horizons: Vec<u64>,
    /// `packing_numbers[e][h]` for `epsilons[e]` at `horizons[h]`.
    pub packing_numbers: Vec<Vec<usize>>,
    pub covering_numbers: Vec<Vec<usize>>,
    pub verdict: Verdict,
    pub growth_stats: Vec<GrowthStat>,
    /// Greedy packings need not shrink as ε grows; flagged when they don't.
    pub monotone_in_epsilon: bool,
    pub tol: f64,
}

impl CompactnessReport {
    /// `horizon,epsilon,packing,covering` rows, one per (ε, horizon).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("horizon,epsilon,packing,covering\n");
        for (e, eps) in self.epsilons.iter().enumerate() {
            for (h, horizon) in self.horizons.iter().enumerate() {
                writeln!(
                    out,
                    "{horizon},{eps},{},{}",
                    self.packing_numbers[e][h], self.covering_numbers[e][h]
                )
                .expect("writing to a String");
            }
        }
        out
    }

    pub fn packing_at(&self, epsilon: f64) -> Option<&[usize]> {
        self.epsilons
            .iter()
            .position(|&e| e == epsilon)
            .map(|i| self.packing_numbers[i].as_slice())
    }
}

fn per_doubling(counts: &[usize], horizons: &[u64]) -> Vec<f64> {
    counts
        .windows(2)
        .zip(horizons.windows(2))
        .map(|(c, h)| {
            let doublings = (h[1] as f64 / h[0] as f64).log2();
            (c[1] as f64 / c[0].max(1) as f64).powf(1.0 / doublings) - 1.0
        })
        .collect()
}

fn verdict_of(packing: &[Vec<usize>], stats: &[GrowthStat]) -> Verdict {
    let saturating = packing.iter().all(|row| {
        let tail = &row[row.len() - 3..];
        tail.iter().all(|&c| c == tail[0])
    });
    if saturating {
        return Verdict::Saturating;
    }
    let growing = stats.iter().any(|s| {
        s.per_doubling[s.per_doubling.len() - 2..]
            .iter()
            .all(|&g| g >= GROWTH_THRESHOLD)
    });
    if growing {
        Verdict::Growing
    } else {
        Verdict::Inconclusive
    }
}

/// Packing and covering numbers of the cloud's prefixes of length
/// `horizons[i]`, with a verdict: saturating if every ε gives the same count
/// at the last three horizons, growing if some ε grows by at least
/// [`GROWTH_THRESHOLD`] per doubling over each of the last two steps.
pub fn diagnose_cloud(cloud: &OrbitCloud, epsilons: &[f64], horizons: &[u64], tol: f64) -> Result<CompactnessReport> {
    if epsilons.is_empty() {
        return Err(Error::InvalidArgument("need at least one epsilon".into()));
    }
    if horizons.len() < 3 {
        return Err(Error::InvalidArgument("need at least three horizons".into()));
    }
    if horizons[0] == 0 || horizons.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(format!(
            "horizons must be positive and strictly increasing, got {horizons:?}"
        )));
    }
    let last = *horizons.last().expect("nonempty") as usize;
    if cloud.len() < last {
        return Err(Error::InvalidArgument(format!(
            "cloud has {} points, horizon {last} requested",
            cloud.len()
        )));
    }
    for &eps in epsilons {
        check_epsilon(eps, tol)?;
    }
    let table = cloud.distances(tol)?;
    let prefixes: Vec<usize> = horizons.iter().map(|&h| h as usize).collect();
    let mut packing_numbers = Vec::with_capacity(epsilons.len());
    let mut covering_numbers = Vec::with_capacity(epsilons.len());
    let mut growth_stats = Vec::with_capacity(epsilons.len());
    for &eps in epsilons {
        let packing = count_below(&greedy_packing(&table, eps, last), &prefixes);
        let covering = count_below(&greedy_net(&table, eps, last), &prefixes);
        growth_stats.push(GrowthStat {
            epsilon: eps,
            per_doubling: per_doubling(&packing, horizons),
        });
        packing_numbers.push(packing);
        covering_numbers.push(covering);
    }
    let mut order: Vec<usize> = (0..epsilons.len()).collect();
    order.sort_by(|&a, &b| epsilons[a].total_cmp(&epsilons[b]));
    let monotone_in_epsilon = order.windows(2).all(|w| {
        packing_numbers[w[0]]
            .iter()
            .zip(&packing_numbers[w[1]])
            .all(|(small_eps, big_eps)| small_eps >= big_eps)
    });
    let verdict = verdict_of(&packing_numbers, &growth_stats);
    Ok(CompactnessReport {
        epsilons: epsilons.to_vec(),
        horizons: horizons.to_vec(),
        packing_numbers,
        covering_numbers,
        verdict,
        growth_stats,
        monotone_in_epsilon,
        tol,
    })
}

/// [`diagnose_cloud`] on the orbit of `x` up to the largest horizon.
pub fn compactness_diagnostic(
    op: &Operator,
    x: &Vector,
    epsilons: &[f64],
    horizons: &[u64],
    tol: f64,
) -> Result<CompactnessReport> {
    let last = *horizons
        .last()
        .ok_or_else(|| Error::InvalidArgument("need at least three horizons".into()))?;
    diagnose_cloud(&orbit(op, x, last)?, epsilons, horizons, tol)
}

/// [`diagnose_cloud`] on `{Tⁿ(I − Tˢ)x}`.
pub fn difference_diagnostic(
    op: &Operator,
    x: &Vector,
    step: u64,
    epsilons: &[f64],
    horizons: &[u64],
    tol: f64,
) -> Result<CompactnessReport> {
    let last = *horizons
        .last()
        .ok_or_else(|| Error::InvalidArgument("need at least three horizons".into()))?;
    diagnose_cloud(&difference_orbit_step(op, x, step, last)?, epsilons, horizons, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::SymbolFamily;
    use crate::operators::{DiagonalSymbol, MatrixOperator};
    use crate::seqspace::{NormTag, SpaceTag, C64};

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn scalar(v: f64) -> Vector {
        FiniteVector::from_slice(&[c(v)], NormTag::Sup).unwrap().into()
    }

    fn half() -> Operator {
        MatrixOperator::from_diagonal(&[c(0.5)], NormTag::Sup).unwrap().into()
    }

    fn harmonic() -> Operator {
        SymbolFamily::harmonic().operator(SpaceTag::C).unwrap().into()
    }

    #[test]
    fn identity_orbit_collapses() {
        let id: Operator = DiagonalOperator::new(DiagonalSymbol::constant(0.0), SpaceTag::C).into();
        let cloud = orbit(&id, &SeqVector::one().into(), 20).unwrap();
        assert_eq!(cloud.diameter(1e-9).unwrap().value, 0.0);
        assert_eq!(packing_number(&cloud, 0.5, 1e-9).unwrap(), 1);
    }

    #[test]
    fn scalar_orbit_points() {
        let cloud = orbit(&half(), &scalar(1.0), 10).unwrap();
        for (n, p) in cloud.points().iter().enumerate() {
            let v = p.as_finite().unwrap().coords()[0].re;
            assert!((v - 0.5f64.powi(n as i32 + 1)).abs() < 1e-18);
        }
        assert_eq!(packing_number(&cloud, 0.26, 1e-9).unwrap(), 2);
    }

    #[test]
    fn harmonic_orbit_of_one_is_two_separated() {
        let cloud = orbit(&harmonic(), &SeqVector::one().into(), 50).unwrap();
        let table = cloud.distances(1e-8).unwrap();
        for i in 0..50 {
            for j in (i + 1)..50 {
                let d = table.get(i, j);
                assert!((d.value - 2.0).abs() <= 1e-8 && d.error_bound <= 1e-8, "{i} {j} {d:?}");
            }
        }
        assert_eq!(packing_number(&cloud, 1.0, 1e-8).unwrap(), 50);
        assert_eq!(covering_estimate(&cloud, 1.0, 1e-8).unwrap(), 50);
    }

    #[test]
    fn gap_table_matches_pairwise() {
        let cloud = orbit(&harmonic(), &SeqVector::one().into(), 12).unwrap();
        let direct = cloud.clone().pairwise();
        let (g, p) = (cloud.distances(1e-6).unwrap(), direct.distances(1e-6).unwrap());
        for i in 0..12 {
            for j in 0..12 {
                let (a, b) = (g.get(i, j), p.get(i, j));
                assert!((a.value - b.value).abs() <= a.error_bound + b.error_bound + 1e-12);
            }
        }
    }

    #[test]
    fn difference_orbit_of_fixed_point_is_zero() {
        let id: Operator = MatrixOperator::identity(2, NormTag::Sup).into();
        let x: Vector = FiniteVector::from_slice(&[c(1.0), c(2.0)], NormTag::Sup).unwrap().into();
        let cloud = difference_orbit(&id, &x, 5).unwrap();
        assert!(cloud.points().iter().all(|p| p.as_finite().unwrap().norm() == 0.0));
    }

    #[test]
    fn harmonic_difference_orbit_lies_in_c0() {
        let cloud = difference_orbit(&harmonic(), &SeqVector::one().into(), 5).unwrap();
        for p in cloud.points() {
            let s = p.as_seq().unwrap();
            assert_eq!(s.limit(), C64::new(0.0, 0.0));
            assert_eq!(s.space(), SpaceTag::C0);
        }
    }

    #[test]
    fn scalar_difference_orbit() {
        let cloud = difference_orbit(&half(), &scalar(1.0), 6).unwrap();
        for (n, p) in cloud.points().iter().enumerate() {
            let v = p.as_finite().unwrap().coords()[0].re;
            assert!((v - 0.5f64.powi(n as i32 + 1) * 0.5).abs() < 1e-18);
        }
    }

    #[test]
    fn two_clusters_cover_with_two_balls() {
        let mut labels = Vec::new();
        let mut points = Vec::new();
        for i in 0..10 {
            let base = if i % 2 == 0 { 0.0 } else { 10.0 };
            labels.push(Label::Exponent(i));
            points.push(scalar(base + 0.01 * i as f64));
        }
        let cloud = OrbitCloud::from_points(labels, points).unwrap();
        assert_eq!(covering_estimate(&cloud, 1.0, 1e-9).unwrap(), 2);
        assert_eq!(packing_number(&cloud, 1.0, 1e-9).unwrap(), 2);
    }

    #[test]
    fn single_point_cloud() {
        let cloud = OrbitCloud::from_points(vec![Label::Exponent(0)], vec![scalar(3.0)]).unwrap();
        assert_eq!(packing_number(&cloud, 1.0, 1e-9).unwrap(), 1);
        assert_eq!(covering_estimate(&cloud, 1.0, 1e-9).unwrap(), 1);
    }

    #[test]
    fn epsilon_must_exceed_four_tol() {
        let cloud = orbit(&half(), &scalar(1.0), 3).unwrap();
        assert!(packing_number(&cloud, 1e-3, 1e-3).is_err());
    }

    #[test]
    fn duplicate_labels_rejected() {
        let r = OrbitCloud::from_points(
            vec![Label::Exponent(1), Label::Exponent(1)],
            vec![scalar(0.0), scalar(1.0)],
        );
        assert!(r.is_err());
    }

    #[test]
    fn verdicts() {
        let one: Vector = SeqVector::one().into();
        let r = compactness_diagnostic(&harmonic(), &one, &[1.0], &[100, 200, 400], 1e-8).unwrap();
        assert_eq!(r.packing_numbers[0], vec![100, 200, 400]);
        assert_eq!(r.verdict, Verdict::Growing);

        let id: Operator = DiagonalOperator::new(DiagonalSymbol::constant(0.0), SpaceTag::C).into();
        let r = compactness_diagnostic(&id, &one, &[1.0], &[10, 20, 40], 1e-8).unwrap();
        assert_eq!(r.packing_numbers[0], vec![1, 1, 1]);
        assert_eq!(r.verdict, Verdict::Saturating);
        assert_eq!(r.to_csv().lines().count(), 4);
    }

    #[test]
    fn horizons_validated() {
        let one: Vector = SeqVector::one().into();
        assert!(compactness_diagnostic(&harmonic(), &one, &[1.0], &[10, 20], 1e-8).is_err());
        assert!(compactness_diagnostic(&harmonic(), &one, &[1.0], &[10, 30, 20], 1e-8).is_err());
    }

    #[test]
    fn greedy_packing_can_grow_with_epsilon() {
        let pts = [(0.0, 1.2), (0.0, 0.0), (-1.0, 0.0), (1.0, 0.0)];
        let labels = (0..4).map(Label::Exponent).collect();
        let points = pts
            .iter()
            .map(|&(x, y)| {
                FiniteVector::from_slice(&[c(x), c(y)], NormTag::Euclidean)
                    .unwrap()
                    .into()
            })
            .collect();
        let cloud = OrbitCloud::from_points(labels, points).unwrap();
        assert_eq!(packing_number(&cloud, 1.0, 1e-9).unwrap(), 2);
        assert_eq!(packing_number(&cloud, 1.5, 1e-9).unwrap(), 3);
    }

    #[test]
    fn word_orbit_order() {
        let a = harmonic();
        let b: Operator = SymbolFamily::root_perturbed(2, 1.0).unwrap().operator(SpaceTag::C).unwrap().into();
        let cloud = word_orbit(&[a, b], &SeqVector::one().into(), 2).unwrap();
        let labels: Vec<String> = cloud.labels().iter().map(|l| l.to_string()).collect();
        assert_eq!(labels, vec!["T1^1", "T2^1", "T1^2", "T1^1 T2^1", "T2^2"]);
    }
}
