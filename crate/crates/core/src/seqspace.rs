//! Vectors in the sequence spaces `c` and `c₀`, and finite coordinate vectors.
//!
//! A [`SeqVector`] is a coordinate oracle `k ↦ x_k` (indices start at 1)
//! together with its limit and a [`TailCertificate`] bounding
//! `|x_k − x_∞|` beyond an index. That is enough to compute sup-norms to a
//! guaranteed tolerance without ever materialising the sequence.

use std::fmt;
use std::sync::Arc;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Largest index a sup-norm scan may touch before giving up.
pub const DEFAULT_INDEX_BUDGET: u64 = 1 << 24;

const FIRST_CHECKPOINT: u64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceTag {
    C,
    C0,
}

impl fmt::Display for SpaceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceTag::C => f.write_str("c"),
            SpaceTag::C0 => f.write_str("c0"),
        }
    }
}

/// Power-law bound `constant · K^(−exponent)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailCertificate {
    constant: f64,
    exponent: f64,
}

impl TailCertificate {
    pub const ZERO: TailCertificate = TailCertificate {
        constant: 0.0,
        exponent: 1.0,
    };

    /// A non-positive exponent is accepted here; such a certificate only
    /// fails once a norm asks it to reach a tolerance.
    pub fn new(constant: f64, exponent: f64) -> Result<Self> {
        if !constant.is_finite() || constant < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "tail constant must be finite and nonnegative, got {constant}"
            )));
        }
        if !exponent.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "tail exponent must be finite, got {exponent}"
            )));
        }
        Ok(TailCertificate { constant, exponent })
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    /// Bound on `|x_k − x_∞|` valid for every `k > K`.
    pub fn bound(&self, k: u64) -> f64 {
        if self.constant == 0.0 {
            return 0.0;
        }
        self.constant * (k.max(1) as f64).powf(-self.exponent)
    }

    /// Smallest `K ≥ 1` with `bound(K) ≤ tol`.
    pub fn index_for(&self, tol: f64) -> Result<u64> {
        if self.constant == 0.0 || self.constant <= tol {
            return Ok(1);
        }
        if self.exponent <= 0.0 {
            return Err(Error::UnreachableTolerance { tol });
        }
        let guess = (self.constant / tol).powf(1.0 / self.exponent).ceil();
        if !(guess < u64::MAX as f64) {
            return Ok(u64::MAX);
        }
        let mut k = (guess as u64).max(1);
        while self.bound(k) > tol {
            k += 1;
        }
        while k > 1 && self.bound(k - 1) <= tol {
            k -= 1;
        }
        Ok(k)
    }

    pub fn scaled(&self, factor: f64) -> TailCertificate {
        TailCertificate {
            constant: self.constant * factor.abs(),
            exponent: self.exponent,
        }
    }

    /// Triangle-inequality sum; the weaker exponent wins since `K ≥ 1`.
    pub fn plus(&self, other: &TailCertificate) -> TailCertificate {
        match (self.constant == 0.0, other.constant == 0.0) {
            (true, _) => *other,
            (_, true) => *self,
            _ => TailCertificate {
                constant: self.constant + other.constant,
                exponent: self.exponent.min(other.exponent),
            },
        }
    }
}

/// A value with a certified absolute error bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certified {
    pub value: f64,
    pub error_bound: f64,
}

impl Certified {
    pub fn exact(value: f64) -> Self {
        Certified {
            value,
            error_bound: 0.0,
        }
    }

    /// True value is certainly above `threshold`.
    pub fn certainly_above(&self, threshold: f64) -> bool {
        self.value - self.error_bound > threshold
    }

    /// True value is certainly at most `threshold`.
    pub fn certainly_at_most(&self, threshold: f64) -> bool {
        self.value + self.error_bound <= threshold
    }
}

pub type CoordFn = Arc<dyn Fn(u64) -> C64 + Send + Sync>;

/// An element of `c` or `c₀`.
#[derive(Clone)]
pub struct SeqVector {
    coord: CoordFn,
    limit: C64,
    tail: TailCertificate,
    // |x_k| ≤ |x_∞| + envelope.bound(K) for k > K. Never weaker than `tail`
    // when present; survives unimodular rotations where `tail` degrades.
    envelope: Option<TailCertificate>,
    space: SpaceTag,
}

impl fmt::Debug for SeqVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head: Vec<C64> = (1..=4).map(|k| (self.coord)(k)).collect();
        f.debug_struct("SeqVector")
            .field("space", &self.space)
            .field("head", &head)
            .field("limit", &self.limit)
            .field("tail", &self.tail)
            .field("envelope", &self.envelope)
            .finish()
    }
}

impl SeqVector {
    /// Builds a vector from a pure coordinate oracle. The caller vouches
    /// for the certificate; [`check_certificate`](Self::check_certificate)
    /// samples it.
    pub fn from_fn<F>(space: SpaceTag, limit: C64, tail: TailCertificate, f: F) -> Result<Self>
    where
        F: Fn(u64) -> C64 + Send + Sync + 'static,
    {
        Self::from_parts(space, limit, tail, None, Arc::new(f))
    }

    pub(crate) fn from_parts(
        space: SpaceTag,
        limit: C64,
        tail: TailCertificate,
        envelope: Option<TailCertificate>,
        coord: CoordFn,
    ) -> Result<Self> {
        if !(limit.re.is_finite() && limit.im.is_finite()) {
            return Err(Error::NonFinite("limit".into()));
        }
        if space == SpaceTag::C0 && limit != C64::new(0.0, 0.0) {
            return Err(Error::TagMismatch(format!(
                "a c0 vector must have limit 0, got {limit}"
            )));
        }
        Ok(SeqVector {
            coord,
            limit,
            tail,
            envelope,
            space,
        })
    }

    pub fn constant(value: C64) -> Self {
        SeqVector {
            coord: Arc::new(move |_| value),
            limit: value,
            tail: TailCertificate::ZERO,
            envelope: Some(TailCertificate::ZERO),
            space: SpaceTag::C,
        }
    }

    /// The constant-one sequence `𝟙 ∈ c`.
    pub fn one() -> Self {
        Self::constant(C64::new(1.0, 0.0))
    }

    pub fn zero(space: SpaceTag) -> Self {
        SeqVector {
            coord: Arc::new(|_| C64::new(0.0, 0.0)),
            limit: C64::new(0.0, 0.0),
            tail: TailCertificate::ZERO,
            envelope: Some(TailCertificate::ZERO),
            space,
        }
    }

    /// Standard unit vector `e_k ∈ c₀` (indices start at 1).
    pub fn unit(index: u64) -> Result<Self> {
        if index == 0 {
            return Err(Error::InvalidArgument("unit vectors are indexed from 1".into()));
        }
        let mut prefix = vec![C64::new(0.0, 0.0); index as usize];
        prefix[index as usize - 1] = C64::new(1.0, 0.0);
        Self::from_prefix(SpaceTag::C0, &prefix, C64::new(0.0, 0.0))
    }

    /// Finitely many explicit coordinates, then constant at `limit`.
    pub fn from_prefix(space: SpaceTag, prefix: &[C64], limit: C64) -> Result<Self> {
        const EXPONENT: f64 = 4.0;
        if prefix
            .iter()
            .any(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::NonFinite("prefix coordinate".into()));
        }
        let len = prefix.len() as f64;
        let deviation = prefix.iter().map(|z| (z - limit).norm()).fold(0.0, f64::max);
        let excess = prefix
            .iter()
            .map(|z| z.norm() - limit.norm())
            .fold(0.0, f64::max);
        // c·L^p·K^(−p) ≥ c for K < L and the true tail is 0 for K ≥ L.
        let scale = len.powf(EXPONENT);
        let tail = TailCertificate::new(deviation * scale, EXPONENT)?;
        let envelope = TailCertificate::new(excess * scale, EXPONENT)?;
        let coords: Arc<[C64]> = prefix.into();
        let coord: CoordFn = Arc::new(move |k| {
            let i = (k.max(1) - 1) as usize;
            if i < coords.len() {
                coords[i]
            } else {
                limit
            }
        });
        Self::from_parts(space, limit, tail, Some(envelope), coord)
    }

    pub fn coord(&self, k: u64) -> C64 {
        (self.coord)(k)
    }

    pub fn coord_fn(&self) -> &CoordFn {
        &self.coord
    }

    pub fn limit(&self) -> C64 {
        self.limit
    }

    pub fn tail(&self) -> TailCertificate {
        self.tail
    }

    pub fn envelope(&self) -> Option<TailCertificate> {
        self.envelope
    }

    pub fn space(&self) -> SpaceTag {
        self.space
    }

    pub fn prefix(&self, len: usize) -> Vec<C64> {
        (1..=len as u64).map(|k| (self.coord)(k)).collect()
    }

    /// Views a `c₀` vector as an element of `c`; a `c` vector may move to
    /// `c₀` only if its limit is exactly zero.
    pub fn in_space(mut self, space: SpaceTag) -> Result<Self> {
        if space == SpaceTag::C0 && self.limit != C64::new(0.0, 0.0) {
            return Err(Error::TagMismatch(format!(
                "limit {} is nonzero, vector is not in c0",
                self.limit
            )));
        }
        self.space = space;
        Ok(self)
    }


    pub fn scale(&self, factor: C64) -> SeqVector {
        let inner = self.coord.clone();
        SeqVector {
            coord: Arc::new(move |k| factor * inner(k)),
            limit: factor * self.limit,
            tail: self.tail.scaled(factor.norm()),
            envelope: self.envelope.map(|e| e.scaled(factor.norm())),
            space: self.space,
        }
    }

    /// Largest `|coord(k) − limit| − tail.bound(K)` seen over `samples`
    /// indices `k > K` spread geometrically up to `K·10⁶`. A positive
    /// return value means the certificate is violated.
    pub fn check_certificate(&self, from: u64, samples: usize) -> f64 {
        let from = from.max(1);
        let bound = self.tail.bound(from);
        let span = 1e6_f64.ln();
        (0..samples)
            .map(|i| {
                let t = (i as f64 + 0.5) / samples as f64;
                let k = from + 1 + ((from as f64) * ((t * span).exp() - 1.0)) as u64;
                (self.coord(k) - self.limit).norm() - bound
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// JSON-facing snapshot: first `len` coordinates plus certificates.
    pub fn summary(&self, len: usize) -> SeqVectorSummary {
        SeqVectorSummary {
            space: self.space,
            limit: self.limit,
            tail: self.tail,
            envelope: self.envelope,
            prefix: self.prefix(len),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeqVectorSummary {
    pub space: SpaceTag,
    pub limit: C64,
    pub tail: TailCertificate,
    pub envelope: Option<TailCertificate>,
    pub prefix: Vec<C64>,
}

/// Sup-norm to within `tol`, scanning at most [`DEFAULT_INDEX_BUDGET`]
/// coordinates.
pub fn sup_norm(v: &SeqVector, tol: f64) -> Result<Certified> {
    sup_norm_with_budget(v, tol, DEFAULT_INDEX_BUDGET)
}

pub fn sup_norm_with_budget(v: &SeqVector, tol: f64, budget: u64) -> Result<Certified> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let lim = v.limit.norm();
    let bound = |k: u64| {
        let b = v.tail.bound(k);
        match v.envelope {
            Some(e) => b.min(e.bound(k)),
            None => b,
        }
    };
    let from_tail = v.tail.index_for(tol);
    let from_env = v.envelope.map(|e| e.index_for(tol));
    let k_star = match (from_tail, from_env) {
        (Ok(a), Some(Ok(b))) => a.min(b),
        (Ok(a), _) => a,
        (Err(_), Some(Ok(b))) => b,
        (Err(e), _) => return Err(e),
    };

    let mut head = 0.0_f64;
    let mut k = 1_u64;
    let mut checkpoint = FIRST_CHECKPOINT.min(k_star).min(budget.max(1));
    loop {
        while k <= checkpoint {
            let m = v.coord(k).norm();
            if !m.is_finite() {
                return Err(Error::NonFinite(format!("coordinate {k}")));
            }
            head = head.max(m);
            k += 1;
        }
        let b = bound(checkpoint);
        if head >= lim + b {
            return Ok(Certified::exact(head));
        }
        if b <= tol {
            let value = head.max(lim);
            let upper = head.max(lim + b);
            return Ok(Certified {
                value,
                error_bound: upper - value,
            });
        }
        if checkpoint >= budget {
            return Err(Error::IndexBudgetExceeded {
                needed: k_star,
                budget,
            });
        }
        checkpoint = checkpoint.saturating_mul(2).min(k_star).min(budget);
    }
}

/// Pointwise linear combination `Σ cᵢ vᵢ`.
pub fn lin_comb(coeffs: &[C64], vectors: &[SeqVector]) -> Result<SeqVector> {
    if coeffs.is_empty() || coeffs.len() != vectors.len() {
        return Err(Error::InvalidArgument(format!(
            "lin_comb needs matching nonempty lists, got {} coefficients and {} vectors",
            coeffs.len(),
            vectors.len()
        )));
    }
    let space = vectors[0].space;
    if let Some(bad) = vectors.iter().find(|v| v.space != space) {
        return Err(Error::TagMismatch(format!(
            "cannot combine {space} with {}",
            bad.space
        )));
    }
    if coeffs.len() == 1 {
        return Ok(vectors[0].scale(coeffs[0]));
    }
    let limit = coeffs
        .iter()
        .zip(vectors)
        .map(|(c, v)| c * v.limit)
        .sum::<C64>();
    let tail = coeffs
        .iter()
        .zip(vectors)
        .fold(TailCertificate::ZERO, |acc, (c, v)| {
            acc.plus(&v.tail.scaled(c.norm()))
        });
    let terms: Vec<(C64, CoordFn)> = coeffs
        .iter()
        .zip(vectors)
        .filter(|(c, _)| c.norm() != 0.0)
        .map(|(c, v)| (*c, v.coord.clone()))
        .collect();
    let coord: CoordFn = Arc::new(move |k| terms.iter().map(|(c, f)| c * f(k)).sum());
    SeqVector::from_parts(space, limit, tail, None, coord)
}

/// `sup_norm(u − v, tol)`.
pub fn distance(u: &SeqVector, v: &SeqVector, tol: f64) -> Result<Certified> {
    let diff = lin_comb(&[C64::new(1.0, 0.0), C64::new(-1.0, 0.0)], &[u.clone(), v.clone()])?;
    sup_norm(&diff, tol)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormTag {
    Sup,
    Euclidean,
}

/// A vector of `ℂᴺ` carrying the norm it is measured in.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteVector {
    coords: DVector<C64>,
    norm: NormTag,
}

impl FiniteVector {
    pub fn new(coords: DVector<C64>, norm: NormTag) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument("finite vectors need length ≥ 1".into()));
        }
        if coords.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite("finite vector coordinate".into()));
        }
        Ok(FiniteVector { coords, norm })
    }

    pub fn from_slice(coords: &[C64], norm: NormTag) -> Result<Self> {
        Self::new(DVector::from_column_slice(coords), norm)
    }

    pub fn coords(&self) -> &DVector<C64> {
        &self.coords
    }

    pub fn into_coords(self) -> DVector<C64> {
        self.coords
    }

    pub fn norm_tag(&self) -> NormTag {
        self.norm
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn norm(&self) -> f64 {
        norm_of(&self.coords, self.norm)
    }

    pub fn distance(&self, other: &FiniteVector) -> Result<f64> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(norm_of(&(&self.coords - &other.coords), self.norm))
    }
}

pub(crate) fn norm_of(v: &DVector<C64>, tag: NormTag) -> f64 {
    match tag {
        NormTag::Sup => v.iter().map(|z| z.norm()).fold(0.0, f64::max),
        NormTag::Euclidean => v.norm(),
    }
}

/// Either kind of vector, so orbit machinery can treat both worlds alike.
#[derive(Clone, Debug)]
pub enum Vector {
    Seq(SeqVector),
    Finite(FiniteVector),
}

impl From<SeqVector> for Vector {
    fn from(v: SeqVector) -> Self {
        Vector::Seq(v)
    }
}

impl From<FiniteVector> for Vector {
    fn from(v: FiniteVector) -> Self {
        Vector::Finite(v)
    }
}

impl Vector {
    pub fn norm(&self, tol: f64) -> Result<Certified> {
        match self {
            Vector::Seq(v) => sup_norm(v, tol),
            Vector::Finite(v) => Ok(Certified::exact(v.norm())),
        }
    }

    pub fn distance(&self, other: &Vector, tol: f64) -> Result<Certified> {
        match (self, other) {
            (Vector::Seq(a), Vector::Seq(b)) => distance(a, b, tol),
            (Vector::Finite(a), Vector::Finite(b)) => Ok(Certified::exact(a.distance(b)?)),
            _ => Err(Error::KindMismatch(
                "cannot measure between sequence and finite vectors".into(),
            )),
        }
    }

    /// `self − other`.
    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        match (self, other) {
            (Vector::Seq(a), Vector::Seq(b)) => Ok(Vector::Seq(lin_comb(
                &[C64::new(1.0, 0.0), C64::new(-1.0, 0.0)],
                &[a.clone(), b.clone()],
            )?)),
            (Vector::Finite(a), Vector::Finite(b)) => {
                if a.len() != b.len() {
                    return Err(Error::DimensionMismatch {
                        expected: a.len(),
                        got: b.len(),
                    });
                }
                Ok(Vector::Finite(FiniteVector::new(
                    a.coords() - b.coords(),
                    a.norm_tag(),
                )?))
            }
            _ => Err(Error::KindMismatch("cannot subtract across vector kinds".into())),
        }
    }

    pub fn as_seq(&self) -> Option<&SeqVector> {
        match self {
            Vector::Seq(v) => Some(v),
            Vector::Finite(_) => None,
        }
    }

    pub fn as_finite(&self) -> Option<&FiniteVector> {
        match self {
            Vector::Finite(v) => Some(v),
            Vector::Seq(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn harmonic_gap() -> SeqVector {
        // 1 − e^{iπ/k}; |1 − e^{iπ/k}| ≤ π/k.
        SeqVector::from_fn(
            SpaceTag::C0,
            c(0.0, 0.0),
            TailCertificate::new(PI, 1.0).unwrap(),
            |k| c(1.0, 0.0) - C64::from_polar(1.0, PI / k as f64),
        )
        .unwrap()
    }

    #[test]
    fn constant_one_has_norm_one() {
        let n = sup_norm(&SeqVector::one(), 1e-8).unwrap();
        assert_eq!(n.value, 1.0);
        assert!(n.error_bound <= 1e-8);
    }

    #[test]
    fn harmonic_gap_norm_is_two_at_first_coordinate() {
        let n = sup_norm(&harmonic_gap(), 1e-8).unwrap();
        assert!((n.value - 2.0).abs() <= 1e-12 + n.error_bound);
        assert!(n.error_bound <= 1e-8);
    }

    #[test]
    fn zero_vector_norm() {
        let n = sup_norm(&SeqVector::zero(SpaceTag::C0), 1e-8).unwrap();
        assert_eq!(n.value, 0.0);
    }

    #[test]
    fn non_positive_exponent_cannot_reach_tolerance() {
        let v = SeqVector::from_fn(
            SpaceTag::C,
            c(1.0, 0.0),
            TailCertificate::new(0.5, 0.0).unwrap(),
            |_| c(1.0, 0.0),
        )
        .unwrap();
        assert!(matches!(
            sup_norm(&v, 1e-3),
            Err(Error::UnreachableTolerance { .. })
        ));
    }

    #[test]
    fn budget_is_enforced() {
        // Head never dominates and the tail needs 10¹² coordinates.
        let v = SeqVector::from_fn(
            SpaceTag::C0,
            c(0.0, 0.0),
            TailCertificate::new(1.0, 1.0).unwrap(),
            |_| c(0.0, 0.0),
        )
        .unwrap();
        assert!(matches!(
            sup_norm_with_budget(&v, 1e-12, 1 << 12),
            Err(Error::IndexBudgetExceeded { .. })
        ));
    }

    #[test]
    fn cancellation_gives_zero() {
        let v = harmonic_gap();
        let z = lin_comb(&[c(1.0, 0.0), c(-1.0, 0.0)], &[v.clone(), v]).unwrap();
        assert_eq!(z.limit(), c(0.0, 0.0));
        assert_eq!(sup_norm(&z, 1e-6).unwrap().value, 0.0);
    }

    #[test]
    fn one_minus_symbol_sequence() {
        let a = SeqVector::from_fn(
            SpaceTag::C,
            c(1.0, 0.0),
            TailCertificate::new(PI, 1.0).unwrap(),
            |k| C64::from_polar(1.0, PI / k as f64),
        )
        .unwrap();
        let d = lin_comb(&[c(1.0, 0.0), c(-1.0, 0.0)], &[SeqVector::one(), a]).unwrap();
        assert_eq!(d.limit(), c(0.0, 0.0));
        for k in [1u64, 2, 7, 1000] {
            let want = c(1.0, 0.0) - C64::from_polar(1.0, PI / k as f64);
            assert!((d.coord(k) - want).norm() < 1e-15);
        }
    }

    #[test]
    fn zero_coefficient_gives_zero() {
        let z = lin_comb(&[c(0.0, 0.0)], &[harmonic_gap()]).unwrap();
        assert_eq!(sup_norm(&z, 1e-9).unwrap().value, 0.0);
    }

    #[test]
    fn mismatched_tags_rejected() {
        let r = lin_comb(
            &[c(1.0, 0.0), c(1.0, 0.0)],
            &[SeqVector::one(), harmonic_gap()],
        );
        assert!(matches!(r, Err(Error::TagMismatch(_))));
    }

    #[test]
    fn c0_requires_zero_limit() {
        assert!(SeqVector::one().in_space(SpaceTag::C0).is_err());
        assert!(harmonic_gap().in_space(SpaceTag::C).is_ok());
    }

    #[test]
    fn unit_vector_distances() {
        let e1 = SeqVector::unit(1).unwrap();
        let m = e1.scale(c(-1.0, 0.0));
        assert_eq!(distance(&e1, &e1, 1e-9).unwrap().value, 0.0);
        let d = distance(&e1, &m, 1e-9).unwrap();
        assert!((d.value - 2.0).abs() < 1e-15);
    }

    #[test]
    fn prefix_certificate_is_sound() {
        let v = SeqVector::from_prefix(SpaceTag::C, &[c(3.0, 0.0), c(-1.0, 2.0)], c(0.5, 0.0)).unwrap();
        assert!(v.check_certificate(1, 200) <= 0.0);
        assert!(v.check_certificate(5, 200) <= 0.0);
        let n = sup_norm(&v, 1e-10).unwrap();
        assert_eq!(n.value, 3.0);
    }

    #[test]
    fn index_for_is_minimal() {
        let t = TailCertificate::new(PI, 1.0).unwrap();
        let k = t.index_for(1e-3).unwrap();
        assert!(t.bound(k) <= 1e-3);
        assert!(t.bound(k - 1) > 1e-3);
    }

    #[test]
    fn finite_vector_norms() {
        let v = FiniteVector::from_slice(&[c(3.0, 0.0), c(0.0, 4.0)], NormTag::Euclidean).unwrap();
        assert!((v.norm() - 5.0).abs() < 1e-15);
        let s = FiniteVector::from_slice(&[c(3.0, 0.0), c(0.0, 4.0)], NormTag::Sup).unwrap();
        assert_eq!(s.norm(), 4.0);
        assert!(FiniteVector::from_slice(&[], NormTag::Sup).is_err());
    }
}
