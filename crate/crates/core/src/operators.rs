//! Diagonal unimodular multiplication operators on `c`/`c₀`, dense matrices
//! on `ℂᴺ`, formal words over commuting generators and the telescoping
//! expansion of `I − ∏ T_j^{k_j}`.

use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gallery::SymbolFamily;
use crate::linalg::{self, CMatrix};
use crate::seqspace::{
    sup_norm, FiniteVector, NormTag, SeqVector, SpaceTag, TailCertificate, Vector, C64,
};

/// Coordinates inspected when a diagonal identity is checked numerically
/// rather than symbolically.
pub const DIAGONAL_PROBE_PREFIX: u64 = 4096;

pub type AngleFn = Arc<dyn Fn(u64) -> f64 + Send + Sync>;

/// Where a symbol came from; decides what symbolic reasoning applies.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SymbolShape {
    Family(SymbolFamily),
    Constant { angle: f64 },
    Custom,
}

/// `k ↦ a_k = e^{iθ_k}`, stored as angles so every power stays on the unit
/// circle exactly. `angle_tail` bounds `|θ_k − θ_∞|`, which also bounds the
/// chord `|a_k − a_∞|`.
#[derive(Clone)]
pub struct DiagonalSymbol {
    angle: AngleFn,
    limit_angle: f64,
    angle_tail: TailCertificate,
    shape: SymbolShape,
}

impl fmt::Debug for DiagonalSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DiagonalSymbol")
            .field("shape", &self.shape)
            .field("limit_angle", &self.limit_angle)
            .field("angle_tail", &self.angle_tail)
            .finish()
    }
}

impl DiagonalSymbol {
    pub fn custom<F>(limit_angle: f64, angle_tail: TailCertificate, angle: F) -> Result<Self>
    where
        F: Fn(u64) -> f64 + Send + Sync + 'static,
    {
        Self::build(Arc::new(angle), limit_angle, angle_tail, SymbolShape::Custom)
    }

    pub fn constant(angle: f64) -> Self {
        DiagonalSymbol {
            angle: Arc::new(move |_| angle),
            limit_angle: angle,
            angle_tail: TailCertificate::ZERO,
            shape: SymbolShape::Constant { angle },
        }
    }

    pub(crate) fn build(
        angle: AngleFn,
        limit_angle: f64,
        angle_tail: TailCertificate,
        shape: SymbolShape,
    ) -> Result<Self> {
        if !limit_angle.is_finite() {
            return Err(Error::NonFinite("limit angle".into()));
        }
        Ok(DiagonalSymbol {
            angle,
            limit_angle,
            angle_tail,
            shape,
        })
    }

    pub fn angle(&self, k: u64) -> f64 {
        (self.angle)(k)
    }

    pub fn value(&self, k: u64) -> C64 {
        C64::from_polar(1.0, self.angle(k))
    }

    pub fn limit_angle(&self) -> f64 {
        self.limit_angle
    }

    pub fn limit_value(&self) -> C64 {
        C64::from_polar(1.0, self.limit_angle)
    }

    pub fn angle_tail(&self) -> TailCertificate {
        self.angle_tail
    }

    pub fn shape(&self) -> &SymbolShape {
        &self.shape
    }

    /// `n·θ_k` reduced to `[0, 2π)`.
    pub fn power_angle(&self, k: u64, n: i64) -> f64 {
        (n as f64 * self.angle(k)).rem_euclid(TAU)
    }

    pub fn limit_power_angle(&self, n: i64) -> f64 {
        (n as f64 * self.limit_angle).rem_euclid(TAU)
    }

    pub fn inverse(&self) -> DiagonalSymbol {
        let inner = self.angle.clone();
        let shape = match self.shape {
            SymbolShape::Constant { angle } => SymbolShape::Constant { angle: -angle },
            _ => SymbolShape::Custom,
        };
        DiagonalSymbol {
            angle: Arc::new(move |k| -inner(k)),
            limit_angle: -self.limit_angle,
            angle_tail: self.angle_tail,
            shape,
        }
    }
}

/// `(Tx)_k = a_k x_k` on `c` or `c₀`; an invertible isometry.
#[derive(Clone, Debug)]
pub struct DiagonalOperator {
    symbol: Arc<DiagonalSymbol>,
    space: SpaceTag,
}

impl DiagonalOperator {
    pub fn new(symbol: DiagonalSymbol, space: SpaceTag) -> Self {
        DiagonalOperator {
            symbol: Arc::new(symbol),
            space,
        }
    }

    pub fn symbol(&self) -> &DiagonalSymbol {
        &self.symbol
    }

    pub fn space(&self) -> SpaceTag {
        self.space
    }

    pub fn restricted_to(&self, space: SpaceTag) -> DiagonalOperator {
        DiagonalOperator {
            symbol: self.symbol.clone(),
            space,
        }
    }

    pub fn inverse(&self) -> DiagonalOperator {
        DiagonalOperator::new(self.symbol.inverse(), self.space)
    }

    pub fn apply(&self, v: &SeqVector) -> Result<SeqVector> {
        self.power_apply_signed(1, v)
    }

    pub fn power_apply(&self, n: u64, v: &SeqVector) -> Result<SeqVector> {
        let n = i64::try_from(n)
            .map_err(|_| Error::InvalidArgument(format!("exponent {n} too large")))?;
        self.power_apply_signed(n, v)
    }

    /// `Tⁿv` for any integer `n`, negative powers using the inverse symbol.
    pub fn power_apply_signed(&self, n: i64, v: &SeqVector) -> Result<SeqVector> {
        if self.space == SpaceTag::C0 && v.space() == SpaceTag::C {
            return Err(Error::TagMismatch(
                "operator acts on c0 but the vector lives in c".into(),
            ));
        }
        if n == 0 {
            return Ok(v.clone());
        }
        let symbol = self.symbol.clone();
        let inner = v.coord_fn().clone();
        let limit = C64::from_polar(1.0, symbol.limit_power_angle(n)) * v.limit();
        // |a_kⁿx_k − a_∞ⁿx_∞| ≤ |x_k − x_∞| + |x_∞|·|n|·|θ_k − θ_∞|
        let tail = v
            .tail()
            .plus(&symbol.angle_tail.scaled(n.unsigned_abs() as f64 * v.limit().norm()));
        let envelope = Some(v.envelope().unwrap_or(v.tail()));
        let coord = Arc::new(move |k| C64::from_polar(1.0, symbol.power_angle(k, n)) * inner(k));
        SeqVector::from_parts(v.space(), limit, tail, envelope, coord)
    }

    /// `(Tⁿ − Tᵐ)v`. Unlike `lin_comb` of two powers this keeps an envelope:
    /// `|a_kⁿ − a_kᵐ| ≤ min(2, |a_∞ⁿ − a_∞ᵐ| + (|n|+|m|)·|θ_k − θ_∞|)`, so a
    /// supremum sitting at the limit coordinate is certified cheaply.
    pub fn power_difference(&self, n: i64, m: i64, v: &SeqVector) -> Result<SeqVector> {
        if self.space == SpaceTag::C0 && v.space() == SpaceTag::C {
            return Err(Error::TagMismatch(
                "operator acts on c0 but the vector lives in c".into(),
            ));
        }
        let symbol = self.symbol.clone();
        let inner = v.coord_fn().clone();
        let gap = C64::from_polar(1.0, symbol.limit_power_angle(n))
            - C64::from_polar(1.0, symbol.limit_power_angle(m));
        let limit = gap * v.limit();
        let lim_v = v.limit().norm();
        let spread = (n.unsigned_abs() + m.unsigned_abs()) as f64;
        let drift = symbol.angle_tail.scaled(spread * lim_v);
        let tail = v.tail().scaled(2.0).plus(&drift);
        let env_v = v.envelope().unwrap_or(v.tail());
        let envelope = if gap.norm() >= 2.0 {
            env_v.scaled(2.0)
        } else {
            env_v.scaled(2.0).plus(&drift)
        };
        let coord = Arc::new(move |k| {
            (C64::from_polar(1.0, symbol.power_angle(k, n))
                - C64::from_polar(1.0, symbol.power_angle(k, m)))
                * inner(k)
        });
        // An exactly vanishing limit puts the result in c₀.
        let space = if limit == C64::new(0.0, 0.0) {
            SpaceTag::C0
        } else {
            v.space()
        };
        SeqVector::from_parts(space, limit, tail, Some(envelope), coord)
    }
}

/// A dense `N×N` complex matrix with the norm it is measured in.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixOperator {
    entries: CMatrix,
    norm: NormTag,
}

impl MatrixOperator {
    pub fn new(entries: CMatrix, norm: NormTag) -> Result<Self> {
        if entries.nrows() == 0 || entries.nrows() != entries.ncols() {
            return Err(Error::InvalidArgument(format!(
                "matrix operators must be square and nonempty, got {}×{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        if entries.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite("matrix entry".into()));
        }
        Ok(MatrixOperator { entries, norm })
    }

    pub fn from_diagonal(entries: &[C64], norm: NormTag) -> Result<Self> {
        Self::new(
            CMatrix::from_diagonal(&linalg::CVector::from_column_slice(entries)),
            norm,
        )
    }

    pub fn identity(n: usize, norm: NormTag) -> Self {
        MatrixOperator {
            entries: linalg::identity(n),
            norm,
        }
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn norm_tag(&self) -> NormTag {
        self.norm
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn operator_norm(&self) -> f64 {
        linalg::operator_norm(&self.entries, self.norm)
    }

    pub fn norm_of(&self, m: &CMatrix) -> f64 {
        linalg::operator_norm(m, self.norm)
    }

    pub fn power(&self, n: u64) -> CMatrix {
        linalg::power(&self.entries, n)
    }

    pub fn apply(&self, v: &FiniteVector) -> Result<FiniteVector> {
        self.check_dim(v)?;
        FiniteVector::new(&self.entries * v.coords(), v.norm_tag())
    }

    pub fn power_apply(&self, n: u64, v: &FiniteVector) -> Result<FiniteVector> {
        self.check_dim(v)?;
        FiniteVector::new(self.power(n) * v.coords(), v.norm_tag())
    }

    fn check_dim(&self, v: &FiniteVector) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: v.len(),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub enum Operator {
    Diagonal(DiagonalOperator),
    Matrix(MatrixOperator),
}

impl From<DiagonalOperator> for Operator {
    fn from(op: DiagonalOperator) -> Self {
        Operator::Diagonal(op)
    }
}

impl From<MatrixOperator> for Operator {
    fn from(op: MatrixOperator) -> Self {
        Operator::Matrix(op)
    }
}

impl Operator {
    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        self.power_apply(1, v)
    }

    pub fn power_apply(&self, n: u64, v: &Vector) -> Result<Vector> {
        match (self, v) {
            (Operator::Diagonal(op), Vector::Seq(x)) => Ok(Vector::Seq(op.power_apply(n, x)?)),
            (Operator::Matrix(op), Vector::Finite(x)) => Ok(Vector::Finite(op.power_apply(n, x)?)),
            _ => Err(Error::KindMismatch(
                "diagonal operators act on sequences, matrices on finite vectors".into(),
            )),
        }
    }

    pub fn as_diagonal(&self) -> Option<&DiagonalOperator> {
        match self {
            Operator::Diagonal(d) => Some(d),
            Operator::Matrix(_) => None,
        }
    }

    pub fn as_matrix(&self) -> Option<&MatrixOperator> {
        match self {
            Operator::Matrix(m) => Some(m),
            Operator::Diagonal(_) => None,
        }
    }
}

/// `∏ T_j^{k_j}` over an ordered generator list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OperatorWord {
    exponents: Vec<u32>,
}

impl OperatorWord {
    pub fn new(exponents: Vec<u32>) -> Self {
        OperatorWord { exponents }
    }

    pub fn identity(generators: usize) -> Self {
        OperatorWord {
            exponents: vec![0; generators],
        }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn total_degree(&self) -> u64 {
        self.exponents.iter().map(|&k| k as u64).sum()
    }

    /// Applies the word right to left; generators commute, so the order
    /// only matters numerically.
    pub fn apply(&self, generators: &[Operator], v: &Vector) -> Result<Vector> {
        if generators.len() != self.exponents.len() {
            return Err(Error::DimensionMismatch {
                expected: self.exponents.len(),
                got: generators.len(),
            });
        }
        let mut out = v.clone();
        for (op, &k) in generators.iter().zip(&self.exponents).rev() {
            if k > 0 {
                out = op.power_apply(k as u64, &out)?;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(j, k)| format!("T{}^{}", j + 1, k))
            .collect();
        if parts.is_empty() {
            f.write_str("I")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TelescopeTerm {
    pub word: OperatorWord,
    /// Zero-based index `j` of the factor `(I − T_j)`.
    pub generator: usize,
}

/// Terms of `I − ∏ T_j^{k_j} = Σ_j Σ_{l<k_j} (∏_{i<j} T_i^{k_i}) T_j^l (I − T_j)`.
/// The inner sum runs over `l = 0..k_j−1`; shifting it to `1..=k_j` would
/// produce `T_j(I − T_j^{k_j})` instead.
pub fn telescope_expand(exponents: &[u32]) -> Result<Vec<TelescopeTerm>> {
    if exponents.iter().all(|&k| k == 0) {
        return Err(Error::EmptyWord);
    }
    let m = exponents.len();
    let mut terms = Vec::with_capacity(exponents.iter().map(|&k| k as usize).sum());
    for (j, &kj) in exponents.iter().enumerate() {
        for l in 0..kj {
            let mut word = vec![0; m];
            word[..j].copy_from_slice(&exponents[..j]);
            word[j] = l;
            terms.push(TelescopeTerm {
                word: OperatorWord::new(word),
                generator: j,
            });
        }
    }
    Ok(terms)
}

/// `‖(I − ∏T^k)x − Σ word·(I − T_j)x‖`, the defect of the expansion on `x`.
pub fn telescope_residual(
    generators: &[Operator],
    exponents: &[u32],
    x: &Vector,
    tol: f64,
) -> Result<f64> {
    let terms = telescope_expand(exponents)?;
    let lhs = x.sub(&OperatorWord::new(exponents.to_vec()).apply(generators, x)?)?;
    let mut rhs: Option<Vector> = None;
    for term in &terms {
        let diff = x.sub(&generators[term.generator].apply(x)?)?;
        let piece = term.word.apply(generators, &diff)?;
        rhs = Some(match rhs {
            None => piece,
            Some(acc) => add(&acc, &piece)?,
        });
    }
    let rhs = rhs.expect("at least one term");
    let defect = lhs.sub(&rhs)?.norm(tol)?;
    Ok(defect.value + defect.error_bound)
}

fn add(a: &Vector, b: &Vector) -> Result<Vector> {
    match (a, b) {
        (Vector::Finite(x), Vector::Finite(y)) => Ok(Vector::Finite(FiniteVector::new(
            x.coords() + y.coords(),
            x.norm_tag(),
        )?)),
        (Vector::Seq(x), Vector::Seq(y)) => Ok(Vector::Seq(crate::seqspace::lin_comb(
            &[C64::new(1.0, 0.0), C64::new(1.0, 0.0)],
            &[x.clone(), y.clone()],
        )?)),
        _ => Err(Error::KindMismatch("cannot add across vector kinds".into())),
    }
}

/// `max ‖T_iT_jx − T_jT_ix‖` over generator pairs and probes. Diagonal
/// generators are compared on the first [`DIAGONAL_PROBE_PREFIX`]
/// coordinates and the limit, since they act coordinatewise.
pub fn commutation_defect(generators: &[Operator], probes: &[Vector]) -> Result<f64> {
    if probes.is_empty() {
        return Err(Error::InvalidArgument("commutation_defect needs a probe".into()));
    }
    let mut worst = 0.0_f64;
    for i in 0..generators.len() {
        for j in (i + 1)..generators.len() {
            for x in probes {
                let ij = generators[i].apply(&generators[j].apply(x)?)?;
                let ji = generators[j].apply(&generators[i].apply(x)?)?;
                let d = match (&ij, &ji) {
                    (Vector::Finite(a), Vector::Finite(b)) => a.distance(b)?,
                    (Vector::Seq(a), Vector::Seq(b)) => (1..=DIAGONAL_PROBE_PREFIX)
                        .map(|k| (a.coord(k) - b.coord(k)).norm())
                        .fold((a.limit() - b.limit()).norm(), f64::max),
                    _ => unreachable!("apply preserves vector kind"),
                };
                worst = worst.max(d);
            }
        }
    }
    Ok(worst)
}

/// Commuting power-bounded generators and `M = sup_S ‖S‖ + 1`.
#[derive(Clone, Debug)]
pub struct CommutingFamily {
    generators: Vec<Operator>,
    bound_m: f64,
}

impl CommutingFamily {
    /// `bound_m` uses the product of the generators' power-bound estimates
    /// over `horizon`, an upper estimate for every word.
    pub fn new(generators: Vec<Operator>, probes: &[Vector], tol: f64, horizon: u64) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidArgument("a family needs generators".into()));
        }
        let diagonal = generators.iter().filter(|g| g.as_diagonal().is_some()).count();
        if diagonal != 0 && diagonal != generators.len() {
            return Err(Error::KindMismatch("generators must all be diagonal or all matrices".into()));
        }
        let defect = commutation_defect(&generators, probes)?;
        if defect > tol {
            return Err(Error::NonCommuting { defect, tol });
        }
        let mut product = 1.0;
        for g in &generators {
            product *= power_bound_estimate(g, horizon, &[], tol)?.sup_power_norm;
        }
        Ok(CommutingFamily {
            generators,
            bound_m: product + 1.0,
        })
    }

    pub fn generators(&self) -> &[Operator] {
        &self.generators
    }

    pub fn bound_m(&self) -> f64 {
        self.bound_m
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerBoundReport {
    pub horizon: u64,
    /// `sup_{0≤n≤horizon} ‖Tⁿ‖`.
    pub sup_power_norm: f64,
    pub power_bounded: bool,
    pub reason: String,
    /// Per probe, `inf_{0≤n≤horizon} ‖Tⁿx‖`.
    pub probe_inf_norms: Vec<f64>,
}

pub fn power_bound_estimate(
    op: &Operator,
    horizon: u64,
    probes: &[Vector],
    tol: f64,
) -> Result<PowerBoundReport> {
    if horizon == 0 {
        return Err(Error::InvalidArgument("horizon must be ≥ 1".into()));
    }
    match op {
        Operator::Diagonal(_) => {
            let probe_inf_norms = probes
                .iter()
                .map(|p| match p {
                    Vector::Seq(v) => Ok(sup_norm(v, tol)?.value),
                    Vector::Finite(_) => Err(Error::KindMismatch("diagonal probe must be a sequence".into())),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(PowerBoundReport {
                horizon,
                sup_power_norm: 1.0,
                power_bounded: true,
                reason: "unimodular diagonal operators are isometries".into(),
                probe_inf_norms,
            })
        }
        Operator::Matrix(m) => {
            let mut sup: f64 = 1.0;
            let mut current = linalg::identity(m.dim());
            let probe_vecs: Vec<&FiniteVector> = probes
                .iter()
                .map(|p| p.as_finite().ok_or_else(|| Error::KindMismatch("matrix probe must be finite".into())))
                .collect::<Result<_>>()?;
            let mut infs: Vec<f64> = probe_vecs.iter().map(|p| p.norm()).collect();
            for _ in 0..horizon {
                current = &current * m.entries();
                sup = sup.max(m.norm_of(&current));
                for (inf, p) in infs.iter_mut().zip(&probe_vecs) {
                    let v = crate::seqspace::norm_of(&(&current * p.coords()), p.norm_tag());
                    *inf = inf.min(v);
                }
            }
            let cert = linalg::certify_power_bounded(m.entries(), tol);
            Ok(PowerBoundReport {
                horizon,
                sup_power_norm: sup,
                power_bounded: cert.power_bounded,
                reason: cert.reason,
                probe_inf_norms: infs,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::SymbolFamily;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn harmonic() -> DiagonalOperator {
        SymbolFamily::harmonic().operator(SpaceTag::C).unwrap()
    }

    #[test]
    fn harmonic_flips_first_unit_vector() {
        let e1 = SeqVector::unit(1).unwrap();
        let t = harmonic().apply(&e1).unwrap();
        assert!((t.coord(1) - c(-1.0, 0.0)).norm() < 1e-15);
        assert_eq!(t.coord(2), c(0.0, 0.0));
    }

    #[test]
    fn identity_symbol_is_identity() {
        let id = DiagonalOperator::new(DiagonalSymbol::constant(0.0), SpaceTag::C);
        let v = SeqVector::from_prefix(SpaceTag::C, &[c(1.0, 2.0), c(-3.0, 0.5)], c(0.25, 0.0)).unwrap();
        let w = id.apply(&v).unwrap();
        for k in 1..5 {
            assert_eq!(w.coord(k), v.coord(k));
        }
        assert_eq!(w.limit(), v.limit());
    }

    #[test]
    fn one_by_one_matrix_times_i() {
        let t = MatrixOperator::from_diagonal(&[c(0.0, 1.0)], NormTag::Euclidean).unwrap();
        let x = FiniteVector::from_slice(&[c(1.0, 0.0)], NormTag::Euclidean).unwrap();
        assert_eq!(t.apply(&x).unwrap().coords()[0], c(0.0, 1.0));
    }

    #[test]
    fn power_zero_is_identity_and_angle_doubling() {
        let t = harmonic();
        let e2 = SeqVector::unit(2).unwrap();
        let z = t.power_apply(0, &e2).unwrap();
        assert_eq!(z.coord(2), c(1.0, 0.0));
        let sq = t.power_apply(2, &e2).unwrap();
        assert!((sq.coord(2) - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn scalar_matrix_power() {
        let t = MatrixOperator::from_diagonal(&[c(0.5, 0.0)], NormTag::Sup).unwrap();
        let x = FiniteVector::from_slice(&[c(1.0, 0.0)], NormTag::Sup).unwrap();
        let y = t.power_apply(10, &x).unwrap();
        assert!((y.coords()[0].re - 0.5f64.powi(10)).abs() < 1e-18);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let t = MatrixOperator::identity(3, NormTag::Sup);
        let x = FiniteVector::from_slice(&[c(1.0, 0.0)], NormTag::Sup).unwrap();
        assert!(matches!(t.apply(&x), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn telescope_single_generator() {
        let terms = telescope_expand(&[2]).unwrap();
        let words: Vec<_> = terms.iter().map(|t| (t.word.exponents().to_vec(), t.generator)).collect();
        assert_eq!(words, vec![(vec![0], 0), (vec![1], 0)]);
    }

    #[test]
    fn telescope_two_generators() {
        let terms = telescope_expand(&[1, 1]).unwrap();
        let words: Vec<_> = terms.iter().map(|t| (t.word.exponents().to_vec(), t.generator)).collect();
        assert_eq!(words, vec![(vec![0, 0], 0), (vec![1, 0], 1)]);
    }

    #[test]
    fn telescope_rejects_empty_word() {
        assert!(matches!(telescope_expand(&[0, 0]), Err(Error::EmptyWord)));
    }

    #[test]
    fn telescope_length_is_total_degree() {
        assert_eq!(telescope_expand(&[3, 0, 4]).unwrap().len(), 7);
    }

    #[test]
    fn diagonal_family_commutes() {
        let a: Operator = harmonic().into();
        let b: Operator = SymbolFamily::root_perturbed(3, 2.0).unwrap().operator(SpaceTag::C).unwrap().into();
        let d = commutation_defect(&[a, b], &[SeqVector::one().into()]).unwrap();
        assert!(d < 1e-14);
    }

    #[test]
    fn generic_matrices_do_not_commute() {
        let a = MatrixOperator::new(
            CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]),
            NormTag::Euclidean,
        )
        .unwrap();
        let b = MatrixOperator::new(
            CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]),
            NormTag::Euclidean,
        )
        .unwrap();
        let probe = FiniteVector::from_slice(&[c(1.0, 0.0), c(0.0, 0.0)], NormTag::Euclidean).unwrap();
        // AB e1 = 0·…, BA e1 = B(0) … ; [A, B] = diag(1, −1).
        let d = commutation_defect(&[a.into(), b.into()], &[probe.into()]).unwrap();
        assert!((d - 1.0).abs() < 1e-15);
    }

    #[test]
    fn power_bounds() {
        let diag: Operator = harmonic().into();
        let r = power_bound_estimate(&diag, 10, &[], 1e-9).unwrap();
        assert_eq!(r.sup_power_norm, 1.0);

        let half = MatrixOperator::from_diagonal(&[c(0.5, 0.0), c(1.0, 0.0)], NormTag::Euclidean).unwrap();
        let e1 = FiniteVector::from_slice(&[c(1.0, 0.0), c(0.0, 0.0)], NormTag::Euclidean).unwrap();
        let r = power_bound_estimate(&half.into(), 20, &[e1.into()], 1e-9).unwrap();
        assert!((r.probe_inf_norms[0] - 0.5f64.powi(20)).abs() < 1e-18);
        assert!(r.power_bounded);

        let two = MatrixOperator::from_diagonal(&[c(2.0, 0.0)], NormTag::Euclidean).unwrap();
        let r = power_bound_estimate(&two.into(), 30, &[], 1e-9).unwrap();
        assert!((r.sup_power_norm - 2f64.powi(30)).abs() < 1e-3);
        assert!(!r.power_bounded);
    }

    #[test]
    fn inverse_symbol_composes_to_identity() {
        let t = harmonic();
        let v = SeqVector::one();
        let back = t.inverse().apply(&t.apply(&v).unwrap()).unwrap();
        for k in [1u64, 2, 3, 50, 999] {
            assert!((back.coord(k) - c(1.0, 0.0)).norm() < 1e-12);
        }
        assert!((t.symbol().angle(4) - PI / 4.0).abs() < 1e-16);
    }
}
