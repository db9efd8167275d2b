//! Dense complex linear algebra used by the matrix side of the lab.
//!
//! Eigenvalues come from nalgebra's complex Schur form. Everything
//! spectral built on top (eigenvalue clusters, semisimplicity, Riesz
//! eigenprojections, the power-boundedness certificate) lives here.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::seqspace::{NormTag, C64};

pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Eigenvalues closer than this are treated as one cluster.
pub const CLUSTER_RADIUS: f64 = 1e-6;

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn operator_norm(m: &CMatrix, tag: NormTag) -> f64 {
    match tag {
        NormTag::Sup => m
            .row_iter()
            .map(|row| row.iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max),
        NormTag::Euclidean => singular_values(m).first().copied().unwrap_or(0.0),
    }
}

/// Singular values, largest first.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.clone().singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

fn rank_threshold(sigma_max: f64, rel_tol: f64) -> f64 {
    rel_tol * sigma_max.max(1.0)
}

pub fn rank(m: &CMatrix, rel_tol: f64) -> usize {
    let s = singular_values(m);
    let thr = rank_threshold(s.first().copied().unwrap_or(0.0), rel_tol);
    s.iter().filter(|&&x| x > thr).count()
}

/// Orthonormal basis of `ker m` (columns).
pub fn null_space(m: &CMatrix, rel_tol: f64) -> CMatrix {
    let n = m.ncols();
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let sigma: Vec<f64> = svd.singular_values.iter().copied().collect();
    let smax = sigma.iter().copied().fold(0.0, f64::max);
    let thr = rank_threshold(smax, rel_tol);
    // Rows of Vᴴ beyond the computed singular values are also null.
    let cols: Vec<CVector> = (0..v_t.nrows())
        .filter(|&i| sigma.get(i).is_none_or(|&s| s <= thr))
        .map(|i| v_t.row(i).adjoint())
        .collect();
    if cols.is_empty() {
        return CMatrix::zeros(n, 0);
    }
    CMatrix::from_columns(&cols)
}

/// Orthonormal basis of the column space of `m`.
pub fn column_space(m: &CMatrix, rel_tol: f64) -> CMatrix {
    let rows = m.nrows();
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("requested U");
    let sigma: Vec<f64> = svd.singular_values.iter().copied().collect();
    let smax = sigma.iter().copied().fold(0.0, f64::max);
    let thr = rank_threshold(smax, rel_tol);
    let cols: Vec<CVector> = sigma
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > thr)
        .map(|(i, _)| u.column(i).into_owned())
        .collect();
    if cols.is_empty() {
        return CMatrix::zeros(rows, 0);
    }
    CMatrix::from_columns(&cols)
}

pub fn eigenvalues(m: &CMatrix) -> Vec<C64> {
    let schur = m.clone().schur();
    let (_, t) = schur.unpack();
    (0..t.nrows()).map(|i| t[(i, i)]).collect()
}

pub fn spectral_radius(m: &CMatrix) -> f64 {
    eigenvalues(m).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn power(m: &CMatrix, mut n: u64) -> CMatrix {
    let mut result = identity(m.nrows());
    let mut base = m.clone();
    while n > 0 {
        if n & 1 == 1 {
            result = &result * &base;
        }
        n >>= 1;
        if n > 0 {
            base = &base * &base;
        }
    }
    result
}

pub fn inverse(m: &CMatrix) -> Option<CMatrix> {
    m.clone().try_inverse()
}

/// Frobenius-free max-abs entry, the scale used for projection defects.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenCluster {
    pub center: C64,
    pub multiplicity: usize,
}

/// Groups eigenvalues within `radius` of each other (single linkage).
pub fn cluster_eigenvalues(eigs: &[C64], radius: f64) -> Vec<EigenCluster> {
    let n = eigs.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (eigs[i] - eigs[j]).norm() <= radius {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<(usize, Vec<C64>)> = Vec::new();
    for (i, &e) in eigs.iter().enumerate().take(n) {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|(root, _)| *root == r) {
            Some((_, g)) => g.push(e),
            None => groups.push((r, vec![e])),
        }
    }
    groups
        .into_iter()
        .map(|(_, g)| EigenCluster {
            center: g.iter().sum::<C64>() / g.len() as f64,
            multiplicity: g.len(),
        })
        .collect()
}

fn shifted(m: &CMatrix, lambda: C64) -> CMatrix {
    m - identity(m.nrows()) * lambda
}

/// `rank(T − λ) = rank((T − λ)²)`, i.e. λ has index at most one.
pub fn is_semisimple(m: &CMatrix, lambda: C64, rel_tol: f64) -> bool {
    let a = shifted(m, lambda);
    let a2 = &a * &a;
    rank(&a, rel_tol) == rank(&a2, rel_tol)
}

/// Riesz projection onto `ker(T − λ)` along `rg(T − λ)` for a semisimple λ:
/// `K (Wᴴ K)⁻¹ Wᴴ` with `K`, `W` bases of the right and left eigenspaces.
/// Returns `None` if λ is not (numerically) an eigenvalue or the pairing is
/// singular.
pub fn eigenprojection(m: &CMatrix, lambda: C64, rel_tol: f64) -> Option<CMatrix> {
    let a = shifted(m, lambda);
    let right = null_space(&a, rel_tol);
    let left = null_space(&a.adjoint(), rel_tol);
    if right.ncols() == 0 || right.ncols() != left.ncols() {
        return None;
    }
    let pairing = left.adjoint() * &right;
    let inv = inverse(&pairing)?;
    Some(&right * inv * left.adjoint())
}

/// Spectral evidence that `sup ‖Tⁿ‖ < ∞`: spectral radius at most
/// `1 + tol` and every peripheral eigenvalue semisimple.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralCertificate {
    pub spectral_radius: f64,
    pub peripheral: Vec<EigenCluster>,
    pub peripheral_semisimple: Vec<bool>,
    pub power_bounded: bool,
    pub reason: String,
}

pub fn certify_power_bounded(m: &CMatrix, tol: f64) -> SpectralCertificate {
    let eigs = eigenvalues(m);
    let rho = eigs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let clusters = cluster_eigenvalues(&eigs, CLUSTER_RADIUS.max(tol));
    let peripheral: Vec<EigenCluster> = clusters
        .into_iter()
        .filter(|c| c.center.norm() >= 1.0 - tol)
        .collect();
    let rank_tol = tol.max(1e-10);
    let flags: Vec<bool> = peripheral
        .iter()
        .map(|c| c.multiplicity == 1 || is_semisimple(m, c.center, rank_tol))
        .collect();
    let (power_bounded, reason) = if rho > 1.0 + tol {
        (false, format!("spectral radius {rho} exceeds 1 + {tol:e}"))
    } else if let Some(i) = flags.iter().position(|f| !f) {
        (
            false,
            format!(
                "peripheral eigenvalue {} (multiplicity {}) is defective",
                peripheral[i].center, peripheral[i].multiplicity
            ),
        )
    } else {
        (true, "spectral radius ≤ 1 and peripheral spectrum semisimple".into())
    };
    SpectralCertificate {
        spectral_radius: rho,
        peripheral,
        peripheral_semisimple: flags,
        power_bounded,
        reason,
    }
}
