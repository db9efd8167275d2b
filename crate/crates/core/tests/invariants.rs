use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use orbitlab::ergodic::{cesaro_diagonal, cesaro_factor, cesaro_matrix};
use orbitlab::gallery::SymbolFamily;
use orbitlab::linalg::{self, CMatrix};
use orbitlab::matrix_file::{parse_matrix, write_matrix};
use orbitlab::operators::telescope_residual;
use orbitlab::orbits::{self, OrbitCloud, Label};
use orbitlab::*;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> C64 {
    Complex64::new(re, im)
}

fn arb_c64() -> impl Strategy<Value = C64> {
    (-3.0f64..3.0, -3.0f64..3.0).prop_map(|(re, im)| c(re, im))
}

fn harmonic() -> DiagonalOperator {
    SymbolFamily::harmonic().operator(SpaceTag::C).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sup_norm_of_prefix_vectors(prefix in prop::collection::vec(arb_c64(), 1..40), limit in arb_c64(), tol in 1e-10f64..1e-3) {
        let v = SeqVector::from_prefix(SpaceTag::C, &prefix, limit).unwrap();
        let exact = prefix.iter().map(|z| z.norm()).fold(limit.norm(), f64::max);
        let n = sup_norm(&v, tol).unwrap();
        prop_assert!(n.error_bound <= tol);
        prop_assert!((n.value - exact).abs() <= n.error_bound + 1e-15);
    }

    #[test]
    fn tail_index_meets_tolerance(constant in 0.01f64..10.0, exponent in 0.2f64..4.0, tol in 1e-8f64..1.0) {
        let t = TailCertificate::new(constant, exponent).unwrap();
        let k = t.index_for(tol).unwrap();
        prop_assert!(t.bound(k) <= tol);
    }

    #[test]
    fn unimodular_powers_are_isometric(prefix in prop::collection::vec(arb_c64(), 1..20), n in 0u64..500) {
        let op = harmonic();
        let v = SeqVector::from_prefix(SpaceTag::C0, &prefix, c(0.0, 0.0)).unwrap();
        let a = sup_norm(&v, 1e-9).unwrap();
        let b = sup_norm(&op.power_apply(n, &v).unwrap(), 1e-9).unwrap();
        prop_assert!((a.value - b.value).abs() <= a.error_bound + b.error_bound + 1e-12);
    }

    #[test]
    fn power_difference_matches_coordinates(n in -50i64..50, m in -50i64..50, k in 1u64..300) {
        let op = SymbolFamily::root_perturbed(3, 1.5).unwrap().operator(SpaceTag::C).unwrap();
        let v = SeqVector::one();
        let d = op.power_difference(n, m, &v).unwrap();
        let oracle = c(0.0, op.symbol().angle(k) * n as f64).exp() - c(0.0, op.symbol().angle(k) * m as f64).exp();
        prop_assert!((d.coord(k) - oracle).norm() < 1e-9);
        prop_assert!(d.check_certificate(1, 64) <= 1e-12);
    }

    #[test]
    fn cesaro_factor_is_the_average(theta in -7.0f64..7.0, n in 1u64..200) {
        let direct: C64 = (0..n).map(|j| c(0.0, theta * j as f64).exp()).sum::<C64>() / n as f64;
        prop_assert!((cesaro_factor(theta, n) - direct).norm() < 1e-9);
    }

    #[test]
    fn matrix_file_round_trip(entries in prop::collection::vec(arb_c64(), 9)) {
        let m = CMatrix::from_row_slice(3, 3, &entries);
        prop_assert_eq!(parse_matrix(&write_matrix(&m)).unwrap(), m);
    }

    #[test]
    fn packing_is_prefix_monotone(points in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 2..30), eps in 0.1f64..1.5) {
        let labels = (0..points.len() as u64).map(Label::Exponent).collect();
        let pts = points
            .iter()
            .map(|&(x, y)| FiniteVector::from_slice(&[c(x, 0.0), c(y, 0.0)], NormTag::Euclidean).unwrap().into())
            .collect();
        let cloud = OrbitCloud::from_points(labels, pts).unwrap();
        let prefixes: Vec<usize> = (1..=points.len()).collect();
        let profile = orbits::packing_profile(&cloud, eps, 1e-9, &prefixes).unwrap();
        prop_assert!(profile.windows(2).all(|w| w[0] <= w[1] && w[1] <= w[0] + 1));
        prop_assert!(profile.iter().zip(&prefixes).all(|(p, n)| p <= n));
    }
}

#[test]
fn cesaro_of_one_on_diagonal_matches_direct_sum() {
    let op = harmonic();
    let a = cesaro_diagonal(&op, &SeqVector::one(), 37).unwrap();
    for k in [1u64, 2, 5, 40, 1000] {
        let theta = op.symbol().angle(k);
        let direct: C64 = (0..37).map(|j| c(0.0, theta * j as f64).exp()).sum::<C64>() / 37.0;
        assert!((a.coord(k) - direct).norm() < 1e-12, "k = {k}");
    }
    assert!((a.limit() - c(1.0, 0.0)).norm() < 1e-15);
}

#[test]
fn cesaro_matrix_matches_power_sum() {
    let m = CMatrix::from_row_slice(2, 2, &[c(0.5, 0.1), c(0.2, 0.0), c(0.0, -0.3), c(0.9, 0.0)]);
    let mut sum = CMatrix::zeros(2, 2);
    let mut p = linalg::identity(2);
    for _ in 0..25 {
        sum += &p;
        p = &p * &m;
    }
    assert!(linalg::max_abs(&(cesaro_matrix(&m, 25) - sum / c(25.0, 0.0))) < 1e-12);
}

#[test]
fn telescope_on_commuting_diagonal_matrices() {
    let gens: Vec<Operator> = [[0.3, -0.8, 1.0], [PI / 5.0, 0.0, 2.0]]
        .iter()
        .map(|angles| {
            let entries: Vec<C64> = angles.iter().map(|&t| c(0.0, t).exp() * 0.9).collect();
            MatrixOperator::from_diagonal(&entries, NormTag::Euclidean).unwrap().into()
        })
        .collect();
    let x: Vector = FiniteVector::from_slice(&[c(1.0, 0.0), c(-2.0, 0.5), c(0.0, 3.0)], NormTag::Euclidean)
        .unwrap()
        .into();
    for exps in [[1u32, 0], [0, 3], [2, 2], [5, 4]] {
        assert!(telescope_residual(&gens, &exps, &x, 1e-12).unwrap() < 1e-12);
    }
}

#[test]
fn sequential_and_parallel_tables_agree() {
    let op: Operator = harmonic().into();
    let cloud = orbits::orbit(&op, &SeqVector::one().into(), 60).unwrap();
    let seq = cloud.clone().pairwise().with_execution(Execution::Sequential);
    let par = cloud.pairwise().with_execution(Execution::Parallel);
    let (a, b) = (seq.distances(1e-8).unwrap(), par.distances(1e-8).unwrap());
    for i in 0..60 {
        for j in 0..60 {
            assert_eq!(a.get(i, j), b.get(i, j));
        }
    }
}

#[test]
fn orbit_distances_oracle() {
    // sup_k |e^{iπD/k} − 1| = 2, attained at k = D.
    let op: Operator = harmonic().into();
    let cloud = orbits::orbit(&op, &SeqVector::one().into(), 50).unwrap();
    for (i, j) in [(0, 1), (3, 17), (10, 49)] {
        let d = cloud.distance(i, j, 1e-8).unwrap();
        assert!((d.value - 2.0).abs() <= d.error_bound + 1e-12, "{i} {j} {d:?}");
    }
}

#[test]
fn random_unitary_has_no_aws_part() {
    // Q from a QR factorisation is unitary, so P = I and the stable part is trivial.
    let raw = DMatrix::from_fn(5, 5, |i, j| c(((i * 7 + j * 3) % 11) as f64 - 5.0, ((i + 2 * j) % 5) as f64));
    let q = raw.qr().q();
    let op = MatrixOperator::new(q, NormTag::Euclidean).unwrap();
    let split = orbitlab::jdlg::jdlg_split(&op, 1e-9).unwrap();
    assert_eq!(split.rev_dim(), 5);
    assert_eq!(split.aws_dim(), 0);
    assert!(linalg::max_abs(&(split.projection - linalg::identity(5))) < 1e-8);
}
