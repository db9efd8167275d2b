use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use orbitlab::ergodic::mean_ergodic_projection;
use orbitlab::gallery::SymbolFamily;
use orbitlab::linalg::CMatrix;
use orbitlab::orbits::{self, gap_norms};
use orbitlab::witness::bp_test;
use orbitlab::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn harmonic() -> DiagonalOperator {
    SymbolFamily::harmonic().operator(SpaceTag::C).unwrap()
}

fn distance_fill(c: &mut Criterion) {
    let op: Operator = harmonic().into();
    let cloud = orbits::orbit(&op, &SeqVector::one().into(), 120).unwrap().pairwise();
    let mut group = c.benchmark_group("distance_fill_h120");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            // A fresh clone per iteration so the table cache never hits.
            b.iter(|| black_box(cloud.clone().with_execution(mode).distances(1e-8).unwrap()))
        });
    }
    group.finish();
}

fn gap_table(c: &mut Criterion) {
    let op = harmonic();
    let one = SeqVector::one();
    let mut group = c.benchmark_group("gap_table_2000");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(gap_norms(&op, &one, 2000, 1e-8, mode).unwrap()))
        });
    }
    group.finish();
}

fn subset_audit(c: &mut Criterion) {
    let units: Vec<SeqVector> = (1..=20).map(|k| SeqVector::unit(k).unwrap()).collect();
    let mut group = c.benchmark_group("subset_audit_400");
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(bp_test(&units, 400, 1e-8, 7, mode).unwrap()))
        });
    }
    group.finish();
}

fn matrix_battery(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let ops: Vec<MatrixOperator> = (0..16)
        .map(|_| {
            let m = CMatrix::from_fn(8, 8, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let norm = orbitlab::linalg::operator_norm(&m, NormTag::Euclidean);
            MatrixOperator::new(m / C64::new(1.25 * norm, 0.0), NormTag::Euclidean).unwrap()
        })
        .collect();
    let mut group = c.benchmark_group("mean_ergodic_battery_16");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(mode.map_slice(&ops, |op| mean_ergodic_projection(op, 1e-8).map(|d| d.residual))))
        });
    }
    group.finish();
}

criterion_group!(benches, distance_fill, gap_table, subset_audit, matrix_battery);
criterion_main!(benches);
