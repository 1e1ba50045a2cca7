use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use delone_bench::{random_matrix, random_square, skewed_lattice};
use delone_core::catalog::{e8, lattice_by_name};
use delone_core::enumerate::Enumerator;
use delone_core::lattice::Lattice;
use delone_core::linalg::{hnf, lll_reduce, rank_certified, rank_exact};
use delone_core::matrix::RatMatrix;
use delone_core::rational::{rat, RatVec};

fn bench_cvp(c: &mut Criterion) {
    let mut g = c.benchmark_group("cvp");
    let cases: Vec<(&str, Lattice)> = vec![
        ("e8", e8().unwrap()),
        ("lambda23", lattice_by_name("lambda23").unwrap()),
        ("leech", lattice_by_name("leech").unwrap()),
    ];
    for (name, l) in &cases {
        let en = Enumerator::new(l).unwrap();
        let x: RatVec = (0..l.rank()).map(|i| rat((7 * i as i64 + 3) % 11, 11)).collect();
        g.bench_with_input(BenchmarkId::from_parameter(name), &x, |b, x| b.iter(|| en.closest_vectors(black_box(x)).unwrap()));
    }
    g.finish();
}

fn bench_lll(c: &mut Criterion) {
    let mut g = c.benchmark_group("lll");
    for n in [8, 16, 24] {
        let gram = skewed_lattice(n, n as u64).gram().clone();
        g.bench_with_input(BenchmarkId::from_parameter(n), &gram, |b, gram| b.iter(|| lll_reduce(black_box(gram)).unwrap()));
    }
    g.finish();
}

fn bench_hnf(c: &mut Criterion) {
    let mut g = c.benchmark_group("hnf");
    for n in [8, 16, 32] {
        let m = random_matrix(n, n, 50, n as u64);
        g.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| hnf(black_box(m))));
    }
    g.finish();
}

fn bench_rank(c: &mut Criterion) {
    let mut g = c.benchmark_group("rank");
    for n in [16, 48] {
        let m = random_matrix(2 * n, n, 1000, n as u64);
        let r = RatMatrix::from_int_matrix(&m);
        g.bench_with_input(BenchmarkId::new("certified", n), &m, |b, m| b.iter(|| rank_certified(black_box(m))));
        g.bench_with_input(BenchmarkId::new("exact", n), &r, |b, r| b.iter(|| rank_exact(black_box(r))));
    }
    let sq = RatMatrix::from_i64_rows(&random_square(24, 9, 5));
    g.bench_function("exact/24-square", |b| b.iter(|| rank_exact(black_box(&sq))));
    g.finish();
}

criterion_group! {
    name = kernels;
    config = Criterion::default().sample_size(10);
    targets = bench_cvp, bench_lll, bench_hnf, bench_rank
}
criterion_main!(kernels);
