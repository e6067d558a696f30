use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use filtra_bench::LinearA;
use filtra_core::approx::{precover, preenvelope};
use filtra_core::conflation::ext_space;
use filtra_core::filtration::{decide_filtered, oracle_filtered, reorder, Filtration};
use filtra_core::quiverrep::{enumerate_reps, is_isomorphic, krull_schmidt};
use filtra_core::search::Budget;
use filtra_core::Matrix;

fn linalg(c: &mut Criterion) {
    let q = LinearA::new(2, 3);
    let mut g = c.benchmark_group("linalg");
    for n in [8usize, 16, 32] {
        let entries = (0..n * n).map(|i| ((i * 7 + i / n) % 3) as u32).collect();
        let m = Matrix::from_vec(q.field, n, n, entries).unwrap();
        g.bench_with_input(BenchmarkId::new("rref", n), &m, |b, m| b.iter(|| m.rref()));
        g.bench_with_input(BenchmarkId::new("kernel", n), &m, |b, m| b.iter(|| m.kernel_basis()));
    }
    g.finish();
}

fn ext(c: &mut Criterion) {
    let mut g = c.benchmark_group("ext_space");
    for n in [3usize, 5, 7] {
        let q = LinearA::new(n, 2);
        let p = q.projective(0).power(2);
        let s = q.simple(n - 1).power(2);
        g.bench_with_input(BenchmarkId::new("A_n", n), &(p, s), |b, (p, s)| b.iter(|| ext_space(s, p).unwrap()));
    }
    g.finish();
}

fn decomposition(c: &mut Criterion) {
    let q = LinearA::new(3, 2);
    let m = filtra_core::quiverrep::direct_sum(&q.projective(0).power(2), &q.projective(1)).unwrap().sum;
    let n = m.transport(&m.dims().iter().map(|&d| Matrix::identity(q.field, d)).collect::<Vec<_>>()).unwrap().0;
    c.bench_function("krull_schmidt/P1^2+P2", |b| b.iter(|| krull_schmidt(&m).unwrap()));
    c.bench_function("is_isomorphic/P1^2+P2", |b| b.iter(|| is_isomorphic(&m, &n).unwrap()));
    c.bench_function("enumerate_reps/A3 (1,2,1)", |b| {
        b.iter(|| enumerate_reps(&q.quiver, q.field, &[1, 2, 1], &mut Budget::unlimited()).unwrap())
    });
}

fn filtrations(c: &mut Criterion) {
    let q = LinearA::new(3, 2);
    let theta = q.simples();
    let m = q.projective(0).power(2);
    c.bench_function("decide_filtered/P1^2", |b| {
        b.iter(|| decide_filtered(&m, &theta, &mut Budget::unlimited()).unwrap())
    });
    c.bench_function("oracle_filtered/P1^2", |b| {
        b.iter(|| oracle_filtered(&m, &theta, &mut Budget::unlimited()).unwrap())
    });
    let mut f = Filtration::from_extensions(&theta, &[]).unwrap();
    for label in [0, 2, 1, 0, 2] {
        let dim = ext_space(theta.member(label), f.object()).unwrap().dim();
        f.push_extension(&theta, label, vec![1; dim]).unwrap();
    }
    c.bench_function("reorder/length 5", |b| b.iter(|| reorder(&f, &theta).unwrap()));
}

fn approximations(c: &mut Criterion) {
    let q = LinearA::new(3, 2);
    let theta = q.simples();
    let x = q.simple(2).power(2);
    c.bench_function("preenvelope/S3^2", |b| b.iter(|| preenvelope(&x, &theta).unwrap()));
    let x = q.simple(0).power(2);
    c.bench_function("precover/S1^2", |b| b.iter(|| precover(&x, &theta).unwrap()));
}

criterion_group!(benches, linalg, ext, decomposition, filtrations, approximations);
criterion_main!(benches);
