use criterion::{black_box, criterion_group, criterion_main, Criterion};
use nilforge::rep::kostka;
use nilforge::{bch_product, decompose, delta_gamma, Partition, TupleSpec};
use nilforge_bench::sample_element;

fn bench_bch(c: &mut Criterion) {
    for (k, s) in [(2, 6), (3, 5)] {
        let x = sample_element(k, s, 1).unwrap();
        let y = sample_element(k, s, 2).unwrap();
        c.bench_function(&format!("bch_product F_{k},{s}"), |b| {
            b.iter(|| bch_product(black_box(&x), black_box(&y)).unwrap())
        });
    }
}

fn bench_decompose(c: &mut Criterion) {
    c.bench_function("decompose k=3 s=6", |b| b.iter(|| decompose(black_box(3), black_box(6)).unwrap()));
}

fn bench_kostka(c: &mut Criterion) {
    let shapes = Partition::all(6);
    c.bench_function("kostka table s=6", |b| {
        b.iter(|| {
            let mut total = 0u64;
            for w in &shapes {
                let wt = w.as_weight(w.rows()).unwrap();
                for m in &shapes {
                    total += kostka(m, &wt);
                }
            }
            total
        })
    });
}

fn bench_delta(c: &mut Criterion) {
    let t = TupleSpec::free_standard(2, 3).unwrap();
    let mut g = c.benchmark_group("delta_gamma");
    g.sample_size(10);
    g.bench_function("heisenberg n=6", |b| b.iter(|| delta_gamma(black_box(&t), 6).unwrap()));
    g.finish();
}

criterion_group!(benches, bench_bch, bench_decompose, bench_kostka, bench_delta);
criterion_main!(benches);
