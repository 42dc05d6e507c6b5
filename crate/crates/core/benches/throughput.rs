use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lexirank::grossnum::sergeyev_rank_with_classes;
use lexirank::levicivita::{self, LcNumber};
use lexirank::lexrank::{build_table_with, encode_rank, lex_compare};
use lexirank::par::{self, Execution};
use lexirank::MedalWord;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn words(n: usize, seed: u64) -> Vec<MedalWord> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let len = rng.gen_range(0..=8);
            MedalWord::new((0..len).map(|_| rng.gen_range(0..=20)).collect::<Vec<u64>>())
        })
        .collect()
}

fn table(c: &mut Criterion) {
    let rows: Vec<(String, MedalWord)> = words(10_000, 1)
        .into_iter()
        .enumerate()
        .map(|(i, w)| (format!("row{i}"), w))
        .collect();
    let mut group = c.benchmark_group("build_table_10k");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| build_table_with(&rows, 7, exec))
        });
    }
    group.finish();
}

fn isomorphism(c: &mut Criterion) {
    let (us, vs) = (words(2_000, 2), words(2_000, 3));
    let pairs: Vec<(MedalWord, MedalWord)> = us.into_iter().zip(vs).collect();
    let mut group = c.benchmark_group("isomorphism_sweep_2k");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                par::count(&pairs, exec, |(u, v)| {
                    let lex = lex_compare(u.letters(), v.letters());
                    let gross = sergeyev_rank_with_classes(u, 8)
                        .unwrap()
                        .compare(&sergeyev_rank_with_classes(v, 8).unwrap());
                    lex == encode_rank(u).cmp(&encode_rank(v)) && lex == gross
                })
            })
        });
    }
    group.finish();
}

fn derivatives(c: &mut Criterion) {
    let points: Vec<f64> = (0..1_000).map(|k| -3.0 + 6.0 * k as f64 / 1_000.0).collect();
    let f = |x: &LcNumber| {
        let s = x.sin()?;
        Ok(&(&s * &s) * &x.exp()?)
    };
    let mut group = c.benchmark_group("derivative_1k_points");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| levicivita::derivative_at_points(f, &points, 3, levicivita::DEFAULT_DEPTH, exec))
        });
    }
    group.finish();
}

criterion_group!(benches, table, isomorphism, derivatives);
criterion_main!(benches);
