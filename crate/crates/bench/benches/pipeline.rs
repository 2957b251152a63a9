use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use topolaw::{
    degree_sequence, error_propagation_experiment, figure1_experiment, figure2_experiment,
    fit_frequency_law, fit_rank_law, frequency_from_ranks, generate_rank_degree,
    parse_edge_list_str, rank_table, ErrorSimConfig, FitFilter, SynthConfig,
};

fn star_forest(hubs: usize, leaves: usize) -> String {
    let mut s = String::new();
    for h in 0..hubs {
        for l in 0..leaves * (h + 1) {
            s.push_str(&format!("h{h} l{h}_{l}\n"));
        }
    }
    s
}

fn bench_ingest(c: &mut Criterion) {
    let text = star_forest(40, 25);
    c.bench_function("parse_and_degrees", |b| {
        b.iter(|| {
            let g = parse_edge_list_str(black_box(&text)).unwrap().graph;
            degree_sequence(&g)
        })
    });
}

fn bench_tables_and_fits(c: &mut Criterion) {
    let mut group = c.benchmark_group("tables_and_fits");
    for n in [2_000usize, 20_000, 200_000] {
        let cfg = SynthConfig::with_default_c1(n, -1.0, topolaw::Rounding::Nearest);
        let ranks = generate_rank_degree(&cfg).unwrap();
        group.bench_with_input(BenchmarkId::new("frequency_from_ranks", n), &ranks, |b, t| {
            b.iter(|| frequency_from_ranks(black_box(t)))
        });
        group.bench_with_input(BenchmarkId::new("fit_rank_law", n), &ranks, |b, t| {
            b.iter(|| fit_rank_law(black_box(t), &FitFilter::none()).unwrap())
        });
        let freqs = frequency_from_ranks(&ranks);
        group.bench_with_input(BenchmarkId::new("fit_frequency_law", n), &freqs, |b, t| {
            b.iter(|| fit_frequency_law(black_box(t), &FitFilter::singleton_tail(33)).unwrap())
        });
        let seq = topolaw::DegreeSequence::new(ranks.degrees().to_vec()).unwrap();
        group.bench_with_input(BenchmarkId::new("rank_table", n), &seq, |b, s| {
            b.iter(|| rank_table(black_box(s)).unwrap())
        });
    }
    group.finish();
}

fn bench_experiments(c: &mut Criterion) {
    let reference = SynthConfig::reference();
    c.bench_function("figure1_reference", |b| {
        b.iter(|| figure1_experiment(black_box(&reference)).unwrap())
    });
    c.bench_function("figure2_reference", |b| {
        b.iter(|| figure2_experiment(black_box(&reference), 33).unwrap())
    });
    let mut group = c.benchmark_group("errorsim");
    group.sample_size(10);
    group.bench_function("default", |b| {
        b.iter(|| error_propagation_experiment(black_box(&ErrorSimConfig::default())).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_ingest, bench_tables_and_fits, bench_experiments);
criterion_main!(benches);
