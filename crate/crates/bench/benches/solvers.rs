use criterion::{black_box, criterion_group, criterion_main, Criterion};
use onerel::adian::{adian_run, AdianBudget};
use onerel::collatz::{build_system, run_trace};
use onerel::compress::reduce_to_canonical;
use onerel::search::{bfs_decide, BoundedCongruence, SearchBudget};
use onerel::units::sof_code;
use onerel::{classify, solve, Letter, SolveOptions};
use onerel_bench::{equality_fixtures, presentation, word, CODE_WORDS};

fn routes(c: &mut Criterion) {
    let opts = SolveOptions::default();
    let mut g = c.benchmark_group("solve");
    for (name, p, u, v) in equality_fixtures() {
        g.bench_function(name, |b| b.iter(|| solve(black_box(&p), &u, &v, &opts).unwrap()));
    }
    g.finish();
}

fn bounded_search(c: &mut Criterion) {
    let p = presentation("a,b | baababa = aba");
    let (u, v) = (word("abbaaababab"), word("babbaaababab"));
    c.bench_function("bfs_decide", |b| b.iter(|| bfs_decide(black_box(&u), &v, &p, SearchBudget::default())));
    let q = presentation("a,b | abb = ba");
    c.bench_function("atlas_build_12", |b| b.iter(|| BoundedCongruence::build(black_box(&q), 12)));
}

fn structure(c: &mut Criterion) {
    c.bench_function("sof_code", |b| {
        b.iter(|| CODE_WORDS.iter().map(|w| sof_code(&word(w)).words.len()).sum::<usize>())
    });
    let m4 = presentation("a,b,c,d | abdadadacbaca = abdadabdaca");
    c.bench_function("classify", |b| b.iter(|| classify(black_box(&m4))));
    c.bench_function("reduce_to_canonical", |b| b.iter(|| reduce_to_canonical(black_box(&m4))));
}

fn dynamics(c: &mut Criterion) {
    let p = presentation("a,b | baababa = aba");
    let (w, x) = (word("abbaaababab"), Letter::new("b").unwrap());
    c.bench_function("adian_run", |b| b.iter(|| adian_run(black_box(&w), x, &p, AdianBudget::default()).unwrap()));
    let s = build_system(&presentation("a,b | aabbaab = a")).unwrap();
    let (x0, y0) = (word("aaabb"), word("a"));
    c.bench_function("collatz_trace", |b| b.iter(|| run_trace(&s, black_box(&x0), &y0, 1000)));
}

criterion_group!(benches, routes, bounded_search, structure, dynamics);
criterion_main!(benches);
