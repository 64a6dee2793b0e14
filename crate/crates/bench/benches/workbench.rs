use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use workbench_core::hilbert::check_proof;
use workbench_core::kalmar::prove_tautology;
use workbench_core::machines::{Calculus, Crank};
use workbench_core::matrix::find_independence;
use workbench_core::predicate::monadic_decide;
use workbench_core::sequent::nd_prove_tautology;
use workbench_core::syllogistic::{valid_syll, SyllOptions};
use workbench_core::truth::is_tautology;
use workbench_core::Formula;

fn f(s: &str) -> Formula {
    s.parse().expect("benchmark formula parses")
}

fn propositional(c: &mut Criterion) {
    let peirce = f("((p -> q) -> p) -> p");
    let assoc = f("(p | (q | r)) -> (q | (p | r))");
    let wide = f("(p & q & r & s & t) -> (p | q | r | s | t)");
    c.bench_function("truth table, 5 variables", |b| b.iter(|| is_tautology(black_box(&wide))));
    c.bench_function("hilbert synthesis, peirce", |b| b.iter(|| prove_tautology(black_box(&peirce))));
    let proof = prove_tautology(&assoc).expect("tautology");
    c.bench_function("hilbert check, permutation", |b| b.iter(|| check_proof(black_box(&proof))));
    c.bench_function("sequent synthesis, peirce", |b| b.iter(|| nd_prove_tautology(black_box(&peirce))));
}

fn searches(c: &mut Criterion) {
    c.bench_function("independence of axiom 2", |b| b.iter(|| find_independence(black_box(2), 3)));
    let m = f("(x)(P(x) -> Q(x)) & (Ex)P(x) -> (Ex)Q(x)");
    c.bench_function("monadic decision, 2 predicates", |b| b.iter(|| monadic_decide(black_box(&m))));
    let darapti = f("a(alpha,beta) & a(alpha,gamma) -> i(beta,gamma)");
    c.bench_function("syllogistic search, darapti", |b| {
        b.iter(|| valid_syll(black_box(&darapti), &SyllOptions::default()))
    });
    c.bench_function("crank, 200 theorems", |b| b.iter(|| Crank::new(Calculus::Prop).take(200).count()));
}

criterion_group!(benches, propositional, searches);
criterion_main!(benches);
