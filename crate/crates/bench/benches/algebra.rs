use criterion::{black_box, criterion_group, criterion_main, Criterion};
use treefix_core::dse::{solve, DseSpec};
use treefix_core::hopf::{antipode, coproduct, tree};
use treefix_core::opbialg::check_faa_di_bruno;
use treefix_core::ptrees::{enumerate_by_leaves, Signature};
use treefix_core::trees::{enumerate_comb_trees, CombTree};

fn dse(c: &mut Criterion) {
    c.bench_function("solve quadratic order 6", |b| {
        b.iter(|| solve(black_box(&DseSpec::quadratic(6))).unwrap())
    });
    c.bench_function("solve geometric order 6", |b| {
        b.iter(|| solve(black_box(&DseSpec::geometric(6))).unwrap())
    });
}

fn hopf(c: &mut Criterion) {
    let t = tree(CombTree::ladder(8));
    c.bench_function("coproduct ladder 8", |b| b.iter(|| coproduct(black_box(&t))));
    let v = tree("((()())(()()))".parse().unwrap());
    c.bench_function("antipode 7-node tree", |b| b.iter(|| antipode(black_box(&v))));
}

fn enumeration(c: &mut Criterion) {
    c.bench_function("comb trees n=10", |b| b.iter(|| enumerate_comb_trees(black_box(10)).unwrap()));
    let sig = Signature::stable(7);
    c.bench_function("stable trees 7 leaves", |b| {
        b.iter(|| enumerate_by_leaves(black_box(&sig), 7).unwrap())
    });
    c.bench_function("faa di bruno binary 4", |b| {
        b.iter(|| check_faa_di_bruno(black_box(&Signature::binary()), 4).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = dse, hopf, enumeration
}
criterion_main!(benches);
