use criterion::{black_box, criterion_group, criterion_main, Criterion};
use socode::design::wso_search;
use socode::{Field, GfMatrix, LinearCode, OrbitMatrix, PermGroup};
use socode_bench::{code_22, design_22, m11};

fn field(c: &mut Criterion) {
    let f = Field::with_order(49).unwrap();
    c.bench_function("gf49 full multiplication table", |b| {
        b.iter(|| f.elements().map(|x| f.elements().fold(0, |acc, y| f.add(acc, f.mul(x, y)))).sum::<u32>())
    });
}

fn linear_algebra(c: &mut Criterion) {
    let f = Field::with_order(9).unwrap();
    let rows: Vec<Vec<u32>> = (0..40u32).map(|i| (0..60u32).map(|j| (i * 7 + j * j + i * j) % 9).collect()).collect();
    let m = GfMatrix::from_rows(&f, 60, &rows).unwrap();
    c.bench_function("rref 40x60 over GF(9)", |b| b.iter(|| black_box(&m).rref()));
}

fn groups(c: &mut Criterion) {
    let gens = m11(22).generators().to_vec();
    c.bench_function("enumerate M11 on 22 points", |b| {
        b.iter(|| PermGroup::new(22, gens.clone()).unwrap().order().unwrap())
    });
    let g66 = m11(66);
    g66.elements().unwrap();
    c.bench_function("wso search on 66 points", |b| b.iter(|| wso_search(&g66, 0, 2).unwrap().len()));
}

fn orbit_matrix(c: &mut Criterion) {
    let d = design_22();
    let h = m11(22).prime_order_subgroups(11).unwrap().remove(0);
    c.bench_function("orbit matrix 22 points under Z11", |b| {
        b.iter(|| OrbitMatrix::build(&d, &h).unwrap().verify_counting_identity(&d).unwrap())
    });
}

fn weights(c: &mut Criterion) {
    let code = code_22();
    c.bench_function("weight distribution [22,10] serial", |b| {
        b.iter(|| code.weight_distribution_with(1 << 20, false).unwrap())
    });
    let f = Field::with_order(4).unwrap();
    let rows: Vec<Vec<u32>> = (0..8u32).map(|i| (0..16u32).map(|j| (i + j * (i + 1)) % 4).collect()).collect();
    let quaternary = LinearCode::new(GfMatrix::from_rows(&f, 16, &rows).unwrap());
    c.bench_function("weight distribution GF(4) k=8 parallel", |b| {
        b.iter(|| quaternary.weight_distribution_with(1 << 20, true).unwrap())
    });
}

criterion_group!(benches, field, linear_algebra, groups, orbit_matrix, weights);
criterion_main!(benches);
