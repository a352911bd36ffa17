use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use modisp::evolution::{evolve, SolveConfig};
use modisp::experiments::{run_singular_probe, run_strichartz_probe, SingularParams, StrichartzParams};
use modisp::par::Execution;
use modisp::spectral::{Field, Grid};
use modisp::symbol::Symbol;
use modisp::Complex64;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn evolve_2d(c: &mut Criterion) {
    let mut group = c.benchmark_group("evolve_2d");
    group.sample_size(10);
    let symbol = Symbol::parse("laplacian").unwrap();
    for (name, exec) in MODES {
        let grid = Grid::new(2, 256, 10.0).unwrap().with_execution(exec);
        let u0 = Field::from_fn(&grid, |x| Complex64::new((-(x[0] * x[0] + x[1] * x[1])).exp(), 0.0));
        let cfg = SolveConfig::new(symbol.clone(), 1.0, 1.0, 1e-2, 0.1);
        group.bench_with_input(BenchmarkId::from_parameter(name), &u0, |b, u0| b.iter(|| evolve(u0, &cfg).unwrap()));
    }
    group.finish();
}

fn strichartz_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("strichartz_sweep");
    group.sample_size(10);
    let symbol = Symbol::parse("arctan_step(h=1)").unwrap();
    for (name, execution) in MODES {
        let params = StrichartzParams { n_list: vec![8, 16], contrast: false, execution, ..StrichartzParams::default() };
        group.bench_function(name, |b| b.iter(|| run_strichartz_probe(&symbol, &params).unwrap()));
    }
    group.finish();
}

fn singular_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("singular_sweep");
    group.sample_size(10);
    for (name, execution) in MODES {
        let params = SingularParams { execution, ..SingularParams::default() };
        group.bench_function(name, |b| b.iter(|| run_singular_probe(&params).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, evolve_2d, strichartz_sweep, singular_sweep);
criterion_main!(benches);
