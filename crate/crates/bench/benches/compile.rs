use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use gaugeqc::compiler::compile;
use gaugeqc::residual::{postselect_generators, residual_by_rules, residual_recursive};
use gaugeqc::simulator::run_postselected;
use gaugeqc::tensor::{apply_fully_symmetric, TransferTensor};
use gaugeqc::C64;
use gaugeqc_bench::{plus_inputs, qaoa_cyclic, qft_phases};

fn bench_compile(c: &mut Criterion) {
    let mut g = c.benchmark_group("compile");
    for n in [2u32, 4, 6] {
        let circ = qaoa_cyclic(n, 2, 0.3, 0.7);
        let inputs = plus_inputs(n);
        g.bench_with_input(BenchmarkId::new("qaoa_cyclic_p2", n), &n, |b, _| {
            b.iter(|| compile(black_box(&circ), &inputs).unwrap())
        });
    }
    let circ = qft_phases(4);
    let inputs = plus_inputs(4);
    g.bench_function("qft_phases_4", |b| {
        b.iter(|| compile(black_box(&circ), &inputs).unwrap())
    });
    g.finish();
}

fn bench_simulate(c: &mut Criterion) {
    let circ = qaoa_cyclic(3, 1, 0.3, 0.7);
    let pattern = compile(&circ, &plus_inputs(3)).unwrap();
    c.bench_function("run_postselected_qaoa3", |b| {
        b.iter(|| run_postselected(black_box(&pattern), None).unwrap())
    });
}

fn bench_residual(c: &mut Criterion) {
    let circ = qft_phases(3);
    let pattern = compile(&circ, &plus_inputs(3)).unwrap();
    let ms = postselect_generators(&pattern);
    c.bench_function("residual_recursive_qft3", |b| {
        b.iter(|| residual_recursive(black_box(&pattern), &ms).unwrap())
    });
    c.bench_function("residual_rules_qft3", |b| {
        b.iter(|| residual_by_rules(black_box(&pattern), &ms).unwrap())
    });
}

fn bench_gauge(c: &mut Criterion) {
    let t = TransferTensor::new(
        5,
        (0..1usize << 10)
            .map(|k| C64::new((k as f64).sin(), (k as f64).cos()))
            .collect(),
    );
    c.bench_function("fully_symmetric_n5", |b| {
        b.iter(|| apply_fully_symmetric(black_box(&t)))
    });
}

criterion_group!(benches, bench_compile, bench_simulate, bench_residual, bench_gauge);
criterion_main!(benches);
