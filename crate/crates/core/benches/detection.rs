use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use std::hint::black_box;

use shakekit::eval::{detect_batch, sweep_with};
use shakekit::synth::{generate_trace, noisy_spec, pure_noise_spec};
use shakekit::{process_trace, DetectorConfig, Execution};

fn replay_throughput(c: &mut Criterion) {
    let (trace, _) = generate_trace(&pure_noise_spec(1)).unwrap();
    let config = DetectorConfig::default();
    let mut group = c.benchmark_group("replay");
    group.throughput(Throughput::Elements(trace.samples.len() as u64));
    group.bench_function("process_trace", |b| {
        b.iter(|| process_trace(black_box(&trace.samples), &config).unwrap())
    });
    group.finish();
}

fn sweep_modes(c: &mut Criterion) {
    let (trace, labels) = generate_trace(&noisy_spec(1)).unwrap();
    let thresholds: Vec<f64> = (1..=16).map(|i| 0.2 * i as f64).collect();
    let delays: Vec<f64> = (0..8).map(|i| 0.1 * i as f64).collect();
    let mut group = c.benchmark_group("sweep_16x8");
    for (name, exec) in [
        ("sequential", Execution::Sequential),
        ("parallel", Execution::Parallel),
    ] {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| sweep_with(exec, &trace, &labels, &thresholds, &delays, 0.1).unwrap())
        });
    }
    group.finish();
}

fn batch_modes(c: &mut Criterion) {
    let traces: Vec<_> = (0..64)
        .map(|seed| generate_trace(&noisy_spec(seed)).unwrap().0.samples)
        .collect();
    let config = DetectorConfig::default();
    let total: usize = traces.iter().map(Vec::len).sum();
    let mut group = c.benchmark_group("batch_64_traces");
    group.throughput(Throughput::Elements(total as u64));
    for (name, exec) in [
        ("sequential", Execution::Sequential),
        ("parallel", Execution::Parallel),
    ] {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| detect_batch(exec, black_box(&traces), &config))
        });
    }
    group.finish();
}

criterion_group!(benches, replay_throughput, sweep_modes, batch_modes);
criterion_main!(benches);
