use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use revnet::acn::configurations_by_subsets;
use revnet::bridge::{raes_to_racn, NamingScheme};
use revnet::es::{aes_configurations_with, raes_coproduct, Aes, EsSpec, Raes};
use revnet::fixtures;
use revnet::morphism::{mediating_raes, EsMorphism};
use revnet::racn::forward_restriction;
use revnet::Exec;

const STRATEGIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

/// `n` events where `e{i}` causes every later event of the same parity and
/// weakly precedes `e{i+1}`.
fn ladder(n: usize) -> EsSpec {
    let ev: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let mut spec = EsSpec {
        events: ev.iter().cloned().collect(),
        ..EsSpec::default()
    };
    for i in 0..n {
        for j in (i + 2..n).step_by(2) {
            spec.causation.insert((ev[i].clone(), ev[j].clone()));
            spec.weak_causality.insert((ev[i].clone(), ev[j].clone()));
        }
        if i + 1 < n {
            spec.weak_causality.insert((ev[i].clone(), ev[i + 1].clone()));
        }
    }
    spec
}

fn aes_subsets(c: &mut Criterion) {
    let g = Aes::from_spec(&ladder(16)).unwrap();
    let mut group = c.benchmark_group("aes_configurations");
    for (name, exec) in STRATEGIES {
        group.bench_with_input(BenchmarkId::new(name, 16), &g, |b, g| {
            b.iter(|| aes_configurations_with(g, exec).unwrap())
        });
    }
    group.finish();
}

fn net_subsets(c: &mut Criterion) {
    let mut spec = ladder(14);
    spec.reversible = spec.events.iter().step_by(3).cloned().collect();
    spec.rev_causation = spec.reversible.iter().map(|u| (u.clone(), u.clone())).collect();
    let h = Raes::from_spec(&spec).unwrap();
    let net = forward_restriction(&raes_to_racn(&h, &NamingScheme::default()).unwrap());
    let mut group = c.benchmark_group("net_configurations_by_subsets");
    for (name, exec) in STRATEGIES {
        group.bench_with_input(BenchmarkId::new(name, 14), &net, |b, net| {
            b.iter(|| configurations_by_subsets(net, exec))
        });
    }
    group.finish();
}

fn mediating_search(c: &mut Criterion) {
    let h = fixtures::raes("h");
    let (sum, inj) = raes_coproduct(&h, &h).unwrap();
    let id = EsMorphism::identity(h.events());
    let cospan = [id.clone(), id];
    let mut group = c.benchmark_group("mediating_raes");
    group.sample_size(20);
    for (name, exec) in STRATEGIES {
        group.bench_function(name, |b| b.iter(|| mediating_raes(&sum, &inj, &h, &cospan, exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, aes_subsets, net_subsets, mediating_search);
criterion_main!(benches);
