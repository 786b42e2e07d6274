//! Seeded generators of small valid structures and morphisms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::es::{saturate, EsSpec, Raes};
use crate::morphism::{all_event_maps, check_raes_morphism, EsMorphism};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A valid rAES with between one and `max_events` events: random relations,
/// then the saturation pass; draws that still fail validation are retried.
pub fn random_raes(rng: &mut impl Rng, max_events: usize, prefix: &str) -> Raes {
    loop {
        let n = rng.random_range(1..=max_events);
        let ev: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
        let mut spec = EsSpec {
            events: ev.iter().cloned().collect(),
            ..EsSpec::default()
        };
        for (i, e) in ev.iter().enumerate() {
            if rng.random_bool(0.5) {
                spec.reversible.insert(e.clone());
                spec.rev_causation.insert((e.clone(), e.clone()));
            }
            for (j, e2) in ev.iter().enumerate() {
                if i < j && rng.random_bool(0.3) {
                    spec.causation.insert((e.clone(), e2.clone()));
                }
                if i != j && rng.random_bool(0.2) {
                    spec.weak_causality.insert((e.clone(), e2.clone()));
                }
            }
        }
        let reversible: Vec<String> = spec.reversible.iter().cloned().collect();
        for u in &reversible {
            for e in &ev {
                if e != u && rng.random_bool(0.2) {
                    spec.rev_causation.insert((e.clone(), u.clone()));
                } else if !spec.rev_causation.contains(&(e.clone(), u.clone())) && rng.random_bool(0.2) {
                    spec.prevention.insert((u.clone(), e.clone()));
                }
            }
        }
        let h = Raes::from_spec(&spec).expect("generated names are declared");
        if let Ok(h) = saturate(&h) {
            return h;
        }
    }
}

/// A uniformly chosen valid rAES-morphism (the everywhere-undefined map always qualifies).
pub fn random_raes_morphism(rng: &mut impl Rng, src: &Raes, dst: &Raes) -> EsMorphism {
    let valid: Vec<EsMorphism> = all_event_maps(src.events(), dst.events())
        .filter(|f| check_raes_morphism(src, dst, f).passed())
        .collect();
    valid[rng.random_range(0..valid.len())].clone()
}
