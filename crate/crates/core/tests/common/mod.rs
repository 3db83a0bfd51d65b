//! Randomized corpus shared by the integration suites.
#![allow(dead_code)]

use concise_core::datagen::{generate, GeneratorSpec};
use concise_core::par;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DENSITIES: [f64; 5] = [1.0, 0.1, 0.01, 1e-3, 1e-4];
pub const CARDINALITIES: [u32; 7] = [0, 1, 2, 31, 32, 1000, 10_000];

#[derive(Debug, Clone)]
pub struct Case {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
}

fn random_set(rng: &mut ChaCha8Rng) -> Vec<u32> {
    let cardinality = CARDINALITIES[rng.random_range(0..CARDINALITIES.len())];
    let density = DENSITIES[rng.random_range(0..DENSITIES.len())];
    generate(&GeneratorSpec::uniform(cardinality, density, rng.random())).unwrap()
}

/// A set overlapping `base`: a random subset of it plus nearby extras.
fn derived_set(rng: &mut ChaCha8Rng, base: &[u32]) -> Vec<u32> {
    let keep = rng.random_range(0.0..1.0);
    let mut out: Vec<u32> = base.iter().copied().filter(|_| rng.random_bool(keep)).collect();
    let top = base.last().map_or(100, |&m| m as u64 + 64);
    let extras = rng.random_range(0..=base.len().min(64));
    out.extend((0..extras).map(|_| rng.random_range(0..top) as u32));
    out.sort_unstable();
    out.dedup();
    out
}

fn case(seed: u64, index: u64) -> Case {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let a = random_set(&mut rng);
    let b = if rng.random_bool(0.3) { derived_set(&mut rng, &a) } else { random_set(&mut rng) };
    if rng.random_bool(0.5) {
        Case { a, b }
    } else {
        Case { a: b, b: a }
    }
}

/// `count` operand pairs drawn over the density and cardinality grids.
pub fn corpus(count: usize, seed: u64) -> Vec<Case> {
    let indices: Vec<u64> = (0..count as u64).collect();
    par::map(&indices, true, |&i| case(seed, i))
}
