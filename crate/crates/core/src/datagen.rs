//! Deterministic synthetic integer sets.
//!
//! Randomness comes from ChaCha8 (`rand_chacha`) seeded with
//! `seed_from_u64`. Uniform values use `Rng::random_range` from `rand` 0.9;
//! Zipf values use `rand_distr::Zipf` (rejection-inversion sampling) from
//! `rand_distr` 0.5. Duplicates are redrawn until the requested number of
//! distinct values is reached. Changing any of these is a breaking change
//! to generated data and bumps [`GENERATOR_VERSION`].

use std::collections::HashSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, Zipf};
use thiserror::Error;

use crate::MAX_ALLOWED;

pub const GENERATOR_VERSION: u32 = 1;

/// Default Zipf exponent.
pub const DEFAULT_SKEW: f64 = 1.0;

/// Draws allowed per requested element before giving up.
const MAX_DRAWS_PER_ELEMENT: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Distribution {
    /// Every value in `0..range` equally likely, `range = ceil(n / density)`.
    Uniform { density: f64 },
    /// `P(v) ∝ 1 / (v + 1)^skew` over `0..range`, `range = ceil(n * max_ratio)`.
    Zipf { max_ratio: f64, skew: f64 },
}

impl Distribution {
    pub fn name(&self) -> &'static str {
        match self {
            Distribution::Uniform { .. } => "uniform",
            Distribution::Zipf { .. } => "zipf",
        }
    }

    /// Density for uniform data, max/cardinality for Zipf data.
    pub fn shape_parameter(&self) -> f64 {
        match *self {
            Distribution::Uniform { density } => density,
            Distribution::Zipf { max_ratio, .. } => max_ratio,
        }
    }

    pub fn skew(&self) -> Option<f64> {
        match *self {
            Distribution::Uniform { .. } => None,
            Distribution::Zipf { skew, .. } => Some(skew),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorSpec {
    pub distribution: Distribution,
    pub cardinality: u32,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("infeasible spec: {0}")]
    Infeasible(String),
    #[error("gave up after {draws} draws with {found} of {wanted} distinct values")]
    Exhausted { draws: u64, found: usize, wanted: u32 },
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.distribution {
            Distribution::Uniform { density } => {
                write!(f, "uniform n={} density={} seed={}", self.cardinality, density, self.seed)
            }
            Distribution::Zipf { max_ratio, skew } => write!(
                f,
                "zipf n={} max/n={} skew={} seed={}",
                self.cardinality, max_ratio, skew, self.seed
            ),
        }
    }
}

/// `x` rounded to the nearest integer when it is within floating-point noise
/// of one, otherwise its ceiling.
fn ceil_tolerant(x: f64) -> f64 {
    let nearest = x.round();
    if (x - nearest).abs() <= 1e-9 * x.abs().max(1.0) {
        nearest
    } else {
        x.ceil()
    }
}

impl GeneratorSpec {
    pub fn uniform(cardinality: u32, density: f64, seed: u64) -> Self {
        GeneratorSpec { distribution: Distribution::Uniform { density }, cardinality, seed }
    }

    pub fn zipf(cardinality: u32, max_ratio: f64, skew: f64, seed: u64) -> Self {
        GeneratorSpec { distribution: Distribution::Zipf { max_ratio, skew }, cardinality, seed }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        GeneratorSpec { seed, ..self }
    }

    /// Size of the value range `0..range` the set is drawn from.
    pub fn range(&self) -> Result<u64, GenError> {
        let n = self.cardinality as f64;
        let range = match self.distribution {
            Distribution::Uniform { density } => {
                if !(density > 0.0 && density <= 1.0) {
                    return Err(GenError::Infeasible(format!("density {density} is outside (0, 1]")));
                }
                ceil_tolerant(n / density)
            }
            Distribution::Zipf { max_ratio, skew } => {
                if !(max_ratio >= 1.0 && max_ratio.is_finite()) {
                    return Err(GenError::Infeasible(format!("max/cardinality {max_ratio} is below 1")));
                }
                if !(skew > 0.0 && skew.is_finite()) {
                    return Err(GenError::Infeasible(format!("skew {skew} must be positive")));
                }
                ceil_tolerant(n * max_ratio)
            }
        };
        if range > MAX_ALLOWED as f64 + 1.0 {
            return Err(GenError::Infeasible(format!(
                "range {range} exceeds the largest representable integer {MAX_ALLOWED}"
            )));
        }
        let range = range as u64;
        if (self.cardinality as u64) > range {
            return Err(GenError::Infeasible(format!("cardinality {} exceeds range {range}", self.cardinality)));
        }
        Ok(range)
    }
}

/// Draws `spec.cardinality` distinct integers and returns them ascending.
pub fn generate(spec: &GeneratorSpec) -> Result<Vec<u32>, GenError> {
    let range = spec.range()?;
    let wanted = spec.cardinality;
    if wanted == 0 {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut seen = HashSet::with_capacity(wanted as usize);
    let mut values = Vec::with_capacity(wanted as usize);
    let budget = MAX_DRAWS_PER_ELEMENT * wanted as u64;
    let mut draws = 0u64;

    let mut draw: Box<dyn FnMut(&mut ChaCha8Rng) -> u32> = match spec.distribution {
        Distribution::Uniform { .. } => Box::new(move |rng| rng.random_range(0..range) as u32),
        Distribution::Zipf { skew, .. } => {
            let zipf = Zipf::new(range as f64, skew).map_err(|e| GenError::Infeasible(e.to_string()))?;
            // Samples are 1-based ranks.
            Box::new(move |rng| zipf.sample(rng) as u32 - 1)
        }
    };
    while values.len() < wanted as usize {
        if draws == budget {
            return Err(GenError::Exhausted { draws, found: values.len(), wanted });
        }
        draws += 1;
        let v = draw(&mut rng);
        if seen.insert(v) {
            values.push(v);
        }
    }
    values.sort_unstable();
    Ok(values)
}
