//! Memory and timing experiments over generated sets, with CSV output.
//!
//! Each spec point generates one set `A` from its [`GeneratorSpec`] and, for
//! binary operations, a second set `B` from the same spec with the seed
//! mixed with [`OPERAND_SEED_SALT`]. Timings are means over the requested
//! repetitions, measured with a monotonic clock after a short untimed
//! warm-up.

use std::fmt;
use std::hint::black_box;
use std::io;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::datagen::{generate, GenError, GeneratorSpec};
use crate::oracle::{PlainBitmap, SortedList};
use crate::{par, ConciseSet, SetOp, WahSet};

pub const DEFAULT_REPETITIONS: u32 = 100;
pub const OPERAND_SEED_SALT: u64 = 0x9E37_79B9_7F4A_7C15;
const MAX_WARMUP: u32 = 10;

pub const CSV_HEADER: [&str; 9] = [
    "structure",
    "distribution",
    "cardinality",
    "density_or_maxratio",
    "skew",
    "seed",
    "metric",
    "value",
    "repetitions",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Structure {
    Concise,
    Wah,
    Bitmap,
    Array,
}

impl Structure {
    pub const ALL: [Structure; 4] = [Structure::Concise, Structure::Wah, Structure::Bitmap, Structure::Array];

    pub fn name(self) -> &'static str {
        match self {
            Structure::Concise => "concise",
            Structure::Wah => "wah",
            Structure::Bitmap => "bitmap",
            Structure::Array => "array",
        }
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Structure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Structure::ALL
            .into_iter()
            .find(|st| st.name() == s.to_ascii_lowercase())
            .ok_or_else(|| format!("unknown structure `{s}` (expected concise, wah, bitmap or array)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    WordsPerElement,
    IntersectNanos,
    UnionNanos,
    XorNanos,
    DiffNanos,
    AppendNanos,
    RemoveNanos,
}

impl Metric {
    pub const ALL: [Metric; 7] = [
        Metric::WordsPerElement,
        Metric::IntersectNanos,
        Metric::UnionNanos,
        Metric::XorNanos,
        Metric::DiffNanos,
        Metric::AppendNanos,
        Metric::RemoveNanos,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::WordsPerElement => "words_per_element",
            Metric::IntersectNanos => "intersect_nanos",
            Metric::UnionNanos => "union_nanos",
            Metric::XorNanos => "xor_nanos",
            Metric::DiffNanos => "diff_nanos",
            Metric::AppendNanos => "append_nanos",
            Metric::RemoveNanos => "remove_nanos",
        }
    }

    fn short_name(self) -> &'static str {
        self.name().split('_').next().unwrap()
    }

    fn binary_op(self) -> Option<SetOp> {
        match self {
            Metric::IntersectNanos => Some(SetOp::And),
            Metric::UnionNanos => Some(SetOp::Or),
            Metric::XorNanos => Some(SetOp::Xor),
            Metric::DiffNanos => Some(SetOp::AndNot),
            _ => None,
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.to_ascii_lowercase();
        Metric::ALL
            .into_iter()
            .find(|m| m.name() == s || m.short_name() == s)
            .ok_or_else(|| {
                format!("unknown metric `{s}` (expected words, intersect, union, xor, diff, append or remove)")
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkSpec {
    pub generator: GeneratorSpec,
    pub structures: Vec<Structure>,
    pub metrics: Vec<Metric>,
    pub repetitions: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkResult {
    pub structure: Structure,
    pub metric: Metric,
    pub spec: GeneratorSpec,
    /// Mean over `repetitions` runs.
    pub value: f64,
    pub repetitions: u32,
}

impl BenchmarkResult {
    pub fn csv_record(&self) -> [String; 9] {
        [
            self.structure.name().to_string(),
            self.spec.distribution.name().to_string(),
            self.spec.cardinality.to_string(),
            self.spec.distribution.shape_parameter().to_string(),
            self.spec.distribution.skew().map(|s| s.to_string()).unwrap_or_default(),
            self.spec.seed.to_string(),
            self.metric.name().to_string(),
            self.value.to_string(),
            self.repetitions.to_string(),
        ]
    }
}

/// The sets of one spec point in every structure.
struct Fixture {
    values: Vec<u32>,
    concise: ConciseSet,
    wah: WahSet,
    bitmap: PlainBitmap,
    array: SortedList,
}

impl Fixture {
    fn build(values: Vec<u32>) -> Self {
        Fixture {
            concise: ConciseSet::from_sorted(&values).expect("generator output is sorted"),
            wah: WahSet::from_sorted(&values).expect("generator output is sorted"),
            bitmap: PlainBitmap::from_values(&values),
            array: SortedList::from_sorted(values.clone()).expect("generator output is sorted"),
            values,
        }
    }

    fn words_per_element(&self, structure: Structure) -> f64 {
        let n = self.values.len();
        if n == 0 {
            return 0.0;
        }
        let words = match structure {
            Structure::Concise => self.concise.word_count(),
            Structure::Wah => self.wah.word_count(),
            Structure::Bitmap => self.bitmap.memory_words(),
            Structure::Array => self.array.len(),
        };
        words as f64 / n as f64
    }
}

/// Mean of `reps` measurements after up to ten untimed warm-up calls.
/// `measure(rep)` does its own untimed setup and returns the timed span.
fn mean_nanos(reps: u32, mut measure: impl FnMut(u32) -> Duration) -> f64 {
    for rep in 0..reps.min(MAX_WARMUP) {
        black_box(measure(rep));
    }
    let total: Duration = (0..reps).map(&mut measure).sum();
    total.as_nanos() as f64 / reps as f64
}

fn time<R>(f: impl FnOnce() -> R) -> Duration {
    let start = Instant::now();
    black_box(f());
    start.elapsed()
}

fn binary_nanos(a: &Fixture, b: &Fixture, structure: Structure, op: SetOp, reps: u32) -> f64 {
    match structure {
        Structure::Concise => mean_nanos(reps, |_| time(|| a.concise.perform_operation(&b.concise, op))),
        Structure::Wah => mean_nanos(reps, |_| time(|| a.wah.perform_operation(&b.wah, op))),
        Structure::Bitmap => mean_nanos(reps, |_| time(|| a.bitmap.op(&b.bitmap, op))),
        Structure::Array => mean_nanos(reps, |_| time(|| a.array.op(&b.array, op))),
    }
}

/// Mean time of one append while building the whole set in ascending order.
fn append_nanos(a: &Fixture, structure: Structure, reps: u32) -> f64 {
    let n = a.values.len();
    if n == 0 {
        return 0.0;
    }
    let values = &a.values;
    let build = mean_nanos(reps, |_| match structure {
        Structure::Concise => time(|| {
            let mut s = ConciseSet::new();
            for &v in values {
                s.append(v).unwrap();
            }
            s
        }),
        Structure::Wah => time(|| {
            let mut s = WahSet::new();
            for &v in values {
                s.append(v).unwrap();
            }
            s
        }),
        Structure::Bitmap => time(|| {
            let mut s = PlainBitmap::default();
            for &v in values {
                s.insert(v);
            }
            s
        }),
        Structure::Array => time(|| {
            let mut s = SortedList::default();
            for &v in values {
                s.push(v);
            }
            s
        }),
    });
    build / n as f64
}

/// Mean time to remove one existing element, chosen per repetition.
fn remove_nanos(a: &Fixture, structure: Structure, reps: u32, seed: u64) -> f64 {
    let n = a.values.len();
    if n == 0 {
        return 0.0;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks: Vec<u32> = (0..reps.max(MAX_WARMUP)).map(|_| a.values[rng.random_range(0..n)]).collect();
    let pick = |rep: u32| picks[rep as usize % picks.len()];
    match structure {
        Structure::Concise => mean_nanos(reps, |rep| {
            let v = pick(rep);
            time(|| a.concise.remove(v).unwrap())
        }),
        Structure::Wah => mean_nanos(reps, |rep| {
            let v = pick(rep);
            time(|| a.wah.remove(v).unwrap())
        }),
        Structure::Bitmap => mean_nanos(reps, |rep| {
            let v = pick(rep);
            let mut copy = a.bitmap.clone();
            let t = time(|| copy.remove(v));
            black_box(copy);
            t
        }),
        Structure::Array => mean_nanos(reps, |rep| {
            let v = pick(rep);
            let mut copy = a.array.clone();
            let t = time(|| copy.remove(v));
            black_box(copy);
            t
        }),
    }
}

/// Runs every (structure, metric) pair of one spec point.
pub fn run_point(spec: &BenchmarkSpec) -> Result<Vec<BenchmarkResult>, GenError> {
    let reps = spec.repetitions.max(1);
    let a = Fixture::build(generate(&spec.generator)?);
    let needs_b = spec.metrics.iter().any(|m| m.binary_op().is_some());
    let b = if needs_b {
        let seed = spec.generator.seed ^ OPERAND_SEED_SALT;
        Some(Fixture::build(generate(&spec.generator.with_seed(seed))?))
    } else {
        None
    };

    let mut results = Vec::with_capacity(spec.structures.len() * spec.metrics.len());
    for &metric in &spec.metrics {
        for &structure in &spec.structures {
            let (value, repetitions) = match metric {
                Metric::WordsPerElement => (a.words_per_element(structure), 1),
                Metric::AppendNanos => (append_nanos(&a, structure, reps), reps),
                Metric::RemoveNanos => (remove_nanos(&a, structure, reps, spec.generator.seed), reps),
                _ => {
                    let op = metric.binary_op().unwrap();
                    (binary_nanos(&a, b.as_ref().unwrap(), structure, op, reps), reps)
                }
            };
            results.push(BenchmarkResult { structure, metric, spec: spec.generator, value, repetitions });
        }
    }
    Ok(results)
}

/// Runs every spec point, one point per task when `parallel` is set.
/// Each point's timings are still taken on a single thread.
pub fn run_all(specs: &[BenchmarkSpec], parallel: bool) -> Result<Vec<BenchmarkResult>, GenError> {
    Ok(par::try_map(specs, parallel, run_point)?.into_iter().flatten().collect())
}

pub fn write_csv<W: io::Write>(out: W, results: &[BenchmarkResult]) -> csv::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(CSV_HEADER)?;
    for result in results {
        writer.write_record(result.csv_record())?;
    }
    writer.flush()?;
    Ok(())
}
