use std::fs;
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use concise_core::datagen::{generate, GeneratorSpec, DEFAULT_SKEW};
use concise_core::experiment::{run_all, write_csv, BenchmarkSpec, Metric, Structure, DEFAULT_REPETITIONS};
use concise_core::serial::detect_format;
use concise_core::{inspect, par, ConciseSet, Format, SetOp, WahSet};

#[derive(Parser)]
#[command(name = "concise", version, about = "CONCISE and WAH compressed integer sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Concise,
    Wah,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Dist {
    Uniform,
    Zipf,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic set as newline-delimited integers.
    Generate {
        #[arg(long, value_enum, default_value = "uniform")]
        dist: Dist,
        #[arg(long)]
        cardinality: u32,
        #[arg(long, default_value_t = 1e-3)]
        density: f64,
        #[arg(long, default_value_t = 10.0)]
        max_ratio: f64,
        #[arg(long, default_value_t = DEFAULT_SKEW)]
        skew: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Encode newline-delimited integers into a serialized set.
    Encode {
        #[arg(long, value_enum, default_value = "concise")]
        format: FormatArg,
        /// Defaults to standard input.
        #[arg(long, short)]
        input: Option<PathBuf>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Print the integers of a serialized set, one per line.
    Decode {
        file: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Dump the words of a serialized set.
    Inspect { file: PathBuf },
    /// Combine two serialized sets of the same encoding.
    Op {
        /// and, or, xor or andnot (left minus right).
        #[arg(long)]
        op: SetOp,
        left: PathBuf,
        right: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run the benchmark matrix and write CSV. List flags take comma-separated
    /// values and expand to their cross product.
    Bench {
        #[arg(long, value_enum, value_delimiter = ',', default_value = "uniform")]
        dist: Vec<Dist>,
        #[arg(long, value_delimiter = ',', default_value = "10000")]
        cardinality: Vec<u32>,
        #[arg(long, value_delimiter = ',', default_value = "0.001")]
        density: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "10")]
        max_ratio: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "1.0")]
        skew: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        seed: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_value = "concise,wah,bitmap,array")]
        structures: Vec<Structure>,
        #[arg(long, value_delimiter = ',', default_value = "words")]
        metric: Vec<Metric>,
        #[arg(long, default_value_t = DEFAULT_REPETITIONS, value_parser = clap::value_parser!(u32).range(1..))]
        reps: u32,
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Run independent spec points on several threads.
        #[arg(long)]
        parallel: bool,
    },
}

enum AnySet {
    Concise(ConciseSet),
    Wah(WahSet),
}

impl AnySet {
    fn load(path: &Path) -> Result<Self> {
        let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        let set = match detect_format(&bytes) {
            Some(Format::Concise) => ConciseSet::deserialize(&bytes).map(AnySet::Concise),
            Some(Format::Wah) => WahSet::deserialize(&bytes).map(AnySet::Wah),
            None => bail!("{}: not a serialized set (unknown magic)", path.display()),
        };
        set.with_context(|| format!("decoding {}", path.display()))
    }

    fn decode(&self) -> Vec<u32> {
        match self {
            AnySet::Concise(s) => s.decode(),
            AnySet::Wah(s) => s.decode(),
        }
    }
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(
            fs::File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

fn write_bytes(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    let mut out = open_output(path)?;
    out.write_all(bytes)?;
    out.flush()?;
    Ok(())
}

fn write_integers(path: Option<&Path>, values: &[u32]) -> Result<()> {
    let mut out = open_output(path)?;
    for v in values {
        writeln!(out, "{v}")?;
    }
    out.flush()?;
    Ok(())
}

/// Parses newline-delimited integers. Blank lines are skipped; order and
/// duplicates do not matter.
fn read_integers(input: Box<dyn BufRead>) -> Result<Vec<u32>> {
    let mut values = Vec::new();
    for (n, line) in input.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        let v = text.parse::<u32>().with_context(|| format!("line {}: `{text}` is not an integer", n + 1))?;
        values.push(v);
    }
    values.sort_unstable();
    values.dedup();
    Ok(values)
}

fn bench_specs(
    dist: &[Dist],
    cardinality: &[u32],
    density: &[f64],
    max_ratio: &[f64],
    skew: &[f64],
    seed: &[u64],
) -> Vec<GeneratorSpec> {
    let mut specs = Vec::new();
    for &d in dist {
        for &n in cardinality {
            for &s in seed {
                match d {
                    Dist::Uniform => specs.extend(density.iter().map(|&x| GeneratorSpec::uniform(n, x, s))),
                    Dist::Zipf => {
                        for &r in max_ratio {
                            specs.extend(skew.iter().map(|&k| GeneratorSpec::zipf(n, r, k, s)));
                        }
                    }
                }
            }
        }
    }
    specs
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate { dist, cardinality, density, max_ratio, skew, seed, output } => {
            let spec = match dist {
                Dist::Uniform => GeneratorSpec::uniform(cardinality, density, seed),
                Dist::Zipf => GeneratorSpec::zipf(cardinality, max_ratio, skew, seed),
            };
            write_integers(output.as_deref(), &generate(&spec)?)
        }
        Command::Encode { format, input, output } => {
            let reader: Box<dyn BufRead> = match &input {
                Some(p) => Box::new(BufReader::new(
                    fs::File::open(p).with_context(|| format!("opening {}", p.display()))?,
                )),
                None => Box::new(BufReader::new(io::stdin())),
            };
            let values = read_integers(reader)?;
            let bytes = match format {
                FormatArg::Concise => ConciseSet::from_sorted(&values)?.serialize(),
                FormatArg::Wah => WahSet::from_sorted(&values)?.serialize(),
            };
            write_bytes(output.as_deref(), &bytes)
        }
        Command::Decode { file, output } => write_integers(output.as_deref(), &AnySet::load(&file)?.decode()),
        Command::Inspect { file } => {
            let text = match AnySet::load(&file)? {
                AnySet::Concise(s) => inspect::render(&s),
                AnySet::Wah(s) => inspect::render(&s),
            };
            write_bytes(None, text.as_bytes())
        }
        Command::Op { op, left, right, output } => {
            let bytes = match (AnySet::load(&left)?, AnySet::load(&right)?) {
                (AnySet::Concise(a), AnySet::Concise(b)) => a.perform_operation(&b, op).serialize(),
                (AnySet::Wah(a), AnySet::Wah(b)) => a.perform_operation(&b, op).serialize(),
                _ => bail!("operands use different encodings"),
            };
            write_bytes(output.as_deref(), &bytes)
        }
        Command::Bench {
            dist,
            cardinality,
            density,
            max_ratio,
            skew,
            seed,
            structures,
            metric,
            reps,
            output,
            parallel,
        } => {
            if parallel && !par::PARALLEL_AVAILABLE {
                eprintln!("warning: built without the `parallel` feature, running sequentially");
            }
            let specs: Vec<BenchmarkSpec> = bench_specs(&dist, &cardinality, &density, &max_ratio, &skew, &seed)
                .into_iter()
                .map(|generator| BenchmarkSpec {
                    generator,
                    structures: structures.clone(),
                    metrics: metric.clone(),
                    repetitions: reps,
                })
                .collect();
            let results = run_all(&specs, parallel)?;
            write_csv(open_output(output.as_deref())?, &results)?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
