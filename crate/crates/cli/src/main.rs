use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use brauer_cli::campaign::{sample_campaign, write_csv, CampaignParams};
use brauer_cli::form::{parse_form, ParseError};
use brauer_cli::verify;
use brauer_core::driver::{self, BoundOptions, IndecomposabilityVerdict, Method};
use brauer_core::{AlgebraContext, BrauerClassSpec};
use clap::{Parser, Subcommand};

const EXIT_PARSE: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(name = "brauer", version, about = "Index lower bounds for Brauer classes on very general abelian varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lower bound on the index of the class of B = b/period.
    Bound {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        period: u64,
        #[arg(long)]
        form: String,
        #[arg(long, value_delimiter = ',', default_value = "djp,refined,hotchkiss")]
        methods: Vec<Method>,
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
        #[arg(long, default_value_t = brauer_core::hotchkiss::DEFAULT_BUDGET)]
        budget: u64,
        /// Run every method at every degree and report per-method bounds.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Checks every split b = c + (b - c) mod period against a target index.
    Indecomposable {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        period: u64,
        #[arg(long)]
        form: String,
        #[arg(long)]
        target: u64,
        #[arg(long, value_delimiter = ',', default_value = "djp,refined,hotchkiss")]
        methods: Vec<Method>,
        #[arg(long, env = "BRAUER_THREADS")]
        threads: Option<usize>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Prints the table of s values past which the DJP obstruction vanishes.
    TableS {
        #[arg(long, default_value_t = 12)]
        max_dim: usize,
    },
    /// Samples random classes and bounds each with every method.
    Sample {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        period: u64,
        #[arg(long)]
        weight: usize,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_value = "djp,refined,hotchkiss")]
        methods: Vec<Method>,
        #[arg(long, default_value_t = brauer_core::hotchkiss::DEFAULT_BUDGET)]
        budget: u64,
        /// Make every eligible orbit equally likely.
        #[arg(long)]
        orbit_uniform: bool,
        /// Leave elapsed_ms empty so reruns are byte-identical.
        #[arg(long)]
        omit_timings: bool,
        #[arg(long, env = "BRAUER_THREADS")]
        threads: Option<usize>,
        #[arg(long)]
        csv: PathBuf,
    },
    /// Runs the built-in reproductions; exits 3 on any mismatch.
    VerifyPaper {
        #[arg(long, env = "BRAUER_THREADS")]
        threads: Option<usize>,
    },
}

fn spec_of(g: usize, period: u64, form: &str) -> Result<BrauerClassSpec, Failure> {
    let ctx = AlgebraContext::new(g).map_err(|e| Failure::Other(e.into()))?;
    let b = parse_form(form, g)?.to_multivector(&ctx);
    BrauerClassSpec::new(&b, period).map_err(|e| Failure::Other(e.into()))
}

enum Failure {
    Parse(ParseError),
    Mismatch,
    Other(anyhow::Error),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e)
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Other(e)
    }
}

fn write_json(path: &Path, value: &impl serde::Serialize) -> anyhow::Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    Ok(())
}

fn set_threads(threads: Option<usize>) {
    if let Some(t) = threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global() {
            log::warn!("thread pool already configured: {e}");
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Bound {
            g,
            period,
            form,
            methods,
            primes,
            budget,
            exhaustive,
            json,
        } => {
            let spec = spec_of(g, period, &form)?;
            let options = BoundOptions {
                methods,
                primes,
                budget,
                exhaustive,
            };
            let report = driver::index_lower_bound(&spec, &options).map_err(anyhow::Error::from)?;
            for r in &report.degrees {
                println!(
                    "d={:<6} djp={:?} refined={:?} hotchkiss={:?}",
                    r.d, r.djp, r.refined, r.hotchkiss
                );
            }
            if let Some(m) = &report.method_bounds {
                println!("per method: djp={:?} refined={:?} hotchkiss={:?}", m.djp, m.refined, m.hotchkiss);
            }
            println!(
                "lower_bound={} cap={} determined={}",
                report.lower_bound, report.cap, report.determined
            );
            if let Some(path) = json {
                write_json(&path, &report)?;
            }
        }
        Command::Indecomposable {
            g,
            period,
            form,
            target,
            methods,
            threads,
            json,
        } => {
            let spec = spec_of(g, period, &form)?;
            let report = driver::indecomposability_test(
                &spec,
                target,
                &BoundOptions::with_methods(&methods),
                threads,
            )
            .map_err(anyhow::Error::from)?;
            match &report.verdict {
                IndecomposabilityVerdict::Indecomposable => println!("verdict=Indecomposable"),
                IndecomposabilityVerdict::Inconclusive { witness, index } => {
                    println!("verdict=Inconclusive witness_index={index} witness={witness:?}")
                }
            }
            let s = &report.stats;
            println!(
                "candidates={} period={} djp={} refined={} hotchkiss={} uncertified={} classes={}",
                s.candidates, s.by_period, s.by_djp, s.by_refined, s.by_hotchkiss, s.uncertified, s.distinct_classes
            );
            if let Some(path) = json {
                write_json(&path, &report)?;
            }
        }
        Command::TableS { max_dim } => {
            print!("{}", driver::render_table_s(max_dim).map_err(anyhow::Error::from)?);
        }
        Command::Sample {
            g,
            period,
            weight,
            count,
            seed,
            methods,
            budget,
            orbit_uniform,
            omit_timings,
            threads,
            csv,
        } => {
            set_threads(threads);
            let mut params = CampaignParams::new(g, period, weight, count, seed);
            params.methods = methods;
            params.budget = budget;
            params.orbit_uniform = orbit_uniform;
            params.omit_timings = omit_timings;
            let campaign = sample_campaign(&params)?;
            let file = File::create(&csv).with_context(|| format!("creating {}", csv.display()))?;
            write_csv(&campaign.records, BufWriter::new(file))?;
            if campaign.exhausted {
                eprintln!(
                    "only {} distinct orbits available; wrote all of them",
                    campaign.records.len()
                );
            }
            println!("wrote {} records to {}", campaign.records.len(), csv.display());
        }
        Command::VerifyPaper { threads } => {
            let checks = verify::run_all(threads)?;
            let mut stdout = io::stdout().lock();
            for c in &checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                writeln!(stdout, "{status} {} {}", c.name, c.detail).map_err(anyhow::Error::from)?;
            }
            if checks.iter().any(|c| !c.passed) {
                return Err(Failure::Mismatch);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Parse(e)) => {
            eprintln!("error: cannot parse form: {e}");
            ExitCode::from(EXIT_PARSE)
        }
        Err(Failure::Mismatch) => {
            eprintln!("error: verification mismatch");
            ExitCode::from(EXIT_MISMATCH)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
