//! Argument definitions and command dispatch.

use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use symarray::constructions::{self, KloveParams, NestedParams, RraParams, ShiftedGenerator};
use symarray::optimize::{self, MraConfig, OptimalParams, SearchOutcome, DEFAULT_MRA_LIMIT};
use symarray::sensing::{run_experiment, ExperimentConfig};
use symarray::{Error, SensorArray};

use crate::output::{parse_positions, Format, OutputRecord, SCHEMA_VERSION};
use crate::tables::{table, Which};

/// Sparse linear arrays with contiguous sum co-arrays.
#[derive(Parser, Debug)]
#[command(name = "symarray", version, about)]
pub struct Cli {
    /// Defaults to csv for `tables` and `omp`, json otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for searches and experiments.
    #[arg(long, global = true, env = "SYMARRAY_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build an array from its parameters.
    Generate {
        #[command(subcommand)]
        kind: Generate,
    },
    /// Figures of merit of explicit positions.
    Metrics {
        /// Sensor positions, e.g. "0 1 2 5" or "{0,1,2,5}".
        #[arg(long, value_parser = parse_positions)]
        positions: std::vec::Vec<i64>,
    },
    /// Minimum-redundancy parameters or arrays.
    Optimize(OptimizeArgs),
    /// Summary tables and per-N figure series.
    Tables {
        #[arg(long, value_enum, ignore_case = true)]
        which: Which,
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 100)]
        n_max: usize,
        #[arg(long, default_value_t = DEFAULT_MRA_LIMIT)]
        mra_limit: usize,
    },
    /// Monte-Carlo OMP experiment from a TOML config.
    Omp {
        #[arg(long)]
        config: PathBuf,
        /// Seed for scatterer phases and noise; overrides any seed in the config.
        #[arg(long)]
        seed: u64,
        /// Also write the first-trial spectra as JSON.
        #[arg(long)]
        spectra: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum Generate {
    /// Uniform linear array `{0, ..., n-1}`.
    Ula {
        #[arg(long)]
        n: usize,
    },
    /// Nested array: dense ULA followed by a sparse ULA.
    Nested(NestedArgs),
    /// Concatenated nested array (contiguous sum co-array).
    Cna(NestedArgs),
    /// Kløve-Mossige generator (contiguous difference co-array).
    Kma(KloveArgs),
    /// Kløve array (contiguous sum co-array).
    Ka(KloveArgs),
    /// Reduced-redundancy array from a prefix, suffix and mid-section spacing.
    Rra {
        #[arg(long, value_parser = parse_positions)]
        prefix: std::vec::Vec<i64>,
        #[arg(long, value_parser = parse_positions)]
        suffix: std::vec::Vec<i64>,
        #[arg(long)]
        spacing: i64,
        /// Total number of sensors.
        #[arg(long)]
        n: usize,
    },
    /// `G ∪ (max G - G + lambda)`.
    Symmetric {
        #[arg(long, value_parser = parse_positions)]
        generator: std::vec::Vec<i64>,
        #[arg(long)]
        lambda: i64,
    },
}

#[derive(Args, Debug)]
pub struct NestedArgs {
    #[arg(long)]
    pub n1: usize,
    #[arg(long)]
    pub n2: usize,
}

#[derive(Args, Debug)]
pub struct KloveArgs {
    #[arg(long)]
    pub n1: usize,
    #[arg(long)]
    pub n2: usize,
    #[arg(long)]
    pub n3: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Cna,
    Ka,
    Na,
    Kma,
    Mra,
    MraRestricted,
}

#[derive(Args, Debug)]
pub struct OptimizeArgs {
    #[arg(value_enum)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
    /// Fix the aperture (KMA only).
    #[arg(long)]
    pub aperture: Option<i64>,
    /// Include every evaluated grid point (KA only).
    #[arg(long)]
    pub trace: bool,
    #[arg(long, default_value_t = DEFAULT_MRA_LIMIT)]
    pub mra_limit: usize,
}

/// Exit status for an error: 3 for refused oversized searches, 2 for bad input, 1 otherwise.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::SearchSpaceTooLarge { .. }) => 3,
        Some(_) => 2,
        None if err.downcast_ref::<UsageError>().is_some() => 2,
        None => 1,
    }
}

#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Runs a parsed command and returns the text for stdout or `--out`.
pub fn run(cli: &Cli, argv: Vec<String>) -> anyhow::Result<String> {
    let format = cli.format.unwrap_or(match cli.command {
        Command::Tables { .. } | Command::Omp { .. } => Format::Csv,
        _ => Format::Json,
    });
    match &cli.command {
        Command::Generate { kind } => {
            let array = generate(kind)?;
            Ok(OutputRecord::new(argv, &array, None)?.render(format))
        }
        Command::Metrics { positions } => {
            let array = SensorArray::new(positions.clone())?;
            Ok(OutputRecord::new(argv, &array, None)?.render(format))
        }
        Command::Optimize(args) => {
            let (outcome, extra) = optimize(args)?;
            let search = search_block(&outcome, extra);
            Ok(OutputRecord::new(argv, &outcome.array, Some(search))?.render(format))
        }
        Command::Tables { which, n_min, n_max, mra_limit } => {
            let t = table(*which, *n_min, *n_max, &MraConfig { limit: *mra_limit })?;
            Ok(t.render(format, &argv))
        }
        Command::Omp { config, seed, spectra } => {
            let text = std::fs::read_to_string(config).with_context(|| format!("reading {}", config.display()))?;
            let config = ExperimentConfig::from_toml(&text)?;
            let report = run_experiment(&config, Some(*seed))?;
            if let Some(path) = spectra {
                let value = json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": argv,
                    "seed": report.seed,
                    "true_angles_deg": report.true_angles_deg,
                    "spectra": report.spectra,
                });
                std::fs::write(path, serde_json::to_string_pretty(&value)? + "\n")
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            for row in &report.summary {
                eprintln!(
                    "{:<12} snr {:>5} dB  mean RMSE {:.4} deg over {} trials",
                    row.array, row.snr_db, row.mean_rmse_deg, row.trials
                );
            }
            Ok(match format {
                Format::Json => {
                    let value = json!({
                        "schema_version": SCHEMA_VERSION,
                        "command": argv,
                        "seed": report.seed,
                        "summary": report.summary,
                        "records": report.records,
                    });
                    serde_json::to_string_pretty(&value)? + "\n"
                }
                Format::Csv | Format::Text => report.records_csv(),
            })
        }
    }
}

fn generate(kind: &Generate) -> symarray::Result<SensorArray> {
    match kind {
        Generate::Ula { n } => constructions::ula(*n),
        Generate::Nested(a) => constructions::nested(NestedParams::new(a.n1, a.n2)),
        Generate::Cna(a) => constructions::cna(NestedParams::new(a.n1, a.n2)),
        Generate::Kma(a) => constructions::kma(KloveParams::new(a.n1, a.n2, a.n3)),
        Generate::Ka(a) => constructions::ka(KloveParams::new(a.n1, a.n2, a.n3)),
        Generate::Rra { prefix, suffix, spacing, n } => constructions::rra(&RraParams {
            prefix: SensorArray::new(prefix.clone())?,
            suffix: SensorArray::new(suffix.clone())?,
            mid_spacing: *spacing,
            total_sensors: *n,
        }),
        Generate::Symmetric { generator, lambda } => {
            constructions::symmetrize(&ShiftedGenerator::new(SensorArray::new(generator.clone())?, *lambda)?)
        }
    }
}

fn optimize(args: &OptimizeArgs) -> anyhow::Result<(SearchOutcome, serde_json::Value)> {
    if args.aperture.is_some() && args.family != Family::Kma {
        return Err(UsageError("--aperture only applies to kma".into()).into());
    }
    let mra = MraConfig { limit: args.mra_limit };
    Ok(match args.family {
        Family::Cna => {
            let (p, trace) = optimize::cna_opt(args.n)?;
            let array = constructions::cna(p)?;
            let outcome = SearchOutcome {
                params: OptimalParams::Nested(p),
                aperture: array.aperture(),
                contiguous_dof: 2 * array.aperture() + 1,
                varsigma: symarray::varsigma(&array, array.aperture())?,
                tied_optima: 1,
                objective_trace: None,
                array,
            };
            (outcome, json!({ "closed_form": trace }))
        }
        Family::Ka => {
            let outcome = if args.trace { optimize::ka_r_grid_traced(args.n)? } else { optimize::ka_r_grid(args.n)? };
            let closed = optimize::ka_r_closed(args.n);
            (outcome, json!({ "closed_form": closed }))
        }
        Family::Na => (optimize::na_opt(args.n)?, json!({})),
        Family::Kma => match args.aperture {
            Some(l) => (optimize::kma_opt_with_aperture(args.n, l)?, json!({ "aperture_constraint": l })),
            None => (optimize::kma_opt(args.n)?, json!({})),
        },
        Family::Mra => (optimize::mra_search_with(args.n, false, &mra)?, json!({ "restricted": false })),
        Family::MraRestricted => (optimize::mra_search_with(args.n, true, &mra)?, json!({ "restricted": true })),
    })
}

fn search_block(outcome: &SearchOutcome, extra: serde_json::Value) -> serde_json::Value {
    let mut block = json!({
        "params": outcome.params,
        "aperture": outcome.aperture,
        "contiguous_dof": outcome.contiguous_dof,
        "varsigma": outcome.varsigma.to_decimal_string(),
        "tied_optima": outcome.tied_optima,
    });
    if let Some(trace) = &outcome.objective_trace {
        block["trace"] = json!(trace);
    }
    if let (Some(obj), Some(extra)) = (block.as_object_mut(), extra.as_object()) {
        obj.extend(extra.clone());
    }
    block
}
