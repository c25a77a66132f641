//! `ongoing` — run temporal queries whose results stay valid as time passes.
//!
//! Subcommands: `query` evaluates a query over a directory of CSV
//! relations, `bind` instantiates a stored result at a reference time,
//! `check` runs the differential oracle, `generate` produces seeded
//! synthetic datasets, and `bench` compares one ongoing evaluation against
//! bind-then-evaluate.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use ongoing::algebra::{eval, plan_optimize, QueryPlan};
use ongoing::bench::{run_bench, BenchConfig, Mode};
use ongoing::csvio::{
    fixed_relation_to_string, load_catalog, load_relation, relation_to_string, TickStyle,
};
use ongoing::oracle::differential_check;
use ongoing::parse::{parse_query, parse_tick, typecheck};
use ongoing::synth::{generate, DatasetSpec, IntervalShape};
use ongoing::{Catalog, Tick};

/// Default data directory when `--data` is not given.
const DATA_DIR_ENV: &str = "ONGOING_DATA_DIR";

#[derive(Parser)]
#[command(name = "ongoing", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, ValueEnum)]
enum OutputFormat {
    #[default]
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, ValueEnum)]
enum Ticks {
    /// Raw integer ticks.
    #[default]
    Int,
    /// Day ticks rendered as ISO dates.
    Date,
    /// Microsecond ticks rendered as ISO timestamps.
    Timestamp,
}

impl From<Ticks> for TickStyle {
    fn from(t: Ticks) -> TickStyle {
        match t {
            Ticks::Int => TickStyle::Int,
            Ticks::Date => TickStyle::Date,
            Ticks::Timestamp => TickStyle::Timestamp,
        }
    }
}

#[derive(Args)]
struct QueryInput {
    /// Inline query text.
    #[arg(short = 'e', long = "expr", conflicts_with = "query_file")]
    expr: Option<String>,
    /// File containing one query.
    #[arg(long = "query-file")]
    query_file: Option<PathBuf>,
}

impl QueryInput {
    fn text(&self) -> Result<String> {
        match (&self.expr, &self.query_file) {
            (Some(text), _) => Ok(text.clone()),
            (None, Some(path)) => fs::read_to_string(path)
                .with_context(|| format!("reading query file {}", path.display())),
            (None, None) => bail!("pass a query with -e or --query-file"),
        }
    }
}

#[derive(Args)]
struct DataDir {
    /// Directory of CSV relations (falls back to $ONGOING_DATA_DIR).
    #[arg(long = "data")]
    data: Option<PathBuf>,
}

impl DataDir {
    fn resolve(&self) -> Result<PathBuf> {
        if let Some(dir) = &self.data {
            return Ok(dir.clone());
        }
        std::env::var_os(DATA_DIR_ENV)
            .map(PathBuf::from)
            .ok_or_else(|| anyhow!("no --data directory given and {DATA_DIR_ENV} is not set"))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a query and write the ongoing result with its RT column.
    Query {
        #[command(flatten)]
        data: DataDir,
        #[command(flatten)]
        query: QueryInput,
        /// Output file (stdout if omitted).
        #[arg(long = "out")]
        out: Option<PathBuf>,
        /// Output format.
        #[arg(long = "format", value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        /// Tick rendering on output.
        #[arg(long = "ticks", value_enum, default_value_t = Ticks::Int)]
        ticks: Ticks,
    },
    /// Instantiate a stored ongoing result at a reference time.
    Bind {
        /// CSV file holding an ongoing relation.
        input: PathBuf,
        /// Reference time (tick literal: integer, date, timestamp, ±inf).
        #[arg(long = "rt")]
        rt: String,
        #[arg(long = "out")]
        out: Option<PathBuf>,
        #[arg(long = "format", value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        #[arg(long = "ticks", value_enum, default_value_t = Ticks::Int)]
        ticks: Ticks,
    },
    /// Differentially check a query: bind-then-evaluate at every breakpoint.
    Check {
        #[command(flatten)]
        data: DataDir,
        #[command(flatten)]
        query: QueryInput,
    },
    /// Generate a seeded synthetic relation (id:int, key:int, vt:ointerval).
    Generate {
        /// Output CSV file; the file stem is the relation name.
        #[arg(long = "out")]
        out: PathBuf,
        #[arg(long = "rows")]
        rows: usize,
        /// Percentage of rows with ongoing intervals.
        #[arg(long = "pct-ongoing", default_value_t = 15.0)]
        pct_ongoing: f64,
        /// expanding ([a,now)) or shrinking ([now,b)).
        #[arg(long = "shape", default_value = "expanding")]
        shape: IntervalShape,
        /// History length in ticks.
        #[arg(long = "span", default_value_t = 3650)]
        span: i64,
        #[arg(long = "seed", default_value_t = 0)]
        seed: u64,
        /// Number of history segments for anchor placement.
        #[arg(long = "segments", default_value_t = 5)]
        segments: u32,
        /// Confine ongoing anchors to this segment (0-based).
        #[arg(long = "segment")]
        segment: Option<u32>,
    },
    /// Time one ongoing evaluation against bind-then-evaluate.
    Bench {
        #[command(flatten)]
        data: DataDir,
        #[command(flatten)]
        query: QueryInput,
        /// Modes to measure.
        #[arg(long = "modes", value_delimiter = ',', default_values = ["ongoing", "bind"])]
        modes: Vec<Mode>,
        /// Repetitions per measurement (median reported).
        #[arg(long = "repetitions", default_value_t = 5)]
        repetitions: usize,
        /// Reference times for bind-mode sweeps (repeatable); defaults to
        /// the largest breakpoint.
        #[arg(long = "rt")]
        rt: Vec<String>,
        #[arg(long = "out")]
        out: Option<PathBuf>,
    },
}

fn load_checked(data: &DataDir, query: &QueryInput) -> Result<(QueryPlan, Catalog)> {
    let dir = data.resolve()?;
    let catalog =
        load_catalog(&dir).with_context(|| format!("loading relations from {}", dir.display()))?;
    let text = query.text()?;
    let plan = parse_query(text.trim()).map_err(|e| anyhow!("parse error at {e}"))?;
    let plan = typecheck(&plan, &catalog).map_err(|e| anyhow!("invalid query: {e}"))?;
    Ok((plan, catalog))
}

fn emit(path: &Option<PathBuf>, contents: &str) -> Result<()> {
    match path {
        Some(path) => fs::write(path, contents)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{contents}"),
    }
    Ok(())
}

fn parse_rt(text: &str) -> Result<Tick> {
    parse_tick(text.trim()).map_err(|e| anyhow!("bad reference time '{text}': {e}"))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Query {
            data,
            query,
            out,
            format: OutputFormat::Csv,
            ticks,
        } => {
            let (plan, catalog) = load_checked(&data, &query)?;
            let plan = plan_optimize(&plan, &catalog).map_err(|e| anyhow!("{e}"))?;
            let result = eval(&plan, &catalog).map_err(|e| anyhow!("evaluation failed: {e}"))?;
            emit(&out, &relation_to_string(&result, ticks.into()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bind {
            input,
            rt,
            out,
            format: OutputFormat::Csv,
            ticks,
        } => {
            let relation = load_relation(&input)
                .with_context(|| format!("loading {}", input.display()))?;
            let bound = relation.bind(parse_rt(&rt)?);
            emit(&out, &fixed_relation_to_string(&bound, ticks.into()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { data, query } => {
            let (plan, catalog) = load_checked(&data, &query)?;
            let outcome = differential_check(&plan, &catalog).map_err(|e| anyhow!("{e}"))?;
            println!("{outcome}");
            Ok(if outcome.is_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Generate {
            out,
            rows,
            pct_ongoing,
            shape,
            span,
            seed,
            segments,
            segment,
        } => {
            let spec = DatasetSpec {
                rows,
                pct_ongoing,
                shape,
                span,
                seed,
                segments,
                ongoing_segment: segment,
            };
            let relation = generate(&spec).map_err(|e| anyhow!("invalid spec: {e}"))?;
            let text = relation_to_string(&relation, TickStyle::Int);
            fs::write(&out, text).with_context(|| format!("writing {}", out.display()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench {
            data,
            query,
            modes,
            repetitions,
            rt,
            out,
        } => {
            let (plan, catalog) = load_checked(&data, &query)?;
            let reference_times = rt
                .iter()
                .map(|t| parse_rt(t))
                .collect::<Result<Vec<_>>>()?;
            let config = BenchConfig {
                modes,
                repetitions,
                reference_times,
            };
            let report = run_bench(&plan, &catalog, &config).map_err(|e| anyhow!("{e}"))?;
            emit(&out, &report.to_csv())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> Result<ExitCode> {
    run(Cli::parse())
}
