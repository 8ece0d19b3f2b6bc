// Copyright 2026 The apriori-goal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Command-line front end: `preprocess`, `mine`, `bench` and `generate`.

pub mod report;

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use apriori_goal::{
    mine, mine_negative, preprocess_files, synth, threads, CriteriaWeights, Error, MiningConfig, MissingPolicy,
    PartitionedDatabase, RuleSet,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::SeedableRng;

use report::{rule_records, MineOutput, RunReport};

#[derive(Debug, Parser)]
#[command(
    name = "apriori-goal",
    version,
    about = "Mine association rules X => Goal_k from a table with a target column"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Encode a table and print its property catalog and goal partitions.
    Preprocess(PreprocessArgs),
    /// Mine rules and print them with their criteria.
    Mine(MineArgs),
    /// Time mining on duplicated copies of a table.
    Bench(BenchArgs),
    /// Write a random categorical table and its description.
    Generate(GenerateArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// CSV table with a header row.
    #[arg(long)]
    pub db: PathBuf,
    /// JSON column description.
    #[arg(long)]
    pub dbd: PathBuf,
    /// Drop rows with empty cells instead of failing.
    #[arg(long)]
    pub skip_missing: bool,
}

#[derive(Debug, Args)]
pub struct ConfigArgs {
    #[arg(long, default_value_t = 0.35)]
    pub min_corr: f64,
    #[arg(long, default_value_t = 1.0)]
    pub corr_stop: f64,
    /// Frequency floor on f_all; rules below it are not expanded.
    #[arg(long, default_value_t = 0.01)]
    pub min_freq: f64,
    #[arg(long, default_value_t = -0.35, allow_hyphen_values = true)]
    pub neg_corr: f64,
    /// Quality weights p1,p2,p3,p4 for f_all, f_g, conf, corr.
    #[arg(long, default_value = "1,1,1,1")]
    pub weights: String,
    #[arg(long)]
    pub max_premise_len: Option<usize>,
}

impl ConfigArgs {
    pub fn to_config(&self) -> Result<MiningConfig, CliError> {
        let weights: CriteriaWeights = self.weights.parse().map_err(CliError::from_core)?;
        let config = MiningConfig {
            min_corr: self.min_corr,
            corr_stop: self.corr_stop,
            min_f_all: self.min_freq,
            weights,
            neg_corr: self.neg_corr,
            max_premise_len: self.max_premise_len,
        };
        config.validate().map_err(CliError::from_core)?;
        Ok(config)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct PreprocessArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Where to write the encoded database as JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MineArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Also report negative rules Y => not Goal_k.
    #[arg(long)]
    pub negative: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Leave wall-clock times out of the report, for byte-stable output.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Duplication factors.
    #[arg(long, value_delimiter = ',', default_value = "1,10,100")]
    pub factors: Vec<usize>,
    /// Timed runs per configuration; the median is reported.
    #[arg(long, default_value_t = 3)]
    pub repeats: usize,
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Class count of each generated column.
    #[arg(long, value_delimiter = ',', default_value = "2,3,3,4")]
    pub columns: Vec<usize>,
    #[arg(long, default_value_t = 1000)]
    pub records: usize,
    #[arg(long, default_value_t = 3)]
    pub goals: usize,
    #[arg(long)]
    pub out_db: PathBuf,
    #[arg(long)]
    pub out_dbd: PathBuf,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(Error),
}

impl CliError {
    fn from_core(e: Error) -> Self {
        match e {
            Error::InvalidConfig(msg) => CliError::Usage(msg),
            other => CliError::Data(other),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Data(e) => write!(f, "error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::from_core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(Error::Io(e))
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Preprocess(args) => cmd_preprocess(&args, out),
        Command::Mine(args) => cmd_mine(&args, out),
        Command::Bench(args) => cmd_bench(&args, out),
        Command::Generate(args) => cmd_generate(&args, out),
    }
}

fn missing_policy(input: &InputArgs) -> MissingPolicy {
    if input.skip_missing {
        MissingPolicy::Skip
    } else {
        MissingPolicy::Error
    }
}

fn load(input: &InputArgs) -> Result<(PartitionedDatabase, usize), CliError> {
    let (_, pre) = preprocess_files(&input.db, &input.dbd, missing_policy(input))?;
    Ok((pre.database, pre.skipped))
}

pub fn cmd_preprocess(args: &PreprocessArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (db, skipped) = load(&args.input)?;
    writeln!(out, "{:>5}  {:<12}  {:>24}  description", "index", "name", "code")?;
    for p in db.catalog().properties() {
        writeln!(out, "{:>5}  {:<12}  {:>24}  {}", p.index, p.name, p.code().to_string(), p.full_name)?;
    }
    writeln!(out)?;
    for (label, n) in db.goal_labels().iter().zip(db.partition_sizes()) {
        writeln!(out, "{label}: {n}")?;
    }
    writeln!(out, "records: {}  properties: {}  skipped rows: {skipped}", db.len(), db.property_count())?;
    if let Some(path) = &args.out {
        let json = serde_json::to_string_pretty(&db.dump()).map_err(Error::from)?;
        std::fs::write(path, json + "\n")?;
        writeln!(out, "encoded database written to {}", path.display())?;
    }
    Ok(())
}

/// Mines positive (and optionally negative) rules with a worker budget.
pub fn mine_with(db: &PartitionedDatabase, config: &MiningConfig, negative: bool, workers: usize) -> RuleSet {
    threads::with_threads(workers, || {
        let mut rules = mine(db, config);
        if negative {
            rules.negative = mine_negative(db, config);
        }
        rules
    })
}

pub fn mine_output(args: &MineArgs) -> Result<MineOutput, CliError> {
    let config = args.config.to_config()?;
    let workers = args.threads.unwrap_or_else(threads::available);
    let started = Instant::now();
    let (db, _) = load(&args.input)?;
    let preprocess_seconds = started.elapsed().as_secs_f64();
    let started = Instant::now();
    let rules = mine_with(&db, &config, args.negative, workers);
    let mining_seconds = started.elapsed().as_secs_f64();

    let mut report = RunReport::new(&args.input.db.display().to_string(), &db, &config, &rules, workers);
    if !args.no_timing {
        report.preprocess_seconds = Some(preprocess_seconds);
        report.mining_seconds = Some(mining_seconds);
    }
    Ok(MineOutput::new(&db, &rules, report))
}

pub fn cmd_mine(args: &MineArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let output = mine_output(args)?;
    let text = match args.format {
        Format::Table => output.to_table(),
        Format::Json => output.to_json(),
        Format::Csv => output.to_csv(),
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub factor: usize,
    pub records: usize,
    pub rules: usize,
    pub single_thread_seconds: f64,
    pub multi_thread_seconds: f64,
    pub matches_base: bool,
    pub threads_agree: bool,
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    xs[xs.len() / 2]
}

fn timed(db: &PartitionedDatabase, config: &MiningConfig, workers: usize, repeats: usize) -> (RuleSet, f64) {
    let mut times = Vec::with_capacity(repeats);
    let mut rules = RuleSet::default();
    for _ in 0..repeats.max(1) {
        let started = Instant::now();
        rules = mine_with(db, config, false, workers);
        times.push(started.elapsed().as_secs_f64());
    }
    (rules, median(times))
}

/// Mines each duplicated copy with one worker and with `workers`, checking
/// the rule set against the base database.
pub fn bench_rows(
    db: &PartitionedDatabase,
    config: &MiningConfig,
    factors: &[usize],
    workers: usize,
    repeats: usize,
) -> Vec<BenchRow> {
    let base = report::ratio_json(&rule_records(db, &mine_with(db, config, false, workers)));
    factors
        .iter()
        .map(|&factor| {
            let big = db.duplicated(factor);
            let (single, t1) = timed(&big, config, 1, repeats);
            let (multi, tn) = timed(&big, config, workers, repeats);
            let single_records = rule_records(&big, &single);
            BenchRow {
                factor,
                records: big.len(),
                rules: single.positive_count(),
                single_thread_seconds: t1,
                multi_thread_seconds: tn,
                matches_base: report::ratio_json(&single_records) == base,
                threads_agree: report::rules_json(&single_records) == report::rules_json(&rule_records(&big, &multi)),
            }
        })
        .collect()
}

pub fn cmd_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let config = args.config.to_config()?;
    if args.factors.contains(&0) {
        return Err(CliError::Usage("duplication factors must be positive".into()));
    }
    let workers = args.threads.unwrap_or_else(threads::available);
    let (db, _) = load(&args.input)?;
    let rows = bench_rows(&db, &config, &args.factors, workers, args.repeats);
    writeln!(
        out,
        "{:>7}  {:>10}  {:>6}  {:>12}  {:>12}  {:>9}  {:>13}",
        "factor",
        "records",
        "rules",
        "1 thread (s)",
        format!("{workers} thr (s)"),
        "same rules",
        "threads agree"
    )?;
    for r in &rows {
        writeln!(
            out,
            "{:>7}  {:>10}  {:>6}  {:>12.4}  {:>12.4}  {:>9}  {:>13}",
            r.factor,
            r.records,
            r.rules,
            r.single_thread_seconds,
            r.multi_thread_seconds,
            if r.matches_base { "yes" } else { "NO" },
            if r.threads_agree { "yes" } else { "NO" },
        )?;
    }
    Ok(())
}

pub fn cmd_generate(args: &GenerateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if args.columns.is_empty() || args.columns.iter().any(|&k| k < 2) {
        return Err(CliError::Usage("every column needs at least 2 classes".into()));
    }
    if args.goals < 2 || args.records == 0 {
        return Err(CliError::Usage("need at least 2 goals and 1 record".into()));
    }
    let mut rng = StdRng::seed_from_u64(args.seed);
    let (description, csv) = synth::random_table(&mut rng, &args.columns, args.records, args.goals);
    write_file(&args.out_db, &csv)?;
    write_file(&args.out_dbd, &(description.to_json() + "\n"))?;
    writeln!(out, "wrote {} records to {} and {}", args.records, args.out_db.display(), args.out_dbd.display())?;
    Ok(())
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text)?;
    Ok(())
}
