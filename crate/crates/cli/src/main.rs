use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod config;
mod failure;
mod output;
mod plot;

use config::{ConfigFile, Settings};

#[derive(Debug, Parser)]
#[command(name = "glyphrun", version)]
#[command(about = "Identify Cyrillic, Latin and Glagolitic documents from run-length texture")]
struct Cli {
    /// Base random seed.
    #[arg(long, global = true, env = "GLYPHRUN_SEED")]
    seed: Option<u64>,

    /// TOML file with default settings (per-command tables allowed).
    #[arg(long, global = true, env = "GLYPHRUN_CONFIG")]
    config: Option<PathBuf>,

    /// Output directory.
    #[arg(long, global = true, env = "GLYPHRUN_OUT")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Replace every letter by its zone-class code (writes coded.tsv).
    Encode(EncodeArgs),
    /// Run-length features per document (writes features.csv, optional plots).
    Features(FeaturesArgs),
    /// Cluster documents (writes partition.csv and params.txt).
    Classify(ClassifyArgs),
    /// Score partitions against ground truth (writes report.txt).
    Evaluate(EvaluateArgs),
    /// Generate a synthetic corpus from letter-frequency models.
    Synth(SynthArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Corpus root with {train,test}/<script>/*.txt.
    #[arg(long, env = "GLYPHRUN_CORPUS")]
    pub corpus: Option<PathBuf>,

    /// Which split to read: train, test or all.
    #[arg(long, env = "GLYPHRUN_SPLIT")]
    pub split: Option<String>,

    /// Directory of <script>.table files replacing the built-in tables.
    #[arg(long, env = "GLYPHRUN_TABLES")]
    pub tables: Option<PathBuf>,

    /// End runs at whitespace.
    #[arg(long)]
    pub break_runs_at_space: bool,
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Debug, Args)]
pub struct FeaturesArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Coded-document file from `encode` instead of a corpus.
    #[arg(long, env = "GLYPHRUN_CODED", conflicts_with = "corpus")]
    pub coded: Option<PathBuf>,

    /// Also write sre/lre/rp range plots and summary.csv.
    #[arg(long)]
    pub plot: bool,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Feature CSV from `features` instead of a corpus.
    #[arg(long, env = "GLYPHRUN_FEATURES", conflicts_with = "corpus")]
    pub features: Option<PathBuf>,

    /// gaicda, hierarchical or em.
    #[arg(long, env = "GLYPHRUN_METHOD")]
    pub method: Option<String>,

    /// Repeat with seeds seed, seed+1, ...
    #[arg(long, env = "GLYPHRUN_RUNS")]
    pub runs: Option<usize>,

    /// Comma-separated feature subset.
    #[arg(long, env = "GLYPHRUN_FEATURE_SET")]
    pub feature_set: Option<String>,

    /// Number of clusters to produce.
    #[arg(long, env = "GLYPHRUN_CLUSTERS")]
    pub clusters: Option<usize>,

    /// Ordering-distance window for graph edges.
    #[arg(long, env = "GLYPHRUN_THRESHOLD")]
    pub threshold: Option<usize>,

    /// Nearest neighbors per node inside the window.
    #[arg(long, env = "GLYPHRUN_NEIGHBORS")]
    pub neighbors: Option<usize>,

    #[arg(long, env = "GLYPHRUN_POPULATION")]
    pub population: Option<usize>,

    #[arg(long, env = "GLYPHRUN_GENERATIONS")]
    pub generations: Option<usize>,

    #[arg(long, env = "GLYPHRUN_CROSSOVER_RATE")]
    pub crossover_rate: Option<f64>,

    #[arg(long, env = "GLYPHRUN_MUTATION_RATE")]
    pub mutation_rate: Option<f64>,

    #[arg(long, env = "GLYPHRUN_ELITISM")]
    pub elitism: Option<f64>,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Partition CSV, or a directory of them (its runs/ subdirectory if present).
    #[arg(long, env = "GLYPHRUN_PARTITION")]
    pub partition: Option<PathBuf>,

    /// CSV with docId and script columns (a manifest or feature CSV works).
    #[arg(long, env = "GLYPHRUN_TRUTH", conflicts_with = "corpus")]
    pub truth: Option<PathBuf>,

    /// Corpus root to take labels from.
    #[arg(long, env = "GLYPHRUN_CORPUS")]
    pub corpus: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Directory of <script>.freq files (and optional <script>.bigram
    /// transition tables) replacing the built-in models.
    #[arg(long, env = "GLYPHRUN_MODELS")]
    pub models: Option<PathBuf>,

    /// Training documents per script, e.g. cyrillic=34,latin=33.
    #[arg(long, env = "GLYPHRUN_TRAIN")]
    pub train: Option<String>,

    /// Test documents per script, e.g. latin=5.
    #[arg(long, env = "GLYPHRUN_TEST")]
    pub test: Option<String>,

    /// Shortest document, in letters.
    #[arg(long, env = "GLYPHRUN_MIN_LENGTH")]
    pub min_length: Option<usize>,

    /// Replace an existing non-empty output directory.
    #[arg(long)]
    pub force: bool,
}

/// Values every command shares after resolution.
pub struct Common<'a> {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub settings: Settings<'a>,
}

fn run(cli: Cli) -> Result<(), failure::Failure> {
    let file = ConfigFile::load(cli.config.as_deref())?;
    let name = match &cli.command {
        Command::Encode(_) => "encode",
        Command::Features(_) => "features",
        Command::Classify(_) => "classify",
        Command::Evaluate(_) => "evaluate",
        Command::Synth(_) => "synth",
    };
    let common = Common {
        seed: cli.seed,
        out: cli.out,
        settings: Settings {
            file: &file,
            command: name,
        },
    };
    match cli.command {
        Command::Encode(a) => commands::encode(&common, &a),
        Command::Features(a) => commands::features(&common, &a),
        Command::Classify(a) => commands::classify(&common, &a),
        Command::Evaluate(a) => commands::evaluate(&common, &a),
        Command::Synth(a) => commands::synth(&common, &a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}
