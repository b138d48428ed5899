use std::path::PathBuf;

use chaosbandit::env::ProblemSpec;
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Threshold-tree bandit experiments driven by sampled time series.
///
/// Options may also come from a JSON config file (`--config`, keys are the
/// long option names) or `CHAOSBANDIT_*` environment variables; flags win over
/// the environment, which wins over the file.
#[derive(Debug, Parser)]
#[command(name = "chaosbandit", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One experiment: CDR curve and the first repetition's final tree.
    Run(RunArgs),
    /// CDR at a fixed cycle for each inter-decision interval.
    SweepDs(SweepDsArgs),
    /// CDR at a fixed cycle for each four-armed type and inter-bit interval.
    SweepDl(SweepDlArgs),
    /// CDR at a fixed cycle for each threshold-level exponent K.
    SweepLevels(SweepLevelsArgs),
    /// Cycles-to-0.95 across arm counts and the power-law fit.
    Scaling(ScalingArgs),
    /// Time-series diagnostics.
    Analyze(AnalyzeArgs),
    /// Write a generated series as a trace file.
    GenSignal(GenSignalArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// JSON file of option defaults.
    #[arg(long, env = "CHAOSBANDIT_CONFIG")]
    pub config: Option<PathBuf>,

    /// Directory for output files (created if missing).
    #[arg(long, env = "CHAOSBANDIT_OUT_DIR")]
    pub out_dir: Option<PathBuf>,

    /// Worker threads for repetitions (default: all cores).
    #[arg(long, env = "CHAOSBANDIT_JOBS", value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,

    /// Seed for the signal and the reward streams.
    #[arg(long, env = "CHAOSBANDIT_SEED")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SourceName {
    Uniform,
    Coloured,
    Ar,
    Quasiperiodic,
    Trace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TraceFormatName {
    Auto,
    Csv,
    Binary,
}

#[derive(Debug, Clone, Args)]
pub struct SourceArgs {
    #[arg(long, env = "CHAOSBANDIT_SOURCE", value_enum)]
    pub source: Option<SourceName>,

    /// Samples to generate (experiments size the signal automatically).
    #[arg(long, env = "CHAOSBANDIT_LENGTH")]
    pub length: Option<usize>,

    /// Low-pass cut-off of the coloured noise.
    #[arg(long, env = "CHAOSBANDIT_CUTOFF_GHZ")]
    pub cutoff_ghz: Option<f64>,

    /// Lag (in samples) of the AR surrogate's negative autocorrelation peak.
    #[arg(long, env = "CHAOSBANDIT_AR_LAG")]
    pub ar_lag: Option<usize>,

    /// Pole radius of the AR surrogate, in (0, 1).
    #[arg(long, env = "CHAOSBANDIT_AR_RADIUS")]
    pub ar_radius: Option<f64>,

    /// Tone frequencies of the quasiperiodic surrogate.
    #[arg(long, env = "CHAOSBANDIT_TONES_GHZ", value_delimiter = ',')]
    pub tones_ghz: Option<Vec<f64>>,

    /// Gaussian dither added to the quasiperiodic surrogate.
    #[arg(long, env = "CHAOSBANDIT_DITHER")]
    pub dither: Option<f64>,

    #[arg(long, env = "CHAOSBANDIT_TRACE_PATH")]
    pub trace_path: Option<PathBuf>,

    /// Sample period of the trace, overriding its header.
    #[arg(long, env = "CHAOSBANDIT_PERIOD_PS")]
    pub period_ps: Option<f64>,

    #[arg(long, env = "CHAOSBANDIT_TRACE_FORMAT", value_enum)]
    pub trace_format: Option<TraceFormatName>,
}

#[derive(Debug, Clone, Args)]
pub struct ExperimentArgs {
    /// canonical:N, type:T, two-armed:P1, probs:P0,P1,... or file:PATH.
    #[arg(long, env = "CHAOSBANDIT_PROBLEM")]
    pub problem: Option<ProblemSpec>,

    #[arg(long, env = "CHAOSBANDIT_PLAYS", value_parser = clap::value_parser!(u64).range(1..))]
    pub plays: Option<u64>,

    #[arg(long, env = "CHAOSBANDIT_REPS", value_parser = clap::value_parser!(u64).range(1..))]
    pub reps: Option<u64>,

    /// Inter-decision interval in samples.
    #[arg(long, env = "CHAOSBANDIT_DELTA_S", value_parser = clap::value_parser!(u64).range(1..))]
    pub delta_s: Option<u64>,

    /// Inter-bit interval in samples.
    #[arg(long, env = "CHAOSBANDIT_DELTA_L")]
    pub delta_l: Option<usize>,

    /// Threshold-level exponent K (2^K + 1 levels).
    #[arg(long, env = "CHAOSBANDIT_LEVELS", value_parser = clap::value_parser!(u32).range(1..=8))]
    pub levels: Option<u32>,

    /// Threshold increment on a win.
    #[arg(long, env = "CHAOSBANDIT_DELTA")]
    pub delta: Option<f64>,

    /// Forgetting factor.
    #[arg(long, env = "CHAOSBANDIT_ALPHA")]
    pub alpha: Option<f64>,

    /// Reuse the signal cyclically when it is too short.
    #[arg(long, env = "CHAOSBANDIT_WRAP", num_args = 0..=1, default_missing_value = "true")]
    pub wrap: Option<bool>,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub experiment: ExperimentArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepDsArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub experiment: ExperimentArgs,
    /// Δ_s values (default 1..=10).
    #[arg(long, env = "CHAOSBANDIT_VALUES", value_delimiter = ',')]
    pub values: Option<Vec<usize>>,
    /// Readout cycle (default 100).
    #[arg(long, env = "CHAOSBANDIT_CYCLE")]
    pub cycle: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepDlArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub experiment: ExperimentArgs,
    /// Δ_L values (default 0..=10).
    #[arg(long, env = "CHAOSBANDIT_VALUES", value_delimiter = ',')]
    pub values: Option<Vec<usize>>,
    /// Four-armed problem types (default 1,2,3,4).
    #[arg(long, env = "CHAOSBANDIT_TYPES", value_delimiter = ',')]
    pub types: Option<Vec<u8>>,
    /// Readout cycle (default 100).
    #[arg(long, env = "CHAOSBANDIT_CYCLE")]
    pub cycle: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepLevelsArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub experiment: ExperimentArgs,
    /// K values (default 1..=8).
    #[arg(long, env = "CHAOSBANDIT_K", value_delimiter = ',')]
    pub k: Option<Vec<u32>>,
    /// Reward probability of the worse machine; the better one pays 0.9.
    #[arg(long, env = "CHAOSBANDIT_P1", value_delimiter = ',')]
    pub p1: Option<Vec<f64>>,
    /// Readout cycle (default 200).
    #[arg(long, env = "CHAOSBANDIT_CYCLE")]
    pub cycle: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct ScalingArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub experiment: ExperimentArgs,
    /// Arm counts (default 2,4,8,16). Plays and repetitions follow the
    /// reference schedule unless --plays / --reps are given.
    #[arg(long, env = "CHAOSBANDIT_N", value_delimiter = ',')]
    pub n: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    #[command(subcommand)]
    pub kind: AnalyzeKind,
}

#[derive(Debug, Clone, Subcommand)]
pub enum AnalyzeKind {
    /// Normalized autocorrelation up to --max-lag.
    Acf(AcfArgs),
    /// Smoothed periodogram in dB.
    Spectrum(SpectrumArgs),
    /// Ensemble time-averaged MSD of signal-driven random walks.
    Etmsd(WalkArgs),
    /// Condition number of the (x(t), x(t + D)) covariance of the walks.
    Condition(ConditionArgs),
}

#[derive(Debug, Clone, Args)]
pub struct AcfArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, env = "CHAOSBANDIT_MAX_LAG")]
    pub max_lag: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub source: SourceArgs,
    /// Moving-average width in bins (default 20).
    #[arg(long, env = "CHAOSBANDIT_WINDOW")]
    pub window: Option<usize>,
    /// Average periodograms of segments of this length.
    #[arg(long, env = "CHAOSBANDIT_SEGMENT")]
    pub segment: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct WalkArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub source: SourceArgs,
    /// Lags τ (default 1,10,100,1000).
    #[arg(long, env = "CHAOSBANDIT_TAU", value_delimiter = ',')]
    pub tau: Option<Vec<usize>>,
    #[arg(long, env = "CHAOSBANDIT_WALKS")]
    pub walks: Option<usize>,
    #[arg(long, env = "CHAOSBANDIT_HORIZON")]
    pub horizon: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PairingName {
    Pooled,
    Ensemble,
}

#[derive(Debug, Clone, Args)]
pub struct ConditionArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, env = "CHAOSBANDIT_WALKS")]
    pub walks: Option<usize>,
    #[arg(long, env = "CHAOSBANDIT_HORIZON")]
    pub horizon: Option<usize>,
    /// Pair offset D (default 10000).
    #[arg(long, env = "CHAOSBANDIT_LAG")]
    pub lag: Option<usize>,
    #[arg(long, env = "CHAOSBANDIT_PAIRING", value_enum)]
    pub pairing: Option<PairingName>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Binary,
}

#[derive(Debug, Clone, Args)]
pub struct GenSignalArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, env = "CHAOSBANDIT_FORMAT", value_enum)]
    pub format: Option<OutputFormat>,
}
