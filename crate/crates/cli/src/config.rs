//! Merging flags, environment and the JSON config file into library specs.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use chaosbandit::env::ProblemSpec;
use chaosbandit::harness::ExperimentSpec;
use chaosbandit::signal::{
    ArCoefficients, SourceKind, SourceSpec, TraceFormat, DEFAULT_AR_LAG, DEFAULT_AR_RADIUS,
    DEFAULT_CUTOFF_GHZ,
};
use chaosbandit::tree::SamplingPlan;
use serde::de::DeserializeOwned;
use serde_json::{Map, Value};

use crate::args::{CommonArgs, ExperimentArgs, SourceArgs, SourceName, TraceFormatName};

const KNOWN_KEYS: &[&str] = &[
    "out-dir",
    "jobs",
    "seed",
    "source",
    "length",
    "cutoff-ghz",
    "ar-lag",
    "ar-radius",
    "tones-ghz",
    "dither",
    "trace-path",
    "period-ps",
    "trace-format",
    "problem",
    "plays",
    "reps",
    "delta-s",
    "delta-l",
    "levels",
    "delta",
    "alpha",
    "wrap",
    "values",
    "types",
    "cycle",
    "k",
    "p1",
    "n",
    "max-lag",
    "window",
    "segment",
    "tau",
    "walks",
    "horizon",
    "lag",
    "pairing",
    "format",
];

/// Option defaults read from `--config`. Keys are long option names.
#[derive(Debug, Default)]
pub struct FileConfig {
    values: Map<String, Value>,
    path: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let value: Value = serde_json::from_str(&text)
            .with_context(|| format!("parsing config {}", path.display()))?;
        let Value::Object(values) = value else {
            bail!("config {} must hold a JSON object", path.display());
        };
        if let Some(key) = values.keys().find(|k| !KNOWN_KEYS.contains(&k.as_str())) {
            bail!("config {}: unknown option {key:?}", path.display());
        }
        Ok(Self {
            values,
            path: Some(path.to_path_buf()),
        })
    }

    pub fn get<T: DeserializeOwned>(&self, key: &str) -> Result<Option<T>> {
        self.values
            .get(key)
            .map(|v| {
                serde_json::from_value(v.clone()).with_context(|| {
                    let path = self.path.as_deref().unwrap_or(Path::new("config"));
                    format!("config {}: bad value for {key:?}", path.display())
                })
            })
            .transpose()
    }

    /// Flag (or environment) value, else the file's, else `default`.
    pub fn pick<T: DeserializeOwned + Clone>(
        &self,
        flag: &Option<T>,
        key: &str,
        default: T,
    ) -> Result<T> {
        Ok(self.pick_opt(flag, key)?.unwrap_or(default))
    }

    pub fn pick_opt<T: DeserializeOwned + Clone>(
        &self,
        flag: &Option<T>,
        key: &str,
    ) -> Result<Option<T>> {
        match flag {
            Some(v) => Ok(Some(v.clone())),
            None => self.get(key),
        }
    }
}

/// Settings shared by every command.
pub struct Common {
    pub file: FileConfig,
    pub out_dir: PathBuf,
    pub jobs: Option<usize>,
    pub seed: u64,
}

pub fn common(args: &CommonArgs) -> Result<Common> {
    let file = FileConfig::load(args.config.as_deref())?;
    let out_dir = file.pick(&args.out_dir, "out-dir", PathBuf::from("."))?;
    let jobs = file.pick_opt(&args.jobs, "jobs")?.map(|j: u64| j as usize);
    if jobs == Some(0) {
        bail!("jobs must be at least 1");
    }
    let seed = file.pick(&args.seed, "seed", 0)?;
    Ok(Common {
        file,
        out_dir,
        jobs,
        seed,
    })
}

fn parse_enum<T: clap::ValueEnum>(file: &FileConfig, key: &str) -> Result<Option<T>> {
    file.get::<String>(key)?
        .map(|s| {
            T::from_str(&s, true).map_err(|e| anyhow::anyhow!("config: bad value for {key:?}: {e}"))
        })
        .transpose()
}

/// Resolve a source. `length` defaults to `default_length` (0 lets an
/// experiment size the signal).
pub fn source(args: &SourceArgs, c: &Common, default_length: usize) -> Result<SourceSpec> {
    let f = &c.file;
    let name = match args.source {
        Some(n) => n,
        None => parse_enum(f, "source")?.unwrap_or(SourceName::Ar),
    };
    let kind = match name {
        SourceName::Uniform => SourceKind::UniformPrng,
        SourceName::Coloured => SourceKind::ColouredNoise {
            cutoff_ghz: f.pick(&args.cutoff_ghz, "cutoff-ghz", DEFAULT_CUTOFF_GHZ)?,
        },
        SourceName::Ar => {
            let lag = f.pick(&args.ar_lag, "ar-lag", DEFAULT_AR_LAG)?;
            let radius = f.pick(&args.ar_radius, "ar-radius", DEFAULT_AR_RADIUS)?;
            SourceKind::ArSurrogate {
                coefficients: ArCoefficients::for_negative_lag(lag, radius)?,
            }
        }
        SourceName::Quasiperiodic => match SourceKind::quasiperiodic() {
            SourceKind::QuasiperiodicSurrogate {
                frequencies_ghz,
                dither,
            } => SourceKind::QuasiperiodicSurrogate {
                frequencies_ghz: f.pick(&args.tones_ghz, "tones-ghz", frequencies_ghz)?,
                dither: f.pick(&args.dither, "dither", dither)?,
            },
            other => other,
        },
        SourceName::Trace => {
            let Some(path) = f.pick_opt(&args.trace_path, "trace-path")? else {
                bail!("--source trace needs --trace-path");
            };
            let format = match args.trace_format {
                Some(t) => t,
                None => parse_enum(f, "trace-format")?.unwrap_or(TraceFormatName::Auto),
            };
            SourceKind::TraceFile {
                path,
                period_ps: f.pick_opt(&args.period_ps, "period-ps")?,
                format: match format {
                    TraceFormatName::Auto => TraceFormat::Auto,
                    TraceFormatName::Csv => TraceFormat::Csv,
                    TraceFormatName::Binary => TraceFormat::Binary,
                },
            }
        }
    };
    let length = f.pick(&args.length, "length", default_length)?;
    let spec = SourceSpec::new(kind, c.seed, length);
    if length > 0 {
        spec.validate()?;
    }
    Ok(spec)
}

pub fn experiment(
    args: &ExperimentArgs,
    source_args: &SourceArgs,
    c: &Common,
    default_problem: ProblemSpec,
    default_plays: usize,
    default_reps: usize,
) -> Result<ExperimentSpec> {
    let f = &c.file;
    let problem = match &args.problem {
        Some(p) => p.clone(),
        None => match f.get::<String>("problem")? {
            Some(s) => s.parse()?,
            None => default_problem,
        },
    };
    let plays = f.pick(&args.plays, "plays", default_plays as u64)? as usize;
    let reps = f.pick(&args.reps, "reps", default_reps as u64)? as usize;
    let mut spec = ExperimentSpec::new(problem, source(source_args, c, 0)?, plays, reps);
    let defaults = SamplingPlan::default();
    spec.plan = SamplingPlan::new(
        f.pick(&args.delta_s, "delta-s", defaults.delta_s_samples as u64)? as usize,
        f.pick(&args.delta_l, "delta-l", defaults.delta_l_samples)?,
    )?;
    spec.threshold_levels = f.pick(&args.levels, "levels", spec.threshold_levels)?;
    spec.params.delta = f.pick(&args.delta, "delta", spec.params.delta)?;
    spec.params.alpha = f.pick(&args.alpha, "alpha", spec.params.alpha)?;
    spec.wrap = f.pick(&args.wrap, "wrap", false)?;
    spec.seed = c.seed;
    spec.validate()?;
    Ok(spec)
}
