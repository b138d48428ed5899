//! Sample sources that drive decisions.
//!
//! Every source produces a [`SignalSeries`] of integers in `[-127, 128]`, the
//! window of an 8-bit oscilloscope. Continuous processes (coloured noise, the
//! AR(2) and quasiperiodic surrogates) are mapped into that window by
//! [`quantize`]. All generators are pure functions of their [`SourceSpec`].

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest representable sample.
pub const SAMPLE_MIN: i16 = -127;
/// Largest representable sample.
pub const SAMPLE_MAX: i16 = 128;
/// Number of distinct sample values.
pub const ALPHABET_SIZE: usize = 256;
/// 100 GSample/s.
pub const DEFAULT_PERIOD_PS: f64 = 10.0;
/// Relaxation-oscillation frequency used as the first quasiperiodic tone.
pub const DEFAULT_TONE_GHZ: f64 = 6.5;
pub const DEFAULT_CUTOFF_GHZ: f64 = 10.0;
/// Lag (in raw samples) of the AR surrogate's negative autocorrelation extremum.
pub const DEFAULT_AR_LAG: usize = 5;
/// Pole radius of the default AR surrogate.
pub const DEFAULT_AR_RADIUS: f64 = 0.8;
pub const DEFAULT_DITHER: f64 = 0.05;

/// Number of standard deviations mapped onto each half of the sample window.
const QUANTIZE_SIGMAS: f64 = 4.0;
const AR_BURN_IN: usize = 1000;

/// A finite run of quantized samples with its sampling period.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignalSeries {
    samples: Vec<i16>,
    sample_period_ps: f64,
    label: String,
}

impl SignalSeries {
    pub fn new(samples: Vec<i16>, sample_period_ps: f64, label: impl Into<String>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidSignal(
                "series must contain at least one sample".into(),
            ));
        }
        if !(sample_period_ps.is_finite() && sample_period_ps > 0.0) {
            return Err(Error::InvalidSignal(format!(
                "sample period must be positive, got {sample_period_ps}"
            )));
        }
        if let Some((i, s)) = samples
            .iter()
            .enumerate()
            .find(|(_, s)| !(SAMPLE_MIN..=SAMPLE_MAX).contains(*s))
        {
            return Err(Error::InvalidSignal(format!(
                "sample {i} = {s} lies outside [{SAMPLE_MIN}, {SAMPLE_MAX}]"
            )));
        }
        Ok(Self {
            samples,
            sample_period_ps,
            label: label.into(),
        })
    }

    pub fn samples(&self) -> &[i16] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn sample_period_ps(&self) -> f64 {
        self.sample_period_ps
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn as_f64(&self) -> Vec<f64> {
        self.samples.iter().map(|&s| f64::from(s)).collect()
    }
}

/// AR(2) coefficients for `x_t = phi1 x_{t-1} + phi2 x_{t-2} + e_t`.
///
/// Stability convention: the roots of the lag polynomial `1 - phi1 z - phi2 z^2`
/// must lie strictly outside the unit circle (equivalently the roots of
/// `z^2 - phi1 z - phi2` strictly inside it).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArCoefficients {
    pub phi1: f64,
    pub phi2: f64,
}

impl ArCoefficients {
    /// Complex pole pair `radius * exp(±iπ/lag)`: the autocorrelation oscillates
    /// with period `2 * lag`, so its first negative extremum sits at `lag`.
    pub fn for_negative_lag(lag: usize, radius: f64) -> Result<Self> {
        if lag < 2 {
            return Err(Error::InvalidSource(format!(
                "AR negative-correlation lag must be at least 2, got {lag}"
            )));
        }
        if !(radius > 0.0 && radius < 1.0) {
            return Err(Error::InvalidSource(format!(
                "AR pole radius must lie in (0, 1), got {radius}"
            )));
        }
        let theta = std::f64::consts::PI / lag as f64;
        Ok(Self {
            phi1: 2.0 * radius * theta.cos(),
            phi2: -radius * radius,
        })
    }

    pub fn is_stable(&self) -> bool {
        let (p1, p2) = (self.phi1, self.phi2);
        p1.is_finite() && p2.is_finite() && p2.abs() < 1.0 && p1 + p2 < 1.0 && p2 - p1 < 1.0
    }

    /// Theoretical autocorrelation for lags `0..=max_lag` (Yule–Walker recursion).
    pub fn autocorrelation(&self, max_lag: usize) -> Vec<f64> {
        let mut rho = Vec::with_capacity(max_lag + 1);
        rho.push(1.0);
        if max_lag >= 1 {
            rho.push(self.phi1 / (1.0 - self.phi2));
        }
        for l in 2..=max_lag {
            rho.push(self.phi1 * rho[l - 1] + self.phi2 * rho[l - 2]);
        }
        rho
    }
}

impl Default for ArCoefficients {
    fn default() -> Self {
        Self::for_negative_lag(DEFAULT_AR_LAG, DEFAULT_AR_RADIUS).expect("default AR coefficients")
    }
}

/// On-disk trace encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TraceFormat {
    /// `.csv` / `.txt` are read as CSV, anything else as raw bytes.
    #[default]
    Auto,
    Csv,
    Binary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SourceKind {
    UniformPrng,
    ColouredNoise {
        cutoff_ghz: f64,
    },
    ArSurrogate {
        coefficients: ArCoefficients,
    },
    QuasiperiodicSurrogate {
        frequencies_ghz: Vec<f64>,
        dither: f64,
    },
    TraceFile {
        path: PathBuf,
        #[serde(default)]
        period_ps: Option<f64>,
        #[serde(default)]
        format: TraceFormat,
    },
}

impl SourceKind {
    pub fn coloured_noise() -> Self {
        Self::ColouredNoise {
            cutoff_ghz: DEFAULT_CUTOFF_GHZ,
        }
    }

    pub fn ar_surrogate() -> Self {
        Self::ArSurrogate {
            coefficients: ArCoefficients::default(),
        }
    }

    pub fn quasiperiodic() -> Self {
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        Self::QuasiperiodicSurrogate {
            frequencies_ghz: vec![DEFAULT_TONE_GHZ, DEFAULT_TONE_GHZ / golden],
            dither: DEFAULT_DITHER,
        }
    }

    fn label(&self) -> String {
        match self {
            Self::UniformPrng => "rand".into(),
            Self::ColouredNoise { .. } => "coloured".into(),
            Self::ArSurrogate { .. } => "ar".into(),
            Self::QuasiperiodicSurrogate { .. } => "quasiperiodic".into(),
            Self::TraceFile { path, .. } => format!(
                "trace:{}",
                path.file_stem()
                    .map(|s| s.to_string_lossy())
                    .unwrap_or_default()
            ),
        }
    }
}

/// Everything needed to reproduce a series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SourceSpec {
    #[serde(flatten)]
    pub kind: SourceKind,
    #[serde(default)]
    pub seed: u64,
    /// Number of samples to generate. Ignored for traces (the file decides).
    pub length: usize,
}

impl SourceSpec {
    pub fn new(kind: SourceKind, seed: u64, length: usize) -> Self {
        Self { kind, seed, length }
    }

    pub fn validate(&self) -> Result<()> {
        if self.length == 0 && !matches!(self.kind, SourceKind::TraceFile { .. }) {
            return Err(Error::InvalidSource("length must be at least 1".into()));
        }
        match &self.kind {
            SourceKind::UniformPrng => Ok(()),
            SourceKind::ColouredNoise { cutoff_ghz } => {
                let nyquist = nyquist_ghz(DEFAULT_PERIOD_PS);
                if !(cutoff_ghz.is_finite() && *cutoff_ghz > 0.0 && *cutoff_ghz <= nyquist) {
                    return Err(Error::InvalidSource(format!(
                        "cut-off frequency must lie in (0, {nyquist}] GHz, got {cutoff_ghz}"
                    )));
                }
                Ok(())
            }
            SourceKind::ArSurrogate { coefficients } => {
                if !coefficients.is_stable() {
                    return Err(Error::InvalidSource(format!(
                        "AR coefficients ({}, {}) are not stable",
                        coefficients.phi1, coefficients.phi2
                    )));
                }
                Ok(())
            }
            SourceKind::QuasiperiodicSurrogate {
                frequencies_ghz,
                dither,
            } => {
                if frequencies_ghz.is_empty() {
                    return Err(Error::InvalidSource(
                        "at least one tone frequency required".into(),
                    ));
                }
                if let Some(f) = frequencies_ghz
                    .iter()
                    .find(|f| !(f.is_finite() && **f > 0.0))
                {
                    return Err(Error::InvalidSource(format!(
                        "tone frequencies must be positive, got {f}"
                    )));
                }
                if !(dither.is_finite() && *dither >= 0.0) {
                    return Err(Error::InvalidSource(format!(
                        "dither amplitude must be non-negative, got {dither}"
                    )));
                }
                Ok(())
            }
            SourceKind::TraceFile { period_ps, .. } => match period_ps {
                Some(p) if !(p.is_finite() && *p > 0.0) => Err(Error::InvalidSource(format!(
                    "trace period must be positive, got {p}"
                ))),
                _ => Ok(()),
            },
        }
    }
}

fn nyquist_ghz(period_ps: f64) -> f64 {
    500.0 / period_ps
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Produce the series described by `spec`.
pub fn generate(spec: &SourceSpec) -> Result<SignalSeries> {
    match spec.kind {
        SourceKind::UniformPrng => generate_uniform(spec),
        SourceKind::ColouredNoise { .. } => generate_coloured_noise(spec),
        SourceKind::ArSurrogate { .. } => generate_ar_surrogate(spec),
        SourceKind::QuasiperiodicSurrogate { .. } => generate_quasiperiodic(spec),
        SourceKind::TraceFile { .. } => load_trace(spec),
    }
}

fn wrong_kind(expected: &str, spec: &SourceSpec) -> Error {
    Error::InvalidSource(format!(
        "expected a {expected} source, got {}",
        spec.kind.label()
    ))
}

/// I.i.d. uniform integers over `[-127, 128]`.
pub fn generate_uniform(spec: &SourceSpec) -> Result<SignalSeries> {
    if spec.kind != SourceKind::UniformPrng {
        return Err(wrong_kind("uniform", spec));
    }
    spec.validate()?;
    let mut rng = rng_for(spec.seed);
    let samples = (0..spec.length)
        .map(|_| rng.random_range(SAMPLE_MIN..=SAMPLE_MAX))
        .collect();
    SignalSeries::new(samples, DEFAULT_PERIOD_PS, spec.kind.label())
}

/// Discrete Ornstein–Uhlenbeck process: white Gaussian noise through a
/// single-pole low-pass with coefficient `exp(-2π f_c Δt)`.
pub fn generate_coloured_noise(spec: &SourceSpec) -> Result<SignalSeries> {
    let SourceKind::ColouredNoise { cutoff_ghz } = spec.kind else {
        return Err(wrong_kind("coloured-noise", spec));
    };
    spec.validate()?;
    let rho = low_pass_coefficient(cutoff_ghz, DEFAULT_PERIOD_PS);
    let innovation = (1.0 - rho * rho).sqrt();
    let mut rng = rng_for(spec.seed);
    let mut x: f64 = rng.sample(StandardNormal);
    let mut values = Vec::with_capacity(spec.length);
    for _ in 0..spec.length {
        values.push(x);
        let e: f64 = rng.sample(StandardNormal);
        x = rho * x + innovation * e;
    }
    SignalSeries::new(quantize(&values), DEFAULT_PERIOD_PS, spec.kind.label())
}

/// Lag-one correlation of the sampled low-pass filter.
pub fn low_pass_coefficient(cutoff_ghz: f64, period_ps: f64) -> f64 {
    (-2.0 * std::f64::consts::PI * cutoff_ghz * period_ps * 1e-3).exp()
}

/// Stable AR(2) process driven by Gaussian noise.
pub fn generate_ar_surrogate(spec: &SourceSpec) -> Result<SignalSeries> {
    let SourceKind::ArSurrogate { coefficients } = spec.kind else {
        return Err(wrong_kind("ar-surrogate", spec));
    };
    spec.validate()?;
    let ArCoefficients { phi1, phi2 } = coefficients;
    let mut rng = rng_for(spec.seed);
    let (mut prev1, mut prev2) = (0.0f64, 0.0f64);
    let mut values = Vec::with_capacity(spec.length);
    for i in 0..AR_BURN_IN + spec.length {
        let e: f64 = rng.sample(StandardNormal);
        let x = phi1 * prev1 + phi2 * prev2 + e;
        prev2 = prev1;
        prev1 = x;
        if i >= AR_BURN_IN {
            values.push(x);
        }
    }
    SignalSeries::new(quantize(&values), DEFAULT_PERIOD_PS, spec.kind.label())
}

/// Sum of unit sinusoids with random phases plus Gaussian dither.
pub fn generate_quasiperiodic(spec: &SourceSpec) -> Result<SignalSeries> {
    let SourceKind::QuasiperiodicSurrogate {
        ref frequencies_ghz,
        dither,
    } = spec.kind
    else {
        return Err(wrong_kind("quasiperiodic", spec));
    };
    spec.validate()?;
    let mut rng = rng_for(spec.seed);
    // Cycles per sample; exact whenever f * period / 1000 is a dyadic rational.
    let tones: Vec<(f64, f64)> = frequencies_ghz
        .iter()
        .map(|f| (f * DEFAULT_PERIOD_PS / 1000.0, rng.random::<f64>()))
        .collect();
    let tau = 2.0 * std::f64::consts::PI;
    let values: Vec<f64> = (0..spec.length)
        .map(|t| {
            let tone: f64 = tones
                .iter()
                .map(|&(c, phase)| (tau * ((c * t as f64).fract() + phase)).sin())
                .sum();
            let noise = if dither > 0.0 {
                dither * rng.sample::<f64, _>(StandardNormal)
            } else {
                0.0
            };
            tone + noise
        })
        .collect();
    SignalSeries::new(quantize(&values), DEFAULT_PERIOD_PS, spec.kind.label())
}

/// Affine map to zero mean with `±4σ` spanning the sample window, then
/// round half away from zero and clip.
///
/// The window centre is 0.5 so that a symmetric process yields `s ≤ 0` and
/// `s > 0` with equal probability, as the uniform source does.
pub fn quantize(values: &[f64]) -> Vec<i16> {
    if values.is_empty() {
        return Vec::new();
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    let std = var.sqrt();
    let half_range = (f64::from(SAMPLE_MAX) - f64::from(SAMPLE_MIN)) / 2.0;
    let centre = (f64::from(SAMPLE_MAX) + f64::from(SAMPLE_MIN)) / 2.0;
    let gain = if std > 0.0 {
        half_range / (QUANTIZE_SIGMAS * std)
    } else {
        0.0
    };
    values
        .iter()
        .map(|v| quantize_one(centre + (v - mean) * gain))
        .collect()
}

fn quantize_one(v: f64) -> i16 {
    v.round()
        .clamp(f64::from(SAMPLE_MIN), f64::from(SAMPLE_MAX)) as i16
}

fn resolve_format(path: &Path, format: TraceFormat) -> TraceFormat {
    match format {
        TraceFormat::Auto => match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") || ext.eq_ignore_ascii_case("txt") => {
                TraceFormat::Csv
            }
            _ => TraceFormat::Binary,
        },
        f => f,
    }
}

/// Read a recorded trace.
///
/// CSV traces hold one integer per line; `#` lines are comments and a
/// `# period_ps=<real>` line sets the sampling period. Binary traces are raw
/// signed bytes. A period set on the `SourceSpec` overrides the file header.
pub fn load_trace(spec: &SourceSpec) -> Result<SignalSeries> {
    let SourceKind::TraceFile {
        ref path,
        period_ps,
        format,
    } = spec.kind
    else {
        return Err(wrong_kind("trace-file", spec));
    };
    spec.validate()?;
    let bytes = fs::read(path).map_err(|source| Error::TraceIo {
        path: path.clone(),
        source,
    })?;
    let (samples, header_period) = match resolve_format(path, format) {
        TraceFormat::Csv => parse_csv_trace(path, &bytes)?,
        _ => (parse_binary_trace(path, &bytes)?, None),
    };
    if samples.is_empty() {
        return Err(Error::TraceParse {
            path: path.clone(),
            line: 0,
            message: "trace contains no samples".into(),
        });
    }
    let period = period_ps.or(header_period).unwrap_or(DEFAULT_PERIOD_PS);
    SignalSeries::new(samples, period, spec.kind.label())
}

fn parse_csv_trace(path: &Path, bytes: &[u8]) -> Result<(Vec<i16>, Option<f64>)> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::TraceParse {
        path: path.to_path_buf(),
        line: 0,
        message: format!("not valid UTF-8: {e}"),
    })?;
    let mut samples = Vec::new();
    let mut period = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(value) = comment.trim().strip_prefix("period_ps=") {
                let p: f64 = value.trim().parse().map_err(|_| Error::TraceParse {
                    path: path.to_path_buf(),
                    line: line_no,
                    message: format!("bad period header {value:?}"),
                })?;
                period = Some(p);
            }
            continue;
        }
        let value: i64 = line.parse().map_err(|_| Error::TraceParse {
            path: path.to_path_buf(),
            line: line_no,
            message: format!("expected an integer, found {line:?}"),
        })?;
        if !(i64::from(SAMPLE_MIN)..=i64::from(SAMPLE_MAX)).contains(&value) {
            return Err(Error::TraceRange {
                path: path.to_path_buf(),
                index: line_no,
                value,
            });
        }
        samples.push(value as i16);
    }
    Ok((samples, period))
}

fn parse_binary_trace(path: &Path, bytes: &[u8]) -> Result<Vec<i16>> {
    bytes
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            let v = i16::from(b as i8);
            if v < SAMPLE_MIN {
                Err(Error::TraceRange {
                    path: path.to_path_buf(),
                    index: i + 1,
                    value: i64::from(v),
                })
            } else {
                Ok(v)
            }
        })
        .collect()
}

/// CSV trace text, readable by [`load_trace`]. `comments` are emitted as `#`
/// lines after the period header.
pub fn trace_csv(series: &SignalSeries, comments: &[String]) -> String {
    let mut out = String::with_capacity(series.len() * 5 + 64);
    let _ = writeln!(out, "# period_ps={}", series.sample_period_ps());
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    for s in series.samples() {
        let _ = writeln!(out, "{s}");
    }
    out
}

/// Write raw signed bytes. The value 128 has no `i8` encoding and is rejected.
pub fn write_trace_binary(series: &SignalSeries, path: &Path) -> Result<()> {
    let bytes = series
        .samples()
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            i8::try_from(s)
                .map(|b| b as u8)
                .map_err(|_| Error::TraceRange {
                    path: path.to_path_buf(),
                    index: i + 1,
                    value: i64::from(s),
                })
        })
        .collect::<Result<Vec<u8>>>()?;
    let mut f = fs::File::create(path).map_err(|source| Error::TraceIo {
        path: path.to_path_buf(),
        source,
    })?;
    f.write_all(&bytes).map_err(|source| Error::TraceIo {
        path: path.to_path_buf(),
        source,
    })
}
