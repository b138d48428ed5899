//! Time-series diagnostics: autocorrelation, power spectrum, and the
//! diffusivity of random walks driven by a signal (ETMSD and the covariance
//! condition number).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signal::{SignalSeries, SAMPLE_MAX, SAMPLE_MIN};

/// Normalized sample autocorrelation `ρ(ℓ)` for `ℓ = 0..=max_lag`.
pub fn autocorrelation(series: &SignalSeries, max_lag: usize) -> Result<Vec<f64>> {
    autocorrelation_of(&series.as_f64(), max_lag)
}

pub fn autocorrelation_of(values: &[f64], max_lag: usize) -> Result<Vec<f64>> {
    if max_lag >= values.len() {
        return Err(Error::Analysis(format!(
            "max lag {max_lag} must be below the series length {}",
            values.len()
        )));
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let centred: Vec<f64> = values.iter().map(|v| v - mean).collect();
    let denom: f64 = centred.iter().map(|v| v * v).sum();
    if denom == 0.0 {
        return Err(Error::Analysis(
            "autocorrelation of a constant series".into(),
        ));
    }
    let mut rho = Vec::with_capacity(max_lag + 1);
    rho.push(1.0);
    for lag in 1..=max_lag {
        let num: f64 = centred[..centred.len() - lag]
            .iter()
            .zip(&centred[lag..])
            .map(|(a, b)| a * b)
            .sum();
        rho.push((num / denom).clamp(-1.0, 1.0));
    }
    Ok(rho)
}

/// One point of a smoothed spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumPoint {
    pub freq_ghz: f64,
    pub power_db: f64,
}

/// Periodogram options.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumOptions {
    /// Centered moving-average width applied to the periodogram (in bins).
    pub smoothing_window: usize,
    /// Average periodograms of consecutive non-overlapping segments of this
    /// length (no taper). `None` uses the whole series as one segment.
    pub segment_len: Option<usize>,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        Self {
            smoothing_window: 20,
            segment_len: None,
        }
    }
}

/// Periodogram in dB over `0..=Nyquist`, mean removed, smoothed by a centered
/// moving average (edges truncated: `bins - window + 1` points remain).
pub fn power_spectrum(
    series: &SignalSeries,
    options: SpectrumOptions,
) -> Result<Vec<SpectrumPoint>> {
    let window = options.smoothing_window.max(1);
    let n = series.len();
    if n < 2 * window {
        return Err(Error::Analysis(format!(
            "series of length {n} is shorter than twice the smoothing window {window}"
        )));
    }
    let seg = options.segment_len.unwrap_or(n).min(n);
    if seg < 2 * window {
        return Err(Error::Analysis(format!(
            "segment length {seg} is shorter than twice the smoothing window {window}"
        )));
    }
    let values = series.as_f64();
    let mean = values.iter().sum::<f64>() / n as f64;
    let bins = seg / 2 + 1;
    let segments = n / seg;

    let fft = FftPlanner::<f64>::new().plan_fft_forward(seg);
    let mut power = vec![0.0; bins];
    let mut buf = vec![Complex::new(0.0, 0.0); seg];
    for s in 0..segments {
        for (slot, v) in buf.iter_mut().zip(&values[s * seg..(s + 1) * seg]) {
            *slot = Complex::new(v - mean, 0.0);
        }
        fft.process(&mut buf);
        for (p, c) in power.iter_mut().zip(&buf) {
            *p += c.norm_sqr() / seg as f64;
        }
    }
    for p in &mut power {
        *p /= segments as f64;
    }

    let df = 1000.0 / (seg as f64 * series.sample_period_ps());
    let smoothed: Vec<SpectrumPoint> = power
        .windows(window)
        .enumerate()
        .map(|(i, w)| {
            let avg = w.iter().sum::<f64>() / window as f64;
            SpectrumPoint {
                freq_ghz: (i as f64 + (window - 1) as f64 / 2.0) * df,
                power_db: 10.0 * avg.max(f64::MIN_POSITIVE).log10(),
            }
        })
        .collect();
    Ok(smoothed)
}

/// How the comparison random number of a walk is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkRule {
    /// Inclusive range of the uniform integer `u`; the walker steps right
    /// when `u < s(t)`.
    pub low: i16,
    pub high: i16,
}

impl Default for WalkRule {
    fn default() -> Self {
        Self {
            low: SAMPLE_MIN,
            high: SAMPLE_MAX,
        }
    }
}

/// Positions `x(0..=T)` of one walk, `x(0) = 0`, steps of ±1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Walk {
    pub positions: Vec<i64>,
}

impl Walk {
    pub fn horizon(&self) -> usize {
        self.positions.len() - 1
    }
}

/// Walk driven by `samples[0..horizon]` (sample `t - 1` sets step `t`).
pub fn build_walk(samples: &[i16], horizon: usize, seed: u64, rule: WalkRule) -> Result<Walk> {
    if horizon > samples.len() {
        return Err(Error::Analysis(format!(
            "walk horizon {horizon} exceeds the {} available samples",
            samples.len()
        )));
    }
    if rule.low > rule.high {
        return Err(Error::Analysis("walk comparison range is empty".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut positions = Vec::with_capacity(horizon + 1);
    let mut x = 0i64;
    positions.push(x);
    for &s in &samples[..horizon] {
        let u = rng.random_range(rule.low..=rule.high);
        x += if u < s { 1 } else { -1 };
        positions.push(x);
    }
    Ok(Walk { positions })
}

/// Equal-horizon walks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkEnsemble {
    pub walks: Vec<Walk>,
}

impl WalkEnsemble {
    pub fn horizon(&self) -> usize {
        self.walks.first().map_or(0, Walk::horizon)
    }

    pub fn len(&self) -> usize {
        self.walks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walks.is_empty()
    }
}

/// `count` walks over consecutive disjoint segments of `series`, walk `i`
/// using comparison stream `seed` / `i`.
pub fn build_ensemble(
    series: &SignalSeries,
    count: usize,
    horizon: usize,
    seed: u64,
    rule: WalkRule,
) -> Result<WalkEnsemble> {
    let needed = count * horizon;
    if needed > series.len() {
        return Err(Error::Analysis(format!(
            "{count} walks of horizon {horizon} need {needed} samples, series has {}",
            series.len()
        )));
    }
    let samples = series.samples();
    let walks = (0..count)
        .into_par_iter()
        .map(|i| {
            let seg = &samples[i * horizon..(i + 1) * horizon];
            build_walk(seg, horizon, walk_seed(seed, i), rule)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WalkEnsemble { walks })
}

fn walk_seed(seed: u64, index: usize) -> u64 {
    // SplitMix64 finalizer.
    let mut z = seed.wrapping_add((index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Ensemble-averaged time-averaged mean square displacement per `τ`.
pub fn etmsd(ensemble: &WalkEnsemble, taus: &[usize]) -> Result<Vec<f64>> {
    if ensemble.is_empty() {
        return Err(Error::Analysis("empty walk ensemble".into()));
    }
    let horizon = ensemble.horizon();
    if ensemble.walks.iter().any(|w| w.horizon() != horizon) {
        return Err(Error::Analysis("walks have different horizons".into()));
    }
    if let Some(&tau) = taus.iter().find(|&&t| t >= horizon) {
        return Err(Error::Analysis(format!(
            "τ = {tau} must be below the horizon {horizon}"
        )));
    }
    Ok(taus
        .iter()
        .map(|&tau| {
            let total: f64 = ensemble
                .walks
                .iter()
                .map(|w| time_averaged_msd(&w.positions, tau))
                .sum();
            total / ensemble.len() as f64
        })
        .collect())
}

fn time_averaged_msd(x: &[i64], tau: usize) -> f64 {
    let horizon = x.len() - 1;
    if tau == 0 {
        return 0.0;
    }
    let sum: i128 = (1..=horizon - tau)
        .map(|t| {
            let d = i128::from(x[t + tau] - x[t]);
            d * d
        })
        .sum();
    sum as f64 / (horizon - tau) as f64
}

/// How `(x(t), x(t + D))` pairs are formed from an ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pairing {
    /// Every walk contributes its own pairs.
    #[default]
    Pooled,
    /// Pairs of the ensemble-average trajectory `⟨x(t)⟩`.
    EnsembleAverage,
}

/// Ratio of the singular values of a 2×2 sample covariance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    /// `None` when the covariance is singular (σ_min = 0).
    pub condition_number: Option<f64>,
    pub sigma_max: f64,
    pub sigma_min: f64,
    pub pairs: usize,
}

impl ConditionReport {
    /// The condition number with `+∞` for a singular covariance.
    pub fn value(&self) -> f64 {
        self.condition_number.unwrap_or(f64::INFINITY)
    }
}

/// Condition number of the covariance of `(x(t), x(t + lag))`, `t = 1..=T - lag`.
pub fn condition_number(
    ensemble: &WalkEnsemble,
    lag: usize,
    pairing: Pairing,
) -> Result<ConditionReport> {
    if ensemble.is_empty() {
        return Err(Error::Analysis("empty walk ensemble".into()));
    }
    let horizon = ensemble.horizon();
    if lag >= horizon {
        return Err(Error::Analysis(format!(
            "lag {lag} must be below the horizon {horizon}"
        )));
    }
    let pairs: Vec<(f64, f64)> = match pairing {
        Pairing::Pooled => ensemble
            .walks
            .iter()
            .flat_map(|w| {
                (1..=horizon - lag)
                    .map(move |t| (w.positions[t] as f64, w.positions[t + lag] as f64))
            })
            .collect(),
        Pairing::EnsembleAverage => {
            let n = ensemble.len() as f64;
            let mean: Vec<f64> = (0..=horizon)
                .map(|t| {
                    ensemble
                        .walks
                        .iter()
                        .map(|w| w.positions[t] as f64)
                        .sum::<f64>()
                        / n
                })
                .collect();
            (1..=horizon - lag)
                .map(|t| (mean[t], mean[t + lag]))
                .collect()
        }
    };
    condition_number_of_pairs(&pairs)
}

/// Condition number of the sample covariance (1/(n−1) normalization) of
/// paired observations.
pub fn condition_number_of_pairs(pairs: &[(f64, f64)]) -> Result<ConditionReport> {
    if pairs.len() < 2 {
        return Err(Error::Analysis("need at least two pairs".into()));
    }
    let n = pairs.len() as f64;
    let m1 = pairs.iter().map(|p| p.0).sum::<f64>() / n;
    let m2 = pairs.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut s11, mut s12, mut s22) = (0.0, 0.0, 0.0);
    for &(a, b) in pairs {
        let (da, db) = (a - m1, b - m2);
        s11 += da * da;
        s12 += da * db;
        s22 += db * db;
    }
    let (s11, s12, s22) = (s11 / (n - 1.0), s12 / (n - 1.0), s22 / (n - 1.0));
    // Symmetric PSD: singular values are the eigenvalues.
    let half_trace = (s11 + s22) / 2.0;
    let radius = (((s11 - s22) / 2.0).powi(2) + s12 * s12).sqrt();
    let sigma_max = half_trace + radius;
    let sigma_min = (half_trace - radius).max(0.0);
    let singular = sigma_max == 0.0 || sigma_min <= sigma_max * 1e-12;
    Ok(ConditionReport {
        condition_number: (!singular).then(|| sigma_max / sigma_min),
        sigma_max,
        sigma_min: if singular { 0.0 } else { sigma_min },
        pairs: pairs.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::{generate, SourceKind, SourceSpec};

    fn series(samples: Vec<i16>) -> SignalSeries {
        SignalSeries::new(samples, 10.0, "test").unwrap()
    }

    #[test]
    fn acf_basics() {
        let s = series((0..1000).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect());
        let rho = autocorrelation(&s, 3).unwrap();
        assert_eq!(rho[0], 1.0);
        assert!((rho[1] + 1.0).abs() < 2e-3, "{}", rho[1]);
        assert!(rho.iter().all(|r| (-1.0..=1.0).contains(r)));
    }

    #[test]
    fn acf_errors() {
        assert!(autocorrelation(&series(vec![4; 10]), 2).is_err());
        assert!(autocorrelation(&series(vec![1, 2, 3]), 3).is_err());
    }

    #[test]
    fn acf_matches_ar1() {
        // Independent AR(1) simulation; ρ(ℓ) = φ^ℓ.
        let phi: f64 = 0.6;
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut x = 0.0;
        let values: Vec<f64> = (0..1_000_000)
            .map(|_| {
                let e: f64 = rng.sample(rand_distr::StandardNormal);
                x = phi * x + e;
                x
            })
            .collect();
        let rho = autocorrelation_of(&values, 5).unwrap();
        for (l, r) in rho.iter().enumerate() {
            assert!((r - phi.powi(l as i32)).abs() < 0.02, "lag {l}: {r}");
        }
    }

    #[test]
    fn spectrum_peak_of_single_tone() {
        let kind = SourceKind::QuasiperiodicSurrogate {
            frequencies_ghz: vec![12.5],
            dither: 0.0,
        };
        let s = generate(&SourceSpec::new(kind, 1, 4096)).unwrap();
        let spec = power_spectrum(
            &s,
            SpectrumOptions {
                smoothing_window: 1,
                segment_len: None,
            },
        )
        .unwrap();
        let peak = spec
            .iter()
            .max_by(|a, b| a.power_db.total_cmp(&b.power_db))
            .unwrap();
        let bin = 1000.0 / (4096.0 * 10.0);
        assert!((peak.freq_ghz - 12.5).abs() <= bin, "{}", peak.freq_ghz);
    }

    #[test]
    fn spectrum_length_and_errors() {
        let s = series((0..100).map(|i| (i % 7) as i16).collect());
        let spec = power_spectrum(&s, SpectrumOptions::default()).unwrap();
        assert_eq!(spec.len(), 51 - 20 + 1);
        let short = series(vec![1, 2, 3]);
        assert!(power_spectrum(&short, SpectrumOptions::default()).is_err());
    }

    #[test]
    fn walk_boundaries() {
        let top = vec![128i16; 10_000];
        let w = build_walk(&top, 10_000, 1, WalkRule::default()).unwrap();
        let drift = w.positions[10_000] as f64 / 10_000.0;
        let p: f64 = 255.0 / 256.0;
        let expected = 2.0 * p - 1.0;
        let sigma = 2.0 * (p * (1.0 - p) / 10_000.0).sqrt();
        assert!((drift - expected).abs() < 3.0 * sigma, "{drift}");

        let bottom = vec![-127i16; 500];
        let w = build_walk(&bottom, 500, 1, WalkRule::default()).unwrap();
        assert_eq!(w.positions[500], -500);
        assert!(w.positions.windows(2).all(|p| (p[1] - p[0]).abs() == 1));
        assert_eq!(w.positions[0], 0);

        assert!(build_walk(&bottom, 501, 1, WalkRule::default()).is_err());
    }

    #[test]
    fn etmsd_of_ballistic_walk() {
        let walk = Walk {
            positions: (0..=200).collect(),
        };
        let e = WalkEnsemble { walks: vec![walk] };
        let got = etmsd(&e, &[0, 1, 7, 50]).unwrap();
        assert_eq!(got, vec![0.0, 1.0, 49.0, 2500.0]);
        assert!(etmsd(&e, &[200]).is_err());
        assert!(etmsd(&WalkEnsemble { walks: vec![] }, &[1]).is_err());
    }

    #[test]
    fn condition_of_independent_and_identical_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pairs: Vec<(f64, f64)> = (0..10_000)
            .map(|_| (rng.random::<f64>(), rng.random::<f64>()))
            .collect();
        let c = condition_number_of_pairs(&pairs).unwrap().value();
        assert!((1.0..1.1).contains(&c), "{c}");

        let same: Vec<(f64, f64)> = (0..100).map(|i| (i as f64, i as f64)).collect();
        let r = condition_number_of_pairs(&same).unwrap();
        assert_eq!(r.condition_number, None);
        assert_eq!(r.value(), f64::INFINITY);

        assert!(condition_number_of_pairs(&[(1.0, 2.0)]).is_err());
    }

    #[test]
    fn ensemble_is_deterministic() {
        let s = generate(&SourceSpec::new(SourceKind::UniformPrng, 4, 20_000)).unwrap();
        let a = build_ensemble(&s, 4, 5000, 9, WalkRule::default()).unwrap();
        let b = build_ensemble(&s, 4, 5000, 9, WalkRule::default()).unwrap();
        assert_eq!(a, b);
        assert!(build_ensemble(&s, 5, 5000, 9, WalkRule::default()).is_err());
    }
}
