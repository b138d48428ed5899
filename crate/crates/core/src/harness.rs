//! Repeated play, correct-decision-ratio curves, parameter sweeps and the
//! scaling study.
//!
//! A repetition starts from a fresh tree (all thresholds 0), its own reward
//! stream and its own contiguous segment of the signal, and runs
//! decide → play → update for `plays` cycles. CDR(t) is the fraction of
//! repetitions whose decision at cycle `t` is the best machine. Repetitions
//! run in parallel; per-cycle counts are reduced as integers and all float
//! statistics are summed in repetition order, so results do not depend on the
//! thread count.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::env::{two_armed, type_problem, BanditProblem, ProblemSpec};
use crate::error::{Error, Result};
use crate::signal::{self, SignalSeries, SourceKind, SourceSpec};
use crate::tree::{DecisionRecord, SamplingPlan, ThresholdTree, TreeDump, TreeParams};

/// CDR level used for cycles-to-threshold readouts.
pub const TARGET_CDR: f64 = 0.95;

/// One experiment: a problem, a signal source and the play schedule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub problem: ProblemSpec,
    /// `length = 0` sizes generated sources to exactly what the run consumes.
    pub source: SourceSpec,
    #[serde(default)]
    pub plan: SamplingPlan,
    pub plays: usize,
    pub repetitions: usize,
    /// `K`: thresholds take `2^K + 1` levels.
    #[serde(default = "default_levels")]
    pub threshold_levels: u32,
    /// Δ, α and the Ω guards. `z` is derived from `threshold_levels`.
    #[serde(default)]
    pub params: TreeParams,
    /// Seed of the reward streams (one stream per repetition).
    #[serde(default)]
    pub seed: u64,
    /// Reuse the signal cyclically when it is shorter than the run needs.
    #[serde(default)]
    pub wrap: bool,
}

fn default_levels() -> u32 {
    8
}

impl ExperimentSpec {
    pub fn new(problem: ProblemSpec, source: SourceSpec, plays: usize, repetitions: usize) -> Self {
        Self {
            problem,
            source,
            plan: SamplingPlan::default(),
            plays,
            repetitions,
            threshold_levels: default_levels(),
            params: TreeParams::default(),
            seed: 0,
            wrap: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.plays == 0 {
            return Err(Error::InvalidExperiment("plays must be at least 1".into()));
        }
        if self.repetitions == 0 {
            return Err(Error::InvalidExperiment(
                "repetitions must be at least 1".into(),
            ));
        }
        self.plan.validate()?;
        self.tree_params()?.validate()
    }

    pub fn tree_params(&self) -> Result<TreeParams> {
        self.params.with_levels_exponent(self.threshold_levels)
    }

    /// Samples consumed by one repetition.
    pub fn segment_len(&self, depth: usize) -> usize {
        self.plays * self.plan.stride(depth)
    }

    /// Samples consumed by the whole run without wrap-around.
    pub fn required_samples(&self, depth: usize) -> usize {
        self.repetitions * self.segment_len(depth)
    }

    /// Build the signal, sizing generated sources automatically when
    /// `source.length` is 0.
    pub fn build_signal(&self, depth: usize) -> Result<SignalSeries> {
        let mut source = self.source.clone();
        if source.length == 0 && !matches!(source.kind, SourceKind::TraceFile { .. }) {
            source.length = self.required_samples(depth);
        }
        signal::generate(&source)
    }
}

/// Averaged outcome of an experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    /// CDR at cycles `1..=plays`.
    pub cdr: Vec<f64>,
    /// Repetitions choosing the best machine at each cycle.
    pub correct_counts: Vec<u64>,
    pub repetitions: usize,
    pub best_machine: usize,
    /// Plays per machine summed over all repetitions and cycles.
    pub selections: Vec<u64>,
    /// Root P̂ for bit 0 / bit 1 at the last cycle, averaged over repetitions.
    pub mean_root_estimates: [f64; 2],
    pub mean_root_omega: f64,
    pub mean_root_threshold: f64,
    /// Final tree of the first repetition.
    pub first_tree: TreeDump,
    /// The signal was reused cyclically.
    pub wrapped: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl ExperimentResult {
    /// CDR at a 1-based cycle.
    pub fn cdr_at(&self, cycle: usize) -> Option<f64> {
        cycle.checked_sub(1).and_then(|i| self.cdr.get(i)).copied()
    }

    /// First 1-based cycle whose CDR reaches `target`.
    pub fn cycles_to(&self, target: f64) -> Option<usize> {
        cycles_to_threshold(&self.cdr, target)
    }
}

/// First 1-based index with `curve[t - 1] ≥ target`; no smoothing.
pub fn cycles_to_threshold(curve: &[f64], target: f64) -> Option<usize> {
    curve.iter().position(|&c| c >= target).map(|i| i + 1)
}

/// Thread-pool control for [`run_experiment_with`].
#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
}

struct RepOutcome {
    correct: Vec<bool>,
    selections: Vec<u64>,
    root_estimates: [f64; 2],
    root_omega: f64,
    root_threshold: f64,
    tree: Option<TreeDump>,
}

/// Generate the signal, resolve the problem and run.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    run_experiment_with(spec, RunOptions::default())
}

pub fn run_experiment_with(spec: &ExperimentSpec, options: RunOptions) -> Result<ExperimentResult> {
    spec.validate()?;
    let problem = spec.problem.resolve()?;
    let series = spec.build_signal(problem.depth())?;
    run_on_series(spec, &problem, &series, options)
}

/// Run against an already-built problem and signal (`spec.problem` and
/// `spec.source` are ignored).
pub fn run_on_series(
    spec: &ExperimentSpec,
    problem: &BanditProblem,
    series: &SignalSeries,
    options: RunOptions,
) -> Result<ExperimentResult> {
    spec.validate()?;
    let started = Instant::now();
    let depth = problem.depth();
    let params = spec.tree_params()?;
    let segment = spec.segment_len(depth);
    let needed = spec.required_samples(depth);
    let wrapped = needed > series.len();
    if wrapped && !spec.wrap {
        return Err(Error::SeriesExhausted {
            needed,
            len: series.len(),
        });
    }
    let problem = problem.clone().with_seed(problem.seed() ^ spec.seed);

    let run_rep = |rep: usize| -> Result<RepOutcome> {
        run_repetition(spec, &problem, series, params, rep, rep * segment, wrapped)
    };
    let run_all = || -> Result<Vec<RepOutcome>> {
        (0..spec.repetitions).into_par_iter().map(run_rep).collect()
    };
    let outcomes = match options.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| Error::InvalidExperiment(format!("thread pool: {e}")))?
            .install(run_all),
        None => run_all(),
    }?;

    let reps = spec.repetitions as f64;
    let mut correct_counts = vec![0u64; spec.plays];
    let mut selections = vec![0u64; problem.arms()];
    let mut estimates = [0.0; 2];
    let (mut omega, mut threshold) = (0.0, 0.0);
    for o in &outcomes {
        for (count, &hit) in correct_counts.iter_mut().zip(&o.correct) {
            *count += u64::from(hit);
        }
        for (total, n) in selections.iter_mut().zip(&o.selections) {
            *total += n;
        }
        estimates[0] += o.root_estimates[0];
        estimates[1] += o.root_estimates[1];
        omega += o.root_omega;
        threshold += o.root_threshold;
    }
    let first_tree = outcomes
        .into_iter()
        .next()
        .and_then(|o| o.tree)
        .expect("at least one repetition");
    Ok(ExperimentResult {
        cdr: correct_counts.iter().map(|&c| c as f64 / reps).collect(),
        correct_counts,
        repetitions: spec.repetitions,
        best_machine: problem.best_machine(),
        selections,
        mean_root_estimates: [estimates[0] / reps, estimates[1] / reps],
        mean_root_omega: omega / reps,
        mean_root_threshold: threshold / reps,
        first_tree,
        wrapped,
        elapsed: started.elapsed(),
    })
}

fn run_repetition(
    spec: &ExperimentSpec,
    problem: &BanditProblem,
    series: &SignalSeries,
    params: TreeParams,
    rep: usize,
    offset: usize,
    wrapped: bool,
) -> Result<RepOutcome> {
    let depth = problem.depth();
    let mut tree = ThresholdTree::new(depth, params)?;
    let mut env = problem.environment_for_stream(rep as u64);
    let samples = series.samples();
    let stride = spec.plan.stride(depth);
    let best = problem.best_machine();
    let mut correct = Vec::with_capacity(spec.plays);
    let mut selections = vec![0u64; problem.arms()];
    let mut level_samples = vec![0i16; depth];

    for cycle in 0..spec.plays {
        let start = offset + cycle * stride;
        let mut record = if wrapped {
            let n = samples.len();
            let indices: Vec<usize> = (0..depth)
                .map(|k| (start + k * spec.plan.delta_l_samples) % n)
                .collect();
            for (slot, &i) in level_samples.iter_mut().zip(&indices) {
                *slot = samples[i];
            }
            let mut r = tree.decide_from_samples(&level_samples)?;
            r.sample_indices = indices;
            r
        } else {
            tree.decide(samples, start, &spec.plan)?
        };
        let won = env.play(record.machine)?;
        record.reward = Some(won);
        tree.update(&record)?;
        correct.push(record.machine == best);
        selections[record.machine] += 1;
    }

    let root = tree.root();
    Ok(RepOutcome {
        correct,
        selections,
        root_estimates: [
            root.estimated_reward_probability(0),
            root.estimated_reward_probability(1),
        ],
        root_omega: root.omega,
        root_threshold: root.th,
        tree: (rep == 0).then(|| tree.dump()),
    })
}

/// Drive a tree with externally chosen machines (bypassing the signal), e.g.
/// to study Ω under a fixed selection policy.
pub fn run_forced(
    tree: &mut ThresholdTree,
    problem: &BanditProblem,
    machines: impl IntoIterator<Item = usize>,
) -> Result<()> {
    let mut env = problem.environment();
    for machine in machines {
        let mut record = DecisionRecord::for_machine(machine, tree.depth())?;
        record.reward = Some(env.play(machine)?);
        tree.update(&record)?;
    }
    Ok(())
}

/// One row of a sweep table: `param,value,cdr`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub param: String,
    pub value: f64,
    pub cdr: f64,
}

fn with_plays_for(spec: &ExperimentSpec, cycle: usize) -> Result<ExperimentSpec> {
    if cycle == 0 {
        return Err(Error::InvalidExperiment("readout cycle must be ≥ 1".into()));
    }
    let mut s = spec.clone();
    s.plays = cycle;
    Ok(s)
}

/// CDR at `cycle` for each inter-decision interval Δ_s.
pub fn sweep_inter_decision(
    spec: &ExperimentSpec,
    ds_values: &[usize],
    cycle: usize,
    options: RunOptions,
) -> Result<Vec<SweepPoint>> {
    let base = with_plays_for(spec, cycle)?;
    ds_values
        .iter()
        .map(|&ds| {
            let mut s = base.clone();
            s.plan = SamplingPlan::new(ds, s.plan.delta_l_samples)?;
            let r = run_experiment_with(&s, options)?;
            Ok(SweepPoint {
                param: "delta_s".into(),
                value: ds as f64,
                cdr: r.cdr[cycle - 1],
            })
        })
        .collect()
}

/// Population standard deviation over mean; `None` when the mean is 0.
pub fn coefficient_of_variation(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if mean == 0.0 {
        return None;
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    Some(var.sqrt() / mean)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterBitRow {
    pub problem_type: u8,
    pub delta_l: usize,
    pub cdr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterBitSweep {
    pub rows: Vec<InterBitRow>,
    /// `(Δ_L, CV)` of the per-type CDRs; CV is `None` when every CDR is 0.
    pub cv: Vec<(usize, Option<f64>)>,
}

impl InterBitSweep {
    pub fn cdr(&self, problem_type: u8, delta_l: usize) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.problem_type == problem_type && r.delta_l == delta_l)
            .map(|r| r.cdr)
    }
}

/// CDR at `cycle` for every (four-armed type, Δ_L) pair, plus the CV across
/// types at each Δ_L. `spec.problem` is replaced by each type in turn.
pub fn sweep_inter_bit(
    spec: &ExperimentSpec,
    dl_values: &[usize],
    types: &[u8],
    cycle: usize,
    options: RunOptions,
) -> Result<InterBitSweep> {
    let base = with_plays_for(spec, cycle)?;
    for &t in types {
        type_problem(t)?;
    }
    let mut rows = Vec::with_capacity(dl_values.len() * types.len());
    let mut cv = Vec::with_capacity(dl_values.len());
    for &dl in dl_values {
        let mut cdrs = Vec::with_capacity(types.len());
        for &t in types {
            let mut s = base.clone();
            s.problem = ProblemSpec::Type(t);
            s.plan = SamplingPlan::new(s.plan.delta_s_samples, dl)?;
            let cdr = run_experiment_with(&s, options)?.cdr[cycle - 1];
            cdrs.push(cdr);
            rows.push(InterBitRow {
                problem_type: t,
                delta_l: dl,
                cdr,
            });
        }
        cv.push((dl, coefficient_of_variation(&cdrs)));
    }
    Ok(InterBitSweep { rows, cv })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelsRow {
    /// Reward probability of the worse machine (the better one pays 0.9).
    pub p1: f64,
    pub k: u32,
    pub cdr: f64,
}

/// CDR at `cycle` for each threshold-level exponent K on two-armed problems
/// `(0.9, p1)`.
pub fn sweep_threshold_levels(
    spec: &ExperimentSpec,
    k_values: &[u32],
    p1_values: &[f64],
    cycle: usize,
    options: RunOptions,
) -> Result<Vec<LevelsRow>> {
    let base = with_plays_for(spec, cycle)?;
    let mut rows = Vec::new();
    for &p1 in p1_values {
        two_armed(p1)?;
        for &k in k_values {
            let mut s = base.clone();
            s.problem = ProblemSpec::TwoArmed(p1);
            s.threshold_levels = k;
            let cdr = run_experiment_with(&s, options)?.cdr[cycle - 1];
            rows.push(LevelsRow { p1, k, cdr });
        }
    }
    Ok(rows)
}

/// Plays and repetitions per arm count used for the reference multi-armed runs.
pub fn reference_schedule(arms: usize) -> Option<(usize, usize)> {
    match arms {
        2 => Some((500, 10_000)),
        4 => Some((1000, 1000)),
        8 | 16 | 32 => Some((5000, 100)),
        64 => Some((10_000, 100)),
        _ => None,
    }
}

/// `cycles ≈ a · N^b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub a: f64,
    pub b: f64,
    /// `ln(cycles) - (ln a + b ln N)` per fitted point.
    pub residuals: Vec<f64>,
}

/// Least squares on `ln y = ln a + b ln x`. Needs two distinct `x`.
pub fn fit_power_law(points: &[(f64, f64)]) -> Option<PowerLawFit> {
    if points.len() < 2 || points.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0)) {
        return None;
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let b = sxy / sxx;
    let ln_a = my - b * mx;
    Some(PowerLawFit {
        a: ln_a.exp(),
        b,
        residuals: logs.iter().map(|&(lx, ly)| ly - (ln_a + b * lx)).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingPoint {
    pub arms: usize,
    pub plays: usize,
    pub repetitions: usize,
    /// First cycle with CDR ≥ 0.95; `None` if never reached.
    pub cycles: Option<usize>,
    pub final_cdr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingReport {
    pub points: Vec<ScalingPoint>,
    /// Power-law fit over the reached points; `None` with fewer than two.
    pub fit: Option<PowerLawFit>,
}

/// Cycles-to-0.95 on the canonical problem for each arm count, then the
/// power-law fit. `schedule(n)` gives `(plays, repetitions)` per arm count.
pub fn scaling_study(
    template: &ExperimentSpec,
    arm_counts: &[usize],
    schedule: impl Fn(usize) -> (usize, usize),
    options: RunOptions,
) -> Result<ScalingReport> {
    let mut points = Vec::with_capacity(arm_counts.len());
    for &n in arm_counts {
        let (plays, repetitions) = schedule(n);
        let mut s = template.clone();
        s.problem = ProblemSpec::Canonical(n);
        s.plays = plays;
        s.repetitions = repetitions;
        let r = run_experiment_with(&s, options)?;
        points.push(ScalingPoint {
            arms: n,
            plays,
            repetitions,
            cycles: r.cycles_to(TARGET_CDR),
            final_cdr: *r.cdr.last().expect("plays ≥ 1"),
        });
    }
    let reached: Vec<(f64, f64)> = points
        .iter()
        .filter_map(|p| p.cycles.map(|c| (p.arms as f64, c as f64)))
        .collect();
    Ok(ScalingReport {
        fit: fit_power_law(&reached),
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform(seed: u64) -> SourceSpec {
        SourceSpec::new(SourceKind::UniformPrng, seed, 0)
    }

    #[test]
    fn deterministic_rewards_follow_exact_threshold_path() {
        // With P = (1, 0) every play moves TH by +1, so TH after t plays is
        // (1 - 0.99^t) / 0.01 and P(D = 0) is a count over the alphabet.
        let reps = 4000;
        let spec = ExperimentSpec::new(ProblemSpec::TwoArmed(0.0), uniform(1), 100, reps);
        let problem = BanditProblem::new(vec![1.0, 0.0], 0).unwrap();
        let series = spec.build_signal(1).unwrap();
        let r = run_on_series(&spec, &problem, &series, RunOptions::default()).unwrap();
        let tree = ThresholdTree::new(1, TreeParams::default()).unwrap();
        for cycle in [1, 10, 50, 100] {
            let th = (1.0 - 0.99f64.powi(cycle as i32 - 1)) / 0.01;
            let t = tree.quantize_threshold(th);
            let p = (t + 128.0) / 256.0;
            let sigma = (p * (1.0 - p) / reps as f64).sqrt().max(1e-3);
            let got = r.cdr_at(cycle).unwrap();
            assert!((got - p).abs() < 4.0 * sigma, "cycle {cycle}: {got} vs {p}");
        }
    }

    #[test]
    fn first_cycle_is_a_coin_flip() {
        let spec = ExperimentSpec::new(ProblemSpec::Canonical(2), uniform(2), 1, 10_000);
        let r = run_experiment(&spec).unwrap();
        let sigma = (0.25f64 / 10_000.0).sqrt();
        assert!((r.cdr[0] - 0.5).abs() < 3.0 * sigma, "{}", r.cdr[0]);
    }

    #[test]
    fn first_cycle_is_one_over_n() {
        let mut spec = ExperimentSpec::new(ProblemSpec::Canonical(8), uniform(3), 1, 20_000);
        spec.plan = SamplingPlan::new(5, 10).unwrap();
        let r = run_experiment(&spec).unwrap();
        let p: f64 = 1.0 / 8.0;
        let sigma = (p * (1.0 - p) / 20_000.0).sqrt();
        assert!((r.cdr[0] - p).abs() < 3.0 * sigma, "{}", r.cdr[0]);
    }

    #[test]
    fn curve_shape_and_counts() {
        let spec = ExperimentSpec::new(ProblemSpec::Canonical(4), uniform(4), 50, 40);
        let r = run_experiment(&spec).unwrap();
        assert_eq!(r.cdr.len(), 50);
        assert!(r.cdr.iter().all(|c| (0.0..=1.0).contains(c)));
        assert_eq!(r.selections.iter().sum::<u64>(), 50 * 40);
        let root = &r.first_tree.nodes[""];
        assert_eq!(root.c0 + root.c1, 50);
        assert!(!r.wrapped);
    }

    #[test]
    fn thread_count_does_not_change_result() {
        let spec = ExperimentSpec::new(ProblemSpec::Canonical(4), uniform(5), 80, 64);
        let one = run_experiment_with(&spec, RunOptions { jobs: Some(1) }).unwrap();
        let four = run_experiment_with(&spec, RunOptions { jobs: Some(4) }).unwrap();
        assert_eq!(
            serde_json::to_string(&one).unwrap(),
            serde_json::to_string(&four).unwrap()
        );
    }

    #[test]
    fn short_signal_needs_wrap() {
        let mut spec = ExperimentSpec::new(
            ProblemSpec::Canonical(2),
            SourceSpec::new(SourceKind::UniformPrng, 6, 1000),
            100,
            10,
        );
        assert!(matches!(
            run_experiment(&spec),
            Err(Error::SeriesExhausted {
                needed: 5000,
                len: 1000
            })
        ));
        spec.wrap = true;
        let r = run_experiment(&spec).unwrap();
        assert!(r.wrapped);
        assert_eq!(r.cdr.len(), 100);
    }

    #[test]
    fn invalid_specs() {
        let mut spec = ExperimentSpec::new(ProblemSpec::Canonical(2), uniform(0), 0, 1);
        assert!(run_experiment(&spec).is_err());
        spec.plays = 1;
        spec.threshold_levels = 9;
        assert!(run_experiment(&spec).is_err());
    }

    #[test]
    fn single_value_sweep_matches_direct_run() {
        let spec = ExperimentSpec::new(ProblemSpec::TwoArmed(0.5), uniform(7), 20, 300);
        let sweep = sweep_inter_decision(&spec, &[5], 20, RunOptions::default()).unwrap();
        assert_eq!(sweep.len(), 1);
        let direct = run_experiment(&spec).unwrap();
        assert_eq!(sweep[0].cdr, direct.cdr[19]);
    }

    #[test]
    fn cv_examples() {
        assert_eq!(coefficient_of_variation(&[0.4; 4]), Some(0.0));
        assert_eq!(coefficient_of_variation(&[0.0, 1.0, 0.0, 1.0]), Some(1.0));
        assert_eq!(coefficient_of_variation(&[0.0; 4]), None);
    }

    #[test]
    fn power_law_fits() {
        let pts: Vec<(f64, f64)> = [2.0, 4.0, 8.0, 16.0]
            .iter()
            .map(|&n: &f64| (n, 55.0 * n.powf(1.16)))
            .collect();
        let fit = fit_power_law(&pts).unwrap();
        assert!((fit.a - 55.0).abs() < 1e-9 && (fit.b - 1.16).abs() < 1e-9);

        let two = fit_power_law(&[(2.0, 110.0), (4.0, 246.0)]).unwrap();
        assert!((two.b - (246.0f64 / 110.0).log2()).abs() < 1e-12);
        assert!((two.b - 1.161).abs() < 1e-3);

        assert!(fit_power_law(&[(2.0, 10.0)]).is_none());
        assert!(fit_power_law(&[(2.0, 10.0), (2.0, 12.0)]).is_none());
    }

    #[test]
    fn cycles_to_threshold_readout() {
        assert_eq!(cycles_to_threshold(&[0.5, 0.96, 0.94, 0.97], 0.95), Some(2));
        assert_eq!(cycles_to_threshold(&[0.5, 0.6], 0.95), None);
    }

    #[test]
    fn reference_schedule_values() {
        assert_eq!(reference_schedule(2), Some((500, 10_000)));
        assert_eq!(reference_schedule(64), Some((10_000, 100)));
        assert_eq!(reference_schedule(3), None);
    }
}
