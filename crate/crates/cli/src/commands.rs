use std::path::Path;

use anyhow::{Context, Result};
use chaosbandit::analysis::{
    autocorrelation, build_ensemble, condition_number, etmsd, power_spectrum, Pairing,
    SpectrumOptions, WalkRule,
};
use chaosbandit::env::ProblemSpec;
use chaosbandit::harness::{
    run_experiment_with, scaling_study, sweep_inter_bit, sweep_inter_decision,
    sweep_threshold_levels, reference_schedule, RunOptions, TARGET_CDR,
};
use chaosbandit::report;
use chaosbandit::signal::{generate, trace_csv, write_trace_binary};
use serde_json::{json, Value};

use crate::args::{
    AcfArgs, ConditionArgs, GenSignalArgs, OutputFormat, PairingName, RunArgs, ScalingArgs,
    SpectrumArgs, SweepDlArgs, SweepDsArgs, SweepLevelsArgs, WalkArgs,
};
use crate::config::{self, Common};

fn write(c: &Common, name: &str, contents: &[u8]) -> Result<()> {
    std::fs::create_dir_all(&c.out_dir)
        .with_context(|| format!("creating {}", c.out_dir.display()))?;
    report::write_atomic(&c.out_dir.join(name), contents)?;
    Ok(())
}

fn options(c: &Common) -> RunOptions {
    RunOptions { jobs: c.jobs }
}

fn cycles_text(cycles: Option<usize>) -> String {
    cycles.map_or_else(|| "never".into(), |c| c.to_string())
}

pub fn run(args: &RunArgs) -> Result<String> {
    let c = config::common(&args.common)?;
    let spec = config::experiment(
        &args.experiment,
        &args.source,
        &c,
        ProblemSpec::Canonical(2),
        500,
        1000,
    )?;
    let r = run_experiment_with(&spec, options(&c))?;
    let cfg = json!({"command": "run", "experiment": spec});
    write(&c, "cdr.csv", report::cdr_csv(&cfg, &r).as_bytes())?;
    write(
        &c,
        "tree_dump.json",
        report::json_with_config(&cfg, &r.first_tree)?.as_bytes(),
    )?;
    Ok(format!(
        "run: final CDR {:.4} at cycle {}, cycles to {TARGET_CDR}: {}{}",
        r.cdr.last().copied().unwrap_or(0.0),
        spec.plays,
        cycles_text(r.cycles_to(TARGET_CDR)),
        if r.wrapped { " (signal wrapped)" } else { "" },
    ))
}

pub fn sweep_ds(args: &SweepDsArgs) -> Result<String> {
    let c = config::common(&args.common)?;
    let cycle = c.file.pick(&args.cycle, "cycle", 100)?;
    let values = c.file.pick(&args.values, "values", (1..=10).collect())?;
    let spec = config::experiment(
        &args.experiment,
        &args.source,
        &c,
        ProblemSpec::Probabilities(vec![0.1, 0.5]),
        cycle,
        10_000,
    )?;
    let points = sweep_inter_decision(&spec, &values, cycle, options(&c))?;
    let cfg = json!({"command": "sweep-ds", "experiment": spec, "values": values, "cycle": cycle});
    write(
        &c,
        "sweep_ds.csv",
        report::sweep_csv(&cfg, &points).as_bytes(),
    )?;
    let best = points.iter().max_by(|a, b| a.cdr.total_cmp(&b.cdr));
    Ok(format!(
        "sweep-ds: {} points, best delta_s {} with CDR@{cycle} {:.4}",
        points.len(),
        best.map_or(0.0, |p| p.value),
        best.map_or(0.0, |p| p.cdr),
    ))
}

pub fn sweep_dl(args: &SweepDlArgs) -> Result<String> {
    let c = config::common(&args.common)?;
    let cycle = c.file.pick(&args.cycle, "cycle", 100)?;
    let values = c.file.pick(&args.values, "values", (0..=10).collect())?;
    let types = c.file.pick(&args.types, "types", vec![1, 2, 3, 4])?;
    let spec = config::experiment(
        &args.experiment,
        &args.source,
        &c,
        ProblemSpec::Type(1),
        cycle,
        1000,
    )?;
    let sweep = sweep_inter_bit(&spec, &values, &types, cycle, options(&c))?;
    let cfg = json!({"command": "sweep-dl", "experiment": spec, "values": values, "types": types, "cycle": cycle});
    write(
        &c,
        "sweep_dl.csv",
        report::inter_bit_csv(&cfg, &sweep).as_bytes(),
    )?;
    let min_cv = sweep
        .cv
        .iter()
        .filter_map(|&(dl, cv)| cv.map(|v| (dl, v)))
        .min_by(|a, b| a.1.total_cmp(&b.1));
    Ok(match min_cv {
        Some((dl, cv)) => format!(
            "sweep-dl: {} rows, lowest CV {cv:.4} at delta_l {dl}",
            sweep.rows.len()
        ),
        None => format!("sweep-dl: {} rows", sweep.rows.len()),
    })
}

pub fn sweep_levels(args: &SweepLevelsArgs) -> Result<String> {
    let c = config::common(&args.common)?;
    let cycle = c.file.pick(&args.cycle, "cycle", 200)?;
    let ks = c.file.pick(&args.k, "k", (1..=8).collect())?;
    let p1s = c.file.pick(&args.p1, "p1", vec![0.5, 0.7])?;
    let spec = config::experiment(
        &args.experiment,
        &args.source,
        &c,
        ProblemSpec::TwoArmed(0.7),
        cycle,
        2000,
    )?;
    let rows = sweep_threshold_levels(&spec, &ks, &p1s, cycle, options(&c))?;
    let cfg =
        json!({"command": "sweep-levels", "experiment": spec, "k": ks, "p1": p1s, "cycle": cycle});
    write(
        &c,
        "sweep_levels.csv",
        report::levels_csv(&cfg, &rows).as_bytes(),
    )?;
    Ok(format!(
        "sweep-levels: {} rows at cycle {cycle}",
        rows.len()
    ))
}

pub fn scaling(args: &ScalingArgs) -> Result<String> {
    let c = config::common(&args.common)?;
    let arms = c.file.pick(&args.n, "n", vec![2, 4, 8, 16])?;
    let plays = c.file.pick_opt(&args.experiment.plays, "plays")?;
    let reps = c.file.pick_opt(&args.experiment.reps, "reps")?;
    for &n in &arms {
        if reference_schedule(n).is_none() && (plays.is_none() || reps.is_none()) {
            anyhow::bail!("no reference schedule for {n} arms; pass --plays and --reps");
        }
    }
    let template = config::experiment(
        &args.experiment,
        &args.source,
        &c,
        ProblemSpec::Canonical(2),
        1,
        1,
    )?;
    let schedule = |n: usize| {
        let (p, r) = reference_schedule(n).unwrap_or((1, 1));
        (
            plays.map_or(p, |v| v as usize),
            reps.map_or(r, |v| v as usize),
        )
    };
    let report_ = scaling_study(&template, &arms, schedule, options(&c))?;
    let sched: Vec<Value> = arms.iter().map(|&n| json!(schedule(n))).collect();
    let cfg = json!({"command": "scaling", "template": template, "n": arms, "schedule": sched});
    write(&c, "fit.json", report::fit_json(&cfg, &report_)?.as_bytes())?;
    let cycles: Vec<String> = report_
        .points
        .iter()
        .map(|p| cycles_text(p.cycles))
        .collect();
    Ok(match &report_.fit {
        Some(f) => format!(
            "scaling: cycles to {TARGET_CDR} [{}], a = {:.3}, b = {:.4}",
            cycles.join(", "),
            f.a,
            f.b
        ),
        None => format!(
            "scaling: cycles to {TARGET_CDR} [{}], too few points to fit",
            cycles.join(", ")
        ),
    })
}

pub fn acf(args: &AcfArgs) -> Result<String> {
    let c = config::common(&args.common)?;
    let source = config::source(&args.source, &c, 1_000_000)?;
    let max_lag = c.file.pick(&args.max_lag, "max-lag", 20)?;
    let series = generate(&source)?;
    let acf = autocorrelation(&series, max_lag)?;
    let cfg = json!({"command": "analyze acf", "source": source, "max-lag": max_lag});
    write(&c, "acf.csv", report::acf_csv(&cfg, &acf).as_bytes())?;
    let (lag, min) = acf
        .iter()
        .enumerate()
        .skip(1)
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map_or((0, 1.0), |(l, &v)| (l, v));
    Ok(format!("acf: minimum {min:.4} at lag {lag}"))
}

pub fn spectrum(args: &SpectrumArgs) -> Result<String> {
    let c = config::common(&args.common)?;
    let source = config::source(&args.source, &c, 1_000_000)?;
    let opts = SpectrumOptions {
        smoothing_window: c.file.pick(&args.window, "window", 20)?,
        segment_len: c.file.pick_opt(&args.segment, "segment")?,
    };
    let series = generate(&source)?;
    let points = power_spectrum(&series, opts)?;
    let cfg = json!({"command": "analyze spectrum", "source": source, "options": opts});
    write(
        &c,
        "spectrum.csv",
        report::spectrum_csv(&cfg, &points).as_bytes(),
    )?;
    let peak = points
        .iter()
        .max_by(|a, b| a.power_db.total_cmp(&b.power_db));
    Ok(format!(
        "spectrum: {} points, peak {:.3} GHz",
        points.len(),
        peak.map_or(0.0, |p| p.freq_ghz)
    ))
}

fn walk_source(
    args: &crate::args::SourceArgs,
    c: &Common,
    walks: usize,
    horizon: usize,
) -> Result<chaosbandit::signal::SourceSpec> {
    config::source(args, c, walks * horizon)
}

pub fn etmsd_cmd(args: &WalkArgs) -> Result<String> {
    let c = config::common(&args.common)?;
    let walks = c.file.pick(&args.walks, "walks", 100)?;
    let horizon = c.file.pick(&args.horizon, "horizon", 100_000)?;
    let taus = c.file.pick(&args.tau, "tau", vec![1, 10, 100, 1000])?;
    let source = walk_source(&args.source, &c, walks, horizon)?;
    let series = generate(&source)?;
    let ens = build_ensemble(&series, walks, horizon, c.seed, WalkRule::default())?;
    let values = etmsd(&ens, &taus)?;
    let cfg = json!({"command": "analyze etmsd", "source": source, "walks": walks, "horizon": horizon, "tau": taus});
    write(
        &c,
        "etmsd.csv",
        report::etmsd_csv(&cfg, &taus, &values).as_bytes(),
    )?;
    let last = taus.iter().zip(&values).next_back();
    Ok(match last {
        Some((tau, v)) => format!("etmsd: ETMSD({tau}) = {v:.2} over {walks} walks"),
        None => "etmsd: no lags requested".into(),
    })
}

pub fn condition(args: &ConditionArgs) -> Result<String> {
    let c = config::common(&args.common)?;
    let walks = c.file.pick(&args.walks, "walks", 100)?;
    let horizon = c.file.pick(&args.horizon, "horizon", 100_000)?;
    let lag = c.file.pick(&args.lag, "lag", 10_000)?;
    let pairing_name = match args.pairing {
        Some(p) => p,
        None => match c.file.get::<String>("pairing")?.as_deref() {
            Some("ensemble") => PairingName::Ensemble,
            Some("pooled") | None => PairingName::Pooled,
            Some(other) => anyhow::bail!("config: bad value for \"pairing\": {other:?}"),
        },
    };
    let pairing = match pairing_name {
        PairingName::Pooled => Pairing::Pooled,
        PairingName::Ensemble => Pairing::EnsembleAverage,
    };
    let source = walk_source(&args.source, &c, walks, horizon)?;
    let series = generate(&source)?;
    let ens = build_ensemble(&series, walks, horizon, c.seed, WalkRule::default())?;
    let rep = condition_number(&ens, lag, pairing)?;
    let cfg = json!({"command": "analyze condition", "source": source, "walks": walks, "horizon": horizon, "lag": lag, "pairing": format!("{pairing:?}")});
    write(
        &c,
        "condition.json",
        report::json_with_config(&cfg, &rep)?.as_bytes(),
    )?;
    Ok(match rep.condition_number {
        Some(v) => format!("condition: {v:.4} over {} pairs", rep.pairs),
        None => format!("condition: singular covariance over {} pairs", rep.pairs),
    })
}

pub fn gen_signal(args: &GenSignalArgs) -> Result<String> {
    let c = config::common(&args.common)?;
    let source = config::source(&args.source, &c, 1_000_000)?;
    let format = match args.format {
        Some(f) => f,
        None => match c.file.get::<String>("format")?.as_deref() {
            Some("binary") => OutputFormat::Binary,
            Some("csv") | None => OutputFormat::Csv,
            Some(other) => anyhow::bail!("config: bad value for \"format\": {other:?}"),
        },
    };
    let series = generate(&source)?;
    let cfg = json!({"command": "gen-signal", "source": source});
    let name = match format {
        OutputFormat::Csv => {
            let text = trace_csv(&series, &[format!("config: {cfg}")]);
            write(&c, "signal.csv", text.as_bytes())?;
            "signal.csv"
        }
        OutputFormat::Binary => {
            std::fs::create_dir_all(&c.out_dir)?;
            let tmp = tempfile::NamedTempFile::new_in(&c.out_dir)?;
            write_trace_binary(&series, tmp.path())?;
            tmp.persist(c.out_dir.join("signal.bin"))
                .map_err(|e| e.error)?;
            "signal.bin"
        }
    };
    Ok(format!(
        "gen-signal: {} samples to {}",
        series.len(),
        Path::new(&c.out_dir).join(name).display()
    ))
}
