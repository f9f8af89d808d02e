//! Trajectory execution: a single instrumented run, and sweeps dispatched
//! over a bounded worker pool with deterministic result ordering.

use crate::config::RunConfigFile;
use crate::error::CliError;
use crate::report::{BoundReport, RunSummary};
use mkse_core::dynamics::{integrate, SolverConfig};
use mkse_core::observables::{crest_time_average, record, tail_stats, ObservableSeries, TailStatistics};
use rayon::prelude::*;

/// Everything one trajectory produces.
pub struct RunOutcome {
    pub config: SolverConfig,
    pub series: ObservableSeries,
    pub tail: TailStatistics,
    pub crest_avg: f64,
    pub report: BoundReport,
}

/// Integrate one trajectory, recording observables at every sample time.
pub fn execute_run(cfg: &SolverConfig) -> Result<RunOutcome, CliError> {
    let mut series = ObservableSeries::new();
    integrate(cfg, |t, u_hat| {
        series.push(record(u_hat, t));
    })?;
    let tail = tail_stats(&series, cfg.transient)?;
    let crest_avg = crest_time_average(&series, cfg.transient)?;
    let report = BoundReport::build(
        cfg.grid.dim(),
        cfg.lambda,
        cfg.grid.length(),
        cfg.seed,
        cfg.transient,
        &tail,
        crest_avg,
    );
    Ok(RunOutcome {
        config: cfg.clone(),
        series,
        tail,
        crest_avg,
        report,
    })
}

fn summarize(value: f64, seed: u64, outcome: &RunOutcome) -> RunSummary {
    let is_2d = outcome.config.grid.dim() == mkse_core::Dim::Two;
    RunSummary {
        value,
        seed,
        j0_tail_max: outcome.tail.j[0].limsup_estimate,
        j1_tail_max: outcome.tail.j[1].limsup_estimate,
        j2_tail_max: is_2d.then(|| outcome.tail.j[2].limsup_estimate),
        sup_tail_max: outcome.tail.sup_norm.limsup_estimate,
        crest_time_avg: outcome.crest_avg,
    }
}

/// Execute every `(value, seed)` pair of the sweep in parallel and return
/// the summaries in deterministic `(value index, seed index)` order along
/// with each run's bound report.
pub fn execute_sweep(
    cfg: &RunConfigFile,
    workers: Option<usize>,
) -> Result<Vec<(RunSummary, BoundReport)>, CliError> {
    let sweep = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::Config("sweep: section is required for `sweep`".to_string()))?;
    let parameter = sweep.parameter.clone();

    let mut tasks = Vec::new();
    for &value in &sweep.values {
        for &seed in &sweep.seeds {
            tasks.push((value, seed));
        }
    }

    let run_one = |&(value, seed): &(f64, u64)| -> Result<(RunSummary, BoundReport), CliError> {
        let solver = cfg.solver_config(Some((parameter.as_str(), value)), Some(seed))?;
        solver.validate().map_err(CliError::from)?;
        let outcome = execute_run(&solver).map_err(|e| match e {
            CliError::BlowUp { t, detail } => CliError::BlowUp {
                t,
                detail: format!("{parameter} = {value}, seed = {seed}: {detail}"),
            },
            other => other,
        })?;
        Ok((summarize(value, seed, &outcome), outcome.report))
    };

    let results: Vec<Result<_, CliError>> = match workers {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| CliError::Io(e.to_string()))?;
            pool.install(|| tasks.par_iter().map(run_one).collect())
        }
        None => tasks.par_iter().map(run_one).collect(),
    };

    // Results arrive in task order because collect preserves indices.
    results.into_iter().collect()
}
