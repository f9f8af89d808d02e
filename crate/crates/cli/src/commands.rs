//! Implementations of the four CLI verbs.

use crate::config::{RunConfigFile, SCHEMA_VERSION};
use crate::error::CliError;
use crate::output::{self, BoundReportDoc, RunMeta, SlackSummaryDoc, SlackSummaryEntry, SweepSummaryDoc};
use crate::report::{aggregate, FitReport, RunSummary, SweepAggregate};
use crate::runner::{execute_run, execute_sweep};
use crate::svg::{self, Series};
use mkse_core::bounds::{bound_set, BoundSet};
use mkse_core::inequality::{check_names, minimize_slack, run_named_check, InequalityCheck};
use mkse_core::observables::fit_power_law;
use mkse_core::Dim;
use rayon::prelude::*;
use std::path::{Path, PathBuf};
use std::time::Instant;

pub struct CommonArgs {
    pub out: Option<PathBuf>,
    pub formats: Vec<String>,
    pub workers: Option<usize>,
}

fn resolve_output(cfg: &RunConfigFile, common: &CommonArgs) -> (PathBuf, Vec<String>) {
    let dir = common
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(&cfg.output.directory));
    let formats = if common.formats.is_empty() {
        cfg.output.formats.clone()
    } else {
        common.formats.clone()
    };
    (dir, formats)
}

fn wants(formats: &[String], format: &str) -> bool {
    formats.iter().any(|f| f == format)
}

/// `mkse run`: one trajectory, time-series CSV, metadata and bound report.
pub fn cmd_run(config_path: &Path, common: &CommonArgs) -> Result<(), CliError> {
    let cfg = RunConfigFile::load(config_path)?;
    let (dir, formats) = resolve_output(&cfg, common);
    let start = Instant::now();

    let solver = cfg.solver_config(None, None)?;
    let outcome = execute_run(&solver)?;

    output::write_text(&dir.join("timeseries.csv"), &output::timeseries_csv(&outcome.series))?;
    output::write_json(
        &dir.join("bound_report.json"),
        &BoundReportDoc {
            schema_version: SCHEMA_VERSION,
            config: &cfg,
            report: &outcome.report,
        },
    )?;
    if wants(&formats, "csv") {
        output::write_text(
            &dir.join("bound_report.csv"),
            &output::bound_report_csv(&outcome.report),
        )?;
    }
    if wants(&formats, "svg") {
        let j0: Vec<(f64, f64)> = outcome.series.rows().iter().map(|r| (r.t, r.j[0])).collect();
        let crest: Vec<(f64, f64)> = outcome.series.rows().iter().map(|r| (r.t, r.crest)).collect();
        let plot = svg::linear_plot(
            &[
                Series {
                    label: "J0".to_string(),
                    points: j0,
                    color: svg::PALETTE[0],
                    dashed: false,
                },
                Series {
                    label: "crest".to_string(),
                    points: crest,
                    color: svg::PALETTE[1],
                    dashed: false,
                },
            ],
            "trajectory observables",
            "t",
            "value",
        );
        output::write_text(&dir.join("timeseries.svg"), &plot)?;
    }
    output::write_json(
        &dir.join("run_meta.json"),
        &RunMeta::new(&cfg, start.elapsed().as_secs_f64()),
    )?;

    if let Some(failure) = outcome.report.first_failure() {
        return Err(CliError::BoundViolation(format!(
            "{} at lambda = {}, seed = {}: observed {} > bound {}",
            failure.name, outcome.report.lambda, outcome.report.seed, failure.observed, failure.bound
        )));
    }
    println!(
        "run complete: lambda = {}, {} samples, artifacts in {}",
        solver.lambda,
        outcome.series.rows().len(),
        dir.display()
    );
    Ok(())
}

fn crest_fits(parameter: &str, aggregates: &[SweepAggregate]) -> Vec<FitReport> {
    let mut fits = Vec::new();
    let xs: Vec<f64> = aggregates.iter().map(|a| a.value).collect();
    let empirical: Vec<f64> = aggregates.iter().map(|a| a.crest_time_avg_max - 1.0).collect();
    if let Ok(fit) = fit_power_law(&xs, &empirical) {
        fits.push(FitReport {
            quantity: format!("crest_time_avg_max - 1 vs {parameter}"),
            exponent: fit.exponent,
            prefactor: fit.prefactor,
            r_squared: fit.r_squared,
        });
    }
    let bound: Vec<f64> = aggregates.iter().map(|a| a.crest_bound - 1.0).collect();
    if let Ok(fit) = fit_power_law(&xs, &bound) {
        fits.push(FitReport {
            quantity: format!("crest_avg_bound - 1 vs {parameter}"),
            exponent: fit.exponent,
            prefactor: fit.prefactor,
            r_squared: fit.r_squared,
        });
    }
    fits
}

fn bound_sets_for(cfg: &RunConfigFile, parameter: &str, values: &[f64]) -> Result<Vec<BoundSet>, CliError> {
    let dim = cfg.grid()?.dim();
    values
        .iter()
        .map(|&v| {
            let (lambda, length) = match parameter {
                "lambda" => (v, cfg.grid.length),
                _ => (cfg.dynamics.lambda, v),
            };
            bound_set(dim, lambda, length).map_err(CliError::from)
        })
        .collect()
}

fn scaling_plots(
    dir: &Path,
    parameter: &str,
    aggregates: &[SweepAggregate],
    bounds: &[BoundSet],
) -> Result<(), CliError> {
    let positive = |points: Vec<(f64, f64)>| -> Vec<(f64, f64)> {
        points.into_iter().filter(|&(x, y)| x > 0.0 && y > 0.0).collect()
    };
    let mut series = Vec::new();
    if !aggregates.is_empty() {
        let pts = positive(
            aggregates
                .iter()
                .map(|a| (a.value, a.crest_time_avg_max - 1.0))
                .collect(),
        );
        if pts.len() >= 2 {
            series.push(Series {
                label: "observed crest - 1 (max over seeds)".to_string(),
                points: pts,
                color: svg::PALETTE[0],
                dashed: false,
            });
        }
    }
    let bound_pts = positive(bounds.iter().map(|b| (value_of(b, parameter), b.crest_avg - 1.0)).collect());
    if bound_pts.len() >= 2 {
        series.push(Series {
            label: "crest bound - 1".to_string(),
            points: bound_pts,
            color: svg::PALETTE[1],
            dashed: true,
        });
    }
    if !series.is_empty() {
        let plot = svg::log_log_plot(
            &series,
            "time-averaged crest factor scaling",
            parameter,
            "crest - 1",
        );
        output::write_text(&dir.join("crest_scaling.svg"), &plot)?;
    }

    let mut bound_series = Vec::new();
    let columns: [(&str, Box<dyn Fn(&BoundSet) -> Option<f64>>); 5] = [
        ("J0 bound", Box::new(|b: &BoundSet| Some(b.j0))),
        ("J1 bound", Box::new(|b: &BoundSet| Some(b.j1))),
        ("J2 bound", Box::new(|b: &BoundSet| b.j2)),
        ("sup bound", Box::new(|b: &BoundSet| Some(b.sup))),
        ("crest bound - 1", Box::new(|b: &BoundSet| Some(b.crest_avg - 1.0))),
    ];
    for (i, (label, extract)) in columns.iter().enumerate() {
        let pts = positive(
            bounds
                .iter()
                .filter_map(|b| extract(b).map(|y| (value_of(b, parameter), y)))
                .collect(),
        );
        if pts.len() >= 2 {
            bound_series.push(Series {
                label: label.to_string(),
                points: pts,
                color: svg::PALETTE[i % svg::PALETTE.len()],
                dashed: false,
            });
        }
    }
    if !bound_series.is_empty() {
        let plot = svg::log_log_plot(&bound_series, "analytic bounds", parameter, "bound");
        output::write_text(&dir.join("bounds_scaling.svg"), &plot)?;
    }
    Ok(())
}

fn value_of(set: &BoundSet, parameter: &str) -> f64 {
    match parameter {
        "lambda" => set.lambda,
        _ => set.length,
    }
}

/// `mkse sweep`: runs over the Cartesian product of sweep values and
/// seeds (or bound evaluation only), aggregation, exponent fits, plots.
pub fn cmd_sweep(config_path: &Path, common: &CommonArgs, bound_only: bool) -> Result<(), CliError> {
    let cfg = RunConfigFile::load(config_path)?;
    let (dir, formats) = resolve_output(&cfg, common);
    let sweep = cfg
        .sweep
        .clone()
        .ok_or_else(|| CliError::Config("sweep: section is required for `sweep`".to_string()))?;
    let start = Instant::now();
    let bounds = bound_sets_for(&cfg, &sweep.parameter, &sweep.values)?;

    let (aggregates, run_rows, reports) = if bound_only {
        (Vec::new(), Vec::new(), Vec::new())
    } else {
        let results = execute_sweep(&cfg, common.workers)?;
        let (rows, reports): (Vec<RunSummary>, Vec<_>) = results.into_iter().unzip();
        let aggregates: Vec<SweepAggregate> = sweep
            .values
            .iter()
            .zip(&bounds)
            .map(|(&value, set)| {
                let members: Vec<&RunSummary> =
                    rows.iter().filter(|r| r.value == value).collect();
                aggregate(value, &members, set.crest_avg)
            })
            .collect();
        (aggregates, rows, reports)
    };

    let fits = if bound_only {
        let xs: Vec<f64> = sweep.values.clone();
        let ys: Vec<f64> = bounds.iter().map(|b| b.crest_avg - 1.0).collect();
        match fit_power_law(&xs, &ys) {
            Ok(fit) => vec![FitReport {
                quantity: format!("crest_avg_bound - 1 vs {}", sweep.parameter),
                exponent: fit.exponent,
                prefactor: fit.prefactor,
                r_squared: fit.r_squared,
            }],
            Err(_) => Vec::new(),
        }
    } else {
        crest_fits(&sweep.parameter, &aggregates)
    };

    if wants(&formats, "csv") {
        if !bound_only {
            output::write_text(
                &dir.join("sweep_runs.csv"),
                &output::sweep_runs_csv(&sweep.parameter, &run_rows),
            )?;
            output::write_text(
                &dir.join("sweep_results.csv"),
                &output::sweep_results_csv(&sweep.parameter, &aggregates, &bounds),
            )?;
        }
        output::write_text(&dir.join("sweep_bounds.csv"), &output::bounds_csv(&bounds))?;
    }
    let all_passed = reports.iter().all(|r| r.all_passed());
    if wants(&formats, "json") {
        output::write_json(
            &dir.join("sweep_summary.json"),
            &SweepSummaryDoc {
                schema_version: SCHEMA_VERSION,
                tool_version: env!("CARGO_PKG_VERSION"),
                config: &cfg,
                parameter: &sweep.parameter,
                aggregates: &aggregates,
                fits: &fits,
                all_bounds_passed: all_passed,
                wall_time_seconds: start.elapsed().as_secs_f64(),
            },
        )?;
    }
    if wants(&formats, "svg") {
        scaling_plots(&dir, &sweep.parameter, &aggregates, &bounds)?;
    }

    if let Some(report) = reports.iter().find(|r| !r.all_passed()) {
        let failure = report.first_failure().expect("failed report has an entry");
        return Err(CliError::BoundViolation(format!(
            "{} at {} = {}, seed = {}: observed {} > bound {}",
            failure.name,
            sweep.parameter,
            value_of_report(report, &sweep.parameter),
            report.seed,
            failure.observed,
            failure.bound
        )));
    }
    for fit in &fits {
        println!(
            "fit: {} -> exponent {:.6}, prefactor {:.6}, r^2 {:.8}",
            fit.quantity, fit.exponent, fit.prefactor, fit.r_squared
        );
    }
    println!(
        "sweep complete: {} values x {} seeds{}, artifacts in {}",
        sweep.values.len(),
        sweep.seeds.len(),
        if bound_only { " (bound-only)" } else { "" },
        dir.display()
    );
    Ok(())
}

fn value_of_report(report: &crate::report::BoundReport, parameter: &str) -> f64 {
    match parameter {
        "lambda" => report.lambda,
        _ => report.length,
    }
}

/// `mkse bounds`: closed-form bound table for the Cartesian product of
/// lambda and L lists.
pub fn cmd_bounds(
    d: u8,
    lambdas: &[f64],
    lengths: &[f64],
    csv_path: Option<&Path>,
) -> Result<(), CliError> {
    let dim = match d {
        1 => Dim::One,
        2 => Dim::Two,
        other => return Err(CliError::Config(format!("--d must be 1 or 2, got {other}"))),
    };
    if lambdas.is_empty() {
        return Err(CliError::Config("--lambda: list must not be empty".to_string()));
    }
    if lengths.is_empty() {
        return Err(CliError::Config("--length: list must not be empty".to_string()));
    }
    let mut sets = Vec::new();
    for &lambda in lambdas {
        for &length in lengths {
            sets.push(bound_set(dim, lambda, length).map_err(|e| {
                CliError::Config(format!("lambda = {lambda}, L = {length}: {e}"))
            })?);
        }
    }
    let csv = output::bounds_csv(&sets);
    // Aligned table on stdout, same columns as the CSV.
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let rows: Vec<Vec<String>> = lines
        .map(|l| l.split(',').map(|s| trim_float(s)).collect())
        .collect();
    let widths: Vec<usize> = header
        .iter()
        .enumerate()
        .map(|(i, h)| rows.iter().map(|r| r[i].len()).chain([h.len()]).max().unwrap())
        .collect();
    let print_row = |cells: &[String]| {
        let line: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        println!("{}", line.join("  "));
    };
    print_row(&header.iter().map(|s| s.to_string()).collect::<Vec<_>>());
    for row in &rows {
        print_row(row);
    }
    if let Some(path) = csv_path {
        output::write_text(path, &csv)?;
    }
    Ok(())
}

fn trim_float(s: &str) -> String {
    match s.parse::<f64>() {
        Ok(v) if s.contains('.') || s.contains('e') => format!("{v:.6e}"),
        _ => s.to_string(),
    }
}

/// `mkse check-inequalities`: the randomized suite over all named checks
/// plus the slack-minimizing extremizer probes.
pub fn cmd_check_inequalities(
    seeds: u64,
    budget: usize,
    out: Option<&Path>,
) -> Result<(), CliError> {
    if seeds < 1 {
        return Err(CliError::Config("--seeds must be >= 1".to_string()));
    }
    let names = check_names();
    let mut entries = Vec::new();
    let mut first_violation: Option<(String, u64)> = None;

    for name in names {
        let results: Vec<(u64, InequalityCheck)> = (0..seeds)
            .into_par_iter()
            .map(|seed| {
                let check = run_named_check(name, seed).expect("suite fields are valid");
                (seed, check)
            })
            .collect();
        let min_slack = results
            .iter()
            .map(|(_, c)| c.relative_slack())
            .fold(f64::INFINITY, f64::min);
        let violations: Vec<u64> = results
            .iter()
            .filter(|(_, c)| !c.passes())
            .map(|(s, _)| *s)
            .collect();
        if let (None, Some(&seed)) = (&first_violation, violations.first()) {
            first_violation = Some((name.to_string(), seed));
        }

        let mut entry = SlackSummaryEntry {
            check: name.to_string(),
            runs: seeds,
            min_relative_slack: min_slack,
            violations: violations.len() as u64,
            search_best_ratio: None,
            search_descriptor: None,
        };
        if budget > 0 {
            match minimize_slack(name, budget, 0) {
                Ok(best) => {
                    entry.search_best_ratio = Some(best.ratio());
                    entry.search_descriptor = Some(best.field_descriptor);
                }
                Err(mkse_core::Error::InequalityViolated { name, ratio }) => {
                    entry.search_best_ratio = Some(ratio);
                    if first_violation.is_none() {
                        first_violation = Some((name, u64::MAX));
                    }
                }
                Err(other) => return Err(other.into()),
            }
        }
        println!(
            "{:26} runs {:5}  min rel slack {:+.3e}  violations {}{}",
            entry.check,
            entry.runs,
            entry.min_relative_slack,
            entry.violations,
            entry
                .search_best_ratio
                .map(|r| format!("  search ratio {r:.6}"))
                .unwrap_or_default()
        );
        entries.push(entry);
    }

    let doc = SlackSummaryDoc {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION"),
        seeds,
        budget,
        checks: entries,
    };
    if let Some(dir) = out {
        output::write_json(&dir.join("slack_summary.json"), &doc)?;
        output::write_text(&dir.join("slack_summary.csv"), &output::slack_summary_csv(&doc))?;
    }

    if let Some((name, seed)) = first_violation {
        let source = if seed == u64::MAX {
            "extremizer search".to_string()
        } else {
            format!("seed {seed}")
        };
        return Err(CliError::InequalityViolation(format!("{name} ({source})")));
    }
    println!("all {} checks passed over {} seeds", names.len(), seeds);
    Ok(())
}
