//! Artifact writers. CSV files are assembled by hand with shortest
//! round-trip float formatting so identical inputs produce byte-identical
//! files; JSON documents carry the schema version and the full config echo.

use crate::config::{RunConfigFile, SCHEMA_VERSION};
use crate::error::CliError;
use crate::report::{BoundReport, FitReport, RunSummary, SweepAggregate};
use mkse_core::observables::ObservableSeries;
use serde::Serialize;
use std::path::Path;

pub fn write_text(path: &Path, content: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    std::fs::write(path, content)?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    write_text(path, &(text + "\n"))
}

fn push_row(out: &mut String, fields: &[String]) {
    out.push_str(&fields.join(","));
    out.push('\n');
}

fn f(v: f64) -> String {
    format!("{v}")
}

/// Time-series CSV with the stable column set
/// `t,J0,J1,J2,J3,J4,sup,mean,J0_prime,crest`.
pub fn timeseries_csv(series: &ObservableSeries) -> String {
    let mut out = String::from("t,J0,J1,J2,J3,J4,sup,mean,J0_prime,crest\n");
    for row in series.rows() {
        push_row(
            &mut out,
            &[
                f(row.t),
                f(row.j[0]),
                f(row.j[1]),
                f(row.j[2]),
                f(row.j[3]),
                f(row.j[4]),
                f(row.sup_norm),
                f(row.mean),
                f(row.j0_prime),
                f(row.crest),
            ],
        );
    }
    out
}

pub fn bound_report_csv(report: &BoundReport) -> String {
    let mut out = String::from("name,observed,bound,margin,verdict\n");
    for e in &report.entries {
        push_row(
            &mut out,
            &[
                e.name.clone(),
                f(e.observed),
                f(e.bound),
                f(e.margin),
                e.verdict.to_string(),
            ],
        );
    }
    out
}

/// Per-run sweep rows; the `J2_tail_max` column appears only in 2D.
pub fn sweep_runs_csv(parameter: &str, rows: &[RunSummary]) -> String {
    let has_j2 = rows.iter().any(|r| r.j2_tail_max.is_some());
    let mut out = String::new();
    if has_j2 {
        out.push_str(&format!(
            "{parameter},seed,J0_tail_max,J1_tail_max,J2_tail_max,sup_tail_max,crest_time_avg\n"
        ));
    } else {
        out.push_str(&format!(
            "{parameter},seed,J0_tail_max,J1_tail_max,sup_tail_max,crest_time_avg\n"
        ));
    }
    for r in rows {
        let mut fields = vec![f(r.value), r.seed.to_string(), f(r.j0_tail_max), f(r.j1_tail_max)];
        if let Some(j2) = r.j2_tail_max {
            fields.push(f(j2));
        } else if has_j2 {
            fields.push(String::new());
        }
        fields.push(f(r.sup_tail_max));
        fields.push(f(r.crest_time_avg));
        push_row(&mut out, &fields);
    }
    out
}

/// Per-value aggregates with the matching bound columns.
pub fn sweep_results_csv(
    parameter: &str,
    aggregates: &[SweepAggregate],
    bounds: &[mkse_core::bounds::BoundSet],
) -> String {
    let has_j2 = bounds.iter().any(|b| b.j2.is_some());
    let mut out = String::new();
    if has_j2 {
        out.push_str(&format!("{parameter},J0_tail_max,J0_bound,J1_tail_max,J1_bound,J2_tail_max,J2_bound,sup_tail_max,sup_bound,crest_time_avg_max,crest_avg_bound\n"));
    } else {
        out.push_str(&format!("{parameter},J0_tail_max,J0_bound,J1_tail_max,J1_bound,sup_tail_max,sup_bound,crest_time_avg_max,crest_avg_bound\n"));
    }
    for (agg, set) in aggregates.iter().zip(bounds) {
        let mut fields = vec![
            f(agg.value),
            f(agg.j0_tail_max),
            f(set.j0),
            f(agg.j1_tail_max),
            f(set.j1),
        ];
        if let Some(j2b) = set.j2 {
            fields.push(agg.j2_tail_max.map(f).unwrap_or_default());
            fields.push(f(j2b));
        }
        fields.push(f(agg.sup_tail_max));
        fields.push(f(set.sup));
        fields.push(f(agg.crest_time_avg_max));
        fields.push(f(set.crest_avg));
        push_row(&mut out, &fields);
    }
    out
}

/// Bound table of [`mkse_core::bounds::BoundSet`] rows, one per
/// `(lambda, L)` pair; 2D includes the `J2` and time-average columns.
pub fn bounds_csv(sets: &[mkse_core::bounds::BoundSet]) -> String {
    let has_j2 = sets.iter().any(|b| b.j2.is_some());
    let mut out = String::new();
    if has_j2 {
        out.push_str("d,lambda,L,J0_bound,J1_bound,J2_bound,sup_bound,crest_avg_bound,J1_time_avg_bound,J2_time_avg_bound,J3_time_avg_bound\n");
    } else {
        out.push_str("d,lambda,L,J0_bound,J1_bound,sup_bound,crest_avg_bound\n");
    }
    for b in sets {
        let mut fields = vec![
            b.dim.axes().to_string(),
            f(b.lambda),
            f(b.length),
            f(b.j0),
            f(b.j1),
        ];
        if has_j2 {
            fields.push(b.j2.map(f).unwrap_or_default());
        }
        fields.push(f(b.sup));
        fields.push(f(b.crest_avg));
        if has_j2 {
            fields.push(b.j1_time_avg.map(f).unwrap_or_default());
            fields.push(b.j2_time_avg.map(f).unwrap_or_default());
            fields.push(b.j3_time_avg.map(f).unwrap_or_default());
        }
        push_row(&mut out, &fields);
    }
    out
}

#[derive(Serialize)]
pub struct RunMeta<'a> {
    pub schema_version: &'static str,
    pub tool_version: &'static str,
    pub config: &'a RunConfigFile,
    pub sup_refine: usize,
    pub wall_time_seconds: f64,
}

impl<'a> RunMeta<'a> {
    pub fn new(config: &'a RunConfigFile, wall_time_seconds: f64) -> Self {
        RunMeta {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION"),
            config,
            sup_refine: mkse_core::observables::SUP_REFINE,
            wall_time_seconds,
        }
    }
}

#[derive(Serialize)]
pub struct BoundReportDoc<'a> {
    pub schema_version: &'static str,
    pub config: &'a RunConfigFile,
    pub report: &'a BoundReport,
}

#[derive(Serialize)]
pub struct SweepSummaryDoc<'a> {
    pub schema_version: &'static str,
    pub tool_version: &'static str,
    pub config: &'a RunConfigFile,
    pub parameter: &'a str,
    pub aggregates: &'a [SweepAggregate],
    pub fits: &'a [FitReport],
    pub all_bounds_passed: bool,
    pub wall_time_seconds: f64,
}

#[derive(Serialize)]
pub struct SlackSummaryEntry {
    pub check: String,
    pub runs: u64,
    pub min_relative_slack: f64,
    pub violations: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search_best_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search_descriptor: Option<String>,
}

#[derive(Serialize)]
pub struct SlackSummaryDoc {
    pub schema_version: &'static str,
    pub tool_version: &'static str,
    pub seeds: u64,
    pub budget: usize,
    pub checks: Vec<SlackSummaryEntry>,
}

pub fn slack_summary_csv(doc: &SlackSummaryDoc) -> String {
    let mut out = String::from("check,runs,min_relative_slack,violations,search_best_ratio\n");
    for e in &doc.checks {
        push_row(
            &mut out,
            &[
                e.check.clone(),
                e.runs.to_string(),
                f(e.min_relative_slack),
                e.violations.to_string(),
                e.search_best_ratio.map(f).unwrap_or_default(),
            ],
        );
    }
    out
}
