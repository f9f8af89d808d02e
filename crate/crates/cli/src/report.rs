//! Report documents: bound compliance for single runs and aggregated
//! sweep results.

use mkse_core::bounds::{bound_set, BoundSet};
use mkse_core::observables::TailStatistics;
use mkse_core::Dim;
use serde::Serialize;

/// Verdict tolerance: a bound passes when `bound - observed >= -1e-6 * bound`.
pub const VERDICT_TOL: f64 = 1e-6;

/// One observed-versus-bound comparison.
#[derive(Debug, Clone, Serialize)]
pub struct BoundEntry {
    pub name: String,
    pub observed: f64,
    pub bound: f64,
    pub margin: f64,
    pub verdict: &'static str,
}

impl BoundEntry {
    fn new(name: &str, observed: f64, bound: f64) -> Self {
        let margin = bound - observed;
        BoundEntry {
            name: name.to_string(),
            observed,
            bound,
            margin,
            verdict: if margin >= -VERDICT_TOL * bound {
                "pass"
            } else {
                "fail"
            },
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }
}

/// Bound-compliance report for one trajectory. For `lambda <= 0` the
/// analytic bounds do not apply and `entries` stays empty.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub dim: u8,
    pub lambda: f64,
    pub length: f64,
    pub seed: u64,
    pub transient: f64,
    pub entries: Vec<BoundEntry>,
}

impl BoundReport {
    /// Compare the observed tail statistics with every applicable bound:
    /// tail-max `J_0`, `J_1` (and `J_2` in 2D), the tail-max sup-norm and
    /// the time-averaged crest factor.
    pub fn build(
        dim: Dim,
        lambda: f64,
        length: f64,
        seed: u64,
        transient: f64,
        tail: &TailStatistics,
        crest_avg: f64,
    ) -> Self {
        let mut entries = Vec::new();
        if lambda > 0.0 {
            let bounds: BoundSet = bound_set(dim, lambda, length).expect("lambda > 0");
            entries.push(BoundEntry::new("J0_tail_max", tail.j[0].limsup_estimate, bounds.j0));
            entries.push(BoundEntry::new("J1_tail_max", tail.j[1].limsup_estimate, bounds.j1));
            if let Some(j2) = bounds.j2 {
                entries.push(BoundEntry::new("J2_tail_max", tail.j[2].limsup_estimate, j2));
            }
            entries.push(BoundEntry::new(
                "sup_tail_max",
                tail.sup_norm.limsup_estimate,
                bounds.sup,
            ));
            entries.push(BoundEntry::new("crest_time_avg", crest_avg, bounds.crest_avg));
        }
        BoundReport {
            dim: dim.axes() as u8,
            lambda,
            length,
            seed,
            transient,
            entries,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed())
    }

    pub fn first_failure(&self) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| !e.passed())
    }
}

/// Tail statistics of one sweep run, flattened for serialization.
#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub value: f64,
    pub seed: u64,
    pub j0_tail_max: f64,
    pub j1_tail_max: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j2_tail_max: Option<f64>,
    pub sup_tail_max: f64,
    pub crest_time_avg: f64,
}

/// Per-value aggregate over seeds (max of each tail statistic).
#[derive(Debug, Clone, Serialize)]
pub struct SweepAggregate {
    pub value: f64,
    pub j0_tail_max: f64,
    pub j1_tail_max: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j2_tail_max: Option<f64>,
    pub sup_tail_max: f64,
    pub crest_time_avg_max: f64,
    pub crest_bound: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FitReport {
    pub quantity: String,
    pub exponent: f64,
    pub prefactor: f64,
    pub r_squared: f64,
}

pub fn aggregate(value: f64, runs: &[&RunSummary], crest_bound: f64) -> SweepAggregate {
    let fold = |f: fn(&RunSummary) -> f64| runs.iter().map(|r| f(r)).fold(f64::NEG_INFINITY, f64::max);
    SweepAggregate {
        value,
        j0_tail_max: fold(|r| r.j0_tail_max),
        j1_tail_max: fold(|r| r.j1_tail_max),
        j2_tail_max: runs
            .iter()
            .filter_map(|r| r.j2_tail_max)
            .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.max(v)))),
        sup_tail_max: fold(|r| r.sup_tail_max),
        crest_time_avg_max: fold(|r| r.crest_time_avg),
        crest_bound,
    }
}
