//! Sweeps of checks over prime ranges.
//!
//! Primes are processed in fixed-size chunks; inside a chunk they are
//! evaluated on a worker pool and collected in order, so the sink sees
//! reports sorted by prime and, within a prime, in registry order, whatever
//! the number of workers.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::checks::{run_checks_at, CheckError, CheckReport, CheckSpec};
use crate::primes::{primes_in, PrimeClass};

const CHUNK: usize = 1024;

#[derive(Debug, Clone)]
pub struct SweepPlan {
    pub checks: Vec<&'static CheckSpec>,
    pub p_min: u64,
    pub p_max: u64,
    /// Lifts the small-prime cap.
    pub force: bool,
    /// Worker threads; `1` runs on the calling thread.
    pub jobs: usize,
}

impl SweepPlan {
    pub fn new(checks: Vec<&'static CheckSpec>, p_min: u64, p_max: u64) -> Self {
        SweepPlan { checks, p_min, p_max, force: false, jobs: 1 }
    }

    /// The checks that run at `p` under this plan.
    pub fn applicable_at(&self, p: u64) -> Vec<&'static CheckSpec> {
        self.checks
            .iter()
            .copied()
            .filter(|s| s.is_sweepable() && s.class.admits(p) && (self.force || s.within_cap(p)))
            .collect()
    }
}

/// Counters for the summary block.
#[derive(Debug, Clone, Default)]
pub struct SweepSummary {
    pub checks: usize,
    pub primes: usize,
    pub records: usize,
    pub failures: usize,
    pub errors: Vec<(String, u64, CheckError)>,
    pub wall: Duration,
}

impl SweepSummary {
    pub fn clean(&self) -> bool {
        self.failures == 0 && self.errors.is_empty()
    }
}

type PrimeResult = (u64, Vec<&'static str>, Vec<Result<CheckReport, CheckError>>);

fn eval_prime(plan: &SweepPlan, p: u64) -> PrimeResult {
    let specs = plan.applicable_at(p);
    let ids = specs.iter().map(|s| s.id).collect();
    (p, ids, run_checks_at(p, &specs))
}

/// Runs the plan, handing every report to `sink` in deterministic order.
pub fn run_sweep(plan: &SweepPlan, mut sink: impl FnMut(&CheckReport)) -> SweepSummary {
    let start = Instant::now();
    let mut summary = SweepSummary { checks: plan.checks.len(), ..Default::default() };
    if plan.p_max < plan.p_min.max(3) {
        summary.wall = start.elapsed();
        return summary;
    }
    let pool =
        (plan.jobs > 1).then(|| rayon::ThreadPoolBuilder::new().num_threads(plan.jobs).build().expect("worker pool"));
    let mut primes = primes_in(PrimeClass::all(plan.p_min, plan.p_max)).peekable();
    while primes.peek().is_some() {
        let chunk: Vec<u64> = primes.by_ref().take(CHUNK).collect();
        let results: Vec<PrimeResult> = match &pool {
            Some(pool) => pool.install(|| chunk.par_iter().map(|&p| eval_prime(plan, p)).collect()),
            None => chunk.iter().map(|&p| eval_prime(plan, p)).collect(),
        };
        for (p, ids, reports) in results {
            if !reports.is_empty() {
                summary.primes += 1;
            }
            for (id, r) in ids.into_iter().zip(reports) {
                match r {
                    Ok(report) => {
                        summary.records += 1;
                        if !report.holds {
                            summary.failures += 1;
                        }
                        sink(&report);
                    }
                    Err(e) => summary.errors.push((id.to_string(), p, e)),
                }
            }
        }
    }
    summary.wall = start.elapsed();
    summary
}

/// Collects every report of a sweep.
pub fn collect_sweep(plan: &SweepPlan) -> (Vec<CheckReport>, SweepSummary) {
    let mut out = Vec::new();
    let summary = run_sweep(plan, |r| out.push(r.clone()));
    (out, summary)
}
