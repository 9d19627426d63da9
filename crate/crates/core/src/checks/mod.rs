//! The check registry and the per-prime evaluators behind it.
//!
//! Every check turns one prime into a [`CheckReport`]. Left sides are
//! direct sums over shared per-prime streams ([`context`]); right sides are
//! closed forms assembled from quotients, Legendre symbols and `Gamma_p`
//! values in plain [`Residue`] arithmetic, never from the summation code.

mod context;
pub mod exact;
pub mod grid;
mod linear;
pub mod oracle;
mod registry;
mod suites;

use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::exactq::{ExactError, Rational};
use crate::modring::{AnyRing, ModError, Modulus, Residue};
use crate::padic_gamma::GammaError;
use crate::primes::is_prime;
use crate::sequences::SeqError;

pub(crate) use context::PrimeContext;
pub use registry::{
    list_checks, lookup, CheckSpec, ClassReq, CostClass, Status, GT3, GT5, ODD, ONE_MOD_3, ONE_MOD_4, ONE_MOD_5,
    REGISTRY, SMALL_PRIME_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("{id} requires {requirement}; {p} does not qualify")]
    Inapplicable { id: String, p: u64, requirement: String },
    #[error("{0} is a grid check; run it with `polyid`")]
    GridOnly(String),
    #[error("{id} is limited to p <= {cap}; got {p}")]
    AboveCap { id: String, p: u64, cap: u64 },
    #[error("internal error: {0}")]
    Internal(String),
}

macro_rules! internal_from {
    ($($t:ty),*) => {
        $(impl From<$t> for CheckError {
            fn from(e: $t) -> Self {
                CheckError::Internal(e.to_string())
            }
        })*
    };
}

internal_from!(ModError, SeqError, ExactError, GammaError);

/// The prime-specific data one report is about.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceInstance {
    pub check_id: &'static str,
    pub p: u64,
    pub k: u32,
    pub n_half: u64,
    pub cut_m: Option<u64>,
    pub x_param: Option<Rational>,
}

/// One verified congruence instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub instance: CongruenceInstance,
    pub lhs: Residue,
    pub rhs: Residue,
    pub holds: bool,
    pub elapsed_us: u64,
    /// Which sub-assertion was reported, for multi-assertion checks.
    pub note: Option<String>,
}

impl CheckReport {
    pub fn id(&self) -> &'static str {
        self.instance.check_id
    }

    pub fn p(&self) -> u64 {
        self.instance.p
    }

    pub fn k(&self) -> u32 {
        self.instance.k
    }
}

/// The JSONL/CSV record for a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRecord {
    pub check: &'static str,
    pub p: u64,
    pub k: u32,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
    pub us: u64,
}

impl ReportRecord {
    /// `timing` off zeroes the elapsed field so output is reproducible.
    pub fn new(r: &CheckReport, timing: bool) -> Self {
        ReportRecord {
            check: r.id(),
            p: r.p(),
            k: r.k(),
            lhs: r.lhs.value().to_string(),
            rhs: r.rhs.value().to_string(),
            holds: r.holds,
            us: if timing { r.elapsed_us } else { 0 },
        }
    }
}

/// What an evaluator produces before timing and bookkeeping are attached.
#[derive(Debug, Clone)]
pub(crate) struct Outcome {
    pub lhs: Residue,
    pub rhs: Residue,
    pub cut_m: Option<u64>,
    pub x_param: Option<Rational>,
    pub note: Option<String>,
}

impl Outcome {
    pub fn new(lhs: Residue, rhs: Residue) -> Self {
        debug_assert_eq!(lhs.modulus(), rhs.modulus());
        Outcome { lhs, rhs, cut_m: None, x_param: None, note: None }
    }

    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn cut(mut self, m: u64) -> Self {
        self.cut_m = Some(m);
        self
    }

    pub fn x(mut self, x: Rational) -> Self {
        self.x_param = Some(x);
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// The first failing sub-assertion, or the last one if all hold.
    pub fn first_failure(parts: impl IntoIterator<Item = Outcome>) -> Outcome {
        let mut count = 0usize;
        let mut last = None;
        for o in parts {
            count += 1;
            if !o.holds() {
                let note = format!("{} (sub-assertion {count})", o.note.as_deref().unwrap_or("failed"));
                return o.note(note);
            }
            last = Some(o);
        }
        let o = last.expect("at least one sub-assertion");
        let note = format!("{}; all {count} sub-assertions hold", o.note.as_deref().unwrap_or("last"));
        o.note(note)
    }

    /// `first_failure` over an index range where `holds` is a cheap test
    /// and `build` is only run for the reported index.
    pub fn first_failure_by(
        range: std::ops::RangeInclusive<u64>,
        holds: impl Fn(u64) -> bool,
        build: impl Fn(u64) -> Outcome,
    ) -> Outcome {
        let start = *range.start();
        let mut last = None;
        for i in range {
            if !holds(i) {
                let o = build(i);
                let note = format!("{} (sub-assertion {})", o.note.as_deref().unwrap_or("failed"), i - start + 1);
                return o.note(note);
            }
            last = Some(i);
        }
        let i = last.expect("at least one sub-assertion");
        let o = build(i);
        let note = format!("{}; all {} sub-assertions hold", o.note.as_deref().unwrap_or("last"), i - start + 1);
        o.note(note)
    }
}

fn applicable(spec: &CheckSpec, p: u64, force: bool) -> Result<(), CheckError> {
    if spec.cost == CostClass::Grid {
        return Err(CheckError::GridOnly(spec.id.to_string()));
    }
    if !is_prime(p) || !spec.class.admits(p) {
        return Err(CheckError::Inapplicable {
            id: spec.id.to_string(),
            p,
            requirement: format!("a prime {} with p >= {}", spec.class.label, spec.floor()),
        });
    }
    if !force && !spec.within_cap(p) {
        return Err(CheckError::AboveCap { id: spec.id.to_string(), p, cap: SMALL_PRIME_CAP });
    }
    Ok(())
}

/// Runs one check at one prime.
pub fn run_check(id: &str, p: u64) -> Result<CheckReport, CheckError> {
    let spec = lookup(id).ok_or_else(|| CheckError::UnknownCheck(id.to_string()))?;
    applicable(spec, p, true)?;
    run_checks_at(p, &[spec]).pop().expect("one spec in, one report out")
}

/// Runs every spec that applies at `p`, sharing the per-prime streams.
/// Specs that do not apply are skipped; order follows `specs`.
pub fn run_checks_at(p: u64, specs: &[&'static CheckSpec]) -> Vec<Result<CheckReport, CheckError>> {
    let specs: Vec<&CheckSpec> = specs.iter().copied().filter(|s| applicable(s, p, true).is_ok()).collect();
    if specs.is_empty() {
        return Vec::new();
    }
    let needs_context = specs.iter().any(|s| s.cost == CostClass::Linear);
    let modulus = match Modulus::new(p, 3) {
        Ok(m) => m,
        Err(e) => return specs.iter().map(|_| Err(e.clone().into())).collect(),
    };
    match AnyRing::new(modulus) {
        AnyRing::Mont(r) => evaluate(p, &specs, needs_context.then(|| PrimeContext::new(r))),
        AnyRing::Wide(r) => evaluate(p, &specs, needs_context.then(|| PrimeContext::new(r))),
    }
}

fn evaluate<R: crate::modring::RingOps>(
    p: u64,
    specs: &[&'static CheckSpec],
    ctx: Option<PrimeContext<R>>,
) -> Vec<Result<CheckReport, CheckError>> {
    specs
        .iter()
        .map(|spec| {
            let start = Instant::now();
            let outcome = match spec.cost {
                CostClass::Linear => linear::eval(spec.id, ctx.as_ref().expect("context built for linear checks")),
                CostClass::SmallPrime => suites::eval(spec.id, p),
                CostClass::Grid => Err(CheckError::GridOnly(spec.id.to_string())),
            }?;
            let elapsed_us = start.elapsed().as_micros() as u64;
            Ok(CheckReport {
                instance: CongruenceInstance {
                    check_id: spec.id,
                    p,
                    k: outcome.lhs.modulus().k(),
                    n_half: (p - 1) / 2,
                    cut_m: outcome.cut_m,
                    x_param: outcome.x_param.clone(),
                },
                holds: outcome.holds(),
                lhs: outcome.lhs,
                rhs: outcome.rhs,
                elapsed_us,
                note: outcome.note,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dispatch_errors() {
        assert!(matches!(run_check("nosuch", 7), Err(CheckError::UnknownCheck(_))));
        assert!(matches!(run_check("mcong1", 11), Err(CheckError::Inapplicable { .. })));
        assert!(matches!(run_check("mcong1", 1), Err(CheckError::Inapplicable { .. })));
        assert!(matches!(run_check("polid1", 7), Err(CheckError::GridOnly(_))));
        assert!(matches!(run_check("ncong1", 3), Err(CheckError::Inapplicable { .. })));
    }
}
