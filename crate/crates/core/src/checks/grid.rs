//! Prime-free identities checked over a parameter grid.

use rayon::prelude::*;
use serde::Serialize;

use super::{lookup, CheckError, CostClass};
use crate::exactq::{coeffid_check, ek2004_t20_check, polid_check, PolyIdentity};

/// Outcome of one grid check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridResult {
    pub check: &'static str,
    pub n_max: u64,
    pub cases: u64,
    /// Failing grid points, formatted as parameter lists.
    pub failures: Vec<String>,
}

impl GridResult {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

fn points(id: &str, n_max: i64) -> Vec<(i64, i64, i64)> {
    match id {
        "polid1" | "polid2" => (1..=n_max).flat_map(|n| (1..=n).map(move |m| (n, m, 0))).collect(),
        "coeffid" => (1..=n_max).flat_map(|n| (1..=n).flat_map(move |m| (0..=n + m).map(move |d| (n, m, d)))).collect(),
        _ => (0..=n_max).map(|n| (n, 0, 0)).collect(),
    }
}

/// Runs a grid check for all parameters up to `n_max`.
pub fn run_grid(id: &str, n_max: u64) -> Result<GridResult, CheckError> {
    let spec = lookup(id).ok_or_else(|| CheckError::UnknownCheck(id.to_string()))?;
    if spec.cost != CostClass::Grid {
        return Err(CheckError::UnknownCheck(format!("{id} is not a grid check")));
    }
    let pts = points(id, n_max as i64);
    let failures: Vec<String> = pts
        .par_iter()
        .filter(|&&(n, m, d)| match id {
            "polid1" => !polid_check(PolyIdentity::Lower, n, m),
            "polid2" => !polid_check(PolyIdentity::Upper, n, m),
            "coeffid" => !coeffid_check(n, m, d),
            _ => !ek2004_t20_check(n as u64),
        })
        .map(|&(n, m, d)| match id {
            "coeffid" => format!("n={n} m={m} d={d}"),
            "ek2004_t20" => format!("n={n}"),
            _ => format!("n={n} m={m}"),
        })
        .collect();
    Ok(GridResult { check: spec.id, n_max, cases: pts.len() as u64, failures })
}

/// Ids of every grid check, in registry order.
pub fn grid_ids() -> Vec<&'static str> {
    super::REGISTRY.iter().filter(|s| s.cost == CostClass::Grid).map(|s| s.id).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grids_hold() {
        for id in grid_ids() {
            let r = run_grid(id, 6).unwrap();
            assert!(r.holds(), "{id}: {:?}", r.failures);
            assert!(r.cases > 0);
        }
        assert_eq!(run_grid("polid1", 3).unwrap().cases, 6);
        assert!(run_grid("mcong1", 3).is_err());
    }
}
