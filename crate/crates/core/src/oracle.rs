//! Ground truth by exhaustive enumeration, and the correspondence between
//! assignments and grids of the compatibility matrix.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cnf::{Assignment, Cnf};
use crate::compat::{CompatMatrix, Grid};

/// Default bound on `n` for the `2^n` scan.
pub const DEFAULT_MAX_VARS: u32 = 30;

/// Environment variable overriding [`DEFAULT_MAX_VARS`].
pub const MAX_VARS_ENV: &str = "GRIDSAT_ORACLE_MAX_VARS";

/// Bound on the number of grid candidates `Π 2^{k_i}`.
pub const MAX_GRID_CANDIDATES: u64 = 1 << 20;

/// Below this many candidates, grid enumeration is cross-checked by an
/// exhaustive scan.
const SCAN_CONFIRM_CANDIDATES: u64 = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OracleDecision {
    #[serde(rename = "SAT")]
    Sat,
    #[serde(rename = "UNSAT")]
    Unsat,
}

impl fmt::Display for OracleDecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OracleDecision::Sat => "SAT",
            OracleDecision::Unsat => "UNSAT",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub decision: OracleDecision,
    /// All models in canonical order when enumeration was requested,
    /// otherwise at most the first one.
    pub models: Vec<Assignment>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{num_vars} variables exceed the oracle limit of {limit}")]
    TooManyVars { num_vars: u32, limit: u32 },
    #[error("{candidates} grid candidates exceed the limit of {limit}")]
    TooManyGrids { candidates: u128, limit: u64 },
    #[error("model-derived grids and the exhaustive scan disagree")]
    GridMismatch,
}

/// The active variable limit: [`MAX_VARS_ENV`] if set and valid, otherwise
/// [`DEFAULT_MAX_VARS`].
pub fn max_vars() -> u32 {
    std::env::var(MAX_VARS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_VARS)
}

/// Exhaustive `2^n` scan with the environment-configured limit.
pub fn brute_force(f: &Cnf, enumerate_all: bool) -> Result<OracleResult, OracleError> {
    brute_force_with_limit(f, enumerate_all, max_vars())
}

pub fn brute_force_with_limit(
    f: &Cnf,
    enumerate_all: bool,
    limit: u32,
) -> Result<OracleResult, OracleError> {
    let n = f.num_vars();
    // the assignment index is a u64
    if n > limit || n > 63 {
        return Err(OracleError::TooManyVars { num_vars: n, limit });
    }
    // variable v lives at bit n - v, so index order is canonical order
    let masks: Vec<(u64, u64)> = f
        .clauses()
        .iter()
        .map(|c| {
            c.literals().iter().fold((0, 0), |(pos, neg), l| {
                let bit = 1u64 << (n - l.var());
                if l.is_negated() {
                    (pos, neg | bit)
                } else {
                    (pos | bit, neg)
                }
            })
        })
        .collect();

    let mut models = Vec::new();
    for idx in 0..1u64 << n {
        let sat = masks
            .iter()
            .all(|&(pos, neg)| idx & pos != 0 || !idx & neg != 0);
        if sat {
            models.push(Assignment::from_index(n as usize, idx));
            if !enumerate_all {
                break;
            }
        }
    }
    let decision = if models.is_empty() {
        OracleDecision::Unsat
    } else {
        OracleDecision::Sat
    };
    Ok(OracleResult { decision, models })
}

/// The grid selected by `a`: clause `i` contributes the canonical row of
/// `a` restricted to its variables.
pub fn grid_from_assignment(f: &Cnf, a: &Assignment) -> Grid {
    Grid::new(f.clauses().iter().map(|c| c.row_of(a)).collect())
}

/// Whether every entry selected by `g` is true.
pub fn is_solution_grid(c: &CompatMatrix, g: &Grid) -> bool {
    c.is_solution_grid(g)
}

/// `Π 2^{k_i}`.
pub fn grid_candidates(c: &CompatMatrix) -> u128 {
    c.dims().map(|d| d as u128).product()
}

fn check_grid_guard(candidates: u128) -> Result<(), OracleError> {
    if candidates > MAX_GRID_CANDIDATES as u128 {
        return Err(OracleError::TooManyGrids {
            candidates,
            limit: MAX_GRID_CANDIDATES,
        });
    }
    Ok(())
}

/// Every solution grid of the built matrix, in mixed-radix order, obtained
/// by mapping the oracle's models to grids. Small instances are confirmed
/// against [`scan_solution_grids`].
pub fn enumerate_solution_grids(f: &Cnf) -> Result<Vec<Grid>, OracleError> {
    let c = CompatMatrix::build(f);
    let candidates = grid_candidates(&c);
    check_grid_guard(candidates)?;
    let models = brute_force(f, true)?.models;
    let grids: BTreeSet<Grid> = models.iter().map(|a| grid_from_assignment(f, a)).collect();
    let grids: Vec<Grid> = grids.into_iter().collect();
    if candidates <= SCAN_CONFIRM_CANDIDATES as u128 && scan_solution_grids(&c)? != grids {
        return Err(OracleError::GridMismatch);
    }
    Ok(grids)
}

/// Exhaustive scan of all `Π 2^{k_i}` grids of `c` in mixed-radix order
/// (last clause fastest), keeping those whose entries are all true.
pub fn scan_solution_grids(c: &CompatMatrix) -> Result<Vec<Grid>, OracleError> {
    check_grid_guard(grid_candidates(c))?;
    let dims: Vec<usize> = c.dims().collect();
    let m = dims.len();
    let mut out = Vec::new();
    let mut digits = vec![0usize; m];
    loop {
        let g = Grid::new(digits.clone());
        if c.is_solution_grid(&g) {
            out.push(g);
        }
        // increment the mixed-radix counter
        let mut pos = m;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < dims[pos] {
                break;
            }
            digits[pos] = 0;
        }
    }
}
