//! Model extraction by self-reduction: fix variables one at a time and ask
//! the engine again after each choice.

use serde::Serialize;
use thiserror::Error;

use crate::cnf::{Assignment, Cnf, Restriction};
use crate::engine::{Decision, EngineConfig, EngineError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExtractionStatus {
    #[serde(rename = "MODEL")]
    Model,
    /// Both values of some variable were rejected although the engine had
    /// claimed the enclosing formula satisfiable.
    #[serde(rename = "ENGINE_CONTRADICTION")]
    EngineContradiction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BranchVerdict {
    #[serde(rename = "SAT_CLAIM")]
    SatClaim,
    #[serde(rename = "UNSAT")]
    Unsat,
    /// Substitution emptied a clause; the engine was not consulted.
    #[serde(rename = "CONTRADICTION")]
    Contradiction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Branch {
    pub var: u32,
    pub value: bool,
    pub verdict: BranchVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtractionOutcome {
    pub status: ExtractionStatus,
    pub model: Option<Assignment>,
    pub branch_log: Vec<Branch>,
}

impl ExtractionOutcome {
    /// Number of engine invocations made after the initial check.
    pub fn engine_runs(&self) -> usize {
        self.branch_log
            .iter()
            .filter(|b| b.verdict != BranchVerdict::Contradiction)
            .count()
    }

    pub fn branch_log_json(&self) -> String {
        serde_json::to_string(&self.branch_log).expect("branch log serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("the {0} engine does not claim the formula satisfiable")]
    NotClaimed(crate::engine::Variant),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Extracts a model from a SAT claim of `engine` on `f`.
///
/// Variables are visited in ascending order and `true` is tried first.
/// Variables that occur in no clause of `f` are free and set to false
/// without consulting the engine. A returned model is always checked
/// against `f`.
pub fn extract_self_reduce(f: &Cnf, engine: &EngineConfig) -> Result<ExtractionOutcome, ExtractError> {
    if engine.decide_formula(f)?.decision != Decision::SatClaim {
        return Err(ExtractError::NotClaimed(engine.variant));
    }
    let n = f.num_vars();
    let mut model = Assignment::all_false(n as usize);
    let mut current = f.clone();
    let mut branch_log = Vec::new();

    for var in 1..=n {
        if !f.mentions(var) {
            continue;
        }
        let mut fixed = None;
        for value in [true, false] {
            let verdict = match current.assign_var(var, value) {
                Restriction::Contradiction => BranchVerdict::Contradiction,
                Restriction::Formula(g) => match engine.decide_formula(&g)?.decision {
                    Decision::SatClaim => {
                        fixed = Some(g);
                        BranchVerdict::SatClaim
                    }
                    Decision::Unsat => BranchVerdict::Unsat,
                },
            };
            branch_log.push(Branch { var, value, verdict });
            if fixed.is_some() {
                model.set(var, value);
                break;
            }
        }
        match fixed {
            Some(g) => current = g,
            None => {
                return Ok(ExtractionOutcome {
                    status: ExtractionStatus::EngineContradiction,
                    model: None,
                    branch_log,
                })
            }
        }
    }

    if !f.evaluate(&model) {
        // Every clause was removed by a satisfying substitution, so this is
        // unreachable unless substitution itself is broken.
        return Ok(ExtractionOutcome {
            status: ExtractionStatus::EngineContradiction,
            model: None,
            branch_log,
        });
    }
    Ok(ExtractionOutcome {
        status: ExtractionStatus::Model,
        model: Some(model),
        branch_log,
    })
}
