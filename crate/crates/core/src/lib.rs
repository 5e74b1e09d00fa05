//! Compatibility-matrix encoding of 3-SAT and depletion fixpoint engines,
//! with a brute-force oracle and an audit harness that checks the engines'
//! verdicts against it.
//!
//! A formula `c_1 ∧ ... ∧ c_m` with clauses of width at most three is
//! encoded as an `m × m` grid of Boolean boxes ([`compat::CompatMatrix`]).
//! Box `C_ij` records which truth-table rows of `c_i` and `c_j` are both
//! satisfying and agree on shared variables. The engines in [`engine`]
//! repeatedly clear entries that cannot be extended through a third clause;
//! an entirely false box proves the formula unsatisfiable.

pub mod audit;
pub mod cli;
pub mod cnf;
pub mod compat;
pub mod engine;
pub mod extract;
pub mod oracle;

pub use cnf::{parse_dimacs, parse_dimacs_str, Assignment, Clause, Cnf, Literal, ParseError};
pub use compat::{CompatBox, CompatMatrix, Grid};
pub use engine::{Decision, EngineConfig, EngineVerdict, Schedule, Variant};
pub use oracle::OracleDecision;
