//! Formula data model: literals, clauses of width one to three, DIMACS
//! ingestion with normalization, per-clause truth tables and assignment
//! evaluation.

use std::fmt;
use std::io::BufRead;

use thiserror::Error;

/// Maximum clause width handled by the compatibility-matrix encoding.
pub const MAX_CLAUSE_LEN: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    var: u32,
    negated: bool,
}

impl Literal {
    /// # Panics
    /// Panics if `var` is zero.
    pub fn new(var: u32, negated: bool) -> Self {
        assert!(var >= 1, "variables are numbered from 1");
        Literal { var, negated }
    }

    pub fn pos(var: u32) -> Self {
        Literal::new(var, false)
    }

    pub fn neg(var: u32) -> Self {
        Literal::new(var, true)
    }

    /// Converts a non-zero DIMACS integer.
    pub fn from_dimacs(lit: i32) -> Option<Self> {
        if lit == 0 {
            return None;
        }
        Some(Literal {
            var: lit.unsigned_abs(),
            negated: lit < 0,
        })
    }

    pub fn to_dimacs(self) -> i64 {
        if self.negated {
            -(self.var as i64)
        } else {
            self.var as i64
        }
    }

    pub fn var(self) -> u32 {
        self.var
    }

    pub fn is_negated(self) -> bool {
        self.negated
    }

    /// Value of the literal when its variable takes `value`.
    pub fn eval(self, value: bool) -> bool {
        value != self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "¬x{}", self.var)
        } else {
            write!(f, "x{}", self.var)
        }
    }
}

/// A disjunction of one to three literals over distinct variables, kept
/// sorted by variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause {
    lits: Vec<Literal>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClauseError {
    #[error("empty clause")]
    Empty,
    #[error("clause has {0} distinct literals, at most {MAX_CLAUSE_LEN} are supported")]
    TooLong(usize),
}

impl Clause {
    /// Normalizes a literal list: duplicates collapse, literals are sorted by
    /// variable. Returns `Ok(None)` for a tautology (`x ∨ ¬x ∨ ...`).
    pub fn new(lits: impl IntoIterator<Item = Literal>) -> Result<Option<Clause>, ClauseError> {
        let mut lits: Vec<Literal> = lits.into_iter().collect();
        lits.sort();
        lits.dedup();
        if lits.windows(2).any(|w| w[0].var == w[1].var) {
            return Ok(None);
        }
        match lits.len() {
            0 => Err(ClauseError::Empty),
            n if n > MAX_CLAUSE_LEN => Err(ClauseError::TooLong(n)),
            _ => Ok(Some(Clause { lits })),
        }
    }

    /// Builds a clause from DIMACS integers; panics on invalid input.
    /// Intended for tests and literals in code.
    pub fn from_dimacs(lits: &[i32]) -> Clause {
        Clause::new(lits.iter().map(|&l| Literal::from_dimacs(l).expect("zero literal")))
            .expect("invalid clause")
            .expect("tautological clause")
    }

    pub fn literals(&self) -> &[Literal] {
        &self.lits
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    /// Number of truth-table rows, `2^k`.
    pub fn num_rows(&self) -> usize {
        1 << self.lits.len()
    }

    pub fn max_var(&self) -> u32 {
        self.lits.last().map_or(0, |l| l.var)
    }

    pub fn contains_var(&self, var: u32) -> bool {
        self.lits.iter().any(|l| l.var == var)
    }

    pub fn is_satisfied_by(&self, a: &Assignment) -> bool {
        self.lits.iter().any(|l| l.eval(a.value(l.var)))
    }

    /// Value the clause's `pos`-th variable takes in canonical row `row`.
    /// The last variable is the least significant bit.
    pub fn row_value(&self, row: usize, pos: usize) -> bool {
        (row >> (self.lits.len() - 1 - pos)) & 1 == 1
    }

    /// Whether canonical row `row` satisfies the clause.
    pub fn row_satisfies(&self, row: usize) -> bool {
        self.lits
            .iter()
            .enumerate()
            .any(|(pos, l)| l.eval(self.row_value(row, pos)))
    }

    /// The unique row on which the clause is false.
    pub fn falsifying_row(&self) -> usize {
        self.lits
            .iter()
            .fold(0, |row, l| (row << 1) | usize::from(l.negated))
    }

    /// Canonical row index of the restriction of `a` to this clause.
    pub fn row_of(&self, a: &Assignment) -> usize {
        self.lits
            .iter()
            .fold(0, |row, l| (row << 1) | usize::from(a.value(l.var)))
    }

    pub fn truth_table(&self) -> TruthTable {
        let rows = (0..self.num_rows())
            .map(|row| TruthRow {
                values: self
                    .lits
                    .iter()
                    .enumerate()
                    .map(|(pos, l)| (l.var, self.row_value(row, pos)))
                    .collect(),
                value: self.row_satisfies(row),
            })
            .collect();
        TruthTable {
            clause: self.clone(),
            rows,
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.lits.iter().enumerate() {
            if i > 0 {
                write!(f, " ∨ ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// One row of a clause truth table: a local assignment and the clause value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthRow {
    pub values: Vec<(u32, bool)>,
    pub value: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    pub clause: Clause,
    pub rows: Vec<TruthRow>,
}

impl TruthTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// A total assignment over variables `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    pub fn all_false(num_vars: usize) -> Self {
        Assignment {
            values: vec![false; num_vars],
        }
    }

    /// Decodes the `index`-th assignment in canonical order: variable 1 is the
    /// most significant bit, false before true.
    pub fn from_index(num_vars: usize, index: u64) -> Self {
        Assignment {
            values: (0..num_vars)
                .map(|v| (index >> (num_vars - 1 - v)) & 1 == 1)
                .collect(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.values.len()
    }

    /// # Panics
    /// Panics if `var` is outside `1..=n`.
    pub fn value(&self, var: u32) -> bool {
        self.values[var as usize - 1]
    }

    pub fn set(&mut self, var: u32, value: bool) {
        self.values[var as usize - 1] = value;
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    /// DIMACS-style signed literals, one per variable.
    pub fn to_dimacs(&self) -> Vec<i64> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &v)| if v { i as i64 + 1 } else { -(i as i64 + 1) })
            .collect()
    }
}

/// Serialized as its DIMACS literal list.
impl serde::Serialize for Assignment {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serde::Serialize::serialize(&self.to_dimacs(), s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("clause {clause} mentions variable {var} but the formula has only {num_vars}")]
    VarOutOfRange { clause: usize, var: u32, num_vars: u32 },
}

/// A normalized 3-SAT formula `c_1 ∧ ... ∧ c_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cnf {
    num_vars: u32,
    clauses: Vec<Clause>,
}

/// Outcome of fixing one variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Restriction {
    Formula(Cnf),
    /// Some clause lost all of its literals.
    Contradiction,
}

impl Cnf {
    pub fn new(num_vars: u32, clauses: Vec<Clause>) -> Result<Self, CnfError> {
        for (i, c) in clauses.iter().enumerate() {
            if c.max_var() > num_vars {
                return Err(CnfError::VarOutOfRange {
                    clause: i,
                    var: c.max_var(),
                    num_vars,
                });
            }
        }
        Ok(Cnf { num_vars, clauses })
    }

    /// Convenience constructor from DIMACS integer lists; panics on invalid
    /// input.
    pub fn from_dimacs_clauses(num_vars: u32, clauses: &[&[i32]]) -> Cnf {
        Cnf::new(num_vars, clauses.iter().map(|c| Clause::from_dimacs(c)).collect())
            .expect("invalid formula")
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// Same formula restricted to the clauses selected by `keep`.
    pub fn retain_clauses(&self, mut keep: impl FnMut(usize) -> bool) -> Cnf {
        Cnf {
            num_vars: self.num_vars,
            clauses: self
                .clauses
                .iter()
                .enumerate()
                .filter(|(i, _)| keep(*i))
                .map(|(_, c)| c.clone())
                .collect(),
        }
    }

    /// # Panics
    /// Panics if `a` does not cover all variables.
    pub fn evaluate(&self, a: &Assignment) -> bool {
        assert!(
            a.num_vars() >= self.num_vars as usize,
            "assignment covers {} of {} variables",
            a.num_vars(),
            self.num_vars
        );
        self.clauses.iter().all(|c| c.is_satisfied_by(a))
    }

    /// Substitutes `var = value`: satisfied clauses disappear, falsified
    /// literals are removed from the rest.
    pub fn assign_var(&self, var: u32, value: bool) -> Restriction {
        assert!(var >= 1 && var <= self.num_vars, "variable {var} out of range");
        let mut clauses = Vec::with_capacity(self.clauses.len());
        for c in &self.clauses {
            match c.lits.iter().find(|l| l.var == var) {
                None => clauses.push(c.clone()),
                Some(l) if l.eval(value) => {}
                Some(_) => {
                    let lits: Vec<Literal> =
                        c.lits.iter().copied().filter(|l| l.var != var).collect();
                    if lits.is_empty() {
                        return Restriction::Contradiction;
                    }
                    clauses.push(Clause { lits });
                }
            }
        }
        Restriction::Formula(Cnf {
            num_vars: self.num_vars,
            clauses,
        })
    }

    /// Whether `var` occurs in any clause.
    pub fn mentions(&self, var: u32) -> bool {
        self.clauses.iter().any(|c| c.contains_var(var))
    }

    /// Renders the formula as DIMACS text.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in &c.lits {
                out.push_str(&l.to_dimacs().to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }
}

impl fmt::Display for Cnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return write!(f, "⊤");
        }
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                write!(f, " ∧ ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Non-fatal normalization events, reported on the diagnostic stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Warning {
    TautologyDropped { clause: usize },
    DuplicateLiterals { clause: usize },
    ClauseCountMismatch { declared: usize, found: usize },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::TautologyDropped { clause } => {
                write!(f, "clause {} is a tautology and was dropped", clause + 1)
            }
            Warning::DuplicateLiterals { clause } => {
                write!(f, "clause {} had duplicate literals", clause + 1)
            }
            Warning::ClauseCountMismatch { declared, found } => {
                write!(f, "header declares {declared} clauses, found {found}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed {
    pub cnf: Cnf,
    pub warnings: Vec<Warning>,
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("missing \"p cnf\" header")]
    MissingHeader,
    #[error("line {line}: malformed header {text:?}")]
    MalformedHeader { line: usize, text: String },
    #[error("line {line}: invalid literal {token:?}")]
    InvalidLiteral { line: usize, token: String },
    #[error("line {line}: variable {var} exceeds declared count {num_vars}")]
    VarOutOfRange { line: usize, var: u32, num_vars: u32 },
    #[error("clause {clause} has {len} distinct literals, at most {MAX_CLAUSE_LEN} are supported")]
    ClauseTooLong { clause: usize, len: usize },
    #[error("clause {clause} is empty: trivially UNSAT input")]
    EmptyClause { clause: usize },
    #[error("last clause is not terminated by 0")]
    UnterminatedClause,
}

impl ParseError {
    /// True for the distinguished "trivially UNSAT input" case.
    pub fn is_trivially_unsat(&self) -> bool {
        matches!(self, ParseError::EmptyClause { .. })
    }
}

/// Parses DIMACS CNF from a string.
pub fn parse_dimacs_str(text: &str) -> Result<Parsed, ParseError> {
    parse_dimacs(text.as_bytes())
}

/// Parses and normalizes DIMACS CNF. Clause numbers in errors and warnings
/// are zero-based positions in the input.
pub fn parse_dimacs<R: BufRead>(reader: R) -> Result<Parsed, ParseError> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses = Vec::new();
    let mut warnings = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut clause_index = 0usize;

    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        // SATLIB files end with a "%" trailer.
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(ParseError::MalformedHeader {
                    line: lineno,
                    text: line.clone(),
                });
            }
            header = Some(parse_header(trimmed).ok_or_else(|| ParseError::MalformedHeader {
                line: lineno,
                text: line.clone(),
            })?);
            continue;
        }
        let (num_vars, _) = header.ok_or(ParseError::MissingHeader)?;
        for token in trimmed.split_whitespace() {
            let value: i32 = token.parse().map_err(|_| ParseError::InvalidLiteral {
                line: lineno,
                token: token.to_string(),
            })?;
            match Literal::from_dimacs(value) {
                Some(lit) => {
                    if lit.var > num_vars {
                        return Err(ParseError::VarOutOfRange {
                            line: lineno,
                            var: lit.var,
                            num_vars,
                        });
                    }
                    current.push(lit);
                }
                None => {
                    let raw_len = current.len();
                    match Clause::new(current.drain(..)) {
                        Ok(Some(clause)) => {
                            if clause.len() != raw_len {
                                warnings.push(Warning::DuplicateLiterals {
                                    clause: clause_index,
                                });
                            }
                            clauses.push(clause);
                        }
                        Ok(None) => warnings.push(Warning::TautologyDropped {
                            clause: clause_index,
                        }),
                        Err(ClauseError::Empty) => {
                            return Err(ParseError::EmptyClause {
                                clause: clause_index,
                            })
                        }
                        Err(ClauseError::TooLong(len)) => {
                            return Err(ParseError::ClauseTooLong {
                                clause: clause_index,
                                len,
                            })
                        }
                    }
                    clause_index += 1;
                }
            }
        }
    }

    let (num_vars, declared) = header.ok_or(ParseError::MissingHeader)?;
    if !current.is_empty() {
        return Err(ParseError::UnterminatedClause);
    }
    if declared != clause_index {
        warnings.push(Warning::ClauseCountMismatch {
            declared,
            found: clause_index,
        });
    }
    Ok(Parsed {
        cnf: Cnf { num_vars, clauses },
        warnings,
    })
}

fn parse_header(line: &str) -> Option<(u32, usize)> {
    let mut parts = line.split_whitespace();
    if parts.next()? != "p" || parts.next()? != "cnf" {
        return None;
    }
    let n = parts.next()?.parse().ok()?;
    let m = parts.next()?.parse().ok()?;
    if parts.next().is_some() {
        return None;
    }
    Some((n, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn all_assignments(n: usize) -> impl Iterator<Item = Assignment> {
        (0..1u64 << n).map(move |i| Assignment::from_index(n, i))
    }

    #[test]
    fn parses_basic_file() {
        let parsed = parse_dimacs_str("p cnf 2 2\n1 2 0\n-1 0\n").unwrap();
        assert_eq!(parsed.cnf, Cnf::from_dimacs_clauses(2, &[&[1, 2], &[-1]]));
        assert!(parsed.warnings.is_empty());
    }

    #[test]
    fn skips_comments() {
        let parsed = parse_dimacs_str("c note\np cnf 1 1\n1 0\n").unwrap();
        assert_eq!(parsed.cnf, Cnf::from_dimacs_clauses(1, &[&[1]]));
    }

    #[test]
    fn drops_tautology_with_warning() {
        let parsed = parse_dimacs_str("p cnf 2 1\n1 -1 2 0\n").unwrap();
        assert_eq!(parsed.cnf.num_vars(), 2);
        assert!(parsed.cnf.clauses().is_empty());
        assert_eq!(parsed.warnings, vec![Warning::TautologyDropped { clause: 0 }]);
    }

    #[test]
    fn collapses_duplicates_and_sorts() {
        let parsed = parse_dimacs_str("p cnf 3 1\n3 -1 3 3 2 0\n").unwrap();
        assert_eq!(parsed.cnf, Cnf::from_dimacs_clauses(3, &[&[-1, 2, 3]]));
        assert_eq!(parsed.warnings, vec![Warning::DuplicateLiterals { clause: 0 }]);
    }

    #[test]
    fn clause_may_span_lines_and_satlib_trailer() {
        let parsed = parse_dimacs_str("p cnf 3 2\n1 2\n 3 0 -1\n0\n%\n0\n").unwrap();
        assert_eq!(parsed.cnf, Cnf::from_dimacs_clauses(3, &[&[1, 2, 3], &[-1]]));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_dimacs_str("1 2 0\n"),
            Err(ParseError::MissingHeader)
        ));
        assert!(matches!(
            parse_dimacs_str("p cnf x 2\n"),
            Err(ParseError::MalformedHeader { .. })
        ));
        assert!(matches!(
            parse_dimacs_str("p cnf 2 1\n1 3 0\n"),
            Err(ParseError::VarOutOfRange { var: 3, .. })
        ));
        assert!(matches!(
            parse_dimacs_str("p cnf 4 1\n1 2 3 4 0\n"),
            Err(ParseError::ClauseTooLong { len: 4, .. })
        ));
        assert!(matches!(
            parse_dimacs_str("p cnf 2 1\n1 a 0\n"),
            Err(ParseError::InvalidLiteral { .. })
        ));
        assert!(matches!(
            parse_dimacs_str("p cnf 2 1\n1 2\n"),
            Err(ParseError::UnterminatedClause)
        ));
        let empty = parse_dimacs_str("p cnf 2 2\n1 0\n0\n").unwrap_err();
        assert!(empty.is_trivially_unsat());
        assert!(empty.to_string().contains("trivially UNSAT"));
    }

    #[test]
    fn four_literals_collapsing_to_three_are_accepted() {
        let parsed = parse_dimacs_str("p cnf 3 1\n1 2 3 1 0\n").unwrap();
        assert_eq!(parsed.cnf.clauses()[0].len(), 3);
    }

    #[test]
    fn header_count_mismatch_warns() {
        let parsed = parse_dimacs_str("p cnf 2 3\n1 0\n").unwrap();
        assert_eq!(
            parsed.warnings,
            vec![Warning::ClauseCountMismatch { declared: 3, found: 1 }]
        );
    }

    #[test]
    fn evaluate_examples() {
        let contradiction = Cnf::from_dimacs_clauses(1, &[&[1], &[-1]]);
        assert!(all_assignments(1).all(|a| !contradiction.evaluate(&a)));

        let f = Cnf::from_dimacs_clauses(2, &[&[1, 2]]);
        assert!(f.evaluate(&Assignment::new(vec![false, true])));

        let g = Cnf::from_dimacs_clauses(2, &[&[1, 2], &[-1]]);
        let models: Vec<_> = all_assignments(2).filter(|a| g.evaluate(a)).collect();
        assert_eq!(models, vec![Assignment::new(vec![false, true])]);
    }

    #[test]
    fn truth_table_examples() {
        let t = Clause::from_dimacs(&[-1]).truth_table();
        assert_eq!(t.rows[0].values, vec![(1, false)]);
        assert!(t.rows[0].value);
        assert_eq!(t.rows[1].values, vec![(1, true)]);
        assert!(!t.rows[1].value);

        let t = Clause::from_dimacs(&[1, 2]).truth_table();
        let rows: Vec<_> = t.rows.iter().map(|r| (r.values.clone(), r.value)).collect();
        assert_eq!(
            rows,
            vec![
                (vec![(1, false), (2, false)], false),
                (vec![(1, false), (2, true)], true),
                (vec![(1, true), (2, false)], true),
                (vec![(1, true), (2, true)], true),
            ]
        );

        let t = Clause::from_dimacs(&[1, -2, 3]).truth_table();
        assert_eq!(t.len(), 8);
        assert_eq!(t.rows.iter().filter(|r| r.value).count(), 7);
        assert!(!t.rows[0b010].value);
        assert_eq!(Clause::from_dimacs(&[1, -2, 3]).falsifying_row(), 0b010);
    }

    #[test]
    fn assign_var_examples() {
        let f = Cnf::from_dimacs_clauses(2, &[&[1, 2], &[-1]]);
        assert_eq!(
            f.assign_var(1, false),
            Restriction::Formula(Cnf::from_dimacs_clauses(2, &[&[2]]))
        );
        let unit = Cnf::from_dimacs_clauses(1, &[&[1]]);
        assert_eq!(unit.assign_var(1, false), Restriction::Contradiction);
        let three = Cnf::from_dimacs_clauses(3, &[&[1, 2, 3]]);
        assert_eq!(
            three.assign_var(2, false),
            Restriction::Formula(Cnf::from_dimacs_clauses(3, &[&[1, 3]]))
        );
    }

    #[test]
    fn assignment_order_is_canonical() {
        assert_eq!(Assignment::from_index(3, 0).values(), &[false, false, false]);
        assert_eq!(Assignment::from_index(3, 1).values(), &[false, false, true]);
        assert_eq!(Assignment::from_index(3, 4).values(), &[true, false, false]);
        assert_eq!(Assignment::new(vec![false, true]).to_dimacs(), vec![-1, 2]);
    }

    #[test]
    fn dimacs_rendering() {
        let f = Cnf::from_dimacs_clauses(3, &[&[1, -2], &[3]]);
        assert_eq!(f.to_dimacs(), "p cnf 3 2\n1 -2 0\n3 0\n");
    }

    fn arb_cnf(max_vars: u32) -> impl Strategy<Value = Cnf> {
        (1..=max_vars).prop_flat_map(|n| {
            let lit = (1..=n as i32, any::<bool>()).prop_map(|(v, s)| if s { -v } else { v });
            let clause = prop::collection::vec(lit, 1..=3);
            prop::collection::vec(clause, 0..12).prop_map(move |raw| {
                let clauses = raw
                    .into_iter()
                    .filter_map(|c| {
                        Clause::new(c.into_iter().map(|l| Literal::from_dimacs(l).unwrap()))
                            .unwrap()
                    })
                    .collect();
                Cnf::new(n, clauses).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn normalization_is_idempotent(f in arb_cnf(6)) {
            let once = parse_dimacs_str(&f.to_dimacs()).unwrap();
            prop_assert!(once.warnings.is_empty());
            let twice = parse_dimacs_str(&once.cnf.to_dimacs()).unwrap();
            prop_assert_eq!(&once.cnf, &f);
            prop_assert_eq!(twice.cnf, once.cnf);
        }

        #[test]
        fn every_clause_has_one_false_row(f in arb_cnf(6)) {
            for c in f.clauses() {
                let t = c.truth_table();
                prop_assert_eq!(t.len(), c.num_rows());
                prop_assert_eq!(t.rows.iter().filter(|r| !r.value).count(), 1);
                prop_assert!(!t.rows[c.falsifying_row()].value);
            }
        }

        #[test]
        fn evaluate_agrees_with_truth_tables(f in arb_cnf(6)) {
            let n = f.num_vars() as usize;
            for a in all_assignments(n) {
                let via_tables = f
                    .clauses()
                    .iter()
                    .all(|c| c.truth_table().rows[c.row_of(&a)].value);
                prop_assert_eq!(f.evaluate(&a), via_tables);
            }
        }

        #[test]
        fn assign_var_preserves_models(f in arb_cnf(8), pick in any::<u32>(), value in any::<bool>()) {
            let n = f.num_vars() as usize;
            let var = pick % f.num_vars() + 1;
            let restricted = f.assign_var(var, value);
            for a in all_assignments(n).filter(|a| a.value(var) == value) {
                let expected = f.evaluate(&a);
                match &restricted {
                    Restriction::Formula(g) => {
                        prop_assert!(!g.mentions(var));
                        prop_assert_eq!(g.evaluate(&a), expected);
                    }
                    Restriction::Contradiction => prop_assert!(!expected),
                }
            }
        }
    }
}
