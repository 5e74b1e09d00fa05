//! The compatibility matrix: an `m × m` grid of boxes, one per clause pair,
//! recording which truth-table rows of the two clauses are jointly
//! satisfying and consistent.

use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::cnf::{Clause, Cnf, TruthTable};

/// Largest box side: the row count of a three-literal clause.
pub const MAX_BOX_DIM: usize = 8;

/// A Boolean matrix of at most 8×8 entries. Row `μ` is packed into one byte,
/// bit `ν` holding entry `(μ, ν)`. Bits outside `rows × cols` are always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct CompatBox {
    rows: u8,
    cols: u8,
    bits: [u8; MAX_BOX_DIM],
}

fn col_mask(cols: usize) -> u8 {
    if cols >= 8 {
        0xff
    } else {
        (1u8 << cols) - 1
    }
}

fn check_dim(d: usize) {
    assert!(
        matches!(d, 1 | 2 | 4 | 8),
        "box dimension {d} is not one of 1, 2, 4, 8"
    );
}

impl CompatBox {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        check_dim(rows);
        check_dim(cols);
        CompatBox {
            rows: rows as u8,
            cols: cols as u8,
            bits: [0; MAX_BOX_DIM],
        }
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        let mut b = CompatBox::zeros(rows, cols);
        for r in 0..rows {
            b.bits[r] = col_mask(cols);
        }
        b
    }

    pub fn identity(dim: usize) -> Self {
        let mut b = CompatBox::zeros(dim, dim);
        for r in 0..dim {
            b.bits[r] = 1 << r;
        }
        b
    }

    /// Builds a box from packed rows; bits beyond `cols` are masked off.
    pub fn from_rows(rows: usize, cols: usize, packed: &[u8]) -> Self {
        assert_eq!(packed.len(), rows, "expected {rows} packed rows");
        let mut b = CompatBox::zeros(rows, cols);
        for (r, &bits) in packed.iter().enumerate() {
            b.bits[r] = bits & col_mask(cols);
        }
        b
    }

    /// Builds a box from 0/1 row literals, column 0 first: `["01", "10"]`.
    pub fn from_bit_strings(rows: &[&str]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut b = CompatBox::zeros(rows.len(), cols);
        for (r, s) in rows.iter().enumerate() {
            assert_eq!(s.len(), cols, "ragged rows");
            for (c, ch) in s.chars().enumerate() {
                b.set(r, c, ch == '1');
            }
        }
        b
    }

    pub fn rows(&self) -> usize {
        self.rows as usize
    }

    pub fn cols(&self) -> usize {
        self.cols as usize
    }

    pub fn row_bits(&self, r: usize) -> u8 {
        self.bits[r]
    }

    pub fn packed_rows(&self) -> &[u8] {
        &self.bits[..self.rows()]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows() && c < self.cols());
        self.bits[r] >> c & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows() && c < self.cols(), "entry ({r}, {c}) out of range");
        if value {
            self.bits[r] |= 1 << c;
        } else {
            self.bits[r] &= !(1 << c);
        }
    }

    pub fn is_empty(&self) -> bool {
        u64::from_le_bytes(self.bits) == 0
    }

    pub fn count_ones(&self) -> u32 {
        u64::from_le_bytes(self.bits).count_ones()
    }

    pub fn transpose(&self) -> Self {
        let mut t = CompatBox::zeros(self.cols(), self.rows());
        for r in 0..self.rows() {
            let mut row = self.bits[r];
            while row != 0 {
                let c = row.trailing_zeros() as usize;
                t.bits[c] |= 1 << r;
                row &= row - 1;
            }
        }
        t
    }

    /// Entry-wise conjunction. Both boxes must have the same shape.
    pub fn and(&self, other: &CompatBox) -> Self {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let bits = u64::from_le_bytes(self.bits) & u64::from_le_bytes(other.bits);
        CompatBox {
            rows: self.rows,
            cols: self.cols,
            bits: bits.to_le_bytes(),
        }
    }

    /// `self ≤ other` entry-wise.
    pub fn is_subset_of(&self, other: &CompatBox) -> bool {
        let a = u64::from_le_bytes(self.bits);
        a & u64::from_le_bytes(other.bits) == a
    }

    /// Boolean product `(AB)(μ,ν) = ⋁_α A(μ,α) ∧ B(α,ν)`; caller guarantees
    /// `self.cols == other.rows`.
    #[inline]
    pub(crate) fn mul_unchecked(&self, other: &CompatBox) -> Self {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = CompatBox {
            rows: self.rows,
            cols: other.cols,
            bits: [0; MAX_BOX_DIM],
        };
        for r in 0..self.rows() {
            let mut row = self.bits[r];
            let mut acc = 0u8;
            while row != 0 {
                acc |= other.bits[row.trailing_zeros() as usize];
                row &= row - 1;
            }
            out.bits[r] = acc;
        }
        out
    }
}

impl fmt::Debug for CompatBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CompatBox[{}]", self.bit_strings().join(","))
    }
}

impl CompatBox {
    /// Rows as 0/1 strings, column 0 first.
    pub fn bit_strings(&self) -> Vec<String> {
        (0..self.rows())
            .map(|r| {
                (0..self.cols())
                    .map(|c| if self.get(r, c) { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }
}

/// Whether row `mu` of `ti` and row `nu` of `tj` are compatible: both rows
/// satisfy their clauses, and shared variables take equal values.
pub fn rows_compatible(ti: &TruthTable, mu: usize, tj: &TruthTable, nu: usize) -> bool {
    let (ri, rj) = (&ti.rows[mu], &tj.rows[nu]);
    ri.value
        && rj.value
        && ri.values.iter().all(|&(var, value)| {
            rj.values
                .iter()
                .all(|&(other, other_value)| other != var || other_value == value)
        })
}

/// One row index per clause.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grid {
    pub row_choice: Vec<usize>,
}

impl Grid {
    pub fn new(row_choice: Vec<usize>) -> Self {
        Grid { row_choice }
    }
}

/// The `m × m` box matrix, boxes stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CompatMatrix {
    dims: Vec<u8>,
    boxes: Vec<CompatBox>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `C_ij(μ,ν) ≠ C_ji(ν,μ)`, reported once per unordered pair `i < j`.
    Asymmetric { i: usize, j: usize, mu: usize, nu: usize },
    /// A set entry off the main diagonal of a diagonal box.
    OffDiagonal { i: usize, mu: usize, nu: usize },
    /// Diagonal box of a freshly built matrix whose diagonal does not have
    /// exactly one zero.
    DiagonalZeros { i: usize, zeros: usize },
    /// A set entry in the row or column of a clause's falsifying row.
    FalsifyingRowSet { i: usize, j: usize },
    /// Total dimension exceeds `8m`.
    Oversized { dimension: usize, bound: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Asymmetric { i, j, mu, nu } => {
                write!(f, "C[{i}][{j}]({mu},{nu}) differs from C[{j}][{i}]({nu},{mu})")
            }
            Violation::OffDiagonal { i, mu, nu } => {
                write!(f, "diagonal box C[{i}][{i}] has off-diagonal entry ({mu},{nu})")
            }
            Violation::DiagonalZeros { i, zeros } => {
                write!(f, "diagonal box C[{i}][{i}] has {zeros} zero diagonal entries, expected 1")
            }
            Violation::FalsifyingRowSet { i, j } => {
                write!(f, "C[{i}][{j}] has an entry in a falsifying row or column")
            }
            Violation::Oversized { dimension, bound } => {
                write!(f, "total dimension {dimension} exceeds {bound}")
            }
        }
    }
}

impl CompatMatrix {
    /// Builds `C` for `f`. A formula without clauses yields the empty matrix.
    pub fn build(f: &Cnf) -> Self {
        let tables: Vec<TruthTable> = f.clauses().iter().map(Clause::truth_table).collect();
        let m = tables.len();
        let dims: Vec<u8> = tables.iter().map(|t| t.len() as u8).collect();
        let mut boxes = Vec::with_capacity(m * m);
        for ti in &tables {
            for tj in &tables {
                let mut b = CompatBox::zeros(ti.len(), tj.len());
                for mu in 0..ti.len() {
                    for nu in 0..tj.len() {
                        if rows_compatible(ti, mu, tj, nu) {
                            b.set(mu, nu, true);
                        }
                    }
                }
                boxes.push(b);
            }
        }
        CompatMatrix { dims, boxes }
    }

    /// Assembles a matrix from explicit boxes, row-major.
    pub fn from_boxes(dims: Vec<usize>, boxes: Vec<CompatBox>) -> Result<Self, FormatError> {
        let m = dims.len();
        if boxes.len() != m * m {
            return Err(FormatError::BoxCount {
                expected: m * m,
                found: boxes.len(),
            });
        }
        for &d in &dims {
            if !matches!(d, 1 | 2 | 4 | 8) {
                return Err(FormatError::BadDimension(d));
            }
        }
        for (idx, b) in boxes.iter().enumerate() {
            let (i, j) = (idx / m, idx % m);
            if b.rows() != dims[i] || b.cols() != dims[j] {
                return Err(FormatError::BoxShape { i, j });
            }
        }
        Ok(CompatMatrix {
            dims: dims.into_iter().map(|d| d as u8).collect(),
            boxes,
        })
    }

    /// Number of clauses `m`.
    pub fn m(&self) -> usize {
        self.dims.len()
    }

    /// Row count `2^{k_i}` of clause `i`.
    pub fn dim(&self, i: usize) -> usize {
        self.dims[i] as usize
    }

    pub fn dims(&self) -> impl Iterator<Item = usize> + '_ {
        self.dims.iter().map(|&d| d as usize)
    }

    /// `Σ 2^{k_i}`, the side of the flattened matrix.
    pub fn total_dimension(&self) -> usize {
        self.dims().sum()
    }

    pub fn get(&self, i: usize, j: usize) -> &CompatBox {
        &self.boxes[i * self.m() + j]
    }

    pub(crate) fn set_box(&mut self, i: usize, j: usize, b: CompatBox) {
        let m = self.m();
        self.boxes[i * m + j] = b;
    }

    pub fn boxes(&self) -> &[CompatBox] {
        &self.boxes
    }

    pub fn entry(&self, i: usize, j: usize, mu: usize, nu: usize) -> bool {
        self.get(i, j).get(mu, nu)
    }

    /// Sets a single entry without touching the mirrored entry.
    pub fn set_entry(&mut self, i: usize, j: usize, mu: usize, nu: usize, value: bool) {
        let m = self.m();
        self.boxes[i * m + j].set(mu, nu, value);
    }

    pub fn count_ones(&self) -> u64 {
        self.boxes.iter().map(|b| u64::from(b.count_ones())).sum()
    }

    /// Total number of entries over all boxes.
    pub fn entry_count(&self) -> u64 {
        let d = self.total_dimension() as u64;
        d * d
    }

    pub fn any_box_empty(&self) -> bool {
        self.boxes.iter().any(CompatBox::is_empty)
    }

    pub fn is_all_false(&self) -> bool {
        self.boxes.iter().all(CompatBox::is_empty)
    }

    /// `self ≤ other` entry-wise; shapes must agree.
    pub fn is_subset_of(&self, other: &CompatMatrix) -> bool {
        self.dims == other.dims
            && self
                .boxes
                .iter()
                .zip(&other.boxes)
                .all(|(a, b)| a.is_subset_of(b))
    }

    /// Whether `g` selects a set entry in every box.
    pub fn is_solution_grid(&self, g: &Grid) -> bool {
        let m = self.m();
        assert_eq!(g.row_choice.len(), m, "grid has wrong length");
        (0..m).all(|i| (0..m).all(|j| self.entry(i, j, g.row_choice[i], g.row_choice[j])))
    }

    /// Number of grid entries that are cleared in this matrix.
    pub fn cleared_grid_entries(&self, g: &Grid) -> usize {
        let m = self.m();
        (0..m)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.entry(i, j, g.row_choice[i], g.row_choice[j]))
            .count()
    }

    /// Symmetry `C_ij = C_jiᵀ` and diagonality of every `C_ii`. These hold
    /// for built matrices and are preserved by every depletion variant.
    pub fn check_structure(&self) -> Vec<Violation> {
        let m = self.m();
        let mut out = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let (a, b) = (self.get(i, j), self.get(j, i));
                'pair: for mu in 0..a.rows() {
                    for nu in 0..a.cols() {
                        if a.get(mu, nu) != b.get(nu, mu) {
                            out.push(Violation::Asymmetric { i, j, mu, nu });
                            break 'pair;
                        }
                    }
                }
            }
            let d = self.get(i, i);
            'diag: for mu in 0..d.rows() {
                for nu in 0..d.cols() {
                    if mu != nu && d.get(mu, nu) {
                        out.push(Violation::OffDiagonal { i, mu, nu });
                        break 'diag;
                    }
                }
            }
        }
        out
    }

    /// Everything `check_structure` checks, plus the properties that hold
    /// only before depletion: one zero on each diagonal box, falsifying rows
    /// and columns empty, and total dimension at most `8m`.
    pub fn check_built_structure(&self, f: &Cnf) -> Vec<Violation> {
        let mut out = self.check_structure();
        let m = self.m();
        let bound = 8 * m;
        if self.total_dimension() > bound {
            out.push(Violation::Oversized {
                dimension: self.total_dimension(),
                bound,
            });
        }
        let false_rows: Vec<usize> = f.clauses().iter().map(Clause::falsifying_row).collect();
        for i in 0..m {
            let d = self.get(i, i);
            let zeros = (0..d.rows()).filter(|&r| !d.get(r, r)).count();
            if zeros != 1 {
                out.push(Violation::DiagonalZeros { i, zeros });
            }
            for j in 0..m {
                let b = self.get(i, j);
                let row_set = b.row_bits(false_rows[i]) != 0;
                let col_set = (0..b.rows()).any(|r| b.get(r, false_rows[j]));
                if row_set || col_set {
                    out.push(Violation::FalsifyingRowSet { i, j });
                }
            }
        }
        out
    }

    /// Line-oriented text form: a `cm` header followed by the upper-triangle
    /// boxes. The lower triangle is implied by symmetry.
    pub fn serialize(&self) -> String {
        let m = self.m();
        let mut out = format!("cm {m}");
        for d in self.dims() {
            write!(out, " {d}").unwrap();
        }
        out.push('\n');
        for i in 0..m {
            for j in i..m {
                writeln!(out, "box {i} {j} {}", self.get(i, j).bit_strings().join(",")).unwrap();
            }
        }
        out
    }

    pub fn deserialize(text: &str) -> Result<Self, FormatError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(FormatError::MissingHeader)?;
        let mut parts = header.split_whitespace();
        if parts.next() != Some("cm") {
            return Err(FormatError::MissingHeader);
        }
        let m: usize = parse_num(parts.next(), 1)?;
        let dims: Vec<usize> = parts
            .map(|p| parse_num(Some(p), 1))
            .collect::<Result<_, _>>()?;
        if dims.len() != m {
            return Err(FormatError::HeaderDims {
                declared: m,
                found: dims.len(),
            });
        }
        if let Some(&d) = dims.iter().find(|&&d| !matches!(d, 1 | 2 | 4 | 8)) {
            return Err(FormatError::BadDimension(d));
        }

        let mut slots: Vec<Option<CompatBox>> = vec![None; m * m];
        for (idx, line) in lines {
            let lineno = idx + 1;
            let mut parts = line.split_whitespace();
            if parts.next() != Some("box") {
                return Err(FormatError::BadLine { line: lineno });
            }
            let i: usize = parse_num(parts.next(), lineno)?;
            let j: usize = parse_num(parts.next(), lineno)?;
            if i > j || j >= m {
                return Err(FormatError::BadIndex { line: lineno, i, j });
            }
            let body = parts.next().ok_or(FormatError::BadLine { line: lineno })?;
            if parts.next().is_some() {
                return Err(FormatError::BadLine { line: lineno });
            }
            let rows: Vec<&str> = body.split(',').collect();
            if rows.len() != dims[i]
                || rows.iter().any(|r| r.len() != dims[j] || !r.chars().all(|c| c == '0' || c == '1'))
            {
                return Err(FormatError::BoxShape { i, j });
            }
            if slots[i * m + j].is_some() {
                return Err(FormatError::DuplicateBox { i, j });
            }
            let b = CompatBox::from_bit_strings(&rows);
            slots[j * m + i] = Some(b.transpose());
            slots[i * m + j] = Some(b);
        }
        let boxes = slots
            .into_iter()
            .enumerate()
            .map(|(idx, b)| {
                b.ok_or(FormatError::MissingBox {
                    i: idx / m,
                    j: idx % m,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        CompatMatrix::from_boxes(dims, boxes)
    }
}

fn parse_num(token: Option<&str>, line: usize) -> Result<usize, FormatError> {
    token
        .and_then(|t| t.parse().ok())
        .ok_or(FormatError::BadLine { line })
}

impl fmt::Debug for CompatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("missing \"cm\" header")]
    MissingHeader,
    #[error("header declares {declared} clauses but lists {found} dimensions")]
    HeaderDims { declared: usize, found: usize },
    #[error("dimension {0} is not one of 1, 2, 4, 8")]
    BadDimension(usize),
    #[error("line {line}: malformed box line")]
    BadLine { line: usize },
    #[error("line {line}: box index ({i}, {j}) is not in the upper triangle")]
    BadIndex { line: usize, i: usize, j: usize },
    #[error("box ({i}, {j}) has the wrong shape")]
    BoxShape { i: usize, j: usize },
    #[error("box ({i}, {j}) appears twice")]
    DuplicateBox { i: usize, j: usize },
    #[error("box ({i}, {j}) is missing")]
    MissingBox { i: usize, j: usize },
    #[error("expected {expected} boxes, found {found}")]
    BoxCount { expected: usize, found: usize },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::Assignment;
    use proptest::prelude::*;

    fn contradiction() -> Cnf {
        Cnf::from_dimacs_clauses(1, &[&[1], &[-1]])
    }

    #[test]
    fn rows_compatible_conditions() {
        let pos = Clause::from_dimacs(&[1]).truth_table();
        let neg = Clause::from_dimacs(&[-1]).truth_table();
        // row 1 of (x1) is x1=T, row 0 of (¬x1) is x1=F
        assert!(!rows_compatible(&pos, 1, &neg, 0));
        // falsifying rows never match
        assert!(!rows_compatible(&pos, 0, &pos, 0));
        let other = Clause::from_dimacs(&[2, 3]).truth_table();
        for nu in 1..4 {
            assert!(rows_compatible(&pos, 1, &other, nu));
        }
        assert!(!rows_compatible(&pos, 1, &other, 0));
    }

    #[test]
    fn contradiction_box_is_empty() {
        let c = CompatMatrix::build(&contradiction());
        assert_eq!(*c.get(0, 1), CompatBox::zeros(2, 2));
        assert!(c.get(0, 1).is_empty());
        assert!(c.any_box_empty());
    }

    #[test]
    fn single_unit_clause_box() {
        let c = CompatMatrix::build(&Cnf::from_dimacs_clauses(1, &[&[1]]));
        assert_eq!(*c.get(0, 0), CompatBox::from_bit_strings(&["00", "01"]));
        assert!(!c.get(0, 0).is_empty());
    }

    #[test]
    fn three_wide_clauses_give_24_by_24() {
        let f = Cnf::from_dimacs_clauses(5, &[&[1, 2, 3], &[-1, 4, 5], &[2, -3, -5]]);
        let c = CompatMatrix::build(&f);
        assert_eq!(c.total_dimension(), 24);
        assert_eq!(c.entry_count(), 24 * 24);
    }

    #[test]
    fn is_box_empty_examples() {
        assert!(CompatBox::zeros(2, 2).is_empty());
        assert!(!CompatBox::from_bit_strings(&["00", "01"]).is_empty());
    }

    #[test]
    fn structure_of_built_matrix() {
        let f = Cnf::from_dimacs_clauses(4, &[&[1, 2, 3], &[-1, 4], &[2], &[-2, -3, -4]]);
        let c = CompatMatrix::build(&f);
        assert!(c.check_structure().is_empty());
        assert!(c.check_built_structure(&f).is_empty());
    }

    #[test]
    fn check_structure_reports_asymmetry() {
        let f = Cnf::from_dimacs_clauses(2, &[&[1], &[2]]);
        let mut c = CompatMatrix::build(&f);
        // (x1) row 1 and (x2) row 1 are compatible; break the mirror
        assert!(c.entry(0, 1, 1, 1));
        c.set_entry(1, 0, 1, 1, false);
        assert_eq!(
            c.check_structure(),
            vec![Violation::Asymmetric { i: 0, j: 1, mu: 1, nu: 1 }]
        );
    }

    #[test]
    fn check_structure_reports_off_diagonal() {
        let f = Cnf::from_dimacs_clauses(2, &[&[1, 2]]);
        let mut c = CompatMatrix::build(&f);
        c.set_entry(0, 0, 1, 2, true);
        assert_eq!(
            c.check_structure(),
            vec![Violation::OffDiagonal { i: 0, mu: 1, nu: 2 }]
        );
    }

    #[test]
    fn serialize_format_is_exact() {
        let c = CompatMatrix::build(&contradiction());
        assert_eq!(
            c.serialize(),
            "cm 2 2 2\nbox 0 0 00,01\nbox 0 1 00,00\nbox 1 1 10,00\n"
        );
        assert_eq!(CompatMatrix::deserialize(&c.serialize()).unwrap(), c);
        assert_eq!(c.serialize(), c.clone().serialize());
    }

    #[test]
    fn deserialize_rejects_bad_input() {
        let text = CompatMatrix::build(&contradiction()).serialize();
        let truncated = &text[..text.len() - 12];
        assert!(CompatMatrix::deserialize(truncated).is_err());
        assert_eq!(CompatMatrix::deserialize(""), Err(FormatError::MissingHeader));
        assert!(CompatMatrix::deserialize("cm 1 3\nbox 0 0 000,000,000\n").is_err());
        assert!(matches!(
            CompatMatrix::deserialize("cm 2 1 1\nbox 1 0 1\nbox 0 0 1\nbox 1 1 1\n"),
            Err(FormatError::BadIndex { .. })
        ));
        assert!(matches!(
            CompatMatrix::deserialize("cm 1 2\nbox 0 0 00,01\nbox 0 0 00,01\n"),
            Err(FormatError::DuplicateBox { .. })
        ));
        assert!(matches!(
            CompatMatrix::deserialize("cm 1 2\nbox 0 0 00,0x\n"),
            Err(FormatError::BoxShape { .. })
        ));
        assert_eq!(CompatMatrix::deserialize("cm 0\n").unwrap().m(), 0);
    }

    #[test]
    fn transpose_and_product_shapes() {
        let b = CompatBox::from_bit_strings(&["0110", "1000"]);
        let t = b.transpose();
        assert_eq!((t.rows(), t.cols()), (4, 2));
        assert_eq!(t.bit_strings(), vec!["01", "10", "10", "00"]);
        assert_eq!(t.transpose(), b);
    }

    fn arb_small_cnf() -> impl Strategy<Value = Cnf> {
        (2u32..=7).prop_flat_map(|n| {
            let lit = (1..=n as i32, any::<bool>()).prop_map(|(v, s)| if s { -v } else { v });
            prop::collection::vec(prop::collection::vec(lit, 1..=3), 1..8).prop_map(move |raw| {
                let clauses = raw
                    .into_iter()
                    .filter_map(|c| {
                        Clause::new(c.into_iter().map(|l| crate::cnf::Literal::from_dimacs(l).unwrap()))
                            .unwrap()
                    })
                    .collect();
                Cnf::new(n, clauses).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn built_matrices_are_well_formed(f in arb_small_cnf()) {
            let c = CompatMatrix::build(&f);
            prop_assert!(c.check_built_structure(&f).is_empty());
            prop_assert_eq!(CompatMatrix::deserialize(&c.serialize()).unwrap(), c);
        }

        #[test]
        fn entries_match_joint_restrictions(f in arb_small_cnf()) {
            // C_ij(μ,ν) = 1 iff some total assignment restricts to rows μ, ν
            // of c_i, c_j and both rows satisfy their clauses.
            let c = CompatMatrix::build(&f);
            let n = f.num_vars() as usize;
            let m = f.num_clauses();
            let mut witnessed = vec![vec![[[false; 8]; 8]; m]; m];
            for idx in 0..1u64 << n {
                let a = Assignment::from_index(n, idx);
                let rows: Vec<usize> = f.clauses().iter().map(|cl| cl.row_of(&a)).collect();
                let sat: Vec<bool> = f.clauses().iter().map(|cl| cl.is_satisfied_by(&a)).collect();
                for i in 0..m {
                    for j in 0..m {
                        if sat[i] && sat[j] {
                            witnessed[i][j][rows[i]][rows[j]] = true;
                        }
                    }
                }
            }
            for i in 0..m {
                for j in 0..m {
                    for mu in 0..c.dim(i) {
                        for nu in 0..c.dim(j) {
                            prop_assert_eq!(c.entry(i, j, mu, nu), witnessed[i][j][mu][nu]);
                        }
                    }
                }
            }
        }
    }
}
