//! Depletion fixpoint engines over the compatibility matrix.
//!
//! Four variants share one decision rule: the formula is reported UNSAT as
//! soon as some box of the matrix is entirely false, and otherwise a
//! SAT claim is made once the matrix stops changing.
//!
//! * **basic**: synchronous steps `C'_ij = ⋀_k C_ik C_kj`, every box read
//!   from the previous matrix.
//! * **async**: in-place updates `C_ij ← C_ij ∧ C_ik C_kj` following a
//!   triplet schedule, mirrored to `C_ji`.
//! * **triangular**: for `i < k < j`, the three coupled updates of `C_ij`,
//!   `C_ik` and `C_kj`.
//! * **square**: the same depletion written over a 0/1 integer matrix with
//!   `min`, `max`, a sum over clauses and a floor.
//!
//! Every update only clears entries, so each variant terminates within
//! `entry_count + 1` sweeps.

use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cnf::Cnf;
use crate::compat::{CompatBox, CompatMatrix, MAX_BOX_DIM};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Basic,
    Async,
    Triangular,
    Square,
}

impl Variant {
    pub const ALL: [Variant; 4] = [
        Variant::Basic,
        Variant::Async,
        Variant::Triangular,
        Variant::Square,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Basic => "basic",
            Variant::Async => "async",
            Variant::Triangular => "triangular",
            Variant::Square => "square",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| format!("unknown variant {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Decision {
    #[serde(rename = "UNSAT")]
    Unsat,
    #[serde(rename = "SAT_CLAIM")]
    SatClaim,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Unsat => "UNSAT",
            Decision::SatClaim => "SAT_CLAIM",
        })
    }
}

/// Index triplet `(i, k, j)`: box `(i, j)` is depleted through clause `k`.
pub type Triplet = (usize, usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Schedule {
    /// Every `(i, k, j)` in `0..m`, lexicographic.
    AllTriplets,
    /// Every `i < k < j`, lexicographic.
    UpperTriplets,
    /// An explicit visiting order, repeated each sweep.
    Custom(Vec<Triplet>),
}

impl Schedule {
    fn for_each(&self, m: usize, mut f: impl FnMut(Triplet) -> ControlFlow<()>) -> ControlFlow<()> {
        match self {
            Schedule::AllTriplets => {
                for i in 0..m {
                    for k in 0..m {
                        for j in 0..m {
                            f((i, k, j))?;
                        }
                    }
                }
            }
            Schedule::UpperTriplets => {
                for i in 0..m {
                    for k in i + 1..m {
                        for j in k + 1..m {
                            f((i, k, j))?;
                        }
                    }
                }
            }
            Schedule::Custom(list) => {
                for &t in list {
                    f(t)?;
                }
            }
        }
        ControlFlow::Continue(())
    }

    /// All triplets of one sweep, in order.
    pub fn triplets(&self, m: usize) -> Vec<Triplet> {
        let mut out = Vec::new();
        let _ = self.for_each(m, |t| {
            out.push(t);
            ControlFlow::Continue(())
        });
        out
    }

    fn validate(&self, m: usize, upper_only: bool) -> Result<(), EngineError> {
        match self {
            Schedule::AllTriplets if upper_only => Err(EngineError::NotUpperTriplet { triplet: None }),
            Schedule::Custom(list) => {
                for &(i, k, j) in list {
                    if i >= m || k >= m || j >= m {
                        return Err(EngineError::TripletOutOfRange { triplet: (i, k, j), m });
                    }
                    if upper_only && !(i < k && k < j) {
                        return Err(EngineError::NotUpperTriplet {
                            triplet: Some((i, k, j)),
                        });
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

impl FromStr for Schedule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Schedule::AllTriplets),
            "upper" => Ok(Schedule::UpperTriplets),
            _ => Err(format!("unknown schedule {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RunStats {
    /// Completed sweeps, including the final one that changed nothing.
    pub sweeps: usize,
    /// Entries cleared over the whole run, mirrored entries included.
    pub box_updates: u64,
    pub terminated_early: bool,
    pub wall_time: Duration,
}

#[derive(Debug, Clone)]
pub struct EngineVerdict {
    pub decision: Decision,
    pub fixpoint: CompatMatrix,
    pub stats: RunStats,
    pub variant: Variant,
}

impl EngineVerdict {
    /// One-line JSON summary of the run.
    pub fn stats_json(&self) -> String {
        serde_json::json!({
            "variant": self.variant.name(),
            "sweeps": self.stats.sweeps,
            "box_updates": self.stats.box_updates,
            "early_exit": self.stats.terminated_early,
            "decision": self.decision.to_string(),
        })
        .to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("cannot multiply a {a_rows}×{a_cols} box by a {b_rows}×{b_cols} box")]
    DimensionMismatch {
        a_rows: usize,
        a_cols: usize,
        b_rows: usize,
        b_cols: usize,
    },
    #[error("triplet {triplet:?} out of range for {m} clauses")]
    TripletOutOfRange { triplet: Triplet, m: usize },
    #[error("triangular depletion needs triplets with i < k < j, got {triplet:?}")]
    NotUpperTriplet { triplet: Option<Triplet> },
    #[error("the {0} variant does not take a schedule")]
    ScheduleUnsupported(Variant),
    #[error("entry {value} at flat position ({row}, {col}) is not 0 or 1")]
    NonBinary { row: usize, col: usize, value: u8 },
}

/// Boolean matrix product `(AB)(μ,ν) = ⋁_α A(μ,α) ∧ B(α,ν)`.
pub fn bool_product(a: &CompatBox, b: &CompatBox) -> Result<CompatBox, EngineError> {
    if a.cols() != b.rows() {
        return Err(EngineError::DimensionMismatch {
            a_rows: a.rows(),
            a_cols: a.cols(),
            b_rows: b.rows(),
            b_cols: b.cols(),
        });
    }
    Ok(a.mul_unchecked(b))
}

/// UNSAT iff some box is entirely false.
pub fn decide(c: &CompatMatrix) -> Decision {
    if c.any_box_empty() {
        Decision::Unsat
    } else {
        Decision::SatClaim
    }
}

/// One synchronous depletion step: every box is recomputed from `c`.
/// `c` must satisfy `C_ji = C_ijᵀ`, as every built matrix does.
pub fn step_basic(c: &CompatMatrix) -> CompatMatrix {
    let m = c.m();
    let mut next = c.clone();
    // the update of a symmetric matrix is symmetric, so the lower triangle
    // is the transpose of the upper one
    for i in 0..m {
        for j in i..m {
            let mut acc = CompatBox::ones(c.dim(i), c.dim(j));
            for k in 0..m {
                acc = acc.and(&c.get(i, k).mul_unchecked(c.get(k, j)));
                if acc.is_empty() {
                    break;
                }
            }
            write_mirrored(&mut next, i, j, acc);
        }
    }
    next
}

type Observer<'a> = &'a mut dyn FnMut(usize, &CompatMatrix);

struct Runner<'a> {
    early_exit: bool,
    observer: Option<Observer<'a>>,
    started: Instant,
    initial_ones: u64,
}

impl<'a> Runner<'a> {
    fn new(c: &CompatMatrix, early_exit: bool, observer: Option<Observer<'a>>) -> Self {
        Runner {
            early_exit,
            observer,
            started: Instant::now(),
            initial_ones: c.count_ones(),
        }
    }

    fn observe(&mut self, sweep: usize, c: &CompatMatrix) {
        if let Some(obs) = self.observer.as_mut() {
            obs(sweep, c);
        }
    }

    fn finish(self, variant: Variant, fixpoint: CompatMatrix, sweeps: usize, early: bool) -> EngineVerdict {
        let stats = RunStats {
            sweeps,
            box_updates: self.initial_ones - fixpoint.count_ones(),
            terminated_early: early,
            wall_time: self.started.elapsed(),
        };
        EngineVerdict {
            decision: decide(&fixpoint),
            fixpoint,
            stats,
            variant,
        }
    }
}

fn basic_impl(mut c: CompatMatrix, mut runner: Runner<'_>) -> EngineVerdict {
    runner.observe(0, &c);
    if runner.early_exit && c.any_box_empty() {
        return runner.finish(Variant::Basic, c, 0, true);
    }
    let mut sweeps = 0;
    loop {
        let next = step_basic(&c);
        sweeps += 1;
        let changed = next != c;
        c = next;
        runner.observe(sweeps, &c);
        if !changed {
            return runner.finish(Variant::Basic, c, sweeps, false);
        }
        if runner.early_exit && c.any_box_empty() {
            return runner.finish(Variant::Basic, c, sweeps, true);
        }
    }
}

/// Writes `b` to `(i, j)` and its transpose to `(j, i)`.
fn write_mirrored(c: &mut CompatMatrix, i: usize, j: usize, b: CompatBox) {
    if i != j {
        c.set_box(j, i, b.transpose());
    }
    c.set_box(i, j, b);
}

/// `C_ij ← C_ij ∧ A·B`. Returns whether anything was cleared.
fn deplete(c: &mut CompatMatrix, i: usize, j: usize, a: CompatBox, b: CompatBox) -> bool {
    let cur = *c.get(i, j);
    let upd = cur.and(&a.mul_unchecked(&b));
    if upd == cur {
        return false;
    }
    write_mirrored(c, i, j, upd);
    true
}

/// Repeats sweeps of `visit` until one changes nothing. `visit` returns
/// `Break` when it produced an empty box and early exit is on.
fn sweep_to_quiescence(
    variant: Variant,
    mut c: CompatMatrix,
    mut runner: Runner<'_>,
    mut sweep: impl FnMut(&mut CompatMatrix, bool, &mut bool) -> ControlFlow<()>,
) -> EngineVerdict {
    runner.observe(0, &c);
    if runner.early_exit && c.any_box_empty() {
        return runner.finish(variant, c, 0, true);
    }
    let mut sweeps = 0;
    loop {
        let mut changed = false;
        let flow = sweep(&mut c, runner.early_exit, &mut changed);
        sweeps += 1;
        runner.observe(sweeps, &c);
        if flow.is_break() {
            return runner.finish(variant, c, sweeps, true);
        }
        if !changed {
            return runner.finish(variant, c, sweeps, false);
        }
    }
}

fn async_impl(c: CompatMatrix, schedule: &Schedule, runner: Runner<'_>) -> EngineVerdict {
    let m = c.m();
    sweep_to_quiescence(Variant::Async, c, runner, |c, early_exit, changed| {
        schedule.for_each(m, |(i, k, j)| {
            if deplete(c, i, j, *c.get(i, k), *c.get(k, j)) {
                *changed = true;
                if early_exit && c.get(i, j).is_empty() {
                    return ControlFlow::Break(());
                }
            }
            ControlFlow::Continue(())
        })
    })
}

fn triangular_impl(c: CompatMatrix, schedule: &Schedule, runner: Runner<'_>) -> EngineVerdict {
    let m = c.m();
    sweep_to_quiescence(Variant::Triangular, c, runner, |c, early_exit, changed| {
        schedule.for_each(m, |(i, k, j)| {
            // C_kjᵀ and C_ikᵀ are the stored mirrors C_jk and C_ki. Each
            // update reads the boxes as left by the previous one.
            let steps = [
                ((i, j), (i, k), (k, j)),
                ((i, k), (i, j), (j, k)),
                ((k, j), (k, i), (i, j)),
            ];
            for ((r, s), (a0, a1), (b0, b1)) in steps {
                let (a, b) = (*c.get(a0, a1), *c.get(b0, b1));
                if deplete(c, r, s, a, b) {
                    *changed = true;
                    if early_exit && c.get(r, s).is_empty() {
                        return ControlFlow::Break(());
                    }
                }
            }
            ControlFlow::Continue(())
        })
    })
}

/// Synchronous depletion to fixpoint, with early exit on an empty box.
pub fn run_basic(c: CompatMatrix) -> EngineVerdict {
    let runner = Runner::new(&c, true, None);
    basic_impl(c, runner)
}

/// Asynchronous depletion following `schedule`.
pub fn run_async(c: CompatMatrix, schedule: &Schedule) -> Result<EngineVerdict, EngineError> {
    EngineConfig::new(Variant::Async)
        .with_schedule(schedule.clone())
        .run(c)
}

/// Triangular depletion over a schedule of `i < k < j` triplets.
pub fn run_triangular(c: CompatMatrix, schedule: &Schedule) -> Result<EngineVerdict, EngineError> {
    EngineConfig::new(Variant::Triangular)
        .with_schedule(schedule.clone())
        .run(c)
}

/// Integer depletion over the 0/1 form of the matrix.
pub fn run_square(z: ZeroOneMatrix) -> Result<EngineVerdict, EngineError> {
    z.validate()?;
    let c = z.to_compat();
    Ok(square_impl(z, Runner::new(&c, true, None)))
}

/// The `D × D` matrix of 0/1 integers, `D = Σ 2^{k_i}`. Row `r` of the
/// flat matrix is stored as one zero-padded `[u8; 8]` per clause block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroOneMatrix {
    dims: Vec<usize>,
    offsets: Vec<usize>,
    side: usize,
    cells: Vec<[u8; MAX_BOX_DIM]>,
}

impl ZeroOneMatrix {
    pub fn from_compat(c: &CompatMatrix) -> Self {
        let dims: Vec<usize> = c.dims().collect();
        let mut z = ZeroOneMatrix::zeros(dims);
        let m = z.m();
        for i in 0..m {
            for j in 0..m {
                let b = c.get(i, j);
                for mu in 0..z.dims[i] {
                    for nu in 0..z.dims[j] {
                        z.set(i, j, mu, nu, u8::from(b.get(mu, nu)));
                    }
                }
            }
        }
        z
    }

    /// Raw constructor from the row-major flat matrix; entries are validated
    /// when the matrix is run.
    pub fn from_entries(dims: Vec<usize>, data: Vec<u8>) -> Self {
        let mut z = ZeroOneMatrix::zeros(dims);
        let side = z.side;
        assert_eq!(data.len(), side * side, "expected a {side}×{side} matrix");
        let m = z.m();
        for i in 0..m {
            for j in 0..m {
                for mu in 0..z.dims[i] {
                    for nu in 0..z.dims[j] {
                        z.set(i, j, mu, nu, data[(z.offsets[i] + mu) * side + z.offsets[j] + nu]);
                    }
                }
            }
        }
        z
    }

    fn zeros(dims: Vec<usize>) -> Self {
        assert!(dims.iter().all(|&d| d <= MAX_BOX_DIM), "box dimension above {MAX_BOX_DIM}");
        let offsets = offsets_of(&dims);
        let side: usize = dims.iter().sum();
        let cells = vec![[0; MAX_BOX_DIM]; side * dims.len()];
        ZeroOneMatrix {
            dims,
            offsets,
            side,
            cells,
        }
    }

    pub fn m(&self) -> usize {
        self.dims.len()
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn entry(&self, i: usize, j: usize, mu: usize, nu: usize) -> u8 {
        self.row(i, mu, j)[nu]
    }

    fn set(&mut self, i: usize, j: usize, mu: usize, nu: usize, value: u8) {
        let m = self.m();
        self.cells[(self.offsets[i] + mu) * m + j][nu] = value;
    }

    fn validate(&self) -> Result<(), EngineError> {
        let m = self.m();
        for row in 0..self.side {
            for j in 0..m {
                let cell = &self.cells[row * m + j];
                if let Some(nu) = cell[..self.dims[j]].iter().position(|&v| v > 1) {
                    return Err(EngineError::NonBinary {
                        row,
                        col: self.offsets[j] + nu,
                        value: cell[nu],
                    });
                }
            }
        }
        Ok(())
    }

    /// Converts back to boxes; every nonzero entry reads as true.
    pub fn to_compat(&self) -> CompatMatrix {
        let m = self.m();
        let mut boxes = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                let mut b = CompatBox::zeros(self.dims[i], self.dims[j]);
                for mu in 0..self.dims[i] {
                    for nu in 0..self.dims[j] {
                        if self.entry(i, j, mu, nu) != 0 {
                            b.set(mu, nu, true);
                        }
                    }
                }
                boxes.push(b);
            }
        }
        CompatMatrix::from_boxes(self.dims.clone(), boxes).expect("shapes are consistent")
    }

    fn row(&self, i: usize, mu: usize, j: usize) -> &[u8; MAX_BOX_DIM] {
        &self.cells[(self.offsets[i] + mu) * self.m() + j]
    }

    fn box_is_empty(&self, i: usize, j: usize) -> bool {
        (0..self.dims[i]).all(|mu| self.row(i, mu, j).iter().all(|&v| v == 0))
    }

    /// The element update written literally:
    /// `min{x, min{1, ⌊(1/m) Σ_β max_α x_{μα,iβ} · x_{αν,βj}⌋}}`.
    pub fn subtropical_update(&self, i: usize, j: usize, mu: usize, nu: usize) -> u8 {
        let m = self.m() as u32;
        let sum: u32 = (0..self.m())
            .map(|beta| {
                (0..self.dims[beta])
                    .map(|alpha| self.entry(i, beta, mu, alpha) * self.entry(beta, j, alpha, nu))
                    .max()
                    .unwrap_or(0) as u32
            })
            .sum();
        self.entry(i, j, mu, nu).min(1.min(sum / m) as u8)
    }

    /// Applies the element update to every entry of row `mu` of box `(i, j)`
    /// at once, mirroring into box `(j, i)`. Returns whether anything changed.
    fn update_row(&mut self, i: usize, j: usize, mu: usize) -> bool {
        let current = *self.row(i, mu, j);
        if current.iter().all(|&v| v == 0) {
            return false;
        }
        let m = self.m();
        let mut sums = [0u32; MAX_BOX_DIM];
        for beta in 0..m {
            let mut best = [0u8; MAX_BOX_DIM];
            let left = self.row(i, mu, beta);
            for (alpha, &x) in left[..self.dims[beta]].iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let right = self.row(beta, alpha, j);
                for nu in 0..MAX_BOX_DIM {
                    best[nu] = best[nu].max(x * right[nu]);
                }
            }
            let mut alive = false;
            for nu in 0..MAX_BOX_DIM {
                sums[nu] += u32::from(best[nu]);
                alive |= current[nu] != 0 && sums[nu] == beta as u32 + 1;
            }
            // every surviving entry already missed a clause: its floor is 0
            if !alive {
                break;
            }
        }
        let mut changed = false;
        for nu in 0..self.dims[j] {
            let next = current[nu].min(1.min(sums[nu] / m as u32) as u8);
            if next != current[nu] {
                self.set(i, j, mu, nu, next);
                self.set(j, i, nu, mu, next);
                changed = true;
            }
        }
        changed
    }
}

fn offsets_of(dims: &[usize]) -> Vec<usize> {
    dims.iter()
        .scan(0, |acc, &d| {
            let off = *acc;
            *acc += d;
            Some(off)
        })
        .collect()
}

fn square_impl(mut z: ZeroOneMatrix, mut runner: Runner<'_>) -> EngineVerdict {
    let m = z.m();
    let snapshot = |z: &ZeroOneMatrix| z.to_compat();
    let has_observer = runner.observer.is_some();
    if has_observer {
        runner.observe(0, &snapshot(&z));
    }
    if runner.early_exit && (0..m).any(|i| (0..m).any(|j| z.box_is_empty(i, j))) {
        return runner.finish(Variant::Square, snapshot(&z), 0, true);
    }
    let mut sweeps = 0;
    loop {
        let mut changed = false;
        let mut early = false;
        'sweep: for i in 0..m {
            for j in i..m {
                let mut box_changed = false;
                for mu in 0..z.dims[i] {
                    box_changed |= z.update_row(i, j, mu);
                }
                changed |= box_changed;
                if box_changed && runner.early_exit && z.box_is_empty(i, j) {
                    early = true;
                    break 'sweep;
                }
            }
        }
        sweeps += 1;
        if has_observer {
            runner.observe(sweeps, &snapshot(&z));
        }
        if early || !changed {
            return runner.finish(Variant::Square, snapshot(&z), sweeps, early);
        }
    }
}

/// Engine variant plus its options.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineConfig {
    pub variant: Variant,
    /// `None` selects the variant's default: all triplets for async, upper
    /// triplets for triangular.
    pub schedule: Option<Schedule>,
    /// Stop as soon as any box becomes empty.
    pub early_exit: bool,
}

impl EngineConfig {
    pub fn new(variant: Variant) -> Self {
        EngineConfig {
            variant,
            schedule: None,
            early_exit: true,
        }
    }

    pub fn with_schedule(mut self, schedule: Schedule) -> Self {
        self.schedule = Some(schedule);
        self
    }

    pub fn with_early_exit(mut self, early_exit: bool) -> Self {
        self.early_exit = early_exit;
        self
    }

    pub fn run(&self, c: CompatMatrix) -> Result<EngineVerdict, EngineError> {
        self.run_inner(c, None)
    }

    /// Runs and calls `on_sweep(s, C_s)` after the build (`s = 0`) and after
    /// every sweep.
    pub fn run_traced(
        &self,
        c: CompatMatrix,
        on_sweep: &mut dyn FnMut(usize, &CompatMatrix),
    ) -> Result<EngineVerdict, EngineError> {
        self.run_inner(c, Some(on_sweep))
    }

    /// Builds the matrix for `f` and runs. A formula with no clauses yields
    /// a SAT claim.
    pub fn decide_formula(&self, f: &Cnf) -> Result<EngineVerdict, EngineError> {
        self.run(CompatMatrix::build(f))
    }

    fn run_inner(&self, c: CompatMatrix, observer: Option<Observer<'_>>) -> Result<EngineVerdict, EngineError> {
        let runner = Runner::new(&c, self.early_exit, observer);
        match self.variant {
            Variant::Basic | Variant::Square if self.schedule.is_some() => {
                Err(EngineError::ScheduleUnsupported(self.variant))
            }
            Variant::Basic => Ok(basic_impl(c, runner)),
            Variant::Square => Ok(square_impl(ZeroOneMatrix::from_compat(&c), runner)),
            Variant::Async => {
                let schedule = self.schedule.as_ref().unwrap_or(&Schedule::AllTriplets);
                schedule.validate(c.m(), false)?;
                Ok(async_impl(c, schedule, runner))
            }
            Variant::Triangular => {
                let schedule = self.schedule.as_ref().unwrap_or(&Schedule::UpperTriplets);
                schedule.validate(c.m(), true)?;
                Ok(triangular_impl(c, schedule, runner))
            }
        }
    }
}
