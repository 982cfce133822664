//! Cells and table-backed finite Gray-categories.
//!
//! A [`FiniteGrayCategory`] stores every operation as an explicit table over
//! its four cell sets. All operations are checked: arguments must be
//! boundary-compatible and the table must hold an entry for them.

mod fixtures;
mod report;
mod validate;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub use fixtures::{build_bicharacter_gray, build_chain, build_walking, AbelianGroup};
pub use report::{Coverage, ValidationReport, Violation};
pub use validate::validate_gray_category;

pub(crate) use report::Checker;
pub(crate) use validate::Incidence;

/// Default node budget for every brute-force search.
pub const DEFAULT_SIZE_BOUND: u64 = 1_000_000;

/// Search budget, overridable through `GRAYCAT_SIZE_BOUND`.
pub fn size_bound() -> u64 {
    std::env::var("GRAYCAT_SIZE_BOUND")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SIZE_BOUND)
}

/// A cell of a finite Gray-category: its dimension and its index within that dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub dim: u8,
    pub idx: u32,
}

impl Cell {
    pub const fn new(dim: u8, idx: u32) -> Self {
        Cell { dim, idx }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}#{}", self.dim, self.idx)
    }
}

/// The ten binary operation tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    /// `g #₀ f` on 1-cells.
    Comp0,
    /// `ψ #₁ φ` on 2-cells.
    Comp1,
    /// `Δ #₂ Γ` on 3-cells.
    Comp2,
    /// `g #₀ φ`.
    WhiskL12,
    /// `ψ #₀ f`.
    WhiskR21,
    /// `g #₀ Γ`.
    WhiskL13,
    /// `Δ #₀ f`.
    WhiskR31,
    /// `φ #₁ Δ`.
    MidL23,
    /// `Γ #₁ ψ`.
    MidR32,
    /// `ψ ⊗ φ`.
    Tensor,
}

impl Op {
    pub const ALL: [Op; 10] = [
        Op::Comp0,
        Op::Comp1,
        Op::Comp2,
        Op::WhiskL12,
        Op::WhiskR21,
        Op::WhiskL13,
        Op::WhiskR31,
        Op::MidL23,
        Op::MidR32,
        Op::Tensor,
    ];

    pub fn arg_dims(self) -> (u8, u8) {
        match self {
            Op::Comp0 => (1, 1),
            Op::Comp1 => (2, 2),
            Op::Comp2 => (3, 3),
            Op::WhiskL12 => (1, 2),
            Op::WhiskR21 => (2, 1),
            Op::WhiskL13 => (1, 3),
            Op::WhiskR31 => (3, 1),
            Op::MidL23 => (2, 3),
            Op::MidR32 => (3, 2),
            Op::Tensor => (2, 2),
        }
    }

    pub fn result_dim(self) -> u8 {
        match self {
            Op::Comp0 => 1,
            Op::Comp1 | Op::WhiskL12 | Op::WhiskR21 => 2,
            _ => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Op::Comp0 => "comp0_1",
            Op::Comp1 => "comp1_2",
            Op::Comp2 => "comp2_3",
            Op::WhiskL12 => "whisk_1on2_left",
            Op::WhiskR21 => "whisk_2on1_right",
            Op::WhiskL13 => "whisk_1on3_left",
            Op::WhiskR31 => "whisk_3on1_right",
            Op::MidL23 => "whisk_2on3_mid_left",
            Op::MidR32 => "whisk_3on2_mid_right",
            Op::Tensor => "tensor",
        }
    }

    /// Keyword used by the text format.
    pub fn keyword(self) -> &'static str {
        match self {
            Op::Comp0 => "comp0",
            Op::Comp1 => "comp1",
            Op::Comp2 => "comp2",
            Op::WhiskL12 => "whisk l12",
            Op::WhiskR21 => "whisk r21",
            Op::WhiskL13 => "whisk l13",
            Op::WhiskR31 => "whisk r31",
            Op::MidL23 => "whisk m23",
            Op::MidR32 => "whisk m32",
            Op::Tensor => "tensor",
        }
    }

    pub fn from_name(s: &str) -> Option<Op> {
        Op::ALL.into_iter().find(|op| op.name() == s)
    }

    pub fn whisker_kind(s: &str) -> Option<Op> {
        match s {
            "l12" => Some(Op::WhiskL12),
            "r21" => Some(Op::WhiskR21),
            "l13" => Some(Op::WhiskL13),
            "r31" => Some(Op::WhiskR31),
            "m23" => Some(Op::MidL23),
            "m32" => Some(Op::MidR32),
            _ => None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrayError {
    #[error("dangling cell id `{0}`")]
    Dangling(String),
    #[error("{op}: `{left}` and `{right}` are not boundary-compatible")]
    Typing {
        op: &'static str,
        left: String,
        right: String,
    },
    #[error("{op}: no table entry for (`{left}`, `{right}`)")]
    Closure {
        op: &'static str,
        left: String,
        right: String,
    },
    #[error("`{0}` is a 3-cell; there is no identity above dimension 3")]
    NoIdentity(String),
    #[error("`{0}` has no two-sided inverse")]
    NotInvertible(String),
    #[error("bicharacter is not bilinear at ({0}, {1})")]
    NotBilinear(String, String),
    #[error("incidence mismatch: {0}")]
    Mismatch(String),
    #[error("search exceeds the size bound of {0} nodes")]
    Infeasible(u64),
    #[error("nested mapping space too large: {0}")]
    TooLarge(String),
    #[error("malformed structure: {0}")]
    Structure(String),
}

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Table {
    cols: usize,
    data: Vec<u32>,
}

impl Table {
    fn new(rows: usize, cols: usize) -> Self {
        Table {
            cols,
            data: vec![NONE; rows * cols],
        }
    }

    fn get(&self, a: u32, b: u32) -> Option<u32> {
        let v = self.data[a as usize * self.cols + b as usize];
        (v != NONE).then_some(v)
    }

    fn set(&mut self, a: u32, b: u32, v: Option<u32>) {
        self.data[a as usize * self.cols + b as usize] = v.unwrap_or(NONE);
    }
}

/// A finite Gray-category given by explicit operation tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGrayCategory {
    name: String,
    names: [Vec<String>; 4],
    src: [Vec<u32>; 4],
    tgt: [Vec<u32>; 4],
    ids: [Vec<u32>; 3],
    tables: Vec<Table>,
    inv: [Vec<u32>; 2],
    lookup: [HashMap<String, u32>; 4],
}

impl FiniteGrayCategory {
    /// A category with the given cells and boundaries and empty tables.
    ///
    /// `cells[k]` lists `(name, src, tgt)`; boundaries are indices into dimension `k-1`
    /// and are ignored for `k = 0`.
    pub fn from_globular(
        name: impl Into<String>,
        cells: [Vec<(String, u32, u32)>; 4],
    ) -> Result<Self, GrayError> {
        let mut names: [Vec<String>; 4] = Default::default();
        let mut src: [Vec<u32>; 4] = Default::default();
        let mut tgt: [Vec<u32>; 4] = Default::default();
        let mut lookup: [HashMap<String, u32>; 4] = Default::default();
        for (k, list) in cells.into_iter().enumerate() {
            for (i, (n, s, t)) in list.into_iter().enumerate() {
                if lookup[k].insert(n.clone(), i as u32).is_some() {
                    return Err(GrayError::Structure(format!(
                        "duplicate {k}-cell id `{n}`"
                    )));
                }
                if k > 0 {
                    let below = names[k - 1].len() as u32;
                    if s >= below || t >= below {
                        return Err(GrayError::Dangling(n));
                    }
                }
                names[k].push(n);
                src[k].push(s);
                tgt[k].push(t);
            }
        }
        let sizes: Vec<usize> = names.iter().map(Vec::len).collect();
        let tables = Op::ALL
            .iter()
            .map(|op| {
                let (l, r) = op.arg_dims();
                Table::new(sizes[l as usize], sizes[r as usize])
            })
            .collect();
        Ok(FiniteGrayCategory {
            name: name.into(),
            ids: [
                vec![NONE; sizes[0]],
                vec![NONE; sizes[1]],
                vec![NONE; sizes[2]],
            ],
            inv: [vec![NONE; sizes[2]], vec![NONE; sizes[3]]],
            names,
            src,
            tgt,
            tables,
            lookup,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn count(&self, dim: u8) -> usize {
        self.names[dim as usize].len()
    }

    pub fn counts(&self) -> [usize; 4] {
        [self.count(0), self.count(1), self.count(2), self.count(3)]
    }

    pub fn cells(&self, dim: u8) -> impl Iterator<Item = Cell> + '_ {
        (0..self.count(dim) as u32).map(move |i| Cell::new(dim, i))
    }

    pub fn cell_name(&self, c: Cell) -> &str {
        &self.names[c.dim as usize][c.idx as usize]
    }

    /// Name of a cell, tolerant of out-of-range cells.
    pub fn show(&self, c: Cell) -> String {
        self.names
            .get(c.dim as usize)
            .and_then(|v| v.get(c.idx as usize))
            .cloned()
            .unwrap_or_else(|| format!("?{c}"))
    }

    pub fn find(&self, dim: u8, name: &str) -> Option<Cell> {
        self.lookup
            .get(dim as usize)?
            .get(name)
            .map(|&i| Cell::new(dim, i))
    }

    pub fn contains(&self, c: Cell) -> bool {
        c.dim <= 3 && (c.idx as usize) < self.count(c.dim)
    }

    pub fn src(&self, c: Cell) -> Cell {
        assert!(c.dim > 0, "0-cells have no source");
        Cell::new(c.dim - 1, self.src[c.dim as usize][c.idx as usize])
    }

    pub fn tgt(&self, c: Cell) -> Cell {
        assert!(c.dim > 0, "0-cells have no target");
        Cell::new(c.dim - 1, self.tgt[c.dim as usize][c.idx as usize])
    }

    /// Iterated source down to dimension `j`.
    pub fn s(&self, mut c: Cell, j: u8) -> Cell {
        while c.dim > j {
            c = self.src(c);
        }
        c
    }

    /// Iterated target down to dimension `j`.
    pub fn t(&self, mut c: Cell, j: u8) -> Cell {
        while c.dim > j {
            c = self.tgt(c);
        }
        c
    }

    pub fn stored_id(&self, c: Cell) -> Option<Cell> {
        if c.dim > 2 {
            return None;
        }
        let v = self.ids[c.dim as usize][c.idx as usize];
        (v != NONE).then(|| Cell::new(c.dim + 1, v))
    }

    pub fn set_id(&mut self, c: Cell, id: Option<Cell>) {
        self.ids[c.dim as usize][c.idx as usize] = id.map_or(NONE, |i| i.idx);
    }

    pub fn id(&self, c: Cell) -> Result<Cell, GrayError> {
        if c.dim > 2 {
            return Err(GrayError::NoIdentity(self.show(c)));
        }
        self.stored_id(c).ok_or_else(|| GrayError::Closure {
            op: "identity",
            left: self.show(c),
            right: String::new(),
        })
    }

    pub fn is_identity(&self, c: Cell) -> bool {
        c.dim > 0 && self.stored_id(self.src(c)) == Some(c)
    }

    pub fn entry(&self, op: Op, a: Cell, b: Cell) -> Option<Cell> {
        self.tables[op as usize]
            .get(a.idx, b.idx)
            .map(|v| Cell::new(op.result_dim(), v))
    }

    pub fn set_entry(&mut self, op: Op, a: Cell, b: Cell, r: Option<Cell>) {
        self.tables[op as usize].set(a.idx, b.idx, r.map(|c| c.idx));
    }

    /// All stored entries of one table, in argument order.
    pub fn entries(&self, op: Op) -> Vec<(Cell, Cell, Cell)> {
        let (l, r) = op.arg_dims();
        let mut out = Vec::new();
        for a in self.cells(l) {
            for b in self.cells(r) {
                if let Some(c) = self.entry(op, a, b) {
                    out.push((a, b, c));
                }
            }
        }
        out
    }

    pub fn stored_inverse(&self, c: Cell) -> Option<Cell> {
        if !(2..=3).contains(&c.dim) {
            return None;
        }
        let v = self.inv[c.dim as usize - 2][c.idx as usize];
        (v != NONE).then(|| Cell::new(c.dim, v))
    }

    pub fn set_inverse(&mut self, c: Cell, inv: Option<Cell>) {
        self.inv[c.dim as usize - 2][c.idx as usize] = inv.map_or(NONE, |i| i.idx);
    }

    /// Whether `op(a, b)` is boundary-compatible.
    pub fn compatible(&self, op: Op, a: Cell, b: Cell) -> bool {
        if (a.dim, b.dim) != op.arg_dims() || !self.contains(a) || !self.contains(b) {
            return false;
        }
        match op {
            Op::Comp0 | Op::Comp1 | Op::Comp2 => self.src(a) == self.tgt(b),
            Op::WhiskL12 | Op::WhiskL13 => self.src(a) == self.t(b, 0),
            Op::WhiskR21 | Op::WhiskR31 => self.s(a, 0) == self.tgt(b),
            Op::MidL23 => self.src(a) == self.t(b, 1),
            Op::MidR32 => self.s(a, 1) == self.tgt(b),
            Op::Tensor => self.s(a, 0) == self.t(b, 0),
        }
    }

    /// Checked table application.
    pub fn apply(&self, op: Op, a: Cell, b: Cell) -> Result<Cell, GrayError> {
        if !self.compatible(op, a, b) {
            return Err(GrayError::Typing {
                op: op.name(),
                left: self.show(a),
                right: self.show(b),
            });
        }
        self.entry(op, a, b).ok_or_else(|| GrayError::Closure {
            op: op.name(),
            left: self.show(a),
            right: self.show(b),
        })
    }

    /// The boundary `(src, tgt)` that `op(a, b)` must have.
    pub fn forced_boundary(&self, op: Op, a: Cell, b: Cell) -> Result<(Cell, Cell), GrayError> {
        Ok(match op {
            Op::Comp0 | Op::Comp1 | Op::Comp2 => (self.src(b), self.tgt(a)),
            Op::WhiskL12 => (self.comp0(a, self.src(b))?, self.comp0(a, self.tgt(b))?),
            Op::WhiskR21 => (self.comp0(self.src(a), b)?, self.comp0(self.tgt(a), b)?),
            Op::WhiskL13 => (self.wl(a, self.src(b))?, self.wl(a, self.tgt(b))?),
            Op::WhiskR31 => (self.wr(self.src(a), b)?, self.wr(self.tgt(a), b)?),
            Op::MidL23 => (self.comp1(a, self.src(b))?, self.comp1(a, self.tgt(b))?),
            Op::MidR32 => (self.comp1(self.src(a), b)?, self.comp1(self.tgt(a), b)?),
            Op::Tensor => {
                let (g, g2) = (self.src(a), self.tgt(a));
                let (f, f2) = (self.src(b), self.tgt(b));
                (
                    self.comp1(self.wl(g2, b)?, self.wr(a, f)?)?,
                    self.comp1(self.wr(a, f2)?, self.wl(g, b)?)?,
                )
            }
        })
    }

    pub fn comp0(&self, g: Cell, f: Cell) -> Result<Cell, GrayError> {
        self.apply(Op::Comp0, g, f)
    }

    pub fn comp1(&self, psi: Cell, phi: Cell) -> Result<Cell, GrayError> {
        self.apply(Op::Comp1, psi, phi)
    }

    pub fn comp2(&self, d: Cell, g: Cell) -> Result<Cell, GrayError> {
        self.apply(Op::Comp2, d, g)
    }

    pub fn wl(&self, g: Cell, phi: Cell) -> Result<Cell, GrayError> {
        self.apply(Op::WhiskL12, g, phi)
    }

    pub fn wr(&self, psi: Cell, f: Cell) -> Result<Cell, GrayError> {
        self.apply(Op::WhiskR21, psi, f)
    }

    pub fn wl3(&self, g: Cell, gamma: Cell) -> Result<Cell, GrayError> {
        self.apply(Op::WhiskL13, g, gamma)
    }

    pub fn wr3(&self, gamma: Cell, f: Cell) -> Result<Cell, GrayError> {
        self.apply(Op::WhiskR31, gamma, f)
    }

    pub fn mid_l(&self, phi: Cell, d: Cell) -> Result<Cell, GrayError> {
        self.apply(Op::MidL23, phi, d)
    }

    pub fn mid_r(&self, g: Cell, psi: Cell) -> Result<Cell, GrayError> {
        self.apply(Op::MidR32, g, psi)
    }

    pub fn tensor(&self, psi: Cell, phi: Cell) -> Result<Cell, GrayError> {
        self.apply(Op::Tensor, psi, phi)
    }

    pub fn tensor_inv(&self, psi: Cell, phi: Cell) -> Result<Cell, GrayError> {
        self.inv(self.tensor(psi, phi)?)
    }

    /// `a #₀ b` for whichever of 1-cell composition or whiskering applies.
    pub fn h0(&self, a: Cell, b: Cell) -> Result<Cell, GrayError> {
        let op = match (a.dim, b.dim) {
            (1, 1) => Op::Comp0,
            (1, 2) => Op::WhiskL12,
            (2, 1) => Op::WhiskR21,
            (1, 3) => Op::WhiskL13,
            (3, 1) => Op::WhiskR31,
            _ => {
                return Err(GrayError::Typing {
                    op: "#0",
                    left: self.show(a),
                    right: self.show(b),
                })
            }
        };
        self.apply(op, a, b)
    }

    /// `a #₁ b`; on two 3-cells this is `(Γ #₁ tgt Δ) #₂ (src Γ #₁ Δ)`.
    pub fn h1(&self, a: Cell, b: Cell) -> Result<Cell, GrayError> {
        match (a.dim, b.dim) {
            (2, 2) => self.comp1(a, b),
            (2, 3) => self.mid_l(a, b),
            (3, 2) => self.mid_r(a, b),
            (3, 3) => {
                let first = self.mid_l(self.src(a), b)?;
                let second = self.mid_r(a, self.tgt(b))?;
                self.comp2(second, first)
            }
            _ => Err(GrayError::Typing {
                op: "#1",
                left: self.show(a),
                right: self.show(b),
            }),
        }
    }

    /// Two-sided inverse of a 2-cell under `#₁` or a 3-cell under `#₂`.
    pub fn inverse(&self, c: Cell) -> Option<Cell> {
        if !(2..=3).contains(&c.dim) || !self.contains(c) {
            return None;
        }
        if let Some(w) = self.stored_inverse(c) {
            return Some(w);
        }
        let op = if c.dim == 2 { Op::Comp1 } else { Op::Comp2 };
        let (s, t) = (self.src(c), self.tgt(c));
        let (ids, idt) = (self.stored_id(s)?, self.stored_id(t)?);
        self.cells(c.dim).find(|&d| {
            self.src(d) == t
                && self.tgt(d) == s
                && self.entry(op, d, c) == Some(ids)
                && self.entry(op, c, d) == Some(idt)
        })
    }

    pub fn inv(&self, c: Cell) -> Result<Cell, GrayError> {
        self.inverse(c)
            .ok_or_else(|| GrayError::NotInvertible(self.show(c)))
    }

    /// Cells of dimension `dim` with the given source and target.
    pub fn parallel(&self, dim: u8, s: Cell, t: Cell) -> Vec<Cell> {
        self.cells(dim)
            .filter(|&c| self.src(c) == s && self.tgt(c) == t)
            .collect()
    }

    /// Composable pairs `(f′, f)` of 1-cells in table order.
    pub fn composable_pairs(&self) -> Vec<(Cell, Cell)> {
        let mut out = Vec::new();
        for f2 in self.cells(1) {
            for f in self.cells(1) {
                if self.tgt(f) == self.src(f2) {
                    out.push((f2, f));
                }
            }
        }
        out
    }
}

impl fmt::Display for FiniteGrayCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.counts();
        write!(f, "{} ({a}/{b}/{c}/{d} cells)", self.name)
    }
}
