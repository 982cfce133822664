//! Pseudo-transformations, pseudo-modifications and perturbations between strict Gray-functors.
//!
//! Orientation: for `α: F ⇒ G` the 1-cell component is `α_f: Gf #₀ α_x ⇒ α_y #₀ Ff`.
//! Every validator first checks boundaries (a structural error) and then evaluates
//! both sides of each axiom instance as table pastings.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::gray_core::{size_bound, Cell, Checker, FiniteGrayCategory as Cat, GrayError, ValidationReport};
use crate::gray_maps::{same_cat, GrayFunctor};
use crate::search::{search, Space};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoTransformation {
    pub dom: Arc<GrayFunctor>,
    pub cod: Arc<GrayFunctor>,
    /// `α_x`, indexed by 0-cells of the source category.
    pub at0: Vec<Cell>,
    /// `α_f`, indexed by 1-cells.
    pub at1: Vec<Cell>,
    /// `α_φ`, indexed by 2-cells.
    pub at2: Vec<Cell>,
    /// `α²_{f′,f}`, keyed by `(f′, f)`.
    pub coc: BTreeMap<(u32, u32), Cell>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoModification {
    pub dom: Arc<PseudoTransformation>,
    pub cod: Arc<PseudoTransformation>,
    /// `A_x: α_x ⇒ β_x`.
    pub at0: Vec<Cell>,
    /// `A_f: β_f #₁ (Gf #₀ A_x) ⇛ (A_y #₀ Ff) #₁ α_f`.
    pub at1: Vec<Cell>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Perturbation {
    pub dom: Arc<PseudoModification>,
    pub cod: Arc<PseudoModification>,
    /// `Γ_x: A_x ⇛ B_x`.
    pub at0: Vec<Cell>,
}

fn mismatch(what: impl fmt::Display, e: GrayError) -> GrayError {
    GrayError::Mismatch(format!("{what}: {e}"))
}

fn expect_boundary(h: &Cat, what: &str, c: Cell, dim: u8, s: Cell, t: Cell) -> Result<(), GrayError> {
    if c.dim != dim || !h.contains(c) {
        return Err(GrayError::Mismatch(format!("{what} is not a {dim}-cell of {}", h.name())));
    }
    if h.src(c) != s || h.tgt(c) != t {
        return Err(GrayError::Mismatch(format!(
            "{what} = {} has boundary {} -> {}, expected {} -> {}",
            h.show(c),
            h.show(h.src(c)),
            h.show(h.tgt(c)),
            h.show(s),
            h.show(t)
        )));
    }
    Ok(())
}

fn expect_len(what: &str, got: usize, want: usize) -> Result<(), GrayError> {
    if got != want {
        return Err(GrayError::Structure(format!("{what} has {got} entries, expected {want}")));
    }
    Ok(())
}

impl PseudoTransformation {
    /// The source category `𝒢`.
    pub fn source(&self) -> &Cat {
        &self.dom.dom
    }

    /// The target category `ℋ`.
    pub fn target(&self) -> &Cat {
        &self.dom.cod
    }

    pub fn x(&self, x: Cell) -> Cell {
        self.at0[x.idx as usize]
    }

    pub fn f(&self, f: Cell) -> Cell {
        self.at1[f.idx as usize]
    }

    pub fn phi(&self, p: Cell) -> Cell {
        self.at2[p.idx as usize]
    }

    pub fn two(&self, f2: Cell, f: Cell) -> Cell {
        self.coc[&(f2.idx, f.idx)]
    }

    fn at1_boundary(&self, f: Cell) -> Result<(Cell, Cell), GrayError> {
        let (g, h) = (self.source(), self.target());
        Ok((
            h.h0(self.cod.apply(f), self.x(g.src(f)))?,
            h.h0(self.x(g.tgt(f)), self.dom.apply(f))?,
        ))
    }

    fn at2_boundary(&self, p: Cell) -> Result<(Cell, Cell), GrayError> {
        let (g, h) = (self.source(), self.target());
        let (f, f2) = (g.src(p), g.tgt(p));
        Ok((
            h.h1(h.h0(self.x(g.t(p, 0)), self.dom.apply(p))?, self.f(f))?,
            h.h1(self.f(f2), h.h0(self.cod.apply(p), self.x(g.s(p, 0)))?)?,
        ))
    }

    fn coc_boundary(&self, f2: Cell, f: Cell) -> Result<(Cell, Cell), GrayError> {
        let (g, h) = (self.source(), self.target());
        Ok((
            h.h1(h.h0(self.f(f2), self.dom.apply(f))?, h.h0(self.cod.apply(f2), self.f(f))?)?,
            self.f(g.comp0(f2, f)?),
        ))
    }

    fn check_shape(&self) -> Result<(), GrayError> {
        if !same_cat(&self.dom.dom, &self.cod.dom) || !same_cat(&self.dom.cod, &self.cod.cod) {
            return Err(GrayError::Mismatch("transformation between non-parallel functors".into()));
        }
        let (g, h) = (self.source(), self.target());
        expect_len("at0", self.at0.len(), g.count(0))?;
        expect_len("at1", self.at1.len(), g.count(1))?;
        expect_len("at2", self.at2.len(), g.count(2))?;
        let pairs = g.composable_pairs();
        let keys: Vec<(u32, u32)> = pairs.iter().map(|&(a, b)| (a.idx, b.idx)).collect();
        if !self.coc.keys().copied().eq(keys.iter().copied()) {
            return Err(GrayError::Structure("coc must cover exactly the composable pairs".into()));
        }
        for x in g.cells(0) {
            let w = format!("at0 {}", g.show(x));
            expect_boundary(h, &w, self.x(x), 1, self.dom.apply(x), self.cod.apply(x))?;
        }
        for f in g.cells(1) {
            let w = format!("at1 {}", g.show(f));
            let (s, t) = self.at1_boundary(f).map_err(|e| mismatch(&w, e))?;
            expect_boundary(h, &w, self.f(f), 2, s, t)?;
        }
        for p in g.cells(2) {
            let w = format!("at2 {}", g.show(p));
            let (s, t) = self.at2_boundary(p).map_err(|e| mismatch(&w, e))?;
            expect_boundary(h, &w, self.phi(p), 3, s, t)?;
        }
        for (f2, f) in pairs {
            let w = format!("coc {} {}", g.show(f2), g.show(f));
            let (s, t) = self.coc_boundary(f2, f).map_err(|e| mismatch(&w, e))?;
            expect_boundary(h, &w, self.two(f2, f), 3, s, t)?;
        }
        Ok(())
    }
}

impl PseudoModification {
    pub fn source(&self) -> &Cat {
        self.dom.source()
    }

    pub fn target(&self) -> &Cat {
        self.dom.target()
    }

    pub fn x(&self, x: Cell) -> Cell {
        self.at0[x.idx as usize]
    }

    pub fn f(&self, f: Cell) -> Cell {
        self.at1[f.idx as usize]
    }

    fn at1_boundary(&self, f: Cell) -> Result<(Cell, Cell), GrayError> {
        let (g, h) = (self.source(), self.target());
        let (a, b) = (&self.dom, &self.cod);
        Ok((
            h.h1(b.f(f), h.h0(a.cod.apply(f), self.x(g.src(f)))?)?,
            h.h1(h.h0(self.x(g.tgt(f)), a.dom.apply(f))?, a.f(f))?,
        ))
    }

    fn check_shape(&self) -> Result<(), GrayError> {
        if self.dom.dom != self.cod.dom || self.dom.cod != self.cod.cod {
            return Err(GrayError::Mismatch("modification between non-parallel transformations".into()));
        }
        let (g, h) = (self.source(), self.target());
        expect_len("at0", self.at0.len(), g.count(0))?;
        expect_len("at1", self.at1.len(), g.count(1))?;
        for x in g.cells(0) {
            let w = format!("at0 {}", g.show(x));
            expect_boundary(h, &w, self.x(x), 2, self.dom.x(x), self.cod.x(x))?;
        }
        for f in g.cells(1) {
            let w = format!("at1 {}", g.show(f));
            let (s, t) = self.at1_boundary(f).map_err(|e| mismatch(&w, e))?;
            expect_boundary(h, &w, self.f(f), 3, s, t)?;
        }
        Ok(())
    }
}

impl Perturbation {
    pub fn source(&self) -> &Cat {
        self.dom.source()
    }

    pub fn target(&self) -> &Cat {
        self.dom.target()
    }

    pub fn x(&self, x: Cell) -> Cell {
        self.at0[x.idx as usize]
    }

    fn check_shape(&self) -> Result<(), GrayError> {
        if self.dom.dom != self.cod.dom || self.dom.cod != self.cod.cod {
            return Err(GrayError::Mismatch("perturbation between non-parallel modifications".into()));
        }
        let (g, h) = (self.source(), self.target());
        expect_len("at0", self.at0.len(), g.count(0))?;
        for x in g.cells(0) {
            let w = format!("at0 {}", g.show(x));
            expect_boundary(h, &w, self.x(x), 3, self.dom.x(x), self.cod.x(x))?;
        }
        Ok(())
    }
}

/// A component slot of a family, in enumeration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Key {
    X(u32),
    F(u32),
    P(u32),
    Two(u32, u32),
}

struct Layout {
    keys: Vec<Key>,
    index: HashMap<Key, usize>,
}

impl Layout {
    fn new(g: &Cat, levels: usize) -> Self {
        let mut keys: Vec<Key> = g.cells(0).map(|c| Key::X(c.idx)).collect();
        if levels > 1 {
            keys.extend(g.cells(1).map(|c| Key::F(c.idx)));
        }
        if levels > 2 {
            keys.extend(g.cells(2).map(|c| Key::P(c.idx)));
            keys.extend(g.composable_pairs().into_iter().map(|(a, b)| Key::Two(a.idx, b.idx)));
        }
        let index = keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        Layout { keys, index }
    }
}

/// A component family with its axiom instances, shared by validators and enumerators.
pub(crate) trait Family: Clone {
    type Inst: Copy + Send + Sync;

    const LEVELS: usize;

    fn source(&self) -> &Cat;

    fn target(&self) -> &Cat;

    fn instances(&self) -> Vec<Self::Inst>;

    /// Every component slot the instance reads.
    fn keys(&self, i: &Self::Inst) -> Vec<Key>;

    fn axiom(i: &Self::Inst) -> &'static str;

    fn args(i: &Self::Inst) -> Vec<Cell>;

    /// Both sides of the instance.
    fn eval(&self, i: &Self::Inst) -> Result<(Cell, Cell), GrayError>;

    fn candidates(&self, k: Key) -> Result<Vec<Cell>, GrayError>;

    fn set(&mut self, k: Key, c: Cell);
}

fn run_axioms<T: Family>(v: &T, report: &mut ValidationReport) {
    let (g, h) = (v.source(), v.target());
    let mut ck = Checker::new(report, h);
    for i in v.instances() {
        let args = T::args(&i);
        let nt = args.iter().any(|&c| c.dim == 0 || !g.is_identity(c));
        ck.eq(T::axiom(&i), nt, || args.iter().map(|&c| g.show(c)).collect(), || v.eval(&i));
    }
}

struct Enumerator<T: Family> {
    layout: Layout,
    checks: Vec<Vec<T::Inst>>,
}

impl<T: Family> Enumerator<T> {
    fn new(seed: &T) -> Self {
        let layout = Layout::new(seed.source(), T::LEVELS);
        let mut checks = vec![Vec::new(); layout.keys.len()];
        for i in seed.instances() {
            let last = seed.keys(&i).iter().map(|k| layout.index[k]).max().unwrap_or(0);
            checks[last].push(i);
        }
        Enumerator { layout, checks }
    }
}

impl<T: Family> Space for Enumerator<T> {
    type State = T;

    fn vars(&self) -> usize {
        self.layout.keys.len()
    }

    fn candidates(&self, var: usize, st: &T) -> Result<Vec<u32>, GrayError> {
        Ok(st.candidates(self.layout.keys[var])?.into_iter().map(|c| c.idx).collect())
    }

    fn assign(&self, var: usize, value: u32, st: &mut T) {
        let k = self.layout.keys[var];
        let dim = match (T::LEVELS, k) {
            (4, Key::X(_)) => 1,
            (4, Key::F(_)) | (2, Key::X(_)) => 2,
            _ => 3,
        };
        st.set(k, Cell::new(dim, value));
    }

    fn consistent(&self, var: usize, st: &T) -> bool {
        self.checks[var].iter().all(|i| matches!(st.eval(i), Ok((a, b)) if a == b))
    }
}

fn enumerate<T: Family>(seed: T) -> Result<Vec<T>, GrayError> {
    let e = Enumerator::new(&seed);
    search(&e, seed, size_bound())
}

fn unset(dim: u8, n: usize) -> Vec<Cell> {
    vec![Cell::new(dim, u32::MAX); n]
}

/// Axiom instances of a pseudo-transformation.
#[derive(Clone, Copy, Debug)]
pub(crate) enum TInst {
    IdOne(Cell),
    IdTwo(Cell),
    Comp(Cell, Cell),
    Cube(Cell),
    Cocycle(Cell, Cell, Cell),
    NormLeft(Cell),
    NormRight(Cell),
    WhiskLeft(Cell, Cell),
    WhiskRight(Cell, Cell),
}

impl Family for PseudoTransformation {
    type Inst = TInst;

    const LEVELS: usize = 4;

    fn source(&self) -> &Cat {
        PseudoTransformation::source(self)
    }

    fn target(&self) -> &Cat {
        PseudoTransformation::target(self)
    }

    fn instances(&self) -> Vec<TInst> {
        let g = self.source();
        let mut out: Vec<TInst> = g.cells(0).map(TInst::IdOne).collect();
        out.extend(g.cells(1).map(TInst::IdTwo));
        for p in g.cells(2) {
            out.extend(g.cells(2).filter(|&p2| g.src(p2) == g.tgt(p)).map(|p2| TInst::Comp(p2, p)));
        }
        out.extend(g.cells(3).map(TInst::Cube));
        for (f2, f) in g.composable_pairs() {
            for f3 in g.cells(1).filter(|&f3| g.src(f3) == g.tgt(f2)) {
                out.push(TInst::Cocycle(f3, f2, f));
            }
        }
        out.extend(g.cells(1).map(TInst::NormLeft));
        out.extend(g.cells(1).map(TInst::NormRight));
        for gm in g.cells(2) {
            for f in g.cells(1).filter(|&f| g.tgt(f) == g.s(gm, 0)) {
                out.push(TInst::WhiskLeft(gm, f));
            }
        }
        for gc in g.cells(1) {
            for d in g.cells(2).filter(|&d| g.t(d, 0) == g.src(gc)) {
                out.push(TInst::WhiskRight(gc, d));
            }
        }
        out
    }

    fn keys(&self, i: &TInst) -> Vec<Key> {
        let g = self.source();
        let objs = |cs: &[Cell]| -> Vec<Key> {
            cs.iter().flat_map(|&c| [Key::X(g.s(c, 0).idx), Key::X(g.t(c, 0).idx)]).collect()
        };
        let f = |c: Cell| Key::F(c.idx);
        let p = |c: Cell| Key::P(c.idx);
        let two = |a: Cell, b: Cell| Key::Two(a.idx, b.idx);
        let mut out = match *i {
            TInst::IdOne(x) => vec![Key::X(x.idx), f(g.id(x).unwrap())],
            TInst::IdTwo(a) => vec![f(a), p(g.id(a).unwrap())],
            TInst::Comp(p2, p1) => vec![p(p2), p(p1), p(g.comp1(p2, p1).unwrap())],
            TInst::Cube(c) => vec![p(g.src(c)), p(g.tgt(c)), f(g.s(c, 1)), f(g.t(c, 1))],
            TInst::Cocycle(f3, f2, f1) => {
                let (f21, f32) = (g.comp0(f2, f1).unwrap(), g.comp0(f3, f2).unwrap());
                vec![
                    f(f1),
                    f(f2),
                    f(f3),
                    two(f3, f21),
                    two(f2, f1),
                    two(f32, f1),
                    two(f3, f2),
                ]
            }
            TInst::NormLeft(a) => vec![f(a), two(g.id(g.tgt(a)).unwrap(), a)],
            TInst::NormRight(a) => vec![f(a), two(a, g.id(g.src(a)).unwrap())],
            TInst::WhiskLeft(gm, a) => vec![
                f(a),
                f(g.src(gm)),
                f(g.tgt(gm)),
                p(gm),
                p(g.wr(gm, a).unwrap()),
                two(g.src(gm), a),
                two(g.tgt(gm), a),
            ],
            TInst::WhiskRight(gc, d) => vec![
                f(gc),
                f(g.src(d)),
                f(g.tgt(d)),
                p(d),
                p(g.wl(gc, d).unwrap()),
                two(gc, g.src(d)),
                two(gc, g.tgt(d)),
            ],
        };
        out.extend(objs(&Self::args(i)));
        out
    }

    fn axiom(i: &TInst) -> &'static str {
        match i {
            TInst::IdOne(_) => "transformation: identity 1-cell",
            TInst::IdTwo(_) => "transformation: identity 2-cell",
            TInst::Comp(..) => "transformation: 2-cell composition",
            TInst::Cube(_) => "transformation: 3-cell naturality",
            TInst::Cocycle(..) => "transformation: cocycle",
            TInst::NormLeft(_) | TInst::NormRight(_) => "transformation: cocycle normalization",
            TInst::WhiskLeft(..) => "transformation: left whisker",
            TInst::WhiskRight(..) => "transformation: right whisker",
        }
    }

    fn args(i: &TInst) -> Vec<Cell> {
        match *i {
            TInst::IdOne(a) | TInst::IdTwo(a) | TInst::Cube(a) | TInst::NormLeft(a) | TInst::NormRight(a) => vec![a],
            TInst::Comp(a, b) | TInst::WhiskLeft(a, b) | TInst::WhiskRight(a, b) => vec![a, b],
            TInst::Cocycle(a, b, c) => vec![a, b, c],
        }
    }

    fn eval(&self, i: &TInst) -> Result<(Cell, Cell), GrayError> {
        let (g, h) = (self.source(), self.target());
        let (ff, gg) = (&*self.dom, &*self.cod);
        let ax = |c: Cell| self.x(c);
        match *i {
            TInst::IdOne(x) => Ok((self.f(g.id(x)?), h.id(ax(x))?)),
            TInst::IdTwo(a) => Ok((self.phi(g.id(a)?), h.id(self.f(a))?)),
            TInst::Comp(p2, p1) => {
                let (x, y) = (g.s(p1, 0), g.t(p1, 0));
                let upper = h.h1(h.h0(ax(y), ff.apply(p2))?, self.phi(p1))?;
                let lower = h.h1(self.phi(p2), h.h0(gg.apply(p1), ax(x))?)?;
                Ok((self.phi(g.comp1(p2, p1)?), h.comp2(lower, upper)?))
            }
            TInst::Cube(c) => {
                let (p1, p2) = (g.src(c), g.tgt(c));
                let (a, a2) = (g.src(p1), g.tgt(p1));
                let (x, y) = (g.s(c, 0), g.t(c, 0));
                let lhs = h.comp2(self.phi(p2), h.h1(h.h0(ax(y), ff.apply(c))?, self.f(a))?)?;
                let rhs = h.comp2(h.h1(self.f(a2), h.h0(gg.apply(c), ax(x))?)?, self.phi(p1))?;
                Ok((lhs, rhs))
            }
            TInst::Cocycle(f3, f2, f1) => {
                let (f21, f32) = (g.comp0(f2, f1)?, g.comp0(f3, f2)?);
                let lhs = h.comp2(
                    self.two(f3, f21),
                    h.h1(h.h0(self.f(f3), ff.apply(f21))?, h.h0(gg.apply(f3), self.two(f2, f1))?)?,
                )?;
                let rhs = h.comp2(
                    self.two(f32, f1),
                    h.h1(h.h0(self.two(f3, f2), ff.apply(f1))?, h.h0(gg.apply(f32), self.f(f1))?)?,
                )?;
                Ok((lhs, rhs))
            }
            TInst::NormLeft(a) => Ok((self.two(g.id(g.tgt(a))?, a), h.id(self.f(a))?)),
            TInst::NormRight(a) => Ok((self.two(a, g.id(g.src(a))?), h.id(self.f(a))?)),
            TInst::WhiskLeft(gm, a) => {
                let (gc, gc2) = (g.src(gm), g.tgt(gm));
                let (x, z) = (g.src(a), g.t(gm, 0));
                let gma = g.wr(gm, a)?;
                let t = h.tensor_inv(gg.apply(gm), self.f(a))?;
                let s1 = h.h1(h.h0(self.phi(gm), ff.apply(a))?, h.h0(gg.apply(gc), self.f(a))?)?;
                let s2 = h.h1(h.h0(self.f(gc2), ff.apply(a))?, t)?;
                let s3 = h.h1(self.two(gc2, a), h.h0(gg.apply(gma), ax(x))?)?;
                let lhs = h.comp2(s3, h.comp2(s2, s1)?)?;
                let rhs = h.comp2(self.phi(gma), h.h1(h.h0(ax(z), ff.apply(gma))?, self.two(gc, a))?)?;
                Ok((lhs, rhs))
            }
            TInst::WhiskRight(gc, d) => {
                let (a, a2) = (g.src(d), g.tgt(d));
                let (x, z) = (g.s(d, 0), g.tgt(gc));
                let gd = g.wl(gc, d)?;
                let t = h.tensor(self.f(gc), ff.apply(d))?;
                let s1 = h.h1(t, h.h0(gg.apply(gc), self.f(a))?)?;
                let s2 = h.h1(h.h0(self.f(gc), ff.apply(a2))?, h.h0(gg.apply(gc), self.phi(d))?)?;
                let s3 = h.h1(self.two(gc, a2), h.h0(gg.apply(gd), ax(x))?)?;
                let lhs = h.comp2(s3, h.comp2(s2, s1)?)?;
                let rhs = h.comp2(self.phi(gd), h.h1(h.h0(ax(z), ff.apply(gd))?, self.two(gc, a))?)?;
                Ok((lhs, rhs))
            }
        }
    }

    fn candidates(&self, k: Key) -> Result<Vec<Cell>, GrayError> {
        let h = self.target();
        let (s, t, dim) = match k {
            Key::X(x) => {
                let x = Cell::new(0, x);
                (self.dom.apply(x), self.cod.apply(x), 1)
            }
            Key::F(f) => {
                let (s, t) = self.at1_boundary(Cell::new(1, f))?;
                (s, t, 2)
            }
            Key::P(p) => {
                let (s, t) = self.at2_boundary(Cell::new(2, p))?;
                (s, t, 3)
            }
            Key::Two(a, b) => {
                let (s, t) = self.coc_boundary(Cell::new(1, a), Cell::new(1, b))?;
                (s, t, 3)
            }
        };
        let mut out = h.parallel(dim, s, t);
        if dim > 1 {
            out.retain(|&c| h.inverse(c).is_some());
        }
        Ok(out)
    }

    fn set(&mut self, k: Key, c: Cell) {
        match k {
            Key::X(i) => self.at0[i as usize] = c,
            Key::F(i) => self.at1[i as usize] = c,
            Key::P(i) => self.at2[i as usize] = c,
            Key::Two(a, b) => {
                self.coc.insert((a, b), c);
            }
        }
    }
}

/// Axiom instances of a pseudo-modification.
#[derive(Clone, Copy, Debug)]
pub(crate) enum MInst {
    Unit(Cell),
    Cocycle(Cell, Cell),
    TwoCell(Cell),
}

impl Family for PseudoModification {
    type Inst = MInst;

    const LEVELS: usize = 2;

    fn source(&self) -> &Cat {
        PseudoModification::source(self)
    }

    fn target(&self) -> &Cat {
        PseudoModification::target(self)
    }

    fn instances(&self) -> Vec<MInst> {
        let g = self.source();
        let mut out: Vec<MInst> = g.cells(0).map(MInst::Unit).collect();
        out.extend(g.composable_pairs().into_iter().map(|(a, b)| MInst::Cocycle(a, b)));
        out.extend(g.cells(2).map(MInst::TwoCell));
        out
    }

    fn keys(&self, i: &MInst) -> Vec<Key> {
        let g = self.source();
        let mut out = Vec::new();
        for c in Self::args(i) {
            out.push(Key::X(g.s(c, 0).idx));
            out.push(Key::X(g.t(c, 0).idx));
        }
        match *i {
            MInst::Unit(x) => out.push(Key::F(g.id(x).unwrap().idx)),
            MInst::Cocycle(f2, f) => {
                out.extend([f2, f, g.comp0(f2, f).unwrap()].map(|c| Key::F(c.idx)));
            }
            MInst::TwoCell(p) => out.extend([g.src(p), g.tgt(p)].map(|c| Key::F(c.idx))),
        }
        out
    }

    fn axiom(i: &MInst) -> &'static str {
        match i {
            MInst::Unit(_) => "modification: unit",
            MInst::Cocycle(..) => "modification: cocycle",
            MInst::TwoCell(_) => "modification: 2-cell",
        }
    }

    fn args(i: &MInst) -> Vec<Cell> {
        match *i {
            MInst::Unit(a) | MInst::TwoCell(a) => vec![a],
            MInst::Cocycle(a, b) => vec![a, b],
        }
    }

    fn eval(&self, i: &MInst) -> Result<(Cell, Cell), GrayError> {
        let (g, h) = (self.source(), self.target());
        let (al, be) = (&*self.dom, &*self.cod);
        let (ff, gg) = (&*al.dom, &*al.cod);
        match *i {
            MInst::Unit(x) => Ok((self.f(g.id(x)?), h.id(self.x(x))?)),
            MInst::Cocycle(f2, f) => {
                let (x, z) = (g.src(f), g.tgt(f2));
                let f21 = g.comp0(f2, f)?;
                let lhs = h.comp2(self.f(f21), h.h1(be.two(f2, f), h.h0(gg.apply(f21), self.x(x))?)?)?;
                let s1 = h.h1(h.h0(be.f(f2), ff.apply(f))?, h.h0(gg.apply(f2), self.f(f))?)?;
                let s2 = h.h1(h.h0(self.f(f2), ff.apply(f))?, h.h0(gg.apply(f2), al.f(f))?)?;
                let s3 = h.h1(h.h0(self.x(z), ff.apply(f21))?, al.two(f2, f))?;
                Ok((lhs, h.comp2(s3, h.comp2(s2, s1)?)?))
            }
            MInst::TwoCell(p) => {
                let (f, f2) = (g.src(p), g.tgt(p));
                let (x, y) = (g.s(p, 0), g.t(p, 0));
                let sq = h.tensor(self.x(y), ff.apply(p))?;
                let r = h.tensor_inv(gg.apply(p), self.x(x))?;
                let lhs = h.comp2(
                    h.h1(h.h0(self.x(y), ff.apply(f2))?, al.phi(p))?,
                    h.comp2(h.h1(sq, al.f(f))?, h.h1(h.h0(be.x(y), ff.apply(p))?, self.f(f))?)?,
                )?;
                let rhs = h.comp2(
                    h.h1(self.f(f2), h.h0(gg.apply(p), al.x(x))?)?,
                    h.comp2(h.h1(be.f(f2), r)?, h.h1(be.phi(p), h.h0(gg.apply(f), self.x(x))?)?)?,
                )?;
                Ok((lhs, rhs))
            }
        }
    }

    fn candidates(&self, k: Key) -> Result<Vec<Cell>, GrayError> {
        let h = self.target();
        Ok(match k {
            Key::X(x) => {
                let x = Cell::new(0, x);
                h.parallel(2, self.dom.x(x), self.cod.x(x))
            }
            Key::F(f) => {
                let (s, t) = self.at1_boundary(Cell::new(1, f))?;
                h.parallel(3, s, t)
            }
            _ => unreachable!("modifications have no higher components"),
        })
    }

    fn set(&mut self, k: Key, c: Cell) {
        match k {
            Key::X(i) => self.at0[i as usize] = c,
            Key::F(i) => self.at1[i as usize] = c,
            _ => unreachable!("modifications have no higher components"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct PInst(Cell);

impl Family for Perturbation {
    type Inst = PInst;

    const LEVELS: usize = 1;

    fn source(&self) -> &Cat {
        Perturbation::source(self)
    }

    fn target(&self) -> &Cat {
        Perturbation::target(self)
    }

    fn instances(&self) -> Vec<PInst> {
        self.source().cells(1).map(PInst).collect()
    }

    fn keys(&self, i: &PInst) -> Vec<Key> {
        let g = self.source();
        vec![Key::X(g.src(i.0).idx), Key::X(g.tgt(i.0).idx)]
    }

    fn axiom(_: &PInst) -> &'static str {
        "perturbation: 1-cell"
    }

    fn args(i: &PInst) -> Vec<Cell> {
        vec![i.0]
    }

    fn eval(&self, i: &PInst) -> Result<(Cell, Cell), GrayError> {
        let (g, h) = (self.source(), self.target());
        let f = i.0;
        let (x, y) = (g.src(f), g.tgt(f));
        let (a, b) = (&*self.dom, &*self.cod);
        let (al, be) = (&*a.dom, &*a.cod);
        let lhs = h.comp2(b.f(f), h.h1(be.f(f), h.h0(al.cod.apply(f), self.x(x))?)?)?;
        let rhs = h.comp2(h.h1(h.h0(self.x(y), al.dom.apply(f))?, al.f(f))?, a.f(f))?;
        Ok((lhs, rhs))
    }

    fn candidates(&self, k: Key) -> Result<Vec<Cell>, GrayError> {
        let Key::X(x) = k else { unreachable!("perturbations have only 0-cell components") };
        let x = Cell::new(0, x);
        Ok(self.target().parallel(3, self.dom.x(x), self.cod.x(x)))
    }

    fn set(&mut self, k: Key, c: Cell) {
        let Key::X(x) = k else { unreachable!("perturbations have only 0-cell components") };
        self.at0[x as usize] = c;
    }
}

pub fn validate_pstransf(a: &PseudoTransformation) -> Result<ValidationReport, GrayError> {
    a.check_shape()?;
    let (g, h) = (a.source(), a.target());
    let mut report = ValidationReport::new(format!("transformation {} -> {}", g.name(), h.name()));
    {
        let mut ck = Checker::new(&mut report, h);
        let comps = a
            .at1
            .iter()
            .chain(&a.at2)
            .chain(a.coc.values())
            .copied()
            .collect::<Vec<_>>();
        for c in comps {
            let ok = h.inverse(c).is_some();
            ck.holds("transformation: invertible", !h.is_identity(c), || vec![h.show(c)], ok, || {
                format!("{} has no inverse", h.show(c))
            });
        }
    }
    run_axioms(a, &mut report);
    Ok(report)
}

pub fn validate_psmod(m: &PseudoModification) -> Result<ValidationReport, GrayError> {
    m.check_shape()?;
    let mut report = ValidationReport::new(format!("modification {} -> {}", m.source().name(), m.target().name()));
    run_axioms(m, &mut report);
    Ok(report)
}

pub fn validate_perturbation(p: &Perturbation) -> Result<ValidationReport, GrayError> {
    p.check_shape()?;
    let mut report = ValidationReport::new(format!("perturbation {} -> {}", p.source().name(), p.target().name()));
    run_axioms(p, &mut report);
    Ok(report)
}

pub fn id_pstransf(f: &Arc<GrayFunctor>) -> Result<PseudoTransformation, GrayError> {
    let (g, h) = (&*f.dom, &*f.cod);
    let at0 = g.cells(0).map(|x| h.id(f.apply(x))).collect::<Result<_, _>>()?;
    let at1 = g.cells(1).map(|a| h.id(f.apply(a))).collect::<Result<_, _>>()?;
    let at2 = g.cells(2).map(|p| h.id(f.apply(p))).collect::<Result<_, _>>()?;
    let mut coc = BTreeMap::new();
    for (f2, f1) in g.composable_pairs() {
        coc.insert((f2.idx, f1.idx), h.id(h.id(f.apply(g.comp0(f2, f1)?))?)?);
    }
    Ok(PseudoTransformation { dom: f.clone(), cod: f.clone(), at0, at1, at2, coc })
}

pub fn id_psmod(a: &Arc<PseudoTransformation>) -> Result<PseudoModification, GrayError> {
    let h = a.target();
    let at0 = a.at0.iter().map(|&c| h.id(c)).collect::<Result<_, _>>()?;
    let at1 = a.at1.iter().map(|&c| h.id(c)).collect::<Result<_, _>>()?;
    Ok(PseudoModification { dom: a.clone(), cod: a.clone(), at0, at1 })
}

pub fn id_pert(m: &Arc<PseudoModification>) -> Result<Perturbation, GrayError> {
    let h = m.target();
    let at0 = m.at0.iter().map(|&c| h.id(c)).collect::<Result<_, _>>()?;
    Ok(Perturbation { dom: m.clone(), cod: m.clone(), at0 })
}

/// Every pseudo-transformation `F ⇒ G`, in lexicographic order of components.
pub fn enumerate_pstransf(f: &Arc<GrayFunctor>, g: &Arc<GrayFunctor>) -> Result<Vec<PseudoTransformation>, GrayError> {
    if !same_cat(&f.dom, &g.dom) || !same_cat(&f.cod, &g.cod) {
        return Err(GrayError::Mismatch("functors are not parallel".into()));
    }
    let src = &f.dom;
    let seed = PseudoTransformation {
        dom: f.clone(),
        cod: g.clone(),
        at0: unset(1, src.count(0)),
        at1: unset(2, src.count(1)),
        at2: unset(3, src.count(2)),
        coc: BTreeMap::new(),
    };
    enumerate(seed)
}

/// Every pseudo-modification `α ⇛ β`.
pub fn enumerate_psmod(
    a: &Arc<PseudoTransformation>,
    b: &Arc<PseudoTransformation>,
) -> Result<Vec<PseudoModification>, GrayError> {
    if a.dom != b.dom || a.cod != b.cod {
        return Err(GrayError::Mismatch("transformations are not parallel".into()));
    }
    let g = a.source();
    let seed = PseudoModification { dom: a.clone(), cod: b.clone(), at0: unset(2, g.count(0)), at1: unset(3, g.count(1)) };
    enumerate(seed)
}

/// Every perturbation `A ⇛ B`.
pub fn enumerate_pert(a: &Arc<PseudoModification>, b: &Arc<PseudoModification>) -> Result<Vec<Perturbation>, GrayError> {
    if a.dom != b.dom || a.cod != b.cod {
        return Err(GrayError::Mismatch("modifications are not parallel".into()));
    }
    let seed = Perturbation { dom: a.clone(), cod: b.clone(), at0: unset(3, a.source().count(0)) };
    enumerate(seed)
}
