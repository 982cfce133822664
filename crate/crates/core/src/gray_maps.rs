//! Strict Gray-functors between finite Gray-categories.

use std::fmt;
use std::sync::Arc;

use crate::gray_core::{size_bound, Cell, Checker, FiniteGrayCategory as Cat, GrayError, Incidence, Op, ValidationReport};
use crate::search::{search, Space};

/// Cell maps in every dimension between two finite Gray-categories.
#[derive(Clone, Debug)]
pub struct GrayFunctor {
    pub dom: Arc<Cat>,
    pub cod: Arc<Cat>,
    map: [Vec<u32>; 4],
}

pub(crate) fn same_cat(a: &Arc<Cat>, b: &Arc<Cat>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for GrayFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && same_cat(&self.dom, &other.dom) && same_cat(&self.cod, &other.cod)
    }
}

impl Eq for GrayFunctor {}

impl GrayFunctor {
    /// Fails unless every map is total on `dom` and lands in `cod`.
    pub fn new(dom: Arc<Cat>, cod: Arc<Cat>, map: [Vec<u32>; 4]) -> Result<Self, GrayError> {
        for k in 0..4u8 {
            let m = &map[k as usize];
            if m.len() != dom.count(k) {
                return Err(GrayError::Structure(format!(
                    "map{k} covers {} of {} cells",
                    m.len(),
                    dom.count(k)
                )));
            }
            if let Some(bad) = m.iter().position(|&v| v as usize >= cod.count(k)) {
                return Err(GrayError::Dangling(format!(
                    "map{k} {} = #{}",
                    dom.show(Cell::new(k, bad as u32)),
                    m[bad]
                )));
            }
        }
        Ok(GrayFunctor { dom, cod, map })
    }

    pub fn apply(&self, c: Cell) -> Cell {
        Cell::new(c.dim, self.map[c.dim as usize][c.idx as usize])
    }

    pub fn map(&self, dim: u8) -> &[u32] {
        &self.map[dim as usize]
    }

    /// The cell assignment flattened in dimension order; the enumeration sort key.
    pub fn key(&self) -> Vec<u32> {
        self.map.concat()
    }
}

impl fmt::Display for GrayFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} [", self.dom.name(), self.cod.name())?;
        for k in 0..4u8 {
            if k > 0 {
                f.write_str(" | ")?;
            }
            let parts: Vec<String> = self.dom.cells(k).map(|c| self.cod.show(self.apply(c))).collect();
            f.write_str(&parts.join(" "))?;
        }
        f.write_str("]")
    }
}

pub fn identity_functor(c: Arc<Cat>) -> GrayFunctor {
    let map = [0u8, 1, 2, 3].map(|k| (0..c.count(k) as u32).collect());
    GrayFunctor { dom: c.clone(), cod: c, map }
}

/// `G ∘ F`.
pub fn compose_functors(g: &GrayFunctor, f: &GrayFunctor) -> Result<GrayFunctor, GrayError> {
    if !same_cat(&f.cod, &g.dom) {
        return Err(GrayError::Mismatch(format!(
            "cannot compose {} after {}",
            g.dom.name(),
            f.cod.name()
        )));
    }
    let map = [0u8, 1, 2, 3].map(|k| f.map(k).iter().map(|&v| g.map(k)[v as usize]).collect());
    Ok(GrayFunctor { dom: f.dom.clone(), cod: g.cod.clone(), map })
}

pub fn validate_functor(f: &GrayFunctor) -> ValidationReport {
    let (d, h) = (&*f.dom, &*f.cod);
    let mut report = ValidationReport::new(format!("functor {} -> {}", d.name(), h.name()));
    let mut ck = Checker::new(&mut report, h);
    let nt = |c: Cell| c.dim == 0 || !d.is_identity(c);
    for k in 1..=3u8 {
        for c in d.cells(k) {
            let fc = f.apply(c);
            let ok = h.src(fc) == f.apply(d.src(c)) && h.tgt(fc) == f.apply(d.tgt(c));
            ck.holds("functor: boundary", nt(c), || vec![d.show(c)], ok, || {
                format!("{} is not a cell between the images of the boundary", h.show(fc))
            });
        }
    }
    if !ck.report.ok() {
        return report;
    }
    for k in 0..=2u8 {
        for c in d.cells(k) {
            let Some(i) = d.stored_id(c) else { continue };
            ck.eq("functor: identity", true, || vec![d.show(c)], || {
                Ok((h.id(f.apply(c))?, f.apply(i)))
            });
        }
    }
    let inc = Incidence::new(d);
    for op in Op::ALL {
        let axiom = format!("functor: {}", op.name());
        for (a, b) in inc.pairs(d, op) {
            ck.eq(&axiom, nt(a) || nt(b), || vec![d.show(a), d.show(b)], || {
                Ok((f.apply(d.apply(op, a, b)?), h.apply(op, f.apply(a), f.apply(b))?))
            });
        }
    }
    report
}

struct FunctorSpace<'a> {
    d: &'a Cat,
    h: &'a Cat,
    offsets: [usize; 5],
    /// Table equations `(op, a, b, r)` grouped by the last variable they mention.
    checks: Vec<Vec<(Op, Cell, Cell, Cell)>>,
}

impl<'a> FunctorSpace<'a> {
    fn new(d: &'a Cat, h: &'a Cat) -> Self {
        let mut offsets = [0usize; 5];
        for k in 0..4 {
            offsets[k + 1] = offsets[k] + d.count(k as u8);
        }
        let var = |c: Cell| offsets[c.dim as usize] + c.idx as usize;
        let mut checks = vec![Vec::new(); offsets[4]];
        let inc = Incidence::new(d);
        for op in Op::ALL {
            for (a, b) in inc.pairs(d, op) {
                if let Some(r) = d.entry(op, a, b) {
                    checks[var(a).max(var(b)).max(var(r))].push((op, a, b, r));
                }
            }
        }
        FunctorSpace { d, h, offsets, checks }
    }

    fn cell(&self, var: usize) -> Cell {
        let k = (0..4).rfind(|&k| self.offsets[k] <= var).unwrap();
        Cell::new(k as u8, (var - self.offsets[k]) as u32)
    }

    fn image(&self, st: &[u32], c: Cell) -> Cell {
        Cell::new(c.dim, st[self.offsets[c.dim as usize] + c.idx as usize])
    }
}

impl Space for FunctorSpace<'_> {
    type State = Vec<u32>;

    fn vars(&self) -> usize {
        self.offsets[4]
    }

    fn candidates(&self, var: usize, st: &Vec<u32>) -> Result<Vec<u32>, GrayError> {
        let c = self.cell(var);
        if c.dim == 0 {
            return Ok((0..self.h.count(0) as u32).collect());
        }
        let (s, t) = (self.image(st, self.d.src(c)), self.image(st, self.d.tgt(c)));
        if self.d.is_identity(c) {
            return Ok(vec![self.h.id(s)?.idx]);
        }
        Ok(self.h.parallel(c.dim, s, t).into_iter().map(|x| x.idx).collect())
    }

    fn assign(&self, var: usize, value: u32, st: &mut Vec<u32>) {
        st[var] = value;
    }

    fn consistent(&self, var: usize, st: &Vec<u32>) -> bool {
        self.checks[var].iter().all(|&(op, a, b, r)| {
            self.h.apply(op, self.image(st, a), self.image(st, b)) == Ok(self.image(st, r))
        })
    }
}

/// Every Gray-functor `G -> H`, in lexicographic order of cell assignments.
pub fn enumerate_functors(g: &Arc<Cat>, h: &Arc<Cat>) -> Result<Vec<GrayFunctor>, GrayError> {
    let space = FunctorSpace::new(g, h);
    let found = search(&space, vec![0; space.vars()], size_bound())?;
    Ok(found
        .into_iter()
        .map(|st| {
            let o = space.offsets;
            let map = [0usize, 1, 2, 3].map(|k| st[o[k]..o[k + 1]].to_vec());
            GrayFunctor { dom: g.clone(), cod: h.clone(), map }
        })
        .collect())
}
