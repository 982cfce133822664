//! Horizontal composition `*₋₁` of mapping-space cells across a middle category.
//!
//! For `β: H ⇒ H′` over `ℋ → 𝒦` and `α: G ⇒ G′` over `𝒢 → ℋ`, `β *₋₁ α` is a
//! modification from `β ▷₋₁ α = (H′*α) *₀ (β*G)` to `β ◁₋₁ α = (β*G′) *₀ (H*α)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::gray_core::{Cell, Checker, FiniteGrayCategory as Cat, GrayError, ValidationReport};
use crate::gray_maps::{compose_functors, same_cat, validate_functor, GrayFunctor};
use crate::hom_calculus::{comp0_pstransf, comp1_psmod, whiskl_psmod, whiskr_psmod};
use crate::transfors::{
    id_pert, id_psmod, id_pstransf, validate_perturbation, validate_psmod, validate_pstransf, Perturbation,
    PseudoModification, PseudoTransformation,
};

/// A cell of some mapping space, tagged by rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HCell {
    Functor(Arc<GrayFunctor>),
    Transf(Arc<PseudoTransformation>),
    Modif(Arc<PseudoModification>),
    Pert(Arc<Perturbation>),
}

impl HCell {
    pub fn rank(&self) -> u8 {
        match self {
            HCell::Functor(_) => 0,
            HCell::Transf(_) => 1,
            HCell::Modif(_) => 2,
            HCell::Pert(_) => 3,
        }
    }

    /// The functor at the bottom of the cell's boundary.
    pub fn base(&self) -> &Arc<GrayFunctor> {
        match self {
            HCell::Functor(f) => f,
            HCell::Transf(a) => &a.dom,
            HCell::Modif(m) => &m.dom.dom,
            HCell::Pert(p) => &p.dom.dom.dom,
        }
    }

    pub fn source(&self) -> &Arc<Cat> {
        &self.base().dom
    }

    pub fn target(&self) -> &Arc<Cat> {
        &self.base().cod
    }

    pub fn kind(&self) -> &'static str {
        ["functor", "transformation", "modification", "perturbation"][self.rank() as usize]
    }

    /// Runs the validator matching the cell's rank.
    pub fn validate(&self) -> Result<ValidationReport, GrayError> {
        match self {
            HCell::Functor(f) => Ok(validate_functor(f)),
            HCell::Transf(a) => validate_pstransf(a),
            HCell::Modif(m) => validate_psmod(m),
            HCell::Pert(p) => validate_perturbation(p),
        }
    }
}

impl fmt::Display for HCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} -> {}", self.kind(), self.source().name(), self.target().name())
    }
}

fn map_cells(f: &GrayFunctor, cs: &[Cell]) -> Vec<Cell> {
    cs.iter().map(|&c| f.apply(c)).collect()
}

/// `H *₋₁ α`.
pub fn functor_transf(hf: &Arc<GrayFunctor>, a: &PseudoTransformation) -> Result<PseudoTransformation, GrayError> {
    Ok(PseudoTransformation {
        dom: Arc::new(compose_functors(hf, &a.dom)?),
        cod: Arc::new(compose_functors(hf, &a.cod)?),
        at0: map_cells(hf, &a.at0),
        at1: map_cells(hf, &a.at1),
        at2: map_cells(hf, &a.at2),
        coc: a.coc.iter().map(|(&k, &c)| (k, hf.apply(c))).collect(),
    })
}

/// `H *₋₁ A`.
pub fn functor_psmod(hf: &Arc<GrayFunctor>, m: &PseudoModification) -> Result<PseudoModification, GrayError> {
    Ok(PseudoModification {
        dom: Arc::new(functor_transf(hf, &m.dom)?),
        cod: Arc::new(functor_transf(hf, &m.cod)?),
        at0: map_cells(hf, &m.at0),
        at1: map_cells(hf, &m.at1),
    })
}

/// `H *₋₁ Γ`.
pub fn functor_pert(hf: &Arc<GrayFunctor>, p: &Perturbation) -> Result<Perturbation, GrayError> {
    Ok(Perturbation {
        dom: Arc::new(functor_psmod(hf, &p.dom)?),
        cod: Arc::new(functor_psmod(hf, &p.cod)?),
        at0: map_cells(hf, &p.at0),
    })
}

fn middle(b: &PseudoTransformation, g: &GrayFunctor) -> Result<(), GrayError> {
    if same_cat(&g.cod, &b.dom.dom) {
        Ok(())
    } else {
        Err(GrayError::Mismatch("middle categories differ".into()))
    }
}

/// `β *₋₁ G`.
pub fn transf_functor(b: &PseudoTransformation, g: &Arc<GrayFunctor>) -> Result<PseudoTransformation, GrayError> {
    middle(b, g)?;
    let src = &*g.dom;
    let mut coc = BTreeMap::new();
    for (f2, f) in src.composable_pairs() {
        coc.insert((f2.idx, f.idx), b.two(g.apply(f2), g.apply(f)));
    }
    Ok(PseudoTransformation {
        dom: Arc::new(compose_functors(&b.dom, g)?),
        cod: Arc::new(compose_functors(&b.cod, g)?),
        at0: src.cells(0).map(|x| b.x(g.apply(x))).collect(),
        at1: src.cells(1).map(|f| b.f(g.apply(f))).collect(),
        at2: src.cells(2).map(|p| b.phi(g.apply(p))).collect(),
        coc,
    })
}

/// `B *₋₁ G`.
pub fn psmod_functor(m: &PseudoModification, g: &Arc<GrayFunctor>) -> Result<PseudoModification, GrayError> {
    let src = &*g.dom;
    Ok(PseudoModification {
        dom: Arc::new(transf_functor(&m.dom, g)?),
        cod: Arc::new(transf_functor(&m.cod, g)?),
        at0: src.cells(0).map(|x| m.x(g.apply(x))).collect(),
        at1: src.cells(1).map(|f| m.f(g.apply(f))).collect(),
    })
}

/// `Δ *₋₁ G`.
pub fn pert_functor(p: &Perturbation, g: &Arc<GrayFunctor>) -> Result<Perturbation, GrayError> {
    Ok(Perturbation {
        dom: Arc::new(psmod_functor(&p.dom, g)?),
        cod: Arc::new(psmod_functor(&p.cod, g)?),
        at0: g.dom.cells(0).map(|x| p.x(g.apply(x))).collect(),
    })
}

/// `β ◁₋₁ α = (β*G′) *₀ (H*α)`, written out componentwise.
pub fn lhc(b: &PseudoTransformation, a: &PseudoTransformation) -> Result<PseudoTransformation, GrayError> {
    middle(b, &a.dom)?;
    let (g, k) = (a.source(), b.target());
    let (hh, hh2) = (&*b.dom, &*b.cod);
    let (gg, gg2) = (&*a.dom, &*a.cod);
    let ha = |c: Cell| hh.apply(c);
    let bx = |x: Cell| b.x(gg2.apply(x));
    let at0 = g.cells(0).map(|x| k.h0(bx(x), ha(a.x(x)))).collect::<Result<_, _>>()?;
    let at1 = g
        .cells(1)
        .map(|f| {
            let (x, y) = (g.src(f), g.tgt(f));
            k.h1(k.h0(bx(y), ha(a.f(f)))?, k.h0(b.f(gg2.apply(f)), ha(a.x(x)))?)
        })
        .collect::<Result<_, _>>()?;
    let at2 = g
        .cells(2)
        .map(|p| {
            let (f, f2) = (g.src(p), g.tgt(p));
            let (x, y) = (g.s(p, 0), g.t(p, 0));
            let first = k.h1(k.h0(bx(y), ha(a.phi(p)))?, k.h0(b.f(gg2.apply(f)), ha(a.x(x)))?)?;
            let second = k.h1(k.h0(bx(y), ha(a.f(f2)))?, k.h0(b.phi(gg2.apply(p)), ha(a.x(x)))?)?;
            k.comp2(second, first)
        })
        .collect::<Result<_, _>>()?;
    let mut coc = BTreeMap::new();
    for (f2, f) in g.composable_pairs() {
        let (x, z) = (g.src(f), g.tgt(f2));
        let t = k.tensor_inv(b.f(gg2.apply(f2)), ha(a.f(f)))?;
        let left = k.h0(k.h0(bx(z), ha(a.f(f2)))?, hh.apply(gg.apply(f)))?;
        let right = k.h0(hh2.apply(gg2.apply(f2)), k.h0(b.f(gg2.apply(f)), ha(a.x(x)))?)?;
        let stage1 = k.h1(left, k.h1(t, right)?)?;
        let stage2 = k.h1(
            k.h0(bx(z), ha(a.two(f2, f)))?,
            k.h0(b.two(gg2.apply(f2), gg2.apply(f)), ha(a.x(x)))?,
        )?;
        coc.insert((f2.idx, f.idx), k.comp2(stage2, stage1)?);
    }
    Ok(PseudoTransformation {
        dom: Arc::new(compose_functors(hh, gg)?),
        cod: Arc::new(compose_functors(hh2, gg2)?),
        at0,
        at1,
        at2,
        coc,
    })
}

/// `β ▷₋₁ α = (H′*α) *₀ (β*G)`, written out componentwise.
pub fn rhc(b: &PseudoTransformation, a: &PseudoTransformation) -> Result<PseudoTransformation, GrayError> {
    middle(b, &a.dom)?;
    let (g, k) = (a.source(), b.target());
    let (hh, hh2) = (&*b.dom, &*b.cod);
    let (gg, gg2) = (&*a.dom, &*a.cod);
    let ha = |c: Cell| hh2.apply(c);
    let bx = |x: Cell| b.x(gg.apply(x));
    let at0 = g.cells(0).map(|x| k.h0(ha(a.x(x)), bx(x))).collect::<Result<_, _>>()?;
    let at1 = g
        .cells(1)
        .map(|f| {
            let (x, y) = (g.src(f), g.tgt(f));
            k.h1(k.h0(ha(a.x(y)), b.f(gg.apply(f)))?, k.h0(ha(a.f(f)), bx(x))?)
        })
        .collect::<Result<_, _>>()?;
    let at2 = g
        .cells(2)
        .map(|p| {
            let (f, f2) = (g.src(p), g.tgt(p));
            let (x, y) = (g.s(p, 0), g.t(p, 0));
            let first = k.h1(k.h0(ha(a.x(y)), b.phi(gg.apply(p)))?, k.h0(ha(a.f(f)), bx(x))?)?;
            let second = k.h1(k.h0(ha(a.x(y)), b.f(gg.apply(f2)))?, k.h0(ha(a.phi(p)), bx(x))?)?;
            k.comp2(second, first)
        })
        .collect::<Result<_, _>>()?;
    let mut coc = BTreeMap::new();
    for (f2, f) in g.composable_pairs() {
        let (x, z) = (g.src(f), g.tgt(f2));
        let t = k.tensor_inv(ha(a.f(f2)), b.f(gg.apply(f)))?;
        let left = k.h0(k.h0(ha(a.x(z)), b.f(gg.apply(f2)))?, hh.apply(gg.apply(f)))?;
        let right = k.h0(hh2.apply(gg2.apply(f2)), k.h0(ha(a.f(f)), bx(x))?)?;
        let stage1 = k.h1(left, k.h1(t, right)?)?;
        let stage2 = k.h1(
            k.h0(ha(a.x(z)), b.two(gg.apply(f2), gg.apply(f)))?,
            k.h0(ha(a.two(f2, f)), bx(x))?,
        )?;
        coc.insert((f2.idx, f.idx), k.comp2(stage2, stage1)?);
    }
    Ok(PseudoTransformation {
        dom: Arc::new(compose_functors(hh, gg)?),
        cod: Arc::new(compose_functors(hh2, gg2)?),
        at0,
        at1,
        at2,
        coc,
    })
}

/// `β *₋₁ α`, a modification `β ▷₋₁ α ⇛ β ◁₋₁ α`.
pub fn transf_transf(b: &PseudoTransformation, a: &PseudoTransformation) -> Result<PseudoModification, GrayError> {
    let (g, k) = (a.source(), b.target());
    let (hh, hh2) = (&*b.dom, &*b.cod);
    let (gg, gg2) = (&*a.dom, &*a.cod);
    let at0 = g.cells(0).map(|x| b.f(a.x(x))).collect();
    let at1 = g
        .cells(1)
        .map(|f| {
            let (x, y) = (g.src(f), g.tgt(f));
            let s1 = k.h1(k.h0(b.x(gg2.apply(y)), hh.apply(a.f(f)))?, b.two(gg2.apply(f), a.x(x)))?;
            let s2 = b.phi(a.f(f));
            let back = k.inv(b.two(a.x(y), gg.apply(f)))?;
            let s3 = k.h1(back, k.h0(hh2.apply(a.f(f)), b.x(gg.apply(x)))?)?;
            k.comp2(s3, k.comp2(s2, s1)?)
        })
        .collect::<Result<_, _>>()?;
    Ok(PseudoModification { dom: Arc::new(rhc(b, a)?), cod: Arc::new(lhc(b, a)?), at0, at1 })
}

/// `β *₋₁ A` for `A: α ⇛ α′`.
pub fn transf_psmod(b: &Arc<PseudoTransformation>, m: &PseudoModification) -> Result<Perturbation, GrayError> {
    let (a, a2) = (&m.dom, &m.cod);
    let hh = Arc::new(functor_psmod(&b.dom, m)?);
    let hh2 = functor_psmod(&b.cod, m)?;
    let bg = Arc::new(transf_functor(b, &a.dom)?);
    let bg2 = Arc::new(transf_functor(b, &a.cod)?);
    let dom = comp1_psmod(&whiskr_psmod(&bg2, &hh)?, &transf_transf(b, a)?)?;
    let cod = comp1_psmod(&transf_transf(b, a2)?, &whiskl_psmod(&hh2, &bg)?)?;
    let at0 = m.at0.iter().map(|&c| b.phi(c)).collect();
    Ok(Perturbation { dom: Arc::new(dom), cod: Arc::new(cod), at0 })
}

/// `B *₋₁ α` for `B: β ⇛ β′`.
pub fn psmod_transf(bm: &PseudoModification, a: &Arc<PseudoTransformation>) -> Result<Perturbation, GrayError> {
    let (b, b2) = (&bm.dom, &bm.cod);
    let h2a = Arc::new(functor_transf(&b.cod, a)?);
    let ha = Arc::new(functor_transf(&b.dom, a)?);
    let bmg = psmod_functor(bm, &a.dom)?;
    let bmg2 = psmod_functor(bm, &a.cod)?;
    let dom = comp1_psmod(&transf_transf(b2, a)?, &whiskr_psmod(&h2a, &bmg)?)?;
    let cod = comp1_psmod(&whiskl_psmod(&bmg2, &ha)?, &transf_transf(b, a)?)?;
    let at0 = a.at0.iter().map(|&c| bm.f(c)).collect();
    Ok(Perturbation { dom: Arc::new(dom), cod: Arc::new(cod), at0 })
}

/// The source transformation of a right argument, at any rank.
fn source_transf(y: &HCell) -> Result<Arc<PseudoTransformation>, GrayError> {
    Ok(match y {
        HCell::Functor(g) => Arc::new(id_pstransf(g)?),
        HCell::Transf(a) => a.clone(),
        HCell::Modif(m) => m.dom.clone(),
        HCell::Pert(p) => p.dom.dom.clone(),
    })
}

/// Rank-overflow entries: the identity perturbation on `β ◁₋₁ A` or `B ◁₋₁ α`.
fn overflow(x: &HCell, y: &HCell) -> Result<Perturbation, GrayError> {
    let m = match (x, y) {
        (HCell::Transf(b), HCell::Pert(p)) => {
            let a = &p.dom;
            let bg2 = Arc::new(transf_functor(b, &a.cod.cod)?);
            whiskr_psmod(&bg2, &functor_psmod(&b.dom, a)?)?
        }
        (HCell::Modif(_) | HCell::Pert(_), _) => {
            let bm = match x {
                HCell::Modif(m) => m.clone(),
                HCell::Pert(p) => p.dom.clone(),
                _ => unreachable!(),
            };
            let a = source_transf(y)?;
            let ha = Arc::new(functor_transf(&bm.dom.dom, &a)?);
            whiskl_psmod(&psmod_functor(&bm, &a.cod)?, &ha)?
        }
        _ => return Err(GrayError::Mismatch("not a rank-overflow pair".into())),
    };
    id_pert(&Arc::new(m))
}

/// `x *₋₁ y` for `x` over `(ℋ, 𝒦)` and `y` over `(𝒢, ℋ)`.
pub fn hcomp(x: &HCell, y: &HCell) -> Result<HCell, GrayError> {
    if !same_cat(x.source(), y.target()) {
        return Err(GrayError::Mismatch(format!(
            "middle categories differ: {} vs {}",
            x.source().name(),
            y.target().name()
        )));
    }
    use HCell::*;
    Ok(match (x, y) {
        (Functor(h), Functor(g)) => Functor(Arc::new(compose_functors(h, g)?)),
        (Functor(h), Transf(a)) => Transf(Arc::new(functor_transf(h, a)?)),
        (Functor(h), Modif(m)) => Modif(Arc::new(functor_psmod(h, m)?)),
        (Functor(h), Pert(p)) => Pert(Arc::new(functor_pert(h, p)?)),
        (Transf(b), Functor(g)) => Transf(Arc::new(transf_functor(b, g)?)),
        (Modif(m), Functor(g)) => Modif(Arc::new(psmod_functor(m, g)?)),
        (Pert(p), Functor(g)) => Pert(Arc::new(pert_functor(p, g)?)),
        (Transf(b), Transf(a)) => Modif(Arc::new(transf_transf(b, a)?)),
        (Transf(b), Modif(m)) => Pert(Arc::new(transf_psmod(b, m)?)),
        (Modif(m), Transf(a)) => Pert(Arc::new(psmod_transf(m, a)?)),
        _ => Pert(Arc::new(overflow(x, y)?)),
    })
}

/// How the two questioned pair-indexed table entries are read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DraftPairs {
    /// The entries are identities: modifications carry no pair-indexed data.
    Identity,
    /// Evaluate the printed candidates `H(A_{f′f})` and `B_{G(f′f)}` and compare them
    /// with the modification's own 1-cell component at the composite.
    Candidate,
}

pub(crate) fn modif_eq(ck: &mut Checker<'_>, axiom: &str, lhs: &PseudoModification, rhs: &PseudoModification) {
    let (g, k) = (lhs.source(), lhs.target());
    for x in g.cells(0) {
        ck.eq(&format!("{axiom} at0"), true, || vec![g.show(x)], || Ok((lhs.x(x), rhs.x(x))));
    }
    for f in g.cells(1) {
        ck.eq(&format!("{axiom} at1"), !g.is_identity(f), || vec![g.show(f)], || Ok((lhs.f(f), rhs.f(f))));
    }
    let same_ends = lhs.dom == rhs.dom && lhs.cod == rhs.cod;
    ck.holds(&format!("{axiom} boundary"), true, Vec::new, same_ends, || {
        format!("the two sides are modifications between different transformations in {}", k.name())
    });
}

pub(crate) fn transf_eq(ck: &mut Checker<'_>, axiom: &str, lhs: &PseudoTransformation, rhs: &PseudoTransformation) {
    let g = lhs.source();
    let nt = |c: Cell| c.dim == 0 || !g.is_identity(c);
    for x in g.cells(0) {
        ck.eq(&format!("{axiom} at0"), true, || vec![g.show(x)], || Ok((lhs.x(x), rhs.x(x))));
    }
    for f in g.cells(1) {
        ck.eq(&format!("{axiom} at1"), nt(f), || vec![g.show(f)], || Ok((lhs.f(f), rhs.f(f))));
    }
    for p in g.cells(2) {
        ck.eq(&format!("{axiom} at2"), nt(p), || vec![g.show(p)], || Ok((lhs.phi(p), rhs.phi(p))));
    }
    for (f2, f) in g.composable_pairs() {
        ck.eq(&format!("{axiom} coc"), nt(f2) && nt(f), || vec![g.show(f2), g.show(f)], || {
            Ok((lhs.two(f2, f), rhs.two(f2, f)))
        });
    }
    let same_ends = lhs.dom == rhs.dom && lhs.cod == rhs.cod;
    ck.holds(&format!("{axiom} boundary"), true, Vec::new, same_ends, || {
        "the two sides are transformations between different functors".to_string()
    });
}

/// Both one-sided composites against their `*₀` expansions, and validity of `β *₋₁ α`.
pub fn check_hcomp_modification(b: &Arc<PseudoTransformation>, a: &Arc<PseudoTransformation>) -> Result<ValidationReport, GrayError> {
    let k = b.target();
    let mut report = ValidationReport::new(format!("beta *-1 alpha over {} -> {}", a.source().name(), k.name()));
    let l = lhc(b, a)?;
    let r = rhc(b, a)?;
    {
        let mut ck = Checker::new(&mut report, k);
        let bg2 = transf_functor(b, &a.cod)?;
        let ha = functor_transf(&b.dom, a)?;
        transf_eq(&mut ck, "lhc expansion", &l, &comp0_pstransf(&bg2, &ha)?);
        let h2a = functor_transf(&b.cod, a)?;
        let bg = transf_functor(b, &a.dom)?;
        transf_eq(&mut ck, "rhc expansion", &r, &comp0_pstransf(&h2a, &bg)?);
    }
    report.merge(validate_pstransf(&l)?);
    report.merge(validate_pstransf(&r)?);
    report.merge(validate_psmod(&transf_transf(b, a)?)?);
    Ok(report)
}

/// `β *₋₁ id_G = id_{β *₋₁ G}`.
pub fn check_pasteunit(b: &Arc<PseudoTransformation>, g: &Arc<GrayFunctor>) -> Result<ValidationReport, GrayError> {
    let k = b.target();
    let mut report = ValidationReport::new(format!("paste unit over {} -> {}", g.dom.name(), k.name()));
    let lhs = transf_transf(b, &id_pstransf(g)?)?;
    let rhs = id_psmod(&Arc::new(transf_functor(b, g)?))?;
    modif_eq(&mut Checker::new(&mut report, k), "paste unit", &lhs, &rhs);
    Ok(report)
}

/// `(β′ *₀ β) *₋₁ α` against the pasting of `β′ *₋₁ α` and `β *₋₁ α`.
pub fn check_interchange(
    b2: &Arc<PseudoTransformation>,
    b1: &Arc<PseudoTransformation>,
    a: &Arc<PseudoTransformation>,
) -> Result<ValidationReport, GrayError> {
    check_interchange_with(b2, b1, a, &comp0_pstransf(b2, b1)?)
}

/// [`check_interchange`] with the composite `β′ *₀ β` supplied by the caller.
pub fn check_interchange_with(
    b2: &Arc<PseudoTransformation>,
    b1: &Arc<PseudoTransformation>,
    a: &Arc<PseudoTransformation>,
    composite: &PseudoTransformation,
) -> Result<ValidationReport, GrayError> {
    let k = b1.target();
    let mut report = ValidationReport::new(format!("interchange over {} -> {}", a.source().name(), k.name()));
    let upper = whiskr_psmod(&Arc::new(transf_functor(b2, &a.cod)?), &transf_transf(b1, a)?)?;
    let lower = whiskl_psmod(&transf_transf(b2, a)?, &Arc::new(transf_functor(b1, &a.dom)?))?;
    let lhs = comp1_psmod(&upper, &lower)?;
    let rhs = transf_transf(composite, a)?;
    modif_eq(&mut Checker::new(&mut report, k), "interchange", &lhs, &rhs);
    Ok(report)
}

/// Builds `β *₋₁ A` or `B *₋₁ α` and validates it as a perturbation.
pub fn check_hcomp_perturbations(x: &HCell, y: &HCell) -> Result<ValidationReport, GrayError> {
    match (x.rank(), y.rank()) {
        (1, 2) | (2, 1) => {}
        (r1, r2) => return Err(GrayError::Mismatch(format!("ranks ({r1}, {r2}) do not give a perturbation"))),
    }
    let r = hcomp(x, y)?;
    let mut report = ValidationReport::new(format!("{} *-1 {}", x.kind(), y.kind()));
    report.merge(r.validate()?);
    Ok(report)
}

/// Rank and validity of `x *₋₁ y`, plus the questioned pair entries when asked.
pub fn check_hcomp_typing(x: &HCell, y: &HCell, draft: DraftPairs) -> Result<ValidationReport, GrayError> {
    let r = hcomp(x, y)?;
    let k = x.target();
    let want = (x.rank() + y.rank()).min(3);
    let mut report = ValidationReport::new(format!("{} *-1 {}", x.kind(), y.kind()));
    {
        let mut ck = Checker::new(&mut report, k);
        ck.holds("hcomp rank", true, || vec![x.kind().into(), y.kind().into()], r.rank() == want, || {
            format!("result has rank {}, expected {want}", r.rank())
        });
        if draft == DraftPairs::Candidate {
            pair_candidates(&mut ck, x, y, &r)?;
        }
    }
    report.merge(r.validate()?);
    Ok(report)
}

type CandidateFn = Box<dyn Fn(Cell, Cell) -> Result<Cell, GrayError>>;

fn pair_candidates(ck: &mut Checker<'_>, x: &HCell, y: &HCell, r: &HCell) -> Result<(), GrayError> {
    let HCell::Modif(m) = r else { return Ok(()) };
    let (label, cand): (&str, CandidateFn) = match (x, y) {
        (HCell::Functor(h), HCell::Modif(a)) => {
            let (h, a) = (h.clone(), a.clone());
            ("H(A_f'f)", Box::new(move |f2, f| Ok(h.apply(a.f(a.source().comp0(f2, f)?)))))
        }
        (HCell::Modif(bm), HCell::Functor(g)) => {
            let (bm, g) = (bm.clone(), g.clone());
            ("B_G(f'f)", Box::new(move |f2, f| Ok(bm.f(g.apply(g.dom.comp0(f2, f)?)))))
        }
        _ => return Ok(()),
    };
    let g = m.source();
    let axiom = format!("pair entry {label}");
    for (f2, f) in g.composable_pairs() {
        ck.eq(&axiom, !g.is_identity(f2) && !g.is_identity(f), || vec![g.show(f2), g.show(f)], || {
            Ok((cand(f2, f)?, m.f(g.comp0(f2, f)?)))
        });
    }
    ck.report.note(format!(
        "pair entry {label}: equals the 1-cell component at the composite, so it carries no independent data; resolved as id"
    ));
    Ok(())
}
