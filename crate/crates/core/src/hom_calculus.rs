//! Composites and whiskers of transformations, modifications and perturbations
//! inside one mapping space.
//!
//! Each component is a left-to-right fold of `#₀`, `#₁`, `#₂` and tensor steps;
//! `h.h1(a, b)` pastes `a` after `b` along 2-cells and `h.comp2(d, c)` stacks `d` on `c`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::gray_core::{Cell, GrayError};
use crate::transfors::{Perturbation, PseudoModification, PseudoTransformation};

fn need(ok: bool, what: &str) -> Result<(), GrayError> {
    if ok {
        Ok(())
    } else {
        Err(GrayError::Mismatch(what.to_string()))
    }
}

/// `β′ *₀ β` for `β: F ⇒ G` and `β′: G ⇒ H`.
pub fn comp0_pstransf(b2: &PseudoTransformation, b1: &PseudoTransformation) -> Result<PseudoTransformation, GrayError> {
    need(b1.cod == b2.dom, "comp0: target of the first transformation is not the source of the second")?;
    let (g, h) = (b1.source(), b1.target());
    let (ff, hh) = (&*b1.dom, &*b2.cod);
    let at0 = g.cells(0).map(|x| h.comp0(b2.x(x), b1.x(x))).collect::<Result<_, _>>()?;
    let at1 = g
        .cells(1)
        .map(|f| {
            let (x, y) = (g.src(f), g.tgt(f));
            h.h1(h.h0(b2.x(y), b1.f(f))?, h.h0(b2.f(f), b1.x(x))?)
        })
        .collect::<Result<_, _>>()?;
    let at2 = g
        .cells(2)
        .map(|p| {
            let (f, f2) = (g.src(p), g.tgt(p));
            let (x, y) = (g.s(p, 0), g.t(p, 0));
            let first = h.h1(h.h0(b2.x(y), b1.phi(p))?, h.h0(b2.f(f), b1.x(x))?)?;
            let second = h.h1(h.h0(b2.x(y), b1.f(f2))?, h.h0(b2.phi(p), b1.x(x))?)?;
            h.comp2(second, first)
        })
        .collect::<Result<_, _>>()?;
    let mut coc = BTreeMap::new();
    for (f2, f) in g.composable_pairs() {
        let (x, z) = (g.src(f), g.tgt(f2));
        let t = h.tensor_inv(b2.f(f2), b1.f(f))?;
        let left = h.h0(h.h0(b2.x(z), b1.f(f2))?, ff.apply(f))?;
        let right = h.h0(hh.apply(f2), h.h0(b2.f(f), b1.x(x))?)?;
        let stage1 = h.h1(left, h.h1(t, right)?)?;
        let stage2 = h.h1(h.h0(b2.x(z), b1.two(f2, f))?, h.h0(b2.two(f2, f), b1.x(x))?)?;
        coc.insert((f2.idx, f.idx), h.comp2(stage2, stage1)?);
    }
    Ok(PseudoTransformation { dom: b1.dom.clone(), cod: b2.cod.clone(), at0, at1, at2, coc })
}

/// `A′ *₁ A` for `A: α ⇛ β` and `A′: β ⇛ γ`.
pub fn comp1_psmod(a2: &PseudoModification, a1: &PseudoModification) -> Result<PseudoModification, GrayError> {
    need(a1.cod == a2.dom, "comp1: target of the first modification is not the source of the second")?;
    let (g, h) = (a1.source(), a1.target());
    let (ff, gg) = (&*a1.dom.dom, &*a1.dom.cod);
    let at0 = g.cells(0).map(|x| h.comp1(a2.x(x), a1.x(x))).collect::<Result<_, _>>()?;
    let at1 = g
        .cells(1)
        .map(|f| {
            let (x, y) = (g.src(f), g.tgt(f));
            let first = h.h1(a2.f(f), h.h0(gg.apply(f), a1.x(x))?)?;
            let second = h.h1(h.h0(a2.x(y), ff.apply(f))?, a1.f(f))?;
            h.comp2(second, first)
        })
        .collect::<Result<_, _>>()?;
    Ok(PseudoModification { dom: a1.dom.clone(), cod: a2.cod.clone(), at0, at1 })
}

/// `β *₀ A` for `A: α ⇛ α′` between transformations `F ⇒ G` and `β: G ⇒ H`.
pub fn whiskr_psmod(b: &Arc<PseudoTransformation>, a: &PseudoModification) -> Result<PseudoModification, GrayError> {
    need(a.dom.cod == b.dom, "whisker: transformation does not follow the modification")?;
    let (al, al2) = (&*a.dom, &*a.cod);
    let (g, h) = (a.source(), a.target());
    let at0 = g.cells(0).map(|x| h.h0(b.x(x), a.x(x))).collect::<Result<_, _>>()?;
    let at1 = g
        .cells(1)
        .map(|f| {
            let (x, y) = (g.src(f), g.tgt(f));
            let y_inv = h.tensor_inv(b.f(f), a.x(x))?;
            let first = h.h1(h.h0(b.x(y), al2.f(f))?, y_inv)?;
            let second = h.h1(h.h0(b.x(y), a.f(f))?, h.h0(b.f(f), al.x(x))?)?;
            h.comp2(second, first)
        })
        .collect::<Result<_, _>>()?;
    Ok(PseudoModification {
        dom: Arc::new(comp0_pstransf(b, al)?),
        cod: Arc::new(comp0_pstransf(b, al2)?),
        at0,
        at1,
    })
}

/// `B *₀ α` for `α: F ⇒ G` and `B: β ⇛ β′` between transformations `G ⇒ H`.
pub fn whiskl_psmod(bm: &PseudoModification, a: &Arc<PseudoTransformation>) -> Result<PseudoModification, GrayError> {
    need(a.cod == bm.dom.dom, "whisker: modification does not follow the transformation")?;
    let (be, be2) = (&*bm.dom, &*bm.cod);
    let (g, h) = (a.source(), a.target());
    let at0 = g.cells(0).map(|x| h.h0(bm.x(x), a.x(x))).collect::<Result<_, _>>()?;
    let at1 = g
        .cells(1)
        .map(|f| {
            let (x, y) = (g.src(f), g.tgt(f));
            let first = h.h1(h.h0(be2.x(y), a.f(f))?, h.h0(bm.f(f), a.x(x))?)?;
            let z = h.tensor(bm.x(y), a.f(f))?;
            let second = h.h1(z, h.h0(be.f(f), a.x(x))?)?;
            h.comp2(second, first)
        })
        .collect::<Result<_, _>>()?;
    Ok(PseudoModification {
        dom: Arc::new(comp0_pstransf(be, a)?),
        cod: Arc::new(comp0_pstransf(be2, a)?),
        at0,
        at1,
    })
}

/// `Δ′ *₂ Δ`.
pub fn comp2_pert(d2: &Perturbation, d1: &Perturbation) -> Result<Perturbation, GrayError> {
    need(d1.cod == d2.dom, "comp2: perturbations are not composable")?;
    let h = d1.target();
    let at0 = d1.at0.iter().zip(&d2.at0).map(|(&c1, &c2)| h.comp2(c2, c1)).collect::<Result<_, _>>()?;
    Ok(Perturbation { dom: d1.dom.clone(), cod: d2.cod.clone(), at0 })
}

/// `β *₀ Γ`, componentwise `β_x #₀ Γ_x`.
pub fn whiskr_pert(b: &Arc<PseudoTransformation>, p: &Perturbation) -> Result<Perturbation, GrayError> {
    let h = p.target();
    let at0 = p.at0.iter().zip(&b.at0).map(|(&c, &bx)| h.h0(bx, c)).collect::<Result<_, _>>()?;
    Ok(Perturbation {
        dom: Arc::new(whiskr_psmod(b, &p.dom)?),
        cod: Arc::new(whiskr_psmod(b, &p.cod)?),
        at0,
    })
}

/// `Γ *₀ α`, componentwise `Γ_x #₀ α_x`.
pub fn whiskl_pert(p: &Perturbation, a: &Arc<PseudoTransformation>) -> Result<Perturbation, GrayError> {
    let h = p.target();
    let at0 = p.at0.iter().zip(&a.at0).map(|(&c, &ax)| h.h0(c, ax)).collect::<Result<_, _>>()?;
    Ok(Perturbation {
        dom: Arc::new(whiskl_psmod(&p.dom, a)?),
        cod: Arc::new(whiskl_psmod(&p.cod, a)?),
        at0,
    })
}

/// `M *₁ Γ` for `Γ: A ⇛ B` with `A, B: α ⇛ β` and `M: β ⇛ γ`.
pub fn mid_l_pert(m: &PseudoModification, p: &Perturbation) -> Result<Perturbation, GrayError> {
    let h = p.target();
    let at0 = p.at0.iter().zip(&m.at0).map(|(&c, &mx)| h.mid_l(mx, c)).collect::<Result<_, _>>()?;
    Ok(Perturbation {
        dom: Arc::new(comp1_psmod(m, &p.dom)?),
        cod: Arc::new(comp1_psmod(m, &p.cod)?),
        at0,
    })
}

/// `Γ *₁ M` for `M: α ⇛ β` and `Γ: A ⇛ B` with `A, B: β ⇛ γ`.
pub fn mid_r_pert(p: &Perturbation, m: &PseudoModification) -> Result<Perturbation, GrayError> {
    let h = p.target();
    let at0 = p.at0.iter().zip(&m.at0).map(|(&c, &mx)| h.mid_r(c, mx)).collect::<Result<_, _>>()?;
    Ok(Perturbation {
        dom: Arc::new(comp1_psmod(&p.dom, m)?),
        cod: Arc::new(comp1_psmod(&p.cod, m)?),
        at0,
    })
}

/// The interchanger `B ⊗ A` of two modifications meeting at a transformation, componentwise `B_x ⊗ A_x`.
pub fn tensor_psmod(b: &Arc<PseudoModification>, a: &Arc<PseudoModification>) -> Result<Perturbation, GrayError> {
    need(a.dom.cod == b.dom.dom, "tensor: modifications do not meet")?;
    let h = a.target();
    let at0: Vec<Cell> = a.at0.iter().zip(&b.at0).map(|(&ax, &bx)| h.tensor(bx, ax)).collect::<Result<_, _>>()?;
    let (be, be2) = (&b.dom, &b.cod);
    let (al, al2) = (&a.dom, &a.cod);
    let dom = comp1_psmod(&whiskr_psmod(be2, a)?, &whiskl_psmod(b, al)?)?;
    let cod = comp1_psmod(&whiskl_psmod(b, al2)?, &whiskr_psmod(be, a)?)?;
    Ok(Perturbation { dom: Arc::new(dom), cod: Arc::new(cod), at0 })
}
