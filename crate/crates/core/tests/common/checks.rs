//! Exhaustive property checks shared by the integration tests and the acceptance gate.
//! Each returns the number of instances checked, or the first failure.

use std::sync::Arc;

use graycat::hcomp::{
    check_hcomp_modification, check_hcomp_typing, check_interchange, check_pasteunit, hcomp, DraftPairs, HCell,
};
use graycat::hom_calculus::{comp0_pstransf, comp1_psmod, comp2_pert, whiskl_psmod, whiskr_psmod};
use graycat::mapping_space::{build_mapping_space, check_l_homomorphism, check_l_welldef, MappingSpace};
use graycat::transfors::{
    id_pert, id_psmod, id_pstransf, validate_perturbation, validate_psmod, validate_pstransf, PseudoTransformation,
};
use graycat::{Cell, FiniteGrayCategory as Cat, ValidationReport};

pub type Outcome = Result<usize, String>;

fn ok_report(r: Result<ValidationReport, graycat::GrayError>, what: &str) -> Result<(), String> {
    match r {
        Ok(r) if r.ok() => Ok(()),
        Ok(r) => Err(format!("{what}: {}", r.render())),
        Err(e) => Err(format!("{what}: {e}")),
    }
}

fn eq<T: PartialEq>(a: T, b: T, what: &str) -> Result<(), String> {
    if a == b {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn composable_transfs(ms: &MappingSpace) -> Vec<(Arc<PseudoTransformation>, Arc<PseudoTransformation>)> {
    let t = &ms.transfs;
    t.iter().flat_map(|b2| t.iter().filter(move |b1| b1.cod == b2.dom).map(move |b1| (b2.clone(), b1.clone()))).collect()
}

/// Closure, unit laws and associativity of the composites and whiskers inside one space.
pub fn hom_calculus(ms: &MappingSpace) -> Outcome {
    let mut n = 0;
    let e = |x: graycat::GrayError| x.to_string();
    for b in &ms.transfs {
        let l = comp0_pstransf(&id_pstransf(&b.cod).map_err(e)?, b).map_err(e)?;
        let r = comp0_pstransf(b, &id_pstransf(&b.dom).map_err(e)?).map_err(e)?;
        eq(&l, &**b, "comp0 left unit")?;
        eq(&r, &**b, "comp0 right unit")?;
        n += 2;
    }
    for (b2, b1) in composable_transfs(ms) {
        let c = comp0_pstransf(&b2, &b1).map_err(e)?;
        ok_report(validate_pstransf(&c), "comp0 closure")?;
        n += 1;
        for b0 in ms.transfs.iter().filter(|b0| b0.cod == b1.dom) {
            let lhs = comp0_pstransf(&c, b0).map_err(e)?;
            let rhs = comp0_pstransf(&b2, &comp0_pstransf(&b1, b0).map_err(e)?).map_err(e)?;
            eq(lhs, rhs, "comp0 associativity")?;
            n += 1;
        }
    }
    for a in &ms.modifs {
        eq(&comp1_psmod(&id_psmod(&a.cod).map_err(e)?, a).map_err(e)?, &**a, "comp1 left unit")?;
        eq(&comp1_psmod(a, &id_psmod(&a.dom).map_err(e)?).map_err(e)?, &**a, "comp1 right unit")?;
        n += 2;
        for a2 in ms.modifs.iter().filter(|a2| a2.dom == a.cod) {
            let c = comp1_psmod(a2, a).map_err(e)?;
            ok_report(validate_psmod(&c), "comp1 closure")?;
            n += 1;
            for a3 in ms.modifs.iter().filter(|a3| a3.dom == a2.cod) {
                let lhs = comp1_psmod(a3, &c).map_err(e)?;
                let rhs = comp1_psmod(&comp1_psmod(a3, a2).map_err(e)?, a).map_err(e)?;
                eq(lhs, rhs, "comp1 associativity")?;
                n += 1;
            }
        }
        for b in ms.transfs.iter().filter(|b| b.dom == a.dom.cod) {
            let w = whiskr_psmod(b, a).map_err(e)?;
            ok_report(validate_psmod(&w), "whiskr closure")?;
            n += 1;
        }
        for b in ms.transfs.iter().filter(|b| b.cod == a.dom.dom) {
            let w = whiskl_psmod(a, b).map_err(e)?;
            ok_report(validate_psmod(&w), "whiskl closure")?;
            n += 1;
        }
        let idl = whiskr_psmod(&Arc::new(id_pstransf(&a.dom.cod).map_err(e)?), a).map_err(e)?;
        let idr = whiskl_psmod(a, &Arc::new(id_pstransf(&a.dom.dom).map_err(e)?)).map_err(e)?;
        eq(&idl, &**a, "whiskr unit")?;
        eq(&idr, &**a, "whiskl unit")?;
        n += 2;
    }
    for d in &ms.perts {
        eq(&comp2_pert(&id_pert(&d.cod).map_err(e)?, d).map_err(e)?, &**d, "comp2 left unit")?;
        eq(&comp2_pert(d, &id_pert(&d.dom).map_err(e)?).map_err(e)?, &**d, "comp2 right unit")?;
        n += 2;
        for d2 in ms.perts.iter().filter(|d2| d2.dom == d.cod) {
            let c = comp2_pert(d2, d).map_err(e)?;
            ok_report(validate_perturbation(&c), "comp2 closure")?;
            n += 1;
            for d3 in ms.perts.iter().filter(|d3| d3.dom == d2.cod) {
                let lhs = comp2_pert(d3, &c).map_err(e)?;
                let rhs = comp2_pert(&comp2_pert(d3, d2).map_err(e)?, d).map_err(e)?;
                eq(lhs, rhs, "comp2 associativity")?;
                n += 1;
            }
        }
    }
    Ok(n)
}

/// `(β′ *₀ β)²` against a stage-by-stage pasting with the explicit primitive operations,
/// pasting the two cocycle 3-cells in the opposite interchange order.
pub fn composite_cocycle_oracle(ms: &MappingSpace) -> Outcome {
    let mut n = 0;
    let e = |x: graycat::GrayError| x.to_string();
    for (b2, b1) in composable_transfs(ms) {
        let got = comp0_pstransf(&b2, &b1).map_err(e)?;
        let (g, h) = (b1.source(), b1.target());
        let (ff, hh) = (&b1.dom, &b2.cod);
        for (f2, f) in g.composable_pairs() {
            let (x, z) = (g.src(f), g.tgt(f2));
            let oracle = (|| -> Result<Cell, graycat::GrayError> {
                let swap = h.inv(h.tensor(b2.f(f2), b1.f(f))?)?;
                let left = h.wr(h.wl(b2.x(z), b1.f(f2))?, ff.apply(f))?;
                let right = h.wl(hh.apply(f2), h.wr(b2.f(f), b1.x(x))?)?;
                let stage1 = h.mid_l(left, h.mid_r(swap, right)?)?;
                let upper = h.wl3(b2.x(z), b1.two(f2, f))?;
                let lower = h.wr3(b2.two(f2, f), b1.x(x))?;
                let stage2 = h.comp2(h.mid_l(h.tgt(upper), lower)?, h.mid_r(upper, h.src(lower))?)?;
                h.comp2(stage2, stage1)
            })()
            .map_err(e)?;
            eq(got.two(f2, f), oracle, "composite cocycle")?;
            n += 1;
        }
    }
    Ok(n)
}

/// `β *₋₁ id_G = id_{β *₋₁ G}` for every `β` in `[H,K]` and `G: G′ → H`.
pub fn pasteunit(g: &Arc<Cat>, hk: &MappingSpace) -> Outcome {
    let gs = graycat::gray_maps::enumerate_functors(g, &hk.dom).map_err(|e| e.to_string())?;
    let mut n = 0;
    for b in &hk.transfs {
        for f in &gs {
            ok_report(check_pasteunit(b, &Arc::new(f.clone())), "pasteunit")?;
            n += 1;
        }
    }
    Ok(n)
}

pub fn interchange(gh: &MappingSpace, hk: &MappingSpace) -> Outcome {
    let mut n = 0;
    for (b2, b1) in composable_transfs(hk) {
        for a in &gh.transfs {
            ok_report(check_interchange(&b2, &b1, a), "interchange")?;
            n += 1;
        }
    }
    Ok(n)
}

/// Every rank pair of `x *₋₁ y`, with `x` in `[H,K]` and `y` in `[G,H]`; returns the
/// number of distinct (rank, rank) cases seen.
pub fn hcomp_typing(gh: &MappingSpace, hk: &MappingSpace) -> Result<(usize, Vec<String>), String> {
    let cells = |ms: &MappingSpace| (0..4u8).flat_map(|k| ms.space.cells(k).collect::<Vec<_>>()).map(|c| ms.value(c)).collect::<Vec<_>>();
    let mut cases = std::collections::BTreeSet::new();
    let mut notes = std::collections::BTreeSet::new();
    for x in cells(hk) {
        for y in cells(gh) {
            let r = check_hcomp_typing(&x, &y, DraftPairs::Candidate).map_err(|e| e.to_string())?;
            if !r.ok() {
                return Err(r.render());
            }
            notes.extend(r.notes);
            cases.insert((x.rank(), y.rank()));
        }
    }
    Ok((cases.len(), notes.into_iter().collect()))
}

/// `β *₋₁ α`, `β *₋₁ A` and `B *₋₁ α` validate for all inputs.
pub fn hcomp_lemmas(gh: &MappingSpace, hk: &MappingSpace) -> Outcome {
    let mut n = 0;
    for b in &hk.transfs {
        for a in &gh.transfs {
            ok_report(check_hcomp_modification(b, a), "beta *-1 alpha")?;
            n += 1;
        }
        for m in &gh.modifs {
            let r = hcomp(&HCell::Transf(b.clone()), &HCell::Modif(m.clone())).map_err(|e| e.to_string())?;
            ok_report(r.validate(), "beta *-1 A")?;
            n += 1;
        }
    }
    for bm in &hk.modifs {
        for a in &gh.transfs {
            let r = hcomp(&HCell::Modif(bm.clone()), &HCell::Transf(a.clone())).map_err(|e| e.to_string())?;
            ok_report(r.validate(), "B *-1 alpha")?;
            n += 1;
        }
    }
    Ok(n)
}

/// Well-definedness of `L` and `L(β′) *₀ L(β) = L(β′ *₀ β)` with the nested spaces over `d`.
pub fn l_checks(d: &Arc<Cat>, h: &Arc<Cat>, k: &Arc<Cat>) -> Outcome {
    let e = |x: graycat::GrayError| x.to_string();
    let s = build_mapping_space(d, h).map_err(e)?;
    let t = build_mapping_space(d, k).map_err(e)?;
    let outer = build_mapping_space(h, k).map_err(e)?;
    ok_report(check_l_welldef(&outer, &s, &t), "L well-defined")?;
    let mut n = outer.space.counts().iter().sum();
    for (b2, b1) in composable_transfs(&outer) {
        ok_report(check_l_homomorphism(&b2, &b1, &s, &t), "L homomorphism")?;
        n += 1;
    }
    Ok(n)
}
