#![allow(dead_code)]

pub mod checks;

use std::sync::Arc;

use graycat::gray_core::{build_bicharacter_gray, build_chain, build_walking, AbelianGroup};
use graycat::gray_maps::{validate_functor, GrayFunctor};
use graycat::gray_maps::enumerate_functors;
use graycat::transfors::{
    enumerate_pert, enumerate_psmod, enumerate_pstransf, validate_perturbation, validate_psmod, validate_pstransf,
    Perturbation, PseudoModification, PseudoTransformation,
};
use graycat::{Cell, FiniteGrayCategory as Cat, Op, ValidationReport};

pub fn bc(c11: usize) -> Arc<Cat> {
    let z2 = AbelianGroup::cyclic(2);
    Arc::new(build_bicharacter_gray(&z2, &z2, &[vec![0, 0], vec![0, c11]]).unwrap())
}

pub fn bc4() -> Arc<Cat> {
    let z4 = AbelianGroup::cyclic(4);
    let c: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| a * b % 4).collect()).collect();
    Arc::new(build_bicharacter_gray(&z4, &z4, &c).unwrap())
}

pub fn walking(k: u8) -> Arc<Cat> {
    Arc::new(build_walking(k))
}

pub fn chain(n: u32) -> Arc<Cat> {
    Arc::new(build_chain(n))
}

/// Every category named by the acceptance suite, with a label.
pub fn all_fixtures() -> Vec<(&'static str, Arc<Cat>)> {
    vec![
        ("walking0", walking(0)),
        ("walking1", walking(1)),
        ("walking2", walking(2)),
        ("walking3", walking(3)),
        ("chain2", chain(2)),
        ("BC c=1", bc(1)),
        ("BC c=0", bc(0)),
        ("BC Z/4", bc4()),
    ]
}

/// `(G, H)` pairs whose mapping-space cells the tests enumerate.
pub fn fixture_pairs() -> Vec<(Arc<Cat>, Arc<Cat>)> {
    vec![
        (walking(0), bc(1)),
        (walking(1), bc(1)),
        (walking(2), bc(1)),
        (chain(2), bc(1)),
        (bc(1), bc(1)),
        (bc(0), bc(0)),
        (walking(1), walking(2)),
    ]
}

/// Pairs small enough to materialize `[G, H]` in a debug build.
pub fn space_pairs() -> Vec<(Arc<Cat>, Arc<Cat>)> {
    vec![
        (walking(0), bc(1)),
        (walking(1), bc(1)),
        (bc(1), bc(1)),
        (bc(0), bc(0)),
        (walking(1), walking(2)),
    ]
}

pub const TRANSFORMATION_AXIOMS: [&str; 8] = [
    "transformation: identity 1-cell",
    "transformation: identity 2-cell",
    "transformation: 2-cell composition",
    "transformation: 3-cell naturality",
    "transformation: cocycle",
    "transformation: cocycle normalization",
    "transformation: left whisker",
    "transformation: right whisker",
];

pub const MODIFICATION_AXIOMS: [&str; 3] = ["modification: unit", "modification: cocycle", "modification: 2-cell"];

pub struct Families {
    pub transfs: Vec<Arc<PseudoTransformation>>,
    pub modifs: Vec<Arc<PseudoModification>>,
    pub coverage: ValidationReport,
}

pub fn families(g: &Arc<Cat>, h: &Arc<Cat>, max_modif_pairs: usize) -> Families {
    let mut coverage = ValidationReport::new("coverage");
    let fs: Vec<_> = enumerate_functors(g, h).unwrap().into_iter().map(Arc::new).collect();
    let mut transfs = Vec::new();
    for f in &fs {
        for k in &fs {
            for a in enumerate_pstransf(f, k).unwrap() {
                let r = validate_pstransf(&a).unwrap();
                assert!(r.ok(), "{}", r.render());
                coverage.merge(r);
                transfs.push(Arc::new(a));
            }
        }
    }
    let mut modifs = Vec::new();
    let pairs: Vec<_> = transfs
        .iter()
        .flat_map(|a| transfs.iter().filter(move |b| a.dom == b.dom && a.cod == b.cod).map(move |b| (a, b)))
        .take(max_modif_pairs)
        .collect();
    for (a, b) in pairs {
        for m in enumerate_psmod(a, b).unwrap() {
            let r = validate_psmod(&m).unwrap();
            assert!(r.ok(), "{}", r.render());
            coverage.merge(r);
            modifs.push(Arc::new(m));
        }
    }
    Families { transfs, modifs, coverage }
}

pub fn all_axioms() -> impl Iterator<Item = &'static str> {
    TRANSFORMATION_AXIOMS.into_iter().chain(MODIFICATION_AXIOMS).chain(["perturbation: 1-cell"])
}

/// Validates every enumerated transformation, modification and (a sample of) perturbation
/// over the fixture pairs, merging the per-axiom coverage counters.
pub fn fixture_coverage() -> ValidationReport {
    let mut coverage = ValidationReport::new("coverage");
    for (g, h) in fixture_pairs() {
        let fam = families(&g, &h, 64);
        for a in fam.modifs.iter().take(16) {
            for b in fam.modifs.iter().filter(|b| b.dom == a.dom && b.cod == a.cod).take(4) {
                for p in enumerate_pert(a, b).unwrap() {
                    let r = validate_perturbation(&p).unwrap();
                    assert!(r.ok(), "{}", r.render());
                    coverage.merge(r);
                }
            }
        }
        coverage.merge(fam.coverage);
    }
    coverage
}
/// A category with one stored entry replaced.
pub struct Mutant {
    pub what: String,
    pub cat: Cat,
}

/// Every single-entry corruption of the identity and operation tables.
pub fn mutants(c: &Cat) -> Vec<Mutant> {
    let mut out = Vec::new();
    for k in 0..3u8 {
        for x in c.cells(k) {
            let Some(old) = c.stored_id(x) else { continue };
            for y in c.cells(k + 1).filter(|&y| y != old) {
                let mut m = c.clone();
                m.set_id(x, Some(y));
                out.push(Mutant { what: format!("id {} = {}", c.show(x), c.show(y)), cat: m });
            }
        }
    }
    for op in Op::ALL {
        for (a, b, old) in c.entries(op) {
            for y in c.cells(op.result_dim()).filter(|&y| y != old) {
                let mut m = c.clone();
                m.set_entry(op, a, b, Some(y));
                out.push(Mutant {
                    what: format!("{} {} {} = {}", op.keyword(), c.show(a), c.show(b), c.show(y)),
                    cat: m,
                });
            }
        }
    }
    out
}

/// Every bilinear `c′: Z/2 × Z/2 → Z/2`, as BC fixtures; a mutant equal to one of them is
/// an equivalent mutant.
pub fn bc_z2_family() -> Vec<Arc<Cat>> {
    vec![bc(0), bc(1)]
}

/// All assignments of cells of the given dimensions, in lexicographic order.
fn assignments(h: &Cat, dims: &[u8]) -> Vec<Vec<Cell>> {
    let mut out = vec![Vec::new()];
    for &k in dims {
        let mut next = Vec::new();
        for prefix in &out {
            for c in h.cells(k) {
                let mut p = prefix.clone();
                p.push(c);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Brute force over all cell maps, keeping those that validate.
pub fn oracle_functors(g: &Arc<Cat>, h: &Arc<Cat>) -> Vec<Arc<GrayFunctor>> {
    let dims: Vec<u8> = (0..4u8).flat_map(|k| std::iter::repeat_n(k, g.count(k))).collect();
    assignments(h, &dims)
        .into_iter()
        .filter_map(|a| {
            let mut map: [Vec<u32>; 4] = Default::default();
            for (c, k) in a.iter().zip(&dims) {
                map[*k as usize].push(c.idx);
            }
            let f = GrayFunctor::new(g.clone(), h.clone(), map).ok()?;
            validate_functor(&f).ok().then(|| Arc::new(f))
        })
        .collect()
}

fn split(a: &[Cell], sizes: &[usize]) -> Vec<Vec<Cell>> {
    let mut out = Vec::new();
    let mut i = 0;
    for &n in sizes {
        out.push(a[i..i + n].to_vec());
        i += n;
    }
    out
}

/// Brute force over all component choices of the right dimensions; boundary
/// mismatches surface as validator errors and are dropped.
pub fn oracle_transfs(f: &Arc<GrayFunctor>, g: &Arc<GrayFunctor>) -> Vec<Arc<PseudoTransformation>> {
    let (d, h) = (&f.dom, &f.cod);
    let pairs = d.composable_pairs();
    let sizes = [d.count(0), d.count(1), d.count(2), pairs.len()];
    let dims: Vec<u8> = (0..4).flat_map(|k| std::iter::repeat_n(k as u8 + 1, sizes[k]).map(|x| x.min(3))).collect();
    let mut out = Vec::new();
    // Components are chosen dimension by dimension so that a bad prefix is skipped early.
    for at0 in assignments(h, &dims[..sizes[0]]) {
        let ok0 = d.cells(0).all(|x| {
            let c = at0[x.idx as usize];
            h.src(c) == f.apply(x) && h.tgt(c) == g.apply(x)
        });
        if !ok0 {
            continue;
        }
        for rest in assignments(h, &dims[sizes[0]..]) {
            let parts = split(&rest, &sizes[1..]);
            let a = PseudoTransformation {
                dom: f.clone(),
                cod: g.clone(),
                at0: at0.clone(),
                at1: parts[0].clone(),
                at2: parts[1].clone(),
                coc: pairs.iter().zip(&parts[2]).map(|(&(x, y), &c)| ((x.idx, y.idx), c)).collect(),
            };
            if validate_pstransf(&a).is_ok_and(|r| r.ok()) {
                out.push(Arc::new(a));
            }
        }
    }
    out
}

pub fn oracle_psmods(a: &Arc<PseudoTransformation>, b: &Arc<PseudoTransformation>) -> Vec<Arc<PseudoModification>> {
    let (d, h) = (a.source(), a.target());
    let dims: Vec<u8> = std::iter::repeat_n(2, d.count(0)).chain(std::iter::repeat_n(3, d.count(1))).collect();
    assignments(h, &dims)
        .into_iter()
        .filter_map(|v| {
            let (at0, at1) = v.split_at(d.count(0));
            let m = PseudoModification { dom: a.clone(), cod: b.clone(), at0: at0.to_vec(), at1: at1.to_vec() };
            validate_psmod(&m).is_ok_and(|r| r.ok()).then(|| Arc::new(m))
        })
        .collect()
}

pub fn oracle_perts(a: &Arc<PseudoModification>, b: &Arc<PseudoModification>) -> Vec<Arc<Perturbation>> {
    let d = a.source();
    let dims = vec![3u8; d.count(0)];
    assignments(a.target(), &dims)
        .into_iter()
        .filter_map(|at0| {
            let p = Perturbation { dom: a.clone(), cod: b.clone(), at0 };
            validate_perturbation(&p).is_ok_and(|r| r.ok()).then(|| Arc::new(p))
        })
        .collect()
}

/// Per-dimension cell counts of `[g, h]` from the brute-force oracles alone.
pub fn oracle_counts(g: &Arc<Cat>, h: &Arc<Cat>) -> [usize; 4] {
    let fs = oracle_functors(g, h);
    let ts: Vec<_> = fs.iter().flat_map(|f| fs.iter().flat_map(move |k| oracle_transfs(f, k))).collect();
    let par_t: Vec<_> = ts.iter().flat_map(|a| ts.iter().filter(move |b| a.dom == b.dom && a.cod == b.cod).map(move |b| (a, b))).collect();
    let ms: Vec<_> = par_t.iter().flat_map(|(a, b)| oracle_psmods(a, b)).collect();
    let par_m: Vec<_> = ms.iter().flat_map(|a| ms.iter().filter(move |b| a.dom == b.dom && a.cod == b.cod).map(move |b| (a, b))).collect();
    let ps: usize = par_m.iter().map(|(a, b)| oracle_perts(a, b).len()).sum();
    [fs.len(), ts.len(), ms.len(), ps]
}
