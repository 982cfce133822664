use super::{Cell, Checker, FiniteGrayCategory as Cat, Op, ValidationReport};

/// Cells grouped by their iterated sources and targets.
pub(crate) struct Incidence {
    by_s: Vec<Vec<Vec<Vec<u32>>>>,
    by_t: Vec<Vec<Vec<Vec<u32>>>>,
}

impl Incidence {
    pub fn new(c: &Cat) -> Self {
        let mut by_s = vec![Vec::new(); 4];
        let mut by_t = vec![Vec::new(); 4];
        for k in 1..=3u8 {
            for j in 0..k {
                let mut s = vec![Vec::new(); c.count(j)];
                let mut t = vec![Vec::new(); c.count(j)];
                for cell in c.cells(k) {
                    s[c.s(cell, j).idx as usize].push(cell.idx);
                    t[c.t(cell, j).idx as usize].push(cell.idx);
                }
                by_s[k as usize].push(s);
                by_t[k as usize].push(t);
            }
        }
        Incidence { by_s, by_t }
    }

    /// `k`-cells whose iterated source in dimension `x.dim` is `x`.
    pub fn starting_at(&self, k: u8, x: Cell) -> impl Iterator<Item = Cell> + '_ {
        self.by_s[k as usize][x.dim as usize][x.idx as usize]
            .iter()
            .map(move |&i| Cell::new(k, i))
    }

    /// `k`-cells whose iterated target in dimension `x.dim` is `x`.
    pub fn ending_at(&self, k: u8, x: Cell) -> impl Iterator<Item = Cell> + '_ {
        self.by_t[k as usize][x.dim as usize][x.idx as usize]
            .iter()
            .map(move |&i| Cell::new(k, i))
    }

    /// Right arguments `b` for which `op(a, b)` is boundary-compatible.
    pub fn rights(&self, c: &Cat, op: Op, a: Cell) -> Vec<Cell> {
        match op {
            Op::Comp0 | Op::Comp1 | Op::Comp2 => self.ending_at(a.dim, c.src(a)).collect(),
            Op::WhiskL12 => self.ending_at(2, c.src(a)).collect(),
            Op::WhiskL13 => self.ending_at(3, c.src(a)).collect(),
            Op::WhiskR21 | Op::WhiskR31 => self.ending_at(1, c.s(a, 0)).collect(),
            Op::MidL23 => self.ending_at(3, c.src(a)).collect(),
            Op::MidR32 => self.ending_at(2, c.s(a, 1)).collect(),
            Op::Tensor => self.ending_at(2, c.s(a, 0)).collect(),
        }
    }

    /// All boundary-compatible argument pairs of `op`.
    pub fn pairs(&self, c: &Cat, op: Op) -> Vec<(Cell, Cell)> {
        let mut out = Vec::new();
        for a in c.cells(op.arg_dims().0) {
            for b in self.rights(c, op, a) {
                out.push((a, b));
            }
        }
        out
    }
}

fn structure(c: &Cat, ck: &mut Checker<'_>) {
    let w = |cs: &[Cell]| cs.iter().map(|&x| c.show(x)).collect::<Vec<_>>();
    for k in 2..=3u8 {
        for x in c.cells(k) {
            let (s, t) = (c.src(x), c.tgt(x));
            ck.holds(
                "globularity",
                true,
                || w(&[x]),
                c.src(s) == c.src(t) && c.tgt(s) == c.tgt(t),
                || "source and target are not parallel".into(),
            );
        }
    }
    for k in 0..=2u8 {
        for x in c.cells(k) {
            match c.stored_id(x) {
                None => ck.holds("identity closure", false, || w(&[x]), false, || "no identity".into()),
                Some(i) => ck.holds(
                    "identity boundary",
                    false,
                    || w(&[x]),
                    c.src(i) == x && c.tgt(i) == x,
                    || format!("identity {} is not an endo-cell of {}", c.show(i), c.show(x)),
                ),
            }
        }
    }
    for op in Op::ALL {
        let (l, r) = op.arg_dims();
        for a in c.cells(l) {
            for b in c.cells(r) {
                let stored = c.entry(op, a, b);
                let compat = c.compatible(op, a, b);
                match (compat, stored) {
                    (false, None) => {}
                    (false, Some(_)) => ck.holds(
                        &format!("{} entry typing", op.name()),
                        true,
                        || w(&[a, b]),
                        false,
                        || "entry for incompatible arguments".into(),
                    ),
                    (true, None) => ck.holds(
                        &format!("{} closure", op.name()),
                        true,
                        || w(&[a, b]),
                        false,
                        || "missing table entry".into(),
                    ),
                    (true, Some(r)) => {
                        let axiom = format!("{} boundary", op.name());
                        match c.forced_boundary(op, a, b) {
                            Ok((s, t)) => ck.holds(
                                &axiom,
                                true,
                                || w(&[a, b]),
                                c.src(r) == s && c.tgt(r) == t,
                                || {
                                    format!(
                                        "result {} has boundary {} -> {}, forced {} -> {}",
                                        c.show(r),
                                        c.show(c.src(r)),
                                        c.show(c.tgt(r)),
                                        c.show(s),
                                        c.show(t)
                                    )
                                },
                            ),
                            Err(e) => ck.holds(&axiom, true, || w(&[a, b]), false, || e.to_string()),
                        }
                    }
                }
            }
        }
    }
    for k in 2..=3u8 {
        for x in c.cells(k) {
            if let Some(i) = c.stored_inverse(x) {
                let op = if k == 2 { Op::Comp1 } else { Op::Comp2 };
                let ok = c.contains(i)
                    && c.entry(op, i, x).is_some()
                    && c.entry(op, i, x) == c.stored_id(c.src(x))
                    && c.entry(op, x, i) == c.stored_id(c.tgt(x));
                ck.holds("inverse witness", true, || w(&[x, i]), ok, || "not a two-sided inverse".into());
            }
        }
    }
}

/// Checks every Gray-category axiom instance over all boundary-compatible tuples.
pub fn validate_gray_category(c: &Cat) -> ValidationReport {
    let mut report = ValidationReport::new(format!("category {}", c.name()));
    let inc = Incidence::new(c);
    let mut ck = Checker::new(&mut report, c);
    structure(c, &mut ck);
    if !ck.report.ok() {
        // Equational checks on a structurally broken table only repeat the same witnesses.
        return report;
    }
    axioms(c, &inc, &mut ck);
    report
}

fn axioms(c: &Cat, inc: &Incidence, ck: &mut Checker<'_>) {
    let w = |cs: &[Cell]| cs.iter().map(|&x| c.show(x)).collect::<Vec<_>>();
    let nt = |cs: &[Cell]| cs.iter().any(|&x| x.dim == 0 || !c.is_identity(x));
    let id = |x: Cell| c.id(x);

    // Units.
    for g in c.cells(1) {
        let (x, y) = (c.src(g), c.tgt(g));
        ck.eq("unit comp0_1", nt(&[g]), || w(&[g]), || Ok((g, c.comp0(g, id(x)?)?)));
        ck.eq("unit comp0_1", nt(&[g]), || w(&[g]), || Ok((g, c.comp0(id(y)?, g)?)));
    }
    for p in c.cells(2) {
        let (f, f2) = (c.src(p), c.tgt(p));
        let (x, y) = (c.s(p, 0), c.t(p, 0));
        let n = nt(&[p]);
        ck.eq("unit comp1_2", n, || w(&[p]), || Ok((p, c.comp1(p, id(f)?)?)));
        ck.eq("unit comp1_2", n, || w(&[p]), || Ok((p, c.comp1(id(f2)?, p)?)));
        ck.eq("unit whisker", n, || w(&[p]), || Ok((p, c.wl(id(y)?, p)?)));
        ck.eq("unit whisker", n, || w(&[p]), || Ok((p, c.wr(p, id(x)?)?)));
    }
    for g in c.cells(3) {
        let (p, p2) = (c.src(g), c.tgt(g));
        let (x, y) = (c.s(g, 0), c.t(g, 0));
        let (f, f2) = (c.s(g, 1), c.t(g, 1));
        let n = nt(&[g]);
        ck.eq("unit comp2_3", n, || w(&[g]), || Ok((g, c.comp2(g, id(p)?)?)));
        ck.eq("unit comp2_3", n, || w(&[g]), || Ok((g, c.comp2(id(p2)?, g)?)));
        ck.eq("unit whisker", n, || w(&[g]), || Ok((g, c.wl3(id(y)?, g)?)));
        ck.eq("unit whisker", n, || w(&[g]), || Ok((g, c.wr3(g, id(x)?)?)));
        ck.eq("unit mid whisker", n, || w(&[g]), || Ok((g, c.mid_l(id(f2)?, g)?)));
        ck.eq("unit mid whisker", n, || w(&[g]), || Ok((g, c.mid_r(g, id(f)?)?)));
    }
    for (g, f) in inc.pairs(c, Op::Comp0) {
        let n = nt(&[g, f]);
        ck.eq("whisker of identity", n, || w(&[g, f]), || {
            Ok((id(c.comp0(g, f)?)?, c.wl(g, id(f)?)?))
        });
        ck.eq("whisker of identity", n, || w(&[g, f]), || {
            Ok((id(c.comp0(g, f)?)?, c.wr(id(g)?, f)?))
        });
    }
    for (g, p) in inc.pairs(c, Op::WhiskL12) {
        ck.eq("whisker of identity", nt(&[g, p]), || w(&[g, p]), || {
            Ok((id(c.wl(g, p)?)?, c.wl3(g, id(p)?)?))
        });
    }
    for (p, f) in inc.pairs(c, Op::WhiskR21) {
        ck.eq("whisker of identity", nt(&[p, f]), || w(&[p, f]), || {
            Ok((id(c.wr(p, f)?)?, c.wr3(id(p)?, f)?))
        });
    }
    for (p, q) in inc.pairs(c, Op::Comp1) {
        let n = nt(&[p, q]);
        ck.eq("mid whisker of identity", n, || w(&[p, q]), || {
            Ok((id(c.comp1(p, q)?)?, c.mid_l(p, id(q)?)?))
        });
        ck.eq("mid whisker of identity", n, || w(&[p, q]), || {
            Ok((id(c.comp1(p, q)?)?, c.mid_r(id(p)?, q)?))
        });
    }
    for p in c.cells(2) {
        let (x, y) = (c.s(p, 0), c.t(p, 0));
        for g in inc.starting_at(1, y) {
            ck.eq("tensor unit", nt(&[g, p]), || w(&[g, p]), || {
                Ok((id(c.wl(g, p)?)?, c.tensor(id(g)?, p)?))
            });
        }
        for f in inc.ending_at(1, x) {
            ck.eq("tensor unit", nt(&[p, f]), || w(&[p, f]), || {
                Ok((id(c.wr(p, f)?)?, c.tensor(p, id(f)?)?))
            });
        }
    }

    // Associativity.
    for (g, f) in inc.pairs(c, Op::Comp0) {
        for h in inc.starting_at(1, c.tgt(g)) {
            ck.eq("associativity comp0_1", nt(&[h, g, f]), || w(&[h, g, f]), || {
                Ok((c.comp0(h, c.comp0(g, f)?)?, c.comp0(c.comp0(h, g)?, f)?))
            });
        }
    }
    for (q, p) in inc.pairs(c, Op::Comp1) {
        for r in inc.starting_at(2, c.tgt(q)) {
            ck.eq("associativity comp1_2", nt(&[r, q, p]), || w(&[r, q, p]), || {
                Ok((c.comp1(r, c.comp1(q, p)?)?, c.comp1(c.comp1(r, q)?, p)?))
            });
        }
    }
    for (b, a) in inc.pairs(c, Op::Comp2) {
        for d in inc.starting_at(3, c.tgt(b)) {
            ck.eq("associativity comp2_3", nt(&[d, b, a]), || w(&[d, b, a]), || {
                Ok((c.comp2(d, c.comp2(b, a)?)?, c.comp2(c.comp2(d, b)?, a)?))
            });
        }
    }

    // Compatibility of whiskering with composition of 1-cells.
    for k in 2..=3u8 {
        let (lop, rop) = if k == 2 {
            (Op::WhiskL12, Op::WhiskR21)
        } else {
            (Op::WhiskL13, Op::WhiskR31)
        };
        let axiom = "whisker action";
        for (g, p) in inc.pairs(c, lop) {
            for h in inc.starting_at(1, c.tgt(g)) {
                ck.eq(axiom, nt(&[h, g, p]), || w(&[h, g, p]), || {
                    Ok((c.apply(lop, h, c.apply(lop, g, p)?)?, c.apply(lop, c.comp0(h, g)?, p)?))
                });
            }
            for f in inc.ending_at(1, c.s(p, 0)) {
                ck.eq(axiom, nt(&[g, p, f]), || w(&[g, p, f]), || {
                    Ok((c.apply(rop, c.apply(lop, g, p)?, f)?, c.apply(lop, g, c.apply(rop, p, f)?)?))
                });
            }
        }
        for (p, g) in inc.pairs(c, rop) {
            for f in inc.ending_at(1, c.src(g)) {
                ck.eq(axiom, nt(&[p, g, f]), || w(&[p, g, f]), || {
                    Ok((c.apply(rop, c.apply(rop, p, g)?, f)?, c.apply(rop, p, c.comp0(g, f)?)?))
                });
            }
        }
    }

    // Whiskering by a 1-cell is a strict 2-functor.
    for (q, p) in inc.pairs(c, Op::Comp1) {
        for g in inc.starting_at(1, c.t(p, 0)) {
            ck.eq("whisker functoriality", nt(&[g, q, p]), || w(&[g, q, p]), || {
                Ok((c.comp1(c.wl(g, q)?, c.wl(g, p)?)?, c.wl(g, c.comp1(q, p)?)?))
            });
        }
        for f in inc.ending_at(1, c.s(p, 0)) {
            ck.eq("whisker functoriality", nt(&[q, p, f]), || w(&[q, p, f]), || {
                Ok((c.comp1(c.wr(q, f)?, c.wr(p, f)?)?, c.wr(c.comp1(q, p)?, f)?))
            });
        }
    }
    for (d, a) in inc.pairs(c, Op::Comp2) {
        for g in inc.starting_at(1, c.t(a, 0)) {
            ck.eq("whisker functoriality", nt(&[g, d, a]), || w(&[g, d, a]), || {
                Ok((c.comp2(c.wl3(g, d)?, c.wl3(g, a)?)?, c.wl3(g, c.comp2(d, a)?)?))
            });
        }
        for f in inc.ending_at(1, c.s(a, 0)) {
            ck.eq("whisker functoriality", nt(&[d, a, f]), || w(&[d, a, f]), || {
                Ok((c.comp2(c.wr3(d, f)?, c.wr3(a, f)?)?, c.wr3(c.comp2(d, a)?, f)?))
            });
        }
    }
    for (p, d) in inc.pairs(c, Op::MidL23) {
        for g in inc.starting_at(1, c.t(p, 0)) {
            ck.eq("whisker functoriality", nt(&[g, p, d]), || w(&[g, p, d]), || {
                Ok((c.mid_l(c.wl(g, p)?, c.wl3(g, d)?)?, c.wl3(g, c.mid_l(p, d)?)?))
            });
        }
        for f in inc.ending_at(1, c.s(p, 0)) {
            ck.eq("whisker functoriality", nt(&[p, d, f]), || w(&[p, d, f]), || {
                Ok((c.mid_l(c.wr(p, f)?, c.wr3(d, f)?)?, c.wr3(c.mid_l(p, d)?, f)?))
            });
        }
    }
    for (d, p) in inc.pairs(c, Op::MidR32) {
        for g in inc.starting_at(1, c.t(p, 0)) {
            ck.eq("whisker functoriality", nt(&[g, d, p]), || w(&[g, d, p]), || {
                Ok((c.mid_r(c.wl3(g, d)?, c.wl(g, p)?)?, c.wl3(g, c.mid_r(d, p)?)?))
            });
        }
        for f in inc.ending_at(1, c.s(p, 0)) {
            ck.eq("whisker functoriality", nt(&[d, p, f]), || w(&[d, p, f]), || {
                Ok((c.mid_r(c.wr3(d, f)?, c.wr(p, f)?)?, c.wr3(c.mid_r(d, p)?, f)?))
            });
        }
    }

    // Each hom is a 2-category under #₁ and #₂.
    for (p, d) in inc.pairs(c, Op::MidL23) {
        for d2 in inc.starting_at(3, c.tgt(d)) {
            ck.eq("hom 2-category", nt(&[p, d2, d]), || w(&[p, d2, d]), || {
                Ok((c.comp2(c.mid_l(p, d2)?, c.mid_l(p, d)?)?, c.mid_l(p, c.comp2(d2, d)?)?))
            });
        }
        for p2 in inc.starting_at(2, c.tgt(p)) {
            ck.eq("hom 2-category", nt(&[p2, p, d]), || w(&[p2, p, d]), || {
                Ok((c.mid_l(p2, c.mid_l(p, d)?)?, c.mid_l(c.comp1(p2, p)?, d)?))
            });
        }
        for q in inc.ending_at(2, c.s(d, 1)) {
            ck.eq("hom 2-category", nt(&[p, d, q]), || w(&[p, d, q]), || {
                Ok((c.mid_l(p, c.mid_r(d, q)?)?, c.mid_r(c.mid_l(p, d)?, q)?))
            });
        }
    }
    for (d, q) in inc.pairs(c, Op::MidR32) {
        for d2 in inc.starting_at(3, c.tgt(d)) {
            ck.eq("hom 2-category", nt(&[d2, d, q]), || w(&[d2, d, q]), || {
                Ok((c.comp2(c.mid_r(d2, q)?, c.mid_r(d, q)?)?, c.mid_r(c.comp2(d2, d)?, q)?))
            });
        }
        for q2 in inc.ending_at(2, c.src(q)) {
            ck.eq("hom 2-category", nt(&[d, q, q2]), || w(&[d, q, q2]), || {
                Ok((c.mid_r(c.mid_r(d, q)?, q2)?, c.mid_r(d, c.comp1(q, q2)?)?))
            });
        }
    }
    for g in c.cells(3) {
        for d in inc.ending_at(3, c.s(g, 1)) {
            ck.eq("interchange", nt(&[g, d]), || w(&[g, d]), || {
                let a = c.comp2(c.mid_r(g, c.tgt(d))?, c.mid_l(c.src(g), d)?)?;
                let b = c.comp2(c.mid_l(c.tgt(g), d)?, c.mid_r(g, c.src(d))?)?;
                Ok((a, b))
            });
        }
    }

    // Tensor laws.
    for (psi, phi) in inc.pairs(c, Op::Tensor) {
        let (g, g2) = (c.src(psi), c.tgt(psi));
        let (f, f2) = (c.src(phi), c.tgt(phi));
        let t = match c.tensor(psi, phi) {
            Ok(t) => t,
            Err(_) => continue,
        };
        ck.holds("tensor invertible", nt(&[psi, phi]), || w(&[psi, phi]), c.inverse(t).is_some(), || {
            format!("{} has no inverse", c.show(t))
        });
        for psi2 in inc.starting_at(2, g2) {
            ck.eq("tensor and #1", nt(&[psi2, psi, phi]), || w(&[psi2, psi, phi]), || {
                let rhs = c.comp2(
                    c.mid_l(c.wr(psi2, f2)?, t)?,
                    c.mid_r(c.tensor(psi2, phi)?, c.wr(psi, f)?)?,
                )?;
                Ok((rhs, c.tensor(c.comp1(psi2, psi)?, phi)?))
            });
        }
        for phi2 in inc.starting_at(2, f2) {
            ck.eq("tensor and #1", nt(&[psi, phi2, phi]), || w(&[psi, phi2, phi]), || {
                let rhs = c.comp2(
                    c.mid_r(c.tensor(psi, phi2)?, c.wl(g, phi)?)?,
                    c.mid_l(c.wl(g2, phi2)?, t)?,
                )?;
                Ok((rhs, c.tensor(psi, c.comp1(phi2, phi)?)?))
            });
        }
        for gam in inc.starting_at(3, psi) {
            ck.eq("tensor naturality", nt(&[gam, phi]), || w(&[gam, phi]), || {
                let psi2 = c.tgt(gam);
                let lhs = c.comp2(c.tensor(psi2, phi)?, c.mid_l(c.wl(g2, phi)?, c.wr3(gam, f)?)?)?;
                let rhs = c.comp2(c.mid_r(c.wr3(gam, f2)?, c.wl(g, phi)?)?, t)?;
                Ok((rhs, lhs))
            });
        }
        for gam in inc.starting_at(3, phi) {
            ck.eq("tensor naturality", nt(&[psi, gam]), || w(&[psi, gam]), || {
                let phi2 = c.tgt(gam);
                let lhs = c.comp2(c.tensor(psi, phi2)?, c.mid_r(c.wl3(g2, gam)?, c.wr(psi, f)?)?)?;
                let rhs = c.comp2(c.mid_l(c.wr(psi, f2)?, c.wl3(g, gam)?)?, t)?;
                Ok((rhs, lhs))
            });
        }
        for h in inc.starting_at(1, c.t(psi, 0)) {
            ck.eq("tensor and #0", nt(&[h, psi, phi]), || w(&[h, psi, phi]), || {
                Ok((c.tensor(c.wl(h, psi)?, phi)?, c.wl3(h, t)?))
            });
        }
        for e in inc.ending_at(1, c.s(phi, 0)) {
            ck.eq("tensor and #0", nt(&[psi, phi, e]), || w(&[psi, phi, e]), || {
                Ok((c.tensor(psi, c.wr(phi, e)?)?, c.wr3(t, e)?))
            });
        }
    }
    for (psi, g) in inc.pairs(c, Op::WhiskR21) {
        for phi in inc.ending_at(2, c.src(g)) {
            ck.eq("tensor and #0", nt(&[psi, g, phi]), || w(&[psi, g, phi]), || {
                Ok((c.tensor(psi, c.wl(g, phi)?)?, c.tensor(c.wr(psi, g)?, phi)?))
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{build_bicharacter_gray, build_walking, AbelianGroup};
    use super::*;

    #[test]
    fn discrete_category_is_valid() {
        assert!(validate_gray_category(&build_walking(0)).ok());
    }

    #[test]
    fn bicharacter_fixture_is_valid() {
        let z2 = AbelianGroup::cyclic(2);
        let c = build_bicharacter_gray(&z2, &z2, &[vec![0, 0], vec![0, 1]]).unwrap();
        let r = validate_gray_category(&c);
        assert!(r.ok(), "{}", r.render());
    }

    #[test]
    fn rebinding_tensor_breaks_its_boundary() {
        let z2 = AbelianGroup::cyclic(2);
        let mut c = build_bicharacter_gray(&z2, &z2, &[vec![0, 0], vec![0, 1]]).unwrap();
        let one = c.find(2, "1").unwrap();
        let bad = c.find(3, "(1,0)").unwrap();
        c.set_entry(Op::Tensor, one, one, Some(bad));
        let r = validate_gray_category(&c);
        assert!(r.violated("tensor boundary"), "{}", r.render());
    }

    #[test]
    fn empty_category_is_valid() {
        let c = Cat::from_globular("empty", Default::default()).unwrap();
        assert!(validate_gray_category(&c).ok());
    }
}
