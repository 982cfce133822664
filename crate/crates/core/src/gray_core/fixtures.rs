use super::{Cell, FiniteGrayCategory as Cat, GrayError, Op};

/// A finite abelian group presented as a product of cyclic groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    orders: Vec<u32>,
}

impl AbelianGroup {
    pub fn new(orders: Vec<u32>) -> Self {
        assert!(orders.iter().all(|&n| n > 0), "cyclic orders must be positive");
        AbelianGroup { orders }
    }

    pub fn cyclic(n: u32) -> Self {
        Self::new(vec![n])
    }

    pub fn trivial() -> Self {
        Self::new(Vec::new())
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn size(&self) -> usize {
        self.orders.iter().map(|&n| n as usize).product()
    }

    fn digits(&self, mut i: usize) -> Vec<u32> {
        let mut d = vec![0; self.orders.len()];
        for k in (0..self.orders.len()).rev() {
            let n = self.orders[k] as usize;
            d[k] = (i % n) as u32;
            i /= n;
        }
        d
    }

    fn index(&self, d: &[u32]) -> usize {
        d.iter()
            .zip(&self.orders)
            .fold(0, |acc, (&x, &n)| acc * n as usize + x as usize)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = (0..self.orders.len())
            .map(|k| (da[k] + db[k]) % self.orders[k])
            .collect();
        self.index(&s)
    }

    pub fn neg(&self, a: usize) -> usize {
        let d: Vec<u32> = self
            .digits(a)
            .iter()
            .zip(&self.orders)
            .map(|(&x, &n)| (n - x) % n)
            .collect();
        self.index(&d)
    }

    /// Element label: the digits joined by `.`, or `0` for the trivial group.
    pub fn label(&self, a: usize) -> String {
        if self.orders.is_empty() {
            return "0".into();
        }
        self.digits(a)
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// The one-object, one-1-cell Gray-category BC(A, U, c).
///
/// 2-cells are the elements of `a`, 3-cells are pairs `(a,u)`, and
/// `tensor(y, x) = (x + y, c[y][x])`.
#[allow(clippy::needless_range_loop)]
pub fn build_bicharacter_gray(a: &AbelianGroup, u: &AbelianGroup, c: &[Vec<usize>]) -> Result<Cat, GrayError> {
    let (na, nu) = (a.size(), u.size());
    if c.len() != na || c.iter().any(|row| row.len() != na || row.iter().any(|&v| v >= nu)) {
        return Err(GrayError::Structure("bicharacter table has the wrong shape".into()));
    }
    for x in 0..na {
        for y in 0..na {
            for z in 0..na {
                let left = c[a.add(x, y)][z] == u.add(c[x][z], c[y][z]);
                let right = c[z][a.add(x, y)] == u.add(c[z][x], c[z][y]);
                if !left || !right {
                    return Err(GrayError::NotBilinear(a.label(x), a.label(y)));
                }
            }
        }
    }
    let cell3 = |x: usize, v: usize| (x * nu + v) as u32;
    let name = format!("BC(Z{:?},Z{:?})", a.orders(), u.orders()).replace(' ', "");
    let mut cat = Cat::from_globular(
        name,
        [
            vec![("*".into(), 0, 0)],
            vec![("e".into(), 0, 0)],
            (0..na).map(|x| (a.label(x), 0, 0)).collect(),
            (0..na)
                .flat_map(|x| (0..nu).map(move |v| (x, v)))
                .map(|(x, v)| (format!("({},{})", a.label(x), u.label(v)), x as u32, x as u32))
                .collect(),
        ],
    )?;
    let (obj, e) = (Cell::new(0, 0), Cell::new(1, 0));
    let c2 = |x: usize| Cell::new(2, x as u32);
    let c3 = |x: usize, v: usize| Cell::new(3, cell3(x, v));
    cat.set_id(obj, Some(e));
    cat.set_id(e, Some(c2(0)));
    cat.set_entry(Op::Comp0, e, e, Some(e));
    for x in 0..na {
        cat.set_id(c2(x), Some(c3(x, 0)));
        cat.set_entry(Op::WhiskL12, e, c2(x), Some(c2(x)));
        cat.set_entry(Op::WhiskR21, c2(x), e, Some(c2(x)));
        for y in 0..na {
            cat.set_entry(Op::Comp1, c2(y), c2(x), Some(c2(a.add(x, y))));
            cat.set_entry(Op::Tensor, c2(y), c2(x), Some(c3(a.add(x, y), c[y][x])));
        }
        for v in 0..nu {
            let g = c3(x, v);
            cat.set_entry(Op::WhiskL13, e, g, Some(g));
            cat.set_entry(Op::WhiskR31, g, e, Some(g));
            for v2 in 0..nu {
                cat.set_entry(Op::Comp2, c3(x, v2), g, Some(c3(x, u.add(v, v2))));
            }
            for y in 0..na {
                cat.set_entry(Op::MidL23, c2(y), g, Some(c3(a.add(y, x), v)));
                cat.set_entry(Op::MidR32, g, c2(y), Some(c3(a.add(x, y), v)));
            }
        }
    }
    Ok(cat)
}

/// Fills every table from the unit laws, given the composites of non-identity 1-cells.
///
/// Fails if some entry is not forced by a unit law.
fn unit_forced(mut cat: Cat, comp0: &[(u32, u32, u32)]) -> Result<Cat, GrayError> {
    let base = cat.clone();
    let inc = super::Incidence::new(&base);
    for &(g, f, r) in comp0 {
        cat.set_entry(Op::Comp0, Cell::new(1, g), Cell::new(1, f), Some(Cell::new(1, r)));
    }
    let order = [
        Op::Comp0,
        Op::WhiskL12,
        Op::WhiskR21,
        Op::Comp1,
        Op::Comp2,
        Op::WhiskL13,
        Op::WhiskR31,
        Op::MidL23,
        Op::MidR32,
        Op::Tensor,
    ];
    for op in order {
        for (a, b) in inc.pairs(&base, op) {
            if cat.entry(op, a, b).is_some() {
                continue;
            }
            let ida = cat.is_identity(a);
            let idb = cat.is_identity(b);
            let r = match op {
                Op::Comp0 | Op::Comp1 | Op::Comp2 if ida => Some(b),
                Op::Comp0 | Op::Comp1 | Op::Comp2 if idb => Some(a),
                Op::WhiskL12 | Op::WhiskL13 if ida => Some(b),
                Op::WhiskL12 if idb => Some(cat.id(cat.comp0(a, cat.src(b))?)?),
                Op::WhiskL13 if idb => Some(cat.id(cat.wl(a, cat.src(b))?)?),
                Op::WhiskR21 | Op::WhiskR31 if idb => Some(a),
                Op::WhiskR21 if ida => Some(cat.id(cat.comp0(cat.src(a), b)?)?),
                Op::WhiskR31 if ida => Some(cat.id(cat.wr(cat.src(a), b)?)?),
                Op::MidL23 if ida => Some(b),
                Op::MidL23 if idb => Some(cat.id(cat.comp1(a, cat.src(b))?)?),
                Op::MidR32 if idb => Some(a),
                Op::MidR32 if ida => Some(cat.id(cat.comp1(cat.src(a), b)?)?),
                Op::Tensor if ida => Some(cat.id(cat.wl(cat.src(a), b)?)?),
                Op::Tensor if idb => Some(cat.id(cat.wr(a, cat.src(b))?)?),
                _ => None,
            };
            let r = r.ok_or_else(|| GrayError::Closure {
                op: op.name(),
                left: cat.show(a),
                right: cat.show(b),
            })?;
            cat.set_entry(op, a, b, Some(r));
        }
    }
    Ok(cat)
}

/// Adds identity cells above every listed cell, naming them `id_<name>`.
fn with_identities(name: &str, gens: [Vec<(String, u32, u32)>; 4]) -> Result<Cat, GrayError> {
    let mut cells = gens;
    let mut ids: Vec<(Cell, Cell)> = Vec::new();
    // Identities of k-cells are appended to dimension k+1, lowest dimension first,
    // so identities of identities are generated as well.
    for k in 0..3usize {
        let count = cells[k].len();
        for i in 0..count {
            let n = format!("id_{}", cells[k][i].0);
            let j = cells[k + 1].len() as u32;
            cells[k + 1].push((n, i as u32, i as u32));
            ids.push((Cell::new(k as u8, i as u32), Cell::new(k as u8 + 1, j)));
        }
    }
    let mut cat = Cat::from_globular(name, cells)?;
    for (c, i) in ids {
        cat.set_id(c, Some(i));
    }
    Ok(cat)
}

/// The free Gray-category on a single `k`-cell; `build_walking(0)` is the terminal category.
pub fn build_walking(k: u8) -> Cat {
    assert!(k <= 3, "walking cells exist for k in 0..=3");
    let s = |v: &str| v.to_string();
    let mut gens: [Vec<(String, u32, u32)>; 4] = Default::default();
    gens[0].push((s("x"), 0, 0));
    if k >= 1 {
        gens[0].push((s("y"), 0, 0));
        gens[1].push((s("f"), 0, 1));
    }
    if k >= 2 {
        gens[1].push((s("f'"), 0, 1));
        gens[2].push((s("phi"), 0, 1));
    }
    if k >= 3 {
        gens[2].push((s("phi'"), 0, 1));
        gens[3].push((s("Gamma"), 0, 1));
    }
    let cat = with_identities(&format!("walking{k}"), gens).expect("walking cell is globular");
    unit_forced(cat, &[]).expect("walking cell tables are forced by units")
}

/// The free category on a chain `x0 -> x1 -> ... -> xn`, with identity 2- and 3-cells.
pub fn build_chain(n: u32) -> Cat {
    let mut gens: [Vec<(String, u32, u32)>; 4] = Default::default();
    for i in 0..=n {
        gens[0].push((format!("x{i}"), 0, 0));
    }
    let mut arrows = Vec::new();
    for i in 0..=n {
        for j in i + 1..=n {
            arrows.push((i, j));
            gens[1].push((format!("f{i}{j}"), i, j));
        }
    }
    let cat = with_identities(&format!("chain{n}"), gens).expect("chain is globular");
    let arrow = |i: u32, j: u32| arrows.iter().position(|&p| p == (i, j)).unwrap() as u32;
    let mut comp = Vec::new();
    for &(i, j) in &arrows {
        for &(j2, k) in &arrows {
            if j2 == j {
                comp.push((arrow(j, k), arrow(i, j), arrow(i, k)));
            }
        }
    }
    // Identity 1-cells follow the generators, so generator indices are unchanged.
    unit_forced(cat, &comp).expect("chain tables are forced by units")
}

#[cfg(test)]
mod tests {
    use super::super::validate_gray_category;
    use super::*;

    #[test]
    fn walking_cells_have_expected_sizes() {
        assert_eq!(build_walking(0).counts(), [1, 1, 1, 1]);
        assert_eq!(build_walking(1).counts(), [2, 3, 3, 3]);
        assert_eq!(build_walking(2).counts(), [2, 4, 5, 5]);
        assert_eq!(build_walking(3).counts(), [2, 4, 6, 7]);
    }

    #[test]
    fn walking_cells_validate() {
        for k in 0..=3 {
            let r = validate_gray_category(&build_walking(k));
            assert!(r.ok(), "{}", r.render());
        }
    }

    #[test]
    fn chains_validate() {
        for n in 0..=3 {
            let r = validate_gray_category(&build_chain(n));
            assert!(r.ok(), "{}", r.render());
        }
    }

    #[test]
    fn bicharacter_sizes() {
        let z2 = AbelianGroup::cyclic(2);
        let c = build_bicharacter_gray(&z2, &z2, &[vec![0, 0], vec![0, 1]]).unwrap();
        assert_eq!(c.counts(), [1, 1, 2, 4]);
        let t = AbelianGroup::trivial();
        let one = build_bicharacter_gray(&t, &t, &[vec![0]]).unwrap();
        assert_eq!(one.counts(), [1, 1, 1, 1]);
    }

    #[test]
    fn non_bilinear_pairing_is_rejected() {
        let z2 = AbelianGroup::cyclic(2);
        let err = build_bicharacter_gray(&z2, &z2, &[vec![1, 0], vec![0, 0]]).unwrap_err();
        assert!(matches!(err, GrayError::NotBilinear(..)));
    }

    #[test]
    fn group_arithmetic() {
        let g = AbelianGroup::new(vec![2, 3]);
        assert_eq!(g.size(), 6);
        for a in 0..6 {
            assert_eq!(g.add(a, g.neg(a)), 0);
        }
        assert_eq!(g.label(5), "1.2");
    }
}
