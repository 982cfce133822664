//! The `graycat v1` text format.
//!
//! A document is the line `graycat v1` followed by sections. Each section starts with a
//! header line and runs until the next header:
//!
//! ```text
//! category <name>
//! functor <name> : <category> -> <category>
//! pstransf <name> : <functor> => <functor>
//! psmod <name> : <pstransf> => <pstransf>
//! perturbation <name> : <psmod> => <psmod>
//! dictionary <name> : <category>
//! ```
//!
//! Sections refer to earlier sections by name. `#` starts a comment.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

mod cli;

pub use cli::{run, CliError};

use crate::gray_core::{Cell, FiniteGrayCategory as Cat, GrayError, Op};
use crate::gray_maps::GrayFunctor;
use crate::hcomp::HCell;
use crate::mapping_space::MappingSpace;
use crate::transfors::{Perturbation, PseudoModification, PseudoTransformation};

pub const VERSION_LINE: &str = "graycat v1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

/// Maps the cells of a mapping-space category to the sections holding their values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dictionary {
    /// `(dimension, cell name, section name)` in cell order.
    pub entries: Vec<(u8, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Category(Arc<Cat>),
    Functor(Arc<GrayFunctor>),
    Transf(Arc<PseudoTransformation>),
    Modif(Arc<PseudoModification>),
    Pert(Arc<Perturbation>),
    Dictionary(Dictionary),
}

impl Value {
    pub fn keyword(&self) -> &'static str {
        match self {
            Value::Category(_) => "category",
            Value::Functor(_) => "functor",
            Value::Transf(_) => "pstransf",
            Value::Modif(_) => "psmod",
            Value::Pert(_) => "perturbation",
            Value::Dictionary(_) => "dictionary",
        }
    }

    pub fn as_hcell(&self) -> Option<HCell> {
        Some(match self {
            Value::Functor(f) => HCell::Functor(f.clone()),
            Value::Transf(a) => HCell::Transf(a.clone()),
            Value::Modif(m) => HCell::Modif(m.clone()),
            Value::Pert(p) => HCell::Pert(p.clone()),
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub name: String,
    /// Names of the sections this one is typed over: source and target, or the space.
    pub refs: Vec<String>,
    pub value: Value,
}

#[derive(Clone, Debug, Default)]
pub struct Document {
    pub sections: Vec<Section>,
    ptrs: HashMap<usize, String>,
}

impl PartialEq for Document {
    fn eq(&self, other: &Self) -> bool {
        self.sections == other.sections
    }
}

impl Eq for Document {}

fn ptr<T>(a: &Arc<T>) -> usize {
    Arc::as_ptr(a) as usize
}

impl Document {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    fn fresh(&self, base: &str) -> String {
        if self.get(base).is_none() {
            return base.to_string();
        }
        (2..).map(|i| format!("{base}~{i}")).find(|n| self.get(n).is_none()).unwrap()
    }

    fn known(&self, p: usize, v: &Value) -> Option<String> {
        if let Some(n) = self.ptrs.get(&p) {
            return Some(n.clone());
        }
        self.sections.iter().find(|s| &s.value == v).map(|s| s.name.clone())
    }

    fn push(&mut self, p: usize, name: Option<&str>, base: String, refs: Vec<String>, value: Value) -> String {
        if name.is_none() {
            if let Some(n) = self.known(p, &value) {
                return n;
            }
        }
        let name = self.fresh(name.unwrap_or(&base));
        self.ptrs.insert(p, name.clone());
        self.sections.push(Section { name: name.clone(), refs, value });
        name
    }

    fn auto(&self, prefix: &str, kind: &str) -> String {
        let n = self.sections.iter().filter(|s| s.value.keyword() == kind).count();
        self.fresh(&format!("{prefix}{n}"))
    }

    /// Adds a category, reusing an equal one already present.
    pub fn add_category(&mut self, c: &Arc<Cat>) -> String {
        let base = if c.name().is_empty() { "C".to_string() } else { c.name().to_string() };
        self.push(ptr(c), None, base, Vec::new(), Value::Category(c.clone()))
    }

    pub fn add_functor(&mut self, f: &Arc<GrayFunctor>, name: Option<&str>) -> String {
        let refs = vec![self.add_category(&f.dom), self.add_category(&f.cod)];
        let base = self.auto("F", "functor");
        self.push(ptr(f), name, base, refs, Value::Functor(f.clone()))
    }

    pub fn add_transf(&mut self, a: &Arc<PseudoTransformation>, name: Option<&str>) -> String {
        let refs = vec![self.add_functor(&a.dom, None), self.add_functor(&a.cod, None)];
        let base = self.auto("t", "pstransf");
        self.push(ptr(a), name, base, refs, Value::Transf(a.clone()))
    }

    pub fn add_modif(&mut self, m: &Arc<PseudoModification>, name: Option<&str>) -> String {
        let refs = vec![self.add_transf(&m.dom, None), self.add_transf(&m.cod, None)];
        let base = self.auto("m", "psmod");
        self.push(ptr(m), name, base, refs, Value::Modif(m.clone()))
    }

    pub fn add_pert(&mut self, p: &Arc<Perturbation>, name: Option<&str>) -> String {
        let refs = vec![self.add_modif(&p.dom, None), self.add_modif(&p.cod, None)];
        let base = self.auto("p", "perturbation");
        self.push(ptr(p), name, base, refs, Value::Pert(p.clone()))
    }

    pub fn add_value(&mut self, v: &HCell, name: Option<&str>) -> String {
        match v {
            HCell::Functor(f) => self.add_functor(f, name),
            HCell::Transf(a) => self.add_transf(a, name),
            HCell::Modif(m) => self.add_modif(m, name),
            HCell::Pert(p) => self.add_pert(p, name),
        }
    }

    /// The space, every value named after its cell, and the dictionary between them.
    pub fn add_mapping_space(&mut self, ms: &MappingSpace) -> String {
        self.add_category(&ms.dom);
        self.add_category(&ms.cod);
        let space = self.add_category(&ms.space);
        let mut entries = Vec::new();
        for k in 0..4u8 {
            for c in ms.space.cells(k) {
                let n = self.add_value(&ms.value(c), Some(ms.space.cell_name(c)));
                entries.push((k, ms.space.cell_name(c).to_string(), n));
            }
        }
        let name = self.fresh("dictionary");
        self.sections.push(Section {
            name: name.clone(),
            refs: vec![space],
            value: Value::Dictionary(Dictionary { entries }),
        });
        name
    }
}

// ---------------------------------------------------------------- serialization

/// Cell name as written in a line whose first id may live in any of `dims`.
fn qualified(c: &Cat, cell: Cell, dims: &[u8]) -> String {
    let n = c.cell_name(cell);
    let hits = dims.iter().filter(|&&k| c.find(k, n).is_some()).count();
    if hits > 1 {
        format!("{n}@{}", cell.dim)
    } else {
        n.to_string()
    }
}

fn write_category(out: &mut String, c: &Cat) {
    for k in 0..4u8 {
        let names: Vec<&str> = c.cells(k).map(|x| c.cell_name(x)).collect();
        let _ = write!(out, "cells {k}:");
        for n in names {
            let _ = write!(out, " {n}");
        }
        out.push('\n');
    }
    for k in 1..4u8 {
        for x in c.cells(k) {
            let q = qualified(c, x, &[1, 2, 3]);
            let _ = writeln!(out, "src {q} = {}", c.cell_name(c.src(x)));
            let _ = writeln!(out, "tgt {q} = {}", c.cell_name(c.tgt(x)));
        }
    }
    for k in 0..3u8 {
        for x in c.cells(k) {
            if let Some(i) = c.stored_id(x) {
                let _ = writeln!(out, "id {} = {}", qualified(c, x, &[0, 1, 2]), c.cell_name(i));
            }
        }
    }
    for k in 2..4u8 {
        for x in c.cells(k) {
            if let Some(i) = c.stored_inverse(x) {
                let _ = writeln!(out, "inv {} = {}", qualified(c, x, &[2, 3]), c.cell_name(i));
            }
        }
    }
    for op in Op::ALL {
        for (a, b, r) in c.entries(op) {
            let _ = writeln!(out, "{} {} {} = {}", op.keyword(), c.cell_name(a), c.cell_name(b), c.cell_name(r));
        }
    }
}

fn write_assign(out: &mut String, kw: &str, d: &Cat, x: Cell, h: &Cat, y: Cell) {
    let _ = writeln!(out, "{kw} {} = {}", d.cell_name(x), h.show(y));
}

pub fn serialize(doc: &Document) -> String {
    let mut out = format!("{VERSION_LINE}\n");
    for s in &doc.sections {
        out.push('\n');
        let _ = match s.refs.as_slice() {
            [] => writeln!(out, "{} {}", s.value.keyword(), s.name),
            [r] => writeln!(out, "{} {} : {r}", s.value.keyword(), s.name),
            [a, b, ..] => {
                let arrow = if matches!(s.value, Value::Functor(_)) { "->" } else { "=>" };
                writeln!(out, "{} {} : {a} {arrow} {b}", s.value.keyword(), s.name)
            }
        };
        match &s.value {
            Value::Category(c) => write_category(&mut out, c),
            Value::Functor(f) => {
                for k in 0..4u8 {
                    for x in f.dom.cells(k) {
                        write_assign(&mut out, &format!("map{k}"), &f.dom, x, &f.cod, f.apply(x));
                    }
                }
            }
            Value::Transf(a) => {
                let (g, h) = (a.source(), a.target());
                for (kw, vals, k) in [("at0", &a.at0, 0u8), ("at1", &a.at1, 1), ("at2", &a.at2, 2)] {
                    for (i, &v) in vals.iter().enumerate() {
                        write_assign(&mut out, kw, g, Cell::new(k, i as u32), h, v);
                    }
                }
                for (&(f2, f), &v) in &a.coc {
                    let (f2, f) = (Cell::new(1, f2), Cell::new(1, f));
                    let _ = writeln!(out, "coc {} {} = {}", g.show(f2), g.show(f), h.show(v));
                }
            }
            Value::Modif(m) => {
                let (g, h) = (m.source(), m.target());
                for (kw, vals, k) in [("at0", &m.at0, 0u8), ("at1", &m.at1, 1)] {
                    for (i, &v) in vals.iter().enumerate() {
                        write_assign(&mut out, kw, g, Cell::new(k, i as u32), h, v);
                    }
                }
            }
            Value::Pert(p) => {
                let (g, h) = (p.source(), p.target());
                for (i, &v) in p.at0.iter().enumerate() {
                    write_assign(&mut out, "at0", g, Cell::new(0, i as u32), h, v);
                }
            }
            Value::Dictionary(d) => {
                for (k, c, n) in &d.entries {
                    let _ = writeln!(out, "entry{k} {c} = {n}");
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------- parsing

#[derive(Clone, Copy, Debug)]
struct Tok<'a> {
    line: usize,
    col: usize,
    text: &'a str,
}

struct Line<'a> {
    no: usize,
    toks: Vec<Tok<'a>>,
}

impl<'a> Line<'a> {
    fn err(&self, at: usize, msg: impl Into<String>) -> ParseError {
        let col = self.toks.get(at).or(self.toks.last()).map_or(1, |t| t.col);
        ParseError { line: self.no, col, msg: msg.into() }
    }

    fn end_col(&self) -> usize {
        self.toks.last().map_or(1, |t| t.col + t.text.chars().count())
    }

    /// `kw a₁ … aₙ = r`, returning the n argument tokens and `r`.
    fn assignment(&self, n: usize, kw_len: usize) -> Result<(Vec<Tok<'a>>, Tok<'a>), ParseError> {
        let want = kw_len + n + 2;
        if self.toks.len() != want || self.toks[want - 2].text != "=" {
            let msg = format!("expected `{}`", shape(self.toks[0].text, n));
            return Err(match self.toks.get(want - 2) {
                Some(t) => perr(*t, msg),
                None => ParseError { line: self.no, col: self.end_col() + 1, msg },
            });
        }
        Ok((self.toks[kw_len..kw_len + n].to_vec(), self.toks[want - 1]))
    }
}

fn shape(kw: &str, n: usize) -> String {
    let args: Vec<&str> = ["<a>", "<b>"].into_iter().take(n).collect();
    format!("{kw} {} = <id>", args.join(" "))
}

fn lex(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let mut toks = Vec::new();
        let mut start = None;
        let mut col = 0;
        for (off, ch) in raw.char_indices() {
            col += 1;
            if ch.is_whitespace() {
                if let Some((s, c)) = start.take() {
                    toks.push(Tok { line: i + 1, col: c, text: &raw[s..off] });
                }
            } else if start.is_none() {
                if ch == '#' {
                    break;
                }
                start = Some((off, col));
            }
        }
        if let Some((s, c)) = start {
            toks.push(Tok { line: i + 1, col: c, text: &raw[s..] });
        }
        if !toks.is_empty() {
            out.push(Line { no: i + 1, toks });
        }
    }
    out
}

fn perr(t: Tok<'_>, msg: impl Into<String>) -> ParseError {
    ParseError { line: t.line, col: t.col, msg: msg.into() }
}

fn gray(t: Tok<'_>, e: GrayError) -> ParseError {
    perr(t, e.to_string())
}

/// Looks a token up among `dims`, honouring a `name@k` qualification.
fn resolve(c: &Cat, t: Tok<'_>, dims: &[u8]) -> Result<Cell, ParseError> {
    let hits: Vec<Cell> = dims.iter().filter_map(|&k| c.find(k, t.text)).collect();
    match hits.as_slice() {
        [one] => return Ok(*one),
        [] => {}
        _ => return Err(perr(t, format!("ambiguous id `{}`; qualify it as `{}@<dim>`", t.text, t.text))),
    }
    if let Some((n, k)) = t.text.rsplit_once('@') {
        if let Ok(k) = k.parse::<u8>() {
            if dims.contains(&k) {
                if let Some(x) = c.find(k, n) {
                    return Ok(x);
                }
            }
        }
    }
    let dims: Vec<String> = dims.iter().map(|k| k.to_string()).collect();
    Err(perr(t, format!("unknown {}-cell `{}` in {}", dims.join("/"), t.text, c.name())))
}

const HEADERS: [&str; 6] = ["category", "functor", "pstransf", "psmod", "perturbation", "dictionary"];

fn parse_category(name: &str, head: &Line<'_>, body: &[Line<'_>]) -> Result<Cat, ParseError> {
    let mut names: [Option<Vec<String>>; 4] = Default::default();
    for l in body.iter().filter(|l| l.toks[0].text == "cells") {
        let t = l.toks.get(1).ok_or_else(|| l.err(0, "expected `cells <dim>: <ids…>`"))?;
        let k = t
            .text
            .strip_suffix(':')
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&k| k < 4)
            .ok_or_else(|| perr(*t, "expected a dimension 0..3 followed by `:`"))?;
        if names[k].is_some() {
            return Err(perr(*t, format!("cells {k} declared twice")));
        }
        names[k] = Some(l.toks[2..].iter().map(|t| t.text.to_string()).collect());
    }
    let names = names.map(Option::unwrap_or_default);
    let mut lookup: [HashMap<&str, u32>; 4] = Default::default();
    for k in 0..4 {
        for (i, n) in names[k].iter().enumerate() {
            lookup[k].insert(n, i as u32);
        }
    }
    let mut bnd: [Vec<[Option<u32>; 2]>; 4] = Default::default();
    for k in 0..4 {
        bnd[k] = vec![[None; 2]; names[k].len()];
    }
    for l in body {
        let side = match l.toks[0].text {
            "src" => 0,
            "tgt" => 1,
            _ => continue,
        };
        let (args, r) = l.assignment(1, 1)?;
        let a = args[0];
        let mut hits = (1..4).filter_map(|k| lookup[k].get(a.text).map(|&i| (k, i)));
        let (k, i) = match (hits.next(), hits.next()) {
            (Some(h), None) => h,
            (Some(_), Some(_)) => return Err(perr(a, format!("ambiguous id `{}`; qualify it as `{}@<dim>`", a.text, a.text))),
            _ => a
                .text
                .rsplit_once('@')
                .and_then(|(n, k)| {
                    let k = k.parse::<usize>().ok().filter(|k| (1..4).contains(k))?;
                    lookup[k].get(n).map(|&i| (k, i))
                })
                .ok_or_else(|| perr(a, format!("unknown 1/2/3-cell `{}`", a.text)))?,
        };
        let v = *lookup[k - 1]
            .get(r.text)
            .ok_or_else(|| perr(r, format!("unknown {}-cell `{}`", k - 1, r.text)))?;
        let slot = &mut bnd[k][i as usize][side];
        if slot.is_some() {
            return Err(l.err(0, format!("{} of `{}` given twice", l.toks[0].text, a.text)));
        }
        *slot = Some(v);
    }
    let mut cells: [Vec<(String, u32, u32)>; 4] = Default::default();
    for k in 0..4 {
        for (i, n) in names[k].iter().enumerate() {
            let (s, t) = match (k, bnd[k][i]) {
                (0, _) => (0, 0),
                (_, [Some(s), Some(t)]) => (s, t),
                (_, [None, _]) => return Err(head.err(1, format!("{k}-cell `{n}` has no src line"))),
                (_, [_, None]) => return Err(head.err(1, format!("{k}-cell `{n}` has no tgt line"))),
            };
            cells[k].push((n.clone(), s, t));
        }
    }
    let mut cat = Cat::from_globular(name, cells).map_err(|e| head.err(1, e.to_string()))?;
    for l in body {
        let kw = l.toks[0].text;
        match kw {
            "cells" | "src" | "tgt" => {}
            "id" | "inv" => {
                let (args, r) = l.assignment(1, 1)?;
                let dims: &[u8] = if kw == "id" { &[0, 1, 2] } else { &[2, 3] };
                let x = resolve(&cat, args[0], dims)?;
                let rd = if kw == "id" { x.dim + 1 } else { x.dim };
                let y = resolve(&cat, r, &[rd])?;
                let old = if kw == "id" { cat.stored_id(x) } else { cat.stored_inverse(x) };
                if old.is_some() {
                    return Err(l.err(0, format!("{kw} of `{}` given twice", args[0].text)));
                }
                if kw == "id" {
                    cat.set_id(x, Some(y));
                } else {
                    cat.set_inverse(x, Some(y));
                }
            }
            _ => {
                let (op, kw_len) = match kw {
                    "comp0" => (Op::Comp0, 1),
                    "comp1" => (Op::Comp1, 1),
                    "comp2" => (Op::Comp2, 1),
                    "tensor" => (Op::Tensor, 1),
                    "whisk" => {
                        let t = l.toks.get(1).ok_or_else(|| l.err(0, "expected a whisker kind"))?;
                        let op = Op::whisker_kind(t.text)
                            .ok_or_else(|| perr(*t, format!("unknown whisker kind `{}`", t.text)))?;
                        (op, 2)
                    }
                    _ => return Err(l.err(0, format!("unknown category line `{kw}`"))),
                };
                let (args, r) = l.assignment(2, kw_len)?;
                let (da, db) = op.arg_dims();
                let a = resolve(&cat, args[0], &[da])?;
                let b = resolve(&cat, args[1], &[db])?;
                let c = resolve(&cat, r, &[op.result_dim()])?;
                if cat.entry(op, a, b).is_some() {
                    return Err(l.err(0, format!("{} entry for ({}, {}) given twice", op.keyword(), args[0].text, args[1].text)));
                }
                if !cat.compatible(op, a, b) {
                    return Err(l.err(kw_len, format!("`{}` and `{}` are not boundary-compatible", args[0].text, args[1].text)));
                }
                cat.set_entry(op, a, b, Some(c));
            }
        }
    }
    Ok(cat)
}

/// Reads `kw x = y` lines into per-cell slots.
struct Slots<'c> {
    src: &'c Cat,
    dst: &'c Cat,
    vals: BTreeMap<String, Vec<Option<Cell>>>,
}

impl<'c> Slots<'c> {
    fn new(src: &'c Cat, dst: &'c Cat) -> Self {
        Slots { src, dst, vals: BTreeMap::new() }
    }

    fn read(&mut self, l: &Line<'_>, kw: &str, dim: u8, out_dim: u8) -> Result<(), ParseError> {
        let (args, r) = l.assignment(1, 1)?;
        let x = resolve(self.src, args[0], &[dim])?;
        let y = resolve(self.dst, r, &[out_dim])?;
        let v = self.vals.entry(kw.to_string()).or_insert_with(|| vec![None; self.src.count(dim)]);
        if v[x.idx as usize].replace(y).is_some() {
            return Err(l.err(0, format!("{kw} `{}` given twice", args[0].text)));
        }
        Ok(())
    }

    fn take(&mut self, head: &Line<'_>, kw: &str, dim: u8) -> Result<Vec<Cell>, ParseError> {
        let v = self.vals.remove(kw).unwrap_or_else(|| vec![None; self.src.count(dim)]);
        v.into_iter()
            .enumerate()
            .map(|(i, c)| {
                c.ok_or_else(|| head.err(1, format!("no {kw} line for `{}`", self.src.show(Cell::new(dim, i as u32)))))
            })
            .collect()
    }
}

fn refs<'a>(head: &Line<'a>, n: usize, arrow: &str) -> Result<Vec<Tok<'a>>, ParseError> {
    let t = &head.toks;
    let ok = match n {
        1 => t.len() == 4 && t[2].text == ":",
        _ => t.len() == 6 && t[2].text == ":" && t[4].text == arrow,
    };
    if !ok {
        let kw = t[0].text;
        let form = if n == 1 { format!("{kw} <name> : <space>") } else { format!("{kw} <name> : <a> {arrow} <b>") };
        return Err(head.err(t.len().min(2), format!("expected `{form}`")));
    }
    Ok(if n == 1 { vec![t[3]] } else { vec![t[3], t[5]] })
}

fn lookup<'d>(doc: &'d Document, t: Tok<'_>, kind: &str) -> Result<&'d Value, ParseError> {
    let s = doc.get(t.text).ok_or_else(|| perr(t, format!("no earlier section named `{}`", t.text)))?;
    if s.value.keyword() != kind {
        return Err(perr(t, format!("`{}` is a {}, expected a {kind}", t.text, s.value.keyword())));
    }
    Ok(&s.value)
}

fn no_extra(body: &[Line<'_>], allowed: &[&str]) -> Result<(), ParseError> {
    match body.iter().find(|l| !allowed.contains(&l.toks[0].text)) {
        Some(l) => Err(l.err(0, format!("unexpected line `{}` here", l.toks[0].text))),
        None => Ok(()),
    }
}

fn parse_section(doc: &Document, head: &Line<'_>, body: &[Line<'_>]) -> Result<Section, ParseError> {
    let kw = head.toks[0].text;
    let name = head.toks.get(1).ok_or_else(|| head.err(0, format!("`{kw}` needs a name")))?;
    if doc.get(name.text).is_some() {
        return Err(perr(*name, format!("section `{}` defined twice", name.text)));
    }
    let (refs_toks, value) = match kw {
        "category" => {
            if head.toks.len() != 2 {
                return Err(head.err(2, "expected `category <name>`"));
            }
            (Vec::new(), Value::Category(Arc::new(parse_category(name.text, head, body)?)))
        }
        "functor" => {
            let r = refs(head, 2, "->")?;
            let (Value::Category(d), Value::Category(c)) = (lookup(doc, r[0], "category")?, lookup(doc, r[1], "category")?)
            else {
                unreachable!()
            };
            no_extra(body, &["map0", "map1", "map2", "map3"])?;
            let mut slots = Slots::new(d, c);
            for l in body {
                let k = l.toks[0].text.as_bytes()[3] - b'0';
                slots.read(l, l.toks[0].text, k, k)?;
            }
            let map = [0u8, 1, 2, 3].map(|k| slots.take(head, &format!("map{k}"), k));
            let [m0, m1, m2, m3] = map;
            let map = [m0?, m1?, m2?, m3?].map(|v| v.into_iter().map(|c| c.idx).collect());
            let f = GrayFunctor::new(d.clone(), c.clone(), map).map_err(|e| gray(*name, e))?;
            (r, Value::Functor(Arc::new(f)))
        }
        "pstransf" => {
            let r = refs(head, 2, "=>")?;
            let (Value::Functor(f), Value::Functor(g)) = (lookup(doc, r[0], "functor")?, lookup(doc, r[1], "functor")?)
            else {
                unreachable!()
            };
            if f.dom != g.dom || f.cod != g.cod {
                return Err(perr(r[1], "the two functors are not parallel"));
            }
            no_extra(body, &["at0", "at1", "at2", "coc"])?;
            let (d, h) = (&*f.dom, &*f.cod);
            let mut slots = Slots::new(d, h);
            let mut coc = BTreeMap::new();
            for l in body {
                let t = l.toks[0].text;
                if t == "coc" {
                    let (args, v) = l.assignment(2, 1)?;
                    let f2 = resolve(d, args[0], &[1])?;
                    let f1 = resolve(d, args[1], &[1])?;
                    if d.s(f2, 0) != d.t(f1, 0) {
                        return Err(l.err(1, format!("`{}` and `{}` are not composable", args[0].text, args[1].text)));
                    }
                    if coc.insert((f2.idx, f1.idx), resolve(h, v, &[3])?).is_some() {
                        return Err(l.err(0, "coc entry given twice"));
                    }
                } else {
                    let k = t.as_bytes()[2] - b'0';
                    slots.read(l, t, k, k + 1)?;
                }
            }
            if let Some((f2, f1)) = d.composable_pairs().into_iter().find(|&(a, b)| !coc.contains_key(&(a.idx, b.idx))) {
                return Err(head.err(1, format!("no coc line for ({}, {})", d.show(f2), d.show(f1))));
            }
            let a = PseudoTransformation {
                dom: f.clone(),
                cod: g.clone(),
                at0: slots.take(head, "at0", 0)?,
                at1: slots.take(head, "at1", 1)?,
                at2: slots.take(head, "at2", 2)?,
                coc,
            };
            (r, Value::Transf(Arc::new(a)))
        }
        "psmod" => {
            let r = refs(head, 2, "=>")?;
            let (Value::Transf(a), Value::Transf(b)) = (lookup(doc, r[0], "pstransf")?, lookup(doc, r[1], "pstransf")?)
            else {
                unreachable!()
            };
            if a.dom != b.dom || a.cod != b.cod {
                return Err(perr(r[1], "the two transformations are not parallel"));
            }
            no_extra(body, &["at0", "at1"])?;
            let mut slots = Slots::new(a.source(), a.target());
            for l in body {
                let k = l.toks[0].text.as_bytes()[2] - b'0';
                slots.read(l, l.toks[0].text, k, k + 2)?;
            }
            let m = PseudoModification {
                dom: a.clone(),
                cod: b.clone(),
                at0: slots.take(head, "at0", 0)?,
                at1: slots.take(head, "at1", 1)?,
            };
            (r, Value::Modif(Arc::new(m)))
        }
        "perturbation" => {
            let r = refs(head, 2, "=>")?;
            let (Value::Modif(a), Value::Modif(b)) = (lookup(doc, r[0], "psmod")?, lookup(doc, r[1], "psmod")?) else {
                unreachable!()
            };
            if a.dom != b.dom || a.cod != b.cod {
                return Err(perr(r[1], "the two modifications are not parallel"));
            }
            no_extra(body, &["at0"])?;
            let mut slots = Slots::new(a.source(), a.target());
            for l in body {
                slots.read(l, "at0", 0, 3)?;
            }
            let p = Perturbation { dom: a.clone(), cod: b.clone(), at0: slots.take(head, "at0", 0)? };
            (r, Value::Pert(Arc::new(p)))
        }
        "dictionary" => {
            let r = refs(head, 1, "")?;
            let Value::Category(space) = lookup(doc, r[0], "category")? else { unreachable!() };
            no_extra(body, &["entry0", "entry1", "entry2", "entry3"])?;
            let mut entries = Vec::new();
            let mut seen = [0u8, 1, 2, 3].map(|k| vec![false; space.count(k)]);
            for l in body {
                let k = l.toks[0].text.as_bytes()[5] - b'0';
                let (args, v) = l.assignment(1, 1)?;
                let c = resolve(space, args[0], &[k])?;
                if std::mem::replace(&mut seen[k as usize][c.idx as usize], true) {
                    return Err(l.err(1, format!("entry for `{}` given twice", args[0].text)));
                }
                let want = ["functor", "pstransf", "psmod", "perturbation"][k as usize];
                lookup(doc, v, want)?;
                entries.push((k, args[0].text.to_string(), v.text.to_string()));
            }
            (r, Value::Dictionary(Dictionary { entries }))
        }
        _ => unreachable!("header keywords are filtered by the caller"),
    };
    Ok(Section {
        name: name.text.to_string(),
        refs: refs_toks.iter().map(|t| t.text.to_string()).collect(),
        value,
    })
}

pub fn parse(text: &str) -> Result<Document, ParseError> {
    let lines = lex(text);
    let Some(first) = lines.first() else {
        return Err(ParseError { line: 1, col: 1, msg: format!("empty input; expected `{VERSION_LINE}`") });
    };
    let words: Vec<&str> = first.toks.iter().map(|t| t.text).collect();
    match words.as_slice() {
        ["graycat", "v1"] => {}
        ["graycat", v] => return Err(first.err(1, format!("unsupported format version `{v}`"))),
        _ => return Err(first.err(0, format!("expected `{VERSION_LINE}`"))),
    }
    let mut doc = Document::new();
    let mut i = 1;
    while i < lines.len() {
        let head = &lines[i];
        if !HEADERS.contains(&head.toks[0].text) {
            return Err(head.err(0, format!("expected a section header, found `{}`", head.toks[0].text)));
        }
        let end = (i + 1..lines.len())
            .find(|&j| HEADERS.contains(&lines[j].toks[0].text))
            .unwrap_or(lines.len());
        let s = parse_section(&doc, head, &lines[i + 1..end])?;
        doc.sections.push(s);
        i = end;
    }
    Ok(doc)
}
