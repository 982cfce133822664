//! The `graycat` command line.

use std::collections::HashMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use thiserror::Error;

use super::{parse, serialize, Document, ParseError, Section, Value};
use crate::gray_core::{build_walking, validate_gray_category, FiniteGrayCategory as Cat, GrayError, ValidationReport};
use crate::gray_maps::{compose_functors, enumerate_functors, validate_functor, GrayFunctor};
use crate::hcomp::{check_hcomp_typing, check_interchange, check_pasteunit, hcomp, DraftPairs, HCell};
use crate::hom_calculus::{comp0_pstransf, comp1_psmod, comp2_pert, tensor_psmod};
use crate::mapping_space::{
    build_mapping_space, check_i_naturality, check_j_extranaturality, check_l_homomorphism, check_l_welldef,
    MappingSpace,
};
use crate::transfors::{
    enumerate_pert, enumerate_psmod, enumerate_pstransf, validate_perturbation, validate_psmod, validate_pstransf,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Gray(#[from] GrayError),
    #[error("{0}")]
    Usage(String),
}

#[derive(Parser, Debug)]
#[command(name = "graycat", version, about = "Finite Gray-categories and their mapping spaces")]
struct Cli {
    /// Worker threads for checks (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Validate every section of a file against its axioms.
    Validate {
        file: PathBuf,
        /// Also print per-axiom instance counts.
        #[arg(long)]
        coverage: bool,
    },
    /// Compose values; operands are `file` or `file:section`, leftmost applied last.
    Compose {
        op: ComposeOp,
        #[arg(required = true, num_args = 2)]
        operands: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the mapping space `[G,H]` with its dictionary.
    Mapspace {
        g: String,
        h: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// List every cell of a kind between two sources.
    Enumerate {
        kind: Kind,
        from: String,
        to: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a theorem on given values, or exhaustively over given categories.
    Check {
        theorem: Theorem,
        #[arg(required = true)]
        operands: Vec<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ComposeOp {
    /// Gray-functors, `G ∘ F`.
    Functor,
    /// Transformations along a functor, `β′ *₀ β`.
    Comp0,
    /// Modifications, `B #₁ A`.
    Comp1,
    /// Perturbations, `Δ #₂ Γ`.
    Comp2,
    /// Horizontal composite `x *₋₁ y` of any two cells.
    Hcomp,
    /// Interchange perturbation of two modifications.
    Tensor,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Functor,
    Pstransf,
    Psmod,
    Perturbation,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Theorem {
    Pasteunit,
    Interchange,
    HcompTyping,
    #[value(name = "L-welldef")]
    LWelldef,
    #[value(name = "L-homomorphism")]
    LHomomorphism,
    #[value(name = "i-naturality")]
    INaturality,
    #[value(name = "j-extranaturality")]
    JExtranaturality,
}

/// Parsed documents keyed by path.
#[derive(Default)]
struct Files {
    docs: HashMap<PathBuf, Document>,
}

impl Files {
    fn load(&mut self, path: &Path) -> Result<&Document, CliError> {
        if !self.docs.contains_key(path) {
            let shown = path.display().to_string();
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io { path: shown.clone(), source: e })?;
            let doc = parse(&text).map_err(|e| CliError::Parse { path: shown, source: e })?;
            self.docs.insert(path.to_path_buf(), doc);
        }
        Ok(&self.docs[path])
    }

    /// `file` picks the last value section, or the last category; `file:name` picks by name.
    fn operand(&mut self, arg: &str) -> Result<Value, CliError> {
        let (path, name) = match arg.rsplit_once(':') {
            Some((p, n)) if !Path::new(arg).exists() && Path::new(p).exists() => (p, Some(n)),
            _ => (arg, None),
        };
        let doc = self.load(Path::new(path))?;
        let found = match name {
            Some(n) => doc.get(n),
            None => doc
                .sections
                .iter()
                .rev()
                .find(|s| s.value.as_hcell().is_some())
                .or_else(|| doc.sections.iter().rev().find(|s| matches!(s.value, Value::Category(_)))),
        };
        found
            .map(|s| s.value.clone())
            .ok_or_else(|| CliError::Usage(format!("{arg}: no such section")))
    }

    fn category(&mut self, arg: &str) -> Result<Arc<Cat>, CliError> {
        match self.operand(arg)? {
            Value::Category(c) => Ok(c),
            v => Err(CliError::Usage(format!("{arg}: expected a category, found a {}", v.keyword()))),
        }
    }

    fn cell(&mut self, arg: &str) -> Result<HCell, CliError> {
        let v = self.operand(arg)?;
        v.as_hcell()
            .ok_or_else(|| CliError::Usage(format!("{arg}: expected a functor or higher cell, found a {}", v.keyword())))
    }
}

fn write_out(doc: &Document, output: Option<&Path>) -> Result<String, CliError> {
    let text = serialize(doc);
    match output {
        Some(p) => {
            std::fs::write(p, &text).map_err(|e| CliError::Io { path: p.display().to_string(), source: e })?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn validate_section(sec: &Section, doc: &Document) -> Result<ValidationReport, GrayError> {
    Ok(match &sec.value {
        Value::Category(c) => validate_gray_category(c),
        Value::Functor(f) => validate_functor(f),
        Value::Transf(a) => validate_pstransf(a)?,
        Value::Modif(m) => validate_psmod(m)?,
        Value::Pert(p) => validate_perturbation(p)?,
        Value::Dictionary(d) => {
            let mut r = ValidationReport::new("dictionary");
            let space = match doc.get(&sec.refs[0]).map(|s| &s.value) {
                Some(Value::Category(c)) => c.clone(),
                _ => return Err(GrayError::Structure(format!("dictionary space `{}` is not a category", sec.refs[0]))),
            };
            let total: usize = space.counts().iter().sum();
            if d.entries.len() != total {
                r.fail("dictionary: total", Vec::new(), format!("{} entries for {total} cells", d.entries.len()));
            }
            let names: HashMap<(u8, &str), &str> =
                d.entries.iter().map(|(k, c, n)| ((*k, c.as_str()), n.as_str())).collect();
            for (k, c, n) in &d.entries {
                let (Some(sec), sp) = (doc.get(n), &space) else { continue };
                let Some(cell) = sp.find(*k, c) else { continue };
                if *k == 0 {
                    r.count("dictionary: boundary", false);
                    continue;
                }
                let want = [sp.src(cell), sp.tgt(cell)].map(|b| names.get(&(b.dim, sp.cell_name(b))).copied());
                let ok = sec.refs.len() == 2 && want[0] == Some(sec.refs[0].as_str()) && want[1] == Some(sec.refs[1].as_str());
                r.count("dictionary: boundary", true);
                if !ok {
                    r.fail("dictionary: boundary", vec![c.clone()], format!("section `{n}` is not typed over the entries of its boundary"));
                }
            }
            r
        }
    })
}

fn cmd_validate(files: &mut Files, path: &Path, coverage: bool, out: &mut String) -> Result<bool, CliError> {
    let doc = files.load(path)?.clone();
    let mut all_ok = true;
    for s in &doc.sections {
        let mut r = validate_section(s, &doc)?;
        r.subject = format!("{} {}", s.value.keyword(), s.name);
        all_ok &= r.ok();
        out.push_str(&r.render());
        if coverage {
            out.push_str(&r.render_coverage());
        }
    }
    Ok(all_ok)
}

fn compose(op: ComposeOp, x: &HCell, y: &HCell) -> Result<HCell, CliError> {
    use HCell::*;
    let wrong = || CliError::Usage(format!("compose {op:?}: cannot compose a {} with a {}", x.kind(), y.kind()));
    Ok(match (op, x, y) {
        (ComposeOp::Functor, Functor(g), Functor(f)) => Functor(Arc::new(compose_functors(g, f)?)),
        (ComposeOp::Comp0, Transf(b), Transf(a)) => Transf(Arc::new(comp0_pstransf(b, a)?)),
        (ComposeOp::Comp1, Modif(b), Modif(a)) => Modif(Arc::new(comp1_psmod(b, a)?)),
        (ComposeOp::Comp2, Pert(d), Pert(g)) => Pert(Arc::new(comp2_pert(d, g)?)),
        (ComposeOp::Tensor, Modif(b), Modif(a)) => Pert(Arc::new(tensor_psmod(b, a)?)),
        (ComposeOp::Hcomp, _, _) => hcomp(x, y)?,
        _ => return Err(wrong()),
    })
}

fn cmd_enumerate(files: &mut Files, kind: Kind, from: &str, to: &str) -> Result<Document, CliError> {
    let mut doc = Document::new();
    let mismatch = |what: &str| CliError::Usage(format!("enumerate {kind:?}: both operands must be {what}"));
    match kind {
        Kind::Functor => {
            let (g, h) = (files.category(from)?, files.category(to)?);
            for f in enumerate_functors(&g, &h)? {
                doc.add_functor(&Arc::new(f), None);
            }
        }
        Kind::Pstransf => {
            let (HCell::Functor(f), HCell::Functor(g)) = (files.cell(from)?, files.cell(to)?) else {
                return Err(mismatch("functors"));
            };
            for a in enumerate_pstransf(&f, &g)? {
                doc.add_transf(&Arc::new(a), None);
            }
        }
        Kind::Psmod => {
            let (HCell::Transf(a), HCell::Transf(b)) = (files.cell(from)?, files.cell(to)?) else {
                return Err(mismatch("transformations"));
            };
            for m in enumerate_psmod(&a, &b)? {
                doc.add_modif(&Arc::new(m), None);
            }
        }
        Kind::Perturbation => {
            let (HCell::Modif(a), HCell::Modif(b)) = (files.cell(from)?, files.cell(to)?) else {
                return Err(mismatch("modifications"));
            };
            for p in enumerate_pert(&a, &b)? {
                doc.add_pert(&Arc::new(p), None);
            }
        }
    }
    Ok(doc)
}

/// Category operands `[G] H K` with missing ones repeated from the first.
fn categories(files: &mut Files, ops: &[String], n: usize) -> Result<Vec<Arc<Cat>>, CliError> {
    if ops.len() != 1 && ops.len() != n {
        return Err(CliError::Usage(format!("expected 1 or {n} categories, got {}", ops.len())));
    }
    let cs = ops.iter().map(|o| files.category(o)).collect::<Result<Vec<_>, _>>()?;
    Ok(if cs.len() == 1 { vec![cs[0].clone(); n] } else { cs })
}

fn merge_all(report: &mut ValidationReport, parts: Vec<Result<ValidationReport, GrayError>>) -> Result<usize, GrayError> {
    let n = parts.len();
    for p in parts {
        report.merge(p?);
    }
    Ok(n)
}

fn composable(ms: &MappingSpace) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, b2) in ms.transfs.iter().enumerate() {
        for (j, b1) in ms.transfs.iter().enumerate() {
            if b1.cod == b2.dom {
                out.push((i, j));
            }
        }
    }
    out
}

fn exhaustive(files: &mut Files, th: Theorem, ops: &[String]) -> Result<(ValidationReport, usize), CliError> {
    let names = |cs: &[Arc<Cat>]| cs.iter().map(|c| c.name().to_string()).collect::<Vec<_>>().join(", ");
    let mut report;
    let n = match th {
        Theorem::Pasteunit => {
            let cs = categories(files, ops, 3)?;
            report = ValidationReport::new(format!("pasteunit over {}", names(&cs)));
            let gs: Vec<Arc<GrayFunctor>> = enumerate_functors(&cs[0], &cs[1])?.into_iter().map(Arc::new).collect();
            let hk = build_mapping_space(&cs[1], &cs[2])?;
            let jobs: Vec<_> = hk.transfs.iter().flat_map(|b| gs.iter().map(move |g| (b.clone(), g.clone()))).collect();
            merge_all(&mut report, jobs.par_iter().map(|(b, g)| check_pasteunit(b, g)).collect())?
        }
        Theorem::Interchange => {
            let cs = categories(files, ops, 3)?;
            report = ValidationReport::new(format!("interchange over {}", names(&cs)));
            let gh = build_mapping_space(&cs[0], &cs[1])?;
            let hk = build_mapping_space(&cs[1], &cs[2])?;
            let mut jobs = Vec::new();
            for (i, j) in composable(&hk) {
                for a in &gh.transfs {
                    jobs.push((hk.transfs[i].clone(), hk.transfs[j].clone(), a.clone()));
                }
            }
            merge_all(&mut report, jobs.par_iter().map(|(b2, b1, a)| check_interchange(b2, b1, a)).collect())?
        }
        Theorem::HcompTyping => {
            let cs = categories(files, ops, 3)?;
            report = ValidationReport::new(format!("hcomp typing over {}", names(&cs)));
            let gh = build_mapping_space(&cs[0], &cs[1])?;
            let hk = build_mapping_space(&cs[1], &cs[2])?;
            let cells = |ms: &MappingSpace| (0..4u8).flat_map(|k| ms.space.cells(k).collect::<Vec<_>>()).map(|c| ms.value(c)).collect::<Vec<_>>();
            let (xs, ys) = (cells(&hk), cells(&gh));
            let jobs: Vec<(HCell, HCell)> = xs.iter().flat_map(|x| ys.iter().map(move |y| (x.clone(), y.clone()))).collect();
            let n = merge_all(&mut report, jobs.par_iter().map(|(x, y)| check_hcomp_typing(x, y, DraftPairs::Candidate)).collect())?;
            report.notes.sort();
            report.notes.dedup();
            n
        }
        Theorem::LWelldef | Theorem::LHomomorphism => {
            let cs = categories(files, ops, 3)?;
            let (s, t) = (build_mapping_space(&cs[0], &cs[1])?, build_mapping_space(&cs[0], &cs[2])?);
            let outer = build_mapping_space(&cs[1], &cs[2])?;
            if let Theorem::LWelldef = th {
                report = ValidationReport::new(format!("L well-defined over {}", names(&cs)));
                report.merge(check_l_welldef(&outer, &s, &t)?);
                outer.space.counts().iter().sum()
            } else {
                report = ValidationReport::new(format!("L homomorphism over {}", names(&cs)));
                let pairs = composable(&outer);
                let parts = pairs
                    .par_iter()
                    .map(|&(i, j)| check_l_homomorphism(&outer.transfs[i], &outer.transfs[j], &s, &t))
                    .collect();
                merge_all(&mut report, parts)?
            }
        }
        Theorem::INaturality => {
            let cs = categories(files, ops, 2)?;
            report = ValidationReport::new(format!("i naturality over {}", names(&cs)));
            let one = Arc::new(build_walking(0));
            let (sg, sh) = (build_mapping_space(&one, &cs[0])?, build_mapping_space(&one, &cs[1])?);
            let ks: Vec<Arc<GrayFunctor>> = enumerate_functors(&cs[0], &cs[1])?.into_iter().map(Arc::new).collect();
            let n = merge_all(&mut report, ks.par_iter().map(|k| check_i_naturality(k, &sg, &sh)).collect())?;
            report.notes.dedup();
            n
        }
        Theorem::JExtranaturality => {
            let cs = categories(files, ops, 2)?;
            report = ValidationReport::new(format!("j extranaturality over {}", names(&cs)));
            let gg = build_mapping_space(&cs[0], &cs[0])?;
            let hh = build_mapping_space(&cs[1], &cs[1])?;
            let gh = build_mapping_space(&cs[0], &cs[1])?;
            let ks: Vec<Arc<GrayFunctor>> = gh.functors.clone();
            let n = merge_all(&mut report, ks.par_iter().map(|k| check_j_extranaturality(k, &gg, &hh, &gh)).collect())?;
            report.notes.dedup();
            n
        }
    };
    Ok((report, n))
}

fn on_values(files: &mut Files, th: Theorem, ops: &[String]) -> Result<(ValidationReport, usize), CliError> {
    let cells = ops.iter().map(|o| files.cell(o)).collect::<Result<Vec<_>, _>>()?;
    let bad = || CliError::Usage(format!("check {th:?}: these operand kinds are not supported"));
    let r = match (th, cells.as_slice()) {
        (Theorem::Pasteunit, [HCell::Transf(b), HCell::Functor(g)]) => check_pasteunit(b, g)?,
        (Theorem::Interchange, [HCell::Transf(b2), HCell::Transf(b1), HCell::Transf(a)]) => check_interchange(b2, b1, a)?,
        (Theorem::HcompTyping, [x, y]) => check_hcomp_typing(x, y, DraftPairs::Candidate)?,
        _ => return Err(bad()),
    };
    Ok((r, 1))
}

fn cmd_check(files: &mut Files, th: Theorem, ops: &[String], out: &mut String) -> Result<bool, CliError> {
    let first_is_category = matches!(files.operand(&ops[0])?, Value::Category(_));
    if first_is_category {
        let mut bad = false;
        for o in ops {
            let r = validate_gray_category(&*files.category(o)?);
            if !r.ok() {
                out.push_str(&r.render());
                bad = true;
            }
        }
        if bad {
            let _ = writeln!(out, "  not a Gray-category, {th:?} not checked");
            return Ok(false);
        }
    }
    let (report, n) = if first_is_category { exhaustive(files, th, ops)? } else { on_values(files, th, ops)? };
    out.push_str(&report.render());
    let _ = writeln!(out, "  checked {n} instances");
    Ok(report.ok())
}

fn dispatch(cli: Cli, out: &mut String) -> Result<bool, CliError> {
    let mut files = Files::default();
    match cli.cmd {
        Cmd::Validate { file, coverage } => cmd_validate(&mut files, &file, coverage, out),
        Cmd::Compose { op, operands, output } => {
            let (x, y) = (files.cell(&operands[0])?, files.cell(&operands[1])?);
            let mut doc = Document::new();
            doc.add_value(&compose(op, &x, &y)?, Some("result"));
            out.push_str(&write_out(&doc, output.as_deref())?);
            Ok(true)
        }
        Cmd::Mapspace { g, h, output } => {
            let ms = build_mapping_space(&files.category(&g)?, &files.category(&h)?)?;
            let mut doc = Document::new();
            doc.add_mapping_space(&ms);
            write_out(&doc, Some(&output))?;
            let c = ms.space.counts();
            let _ = writeln!(out, "{}: {} {} {} {} cells", ms.space.name(), c[0], c[1], c[2], c[3]);
            Ok(true)
        }
        Cmd::Enumerate { kind, from, to, output } => {
            let doc = cmd_enumerate(&mut files, kind, &from, &to)?;
            out.push_str(&write_out(&doc, output.as_deref())?);
            Ok(true)
        }
        Cmd::Check { theorem, operands } => cmd_check(&mut files, theorem, &operands, out),
    }
}

/// Runs the command line and returns the exit status: 0 when every check holds,
/// 1 on a violation, 2 on usage, parse or structural errors.
pub fn run<I, T>(args: I, stdout: &mut String, stderr: &mut String) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 { stdout.push_str(&text) } else { stderr.push_str(&text) }
            return if code == 0 { 0 } else { 2 };
        }
    };
    if let Some(n) = cli.jobs {
        // Only the first call in a process can size the global pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match dispatch(cli, stdout) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}
