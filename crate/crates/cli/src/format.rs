//! The workbench file format: one algebra per file, plus named modules,
//! bimodule designations, and setups.
//!
//! The format is line-oriented. `#` starts a comment, blank lines separate
//! nothing, and a line in square brackets opens a section:
//!
//! ```text
//! [algebra]
//! field F2              # F<p> or Q
//! vertices 1 2 3
//! arrow a 1 2
//! arrow b 2 3
//! relation a.b + -1*c   # paths list arrows in traversal order
//!
//! [module C]
//! dims 2 1 2
//! arrow a               # dims[source] rows by dims[target] columns;
//! 0                     # no rows at all when either side is 0
//! 1
//! arrow b
//! 1 0
//!
//! [bimodule C]
//! module C              # left action = the canonical endomorphism action
//!
//! [setup main]
//! candidate C
//! ```
//!
//! Module references elsewhere (flags, setups) accept declared names, the
//! builtins `R`, `D(R)`, `P(v)`, `I(v)`, `S(v)` with `v` a vertex name, and
//! `+`-joined sums of those.

use std::sync::Arc;

use cotilt_core::algebra::{
    build_path_algebra, Arrow, FDAlgebra, Path, Quiver, Relation,
};
use cotilt_core::error::{Error, Result};
use cotilt_core::field::{Field, FieldSpec, PrimeField, Rationals};
use cotilt_core::matrix::Matrix;
use cotilt_core::module::Module;

#[derive(Debug, Clone)]
pub struct WorkbenchFile<K: Field> {
    pub algebra: Arc<FDAlgebra<K>>,
    /// Declaration order, preserved by the serializer.
    pub modules: Vec<(String, Module<K>)>,
    /// name -> module reference whose endomorphism action is meant.
    pub bimodules: Vec<(String, String)>,
    /// name -> candidate module reference (the tilting/cotilting candidate).
    pub setups: Vec<(String, String)>,
}

impl<K: Field> PartialEq for WorkbenchFile<K> {
    fn eq(&self, other: &Self) -> bool {
        *self.algebra == *other.algebra
            && self.modules == other.modules
            && self.bimodules == other.bimodules
            && self.setups == other.setups
    }
}

/// A parsed file, dispatched on the declared field.
#[derive(Debug)]
pub enum Workbench {
    Prime(WorkbenchFile<PrimeField>),
    Rational(WorkbenchFile<Rationals>),
}

impl Workbench {
    pub fn field_spec(&self) -> FieldSpec {
        match self {
            Workbench::Prime(wf) => wf.algebra.field().spec(),
            Workbench::Rational(wf) => wf.algebra.field().spec(),
        }
    }
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, col, msg: msg.into() }
}

/// A content line: 1-based source line number, comment stripped.
struct Line {
    no: usize,
    text: String,
}

struct Section {
    kind: String,
    name: String,
    header_line: usize,
    lines: Vec<Line>,
}

/// Tokens with their 1-based starting columns.
fn tokens_with_cols(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        if c.is_whitespace() {
            if let Some(b) = start.take() {
                out.push((b + 1, &s[b..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(b) = start {
        out.push((b + 1, &s[b..]));
    }
    out
}

fn sectionize(text: &str) -> Result<Vec<Section>> {
    let mut sections: Vec<Section> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let stripped = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let t = stripped.trim();
        if t.is_empty() {
            continue;
        }
        if let Some(inner) = t.strip_prefix('[') {
            let Some(inner) = inner.strip_suffix(']') else {
                return Err(syntax(no, 1, "unterminated section header"));
            };
            let mut parts = inner.trim().splitn(2, char::is_whitespace);
            let kind = parts.next().unwrap_or("").to_string();
            let name = parts.next().unwrap_or("").trim().to_string();
            match kind.as_str() {
                "algebra" => {
                    if !name.is_empty() {
                        return Err(syntax(no, 1, "the algebra section takes no name"));
                    }
                }
                "module" | "bimodule" | "setup" => {
                    if name.is_empty() {
                        return Err(syntax(no, 1, format!("a {kind} section needs a name")));
                    }
                    if !section_name_ok(&name) {
                        return Err(syntax(no, 1, format!("bad {kind} name {name:?}")));
                    }
                }
                other => return Err(syntax(no, 1, format!("unknown section kind {other:?}"))),
            }
            sections.push(Section { kind, name, header_line: no, lines: Vec::new() });
        } else {
            let Some(sec) = sections.last_mut() else {
                return Err(syntax(no, 1, "content before any section header"));
            };
            sec.lines.push(Line { no, text: stripped.to_string() });
        }
    }
    Ok(sections)
}

/// Vertex names appear in space-separated lists and inside P(v)-style
/// references; arrow names additionally appear in dotted paths and
/// coefficient terms, so they exclude the relation syntax characters too.
fn vertex_name_ok(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| !c.is_whitespace() && !"[]#()".contains(c))
}

fn arrow_name_ok(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| !c.is_whitespace() && !"[]#.+*()".contains(c))
}

/// Module, bimodule, and setup names appear in references, where `+` joins
/// sums, so they exclude it on top of the vertex rules.
fn section_name_ok(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| !c.is_whitespace() && !"[]#+".contains(c))
}

pub fn parse(text: &str) -> Result<Workbench> {
    let sections = sectionize(text)?;
    let algebras: Vec<&Section> = sections.iter().filter(|s| s.kind == "algebra").collect();
    let alg = match algebras.len() {
        0 => return Err(Error::Validation("no algebra section".into())),
        1 => algebras[0],
        _ => {
            return Err(Error::Validation(format!(
                "more than one algebra section (second at line {})",
                algebras[1].header_line
            )))
        }
    };
    let field_line = alg
        .lines
        .iter()
        .find(|l| tokens_with_cols(&l.text).first().map(|t| t.1) == Some("field"))
        .ok_or_else(|| Error::Validation("the algebra section declares no field".into()))?;
    let toks = tokens_with_cols(&field_line.text);
    if toks.len() != 2 {
        return Err(syntax(field_line.no, 1, "expected `field F<p>` or `field Q`"));
    }
    let (col, spec) = toks[1];
    match spec {
        "Q" => Ok(Workbench::Rational(build_file(Rationals, &sections)?)),
        s => {
            let p: u64 = s
                .strip_prefix('F')
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| syntax(field_line.no, col, format!("unknown field {s:?}")))?;
            let f = PrimeField::new(p)
                .map_err(|e| syntax(field_line.no, col, e))?;
            Ok(Workbench::Prime(build_file(f, &sections)?))
        }
    }
}

/// Re-join the tokens of a module reference with single spaces, the
/// serializer's canonical spacing.
fn join_ref(toks: &[(usize, &str)]) -> String {
    toks.iter().map(|t| t.1).collect::<Vec<_>>().join(" ")
}

fn build_file<K: Field>(field: K, sections: &[Section]) -> Result<WorkbenchFile<K>> {
    let alg_sec = sections.iter().find(|s| s.kind == "algebra").expect("checked by parse");
    let algebra = build_algebra(field, alg_sec)?;

    let mut wf = WorkbenchFile {
        algebra: algebra.clone(),
        modules: Vec::new(),
        bimodules: Vec::new(),
        setups: Vec::new(),
    };
    for sec in sections.iter().filter(|s| s.kind == "module") {
        if wf.modules.iter().any(|(n, _)| *n == sec.name) {
            return Err(Error::Validation(format!("duplicate module name {:?}", sec.name)));
        }
        let m = build_module(&algebra, sec)?;
        wf.modules.push((sec.name.clone(), m));
    }
    for sec in sections.iter().filter(|s| s.kind == "bimodule") {
        if wf.bimodules.iter().any(|(n, _)| *n == sec.name) {
            return Err(Error::Validation(format!("duplicate bimodule name {:?}", sec.name)));
        }
        let mut target = None;
        for l in &sec.lines {
            let toks = tokens_with_cols(&l.text);
            match toks.first().map(|t| t.1) {
                Some("module") if toks.len() >= 2 => target = Some(join_ref(&toks[1..])),
                _ => return Err(syntax(l.no, 1, "expected `module REF`")),
            }
        }
        let target = target.ok_or_else(|| {
            Error::Validation(format!("bimodule {:?} names no module", sec.name))
        })?;
        resolve_module_ref(&wf, &target)?;
        wf.bimodules.push((sec.name.clone(), target));
    }
    for sec in sections.iter().filter(|s| s.kind == "setup") {
        if wf.setups.iter().any(|(n, _)| *n == sec.name) {
            return Err(Error::Validation(format!("duplicate setup name {:?}", sec.name)));
        }
        let mut cand = None;
        for l in &sec.lines {
            let toks = tokens_with_cols(&l.text);
            match toks.first().map(|t| t.1) {
                Some("candidate") if toks.len() >= 2 => cand = Some(join_ref(&toks[1..])),
                _ => return Err(syntax(l.no, 1, "expected `candidate REF`")),
            }
        }
        let cand = cand.ok_or_else(|| {
            Error::Validation(format!("setup {:?} names no candidate", sec.name))
        })?;
        resolve_bimodule_ref(&wf, &cand)?;
        wf.setups.push((sec.name.clone(), cand));
    }
    Ok(wf)
}

fn build_algebra<K: Field>(field: K, sec: &Section) -> Result<Arc<FDAlgebra<K>>> {
    let mut vertex_names: Vec<String> = Vec::new();
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut relation_lines: Vec<&Line> = Vec::new();
    for l in &sec.lines {
        let toks = tokens_with_cols(&l.text);
        match toks[0].1 {
            "field" => {}
            "vertices" => {
                if !vertex_names.is_empty() {
                    return Err(syntax(l.no, 1, "vertices declared twice"));
                }
                for &(col, name) in &toks[1..] {
                    if !vertex_name_ok(name) {
                        return Err(syntax(l.no, col, format!("bad vertex name {name:?}")));
                    }
                    if vertex_names.iter().any(|v| v == name) {
                        return Err(syntax(l.no, col, format!("duplicate vertex {name:?}")));
                    }
                    vertex_names.push(name.to_string());
                }
                if vertex_names.is_empty() {
                    return Err(syntax(l.no, 1, "empty vertex list"));
                }
            }
            "arrow" => {
                if toks.len() != 4 {
                    return Err(syntax(l.no, 1, "expected `arrow NAME SRC TGT`"));
                }
                let (ncol, name) = toks[1];
                if !arrow_name_ok(name) {
                    return Err(syntax(l.no, ncol, format!("bad arrow name {name:?}")));
                }
                let src = vertex_index(&vertex_names, toks[2], l.no)?;
                let tgt = vertex_index(&vertex_names, toks[3], l.no)?;
                arrows.push(Arrow { name: name.to_string(), source: src, target: tgt });
            }
            "relation" => relation_lines.push(l),
            other => return Err(syntax(l.no, toks[0].0, format!("unknown directive {other:?}"))),
        }
    }
    if vertex_names.is_empty() {
        return Err(Error::Validation("the algebra section declares no vertices".into()));
    }
    let quiver = Quiver::new(vertex_names, arrows)
        .map_err(|e| Error::Validation(format!("bad quiver: {e}")))?;
    let mut relations = Vec::new();
    for l in relation_lines {
        relations.push(parse_relation(&field, &quiver, l)?);
    }
    build_path_algebra(field, quiver, relations)
        .map(Arc::new)
        .map_err(|e| Error::Validation(format!("bad algebra: {e}")))
}

fn vertex_index(names: &[String], tok: (usize, &str), line: usize) -> Result<usize> {
    names
        .iter()
        .position(|v| v == tok.1)
        .ok_or_else(|| syntax(line, tok.0, format!("unknown vertex {:?}", tok.1)))
}

/// `relation TERM [+ TERM]*`, TERM = `PATH` or `COEFF*PATH`, PATH = dotted
/// arrow names in traversal order.
fn parse_relation<K: Field>(field: &K, quiver: &Quiver, l: &Line) -> Result<Relation<K>> {
    let body = l.text.trim_start();
    let body = body.strip_prefix("relation").expect("dispatched on the keyword").trim();
    if body.is_empty() {
        return Err(syntax(l.no, 1, "empty relation"));
    }
    let mut terms = Vec::new();
    for term in body.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(syntax(l.no, 1, "empty relation term"));
        }
        let (coeff, path_str) = match term.split_once('*') {
            Some((c, p)) => {
                let c = field
                    .parse(c.trim())
                    .map_err(|e| syntax(l.no, 1, format!("bad coefficient: {e}")))?;
                (c, p.trim())
            }
            None => (field.one(), term),
        };
        let mut arrow_ids = Vec::new();
        for part in path_str.split('.') {
            let part = part.trim();
            let id = quiver
                .arrow_index(part)
                .ok_or_else(|| syntax(l.no, 1, format!("unknown arrow {part:?}")))?;
            arrow_ids.push(id);
        }
        if arrow_ids.is_empty() {
            return Err(syntax(l.no, 1, "empty path"));
        }
        let source = quiver.arrows[arrow_ids[0]].source;
        for w in arrow_ids.windows(2) {
            if quiver.arrows[w[0]].target != quiver.arrows[w[1]].source {
                return Err(syntax(
                    l.no,
                    1,
                    format!(
                        "arrows {} and {} do not compose",
                        quiver.arrows[w[0]].name, quiver.arrows[w[1]].name
                    ),
                ));
            }
        }
        terms.push((coeff, Path { source, arrows: arrow_ids }));
    }
    Ok(Relation { terms })
}

fn build_module<K: Field>(a: &Arc<FDAlgebra<K>>, sec: &Section) -> Result<Module<K>> {
    let q = &a
        .presentation()
        .ok_or_else(|| Error::Validation("algebra has no presentation".into()))?
        .quiver;
    let f = a.field().clone();
    let mut dims: Option<Vec<usize>> = None;
    let mut mats: Vec<Option<Matrix<K>>> = vec![None; q.arrows.len()];
    let mut i = 0usize;
    while i < sec.lines.len() {
        let l = &sec.lines[i];
        let toks = tokens_with_cols(&l.text);
        match toks[0].1 {
            "dims" => {
                if dims.is_some() {
                    return Err(syntax(l.no, 1, "dims declared twice"));
                }
                let mut d = Vec::new();
                for &(col, t) in &toks[1..] {
                    let v: usize = t
                        .parse()
                        .map_err(|_| syntax(l.no, col, format!("bad dimension {t:?}")))?;
                    d.push(v);
                }
                if d.len() != q.vertex_names.len() {
                    return Err(syntax(
                        l.no,
                        1,
                        format!(
                            "module {:?}: {} dims for {} vertices",
                            sec.name,
                            d.len(),
                            q.vertex_names.len()
                        ),
                    ));
                }
                dims = Some(d);
                i += 1;
            }
            "arrow" => {
                let dims = dims.as_ref().ok_or_else(|| {
                    syntax(l.no, 1, "dims must come before the arrow actions")
                })?;
                if toks.len() != 2 {
                    return Err(syntax(l.no, 1, "expected `arrow NAME`"));
                }
                let ai = q
                    .arrow_index(toks[1].1)
                    .ok_or_else(|| syntax(l.no, toks[1].0, format!("unknown arrow {:?}", toks[1].1)))?;
                if mats[ai].is_some() {
                    return Err(syntax(
                        l.no,
                        1,
                        format!("module {:?}: action for arrow {} given twice", sec.name, toks[1].1),
                    ));
                }
                let rows = dims[q.arrows[ai].source];
                let cols = dims[q.arrows[ai].target];
                let mut entries: Vec<Vec<K::Elem>> = Vec::new();
                if rows > 0 && cols > 0 {
                    for r in 0..rows {
                        let Some(rl) = sec.lines.get(i + 1 + r) else {
                            return Err(syntax(
                                l.no,
                                1,
                                format!(
                                    "module {:?}: matrix for arrow {} needs {} rows",
                                    sec.name, toks[1].1, rows
                                ),
                            ));
                        };
                        let rtoks = tokens_with_cols(&rl.text);
                        if rtoks.len() != cols {
                            return Err(syntax(
                                rl.no,
                                1,
                                format!(
                                    "module {:?}: matrix for arrow {} has a row with {} entries, expected {}",
                                    sec.name,
                                    toks[1].1,
                                    rtoks.len(),
                                    cols
                                ),
                            ));
                        }
                        let mut row = Vec::new();
                        for &(col, t) in &rtoks {
                            let e = f
                                .parse(t)
                                .map_err(|e| syntax(rl.no, col, format!("bad entry: {e}")))?;
                            row.push(e);
                        }
                        entries.push(row);
                    }
                    i += 1 + rows;
                } else {
                    i += 1;
                }
                let m = Matrix::from_fn(f.clone(), rows, cols, |r, c| entries[r][c].clone());
                mats[ai] = Some(m);
            }
            other => return Err(syntax(l.no, toks[0].0, format!("unexpected {other:?} in a module section"))),
        }
    }
    let dims = dims
        .ok_or_else(|| Error::Validation(format!("module {:?} declares no dims", sec.name)))?;
    let mut arrow_mats = Vec::new();
    for (ai, m) in mats.into_iter().enumerate() {
        let m = m.ok_or_else(|| {
            Error::Validation(format!(
                "module {:?}: missing action for arrow {}",
                sec.name, q.arrows[ai].name
            ))
        })?;
        arrow_mats.push(m);
    }
    Module::from_rep(a.clone(), dims, arrow_mats)
        .map_err(|e| Error::Validation(format!("module {:?}: {e}", sec.name)))
}

/// Resolve a module reference: declared name, `R`, `D(R)`, `P(v)`, `I(v)`,
/// `S(v)`, or a `+`-joined sum.
pub fn resolve_module_ref<K: Field>(wf: &WorkbenchFile<K>, r: &str) -> Result<Module<K>> {
    let parts: Vec<&str> = r.split('+').map(str::trim).collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(Error::Validation(format!("bad module reference {r:?}")));
    }
    let resolved: Vec<Module<K>> =
        parts.iter().map(|p| resolve_single(wf, p)).collect::<Result<_>>()?;
    if resolved.len() == 1 {
        return Ok(resolved.into_iter().next().unwrap());
    }
    let refs: Vec<&Module<K>> = resolved.iter().collect();
    Ok(Module::direct_sum(&wf.algebra, &refs))
}

fn resolve_single<K: Field>(wf: &WorkbenchFile<K>, r: &str) -> Result<Module<K>> {
    if let Some((_, m)) = wf.modules.iter().find(|(n, _)| n == r) {
        return Ok(m.clone());
    }
    resolve_builtin_single(&wf.algebra, r)
}

/// Resolve a reference made of builtins only (no declared names) over an
/// arbitrary algebra, e.g. an endomorphism algebra whose modules the file
/// cannot spell out. Sums with `+` work as usual.
pub fn resolve_builtin_ref<K: Field>(a: &Arc<FDAlgebra<K>>, r: &str) -> Result<Module<K>> {
    let parts: Vec<&str> = r.split('+').map(str::trim).collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(Error::Validation(format!("bad module reference {r:?}")));
    }
    let resolved: Vec<Module<K>> =
        parts.iter().map(|p| resolve_builtin_single(a, p)).collect::<Result<_>>()?;
    if resolved.len() == 1 {
        return Ok(resolved.into_iter().next().unwrap());
    }
    let refs: Vec<&Module<K>> = resolved.iter().collect();
    Ok(Module::direct_sum(a, &refs))
}

fn resolve_builtin_single<K: Field>(a: &Arc<FDAlgebra<K>>, r: &str) -> Result<Module<K>> {
    if r == "R" {
        return Ok(Module::regular(a));
    }
    if r == "D(R)" {
        let aop = Arc::new(a.opposite());
        return Ok(Module::regular(&aop).dual_onto(a));
    }
    for (prefix, make) in [
        ("P", (|a, v| Module::projective(a, v)) as fn(&Arc<FDAlgebra<K>>, usize) -> Module<K>),
        ("I", |a, v| Module::injective(a, v)),
        ("S", |a, v| Module::simple(a, v)),
    ] {
        if let Some(inner) = r.strip_prefix(prefix).and_then(|s| s.strip_prefix('(')) {
            let Some(vname) = inner.strip_suffix(')') else {
                return Err(Error::Validation(format!("bad module reference {r:?}")));
            };
            let v = a
                .vertex_names()
                .iter()
                .position(|n| n == vname.trim())
                .ok_or_else(|| {
                    Error::Validation(format!("unknown vertex {:?} in {r:?}", vname.trim()))
                })?;
            return Ok(make(a, v));
        }
    }
    Err(Error::Validation(format!("unknown module reference {r:?}")))
}

/// The bimodule designated by a reference: a declared bimodule name, or any
/// module reference (the endomorphism action is canonical either way).
pub fn resolve_bimodule_ref<K: Field>(wf: &WorkbenchFile<K>, r: &str) -> Result<Module<K>> {
    if let Some((_, target)) = wf.bimodules.iter().find(|(n, _)| n == r) {
        return resolve_module_ref(wf, target);
    }
    resolve_module_ref(wf, r)
}

/// The candidate module of the named setup, or of the first setup.
pub fn setup_candidate<'a, K: Field>(
    wf: &'a WorkbenchFile<K>,
    name: Option<&str>,
) -> Result<&'a str> {
    match name {
        Some(n) => wf
            .setups
            .iter()
            .find(|(sn, _)| sn == n)
            .map(|(_, c)| c.as_str())
            .ok_or_else(|| Error::Validation(format!("no setup named {n:?}"))),
        None => wf
            .setups
            .first()
            .map(|(_, c)| c.as_str())
            .ok_or_else(|| Error::Validation("no setup in the input file".into())),
    }
}

pub fn serialize<K: Field>(wf: &WorkbenchFile<K>) -> String {
    let a = &wf.algebra;
    let f = a.field();
    let pres = a.presentation().expect("workbench algebras carry presentations");
    let q = &pres.quiver;
    let mut out = String::new();
    out.push_str("[algebra]\n");
    out.push_str(&format!("field {}\n", f.spec()));
    out.push_str(&format!("vertices {}\n", q.vertex_names.join(" ")));
    for arr in &q.arrows {
        out.push_str(&format!(
            "arrow {} {} {}\n",
            arr.name, q.vertex_names[arr.source], q.vertex_names[arr.target]
        ));
    }
    for rel in &pres.relations {
        let terms: Vec<String> = rel
            .terms
            .iter()
            .map(|(c, p)| {
                let path: Vec<&str> =
                    p.arrows.iter().map(|&ai| q.arrows[ai].name.as_str()).collect();
                let path = path.join(".");
                if f.is_one(c) {
                    path
                } else {
                    format!("{}*{}", f.render(c), path)
                }
            })
            .collect();
        out.push_str(&format!("relation {}\n", terms.join(" + ")));
    }
    for (name, m) in &wf.modules {
        out.push_str(&format!("\n[module {name}]\n"));
        let dims: Vec<String> = m.dims().iter().map(|d| d.to_string()).collect();
        out.push_str(&format!("dims {}\n", dims.join(" ")));
        for arr in &q.arrows {
            out.push_str(&format!("arrow {}\n", arr.name));
            let b = a
                .basis()
                .iter()
                .position(|be| be.degree == 1 && be.label == arr.name)
                .expect("arrows survive in the basis of an admissible quotient");
            let mat = m.act(b);
            if mat.rows() > 0 && mat.cols() > 0 {
                for r in 0..mat.rows() {
                    let row: Vec<String> =
                        (0..mat.cols()).map(|c| f.render(mat.at(r, c))).collect();
                    out.push_str(&format!("{}\n", row.join(" ")));
                }
            }
        }
    }
    for (name, target) in &wf.bimodules {
        out.push_str(&format!("\n[bimodule {name}]\nmodule {target}\n"));
    }
    for (name, cand) in &wf.setups {
        out.push_str(&format!("\n[setup {name}]\ncandidate {cand}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const KA3: &str = "
# three-vertex quiver, two composable arrows
[algebra]
field Q
vertices 1 2 3
arrow a 1 2
arrow b 2 3

[module C]
dims 2 1 2
arrow a
0
1
arrow b
1 0

[bimodule C]
module C

[setup main]
candidate C
";

    #[test]
    fn parses_the_sample_and_resolves_names() {
        let Workbench::Rational(wf) = parse(KA3).unwrap() else { panic!("field is Q") };
        assert_eq!(wf.algebra.num_vertices(), 3);
        assert_eq!(wf.modules.len(), 1);
        let c = resolve_module_ref(&wf, "C").unwrap();
        assert_eq!(c.dims(), &[2, 1, 2]);
        let expected = Module::direct_sum(
            &wf.algebra,
            &[
                &Module::projective(&wf.algebra, 0),
                &Module::projective(&wf.algebra, 2),
                &Module::simple(&wf.algebra, 2),
            ],
        );
        assert!(cotilt_core::module::is_isomorphic(&c, &expected).is_some());
        assert_eq!(setup_candidate(&wf, None).unwrap(), "C");
        let sum = resolve_module_ref(&wf, "P(1)+P(3)+S(3)").unwrap();
        assert_eq!(sum.dims(), &[2, 1, 2]);
        let dr = resolve_module_ref(&wf, "D(R)").unwrap();
        assert_eq!(dr.total_dim(), 6);
        assert!(resolve_module_ref(&wf, "P(4)").is_err());
        assert!(resolve_module_ref(&wf, "nosuch").is_err());
    }

    #[test]
    fn round_trips_through_the_serializer() {
        let Workbench::Rational(wf) = parse(KA3).unwrap() else { panic!() };
        let text = serialize(&wf);
        let Workbench::Rational(back) = parse(&text).unwrap() else { panic!() };
        assert_eq!(wf, back);
        // And the serializer is idempotent on its own output.
        assert_eq!(text, serialize(&back));
    }

    #[test]
    fn round_trips_relations_and_prime_fields() {
        let src = "
[algebra]
field F2
vertices *
arrow x * *
relation x.x

[module k]
dims 1
arrow x
0
";
        let Workbench::Prime(wf) = parse(src).unwrap() else { panic!("field is F2") };
        assert_eq!(wf.algebra.dim(), 2);
        let text = serialize(&wf);
        let Workbench::Prime(back) = parse(&text).unwrap() else { panic!() };
        assert_eq!(wf, back);
    }

    #[test]
    fn empty_input_reports_missing_algebra() {
        match parse("") {
            Err(Error::Validation(msg)) => assert!(msg.contains("no algebra")),
            other => panic!("expected a validation error, got {other:?}"),
        }
    }

    #[test]
    fn wrong_matrix_shape_names_the_arrow() {
        let src = "
[algebra]
field Q
vertices 1 2
arrow a 1 2

[module M]
dims 1 1
arrow a
1 1
";
        match parse(src) {
            Err(Error::Syntax { line, msg, .. }) => {
                assert_eq!(line, 10);
                assert!(msg.contains("expected 1"), "{msg}");
            }
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn missing_action_is_a_validation_error() {
        let src = "
[algebra]
field Q
vertices 1 2
arrow a 1 2

[module M]
dims 1 1
";
        match parse(src) {
            Err(Error::Validation(msg)) => assert!(msg.contains("arrow a"), "{msg}"),
            other => panic!("expected a validation error, got {other:?}"),
        }
    }

    #[test]
    fn relation_violations_surface_with_the_module_name() {
        let src = "
[algebra]
field F2
vertices *
arrow x * *
relation x.x

[module bad]
dims 1
arrow x
1
";
        match parse(src) {
            // x acts by 1, so x.x acts by 1 != 0.
            Err(Error::Validation(msg)) => assert!(msg.contains("bad"), "{msg}"),
            other => panic!("expected a validation error, got {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_line_and_column() {
        let src = "[algebra]\nfield Q\nvertices 1 2\narrow a 1 9\n";
        match parse(src) {
            Err(Error::Syntax { line, col, msg }) => {
                assert_eq!(line, 4);
                assert_eq!(col, 11);
                assert!(msg.contains("unknown vertex"));
            }
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn tensor_relation_files_parse() {
        let src = "
[algebra]
field F2
vertices 1 2
arrow a 1 2
arrow x@1 1 1
arrow x@2 2 2
relation x@1.x@1
relation x@2.x@2
relation x@1.a + a.x@2
";
        let Workbench::Prime(wf) = parse(src).unwrap() else { panic!() };
        assert_eq!(wf.algebra.dim(), 6);
    }
}
