//! Elaboration of a parsed workspace into categories, modules, bimodules and ideals.

use std::collections::BTreeMap;
use std::sync::Arc;

use kcat_core::exactla::Mat;
use kcat_core::ideals::ideal_from_generators;
use kcat_core::kcat::quiver::{PathAlgebra, Quiver, Relation, DEFAULT_PATH_BOUND};
use kcat_core::kcat::{CategoryBuilder, LinComb};
use kcat_core::{Bimodule, CatModule, Error, FieldSpec, FiniteKCategory, Scalar, Side, TwoSidedIdeal};
use thiserror::Error;

use crate::ast::*;

#[derive(Clone, Debug)]
pub struct LoadOptions {
    /// Replaces the field of every category.
    pub field: Option<FieldSpec>,
    /// Paths longer than this must reduce to zero in quiver presentations.
    pub path_bound: usize,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            field: None,
            path_bound: DEFAULT_PATH_BOUND,
        }
    }
}

/// A category that failed its axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvalidCategory {
    pub name: String,
    pub line: usize,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error("line {line}: unresolved name `{name}`")]
    Unresolved { line: usize, name: String },
    #[error("line {line}: duplicate declaration `{name}`")]
    Duplicate { line: usize, name: String },
    #[error("line {line}: {message}")]
    Finiteness { line: usize, message: String },
    #[error("line {line}: field mismatch: {message}")]
    FieldMismatch { line: usize, message: String },
    #[error("line {line}: {message}")]
    Invalid { line: usize, message: String },
    #[error("{} categor{} failed validation", .0.len(), if .0.len() == 1 { "y" } else { "ies" })]
    Validation(Vec<InvalidCategory>),
}

impl LoadError {
    fn from_core(line: usize, e: Error) -> LoadError {
        match e {
            Error::Finiteness(m) => LoadError::Finiteness {
                line,
                message: format!("quiver presentation is not certified finite: {m}"),
            },
            Error::FieldMismatch(a, b) => LoadError::FieldMismatch {
                line,
                message: format!("{a} vs {b}"),
            },
            other => LoadError::Invalid {
                line,
                message: other.to_string(),
            },
        }
    }
}

#[derive(Clone, Debug)]
pub struct CategoryEntry {
    pub line: usize,
    pub category: Arc<FiniteKCategory>,
    /// Present for quiver presentations, used to evaluate arbitrary paths.
    pub presentation: Option<Arc<PathAlgebra>>,
}

#[derive(Clone, Debug)]
pub struct ModuleEntry {
    pub over: String,
    pub module: CatModule,
}

#[derive(Clone, Debug)]
pub struct BimoduleEntry {
    pub u: String,
    pub t: String,
    pub bimodule: Bimodule,
}

#[derive(Clone, Debug)]
pub struct IdealEntry {
    pub category: String,
    pub ideal: TwoSidedIdeal,
}

#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub categories: BTreeMap<String, CategoryEntry>,
    pub modules: BTreeMap<String, ModuleEntry>,
    pub bimodules: BTreeMap<String, BimoduleEntry>,
    pub ideals: BTreeMap<String, IdealEntry>,
    pub tasks: Vec<TaskDecl>,
}

fn coeff(field: FieldSpec, q: &Scalar, line: usize) -> Result<Scalar, LoadError> {
    if !field.admits(q) {
        return Err(LoadError::Invalid {
            line,
            message: format!("coefficient {q} is not defined in {field}"),
        });
    }
    Ok(field.reduce(q))
}

fn build_category(decl: &CategoryDecl, opts: &LoadOptions) -> Result<CategoryEntry, LoadError> {
    let field = opts.field.unwrap_or(decl.field);
    let line = decl.line.0;
    match &decl.body {
        CategoryBody::Quiver { objects, arrows, rels } => {
            let names: Vec<&str> = objects.iter().map(String::as_str).collect();
            let mut q = Quiver::new(&names);
            let obj = |name: &str, line: usize| {
                objects.iter().position(|o| o == name).ok_or(LoadError::Unresolved {
                    line,
                    name: name.to_string(),
                })
            };
            for (l, a) in arrows {
                if q.arrow_index(&a.name).is_some() {
                    return Err(LoadError::Duplicate {
                        line: l.0,
                        name: a.name.clone(),
                    });
                }
                let (s, d) = (obj(&a.src, l.0)?, obj(&a.dst, l.0)?);
                q.arrow(&a.name, s, d);
            }
            let mut relations = Vec::new();
            for (l, r) in rels {
                let mut terms = Vec::new();
                for t in &r.0 {
                    let path = quiver_path(&q, &objects[..], &t.path, l.0)?;
                    terms.push((coeff(field, &t.coeff, l.0)?, path));
                }
                let ends: Vec<(usize, usize)> = terms.iter().map(|(_, p)| (p.src, p.dst)).collect();
                if ends.windows(2).any(|w| w[0] != w[1]) {
                    return Err(LoadError::Invalid {
                        line: l.0,
                        message: "relation mixes paths with different endpoints".into(),
                    });
                }
                relations.push(Relation { terms });
            }
            let pa = PathAlgebra::new(field, q, &relations, opts.path_bound).map_err(|e| LoadError::from_core(line, e))?;
            Ok(CategoryEntry {
                line,
                category: Arc::new(pa.category()),
                presentation: Some(Arc::new(pa)),
            })
        }
        CategoryBody::Table {
            objects,
            homs,
            comps,
            ids,
        } => {
            let mut b = CategoryBuilder::new(field);
            for o in objects {
                b.object(o).map_err(|e| LoadError::from_core(line, e))?;
            }
            for (l, h) in homs {
                let labels: Vec<&str> = h.basis.iter().map(String::as_str).collect();
                b.hom(&h.src, &h.dst, &labels).map_err(|e| LoadError::from_core(l.0, e))?;
            }
            let lincomb = |e: &LinExpr, line: usize| -> Result<LinComb, LoadError> {
                e.0.iter()
                    .map(|t| {
                        if t.path.len() != 1 {
                            return Err(LoadError::Invalid {
                                line,
                                message: "table values must be combinations of basis morphisms".into(),
                            });
                        }
                        Ok((coeff(field, &t.coeff, line)?, t.path[0].clone()))
                    })
                    .collect()
            };
            let mut seen = std::collections::BTreeSet::new();
            for (l, c) in comps {
                if !seen.insert((c.g.clone(), c.f.clone())) {
                    return Err(LoadError::Duplicate {
                        line: l.0,
                        name: format!("{}*{}", c.g, c.f),
                    });
                }
                b.comp(&c.g, &c.f, lincomb(&c.value, l.0)?);
            }
            let mut seen = std::collections::BTreeSet::new();
            for (l, x, v) in ids {
                if !seen.insert(x.clone()) {
                    return Err(LoadError::Duplicate {
                        line: l.0,
                        name: format!("id {x}"),
                    });
                }
                let lc = lincomb(v, l.0)?;
                if lc.len() == 1 && lc[0].0 == field.one() {
                    b.identity_basis(x, &lc[0].1);
                } else {
                    b.identity(x, lc);
                }
            }
            let c = b.build_unchecked().map_err(|e| match e {
                Error::UnknownObject(n) | Error::UnknownMorphism(n) => LoadError::Unresolved { line, name: n },
                e => LoadError::from_core(line, e),
            })?;
            Ok(CategoryEntry {
                line,
                category: Arc::new(c),
                presentation: None,
            })
        }
    }
}

fn quiver_path(
    q: &Quiver,
    objects: &[String],
    names: &[String],
    line: usize,
) -> Result<kcat_core::kcat::quiver::QPath, LoadError> {
    if let [single] = names {
        if let Some(o) = single.strip_prefix("1_") {
            let x = objects.iter().position(|n| n == o).ok_or(LoadError::Unresolved {
                line,
                name: o.to_string(),
            })?;
            return Ok(kcat_core::kcat::quiver::QPath::trivial(x));
        }
    }
    let mut arrows = Vec::new();
    for n in names.iter().rev() {
        if n.starts_with("1_") {
            return Err(LoadError::Invalid {
                line,
                message: "trivial paths cannot be composed".into(),
            });
        }
        arrows.push(q.arrow_index(n).ok_or(LoadError::Unresolved { line, name: n.clone() })?);
    }
    let src = q.arrows[arrows[0]].src;
    q.path(src, &arrows).ok_or(LoadError::Invalid {
        line,
        message: format!("`{}` does not compose", names.join("*")),
    })
}

impl CategoryEntry {
    /// One factor: a basis label, an arrow name or `1_x`.
    fn factor(&self, name: &str, line: usize) -> Result<(usize, usize, Mat), LoadError> {
        let c = &self.category;
        if let Some(o) = name.strip_prefix("1_") {
            let x = c.object_index(o).map_err(|_| LoadError::Unresolved {
                line,
                name: o.to_string(),
            })?;
            return Ok((x, x, c.identity(x).clone()));
        }
        if let Some((x, y, k)) = c.find_morphism(name) {
            return Ok((x, y, c.basis(x, y, k)));
        }
        if let Some(pa) = &self.presentation {
            if let Some(a) = pa.quiver().arrow_index(name) {
                let ar = &pa.quiver().arrows[a];
                let path = pa.quiver().path(ar.src, &[a]).expect("single arrow");
                let v = pa
                    .coordinates(ar.src, ar.dst, &[(c.field().one(), path)])
                    .expect("endpoints match");
                return Ok((ar.src, ar.dst, v));
            }
        }
        Err(LoadError::Unresolved {
            line,
            name: name.to_string(),
        })
    }

    /// Evaluates a right-to-left composite.
    pub fn path(&self, names: &[String], line: usize) -> Result<(usize, usize, Mat), LoadError> {
        let c = &self.category;
        let mut it = names.iter().rev();
        let first = it.next().ok_or(LoadError::Invalid {
            line,
            message: "empty path".into(),
        })?;
        let (x, mut y, mut v) = self.factor(first, line)?;
        for n in it {
            let (y2, z, g) = self.factor(n, line)?;
            if y2 != y {
                return Err(LoadError::Invalid {
                    line,
                    message: format!("`{}` does not compose", names.join("*")),
                });
            }
            v = c.compose(x, y, z, &g, &v);
            y = z;
        }
        Ok((x, y, v))
    }

    /// A homogeneous linear combination; `None` endpoints for `0`.
    pub fn lincomb(&self, e: &LinExpr, line: usize) -> Result<Option<(usize, usize, Mat)>, LoadError> {
        let field = self.category.field();
        let mut acc: Option<(usize, usize, Mat)> = None;
        for t in &e.0 {
            let (x, y, v) = self.path(&t.path, line)?;
            let v = v.scale(&coeff(field, &t.coeff, line)?);
            acc = match acc {
                None => Some((x, y, v)),
                Some((a, b, w)) if (a, b) == (x, y) => Some((a, b, w.add(&v))),
                Some(_) => {
                    return Err(LoadError::Invalid {
                        line,
                        message: "linear combination mixes different Hom spaces".into(),
                    })
                }
            };
        }
        Ok(acc)
    }
}

fn matrix(field: FieldSpec, lit: &MatrixLit, rows: usize, cols: usize, line: usize) -> Result<Mat, LoadError> {
    if lit.is_empty() && rows * cols == 0 {
        return Ok(Mat::zeros(field, rows, cols));
    }
    if lit.len() != rows || lit.iter().any(|r| r.len() != cols) {
        return Err(LoadError::Invalid {
            line,
            message: format!("expected a {rows}×{cols} matrix"),
        });
    }
    let entries = lit
        .iter()
        .flatten()
        .map(|q| coeff(field, q, line))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Mat::from_scalars(field, rows, cols, &entries))
}

/// Extends actions given on a few morphisms to every basis morphism by
/// closing under composition, checking that linear dependencies among the
/// given morphisms are respected.
fn derive_action(
    c: &FiniteKCategory,
    side: Side,
    dims: &[usize],
    given: Vec<(usize, usize, Mat, Mat, usize)>,
) -> Result<Vec<Vec<Vec<Mat>>>, LoadError> {
    let n = c.num_objects();
    let field = c.field();
    let shape = |x: usize, y: usize| match side {
        Side::Left => (dims[y], dims[x]),
        Side::Right => (dims[x], dims[y]),
    };
    let mut pairs: Vec<Vec<Vec<(Mat, Mat)>>> = vec![vec![Vec::new(); n]; n];
    for x in 0..n {
        if c.dim(x, x) > 0 {
            pairs[x][x].push((c.identity(x).clone(), Mat::identity(field, dims[x])));
        }
    }
    for (x, y, v, a, _) in &given {
        let vs: Vec<&Mat> = pairs[*x][*y].iter().map(|p| &p.0).collect();
        if !Mat::hstack(field, c.dim(*x, *y), &vs).contains_columns(v) {
            pairs[*x][*y].push((v.clone(), a.clone()));
        }
    }
    loop {
        let mut grew = false;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (fs, gs) = (pairs[x][y].clone(), pairs[y][z].clone());
                    for (f, af) in &fs {
                        for (g, ag) in &gs {
                            let v = c.compose(x, y, z, g, f);
                            let vs: Vec<&Mat> = pairs[x][z].iter().map(|p| &p.0).collect();
                            let span = Mat::hstack(field, c.dim(x, z), &vs);
                            if span.rank() == c.dim(x, z) || span.contains_columns(&v) {
                                continue;
                            }
                            let a = match side {
                                Side::Left => ag.mul(af),
                                Side::Right => af.mul(ag),
                            };
                            pairs[x][z].push((v, a));
                            grew = true;
                        }
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    let mut act = vec![vec![Vec::new(); n]; n];
    for x in 0..n {
        for y in 0..n {
            let d = c.dim(x, y);
            let vs: Vec<&Mat> = pairs[x][y].iter().map(|p| &p.0).collect();
            let span = Mat::hstack(field, d, &vs);
            for k in 0..d {
                let (r, cc) = shape(x, y);
                let coef = span.solve(&c.basis(x, y, k)).expect("shapes agree");
                let Some(coef) = coef else {
                    if r * cc == 0 {
                        act[x][y].push(Mat::zeros(field, r, cc));
                        continue;
                    }
                    return Err(LoadError::Invalid {
                        line: 0,
                        message: format!("no action given for `{}`", c.hom_labels(x, y)[k]),
                    });
                };
                let mut m = Mat::zeros(field, r, cc);
                for (i, p) in pairs[x][y].iter().enumerate() {
                    m = m.add(&p.1.scale(&coef.get(i, 0)));
                }
                act[x][y].push(m);
            }
        }
    }
    for (x, y, v, a, line) in given {
        let mut m = Mat::zeros(field, a.rows(), a.cols());
        for (k, b) in act[x][y].iter().enumerate() {
            m = m.add(&b.scale(&v.get(k, 0)));
        }
        if m != a {
            return Err(LoadError::Invalid {
                line,
                message: "action contradicts the actions of related morphisms".into(),
            });
        }
    }
    Ok(act)
}

fn build_module(decl: &ModuleDecl, entry: &CategoryEntry) -> Result<CatModule, LoadError> {
    let c = &entry.category;
    let line = decl.line.0;
    let side = match decl.side {
        SideDecl::Left => Side::Left,
        SideDecl::Right => Side::Right,
    };
    let mut dims = vec![0; c.num_objects()];
    for (l, x, d) in &decl.dims {
        let xi = c.object_index(x).map_err(|_| LoadError::Unresolved {
            line: l.0,
            name: x.clone(),
        })?;
        dims[xi] = *d;
    }
    let mut given = Vec::new();
    for (l, a, lit) in &decl.acts {
        let (x, y, v) = entry.factor(a, l.0)?;
        let (r, cc) = match side {
            Side::Left => (dims[y], dims[x]),
            Side::Right => (dims[x], dims[y]),
        };
        given.push((x, y, v, matrix(c.field(), lit, r, cc, l.0)?, l.0));
    }
    let act = derive_action(c, side, &dims, given).map_err(|e| with_line(e, line))?;
    CatModule::new(c.clone(), side, dims, act).map_err(|e| LoadError::from_core(line, e))
}

fn with_line(e: LoadError, line: usize) -> LoadError {
    match e {
        LoadError::Invalid { line: 0, message } => LoadError::Invalid { line, message },
        e => e,
    }
}

fn build_bimodule(decl: &BimoduleDecl, u: &CategoryEntry, t: &CategoryEntry) -> Result<Bimodule, LoadError> {
    let line = decl.line.0;
    let (uc, tc) = (&u.category, &t.category);
    if uc.field() != tc.field() {
        return Err(LoadError::FieldMismatch {
            line,
            message: format!("{} vs {}", uc.field(), tc.field()),
        });
    }
    let field = uc.field();
    let (nu, nt) = (uc.num_objects(), tc.num_objects());
    let mut dims = vec![vec![0; nt]; nu];
    for (l, a, b, d) in &decl.dims {
        let ui = uc.object_index(a).map_err(|_| LoadError::Unresolved {
            line: l.0,
            name: a.clone(),
        })?;
        let ti = tc.object_index(b).map_err(|_| LoadError::Unresolved {
            line: l.0,
            name: b.clone(),
        })?;
        dims[ui][ti] = *d;
    }
    // lact[u1][u2][k][t] from the left U-module M(−, t)
    let mut lact = vec![vec![Vec::new(); nu]; nu];
    for u1 in 0..nu {
        for u2 in 0..nu {
            lact[u1][u2] = vec![Vec::with_capacity(nt); uc.dim(u1, u2)];
        }
    }
    for ti in 0..nt {
        let col: Vec<usize> = (0..nu).map(|x| dims[x][ti]).collect();
        let mut given = Vec::new();
        for (l, a, o, lit) in &decl.lacts {
            if tc.object_index(o).map_err(|_| LoadError::Unresolved { line: l.0, name: o.clone() })? != ti {
                continue;
            }
            let (x, y, v) = u.factor(a, l.0)?;
            given.push((x, y, v, matrix(field, lit, col[y], col[x], l.0)?, l.0));
        }
        let act = derive_action(uc, Side::Left, &col, given).map_err(|e| with_line(e, line))?;
        for u1 in 0..nu {
            for u2 in 0..nu {
                for (k, m) in act[u1][u2].iter().enumerate() {
                    lact[u1][u2][k].push(m.clone());
                }
            }
        }
    }
    let mut ract = vec![vec![Vec::new(); nt]; nt];
    for t1 in 0..nt {
        for t2 in 0..nt {
            ract[t1][t2] = vec![Vec::with_capacity(nu); tc.dim(t1, t2)];
        }
    }
    for ui in 0..nu {
        let row = dims[ui].clone();
        let mut given = Vec::new();
        for (l, a, o, lit) in &decl.racts {
            if uc.object_index(o).map_err(|_| LoadError::Unresolved { line: l.0, name: o.clone() })? != ui {
                continue;
            }
            let (x, y, v) = t.factor(a, l.0)?;
            given.push((x, y, v, matrix(field, lit, row[x], row[y], l.0)?, l.0));
        }
        let act = derive_action(tc, Side::Right, &row, given).map_err(|e| with_line(e, line))?;
        for t1 in 0..nt {
            for t2 in 0..nt {
                for (k, m) in act[t1][t2].iter().enumerate() {
                    ract[t1][t2][k].push(m.clone());
                }
            }
        }
    }
    Bimodule::new((**uc).clone(), (**tc).clone(), dims, lact, ract).map_err(|e| LoadError::from_core(line, e))
}

fn decl_name(d: &Decl) -> Option<(&str, usize)> {
    match d {
        Decl::Category(c) => Some((&c.name, c.line.0)),
        Decl::Module(m) => Some((&m.name, m.line.0)),
        Decl::Bimodule(b) => Some((&b.name, b.line.0)),
        Decl::Ideal(i) => Some((&i.name, i.line.0)),
        Decl::Task(_) => None,
    }
}

/// Builds every declaration. Categories are validated before anything that
/// depends on them is built; all invalid categories are reported together.
pub fn load(file: &WorkspaceFile, opts: &LoadOptions) -> Result<Workspace, LoadError> {
    let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
    for d in &file.decls {
        if let Some((name, line)) = decl_name(d) {
            if seen.insert(name, line).is_some() {
                return Err(LoadError::Duplicate {
                    line,
                    name: name.to_string(),
                });
            }
        }
    }
    let mut ws = Workspace::default();
    let mut invalid = Vec::new();
    for d in &file.decls {
        if let Decl::Category(c) = d {
            let entry = build_category(c, opts)?;
            let report = entry.category.validate();
            if !report.is_valid() {
                invalid.push(InvalidCategory {
                    name: c.name.clone(),
                    line: c.line.0,
                    violations: report.violations.iter().map(ToString::to_string).collect(),
                });
            }
            ws.categories.insert(c.name.clone(), entry);
        }
    }
    if !invalid.is_empty() {
        return Err(LoadError::Validation(invalid));
    }
    let cat = |name: &str, line: usize| {
        ws.categories.get(name).ok_or(LoadError::Unresolved {
            line,
            name: name.to_string(),
        })
    };
    let mut modules = BTreeMap::new();
    let mut bimodules = BTreeMap::new();
    let mut ideals = BTreeMap::new();
    for d in &file.decls {
        match d {
            Decl::Module(m) => {
                let entry = cat(&m.over, m.line.0)?;
                let module = build_module(m, entry)?;
                modules.insert(
                    m.name.clone(),
                    ModuleEntry {
                        over: m.over.clone(),
                        module,
                    },
                );
            }
            Decl::Bimodule(b) => {
                let (u, t) = (cat(&b.u, b.line.0)?, cat(&b.t, b.line.0)?);
                let bimodule = build_bimodule(b, u, t)?;
                bimodules.insert(
                    b.name.clone(),
                    BimoduleEntry {
                        u: b.u.clone(),
                        t: b.t.clone(),
                        bimodule,
                    },
                );
            }
            Decl::Ideal(i) => {
                let entry = cat(&i.category, i.line.0)?;
                let mut gens = Vec::new();
                for g in &i.gens {
                    if let Some(v) = entry.lincomb(g, i.line.0)? {
                        gens.push(v);
                    }
                }
                let ideal = ideal_from_generators(entry.category.clone(), &gens)
                    .map_err(|e| LoadError::from_core(i.line.0, e))?;
                ideals.insert(
                    i.name.clone(),
                    IdealEntry {
                        category: i.category.clone(),
                        ideal,
                    },
                );
            }
            _ => {}
        }
    }
    ws.modules = modules;
    ws.bimodules = bimodules;
    ws.ideals = ideals;
    for t in file.tasks() {
        let known = match t.kind {
            TaskKind::Cohomology | TaskKind::Validate => ws.categories.contains_key(&t.target),
            TaskKind::IdealCheck | TaskKind::Les => ws.ideals.contains_key(&t.target),
            TaskKind::Cmp => ws.bimodules.contains_key(&t.target),
            TaskKind::Happel => ws.modules.contains_key(&t.target),
        };
        if !known {
            return Err(LoadError::Unresolved {
                line: t.line.0,
                name: t.target.clone(),
            });
        }
        ws.tasks.push(t.clone());
    }
    Ok(ws)
}
