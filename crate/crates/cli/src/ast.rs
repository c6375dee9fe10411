//! Syntax tree of a `.kcat` workspace and its printer.

use std::fmt;

use kcat_core::exactla::scalar_to_string;
use kcat_core::{FieldSpec, Scalar};
use num_traits::{One, Signed};

/// Source line of a declaration. Ignored by equality so that printed and
/// reparsed trees compare equal.
#[derive(Clone, Copy, Debug, Default)]
pub struct Line(pub usize);

impl PartialEq for Line {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Line {}

/// `c · p` with `p` a composite written right to left (`b*a` is `a` then `b`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Scalar,
    pub path: Vec<String>,
}

/// A linear combination; empty means `0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinExpr(pub Vec<Term>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: String,
    pub dst: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomDecl {
    pub src: String,
    pub dst: String,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompDecl {
    pub g: String,
    pub f: String,
    pub value: LinExpr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CategoryBody {
    Quiver {
        objects: Vec<String>,
        arrows: Vec<(Line, Arrow)>,
        rels: Vec<(Line, LinExpr)>,
    },
    Table {
        objects: Vec<String>,
        homs: Vec<(Line, HomDecl)>,
        comps: Vec<(Line, CompDecl)>,
        ids: Vec<(Line, String, LinExpr)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryDecl {
    pub line: Line,
    pub name: String,
    pub field: FieldSpec,
    pub body: CategoryBody,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SideDecl {
    Left,
    Right,
}

/// Rows of a matrix literal.
pub type MatrixLit = Vec<Vec<Scalar>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDecl {
    pub line: Line,
    pub name: String,
    pub over: String,
    pub side: SideDecl,
    pub dims: Vec<(Line, String, usize)>,
    pub acts: Vec<(Line, String, MatrixLit)>,
}

/// `lact f t = …` acts by `f` in `U` at the `T`-object `t`; `ract` dually.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleDecl {
    pub line: Line,
    pub name: String,
    pub u: String,
    pub t: String,
    pub dims: Vec<(Line, String, String, usize)>,
    pub lacts: Vec<(Line, String, String, MatrixLit)>,
    pub racts: Vec<(Line, String, String, MatrixLit)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealDecl {
    pub line: Line,
    pub name: String,
    pub category: String,
    pub gens: Vec<LinExpr>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TaskKind {
    Cohomology,
    IdealCheck,
    Les,
    Cmp,
    Happel,
    Validate,
}

impl TaskKind {
    pub const ALL: [TaskKind; 6] = [
        TaskKind::Cohomology,
        TaskKind::IdealCheck,
        TaskKind::Les,
        TaskKind::Cmp,
        TaskKind::Happel,
        TaskKind::Validate,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            TaskKind::Cohomology => "cohomology",
            TaskKind::IdealCheck => "ideal-check",
            TaskKind::Les => "les",
            TaskKind::Cmp => "cmp",
            TaskKind::Happel => "happel",
            TaskKind::Validate => "validate",
        }
    }

    pub fn from_keyword(s: &str) -> Option<TaskKind> {
        TaskKind::ALL.into_iter().find(|k| k.keyword() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaskDecl {
    pub line: Line,
    pub kind: TaskKind,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Category(CategoryDecl),
    Module(ModuleDecl),
    Bimodule(BimoduleDecl),
    Ideal(IdealDecl),
    Task(TaskDecl),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WorkspaceFile {
    pub decls: Vec<Decl>,
}

impl WorkspaceFile {
    pub fn tasks(&self) -> impl Iterator<Item = &TaskDecl> {
        self.decls.iter().filter_map(|d| match d {
            Decl::Task(t) => Some(t),
            _ => None,
        })
    }
}

impl fmt::Display for LinExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.0.iter().enumerate() {
            let neg = t.coeff.is_negative();
            let mag = t.coeff.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !mag.is_one() {
                write!(f, "{}*", scalar_to_string(&mag))?;
            }
            write!(f, "{}", t.path.join("*"))?;
        }
        Ok(())
    }
}

fn write_matrix(f: &mut fmt::Formatter<'_>, m: &MatrixLit) -> fmt::Result {
    write!(f, "[")?;
    for (i, row) in m.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        let entries: Vec<String> = row.iter().map(scalar_to_string).collect();
        write!(f, "[{}]", entries.join(", "))?;
    }
    write!(f, "]")
}

fn field_keyword(field: FieldSpec) -> String {
    field.to_string()
}

impl fmt::Display for WorkspaceFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.decls.iter().enumerate() {
            if i > 0 && !matches!(d, Decl::Task(_)) {
                writeln!(f)?;
            }
            match d {
                Decl::Category(c) => {
                    writeln!(f, "category {} over {}", c.name, field_keyword(c.field))?;
                    match &c.body {
                        CategoryBody::Quiver { objects, arrows, rels } => {
                            writeln!(f, "  quiver")?;
                            if !objects.is_empty() {
                                writeln!(f, "  object {}", objects.join(" "))?;
                            }
                            for (_, a) in arrows {
                                writeln!(f, "  arrow {}: {} -> {}", a.name, a.src, a.dst)?;
                            }
                            for (_, r) in rels {
                                writeln!(f, "  rel {r} = 0")?;
                            }
                        }
                        CategoryBody::Table {
                            objects,
                            homs,
                            comps,
                            ids,
                        } => {
                            writeln!(f, "  table")?;
                            if !objects.is_empty() {
                                writeln!(f, "  object {}", objects.join(" "))?;
                            }
                            for (_, h) in homs {
                                writeln!(f, "  hom {} {}: {}", h.src, h.dst, h.basis.join(" "))?;
                            }
                            for (_, c) in comps {
                                writeln!(f, "  comp {}*{} = {}", c.g, c.f, c.value)?;
                            }
                            for (_, x, v) in ids {
                                writeln!(f, "  id {x} = {v}")?;
                            }
                        }
                    }
                }
                Decl::Module(m) => {
                    let side = match m.side {
                        SideDecl::Left => "left",
                        SideDecl::Right => "right",
                    };
                    writeln!(f, "module {} over {} {}", m.name, m.over, side)?;
                    for (_, x, d) in &m.dims {
                        writeln!(f, "  dim {x} = {d}")?;
                    }
                    for (_, a, mat) in &m.acts {
                        write!(f, "  act {a} = ")?;
                        write_matrix(f, mat)?;
                        writeln!(f)?;
                    }
                }
                Decl::Bimodule(b) => {
                    writeln!(f, "bimodule {} over ({}, {})", b.name, b.u, b.t)?;
                    for (_, u, t, d) in &b.dims {
                        writeln!(f, "  dim {u} {t} = {d}")?;
                    }
                    for (_, a, t, mat) in &b.lacts {
                        write!(f, "  lact {a} {t} = ")?;
                        write_matrix(f, mat)?;
                        writeln!(f)?;
                    }
                    for (_, a, u, mat) in &b.racts {
                        write!(f, "  ract {a} {u} = ")?;
                        write_matrix(f, mat)?;
                        writeln!(f)?;
                    }
                }
                Decl::Ideal(i) => {
                    let gens: Vec<String> = i.gens.iter().map(ToString::to_string).collect();
                    writeln!(f, "ideal {} in {} gens: {}", i.name, i.category, gens.join(", "))?;
                }
                Decl::Task(t) => {
                    writeln!(f, "task {} {}", t.kind.keyword(), t.target)?;
                }
            }
        }
        Ok(())
    }
}
