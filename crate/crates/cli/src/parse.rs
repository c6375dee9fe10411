//! Line-oriented parser for `.kcat` workspaces.

use kcat_core::{FieldSpec, Scalar};
use num_bigint::BigInt;
use thiserror::Error;

use crate::ast::*;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Sym(char),
    To,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
}

const SYMBOLS: &str = ":=*+-,[]()/";

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\'' || c == '.' || !c.is_ascii()
}

fn lex(line_no: usize, text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push(Token { tok: Tok::To, col });
            i += 2;
            continue;
        }
        if c == '1' && chars.get(i + 1) == Some(&'_') {
            // trivial path `1_x`; the object name may be a symbol such as `*`
            let start = i;
            i += 2;
            if chars.get(i) == Some(&'*') {
                i += 1;
            } else {
                while i < chars.len() && is_word_char(chars[i]) {
                    i += 1;
                }
            }
            out.push(Token {
                tok: Tok::Word(chars[start..i].iter().collect()),
                col,
            });
            continue;
        }
        if SYMBOLS.contains(c) {
            out.push(Token { tok: Tok::Sym(c), col });
            i += 1;
            continue;
        }
        if is_word_char(c) {
            let start = i;
            while i < chars.len() && is_word_char(chars[i]) {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Word(chars[start..i].iter().collect()),
                col,
            });
            continue;
        }
        return Err(ParseError {
            line: line_no,
            col,
            message: format!("unexpected character `{c}`"),
        });
    }
    Ok(out)
}

fn is_number(w: &str) -> bool {
    !w.is_empty() && w.chars().all(|c| c.is_ascii_digit())
}

struct Cursor<'a> {
    line: usize,
    toks: &'a [Token],
    pos: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            line: self.line,
            col: self.col(),
            message: message.into(),
        })
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn bump(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos).map(|t| &t.tok);
        self.pos += 1;
        t
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn expect_to(&mut self) -> Result<(), ParseError> {
        if self.peek() == Some(&Tok::To) {
            self.pos += 1;
            Ok(())
        } else {
            self.err("expected `->`")
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Word(w)) if w == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err(format!("expected `{kw}`")),
        }
    }

    /// A declaration or morphism name: a word that does not start with a digit.
    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Word(w)) if !w.starts_with(|c: char| c.is_ascii_digit()) => {
                let w = w.clone();
                self.pos += 1;
                Ok(w)
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    /// An object name: any word, or one of the symbols `*`.
    fn object(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Word(w)) if !w.starts_with("1_") => {
                let w = w.clone();
                self.pos += 1;
                Ok(w)
            }
            Some(Tok::Sym('*')) => {
                self.pos += 1;
                Ok("*".into())
            }
            _ => self.err("expected an object name"),
        }
    }

    fn natural(&mut self) -> Result<usize, ParseError> {
        match self.peek() {
            Some(Tok::Word(w)) if is_number(w) => {
                let v = w.parse().or_else(|_| self.err("number too large"))?;
                self.pos += 1;
                Ok(v)
            }
            _ => self.err("expected a natural number"),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            self.err("unexpected trailing input")
        }
    }

    /// `n` or `n/d`.
    fn unsigned_scalar(&mut self) -> Result<Scalar, ParseError> {
        let num = match self.peek() {
            Some(Tok::Word(w)) if is_number(w) => w.parse::<BigInt>().expect("digits"),
            _ => return self.err("expected a number"),
        };
        self.pos += 1;
        if self.eat_sym('/') {
            let den = match self.peek() {
                Some(Tok::Word(w)) if is_number(w) => w.parse::<BigInt>().expect("digits"),
                _ => return self.err("expected a denominator"),
            };
            if den == BigInt::from(0) {
                return self.err("zero denominator");
            }
            self.pos += 1;
            Ok(Scalar::new(num, den))
        } else {
            Ok(Scalar::from_integer(num))
        }
    }

    fn signed_scalar(&mut self) -> Result<Scalar, ParseError> {
        let neg = self.eat_sym('-');
        let v = self.unsigned_scalar()?;
        Ok(if neg { -v } else { v })
    }

    fn path(&mut self) -> Result<Vec<String>, ParseError> {
        let mut out = vec![self.path_factor()?];
        while self.eat_sym('*') {
            out.push(self.path_factor()?);
        }
        Ok(out)
    }

    fn path_factor(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Word(w)) if w.starts_with("1_") && w.len() > 2 => {
                let w = w.clone();
                self.pos += 1;
                Ok(w)
            }
            _ => self.ident("a morphism name"),
        }
    }

    /// Terms up to one of the stop symbols or the end of the line.
    fn lincomb(&mut self, stops: &[char]) -> Result<LinExpr, ParseError> {
        let stopped = |c: &Cursor| match c.peek() {
            None => true,
            Some(Tok::Sym(s)) => stops.contains(s),
            _ => false,
        };
        if let Some(Tok::Word(w)) = self.peek() {
            if w == "0" {
                let save = self.pos;
                self.pos += 1;
                if stopped(self) {
                    return Ok(LinExpr::default());
                }
                self.pos = save;
            }
        }
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let mut neg = false;
            if self.eat_sym('-') {
                neg = true;
            } else if !first && !self.eat_sym('+') {
                return self.err("expected `+` or `-`");
            } else if first {
                self.eat_sym('+');
            }
            let mut coeff = Scalar::from_integer(1.into());
            if matches!(self.peek(), Some(Tok::Word(w)) if is_number(w)) {
                coeff = self.unsigned_scalar()?;
                self.eat_sym('*');
            }
            let path = self.path()?;
            terms.push(Term {
                coeff: if neg { -coeff } else { coeff },
                path,
            });
            first = false;
            if stopped(self) {
                break;
            }
        }
        Ok(LinExpr(terms))
    }

    fn matrix(&mut self) -> Result<MatrixLit, ParseError> {
        self.expect_sym('[')?;
        let mut rows = Vec::new();
        if self.eat_sym(']') {
            return Ok(rows);
        }
        loop {
            self.expect_sym('[')?;
            let mut row = Vec::new();
            if !self.eat_sym(']') {
                loop {
                    row.push(self.signed_scalar()?);
                    if self.eat_sym(']') {
                        break;
                    }
                    self.expect_sym(',')?;
                }
            }
            rows.push(row);
            if self.eat_sym(']') {
                break;
            }
            self.expect_sym(',')?;
        }
        Ok(rows)
    }

    fn field(&mut self) -> Result<FieldSpec, ParseError> {
        let col = self.col();
        let w = self.ident("`Q` or `GF(p)`")?;
        match w.as_str() {
            "Q" => Ok(FieldSpec::Rationals),
            "GF" => {
                self.expect_sym('(')?;
                let pcol = self.col();
                let p = self.natural()?;
                self.expect_sym(')')?;
                let p = u32::try_from(p).ok().and_then(|p| FieldSpec::prime(p).ok());
                p.ok_or(ParseError {
                    line: self.line,
                    col: pcol,
                    message: "characteristic must be a prime below 2^31".into(),
                })
            }
            _ => Err(ParseError {
                line: self.line,
                col,
                message: format!("unknown field `{w}`"),
            }),
        }
    }
}

enum Open {
    Category {
        line: Line,
        name: String,
        field: FieldSpec,
        body: Option<CategoryBody>,
    },
    Module(ModuleDecl),
    Bimodule(BimoduleDecl),
}

fn close(open: Option<Open>, out: &mut Vec<Decl>, line: usize) -> Result<(), ParseError> {
    match open {
        None => {}
        Some(Open::Category { line: l, name, field, body }) => {
            let body = body.ok_or(ParseError {
                line,
                col: 1,
                message: format!("category `{name}` has no `quiver` or `table` block"),
            })?;
            out.push(Decl::Category(CategoryDecl {
                line: l,
                name,
                field,
                body,
            }));
        }
        Some(Open::Module(m)) => out.push(Decl::Module(m)),
        Some(Open::Bimodule(b)) => out.push(Decl::Bimodule(b)),
    }
    Ok(())
}

fn push_object(objects: &mut Vec<String>, name: &str) {
    if !objects.iter().any(|o| o == name) {
        objects.push(name.to_string());
    }
}

/// Parses a workspace. Every error carries a line and column.
pub fn parse(source: &str) -> Result<WorkspaceFile, ParseError> {
    let mut decls = Vec::new();
    let mut open: Option<Open> = None;
    let mut last_line = 0;
    for (idx, text) in source.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let toks = lex(line, text)?;
        if toks.is_empty() {
            continue;
        }
        let mut c = Cursor {
            line,
            toks: &toks,
            pos: 0,
            end_col: text.chars().count() + 1,
        };
        let head = match c.peek() {
            Some(Tok::Word(w)) => w.clone(),
            _ => return c.err("expected a keyword"),
        };
        let head_col = c.col();
        c.bump();
        match head.as_str() {
            "category" => {
                close(open.take(), &mut decls, line)?;
                let name = c.ident("a category name")?;
                c.keyword("over")?;
                let field = c.field()?;
                c.finish()?;
                open = Some(Open::Category {
                    line: Line(line),
                    name,
                    field,
                    body: None,
                });
            }
            "module" => {
                close(open.take(), &mut decls, line)?;
                let name = c.ident("a module name")?;
                c.keyword("over")?;
                let over = c.ident("a category name")?;
                let side = match c.peek() {
                    Some(Tok::Word(w)) if w == "left" => SideDecl::Left,
                    Some(Tok::Word(w)) if w == "right" => SideDecl::Right,
                    _ => return c.err("expected `left` or `right`"),
                };
                c.bump();
                c.finish()?;
                open = Some(Open::Module(ModuleDecl {
                    line: Line(line),
                    name,
                    over,
                    side,
                    dims: Vec::new(),
                    acts: Vec::new(),
                }));
            }
            "bimodule" => {
                close(open.take(), &mut decls, line)?;
                let name = c.ident("a bimodule name")?;
                c.keyword("over")?;
                c.expect_sym('(')?;
                let u = c.ident("a category name")?;
                c.expect_sym(',')?;
                let t = c.ident("a category name")?;
                c.expect_sym(')')?;
                c.finish()?;
                open = Some(Open::Bimodule(BimoduleDecl {
                    line: Line(line),
                    name,
                    u,
                    t,
                    dims: Vec::new(),
                    lacts: Vec::new(),
                    racts: Vec::new(),
                }));
            }
            "ideal" => {
                close(open.take(), &mut decls, line)?;
                let name = c.ident("an ideal name")?;
                c.keyword("in")?;
                let category = c.ident("a category name")?;
                c.keyword("gens")?;
                c.expect_sym(':')?;
                let mut gens = Vec::new();
                while !c.at_end() {
                    gens.push(c.lincomb(&[','])?);
                    if !c.at_end() {
                        c.expect_sym(',')?;
                        if c.at_end() {
                            return c.err("expected a generator after `,`");
                        }
                    }
                }
                decls.push(Decl::Ideal(IdealDecl {
                    line: Line(line),
                    name,
                    category,
                    gens,
                }));
            }
            "task" => {
                close(open.take(), &mut decls, line)?;
                let kcol = c.col();
                let kind = match c.bump() {
                    Some(Tok::Word(w)) => w.clone(),
                    _ => return c.err("expected a task kind"),
                };
                let mut kind_word = kind;
                // `ideal-check` lexes as `ideal`, `-`, `check`
                if kind_word == "ideal" && c.eat_sym('-') {
                    c.keyword("check")?;
                    kind_word = "ideal-check".into();
                }
                let kind = TaskKind::from_keyword(&kind_word).ok_or(ParseError {
                    line,
                    col: kcol,
                    message: format!("unknown task kind `{kind_word}`"),
                })?;
                let target = c.ident("a target name")?;
                c.finish()?;
                decls.push(Decl::Task(TaskDecl {
                    line: Line(line),
                    kind,
                    target,
                }));
            }
            kw => {
                block_line(&mut open, kw, head_col, &mut c)?;
            }
        }
    }
    close(open, &mut decls, last_line + 1)?;
    Ok(WorkspaceFile { decls })
}

fn block_line(open: &mut Option<Open>, kw: &str, kw_col: usize, c: &mut Cursor) -> Result<(), ParseError> {
    let line = Line(c.line);
    let misplaced = |message: String| {
        Err(ParseError {
            line: c.line,
            col: kw_col,
            message,
        })
    };
    match open {
        Some(Open::Category { body, .. }) => match kw {
            "quiver" | "table" => {
                if body.is_some() {
                    return c.err("category body already started");
                }
                c.finish()?;
                *body = Some(if kw == "quiver" {
                    CategoryBody::Quiver {
                        objects: Vec::new(),
                        arrows: Vec::new(),
                        rels: Vec::new(),
                    }
                } else {
                    CategoryBody::Table {
                        objects: Vec::new(),
                        homs: Vec::new(),
                        comps: Vec::new(),
                        ids: Vec::new(),
                    }
                });
                Ok(())
            }
            _ => match body {
                None => misplaced("expected `quiver` or `table`".into()),
                Some(CategoryBody::Quiver { objects, arrows, rels }) => match kw {
                    "object" => {
                        if c.at_end() {
                            return c.err("expected an object name");
                        }
                        while !c.at_end() {
                            let col = c.col();
                            let o = c.object()?;
                            if objects.contains(&o) {
                                return Err(ParseError {
                                    line: c.line,
                                    col,
                                    message: format!("duplicate object `{o}`"),
                                });
                            }
                            objects.push(o);
                        }
                        Ok(())
                    }
                    "arrow" => {
                        let name = c.ident("an arrow name")?;
                        c.expect_sym(':')?;
                        let src = c.object()?;
                        c.expect_to()?;
                        let dst = c.object()?;
                        c.finish()?;
                        arrows.push((line, Arrow { name, src, dst }));
                        Ok(())
                    }
                    "rel" => {
                        let e = c.lincomb(&['='])?;
                        c.expect_sym('=')?;
                        match c.bump() {
                            Some(Tok::Word(w)) if w == "0" => {}
                            _ => {
                                c.pos -= 1;
                                return c.err("relations must have the form `… = 0`");
                            }
                        }
                        c.finish()?;
                        rels.push((line, e));
                        Ok(())
                    }
                    _ => misplaced(format!("`{kw}` is not allowed in a quiver block")),
                },
                Some(CategoryBody::Table {
                    objects,
                    homs,
                    comps,
                    ids,
                }) => match kw {
                    "object" => {
                        if c.at_end() {
                            return c.err("expected an object name");
                        }
                        while !c.at_end() {
                            let o = c.object()?;
                            push_object(objects, &o);
                        }
                        Ok(())
                    }
                    "hom" => {
                        let src = c.object()?;
                        let dst = c.object()?;
                        c.expect_sym(':')?;
                        let mut basis = Vec::new();
                        while !c.at_end() {
                            basis.push(c.ident("a basis name")?);
                        }
                        push_object(objects, &src);
                        push_object(objects, &dst);
                        homs.push((line, HomDecl { src, dst, basis }));
                        Ok(())
                    }
                    "comp" => {
                        let g = c.ident("a morphism name")?;
                        c.expect_sym('*')?;
                        let f = c.ident("a morphism name")?;
                        c.expect_sym('=')?;
                        let value = c.lincomb(&[])?;
                        comps.push((line, CompDecl { g, f, value }));
                        Ok(())
                    }
                    "id" => {
                        let x = c.object()?;
                        c.expect_sym('=')?;
                        let value = c.lincomb(&[])?;
                        ids.push((line, x, value));
                        Ok(())
                    }
                    _ => misplaced(format!("`{kw}` is not allowed in a table block")),
                },
            },
        },
        Some(Open::Module(m)) => match kw {
            "dim" => {
                let x = c.object()?;
                c.expect_sym('=')?;
                let d = c.natural()?;
                c.finish()?;
                m.dims.push((line, x, d));
                Ok(())
            }
            "act" => {
                let a = c.path_factor()?;
                c.expect_sym('=')?;
                let mat = c.matrix()?;
                c.finish()?;
                m.acts.push((line, a, mat));
                Ok(())
            }
            _ => misplaced(format!("`{kw}` is not allowed in a module block")),
        },
        Some(Open::Bimodule(b)) => match kw {
            "dim" => {
                let u = c.object()?;
                let t = c.object()?;
                c.expect_sym('=')?;
                let d = c.natural()?;
                c.finish()?;
                b.dims.push((line, u, t, d));
                Ok(())
            }
            "lact" | "ract" => {
                let a = c.path_factor()?;
                let o = c.object()?;
                c.expect_sym('=')?;
                let mat = c.matrix()?;
                c.finish()?;
                if kw == "lact" {
                    b.lacts.push((line, a, o, mat));
                } else {
                    b.racts.push((line, a, o, mat));
                }
                Ok(())
            }
            _ => misplaced(format!("`{kw}` is not allowed in a bimodule block")),
        },
        None => misplaced(format!("unknown keyword `{kw}`")),
    }
}
