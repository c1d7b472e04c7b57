//! A small language for string-diagram expressions.
//!
//! `g . f` is composition (apply `f` first), `f * g` is the monoidal product,
//! `.` binds looser than `*`. Atoms are identifiers looked up in an
//! [`Environment`]; `id(X)`, `c(X,Y)` and `cinv(X,Y)` are built in. Object
//! expressions are names, `I`, products `X*Y` and powers `X^n`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::Field;
use crate::graded::{BraidedContext, GradedError, Morphism, Obj};
use crate::linalg::EntryDiff;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("syntax error at col {col}: {msg}")]
    Syntax { col: usize, msg: String },
    #[error("syntax error on line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("unknown morphism {0:?}")]
    UnknownMorphism(String),
    #[error("unknown object {0:?}")]
    UnknownObject(String),
    #[error("type error: {0}")]
    Type(String),
    #[error("boundary mismatch in {0}")]
    Boundary(String),
    #[error(transparent)]
    Graded(#[from] GradedError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ObjExpr {
    Unit,
    Named(String),
    Tensor(Vec<ObjExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Atom(String),
    Id(ObjExpr),
    Braid(ObjExpr, ObjExpr),
    BraidInv(ObjExpr, ObjExpr),
    Tensor(Vec<Expr>),
    /// Written order; the last factor is applied first.
    Compose(Vec<Expr>),
}

// ---------------------------------------------------------------- lexer

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(usize),
    LParen,
    RParen,
    Comma,
    Dot,
    Star,
    Caret,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, DslError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        let col = i + 1;
        if ch.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match ch {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((Tok::Num(s.parse().map_err(|_| DslError::Syntax { col, msg: "bad number".into() })?), col));
                continue;
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), col));
                continue;
            }
            other => {
                return Err(DslError::Syntax { col, msg: format!("unexpected character {other:?}") });
            }
        };
        out.push((tok, col));
        i += 1;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, DslError> {
        Err(DslError::Syntax { col: self.col(), msg: msg.into() })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), DslError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<Expr, DslError> {
        let mut parts = vec![self.term()?];
        while *self.peek() == Tok::Dot {
            self.bump();
            parts.push(self.term()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Expr::Compose(parts) })
    }

    fn term(&mut self) -> Result<Expr, DslError> {
        let mut parts = vec![self.factor()?];
        while *self.peek() == Tok::Star {
            self.bump();
            parts.push(self.factor()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Expr::Tensor(parts) })
    }

    fn factor(&mut self) -> Result<Expr, DslError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "id" => {
                        self.expect(Tok::LParen, "'(' after id")?;
                        let x = self.obj()?;
                        self.expect(Tok::RParen, "')'")?;
                        Ok(Expr::Id(x))
                    }
                    "c" | "cinv" if *self.peek() == Tok::LParen => {
                        self.bump();
                        let x = self.obj()?;
                        self.expect(Tok::Comma, "','")?;
                        let y = self.obj()?;
                        self.expect(Tok::RParen, "')'")?;
                        Ok(if name == "c" { Expr::Braid(x, y) } else { Expr::BraidInv(x, y) })
                    }
                    _ => Ok(Expr::Atom(name)),
                }
            }
            Tok::End => self.err("unexpected end of input"),
            other => self.err(format!("unexpected token {other:?}")),
        }
    }

    fn obj(&mut self) -> Result<ObjExpr, DslError> {
        let mut parts = Vec::new();
        self.obj_factor(&mut parts)?;
        while *self.peek() == Tok::Star {
            self.bump();
            self.obj_factor(&mut parts)?;
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { ObjExpr::Tensor(parts) })
    }

    fn obj_factor(&mut self, parts: &mut Vec<ObjExpr>) -> Result<(), DslError> {
        let base = match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let o = self.obj()?;
                self.expect(Tok::RParen, "')'")?;
                o
            }
            Tok::Ident(name) => {
                self.bump();
                if name == "I" {
                    ObjExpr::Unit
                } else {
                    ObjExpr::Named(name)
                }
            }
            _ => return self.err("expected an object"),
        };
        if *self.peek() == Tok::Caret {
            self.bump();
            match self.bump() {
                Tok::Num(n) if n >= 1 => parts.extend(std::iter::repeat(base).take(n)),
                Tok::Num(_) => parts.push(ObjExpr::Unit),
                _ => return self.err("expected exponent"),
            }
        } else {
            parts.push(base);
        }
        Ok(())
    }
}

/// Parses a diagram expression.
pub fn parse(text: &str) -> Result<Expr, DslError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err("trailing input");
    }
    Ok(e)
}

pub fn parse_obj(text: &str) -> Result<ObjExpr, DslError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let o = p.obj()?;
    if *p.peek() != Tok::End {
        return p.err("trailing input");
    }
    Ok(o)
}

// ---------------------------------------------------------------- printer

impl fmt::Display for ObjExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjExpr::Unit => write!(f, "I"),
            ObjExpr::Named(n) => write!(f, "{n}"),
            ObjExpr::Tensor(xs) => {
                for (k, x) in xs.iter().enumerate() {
                    if k > 0 {
                        write!(f, "*")?;
                    }
                    match x {
                        ObjExpr::Tensor(_) => write!(f, "({x})")?,
                        _ => write!(f, "{x}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Atom(n) => write!(f, "{n}"),
            Expr::Id(x) => write!(f, "id({x})"),
            Expr::Braid(x, y) => write!(f, "c({x},{y})"),
            Expr::BraidInv(x, y) => write!(f, "cinv({x},{y})"),
            Expr::Tensor(es) => {
                for (k, e) in es.iter().enumerate() {
                    if k > 0 {
                        write!(f, " * ")?;
                    }
                    match e {
                        Expr::Tensor(_) | Expr::Compose(_) => write!(f, "({e})")?,
                        _ => write!(f, "{e}")?,
                    }
                }
                Ok(())
            }
            Expr::Compose(es) => {
                for (k, e) in es.iter().enumerate() {
                    if k > 0 {
                        write!(f, " . ")?;
                    }
                    match e {
                        Expr::Compose(_) => write!(f, "({e})")?,
                        _ => write!(f, "{e}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

// ---------------------------------------------------------------- dual frames

/// Where an expression is read: in the base category, with reversed monoidal
/// product, with inverse braiding, or both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Frame {
    pub rev: bool,
    pub bar: bool,
}

impl Frame {
    pub const BASE: Frame = Frame { rev: false, bar: false };
    pub const REV: Frame = Frame { rev: true, bar: false };
    pub const BAR: Frame = Frame { rev: false, bar: true };
    pub const BAR_REV: Frame = Frame { rev: true, bar: true };

    pub fn then(self, other: Frame) -> Frame {
        Frame { rev: self.rev ^ other.rev, bar: self.bar ^ other.bar }
    }

    pub fn name(&self) -> &'static str {
        match (self.rev, self.bar) {
            (false, false) => "C",
            (true, false) => "C^rev",
            (false, true) => "Cbar",
            (true, true) => "Cbar^rev",
        }
    }
}

impl ObjExpr {
    fn reversed(&self) -> ObjExpr {
        match self {
            ObjExpr::Tensor(xs) => ObjExpr::Tensor(xs.iter().rev().map(|x| x.reversed()).collect()),
            other => other.clone(),
        }
    }
}

impl Expr {
    /// Translates an expression read in `frame` into the base category.
    pub fn in_frame(&self, frame: Frame) -> Expr {
        match self {
            Expr::Atom(_) => self.clone(),
            Expr::Id(x) => Expr::Id(if frame.rev { x.reversed() } else { x.clone() }),
            Expr::Braid(x, y) | Expr::BraidInv(x, y) => {
                let inverse = matches!(self, Expr::BraidInv(..)) ^ frame.bar;
                let (a, b) = if frame.rev { (y.reversed(), x.reversed()) } else { (x.clone(), y.clone()) };
                if inverse {
                    Expr::BraidInv(a, b)
                } else {
                    Expr::Braid(a, b)
                }
            }
            Expr::Tensor(es) => {
                let mut v: Vec<Expr> = es.iter().map(|e| e.in_frame(frame)).collect();
                if frame.rev {
                    v.reverse();
                }
                Expr::Tensor(v)
            }
            Expr::Compose(es) => Expr::Compose(es.iter().map(|e| e.in_frame(frame)).collect()),
        }
    }

    pub fn atoms(&self, out: &mut Vec<String>) {
        match self {
            Expr::Atom(n) => {
                if !out.contains(n) {
                    out.push(n.clone())
                }
            }
            Expr::Tensor(es) | Expr::Compose(es) => es.iter().for_each(|e| e.atoms(out)),
            _ => {}
        }
    }
}

// ---------------------------------------------------------------- evaluation

/// Named objects and morphisms an expression is evaluated against.
#[derive(Debug, Clone)]
pub struct Environment<F> {
    pub objects: BTreeMap<String, Obj>,
    pub morphisms: BTreeMap<String, Morphism<F>>,
}

impl<F: Field> Default for Environment<F> {
    fn default() -> Self {
        Environment { objects: BTreeMap::new(), morphisms: BTreeMap::new() }
    }
}

impl<F: Field> Environment<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_object(mut self, name: &str, x: Obj) -> Self {
        self.objects.insert(name.to_string(), x);
        self
    }

    pub fn set(&mut self, name: &str, f: Morphism<F>) {
        self.morphisms.insert(name.to_string(), f);
    }

    pub fn get(&self, name: &str) -> Result<&Morphism<F>, DslError> {
        self.morphisms.get(name).ok_or_else(|| DslError::UnknownMorphism(name.to_string()))
    }

    /// Evaluates `text` in `frame` and binds the result to `name`.
    pub fn define(&mut self, ctx: &BraidedContext<F>, name: &str, text: &str, frame: Frame) -> Result<(), DslError> {
        let e = parse(text)?.in_frame(frame);
        let f = eval(&e, self, ctx)?;
        self.set(name, f);
        Ok(())
    }
}

pub fn eval_obj<F: Field>(x: &ObjExpr, env: &Environment<F>, ctx: &BraidedContext<F>) -> Result<Obj, DslError> {
    match x {
        ObjExpr::Unit => Ok(Obj::unit()),
        ObjExpr::Named(n) => env.objects.get(n).cloned().ok_or_else(|| DslError::UnknownObject(n.clone())),
        ObjExpr::Tensor(xs) => {
            let objs = xs.iter().map(|x| eval_obj(x, env, ctx)).collect::<Result<Vec<_>, _>>()?;
            Ok(ctx.tensor_objs(&objs))
        }
    }
}

/// Evaluates an expression to a morphism by structural recursion.
pub fn eval<F: Field>(e: &Expr, env: &Environment<F>, ctx: &BraidedContext<F>) -> Result<Morphism<F>, DslError> {
    match e {
        Expr::Atom(n) => env.get(n).cloned(),
        Expr::Id(x) => Ok(Morphism::identity(&eval_obj(x, env, ctx)?)),
        Expr::Braid(x, y) => Ok(ctx.braiding(&eval_obj(x, env, ctx)?, &eval_obj(y, env, ctx)?, false)),
        Expr::BraidInv(x, y) => Ok(ctx.braiding(&eval_obj(x, env, ctx)?, &eval_obj(y, env, ctx)?, true)),
        Expr::Tensor(es) => {
            let fs = es.iter().map(|e| eval(e, env, ctx)).collect::<Result<Vec<_>, _>>()?;
            Ok(ctx.tensor_mors(&fs.iter().collect::<Vec<_>>()))
        }
        Expr::Compose(es) => {
            let mut acc = eval(es.last().expect("nonempty composite"), env, ctx)?;
            for k in (0..es.len() - 1).rev() {
                let g = eval(&es[k], env, ctx)?;
                if g.source != acc.target {
                    return Err(DslError::Type(format!(
                        "'{}' expects a domain of dimension {} but '{}' has codomain of dimension {}{}",
                        es[k],
                        g.source.dim(),
                        es[k + 1],
                        acc.target.dim(),
                        if g.source.dim() == acc.target.dim() { " (grades differ)" } else { "" }
                    )));
                }
                acc = g.after(&acc)?;
            }
            Ok(acc)
        }
    }
}

/// A named equation `lhs == rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub name: String,
    pub lhs: Expr,
    pub rhs: Expr,
}

impl Equation {
    pub fn new(name: &str, lhs: &str, rhs: &str) -> Result<Self, DslError> {
        Ok(Equation { name: name.to_string(), lhs: parse(lhs)?, rhs: parse(rhs)? })
    }

    pub fn in_frame(&self, frame: Frame) -> Equation {
        Equation { name: self.name.clone(), lhs: self.lhs.in_frame(frame), rhs: self.rhs.in_frame(frame) }
    }
}

/// A file of `let name := expr` definitions and `name : lhs == rhs` equations.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EquationFile {
    pub lets: Vec<(String, Expr)>,
    pub equations: Vec<Equation>,
}

/// Parses an equation file. Lines starting with whitespace continue the previous line.
pub fn parse_equation_file(text: &str) -> Result<EquationFile, DslError> {
    let mut logical: Vec<(usize, String)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        if line.starts_with(char::is_whitespace) {
            match logical.last_mut() {
                Some((_, l)) => {
                    l.push(' ');
                    l.push_str(line.trim());
                }
                None => return Err(DslError::Line { line: k + 1, msg: "continuation without a statement".into() }),
            }
        } else {
            logical.push((k + 1, line.trim().to_string()));
        }
    }
    let mut out = EquationFile::default();
    for (line, l) in logical {
        let wrap = |e: DslError| DslError::Line { line, msg: e.to_string() };
        if let Some(rest) = l.strip_prefix("let ") {
            let (name, body) = rest
                .split_once(":=")
                .ok_or_else(|| DslError::Line { line, msg: "expected ':='".into() })?;
            out.lets.push((name.trim().to_string(), parse(body).map_err(wrap)?));
            continue;
        }
        let (name, body) = l
            .split_once(" : ")
            .ok_or_else(|| DslError::Line { line, msg: "expected 'name : lhs == rhs'".into() })?;
        let (lhs, rhs) = body
            .split_once("==")
            .ok_or_else(|| DslError::Line { line, msg: "expected '=='".into() })?;
        out.equations.push(Equation {
            name: name.trim().to_string(),
            lhs: parse(lhs).map_err(wrap)?,
            rhs: parse(rhs).map_err(wrap)?,
        });
    }
    Ok(out)
}

/// Outcome of one equation check. Equality ignores the timing.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub micros: Option<u64>,
}

impl PartialEq for Check {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.pass == other.pass && self.witness == other.witness && self.error == other.error
    }
}

impl Eq for Check {}

/// First differing matrix entry between the two sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub row: usize,
    pub col: usize,
    pub lhs: String,
    pub rhs: String,
}

impl Check {
    pub fn ok(name: &str) -> Self {
        Check { name: name.to_string(), pass: true, witness: None, error: None, micros: None }
    }

    pub fn flag(name: &str, pass: bool, note: Option<String>) -> Self {
        Check { name: name.to_string(), pass, witness: None, error: if pass { None } else { note }, micros: None }
    }

    pub fn failed(name: &str, err: impl fmt::Display) -> Self {
        Check { name: name.to_string(), pass: false, witness: None, error: Some(err.to_string()), micros: None }
    }

    pub fn compare<F: Field>(name: &str, lhs: &Morphism<F>, rhs: &Morphism<F>) -> Self {
        if lhs.source != rhs.source || lhs.target != rhs.target {
            return Check::failed(name, DslError::Boundary(name.to_string()));
        }
        match lhs.matrix.first_difference(&rhs.matrix) {
            None => Check::ok(name),
            Some(EntryDiff { row, col, left, right }) => Check {
                name: name.to_string(),
                pass: false,
                witness: Some(Witness { row, col, lhs: left.to_scalar_string(), rhs: right.to_scalar_string() }),
                error: None,
                micros: None,
            },
        }
    }
}

/// Evaluates both sides and compares them entrywise.
pub fn check_equation<F: Field>(
    name: &str,
    lhs: &Expr,
    rhs: &Expr,
    env: &Environment<F>,
    ctx: &BraidedContext<F>,
) -> Result<Check, DslError> {
    let l = eval(lhs, env, ctx)?;
    let r = eval(rhs, env, ctx)?;
    if l.source != r.source || l.target != r.target {
        return Err(DslError::Boundary(name.to_string()));
    }
    Ok(Check::compare(name, &l, &r))
}

/// Runs a whole equation file in `frame`; evaluation errors become failed checks.
pub fn run_equation_file<F: Field>(
    file: &EquationFile,
    prefix: &str,
    env: &Environment<F>,
    ctx: &BraidedContext<F>,
    frame: Frame,
) -> Vec<Check> {
    use rayon::prelude::*;
    let mut env = env.clone();
    for (name, e) in &file.lets {
        match eval(&e.in_frame(frame), &env, ctx) {
            Ok(f) => env.set(name, f),
            Err(err) => {
                return file
                    .equations
                    .iter()
                    .map(|q| Check::failed(&format!("{prefix}{}", q.name), format!("definition of {name}: {err}")))
                    .collect()
            }
        }
    }
    file.equations
        .par_iter()
        .map(|q| {
            let name = format!("{prefix}{}", q.name);
            let q = q.in_frame(frame);
            let start = std::time::Instant::now();
            let mut c = check_equation(&name, &q.lhs, &q.rhs, &env, ctx).unwrap_or_else(|e| Check::failed(&name, e));
            c.micros = Some(start.elapsed().as_micros() as u64);
            c
        })
        .collect()
}
