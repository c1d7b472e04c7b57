//! Structure and report files.
//!
//! Structure files are field-agnostic JSON: scalars are strings (`"a"` or
//! `"a/b"`), decoded against a concrete field only after the declared field
//! has been matched. Everything is re-verified on decode.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::base::BaseComonoid;
use crate::dsl::{self, Environment, Frame, Witness};
use crate::field::{Field, FieldSpec, ScalarError};
use crate::graded::{Bicharacter, BraidedContext, GradedError, GradingGroup, Morphism, Obj};
use crate::linalg::ExactMatrix;
use crate::report::Report;
use crate::structure::{Rwmb, WmbError};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error("unsupported format_version {0}, expected {FORMAT_VERSION}")]
    Version(u32),
    #[error("expected a {expected} file, found {found}")]
    Kind { expected: String, found: FileKind },
    #[error("object {name}: {msg}")]
    Object { name: String, msg: String },
    #[error("morphism {name}: {msg}")]
    Morphism { name: String, msg: String },
    #[error("no {0} in the file (missing role or name)")]
    Missing(String),
    #[error("{0} listed twice")]
    Duplicate(String),
    #[error("verification failed on load: {0}")]
    Invalid(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Wmb(#[from] WmbError),
}

/// What a structure file describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FileKind {
    /// A full structure `(t1..t4, e1, e2, j)` on `A`.
    Rwmb,
    /// `m` and `t1` (possibly more) awaiting completion.
    Partial,
    /// A structure together with its base comonoid.
    Base,
    /// An object `V` with an action `v: A V -> V`.
    Module,
}

impl fmt::Display for FileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FileKind::Rwmb => "rwmb",
            FileKind::Partial => "partial",
            FileKind::Base => "base",
            FileKind::Module => "module",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismEntry {
    pub name: String,
    /// Object expression, e.g. `"A*A"`, `"L*A"`, `"I"`.
    pub source: String,
    pub target: String,
    /// Nonzero entries `[row, col, value]`, row-major.
    pub entries: Vec<(usize, usize, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub format_version: u32,
    pub kind: FileKind,
    /// `"Q"` or `"Fp:<p>"`.
    pub field: String,
    /// Invariant factors of the grading group; empty for the trivial group.
    pub grading: Vec<u32>,
    /// `chi(g, h)` at index `g * |G| + h`, grades in mixed radix (first factor most significant).
    pub bicharacter: Vec<String>,
    #[serde(default)]
    pub frame: Frame,
    /// Basis grades of each named object.
    pub objects: BTreeMap<String, Vec<u32>>,
    pub morphisms: Vec<MorphismEntry>,
    /// Role (`A`, `t1`, `m`, `v`, ...) to the name used in the file.
    #[serde(default)]
    pub roles: BTreeMap<String, String>,
}

impl StructureFile {
    pub fn parse(text: &str) -> Result<Self, IoError> {
        let f: StructureFile = serde_json::from_str(text).map_err(|e| IoError::Syntax {
            line: e.line(),
            column: e.column(),
            msg: e.to_string(),
        })?;
        if f.format_version != FORMAT_VERSION {
            return Err(IoError::Version(f.format_version));
        }
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn field_spec(&self) -> Result<FieldSpec, IoError> {
        Ok(self.field.parse()?)
    }

    pub fn expect_kind(&self, allowed: &[FileKind]) -> Result<(), IoError> {
        if allowed.contains(&self.kind) {
            return Ok(());
        }
        let expected = allowed.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" or ");
        Err(IoError::Kind { expected, found: self.kind })
    }
}

/// A structure file read over a concrete field.
#[derive(Debug, Clone)]
pub struct Decoded<F> {
    pub kind: FileKind,
    pub ctx: BraidedContext<F>,
    pub frame: Frame,
    pub objects: BTreeMap<String, Obj>,
    pub morphisms: BTreeMap<String, Morphism<F>>,
    pub roles: BTreeMap<String, String>,
}

impl<F: Field> Decoded<F> {
    fn resolve<'a>(&'a self, role: &'a str) -> &'a str {
        self.roles.get(role).map(String::as_str).unwrap_or(role)
    }

    pub fn object(&self, role: &str) -> Result<Obj, IoError> {
        self.objects.get(self.resolve(role)).cloned().ok_or_else(|| IoError::Missing(format!("object {role}")))
    }

    pub fn morphism(&self, role: &str) -> Result<Morphism<F>, IoError> {
        self.morphisms.get(self.resolve(role)).cloned().ok_or_else(|| IoError::Missing(format!("morphism {role}")))
    }

    pub fn has_morphism(&self, role: &str) -> bool {
        self.morphisms.contains_key(self.resolve(role))
    }
}

/// Decodes `file` over `F`; the declared field must be `F`.
pub fn decode<F: Field>(file: &StructureFile) -> Result<Decoded<F>, IoError> {
    let spec = file.field_spec()?;
    if spec != F::spec() {
        return Err(ScalarError::FieldMismatch { expected: F::spec().to_string(), found: spec.to_string() }.into());
    }
    let group = GradingGroup::new(file.grading.clone())?;
    let table = file.bicharacter.iter().map(|s| F::parse_scalar(s)).collect::<Result<Vec<F>, _>>()?;
    let ctx = BraidedContext::new(group.clone(), Bicharacter::from_table(&group, table)?)?;

    let mut env: Environment<F> = Environment::new();
    for (name, grades) in &file.objects {
        if dsl::parse_obj(name).map(|o| o != dsl::ObjExpr::Named(name.clone())).unwrap_or(true) {
            return Err(IoError::Object { name: name.clone(), msg: "not a valid object name".into() });
        }
        let x = Obj::new(grades.clone());
        ctx.check_object(&x).map_err(|e| IoError::Object { name: name.clone(), msg: e.to_string() })?;
        env.objects.insert(name.clone(), x);
    }

    let mut morphisms = BTreeMap::new();
    for m in &file.morphisms {
        let err = |msg: String| IoError::Morphism { name: m.name.clone(), msg };
        let obj = |text: &str| -> Result<Obj, IoError> {
            let e = dsl::parse_obj(text).map_err(|e| err(format!("{text:?}: {e}")))?;
            dsl::eval_obj(&e, &env, &ctx).map_err(|e| err(e.to_string()))
        };
        let (source, target) = (obj(&m.source)?, obj(&m.target)?);
        let mut seen = std::collections::BTreeSet::new();
        let mut triplets = Vec::with_capacity(m.entries.len());
        for (r, c, v) in &m.entries {
            if !seen.insert((*r, *c)) {
                return Err(err(format!("entry ({r},{c}) listed twice")));
            }
            triplets.push((*r, *c, F::parse_scalar(v).map_err(|e| err(e.to_string()))?));
        }
        let matrix =
            ExactMatrix::from_triplets(target.dim(), source.dim(), triplets).map_err(|e| err(e.to_string()))?;
        let f = Morphism::new(source, target, matrix).map_err(|e| err(e.to_string()))?;
        if morphisms.insert(m.name.clone(), f).is_some() {
            return Err(IoError::Duplicate(format!("morphism {}", m.name)));
        }
    }
    for (role, name) in &file.roles {
        if !env.objects.contains_key(name) && !morphisms.contains_key(name) {
            return Err(IoError::Missing(format!("{name} (role {role})")));
        }
    }
    Ok(Decoded {
        kind: file.kind,
        ctx,
        frame: file.frame,
        objects: env.objects,
        morphisms,
        roles: file.roles.clone(),
    })
}

/// Collects objects and morphisms into a file.
pub struct Encoder {
    file: StructureFile,
}

impl Encoder {
    pub fn new<F: Field>(kind: FileKind, ctx: &BraidedContext<F>, frame: Frame) -> Self {
        let order = ctx.group.order() as u32;
        let mut bicharacter = Vec::new();
        for g in 0..order {
            for h in 0..order {
                bicharacter.push(ctx.chi.value(g, h).to_scalar_string());
            }
        }
        let file = StructureFile {
            format_version: FORMAT_VERSION,
            kind,
            field: F::spec().to_string(),
            grading: ctx.group.factors().to_vec(),
            bicharacter,
            frame,
            objects: BTreeMap::new(),
            morphisms: Vec::new(),
            roles: BTreeMap::new(),
        };
        Encoder { file }
    }

    pub fn object(mut self, name: &str, x: &Obj) -> Self {
        self.file.objects.insert(name.to_string(), x.grades().to_vec());
        self
    }

    /// Adds `f: source -> target`; the expressions must evaluate to `f`'s boundary.
    pub fn morphism<F: Field>(mut self, name: &str, source: &str, target: &str, f: &Morphism<F>) -> Self {
        let entries = f.matrix.entries().map(|(r, c, v)| (r, c, v.to_scalar_string())).collect();
        self.file.morphisms.push(MorphismEntry {
            name: name.to_string(),
            source: source.to_string(),
            target: target.to_string(),
            entries,
        });
        self
    }

    pub fn finish(self) -> StructureFile {
        self.file
    }
}

const RWMB_PARTS: [&str; 6] = ["t1", "t2", "t3", "t4", "e1", "e2"];

fn encode_rwmb<F: Field>(kind: FileKind, s: &Rwmb<F>) -> Encoder {
    let mut enc = Encoder::new(kind, &s.ctx, s.frame).object("A", &s.a);
    for (name, f) in RWMB_PARTS.iter().zip([&s.t1, &s.t2, &s.t3, &s.t4, &s.e1, &s.e2]) {
        enc = enc.morphism(name, "A*A", "A*A", f);
    }
    enc.morphism("j", "A", "I", &s.j)
}

pub fn rwmb_to_file<F: Field>(s: &Rwmb<F>) -> StructureFile {
    encode_rwmb(FileKind::Rwmb, s).finish()
}

/// The structure part of an `rwmb` or `base` file. Shapes and grades are
/// checked; the axioms are not (that is what `check_rwmb` is for).
pub fn rwmb_from_decoded<F: Field>(d: &Decoded<F>) -> Result<Rwmb<F>, IoError> {
    let mut s = Rwmb::new(
        d.ctx.clone(),
        d.object("A")?,
        d.morphism("t1")?,
        d.morphism("t2")?,
        d.morphism("t3")?,
        d.morphism("t4")?,
        d.morphism("e1")?,
        d.morphism("e2")?,
        d.morphism("j")?,
    )?;
    s.frame = d.frame;
    Ok(s)
}

pub fn load_rwmb<F: Field>(text: &str) -> Result<Rwmb<F>, IoError> {
    let f = StructureFile::parse(text)?;
    f.expect_kind(&[FileKind::Rwmb, FileKind::Base])?;
    rwmb_from_decoded(&decode(&f)?)
}

/// `m`, `t1` and whichever of `t2, t3, t4, e1, e2, j` are present.
pub fn partial_to_file<F: Field>(
    ctx: &BraidedContext<F>,
    frame: Frame,
    a: &Obj,
    parts: &[(&str, &Morphism<F>)],
) -> StructureFile {
    let mut enc = Encoder::new(FileKind::Partial, ctx, frame).object("A", a);
    for (name, f) in parts {
        let (src, tgt) = match *name {
            "m" => ("A*A", "A"),
            "j" => ("A", "I"),
            _ => ("A*A", "A*A"),
        };
        enc = enc.morphism(name, src, tgt, f);
    }
    enc.finish()
}

pub fn base_to_file<F: Field>(s: &Rwmb<F>, b: &BaseComonoid<F>) -> StructureFile {
    encode_rwmb(FileKind::Base, s)
        .object("L", &b.l)
        .morphism("p", "A", "L", &b.p)
        .morphism("n1", "L*A", "A", &b.n1)
        .morphism("n2", "A*L", "A", &b.n2)
        .morphism("mu", "L*L", "L", &b.mu)
        .morphism("delta", "L", "L*L", &b.delta)
        .morphism("eps", "L", "I", &b.eps)
        .finish()
}

/// Reads a base file: the structure, then `L` with its maps. The
/// factorizations through `p` and the coseparable comonoid laws are re-checked.
pub fn base_from_decoded<F: Field>(d: &Decoded<F>) -> Result<(Rwmb<F>, BaseComonoid<F>), IoError> {
    if d.kind != FileKind::Base {
        return Err(IoError::Kind { expected: "base".into(), found: d.kind });
    }
    let s = rwmb_from_decoded(d)?;
    let b = BaseComonoid {
        ctx: d.ctx.clone(),
        frame: d.frame,
        a: s.a.clone(),
        l: d.object("L")?,
        p: d.morphism("p")?,
        n1: d.morphism("n1")?,
        n2: d.morphism("n2")?,
        mu: d.morphism("mu")?,
        delta: d.morphism("delta")?,
        eps: d.morphism("eps")?,
    };
    let mut r = b.verify_factorizations(&s);
    r.extend(b.verify_coseparable().checks);
    if !r.pass() {
        return Err(IoError::Invalid(r.summary()));
    }
    Ok((s, b))
}

pub fn load_base<F: Field>(text: &str) -> Result<(Rwmb<F>, BaseComonoid<F>), IoError> {
    base_from_decoded(&decode(&StructureFile::parse(text)?)?)
}

/// A module file; `a` is recorded so the action's boundary is self-describing.
pub fn module_to_file<F: Field>(ctx: &BraidedContext<F>, frame: Frame, a: &Obj, v: &Obj, action: &Morphism<F>) -> StructureFile {
    Encoder::new(FileKind::Module, ctx, frame)
        .object("A", a)
        .object("V", v)
        .morphism("v", "A*V", "V", action)
        .finish()
}

/// `(A, V, v)`. The module axioms are checked when the module is attached to
/// a structure (see `ModuleCategory::make_module`).
pub fn module_from_decoded<F: Field>(d: &Decoded<F>) -> Result<(Obj, Obj, Morphism<F>), IoError> {
    if d.kind != FileKind::Module {
        return Err(IoError::Kind { expected: "module".into(), found: d.kind });
    }
    let (a, v, action) = (d.object("A")?, d.object("V")?, d.morphism("v")?);
    if action.source != d.ctx.tensor_obj(&a, &v) || action.target != v {
        return Err(IoError::Morphism { name: "v".into(), msg: "must be A*V -> V".into() });
    }
    Ok((a, v, action))
}

/// One line of a report file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub name: String,
    /// The suite the check belongs to.
    pub label: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub micros: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub format_version: u32,
    /// Tool name and version.
    pub tool: String,
    pub command: String,
    pub field: String,
    pub pass: bool,
    pub total: usize,
    pub failed: usize,
    /// Computed quantities, e.g. `dim_l`.
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub facts: BTreeMap<String, serde_json::Value>,
    pub checks: Vec<ReportEntry>,
}

impl ReportFile {
    pub fn new(command: &str, field: FieldSpec) -> Self {
        ReportFile {
            format_version: FORMAT_VERSION,
            tool: format!("wmb {}", env!("CARGO_PKG_VERSION")),
            command: command.to_string(),
            field: field.to_string(),
            pass: true,
            total: 0,
            failed: 0,
            facts: BTreeMap::new(),
            checks: Vec::new(),
        }
    }

    pub fn add(&mut self, label: &str, r: &Report) {
        for c in &r.checks {
            self.checks.push(ReportEntry {
                name: c.name.clone(),
                label: label.to_string(),
                pass: c.pass,
                witness: c.witness.clone(),
                error: c.error.clone(),
                micros: c.micros,
            });
        }
        self.tally();
    }

    pub fn fact(&mut self, key: &str, value: impl Into<serde_json::Value>) {
        self.facts.insert(key.to_string(), value.into());
    }

    /// Keeps only the checks accepted by `keep`.
    pub fn retain(&mut self, keep: impl Fn(&ReportEntry) -> bool) {
        self.checks.retain(|c| keep(c));
        self.tally();
    }

    pub fn strip_timing(&mut self) {
        for c in &mut self.checks {
            c.micros = None;
        }
    }

    fn tally(&mut self) {
        self.checks.sort_by(|a, b| (&a.name, &a.label).cmp(&(&b.name, &b.label)));
        self.total = self.checks.len();
        self.failed = self.checks.iter().filter(|c| !c.pass).count();
        self.pass = self.failed == 0;
    }

    pub fn first_failure(&self) -> Option<&ReportEntry> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let mark = if c.pass { "ok  " } else { "FAIL" };
            out.push_str(&format!("{mark} {:<14} {}", c.label, c.name));
            if let Some(w) = &c.witness {
                out.push_str(&format!("  (entry {},{}: {} vs {})", w.row, w.col, w.lhs, w.rhs));
            }
            if let Some(e) = &c.error {
                out.push_str(&format!("  ({e})"));
            }
            out.push('\n');
        }
        for (k, v) in &self.facts {
            out.push_str(&format!("{k} = {v}\n"));
        }
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        out.push_str(&format!("{verdict}: {} checks, {} failed ({}, {})\n", self.total, self.failed, self.command, self.field));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    #[test]
    fn empty_text_is_a_syntax_error() {
        assert!(matches!(StructureFile::parse(""), Err(IoError::Syntax { line: 1, .. })));
    }

    #[test]
    fn rational_entries_are_lowest_terms() {
        let ctx = BraidedContext::<Q>::vect();
        let a = Obj::new(vec![0]);
        let half = Q::parse_scalar("2/4").unwrap();
        let f = Morphism::new(a.clone(), a.clone(), ExactMatrix::from_dense(&[vec![half]])).unwrap();
        let file = Encoder::new(FileKind::Module, &ctx, Frame::BASE).object("A", &a).morphism("f", "A", "A", &f).finish();
        assert_eq!(file.morphisms[0].entries, vec![(0, 0, "1/2".to_string())]);
    }
}
