//! Generators of certified structures.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::Field;
use crate::graded::{BraidedContext, GradedError, GradingGroup, Morphism, Obj};
use crate::linalg::ExactMatrix;
use crate::report::Report;
use crate::structure::{complete_from_t1, Rwmb, Semigroup, WmbError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid category presentation: {0}")]
    PresentationInvalid(String),
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("generated structure fails verification: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Wmb(#[from] WmbError),
    #[error(transparent)]
    Graded(#[from] GradedError),
}

/// Objects, morphisms `(name, source, target)` and the composition table
/// `(f, g) -> f.g`, defined exactly when `source(f) = target(g)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<(String, String, String)>,
    pub composition: Vec<(String, String, String)>,
}

impl FiniteCategory {
    /// Two objects `x, y` and one arrow `a: x -> y`.
    pub fn arrow() -> Self {
        FiniteCategory {
            objects: vec!["x".into(), "y".into()],
            morphisms: vec![
                ("1x".into(), "x".into(), "x".into()),
                ("a".into(), "x".into(), "y".into()),
                ("1y".into(), "y".into(), "y".into()),
            ],
            composition: vec![
                ("1x".into(), "1x".into(), "1x".into()),
                ("1y".into(), "1y".into(), "1y".into()),
                ("a".into(), "1x".into(), "a".into()),
                ("1y".into(), "a".into(), "a".into()),
            ],
        }
    }

    /// `n` objects and only their identities.
    pub fn discrete(n: usize) -> Self {
        let objects: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        FiniteCategory {
            morphisms: objects.iter().map(|x| (format!("1{x}"), x.clone(), x.clone())).collect(),
            composition: objects.iter().map(|x| (format!("1{x}"), format!("1{x}"), format!("1{x}"))).collect(),
            objects,
        }
    }

    /// `n` objects with exactly one morphism `x -> y` for every pair.
    pub fn pair_groupoid(n: usize) -> Self {
        let objects: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let name = |i: usize, k: usize| format!("{k}<-{i}");
        let mut morphisms = Vec::new();
        let mut composition = Vec::new();
        for i in 0..n {
            for k in 0..n {
                morphisms.push((name(i, k), objects[i].clone(), objects[k].clone()));
                for l in 0..n {
                    composition.push((name(k, l), name(i, k), name(i, l)));
                }
            }
        }
        FiniteCategory { objects, morphisms, composition }
    }

    /// One object; morphisms are the elements of the cyclic monoid `Z/n`.
    pub fn cyclic_monoid(n: usize) -> Self {
        let morphisms = (0..n).map(|i| (format!("g{i}"), "*".to_string(), "*".to_string())).collect();
        let mut composition = Vec::new();
        for i in 0..n {
            for k in 0..n {
                composition.push((format!("g{i}"), format!("g{k}"), format!("g{}", (i + k) % n)));
            }
        }
        FiniteCategory { objects: vec!["*".into()], morphisms, composition }
    }

    fn index(&self) -> Result<Indexed, GenError> {
        let bad = |s: String| GenError::PresentationInvalid(s);
        let obj: BTreeMap<&str, usize> = self.objects.iter().enumerate().map(|(i, x)| (x.as_str(), i)).collect();
        if obj.len() != self.objects.len() {
            return Err(bad("duplicate object names".into()));
        }
        let mut mor = BTreeMap::new();
        let mut src = Vec::new();
        let mut tgt = Vec::new();
        for (k, (f, s, t)) in self.morphisms.iter().enumerate() {
            if mor.insert(f.as_str(), k).is_some() {
                return Err(bad(format!("duplicate morphism {f}")));
            }
            src.push(*obj.get(s.as_str()).ok_or_else(|| bad(format!("unknown object {s}")))?);
            tgt.push(*obj.get(t.as_str()).ok_or_else(|| bad(format!("unknown object {t}")))?);
        }
        let n = self.morphisms.len();
        let mut comp = vec![None; n * n];
        for (f, g, h) in &self.composition {
            let look = |x: &str| mor.get(x).copied().ok_or_else(|| bad(format!("unknown morphism {x}")));
            let (f, g, h) = (look(f)?, look(g)?, look(h)?);
            if src[f] != tgt[g] {
                return Err(bad(format!("{} . {} is not composable", self.morphisms[f].0, self.morphisms[g].0)));
            }
            if src[h] != src[g] || tgt[h] != tgt[f] {
                return Err(bad(format!("composite of {} and {} has wrong ends", self.morphisms[f].0, self.morphisms[g].0)));
            }
            if comp[f * n + g].replace(h).is_some() {
                return Err(bad("composition table has a repeated entry".into()));
            }
        }
        for f in 0..n {
            for g in 0..n {
                if src[f] == tgt[g] && comp[f * n + g].is_none() {
                    return Err(bad(format!(
                        "table is not closed: {} . {} missing",
                        self.morphisms[f].0, self.morphisms[g].0
                    )));
                }
            }
        }
        let ix = Indexed { src, tgt, comp, n };
        for f in 0..n {
            for g in 0..n {
                for h in 0..n {
                    if let (Some(fg), Some(gh)) = (ix.compose(f, g), ix.compose(g, h)) {
                        if ix.compose(fg, h) != ix.compose(f, gh) {
                            return Err(bad("composition is not associative".into()));
                        }
                    }
                }
            }
        }
        for x in 0..self.objects.len() {
            let is_id = |i: usize| {
                ix.src[i] == x
                    && ix.tgt[i] == x
                    && (0..n).all(|f| ix.tgt[f] != x || ix.compose(i, f) == Some(f))
                    && (0..n).all(|f| ix.src[f] != x || ix.compose(f, i) == Some(f))
            };
            if !(0..n).any(is_id) {
                return Err(bad(format!("object {} has no identity", self.objects[x])));
            }
        }
        Ok(ix)
    }
}

struct Indexed {
    src: Vec<usize>,
    tgt: Vec<usize>,
    comp: Vec<Option<usize>>,
    n: usize,
}

impl Indexed {
    fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.comp[f * self.n + g]
    }
}

fn matrix<F: Field>(rows: usize, cols: usize, t: Vec<(usize, usize, F)>) -> ExactMatrix<F> {
    ExactMatrix::from_triplets(rows, cols, t).expect("indices in range")
}

/// Completes `(m, t1)` to all four `t`'s and assembles the structure.
fn assemble<F: Field>(
    ctx: BraidedContext<F>,
    a: Obj,
    t1: Morphism<F>,
    e1: Morphism<F>,
    e2: Morphism<F>,
    j: Morphism<F>,
) -> Result<Rwmb<F>, GenError> {
    let mut env = crate::dsl::Environment::new().with_object("A", a.clone());
    env.set("t1", t1.clone());
    env.set("j", j.clone());
    env.define(&ctx, "m", "(j * id(A)) . t1", crate::dsl::Frame::BASE)
        .map_err(WmbError::from)?;
    let m = env.get("m").map_err(WmbError::from)?.clone();
    let sg = Semigroup::new(ctx.clone(), a.clone(), m)?;
    let (t2, t3, t4) = complete_from_t1(&sg, &t1)?;
    Ok(Rwmb::new(ctx, a, t1, t2, t3, t4, e1, e2, j)?)
}

/// Runs the defining checks and the derived battery; refuses failing output.
pub fn certify<F: Field>(s: Rwmb<F>) -> Result<Rwmb<F>, GenError> {
    let mut r = s.check_rwmb();
    if r.pass() {
        r = s.appendix_suite();
    }
    if !r.pass() {
        return Err(GenError::VerificationFailed(describe(&r)));
    }
    Ok(s)
}

fn describe(r: &Report) -> String {
    r.summary()
}

/// Functions on a finite abelian group with pointwise multiplication.
pub fn build_group_functions<F: Field>(factors: &[u32]) -> Result<Rwmb<F>, GenError> {
    let g = GradingGroup::new(factors.to_vec()).map_err(|e| GenError::Parameters(e.to_string()))?;
    let n = g.order();
    let ctx = BraidedContext::<F>::vect();
    let a = Obj::new(vec![0; n]);
    let a2 = ctx.power(&a, 2);
    let mut t = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let d = g.add(x as u32, g.neg(y as u32)) as usize;
            t.push((d * n + y, x * n + y, F::one()));
        }
    }
    let t1 = Morphism::new(a2.clone(), a2.clone(), matrix(n * n, n * n, t))?;
    let j = Morphism::new(a.clone(), Obj::unit(), matrix(1, n, vec![(0, 0, F::one())]))?;
    let id = Morphism::identity(&a2);
    assemble(ctx, a, t1, id.clone(), id, j)
}

pub fn gen_group_functions<F: Field>(factors: &[u32]) -> Result<Rwmb<F>, GenError> {
    certify(build_group_functions(factors)?)
}

/// The linear span of the morphisms of a finite category, composition as product.
pub fn build_category_algebra<F: Field>(cat: &FiniteCategory) -> Result<Rwmb<F>, GenError> {
    let ix = cat.index()?;
    let n = ix.n;
    let ctx = BraidedContext::<F>::vect();
    let a = Obj::new(vec![0; n]);
    let a2 = ctx.power(&a, 2);
    let mut t = Vec::new();
    let mut e1 = Vec::new();
    let mut e2 = Vec::new();
    for f in 0..n {
        for g in 0..n {
            if let Some(fg) = ix.compose(f, g) {
                t.push((f * n + fg, f * n + g, F::one()));
            }
            if ix.tgt[f] == ix.tgt[g] {
                e1.push((f * n + g, f * n + g, F::one()));
            }
            if ix.src[f] == ix.src[g] {
                e2.push((f * n + g, f * n + g, F::one()));
            }
        }
    }
    let t1 = Morphism::new(a2.clone(), a2.clone(), matrix(n * n, n * n, t))?;
    let e1 = Morphism::new(a2.clone(), a2.clone(), matrix(n * n, n * n, e1))?;
    let e2 = Morphism::new(a2.clone(), a2.clone(), matrix(n * n, n * n, e2))?;
    let j = Morphism::new(a.clone(), Obj::unit(), matrix(1, n, (0..n).map(|f| (0, f, F::one())).collect()))?;
    assemble(ctx, a, t1, e1, e2, j)
}

pub fn gen_category_algebra<F: Field>(cat: &FiniteCategory) -> Result<Rwmb<F>, GenError> {
    certify(build_category_algebra(cat)?)
}

/// The exterior algebra on one odd generator in super vector spaces.
pub fn build_exterior_super<F: Field>() -> Result<Rwmb<F>, GenError> {
    if F::from_i64(2).is_zero() {
        return Err(GenError::Parameters("characteristic 2".into()));
    }
    let ctx = BraidedContext::<F>::super_vect();
    let a = Obj::new(vec![0, 1]);
    let a2 = ctx.power(&a, 2);
    // basis 1 = 0, theta = 1; t1(a*b) = a(1) * a(2) b
    let one = F::one();
    let t = vec![
        (0, 0, one.clone()),       // 1*1 -> 1*1
        (1, 1, one.clone()),       // 1*th -> 1*th
        (2, 2, one.clone()),       // th*1 -> th*1
        (1, 2, one.clone()),       //      + 1*th
        (3, 3, one),               // th*th -> th*th (+ 1*th^2 = 0)
    ];
    let t1 = Morphism::new(a2.clone(), a2.clone(), matrix(4, 4, t))?;
    let j = Morphism::new(a.clone(), Obj::unit(), matrix(1, 2, vec![(0, 0, F::one())]))?;
    let id = Morphism::identity(&a2);
    assemble(ctx, a, t1, id.clone(), id, j)
}

pub fn gen_exterior_super<F: Field>() -> Result<Rwmb<F>, GenError> {
    certify(build_exterior_super()?)
}

/// `k[x]/(x^n)` graded by `Z/n` with `chi(a, b) = q^(ab)`, `x` primitive; `q`
/// must be a primitive `n`-th root of unity.
pub fn build_quantum_line<F: Field>(n: u32, q: F) -> Result<Rwmb<F>, GenError> {
    if n < 2 || q.order(n as u64) != Some(n as u64) {
        return Err(GenError::Parameters(format!("q must be a primitive {n}-th root of unity")));
    }
    let ctx = BraidedContext::cyclic(n, q.clone())?;
    let nn = n as usize;
    let a = Obj::new((0..n).collect());
    let a2 = ctx.power(&a, 2);
    // coefficients of Delta(x^k) = sum_i b[k][i] x^i * x^(k-i)
    let mut b = vec![vec![F::zero(); nn]; nn];
    b[0][0] = F::one();
    for k in 1..nn {
        for i in 0..=k {
            let mut v = F::zero();
            if i < k {
                v = v + b[k - 1][i].clone();
            }
            if i > 0 {
                v = v + q.pow((k - i) as u64) * b[k - 1][i - 1].clone();
            }
            b[k][i] = v;
        }
    }
    let mut t = Vec::new();
    for x in 0..nn {
        for y in 0..nn {
            for i in 0..=x {
                let r = x - i + y;
                if r < nn && !b[x][i].is_zero() {
                    t.push((i * nn + r, x * nn + y, b[x][i].clone()));
                }
            }
        }
    }
    let t1 = Morphism::new(a2.clone(), a2.clone(), matrix(nn * nn, nn * nn, t))?;
    let j = Morphism::new(a.clone(), Obj::unit(), matrix(1, nn, vec![(0, 0, F::one())]))?;
    let id = Morphism::identity(&a2);
    assemble(ctx, a, t1, id.clone(), id, j)
}

pub fn gen_quantum_line<F: Field>(n: u32, q: F) -> Result<Rwmb<F>, GenError> {
    certify(build_quantum_line(n, q)?)
}

/// The tensor product of a structure on trivially graded data with any structure.
pub fn build_product<F: Field>(s: &Rwmb<F>, t: &Rwmb<F>) -> Result<Rwmb<F>, GenError> {
    if s.a.grades().iter().any(|&g| g != 0) || s.frame != t.frame {
        return Err(GenError::Parameters("the left factor must be trivially graded".into()));
    }
    let ctx = t.ctx.clone();
    let sa = Obj::new(vec![0; s.a.dim()]);
    let a = ctx.tensor_obj(&sa, &t.a);
    let lift = |f: &Morphism<F>, src: &Obj, tgt: &Obj| Morphism::new(src.clone(), tgt.clone(), f.matrix.clone());
    let sa2 = ctx.power(&sa, 2);
    let id_s = Morphism::identity(&sa);
    let id_t = Morphism::identity(&t.a);
    // sigma: S T S T -> S S T T
    let sigma = ctx.tensor_mors(&[&id_s, &ctx.braiding(&t.a, &sa, false), &id_t]);
    let sigma_inv = ctx.tensor_mors(&[&id_s, &ctx.braiding(&sa, &t.a, true), &id_t]);
    let pair = |x: &Morphism<F>, y: &Morphism<F>| -> Result<Morphism<F>, GenError> {
        let xs = lift(x, &sa2, &sa2)?;
        let p = ctx.tensor_mor(&xs, y);
        Ok(sigma_inv.after(&p)?.after(&sigma)?)
    };
    let j = ctx.tensor_mor(&lift(&s.j, &sa, &Obj::unit())?, &t.j);
    let out = Rwmb {
        ctx: ctx.clone(),
        frame: t.frame,
        a,
        t1: pair(&s.t1, &t.t1)?,
        t2: pair(&s.t2, &t.t2)?,
        t3: pair(&s.t3, &t.t3)?,
        t4: pair(&s.t4, &t.t4)?,
        e1: pair(&s.e1, &t.e1)?,
        e2: pair(&s.e2, &t.e2)?,
        j,
    };
    Ok(out)
}

pub fn gen_product<F: Field>(s: &Rwmb<F>, t: &Rwmb<F>) -> Result<Rwmb<F>, GenError> {
    certify(build_product(s, t)?)
}
