//! The multiplier monoid `M(A)` as a graded space of compatible pairs of
//! endomorphisms, the embedding `i`, and factorizations of component pairs.

use thiserror::Error;

use crate::base::BaseComonoid;
use crate::dsl::Check;
use crate::field::Field;
use crate::graded::{curry, BraidedContext, Grade, GradedError, Morphism, Obj, Side};
use crate::linalg::{ExactMatrix, LinalgError};
use crate::report::Report;
use crate::structure::{Rwmb, Semigroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultiplierError {
    #[error("{0} are not components of a multiplier")]
    NotAMultiplier(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `M(A)`: the degree-`g` part consists of pairs `(lambda, rho)` of degree-`g`
/// maps `A -> A` with `m(rho(a) b) = m(a lambda(b))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplierMonoid<F> {
    pub ctx: BraidedContext<F>,
    pub a: Obj,
    pub m: Morphism<F>,
    pub carrier: Obj,
    /// Columns: basis pairs as `[vec(lambda); vec(rho)]`, row-major, `2 n^2` rows.
    pub embed: ExactMatrix<F>,
    /// `M(A) A -> A`, `(lambda, rho) b |-> lambda(b)`.
    pub h1: Morphism<F>,
    /// `A M(A) -> A`, `a (lambda, rho) |-> rho(a)`.
    pub h2: Morphism<F>,
    /// `(id, id)`, as `I -> M(A)`.
    pub unit: Morphism<F>,
    /// `(lambda, rho)(lambda', rho') = (lambda lambda', rho' rho)`.
    pub product: Morphism<F>,
    /// `a |-> (m(a -), m(- a))`.
    pub i: Morphism<F>,
}

/// Solves the compatibility constraints degree by degree.
pub fn compute_multiplier_monoid<F: Field>(sg: &Semigroup<F>) -> Result<MultiplierMonoid<F>, MultiplierError> {
    let n = sg.a.dim();
    let n2 = n * n;
    let ctx = &sg.ctx;
    let m = &sg.m.matrix;
    let mt = m.transpose();
    let mut cols: Vec<Vec<(usize, F)>> = Vec::new();
    let mut grades: Vec<Grade> = Vec::new();
    for g in ctx.group.elements() {
        // unknowns: lambda[r][c] then rho[r][c], present when |r| = |c| + g
        let mut unknowns: Vec<(usize, usize)> = Vec::with_capacity(2 * n2);
        for part in 0..2 {
            for r in 0..n {
                for c in 0..n {
                    if sg.a.grade(r) == ctx.group.add(sg.a.grade(c), g) {
                        unknowns.push((part, r * n + c));
                    }
                }
            }
        }
        if unknowns.is_empty() {
            continue;
        }
        // constraint row (a, b, k): sum_r rho[r][a] m[k][r b] - lambda[r][b] m[k][a r]
        let mut trip = Vec::new();
        for (u, &(part, idx)) in unknowns.iter().enumerate() {
            let (r, c) = (idx / n, idx % n);
            if part == 1 {
                let a = c;
                for b in 0..n {
                    for (k, v) in mt.row(r * n + b) {
                        trip.push(((a * n + b) * n + k, u, v.clone()));
                    }
                }
            } else {
                let b = c;
                for a in 0..n {
                    for (k, v) in mt.row(a * n + r) {
                        trip.push(((a * n + b) * n + k, u, -v.clone()));
                    }
                }
            }
        }
        let cons = ExactMatrix::from_triplets(n * n2, unknowns.len(), trip)?;
        for kv in cons.kernel_basis() {
            let col = kv.into_iter().map(|(u, v)| (unknowns[u].0 * n2 + unknowns[u].1, v)).collect();
            cols.push(col);
            grades.push(g);
        }
    }
    let carrier = Obj::new(grades);
    let dm = carrier.dim();
    let embed = ExactMatrix::from_columns(2 * n2, &cols);
    let pair = |k: usize| -> (ExactMatrix<F>, ExactMatrix<F>) {
        let col = embed.select_cols(&[k]);
        let lam = ExactMatrix::from_triplets(
            n,
            n,
            col.entries().filter(|(r, _, _)| *r < n2).map(|(r, _, v)| (r / n, r % n, v.clone())),
        )
        .expect("in range");
        let rho = ExactMatrix::from_triplets(
            n,
            n,
            col.entries().filter(|(r, _, _)| *r >= n2).map(|(r, _, v)| ((r - n2) / n, (r - n2) % n, v.clone())),
        )
        .expect("in range");
        (lam, rho)
    };
    let pairs: Vec<_> = (0..dm).map(pair).collect();
    // h1[(k), (mu, b)] = lambda_mu[k][b]; h2[(k), (a, mu)] = rho_mu[k][a]
    let mut t1 = Vec::new();
    let mut t2 = Vec::new();
    for (mu, (lam, rho)) in pairs.iter().enumerate() {
        for (k, b, v) in lam.entries() {
            t1.push((k, mu * n + b, v.clone()));
        }
        for (k, a, v) in rho.entries() {
            t2.push((k, a * dm + mu, v.clone()));
        }
    }
    let h1 = Morphism::new(
        ctx.tensor_obj(&carrier, &sg.a),
        sg.a.clone(),
        ExactMatrix::from_triplets(n, dm * n, t1)?,
    )?;
    let h2 = Morphism::new(
        ctx.tensor_obj(&sg.a, &carrier),
        sg.a.clone(),
        ExactMatrix::from_triplets(n, n * dm, t2)?,
    )?;
    let coords = |vecs: Vec<Vec<(usize, F)>>| -> Result<ExactMatrix<F>, MultiplierError> {
        let rhs = ExactMatrix::from_columns(2 * n2, &vecs);
        embed.solve_unique(&rhs).map_err(|e| match e {
            LinalgError::NoSolution => MultiplierError::NotAMultiplier("computed pairs".into()),
            other => other.into(),
        })
    };
    let id = ExactMatrix::<F>::identity(n);
    let unit_m = coords(vec![flatten(&id, &id, n)])?;
    let unit = Morphism::new(Obj::unit(), carrier.clone(), unit_m)?;
    let mut prods = Vec::with_capacity(dm * dm);
    for (l1, r1) in &pairs {
        for (l2, r2) in &pairs {
            prods.push(flatten(&l1.matmul(l2)?, &r2.matmul(r1)?, n));
        }
    }
    let product = Morphism::new(ctx.tensor_obj(&carrier, &carrier), carrier.clone(), coords(prods)?)?;
    let mut iv = Vec::with_capacity(n);
    for a in 0..n {
        // lambda = m(a -), rho = m(- a)
        let lam = m.select_cols(&(0..n).map(|b| a * n + b).collect::<Vec<_>>());
        let rho = m.select_cols(&(0..n).map(|b| b * n + a).collect::<Vec<_>>());
        iv.push(flatten(&lam, &rho, n));
    }
    let i = Morphism::new(sg.a.clone(), carrier.clone(), coords(iv)?)?;
    Ok(MultiplierMonoid { ctx: ctx.clone(), a: sg.a.clone(), m: sg.m.clone(), carrier, embed, h1, h2, unit, product, i })
}

fn flatten<F: Field>(lam: &ExactMatrix<F>, rho: &ExactMatrix<F>, n: usize) -> Vec<(usize, F)> {
    let mut v: Vec<(usize, F)> = lam.entries().map(|(r, c, x)| (r * n + c, x.clone())).collect();
    v.extend(rho.entries().map(|(r, c, x)| (n * n + r * n + c, x.clone())));
    v
}

impl<F: Field> MultiplierMonoid<F> {
    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    /// The unique `f: X -> M(A)` with components `f1: X A -> A`, `f2: A X -> A`.
    pub fn factor(&self, x: &Obj, f1: &Morphism<F>, f2: &Morphism<F>, what: &str) -> Result<Morphism<F>, MultiplierError> {
        let ctx = &self.ctx;
        let (n, dx) = (self.a.dim(), x.dim());
        if f1.source != ctx.tensor_obj(x, &self.a) || f2.source != ctx.tensor_obj(&self.a, x) {
            return Err(MultiplierError::Shape(format!("{what}: components must be X A -> A and A X -> A")));
        }
        let ida = Morphism::identity(&self.a);
        let l = self.m.after(&ctx.tensor_mor(f2, &ida))?;
        let r = self.m.after(&ctx.tensor_mor(&ida, f1))?;
        if l != r {
            return Err(MultiplierError::NotAMultiplier(what.into()));
        }
        let mut vecs = Vec::with_capacity(dx);
        for k in 0..dx {
            let lam = f1.matrix.select_cols(&(0..n).map(|b| k * n + b).collect::<Vec<_>>());
            let rho = f2.matrix.select_cols(&(0..n).map(|a| a * dx + k).collect::<Vec<_>>());
            vecs.push(flatten(&lam, &rho, n));
        }
        let rhs = ExactMatrix::from_columns(2 * n * n, &vecs);
        let fm = self.embed.solve_unique(&rhs).map_err(|_| MultiplierError::NotAMultiplier(what.into()))?;
        let f = Morphism::new(x.clone(), self.carrier.clone(), fm)?;
        if self.h1.after(&ctx.tensor_mor(&f, &ida))? != *f1 || self.h2.after(&ctx.tensor_mor(&ida, &f))? != *f2 {
            return Err(MultiplierError::NotAMultiplier(what.into()));
        }
        Ok(f)
    }

    /// `M(A) -> Hom(A, A)` through `h1` is injective.
    pub fn h1_nondegenerate(&self) -> bool {
        curry(&self.h1.matrix, self.dim(), self.a.dim(), Side::Right).is_injective()
    }

    /// `M(A) -> Hom(A, A)` through `h2` is injective.
    pub fn h2_nondegenerate(&self) -> bool {
        curry(&self.h2.matrix, self.a.dim(), self.dim(), Side::Left).is_injective()
    }

    /// `i` is invertible.
    pub fn i_is_iso(&self) -> bool {
        self.dim() == self.a.dim() && self.i.is_injective() && self.i.is_surjective()
    }

    /// Monoid laws, `i` a monoid map with components `m`, and density.
    pub fn report(&self) -> Report {
        let ctx = &self.ctx;
        let id = Morphism::identity(&self.carrier);
        let ida = Morphism::identity(&self.a);
        let mut r = Report::new();
        let cmp = |name: &str, l: Result<Morphism<F>, GradedError>, rr: Result<Morphism<F>, GradedError>| match (l, rr) {
            (Ok(l), Ok(rr)) => Check::compare(name, &l, &rr),
            (Err(e), _) | (_, Err(e)) => Check::failed(name, e),
        };
        let p = &self.product;
        r.push(cmp(
            "product_associative",
            p.after(&ctx.tensor_mor(p, &id)),
            p.after(&ctx.tensor_mor(&id, p)),
        ));
        r.push(cmp("unit_left", p.after(&ctx.tensor_mor(&self.unit, &id)), Ok(id.clone())));
        r.push(cmp("unit_right", p.after(&ctx.tensor_mor(&id, &self.unit)), Ok(id.clone())));
        r.push(cmp("i_multiplicative", p.after(&ctx.tensor_mor(&self.i, &self.i)), self.i.after(&self.m)));
        r.push(cmp("i_first_component", self.h1.after(&ctx.tensor_mor(&self.i, &ida)), Ok(self.m.clone())));
        r.push(cmp("i_second_component", self.h2.after(&ctx.tensor_mor(&ida, &self.i)), Ok(self.m.clone())));
        r.push(Check::flag("i_injective", self.i.is_injective(), Some("i is not a monomorphism".into())));
        r.push(Check::flag("h1_nondegenerate_right", self.h1_nondegenerate(), None));
        r.push(Check::flag("h2_nondegenerate_left", self.h2_nondegenerate(), None));
        r.sorted()
    }
}

/// Component pair of a structure read in the base category.
fn components<'a, F>(s: &Rwmb<F>, first: &'a Morphism<F>, second: &'a Morphism<F>) -> (&'a Morphism<F>, &'a Morphism<F>) {
    if s.frame.rev {
        (second, first)
    } else {
        (first, second)
    }
}

/// The four maps `A -> M(A)` with components the pairs of contractions, in the
/// order barR, barL, L, R.
pub fn pi_into_ma<F: Field>(
    s: &Rwmb<F>,
    ma: &MultiplierMonoid<F>,
) -> Result<Vec<(&'static str, Morphism<F>)>, MultiplierError> {
    let pi = s.pi_maps();
    pi.pairs()
        .into_iter()
        .map(|(name, f1, f2)| {
            let (c1, c2) = components(s, f1, f2);
            Ok((name, ma.factor(&s.a, c1, c2, name)?))
        })
        .collect()
}

/// `n: L -> M(A)` with components `(n1, n2)`, and whether it is monic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseIntoMultipliers<F> {
    pub n: Morphism<F>,
    pub mono: bool,
    /// `n . p` equals the map for the pair `(piL1, piL2)`.
    pub factors_pi_l: bool,
    /// The right non-degeneracy verdict on `n1`.
    pub n1_nondegenerate: bool,
}

impl<F> BaseIntoMultipliers<F> {
    pub fn consistent(&self) -> bool {
        self.factors_pi_l && self.mono == self.n1_nondegenerate
    }
}

pub fn n_into_ma<F: Field>(
    s: &Rwmb<F>,
    b: &BaseComonoid<F>,
    ma: &MultiplierMonoid<F>,
) -> Result<BaseIntoMultipliers<F>, MultiplierError> {
    let (c1, c2) = components(s, &b.n1, &b.n2);
    let n = ma.factor(&b.l, c1, c2, "(n1, n2)")?;
    let pi = s.pi_maps();
    let (p1, p2) = components(s, &pi.pi_l1, &pi.pi_l2);
    let pil = ma.factor(&s.a, p1, p2, "(piL1, piL2)")?;
    let factors_pi_l = n.after(&b.p)? == pil;
    Ok(BaseIntoMultipliers { mono: n.is_injective(), n, factors_pi_l, n1_nondegenerate: b.n1_nondegenerate() })
}
