//! The base object `L` of a structure and its coseparable comonoid structure,
//! with the translation between `L`-comodules and firm `L`-modules.

use thiserror::Error;

use crate::dsl::{self, DslError, Environment, EquationFile, Frame};
use crate::field::Field;
use crate::graded::{curry, BraidedContext, GradedError, Morphism, Obj, Side};
use crate::linalg::{ExactMatrix, LinalgError};
use crate::report::Report;
use crate::structure::{equation_file, Rwmb, WmbError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BaseError {
    #[error("{0} is not well defined: a hypothesis of the construction fails")]
    NotWellDefined(String),
    #[error("n1 is degenerate on the right: L -> Hom(A, A) has a {kernel_dim}-dimensional kernel (dim L = {dim_l})")]
    NondegeneracyFailure { dim_l: usize, kernel_dim: usize },
    #[error("constructed base object fails: {0}")]
    ConclusionFailed(String),
    #[error("not a firm action: {0}")]
    NotFirm(String),
    #[error("not a coaction: {0}")]
    NotCoaction(String),
    #[error(transparent)]
    Wmb(#[from] WmbError),
    #[error(transparent)]
    Dsl(#[from] DslError),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

equation_file!(base_equations, "equations/base.eq");
equation_file!(coseparable_equations, "equations/coseparable.eq");

/// `L` with the projection `p: A -> L`, the actions `n1: L A -> A`,
/// `n2: A L -> A` and the comonoid `(L, delta, eps)` with retraction `mu`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseComonoid<F> {
    pub ctx: BraidedContext<F>,
    pub frame: Frame,
    pub a: Obj,
    pub l: Obj,
    pub p: Morphism<F>,
    pub n1: Morphism<F>,
    pub n2: Morphism<F>,
    pub mu: Morphism<F>,
    pub delta: Morphism<F>,
    pub eps: Morphism<F>,
}

fn along<F: Field>(surj: &Morphism<F>, f: &Morphism<F>, what: &str) -> Result<Morphism<F>, BaseError> {
    let g = surj.matrix.solve_along_surjection(&f.matrix).map_err(|e| match e {
        LinalgError::NotWellDefined | LinalgError::NotSurjective { .. } => BaseError::NotWellDefined(what.into()),
        other => BaseError::Linalg(other),
    })?;
    Ok(Morphism::new(surj.target.clone(), f.target.clone(), g)?)
}

fn run<F: Field>(file: &EquationFile, env: &Environment<F>, ctx: &BraidedContext<F>, frame: Frame) -> Report {
    dsl::run_equation_file(file, "", env, ctx, frame).into_iter().collect::<Report>().sorted()
}

/// The cokernel `p: A -> L` of `piL1 - pibarR1 . cinv`. Grades of `L` are read
/// off the (homogeneous) rows of `p`.
pub fn base_projection<F: Field>(s: &Rwmb<F>) -> Result<(Obj, Morphism<F>), BaseError> {
    let pi = s.pi_maps();
    let mut env = s.env();
    env.set("pibarR1", pi.pibar_r1.clone());
    let bar = s.eval_in(&env, "pibarR1 . cinv(A,A)")?;
    let diff = pi.pi_l1.sub(&bar)?;
    let (pm, dim) = diff.matrix.cokernel_projection();
    let grades = (0..dim)
        .map(|i| pm.row(i).first().map(|&(c, _)| s.a.grade(c)).expect("kernel vectors are nonzero"))
        .collect();
    let l = Obj::new(grades);
    let p = Morphism::new(s.a.clone(), l.clone(), pm)?;
    Ok((l, p))
}

/// Builds the base object and every induced map, re-verifying all factorization
/// squares and the comonoid laws, but not the non-degeneracy of `n1`.
pub fn construct_base<F: Field>(s: &Rwmb<F>) -> Result<BaseComonoid<F>, BaseError> {
    let (l, p) = base_projection(s)?;
    let mut env = s.env().with_object("L", l.clone());
    let pi = s.pi_maps();
    env.set("p", p.clone());
    env.set("piL1", pi.pi_l1.clone());
    env.set("piL2", pi.pi_l2.clone());
    let ev = |t: &str| s.eval_in(&env, t);
    let n1 = along(&ev("p * id(A)")?, &pi.pi_l1, "n1")?;
    let n2 = along(&ev("id(A) * p")?, &pi.pi_l2, "n2")?;
    let mu = along(&ev("p * p")?, &ev("p . piL1")?, "mu")?;
    let delta = along(&ev("p . m")?, &ev("(p * p) . t1")?, "delta")?;
    let eps = along(&p, &s.j, "eps")?;
    let b = BaseComonoid { ctx: s.ctx.clone(), frame: s.frame, a: s.a.clone(), l, p, n1, n2, mu, delta, eps };
    let mut r = b.verify_factorizations(s);
    r.extend(b.verify_coseparable().checks);
    if !r.pass() {
        return Err(BaseError::ConclusionFailed(r.summary()));
    }
    Ok(b)
}

/// [`construct_base`] followed by the right non-degeneracy test of `n1`. On
/// failure the partial result `(L, p)` remains available from [`base_projection`].
pub fn compute_base<F: Field>(s: &Rwmb<F>) -> Result<BaseComonoid<F>, BaseError> {
    let b = construct_base(s)?;
    if !b.n1_nondegenerate() {
        let k = b.n1_curried();
        return Err(BaseError::NondegeneracyFailure { dim_l: b.l.dim(), kernel_dim: b.l.dim() - k.rank() });
    }
    Ok(b)
}

/// `delta` recomputed from `delta . p . m = (p * p) . t4 . c`.
pub fn alternative_delta<F: Field>(s: &Rwmb<F>, b: &BaseComonoid<F>) -> Result<Morphism<F>, BaseError> {
    let env = b.env_over(s);
    let pm = s.eval_in(&env, "p . m")?;
    let target = s.eval_in(&env, "(p * p) . t4 . c(A,A)")?;
    along(&pm, &target, "alternative delta")
}

/// Comparison of `L` with the image of `A -> End(A)`, `a |-> piL1(a * -)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageComparison<F> {
    pub dim_l: usize,
    pub dim_image: usize,
    /// The curried `piL1`, `A -> End(A)`.
    pub curried: ExactMatrix<F>,
    /// Pivot columns of `curried`: a basis of the image.
    pub basis: ExactMatrix<F>,
    /// The map `L -> image` in that basis, with `basis . iso . p = curried`.
    pub iso: ExactMatrix<F>,
    pub isomorphic: bool,
}

/// Computes the image of `piL1` curried in its first slot independently of `p`
/// and the comparison map from `L`.
pub fn image_comparison<F: Field>(s: &Rwmb<F>, b: &BaseComonoid<F>) -> Result<ImageComparison<F>, BaseError> {
    let n = s.a.dim();
    let side = if s.frame.rev { Side::Left } else { Side::Right };
    let curried = curry(&s.pi_maps().pi_l1.matrix, n, n, side);
    let r = curried.rref();
    let basis = curried.select_cols(&r.pivots);
    let f = b.p.matrix.solve_along_surjection(&curried).map_err(|_| BaseError::NotWellDefined("L -> Im".into()))?;
    let iso = basis.solve_unique(&f)?;
    let isomorphic = iso.rows() == iso.cols() && iso.rank() == iso.rows();
    Ok(ImageComparison { dim_l: b.l.dim(), dim_image: r.rank(), curried, basis, iso, isomorphic })
}

impl<F: Field> BaseComonoid<F> {
    /// Objects `A, L` and the maps of the base.
    pub fn env(&self) -> Environment<F> {
        let mut env = Environment::new().with_object("A", self.a.clone()).with_object("L", self.l.clone());
        self.bind(&mut env);
        env
    }

    fn bind(&self, env: &mut Environment<F>) {
        for (n, f) in [
            ("p", &self.p),
            ("n1", &self.n1),
            ("n2", &self.n2),
            ("mu", &self.mu),
            ("delta", &self.delta),
            ("eps", &self.eps),
        ] {
            env.set(n, f.clone());
        }
    }

    /// The structure's environment extended by `L` and the base maps.
    pub fn env_over(&self, s: &Rwmb<F>) -> Environment<F> {
        let mut env = s.env().with_object("L", self.l.clone());
        self.bind(&mut env);
        env
    }

    pub fn eval(&self, env: &Environment<F>, text: &str) -> Result<Morphism<F>, BaseError> {
        let e = dsl::parse(text)?.in_frame(self.frame);
        Ok(dsl::eval(&e, env, &self.ctx)?)
    }

    /// The squares through `p` that define `n1, n2, mu, delta, eps`.
    pub fn verify_factorizations(&self, s: &Rwmb<F>) -> Report {
        run(base_equations(), &self.env_over(s), &self.ctx, self.frame)
    }

    /// `mu . delta = 1`, coassociativity, counit laws, bicomodule property of
    /// `delta` and associativity of `mu`.
    pub fn verify_coseparable(&self) -> Report {
        run(coseparable_equations(), &self.env(), &self.ctx, self.frame)
    }

    /// `L -> Hom(A, A)` from `n1`.
    fn n1_curried(&self) -> ExactMatrix<F> {
        let (dl, da) = (self.l.dim(), self.a.dim());
        if self.frame.rev {
            curry(&self.n1.matrix, da, dl, Side::Left)
        } else {
            curry(&self.n1.matrix, dl, da, Side::Right)
        }
    }

    pub fn n1_nondegenerate(&self) -> bool {
        self.n1_curried().is_injective()
    }

    /// `L -> Hom(A, A)` from `n2` is injective.
    pub fn n2_nondegenerate(&self) -> bool {
        let (dl, da) = (self.l.dim(), self.a.dim());
        let k = if self.frame.rev {
            curry(&self.n2.matrix, dl, da, Side::Right)
        } else {
            curry(&self.n2.matrix, da, dl, Side::Left)
        };
        k.is_injective()
    }

    fn with_x(&self, x: &Obj) -> Environment<F> {
        self.env().with_object("X", x.clone())
    }

    /// `xi = (eps * 1) . (mu * 1) . (1 * tau)` for a counital coassociative
    /// coaction `tau: X -> L X`.
    pub fn firm_action_from_coaction(&self, x: &Obj, tau: &Morphism<F>) -> Result<Morphism<F>, BaseError> {
        let mut env = self.with_x(x);
        let lx = self.eval(&env, "id(L * X)")?.source;
        if tau.source != *x || tau.target != lx {
            return Err(BaseError::NotCoaction("tau must be X -> L X".into()));
        }
        env.set("tau", tau.clone());
        let coassoc = self.eval(&env, "(delta * id(X)) . tau")? == self.eval(&env, "(id(L) * tau) . tau")?;
        let counit = self.eval(&env, "(eps * id(X)) . tau")? == Morphism::identity(x);
        if !coassoc {
            return Err(BaseError::NotCoaction("not coassociative".into()));
        }
        if !counit {
            return Err(BaseError::NotCoaction("not counital".into()));
        }
        self.eval(&env, "(eps * id(X)) . (mu * id(X)) . (id(L) * tau)")
    }

    /// The unique `tau` with `tau . xi = (1 * xi) . (delta * 1)` for a firm
    /// action `xi: L X -> X`.
    pub fn coaction_from_firm_action(&self, x: &Obj, xi: &Morphism<F>) -> Result<Morphism<F>, BaseError> {
        let mut env = self.with_x(x);
        let lx = self.eval(&env, "id(L * X)")?.source;
        if xi.source != lx || xi.target != *x {
            return Err(BaseError::NotFirm("xi must be L X -> X".into()));
        }
        env.set("xi", xi.clone());
        let mu1 = self.eval(&env, "mu * id(X)")?;
        let one_xi = self.eval(&env, "id(L) * xi")?;
        if xi.after(&mu1)? != xi.after(&one_xi)? {
            return Err(BaseError::NotFirm("not associative".into()));
        }
        // coequalizer: xi onto with kernel the image of mu1 - 1xi
        let rel = mu1.sub(&one_xi)?;
        if !xi.is_surjective() || rel.rank() + xi.rank() != lx.dim() {
            return Err(BaseError::NotFirm("xi does not coequalize mu * 1 and 1 * xi".into()));
        }
        let rhs = self.eval(&env, "(id(L) * xi) . (delta * id(X))")?;
        along(xi, &rhs, "tau").map_err(|e| match e {
            BaseError::NotWellDefined(_) => BaseError::NotFirm("no coaction induces xi".into()),
            other => other,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{gen_category_algebra, gen_group_functions, FiniteCategory};
    use crate::Q;

    #[test]
    fn arrow_category_has_two_dimensional_base() {
        let s = gen_category_algebra::<Q>(&FiniteCategory::arrow()).unwrap();
        let b = compute_base(&s).unwrap();
        assert_eq!(b.l.dim(), 2);
        assert_eq!(alternative_delta(&s, &b).unwrap(), b.delta);
    }

    #[test]
    fn group_functions_have_trivial_base() {
        let s = gen_group_functions::<Q>(&[2]).unwrap();
        let b = compute_base(&s).unwrap();
        assert_eq!(b.l.dim(), 1);
        assert_eq!(b.mu.matrix, ExactMatrix::identity(1));
    }
}
