//! Regular weak multiplier bimonoids: structure, axiom checks, completion,
//! duals, the contractions, the morphism `g` and the uniqueness comparison.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dsl::{self, Check, DslError, Environment, EquationFile, Frame};
use crate::field::Field;
use crate::graded::{BraidedContext, GradedError, Morphism, Obj, Side};
use crate::linalg::{ExactMatrix, LinalgError};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WmbError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("no solution for {0}: t1 is incompatible with m")]
    NoSolution(String),
    #[error("{which} has a {dim}-dimensional solution space: m is degenerate")]
    NonUnique { which: String, dim: usize },
    #[error("{0} is not well defined: the factorization hypothesis fails")]
    NotWellDefined(String),
    #[error("precondition mismatch: {0}")]
    PreconditionMismatch(String),
    #[error(transparent)]
    Dsl(#[from] DslError),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

macro_rules! equation_file {
    ($fn:ident, $path:literal) => {
        pub fn $fn() -> &'static $crate::dsl::EquationFile {
            static CELL: ::std::sync::OnceLock<$crate::dsl::EquationFile> = ::std::sync::OnceLock::new();
            CELL.get_or_init(|| $crate::dsl::parse_equation_file(include_str!($path)).expect(concat!("bad equation file ", $path)))
        }
    };
}
pub(crate) use equation_file;

equation_file!(wcfm_equations, "equations/wcfm.eq");
equation_file!(rwmb_equations, "equations/rwmb.eq");
equation_file!(pi_equations, "equations/pi.eq");
equation_file!(g_equations, "equations/g.eq");
equation_file!(appendix_equations, "equations/appendix.eq");

/// An object with a multiplication `m: A^2 -> A`; no unit is assumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semigroup<F> {
    pub ctx: BraidedContext<F>,
    pub a: Obj,
    pub m: Morphism<F>,
}

impl<F: Field> Semigroup<F> {
    pub fn new(ctx: BraidedContext<F>, a: Obj, m: Morphism<F>) -> Result<Self, WmbError> {
        let a2 = ctx.power(&a, 2);
        if m.source != a2 || m.target != a {
            return Err(WmbError::Shape("m must be A^2 -> A".into()));
        }
        Ok(Semigroup { ctx, a, m })
    }

    pub fn is_associative(&self) -> bool {
        let id = Morphism::identity(&self.a);
        let l = self.m.after(&self.ctx.tensor_mor(&self.m, &id));
        let r = self.m.after(&self.ctx.tensor_mor(&id, &self.m));
        matches!((l, r), (Ok(l), Ok(r)) if l == r)
    }

    pub fn is_surjective(&self) -> bool {
        self.m.is_surjective()
    }

    pub fn is_nondegenerate(&self, side: Side) -> bool {
        self.ctx.is_nondegenerate(&self.m, &self.a, &self.a, side).unwrap_or(false)
    }

    /// Recomputed flags: associativity, surjectivity, non-degeneracy on both sides.
    pub fn report(&self) -> Report {
        let mut r = Report::new();
        r.push(Check::flag("associativity", self.is_associative(), Some("m.(m*1) != m.(1*m)".into())));
        r.push(Check::flag("m_surjective", self.is_surjective(), Some("m is not surjective".into())));
        r.push(Check::flag(
            "m_nondegenerate_left",
            self.is_nondegenerate(Side::Left),
            Some("the curried map A -> Hom(A, A) of m is not injective".into()),
        ));
        r.push(Check::flag(
            "m_nondegenerate_right",
            self.is_nondegenerate(Side::Right),
            Some("the curried map A -> Hom(A, A) of m is not injective".into()),
        ));
        r
    }
}

/// Which symmetry of the theory to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Duality {
    Opposite,
    Coopposite,
    OppositeCoopposite,
}

impl std::str::FromStr for Duality {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "opposite" | "op" => Ok(Duality::Opposite),
            "coopposite" | "cop" => Ok(Duality::Coopposite),
            "opposite_coopposite" | "opposite-coopposite" | "opcop" => Ok(Duality::OppositeCoopposite),
            other => Err(format!("unknown duality {other:?}")),
        }
    }
}

/// The data `(t1, t2, t3, t4, e1, e2, j)` on `A`, read in the braided category
/// `frame` of the base context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rwmb<F> {
    pub ctx: BraidedContext<F>,
    pub frame: Frame,
    pub a: Obj,
    pub t1: Morphism<F>,
    pub t2: Morphism<F>,
    pub t3: Morphism<F>,
    pub t4: Morphism<F>,
    pub e1: Morphism<F>,
    pub e2: Morphism<F>,
    pub j: Morphism<F>,
}

/// The eight contractions `A^2 -> A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiMaps<F> {
    pub pibar_r1: Morphism<F>,
    pub pibar_r2: Morphism<F>,
    pub pibar_l1: Morphism<F>,
    pub pibar_l2: Morphism<F>,
    pub pi_l1: Morphism<F>,
    pub pi_l2: Morphism<F>,
    pub pi_r1: Morphism<F>,
    pub pi_r2: Morphism<F>,
}

impl<F: Field> PiMaps<F> {
    /// Named pairs `(first, second)` in the order barR, barL, L, R.
    pub fn pairs(&self) -> [(&'static str, &Morphism<F>, &Morphism<F>); 4] {
        [
            ("pibar_r", &self.pibar_r1, &self.pibar_r2),
            ("pibar_l", &self.pibar_l1, &self.pibar_l2),
            ("pi_l", &self.pi_l1, &self.pi_l2),
            ("pi_r", &self.pi_r1, &self.pi_r2),
        ]
    }
}

/// Verdict of comparing two structures that share `A`, the `t`'s and `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniquenessReport {
    pub e1_equal: bool,
    pub e2_equal: bool,
    pub g_equal: bool,
    pub j_equal: bool,
    /// All four equalities agree.
    pub consistent: bool,
    /// Both `dhat1` maps are surjective, so all four must hold.
    pub forced: bool,
}

impl UniquenessReport {
    pub fn pass(&self) -> bool {
        let all = self.e1_equal && self.e2_equal && self.g_equal && self.j_equal;
        self.consistent && (!self.forced || all)
    }
}

impl<F: Field> Rwmb<F> {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        ctx: BraidedContext<F>,
        a: Obj,
        t1: Morphism<F>,
        t2: Morphism<F>,
        t3: Morphism<F>,
        t4: Morphism<F>,
        e1: Morphism<F>,
        e2: Morphism<F>,
        j: Morphism<F>,
    ) -> Result<Self, WmbError> {
        ctx.check_object(&a)?;
        let a2 = ctx.power(&a, 2);
        for (name, f) in [("t1", &t1), ("t2", &t2), ("t3", &t3), ("t4", &t4), ("e1", &e1), ("e2", &e2)] {
            if f.source != a2 || f.target != a2 {
                return Err(WmbError::Shape(format!("{name} must be A^2 -> A^2")));
            }
        }
        if j.source != a || j.target != Obj::unit() {
            return Err(WmbError::Shape("j must be A -> I".into()));
        }
        Ok(Rwmb { ctx, frame: Frame::BASE, a, t1, t2, t3, t4, e1, e2, j })
    }

    pub fn a2(&self) -> Obj {
        self.ctx.power(&self.a, 2)
    }

    /// Objects and the named morphisms `t1..t4, e1, e2, j, m`.
    pub fn env(&self) -> Environment<F> {
        let mut env = Environment::new().with_object("A", self.a.clone());
        for (n, f) in [
            ("t1", &self.t1),
            ("t2", &self.t2),
            ("t3", &self.t3),
            ("t4", &self.t4),
            ("e1", &self.e1),
            ("e2", &self.e2),
            ("j", &self.j),
        ] {
            env.set(n, f.clone());
        }
        env.define(&self.ctx, "m", "(j * id(A)) . t1", self.frame).expect("well-typed");
        env
    }

    /// Evaluates an expression over [`Rwmb::env`] in the structure's frame.
    pub fn eval(&self, text: &str) -> Result<Morphism<F>, WmbError> {
        self.eval_in(&self.env(), text)
    }

    pub fn eval_in(&self, env: &Environment<F>, text: &str) -> Result<Morphism<F>, WmbError> {
        let e = dsl::parse(text)?.in_frame(self.frame);
        Ok(dsl::eval(&e, env, &self.ctx)?)
    }

    /// The multiplication `(j * id) . t1`.
    pub fn m(&self) -> Morphism<F> {
        self.env().get("m").expect("defined").clone()
    }

    pub fn semigroup(&self) -> Semigroup<F> {
        Semigroup { ctx: self.ctx.clone(), a: self.a.clone(), m: self.m() }
    }

    fn run(&self, file: &EquationFile, prefix: &str, env: &Environment<F>, frame: Frame) -> Vec<Check> {
        dsl::run_equation_file(file, prefix, env, &self.ctx, self.frame.then(frame))
    }

    /// Axioms of a weakly counital fusion morphism `(t, e, j)` read in `frame`
    /// relative to the structure's own category.
    pub fn check_wcfm(&self, t: &Morphism<F>, e: &Morphism<F>, frame: Frame, prefix: &str) -> Report {
        let mut env = Environment::new().with_object("A", self.a.clone());
        env.set("t", t.clone());
        env.set("e", e.clone());
        env.set("j", self.j.clone());
        self.run(wcfm_equations(), prefix, &env, frame).into_iter().collect()
    }

    /// Every defining condition, individually reported.
    pub fn check_rwmb(&self) -> Report {
        let mut r = Report::new();
        let sg = self.semigroup().report();
        r.extend(sg.checks.into_iter().filter(|c| c.name != "associativity"));
        r.extend(self.run(rwmb_equations(), "", &self.env(), Frame::BASE));
        let parts = [
            ("fusion_1/", &self.t1, &self.e1, Frame::BASE),
            ("fusion_2/", &self.t2, &self.e2, Frame::REV),
            ("fusion_3/", &self.t3, &self.e2, Frame::BAR),
            ("fusion_4/", &self.t4, &self.e1, Frame::BAR_REV),
        ];
        for (prefix, t, e, frame) in parts {
            r.extend(self.check_wcfm(t, e, frame, prefix).checks);
        }
        r.sorted()
    }

    /// `cinv . f . c` in the structure's frame.
    fn conjugate(&self, f: &Morphism<F>) -> Morphism<F> {
        let mut env = Environment::new().with_object("A", self.a.clone());
        env.set("f", f.clone());
        self.eval_in(&env, "cinv(A,A) . f . c(A,A)").expect("well-typed")
    }

    /// The image under one of the three symmetries; lives in the transformed category.
    pub fn dualize(&self, which: Duality) -> Rwmb<F> {
        let k = |f: &Morphism<F>| self.conjugate(f);
        let (t1, t2, t3, t4, e1, e2, frame) = match which {
            Duality::OppositeCoopposite => (
                self.t2.clone(),
                self.t1.clone(),
                self.t4.clone(),
                self.t3.clone(),
                self.e2.clone(),
                self.e1.clone(),
                Frame::REV,
            ),
            Duality::Opposite => {
                (k(&self.t3), k(&self.t4), k(&self.t1), k(&self.t2), k(&self.e2), k(&self.e1), Frame::BAR_REV)
            }
            Duality::Coopposite => {
                (k(&self.t4), k(&self.t3), k(&self.t2), k(&self.t1), k(&self.e1), k(&self.e2), Frame::BAR)
            }
        };
        Rwmb {
            ctx: self.ctx.clone(),
            frame: self.frame.then(frame),
            a: self.a.clone(),
            t1,
            t2,
            t3,
            t4,
            e1,
            e2,
            j: self.j.clone(),
        }
    }

    /// The eight contractions.
    pub fn pi_maps(&self) -> PiMaps<F> {
        let env = self.lets(pi_equations(), self.env());
        let g = |n: &str| env.get(n).expect("defined").clone();
        PiMaps {
            pibar_r1: g("pibarR1"),
            pibar_r2: g("pibarR2"),
            pibar_l1: g("pibarL1"),
            pibar_l2: g("pibarL2"),
            pi_l1: g("piL1"),
            pi_l2: g("piL2"),
            pi_r1: g("piR1"),
            pi_r2: g("piR2"),
        }
    }

    /// Each pair of contractions satisfies the multiplier compatibility.
    pub fn check_pi_components(&self) -> Report {
        self.run(pi_equations(), "", &self.env(), Frame::BASE).into_iter().collect()
    }

    fn lets(&self, file: &EquationFile, mut env: Environment<F>) -> Environment<F> {
        for (name, e) in &file.lets {
            let f = dsl::eval(&e.in_frame(self.frame), &env, &self.ctx).expect("well-typed definitions");
            env.set(name, f);
        }
        env
    }

    /// The unique `g` with `g . (1 * m) = (pibarR2 * 1) . (1 * t1)`, with its
    /// properties reported.
    pub fn g_morphism(&self) -> Result<(Morphism<F>, Report), WmbError> {
        let env = self.lets(g_equations(), self.env());
        let one_m = self.eval_in(&env, "id(A) * m")?;
        let rhs = self.eval_in(&env, "(pibarR2 * id(A)) . (id(A) * t1)")?;
        let g = one_m.matrix.solve_along_surjection(&rhs.matrix).map_err(|e| match e {
            LinalgError::NotWellDefined => WmbError::NotWellDefined("g".into()),
            other => WmbError::Linalg(other),
        })?;
        let g = Morphism::new(self.a2(), self.a2(), g)?;
        let mut env = self.env();
        env.set("g", g.clone());
        let report = self.run(g_equations(), "", &env, Frame::BASE).into_iter().collect();
        Ok((g, report))
    }

    /// `d1 = (m*1).(1*c).(t1*1).(1*cinv)` and `d2 = (1*m).(c*1).(1*t2).(cinv*1)`, both `A^3 -> A^2`.
    pub fn d_maps(&self) -> (Morphism<F>, Morphism<F>) {
        let env = self.env();
        let d1 = self
            .eval_in(&env, "(m * id(A)) . (id(A) * c(A,A)) . (t1 * id(A)) . (id(A) * cinv(A,A))")
            .expect("well-typed");
        let d2 = self
            .eval_in(&env, "(id(A) * m) . (c(A,A) * id(A)) . (id(A) * t2) . (cinv(A,A) * id(A))")
            .expect("well-typed");
        (d1, d2)
    }

    /// `dhat_i = ehat_i . d_i`, where `e_i = echeck_i . ehat_i` is the pivot splitting.
    pub fn dhat_maps(&self) -> Result<(Morphism<F>, Morphism<F>), WmbError> {
        let (d1, d2) = self.d_maps();
        let (h1, _) = self.e1.matrix.split_idempotent()?;
        let (h2, _) = self.e2.matrix.split_idempotent()?;
        let dh1 = h1.matmul(&d1.matrix)?;
        let dh2 = h2.matmul(&d2.matrix)?;
        let o1 = image_object(&self.e1.matrix, &self.a2());
        let o2 = image_object(&self.e2.matrix, &self.a2());
        Ok((Morphism::new(d1.source.clone(), o1, dh1)?, Morphism::new(d2.source.clone(), o2, dh2)?))
    }

    /// Both `dhat` maps are surjective.
    pub fn dhat_surjective(&self) -> Result<(bool, bool), WmbError> {
        let (a, b) = self.dhat_maps()?;
        Ok((a.is_surjective(), b.is_surjective()))
    }

    /// The derived-identity battery.
    pub fn appendix_suite(&self) -> Report {
        let env = self.env();
        self.run(appendix_equations(), "", &env, Frame::BASE).into_iter().collect::<Report>().sorted()
    }

    /// Compares `self` with `other` along the equivalent conditions
    /// `e1 = e1'`, `e2 = e2'`, `g = g'`, `j = j'`.
    pub fn check_uniqueness_equivalences(&self, other: &Rwmb<F>) -> Result<UniquenessReport, WmbError> {
        if self.a != other.a || self.frame != other.frame {
            return Err(WmbError::PreconditionMismatch("different objects or categories".into()));
        }
        if self.t1 != other.t1 || self.t2 != other.t2 || self.t3 != other.t3 || self.t4 != other.t4 {
            return Err(WmbError::PreconditionMismatch("the t's differ".into()));
        }
        if self.m() != other.m() {
            return Err(WmbError::PreconditionMismatch("m differs from m'".into()));
        }
        let g = self.g_morphism().ok().map(|x| x.0);
        let g2 = other.g_morphism().ok().map(|x| x.0);
        let g_equal = matches!((&g, &g2), (Some(x), Some(y)) if x == y);
        let e1_equal = self.e1 == other.e1;
        let e2_equal = self.e2 == other.e2;
        let j_equal = self.j == other.j;
        let flags = [e1_equal, e2_equal, g_equal, j_equal];
        let consistent = flags.iter().all(|&x| x) || flags.iter().all(|&x| !x);
        let surj = |s: &Rwmb<F>| s.dhat_surjective().map(|(a, _)| a).unwrap_or(false);
        let forced = surj(self) && surj(other);
        Ok(UniquenessReport { e1_equal, e2_equal, g_equal, j_equal, consistent, forced })
    }
}

fn pivot_grades(idx: &[usize], x: &Obj) -> Vec<crate::graded::Grade> {
    idx.iter().map(|&i| x.grade(i)).collect()
}

/// The object carried by the pivot splitting of an idempotent on `x`.
pub fn image_object<F: Field>(e: &ExactMatrix<F>, x: &Obj) -> Obj {
    let r = e.rref();
    Obj::new(pivot_grades(&r.pivots, x))
}

/// Solves `(1 * m) . (X * 1) = k` for `X: A^2 -> A^2`.
fn solve_left_slot<F: Field>(sg: &Semigroup<F>, k: &Morphism<F>, which: &str) -> Result<Morphism<F>, WmbError> {
    let n = sg.a.dim();
    let n2 = n * n;
    let one_m = sg.ctx.tensor_mor(&Morphism::identity(&sg.a), &sg.m);
    // N[(c, r), y] = (1*m)[r, y*n + c]
    let nmat = ExactMatrix::from_triplets(
        n * n2,
        n2,
        one_m.matrix.entries().map(|(r, col, v)| ((col % n) * n2 + r, col / n, v.clone())),
    )?;
    let kk = ExactMatrix::from_triplets(
        n * n2,
        n2,
        k.matrix.entries().map(|(r, col, v)| ((col % n) * n2 + r, col / n, v.clone())),
    )?;
    let x = match nmat.solve(&kk) {
        Ok((x, 0)) => x,
        Ok((_, dim)) => return Err(WmbError::NonUnique { which: which.into(), dim }),
        Err(LinalgError::NoSolution) => return Err(WmbError::NoSolution(which.into())),
        Err(e) => return Err(e.into()),
    };
    let a2 = sg.ctx.power(&sg.a, 2);
    Morphism::new(a2.clone(), a2, x).map_err(|_| WmbError::NoSolution(which.into()))
}

/// Recovers `t2, t3, t4` from `m` and `t1` through the three compatibility
/// conditions with `t1`.
pub fn complete_from_t1<F: Field>(
    sg: &Semigroup<F>,
    t1: &Morphism<F>,
) -> Result<(Morphism<F>, Morphism<F>, Morphism<F>), WmbError> {
    let a2 = sg.ctx.power(&sg.a, 2);
    if t1.source != a2 || t1.target != a2 {
        return Err(WmbError::Shape("t1 must be A^2 -> A^2".into()));
    }
    let mut env = Environment::new().with_object("A", sg.a.clone());
    env.set("m", sg.m.clone());
    env.set("t1", t1.clone());
    let ev = |s: &str| -> Result<Morphism<F>, WmbError> { Ok(dsl::eval(&dsl::parse(s)?, &env, &sg.ctx)?) };
    let k12 = ev("(m * id(A)) . (id(A) * t1)")?;
    let k13 = ev("(id(A) * m) . (id(A) * cinv(A,A)) . (t1 * id(A)) . (id(A) * c(A,A))")?;
    let k14 = ev("(m * id(A)) . (cinv(A,A) * id(A)) . (id(A) * t1)")?;
    let t2 = solve_left_slot(sg, &k12, "c12")?;
    let t3 = solve_left_slot(sg, &k13, "c13")?;
    let t4 = solve_left_slot(sg, &k14, "c14")?;
    Ok((t2, t3, t4))
}
