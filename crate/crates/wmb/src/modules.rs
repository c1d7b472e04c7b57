//! Modules over the semigroup `A`, their `L`-bicomodule structure, and the
//! monoidal product `V o W` through the splitting of `s`.

use thiserror::Error;

use crate::base::{BaseComonoid, BaseError};
use crate::dsl::{self, Check, DslError, Environment};
use crate::field::Field;
use crate::graded::{curry, GradedError, Morphism, Obj, Side};
use crate::linalg::{ExactMatrix, LinalgError};
use crate::report::Report;
use crate::structure::{image_object, Rwmb, WmbError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("action is not associative")]
    NotAssociative,
    #[error("action is not surjective")]
    NotSurjective,
    #[error("action is degenerate on the left")]
    Degenerate,
    #[error("{0} is not well defined: a hypothesis of the construction fails")]
    NotWellDefined(String),
    #[error("s is not idempotent")]
    NotIdempotent,
    #[error("hypothesis violated: {0} is not surjective")]
    DHatNotEpi(String),
    #[error("not a module morphism: {0}")]
    NotModuleMorphism(String),
    #[error("coaction laws fail: {0}")]
    Coaction(String),
    #[error(transparent)]
    Base(#[from] BaseError),
    #[error(transparent)]
    Wmb(#[from] WmbError),
    #[error(transparent)]
    Dsl(#[from] DslError),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// An object `V` with an associative, surjective, left non-degenerate action
/// `v: A V -> V`, and the derived coactions `tau: V -> L V`, `taubar: V -> V L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AModule<F> {
    pub obj: Obj,
    pub action: Morphism<F>,
    pub tau: Morphism<F>,
    pub taubar: Morphism<F>,
}

/// `V o W` as the pivot image of `s`, with the action `b` and the auxiliary `b0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleTensor<F> {
    pub s: Morphism<F>,
    pub shat: Morphism<F>,
    pub scheck: Morphism<F>,
    pub b0: Morphism<F>,
    /// `(V o W, b)` with its derived coactions.
    pub module: AModule<F>,
    pub report: Report,
}

/// A structure with its base, the coactions on `A` and the maps `d1, d2`,
/// shared by every module construction.
#[derive(Debug, Clone)]
pub struct ModuleCategory<F> {
    pub s: Rwmb<F>,
    pub base: BaseComonoid<F>,
    pub tau_a: Morphism<F>,
    pub taubar_a: Morphism<F>,
    pub d1: Morphism<F>,
    pub d2: Morphism<F>,
    pub dhat_surjective: (bool, bool),
}

fn along<F: Field>(surj: &Morphism<F>, f: &Morphism<F>, what: &str) -> Result<Morphism<F>, ModuleError> {
    let g = surj.matrix.solve_along_surjection(&f.matrix).map_err(|e| match e {
        LinalgError::NotWellDefined | LinalgError::NotSurjective { .. } => ModuleError::NotWellDefined(what.into()),
        other => ModuleError::Linalg(other),
    })?;
    Ok(Morphism::new(surj.target.clone(), f.target.clone(), g)?)
}

/// The left and right coactions of `L` on `A`.
pub fn coactions_on_a<F: Field>(
    s: &Rwmb<F>,
    b: &BaseComonoid<F>,
) -> Result<(Morphism<F>, Morphism<F>), ModuleError> {
    let env = b.env_over(s);
    let m = s.m();
    let tau = along(&m, &s.eval_in(&env, "(p * id(A)) . t1")?, "tau on A")?;
    let taubar = along(&m, &s.eval_in(&env, "(id(A) * p) . t4 . c(A,A)")?, "taubar on A")?;
    Ok((tau, taubar))
}

impl<F: Field> ModuleCategory<F> {
    pub fn new(s: &Rwmb<F>, base: &BaseComonoid<F>) -> Result<Self, ModuleError> {
        let (tau_a, taubar_a) = coactions_on_a(s, base)?;
        let (d1, d2) = s.d_maps();
        let dhat_surjective = s.dhat_surjective()?;
        let cat = ModuleCategory { s: s.clone(), base: base.clone(), tau_a, taubar_a, d1, d2, dhat_surjective };
        let laws = cat.bicomodule_laws(&cat.regular_parts());
        if !laws.pass() {
            return Err(ModuleError::Coaction(format!("on A: {}", laws.summary())));
        }
        Ok(cat)
    }

    fn regular_parts(&self) -> AModule<F> {
        AModule {
            obj: self.s.a.clone(),
            action: self.s.m(),
            tau: self.tau_a.clone(),
            taubar: self.taubar_a.clone(),
        }
    }

    /// Structure maps, base maps, `tauA, taubarA, d1, d2`.
    pub fn env(&self) -> Environment<F> {
        let mut env = self.base.env_over(&self.s);
        env.set("tauA", self.tau_a.clone());
        env.set("taubarA", self.taubar_a.clone());
        env.set("d1", self.d1.clone());
        env.set("d2", self.d2.clone());
        env
    }

    pub fn eval(&self, env: &Environment<F>, text: &str) -> Result<Morphism<F>, ModuleError> {
        let e = dsl::parse(text)?.in_frame(self.s.frame);
        Ok(dsl::eval(&e, env, &self.s.ctx)?)
    }

    fn check(&self, env: &Environment<F>, name: &str, lhs: &str, rhs: &str) -> Check {
        match (self.eval(env, lhs), self.eval(env, rhs)) {
            (Ok(l), Ok(r)) => Check::compare(name, &l, &r),
            (Err(e), _) | (_, Err(e)) => Check::failed(name, e),
        }
    }

    /// Binds a module: object, action, `tau`, `taubar` under the given names.
    fn bind(env: &mut Environment<F>, names: [&str; 4], m: &AModule<F>) {
        env.objects.insert(names[0].to_string(), m.obj.clone());
        env.set(names[1], m.action.clone());
        env.set(names[2], m.tau.clone());
        env.set(names[3], m.taubar.clone());
    }

    /// Coassociativity, counitality and commutation of the coactions.
    fn bicomodule_laws(&self, m: &AModule<F>) -> Report {
        let mut env = self.env();
        Self::bind(&mut env, ["X", "act", "tauX", "taubarX"], m);
        let mut r = Report::new();
        for (n, l, rh) in [
            ("tau_coassociative", "(delta * id(X)) . tauX", "(id(L) * tauX) . tauX"),
            ("tau_counital", "(eps * id(X)) . tauX", "id(X)"),
            ("taubar_coassociative", "(id(X) * delta) . taubarX", "(taubarX * id(L)) . taubarX"),
            ("taubar_counital", "(id(X) * eps) . taubarX", "id(X)"),
            ("coactions_commute", "(tauX * id(L)) . taubarX", "(id(L) * taubarX) . tauX"),
        ] {
            r.push(self.check(&env, n, l, rh));
        }
        r
    }

    fn nondegenerate_left(&self, v: &Morphism<F>, x: &Obj) -> bool {
        let da = self.s.a.dim();
        let k = if self.s.frame.rev {
            curry(&v.matrix, x.dim(), da, Side::Right)
        } else {
            curry(&v.matrix, da, x.dim(), Side::Left)
        };
        k.is_injective()
    }

    /// Verifies the module axioms for `v: A V -> V` and derives both coactions.
    pub fn make_module(&self, obj: &Obj, v: &Morphism<F>) -> Result<AModule<F>, ModuleError> {
        let mut env = self.env().with_object("V", obj.clone());
        let av = self.eval(&env, "id(A * V)")?.source;
        if v.source != av || v.target != *obj {
            return Err(ModuleError::Graded(GradedError::ObjectMismatch("action must be A V -> V".into())));
        }
        env.set("v", v.clone());
        if self.eval(&env, "v . (m * id(V))")? != self.eval(&env, "v . (id(A) * v)")? {
            return Err(ModuleError::NotAssociative);
        }
        if !v.is_surjective() {
            return Err(ModuleError::NotSurjective);
        }
        if !self.nondegenerate_left(v, obj) {
            return Err(ModuleError::Degenerate);
        }
        let tau = along(v, &self.eval(&env, "(id(L) * v) . (tauA * id(V))")?, "tau on V")?;
        let taubar = along(v, &self.eval(&env, "(v * id(L)) . (id(A) * c(L,V)) . (taubarA * id(V))")?, "taubar on V")?;
        let m = AModule { obj: obj.clone(), action: v.clone(), tau, taubar };
        let laws = self.bicomodule_laws(&m);
        if !laws.pass() {
            return Err(ModuleError::Coaction(laws.summary()));
        }
        Ok(m)
    }

    /// `A` acting on itself by `m`.
    pub fn regular_module(&self) -> Result<AModule<F>, ModuleError> {
        self.make_module(&self.s.a, &self.s.m())
    }

    /// `L` with the action `p . n2`.
    pub fn base_module(&self) -> Result<AModule<F>, ModuleError> {
        let v = self.base.p.after(&self.base.n2)?;
        self.make_module(&self.base.l, &v)
    }

    /// `f . v = v' . (1 * f)`.
    pub fn is_module_morphism(&self, m: &AModule<F>, n: &AModule<F>, f: &Morphism<F>) -> Result<bool, ModuleError> {
        let mut env = self.env();
        Self::bind(&mut env, ["V", "v", "tauV", "taubarV"], m);
        Self::bind(&mut env, ["W", "w", "tauW", "taubarW"], n);
        env.set("f", f.clone());
        if f.source != m.obj || f.target != n.obj {
            return Ok(false);
        }
        Ok(self.eval(&env, "f . v")? == self.eval(&env, "w . (id(A) * f)")?)
    }

    /// `f` commutes with both coactions.
    pub fn is_bicomodule_morphism(&self, m: &AModule<F>, n: &AModule<F>, f: &Morphism<F>) -> Result<bool, ModuleError> {
        let mut env = self.env();
        Self::bind(&mut env, ["V", "v", "tauV", "taubarV"], m);
        Self::bind(&mut env, ["W", "w", "tauW", "taubarW"], n);
        env.set("f", f.clone());
        let left = self.eval(&env, "(id(L) * f) . tauV")? == self.eval(&env, "tauW . f")?;
        let right = self.eval(&env, "(f * id(L)) . taubarV")? == self.eval(&env, "taubarW . f")?;
        Ok(left && right)
    }

    fn pair_env(&self, m: &AModule<F>, n: &AModule<F>) -> Environment<F> {
        let mut env = self.env();
        Self::bind(&mut env, ["V", "v", "tauV", "taubarV"], m);
        Self::bind(&mut env, ["W", "w", "tauW", "taubarW"], n);
        env
    }

    /// `s = (1 * eps * 1) . (1 * mu * 1) . (taubar * tau)` on `V W`.
    pub fn s_idempotent(&self, m: &AModule<F>, n: &AModule<F>) -> Result<Morphism<F>, ModuleError> {
        let env = self.pair_env(m, n);
        self.eval(&env, "(id(V) * eps * id(W)) . (id(V) * mu * id(W)) . (taubarV * tauW)")
    }

    /// Dimension of the cotensor product: the kernel of `taubar * 1 - 1 * tau` on `V W`.
    pub fn cotensor_dim(&self, m: &AModule<F>, n: &AModule<F>) -> Result<usize, ModuleError> {
        let env = self.pair_env(m, n);
        let d = self.eval(&env, "taubarV * id(W)")?.sub(&self.eval(&env, "id(V) * tauW")?)?;
        Ok(d.source.dim() - d.rank())
    }

    pub fn module_tensor(&self, m: &AModule<F>, n: &AModule<F>) -> Result<ModuleTensor<F>, ModuleError> {
        self.module_tensor_split(m, n, None)
    }

    /// [`ModuleCategory::module_tensor`] with an optional explicit splitting
    /// `(shat, scheck)` of `s` in place of the pivot splitting.
    pub fn module_tensor_split(
        &self,
        m: &AModule<F>,
        n: &AModule<F>,
        splitting: Option<(Morphism<F>, Morphism<F>)>,
    ) -> Result<ModuleTensor<F>, ModuleError> {
        match self.dhat_surjective {
            (false, _) => return Err(ModuleError::DHatNotEpi("dhat1".into())),
            (_, false) => return Err(ModuleError::DHatNotEpi("dhat2".into())),
            _ => {}
        }
        let mut env = self.pair_env(m, n);
        let s = self.s_idempotent(m, n)?;
        if s.after(&s)? != s {
            return Err(ModuleError::NotIdempotent);
        }
        let (shat, scheck) = match splitting {
            Some((h, c)) => {
                if h.after(&c)? != Morphism::identity(&h.target) || c.after(&h)? != s {
                    return Err(ModuleError::NotWellDefined("the given splitting of s".into()));
                }
                (h, c)
            }
            None => {
                let (h, c) = s.matrix.split_idempotent()?;
                let p = image_object(&s.matrix, &s.source);
                (Morphism::new(s.source.clone(), p.clone(), h)?, Morphism::new(p, s.source.clone(), c)?)
            }
        };
        env.objects.insert("P".into(), shat.target.clone());
        env.set("s", s.clone());
        env.set("shat", shat.clone());
        env.set("scheck", scheck.clone());
        env.set("b2", self.eval(&env, "(v * w) . (id(A) * c(A,V) * id(W))")?);
        let epi0 = self.eval(&env, "(id(A) * v * w) . (id(A^2) * c(A,V) * id(W))")?;
        let b0 = along(&epi0, &self.eval(&env, "b2 . (d1 * id(V * W))")?, "b0")?;
        env.set("b0", b0.clone());
        let b = along(&self.eval(&env, "id(A) * shat")?, &self.eval(&env, "shat . b0")?, "b")?;
        env.set("b", b.clone());
        let mut report = Report::new();
        for (name, l, r) in [
            ("s_idempotent", "s . s", "s"),
            ("splitting_retraction", "shat . scheck", "id(P)"),
            ("splitting_factors_s", "scheck . shat", "s"),
            ("e1_square", "s . b2", "b2 . (e1 * id(V * W))"),
            ("e2_square", "b2 . (e2 * id(V * W))", "b2 . (id(A^2) * s)"),
            ("b0_absorbs_s_input", "b0 . (id(A) * s)", "b0"),
            ("b0_absorbs_s_output", "s . b0", "b0"),
            ("b0_d2_square", "b2 . (d2 * id(V * W))", "b2 . (id(A^2) * b0)"),
            ("b0_associative", "b0 . (m * id(V * W))", "b0 . (id(A) * b0)"),
            ("b_through_shat", "b . (id(A) * shat)", "shat . b0"),
            (
                "b_via_t1",
                "b . (id(A) * shat) . (id(A * V) * w) . (id(A) * c(A,V) * id(W))",
                "shat . b2 . (t1 * id(V * W))",
            ),
            (
                "b_via_t4",
                "b . (id(A) * shat) . (id(A) * v * id(W))",
                "shat . b2 . (t4 * id(V * W)) . (c(A,A) * id(V * W))",
            ),
        ] {
            report.push(self.check(&env, name, l, r));
        }
        let module = self.make_module(&shat.target, &b)?;
        // U is strict monoidal: the derived coactions are the bicomodule tensor ones
        env.set("tauP", module.tau.clone());
        env.set("taubarP", module.taubar.clone());
        report.push(self.check(&env, "tau_of_product", "tauP", "(id(L) * shat) . (tauV * id(W)) . scheck"));
        report.push(self.check(&env, "taubar_of_product", "taubarP", "(shat * id(L)) . (id(V) * taubarW) . scheck"));
        Ok(ModuleTensor { s, shat, scheck, b0, module, report: report.sorted() })
    }

    /// `shat' . (f * g) . scheck`, after checking that `f` and `g` are module maps.
    #[allow(clippy::too_many_arguments)]
    pub fn tensor_module_morphism(
        &self,
        (m, m2): (&AModule<F>, &AModule<F>),
        (n, n2): (&AModule<F>, &AModule<F>),
        f: &Morphism<F>,
        g: &Morphism<F>,
        mn: &ModuleTensor<F>,
        mn2: &ModuleTensor<F>,
    ) -> Result<Morphism<F>, ModuleError> {
        if !self.is_module_morphism(m, m2, f)? {
            return Err(ModuleError::NotModuleMorphism("f".into()));
        }
        if !self.is_module_morphism(n, n2, g)? {
            return Err(ModuleError::NotModuleMorphism("g".into()));
        }
        for (x, y, h, name) in [(m, m2, f, "f"), (n, n2, g, "g")] {
            if !self.is_bicomodule_morphism(x, y, h)? {
                return Err(ModuleError::Coaction(format!("module map {name} is not a bicomodule map")));
            }
        }
        let fg = self.eval_pair(f, g)?;
        let h = mn2.shat.after(&fg)?.after(&mn.scheck)?;
        if !self.is_module_morphism(&mn.module, &mn2.module, &h)? {
            return Err(ModuleError::NotModuleMorphism("f o g".into()));
        }
        Ok(h)
    }

    fn eval_pair(&self, f: &Morphism<F>, g: &Morphism<F>) -> Result<Morphism<F>, ModuleError> {
        let mut env = self.env();
        env.set("f", f.clone());
        env.set("g", g.clone());
        self.eval(&env, "f * g")
    }

    /// Unit and associativity comparisons are module isomorphisms, each tensor
    /// passes its checks, and `rank(s)` matches the cotensor dimension.
    pub fn verify_monoidality(
        &self,
        m: &AModule<F>,
        n: &AModule<F>,
        p: &AModule<F>,
    ) -> Result<Report, ModuleError> {
        let mut r = Report::new();
        let mn = self.module_tensor(m, n)?;
        let np = self.module_tensor(n, p)?;
        let mn_p = self.module_tensor(&mn.module, p)?;
        let m_np = self.module_tensor(m, &np.module)?;
        for (pre, t) in [("vw/", &mn), ("wz/", &np), ("vw_z/", &mn_p), ("v_wz/", &m_np)] {
            r.absorb(pre, t.report.clone());
        }
        r.push(Check::flag(
            "s_rank_is_cotensor_dim",
            mn.s.rank() == self.cotensor_dim(m, n)?,
            Some("rank(s) differs from the cotensor dimension".into()),
        ));
        // both bracketings embed in V W Z; compare through the common image
        let mut env = self.env();
        env.objects.insert("V".into(), m.obj.clone());
        env.objects.insert("W".into(), n.obj.clone());
        env.objects.insert("Z".into(), p.obj.clone());
        env.objects.insert("P".into(), mn.module.obj.clone());
        env.objects.insert("R".into(), np.module.obj.clone());
        env.set("mn_check", mn.scheck.clone());
        env.set("np_check", np.scheck.clone());
        env.set("np_hat", np.shat.clone());
        env.set("left_check", mn_p.scheck.clone());
        env.set("right_check", m_np.scheck.clone());
        env.set("right_hat", m_np.shat.clone());
        let emb_l = self.eval(&env, "(mn_check * id(Z)) . left_check")?;
        let emb_r = self.eval(&env, "(id(V) * np_check) . right_check")?;
        let phi = self.eval(&env, "right_hat . (id(V) * np_hat) . (mn_check * id(Z)) . left_check")?;
        r.push(Check::flag(
            "associator_invertible",
            phi.source.dim() == phi.target.dim() && phi.is_injective(),
            Some("the comparison (V o W) o Z -> V o (W o Z) is not invertible".into()),
        ));
        r.push(Check::compare("associator_respects_embeddings", &emb_r.after(&phi)?, &emb_l));
        r.push(Check::flag(
            "associator_module_map",
            self.is_module_morphism(&mn_p.module, &m_np.module, &phi)?,
            Some("actions on (V o W) o Z and V o (W o Z) differ".into()),
        ));
        r.push(Check::flag(
            "associator_bicomodule_map",
            self.is_bicomodule_morphism(&mn_p.module, &m_np.module, &phi)?,
            None,
        ));
        r.extend(self.unit_checks(m)?.checks);
        Ok(r.sorted())
    }

    /// `L o V = V` and `V o L = V` with the canonical splittings; the actions
    /// obtained are `v`, and the comparisons from the pivot splittings are module maps.
    pub fn unit_checks(&self, m: &AModule<F>) -> Result<Report, ModuleError> {
        let mut r = Report::new();
        let lm = self.base_module()?;
        let mut env = self.env();
        Self::bind(&mut env, ["V", "v", "tauV", "taubarV"], m);
        let lhat = self.eval(&env, "(eps * id(V)) . (mu * id(V)) . (id(L) * tauV)")?;
        let rhat = self.eval(&env, "(id(V) * eps) . (id(V) * mu) . (taubarV * id(L))")?;
        for (pre, left, hat, check) in
            [("left_unit/", true, lhat, m.tau.clone()), ("right_unit/", false, rhat, m.taubar.clone())]
        {
            let (a, b) = if left { (&lm, m) } else { (m, &lm) };
            let canon = self.module_tensor_split(a, b, Some((hat, check)));
            let pivot = self.module_tensor(a, b)?;
            match canon {
                Ok(t) => {
                    r.push(Check::compare(&format!("{pre}canonical_action_is_v"), &t.module.action, &m.action));
                    let cmp = t.shat.after(&pivot.scheck)?;
                    r.push(Check::flag(
                        &format!("{pre}comparison_module_map"),
                        cmp.is_injective()
                            && cmp.source.dim() == cmp.target.dim()
                            && self.is_module_morphism(&pivot.module, m, &cmp)?,
                        Some("the unit comparison is not an invertible module map".into()),
                    ));
                    r.absorb(pre, t.report);
                }
                Err(e) => r.push(Check::failed(&format!("{pre}canonical_splitting"), e)),
            }
        }
        Ok(r)
    }
}

/// Rank by plain dense elimination, independent of the sparse routines.
pub fn dense_rank<F: Field>(m: &ExactMatrix<F>) -> usize {
    let mut a = m.to_dense();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, piv);
        let inv = a[rank][c].inv().expect("nonzero pivot");
        for i in 0..rows {
            if i != rank && !a[i][c].is_zero() {
                let f = a[i][c].clone() * inv.clone();
                for k in c..cols {
                    let t = a[rank][k].clone() * f.clone();
                    a[i][k] = a[i][k].clone() - t;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::compute_base;
    use crate::gen::{gen_category_algebra, FiniteCategory};
    use crate::Q;

    #[test]
    fn regular_modules_over_the_arrow_category() {
        let s = gen_category_algebra::<Q>(&FiniteCategory::arrow()).unwrap();
        let b = compute_base(&s).unwrap();
        let cat = ModuleCategory::new(&s, &b).unwrap();
        let a = cat.regular_module().unwrap();
        let t = cat.module_tensor(&a, &a).unwrap();
        assert!(t.report.pass(), "{}", t.report.summary());
        assert_eq!(t.s.rank(), dense_rank(&t.s.matrix));
    }
}
