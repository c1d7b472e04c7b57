//! Finite-dimensional graded vector spaces over a finite abelian group, with the
//! braiding induced by a bicharacter.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::Field;
use crate::linalg::{ExactMatrix, LinalgError, Row};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradedError {
    #[error("object mismatch: {0}")]
    ObjectMismatch(String),
    #[error("grade violation at entry ({row},{col})")]
    GradeViolation { row: usize, col: usize },
    #[error("invalid bicharacter: {0}")]
    Bicharacter(String),
    #[error("invalid grading group: {0}")]
    Group(String),
    #[error("factorization mismatch: {0}")]
    Factorization(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Finite abelian group `Z/n1 + ... + Z/nk`. Elements are encoded as mixed-radix
/// indices, first factor most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradingGroup {
    factors: Vec<u32>,
}

pub type Grade = u32;

impl GradingGroup {
    pub fn new(factors: Vec<u32>) -> Result<Self, GradedError> {
        if factors.iter().any(|&n| n == 0) {
            return Err(GradedError::Group("invariant factors must be positive".into()));
        }
        let order: u64 = factors.iter().map(|&n| n as u64).product();
        if order > 1 << 16 {
            return Err(GradedError::Group(format!("group of order {order} is too large")));
        }
        Ok(GradingGroup { factors })
    }

    pub fn trivial() -> Self {
        GradingGroup { factors: Vec::new() }
    }

    pub fn cyclic(n: u32) -> Self {
        GradingGroup { factors: vec![n] }
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().map(|&n| n as usize).product()
    }

    pub fn decode(&self, g: Grade) -> Vec<u32> {
        let mut g = g;
        let mut out = vec![0; self.factors.len()];
        for (k, &n) in self.factors.iter().enumerate().rev() {
            out[k] = g % n;
            g /= n;
        }
        out
    }

    pub fn encode(&self, e: &[u32]) -> Grade {
        self.factors
            .iter()
            .zip(e)
            .fold(0, |acc, (&n, &x)| acc * n + x % n)
    }

    pub fn add(&self, a: Grade, b: Grade) -> Grade {
        if self.factors.is_empty() {
            return 0;
        }
        let (x, y) = (self.decode(a), self.decode(b));
        let s: Vec<u32> = x.iter().zip(&y).zip(&self.factors).map(|((a, b), n)| (a + b) % n).collect();
        self.encode(&s)
    }

    pub fn neg(&self, a: Grade) -> Grade {
        let x = self.decode(a);
        let s: Vec<u32> = x.iter().zip(&self.factors).map(|(a, n)| (n - a) % n).collect();
        self.encode(&s)
    }

    pub fn elements(&self) -> impl Iterator<Item = Grade> {
        0..self.order() as Grade
    }
}

/// A bicharacter `chi: G x G -> k^x`, stored as a dense table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bicharacter<F> {
    order: usize,
    table: Vec<F>,
}

impl<F: Field> Bicharacter<F> {
    pub fn trivial(group: &GradingGroup) -> Self {
        let n = group.order();
        Bicharacter { order: n, table: vec![F::one(); n * n] }
    }

    /// Builds `chi` from its values on pairs of generators: `gen[a][b] = chi(e_a, e_b)`.
    /// Each value must have multiplicative order dividing gcd(n_a, n_b).
    pub fn from_generators(group: &GradingGroup, gen: &[Vec<F>]) -> Result<Self, GradedError> {
        let k = group.factors().len();
        if gen.len() != k || gen.iter().any(|r| r.len() != k) {
            return Err(GradedError::Bicharacter("generator table has wrong shape".into()));
        }
        let n = group.order();
        let mut table = Vec::with_capacity(n * n);
        for g in group.elements() {
            let x = group.decode(g);
            for h in group.elements() {
                let y = group.decode(h);
                let mut v = F::one();
                for a in 0..k {
                    for b in 0..k {
                        v = v * gen[a][b].pow(x[a] as u64 * y[b] as u64);
                    }
                }
                table.push(v);
            }
        }
        let chi = Bicharacter { order: n, table };
        chi.validate(group)?;
        Ok(chi)
    }

    pub fn from_table(group: &GradingGroup, table: Vec<F>) -> Result<Self, GradedError> {
        let n = group.order();
        if table.len() != n * n {
            return Err(GradedError::Bicharacter(format!(
                "table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        let chi = Bicharacter { order: n, table };
        chi.validate(group)?;
        Ok(chi)
    }

    pub fn validate(&self, group: &GradingGroup) -> Result<(), GradedError> {
        let n = group.order();
        if self.order != n {
            return Err(GradedError::Bicharacter("table size does not match group".into()));
        }
        for g in group.elements() {
            if !self.value(0, g).is_one() || !self.value(g, 0).is_one() {
                return Err(GradedError::Bicharacter(format!("chi is not normalized at {g}")));
            }
            for h in group.elements() {
                if self.value(g, h).is_zero() {
                    return Err(GradedError::Bicharacter(format!("chi({g},{h}) = 0")));
                }
                for k in group.elements() {
                    let l = self.value(group.add(g, k), h);
                    let r = self.value(g, h) * self.value(k, h);
                    if l != r {
                        return Err(GradedError::Bicharacter(format!(
                            "not multiplicative in the first argument at ({g},{k};{h})"
                        )));
                    }
                    let l = self.value(g, group.add(h, k));
                    let r = self.value(g, h) * self.value(g, k);
                    if l != r {
                        return Err(GradedError::Bicharacter(format!(
                            "not multiplicative in the second argument at ({g};{h},{k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn value(&self, g: Grade, h: Grade) -> F {
        self.table[g as usize * self.order + h as usize].clone()
    }

    pub fn table(&self) -> &[F] {
        &self.table
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|g| {
            (0..self.order).all(|h| {
                let a = self.table[g * self.order + h].clone();
                let b = self.table[h * self.order + g].clone();
                (a * b).is_one()
            })
        })
    }
}

/// A graded object: its ordered basis, recorded by grade.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Obj {
    grades: Vec<Grade>,
}

impl Obj {
    pub fn new(grades: Vec<Grade>) -> Self {
        Obj { grades }
    }

    /// The monoidal unit: one basis vector of grade zero.
    pub fn unit() -> Self {
        Obj { grades: vec![0] }
    }

    pub fn dim(&self) -> usize {
        self.grades.len()
    }

    pub fn grades(&self) -> &[Grade] {
        &self.grades
    }

    pub fn grade(&self, i: usize) -> Grade {
        self.grades[i]
    }
}

/// A grade-preserving linear map, `target.dim() x source.dim()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism<F> {
    pub source: Obj,
    pub target: Obj,
    pub matrix: ExactMatrix<F>,
}

impl<F: Field> Morphism<F> {
    /// Wraps a matrix, checking shape and grade preservation.
    pub fn new(source: Obj, target: Obj, matrix: ExactMatrix<F>) -> Result<Self, GradedError> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(GradedError::ObjectMismatch(format!(
                "matrix {}x{} does not fit {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source.dim(),
                target.dim()
            )));
        }
        for (i, j, _) in matrix.entries() {
            if target.grade(i) != source.grade(j) {
                return Err(GradedError::GradeViolation { row: i, col: j });
            }
        }
        Ok(Morphism { source, target, matrix })
    }

    pub fn identity(x: &Obj) -> Self {
        Morphism { source: x.clone(), target: x.clone(), matrix: ExactMatrix::identity(x.dim()) }
    }

    pub fn zero(source: &Obj, target: &Obj) -> Self {
        Morphism {
            source: source.clone(),
            target: target.clone(),
            matrix: ExactMatrix::zeros(target.dim(), source.dim()),
        }
    }

    /// `self . f` (apply `f` first).
    pub fn after(&self, f: &Morphism<F>) -> Result<Self, GradedError> {
        if f.target != self.source {
            return Err(GradedError::ObjectMismatch(format!(
                "cannot compose: codomain of dim {} vs domain of dim {}",
                f.target.dim(),
                self.source.dim()
            )));
        }
        Ok(Morphism {
            source: f.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.matmul(&f.matrix)?,
        })
    }

    pub fn add(&self, other: &Morphism<F>) -> Result<Self, GradedError> {
        self.same_boundary(other)?;
        Ok(Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.add(&other.matrix)?,
        })
    }

    pub fn sub(&self, other: &Morphism<F>) -> Result<Self, GradedError> {
        self.same_boundary(other)?;
        Ok(Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.sub(&other.matrix)?,
        })
    }

    pub fn scale(&self, s: &F) -> Self {
        Morphism { source: self.source.clone(), target: self.target.clone(), matrix: self.matrix.scale(s) }
    }

    fn same_boundary(&self, other: &Morphism<F>) -> Result<(), GradedError> {
        if self.source != other.source || self.target != other.target {
            return Err(GradedError::ObjectMismatch("boundary objects differ".into()));
        }
        Ok(())
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.is_injective()
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.is_surjective()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

/// Which argument of `v: Z V -> W` is tested for non-degeneracy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    /// The curried map `V -> Hom(Z, W)` is injective.
    Left,
    /// The curried map `Z -> Hom(V, W)` is injective.
    Right,
}

/// The braided monoidal category of `G`-graded vector spaces with braiding from `chi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidedContext<F> {
    pub group: GradingGroup,
    pub chi: Bicharacter<F>,
}

impl<F: Field> BraidedContext<F> {
    pub fn new(group: GradingGroup, chi: Bicharacter<F>) -> Result<Self, GradedError> {
        chi.validate(&group)?;
        Ok(BraidedContext { group, chi })
    }

    /// Plain vector spaces with the flip.
    pub fn vect() -> Self {
        let group = GradingGroup::trivial();
        let chi = Bicharacter::trivial(&group);
        BraidedContext { group, chi }
    }

    /// Super vector spaces: `Z/2` grading, `chi(a, b) = (-1)^(ab)`.
    pub fn super_vect() -> Self {
        let group = GradingGroup::cyclic(2);
        let chi = Bicharacter::from_generators(&group, &[vec![-F::one()]]).expect("valid");
        BraidedContext { group, chi }
    }

    /// `Z/n` grading with `chi(a, b) = q^(ab)`; `q^n` must be 1.
    pub fn cyclic(n: u32, q: F) -> Result<Self, GradedError> {
        let group = GradingGroup::cyclic(n);
        let chi = Bicharacter::from_generators(&group, &[vec![q]])?;
        Ok(BraidedContext { group, chi })
    }

    pub fn check_object(&self, x: &Obj) -> Result<(), GradedError> {
        let n = self.group.order() as Grade;
        if let Some(g) = x.grades().iter().find(|&&g| g >= n.max(1)) {
            return Err(GradedError::ObjectMismatch(format!("grade {g} is not a group element")));
        }
        Ok(())
    }

    pub fn tensor_obj(&self, x: &Obj, y: &Obj) -> Obj {
        let mut grades = Vec::with_capacity(x.dim() * y.dim());
        for &a in x.grades() {
            for &b in y.grades() {
                grades.push(self.group.add(a, b));
            }
        }
        Obj::new(grades)
    }

    pub fn tensor_objs(&self, xs: &[Obj]) -> Obj {
        xs.iter().fold(Obj::unit(), |acc, x| self.tensor_obj(&acc, x))
    }

    pub fn power(&self, x: &Obj, n: usize) -> Obj {
        self.tensor_objs(&vec![x.clone(); n])
    }

    pub fn tensor_mor(&self, f: &Morphism<F>, g: &Morphism<F>) -> Morphism<F> {
        Morphism {
            source: self.tensor_obj(&f.source, &g.source),
            target: self.tensor_obj(&f.target, &g.target),
            matrix: f.matrix.kron(&g.matrix),
        }
    }

    pub fn tensor_mors(&self, fs: &[&Morphism<F>]) -> Morphism<F> {
        let mut acc = Morphism::identity(&Obj::unit());
        for f in fs {
            acc = self.tensor_mor(&acc, f);
        }
        acc
    }

    pub fn identity(&self, x: &Obj) -> Morphism<F> {
        Morphism::identity(x)
    }

    /// `c: X Y -> Y X`, `x_i y_j -> chi(|x_i|, |y_j|) y_j x_i`; the inverse variant
    /// is `(c_{Y,X})^-1: X Y -> Y X` with factor `chi(|y_j|, |x_i|)^-1`.
    pub fn braiding(&self, x: &Obj, y: &Obj, inverse: bool) -> Morphism<F> {
        let (m, n) = (x.dim(), y.dim());
        let mut data: Vec<Row<F>> = vec![Vec::new(); m * n];
        for i in 0..m {
            for j in 0..n {
                let (gx, gy) = (x.grade(i), y.grade(j));
                let v = if inverse {
                    self.chi.value(gy, gx).inv().expect("bicharacter values are units")
                } else {
                    self.chi.value(gx, gy)
                };
                // source index i*n + j, target index j*m + i
                data[j * m + i].push((i * n + j, v));
            }
        }
        Morphism {
            source: self.tensor_obj(x, y),
            target: self.tensor_obj(y, x),
            matrix: ExactMatrix::from_rows(m * n, m * n, data),
        }
    }

    /// Non-degeneracy of `v: Z V -> W` on the given side, decided by injectivity
    /// of the curried map.
    pub fn is_nondegenerate(&self, v: &Morphism<F>, z: &Obj, vv: &Obj, side: Side) -> Result<bool, GradedError> {
        if self.tensor_obj(z, vv) != v.source {
            return Err(GradedError::Factorization("source is not Z V".into()));
        }
        Ok(curry(&v.matrix, z.dim(), vv.dim(), side).is_injective())
    }
}

/// Reshapes `v: Z V -> W` into `V -> W Z` (left) or `Z -> W V` (right).
pub fn curry<F: Field>(v: &ExactMatrix<F>, dz: usize, dv: usize, side: Side) -> ExactMatrix<F> {
    let dw = v.rows();
    let triplets = v.entries().map(|(w, col, val)| {
        let (z, x) = (col / dv, col % dv);
        match side {
            Side::Left => (w * dz + z, x, val.clone()),
            Side::Right => (w * dv + x, z, val.clone()),
        }
    });
    let (rows, cols) = match side {
        Side::Left => (dw * dz, dv),
        Side::Right => (dw * dv, dz),
    };
    ExactMatrix::from_triplets(rows, cols, triplets).expect("indices in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{F7, Q};

    #[test]
    fn super_grades_add() {
        let ctx = BraidedContext::<Q>::super_vect();
        let x = Obj::new(vec![0, 1]);
        assert_eq!(ctx.tensor_obj(&x, &x).grades(), &[0, 1, 1, 0]);
        assert_eq!(ctx.tensor_obj(&Obj::unit(), &x), x);
    }

    #[test]
    fn odd_lines_braid_with_sign() {
        let ctx = BraidedContext::<Q>::super_vect();
        let odd = Obj::new(vec![1]);
        let c = ctx.braiding(&odd, &odd, false);
        assert_eq!(c.matrix, ExactMatrix::from_i64_rows(&[&[-1]]));
        let flip = BraidedContext::<Q>::vect().braiding(&Obj::new(vec![0, 0]), &Obj::new(vec![0, 0]), false);
        assert_eq!(
            flip.matrix,
            ExactMatrix::from_i64_rows(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]])
        );
    }

    #[test]
    fn inverse_braiding_inverts() {
        let ctx = BraidedContext::<F7>::cyclic(3, F7::from_i64(2)).unwrap();
        let x = Obj::new(vec![0, 1, 2]);
        let y = Obj::new(vec![1, 2]);
        let c = ctx.braiding(&x, &y, false);
        let ci = ctx.braiding(&x, &y, true);
        // cinv(X,Y) is the inverse of c(Y,X)
        let cyx = ctx.braiding(&y, &x, false);
        assert_eq!(cyx.after(&ci).unwrap(), Morphism::identity(&ctx.tensor_obj(&x, &y)));
        assert_ne!(c, ci);
    }

    #[test]
    fn bicharacter_rejects_bad_root() {
        let g = GradingGroup::cyclic(3);
        assert!(Bicharacter::<F7>::from_generators(&g, &[vec![F7::from_i64(3)]]).is_err());
    }
}
