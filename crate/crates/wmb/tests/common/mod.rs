//! Shared fixtures: random graded data drawn from proptest pools, and the
//! catalog of generated structures.
#![allow(dead_code)]

pub mod laws;

use wmb::gen::{self, FiniteCategory};
use wmb::graded::Bicharacter;
use wmb::{BraidedContext, ExactMatrix, Field, GradingGroup, Morphism, Obj, Rwmb, F7, Q};

/// Reads a proptest-supplied pool of integers as a stream of choices.
pub struct Draw {
    raw: Vec<u32>,
    pos: usize,
}

impl Draw {
    pub fn new(raw: Vec<u32>) -> Self {
        assert!(!raw.is_empty());
        Draw { raw, pos: 0 }
    }

    pub fn below(&mut self, n: u32) -> u32 {
        let v = self.raw[self.pos % self.raw.len()].wrapping_add((self.pos / self.raw.len()) as u32);
        self.pos += 1;
        v % n
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Units `x` of `F` with `x^k = 1` among small integers.
pub fn roots<F: Field>(k: u32) -> Vec<F> {
    let mut out: Vec<F> = Vec::new();
    for i in -3..=6 {
        let x = F::from_i64(i);
        if !x.is_zero() && x.pow(k as u64) == F::one() && !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

const GROUPS: [&[u32]; 6] = [&[], &[2], &[3], &[2, 2], &[6], &[2, 3]];

/// A random grading group with a random (generally asymmetric) bicharacter.
pub fn random_ctx<F: Field>(d: &mut Draw) -> BraidedContext<F> {
    let factors = GROUPS[d.below(GROUPS.len() as u32) as usize].to_vec();
    let group = GradingGroup::new(factors.clone()).unwrap();
    let gens: Vec<Vec<F>> = factors
        .iter()
        .map(|&a| {
            factors
                .iter()
                .map(|&b| {
                    let r = roots::<F>(gcd(a, b));
                    r[d.below(r.len() as u32) as usize].clone()
                })
                .collect()
        })
        .collect();
    let chi = Bicharacter::from_generators(&group, &gens).unwrap();
    BraidedContext::new(group, chi).unwrap()
}

pub fn random_obj<F: Field>(ctx: &BraidedContext<F>, d: &mut Draw, max_dim: u32) -> Obj {
    let n = 1 + d.below(max_dim);
    let order = ctx.group.order() as u32;
    Obj::new((0..n).map(|_| d.below(order)).collect())
}

pub fn random_scalar<F: Field>(d: &mut Draw) -> F {
    let num = F::from_i64(d.below(7) as i64 - 3);
    let den = F::from_i64(1 + d.below(3) as i64);
    num * den.inv().unwrap()
}

/// A random grade-preserving map `x -> y`, about half the allowed entries nonzero.
pub fn random_mor<F: Field>(d: &mut Draw, x: &Obj, y: &Obj) -> Morphism<F> {
    let mut t = Vec::new();
    for r in 0..y.dim() {
        for c in 0..x.dim() {
            if y.grade(r) == x.grade(c) && d.below(2) == 0 {
                t.push((r, c, random_scalar::<F>(d)));
            }
        }
    }
    Morphism::new(x.clone(), y.clone(), ExactMatrix::from_triplets(y.dim(), x.dim(), t).unwrap()).unwrap()
}

/// Every generator over `Q`.
pub fn catalog_q() -> Vec<(&'static str, Rwmb<Q>)> {
    vec![
        ("z1", gen::gen_group_functions::<Q>(&[]).unwrap()),
        ("z2", gen::gen_group_functions::<Q>(&[2]).unwrap()),
        ("arrow", gen::gen_category_algebra::<Q>(&FiniteCategory::arrow()).unwrap()),
        ("discrete3", gen::gen_category_algebra::<Q>(&FiniteCategory::discrete(3)).unwrap()),
        ("cyclic3", gen::gen_category_algebra::<Q>(&FiniteCategory::cyclic_monoid(3)).unwrap()),
        ("exterior", gen::gen_exterior_super::<Q>().unwrap()),
    ]
}

/// Generators over `F7`, including the genuinely braided ones.
pub fn catalog_f7() -> Vec<(&'static str, Rwmb<F7>)> {
    let arrow = gen::gen_category_algebra::<F7>(&FiniteCategory::arrow()).unwrap();
    let qline = gen::gen_quantum_line::<F7>(3, F7::new(2)).unwrap();
    vec![
        ("z3", gen::gen_group_functions::<F7>(&[3]).unwrap()),
        ("exterior", gen::gen_exterior_super::<F7>().unwrap()),
        ("qline3", qline.clone()),
        ("arrow_x_qline3", gen::gen_product(&arrow, &qline).unwrap()),
    ]
}
