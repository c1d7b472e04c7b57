//! Exact elimination: frozen small cases and randomized invariants.

mod common;

use common::{random_scalar, Draw};
use proptest::prelude::*;
use wmb::linalg::LinalgError;
use wmb::modules::dense_rank;
use wmb::{ExactMatrix, Field, Fp, F7, Q};

fn q(s: &str) -> Q {
    Q::parse_scalar(s).unwrap()
}

fn qm(rows: &[&[&str]]) -> ExactMatrix<Q> {
    ExactMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|s| q(s)).collect()).collect::<Vec<_>>())
}

#[test]
fn rank_and_kernel_of_the_3x3_counting_matrix() {
    let m = ExactMatrix::<Q>::from_i64_rows(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
    assert_eq!(m.rank(), 2);
    let r = m.rref();
    assert_eq!(r.pivots, vec![0, 1]);
    assert_eq!(r.rows, vec![vec![(0, q("1")), (2, q("-1"))], vec![(1, q("1")), (2, q("2"))]]);
    assert_eq!(m.kernel_basis(), vec![vec![(0, q("1")), (1, q("-2")), (2, q("1"))]]);
    let m7 = ExactMatrix::<F7>::from_i64_rows(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
    assert_eq!(m7.rank(), 2);
}

#[test]
fn hilbert_inverse_is_exact() {
    let h = qm(&[&["1", "1/2", "1/3"], &["1/2", "1/3", "1/4"], &["1/3", "1/4", "1/5"]]);
    let inv = h.solve_unique(&ExactMatrix::identity(3)).unwrap();
    let expected = ExactMatrix::<Q>::from_i64_rows(&[&[9, -36, 30], &[-36, 192, -180], &[30, -180, 180]]);
    assert_eq!(inv, expected);
}

#[test]
fn solve_reports_free_dimension_and_inconsistency() {
    let m = ExactMatrix::<Q>::from_i64_rows(&[&[1, 1, 0], &[0, 0, 1]]);
    let b = ExactMatrix::<Q>::from_i64_rows(&[&[2], &[3]]);
    let (x, free) = m.solve(&b).unwrap();
    assert_eq!(free, 1);
    assert_eq!(m.matmul(&x).unwrap(), b);
    assert_eq!(m.solve_unique(&b), Err(LinalgError::NonUnique(1)));
    let sing = ExactMatrix::<Q>::from_i64_rows(&[&[1, 1], &[1, 1]]);
    let b = ExactMatrix::<Q>::from_i64_rows(&[&[1], &[2]]);
    assert_eq!(sing.solve(&b), Err(LinalgError::NoSolution));
}

#[test]
fn cokernel_and_splitting_oracles() {
    let m = ExactMatrix::<Q>::from_i64_rows(&[&[1], &[1]]);
    let (p, dim) = m.cokernel_projection();
    assert_eq!(dim, 1);
    assert_eq!(p, ExactMatrix::from_i64_rows(&[&[-1, 1]]));

    let e = ExactMatrix::<Q>::from_i64_rows(&[&[1, 1], &[0, 0]]);
    let (hat, check) = e.split_idempotent().unwrap();
    assert_eq!(hat, ExactMatrix::from_i64_rows(&[&[1, 1]]));
    assert_eq!(check, ExactMatrix::from_i64_rows(&[&[1], &[0]]));
    assert_eq!(ExactMatrix::<Q>::from_i64_rows(&[&[2]]).split_idempotent(), Err(LinalgError::NotIdempotent));
}

#[test]
fn factoring_through_a_surjection() {
    let s = ExactMatrix::<Q>::from_i64_rows(&[&[1, 1]]);
    let f = ExactMatrix::<Q>::from_i64_rows(&[&[2, 2], &[-1, -1]]);
    assert_eq!(s.solve_along_surjection(&f).unwrap(), ExactMatrix::from_i64_rows(&[&[2], &[-1]]));
    let bad = ExactMatrix::<Q>::from_i64_rows(&[&[1, 0]]);
    assert_eq!(s.solve_along_surjection(&bad), Err(LinalgError::NotWellDefined));
    let inj = s.transpose();
    assert_eq!(inj.solve_along_injection(&ExactMatrix::from_i64_rows(&[&[3]])).unwrap().matmul(&inj).unwrap().get(0, 0), q("3"));
}

#[test]
fn scalar_strings_are_canonical() {
    assert_eq!(q("2/4").to_scalar_string(), "1/2");
    assert_eq!(q("-3/6").to_scalar_string(), "-1/2");
    assert_eq!(q("3/-6").to_scalar_string(), "-1/2");
    assert_eq!(q("6/3").to_scalar_string(), "2");
    assert!(Q::parse_scalar("1/0").is_err());
    assert_eq!(F7::parse_scalar("-1").unwrap(), F7::new(6));
    assert_eq!(F7::parse_scalar("1/2").unwrap(), F7::new(4));
    assert!(Fp::<5>::parse_scalar("1/5").is_err());
}

fn random_matrix<F: Field>(d: &mut Draw, rows: usize, cols: usize) -> ExactMatrix<F> {
    let zero_bias = d.below(3);
    let t: Vec<_> = (0..rows)
        .flat_map(|r| (0..cols).map(move |c| (r, c)))
        .collect::<Vec<_>>()
        .into_iter()
        .filter_map(|(r, c)| (d.below(3) >= zero_bias).then(|| (r, c, random_scalar::<F>(d))))
        .collect();
    ExactMatrix::from_triplets(rows, cols, t).unwrap()
}

fn elimination_laws<F: Field>(raw: Vec<u32>) -> Result<(), TestCaseError> {
    let mut d = Draw::new(raw);
    let (r, c) = (1 + d.below(6) as usize, 1 + d.below(6) as usize);
    let m = random_matrix::<F>(&mut d, r, c);
    let rank = m.rank();
    prop_assert_eq!(rank, m.transpose().rank());
    prop_assert_eq!(rank, dense_rank(&m));
    let ker = m.kernel_basis();
    prop_assert_eq!(rank + ker.len(), c);
    let k = ExactMatrix::from_columns(c, &ker);
    prop_assert!(m.matmul(&k).unwrap().is_zero());
    let (p, dim) = m.cokernel_projection();
    prop_assert_eq!(dim, r - rank);
    prop_assert!(p.matmul(&m).unwrap().is_zero());
    prop_assert!(p.is_surjective());

    let x0 = random_matrix::<F>(&mut d, c, 2);
    let b = m.matmul(&x0).unwrap();
    let (x, free) = m.solve(&b).unwrap();
    prop_assert_eq!(free, c - rank);
    prop_assert_eq!(m.matmul(&x).unwrap(), b);
    Ok(())
}

fn idempotent_splitting<F: Field>(raw: Vec<u32>) -> Result<(), TestCaseError> {
    let mut d = Draw::new(raw);
    let n = 1 + d.below(6) as usize;
    // e = s diag s^-1 with s unitriangular
    let mut t = Vec::new();
    for i in 0..n {
        t.push((i, i, F::one()));
        for j in i + 1..n {
            t.push((i, j, random_scalar::<F>(&mut d)));
        }
    }
    let s = ExactMatrix::from_triplets(n, n, t).unwrap();
    let sinv = s.solve_unique(&ExactMatrix::identity(n)).unwrap();
    let diag = ExactMatrix::from_triplets(n, n, (0..n).filter(|_| d.below(2) == 0).map(|i| (i, i, F::one()))).unwrap();
    let e = s.matmul(&diag).unwrap().matmul(&sinv).unwrap();
    let (hat, check) = e.split_idempotent().unwrap();
    prop_assert_eq!(hat.matmul(&check).unwrap(), ExactMatrix::identity(diag.rank()));
    prop_assert_eq!(check.matmul(&hat).unwrap(), e);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn elimination_q(raw in prop::collection::vec(any::<u32>(), 32..128)) { elimination_laws::<Q>(raw)?; }
    #[test]
    fn elimination_f7(raw in prop::collection::vec(any::<u32>(), 32..128)) { elimination_laws::<F7>(raw)?; }
    #[test]
    fn splitting_q(raw in prop::collection::vec(any::<u32>(), 32..128)) { idempotent_splitting::<Q>(raw)?; }
    #[test]
    fn splitting_f7(raw in prop::collection::vec(any::<u32>(), 32..128)) { idempotent_splitting::<F7>(raw)?; }
}
