//! Braiding and tensor laws on random graded data over F7 and Q.

mod common;

use common::laws::{hexagons, inverse_pairs, kron_interchange, naturality, pool};
use common::{random_ctx, Draw};
use proptest::prelude::*;
use wmb::{F7, Q};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn hexagon_f7(raw in pool()) { hexagons::<F7>(raw)?; }
    #[test]
    fn hexagon_q(raw in pool()) { hexagons::<Q>(raw)?; }
    #[test]
    fn naturality_f7(raw in pool()) { naturality::<F7>(raw)?; }
    #[test]
    fn naturality_q(raw in pool()) { naturality::<Q>(raw)?; }
    #[test]
    fn braiding_inverse_f7(raw in pool()) { inverse_pairs::<F7>(raw)?; }
    #[test]
    fn braiding_inverse_q(raw in pool()) { inverse_pairs::<Q>(raw)?; }
    #[test]
    fn kron_interchange_f7(raw in pool()) { kron_interchange::<F7>(raw)?; }
    #[test]
    fn kron_interchange_q(raw in pool()) { kron_interchange::<Q>(raw)?; }
}

#[test]
fn random_contexts_include_asymmetric_braidings() {
    let asym = (0..200u32).any(|s| {
        let mut d = Draw::new(vec![s, s * 7 + 1, s * 13 + 5, 3, 11]);
        !random_ctx::<F7>(&mut d).chi.is_symmetric()
    });
    assert!(asym);
}
