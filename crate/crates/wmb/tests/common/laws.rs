//! The braided monoidal laws as property checks on random graded data.

use super::{random_ctx, random_mor, random_obj, Draw};
use proptest::prelude::*;
use wmb::{Field, Morphism};

pub fn pool() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(any::<u32>(), 64..256)
}

pub fn hexagons<F: Field>(raw: Vec<u32>) -> Result<(), TestCaseError> {
    let mut d = Draw::new(raw);
    let ctx = random_ctx::<F>(&mut d);
    let (x, y, z) = (random_obj(&ctx, &mut d, 6), random_obj(&ctx, &mut d, 6), random_obj(&ctx, &mut d, 6));
    let id = Morphism::<F>::identity;
    for inverse in [false, true] {
        let c = |a, b| ctx.braiding(a, b, inverse);
        let yz = ctx.tensor_obj(&y, &z);
        let xy = ctx.tensor_obj(&x, &y);
        let lhs = c(&x, &yz);
        let rhs = ctx.tensor_mor(&id(&y), &c(&x, &z)).after(&ctx.tensor_mor(&c(&x, &y), &id(&z))).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = c(&xy, &z);
        let rhs = ctx.tensor_mor(&c(&x, &z), &id(&y)).after(&ctx.tensor_mor(&id(&x), &c(&y, &z))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
    Ok(())
}

pub fn naturality<F: Field>(raw: Vec<u32>) -> Result<(), TestCaseError> {
    let mut d = Draw::new(raw);
    let ctx = random_ctx::<F>(&mut d);
    let (x, x2) = (random_obj(&ctx, &mut d, 6), random_obj(&ctx, &mut d, 6));
    let (y, y2) = (random_obj(&ctx, &mut d, 6), random_obj(&ctx, &mut d, 6));
    let f = random_mor::<F>(&mut d, &x, &x2);
    let g = random_mor::<F>(&mut d, &y, &y2);
    for inverse in [false, true] {
        let lhs = ctx.braiding(&x2, &y2, inverse).after(&ctx.tensor_mor(&f, &g)).unwrap();
        let rhs = ctx.tensor_mor(&g, &f).after(&ctx.braiding(&x, &y, inverse)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
    Ok(())
}

pub fn inverse_pairs<F: Field>(raw: Vec<u32>) -> Result<(), TestCaseError> {
    let mut d = Draw::new(raw);
    let ctx = random_ctx::<F>(&mut d);
    let (x, y) = (random_obj(&ctx, &mut d, 6), random_obj(&ctx, &mut d, 6));
    // cinv(Y,X) is the inverse of c(X,Y)
    let c = ctx.braiding(&x, &y, false);
    let cinv = ctx.braiding(&y, &x, true);
    prop_assert_eq!(cinv.after(&c).unwrap(), Morphism::identity(&ctx.tensor_obj(&x, &y)));
    prop_assert_eq!(c.after(&cinv).unwrap(), Morphism::identity(&ctx.tensor_obj(&y, &x)));
    Ok(())
}

pub fn kron_interchange<F: Field>(raw: Vec<u32>) -> Result<(), TestCaseError> {
    let mut d = Draw::new(raw);
    let ctx = random_ctx::<F>(&mut d);
    let objs: Vec<_> = (0..6).map(|_| random_obj(&ctx, &mut d, 6)).collect();
    let f = random_mor::<F>(&mut d, &objs[0], &objs[1]);
    let h = random_mor::<F>(&mut d, &objs[1], &objs[2]);
    let g = random_mor::<F>(&mut d, &objs[3], &objs[4]);
    let k = random_mor::<F>(&mut d, &objs[4], &objs[5]);
    let lhs = ctx.tensor_mor(&h, &k).after(&ctx.tensor_mor(&f, &g)).unwrap();
    let rhs = ctx.tensor_mor(&h.after(&f).unwrap(), &k.after(&g).unwrap());
    prop_assert_eq!(lhs, rhs);
    prop_assert_eq!(
        ctx.tensor_mor(&f, &g).matrix,
        f.matrix.kron(&g.matrix),
        "tensor of maps is the row-major Kronecker product"
    );
    Ok(())
}
