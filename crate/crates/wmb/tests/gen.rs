use wmb::base::compute_base;
use wmb::gen::{self, FiniteCategory, GenError};
use wmb::{ExactMatrix, Fp, Morphism, Rwmb, F7, Q};

fn s(x: &str) -> String {
    x.to_string()
}

fn presentation_error(c: FiniteCategory) -> String {
    match gen::build_category_algebra::<Q>(&c) {
        Err(GenError::PresentationInvalid(msg)) => msg,
        other => panic!("expected a presentation error, got {other:?}"),
    }
}

#[test]
fn group_functions_fusion() {
    let z2 = gen::gen_group_functions::<Q>(&[2]).unwrap();
    // t1(d_g * d_h) = d_(g-h) * d_h, basis index g * 2 + h
    let t = ExactMatrix::from_i64_rows(&[&[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0]]);
    assert_eq!(z2.t1.matrix, t);
    assert_eq!(z2.e1, Morphism::identity(&z2.a2()));
    assert_eq!(z2.e2, Morphism::identity(&z2.a2()));
    for f in [&[][..], &[2], &[3], &[2, 2], &[4]] {
        let s = gen::gen_group_functions::<Q>(f).unwrap();
        assert_eq!(compute_base(&s).unwrap().l.dim(), 1, "{f:?}");
    }
    let z3 = gen::gen_group_functions::<F7>(&[3]).unwrap();
    assert!(z3.check_rwmb().pass() && z3.appendix_suite().pass());
}

#[test]
fn group_functions_bad_group() {
    assert!(matches!(gen::build_group_functions::<Q>(&[0]), Err(GenError::Parameters(_))));
}

#[test]
fn category_algebra_base_counts_objects() {
    let cats = [
        FiniteCategory::arrow(),
        FiniteCategory::discrete(1),
        FiniteCategory::discrete(4),
        FiniteCategory::cyclic_monoid(2),
        FiniteCategory::pair_groupoid(2),
    ];
    for c in cats {
        let s = gen::gen_category_algebra::<Q>(&c).unwrap();
        assert_eq!(compute_base(&s).unwrap().l.dim(), c.objects.len(), "{:?}", c.objects);
    }
}

#[test]
fn one_object_categories_are_bimonoids() {
    let s = gen::gen_category_algebra::<Q>(&FiniteCategory::cyclic_monoid(3)).unwrap();
    assert_eq!(s.e1, Morphism::identity(&s.a2()));
    assert_eq!(s.e2, Morphism::identity(&s.a2()));
}

#[test]
fn discrete_fusion_is_diagonal() {
    let s = gen::gen_category_algebra::<Q>(&FiniteCategory::discrete(3)).unwrap();
    assert!(s.t1.matrix.entries().all(|(r, c, _)| r == c));
    assert_eq!(s.t1.matrix.nnz(), 3);
    assert!(s.t1.matrix.entries().all(|(r, _, _)| r % 4 == 0));
}

#[test]
fn arrow_formulas() {
    // t1(f * g) = f * fg
    let s = gen::gen_category_algebra::<Q>(&FiniteCategory::arrow()).unwrap();
    let one = Q::from_integer(1.into());
    let mut t = Vec::new();
    for (f, g, fg) in [(0, 0, 0), (2, 2, 2), (1, 0, 1), (2, 1, 1)] {
        t.push((f * 3 + fg, f * 3 + g, one.clone()));
    }
    assert_eq!(s.t1.matrix, ExactMatrix::from_triplets(9, 9, t).unwrap());
    assert_eq!(s.j.matrix, ExactMatrix::from_i64_rows(&[&[1, 1, 1]]));
    // e1 keeps pairs with common target: (1x,1x), (a,a), (a,1y), (1y,a), (1y,1y)
    let diag: Vec<usize> = s.e1.matrix.entries().map(|(r, _, _)| r).collect();
    assert_eq!(diag, vec![0, 4, 5, 7, 8]);
    let diag: Vec<usize> = s.e2.matrix.entries().map(|(r, _, _)| r).collect();
    assert_eq!(diag, vec![0, 1, 3, 4, 8]);
}

#[test]
fn presentation_errors() {
    let mut c = FiniteCategory::arrow();
    c.objects.push(s("x"));
    assert!(presentation_error(c).contains("duplicate object"));

    let mut c = FiniteCategory::arrow();
    c.morphisms.push((s("a"), s("x"), s("y")));
    assert!(presentation_error(c).contains("duplicate morphism"));

    let mut c = FiniteCategory::arrow();
    c.morphisms.push((s("b"), s("x"), s("z")));
    assert!(presentation_error(c).contains("unknown object z"));

    let mut c = FiniteCategory::arrow();
    c.composition.push((s("a"), s("a"), s("a")));
    assert!(presentation_error(c).contains("not composable"));

    let mut c = FiniteCategory::arrow();
    c.composition[2] = (s("a"), s("1x"), s("1x"));
    assert!(presentation_error(c).contains("wrong ends"));

    let mut c = FiniteCategory::arrow();
    c.composition.push((s("1x"), s("1x"), s("1x")));
    assert!(presentation_error(c).contains("repeated"));

    let mut c = FiniteCategory::arrow();
    c.composition.pop();
    assert!(presentation_error(c).contains("not closed"));

    let mut c = FiniteCategory::arrow();
    c.composition.push((s("1x"), s("b"), s("1x")));
    assert!(presentation_error(c).contains("unknown morphism b"));

    // e is a unit, but f (f g) = f e = f differs from (f f) g = g g = e
    let c = FiniteCategory {
        objects: vec![s("*")],
        morphisms: vec![(s("e"), s("*"), s("*")), (s("f"), s("*"), s("*")), (s("g"), s("*"), s("*"))],
        composition: vec![
            (s("e"), s("e"), s("e")),
            (s("e"), s("f"), s("f")),
            (s("e"), s("g"), s("g")),
            (s("f"), s("e"), s("f")),
            (s("g"), s("e"), s("g")),
            (s("f"), s("f"), s("g")),
            (s("f"), s("g"), s("e")),
            (s("g"), s("f"), s("f")),
            (s("g"), s("g"), s("e")),
        ],
    };
    assert!(presentation_error(c).contains("not associative"));

    // a monoid-like table whose only candidate unit fails
    let c = FiniteCategory {
        objects: vec![s("*")],
        morphisms: vec![(s("z"), s("*"), s("*")), (s("w"), s("*"), s("*"))],
        composition: vec![
            (s("z"), s("z"), s("z")),
            (s("z"), s("w"), s("z")),
            (s("w"), s("z"), s("z")),
            (s("w"), s("w"), s("z")),
        ],
    };
    assert!(presentation_error(c).contains("no identity"));
}

#[test]
fn exterior_rejects_characteristic_two() {
    assert!(matches!(gen::build_exterior_super::<Fp<2>>(), Err(GenError::Parameters(_))));
    assert!(gen::gen_exterior_super::<Fp<3>>().is_ok());
}

#[test]
fn quantum_line_parameters() {
    assert!(matches!(gen::build_quantum_line::<F7>(3, F7::new(1)), Err(GenError::Parameters(_))));
    assert!(matches!(gen::build_quantum_line::<F7>(1, F7::new(1)), Err(GenError::Parameters(_))));
    assert!(matches!(gen::build_quantum_line::<F7>(4, F7::new(2)), Err(GenError::Parameters(_))));
    let s = gen::gen_quantum_line::<F7>(6, F7::new(3)).unwrap();
    assert_eq!(s.a.dim(), 6);
    let q = gen::gen_quantum_line::<Q>(2, Q::from_integer((-1).into())).unwrap();
    assert!(q.check_rwmb().pass());
}

#[test]
fn products() {
    let arrow = gen::gen_category_algebra::<F7>(&FiniteCategory::arrow()).unwrap();
    let ext = gen::gen_exterior_super::<F7>().unwrap();
    let p = gen::gen_product(&arrow, &ext).unwrap();
    assert_eq!(p.a.dim(), 6);
    assert_eq!(compute_base(&p).unwrap().l.dim(), 2);
    assert!(matches!(gen::build_product(&ext, &arrow), Err(GenError::Parameters(_))));
}

#[test]
fn certification_refuses_broken_data() {
    let s = gen::build_category_algebra::<Q>(&FiniteCategory::arrow()).unwrap();
    let bad = Rwmb { e1: s.e2.clone(), e2: s.e1.clone(), ..s };
    match gen::certify(bad) {
        Err(GenError::VerificationFailed(msg)) => assert!(msg.contains("e_components"), "{msg}"),
        other => panic!("{other:?}"),
    }
}
