mod common;

use common::{catalog_f7, catalog_q};
use wmb::base::compute_base;
use wmb::field::ScalarError;
use wmb::gen::{self, FiniteCategory};
use wmb::io::{self, FileKind, IoError, ReportFile, StructureFile};
use wmb::modules::ModuleCategory;
use wmb::{Duality, FieldSpec, Frame, Rwmb, F7, Q};

fn arrow() -> Rwmb<Q> {
    gen::gen_category_algebra(&FiniteCategory::arrow()).unwrap()
}

fn z2_text() -> String {
    io::rwmb_to_file(&gen::gen_group_functions::<Q>(&[2]).unwrap()).to_json()
}

fn edit(text: &str, f: impl FnOnce(&mut serde_json::Value)) -> String {
    let mut v: serde_json::Value = serde_json::from_str(text).unwrap();
    f(&mut v);
    serde_json::to_string_pretty(&v).unwrap()
}

#[test]
fn structures_round_trip() {
    for (name, s) in catalog_q() {
        let text = io::rwmb_to_file(&s).to_json();
        let back: Rwmb<Q> = io::load_rwmb(&text).unwrap();
        assert_eq!(back, s, "{name}");
        assert_eq!(io::rwmb_to_file(&back).to_json(), text, "{name}");
    }
    for (name, s) in catalog_f7() {
        let text = io::rwmb_to_file(&s).to_json();
        assert_eq!(io::load_rwmb::<F7>(&text).unwrap(), s, "{name}");
    }
}

#[test]
fn duals_keep_their_frame() {
    for (name, s) in catalog_f7() {
        for w in [Duality::Opposite, Duality::Coopposite, Duality::OppositeCoopposite] {
            let d = s.dualize(w);
            let back = io::load_rwmb::<F7>(&io::rwmb_to_file(&d).to_json()).unwrap();
            assert_eq!(back, d, "{name} {w:?}");
            assert_ne!(back.frame, Frame::BASE);
        }
    }
}

#[test]
fn base_files_round_trip() {
    for (name, s) in catalog_q() {
        let b = compute_base(&s).unwrap();
        let text = io::base_to_file(&s, &b).to_json();
        let (s2, b2) = io::load_base::<Q>(&text).unwrap();
        assert_eq!((s2, b2), (s.clone(), b), "{name}");
        // a base file also serves as a structure file
        assert_eq!(io::load_rwmb::<Q>(&text).unwrap(), s, "{name}");
    }
}

#[test]
fn corrupted_base_is_rejected() {
    let s = arrow();
    let b = compute_base(&s).unwrap();
    let text = io::base_to_file(&s, &b).to_json();
    let bad = edit(&text, |v| {
        let ms = v["morphisms"].as_array_mut().unwrap();
        let mu = ms.iter_mut().find(|m| m["name"] == "mu").unwrap();
        mu["entries"][0][2] = "2".into();
    });
    assert!(matches!(io::load_base::<Q>(&bad), Err(IoError::Invalid(_))));
}

#[test]
fn module_files_round_trip() {
    let s = arrow();
    let c = ModuleCategory::new(&s, &compute_base(&s).unwrap()).unwrap();
    let a = c.regular_module().unwrap();
    let t = c.module_tensor(&a, &a).unwrap();
    let text = io::module_to_file(&s.ctx, s.frame, &s.a, &t.module.obj, &t.module.action).to_json();
    let d = io::decode::<Q>(&StructureFile::parse(&text).unwrap()).unwrap();
    let (a2, v, action) = io::module_from_decoded(&d).unwrap();
    assert_eq!((a2, v, action), (s.a.clone(), t.module.obj.clone(), t.module.action.clone()));
}

#[test]
fn partial_files() {
    let s = gen::gen_group_functions::<Q>(&[2]).unwrap();
    let m = s.m();
    let f = io::partial_to_file(&s.ctx, s.frame, &s.a, &[("m", &m), ("t1", &s.t1), ("j", &s.j)]);
    assert_eq!(f.kind, FileKind::Partial);
    let d = io::decode::<Q>(&StructureFile::parse(&f.to_json()).unwrap()).unwrap();
    assert_eq!(d.morphism("m").unwrap(), m);
    assert!(!d.has_morphism("t2"));
    assert!(matches!(io::load_rwmb::<Q>(&f.to_json()), Err(IoError::Kind { .. })));
}

#[test]
fn roles_rename() {
    let text = edit(&z2_text(), |v| {
        for m in v["morphisms"].as_array_mut().unwrap() {
            if m["name"] == "t1" {
                m["name"] = "fusion".into();
            }
        }
        v["roles"] = serde_json::json!({ "t1": "fusion" });
    });
    let s = io::load_rwmb::<Q>(&text).unwrap();
    assert_eq!(s, gen::gen_group_functions::<Q>(&[2]).unwrap());
    let dangling = edit(&z2_text(), |v| v["roles"] = serde_json::json!({ "t1": "nothing" }));
    assert!(matches!(io::load_rwmb::<Q>(&dangling), Err(IoError::Missing(_))));
}

#[test]
fn malformed_files() {
    assert!(matches!(StructureFile::parse(""), Err(IoError::Syntax { line: 1, .. })));
    let truncated = &z2_text()[..60];
    assert!(matches!(StructureFile::parse(truncated), Err(IoError::Syntax { .. })));
    match StructureFile::parse("{\n  \"format_version\": 1,\n  \"surprise\": 3\n}") {
        Err(IoError::Syntax { line, .. }) => assert_eq!(line, 3),
        other => panic!("{other:?}"),
    }
    let v2 = edit(&z2_text(), |v| v["format_version"] = 2.into());
    assert_eq!(StructureFile::parse(&v2).unwrap_err(), IoError::Version(2));
    let missing = edit(&z2_text(), |v| {
        v["morphisms"].as_array_mut().unwrap().retain(|m| m["name"] != "t2");
    });
    assert_eq!(io::load_rwmb::<Q>(&missing).unwrap_err(), IoError::Missing("morphism t2".into()));
    let dup = edit(&z2_text(), |v| {
        let ms = v["morphisms"].as_array_mut().unwrap();
        let first = ms[0].clone();
        ms.push(first);
    });
    assert!(matches!(io::load_rwmb::<Q>(&dup), Err(IoError::Duplicate(_))));
}

#[test]
fn bad_entries() {
    let out_of_range = edit(&z2_text(), |v| v["morphisms"][0]["entries"][0][0] = 99.into());
    assert!(matches!(io::load_rwmb::<Q>(&out_of_range), Err(IoError::Morphism { .. })));
    let bad_scalar = edit(&z2_text(), |v| v["morphisms"][0]["entries"][0][2] = "1/0".into());
    assert!(matches!(io::load_rwmb::<Q>(&bad_scalar), Err(IoError::Morphism { .. })));
    let twice = edit(&z2_text(), |v| {
        let e = v["morphisms"][0]["entries"][0].clone();
        v["morphisms"][0]["entries"].as_array_mut().unwrap().push(e);
    });
    match io::load_rwmb::<Q>(&twice) {
        Err(IoError::Morphism { msg, .. }) => assert!(msg.contains("twice")),
        other => panic!("{other:?}"),
    }
    let bad_boundary = edit(&z2_text(), |v| v["morphisms"][0]["source"] = "A*B".into());
    assert!(matches!(io::load_rwmb::<Q>(&bad_boundary), Err(IoError::Morphism { .. })));
}

#[test]
fn grades_are_checked() {
    let s = gen::gen_exterior_super::<Q>().unwrap();
    let text = io::rwmb_to_file(&s).to_json();
    // move an entry of t1 to a grade-changing position
    let bad = edit(&text, |v| {
        let ms = v["morphisms"].as_array_mut().unwrap();
        let t1 = ms.iter_mut().find(|m| m["name"] == "t1").unwrap();
        t1["entries"].as_array_mut().unwrap().push(serde_json::json!([1, 0, "1"]));
    });
    assert!(matches!(io::load_rwmb::<Q>(&bad), Err(IoError::Morphism { .. })));
    let big = edit(&text, |v| v["objects"]["A"] = serde_json::json!([0, 5]));
    assert!(matches!(io::load_rwmb::<Q>(&big), Err(IoError::Object { .. })));
    let zero_chi = edit(&text, |v| v["bicharacter"][3] = "0".into());
    assert!(matches!(io::load_rwmb::<Q>(&zero_chi), Err(IoError::Graded(_))));
}

#[test]
fn field_must_match() {
    let err = io::load_rwmb::<F7>(&z2_text()).unwrap_err();
    assert!(matches!(err, IoError::Scalar(ScalarError::FieldMismatch { .. })), "{err:?}");
    let f = StructureFile::parse(&z2_text()).unwrap();
    assert_eq!(f.field_spec().unwrap(), FieldSpec::Rationals);
    let weird = edit(&z2_text(), |v| v["field"] = "Fp:8".into());
    assert!(StructureFile::parse(&weird).unwrap().field_spec().is_err());
}

#[test]
fn rationals_in_lowest_terms() {
    let s = gen::gen_quantum_line::<Q>(2, Q::from_integer((-1).into())).unwrap();
    let text = io::rwmb_to_file(&s).to_json();
    assert!(text.contains("\"-1\""));
    let half = edit(&z2_text(), |v| {
        let ms = v["morphisms"].as_array_mut().unwrap();
        let j = ms.iter_mut().find(|m| m["name"] == "j").unwrap();
        j["entries"][0][2] = "2/4".into();
    });
    let s = io::load_rwmb::<Q>(&half).unwrap();
    assert!(io::rwmb_to_file(&s).to_json().contains("\"1/2\""));
}

#[test]
fn reports_are_deterministic() {
    let s = arrow();
    let make = || {
        let mut r = ReportFile::new("check", FieldSpec::Rationals);
        r.add("definition", &s.check_rwmb());
        r.add("derived", &s.appendix_suite());
        r.fact("dim_a", 3);
        r.strip_timing();
        r
    };
    let (a, b) = (make(), make());
    assert_eq!(a.to_json(), b.to_json());
    assert!(a.pass);
    assert_eq!(a.total, 55 + s.appendix_suite().len());
    let names: Vec<&str> = a.checks.iter().map(|c| c.name.as_str()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    let back: ReportFile = serde_json::from_str(&a.to_json()).unwrap();
    assert_eq!(back, a);
    assert!(a.to_human().ends_with(&format!("PASS: {} checks, 0 failed (check, Q)\n", a.total)));
}

#[test]
fn report_failures_surface() {
    let s = arrow();
    let bad = Rwmb { t2: wmb::Morphism::zero(&s.a2(), &s.a2()), ..s };
    let mut r = ReportFile::new("check", FieldSpec::Rationals);
    r.add("definition", &bad.check_rwmb());
    assert!(!r.pass);
    assert_eq!(r.first_failure().unwrap().name, "c12");
    let human = r.to_human();
    assert!(human.contains("FAIL definition     c12"));
    r.retain(|c| c.name.starts_with("fusion_1/"));
    assert!(r.pass);
    assert_eq!(r.total, 9);
}
