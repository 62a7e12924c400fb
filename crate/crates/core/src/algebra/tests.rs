use std::sync::Arc;

use super::*;
use crate::arith::rational::int;
use crate::catalog::Catalog;

fn cg(name: &str) -> Arc<CharGroup> {
    CharGroup::new(Catalog::builtin().get(name).unwrap()).unwrap()
}

#[test]
fn endo_algebra_dimensions() {
    let (c1, c2) = (cg("C1"), cg("C2"));
    let a = build_endo_algebra(&c1, &c1, FieldMode::Rational).unwrap();
    assert_eq!(a.dim(), 1);
    assert_eq!(a.unit(), &[int(1)]);
    assert_eq!(build_endo_algebra(&c2, &c1, FieldMode::Rational).unwrap().dim(), 4);
    // C3 x C3 has 9 complex and 5 rational irreducibles
    assert_eq!(build_endo_algebra(&cg("C3"), &c1, FieldMode::Split).unwrap().dim(), 9);
    assert_eq!(build_endo_algebra(&cg("C3"), &c1, FieldMode::Rational).unwrap().dim(), 5);
}

#[test]
fn radical_examples() {
    assert_eq!(radical_via_trace_form(&FiniteDimAlgebra::rationals()).unwrap().radical_dim, 0);
    let r = radical_via_trace_form(&FiniteDimAlgebra::nilpotent2()).unwrap();
    assert_eq!(r.radical_dim, 1);
    assert!(!r.nonsingular);
    assert_eq!(r.basis[0][0], to_pair(&int(0)));
    let inj = fixture("injected").unwrap();
    inj.check_associative().unwrap();
    inj.check_unit().unwrap();
    assert_eq!(radical_via_trace_form(&inj).unwrap().radical_dim, 1);
    let alg = build_endo_algebra(&cg("C2"), &cg("C3"), FieldMode::Rational).unwrap();
    let r = radical_via_trace_form(&alg).unwrap();
    assert_eq!(r.radical_dim, 0);
    assert!(r.nonsingular);
}

#[test]
fn malformed_algebras_are_rejected() {
    let (o, z) = (int(1), int(0));
    // b0 b0 = b1, b1 b0 = b0: not associative with unit b0
    let c = vec![vec![vec![z.clone(), o.clone()], vec![z.clone(), o.clone()]], vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]]];
    assert!(FiniteDimAlgebra::new(vec!["a".into(), "b".into()], c, vec![o.clone(), z.clone()]).is_err());
    assert!(FiniteDimAlgebra::new(vec!["a".into()], vec![], vec![o]).is_err());
}

#[test]
fn certificate_examples() {
    let c1 = cg("C1");
    let cert = certify_semisimple(&c1, &c1, FieldMode::Split, &[c1.clone()]).unwrap();
    assert!(cert.pass);
    let probes: Vec<_> = ["C1", "C2", "C3", "C4", "S3"].iter().map(|n| cg(n)).collect();
    let cert = certify_semisimple(&cg("C2"), &cg("C3"), FieldMode::Rational, &probes).unwrap();
    assert!(cert.pass);
    assert_eq!(cert.probes.len(), 5);
    assert_eq!(cert.radical_dim, 0);
    let empty = certify_semisimple(&cg("C2"), &c1, FieldMode::Rational, &[]).unwrap();
    assert!(empty.pass && empty.probes.is_empty());
}

#[test]
fn essential_examples() {
    let cat = Catalog::builtin();
    let c1 = cg("C1");
    let e = essential_algebra(&c1, &c1, FieldMode::Rational, &cat).unwrap();
    assert_eq!((e.algebra_dim, e.quotient_dim), (1, 1));
    assert!(e.through.is_empty());
    // R_Q(C2 x C2) is spanned by composites through the trivial group
    let e = essential_algebra(&cg("C2"), &c1, FieldMode::Rational, &cat).unwrap();
    assert_eq!((e.algebra_dim, e.ideal_dim, e.quotient_dim), (4, 4, 0));
    let e = essential_algebra(&cg("C3"), &c1, FieldMode::Rational, &cat).unwrap();
    assert_eq!(e.algebra_dim, 5);
    assert_eq!(e.through, vec!["C1".to_string(), "C2".to_string()]);
}

#[test]
fn essential_needs_a_complete_catalog() {
    let mut only = Catalog::empty(64);
    only.add(Catalog::builtin().get("C1").unwrap().as_ref().clone()).unwrap();
    let err = essential_algebra(&cg("C3"), &cg("C1"), FieldMode::Rational, &only).unwrap_err();
    assert!(matches!(err, Error::IncompleteCatalog(_)));
}

#[test]
fn trivial_module_evaluation() {
    let c1 = cg("C1");
    let v = ModuleData::from_json(&serde_json::json!({"dim": 1, "action": {"b0": [[1]]}})).unwrap();
    let e = eval_simple_quotient(&c1, &v, &c1, &c1, FieldMode::Rational).unwrap();
    assert_eq!((e.dim_l, e.dim_j, e.dim_s), (1, 0, 1));
    let e = eval_simple_quotient(&c1, &v, &cg("C2"), &c1, FieldMode::Rational).unwrap();
    assert_eq!((e.dim_m, e.dim_l, e.dim_j, e.dim_s), (2, 2, 0, 2));
    let bad = ModuleData::from_json(&serde_json::json!({"dim": 1, "action": {"b0": [[2]]}})).unwrap();
    assert!(matches!(eval_simple_quotient(&c1, &bad, &c1, &c1, FieldMode::Rational), Err(Error::NotAModule(_))));
    let missing = ModuleData::from_json(&serde_json::json!({"dim": 1, "action": {}})).unwrap();
    assert!(matches!(
        eval_simple_quotient(&c1, &missing, &c1, &c1, FieldMode::Rational),
        Err(Error::NotAModule(_))
    ));
}

#[test]
fn regular_module_gives_the_whole_space() {
    // A (x)_A A = A(G x C) when V is the left regular module
    let (c2, c1) = (cg("C2"), cg("C1"));
    let alg = build_endo_algebra(&c2, &c1, FieldMode::Rational).unwrap();
    let action = (0..alg.dim())
        .map(|i| {
            let m = alg.left_multiplication(i);
            let rows: Vec<Vec<serde_json::Value>> =
                m.iter().map(|r| r.iter().map(|x| serde_json::json!(to_pair(x))).collect()).collect();
            (alg.labels()[i].clone(), serde_json::json!(rows))
        })
        .collect::<serde_json::Map<_, _>>();
    let v = ModuleData::from_json(&serde_json::json!({"dim": alg.dim(), "action": action})).unwrap();
    for g in ["C1", "C2", "C3"] {
        let e = eval_simple_quotient(&c2, &v, &cg(g), &c1, FieldMode::Rational).unwrap();
        assert_eq!(e.dim_l, e.dim_m, "{g}");
        assert_eq!(e.dim_l, e.dim_j + e.dim_s);
    }
}

#[test]
fn aut_multiplicity_examples() {
    let (c1, c2, c3) = (cg("C1"), cg("C2"), cg("C3"));
    let a = aut_multiplicities(&c1, &c1, &c1).unwrap();
    assert_eq!(a.components.len(), 1);
    assert_eq!(a.components[0].multiplicity, a.dim_m);
    let a = aut_multiplicities(&c3, &c1, &c2).unwrap();
    assert_eq!(a.components.len(), 1);
    assert_eq!(a.components[0].isotypic_dim, a.dim_m);
    let a = aut_multiplicities(&c3, &c2, &c3).unwrap();
    assert!(a.checks_pass());
    assert_eq!(a.components.len(), 2);
    assert_eq!(a.components.iter().map(|c| c.isotypic_dim).sum::<usize>(), a.dim_m);
    assert!(matches!(aut_multiplicities(&c2, &c2, &c3), Err(Error::CoprimalityViolated { .. })));
    assert!(matches!(aut_multiplicities(&c1, &c3, &cg("C3xC3")), Err(Error::CoprimalityViolated { .. })));
    assert!(matches!(aut_multiplicities(&c1, &c1, &cg("C2xC2")), Err(Error::NotCyclic(_))));
}
