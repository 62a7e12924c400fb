use std::sync::Arc;

use super::*;
use crate::catalog::Catalog;

fn cg(name: &str) -> Arc<CharGroup> {
    CharGroup::new(Catalog::builtin().get(name).unwrap()).unwrap()
}

fn regular(space: &Arc<HomSpace>) -> RepMorphism {
    let mut v = vec![Cyclotomic::zero(); space.num_cells()];
    v[0] = Cyclotomic::from_int(space.product_order() as i64);
    RepMorphism::from_values(space.clone(), v).unwrap()
}

fn trivial(space: &Arc<HomSpace>) -> RepMorphism {
    RepMorphism::from_values(space.clone(), vec![Cyclotomic::one(); space.num_cells()]).unwrap()
}

#[test]
fn identity_values() {
    let (c1, c2) = (cg("C1"), cg("C2"));
    let id = identity(&c2, &c1, FieldMode::Split);
    assert_eq!(id.value(0, 0, 0), &Cyclotomic::from_int(2));
    assert_eq!(id.value(1, 1, 0), &Cyclotomic::from_int(2));
    assert!(id.value(0, 1, 0).is_zero() && id.value(1, 0, 0).is_zero());
    let t = cg("C3");
    let id1 = identity(&cg("C1"), &t, FieldMode::Rational);
    assert!(id1.values().iter().all(|v| *v == Cyclotomic::one()));
}

#[test]
fn identity_laws_and_idempotence() {
    for mode in [FieldMode::Split, FieldMode::Rational] {
        let (h, k, t) = (cg("S3"), cg("C2"), cg("C3"));
        let space = HomSpace::new(&h, &k, &t, mode);
        let id_h = identity(&h, &t, mode);
        let id_k = identity(&k, &t, mode);
        for a in space.basis() {
            assert_eq!(compose(&id_h, &a).unwrap(), a);
            assert_eq!(compose(&a, &id_k).unwrap(), a);
        }
        assert_eq!(compose(&id_h, &id_h).unwrap(), id_h);
        assert_eq!(op_swap(&id_h), id_h);
        assert_eq!(sharp(&id_h), id_h);
    }
}

#[test]
fn regular_characters_convolve_to_a_multiple() {
    let (h, g, k, t) = (cg("C2"), cg("S3"), cg("C3"), cg("C2"));
    let b = regular(&HomSpace::new(&h, &g, &t, FieldMode::Split));
    let a = regular(&HomSpace::new(&g, &k, &t, FieldMode::Split));
    let c = compose(&b, &a).unwrap();
    let want = regular(&HomSpace::new(&h, &k, &t, FieldMode::Split))
        .scale(&Cyclotomic::from_int((g.order() * t.order()) as i64));
    assert_eq!(c, want);
    let zero = HomSpace::new(&g, &k, &t, FieldMode::Split).zero();
    assert!(compose(&b, &zero).unwrap().is_zero());
}

#[test]
fn composition_checks_objects() {
    let (c2, c3) = (cg("C2"), cg("C3"));
    let a = identity(&c2, &c2, FieldMode::Split);
    let b = identity(&c3, &c2, FieldMode::Split);
    assert!(matches!(compose(&b, &a), Err(Error::ObjectMismatch(_))));
    let c = identity(&c2, &c3, FieldMode::Split);
    assert!(matches!(compose(&c, &a), Err(Error::ShiftMismatch(..))));
    let d = identity(&c2, &c2, FieldMode::Rational);
    assert!(matches!(compose(&d, &a), Err(Error::FieldMismatch)));
}

#[test]
fn op_and_sharp_are_involutions() {
    let (h, l, t) = (cg("C3"), cg("S3"), cg("C2"));
    let space = HomSpace::new(&h, &l, &t, FieldMode::Split);
    for u in space.basis() {
        assert_eq!(op_swap(&op_swap(&u)), u);
        assert_eq!(sharp(&sharp(&u)), u);
        let s = sharp(&u);
        assert!(s.space().source().group().same_table(h.group()));
    }
}

#[test]
fn sharp_reverses_composition() {
    let (h, g, k, t) = (cg("C3"), cg("C2"), cg("S3"), cg("C3"));
    let bs = HomSpace::new(&h, &g, &t, FieldMode::Split).basis();
    let as_ = HomSpace::new(&g, &k, &t, FieldMode::Split).basis();
    for b in bs.iter().step_by(3) {
        for a in as_.iter().step_by(2) {
            let lhs = sharp(&compose(b, a).unwrap());
            let rhs = compose(&sharp(a), &sharp(b)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn tau_examples() {
    for l in ["C1", "C2", "C3", "S3", "C4"] {
        let (l, t) = (cg(l), cg("C2"));
        let space = HomSpace::new(&l, &l, &t, FieldMode::Rational);
        assert_eq!(tau(&trivial(&space)).unwrap(), 1);
        assert_eq!(tau(&regular(&space)).unwrap(), l.order() as i64);
        assert_eq!(tau(&identity(&l, &t, FieldMode::Rational)).unwrap(), l.num_classes() as i64);
    }
}

#[test]
fn pairing_examples() {
    let (h, l, t) = (cg("S3"), cg("C3"), cg("C2"));
    let space = HomSpace::new(&h, &l, &t, FieldMode::Split);
    assert_eq!(pairing(&trivial(&space), &trivial(&space)).unwrap(), 1);
    let r = regular(&space);
    assert_eq!(pairing(&r, &r).unwrap(), space.product_order() as i64);
    let b = space.basis();
    assert_eq!(pairing(&b[3], &b[3]).unwrap(), 1);
    assert_eq!(pairing(&b[3], &b[4]).unwrap(), 0);
}

#[test]
fn gram_examples() {
    let (c1, c3) = (cg("C1"), cg("C3"));
    assert_eq!(gram_matrix(&c1, &c1, &c1, FieldMode::Split).unwrap(), vec![vec![1]]);
    assert_eq!(gram_matrix(&c3, &c1, &c1, FieldMode::Rational).unwrap(), vec![vec![1, 0], vec![0, 2]]);
    let g = gram_matrix(&cg("C4"), &c3, &c1, FieldMode::Split).unwrap();
    for (i, r) in g.iter().enumerate() {
        for (j, &x) in r.iter().enumerate() {
            assert_eq!(x, i64::from(i == j));
        }
    }
    let rep = build_gram(&cg("C2"), &c3, &cg("C3"), FieldMode::Rational).unwrap();
    assert!(rep.symmetric && rep.pd);
}

#[test]
fn nondegeneracy_examples() {
    let (c1, c2, c3) = (cg("C1"), cg("C2"), cg("C3"));
    let r = check_pairing_nondegenerate(&c1, &c1, &c1, FieldMode::Rational).unwrap();
    assert_eq!((r.rank, r.dim, r.pass), (1, 1, true));
    let r = check_pairing_nondegenerate(&c2, &c2, &c3, FieldMode::Rational).unwrap();
    assert!(r.pass);
    assert_eq!(r.rank, r.dim);
}

#[test]
fn coefficients_reproduce_values() {
    let (h, l, t) = (cg("C4"), cg("S3"), cg("C3"));
    for mode in [FieldMode::Split, FieldMode::Rational] {
        let space = HomSpace::new(&h, &l, &t, mode);
        let basis = space.basis();
        let a = compose(&identity(&h, &t, mode), &basis[1]).unwrap();
        let mixed = a.add(&basis[basis.len() - 1]).unwrap().add(&basis[2]).unwrap();
        let coeffs = mixed.coefficients().unwrap().to_vec();
        let rebuilt = RepMorphism::from_coefficients(space.clone(), &coeffs).unwrap();
        assert_eq!(rebuilt, mixed);
    }
}

#[test]
fn rational_mode_rejects_unstable_values() {
    let (c3, c1) = (cg("C3"), cg("C1"));
    let split = HomSpace::new(&c3, &c1, &c1, FieldMode::Split);
    let rational = HomSpace::new(&c3, &c1, &c1, FieldMode::Rational);
    let chi = split.basis()[1].values().to_vec();
    assert!(matches!(RepMorphism::from_values(rational, chi), Err(Error::NotRational(_))));
}
