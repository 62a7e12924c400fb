use std::sync::Arc;

use super::*;
use crate::catalog::Catalog;
use crate::character::permutation_character;
use crate::group::{conjugacy_classes, projections_kernels};
use crate::repcat::{compose, identity};

fn cg(name: &str) -> Arc<CharGroup> {
    CharGroup::new(Catalog::builtin().get(name).unwrap()).unwrap()
}

fn space(g: &str, h: &str, t: &str) -> Arc<BisetSpace> {
    BisetSpace::new(&cg(g), &cg(h), &cg(t)).unwrap()
}

#[test]
fn basis_sizes() {
    assert_eq!(space("C1", "C1", "C1").dim(), 1);
    assert_eq!(space("C2", "C1", "C1").dim(), 2);
    // subgroups of C2 x C2 up to conjugacy
    assert_eq!(space("C2", "C2", "C1").dim(), 5);
    assert_eq!(space("S3", "C1", "C1").dim(), 4);
}

#[test]
fn linearized_class_is_the_permutation_character() {
    let s = space("S3", "C2", "C2");
    let p = s.product();
    let classes = conjugacy_classes(p.group());
    for c in 0..s.dim() {
        let direct = permutation_character(p.group(), &classes, s.class_representative(c));
        let grid = linearize_class(&s, c);
        for (k, v) in direct.iter().enumerate() {
            let x = classes.representative(k);
            let cell = (s.left().classes().class_of(p.coord(x, 0)) * s.right().num_classes()
                + s.right().classes().class_of(p.coord(x, 1)))
                * s.shift().num_classes()
                + s.shift().classes().class_of(p.coord(x, 2));
            assert_eq!(&grid[cell], v, "class {c}, element {x}");
        }
    }
}

#[test]
fn trivial_subgroup_linearizes_to_the_regular_character() {
    let s = space("C3", "S3", "C2");
    let trivial = Subgroup::trivial(s.product().group());
    let x = BurnsideMorphism::of_subgroup(&s, &trivial).unwrap();
    let lin = linearize(&x).unwrap();
    assert_eq!(lin.values()[0], Cyclotomic::from_int(s.product().group().order() as i64));
    assert!(lin.values()[1..].iter().all(Cyclotomic::is_zero));
}

#[test]
fn identity_biset_is_a_two_sided_unit() {
    let (g, h, t) = (cg("S3"), cg("C2"), cg("C1"));
    let id_g = identity_biset(&g, &t).unwrap();
    let id_h = identity_biset(&h, &t).unwrap();
    let s = BisetSpace::new(&g, &h, &t).unwrap();
    for x in s.basis() {
        assert_eq!(compose_bisets(&id_g, &x).unwrap(), x);
        assert_eq!(compose_bisets(&x, &id_h).unwrap(), x);
    }
    assert_eq!(linearize(&id_g).unwrap(), identity(&g, &t, FieldMode::Rational));
    let c5 = cg("C5");
    assert_eq!(beta_r(&c5, 1, &t).unwrap(), identity_biset(&c5, &t).unwrap());
}

#[test]
fn diagonal_of_c2_composes_with_itself() {
    // (C2 x C2)/Delta o (C2 x C2)/Delta = (C2 x C2)/Delta, and
    // (C2 x C2)/1 o (C2 x C2)/1 = 2 (C2 x C2)/1.
    let (c2, c1) = (cg("C2"), cg("C1"));
    let s = BisetSpace::new(&c2, &c2, &c1).unwrap();
    let delta = identity_biset(&c2, &c1).unwrap();
    assert_eq!(compose_bisets(&delta, &delta).unwrap(), delta);
    let free = BurnsideMorphism::of_subgroup(&s, &Subgroup::trivial(s.product().group())).unwrap();
    assert_eq!(compose_bisets(&free, &free).unwrap(), free.scale(2));
}

#[test]
fn beta_r_is_multiplicative() {
    for (name, shift) in [("C3", "C2"), ("C4", "C2"), ("C5", "C2"), ("C6", "C1")] {
        let (d, t) = (cg(name), cg(shift));
        let m = d.order() as i64;
        let units: Vec<i64> = (1..=m).filter(|r| num_integer::Integer::gcd(r, &m) == 1).collect();
        for &r in &units {
            for &s in &units {
                let lhs = compose_bisets(&beta_r(&d, r, &t).unwrap(), &beta_r(&d, s, &t).unwrap()).unwrap();
                assert_eq!(lhs, beta_r(&d, (r * s) % m, &t).unwrap(), "{name}: {r} * {s}");
            }
        }
    }
    let t = cg("C1");
    assert!(matches!(beta_r(&cg("C4"), 2, &t), Err(Error::NotAUnit { .. })));
    assert!(matches!(beta_r(&cg("C2xC2"), 1, &t), Err(Error::NotCyclic(_))));
}

#[test]
fn composition_checks_factors() {
    let (c2, c3) = (cg("C2"), cg("C3"));
    let a = identity_biset(&c2, &c2).unwrap();
    let b = identity_biset(&c3, &c2).unwrap();
    assert!(matches!(compose_bisets(&b, &a), Err(Error::FactorMismatch(_))));
    let c = identity_biset(&c2, &c3).unwrap();
    assert!(matches!(compose_bisets(&c, &a), Err(Error::FactorMismatch(_))));
}

fn check_functorial(g: &str, h: &str, k: &str, t: &str) {
    let (g, h, k, t) = (cg(g), cg(h), cg(k), cg(t));
    let sb = BisetSpace::new(&g, &h, &t).unwrap();
    let sa = BisetSpace::new(&h, &k, &t).unwrap();
    let out = BisetSpace::new(&g, &k, &t).unwrap();
    for b in sb.basis() {
        let lb = linearize(&b).unwrap();
        for a in sa.basis() {
            let c = compose_bisets(&b, &a).unwrap();
            assert_eq!(linearize(&c).unwrap(), compose(&lb, &linearize(&a).unwrap()).unwrap());
            // containments of projections and kernels, up to conjugacy
            let e = sb.class_representative(*b.coefficients().keys().next().unwrap());
            let d = sa.class_representative(*a.coefficients().keys().next().unwrap());
            let (p1e, k1e) = projections_kernels(sb.product(), e, 0).unwrap();
            let (p2d, k2d) = projections_kernels(sa.product(), d, 1).unwrap();
            for &class in c.coefficients().keys() {
                let s = out.class_representative(class);
                let (p1s, k1s) = projections_kernels(out.product(), s, 0).unwrap();
                let (p2s, k2s) = projections_kernels(out.product(), s, 1).unwrap();
                assert!(p1s.order() <= p1e.order() && k1s.order() >= k1e.order());
                assert!(p2s.order() <= p2d.order() && k2s.order() >= k2d.order());
            }
        }
    }
}

#[test]
fn linearization_is_functorial() {
    check_functorial("C2", "C2", "C2", "C1");
    check_functorial("C3", "C2", "C1", "C2");
    check_functorial("S3", "C2", "C2", "C1");
    check_functorial("C2", "S3", "C3", "C1");
    check_functorial("C4", "C2", "C2", "C2");
}

#[test]
fn composition_is_associative() {
    let (g, h, k, l, t) = (cg("C2"), cg("S3"), cg("C2"), cg("C3"), cg("C1"));
    let s1 = BisetSpace::new(&g, &h, &t).unwrap().basis();
    let s2 = BisetSpace::new(&h, &k, &t).unwrap().basis();
    let s3 = BisetSpace::new(&k, &l, &t).unwrap().basis();
    for c in &s1 {
        for b in &s2 {
            for a in &s3 {
                let lhs = compose_bisets(&compose_bisets(c, b).unwrap(), a).unwrap();
                let rhs = compose_bisets(c, &compose_bisets(b, a).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn class_json_names_the_groups() {
    let s = space("C2", "C3", "C1");
    let j = s.class_to_json(0);
    assert_eq!(j["groups"], serde_json::json!(["C2", "C3", "C1"]));
    assert_eq!(j["subgroup"], serde_json::json!([0]));
}
