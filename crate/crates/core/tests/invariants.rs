use std::sync::Arc;

use proptest::prelude::*;

use bisetlab::arith::Cyclotomic;
use bisetlab::burnside::{compose_bisets, linearize, BisetSpace, BurnsideMorphism};
use bisetlab::catalog::Catalog;
use bisetlab::repcat::{compose, pairing, sharp, CharGroup, FieldMode, HomSpace, RepMorphism};

const SMALL: [&str; 4] = ["C1", "C2", "C3", "S3"];
const SHIFTS: [&str; 2] = ["C1", "C2"];

fn cg(name: &str) -> Arc<CharGroup> {
    CharGroup::new(Catalog::builtin().get(name).unwrap()).unwrap()
}

fn mode(split: bool) -> FieldMode {
    if split {
        FieldMode::Split
    } else {
        FieldMode::Rational
    }
}

/// Integer combination of the basis, cycling through `coeffs`.
fn combo(space: &Arc<HomSpace>, coeffs: &[i64]) -> RepMorphism {
    let c: Vec<Cyclotomic> = (0..space.dim()).map(|i| Cyclotomic::from_int(coeffs[i % coeffs.len()])).collect();
    RepMorphism::from_coefficients(space.clone(), &c).unwrap()
}

fn biset_combo(space: &Arc<BisetSpace>, coeffs: &[i64]) -> BurnsideMorphism {
    let mut out = BurnsideMorphism::transitive(space, 0).scale(coeffs[0]);
    for class in 1..space.dim() {
        let x = BurnsideMorphism::transitive(space, class).scale(coeffs[class % coeffs.len()]);
        out = out.add(&x).unwrap();
    }
    out
}

fn objects() -> impl Strategy<Value = (usize, usize, usize, usize, bool)> {
    (0..SMALL.len(), 0..SMALL.len(), 0..SMALL.len(), 0..SHIFTS.len(), any::<bool>())
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..4, 1..7)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn composition_is_bilinear((h, g, k, t, split) in objects(), x in coeffs(), y in coeffs(), z in coeffs()) {
        let (h, g, k, t) = (cg(SMALL[h]), cg(SMALL[g]), cg(SMALL[k]), cg(SHIFTS[t]));
        let m = mode(split);
        let outer = HomSpace::new(&h, &g, &t, m);
        let inner = HomSpace::new(&g, &k, &t, m);
        let (b1, b2, a) = (combo(&outer, &x), combo(&outer, &y), combo(&inner, &z));
        let lhs = compose(&b1.add(&b2).unwrap(), &a).unwrap();
        let rhs = compose(&b1, &a).unwrap().add(&compose(&b2, &a).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn sharp_is_an_anti_involution((h, g, k, t, split) in objects(), x in coeffs(), y in coeffs()) {
        let (h, g, k, t) = (cg(SMALL[h]), cg(SMALL[g]), cg(SMALL[k]), cg(SHIFTS[t]));
        let m = mode(split);
        let b = combo(&HomSpace::new(&h, &g, &t, m), &x);
        let a = combo(&HomSpace::new(&g, &k, &t, m), &y);
        prop_assert_eq!(sharp(&sharp(&b)), b.clone());
        prop_assert_eq!(sharp(&compose(&b, &a).unwrap()), compose(&sharp(&a), &sharp(&b)).unwrap());
    }

    #[test]
    fn pairing_is_symmetric_and_positive((h, g, _k, t, split) in objects(), x in coeffs(), y in coeffs()) {
        let space = HomSpace::new(&cg(SMALL[h]), &cg(SMALL[g]), &cg(SHIFTS[t]), mode(split));
        let (u, v) = (combo(&space, &x), combo(&space, &y));
        prop_assert_eq!(pairing(&u, &v).unwrap(), pairing(&v, &u).unwrap());
        let norm = pairing(&u, &u).unwrap();
        prop_assert!(norm > 0 || u.is_zero(), "norm {} of a nonzero element", norm);
    }

    #[test]
    fn linearization_is_a_functor(
        (g, h, k) in (0..3usize, 0..3usize, 0..3usize),
        t in 0..SHIFTS.len(),
        x in coeffs(),
        y in coeffs(),
    ) {
        let (g, h, k, t) = (cg(SMALL[g]), cg(SMALL[h]), cg(SMALL[k]), cg(SHIFTS[t]));
        let beta = biset_combo(&BisetSpace::new(&g, &h, &t).unwrap(), &x);
        let alpha = biset_combo(&BisetSpace::new(&h, &k, &t).unwrap(), &y);
        let composite = compose_bisets(&beta, &alpha).unwrap();
        let lhs = linearize(&composite).unwrap();
        let rhs = compose(&linearize(&beta).unwrap(), &linearize(&alpha).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
