use std::collections::VecDeque;

use super::{FiniteGroup, Subgroup, SubgroupLattice};
use crate::error::{Error, Result};

/// Largest order for which isomorphism is decided.
pub const ISOMORPHISM_ORDER_CAP: usize = 16;

/// The subgroup `s` as a group in its own right; element `i` of the result
/// is the `i`-th smallest member of `s`.
pub fn subgroup_as_group(g: &FiniteGroup, s: &Subgroup) -> FiniteGroup {
    let m = s.members();
    let mut local = vec![usize::MAX; g.order()];
    for (i, &x) in m.iter().enumerate() {
        local[x] = i;
    }
    let n = m.len();
    let mut table = Vec::with_capacity(n * n);
    for &a in m {
        for &b in m {
            table.push(local[g.mul(a, b)]);
        }
    }
    FiniteGroup::from_trusted_table(format!("{}<{}>", g.name(), n), n, table)
}

/// `g / n` with cosets numbered by their minimal element.
pub fn quotient_group(g: &FiniteGroup, n: &Subgroup) -> Result<FiniteGroup> {
    if !n.is_normal_in(g, &Subgroup::whole(g)) {
        return Err(Error::InvalidInput(format!("subgroup of order {} is not normal in {}", n.order(), g.name())));
    }
    let mut coset = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if coset[x] != usize::MAX {
            continue;
        }
        for &m in n.members() {
            coset[g.mul(x, m)] = reps.len();
        }
        reps.push(x);
    }
    let k = reps.len();
    let mut table = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            table.push(coset[g.mul(a, b)]);
        }
    }
    Ok(FiniteGroup::from_trusted_table(format!("{}/{}", g.name(), n.order()), k, table))
}

fn order_profile(g: &FiniteGroup) -> Vec<usize> {
    let mut v: Vec<usize> = (0..g.order()).map(|a| g.element_order(a)).collect();
    v.sort_unstable();
    v
}

/// Brute-force search for an isomorphism: choose generators of `a`, try all
/// order-preserving images in `b`.
pub fn are_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> Result<bool> {
    for g in [a, b] {
        if g.order() > ISOMORPHISM_ORDER_CAP {
            return Err(Error::OrderCapExceeded { order: g.order(), cap: ISOMORPHISM_ORDER_CAP });
        }
    }
    if a.order() != b.order() || order_profile(a) != order_profile(b) || a.is_abelian() != b.is_abelian() {
        return Ok(false);
    }
    let mut by_order: Vec<usize> = (1..a.order()).collect();
    by_order.sort_by_key(|&x| std::cmp::Reverse(a.element_order(x)));
    let mut gens = Vec::new();
    let mut span = Subgroup::trivial(a);
    for x in by_order {
        if !span.contains(x) {
            gens.push(x);
            span = Subgroup::generated(a, &gens);
        }
    }
    let mut images = Vec::with_capacity(gens.len());
    Ok(search(a, b, &gens, &mut images))
}

fn search(a: &FiniteGroup, b: &FiniteGroup, gens: &[usize], images: &mut Vec<usize>) -> bool {
    if images.len() == gens.len() {
        return extends_to_isomorphism(a, b, gens, images);
    }
    let want = a.element_order(gens[images.len()]);
    for y in 0..b.order() {
        if b.element_order(y) == want {
            images.push(y);
            if search(a, b, gens, images) {
                return true;
            }
            images.pop();
        }
    }
    false
}

fn extends_to_isomorphism(a: &FiniteGroup, b: &FiniteGroup, gens: &[usize], images: &[usize]) -> bool {
    let mut phi = vec![usize::MAX; a.order()];
    phi[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = a.mul(x, s);
            let fy = b.mul(phi[x], t);
            if phi[y] == usize::MAX {
                phi[y] = fy;
                queue.push_back(y);
            } else if phi[y] != fy {
                return false;
            }
        }
    }
    let mut hit = vec![false; b.order()];
    phi.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
}

/// Whether `k` is isomorphic to `h0 / n` for some `n` normal in `h0 <= h`.
pub fn is_subquotient(k: &FiniteGroup, h: &FiniteGroup) -> Result<bool> {
    if k.order() > ISOMORPHISM_ORDER_CAP {
        return Err(Error::OrderCapExceeded { order: k.order(), cap: ISOMORPHISM_ORDER_CAP });
    }
    if k.order() == 1 {
        return Ok(true);
    }
    if h.order() % k.order() != 0 {
        return Ok(false);
    }
    for h0 in SubgroupLattice::new(h).representatives() {
        if h0.order() % k.order() != 0 {
            continue;
        }
        let h0 = subgroup_as_group(h, &h0);
        let whole = Subgroup::whole(&h0);
        for n in SubgroupLattice::new(&h0).subgroups() {
            if n.order() * k.order() == h0.order() && n.is_normal_in(&h0, &whole) {
                let q = quotient_group(&h0, n)?;
                if are_isomorphic(k, &q)? {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}
