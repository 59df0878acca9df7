//! Brute-force isomorphism testing and automorphism enumeration for small
//! Cayley-table groups.

use super::generation::greedy_generating_set;
use super::group::FiniteGroup;

/// Per-element isomorphism invariant: (order, centralizer size, number of
/// square roots).
pub type ElementProfile = (usize, usize, usize);

pub fn element_profiles(g: &FiniteGroup) -> Vec<ElementProfile> {
    let n = g.order();
    let mut roots = vec![0usize; n];
    for y in 0..n {
        roots[g.mul(y, y)] += 1;
    }
    (0..n)
        .map(|x| (g.element_order(x), g.centralizer_order(x), roots[x]))
        .collect()
}

/// Isomorphism-invariant summary used to bucket groups before a full test.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub order: usize,
    pub abelian: bool,
    pub center: usize,
    pub derived: usize,
    pub profile: Vec<ElementProfile>,
}

pub fn signature(g: &FiniteGroup) -> Signature {
    let mut profile = element_profiles(g);
    profile.sort_unstable();
    Signature {
        order: g.order(),
        abelian: g.is_abelian(),
        center: g.center().order(),
        derived: g.derived_subgroup(&g.whole()).order(),
        profile,
    }
}

/// An isomorphism `g → h` as an image table, if one exists.
pub fn isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Option<Vec<usize>> {
    if g.order() != h.order() {
        return None;
    }
    let mut found = None;
    search(g, h, &mut |m| {
        found = Some(m.to_vec());
        false
    });
    found
}

pub fn are_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    g.order() == h.order() && signature(g) == signature(h) && isomorphism(g, h).is_some()
}

/// All automorphisms of `g` as image tables.
pub fn automorphisms(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    search(g, g, &mut |m| {
        out.push(m.to_vec());
        true
    });
    out
}

/// Enumerate isomorphisms `g → h`, calling `visit` on each; `visit` returns
/// whether to continue.
fn search(g: &FiniteGroup, h: &FiniteGroup, visit: &mut dyn FnMut(&[usize]) -> bool) {
    let gens = greedy_generating_set(g);
    let pg = element_profiles(g);
    let ph = element_profiles(h);
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| (0..h.order()).filter(|&y| ph[y] == pg[x]).collect())
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    backtrack(g, h, &gens, &cands, &mut images, visit);
}

fn backtrack(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    cands: &[Vec<usize>],
    images: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let k = images.len();
    if k == gens.len() {
        let map = extend(g, h, gens, images).expect("checked at previous depth");
        debug_assert!(map.iter().all(|&y| y != usize::MAX));
        return visit(&map);
    }
    for &t in &cands[k] {
        images.push(t);
        let ok = extend(g, h, &gens[..=k], images).is_some();
        if ok && !backtrack(g, h, gens, cands, images, visit) {
            images.pop();
            return false;
        }
        images.pop();
    }
    true
}

/// Injective extension of `gens[i] ↦ images[i]` to `⟨gens⟩`, or `None` when
/// the assignment is inconsistent.
fn extend(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    let mut used = vec![false; h.order()];
    map[g.identity()] = h.identity();
    used[h.identity()] = true;
    let mut queue = vec![g.identity()];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let fy = h.mul(map[x], t);
            if map[y] == usize::MAX {
                if used[fy] {
                    return None;
                }
                used[fy] = true;
                map[y] = fy;
                queue.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
        i += 1;
    }
    Some(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::hom::direct_product;
    use crate::finite::perm::{dihedral, quaternion, symmetric};

    #[test]
    fn distinguishes_order_eight() {
        let d8 = dihedral(4).unwrap();
        let q8 = quaternion();
        assert!(!are_isomorphic(&d8, &q8));
        assert!(are_isomorphic(&d8, &d8.clone().with_generators(vec![d8.generators()[1], d8.generators()[0]]).unwrap()));
        let z2 = FiniteGroup::cyclic(2);
        let z3 = FiniteGroup::cyclic(3);
        let z6 = direct_product(&z2, &z3, 100).unwrap();
        assert!(are_isomorphic(&z6, &FiniteGroup::cyclic(6)));
        assert!(!are_isomorphic(&z6, &symmetric(3).unwrap()));
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&symmetric(3).unwrap()).len(), 6);
        assert_eq!(automorphisms(&dihedral(4).unwrap()).len(), 8);
        assert_eq!(automorphisms(&quaternion()).len(), 24);
        assert_eq!(automorphisms(&FiniteGroup::cyclic(8)).len(), 4);
        let z2 = FiniteGroup::cyclic(2);
        let v = direct_product(&z2, &direct_product(&z2, &z2, 100).unwrap(), 100).unwrap();
        assert_eq!(automorphisms(&v).len(), 168);
    }
}
