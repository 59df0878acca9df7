//! Exact minimal generation: `d(K)` and the normal-generation count `d_G(N)`,
//! both by breadth-first search over the subgroups reachable with `k`
//! generators, plus full subgroup-lattice enumeration.

use std::collections::HashSet;

use super::elemset::ElementSet;
use super::group::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};
use crate::smith::abelian_invariants_finite;

/// Upper limit on the number of distinct subgroups held in one search level.
pub const LEVEL_CAP: usize = 2_000_000;

/// Minimum number of generators of `g`; `d(trivial) = 0`.
pub fn d_min(g: &FiniteGroup, cap: usize) -> Result<usize> {
    min_generating_set(g, cap).map(|s| s.len())
}

/// A generating set of minimum size.
///
/// The number of invariant factors of `G^ab` is a lower bound; when a greedy
/// set meets it the answer is exact without search. Otherwise subgroups
/// generated by `k` elements are enumerated level by level, each new
/// generator ranging over left coset representatives of the current subgroup,
/// with already-seen subgroups pruned.
pub fn min_generating_set(g: &FiniteGroup, cap: usize) -> Result<Vec<usize>> {
    check_cap(g.order(), cap)?;
    if g.order() == 1 {
        return Ok(vec![]);
    }
    let lower = abelian_invariants_finite(g, &g.whole()).torsion_factors.len().max(1);
    let greedy = greedy_generating_set(g);
    if greedy.len() == lower {
        return Ok(greedy);
    }
    let found = bfs_generate(g, |s| s.order() == g.order())?;
    Ok(found.expect("the whole group is reachable"))
}

/// Greedy generating set: repeatedly adjoin the element enlarging the
/// current subgroup most (smallest index on ties).
pub fn greedy_generating_set(g: &FiniteGroup) -> Vec<usize> {
    let mut cur = g.trivial_subgroup();
    let mut gens = Vec::new();
    while cur.order() < g.order() {
        let mut best: Option<(usize, Subgroup)> = None;
        for x in g.left_coset_reps(&cur) {
            if cur.contains(x) {
                continue;
            }
            let j = g.join(&cur, &[x]);
            if best.as_ref().map_or(true, |(_, b)| j.order() > b.order()) {
                best = Some((x, j));
            }
        }
        let (x, j) = best.expect("proper subgroup has an outside element");
        gens.push(x);
        cur = j;
    }
    gens
}

fn bfs_generate(g: &FiniteGroup, done: impl Fn(&Subgroup) -> bool) -> Result<Option<Vec<usize>>> {
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let triv = g.trivial_subgroup();
    seen.insert(triv.members().clone());
    let mut level = vec![triv];
    while !level.is_empty() {
        let mut next = Vec::new();
        for k in &level {
            for x in g.left_coset_reps(k) {
                if k.contains(x) {
                    continue;
                }
                let j = g.join(k, &[x]);
                if done(&j) {
                    return Ok(Some(j.generators().to_vec()));
                }
                if seen.insert(j.members().clone()) {
                    next.push(j);
                }
            }
        }
        if next.len() > LEVEL_CAP {
            return Err(Error::CapExceeded {
                what: "subgroup search level width",
                size: next.len(),
                cap: LEVEL_CAP,
            });
        }
        level = next;
    }
    Ok(None)
}

/// `d` of a subgroup, returning a minimum generating set in parent indices.
pub fn min_generating_set_of(parent: &FiniteGroup, h: &Subgroup, cap: usize) -> Result<Vec<usize>> {
    let (hg, emb) = parent.subgroup_group(h);
    Ok(min_generating_set(&hg, cap)?.into_iter().map(|i| emb[i]).collect())
}

pub fn d_min_of(parent: &FiniteGroup, h: &Subgroup, cap: usize) -> Result<usize> {
    min_generating_set_of(parent, h, cap).map(|s| s.len())
}

/// `d_G(N)`: least size of `S ⊆ N` whose `G`-conjugates generate `N`.
pub fn d_normal_min(parent: &FiniteGroup, n: &Subgroup, cap: usize) -> Result<usize> {
    min_normal_generating_set(parent, &parent.whole(), n, cap).map(|s| s.len())
}

/// Least `S ⊆ N` with `⟨S⟩^C = N`, where `C` normalizes `N`.
pub fn min_normal_generating_set(
    parent: &FiniteGroup,
    conjugators: &Subgroup,
    n: &Subgroup,
    cap: usize,
) -> Result<Vec<usize>> {
    if !parent.normalizes(conjugators, n) {
        return Err(Error::NotNormal);
    }
    check_cap(n.order(), cap)?;
    if n.is_trivial() {
        return Ok(vec![]);
    }
    // one representative per distinct normal closure of a single element
    let mut closures: Vec<(usize, Subgroup)> = Vec::new();
    let mut seen_cl = HashSet::new();
    for &x in n.elements() {
        if x == parent.identity() {
            continue;
        }
        let c = parent.normal_closure(conjugators, &[x]);
        if seen_cl.insert(c.members().clone()) {
            closures.push((x, c));
        }
    }
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let triv = parent.trivial_subgroup();
    seen.insert(triv.members().clone());
    let mut level: Vec<(Vec<usize>, Subgroup)> = vec![(vec![], triv)];
    while !level.is_empty() {
        let mut next = Vec::new();
        for (witness, k) in &level {
            for (x, c) in &closures {
                if c.is_subgroup_of(k) {
                    continue;
                }
                let j = parent.join(k, c.generators());
                let mut w = witness.clone();
                w.push(*x);
                if j.order() == n.order() {
                    return Ok(w);
                }
                if seen.insert(j.members().clone()) {
                    next.push((w, j));
                }
            }
        }
        level = next;
    }
    unreachable!("N is the normal closure of its elements")
}

/// One subgroup of a lattice together with its exact rank.
#[derive(Clone, Debug)]
pub struct LatticeEntry {
    /// The subgroup, whose generator list is a minimum generating set.
    pub subgroup: Subgroup,
    pub rank: usize,
}

/// Every subgroup of `g`, each tagged with `d(H)`.
///
/// Breadth-first over `⟨K, x⟩`: the level at which a subgroup first appears
/// is its minimum number of generators, and every subgroup appears because it
/// can be built by adjoining its own generators one at a time.
pub fn subgroup_lattice(g: &FiniteGroup, cap: usize) -> Result<Vec<LatticeEntry>> {
    check_cap(g.order(), cap)?;
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let triv = g.trivial_subgroup();
    seen.insert(triv.members().clone());
    let mut out = vec![LatticeEntry {
        subgroup: triv.clone(),
        rank: 0,
    }];
    let mut level = vec![triv];
    let mut rank = 0;
    while !level.is_empty() {
        rank += 1;
        let mut next = Vec::new();
        for k in &level {
            for x in g.left_coset_reps(k) {
                if k.contains(x) {
                    continue;
                }
                let j = g.join(k, &[x]);
                if seen.insert(j.members().clone()) {
                    next.push(j.clone());
                    out.push(LatticeEntry { subgroup: j, rank });
                }
            }
        }
        if next.len() > LEVEL_CAP {
            return Err(Error::CapExceeded {
                what: "subgroup lattice level width",
                size: next.len(),
                cap: LEVEL_CAP,
            });
        }
        level = next;
    }
    Ok(out)
}

fn check_cap(size: usize, cap: usize) -> Result<()> {
    if size > cap {
        Err(Error::CapExceeded {
            what: "brute-force search order",
            size,
            cap,
        })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::hom::direct_product;
    use crate::finite::perm::{dihedral, symmetric};

    fn elementary(k: usize) -> FiniteGroup {
        let z2 = FiniteGroup::cyclic(2);
        let mut g = FiniteGroup::trivial();
        for _ in 0..k {
            g = direct_product(&g, &z2, 4096).unwrap();
        }
        g
    }

    /// Exhaustive subset search, independent of the level search.
    fn d_by_subsets(g: &FiniteGroup) -> usize {
        let n = g.order();
        if n == 1 {
            return 0;
        }
        for k in 1..=n {
            let mut idx: Vec<usize> = (0..k).collect();
            loop {
                if g.closure(&idx).order() == n {
                    return k;
                }
                let mut i = k;
                while i > 0 && idx[i - 1] == n - k + i - 1 {
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
                idx[i - 1] += 1;
                for j in i..k {
                    idx[j] = idx[j - 1] + 1;
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn d_min_examples() {
        assert_eq!(d_min(&FiniteGroup::cyclic(6), 512).unwrap(), 1);
        assert_eq!(d_min(&symmetric(3).unwrap(), 512).unwrap(), 2);
        assert_eq!(d_min(&elementary(3), 512).unwrap(), 3);
        assert_eq!(d_min(&FiniteGroup::trivial(), 512).unwrap(), 0);
        for g in [symmetric(3).unwrap(), dihedral(4).unwrap(), elementary(3), symmetric(4).unwrap()] {
            assert_eq!(d_min(&g, 512).unwrap(), d_by_subsets(&g));
        }
    }

    #[test]
    fn d_min_cap() {
        assert!(d_min(&symmetric(4).unwrap(), 10).unwrap_err().is_cap());
    }

    #[test]
    fn d_normal_min_examples() {
        let s3 = symmetric(3).unwrap();
        let a3 = s3.derived_subgroup(&s3.whole());
        assert_eq!(d_normal_min(&s3, &a3, 512).unwrap(), 1);
        assert_eq!(d_normal_min(&s3, &s3.trivial_subgroup(), 512).unwrap(), 0);
        let v = elementary(2);
        assert_eq!(d_normal_min(&v, &v.whole(), 512).unwrap(), 2);
        let t = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
        assert_eq!(d_normal_min(&s3, &s3.closure(&[t]), 512).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn lattice_counts() {
        // S3 has 6 subgroups, (Z/2)^3 has 16, D8 has 10
        assert_eq!(subgroup_lattice(&symmetric(3).unwrap(), 512).unwrap().len(), 6);
        assert_eq!(subgroup_lattice(&elementary(3), 512).unwrap().len(), 16);
        assert_eq!(subgroup_lattice(&dihedral(4).unwrap(), 512).unwrap().len(), 10);
        let s4 = symmetric(4).unwrap();
        let lat = subgroup_lattice(&s4, 512).unwrap();
        assert_eq!(lat.len(), 30);
        for e in &lat {
            assert_eq!(e.subgroup.generators().len(), e.rank);
            assert_eq!(s4.closure(e.subgroup.generators()), e.subgroup);
        }
    }
}
