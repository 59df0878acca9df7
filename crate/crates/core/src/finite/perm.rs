//! Permutation groups, converted to Cayley tables by closure.
//!
//! Permutations are image lists on `0..degree`; the product `x·y` applies
//! `x` first, so `(x·y)[i] = y[x[i]]`.

use std::collections::HashMap;

use super::group::FiniteGroup;
use crate::error::{Error, Result};

pub type Perm = Vec<usize>;

pub fn compose(x: &[usize], y: &[usize]) -> Perm {
    x.iter().map(|&i| y[i]).collect()
}

pub fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&i| i < p.len() && !std::mem::replace(&mut seen[i], true))
}

/// All elements of the group generated by `gens`, identity first, in
/// breadth-first discovery order.
pub fn enumerate_perms(degree: usize, gens: &[Perm], cap: usize) -> Result<Vec<Perm>> {
    for g in gens {
        if g.len() != degree || !is_permutation(g) {
            return Err(Error::InvalidGroup(format!("not a permutation of degree {degree}: {g:?}")));
        }
    }
    let id: Perm = (0..degree).collect();
    let mut index: HashMap<Perm, usize> = HashMap::new();
    index.insert(id.clone(), 0);
    let mut elems = vec![id];
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let y = compose(&elems[i], g);
            if !index.contains_key(&y) {
                if elems.len() >= cap {
                    return Err(Error::CapExceeded {
                        what: "permutation group order",
                        size: elems.len() + 1,
                        cap,
                    });
                }
                index.insert(y.clone(), elems.len());
                elems.push(y);
            }
        }
        i += 1;
    }
    Ok(elems)
}

/// Cayley table of the permutation group generated by `gens`; generator `i`
/// of the result is the element corresponding to `gens[i]`.
pub fn perm_group(degree: usize, gens: &[Perm]) -> Result<FiniteGroup> {
    perm_group_capped(degree, gens, crate::Caps::default().table).map(|(g, _)| g)
}

pub fn perm_group_capped(degree: usize, gens: &[Perm], cap: usize) -> Result<(FiniteGroup, Vec<Perm>)> {
    let elems = enumerate_perms(degree, gens, cap)?;
    let index: HashMap<&Perm, usize> = elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let n = elems.len();
    let mut mult = Vec::with_capacity(n * n);
    for x in &elems {
        for y in &elems {
            mult.push(index[&compose(x, y)] as u32);
        }
    }
    let generators = gens.iter().map(|g| index[g]).collect();
    let g = FiniteGroup::from_flat(n, mult, generators)?;
    Ok((g, elems))
}

/// Symmetric group on `n` points, generated by a transposition and an n-cycle.
pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    if n <= 1 {
        return Ok(FiniteGroup::trivial().with_name(format!("S{n}")));
    }
    let mut t: Perm = (0..n).collect();
    t.swap(0, 1);
    let c: Perm = (0..n).map(|i| (i + 1) % n).collect();
    let gens = if n == 2 { vec![t] } else { vec![t, c] };
    Ok(perm_group(n, &gens)?.with_name(format!("S{n}")))
}

/// Alternating group on `n ≥ 3` points, generated by 3-cycles `(0 1 i)`.
pub fn alternating(n: usize) -> Result<FiniteGroup> {
    if n < 3 {
        return Ok(FiniteGroup::trivial().with_name(format!("A{n}")));
    }
    let gens: Vec<Perm> = (2..n)
        .map(|i| {
            let mut p: Perm = (0..n).collect();
            p[0] = 1;
            p[1] = i;
            p[i] = 0;
            p
        })
        .collect();
    Ok(perm_group(n, &gens)?.with_name(format!("A{n}")))
}

/// Dihedral group of order `2m` acting on an m-gon.
pub fn dihedral(m: usize) -> Result<FiniteGroup> {
    if m < 3 {
        return Err(Error::Domain("dihedral groups here need m >= 3".into()));
    }
    let r: Perm = (0..m).map(|i| (i + 1) % m).collect();
    let s: Perm = (0..m).map(|i| (m - i) % m).collect();
    Ok(perm_group(m, &[r, s])?.with_name(format!("D{}", 2 * m)))
}

/// Quaternion group of order 8 in its regular representation.
pub fn quaternion() -> FiniteGroup {
    // elements ±1, ±i, ±j, ±k as 0..8: 0=1, 1=-1, 2=i, 3=-i, 4=j, 5=-j, 6=k, 7=-k
    let unit = |x: usize| x / 2; // 0:1, 1:i, 2:j, 3:k
    let sign = |x: usize| x % 2;
    let mul = |a: usize, b: usize| -> usize {
        // quaternion unit products: (unit, sign)
        let table = [
            [(0, 0), (1, 0), (2, 0), (3, 0)],
            [(1, 0), (0, 1), (3, 0), (2, 1)],
            [(2, 0), (3, 1), (0, 1), (1, 0)],
            [(3, 0), (2, 0), (1, 1), (0, 1)],
        ];
        let (u, s) = table[unit(a)][unit(b)];
        2 * u + (s + sign(a) + sign(b)) % 2
    };
    let tbl: Vec<Vec<usize>> = (0..8).map(|a| (0..8).map(|b| mul(a, b)).collect()).collect();
    FiniteGroup::from_table(tbl, vec![2, 4]).expect("Q8 table").with_name("Q8")
}
