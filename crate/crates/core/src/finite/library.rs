//! Library of all groups of order ≤ 32, up to isomorphism.
//!
//! The stored data file lists each group by the right-regular permutations of
//! a small generating set. It is produced by [`generate`], which builds every
//! group of order `n` as a cyclic extension of a group of order `n/p` by
//! `Z/p` (every group of order ≤ 32 is solvable, so each has a normal
//! subgroup of prime index) and removes duplicates with an explicit
//! isomorphism test.

use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use super::generation::greedy_generating_set;
use super::group::FiniteGroup;
use super::iso::{automorphisms, isomorphism, signature, Signature};
use super::perm::{enumerate_perms, perm_group, Perm};
use crate::error::{Error, Result};
use crate::smith::abelian_invariants_finite;

/// Number of isomorphism classes of groups of order `n`, for `n = 0..=32`
/// (index 0 unused).
pub const KNOWN_COUNTS: [usize; 33] = [
    0, 1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15, 2, 2, 5, 4, 1, 4,
    1, 51,
];

pub const LIBRARY_MAX_ORDER: usize = 32;

const DATA: &str = include_str!("../../data/small_groups.txt");

/// One library entry; `index` is 1-based within its order.
#[derive(Clone, Debug)]
pub struct SmallGroup {
    pub order: usize,
    pub index: usize,
    pub name: String,
    pub group: FiniteGroup,
}

impl SmallGroup {
    pub fn id(&self) -> String {
        format!("{}#{}", self.order, self.index)
    }
}

/// All stored groups, ordered by order then index.
pub fn library() -> &'static [SmallGroup] {
    static LIB: OnceLock<Vec<SmallGroup>> = OnceLock::new();
    LIB.get_or_init(|| parse_library(DATA).expect("stored small-group library parses"))
}

/// Stored groups with order at most `max_order`.
pub fn groups_up_to(max_order: usize) -> impl Iterator<Item = &'static SmallGroup> {
    library().iter().filter(move |g| g.order <= max_order)
}

/// Look up `order#index` or a library name such as `D8`.
pub fn lookup(key: &str) -> Option<&'static SmallGroup> {
    if let Some((o, i)) = key.split_once('#') {
        let (o, i) = (o.parse::<usize>().ok()?, i.parse::<usize>().ok()?);
        return library().iter().find(|g| g.order == o && g.index == i);
    }
    library().iter().find(|g| g.name == key)
}

pub fn parse_library(text: &str) -> Result<Vec<SmallGroup>> {
    let mut out: Vec<SmallGroup> = Vec::new();
    let mut pending: Option<(usize, usize, String, Vec<Perm>)> = None;
    let finish = |p: (usize, usize, String, Vec<Perm>), line: usize| -> Result<SmallGroup> {
        let (order, index, name, gens) = p;
        let group = if gens.is_empty() {
            FiniteGroup::trivial()
        } else {
            perm_group(order, &gens)?
        };
        if group.order() != order {
            return Err(Error::parse(line, format!("group {order}#{index} has order {}", group.order())));
        }
        Ok(SmallGroup {
            order,
            index,
            group: group.with_name(name.clone()),
            name,
        })
    };
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("group") => {
                if let Some(p) = pending.take() {
                    out.push(finish(p, ln + 1)?);
                }
                let order = parse_num(parts.next(), ln + 1)?;
                let index = parse_num(parts.next(), ln + 1)?;
                let name = parts
                    .next()
                    .ok_or_else(|| Error::parse(ln + 1, "missing name"))?
                    .to_string();
                pending = Some((order, index, name, Vec::new()));
            }
            Some("gen") => {
                let p = pending
                    .as_mut()
                    .ok_or_else(|| Error::parse(ln + 1, "gen before group"))?;
                let perm = parts
                    .map(|t| t.parse::<usize>().map_err(|e| Error::parse(ln + 1, e.to_string())))
                    .collect::<Result<Vec<_>>>()?;
                if perm.len() != p.0 {
                    return Err(Error::parse(ln + 1, "permutation degree differs from order"));
                }
                p.3.push(perm);
            }
            Some(other) => return Err(Error::parse(ln + 1, format!("unknown record `{other}`"))),
            None => {}
        }
    }
    if let Some(p) = pending.take() {
        out.push(finish(p, text.lines().count())?);
    }
    Ok(out)
}

fn parse_num(tok: Option<&str>, line: usize) -> Result<usize> {
    tok.ok_or_else(|| Error::parse(line, "missing number"))?
        .parse()
        .map_err(|e: std::num::ParseIntError| Error::parse(line, e.to_string()))
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Every group of each order `1..=max_order`, one per isomorphism class,
/// in a deterministic order.
pub fn generate(max_order: usize) -> Vec<Vec<FiniteGroup>> {
    let mut lib: Vec<Vec<FiniteGroup>> = vec![vec![], vec![FiniteGroup::trivial()]];
    for n in 2..=max_order {
        let mut reps: Vec<(Signature, FiniteGroup)> = Vec::new();
        let mut buckets: HashMap<Signature, Vec<usize>> = HashMap::new();
        let mut consider = |g: FiniteGroup, reps: &mut Vec<(Signature, FiniteGroup)>| {
            let sig = signature(&g);
            let bucket = buckets.entry(sig.clone()).or_default();
            if bucket.iter().any(|&i| isomorphism(&reps[i].1, &g).is_some()) {
                return;
            }
            bucket.push(reps.len());
            reps.push((sig, g));
        };
        for p in (2..=n).filter(|&p| is_prime(p) && n % p == 0) {
            for base in &lib[n / p] {
                for g in cyclic_extensions(base, p) {
                    consider(g, &mut reps);
                }
            }
        }
        reps.sort_by(|a, b| a.0.cmp(&b.0));
        lib.push(reps.into_iter().map(|(_, g)| g).collect());
    }
    lib
}

/// All extensions `G = ⟨N, g⟩` with `N ⊲ G`, `G/N ≅ Z/p`, up to conjugating
/// the action by automorphisms of `N`.
///
/// With `β(x) = g⁻¹xg` and `z = gᵖ`, elements are pairs `(i, x) ↔ gⁱx` and
/// `(i,x)(j,y) = gⁱ⁺ʲ β^j(x) y`, reduced by `gᵖ = z`. Such a group exists
/// exactly when `β(z) = z` and `βᵖ(x) = z⁻¹xz`.
pub fn cyclic_extensions(base: &FiniteGroup, p: usize) -> Vec<FiniteGroup> {
    let auts = automorphisms(base);
    let m = base.order();
    let compose_maps = |f: &[usize], g: &[usize]| -> Vec<usize> { (0..m).map(|x| f[g[x]]).collect() };
    let power = |f: &[usize], k: usize| -> Vec<usize> {
        let mut acc: Vec<usize> = (0..m).collect();
        for _ in 0..k {
            acc = compose_maps(f, &acc);
        }
        acc
    };
    // conjugation classes of Aut(N), walked with a generating set
    let aut_gens = generating_subset(&auts, m);
    let index: HashMap<&Vec<usize>, usize> = auts.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let inverse = |f: &[usize]| -> Vec<usize> {
        let mut inv = vec![0; m];
        for (x, &y) in f.iter().enumerate() {
            inv[y] = x;
        }
        inv
    };
    let mut seen = vec![false; auts.len()];
    let mut out = Vec::new();
    for start in 0..auts.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < orbit.len() {
            let b = &auts[orbit[i]];
            for gam in &aut_gens {
                let c = compose_maps(gam, &compose_maps(b, &inverse(gam)));
                let ci = index[&c];
                if !seen[ci] {
                    seen[ci] = true;
                    orbit.push(ci);
                }
            }
            i += 1;
        }
        let beta = &auts[start];
        let beta_p = power(beta, p);
        let beta_pows: Vec<Vec<usize>> = (0..p).map(|j| power(beta, j)).collect();
        for z in 0..m {
            if beta[z] != z {
                continue;
            }
            let zi = base.inv(z);
            if !base
                .generators()
                .iter()
                .all(|&x| beta_p[x] == base.mul(base.mul(zi, x), z))
            {
                continue;
            }
            out.push(build_extension(base, p, &beta_pows, z));
        }
    }
    out
}

fn build_extension(base: &FiniteGroup, p: usize, beta_pows: &[Vec<usize>], z: usize) -> FiniteGroup {
    let m = base.order();
    let n = p * m;
    let mut mult = Vec::with_capacity(n * n);
    for a in 0..n {
        let (i, x) = (a / m, a % m);
        for b in 0..n {
            let (j, y) = (b / m, b % m);
            let mut e = i + j;
            let mut w = base.mul(beta_pows[j][x], y);
            if e >= p {
                e -= p;
                w = base.mul(z, w);
            }
            mult.push((e * m + w) as u32);
        }
    }
    let mut gens = vec![m + base.identity()];
    gens.extend(base.generators().iter().copied());
    let g = FiniteGroup::from_flat(n, mult, gens).expect("extension table is a group");
    debug_assert!(n > 64 || g.check_associative().is_ok());
    g
}

/// A subset of the permutation group `perms` (acting on `0..m`) that
/// generates it.
fn generating_subset(perms: &[Vec<usize>], m: usize) -> Vec<Vec<usize>> {
    let mut gens: Vec<Perm> = Vec::new();
    let mut span: HashSet<Perm> = HashSet::from([(0..m).collect()]);
    for a in perms {
        if span.len() == perms.len() {
            break;
        }
        if !span.contains(a) {
            gens.push(a.clone());
            span = enumerate_perms(m, &gens, usize::MAX)
                .expect("automorphisms are permutations")
                .into_iter()
                .collect();
        }
    }
    gens
}

/// A readable name: abelian groups by invariant factors, a few familiar
/// non-abelian families, otherwise `G<order>_<index>`.
pub fn describe(g: &FiniteGroup, index: usize) -> String {
    let n = g.order();
    if n == 1 {
        return "C1".into();
    }
    if g.is_abelian() {
        let inv = abelian_invariants_finite(g, &g.whole());
        return inv
            .torsion_factors
            .iter()
            .map(|f| format!("C{f}"))
            .collect::<Vec<_>>()
            .join("x");
    }
    let involutions = (0..n).filter(|&x| g.element_order(x) == 2).count();
    let has_index_two_cyclic = (0..n).any(|x| g.element_order(x) == n / 2);
    if has_index_two_cyclic && n % 2 == 0 {
        let r = (0..n).find(|&x| g.element_order(x) == n / 2).unwrap();
        let dihedral = (0..n).any(|s| {
            g.element_order(s) == 2 && g.mul(g.mul(s, r), s) == g.inv(r)
        });
        if dihedral {
            return if n == 6 { "S3".into() } else { format!("D{n}") };
        }
        if n == 8 && involutions == 1 {
            return "Q8".into();
        }
    }
    if n == 12 && involutions == 3 && (0..n).filter(|&x| g.element_order(x) == 3).count() == 8 {
        return "A4".into();
    }
    let count = |k: usize| (0..n).filter(|&x| g.element_order(x) == k).count();
    if n == 24 && involutions == 9 && count(3) == 8 && count(4) == 6 {
        return "S4".into();
    }
    format!("G{n}_{index}")
}

/// Text form of a library, as stored in the data file.
pub fn render(lib: &[Vec<FiniteGroup>]) -> String {
    let mut s = String::new();
    s.push_str("# subgrad small-group library v1\n");
    s.push_str("# Every group of order 1..=32 up to isomorphism, one block per group.\n");
    s.push_str("# Produced by `subgrad smallgroups --max-order 32`: cyclic extensions of\n");
    s.push_str("# smaller groups by Z/p, deduplicated by explicit isomorphism search.\n");
    s.push_str("# Counts per order agree with the classical enumeration of groups of\n");
    s.push_str("# small order (1,1,1,2,1,2,1,5,2,2,1,5,1,2,1,14,...,51).\n");
    s.push_str("# `gen` lines are right-regular permutations x -> x*g on 0..order-1.\n");
    s.push_str("# Indices are this library's own ordering, not any external catalogue.\n");
    for (order, groups) in lib.iter().enumerate() {
        for (k, g) in groups.iter().enumerate() {
            let name = describe(g, k + 1);
            s.push_str(&format!("group {order} {} {name}\n", k + 1));
            for &x in &greedy_generating_set(g) {
                let perm: Vec<String> = (0..order).map(|i| g.mul(i, x).to_string()).collect();
                s.push_str(&format!("gen {}\n", perm.join(" ")));
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_counts_up_to_16() {
        let lib = generate(16);
        for n in 1..=16 {
            assert_eq!(lib[n].len(), KNOWN_COUNTS[n], "order {n}");
        }
    }
}
