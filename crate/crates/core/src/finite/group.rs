use std::collections::{HashSet, VecDeque};

use super::elemset::ElementSet;
use crate::error::{Error, Result};

/// A finite group stored as a full Cayley table over element indices
/// `0..order`, together with a distinguished generating list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
    generators: Vec<usize>,
    labels: Option<Vec<String>>,
    name: Option<String>,
}

/// A subgroup of some parent [`FiniteGroup`], kept as a sorted element list,
/// a membership bitset over the parent, and a generating list.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: ElementSet,
    elements: Vec<usize>,
    generators: Vec<usize>,
}

// Subgroups compare by their element sets; generating lists are incidental.
impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl Subgroup {
    fn from_members(members: ElementSet, generators: Vec<usize>) -> Self {
        let elements = members.to_vec();
        Subgroup {
            members,
            elements,
            generators,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    /// Sorted element indices.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// Index in a supergroup of the given order.
    pub fn index_in(&self, order: usize) -> usize {
        debug_assert_eq!(order % self.order(), 0);
        order / self.order()
    }

    /// Replace the generating list; caller guarantees it generates `self`.
    pub fn with_generators(mut self, generators: Vec<usize>) -> Self {
        self.generators = generators;
        self
    }
}

impl FiniteGroup {
    /// Build a group from a Cayley table given as rows of element indices.
    /// The table is validated: it must be a Latin square with an identity,
    /// associative (checked exhaustively up to order 256), and the
    /// generators must generate the whole group.
    pub fn from_table(table: Vec<Vec<usize>>, generators: Vec<usize>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        let mut mult = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {i} has length {}", row.len())));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::InvalidGroup(format!("entry {x} out of range")));
                }
                mult.push(x as u32);
            }
        }
        let g = Self::from_flat(n, mult, generators)?;
        if n <= 256 {
            g.check_associative()?;
        }
        Ok(g)
    }

    /// Build from a flat row-major table. Checks the Latin-square property,
    /// identity, and generation but not associativity.
    pub(crate) fn from_flat(n: usize, mult: Vec<u32>, generators: Vec<usize>) -> Result<Self> {
        assert_eq!(mult.len(), n * n);
        for i in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for j in 0..n {
                let r = mult[i * n + j] as usize;
                let c = mult[j * n + i] as usize;
                if row[r] || col[c] {
                    return Err(Error::InvalidGroup("table is not a Latin square".into()));
                }
                row[r] = true;
                col[c] = true;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mult[e * n + x] as usize == x && mult[x * n + e] as usize == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inv = vec![0u32; n];
        for x in 0..n {
            let y = (0..n)
                .find(|&y| mult[x * n + y] as usize == identity)
                .expect("Latin square has a solution");
            inv[x] = y as u32;
        }
        if let Some(&bad) = generators.iter().find(|&&g| g >= n) {
            return Err(Error::InvalidGroup(format!("generator {bad} out of range")));
        }
        let g = FiniteGroup {
            order: n,
            mult,
            inv,
            identity,
            generators,
            labels: None,
            name: None,
        };
        if g.closure(&g.generators).order() != n {
            return Err(Error::InvalidGroup("generators do not generate the group".into()));
        }
        Ok(g)
    }

    /// Exhaustive associativity, identity and inverse check.
    pub fn check_associative(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z/n` with elements `0..n` under addition and generator `1`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let mult = (0..n)
            .flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32))
            .collect();
        let gens = if n == 1 { vec![] } else { vec![1] };
        Self::from_flat(n, mult, gens)
            .expect("cyclic table is valid")
            .with_name(format!("C{n}"))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(Error::InvalidGroup("label count differs from order".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Replace the distinguished generators.
    pub fn with_generators(mut self, generators: Vec<usize>) -> Result<Self> {
        if generators.iter().any(|&g| g >= self.order)
            || self.closure(&generators).order() != self.order
        {
            return Err(Error::InvalidGroup("generators do not generate the group".into()));
        }
        self.generators = generators;
        Ok(self)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// Cayley table as rows.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn pow(&self, x: usize, k: usize) -> usize {
        let mut acc = self.identity;
        let mut base = x;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// `g x g⁻¹`
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `[x, y] = x⁻¹ y⁻¹ x y`
    #[inline]
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&a| self.generators.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_members(ElementSet::full(self.order), self.generators.clone())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_members(ElementSet::from_indices(self.order, [self.identity]), vec![])
    }

    /// Smallest subgroup containing `seed`.
    pub fn closure(&self, seed: &[usize]) -> Subgroup {
        let gens: Vec<usize> = dedup_nontrivial(seed, self.identity);
        let mut members = ElementSet::empty(self.order);
        members.insert(self.identity);
        let mut list = vec![self.identity];
        self.grow(&mut members, &mut list, &gens, 0);
        Subgroup::from_members(members, gens)
    }

    /// `⟨base ∪ extra⟩`.
    pub fn join(&self, base: &Subgroup, extra: &[usize]) -> Subgroup {
        let fresh: Vec<usize> = extra.iter().copied().filter(|&x| !base.contains(x)).collect();
        if fresh.is_empty() {
            return base.clone();
        }
        let mut gens = base.generators.clone();
        gens.extend(dedup_nontrivial(&fresh, self.identity));
        let mut members = base.members.clone();
        let mut list = base.elements.clone();
        // Every new element lies in a coset x·g with x already present, so one
        // sweep over the old elements with only the new generators seeds the
        // queue, after which all generators are applied.
        let start = list.len();
        for i in 0..start {
            for &g in &fresh {
                let y = self.mul(list[i], g);
                if members.insert(y) {
                    list.push(y);
                }
            }
        }
        self.grow(&mut members, &mut list, &gens, start);
        Subgroup::from_members(members, gens)
    }

    fn grow(&self, members: &mut ElementSet, list: &mut Vec<usize>, gens: &[usize], from: usize) {
        let mut i = from;
        while i < list.len() {
            let x = list[i];
            for &g in gens {
                let y = self.mul(x, g);
                if members.insert(y) {
                    list.push(y);
                }
            }
            i += 1;
        }
    }

    /// `⟨seed⟩^C`: the subgroup generated by all conjugates `c s c⁻¹` with
    /// `c ∈ conjugators`, `s ∈ seed`.
    pub fn normal_closure(&self, conjugators: &Subgroup, seed: &[usize]) -> Subgroup {
        let mut n = self.closure(seed);
        let cgens: Vec<usize> = if conjugators.generators.is_empty() && !conjugators.is_trivial() {
            conjugators.elements.clone()
        } else {
            conjugators.generators.clone()
        };
        loop {
            let mut missing = Vec::new();
            for &c in &cgens {
                for &s in &n.generators {
                    let t = self.conj(c, s);
                    if !n.contains(t) && !missing.contains(&t) {
                        missing.push(t);
                    }
                }
            }
            if missing.is_empty() {
                return n;
            }
            n = self.join(&n, &missing);
        }
    }

    /// `⟨[x, y] : x ∈ X, y ∈ Y⟩`.
    ///
    /// Computed as the normal closure under `⟨X, Y⟩` of commutators of
    /// generators, which equals the subgroup generated by all commutators.
    pub fn commutator_subgroup(&self, x: &Subgroup, y: &Subgroup) -> Subgroup {
        let xg = gens_or_elements(x);
        let yg = gens_or_elements(y);
        let mut seeds = Vec::new();
        for &a in &xg {
            for &b in &yg {
                let c = self.commutator(a, b);
                if c != self.identity && !seeds.contains(&c) {
                    seeds.push(c);
                }
            }
        }
        let mut all = xg.clone();
        all.extend(yg.iter().copied());
        let ambient = self.closure(&all);
        self.normal_closure(&ambient, &seeds)
    }

    /// Brute-force `⟨[x, y] : x ∈ X, y ∈ Y⟩` over all pairs.
    pub fn commutator_subgroup_exhaustive(&self, x: &Subgroup, y: &Subgroup) -> Subgroup {
        let mut seeds = HashSet::new();
        for &a in x.elements() {
            for &b in y.elements() {
                seeds.insert(self.commutator(a, b));
            }
        }
        let mut seeds: Vec<usize> = seeds.into_iter().collect();
        seeds.sort_unstable();
        self.closure(&seeds)
    }

    pub fn derived_subgroup(&self, h: &Subgroup) -> Subgroup {
        self.commutator_subgroup(h, h)
    }

    /// True when every element of `conjugators` normalizes `n`.
    pub fn normalizes(&self, conjugators: &Subgroup, n: &Subgroup) -> bool {
        let cg = gens_or_elements(conjugators);
        let ng = gens_or_elements(n);
        cg.iter()
            .all(|&c| ng.iter().all(|&s| n.contains(self.conj(c, s))))
    }

    pub fn is_normal(&self, n: &Subgroup) -> bool {
        self.normalizes(&self.whole(), n)
    }

    pub fn is_subgroup(&self, s: &Subgroup) -> bool {
        s.contains(self.identity)
            && s.elements.iter().all(|&a| {
                s.contains(self.inv(a)) && s.elements.iter().all(|&b| s.contains(self.mul(a, b)))
            })
    }

    pub fn center(&self) -> Subgroup {
        let z: Vec<usize> = (0..self.order)
            .filter(|&x| self.generators.iter().all(|&g| self.mul(g, x) == self.mul(x, g)))
            .collect();
        self.closure(&z)
    }

    pub fn centralizer_order(&self, x: usize) -> usize {
        (0..self.order)
            .filter(|&g| self.mul(g, x) == self.mul(x, g))
            .count()
    }

    /// Representatives of the left cosets `gH`, each the smallest index in
    /// its coset, in ascending order.
    pub fn left_coset_reps(&self, h: &Subgroup) -> Vec<usize> {
        let mut covered = ElementSet::empty(self.order);
        let mut reps = Vec::with_capacity(self.order / h.order());
        for g in 0..self.order {
            if covered.contains(g) {
                continue;
            }
            reps.push(g);
            for &k in h.elements() {
                covered.insert(self.mul(g, k));
            }
        }
        reps
    }

    /// A Sylow `p`-subgroup, grown one step at a time from the trivial
    /// subgroup: at each step the smallest element `g` normalizing the current
    /// `P` with `g ∉ P`, `gᵖ ∈ P` is adjoined. Trivial when `p ∤ |G|`.
    pub fn sylow_subgroup(&self, p: usize) -> Subgroup {
        let mut target = 1;
        let mut m = self.order;
        while p > 1 && m % p == 0 {
            m /= p;
            target *= p;
        }
        let mut pg = self.trivial_subgroup();
        while pg.order() < target {
            let g = (0..self.order)
                .find(|&g| {
                    !pg.contains(g)
                        && pg.contains(self.pow(g, p))
                        && pg.generators.iter().all(|&s| pg.contains(self.conj(g, s)))
                })
                .expect("a p-subgroup below Sylow order has a proper p-extension in its normalizer");
            pg = self.join(&pg, &[g]);
            debug_assert_eq!(pg.order() % p, 0);
        }
        pg
    }

    /// The subgroup `h` as a group in its own right. Element `i` of the result
    /// corresponds to `h.elements()[i]`; the returned vector is that embedding.
    pub fn subgroup_group(&self, h: &Subgroup) -> (FiniteGroup, Vec<usize>) {
        let els = h.elements();
        let m = els.len();
        let mut pos = vec![usize::MAX; self.order];
        for (i, &e) in els.iter().enumerate() {
            pos[e] = i;
        }
        let mut mult = Vec::with_capacity(m * m);
        for &a in els {
            for &b in els {
                mult.push(pos[self.mul(a, b)] as u32);
            }
        }
        let gens = h.generators.iter().map(|&g| pos[g]).collect();
        let g = FiniteGroup::from_flat(m, mult, gens).expect("subgroup table is a group");
        (g, els.to_vec())
    }

    /// Every normal subgroup, in discovery order starting from the trivial one.
    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        let whole = self.whole();
        let mut classes: Vec<Subgroup> = Vec::new();
        let mut seen_class = HashSet::new();
        for x in 0..self.order {
            let c = self.normal_closure(&whole, &[x]);
            if seen_class.insert(c.members.clone()) {
                classes.push(c);
            }
        }
        let mut found = vec![self.trivial_subgroup()];
        let mut seen: HashSet<ElementSet> = HashSet::new();
        seen.insert(found[0].members.clone());
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for c in &classes {
                if c.is_subgroup_of(&found[i]) {
                    continue;
                }
                let j = self.join(&found[i], &c.generators);
                if seen.insert(j.members.clone()) {
                    found.push(j);
                    queue.push_back(found.len() - 1);
                }
            }
        }
        found
    }

    /// `Z/n` check: some element has order `|G|`.
    pub fn is_cyclic(&self) -> bool {
        (0..self.order).any(|x| self.element_order(x) == self.order)
    }
}

fn dedup_nontrivial(seed: &[usize], identity: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(seed.len());
    for &s in seed {
        if s != identity && !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

fn gens_or_elements(s: &Subgroup) -> Vec<usize> {
    if s.generators.is_empty() && !s.is_trivial() {
        s.elements.clone()
    } else {
        s.generators.clone()
    }
}
