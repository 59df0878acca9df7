//! Upper and lower bounds for the number of relators needed to present a
//! finite group on a given generating tuple, and a bounded-length brute
//! force for the exact value on tiny groups.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::finite::FiniteGroup;
use crate::fp::coset::{coset_enumerate, CosetTable};
use crate::fp::presentation::Presentation;
use crate::fp::rs::reidemeister_schreier;
use crate::fp::word::Word;
use crate::schur::schur_multiplier;

/// Relators of `K` on `T` found by [`relations_upper`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpperWitness {
    pub count: usize,
    pub presentation: Presentation,
    /// Schreier generators of the kernel before pruning.
    pub initial: usize,
}

/// Cayley-graph action of the free group on `T` on the elements of `K`.
pub fn cayley_table(k: &FiniteGroup, t: &[usize]) -> Result<CosetTable> {
    if k.closure(t).order() != k.order() {
        return Err(Error::Domain("the tuple does not generate the group".into()));
    }
    let perms: Vec<Vec<usize>> = t.iter().map(|&x| (0..k.order()).map(|g| k.mul(g, x)).collect()).collect();
    CosetTable::from_permutations(Presentation::free(t.len()), Vec::new(), &perms, k.identity())
}

/// Value of a word over `T` in `K`.
pub fn evaluate(k: &FiniteGroup, t: &[usize], w: &Word) -> usize {
    w.letters().iter().fold(k.identity(), |acc, &l| {
        let x = t[l.unsigned_abs() as usize - 1];
        k.mul(acc, if l > 0 { x } else { k.inv(x) })
    })
}

/// Whether `⟨T | rels⟩` has exactly `order` elements (it always maps onto
/// `K` when the relators hold in `K`).
pub fn presents_order(rank: usize, rels: &[Word], order: usize, cap: usize) -> bool {
    let p = Presentation::new(rank, rels.iter().cloned()).expect("relators use known generators");
    matches!(coset_enumerate(&p, &[], cap), Ok(t) if t.index() == order)
}

/// A concrete presentation of `K` on `T`. The Schreier generators of the
/// trivial subgroup in the Cayley graph generate the kernel of the free
/// group onto `K`; duplicates up to cyclic conjugacy are removed, then
/// relators are dropped greedily (longest first) while the remaining ones
/// still enumerate to `|K|` cosets.
pub fn relations_upper(k: &FiniteGroup, t: &[usize], max_cosets: usize) -> Result<UpperWitness> {
    let table = cayley_table(k, t)?;
    let sp = reidemeister_schreier(&table)?;
    let initial = sp.schreier_generators.len();
    let mut seen = HashSet::new();
    let mut rels: Vec<Word> = Vec::new();
    for w in sp.schreier_generators {
        let w = w.cyclic_reduce();
        if !w.is_empty() && seen.insert(w.cyclic_canonical()) {
            rels.push(w);
        }
    }
    rels.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    let cap = max_cosets.min(64 * k.order().max(1));
    let mut i = rels.len();
    while i > 0 {
        i -= 1;
        let mut trial = rels.clone();
        trial.remove(i);
        if presents_order(t.len(), &trial, k.order(), cap) {
            rels = trial;
        }
    }
    Ok(UpperWitness {
        count: rels.len(),
        presentation: Presentation::new(t.len(), rels)?,
        initial,
    })
}

/// `d(M(K))`, a lower bound for the relator count on any generating tuple.
pub fn relations_lower(k: &FiniteGroup, homology_cap: usize) -> Result<usize> {
    Ok(schur_multiplier(k, homology_cap)?.factors.len())
}

/// Outcome of the bounded-length relator search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactRelations {
    /// Least relator count found (at most `upper`).
    pub value: usize,
    /// `|T| + d(M(K))`: no presentation on `T` has fewer relators.
    pub lower: usize,
    pub upper: usize,
    /// Relator length cap used for the search.
    pub max_len: usize,
    /// Candidate relators examined (cyclic classes of length ≤ `max_len`).
    pub candidates: usize,
    /// `value == lower`, so `value` is the true minimum regardless of the
    /// length cap.
    pub certified: bool,
    pub witness: Vec<Word>,
}

/// Minimal relator count on `T` among relator sets of length at most
/// `max_len`, bracketed by the multiplier lower bound.
pub fn exact_relations(k: &FiniteGroup, t: &[usize], max_len: usize, homology_cap: usize, max_cosets: usize) -> Result<ExactRelations> {
    let lower = t.len() + relations_lower(k, homology_cap)?;
    let up = relations_upper(k, t, max_cosets)?;
    let mut best = (up.count, up.presentation.relators().to_vec());
    let mut candidates = Vec::new();
    if up.count > lower {
        candidates = kernel_words(k, t, max_len);
        let cap = max_cosets.min(64 * k.order().max(1));
        let target_ab = crate::smith::abelian_invariants_finite(k, &k.whole());
        'sizes: for s in lower..up.count {
            let mut idx: Vec<usize> = (0..s).collect();
            if s > candidates.len() {
                break;
            }
            loop {
                let set: Vec<Word> = idx.iter().map(|&i| candidates[i].clone()).collect();
                let p = Presentation::new(t.len(), set.iter().cloned())?;
                if p.abelian_invariants() == target_ab && presents_order(t.len(), &set, k.order(), cap) {
                    best = (s, set);
                    break 'sizes;
                }
                if !next_combination(&mut idx, candidates.len()) {
                    break;
                }
            }
        }
    }
    Ok(ExactRelations {
        value: best.0,
        lower,
        upper: up.count,
        max_len,
        candidates: candidates.len(),
        certified: best.0 == lower,
        witness: best.1,
    })
}

/// Cyclically reduced words of length `1..=max_len` trivial in `K`, one per
/// class under rotation and inversion, shortest first.
pub fn kernel_words(k: &FiniteGroup, t: &[usize], max_len: usize) -> Vec<Word> {
    let letters: Vec<i32> = (1..=t.len() as i32).flat_map(|g| [g, -g]).collect();
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut stack: Vec<(Vec<i32>, usize)> = vec![(Vec::new(), k.identity())];
    // breadth-first by length keeps the output shortest-first
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (w, value) in stack {
            for &l in &letters {
                if w.last() == Some(&-l) {
                    continue;
                }
                let x = t[l.unsigned_abs() as usize - 1];
                let v = k.mul(value, if l > 0 { x } else { k.inv(x) });
                let mut w2 = w.clone();
                w2.push(l);
                if v == k.identity() && w2.first() != Some(&-l) {
                    let word = Word::from_letters(w2.iter().copied());
                    if seen.insert(word.cyclic_canonical()) {
                        out.push(word);
                    }
                }
                next.push((w2, v));
            }
        }
        stack = next;
    }
    out
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let s = idx.len();
    for i in (0..s).rev() {
        if idx[i] < n - s + i {
            idx[i] += 1;
            for j in i + 1..s {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
