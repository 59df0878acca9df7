//! Tietze moves that never increase the relator count.

use std::collections::HashSet;

use crate::fp::coset::coset_enumerate;
use crate::fp::presentation::Presentation;
use crate::fp::rs::SubgroupPresentation;
use crate::fp::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TietzeOptions {
    /// Maximum number of passes.
    pub effort: usize,
    /// Coset cap for the redundancy test; `0` skips it.
    pub redundancy_cap: usize,
    /// Total relator length may grow to at most this multiple of its
    /// starting value through generator elimination.
    pub growth_factor: usize,
}

impl Default for TietzeOptions {
    fn default() -> Self {
        TietzeOptions {
            effort: 8,
            redundancy_cap: 4096,
            growth_factor: 2,
        }
    }
}

pub fn tietze_simplify(sp: &SubgroupPresentation, effort: usize) -> SubgroupPresentation {
    tietze_simplify_with(
        sp,
        TietzeOptions {
            effort,
            ..TietzeOptions::default()
        },
    )
}

pub fn tietze_simplify_with(sp: &SubgroupPresentation, opts: TietzeOptions) -> SubgroupPresentation {
    let mut out = sp.clone();
    let budget = opts.growth_factor.max(1) * total_length(&out.relators).max(64);
    for _ in 0..opts.effort {
        let before = (out.rank(), out.relators.len(), total_length(&out.relators));
        dedupe(&mut out);
        while eliminate_one(&mut out, budget) {}
        dedupe(&mut out);
        if opts.redundancy_cap > 0 {
            drop_redundant(&mut out, opts.redundancy_cap);
        }
        if (out.rank(), out.relators.len(), total_length(&out.relators)) == before {
            break;
        }
    }
    out
}

/// Treat a plain presentation as a presentation of itself.
pub fn as_subgroup_presentation(p: &Presentation) -> SubgroupPresentation {
    SubgroupPresentation {
        schreier_generators: (0..p.rank()).map(Word::generator).collect(),
        relators: p.relators().to_vec(),
        simplification_log: Vec::new(),
    }
}

fn total_length(rels: &[Word]) -> usize {
    rels.iter().map(|r| r.len()).sum()
}

/// Cyclically reduce, drop trivial relators and relators that are cyclic
/// conjugates (or inverses of conjugates) of earlier ones.
fn dedupe(sp: &mut SubgroupPresentation) {
    let mut seen = HashSet::new();
    let before = sp.relators.len();
    let rels = std::mem::take(&mut sp.relators);
    for r in rels {
        let r = r.cyclic_reduce();
        if !r.is_empty() && seen.insert(r.cyclic_canonical()) {
            sp.relators.push(r);
        }
    }
    let removed = before - sp.relators.len();
    if removed > 0 {
        sp.simplification_log.push(format!("dedupe: removed {removed} relator(s)"));
    }
}

/// Eliminate one generator occurring exactly once in some relator, using
/// the shortest such relator. Returns false if no move fits the budget.
fn eliminate_one(sp: &mut SubgroupPresentation, budget: usize) -> bool {
    let mut best: Option<(usize, usize, usize)> = None; // (len, relator, generator)
    for (ri, r) in sp.relators.iter().enumerate() {
        if best.is_some_and(|(len, _, _)| r.len() >= len) {
            continue;
        }
        let mut counts: Vec<(i32, usize)> = Vec::new();
        for &l in r.letters() {
            let g = l.abs();
            match counts.iter_mut().find(|(h, _)| *h == g) {
                Some(e) => e.1 += 1,
                None => counts.push((g, 1)),
            }
        }
        if let Some(g) = counts.iter().filter(|(_, c)| *c == 1).map(|(g, _)| *g).min() {
            best = Some((r.len(), ri, g as usize - 1));
        }
    }
    let Some((_, ri, g)) = best else { return false };
    let r = sp.relators[ri].letters().to_vec();
    let pos = r.iter().position(|l| l.unsigned_abs() as usize == g + 1).unwrap();
    // rotate so the generator is first: r ~ x^e w, hence x = w^{-e}
    let e = r[pos];
    let w = Word::from_letters(r[pos + 1..].iter().chain(&r[..pos]).copied());
    let value = if e > 0 { w.inverse() } else { w };
    let occurrences: usize = sp
        .relators
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != ri)
        .map(|(_, x)| x.letters().iter().filter(|l| l.unsigned_abs() as usize == g + 1).count())
        .sum();
    let total = total_length(&sp.relators);
    if total + occurrences * value.len() > budget {
        return false;
    }
    // images: generator g ↦ value, generators after g shift down by one
    let rank = sp.rank();
    let mut images: Vec<Word> = Vec::with_capacity(rank);
    for h in 0..rank {
        images.push(match h.cmp(&g) {
            std::cmp::Ordering::Less => Word::generator(h),
            std::cmp::Ordering::Equal => value.clone(),
            std::cmp::Ordering::Greater => Word::generator(h - 1),
        });
    }
    // value only uses generators other than g, so shifting it is the same
    // substitution
    let shifted_value = value.substitute(&images);
    images[g] = shifted_value;
    let rels = std::mem::take(&mut sp.relators);
    sp.relators = rels
        .into_iter()
        .enumerate()
        .filter(|(i, _)| *i != ri)
        .map(|(_, x)| x.substitute(&images).cyclic_reduce())
        .filter(|x| !x.is_empty())
        .collect();
    let eliminated = sp.schreier_generators.remove(g);
    sp.simplification_log
        .push(format!("eliminate generator {} (= {eliminated}) via a relator of length {}", g + 1, r.len()));
    true
}

/// Drop relators that are consequences of the others, detected when the
/// presentation without them enumerates to a finite group in which they
/// act trivially.
fn drop_redundant(sp: &mut SubgroupPresentation, cap: usize) {
    let mut order: Vec<usize> = (0..sp.relators.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(sp.relators[i].len()));
    let mut keep = vec![true; sp.relators.len()];
    for i in order {
        keep[i] = false;
        let rest: Vec<Word> = sp.relators.iter().zip(&keep).filter(|(_, k)| **k).map(|(r, _)| r.clone()).collect();
        let p = Presentation::new(sp.rank(), rest).expect("relators use known generators");
        let redundant = coset_enumerate(&p, &[], cap).is_ok_and(|t| t.trace(0, &sp.relators[i]) == 0);
        if redundant {
            sp.simplification_log.push(format!("drop redundant relator {}", sp.relators[i]));
        } else {
            keep[i] = true;
        }
    }
    let rels = std::mem::take(&mut sp.relators);
    sp.relators = rels.into_iter().zip(keep).filter(|(_, k)| *k).map(|(r, _)| r).collect();
}
