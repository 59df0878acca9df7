//! Reidemeister–Schreier rewriting over a breadth-first Schreier transversal.

use std::fmt;

use crate::error::{Error, Result};
use crate::fp::coset::CosetTable;
use crate::fp::presentation::Presentation;
use crate::fp::word::{letter_of_column, Word};
use crate::smith::{abelian_invariants_from_rows, AbelianInvariants};

/// Presentation of a subgroup on (a subset of) its Schreier generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupPresentation {
    /// Each generator as a word in the ambient generators.
    pub schreier_generators: Vec<Word>,
    /// Relators over the generators above (letter `i+1` = generator `i`).
    pub relators: Vec<Word>,
    pub simplification_log: Vec<String>,
}

impl SubgroupPresentation {
    pub fn rank(&self) -> usize {
        self.schreier_generators.len()
    }

    pub fn to_presentation(&self) -> Presentation {
        Presentation::new(self.rank(), self.relators.iter().cloned()).expect("relators use known generators")
    }

    pub fn abelian_invariants(&self) -> AbelianInvariants {
        abelian_invariants_from_rows(self.rank(), self.relators.iter().map(|r| r.exponent_sums()))
    }
}

impl fmt::Display for SubgroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.rank())?;
        for (i, g) in self.schreier_generators.iter().enumerate() {
            writeln!(f, "# {} = {g}", Word::generator(i))?;
        }
        for r in &self.relators {
            writeln!(f, "rel: {r}")?;
        }
        Ok(())
    }
}

/// The Schreier transversal and the numbering of non-tree edges.
pub struct Transversal {
    /// Transversal word of each coset.
    pub words: Vec<Word>,
    /// `edge[c * rank + g]`: Schreier generator number of the edge
    /// `c --x_g--> c·x_g`, or `None` for tree edges.
    pub edge: Vec<Option<usize>>,
    pub rank: usize,
}

impl Transversal {
    /// Breadth-first spanning tree from coset 0, columns in table order.
    pub fn new(t: &CosetTable) -> Self {
        let n = t.index();
        let rank = t.cols() / 2;
        let mut words: Vec<Option<Word>> = vec![None; n];
        words[0] = Some(Word::identity());
        // tree[c * rank + g]: positive edge (c, g) is in the tree
        let mut tree = vec![false; n * rank];
        let mut order = vec![0usize];
        let mut head = 0;
        while head < order.len() {
            let c = order[head];
            head += 1;
            for col in 0..t.cols() {
                let d = t.get(c, col);
                if words[d].is_none() {
                    let l = letter_of_column(col);
                    words[d] = Some(words[c].as_ref().unwrap().mul(&Word::from_letters([l])));
                    order.push(d);
                    let g = col / 2;
                    if col % 2 == 0 {
                        tree[c * rank + g] = true;
                    } else {
                        tree[d * rank + g] = true;
                    }
                }
            }
        }
        let mut edge = vec![None; n * rank];
        let mut next = 0;
        for c in 0..n {
            for g in 0..rank {
                if !tree[c * rank + g] {
                    edge[c * rank + g] = Some(next);
                    next += 1;
                }
            }
        }
        Transversal {
            words: words.into_iter().map(|w| w.expect("table is connected")).collect(),
            edge,
            rank,
        }
    }

    pub fn generator_count(&self) -> usize {
        self.edge.iter().filter(|e| e.is_some()).count()
    }

    /// Rewrite `w`, read from coset `c`, as a word in Schreier generators.
    pub fn rewrite(&self, t: &CosetTable, c: usize, w: &Word) -> Word {
        let mut out = Vec::new();
        let mut cur = c;
        for &l in w.letters() {
            let g = l.unsigned_abs() as usize - 1;
            if l > 0 {
                if let Some(s) = self.edge[cur * self.rank + g] {
                    out.push(s as i32 + 1);
                }
                cur = t.act(cur, l);
            } else {
                let prev = t.act(cur, l);
                if let Some(s) = self.edge[prev * self.rank + g] {
                    out.push(-(s as i32 + 1));
                }
                cur = prev;
            }
        }
        Word::from_letters(out)
    }
}

/// Subgroup presentation on one Schreier generator per non-tree edge, with
/// every ambient relator rewritten from every coset.
pub fn reidemeister_schreier(t: &CosetTable) -> Result<SubgroupPresentation> {
    if !t.is_complete() {
        return Err(Error::Incomplete);
    }
    let tr = Transversal::new(t);
    let n = t.index();
    let mut gens = vec![Word::identity(); tr.generator_count()];
    for c in 0..n {
        for g in 0..tr.rank {
            if let Some(s) = tr.edge[c * tr.rank + g] {
                let d = t.get(c, 2 * g);
                gens[s] = tr.words[c].mul(&Word::generator(g)).mul(&tr.words[d].inverse());
            }
        }
    }
    let mut relators = Vec::new();
    for c in 0..n {
        for r in t.presentation().relators() {
            let w = tr.rewrite(t, c, r).cyclic_reduce();
            if !w.is_empty() {
                relators.push(w);
            }
        }
    }
    Ok(SubgroupPresentation {
        schreier_generators: gens,
        relators,
        simplification_log: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::coset::coset_enumerate;

    #[test]
    fn index_two_in_free_group() {
        let f2 = Presentation::free(2);
        let h: Vec<Word> = ["aa", "b", "aba"].iter().map(|w| Word::parse(w).unwrap()).collect();
        let t = coset_enumerate(&f2, &h, 100).unwrap();
        assert_eq!(t.index(), 2);
        let sp = reidemeister_schreier(&t).unwrap();
        assert_eq!(sp.rank(), 3);
        assert!(sp.relators.is_empty());
    }

    #[test]
    fn trivial_subgroup_of_s3() {
        let p = Presentation::from_strs(2, &["aa", "bbb", "abab"]).unwrap();
        let t = coset_enumerate(&p, &[], 100).unwrap();
        let sp = reidemeister_schreier(&t).unwrap();
        assert_eq!(sp.rank(), 7);
        let inv = sp.abelian_invariants();
        assert_eq!((inv.betti, inv.torsion_factors.len()), (0, 0));
        // each Schreier generator is trivial in the group
        for g in &sp.schreier_generators {
            assert_eq!(t.trace(0, g), 0);
        }
    }

    #[test]
    fn whole_group() {
        let p = Presentation::from_strs(2, &["aa", "bbb", "abab"]).unwrap();
        let t = coset_enumerate(&p, &[Word::parse("a").unwrap(), Word::parse("b").unwrap()], 100).unwrap();
        let sp = reidemeister_schreier(&t).unwrap();
        assert_eq!(sp.rank(), 2);
        assert_eq!(sp.to_presentation().abelian_invariants(), p.abelian_invariants());
    }
}
