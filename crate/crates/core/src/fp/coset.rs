//! Todd–Coxeter coset enumeration, HLT strategy with lookahead.
//!
//! Coincidences are processed with a union–find queue. When the table is
//! full, one lookahead pass (scan every live coset under every relator
//! without defining) runs, followed by compaction; if that frees nothing
//! the enumeration reports [`Error::Overflow`].

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::fp::presentation::Presentation;
use crate::fp::word::{column, Word};

const NONE: u32 = u32::MAX;

/// A completed coset table, numbered in breadth-first order from the
/// subgroup coset `0`, columns ordered `x₁, x₁⁻¹, x₂, x₂⁻¹, …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    presentation: Presentation,
    subgroup_words: Vec<Word>,
    cols: usize,
    rows: usize,
    table: Vec<u32>,
}

impl CosetTable {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn subgroup_words(&self) -> &[Word] {
        &self.subgroup_words
    }

    /// Index of the subgroup (number of rows).
    pub fn index(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Enumeration always yields a complete table; kept for API symmetry
    /// with partial tables.
    pub fn is_complete(&self) -> bool {
        !self.table.contains(&NONE)
    }

    pub fn get(&self, coset: usize, col: usize) -> usize {
        self.table[coset * self.cols + col] as usize
    }

    pub fn act(&self, coset: usize, letter: i32) -> usize {
        self.get(coset, column(letter))
    }

    pub fn trace(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.act(c, l))
    }

    /// Size of the orbit of `start` under the listed generators.
    pub fn orbit_size(&self, start: usize, generators: &[usize]) -> usize {
        let mut seen = vec![false; self.index()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut count = 1;
        while let Some(c) = queue.pop_front() {
            for &g in generators {
                for col in [2 * g, 2 * g + 1] {
                    let d = self.get(c, col);
                    if !seen[d] {
                        seen[d] = true;
                        count += 1;
                        queue.push_back(d);
                    }
                }
            }
        }
        count
    }

    /// Full consistency check: entries defined and mutually inverse, every
    /// relator closes at every coset, subgroup words fix coset `0`.
    pub fn verify(&self) -> bool {
        let n = self.index();
        for c in 0..n {
            for col in 0..self.cols {
                let d = self.table[c * self.cols + col];
                if d == NONE || d as usize >= n || self.get(d as usize, col ^ 1) != c {
                    return false;
                }
            }
            if self.presentation.relators().iter().any(|r| self.trace(c, r) != c) {
                return false;
            }
        }
        self.subgroup_words.iter().all(|w| self.trace(0, w) == 0)
    }

    /// Table of the action on the orbit of `base` given by one permutation
    /// per generator (images of points). The action must satisfy the
    /// relators; the stabilizer of `base` is the subgroup.
    pub fn from_permutations(
        presentation: Presentation,
        subgroup_words: Vec<Word>,
        perms: &[Vec<usize>],
        base: usize,
    ) -> Result<Self> {
        let rank = presentation.rank();
        if perms.len() != rank {
            return Err(Error::Domain(format!("expected {rank} permutations, got {}", perms.len())));
        }
        let degree = perms.first().map_or(base + 1, |p| p.len());
        let mut inverses = Vec::with_capacity(rank);
        for p in perms {
            if p.len() != degree || !crate::finite::perm::is_permutation(p) {
                return Err(Error::Domain("generator images are not permutations".into()));
            }
            let mut q = vec![0; degree];
            for (i, &j) in p.iter().enumerate() {
                q[j] = i;
            }
            inverses.push(q);
        }
        let cols = 2 * rank;
        let raw = |pt: usize, col: usize| if col % 2 == 0 { perms[col / 2][pt] } else { inverses[col / 2][pt] };
        let mut number = vec![NONE; degree];
        let mut order = vec![base];
        number[base] = 0;
        let mut head = 0;
        while head < order.len() {
            let pt = order[head];
            head += 1;
            for col in 0..cols {
                let q = raw(pt, col);
                if number[q] == NONE {
                    number[q] = order.len() as u32;
                    order.push(q);
                }
            }
        }
        let mut table = Vec::with_capacity(order.len() * cols);
        for &pt in &order {
            for col in 0..cols {
                table.push(number[raw(pt, col)]);
            }
        }
        let t = CosetTable {
            presentation,
            subgroup_words,
            cols,
            rows: order.len(),
            table,
        };
        if !t.verify() {
            return Err(Error::Domain("permutation action is not compatible with the presentation".into()));
        }
        Ok(t)
    }
}

/// Enumerate the cosets of `⟨subgroup_words⟩` in the group presented by `p`.
pub fn coset_enumerate(p: &Presentation, subgroup_words: &[Word], max_cosets: usize) -> Result<CosetTable> {
    if max_cosets == 0 {
        return Err(Error::Domain("max_cosets must be at least 1".into()));
    }
    let cols = 2 * p.rank();
    let relators: Vec<Vec<usize>> = p.relators().iter().map(to_columns).collect();
    let subgroup: Vec<Vec<usize>> = subgroup_words.iter().map(to_columns).collect();
    let mut e = Enumerator::new(cols, max_cosets);

    // subgroup generators at coset 0
    'sub: loop {
        for w in &subgroup {
            if e.scan_and_fill(0, w).is_err() {
                e.make_room(&relators)?;
                continue 'sub;
            }
        }
        break;
    }

    let mut c = 0usize;
    'main: while c < e.allocated() {
        if e.is_live(c) {
            for r in &relators {
                if !e.is_live(c) {
                    break;
                }
                if e.scan_and_fill(c, r).is_err() {
                    c = e.make_room_at(&relators, c)?;
                    continue 'main;
                }
            }
            for x in 0..cols {
                if !e.is_live(c) {
                    break;
                }
                if e.get(c, x) == NONE && !e.define(c, x) {
                    c = e.make_room_at(&relators, c)?;
                    continue 'main;
                }
            }
        }
        c += 1;
    }
    e.compact();
    let table = e.standardize();
    Ok(CosetTable {
        presentation: p.clone(),
        subgroup_words: subgroup_words.to_vec(),
        cols,
        rows: e.allocated(),
        table,
    })
}

fn to_columns(w: &Word) -> Vec<usize> {
    w.letters().iter().map(|&l| column(l)).collect()
}

struct Full;

struct Enumerator {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    max: usize,
    queue: Vec<u32>,
}

impl Enumerator {
    fn new(cols: usize, max: usize) -> Self {
        Enumerator {
            cols,
            table: vec![NONE; cols],
            parent: vec![0],
            live: 1,
            max,
            queue: Vec::new(),
        }
    }

    fn allocated(&self) -> usize {
        self.parent.len()
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn get(&self, c: usize, x: usize) -> u32 {
        self.table[c * self.cols + x]
    }

    fn set(&mut self, c: usize, x: usize, v: u32) {
        self.table[c * self.cols + x] = v;
    }

    fn define(&mut self, c: usize, x: usize) -> bool {
        if self.allocated() >= self.max {
            return false;
        }
        let n = self.allocated();
        self.parent.push(n as u32);
        self.table.extend(std::iter::repeat(NONE).take(self.cols));
        self.set(c, x, n as u32);
        self.set(n, x ^ 1, c as u32);
        self.live += 1;
        true
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != r {
            let next = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a == b {
            return;
        }
        let (k, l) = if a < b { (a, b) } else { (b, a) };
        self.parent[l as usize] = k;
        self.queue.push(l);
        self.live -= 1;
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut qi = 0;
        while qi < self.queue.len() {
            let e = self.queue[qi] as usize;
            qi += 1;
            for x in 0..self.cols {
                let d = self.get(e, x);
                if d == NONE {
                    continue;
                }
                self.set(d as usize, x ^ 1, NONE);
                let e1 = self.rep(e as u32);
                let d1 = self.rep(d);
                let t = self.get(e1 as usize, x);
                if t != NONE {
                    self.merge(d1, t);
                } else {
                    let t2 = self.get(d1 as usize, x ^ 1);
                    if t2 != NONE {
                        self.merge(e1, t2);
                    } else {
                        self.set(e1 as usize, x, d1);
                        self.set(d1 as usize, x ^ 1, e1);
                    }
                }
            }
        }
        self.queue.clear();
    }

    /// Scan `w` from `c` in both directions, defining cosets as needed when
    /// `fill` is set; closes with a deduction or a coincidence.
    fn scan(&mut self, c: usize, w: &[usize], fill: bool) -> std::result::Result<(), Full> {
        let (mut f, mut b) = (c as u32, c as u32);
        let (mut i, mut j) = (0usize, w.len());
        loop {
            while i < j {
                let nx = self.get(f as usize, w[i]);
                if nx == NONE {
                    break;
                }
                f = nx;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i {
                let nx = self.get(b as usize, w[j - 1] ^ 1);
                if nx == NONE {
                    break;
                }
                b = nx;
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.set(f as usize, w[i], b);
                self.set(b as usize, w[i] ^ 1, f);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            if !self.define(f as usize, w[i]) {
                return Err(Full);
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> std::result::Result<(), Full> {
        self.scan(c, w, true)
    }

    /// Lookahead plus compaction. Returns the new position of coset `c`
    /// (or of the first live coset after it).
    fn make_room_at(&mut self, relators: &[Vec<usize>], c: usize) -> Result<usize> {
        self.lookahead(relators);
        let map = self.compact();
        if self.allocated() >= self.max {
            return Err(Error::Overflow(self.max));
        }
        let pos = (c..map.len()).find_map(|k| (map[k] != NONE).then_some(map[k] as usize));
        Ok(pos.unwrap_or(self.allocated()))
    }

    fn make_room(&mut self, relators: &[Vec<usize>]) -> Result<()> {
        self.make_room_at(relators, 0).map(|_| ())
    }

    fn lookahead(&mut self, relators: &[Vec<usize>]) {
        for c in 0..self.allocated() {
            for r in relators {
                if !self.is_live(c) {
                    break;
                }
                let _ = self.scan(c, r, false);
            }
        }
    }

    /// Renumber live cosets consecutively, preserving order. Returns the
    /// old→new map (`NONE` for dead cosets).
    fn compact(&mut self) -> Vec<u32> {
        let n = self.allocated();
        let mut map = vec![NONE; n];
        let mut next = 0u32;
        for (c, slot) in map.iter_mut().enumerate() {
            if self.parent[c] as usize == c {
                *slot = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.cols);
        for c in 0..n {
            if map[c] == NONE {
                continue;
            }
            for x in 0..self.cols {
                let d = self.get(c, x);
                table.push(if d == NONE { NONE } else { map[d as usize] });
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        self.live = next as usize;
        map
    }

    /// Breadth-first renumbering from coset 0 (call after `compact` on a
    /// complete table).
    fn standardize(&self) -> Vec<u32> {
        let n = self.allocated();
        let mut number = vec![NONE; n];
        let mut order = vec![0usize];
        number[0] = 0;
        let mut head = 0;
        while head < order.len() {
            let c = order[head];
            head += 1;
            for x in 0..self.cols {
                let d = self.get(c, x) as usize;
                if number[d] == NONE {
                    number[d] = order.len() as u32;
                    order.push(d);
                }
            }
        }
        let mut table = Vec::with_capacity(order.len() * self.cols);
        for &c in &order {
            for x in 0..self.cols {
                table.push(number[self.get(c, x) as usize]);
            }
        }
        table
    }
}
