//! Integer Smith normal form and abelian invariants.
//!
//! The certified path is dense elimination over arbitrary-precision integers,
//! pivoting on the smallest nonzero entry. Large sparse matrices (relation
//! matrices of big subgroup presentations, bar-resolution boundaries) first go
//! through a sparse phase that only pivots on `±1` entries; each such pivot
//! contributes one invariant factor `1` and removes a row and a column.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::finite::{FiniteGroup, Subgroup};

/// Matrices with at most this many nonzeros skip the sparse phase.
pub const DENSE_THRESHOLD: usize = 2000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Domain("ragged matrix rows".into()));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            entries: rows.iter().flat_map(|row| row.iter().cloned().map(Into::into)).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row_vec(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Parse `rows cols` followed by row-major whitespace-separated integers.
    pub fn parse(text: &str) -> Result<Self> {
        let mut tokens = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("");
            for t in line.split_whitespace() {
                tokens.push((ln + 1, t));
            }
        }
        let mut it = tokens.into_iter();
        let mut dim = |what: &str| -> Result<usize> {
            let (ln, t) = it.next().ok_or_else(|| Error::parse(1, format!("missing {what}")))?;
            t.parse().map_err(|_| Error::parse(ln, format!("bad {what} `{t}`")))
        };
        let rows = dim("row count")?;
        let cols = dim("column count")?;
        let mut entries = Vec::with_capacity(rows * cols);
        for (ln, t) in it.by_ref() {
            entries.push(
                t.parse::<BigInt>()
                    .map_err(|_| Error::parse(ln, format!("bad integer `{t}`")))?,
            );
        }
        if entries.len() != rows * cols {
            return Err(Error::parse(
                text.lines().count().max(1),
                format!("expected {} entries, found {}", rows * cols, entries.len()),
            ));
        }
        Ok(IntMatrix { rows, cols, entries })
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row_vec(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Nonzero invariant factors `d₁ | d₂ | … | d_r` and the rank `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub factors: Vec<BigInt>,
    pub rank: usize,
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut sparse = SparseMatrix::new(m.rows, m.cols);
    for i in 0..m.rows {
        for j in 0..m.cols {
            let v = m.get(i, j);
            if !v.is_zero() {
                match v.to_i64() {
                    Some(x) => sparse.push(i, j, x),
                    None => return dense_snf(m.clone()),
                }
            }
        }
    }
    if sparse.nnz() <= DENSE_THRESHOLD {
        return dense_snf(m.clone());
    }
    sparse.smith()
}

/// Sparse integer matrix with `i64` entries, used for large relation and
/// boundary matrices.
#[derive(Clone, Debug)]
pub struct SparseMatrix {
    rows: Vec<BTreeMap<usize, i64>>,
    cols: usize,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows: vec![BTreeMap::new(); rows],
            cols,
        }
    }

    /// Add `v` to entry `(i, j)`.
    pub fn push(&mut self, i: usize, j: usize, v: i64) {
        assert!(j < self.cols);
        let e = self.rows[i].entry(j).or_insert(0);
        *e += v;
        if *e == 0 {
            self.rows[i].remove(&j);
        }
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows.len(), self.cols);
        for (i, r) in self.rows.iter().enumerate() {
            for (&j, &v) in r {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    /// Smith form: unit pivots eliminated sparsely, remainder dense.
    pub fn smith(mut self) -> SmithForm {
        let units = self.eliminate_units();
        let live_rows: Vec<usize> = (0..self.rows.len()).filter(|&i| !self.rows[i].is_empty()).collect();
        let live_cols: BTreeSet<usize> = live_rows.iter().flat_map(|&i| self.rows[i].keys().copied()).collect();
        let col_pos: BTreeMap<usize, usize> = live_cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let mut rest = IntMatrix::zeros(live_rows.len(), live_cols.len());
        for (ri, &i) in live_rows.iter().enumerate() {
            for (&j, &v) in &self.rows[i] {
                rest.set(ri, col_pos[&j], BigInt::from(v));
            }
        }
        let tail = dense_snf(rest);
        let mut factors = vec![BigInt::one(); units];
        factors.extend(tail.factors);
        SmithForm {
            factors,
            rank: units + tail.rank,
        }
    }

    /// Pivot on `±1` entries until none remain, returning the number of
    /// pivots. Each pivot row is cleared out of its column and then dropped
    /// together with the column. Stops early rather than overflow `i64`.
    fn eliminate_units(&mut self) -> usize {
        let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.cols];
        for (i, r) in self.rows.iter().enumerate() {
            for &j in r.keys() {
                col_rows[j].insert(i);
            }
        }
        let mut count = 0;
        loop {
            // shortest row holding a unit
            let mut best: Option<(usize, usize, usize)> = None;
            for (i, r) in self.rows.iter().enumerate() {
                if r.is_empty() || best.is_some_and(|(len, _, _)| r.len() >= len) {
                    continue;
                }
                if let Some((&j, _)) = r.iter().find(|(_, v)| v.abs() == 1) {
                    best = Some((r.len(), i, j));
                    if r.len() == 1 {
                        break;
                    }
                }
            }
            let Some((_, pr, pc)) = best else {
                return count;
            };
            let pivot_row = std::mem::take(&mut self.rows[pr]);
            for &j in pivot_row.keys() {
                col_rows[j].remove(&pr);
            }
            let u = pivot_row[&pc];
            let targets: Vec<usize> = col_rows[pc].iter().copied().collect();
            let mut overflow = false;
            for t in targets {
                let factor = self.rows[t][&pc] * u; // u = ±1, so a/u = a·u
                let mut updated = self.rows[t].clone();
                for (&j, &v) in &pivot_row {
                    let Some(delta) = factor.checked_mul(v) else {
                        overflow = true;
                        break;
                    };
                    let e = updated.entry(j).or_insert(0);
                    let Some(nv) = e.checked_sub(delta) else {
                        overflow = true;
                        break;
                    };
                    *e = nv;
                }
                if overflow {
                    break;
                }
                updated.retain(|_, v| *v != 0);
                for &j in self.rows[t].keys() {
                    col_rows[j].remove(&t);
                }
                for &j in updated.keys() {
                    col_rows[j].insert(t);
                }
                self.rows[t] = updated;
            }
            if overflow {
                // restore the pivot row; the remaining matrix is still
                // equivalent to the input
                for &j in pivot_row.keys() {
                    col_rows[j].insert(pr);
                }
                self.rows[pr] = pivot_row;
                return count;
            }
            debug_assert!(col_rows[pc].is_empty());
            count += 1;
        }
    }
}

/// Dense Smith form over arbitrary-precision integers.
fn dense_snf(m: IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|i| m.row_vec(i).to_vec()).collect();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&p);
                    let (head, tail) = a.split_at_mut(i);
                    for j in t..cols {
                        let d = &q * &head[t][j];
                        tail[0][j] -= d;
                    }
                    if !a[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&p);
                    for row in a.iter_mut().skip(t) {
                        let d = &q * &row[t];
                        row[j] -= d;
                    }
                    if !a[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
            // move the smallest remainder in row/column t to the pivot
            let mut best = (t, t);
            for i in t + 1..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.1 == t {
                a.swap(t, best.0);
            } else {
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    let rank = diag.len();
    SmithForm {
        factors: normalize_diagonal(diag),
        rank,
    }
}

/// Turn a diagonal into a divisibility chain with the same cokernel by
/// replacing pairs `(a, b)` with `(gcd, lcm)`.
pub fn normalize_diagonal(mut d: Vec<BigInt>) -> Vec<BigInt> {
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = d[i].gcd(&d[j]);
            if g != d[i] {
                let l = d[i].lcm(&d[j]);
                d[i] = g;
                d[j] = l;
            }
        }
    }
    d
}

/// Free rank and torsion of a finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub betti: usize,
    /// Factors `≥ 2`, each dividing the next.
    pub torsion_factors: Vec<BigInt>,
    pub torsion_order: BigInt,
}

impl AbelianInvariants {
    pub fn new(betti: usize, torsion_factors: Vec<BigInt>) -> Self {
        let torsion_order = torsion_factors.iter().fold(BigInt::one(), |acc, f| acc * f);
        AbelianInvariants {
            betti,
            torsion_factors,
            torsion_order,
        }
    }

    /// Minimum number of generators of the abelian group.
    pub fn rank(&self) -> usize {
        self.betti + self.torsion_factors.len()
    }

    pub fn factor_strings(&self) -> Vec<String> {
        self.torsion_factors.iter().map(|f| f.to_string()).collect()
    }

    /// Natural log of the torsion order.
    pub fn log_torsion(&self) -> f64 {
        big_ln(&self.torsion_order)
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.betti > 0 {
            parts.push(if self.betti == 1 { "Z".into() } else { format!("Z^{}", self.betti) });
        }
        parts.extend(self.torsion_factors.iter().map(|x| format!("Z/{x}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `ln` of a positive big integer, accurate to double precision.
pub fn big_ln(x: &BigInt) -> f64 {
    assert!(x.is_positive());
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 60;
    let top: BigInt = x >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// Abelianization of `⟨x₁..x_n | relators⟩` from exponent-sum rows.
pub fn abelian_invariants_from_rows(ngens: usize, rows: impl IntoIterator<Item = Vec<(usize, i64)>>) -> AbelianInvariants {
    let mut sm = SparseMatrix::new(0, ngens);
    for row in rows {
        let i = sm.rows.len();
        sm.rows.push(BTreeMap::new());
        for (j, v) in row {
            sm.push(i, j, v);
        }
    }
    let snf = if sm.nnz() <= DENSE_THRESHOLD {
        dense_snf(sm.to_dense())
    } else {
        sm.smith()
    };
    let torsion = snf.factors.into_iter().filter(|f| !f.is_one()).collect();
    AbelianInvariants::new(ngens - snf.rank, torsion)
}

/// Invariants of `H/[H,H]` for a subgroup `H` of a finite group (Betti
/// number 0). Computed by counting, for each prime `p`, the cosets of `[H,H]`
/// killed by `p^k`, which pins down the `p`-primary cyclic decomposition.
pub fn abelian_invariants_finite(g: &FiniteGroup, h: &Subgroup) -> AbelianInvariants {
    let d = g.derived_subgroup(h);
    let ab = h.order() / d.order();
    let mut per_prime: Vec<(usize, Vec<u32>)> = Vec::new();
    let mut m = ab;
    let mut p = 2;
    while m > 1 {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            // s_k = log_p #{cosets c : c^{p^k} = 1}
            let mut exps: Vec<u32> = Vec::new();
            let mut prev = 0u32;
            let mut pk = 1usize;
            loop {
                pk *= p;
                let killed = h.elements().iter().filter(|&&x| d.contains(g.pow(x, pk))).count() / d.order();
                let s = ilog(killed, p);
                let at_least_k = s - prev;
                if at_least_k == 0 {
                    break;
                }
                exps.push(at_least_k);
                prev = s;
            }
            // exps[k-1] = #{i : e_i ≥ k}; convert to a descending exponent list
            let parts = exps[0] as usize;
            let mut e = vec![0u32; parts];
            for (k, &cnt) in exps.iter().enumerate() {
                for slot in e.iter_mut().take(cnt as usize) {
                    *slot = k as u32 + 1;
                }
            }
            per_prime.push((p, e));
        }
        p += 1;
    }
    let width = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut factors: Vec<BigInt> = (0..width)
        .map(|j| {
            per_prime.iter().fold(BigInt::one(), |acc, (p, e)| {
                acc * BigInt::from(*p).pow(e.get(j).copied().unwrap_or(0))
            })
        })
        .collect();
    factors.reverse();
    AbelianInvariants::new(0, factors)
}

fn ilog(mut x: usize, p: usize) -> u32 {
    let mut k = 0;
    while x > 1 {
        debug_assert_eq!(x % p, 0);
        x /= p;
        k += 1;
    }
    k
}
