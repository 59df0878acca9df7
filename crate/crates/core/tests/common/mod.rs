//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use subgrad::fp::word::Word;

/// Determinant by cofactor expansion.
pub fn det(m: &[Vec<i64>]) -> BigInt {
    if m.is_empty() {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..m.len() {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
            .collect();
        let term = BigInt::from(m[0][j]) * det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// `gcd` of all `k × k` minors.
pub fn determinant_divisor(m: &[Vec<i64>], k: usize) -> BigInt {
    let cols = m.first().map_or(0, |r| r.len());
    let mut g = BigInt::zero();
    for rs in combinations(m.len(), k) {
        for cs in combinations(cols, k) {
            let sub: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
            g = g.gcd(&det(&sub));
        }
    }
    g
}

/// Whether `factors` and `rank` agree with the determinant divisors of `m`:
/// `f₁⋯f_k = d_k` for `k ≤ rank`, each `f` divides the next, and the
/// `(rank+1)`-minors vanish.
pub fn smith_agrees(m: &[Vec<i64>], factors: &[BigInt], rank: usize) -> bool {
    if factors.len() != rank {
        return false;
    }
    let mut prefix = BigInt::one();
    for (k, f) in factors.iter().enumerate() {
        if *f <= BigInt::zero() || (k > 0 && !f.is_multiple_of(&factors[k - 1])) {
            return false;
        }
        prefix *= f;
        if prefix != determinant_divisor(m, k + 1) {
            return false;
        }
    }
    let max = m.len().min(m.first().map_or(0, |r| r.len()));
    rank == max || determinant_divisor(m, rank + 1).is_zero()
}

pub fn random_matrix(rng: &mut impl Rng, max_dim: usize, max_entry: i64) -> Vec<Vec<i64>> {
    let rows = rng.gen_range(1..=max_dim);
    let cols = rng.gen_range(1..=max_dim);
    (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-max_entry..=max_entry)).collect()).collect()
}

/// Binary Lyndon words of length `len`, counted by checking every word
/// against its proper rotations.
pub fn lyndon_oracle(len: u32) -> u64 {
    (0u32..1 << len)
        .filter(|&w| {
            let bits: Vec<u32> = (0..len).rev().map(|i| (w >> i) & 1).collect();
            (1..len as usize).all(|s| {
                let rot: Vec<u32> = bits[s..].iter().chain(&bits[..s]).copied().collect();
                bits < rot
            })
        })
        .count() as u64
}

/// `r` random permutations of `0..degree`.
pub fn random_action(rng: &mut impl Rng, r: usize, degree: usize) -> Vec<Vec<usize>> {
    (0..r)
        .map(|_| {
            let mut p: Vec<usize> = (0..degree).collect();
            p.shuffle(rng);
            p
        })
        .collect()
}

/// Image of `start` under a word acting on the right.
pub fn act(perms: &[Vec<usize>], w: &Word, start: usize) -> usize {
    w.letters().iter().fold(start, |pt, &l| {
        let p = &perms[l.unsigned_abs() as usize - 1];
        if l > 0 {
            p[pt]
        } else {
            p.iter().position(|&y| y == pt).unwrap()
        }
    })
}
