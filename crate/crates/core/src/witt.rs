//! Witt numbers, lower central dimension counts and their ratios.
//!
//! `r_i = (1/i) Σ_{j | i} μ(i/j) k^j` counts Lyndon words of length `i` over
//! `k` letters (`k = 2` throughout, kept as a parameter). With
//! `a_n = Σ_{i≤n} r_i` and `b_n = Σ_{i≤n} a_i`, the `n`-th fiber-product
//! subgroup of `F × F` has index `p^{b_{n−1}}` and the ratio
//! `a_n / b_{n−1} = b_n / b_{n−1} − 1`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest length accepted by the exhaustive Lyndon count.
pub const LYNDON_CAP: u32 = 24;

pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1);
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `r_i` over a two-letter alphabet.
pub fn witt_number(i: u64) -> BigInt {
    witt_number_k(i, 2)
}

/// `r_i` over a `k`-letter alphabet.
pub fn witt_number_k(i: u64, k: u64) -> BigInt {
    assert!(i >= 1);
    let mut sum = BigInt::zero();
    for j in 1..=i {
        if i % j == 0 {
            let mu = mobius(i / j);
            if mu != 0 {
                sum += BigInt::from(mu) * BigInt::from(k).pow(j as u32);
            }
        }
    }
    sum / BigInt::from(i)
}

/// Number of binary Lyndon words of length `i`, by checking every word
/// against all of its rotations.
pub fn lyndon_count(i: u32) -> Result<u64> {
    if i > LYNDON_CAP {
        return Err(Error::CapExceeded {
            what: "Lyndon word length",
            size: i as usize,
            cap: LYNDON_CAP as usize,
        });
    }
    if i == 0 {
        return Ok(0);
    }
    let mask: u64 = (1u64 << i) - 1;
    // bit i-1 is the first letter, so numeric order is lexicographic order
    let rotate = |w: u64, s: u32| ((w << s) | (w >> (i - s))) & mask;
    let count = (0..=mask).filter(|&w| (1..i).all(|s| w < rotate(w, s))).count();
    Ok(count as u64)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittRow {
    pub n: u64,
    pub r: BigInt,
    pub a: BigInt,
    pub b: BigInt,
    /// `b_{n−1}`; absent for `n = 1`.
    pub index_exponent: Option<BigInt>,
}

impl WittRow {
    /// `a_n / b_{n−1}` in lowest terms.
    pub fn ratio(&self) -> Option<BigRational> {
        self.index_exponent.as_ref().map(|d| BigRational::new(self.a.clone(), d.clone()))
    }

    /// `b_n / b_{n−1}`.
    pub fn growth(&self) -> Option<BigRational> {
        self.index_exponent.as_ref().map(|d| BigRational::new(self.b.clone(), d.clone()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittTable {
    pub p: u64,
    pub rows: Vec<WittRow>,
}

pub fn build_witt_table(p: u64, n_max: u64) -> Result<WittTable> {
    if n_max < 1 {
        return Err(Error::Domain("n_max must be at least 1".into()));
    }
    if p < 2 || !crate::schur::primes_dividing(p as usize).eq(&[p as usize]) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    let mut rows = Vec::with_capacity(n_max as usize);
    let (mut a, mut b) = (BigInt::zero(), BigInt::zero());
    for n in 1..=n_max {
        let r = witt_number(n);
        a += &r;
        let prev_b = b.clone();
        b += &a;
        rows.push(WittRow {
            n,
            r,
            a: a.clone(),
            b: b.clone(),
            index_exponent: (n > 1).then_some(prev_b),
        });
    }
    Ok(WittTable { p, rows })
}

impl WittTable {
    /// CSV with header `n,r,a,b,index_exponent,ratio_num,ratio_den`; the
    /// ratio is written unreduced as `a_n` over `b_{n−1}`, empty for `n = 1`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,r,a,b,index_exponent,ratio_num,ratio_den\n");
        for row in &self.rows {
            match &row.index_exponent {
                Some(e) => writeln!(out, "{},{},{},{},{},{},{}", row.n, row.r, row.a, row.b, e, row.a, e),
                None => writeln!(out, "{},{},{},{},,,", row.n, row.r, row.a, row.b),
            }
            .expect("writing to a string");
        }
        out
    }

    /// `p^{b_{n−1}}` for row `n ≥ 2`.
    pub fn index(&self, n: u64) -> Option<BigInt> {
        let row = self.rows.get(n as usize - 1)?;
        row.index_exponent.as_ref().map(|e| {
            let e: u32 = e.try_into().expect("exponent fits in u32");
            BigInt::from(self.p).pow(e)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioReport {
    pub epsilon: BigRational,
    /// All `n` with `a_n / b_{n−1} ≥ 1 − ε`.
    pub witnesses: Vec<u64>,
    pub max_ratio: Option<(u64, BigRational)>,
    /// Largest `b_n / b_{n−1}` over the table.
    pub max_growth: Option<(u64, BigRational)>,
    /// Least `n₀` such that `b_n / b_{n−1} ≥ 19/10` for every `n ≥ n₀` in
    /// the table.
    pub growth_settles_at: Option<u64>,
}

pub fn check_ratio_threshold(table: &WittTable, epsilon: &BigRational) -> Result<RatioReport> {
    if *epsilon <= BigRational::zero() || *epsilon >= BigRational::one() {
        return Err(Error::Domain("epsilon must lie strictly between 0 and 1".into()));
    }
    let threshold = BigRational::one() - epsilon;
    let mut witnesses = Vec::new();
    let mut max_ratio: Option<(u64, BigRational)> = None;
    let mut max_growth: Option<(u64, BigRational)> = None;
    let settle = BigRational::new(BigInt::from(19), BigInt::from(10));
    let mut growth_settles_at = None;
    for row in &table.rows {
        let (Some(ratio), Some(growth)) = (row.ratio(), row.growth()) else {
            continue;
        };
        if ratio >= threshold {
            witnesses.push(row.n);
        }
        if max_ratio.as_ref().map_or(true, |(_, m)| ratio > *m) {
            max_ratio = Some((row.n, ratio));
        }
        if growth >= settle {
            growth_settles_at.get_or_insert(row.n);
        } else {
            growth_settles_at = None;
        }
        if max_growth.as_ref().map_or(true, |(_, m)| growth > *m) {
            max_growth = Some((row.n, growth));
        }
    }
    Ok(RatioReport {
        epsilon: epsilon.clone(),
        witnesses,
        max_ratio,
        max_growth,
        growth_settles_at,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_witt_numbers() {
        let r: Vec<BigInt> = (1..=6).map(witt_number).collect();
        assert_eq!(r, [2, 1, 2, 3, 6, 9].map(BigInt::from));
        assert_eq!(witt_number_k(2, 3), BigInt::from(3));
    }

    #[test]
    fn lyndon_small() {
        assert_eq!(lyndon_count(1).unwrap(), 2);
        assert_eq!(lyndon_count(2).unwrap(), 1);
        assert_eq!(lyndon_count(4).unwrap(), 3);
        assert!(lyndon_count(25).is_err());
    }

    #[test]
    fn table_rows() {
        let t = build_witt_table(2, 4).unwrap();
        let rab: Vec<(i64, i64, i64)> = t
            .rows
            .iter()
            .map(|r| (r.r.clone().try_into().unwrap(), r.a.clone().try_into().unwrap(), r.b.clone().try_into().unwrap()))
            .collect();
        assert_eq!(rab, [(2, 2, 2), (1, 3, 5), (2, 5, 10), (3, 8, 18)]);
        assert_eq!(t.index(3), Some(BigInt::from(32)));
        assert_eq!(t.rows[2].ratio(), Some(BigRational::one()));
        assert!(build_witt_table(4, 3).is_err());
    }

    #[test]
    fn csv_layout() {
        let csv = build_witt_table(2, 4).unwrap().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[1], "1,2,2,2,,,");
        assert_eq!(lines[4], "4,3,8,18,10,8,10");
    }
}
