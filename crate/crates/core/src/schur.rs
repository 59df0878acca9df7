//! Schur multipliers through the normalized bar resolution.
//!
//! With trivial integer coefficients the normalized bar complex has
//! `C_n = Z[(E∖1)^n]` and
//! `∂[g|h|k] = [h|k] − [gh|k] + [g|hk] − [g|h]` (terms containing the
//! identity vanish). `C₂/im ∂₃ ≅ H₂(E) ⊕ (free)`, so the multiplier is the
//! torsion of the cokernel of `∂₃`: its invariant factors greater than one.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite::{FiniteGroup, Subgroup};
use crate::interval::Interval;
use crate::smith::{normalize_diagonal, SparseMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurResult {
    pub name: String,
    pub order: usize,
    /// Invariant factors of `M(E)`, each `≥ 2`.
    pub factors: Vec<BigInt>,
    pub multiplier_order: BigInt,
    /// Order of the `p`-primary part for each prime dividing `|E|`.
    pub per_prime: BTreeMap<usize, BigInt>,
}

/// The boundary `∂₃` as a sparse matrix (rows `C₃`, columns `C₂`).
pub fn boundary3(e: &FiniteGroup) -> SparseMatrix {
    let n = e.order();
    let id = e.identity();
    let nonid: Vec<usize> = (0..n).filter(|&x| x != id).collect();
    let mut pos = vec![usize::MAX; n];
    for (i, &x) in nonid.iter().enumerate() {
        pos[x] = i;
    }
    let m = nonid.len();
    let c2 = |a: usize, b: usize| -> Option<usize> { (a != id && b != id).then(|| pos[a] * m + pos[b]) };
    let mut mat = SparseMatrix::new(m * m * m, m * m);
    let mut row = 0;
    for &g in &nonid {
        for &h in &nonid {
            for &k in &nonid {
                let terms = [
                    (c2(h, k), 1),
                    (c2(e.mul(g, h), k), -1),
                    (c2(g, e.mul(h, k)), 1),
                    (c2(g, h), -1),
                ];
                for (col, sign) in terms {
                    if let Some(c) = col {
                        mat.push(row, c, sign);
                    }
                }
                row += 1;
            }
        }
    }
    mat
}

pub fn schur_multiplier(e: &FiniteGroup, homology_cap: usize) -> Result<SchurResult> {
    if e.order() > homology_cap {
        return Err(Error::CapExceeded {
            what: "homology group order",
            size: e.order(),
            cap: homology_cap,
        });
    }
    let factors: Vec<BigInt> = if e.order() <= 2 {
        Vec::new()
    } else {
        boundary3(e).smith().factors.into_iter().filter(|f| !f.is_one()).collect()
    };
    let factors = normalize_diagonal(factors);
    let multiplier_order = factors.iter().fold(BigInt::one(), |acc, f| acc * f);
    let mut r = SchurResult {
        name: e.name().unwrap_or("E").to_string(),
        order: e.order(),
        factors,
        multiplier_order,
        per_prime: BTreeMap::new(),
    };
    r.per_prime = p_part_decomposition(&r);
    Ok(r)
}

/// Orders of the `p`-primary parts of `M(E)` for the primes dividing `|E|`.
pub fn p_part_decomposition(r: &SchurResult) -> BTreeMap<usize, BigInt> {
    primes_dividing(r.order)
        .into_iter()
        .map(|p| (p, r.factors.iter().fold(BigInt::one(), |acc, f| acc * p_part(f, p))))
        .collect()
}

/// Largest power of `p` dividing `f`.
pub fn p_part(f: &BigInt, p: usize) -> BigInt {
    let p = BigInt::from(p);
    let mut f = f.clone();
    let mut out = BigInt::one();
    while (&f % &p).to_u8() == Some(0) && f != BigInt::from(0) {
        f /= &p;
        out *= &p;
    }
    out
}

pub fn primes_dividing(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// One prime's comparison of the `p`-part of `M(E)` with `|M(P)|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SylowCheck {
    pub prime: usize,
    pub sylow_order: usize,
    pub p_part: String,
    pub sylow_multiplier: String,
    pub pass: bool,
}

/// The `p`-primary part of `M(E)` is at most `|M(P)|` for a Sylow `P`.
pub fn verify_sylow_bound(e: &FiniteGroup, r: &SchurResult, homology_cap: usize) -> Result<Vec<SylowCheck>> {
    let mut out = Vec::new();
    for (&p, part) in &r.per_prime {
        let sylow = e.sylow_subgroup(p);
        let (pg, _) = e.subgroup_group(&sylow);
        let mp = schur_multiplier(&pg, homology_cap)?;
        out.push(SylowCheck {
            prime: p,
            sylow_order: sylow.order(),
            p_part: part.to_string(),
            sylow_multiplier: mp.multiplier_order.to_string(),
            pass: *part <= mp.multiplier_order,
        });
    }
    Ok(out)
}

/// `|M(E)| ≤ |E|^{ln |E|}`, right side rounded down.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MultiplierOrderCheck {
    pub multiplier_order: String,
    /// Lower end of the enclosure of `|E|^{ln |E|}`.
    pub bound_lower: f64,
    pub log_base: &'static str,
    pub pass: bool,
}

pub fn verify_multiplier_order_bound(r: &SchurResult) -> MultiplierOrderCheck {
    let n = Interval::from_u64(r.order as u64);
    let rhs = n.pow(n.ln());
    let lhs = Interval::from_big(&r.multiplier_order);
    MultiplierOrderCheck {
        multiplier_order: r.multiplier_order.to_string(),
        bound_lower: rhs.lo,
        log_base: "natural",
        pass: r.multiplier_order.is_one() || lhs.certainly_le(rhs),
    }
}

/// `[[A,A] : [A,A₀]] ≤ [A : A₀]^{1 + ln [A : A₀]}` for `A₀ ⊴ A`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommutatorIndexCheck {
    pub group: String,
    pub order: usize,
    pub a0_order: usize,
    pub index: usize,
    pub derived_order: usize,
    pub mixed_commutator_order: usize,
    pub commutator_index: usize,
    pub bound_lower: f64,
    pub log_base: &'static str,
    pub pass: bool,
}

pub fn verify_commutator_index_bound(a: &FiniteGroup, a0: &Subgroup) -> Result<CommutatorIndexCheck> {
    if !a.is_normal(a0) {
        return Err(Error::NotNormal);
    }
    let whole = a.whole();
    let derived = a.commutator_subgroup(&whole, &whole);
    let mixed = a.commutator_subgroup(&whole, a0);
    let index = a.order() / a0.order();
    let commutator_index = derived.order() / mixed.order();
    let i = Interval::from_u64(index as u64);
    let bound = i.pow(Interval::exact(1.0).add(i.ln()));
    Ok(CommutatorIndexCheck {
        group: a.name().unwrap_or("A").to_string(),
        order: a.order(),
        a0_order: a0.order(),
        index,
        derived_order: derived.order(),
        mixed_commutator_order: mixed.order(),
        commutator_index,
        bound_lower: bound.lo,
        log_base: "natural",
        pass: commutator_index == 1 || Interval::from_u64(commutator_index as u64).certainly_le(bound),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::hom::direct_product;
    use crate::finite::perm::{dihedral, quaternion, symmetric};

    fn order_of(g: &FiniteGroup) -> BigInt {
        schur_multiplier(g, 32).unwrap().multiplier_order
    }

    #[test]
    fn small_multipliers() {
        for n in 1..=8 {
            assert_eq!(order_of(&FiniteGroup::cyclic(n)), BigInt::one(), "Z/{n}");
        }
        let z2 = FiniteGroup::cyclic(2);
        let v = direct_product(&z2, &z2, 100).unwrap();
        assert_eq!(schur_multiplier(&v, 16).unwrap().factors, vec![BigInt::from(2)]);
        assert_eq!(order_of(&symmetric(3).unwrap()), BigInt::one());
        assert_eq!(order_of(&dihedral(4).unwrap()), BigInt::from(2));
        assert_eq!(order_of(&quaternion()), BigInt::one());
        assert_eq!(order_of(&symmetric(4).unwrap()), BigInt::from(2));
        let z4 = FiniteGroup::cyclic(4);
        assert_eq!(schur_multiplier(&direct_product(&z4, &z4, 100).unwrap(), 16).unwrap().factors, vec![BigInt::from(4)]);
    }

    #[test]
    fn cap_enforced() {
        let g = FiniteGroup::cyclic(17);
        assert!(matches!(schur_multiplier(&g, 16), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn prime_parts() {
        let r = SchurResult {
            name: "x".into(),
            order: 12,
            factors: vec![BigInt::from(6)],
            multiplier_order: BigInt::from(6),
            per_prime: BTreeMap::new(),
        };
        let d = p_part_decomposition(&r);
        assert_eq!(d[&2], BigInt::from(2));
        assert_eq!(d[&3], BigInt::from(3));
    }

    #[test]
    fn commutator_index_examples() {
        let d8 = dihedral(4).unwrap();
        let c = verify_commutator_index_bound(&d8, &d8.center()).unwrap();
        assert_eq!((c.commutator_index, c.pass), (2, true));
        let s3 = symmetric(3).unwrap();
        let a3 = s3.closure(&[s3.generators()[0]]);
        let a3 = if a3.order() == 3 { a3 } else { s3.closure(&[s3.generators()[1]]) };
        let c = verify_commutator_index_bound(&s3, &a3).unwrap();
        assert_eq!((c.index, c.commutator_index, c.pass), (2, 1, true));
        let c = verify_commutator_index_bound(&s3, &s3.whole()).unwrap();
        assert_eq!((c.index, c.commutator_index), (1, 1));
        assert_eq!(c.bound_lower, 1.0);
    }
}
