//! Generator, relator and torsion bounds for subgroups of direct products.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite::generation::{d_min_of, min_generating_set_of, min_normal_generating_set};
use crate::finite::{FiniteGroup, ProductCoords, Subgroup};
use crate::interval::{floor_pow_3_7, iroot, Interval};
use crate::smith::abelian_invariants_finite;

/// Constant of the third generator bound, as stated.
pub const BOUND3_CONSTANT: u64 = 130;

/// Projections, intersections and indices attached to `H ≤ A × B`.
#[derive(Clone, Debug)]
pub struct GoursatData {
    pub coords: ProductCoords,
    pub h: Subgroup,
    /// `π_A(H)` as a subgroup of `A`.
    pub pi_a: Subgroup,
    pub pi_b: Subgroup,
    /// `A ∩ H` as a subgroup of `A`.
    pub a_cap_h: Subgroup,
    pub b_cap_h: Subgroup,
    pub index_g_h: usize,
    pub index_g_ah: usize,
    pub index_ah_h: usize,
    pub index_g_bh: usize,
    pub index_bh_h: usize,
}

pub fn goursat_data(a: &FiniteGroup, b: &FiniteGroup, g: &FiniteGroup, h: &Subgroup) -> GoursatData {
    let coords = ProductCoords::new(a, b);
    let proj_a: Vec<usize> = h.elements().iter().map(|&x| coords.proj_a(x)).collect();
    let proj_b: Vec<usize> = h.elements().iter().map(|&x| coords.proj_b(x)).collect();
    let pi_a = a.closure(&proj_a);
    let pi_b = b.closure(&proj_b);
    let a_in_h: Vec<usize> = h.elements().iter().filter(|&&x| coords.proj_b(x) == b.identity()).map(|&x| coords.proj_a(x)).collect();
    let b_in_h: Vec<usize> = h.elements().iter().filter(|&&x| coords.proj_a(x) == a.identity()).map(|&x| coords.proj_b(x)).collect();
    let a_cap_h = a.closure(&a_in_h);
    let b_cap_h = b.closure(&b_in_h);
    debug_assert_eq!(a_cap_h.order(), a_in_h.len());
    let ah = g.join(h, coords.factor_a(g, a, b).generators());
    let bh = g.join(h, coords.factor_b(g, a, b).generators());
    GoursatData {
        index_g_h: g.order() / h.order(),
        index_g_ah: g.order() / ah.order(),
        index_ah_h: ah.order() / h.order(),
        index_g_bh: g.order() / bh.order(),
        index_bh_h: bh.order() / h.order(),
        coords,
        h: h.clone(),
        pi_a,
        pi_b,
        a_cap_h,
        b_cap_h,
    }
}

/// Hypothesis `BK = G` and conclusion `A ∩ K ⊴ A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NormalityCheck {
    pub hypothesis: bool,
    /// `None` when the hypothesis fails and nothing is asserted.
    pub conclusion: Option<bool>,
}

impl NormalityCheck {
    pub fn pass(&self) -> bool {
        self.conclusion != Some(false)
    }
}

pub fn verify_normality(a: &FiniteGroup, b: &FiniteGroup, g: &FiniteGroup, k: &Subgroup) -> NormalityCheck {
    let coords = ProductCoords::new(a, b);
    let mut hit = vec![false; g.order()];
    for y in 0..b.order() {
        let by = coords.pair(a.identity(), y);
        for &x in k.elements() {
            hit[g.mul(by, x)] = true;
        }
    }
    if hit.iter().any(|h| !h) {
        return NormalityCheck {
            hypothesis: false,
            conclusion: None,
        };
    }
    let a_cap: Vec<usize> = k.elements().iter().filter(|&&x| coords.proj_b(x) == b.identity()).map(|&x| coords.proj_a(x)).collect();
    let sub = a.closure(&a_cap);
    NormalityCheck {
        hypothesis: true,
        conclusion: Some(sub.order() == a_cap.len() && a.is_normal(&sub)),
    }
}

/// The generating set `S ∪ R_A ∪ R_B` of `H`.
#[derive(Clone, Debug)]
pub struct GeneratorConstruction {
    /// Elements of `A ∩ H`, embedded in `G`.
    pub s: Vec<usize>,
    pub r_a: Vec<usize>,
    pub r_b: Vec<usize>,
    pub combined: Subgroup,
    pub equals_h: bool,
    /// `d(π_A(H))` and `d(π_B(H))`.
    pub d_pi_a: usize,
    pub d_pi_b: usize,
}

impl GeneratorConstruction {
    pub fn size(&self) -> usize {
        self.s.len() + self.r_a.len() + self.r_b.len()
    }
}

pub fn construct_generators(a: &FiniteGroup, b: &FiniteGroup, g: &FiniteGroup, gd: &GoursatData, cap: usize) -> Result<GeneratorConstruction> {
    let c = &gd.coords;
    let s_a = min_normal_generating_set(a, &gd.pi_a, &gd.a_cap_h, cap)?;
    let s: Vec<usize> = s_a.iter().map(|&x| c.pair(x, b.identity())).collect();
    let gens_a = min_generating_set_of(a, &gd.pi_a, cap)?;
    let gens_b = min_generating_set_of(b, &gd.pi_b, cap)?;
    // lift: smallest element of H over each projection generator
    let lift = |target: usize, proj: &dyn Fn(usize) -> usize| -> usize {
        *gd.h.elements().iter().find(|&&x| proj(x) == target).expect("projection generator has a preimage")
    };
    let r_a: Vec<usize> = gens_a.iter().map(|&x| lift(x, &|y| c.proj_a(y))).collect();
    let r_b: Vec<usize> = gens_b.iter().map(|&x| lift(x, &|y| c.proj_b(y))).collect();
    let mut all = s.clone();
    all.extend(&r_a);
    all.extend(&r_b);
    let combined = g.closure(&all);
    let equals_h = combined == gd.h;
    Ok(GeneratorConstruction {
        s,
        d_pi_a: r_a.len(),
        d_pi_b: r_b.len(),
        r_a,
        r_b,
        combined,
        equals_h,
    })
}

/// The three generator bounds for `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub d_h: usize,
    pub d_g: usize,
    pub bound1: u64,
    pub bound2: u64,
    pub bound3: u64,
    /// `⌊[G:H]^{3/7}⌋`.
    pub floor_index_pow: u64,
    pub bound3_constant: u64,
    pub pass: [bool; 3],
}

pub fn evaluate_bounds(gd: &GoursatData, d_g: usize, d_h: usize) -> BoundReport {
    let d = d_g as u64;
    let f = floor_pow_3_7(gd.index_g_h as u64).to_u64().expect("small");
    let bound1 = d * (gd.index_g_ah + gd.index_ah_h) as u64;
    let bound2 = d * (gd.index_g_bh + gd.index_bh_h) as u64;
    let bound3 = d * (gd.index_g_ah as u64 + BOUND3_CONSTANT * gd.index_g_bh as u64 * f);
    let dh = d_h as u64;
    BoundReport {
        d_h,
        d_g,
        bound1,
        bound2,
        bound3,
        floor_index_pow: f,
        bound3_constant: BOUND3_CONSTANT,
        pass: [dh <= bound1, dh <= bound2, dh <= bound3],
    }
}

/// Bounds with `d(H)` computed by exhaustive search.
pub fn evaluate_bounds_exact(g: &FiniteGroup, gd: &GoursatData, cap: usize) -> Result<BoundReport> {
    let d_g = crate::finite::d_min(g, cap)?;
    let d_h = d_min_of(g, &gd.h, cap)?;
    Ok(evaluate_bounds(gd, d_g, d_h))
}

/// `⌊128 · t · k^{3/7}⌋`, exact.
pub fn presentation_bound(k_order: u64, t_size: u64) -> BigInt {
    if t_size == 0 {
        return BigInt::from(0);
    }
    // ⌊(128 t)^7 k^3⌋^{1/7}
    let x = BigInt::from(128 * t_size).pow(7) * BigInt::from(k_order).pow(3);
    iroot(&x, 7)
}

/// `r ≤ 128 · t · k^{3/7}` decided exactly via `r⁷ ≤ 128⁷ t⁷ k³`.
pub fn within_presentation_bound(r: u64, k_order: u64, t_size: u64) -> bool {
    BigInt::from(r).pow(7) <= BigInt::from(128 * t_size).pow(7) * BigInt::from(k_order).pow(3)
}

/// One induction step of the relator bound:
/// `128 t (k/n)^{3/7} + 6 t log₂ n + 8 n^{3/7} ≤ 128 t k^{3/7}`, left side
/// rounded up and right side rounded down.
pub fn check_recursion_step(t: u64, k: u64, n: u64) -> Result<bool> {
    if t < 1 || n < 2 || k % n != 0 {
        return Err(Error::Domain(format!("need t ≥ 1, n ≥ 2 and n | k (t={t}, k={k}, n={n})")));
    }
    let ti = Interval::from_u64(t);
    let c128 = Interval::exact(128.0);
    let quotient = Interval::from_u64(k / n).pow_ratio(3, 7);
    let ni = Interval::from_u64(n);
    let lhs = c128
        .mul(ti)
        .mul(quotient)
        .add(Interval::exact(6.0).mul(ti).mul(ni.log2()))
        .add(Interval::exact(8.0).mul(ni.pow_ratio(3, 7)));
    let rhs = c128.mul(ti).mul(Interval::from_u64(k).pow_ratio(3, 7));
    Ok(lhs.certainly_le(rhs))
}

/// Torsion of `H^{ab}` against the projections, and the commutator
/// sandwich `[π_A H, A₀] × [π_B H, B₀] ≤ H' ≤ H ∩ (π_A(H)' × π_B(H)')`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TorsionCheck {
    pub torsion_h: String,
    pub torsion_pi_a: String,
    pub torsion_pi_b: String,
    pub index: usize,
    /// Enclosure of `ln |t(H^ab)|` (upper end) and of the log of the right
    /// side (lower end).
    pub log_lhs_upper: f64,
    pub log_rhs_lower: f64,
    pub sandwich_lower: bool,
    pub sandwich_upper: bool,
    pub pass: bool,
}

pub fn verify_torsion_bound(a: &FiniteGroup, b: &FiniteGroup, g: &FiniteGroup, gd: &GoursatData) -> TorsionCheck {
    let c = &gd.coords;
    let t_h = abelian_invariants_finite(g, &gd.h).torsion_order;
    let t_a = abelian_invariants_finite(a, &gd.pi_a).torsion_order;
    let t_b = abelian_invariants_finite(b, &gd.pi_b).torsion_order;
    let (lower, upper) = {
        let left_a = a.commutator_subgroup(&gd.pi_a, &gd.a_cap_h);
        let left_b = b.commutator_subgroup(&gd.pi_b, &gd.b_cap_h);
        let h_prime = g.derived_subgroup(&gd.h);
        let lower = left_a
            .elements()
            .iter()
            .all(|&x| left_b.elements().iter().all(|&y| h_prime.contains(c.pair(x, y))));
        let da = a.derived_subgroup(&gd.pi_a);
        let db = b.derived_subgroup(&gd.pi_b);
        let upper = h_prime
            .elements()
            .iter()
            .all(|&z| gd.h.contains(z) && da.contains(c.proj_a(z)) && db.contains(c.proj_b(z)));
        (lower, upper)
    };
    let (pass, lo, hi) = torsion_inequality(&t_h, &t_a, &t_b, gd.index_g_h as u64);
    TorsionCheck {
        torsion_h: t_h.to_string(),
        torsion_pi_a: t_a.to_string(),
        torsion_pi_b: t_b.to_string(),
        index: gd.index_g_h,
        log_lhs_upper: hi,
        log_rhs_lower: lo,
        sandwich_lower: lower,
        sandwich_upper: upper,
        pass,
    }
}

/// `t_H ≤ t_A · t_B · i^{2(1 + ln i)}`, decided exactly when `t_H ≤ t_A t_B`
/// and otherwise in the log domain with outward rounding. Returns the
/// verdict, the lower end of the right side's log and the upper end of the
/// left side's log.
pub fn torsion_inequality(t_h: &BigInt, t_a: &BigInt, t_b: &BigInt, index: u64) -> (bool, f64, f64) {
    let lhs = Interval::ln_big(t_h);
    let i = Interval::from_u64(index);
    let li = i.ln();
    let factor = Interval::exact(2.0).mul(Interval::exact(1.0).add(li)).mul(li);
    let rhs = Interval::ln_big(t_a).add(Interval::ln_big(t_b)).add(factor);
    let exact = t_h <= &(t_a * t_b);
    (exact || lhs.certainly_le(rhs), rhs.lo, lhs.hi)
}
