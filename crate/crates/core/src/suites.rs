//! Exhaustive verification runs over small-group universes, reported as
//! JSON lines in a fixed order.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::bounds::{
    check_recursion_step, construct_generators, evaluate_bounds, goursat_data, presentation_bound, verify_normality, verify_torsion_bound,
};
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::finite::generation::{d_min, subgroup_lattice};
use crate::finite::library::{groups_up_to, SmallGroup};
use crate::finite::{direct_product, FiniteGroup};
use crate::fp::relations::exact_relations;
use crate::fp::{Presentation, Word};
use crate::gradient::{run_sequence, SequenceSpec};
use crate::schur::{schur_multiplier, verify_multiplier_order_bound, verify_commutator_index_bound, verify_sylow_bound};

pub const SUITES: [&str; 7] = [
    "generator-bounds",
    "normality",
    "schur",
    "commutator-index",
    "torsion-bounds",
    "relator-bounds",
    "recursion-step",
];

/// Default group-order limit of each suite.
pub fn default_max_order(suite: &str) -> Result<usize> {
    match suite {
        "generator-bounds" | "normality" | "torsion-bounds" | "relator-bounds" => Ok(8),
        "schur" => Ok(16),
        "commutator-index" => Ok(32),
        "recursion-step" => Ok(0),
        other => Err(Error::UnknownSuite(other.to_string())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub max_order: usize,
    /// One JSON object per instance, in a fixed order.
    pub lines: Vec<String>,
    pub checks: usize,
    pub failures: usize,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn summary_line(&self) -> String {
        json!({
            "suite": self.suite,
            "max_order": self.max_order,
            "instances": self.lines.len(),
            "checks": self.checks,
            "failures": self.failures,
            "pass": self.passed(),
        })
        .to_string()
    }

    /// Instance lines followed by the summary line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out.push_str(&self.summary_line());
        out.push('\n');
        out
    }
}

/// An instance line with its number of checks and failures.
struct Item {
    value: Value,
    checks: usize,
    failures: usize,
}

impl Item {
    fn new(value: Value, verdicts: &[bool]) -> Self {
        Item {
            value,
            checks: verdicts.len(),
            failures: verdicts.iter().filter(|&&v| !v).count(),
        }
    }
}

fn report(suite: &str, max_order: usize, items: Vec<Item>) -> SuiteReport {
    SuiteReport {
        suite: suite.to_string(),
        max_order,
        checks: items.iter().map(|i| i.checks).sum(),
        failures: items.iter().map(|i| i.failures).sum(),
        lines: items.into_iter().map(|i| i.value.to_string()).collect(),
    }
}

pub fn run_suite(suite: &str, max_order: Option<usize>, caps: &Caps) -> Result<SuiteReport> {
    caps.validate()?;
    let m = match max_order {
        Some(m) => m,
        None => default_max_order(suite)?,
    };
    let items = match suite {
        "generator-bounds" => product_suite(m, caps, bounds_items)?,
        "normality" => product_suite(m, caps, normality_items)?,
        "torsion-bounds" => {
            let mut items = product_suite(m, caps, torsion_items)?;
            items.extend(fp_torsion_items(caps)?);
            items
        }
        "schur" => schur_items(m, caps)?,
        "commutator-index" => multiplier_items(m)?,
        "relator-bounds" => presentation_items(m, caps)?,
        "recursion-step" => recursion_items(),
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    Ok(report(suite, m, items))
}

fn universe(max_order: usize) -> Result<Vec<&'static SmallGroup>> {
    if max_order > crate::finite::library::LIBRARY_MAX_ORDER {
        return Err(Error::CapExceeded {
            what: "small-group library order",
            size: max_order,
            cap: crate::finite::library::LIBRARY_MAX_ORDER,
        });
    }
    Ok(groups_up_to(max_order).collect())
}

/// Everything one `A × B` instance needs.
struct ProductCase<'a> {
    a_name: &'a str,
    b_name: &'a str,
    a: &'a FiniteGroup,
    b: &'a FiniteGroup,
    g: FiniteGroup,
    lattice: Vec<crate::finite::generation::LatticeEntry>,
    d_g: usize,
}

type ProductCheck = fn(&ProductCase, &Caps) -> Result<Vec<Item>>;

/// Runs `check` over every ordered pair of library groups of order
/// `≤ max_order`, with the full subgroup lattice of each product.
fn product_suite(max_order: usize, caps: &Caps, check: ProductCheck) -> Result<Vec<Item>> {
    let groups = universe(max_order)?;
    let pairs: Vec<(&SmallGroup, &SmallGroup)> = groups.iter().flat_map(|&a| groups.iter().map(move |&b| (a, b))).collect();
    let nested: Vec<Vec<Item>> = pairs
        .par_iter()
        .map(|&(a, b)| product_case(&a.name, &a.group, &b.name, &b.group, caps, check))
        .collect::<Result<_>>()?;
    Ok(nested.into_iter().flatten().collect())
}

fn product_case(a_name: &str, a: &FiniteGroup, b_name: &str, b: &FiniteGroup, caps: &Caps, check: ProductCheck) -> Result<Vec<Item>> {
    let g = direct_product(a, b, caps.table)?;
    let lattice = subgroup_lattice(&g, caps.brute_force)?;
    let d_g = lattice.iter().find(|e| e.subgroup.order() == g.order()).map_or(0, |e| e.rank);
    check(
        &ProductCase {
            a_name,
            b_name,
            a,
            b,
            g,
            lattice,
            d_g,
        },
        caps,
    )
}

/// Generator bounds, normality and torsion checks for every subgroup of
/// one product `A × B`.
pub fn product_report(a_name: &str, a: &FiniteGroup, b_name: &str, b: &FiniteGroup, caps: &Caps) -> Result<SuiteReport> {
    caps.validate()?;
    let mut items = Vec::new();
    for check in [bounds_items as ProductCheck, normality_items, torsion_items] {
        items.extend(product_case(a_name, a, b_name, b, caps, check)?);
    }
    Ok(report("bounds", a.order().max(b.order()), items))
}

fn bounds_items(c: &ProductCase, caps: &Caps) -> Result<Vec<Item>> {
    let (a, b) = (c.a, c.b);
    let mut out = Vec::new();
    for entry in &c.lattice {
        let gd = goursat_data(a, b, &c.g, &entry.subgroup);
        let rep = evaluate_bounds(&gd, c.d_g, entry.rank);
        let cons = construct_generators(a, b, &c.g, &gd, caps.brute_force)?;
        let chain = entry.rank <= cons.size();
        let rank_bound = entry.rank <= c.d_g * gd.index_g_h;
        let v = json!({
            "check": "generator-bounds",
            "A": c.a_name,
            "B": c.b_name,
            "H_order": entry.subgroup.order(),
            "H_index": gd.index_g_h,
            "dG": c.d_g,
            "dH": entry.rank,
            "bounds": [rep.bound1, rep.bound2, rep.bound3],
            "bound3_constant": rep.bound3_constant,
            "floor_index_pow": rep.floor_index_pow,
            "pass": rep.pass,
            "construction_size": [cons.s.len(), cons.r_a.len(), cons.r_b.len()],
            "construction_generates_H": cons.equals_h,
            "generator_chain": chain,
            "subgroup_rank_bound": rank_bound,
        });
        let verdicts = [rep.pass[0], rep.pass[1], rep.pass[2], cons.equals_h, chain, rank_bound];
        out.push(Item::new(v, &verdicts));
    }
    Ok(out)
}

fn normality_items(c: &ProductCase, _caps: &Caps) -> Result<Vec<Item>> {
    Ok(c.lattice
        .iter()
        .map(|entry| {
            let n = verify_normality(c.a, c.b, &c.g, &entry.subgroup);
            let v = json!({
                "check": "normality",
                "A": c.a_name,
                "B": c.b_name,
                "K_order": entry.subgroup.order(),
                "hypothesis": n.hypothesis,
                "conclusion": n.conclusion,
                "pass": n.pass(),
            });
            Item::new(v, &[n.pass()])
        })
        .collect())
}

fn torsion_items(c: &ProductCase, _caps: &Caps) -> Result<Vec<Item>> {
    let (a, b) = (c.a, c.b);
    Ok(c.lattice
        .iter()
        .map(|entry| {
            let gd = goursat_data(a, b, &c.g, &entry.subgroup);
            let t = verify_torsion_bound(a, b, &c.g, &gd);
            let v = json!({
                "check": "torsion-bound",
                "A": c.a_name,
                "B": c.b_name,
                "H_order": entry.subgroup.order(),
                "H_index": t.index,
                "torsion_H": t.torsion_h,
                "torsion_piA": t.torsion_pi_a,
                "torsion_piB": t.torsion_pi_b,
                "log_lhs_upper": t.log_lhs_upper,
                "log_rhs_lower": t.log_rhs_lower,
                "log_base": "natural",
                "commutator_sandwich": [t.sandwich_lower, t.sandwich_upper],
                "pass": t.pass,
            });
            Item::new(v, &[t.pass, t.sandwich_lower, t.sandwich_upper])
        })
        .collect())
}

/// Subgroups of `F₂ × F₂` of index at most 200: fiber products over small
/// quotients and products of small-index subgroups.
pub fn fp_torsion_specs() -> Vec<SequenceSpec> {
    let w = |s: &[&str]| s.iter().map(|x| Word::parse(x).expect("valid word")).collect::<Vec<_>>();
    let fiber = SequenceSpec::fiber_product(
        "fiber products",
        Presentation::free(2),
        &[
            ("C2", w(&["a", "bb"])),
            ("V4", w(&["aa", "bb", "abAB"])),
            ("S3", w(&["aa", "bbb", "abab"])),
            ("D8", w(&["aa", "bbbb", "abab"])),
            ("Q8", w(&["aaaa", "aabb", "abaB"])),
            ("A4", w(&["aa", "bbb", "ababab"])),
            ("C4xC4", w(&["aaaa", "bbbb", "abAB"])),
            ("S4", w(&["aa", "bbb", "abababab"])),
            ("A5", w(&["aa", "bbb", "ababababab"])),
            ("PSL(2,7)", w(&["aa", "bbb", "ababababababab", "abaBabaBabaBabaB"])),
        ],
    );
    let products = SequenceSpec::product_of_subgroups(
        "products",
        Presentation::free(2),
        Presentation::free(2),
        &[
            ("2x2", w(&["aa", "b", "aBA"]), w(&["a", "bb", "baB"])),
            ("3x2", w(&["aaa", "b", "aBA", "aaBAA"]), w(&["aa", "b", "aBA"])),
            ("4x4", w(&["aaaa", "b", "aBA", "aaBAA", "aaaBAAA"]), w(&["aa", "bb", "ab", "aB"])),
        ],
    );
    let mixed = SequenceSpec::coset_table(
        "explicit words",
        Presentation::free(2),
        Presentation::free(2),
        vec![crate::gradient::Level {
            name: "diagonal-mod-2".into(),
            words: w(&["ac", "bd", "aa", "bb", "abAB", "cc"]),
        }],
    );
    vec![fiber, products, mixed]
}

fn fp_torsion_items(caps: &Caps) -> Result<Vec<Item>> {
    let mut out = Vec::new();
    for mut spec in fp_torsion_specs() {
        spec.max_cosets = caps.max_cosets;
        spec.max_index = 200;
        for r in run_sequence(&spec)? {
            let pt = r.projection_torsion.as_ref().expect("projection data computed");
            let v = json!({
                "check": "torsion-bound-fp",
                "sequence": spec.name,
                "U": r.name,
                "index": r.index,
                "torsion_U": r.torsion_order.to_string(),
                "torsion_piA": pt.torsion_a.to_string(),
                "torsion_piB": pt.torsion_b.to_string(),
                "log_base": "natural",
                "pass": pt.pass,
            });
            out.push(Item::new(v, &[pt.pass]));
        }
    }
    Ok(out)
}

fn schur_items(max_order: usize, caps: &Caps) -> Result<Vec<Item>> {
    let groups = universe(max_order)?;
    groups.par_iter().map(|sg| schur_item(&sg.name, &sg.group, caps)).collect()
}

/// Multiplier report for named groups, one line each.
pub fn schur_report(groups: &[(String, FiniteGroup)], caps: &Caps) -> Result<SuiteReport> {
    caps.validate()?;
    let items = groups.iter().map(|(n, g)| schur_item(n, g, caps)).collect::<Result<Vec<_>>>()?;
    Ok(report("schur", groups.iter().map(|(_, g)| g.order()).max().unwrap_or(0), items))
}

fn schur_item(name: &str, e: &FiniteGroup, caps: &Caps) -> Result<Item> {
    let r = schur_multiplier(e, caps.homology)?;
    let product = r.per_prime.values().fold(BigInt::one(), |acc, x| acc * x);
    let prime_product = product == r.multiplier_order;
    let sylow = verify_sylow_bound(e, &r, caps.homology)?;
    let order_bound = verify_multiplier_order_bound(&r);
    let per_prime: serde_json::Map<String, Value> = r.per_prime.iter().map(|(p, v)| (p.to_string(), json!(v.to_string()))).collect();
    let v = json!({
        "group": name,
        "order": r.order,
        "multiplier": r.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        "checks": {
            "prime_part_product": { "per_prime": per_prime, "prime_part": "p-primary component", "pass": prime_product },
            "sylow_bound": sylow,
            "multiplier_order_bound": order_bound,
        },
    });
    let mut verdicts = vec![prime_product, order_bound.pass];
    verdicts.extend(sylow.iter().map(|s| s.pass));
    Ok(Item::new(v, &verdicts))
}

fn multiplier_items(max_order: usize) -> Result<Vec<Item>> {
    let groups = universe(max_order)?;
    let nested: Vec<Vec<Item>> = groups
        .par_iter()
        .map(|sg| {
            let a = &sg.group;
            let mut normals = a.normal_subgroups();
            normals.sort_by_key(|n| (n.order(), n.elements().to_vec()));
            normals
                .iter()
                .map(|n| {
                    let c = verify_commutator_index_bound(a, n)?;
                    let pass = c.pass;
                    let mut v = serde_json::to_value(&c).expect("serializable");
                    v["check"] = json!("commutator-index-bound");
                    v["group"] = json!(sg.name);
                    Ok(Item::new(v, &[pass]))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(nested.into_iter().flatten().collect())
}

/// Relator length cap of the exact search.
pub const EXACT_RELATOR_LENGTH: usize = 6;

fn presentation_items(max_order: usize, caps: &Caps) -> Result<Vec<Item>> {
    let groups = universe(max_order)?;
    let nested: Vec<Vec<Item>> = groups
        .par_iter()
        .map(|sg| {
            let k = &sg.group;
            let d = d_min(k, caps.brute_force)?;
            let mut out = Vec::new();
            for t in generating_sets(k, d) {
                let ex = exact_relations(k, &t, EXACT_RELATOR_LENGTH, caps.homology, caps.max_cosets)?;
                let bound = presentation_bound(k.order() as u64, t.len() as u64);
                let within = BigInt::from(ex.value) <= bound;
                let bracketed = ex.lower <= ex.value && ex.value <= ex.upper;
                let v = json!({
                    "check": "relator-count-bound",
                    "group": sg.name,
                    "T": t,
                    "r_value": ex.value,
                    "r_lower": ex.lower,
                    "r_upper": ex.upper,
                    "certified_minimum": ex.certified,
                    "max_relator_length": ex.max_len,
                    "bound": bound.to_u64(),
                    "pass": within,
                });
                out.push(Item::new(v, &[within, bracketed]));
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(nested.into_iter().flatten().collect())
}

/// All `d`-element subsets of `k` generating it, lexicographically. A
/// generating multiset of minimal size has no repeated entry.
pub fn generating_sets(k: &FiniteGroup, d: usize) -> Vec<Vec<usize>> {
    let n = k.order();
    if d == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        if k.closure(&idx).order() == n {
            out.push(idx.clone());
        }
        let mut i = d;
        while i > 0 && idx[i - 1] == n - d + i - 1 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        idx[i - 1] += 1;
        for j in i..d {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

pub const RECURSION_SWEEP_MAX: u64 = 1_000_000;
pub const RECURSION_GRID_T: u64 = 8;
/// Every `k` up to this value is checked with all of its divisors.
pub const RECURSION_DENSE_K: u64 = 5000;

/// `k ≤ 10⁶` whose prime factors are at most 7.
pub fn smooth_numbers(limit: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for p in [2u64, 3, 5, 7] {
        let mut next = Vec::new();
        for &x in &out {
            let mut y = x;
            while y <= limit {
                next.push(y);
                y *= p;
            }
        }
        out = next;
    }
    out.sort_unstable();
    out
}

fn divisors(k: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= k {
        if k % d == 0 {
            out.push(d);
            if d * d != k {
                out.push(k / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// Counts `(checks, failures, first failure)` over the given `(t, k, n)`.
fn sweep(cases: impl IntoParallelIterator<Item = (u64, u64, u64)>) -> (usize, usize, Option<(u64, u64, u64)>) {
    cases
        .into_par_iter()
        .map(|(t, k, n)| {
            let ok = check_recursion_step(t, k, n).unwrap_or(false);
            (1usize, usize::from(!ok), (!ok).then_some((t, k, n)))
        })
        .reduce(|| (0, 0, None), |x, y| (x.0 + y.0, x.1 + y.1, match (x.2, y.2) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }))
}

fn recursion_items() -> Vec<Item> {
    let mut out = Vec::new();
    let mut push = |family: &str, t: Option<u64>, (checks, failures, first): (usize, usize, Option<(u64, u64, u64)>)| {
        let v = json!({
            "check": "recursion-step",
            "family": family,
            "t": t,
            "cases": checks,
            "failures": failures,
            "first_failure": first.map(|(t, k, n)| json!({"t": t, "k": k, "n": n})),
            "pass": failures == 0,
        });
        out.push(Item {
            value: v,
            checks,
            failures,
        });
    };
    push("k=n", Some(1), sweep((2..=RECURSION_SWEEP_MAX).into_par_iter().map(|n| (1, n, n))));
    let dense: Vec<(u64, u64)> = (2..=RECURSION_DENSE_K).flat_map(|k| divisors(k).into_iter().filter(|&n| n >= 2).map(move |n| (k, n))).collect();
    let smooth: Vec<(u64, u64)> = smooth_numbers(RECURSION_SWEEP_MAX)
        .into_iter()
        .filter(|&k| k > RECURSION_DENSE_K)
        .flat_map(|k| divisors(k).into_iter().filter(|&n| n >= 2).map(move |n| (k, n)))
        .collect();
    for t in 1..=RECURSION_GRID_T {
        push("all divisors, k <= 5000", Some(t), sweep(dense.par_iter().map(|&(k, n)| (t, k, n))));
        push("all divisors, 7-smooth k <= 1000000", Some(t), sweep(smooth.par_iter().map(|&(k, n)| (t, k, n))));
    }
    out
}
