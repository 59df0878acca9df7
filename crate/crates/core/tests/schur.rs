use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use subgrad::finite::library::{groups_up_to, lookup};
use subgrad::finite::perm::{dihedral, quaternion, symmetric};
use subgrad::finite::{direct_product, FiniteGroup};
use subgrad::schur::{p_part_decomposition, schur_multiplier, verify_multiplier_order_bound, verify_commutator_index_bound, verify_sylow_bound, SchurResult};
use subgrad::smith::abelian_invariants_finite;
use subgrad::Error;

const CAP: usize = 64;

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn v4() -> FiniteGroup {
    let z2 = FiniteGroup::cyclic(2);
    direct_product(&z2, &z2, 100).unwrap()
}

fn multiplier(g: &FiniteGroup) -> Vec<BigInt> {
    schur_multiplier(g, CAP).unwrap().factors
}

#[test]
fn examples() {
    for n in 1..=8 {
        assert!(multiplier(&FiniteGroup::cyclic(n)).is_empty(), "Z/{n}");
    }
    assert_eq!(multiplier(&v4()), big(&[2]));
    assert!(multiplier(&FiniteGroup::trivial()).is_empty());
    assert!(multiplier(&symmetric(3).unwrap()).is_empty());
    assert!(multiplier(&quaternion()).is_empty());
    assert_eq!(multiplier(&dihedral(4).unwrap()), big(&[2]));
    assert_eq!(multiplier(&symmetric(4).unwrap()), big(&[2]));
    assert!(matches!(schur_multiplier(&symmetric(4).unwrap(), 10), Err(Error::CapExceeded { .. })));
}

#[test]
fn prime_parts() {
    let r = |order: usize, factors: &[i64]| SchurResult {
        name: "E".into(),
        order,
        factors: big(factors),
        multiplier_order: factors.iter().product::<i64>().into(),
        per_prime: Default::default(),
    };
    let two = p_part_decomposition(&r(4, &[2]));
    assert_eq!(two.into_iter().collect::<Vec<_>>(), vec![(2, BigInt::from(2))]);
    let six = p_part_decomposition(&r(36, &[6]));
    assert_eq!(six.into_iter().collect::<Vec<_>>(), vec![(2, BigInt::from(2)), (3, BigInt::from(3))]);
    let trivial = p_part_decomposition(&r(6, &[]));
    assert!(trivial.values().all(|v| v.is_one()));
}

#[test]
fn sylow_and_order_bounds() {
    let s3 = symmetric(3).unwrap();
    let checks = verify_sylow_bound(&s3, &schur_multiplier(&s3, CAP).unwrap(), CAP).unwrap();
    assert_eq!(checks.len(), 2);
    assert!(checks.iter().all(|c| c.pass && c.p_part == "1" && c.sylow_multiplier == "1"));
    let v = v4();
    let checks = verify_sylow_bound(&v, &schur_multiplier(&v, CAP).unwrap(), CAP).unwrap();
    assert_eq!((checks[0].p_part.as_str(), checks[0].sylow_multiplier.as_str(), checks[0].pass), ("2", "2", true));
    let t = FiniteGroup::trivial();
    assert!(verify_sylow_bound(&t, &schur_multiplier(&t, CAP).unwrap(), CAP).unwrap().is_empty());

    let g = verify_multiplier_order_bound(&schur_multiplier(&v, CAP).unwrap());
    assert!(g.pass && g.bound_lower > 6.7 && g.bound_lower < 6.9);
    assert!(verify_multiplier_order_bound(&schur_multiplier(&FiniteGroup::cyclic(8), CAP).unwrap()).pass);
    assert!(verify_multiplier_order_bound(&schur_multiplier(&t, CAP).unwrap()).pass);
}

#[test]
fn commutator_index() {
    let d8 = dihedral(4).unwrap();
    let c = verify_commutator_index_bound(&d8, &d8.center()).unwrap();
    assert_eq!((c.derived_order, c.mixed_commutator_order, c.commutator_index, c.index), (2, 1, 2, 4));
    assert!(c.pass);
    let s3 = symmetric(3).unwrap();
    let a3 = s3.commutator_subgroup(&s3.whole(), &s3.whole());
    let c = verify_commutator_index_bound(&s3, &a3).unwrap();
    assert_eq!((c.derived_order, c.mixed_commutator_order, c.commutator_index), (3, 3, 1));
    assert!(c.pass);
    let c = verify_commutator_index_bound(&s3, &s3.whole()).unwrap();
    assert_eq!((c.index, c.commutator_index), (1, 1));
    assert!(c.pass);
    let t = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
    assert!(matches!(verify_commutator_index_bound(&s3, &s3.closure(&[t])), Err(Error::NotNormal)));
}

/// For abelian `E ≅ ⊕ Z/nᵢ` (invariant factors), `M(E) ≅ ⊕_{i<j} Z/gcd(nᵢ, nⱼ)`.
#[test]
fn abelian_multipliers_match_formula() {
    for sg in groups_up_to(16) {
        let g = &sg.group;
        if !g.is_abelian() {
            continue;
        }
        let n = abelian_invariants_finite(g, &g.whole()).torsion_factors;
        let mut expected = Vec::new();
        for i in 0..n.len() {
            for j in i + 1..n.len() {
                expected.push(n[i].gcd(&n[j]));
            }
        }
        expected.sort();
        let mut got = multiplier(g);
        got.sort();
        let order: BigInt = expected.iter().product();
        assert_eq!(got.iter().product::<BigInt>(), order, "{}", sg.name);
        assert_eq!(canonical(&got), canonical(&expected), "{}", sg.name);
    }
}

/// Prime-power decomposition of an abelian group given by cyclic factors.
fn canonical(factors: &[BigInt]) -> Vec<(usize, BigInt)> {
    let mut out = Vec::new();
    for f in factors {
        let mut f = f.clone();
        let mut p = 2usize;
        while f > BigInt::one() {
            let bp = BigInt::from(p);
            let mut q = BigInt::one();
            while f.is_multiple_of(&bp) {
                f /= &bp;
                q *= &bp;
            }
            if !q.is_one() {
                out.push((p, q));
            }
            p += 1;
        }
    }
    out.sort();
    out
}

/// Coprime orders: `M(E₁ × E₂) ≅ M(E₁) × M(E₂)`.
#[test]
fn coprime_products() {
    let pairs = [
        (v4(), FiniteGroup::cyclic(3)),
        (FiniteGroup::cyclic(4), FiniteGroup::cyclic(3)),
        (FiniteGroup::cyclic(2), FiniteGroup::cyclic(5)),
        (symmetric(3).unwrap(), FiniteGroup::cyclic(5)),
        (dihedral(4).unwrap(), FiniteGroup::cyclic(3)),
    ];
    for (e1, e2) in pairs {
        let p = direct_product(&e1, &e2, 100).unwrap();
        let mut both = multiplier(&e1);
        both.extend(multiplier(&e2));
        assert_eq!(canonical(&multiplier(&p)), canonical(&both));
    }
}

#[test]
fn library_orders_16() {
    for sg in groups_up_to(16) {
        let r = schur_multiplier(&sg.group, CAP).unwrap();
        let product: BigInt = r.per_prime.values().product();
        assert_eq!(product, r.multiplier_order, "{}", sg.name);
        assert!(verify_sylow_bound(&sg.group, &r, CAP).unwrap().iter().all(|c| c.pass), "{}", sg.name);
        assert!(verify_multiplier_order_bound(&r).pass, "{}", sg.name);
    }
    assert!(lookup("S4").is_some());
}
