use num_bigint::BigInt;
use num_traits::Pow;

use subgrad::bounds::{
    check_recursion_step, construct_generators, evaluate_bounds, evaluate_bounds_exact, goursat_data, presentation_bound, torsion_inequality,
    verify_normality, verify_torsion_bound, within_presentation_bound,
};
use subgrad::finite::perm::symmetric;
use subgrad::finite::{direct_product, FiniteGroup, ProductCoords, Subgroup};
use subgrad::interval::{floor_pow_3_7, iroot};
use subgrad::Error;

const CAP: usize = 512;

fn setup(a: &FiniteGroup, b: &FiniteGroup) -> (FiniteGroup, ProductCoords) {
    (direct_product(a, b, 1000).unwrap(), ProductCoords::new(a, b))
}

fn diagonal(a: &FiniteGroup, g: &FiniteGroup, c: &ProductCoords) -> Subgroup {
    let gens: Vec<usize> = a.generators().iter().map(|&x| c.pair(x, x)).collect();
    g.closure(&gens)
}

#[test]
fn goursat_examples() {
    let s3 = symmetric(3).unwrap();
    let (g, c) = setup(&s3, &s3);
    let h = diagonal(&s3, &g, &c);
    let gd = goursat_data(&s3, &s3, &g, &h);
    assert_eq!(gd.pi_a.order(), 6);
    assert!(gd.a_cap_h.is_trivial());
    assert_eq!((gd.index_g_h, gd.index_g_ah, gd.index_ah_h), (6, 1, 6));

    let gd = goursat_data(&s3, &s3, &g, &g.whole());
    assert_eq!((gd.index_g_h, gd.index_g_ah, gd.index_ah_h, gd.a_cap_h.order()), (1, 1, 1, 6));

    let a_only = g.closure(&s3.generators().iter().map(|&x| c.pair(x, 0)).collect::<Vec<_>>());
    let gd = goursat_data(&s3, &s3, &g, &a_only);
    assert!(gd.pi_b.is_trivial());
    assert_eq!((gd.index_g_bh, gd.index_bh_h), (1, 6));
}

#[test]
fn bound_examples() {
    let s3 = symmetric(3).unwrap();
    let (g, c) = setup(&s3, &s3);
    let gd = goursat_data(&s3, &s3, &g, &diagonal(&s3, &g, &c));
    let r = evaluate_bounds_exact(&g, &gd, CAP).unwrap();
    assert_eq!((r.d_h, r.d_g, r.bound1), (2, 2, 14));
    assert!(r.pass.iter().all(|&p| p));

    let gd = goursat_data(&s3, &s3, &g, &g.whole());
    let r = evaluate_bounds_exact(&g, &gd, CAP).unwrap();
    assert_eq!(r.bound1, 2 * r.d_g as u64);
    assert!(r.pass[0]);

    let z4 = FiniteGroup::cyclic(4);
    let (g, c) = setup(&z4, &z4);
    let h = g.closure(&[c.pair(2, 0), c.pair(0, 1)]);
    let gd = goursat_data(&z4, &z4, &g, &h);
    let r = evaluate_bounds_exact(&g, &gd, CAP).unwrap();
    assert_eq!((r.d_h, r.bound1), (2, 6));
    assert!(r.pass.iter().all(|&p| p));
    // a deliberately understated d(G) must be able to fail
    assert!(!evaluate_bounds(&gd, 0, 2).pass[0]);
}

#[test]
fn normality_examples() {
    let s3 = symmetric(3).unwrap();
    let (g, c) = setup(&s3, &s3);
    let n = verify_normality(&s3, &s3, &g, &diagonal(&s3, &g, &c));
    assert!(n.hypothesis && n.conclusion == Some(true) && n.pass());
    let trivial = verify_normality(&s3, &s3, &g, &g.trivial_subgroup());
    assert!(!trivial.hypothesis && trivial.conclusion.is_none() && trivial.pass());
}

#[test]
fn construction_examples() {
    let s3 = symmetric(3).unwrap();
    let (g, c) = setup(&s3, &s3);
    let h = diagonal(&s3, &g, &c);
    let k = construct_generators(&s3, &s3, &g, &goursat_data(&s3, &s3, &g, &h), CAP).unwrap();
    assert!(k.s.is_empty() && k.r_a.len() == 2 && k.equals_h && k.combined == h);

    let k = construct_generators(&s3, &s3, &g, &goursat_data(&s3, &s3, &g, &g.whole()), CAP).unwrap();
    assert!(k.equals_h && !k.s.is_empty());

    let z4 = FiniteGroup::cyclic(4);
    let (g, c) = setup(&z4, &z4);
    let h = g.closure(&[c.pair(2, 0), c.pair(0, 1)]);
    let k = construct_generators(&z4, &z4, &g, &goursat_data(&z4, &z4, &g, &h), CAP).unwrap();
    assert_eq!((k.s.len(), k.r_a.len(), k.r_b.len()), (1, 1, 1));
    assert!(k.equals_h);
}

#[test]
fn presentation_bounds() {
    assert_eq!(presentation_bound(1, 0), BigInt::from(0));
    assert_eq!(presentation_bound(6, 2), BigInt::from(551));
    let rhs = BigInt::from(256).pow(7u32) * BigInt::from(216);
    assert!(BigInt::from(551).pow(7u32) <= rhs && rhs < BigInt::from(552).pow(7u32));
    assert_eq!(presentation_bound(128, 1), BigInt::from(1024));
    assert!(within_presentation_bound(551, 6, 2) && !within_presentation_bound(552, 6, 2));
    assert!(within_presentation_bound(1024, 128, 1) && !within_presentation_bound(1025, 128, 1));
}

#[test]
fn integer_roots() {
    assert_eq!(floor_pow_3_7(128), BigInt::from(8));
    assert_eq!(floor_pow_3_7(127), BigInt::from(7));
    assert_eq!(floor_pow_3_7(1), BigInt::from(1));
    assert_eq!(floor_pow_3_7(6), BigInt::from(2));
    for x in [0u64, 1, 2, 127, 128, 129, 1 << 40, 999_999_937] {
        let r = iroot(&BigInt::from(x), 7);
        assert!((&r).pow(7u32) <= BigInt::from(x) && BigInt::from(x) < (&r + 1u32).pow(7u32));
    }
}

#[test]
fn recursion_examples() {
    assert!(check_recursion_step(1, 4, 2).unwrap());
    assert!(check_recursion_step(3, 60, 5).unwrap());
    assert!(check_recursion_step(1, 1_000_000, 1_000_000).unwrap());
    assert!(matches!(check_recursion_step(1, 5, 2), Err(Error::Domain(_))));
    assert!(matches!(check_recursion_step(0, 4, 2), Err(Error::Domain(_))));
    assert!(matches!(check_recursion_step(1, 4, 1), Err(Error::Domain(_))));
}

#[test]
fn torsion_examples() {
    let z4 = FiniteGroup::cyclic(4);
    let (g, c) = setup(&z4, &z4);
    let t = verify_torsion_bound(&z4, &z4, &g, &goursat_data(&z4, &z4, &g, &diagonal(&z4, &g, &c)));
    assert_eq!((t.torsion_h.as_str(), t.torsion_pi_a.as_str(), t.index), ("4", "4", 4));
    assert!(t.pass && t.sandwich_lower && t.sandwich_upper);

    let s3 = symmetric(3).unwrap();
    let (g, c) = setup(&s3, &s3);
    let t = verify_torsion_bound(&s3, &s3, &g, &goursat_data(&s3, &s3, &g, &diagonal(&s3, &g, &c)));
    assert_eq!((t.torsion_h.as_str(), t.torsion_pi_a.as_str(), t.index), ("2", "2", 6));
    assert!(t.pass && t.sandwich_lower && t.sandwich_upper);

    let t = verify_torsion_bound(&s3, &s3, &g, &goursat_data(&s3, &s3, &g, &g.whole()));
    assert_eq!((t.torsion_h.as_str(), t.index), ("4", 1));
    assert!(t.pass);

    let (ok, _, _) = torsion_inequality(&BigInt::from(17), &BigInt::from(4), &BigInt::from(4), 1);
    assert!(!ok);
    let (ok, lo, hi) = torsion_inequality(&BigInt::from(1000), &BigInt::from(1), &BigInt::from(1), 8);
    assert!(ok && hi <= lo);
}
