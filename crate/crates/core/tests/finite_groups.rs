use subgrad::finite::generation::{d_min, d_min_of, d_normal_min, subgroup_lattice};
use subgrad::finite::hom::{direct_product, fiber_product, quotient, Homomorphism, ProductCoords};
use subgrad::finite::iso::are_isomorphic;
use subgrad::finite::library::{groups_up_to, KNOWN_COUNTS};
use subgrad::finite::perm::{dihedral, symmetric};
use subgrad::finite::FiniteGroup;

fn three_cycle(s3: &FiniteGroup) -> usize {
    (0..6).find(|&x| s3.element_order(x) == 3).unwrap()
}

fn transposition(s3: &FiniteGroup) -> usize {
    (0..6).find(|&x| s3.element_order(x) == 2).unwrap()
}

#[test]
fn closures() {
    let s3 = symmetric(3).unwrap();
    assert_eq!(s3.closure(&[]).order(), 1);
    assert_eq!(s3.closure(&[three_cycle(&s3)]).order(), 3);
    let z6 = FiniteGroup::cyclic(6);
    assert_eq!(z6.closure(&[1]).order(), 6);
}

#[test]
fn normal_closures() {
    let s3 = symmetric(3).unwrap();
    let t = transposition(&s3);
    assert_eq!(s3.normal_closure(&s3.whole(), &[t]).order(), 6);
    assert_eq!(s3.normal_closure(&s3.trivial_subgroup(), &[t]).order(), 2);
    let z4 = FiniteGroup::cyclic(4);
    let g = direct_product(&z4, &z4, 100).unwrap();
    let c = ProductCoords::new(&z4, &z4);
    let n = g.normal_closure(&g.whole(), &[c.pair(2, 0)]);
    assert_eq!(n.order(), 2);
    assert!(n.contains(c.pair(2, 0)) && n.contains(c.pair(0, 0)));
}

#[test]
fn generator_counts() {
    assert_eq!(d_min(&FiniteGroup::cyclic(6), 512).unwrap(), 1);
    assert_eq!(d_min(&symmetric(3).unwrap(), 512).unwrap(), 2);
    let z2 = FiniteGroup::cyclic(2);
    let v = direct_product(&z2, &z2, 100).unwrap();
    let e8 = direct_product(&v, &z2, 100).unwrap();
    assert_eq!(d_min(&e8, 512).unwrap(), 3);
    assert_eq!(d_min(&FiniteGroup::trivial(), 512).unwrap(), 0);

    let s3 = symmetric(3).unwrap();
    let a3 = s3.closure(&[three_cycle(&s3)]);
    assert_eq!(d_normal_min(&s3, &a3, 512).unwrap(), 1);
    assert_eq!(d_normal_min(&s3, &s3.trivial_subgroup(), 512).unwrap(), 0);
    assert_eq!(d_normal_min(&v, &v.whole(), 512).unwrap(), 2);
}

#[test]
fn commutators_and_sylow() {
    let s3 = symmetric(3).unwrap();
    let w = s3.whole();
    assert_eq!(s3.commutator_subgroup(&w, &w).order(), 3);
    let d8 = dihedral(4).unwrap();
    assert!(d8.commutator_subgroup(&d8.whole(), &d8.center()).is_trivial());
    let z6 = FiniteGroup::cyclic(6);
    assert!(z6.commutator_subgroup(&z6.whole(), &z6.whole()).is_trivial());
    assert_eq!(s3.sylow_subgroup(3).order(), 3);
    assert_eq!(s3.sylow_subgroup(2).order(), 2);
    assert!(FiniteGroup::cyclic(5).sylow_subgroup(2).is_trivial());
}

#[test]
fn products() {
    let z2 = FiniteGroup::cyclic(2);
    let z3 = FiniteGroup::cyclic(3);
    let p = direct_product(&z2, &z3, 100).unwrap();
    assert!(p.is_cyclic() && are_isomorphic(&p, &FiniteGroup::cyclic(6)));
    let s3 = symmetric(3).unwrap();
    assert!(are_isomorphic(&direct_product(&FiniteGroup::trivial(), &s3, 100).unwrap(), &s3));
    assert_eq!(direct_product(&s3, &s3, 100).unwrap().order(), 36);
    assert!(direct_product(&s3, &s3, 30).is_err());
}

#[test]
fn fiber_products() {
    let z4 = FiniteGroup::cyclic(4);
    let z2 = FiniteGroup::cyclic(2);
    let q = Homomorphism::new(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
    let fp = fiber_product(&z4, &z2, &q, 100).unwrap();
    assert_eq!((fp.subgroup.order(), fp.product.order(), fp.index), (8, 16, 2));
    let (fg, kg, hom) = fp.central_surjection.as_ref().unwrap();
    assert!(hom.is_surjective());
    assert!(d_min(fg, 512).unwrap() >= d_min(kg, 512).unwrap());
    assert_eq!(d_min_of(&fp.product, &fp.subgroup, 512).unwrap(), 2);

    let s3 = symmetric(3).unwrap();
    let id = Homomorphism::identity(&s3);
    let fp = fiber_product(&s3, &s3, &id, 100).unwrap();
    assert_eq!(fp.subgroup, fp.diagonal);
    assert_eq!(fp.index, 6);
    let to_trivial = Homomorphism::new(&s3, &FiniteGroup::trivial(), vec![0; 6]).unwrap();
    let fp = fiber_product(&s3, &FiniteGroup::trivial(), &to_trivial, 100).unwrap();
    assert_eq!((fp.index, fp.subgroup.order()), (1, 36));
    let not_onto = Homomorphism::new(&s3, &z2, vec![0; 6]).unwrap();
    assert!(fiber_product(&s3, &z2, &not_onto, 100).is_err());
}

#[test]
fn quotients() {
    let s3 = symmetric(3).unwrap();
    let a3 = s3.closure(&[three_cycle(&s3)]);
    let (q, hom) = quotient(&s3, &a3).unwrap();
    assert_eq!(q.order(), 2);
    for x in 0..6 {
        for y in 0..6 {
            assert_eq!(q.mul(hom.apply(x), hom.apply(y)), hom.apply(s3.mul(x, y)));
        }
    }
    let (q, _) = quotient(&s3, &s3.trivial_subgroup()).unwrap();
    assert!(are_isomorphic(&q, &s3));
    let z4 = FiniteGroup::cyclic(4);
    let (q, _) = quotient(&z4, &z4.closure(&[2])).unwrap();
    assert!(are_isomorphic(&q, &FiniteGroup::cyclic(2)));
    assert!(quotient(&s3, &s3.closure(&[transposition(&s3)])).is_err());
}

#[test]
fn library_counts() {
    for n in 1..=32 {
        assert_eq!(groups_up_to(n).filter(|g| g.order == n).count(), KNOWN_COUNTS[n], "order {n}");
    }
}

/// `d(H) ≤ d(G)·[G:H]` and `d_G(N) ≤ d(N)` over every subgroup of every
/// library group of order at most 32.
#[test]
fn subgroup_rank_bound_library() {
    for sg in groups_up_to(32) {
        let g = &sg.group;
        let lattice = subgroup_lattice(g, 512).unwrap();
        let d_g = lattice.iter().find(|e| e.subgroup.order() == g.order()).unwrap().rank;
        for e in &lattice {
            assert!(e.rank <= d_g * (g.order() / e.subgroup.order()), "{}", sg.name);
            if g.is_normal(&e.subgroup) {
                let closure = g.normal_closure(&g.whole(), e.subgroup.generators());
                assert!(g.is_normal(&closure));
                assert!(d_normal_min(g, &e.subgroup, 512).unwrap() <= e.rank, "{}", sg.name);
            }
        }
    }
}

/// Lattice ranks agree with an independent exhaustive subset search.
#[test]
fn lattice_ranks_match_subset_search() {
    for sg in groups_up_to(12) {
        let g = &sg.group;
        for e in subgroup_lattice(g, 512).unwrap() {
            let elems = e.subgroup.elements().to_vec();
            let d = (0..=elems.len())
                .find(|&k| subsets(&elems, k).iter().any(|s| g.closure(s) == e.subgroup))
                .unwrap();
            assert_eq!(e.rank, d, "{}", sg.name);
        }
    }
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in subsets(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}
