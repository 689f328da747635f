use std::sync::Arc;

use genwait::caps::Caps;
use genwait::constructions::{self, BuilderSpec};
use genwait::perm::{automorphisms, direct_product, epimorphisms_onto, quotient_group};
use genwait::{ElementSet, FiniteGroup, Permutation};

fn perm(s: &str, n: usize) -> Permutation {
    Permutation::parse_cycles(s, n).unwrap()
}

fn build(text: &str) -> Arc<FiniteGroup> {
    Arc::new(text.parse::<BuilderSpec>().unwrap().build(&Caps::default()).unwrap())
}

#[test]
fn cycle_notation_examples() {
    assert_eq!(perm("(1,2,3)", 3).images(), &[1, 2, 0]);
    assert!(perm("()", 4).is_identity());
    assert_eq!(perm("()", 4).degree(), 4);
    let x = perm("(1,2)(3,4,5)", 5);
    let mut power = x.clone();
    let mut k = 1;
    while !power.is_identity() {
        power = power.then(&x);
        k += 1;
    }
    assert_eq!(k, 6);
    assert_eq!(x.order(), 6);
}

#[test]
fn generated_group_orders() {
    let s3 = FiniteGroup::generate(&[perm("(1,2)", 3), perm("(1,2,3)", 3)]).unwrap();
    assert_eq!(s3.order(), 6);
    assert_eq!(FiniteGroup::generate(&[perm("()", 3)]).unwrap().order(), 1);
    let a5 = FiniteGroup::generate(&[perm("(1,2,3,4,5)", 5), perm("(1,2,3)", 5)]).unwrap();
    assert_eq!(a5.order(), 60);
    assert!(a5.elements().iter().all(Permutation::is_even));
}

#[test]
fn direct_products() {
    let caps = Caps::default();
    let c2 = constructions::cyclic(2).unwrap();
    let v4 = direct_product(&[&c2, &c2], &caps).unwrap();
    assert_eq!(v4.order(), 4);
    assert!((0..4).filter(|&x| x != v4.identity()).all(|x| v4.element_order(x) == 2));
    assert_eq!(build("direct_power(alt(5),2)").order(), 3600);
    assert_eq!(build("inversion_power(3,3)").order(), 54);
}

#[test]
fn quotients() {
    let caps = Caps::default();
    let s3 = build("sym(3)");
    let a3 = ElementSet::from_indices(6, (0..6).filter(|&x| s3.element(x).is_even()));
    let (q, map) = quotient_group(&s3, &a3, &caps).unwrap();
    assert_eq!(q.order(), 2);
    assert_eq!(map.kernel(), a3);

    let c4 = build("cyclic(4)");
    let c2 = ElementSet::from_indices(4, (0..4).filter(|&x| c4.element_order(x) <= 2));
    let (q, _) = quotient_group(&c4, &c2, &caps).unwrap();
    assert_eq!(q.order(), 2);

    let a5sq = build("direct_power(alt(5),2)");
    let second: ElementSet = ElementSet::from_indices(
        3600,
        (0..3600).filter(|&x| (0..5).all(|i| a5sq.element(x).image(i) == i)),
    );
    assert_eq!(second.len(), 60);
    let (q, map) = quotient_group(&a5sq, &second, &caps).unwrap();
    assert_eq!(q.order(), 60);
    assert!(map.image().len() == 60);
    let lattice = genwait::SubgroupLattice::enumerate(q.clone(), &caps).unwrap();
    assert_eq!(lattice.normal_subgroups().len(), 2);
}

#[test]
fn quotient_rejects_non_normal() {
    let s3 = build("sym(3)");
    let t = s3.index_of(&perm("(1,2)", 3)).unwrap();
    let h = s3.closure(&[t]);
    assert!(quotient_group(&s3, &h, &Caps::default()).is_err());
}

#[test]
fn automorphism_counts() {
    let caps = Caps::default();
    assert_eq!(automorphisms(&build("semidihedral16"), &caps).unwrap().len(), 16);
    assert_eq!(automorphisms(&build("elementary_abelian(2,2)"), &caps).unwrap().len(), 6);
    let s3 = build("sym(3)");
    let auts = automorphisms(&s3, &caps).unwrap();
    assert_eq!(auts.len(), 6);
    // every automorphism of S_3 is conjugation by some element
    for a in &auts {
        assert!((0..6).any(|g| (0..6).all(|x| a.apply(x) == s3.conjugate(x, g))));
    }
}

#[test]
fn epimorphism_census() {
    let caps = Caps::default();
    let c2 = epimorphisms_onto(2, &build("cyclic(2)"), &caps).unwrap();
    assert_eq!((c2.count, c2.kernels.len()), (3, 3));
    let v4 = epimorphisms_onto(2, &build("elementary_abelian(2,2)"), &caps).unwrap();
    assert_eq!((v4.count, v4.kernels.len()), (6, 1));
    let sd = epimorphisms_onto(2, &build("semidihedral16"), &caps).unwrap();
    assert_eq!(sd.automorphism_count, 16);
    assert_eq!(sd.count % 16, 0);
    assert_eq!(sd.kernels.len() as u64, sd.count / 16);
    // P_X(2) ≥ 3/8
    assert!(sd.count * 8 >= 3 * 256);
}

#[test]
fn right_action_products() {
    let g = build("sym(3)");
    let a = g.index_of(&perm("(1,2)", 3)).unwrap();
    let b = g.index_of(&perm("(2,3)", 3)).unwrap();
    let ab = g.mul(a, b);
    // 1 → 2 under a, then 2 → 3 under b
    assert_eq!(g.element(ab).image(0), 2);
    assert_eq!(g.conjugate(a, b), g.mul(g.mul(g.inverse(b), a), b));
}
