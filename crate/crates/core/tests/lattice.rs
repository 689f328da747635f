use std::collections::HashSet;
use std::sync::Arc;

use genwait::caps::Caps;
use genwait::constructions::BuilderSpec;
use genwait::oracle;
use genwait::{ElementSet, FiniteGroup, Permutation, SubgroupLattice};

fn lattice(text: &str) -> SubgroupLattice {
    let caps = Caps::default();
    let g = Arc::new(text.parse::<BuilderSpec>().unwrap().build(&caps).unwrap());
    SubgroupLattice::enumerate(g, &caps).unwrap()
}

fn element(l: &SubgroupLattice, s: &str) -> usize {
    let g = l.group();
    g.index_of(&Permutation::parse_cycles(s, g.degree()).unwrap()).unwrap()
}

/// Möbius values by the top-down recursion over an explicit subgroup list.
fn mobius_brute(group: &FiniteGroup, subs: &[ElementSet]) -> Vec<i64> {
    let mut order: Vec<usize> = (0..subs.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(subs[i].len()));
    let mut mu = vec![0i64; subs.len()];
    for &h in &order {
        if subs[h].len() == group.order() {
            mu[h] = 1;
            continue;
        }
        mu[h] = -subs
            .iter()
            .enumerate()
            .filter(|(k, s)| *k != h && subs[h].is_subset(s))
            .map(|(k, _)| mu[k])
            .sum::<i64>();
    }
    mu
}

#[test]
fn lattices_match_brute_force() {
    for text in [
        "cyclic(12)",
        "dihedral(6)",
        "dihedral(8)",
        "elementary_abelian(2,3)",
        "elementary_abelian(3,2)",
        "sym(4)",
        "alt(4)",
        "quaternion8",
        "semidihedral16",
        "direct_product(cyclic(2),sym(3))",
    ] {
        let l = lattice(text);
        let g = l.group();
        let brute = oracle::subgroups_brute(g);
        let found: HashSet<&ElementSet> = l.subgroups().iter().map(|s| &s.elements).collect();
        let expected: HashSet<&ElementSet> = brute.iter().collect();
        assert_eq!(found, expected, "{text}");
        let mu = mobius_brute(g, &brute);
        for (i, s) in brute.iter().enumerate() {
            assert_eq!(l.mu(l.find(s).unwrap()), mu[i], "{text}: μ of a subgroup of order {}", s.len());
        }
    }
}

#[test]
fn subgroup_counts() {
    assert_eq!(lattice("sym(3)").len(), 6);
    assert_eq!(lattice("elementary_abelian(2,2)").len(), 5);
    assert_eq!(lattice("sym(4)").len(), 30);
    let a5 = lattice("alt(5)");
    assert_eq!(a5.len(), 59);
    let mut census: Vec<(usize, usize)> = Vec::new();
    for m in a5.maximal_subgroups() {
        let o = a5.subgroup(m).order;
        match census.iter_mut().find(|(k, _)| *k == o) {
            Some((_, c)) => *c += 1,
            None => census.push((o, 1)),
        }
    }
    census.sort();
    assert_eq!(census, [(6, 10), (10, 6), (12, 5)]);
}

#[test]
fn mobius_examples() {
    let s3 = lattice("sym(3)");
    assert_eq!(s3.mu(s3.top()), 1);
    for m in s3.maximal_subgroups() {
        assert_eq!(s3.mu(m), -1);
    }
    assert_eq!(s3.mu(s3.bottom()), 3);
    let v4 = lattice("elementary_abelian(2,2)");
    assert_eq!(v4.mu(v4.bottom()), 2);
    let c4 = lattice("cyclic(4)");
    assert_eq!(c4.mu(c4.bottom()), 0);
    let a5 = lattice("alt(5)");
    assert_eq!(a5.mu(a5.bottom()), -60);
}

#[test]
fn maximal_census_data() {
    let s3 = lattice("sym(3)");
    let census = s3.maximal_census();
    let a3 = census.iter().find(|m| m.index == 2).unwrap();
    assert_eq!(s3.subgroup(a3.core).order, 3);
    assert_eq!(a3.socle_order, 2);
    assert!(a3.abelian_socle);
    let t = census.iter().find(|m| m.index == 3).unwrap();
    assert_eq!(t.core, s3.bottom());
    assert_eq!(t.socle_order, 3);

    let a4 = lattice("alt(4)");
    let threes: Vec<_> = a4.maximal_census().into_iter().filter(|m| m.index == 4).collect();
    assert_eq!(threes.len(), 4);
    assert!(threes.iter().all(|m| m.core == a4.bottom() && m.socle_order == 4));
}

#[test]
fn frattini_subgroups() {
    let c4 = lattice("cyclic(4)");
    assert_eq!(c4.subgroup(c4.frattini()).order, 2);
    let s3 = lattice("sym(3)");
    assert_eq!(s3.frattini(), s3.bottom());
    let q8 = lattice("quaternion8");
    let f = q8.frattini();
    assert_eq!(q8.subgroup(f).order, 2);
    let g = q8.group();
    let z = q8.subgroup(f).elements.iter().find(|&x| x != g.identity()).unwrap();
    assert!((0..8).all(|x| g.mul(x, z) == g.mul(z, x)));
}

#[test]
fn overgroups() {
    let s3 = lattice("sym(3)");
    let n = 6;
    let c = element(&s3, "(1,2,3)");
    let over: Vec<usize> = s3
        .overgroups_containing(&ElementSet::from_indices(n, [c]))
        .into_iter()
        .map(|i| s3.subgroup(i).order)
        .collect();
    let mut orders = over.clone();
    orders.sort();
    assert_eq!(orders, [3, 6]);
    assert_eq!(s3.overgroups_containing(&ElementSet::new(n)).len(), 6);
    let y = ElementSet::from_indices(n, [element(&s3, "(1,2)"), element(&s3, "(1,3)")]);
    assert_eq!(s3.overgroups_containing(&y), [s3.top()]);
}

#[test]
fn covers_and_normality() {
    let d4 = lattice("dihedral(4)");
    assert_eq!(d4.len(), 10);
    assert_eq!(d4.normal_subgroups().len(), 6);
    for i in 0..d4.len() {
        for &c in d4.covers(i) {
            assert!(d4.contains(c, i));
            let ratio = d4.subgroup(c).order / d4.subgroup(i).order;
            assert_eq!(ratio, 2);
        }
    }
    for i in 0..d4.len() {
        assert_eq!(d4.is_normal(i), d4.group().is_normal(&d4.subgroup(i).elements));
        assert_eq!(d4.core(i), {
            let g = d4.group();
            let mut acc = g.full_set();
            for x in 0..g.order() {
                acc.intersect_with(&g.conjugate_set(&d4.subgroup(i).elements, x));
            }
            d4.find(&acc).unwrap()
        });
    }
}

#[test]
fn alt5_squared_lattice() {
    let l = lattice("direct_power(alt(5),2)");
    assert_eq!(l.len(), 8381);
    assert_eq!(l.maximal_subgroups().len(), 162);
    assert_eq!(l.normal_subgroups().len(), 4);
}

#[test]
fn lattice_cap_is_an_error() {
    let caps = Caps {
        lattice_order: 10,
        ..Caps::default()
    };
    let g = Arc::new("sym(4)".parse::<BuilderSpec>().unwrap().build(&caps).unwrap());
    assert!(SubgroupLattice::enumerate(g, &caps).is_err());
    let caps = Caps {
        subgroups: 20,
        ..Caps::default()
    };
    let g = Arc::new("sym(4)".parse::<BuilderSpec>().unwrap().build(&caps).unwrap());
    assert!(SubgroupLattice::enumerate(g, &caps).is_err());
}
