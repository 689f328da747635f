use std::collections::BTreeMap;
use std::sync::Arc;

use genwait::caps::Caps;
use genwait::constructions::BuilderSpec;
use genwait::genstats::{self, bound_check, ceil_log, growth_degree};
use genwait::oracle;
use genwait::{ElementSet, ExactRational, Permutation, SubgroupLattice};

fn lattice(text: &str) -> SubgroupLattice {
    let caps = Caps::default();
    let g = Arc::new(text.parse::<BuilderSpec>().unwrap().build(&caps).unwrap());
    SubgroupLattice::enumerate(g, &caps).unwrap()
}

fn singleton(l: &SubgroupLattice, s: &str) -> ElementSet {
    let g = l.group();
    let x = g.index_of(&Permutation::parse_cycles(s, g.degree()).unwrap()).unwrap();
    ElementSet::from_indices(g.order(), [x])
}

fn empty(l: &SubgroupLattice) -> ElementSet {
    ElementSet::new(l.group().order())
}

fn q(n: i64, d: i64) -> ExactRational {
    ExactRational::new(n, d)
}

#[test]
fn generation_probabilities() {
    let c2 = lattice("cyclic(2)");
    assert_eq!(genstats::prob_generating(&c2, &empty(&c2), 1), q(1, 2));
    let s3 = lattice("sym(3)");
    assert_eq!(genstats::prob_generating(&s3, &empty(&s3), 2), q(1, 2));
    assert_eq!(oracle::generating_tuples(s3.group(), &empty(&s3), 2).unwrap(), 18);
    let v4 = lattice("elementary_abelian(2,2)");
    assert_eq!(genstats::prob_generating(&v4, &empty(&v4), 2), q(3, 8));
}

#[test]
fn expected_waiting_examples() {
    let c2 = lattice("cyclic(2)");
    assert_eq!(genstats::expected_waiting(&c2, &empty(&c2)).unwrap(), q(2, 1));
    let s3 = lattice("sym(3)");
    assert_eq!(genstats::expected_waiting(&s3, &empty(&s3)).unwrap(), q(29, 10));
    assert_eq!(genstats::expected_waiting(&s3, &singleton(&s3, "(1,2,3)")).unwrap(), q(2, 1));
    assert_eq!(genstats::expected_waiting(&s3, &singleton(&s3, "(1,2)")).unwrap(), q(3, 2));
    let v4 = lattice("elementary_abelian(2,2)");
    assert_eq!(genstats::expected_waiting(&v4, &empty(&v4)).unwrap(), q(10, 3));
    let trivial = lattice("cyclic(1)");
    assert!(genstats::expected_waiting(&trivial, &empty(&trivial)).is_err());
}

#[test]
fn waiting_time_is_the_tail_sum() {
    // e = Σ_{n≥0} (1 - P(n)); the tail after 200 terms is below 10^-20 here
    for text in ["sym(3)", "dihedral(4)", "quaternion8"] {
        let l = lattice(text);
        let e = genstats::expected_waiting(&l, &empty(&l)).unwrap();
        let partial: ExactRational = (0..200)
            .map(|n| ExactRational::one() - genstats::prob_generating(&l, &empty(&l), n))
            .sum();
        let diff = (&e - &partial).to_f64();
        assert!((0.0..1e-20).contains(&diff), "{text}: {diff}");
    }
}

#[test]
fn maximal_count_tables() {
    let s3 = lattice("sym(3)");
    assert_eq!(genstats::max_counts(&s3, &empty(&s3)), BTreeMap::from([(2, 1), (3, 3)]));
    assert_eq!(genstats::max_counts(&s3, &singleton(&s3, "(1,2,3)")), BTreeMap::from([(2, 1)]));
    let a5 = lattice("alt(5)");
    assert_eq!(
        genstats::max_counts(&a5, &empty(&a5)),
        BTreeMap::from([(5, 5), (6, 6), (10, 10)])
    );
}

#[test]
fn growth_degrees() {
    let s3 = growth_degree(&BTreeMap::from([(2, 1), (3, 3)]));
    assert_eq!(s3.to_decimal_string(), "1");
    assert_eq!(s3.witness, Some((3, 3)));
    assert_eq!(s3.ceil, 1);
    let v4 = growth_degree(&BTreeMap::from([(2, 3)]));
    assert!((v4.to_f64() - 1.584962500721156).abs() < 1e-12);
    assert!(v4.to_decimal_string().starts_with("1.58496250072115618145373894394781"));
    assert_eq!(v4.ceil, 2);
    let none = growth_degree(&BTreeMap::new());
    assert_eq!(none.to_decimal_string(), "0");
    assert_eq!(none.ceil, 0);
    assert_eq!(none.witness, None);
}

#[test]
fn exact_ceiling() {
    assert_eq!(ceil_log(3, 1), 0);
    assert_eq!(ceil_log(3, 3), 1);
    assert_eq!(ceil_log(3, 4), 2);
    assert_eq!(ceil_log(2, 1 << 40), 40);
    assert_eq!(ceil_log(2, (1 << 40) + 1), 41);
    assert_eq!(ceil_log(10, 1_000_000_000_000), 12);
}

#[test]
fn bound_check_examples() {
    let v = bound_check(&q(29, 10), 1);
    assert!(v.holds);
    assert_eq!((v.lower, v.upper), (-3, 4));
    let v = bound_check(&q(2, 1), 0);
    assert!(v.holds);
    assert!(bound_check(&ExactRational::zero(), 0).holds);
    assert!(!bound_check(&q(8, 1), 4).holds);
    assert!(!bound_check(&q(1, 1), 6).holds);
}

#[test]
fn analyze_sym3() {
    let s3 = lattice("sym(3)");
    let r = genstats::analyze(&s3, &empty(&s3), 3).unwrap();
    assert_eq!(r.e, q(29, 10));
    assert_eq!(r.p_table, [q(0, 1), q(0, 1), q(1, 2), q(7, 9)]);
    assert!(r.bounds_ok());
    assert!(r.gap.is_none());
    let r = genstats::analyze(&s3, &singleton(&s3, "(1,2,3)"), 0).unwrap();
    let gap = r.gap.unwrap();
    assert!(gap.holds);
    assert_eq!(gap.gap, q(9, 10));
}

#[test]
fn strong_scan_examples() {
    let s3 = lattice("sym(3)");
    let rows = genstats::strong_scan(&s3).unwrap();
    let gaps: Vec<ExactRational> = rows.iter().map(|r| r.gap.clone()).collect();
    assert_eq!(gaps, [q(0, 1), q(7, 5), q(9, 10)]);
    assert!(rows.iter().all(|r| r.consistent()));

    let q8 = lattice("quaternion8");
    let rows = genstats::strong_scan(&q8).unwrap();
    let central = rows
        .iter()
        .find(|r| r.class_size == 1 && r.representative != q8.group().identity())
        .unwrap();
    assert!(central.gap.is_zero());
    assert!(central.in_frattini);
}

#[test]
fn minimal_generator_counts() {
    assert_eq!(genstats::min_generators(&lattice("cyclic(6)")).unwrap(), 1);
    assert_eq!(genstats::min_generators(&lattice("sym(3)")).unwrap(), 2);
    assert_eq!(genstats::min_generators(&lattice("elementary_abelian(2,3)")).unwrap(), 3);
    let e3 = lattice("elementary_abelian(2,3)");
    assert!(genstats::prob_generating(&e3, &empty(&e3), 2).is_zero());
}

#[test]
fn series_matches_closed_form_on_larger_groups() {
    for text in ["sym(4)", "alt(5)", "semidihedral16", "inversion_power(3,3)"] {
        let l = lattice(text);
        {
            let y = empty(&l);
            assert_eq!(
                genstats::expected_waiting(&l, &y).unwrap(),
                genstats::expected_waiting_series(&l, &y).unwrap(),
                "{text}"
            );
        }
    }
}
