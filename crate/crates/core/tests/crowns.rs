use std::sync::Arc;

use genwait::caps::Caps;
use genwait::constructions::{self, BuilderSpec};
use genwait::crowns::{self, Classification};
use genwait::{genstats, ElementSet, SubgroupLattice};

fn lattice_of(g: genwait::FiniteGroup) -> SubgroupLattice {
    SubgroupLattice::enumerate(Arc::new(g), &Caps::default()).unwrap()
}

fn lattice(text: &str) -> SubgroupLattice {
    lattice_of(text.parse::<BuilderSpec>().unwrap().build(&Caps::default()).unwrap())
}

fn classify(l: &SubgroupLattice) -> Classification {
    crowns::chief_classify(l).unwrap()
}

fn summary(c: &Classification) -> Vec<(usize, u64, usize, u32, u32, usize)> {
    let mut out: Vec<_> = c
        .classes
        .iter()
        .map(|k| (k.size(), k.invariants.q, k.invariants.r, k.invariants.theta, k.delta(), k.maximals.len()))
        .collect();
    out.sort();
    out
}

#[test]
fn sym3_classes() {
    let l = lattice("sym(3)");
    let c = classify(&l);
    assert!(c.residue.is_empty());
    // (|V|, q, r, θ, δ, maximals)
    assert_eq!(summary(&c), [(2, 2, 1, 0, 1, 1), (3, 3, 1, 1, 1, 3)]);
    let c3 = c.classes.iter().find(|k| k.size() == 3).unwrap();
    assert_eq!(c3.crown.centralizer.len(), 3);
    assert_eq!(c3.crown.crown_kernel.len(), 1);
    assert!(c.classes.iter().all(|k| k.crown.formula_holds()));
}

#[test]
fn alt4_and_klein_classes() {
    let a4 = classify(&lattice("alt(4)"));
    assert_eq!(summary(&a4), [(3, 3, 1, 0, 1, 1), (4, 4, 1, 1, 1, 4)]);
    let v4 = classify(&lattice("elementary_abelian(2,2)"));
    assert_eq!(summary(&v4), [(2, 2, 1, 0, 2, 3)]);
}

#[test]
fn inversion_power_has_delta_three() {
    let c = classify(&lattice("inversion_power(3,3)"));
    let inv = c.classes.iter().find(|k| k.size() == 3).unwrap();
    assert_eq!((inv.invariants.q, inv.invariants.r, inv.invariants.theta), (3, 1, 1));
    assert_eq!(inv.delta(), 3);
    assert_eq!(inv.maximals.len(), 39);
    assert_eq!(inv.crown.formula_expected, 39);
    assert!(!inv.delta_at_most_r());
}

#[test]
fn alt5_goes_to_residue() {
    let c = classify(&lattice("alt(5)"));
    assert!(c.classes.is_empty());
    assert_eq!(c.residue.len(), 21);
    assert_eq!(c.maximal_total(), 21);
}

#[test]
fn crown_kernel_two_routes() {
    for text in ["sym(3)", "alt(4)", "sym(4)", "dihedral(6)", "inversion_power(3,3)", "direct_product(cyclic(3),sym(3))"] {
        let l = lattice(text);
        for class in &classify(&l).classes {
            let via_normals = crowns::crown_kernel_via_normals(&l, class).unwrap();
            assert_eq!(l.subgroup(via_normals).elements, class.crown.crown_kernel, "{text}");
        }
    }
}

#[test]
fn delta_from_chief_series() {
    for text in ["sym(3)", "sym(4)", "elementary_abelian(2,3)", "dihedral(8)", "inversion_power(3,3)", "direct_product(cyclic(2),sym(3))"] {
        let l = lattice(text);
        for class in &classify(&l).classes {
            assert_eq!(crowns::chief_series_delta(&l, class), class.delta() as usize, "{text} |V|={}", class.size());
        }
    }
}

#[test]
fn isomorphism_tests_agree() {
    for text in ["sym(4)", "direct_product(cyclic(3),sym(3))", "dihedral(12)", "elementary_abelian(3,2)"] {
        let l = lattice(text);
        let c = classify(&l);
        let series = crowns::chief_series(&l);
        let mut modules: Vec<_> = c.classes.iter().map(|k| k.module.action.clone()).collect();
        for w in series.windows(2) {
            if let Ok(m) = crowns::extract_module(&l, w[0], w[1]) {
                modules.push(m.action);
            }
        }
        for a in &modules {
            for b in &modules {
                assert_eq!(crowns::modules_isomorphic(a, b), crowns::isomorphic_by_search(a, b), "{text}");
            }
        }
        // distinct classes are pairwise non-isomorphic
        for (i, a) in c.classes.iter().enumerate() {
            for b in &c.classes[i + 1..] {
                assert!(!crowns::modules_isomorphic(&a.module.action, &b.module.action));
            }
        }
    }
}

#[test]
fn mu_split_examples() {
    let l = lattice("sym(3)");
    let c = classify(&l);
    let s = crowns::mu_split(&l, &c, 3).unwrap();
    assert_eq!((s.mu_plus, s.mu_circ), (0, 3));
    let l = lattice("inversion_power(3,3)");
    let c = classify(&l);
    let s = crowns::mu_split(&l, &c, 3).unwrap();
    assert_eq!((s.mu_plus, s.mu_circ), (39, 0));
    let l = lattice("elementary_abelian(2,2)");
    let c = classify(&l);
    let s = crowns::mu_split(&l, &c, 2).unwrap();
    assert_eq!((s.mu_plus, s.mu_circ), (3, 0));
    assert!(crowns::mu_split(&lattice("alt(5)"), &classify(&lattice("alt(5)")), 5).is_err());
}

#[test]
fn containment_bounds_on_one_coordinate_translation() {
    let caps = Caps::default();
    let sp = constructions::inversion_power(3, 3, &caps).unwrap();
    let g = sp.translation_index(&[vec![1], vec![0], vec![0]]);
    let l = lattice_of(sp.group);
    let c = classify(&l);
    let report = crowns::soluble_checks(&l, &c, g).unwrap();
    let check = report.classes.iter().find(|k| k.n == 3).unwrap();
    assert_eq!(check.lower_bound, 12);
    assert!(check.containing >= 12);
    assert!(check.lower_bound_holds && check.ratio_bound);
    assert!(39 <= check.containing * 9);
    assert!(report.all_hold());
}

#[test]
fn plus_count_bound_on_klein_group() {
    let l = lattice("elementary_abelian(2,2)");
    let c = classify(&l);
    for g in 1..4 {
        let report = crowns::soluble_checks(&l, &c, g).unwrap();
        let idx = report.indices.iter().find(|i| i.n == 2).unwrap();
        assert_eq!(idx.m_with_g, 1);
        assert!(idx.plus_bound);
        assert!(report.all_hold());
    }
}

#[test]
fn meta_bound_on_sym3() {
    let l = lattice("sym(3)");
    assert!(crowns::derived_subgroup_nilpotent(&l));
    let max = genstats::strong_scan(&l).unwrap().into_iter().map(|r| r.gap).max().unwrap();
    assert_eq!(max, genwait::ExactRational::new(7, 5));
}

#[test]
fn module_invariants_of_field_actions() {
    let l = lattice("alt(4)");
    let c = classify(&l);
    let v4 = c.classes.iter().find(|k| k.size() == 4).unwrap();
    let inv = crowns::module_invariants(&v4.module.action).unwrap();
    assert!(inv.irreducible);
    assert_eq!((inv.q, inv.r, inv.theta), (4, 1, 1));
    let sections = crowns::extract_module(&l, l.bottom(), l.find(&v4.crown.centralizer).unwrap()).unwrap();
    assert_eq!(sections.size(), 4);
    let empty = ElementSet::new(12);
    assert_eq!(genstats::max_counts(&l, &empty).get(&4), Some(&4));
}
