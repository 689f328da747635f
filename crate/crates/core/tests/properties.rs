use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use genwait::caps::Caps;
use genwait::constructions::BuilderSpec;
use genwait::{genstats, oracle, ElementSet, Permutation, SubgroupLattice};

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn lattices() -> &'static Vec<SubgroupLattice> {
    static CELL: OnceLock<Vec<SubgroupLattice>> = OnceLock::new();
    CELL.get_or_init(|| {
        let caps = Caps::default();
        ["sym(3)", "dihedral(4)", "quaternion8", "alt(4)", "elementary_abelian(2,3)"]
            .iter()
            .map(|t| {
                let g = Arc::new(t.parse::<BuilderSpec>().unwrap().build(&caps).unwrap());
                SubgroupLattice::enumerate(g, &caps).unwrap()
            })
            .collect()
    })
}

proptest! {
    #[test]
    fn cycle_strings_round_trip(p in permutation(7)) {
        let back = Permutation::parse_cycles(&p.to_cycle_string(), 7).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn products_are_associative(a in permutation(6), b in permutation(6), c in permutation(6)) {
        prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
        prop_assert!(a.then(&a.inverse()).is_identity());
    }

    #[test]
    fn mobius_matches_brute_force(which in 0usize..5, picks in proptest::collection::vec(any::<u16>(), 0..3), n in 0usize..3) {
        let l = &lattices()[which];
        let g = l.group();
        let y = ElementSet::from_indices(g.order(), picks.iter().map(|&x| x as usize % g.order()));
        prop_assert_eq!(genstats::prob_generating(l, &y, n), oracle::prob_generating_brute(g, &y, n).unwrap());
    }

    #[test]
    fn larger_subsets_wait_less(which in 0usize..5, a in any::<u16>(), b in any::<u16>()) {
        let l = &lattices()[which];
        let n = l.group().order();
        let small = ElementSet::from_indices(n, [a as usize % n]);
        let big = ElementSet::from_indices(n, [a as usize % n, b as usize % n]);
        let e_small = genstats::expected_waiting(l, &small).unwrap();
        let e_big = genstats::expected_waiting(l, &big).unwrap();
        prop_assert!(e_big <= e_small);
        prop_assert!(genstats::bound_check(&e_small, genstats::growth_degree(&genstats::max_counts(l, &small)).ceil).holds);
    }
}
