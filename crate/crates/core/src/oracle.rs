//! Brute-force reference values that do not use the subgroup lattice.

use crate::bitset::ElementSet;
use crate::error::{GroupError, Result};
use crate::par;
use crate::perm::FiniteGroup;
use crate::rational::ExactRational;

/// Tuple enumeration limit for the oracle.
pub const TUPLE_LIMIT: u128 = 50_000_000;

/// Number of `n`-tuples `(x_1..x_n)` with `⟨Y, x_1..x_n⟩ = G`.
pub fn generating_tuples(group: &FiniteGroup, y: &ElementSet, n: usize) -> Result<u64> {
    let order = group.order();
    let total = (order as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > TUPLE_LIMIT {
        return Err(GroupError::cap(
            "oracle tuples",
            TUPLE_LIMIT as usize,
            total.min(usize::MAX as u128) as usize,
        ));
    }
    let base: Vec<usize> = y.iter().collect();
    let hits = par::map_range(total as usize, |mut code| {
        let mut gens = base.clone();
        for _ in 0..n {
            gens.push(code % order);
            code /= order;
        }
        group.closure(&gens).len() == order
    });
    Ok(hits.into_iter().filter(|&h| h).count() as u64)
}

/// `P_{G,Y}(n)` as a tuple count over `|G|^n`.
pub fn prob_generating_brute(group: &FiniteGroup, y: &ElementSet, n: usize) -> Result<ExactRational> {
    let count = generating_tuples(group, y, n)?;
    let total = (group.order() as i64).pow(n as u32);
    Ok(ExactRational::new(count as i64, total))
}

/// All subgroups by closing every subset of the cyclic subgroups.
///
/// Each subgroup is the join of the cyclic subgroups it contains, so joining
/// cyclic subgroups pairwise until nothing new appears reaches every one.
pub fn subgroups_brute(group: &FiniteGroup) -> Vec<ElementSet> {
    let n = group.order();
    let mut cyclic: Vec<ElementSet> = (0..n).map(|x| group.closure(&[x])).collect();
    cyclic.sort_by(|a, b| a.lex_cmp(b));
    cyclic.dedup();
    let mut all: Vec<ElementSet> = cyclic.clone();
    let mut seen: std::collections::HashSet<ElementSet> = all.iter().cloned().collect();
    let mut i = 0;
    while i < all.len() {
        let current = all[i].clone();
        for c in &cyclic {
            if c.is_subset(&current) {
                continue;
            }
            let gens: Vec<usize> = current.iter().chain(c.iter()).collect();
            let joined = group.closure(&gens);
            if seen.insert(joined.clone()) {
                all.push(joined);
            }
        }
        i += 1;
    }
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    #[test]
    fn sym3_pairs() {
        let g = FiniteGroup::generate(&[
            Permutation::parse_cycles("(1,2)", 3).unwrap(),
            Permutation::parse_cycles("(1,2,3)", 3).unwrap(),
        ])
        .unwrap();
        let empty = ElementSet::new(6);
        assert_eq!(generating_tuples(&g, &empty, 2).unwrap(), 18);
        assert_eq!(
            prob_generating_brute(&g, &empty, 2).unwrap(),
            ExactRational::new(1, 2)
        );
        assert_eq!(subgroups_brute(&g).len(), 6);
    }
}
