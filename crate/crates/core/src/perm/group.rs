use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::bitset::ElementSet;
use crate::caps::Caps;
use crate::error::{GroupError, Result};
use crate::par;

use super::Permutation;

const NO_PARENT: u32 = u32::MAX;

/// A fully enumerated permutation group.
///
/// Elements are stored in lexicographic order of their image arrays and every
/// element index used anywhere in the crate refers to this order.
#[derive(Clone)]
pub struct FiniteGroup {
    degree: usize,
    name: Option<String>,
    generators: Vec<Permutation>,
    gen_indices: Vec<usize>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    identity: usize,
    inverses: Vec<u32>,
    orders: Vec<u32>,
    /// `gen_mul[i * k + s]` is the index of `elements[i] * generators[s]`.
    gen_mul: Vec<u32>,
    /// Breadth-first spanning tree from the identity: `(parent, generator)`.
    tree: Vec<(u32, u32)>,
    bfs: Vec<u32>,
    table: Option<Vec<u16>>,
}

/// Outcome of closing a subgroup under an extra element.
pub enum Closure {
    Subgroup(ElementSet),
    /// The closure grew past the requested size bound.
    Exceeded,
}

impl FiniteGroup {
    /// Closes `generators` under composition, with the default caps.
    pub fn generate(generators: &[Permutation]) -> Result<Self> {
        Self::generate_with(generators, &Caps::default())
    }

    pub fn generate_with(generators: &[Permutation], caps: &Caps) -> Result<Self> {
        let first = generators
            .first()
            .ok_or_else(|| GroupError::InvalidArgument("empty generator list".into()))?;
        let degree = first.degree();
        for g in generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }

        let id = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for s in generators {
                let y = x.then(s);
                if !seen.contains(&y) {
                    if seen.len() >= caps.order {
                        return Err(GroupError::cap("group order", caps.order, seen.len() + 1));
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort_unstable();
        Ok(Self::from_sorted_elements(degree, generators.to_vec(), elements, caps))
    }

    fn from_sorted_elements(
        degree: usize,
        generators: Vec<Permutation>,
        elements: Vec<Permutation>,
        caps: &Caps,
    ) -> Self {
        let n = elements.len();
        let index: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let identity = index[&Permutation::identity(degree)] as usize;
        let gen_indices: Vec<usize> = generators.iter().map(|g| index[g] as usize).collect();
        let k = generators.len();

        let gen_mul: Vec<u32> = par::map_range(n, |i| {
            generators
                .iter()
                .map(|s| index[&elements[i].then(s)])
                .collect::<Vec<u32>>()
        })
        .into_iter()
        .flatten()
        .collect();

        let mut tree = vec![(NO_PARENT, 0u32); n];
        let mut visited = vec![false; n];
        let mut bfs = Vec::with_capacity(n);
        visited[identity] = true;
        bfs.push(identity as u32);
        let mut head = 0;
        while head < bfs.len() {
            let x = bfs[head] as usize;
            head += 1;
            for s in 0..k {
                let y = gen_mul[x * k + s] as usize;
                if !visited[y] {
                    visited[y] = true;
                    tree[y] = (x as u32, s as u32);
                    bfs.push(y as u32);
                }
            }
        }

        let inverses: Vec<u32> = elements.iter().map(|p| index[&p.inverse()]).collect();
        let orders: Vec<u32> = elements.iter().map(|p| p.order() as u32).collect();

        let table_cap = caps.table_order.min(u16::MAX as usize + 1);
        let table = (n <= table_cap).then(|| {
            let rows = par::map_range(n, |i| {
                let mut row = vec![0u16; n];
                row[identity] = i as u16;
                for &j in &bfs[1..] {
                    let (parent, s) = tree[j as usize];
                    let left = row[parent as usize] as usize;
                    row[j as usize] = gen_mul[left * k + s as usize] as u16;
                }
                row
            });
            rows.concat()
        });

        FiniteGroup {
            degree,
            name: None,
            generators,
            gen_indices,
            elements,
            index,
            identity,
            inverses,
            orders,
            gen_mul,
            tree,
            bfs,
            table,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn label(&self) -> String {
        self.name
            .clone()
            .unwrap_or_else(|| format!("group of order {}", self.order()))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.gen_indices
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    #[inline]
    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.index[&self.elements[a].then(&self.elements[b])] as usize,
        }
    }

    /// `a * generators[s]`, available for every group size.
    #[inline]
    pub fn mul_generator(&self, a: usize, s: usize) -> usize {
        self.gen_mul[a * self.generators.len() + s] as usize
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    #[inline]
    pub fn element_order(&self, a: usize) -> usize {
        self.orders[a] as usize
    }

    /// `g⁻¹ x g`.
    #[inline]
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inverse(g), x), g)
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inverse(ba), ab)
    }

    pub fn pow(&self, a: usize, e: usize) -> usize {
        let mut acc = self.identity;
        for _ in 0..e % self.element_order(a) {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// Spanning-tree edge `(parent, generator)` that reaches `a`; `None` for the identity.
    pub fn tree_edge(&self, a: usize) -> Option<(usize, usize)> {
        let (p, s) = self.tree[a];
        (p != NO_PARENT).then_some((p as usize, s as usize))
    }

    /// Elements in breadth-first order from the identity along generator edges.
    pub fn bfs_order(&self) -> &[u32] {
        &self.bfs
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet::full(self.order())
    }

    pub fn trivial_set(&self) -> ElementSet {
        ElementSet::from_indices(self.order(), [self.identity])
    }

    /// The subgroup generated by the given element indices.
    pub fn closure(&self, gens: &[usize]) -> ElementSet {
        let mut set = self.trivial_set();
        let mut queue = vec![self.identity];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &s in gens {
                let y = self.mul(x, s);
                if set.insert(y) {
                    queue.push(y);
                }
            }
        }
        set
    }

    /// Closes the subgroup `base` (generated by `base_gens`) with `extra`.
    ///
    /// `base_members` must list the elements of `base`. The result is built as
    /// a union of right cosets of `base`; once it holds more than
    /// `stop_above` elements the computation stops with [`Closure::Exceeded`].
    pub fn extend_closure(
        &self,
        base: &ElementSet,
        base_members: &[u32],
        base_gens: &[usize],
        extra: usize,
        stop_above: usize,
    ) -> Closure {
        let mut set = base.clone();
        let mut count = base_members.len();
        let mut reps = vec![self.identity];
        let mut head = 0;
        while head < reps.len() {
            let r = reps[head];
            head += 1;
            for &s in base_gens.iter().chain(std::iter::once(&extra)) {
                let y = self.mul(r, s);
                if set.contains(y) {
                    continue;
                }
                count += base_members.len();
                if count > stop_above {
                    return Closure::Exceeded;
                }
                for &h in base_members {
                    set.insert(self.mul(h as usize, y));
                }
                reps.push(y);
            }
        }
        Closure::Subgroup(set)
    }

    /// Like [`extend_closure`](Self::extend_closure) without a size bound.
    pub fn join_element(
        &self,
        base: &ElementSet,
        base_gens: &[usize],
        extra: usize,
    ) -> ElementSet {
        let members: Vec<u32> = base.iter().map(|x| x as u32).collect();
        match self.extend_closure(base, &members, base_gens, extra, usize::MAX) {
            Closure::Subgroup(s) => s,
            Closure::Exceeded => unreachable!("unbounded closure"),
        }
    }

    /// A small generating set of the subgroup `set`, chosen greedily by
    /// decreasing element order.
    pub fn generating_set(&self, set: &ElementSet) -> Vec<usize> {
        let mut candidates: Vec<usize> = set.iter().collect();
        candidates.sort_by_key(|&x| (std::cmp::Reverse(self.element_order(x)), x));
        let mut gens = Vec::new();
        let mut current = self.trivial_set();
        let target = set.len();
        for c in candidates {
            if current.len() == target {
                break;
            }
            if !current.contains(c) {
                current = self.join_element(&current, &gens, c);
                gens.push(c);
            }
        }
        gens
    }

    /// True when `set` is closed under multiplication (hence a subgroup).
    pub fn is_subgroup(&self, set: &ElementSet) -> bool {
        if set.universe() != self.order() || !set.contains(self.identity) {
            return false;
        }
        let gens = self.generating_set_unchecked(set);
        self.closure(&gens) == *set
    }

    fn generating_set_unchecked(&self, set: &ElementSet) -> Vec<usize> {
        // Greedy generation, stopping if the closure leaves `set`.
        let mut gens = Vec::new();
        let mut current = self.trivial_set();
        for c in set.iter() {
            if !current.contains(c) {
                current = self.join_element(&current, &gens, c);
                gens.push(c);
                if !current.is_subset(set) {
                    break;
                }
            }
        }
        gens
    }

    /// Normality of a subgroup, tested on generators of both sides.
    pub fn is_normal(&self, set: &ElementSet) -> bool {
        let sub_gens = self.generating_set(set);
        self.gen_indices
            .iter()
            .all(|&g| sub_gens.iter().all(|&h| set.contains(self.conjugate(h, g))))
    }

    /// Conjugate subgroup `Hᵍ`.
    pub fn conjugate_set(&self, set: &ElementSet, g: usize) -> ElementSet {
        ElementSet::from_indices(self.order(), set.iter().map(|h| self.conjugate(h, g)))
    }

    /// Conjugacy classes ordered by least member; each class is sorted.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut assigned = vec![false; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if assigned[x] {
                continue;
            }
            assigned[x] = true;
            let mut class = vec![x];
            let mut head = 0;
            while head < class.len() {
                let y = class[head];
                head += 1;
                for &g in &self.gen_indices {
                    let z = self.conjugate(y, g);
                    if !assigned[z] {
                        assigned[z] = true;
                        class.push(z);
                    }
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// The derived subgroup of the subgroup `set` (all commutators, closed).
    pub fn derived_subgroup(&self, set: &ElementSet) -> ElementSet {
        let gens = self.generating_set(set);
        // [H, H] is the normal closure in H of the generator commutators.
        let mut comms: Vec<usize> = Vec::new();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                comms.push(self.commutator(a, b));
            }
        }
        let mut current = self.closure(&comms);
        loop {
            let cur_gens = self.generating_set(&current);
            let mut grown = false;
            for &c in &cur_gens {
                for &g in &gens {
                    let y = self.conjugate(c, g);
                    if !current.contains(y) {
                        let cg = self.generating_set(&current);
                        current = self.join_element(&current, &cg, y);
                        grown = true;
                    }
                }
            }
            if !grown {
                return current;
            }
        }
    }

    /// Derived series terminates in the trivial group.
    pub fn is_soluble(&self) -> bool {
        let mut current = self.full_set();
        loop {
            if current.len() == 1 {
                return true;
            }
            let next = self.derived_subgroup(&current);
            if next.len() == current.len() {
                return false;
            }
            current = next;
        }
    }

    /// Nilpotency of a subgroup: every Sylow subgroup is normal, i.e. the
    /// elements of `p`-power order number exactly the `p`-part of the order.
    pub fn is_nilpotent_subgroup(&self, set: &ElementSet) -> bool {
        let order = set.len();
        for p in prime_factors(order) {
            let mut part = 1;
            let mut m = order;
            while m.is_multiple_of(p) {
                part *= p;
                m /= p;
            }
            let count = set
                .iter()
                .filter(|&x| is_power_of(self.element_order(x), p))
                .count();
            if count != part {
                return false;
            }
        }
        true
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.gen_indices;
        g.iter()
            .all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

pub(crate) fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn is_power_of(mut n: usize, p: usize) -> bool {
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// True for `p^k` with `p` prime and `k >= 1`.
pub(crate) fn is_prime_power(n: usize) -> bool {
    let f = prime_factors(n);
    f.len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn sym3_from_transposition_and_three_cycle() {
        let g = FiniteGroup::generate(&[perm("(1,2)", 3), perm("(1,2,3)", 3)]).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.elements().windows(2).all(|w| w[0] < w[1]));
        assert!(g.element(g.identity()).is_identity());
    }

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::generate(&[Permutation::identity(3)]).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn alt5_closure() {
        let g = FiniteGroup::generate(&[perm("(1,2,3,4,5)", 5), perm("(1,2,3)", 5)]).unwrap();
        assert_eq!(g.order(), 60);
        assert!(g.elements().iter().all(|p| p.is_even()));
    }

    #[test]
    fn cap_and_degree_errors() {
        let caps = Caps {
            order: 10,
            ..Caps::default()
        };
        let err = FiniteGroup::generate_with(&[perm("(1,2,3,4,5)", 5), perm("(1,2)", 5)], &caps)
            .unwrap_err();
        assert!(matches!(err, GroupError::CapExceeded { limit: 10, .. }));
        let err = FiniteGroup::generate(&[perm("(1,2)", 2), perm("(1,2)", 3)]).unwrap_err();
        assert!(matches!(err, GroupError::DegreeMismatch { .. }));
        assert!(FiniteGroup::generate(&[]).is_err());
    }

    #[test]
    fn table_matches_composition() {
        let g = FiniteGroup::generate(&[perm("(1,2,3,4)", 4), perm("(1,2)", 4)]).unwrap();
        let caps = Caps {
            table_order: 1,
            ..Caps::default()
        };
        let h = FiniteGroup::generate_with(g.generators(), &caps).unwrap();
        assert!(g.has_table() && !h.has_table());
        for a in 0..g.order() {
            for b in 0..g.order() {
                let direct = g.index_of(&g.element(a).then(g.element(b))).unwrap();
                assert_eq!(g.mul(a, b), direct);
                assert_eq!(h.mul(a, b), direct);
            }
        }
    }

    #[test]
    fn lagrange_and_classes() {
        let g = FiniteGroup::generate(&[perm("(1,2,3,4)", 4), perm("(1,2)", 4)]).unwrap();
        for x in 0..g.order() {
            assert_eq!(g.order() % g.element_order(x), 0);
        }
        assert_eq!(g.conjugacy_classes().len(), 5);
        assert!(g.is_soluble());
        assert!(!g.is_nilpotent_subgroup(&g.full_set()));
        let d = g.derived_subgroup(&g.full_set());
        assert_eq!(d.len(), 12);
    }

    #[test]
    fn extend_closure_builds_cosets() {
        let g = FiniteGroup::generate(&[perm("(1,2,3,4,5)", 5), perm("(1,2,3)", 5)]).unwrap();
        let c = g.index_of(&perm("(1,2,3)", 5)).unwrap();
        let sub = g.closure(&[c]);
        let x = g.index_of(&perm("(1,2)(4,5)", 5)).unwrap();
        let joined = g.join_element(&sub, &[c], x);
        assert_eq!(joined, g.closure(&[c, x]));
        assert_eq!(joined.len(), 6);
        let members: Vec<u32> = sub.iter().map(|v| v as u32).collect();
        let y = g.index_of(&perm("(1,2,3,4,5)", 5)).unwrap();
        assert!(matches!(
            g.extend_closure(&sub, &members, &[c], y, 30),
            Closure::Exceeded
        ));
    }
}
