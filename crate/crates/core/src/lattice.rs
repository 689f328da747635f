//! Exhaustive subgroup lattices and the Möbius function on them.
//!
//! Subgroups are found by breadth-first cyclic extension: starting from the
//! trivial subgroup, each known `H` is joined with every cyclic subgroup of
//! prime-power order not already in `H`. Every subgroup is reached this way
//! because each step of a maximal chain `H < K` is `K = ⟨H, c⟩` for any
//! prime-power element `c ∈ K \ H`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::caps::Caps;
use crate::error::{GroupError, Result};
use crate::par;
use crate::perm::{is_prime_power, prime_factors, Closure, FiniteGroup};

/// A subgroup as a set of element indices of the parent group.
#[derive(Debug, Clone)]
pub struct SubgroupRef {
    pub elements: ElementSet,
    pub order: usize,
    /// Element indices generating the subgroup.
    pub generators: Vec<usize>,
}

/// Data about a maximal subgroup `M`: its core `Y_M` and the socle `X_M/Y_M`
/// of the primitive quotient `G/Y_M`.
#[derive(Debug, Clone, Serialize)]
pub struct MaximalInfo {
    /// Lattice index of `M`.
    pub subgroup: usize,
    pub index: usize,
    /// Lattice index of the normal core `Y_M`.
    pub core: usize,
    /// Lattice index of `X_M`.
    pub socle: usize,
    /// `|X_M / Y_M|`.
    pub socle_order: usize,
    pub abelian_socle: bool,
}

pub struct SubgroupLattice {
    group: Arc<FiniteGroup>,
    subgroups: Vec<SubgroupRef>,
    lookup: HashMap<ElementSet, usize>,
    /// `below[k]`: lattice indices of subgroups of `k` (including `k`).
    below: Vec<ElementSet>,
    /// `above[h]`: lattice indices of overgroups of `h` (including `h`).
    above: Vec<ElementSet>,
    covers: Vec<Vec<usize>>,
    maximal: Vec<bool>,
    normal: Vec<bool>,
    mobius: Vec<i64>,
}

struct Found {
    elements: ElementSet,
    generators: Vec<usize>,
}

impl SubgroupLattice {
    pub fn enumerate(group: Arc<FiniteGroup>, caps: &Caps) -> Result<Self> {
        let n = group.order();
        if n > caps.lattice_order {
            return Err(GroupError::cap("lattice group order", caps.lattice_order, n));
        }
        let g = &*group;

        // One generator per cyclic subgroup of prime-power order, and for every
        // element the representative of the cyclic subgroup it generates.
        let mut rep_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if rep_of[x] != usize::MAX || !is_prime_power(g.element_order(x)) {
                continue;
            }
            let o = g.element_order(x);
            let mut y = x;
            for k in 1..o {
                if num_integer::gcd(k, o) == 1 {
                    rep_of[y] = x;
                }
                y = g.mul(y, x);
            }
            reps.push(x);
        }
        let smallest_prime = prime_factors(n).first().copied().unwrap_or(1);
        let largest_proper = n / smallest_prime.max(1);

        let trivial = g.trivial_set();
        let mut lookup: HashMap<ElementSet, usize> = HashMap::new();
        let mut found: Vec<Found> = Vec::new();
        lookup.insert(trivial.clone(), 0);
        found.push(Found {
            elements: trivial,
            generators: Vec::new(),
        });
        let full = g.full_set();
        let mut full_seen = n == 1;
        let mut frontier: Vec<usize> = vec![0];

        while !frontier.is_empty() {
            let layer: Vec<(ElementSet, Vec<usize>)> = frontier
                .iter()
                .map(|&i| (found[i].elements.clone(), found[i].generators.clone()))
                .collect();
            let results: Vec<(Vec<Found>, bool)> = par::map(&layer, |(h, h_gens)| {
                extensions(g, h, h_gens, &reps, &rep_of, largest_proper)
            });
            let mut next = Vec::new();
            for (list, reaches_full) in results {
                if reaches_full && !full_seen {
                    full_seen = true;
                    lookup.insert(full.clone(), found.len());
                    found.push(Found {
                        elements: full.clone(),
                        generators: g.generator_indices().to_vec(),
                    });
                }
                for f in list {
                    if lookup.contains_key(&f.elements) {
                        continue;
                    }
                    if found.len() >= caps.subgroups {
                        return Err(GroupError::cap("subgroup count", caps.subgroups, found.len() + 1));
                    }
                    lookup.insert(f.elements.clone(), found.len());
                    next.push(found.len());
                    found.push(f);
                }
            }
            frontier = next;
        }

        let mut subgroups: Vec<SubgroupRef> = found
            .into_iter()
            .map(|f| SubgroupRef {
                order: f.elements.len(),
                elements: f.elements,
                generators: f.generators,
            })
            .collect();
        subgroups.sort_by(|a, b| {
            a.order
                .cmp(&b.order)
                .then_with(|| a.elements.lex_cmp(&b.elements))
        });
        Ok(Self::from_sorted(group, subgroups))
    }

    fn from_sorted(group: Arc<FiniteGroup>, subgroups: Vec<SubgroupRef>) -> Self {
        let m = subgroups.len();
        let lookup: HashMap<ElementSet, usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.elements.clone(), i))
            .collect();

        let below: Vec<ElementSet> = par::map_range(m, |k| {
            let big = &subgroups[k];
            ElementSet::from_indices(
                m,
                (0..=k).filter(|&h| {
                    let small = &subgroups[h];
                    big.order.is_multiple_of(small.order) && small.elements.is_subset(&big.elements)
                }),
            )
        });
        let mut above = vec![ElementSet::new(m); m];
        for (k, set) in below.iter().enumerate() {
            for h in set.iter() {
                above[h].insert(k);
            }
        }
        let covers: Vec<Vec<usize>> = par::map_range(m, |h| {
            above[h]
                .iter()
                .filter(|&k| k != h && above[h].intersection_len(&below[k]) == 2)
                .collect()
        });
        let top = m - 1;
        let maximal: Vec<bool> = (0..m).map(|h| covers[h].contains(&top)).collect();

        let mut mobius = vec![0i64; m];
        mobius[top] = 1;
        for h in (0..top).rev() {
            mobius[h] = -above[h]
                .iter()
                .filter(|&k| k != h)
                .map(|k| mobius[k])
                .sum::<i64>();
        }

        let g = &*group;
        let normal: Vec<bool> = par::map(&subgroups, |s| {
            g.generator_indices().iter().all(|&x| {
                s.generators
                    .iter()
                    .all(|&h| s.elements.contains(g.conjugate(h, x)))
            })
        });

        SubgroupLattice {
            group,
            subgroups,
            lookup,
            below,
            above,
            covers,
            maximal,
            normal,
            mobius,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[SubgroupRef] {
        &self.subgroups
    }

    pub fn subgroup(&self, i: usize) -> &SubgroupRef {
        &self.subgroups[i]
    }

    /// Index of the whole group.
    pub fn top(&self) -> usize {
        self.subgroups.len() - 1
    }

    /// Index of the trivial subgroup.
    pub fn bottom(&self) -> usize {
        0
    }

    pub fn find(&self, set: &ElementSet) -> Option<usize> {
        self.lookup.get(set).copied()
    }

    pub fn mobius(&self) -> &[i64] {
        &self.mobius
    }

    pub fn mu(&self, i: usize) -> i64 {
        self.mobius[i]
    }

    pub fn is_maximal(&self, i: usize) -> bool {
        self.maximal[i]
    }

    pub fn maximal_flags(&self) -> &[bool] {
        &self.maximal
    }

    pub fn is_normal(&self, i: usize) -> bool {
        self.normal[i]
    }

    pub fn maximal_subgroups(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.maximal[i]).collect()
    }

    pub fn normal_subgroups(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.normal[i]).collect()
    }

    /// Upper covers of `i`: subgroups containing it with nothing in between.
    pub fn covers(&self, i: usize) -> &[usize] {
        &self.covers[i]
    }

    /// Lattice indices of the subgroups contained in `k` (including `k`).
    pub fn below(&self, k: usize) -> &ElementSet {
        &self.below[k]
    }

    /// Lattice indices of the subgroups containing `h` (including `h`).
    pub fn above(&self, h: usize) -> &ElementSet {
        &self.above[h]
    }

    pub fn contains(&self, big: usize, small: usize) -> bool {
        self.below[big].contains(small)
    }

    /// Lattice index of `⟨Y⟩`.
    pub fn generated_by(&self, y: &ElementSet) -> usize {
        let gens: Vec<usize> = y.iter().collect();
        let closure = self.group.closure(&gens);
        self.find(&closure).expect("every subgroup is in the lattice")
    }

    /// All subgroups `H` with `⟨Y⟩ ≤ H`, in lattice order.
    pub fn overgroups_containing(&self, y: &ElementSet) -> Vec<usize> {
        let base = self.generated_by(y);
        self.above[base].iter().collect()
    }

    /// The Frattini subgroup: intersection of all maximal subgroups.
    pub fn frattini(&self) -> usize {
        let mut acc = self.group.full_set();
        for m in self.maximal_subgroups() {
            acc.intersect_with(&self.subgroups[m].elements);
        }
        self.find(&acc).expect("intersection of subgroups is a subgroup")
    }

    /// The normal core of subgroup `i`, via the action on its right cosets.
    pub fn core(&self, i: usize) -> usize {
        let g = &*self.group;
        let sub = &self.subgroups[i].elements;
        let n = g.order();
        let members: Vec<usize> = sub.iter().collect();
        let mut reps = Vec::new();
        let mut covered = ElementSet::new(n);
        for x in 0..n {
            if covered.contains(x) {
                continue;
            }
            reps.push(x);
            for &h in &members {
                covered.insert(g.mul(h, x));
            }
        }
        // x lies in the core iff r x r⁻¹ ∈ M for every coset representative r.
        let core = ElementSet::from_indices(
            n,
            members.iter().copied().filter(|&x| {
                reps.iter()
                    .all(|&r| sub.contains(g.mul(g.mul(r, x), g.inverse(r))))
            }),
        );
        self.find(&core).expect("core is a subgroup")
    }

    /// Subgroup generated by two lattice members.
    pub fn join(&self, a: usize, b: usize) -> usize {
        let mut gens = self.subgroups[a].generators.clone();
        gens.extend(&self.subgroups[b].generators);
        let set = self.group.closure(&gens);
        self.find(&set).expect("join is a subgroup")
    }

    /// Census of the maximal subgroups with cores and socles.
    pub fn maximal_census(&self) -> Vec<MaximalInfo> {
        let g = &*self.group;
        let normals = self.normal_subgroups();
        self.maximal_subgroups()
            .into_iter()
            .map(|m| {
                let core = self.core(m);
                let strictly_above: Vec<usize> = normals
                    .iter()
                    .copied()
                    .filter(|&n| n != core && self.contains(n, core))
                    .collect();
                let minimal: Vec<usize> = strictly_above
                    .iter()
                    .copied()
                    .filter(|&n| {
                        !strictly_above
                            .iter()
                            .any(|&k| k != n && self.contains(n, k))
                    })
                    .collect();
                let socle = minimal.iter().fold(core, |acc, &n| self.join(acc, n));
                let x_gens = &self.subgroups[socle].generators;
                let y_set = &self.subgroups[core].elements;
                let abelian = x_gens.iter().all(|&a| {
                    x_gens
                        .iter()
                        .all(|&b| y_set.contains(g.commutator(a, b)))
                });
                MaximalInfo {
                    subgroup: m,
                    index: g.order() / self.subgroups[m].order,
                    core,
                    socle,
                    socle_order: self.subgroups[socle].order / self.subgroups[core].order,
                    abelian_socle: abelian,
                }
            })
            .collect()
    }

    pub fn export(&self) -> LatticeExport {
        LatticeExport {
            schema: crate::report::SCHEMA,
            group: self.group.label(),
            order: self.group.order(),
            subgroup_count: self.len(),
            maximal_count: self.maximal.iter().filter(|&&m| m).count(),
            subgroups: self
                .subgroups
                .iter()
                .enumerate()
                .map(|(i, s)| SubgroupExport {
                    order: s.order,
                    generators: s.generators.clone(),
                    mobius: self.mobius[i],
                    maximal: self.maximal[i],
                    normal: self.normal[i],
                    elements: s.elements.to_vec(),
                })
                .collect(),
        }
    }
}

/// Closures `⟨H, c⟩` over the prime-power cyclic representatives `c ∉ H`.
///
/// Representatives whose closure is already determined (they lie in `Hc` or
/// `cH` for a tried `c`) are skipped. The flag reports whether some closure
/// is the whole group; those are not materialized.
fn extensions(
    g: &FiniteGroup,
    h: &ElementSet,
    h_gens: &[usize],
    reps: &[usize],
    rep_of: &[usize],
    largest_proper: usize,
) -> (Vec<Found>, bool) {
    let n = g.order();
    let members: Vec<u32> = h.iter().map(|x| x as u32).collect();
    let mut settled = ElementSet::new(n);
    let mut out: Vec<Found> = Vec::new();
    let mut reaches_full = false;
    for &c in reps {
        if h.contains(c) || settled.contains(c) {
            continue;
        }
        for &m in &members {
            let hc = g.mul(m as usize, c);
            let ch = g.mul(c, m as usize);
            for y in [hc, ch] {
                let r = rep_of[y];
                if r != usize::MAX {
                    settled.insert(r);
                }
            }
        }
        match g.extend_closure(h, &members, h_gens, c, largest_proper) {
            Closure::Exceeded => reaches_full = true,
            Closure::Subgroup(k) => {
                if k.len() == n {
                    reaches_full = true;
                } else if !out.iter().any(|f| f.elements == k) {
                    let mut gens = h_gens.to_vec();
                    gens.push(c);
                    out.push(Found {
                        elements: k,
                        generators: gens,
                    });
                }
            }
        }
    }
    (out, reaches_full)
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeExport {
    pub schema: &'static str,
    pub group: String,
    pub order: usize,
    pub subgroup_count: usize,
    pub maximal_count: usize,
    pub subgroups: Vec<SubgroupExport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SubgroupExport {
    pub order: usize,
    pub generators: Vec<usize>,
    pub mobius: i64,
    pub maximal: bool,
    pub normal: bool,
    pub elements: Vec<usize>,
}
