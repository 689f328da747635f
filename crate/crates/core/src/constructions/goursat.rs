//! Maximal subgroups of `S^t` for a nonabelian simple group `S`.
//!
//! They come in two kinds: preimages `π_i^{-1}(H)` of a maximal `H ≤ S` under
//! a coordinate projection, and diagonals `{x : x_s = α(x_r)}` for a pair of
//! coordinates `r < s` and an automorphism `α` of `S`.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::caps::Caps;
use crate::error::{GroupError, Result};
use crate::lattice::SubgroupLattice;
use crate::par;
use crate::perm::product::direct_coordinates;
use crate::perm::{automorphisms, prime_factors, Closure, FiniteGroup, GroupHomomorphism};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum MaximalKind {
    /// `π_coordinate^{-1}(H)` with `H` the lattice entry `subgroup` of `S`.
    Product { coordinate: usize, subgroup: usize },
    /// `{x : x_s = α(x_r)}` with `α` the automorphism at `automorphism`.
    Diagonal { r: usize, s: usize, automorphism: usize },
}

/// The materialized maximal subgroups of `S^t`.
pub struct Materialized {
    pub group: Arc<FiniteGroup>,
    /// `coords[x]`: the factor coordinates of element `x`.
    pub coords: Vec<Vec<usize>>,
    pub maximals: Vec<(MaximalKind, ElementSet)>,
}

#[derive(Serialize)]
pub struct GoursatReport {
    pub s: String,
    pub t: usize,
    pub s_order: usize,
    pub automorphism_count: usize,
    /// Product-kind counts by index.
    pub kind1: BTreeMap<usize, u64>,
    pub kind2_count: u64,
    pub kind2_index: usize,
    /// All maximal subgroups by index.
    pub totals: BTreeMap<usize, u64>,
    pub total: u64,
    /// `Some` when `S^t` was built: every listed subgroup is distinct, proper
    /// and maximal.
    pub verified: Option<bool>,
    #[serde(skip)]
    pub materialized: Option<Materialized>,
}

fn binomial2(t: usize) -> u64 {
    (t * t.saturating_sub(1) / 2) as u64
}

struct SimpleData {
    lattice: SubgroupLattice,
    auts: Vec<GroupHomomorphism>,
}

fn simple_data(s: &Arc<FiniteGroup>, t: usize, caps: &Caps) -> Result<SimpleData> {
    if t < 2 {
        return Err(GroupError::InvalidArgument("direct power needs t ≥ 2".into()));
    }
    if s.is_abelian() {
        return Err(GroupError::NotSimple);
    }
    let lattice = SubgroupLattice::enumerate(s.clone(), caps)?;
    if lattice.normal_subgroups().len() != 2 {
        return Err(GroupError::NotSimple);
    }
    let auts = automorphisms(s, caps)?;
    Ok(SimpleData { lattice, auts })
}

fn materialize(s: &Arc<FiniteGroup>, t: usize, data: &SimpleData, caps: &Caps) -> Result<Option<Materialized>> {
    let order = (s.order() as u128).pow(t as u32);
    if order > caps.table_order as u128 {
        return Ok(None);
    }
    let group = Arc::new(super::direct_power(s, t, caps)?);
    let factors: Vec<&FiniteGroup> = std::iter::repeat_n(&**s, t).collect();
    let coords: Vec<Vec<usize>> = par::map_range(group.order(), |x| {
        direct_coordinates(&group, x, &factors).expect("element of the direct power")
    });
    let n = group.order();
    let mut maximals = Vec::new();
    for i in 0..t {
        for h in data.lattice.maximal_subgroups() {
            let members = &data.lattice.subgroup(h).elements;
            let set = ElementSet::from_indices(n, (0..n).filter(|&x| members.contains(coords[x][i])));
            maximals.push((MaximalKind::Product { coordinate: i, subgroup: h }, set));
        }
    }
    for r in 0..t {
        for s_ in r + 1..t {
            for (a, alpha) in data.auts.iter().enumerate() {
                let set = ElementSet::from_indices(
                    n,
                    (0..n).filter(|&x| coords[x][s_] == alpha.apply(coords[x][r])),
                );
                maximals.push((
                    MaximalKind::Diagonal {
                        r,
                        s: s_,
                        automorphism: a,
                    },
                    set,
                ));
            }
        }
    }
    Ok(Some(Materialized {
        group,
        coords,
        maximals,
    }))
}

/// Whether `m` is a maximal subgroup: `⟨M, x⟩ = G` for every `x ∉ M`.
/// Elements of a double coset `MxM` give the same join, so one `x` per
/// double coset is tried.
pub fn is_maximal(group: &FiniteGroup, m: &ElementSet) -> bool {
    let n = group.order();
    if m.len() == n || !group.is_subgroup(m) {
        return false;
    }
    let members: Vec<u32> = m.iter().map(|x| x as u32).collect();
    let gens = group.generating_set(m);
    let smallest = prime_factors(n).first().copied().unwrap_or(1);
    let largest_proper = n / smallest;
    let mut settled = m.clone();
    for x in 0..n {
        if settled.contains(x) {
            continue;
        }
        match group.extend_closure(m, &members, &gens, x, largest_proper) {
            Closure::Exceeded => {}
            Closure::Subgroup(k) if k.len() == n => {}
            Closure::Subgroup(_) => return false,
        }
        for &a in &members {
            let ax = group.mul(a as usize, x);
            for &b in &members {
                settled.insert(group.mul(ax, b as usize));
            }
        }
    }
    true
}

/// Classified maximal subgroups of `S^t`, materialized when `|S|^t` is at
/// most the table cap and counted otherwise.
pub fn goursat_maximals(s: &Arc<FiniteGroup>, t: usize, caps: &Caps) -> Result<GoursatReport> {
    let data = simple_data(s, t, caps)?;
    let census = crate::genstats::max_counts(&data.lattice, &ElementSet::new(s.order()));
    let kind1: BTreeMap<usize, u64> = census.iter().map(|(&i, &c)| (i, c * t as u64)).collect();
    let kind2_count = binomial2(t) * data.auts.len() as u64;
    let mut totals = kind1.clone();
    *totals.entry(s.order()).or_insert(0) += kind2_count;
    let total = totals.values().sum();

    let materialized = materialize(s, t, &data, caps)?;
    let verified = materialized.as_ref().map(|mat| {
        let distinct: HashSet<&ElementSet> = mat.maximals.iter().map(|(_, m)| m).collect();
        distinct.len() == mat.maximals.len()
            && par::map(&mat.maximals, |(_, m)| is_maximal(&mat.group, m))
                .into_iter()
                .all(|ok| ok)
    });
    Ok(GoursatReport {
        s: s.label(),
        t,
        s_order: s.order(),
        automorphism_count: data.auts.len(),
        kind1,
        kind2_count,
        kind2_index: s.order(),
        totals,
        total,
        verified,
        materialized,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DiagonalVerification {
    /// Materialized maximals containing `(σ,…,σ)`, by index.
    pub direct_counts: BTreeMap<usize, u64>,
    pub counts_match: bool,
    /// Every proper `⟨g, x⟩` lies in a counted maximal.
    pub complete: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiagonalCountReport {
    pub s: String,
    pub t: usize,
    pub sigma: String,
    /// Product-kind maximals containing `(σ,…,σ)`, by index.
    pub type1: BTreeMap<usize, u64>,
    /// `C(t,2)`.
    pub type2_pairs: u64,
    /// `|{α ∈ Aut(S) : σ^α = σ}|`.
    pub type2_stabilizing: u64,
    pub type2_index: usize,
    pub totals: BTreeMap<usize, u64>,
    pub verification: Option<DiagonalVerification>,
}

/// Counts the maximal subgroups of `S^t` containing `(σ,…,σ)`.
pub fn diagonal_count(s: &Arc<FiniteGroup>, t: usize, sigma: usize, caps: &Caps) -> Result<DiagonalCountReport> {
    if sigma >= s.order() {
        return Err(GroupError::InvalidArgument("σ is not an element of S".into()));
    }
    let data = simple_data(s, t, caps)?;
    let single = ElementSet::from_indices(s.order(), [sigma]);
    let type1: BTreeMap<usize, u64> = crate::genstats::max_counts(&data.lattice, &single)
        .into_iter()
        .map(|(i, c)| (i, c * t as u64))
        .collect();
    let type2_pairs = binomial2(t);
    let type2_stabilizing = data.auts.iter().filter(|a| a.apply(sigma) == sigma).count() as u64;
    let mut totals = type1.clone();
    let diag = type2_pairs * type2_stabilizing;
    if diag > 0 {
        *totals.entry(s.order()).or_insert(0) += diag;
    }

    let verification = materialize(s, t, &data, caps)?.map(|mat| {
        let group = &mat.group;
        let g = (0..group.order())
            .find(|&x| mat.coords[x].iter().all(|&c| c == sigma))
            .expect("diagonal element exists");
        let containing: Vec<&ElementSet> = mat
            .maximals
            .iter()
            .map(|(_, m)| m)
            .filter(|m| m.contains(g))
            .collect();
        let mut direct_counts = BTreeMap::new();
        for m in &containing {
            *direct_counts.entry(group.order() / m.len()).or_insert(0) += 1;
        }
        let n = group.order();
        let complete = par::all_range(n, |x| {
            let k = group.closure(&[g, x]);
            k.len() == n || containing.iter().any(|m| k.is_subset(m))
        });
        DiagonalVerification {
            counts_match: direct_counts == totals,
            direct_counts,
            complete,
        }
    });

    Ok(DiagonalCountReport {
        s: s.label(),
        t,
        sigma: s.element(sigma).to_cycle_string(),
        type1,
        type2_pairs,
        type2_stabilizing,
        type2_index: s.order(),
        totals,
        verification,
    })
}
