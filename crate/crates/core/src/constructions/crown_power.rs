//! Semidirect products `V_1 × … × V_ρ ⋊ H` and counts of their maximal
//! subgroups of index `|V|`, computed from the module structure.

use std::sync::Arc;

use crate::bitset::ElementSet;
use crate::caps::Caps;
use crate::error::{GroupError, Result};
use crate::genstats;
use crate::lattice::SubgroupLattice;
use crate::linalg::{decode, FpMatrix, Representation, Subspace};
use crate::perm::product::direct_element;
use crate::perm::{epimorphisms_onto, FiniteGroup, SemidirectProduct};
use crate::rational::ExactRational;

/// Assignment limit for the brute-force cocycle count.
const COCYCLE_LIMIT: u128 = 1 << 22;

pub struct CrownPower {
    pub product: SemidirectProduct,
    /// Translation by `(v_1,…,v_ρ)` with every `v_i` nonzero.
    pub strong_element: usize,
    pub strong_vectors: Vec<Vec<u32>>,
    /// Kernels of `H` on each `V_i`.
    pub kernels: Vec<ElementSet>,
    /// `|V|`.
    pub index: usize,
    /// `m_{|V|}(G)` from the module scan.
    pub m_index: u64,
    /// `m_{|V|}(G, g)` from the module scan.
    pub m_index_with_g: u64,
    /// `(e(G), e(G,g))` when the lattice of `G` is within caps.
    pub waiting: Option<(ExactRational, ExactRational)>,
}

/// `H = C_2 × C_2` with `rho ≤ 3` of its nontrivial characters into `F_3^*`.
pub fn klein_crown_modules(rho: usize) -> Result<(Arc<FiniteGroup>, Vec<Representation>)> {
    if !(1..=3).contains(&rho) {
        return Err(GroupError::InvalidArgument(
            "the Klein group has 3 nontrivial sign characters".into(),
        ));
    }
    let h = Arc::new(super::elementary_abelian(2, 2)?.with_name("elementary_abelian(2,2)"));
    let sign = |s: i64| FpMatrix::from_rows(3, &[vec![s]]).expect("1×1 over F_3");
    let characters = [(-1, 1), (1, -1), (-1, -1)];
    let modules = characters[..rho]
        .iter()
        .map(|&(a, b)| Representation::new(3, 1, vec![sign(a), sign(b)]))
        .collect::<Result<_>>()?;
    Ok((h, modules))
}

/// `H ≤ X^ρ` generated by `ρ` generating pairs of the semidihedral group `X`
/// with pairwise distinct kernels, acting on `V_i = F_3^2` through the
/// `i`-th projection.
pub fn sd16_crown_modules(rho: usize, caps: &Caps) -> Result<(Arc<FiniteGroup>, Vec<Representation>)> {
    let x = Arc::new(super::semidihedral16()?);
    let census = epimorphisms_onto(2, &x, caps)?;
    if rho == 0 || rho > census.kernels.len() {
        return Err(GroupError::InvalidArgument(format!(
            "rho must lie in 1..={}",
            census.kernels.len()
        )));
    }
    let pairs = &census.kernels[..rho];
    let factors: Vec<&FiniteGroup> = std::iter::repeat_n(&*x, rho).collect();
    let a: Vec<usize> = pairs.iter().map(|p| p[0]).collect();
    let b: Vec<usize> = pairs.iter().map(|p| p[1]).collect();
    let h = FiniteGroup::generate_with(&[direct_element(&factors, &a), direct_element(&factors, &b)], caps)?
        .with_name(format!("subdirect_sd16({rho})"));
    let modules = pairs
        .iter()
        .map(|p| {
            let mats = p
                .iter()
                .map(|&e| super::permutation_matrix(x.element(e), 3, 2))
                .collect();
            Representation::new(3, 2, mats)
        })
        .collect::<Result<_>>()?;
    Ok((Arc::new(h), modules))
}

/// Number of cocycles `δ: H → V`, `δ(xy) = δ(x)·y + δ(y)`, which equals the
/// number of complements of `V` in `V ⋊ H`.
pub fn cocycle_count(h: &FiniteGroup, module: &Representation) -> Result<u64> {
    let mats = &module.matrices;
    let k = h.generators().len();
    if mats.len() != k {
        return Err(GroupError::InvalidAction("one matrix per generator is required".into()));
    }
    let size = module.size();
    let total = (size as u128).pow(k as u32);
    if total > COCYCLE_LIMIT {
        return Err(GroupError::cap("cocycle assignments", COCYCLE_LIMIT as usize, total as usize));
    }
    let p = module.p;
    let add = |a: &[u32], b: &[u32]| -> Vec<u32> { a.iter().zip(b).map(|(x, y)| (x + y) % p).collect() };
    let mut count = 0;
    for code in 0..total as usize {
        let mut c = code;
        let values: Vec<Vec<u32>> = (0..k)
            .map(|_| {
                let v = decode(c % size, p, module.dim);
                c /= size;
                v
            })
            .collect();
        let mut delta = vec![vec![0u32; module.dim]; h.order()];
        for &x in &h.bfs_order()[1..] {
            let x = x as usize;
            let (parent, s) = h.tree_edge(x).expect("tree edge");
            delta[x] = add(&mats[s].apply(&delta[parent]), &values[s]);
        }
        let consistent = (0..h.order()).all(|x| {
            (0..k).all(|s| delta[h.mul_generator(x, s)] == add(&mats[s].apply(&delta[x]), &values[s]))
        });
        if consistent {
            count += 1;
        }
    }
    Ok(count)
}

fn block_diagonal(modules: &[Representation]) -> Result<Representation> {
    let p = modules[0].p;
    let dim: usize = modules.iter().map(|m| m.dim).sum();
    let gens = modules[0].matrices.len();
    let matrices = (0..gens)
        .map(|s| {
            let mut rows = vec![vec![0i64; dim]; dim];
            let mut off = 0;
            for m in modules {
                for i in 0..m.dim {
                    for j in 0..m.dim {
                        rows[off + i][off + j] = m.matrices[s].get(i, j) as i64;
                    }
                }
                off += m.dim;
            }
            FpMatrix::from_rows(p, &rows)
        })
        .collect::<Result<_>>()?;
    Representation::new(p, dim, matrices)
}

/// `m_{|V|}(G, t_v)` for `G = ⊕V_i ⋊ H` and the translation `t_v ∈ A = ⊕V_i`.
///
/// A maximal subgroup `M` of index `|V|` either contains `A`, and then `M/A`
/// is a maximal subgroup of `H` of that index, or `W = M ∩ A` is a maximal
/// submodule with `A/W ≅ V_j` and `M/W` complements `A/W`. The maximal
/// submodules over `V_j` are kernels of nonzero maps in `Hom_H(A, V_j)`, each
/// kernel arising from `|End(V_j)| - 1` maps, and each contributes
/// `|Z^1(H, V_j)|` complements. `t_v ∈ M` iff `v ∈ W`.
pub fn module_scan(product: &SemidirectProduct, vectors: &[Vec<u32>], caps: &Caps) -> Result<u64> {
    let modules = &product.modules;
    let h = &product.acting;
    let n = modules[0].size();
    let mut total = 0u64;
    if h.order().is_multiple_of(n) && h.order() > 1 {
        let lattice = SubgroupLattice::enumerate(h.clone(), caps)?;
        total += genstats::max_counts(&lattice, &ElementSet::new(h.order()))
            .get(&n)
            .copied()
            .unwrap_or(0);
    }
    let a = block_diagonal(modules)?;
    let v: Vec<u32> = vectors.iter().flatten().copied().collect();
    let p = a.p as u64;
    let mut types: Vec<&Representation> = Vec::new();
    for m in modules {
        if m.size() == n && !types.iter().any(|t| !t.hom_space(m).is_empty()) {
            types.push(m);
        }
    }
    for vj in types {
        let basis = a.hom_space(vj);
        let mut images = Subspace::new(a.p, vj.dim);
        for t in &basis {
            images.insert(&t.apply(&v));
        }
        let vanishing = basis.len() - images.dim();
        let maps = p.pow(vanishing as u32) - 1;
        let scalars = p.pow(vj.endomorphism_basis().len() as u32) - 1;
        total += maps / scalars * cocycle_count(h, vj)?;
    }
    Ok(total)
}

/// Builds `Π V_i ⋊ H` and its strong element, and checks that no maximal
/// subgroup of index `|V|` contains that element and, when the lattice is
/// within caps, that `e(G,g) < e(G)`.
pub fn crown_power_group(h: Arc<FiniteGroup>, modules: Vec<Representation>, caps: &Caps) -> Result<CrownPower> {
    let first = modules
        .first()
        .ok_or_else(|| GroupError::InvalidArgument("at least one module is required".into()))?;
    let (p, dim) = (first.p, first.dim);
    if modules.iter().any(|m| m.p != p || m.dim != dim) {
        return Err(GroupError::InvalidAction("modules must be copies of one space".into()));
    }
    for (i, m) in modules.iter().enumerate() {
        if !m.is_irreducible() {
            return Err(GroupError::Reducible(format!("module {i} is reducible")));
        }
    }
    let mut kernels = Vec::new();
    for m in &modules {
        let mats = m.element_matrices(&h)?;
        kernels.push(ElementSet::from_indices(
            h.order(),
            (0..h.order()).filter(|&x| mats[x].is_identity()),
        ));
    }
    let mut meet = h.full_set();
    for k in &kernels {
        meet.intersect_with(k);
    }
    if meet.len() != 1 {
        return Err(GroupError::InvalidAction(
            "kernels of the actions do not intersect trivially".into(),
        ));
    }
    let product = SemidirectProduct::linear(h, modules, caps)?;
    let strong_vectors: Vec<Vec<u32>> = (0..kernels.len())
        .map(|_| {
            let mut v = vec![0; dim];
            v[0] = 1;
            v
        })
        .collect();
    let zero: Vec<Vec<u32>> = vec![vec![0; dim]; kernels.len()];
    let strong_element = product.translation_index(&strong_vectors);
    let m_index = module_scan(&product, &zero, caps)?;
    let m_index_with_g = module_scan(&product, &strong_vectors, caps)?;
    let index = first_size(&product);
    if m_index_with_g != 0 {
        return Err(GroupError::FormulaMismatch(format!(
            "{m_index_with_g} maximal subgroups of index {index} contain the strong element"
        )));
    }
    let group = &product.group;
    let waiting = if group.order() <= caps.lattice_order {
        let lattice = SubgroupLattice::enumerate(Arc::new((*group).clone()), caps)?;
        let e = genstats::expected_waiting(&lattice, &ElementSet::new(group.order()))?;
        let eg = genstats::expected_waiting(&lattice, &ElementSet::from_indices(group.order(), [strong_element]))?;
        if eg >= e {
            return Err(GroupError::FormulaMismatch(format!("e(G,g) = {eg} is not below e(G) = {e}")));
        }
        Some((e, eg))
    } else {
        None
    };
    Ok(CrownPower {
        product,
        strong_element,
        strong_vectors,
        kernels,
        index,
        m_index,
        m_index_with_g,
        waiting,
    })
}

fn first_size(product: &SemidirectProduct) -> usize {
    product.modules[0].size()
}
