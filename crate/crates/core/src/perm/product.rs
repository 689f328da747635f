//! Direct and semidirect products realized as permutation groups.

use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{GroupError, Result};
use crate::linalg::{decode, encode, FpMatrix, Representation};

use super::{FiniteGroup, GroupHomomorphism, Permutation};

/// Action data for [`group_product`].
pub enum ProductAction<'a> {
    /// The left factor is `V_1 × … × V_ρ` over `F_p`; the right factor acts
    /// on `V_i` through `modules[i]`.
    Linear(&'a [Representation]),
    /// One automorphism of the left factor per generator of the right factor.
    Automorphisms(&'a [GroupHomomorphism]),
}

/// `left × right` (no action) or `left ⋊ right`.
pub fn group_product(
    left: &FiniteGroup,
    right: &Arc<FiniteGroup>,
    action: Option<ProductAction<'_>>,
    caps: &Caps,
) -> Result<FiniteGroup> {
    match action {
        None => direct_product(&[left, right], caps),
        Some(ProductAction::Linear(modules)) => {
            let base: usize = modules.iter().map(|m| m.size()).product();
            if left.order() != base || !left.is_abelian() {
                return Err(GroupError::InvalidAction(format!(
                    "left factor of order {} is not the elementary abelian group of order {base}",
                    left.order()
                )));
            }
            if let Some(m) = modules.first() {
                let p = m.p as usize;
                if (0..left.order()).any(|x| left.element_order(x) > 1 && left.element_order(x) != p)
                {
                    return Err(GroupError::InvalidAction(
                        "left factor is not elementary abelian".into(),
                    ));
                }
            }
            Ok(SemidirectProduct::linear(right.clone(), modules.to_vec(), caps)?.group)
        }
        Some(ProductAction::Automorphisms(auts)) => semidirect_by_automorphisms(left, right, auts, caps),
    }
}

/// Direct product acting on the disjoint union of the factors' points.
pub fn direct_product(factors: &[&FiniteGroup], caps: &Caps) -> Result<FiniteGroup> {
    let degree: usize = factors.iter().map(|f| f.degree()).sum();
    let mut gens = Vec::new();
    let mut offset = 0;
    for f in factors {
        for g in f.generators() {
            let mut images: Vec<u32> = (0..degree as u32).collect();
            for i in 0..f.degree() {
                images[offset + i] = (offset + g.image(i)) as u32;
            }
            gens.push(Permutation::from_images_unchecked(images));
        }
        offset += f.degree();
    }
    let expected: u128 = factors.iter().map(|f| f.order() as u128).product();
    if expected > caps.order as u128 {
        return Err(GroupError::cap(
            "group order",
            caps.order,
            expected.min(usize::MAX as u128) as usize,
        ));
    }
    FiniteGroup::generate_with(&gens, caps)
}

/// Splits an element of a direct product back into factor element indices.
pub fn direct_coordinates(product: &FiniteGroup, x: usize, factors: &[&FiniteGroup]) -> Option<Vec<usize>> {
    let p = product.element(x);
    let mut offset = 0;
    let mut out = Vec::with_capacity(factors.len());
    for f in factors {
        let images: Vec<u32> = (0..f.degree())
            .map(|i| (p.image(offset + i) - offset) as u32)
            .collect();
        out.push(f.index_of(&Permutation::from_images(images).ok()?)?);
        offset += f.degree();
    }
    Some(out)
}

/// Assembles an element of a direct product from factor element indices.
pub fn direct_element(factors: &[&FiniteGroup], coords: &[usize]) -> Permutation {
    let degree: usize = factors.iter().map(|f| f.degree()).sum();
    let mut images: Vec<u32> = Vec::with_capacity(degree);
    let mut offset = 0;
    for (f, &c) in factors.iter().zip(coords) {
        images.extend(f.element(c).images().iter().map(|&y| y + offset as u32));
        offset += f.degree();
    }
    Permutation::from_images_unchecked(images)
}

/// How a linear semidirect product is realized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Realization {
    /// `Π V_i ⋊ H` acting on the disjoint union of the affine spaces `V_i`.
    Affine,
    /// Regular action on pairs `(h, v)`, used when the action is not faithful.
    Regular,
}

/// `V_1 × … × V_ρ ⋊ H` with its realization data.
pub struct SemidirectProduct {
    pub group: FiniteGroup,
    pub acting: Arc<FiniteGroup>,
    pub modules: Vec<Representation>,
    pub realization: Realization,
    module_matrices: Vec<Vec<FpMatrix>>,
}

impl SemidirectProduct {
    /// Builds `Π V_i ⋊ H`; each module gives `H`'s generator matrices on `V_i`.
    ///
    /// The affine realization is used when the kernels of the module actions
    /// intersect trivially, otherwise the regular action on the group's own
    /// elements.
    pub fn linear(acting: Arc<FiniteGroup>, modules: Vec<Representation>, caps: &Caps) -> Result<Self> {
        let module_matrices: Vec<Vec<FpMatrix>> = modules
            .iter()
            .map(|m| m.element_matrices(&acting))
            .collect::<Result<_>>()?;
        let base: u128 = modules.iter().map(|m| m.size() as u128).product();
        let order = base * acting.order() as u128;
        if order > caps.order as u128 {
            return Err(GroupError::cap(
                "group order",
                caps.order,
                order.min(usize::MAX as u128) as usize,
            ));
        }
        let faithful = (0..acting.order()).all(|h| {
            h == acting.identity() || module_matrices.iter().any(|mats| !mats[h].is_identity())
        });
        let mut sp = SemidirectProduct {
            group: FiniteGroup::generate(&[Permutation::identity(1)])?,
            acting,
            modules,
            realization: if faithful {
                Realization::Affine
            } else {
                Realization::Regular
            },
            module_matrices,
        };
        let gens = sp.generators();
        sp.group = FiniteGroup::generate_with(&gens, caps)?;
        if sp.group.order() as u128 != order {
            return Err(GroupError::InvalidAction(format!(
                "realized order {} differs from {order}",
                sp.group.order()
            )));
        }
        Ok(sp)
    }

    fn offsets(&self) -> Vec<usize> {
        let mut offs = Vec::with_capacity(self.modules.len());
        let mut acc = 0;
        for m in &self.modules {
            offs.push(acc);
            acc += m.size();
        }
        offs
    }

    fn base_size(&self) -> usize {
        self.modules.iter().map(|m| m.size()).product()
    }

    fn encode_base(&self, vectors: &[Vec<u32>]) -> usize {
        let mut code = 0;
        for (m, v) in self.modules.iter().zip(vectors).rev() {
            code = code * m.size() + encode(v, m.p);
        }
        code
    }

    fn decode_base(&self, mut code: usize) -> Vec<Vec<u32>> {
        self.modules
            .iter()
            .map(|m| {
                let v = decode(code % m.size(), m.p, m.dim);
                code /= m.size();
                v
            })
            .collect()
    }

    /// The permutation realizing `h · t_v` where `t_v` translates by `vectors`.
    pub fn element(&self, h: usize, vectors: &[Vec<u32>]) -> Permutation {
        match self.realization {
            Realization::Affine => {
                let mut images = Vec::new();
                for (i, (m, v)) in self.modules.iter().zip(vectors).enumerate() {
                    let off = images.len();
                    let mat = &self.module_matrices[i][h];
                    for code in 0..m.size() {
                        let u = decode(code, m.p, m.dim);
                        let moved: Vec<u32> = mat
                            .apply(&u)
                            .iter()
                            .zip(v)
                            .map(|(a, b)| (a + b) % m.p)
                            .collect();
                        images.push((off + encode(&moved, m.p)) as u32);
                    }
                }
                Permutation::from_images_unchecked(images)
            }
            Realization::Regular => {
                // Points are pairs (k, w) ↦ (k, w)(h, v) = (k h, w·A(h) + v).
                let base = self.base_size();
                let code_v = self.encode_base(vectors);
                let v = self.decode_base(code_v);
                let mut images = vec![0u32; self.acting.order() * base];
                for k in 0..self.acting.order() {
                    for wc in 0..base {
                        let w = self.decode_base(wc);
                        let moved: Vec<Vec<u32>> = w
                            .iter()
                            .enumerate()
                            .map(|(i, wi)| {
                                let m = &self.modules[i];
                                self.module_matrices[i][h]
                                    .apply(wi)
                                    .iter()
                                    .zip(&v[i])
                                    .map(|(a, b)| (a + b) % m.p)
                                    .collect()
                            })
                            .collect();
                        let target = self.acting.mul(k, h) * base + self.encode_base(&moved);
                        images[k * base + wc] = target as u32;
                    }
                }
                Permutation::from_images_unchecked(images)
            }
        }
    }

    fn zero_vectors(&self) -> Vec<Vec<u32>> {
        self.modules.iter().map(|m| vec![0; m.dim]).collect()
    }

    fn generators(&self) -> Vec<Permutation> {
        let mut gens = Vec::new();
        let zero = self.zero_vectors();
        for &h in self.acting.generator_indices() {
            gens.push(self.element(h, &zero));
        }
        for (i, m) in self.modules.iter().enumerate() {
            for k in 0..m.dim {
                let mut vs = zero.clone();
                vs[i][k] = 1;
                gens.push(self.element(self.acting.identity(), &vs));
            }
        }
        gens
    }

    /// Element index of the pure translation by `vectors`.
    pub fn translation_index(&self, vectors: &[Vec<u32>]) -> usize {
        let p = self.element(self.acting.identity(), vectors);
        self.group.index_of(&p).expect("translation lies in the group")
    }

    /// Element index of `h` in the complement.
    pub fn complement_index(&self, h: usize) -> usize {
        let p = self.element(h, &self.zero_vectors());
        self.group.index_of(&p).expect("complement element lies in the group")
    }

    pub fn module_matrices(&self) -> &[Vec<FpMatrix>] {
        &self.module_matrices
    }

    pub fn point_offsets(&self) -> Vec<usize> {
        self.offsets()
    }
}

/// `L ⋊ R` where `R`'s generators act by the given automorphisms of `L`,
/// realized by the regular action on pairs `(r, l)`.
pub fn semidirect_by_automorphisms(
    left: &FiniteGroup,
    right: &Arc<FiniteGroup>,
    auts: &[GroupHomomorphism],
    caps: &Caps,
) -> Result<FiniteGroup> {
    if auts.len() != right.generators().len() {
        return Err(GroupError::InvalidAction(
            "one automorphism per generator of the acting group".into(),
        ));
    }
    let nl = left.order();
    for a in auts {
        if a.domain().order() != nl || a.codomain().order() != nl || !a.is_bijective() {
            return Err(GroupError::InvalidAction(
                "action is not by automorphisms of the left factor".into(),
            ));
        }
        let preserves = (0..nl).all(|x| {
            (0..nl).all(|y| a.apply(left.mul(x, y)) == left.mul(a.apply(x), a.apply(y)))
        });
        if !preserves {
            return Err(GroupError::InvalidAction("map is not an automorphism".into()));
        }
    }
    let order = nl * right.order();
    if order > caps.order {
        return Err(GroupError::cap("group order", caps.order, order));
    }
    // φ(r) for every r, composing generator automorphisms along the tree.
    let mut phi: Vec<Vec<usize>> = vec![(0..nl).collect(); right.order()];
    for &r in &right.bfs_order()[1..] {
        let r = r as usize;
        let (parent, s) = right.tree_edge(r).unwrap();
        phi[r] = phi[parent].iter().map(|&y| auts[s].apply(y)).collect();
    }
    for r in 0..right.order() {
        for (s, a) in auts.iter().enumerate() {
            let rs = right.mul_generator(r, s);
            let composed: Vec<usize> = phi[r].iter().map(|&y| a.apply(y)).collect();
            if phi[rs] != composed {
                return Err(GroupError::InvalidAction(
                    "automorphisms do not satisfy the acting group's relations".into(),
                ));
            }
        }
    }
    // (r, l)(r', l') = (r r', φ(r')(l) l')
    let make = |r2: usize, l2: usize| {
        let mut images = vec![0u32; order];
        for r in 0..right.order() {
            for l in 0..nl {
                let rr = right.mul(r, r2);
                let ll = left.mul(phi[r2][l], l2);
                images[r * nl + l] = (rr * nl + ll) as u32;
            }
        }
        Permutation::from_images_unchecked(images)
    };
    let mut gens = Vec::new();
    for &s in right.generator_indices() {
        gens.push(make(s, left.identity()));
    }
    for &g in left.generator_indices() {
        gens.push(make(right.identity(), g));
    }
    FiniteGroup::generate_with(&gens, caps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::automorphisms;

    fn cyclic(n: usize) -> FiniteGroup {
        let images: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        FiniteGroup::generate(&[Permutation::from_images(images).unwrap()]).unwrap()
    }

    #[test]
    fn klein_as_direct_product() {
        let c2 = cyclic(2);
        let v = direct_product(&[&c2, &c2], &Caps::default()).unwrap();
        assert_eq!(v.order(), 4);
        assert!((0..4).filter(|&x| x != v.identity()).all(|x| v.element_order(x) == 2));
    }

    #[test]
    fn inversion_semidirect_order_54() {
        let c2 = Arc::new(cyclic(2));
        let inv = Representation::new(3, 1, vec![FpMatrix::scalar(3, 1, 2)]).unwrap();
        let sp = SemidirectProduct::linear(c2.clone(), vec![inv.clone(), inv.clone(), inv], &Caps::default())
            .unwrap();
        assert_eq!(sp.group.order(), 54);
        assert_eq!(sp.realization, Realization::Affine);
        assert_eq!(sp.group.degree(), 9);
    }

    #[test]
    fn non_faithful_falls_back_to_regular() {
        let c2 = Arc::new(cyclic(2));
        let trivial = Representation::new(3, 1, vec![FpMatrix::identity(3, 1)]).unwrap();
        let sp = SemidirectProduct::linear(c2, vec![trivial], &Caps::default()).unwrap();
        assert_eq!(sp.realization, Realization::Regular);
        assert_eq!(sp.group.order(), 6);
        assert!(sp.group.is_abelian());
    }

    #[test]
    fn trivial_right_factor_keeps_left() {
        let s3 = FiniteGroup::generate(&[
            Permutation::parse_cycles("(1,2)", 3).unwrap(),
            Permutation::parse_cycles("(1,2,3)", 3).unwrap(),
        ])
        .unwrap();
        let one = Arc::new(FiniteGroup::generate(&[Permutation::identity(1)]).unwrap());
        let g = group_product(&s3, &one, None, &Caps::default()).unwrap();
        let mut a: Vec<usize> = (0..6).map(|x| s3.element_order(x)).collect();
        let mut b: Vec<usize> = (0..6).map(|x| g.element_order(x)).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn automorphism_semidirect_gives_s3() {
        let c3 = Arc::new(cyclic(3));
        let c2 = Arc::new(cyclic(2));
        let auts = automorphisms(&c3, &Caps::default()).unwrap();
        let inversion = auts.into_iter().find(|a| a.apply(1) != 1).unwrap();
        let g = group_product(&c3, &c2, Some(ProductAction::Automorphisms(&[inversion])), &Caps::default())
            .unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
    }
}
