use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::ElementSet;
use crate::caps::Caps;
use crate::error::{GroupError, Result};

use super::{FiniteGroup, Permutation};

/// A homomorphism between two enumerated groups, stored as an image table.
#[derive(Clone)]
pub struct GroupHomomorphism {
    domain: Arc<FiniteGroup>,
    codomain: Arc<FiniteGroup>,
    images: Vec<usize>,
}

const VALIDATION_SEED: u64 = 0x6765_6e77_6169_7431;
const RANDOM_PAIRS: usize = 100_000;

impl GroupHomomorphism {
    /// Wraps an image table after validating the homomorphism property.
    pub fn new(
        domain: Arc<FiniteGroup>,
        codomain: Arc<FiniteGroup>,
        images: Vec<usize>,
        caps: &Caps,
    ) -> Result<Self> {
        if images.len() != domain.order() || images.iter().any(|&y| y >= codomain.order()) {
            return Err(GroupError::InvalidHomomorphism(
                "image table has the wrong shape".into(),
            ));
        }
        let hom = GroupHomomorphism {
            domain,
            codomain,
            images,
        };
        hom.validate(caps)?;
        Ok(hom)
    }

    /// Extends generator images along the domain's spanning tree.
    ///
    /// `gen_images[s]` is the image of the domain's `s`-th generator.
    pub fn from_generator_images(
        domain: Arc<FiniteGroup>,
        codomain: Arc<FiniteGroup>,
        gen_images: &[usize],
        caps: &Caps,
    ) -> Result<Self> {
        if gen_images.len() != domain.generators().len() {
            return Err(GroupError::InvalidHomomorphism(
                "one image per generator required".into(),
            ));
        }
        let images = extend_along_tree(&domain, &codomain, gen_images);
        Self::new(domain, codomain, images, caps)
    }

    pub(crate) fn from_parts_unchecked(
        domain: Arc<FiniteGroup>,
        codomain: Arc<FiniteGroup>,
        images: Vec<usize>,
    ) -> Self {
        GroupHomomorphism {
            domain,
            codomain,
            images,
        }
    }

    /// Checks `f(ab) = f(a) f(b)`: on every pair for small domains, else on
    /// seeded random pairs.
    pub fn validate(&self, caps: &Caps) -> Result<()> {
        let n = self.domain.order();
        let ok = |a: usize, b: usize| {
            self.images[self.domain.mul(a, b)] == self.codomain.mul(self.images[a], self.images[b])
        };
        if n <= caps.exhaustive_hom_check {
            let all = crate::par::all_range(n, |a| (0..n).all(|b| ok(a, b)));
            if !all {
                return Err(GroupError::InvalidHomomorphism(
                    "multiplication not preserved".into(),
                ));
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(VALIDATION_SEED);
            for _ in 0..RANDOM_PAIRS {
                let a = rng.random_range(0..n);
                let b = rng.random_range(0..n);
                if !ok(a, b) {
                    return Err(GroupError::InvalidHomomorphism(
                        "multiplication not preserved on a sampled pair".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn domain(&self) -> &Arc<FiniteGroup> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteGroup> {
        &self.codomain
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.images[a]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn kernel(&self) -> ElementSet {
        let id = self.codomain.identity();
        ElementSet::from_indices(
            self.domain.order(),
            (0..self.domain.order()).filter(|&a| self.images[a] == id),
        )
    }

    pub fn image(&self) -> ElementSet {
        ElementSet::from_indices(self.codomain.order(), self.images.iter().copied())
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.order() == self.codomain.order() && self.image().len() == self.codomain.order()
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &GroupHomomorphism) -> Result<GroupHomomorphism> {
        if !Arc::ptr_eq(&self.codomain, &other.domain) {
            return Err(GroupError::InvalidHomomorphism(
                "codomain and domain differ".into(),
            ));
        }
        Ok(GroupHomomorphism {
            domain: self.domain.clone(),
            codomain: other.codomain.clone(),
            images: self.images.iter().map(|&y| other.images[y]).collect(),
        })
    }

    /// Inverse of a bijective homomorphism.
    pub fn inverse(&self) -> Result<GroupHomomorphism> {
        if !self.is_bijective() {
            return Err(GroupError::InvalidHomomorphism("not bijective".into()));
        }
        let mut inv = vec![0; self.images.len()];
        for (a, &b) in self.images.iter().enumerate() {
            inv[b] = a;
        }
        Ok(GroupHomomorphism {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            images: inv,
        })
    }
}

impl PartialEq for GroupHomomorphism {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.domain, &other.domain)
            && Arc::ptr_eq(&self.codomain, &other.codomain)
            && self.images == other.images
    }
}

impl std::fmt::Debug for GroupHomomorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupHomomorphism")
            .field("domain_order", &self.domain.order())
            .field("codomain_order", &self.codomain.order())
            .finish()
    }
}

pub(crate) fn extend_along_tree(
    domain: &FiniteGroup,
    codomain: &FiniteGroup,
    gen_images: &[usize],
) -> Vec<usize> {
    let mut images = vec![codomain.identity(); domain.order()];
    for &x in &domain.bfs_order()[1..] {
        let x = x as usize;
        let (parent, s) = domain.tree_edge(x).expect("non-identity has a parent");
        images[x] = codomain.mul(images[parent], gen_images[s]);
    }
    images
}

/// The quotient `G/N` acting on the right cosets of `N`, with the natural map.
pub fn quotient_group(
    g: &Arc<FiniteGroup>,
    normal: &ElementSet,
    caps: &Caps,
) -> Result<(Arc<FiniteGroup>, GroupHomomorphism)> {
    if !g.is_subgroup(normal) {
        return Err(GroupError::NotSubgroup(
            "quotient by a non-subgroup".into(),
        ));
    }
    if !g.is_normal(normal) {
        return Err(GroupError::NotNormal);
    }
    let n = g.order();
    let members: Vec<usize> = normal.iter().collect();
    let mut label = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if label[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &h in &members {
            label[g.mul(h, x)] = id;
        }
    }
    let index = reps.len();
    let coset_perm = |x: usize| {
        let images: Vec<u32> = reps.iter().map(|&r| label[g.mul(r, x)] as u32).collect();
        Permutation::from_images_unchecked(images)
    };
    let gens: Vec<Permutation> = g.generator_indices().iter().map(|&s| coset_perm(s)).collect();
    let q = Arc::new(
        FiniteGroup::generate_with(&gens, caps)?.with_name(format!("{}/N", g.label())),
    );
    debug_assert_eq!(q.order(), index);
    let gen_images: Vec<usize> = gens.iter().map(|p| q.index_of(p).unwrap()).collect();
    let images = extend_along_tree(g, &q, &gen_images);
    let hom = GroupHomomorphism::from_parts_unchecked(g.clone(), q.clone(), images);
    Ok((q, hom))
}

/// All automorphisms of `s`, found by backtracking over images of a small
/// generating set. Candidate images must match the generator's element order
/// and conjugacy class size.
pub fn automorphisms(s: &Arc<FiniteGroup>, caps: &Caps) -> Result<Vec<GroupHomomorphism>> {
    if s.order() > caps.automorphism_order {
        return Err(GroupError::cap(
            "automorphism group order",
            caps.automorphism_order,
            s.order(),
        ));
    }
    let n = s.order();
    let gens = s.generating_set(&s.full_set());
    let class_size = class_sizes(s);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            (0..n)
                .filter(|&y| {
                    s.element_order(y) == s.element_order(g) && class_size[y] == class_size[g]
                })
                .collect()
        })
        .collect();

    // Spanning tree of S over the chosen generators, used to propagate images.
    let mut parent = vec![(usize::MAX, 0usize); n];
    let mut order_seen = vec![s.identity()];
    let mut seen = vec![false; n];
    seen[s.identity()] = true;
    let mut head = 0;
    while head < order_seen.len() {
        let x = order_seen[head];
        head += 1;
        for (k, &g) in gens.iter().enumerate() {
            let y = s.mul(x, g);
            if !seen[y] {
                seen[y] = true;
                parent[y] = (x, k);
                order_seen.push(y);
            }
        }
    }

    let mut found = Vec::new();
    let mut chosen = Vec::with_capacity(gens.len());
    search_automorphisms(s, &gens, &candidates, &parent, &order_seen, &mut chosen, &mut found);
    found.sort();
    Ok(found
        .into_iter()
        .map(|images| GroupHomomorphism::from_parts_unchecked(s.clone(), s.clone(), images))
        .collect())
}

fn class_sizes(s: &FiniteGroup) -> Vec<usize> {
    let mut sizes = vec![0; s.order()];
    for class in s.conjugacy_classes() {
        for &x in &class {
            sizes[x] = class.len();
        }
    }
    sizes
}

/// Map on `⟨gens[..chosen.len()]⟩` determined by the chosen images, or `None`
/// if it is not a well-defined injective homomorphism.
fn partial_map(
    s: &FiniteGroup,
    gens: &[usize],
    chosen: &[usize],
) -> Option<HashMap<usize, usize>> {
    let k = chosen.len();
    let mut map = HashMap::new();
    map.insert(s.identity(), s.identity());
    let mut queue = vec![s.identity()];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let fx = map[&x];
        for j in 0..k {
            let y = s.mul(x, gens[j]);
            let fy = s.mul(fx, chosen[j]);
            match map.get(&y) {
                Some(&prev) if prev != fy => return None,
                Some(_) => {}
                None => {
                    map.insert(y, fy);
                    queue.push(y);
                }
            }
        }
    }
    let distinct: BTreeSet<usize> = map.values().copied().collect();
    (distinct.len() == map.len()).then_some(map)
}

fn search_automorphisms(
    s: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    parent: &[(usize, usize)],
    tree_order: &[usize],
    chosen: &mut Vec<usize>,
    found: &mut Vec<Vec<usize>>,
) {
    let depth = chosen.len();
    if depth == gens.len() {
        let mut images = vec![s.identity(); s.order()];
        for &x in &tree_order[1..] {
            let (p, k) = parent[x];
            images[x] = s.mul(images[p], chosen[k]);
        }
        let n = s.order();
        let hom = (0..n).all(|x| {
            gens.iter()
                .zip(chosen.iter())
                .all(|(&g, &c)| images[s.mul(x, g)] == s.mul(images[x], c))
        });
        let bijective = images.iter().collect::<BTreeSet<_>>().len() == n;
        if hom && bijective {
            found.push(images);
        }
        return;
    }
    for &c in &candidates[depth] {
        chosen.push(c);
        if partial_map(s, gens, chosen).is_some() {
            search_automorphisms(s, gens, candidates, parent, tree_order, chosen, found);
        }
        chosen.pop();
    }
}

/// Epimorphisms from the free group of rank `d` onto `X`, as generating tuples.
#[derive(Debug, Clone)]
pub struct EpimorphismCensus {
    pub rank: usize,
    /// Number of generating `d`-tuples of `X`.
    pub count: u64,
    pub automorphism_count: usize,
    /// One tuple per kernel: representatives of the `Aut(X)`-orbits on tuples.
    pub kernels: Vec<Vec<usize>>,
}

/// Enumerates the generating `d`-tuples of `x` and groups them by kernel.
///
/// Two epimorphisms from a free group share a kernel exactly when they differ
/// by an automorphism of `x`, so kernels are the `Aut(x)`-orbits on tuples.
/// The count is checked against `|X|^d · P_X(d)` from the Möbius expansion
/// and the kernel count against `count / |Aut(X)|`.
pub fn epimorphisms_onto(d: usize, x: &Arc<FiniteGroup>, caps: &Caps) -> Result<EpimorphismCensus> {
    if d == 0 {
        return Err(GroupError::InvalidArgument("rank must be at least 1".into()));
    }
    let n = x.order();
    let total = (n as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if total > caps.order as u128 * 100 {
        return Err(GroupError::cap(
            "generating tuple enumeration",
            caps.order * 100,
            total.min(usize::MAX as u128) as usize,
        ));
    }
    let auts = automorphisms(x, caps)?;
    let tuples: Vec<Vec<usize>> = crate::par::map_range(total as usize, |code| {
        let tuple = decode_tuple(code, n, d);
        (x.closure(&tuple).len() == n).then_some(tuple)
    })
    .into_iter()
    .flatten()
    .collect();
    let count = tuples.len() as u64;

    let mut canonical: BTreeSet<Vec<usize>> = BTreeSet::new();
    for t in &tuples {
        let rep = auts
            .iter()
            .map(|a| t.iter().map(|&y| a.apply(y)).collect::<Vec<_>>())
            .min()
            .expect("identity automorphism present");
        canonical.insert(rep);
    }
    let kernels: Vec<Vec<usize>> = canonical.into_iter().collect();

    if !count.is_multiple_of(auts.len() as u64) || kernels.len() as u64 != count / auts.len() as u64 {
        return Err(GroupError::FormulaMismatch(format!(
            "{} generating tuples, {} automorphisms, {} kernels",
            count,
            auts.len(),
            kernels.len()
        )));
    }
    if x.order() >= 2 && x.order() <= caps.lattice_order {
        let lattice = crate::lattice::SubgroupLattice::enumerate(x.clone(), caps)?;
        let p = crate::genstats::prob_generating(&lattice, &x.trivial_set(), d);
        let expected = p * crate::rational::ExactRational::from_integer(total as i64);
        if expected != crate::rational::ExactRational::from_integer(count as i64) {
            return Err(GroupError::FormulaMismatch(format!(
                "|X|^d P_X(d) = {expected} but {count} generating tuples"
            )));
        }
    }
    Ok(EpimorphismCensus {
        rank: d,
        count,
        automorphism_count: auts.len(),
        kernels,
    })
}

fn decode_tuple(mut code: usize, n: usize, d: usize) -> Vec<usize> {
    let mut t = vec![0; d];
    for slot in t.iter_mut() {
        *slot = code % n;
        code /= n;
    }
    t
}
