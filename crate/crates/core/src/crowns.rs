//! Maximal subgroups grouped by their abelian chief factors, and crowns.
//!
//! A maximal subgroup `M` with core `Y_M` determines the section `X_M/Y_M`,
//! the socle of the primitive group `G/Y_M`. When that socle is abelian it is
//! an irreducible `F_p G`-module `V`, and `Max(G,V)` collects the maximal
//! subgroups whose section is `G`-isomorphic to `V`. With `C = C_G(V)` and
//! `R = ∩ Max(G,V)`, the quotient `C/R` is `V^δ` and
//! `|Max(G,V)| = ((q^δ - 1)/(q - 1)) |V|^θ`, where `q = |End_G(V)|` and
//! `θ = 0` exactly when `G` centralizes `V`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::error::{GroupError, Result};
use crate::genstats::{self, ceil_log};
use crate::lattice::SubgroupLattice;
use crate::linalg::{decode, FpMatrix, Representation};
use crate::perm::{is_prime_power, prime_factors};
use crate::rational::ExactRational;

/// An abelian section `X/Y` as an `F_p G`-module.
#[derive(Debug, Clone)]
pub struct ModuleData {
    pub p: u32,
    pub dim: usize,
    /// One matrix per generator of `G`, acting on row vectors.
    pub action: Representation,
    /// Lattice indices `(Y, X)` of the section.
    pub section: (usize, usize),
    /// Elements of `X` whose images form the basis of `X/Y`.
    pub basis: Vec<usize>,
}

impl ModuleData {
    pub fn size(&self) -> usize {
        self.action.size()
    }

    /// Invariants used to order classes: prime, dimension, triviality and
    /// per-generator `(order, fixed dimension)`.
    fn fingerprint(&self) -> (usize, u32, usize, bool, Vec<(usize, usize)>) {
        (
            self.size(),
            self.p,
            self.dim,
            !self.action.is_trivial(),
            self.action
                .matrices
                .iter()
                .map(|m| (m.order().unwrap_or(0), m.fixed_dim()))
                .collect(),
        )
    }
}

/// Reads off the conjugation action of `G` on `X/Y` for normal `Y ≤ X` with
/// `X/Y` elementary abelian.
pub fn extract_module(lattice: &SubgroupLattice, y: usize, x: usize) -> Result<ModuleData> {
    let g = lattice.group();
    let y_set = &lattice.subgroup(y).elements;
    let x_sub = lattice.subgroup(x);
    if !lattice.contains(x, y) || !lattice.is_normal(x) || !lattice.is_normal(y) {
        return Err(GroupError::NotNormal);
    }
    let size = x_sub.order / lattice.subgroup(y).order;
    if size < 2 || !is_prime_power(size) {
        return Err(GroupError::InvalidAction("section is not a nontrivial p-group".into()));
    }
    let p = prime_factors(size)[0];
    let gens = &x_sub.generators;
    let elementary = gens.iter().all(|&a| {
        y_set.contains(g.pow(a, p)) && gens.iter().all(|&b| y_set.contains(g.commutator(a, b)))
    });
    if !elementary {
        return Err(GroupError::InvalidAction("section is not elementary abelian".into()));
    }

    let mut basis = Vec::new();
    let mut span = y_set.clone();
    let mut span_gens = lattice.subgroup(y).generators.clone();
    while span.len() < x_sub.order {
        let next = x_sub
            .elements
            .iter()
            .find(|&e| !span.contains(e))
            .expect("span is a proper subgroup of X");
        span = g.join_element(&span, &span_gens, next);
        span_gens.push(next);
        basis.push(next);
    }
    let dim = basis.len();
    let p32 = p as u32;

    // coords[z] is the code of the coset of z in X/Y.
    let mut coords = vec![usize::MAX; g.order()];
    for code in 0..size {
        let e = decode(code, p32, dim);
        let rep = basis
            .iter()
            .zip(&e)
            .fold(g.identity(), |acc, (&b, &k)| g.mul(acc, g.pow(b, k as usize)));
        for yy in y_set.iter() {
            coords[g.mul(yy, rep)] = code;
        }
    }
    let matrices = g
        .generator_indices()
        .iter()
        .map(|&s| {
            let rows: Vec<Vec<i64>> = basis
                .iter()
                .map(|&b| {
                    decode(coords[g.conjugate(b, s)], p32, dim)
                        .into_iter()
                        .map(i64::from)
                        .collect()
                })
                .collect();
            FpMatrix::from_rows(p32, &rows)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ModuleData {
        p: p32,
        dim,
        action: Representation::new(p32, dim, matrices)?,
        section: (y, x),
        basis,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ModuleInvariants {
    /// `|End_G(V)|`.
    pub q: u64,
    /// `dim_{End_G(V)} V`.
    pub r: usize,
    /// 0 when `G` acts trivially, 1 otherwise.
    pub theta: u32,
    pub irreducible: bool,
}

/// `q`, `r` and `θ` of an irreducible module.
pub fn module_invariants(module: &Representation) -> Result<ModuleInvariants> {
    let irreducible = module.is_irreducible();
    if !irreducible {
        return Err(GroupError::Reducible(
            "the module has a proper nonzero submodule".into(),
        ));
    }
    let end = module.endomorphism_basis();
    let k = end.len();
    if k == 0 || !module.dim.is_multiple_of(k) || !is_field(module.p, &end) {
        return Err(GroupError::Reducible(
            "the endomorphism algebra is not a field".into(),
        ));
    }
    Ok(ModuleInvariants {
        q: (module.p as u64).pow(k as u32),
        r: module.dim / k,
        theta: u32::from(!module.is_trivial()),
        irreducible,
    })
}

/// Whether the span of `basis` is a commutative algebra in which every
/// nonzero element is invertible.
fn is_field(p: u32, basis: &[FpMatrix]) -> bool {
    let n = basis[0].dim();
    let total = (p as usize).pow(basis.len() as u32);
    let commutative = basis
        .iter()
        .all(|a| basis.iter().all(|b| a.mul(b) == b.mul(a)));
    commutative
        && (1..total).all(|code| {
            let c = decode(code, p, basis.len());
            let m = basis
                .iter()
                .zip(&c)
                .fold(FpMatrix::zero(p, n), |acc, (b, &k)| acc.add(&b.mul(&FpMatrix::scalar(p, n, k))));
            m.is_invertible()
        })
}

/// `G`-isomorphism of irreducible modules: a nonzero intertwiner exists.
pub fn modules_isomorphic(a: &Representation, b: &Representation) -> bool {
    a.p == b.p && a.dim == b.dim && !a.hom_space(b).is_empty()
}

/// `G`-isomorphism of irreducible modules by search: the image `w` of the
/// first basis vector determines an intertwiner, if any, by spinning; every
/// nonzero `w` is tried.
pub fn isomorphic_by_search(a: &Representation, b: &Representation) -> bool {
    if a.p != b.p || a.dim != b.dim || a.matrices.len() != b.matrices.len() {
        return false;
    }
    let (p, n) = (a.p, a.dim);
    let mut start = vec![0u32; n];
    start[0] = 1;
    (1..b.size()).any(|code| {
        let w = decode(code, p, n);
        let mut pairs = vec![(start.clone(), w)];
        let mut span = crate::linalg::Subspace::new(p, n);
        let mut rows_u = Vec::new();
        let mut rows_w = Vec::new();
        while let Some((u, v)) = pairs.pop() {
            if span.insert(&u) {
                rows_u.push(u.iter().map(|&x| x as i64).collect::<Vec<_>>());
                rows_w.push(v.iter().map(|&x| x as i64).collect::<Vec<_>>());
                for (ma, mb) in a.matrices.iter().zip(&b.matrices) {
                    pairs.push((ma.apply(&u), mb.apply(&v)));
                }
            }
        }
        if rows_u.len() != n {
            return false;
        }
        let u = FpMatrix::from_rows(p, &rows_u).expect("square");
        let wm = FpMatrix::from_rows(p, &rows_w).expect("square");
        let t = u.inverse().expect("basis").mul(&wm);
        t.is_invertible()
            && a
                .matrices
                .iter()
                .zip(&b.matrices)
                .all(|(ma, mb)| ma.mul(&t) == t.mul(mb))
    })
}

/// Crown data of one class: `C = C_G(V)`, `R = R_G(V)` and `δ`.
#[derive(Debug, Clone)]
pub struct CrownParams {
    pub centralizer: ElementSet,
    pub crown_kernel: ElementSet,
    pub delta: u32,
    pub formula_expected: u64,
    pub formula_actual: u64,
}

impl CrownParams {
    pub fn formula_holds(&self) -> bool {
        self.formula_expected == self.formula_actual
    }
}

/// `(q^k - 1)/(q - 1)`.
fn gaussian_count(q: u64, k: u32) -> u64 {
    (0..k).map(|i| q.pow(i)).sum()
}

/// `C`, `R`, `δ` for the class of `module`, and the maximal-subgroup count
/// check.
pub fn crown_params(
    lattice: &SubgroupLattice,
    module: &ModuleData,
    inv: &ModuleInvariants,
    maximals: &[usize],
) -> Result<CrownParams> {
    let g = lattice.group();
    let mats = module.action.element_matrices(g)?;
    let centralizer = ElementSet::from_indices(g.order(), (0..g.order()).filter(|&x| mats[x].is_identity()));
    let mut crown_kernel = g.full_set();
    for &m in maximals {
        crown_kernel.intersect_with(&lattice.subgroup(m).elements);
    }
    let (c, r) = (lattice.find(&centralizer), lattice.find(&crown_kernel));
    let (Some(c), Some(r)) = (c, r) else {
        return Err(GroupError::FormulaMismatch("C or R is not a subgroup".into()));
    };
    if !lattice.is_normal(c) || !lattice.is_normal(r) || !lattice.contains(c, r) {
        return Err(GroupError::FormulaMismatch("R ≤ C fails or one is not normal".into()));
    }
    let ratio = centralizer.len() / crown_kernel.len();
    let v = module.size();
    let mut delta = 0u32;
    let mut acc = 1usize;
    while acc < ratio {
        acc *= v;
        delta += 1;
    }
    if acc != ratio {
        return Err(GroupError::FormulaMismatch(format!(
            "|C/R| = {ratio} is not a power of |V| = {v}"
        )));
    }
    let formula_expected = gaussian_count(inv.q, delta) * (v as u64).pow(inv.theta);
    Ok(CrownParams {
        centralizer,
        crown_kernel,
        delta,
        formula_expected,
        formula_actual: maximals.len() as u64,
    })
}

#[derive(Debug, Clone)]
pub struct ChiefFactorClass {
    pub module: ModuleData,
    pub invariants: ModuleInvariants,
    /// Lattice indices of `Max(G,V)`.
    pub maximals: Vec<usize>,
    pub crown: CrownParams,
}

impl ChiefFactorClass {
    pub fn delta(&self) -> u32 {
        self.crown.delta
    }

    /// `|V|`, also the index of every subgroup in `Max(G,V)`.
    pub fn size(&self) -> usize {
        self.module.size()
    }

    /// Whether `δ ≤ r`.
    pub fn delta_at_most_r(&self) -> bool {
        self.crown.delta as usize <= self.invariants.r
    }

    pub fn summary(&self) -> ClassSummary {
        ClassSummary {
            p: self.module.p,
            dim: self.module.dim,
            size: self.size(),
            q: self.invariants.q,
            r: self.invariants.r,
            theta: self.invariants.theta,
            delta: self.crown.delta,
            max_count: self.maximals.len(),
            centralizer_order: self.crown.centralizer.len(),
            crown_kernel_order: self.crown.crown_kernel.len(),
            formula_expected: self.crown.formula_expected,
            formula_check: self.crown.formula_holds(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassSummary {
    pub p: u32,
    pub dim: usize,
    pub size: usize,
    pub q: u64,
    pub r: usize,
    pub theta: u32,
    pub delta: u32,
    pub max_count: usize,
    pub centralizer_order: usize,
    pub crown_kernel_order: usize,
    pub formula_expected: u64,
    pub formula_check: bool,
}

/// Maximal subgroups split into abelian chief-factor classes and a residue
/// of maximals with nonabelian socle.
#[derive(Debug, Clone)]
pub struct Classification {
    pub classes: Vec<ChiefFactorClass>,
    pub residue: Vec<usize>,
}

impl Classification {
    pub fn maximal_total(&self) -> usize {
        self.classes.iter().map(|c| c.maximals.len()).sum::<usize>() + self.residue.len()
    }
}

/// Groups the maximal subgroups by `G`-isomorphism class of their socle
/// sections and computes the crown data of each class. Fails if the
/// maximal-subgroup count formula does not hold for some class.
pub fn chief_classify(lattice: &SubgroupLattice) -> Result<Classification> {
    let census = lattice.maximal_census();
    let mut residue = Vec::new();
    let mut groups: Vec<(ModuleData, Vec<usize>)> = Vec::new();
    for info in census {
        if !info.abelian_socle {
            residue.push(info.subgroup);
            continue;
        }
        let module = extract_module(lattice, info.core, info.socle)?;
        match groups
            .iter_mut()
            .find(|(m, _)| modules_isomorphic(&m.action, &module.action))
        {
            Some((_, list)) => list.push(info.subgroup),
            None => groups.push((module, vec![info.subgroup])),
        }
    }
    groups.sort_by(|a, b| {
        a.0.fingerprint()
            .cmp(&b.0.fingerprint())
            .then_with(|| a.1[0].cmp(&b.1[0]))
    });
    let classes = crate::par::map(&groups, |(module, maximals)| -> Result<ChiefFactorClass> {
        let invariants = module_invariants(&module.action)?;
        let crown = crown_params(lattice, module, &invariants, maximals)?;
        if !crown.formula_holds() {
            return Err(GroupError::FormulaMismatch(format!(
                "|Max(G,V)| = {} but the crown formula gives {} (|V| = {})",
                crown.formula_actual,
                crown.formula_expected,
                module.size()
            )));
        }
        Ok(ChiefFactorClass {
            module: module.clone(),
            invariants,
            maximals: maximals.clone(),
            crown,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(Classification { classes, residue })
}

/// `R_G(V)` as the intersection of the normal `N ≤ C` with `C/N ≅_G V`
/// that have a complement `K` (`K ∩ C = N`, `KC = G`).
pub fn crown_kernel_via_normals(lattice: &SubgroupLattice, class: &ChiefFactorClass) -> Result<usize> {
    let c = lattice
        .find(&class.crown.centralizer)
        .ok_or_else(|| GroupError::FormulaMismatch("C is not a subgroup".into()))?;
    let c_set = &class.crown.centralizer;
    let v = class.size();
    let g_order = lattice.group().order();
    let mut meet = c_set.clone();
    for n in lattice.normal_subgroups() {
        let n_sub = lattice.subgroup(n);
        if !lattice.contains(c, n) || n_sub.order * v != c_set.len() {
            continue;
        }
        let Ok(section) = extract_module(lattice, n, c) else {
            continue;
        };
        if !modules_isomorphic(&section.action, &class.module.action) {
            continue;
        }
        let complemented = lattice.subgroups().iter().any(|k| {
            k.order * v == g_order && k.elements.intersection(c_set) == n_sub.elements
        });
        if complemented {
            meet.intersect_with(&n_sub.elements);
        }
    }
    lattice
        .find(&meet)
        .ok_or_else(|| GroupError::FormulaMismatch("intersection is not a subgroup".into()))
}

/// A chief series `1 = N_0 < … < N_k = G` through lattice normal subgroups.
pub fn chief_series(lattice: &SubgroupLattice) -> Vec<usize> {
    let normals = lattice.normal_subgroups();
    let mut series = vec![lattice.bottom()];
    let mut current = lattice.bottom();
    while current != lattice.top() {
        let next = normals
            .iter()
            .copied()
            .filter(|&n| n != current && lattice.contains(n, current))
            .min_by_key(|&n| (lattice.subgroup(n).order, n))
            .expect("G is above every normal subgroup");
        series.push(next);
        current = next;
    }
    series
}

/// Complemented factors of [`chief_series`] that are `G`-isomorphic to the
/// class module.
pub fn chief_series_delta(lattice: &SubgroupLattice, class: &ChiefFactorClass) -> usize {
    let series = chief_series(lattice);
    let g_order = lattice.group().order();
    series
        .windows(2)
        .filter(|w| {
            let (lo, hi) = (w[0], w[1]);
            let Ok(section) = extract_module(lattice, lo, hi) else {
                return false;
            };
            if !modules_isomorphic(&section.action, &class.module.action) {
                return false;
            }
            let (lo_set, hi_set) = (&lattice.subgroup(lo).elements, &lattice.subgroup(hi).elements);
            let factor = hi_set.len() / lo_set.len();
            lattice.subgroups().iter().any(|k| {
                lo_set.is_subset(&k.elements)
                    && k.order * factor == g_order
                    && &k.elements.intersection(hi_set) == lo_set
            })
        })
        .count()
}

/// `μ⁺_n` and `μ°_n`, the maximal-subgroup counts of index `n` over classes
/// with `δ > r` and `δ ≤ r`.
#[derive(Debug, Clone, Serialize)]
pub struct MuSplit {
    pub n: usize,
    pub mu_plus: u64,
    pub mu_circ: u64,
    /// `(class position, δ ≤ r)` for the classes with `|V| = n`.
    pub classes: Vec<(usize, bool)>,
}

pub fn mu_split(lattice: &SubgroupLattice, classification: &Classification, n: usize) -> Result<MuSplit> {
    let g = lattice.group().order();
    if classification
        .residue
        .iter()
        .any(|&m| g / lattice.subgroup(m).order == n)
    {
        return Err(GroupError::NotSoluble);
    }
    let mut split = MuSplit {
        n,
        mu_plus: 0,
        mu_circ: 0,
        classes: Vec::new(),
    };
    for (i, class) in classification.classes.iter().enumerate() {
        if class.size() != n {
            continue;
        }
        let count = class.maximals.len() as u64;
        if class.delta_at_most_r() {
            split.mu_circ += count;
        } else {
            split.mu_plus += count;
        }
        split.classes.push((i, class.delta_at_most_r()));
    }
    Ok(split)
}

/// Checks at one index `n`.
#[derive(Debug, Clone, Serialize)]
pub struct IndexCheck {
    pub n: usize,
    pub m: u64,
    pub m_with_g: u64,
    pub mu_plus: u64,
    pub mu_circ: u64,
    /// `μ⁺_n ≤ m_n(G,g) n²`.
    pub plus_bound: bool,
    /// `log m_n(G,g)/log n ≥ log m_n(G)/log n - 3`, when `μ⁺_n ≥ μ°_n`.
    pub log_drop: Option<bool>,
    /// `⌈M(G)⌉ = ⌈log m_n(G)/log n⌉`.
    pub dominant: bool,
}

/// Checks for one class with `δ > r`.
#[derive(Debug, Clone, Serialize)]
pub struct ClassCheck {
    pub class: usize,
    pub n: usize,
    /// `|Max(G,g,V)|`.
    pub containing: u64,
    /// `((q^{δ-r} - 1)/(q - 1)) |V|^θ`.
    pub lower_bound: u64,
    pub lower_bound_holds: bool,
    /// `|Max(G,V)| ≤ |Max(G,g,V)| n²`.
    pub ratio_bound: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolubleReport {
    pub element: String,
    pub gap: ExactRational,
    pub indices: Vec<IndexCheck>,
    pub classes: Vec<ClassCheck>,
    /// Gap at most 11, required when some dominant `n` has `μ⁺_n ≥ μ°_n`.
    pub dominant_bound: Option<bool>,
    /// Gap at most 11, required when `G'` is nilpotent.
    pub nilpotent_derived_bound: Option<bool>,
}

impl SolubleReport {
    pub fn all_hold(&self) -> bool {
        self.indices.iter().all(|c| c.plus_bound && c.log_drop != Some(false))
            && self.classes.iter().all(|c| c.lower_bound_holds && c.ratio_bound)
            && self.dominant_bound != Some(false)
            && self.nilpotent_derived_bound != Some(false)
    }
}

/// Whether `G'` is nilpotent.
pub fn derived_subgroup_nilpotent(lattice: &SubgroupLattice) -> bool {
    let g = lattice.group();
    let derived = g.derived_subgroup(&g.full_set());
    g.is_nilpotent_subgroup(&derived)
}

/// The inequalities relating maximal-subgroup counts of `G` and of `G` with
/// the element `g`, for soluble `G`.
pub fn soluble_checks(lattice: &SubgroupLattice, classification: &Classification, g: usize) -> Result<SolubleReport> {
    let group = lattice.group();
    if !group.is_soluble() || !classification.residue.is_empty() {
        return Err(GroupError::NotSoluble);
    }
    let order = group.order();
    let empty = ElementSet::new(order);
    let single = ElementSet::from_indices(order, [g]);
    let m_all = genstats::max_counts(lattice, &empty);
    let m_g = genstats::max_counts(lattice, &single);
    let ceil_m = genstats::growth_degree(&m_all).ceil;

    let mut indices = Vec::new();
    let mut dominant_bound = None;
    let e_all = genstats::expected_waiting(lattice, &empty)?;
    let e_g = genstats::expected_waiting(lattice, &single)?;
    let gap = &e_all - &e_g;
    let within = gap <= ExactRational::from_integer(11);
    for (&n, &m) in &m_all {
        let split = mu_split(lattice, classification, n)?;
        let mg = m_g.get(&n).copied().unwrap_or(0);
        let n2 = (n * n) as u64;
        let drop_applies = split.mu_plus >= split.mu_circ;
        let dominant = ceil_log(n, m) == ceil_m;
        if dominant && drop_applies {
            dominant_bound = Some(within);
        }
        indices.push(IndexCheck {
            n,
            m,
            m_with_g: mg,
            mu_plus: split.mu_plus,
            mu_circ: split.mu_circ,
            plus_bound: split.mu_plus <= mg * n2,
            log_drop: drop_applies.then(|| mg * n2 * n as u64 >= m),
            dominant,
        });
    }

    let mut classes = Vec::new();
    for (i, class) in classification.classes.iter().enumerate() {
        if class.delta_at_most_r() {
            continue;
        }
        let n = class.size();
        let containing = class
            .maximals
            .iter()
            .filter(|&&m| lattice.subgroup(m).elements.contains(g))
            .count() as u64;
        let inv = &class.invariants;
        let lower_bound =
            gaussian_count(inv.q, class.crown.delta - inv.r as u32) * (n as u64).pow(inv.theta);
        classes.push(ClassCheck {
            class: i,
            n,
            containing,
            lower_bound,
            lower_bound_holds: containing >= lower_bound,
            ratio_bound: class.maximals.len() as u64 <= containing * (n * n) as u64,
        });
    }

    Ok(SolubleReport {
        element: group.element(g).to_cycle_string(),
        gap,
        indices,
        classes,
        dominant_bound,
        nilpotent_derived_bound: derived_subgroup_nilpotent(lattice).then_some(within),
    })
}

/// Crown summaries keyed by class position, for reports.
pub fn class_table(classification: &Classification) -> BTreeMap<usize, ClassSummary> {
    classification
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| (i, c.summary()))
        .collect()
}

