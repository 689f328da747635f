//! The regression corpus and the acceptance criteria evaluated on it.
//!
//! Each criterion returns a [`CriterionResult`]; the CLI `corpus` command and
//! the acceptance test target both print one line per criterion.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::caps::Caps;
use crate::constructions::{self, BuilderSpec};
use crate::crowns;
use crate::error::Result;
use crate::genstats;
use crate::lattice::SubgroupLattice;
use crate::montecarlo;
use crate::oracle;
use crate::perm::FiniteGroup;
use crate::rational::ExactRational;

/// Builder strings of the corpus groups.
pub const CORPUS: &[&str] = &[
    "cyclic(2)",
    "cyclic(3)",
    "cyclic(4)",
    "cyclic(5)",
    "cyclic(6)",
    "cyclic(7)",
    "cyclic(8)",
    "cyclic(9)",
    "cyclic(12)",
    "dihedral(4)",
    "dihedral(5)",
    "dihedral(6)",
    "dihedral(8)",
    "dihedral(12)",
    "elementary_abelian(2,2)",
    "elementary_abelian(2,3)",
    "elementary_abelian(2,4)",
    "elementary_abelian(3,2)",
    "sym(3)",
    "sym(4)",
    "sym(5)",
    "alt(4)",
    "alt(5)",
    "quaternion8",
    "semidihedral16",
    "direct_product(cyclic(2),sym(3))",
    "direct_product(cyclic(3),sym(3))",
    "inversion_power(3,3)",
    "crown_power(klein,3)",
    "direct_power(alt(5),2)",
];

pub struct CorpusEntry {
    pub spec: String,
    pub group: Arc<FiniteGroup>,
    /// `None` when the lattice exceeds the caps.
    pub lattice: Option<SubgroupLattice>,
}

impl CorpusEntry {
    /// Empty set, then one representative per nontrivial conjugacy class.
    pub fn subsets(&self) -> Vec<ElementSet> {
        let n = self.group.order();
        let mut out = vec![ElementSet::new(n)];
        out.extend(class_representatives(&self.group).into_iter().map(|g| ElementSet::from_indices(n, [g])));
        out
    }
}

/// One element per conjugacy class, identity included.
pub fn class_representatives(group: &FiniteGroup) -> Vec<usize> {
    group.conjugacy_classes().into_iter().map(|c| c[0]).collect()
}

pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
    pub caps: Caps,
}

impl Corpus {
    /// Builds every corpus group and, within caps, its lattice.
    pub fn load(caps: &Caps) -> Result<Self> {
        let entries = CORPUS
            .iter()
            .map(|text| {
                let spec: BuilderSpec = text.parse()?;
                let group = Arc::new(spec.build(caps)?);
                let lattice = if group.order() <= caps.lattice_order {
                    Some(SubgroupLattice::enumerate(group.clone(), caps)?)
                } else {
                    None
                };
                Ok(CorpusEntry {
                    spec: text.to_string(),
                    group,
                    lattice,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Corpus {
            entries,
            caps: *caps,
        })
    }

    pub fn with_lattice(&self) -> impl Iterator<Item = (&CorpusEntry, &SubgroupLattice)> {
        self.entries
            .iter()
            .filter_map(|e| e.lattice.as_ref().map(|l| (e, l)))
    }

    pub fn get(&self, spec: &str) -> Option<&CorpusEntry> {
        self.entries.iter().find(|e| e.spec == spec)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] criterion {:>2} {} ({:.1}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds,
            self.detail
        )
    }
}

fn timed(id: u32, name: &'static str, body: impl FnOnce() -> Result<(bool, String)>) -> CriterionResult {
    let start = Instant::now();
    let (passed, detail) = match body() {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionResult {
        id,
        name,
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

/// `P_{Alt(7)}(2) = 229/315` from the full lattice.
pub fn criterion_alt7(caps: &Caps) -> CriterionResult {
    timed(1, "Alt(7) generation probability", || {
        let g = Arc::new(constructions::alt(7)?);
        let lattice = SubgroupLattice::enumerate(g.clone(), caps)?;
        let p = genstats::prob_generating(&lattice, &ElementSet::new(g.order()), 2);
        let expected = ExactRational::new(229, 315);
        Ok((
            p == expected,
            format!("{} subgroups, P(2) = {p} (expected {expected})", lattice.len()),
        ))
    })
}

/// Möbius values of `P_{G,Y}(n)` against brute-force tuple counts.
pub fn criterion_oracle(corpus: &Corpus) -> CriterionResult {
    timed(2, "oracle equivalence", || {
        let mut checked = 0;
        let mut failures = Vec::new();
        for (entry, lattice) in corpus.with_lattice().filter(|(e, _)| e.group.order() <= 24) {
            for y in entry.subsets() {
                for n in 0..=3 {
                    let mobius = genstats::prob_generating(lattice, &y, n);
                    let brute = oracle::prob_generating_brute(&entry.group, &y, n)?;
                    checked += 1;
                    if mobius != brute {
                        failures.push(format!("{} n={n}: {mobius} vs {brute}", entry.spec));
                    }
                }
            }
        }
        Ok((
            failures.is_empty(),
            format!("{checked} values compared, {} mismatches {:?}", failures.len(), failures),
        ))
    })
}

/// Möbius formula against the grouped geometric series.
pub fn criterion_series(corpus: &Corpus) -> CriterionResult {
    timed(3, "closed form vs series", || {
        let mut checked = 0;
        let mut failures = Vec::new();
        for (entry, lattice) in corpus.with_lattice().filter(|(e, _)| e.group.order() >= 2) {
            for y in entry.subsets() {
                let a = genstats::expected_waiting(lattice, &y)?;
                let b = genstats::expected_waiting_series(lattice, &y)?;
                checked += 1;
                if a != b {
                    failures.push(format!("{}: {a} vs {b}", entry.spec));
                }
            }
        }
        Ok((failures.is_empty(), format!("{checked} pairs, mismatches {failures:?}")))
    })
}

/// `e(C_2^d) = d + Σ_{i ≤ d} 1/(2^i - 1)` for `d = 1..4`.
pub fn criterion_elementary(caps: &Caps) -> CriterionResult {
    timed(4, "e of elementary abelian 2-groups", || {
        let mut values = Vec::new();
        let mut ok = true;
        for d in 1..=4usize {
            let g = Arc::new(constructions::elementary_abelian(2, d)?);
            let lattice = SubgroupLattice::enumerate(g.clone(), caps)?;
            let e = genstats::expected_waiting(&lattice, &ElementSet::new(g.order()))?;
            let formula = ExactRational::from_integer(d as i64)
                + (1..=d)
                    .map(|i| ExactRational::new(1, (1i64 << i) - 1))
                    .sum::<ExactRational>();
            ok &= e == formula;
            values.push(format!("d={d}: {e}"));
        }
        Ok((ok, values.join(", ")))
    })
}

/// `⌈M⌉ - 4 ≤ e ≤ ⌈M⌉ + 3` for every `(G,Y)` and the gap inequality for
/// singletons.
pub fn criterion_bounds(corpus: &Corpus) -> CriterionResult {
    timed(5, "waiting-time bounds and gap inequality", || {
        let mut checked = 0;
        let mut failures = Vec::new();
        let mut skipped = Vec::new();
        for entry in &corpus.entries {
            let Some(lattice) = &entry.lattice else {
                skipped.push(entry.spec.clone());
                continue;
            };
            if entry.group.order() < 2 {
                continue;
            }
            for y in entry.subsets() {
                let report = genstats::analyze(lattice, &y, 0)?;
                checked += 1;
                if !report.bounds_ok() {
                    failures.push(format!("{} Y={:?}", entry.spec, report.y));
                }
            }
        }
        Ok((
            failures.is_empty(),
            format!(
                "{checked} (G,Y) pairs, failures {failures:?}, skipped over caps {skipped:?}"
            ),
        ))
    })
}

/// `e(G,g) = e(G)` exactly for `g ∈ Frat(G)`.
pub fn criterion_frattini(corpus: &Corpus) -> CriterionResult {
    timed(6, "Frattini criterion", || {
        let mut checked = 0;
        let mut failures = Vec::new();
        for (entry, lattice) in corpus.with_lattice().filter(|(e, _)| e.group.order() >= 2) {
            for row in genstats::strong_scan(lattice)? {
                checked += 1;
                if !row.consistent() {
                    failures.push(format!("{} g={}", entry.spec, row.cycle));
                }
            }
        }
        Ok((failures.is_empty(), format!("{checked} classes, failures {failures:?}")))
    })
}

/// Crown counting formula on every abelian class of the soluble groups and
/// the instance inequalities for every element class.
pub fn criterion_crowns(corpus: &Corpus) -> CriterionResult {
    timed(7, "crown formulas", || {
        let mut classes = 0;
        let mut element_checks = 0;
        let mut failures = Vec::new();
        let mut delta3 = false;
        for (entry, lattice) in corpus.with_lattice() {
            if entry.group.order() < 2 || !entry.group.is_soluble() {
                continue;
            }
            let classification = crowns::chief_classify(lattice)?;
            if !classification.residue.is_empty() {
                failures.push(format!("{}: nonabelian residue in a soluble group", entry.spec));
            }
            for c in &classification.classes {
                classes += 1;
                if !c.crown.formula_holds() {
                    failures.push(format!("{}: class |V|={}", entry.spec, c.size()));
                }
                if entry.spec == "inversion_power(3,3)"
                    && c.delta() == 3
                    && c.invariants.q == 3
                    && c.maximals.len() == 39
                {
                    delta3 = true;
                }
            }
            for g in class_representatives(&entry.group) {
                let report = crowns::soluble_checks(lattice, &classification, g)?;
                element_checks += 1;
                if !report.all_hold() {
                    failures.push(format!("{} g={}", entry.spec, report.element));
                }
            }
        }
        if !delta3 {
            failures.push("inversion_power(3,3): no class with δ = 3 and 39 maximals".into());
        }
        Ok((
            failures.is_empty(),
            format!("{classes} classes, {element_checks} element checks, failures {failures:?}"),
        ))
    })
}

/// `e(G) - e(G,g) ≤ 11` when `G'` is nilpotent.
pub fn criterion_meta(corpus: &Corpus) -> CriterionResult {
    timed(8, "nilpotent derived subgroup gap", || {
        let mut groups = 0;
        let mut max_gap = ExactRational::zero();
        let mut failures = Vec::new();
        for (entry, lattice) in corpus.with_lattice().filter(|(e, _)| e.group.order() >= 2) {
            if !crowns::derived_subgroup_nilpotent(lattice) {
                continue;
            }
            groups += 1;
            for row in genstats::strong_scan(lattice)? {
                if row.gap > ExactRational::from_integer(11) {
                    failures.push(format!("{} g={}", entry.spec, row.cycle));
                }
                if row.gap > max_gap {
                    max_gap = row.gap.clone();
                }
            }
        }
        Ok((
            failures.is_empty(),
            format!("{groups} groups, largest gap {max_gap}, failures {failures:?}"),
        ))
    })
}

/// Maximal subgroups of `Alt(5)^2` and those containing `(σ,σ)`.
pub fn criterion_goursat(caps: &Caps) -> CriterionResult {
    timed(9, "Goursat analysis of Alt(5)^2", || {
        let s = Arc::new(constructions::alt(5)?);
        let report = constructions::goursat_maximals(&s, 2, caps)?;
        let kind1: u64 = report.kind1.values().sum();
        let sigma = (0..s.order())
            .find(|&x| s.element_order(x) == 5)
            .expect("5-cycle");
        let diag = constructions::diagonal_count(&s, 2, sigma, caps)?;
        let expected: BTreeMap<usize, u64> = [(6, 2), (60, 5)].into_iter().collect();
        let verification = diag.verification.as_ref();
        let passed = report.total == 162
            && kind1 == 42
            && report.kind2_count == 120
            && report.verified == Some(true)
            && diag.totals == expected
            && verification.is_some_and(|v| v.counts_match && v.complete);
        Ok((
            passed,
            format!(
                "total {} = {kind1} + {}, maximality verified {:?}; σ = {}: {:?}, direct {:?}, complete {:?}",
                report.total,
                report.kind2_count,
                report.verified,
                diag.sigma,
                diag.totals,
                verification.map(|v| &v.direct_counts),
                verification.map(|v| v.complete)
            ),
        ))
    })
}

/// The order-108 crown power: no index-3 maximal contains `g` and
/// `e(G,g) < e(G)`.
pub fn criterion_crown_power(caps: &Caps) -> CriterionResult {
    timed(10, "crown power strong element", || {
        let (h, modules) = constructions::klein_crown_modules(3)?;
        let cp = constructions::crown_power_group(h, modules, caps)?;
        let group = Arc::new(cp.product.group.clone());
        let lattice = SubgroupLattice::enumerate(group.clone(), caps)?;
        let single = ElementSet::from_indices(group.order(), [cp.strong_element]);
        let m3 = genstats::max_counts(&lattice, &single).get(&3).copied().unwrap_or(0);
        let m3_all = genstats::max_counts(&lattice, &ElementSet::new(group.order()))
            .get(&3)
            .copied()
            .unwrap_or(0);
        let e = genstats::expected_waiting(&lattice, &ElementSet::new(group.order()))?;
        let eg = genstats::expected_waiting(&lattice, &single)?;
        let passed = group.order() == 108 && m3 == 0 && cp.m_index_with_g == 0 && cp.m_index == m3_all && eg < e;
        Ok((
            passed,
            format!(
                "|G| = {}, m_3(G) = {m3_all} (module scan {}), m_3(G,g) = {m3} (module scan {}), e(G) = {e}, e(G,g) = {eg}",
                group.order(),
                cp.m_index,
                cp.m_index_with_g
            ),
        ))
    })
}

/// Seeded simulation against exact values.
pub fn criterion_monte_carlo(caps: &Caps) -> CriterionResult {
    timed(11, "Monte Carlo agreement", || {
        let cases = [
            ("cyclic(2)", ExactRational::from_integer(2)),
            ("sym(3)", ExactRational::new(29, 10)),
            ("elementary_abelian(2,3)", ExactRational::new(3 * 21 + 21 + 7 + 3, 21)),
        ];
        let mut ok = true;
        let mut lines = Vec::new();
        for (text, exact) in cases {
            let spec: BuilderSpec = text.parse()?;
            let g = spec.build(caps)?;
            let est = montecarlo::estimate_expectation(&g, &[], 100_000, 42, 4)?;
            let z = est.z_score(exact.to_f64());
            ok &= z <= 3.0;
            lines.push(format!("{text}: mean {:.4} vs {exact} (z = {z:.2})", est.mean));
        }
        Ok((ok, lines.join("; ")))
    })
}

/// The prime-set predicate on small primes.
pub fn criterion_p_primes() -> CriterionResult {
    timed(12, "prime set predicate", || {
        let expected = [(7, false), (11, false), (13, false), (17, false), (19, true), (23, false)];
        let mut ok = true;
        let mut got = Vec::new();
        for (p, want) in expected {
            let v = constructions::is_p_prime(p)?;
            ok &= v == want;
            got.push(format!("{p}:{v}"));
        }
        Ok((ok, got.join(" ")))
    })
}

/// Runs all twelve criteria.
pub fn run_all(caps: &Caps) -> Result<Vec<CriterionResult>> {
    let corpus = Corpus::load(caps)?;
    Ok(vec![
        criterion_alt7(caps),
        criterion_oracle(&corpus),
        criterion_series(&corpus),
        criterion_elementary(caps),
        criterion_bounds(&corpus),
        criterion_frattini(&corpus),
        criterion_crowns(&corpus),
        criterion_meta(&corpus),
        criterion_goursat(caps),
        criterion_crown_power(caps),
        criterion_monte_carlo(caps),
        criterion_p_primes(),
    ])
}
