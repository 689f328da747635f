//! Exact generation statistics over a subgroup lattice.
//!
//! For `Y ⊆ G` the probability that `n` uniform elements generate `G`
//! together with `Y` is `P_{G,Y}(n) = Σ_{⟨Y⟩ ≤ H} μ_G(H) (|H|/|G|)^n`, and the
//! expected waiting time is `e(G,Y) = -Σ_{⟨Y⟩ ≤ H < G} μ_G(H) |G|/(|G|-|H|)`.
//! When `Y` already generates `G` the waiting time is 0.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::str::FromStr;

use dashu_float::DBig;
use num_bigint::BigUint;
use serde::Serialize;

use crate::bitset::ElementSet;
use crate::error::{GroupError, Result};
use crate::lattice::SubgroupLattice;
use crate::rational::ExactRational;

/// Significant decimal digits for growth-degree reals.
pub const GROWTH_DIGITS: usize = 60;
const MAX_DIGITS: usize = 1920;
const TIE_EXPONENT: i32 = -30;

pub const DEFAULT_DEPTH: usize = 10;

/// Lattice indices of the subgroups containing every element of `y`.
fn containing(lattice: &SubgroupLattice, y: &ElementSet) -> Vec<usize> {
    if y.is_empty() {
        return (0..lattice.len()).collect();
    }
    lattice
        .subgroups()
        .iter()
        .enumerate()
        .filter(|(_, s)| y.is_subset(&s.elements))
        .map(|(i, _)| i)
        .collect()
}

fn require_nontrivial(lattice: &SubgroupLattice) -> Result<()> {
    if lattice.group().order() < 2 {
        Err(GroupError::TrivialGroup)
    } else {
        Ok(())
    }
}

/// `P_{G,Y}(n)` by the Möbius expansion.
pub fn prob_generating(lattice: &SubgroupLattice, y: &ElementSet, n: usize) -> ExactRational {
    let order = lattice.group().order() as i64;
    containing(lattice, y)
        .into_iter()
        .filter(|&h| lattice.mu(h) != 0)
        .map(|h| {
            let ratio = ExactRational::new(lattice.subgroup(h).order as i64, order);
            ExactRational::from_integer(lattice.mu(h)) * ratio.pow(n as u32)
        })
        .sum()
}

/// `e(G,Y)` from the Möbius formula.
pub fn expected_waiting(lattice: &SubgroupLattice, y: &ElementSet) -> Result<ExactRational> {
    require_nontrivial(lattice)?;
    let top = lattice.top();
    let g = lattice.group().order() as i64;
    Ok(-containing(lattice, y)
        .into_iter()
        .filter(|&h| h != top && lattice.mu(h) != 0)
        .map(|h| {
            let order = lattice.subgroup(h).order as i64;
            ExactRational::new(lattice.mu(h) * g, g - order)
        })
        .sum::<ExactRational>())
}

/// `e(G,Y)` as `Σ_{n≥0} (1 - P_{G,Y}(n))`, with the series summed in closed
/// form. Subgroups are grouped by order and each group contributes
/// `-(Σ μ) · Σ_n r^n = -(Σ μ) / (1 - r)` with `r = |H|/|G|`.
pub fn expected_waiting_series(lattice: &SubgroupLattice, y: &ElementSet) -> Result<ExactRational> {
    require_nontrivial(lattice)?;
    let top = lattice.top();
    let order = lattice.group().order() as i64;
    let mut by_order: BTreeMap<usize, i64> = BTreeMap::new();
    for h in containing(lattice, y) {
        if h != top {
            *by_order.entry(lattice.subgroup(h).order).or_default() += lattice.mu(h);
        }
    }
    let one = ExactRational::one();
    Ok(by_order
        .into_iter()
        .filter(|&(_, mu)| mu != 0)
        .map(|(h, mu)| {
            let r = ExactRational::new(h as i64, order);
            let geometric = (&one - &r).recip();
            -(ExactRational::from_integer(mu) * geometric)
        })
        .sum())
}

/// `m_n(G,Y)`: maximal subgroups of each index containing `Y`.
pub fn max_counts(lattice: &SubgroupLattice, y: &ElementSet) -> BTreeMap<usize, u64> {
    let g = lattice.group().order();
    let mut table = BTreeMap::new();
    for m in lattice.maximal_subgroups() {
        let sub = lattice.subgroup(m);
        if y.is_subset(&sub.elements) {
            *table.entry(g / sub.order).or_insert(0) += 1;
        }
    }
    table
}

/// The growth degree `M = max log m_n / log n` of a count table.
#[derive(Debug, Clone)]
pub struct Growth {
    /// `None` when the table is empty.
    pub value: Option<DBig>,
    pub witness: Option<(usize, u64)>,
    /// `⌈M⌉`, exact.
    pub ceil: u64,
}

impl Growth {
    /// Decimal rendering; 0 for an empty table.
    pub fn to_decimal_string(&self) -> String {
        match &self.value {
            Some(v) => v.to_string(),
            None => "0".to_string(),
        }
    }

    /// The value as a real, 0 for an empty table.
    pub fn real(&self) -> DBig {
        self.value.clone().unwrap_or_else(|| decimal(0, GROWTH_DIGITS))
    }

    pub fn to_f64(&self) -> f64 {
        self.value
            .as_ref()
            .map(|v| v.to_f64().value())
            .unwrap_or(0.0)
    }
}

fn decimal(n: u64, digits: usize) -> DBig {
    DBig::from(n).with_precision(digits).value()
}

fn log_ratio(n: usize, m: u64, digits: usize) -> DBig {
    if m <= 1 {
        return decimal(0, digits);
    }
    decimal(m, digits).ln() / decimal(n as u64, digits).ln()
}

/// Smallest `k` with `n^k ≥ m`, i.e. `⌈log m / log n⌉`.
pub fn ceil_log(n: usize, m: u64) -> u64 {
    let target = BigUint::from(m);
    let base = BigUint::from(n);
    let mut power = BigUint::from(1u32);
    let mut k = 0;
    while power < target {
        power *= &base;
        k += 1;
    }
    k
}

fn tie_threshold() -> DBig {
    DBig::from_str(&format!("1e{TIE_EXPONENT}")).expect("valid literal")
}

/// Compares `log a.1 / log a.0` with `log b.1 / log b.0`, raising precision
/// while the difference is below the tie threshold. Unresolved ties compare
/// equal.
pub fn compare_ratios(a: (usize, u64), b: (usize, u64)) -> Ordering {
    let eps = tie_threshold();
    let neg = -eps.clone();
    let mut digits = GROWTH_DIGITS;
    loop {
        let diff = log_ratio(a.0, a.1, digits) - log_ratio(b.0, b.1, digits);
        if diff > eps {
            return Ordering::Greater;
        }
        if diff < neg {
            return Ordering::Less;
        }
        if digits >= MAX_DIGITS {
            return Ordering::Equal;
        }
        digits *= 2;
    }
}

/// `M` over a table `n ↦ m_n`; entries with `m_n = 0` are ignored.
pub fn growth_degree(table: &BTreeMap<usize, u64>) -> Growth {
    let mut witness: Option<(usize, u64)> = None;
    let mut ceil = 0;
    for (&n, &m) in table {
        if m == 0 {
            continue;
        }
        ceil = ceil.max(ceil_log(n, m));
        witness = match witness {
            None => Some((n, m)),
            Some(w) if compare_ratios((n, m), w) == Ordering::Greater => Some((n, m)),
            keep => keep,
        };
    }
    Growth {
        value: witness.map(|(n, m)| log_ratio(n, m, GROWTH_DIGITS)),
        witness,
        ceil,
    }
}

/// Converts an exact rational to a decimal real.
pub fn rational_to_real(r: &ExactRational, digits: usize) -> DBig {
    let num = DBig::from_str(&r.numer().to_string())
        .expect("integer literal")
        .with_precision(digits)
        .value();
    let den = DBig::from_str(&r.denom().to_string())
        .expect("integer literal")
        .with_precision(digits)
        .value();
    num / den
}

/// The two-sided bound `⌈M⌉ - 4 ≤ e ≤ ⌈M⌉ + 3`.
#[derive(Debug, Clone, Serialize)]
pub struct BoundVerdict {
    pub lower: i64,
    pub upper: i64,
    /// `e - (⌈M⌉ - 4)`.
    pub lower_slack: ExactRational,
    /// `(⌈M⌉ + 3) - e`.
    pub upper_slack: ExactRational,
    pub holds: bool,
}

pub fn bound_check(e: &ExactRational, ceil_m: u64) -> BoundVerdict {
    let lower = ceil_m as i64 - 4;
    let upper = ceil_m as i64 + 3;
    let lower_slack = e - &ExactRational::from_integer(lower);
    let upper_slack = &ExactRational::from_integer(upper) - e;
    let holds = !lower_slack.is_negative() && !upper_slack.is_negative();
    BoundVerdict {
        lower,
        upper,
        lower_slack,
        upper_slack,
        holds,
    }
}

/// `e(G) - e(G,g) ≤ M(G) - M(G,g) + 8` for a single element `g`.
#[derive(Debug, Clone, Serialize)]
pub struct GapVerdict {
    pub gap: ExactRational,
    /// `M(G) - M(G,g) + 8` as a decimal string.
    pub allowance: String,
    pub holds: bool,
}

pub fn gap_check(e_g: &ExactRational, e_gy: &ExactRational, m_g: &Growth, m_gy: &Growth) -> GapVerdict {
    let gap = e_g - e_gy;
    let allowance = m_g.real() - m_gy.real() + decimal(8, GROWTH_DIGITS);
    let holds = rational_to_real(&gap, GROWTH_DIGITS) <= allowance;
    GapVerdict {
        gap,
        allowance: allowance.to_string(),
        holds,
    }
}

/// Everything known about the generation of `G` together with `Y`.
#[derive(Debug, Clone)]
pub struct GenerationReport {
    pub group: String,
    /// Elements of `Y` in cycle notation.
    pub y: Vec<String>,
    pub y_generates: bool,
    pub e: ExactRational,
    /// `P_{G,Y}(n)` for `n = 0..=depth`.
    pub p_table: Vec<ExactRational>,
    pub m_table: BTreeMap<usize, u64>,
    pub growth: Growth,
    pub bounds: BoundVerdict,
    /// Present when `Y` is a single element.
    pub gap: Option<GapVerdict>,
}

impl GenerationReport {
    pub fn bounds_ok(&self) -> bool {
        self.bounds.holds && self.gap.as_ref().is_none_or(|g| g.holds)
    }
}

/// Builds the report for `(G, Y)` with `P` tabulated up to `depth`.
pub fn analyze(lattice: &SubgroupLattice, y: &ElementSet, depth: usize) -> Result<GenerationReport> {
    require_nontrivial(lattice)?;
    let group = lattice.group();
    let e = expected_waiting(lattice, y)?;
    let p_table = (0..=depth).map(|n| prob_generating(lattice, y, n)).collect();
    let m_table = max_counts(lattice, y);
    let growth = growth_degree(&m_table);
    let bounds = bound_check(&e, growth.ceil);
    let gap = if y.len() == 1 {
        let whole = ElementSet::new(group.order());
        let e_g = expected_waiting(lattice, &whole)?;
        let m_g = growth_degree(&max_counts(lattice, &whole));
        Some(gap_check(&e_g, &e, &m_g, &growth))
    } else {
        None
    };
    Ok(GenerationReport {
        group: group.label(),
        y: y.iter().map(|i| group.element(i).to_cycle_string()).collect(),
        y_generates: lattice.generated_by(y) == lattice.top(),
        e,
        p_table,
        m_table,
        growth,
        bounds,
        gap,
    })
}

/// One row of the strong-generator scan, for a conjugacy class.
#[derive(Debug, Clone, Serialize)]
pub struct ScanRow {
    pub representative: usize,
    pub cycle: String,
    pub class_size: usize,
    pub e: ExactRational,
    /// `e(G) - e(G,g)`.
    pub gap: ExactRational,
    pub in_frattini: bool,
    pub equals_e: bool,
}

impl ScanRow {
    /// Whether equality with `e(G)` agrees with Frattini membership.
    pub fn consistent(&self) -> bool {
        self.equals_e == self.in_frattini
    }
}

/// `e(G,g)` for one representative of each conjugacy class.
pub fn strong_scan(lattice: &SubgroupLattice) -> Result<Vec<ScanRow>> {
    require_nontrivial(lattice)?;
    let group = lattice.group();
    let n = group.order();
    let e_g = expected_waiting(lattice, &ElementSet::new(n))?;
    let frattini = &lattice.subgroup(lattice.frattini()).elements;
    group
        .conjugacy_classes()
        .into_iter()
        .map(|class| {
            let g = class[0];
            let e = expected_waiting(lattice, &ElementSet::from_indices(n, [g]))?;
            let gap = &e_g - &e;
            Ok(ScanRow {
                representative: g,
                cycle: group.element(g).to_cycle_string(),
                class_size: class.len(),
                equals_e: gap.is_zero(),
                e,
                gap,
                in_frattini: frattini.contains(g),
            })
        })
        .collect()
}

/// `d(G)`, the least `k ≥ 1` with `P_G(k) > 0`.
pub fn min_generators(lattice: &SubgroupLattice) -> Result<usize> {
    require_nontrivial(lattice)?;
    let empty = ElementSet::new(lattice.group().order());
    let mut k = 1;
    loop {
        if prob_generating(lattice, &empty, k).is_positive() {
            return Ok(k);
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceil_log_is_exact_on_powers() {
        assert_eq!(ceil_log(2, 1), 0);
        assert_eq!(ceil_log(2, 4), 2);
        assert_eq!(ceil_log(2, 5), 3);
        assert_eq!(ceil_log(3, 3), 1);
        assert_eq!(ceil_log(9, 81), 2);
    }

    #[test]
    fn growth_of_small_tables() {
        let empty = growth_degree(&BTreeMap::new());
        assert!(empty.value.is_none());
        assert_eq!(empty.ceil, 0);
        assert_eq!(empty.to_decimal_string(), "0");

        let s3: BTreeMap<usize, u64> = [(2, 1), (3, 3)].into_iter().collect();
        let g = growth_degree(&s3);
        assert_eq!(g.witness, Some((3, 3)));
        assert_eq!(g.ceil, 1);
        assert!((g.to_f64() - 1.0).abs() < 1e-12);

        let klein: BTreeMap<usize, u64> = [(2, 3)].into_iter().collect();
        let g = growth_degree(&klein);
        assert!((g.to_f64() - 3f64.ln() / 2f64.ln()).abs() < 1e-12);
        assert_eq!(g.ceil, 2);
    }

    #[test]
    fn exact_ties_keep_the_smaller_index() {
        // log 2 / log 3 = log 4 / log 9
        assert_eq!(compare_ratios((3, 2), (9, 4)), Ordering::Equal);
        let t: BTreeMap<usize, u64> = [(3, 2), (9, 4)].into_iter().collect();
        assert_eq!(growth_degree(&t).witness, Some((3, 2)));
        assert_eq!(compare_ratios((5, 4), (6, 4)), Ordering::Greater);
    }

    #[test]
    fn bound_verdict_slacks() {
        let v = bound_check(&ExactRational::new(29, 10), 1);
        assert!(v.holds);
        assert_eq!(v.lower, -3);
        assert_eq!(v.upper_slack, ExactRational::new(11, 10));
        assert!(!bound_check(&ExactRational::from_integer(9), 1).holds);
    }
}
