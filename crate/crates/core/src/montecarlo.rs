//! Simulated waiting times.
//!
//! Randomness comes from ChaCha8 seeded with the user's 64-bit seed; worker
//! `w` uses stream `w` of that seed and draws a fixed contiguous block of the
//! samples, so an estimate depends only on `(seed, workers, samples)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bitset::ElementSet;
use crate::error::{GroupError, Result};
use crate::par;
use crate::perm::{Closure, FiniteGroup};

/// Draw limit for a single waiting time.
pub const ITERATION_CAP: u64 = 10_000_000;

/// The subgroup generated so far during one sample.
struct Running {
    set: ElementSet,
    members: Vec<u32>,
    gens: Vec<usize>,
}

impl Running {
    fn new(group: &FiniteGroup, y: &[usize]) -> Self {
        let set = group.closure(y);
        let members = set.iter().map(|x| x as u32).collect();
        Running {
            set,
            members,
            gens: y.to_vec(),
        }
    }

    /// Joins `x`; the new subgroup is built from right cosets of the old one.
    fn absorb(&mut self, group: &FiniteGroup, x: usize) {
        if self.set.contains(x) {
            return;
        }
        match group.extend_closure(&self.set, &self.members, &self.gens, x, usize::MAX) {
            Closure::Subgroup(s) => {
                self.members = s.iter().map(|y| y as u32).collect();
                self.set = s;
                self.gens.push(x);
            }
            Closure::Exceeded => unreachable!("unbounded closure"),
        }
    }
}

/// Draws uniform elements until they generate `G` together with `y`, and
/// returns the number of draws (0 when `y` already generates).
pub fn sample_tau<R: Rng>(group: &FiniteGroup, y: &[usize], rng: &mut R) -> Result<u64> {
    let n = group.order();
    let mut running = Running::new(group, y);
    let mut draws = 0;
    while running.members.len() < n {
        if draws >= ITERATION_CAP {
            return Err(GroupError::IterationCap(ITERATION_CAP));
        }
        draws += 1;
        let x = rng.random_range(0..n);
        running.absorb(group, x);
    }
    Ok(draws)
}

/// Like [`sample_tau`], also returning the subgroup after each draw.
pub fn sample_trace<R: Rng>(group: &FiniteGroup, y: &[usize], rng: &mut R) -> Result<Vec<(usize, ElementSet)>> {
    let n = group.order();
    let mut running = Running::new(group, y);
    let mut trace = Vec::new();
    while running.members.len() < n {
        if trace.len() as u64 >= ITERATION_CAP {
            return Err(GroupError::IterationCap(ITERATION_CAP));
        }
        let x = rng.random_range(0..n);
        running.absorb(group, x);
        trace.push((x, running.set.clone()));
    }
    Ok(trace)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McEstimate {
    pub sample_count: u64,
    pub mean: f64,
    /// Unbiased sample variance.
    pub variance: f64,
    pub standard_error: f64,
    pub seed: u64,
    pub workers: usize,
    pub max_observed_tau: u64,
}

impl McEstimate {
    /// Distance of the mean from `exact` in standard errors.
    pub fn z_score(&self, exact: f64) -> f64 {
        if self.standard_error == 0.0 {
            if (self.mean - exact).abs() == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (self.mean - exact).abs() / self.standard_error
        }
    }
}

/// Seeded generator for worker `w`.
pub fn worker_rng(seed: u64, worker: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(worker as u64);
    rng
}

/// Estimates `e(G,Y)` from `samples` waiting times split over `workers`.
pub fn estimate_expectation(
    group: &FiniteGroup,
    y: &[usize],
    samples: u64,
    seed: u64,
    workers: usize,
) -> Result<McEstimate> {
    if samples == 0 {
        return Err(GroupError::InvalidArgument("samples must be at least 1".into()));
    }
    if workers == 0 {
        return Err(GroupError::InvalidArgument("workers must be at least 1".into()));
    }
    let per = samples / workers as u64;
    let extra = samples % workers as u64;
    let partials: Vec<Result<(u128, u128, u64)>> = par::map_range(workers, |w| {
        let count = per + u64::from((w as u64) < extra);
        let mut rng = worker_rng(seed, w);
        let (mut sum, mut sum_sq, mut max) = (0u128, 0u128, 0u64);
        for _ in 0..count {
            let t = sample_tau(group, y, &mut rng)?;
            sum += t as u128;
            sum_sq += (t as u128) * (t as u128);
            max = max.max(t);
        }
        Ok((sum, sum_sq, max))
    });
    let (mut sum, mut sum_sq, mut max) = (0u128, 0u128, 0u64);
    for p in partials {
        let (s, q, m) = p?;
        sum += s;
        sum_sq += q;
        max = max.max(m);
    }
    let n = samples as u128;
    let mean = sum as f64 / samples as f64;
    let variance = if samples < 2 {
        0.0
    } else {
        (n * sum_sq - sum * sum) as f64 / (n * (n - 1)) as f64
    };
    Ok(McEstimate {
        sample_count: samples,
        mean,
        variance,
        standard_error: (variance / samples as f64).sqrt(),
        seed,
        workers,
        max_observed_tau: max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn sym3() -> FiniteGroup {
        FiniteGroup::generate(&[
            Permutation::parse_cycles("(1,2)", 3).unwrap(),
            Permutation::parse_cycles("(1,2,3)", 3).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn generating_y_gives_zero() {
        let g = sym3();
        let y = g.generator_indices().to_vec();
        let est = estimate_expectation(&g, &y, 50, 1, 2).unwrap();
        assert_eq!(est.mean, 0.0);
        assert_eq!(est.variance, 0.0);
        assert_eq!(est.max_observed_tau, 0);
    }

    #[test]
    fn deterministic_for_fixed_parameters() {
        let g = sym3();
        let a = estimate_expectation(&g, &[], 2000, 7, 3).unwrap();
        let b = estimate_expectation(&g, &[], 2000, 7, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.sample_count, 2000);
    }

    #[test]
    fn trace_is_monotone_and_matches_closure() {
        let g = sym3();
        let mut rng = worker_rng(3, 0);
        for _ in 0..50 {
            let trace = sample_trace(&g, &[], &mut rng).unwrap();
            let mut drawn = Vec::new();
            let mut prev = g.trivial_set();
            for (x, set) in &trace {
                drawn.push(*x);
                assert!(prev.is_subset(set));
                assert_eq!(*set, g.closure(&drawn));
                prev = set.clone();
            }
            assert_eq!(prev.len(), 6);
        }
    }
}
