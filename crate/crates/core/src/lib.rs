//! Exact and simulated waiting times for generating finite permutation groups.
//!
//! The crate enumerates small permutation groups completely, builds their
//! subgroup lattices with Möbius values, and derives from them the exact
//! expected number `e(G, Y)` of uniform random elements needed to generate
//! `G` together with a fixed subset `Y`. Around that core sit:
//!
//! * [`montecarlo`]: a seeded, worker-split simulation of the waiting time;
//! * [`crowns`]: chief-factor classes of maximal subgroups and crown counts;
//! * [`constructions`]: the catalog of example groups, maximal subgroups of
//!   direct powers of simple groups, and crown-power semidirect products;
//! * [`corpus`]: the regression corpus run by the CLI and the acceptance tests.
//!
//! Permutations act on the right: `(a * b)` applies `a` first, then `b`.

pub mod bitset;
pub mod caps;
pub mod constructions;
pub mod corpus;
pub mod crowns;
pub mod error;
pub mod genstats;
pub mod lattice;
pub mod linalg;
pub mod montecarlo;
pub mod oracle;
pub mod par;
pub mod perm;
pub mod rational;
pub mod report;

pub use bitset::ElementSet;
pub use caps::Caps;
pub use error::{GroupError, Result};
pub use lattice::SubgroupLattice;
pub use perm::{FiniteGroup, GroupHomomorphism, Permutation};
pub use rational::ExactRational;
