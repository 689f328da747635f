//! Permutations, enumerated groups, homomorphisms and product constructions.

mod group;
mod hom;
pub mod io;
mod permutation;
pub mod product;

pub use group::{Closure, FiniteGroup};
pub(crate) use group::{is_prime_power, prime_factors};
pub use hom::{automorphisms, epimorphisms_onto, quotient_group, EpimorphismCensus, GroupHomomorphism};
pub use permutation::Permutation;
pub use product::{direct_product, group_product, ProductAction, Realization, SemidirectProduct};
