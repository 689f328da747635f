//! Size limits shared by every enumeration routine.
//!
//! Exceeding a cap is always an error; nothing is silently truncated.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest group order `generate_group` will enumerate.
    pub order: usize,
    /// Largest group order whose subgroup lattice is enumerated.
    pub lattice_order: usize,
    /// Largest number of subgroups in a lattice.
    pub subgroups: usize,
    /// Largest group order for the automorphism search.
    pub automorphism_order: usize,
    /// Groups up to this order keep a full multiplication table.
    pub table_order: usize,
    /// Homomorphisms with larger domains are validated on random pairs.
    pub exhaustive_hom_check: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            order: 100_000,
            lattice_order: 4000,
            subgroups: 100_000,
            automorphism_order: 360,
            table_order: 4096,
            exhaustive_hom_check: 4096,
        }
    }
}

pub const ENV_ORDER: &str = "GENWAIT_ORDER_CAP";
pub const ENV_LATTICE_ORDER: &str = "GENWAIT_LATTICE_CAP";
pub const ENV_SUBGROUPS: &str = "GENWAIT_SUBGROUP_CAP";
pub const ENV_AUTOMORPHISM_ORDER: &str = "GENWAIT_AUT_CAP";

impl Caps {
    /// Defaults overridden by the `GENWAIT_*_CAP` environment variables.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        let read = |name: &str, slot: &mut usize| {
            if let Some(v) = std::env::var(name).ok().and_then(|s| s.trim().parse().ok()) {
                *slot = v;
            }
        };
        read(ENV_ORDER, &mut caps.order);
        read(ENV_LATTICE_ORDER, &mut caps.lattice_order);
        read(ENV_SUBGROUPS, &mut caps.subgroups);
        read(ENV_AUTOMORPHISM_ORDER, &mut caps.automorphism_order);
        caps
    }
}
