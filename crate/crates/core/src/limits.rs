//! Resource ceilings for every exhaustive scan.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Elements of a Hom space scanned by isomorphism and automorphism tests.
    pub hom_scan: u64,
    /// Subspaces (or products of subspace counts) enumerated at once.
    pub subspaces: u64,
    /// Points of a representation variety scanned by iso-class enumeration.
    pub points: u64,
    /// Elements of an Ext or Hom space scanned by stratum counts.
    pub strata: u64,
    /// Largest prime the interpolation is allowed to sample.
    pub max_prime: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { hom_scan: 1_000_000, subspaces: 10_000_000, points: 10_000_000, strata: 10_000_000, max_prime: 101 }
    }
}
