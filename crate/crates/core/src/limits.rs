//! Search budgets shared by the bounded solvers.

use serde::{Deserialize, Serialize};

use crate::automorphisms::DEFAULT_WORD_CAP;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Longest intermediate word any computation may build.
    pub word_cap: usize,
    /// Length bound `L` for the brute-force fixed subgroup search.
    pub fix_search_len: usize,
    /// Length bound for the brute-force twisted conjugator search.
    pub twisted_search_len: usize,
    /// Radius `K` of the orbit scan for automorphisms of unknown class.
    pub orbit_radius: u32,
    /// `P_max` for the fallback scan in the power-twisted decider.
    pub power_scan_max: u32,
    /// Largest divisor of `p₀` tried when looking for a periodic power.
    pub divisor_budget: u64,
    /// Largest order tested when classifying an automorphism.
    pub finite_order_max: u32,
    /// Length bound for enumerating periodic words.
    pub periodic_search_len: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            word_cap: DEFAULT_WORD_CAP,
            fix_search_len: 8,
            twisted_search_len: 8,
            orbit_radius: 16,
            power_scan_max: 8,
            divisor_budget: 5040,
            finite_order_max: 24,
            periodic_search_len: 6,
        }
    }
}

impl Limits {
    /// Defaults scaled to the rank of the free factor; exhaustive searches
    /// are shortened above rank 3.
    pub fn for_rank(rank: u32) -> Limits {
        let mut l = Limits::default();
        if rank > 3 {
            l.fix_search_len = 5;
            l.twisted_search_len = 6;
            l.periodic_search_len = 4;
        }
        l
    }
}
