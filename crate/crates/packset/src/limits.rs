/// Resource guards for the enumerative parts of the crate. None of the
/// algorithms here scale past desk-sized instances; these caps turn runaway
/// inputs into errors instead of hangs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum ambient dimension for vertex/halfspace conversions.
    pub dim_cap: usize,
    /// Maximum number of lattice points enumerated per knapsack box.
    pub point_budget: u64,
    /// Maximum number of arrangement cells tracked during enumeration.
    pub cell_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            dim_cap: 8,
            point_budget: 10_000_000,
            cell_budget: 100_000,
        }
    }
}

impl Limits {
    /// Default limits with both enumeration budgets replaced.
    pub fn with_budget(budget: u64) -> Self {
        Limits {
            point_budget: budget,
            cell_budget: budget,
            ..Limits::default()
        }
    }
}
