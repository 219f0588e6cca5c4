/// Numeric guards shared by every search in the crate.
///
/// Defaults are sized so the built-in example runs in seconds without
/// tripping any of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Upper bound on candidates in any exhaustive search (iso search,
    /// idempotent search, raw enumeration, oracle epimorphism search).
    pub guard: u64,
    /// Per-vertex dimension bound for enumerated universes.
    pub dim_bound: usize,
    /// Oracle multiplicity bound per class member; `None` means
    /// "largest vertex dimension of the target plus one".
    pub mult_bound: Option<usize>,
    /// Maximum resolution depth searched by the resolution-dimension routines.
    pub depth: usize,
    /// Maximum number of paths materialised while computing a path basis.
    pub path_guard: usize,
    /// Random invertibility probes before falling back to enumeration.
    pub random_tries: usize,
    pub seed: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            guard: 1 << 20,
            dim_bound: 1,
            mult_bound: None,
            depth: 6,
            path_guard: 200_000,
            random_tries: 48,
            seed: 0x5eed_c0de,
        }
    }
}
