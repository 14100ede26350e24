//! Resource caps shared by every stage.

/// Caps applied by the enumerators, the solver and the assembly loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest dimension for which F₂^d sets are materialized.
    pub max_enum_dim: u32,
    /// Largest number of cells, vertices or set elements materialized at once.
    pub max_cells: u64,
    /// Node expansions allowed to the exact coloring search.
    pub node_budget: u64,
    /// Largest modulus m allowed for a witness.
    pub max_modulus: u64,
    /// Largest |S| for an emitted set.
    pub max_set: usize,
    /// Largest dimension tried when searching F₂^d.
    pub max_d: u32,
    /// Largest denominator tried for rational α.
    pub max_denominator: u64,
    /// Elements of an integer stream examined before giving up.
    pub horizon: u64,
    /// Largest orbit graph searched for chromatic subgraphs.
    pub orbit_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_enum_dim: 26,
            max_cells: 1 << 26,
            node_budget: 10_000_000,
            max_modulus: 10_000_000,
            max_set: 10_000,
            max_d: 26,
            max_denominator: 1024,
            horizon: 100_000,
            orbit_vertices: 96,
        }
    }
}

impl Limits {
    /// Defaults, with `RECFORGE_MAX_CELLS` applied when set.
    pub fn from_env() -> Self {
        let mut l = Limits::default();
        if let Some(v) = std::env::var("RECFORGE_MAX_CELLS").ok().and_then(|s| s.trim().parse().ok()) {
            l.max_cells = v;
        }
        l
    }
}
