//! Resource limits shared by the library entry points.

/// Hard upper bound on the word width `m`. Binary words are packed into a
/// `u32` and the column alphabet grows as `3^m`, so nothing past this width
/// is reachable in practice anyway.
pub const MAX_WIDTH: usize = 24;

/// Caps applied before any potentially expensive computation starts.
///
/// The defaults keep every operation comfortably inside desktop budgets:
/// matrix construction enumerates `~3^m` column words, the census backtracks
/// over an explicit grid, and dense matrix powers hold `dim^2` big integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum width accepted by matrix construction (`3^14` is ~4.8M words).
    pub width_cap: usize,
    /// Maximum vertex count accepted by the brute-force census.
    pub census_vertex_cap: usize,
    /// Largest matrix dimension for which dense powers are used; above this
    /// the counting layer switches to per-column sparse matrix-vector chains.
    pub dense_dim_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            width_cap: 14,
            census_vertex_cap: 36,
            dense_dim_cap: 1024,
        }
    }
}
