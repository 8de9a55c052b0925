use serde::{Deserialize, Serialize};

use crate::permgroup::DEFAULT_ELEMENT_CAP;

/// Tolerances and size caps shared by every pipeline stage. Reports echo the
/// record they were produced with.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Config {
    /// Character-table orthogonality residual.
    pub orthogonality_tol: f64,
    /// Distance to the nearest integer accepted when rounding.
    pub integrality_tol: f64,
    /// Singular-value gap used by numeric ranks.
    pub rank_gap: f64,
    pub element_cap: usize,
    pub class_cap: usize,
    /// Largest origami on which the homology oracle runs.
    pub homology_square_cap: usize,
    /// Veech power search stops at `factor · n_squares²`.
    pub veech_search_factor: usize,
    /// Seed for the random combinations of class matrices.
    pub table_seed: u64,
    pub table_attempts: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            orthogonality_tol: 1e-8,
            integrality_tol: 1e-6,
            rank_gap: 1e-6,
            element_cap: DEFAULT_ELEMENT_CAP,
            class_cap: 200,
            homology_square_cap: 200,
            veech_search_factor: 4,
            table_seed: 0x5eed,
            table_attempts: 16,
        }
    }
}

/// Rounds `x` to the nearest integer, failing when it is farther than `tol`.
pub(crate) fn round_integral(x: f64, tol: f64) -> Option<i64> {
    let r = x.round();
    ((x - r).abs() <= tol).then_some(r as i64)
}
