//! Multiplicities of the irreducibles of the automorphism group in
//! `H₀(Σ*)` and `H₁⁽⁰⁾`, real-class bookkeeping and theorem checks.

mod checks;
pub mod closed_form;
mod multiplicity;
mod report;

pub use checks::{structural_checks, Check};
pub use closed_form::{sl2p_closed_form, sn_closed_form, Sl2Case, Sl2Irrep};
pub use multiplicity::{multiplicities, vertex_multiplicities, Multiplicities};
pub use report::{IrreducibleEntry, IsometryGroup, MultiplicityReport, RealClassEntry};
