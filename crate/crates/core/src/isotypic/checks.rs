use serde::Serialize;

use super::report::MultiplicityReport;
use crate::characters::RealType;
use crate::origami::QuasiregularVerdict;

/// Outcome of one named consistency check.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Check { name, passed, detail: detail.into() }
    }
}

/// Sum rules and the structural theorems on multiplicities. Recomputed from
/// the report so that a tampered report is caught.
pub fn structural_checks(report: &MultiplicityReport, verdict: &QuasiregularVerdict) -> Vec<Check> {
    let irr = &report.irreducibles;
    let sum_m: usize = irr.iter().map(|e| e.m * e.dim).sum();
    let sum_ell: usize = irr.iter().map(|e| e.ell * e.dim).sum();
    let h1_zero = 2 * report.genus - 2;
    let ell0 = irr[0].ell;
    let ones: Vec<&str> = irr.iter().filter(|e| e.ell == 1).map(|e| e.label.as_str()).collect();
    let below: Vec<&str> = irr.iter().filter(|e| e.ell < ell0).map(|e| e.label.as_str()).collect();
    let odd: Vec<&str> =
        irr.iter().filter(|e| e.kind != RealType::Complex && e.ell % 2 != 0).map(|e| e.label.as_str()).collect();
    let small: Vec<&str> = irr.iter().filter(|e| e.ell < 2).map(|e| e.label.as_str()).collect();
    vec![
        Check::new(
            "sum-rule-vertices",
            sum_m == report.sigma_star_count,
            format!("Σ m·dim = {sum_m}, #Σ* = {}", report.sigma_star_count),
        ),
        Check::new("sum-rule-homology", sum_ell == h1_zero, format!("Σ ℓ·dim = {sum_ell}, 2g−2 = {h1_zero}")),
        Check::new("multiplicity-never-one", ones.is_empty(), format!("ℓ = 1 for {ones:?}")),
        Check::new("trivial-multiplicity-is-minimal", below.is_empty(), format!("ℓ_0 = {ell0}; smaller for {below:?}")),
        Check::new("self-dual-multiplicities-even", odd.is_empty(), format!("odd ℓ for real or quaternionic {odd:?}")),
        Check::new(
            "trivial-absent-iff-quasiregular",
            (ell0 == 0) == report.quasiregular,
            format!("ℓ_0 = {ell0}, quasiregular = {}", report.quasiregular),
        ),
        Check::new(
            "non-quasiregular-multiplicities-exceed-one",
            report.quasiregular || small.is_empty(),
            format!("ℓ < 2 for {small:?}"),
        ),
        Check::new(
            "quasiregularity-criteria-agree",
            verdict.conjugates_in_normalizer == verdict.normal_with_abelian_quotient
                && verdict.conjugates_in_normalizer == report.quasiregular,
            format!(
                "conjugates of c in N: {}, G/N abelian: {}",
                verdict.conjugates_in_normalizer, verdict.normal_with_abelian_quotient
            ),
        ),
    ]
}
