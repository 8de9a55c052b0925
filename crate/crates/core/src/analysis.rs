//! The full pipeline on one origami: automorphisms, multiplicities from the
//! coset formula, structural checks, and the chain-level oracle.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::characters::{real_classification, CharacterTable, RealType};
use crate::config::Config;
use crate::error::Result;
use crate::families::Observed;
use crate::homology::{
    classify_affine, minimal_veech_power, projector_oracle, AffineClassification, AffineHomologyAction, GammaAction,
    H1Model, ProjectorReport, RationalProjectors, Shear,
};
use crate::isotypic::{multiplicities, structural_checks, Check, Multiplicities, MultiplicityReport};
use crate::linalg;
use crate::origami::{CosetInvariants, GroupDataOrigami, QuasiregularVerdict};

/// Deliberate corruptions used by negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Injection {
    /// Adds two to `ℓ` of the trivial character before any check runs. An
    /// even shift keeps the real-type parity, so the report still assembles.
    WrongMultiplicity,
    /// Corrupts one entry of the intersection matrix.
    BrokenIntersectionForm,
}

#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    pub run_oracle: bool,
    /// Build and classify the shear actions at their minimal Veech powers.
    pub affine: bool,
    /// Recompute multiplicities under the other commutator convention.
    pub check_conventions: bool,
    /// Irreducible label to a user-supplied signature `(p, q)`.
    pub signatures: BTreeMap<String, (usize, usize)>,
    pub inject: Option<Injection>,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            run_oracle: true,
            affine: true,
            check_conventions: true,
            signatures: BTreeMap::new(),
            inject: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrigamiSummary {
    pub n_squares: usize,
    pub genus: usize,
    pub stratum: Vec<usize>,
    pub sigma_star_count: usize,
    pub regular: bool,
    pub quasiregular: bool,
    pub convention: &'static str,
    pub group_order: usize,
    pub subgroup_order: usize,
    pub normalizer_index: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct AutomorphismSummary {
    pub order: usize,
    pub abelian: bool,
    pub classes: usize,
    pub exponent: u64,
    pub real: usize,
    pub quaternionic: usize,
    pub complex: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum OracleStatus {
    Passed,
    Failed { failures: Vec<String> },
    Skipped { reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct AffineSummary {
    pub shear: &'static str,
    pub power: i64,
    pub variant_count: usize,
    pub classification: AffineClassification,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologySummary {
    pub rank: usize,
    pub betti: (usize, usize, usize),
    pub relative_dim: usize,
    pub reduced: bool,
    pub projectors: Option<ProjectorReport>,
    pub affine: Vec<AffineSummary>,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Analysis {
    pub origami: OrigamiSummary,
    pub automorphisms: AutomorphismSummary,
    pub verdict: QuasiregularVerdict,
    pub invariants: CosetInvariants,
    pub multiplicities: Multiplicities,
    pub report: MultiplicityReport,
    pub checks: Vec<Check>,
    pub oracle: OracleStatus,
    pub homology: Option<HomologySummary>,
    pub config: Config,
}

impl Analysis {
    /// Names and details of every failed check, plus oracle failures.
    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .checks
            .iter()
            .chain(self.homology.iter().flat_map(|h| h.checks.iter()))
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect();
        if let OracleStatus::Failed { failures } = &self.oracle {
            out.extend(failures.iter().map(|f| format!("projector-oracle: {f}")));
        }
        out
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn observed(&self) -> Observed {
        Observed {
            gamma_order: self.automorphisms.order,
            gamma_abelian: self.automorphisms.abelian,
            regular: self.origami.regular,
            quasiregular: self.origami.quasiregular,
            quotient_cyclic: self.verdict.quotient_cyclic,
            order_c: self.invariants.order_c,
            genus: self.origami.genus,
            n_squares: self.origami.n_squares,
            ell: self.report.irreducibles.iter().map(|e| (e.label.clone(), e.ell)).collect(),
            fs_counts: (self.automorphisms.real, self.automorphisms.quaternionic, self.automorphisms.complex),
        }
    }
}

pub fn analyze(
    data: &GroupDataOrigami,
    table: &CharacterTable,
    opts: &AnalysisOptions,
    cfg: &Config,
) -> Result<Analysis> {
    let o = data.origami();
    let sing = o.singularity_data();
    let verdict = data.quasiregular_verdict()?;
    let invariants = data.coset_invariants()?;
    let mut mult = multiplicities(data, &invariants, table)?;
    if opts.inject == Some(Injection::WrongMultiplicity) {
        mult.ell[0] += 2;
    }
    let info = real_classification(table)?;
    let quasiregular = verdict.conjugates_in_normalizer;
    let report = MultiplicityReport::new(
        &mult,
        table,
        &info,
        sing.genus,
        sing.sigma_star_count,
        quasiregular,
        &opts.signatures,
    )?;

    let mut checks = structural_checks(&report, &verdict);
    let automorphisms_ok = data.check_automorphisms();
    checks.push(Check::new(
        "automorphisms-match-centralizer",
        automorphisms_ok.is_ok(),
        automorphisms_ok.err().map(|e| e.to_string()).unwrap_or_default(),
    ));
    if opts.check_conventions {
        let other = data.with_convention(data.convention().other());
        let other_inv = other.coset_invariants()?;
        let other_mult = multiplicities(&other, &other_inv, table)?;
        checks.push(Check::new(
            "convention-independent",
            other_mult.ell == mult.ell && other_mult.m == mult.m,
            format!("{} convention gives ℓ = {:?}", other.convention().as_str(), other_mult.ell),
        ));
    }

    let (oracle, homology) = if !opts.run_oracle {
        (OracleStatus::Skipped { reason: "disabled".into() }, None)
    } else if data.n_squares() > cfg.homology_square_cap {
        let reason = format!("{} squares exceed the homology cap of {}", data.n_squares(), cfg.homology_square_cap);
        (OracleStatus::Skipped { reason }, None)
    } else {
        let h = homology_summary(data, table, &mult, opts, cfg)?;
        let status = match &h.projectors {
            Some(r) if r.passed() => OracleStatus::Passed,
            Some(r) => OracleStatus::Failed { failures: r.failures() },
            None => OracleStatus::Failed { failures: vec!["projector oracle could not run".into()] },
        };
        (status, Some(h))
    };

    Ok(Analysis {
        origami: OrigamiSummary {
            n_squares: data.n_squares(),
            genus: sing.genus,
            stratum: sing.stratum.clone(),
            sigma_star_count: sing.sigma_star_count,
            regular: data.is_regular(),
            quasiregular,
            convention: data.convention().as_str(),
            group_order: data.group().order(),
            subgroup_order: data.subgroup().order(),
            normalizer_index: data.normalizer_index(),
        },
        automorphisms: AutomorphismSummary {
            order: data.gamma().order(),
            abelian: data.gamma().is_abelian(),
            classes: table.len(),
            exponent: data.gamma().exponent(),
            real: info.count(RealType::Real),
            quaternionic: info.count(RealType::Quaternionic),
            complex: info.count(RealType::Complex),
        },
        verdict,
        invariants,
        multiplicities: mult,
        report,
        checks,
        oracle,
        homology,
        config: cfg.clone(),
    })
}

fn homology_summary(
    data: &GroupDataOrigami,
    table: &CharacterTable,
    mult: &Multiplicities,
    opts: &AnalysisOptions,
    cfg: &Config,
) -> Result<HomologySummary> {
    let o = data.origami();
    let mut model = H1Model::new(o)?;
    if opts.inject == Some(Injection::BrokenIntersectionForm) {
        model.corrupt_intersection();
    }
    let complex = model.complex();
    let sing = o.singularity_data();
    let betti = complex.betti_numbers();
    let relative_dim = complex.relative_h1_dim();
    let n = data.n_squares();
    let j = model.intersection();
    let mut checks = Vec::new();

    checks.push(Check::new(
        "homology-rank-is-twice-genus",
        model.rank() == 2 * sing.genus && betti == (1, 2 * sing.genus, 1),
        format!("rank {}, betti {betti:?}, genus {}", model.rank(), sing.genus),
    ));
    // 0 → K → K(M) → K(M)⊕K(M) → H₁(M,Σ*) → 0 and the pair sequence
    let faces_edges = 1 + 2 * n == n + relative_dim;
    let pair = 2 * sing.genus + sing.sigma_star_count == relative_dim + 1;
    checks.push(Check::new(
        "exact-sequence-dimensions",
        faces_edges && pair && relative_dim == n + 1,
        format!("dim H₁(M,Σ*) = {relative_dim}, squares {n}, #Σ* = {}", sing.sigma_star_count),
    ));
    let antisymmetric = *j == -j.transpose();
    let det = linalg::determinant(j)?;
    checks.push(Check::new(
        "intersection-form-antisymmetric",
        antisymmetric,
        if antisymmetric { String::new() } else { "J ≠ −Jᵀ".into() },
    ));
    checks.push(Check::new("intersection-form-unimodular", det == 1.into(), format!("det J = {det}")));

    let projectors = match projector_oracle(&model, data.gamma(), table, &mult.ell, cfg) {
        Ok(r) => {
            checks.push(Check::new(
                "intersection-form-invariant",
                r.form_invariant,
                if r.form_invariant { String::new() } else { "an automorphism moves J".into() },
            ));
            Some(r)
        }
        Err(e) => {
            checks.push(Check::new("projector-oracle-ran", false, e.to_string()));
            None
        }
    };

    let mut affine = Vec::new();
    if opts.affine {
        let action = GammaAction::new(&model, data.gamma(), table);
        let rational = RationalProjectors::new(&action, table, cfg)?;
        for shear in [Shear::Horizontal, Shear::Vertical] {
            let k = minimal_veech_power(o, shear, cfg.veech_search_factor)?;
            match AffineHomologyAction::new(&model, o, shear, k, 0) {
                Ok(a) => {
                    checks.push(Check::new("affine-action-preserves-form", true, format!("{}^{k}", shear.name())));
                    let classification = classify_affine(&a, o, data.gamma(), table, &action, &rational)?;
                    if classification.in_aff_star {
                        checks.push(Check::new(
                            "affine-action-preserves-components",
                            classification.projectors_intertwined,
                            format!("{}^{k}", shear.name()),
                        ));
                    }
                    affine.push(AffineSummary {
                        shear: shear.name(),
                        power: k,
                        variant_count: a.variant_count,
                        classification,
                    });
                }
                Err(e) => {
                    checks.push(Check::new("affine-action-preserves-form", false, format!("{}^{k}: {e}", shear.name())))
                }
            }
        }
    }

    Ok(HomologySummary {
        rank: model.rank(),
        betti,
        relative_dim,
        reduced: crate::homology::is_reduced(&model),
        projectors,
        affine,
        checks,
    })
}
