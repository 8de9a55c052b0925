//! The verification corpus and the numbered acceptance criteria.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{analyze, Analysis, AnalysisOptions, Injection, OracleStatus};
use crate::characters::{real_classification, CharacterTable, RealType};
use crate::config::Config;
use crate::error::Result;
use crate::families::{
    commutator_permutation, heisenberg_label, heisenberg_quasiregular, heisenberg_regular, klein, order_of_commutator,
    predicted_label_image, sl2p, sn, FamilyInstance,
};
use crate::homology::{
    classify_affine, label_action, minimal_veech_power, AffineHomologyAction, GammaAction, H1Model, RationalProjectors,
    Shear,
};
use crate::lyapunov::{estimate_for, Divisibility, RandomProductConfig};
use crate::origami::{GroupDataOrigami, Origami};
use crate::permgroup::Permutation;

/// Reference rows `(p, π², ord(c))` of the commutator-order tables.
pub const REFERENCE_ORDERS: &[(u64, u64, u64)] = &[
    (5, 1, 10),
    (5, 4, 6),
    (7, 1, 8),
    (7, 4, 3),
    (7, 2, 8),
    (11, 1, 5),
    (11, 4, 12),
    (11, 9, 4),
    (11, 5, 5),
    (11, 3, 12),
    (13, 1, 14),
    (13, 4, 14),
    (13, 9, 26),
    (13, 3, 14),
    (13, 12, 6),
    (13, 10, 3),
];

#[derive(Clone, Debug)]
pub struct SelftestOptions {
    /// Skip the Lyapunov run.
    pub quick: bool,
    /// Include the symmetric group on six letters.
    pub slow: bool,
    pub inject: Option<Injection>,
    pub lyapunov_steps: usize,
    pub threads: usize,
    pub random_pairs: usize,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions {
            quick: false,
            slow: false,
            inject: None,
            lyapunov_steps: 1_000_000,
            threads: 1,
            random_pairs: 16,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub status: Status,
    pub detail: String,
    pub seconds: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {} {} ({:.1}s): {}",
            self.id,
            self.status.as_str(),
            self.title,
            self.seconds,
            self.detail
        )
    }
}

pub const TITLES: [&str; 10] = [
    "commutator-order tables",
    "SL(2,F_5) parabolic multiplicities",
    "symmetric-group closed forms and duality",
    "projector-rank oracle on corpus",
    "structural theorems on corpus",
    "Frobenius-Schur counts for SL(2,F_p)",
    "homology geometry on corpus",
    "Heisenberg label action",
    "Lyapunov structure",
    "negative controls",
];

fn timed(id: u8, f: impl FnOnce() -> Result<(bool, String)>) -> CriterionResult {
    let start = Instant::now();
    let (status, detail) = match f() {
        Ok((true, d)) => (Status::Pass, d),
        Ok((false, d)) => (Status::Fail, d),
        Err(e) => (Status::Fail, format!("error: {e}")),
    };
    CriterionResult { id, title: TITLES[id as usize - 1], status, detail, seconds: start.elapsed().as_secs_f64() }
}

fn skipped(id: u8, why: &str) -> CriterionResult {
    CriterionResult { id, title: TITLES[id as usize - 1], status: Status::Skip, detail: why.into(), seconds: 0.0 }
}

fn sqrt_mod(p: u64, s: u64) -> Option<u64> {
    (1..p).find(|x| x * x % p == s % p)
}

pub fn criterion_orders() -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for &(p, s, want) in REFERENCE_ORDERS {
        let by_trace = order_of_commutator(p, s)?;
        let b = sqrt_mod(p, s).expect("reference π² are squares");
        let by_perm = commutator_permutation(p, 1, b).order();
        if by_trace != want || by_perm != want {
            bad.push(format!("p={p} π²={s}: trace {by_trace}, permutation {by_perm}, expected {want}"));
        }
    }
    Ok((bad.is_empty(), if bad.is_empty() { format!("{} rows", REFERENCE_ORDERS.len()) } else { bad.join("; ") }))
}

fn formula_only() -> AnalysisOptions {
    AnalysisOptions { run_oracle: false, affine: false, ..AnalysisOptions::default() }
}

pub fn criterion_sl2_parabolic(cfg: &Config) -> Result<(bool, String)> {
    let inst = sl2p(5, 1, 1, cfg)?;
    let a = analyze(&inst.data, &inst.table, &formula_only(), cfg)?;
    let reference =
        [("U", 0), ("V", 4), ("W'", 2), ("W''", 2), ("X_phi(1)", 4), ("X'", 2), ("X''", 2), ("W_tau(1)", 6)];
    let mut bad: Vec<String> = reference
        .iter()
        .filter(|(l, v)| a.report.ell_of(l) != Some(*v))
        .map(|(l, v)| format!("ℓ_{l} = {:?}, expected {v}", a.report.ell_of(l)))
        .collect();
    let total: usize = a.report.irreducibles.iter().map(|e| e.ell * e.dim).sum();
    if total != 108 || a.origami.genus != 55 || inst.expected.genus != Some(55) {
        bad.push(format!("Σ ℓ·dim = {total}, genus {}", a.origami.genus));
    }
    bad.extend(a.failures());
    Ok((bad.is_empty(), if bad.is_empty() { "Σ ℓ·dim = 108, g = 55".into() } else { bad.join("; ") }))
}

pub fn criterion_sn(slow: bool, cfg: &Config) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let mut notes: Vec<String> = Vec::new();
    let ns: &[usize] = if slow { &[4, 5, 6] } else { &[4, 5] };
    for &n in ns {
        let inst = sn(n, cfg)?;
        let a = analyze(&inst.data, &inst.table, &formula_only(), cfg)?;
        for (label, &want) in &inst.expected.ell {
            if a.report.ell_of(label) != Some(want) {
                bad.push(format!("n={n} {label}: {:?} vs closed form {want}", a.report.ell_of(label)));
            }
        }
        for e in &a.report.irreducibles {
            let dual = crate::characters::sn::conjugate(&parse_partition(&e.label));
            let dual_label = crate::families::partition_label(&dual);
            let ell_dual = a.report.ell_of(&dual_label).unwrap_or(usize::MAX);
            if e.ell + ell_dual != 2 * e.dim {
                bad.push(format!("n={n} duality fails at {}", e.label));
            }
        }
        bad.extend(inst.checks.iter().filter(|c| !c.passed).map(|c| format!("n={n} {}", c.name)));
        bad.extend(a.failures().into_iter().map(|f| format!("n={n} {f}")));
        if n == 6 {
            for (label, want) in [("(3,3)", 4), ("(2,2,2)", 6)] {
                if a.report.ell_of(label) != Some(want) {
                    bad.push(format!("{label}: {:?}, expected {want}", a.report.ell_of(label)));
                }
            }
            match a.report.ell_of("(3,2,1)") {
                Some(16) => notes.push("self-conjugate (3,2,1) has ℓ = 16 = dim".into()),
                other => bad.push(format!("(3,2,1): {other:?}, expected 16")),
            }
        }
    }
    let mut detail = format!("n ∈ {ns:?}");
    if !notes.is_empty() {
        detail = format!("{detail}; {}", notes.join("; "));
    }
    if !bad.is_empty() {
        detail = bad.join("; ");
    }
    Ok((bad.is_empty(), detail))
}

fn parse_partition(label: &str) -> Vec<usize> {
    label.trim_matches(|c| c == '(' || c == ')').split(',').filter_map(|x| x.trim().parse().ok()).collect()
}

pub fn criterion_fs_counts(cfg: &Config) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let mut seen = Vec::new();
    for p in [5u64, 7, 11, 13] {
        let inst = sl2p(p, 1, 1, cfg)?;
        let info = real_classification(&inst.table)?;
        let got = (info.count(RealType::Real), info.count(RealType::Quaternionic), info.count(RealType::Complex));
        let want = if p % 4 == 1 {
            (((p + 5) / 2) as usize, ((p + 3) / 2) as usize, 0)
        } else {
            (p.div_ceil(2) as usize, ((p - 1) / 2) as usize, 4)
        };
        seen.push(format!("p={p}: {got:?}"));
        if got != want {
            bad.push(format!("p={p}: {got:?}, expected {want:?}"));
        }
    }
    Ok((bad.is_empty(), if bad.is_empty() { seen.join(", ") } else { bad.join("; ") }))
}

/// A named origami with its automorphism character table.
pub struct CorpusEntry {
    pub name: String,
    pub data: GroupDataOrigami,
    pub table: CharacterTable,
}

impl CorpusEntry {
    fn from_family(name: &str, inst: FamilyInstance) -> Self {
        CorpusEntry { name: name.into(), data: inst.data, table: inst.table }
    }

    fn from_origami(name: String, o: &Origami, cfg: &Config) -> Result<Self> {
        let data = GroupDataOrigami::from_origami(o, cfg.element_cap)?;
        let table = CharacterTable::compute(data.gamma(), cfg)?;
        Ok(CorpusEntry { name, data, table })
    }
}

/// Uniformly random permutation pairs on `n` squares, kept when transitive.
pub fn random_origamis(count: usize, seed: u64, max_squares: usize) -> Vec<Origami> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(2..=max_squares);
        let mut perm = || {
            let mut v: Vec<usize> = (0..n).collect();
            v.shuffle(&mut rng);
            Permutation::from_images(v).expect("shuffle is a bijection")
        };
        let (r, u) = (perm(), perm());
        if let Ok(o) = Origami::from_pair(r, u, Default::default()) {
            out.push(o);
        }
    }
    out
}

/// Family members and random transitive pairs, all within the homology cap.
pub fn corpus(random_pairs: usize, cfg: &Config) -> Result<Vec<CorpusEntry>> {
    let mut out = vec![
        CorpusEntry::from_origami("torus".into(), &Origami::torus(), cfg)?,
        CorpusEntry::from_family("klein", klein(cfg)?),
        CorpusEntry::from_family("heisenberg p=2", heisenberg_regular(2, cfg)?),
        CorpusEntry::from_family("heisenberg p=3", heisenberg_regular(3, cfg)?),
        CorpusEntry::from_family("heisenberg-qr p=3", heisenberg_quasiregular(3, cfg)?),
        CorpusEntry::from_family("heisenberg-qr p=5", heisenberg_quasiregular(5, cfg)?),
        CorpusEntry::from_family("sn n=2", sn(2, cfg)?),
        CorpusEntry::from_family("sn n=3", sn(3, cfg)?),
        CorpusEntry::from_family("sn n=4", sn(4, cfg)?),
        CorpusEntry::from_family("sl2p p=5 a=1 b=2", sl2p(5, 1, 2, cfg)?),
    ];
    for (i, o) in random_origamis(random_pairs, 0x0516_a111, 7).iter().enumerate() {
        out.push(CorpusEntry::from_origami(format!("random #{i} ({} squares)", o.n_squares()), o, cfg)?);
    }
    Ok(out)
}

pub fn analyze_corpus(
    entries: &[CorpusEntry],
    inject: Option<Injection>,
    cfg: &Config,
) -> Vec<(String, Result<Analysis>)> {
    let opts = AnalysisOptions { inject, ..AnalysisOptions::default() };
    entries.iter().map(|e| (e.name.clone(), analyze(&e.data, &e.table, &opts, cfg))).collect()
}

const STRUCTURAL: &[&str] = &[
    "sum-rule-vertices",
    "sum-rule-homology",
    "multiplicity-never-one",
    "trivial-multiplicity-is-minimal",
    "self-dual-multiplicities-even",
    "trivial-absent-iff-quasiregular",
    "non-quasiregular-multiplicities-exceed-one",
    "quasiregularity-criteria-agree",
];

const GEOMETRY: &[&str] = &[
    "homology-rank-is-twice-genus",
    "exact-sequence-dimensions",
    "intersection-form-antisymmetric",
    "intersection-form-unimodular",
    "intersection-form-invariant",
    "affine-action-preserves-form",
    "affine-action-preserves-components",
];

/// Failed checks whose names are in `names`, per corpus member.
fn named_failures(results: &[(String, Result<Analysis>)], names: &[&str]) -> Vec<String> {
    let mut out = Vec::new();
    for (name, r) in results {
        match r {
            Err(e) => out.push(format!("{name}: {e}")),
            Ok(a) => {
                for c in a.checks.iter().chain(a.homology.iter().flat_map(|h| h.checks.iter())) {
                    if !c.passed && names.contains(&c.name) {
                        out.push(format!("{name}: {} ({})", c.name, c.detail));
                    }
                }
            }
        }
    }
    out
}

fn verdict(bad: Vec<String>, ok: String) -> (bool, String) {
    if bad.is_empty() {
        (true, ok)
    } else {
        let shown: Vec<String> = bad.iter().take(4).cloned().collect();
        let more = if bad.len() > 4 { format!(" (+{} more)", bad.len() - 4) } else { String::new() };
        (false, format!("{}{more}", shown.join("; ")))
    }
}

pub fn criterion_projectors(results: &[(String, Result<Analysis>)]) -> (bool, String) {
    let mut bad = Vec::new();
    let mut ran = 0;
    for (name, r) in results {
        match r {
            Ok(a) => match &a.oracle {
                OracleStatus::Passed => ran += 1,
                OracleStatus::Failed { failures } => bad.push(format!("{name}: {}", failures.join(", "))),
                OracleStatus::Skipped { reason } => bad.push(format!("{name}: skipped ({reason})")),
            },
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    }
    if results.len() < 25 {
        bad.push(format!("corpus has {} members, need 25", results.len()));
    }
    verdict(bad, format!("{ran} origamis, every rank equals ℓ·dim"))
}

pub fn criterion_structure(results: &[(String, Result<Analysis>)]) -> (bool, String) {
    let bad = named_failures(results, STRUCTURAL);
    verdict(bad, format!("{} origamis, {} checks each", results.len(), STRUCTURAL.len()))
}

pub fn criterion_geometry(results: &[(String, Result<Analysis>)]) -> (bool, String) {
    let mut bad = named_failures(results, GEOMETRY);
    let mut affine = 0;
    for (name, r) in results {
        if let Ok(a) = r {
            match &a.homology {
                Some(h) if h.affine.len() == 2 => affine += 2,
                _ => bad.push(format!("{name}: affine generators missing")),
            }
        }
    }
    verdict(bad, format!("{} origamis, {affine} affine actions", results.len()))
}

pub fn criterion_label_action(cfg: &Config) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let mut tested = 0;
    for p in [3u64, 5] {
        let inst = heisenberg_regular(p, cfg)?;
        let o = inst.data.origami();
        let gamma = inst.data.gamma();
        let model = H1Model::new(o)?;
        let action = GammaAction::new(&model, gamma, &inst.table);
        let rational = RationalProjectors::new(&action, &inst.table, cfg)?;
        let info = real_classification(&inst.table)?;
        let ell = analyze(&inst.data, &inst.table, &formula_only(), cfg)?.multiplicities.ell;
        for shear in [Shear::Horizontal, Shear::Vertical] {
            let k0 = minimal_veech_power(o, shear, cfg.veech_search_factor)?;
            for k in [k0, p as i64] {
                let first = AffineHomologyAction::new(&model, o, shear, k, 0)?;
                let last = first.variant_count - 1;
                for variant in [0, last] {
                    let a = AffineHomologyAction::new(&model, o, shear, k, variant)?;
                    let moved = label_action(&a, gamma, &inst.table)?;
                    for (row, &image) in moved.iter().enumerate() {
                        let from = heisenberg_label(inst.table.label(row)).expect("Heisenberg label");
                        let want = predicted_label_image(p, a.derivative, from).label();
                        if inst.table.label(image) != want {
                            bad.push(format!(
                                "p={p} {}^{k}: {} ↦ {}, predicted {want}",
                                shear.name(),
                                inst.table.label(row),
                                inst.table.label(image)
                            ));
                        }
                    }
                    let class = classify_affine(&a, o, gamma, &inst.table, &action, &rational)?;
                    if !class.projectors_intertwined {
                        bad.push(format!("p={p} {}^{k}: projectors not intertwined", shear.name()));
                    }
                    for rc in &info.classes {
                        let present = rc.members.iter().any(|&m| ell[m] > 0);
                        let fixed = rc.members.iter().all(|&m| rc.members.contains(&moved[m]));
                        if present && !fixed {
                            bad.push(format!("p={p} {}^{k}: a nonzero real component moves", shear.name()));
                        }
                    }
                    tested += 1;
                }
            }
        }
    }
    Ok(verdict(bad, format!("{tested} affine elements, (m,n) ↦ (m,n)·D⁻¹ mod p, ζ fixed")))
}

pub fn criterion_lyapunov(steps: usize, threads: usize, cfg: &Config) -> Result<(bool, String)> {
    let inst = heisenberg_regular(3, cfg)?;
    let rc = RandomProductConfig { seed: 1, steps, threads, ..RandomProductConfig::default() };
    let r = estimate_for(&inst.data, &inst.table, &rc, cfg)?;
    let mut bad = r.failures();
    if !r.aff_star_star {
        bad.push("generators are not all in Aff_**".into());
    }
    let mut sizes = BTreeMap::new();
    for b in r.blocks.iter().filter(|b| b.dim_real_irrep.is_some()) {
        if b.divisibility != Divisibility::Divisible {
            bad.push(format!("{}: {:?} with clusters {:?}", b.label, b.divisibility, b.clusters));
        }
        sizes.insert(b.label.clone(), b.clusters.clone());
    }
    if !r.blocks_match_whole {
        bad.push("block and whole-space spectra differ".into());
    }
    Ok(verdict(
        bad,
        format!("clusters {sizes:?}, θ_top = {:.4}", r.blocks[1].exponents.first().copied().unwrap_or(0.0)),
    ))
}

/// Runs both injections on a small corpus and expects each to trip the
/// right criterion.
pub fn criterion_negative_controls(cfg: &Config) -> Result<(bool, String)> {
    let small = vec![
        CorpusEntry::from_family("klein", klein(cfg)?),
        CorpusEntry::from_family("sn n=3", sn(3, cfg)?),
        CorpusEntry::from_family("heisenberg-qr p=3", heisenberg_quasiregular(3, cfg)?),
    ];
    let mut bad = Vec::new();
    let wrong_ell = analyze_corpus(&small, Some(Injection::WrongMultiplicity), cfg);
    let (ok5, d5) = criterion_structure(&wrong_ell);
    if ok5 || !d5.contains("sum-rule-homology") {
        bad.push(format!("wrong ℓ not caught by criterion 5: {d5}"));
    }
    let broken = analyze_corpus(&small, Some(Injection::BrokenIntersectionForm), cfg);
    let (ok7, d7) = criterion_geometry(&broken);
    if ok7 || !d7.contains("intersection-form") {
        bad.push(format!("broken form not caught by criterion 7: {d7}"));
    }
    let clean = analyze_corpus(&small, None, cfg);
    if !criterion_structure(&clean).0 || !criterion_geometry(&clean).0 {
        bad.push("clean control fails".into());
    }
    Ok(verdict(bad, "wrong ℓ trips criterion 5, broken form trips criterion 7".into()))
}

/// All ten criteria in order.
pub fn run(opts: &SelftestOptions, cfg: &Config) -> Vec<CriterionResult> {
    let mut out = vec![
        timed(1, criterion_orders),
        timed(2, || criterion_sl2_parabolic(cfg)),
        timed(3, || criterion_sn(opts.slow, cfg)),
    ];
    let start = Instant::now();
    let results = corpus(opts.random_pairs, cfg).map(|c| analyze_corpus(&c, opts.inject, cfg));
    let corpus_seconds = start.elapsed().as_secs_f64();
    for (id, f) in
        [(4u8, criterion_projectors as fn(&[(String, Result<Analysis>)]) -> (bool, String)), (5, criterion_structure)]
    {
        out.push(match &results {
            Ok(r) => {
                let mut c = timed(id, || Ok(f(r)));
                c.seconds += corpus_seconds;
                c
            }
            Err(e) => timed(id, || Err(crate::Error::Input(format!("corpus: {e}")))),
        });
    }
    out.push(timed(6, || criterion_fs_counts(cfg)));
    out.push(match &results {
        Ok(r) => timed(7, || Ok(criterion_geometry(r))),
        Err(e) => timed(7, || Err(crate::Error::Input(format!("corpus: {e}")))),
    });
    out.push(timed(8, || criterion_label_action(cfg)));
    out.push(if opts.quick {
        skipped(9, "--quick")
    } else {
        timed(9, || criterion_lyapunov(opts.lyapunov_steps, opts.threads, cfg))
    });
    out.push(if opts.inject.is_some() {
        skipped(10, "injection already active")
    } else {
        timed(10, || criterion_negative_controls(cfg))
    });
    out
}
