//! Lyapunov spectra of random products of affine actions on `H₁`, measured
//! separately on each real isotypic block.
//!
//! These are exponents of a random walk in the affine group, not of the
//! Teichmüller flow. Only the structural constraints carry over: symmetry,
//! cluster sizes divisible by `dim_R V_a`, and forced zeros from signatures.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::characters::{real_classification, CharacterTable, RealType};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::homology::{is_veech_power, minimal_veech_power, AffineHomologyAction, GammaAction, H1Model, Shear};
use crate::linalg::{self, IntMatrix};
use crate::origami::{isomorphisms, GroupDataOrigami};

/// Recorded in every report so runs can be reproduced elsewhere.
pub const RNG_TAG: &str = "ChaCha8Rng (rand_chacha 0.3), seed_from_u64, stream = replica index";

#[derive(Clone, Debug, Serialize)]
pub struct RandomProductConfig {
    pub seed: u64,
    pub steps: usize,
    pub renorm_period: usize,
    pub batches: usize,
    pub replicas: usize,
    pub threads: usize,
    /// Cluster gap threshold is `max(se_factor · SE, floor)`.
    pub cluster_se_factor: f64,
    pub cluster_floor: f64,
    /// Per irreducible label, a known signature `(p, q)`.
    pub signatures: BTreeMap<String, (usize, usize)>,
}

impl Default for RandomProductConfig {
    fn default() -> Self {
        RandomProductConfig {
            seed: 1,
            steps: 1_000_000,
            renorm_period: 8,
            batches: 20,
            replicas: 1,
            threads: 1,
            cluster_se_factor: 5.0,
            cluster_floor: 0.02,
            signatures: BTreeMap::new(),
        }
    }
}

/// One generator of the random walk.
#[derive(Clone, Debug, Serialize)]
pub struct Generator {
    pub name: String,
    pub derivative: [[i64; 2]; 2],
    pub in_aff_star_star: bool,
    #[serde(skip)]
    pub matrix: IntMatrix,
}

/// Least power of `shear` admitting a relabeling that commutes with every
/// automorphism, with the index of that relabeling. Falls back to the
/// minimal Veech power and variant 0 when none is found within the bound.
fn star_star_power(data: &GroupDataOrigami, shear: Shear, cfg: &Config) -> Result<(i64, usize, bool)> {
    let o = data.origami();
    let k0 = minimal_veech_power(o, shear, cfg.veech_search_factor)?;
    let n = o.n_squares() as i64;
    let bound = (cfg.veech_search_factor as i64 * n * n).max(k0);
    let gens = data.gamma().generators();
    let mut k = k0;
    while k <= bound {
        if is_veech_power(o, shear, k) {
            let sheared = shear.apply(o, k);
            let found = isomorphisms(&sheared, o).iter().position(|psi| gens.iter().all(|g| &g.conjugate_by(psi) == g));
            if let Some(v) = found {
                return Ok((k, v, true));
            }
        }
        k += k0;
    }
    Ok((k0, 0, false))
}

/// Exact inverse of a unimodular integer matrix.
fn integer_inverse(m: &IntMatrix) -> Result<IntMatrix> {
    let f = linalg::to_f64(m);
    let inv = f.try_inverse().ok_or_else(|| Error::invariant("affine matrix is singular"))?;
    let rounded = inv.map(|x| x.round() as i64);
    let id = IntMatrix::identity(m.nrows(), m.ncols());
    if linalg::mul(m, &rounded)? != id {
        return Err(Error::invariant("affine matrix is not unimodular"));
    }
    Ok(rounded)
}

/// `T^k`, `T'^k` at the least powers in `Aff_**`, and their inverses.
pub fn default_generators(model: &H1Model, data: &GroupDataOrigami, cfg: &Config) -> Result<Vec<Generator>> {
    let o = data.origami();
    let mut out = Vec::new();
    for shear in [Shear::Horizontal, Shear::Vertical] {
        let (k, variant, star_star) = star_star_power(data, shear, cfg)?;
        let action = AffineHomologyAction::new(model, o, shear, k, variant)?;
        let inverse = integer_inverse(&action.h1_matrix)?;
        out.push(Generator {
            name: format!("{}^{k}", shear.name()),
            derivative: action.derivative,
            in_aff_star_star: star_star,
            matrix: action.h1_matrix.clone(),
        });
        out.push(Generator {
            name: format!("{}^-{k}", shear.name()),
            derivative: shear.derivative(-k),
            in_aff_star_star: star_star,
            matrix: inverse,
        });
    }
    Ok(out)
}

/// An invariant subspace with an orthonormal basis and the generators
/// compressed onto it.
struct Block {
    label: String,
    kind: &'static str,
    dim_real_irrep: Option<usize>,
    members: Vec<String>,
    generators: Vec<DMatrix<f64>>,
}

impl Block {
    fn dim(&self) -> usize {
        self.generators.first().map_or(0, DMatrix::nrows)
    }
}

/// Orthonormal basis of the column span, by SVD with a relative gap.
fn orthonormal_span(m: &DMatrix<f64>, gap: f64) -> DMatrix<f64> {
    if m.ncols() == 0 || m.nrows() == 0 {
        return DMatrix::zeros(m.nrows(), 0);
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("requested");
    let top = svd.singular_values.max();
    let keep: Vec<usize> =
        (0..svd.singular_values.len()).filter(|&i| svd.singular_values[i] > gap * top.max(1.0)).collect();
    DMatrix::from_fn(m.nrows(), keep.len(), |r, c| u[(r, keep[c])])
}

fn compress(
    label: String,
    kind: &'static str,
    dim_real_irrep: Option<usize>,
    members: Vec<String>,
    basis: &DMatrix<f64>,
    gens: &[DMatrix<f64>],
) -> Result<Block> {
    let mut restricted = Vec::with_capacity(gens.len());
    for g in gens {
        let image = g * basis;
        let r = basis.transpose() * &image;
        let residual = (&image - basis * &r).norm() / image.norm().max(1.0);
        if residual > 1e-8 {
            return Err(Error::invariant(format!(
                "block {label} is not invariant under the generators (residual {residual:.3e})"
            )));
        }
        restricted.push(r);
    }
    Ok(Block { label, kind, dim_real_irrep, members, generators: restricted })
}

/// The tautological plane, `H₁⁽⁰⁾`, and each real isotypic block inside it.
fn blocks(
    model: &H1Model,
    data: &GroupDataOrigami,
    table: &CharacterTable,
    gens: &[DMatrix<f64>],
    cfg: &Config,
) -> Result<Vec<Block>> {
    let st = orthonormal_span(&linalg::to_f64(model.st_plane()), cfg.rank_gap);
    let zero = orthonormal_span(&linalg::to_f64(model.zero_basis()), cfg.rank_gap);
    let mut out = vec![
        compress("H1st".into(), "tautological", None, Vec::new(), &st, gens)?,
        compress("H1(0)".into(), "whole", None, Vec::new(), &zero, gens)?,
    ];

    let gamma = data.gamma();
    let info = real_classification(table)?;
    let action = GammaAction::new(model, gamma, table);
    let classes: Vec<usize> = (0..gamma.order()).map(|i| table.classes().class_of_index(i)).collect();
    let dim = model.rank();
    for class in &info.classes {
        // P_a = Σ_{α∈a} (dim α/|Γ|) Σ_γ conj χ_α(γ) ρ(γ), a real matrix
        let mut p = DMatrix::<f64>::zeros(dim, dim);
        for (i, m) in action.elements.iter().enumerate() {
            let coeff: Complex64 =
                class.members.iter().map(|&a| table.value(a, classes[i]).conj() * table.dim(a) as f64).sum();
            p += linalg::to_f64(m) * (coeff.re / gamma.order() as f64);
        }
        let basis = orthonormal_span(&(p * &zero), cfg.rank_gap);
        if basis.ncols() == 0 {
            continue;
        }
        let members: Vec<String> = class.members.iter().map(|&a| table.label(a).to_string()).collect();
        out.push(compress(members.join("+"), class.kind.as_str(), Some(class.dim_real), members, &basis, gens)?);
    }
    Ok(out)
}

/// Modified Gram–Schmidt on the columns; returns the log column norms.
fn orthonormalize(frame: &mut DMatrix<f64>) -> Result<Vec<f64>> {
    let n = frame.ncols();
    let mut logs = Vec::with_capacity(n);
    for j in 0..n {
        for i in 0..j {
            let proj = frame.column(i).dot(&frame.column(j));
            let qi = frame.column(i).clone_owned();
            frame.column_mut(j).axpy(-proj, &qi, 1.0);
        }
        let norm = frame.column(j).norm();
        if !(norm.is_finite() && norm > 1e-300) {
            return Err(Error::invariant(format!("growth collapsed in direction {j}")));
        }
        frame.column_mut(j).scale_mut(1.0 / norm);
        logs.push(norm.ln());
    }
    Ok(logs)
}

/// Per batch and block, the growth rate per step of each frame direction.
type BatchRates = Vec<Vec<Vec<f64>>>;

fn run_replica(
    blocks: &[Block],
    n_gens: usize,
    rc: &RandomProductConfig,
    batch_len: usize,
    replica: u64,
) -> Result<BatchRates> {
    let mut rng = ChaCha8Rng::seed_from_u64(rc.seed);
    rng.set_stream(replica);
    let mut frames: Vec<DMatrix<f64>> = blocks.iter().map(|b| DMatrix::identity(b.dim(), b.dim())).collect();
    let mut scratch: Vec<DMatrix<f64>> = frames.clone();
    let mut out = Vec::with_capacity(rc.batches);
    for _ in 0..rc.batches {
        let mut sums: Vec<Vec<f64>> = blocks.iter().map(|b| vec![0.0; b.dim()]).collect();
        for step in 1..=batch_len {
            let g = rng.gen_range(0..n_gens);
            for ((b, f), s) in blocks.iter().zip(frames.iter_mut()).zip(scratch.iter_mut()) {
                b.generators[g].mul_to(f, s);
                std::mem::swap(f, s);
            }
            if step % rc.renorm_period == 0 {
                for (f, acc) in frames.iter_mut().zip(sums.iter_mut()) {
                    for (a, l) in acc.iter_mut().zip(orthonormalize(f)?) {
                        *a += l;
                    }
                }
            }
        }
        out.push(sums.into_iter().map(|v| v.into_iter().map(|x| x / batch_len as f64).collect()).collect());
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Divisibility {
    Divisible,
    NotDivisible,
    /// Some gap between clusters is within twice the tolerance.
    Inconclusive,
    /// Generators outside `Aff_**`, or no irreducible dimension to test.
    NotAsserted,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockSpectrum {
    pub label: String,
    pub kind: String,
    pub members: Vec<String>,
    pub dim_w: usize,
    pub dim_real_irrep: Option<usize>,
    /// Normalized by the top tautological rate, in decreasing order.
    pub exponents: Vec<f64>,
    pub stderr: Vec<f64>,
    pub tolerance: f64,
    pub clusters: Vec<usize>,
    pub min_gap: Option<f64>,
    pub divisibility: Divisibility,
    pub symmetric: bool,
    /// Size of the cluster at zero against `|q − p|·dim_R V_a`, when known.
    pub zero_cluster: Option<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub rng: &'static str,
    pub config: RandomProductConfig,
    pub generators: Vec<Generator>,
    pub aff_star_star: bool,
    pub top_rate: f64,
    pub top_rate_stderr: f64,
    pub blocks: Vec<BlockSpectrum>,
    /// Union of isotypic blocks against the whole-space run.
    pub blocks_match_whole: bool,
    pub scope: &'static str,
}

const SCOPE: &str = "exponents of a random product of affine elements; only symmetry and \
multiplicity constraints are meaningful, the values are not flow exponents";

impl SpectrumReport {
    pub fn block(&self, label: &str) -> Option<&BlockSpectrum> {
        self.blocks.iter().find(|b| b.label == label)
    }

    /// Names of failed structural checks.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for b in &self.blocks {
            if !b.symmetric {
                out.push(format!("{}: spectrum not symmetric", b.label));
            }
            if b.divisibility == Divisibility::NotDivisible {
                out.push(format!("{}: cluster sizes {:?} not divisible", b.label, b.clusters));
            }
            if let Some((size, bound)) = b.zero_cluster {
                if size < bound {
                    out.push(format!("{}: zero cluster {size} below {bound}", b.label));
                }
            }
        }
        if !self.blocks_match_whole {
            out.push("isotypic blocks disagree with the whole-space spectrum".into());
        }
        out
    }
}

fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Pairs `θ_i` with `θ_{d-1-i}` and asks for cancellation within three
/// pooled standard errors.
fn is_symmetric(exps: &[f64], se: &[f64]) -> bool {
    let d = exps.len();
    (0..d).all(|i| {
        let j = d - 1 - i;
        (exps[i] + exps[j]).abs() <= 3.0 * (se[i].powi(2) + se[j].powi(2)).sqrt() + 1e-9
    })
}

/// Single-linkage clusters of a decreasing list: sizes and the smallest gap
/// that separates two clusters.
fn clusters(exps: &[f64], tol: f64) -> (Vec<usize>, Option<f64>) {
    if exps.is_empty() {
        return (Vec::new(), None);
    }
    let mut sizes = vec![1];
    let mut min_gap: Option<f64> = None;
    for w in exps.windows(2) {
        let gap = w[0] - w[1];
        if gap > tol {
            sizes.push(1);
            min_gap = Some(min_gap.map_or(gap, |m| m.min(gap)));
        } else {
            *sizes.last_mut().expect("nonempty") += 1;
        }
    }
    (sizes, min_gap)
}

pub fn estimate(
    model: &H1Model,
    data: &GroupDataOrigami,
    table: &CharacterTable,
    generators: Vec<Generator>,
    rc: &RandomProductConfig,
    cfg: &Config,
) -> Result<SpectrumReport> {
    if generators.is_empty() {
        return Err(Error::input("no generators"));
    }
    if rc.batches < 20 {
        return Err(Error::input("at least 20 batches are needed for batch-means errors"));
    }
    if rc.renorm_period == 0 || rc.replicas == 0 {
        return Err(Error::input("renormalization period and replicas must be positive"));
    }
    let batch_len = (rc.steps / rc.batches / rc.renorm_period) * rc.renorm_period;
    if batch_len == 0 {
        return Err(Error::input(format!(
            "{} steps do not fill {} batches of {} steps",
            rc.steps, rc.batches, rc.renorm_period
        )));
    }
    let mats: Vec<DMatrix<f64>> = generators.iter().map(|g| linalg::to_f64(&g.matrix)).collect();
    let blocks = blocks(model, data, table, &mats, cfg)?;

    let threads = rc.threads.clamp(1, rc.replicas);
    let mut batches: BatchRates = Vec::new();
    for chunk in (0..rc.replicas as u64).collect::<Vec<_>>().chunks(threads) {
        let results: Vec<Result<BatchRates>> = std::thread::scope(|s| {
            let handles: Vec<_> = chunk
                .iter()
                .map(|&r| {
                    let blocks = &blocks;
                    let n_gens = mats.len();
                    s.spawn(move || run_replica(blocks, n_gens, rc, batch_len, r))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("replica panicked")).collect()
        });
        for r in results {
            batches.extend(r?);
        }
    }

    let top: Vec<f64> = batches.iter().map(|b| b[0][0]).collect();
    if top.iter().any(|&t| t <= 0.0) {
        return Err(Error::invariant("the tautological plane shows no growth in some batch"));
    }
    let (top_rate, top_rate_stderr) = mean_se(&top);
    let aff_star_star = generators.iter().all(|g| g.in_aff_star_star);

    let mut spectra = Vec::with_capacity(blocks.len());
    for (bi, b) in blocks.iter().enumerate() {
        let (exponents, stderr): (Vec<f64>, Vec<f64>) = (0..b.dim())
            .map(|i| {
                let ratios: Vec<f64> = batches.iter().map(|x| x[bi][i] / x[0][0]).collect();
                mean_se(&ratios)
            })
            .unzip();
        let max_se = stderr.iter().cloned().fold(0.0, f64::max);
        let tolerance = (rc.cluster_se_factor * max_se).max(rc.cluster_floor);
        let (sizes, min_gap) = clusters(&exponents, tolerance);
        let divisibility = match b.dim_real_irrep {
            Some(d) if aff_star_star => {
                if sizes.iter().any(|s| s % d != 0) {
                    Divisibility::NotDivisible
                } else if min_gap.is_some_and(|g| g < 2.0 * tolerance) {
                    Divisibility::Inconclusive
                } else {
                    Divisibility::Divisible
                }
            }
            _ => Divisibility::NotAsserted,
        };
        let zero_cluster = zero_cluster_bound(b, &rc.signatures).map(|bound| {
            let near_zero = exponents.iter().filter(|x| x.abs() <= tolerance).count();
            (near_zero, bound)
        });
        spectra.push(BlockSpectrum {
            label: b.label.clone(),
            kind: b.kind.to_string(),
            members: b.members.clone(),
            dim_w: b.dim(),
            dim_real_irrep: b.dim_real_irrep,
            symmetric: is_symmetric(&exponents, &stderr),
            exponents,
            stderr,
            tolerance,
            clusters: sizes,
            min_gap,
            divisibility,
            zero_cluster,
        });
    }

    let blocks_match_whole = {
        let whole = &spectra[1];
        let mut union: Vec<(f64, f64)> =
            spectra[2..].iter().flat_map(|b| b.exponents.iter().cloned().zip(b.stderr.iter().cloned())).collect();
        union.sort_by(|a, b| b.0.total_cmp(&a.0));
        union.len() == whole.dim_w
            && union
                .iter()
                .zip(whole.exponents.iter().zip(&whole.stderr))
                .all(|(&(x, sx), (&y, &sy))| (x - y).abs() <= 3.0 * (sx * sx + sy * sy).sqrt() + 1e-9)
    };

    Ok(SpectrumReport {
        rng: RNG_TAG,
        config: rc.clone(),
        generators,
        aff_star_star,
        top_rate,
        top_rate_stderr,
        blocks: spectra,
        blocks_match_whole,
        scope: SCOPE,
    })
}

/// `|q − p|·dim_R V_a` for a complex or quaternionic block whose members
/// all carry a supplied signature.
fn zero_cluster_bound(b: &Block, signatures: &BTreeMap<String, (usize, usize)>) -> Option<usize> {
    if b.kind == RealType::Real.as_str() {
        return None;
    }
    let (p, q) = b.members.iter().find_map(|m| signatures.get(m))?;
    Some(p.abs_diff(*q) * b.dim_real_irrep?)
}

/// Builds the model and default generators, then estimates.
pub fn estimate_for(
    data: &GroupDataOrigami,
    table: &CharacterTable,
    rc: &RandomProductConfig,
    cfg: &Config,
) -> Result<SpectrumReport> {
    let model = H1Model::new(data.origami())?;
    let gens = default_generators(&model, data, cfg)?;
    estimate(&model, data, table, gens, rc, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::heisenberg_regular;
    use crate::origami::{Convention, GroupDataOrigami, Origami};
    use crate::permgroup::Permutation;

    fn quick() -> RandomProductConfig {
        RandomProductConfig { steps: 40_000, ..RandomProductConfig::default() }
    }

    #[test]
    fn torus_tautological_exponents_are_unit() {
        let cfg = Config::default();
        let id = Permutation::identity(1);
        let o = Origami::from_pair(id.clone(), id, Convention::Grgu).unwrap();
        let data = GroupDataOrigami::from_origami(&o, cfg.element_cap).unwrap();
        let table = CharacterTable::compute(data.gamma(), &cfg).unwrap();
        let r = estimate_for(&data, &table, &quick(), &cfg).unwrap();
        let st = r.block("H1st").unwrap();
        assert_eq!(st.exponents[0], 1.0);
        assert!((st.exponents[1] + 1.0).abs() < 1e-9);
        assert_eq!(r.block("H1(0)").unwrap().dim_w, 0);
        assert!(r.failures().is_empty());
    }

    #[test]
    fn same_seed_same_numbers() {
        let cfg = Config::default();
        let inst = heisenberg_regular(2, &cfg).unwrap();
        let a = estimate_for(&inst.data, &inst.table, &quick(), &cfg).unwrap();
        let b = estimate_for(&inst.data, &inst.table, &quick(), &cfg).unwrap();
        let ea: Vec<f64> = a.blocks.iter().flat_map(|x| x.exponents.clone()).collect();
        let eb: Vec<f64> = b.blocks.iter().flat_map(|x| x.exponents.clone()).collect();
        assert_eq!(ea, eb);
    }

    #[test]
    fn clustering_splits_on_gaps() {
        let (sizes, gap) = clusters(&[1.0, 0.99, 0.5, 0.0, -0.5], 0.02);
        assert_eq!(sizes, vec![2, 1, 1, 1]);
        assert!((gap.unwrap() - 0.49).abs() < 1e-12);
        assert!(is_symmetric(&[1.0, 0.0, -1.0], &[0.0; 3]));
        assert!(!is_symmetric(&[1.0, -0.5], &[0.01, 0.01]));
    }
}
