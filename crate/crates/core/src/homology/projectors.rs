use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::h1::H1Model;
use crate::characters::CharacterTable;
use crate::config::{round_integral, Config};
use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix};
use crate::permgroup::GeneratedPermGroup;

/// Matrices of the automorphism group on `H₁`, per element and summed per
/// conjugacy class.
#[derive(Clone, Debug)]
pub struct GammaAction {
    /// Indexed like the elements of the group.
    pub elements: Vec<IntMatrix>,
    pub class_sums: Vec<IntMatrix>,
}

impl GammaAction {
    pub fn new(model: &H1Model, gamma: &GeneratedPermGroup, table: &CharacterTable) -> Self {
        let dim = model.rank();
        let elements: Vec<IntMatrix> = gamma.elements().iter().map(|g| model.automorphism_matrix(g)).collect();
        let classes = table.classes();
        let mut class_sums = vec![IntMatrix::zeros(dim, dim); classes.len()];
        for (i, m) in elements.iter().enumerate() {
            class_sums[classes.class_of_index(i)] += m;
        }
        GammaAction { elements, class_sums }
    }
}

/// `|Γ|` times the projector onto each rational isotypic block. These are
/// integer matrices because characters summed over a Galois orbit are
/// rational integers.
#[derive(Clone, Debug)]
pub struct RationalProjectors {
    pub blocks: Vec<Vec<usize>>,
    pub scaled: Vec<IntMatrix>,
}

impl RationalProjectors {
    pub fn new(action: &GammaAction, table: &CharacterTable, cfg: &Config) -> Result<Self> {
        let blocks = table.rational_classes();
        let dim = action.class_sums[0].nrows();
        let mut scaled = Vec::with_capacity(blocks.len());
        for block in &blocks {
            let mut q = IntMatrix::zeros(dim, dim);
            for (c, s) in action.class_sums.iter().enumerate() {
                let v: f64 = block.iter().map(|&a| table.dim(a) as f64 * table.value(a, c).conj().re).sum();
                let im: f64 = block.iter().map(|&a| table.value(a, c).conj().im).sum::<f64>();
                let coef = round_integral(v, cfg.integrality_tol)
                    .filter(|_| im.abs() <= cfg.integrality_tol * block.len() as f64 * 10.0)
                    .ok_or_else(|| Error::invariant(format!("Galois-orbit character sum {v} is not an integer")))?;
                if coef != 0 {
                    q += s * coef;
                }
            }
            scaled.push(q);
        }
        Ok(RationalProjectors { blocks, scaled })
    }

    /// Index of the block containing irreducible `row`.
    pub fn block_of(&self, row: usize) -> usize {
        self.blocks.iter().position(|b| b.contains(&row)).expect("every irreducible lies in a rational block")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockRank {
    pub members: Vec<String>,
    pub expected: usize,
    pub exact_rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct IrreducibleRank {
    pub label: String,
    pub expected: usize,
    /// Trace of the projector on `H₁⁽⁰⁾` from exact integer traces.
    pub trace_rank: i64,
    /// Rank of the complex projector restricted to `H₁⁽⁰⁾` by SVD.
    pub numeric_rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectorReport {
    pub blocks: Vec<BlockRank>,
    pub irreducibles: Vec<IrreducibleRank>,
    /// `Σ_A |Γ| P_A = |Γ|·Id` exactly.
    pub complete: bool,
    /// Distinct rational blocks are orthogonal for the intersection form.
    pub blocks_orthogonal: bool,
    /// Every automorphism preserves the intersection form.
    pub form_invariant: bool,
    /// The action is a homomorphism on generators and element products.
    pub representation_consistent: bool,
}

impl ProjectorReport {
    pub fn passed(&self) -> bool {
        self.complete
            && self.blocks_orthogonal
            && self.form_invariant
            && self.representation_consistent
            && self.blocks.iter().all(|b| b.exact_rank == b.expected)
            && self.irreducibles.iter().all(|r| r.trace_rank == r.expected as i64 && r.numeric_rank == r.expected)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.complete {
            out.push("projectors do not sum to the identity".to_string());
        }
        if !self.blocks_orthogonal {
            out.push("isotypic blocks are not orthogonal".to_string());
        }
        if !self.form_invariant {
            out.push("automorphisms do not preserve the intersection form".to_string());
        }
        if !self.representation_consistent {
            out.push("automorphism matrices do not form a representation".to_string());
        }
        for b in &self.blocks {
            if b.exact_rank != b.expected {
                out.push(format!("block {:?}: rank {} but formula gives {}", b.members, b.exact_rank, b.expected));
            }
        }
        for r in &self.irreducibles {
            if r.trace_rank != r.expected as i64 || r.numeric_rank != r.expected {
                out.push(format!(
                    "{}: trace rank {}, numeric rank {}, formula {}",
                    r.label, r.trace_rank, r.numeric_rank, r.expected
                ));
            }
        }
        out
    }
}

/// Compares the isotypic decomposition of `H₁⁽⁰⁾` computed from chains with
/// the multiplicities `ell` (indexed like the table rows).
pub fn projector_oracle(
    model: &H1Model,
    gamma: &GeneratedPermGroup,
    table: &CharacterTable,
    ell: &[usize],
    cfg: &Config,
) -> Result<ProjectorReport> {
    let action = GammaAction::new(model, gamma, table);
    let projectors = RationalProjectors::new(&action, table, cfg)?;
    let k = model.zero_basis();
    let dim = model.rank();
    let order = gamma.order() as i64;

    let mut total = IntMatrix::zeros(dim, dim);
    for q in &projectors.scaled {
        total += q;
    }
    let complete = total == IntMatrix::identity(dim, dim) * order;

    let mut images = Vec::with_capacity(projectors.blocks.len());
    let mut blocks = Vec::with_capacity(projectors.blocks.len());
    for (members, q) in projectors.blocks.iter().zip(&projectors.scaled) {
        let image = linalg::mul(q, k)?;
        let expected = members.iter().map(|&a| ell[a] * table.dim(a)).sum();
        blocks.push(BlockRank {
            members: members.iter().map(|&a| table.label(a).to_string()).collect(),
            expected,
            exact_rank: linalg::rank(&image),
        });
        images.push(image);
    }

    let j = model.intersection();
    let mut blocks_orthogonal = true;
    for a in 0..images.len() {
        for b in a + 1..images.len() {
            let pairing = linalg::mul(&linalg::mul(&images[a].transpose(), j)?, &images[b])?;
            if pairing.iter().any(|&x| x != 0) {
                blocks_orthogonal = false;
            }
        }
    }

    let mut form_invariant = true;
    for g in gamma.generators() {
        let idx = gamma.index_of(g).expect("generator is an element");
        if !model.preserves_form(&action.elements[idx])? {
            form_invariant = false;
        }
    }
    let mut representation_consistent = true;
    for (i, x) in gamma.elements().iter().enumerate().take(64) {
        for g in gamma.generators() {
            let xg = x * g;
            let lhs = &action.elements[gamma.index_of(&xg).expect("closed")];
            let rhs = linalg::mul(&action.elements[i], &action.elements[gamma.index_of(g).expect("element")])?;
            if *lhs != rhs {
                representation_consistent = false;
            }
        }
    }

    let traces: Vec<i64> =
        action.class_sums.iter().zip(table.class_sizes()).map(|(s, &size)| s.trace() - 2 * size as i64).collect();
    let kf = linalg::to_f64(k).map(|x| Complex64::new(x, 0.0));
    let mut irreducibles = Vec::with_capacity(table.len());
    for a in 0..table.len() {
        let d = table.dim(a) as f64;
        let tr: Complex64 =
            traces.iter().enumerate().map(|(c, &t)| table.value(a, c).conj() * t as f64).sum::<Complex64>()
                * (d / order as f64);
        let trace_rank = round_integral(tr.re, cfg.integrality_tol)
            .filter(|_| tr.im.abs() <= cfg.integrality_tol)
            .ok_or_else(|| Error::invariant(format!("projector trace {tr} is not an integer")))?;
        let mut p = DMatrix::<Complex64>::zeros(dim, dim);
        for (c, s) in action.class_sums.iter().enumerate() {
            let w = table.value(a, c).conj() * (d / order as f64);
            p += s.map(|x| w * x as f64);
        }
        let restricted = p * &kf;
        irreducibles.push(IrreducibleRank {
            label: table.label(a).to_string(),
            expected: ell[a] * table.dim(a),
            trace_rank,
            numeric_rank: numeric_rank(&restricted, cfg.rank_gap),
        });
    }

    Ok(ProjectorReport { blocks, irreducibles, complete, blocks_orthogonal, form_invariant, representation_consistent })
}

fn numeric_rank(m: &DMatrix<Complex64>, gap: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let top = sv.iter().cloned().fold(1.0f64, f64::max);
    sv.iter().filter(|&&s| s > gap * top).count()
}
