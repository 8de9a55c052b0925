use serde::{Deserialize, Serialize};

use super::complex::Edge;
use super::h1::H1Model;
use super::projectors::{GammaAction, RationalProjectors};
use crate::characters::CharacterTable;
use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix};
use crate::origami::{isomorphisms, Origami};
use crate::permgroup::{GeneratedPermGroup, Permutation};

/// The two parabolic generators of `SL(2, Z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shear {
    /// `[[1, 1], [0, 1]]`
    #[serde(rename = "T")]
    Horizontal,
    /// `[[1, 0], [1, 1]]`
    #[serde(rename = "T'")]
    Vertical,
}

impl Shear {
    pub fn name(self) -> &'static str {
        match self {
            Shear::Horizontal => "T",
            Shear::Vertical => "T'",
        }
    }

    pub fn derivative(self, k: i64) -> [[i64; 2]; 2] {
        match self {
            Shear::Horizontal => [[1, k], [0, 1]],
            Shear::Vertical => [[1, 0], [k, 1]],
        }
    }

    /// The origami obtained by shearing and recutting into squares.
    pub fn apply(self, o: &Origami, k: i64) -> Origami {
        match self {
            Shear::Horizontal => o.sheared_t(k),
            Shear::Vertical => o.sheared_t_prime(k),
        }
    }
}

/// Whether the `k`-th power of the shear lies in the Veech group.
pub fn is_veech_power(o: &Origami, shear: Shear, k: i64) -> bool {
    let sheared = shear.apply(o, k);
    (0..o.n_squares()).any(|t| crate::origami::anchored_isomorphism(&sheared, o, t).is_some())
}

/// Least `k ≥ 1` with the `k`-th power of the shear in the Veech group.
pub fn minimal_veech_power(o: &Origami, shear: Shear, search_factor: usize) -> Result<i64> {
    let n = o.n_squares();
    let bound = (search_factor * n * n).max(1) as i64;
    (1..=bound)
        .find(|&k| is_veech_power(o, shear, k))
        .ok_or_else(|| Error::invariant(format!("no power of {} up to {bound} stabilizes the origami", shear.name())))
}

/// An affine self-map of the origami with parabolic derivative, realized as
/// shear followed by a relabeling back onto the original squares.
#[derive(Clone, Debug, Serialize)]
pub struct AffineHomologyAction {
    pub shear: Shear,
    pub power: i64,
    pub derivative: [[i64; 2]; 2],
    /// Sheared squares to original squares.
    pub relabeling: Permutation,
    /// Position of `relabeling` among all valid relabelings (sorted).
    pub variant: usize,
    pub variant_count: usize,
    #[serde(skip)]
    pub h1_matrix: IntMatrix,
}

impl AffineHomologyAction {
    /// Builds the action of the `k`-th power of a shear, choosing the
    /// `variant`-th relabeling in lexicographic order.
    pub fn new(model: &H1Model, o: &Origami, shear: Shear, k: i64, variant: usize) -> Result<Self> {
        let sheared = shear.apply(o, k);
        let relabelings = isomorphisms(&sheared, o);
        if relabelings.is_empty() {
            let minimal = minimal_veech_power(o, shear, 4)?;
            return Err(Error::input(format!(
                "{}^{k} is not in the Veech group; the minimal power is {minimal}",
                shear.name()
            )));
        }
        let variant_count = relabelings.len();
        let psi = relabelings
            .into_iter()
            .nth(variant)
            .ok_or_else(|| Error::input(format!("only {variant_count} relabelings exist")))?;
        let h1_matrix = model.edge_map_matrix(|e| edge_image(o, shear, k, &psi, e))?;
        let action = AffineHomologyAction {
            shear,
            power: k,
            derivative: shear.derivative(k),
            relabeling: psi,
            variant,
            variant_count,
            h1_matrix,
        };
        action.validate(model)?;
        Ok(action)
    }

    /// Hard gates: the intersection form is preserved and the action on the
    /// tautological plane is the derivative.
    pub fn validate(&self, model: &H1Model) -> Result<()> {
        if !model.preserves_form(&self.h1_matrix)? {
            return Err(Error::invariant(format!(
                "{}^{} does not preserve the intersection form",
                self.shear.name(),
                self.power
            )));
        }
        if !restricts_to_derivative(model, &self.h1_matrix, self.derivative)? {
            return Err(Error::invariant(format!(
                "{}^{} does not act on the tautological plane by its derivative",
                self.shear.name(),
                self.power
            )));
        }
        Ok(())
    }

    /// `γ ↦ ψ γ ψ⁻¹` on automorphisms.
    pub fn conjugate(&self, gamma: &Permutation) -> Permutation {
        gamma.conjugate_by(&self.relabeling)
    }
}

/// Whether `m` maps the horizontal and vertical sums as `d` maps `(1,0)`
/// and `(0,1)`.
pub fn restricts_to_derivative(model: &H1Model, m: &IntMatrix, d: [[i64; 2]; 2]) -> Result<bool> {
    let st = model.st_plane();
    let image = linalg::mul(m, st)?;
    let expected = linalg::mul(st, &IntMatrix::from_fn(2, 2, |i, j| d[i][j]))?;
    Ok(image == expected)
}

/// Image of an edge under shear-then-relabel. The sheared image of the
/// transverse edge is a straight segment, homotopic rel endpoints to the
/// staircase along the new square sides; the parallel edge is unchanged.
fn edge_image(o: &Origami, shear: Shear, k: i64, psi: &Permutation, e: Edge) -> Vec<(Edge, i64)> {
    type EdgeKind = fn(usize) -> Edge;
    let (along, step, parallel, transverse): (&Permutation, EdgeKind, bool, EdgeKind) = match (shear, e) {
        (Shear::Horizontal, Edge::Horizontal(_)) => (o.r(), Edge::Horizontal, true, Edge::Vertical),
        (Shear::Horizontal, Edge::Vertical(_)) => (o.r(), Edge::Horizontal, false, Edge::Vertical),
        (Shear::Vertical, Edge::Vertical(_)) => (o.u(), Edge::Vertical, true, Edge::Horizontal),
        (Shear::Vertical, Edge::Horizontal(_)) => (o.u(), Edge::Vertical, false, Edge::Horizontal),
    };
    let s = match e {
        Edge::Horizontal(s) | Edge::Vertical(s) => psi.image(s),
    };
    if parallel {
        return vec![(
            match e {
                Edge::Horizontal(_) => Edge::Horizontal(s),
                Edge::Vertical(_) => Edge::Vertical(s),
            },
            1,
        )];
    }
    let mut out = Vec::with_capacity(k.unsigned_abs() as usize + 1);
    let mut t = s;
    if k >= 0 {
        for _ in 0..k {
            out.push((step(t), 1));
            t = along.image(t);
        }
    } else {
        let back = along.inverse();
        for _ in 0..-k {
            t = back.image(t);
            out.push((step(t), -1));
        }
    }
    out.push((transverse(t), 1));
    out
}

/// How an affine element interacts with the automorphism group.
#[derive(Clone, Debug, Serialize)]
pub struct AffineClassification {
    /// Conjugation induces an inner automorphism of `Γ`.
    pub in_aff_star: bool,
    /// Conjugation is trivial on `Γ`.
    pub in_aff_star_star: bool,
    /// `label_action[α]` is the row of `χ_α ∘ φ⁻¹`.
    pub label_action: Vec<usize>,
    /// The `H₁` matrix commutes with every automorphism matrix.
    pub commutes_with_gamma: bool,
    /// `h P_A h⁻¹ = P_{A.A}` for every rational block, exactly.
    pub projectors_intertwined: bool,
    /// Which relabelings of the same derivative lie in `Aff_**`.
    pub star_star_variants: Vec<usize>,
}

pub fn classify_affine(
    action: &AffineHomologyAction,
    o: &Origami,
    gamma: &GeneratedPermGroup,
    table: &CharacterTable,
    gamma_action: &GammaAction,
    projectors: &RationalProjectors,
) -> Result<AffineClassification> {
    let gens = gamma.generators();
    let images: Vec<Permutation> = gens.iter().map(|g| action.conjugate(g)).collect();
    for img in &images {
        if !gamma.contains(img) {
            return Err(Error::invariant("affine conjugation leaves the automorphism group"));
        }
    }
    let in_aff_star_star = gens.iter().zip(&images).all(|(g, x)| g == x);
    let in_aff_star = gamma.elements().iter().any(|d| gens.iter().zip(&images).all(|(g, x)| &g.conjugate_by(d) == x));

    let h = &action.h1_matrix;
    let mut commutes_with_gamma = true;
    for (g, img) in gens.iter().zip(&images) {
        let mg = &gamma_action.elements[gamma.index_of(g).expect("generator")];
        let mi = &gamma_action.elements[gamma.index_of(img).expect("image")];
        if linalg::mul(h, mg)? != linalg::mul(mi, h)? {
            return Err(Error::invariant("affine matrix does not intertwine the automorphism action"));
        }
        if mg != mi {
            commutes_with_gamma = false;
        }
    }

    let label_action = label_action(action, gamma, table)?;
    let mut projectors_intertwined = true;
    for (a, block) in projectors.blocks.iter().enumerate() {
        let targets: Vec<usize> = block.iter().map(|&x| projectors.block_of(label_action[x])).collect();
        let b = targets[0];
        if targets.iter().any(|&t| t != b) || projectors.blocks[b].len() != block.len() {
            projectors_intertwined = false;
            continue;
        }
        if linalg::mul(h, &projectors.scaled[a])? != linalg::mul(&projectors.scaled[b], h)? {
            projectors_intertwined = false;
        }
    }

    let sheared = action.shear.apply(o, action.power);
    let star_star_variants = isomorphisms(&sheared, o)
        .iter()
        .enumerate()
        .filter(|(_, psi)| gens.iter().all(|g| &g.conjugate_by(psi) == g))
        .map(|(i, _)| i)
        .collect();

    Ok(AffineClassification {
        in_aff_star,
        in_aff_star_star,
        label_action,
        commutes_with_gamma,
        projectors_intertwined,
        star_star_variants,
    })
}

/// Row permutation `α ↦ χ_α ∘ φ⁻¹` with `φ(γ) = ψγψ⁻¹`.
pub fn label_action(
    action: &AffineHomologyAction,
    gamma: &GeneratedPermGroup,
    table: &CharacterTable,
) -> Result<Vec<usize>> {
    let psi_inv = action.relabeling.inverse();
    let pulled: Vec<usize> = table
        .classes()
        .representatives()
        .iter()
        .map(|x| table.class_of(gamma, &x.conjugate_by(&psi_inv)))
        .collect::<Result<_>>()?;
    (0..table.len())
        .map(|a| {
            (0..table.len())
                .find(|&b| {
                    pulled.iter().enumerate().all(|(c, &c2)| (table.value(a, c2) - table.value(b, c)).norm() < 1e-6)
                })
                .ok_or_else(|| Error::invariant("twisted character is not irreducible"))
        })
        .collect()
}
