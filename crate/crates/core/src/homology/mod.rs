//! Cellular homology of the square tiling, the intersection form, and the
//! actions of automorphisms and affine shears on `H₁`.

mod affine;
mod complex;
mod h1;
mod projectors;

pub use affine::{
    classify_affine, is_veech_power, label_action, minimal_veech_power, restricts_to_derivative, AffineClassification,
    AffineHomologyAction, Shear,
};
pub use complex::{ChainComplex, Edge};
pub use h1::H1Model;
pub use projectors::{projector_oracle, BlockRank, GammaAction, IrreducibleRank, ProjectorReport, RationalProjectors};

use crate::linalg::{self, IntMatrix};

/// Whether the periods of closed curves span `Z²`. Necessary for
/// reducedness but weaker than [`is_reduced`].
pub fn absolute_periods_span_plane(model: &H1Model) -> bool {
    linalg::plane_lattice_index(model.projection()) == 1
}

/// Whether the lattice of relative periods is all of `Z²`: absolute periods
/// together with the holonomy between zeros.
pub fn is_reduced(model: &H1Model) -> bool {
    let complex = model.complex();
    let zeros: Vec<usize> =
        complex.vertex_squares().iter().enumerate().filter(|(_, sq)| sq.len() > 1).map(|(v, _)| v).collect();
    let p = model.projection();
    let mut cols: Vec<(i64, i64)> = (0..p.ncols()).map(|j| (p[(0, j)], p[(1, j)])).collect();
    if let Some((&first, rest)) = zeros.split_first() {
        let base = model.root_path_holonomy(first);
        for &v in rest {
            let h = model.root_path_holonomy(v);
            cols.push((h.0 - base.0, h.1 - base.1));
        }
    }
    let m = IntMatrix::from_fn(2, cols.len(), |i, j| if i == 0 { cols[j].0 } else { cols[j].1 });
    linalg::plane_lattice_index(&m) == 1
}

#[cfg(test)]
mod tests;
