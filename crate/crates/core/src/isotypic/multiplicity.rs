use num_complex::Complex64;
use serde::Serialize;

use crate::characters::CharacterTable;
use crate::config::round_integral;
use crate::error::{Error, Result};
use crate::origami::{CosetInvariants, GroupDataOrigami};

/// `m_α` and `ℓ_α` for every irreducible of `Γ`, indexed like the table rows.
#[derive(Clone, Debug, Serialize)]
pub struct Multiplicities {
    pub m: Vec<usize>,
    pub ell: Vec<usize>,
    /// `[G:N]`: copies of the regular representation in the square module.
    pub normalizer_index: usize,
    /// Cycles of `N g ↦ N g c⁻¹` on the coset representatives.
    pub rho_cycles: Vec<Vec<usize>>,
}

/// Class in `Γ` of `g c^{n(g)} g⁻¹` for each coset representative.
fn twisted_classes(data: &GroupDataOrigami, inv: &CosetInvariants, table: &CharacterTable) -> Result<Vec<usize>> {
    inv.representatives
        .iter()
        .zip(&inv.n_of)
        .map(|(g, &n)| {
            let x = data.c().pow(n as i64).conjugate_by(g);
            if !data.normalizer().contains(&x) {
                return Err(Error::invariant("g c^n(g) g⁻¹ is not in the normalizer"));
            }
            table.class_of(data.gamma(), &data.gamma_image(&x))
        })
        .collect()
}

fn cycles_of(map: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; map.len()];
    let mut out = Vec::new();
    for i in 0..map.len() {
        if seen[i] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            cyc.push(j);
            j = map[j];
        }
        out.push(cyc);
    }
    out
}

/// Multiplicities from the coset-representative formula, cross-checked
/// against the permutation character of `Γ` on `Σ*` and, for regular
/// origamis, against `codim Fix_α(c)`.
pub fn multiplicities(
    data: &GroupDataOrigami,
    inv: &CosetInvariants,
    table: &CharacterTable,
) -> Result<Multiplicities> {
    if table.group_order() != data.gamma().order() {
        return Err(Error::input("character table is not for the automorphism group"));
    }
    let classes = twisted_classes(data, inv, table)?;
    let rho_cycles = cycles_of(&inv.rho);
    for cyc in &rho_cycles {
        if cyc.iter().any(|&i| inv.n_of[i] as usize != cyc.len()) {
            return Err(Error::invariant("rho-cycle length differs from n(g)"));
        }
    }
    let r = inv.representatives.len();
    let k = table.len();
    let mut m = vec![0usize; k];
    for (a, slot) in m.iter_mut().enumerate() {
        for cyc in &rho_cycles {
            let total: usize = cyc.iter().map(|&i| table.dim_fix_class(a, classes[i])).sum::<Result<usize>>()?;
            if total % cyc.len() != 0 {
                return Err(Error::invariant(format!(
                    "cycle contribution {total}/{} for {} is not an integer",
                    cyc.len(),
                    table.label(a)
                )));
            }
            *slot += total / cyc.len();
        }
    }
    let ell: Vec<usize> = (0..k)
        .map(|a| {
            (r * table.dim(a))
                .checked_sub(m[a])
                .ok_or_else(|| Error::invariant(format!("m exceeds [G:N]·dim for {}", table.label(a))))
        })
        .collect::<Result<_>>()?;

    let by_permutation = vertex_multiplicities(data, table)?;
    if by_permutation != m {
        return Err(Error::invariant(format!(
            "m from coset formula {m:?} differs from the permutation character on vertices {by_permutation:?}"
        )));
    }
    if data.is_regular() {
        let c_class = table.class_of(data.gamma(), &data.gamma_image(data.c()))?;
        for a in 0..k {
            let codim = table.dim(a) - table.dim_fix_class(a, c_class)?;
            if codim != ell[a] {
                return Err(Error::invariant(format!(
                    "regular origami: codim Fix(c) = {codim} but the general formula gives {} for {}",
                    ell[a],
                    table.label(a)
                )));
            }
        }
    }
    Ok(Multiplicities { m, ell, normalizer_index: r, rho_cycles })
}

/// `⟨π_Σ*, χ_α⟩` where `π_Σ*` counts vertices fixed by each automorphism.
pub fn vertex_multiplicities(data: &GroupDataOrigami, table: &CharacterTable) -> Result<Vec<usize>> {
    let orbits = &data.origami().singularity_data().orbits;
    let mut vertex_of = vec![0usize; data.n_squares()];
    for (v, o) in orbits.iter().enumerate() {
        for &s in o {
            vertex_of[s] = v;
        }
    }
    let classes = table.classes();
    let fixed: Vec<f64> = classes
        .representatives()
        .iter()
        .map(|g| orbits.iter().filter(|o| vertex_of[g.image(o[0])] == vertex_of[o[0]]).count() as f64)
        .collect();
    let order = table.group_order() as f64;
    (0..table.len())
        .map(|a| {
            let s: Complex64 = (0..table.len())
                .map(|c| table.value(a, c).conj() * fixed[c] * classes.sizes()[c] as f64)
                .sum::<Complex64>()
                / order;
            round_integral(s.re, 1e-6)
                .filter(|&v| v >= 0 && s.im.abs() < 1e-6)
                .map(|v| v as usize)
                .ok_or_else(|| Error::invariant(format!("vertex multiplicity {s} is not an integer")))
        })
        .collect()
}
