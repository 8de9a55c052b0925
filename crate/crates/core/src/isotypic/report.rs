use std::collections::BTreeMap;

use serde::Serialize;

use super::multiplicity::Multiplicities;
use crate::characters::{CharacterTable, RealType, RealTypeInfo};
use crate::error::{Error, Result};
use crate::report::markdown_table;

/// Isometry group of the form induced on a real isotypic component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IsometryGroup {
    /// `Sp(rank, R)`.
    Symplectic { rank: usize },
    /// `U_C(p, q)`; the signature is only known when supplied by the caller.
    ComplexUnitary { p_plus_q: usize, signature: Option<(usize, usize)> },
    /// `U_H(p, q)`.
    QuaternionicUnitary { p_plus_q: usize, signature: Option<(usize, usize)> },
}

impl std::fmt::Display for IsometryGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sig = |s: &Option<(usize, usize)>, n: usize| match s {
            Some((p, q)) => format!("{p},{q}"),
            None => format!("p+q={n}"),
        };
        match self {
            IsometryGroup::Symplectic { rank } => write!(f, "Sp({rank}, R)"),
            IsometryGroup::ComplexUnitary { p_plus_q, signature } => {
                write!(f, "U_C({})", sig(signature, *p_plus_q))
            }
            IsometryGroup::QuaternionicUnitary { p_plus_q, signature } => {
                write!(f, "U_H({})", sig(signature, *p_plus_q))
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IrreducibleEntry {
    pub label: String,
    pub dim: usize,
    pub m: usize,
    pub ell: usize,
    pub kind: RealType,
}

#[derive(Clone, Debug, Serialize)]
pub struct RealClassEntry {
    pub members: Vec<String>,
    pub kind: RealType,
    pub schur_index: usize,
    pub dim_real: usize,
    /// `ℓ_a = ℓ_α / m_a`.
    pub ell_real: usize,
    /// Real dimension of the isotypic component `W_a`.
    pub dim_component: usize,
    pub isometry: IsometryGroup,
    /// `|q − p|·dim_R V_a`, when a signature was supplied.
    pub zero_exponent_bound: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MultiplicityReport {
    pub irreducibles: Vec<IrreducibleEntry>,
    pub real_classes: Vec<RealClassEntry>,
    pub genus: usize,
    pub sigma_star_count: usize,
    pub ell_trivial: usize,
    pub quasiregular: bool,
}

impl MultiplicityReport {
    /// Assembles the report. `signatures` maps irreducible labels to `(p, q)`.
    pub fn new(
        mult: &Multiplicities,
        table: &CharacterTable,
        info: &RealTypeInfo,
        genus: usize,
        sigma_star_count: usize,
        quasiregular: bool,
        signatures: &BTreeMap<String, (usize, usize)>,
    ) -> Result<Self> {
        let irreducibles: Vec<IrreducibleEntry> = (0..table.len())
            .map(|a| IrreducibleEntry {
                label: table.label(a).to_string(),
                dim: table.dim(a),
                m: mult.m[a],
                ell: mult.ell[a],
                kind: info.kind[a],
            })
            .collect();
        let mut real_classes = Vec::with_capacity(info.classes.len());
        for class in &info.classes {
            let lead = class.members[0];
            let ell = mult.ell[lead];
            if class.members.iter().any(|&b| mult.ell[b] != ell) {
                return Err(Error::invariant(format!(
                    "conjugate irreducibles {:?} have different multiplicities",
                    class.members
                )));
            }
            if ell % class.schur_index != 0 {
                return Err(Error::invariant(format!(
                    "{} is quaternionic with odd multiplicity {ell}",
                    table.label(lead)
                )));
            }
            let ell_real = ell / class.schur_index;
            let signature = class.members.iter().find_map(|&b| signatures.get(table.label(b)).copied());
            if let Some((p, q)) = signature {
                if p + q != ell_real {
                    return Err(Error::input(format!(
                        "signature ({p},{q}) for {} does not add up to {ell_real}",
                        table.label(lead)
                    )));
                }
            }
            let isometry = match class.kind {
                RealType::Real => {
                    if ell_real % 2 != 0 {
                        return Err(Error::invariant(format!(
                            "real-type {} has odd multiplicity {ell_real}",
                            table.label(lead)
                        )));
                    }
                    IsometryGroup::Symplectic { rank: ell_real }
                }
                RealType::Complex => IsometryGroup::ComplexUnitary { p_plus_q: ell_real, signature },
                RealType::Quaternionic => IsometryGroup::QuaternionicUnitary { p_plus_q: ell_real, signature },
            };
            let zero_exponent_bound = match (&isometry, signature) {
                (IsometryGroup::Symplectic { .. }, _) | (_, None) => None,
                (_, Some((p, q))) => Some(p.abs_diff(q) * class.dim_real),
            };
            real_classes.push(RealClassEntry {
                members: class.members.iter().map(|&b| table.label(b).to_string()).collect(),
                kind: class.kind,
                schur_index: class.schur_index,
                dim_real: class.dim_real,
                ell_real,
                dim_component: ell_real * class.dim_real,
                isometry,
                zero_exponent_bound,
            });
        }
        Ok(MultiplicityReport {
            ell_trivial: irreducibles[0].ell,
            irreducibles,
            real_classes,
            genus,
            sigma_star_count,
            quasiregular,
        })
    }

    pub fn ell_of(&self, label: &str) -> Option<usize> {
        self.irreducibles.iter().find(|e| e.label == label).map(|e| e.ell)
    }

    pub fn to_markdown(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .irreducibles
            .iter()
            .map(|e| {
                let class = self
                    .real_classes
                    .iter()
                    .find(|c| c.members.contains(&e.label))
                    .expect("every irreducible has a real class");
                vec![
                    e.label.clone(),
                    e.dim.to_string(),
                    e.m.to_string(),
                    e.ell.to_string(),
                    e.kind.as_str().to_string(),
                    class.schur_index.to_string(),
                    class.ell_real.to_string(),
                    class.isometry.to_string(),
                ]
            })
            .collect();
        markdown_table(&["α", "dim", "m_α", "ℓ_α", "type", "m_a", "ℓ_a", "Sp(W_a)"], &rows)
    }
}
