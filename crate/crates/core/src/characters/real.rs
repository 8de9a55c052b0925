use serde::Serialize;

use super::table::CharacterTable;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RealType {
    Real,
    Complex,
    Quaternionic,
}

impl RealType {
    pub fn as_str(self) -> &'static str {
        match self {
            RealType::Real => "real",
            RealType::Complex => "complex",
            RealType::Quaternionic => "quaternionic",
        }
    }
}

/// An irreducible real representation: a real-type or quaternionic complex
/// irreducible, or a pair of complex-conjugate ones.
#[derive(Clone, Debug, Serialize)]
pub struct RealClass {
    pub members: Vec<usize>,
    pub kind: RealType,
    pub schur_index: usize,
    pub dim_real: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RealTypeInfo {
    pub fs_indicator: Vec<i32>,
    pub kind: Vec<RealType>,
    pub conjugate_partner: Vec<usize>,
    pub schur_index: Vec<usize>,
    /// Index into `classes` for each complex irreducible.
    pub class_of: Vec<usize>,
    pub classes: Vec<RealClass>,
}

impl RealTypeInfo {
    pub fn count(&self, kind: RealType) -> usize {
        self.kind.iter().filter(|&&k| k == kind).count()
    }
}

pub fn real_classification(table: &CharacterTable) -> Result<RealTypeInfo> {
    let k = table.len();
    let mut fs_indicator = Vec::with_capacity(k);
    let mut kind = Vec::with_capacity(k);
    let mut conjugate_partner = Vec::with_capacity(k);
    for a in 0..k {
        let fs = table.fs_indicator(a)?;
        let partner = table
            .conjugate_row(a)
            .ok_or_else(|| Error::invariant(format!("{} has no complex-conjugate row", table.label(a))))?;
        let t = match fs {
            1 => RealType::Real,
            0 => RealType::Complex,
            _ => RealType::Quaternionic,
        };
        if (t == RealType::Complex) != (partner != a) {
            return Err(Error::invariant(format!(
                "{} has indicator {fs} but conjugate partner {}",
                table.label(a),
                table.label(partner)
            )));
        }
        fs_indicator.push(fs);
        kind.push(t);
        conjugate_partner.push(partner);
    }
    let schur_index: Vec<usize> = kind.iter().map(|&t| if t == RealType::Quaternionic { 2 } else { 1 }).collect();
    let mut class_of = vec![usize::MAX; k];
    let mut classes = Vec::new();
    for a in 0..k {
        if class_of[a] != usize::MAX {
            continue;
        }
        let members = if conjugate_partner[a] == a { vec![a] } else { vec![a, conjugate_partner[a]] };
        for &m in &members {
            class_of[m] = classes.len();
        }
        let dim_real = match kind[a] {
            RealType::Real => table.dim(a),
            _ => 2 * table.dim(a),
        };
        classes.push(RealClass { members, kind: kind[a], schur_index: schur_index[a], dim_real });
    }
    Ok(RealTypeInfo { fs_indicator, kind, conjugate_partner, schur_index, class_of, classes })
}
