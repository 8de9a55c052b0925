//! The worked example families, each with the values it is predicted to
//! produce.

mod field;
mod heisenberg;
mod klein;
mod sl2;
mod sn;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::characters::CharacterTable;
use crate::isotypic::Check;
use crate::origami::GroupDataOrigami;

pub use field::{is_prime, least_primitive_root};
pub use heisenberg::{
    heisenberg_label, heisenberg_quasiregular, heisenberg_regular, predicted_label_image, HeisenbergLabel,
};
pub use klein::klein;
pub use sl2::{
    commutator_permutation, order_of_commutator, sl2_case, sl2_case_counts, sl2p, Sl2CaseCounts, Sl2ClassKind,
};
pub use sn::{partition_label, sn};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyTag {
    Sn,
    Klein,
    Sl2p,
    HeisenbergRegular,
    HeisenbergQuasiregular,
}

impl FamilyTag {
    pub fn cli_name(self) -> &'static str {
        match self {
            FamilyTag::Sn => "sn",
            FamilyTag::Klein => "klein",
            FamilyTag::Sl2p => "sl2p",
            FamilyTag::HeisenbergRegular => "heisenberg",
            FamilyTag::HeisenbergQuasiregular => "heisenberg-qr",
        }
    }
}

/// Predicted values; `None` where no prediction is made.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Expected {
    pub gamma_order: Option<usize>,
    pub gamma_abelian: Option<bool>,
    pub regular: Option<bool>,
    pub quasiregular: Option<bool>,
    pub quotient_cyclic: Option<bool>,
    pub order_c: Option<u64>,
    pub genus: Option<usize>,
    pub n_squares: Option<usize>,
    /// Irreducible label to `ℓ`.
    pub ell: BTreeMap<String, usize>,
    /// Counts of real, quaternionic and complex irreducibles.
    pub fs_counts: Option<(usize, usize, usize)>,
}

/// Values measured by the generic pipeline, in the same shape as
/// [`Expected`].
#[derive(Clone, Debug, Default, Serialize)]
pub struct Observed {
    pub gamma_order: usize,
    pub gamma_abelian: bool,
    pub regular: bool,
    pub quasiregular: bool,
    pub quotient_cyclic: Option<bool>,
    pub order_c: u64,
    pub genus: usize,
    pub n_squares: usize,
    pub ell: BTreeMap<String, usize>,
    pub fs_counts: (usize, usize, usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct DiffRow {
    pub field: String,
    pub expected: String,
    pub computed: String,
    pub matches: bool,
}

#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub tag: FamilyTag,
    /// Parameter name to value, e.g. `n`, `p`, `a`, `b`.
    pub params: BTreeMap<String, u64>,
    pub data: GroupDataOrigami,
    /// Character table of the automorphism group, with family labels.
    pub table: CharacterTable,
    pub expected: Expected,
    /// Family-specific facts checked at construction.
    pub checks: Vec<Check>,
    /// Free-form remarks for reports.
    pub notes: Vec<String>,
}

impl FamilyInstance {
    pub fn name(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        if params.is_empty() {
            self.tag.cli_name().to_string()
        } else {
            format!("{} ({})", self.tag.cli_name(), params.join(", "))
        }
    }

    /// Expected against computed, one row per predicted field.
    pub fn diff(&self, observed: &Observed) -> Vec<DiffRow> {
        let e = &self.expected;
        let mut rows = Vec::new();
        let mut push = |field: &str, expected: String, computed: String| {
            rows.push(DiffRow { field: field.to_string(), matches: expected == computed, expected, computed });
        };
        if let Some(x) = e.n_squares {
            push("squares", x.to_string(), observed.n_squares.to_string());
        }
        if let Some(x) = e.gamma_order {
            push("#Aut", x.to_string(), observed.gamma_order.to_string());
        }
        if let Some(x) = e.gamma_abelian {
            push("Aut abelian", x.to_string(), observed.gamma_abelian.to_string());
        }
        if let Some(x) = e.regular {
            push("regular", x.to_string(), observed.regular.to_string());
        }
        if let Some(x) = e.quasiregular {
            push("quasiregular", x.to_string(), observed.quasiregular.to_string());
        }
        if let Some(x) = e.quotient_cyclic {
            push("G/N cyclic", x.to_string(), observed.quotient_cyclic.map_or("n/a".into(), |c| c.to_string()));
        }
        if let Some(x) = e.order_c {
            push("ord(c)", x.to_string(), observed.order_c.to_string());
        }
        if let Some(x) = e.genus {
            push("genus", x.to_string(), observed.genus.to_string());
        }
        if let Some((r, q, c)) = e.fs_counts {
            let (or, oq, oc) = observed.fs_counts;
            push("real/quaternionic/complex", format!("{r}/{q}/{c}"), format!("{or}/{oq}/{oc}"));
        }
        for (label, ell) in &e.ell {
            let computed = observed.ell.get(label).map_or_else(|| "missing".to_string(), |x| x.to_string());
            push(&format!("ell[{label}]"), ell.to_string(), computed);
        }
        rows
    }
}

#[cfg(test)]
mod tests;
