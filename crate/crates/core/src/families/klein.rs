use std::collections::BTreeMap;

use super::{Expected, FamilyInstance, FamilyTag};
use crate::characters::CharacterTable;
use crate::config::Config;
use crate::error::Result;
use crate::isotypic::Check;
use crate::origami::{Convention, GroupDataOrigami};
use crate::permgroup::{GeneratedPermGroup, Permutation};

/// A quasiregular origami on eight points whose `G/N` is the Klein four-group.
/// `H` fixes the residue class `{0, 4}` pointwise.
pub fn klein(cfg: &Config) -> Result<FamilyInstance> {
    let g_r = Permutation::parse_cycles(8, "(0 1)(4 5)(2 3 6 7)")?;
    let g_u = Permutation::parse_cycles(8, "(0 2)(4 6)(1 3 5 7)")?;
    let g = GeneratedPermGroup::generate(8, vec![g_r.clone(), g_u.clone()], cfg.element_cap)?;
    let fixing = g.elements().iter().filter(|x| x.image(0) == 0 && x.image(4) == 4);
    let h = GeneratedPermGroup::from_elements(8, fixing, None, cfg.element_cap)?;
    let data = GroupDataOrigami::from_groups(g, g_r.clone(), g_u.clone(), h, Convention::Grgu)?;
    let table = CharacterTable::compute(data.gamma(), cfg)?;

    let r2 = g_r.pow(2);
    let u2 = g_u.pow(2);
    let h = data.subgroup();
    let checks = vec![
        Check::new(
            "right-square-in-subgroup",
            r2 == Permutation::parse_cycles(8, "(2 6)(3 7)")? && h.contains(&r2),
            format!("g_r² = {r2}"),
        ),
        Check::new(
            "up-square-in-subgroup",
            u2 == Permutation::parse_cycles(8, "(1 5)(3 7)")? && h.contains(&u2),
            format!("g_u² = {u2}"),
        ),
        Check::new(
            "quotient-has-order-four",
            data.normalizer_index() == 4,
            format!("[G:N] = {}", data.normalizer_index()),
        ),
    ];

    Ok(FamilyInstance {
        tag: FamilyTag::Klein,
        params: BTreeMap::new(),
        expected: Expected {
            regular: Some(false),
            quasiregular: Some(true),
            quotient_cyclic: Some(false),
            ..Expected::default()
        },
        data,
        table,
        checks,
        notes: Vec::new(),
    })
}
