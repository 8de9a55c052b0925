//! Exploratory search for an affine element that permutes the nonzero real
//! isotypic components of a regular origami. Nothing is asserted; the
//! search only reports what it sees.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{analyze, AnalysisOptions};
use crate::characters::{real_classification, CharacterTable};
use crate::config::Config;
use crate::error::Result;
use crate::homology::{label_action, minimal_veech_power, AffineHomologyAction, H1Model, Shear};
use crate::origami::{Convention, GroupDataOrigami};
use crate::permgroup::{GeneratedPermGroup, Permutation};

#[derive(Clone, Debug, Serialize)]
pub struct Probe {
    pub name: String,
    pub n_squares: usize,
    pub gamma_order: usize,
    pub shear: &'static str,
    pub power: i64,
    /// Nonzero real components sent elsewhere, as `(from, to)` labels.
    pub moved: Vec<(String, String)>,
}

/// Label actions of both shears at their minimal Veech powers, restricted
/// to real classes that occur in `H₁⁽⁰⁾`.
pub fn probe(name: &str, data: &GroupDataOrigami, table: &CharacterTable, cfg: &Config) -> Result<Vec<Probe>> {
    let opts =
        AnalysisOptions { run_oracle: false, affine: false, check_conventions: false, ..AnalysisOptions::default() };
    let ell = analyze(data, table, &opts, cfg)?.multiplicities.ell;
    let info = real_classification(table)?;
    let o = data.origami();
    let model = H1Model::new(o)?;
    let mut out = Vec::new();
    for shear in [Shear::Horizontal, Shear::Vertical] {
        let k = minimal_veech_power(o, shear, cfg.veech_search_factor)?;
        let action = AffineHomologyAction::new(&model, o, shear, k, 0)?;
        let moved_rows = label_action(&action, data.gamma(), table)?;
        let mut moved = Vec::new();
        for class in &info.classes {
            let lead = class.members[0];
            if ell[lead] == 0 {
                continue;
            }
            let target = moved_rows[lead];
            if !class.members.contains(&target) {
                moved.push((table.label(lead).to_string(), table.label(target).to_string()));
            }
        }
        out.push(Probe {
            name: name.to_string(),
            n_squares: o.n_squares(),
            gamma_order: data.gamma().order(),
            shear: shear.name(),
            power: k,
            moved,
        });
    }
    Ok(out)
}

/// Regular origamis of random two-generated permutation groups of order at
/// most `max_order`.
pub fn random_regular(count: usize, seed: u64, max_degree: usize, max_order: usize) -> Vec<GroupDataOrigami> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 200 * count.max(1) {
        attempts += 1;
        let n = rng.gen_range(2..=max_degree);
        let mut perm = || {
            let mut v: Vec<usize> = (0..n).collect();
            v.shuffle(&mut rng);
            Permutation::from_images(v).expect("shuffle is a bijection")
        };
        let (r, u) = (perm(), perm());
        let Ok(g) = GeneratedPermGroup::generate(n, vec![r.clone(), u.clone()], max_order) else {
            continue;
        };
        if g.order() < 2 || g.is_abelian() {
            continue;
        }
        if let Ok(data) = GroupDataOrigami::from_groups(g, r, u, GeneratedPermGroup::trivial(n), Convention::Grgu) {
            out.push(data);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_three_keeps_components() {
        let cfg = Config::default();
        let inst = crate::families::heisenberg_regular(3, &cfg).unwrap();
        let probes = probe("h3", &inst.data, &inst.table, &cfg).unwrap();
        assert_eq!(probes.len(), 2);
        assert!(probes.iter().all(|p| p.moved.is_empty()));
    }

    #[test]
    fn random_regular_are_regular() {
        for data in random_regular(3, 7, 5, 120) {
            assert!(data.is_regular());
            assert_eq!(data.gamma().order(), data.n_squares());
        }
    }
}
