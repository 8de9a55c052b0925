use std::collections::BTreeMap;

use super::{Expected, FamilyInstance, FamilyTag};
use crate::characters::{sn as young, CharacterTable};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::isotypic::{sn_closed_form, Check};
use crate::origami::{Convention, GroupDataOrigami};
use crate::permgroup::Permutation;

pub fn partition_label(lambda: &[usize]) -> String {
    let parts: Vec<String> = lambda.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

/// The automorphism as a permutation of the odd points, renumbered `0..n`.
fn on_odd_points(data: &GroupDataOrigami, gamma: &Permutation, n: usize) -> Result<Permutation> {
    let lift = data.lift(gamma);
    let images = (0..n)
        .map(|i| {
            let y = lift.image(2 * i + 1);
            if y % 2 == 0 {
                Err(Error::invariant("normalizer element does not preserve the odd points"))
            } else {
                Ok((y - 1) / 2)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Permutation::from_images(images)
}

/// The quasiregular family on `2n` points with `Aut ≅ S_n`: `G` preserves the
/// parity partition, `g_r` is the long cycle, `g_u = (1 3)` and `H` is the
/// symmetric group on the even points.
pub fn sn(n: usize, cfg: &Config) -> Result<FamilyInstance> {
    if n < 2 {
        return Err(Error::input("the symmetric family needs n >= 2"));
    }
    let degree = 2 * n;
    let g_r = Permutation::from_cycles(degree, &[(0..degree).collect()])?;
    let g_u = Permutation::from_cycles(degree, &[vec![1, 3]])?;
    let mut h_gens = vec![Permutation::from_cycles(degree, &[vec![0, 2]])?];
    if n > 2 {
        h_gens.push(Permutation::from_cycles(degree, &[(0..n).map(|i| 2 * i).collect()])?);
    }
    let data = GroupDataOrigami::new(g_r.clone(), g_u, h_gens, Convention::Inverse, cfg.element_cap)?;
    let factorial: usize = (1..=n).product();

    let mut table = CharacterTable::compute(data.gamma(), cfg)?;
    let types = table
        .classes()
        .representatives()
        .iter()
        .map(|g| on_odd_points(&data, g, n).map(|x| x.cycle_type()))
        .collect::<Result<Vec<_>>>()?;
    let mut labels = vec![String::new(); table.len()];
    let mut expected_ell = BTreeMap::new();
    for lambda in young::partitions(n) {
        let values = types.iter().map(|mu| young::character(&lambda, mu)).collect::<Result<Vec<_>>>()?;
        let row = (0..table.len())
            .find(|&r| {
                labels[r].is_empty()
                    && table
                        .row(r)
                        .iter()
                        .zip(&values)
                        .all(|(v, &e)| (v.re - e as f64).abs() < 1e-6 && v.im.abs() < 1e-6)
            })
            .ok_or_else(|| Error::invariant(format!("no character of Aut matches {}", partition_label(&lambda))))?;
        labels[row] = partition_label(&lambda);
        expected_ell.insert(labels[row].clone(), sn_closed_form(&lambda)?);
    }
    table.set_labels(labels);

    let twice_euler: usize =
        young::partitions(n).iter().map(|l| expected_ell[&partition_label(l)] * young::dimension(l) as usize).sum();

    let mut checks = Vec::new();
    let h = data.subgroup();
    let shifted = h.elements().iter().filter(|x| h.contains(&x.conjugate_by(&g_r))).count();
    checks.push(Check::new(
        "subgroup-meets-shifted-copy-trivially",
        shifted == 1,
        format!("|H ∩ g_r H g_r⁻¹| = {shifted}"),
    ));
    let preserves_parity = data.normalizer().elements().iter().all(|g| (0..degree).all(|x| g.image(x) % 2 == x % 2));
    checks.push(Check::new(
        "normalizer-is-parity-stabilizer",
        preserves_parity && data.normalizer().order() == factorial * factorial,
        format!("|N| = {}", data.normalizer().order()),
    ));
    checks.push(Check::new(
        "normalizer-normal-of-index-two",
        data.normalizer_index() == 2 && data.normalizer().is_normal_in(data.group()),
        format!("[G:N] = {}", data.normalizer_index()),
    ));
    let c_bar = on_odd_points(&data, &data.gamma_image(data.c()), n)?;
    checks.push(Check::new(
        "commutator-image-is-transposition",
        c_bar.cycle_type() == young::transposition_type(n),
        format!("cycle type {:?}", c_bar.cycle_type()),
    ));

    Ok(FamilyInstance {
        tag: FamilyTag::Sn,
        params: BTreeMap::from([("n".to_string(), n as u64)]),
        expected: Expected {
            gamma_order: Some(factorial),
            gamma_abelian: Some(n <= 2),
            regular: Some(false),
            quasiregular: Some(true),
            quotient_cyclic: Some(true),
            order_c: Some(2),
            genus: Some(1 + twice_euler / 2),
            n_squares: Some(2 * factorial),
            ell: expected_ell,
            fs_counts: Some((young::partitions(n).len(), 0, 0)),
        },
        data,
        table,
        checks,
        notes: vec!["c = g_r⁻¹ g_u⁻¹ g_r g_u".into()],
    })
}
