use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::field::is_prime;
use super::{Expected, FamilyInstance, FamilyTag};
use crate::characters::CharacterTable;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::isotypic::Check;
use crate::origami::{Convention, GroupDataOrigami};
use crate::permgroup::{GeneratedPermGroup, Permutation};

/// `M(a, b, c)` acting on `F_p²` by `(x, y) ↦ (x + a·y + c, y + b)`; the
/// point `(x, y)` has index `x + p·y`.
fn heisenberg_perm(p: u64, a: u64, b: u64, c: u64) -> Permutation {
    let images = (0..p * p)
        .map(|i| {
            let (x, y) = (i % p, i / p);
            (((x + a * y + c) % p) + p * ((y + b) % p)) as usize
        })
        .collect();
    Permutation::from_images(images).expect("affine maps are bijective")
}

/// Coordinates `(a, b, c)` of a group element.
fn decode(p: u64, g: &Permutation) -> (u64, u64, u64) {
    let origin = g.image(0) as u64;
    let (c, b) = (origin % p, origin / p);
    let x = g.image(p as usize) as u64 % p;
    ((x + p - c) % p, b, c)
}

/// Labels of the irreducibles of the Heisenberg group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum HeisenbergLabel {
    /// `χ_{m,n}(M(a,b,c)) = ω^{ma + nb}`.
    Linear { m: u64, n: u64 },
    /// Dimension `p`, with central character `c ↦ ω^{kc}`.
    Central { k: u64 },
}

impl HeisenbergLabel {
    pub fn label(&self) -> String {
        match self {
            HeisenbergLabel::Linear { m, n } => format!("chi({m},{n})"),
            HeisenbergLabel::Central { k } => format!("rho({k})"),
        }
    }
}

/// Parses a label produced by [`HeisenbergLabel::label`].
pub fn heisenberg_label(label: &str) -> Option<HeisenbergLabel> {
    if let Some(rest) = label.strip_prefix("chi(").and_then(|s| s.strip_suffix(')')) {
        let (m, n) = rest.split_once(',')?;
        return Some(HeisenbergLabel::Linear { m: m.parse().ok()?, n: n.parse().ok()? });
    }
    let k = label.strip_prefix("rho(")?.strip_suffix(')')?;
    Some(HeisenbergLabel::Central { k: k.parse().ok()? })
}

fn generators(p: u64, cfg: &Config) -> Result<(Permutation, Permutation, GeneratedPermGroup)> {
    if !is_prime(p) {
        return Err(Error::input(format!("p = {p} is not prime")));
    }
    let g_r = heisenberg_perm(p, 1, 0, 0);
    let g_u = heisenberg_perm(p, 0, 1, 0);
    let g = GeneratedPermGroup::generate((p * p) as usize, vec![g_r.clone(), g_u.clone()], cfg.element_cap)?;
    if g.order() as u64 != p * p * p {
        return Err(Error::invariant("generators do not span the Heisenberg group"));
    }
    Ok((g_r, g_u, g))
}

/// The regular origami of the Heisenberg group over `F_p` with
/// `g_r = M(1,0,0)` and `g_u = M(0,1,0)`.
pub fn heisenberg_regular(p: u64, cfg: &Config) -> Result<FamilyInstance> {
    let (g_r, g_u, g) = generators(p, cfg)?;
    let degree = g.degree();
    let data = GroupDataOrigami::from_groups(g, g_r, g_u, GeneratedPermGroup::trivial(degree), Convention::Grgu)?;

    let omega = |x: u64| Complex64::from_polar(1.0, 2.0 * PI * (x % p) as f64 / p as f64);
    let mut labels = Vec::new();
    for m in 0..p {
        for n in 0..p {
            labels.push(HeisenbergLabel::Linear { m, n });
        }
    }
    labels.extend((1..p).map(|k| HeisenbergLabel::Central { k }));
    let classes = data.gamma().conjugacy_classes();
    let coords: Vec<(u64, u64, u64)> = classes.representatives().iter().map(|x| decode(p, data.lift(x))).collect();
    let rows = labels
        .iter()
        .map(|l| {
            coords
                .iter()
                .map(|&(a, b, c)| match *l {
                    HeisenbergLabel::Linear { m, n } => omega(m * a + n * b),
                    HeisenbergLabel::Central { k } if a == 0 && b == 0 => omega(k * c) * p as f64,
                    HeisenbergLabel::Central { .. } => Complex64::new(0.0, 0.0),
                })
                .collect()
        })
        .collect();
    let table = CharacterTable::from_rows(
        data.gamma(),
        classes,
        rows,
        labels.iter().map(HeisenbergLabel::label).collect(),
        cfg,
    )?;

    let ell = labels
        .iter()
        .map(|l| {
            let value = match l {
                HeisenbergLabel::Linear { .. } => 0,
                HeisenbergLabel::Central { .. } => p as usize,
            };
            (l.label(), value)
        })
        .collect();
    let p_us = p as usize;
    let fs_counts = if p == 2 { (5, 0, 0) } else { (1, 0, p_us * p_us - 1 + p_us - 1) };
    let checks = vec![Check::new(
        "commutator-is-central",
        {
            let (a, b, c) = decode(p, data.c());
            a == 0 && b == 0 && c != 0
        },
        format!("c = M{:?}", decode(p, data.c())),
    )];

    Ok(FamilyInstance {
        tag: FamilyTag::HeisenbergRegular,
        params: BTreeMap::from([("p".into(), p)]),
        expected: Expected {
            gamma_order: Some(p_us.pow(3)),
            gamma_abelian: Some(false),
            regular: Some(true),
            quasiregular: Some(true),
            quotient_cyclic: Some(true),
            order_c: Some(p),
            genus: Some(1 + p_us * p_us * (p_us - 1) / 2),
            n_squares: Some(p_us.pow(3)),
            ell,
            fs_counts: Some(fs_counts),
        },
        data,
        table,
        checks,
        notes: Vec::new(),
    })
}

/// The quasiregular, non-regular origami with `H = ⟨g_u⟩`.
pub fn heisenberg_quasiregular(p: u64, cfg: &Config) -> Result<FamilyInstance> {
    let (g_r, g_u, g) = generators(p, cfg)?;
    let degree = g.degree();
    let h = GeneratedPermGroup::generate(degree, vec![g_u.clone()], cfg.element_cap)?;
    let data = GroupDataOrigami::from_groups(g, g_r, g_u, h, Convention::Grgu)?;
    let table = CharacterTable::compute(data.gamma(), cfg)?;
    let p_us = p as usize;
    Ok(FamilyInstance {
        tag: FamilyTag::HeisenbergQuasiregular,
        params: BTreeMap::from([("p".into(), p)]),
        expected: Expected {
            gamma_order: Some(p_us),
            gamma_abelian: Some(true),
            regular: Some(false),
            quasiregular: Some(true),
            n_squares: Some(p_us * p_us),
            ..Expected::default()
        },
        data,
        table,
        checks: Vec::new(),
        notes: Vec::new(),
    })
}

/// Predicted image of an irreducible under an affine map with derivative `d`:
/// linear characters move by the row action `(m, n) ↦ (m, n)·d⁻¹ mod p` and
/// the central character `ζ` goes to `ζ^{det d}`.
pub fn predicted_label_image(p: u64, d: [[i64; 2]; 2], label: HeisenbergLabel) -> HeisenbergLabel {
    let det = d[0][0] * d[1][1] - d[0][1] * d[1][0];
    let md = |x: i64| x.rem_euclid(p as i64) as u64;
    // d⁻¹ = det · adj(d) for det = ±1
    let inv = [[det * d[1][1], -det * d[0][1]], [-det * d[1][0], det * d[0][0]]];
    match label {
        HeisenbergLabel::Linear { m, n } => {
            let (m, n) = (m as i64, n as i64);
            HeisenbergLabel::Linear { m: md(m * inv[0][0] + n * inv[1][0]), n: md(m * inv[0][1] + n * inv[1][1]) }
        }
        HeisenbergLabel::Central { k } => HeisenbergLabel::Central { k: md(k as i64 * det) },
    }
}
