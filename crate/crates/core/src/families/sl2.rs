use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::field::{inv_mod, is_prime, is_square, least_primitive_root, pow_mod, QuadraticExtension};
use super::{Expected, FamilyInstance, FamilyTag};
use crate::characters::CharacterTable;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::isotypic::{sl2p_closed_form, Check, Sl2Case, Sl2Irrep};
use crate::origami::{Convention, GroupDataOrigami};
use crate::permgroup::{GeneratedPermGroup, Permutation};

type Matrix = [[u64; 2]; 2];

/// Conjugacy classes of `SL(2, F_p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sl2ClassKind {
    Identity,
    MinusIdentity,
    /// `[[1, 1], [0, 1]]`, or `[[1, ε], [0, 1]]` when `nonsquare`.
    Unipotent {
        nonsquare: bool,
    },
    /// Negatives of the unipotent classes.
    MinusUnipotent {
        nonsquare: bool,
    },
    /// `diag(ε^j, ε^{−j})` with `0 < j < (p−1)/2`.
    Split(u64),
    /// `η^j` with `0 < j < (p+1)/2`.
    Nonsplit(u64),
}

/// Fixed generators: `ε` the least primitive root and `η = ξ^{p−1}` for the
/// least generator `ξ` of `F_p[x]/(x² − ε)`.
struct Sl2Field {
    p: u64,
    eps: u64,
    /// Trace of `diag(ε^j, ε^{−j})`, indexed by `j`.
    split_traces: Vec<u64>,
    /// Trace of `η^j`, indexed by `j`.
    nonsplit_traces: Vec<u64>,
}

impl Sl2Field {
    fn new(p: u64) -> Self {
        let eps = least_primitive_root(p);
        let ext = QuadraticExtension { p, eps };
        let eta = ext.pow(ext.least_generator(), p - 1);
        let split_traces = (0..p - 1).map(|j| (pow_mod(eps, j, p) + inv_mod(pow_mod(eps, j, p), p)) % p).collect();
        let nonsplit_traces = (0..p + 1).map(|j| 2 * ext.pow(eta, j).0 % p).collect();
        Sl2Field { p, eps, split_traces, nonsplit_traces }
    }

    fn trace_index(traces: &[u64], t: u64, below: u64) -> Option<u64> {
        (1..below).find(|&j| traces[j as usize] == t)
    }

    fn classify(&self, m: Matrix) -> Result<Sl2ClassKind> {
        let p = self.p;
        let neg = |x: u64| (p - x % p) % p;
        let unipotent_nonsquare = |m: Matrix| {
            if m[0][1] != 0 {
                !is_square(m[0][1], p)
            } else {
                !is_square(neg(m[1][0]), p)
            }
        };
        let t = (m[0][0] + m[1][1]) % p;
        if m == [[1, 0], [0, 1]] {
            return Ok(Sl2ClassKind::Identity);
        }
        if m == [[p - 1, 0], [0, p - 1]] {
            return Ok(Sl2ClassKind::MinusIdentity);
        }
        if t == 2 {
            return Ok(Sl2ClassKind::Unipotent { nonsquare: unipotent_nonsquare(m) });
        }
        if t == p - 2 {
            let minus = [[neg(m[0][0]), neg(m[0][1])], [neg(m[1][0]), neg(m[1][1])]];
            return Ok(Sl2ClassKind::MinusUnipotent { nonsquare: unipotent_nonsquare(minus) });
        }
        let disc = (t * t + 4 * p - 4) % p;
        let found = if is_square(disc, p) {
            Self::trace_index(&self.split_traces, t, (p - 1) / 2).map(Sl2ClassKind::Split)
        } else {
            Self::trace_index(&self.nonsplit_traces, t, p.div_ceil(2)).map(Sl2ClassKind::Nonsplit)
        };
        found.ok_or_else(|| Error::invariant(format!("no class of SL(2, F_{p}) has trace {t}")))
    }

    fn value(&self, irrep: Sl2Irrep, class: Sl2ClassKind) -> Complex64 {
        use Sl2ClassKind::*;
        use Sl2Irrep::*;
        let p = self.p as f64;
        let re = |x: f64| Complex64::new(x, 0.0);
        let sign = |j: u64| if j % 2 == 0 { 1.0 } else { -1.0 };
        // value of the order-two character of each torus at −1
        let split_sign = sign((self.p - 1) / 2);
        let nonsplit_sign = -split_sign;
        let gauss = if self.p % 4 == 1 { re(p.sqrt()) } else { Complex64::new(0.0, p.sqrt()) };
        let cos = |j: u64, k: u64, n: u64| (2.0 * PI * (j * k) as f64 / n as f64).cos();
        match (irrep, class) {
            (U, _) => re(1.0),
            (V, Identity | MinusIdentity) => re(p),
            (V, Unipotent { .. } | MinusUnipotent { .. }) => re(0.0),
            (V, Split(_)) => re(1.0),
            (V, Nonsplit(_)) => re(-1.0),

            (W(_), Identity) => re(p + 1.0),
            (W(k), MinusIdentity) => re((p + 1.0) * sign(k)),
            (W(_), Unipotent { .. }) => re(1.0),
            (W(k), MinusUnipotent { .. }) => re(sign(k)),
            (W(k), Split(j)) => re(2.0 * cos(j, k, self.p - 1)),
            (W(_), Nonsplit(_)) => re(0.0),

            (WPrime | WDoublePrime, Identity) => re((p + 1.0) / 2.0),
            (WPrime | WDoublePrime, MinusIdentity) => re(split_sign * (p + 1.0) / 2.0),
            (WPrime | WDoublePrime, Unipotent { nonsquare } | MinusUnipotent { nonsquare }) => {
                let flip = (irrep == WDoublePrime) != nonsquare;
                let g = if flip { -gauss } else { gauss };
                let central = matches!(class, MinusUnipotent { .. });
                (re(1.0) + g) / 2.0 * if central { split_sign } else { 1.0 }
            }
            (WPrime | WDoublePrime, Split(j)) => re(sign(j)),
            (WPrime | WDoublePrime, Nonsplit(_)) => re(0.0),

            (X(_), Identity) => re(p - 1.0),
            (X(k), MinusIdentity) => re((p - 1.0) * sign(k)),
            (X(_), Unipotent { .. }) => re(-1.0),
            (X(k), MinusUnipotent { .. }) => re(-sign(k)),
            (X(_), Split(_)) => re(0.0),
            (X(k), Nonsplit(j)) => re(-2.0 * cos(j, k, self.p + 1)),

            (XPrime | XDoublePrime, Identity) => re((p - 1.0) / 2.0),
            (XPrime | XDoublePrime, MinusIdentity) => re(nonsplit_sign * (p - 1.0) / 2.0),
            (XPrime | XDoublePrime, Unipotent { nonsquare } | MinusUnipotent { nonsquare }) => {
                let flip = (irrep == XDoublePrime) != nonsquare;
                let g = if flip { -gauss } else { gauss };
                let central = matches!(class, MinusUnipotent { .. });
                (g - 1.0) / 2.0 * if central { nonsplit_sign } else { 1.0 }
            }
            (XPrime | XDoublePrime, Split(_)) => re(0.0),
            (XPrime | XDoublePrime, Nonsplit(j)) => re(-sign(j)),
        }
    }
}

fn check_prime(p: u64) -> Result<()> {
    if p < 3 || !is_prime(p) {
        return Err(Error::input(format!("p = {p} is not an odd prime")));
    }
    Ok(())
}

fn check_square(p: u64, pi_squared: u64) -> Result<u64> {
    check_prime(p)?;
    let s = pi_squared % p;
    if s == 0 || !is_square(s, p) {
        return Err(Error::input(format!("{pi_squared} is not a nonzero square mod {p}")));
    }
    Ok(s)
}

/// Order of the commutator from the trace recursion `t_{n+1} = t_1 t_n − t_{n−1}`
/// with `t_0 = 2`, `t_1 = 2 + π²`; the parabolic case has order `2p`.
pub fn order_of_commutator(p: u64, pi_squared: u64) -> Result<u64> {
    let s = check_square(p, pi_squared)?;
    if (s + 4) % p == 0 {
        return Ok(2 * p);
    }
    let t1 = (2 + s) % p;
    let (mut prev, mut cur) = (2u64, t1);
    for n in 1..=2 * p + 2 {
        if cur == 2 {
            return Ok(n);
        }
        let next = (t1 * cur + p * p - prev) % p;
        prev = cur;
        cur = next;
    }
    Err(Error::invariant("trace recursion did not return to 2"))
}

/// Case of the commutator for `π² = ab·ab`, with its class exponent.
pub fn sl2_case(p: u64, pi_squared: u64) -> Result<Sl2Case> {
    let s = check_square(p, pi_squared)?;
    let disc = (s + 4) % p;
    if disc == 0 {
        return Ok(Sl2Case::Parabolic);
    }
    let order = order_of_commutator(p, s)?;
    let field = Sl2Field::new(p);
    let t = (2 + s) % p;
    if is_square(disc, p) {
        let exponent = Sl2Field::trace_index(&field.split_traces, t, (p - 1) / 2)
            .ok_or_else(|| Error::invariant("hyperbolic trace has no diagonal class"))?;
        Ok(Sl2Case::Hyperbolic { order, exponent })
    } else {
        let exponent = Sl2Field::trace_index(&field.nonsplit_traces, t, p.div_ceil(2))
            .ok_or_else(|| Error::invariant("elliptic trace has no torus class"))?;
        Ok(Sl2Case::Elliptic { order, exponent })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Sl2CaseCounts {
    pub parabolic: usize,
    pub hyperbolic: usize,
    pub elliptic: usize,
}

/// How many values of `π²` fall into each case.
pub fn sl2_case_counts(p: u64) -> Result<Sl2CaseCounts> {
    check_prime(p)?;
    let squares: BTreeSet<u64> = (1..p).map(|x| x * x % p).collect();
    let mut counts = Sl2CaseCounts::default();
    for s in squares {
        match sl2_case(p, s)? {
            Sl2Case::Parabolic => counts.parabolic += 1,
            Sl2Case::Hyperbolic { .. } => counts.hyperbolic += 1,
            Sl2Case::Elliptic { .. } => counts.elliptic += 1,
        }
    }
    Ok(counts)
}

fn vector_index(p: u64, x: u64, y: u64) -> usize {
    (x + p * y - 1) as usize
}

/// Action on the nonzero column vectors of `F_p²`.
fn matrix_perm(p: u64, m: Matrix) -> Permutation {
    let images = (1..p * p)
        .map(|i| {
            let (x, y) = (i % p, i / p);
            let nx = (m[0][0] * x + m[0][1] * y) % p;
            let ny = (m[1][0] * x + m[1][1] * y) % p;
            vector_index(p, nx, ny)
        })
        .collect();
    Permutation::from_images(images).expect("invertible matrices permute nonzero vectors")
}

fn perm_matrix(p: u64, g: &Permutation) -> Matrix {
    let e1 = g.image(vector_index(p, 1, 0)) as u64 + 1;
    let e2 = g.image(vector_index(p, 0, 1)) as u64 + 1;
    [[e1 % p, e2 % p], [e1 / p, e2 / p]]
}

/// `c = g_r⁻¹ g_u⁻¹ g_r g_u` for `g_r = [[1, a], [0, 1]]`, `g_u = [[1, 0], [b, 1]]`
/// on nonzero vectors, without enumerating the group.
pub fn commutator_permutation(p: u64, a: u64, b: u64) -> Permutation {
    let g_r = matrix_perm(p, [[1, a % p], [0, 1]]);
    let g_u = matrix_perm(p, [[1, 0], [b % p, 1]]);
    Convention::Inverse.commutator(&g_r, &g_u)
}

/// The regular origami of `SL(2, F_p)` with `g_r = [[1, a], [0, 1]]` and
/// `g_u = [[1, 0], [b, 1]]`.
pub fn sl2p(p: u64, a: u64, b: u64, cfg: &Config) -> Result<FamilyInstance> {
    check_prime(p)?;
    let (a, b) = (a % p, b % p);
    if a == 0 || b == 0 {
        return Err(Error::input("a and b must be nonzero mod p"));
    }
    let order = (p * (p * p - 1)) as usize;
    if order > cfg.element_cap {
        return Err(Error::GroupTooLarge { cap: cfg.element_cap });
    }
    let degree = (p * p - 1) as usize;
    let g_r = matrix_perm(p, [[1, a], [0, 1]]);
    let g_u = matrix_perm(p, [[1, 0], [b, 1]]);
    let g = GeneratedPermGroup::generate(degree, vec![g_r.clone(), g_u.clone()], cfg.element_cap)?;
    if g.order() != order {
        return Err(Error::invariant(format!("generated {} elements, not |SL(2, F_{p})| = {order}", g.order())));
    }
    let data = GroupDataOrigami::from_groups(g, g_r, g_u, GeneratedPermGroup::trivial(degree), Convention::Inverse)?;

    let field = Sl2Field::new(p);
    let irreps = Sl2Irrep::all(p);
    let table = {
        let classes = data.gamma().conjugacy_classes();
        let kinds = classes
            .representatives()
            .iter()
            .map(|x| field.classify(perm_matrix(p, data.lift(x))))
            .collect::<Result<Vec<_>>>()?;
        let distinct: BTreeSet<String> = kinds.iter().map(|k| format!("{k:?}")).collect();
        if distinct.len() != kinds.len() || kinds.len() != irreps.len() {
            return Err(Error::invariant("conjugacy classes do not match the SL(2) class list"));
        }
        let rows = irreps.iter().map(|&irrep| kinds.iter().map(|&k| field.value(irrep, k)).collect()).collect();
        let labels = irreps.iter().map(Sl2Irrep::label).collect();
        CharacterTable::from_rows(data.gamma(), classes, rows, labels, cfg)?
    };

    let pi = a * b % p;
    let pi_squared = pi * pi % p;
    let case = sl2_case(p, pi_squared)?;
    let order_c = order_of_commutator(p, pi_squared)?;
    let ell = irreps
        .iter()
        .map(|&irrep| Ok((irrep.label(), sl2p_closed_form(p, case, irrep)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let fs_counts = if p % 4 == 1 {
        (((p + 5) / 2) as usize, ((p + 3) / 2) as usize, 0)
    } else {
        (p.div_ceil(2) as usize, ((p - 1) / 2) as usize, 4)
    };
    let genus = 1 + order * (order_c as usize - 1) / (2 * order_c as usize);

    let c = perm_matrix(p, data.c());
    let trace = (c[0][0] + c[1][1]) % p;
    let mut checks = vec![
        Check::new(
            "commutator-trace",
            trace == (2 + pi_squared) % p,
            format!("tr(c) = {trace}, 2 + π² = {}", (2 + pi_squared) % p),
        ),
        Check::new(
            "trace-recursion-matches-permutation-order",
            data.c().order() == order_c,
            format!("recursion {order_c}, permutation order {}", data.c().order()),
        ),
    ];
    let (case_ok, detail) = match case {
        Sl2Case::Parabolic => (order_c == 2 * p, format!("ord(c) = {order_c}")),
        Sl2Case::Hyperbolic { order, exponent } => (
            order > 2 && ((p - 1) / 2) % order == 0 && exponent % 2 == 0,
            format!("ord(c) = {order}, exponent {exponent}"),
        ),
        Sl2Case::Elliptic { order, exponent } => (
            order > 2 && order % 2 == 0 && (p + 1) % order == 0 && exponent % 2 == 1,
            format!("ord(c) = {order}, exponent {exponent}"),
        ),
    };
    checks.push(Check::new("case-constraints", case_ok, detail));

    Ok(FamilyInstance {
        tag: FamilyTag::Sl2p,
        params: BTreeMap::from([("p".into(), p), ("a".into(), a), ("b".into(), b)]),
        expected: Expected {
            gamma_order: Some(order),
            gamma_abelian: Some(false),
            regular: Some(true),
            quasiregular: Some(true),
            quotient_cyclic: Some(true),
            order_c: Some(order_c),
            genus: Some(genus),
            n_squares: Some(order),
            ell,
            fs_counts: Some(fs_counts),
        },
        data,
        table,
        checks,
        notes: vec![
            format!("π² = {pi_squared}, case {}", case.name()),
            format!("ε = {}", field.eps),
            "c = g_r⁻¹ g_u⁻¹ g_r g_u".into(),
        ],
    })
}

#[cfg(test)]
pub(super) fn classify_for_tests(p: u64, m: Matrix) -> Sl2ClassKind {
    Sl2Field::new(p).classify(m).unwrap()
}
