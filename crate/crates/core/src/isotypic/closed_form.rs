//! Closed-form multiplicities for the symmetric-group and `SL(2, F_p)`
//! families.

use serde::Serialize;

use crate::characters::sn;
use crate::error::{Error, Result};

/// `ℓ_λ = dim V_λ − χ_λ(transposition)` for the symmetric-group family.
pub fn sn_closed_form(lambda: &[usize]) -> Result<usize> {
    let n: usize = lambda.iter().sum();
    let dim = sn::dimension(lambda) as i64;
    let value = sn::transposition_value(lambda)?;
    let ell = dim - value;
    let dual = sn::conjugate(lambda);
    let ell_dual = sn::dimension(&dual) as i64 - sn::transposition_value(&dual)?;
    if ell + ell_dual != 2 * dim {
        return Err(Error::invariant(format!(
            "duality fails for {lambda:?} with n = {n}: {ell} + {ell_dual} ≠ 2·{dim}"
        )));
    }
    usize::try_from(ell).map_err(|_| Error::invariant("negative multiplicity"))
}

/// Conjugacy type of the commutator in `SL(2, F_p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum Sl2Case {
    /// Conjugate to `−[[1, *], [0, 1]]`.
    Parabolic,
    /// Conjugate to `diag(ε^j, ε^{−j})`.
    Hyperbolic { order: u64, exponent: u64 },
    /// Conjugate to `η^j`.
    Elliptic { order: u64, exponent: u64 },
}

impl Sl2Case {
    pub fn name(&self) -> &'static str {
        match self {
            Sl2Case::Parabolic => "parabolic",
            Sl2Case::Hyperbolic { order, .. } if order % 2 == 0 => "hyperbolic-even",
            Sl2Case::Hyperbolic { .. } => "hyperbolic-odd",
            Sl2Case::Elliptic { .. } => "elliptic",
        }
    }
}

/// Irreducible representations of `SL(2, F_p)`; `W` and `X` carry the index
/// `j` of their defining characters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sl2Irrep {
    U,
    V,
    W(u64),
    WPrime,
    WDoublePrime,
    X(u64),
    XPrime,
    XDoublePrime,
}

impl Sl2Irrep {
    pub fn label(&self) -> String {
        match self {
            Sl2Irrep::U => "U".into(),
            Sl2Irrep::V => "V".into(),
            Sl2Irrep::W(j) => format!("W_tau({j})"),
            Sl2Irrep::WPrime => "W'".into(),
            Sl2Irrep::WDoublePrime => "W''".into(),
            Sl2Irrep::X(j) => format!("X_phi({j})"),
            Sl2Irrep::XPrime => "X'".into(),
            Sl2Irrep::XDoublePrime => "X''".into(),
        }
    }

    /// All `p + 4` irreducibles in table order.
    pub fn all(p: u64) -> Vec<Sl2Irrep> {
        let mut out = vec![Sl2Irrep::U, Sl2Irrep::V];
        out.extend((1..(p - 1) / 2).map(Sl2Irrep::W));
        out.extend([Sl2Irrep::WPrime, Sl2Irrep::WDoublePrime]);
        out.extend((1..p.div_ceil(2)).map(Sl2Irrep::X));
        out.extend([Sl2Irrep::XPrime, Sl2Irrep::XDoublePrime]);
        out
    }
}

/// `a + b·(1 − c/o)`, which must be a nonnegative integer.
fn affine_in_inverse_order(a: i64, b: i64, c: i64, o: i64) -> Result<usize> {
    let num = (a + b) * o - b * c;
    if num % o != 0 || num < 0 {
        return Err(Error::invariant(format!("closed form {a} + {b}(1 − {c}/{o}) is not a nonnegative integer")));
    }
    Ok((num / o) as usize)
}

fn sign(j: u64) -> i64 {
    if j % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `ℓ` of an irreducible of `SL(2, F_p)` in the regular origami, by case.
pub fn sl2p_closed_form(p: u64, case: Sl2Case, irrep: Sl2Irrep) -> Result<usize> {
    use Sl2Irrep::*;
    let pi = p as i64;
    let one_mod_four = p % 4 == 1;
    match (case, irrep) {
        (_, U) => Ok(0),
        (Sl2Case::Parabolic, _) if !one_mod_four => Err(Error::invariant("the parabolic case needs p ≡ 1 (mod 4)")),
        (Sl2Case::Parabolic, V | X(_)) => Ok((p - 1) as usize),
        (Sl2Case::Parabolic, WPrime | WDoublePrime | XPrime | XDoublePrime) => Ok(((p - 1) / 2) as usize),
        (Sl2Case::Parabolic, W(j)) => Ok((pi - sign(j)) as usize),

        (Sl2Case::Hyperbolic { order, exponent }, _) => {
            let o = order as i64;
            let even = order % 2 == 0;
            let (v, fixed) = if even { (2, 2) } else { (1, 1) };
            match irrep {
                V => affine_in_inverse_order(0, pi - 1, v, o),
                W(j) if (j * exponent) % (p - 1) == 0 => affine_in_inverse_order(0, pi - 1, fixed, o),
                W(j) if even => affine_in_inverse_order(2, pi - 1, 1 + sign(j), o),
                W(_) => affine_in_inverse_order(2, pi - 1, 1, o),
                WPrime | WDoublePrime => {
                    let half = affine_in_inverse_order(0, pi - 1, v, o)?;
                    if half % 2 != 0 {
                        return Err(Error::invariant("odd value for a halved closed form"));
                    }
                    Ok(half / 2)
                }
                X(j) if even => affine_in_inverse_order(0, pi - 1, 1 + sign(j), o),
                X(_) => affine_in_inverse_order(0, pi - 1, 1, o),
                XPrime | XDoublePrime if even => Ok(((p - 1) / 2) as usize),
                XPrime | XDoublePrime => {
                    let half = affine_in_inverse_order(0, pi - 1, 1, o)?;
                    if half % 2 != 0 {
                        return Err(Error::invariant("odd value for a halved closed form"));
                    }
                    Ok(half / 2)
                }
                U => unreachable!(),
            }
        }

        (Sl2Case::Elliptic { order, exponent }, _) => {
            let o = order as i64;
            let half_minus = |extra: i64| -> Result<usize> {
                // extra + (p+1)(1/2 − 1/o)
                let num = 2 * extra * o + (pi + 1) * (o - 2);
                if num % (2 * o) != 0 || num < 0 {
                    return Err(Error::invariant("elliptic closed form is not an integer"));
                }
                Ok((num / (2 * o)) as usize)
            };
            match irrep {
                V => affine_in_inverse_order(0, pi + 1, 2, o),
                W(j) => affine_in_inverse_order(0, pi + 1, 1 + sign(j), o),
                WPrime | WDoublePrime if one_mod_four => half_minus(0),
                WPrime | WDoublePrime => Ok(p.div_ceil(2) as usize),
                X(j) if (j * exponent) % (p + 1) == 0 => affine_in_inverse_order(0, pi + 1, 2, o),
                X(j) => affine_in_inverse_order(-2, pi + 1, 1 + sign(j), o),
                XPrime | XDoublePrime if one_mod_four => Ok(((p - 1) / 2) as usize),
                XPrime | XDoublePrime => half_minus(-1),
                U => unreachable!(),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::sn::partitions;

    #[test]
    fn sn_examples() {
        assert_eq!(sn_closed_form(&[4]).unwrap(), 0);
        assert_eq!(sn_closed_form(&[1, 1, 1, 1]).unwrap(), 2);
        assert_eq!(sn_closed_form(&[3, 1]).unwrap(), 2);
        assert_eq!(sn_closed_form(&[2, 1, 1]).unwrap(), 4);
        assert_eq!(sn_closed_form(&[2, 2]).unwrap(), 2);
        assert_eq!(sn_closed_form(&[3, 3]).unwrap(), 4);
        assert_eq!(sn_closed_form(&[2, 2, 2]).unwrap(), 6);
        // self-dual shape of dimension 16
        assert_eq!(sn_closed_form(&[3, 2, 1]).unwrap(), 16);
        for n in 4..=8 {
            assert_eq!(sn_closed_form(&[n - 2, 2]).unwrap(), 2 * (n - 3));
            assert_eq!(sn_closed_form(&[n - 1, 1]).unwrap(), 2);
        }
    }

    #[test]
    fn sn_duality_up_to_seven() {
        for n in 2..=7 {
            for lambda in partitions(n) {
                let dim = sn::dimension(&lambda) as usize;
                let a = sn_closed_form(&lambda).unwrap();
                let b = sn_closed_form(&sn::conjugate(&lambda)).unwrap();
                assert_eq!(a + b, 2 * dim);
            }
        }
    }

    #[test]
    fn parabolic_values_for_five() {
        let l = |x| sl2p_closed_form(5, Sl2Case::Parabolic, x).unwrap();
        assert_eq!(l(Sl2Irrep::U), 0);
        assert_eq!(l(Sl2Irrep::V), 4);
        assert_eq!(l(Sl2Irrep::WPrime), 2);
        assert_eq!(l(Sl2Irrep::X(1)), 4);
        assert_eq!(l(Sl2Irrep::XPrime), 2);
        assert_eq!(l(Sl2Irrep::W(1)), 6);
    }

    #[test]
    fn parabolic_needs_one_mod_four() {
        assert!(sl2p_closed_form(7, Sl2Case::Parabolic, Sl2Irrep::V).is_err());
    }
}
