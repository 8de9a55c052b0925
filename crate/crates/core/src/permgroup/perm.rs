use std::fmt;
use std::ops::Mul;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported degree; images are stored as `u16`.
pub const MAX_DEGREE: usize = u16::MAX as usize + 1;

/// A permutation of `{0, …, degree-1}` in one-line notation.
///
/// Products follow the functional convention `(a * b)(x) = a(b(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u16]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "degree {degree} exceeds {MAX_DEGREE}");
        Permutation { images: (0..degree).map(|i| i as u16).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(Error::InvalidPermutation(format!("degree {n} exceeds {MAX_DEGREE}")));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection of 0..{n}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images: images.into_iter().map(|x| x as u16).collect() })
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::InvalidPermutation(format!("degree {degree} exceeds {MAX_DEGREE}")));
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::InvalidPermutation(format!("point {x} out of range for degree {degree}")));
                }
                if touched[x] {
                    return Err(Error::InvalidPermutation(format!("point {x} appears twice in cycle notation")));
                }
                touched[x] = true;
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    /// Parses cycle notation such as `"(0 1)(4 5)(2 3 6 7)"`; `"()"` or an
    /// empty string is the identity. Points may be separated by spaces or commas.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open =
                rest.strip_prefix('(').ok_or_else(|| Error::InvalidPermutation(format!("expected '(' in {text:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::InvalidPermutation(format!("unbalanced parenthesis in {text:?}")))?;
            let body = &open[..close];
            let cycle = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>().map_err(|_| Error::InvalidPermutation(format!("bad point {s:?} in {text:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = open[close + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.images().collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u16; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Permutation { images: inv.into() }
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self * other)
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        acc
    }

    /// `g ∘ self ∘ g⁻¹`.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        let mut out = vec![0u16; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[x as usize];
        }
        Permutation { images: out.into() }
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// All cycle lengths including fixed points, in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lengths = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.image(x);
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    pub fn order(&self) -> u64 {
        self.cycle_type().into_iter().fold(1u64, |acc, len| acc.lcm(&(len as u64)))
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|&(i, &x)| i == x as usize).count()
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch in product");
        Permutation { images: rhs.images.iter().map(|&x| self.images[x as usize]).collect() }
    }
}

/// `a · b · a⁻¹ · b⁻¹`.
pub fn commutator(a: &Permutation, b: &Permutation) -> Result<Permutation> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch(a.degree(), b.degree()));
    }
    Ok(&(&(a * b) * &a.inverse()) * &b.inverse())
}

pub fn compose(a: &Permutation, b: &Permutation) -> Result<Permutation> {
    a.compose(b)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, x) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.images())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(degree: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(degree, s).unwrap()
    }

    #[test]
    fn compose_applies_right_factor_first() {
        // (0 1 2)∘(0 1): 0→1→2, 1→0→1, 2→2→0
        assert_eq!(compose(&p(3, "(0 1 2)"), &p(3, "(0 1)")).unwrap(), p(3, "(0 2)"));
        assert_eq!(compose(&p(3, "(0 1)"), &p(3, "(0 1)")).unwrap(), Permutation::identity(3));
        assert_eq!(compose(&Permutation::identity(4), &p(4, "(1 3)")).unwrap(), p(4, "(1 3)"));
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        assert!(matches!(
            compose(&Permutation::identity(2), &Permutation::identity(3)),
            Err(Error::DegreeMismatch(2, 3))
        ));
    }

    #[test]
    fn commutator_of_commuting_elements_is_trivial() {
        let a = p(6, "(0 1)(2 3)");
        let b = p(6, "(4 5)");
        assert!(commutator(&a, &b).unwrap().is_identity());
        assert!(commutator(&a, &a).unwrap().is_identity());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Permutation::parse_cycles(3, "(0 1").is_err());
        assert!(Permutation::parse_cycles(3, "(0 3)").is_err());
        assert!(Permutation::parse_cycles(3, "(0 1)(1 2)").is_err());
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert_eq!(Permutation::parse_cycles(2, "()").unwrap(), Permutation::identity(2));
    }

    #[test]
    fn display_round_trips() {
        let x = p(8, "(0 1)(4 5)(2 3 6 7)");
        assert_eq!(x.to_string(), "(0 1)(2 3 6 7)(4 5)");
        assert_eq!(p(8, &x.to_string()), x);
    }

    #[test]
    fn order_and_powers() {
        let x = p(7, "(0 1 2)(3 4 5 6)");
        assert_eq!(x.order(), 12);
        assert!(x.pow(12).is_identity());
        assert_eq!(x.pow(-1), x.inverse());
        assert_eq!(x.pow(5), &x.pow(2) * &x.pow(3));
        assert_eq!(x.cycle_type(), vec![4, 3]);
    }

    #[test]
    fn conjugation_relabels_cycles() {
        let x = p(5, "(0 2)(1 3)");
        let g = p(5, "(0 1 2 3 4)");
        assert_eq!(x.conjugate_by(&g), &(&g * &x) * &g.inverse());
        assert_eq!(x.conjugate_by(&g), p(5, "(1 3)(2 4)"));
    }
}
