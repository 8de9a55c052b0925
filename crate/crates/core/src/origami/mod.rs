//! Origamis as permutation pairs and as coset spaces of finite groups.

mod group_data;

use std::collections::VecDeque;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permgroup::{orbit, GeneratedPermGroup, Permutation};

pub use group_data::{CosetInvariants, GroupDataOrigami, QuasiregularVerdict};

/// Which commutator of the generators is called `c`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `c = g_r g_u g_r⁻¹ g_u⁻¹`
    #[default]
    Grgu,
    /// `c = g_r⁻¹ g_u⁻¹ g_r g_u`
    Inverse,
}

impl Convention {
    pub fn commutator(self, g_r: &Permutation, g_u: &Permutation) -> Permutation {
        let (ri, ui) = (g_r.inverse(), g_u.inverse());
        match self {
            Convention::Grgu => &(&(g_r * g_u) * &ri) * &ui,
            Convention::Inverse => &(&(&ri * &ui) * g_r) * g_u,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Convention::Grgu => "grgu",
            Convention::Inverse => "inverse",
        }
    }

    pub fn other(self) -> Self {
        match self {
            Convention::Grgu => Convention::Inverse,
            Convention::Inverse => Convention::Grgu,
        }
    }
}

/// Vertices of the surface: orbits of the commutator on squares.
#[derive(Clone, Debug, Serialize)]
pub struct SingularityData {
    pub orbits: Vec<Vec<usize>>,
    pub cone_orders: Vec<usize>,
    pub sigma_star_count: usize,
    pub genus: usize,
    /// Zero orders (orbit length − 1), positive entries only, decreasing.
    pub stratum: Vec<usize>,
}

/// A square-tiled surface: squares `0..n`, `r(s)` is the square to the
/// right of `s` and `u(s)` the square above it.
#[derive(Debug)]
pub struct Origami {
    r: Permutation,
    u: Permutation,
    convention: Convention,
    singularities: OnceLock<SingularityData>,
}

impl Clone for Origami {
    fn clone(&self) -> Self {
        Origami {
            r: self.r.clone(),
            u: self.u.clone(),
            convention: self.convention,
            singularities: self.singularities.clone(),
        }
    }
}

impl PartialEq for Origami {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r && self.u == other.u && self.convention == other.convention
    }
}

impl Origami {
    pub fn from_pair(r: Permutation, u: Permutation, convention: Convention) -> Result<Self> {
        if r.degree() != u.degree() {
            return Err(Error::DegreeMismatch(r.degree(), u.degree()));
        }
        let n = r.degree();
        if n == 0 {
            return Err(Error::input("an origami needs at least one square"));
        }
        let gens = [r.clone(), u.clone()];
        let mut seen = vec![false; n];
        let mut orbits = 0;
        for s in 0..n {
            if !seen[s] {
                orbits += 1;
                for x in orbit(s, n, &gens) {
                    seen[x] = true;
                }
            }
        }
        if orbits > 1 {
            return Err(Error::Disconnected { orbits });
        }
        Ok(Origami { r, u, convention, singularities: OnceLock::new() })
    }

    pub fn torus() -> Self {
        let id = Permutation::identity(1);
        Self::from_pair(id.clone(), id, Convention::Grgu).expect("torus is connected")
    }

    pub fn n_squares(&self) -> usize {
        self.r.degree()
    }

    pub fn r(&self) -> &Permutation {
        &self.r
    }

    pub fn u(&self) -> &Permutation {
        &self.u
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn with_convention(&self, convention: Convention) -> Self {
        Origami { r: self.r.clone(), u: self.u.clone(), convention, singularities: OnceLock::new() }
    }

    /// The commutator as a permutation of squares, acting the way `c` acts
    /// on cosets by right multiplication.
    pub fn commutator_perm(&self) -> Permutation {
        let (ri, ui) = (self.r.inverse(), self.u.inverse());
        match self.convention {
            Convention::Grgu => &(&(&ui * &ri) * &self.u) * &self.r,
            Convention::Inverse => &(&(&self.u * &self.r) * &ui) * &ri,
        }
    }

    /// Sends a square to the next square around its bottom-left corner,
    /// turning counterclockwise.
    pub fn corner_map(&self) -> Permutation {
        let (ri, ui) = (self.r.inverse(), self.u.inverse());
        &(&(&self.u * &self.r) * &ui) * &ri
    }

    pub fn singularity_data(&self) -> &SingularityData {
        self.singularities.get_or_init(|| {
            let c = self.commutator_perm();
            let n = self.n_squares();
            let mut seen = vec![false; n];
            let mut orbits = Vec::new();
            for s in 0..n {
                if seen[s] {
                    continue;
                }
                let mut cyc = vec![s];
                seen[s] = true;
                let mut x = c.image(s);
                while x != s {
                    seen[x] = true;
                    cyc.push(x);
                    x = c.image(x);
                }
                orbits.push(cyc);
            }
            let cone_orders: Vec<usize> = orbits.iter().map(Vec::len).collect();
            let sigma_star_count = orbits.len();
            let genus = (n - sigma_star_count) / 2 + 1;
            let mut stratum: Vec<usize> = cone_orders.iter().filter(|&&l| l > 1).map(|&l| l - 1).collect();
            stratum.sort_unstable_by(|a, b| b.cmp(a));
            SingularityData { orbits, cone_orders, sigma_star_count, genus, stratum }
        })
    }

    pub fn genus(&self) -> usize {
        self.singularity_data().genus
    }

    pub fn monodromy(&self, element_cap: usize) -> Result<GeneratedPermGroup> {
        GeneratedPermGroup::generate(self.n_squares(), vec![self.r.clone(), self.u.clone()], element_cap)
    }

    /// Translation automorphisms, computed as the centralizer of the
    /// monodromy in the symmetric group on squares.
    pub fn automorphisms_by_centralizer(&self) -> Vec<Permutation> {
        isomorphisms(self, self)
    }

    /// Same squares, sheared by `[[1,k],[0,1]]`: new square `s` sits on the
    /// old bottom edge of `s`.
    pub fn sheared_t(&self, k: i64) -> Origami {
        let u = &self.u * &self.r.pow(-k);
        Origami { r: self.r.clone(), u, convention: self.convention, singularities: OnceLock::new() }
    }

    /// Same squares, sheared by `[[1,0],[k,1]]`: new square `s` sits on the
    /// old left edge of `s`.
    pub fn sheared_t_prime(&self, k: i64) -> Origami {
        let r = &self.r * &self.u.pow(-k);
        Origami { r, u: self.u.clone(), convention: self.convention, singularities: OnceLock::new() }
    }
}

/// All relabelings `ψ` with `ψ∘r_from = r_to∘ψ` and `ψ∘u_from = u_to∘ψ`,
/// sorted lexicographically (equivalently by `ψ(0)`).
pub fn isomorphisms(from: &Origami, to: &Origami) -> Vec<Permutation> {
    let n = from.n_squares();
    if to.n_squares() != n {
        return Vec::new();
    }
    (0..n).filter_map(|t| anchored_isomorphism(from, to, t)).collect()
}

/// The unique isomorphism with `ψ(0) = target`, if any.
pub fn anchored_isomorphism(from: &Origami, to: &Origami, target: usize) -> Option<Permutation> {
    let n = from.n_squares();
    let mut psi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    psi[0] = target;
    used[target] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        let t = psi[s];
        for (a, b) in [(&from.r, &to.r), (&from.u, &to.u)] {
            let (s2, t2) = (a.image(s), b.image(t));
            if psi[s2] == usize::MAX {
                if used[t2] {
                    return None;
                }
                psi[s2] = t2;
                used[t2] = true;
                queue.push_back(s2);
            } else if psi[s2] != t2 {
                return None;
            }
        }
    }
    Permutation::from_images(psi).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn torus_data() {
        let t = Origami::torus();
        let s = t.singularity_data();
        assert_eq!(s.sigma_star_count, 1);
        assert_eq!(s.genus, 1);
        assert!(s.stratum.is_empty());
        assert_eq!(t.automorphisms_by_centralizer().len(), 1);
    }

    #[test]
    fn disconnected_pair_is_rejected() {
        let id = Permutation::identity(2);
        assert!(matches!(Origami::from_pair(id.clone(), id, Convention::Grgu), Err(Error::Disconnected { orbits: 2 })));
        assert!(Origami::from_pair(p(2, "(0 1)"), Permutation::identity(2), Convention::Grgu).is_ok());
    }

    #[test]
    fn l_shape_is_genus_two() {
        let o = Origami::from_pair(p(3, "(0 1)"), p(3, "(0 2)"), Convention::Grgu).unwrap();
        let s = o.singularity_data();
        assert_eq!(s.genus, 2);
        assert_eq!(s.stratum, vec![2]);
        assert_eq!(o.automorphisms_by_centralizer().len(), 1);
    }

    #[test]
    fn conventions_agree_on_orbit_lengths() {
        let o = Origami::from_pair(p(8, "(0 1)(4 5)(2 3 6 7)"), p(8, "(0 2)(4 6)(1 3 5 7)"), Convention::Grgu).unwrap();
        let mut a = o.singularity_data().cone_orders.clone();
        let mut b = o.with_convention(Convention::Inverse).singularity_data().cone_orders.clone();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
    }

    #[test]
    fn corner_map_orbits_match_commutator_orbit_lengths() {
        let o = Origami::from_pair(p(5, "(0 1 2)(3 4)"), p(5, "(0 3)(1 4 2)"), Convention::Inverse).unwrap();
        assert_eq!(o.corner_map(), o.commutator_perm());
    }

    #[test]
    fn shear_of_torus_cover_stays_isomorphic_for_one_cylinder() {
        // one horizontal cylinder of width 3 and height 1
        let o = Origami::from_pair(p(3, "(0 1 2)"), Permutation::identity(3), Convention::Grgu).unwrap();
        assert!(isomorphisms(&o.sheared_t(1), &o).is_empty());
        assert!(!isomorphisms(&o.sheared_t(3), &o).is_empty());
    }
}
