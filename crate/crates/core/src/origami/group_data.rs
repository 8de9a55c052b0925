use serde::Serialize;

use super::{isomorphisms, Convention, Origami};
use crate::error::{Error, Result};
use crate::permgroup::{CosetSpace, GeneratedPermGroup, Permutation};

/// An origami built from `(G, g_r, g_u, H)`: squares are the right cosets
/// `Hg`, with `r(Hg) = Hg·g_r` and `u(Hg) = Hg·g_u`.
#[derive(Clone, Debug)]
pub struct GroupDataOrigami {
    g: GeneratedPermGroup,
    g_r: Permutation,
    g_u: Permutation,
    h: GeneratedPermGroup,
    cosets: CosetSpace,
    origami: Origami,
    normalizer: GeneratedPermGroup,
    normalizer_cosets: CosetSpace,
    gamma: GeneratedPermGroup,
    c: Permutation,
    convention: Convention,
    /// For pair-form input: the input square corresponding to each coset.
    input_square: Option<Vec<usize>>,
}

/// `n(g)` and `h(g)` for representatives of the classes `Ng`.
#[derive(Clone, Debug, Serialize)]
pub struct CosetInvariants {
    pub order_c: u64,
    pub representatives: Vec<Permutation>,
    pub n_of: Vec<u64>,
    pub h_of: Vec<u64>,
    /// `rho[i] = j` when `N g_i c⁻¹ = N g_j`.
    pub rho: Vec<usize>,
    /// Size of the `N`-orbit of the vertex through `H g_i`.
    pub orbit_size: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuasiregularVerdict {
    /// Every conjugate of `c` lies in `N`.
    pub conjugates_in_normalizer: bool,
    /// `N` is normal in `G` and `G/N` is abelian.
    pub normal_with_abelian_quotient: bool,
    /// Order of `G/N` when `N` is normal.
    pub quotient_order: Option<usize>,
    pub quotient_cyclic: Option<bool>,
}

impl GroupDataOrigami {
    /// `G = ⟨g_r, g_u⟩` with `H` given by generators.
    pub fn new(
        g_r: Permutation,
        g_u: Permutation,
        h_generators: Vec<Permutation>,
        convention: Convention,
        element_cap: usize,
    ) -> Result<Self> {
        let degree = g_r.degree();
        let g = GeneratedPermGroup::generate(degree, vec![g_r.clone(), g_u.clone()], element_cap)?;
        let h = GeneratedPermGroup::generate(degree, h_generators, element_cap)?;
        Self::from_groups(g, g_r, g_u, h, convention)
    }

    pub fn from_groups(
        g: GeneratedPermGroup,
        g_r: Permutation,
        g_u: Permutation,
        h: GeneratedPermGroup,
        convention: Convention,
    ) -> Result<Self> {
        let spanned = GeneratedPermGroup::generate(g.degree(), vec![g_r.clone(), g_u.clone()], g.element_cap())?;
        if !g.contains(&g_r) || !g.contains(&g_u) || spanned.order() != g.order() {
            return Err(Error::input("g_r and g_u do not generate G"));
        }
        if !h.is_subgroup_of(&g) {
            return Err(Error::input("H is not a subgroup of G"));
        }
        if !g.is_core_free(&h)? {
            return Err(Error::input("H contains a nontrivial normal subgroup of G"));
        }
        let cosets = g.right_cosets(&h)?;
        let r = cosets.right_action(&g, &g_r);
        let u = cosets.right_action(&g, &g_u);
        let origami = Origami::from_pair(r, u, convention)?;
        let normalizer = g.normalizer(&h)?;
        let normalizer_cosets = g.right_cosets(&normalizer)?;
        let gamma = g.quotient_as_perm_group(&normalizer, &h, &cosets)?;
        let c = convention.commutator(&g_r, &g_u);
        Ok(GroupDataOrigami {
            g,
            g_r,
            g_u,
            h,
            cosets,
            origami,
            normalizer,
            normalizer_cosets,
            gamma,
            c,
            convention,
            input_square: None,
        })
    }

    /// Recovers `(G, H)` from a permutation pair: `G` is the monodromy group
    /// with `g_r = r⁻¹`, `g_u = u⁻¹` (the right-coset model turns the left
    /// action on squares around), and `H` is the stabilizer of square 0.
    pub fn from_origami(o: &Origami, element_cap: usize) -> Result<Self> {
        let g = o.monodromy(element_cap)?;
        let h = g.stabilizer_of_point(0)?;
        let mut data = Self::from_groups(g, o.r().inverse(), o.u().inverse(), h, o.convention())?;
        // coset Hg corresponds to square g⁻¹(0)
        let labels: Vec<usize> = data.cosets.representatives().iter().map(|g| g.inverse().image(0)).collect();
        let psi = Permutation::from_images(labels.clone())
            .map_err(|_| Error::invariant("coset labels do not biject onto squares"))?;
        let forward = &(&psi * data.origami.r()) * &psi.inverse();
        let up = &(&psi * data.origami.u()) * &psi.inverse();
        if &forward != o.r() || &up != o.u() {
            return Err(Error::invariant("coset model is not isomorphic to the input origami"));
        }
        data.input_square = Some(labels);
        Ok(data)
    }

    pub fn group(&self) -> &GeneratedPermGroup {
        &self.g
    }

    pub fn g_r(&self) -> &Permutation {
        &self.g_r
    }

    pub fn g_u(&self) -> &Permutation {
        &self.g_u
    }

    pub fn subgroup(&self) -> &GeneratedPermGroup {
        &self.h
    }

    pub fn cosets(&self) -> &CosetSpace {
        &self.cosets
    }

    pub fn origami(&self) -> &Origami {
        &self.origami
    }

    pub fn normalizer(&self) -> &GeneratedPermGroup {
        &self.normalizer
    }

    pub fn normalizer_cosets(&self) -> &CosetSpace {
        &self.normalizer_cosets
    }

    /// `Γ = N/H` acting on squares.
    pub fn gamma(&self) -> &GeneratedPermGroup {
        &self.gamma
    }

    pub fn c(&self) -> &Permutation {
        &self.c
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn input_square(&self) -> Option<&[usize]> {
        self.input_square.as_deref()
    }

    pub fn n_squares(&self) -> usize {
        self.cosets.len()
    }

    /// Index `[G:N]`.
    pub fn normalizer_index(&self) -> usize {
        self.normalizer_cosets.len()
    }

    /// Same data with the other commutator convention.
    pub fn with_convention(&self, convention: Convention) -> Self {
        let mut other = self.clone();
        other.convention = convention;
        other.c = convention.commutator(&self.g_r, &self.g_u);
        other.origami = self.origami.with_convention(convention);
        other
    }

    /// Image in `Γ` of an element of `N`.
    pub fn gamma_image(&self, n: &Permutation) -> Permutation {
        self.cosets.left_action(&self.g, n)
    }

    /// An element of `N` mapping to the given automorphism.
    pub fn lift(&self, gamma: &Permutation) -> &Permutation {
        self.cosets.representative(gamma.image(0))
    }

    pub fn is_regular(&self) -> bool {
        self.gamma.order() == self.n_squares()
    }

    /// Both quasiregularity criteria; they must agree.
    pub fn quasiregular_verdict(&self) -> Result<QuasiregularVerdict> {
        let n = &self.normalizer;
        let conjugates_in_normalizer = self.g.elements().iter().all(|g| n.contains(&self.c.conjugate_by(g)));
        let normal = n.is_normal_in(&self.g);
        let reps = self.normalizer_cosets.representatives();
        let abelian = normal
            && reps.iter().all(|x| {
                reps.iter().all(|y| {
                    let comm = &(&(x * y) * &x.inverse()) * &y.inverse();
                    n.contains(&comm)
                })
            });
        if conjugates_in_normalizer != abelian {
            return Err(Error::invariant(format!(
                "quasiregularity criteria disagree: conjugates of c in N = {conjugates_in_normalizer}, \
                 N normal with abelian quotient = {abelian}"
            )));
        }
        let (quotient_order, quotient_cyclic) = if normal {
            let r = reps.len();
            let cyclic = reps.iter().any(|x| self.order_mod(x, n) == r as u64);
            (Some(r), Some(cyclic))
        } else {
            (None, None)
        };
        Ok(QuasiregularVerdict {
            conjugates_in_normalizer,
            normal_with_abelian_quotient: abelian,
            quotient_order,
            quotient_cyclic,
        })
    }

    pub fn is_quasiregular(&self) -> Result<bool> {
        Ok(self.quasiregular_verdict()?.conjugates_in_normalizer)
    }

    fn order_mod(&self, x: &Permutation, sub: &GeneratedPermGroup) -> u64 {
        let mut k = 1;
        let mut y = x.clone();
        while !sub.contains(&y) {
            y = &y * x;
            k += 1;
        }
        k
    }

    /// Least `k ≥ 1` with `g c^k g⁻¹ ∈ sub`.
    fn least_power_in(&self, g: &Permutation, sub: &GeneratedPermGroup) -> u64 {
        let conj = self.c.conjugate_by(g);
        self.order_mod(&conj, sub)
    }

    pub fn coset_invariants(&self) -> Result<CosetInvariants> {
        let order_c = self.c.order();
        let reps: Vec<Permutation> = self.normalizer_cosets.representatives().to_vec();
        let mut n_of = Vec::with_capacity(reps.len());
        let mut h_of = Vec::with_capacity(reps.len());
        for g in &reps {
            let n = self.least_power_in(g, &self.normalizer);
            let h = self.least_power_in(g, &self.h);
            if h % n != 0 || order_c % h != 0 {
                return Err(Error::invariant(format!(
                    "n(g) = {n}, h(g) = {h}, ord(c) = {order_c} violate n | h | ord(c)"
                )));
            }
            n_of.push(n);
            h_of.push(h);
        }
        let c_inv = self.c.inverse();
        let rho: Vec<usize> = reps.iter().map(|g| self.normalizer_cosets.coset_of(&self.g, &(g * &c_inv))).collect();
        // vertices: ⟨c⟩-orbits of cosets under right multiplication
        let c_action = self.cosets.right_action(&self.g, &self.c);
        let vertex_of = orbit_labels(&c_action);
        let n_vertices = vertex_of.iter().max().map_or(0, |m| m + 1);
        let gamma_on_vertices: Vec<Vec<usize>> = self
            .gamma
            .generators()
            .iter()
            .map(|gm| {
                let mut img = vec![0; n_vertices];
                for s in 0..self.n_squares() {
                    img[vertex_of[s]] = vertex_of[gm.image(s)];
                }
                img
            })
            .collect();
        let mut orbit_size = Vec::with_capacity(reps.len());
        let mut orbit_id = vec![usize::MAX; n_vertices];
        let mut sizes_by_id = Vec::new();
        for (i, g) in reps.iter().enumerate() {
            let v = vertex_of[self.cosets.coset_of(&self.g, g)];
            if orbit_id[v] == usize::MAX {
                let mut members = vec![v];
                orbit_id[v] = sizes_by_id.len();
                let mut k = 0;
                while k < members.len() {
                    let x = members[k];
                    for img in &gamma_on_vertices {
                        let y = img[x];
                        if orbit_id[y] == usize::MAX {
                            orbit_id[y] = sizes_by_id.len();
                            members.push(y);
                        }
                    }
                    k += 1;
                }
                sizes_by_id.push((members.len(), n_of[i]));
            }
            let size = sizes_by_id[orbit_id[v]].0;
            let expected = n_of[i] as usize * self.gamma.order() / h_of[i] as usize;
            if size * h_of[i] as usize != n_of[i] as usize * self.gamma.order() {
                return Err(Error::invariant(format!(
                    "vertex orbit through coset rep {i} has size {size}, expected {expected}"
                )));
            }
            orbit_size.push(size);
        }
        let covered: usize = sizes_by_id.iter().map(|&(_, n)| n as usize * self.normalizer.order()).sum();
        if covered != self.g.order() {
            return Err(Error::invariant(format!(
                "vertex orbits account for {covered} elements of G, not {}",
                self.g.order()
            )));
        }
        Ok(CosetInvariants { order_c, representatives: reps, n_of, h_of, rho, orbit_size })
    }

    /// `|Γ|` cross-checked against the centralizer of the monodromy.
    pub fn check_automorphisms(&self) -> Result<()> {
        let direct = isomorphisms(&self.origami, &self.origami);
        if direct.len() != self.gamma.order() || !direct.iter().all(|x| self.gamma.contains(x)) {
            return Err(Error::invariant(format!(
                "N/H has order {} but the centralizer of the monodromy has {} elements",
                self.gamma.order(),
                direct.len()
            )));
        }
        Ok(())
    }
}

/// Orbit index of each point under a single permutation.
pub(crate) fn orbit_labels(p: &Permutation) -> Vec<usize> {
    let n = p.degree();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        let mut x = s;
        while label[x] == usize::MAX {
            label[x] = next;
            x = p.image(x);
        }
        next += 1;
    }
    label
}
