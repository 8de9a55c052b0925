use std::collections::VecDeque;

use indexmap::IndexSet;

use super::classes::ConjugacyClassSet;
use super::cosets::CosetSpace;
use super::perm::Permutation;
use crate::error::{Error, Result};

/// Default safety limit on enumerated elements.
pub const DEFAULT_ELEMENT_CAP: usize = 2_000_000;

/// A permutation group given by generators, together with its fully
/// enumerated element set.
///
/// Elements are enumerated breadth-first from the identity by right
/// multiplication with the generators, so the ordering is deterministic and
/// the identity always has index 0.
#[derive(Clone, Debug)]
pub struct GeneratedPermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: IndexSet<Permutation>,
    element_cap: usize,
}

impl GeneratedPermGroup {
    pub fn generate(degree: usize, generators: Vec<Permutation>, element_cap: usize) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        let mut elements = IndexSet::new();
        elements.insert(Permutation::identity(degree));
        close_under(&mut elements, 0, &generators, element_cap)?;
        Ok(GeneratedPermGroup { degree, generators, elements, element_cap })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::generate(degree, Vec::new(), 1).expect("trivial group fits")
    }

    /// Subgroup with exactly the given element set; generators are picked
    /// greedily, starting from those of `seed` when provided.
    pub fn from_elements<'a>(
        degree: usize,
        members: impl IntoIterator<Item = &'a Permutation>,
        seed: Option<&GeneratedPermGroup>,
        element_cap: usize,
    ) -> Result<Self> {
        let mut group = match seed {
            Some(s) => s.clone(),
            None => Self::trivial(degree),
        };
        group.element_cap = element_cap;
        let mut count = 0usize;
        let members: Vec<&Permutation> = members.into_iter().collect();
        for x in &members {
            count += 1;
            if !group.contains(x) {
                group = group.extended((*x).clone())?;
            }
        }
        let distinct: IndexSet<&Permutation> = members.iter().copied().collect();
        if group.order() != distinct.len() {
            return Err(Error::invariant(format!(
                "element set of size {} (from {count} items) is not a subgroup: closure has order {}",
                distinct.len(),
                group.order()
            )));
        }
        Ok(group)
    }

    /// The group generated by `self` and one more element.
    pub fn extended(&self, extra: Permutation) -> Result<Self> {
        if extra.degree() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, extra.degree()));
        }
        let mut generators = self.generators.clone();
        generators.push(extra.clone());
        let mut elements = self.elements.clone();
        // Old elements are closed under the old generators; only the new
        // generator needs to be applied to them.
        let old = elements.len();
        for i in 0..old {
            let y = &elements[i] * &extra;
            elements.insert(y);
            if elements.len() > self.element_cap {
                return Err(Error::GroupTooLarge { cap: self.element_cap });
            }
        }
        close_under(&mut elements, old, &generators, self.element_cap)?;
        Ok(GeneratedPermGroup { degree: self.degree, generators, elements, element_cap: self.element_cap })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn element_cap(&self) -> usize {
        self.element_cap
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &IndexSet<Permutation> {
        &self.elements
    }

    pub fn element(&self, index: usize) -> &Permutation {
        &self.elements[index]
    }

    pub fn index_of(&self, x: &Permutation) -> Option<usize> {
        self.elements.get_index_of(x)
    }

    pub fn contains(&self, x: &Permutation) -> bool {
        self.elements.contains(x)
    }

    pub fn identity(&self) -> &Permutation {
        &self.elements[0]
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| self.generators[i + 1..].iter().all(|b| (a * b) == (b * a)))
    }

    pub fn is_subgroup_of(&self, other: &GeneratedPermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Whether `self` is normalized by every element of `ambient`.
    pub fn is_normal_in(&self, ambient: &GeneratedPermGroup) -> bool {
        ambient.generators.iter().all(|g| self.generators.iter().all(|h| self.contains(&h.conjugate_by(g))))
    }

    pub fn exponent(&self) -> u64 {
        use num_integer::Integer;
        self.elements.iter().fold(1u64, |acc, x| acc.lcm(&x.order()))
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        orbit(point, self.degree, &self.generators)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    pub fn stabilizer_of_point(&self, point: usize) -> Result<GeneratedPermGroup> {
        let members = self.elements.iter().filter(|x| x.image(point) == point);
        Self::from_elements(self.degree, members, None, self.element_cap)
    }

    /// `N_G(H) = {g : gHg⁻¹ = H}` by a scan over the elements of `self`.
    pub fn normalizer(&self, h: &GeneratedPermGroup) -> Result<GeneratedPermGroup> {
        if !h.is_subgroup_of(self) {
            return Err(Error::input("subgroup is not contained in the group"));
        }
        let members = self.elements.iter().filter(|g| h.generators.iter().all(|x| h.contains(&x.conjugate_by(g))));
        Self::from_elements(self.degree, members, Some(h), self.element_cap)
    }

    /// Whether the intersection of all conjugates of `h` is trivial.
    pub fn is_core_free(&self, h: &GeneratedPermGroup) -> Result<bool> {
        if !h.is_subgroup_of(self) {
            return Err(Error::input("subgroup is not contained in the group"));
        }
        let mut core: Vec<&Permutation> = h.elements.iter().collect();
        for g in self.elements.iter() {
            let gi = g.inverse();
            // x ∈ gHg⁻¹ ⇔ g⁻¹xg ∈ H
            core.retain(|x| h.contains(&x.conjugate_by(&gi)));
            if core.len() == 1 {
                break;
            }
        }
        Ok(core.len() == 1)
    }

    pub fn conjugacy_classes(&self) -> ConjugacyClassSet {
        ConjugacyClassSet::compute(self)
    }

    /// Right cosets `Hg` of a subgroup.
    pub fn right_cosets(&self, h: &GeneratedPermGroup) -> Result<CosetSpace> {
        if !h.is_subgroup_of(self) {
            return Err(Error::input("subgroup is not contained in the group"));
        }
        Ok(CosetSpace::compute(self, h))
    }

    /// `Γ = N/H` acting on the left on the right cosets `H\G` by `n·Hg = Hng`.
    /// The result acts on coset labels, is faithful, and is checked to be free.
    pub fn quotient_as_perm_group(
        &self,
        n: &GeneratedPermGroup,
        h: &GeneratedPermGroup,
        cosets: &CosetSpace,
    ) -> Result<GeneratedPermGroup> {
        if !h.is_subgroup_of(n) || !h.is_normal_in(n) {
            return Err(Error::input("H is not normal in N"));
        }
        let generators: Vec<Permutation> =
            n.generators.iter().map(|x| cosets.left_action(self, x)).filter(|p| !p.is_identity()).collect();
        let gamma = GeneratedPermGroup::generate(cosets.len(), generators, self.element_cap)?;
        if gamma.order() * h.order() != n.order() {
            return Err(Error::invariant(format!(
                "|N/H| = {} but the induced action has order {}",
                n.order() / h.order(),
                gamma.order()
            )));
        }
        if gamma.elements.iter().skip(1).any(|x| x.fixed_points() > 0) {
            return Err(Error::invariant("automorphism group does not act freely on squares"));
        }
        Ok(gamma)
    }
}

fn close_under(
    elements: &mut IndexSet<Permutation>,
    start: usize,
    generators: &[Permutation],
    cap: usize,
) -> Result<()> {
    let mut i = start;
    while i < elements.len() {
        for g in generators {
            let y = &elements[i] * g;
            elements.insert(y);
            if elements.len() > cap {
                return Err(Error::GroupTooLarge { cap });
            }
        }
        i += 1;
    }
    Ok(())
}

/// Orbit of a point under the group generated by `generators`, in BFS order.
pub fn orbit(point: usize, degree: usize, generators: &[Permutation]) -> Vec<usize> {
    let mut seen = vec![false; degree];
    let mut out = vec![point];
    seen[point] = true;
    let mut queue = VecDeque::from([point]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = g.image(x);
            if !seen[y] {
                seen[y] = true;
                out.push(y);
                queue.push_back(y);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(degree: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(degree, s).unwrap()
    }

    fn sym(n: usize) -> GeneratedPermGroup {
        let cycle: Vec<usize> = (0..n).collect();
        GeneratedPermGroup::generate(
            n,
            vec![Permutation::from_cycles(n, &[cycle]).unwrap(), Permutation::from_cycles(n, &[vec![0, 1]]).unwrap()],
            DEFAULT_ELEMENT_CAP,
        )
        .unwrap()
    }

    #[test]
    fn cyclic_group_order() {
        let g = GeneratedPermGroup::generate(5, vec![p(5, "(0 1 2 3 4)")], 100).unwrap();
        assert_eq!(g.order(), 5);
        assert!(g.is_abelian());
        assert_eq!(g.conjugacy_classes().len(), 5);
    }

    #[test]
    fn cap_is_enforced() {
        let err = GeneratedPermGroup::generate(6, vec![p(6, "(0 1 2 3 4 5)"), p(6, "(0 1)")], 100).unwrap_err();
        assert!(matches!(err, Error::GroupTooLarge { cap: 100 }));
    }

    #[test]
    fn enumeration_is_deterministic() {
        let a = sym(5);
        let b = sym(5);
        assert!(a.elements().iter().eq(b.elements().iter()));
        assert!(a.element(0).is_identity());
    }

    #[test]
    fn s4_class_sizes() {
        let g = sym(4);
        let mut sizes = g.conjugacy_classes().sizes().to_vec();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
    }

    #[test]
    fn stabilizer_and_orbit_stabilizer() {
        let g = sym(5);
        let stab = g.stabilizer_of_point(2).unwrap();
        assert_eq!(stab.order() * g.orbit(2).len(), g.order());
        assert!(stab.elements().iter().all(|x| x.image(2) == 2));
    }

    #[test]
    fn normalizer_of_trivial_is_everything() {
        let g = sym(4);
        let n = g.normalizer(&GeneratedPermGroup::trivial(4)).unwrap();
        assert_eq!(n.order(), 24);
    }

    #[test]
    fn normalizer_of_point_stabilizer_is_itself() {
        let g = sym(4);
        let h = g.stabilizer_of_point(0).unwrap();
        assert_eq!(g.normalizer(&h).unwrap().order(), 6);
        assert!(g.is_core_free(&h).unwrap());
    }

    #[test]
    fn klein_four_in_s4_is_normal_not_core_free() {
        let g = sym(4);
        let v = GeneratedPermGroup::generate(4, vec![p(4, "(0 1)(2 3)"), p(4, "(0 2)(1 3)")], 100).unwrap();
        assert!(v.is_normal_in(&g));
        assert!(!g.is_core_free(&v).unwrap());
        assert_eq!(g.normalizer(&v).unwrap().order(), 24);
    }

    #[test]
    fn from_elements_rejects_non_subgroups() {
        let g = sym(3);
        let bad = [p(3, "(0 1)"), Permutation::identity(3), p(3, "(1 2)")];
        assert!(GeneratedPermGroup::from_elements(3, bad.iter(), None, 100).is_err());
        let good: Vec<_> = g.elements().iter().cloned().collect();
        assert_eq!(GeneratedPermGroup::from_elements(3, good.iter(), None, 100).unwrap().order(), 6);
    }

    #[test]
    fn regular_quotient_is_left_translation() {
        let g = sym(3);
        let h = GeneratedPermGroup::trivial(3);
        let cosets = g.right_cosets(&h).unwrap();
        let gamma = g.quotient_as_perm_group(&g, &h, &cosets).unwrap();
        assert_eq!(gamma.order(), 6);
        assert_eq!(gamma.degree(), 6);
    }
}
