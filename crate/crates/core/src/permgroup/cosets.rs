use super::group::GeneratedPermGroup;
use super::perm::Permutation;

/// Right cosets `Hg` of a subgroup, labelled `0..len`.
///
/// Coset 0 is `H` itself. The representative of each coset is its first
/// element in the enumeration order of the ambient group.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    subgroup_order: usize,
    representatives: Vec<Permutation>,
    coset_of: Vec<u32>,
}

impl CosetSpace {
    pub(crate) fn compute(group: &GeneratedPermGroup, h: &GeneratedPermGroup) -> Self {
        let mut coset_of = vec![u32::MAX; group.order()];
        let mut representatives = Vec::new();
        for start in 0..group.order() {
            if coset_of[start] != u32::MAX {
                continue;
            }
            let id = representatives.len() as u32;
            let g = group.element(start);
            for x in h.elements() {
                let j = group.index_of(&(x * g)).expect("coset inside group");
                coset_of[j] = id;
            }
            representatives.push(g.clone());
        }
        CosetSpace { subgroup_order: h.order(), representatives, coset_of }
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn subgroup_order(&self) -> usize {
        self.subgroup_order
    }

    pub fn representatives(&self) -> &[Permutation] {
        &self.representatives
    }

    pub fn representative(&self, label: usize) -> &Permutation {
        &self.representatives[label]
    }

    pub fn coset_of_index(&self, element_index: usize) -> usize {
        self.coset_of[element_index] as usize
    }

    /// Label of the coset containing `x`.
    pub fn coset_of(&self, group: &GeneratedPermGroup, x: &Permutation) -> usize {
        let i = group.index_of(x).expect("element of the ambient group");
        self.coset_of[i] as usize
    }

    /// Right multiplication `Hg ↦ Hg·x` as a permutation of labels.
    ///
    /// This is a right action: `right_action(a·b)` equals applying
    /// `right_action(a)` first, i.e. `right_action(b) ∘ right_action(a)`.
    pub fn right_action(&self, group: &GeneratedPermGroup, x: &Permutation) -> Permutation {
        let images = self.representatives.iter().map(|g| self.coset_of(group, &(g * x))).collect();
        Permutation::from_images(images).expect("right multiplication permutes cosets")
    }

    /// Left multiplication `Hg ↦ Hng` by an element normalizing `H`.
    /// This is a homomorphism from the normalizer into the symmetric group.
    pub fn left_action(&self, group: &GeneratedPermGroup, n: &Permutation) -> Permutation {
        let images = self.representatives.iter().map(|g| self.coset_of(group, &(n * g))).collect();
        Permutation::from_images(images).expect("normalizer element permutes cosets")
    }
}
