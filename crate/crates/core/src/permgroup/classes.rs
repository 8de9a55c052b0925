use std::collections::VecDeque;

use super::group::GeneratedPermGroup;
use super::perm::Permutation;

/// Conjugacy classes of an enumerated group. Class 0 is the identity class;
/// the remaining classes are numbered in order of their first element.
#[derive(Clone, Debug)]
pub struct ConjugacyClassSet {
    representatives: Vec<Permutation>,
    sizes: Vec<usize>,
    members: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    element_orders: Vec<u64>,
}

impl ConjugacyClassSet {
    pub(crate) fn compute(group: &GeneratedPermGroup) -> Self {
        let order = group.order();
        let mut class_of = vec![usize::MAX; order];
        let mut representatives = Vec::new();
        let mut members = Vec::new();
        let gens: Vec<(&Permutation, Permutation)> = group.generators().iter().map(|g| (g, g.inverse())).collect();
        for start in 0..order {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = representatives.len();
            representatives.push(group.element(start).clone());
            class_of[start] = id;
            let mut list = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                let x = group.element(i);
                for (g, _) in &gens {
                    let y = x.conjugate_by(g);
                    let j = group.index_of(&y).expect("group closed under conjugation");
                    if class_of[j] == usize::MAX {
                        class_of[j] = id;
                        list.push(j);
                        queue.push_back(j);
                    }
                }
            }
            members.push(list);
        }
        let sizes = members.iter().map(Vec::len).collect();
        let element_orders = representatives.iter().map(Permutation::order).collect();
        ConjugacyClassSet { representatives, sizes, members, class_of, element_orders }
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn representatives(&self) -> &[Permutation] {
        &self.representatives
    }

    pub fn representative(&self, class: usize) -> &Permutation {
        &self.representatives[class]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Element indices (into the owning group) of one class.
    pub fn members(&self, class: usize) -> &[usize] {
        &self.members[class]
    }

    pub fn class_of_index(&self, element_index: usize) -> usize {
        self.class_of[element_index]
    }

    pub fn class_of(&self, group: &GeneratedPermGroup, x: &Permutation) -> Option<usize> {
        group.index_of(x).map(|i| self.class_of[i])
    }

    pub fn element_order(&self, class: usize) -> u64 {
        self.element_orders[class]
    }

    /// Class of `rep^k` for the representative of `class`.
    pub fn power_class(&self, group: &GeneratedPermGroup, class: usize, k: i64) -> usize {
        let y = self.representatives[class].pow(k);
        self.class_of(group, &y).expect("powers stay in the group")
    }

    /// Class of the inverse of the representative.
    pub fn inverse_class(&self, group: &GeneratedPermGroup, class: usize) -> usize {
        self.power_class(group, class, -1)
    }
}
