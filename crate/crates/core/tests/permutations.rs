use origami::permgroup::{GeneratedPermGroup, Permutation};
use proptest::prelude::*;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).unwrap())
}

fn triple() -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (1usize..9).prop_flat_map(|n| (perm(n), perm(n), perm(n)))
}

/// Smallest k ≥ 1 with p^k = id, by stepping.
fn brute_order(p: &Permutation) -> u64 {
    let id = Permutation::identity(p.degree());
    let mut q = p.clone();
    let mut k = 1;
    while q != id {
        q = &q * p;
        k += 1;
    }
    k
}

proptest! {
    #[test]
    fn composition_is_function_composition((a, b, _) in triple()) {
        let ab = &a * &b;
        for x in 0..a.degree() {
            prop_assert_eq!(ab.image(x), a.image(b.image(x)));
        }
    }

    #[test]
    fn group_laws((a, b, c) in triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a * &a.inverse()).is_identity());
        prop_assert!((&a.inverse() * &a).is_identity());
        prop_assert_eq!((&a * &b).inverse(), &b.inverse() * &a.inverse());
    }

    #[test]
    fn powers_add((a, _, _) in triple(), j in -7i64..7, k in -7i64..7) {
        prop_assert_eq!(&a.pow(j) * &a.pow(k), a.pow(j + k));
        prop_assert_eq!(a.pow(-1), a.inverse());
    }

    #[test]
    fn order_and_cycle_type((a, g, _) in triple()) {
        prop_assert_eq!(a.order(), brute_order(&a));
        let mut lengths = a.cycle_type();
        lengths.sort_unstable();
        let mut conj = a.conjugate_by(&g).cycle_type();
        conj.sort_unstable();
        prop_assert_eq!(lengths.iter().sum::<usize>(), a.degree());
        prop_assert_eq!(lengths, conj);
        prop_assert_eq!(a.conjugate_by(&g), &(&g * &a) * &g.inverse());
    }

    #[test]
    fn generated_group_is_closed((a, b, _) in triple()) {
        let g = GeneratedPermGroup::generate(a.degree(), vec![a.clone(), b.clone()], 50_000).unwrap();
        let elems: Vec<&Permutation> = g.elements().iter().collect();
        prop_assert!(g.contains(&a) && g.contains(&b));
        for x in elems.iter().take(12) {
            prop_assert!(g.contains(&x.inverse()));
            for y in elems.iter().take(12) {
                prop_assert!(g.contains(&(*x * *y)));
            }
        }
        // Lagrange against the orbit-stabilizer count.
        let orbit = g.orbit(0).len();
        let stab = g.stabilizer_of_point(0).unwrap().order();
        prop_assert_eq!(orbit * stab, g.order());
    }
}
