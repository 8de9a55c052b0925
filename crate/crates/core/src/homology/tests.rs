use proptest::prelude::*;

use super::*;
use crate::linalg;
use crate::origami::{Convention, Origami};
use crate::permgroup::Permutation;

fn origami(n: usize, r: &str, u: &str) -> Origami {
    Origami::from_pair(
        Permutation::parse_cycles(n, r).unwrap(),
        Permutation::parse_cycles(n, u).unwrap(),
        Convention::Grgu,
    )
    .unwrap()
}

fn row_chain(model: &H1Model, row: &[usize], horizontal: bool) -> Vec<i64> {
    let n = model.complex().n_faces();
    let mut z = vec![0i64; 2 * n];
    for &s in row {
        z[if horizontal { s } else { n + s }] += 1;
    }
    z
}

fn pair(model: &H1Model, a: &[i64], b: &[i64]) -> i64 {
    let j = model.intersection();
    let (x, y) = (model.coordinates(a).unwrap(), model.coordinates(b).unwrap());
    let mut total = 0;
    for i in 0..x.len() {
        for k in 0..y.len() {
            total += x[i] * j[(i, k)] * y[k];
        }
    }
    total
}

#[test]
fn torus_form_is_standard() {
    let model = H1Model::new(&Origami::torus()).unwrap();
    assert_eq!(model.rank(), 2);
    assert_eq!(*model.intersection(), IntMatrix::from_row_slice(2, 2, &[0, 1, -1, 0]));
    assert!(is_reduced(&model));
}

#[test]
fn double_cover_of_torus_is_not_reduced() {
    let model = H1Model::new(&origami(2, "(0 1)", "")).unwrap();
    assert!(!is_reduced(&model));
    let model = H1Model::new(&origami(3, "(0 1)", "(0 2)")).unwrap();
    assert_eq!(model.rank(), 4);
    assert!(is_reduced(&model));
}

#[test]
fn l_shape_homology() {
    let o = origami(3, "(0 1)", "(0 2)");
    let complex = ChainComplex::new(&o);
    assert_eq!(complex.betti_numbers(), (1, 4, 1));
    assert_eq!(complex.relative_h1_dim(), 4);
    let model = H1Model::new(&o).unwrap();
    assert_eq!(model.zero_basis().ncols(), 2);
}

#[test]
fn one_cylinder_twist_matches_dehn_twist() {
    // a single row of width 3 with u = (0 1 2) wrapping once
    let o = origami(3, "(0 1 2)", "(0 2 1)");
    let model = H1Model::new(&o).unwrap();
    let a = AffineHomologyAction::new(&model, &o, Shear::Horizontal, 3, 0).unwrap();
    let row = row_chain(&model, &[0, 1, 2], true);
    let v = model.coordinates(&row).unwrap();
    let j = model.intersection();
    let mut expected = IntMatrix::identity(model.rank(), model.rank());
    for c in 0..model.rank() {
        let pairing: i64 = (0..model.rank()).map(|i| v[i] * j[(i, c)]).sum();
        for r in 0..model.rank() {
            expected[(r, c)] += v[r] * pairing;
        }
    }
    assert_eq!(a.h1_matrix, expected);
}

fn arb_origami() -> impl Strategy<Value = Origami> {
    (2usize..=7)
        .prop_flat_map(|n| {
            let perm = Just((0..n).collect::<Vec<_>>()).prop_shuffle();
            (perm.clone(), perm)
        })
        .prop_filter_map("connected", |(r, u)| {
            Origami::from_pair(
                Permutation::from_images(r).unwrap(),
                Permutation::from_images(u).unwrap(),
                Convention::Grgu,
            )
            .ok()
        })
}

/// Cycles including fixed points.
fn all_cycles(p: &Permutation) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.degree()];
    let mut out = Vec::new();
    for s in 0..p.degree() {
        if !seen[s] {
            let mut cyc = Vec::new();
            let mut t = s;
            while !seen[t] {
                seen[t] = true;
                cyc.push(t);
                t = p.image(t);
            }
            out.push(cyc);
        }
    }
    out
}

fn lcm(a: i64, b: i64) -> i64 {
    use num_integer::Integer;
    a.lcm(&b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn chain_complex_is_a_complex(o in arb_origami()) {
        let c = ChainComplex::new(&o);
        let d = linalg::mul(&c.boundary1(), &c.boundary2()).unwrap();
        prop_assert!(d.iter().all(|&x| x == 0));
        let g = o.genus();
        prop_assert_eq!(c.betti_numbers(), (1, 2 * g, 1));
        prop_assert_eq!(c.relative_h1_dim(), o.n_squares() + 1);
    }

    #[test]
    fn rows_meet_columns_once_per_shared_square(o in arb_origami()) {
        let model = H1Model::new(&o).unwrap();
        let rows = all_cycles(o.r());
        let cols = all_cycles(o.u());
        for row in &rows {
            let h = row_chain(&model, row, true);
            for col in &cols {
                let v = row_chain(&model, col, false);
                let shared = row.iter().filter(|s| col.contains(s)).count() as i64;
                prop_assert_eq!(model.intersect_chains(&h, &v), shared);
                prop_assert_eq!(pair(&model, &h, &v), shared);
            }
            for other in &rows {
                prop_assert_eq!(pair(&model, &h, &row_chain(&model, other, true)), 0);
            }
        }
    }

    #[test]
    fn automorphisms_preserve_the_form(o in arb_origami()) {
        let model = H1Model::new(&o).unwrap();
        for g in o.automorphisms_by_centralizer() {
            prop_assert!(model.preserves_form(&model.automorphism_matrix(&g)).unwrap());
        }
    }

    #[test]
    fn row_twists_are_multitwists(o in arb_origami()) {
        let model = H1Model::new(&o).unwrap();
        let rows = all_cycles(o.r());
        let k = rows.iter().fold(1i64, |acc, r| lcm(acc, r.len() as i64));
        let a = AffineHomologyAction::new(&model, &o, Shear::Horizontal, k, 0).unwrap();
        prop_assert!(a.relabeling.is_identity());
        let dim = model.rank();
        let j = model.intersection();
        let mut expected = IntMatrix::identity(dim, dim);
        for row in &rows {
            let v = model.coordinates(&row_chain(&model, row, true)).unwrap();
            let twists = k / row.len() as i64;
            for c in 0..dim {
                let pairing: i64 = (0..dim).map(|i| v[i] * j[(i, c)]).sum();
                for r in 0..dim {
                    expected[(r, c)] += twists * v[r] * pairing;
                }
            }
        }
        prop_assert_eq!(&a.h1_matrix, &expected);
    }

    #[test]
    fn minimal_shears_preserve_form_and_derivative(o in arb_origami()) {
        let model = H1Model::new(&o).unwrap();
        for shear in [Shear::Horizontal, Shear::Vertical] {
            let k = minimal_veech_power(&o, shear, 4).unwrap();
            let a = AffineHomologyAction::new(&model, &o, shear, k, 0).unwrap();
            prop_assert!(model.preserves_form(&a.h1_matrix).unwrap());
            prop_assert!(restricts_to_derivative(&model, &a.h1_matrix, shear.derivative(k)).unwrap());
            let back = AffineHomologyAction::new(&model, &o, shear, -k, 0).unwrap();
            prop_assert!(restricts_to_derivative(&model, &back.h1_matrix, shear.derivative(-k)).unwrap());
        }
    }
}
