use origami::analysis::{analyze, AnalysisOptions};
use origami::characters::CharacterTable;
use origami::homology::{AffineHomologyAction, H1Model, Shear};
use origami::io::OrigamiInput;
use origami::linalg::determinant;
use origami::origami::{Convention, GroupDataOrigami, Origami};
use origami::permgroup::Permutation;
use origami::Config;
use proptest::prelude::*;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).unwrap())
}

/// Transitive pairs only; disconnected ones are filtered out.
fn origami(max: usize) -> impl Strategy<Value = Origami> {
    (1usize..=max).prop_flat_map(|n| (perm(n), perm(n), prop::bool::ANY)).prop_filter_map(
        "not transitive",
        |(r, u, inverse)| {
            let c = if inverse { Convention::Inverse } else { Convention::Grgu };
            Origami::from_pair(r, u, c).ok()
        },
    )
}

/// Genus from vertex count: V − E + F = 2 − 2g with E = 2n, F = n, and V the
/// number of corner cycles, read off the commutator `r u r⁻¹ u⁻¹`.
fn euler_genus(o: &Origami) -> usize {
    let (r, u) = (o.r(), o.u());
    let c = &(&(r * u) * &r.inverse()) * &u.inverse();
    let mut seen = vec![false; c.degree()];
    let mut vertices = 0i64;
    for start in 0..c.degree() {
        if !seen[start] {
            vertices += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = c.image(x);
            }
        }
    }
    let n = o.n_squares() as i64;
    (2 - (vertices - n)) as usize / 2
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn genus_and_stratum(o in origami(8)) {
        prop_assert_eq!(o.genus(), euler_genus(&o));
        let other = o.with_convention(o.convention().other());
        prop_assert_eq!(other.genus(), o.genus());
        let excess: usize = o.commutator_perm().cycle_type().iter().map(|l| l - 1).sum();
        prop_assert_eq!(2 * o.genus() - 2, excess);
    }

    #[test]
    fn json_round_trip(o in origami(8)) {
        let input = OrigamiInput::pair(&o);
        let back = OrigamiInput::parse(&input.to_json()).unwrap();
        prop_assert_eq!(&back, &input);
        let data = back.build(&Config::default()).unwrap();
        prop_assert_eq!(data.origami().genus(), o.genus());
    }

    #[test]
    fn homology_lattice(o in origami(7)) {
        let model = H1Model::new(&o).unwrap();
        prop_assert_eq!(model.rank(), 2 * o.genus());
        let j = model.intersection();
        prop_assert_eq!(j.transpose(), -j.clone());
        prop_assert_eq!(determinant(j).unwrap(), 1.into());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Sum rules, structure checks and the projector-rank oracle on random
    /// origamis, in both commutator conventions.
    #[test]
    fn analysis_is_consistent(o in origami(6)) {
        let cfg = Config::default();
        let data = GroupDataOrigami::from_origami(&o, cfg.element_cap).unwrap();
        let table = CharacterTable::compute(data.gamma(), &cfg).unwrap();
        let a = analyze(&data, &table, &AnalysisOptions::default(), &cfg).unwrap();
        prop_assert!(a.passed(), "{:?}", a.failures());
        let total: usize = a.report.irreducibles.iter().map(|e| e.ell * e.dim).sum();
        prop_assert_eq!(total, 2 * o.genus() - 2);
    }
}

#[test]
fn torus_shears_act_as_their_derivatives() {
    let o = Origami::torus();
    let model = H1Model::new(&o).unwrap();
    let j = model.intersection();
    assert_eq!(j[(0, 1)].abs(), 1);
    assert_eq!(j.transpose(), -j.clone());
    for shear in [Shear::Horizontal, Shear::Vertical] {
        let m = AffineHomologyAction::new(&model, &o, shear, 1, 0).unwrap().h1_matrix;
        let d = shear.derivative(1);
        // In any basis the action is conjugate to the derivative: trace 2,
        // determinant 1, unipotent but not the identity.
        assert_eq!(m.trace(), d[0][0] + d[1][1]);
        assert_eq!(determinant(&m).unwrap(), 1.into());
        let n = &m - origami::linalg::IntMatrix::identity(2, 2);
        assert!(n != origami::linalg::IntMatrix::zeros(2, 2));
        assert_eq!(&n * &n, origami::linalg::IntMatrix::zeros(2, 2));
        assert!(model.preserves_form(&m).unwrap());
    }
}
