use num_complex::Complex64;
use proptest::prelude::*;

use super::*;
use crate::config::Config;
use crate::permgroup::{GeneratedPermGroup, Permutation, DEFAULT_ELEMENT_CAP};

fn group(degree: usize, gens: &[&str]) -> GeneratedPermGroup {
    let gens = gens.iter().map(|s| Permutation::parse_cycles(degree, s).unwrap()).collect();
    GeneratedPermGroup::generate(degree, gens, DEFAULT_ELEMENT_CAP).unwrap()
}

fn sym(n: usize) -> GeneratedPermGroup {
    let cycle = format!("({})", (0..n).map(|i| i.to_string()).collect::<Vec<_>>().join(" "));
    group(n, &[&cycle, "(0 1)"])
}

#[test]
fn cyclic_three_has_cube_roots() {
    let g = group(3, &["(0 1 2)"]);
    let t = CharacterTable::compute(&g, &Config::default()).unwrap();
    assert_eq!(t.dims(), &[1, 1, 1]);
    for r in 0..3 {
        for c in 0..3 {
            let v = t.value(r, c);
            assert!(((v * v * v) - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        }
    }
    let info = real_classification(&t).unwrap();
    assert_eq!(info.count(RealType::Real), 1);
    assert_eq!(info.count(RealType::Complex), 2);
    assert_eq!(info.classes.len(), 2);
    assert_eq!(info.classes[1].dim_real, 2);
}

#[test]
fn symmetric_group_tables_match_murnaghan_nakayama() {
    for n in 3..=5 {
        let g = sym(n);
        let t = CharacterTable::compute(&g, &Config::default()).unwrap();
        let types: Vec<Vec<usize>> = t.classes().representatives().iter().map(Permutation::cycle_type).collect();
        let mut used = vec![false; t.len()];
        for lambda in sn::partitions(n) {
            let expected: Vec<i64> = types.iter().map(|mu| sn::character(&lambda, mu).unwrap()).collect();
            let row = (0..t.len())
                .find(|&r| {
                    t.row(r).iter().zip(&expected).all(|(v, &e)| (v - Complex64::new(e as f64, 0.0)).norm() < 1e-8)
                })
                .unwrap_or_else(|| panic!("no row for {lambda:?} in S_{n}"));
            assert!(!used[row]);
            used[row] = true;
        }
    }
}

/// Rank over the rationals of a small integer matrix.
fn rank(mut m: Vec<Vec<f64>>) -> usize {
    let rows = m.len();
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| m[i][c].abs() > 1e-12) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..rows {
            if i != r {
                let f = m[i][c] / m[r][c];
                for j in 0..cols {
                    m[i][j] -= f * m[r][j];
                }
            }
        }
        r += 1;
    }
    r
}

#[test]
fn standard_s4_fixed_space_of_transposition() {
    // Standard representation on {x ∈ Q⁴ : Σx = 0} with basis e_i − e_3.
    // The transposition (0 1) swaps the first two basis vectors.
    let m = [[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]];
    let shifted: Vec<Vec<f64>> =
        (0..3).map(|i| (0..3).map(|j| m[i][j] - if i == j { 1.0 } else { 0.0 }).collect()).collect();
    let oracle = 3 - rank(shifted);
    assert_eq!(oracle, 2);

    let g = sym(4);
    let t = CharacterTable::compute(&g, &Config::default()).unwrap();
    let tau = Permutation::parse_cycles(4, "(0 1)").unwrap();
    let standard = (0..t.len())
        .find(|&r| t.dim(r) == 3 && (t.value(r, t.class_of(&g, &tau).unwrap()).re - 1.0).abs() < 1e-9)
        .unwrap();
    assert_eq!(t.dim_fix(&g, standard, &tau).unwrap(), oracle);
    assert_eq!(t.dim_fix(&g, 0, &tau).unwrap(), 1);
}

#[test]
fn quaternion_group_is_quaternionic() {
    // left multiplication on {1, −1, i, −i, j, −j, k, −k}
    let i = Permutation::from_images(vec![2, 3, 1, 0, 6, 7, 5, 4]).unwrap();
    let j = Permutation::from_images(vec![4, 5, 7, 6, 1, 0, 2, 3]).unwrap();
    let g = GeneratedPermGroup::generate(8, vec![i, j], 100).unwrap();
    assert_eq!(g.order(), 8);
    let t = CharacterTable::compute(&g, &Config::default()).unwrap();
    let two = (0..t.len()).find(|&r| t.dim(r) == 2).unwrap();
    assert_eq!(t.fs_indicator(two).unwrap(), -1);
    let info = real_classification(&t).unwrap();
    assert_eq!(info.schur_index[two], 2);
    assert_eq!(info.classes[info.class_of[two]].dim_real, 4);
    assert_eq!(info.count(RealType::Real), 4);
}

#[test]
fn rational_classes_of_cyclic_five() {
    let g = group(5, &["(0 1 2 3 4)"]);
    let t = CharacterTable::compute(&g, &Config::default()).unwrap();
    let orbits = t.rational_classes();
    assert_eq!(orbits.len(), 2);
    assert_eq!(orbits[0], vec![0]);
    assert_eq!(orbits[1].len(), 4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dim_fix_is_a_class_function(x in 0usize..120, y in 0usize..120) {
        thread_local! {
            static DATA: (GeneratedPermGroup, CharacterTable) = {
                let g = sym(5);
                let t = CharacterTable::compute(&g, &Config::default()).unwrap();
                (g, t)
            };
        }
        DATA.with(|(g, t)| {
            let a = g.element(x);
            let b = g.element(y);
            for r in 0..t.len() {
                let d = t.dim_fix(g, r, a).unwrap();
                prop_assert_eq!(d, t.dim_fix(g, r, &a.inverse()).unwrap());
                prop_assert_eq!(d, t.dim_fix(g, r, &a.conjugate_by(b)).unwrap());
            }
            Ok(())
        })?;
    }
}
