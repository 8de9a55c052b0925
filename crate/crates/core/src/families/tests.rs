use num_complex::Complex64;

use super::sl2::classify_for_tests;
use super::*;
use crate::config::Config;
use crate::isotypic::Sl2Case;

/// Reference rows `(p, π², ord(c))`.
const ORDER_TABLE: &[(u64, u64, u64)] = &[
    (5, 1, 10),
    (5, 4, 6),
    (7, 1, 8),
    (7, 4, 3),
    (7, 2, 8),
    (11, 1, 5),
    (11, 4, 12),
    (11, 9, 4),
    (11, 5, 5),
    (11, 3, 12),
    (13, 1, 14),
    (13, 4, 14),
    (13, 9, 26),
    (13, 3, 14),
    (13, 12, 6),
    (13, 10, 3),
];

type Mat = [[u64; 2]; 2];

fn mat_mul(p: u64, a: Mat, b: Mat) -> Mat {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = (a[i][0] * b[0][j] + a[i][1] * b[1][j]) % p;
        }
    }
    c
}

/// Inverse of a determinant-one matrix.
fn mat_inv(p: u64, m: Mat) -> Mat {
    [[m[1][1], (p - m[0][1]) % p], [(p - m[1][0]) % p, m[0][0]]]
}

fn matrix_order(p: u64, m: Mat) -> u64 {
    let mul = |a, b| mat_mul(p, a, b);
    let mut x = m;
    let mut k = 1;
    while x != [[1, 0], [0, 1]] {
        x = mul(x, m);
        k += 1;
    }
    k
}

fn sqrt_mod(p: u64, s: u64) -> u64 {
    (1..p).find(|x| x * x % p == s).expect("square")
}

#[test]
fn trace_recursion_reproduces_reference_orders() {
    for &(p, s, ord) in ORDER_TABLE {
        assert_eq!(order_of_commutator(p, s).unwrap(), ord, "p = {p}, π² = {s}");
        let pi = sqrt_mod(p, s);
        let (a, b) = ([[1, 1], [0, 1]], [[1, 0], [pi, 1]]);
        let c = mat_mul(p, mat_mul(p, a, b), mat_mul(p, mat_inv(p, a), mat_inv(p, b)));
        assert_eq!(matrix_order(p, c), ord, "matrix oracle, p = {p}, π² = {s}");
    }
}

#[test]
fn case_examples() {
    assert!(matches!(sl2_case(5, 4).unwrap(), Sl2Case::Elliptic { order: 6, .. }));
    assert!(matches!(sl2_case(13, 10).unwrap(), Sl2Case::Hyperbolic { order: 3, .. }));
    assert_eq!(sl2_case(5, 1).unwrap(), Sl2Case::Parabolic);
    assert_eq!(sl2_case(13, 9).unwrap(), Sl2Case::Parabolic);
    assert!(sl2_case(7, 3).is_err(), "3 is not a square mod 7");
    assert!(order_of_commutator(9, 1).is_err());
}

#[test]
fn case_counts_match_residue_formulas() {
    for p in [5u64, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43] {
        let c = sl2_case_counts(p).unwrap();
        let (hyp, ell) = if p % 4 == 1 { ((p - 5) / 4, (p - 1) / 4) } else { ((p - 3) / 4, (p + 1) / 4) };
        assert_eq!(c.hyperbolic as u64, hyp, "p = {p}");
        assert_eq!(c.elliptic as u64, ell, "p = {p}");
        assert_eq!(c.parabolic, usize::from(p % 4 == 1));
    }
}

#[test]
fn unipotent_classes_by_square_class() {
    // ε = 2 for p = 5
    assert_eq!(classify_for_tests(5, [[1, 1], [0, 1]]), Sl2ClassKind::Unipotent { nonsquare: false });
    assert_eq!(classify_for_tests(5, [[1, 2], [0, 1]]), Sl2ClassKind::Unipotent { nonsquare: true });
    assert_eq!(classify_for_tests(5, [[1, 0], [4, 1]]), Sl2ClassKind::Unipotent { nonsquare: false });
    assert_eq!(classify_for_tests(5, [[4, 4], [0, 4]]), Sl2ClassKind::MinusUnipotent { nonsquare: false });
    assert_eq!(classify_for_tests(5, [[2, 0], [0, 3]]), Sl2ClassKind::Split(1));
    // x² + 1 is irreducible mod 7
    assert!(matches!(classify_for_tests(7, [[0, 6], [1, 0]]), Sl2ClassKind::Nonsplit(_)));
}

/// Every row of `a` equals some row of `b`, column by column.
fn same_rows(a: &CharacterTable, b: &CharacterTable) -> bool {
    a.len() == b.len()
        && (0..a.len()).all(|r| {
            (0..b.len())
                .any(|s| a.row(r).iter().zip(b.row(s)).all(|(x, y): (&Complex64, &Complex64)| (x - y).norm() < 1e-6))
        })
}

#[test]
fn built_in_tables_match_generic_tables() {
    let cfg = Config::default();
    for (p, a, b) in [(5, 1, 1), (7, 1, 2), (11, 1, 1)] {
        let inst = sl2p(p, a, b, &cfg).unwrap();
        let generic = CharacterTable::compute(inst.data.gamma(), &cfg).unwrap();
        assert!(same_rows(&inst.table, &generic), "SL(2, F_{p})");
        assert!(inst.checks.iter().all(|c| c.passed), "{:?}", inst.checks);
    }
    for p in [2, 3] {
        let inst = heisenberg_regular(p, &cfg).unwrap();
        let generic = CharacterTable::compute(inst.data.gamma(), &cfg).unwrap();
        assert!(same_rows(&inst.table, &generic), "Heisenberg p = {p}");
    }
}

#[test]
fn symmetric_family_facts() {
    let cfg = Config::default();
    for n in 2..=4 {
        let inst = sn(n, &cfg).unwrap();
        assert!(inst.checks.iter().all(|c| c.passed), "n = {n}: {:?}", inst.checks);
        assert_eq!(inst.data.n_squares(), 2 * (1..=n).product::<usize>());
        assert!(inst.table.labels().iter().all(|l| l.starts_with('(')));
    }
    let four = sn(4, &cfg).unwrap();
    assert_eq!(four.expected.ell["(4)"], 0);
    assert_eq!(four.expected.ell["(1,1,1,1)"], 2);
    assert_eq!(four.expected.ell["(3,1)"], 2);
    assert_eq!(four.expected.ell["(2,1,1)"], 4);
    assert_eq!(four.expected.ell["(2,2)"], 2);
    assert_eq!(four.expected.genus, Some(13));
    assert_eq!(four.data.origami().singularity_data().sigma_star_count, 24);
    assert!(sn(1, &cfg).is_err());
}

#[test]
fn klein_facts() {
    let inst = klein(&Config::default()).unwrap();
    assert!(inst.checks.iter().all(|c| c.passed), "{:?}", inst.checks);
    assert!(!inst.data.is_regular());
    let v = inst.data.quasiregular_verdict().unwrap();
    assert!(v.conjugates_in_normalizer);
    assert_eq!(v.quotient_order, Some(4));
    assert_eq!(v.quotient_cyclic, Some(false));
}

#[test]
fn heisenberg_shapes() {
    let cfg = Config::default();
    let qr = heisenberg_quasiregular(3, &cfg).unwrap();
    assert_eq!(qr.data.n_squares(), 9);
    assert_eq!(qr.data.gamma().order(), 3);
    assert!(!qr.data.is_regular());
    let reg = heisenberg_regular(3, &cfg).unwrap();
    assert_eq!(reg.data.origami().genus(), 10);
    assert!(reg.checks.iter().all(|c| c.passed));
    assert_eq!(heisenberg_label("chi(1,2)"), Some(HeisenbergLabel::Linear { m: 1, n: 2 }));
    assert_eq!(heisenberg_label("rho(2)"), Some(HeisenbergLabel::Central { k: 2 }));
    assert_eq!(heisenberg_label("(2,1)"), None);
}

#[test]
fn rejects_bad_parameters() {
    let cfg = Config::default();
    assert!(sl2p(9, 1, 1, &cfg).is_err());
    assert!(sl2p(5, 5, 1, &cfg).is_err());
    assert!(heisenberg_regular(4, &cfg).is_err());
}
