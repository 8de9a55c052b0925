use origami::analysis::{analyze, AnalysisOptions};
use origami::families::{heisenberg_quasiregular, heisenberg_regular, klein, sl2p, sn, FamilyInstance};
use origami::Config;

fn formula_only() -> AnalysisOptions {
    AnalysisOptions { run_oracle: false, affine: false, ..AnalysisOptions::default() }
}

fn assert_matches(name: &str, inst: &FamilyInstance, opts: &AnalysisOptions, cfg: &Config) {
    assert!(inst.checks.iter().all(|c| c.passed), "{name}: {:?}", inst.checks);
    let a = analyze(&inst.data, &inst.table, opts, cfg).unwrap();
    assert!(a.passed(), "{name}: {:?}", a.failures());
    let bad: Vec<_> = inst.diff(&a.observed()).into_iter().filter(|d| !d.matches).collect();
    assert!(bad.is_empty(), "{name}: {bad:?}");
}

#[test]
fn small_families_with_oracle() {
    let cfg = Config::default();
    let opts = AnalysisOptions::default();
    assert_matches("klein", &klein(&cfg).unwrap(), &opts, &cfg);
    for n in 2..=4 {
        assert_matches(&format!("sn {n}"), &sn(n, &cfg).unwrap(), &opts, &cfg);
    }
    for p in [2, 3] {
        assert_matches(&format!("heisenberg {p}"), &heisenberg_regular(p, &cfg).unwrap(), &opts, &cfg);
    }
    for p in [3, 5] {
        assert_matches(&format!("heisenberg-qr {p}"), &heisenberg_quasiregular(p, &cfg).unwrap(), &opts, &cfg);
    }
    for (a, b) in [(1, 1), (1, 2), (2, 2), (1, 4)] {
        assert_matches(&format!("sl2p 5 {a} {b}"), &sl2p(5, a, b, &cfg).unwrap(), &opts, &cfg);
    }
}

/// Every parabolic parameter pair for small primes, against the closed forms.
#[test]
fn sl2_parabolic_sweep() {
    let cfg = Config::default();
    let opts = formula_only();
    for p in [5u64, 7, 11] {
        for a in 1..p {
            for b in 1..p {
                let inst = sl2p(p, a, b, &cfg).unwrap();
                assert_matches(&format!("sl2p {p} {a} {b}"), &inst, &opts, &cfg);
            }
        }
    }
    // One representative per value of ab for p = 13.
    for a in 1..13 {
        assert_matches(&format!("sl2p 13 {a} 1"), &sl2p(13, a, 1, &cfg).unwrap(), &opts, &cfg);
    }
}

#[test]
fn larger_families_formula_only() {
    let cfg = Config::default();
    let opts = formula_only();
    assert_matches("sn 5", &sn(5, &cfg).unwrap(), &opts, &cfg);
    assert_matches("heisenberg 5", &heisenberg_regular(5, &cfg).unwrap(), &opts, &cfg);
    assert_matches("heisenberg-qr 7", &heisenberg_quasiregular(7, &cfg).unwrap(), &opts, &cfg);
}
