use origami::families::{heisenberg_regular, klein};
use origami::lyapunov::{estimate_for, Divisibility, RandomProductConfig};
use origami::Config;

fn short_run() -> RandomProductConfig {
    RandomProductConfig { steps: 200_000, ..RandomProductConfig::default() }
}

#[test]
fn heisenberg_three_structure() {
    let cfg = Config::default();
    let inst = heisenberg_regular(3, &cfg).unwrap();
    let r = estimate_for(&inst.data, &inst.table, &short_run(), &cfg).unwrap();
    assert!(r.aff_star_star);
    assert!(r.failures().is_empty(), "{:?}", r.failures());
    assert!(r.blocks_match_whole);
    let rho = r.blocks.iter().find(|b| b.dim_real_irrep == Some(6)).unwrap();
    assert_eq!(rho.dim_w, 18);
    assert_eq!(rho.divisibility, Divisibility::Divisible);
    assert!(r.blocks.iter().all(|b| b.symmetric));
}

#[test]
fn replicas_are_independent_of_thread_count() {
    let cfg = Config::default();
    let inst = klein(&cfg).unwrap();
    let base = RandomProductConfig { steps: 20_000, replicas: 3, ..RandomProductConfig::default() };
    let one = estimate_for(&inst.data, &inst.table, &RandomProductConfig { threads: 1, ..base.clone() }, &cfg).unwrap();
    let three = estimate_for(&inst.data, &inst.table, &RandomProductConfig { threads: 3, ..base }, &cfg).unwrap();
    assert_eq!(one.top_rate, three.top_rate);
    for (a, b) in one.blocks.iter().zip(&three.blocks) {
        assert_eq!(a.exponents, b.exponents);
    }
}
