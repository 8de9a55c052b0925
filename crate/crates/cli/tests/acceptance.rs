//! Runs every acceptance criterion once and prints one line per criterion.
//! Criterion 10 is checked twice: in-process, and through the binary's exit
//! code and report.

use std::io::Write;
use std::process::Command;

use origami::selftest::{run, SelftestOptions, Status};
use origami::Config;

fn selftest_with(inject: &str) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_origami"))
        .args(["selftest", "--quick", "--inject", inject])
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn fails(report: &str, id: u8, needle: &str) -> bool {
    let prefix = format!("criterion {id:>2} FAIL");
    report.lines().any(|l| l.starts_with(&prefix) && l.contains(needle))
}

#[test]
fn acceptance() {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(4);
    let opts = SelftestOptions { slow: true, threads, ..SelftestOptions::default() };
    let mut results = run(&opts, &Config::default());

    let (code_ell, report_ell) = selftest_with("wrong-ell");
    let (code_form, report_form) = selftest_with("broken-form");
    let binary_ok = code_ell == 1
        && fails(&report_ell, 5, "sum-rule-homology")
        && code_form == 1
        && fails(&report_form, 7, "intersection-form");
    let last = results.last_mut().expect("ten criteria");
    assert_eq!(last.id, 10);
    if !binary_ok {
        last.status = Status::Fail;
        last.detail = format!("binary: wrong-ell exit {code_ell}, broken-form exit {code_form}");
    } else {
        last.detail.push_str("; binary exits 1 in both cases");
    }

    // Written to the raw handle so the lines survive libtest's capture.
    let mut out = std::io::stdout().lock();
    for r in &results {
        writeln!(out, "{}", r.line()).expect("stdout");
    }
    drop(out);
    assert_eq!(results.len(), 10);
    let failed: Vec<u8> = results.iter().filter(|r| r.status != Status::Pass).map(|r| r.id).collect();
    assert!(failed.is_empty(), "criteria not passing: {failed:?}");
}
