//! Manual timing probes for the heavy suites (run with --ignored).

use std::time::Instant;

use braidcert_core::graded::GradingSpec;
use braidcert_core::presentation::gen_braided_aut;
use braidcert_core::scalars::ZetaMode;
use braidcert_core::verifier::{verify_comult_welldefined, verify_unitarity};

#[test]
#[ignore]
fn probe_comult_n2_generic() {
    let spec = GradingSpec::single(&[0, 1]).unwrap();
    let p = gen_braided_aut(&spec, ZetaMode::Generic);
    let t = Instant::now();
    let report = verify_comult_welldefined(&p, 4);
    eprintln!(
        "n=2 comult: {} checks, good={}, elapsed {:?}",
        report.checks.len(),
        report.all_good(),
        t.elapsed()
    );
    assert!(report.all_good());
}

#[test]
#[ignore]
fn probe_comult_n3_generic() {
    let spec = GradingSpec::single(&[0, 0, 1]).unwrap();
    let p = gen_braided_aut(&spec, ZetaMode::Generic);
    let t = Instant::now();
    let report = verify_comult_welldefined(&p, 4);
    eprintln!(
        "n=3 comult: {} checks, good={}, elapsed {:?}",
        report.checks.len(),
        report.all_good(),
        t.elapsed()
    );
    assert!(report.all_good());
}

#[test]
#[ignore]
fn probe_unitarity_n3_root8() {
    let spec = GradingSpec::single(&[0, 1, 2]).unwrap();
    let p = gen_braided_aut(&spec, ZetaMode::root(8));
    let t = Instant::now();
    let report = verify_unitarity(&p, 3);
    eprintln!(
        "n=3 unitarity: {} checks, good={}, elapsed {:?}",
        report.checks.len(),
        report.all_good(),
        t.elapsed()
    );
    assert!(report.all_good());
}
