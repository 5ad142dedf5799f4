use std::time::Instant;

use braidcert_core::engine::certify::CertifySetup;
use braidcert_core::graded::GradingSpec;
use braidcert_core::presentation::gen_braided_aut;
use braidcert_core::scalars::ZetaMode;

// How large does the union closure get when all comultiplication images
// share one search?
fn main() {
    let spec = GradingSpec::single(&[0, 0, 1]).unwrap();
    let p = gen_braided_aut(&spec, ZetaMode::Generic);
    let setup = CertifySetup::new(p.ctx(), p.relation_elements());
    let targets: Vec<_> = p
        .relation_elements()
        .iter()
        .map(|r| p.comult_apply(r))
        .collect();
    eprintln!("targets: {}", targets.len());
    let t = Instant::now();
    let outcomes = setup.certify_zero_batch(&targets, 3).unwrap();
    let certified = outcomes.iter().filter(|o| o.is_certified()).count();
    eprintln!(
        "certified {}/{} in {:?}",
        certified,
        outcomes.len(),
        t.elapsed()
    );
}
