use std::time::Instant;

use braidcert_core::engine::certify::CertifySetup;
use braidcert_core::graded::GradingSpec;
use braidcert_core::presentation::gen_braided_aut;
use braidcert_core::scalars::ZetaMode;

fn main() {
    let spec = GradingSpec::single(&[0, 0, 1]).unwrap();
    let p = gen_braided_aut(&spec, ZetaMode::Generic);
    let setup = CertifySetup::new(p.ctx(), p.relation_elements());
    eprintln!("relations: {}", p.num_relations());
    for label in [
        "prod_lower[1,1;1,3;3,1]",
        "prod_lower[1,3;3,1;1,1]",
        "prod_upper[1,3;3,1;1,1]",
    ] {
        let idx = p.relation_by_label(label).unwrap();
        let target = p.comult_apply(&p.relation_elements()[idx]);
        let t = Instant::now();
        let out = setup.certify_zero(&target, 3).unwrap();
        eprintln!(
            "{label}: certified={} in {:?} (terms {})",
            out.is_certified(),
            t.elapsed(),
            out.certificate().map(|c| c.terms.len()).unwrap_or(0)
        );
    }
}
