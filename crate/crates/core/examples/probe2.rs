use std::time::Instant;

use braidcert_core::engine::certify::CertifySetup;
use braidcert_core::graded::GradingSpec;
use braidcert_core::presentation::gen_braided_aut;
use braidcert_core::scalars::ZetaMode;

fn main() {
    let spec = GradingSpec::single(&[0, 1]).unwrap();
    let p = gen_braided_aut(&spec, ZetaMode::Generic);
    let setup = CertifySetup::new(p.ctx(), p.relation_elements());
    let total = Instant::now();
    for (idx, rel) in p.relation_elements().iter().enumerate() {
        let target = p.comult_apply(rel);
        let t = Instant::now();
        eprint!("{} [{}] ... ", idx, p.relation_meta()[idx].labels[0]);
        let out = setup.certify_zero_with_retry(&target, 4).unwrap();
        eprintln!("{} ms certified={}", t.elapsed().as_millis(), out.is_certified());
    }
    eprintln!("total {:?} for {} relations", total.elapsed(), p.num_relations());
}
