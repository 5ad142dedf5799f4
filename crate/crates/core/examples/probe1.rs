use std::time::Instant;

use braidcert_core::engine::certify::CertifySetup;
use braidcert_core::graded::GradingSpec;
use braidcert_core::presentation::gen_braided_aut;
use braidcert_core::scalars::ZetaMode;

fn main() {
    let spec = GradingSpec::single(&[0, 1]).unwrap();
    for mode in [ZetaMode::Generic, ZetaMode::root(4)] {
        let p = gen_braided_aut(&spec, mode);
        let setup = CertifySetup::new(p.ctx(), p.relation_elements());
        let idx = p.relation_by_label("prod_upper[1,2;1,1;2,1]").unwrap();
        let target = p.comult_apply(&p.relation_elements()[idx]);
        let t = Instant::now();
        let out = setup.certify_zero(&target, 4).unwrap();
        println!(
            "mode {mode:?}: certified={} in {:?}",
            out.is_certified(),
            t.elapsed()
        );
    }
}
