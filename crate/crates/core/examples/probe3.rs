use std::time::Instant;

use braidcert_core::engine::certify::CertifySetup;
use braidcert_core::graded::GradingSpec;
use braidcert_core::presentation::gen_braided_aut;
use braidcert_core::scalars::ZetaMode;

fn main() {
    let spec = GradingSpec::single(&[0, 1]).unwrap();
    let p = gen_braided_aut(&spec, ZetaMode::Generic);
    let setup = CertifySetup::new(p.ctx(), p.relation_elements());
    let idx = p.relation_by_label("prod_lower[1,1;1,2;1,1]").unwrap();
    let target = p.comult_apply(&p.relation_elements()[idx]);
    let t = Instant::now();
    let out = setup.certify_zero(&target, 3).unwrap();
    eprintln!("certified={} in {:?}", out.is_certified(), t.elapsed());
    if let Some(cert) = out.certificate() {
        eprintln!("terms: {}", cert.terms.len());
        for term in &cert.terms {
            let rel_label = &p.relation_meta()[term.rel].labels[0];
            let fmt_w = |w: &braidcert_core::engine::TensorWord| {
                braidcert_core::engine::fmt_tensor_word(p.table(), w)
            };
            eprintln!(
                "  ({}) * [{}] slot {}  left {}  right {}",
                term.coeff,
                rel_label,
                term.slot,
                fmt_w(&term.left),
                fmt_w(&term.right)
            );
        }
    }
}
