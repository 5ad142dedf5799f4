use braidcert_core::engine::certify::{CertifySetup, Outcome};
use braidcert_core::engine::{fmt_tensor_word, normal_order, TensorElement};
use braidcert_core::graded::GradingSpec;
use braidcert_core::presentation::gen_braided_aut;
use braidcert_core::scalars::{Scalar, ZetaMode};

// Extract a certificate for a hard instance and greedily minimize its
// support, to learn which column shapes the search actually needs.
fn main() {
    let spec = GradingSpec::single(&[0, 1]).unwrap();
    let p = gen_braided_aut(&spec, ZetaMode::Generic);
    let setup = CertifySetup::new(p.ctx(), p.relation_elements());
    let idx = p.relation_by_label("prod_lower[1,1;1,2;1,1]").unwrap();
    let target = p.comult_apply(&p.relation_elements()[idx]);
    let Outcome::Certified(cert) = setup.certify_zero(&target, 3).unwrap() else {
        panic!("expected certificate");
    };
    eprintln!("initial terms: {}", cert.terms.len());

    // Greedy minimization: drop one column at a time if the remaining
    // support still spans the target.
    let mut support: Vec<_> = cert.terms.clone();
    let mut i = 0;
    while i < support.len() {
        let mut trial = support.clone();
        trial.remove(i);
        if solves(&setup, &target, &trial) {
            support = trial;
        } else {
            i += 1;
        }
    }
    eprintln!("minimized terms: {}", support.len());
    for term in &support {
        eprintln!(
            "  [{}] slot {} left {} right {}",
            p.relation_meta()[term.rel].labels[0],
            term.slot,
            fmt_tensor_word(p.table(), &term.left),
            fmt_tensor_word(p.table(), &term.right),
        );
    }
}

fn solves(
    setup: &CertifySetup,
    target: &TensorElement,
    support: &[braidcert_core::engine::certify::CertTerm],
) -> bool {
    // Solve the restricted system: columns = given support only.
    use std::collections::BTreeMap;
    let mode = target.terms().next().map(|(_, c)| c.mode()).unwrap();
    let cols: Vec<TensorElement> = support
        .iter()
        .map(|t| setup.expand_column(t.rel, t.slot, &t.left, &t.right))
        .collect();
    let mut words: std::collections::BTreeSet<_> =
        target.terms().map(|(w, _)| w.clone()).collect();
    for c in &cols {
        for (w, _) in c.terms() {
            words.insert(w.clone());
        }
    }
    let row_of: BTreeMap<_, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    let mut rows: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); words.len()];
    for (j, c) in cols.iter().enumerate() {
        for (w, v) in c.terms() {
            rows[row_of[w]].insert(j, v.clone());
        }
    }
    let normal = normal_order(&setup.ctx, target);
    let mut rhs = vec![Scalar::zero(mode); words.len()];
    for (w, v) in normal.terms() {
        rhs[row_of[w]] = v.clone();
    }
    braidcert_core::scalars::solve::solve_sparse(cols.len(), &rows, &rhs, mode).is_some()
}
