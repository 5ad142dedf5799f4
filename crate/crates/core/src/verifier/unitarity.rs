//! Unitarity of the fundamental matrix: u*u = uu* = 1, certified
//! entrywise.

use std::time::Instant;

use rayon::prelude::*;

use crate::engine::certify::CertifySetup;
use crate::presentation::Presentation;

use super::{certified_check, VerificationReport};

pub fn verify_unitarity(p: &Presentation, cap: u32) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport::new("unitarity", p.spec().to_string(), p.mode());
    let ctx = p.ctx();
    let setup = CertifySetup::new(ctx, p.relation_elements());

    let u = p.fundamental_matrix();
    let ustar = u.adjoint(&ctx);
    let index = p.matrix_index();

    for (name, m) in [
        ("ustar_u", ustar.multiply(&ctx, &u).expect("square")),
        ("u_ustar", u.multiply(&ctx, &ustar).expect("square")),
    ] {
        let delta = m.minus_identity(&ctx);
        let dim = delta.dim;
        let mut checks: Vec<_> = (0..dim * dim)
            .into_par_iter()
            .map(|idx| {
                let (r, c) = (idx / dim, idx % dim);
                let id = format!(
                    "{name}[{},{}]",
                    p.matrix_index_label(index[r]),
                    p.matrix_index_label(index[c])
                );
                (idx, certified_check(&setup, id, delta.entry(r, c), cap))
            })
            .collect();
        checks.sort_by_key(|(idx, _)| *idx);
        report.checks.extend(checks.into_iter().map(|(_, c)| c));
    }

    report.elapsed = start.elapsed();
    report
}
