//! Candidate homomorphisms between presentations: given images for the
//! source generators, certify that all source relations vanish in the
//! target quotient and that the comultiplications intertwine. This is
//! the implementable direction of the universal property.

use std::time::Instant;

use rayon::prelude::*;

use crate::engine::certify::CertifySetup;
use crate::error::Error;
use crate::presentation::{Presentation, SubstitutionRule};

use super::{syntactic_or_certified, VerificationReport};

pub fn verify_candidate_hom(
    source: &Presentation,
    rule: &SubstitutionRule,
    target: &Presentation,
    cap: u32,
) -> Result<VerificationReport, Error> {
    rule.check_degrees(source, target)?;
    let start = Instant::now();
    let mut report = VerificationReport::new("candidate_hom", source.spec().to_string(), source.mode());
    let setup = CertifySetup::new(target.ctx(), target.relation_elements());

    let mut rel_checks: Vec<_> = source
        .relation_elements()
        .par_iter()
        .zip(source.relation_meta().par_iter())
        .enumerate()
        .map(|(idx, (rel, meta))| {
            let id = format!("hom_rel[{}]", meta.labels[0]);
            let check = match rule.apply_element(target, rel) {
                Ok(image) => syntactic_or_certified(&setup, id, &image, cap),
                Err(e) => super::CheckResult::violated(id, format!("substitution failed: {e}")),
            };
            (idx, check)
        })
        .collect();
    rel_checks.sort_by_key(|(idx, _)| *idx);
    report.checks.extend(rel_checks.into_iter().map(|(_, c)| c));

    // Δ_target(f(g)) = (f ⊗ f)(Δ_source(g)), certified in the target's
    // tensor square.
    for (g, info) in source.table().iter() {
        let id = format!("hom_comult[{}]", info.label);
        let image = match rule.image(g) {
            Some(image) => image.clone(),
            None => {
                report
                    .checks
                    .push(super::CheckResult::violated(id, "missing image"));
                continue;
            }
        };
        let lhs = target.comult_apply(&image);
        let rhs = rule.apply_element(target, source.comult_assignment(g))?;
        let diff = lhs.sub(&rhs)?;
        report.checks.push(syntactic_or_certified(&setup, id, &diff, cap));
    }

    report.elapsed = start.elapsed();
    Ok(report)
}
