//! Classical degenerations: at ζ = 1 or for trivial gradings the
//! relation schema collapses to the phase-free quantum automorphism
//! relations, and for a direct sum of one-dimensional blocks the engine
//! derives the magic-unitary identities.

use std::time::Instant;

use crate::engine::certify::CertifySetup;
use crate::engine::{tensor_multiply, TensorElement, Word};
use crate::graded::GradingSpec;
use crate::presentation::{
    gen_braided_aut, relation_keys, wang_zero_phase_relations, Presentation,
};
use crate::scalars::{Scalar, ZetaMode};

use super::{certified_check, CheckResult, VerificationReport};

pub fn verify_degenerations(spec: &GradingSpec) -> VerificationReport {
    let start = Instant::now();
    let mut report =
        VerificationReport::new("degenerations", spec.to_string(), ZetaMode::Generic);

    // At ζ = 1 all phases are literally 1, so the generated relation set
    // must coincide with the forced-zero-phase schema.
    {
        let at_one = gen_braided_aut(spec, ZetaMode::root(1));
        let zero = wang_zero_phase_relations(spec, ZetaMode::root(1));
        report.checks.push(keyset_check(
            "degeneration_zeta_one",
            &at_one,
            &zero,
        ));
    }

    // A trivial grading kills every phase exponent for any ζ.
    {
        let flat: Vec<(usize, Vec<i64>)> = spec
            .block_sizes()
            .iter()
            .map(|&n| (n, vec![0; n]))
            .collect();
        let flat_spec = GradingSpec::new(&flat).expect("zero degrees are valid");
        let mode = ZetaMode::root(8);
        let trivial = gen_braided_aut(&flat_spec, mode);
        let zero = wang_zero_phase_relations(&flat_spec, mode);
        report.checks.push(keyset_check(
            "degeneration_trivial_grading",
            &trivial,
            &zero,
        ));
    }

    // Blocks of size one: the generators a_{xy} = u^{11}_{11,xy} form a
    // magic unitary; each identity is derived by the engine.
    {
        let m = if spec.block_sizes().iter().all(|&n| n == 1) {
            spec.num_blocks()
        } else {
            4
        };
        let blocks: Vec<(usize, Vec<i64>)> = (0..m).map(|_| (1, vec![0])).collect();
        let pt_spec = GradingSpec::new(&blocks).expect("point spec");
        let p = gen_braided_aut(&pt_spec, ZetaMode::Generic);
        let ctx = p.ctx();
        let setup = CertifySetup::new(ctx, p.relation_elements());
        let one = Scalar::one(p.mode());
        let a = |x: usize, y: usize| p.ugen(x, y, 0, 0, 0, 0);

        for x in 0..m {
            for y in 0..m {
                let g = a(x, y);
                let info = p.table().info(g);
                let id = format!("magic_selfadjoint[{},{}]", x + 1, y + 1);
                report.checks.push(if info.star_gen == g && info.star_exp == 0 {
                    CheckResult::passed(id)
                } else {
                    CheckResult::violated(id, "a_{xy} is not formally self-adjoint")
                });

                let axy = TensorElement::monomial(vec![Word::gen(g)], one.clone());
                let square = tensor_multiply(&ctx, &axy, &axy).expect("one slot");
                let target = square.sub(&axy).expect("one slot");
                report.checks.push(certified_check(
                    &setup,
                    format!("magic_idempotent[{},{}]", x + 1, y + 1),
                    &target,
                    3,
                ));

                for w in 0..m {
                    if w == y {
                        continue;
                    }
                    let axw = TensorElement::monomial(vec![Word::gen(a(x, w))], one.clone());
                    let prod = tensor_multiply(&ctx, &axy, &axw).expect("one slot");
                    report.checks.push(certified_check(
                        &setup,
                        format!("magic_row_orthogonal[{},{},{}]", x + 1, y + 1, w + 1),
                        &prod,
                        3,
                    ));
                }
            }
        }
        for x in 0..m {
            let mut row = TensorElement::zero(1);
            let mut col = TensorElement::zero(1);
            for y in 0..m {
                row.accumulate(vec![Word::gen(a(x, y))], one.clone());
                col.accumulate(vec![Word::gen(a(y, x))], one.clone());
            }
            let unit = TensorElement::one(1, p.mode());
            report.checks.push(certified_check(
                &setup,
                format!("magic_row_sum[{}]", x + 1),
                &row.sub(&unit).expect("one slot"),
                3,
            ));
            report.checks.push(certified_check(
                &setup,
                format!("magic_col_sum[{}]", x + 1),
                &col.sub(&unit).expect("one slot"),
                3,
            ));
        }
    }

    report.elapsed = start.elapsed();
    report
}

fn keyset_check(id: &str, left: &Presentation, right: &Presentation) -> CheckResult {
    if relation_keys(left) == relation_keys(right) {
        CheckResult::passed(id)
    } else {
        CheckResult::violated(id, "relation sets differ")
    }
}
