//! The action axioms of η(E_{ij,x}) = Σ E_{rs,y} ⊠ u^{rs}_{ij,yx} on the
//! underlying graded algebra: multiplicativity, star and unit
//! preservation, the finite Podleś identity, the comodule law, and
//! preservation of the distinguished functional.
//!
//! The computation lives in a hybrid braided tensor: one concrete slot
//! of matrix units, one slot of presentation words. Residues are
//! collected per matrix unit and certified against the relation ideal.

use std::time::Instant;

use rayon::prelude::*;

use crate::engine::certify::CertifySetup;
use crate::engine::{
    admit_word, normal_order, star, tensor_multiply, word_degree, RawLetter, TensorElement,
    TensorMode, Word,
};
use crate::error::Error;
use crate::graded::{FunctionalChoice, GradedAlgebra};
use crate::presentation::{Presentation, PresentationClass, RelationFamily};
use crate::scalars::{Rat, Scalar};

use super::hybrid::{comult_to_slot, Hybrid};
use super::{certified_check, CheckResult, CheckStatus, VerificationReport};

struct ActionCtx<'a> {
    p: &'a Presentation,
    hybrid: &'a Hybrid,
}

impl<'a> ActionCtx<'a> {
    /// η(E_{ij,x}) as a hybrid two-slot element.
    fn eta(&self, x: usize, i: usize, j: usize) -> TensorElement {
        let spec = self.p.spec();
        let mut out = TensorElement::zero(2);
        for y in 0..spec.num_blocks() {
            let n = spec.block_size(y);
            for r in 0..n {
                for s in 0..n {
                    out.accumulate(
                        vec![
                            Word::gen(self.hybrid.e_id(y, r, s)),
                            Word::gen(self.p.ugen(y, x, r, s, i, j) + self.hybrid.offset),
                        ],
                        Scalar::one(self.p.mode()),
                    );
                }
            }
        }
        out
    }
}

pub fn verify_action(
    p: &Presentation,
    target: &GradedAlgebra,
    cap: u32,
) -> Result<VerificationReport, Error> {
    if p.class() != PresentationClass::BraidedAut {
        return Err(Error::NotBraided {
            found: "non-braided presentation",
        });
    }
    if target.spec() != p.spec() {
        return Err(Error::MixedParents);
    }
    let start = Instant::now();
    let mut report = VerificationReport::new("action", p.spec().to_string(), p.mode());
    let spec = p.spec();
    let mode = p.mode();
    let hybrid = Hybrid::new(spec, p, TensorMode::Braided, None);
    let hctx = hybrid.ctx();
    let act = ActionCtx { p, hybrid: &hybrid };
    let setup = CertifySetup::new(p.ctx(), p.relation_elements());

    let units: Vec<(usize, usize, usize)> = spec
        .block_sizes()
        .iter()
        .enumerate()
        .flat_map(|(x, &n)| (0..n).flat_map(move |i| (0..n).map(move |j| (x, i, j))))
        .collect();
    let ulabel = |(x, i, j): (usize, usize, usize)| {
        if spec.is_single_block() {
            format!("{},{}", i + 1, j + 1)
        } else {
            format!("{},{}|{}", i + 1, j + 1, x + 1)
        }
    };

    // Multiplicativity: η(E_a)η(E_b) = δ·η(E_a E_b), certified per
    // residual matrix unit.
    let pairs: Vec<((usize, usize, usize), (usize, usize, usize))> = units
        .iter()
        .flat_map(|&a| units.iter().map(move |&b| (a, b)))
        .collect();
    let mut mult_checks: Vec<(usize, Vec<CheckResult>)> = pairs
        .par_iter()
        .enumerate()
        .map(|(idx, &(a, b))| {
            let prod = tensor_multiply(&hctx, &act.eta(a.0, a.1, a.2), &act.eta(b.0, b.1, b.2))
                .expect("two slots");
            let expected = if a.0 == b.0 && a.2 == b.1 {
                act.eta(a.0, a.1, b.2)
            } else {
                TensorElement::zero(2)
            };
            let diff = prod.sub(&expected).expect("two slots");
            let base = format!("action_mult[({})*({})]", ulabel(a), ulabel(b));
            (idx, certify_residues(&setup, &hybrid, &base, &diff, cap))
        })
        .collect();
    mult_checks.sort_by_key(|(idx, _)| *idx);
    for (_, cs) in mult_checks {
        report.checks.extend(cs);
    }

    // Star preservation: η(E_{ij}^*) = η(E_{ij})^*, a termwise identity.
    for &(x, i, j) in &units {
        let lhs = act.eta(x, j, i);
        let rhs = star(&hctx, &act.eta(x, i, j));
        let id = format!("action_star[{}]", ulabel((x, i, j)));
        report.checks.push(if normal_order(&hctx, &lhs) == normal_order(&hctx, &rhs) {
            CheckResult::passed(id)
        } else {
            CheckResult::violated(id, "star of the action image disagrees")
        });
    }

    // Unit preservation: Σ η(E_{ii,x}) = 1 ⊠ 1.
    {
        let mut sum = TensorElement::zero(2);
        for &(x, i, j) in &units {
            if i == j {
                sum = sum.add(&act.eta(x, i, j)).expect("two slots");
            }
        }
        let one = TensorElement::one(2, mode);
        let diff = sum.sub(&one).expect("two slots");
        report
            .checks
            .extend(certify_residues(&setup, &hybrid, "action_unit", &diff, cap));
    }

    // Podleś identity: Σ_{w,r,s} η(E_{rs,w})·(1 ⊠ u^{kl}_{rs,yw}^*) = E_{kl,y} ⊠ 1.
    let mut podles_checks: Vec<(usize, Vec<CheckResult>)> = units
        .par_iter()
        .enumerate()
        .map(|(idx, &(y, k, l))| {
            let mut sum = TensorElement::zero(2);
            for w in 0..spec.num_blocks() {
                let n = spec.block_size(w);
                for r in 0..n {
                    for s in 0..n {
                        let ustar = admit_word(
                            &hctx,
                            &[RawLetter::Gen {
                                id: p.ugen(y, w, k, l, r, s) + hybrid.offset,
                                star: true,
                            }],
                        )
                        .expect("free letters never collapse");
                        let factor = TensorElement::monomial(
                            vec![Word::identity(), ustar.1],
                            Scalar::phase(ustar.0, mode),
                        );
                        let term = tensor_multiply(&hctx, &act.eta(w, r, s), &factor)
                            .expect("two slots");
                        sum = sum.add(&term).expect("two slots");
                    }
                }
            }
            let expected = TensorElement::monomial(
                vec![Word::gen(hybrid.e_id(y, k, l)), Word::identity()],
                Scalar::one(mode),
            );
            let diff = sum.sub(&expected).expect("two slots");
            let base = format!("action_podles[{}]", ulabel((y, k, l)));
            (idx, certify_residues(&setup, &hybrid, &base, &diff, cap))
        })
        .collect();
    podles_checks.sort_by_key(|(idx, _)| *idx);
    for (_, cs) in podles_checks {
        report.checks.extend(cs);
    }

    // Comodule law: (id ⊠ Δ)∘η = (η ⊠ id)∘η, a formal-sum identity.
    let lifted_comult = hybrid.lifted_comult(p);
    for &(x, i, j) in &units {
        let e = act.eta(x, i, j);
        let lhs = comult_to_slot(&hctx, &lifted_comult, &e, 1);
        let mut rhs = TensorElement::zero(3);
        for (w, c) in e.terms() {
            let expanded = match w[0].letters.as_slice() {
                [] => TensorElement::one(2, mode),
                [g] => {
                    let crate::engine::GenKind::E { i: r, j: s, x: y } =
                        hybrid.table.info(*g).kind
                    else {
                        unreachable!("concrete slot holds matrix units")
                    };
                    act.eta(y, r, s)
                }
                _ => unreachable!("concrete words collapse to length <= 1"),
            };
            for (ew, ec) in expanded.terms() {
                let word = vec![ew[0].clone(), ew[1].clone(), w[1].clone()];
                rhs.accumulate(word, c.mul(ec));
            }
        }
        let id = format!("action_comodule[{}]", ulabel((x, i, j)));
        report.checks.push(if normal_order(&hctx, &lhs) == normal_order(&hctx, &rhs) {
            CheckResult::passed(id)
        } else {
            CheckResult::violated(id, "comodule law fails as a formal sum")
        });
    }

    // Functional preservation: (φ ⊠ id)η(E_{ij,x}) = φ(E_{ij,x})·1,
    // which must reduce to diagonal-sum relation instances.
    for &(x, i, j) in &units {
        let mut elem = TensorElement::zero(1);
        for y in 0..spec.num_blocks() {
            let n = spec.block_size(y);
            let weight = match target.functional_choice() {
                FunctionalChoice::NormalizedTrace => {
                    Scalar::from_rational(Rat::new(1.into(), (n as i64).into()), mode)
                }
                FunctionalChoice::BlockDelta => Scalar::one(mode),
            };
            for r in 0..n {
                elem.accumulate(vec![Word::gen(p.ugen(y, x, r, r, i, j))], weight.clone());
            }
        }
        if i == j {
            let phi = match target.functional_choice() {
                FunctionalChoice::NormalizedTrace => Scalar::from_rational(
                    Rat::new(1.into(), (spec.block_size(x) as i64).into()),
                    mode,
                ),
                FunctionalChoice::BlockDelta => Scalar::one(mode),
            };
            elem.accumulate(vec![Word::identity()], phi.neg());
        }
        let id = format!("action_trace[{}]", ulabel((x, i, j)));
        let mut check = certified_check(&setup, id, &elem, cap);
        if check.status == CheckStatus::Certified {
            let only_sum_upper = check
                .certificate
                .as_ref()
                .map(|cert| {
                    cert.terms
                        .iter()
                        .all(|t| p.relation_meta()[t.rel].family == RelationFamily::SumUpper)
                })
                .unwrap_or(true);
            if only_sum_upper {
                check.note = Some("reduces to diagonal upper-sum relations".to_string());
            } else {
                check.status = CheckStatus::Violated;
                check.note =
                    Some("certificate uses relations outside the upper-sum family".to_string());
            }
        }
        report.checks.push(check);
    }

    // Equivariance of η: every term of η(E_{ij,x}) is homogeneous of
    // degree deg E_{ij,x}.
    for &(x, i, j) in &units {
        let e = act.eta(x, i, j);
        let want = spec.degree(x, i) - spec.degree(x, j);
        let ok = e.terms().all(|(w, _)| {
            w.iter().map(|part| word_degree(&hctx, part)).sum::<i64>() == want
        });
        let id = format!("action_equivariant[{}]", ulabel((x, i, j)));
        report.checks.push(if ok {
            CheckResult::passed(id)
        } else {
            CheckResult::violated(id, "action image is not homogeneous of the unit degree")
        });
    }

    report.elapsed = start.elapsed();
    Ok(report)
}

/// Collect a hybrid element by its concrete slot-0 word and certify each
/// presentation-side residue to zero.
pub(crate) fn certify_residues(
    setup: &CertifySetup,
    hybrid: &Hybrid,
    base_id: &str,
    diff: &TensorElement,
    cap: u32,
) -> Vec<CheckResult> {
    let normal = normal_order(&hybrid.ctx(), diff);
    if normal.is_zero() {
        return vec![CheckResult::passed(format!("{base_id}@all"))];
    }
    normal
        .factor_out_slot(0)
        .into_iter()
        .map(|(eword, residue)| {
            let mut label = String::new();
            if eword.zpow != 0 {
                label.push_str(&format!("v^{}.", eword.zpow));
            }
            let names: Vec<String> = eword
                .letters
                .iter()
                .map(|&g| hybrid.table.info(g).label.clone())
                .collect();
            if names.is_empty() {
                label.push('1');
            } else {
                label.push_str(&names.join("."));
            }
            let lowered = hybrid.lower(&residue);
            certified_check(setup, format!("{base_id}@{label}"), &lowered, cap)
        })
        .collect()
}
