//! Generator substitutions between presentations (change of generators,
//! e.g. w^{ij}_{kl} = z^{d_j - d_i}·q^{ij}_{kl} between the bosonisation
//! and the crossed-product symmetry presentation).

use std::collections::BTreeMap;

use crate::engine::{
    normal_order, tensor_multiply, word_degree, GenId, TensorElement, TensorMode, Word,
};
use crate::error::Error;
use crate::scalars::Scalar;

use super::{canonical_scale, element_key, Presentation};

/// Images of every source generator as single-slot elements over the
/// target presentation's alphabet. Powers of the distinguished unitary
/// pass through unchanged (z ↦ z, whatever the target calls it).
pub struct SubstitutionRule {
    images: BTreeMap<GenId, TensorElement>,
}

impl SubstitutionRule {
    pub fn new(images: BTreeMap<GenId, TensorElement>) -> SubstitutionRule {
        SubstitutionRule { images }
    }

    pub fn identity(p: &Presentation) -> SubstitutionRule {
        let images = p
            .table()
            .iter()
            .map(|(g, _)| {
                (
                    g,
                    TensorElement::monomial(vec![Word::gen(g)], Scalar::one(p.mode())),
                )
            })
            .collect();
        SubstitutionRule { images }
    }

    pub fn image(&self, g: GenId) -> Option<&TensorElement> {
        self.images.get(&g)
    }

    /// Substitute into a single word of the source, producing an element
    /// over the target alphabet.
    pub fn apply_word(&self, target: &Presentation, w: &Word) -> Result<TensorElement, Error> {
        let ctx = target.ctx();
        let mut acc = TensorElement::monomial(vec![Word::zpower(w.zpow)], Scalar::one(target.mode()));
        for &g in &w.letters {
            let img = self
                .images
                .get(&g)
                .ok_or_else(|| Error::IncompleteSubstitution {
                    generator: format!("{g}"),
                })?;
            acc = tensor_multiply(&ctx, &acc, img)?;
        }
        Ok(acc)
    }

    /// Substitute slotwise into a tensor element (the homomorphism acts
    /// on each slot; no crossing phases arise).
    pub fn apply_element(
        &self,
        target: &Presentation,
        e: &TensorElement,
    ) -> Result<TensorElement, Error> {
        let mut out = TensorElement::zero(e.slots());
        for (w, c) in e.terms() {
            let mut parts: Vec<TensorElement> = Vec::with_capacity(w.len());
            for part in w {
                parts.push(self.apply_word(target, part)?);
            }
            // Splice the slotwise expansions into one wide element.
            let mut words: Vec<(Vec<Word>, Scalar)> = vec![(Vec::new(), c.clone())];
            for part in parts {
                let mut next = Vec::new();
                for (prefix, coeff) in &words {
                    for (pw, pc) in part.terms() {
                        let mut word = prefix.clone();
                        word.push(pw[0].clone());
                        next.push((word, coeff.mul(pc)));
                    }
                }
                words = next;
            }
            for (word, coeff) in words {
                out.accumulate(word, coeff);
            }
        }
        Ok(normal_order(&target.ctx(), &out))
    }

    /// Check degree consistency of every image: in braided mode the
    /// circle-action degree must match the source generator's; in
    /// ordinary mode the commutation exponent with the distinguished
    /// unitary plays that role.
    pub fn check_degrees(&self, source: &Presentation, target: &Presentation) -> Result<(), Error> {
        let tctx = target.ctx();
        for (g, info) in source.table().iter() {
            let img = self
                .images
                .get(&g)
                .ok_or_else(|| Error::IncompleteSubstitution {
                    generator: info.label.clone(),
                })?;
            for (w, _) in img.terms() {
                let ok = match source.tensor_mode() {
                    TensorMode::Braided => word_degree(&tctx, &w[0]) == info.degree,
                    TensorMode::Ordinary => {
                        let zc: i64 = w[0]
                            .letters
                            .iter()
                            .map(|&h| target.table().info(h).zcomm)
                            .sum();
                        zc == info.zcomm
                    }
                };
                if !ok {
                    return Err(Error::InconsistentSubstitution {
                        generator: info.label.clone(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Rewrite the relations of `p` through the rule, producing a
/// presentation over the target's alphabet (the target's own
/// comultiplication assignment is kept; comultiplication intertwining
/// is a verifier concern).
pub fn substitute_generators(
    p: &Presentation,
    target: &Presentation,
    rule: &SubstitutionRule,
) -> Result<Presentation, Error> {
    rule.check_degrees(p, target)?;
    let mut raw = Vec::new();
    for (meta, element) in p.relation_meta().iter().zip(p.relation_elements()) {
        let image = rule.apply_element(target, element)?;
        raw.push((meta.labels[0].clone(), meta.family, image));
    }
    let comult = target
        .table()
        .iter()
        .map(|(g, _)| (g, target.comult_assignment(g).clone()))
        .collect();
    Ok(Presentation::assemble(
        target.spec().clone(),
        target.mode(),
        target.class(),
        target.tensor_mode(),
        target.table().clone(),
        raw,
        comult,
    ))
}

/// Canonical key of a relation modulo an overall power of the
/// distinguished unitary: shift so the minimum collected power is zero,
/// then scale the least word to coefficient one.
pub fn relation_key_mod_unitary(e: &TensorElement) -> String {
    let min_z = e.terms().map(|(w, _)| w[0].zpow).min().unwrap_or(0);
    let mut shifted = TensorElement::zero(e.slots());
    for (w, c) in e.terms() {
        let mut word = w.clone();
        word[0] = Word {
            zpow: w[0].zpow - min_z,
            letters: w[0].letters.clone(),
        };
        shifted.accumulate(word, c.clone());
    }
    element_key(&canonical_scale(&shifted))
}

/// All relation keys of a presentation modulo unitary powers, sorted.
pub fn relation_keys(p: &Presentation) -> std::collections::BTreeSet<String> {
    p.relation_elements()
        .iter()
        .map(relation_key_mod_unitary)
        .collect()
}
