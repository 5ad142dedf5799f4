//! Hybrid contexts: one concrete slot (matrix-unit letters, possibly
//! with collected powers of the crossed-product unitary) next to slots
//! over a presented algebra. The concrete letters collapse
//! multiplicatively inside their slot; presentation letters keep their
//! relation-driven behaviour. Generator ids of the presentation are
//! shifted past the matrix-unit block.

use std::collections::BTreeMap;

use crate::engine::{
    tensor_multiply, EngineCtx, GenId, GenInfo, GenKind, GeneratorTable, TensorElement,
    TensorMode, UnitaryInfo, Word,
};
use crate::graded::GradingSpec;
use crate::presentation::Presentation;
use crate::scalars::{Scalar, ZetaMode};

pub(crate) struct Hybrid {
    pub table: GeneratorTable,
    pub offset: usize,
    pub tensor: TensorMode,
    pub mode: ZetaMode,
    unit_offsets: Vec<usize>,
    sizes: Vec<usize>,
}

impl Hybrid {
    /// Build the combined table: matrix units of `spec` first, then the
    /// presentation's generators. `unitary` installs the crossed-product
    /// unitary (its conjugation exponent on E_{ij,x} is the unit's
    /// degree d_i - d_j).
    pub(crate) fn new(
        spec: &GradingSpec,
        p: &Presentation,
        tensor: TensorMode,
        unitary: Option<UnitaryInfo>,
    ) -> Hybrid {
        let m = spec.num_blocks();
        let sizes: Vec<usize> = spec.block_sizes().to_vec();
        let mut unit_offsets = vec![0usize; m];
        let mut acc = 0;
        for x in 0..m {
            unit_offsets[x] = acc;
            acc += sizes[x] * sizes[x];
        }
        let e_id = |x: usize, i: usize, j: usize| unit_offsets[x] + i * sizes[x] + j;
        let mut gens: Vec<GenInfo> = Vec::new();
        for x in 0..m {
            let n = sizes[x];
            for i in 0..n {
                for j in 0..n {
                    let degree = spec.degree(x, i) - spec.degree(x, j);
                    let label = if m == 1 {
                        format!("E[{},{}]", i + 1, j + 1)
                    } else {
                        format!("E[{},{}|{}]", i + 1, j + 1, x + 1)
                    };
                    gens.push(GenInfo {
                        kind: GenKind::E { i, j, x },
                        degree,
                        zcomm: degree,
                        star_gen: e_id(x, j, i),
                        star_exp: 0,
                        label,
                    });
                }
            }
        }
        let offset = gens.len();
        for (_, info) in p.table().iter() {
            let mut shifted = info.clone();
            shifted.star_gen += offset;
            gens.push(shifted);
        }
        Hybrid {
            table: GeneratorTable::new(gens, unitary),
            offset,
            tensor,
            mode: p.mode(),
            unit_offsets,
            sizes,
        }
    }

    pub(crate) fn ctx(&self) -> EngineCtx<'_> {
        EngineCtx {
            mode: self.mode,
            tensor: self.tensor,
            table: &self.table,
        }
    }

    pub(crate) fn e_id(&self, x: usize, i: usize, j: usize) -> GenId {
        self.unit_offsets[x] + i * self.sizes[x] + j
    }

    /// Lift a presentation element: shift every letter past the matrix
    /// units.
    pub(crate) fn lift(&self, e: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero(e.slots());
        for (w, c) in e.terms() {
            let word: Vec<Word> = w
                .iter()
                .map(|part| Word {
                    zpow: part.zpow,
                    letters: part.letters.iter().map(|&g| g + self.offset).collect(),
                })
                .collect();
            out.accumulate(word, c.clone());
        }
        out
    }

    /// The presentation's comultiplication assignment, lifted to hybrid
    /// ids.
    pub(crate) fn lifted_comult(&self, p: &Presentation) -> BTreeMap<GenId, TensorElement> {
        p.table()
            .iter()
            .map(|(g, _)| (g + self.offset, self.lift(p.comult_assignment(g))))
            .collect()
    }

    /// Project a hybrid element whose letters are all presentation
    /// generators back down to presentation ids.
    pub(crate) fn lower(&self, e: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero(e.slots());
        for (w, c) in e.terms() {
            let word: Vec<Word> = w
                .iter()
                .map(|part| Word {
                    zpow: part.zpow,
                    letters: part
                        .letters
                        .iter()
                        .map(|&g| {
                            assert!(g >= self.offset, "matrix-unit letter in algebra residue");
                            g - self.offset
                        })
                        .collect(),
                })
                .collect();
            out.accumulate(word, c.clone());
        }
        out
    }
}

/// Apply a comultiplication assignment to one slot of an element,
/// splicing the two new slots in place (coproducts act slotwise, so no
/// crossing phases arise from the splice).
pub(crate) fn comult_to_slot(
    ctx: &EngineCtx,
    comult: &BTreeMap<GenId, TensorElement>,
    e: &TensorElement,
    slot: usize,
) -> TensorElement {
    let mut out = TensorElement::zero(e.slots() + 1);
    for (w, c) in e.terms() {
        let part = &w[slot];
        let mut acc = TensorElement::monomial(
            vec![Word::zpower(part.zpow), Word::zpower(part.zpow)],
            Scalar::one(ctx.mode),
        );
        for g in &part.letters {
            acc = tensor_multiply(ctx, &acc, &comult[g]).expect("two slots");
        }
        for (dw, dc) in acc.terms() {
            let mut word = Vec::with_capacity(w.len() + 1);
            word.extend_from_slice(&w[..slot]);
            word.push(dw[0].clone());
            word.push(dw[1].clone());
            word.extend_from_slice(&w[slot + 1..]);
            out.accumulate(word, c.mul(dc));
        }
    }
    out
}
