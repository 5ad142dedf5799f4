//! Symbolic presentations of the braided quantum automorphism algebras,
//! their bosonisations and the crossed-product symmetry presentation:
//! graded generators, relation families, and comultiplication
//! assignments ready for the reduction engine.

mod dump;
mod schema;
mod subst;

pub use dump::parse_relation_line;
pub use schema::{gen_bosonisation, gen_braided_aut, gen_qiso_crossed, wang_zero_phase_relations};
pub use subst::{relation_key_mod_unitary, relation_keys, substitute_generators, SubstitutionRule};

use std::collections::BTreeMap;

use crate::engine::{
    EngineCtx, GenId, GenKind, GeneratorTable, TensorElement, TensorMode, Word,
};
use crate::engine::matrix::MatrixOverAlgebra;
use crate::graded::GradingSpec;
use crate::scalars::{Scalar, ZetaMode};

/// Which relation family an ideal generator belongs to. The two product
/// families collapse a chained index pair (upper or lower); the two sum
/// families say the diagonal sums are scalar.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationFamily {
    ProdUpper,
    ProdLower,
    SumLower,
    SumUpper,
    /// Extra relations injected through the DSL.
    Extra,
}

impl RelationFamily {
    pub fn stem(self) -> &'static str {
        match self {
            RelationFamily::ProdUpper => "prod_upper",
            RelationFamily::ProdLower => "prod_lower",
            RelationFamily::SumLower => "sum_lower",
            RelationFamily::SumUpper => "sum_upper",
            RelationFamily::Extra => "extra",
        }
    }
}

#[derive(Clone, Debug)]
pub struct RelationMeta {
    /// Every index instance that produced this (deduplicated) element.
    pub labels: Vec<String>,
    pub family: RelationFamily,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresentationClass {
    /// Braided automorphism presentation (braided tensor squares).
    BraidedAut,
    /// Bosonisation: extra unitary z, ordinary tensor squares.
    Bosonisation,
    /// Crossed-product symmetry presentation: unitary u and phase-free
    /// relations on q generators, ordinary tensor squares.
    CrossedSymmetry,
}

/// A finitely presented graded *-algebra with comultiplication data.
pub struct Presentation {
    spec: GradingSpec,
    mode: ZetaMode,
    class: PresentationClass,
    tensor_mode: TensorMode,
    table: GeneratorTable,
    relation_elements: Vec<TensorElement>,
    relation_meta: Vec<RelationMeta>,
    comult: BTreeMap<GenId, TensorElement>,
}

impl Presentation {
    pub(crate) fn assemble(
        spec: GradingSpec,
        mode: ZetaMode,
        class: PresentationClass,
        tensor_mode: TensorMode,
        table: GeneratorTable,
        raw_relations: Vec<(String, RelationFamily, TensorElement)>,
        comult: BTreeMap<GenId, TensorElement>,
    ) -> Presentation {
        let mut p = Presentation {
            spec,
            mode,
            class,
            tensor_mode,
            table,
            relation_elements: Vec::new(),
            relation_meta: Vec::new(),
            comult,
        };
        let mut dedup: std::collections::HashMap<String, usize> = std::collections::HashMap::new();
        for (label, family, element) in raw_relations {
            let canon = canonical_scale(&element);
            if canon.is_zero() {
                continue;
            }
            let key = element_key(&canon);
            match dedup.get(&key) {
                Some(&idx) => p.relation_meta[idx].labels.push(label),
                None => {
                    dedup.insert(key, p.relation_elements.len());
                    p.relation_elements.push(canon);
                    p.relation_meta.push(RelationMeta {
                        labels: vec![label],
                        family,
                    });
                }
            }
        }
        p
    }

    pub fn spec(&self) -> &GradingSpec {
        &self.spec
    }

    pub fn mode(&self) -> ZetaMode {
        self.mode
    }

    pub fn class(&self) -> PresentationClass {
        self.class
    }

    pub fn tensor_mode(&self) -> TensorMode {
        self.tensor_mode
    }

    pub fn table(&self) -> &GeneratorTable {
        &self.table
    }

    pub fn ctx(&self) -> EngineCtx<'_> {
        EngineCtx {
            mode: self.mode,
            tensor: self.tensor_mode,
            table: &self.table,
        }
    }

    pub fn relation_elements(&self) -> &[TensorElement] {
        &self.relation_elements
    }

    pub fn relation_meta(&self) -> &[RelationMeta] {
        &self.relation_meta
    }

    pub fn num_relations(&self) -> usize {
        self.relation_elements.len()
    }

    pub fn relation_by_label(&self, label: &str) -> Option<usize> {
        self.relation_meta
            .iter()
            .position(|m| m.labels.iter().any(|l| l == label))
    }

    pub fn comult_assignment(&self, g: GenId) -> &TensorElement {
        &self.comult[&g]
    }

    /// Generator id for u^{ij}_{kl,xy} (0-based indices).
    pub fn ugen(&self, x: usize, y: usize, i: usize, j: usize, k: usize, l: usize) -> GenId {
        let want = GenKind::U { i, j, k, l, x, y };
        self.table
            .iter()
            .find(|(_, info)| info.kind == want)
            .map(|(g, _)| g)
            .expect("generator exists")
    }

    /// Apply the comultiplication assignment to a single-slot element.
    pub fn comult_apply(&self, e: &TensorElement) -> TensorElement {
        let ctx = self.ctx();
        let mut out = TensorElement::zero(2);
        for (w, c) in e.terms() {
            debug_assert_eq!(w.len(), 1);
            let part = &w[0];
            let mut acc = TensorElement::monomial(
                vec![Word::zpower(part.zpow), Word::zpower(part.zpow)],
                c.clone(),
            );
            for &g in &part.letters {
                acc = crate::engine::tensor_multiply(&ctx, &acc, &self.comult[&g])
                    .expect("two slots");
            }
            out = out.add(&acc).expect("two slots");
        }
        out
    }

    /// Apply the comultiplication to one slot of a wider element
    /// (coproducts act slotwise, so no crossing phases arise here).
    pub fn comult_apply_to_slot(&self, e: &TensorElement, slot: usize) -> TensorElement {
        let mut out = TensorElement::zero(e.slots() + 1);
        for (w, c) in e.terms() {
            let single = TensorElement::monomial(vec![w[slot].clone()], Scalar::one(self.mode));
            let expanded = self.comult_apply(&single);
            for (dw, dc) in expanded.terms() {
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

    /// The fundamental matrix u = Σ E_{ik}⊗E_{jl}(⊗E_{xy}) ⊗ u^{ij}_{kl,xy}:
    /// rows (x; i, j), columns (y; k, l), entries single-slot monomials.
    pub fn fundamental_matrix(&self) -> MatrixOverAlgebra {
        let rows = self.matrix_index();
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for &row in &rows {
            for &col in &rows {
                entries.push(self.fundamental_entry(row, col));
            }
        }
        MatrixOverAlgebra::from_entries(dim, entries)
    }

    fn fundamental_entry(&self, row: (usize, usize, usize), col: (usize, usize, usize)) -> TensorElement {
        let (x, i, j) = row;
        let (y, k, l) = col;
        let g = self.ugen(x, y, i, j, k, l);
        TensorElement::monomial(vec![Word::gen(g)], Scalar::one(self.mode))
    }

    /// Row/column index set of the fundamental matrix: (block, i, j).
    pub fn matrix_index(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.spec.num_blocks() {
            let n = self.spec.block_size(x);
            for i in 0..n {
                for j in 0..n {
                    out.push((x, i, j));
                }
            }
        }
        out
    }

    pub fn matrix_index_label(&self, idx: (usize, usize, usize)) -> String {
        if self.spec.is_single_block() {
            format!("({},{})", idx.1 + 1, idx.2 + 1)
        } else {
            format!("({},{}|{})", idx.1 + 1, idx.2 + 1, idx.0 + 1)
        }
    }

    /// Serialize to the plain-text dump format.
    pub fn dump(&self) -> String {
        dump::dump_presentation(self)
    }
}

/// Scale so the least word carries coefficient 1 (relation storage
/// canonical form).
pub fn canonical_scale(e: &TensorElement) -> TensorElement {
    match e.terms().next() {
        None => e.clone(),
        Some((_, c)) => e.scale(&c.inv()),
    }
}

/// Stable dedup key for a canonical element.
pub(crate) fn element_key(e: &TensorElement) -> String {
    let mut parts = Vec::new();
    for (w, c) in e.terms() {
        let word: Vec<String> = w
            .iter()
            .map(|part| {
                let ls: Vec<String> = part.letters.iter().map(|g| g.to_string()).collect();
                format!("{}:{}", part.zpow, ls.join("."))
            })
            .collect();
        parts.push(format!("{}*{}", c, word.join("|")));
    }
    parts.join(" + ")
}
