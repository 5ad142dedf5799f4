//! Exact arithmetic in (braided) tensor powers of presented *-algebras.
//!
//! Words are z-normal ordered: a single collected integer power of the
//! distinguished unitary, followed by star-free generator letters. Stars
//! are eliminated at admission through each generator's star rule (the
//! relation family orients u* as a phase times an unstarred generator),
//! and powers of the distinguished unitary move left through the
//! commutation exponents stored in the generator table. In braided mode,
//! multiplying two tensor words inserts the crossing phase of the
//! commutation law ζ^{-deg·deg} whenever a lower slot passes a higher
//! one; concrete matrix-unit letters collapse pairwise inside a slot.

pub mod certify;
pub mod matrix;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::Error;
use crate::scalars::{Scalar, ZetaMode};

/// Index into a [`GeneratorTable`].
pub type GenId = usize;

/// What a generator letter denotes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenKind {
    /// u^{ij}_{kl,xy}: braided automorphism generator (0-based indices).
    U {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        x: usize,
        y: usize,
    },
    /// q^{ij}_{kl}: quantum-symmetry generator of the crossed-product
    /// filtration presentation (single block).
    Q {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
    },
    /// E_{ij,x}: concrete matrix unit (collapses multiplicatively).
    E { i: usize, j: usize, x: usize },
}

impl GenKind {
    pub fn is_concrete(&self) -> bool {
        matches!(self, GenKind::E { .. })
    }
}

#[derive(Clone, Debug)]
pub struct GenInfo {
    pub kind: GenKind,
    /// Degree for the circle action: α_z(g) = z^degree · g.
    pub degree: i64,
    /// z g z* = ζ^zcomm · g for the distinguished unitary z.
    pub zcomm: i64,
    /// g* = ζ^star_exp · gens[star_gen].
    pub star_gen: GenId,
    pub star_exp: i64,
    pub label: String,
}

/// Distinguished unitary of a presentation (z of the bosonisation, v of
/// the crossed product, u of the filtration symmetry presentation).
#[derive(Clone, Debug)]
pub struct UnitaryInfo {
    pub label: String,
    /// Degree of the unitary itself under the circle action.
    pub degree: i64,
}

#[derive(Clone, Debug, Default)]
pub struct GeneratorTable {
    gens: Vec<GenInfo>,
    unitary: Option<UnitaryInfo>,
}

impl GeneratorTable {
    pub fn new(gens: Vec<GenInfo>, unitary: Option<UnitaryInfo>) -> GeneratorTable {
        GeneratorTable { gens, unitary }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn info(&self, g: GenId) -> &GenInfo {
        &self.gens[g]
    }

    pub fn iter(&self) -> impl Iterator<Item = (GenId, &GenInfo)> {
        self.gens.iter().enumerate()
    }

    pub fn unitary(&self) -> Option<&UnitaryInfo> {
        self.unitary.as_ref()
    }

    pub fn find_label(&self, label: &str) -> Option<GenId> {
        self.gens.iter().position(|g| g.label == label)
    }

    pub fn unitary_degree(&self) -> i64 {
        self.unitary.as_ref().map_or(0, |u| u.degree)
    }
}

/// How tensor slots interact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorMode {
    /// Slots commute up to the braided crossing phase.
    Braided,
    /// Ordinary tensor product: slots commute exactly.
    Ordinary,
}

/// Everything the engine needs to normal order and multiply.
#[derive(Clone, Copy)]
pub struct EngineCtx<'a> {
    pub mode: ZetaMode,
    pub tensor: TensorMode,
    pub table: &'a GeneratorTable,
}

/// A z-normal-ordered word: z^zpow · letters (star-free).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    pub zpow: i64,
    pub letters: Vec<GenId>,
}

impl Word {
    pub fn identity() -> Word {
        Word {
            zpow: 0,
            letters: vec![],
        }
    }

    pub fn gen(g: GenId) -> Word {
        Word {
            zpow: 0,
            letters: vec![g],
        }
    }

    pub fn zpower(k: i64) -> Word {
        Word {
            zpow: k,
            letters: vec![],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.zpow == 0 && self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        // Graded lexicographic on letters, then the collected z power.
        (self.letters.len(), &self.letters, self.zpow).cmp(&(
            other.letters.len(),
            &other.letters,
            other.zpow,
        ))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// One monomial of a k-fold tensor power: one word per slot.
pub type TensorWord = Vec<Word>;

/// A raw (not yet normal-ordered) letter; admission eliminates stars
/// and collects unitary powers.
#[derive(Clone, Copy, Debug)]
pub enum RawLetter {
    Z(i64),
    Gen { id: GenId, star: bool },
}

/// Finite linear combination of tensor words with scalar coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    slots: usize,
    terms: BTreeMap<TensorWord, Scalar>,
}

impl TensorElement {
    pub fn zero(slots: usize) -> TensorElement {
        TensorElement {
            slots,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(word: TensorWord, coeff: Scalar) -> TensorElement {
        let mut e = TensorElement::zero(word.len());
        e.accumulate(word, coeff);
        e
    }

    pub fn one(slots: usize, mode: ZetaMode) -> TensorElement {
        TensorElement::monomial(vec![Word::identity(); slots], Scalar::one(mode))
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorWord, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn accumulate(&mut self, word: TensorWord, coeff: Scalar) {
        assert_eq!(word.len(), self.slots, "slot count mismatch");
        if coeff.is_zero() {
            return;
        }
        match self.terms.remove(&word) {
            None => {
                self.terms.insert(word, coeff);
            }
            Some(old) => {
                let sum = old.add(&coeff);
                if !sum.is_zero() {
                    self.terms.insert(word, sum);
                }
            }
        }
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement, Error> {
        if self.slots != other.slots {
            return Err(Error::SlotMismatch {
                left: self.slots,
                right: other.slots,
            });
        }
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.accumulate(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TensorElement) -> Result<TensorElement, Error> {
        self.add(&other.scale_int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        if c.is_zero() {
            return TensorElement::zero(self.slots);
        }
        TensorElement {
            slots: self.slots,
            terms: self
                .terms
                .iter()
                .map(|(w, v)| (w.clone(), c.mul(v)))
                .collect(),
        }
    }

    fn scale_int(&self, k: i64) -> TensorElement {
        TensorElement {
            slots: self.slots,
            terms: self
                .terms
                .iter()
                .map(|(w, v)| (w.clone(), v.mul(&Scalar::from_int(k, v.mode()))))
                .collect(),
        }
    }

    /// Largest total letter count over the monomials.
    pub fn max_letters(&self) -> usize {
        self.terms
            .keys()
            .map(|w| w.iter().map(Word::len).sum())
            .max()
            .unwrap_or(0)
    }

    /// Largest per-slot letter count over the monomials (the quantity
    /// the certification degree cap bounds).
    pub fn max_slot_letters(&self) -> usize {
        self.terms
            .keys()
            .flat_map(|w| w.iter().map(Word::len))
            .max()
            .unwrap_or(0)
    }

    /// Group terms by the word in one slot, dropping that slot.
    pub fn factor_out_slot(&self, slot: usize) -> BTreeMap<Word, TensorElement> {
        assert!(slot < self.slots);
        let mut out: BTreeMap<Word, TensorElement> = BTreeMap::new();
        for (w, c) in &self.terms {
            let key = w[slot].clone();
            let mut rest = w.clone();
            rest.remove(slot);
            out.entry(key)
                .or_insert_with(|| TensorElement::zero(self.slots - 1))
                .accumulate(rest, c.clone());
        }
        out.retain(|_, e| !e.is_zero());
        out
    }

    /// Place this element's slots into a wider tensor power at the given
    /// slot offset, identity elsewhere.
    pub fn embed(&self, total_slots: usize, offset: usize) -> TensorElement {
        assert!(offset + self.slots <= total_slots);
        let mut out = TensorElement::zero(total_slots);
        for (w, c) in &self.terms {
            let mut word = vec![Word::identity(); total_slots];
            for (k, part) in w.iter().enumerate() {
                word[offset + k] = part.clone();
            }
            out.accumulate(word, c.clone());
        }
        out
    }
}

/// Degree of a word under the circle action.
pub fn word_degree(ctx: &EngineCtx, w: &Word) -> i64 {
    w.zpow * ctx.table.unitary_degree()
        + w.letters
            .iter()
            .map(|&g| ctx.table.info(g).degree)
            .sum::<i64>()
}

/// Sum of z-commutation exponents over the letters.
fn word_zcomm(ctx: &EngineCtx, letters: &[GenId]) -> i64 {
    letters.iter().map(|&g| ctx.table.info(g).zcomm).sum()
}

/// Admit a raw word: eliminate stars, collect the unitary power on the
/// left, collapse concrete letters. Returns the accumulated phase
/// exponent and the normal word, or None when a concrete collapse kills
/// the word.
pub fn admit_word(ctx: &EngineCtx, raw: &[RawLetter]) -> Option<(i64, Word)> {
    let mut exp: i64 = 0;
    let mut zpow: i64 = 0;
    let mut letters: Vec<GenId> = Vec::new();
    for letter in raw {
        match *letter {
            RawLetter::Z(k) => {
                // Move z^k left past the letters accumulated so far.
                exp -= k * word_zcomm(ctx, &letters);
                zpow += k;
            }
            RawLetter::Gen { id, star } => {
                if star {
                    let info = ctx.table.info(id);
                    exp += info.star_exp;
                    letters.push(info.star_gen);
                } else {
                    letters.push(id);
                }
            }
        }
    }
    let letters = collapse_concrete(ctx, letters)?;
    Some((exp, Word { zpow, letters }))
}

/// Collapse adjacent concrete matrix-unit letters:
/// E_{ij,x}·E_{kl,y} = δ_{j,k}δ_{x,y}·E_{il,x}.
fn collapse_concrete(ctx: &EngineCtx, letters: Vec<GenId>) -> Option<Vec<GenId>> {
    let any_concrete = letters
        .iter()
        .any(|&g| ctx.table.info(g).kind.is_concrete());
    if !any_concrete {
        return Some(letters);
    }
    let mut out: Vec<GenId> = Vec::with_capacity(letters.len());
    for g in letters {
        let kind = ctx.table.info(g).kind;
        if let (Some(&prev), GenKind::E { i: k, j: l, x: y }) = (out.last(), kind) {
            if let GenKind::E { i, j, x } = ctx.table.info(prev).kind {
                if j != k || x != y {
                    return None;
                }
                out.pop();
                let merged = find_unit(ctx, i, l, x).expect("matrix unit closed under product");
                out.push(merged);
                continue;
            }
        }
        out.push(g);
    }
    Some(out)
}

fn find_unit(ctx: &EngineCtx, i: usize, j: usize, x: usize) -> Option<GenId> {
    ctx.table
        .iter()
        .find(|(_, info)| info.kind == GenKind::E { i, j, x })
        .map(|(g, _)| g)
}

/// Concatenate two normal words inside one slot.
fn word_mul(ctx: &EngineCtx, a: &Word, b: &Word) -> Option<(i64, Word)> {
    // a = z^p L, b = z^q M:  L z^q = z^q ζ^{-q·zcomm(L)} L.
    let exp = -b.zpow * word_zcomm(ctx, &a.letters);
    let mut letters = a.letters.clone();
    letters.extend_from_slice(&b.letters);
    let letters = collapse_concrete(ctx, letters)?;
    let word = Word {
        zpow: a.zpow + b.zpow,
        letters,
    };
    Some((exp, word))
}

/// Slotwise product of two tensor words with crossing phases.
pub fn tensor_word_mul(
    ctx: &EngineCtx,
    a: &TensorWord,
    b: &TensorWord,
) -> Option<(i64, TensorWord)> {
    debug_assert_eq!(a.len(), b.len());
    let mut exp: i64 = 0;
    if ctx.tensor == TensorMode::Braided && a.len() > 1 {
        // Moving slot-p content of b left past slot-q content of a, p < q,
        // costs ζ^{+deg(b_p)·deg(a_q)} per crossing (the inverse reading
        // of (d₁ ⊠ 1)(1 ⊠ d₂) = ζ^{-deg·deg}(1 ⊠ d₂)(d₁ ⊠ 1)).
        for p in 0..b.len() {
            let degb = word_degree(ctx, &b[p]);
            if degb == 0 {
                continue;
            }
            for q in (p + 1)..a.len() {
                exp += degb * word_degree(ctx, &a[q]);
            }
        }
    }
    let mut out = Vec::with_capacity(a.len());
    for (wa, wb) in a.iter().zip(b) {
        let (e, w) = word_mul(ctx, wa, wb)?;
        exp += e;
        out.push(w);
    }
    Some((exp, out))
}

/// Product of tensor elements; slot counts must agree.
pub fn tensor_multiply(
    ctx: &EngineCtx,
    a: &TensorElement,
    b: &TensorElement,
) -> Result<TensorElement, Error> {
    if a.slots() != b.slots() {
        return Err(Error::SlotMismatch {
            left: a.slots(),
            right: b.slots(),
        });
    }
    let mut out = TensorElement::zero(a.slots());
    for (wa, ca) in a.terms() {
        for (wb, cb) in b.terms() {
            if let Some((exp, word)) = tensor_word_mul(ctx, wa, wb) {
                let coeff = ca.mul(cb).mul(&Scalar::phase(exp, ctx.mode));
                out.accumulate(word, coeff);
            }
        }
    }
    Ok(out)
}

/// Re-admit every word; idempotent by construction. Exposed because raw
/// input (starred letters, interleaved unitary powers) enters through
/// the same path.
pub fn normal_order(ctx: &EngineCtx, e: &TensorElement) -> TensorElement {
    let mut out = TensorElement::zero(e.slots());
    for (w, c) in e.terms() {
        let mut exp = 0;
        let mut word = Vec::with_capacity(w.len());
        let mut dead = false;
        for part in w {
            let mut raw: Vec<RawLetter> = vec![RawLetter::Z(part.zpow)];
            raw.extend(part.letters.iter().map(|&id| RawLetter::Gen { id, star: false }));
            match admit_word(ctx, &raw) {
                Some((e0, w0)) => {
                    exp += e0;
                    word.push(w0);
                }
                None => {
                    dead = true;
                    break;
                }
            }
        }
        if !dead {
            out.accumulate(word, c.mul(&Scalar::phase(exp, ctx.mode)));
        }
    }
    out
}

/// Star (involution) of a tensor element.
pub fn star(ctx: &EngineCtx, e: &TensorElement) -> TensorElement {
    let mut out = TensorElement::zero(e.slots());
    for (w, c) in e.terms() {
        let mut exp: i64 = 0;
        if ctx.tensor == TensorMode::Braided && w.len() > 1 {
            // (j₁(w₁)···j_k(w_k))* reordered back to slot order crosses
            // every pair once: ζ^{Σ_{p<q} deg(w_p)deg(w_q)}.
            for p in 0..w.len() {
                let dp = word_degree(ctx, &w[p]);
                if dp == 0 {
                    continue;
                }
                for q in (p + 1)..w.len() {
                    exp += dp * word_degree(ctx, &w[q]);
                }
            }
        }
        let mut word = Vec::with_capacity(w.len());
        let mut dead = false;
        for part in w {
            let mut raw: Vec<RawLetter> = Vec::with_capacity(part.letters.len() + 1);
            raw.extend(
                part.letters
                    .iter()
                    .rev()
                    .map(|&id| RawLetter::Gen { id, star: true }),
            );
            raw.push(RawLetter::Z(-part.zpow));
            match admit_word(ctx, &raw) {
                Some((e0, w0)) => {
                    exp += e0;
                    word.push(w0);
                }
                None => {
                    dead = true;
                    break;
                }
            }
        }
        if !dead {
            out.accumulate(word, c.star().mul(&Scalar::phase(exp, ctx.mode)));
        }
    }
    out
}

/// Apply the circle action at z = ζ^exp: each homogeneous word picks up
/// phase(exp · degree). No operator object is materialized.
pub fn apply_alpha(ctx: &EngineCtx, e: &TensorElement, exp: i64) -> TensorElement {
    let mut out = TensorElement::zero(e.slots());
    for (w, c) in e.terms() {
        let deg: i64 = w.iter().map(|part| word_degree(ctx, part)).sum();
        out.accumulate(w.clone(), c.mul(&Scalar::phase(exp * deg, ctx.mode)));
    }
    out
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("({c})*{}", fmt_tensor_word_raw(w)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn fmt_tensor_word_raw(w: &TensorWord) -> String {
    let slots: Vec<String> = w
        .iter()
        .map(|part| {
            let mut pieces: Vec<String> = Vec::new();
            if part.zpow != 0 {
                pieces.push(format!("z^{}", part.zpow));
            }
            for &g in &part.letters {
                pieces.push(format!("g{g}"));
            }
            if pieces.is_empty() {
                "1".to_string()
            } else {
                pieces.join(".")
            }
        })
        .collect();
    slots.join(" | ")
}

/// Pretty form of a tensor word using the table's labels.
pub fn fmt_tensor_word(table: &GeneratorTable, w: &TensorWord) -> String {
    let zlabel = table
        .unitary()
        .map(|u| u.label.clone())
        .unwrap_or_else(|| "z".to_string());
    let slots: Vec<String> = w
        .iter()
        .map(|part| {
            let mut pieces: Vec<String> = Vec::new();
            if part.zpow != 0 {
                pieces.push(format!("{zlabel}^{}", part.zpow));
            }
            for &g in &part.letters {
                pieces.push(table.info(g).label.clone());
            }
            if pieces.is_empty() {
                "1".to_string()
            } else {
                pieces.join(".")
            }
        })
        .collect();
    slots.join(" | ")
}
