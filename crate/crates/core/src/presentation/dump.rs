//! Plain-text presentation dump and the relation-line syntax.
//!
//! One relation per line, words as dot-separated symbols, coefficients
//! in canonical form:
//!
//! ```text
//! relation prod_upper[1,2;1,1;2,1] := (1)*u[1,1;1,2].u[1,2;2,1] + (-zeta)*u[1,2;1,1]
//! ```
//!
//! The same word syntax (with an optional trailing `*` for starred
//! symbols and `z^k` factors for the distinguished unitary) is accepted
//! back by [`parse_relation_line`] for user-injected relations.

use crate::engine::{admit_word, RawLetter, TensorElement, TensorMode};
use crate::scalars::{Rat, Scalar};

use super::{Presentation, PresentationClass};

pub(super) fn dump_presentation(p: &Presentation) -> String {
    let mut out = String::new();
    let class = match p.class() {
        PresentationClass::BraidedAut => "braided-automorphism",
        PresentationClass::Bosonisation => "bosonisation",
        PresentationClass::CrossedSymmetry => "crossed-symmetry",
    };
    out.push_str(&format!("class {class}\n"));
    out.push_str(&format!("zeta {}\n", p.mode()));
    out.push_str(&format!("grading {}\n", p.spec()));
    out.push_str(&format!(
        "tensor {}\n",
        match p.tensor_mode() {
            TensorMode::Braided => "braided",
            TensorMode::Ordinary => "ordinary",
        }
    ));
    if let Some(u) = p.table().unitary() {
        out.push_str(&format!("unitary {}\n", u.label));
    }
    for (_, info) in p.table().iter() {
        let star_target = &p.table().info(info.star_gen).label;
        out.push_str(&format!(
            "generator {} degree {} zcomm {} star (zeta^{})*{}\n",
            info.label, info.degree, info.zcomm, info.star_exp, star_target
        ));
    }
    for (meta, element) in p.relation_meta().iter().zip(p.relation_elements()) {
        out.push_str(&format!(
            "relation {} := {}\n",
            meta.labels.join(","),
            fmt_element(p, element)
        ));
    }
    for (g, info) in p.table().iter() {
        out.push_str(&format!(
            "comult {} := {}\n",
            info.label,
            fmt_element(p, p.comult_assignment(g))
        ));
    }
    out
}

/// Render an element in the dump syntax (slots separated by " (x) ").
pub fn fmt_element(p: &Presentation, e: &TensorElement) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let zlabel = p
        .table()
        .unitary()
        .map(|u| u.label.clone())
        .unwrap_or_else(|| "z".to_string());
    let mut parts = Vec::new();
    for (w, c) in e.terms() {
        let slots: Vec<String> = w
            .iter()
            .map(|part| {
                let mut pieces = Vec::new();
                if part.zpow != 0 {
                    pieces.push(format!("{zlabel}^{}", part.zpow));
                }
                for &g in &part.letters {
                    pieces.push(p.table().info(g).label.clone());
                }
                if pieces.is_empty() {
                    "1".to_string()
                } else {
                    pieces.join(".")
                }
            })
            .collect();
        parts.push(format!("({c})*{}", slots.join(" (x) ")));
    }
    parts.join(" + ")
}

/// Parse one relation in the dump syntax into a single-slot element over
/// the presentation's alphabet. Coefficients may be signed rationals,
/// optionally times `zeta^k`.
pub fn parse_relation_line(p: &Presentation, line: &str) -> Result<TensorElement, String> {
    let ctx = p.ctx();
    let mut out = TensorElement::zero(1);
    for term in split_terms(line) {
        let term = term.trim();
        if term.is_empty() {
            return Err("empty term".to_string());
        }
        let (coeff, word_text) = match term.strip_prefix('(') {
            Some(rest) => {
                let close = rest
                    .find(')')
                    .ok_or_else(|| "unclosed coefficient".to_string())?;
                let scalar = parse_scalar(&rest[..close], p)?;
                let tail = rest[close + 1..].trim();
                let tail = tail
                    .strip_prefix('*')
                    .ok_or_else(|| "expected '*' after coefficient".to_string())?;
                (scalar, tail.trim())
            }
            None => (Scalar::one(p.mode()), term),
        };
        let mut raw: Vec<RawLetter> = Vec::new();
        if word_text != "1" {
            let zlabel = p
                .table()
                .unitary()
                .map(|u| u.label.clone())
                .unwrap_or_else(|| "z".to_string());
            for sym in word_text.split('.') {
                let sym = sym.trim();
                if let Some(power) = sym.strip_prefix(&format!("{zlabel}^")) {
                    let k: i64 = power
                        .parse()
                        .map_err(|_| format!("bad unitary power: {sym}"))?;
                    raw.push(RawLetter::Z(k));
                    continue;
                }
                if sym == zlabel {
                    raw.push(RawLetter::Z(1));
                    continue;
                }
                let (name, star) = match sym.strip_suffix('*') {
                    Some(base) => (base, true),
                    None => (sym, false),
                };
                let id = p
                    .table()
                    .find_label(name)
                    .ok_or_else(|| format!("unknown generator: {name}"))?;
                raw.push(RawLetter::Gen { id, star });
            }
        }
        match admit_word(&ctx, &raw) {
            Some((exp, word)) => {
                out.accumulate(vec![word], coeff.mul(&Scalar::phase(exp, p.mode())));
            }
            None => {} // word collapsed to zero
        }
    }
    Ok(out)
}

/// Split on top-level " + " (coefficients may contain '+' inside parens).
fn split_terms(line: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            '+' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                i += 1;
                continue;
            }
            _ => {}
        }
        cur.push(c);
        i += 1;
    }
    out.push(cur);
    out
}

/// Signed rational, optionally times zeta^k: "3", "-1/2", "zeta^-3",
/// "2/3*zeta^2".
fn parse_scalar(text: &str, p: &Presentation) -> Result<Scalar, String> {
    let text = text.trim();
    let (neg, text) = match text.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, text),
    };
    let (rat_part, zeta_part) = match text.split_once('*') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => {
            if text.starts_with("zeta") {
                ("1", Some(text))
            } else {
                (text, None)
            }
        }
    };
    let q = parse_rational(rat_part)?;
    let mut s = Scalar::from_rational(q, p.mode());
    if let Some(zp) = zeta_part {
        let exp: i64 = match zp.strip_prefix("zeta^") {
            Some(e) => e.parse().map_err(|_| format!("bad exponent: {zp}"))?,
            None if zp == "zeta" => 1,
            None => return Err(format!("bad phase factor: {zp}")),
        };
        s = s.mul(&Scalar::phase(exp, p.mode()));
    }
    if neg {
        s = s.neg();
    }
    Ok(s)
}

fn parse_rational(text: &str) -> Result<Rat, String> {
    let parse_int = |t: &str| -> Result<num::BigInt, String> {
        t.trim()
            .parse::<num::BigInt>()
            .map_err(|_| format!("bad integer: {t}"))
    };
    match text.split_once('/') {
        Some((a, b)) => {
            let d = parse_int(b)?;
            if d == num::BigInt::from(0) {
                return Err("zero denominator".to_string());
            }
            Ok(Rat::new(parse_int(a)?, d))
        }
        None => Ok(Rat::from(parse_int(text)?)),
    }
}
