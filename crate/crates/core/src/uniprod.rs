//! Universal products of moment functionals.
//!
//! A moment functional assigns an exact rational to every word (up to a
//! degree bound) in the generators of a word algebra; it is the
//! noncommutative analogue of a sequence of mixed moments. This module
//! implements the four classical ways of combining two such functionals into
//! one on the two-colored words — tensor, free, boolean and monotone — plus
//! the convolution `(φ₁ □ φ₂) ∘ Δ` along a comultiplication. The four rules:
//!
//! * **tensor** — the value is `φ₁(w|₁) · φ₂(w|₂)`, a function of the two
//!   one-colored restrictions only;
//! * **boolean** — factor over the maximal constant-color blocks and multiply
//!   the per-block values;
//! * **monotone** — collapse every maximal second-color block to the scalar
//!   `φ₂(block)`, then evaluate `φ₁` on the remaining first-color word;
//! * **free** — determined by "centered alternating products vanish": expand
//!   `∏ᵢ (Bᵢ − φ(Bᵢ))` over the maximal blocks, which must evaluate to zero,
//!   and solve for the full word. Each recursive call merges neighbouring
//!   blocks, so the recursion terminates; results are memoized.
//!
//! All four products are associative, so n-fold products are well defined;
//! `eval_grouped` evaluates them by folding, and the tests pin associativity
//! down exhaustively at desk scale.

use crate::rat::Rat;
use crate::words::{Letter, Word};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum UniprodError {
    #[error("word `{word}` has degree {len}, beyond the bound {bound}")]
    DegreeOverflow { word: String, len: usize, bound: usize },
    #[error("no moment value for in-range word `{0}`")]
    MissingValue(String),
    #[error("letter refers to group {got}, but only {count} groups exist")]
    BadGroup { got: usize, count: usize },
    #[error("functional table error: {0}")]
    BadTable(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProductKind {
    Tensor,
    Free,
    Boolean,
    Monotone,
}

impl ProductKind {
    pub const ALL: [ProductKind; 4] =
        [ProductKind::Tensor, ProductKind::Free, ProductKind::Boolean, ProductKind::Monotone];

    pub fn name(&self) -> &'static str {
        match self {
            ProductKind::Tensor => "tensor",
            ProductKind::Free => "free",
            ProductKind::Boolean => "boolean",
            ProductKind::Monotone => "monotone",
        }
    }
}

/// A linear functional on the words of one alphabet, truncated at `degree`.
///
/// The table must contain a value for *every* word of length `1 ..= degree`
/// (the empty word always evaluates to 1); longer words are evaluation
/// errors, never silently zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentFunctional {
    pub symbols: Vec<String>,
    pub degree: usize,
    values: BTreeMap<Vec<usize>, Rat>,
}

fn show_word(symbols: &[String], w: &[usize]) -> String {
    if w.is_empty() {
        return "ε".to_string();
    }
    w.iter()
        .map(|&s| symbols.get(s).cloned().unwrap_or_else(|| format!("#{s}")))
        .collect::<Vec<_>>()
        .join(" ")
}

/// All words of length `1 ..= degree` over `n` symbols, shortest first.
pub fn words_up_to(n: usize, degree: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut frontier = vec![Vec::new()];
    for _ in 0..degree {
        let mut next = Vec::new();
        for w in &frontier {
            for s in 0..n {
                let mut e = w.clone();
                e.push(s);
                next.push(e);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

impl MomentFunctional {
    pub fn new(
        symbols: Vec<String>,
        degree: usize,
        values: BTreeMap<Vec<usize>, Rat>,
    ) -> Result<MomentFunctional, UniprodError> {
        for w in values.keys() {
            if w.is_empty() {
                return Err(UniprodError::BadTable("the empty word is fixed at 1".into()));
            }
            if w.len() > degree {
                return Err(UniprodError::BadTable(format!(
                    "table entry `{}` exceeds degree bound {degree}",
                    show_word(&symbols, w)
                )));
            }
            if let Some(&s) = w.iter().find(|&&s| s >= symbols.len()) {
                return Err(UniprodError::BadTable(format!("unknown symbol index {s}")));
            }
        }
        for w in words_up_to(symbols.len(), degree) {
            if !values.contains_key(&w) {
                return Err(UniprodError::MissingValue(show_word(&symbols, &w)));
            }
        }
        Ok(MomentFunctional { symbols, degree, values })
    }

    /// The counit functional: 1 on the empty word, 0 on everything else.
    pub fn counit(symbols: Vec<String>, degree: usize) -> MomentFunctional {
        let values =
            words_up_to(symbols.len(), degree).into_iter().map(|w| (w, Rat::zero())).collect();
        MomentFunctional { symbols, degree, values }
    }

    pub fn eval(&self, w: &[usize]) -> Result<Rat, UniprodError> {
        if w.is_empty() {
            return Ok(Rat::one());
        }
        if w.len() > self.degree {
            return Err(UniprodError::DegreeOverflow {
                word: show_word(&self.symbols, w),
                len: w.len(),
                bound: self.degree,
            });
        }
        self.values
            .get(w)
            .cloned()
            .ok_or_else(|| UniprodError::MissingValue(show_word(&self.symbols, w)))
    }
}

/// A word-level evaluator for one group of a product.
pub type GroupEval<'a> = &'a dyn Fn(&[usize]) -> Result<Rat, UniprodError>;

/// Maximal constant-group blocks of a grouped word, in order.
fn blocks(w: &[(usize, usize)]) -> Vec<(usize, Vec<usize>)> {
    let mut out: Vec<(usize, Vec<usize>)> = Vec::new();
    for &(g, s) in w {
        match out.last_mut() {
            Some((bg, word)) if *bg == g => word.push(s),
            _ => out.push((g, vec![s])),
        }
    }
    out
}

fn free_eval(
    blocks: Vec<(usize, Vec<usize>)>,
    phis: &[GroupEval],
    memo: &mut BTreeMap<Vec<(usize, Vec<usize>)>, Rat>,
) -> Result<Rat, UniprodError> {
    let m = blocks.len();
    if m == 0 {
        return Ok(Rat::one());
    }
    if m == 1 {
        return phis[blocks[0].0](&blocks[0].1);
    }
    if let Some(v) = memo.get(&blocks) {
        return Ok(v.clone());
    }
    // Centered alternating products vanish: expanding ∏ᵢ (Bᵢ − φ(Bᵢ)) = 0
    // over the maximal blocks and isolating the full-word term gives
    //   Φ(B₁⋯Bₘ) = −Σ_{∅≠S} (−1)^{|S|} ∏_{i∈S} φ(Bᵢ) · Φ(merge of the rest),
    // where removing the blocks in S lets equal-colored neighbours merge, so
    // every recursive call strictly shrinks the block list.
    let mut scalars = Vec::with_capacity(m);
    for (g, word) in &blocks {
        scalars.push(phis[*g](word)?);
    }
    let mut total = Rat::zero();
    for mask in 1u32..(1 << m) {
        let mut coeff = if mask.count_ones() % 2 == 0 { Rat::one() } else { -Rat::one() };
        for (i, s) in scalars.iter().enumerate() {
            if mask & (1 << i) != 0 {
                coeff *= s;
            }
        }
        if coeff.is_zero() {
            continue;
        }
        let mut rest: Vec<(usize, Vec<usize>)> = Vec::new();
        for (i, b) in blocks.iter().enumerate() {
            if mask & (1 << i) != 0 {
                continue;
            }
            match rest.last_mut() {
                Some((g, word)) if *g == b.0 => word.extend_from_slice(&b.1),
                _ => rest.push(b.clone()),
            }
        }
        total += coeff * free_eval(rest, phis, memo)?;
    }
    let value = -total;
    memo.insert(blocks, value.clone());
    Ok(value)
}

/// Evaluates the `kind`-product of the given group functionals on a grouped
/// word (each letter is `(group, symbol)`).
pub fn eval_grouped(
    kind: ProductKind,
    phis: &[GroupEval],
    w: &[(usize, usize)],
) -> Result<Rat, UniprodError> {
    if let Some(&(g, _)) = w.iter().find(|&&(g, _)| g >= phis.len()) {
        return Err(UniprodError::BadGroup { got: g, count: phis.len() });
    }
    match kind {
        ProductKind::Tensor => {
            let mut total = Rat::one();
            for (g, phi) in phis.iter().enumerate() {
                let r: Vec<usize> =
                    w.iter().filter(|&&(wg, _)| wg == g).map(|&(_, s)| s).collect();
                total *= phi(&r)?;
            }
            Ok(total)
        }
        ProductKind::Boolean => {
            let mut total = Rat::one();
            for (g, word) in blocks(w) {
                total *= phis[g](&word)?;
            }
            Ok(total)
        }
        ProductKind::Monotone => {
            // Fold from the last group down: collapse every maximal block of
            // the currently-largest group to a scalar, then recurse on what
            // remains. For two groups this is exactly "absorb the
            // second-color blocks, then apply φ₁".
            let mut current: Vec<(usize, usize)> = w.to_vec();
            let mut total = Rat::one();
            for g in (1..phis.len()).rev() {
                for (bg, word) in blocks(&current) {
                    if bg == g {
                        total *= phis[g](&word)?;
                    }
                }
                current.retain(|&(wg, _)| wg != g);
            }
            let base: Vec<usize> = current.iter().map(|&(_, s)| s).collect();
            Ok(total * phis[0](&base)?)
        }
        ProductKind::Free => {
            let mut memo = BTreeMap::new();
            free_eval(blocks(w), phis, &mut memo)
        }
    }
}

/// The `kind`-product of finitely many tabulated functionals, evaluated
/// lazily on colored words (letter legs index the factors).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointFunctional {
    pub kind: ProductKind,
    pub factors: Vec<MomentFunctional>,
}

impl JointFunctional {
    pub fn eval(&self, w: &Word) -> Result<Rat, UniprodError> {
        let evals: Vec<Box<dyn Fn(&[usize]) -> Result<Rat, UniprodError>>> = self
            .factors
            .iter()
            .map(|phi| {
                let phi = phi.clone();
                Box::new(move |v: &[usize]| phi.eval(v))
                    as Box<dyn Fn(&[usize]) -> Result<Rat, UniprodError>>
            })
            .collect();
        let refs: Vec<GroupEval> = evals.iter().map(|b| b.as_ref() as GroupEval).collect();
        let grouped: Vec<(usize, usize)> = w.iter().map(|l| (l.leg, l.sym)).collect();
        eval_grouped(self.kind, &refs, &grouped)
    }
}

pub fn tensor_product(a: &MomentFunctional, b: &MomentFunctional) -> JointFunctional {
    JointFunctional { kind: ProductKind::Tensor, factors: vec![a.clone(), b.clone()] }
}

pub fn free_product(a: &MomentFunctional, b: &MomentFunctional) -> JointFunctional {
    JointFunctional { kind: ProductKind::Free, factors: vec![a.clone(), b.clone()] }
}

pub fn boolean_product(a: &MomentFunctional, b: &MomentFunctional) -> JointFunctional {
    JointFunctional { kind: ProductKind::Boolean, factors: vec![a.clone(), b.clone()] }
}

pub fn monotone_product(a: &MomentFunctional, b: &MomentFunctional) -> JointFunctional {
    JointFunctional { kind: ProductKind::Monotone, factors: vec![a.clone(), b.clone()] }
}

/// A comultiplication on a word algebra, given by the two-colored image of
/// each generator (color 0 = left copy, color 1 = right copy).
///
/// `images[i]` may be any element of the two-colored word algebra, including
/// zero (the primitive counit sends generators to 0) — but multiplication
/// during substitution happens in the *free* two-colored algebra. Tensor-leg
/// commutation never changes the evaluation of any of the four products, so
/// one representation serves all of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comultiplication {
    pub symbols: Vec<String>,
    pub images: Vec<crate::words::Element>,
}

impl Comultiplication {
    /// The image of a word under the comultiplication: the product of the
    /// generator images in the two-colored word algebra.
    pub fn apply(&self, w: &[usize]) -> crate::words::Element {
        let mut out = crate::words::Element::one();
        for &s in w {
            out = out.mul(&self.images[s], false);
        }
        out
    }

    /// Coassociativity check by direct expansion into three colors:
    /// re-expanding the left copy must agree with re-expanding the right.
    pub fn is_coassociative(&self, probe_degree: usize) -> bool {
        let expand = |elem: &crate::words::Element, which: usize| {
            // Substitute Δ into color `which`; other color shifts to make
            // room, yielding a three-colored element.
            let mut out = crate::words::Element::zero();
            for (w, c) in &elem.terms {
                let mut term = crate::words::Element::one();
                for l in w {
                    let next = if l.leg == which {
                        self.images[l.sym].relabel_legs(&[which, which + 1], false)
                    } else {
                        let leg = if l.leg > which { l.leg + 1 } else { l.leg };
                        crate::words::Element::word(vec![Letter { leg, sym: l.sym }])
                    };
                    term = term.mul(&next, false);
                }
                out = out.add(&term.scale(c));
            }
            out
        };
        for w in words_up_to(self.symbols.len(), probe_degree) {
            let once = self.apply(&w);
            if expand(&once, 0) != expand(&once, 1) {
                return false;
            }
        }
        true
    }

    /// Counit law along a scalar counit `eps(generator) ∈ ℚ`: collapsing
    /// either color of `Δ(w)` through `eps` must reproduce `w`.
    pub fn satisfies_counit(&self, eps: &[Rat], probe_degree: usize) -> bool {
        let collapse = |elem: &crate::words::Element, which: usize| {
            let mut out = crate::words::Element::zero();
            for (w, c) in &elem.terms {
                let mut coeff = c.clone();
                let mut rest: Word = Vec::new();
                for l in w {
                    if l.leg == which {
                        coeff *= &eps[l.sym];
                        if coeff.is_zero() {
                            break;
                        }
                    } else {
                        rest.push(Letter { leg: 0, sym: l.sym });
                    }
                }
                if !coeff.is_zero() {
                    out = out.add(&crate::words::Element::word(rest).scale(&coeff));
                }
            }
            out
        };
        for w in words_up_to(self.symbols.len(), probe_degree) {
            let image = self.apply(&w);
            let plain =
                crate::words::Element::word(w.iter().map(|&sym| Letter { leg: 0, sym }).collect());
            if collapse(&image, 0) != plain || collapse(&image, 1) != plain {
                return false;
            }
        }
        true
    }
}

/// Convolution of two functionals along a comultiplication:
/// `(φ₁ ⋆ φ₂)(w) = (φ₁ □ φ₂)(Δ(w))`, tabulated up to the degree bound.
pub fn convolve(
    kind: ProductKind,
    phi1: &MomentFunctional,
    phi2: &MomentFunctional,
    delta: &Comultiplication,
) -> Result<MomentFunctional, UniprodError> {
    let degree = phi1.degree.min(phi2.degree);
    let joint = JointFunctional { kind, factors: vec![phi1.clone(), phi2.clone()] };
    let mut values = BTreeMap::new();
    for w in words_up_to(delta.symbols.len(), degree) {
        let image = delta.apply(&w);
        let v = image.apply(|cw| joint.eval(cw))?;
        values.insert(w, v);
    }
    MomentFunctional::new(delta.symbols.clone(), degree, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use crate::words::Element;

    /// A generic moment table over one symbol `x`: moments m₁..m₄.
    fn phi_one(ms: [i64; 4]) -> MomentFunctional {
        let values = (1..=4).map(|k| (vec![0usize; k], rat(ms[k - 1], 1))).collect();
        MomentFunctional::new(vec!["x".into()], 4, values).unwrap()
    }

    fn phi_frac(ms: [(i64, i64); 4]) -> MomentFunctional {
        let values = (1..=4).map(|k| (vec![0usize; k], rat(ms[k - 1].0, ms[k - 1].1))).collect();
        MomentFunctional::new(vec!["x".into()], 4, values).unwrap()
    }

    /// Letters of a colored word over single-symbol alphabets.
    fn gw(groups: &[usize]) -> Vec<(usize, usize)> {
        groups.iter().map(|&g| (g, 0)).collect()
    }

    fn eval2(
        kind: ProductKind,
        a: &MomentFunctional,
        b: &MomentFunctional,
        groups: &[usize],
    ) -> Rat {
        let w: Word = groups.iter().map(|&g| Letter { leg: g, sym: 0 }).collect();
        JointFunctional { kind, factors: vec![a.clone(), b.clone()] }.eval(&w).unwrap()
    }

    #[test]
    fn table_construction_validates_completeness_and_range() {
        let mut values: BTreeMap<Vec<usize>, Rat> = BTreeMap::new();
        values.insert(vec![0], rat(1, 2));
        // Missing the degree-2 word.
        assert!(matches!(
            MomentFunctional::new(vec!["x".into()], 2, values.clone()),
            Err(UniprodError::MissingValue(_))
        ));
        values.insert(vec![0, 0], rat(1, 3));
        let phi = MomentFunctional::new(vec!["x".into()], 2, values).unwrap();
        assert_eq!(phi.eval(&[]).unwrap(), rat(1, 1));
        assert_eq!(phi.eval(&[0, 0]).unwrap(), rat(1, 3));
        assert!(matches!(
            phi.eval(&[0, 0, 0]),
            Err(UniprodError::DegreeOverflow { len: 3, bound: 2, .. })
        ));
    }

    /// All four products restrict correctly (pure words see only their own
    /// functional) and agree on mixed words of length ≤ 2.
    #[test]
    fn products_agree_on_short_words() {
        let a = phi_one([1, 2, 3, 5]);
        let b = phi_one([-1, 4, 1, 2]);
        for kind in ProductKind::ALL {
            assert_eq!(eval2(kind, &a, &b, &[0, 0, 0]), a.eval(&[0, 0, 0]).unwrap());
            assert_eq!(eval2(kind, &a, &b, &[1, 1]), b.eval(&[0, 0]).unwrap());
            assert_eq!(eval2(kind, &a, &b, &[0, 1]), rat(-1, 1)); // φ₁(x)·φ₂(x)
            assert_eq!(eval2(kind, &a, &b, &[1, 0]), rat(-1, 1));
        }
    }

    /// Frozen length-3 values: the word x₁ y x₂ (colors 1,2,1) separates the
    /// four products exactly as the closed formulas say.
    #[test]
    fn length_three_closed_forms() {
        let a = phi_frac([(1, 2), (1, 3), (0, 1), (0, 1)]);
        let b = phi_frac([(1, 5), (2, 7), (0, 1), (0, 1)]);
        let w = &[0, 1, 0];
        // tensor: φ₁(x²)·φ₂(y)
        assert_eq!(eval2(ProductKind::Tensor, &a, &b, w), rat(1, 3) * rat(1, 5));
        // free and monotone: φ₂(y)·φ₁(x²)
        assert_eq!(eval2(ProductKind::Free, &a, &b, w), rat(1, 5) * rat(1, 3));
        assert_eq!(eval2(ProductKind::Monotone, &a, &b, w), rat(1, 5) * rat(1, 3));
        // boolean: φ₁(x)·φ₂(y)·φ₁(x)
        assert_eq!(eval2(ProductKind::Boolean, &a, &b, w), rat(1, 2) * rat(1, 5) * rat(1, 2));
        // The mirrored word y₁ x y₂ separates free from monotone:
        let v = &[1, 0, 1];
        assert_eq!(eval2(ProductKind::Free, &a, &b, v), rat(1, 2) * rat(2, 7));
        assert_eq!(eval2(ProductKind::Monotone, &a, &b, v), rat(1, 2) * rat(1, 5) * rat(1, 5));
    }

    /// The textbook alternating length-4 free-moment identity:
    /// Φ(a₁ b₁ a₂ b₂) = φ(a₁a₂)ψ(b₁)ψ(b₂) + φ(a₁)φ(a₂)ψ(b₁b₂)
    ///                − φ(a₁)ψ(b₁)φ(a₂)ψ(b₂).
    #[test]
    fn free_product_length_four_identity() {
        let a = phi_frac([(1, 2), (1, 3), (1, 7), (2, 3)]);
        let b = phi_frac([(1, 5), (2, 7), (3, 4), (1, 9)]);
        let got = eval2(ProductKind::Free, &a, &b, &[0, 1, 0, 1]);
        let (a1, a2) = (a.eval(&[0]).unwrap(), a.eval(&[0, 0]).unwrap());
        let (b1, b2) = (b.eval(&[0]).unwrap(), b.eval(&[0, 0]).unwrap());
        let want = a2.clone() * &b1 * &b1 + a1.clone() * &a1 * &b2 - a1.clone() * &a1 * &b1 * &b1;
        assert_eq!(got, want);
    }

    /// Boolean ≠ free on a length-4 word with a non-factorizing φ₁.
    #[test]
    fn boolean_differs_from_free_on_length_four() {
        let a = phi_one([0, 1, 0, 2]); // centered with unit variance
        let b = phi_one([0, 1, 0, 2]);
        let w = &[0, 1, 1, 0]; // x y y x
        // boolean: φ(x)ψ(yy)φ(x) = 0; free: φ(xx)ψ(yy) = 1 (+ vanishing terms)
        assert_eq!(eval2(ProductKind::Boolean, &a, &b, w), rat(0, 1));
        assert_eq!(eval2(ProductKind::Free, &a, &b, w), rat(1, 1));
    }

    /// Monotone is genuinely asymmetric: swapping the roles of the two
    /// functionals (equivalently, mirroring the colors) changes the value.
    #[test]
    fn monotone_asymmetry_witness() {
        let a = phi_one([1, 3, 0, 0]); // φ(x²) ≠ φ(x)²
        let b = phi_one([1, 1, 1, 1]);
        let forward = eval2(ProductKind::Monotone, &a, &b, &[0, 1, 0]);
        let swapped = eval2(ProductKind::Monotone, &b, &a, &[1, 0, 1]);
        assert_eq!(forward, rat(3, 1)); // ψ(y)·φ(x²)
        assert_eq!(swapped, rat(1, 1)); // φ(x)·ψ(y)·φ(x) after collapsing
        assert_ne!(forward, swapped);
    }

    /// Associativity, checked exhaustively on all three-colored words of
    /// length ≤ 4 over single-symbol alphabets: grouping (φ₁□φ₂)□φ₃ must
    /// match φ₁□(φ₂□φ₃). Both sides are computed through `eval_grouped` with
    /// nested closures, which exercises the lazy two-group evaluators.
    #[test]
    fn products_are_associative() {
        let a = phi_frac([(1, 2), (1, 3), (1, 5), (1, 7)]);
        let b = phi_frac([(-1, 3), (1, 2), (2, 5), (3, 7)]);
        let c = phi_frac([(1, 4), (2, 3), (-2, 7), (1, 2)]);
        let ea = |w: &[usize]| a.eval(w);
        let eb = |w: &[usize]| b.eval(w);
        let ec = |w: &[usize]| c.eval(w);
        for kind in ProductKind::ALL {
            // Left grouping: treat groups {0,1} as one via a nested eval.
            let left_pair = |w: &[usize]| {
                // w is a word over the merged group; its letters carry their
                // original group in the symbol slot (0 or 1), symbol fixed.
                eval_grouped(kind, &[&ea, &eb], &gw(w))
            };
            let right_pair = |w: &[usize]| eval_grouped(kind, &[&eb, &ec], &gw(w));
            for len in 0..=4usize {
                for code in 0..3usize.pow(len as u32) {
                    let mut word = Vec::new();
                    let mut c0 = code;
                    for _ in 0..len {
                        word.push(c0 % 3);
                        c0 /= 3;
                    }
                    // ((φ₁□φ₂)□φ₃): outer groups are {0,1}→0 and {2}→1; the
                    // inner word remembers which original group a letter had.
                    let outer_left: Vec<(usize, usize)> = word
                        .iter()
                        .map(|&g| if g < 2 { (0, g) } else { (1, 0) })
                        .collect();
                    let left = eval_grouped(
                        kind,
                        &[&|w: &[usize]| left_pair(w), &|w: &[usize]| ec(&vec![0; w.len()])],
                        &outer_left,
                    )
                    .unwrap();
                    let outer_right: Vec<(usize, usize)> = word
                        .iter()
                        .map(|&g| if g == 0 { (0, 0) } else { (1, g - 1) })
                        .collect();
                    let right = eval_grouped(
                        kind,
                        &[&|w: &[usize]| ea(&vec![0; w.len()]), &|w: &[usize]| right_pair(w)],
                        &outer_right,
                    )
                    .unwrap();
                    let direct = eval_grouped(kind, &[&ea, &eb, &ec], &gw(&word)).unwrap();
                    assert_eq!(left, direct, "kind {kind:?} word {word:?} (left grouping)");
                    assert_eq!(right, direct, "kind {kind:?} word {word:?} (right grouping)");
                }
            }
        }
    }

    /// Group-like comultiplication: Δ(g) = g⊗g makes tensor convolution the
    /// pointwise product of moment sequences — the Fourier picture of
    /// classical convolution on a cyclic group.
    #[test]
    fn tensor_convolution_multiplies_characters() {
        let delta = Comultiplication {
            symbols: vec!["g".into()],
            images: vec![Element::word(vec![
                Letter { leg: 0, sym: 0 },
                Letter { leg: 1, sym: 0 },
            ])],
        };
        assert!(delta.is_coassociative(3));
        assert!(delta.satisfies_counit(&[rat(1, 1)], 3));
        // φ_p(gᵏ) = 1 for even k, 1−2p for odd: the order-two character table.
        let walk = |p: Rat| {
            let values = (1..=4)
                .map(|k| {
                    let v = if k % 2 == 0 { rat(1, 1) } else { rat(1, 1) - rat(2, 1) * &p };
                    (vec![0usize; k], v)
                })
                .collect();
            MomentFunctional::new(vec!["g".into()], 4, values).unwrap()
        };
        let p = walk(rat(1, 3));
        let q = walk(rat(1, 4));
        let conv = convolve(ProductKind::Tensor, &p, &q, &delta).unwrap();
        assert_eq!(conv.eval(&[0]).unwrap(), rat(1, 3) * rat(1, 2)); // (1−2/3)(1−1/2)
        assert_eq!(conv.eval(&[0, 0]).unwrap(), rat(1, 1));
    }

    /// Primitive comultiplication: Δ(x) = x⊗1 + 1⊗x. Under the free product
    /// the first three convolved moments are m₁+n₁, m₂+2m₁n₁+n₂, and the
    /// free third-moment formula; we freeze centered inputs where free,
    /// boolean and monotone all add variances.
    #[test]
    fn primitive_convolution_adds_centered_variances() {
        let delta = Comultiplication {
            symbols: vec!["x".into()],
            images: vec![Element::word(vec![Letter { leg: 0, sym: 0 }])
                .add(&Element::word(vec![Letter { leg: 1, sym: 0 }]))],
        };
        assert!(delta.is_coassociative(3));
        assert!(delta.satisfies_counit(&[rat(0, 1)], 3));
        let a = phi_frac([(0, 1), (1, 2), (0, 1), (1, 4)]);
        let b = phi_frac([(0, 1), (1, 3), (0, 1), (1, 9)]);
        for kind in ProductKind::ALL {
            let conv = convolve(kind, &a, &b, &delta).unwrap();
            assert_eq!(conv.eval(&[0]).unwrap(), rat(0, 1), "{kind:?}");
            assert_eq!(conv.eval(&[0, 0]).unwrap(), rat(5, 6), "{kind:?}");
        }
    }

    /// The primitive counit (x ↦ 0) neutralizes convolution in one step:
    /// δ ⋆ φ = φ ⋆ δ = φ for every product kind.
    #[test]
    fn counit_is_neutral_for_convolution() {
        let delta = Comultiplication {
            symbols: vec!["x".into()],
            images: vec![Element::word(vec![Letter { leg: 0, sym: 0 }])
                .add(&Element::word(vec![Letter { leg: 1, sym: 0 }]))],
        };
        let phi = phi_frac([(1, 2), (1, 3), (1, 5), (1, 7)]);
        let eps = MomentFunctional::counit(vec!["x".into()], 4);
        for kind in ProductKind::ALL {
            assert_eq!(convolve(kind, &eps, &phi, &delta).unwrap(), phi, "{kind:?} left");
            assert_eq!(convolve(kind, &phi, &eps, &delta).unwrap(), phi, "{kind:?} right");
        }
    }
}
