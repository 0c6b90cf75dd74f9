//! Colored words and their rational linear combinations.
//!
//! A *colored word* is a sequence of letters, each letter being a generator
//! of one tensor leg of a word algebra. Products of word algebras — whether
//! the legs commute with each other (tensor product) or not (free product) —
//! all have bases of colored words, so this one representation carries every
//! quantum-probability object in the workspace. The only structural
//! difference between the two products is the normal form: when legs commute,
//! a word is stably sorted by leg (preserving the order within each leg).

use crate::rat::Rat;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Generator `sym` of tensor leg `leg`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Letter {
    pub leg: usize,
    pub sym: usize,
}

pub type Word = Vec<Letter>;

/// Normal form of a word: identity for free legs, stable sort by leg index
/// when distinct legs commute (within-leg order is preserved).
pub fn normalize(w: &Word, commuting: bool) -> Word {
    if !commuting {
        return w.clone();
    }
    let mut v = w.clone();
    v.sort_by_key(|l| l.leg);
    v
}

/// The restriction of a word to one leg: the sequence of symbol indices of
/// that leg's letters, in order.
pub fn restrict(w: &Word, leg: usize) -> Vec<usize> {
    w.iter().filter(|l| l.leg == leg).map(|l| l.sym).collect()
}

/// Letters per leg, for degree-bound checks.
pub fn leg_counts(w: &Word, legs: usize) -> Vec<usize> {
    let mut counts = vec![0; legs];
    for l in w {
        counts[l.leg] += 1;
    }
    counts
}

/// A finite rational linear combination of colored words.
///
/// Stored sparsely with exact coefficients; zero coefficients are dropped so
/// structural equality is semantic equality.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Element {
    pub terms: BTreeMap<Word, Rat>,
}

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    /// The algebra unit: the empty word with coefficient 1.
    pub fn one() -> Element {
        Element::word(Vec::new())
    }

    pub fn word(w: Word) -> Element {
        let mut terms = BTreeMap::new();
        terms.insert(w, Rat::from_integer(1.into()));
        Element { terms }
    }

    pub fn scalar(c: Rat) -> Element {
        Element::one().scale(&c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.terms.clone();
        for (w, c) in &other.terms {
            let entry = out.entry(w.clone()).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                out.remove(w);
            }
        }
        Element { terms: out }
    }

    pub fn scale(&self, c: &Rat) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect() }
    }

    /// Product in the word algebra: concatenate basis words, then put the
    /// results into the normal form dictated by `commuting`.
    pub fn mul(&self, other: &Element, commuting: bool) -> Element {
        let mut out: BTreeMap<Word, Rat> = BTreeMap::new();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                let w = normalize(&w, commuting);
                let entry = out.entry(w.clone()).or_insert_with(Rat::zero);
                *entry += c1 * c2;
                if entry.is_zero() {
                    out.remove(&w);
                }
            }
        }
        Element { terms: out }
    }

    /// Linear extension of a word-level evaluation.
    pub fn apply<E>(&self, mut f: impl FnMut(&Word) -> Result<Rat, E>) -> Result<Rat, E> {
        let mut total = Rat::zero();
        for (w, c) in &self.terms {
            total += c * f(w)?;
        }
        Ok(total)
    }

    /// Re-colors every letter through `map: old leg → new leg`.
    pub fn relabel_legs(&self, map: &[usize], commuting: bool) -> Element {
        let mut out = BTreeMap::new();
        for (w, c) in &self.terms {
            let w2: Word =
                w.iter().map(|l| Letter { leg: map[l.leg], sym: l.sym }).collect();
            out.insert(normalize(&w2, commuting), c.clone());
        }
        Element { terms: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn lt(leg: usize, sym: usize) -> Letter {
        Letter { leg, sym }
    }

    #[test]
    fn commuting_normal_form_is_a_stable_sort() {
        let w = vec![lt(1, 0), lt(0, 1), lt(1, 1), lt(0, 0)];
        assert_eq!(normalize(&w, false), w);
        assert_eq!(normalize(&w, true), vec![lt(0, 1), lt(0, 0), lt(1, 0), lt(1, 1)]);
    }

    #[test]
    fn multiplication_respects_commutation_rules() {
        let x = Element::word(vec![lt(0, 0)]);
        let y = Element::word(vec![lt(1, 0)]);
        // Free legs: xy and yx stay distinct.
        assert_ne!(x.mul(&y, false), y.mul(&x, false));
        // Commuting legs: both normalize to the same word.
        assert_eq!(x.mul(&y, true), y.mul(&x, true));
        // Same leg never commutes, even in the commuting regime.
        let x2 = Element::word(vec![lt(0, 1)]);
        assert_ne!(x.mul(&x2, true), x2.mul(&x, true));
    }

    #[test]
    fn arithmetic_drops_zero_terms() {
        let x = Element::word(vec![lt(0, 0)]);
        let minus = x.scale(&rat(-1, 1));
        assert!(x.add(&minus).is_zero());
        let sum = x.add(&Element::one()).mul(&x.add(&minus), false);
        assert!(sum.is_zero());
    }

    #[test]
    fn mul_is_associative_and_unital() {
        let a = Element::word(vec![lt(0, 0)]).add(&Element::scalar(rat(1, 2)));
        let b = Element::word(vec![lt(1, 0)]);
        let c = Element::word(vec![lt(0, 1), lt(1, 1)]);
        for commuting in [false, true] {
            let ab_c = a.mul(&b, commuting).mul(&c, commuting);
            let a_bc = a.mul(&b.mul(&c, commuting), commuting);
            assert_eq!(ab_c, a_bc);
            assert_eq!(a.mul(&Element::one(), commuting), a);
            assert_eq!(Element::one().mul(&a, commuting), a);
        }
    }
}
