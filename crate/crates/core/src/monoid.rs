//! Time monoids and their factorization combinatorics.
//!
//! A process here is indexed not by real numbers but by elements of a monoid,
//! and the constructions downstream (coproduct systems, inductive limits)
//! consume *factorizations*: tuples of non-unit elements multiplying to a
//! given target. This module implements four concrete monoids —
//!
//! * `NatAdd` — (ℕ₀, +), the discrete time axis;
//! * `DyadicGrid(level)` — ℕ₀ scaled by 2⁻ˡᵉᵛᵉˡ, a dyadic time grid;
//! * `FreeWords(alphabet)` — finite words under concatenation;
//! * `NatPairAdd` — ℕ₀² under componentwise addition;
//!
//! together with the operations the rest of the workspace needs: division,
//! factorization enumeration, refinement of factorizations with its unique
//! block decomposition, common refinements, and upper bounds for the
//! divisibility preorder.
//!
//! The four monoids are chosen to separate three structural properties that
//! drive everything downstream: `NatAdd` and `DyadicGrid` are totally ordered
//! by divisibility; `FreeWords` admits common refinements but has divisibility
//! antichains (`a` and `b` share no upper bound); `NatPairAdd` is directed but
//! `(1,0)·(0,1) = (0,1)·(1,0)` gives two factorizations of `(1,1)` with no
//! common refinement. All four are cancellative and have no non-trivial
//! inverses, which is what makes refinement block decompositions unique.

use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MonoidError {
    #[error("max_parts must be at least 1")]
    ZeroMaxParts,
    #[error("factorizations target different elements: {0} vs {1}")]
    TargetMismatch(String, String),
    #[error("no common refinement of {0} and {1} exists")]
    NoCommonRefinement(String, String),
    #[error("factorization parts must be non-unit")]
    UnitPart,
    #[error("parts multiply to {got}, not to the declared target {want}")]
    ProductMismatch { got: String, want: String },
    #[error("cannot parse `{0}` as an element of this monoid")]
    Parse(String),
}

/// One element of one of the four supported monoids.
///
/// Values are only meaningful relative to a [`Monoid`]; `Dyadic(k)` denotes
/// `k / 2^level` for the owning grid's level.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MonoidValue {
    Nat(u64),
    Dyadic(u64),
    Word(String),
    Pair(u64, u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoidKind {
    NatAdd,
    DyadicGrid { level: u32 },
    FreeWords { alphabet: Vec<char> },
    NatPairAdd,
}

/// A concrete monoid: the operation table plus the factorization calculus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monoid {
    pub kind: MonoidKind,
}

/// A tuple of non-unit elements multiplying to `target`.
///
/// The empty tuple is the unique factorization of the unit (no non-unit
/// element divides it in any of our monoids), and is the only factorization
/// whose `parts` are empty.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Factorization {
    pub target: MonoidValue,
    pub parts: Vec<MonoidValue>,
}

impl Factorization {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// Witness that a fine factorization refines a coarse one: the fine parts,
/// split into consecutive blocks whose products are the coarse parts.
///
/// `blocks[k]` is itself a factorization — of the k-th coarse part. For
/// cancellative monoids without inverses this decomposition is unique, a fact
/// the tests check by exhaustive search over all block splits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinementBlocks {
    pub coarse: Factorization,
    pub fine: Factorization,
    pub blocks: Vec<Factorization>,
}

impl Monoid {
    pub fn nat_add() -> Monoid {
        Monoid { kind: MonoidKind::NatAdd }
    }

    pub fn dyadic_grid(level: u32) -> Monoid {
        Monoid { kind: MonoidKind::DyadicGrid { level } }
    }

    pub fn free_words(alphabet: &str) -> Monoid {
        Monoid { kind: MonoidKind::FreeWords { alphabet: alphabet.chars().collect() } }
    }

    pub fn nat_pair_add() -> Monoid {
        Monoid { kind: MonoidKind::NatPairAdd }
    }

    pub fn unit(&self) -> MonoidValue {
        match &self.kind {
            MonoidKind::NatAdd => MonoidValue::Nat(0),
            MonoidKind::DyadicGrid { .. } => MonoidValue::Dyadic(0),
            MonoidKind::FreeWords { .. } => MonoidValue::Word(String::new()),
            MonoidKind::NatPairAdd => MonoidValue::Pair(0, 0),
        }
    }

    pub fn is_unit(&self, v: &MonoidValue) -> bool {
        *v == self.unit()
    }

    pub fn op(&self, a: &MonoidValue, b: &MonoidValue) -> MonoidValue {
        match (a, b) {
            (MonoidValue::Nat(x), MonoidValue::Nat(y)) => MonoidValue::Nat(x + y),
            (MonoidValue::Dyadic(x), MonoidValue::Dyadic(y)) => MonoidValue::Dyadic(x + y),
            (MonoidValue::Word(x), MonoidValue::Word(y)) => {
                MonoidValue::Word(format!("{x}{y}"))
            }
            (MonoidValue::Pair(x1, x2), MonoidValue::Pair(y1, y2)) => {
                MonoidValue::Pair(x1 + y1, x2 + y2)
            }
            _ => panic!("monoid elements of mixed kinds"),
        }
    }

    /// Product of a (possibly empty) list of elements, left to right.
    pub fn product(&self, parts: &[MonoidValue]) -> MonoidValue {
        parts.iter().fold(self.unit(), |acc, p| self.op(&acc, p))
    }

    /// Left division: the unique `p` with `s·p = r`, if one exists.
    ///
    /// Uniqueness holds in all four monoids because they are cancellative.
    pub fn divides(&self, s: &MonoidValue, r: &MonoidValue) -> Option<MonoidValue> {
        match (s, r) {
            (MonoidValue::Nat(x), MonoidValue::Nat(y)) => {
                y.checked_sub(*x).map(MonoidValue::Nat)
            }
            (MonoidValue::Dyadic(x), MonoidValue::Dyadic(y)) => {
                y.checked_sub(*x).map(MonoidValue::Dyadic)
            }
            (MonoidValue::Word(x), MonoidValue::Word(y)) => {
                y.strip_prefix(x.as_str()).map(|rest| MonoidValue::Word(rest.to_string()))
            }
            (MonoidValue::Pair(x1, x2), MonoidValue::Pair(y1, y2)) => {
                match (y1.checked_sub(*x1), y2.checked_sub(*x2)) {
                    (Some(a), Some(b)) => Some(MonoidValue::Pair(a, b)),
                    _ => None,
                }
            }
            _ => panic!("monoid elements of mixed kinds"),
        }
    }

    /// The divisibility preorder `s ≤ r` ⟺ `∃p: s·p = r`.
    pub fn leq(&self, s: &MonoidValue, r: &MonoidValue) -> bool {
        self.divides(s, r).is_some()
    }

    /// Whether divisibility totally orders this monoid. This is a structural
    /// fact about each kind; the sampled law suite re-checks it empirically.
    pub fn totally_ordered(&self) -> bool {
        matches!(self.kind, MonoidKind::NatAdd | MonoidKind::DyadicGrid { .. })
    }

    /// Every non-unit left divisor of `t`, in a fixed deterministic order.
    fn non_unit_divisors(&self, t: &MonoidValue) -> Vec<MonoidValue> {
        match t {
            MonoidValue::Nat(n) => (1..=*n).map(MonoidValue::Nat).collect(),
            MonoidValue::Dyadic(k) => (1..=*k).map(MonoidValue::Dyadic).collect(),
            MonoidValue::Word(w) => {
                let chars: Vec<char> = w.chars().collect();
                (1..=chars.len())
                    .map(|i| MonoidValue::Word(chars[..i].iter().collect()))
                    .collect()
            }
            MonoidValue::Pair(m, n) => {
                let mut out = Vec::new();
                for i in 0..=*m {
                    for j in 0..=*n {
                        if i + j > 0 {
                            out.push(MonoidValue::Pair(i, j));
                        }
                    }
                }
                out
            }
        }
    }

    /// An upper bound for factorization lengths of `t`: every non-unit part
    /// consumes at least one unit of this additive weight.
    pub fn weight(&self, t: &MonoidValue) -> usize {
        match t {
            MonoidValue::Nat(n) | MonoidValue::Dyadic(n) => *n as usize,
            MonoidValue::Word(w) => w.chars().count(),
            MonoidValue::Pair(m, n) => (*m + *n) as usize,
        }
    }

    /// Validates a hand-built factorization: non-unit parts whose product is
    /// the declared target.
    pub fn factorization(
        &self,
        target: MonoidValue,
        parts: Vec<MonoidValue>,
    ) -> Result<Factorization, MonoidError> {
        if parts.iter().any(|p| self.is_unit(p)) {
            return Err(MonoidError::UnitPart);
        }
        let got = self.product(&parts);
        if got != target {
            return Err(MonoidError::ProductMismatch {
                got: self.show(&got),
                want: self.show(&target),
            });
        }
        Ok(Factorization { target, parts })
    }

    /// All factorizations of `t` with at most `max_parts` parts, in a fixed
    /// deterministic order. The unit's only factorization is the empty tuple.
    ///
    /// `max_parts` is a mandatory cap: enumeration recurses on left divisors
    /// and the cap is its termination guard, so `0` is a domain error rather
    /// than "no factorizations".
    pub fn enumerate_factorizations(
        &self,
        t: &MonoidValue,
        max_parts: usize,
    ) -> Result<Vec<Factorization>, MonoidError> {
        if max_parts == 0 {
            return Err(MonoidError::ZeroMaxParts);
        }
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        self.enumerate_rec(t, max_parts, &mut prefix, &mut out);
        Ok(out
            .into_iter()
            .map(|parts| Factorization { target: t.clone(), parts })
            .collect())
    }

    fn enumerate_rec(
        &self,
        rest: &MonoidValue,
        budget: usize,
        prefix: &mut Vec<MonoidValue>,
        out: &mut Vec<Vec<MonoidValue>>,
    ) {
        if self.is_unit(rest) {
            out.push(prefix.clone());
            return;
        }
        if budget == 0 {
            return;
        }
        for d in self.non_unit_divisors(rest) {
            let complement = self.divides(&d, rest).expect("divisor by construction");
            prefix.push(d);
            self.enumerate_rec(&complement, budget - 1, prefix, out);
            prefix.pop();
        }
    }

    /// Every factorization of `t`, using the additive weight of `t` as the
    /// (always sufficient) length cap.
    pub fn all_factorizations(&self, t: &MonoidValue) -> Result<Vec<Factorization>, MonoidError> {
        self.enumerate_factorizations(t, self.weight(t).max(1))
    }

    /// Does `fine` refine `coarse`? Returns the block decomposition if so.
    ///
    /// The greedy scan below is justified by cancellativity: at most one
    /// prefix of the remaining fine parts can multiply to the next coarse
    /// part (two matching prefixes would force a non-empty product of
    /// non-unit parts to be the unit), so no backtracking is needed.
    pub fn refines(
        &self,
        fine: &Factorization,
        coarse: &Factorization,
    ) -> Result<Option<RefinementBlocks>, MonoidError> {
        if fine.target != coarse.target {
            return Err(MonoidError::TargetMismatch(
                self.show(&fine.target),
                self.show(&coarse.target),
            ));
        }
        let mut blocks = Vec::with_capacity(coarse.len());
        let mut pos = 0;
        for want in &coarse.parts {
            let mut acc = self.unit();
            let start = pos;
            let mut matched = false;
            while pos < fine.len() {
                acc = self.op(&acc, &fine.parts[pos]);
                pos += 1;
                if acc == *want {
                    matched = true;
                    break;
                }
            }
            if !matched {
                return Ok(None);
            }
            blocks.push(Factorization {
                target: want.clone(),
                parts: fine.parts[start..pos].to_vec(),
            });
        }
        if pos != fine.len() {
            return Ok(None);
        }
        Ok(Some(RefinementBlocks { coarse: coarse.clone(), fine: fine.clone(), blocks }))
    }

    /// A common refinement of two factorizations of the same target.
    ///
    /// For the additively ordered monoids and for words, a factorization is
    /// the same thing as a set of cut points (proper partial sums, resp.
    /// proper prefix lengths), and the union of the two cut sets is the least
    /// common refinement. For `NatPairAdd` no such coordinate exists and a
    /// common refinement may genuinely fail to exist, so we search the full
    /// factorization lattice and report failure with the offending pair.
    pub fn common_refinement(
        &self,
        a: &Factorization,
        b: &Factorization,
    ) -> Result<Factorization, MonoidError> {
        if a.target != b.target {
            return Err(MonoidError::TargetMismatch(
                self.show(&a.target),
                self.show(&b.target),
            ));
        }
        match &self.kind {
            MonoidKind::NatAdd | MonoidKind::DyadicGrid { .. } => {
                let total = match &a.target {
                    MonoidValue::Nat(n) | MonoidValue::Dyadic(n) => *n,
                    _ => unreachable!(),
                };
                let mut cuts: BTreeSet<u64> = BTreeSet::new();
                for f in [a, b] {
                    let mut sum = 0;
                    for p in &f.parts {
                        sum += match p {
                            MonoidValue::Nat(n) | MonoidValue::Dyadic(n) => *n,
                            _ => unreachable!(),
                        };
                        if sum < total {
                            cuts.insert(sum);
                        }
                    }
                }
                let mut parts = Vec::new();
                let mut prev = 0;
                for c in cuts.iter().chain(std::iter::once(&total)) {
                    if *c > prev {
                        parts.push(match self.kind {
                            MonoidKind::NatAdd => MonoidValue::Nat(c - prev),
                            _ => MonoidValue::Dyadic(c - prev),
                        });
                        prev = *c;
                    }
                }
                self.factorization(a.target.clone(), parts)
            }
            MonoidKind::FreeWords { .. } => {
                let MonoidValue::Word(w) = &a.target else { unreachable!() };
                let chars: Vec<char> = w.chars().collect();
                let mut cuts: BTreeSet<usize> = BTreeSet::new();
                for f in [a, b] {
                    let mut len = 0;
                    for p in &f.parts {
                        let MonoidValue::Word(pw) = p else { unreachable!() };
                        len += pw.chars().count();
                        if len < chars.len() {
                            cuts.insert(len);
                        }
                    }
                }
                let mut parts = Vec::new();
                let mut prev = 0;
                for c in cuts.iter().copied().chain(std::iter::once(chars.len())) {
                    if c > prev {
                        parts.push(MonoidValue::Word(chars[prev..c].iter().collect()));
                        prev = c;
                    }
                }
                self.factorization(a.target.clone(), parts)
            }
            MonoidKind::NatPairAdd => {
                // Exhaustive: smallest (by length, then lexicographically)
                // factorization refining both, if any.
                let mut candidates: Vec<Factorization> = self
                    .all_factorizations(&a.target)?
                    .into_iter()
                    .filter(|rho| {
                        self.refines(rho, a).map_or(false, |r| r.is_some())
                            && self.refines(rho, b).map_or(false, |r| r.is_some())
                    })
                    .collect();
                candidates.sort_by(|x, y| x.len().cmp(&y.len()).then(x.cmp(y)));
                candidates.into_iter().next().ok_or_else(|| {
                    MonoidError::NoCommonRefinement(
                        self.show_factorization(a),
                        self.show_factorization(b),
                    )
                })
            }
        }
    }

    /// An upper bound of `{s, t}` in the divisibility preorder, if one
    /// exists. For the additive monoids this is the (componentwise) max; for
    /// words an upper bound exists exactly when one argument is a prefix of
    /// the other.
    pub fn ore_bound(&self, s: &MonoidValue, t: &MonoidValue) -> Option<MonoidValue> {
        match (s, t) {
            (MonoidValue::Nat(x), MonoidValue::Nat(y)) => Some(MonoidValue::Nat(*x.max(y))),
            (MonoidValue::Dyadic(x), MonoidValue::Dyadic(y)) => {
                Some(MonoidValue::Dyadic(*x.max(y)))
            }
            (MonoidValue::Pair(x1, x2), MonoidValue::Pair(y1, y2)) => {
                Some(MonoidValue::Pair(*x1.max(y1), *x2.max(y2)))
            }
            (MonoidValue::Word(_), MonoidValue::Word(_)) => {
                if self.leq(s, t) {
                    Some(t.clone())
                } else if self.leq(t, s) {
                    Some(s.clone())
                } else {
                    None
                }
            }
            _ => panic!("monoid elements of mixed kinds"),
        }
    }

    /// A deterministic sample of elements of additive weight at most `bound`,
    /// for law checks. Includes the unit.
    pub fn sample(&self, bound: usize) -> Vec<MonoidValue> {
        match &self.kind {
            MonoidKind::NatAdd => (0..=bound as u64).map(MonoidValue::Nat).collect(),
            MonoidKind::DyadicGrid { .. } => {
                (0..=bound as u64).map(MonoidValue::Dyadic).collect()
            }
            MonoidKind::FreeWords { alphabet } => {
                let mut out = vec![String::new()];
                let mut frontier = vec![String::new()];
                for _ in 0..bound {
                    let mut next = Vec::new();
                    for w in &frontier {
                        for c in alphabet {
                            let mut e = w.clone();
                            e.push(*c);
                            next.push(e);
                        }
                    }
                    out.extend(next.iter().cloned());
                    frontier = next;
                }
                out.into_iter().map(MonoidValue::Word).collect()
            }
            MonoidKind::NatPairAdd => {
                let mut out = Vec::new();
                for m in 0..=bound as u64 {
                    for n in 0..=(bound as u64 - m) {
                        out.push(MonoidValue::Pair(m, n));
                    }
                }
                out
            }
        }
    }

    pub fn show(&self, v: &MonoidValue) -> String {
        match (v, &self.kind) {
            (MonoidValue::Nat(n), _) => n.to_string(),
            (MonoidValue::Dyadic(k), MonoidKind::DyadicGrid { level }) => {
                if *level == 0 {
                    k.to_string()
                } else {
                    format!("{k}/{}", 1u64 << level)
                }
            }
            (MonoidValue::Dyadic(k), _) => k.to_string(),
            (MonoidValue::Word(w), _) => {
                if w.is_empty() {
                    "ε".to_string()
                } else {
                    w.clone()
                }
            }
            (MonoidValue::Pair(m, n), _) => format!("({m},{n})"),
        }
    }

    pub fn show_factorization(&self, f: &Factorization) -> String {
        let parts: Vec<String> = f.parts.iter().map(|p| self.show(p)).collect();
        format!("({})", parts.join(","))
    }

    /// Parses an element in the same syntax `show` prints: a natural number,
    /// a `k/2^level` grid fraction (or plain `k` grid steps), a word, or a
    /// `(m,n)` pair.
    pub fn parse_value(&self, s: &str) -> Result<MonoidValue, MonoidError> {
        let s = s.trim();
        let err = || MonoidError::Parse(s.to_string());
        match &self.kind {
            MonoidKind::NatAdd => s.parse().map(MonoidValue::Nat).map_err(|_| err()),
            MonoidKind::DyadicGrid { level } => {
                if let Some((num, den)) = s.split_once('/') {
                    let num: u64 = num.trim().parse().map_err(|_| err())?;
                    let den: u64 = den.trim().parse().map_err(|_| err())?;
                    let scale = 1u64 << level;
                    if den == 0 || scale % den != 0 {
                        return Err(err());
                    }
                    Ok(MonoidValue::Dyadic(num * (scale / den)))
                } else {
                    s.parse().map(MonoidValue::Dyadic).map_err(|_| err())
                }
            }
            MonoidKind::FreeWords { alphabet } => {
                let w = if s == "ε" { "" } else { s };
                if w.chars().all(|c| alphabet.contains(&c)) {
                    Ok(MonoidValue::Word(w.to_string()))
                } else {
                    Err(err())
                }
            }
            MonoidKind::NatPairAdd => {
                let inner = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(err)?;
                let (m, n) = inner.split_once(',').ok_or_else(err)?;
                Ok(MonoidValue::Pair(
                    m.trim().parse().map_err(|_| err())?,
                    n.trim().parse().map_err(|_| err())?,
                ))
            }
        }
    }
}

impl fmt::Display for MonoidKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidKind::NatAdd => write!(f, "nat"),
            MonoidKind::DyadicGrid { level } => write!(f, "dyadic(level={level})"),
            MonoidKind::FreeWords { alphabet } => {
                write!(f, "words({})", alphabet.iter().collect::<String>())
            }
            MonoidKind::NatPairAdd => write!(f, "nat-pairs"),
        }
    }
}
