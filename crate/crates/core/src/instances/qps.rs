//! Algebraic probability spaces: word algebras carrying truncated moment
//! functionals, one tensor category per universal product.
//!
//! An object is a list of *legs*, each leg a [`MomentFunctional`] — a finitely
//! generated algebra of words together with exact rational moments up to a
//! per-leg degree bound. The joint state of a multi-leg object is the chosen
//! universal product of the leg states, so the same object data yields four
//! different categories: [`QpsTensor`], [`QpsFree`], [`QpsBoolean`] and
//! [`QpsMonotone`], selected by a zero-sized [`ProductPolicy`].
//!
//! A morphism maps each source generator to an element of the target word
//! algebra and must preserve the joint state on every source word within the
//! degree bounds. Composition substitutes symbolically and never fails;
//! degree truncation only bites when a functional is *evaluated*. The tensor
//! product concatenates legs, which is strictly associative and strictly
//! unital, so all structural isomorphisms are identities — coherence here is
//! trivial by design, and the interesting content sits in `check_mor` and in
//! independence: a family of morphisms into a common target is independent
//! exactly when their images commute as required and the joint state
//! factorizes over the product, which is the quantum-probabilistic notion of
//! independence attached to each product.

use std::collections::{BTreeMap, BTreeSet};
use std::marker::PhantomData;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::catcore::{canonical_inclusions, CatError, FindIndependence, InstanceGen, TensorCategory};
use crate::rat::{rat, Rat};
use crate::uniprod::{words_up_to, JointFunctional, MomentFunctional, ProductKind, UniprodError};
use crate::words::{normalize, Element, Letter, Word};

// ---------------------------------------------------------------------------
// Product policies
// ---------------------------------------------------------------------------

/// Static selection of the universal product used for joint states.
///
/// `COMMUTING` is the word-algebra normal form: under the tensor product,
/// letters on distinct legs commute; under the other three they do not.
/// `UNIT_IMAGES` says whether generator images may carry a scalar (empty
/// word) component — the boolean and monotone products live on algebras
/// without unit, so their morphisms must not introduce one.
pub trait ProductPolicy: 'static {
    const KIND: ProductKind;
    const COMMUTING: bool;
    const UNIT_IMAGES: bool;
    const NAME: &'static str;
}

/// Tensor product of states; distinct legs commute.
pub struct TensorAlg;

/// Free product of states; no commutation between legs.
pub struct FreeProd;

/// Boolean product of states; non-unital morphisms only.
pub struct BoolProd;

/// Monotone product of states; non-unital morphisms only.
pub struct MonoProd;

impl ProductPolicy for TensorAlg {
    const KIND: ProductKind = ProductKind::Tensor;
    const COMMUTING: bool = true;
    const UNIT_IMAGES: bool = true;
    const NAME: &'static str = "qps-tensor";
}

impl ProductPolicy for FreeProd {
    const KIND: ProductKind = ProductKind::Free;
    const COMMUTING: bool = false;
    const UNIT_IMAGES: bool = true;
    const NAME: &'static str = "qps-free";
}

impl ProductPolicy for BoolProd {
    const KIND: ProductKind = ProductKind::Boolean;
    const COMMUTING: bool = false;
    const UNIT_IMAGES: bool = false;
    const NAME: &'static str = "qps-boolean";
}

impl ProductPolicy for MonoProd {
    const KIND: ProductKind = ProductKind::Monotone;
    const COMMUTING: bool = false;
    const UNIT_IMAGES: bool = false;
    const NAME: &'static str = "qps-monotone";
}

// ---------------------------------------------------------------------------
// Objects and morphisms
// ---------------------------------------------------------------------------

/// A finite list of legs; the joint state is the policy's product of the leg
/// states. The empty list is the tensor unit (the scalars with their unique
/// state).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QpsObj {
    pub legs: Vec<MomentFunctional>,
}

impl QpsObj {
    /// The tensor unit: no legs, only scalars.
    pub fn empty() -> QpsObj {
        QpsObj { legs: Vec::new() }
    }

    pub fn single(phi: MomentFunctional) -> QpsObj {
        QpsObj { legs: vec![phi] }
    }
}

/// A morphism of algebraic probability spaces, recorded by the image of each
/// source generator: `images[leg][sym]` is an element of the target word
/// algebra. Equality is exact equality of the data, so two composites agree
/// iff they substitute identically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QpsMor {
    pub src: QpsObj,
    pub dst: QpsObj,
    pub images: Vec<Vec<Element>>,
}

/// The category of algebraic probability spaces under the product chosen by
/// `P`. Never constructed; all structure lives in associated functions.
pub struct Qps<P: ProductPolicy>(PhantomData<P>);

/// Puts an element's basis words into the normal form of the given
/// commutation convention, merging coefficients of words that collide.
pub fn normal_form(e: &Element, commuting: bool) -> Element {
    let mut out = Element::zero();
    for (w, c) in &e.terms {
        out = out.add(&Element::word(normalize(w, commuting)).scale(c));
    }
    out
}

fn fmt_word(obj: &QpsObj, w: &Word) -> String {
    if w.is_empty() {
        return "ε".into();
    }
    w.iter()
        .map(|l| {
            let name = obj
                .legs
                .get(l.leg)
                .and_then(|phi| phi.symbols.get(l.sym))
                .cloned()
                .unwrap_or_else(|| format!("?{}", l.sym));
            format!("{name}#{}", l.leg)
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Every word over the object's generators whose per-leg letter count stays
/// within that leg's degree bound and whose total length stays within the
/// probe cap: the deepest single leg's bound, plus one extra letter on
/// multi-leg objects so that cross-leg correlations enter the probe set.
/// Words are deduplicated by normal form; the empty word is omitted (it is
/// preserved by construction).
///
/// The total-length cap keeps morphism checks on many-leg objects tractable:
/// without it the probe set grows multinomially with the leg count, and the
/// substituted image of each long word grows exponentially on top of that.
/// Mixed moments beyond the cap are still exercised by the law suites, which
/// compare morphism data exactly instead of sampling evaluations.
fn bounded_words(obj: &QpsObj, commuting: bool) -> Vec<Word> {
    let caps: Vec<usize> = obj.legs.iter().map(|phi| phi.degree).collect();
    let deepest = caps.iter().copied().max().unwrap_or(0);
    let probe = if obj.legs.len() > 1 { deepest + 1 } else { deepest };
    let mut seen: BTreeSet<Word> = BTreeSet::new();
    let mut frontier: Vec<Word> = vec![Vec::new()];
    let mut out = Vec::new();
    while let Some(w) = frontier.pop() {
        if w.len() == probe {
            continue;
        }
        let mut counts = vec![0usize; obj.legs.len()];
        for l in &w {
            counts[l.leg] += 1;
        }
        for (leg, phi) in obj.legs.iter().enumerate() {
            if counts[leg] == caps[leg] {
                continue;
            }
            for sym in 0..phi.symbols.len() {
                let mut e = w.clone();
                e.push(Letter { leg, sym });
                let e = normalize(&e, commuting);
                if seen.insert(e.clone()) {
                    out.push(e.clone());
                    frontier.push(e);
                }
            }
        }
    }
    out
}

impl<P: ProductPolicy> Qps<P> {
    /// The joint state of an object: the policy's product of its leg states.
    pub fn joint(obj: &QpsObj) -> JointFunctional {
        JointFunctional { kind: P::KIND, factors: obj.legs.clone() }
    }

    pub fn eval_word(obj: &QpsObj, w: &Word) -> Result<Rat, UniprodError> {
        Self::joint(obj).eval(w)
    }

    pub fn eval_element(obj: &QpsObj, e: &Element) -> Result<Rat, UniprodError> {
        let joint = Self::joint(obj);
        e.apply(|w| joint.eval(w))
    }

    /// The image of a basis word under a morphism: the product of the
    /// generator images in the target algebra.
    pub fn substitute(m: &QpsMor, w: &Word) -> Element {
        let mut out = Element::one();
        for l in w {
            out = out.mul(&m.images[l.leg][l.sym], P::COMMUTING);
        }
        out
    }

    /// Linear extension of [`substitute`](Self::substitute) to elements.
    pub fn push_element(m: &QpsMor, e: &Element) -> Element {
        let mut out = Element::zero();
        for (w, c) in &e.terms {
            out = out.add(&Self::substitute(m, w).scale(c));
        }
        out
    }
}

impl<P: ProductPolicy> TensorCategory for Qps<P> {
    type Obj = QpsObj;
    type Mor = QpsMor;

    const NAME: &'static str = P::NAME;

    fn source(m: &QpsMor) -> QpsObj {
        m.src.clone()
    }

    fn target(m: &QpsMor) -> QpsObj {
        m.dst.clone()
    }

    fn identity(a: &QpsObj) -> QpsMor {
        let images = a
            .legs
            .iter()
            .enumerate()
            .map(|(leg, phi)| {
                (0..phi.symbols.len())
                    .map(|sym| Element::word(vec![Letter { leg, sym }]))
                    .collect()
            })
            .collect();
        QpsMor { src: a.clone(), dst: a.clone(), images }
    }

    fn compose(g: &QpsMor, f: &QpsMor) -> Result<QpsMor, CatError> {
        if f.dst != g.src {
            return Err(CatError::NotComposable(format!(
                "morphisms do not meet: intermediate objects with {} and {} legs differ",
                f.dst.legs.len(),
                g.src.legs.len()
            )));
        }
        let images = f
            .images
            .iter()
            .map(|leg| leg.iter().map(|e| Self::push_element(g, e)).collect())
            .collect();
        Ok(QpsMor { src: f.src.clone(), dst: g.dst.clone(), images })
    }

    fn check_mor(m: &QpsMor) -> Result<(), CatError> {
        // Shape and normal-form pass over the substitution table.
        if m.images.len() != m.src.legs.len() {
            return Err(CatError::Shape(format!(
                "image table covers {} legs, but the source has {}",
                m.images.len(),
                m.src.legs.len()
            )));
        }
        for (leg, (phi, imgs)) in m.src.legs.iter().zip(&m.images).enumerate() {
            if imgs.len() != phi.symbols.len() {
                return Err(CatError::Shape(format!(
                    "leg {leg} has {} generators but {} images",
                    phi.symbols.len(),
                    imgs.len()
                )));
            }
            for (sym, img) in imgs.iter().enumerate() {
                for w in img.terms.keys() {
                    if w.is_empty() && !P::UNIT_IMAGES {
                        return Err(CatError::InvalidMorphism(format!(
                            "image of `{}` has a scalar component, which the {} product forbids",
                            phi.symbols[sym],
                            P::KIND.name()
                        )));
                    }
                    if *w != normalize(w, P::COMMUTING) {
                        return Err(CatError::InvalidMorphism(format!(
                            "image of `{}` is not in the target's normal form",
                            phi.symbols[sym]
                        )));
                    }
                    for l in w {
                        let in_range = l.leg < m.dst.legs.len()
                            && l.sym < m.dst.legs[l.leg].symbols.len();
                        if !in_range {
                            return Err(CatError::Shape(format!(
                                "image of `{}` uses letter {}/{} outside the target",
                                phi.symbols[sym],
                                l.leg,
                                l.sym
                            )));
                        }
                    }
                }
            }
        }
        // Under a commuting product, generators on distinct source legs are
        // equal in either order, so their images must commute in the target
        // for substitution to be well defined.
        if P::COMMUTING {
            for l1 in 0..m.images.len() {
                for l2 in l1 + 1..m.images.len() {
                    for (s1, a) in m.images[l1].iter().enumerate() {
                        for (s2, b) in m.images[l2].iter().enumerate() {
                            if a.mul(b, true) != b.mul(a, true) {
                                return Err(CatError::InvalidMorphism(format!(
                                    "images of `{}` (leg {l1}) and `{}` (leg {l2}) do not commute",
                                    m.src.legs[l1].symbols[s1], m.src.legs[l2].symbols[s2]
                                )));
                            }
                        }
                    }
                }
            }
        }
        // State preservation on every in-bounds source word.
        let src_joint = Self::joint(&m.src);
        let dst_joint = Self::joint(&m.dst);
        for w in bounded_words(&m.src, P::COMMUTING) {
            let lhs = src_joint
                .eval(&w)
                .map_err(|e| CatError::Domain(format!("source state: {e}")))?;
            let image = Self::substitute(m, &w);
            let rhs = image.apply(|v| dst_joint.eval(v)).map_err(|e| {
                CatError::InvalidMorphism(format!(
                    "image of `{}` cannot be evaluated in the target: {e}",
                    fmt_word(&m.src, &w)
                ))
            })?;
            if lhs != rhs {
                return Err(CatError::InvalidMorphism(format!(
                    "state not preserved on `{}`: source gives {lhs}, image gives {rhs}",
                    fmt_word(&m.src, &w)
                )));
            }
        }
        Ok(())
    }

    fn unit() -> QpsObj {
        QpsObj::empty()
    }

    fn tensor_obj(a: &QpsObj, b: &QpsObj) -> QpsObj {
        let mut legs = a.legs.clone();
        legs.extend(b.legs.iter().cloned());
        QpsObj { legs }
    }

    fn tensor_mor(f: &QpsMor, g: &QpsMor) -> Result<QpsMor, CatError> {
        let offset = f.dst.legs.len();
        let map: Vec<usize> = (0..g.dst.legs.len()).map(|m| m + offset).collect();
        let mut images = f.images.clone();
        images.extend(
            g.images
                .iter()
                .map(|leg| leg.iter().map(|e| e.relabel_legs(&map, P::COMMUTING)).collect()),
        );
        Ok(QpsMor {
            src: Self::tensor_obj(&f.src, &g.src),
            dst: Self::tensor_obj(&f.dst, &g.dst),
            images,
        })
    }

    // Leg lists concatenate strictly, so every structural isomorphism is an
    // identity on the nose.
    fn assoc(a: &QpsObj, b: &QpsObj, c: &QpsObj) -> QpsMor {
        Self::identity(&Self::tensor_obj(&Self::tensor_obj(a, b), c))
    }

    fn assoc_inv(a: &QpsObj, b: &QpsObj, c: &QpsObj) -> QpsMor {
        Self::assoc(a, b, c)
    }

    fn lunit(a: &QpsObj) -> QpsMor {
        Self::identity(a)
    }

    fn lunit_inv(a: &QpsObj) -> QpsMor {
        Self::identity(a)
    }

    fn runit(a: &QpsObj) -> QpsMor {
        Self::identity(a)
    }

    fn runit_inv(a: &QpsObj) -> QpsMor {
        Self::identity(a)
    }

    fn initial_mor(a: &QpsObj) -> QpsMor {
        QpsMor { src: QpsObj::empty(), dst: a.clone(), images: Vec::new() }
    }
}

impl<P: ProductPolicy> FindIndependence for Qps<P> {
    /// The mediating morphism is forced: it must restrict to `fᵢ` on slot
    /// `i`, so its substitution table is the concatenation of the family's
    /// tables. The family is independent iff that table is a valid morphism —
    /// images across slots commute as the product requires and the joint
    /// state factorizes.
    fn find_independence_morphism(fs: &[QpsMor]) -> Result<Option<QpsMor>, CatError> {
        let first =
            fs.first().ok_or_else(|| CatError::Shape("independence of an empty family".into()))?;
        if fs.iter().any(|f| f.dst != first.dst) {
            return Err(CatError::Shape("family members have different targets".into()));
        }
        let mut src = QpsObj::empty();
        let mut images = Vec::new();
        for f in fs {
            src = Self::tensor_obj(&src, &f.src);
            images.extend(f.images.iter().cloned());
        }
        let h = QpsMor { src, dst: first.dst.clone(), images };
        match Self::check_mor(&h) {
            Ok(()) => Ok(Some(h)),
            Err(CatError::InvalidMorphism(_)) => Ok(None),
            Err(e) => Err(e),
        }
    }
}

// ---------------------------------------------------------------------------
// Deterministic generation
// ---------------------------------------------------------------------------

fn random_functional(rng: &mut ChaCha8Rng) -> MomentFunctional {
    let syms = rng.gen_range(1..=2usize);
    let names: Vec<String> = ["x", "y"][..syms].iter().map(|s| s.to_string()).collect();
    let degree = rng.gen_range(1..=2usize);
    let values = words_up_to(syms, degree)
        .into_iter()
        .map(|w| (w, rat(rng.gen_range(-2..=2), rng.gen_range(1..=2))))
        .collect();
    MomentFunctional::new(names, degree, values).expect("generated table is complete")
}

/// A small random element of the target algebra: usually one scaled letter,
/// sometimes plus a scalar (when the policy allows units), sometimes zero.
fn random_image<P: ProductPolicy>(dst: &QpsObj, rng: &mut ChaCha8Rng) -> Element {
    let mut e = Element::zero();
    if !dst.legs.is_empty() && rng.gen_bool(0.9) {
        let leg = rng.gen_range(0..dst.legs.len());
        let sym = rng.gen_range(0..dst.legs[leg].symbols.len());
        let mut c = rng.gen_range(-2..=2i64);
        if c == 0 {
            c = 1;
        }
        e = e.add(&Element::word(vec![Letter { leg, sym }]).scale(&rat(c, 1)));
    }
    if P::UNIT_IMAGES && rng.gen_bool(0.25) {
        e = e.add(&Element::scalar(rat(rng.gen_range(-1..=1), 2)));
    }
    e
}

/// Builds a single-leg source by pulling the target state back through the
/// images: the source table is *defined* as the evaluation of the
/// substituted words, so the morphism preserves states by construction.
/// Returns `None` when a substituted word overflows the target bounds.
fn pullback_single_leg<P: ProductPolicy>(
    dst: &QpsObj,
    degree: usize,
    images: Vec<Element>,
) -> Option<QpsMor> {
    let syms = images.len();
    let names: Vec<String> = ["a", "b"][..syms].iter().map(|s| s.to_string()).collect();
    let joint = JointFunctional { kind: P::KIND, factors: dst.legs.clone() };
    let mut values = BTreeMap::new();
    for w in words_up_to(syms, degree) {
        let mut img = Element::one();
        for &s in &w {
            img = img.mul(&images[s], P::COMMUTING);
        }
        let v = img.apply(|cw| joint.eval(cw)).ok()?;
        values.insert(w, v);
    }
    let phi = MomentFunctional::new(names, degree, values).ok()?;
    Some(QpsMor { src: QpsObj::single(phi), dst: dst.clone(), images: vec![images] })
}

impl<P: ProductPolicy> InstanceGen for Qps<P> {
    fn gen_obj(rng: &mut ChaCha8Rng) -> QpsObj {
        let legs = rng.gen_range(0..=2usize);
        QpsObj { legs: (0..legs).map(|_| random_functional(rng)).collect() }
    }

    fn gen_mor(rng: &mut ChaCha8Rng) -> QpsMor {
        for _ in 0..20 {
            let dst = Self::gen_obj(rng);
            let syms = rng.gen_range(1..=2usize);
            let degree = rng.gen_range(1..=2usize);
            let images: Vec<Element> =
                (0..syms).map(|_| random_image::<P>(&dst, rng)).collect();
            if let Some(m) = pullback_single_leg::<P>(&dst, degree, images) {
                if Self::check_mor(&m).is_ok() {
                    return m;
                }
            }
        }
        // Zero images against the vanishing state always work.
        let dst = Self::gen_obj(rng);
        let phi = MomentFunctional::counit(vec!["a".to_string()], 1);
        QpsMor { src: QpsObj::single(phi), dst, images: vec![vec![Element::zero()]] }
    }

    fn gen_mor_from(source: &QpsObj, rng: &mut ChaCha8Rng) -> QpsMor {
        let other = Self::gen_obj(rng);
        match rng.gen_range(0..3u8) {
            0 => Self::identity(source),
            1 => canonical_inclusions::<Self>(source, &other).expect("inclusion exists").0,
            _ => canonical_inclusions::<Self>(&other, source).expect("inclusion exists").1,
        }
    }
}

pub type QpsTensor = Qps<TensorAlg>;
pub type QpsFree = Qps<FreeProd>;
pub type QpsBoolean = Qps<BoolProd>;
pub type QpsMonotone = Qps<MonoProd>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::suite::coherence_suite;
    use crate::catcore::verify_independence;

    fn table(symbols: &[&str], degree: usize, entries: &[(&[usize], Rat)]) -> MomentFunctional {
        let values = entries.iter().map(|(w, v)| (w.to_vec(), v.clone())).collect();
        MomentFunctional::new(symbols.iter().map(|s| s.to_string()).collect(), degree, values)
            .unwrap()
    }

    fn letter(leg: usize, sym: usize) -> Element {
        Element::word(vec![Letter { leg, sym }])
    }

    #[test]
    fn canonical_inclusion_is_a_slot_embedding() {
        let a = QpsObj::single(table(&["x", "y"], 1, &[(&[0], rat(1, 2)), (&[1], rat(-1, 1))]));
        let b = QpsObj::single(table(&["z"], 1, &[(&[0], rat(1, 3))]));
        let (i1, i2) = canonical_inclusions::<QpsTensor>(&a, &b).unwrap();
        let ab = QpsTensor::tensor_obj(&a, &b);
        assert_eq!(i1.src, a);
        assert_eq!(i1.dst, ab);
        assert_eq!(i1.images, vec![vec![letter(0, 0), letter(0, 1)]]);
        assert_eq!(i2.src, b);
        assert_eq!(i2.images, vec![vec![letter(1, 0)]]);
        QpsTensor::check_mor(&i1).unwrap();
        QpsTensor::check_mor(&i2).unwrap();
    }

    fn slots_are_independent<P: ProductPolicy>() {
        let a = QpsObj::single(table(&["x"], 2, &[(&[0], rat(1, 2)), (&[0, 0], rat(1, 3))]));
        let b = QpsObj::single(table(&["z"], 1, &[(&[0], rat(-1, 2))]));
        let (f1, f2) = canonical_inclusions::<Qps<P>>(&a, &b).unwrap();
        let h = Qps::<P>::find_independence_morphism(&[f1.clone(), f2.clone()])
            .unwrap()
            .expect("slot embeddings are independent");
        assert!(verify_independence::<Qps<P>>(&[f1, f2], &h).unwrap());
        assert_eq!(h, Qps::<P>::identity(&Qps::<P>::tensor_obj(&a, &b)));
    }

    #[test]
    fn tensored_targets_make_slots_independent_under_every_product() {
        slots_are_independent::<TensorAlg>();
        slots_are_independent::<FreeProd>();
        slots_are_independent::<BoolProd>();
        slots_are_independent::<MonoProd>();
    }

    #[test]
    fn same_leg_images_fail_commutation() {
        let target = QpsObj::single(table(
            &["x", "y"],
            2,
            &[
                (&[0], rat(1, 2)),
                (&[1], rat(1, 3)),
                (&[0, 0], rat(1, 1)),
                (&[0, 1], rat(0, 1)),
                (&[1, 0], rat(0, 1)),
                (&[1, 1], rat(1, 1)),
            ],
        ));
        let f1 = QpsMor {
            src: QpsObj::single(table(&["a"], 1, &[(&[0], rat(1, 2))])),
            dst: target.clone(),
            images: vec![vec![letter(0, 0)]],
        };
        let f2 = QpsMor {
            src: QpsObj::single(table(&["a"], 1, &[(&[0], rat(1, 3))])),
            dst: target,
            images: vec![vec![letter(0, 1)]],
        };
        QpsTensor::check_mor(&f1).unwrap();
        QpsTensor::check_mor(&f2).unwrap();
        // x and y sit on the same target leg, so they cannot commute and the
        // pair is not independent under the tensor product.
        assert_eq!(QpsTensor::find_independence_morphism(&[f1, f2]).unwrap(), None);
    }

    #[test]
    fn factorization_failure_yields_none() {
        let target =
            QpsObj::single(table(&["x"], 2, &[(&[0], rat(1, 1)), (&[0, 0], rat(0, 1))]));
        let f = QpsMor {
            src: QpsObj::single(table(&["b"], 1, &[(&[0], rat(1, 1))])),
            dst: target,
            images: vec![vec![letter(0, 0)]],
        };
        QpsTensor::check_mor(&f).unwrap();
        // Both slots substitute to x, which self-commutes, but the joint
        // state would need φ(x²) = φ(x)² = 1 while the target has φ(x²) = 0.
        assert_eq!(QpsTensor::find_independence_morphism(&[f.clone(), f]).unwrap(), None);
    }

    #[test]
    fn composition_substitutes_symbolically_and_truncation_only_bites_at_eval() {
        let c = QpsObj::single(table(&["x"], 2, &[(&[0], rat(1, 2)), (&[0, 0], rat(1, 3))]));
        // u ↦ x and v ↦ ½ + x; the source table is the pullback.
        let g = QpsMor {
            src: QpsObj::single(table(
                &["u", "v"],
                2,
                &[
                    (&[0], rat(1, 2)),
                    (&[1], rat(1, 1)),
                    (&[0, 0], rat(1, 3)),
                    (&[0, 1], rat(7, 12)),
                    (&[1, 0], rat(7, 12)),
                    (&[1, 1], rat(13, 12)),
                ],
            )),
            dst: c.clone(),
            images: vec![vec![letter(0, 0), letter(0, 0).add(&Element::scalar(rat(1, 2)))]],
        };
        QpsTensor::check_mor(&g).unwrap();
        let f = QpsMor {
            src: QpsObj::single(table(&["a"], 1, &[(&[0], rat(3, 2))])),
            dst: g.src.clone(),
            images: vec![vec![letter(0, 0).add(&letter(0, 1))]],
        };
        QpsTensor::check_mor(&f).unwrap();

        let gf = QpsTensor::compose(&g, &f).unwrap();
        let a_word = vec![Letter { leg: 0, sym: 0 }];
        // Substituting through the composite equals substituting twice.
        assert_eq!(
            QpsTensor::substitute(&gf, &a_word),
            QpsTensor::push_element(&g, &QpsTensor::substitute(&f, &a_word)),
        );
        assert_eq!(
            QpsTensor::eval_element(&c, &QpsTensor::substitute(&gf, &a_word)).unwrap(),
            rat(3, 2),
        );

        // `aa` overflows the source bound, yet its symbolic image is still a
        // perfectly evaluable element of the target.
        let aa = vec![Letter { leg: 0, sym: 0 }, Letter { leg: 0, sym: 0 }];
        assert!(matches!(
            QpsTensor::eval_word(&gf.src, &aa),
            Err(UniprodError::DegreeOverflow { .. })
        ));
        let pushed = QpsTensor::substitute(&gf, &aa);
        assert_eq!(QpsTensor::eval_element(&c, &pushed).unwrap(), rat(31, 12));
    }

    #[test]
    fn non_unital_products_reject_scalar_components() {
        let dst = QpsObj::single(table(&["x"], 1, &[(&[0], rat(1, 2))]));
        let m = QpsMor {
            src: QpsObj::single(table(&["b"], 1, &[(&[0], rat(1, 1))])),
            dst,
            images: vec![vec![letter(0, 0).add(&Element::scalar(rat(1, 2)))]],
        };
        assert!(matches!(QpsBoolean::check_mor(&m), Err(CatError::InvalidMorphism(_))));
        assert!(matches!(QpsMonotone::check_mor(&m), Err(CatError::InvalidMorphism(_))));
        // The tensor product is unital, so the very same table is fine there.
        QpsTensor::check_mor(&m).unwrap();
    }

    #[test]
    fn normal_form_merges_colliding_words() {
        let w1 = vec![Letter { leg: 1, sym: 0 }, Letter { leg: 0, sym: 0 }];
        let w2 = vec![Letter { leg: 0, sym: 0 }, Letter { leg: 1, sym: 0 }];
        let e = Element::word(w1).add(&Element::word(w2));
        let n = normal_form(&e, true);
        assert_eq!(n.terms.len(), 1);
        assert_eq!(n.terms.values().next().unwrap(), &rat(2, 1));
        assert_eq!(normal_form(&e, false), e);
    }

    #[test]
    fn law_suite_passes_for_every_product() {
        for (seed, report) in [
            (29, coherence_suite::<QpsTensor>(29, 20)),
            (31, coherence_suite::<QpsFree>(31, 20)),
            (37, coherence_suite::<QpsBoolean>(37, 20)),
            (41, coherence_suite::<QpsMonotone>(41, 20)),
        ] {
            assert!(report.passed(), "seed {seed}: {}", report.render_text());
        }
    }
}
