//! The categorical core: tensor categories whose unit object is initial.
//!
//! A [`TensorCategory`] implementation supplies objects, morphisms with exact
//! equality, composition, a tensor bifunctor with explicit associativity and
//! unit isomorphisms (nothing is suppressed — re-bracketing is always an
//! actual morphism), and the canonical morphism `E → A` out of the initial
//! unit. On top of that interface this module builds what every instance
//! shares:
//!
//! * canonical inclusions `A → A ⊠ B ← B` obtained by tensoring with the
//!   initial morphisms ([`canonical_inclusions`]),
//! * their n-ary generalization with slots ([`multi_inclusion`]),
//! * the definition of independence: a family `fᵢ : Bᵢ → A` is independent
//!   when some `h : B₁ ⊠ … ⊠ Bₙ → A` restricts to each `fᵢ` along the
//!   inclusions ([`verify_independence`]),
//! * commuting-diagram checking by exhaustive path comparison
//!   ([`diagram::check_diagram`]),
//! * a seeded, deterministic law suite exercising the pentagon, triangle,
//!   unit-compatibility and naturality conditions ([`suite::coherence_suite`]).
//!
//! n-fold tensor products are always read left-associated; the coherence
//! engine in [`coherence`] computes the unique structural isomorphism between
//! any two bracketings and is itself under test.

pub mod coherence;
pub mod diagram;
pub mod suite;

use std::fmt::Debug;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CatError {
    #[error("cannot compose: {0}")]
    NotComposable(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("degree bound exceeded: {0}")]
    DegreeOverflow(String),
    #[error("{0}")]
    Domain(String),
}

/// A tensor category with an initial unit, presented operationally.
///
/// Conventions, fixed once for every instance:
/// * `compose(g, f)` is `g ∘ f` — `f` acts first;
/// * `assoc(a, b, c)` is the isomorphism `A ⊠ (B ⊠ C) → (A ⊠ B) ⊠ C`;
/// * `lunit(a): E ⊠ A → A` and `runit(a): A ⊠ E → A`;
/// * `initial_mor(a)` is the unique morphism `E → A`.
///
/// Implementations must make morphism equality exact semantic equality
/// (equal source, target and underlying map), because every law below is
/// decided by `==`.
pub trait TensorCategory {
    type Obj: Clone + PartialEq + Debug;
    type Mor: Clone + PartialEq + Debug;

    const NAME: &'static str;

    fn source(m: &Self::Mor) -> Self::Obj;
    fn target(m: &Self::Mor) -> Self::Obj;
    fn identity(a: &Self::Obj) -> Self::Mor;
    fn compose(g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor, CatError>;
    /// Instance-level validity: the data genuinely is a morphism of this
    /// category (injectivity, isometry, measure preservation, functional
    /// preservation — whatever the instance demands).
    fn check_mor(m: &Self::Mor) -> Result<(), CatError>;

    fn unit() -> Self::Obj;
    fn tensor_obj(a: &Self::Obj, b: &Self::Obj) -> Self::Obj;
    fn tensor_mor(f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor, CatError>;
    fn assoc(a: &Self::Obj, b: &Self::Obj, c: &Self::Obj) -> Self::Mor;
    fn assoc_inv(a: &Self::Obj, b: &Self::Obj, c: &Self::Obj) -> Self::Mor;
    fn lunit(a: &Self::Obj) -> Self::Mor;
    fn lunit_inv(a: &Self::Obj) -> Self::Mor;
    fn runit(a: &Self::Obj) -> Self::Mor;
    fn runit_inv(a: &Self::Obj) -> Self::Mor;
    fn initial_mor(a: &Self::Obj) -> Self::Mor;
}

/// Left-associated tensor of a list of objects; the empty list is the unit.
pub fn tensor_all<C: TensorCategory>(objs: &[C::Obj]) -> C::Obj {
    match objs.split_first() {
        None => C::unit(),
        Some((first, rest)) => {
            rest.iter().fold(first.clone(), |acc, o| C::tensor_obj(&acc, o))
        }
    }
}

/// Left-associated tensor of a list of morphisms.
pub fn tensor_all_mor<C: TensorCategory>(mors: &[C::Mor]) -> Result<C::Mor, CatError> {
    let (first, rest) = mors
        .split_first()
        .ok_or_else(|| CatError::Shape("tensor of an empty morphism list".into()))?;
    rest.iter().try_fold(first.clone(), |acc, m| C::tensor_mor(&acc, m))
}

/// Composes a chain written in application order: `pipeline([f, g, h]) = h∘g∘f`.
pub fn pipeline<C: TensorCategory>(stages: &[C::Mor]) -> Result<C::Mor, CatError> {
    let (first, rest) = stages
        .split_first()
        .ok_or_else(|| CatError::Shape("empty composition chain".into()))?;
    rest.iter().try_fold(first.clone(), |acc, m| C::compose(m, &acc))
}

/// The two canonical inclusions `ι¹: A → A ⊠ B` and `ι²: B → A ⊠ B`,
/// built from the unit constraints and the initial morphisms:
/// `ι¹ = (id_A ⊠ 1_B) ∘ r_A⁻¹` and `ι² = (1_A ⊠ id_B) ∘ l_B⁻¹`.
pub fn canonical_inclusions<C: TensorCategory>(
    a: &C::Obj,
    b: &C::Obj,
) -> Result<(C::Mor, C::Mor), CatError> {
    let i1 = C::compose(&C::tensor_mor(&C::identity(a), &C::initial_mor(b))?, &C::runit_inv(a))?;
    let i2 = C::compose(&C::tensor_mor(&C::initial_mor(a), &C::identity(b))?, &C::lunit_inv(b))?;
    Ok((i1, i2))
}

/// The slot inclusion `B_{i₁} ⊠ … ⊠ B_{i_k} → B_0 ⊠ … ⊠ B_{n−1}` that feeds
/// the selected factors through identities and fills every omitted slot with
/// the initial morphism out of the unit. Both sides are left-associated;
/// `indices` must be strictly increasing and in range. Selecting nothing
/// gives the inclusion of the empty tensor, `E → B_0 ⊠ … ⊠ B_{n−1}`.
pub fn multi_inclusion<C: TensorCategory>(
    objs: &[C::Obj],
    indices: &[usize],
) -> Result<C::Mor, CatError> {
    if objs.is_empty() {
        return Err(CatError::Shape("multi_inclusion needs at least one object".into()));
    }
    if indices.windows(2).any(|w| w[0] >= w[1])
        || indices.last().is_some_and(|&last| last >= objs.len())
    {
        return Err(CatError::Shape(format!(
            "indices {indices:?} must be strictly increasing and below {}",
            objs.len()
        )));
    }
    use coherence::ObjTree;
    let selected: Vec<C::Obj> = indices.iter().map(|&i| objs[i].clone()).collect();
    // Tensor of per-slot morphisms: identity on selected slots, the initial
    // morphism on omitted ones.
    let slot_mors: Vec<C::Mor> = objs
        .iter()
        .enumerate()
        .map(|(j, o)| if indices.contains(&j) { C::identity(o) } else { C::initial_mor(o) })
        .collect();
    let filled = tensor_all_mor::<C>(&slot_mors)?;
    // Structural iso from the packed source to the slotted source (units in
    // the omitted positions).
    let slot_tree = ObjTree::left_assoc(
        &objs
            .iter()
            .enumerate()
            .map(|(j, o)| {
                if indices.contains(&j) {
                    ObjTree::Leaf(o.clone())
                } else {
                    ObjTree::Unit
                }
            })
            .collect::<Vec<_>>(),
    );
    let packed_tree = ObjTree::left_assoc(
        &selected.iter().map(|o| ObjTree::Leaf(o.clone())).collect::<Vec<_>>(),
    );
    let spread = coherence::coherence_iso::<C>(&packed_tree, &slot_tree)?;
    C::compose(&filled, &spread)
}

/// Checks that `h` exhibits the family `fs` as independent: all `fᵢ` must
/// share a target `A`, `h` must run `B₀ ⊠ … ⊠ B_{n−1} → A`, be a valid
/// morphism, and satisfy `h ∘ ι^{i} = fᵢ` for every `i`.
pub fn verify_independence<C: TensorCategory>(
    fs: &[C::Mor],
    h: &C::Mor,
) -> Result<bool, CatError> {
    if fs.is_empty() {
        return Err(CatError::Shape("independence of an empty family".into()));
    }
    let a = C::target(&fs[0]);
    if fs.iter().any(|f| C::target(f) != a) {
        return Err(CatError::Shape("family members have different targets".into()));
    }
    let sources: Vec<C::Obj> = fs.iter().map(C::source).collect();
    if C::source(h) != tensor_all::<C>(&sources) {
        return Err(CatError::Shape(
            "h must start at the tensor of the family's sources".into(),
        ));
    }
    if C::target(h) != a {
        return Err(CatError::Shape("h must end at the family's common target".into()));
    }
    C::check_mor(h)?;
    for i in 0..fs.len() {
        let inc = multi_inclusion::<C>(&sources, &[i])?;
        if C::compose(h, &inc)? != fs[i] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Instance-specific search for the canonical mediating morphism of a family.
///
/// `Ok(None)` means the family is *not* independent; `Ok(Some(h))` always
/// satisfies [`verify_independence`]. Categories where mediating morphisms
/// are non-unique still return one canonical choice.
pub trait FindIndependence: TensorCategory {
    fn find_independence_morphism(fs: &[Self::Mor]) -> Result<Option<Self::Mor>, CatError>;
}

/// Deterministic object/morphism generation for the seeded law suites.
pub trait InstanceGen: TensorCategory {
    fn gen_obj(rng: &mut rand_chacha::ChaCha8Rng) -> Self::Obj;
    fn gen_mor(rng: &mut rand_chacha::ChaCha8Rng) -> Self::Mor;
    /// A random morphism whose source is the given object (used to build
    /// composable pairs without assuming anything about hom-sets).
    fn gen_mor_from(source: &Self::Obj, rng: &mut rand_chacha::ChaCha8Rng) -> Self::Mor;
}
