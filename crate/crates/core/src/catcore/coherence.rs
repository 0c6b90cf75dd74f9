//! Structural isomorphisms between bracketings.
//!
//! A formal tensor expression is a binary tree whose leaves are objects or
//! the unit. Any two trees with the same left-to-right sequence of non-unit
//! leaves are connected by a unique isomorphism built from the associativity
//! and unit constraints; this module computes it, together with its inverse,
//! by normalizing both trees to the left-associated, unit-free form and
//! splicing the normalization morphisms.
//!
//! Everything downstream that "re-brackets" — n-ary inclusions, the
//! re-associating coproducts of the limit construction — goes through this
//! engine, so the law suite exercises it heavily.

use super::{CatError, TensorCategory};

/// A formal tensor expression over objects of a category.
#[derive(Clone, Debug, PartialEq)]
pub enum ObjTree<O> {
    Unit,
    Leaf(O),
    Pair(Box<ObjTree<O>>, Box<ObjTree<O>>),
}

impl<O: Clone + PartialEq> ObjTree<O> {
    pub fn pair(l: ObjTree<O>, r: ObjTree<O>) -> ObjTree<O> {
        ObjTree::Pair(Box::new(l), Box::new(r))
    }

    /// Left-associated combination of subtrees; empty input is the unit.
    pub fn left_assoc(items: &[ObjTree<O>]) -> ObjTree<O> {
        match items.split_first() {
            None => ObjTree::Unit,
            Some((first, rest)) => rest
                .iter()
                .fold(first.clone(), |acc, t| ObjTree::pair(acc, t.clone())),
        }
    }

    /// Leaf objects, left to right, units skipped.
    pub fn frontier(&self) -> Vec<O> {
        match self {
            ObjTree::Unit => Vec::new(),
            ObjTree::Leaf(o) => vec![o.clone()],
            ObjTree::Pair(l, r) => {
                let mut v = l.frontier();
                v.extend(r.frontier());
                v
            }
        }
    }
}

/// Instantiates a formal tree as an actual object.
pub fn realize<C: TensorCategory>(t: &ObjTree<C::Obj>) -> C::Obj {
    match t {
        ObjTree::Unit => C::unit(),
        ObjTree::Leaf(o) => o.clone(),
        ObjTree::Pair(l, r) => C::tensor_obj(&realize::<C>(l), &realize::<C>(r)),
    }
}

/// A structural isomorphism carried with its inverse, so callers never have
/// to invert composites themselves.
#[derive(Clone, Debug, PartialEq)]
pub struct IsoPair<C: TensorCategory> {
    pub fwd: C::Mor,
    pub bwd: C::Mor,
}

impl<C: TensorCategory> IsoPair<C> {
    fn identity(a: &C::Obj) -> IsoPair<C> {
        IsoPair { fwd: C::identity(a), bwd: C::identity(a) }
    }

    /// `other ∘ self` forward, `self⁻¹ ∘ other⁻¹` backward.
    fn then(&self, other: &IsoPair<C>) -> Result<IsoPair<C>, CatError> {
        Ok(IsoPair {
            fwd: C::compose(&other.fwd, &self.fwd)?,
            bwd: C::compose(&self.bwd, &other.bwd)?,
        })
    }

    fn tensor(&self, other: &IsoPair<C>) -> Result<IsoPair<C>, CatError> {
        Ok(IsoPair {
            fwd: C::tensor_mor(&self.fwd, &other.fwd)?,
            bwd: C::tensor_mor(&self.bwd, &other.bwd)?,
        })
    }

    pub fn inverse(&self) -> IsoPair<C> {
        IsoPair { fwd: self.bwd.clone(), bwd: self.fwd.clone() }
    }
}

/// Appends normal form `b` to normal form `a` (both left-associated and
/// unit-free), returning the structural iso `realize(a) ⊠ realize(b) →
/// realize(a ++ b)` and the combined normal form.
fn fuse<C: TensorCategory>(
    a: &ObjTree<C::Obj>,
    b: &ObjTree<C::Obj>,
) -> Result<(IsoPair<C>, ObjTree<C::Obj>), CatError> {
    let ra = realize::<C>(a);
    let rb = realize::<C>(b);
    match (a, b) {
        (_, ObjTree::Unit) => Ok((
            IsoPair { fwd: C::runit(&ra), bwd: C::runit_inv(&ra) },
            a.clone(),
        )),
        (ObjTree::Unit, _) => Ok((
            IsoPair { fwd: C::lunit(&rb), bwd: C::lunit_inv(&rb) },
            b.clone(),
        )),
        (_, ObjTree::Leaf(_)) => {
            Ok((IsoPair::identity(&C::tensor_obj(&ra, &rb)), ObjTree::pair(a.clone(), b.clone())))
        }
        (_, ObjTree::Pair(b1, b2)) => {
            // a ⊠ (b₁ ⊠ b₂) → (a ⊠ b₁) ⊠ b₂, then fuse a with b₁ under the
            // final factor. b₂ is a leaf because b is normal.
            let rb1 = realize::<C>(b1);
            let rb2 = realize::<C>(b2);
            let step = IsoPair {
                fwd: C::assoc(&ra, &rb1, &rb2),
                bwd: C::assoc_inv(&ra, &rb1, &rb2),
            };
            let (inner, merged) = fuse::<C>(a, b1)?;
            let lifted = inner.tensor(&IsoPair::identity(&rb2))?;
            let total = step.then(&lifted)?;
            Ok((total, ObjTree::pair(merged, (**b2).clone())))
        }
    }
}

/// Normalizes a tree to its left-associated, unit-free form, returning the
/// structural isomorphism (with inverse) from the tree to its normal form.
pub fn normalize<C: TensorCategory>(
    t: &ObjTree<C::Obj>,
) -> Result<(IsoPair<C>, ObjTree<C::Obj>), CatError> {
    match t {
        ObjTree::Unit => Ok((IsoPair::identity(&C::unit()), ObjTree::Unit)),
        ObjTree::Leaf(o) => Ok((IsoPair::identity(o), ObjTree::Leaf(o.clone()))),
        ObjTree::Pair(l, r) => {
            let (nl, lform) = normalize::<C>(l)?;
            let (nr, rform) = normalize::<C>(r)?;
            let paired = nl.tensor(&nr)?;
            let (glue, form) = fuse::<C>(&lform, &rform)?;
            Ok((paired.then(&glue)?, form))
        }
    }
}

/// The structural isomorphism `realize(from) → realize(to)` for two trees
/// with the same frontier, together with its inverse.
pub fn coherence_iso_pair<C: TensorCategory>(
    from: &ObjTree<C::Obj>,
    to: &ObjTree<C::Obj>,
) -> Result<IsoPair<C>, CatError> {
    if from.frontier() != to.frontier() {
        return Err(CatError::Shape(
            "no structural isomorphism: the bracketings contain different factors".into(),
        ));
    }
    let (nf, _) = normalize::<C>(from)?;
    let (nt, _) = normalize::<C>(to)?;
    nf.then(&nt.inverse())
}

pub fn coherence_iso<C: TensorCategory>(
    from: &ObjTree<C::Obj>,
    to: &ObjTree<C::Obj>,
) -> Result<C::Mor, CatError> {
    Ok(coherence_iso_pair::<C>(from, to)?.fwd)
}
