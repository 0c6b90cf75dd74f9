//! Directed systems of objects and their attained inductive limits.
//!
//! A directed system assigns objects to a finite window of indices and a
//! connecting morphism to every comparable pair, satisfying the cocycle
//! condition. All limits here are *attained*: the window must contain a
//! maximum index, and the limit is that object together with the connecting
//! morphisms as injections. This keeps every universal-property statement an
//! exact morphism equality — [`InductiveSystem::mediating_morphism`] really
//! is the unique factorization of a compatible cocone, and
//! [`InductiveSystem::nested_limit`] really compares a limit of limits with
//! the limit over the whole window, demanding that the two canonical
//! comparison morphisms compose to identities.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use crate::catcore::{CatError, TensorCategory};
use crate::report::Report;

/// A finite directed system: one object per index, one connecting morphism
/// `A_i → A_j` per key `(i, j)`. The order relation is exactly the key set of
/// `connect`, which must be reflexive; transitivity and directedness are laws
/// checked by [`check_system_laws`](Self::check_system_laws).
pub struct InductiveSystem<C: TensorCategory, I: Ord + Clone + Debug> {
    pub objects: BTreeMap<I, C::Obj>,
    /// `connect[(i, j)] : A_i → A_j` witnesses `i ≤ j`.
    pub connect: BTreeMap<(I, I), C::Mor>,
}

impl<C: TensorCategory, I: Ord + Clone + Debug> Clone for InductiveSystem<C, I> {
    fn clone(&self) -> Self {
        InductiveSystem { objects: self.objects.clone(), connect: self.connect.clone() }
    }
}

impl<C: TensorCategory, I: Ord + Clone + Debug> Debug for InductiveSystem<C, I> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("InductiveSystem")
            .field("objects", &self.objects)
            .field("connect", &self.connect)
            .finish()
    }
}

/// An inductive limit that is attained at an index of the window itself: the
/// limit object is `objects[index]` and the injection from stage `i` is the
/// connecting morphism `A_i → A_index`.
pub struct AttainedLimit<C: TensorCategory, I: Ord + Clone + Debug> {
    pub index: I,
    pub object: C::Obj,
    pub injections: BTreeMap<I, C::Mor>,
}

impl<C: TensorCategory, I: Ord + Clone + Debug> Clone for AttainedLimit<C, I> {
    fn clone(&self) -> Self {
        AttainedLimit {
            index: self.index.clone(),
            object: self.object.clone(),
            injections: self.injections.clone(),
        }
    }
}

impl<C: TensorCategory, I: Ord + Clone + Debug> Debug for AttainedLimit<C, I> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AttainedLimit")
            .field("index", &self.index)
            .field("object", &self.object)
            .field("injections", &self.injections)
            .finish()
    }
}

impl<C: TensorCategory, I: Ord + Clone + Debug> InductiveSystem<C, I> {
    /// Validates the shape of the data: every connecting key must join two
    /// window indices with matching endpoints, and the relation must be
    /// reflexive so that identities have somewhere to live.
    pub fn new(
        objects: BTreeMap<I, C::Obj>,
        connect: BTreeMap<(I, I), C::Mor>,
    ) -> Result<InductiveSystem<C, I>, CatError> {
        for ((i, j), f) in &connect {
            let (a_i, a_j) = match (objects.get(i), objects.get(j)) {
                (Some(a), Some(b)) => (a, b),
                _ => {
                    return Err(CatError::Domain(format!(
                        "connecting morphism at ({i:?}, {j:?}) leaves the window"
                    )))
                }
            };
            if C::source(f) != *a_i || C::target(f) != *a_j {
                return Err(CatError::Shape(format!(
                    "connecting morphism at ({i:?}, {j:?}) has wrong endpoints"
                )));
            }
        }
        for i in objects.keys() {
            if !connect.contains_key(&(i.clone(), i.clone())) {
                return Err(CatError::Domain(format!(
                    "missing reflexive connecting morphism at {i:?}"
                )));
            }
        }
        Ok(InductiveSystem { objects, connect })
    }

    /// Whether `i ≤ j` according to the stored relation.
    pub fn leq(&self, i: &I, j: &I) -> bool {
        self.connect.contains_key(&(i.clone(), j.clone()))
    }

    /// Checks validity of every connecting morphism, identity on the
    /// diagonal, the cocycle condition over every composable pair, and
    /// directedness of the index relation.
    pub fn check_system_laws(&self) -> Report {
        let mut report = Report::new(format!("directed[{}]", C::NAME));

        for ((i, j), f) in &self.connect {
            report.check(
                "connect validity",
                &format!("({i:?}, {j:?})"),
                C::check_mor(f).map(|()| true),
            );
        }

        for (i, a_i) in &self.objects {
            report.check(
                "reflexive identity",
                &format!("{i:?}"),
                Ok::<bool, CatError>(self.connect[&(i.clone(), i.clone())] == C::identity(a_i)),
            );
        }

        for ((i, j), f_ij) in &self.connect {
            for ((j2, k), f_jk) in &self.connect {
                if j2 != j {
                    continue;
                }
                let witness = format!("({i:?}, {j:?}, {k:?})");
                match self.connect.get(&(i.clone(), k.clone())) {
                    None => report.check("cocycle", &witness, Ok::<bool, CatError>(false)),
                    Some(f_ik) => report.check(
                        "cocycle",
                        &witness,
                        C::compose(f_jk, f_ij).map(|two_step| two_step == *f_ik),
                    ),
                }
            }
        }

        for i in self.objects.keys() {
            for j in self.objects.keys() {
                let bounded = self
                    .objects
                    .keys()
                    .any(|k| self.leq(i, k) && self.leq(j, k));
                report.check(
                    "directedness",
                    &format!("({i:?}, {j:?})"),
                    Ok::<bool, CatError>(bounded),
                );
            }
        }
        report
    }

    /// The smallest index that every other index connects into, if any.
    pub fn maximum(&self) -> Option<I> {
        self.objects
            .keys()
            .find(|m| self.objects.keys().all(|i| self.leq(i, m)))
            .cloned()
    }

    /// The limit of the system, which must be attained at a maximum index of
    /// the window.
    pub fn attained_limit(&self) -> Result<AttainedLimit<C, I>, CatError> {
        let index = self.maximum().ok_or_else(|| {
            CatError::Domain(
                "no index dominates the whole window; the limit is not attained here".into(),
            )
        })?;
        let injections = self
            .objects
            .keys()
            .map(|i| (i.clone(), self.connect[&(i.clone(), index.clone())].clone()))
            .collect();
        Ok(AttainedLimit { index: index.clone(), object: self.objects[&index].clone(), injections })
    }

    /// The unique morphism from the attained limit through which a compatible
    /// cocone factors. The cocone must have one leg `A_i → target` per index
    /// and commute with every connecting morphism; incompatible cocones are
    /// rejected with the offending pair.
    pub fn mediating_morphism(
        &self,
        target: &C::Obj,
        legs: &BTreeMap<I, C::Mor>,
    ) -> Result<C::Mor, CatError> {
        let max = self.maximum().ok_or_else(|| {
            CatError::Domain("mediating morphisms need an attained limit".into())
        })?;
        if legs.len() != self.objects.len() || !self.objects.keys().all(|i| legs.contains_key(i)) {
            return Err(CatError::Domain("cocone must have one leg per index".into()));
        }
        for (i, leg) in legs {
            if C::source(leg) != self.objects[i] || C::target(leg) != *target {
                return Err(CatError::Shape(format!("cocone leg at {i:?} has wrong endpoints")));
            }
        }
        for ((i, j), f) in &self.connect {
            if C::compose(&legs[j], f)? != legs[i] {
                return Err(CatError::InvalidMorphism(format!(
                    "cocone is not compatible with the connecting morphism at ({i:?}, {j:?})"
                )));
            }
        }
        // The injection at the maximum is the identity, so the leg there is
        // the one and only possible factorization.
        Ok(legs[&max].clone())
    }

    /// The subsystem over `keep`, with the connecting morphisms between kept
    /// indices.
    pub fn restrict(&self, keep: &BTreeSet<I>) -> Result<InductiveSystem<C, I>, CatError> {
        for i in keep {
            if !self.objects.contains_key(i) {
                return Err(CatError::Domain(format!("index {i:?} is outside the window")));
            }
        }
        let objects = self
            .objects
            .iter()
            .filter(|(i, _)| keep.contains(i))
            .map(|(i, a)| (i.clone(), a.clone()))
            .collect();
        let connect = self
            .connect
            .iter()
            .filter(|((i, j), _)| keep.contains(i) && keep.contains(j))
            .map(|(k, f)| (k.clone(), f.clone()))
            .collect();
        InductiveSystem::new(objects, connect)
    }

    /// Computes the limit twice — once over the whole window and once as a
    /// limit of stage limits along an increasing chain of subwindows covering
    /// the window — and returns both together with the canonical comparison
    /// morphisms, which are required to be mutually inverse.
    pub fn nested_limit(&self, chain: &[BTreeSet<I>]) -> Result<NestedLimit<C, I>, CatError> {
        if chain.is_empty() {
            return Err(CatError::Domain("need at least one stage window".into()));
        }
        for k in 1..chain.len() {
            if !chain[k - 1].is_subset(&chain[k]) {
                return Err(CatError::Domain(format!(
                    "stage windows must increase, but stage {} is not inside stage {}",
                    k - 1,
                    k
                )));
            }
        }
        let covered: BTreeSet<&I> = chain.iter().flatten().collect();
        if !self.objects.keys().all(|i| covered.contains(i)) {
            return Err(CatError::Domain("stage windows must cover the index window".into()));
        }

        let mut subs = Vec::with_capacity(chain.len());
        let mut stages: Vec<AttainedLimit<C, I>> = Vec::with_capacity(chain.len());
        for (k, window) in chain.iter().enumerate() {
            let sub = self.restrict(window)?;
            let stage = sub.attained_limit().map_err(|e| {
                CatError::Domain(format!("stage {k} has no attained limit: {e}"))
            })?;
            subs.push(sub);
            stages.push(stage);
        }

        // Stage k includes into stage k' as the mediating morphism of the
        // k-stage cocone formed by the k'-stage injections.
        let mut outer_objects = BTreeMap::new();
        let mut outer_connect = BTreeMap::new();
        for (k, stage) in stages.iter().enumerate() {
            outer_objects.insert(k, stage.object.clone());
            for (k2, later) in stages.iter().enumerate().skip(k) {
                let legs: BTreeMap<I, C::Mor> = subs[k]
                    .objects
                    .keys()
                    .map(|i| (i.clone(), later.injections[i].clone()))
                    .collect();
                let step = subs[k].mediating_morphism(&later.object, &legs)?;
                outer_connect.insert((k, k2), step);
            }
        }
        let outer = InductiveSystem::<C, usize>::new(outer_objects, outer_connect)?;
        let outer_limit = outer.attained_limit()?;

        let whole = self.attained_limit()?;
        let outer_legs: BTreeMap<usize, C::Mor> = stages
            .iter()
            .enumerate()
            .map(|(k, stage)| (k, whole.injections[&stage.index].clone()))
            .collect();
        let into_whole = outer.mediating_morphism(&whole.object, &outer_legs)?;

        let mut whole_legs = BTreeMap::new();
        for i in self.objects.keys() {
            let k = chain
                .iter()
                .position(|window| window.contains(i))
                .expect("chain covers the window");
            let leg = C::compose(&outer_limit.injections[&k], &stages[k].injections[i])?;
            whole_legs.insert(i.clone(), leg);
        }
        let from_whole = self.mediating_morphism(&outer_limit.object, &whole_legs)?;

        let round_outer = C::compose(&from_whole, &into_whole)?;
        let round_whole = C::compose(&into_whole, &from_whole)?;
        if round_outer != C::identity(&outer_limit.object)
            || round_whole != C::identity(&whole.object)
        {
            return Err(CatError::InvalidMorphism(
                "nested and direct limits do not agree: the comparison morphisms are not mutually inverse"
                    .into(),
            ));
        }

        Ok(NestedLimit { stages, outer, outer_limit, whole, into_whole, from_whole })
    }
}

/// The result of a successful nested-limit comparison: the stage limits, the
/// outer system they form, its limit, the direct limit over the whole window,
/// and the two mutually inverse comparison morphisms.
pub struct NestedLimit<C: TensorCategory, I: Ord + Clone + Debug> {
    pub stages: Vec<AttainedLimit<C, I>>,
    pub outer: InductiveSystem<C, usize>,
    pub outer_limit: AttainedLimit<C, usize>,
    pub whole: AttainedLimit<C, I>,
    /// Outer limit object → direct limit object.
    pub into_whole: C::Mor,
    /// Direct limit object → outer limit object.
    pub from_whole: C::Mor,
}

impl<C: TensorCategory, I: Ord + Clone + Debug> Debug for NestedLimit<C, I> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("NestedLimit")
            .field("stages", &self.stages)
            .field("outer", &self.outer)
            .field("outer_limit", &self.outer_limit)
            .field("whole", &self.whole)
            .field("into_whole", &self.into_whole)
            .field("from_whole", &self.from_whole)
            .finish()
    }
}

/// The pointwise tensor of two systems over the same index window, with
/// connecting morphisms `f ⊠ g`. Attained limits commute with this: the
/// tensor system's limit object is the tensor of the limit objects, with
/// tensored injections.
pub fn tensor_systems<C: TensorCategory, I: Ord + Clone + Debug>(
    left: &InductiveSystem<C, I>,
    right: &InductiveSystem<C, I>,
) -> Result<InductiveSystem<C, I>, CatError> {
    if !left.objects.keys().eq(right.objects.keys())
        || !left.connect.keys().eq(right.connect.keys())
    {
        return Err(CatError::Domain(
            "tensoring systems needs identical index windows and relations".into(),
        ));
    }
    let objects = left
        .objects
        .iter()
        .map(|(i, a)| (i.clone(), C::tensor_obj(a, &right.objects[i])))
        .collect();
    let mut connect = BTreeMap::new();
    for (key, f) in &left.connect {
        connect.insert(key.clone(), C::tensor_mor(f, &right.connect[key])?);
    }
    InductiveSystem::new(objects, connect)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::finset::{FinMor, FinObj, FinSet};
    use crate::instances::vecq::{VecInj, VecMor};
    use crate::rat::rat_int;
    use crate::ratmat::Mat;

    /// The inclusion of the first `i` coordinates into `j`-space.
    fn incl(i: usize, j: usize) -> VecMor {
        let mut mat = Mat::zero(j, i);
        for r in 0..i {
            mat.set(r, r, rat_int(1));
        }
        VecMor::new(mat)
    }

    fn coordinate_chain(top: usize) -> InductiveSystem<VecInj, usize> {
        let objects = (0..=top).map(|k| (k, k)).collect();
        let mut connect = BTreeMap::new();
        for i in 0..=top {
            for j in i..=top {
                connect.insert((i, j), incl(i, j));
            }
        }
        InductiveSystem::new(objects, connect).expect("chain shape is valid")
    }

    #[test]
    fn coordinate_chain_attains_its_limit() {
        let sys = coordinate_chain(3);
        let report = sys.check_system_laws();
        assert!(report.passed(), "{}", report.render_text());

        let lim = sys.attained_limit().expect("3 dominates the chain");
        assert_eq!(lim.index, 3);
        assert_eq!(lim.object, 3);
        assert_eq!(lim.injections[&1], incl(1, 3));
        assert_eq!(lim.injections[&3], VecInj::identity(&3));
    }

    #[test]
    fn mediating_morphism_factors_exactly_one_way() {
        let sys = coordinate_chain(3);

        // Cocone into 5-space through a chosen injection of the top stage.
        let mut top = Mat::zero(5, 3);
        top.set(0, 0, rat_int(1));
        top.set(2, 1, rat_int(1));
        top.set(4, 2, rat_int(1));
        let g = VecMor::new(top);
        let legs: BTreeMap<usize, VecMor> = (0..=3)
            .map(|i| (i, VecInj::compose(&g, &incl(i, 3)).unwrap()))
            .collect();
        let mediated = sys.mediating_morphism(&5, &legs).expect("compatible cocone");
        assert_eq!(mediated, g);

        // Corrupt one leg: the precheck names the broken pair.
        let mut wrong = Mat::zero(5, 1);
        wrong.set(1, 0, rat_int(1));
        let mut bad = legs.clone();
        bad.insert(1, VecMor::new(wrong));
        let err = sys.mediating_morphism(&5, &bad).unwrap_err();
        assert!(err.to_string().contains("not compatible"), "{err}");
    }

    #[test]
    fn constructor_rejects_gaps_and_stray_keys() {
        let objects: BTreeMap<usize, usize> = (0..=1).map(|k| (k, k)).collect();

        let mut no_diag = BTreeMap::new();
        no_diag.insert((0, 0), incl(0, 0));
        no_diag.insert((0, 1), incl(0, 1));
        let err = InductiveSystem::<VecInj, usize>::new(objects.clone(), no_diag).unwrap_err();
        assert!(err.to_string().contains("missing reflexive"), "{err}");

        let mut stray = BTreeMap::new();
        stray.insert((0, 0), incl(0, 0));
        stray.insert((1, 1), incl(1, 1));
        stray.insert((1, 7), incl(1, 7));
        let err = InductiveSystem::<VecInj, usize>::new(objects, stray).unwrap_err();
        assert!(err.to_string().contains("leaves the window"), "{err}");
    }

    #[test]
    fn law_check_catches_identity_and_cocycle_violations() {
        let mut sys = coordinate_chain(2);
        let mut flip = Mat::zero(1, 1);
        flip.set(0, 0, rat_int(-1));
        sys.connect.insert((1, 1), VecMor::new(flip));
        let report = sys.check_system_laws();
        assert!(report.failures.iter().any(|f| f.law == "reflexive identity"));
        assert!(report.failures.iter().any(|f| f.law == "cocycle"));

        // A skewed one-step map that no longer matches the two-step route.
        // The corruption has to sit above a nonzero stage to be observable.
        let mut sys = coordinate_chain(3);
        let mut skew = Mat::zero(3, 1);
        skew.set(2, 0, rat_int(1));
        sys.connect.insert((1, 3), VecMor::new(skew));
        let report = sys.check_system_laws();
        assert!(!report.passed());
        assert!(report.failures.iter().all(|f| f.law == "cocycle"));
    }

    #[test]
    fn undirected_windows_have_no_attained_limit() {
        let objects: BTreeMap<usize, usize> = [(0, 1), (1, 1)].into();
        let connect: BTreeMap<(usize, usize), VecMor> =
            [((0, 0), incl(1, 1)), ((1, 1), incl(1, 1))].into();
        let sys = InductiveSystem::<VecInj, usize>::new(objects, connect).unwrap();

        let report = sys.check_system_laws();
        assert!(report.failures.iter().any(|f| f.law == "directedness"));

        let err = sys.attained_limit().unwrap_err();
        assert!(err.to_string().contains("not attained"), "{err}");
    }

    #[test]
    fn growing_sets_attain_their_union() {
        let small: FinObj = ["a".to_string()].into();
        let big: FinObj = ["a".to_string(), "b".to_string()].into();
        let include = FinMor::new(
            small.clone(),
            big.clone(),
            [("a".to_string(), "a".to_string())].into(),
        );
        let objects: BTreeMap<u8, FinObj> = [(0, small.clone()), (1, big.clone())].into();
        let connect: BTreeMap<(u8, u8), FinMor> = [
            ((0, 0), FinSet::identity(&small)),
            ((0, 1), include),
            ((1, 1), FinSet::identity(&big)),
        ]
        .into();
        let sys = InductiveSystem::<FinSet, u8>::new(objects, connect).unwrap();
        assert!(sys.check_system_laws().passed());
        let lim = sys.attained_limit().unwrap();
        assert_eq!(lim.object, big);
    }

    #[test]
    fn tensoring_systems_commutes_with_the_limit() {
        let left = coordinate_chain(2);
        let right = coordinate_chain(2);
        let both = tensor_systems(&left, &right).expect("same windows");
        assert!(both.check_system_laws().passed());

        let lim = both.attained_limit().unwrap();
        let (ll, rl) = (left.attained_limit().unwrap(), right.attained_limit().unwrap());
        assert_eq!(lim.object, VecInj::tensor_obj(&ll.object, &rl.object));
        for (i, u) in &lim.injections {
            assert_eq!(*u, VecInj::tensor_mor(&ll.injections[i], &rl.injections[i]).unwrap());
        }
    }

    #[test]
    fn nested_limit_agrees_with_the_direct_limit() {
        let sys = coordinate_chain(3);
        let chain: Vec<BTreeSet<usize>> = vec![
            [0, 1].into(),
            [0, 1, 2].into(),
            [0, 1, 2, 3].into(),
        ];
        let nested = sys.nested_limit(&chain).expect("covering increasing chain");

        assert_eq!(nested.stages.len(), 3);
        assert_eq!(nested.outer_limit.object, nested.whole.object);
        assert_eq!(nested.into_whole, VecInj::identity(&3));
        assert_eq!(nested.from_whole, VecInj::identity(&3));
        assert!(nested.outer.check_system_laws().passed());
        // The outer connecting morphisms recover the original inclusions
        // between the stage maxima.
        assert_eq!(nested.outer.connect[&(0, 2)], incl(1, 3));
    }

    #[test]
    fn nested_limit_rejects_bad_chains() {
        let sys = coordinate_chain(3);

        let gappy: Vec<BTreeSet<usize>> = vec![[0, 1].into(), [0, 1, 2].into()];
        let err = sys.nested_limit(&gappy).unwrap_err();
        assert!(err.to_string().contains("must cover"), "{err}");

        let shrinking: Vec<BTreeSet<usize>> =
            vec![[0, 1, 2, 3].into(), [0, 1].into(), [0, 1, 2, 3].into()];
        let err = sys.nested_limit(&shrinking).unwrap_err();
        assert!(err.to_string().contains("must increase"), "{err}");

        let undirected: Vec<BTreeSet<usize>> = vec![[0, 1].into(), [0, 1, 2, 3].into()];
        let mut pruned = sys.clone();
        pruned.connect.remove(&(0, 1));
        // Stage 0 of the pruned system has no maximum.
        let err = pruned.nested_limit(&undirected).unwrap_err();
        assert!(err.to_string().contains("stage 0"), "{err}");
    }
}
