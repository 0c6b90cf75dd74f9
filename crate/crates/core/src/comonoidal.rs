//! Comonoidal systems: monoid-indexed families of objects and splitting
//! morphisms.
//!
//! A system assigns to each time `t` in a window of a factorization monoid an
//! object `A_t`, to each in-window factorization `st = s·t` a splitting
//! morphism `Δ_{s,t} : A_{st} → A_s ⊠ A_t`, and to the monoid unit a counit
//! `δ : A_e → E`. The splittings must be coassociative over every triple and
//! the counit must collapse trivial factors; [`ComonoidalSystem::check_system_laws`]
//! verifies both on the nose.
//!
//! The module also provides the dual [`MonoidalSystem`] (multiplications
//! `A_s ⊠ A_t → A_{st}` and a unit morphism), a [`CotensorFunctor`] trait for
//! pushing systems into other categories, and constructors that build systems
//! from convolution semigroups of cyclic-group distributions and of states on
//! a free algebra.

use std::collections::{BTreeMap, BTreeSet};
use std::marker::PhantomData;

use num_traits::Zero;

use crate::catcore::{pipeline, CatError, InstanceGen, TensorCategory};
use crate::instances::finset::{FinMor, FinObj, FinSet};
use crate::instances::hilbq::HilbIsom;
use crate::instances::probop::{ProbMor, ProbObj, ProbOp};
use crate::instances::qps::{normal_form, ProductPolicy, Qps, QpsMor, QpsObj};
use crate::instances::vecq::{VecInj, VecLin, VecMor};
use crate::monoid::{Monoid, MonoidKind, MonoidValue};
use crate::rat::{rat_int, Rat};
use crate::ratmat::Mat;
use crate::catcore::suite::seeded;
use crate::report::Report;
use crate::uniprod::{
    convolve, words_up_to, Comultiplication, MomentFunctional, ProductKind, UniprodError,
};
use crate::words::Element;

// ---------------------------------------------------------------------------
// comonoidal systems
// ---------------------------------------------------------------------------

/// A family of objects indexed by a window of monoid times, with a splitting
/// morphism for every factorization that stays inside the window and a counit
/// at the unit time.
pub struct ComonoidalSystem<C: TensorCategory> {
    pub monoid: Monoid,
    pub objects: BTreeMap<MonoidValue, C::Obj>,
    /// `deltas[(s, t)] : A_{st} → A_s ⊠ A_t`.
    pub deltas: BTreeMap<(MonoidValue, MonoidValue), C::Mor>,
    /// `δ : A_e → E`.
    pub counit: C::Mor,
}

impl<C: TensorCategory> Clone for ComonoidalSystem<C> {
    fn clone(&self) -> Self {
        ComonoidalSystem {
            monoid: self.monoid.clone(),
            objects: self.objects.clone(),
            deltas: self.deltas.clone(),
            counit: self.counit.clone(),
        }
    }
}

impl<C: TensorCategory> std::fmt::Debug for ComonoidalSystem<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ComonoidalSystem")
            .field("monoid", &self.monoid)
            .field("objects", &self.objects)
            .field("deltas", &self.deltas)
            .field("counit", &self.counit)
            .finish()
    }
}

impl<C: TensorCategory> ComonoidalSystem<C> {
    /// Validates the shape of the data: the window must contain the monoid
    /// unit, the counit must run `A_e → E`, and the splitting table must
    /// contain exactly the in-window factorizations, each with matching
    /// endpoints. Laws are checked separately by
    /// [`check_system_laws`](Self::check_system_laws).
    pub fn new(
        monoid: Monoid,
        objects: BTreeMap<MonoidValue, C::Obj>,
        deltas: BTreeMap<(MonoidValue, MonoidValue), C::Mor>,
        counit: C::Mor,
    ) -> Result<ComonoidalSystem<C>, CatError> {
        let e = monoid.unit();
        let a_e = objects.get(&e).ok_or_else(|| {
            CatError::Domain("system window must contain the monoid unit".into())
        })?;
        if C::source(&counit) != *a_e || C::target(&counit) != C::unit() {
            return Err(CatError::Shape(
                "counit must run from the unit-time object to the tensor unit".into(),
            ));
        }
        for s in objects.keys() {
            for t in objects.keys() {
                let st = monoid.op(s, t);
                if !objects.contains_key(&st) {
                    continue;
                }
                let d = deltas.get(&(s.clone(), t.clone())).ok_or_else(|| {
                    CatError::Domain(format!(
                        "missing splitting of {} into ({}, {})",
                        monoid.show(&st),
                        monoid.show(s),
                        monoid.show(t)
                    ))
                })?;
                if C::source(d) != objects[&st]
                    || C::target(d) != C::tensor_obj(&objects[s], &objects[t])
                {
                    return Err(CatError::Shape(format!(
                        "splitting at ({}, {}) has wrong endpoints",
                        monoid.show(s),
                        monoid.show(t)
                    )));
                }
            }
        }
        for (s, t) in deltas.keys() {
            let inside = objects.contains_key(s)
                && objects.contains_key(t)
                && objects.contains_key(&monoid.op(s, t));
            if !inside {
                return Err(CatError::Domain(format!(
                    "splitting at ({}, {}) leaves the window",
                    monoid.show(s),
                    monoid.show(t)
                )));
            }
        }
        Ok(ComonoidalSystem { monoid, objects, deltas, counit })
    }

    /// The times the system is defined on, in sorted order.
    pub fn window(&self) -> Vec<MonoidValue> {
        self.objects.keys().cloned().collect()
    }

    pub fn obj(&self, t: &MonoidValue) -> Result<&C::Obj, CatError> {
        self.objects.get(t).ok_or_else(|| {
            CatError::Domain(format!("time {} is outside the window", self.monoid.show(t)))
        })
    }

    /// The splitting `A_{st} → A_s ⊠ A_t`.
    pub fn delta(&self, s: &MonoidValue, t: &MonoidValue) -> Result<&C::Mor, CatError> {
        self.deltas.get(&(s.clone(), t.clone())).ok_or_else(|| {
            CatError::Domain(format!(
                "no splitting at ({}, {})",
                self.monoid.show(s),
                self.monoid.show(t)
            ))
        })
    }

    /// Checks every stored morphism for validity, coassociativity over every
    /// triple whose partial products stay in the window, and both counit
    /// identities at every time.
    pub fn check_system_laws(&self) -> Report {
        let mut report = Report::new(format!("system[{}/{}]", C::NAME, self.monoid.kind));

        for ((s, t), d) in &self.deltas {
            let witness = format!("({}, {})", self.monoid.show(s), self.monoid.show(t));
            report.check(
                "splitting validity",
                &witness,
                C::check_mor(d).map(|()| true),
            );
        }
        report.check("counit validity", "δ", C::check_mor(&self.counit).map(|()| true));

        let e = self.monoid.unit();
        for (t, a_t) in &self.objects {
            let witness = self.monoid.show(t);
            report.check(
                "left counit law",
                &witness,
                self.delta(&e, t).and_then(|d| {
                    let collapse = C::tensor_mor(&self.counit, &C::identity(a_t))?;
                    let round = pipeline::<C>(&[d.clone(), collapse, C::lunit(a_t)])?;
                    Ok(round == C::identity(a_t))
                }),
            );
            report.check(
                "right counit law",
                &witness,
                self.delta(t, &e).and_then(|d| {
                    let collapse = C::tensor_mor(&C::identity(a_t), &self.counit)?;
                    let round = pipeline::<C>(&[d.clone(), collapse, C::runit(a_t)])?;
                    Ok(round == C::identity(a_t))
                }),
            );
        }

        for r in self.objects.keys() {
            for s in self.objects.keys() {
                let rs = self.monoid.op(r, s);
                if !self.objects.contains_key(&rs) {
                    continue;
                }
                for t in self.objects.keys() {
                    let st = self.monoid.op(s, t);
                    let rst = self.monoid.op(&rs, t);
                    if !self.objects.contains_key(&st) || !self.objects.contains_key(&rst) {
                        continue;
                    }
                    let witness = format!(
                        "({}, {}, {})",
                        self.monoid.show(r),
                        self.monoid.show(s),
                        self.monoid.show(t)
                    );
                    report.check(
                        "coassociativity",
                        &witness,
                        (|| -> Result<bool, CatError> {
                            let split_left = C::compose(
                                &C::tensor_mor(self.delta(r, s)?, &C::identity(&self.objects[t]))?,
                                self.delta(&rs, t)?,
                            )?;
                            let split_right = pipeline::<C>(&[
                                self.delta(r, &st)?.clone(),
                                C::tensor_mor(&C::identity(&self.objects[r]), self.delta(s, t)?)?,
                                C::assoc(&self.objects[r], &self.objects[s], &self.objects[t]),
                            ])?;
                            Ok(split_left == split_right)
                        })(),
                    );
                }
            }
        }
        report
    }

    /// The subsystem over `keep`, which must contain the unit and be closed
    /// under in-window splittings: if a kept time factors inside the window,
    /// both parts must be kept, so that no splitting of a kept time is lost.
    pub fn restrict(&self, keep: &BTreeSet<MonoidValue>) -> Result<ComonoidalSystem<C>, CatError> {
        if !keep.contains(&self.monoid.unit()) {
            return Err(CatError::Domain(
                "restricted window must contain the monoid unit".into(),
            ));
        }
        for u in keep {
            if !self.objects.contains_key(u) {
                return Err(CatError::Domain(format!(
                    "time {} is outside the window",
                    self.monoid.show(u)
                )));
            }
        }
        for (s, t) in self.deltas.keys() {
            let st = self.monoid.op(s, t);
            if keep.contains(&st) && !(keep.contains(s) && keep.contains(t)) {
                return Err(CatError::Domain(format!(
                    "restriction loses the splitting of {} into ({}, {})",
                    self.monoid.show(&st),
                    self.monoid.show(s),
                    self.monoid.show(t)
                )));
            }
        }
        let objects: BTreeMap<_, _> = self
            .objects
            .iter()
            .filter(|(k, _)| keep.contains(*k))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        let deltas: BTreeMap<_, _> = self
            .deltas
            .iter()
            .filter(|((s, t), _)| {
                keep.contains(s) && keep.contains(t) && keep.contains(&self.monoid.op(s, t))
            })
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        ComonoidalSystem::new(self.monoid.clone(), objects, deltas, self.counit.clone())
    }
}

// ---------------------------------------------------------------------------
// monoidal systems (the dual shape)
// ---------------------------------------------------------------------------

/// The dual of a [`ComonoidalSystem`]: multiplications `m_{s,t} : A_s ⊠ A_t →
/// A_{st}` and a unit morphism `E → A_e`, associative and unital on the nose.
pub struct MonoidalSystem<C: TensorCategory> {
    pub monoid: Monoid,
    pub objects: BTreeMap<MonoidValue, C::Obj>,
    /// `mults[(s, t)] : A_s ⊠ A_t → A_{st}`.
    pub mults: BTreeMap<(MonoidValue, MonoidValue), C::Mor>,
    /// `E → A_e`.
    pub unit_mor: C::Mor,
}

impl<C: TensorCategory> Clone for MonoidalSystem<C> {
    fn clone(&self) -> Self {
        MonoidalSystem {
            monoid: self.monoid.clone(),
            objects: self.objects.clone(),
            mults: self.mults.clone(),
            unit_mor: self.unit_mor.clone(),
        }
    }
}

impl<C: TensorCategory> std::fmt::Debug for MonoidalSystem<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MonoidalSystem")
            .field("monoid", &self.monoid)
            .field("objects", &self.objects)
            .field("mults", &self.mults)
            .field("unit_mor", &self.unit_mor)
            .finish()
    }
}

impl<C: TensorCategory> MonoidalSystem<C> {
    pub fn new(
        monoid: Monoid,
        objects: BTreeMap<MonoidValue, C::Obj>,
        mults: BTreeMap<(MonoidValue, MonoidValue), C::Mor>,
        unit_mor: C::Mor,
    ) -> Result<MonoidalSystem<C>, CatError> {
        let e = monoid.unit();
        let a_e = objects.get(&e).ok_or_else(|| {
            CatError::Domain("system window must contain the monoid unit".into())
        })?;
        if C::source(&unit_mor) != C::unit() || C::target(&unit_mor) != *a_e {
            return Err(CatError::Shape(
                "unit morphism must run from the tensor unit to the unit-time object".into(),
            ));
        }
        for s in objects.keys() {
            for t in objects.keys() {
                let st = monoid.op(s, t);
                if !objects.contains_key(&st) {
                    continue;
                }
                let m = mults.get(&(s.clone(), t.clone())).ok_or_else(|| {
                    CatError::Domain(format!(
                        "missing multiplication at ({}, {})",
                        monoid.show(s),
                        monoid.show(t)
                    ))
                })?;
                if C::target(m) != objects[&st]
                    || C::source(m) != C::tensor_obj(&objects[s], &objects[t])
                {
                    return Err(CatError::Shape(format!(
                        "multiplication at ({}, {}) has wrong endpoints",
                        monoid.show(s),
                        monoid.show(t)
                    )));
                }
            }
        }
        for (s, t) in mults.keys() {
            let inside = objects.contains_key(s)
                && objects.contains_key(t)
                && objects.contains_key(&monoid.op(s, t));
            if !inside {
                return Err(CatError::Domain(format!(
                    "multiplication at ({}, {}) leaves the window",
                    monoid.show(s),
                    monoid.show(t)
                )));
            }
        }
        Ok(MonoidalSystem { monoid, objects, mults, unit_mor })
    }

    pub fn mult(&self, s: &MonoidValue, t: &MonoidValue) -> Result<&C::Mor, CatError> {
        self.mults.get(&(s.clone(), t.clone())).ok_or_else(|| {
            CatError::Domain(format!(
                "no multiplication at ({}, {})",
                self.monoid.show(s),
                self.monoid.show(t)
            ))
        })
    }

    pub fn check_system_laws(&self) -> Report {
        let mut report = Report::new(format!("dual-system[{}/{}]", C::NAME, self.monoid.kind));

        for ((s, t), m) in &self.mults {
            let witness = format!("({}, {})", self.monoid.show(s), self.monoid.show(t));
            report.check(
                "multiplication validity",
                &witness,
                C::check_mor(m).map(|()| true),
            );
        }
        report.check("unit validity", "η", C::check_mor(&self.unit_mor).map(|()| true));

        let e = self.monoid.unit();
        for (t, a_t) in &self.objects {
            let witness = self.monoid.show(t);
            report.check(
                "left unit law",
                &witness,
                self.mult(&e, t).and_then(|m| {
                    let insert = C::tensor_mor(&self.unit_mor, &C::identity(a_t))?;
                    let round = pipeline::<C>(&[C::lunit_inv(a_t), insert, m.clone()])?;
                    Ok(round == C::identity(a_t))
                }),
            );
            report.check(
                "right unit law",
                &witness,
                self.mult(t, &e).and_then(|m| {
                    let insert = C::tensor_mor(&C::identity(a_t), &self.unit_mor)?;
                    let round = pipeline::<C>(&[C::runit_inv(a_t), insert, m.clone()])?;
                    Ok(round == C::identity(a_t))
                }),
            );
        }

        for r in self.objects.keys() {
            for s in self.objects.keys() {
                let rs = self.monoid.op(r, s);
                if !self.objects.contains_key(&rs) {
                    continue;
                }
                for t in self.objects.keys() {
                    let st = self.monoid.op(s, t);
                    let rst = self.monoid.op(&rs, t);
                    if !self.objects.contains_key(&st) || !self.objects.contains_key(&rst) {
                        continue;
                    }
                    let witness = format!(
                        "({}, {}, {})",
                        self.monoid.show(r),
                        self.monoid.show(s),
                        self.monoid.show(t)
                    );
                    report.check(
                        "associativity",
                        &witness,
                        (|| -> Result<bool, CatError> {
                            let join_left = C::compose(
                                self.mult(&rs, t)?,
                                &C::tensor_mor(self.mult(r, s)?, &C::identity(&self.objects[t]))?,
                            )?;
                            let join_right = pipeline::<C>(&[
                                C::assoc_inv(&self.objects[r], &self.objects[s], &self.objects[t]),
                                C::tensor_mor(&C::identity(&self.objects[r]), self.mult(s, t)?)?,
                                self.mult(r, &st)?.clone(),
                            ])?;
                            Ok(join_left == join_right)
                        })(),
                    );
                }
            }
        }
        report
    }
}

/// Dualizes a matrix-valued comonoidal system by transposing every structure
/// map. Transposes of injections or isometries are generally neither, so the
/// result always lives in the category of all linear maps.
pub fn transpose_system<C>(sys: &ComonoidalSystem<C>) -> Result<MonoidalSystem<VecLin>, CatError>
where
    C: TensorCategory<Obj = usize, Mor = VecMor>,
{
    MonoidalSystem::new(
        sys.monoid.clone(),
        sys.objects.clone(),
        sys.deltas
            .iter()
            .map(|(k, d)| (k.clone(), VecMor::new(d.mat.transpose())))
            .collect(),
        VecMor::new(sys.counit.mat.transpose()),
    )
}

// ---------------------------------------------------------------------------
// cotensor functors
// ---------------------------------------------------------------------------

/// A functor `C → D` equipped with comparison morphisms
/// `delta(A, B) : F(A ⊠ B) → F(A) ⊠ F(B)` and `counit : F(E) → E`, compatible
/// with the coherence isomorphisms on both sides. Such a functor pushes
/// comonoidal systems forward (see [`map_system`]); when
/// [`strong`](Self::strong) holds the comparisons are isomorphisms and
/// [`delta_inv`](Self::delta_inv) must supply the inverses.
pub trait CotensorFunctor<C: TensorCategory, D: TensorCategory> {
    const NAME: &'static str;

    fn obj(&self, a: &C::Obj) -> D::Obj;
    fn mor(&self, f: &C::Mor) -> Result<D::Mor, CatError>;
    /// `F(A ⊠ B) → F(A) ⊠ F(B)`.
    fn delta(&self, a: &C::Obj, b: &C::Obj) -> Result<D::Mor, CatError>;
    /// `F(E) → E`.
    fn counit(&self) -> Result<D::Mor, CatError>;
    /// Two-sided inverse of [`delta`](Self::delta), for strong functors.
    fn delta_inv(&self, a: &C::Obj, b: &C::Obj) -> Result<Option<D::Mor>, CatError> {
        let _ = (a, b);
        Ok(None)
    }
    fn strong(&self) -> bool {
        false
    }
}

/// Checks functoriality, naturality of the comparison morphisms, the
/// associativity hexagon, both unit squares, compatibility with initial
/// morphisms, and — for strong functors — that the claimed inverses invert.
pub fn check_cotensor_laws<C, D, F>(functor: &F, seed: u64, cases: usize) -> Report
where
    C: TensorCategory + InstanceGen,
    D: TensorCategory,
    F: CotensorFunctor<C, D>,
{
    let mut report = Report::new(format!("cotensor[{}: {} → {}]", F::NAME, C::NAME, D::NAME));
    let mut rng = seeded(seed);

    for case in 0..cases {
        let a = C::gen_obj(&mut rng);
        let b = C::gen_obj(&mut rng);
        let c = C::gen_obj(&mut rng);
        let witness = format!("case {case}");

        report.check(
            "identity preservation",
            &witness,
            functor
                .mor(&C::identity(&a))
                .map(|m| m == D::identity(&functor.obj(&a))),
        );

        let f1 = C::gen_mor(&mut rng);
        let g1 = C::gen_mor_from(&C::target(&f1), &mut rng);
        report.check(
            "composition preservation",
            &witness,
            (|| -> Result<bool, CatError> {
                let whole = functor.mor(&C::compose(&g1, &f1)?)?;
                let parts = D::compose(&functor.mor(&g1)?, &functor.mor(&f1)?)?;
                Ok(whole == parts)
            })(),
        );

        let f2 = C::gen_mor(&mut rng);
        report.check(
            "comparison naturality",
            &witness,
            (|| -> Result<bool, CatError> {
                let src = functor.delta(&C::source(&f1), &C::source(&f2))?;
                let dst = functor.delta(&C::target(&f1), &C::target(&f2))?;
                let after = D::compose(&D::tensor_mor(&functor.mor(&f1)?, &functor.mor(&f2)?)?, &src)?;
                let before = D::compose(&dst, &functor.mor(&C::tensor_mor(&f1, &f2)?)?)?;
                Ok(after == before)
            })(),
        );

        report.check(
            "associativity hexagon",
            &witness,
            (|| -> Result<bool, CatError> {
                let (fa, fb, fc) = (functor.obj(&a), functor.obj(&b), functor.obj(&c));
                let through_target = pipeline::<D>(&[
                    functor.delta(&a, &C::tensor_obj(&b, &c))?,
                    D::tensor_mor(&D::identity(&fa), &functor.delta(&b, &c)?)?,
                    D::assoc(&fa, &fb, &fc),
                ])?;
                let through_source = pipeline::<D>(&[
                    functor.mor(&C::assoc(&a, &b, &c))?,
                    functor.delta(&C::tensor_obj(&a, &b), &c)?,
                    D::tensor_mor(&functor.delta(&a, &b)?, &D::identity(&fc))?,
                ])?;
                Ok(through_target == through_source)
            })(),
        );

        report.check(
            "left unit square",
            &witness,
            (|| -> Result<bool, CatError> {
                let fa = functor.obj(&a);
                let collapsed = pipeline::<D>(&[
                    functor.delta(&C::unit(), &a)?,
                    D::tensor_mor(&functor.counit()?, &D::identity(&fa))?,
                    D::lunit(&fa),
                ])?;
                Ok(collapsed == functor.mor(&C::lunit(&a))?)
            })(),
        );
        report.check(
            "right unit square",
            &witness,
            (|| -> Result<bool, CatError> {
                let fa = functor.obj(&a);
                let collapsed = pipeline::<D>(&[
                    functor.delta(&a, &C::unit())?,
                    D::tensor_mor(&D::identity(&fa), &functor.counit()?)?,
                    D::runit(&fa),
                ])?;
                Ok(collapsed == functor.mor(&C::runit(&a))?)
            })(),
        );

        report.check(
            "initial compatibility",
            &witness,
            (|| -> Result<bool, CatError> {
                let into_image = D::compose(
                    &functor.mor(&C::initial_mor(&a))?,
                    &D::initial_mor(&functor.obj(&C::unit())),
                )?;
                Ok(into_image == D::initial_mor(&functor.obj(&a)))
            })(),
        );

        if functor.strong() {
            report.check(
                "comparison inverse",
                &witness,
                (|| -> Result<bool, CatError> {
                    let fwd = functor.delta(&a, &b)?;
                    let Some(bwd) = functor.delta_inv(&a, &b)? else {
                        return Ok(false);
                    };
                    let image = functor.obj(&C::tensor_obj(&a, &b));
                    let split = D::tensor_obj(&functor.obj(&a), &functor.obj(&b));
                    Ok(D::compose(&bwd, &fwd)? == D::identity(&image)
                        && D::compose(&fwd, &bwd)? == D::identity(&split))
                })(),
            );
            report.check(
                "counit inverse",
                &witness,
                (|| -> Result<bool, CatError> {
                    let eps = functor.counit()?;
                    let back = D::initial_mor(&functor.obj(&C::unit()));
                    Ok(D::compose(&eps, &back)? == D::identity(&D::unit())
                        && D::compose(&back, &eps)? == D::identity(&functor.obj(&C::unit())))
                })(),
            );
        }
    }
    report
}

/// Pushes a comonoidal system through a cotensor functor: objects become
/// `F(A_t)`, splittings `delta ∘ F(Δ_{s,t})`, the counit `counit ∘ F(δ)`.
pub fn map_system<C, D, F>(
    functor: &F,
    sys: &ComonoidalSystem<C>,
) -> Result<ComonoidalSystem<D>, CatError>
where
    C: TensorCategory,
    D: TensorCategory,
    F: CotensorFunctor<C, D>,
{
    let objects: BTreeMap<_, _> = sys
        .objects
        .iter()
        .map(|(k, v)| (k.clone(), functor.obj(v)))
        .collect();
    let mut deltas = BTreeMap::new();
    for ((s, t), d) in &sys.deltas {
        let compare = functor.delta(&sys.objects[s], &sys.objects[t])?;
        deltas.insert((s.clone(), t.clone()), D::compose(&compare, &functor.mor(d)?)?);
    }
    let counit = D::compose(&functor.counit()?, &functor.mor(&sys.counit)?)?;
    ComonoidalSystem::new(sys.monoid.clone(), objects, deltas, counit)
}

/// The identity functor, trivially strong.
pub struct IdentityFunctor;

impl<C: TensorCategory> CotensorFunctor<C, C> for IdentityFunctor {
    const NAME: &'static str = "identity";

    fn obj(&self, a: &C::Obj) -> C::Obj {
        a.clone()
    }
    fn mor(&self, f: &C::Mor) -> Result<C::Mor, CatError> {
        Ok(f.clone())
    }
    fn delta(&self, a: &C::Obj, b: &C::Obj) -> Result<C::Mor, CatError> {
        Ok(C::identity(&C::tensor_obj(a, b)))
    }
    fn counit(&self) -> Result<C::Mor, CatError> {
        Ok(C::identity(&C::unit()))
    }
    fn delta_inv(&self, a: &C::Obj, b: &C::Obj) -> Result<Option<C::Mor>, CatError> {
        Ok(Some(C::identity(&C::tensor_obj(a, b))))
    }
    fn strong(&self) -> bool {
        true
    }
}

/// Forgets that an isometry is an isometry. Objects, morphisms, and direct
/// sums are untouched, so every comparison morphism is an identity matrix.
pub struct ForgetIsometry;

impl CotensorFunctor<HilbIsom, VecInj> for ForgetIsometry {
    const NAME: &'static str = "forget-isometry";

    fn obj(&self, a: &usize) -> usize {
        *a
    }
    fn mor(&self, f: &VecMor) -> Result<VecMor, CatError> {
        Ok(f.clone())
    }
    fn delta(&self, a: &usize, b: &usize) -> Result<VecMor, CatError> {
        Ok(VecInj::identity(&(a + b)))
    }
    fn counit(&self) -> Result<VecMor, CatError> {
        Ok(VecInj::identity(&0))
    }
    fn delta_inv(&self, a: &usize, b: &usize) -> Result<Option<VecMor>, CatError> {
        Ok(Some(VecInj::identity(&(a + b))))
    }
    fn strong(&self) -> bool {
        true
    }
}

/// Linearization of finite sets: `F(S)` is the vector space with one
/// coordinate per element plus one tracking coordinate (always last in the
/// basis order). A map of sets permutes the element coordinates and fixes the
/// tracker. The comparison morphism embeds `F(S ⊔ T)` into `F(S) ⊕ F(T)` by
/// sending the tracker diagonally to both trackers; it is injective but never
/// surjective, so this functor is lax and not strong.
pub struct FreeSetVectors;

fn position_in(set: &FinObj, x: &str) -> Result<usize, CatError> {
    set.iter()
        .position(|y| y == x)
        .ok_or_else(|| CatError::InvalidMorphism(format!("element `{x}` missing from its set")))
}

impl CotensorFunctor<FinSet, VecLin> for FreeSetVectors {
    const NAME: &'static str = "free-linearization";

    fn obj(&self, s: &FinObj) -> usize {
        s.len() + 1
    }

    fn mor(&self, f: &FinMor) -> Result<VecMor, CatError> {
        let mut mat = Mat::zero(f.dst.len() + 1, f.src.len() + 1);
        for (j, x) in f.src.iter().enumerate() {
            let y = f
                .map
                .get(x)
                .ok_or_else(|| CatError::InvalidMorphism(format!("no image for `{x}`")))?;
            mat.set(position_in(&f.dst, y)?, j, rat_int(1));
        }
        mat.set(f.dst.len(), f.src.len(), rat_int(1));
        Ok(VecMor::new(mat))
    }

    fn delta(&self, a: &FinObj, b: &FinObj) -> Result<VecMor, CatError> {
        // The tagged union sorts every left element before every right
        // element, in the same relative order as the factors, so the first
        // |A| source coordinates line up with A and the next |B| with B.
        let (na, nb) = (a.len(), b.len());
        let mut mat = Mat::zero(na + nb + 2, na + nb + 1);
        for j in 0..na {
            mat.set(j, j, rat_int(1));
        }
        for j in 0..nb {
            mat.set(na + 1 + j, na + j, rat_int(1));
        }
        mat.set(na, na + nb, rat_int(1));
        mat.set(na + 1 + nb, na + nb, rat_int(1));
        Ok(VecMor::new(mat))
    }

    fn counit(&self) -> Result<VecMor, CatError> {
        Ok(VecMor::new(Mat::zero(0, 1)))
    }
}

/// The composite of two cotensor functors, with the pasted comparison
/// morphisms. The middle category has to be named because it appears in
/// neither endpoint.
pub struct ComposedFunctor<F, G, Mid> {
    first: F,
    second: G,
    mid: PhantomData<Mid>,
}

impl<F, G, Mid> ComposedFunctor<F, G, Mid> {
    pub fn new(first: F, second: G) -> ComposedFunctor<F, G, Mid> {
        ComposedFunctor { first, second, mid: PhantomData }
    }
}

impl<C, Mid, E, F, G> CotensorFunctor<C, E> for ComposedFunctor<F, G, Mid>
where
    C: TensorCategory,
    Mid: TensorCategory,
    E: TensorCategory,
    F: CotensorFunctor<C, Mid>,
    G: CotensorFunctor<Mid, E>,
{
    const NAME: &'static str = "composed";

    fn obj(&self, a: &C::Obj) -> E::Obj {
        self.second.obj(&self.first.obj(a))
    }
    fn mor(&self, f: &C::Mor) -> Result<E::Mor, CatError> {
        self.second.mor(&self.first.mor(f)?)
    }
    fn delta(&self, a: &C::Obj, b: &C::Obj) -> Result<E::Mor, CatError> {
        let inner = self.second.mor(&self.first.delta(a, b)?)?;
        E::compose(&self.second.delta(&self.first.obj(a), &self.first.obj(b))?, &inner)
    }
    fn counit(&self) -> Result<E::Mor, CatError> {
        let inner = self.second.mor(&self.first.counit()?)?;
        E::compose(&self.second.counit()?, &inner)
    }
    fn delta_inv(&self, a: &C::Obj, b: &C::Obj) -> Result<Option<E::Mor>, CatError> {
        let Some(outer) = self
            .second
            .delta_inv(&self.first.obj(a), &self.first.obj(b))?
        else {
            return Ok(None);
        };
        let Some(inner) = self.first.delta_inv(a, b)? else {
            return Ok(None);
        };
        Ok(Some(E::compose(&self.second.mor(&inner)?, &outer)?))
    }
    fn strong(&self) -> bool {
        self.first.strong() && self.second.strong()
    }
}

// ---------------------------------------------------------------------------
// convolution-semigroup constructors
// ---------------------------------------------------------------------------

fn graded_times(monoid: &Monoid, horizon: usize) -> Result<Vec<MonoidValue>, CatError> {
    match monoid.kind {
        MonoidKind::NatAdd => Ok((0..=horizon as u64).map(MonoidValue::Nat).collect()),
        MonoidKind::DyadicGrid { .. } => {
            Ok((0..=horizon as u64).map(MonoidValue::Dyadic).collect())
        }
        _ => Err(CatError::Domain(format!(
            "convolution systems need a graded totally ordered time monoid, not {}",
            monoid.kind
        ))),
    }
}

/// Cyclic convolution of two distributions on `Z/n`.
pub fn cyclic_convolution(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len();
    let mut out = vec![Rat::zero(); n];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[(i + j) % n] += x * y;
        }
    }
    out
}

/// The random-walk marginals on `Z/n`: point mass at `0`, then iterated
/// cyclic convolutions of `step`.
pub fn cyclic_walk_marginals(step: &[Rat], horizon: usize) -> Vec<Vec<Rat>> {
    let mut point = vec![Rat::zero(); step.len()];
    point[0] = rat_int(1);
    let mut out = vec![point];
    for k in 1..=horizon {
        out.push(cyclic_convolution(&out[k - 1], step));
    }
    out
}

/// Builds the cyclic-group system from explicit per-time distributions:
/// `marginals[k]` is the distribution of the walk at the weight-`k` time. The
/// splitting at `(s, t)` is addition on `Z/n`, read backwards as all
/// probability morphisms here are, and the counit pins time zero to the point
/// mass at `0`. Families that are not convolution semigroups are rejected
/// with the offending pair.
pub fn cyclic_system_from_marginals(
    monoid: Monoid,
    marginals: &[Vec<Rat>],
) -> Result<ComonoidalSystem<ProbOp>, CatError> {
    let times = graded_times(&monoid, marginals.len().saturating_sub(1))?;
    let n = match marginals.first() {
        Some(first) if !first.is_empty() => first.len(),
        _ => {
            return Err(CatError::Domain(
                "need at least one nonempty distribution".into(),
            ))
        }
    };
    let mut objects = BTreeMap::new();
    for (k, dist) in marginals.iter().enumerate() {
        if dist.len() != n {
            return Err(CatError::Domain(format!(
                "distribution at weight {k} has {} outcomes, expected {n}",
                dist.len()
            )));
        }
        let outcomes = (0..n).map(|i| i.to_string()).collect();
        objects.insert(times[k].clone(), ProbObj::new(outcomes, dist.clone())?);
    }

    let mut deltas = BTreeMap::new();
    for (a, s) in times.iter().enumerate() {
        for (b, t) in times.iter().enumerate() {
            if a + b >= times.len() {
                continue;
            }
            // Backward map: the joint outcome (i, j) came from i + j mod n.
            let mut back = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    back.push((i + j) % n);
                }
            }
            let split = ProbMor::new(
                objects[&times[a + b]].clone(),
                ProbOp::tensor_obj(&objects[s], &objects[t]),
                back,
            );
            if let Err(e) = ProbOp::check_mor(&split) {
                return Err(CatError::Domain(format!(
                    "marginals are not a convolution semigroup at ({}, {}): {e}",
                    monoid.show(s),
                    monoid.show(t)
                )));
            }
            deltas.insert((s.clone(), t.clone()), split);
        }
    }

    let counit = ProbMor::new(objects[&times[0]].clone(), ProbOp::unit(), vec![0]);
    if let Err(e) = ProbOp::check_mor(&counit) {
        return Err(CatError::Domain(format!(
            "time-zero marginal must be the point mass at 0: {e}"
        )));
    }
    ComonoidalSystem::new(monoid, objects, deltas, counit)
}

/// The classical random walk on `Z/n` with one-step distribution `step`,
/// over times of weight at most `horizon`.
pub fn cyclic_walk_system(
    monoid: Monoid,
    step: &[Rat],
    horizon: usize,
) -> Result<ComonoidalSystem<ProbOp>, CatError> {
    cyclic_system_from_marginals(monoid, &cyclic_walk_marginals(step, horizon))
}

/// The multiplicative state determined by scalar generator values: the value
/// of a word is the product of its letters' values. This is the convolution
/// unit for a comultiplication whose counit takes exactly these values.
pub fn multiplicative_state(
    symbols: Vec<String>,
    degree: usize,
    eps: &[Rat],
) -> Result<MomentFunctional, UniprodError> {
    let values = words_up_to(symbols.len(), degree)
        .into_iter()
        .map(|w| {
            let v = w.iter().map(|s| eps[*s].clone()).product();
            (w, v)
        })
        .collect();
    MomentFunctional::new(symbols, degree, values)
}

/// Iterated convolution powers of a single state, `steps + 1` entries in
/// total, starting from the unit state with generator values `eps`.
pub fn convolution_powers(
    kind: ProductKind,
    phi: &MomentFunctional,
    comult: &Comultiplication,
    eps: &[Rat],
    steps: usize,
) -> Result<Vec<MomentFunctional>, UniprodError> {
    let mut out = vec![multiplicative_state(phi.symbols.clone(), phi.degree, eps)?];
    for k in 1..=steps {
        out.push(convolve(kind, &out[k - 1], phi, comult)?);
    }
    Ok(out)
}

/// Builds a one-leg state-space system from a convolution semigroup of
/// states: the weight-`k` object carries `states[k]`, every splitting
/// substitutes the comultiplication's two-legged images, and the counit sends
/// each generator to its scalar `eps` value. Validity of the splittings is
/// exactly the semigroup property of the family, so a family with
/// `states[s] ⋆ states[t] ≠ states[s+t]` is rejected with the offending pair.
pub fn state_system_from_semigroup<P: ProductPolicy>(
    monoid: Monoid,
    comult: &Comultiplication,
    eps: &[Rat],
    states: &[MomentFunctional],
) -> Result<ComonoidalSystem<Qps<P>>, CatError> {
    let times = graded_times(&monoid, states.len().saturating_sub(1))?;
    if states.is_empty() {
        return Err(CatError::Domain("need at least the time-zero state".into()));
    }
    if eps.len() != comult.symbols.len() {
        return Err(CatError::Domain(format!(
            "counit gives {} values for {} generators",
            eps.len(),
            comult.symbols.len()
        )));
    }
    for (k, phi) in states.iter().enumerate() {
        if phi.symbols != comult.symbols {
            return Err(CatError::Domain(format!(
                "state at weight {k} uses different generators than the comultiplication"
            )));
        }
    }

    let objects: BTreeMap<_, _> = states
        .iter()
        .enumerate()
        .map(|(k, phi)| (times[k].clone(), QpsObj::single(phi.clone())))
        .collect();

    let split_images: Vec<Element> = comult
        .images
        .iter()
        .map(|e| normal_form(e, P::COMMUTING))
        .collect();

    let mut deltas = BTreeMap::new();
    for (a, s) in times.iter().enumerate() {
        for (b, t) in times.iter().enumerate() {
            if a + b >= times.len() {
                continue;
            }
            let split = QpsMor {
                src: objects[&times[a + b]].clone(),
                dst: Qps::<P>::tensor_obj(&objects[s], &objects[t]),
                images: vec![split_images.clone()],
            };
            if let Err(e) = Qps::<P>::check_mor(&split) {
                return Err(CatError::Domain(format!(
                    "states are not a convolution semigroup at ({}, {}): {e}",
                    monoid.show(s),
                    monoid.show(t)
                )));
            }
            deltas.insert((s.clone(), t.clone()), split);
        }
    }

    let counit = QpsMor {
        src: objects[&times[0]].clone(),
        dst: QpsObj::empty(),
        images: vec![eps.iter().cloned().map(Element::scalar).collect()],
    };
    if let Err(e) = Qps::<P>::check_mor(&counit) {
        return Err(CatError::Domain(format!(
            "time-zero state is incompatible with the counit: {e}"
        )));
    }
    ComonoidalSystem::new(monoid, objects, deltas, counit)
}

// ---------------------------------------------------------------------------
// tests
// ---------------------------------------------------------------------------
