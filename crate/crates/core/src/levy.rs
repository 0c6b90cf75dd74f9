//! From splittings to processes.
//!
//! A comonoidal system hands every time `t` a carrier `A_t` together with
//! splittings `Δ_{s,t}: A_{st} → A_s ⊠ A_t`. This module packages the passage
//! from that local data to a genuine time-indexed process: for each `t` the
//! factorizations of `t` form a directed set, iterated splittings give a
//! compatible family of morphisms along refinements, and the (attained)
//! inductive limit `𝒜_t` carries one increment morphism `j_{s,t}: A_{s\t} → 𝒜_H`
//! for every pair `s ≤ t` below the horizon `H`. The increments of the
//! resulting family are stationary (they depend only on the gap `s\t`) and
//! independent in the tensor sense, and `verify` checks all of that from the
//! constructed data rather than assuming it.
//!
//! The construction needs the time monoid to be graded and totally ordered by
//! divisibility — naturals under addition or a fixed dyadic grid — because a
//! window `{0, …, H}` must contain every part of every factorization it uses.
//!
//! Two exact consumers live at the bottom: joint laws of increments for
//! probability-space processes ([`increment_law`]) and mixed moments of
//! increments for state-space processes ([`increment_moment`]).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::catcore::coherence::{coherence_iso, coherence_iso_pair, IsoPair, ObjTree};
use crate::catcore::{
    canonical_inclusions, multi_inclusion, pipeline, tensor_all, tensor_all_mor, CatError,
    TensorCategory,
};
use crate::comonoidal::ComonoidalSystem;
use crate::instances::probop::{ProbOp, ProbObj};
use crate::instances::qps::{ProductPolicy, Qps};
use crate::limits::{AttainedLimit, InductiveSystem};
use crate::monoid::{Factorization, Monoid, MonoidKind, MonoidValue};
use crate::rat::Rat;
use crate::report::Report;
use crate::words::Element;

// ---------------------------------------------------------------------------
// The process
// ---------------------------------------------------------------------------

/// A process constructed from a comonoidal system by refinement limits.
///
/// `refinements[t]` is the directed system of factorizations of `t`: indices
/// are part lists, objects are the corresponding tensor products of carriers,
/// and the connecting morphisms apply the system splittings blockwise. Every
/// such system has an attained limit (the factorization into weight-one
/// atoms dominates), stored in `limits[t]` together with the canonical
/// injections `D^σ: A_{σ_1} ⊠ … ⊠ A_{σ_n} → 𝒜_t`.
pub struct LevyProcess<C: TensorCategory> {
    pub system: ComonoidalSystem<C>,
    /// The window, ordered by weight; `times[k]` is the unique time of weight `k`.
    pub times: Vec<MonoidValue>,
    pub refinements: BTreeMap<MonoidValue, InductiveSystem<C, Vec<MonoidValue>>>,
    pub limits: BTreeMap<MonoidValue, AttainedLimit<C, Vec<MonoidValue>>>,
}

impl<C: TensorCategory> Clone for LevyProcess<C> {
    fn clone(&self) -> Self {
        LevyProcess {
            system: self.system.clone(),
            times: self.times.clone(),
            refinements: self.refinements.clone(),
            limits: self.limits.clone(),
        }
    }
}

impl<C: TensorCategory> fmt::Debug for LevyProcess<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LevyProcess")
            .field("system", &self.system)
            .field("times", &self.times)
            .field("refinements", &self.refinements)
            .field("limits", &self.limits)
            .finish()
    }
}

impl<C: TensorCategory> LevyProcess<C> {
    /// Builds the refinement systems and their limits for every window time.
    ///
    /// Requires a graded totally ordered time monoid and a weight-complete
    /// window: if the horizon has weight `H`, every weight `0..=H` must be
    /// present, since factorizations reach down to the weight-one atom.
    pub fn build(system: ComonoidalSystem<C>) -> Result<LevyProcess<C>, CatError> {
        let monoid = system.monoid.clone();
        match monoid.kind {
            MonoidKind::NatAdd | MonoidKind::DyadicGrid { .. } => {}
            _ => {
                return Err(CatError::Domain(format!(
                    "the inductive-limit construction needs a graded totally ordered \
                     time monoid, not {}",
                    monoid.kind
                )))
            }
        }

        let mut by_weight: BTreeMap<usize, MonoidValue> = BTreeMap::new();
        for t in system.window() {
            by_weight.insert(monoid.weight(&t), t);
        }
        let top = *by_weight.keys().next_back().expect("a window always contains the unit");
        let mut times = Vec::with_capacity(top + 1);
        for k in 0..=top {
            match by_weight.remove(&k) {
                Some(t) => times.push(t),
                None => {
                    return Err(CatError::Domain(format!(
                        "the time window skips weight {k}; refinement needs every time \
                         up to the horizon"
                    )))
                }
            }
        }

        let mut refinements = BTreeMap::new();
        let mut limits = BTreeMap::new();
        for t in &times {
            let facts = monoid
                .all_factorizations(t)
                .map_err(|e| CatError::Domain(e.to_string()))?;

            let mut objects = BTreeMap::new();
            for f in &facts {
                let mut part_objs = Vec::with_capacity(f.len());
                for p in &f.parts {
                    part_objs.push(system.obj(p)?.clone());
                }
                objects.insert(f.parts.clone(), tensor_all::<C>(&part_objs));
            }

            let mut connect = BTreeMap::new();
            for coarse in &facts {
                for fine in &facts {
                    let blocks = match monoid
                        .refines(fine, coarse)
                        .map_err(|e| CatError::Domain(e.to_string()))?
                    {
                        Some(b) => b,
                        None => continue,
                    };
                    let mor = refinement_splitting(&system, coarse, &blocks.blocks)?;
                    connect.insert((coarse.parts.clone(), fine.parts.clone()), mor);
                }
            }

            let directed = InductiveSystem::new(objects, connect)?;
            let limit = directed.attained_limit()?;
            refinements.insert(t.clone(), directed);
            limits.insert(t.clone(), limit);
        }

        Ok(LevyProcess { system, times, refinements, limits })
    }

    pub fn window(&self) -> &[MonoidValue] {
        &self.times
    }

    pub fn horizon(&self) -> &MonoidValue {
        self.times.last().expect("a window always contains the unit")
    }

    /// The limit object `𝒜_t` (the tensor power of the atom carrier).
    pub fn limit_object(&self, t: &MonoidValue) -> Result<&C::Obj, CatError> {
        self.limits
            .get(t)
            .map(|l| &l.object)
            .ok_or_else(|| self.outside_window(t))
    }

    /// The canonical injection `D^σ: A_{σ_1} ⊠ … ⊠ A_{σ_n} → 𝒜_t` of one
    /// factorization `σ` of `t` into the limit.
    pub fn injection(&self, parts: &[MonoidValue]) -> Result<&C::Mor, CatError> {
        let target = self.system.monoid.product(parts);
        let limit = self.limits.get(&target).ok_or_else(|| self.outside_window(&target))?;
        limit.injections.get(parts).ok_or_else(|| {
            CatError::Domain(format!(
                "{} is not a factorization inside the window",
                fmt_parts(&self.system.monoid, parts)
            ))
        })
    }

    /// The embedding `D_t: A_t → 𝒜_t` of the carrier into the limit; at the
    /// unit time this is the counit `A_e → E = 𝒜_e`.
    pub fn embed(&self, t: &MonoidValue) -> Result<C::Mor, CatError> {
        if self.system.monoid.is_unit(t) {
            Ok(self.system.counit.clone())
        } else {
            self.injection(std::slice::from_ref(t)).cloned()
        }
    }

    fn outside_window(&self, t: &MonoidValue) -> CatError {
        CatError::Domain(format!(
            "time {} is outside the window (horizon {})",
            self.system.monoid.show(t),
            self.system.monoid.show(self.horizon())
        ))
    }

    fn atoms_tree(&self, n: usize) -> Result<ObjTree<C::Obj>, CatError> {
        if n == 0 {
            return Ok(ObjTree::left_assoc(&[]));
        }
        let atom_time = self.times.get(1).ok_or_else(|| {
            CatError::Domain("the window has no weight-one atom".to_string())
        })?;
        let atom = self.system.obj(atom_time)?.clone();
        Ok(ObjTree::left_assoc(&vec![ObjTree::Leaf(atom); n]))
    }

    fn parts_tree(&self, parts: &[MonoidValue]) -> Result<ObjTree<C::Obj>, CatError> {
        let mut leaves = Vec::with_capacity(parts.len());
        for p in parts {
            leaves.push(ObjTree::Leaf(self.system.obj(p)?.clone()));
        }
        Ok(ObjTree::left_assoc(&leaves))
    }

    /// The limit-level splitting `Δ̃_{s,t}: 𝒜_{st} → 𝒜_s ⊠ 𝒜_t`, returned with
    /// its inverse. Both legs are pure re-association: the limit objects are
    /// tensor powers of one atom, so the splitting is the canonical coherence
    /// isomorphism between the two bracketings.
    pub fn limit_split(&self, s: &MonoidValue, t: &MonoidValue) -> Result<IsoPair<C>, CatError> {
        let monoid = &self.system.monoid;
        let ws = monoid.weight(s);
        let wt = monoid.weight(t);
        if ws + wt >= self.times.len() {
            return Err(self.outside_window(&monoid.op(s, t)));
        }
        let packed = self.atoms_tree(ws + wt)?;
        let split = ObjTree::pair(self.atoms_tree(ws)?, self.atoms_tree(wt)?);
        coherence_iso_pair::<C>(&packed, &split)
    }

    /// The inclusion `𝒜_s → 𝒜_t` of an earlier limit into a later one, filling
    /// the missing factor with the initial morphism from the unit.
    pub fn past_inclusion(&self, s: &MonoidValue, t: &MonoidValue) -> Result<C::Mor, CatError> {
        let monoid = &self.system.monoid;
        let gap = monoid.divides(s, t).ok_or_else(|| {
            CatError::Domain(format!(
                "{} does not precede {} in the time monoid",
                monoid.show(s),
                monoid.show(t)
            ))
        })?;
        let a = self.limit_object(s)?.clone();
        let b = self.limit_object(&gap)?.clone();
        let (left, _) = canonical_inclusions::<C>(&a, &b)?;
        let merge = self.limit_split(s, &gap)?.bwd;
        C::compose(&merge, &left)
    }

    /// The increment morphism of a nondecreasing tuple of window times:
    /// `j_{(t_0, …, t_n)}: A_{p_1} ⊠ … ⊠ A_{p_n} → 𝒜_H` with `p_k = t_{k-1}\t_k`.
    ///
    /// The gap carriers are embedded into their limits side by side, merged
    /// left to right through the limit splittings, shifted past `t_0`, and
    /// finally included into the horizon limit. A pair `[s, t]` gives the
    /// single increment `j_{s,t}`; equal consecutive times contribute a unit
    /// gap whose image is the constant increment.
    pub fn increment_embedding(&self, times: &[MonoidValue]) -> Result<C::Mor, CatError> {
        if times.len() < 2 {
            return Err(CatError::Domain(
                "an increment embedding needs at least two time points".to_string(),
            ));
        }
        let monoid = &self.system.monoid;
        for t in times {
            if !self.limits.contains_key(t) {
                return Err(self.outside_window(t));
            }
        }
        let mut gaps = Vec::with_capacity(times.len() - 1);
        for k in 1..times.len() {
            let gap = monoid.divides(&times[k - 1], &times[k]).ok_or_else(|| {
                CatError::Domain(format!(
                    "times must be nondecreasing: {} is followed by {}",
                    monoid.show(&times[k - 1]),
                    monoid.show(&times[k])
                ))
            })?;
            gaps.push(gap);
        }

        let mut stages = Vec::new();
        let mut embeds = Vec::with_capacity(gaps.len());
        for gap in &gaps {
            embeds.push(self.embed(gap)?);
        }
        stages.push(tensor_all_mor::<C>(&embeds)?);

        // Merge the leftmost two limit factors until a single one remains.
        let mut merged = gaps[0].clone();
        for k in 1..gaps.len() {
            let mut step = self.limit_split(&merged, &gaps[k])?.bwd;
            for later in &gaps[k + 1..] {
                step = C::tensor_mor(&step, &C::identity(self.limit_object(later)?))?;
            }
            stages.push(step);
            merged = monoid.op(&merged, &gaps[k]);
        }

        // Shift past the start time, then include into the horizon limit.
        if !monoid.is_unit(&times[0]) {
            let head = self.limit_object(&times[0])?.clone();
            let tail = self.limit_object(&merged)?.clone();
            let (_, right) = canonical_inclusions::<C>(&head, &tail)?;
            stages.push(right);
            stages.push(self.limit_split(&times[0], &merged)?.bwd);
        }
        let last = times.last().expect("at least two times");
        stages.push(self.past_inclusion(last, self.horizon())?);
        pipeline::<C>(&stages)
    }

    /// Checks every law the constructed process is supposed to satisfy.
    ///
    /// Beyond the underlying system laws and the per-time refinement system
    /// laws, this verifies that the limit splittings are isomorphisms, that
    /// they restrict to the defining squares of the limit injections, that
    /// they are coassociative and counital, that the embeddings intertwine
    /// them with the original splittings, and that the increments are valid
    /// morphisms which are stationary, additive and independent. Independence
    /// is checked for every nondecreasing chain with at most `max_n` gaps by
    /// composing the joint increment morphism with each canonical slot
    /// inclusion and comparing against the single increment.
    pub fn verify(&self, max_n: usize) -> Report {
        let monoid = self.system.monoid.clone();
        let mut report = Report::new(format!("levy[{}/{}]", C::NAME, monoid.kind));
        let h = self.times.len() - 1;

        report.absorb(self.system.check_system_laws());
        for (t, directed) in &self.refinements {
            let mut r = directed.check_system_laws();
            r.suite = format!("refinements at {}", monoid.show(t));
            report.absorb(r);
        }

        // Pairwise laws of the limit splittings.
        for ws in 0..=h {
            for wt in 0..=(h - ws) {
                let s = self.times[ws].clone();
                let t = self.times[wt].clone();
                let st = monoid.op(&s, &t);
                let witness = format!("({}, {})", monoid.show(&s), monoid.show(&t));

                report.check(
                    "limit split inversion",
                    &witness,
                    (|| -> Result<bool, CatError> {
                        let split = self.limit_split(&s, &t)?;
                        let split_obj =
                            C::tensor_obj(self.limit_object(&s)?, self.limit_object(&t)?);
                        Ok(C::compose(&split.fwd, &split.bwd)? == C::identity(&split_obj)
                            && C::compose(&split.bwd, &split.fwd)?
                                == C::identity(self.limit_object(&st)?))
                    })(),
                );

                report.check(
                    "embedding intertwines the splittings",
                    &witness,
                    (|| -> Result<bool, CatError> {
                        let lhs = C::compose(&self.limit_split(&s, &t)?.fwd, &self.embed(&st)?)?;
                        let tensored = C::tensor_mor(&self.embed(&s)?, &self.embed(&t)?)?;
                        let rhs = C::compose(&tensored, self.system.delta(&s, &t)?)?;
                        Ok(lhs == rhs)
                    })(),
                );

                let sigmas: Vec<Vec<MonoidValue>> =
                    self.refinements[&s].objects.keys().cloned().collect();
                let taus: Vec<Vec<MonoidValue>> =
                    self.refinements[&t].objects.keys().cloned().collect();
                for sigma in &sigmas {
                    for tau in &taus {
                        let square = format!(
                            "({}, {}) at {} and {}",
                            monoid.show(&s),
                            monoid.show(&t),
                            fmt_parts(&monoid, sigma),
                            fmt_parts(&monoid, tau)
                        );
                        report.check(
                            "defining square",
                            &square,
                            (|| -> Result<bool, CatError> {
                                let mut concat = sigma.clone();
                                concat.extend(tau.iter().cloned());
                                let lhs = C::compose(
                                    &self.limit_split(&s, &t)?.fwd,
                                    self.injection(&concat)?,
                                )?;
                                let kappa = coherence_iso::<C>(
                                    &self.parts_tree(&concat)?,
                                    &ObjTree::pair(
                                        self.parts_tree(sigma)?,
                                        self.parts_tree(tau)?,
                                    ),
                                )?;
                                let tensored =
                                    C::tensor_mor(self.injection(sigma)?, self.injection(tau)?)?;
                                Ok(lhs == C::compose(&tensored, &kappa)?)
                            })(),
                        );
                    }
                }
            }
        }

        // Coassociativity of the limit splittings.
        for wr in 0..=h {
            for ws in 0..=(h - wr) {
                for wt in 0..=(h - wr - ws) {
                    let r = self.times[wr].clone();
                    let s = self.times[ws].clone();
                    let t = self.times[wt].clone();
                    let witness = format!(
                        "({}, {}, {})",
                        monoid.show(&r),
                        monoid.show(&s),
                        monoid.show(&t)
                    );
                    report.check(
                        "limit coassociativity",
                        &witness,
                        (|| -> Result<bool, CatError> {
                            let rs = monoid.op(&r, &s);
                            let st = monoid.op(&s, &t);
                            let id_t = C::identity(self.limit_object(&t)?);
                            let lhs = C::compose(
                                &C::tensor_mor(&self.limit_split(&r, &s)?.fwd, &id_t)?,
                                &self.limit_split(&rs, &t)?.fwd,
                            )?;
                            let id_r = C::identity(self.limit_object(&r)?);
                            let alpha = C::assoc(
                                self.limit_object(&r)?,
                                self.limit_object(&s)?,
                                self.limit_object(&t)?,
                            );
                            let rhs = pipeline::<C>(&[
                                self.limit_split(&r, &st)?.fwd,
                                C::tensor_mor(&id_r, &self.limit_split(&s, &t)?.fwd)?,
                                alpha,
                            ])?;
                            Ok(lhs == rhs)
                        })(),
                    );
                }
            }
        }

        // Per-time laws: counitality at the limit and the degenerate increments.
        let unit = monoid.unit();
        for wt in 0..=h {
            let t = self.times[wt].clone();
            let witness = monoid.show(&t);

            report.check(
                "limit counit",
                &witness,
                (|| -> Result<bool, CatError> {
                    let a = self.limit_object(&t)?;
                    let from_left = C::compose(&C::lunit(a), &self.limit_split(&unit, &t)?.fwd)?;
                    let from_right = C::compose(&C::runit(a), &self.limit_split(&t, &unit)?.fwd)?;
                    Ok(from_left == C::identity(a) && from_right == C::identity(a))
                })(),
            );

            report.check(
                "unit increment",
                &witness,
                (|| -> Result<bool, CatError> {
                    let j = self.increment_embedding(&[t.clone(), t.clone()])?;
                    let expected = C::compose(
                        &C::initial_mor(self.limit_object(self.horizon())?),
                        &self.system.counit,
                    )?;
                    Ok(j == expected)
                })(),
            );
        }

        // Every single increment is a genuine morphism of the instance.
        for ws in 0..=h {
            for wt in ws..=h {
                let s = self.times[ws].clone();
                let t = self.times[wt].clone();
                let witness = format!("({}, {})", monoid.show(&s), monoid.show(&t));
                report.check(
                    "increment validity",
                    &witness,
                    (|| -> Result<bool, CatError> {
                        let j = self.increment_embedding(&[s.clone(), t.clone()])?;
                        C::check_mor(&j)?;
                        Ok(true)
                    })(),
                );
            }
        }

        // Additivity: composing a two-step increment with the splitting of
        // its gaps recovers the one-step increment.
        for wr in 0..=h {
            for ws in wr..=h {
                for wt in ws..=h {
                    let r = self.times[wr].clone();
                    let s = self.times[ws].clone();
                    let t = self.times[wt].clone();
                    let witness = format!(
                        "({}, {}, {})",
                        monoid.show(&r),
                        monoid.show(&s),
                        monoid.show(&t)
                    );
                    report.check(
                        "increment additivity",
                        &witness,
                        (|| -> Result<bool, CatError> {
                            let p = monoid.divides(&r, &s).expect("weights are ordered");
                            let q = monoid.divides(&s, &t).expect("weights are ordered");
                            let pair =
                                self.increment_embedding(&[r.clone(), s.clone(), t.clone()])?;
                            let lhs = C::compose(&pair, self.system.delta(&p, &q)?)?;
                            Ok(lhs == self.increment_embedding(&[r.clone(), t.clone()])?)
                        })(),
                    );
                }
            }
        }

        // Independence: the joint increment morphism restricts to each single
        // increment along the canonical slot inclusions.
        for n in 2..=max_n {
            for tuple in nondecreasing_tuples(h, n + 1) {
                let chain: Vec<MonoidValue> =
                    tuple.iter().map(|&w| self.times[w].clone()).collect();
                let witness = chain
                    .iter()
                    .map(|t| monoid.show(t))
                    .collect::<Vec<_>>()
                    .join(" <= ");
                report.check(
                    "increment independence",
                    &witness,
                    (|| -> Result<bool, CatError> {
                        let joint = self.increment_embedding(&chain)?;
                        let mut sources = Vec::with_capacity(n);
                        for k in 0..n {
                            let gap = monoid
                                .divides(&chain[k], &chain[k + 1])
                                .expect("chain is nondecreasing");
                            sources.push(self.system.obj(&gap)?.clone());
                        }
                        for k in 0..n {
                            let slot = multi_inclusion::<C>(&sources, &[k])?;
                            let single = self.increment_embedding(&chain[k..=k + 1])?;
                            if C::compose(&joint, &slot)? != single {
                                return Ok(false);
                            }
                        }
                        Ok(true)
                    })(),
                );
            }
        }

        report
    }

    /// The directed system over *all* window factorizations, ordered by
    /// "refine an initial segment": `σ ≤ τ` when some prefix of `τ` refines
    /// `σ` (so in particular the product of `σ` divides the product of `τ`).
    /// Its attained limit is the horizon limit reached in a single sweep,
    /// without the per-time systems as intermediate stages.
    pub fn interval_system(&self) -> Result<InductiveSystem<C, Vec<MonoidValue>>, CatError> {
        let monoid = &self.system.monoid;
        let mut objects: BTreeMap<Vec<MonoidValue>, C::Obj> = BTreeMap::new();
        for directed in self.refinements.values() {
            for (parts, obj) in &directed.objects {
                objects.insert(parts.clone(), obj.clone());
            }
        }

        let keys: Vec<Vec<MonoidValue>> = objects.keys().cloned().collect();
        let mut connect = BTreeMap::new();
        for a in &keys {
            let ta = monoid.product(a);
            for b in &keys {
                // The prefix products of `b` strictly increase, so at most one
                // initial segment can multiply out to `ta`.
                let mut prod = monoid.unit();
                let mut cut = if prod == ta { Some(0) } else { None };
                if cut.is_none() {
                    for (k, p) in b.iter().enumerate() {
                        prod = monoid.op(&prod, p);
                        if prod == ta {
                            cut = Some(k + 1);
                            break;
                        }
                    }
                }
                let Some(cut) = cut else { continue };
                let prefix = Factorization { target: ta.clone(), parts: b[..cut].to_vec() };
                let whole = Factorization { target: ta.clone(), parts: a.clone() };
                let blocks = match monoid
                    .refines(&prefix, &whole)
                    .map_err(|e| CatError::Domain(e.to_string()))?
                {
                    Some(blocks) => blocks,
                    None => continue,
                };
                let split = refinement_splitting(&self.system, &whole, &blocks.blocks)?;
                if b.is_empty() {
                    // Both factorizations are the empty one; the connecting
                    // morphism is the identity of the unit.
                    connect.insert((a.clone(), b.clone()), split);
                    continue;
                }
                let mut part_objs = Vec::with_capacity(b.len());
                for p in b {
                    part_objs.push(self.system.obj(p)?.clone());
                }
                let indices: Vec<usize> = (0..cut).collect();
                let include = multi_inclusion::<C>(&part_objs, &indices)?;
                connect.insert((a.clone(), b.clone()), C::compose(&include, &split)?);
            }
        }
        InductiveSystem::new(objects, connect)
    }

    /// Runs the interval-system construction and checks that it produces the
    /// same limits as the per-time refinement systems: stage limits at the
    /// checkpoints match `𝒜_t`, the outer connecting morphisms are the past
    /// inclusions, and the nested limit over the checkpoint chain agrees with
    /// the direct limit over the whole window.
    pub fn check_interval_limits(
        &self,
        checkpoints: &[MonoidValue],
    ) -> Result<Report, CatError> {
        let monoid = self.system.monoid.clone();
        if checkpoints.is_empty() {
            return Err(CatError::Domain("need at least one checkpoint".to_string()));
        }
        for c in checkpoints {
            if !self.limits.contains_key(c) {
                return Err(self.outside_window(c));
            }
        }
        for pair in checkpoints.windows(2) {
            if monoid.weight(&pair[0]) >= monoid.weight(&pair[1]) {
                return Err(CatError::Domain(format!(
                    "checkpoints must strictly increase: {} is followed by {}",
                    monoid.show(&pair[0]),
                    monoid.show(&pair[1])
                )));
            }
        }
        if checkpoints.last() != Some(self.horizon()) {
            return Err(CatError::Domain(format!(
                "the last checkpoint must be the horizon {}",
                monoid.show(self.horizon())
            )));
        }

        let mut report = Report::new(format!("interval[{}/{}]", C::NAME, monoid.kind));
        let system = self.interval_system()?;
        report.absorb(system.check_system_laws());

        let chain: Vec<std::collections::BTreeSet<Vec<MonoidValue>>> = checkpoints
            .iter()
            .map(|c| {
                system
                    .objects
                    .keys()
                    .filter(|parts| monoid.leq(&monoid.product(parts), c))
                    .cloned()
                    .collect()
            })
            .collect();
        let nested = system.nested_limit(&chain)?;

        for (i, c) in checkpoints.iter().enumerate() {
            report.check(
                "stage limit matches the refinement limit",
                &format!("checkpoint {}", monoid.show(c)),
                Ok::<bool, CatError>(nested.stages[i].object == *self.limit_object(c)?),
            );
        }
        for i in 0..checkpoints.len() {
            for j in i..checkpoints.len() {
                let witness = format!(
                    "({}, {})",
                    monoid.show(&checkpoints[i]),
                    monoid.show(&checkpoints[j])
                );
                report.check(
                    "stage connection is the past inclusion",
                    &witness,
                    (|| -> Result<bool, CatError> {
                        let outer = nested.outer.connect.get(&(i, j)).ok_or_else(|| {
                            CatError::Domain(format!("missing outer connection {witness}"))
                        })?;
                        Ok(*outer == self.past_inclusion(&checkpoints[i], &checkpoints[j])?)
                    })(),
                );
            }
        }
        report.check(
            "nested and direct limits agree",
            "whole window",
            Ok::<bool, CatError>(nested.whole.object == *self.limit_object(self.horizon())?),
        );
        Ok(report)
    }
}

// ---------------------------------------------------------------------------
// Splitting a carrier along a factorization
// ---------------------------------------------------------------------------

/// The iterated splitting `Δ^σ: A_t → A_{σ_1} ⊠ … ⊠ A_{σ_n}` of a carrier
/// along one factorization, bracketed to the left. The empty factorization is
/// the counit and a single part is the identity; coassociativity of the
/// system makes every other bracketing order agree after re-association.
fn nary_splitting<C: TensorCategory>(
    system: &ComonoidalSystem<C>,
    parts: &[MonoidValue],
) -> Result<C::Mor, CatError> {
    match parts {
        [] => Ok(system.counit.clone()),
        [p] => Ok(C::identity(system.obj(p)?)),
        _ => {
            let monoid = &system.monoid;
            let mut acc = system.delta(&parts[0], &parts[1])?.clone();
            let mut head = monoid.op(&parts[0], &parts[1]);
            for p in &parts[2..] {
                let step = system.delta(&head, p)?.clone();
                let lifted = C::tensor_mor(&acc, &C::identity(system.obj(p)?))?;
                acc = C::compose(&lifted, &step)?;
                head = monoid.op(&head, p);
            }
            Ok(acc)
        }
    }
}

/// The connecting morphism of a refinement: split every coarse part along its
/// block, tensor the results, and re-associate the blockwise bracketing into
/// the flat left bracketing of the fine factorization.
fn refinement_splitting<C: TensorCategory>(
    system: &ComonoidalSystem<C>,
    coarse: &Factorization,
    blocks: &[Factorization],
) -> Result<C::Mor, CatError> {
    if coarse.parts.is_empty() {
        return Ok(C::identity(&C::unit()));
    }
    let mut per_block = Vec::with_capacity(blocks.len());
    let mut slotted = Vec::with_capacity(blocks.len());
    let mut packed = Vec::new();
    for block in blocks {
        per_block.push(nary_splitting(system, &block.parts)?);
        let mut leaves = Vec::with_capacity(block.len());
        for p in &block.parts {
            leaves.push(ObjTree::Leaf(system.obj(p)?.clone()));
        }
        packed.extend(leaves.iter().cloned());
        slotted.push(ObjTree::left_assoc(&leaves));
    }
    let stacked = tensor_all_mor::<C>(&per_block)?;
    let spread =
        coherence_iso::<C>(&ObjTree::left_assoc(&slotted), &ObjTree::left_assoc(&packed))?;
    C::compose(&spread, &stacked)
}

/// All nondecreasing tuples of the given length drawn from `0..=top`.
fn nondecreasing_tuples(top: usize, len: usize) -> Vec<Vec<usize>> {
    fn rec(top: usize, len: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in start..=top {
            cur.push(v);
            rec(top, len, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(top, len, 0, &mut Vec::with_capacity(len), &mut out);
    out
}

fn fmt_parts(monoid: &Monoid, parts: &[MonoidValue]) -> String {
    monoid.show_factorization(&Factorization {
        target: monoid.product(parts),
        parts: parts.to_vec(),
    })
}

// ---------------------------------------------------------------------------
// Exact laws of probability-space increments
// ---------------------------------------------------------------------------

/// The exact joint law of finitely many increments of a probability-space
/// process, stored row-major over the grid of per-increment outcomes.
#[derive(Clone, Debug, PartialEq)]
pub struct JointLaw {
    pub intervals: Vec<(MonoidValue, MonoidValue)>,
    /// Outcome labels of each increment, in interval order.
    pub outcomes: Vec<Vec<String>>,
    pub weights: Vec<Rat>,
}

impl JointLaw {
    pub fn sizes(&self) -> Vec<usize> {
        self.outcomes.iter().map(|o| o.len()).collect()
    }

    /// The probability of one grid cell.
    pub fn prob(&self, cell: &[usize]) -> Result<&Rat, CatError> {
        let sizes = self.sizes();
        if cell.len() != sizes.len() {
            return Err(CatError::Shape(format!(
                "a cell of this law has {} coordinates, not {}",
                sizes.len(),
                cell.len()
            )));
        }
        let mut idx = 0;
        for (c, size) in cell.iter().zip(&sizes) {
            if c >= size {
                return Err(CatError::Shape(format!(
                    "coordinate {c} is out of range for an axis of size {size}"
                )));
            }
            idx = idx * size + c;
        }
        Ok(&self.weights[idx])
    }

    /// Sums out every axis not listed in `keep` (strictly increasing indices).
    pub fn marginal(&self, keep: &[usize]) -> Result<JointLaw, CatError> {
        let sizes = self.sizes();
        for pair in keep.windows(2) {
            if pair[0] >= pair[1] {
                return Err(CatError::Domain(
                    "marginal axes must be strictly increasing".to_string(),
                ));
            }
        }
        if keep.iter().any(|&k| k >= sizes.len()) {
            return Err(CatError::Domain(format!(
                "a marginal axis is out of range for a law with {} increments",
                sizes.len()
            )));
        }
        let kept_sizes: Vec<usize> = keep.iter().map(|&k| sizes[k]).collect();
        let mut weights = vec![Rat::zero(); kept_sizes.iter().product()];
        for (flat, w) in self.weights.iter().enumerate() {
            // Decode the row-major cell, then re-encode the kept axes.
            let mut cell = vec![0usize; sizes.len()];
            let mut rest = flat;
            for axis in (0..sizes.len()).rev() {
                cell[axis] = rest % sizes[axis];
                rest /= sizes[axis];
            }
            let mut idx = 0;
            for (&k, size) in keep.iter().zip(&kept_sizes) {
                idx = idx * size + cell[k];
            }
            weights[idx] += w.clone();
        }
        Ok(JointLaw {
            intervals: keep.iter().map(|&k| self.intervals[k].clone()).collect(),
            outcomes: keep.iter().map(|&k| self.outcomes[k].clone()).collect(),
            weights,
        })
    }
}

/// Computes the exact joint law of the increments `X_t - X_s` over the given
/// intervals by pushing the horizon measure forward along the increment
/// morphisms. Each morphism's backward map sends a point of the horizon
/// sample space to the outcome of its increment, so one sweep over the
/// horizon outcomes accumulates the whole law.
pub fn increment_law(
    process: &LevyProcess<ProbOp>,
    intervals: &[(MonoidValue, MonoidValue)],
) -> Result<JointLaw, CatError> {
    if intervals.is_empty() {
        return Err(CatError::Domain("a joint law needs at least one increment".to_string()));
    }
    let horizon = process.horizon().clone();
    let big: &ProbObj = process.limit_object(&horizon)?;
    let mut vars = Vec::with_capacity(intervals.len());
    for (s, t) in intervals {
        vars.push(process.increment_embedding(&[s.clone(), t.clone()])?);
    }
    let outcomes: Vec<Vec<String>> = vars.iter().map(|v| v.src.outcomes.clone()).collect();
    let sizes: Vec<usize> = outcomes.iter().map(|o| o.len()).collect();
    let mut weights = vec![Rat::zero(); sizes.iter().product()];
    for (point, w) in big.weights.iter().enumerate() {
        let mut idx = 0;
        for (var, size) in vars.iter().zip(&sizes) {
            idx = idx * size + var.back[point];
        }
        weights[idx] += w.clone();
    }
    Ok(JointLaw { intervals: intervals.to_vec(), outcomes, weights })
}

// ---------------------------------------------------------------------------
// Exact moments of state-space increments
// ---------------------------------------------------------------------------

/// Evaluates a mixed moment of one increment of a state-space process: the
/// word in the generators of the gap carrier is pushed through the increment
/// morphism and evaluated in the horizon state.
pub fn increment_moment<P: ProductPolicy>(
    process: &LevyProcess<Qps<P>>,
    s: &MonoidValue,
    t: &MonoidValue,
    word: &[usize],
) -> Result<Rat, CatError> {
    let j = process.increment_embedding(&[s.clone(), t.clone()])?;
    if j.images.len() != 1 {
        return Err(CatError::Domain(
            "increment moments need a carrier with a single generator family".to_string(),
        ));
    }
    let mut elem = Element::one();
    for &sym in word {
        let image = j.images[0]
            .get(sym)
            .ok_or_else(|| CatError::Domain(format!("generator index {sym} is out of range")))?;
        elem = elem.mul(image, P::COMMUTING);
    }
    let horizon = process.horizon().clone();
    let big = process.limit_object(&horizon)?;
    Qps::<P>::eval_element(big, &elem).map_err(|e| CatError::Domain(e.to_string()))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::comonoidal::{
        convolution_powers, cyclic_walk_marginals, cyclic_walk_system, state_system_from_semigroup,
    };
    use crate::instances::finset::{FinMor, FinObj, FinSet};
    use crate::instances::qps::{FreeProd, TensorAlg};
    use crate::monoid::Monoid;
    use crate::rat::{rat, rat_int};
    use crate::uniprod::{Comultiplication, MomentFunctional, ProductKind};
    use crate::words::Letter;

    fn set(elems: &[&str]) -> FinObj {
        elems.iter().map(|s| s.to_string()).collect()
    }

    /// Nothing at time zero, a single point afterwards, split to the left.
    fn tag_system(horizon: u64) -> ComonoidalSystem<FinSet> {
        let monoid = Monoid::nat_add();
        let mut objects = BTreeMap::new();
        objects.insert(MonoidValue::Nat(0), set(&[]));
        for t in 1..=horizon {
            objects.insert(MonoidValue::Nat(t), set(&["a"]));
        }
        let mut deltas = BTreeMap::new();
        for s in 0..=horizon {
            for t in 0..=horizon - s {
                let src = objects[&MonoidValue::Nat(s + t)].clone();
                let dst = FinSet::tensor_obj(
                    &objects[&MonoidValue::Nat(s)],
                    &objects[&MonoidValue::Nat(t)],
                );
                let map: BTreeMap<String, String> = if s + t == 0 {
                    BTreeMap::new()
                } else {
                    let image = if s > 0 { "l:a" } else { "r:a" };
                    [("a".to_string(), image.to_string())].into_iter().collect()
                };
                deltas.insert((MonoidValue::Nat(s), MonoidValue::Nat(t)), FinMor::new(src, dst, map));
            }
        }
        let counit = FinMor::new(set(&[]), FinSet::unit(), BTreeMap::new());
        ComonoidalSystem::new(monoid, objects, deltas, counit).expect("shape is valid")
    }

    fn walk(horizon: usize) -> LevyProcess<ProbOp> {
        let system = cyclic_walk_system(Monoid::nat_add(), &[rat(2, 3), rat(1, 3)], horizon)
            .expect("a convolution semigroup");
        LevyProcess::build(system).expect("the walk window is weight-complete")
    }

    fn group_like_comult() -> Comultiplication {
        Comultiplication {
            symbols: vec!["g".into()],
            images: vec![Element::word(vec![
                Letter { leg: 0, sym: 0 },
                Letter { leg: 1, sym: 0 },
            ])],
        }
    }

    fn primitive_comult() -> Comultiplication {
        let left = Element::word(vec![Letter { leg: 0, sym: 0 }]);
        let right = Element::word(vec![Letter { leg: 1, sym: 0 }]);
        Comultiplication { symbols: vec!["x".into()], images: vec![left.add(&right)] }
    }

    fn sign_flip_state(p: Rat, degree: usize) -> MomentFunctional {
        let mean = rat_int(1) - rat_int(2) * p;
        let mut values = BTreeMap::new();
        for len in 1..=degree {
            let m = if len % 2 == 1 { mean.clone() } else { rat_int(1) };
            values.insert(vec![0usize; len], m);
        }
        MomentFunctional::new(vec!["g".into()], degree, values).expect("complete table")
    }

    #[test]
    fn rejects_a_time_monoid_without_a_grading() {
        let monoid = Monoid::free_words("ab");
        let unit = monoid.unit();
        let mut objects = BTreeMap::new();
        objects.insert(unit.clone(), set(&[]));
        let mut deltas = BTreeMap::new();
        let src = set(&[]);
        let dst = FinSet::tensor_obj(&src, &src);
        deltas.insert((unit.clone(), unit.clone()), FinMor::new(src.clone(), dst, BTreeMap::new()));
        let counit = FinMor::new(src, FinSet::unit(), BTreeMap::new());
        let system = ComonoidalSystem::<FinSet>::new(monoid, objects, deltas, counit)
            .expect("shape is valid");
        let err = LevyProcess::build(system).unwrap_err();
        assert!(err.to_string().contains("graded totally ordered"), "{err}");
    }

    #[test]
    fn rejects_a_window_with_a_weight_gap() {
        let monoid = Monoid::nat_add();
        let mut objects = BTreeMap::new();
        objects.insert(MonoidValue::Nat(0), set(&[]));
        objects.insert(MonoidValue::Nat(2), set(&["a"]));
        let empty = set(&[]);
        let two = set(&["a"]);
        let mut deltas = BTreeMap::new();
        deltas.insert(
            (MonoidValue::Nat(0), MonoidValue::Nat(0)),
            FinMor::new(empty.clone(), FinSet::tensor_obj(&empty, &empty), BTreeMap::new()),
        );
        deltas.insert(
            (MonoidValue::Nat(0), MonoidValue::Nat(2)),
            FinMor::new(
                two.clone(),
                FinSet::tensor_obj(&empty, &two),
                [("a".to_string(), "r:a".to_string())].into_iter().collect(),
            ),
        );
        deltas.insert(
            (MonoidValue::Nat(2), MonoidValue::Nat(0)),
            FinMor::new(
                two.clone(),
                FinSet::tensor_obj(&two, &empty),
                [("a".to_string(), "l:a".to_string())].into_iter().collect(),
            ),
        );
        let counit = FinMor::new(empty, FinSet::unit(), BTreeMap::new());
        let system = ComonoidalSystem::<FinSet>::new(monoid, objects, deltas, counit)
            .expect("shape is valid");
        let err = LevyProcess::build(system).unwrap_err();
        assert!(err.to_string().contains("skips weight 1"), "{err}");
    }

    #[test]
    fn singleton_process_satisfies_every_law() {
        let process = LevyProcess::build(tag_system(4)).expect("weight-complete window");
        let report = process.verify(3);
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn walk_process_satisfies_every_law() {
        let report = walk(4).verify(3);
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn walk_increments_have_the_convolution_laws() {
        let process = walk(4);
        let t = |k: u64| MonoidValue::Nat(k);
        let oracle = cyclic_walk_marginals(&[rat(2, 3), rat(1, 3)], 4);

        // Marginals at every time match the convolution powers of the step.
        for k in 0..=4u64 {
            let law = increment_law(&process, &[(t(0), t(k))]).expect("inside the window");
            assert_eq!(law.weights, oracle[k as usize], "marginal at time {k}");
        }
        // Stationarity: the law of an increment depends only on the gap.
        let later = increment_law(&process, &[(t(1), t(3))]).expect("inside the window");
        let early = increment_law(&process, &[(t(0), t(2))]).expect("inside the window");
        assert_eq!(later.weights, early.weights);
        assert_eq!(early.weights, vec![rat(5, 9), rat(4, 9)]);

        // Consecutive unit increments are independent: the joint law is the
        // product of the step law with itself.
        let joint = increment_law(&process, &[(t(0), t(1)), (t(1), t(2))]).expect("in window");
        let step = [rat(2, 3), rat(1, 3)];
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(*joint.prob(&[i, j]).unwrap(), step[i].clone() * step[j].clone());
            }
        }

        // Marginalizing a joint law is the same as computing the smaller law.
        let pair = increment_law(&process, &[(t(0), t(1)), (t(0), t(2))]).expect("in window");
        let kept = pair.marginal(&[1]).expect("axis in range");
        assert_eq!(kept.weights, early.weights);
        assert_eq!(kept.intervals, vec![(t(0), t(2))]);
    }

    #[test]
    fn walk_interval_limits_agree_with_the_per_time_limits() {
        let process = walk(3);
        let t = |k: u64| MonoidValue::Nat(k);
        let report = process.check_interval_limits(&[t(1), t(2), t(3)]).expect("valid chain");
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn interval_checkpoints_must_end_at_the_horizon() {
        let process = walk(3);
        let t = |k: u64| MonoidValue::Nat(k);
        let err = process.check_interval_limits(&[t(1), t(2)]).unwrap_err();
        assert!(err.to_string().contains("horizon"), "{err}");
    }

    #[test]
    fn increment_times_must_be_nondecreasing_and_inside_the_window() {
        let process = walk(3);
        let t = |k: u64| MonoidValue::Nat(k);
        let err = process.increment_embedding(&[t(2), t(1)]).unwrap_err();
        assert!(err.to_string().contains("nondecreasing"), "{err}");
        let err = process.increment_embedding(&[t(0), t(7)]).unwrap_err();
        assert!(err.to_string().contains("outside the window"), "{err}");
        let err = process.increment_embedding(&[t(1)]).unwrap_err();
        assert!(err.to_string().contains("at least two"), "{err}");
    }

    #[test]
    fn tensor_state_process_satisfies_every_law_and_has_product_moments() {
        let comult = group_like_comult();
        let phi = sign_flip_state(rat(1, 3), 4);
        let states = convolution_powers(ProductKind::Tensor, &phi, &comult, &[rat_int(1)], 3)
            .expect("powers stay bounded");
        let system = state_system_from_semigroup::<TensorAlg>(
            Monoid::nat_add(),
            &comult,
            &[rat_int(1)],
            &states,
        )
        .expect("group-like semigroup");
        let process = LevyProcess::build(system).expect("weight-complete window");
        let report = process.verify(2);
        assert!(report.passed(), "{}", report.render_text());

        let t = |k: u64| MonoidValue::Nat(k);
        // Odd moments of a gap of length two multiply: (1/3)^2.
        assert_eq!(increment_moment(&process, &t(0), &t(2), &[0]).unwrap(), rat(1, 9));
        assert_eq!(increment_moment(&process, &t(1), &t(3), &[0]).unwrap(), rat(1, 9));
        // Even moments of the sign flip are one at every time.
        assert_eq!(increment_moment(&process, &t(0), &t(3), &[0, 0]).unwrap(), rat_int(1));
        // The empty word is the state normalization.
        assert_eq!(increment_moment(&process, &t(0), &t(1), &[]).unwrap(), rat_int(1));
    }

    #[test]
    fn free_state_process_satisfies_every_law_and_adds_variances() {
        let comult = primitive_comult();
        let mut values = BTreeMap::new();
        values.insert(vec![0usize], rat_int(0));
        values.insert(vec![0usize, 0], rat_int(1));
        values.insert(vec![0usize, 0, 0], rat_int(0));
        let phi = MomentFunctional::new(vec!["x".into()], 3, values).expect("complete table");
        let states = convolution_powers(ProductKind::Free, &phi, &comult, &[rat_int(0)], 2)
            .expect("powers stay bounded");
        let system = state_system_from_semigroup::<FreeProd>(
            Monoid::nat_add(),
            &comult,
            &[rat_int(0)],
            &states,
        )
        .expect("primitive semigroup");
        let process = LevyProcess::build(system).expect("weight-complete window");
        let report = process.verify(2);
        assert!(report.passed(), "{}", report.render_text());

        let t = |k: u64| MonoidValue::Nat(k);
        // Centered increments add variances: a gap of length two has second
        // moment 2, wherever it sits.
        assert_eq!(increment_moment(&process, &t(0), &t(2), &[0, 0]).unwrap(), rat_int(2));
        assert_eq!(increment_moment(&process, &t(0), &t(1), &[0, 0]).unwrap(), rat_int(1));
        assert_eq!(increment_moment(&process, &t(1), &t(2), &[0]).unwrap(), rat_int(0));
    }

    #[test]
    fn verify_catches_a_corrupted_splitting() {
        let system = cyclic_walk_system(Monoid::nat_add(), &[rat(2, 3), rat(1, 3)], 3)
            .expect("a convolution semigroup");
        let mut broken = system.clone();
        // Replace one splitting by the first-coordinate projection, which is
        // composable but not measure preserving for this walk.
        let good = broken.deltas[&(MonoidValue::Nat(1), MonoidValue::Nat(1))].clone();
        let mut wrong = good.clone();
        for (point, slot) in wrong.back.iter_mut().enumerate() {
            *slot = point / 2;
        }
        broken.deltas.insert((MonoidValue::Nat(1), MonoidValue::Nat(1)), wrong);
        let process = LevyProcess::build(broken).expect("shape is unchanged");
        let report = process.verify(2);
        assert!(!report.passed());
        assert!(
            report.failures.iter().any(|f| f.law.contains("splitting validity")
                || f.law.contains("increment validity")),
            "{}",
            report.render_text()
        );
    }
}
