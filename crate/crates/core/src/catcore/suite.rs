//! The seeded coherence suite.
//!
//! Every instance category is run through the same battery of exact checks on
//! randomly generated objects and morphisms: pentagon and triangle for the
//! tensor structure, compatibility of the unit constraints with the canonical
//! inclusions, the two mixed associativity/inclusion diagrams, naturality of
//! the inclusions, functoriality of the tensor, and agreement between the
//! binary inclusions and the n-ary slot construction. Randomness comes from a
//! ChaCha8 stream seeded by the caller, so a (seed, case-count) pair always
//! reproduces the same byte-identical report.

use super::coherence::ObjTree;
use super::{
    canonical_inclusions, multi_inclusion, CatError, InstanceGen, TensorCategory,
};
use crate::report::Report;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A reproducible generator stream for the given seed.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn clip(mut s: String) -> String {
    if s.len() <= 240 {
        return s;
    }
    let mut cut = 240;
    while !s.is_char_boundary(cut) {
        cut -= 1;
    }
    s.truncate(cut);
    s.push('…');
    s
}

fn check(report: &mut Report, law: &str, witness: &str, outcome: Result<bool, CatError>) {
    report.cases += 1;
    match outcome {
        Ok(true) => {}
        Ok(false) => report.record(law, witness.to_string()),
        Err(e) => report.record(law, format!("{witness} [{e}]")),
    }
}

/// Runs `n_cases` random coherence cases and returns the aggregate report.
pub fn coherence_suite<C: TensorCategory + InstanceGen>(seed: u64, n_cases: usize) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new(format!("coherence[{}]", C::NAME));
    let e = C::unit();

    for case in 0..n_cases {
        let a = C::gen_obj(&mut rng);
        let b = C::gen_obj(&mut rng);
        let c = C::gen_obj(&mut rng);
        let d = C::gen_obj(&mut rng);
        let tag = |law: &str| format!("case {case}: {law}");
        let objs = clip(format!("A={a:?} B={b:?} C={c:?} D={d:?}"));

        // Pentagon: the two re-bracketing routes A⊠(B⊠(C⊠D)) → ((A⊠B)⊠C)⊠D.
        let pentagon = (|| {
            let cd = C::tensor_obj(&c, &d);
            let ab = C::tensor_obj(&a, &b);
            let bc = C::tensor_obj(&b, &c);
            let top = C::compose(&C::assoc(&ab, &c, &d), &C::assoc(&a, &b, &cd))?;
            let bottom = C::compose(
                &C::tensor_mor(&C::assoc(&a, &b, &c), &C::identity(&d))?,
                &C::compose(
                    &C::assoc(&a, &bc, &d),
                    &C::tensor_mor(&C::identity(&a), &C::assoc(&b, &c, &d))?,
                )?,
            )?;
            Ok(top == bottom)
        })();
        check(&mut report, &tag("pentagon"), &objs, pentagon);

        // Triangle: (r_A ⊠ id_B) ∘ α_{A,E,B} = id_A ⊠ l_B.
        let triangle = (|| {
            let left = C::compose(
                &C::tensor_mor(&C::runit(&a), &C::identity(&b))?,
                &C::assoc(&a, &e, &b),
            )?;
            let right = C::tensor_mor(&C::identity(&a), &C::lunit(&b))?;
            Ok(left == right)
        })();
        check(&mut report, &tag("triangle"), &objs, triangle);

        // Unit constraints undo the inclusions into unit slots.
        let unit_compat = (|| {
            let (_, i2) = canonical_inclusions::<C>(&e, &a)?;
            let (i1, _) = canonical_inclusions::<C>(&a, &e)?;
            Ok(C::compose(&C::lunit(&a), &i2)? == C::identity(&a)
                && C::compose(&C::runit(&a), &i1)? == C::identity(&a))
        })();
        check(&mut report, &tag("unit constraints vs inclusions"), &objs, unit_compat);

        // Collapsing a unit inclusion through the unit constraint recovers
        // the initial morphism E → A.
        let initial_compat = (|| {
            let (i1, _) = canonical_inclusions::<C>(&e, &a)?;
            let (_, i2) = canonical_inclusions::<C>(&a, &e)?;
            Ok(C::compose(&C::lunit(&a), &i1)? == C::initial_mor(&a)
                && C::compose(&C::runit(&a), &i2)? == C::initial_mor(&a))
        })();
        check(&mut report, &tag("unit collapse gives the initial morphism"), &objs, initial_compat);

        // Mixed diagram 1: A⊠C → (A⊠B)⊠C along either inclusion route.
        let mixed1 = (|| {
            let (i1_ab, _) = canonical_inclusions::<C>(&a, &b)?;
            let (_, i2_bc) = canonical_inclusions::<C>(&b, &c)?;
            let left = C::tensor_mor(&i1_ab, &C::identity(&c))?;
            let right = C::compose(
                &C::assoc(&a, &b, &c),
                &C::tensor_mor(&C::identity(&a), &i2_bc)?,
            )?;
            Ok(left == right)
        })();
        check(&mut report, &tag("inclusion/associativity square (first)"), &objs, mixed1);

        // Mixed diagram 2: the middle and right factors reach ((A⊠B))⊠C
        // compatibly with the associator.
        let mixed2 = (|| {
            let bc = C::tensor_obj(&b, &c);
            let ab = C::tensor_obj(&a, &b);
            let (i1_bc, i2_bc) = canonical_inclusions::<C>(&b, &c)?;
            let (_, i2_a_bc) = canonical_inclusions::<C>(&a, &bc)?;
            let (i1_ab_c, i2_ab_c) = canonical_inclusions::<C>(&ab, &c)?;
            let (_, i2_ab) = canonical_inclusions::<C>(&a, &b)?;
            let alpha = C::assoc(&a, &b, &c);
            let via_b_left = C::compose(&alpha, &C::compose(&i2_a_bc, &i1_bc)?)?;
            let via_b_right = C::compose(&i1_ab_c, &i2_ab)?;
            let via_c_left = C::compose(&alpha, &C::compose(&i2_a_bc, &i2_bc)?)?;
            Ok(via_b_left == via_b_right && via_c_left == i2_ab_c)
        })();
        check(&mut report, &tag("inclusion/associativity squares (second)"), &objs, mixed2);

        // Naturality of the inclusions in both arguments.
        let f1 = C::gen_mor(&mut rng);
        let f2 = C::gen_mor(&mut rng);
        let mors = clip(format!("f1={f1:?} f2={f2:?}"));
        let natural = (|| {
            C::check_mor(&f1)?;
            C::check_mor(&f2)?;
            let (a1, b1) = (C::source(&f1), C::target(&f1));
            let (a2, b2) = (C::source(&f2), C::target(&f2));
            let (i1_src, i2_src) = canonical_inclusions::<C>(&a1, &a2)?;
            let (i1_dst, i2_dst) = canonical_inclusions::<C>(&b1, &b2)?;
            let ff = C::tensor_mor(&f1, &f2)?;
            Ok(C::compose(&ff, &i1_src)? == C::compose(&i1_dst, &f1)?
                && C::compose(&ff, &i2_src)? == C::compose(&i2_dst, &f2)?)
        })();
        check(&mut report, &tag("inclusion naturality"), &mors, natural);

        // Tensor functoriality on composable pairs, plus identities.
        let functorial = (|| {
            let g1 = C::gen_mor_from(&C::target(&f1), &mut rng);
            let g2 = C::gen_mor_from(&C::target(&f2), &mut rng);
            C::check_mor(&g1)?;
            C::check_mor(&g2)?;
            let lhs = C::tensor_mor(&C::compose(&g1, &f1)?, &C::compose(&g2, &f2)?)?;
            let rhs = C::compose(&C::tensor_mor(&g1, &g2)?, &C::tensor_mor(&f1, &f2)?)?;
            let ids = C::tensor_mor(&C::identity(&a), &C::identity(&b))?
                == C::identity(&C::tensor_obj(&a, &b));
            Ok(lhs == rhs && ids)
        })();
        check(&mut report, &tag("tensor functoriality"), &mors, functorial);

        // The n-ary slot inclusion agrees with the binary inclusions and
        // re-bracketing engine on three factors.
        let slots = (|| {
            let objs3 = [a.clone(), b.clone(), c.clone()];
            let (i1, i2) = canonical_inclusions::<C>(&a, &b)?;
            if multi_inclusion::<C>(&objs3[..2], &[0])? != i1
                || multi_inclusion::<C>(&objs3[..2], &[1])? != i2
            {
                return Ok(false);
            }
            let full = multi_inclusion::<C>(&objs3, &[0, 1, 2])?;
            if full != C::identity(&super::tensor_all::<C>(&objs3)) {
                return Ok(false);
            }
            // Two-step inclusion of the middle factor factors through A⊠B.
            let mid = multi_inclusion::<C>(&objs3, &[1])?;
            let step1 = multi_inclusion::<C>(&objs3[..2], &[1])?;
            let lift = C::tensor_mor(&C::identity(&C::tensor_obj(&a, &b)), &C::initial_mor(&c))?;
            let runit = C::runit_inv(&C::tensor_obj(&a, &b));
            let two_step = C::compose(&lift, &C::compose(&runit, &step1)?)?;
            Ok(mid == two_step)
        })();
        check(&mut report, &tag("slot inclusions"), &objs, slots);

        // The re-bracketing engine produces genuine mutually inverse pairs.
        let iso_pairs = (|| {
            let nested = ObjTree::pair(
                ObjTree::Leaf(a.clone()),
                ObjTree::pair(
                    ObjTree::pair(ObjTree::Unit, ObjTree::Leaf(b.clone())),
                    ObjTree::Leaf(c.clone()),
                ),
            );
            let flat = ObjTree::left_assoc(&[
                ObjTree::Leaf(a.clone()),
                ObjTree::Unit,
                ObjTree::Leaf(b.clone()),
                ObjTree::Leaf(c.clone()),
            ]);
            let iso = super::coherence::coherence_iso_pair::<C>(&nested, &flat)?;
            let fwd_bwd = C::compose(&iso.bwd, &iso.fwd)?;
            let bwd_fwd = C::compose(&iso.fwd, &iso.bwd)?;
            Ok(fwd_bwd == C::identity(&C::source(&iso.fwd))
                && bwd_fwd == C::identity(&C::target(&iso.fwd)))
        })();
        check(&mut report, &tag("re-bracketing isomorphisms invert"), &objs, iso_pairs);
    }
    report
}
