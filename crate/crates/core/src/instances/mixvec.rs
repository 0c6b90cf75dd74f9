//! Rational vector spaces under the mixed tensor A ⊙ B = A ⊕ B ⊕ (A ⊗ B),
//! with *all* linear maps as morphisms.
//!
//! Dimensions compose as a ⊙ b = a + b + ab, which is associative and has 0
//! as a strict unit on objects — but the associator is a genuine basis
//! permutation, not an identity, because the direct-summand blocks of
//! (A ⊙ B) ⊙ C and A ⊙ (B ⊙ C) interleave differently. This makes the
//! instance a stress test for the coherence engine.
//!
//! Its real purpose, though, is independence: the canonical inclusions land
//! in the A- and B-summands, so a mediating morphism for a family is
//! constrained only on those summands and can do anything on the A⊗B block.
//! Independence morphisms always exist here and are *not* unique —
//! [`alternate_independence_morphism`] exhibits a second valid choice.
//! The instance is test-only plumbing: it is excluded from the process
//! pipeline.

use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::catcore::{
    multi_inclusion, CatError, FindIndependence, InstanceGen, TensorCategory,
};
use crate::rat::rat_int;
use crate::ratmat::Mat;

use super::vecq::random_matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixMor {
    pub mat: Mat,
}

impl MixMor {
    pub fn new(mat: Mat) -> MixMor {
        MixMor { mat }
    }
}

/// Vector spaces under ⊕⊕⊗; every linear map is a morphism.
pub struct MixVec;

fn mix(a: usize, b: usize) -> usize {
    a + b + a * b
}

/// Basis bookkeeping for the associator: positions of each block of
/// A ⊙ (B ⊙ C) inside ((A ⊙ B) ⊙ C).
///
/// Source order: [A | B | C | B⊗C | A⊗B | A⊗C | A⊗(B⊗C)], where the last
/// three arise from A ⊗ (B ⊙ C) in its internal [B | C | B⊗C] order.
/// Target order: [A | B | A⊗B | C | A⊗C | B⊗C | (A⊗B)⊗C], from
/// (A ⊙ B) ⊗ C in its internal [A | B | A⊗B] order. The two pure tensor
/// cubes agree index-by-index under row-major flattening.
fn assoc_perm(a: usize, b: usize, c: usize) -> Vec<usize> {
    let src_dim = mix(a, mix(b, c));
    let mut perm = vec![0usize; src_dim];
    let bc = mix(b, c);
    // Offsets of the source blocks.
    let src_b = a;
    let src_c = a + b;
    let src_bc = a + b + c;
    let src_tensor = a + bc;
    // Offsets of the target blocks.
    let dst_ab_block = mix(a, b);
    let dst_c = dst_ab_block;
    let dst_tensor = dst_ab_block + c;
    for i in 0..a {
        perm[i] = i;
    }
    for j in 0..b {
        perm[src_b + j] = a + j;
    }
    for k in 0..c {
        perm[src_c + k] = dst_c + k;
    }
    for j in 0..b {
        for k in 0..c {
            perm[src_bc + j * c + k] = dst_tensor + (a + j) * c + k;
        }
    }
    for i in 0..a {
        let row = src_tensor + i * bc;
        for j in 0..b {
            perm[row + j] = a + b + i * b + j;
        }
        for k in 0..c {
            perm[row + b + k] = dst_tensor + i * c + k;
        }
        for j in 0..b {
            for k in 0..c {
                perm[row + b + c + j * c + k] = dst_tensor + (a + b + i * b + j) * c + k;
            }
        }
    }
    perm
}

impl TensorCategory for MixVec {
    type Obj = usize;
    type Mor = MixMor;

    const NAME: &'static str = "mixvec";

    fn source(m: &MixMor) -> usize {
        m.mat.cols()
    }

    fn target(m: &MixMor) -> usize {
        m.mat.rows()
    }

    fn identity(a: &usize) -> MixMor {
        MixMor::new(Mat::identity(*a))
    }

    fn compose(g: &MixMor, f: &MixMor) -> Result<MixMor, CatError> {
        if g.mat.cols() != f.mat.rows() {
            return Err(CatError::NotComposable(format!(
                "target dim {} differs from source dim {}",
                f.mat.rows(),
                g.mat.cols()
            )));
        }
        Ok(MixMor::new(g.mat.mul(&f.mat)))
    }

    fn check_mor(_m: &MixMor) -> Result<(), CatError> {
        Ok(())
    }

    fn unit() -> usize {
        0
    }

    fn tensor_obj(a: &usize, b: &usize) -> usize {
        mix(*a, *b)
    }

    fn tensor_mor(f: &MixMor, g: &MixMor) -> Result<MixMor, CatError> {
        let cross = Mat::kron(&f.mat, &g.mat);
        Ok(MixMor::new(Mat::block_diag(&[&f.mat, &g.mat, &cross])))
    }

    fn assoc(a: &usize, b: &usize, c: &usize) -> MixMor {
        MixMor::new(Mat::permutation(&assoc_perm(*a, *b, *c)))
    }

    fn assoc_inv(a: &usize, b: &usize, c: &usize) -> MixMor {
        let perm = assoc_perm(*a, *b, *c);
        let mut inv = vec![0usize; perm.len()];
        for (j, &i) in perm.iter().enumerate() {
            inv[i] = j;
        }
        MixMor::new(Mat::permutation(&inv))
    }

    fn lunit(a: &usize) -> MixMor {
        MixMor::new(Mat::identity(*a))
    }

    fn lunit_inv(a: &usize) -> MixMor {
        MixMor::new(Mat::identity(*a))
    }

    fn runit(a: &usize) -> MixMor {
        MixMor::new(Mat::identity(*a))
    }

    fn runit_inv(a: &usize) -> MixMor {
        MixMor::new(Mat::identity(*a))
    }

    fn initial_mor(a: &usize) -> MixMor {
        MixMor::new(Mat::zero(*a, 0))
    }
}

impl FindIndependence for MixVec {
    /// Always succeeds: the canonical choice acts by fᵢ on the i-th summand
    /// and by zero on every pure-tensor block.
    fn find_independence_morphism(fs: &[MixMor]) -> Result<Option<MixMor>, CatError> {
        let first = fs.first().ok_or_else(|| CatError::Domain("empty family".into()))?;
        if fs.iter().any(|f| f.mat.rows() != first.mat.rows()) {
            return Err(CatError::Shape("the family must share its target".into()));
        }
        let sources: Vec<usize> = fs.iter().map(MixVec::source).collect();
        let mut h = Mat::zero(first.mat.rows(), crate::catcore::tensor_all::<MixVec>(&sources));
        for (i, f) in fs.iter().enumerate() {
            // Slot inclusions are column selections, so transposing one
            // yields the projection back onto that summand.
            let slot = multi_inclusion::<MixVec>(&sources, &[i])?;
            h = h.add(&f.mat.mul(&slot.mat.transpose()));
        }
        Ok(Some(MixMor::new(h)))
    }
}

/// A second, different independence morphism for the same family whenever a
/// pure-tensor block exists to hide it in: the canonical `h` plus an
/// arbitrary kick supported on a cross-block column. Returns `None` when the
/// tensor source has no cross block (or the target is zero), in which case
/// the mediating morphism genuinely is unique.
pub fn alternate_independence_morphism(
    fs: &[MixMor],
    h: &MixMor,
) -> Result<Option<MixMor>, CatError> {
    let sources: Vec<usize> = fs.iter().map(MixVec::source).collect();
    if h.mat.rows() == 0 {
        return Ok(None);
    }
    let total = crate::catcore::tensor_all::<MixVec>(&sources);
    let mut slot_columns = vec![false; total];
    for i in 0..fs.len() {
        let slot = multi_inclusion::<MixVec>(&sources, &[i])?;
        // Each column of a slot inclusion has exactly one nonzero entry:
        // the row index it selects.
        for col in 0..slot.mat.cols() {
            for row in 0..slot.mat.rows() {
                if !slot.mat.get(row, col).is_zero() {
                    slot_columns[row] = true;
                }
            }
        }
    }
    match slot_columns.iter().position(|&used| !used) {
        None => Ok(None),
        Some(free) => {
            let mut kick = Mat::zero(h.mat.rows(), total);
            kick.set(0, free, rat_int(1));
            Ok(Some(MixMor::new(h.mat.add(&kick))))
        }
    }
}

impl InstanceGen for MixVec {
    fn gen_obj(rng: &mut ChaCha8Rng) -> usize {
        rng.gen_range(0..=2)
    }

    fn gen_mor(rng: &mut ChaCha8Rng) -> MixMor {
        let src = Self::gen_obj(rng);
        Self::gen_mor_from(&src, rng)
    }

    fn gen_mor_from(source: &usize, rng: &mut ChaCha8Rng) -> MixMor {
        let dst = Self::gen_obj(rng);
        MixMor::new(random_matrix(dst, *source, rng))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::{suite::coherence_suite, suite::seeded, verify_independence};

    #[test]
    fn mixed_dimension_arithmetic() {
        assert_eq!(MixVec::tensor_obj(&2, &3), 11);
        assert_eq!(MixVec::tensor_obj(&0, &3), 3);
        assert_eq!(
            MixVec::tensor_obj(&MixVec::tensor_obj(&1, &2), &3),
            MixVec::tensor_obj(&1, &MixVec::tensor_obj(&2, &3)),
        );
    }

    #[test]
    fn associator_is_a_permutation_with_inverse() {
        let fwd = MixVec::assoc(&1, &2, &2);
        let bwd = MixVec::assoc_inv(&1, &2, &2);
        assert!(MixVec::compose(&bwd, &fwd).unwrap().mat.is_identity());
        assert!(MixVec::compose(&fwd, &bwd).unwrap().mat.is_identity());
        assert!(!fwd.mat.is_identity());
    }

    #[test]
    fn independence_always_holds_and_is_not_unique() {
        let mut rng = seeded(23);
        let f1 = MixMor::new(random_matrix(2, 1, &mut rng));
        let f2 = MixMor::new(random_matrix(2, 1, &mut rng));
        let fs = [f1, f2];
        let h = MixVec::find_independence_morphism(&fs).unwrap().unwrap();
        assert!(verify_independence::<MixVec>(&fs, &h).unwrap());

        let other = alternate_independence_morphism(&fs, &h).unwrap().unwrap();
        assert_ne!(other, h);
        assert!(verify_independence::<MixVec>(&fs, &other).unwrap());
    }

    #[test]
    fn law_suite_passes() {
        let report = coherence_suite::<MixVec>(19, 25);
        assert!(report.passed(), "{}", report.render_text());
    }
}
