//! Finite-dimensional rational vector spaces under direct sum.
//!
//! Two categories share the same objects (dimensions) and morphism data
//! (exact rational matrices): [`VecInj`] keeps only injective linear maps —
//! full column rank, checked by exact Gaussian elimination — while
//! [`VecLin`] allows every matrix and serves as the ambient category in
//! which transposed (dual) systems live. Both are strict: dimensions add,
//! and all structural isomorphisms are identity matrices. The zero space is
//! initial either way, via the unique matrix with no columns.
//!
//! A family `fᵢ : Bᵢ → W` of injections is independent exactly when the
//! column concatenation `[f₁ | … | fₙ]` still has full column rank, i.e. the
//! ranges are linearly independent; the concatenation itself is the
//! mediating morphism.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::catcore::{CatError, FindIndependence, InstanceGen, TensorCategory};
use crate::rat::rat_int;
use crate::ratmat::Mat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VecMor {
    pub mat: Mat,
}

impl VecMor {
    pub fn new(mat: Mat) -> VecMor {
        VecMor { mat }
    }
}

/// Rational vector spaces with injective linear maps, tensor = ⊕.
pub struct VecInj;

/// Rational vector spaces with arbitrary linear maps, tensor = ⊕.
pub struct VecLin;

fn compose_mats(g: &VecMor, f: &VecMor) -> Result<VecMor, CatError> {
    if g.mat.cols() != f.mat.rows() {
        return Err(CatError::NotComposable(format!(
            "target dim {} differs from source dim {}",
            f.mat.rows(),
            g.mat.cols()
        )));
    }
    Ok(VecMor::new(g.mat.mul(&f.mat)))
}

macro_rules! direct_sum_category {
    ($cat:ident, $name:literal) => {
        impl TensorCategory for $cat {
            type Obj = usize;
            type Mor = VecMor;

            const NAME: &'static str = $name;

            fn source(m: &VecMor) -> usize {
                m.mat.cols()
            }

            fn target(m: &VecMor) -> usize {
                m.mat.rows()
            }

            fn identity(a: &usize) -> VecMor {
                VecMor::new(Mat::identity(*a))
            }

            fn compose(g: &VecMor, f: &VecMor) -> Result<VecMor, CatError> {
                compose_mats(g, f)
            }

            fn check_mor(m: &VecMor) -> Result<(), CatError> {
                $cat::check_matrix(&m.mat)
            }

            fn unit() -> usize {
                0
            }

            fn tensor_obj(a: &usize, b: &usize) -> usize {
                a + b
            }

            fn tensor_mor(f: &VecMor, g: &VecMor) -> Result<VecMor, CatError> {
                Ok(VecMor::new(Mat::block_diag(&[&f.mat, &g.mat])))
            }

            fn assoc(a: &usize, b: &usize, c: &usize) -> VecMor {
                VecMor::new(Mat::identity(a + b + c))
            }

            fn assoc_inv(a: &usize, b: &usize, c: &usize) -> VecMor {
                VecMor::new(Mat::identity(a + b + c))
            }

            fn lunit(a: &usize) -> VecMor {
                VecMor::new(Mat::identity(*a))
            }

            fn lunit_inv(a: &usize) -> VecMor {
                VecMor::new(Mat::identity(*a))
            }

            fn runit(a: &usize) -> VecMor {
                VecMor::new(Mat::identity(*a))
            }

            fn runit_inv(a: &usize) -> VecMor {
                VecMor::new(Mat::identity(*a))
            }

            fn initial_mor(a: &usize) -> VecMor {
                VecMor::new(Mat::zero(*a, 0))
            }
        }
    };
}

direct_sum_category!(VecInj, "vec");
direct_sum_category!(VecLin, "veclin");

impl VecInj {
    fn check_matrix(m: &Mat) -> Result<(), CatError> {
        if m.rank() != m.cols() {
            return Err(CatError::InvalidMorphism(format!(
                "matrix of rank {} on {} columns is not injective",
                m.rank(),
                m.cols()
            )));
        }
        Ok(())
    }
}

impl VecLin {
    fn check_matrix(_m: &Mat) -> Result<(), CatError> {
        Ok(())
    }
}

fn shared_target(fs: &[VecMor]) -> Result<usize, CatError> {
    let first = fs.first().ok_or_else(|| CatError::Domain("empty family".into()))?;
    if fs.iter().any(|f| f.mat.rows() != first.mat.rows()) {
        return Err(CatError::Shape("the family must share its target".into()));
    }
    Ok(first.mat.rows())
}

fn column_concat(fs: &[VecMor]) -> Result<VecMor, CatError> {
    shared_target(fs)?;
    let mut h = fs[0].mat.clone();
    for f in &fs[1..] {
        h = h.hcat(&f.mat);
    }
    Ok(VecMor::new(h))
}

impl FindIndependence for VecInj {
    /// Column concatenation, kept only if the ranges stay linearly
    /// independent (full column rank of the concatenation).
    fn find_independence_morphism(fs: &[VecMor]) -> Result<Option<VecMor>, CatError> {
        let h = column_concat(fs)?;
        Ok(if h.mat.rank() == h.mat.cols() { Some(h) } else { None })
    }
}

impl FindIndependence for VecLin {
    /// With arbitrary linear maps ⊕ is a genuine coproduct, so every family
    /// is independent via the column concatenation.
    fn find_independence_morphism(fs: &[VecMor]) -> Result<Option<VecMor>, CatError> {
        column_concat(fs).map(Some)
    }
}

pub(crate) fn random_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Mat {
    let mut m = Mat::zero(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, rat_int(rng.gen_range(-2..=2)));
        }
    }
    m
}

/// A random full-column-rank matrix; falls back to the identity embedding on
/// the (vanishingly unlikely) chance that repeated sampling stays singular.
pub(crate) fn random_injection(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Mat {
    for _ in 0..40 {
        let m = random_matrix(rows, cols, rng);
        if m.rank() == cols {
            return m;
        }
    }
    let mut m = Mat::zero(rows, cols);
    for j in 0..cols {
        m.set(j, j, rat_int(1));
    }
    m
}

impl InstanceGen for VecInj {
    fn gen_obj(rng: &mut ChaCha8Rng) -> usize {
        rng.gen_range(0..=3)
    }

    fn gen_mor(rng: &mut ChaCha8Rng) -> VecMor {
        let src = Self::gen_obj(rng);
        Self::gen_mor_from(&src, rng)
    }

    fn gen_mor_from(source: &usize, rng: &mut ChaCha8Rng) -> VecMor {
        let dst = source + rng.gen_range(0..=2);
        VecMor::new(random_injection(dst, *source, rng))
    }
}

impl InstanceGen for VecLin {
    fn gen_obj(rng: &mut ChaCha8Rng) -> usize {
        rng.gen_range(0..=3)
    }

    fn gen_mor(rng: &mut ChaCha8Rng) -> VecMor {
        let src = Self::gen_obj(rng);
        Self::gen_mor_from(&src, rng)
    }

    fn gen_mor_from(source: &usize, rng: &mut ChaCha8Rng) -> VecMor {
        let dst = Self::gen_obj(rng);
        VecMor::new(random_matrix(dst, *source, rng))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::{canonical_inclusions, suite::coherence_suite, verify_independence};
    use crate::rat::rat;

    fn embedding(target: usize, col: usize) -> VecMor {
        let mut m = Mat::zero(target, 1);
        m.set(col, 0, rat_int(1));
        VecMor::new(m)
    }

    #[test]
    fn first_inclusion_is_the_first_summand_embedding() {
        let (i1, i2) = canonical_inclusions::<VecInj>(&2, &1).unwrap();
        let mut expected = Mat::zero(3, 2);
        expected.set(0, 0, rat_int(1));
        expected.set(1, 1, rat_int(1));
        assert_eq!(i1.mat, expected);
        let mut expected2 = Mat::zero(3, 1);
        expected2.set(2, 0, rat_int(1));
        assert_eq!(i2.mat, expected2);
    }

    #[test]
    fn independent_iff_ranges_linearly_independent() {
        let f1 = embedding(2, 0);
        let f2 = embedding(2, 1);
        let h = VecInj::find_independence_morphism(&[f1.clone(), f2.clone()]).unwrap().unwrap();
        assert!(verify_independence::<VecInj>(&[f1.clone(), f2], &h).unwrap());

        assert_eq!(VecInj::find_independence_morphism(&[f1.clone(), f1]).unwrap(), None);
    }

    #[test]
    fn three_disjoint_ranges_spanning_the_target() {
        let fs = [embedding(3, 0), embedding(3, 1), embedding(3, 2)];
        let h = VecInj::find_independence_morphism(&fs).unwrap().unwrap();
        assert!(verify_independence::<VecInj>(&fs, &h).unwrap());
        assert!(h.mat.inverse().is_some());
    }

    #[test]
    fn rank_deficient_concatenation_is_caught_exactly() {
        // Columns that are individually injective but sum to zero as a set:
        // (1, 2), (2, 4) — proportional, so the pair is dependent.
        let mut a = Mat::zero(2, 1);
        a.set(0, 0, rat(1, 1));
        a.set(1, 0, rat(2, 1));
        let mut b = Mat::zero(2, 1);
        b.set(0, 0, rat(2, 1));
        b.set(1, 0, rat(4, 1));
        assert_eq!(
            VecInj::find_independence_morphism(&[VecMor::new(a), VecMor::new(b)]).unwrap(),
            None
        );
    }

    #[test]
    fn law_suite_passes_for_both_categories() {
        let inj = coherence_suite::<VecInj>(11, 25);
        assert!(inj.passed(), "{}", inj.render_text());
        let all = coherence_suite::<VecLin>(11, 25);
        assert!(all.passed(), "{}", all.render_text());
    }
}
