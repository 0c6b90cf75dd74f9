//! Rational inner-product spaces with isometries, tensor = ⊕.
//!
//! Morphisms are matrices `V` with `VᵀV = I` exactly, under the standard
//! bilinear form on ℚⁿ. Random isometries are produced by rotating the
//! identity embedding with Pythagorean-triple Givens rotations
//! (c, s) = ((k²−l²)/(k²+l²), 2kl/(k²+l²)), which keeps everything rational.
//!
//! Independence of isometries into a common target means pairwise orthogonal
//! ranges: the candidate mediating morphism is the column concatenation `h`,
//! and `hᵀh = I` holds exactly when every cross-Gram block `vᵢᵀvⱼ` vanishes.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::catcore::{CatError, FindIndependence, InstanceGen, TensorCategory};
use crate::rat::{rat, rat_int};
use crate::ratmat::Mat;

use super::vecq::VecMor;

/// Rational isometries under ⊕; same morphism data as the vector instances.
pub struct HilbIsom;

impl TensorCategory for HilbIsom {
    type Obj = usize;
    type Mor = VecMor;

    const NAME: &'static str = "hilb";

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
        if g.mat.cols() != f.mat.rows() {
            return Err(CatError::NotComposable(format!(
                "target dim {} differs from source dim {}",
                f.mat.rows(),
                g.mat.cols()
            )));
        }
        Ok(VecMor::new(g.mat.mul(&f.mat)))
    }

    fn check_mor(m: &VecMor) -> Result<(), CatError> {
        let gram = m.mat.transpose().mul(&m.mat);
        if !gram.is_identity() {
            return Err(CatError::InvalidMorphism("VᵀV is not the identity".into()));
        }
        Ok(())
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

impl FindIndependence for HilbIsom {
    /// Column concatenation, kept only if it stays an isometry — which is
    /// exactly the vanishing of all cross-Gram blocks.
    fn find_independence_morphism(fs: &[VecMor]) -> Result<Option<VecMor>, CatError> {
        let first = fs.first().ok_or_else(|| CatError::Domain("empty family".into()))?;
        if fs.iter().any(|f| f.mat.rows() != first.mat.rows()) {
            return Err(CatError::Shape("the family must share its target".into()));
        }
        let mut h = fs[0].mat.clone();
        for f in &fs[1..] {
            h = h.hcat(&f.mat);
        }
        Ok(if h.transpose().mul(&h).is_identity() { Some(VecMor::new(h)) } else { None })
    }
}

/// A rational rotation in the (i, j) coordinate plane of ℚ^n.
fn givens(n: usize, i: usize, j: usize, k: i64, l: i64) -> Mat {
    let denom = k * k + l * l;
    let c = rat(k * k - l * l, denom);
    let s = rat(2 * k * l, denom);
    let mut m = Mat::identity(n);
    m.set(i, i, c.clone());
    m.set(j, j, c);
    m.set(i, j, -s.clone());
    m.set(j, i, s);
    m
}

/// A random isometry ℚ^cols → ℚ^rows (requires cols ≤ rows): the identity
/// embedding stirred by rational rotations and sign flips.
pub(crate) fn random_isometry(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Mat {
    let mut m = Mat::zero(rows, cols);
    for j in 0..cols {
        m.set(j, j, rat_int(1));
    }
    if rows >= 2 {
        for _ in 0..2 * rows {
            let i = rng.gen_range(0..rows);
            let mut j = rng.gen_range(0..rows - 1);
            if j >= i {
                j += 1;
            }
            let k = rng.gen_range(1..=3);
            let l = rng.gen_range(1..=3);
            m = givens(rows, i, j, k, l).mul(&m);
        }
    }
    if rows >= 1 {
        let flip = rng.gen_range(0..rows);
        let mut signs = Mat::identity(rows);
        signs.set(flip, flip, rat_int(-1));
        m = signs.mul(&m);
    }
    m
}

impl InstanceGen for HilbIsom {
    fn gen_obj(rng: &mut ChaCha8Rng) -> usize {
        rng.gen_range(0..=3)
    }

    fn gen_mor(rng: &mut ChaCha8Rng) -> VecMor {
        let src = Self::gen_obj(rng);
        Self::gen_mor_from(&src, rng)
    }

    fn gen_mor_from(source: &usize, rng: &mut ChaCha8Rng) -> VecMor {
        let dst = source + rng.gen_range(0..=2);
        VecMor::new(random_isometry(dst, *source, rng))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::{suite::coherence_suite, verify_independence};

    fn embedding(target: usize, col: usize) -> VecMor {
        let mut m = Mat::zero(target, 1);
        m.set(col, 0, rat_int(1));
        VecMor::new(m)
    }

    #[test]
    fn generated_isometries_are_exact() {
        let mut rng = crate::catcore::suite::seeded(3);
        for _ in 0..30 {
            let v = HilbIsom::gen_mor(&mut rng);
            HilbIsom::check_mor(&v).unwrap();
        }
    }

    #[test]
    fn orthogonal_ranges_are_independent() {
        let v1 = embedding(2, 0);
        let v2 = embedding(2, 1);
        let h = HilbIsom::find_independence_morphism(&[v1.clone(), v2.clone()]).unwrap().unwrap();
        assert!(verify_independence::<HilbIsom>(&[v1.clone(), v2], &h).unwrap());
        assert_eq!(HilbIsom::find_independence_morphism(&[v1.clone(), v1]).unwrap(), None);
    }

    #[test]
    fn skew_rational_rotation_is_not_orthogonal_to_the_axis() {
        // Rotate e₁ by the (3/5, 4/5) rotation: the result has Gram product
        // 4/5 with e₂, so the pair is dependent even though both are
        // isometries.
        let rotated = VecMor::new(givens(2, 0, 1, 2, 1).mul(&embedding(2, 0).mat));
        HilbIsom::check_mor(&rotated).unwrap();
        let e2 = embedding(2, 1);
        let cross = rotated.mat.transpose().mul(&e2.mat);
        assert_eq!(cross.get(0, 0), &rat(4, 5));
        assert_eq!(HilbIsom::find_independence_morphism(&[rotated, e2]).unwrap(), None);
    }

    #[test]
    fn law_suite_passes() {
        let report = coherence_suite::<HilbIsom>(13, 25);
        assert!(report.passed(), "{}", report.render_text());
    }
}
