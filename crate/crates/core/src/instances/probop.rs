//! Finite probability spaces, arrows reversed, tensor = product measure.
//!
//! An object is a finite labeled sample space with exact rational weights
//! summing to 1 (zero weights are allowed — point masses need them). Because
//! the category is the *opposite* of measure-preserving maps, a morphism
//! A → B here is stored as a concrete map `back` from B's sample space to
//! A's sample space that pushes B's measure forward to A's; composition is
//! ordinary function composition read backwards. The one-point space is the
//! unit: it is terminal among probability spaces, hence initial here.
//!
//! Independence of `fᵢ : Bᵢ → A` recovers classical stochastic independence:
//! the only candidate mediating morphism is the pairing
//! ω ↦ (X₁(ω), …, Xₙ(ω)), and it is measure-preserving exactly when the
//! joint pushforward is the product measure.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::catcore::{tensor_all, CatError, FindIndependence, InstanceGen, TensorCategory};
use crate::rat::{rat, Rat};
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbObj {
    pub outcomes: Vec<String>,
    pub weights: Vec<Rat>,
}

impl ProbObj {
    pub fn new(outcomes: Vec<String>, weights: Vec<Rat>) -> Result<ProbObj, CatError> {
        if outcomes.len() != weights.len() {
            return Err(CatError::Shape("one weight per outcome".into()));
        }
        if weights.iter().any(|w| w < &Rat::zero()) {
            return Err(CatError::Domain("negative weight".into()));
        }
        if weights.iter().sum::<Rat>() != Rat::one() {
            return Err(CatError::Domain("weights must sum to 1".into()));
        }
        Ok(ProbObj { outcomes, weights })
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }
}

/// A morphism A → B, stored as the underlying measure-preserving map
/// B.space → A.space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbMor {
    pub src: ProbObj,
    pub dst: ProbObj,
    pub back: Vec<usize>,
}

impl ProbMor {
    pub fn new(src: ProbObj, dst: ProbObj, back: Vec<usize>) -> ProbMor {
        ProbMor { src, dst, back }
    }
}

/// Finite probability spaces with arrows reversed.
pub struct ProbOp;

fn pair_label(x: &str, y: &str) -> String {
    format!("({x},{y})")
}

impl TensorCategory for ProbOp {
    type Obj = ProbObj;
    type Mor = ProbMor;

    const NAME: &'static str = "prob";

    fn source(m: &ProbMor) -> ProbObj {
        m.src.clone()
    }

    fn target(m: &ProbMor) -> ProbObj {
        m.dst.clone()
    }

    fn identity(a: &ProbObj) -> ProbMor {
        ProbMor::new(a.clone(), a.clone(), (0..a.len()).collect())
    }

    fn compose(g: &ProbMor, f: &ProbMor) -> Result<ProbMor, CatError> {
        if f.dst != g.src {
            return Err(CatError::NotComposable("middle objects differ".into()));
        }
        // Underlying maps compose the other way around: g's map lands in
        // f.dst's space, then f's map carries it on to f.src's space.
        let back = g.back.iter().map(|&b| f.back[b]).collect();
        Ok(ProbMor::new(f.src.clone(), g.dst.clone(), back))
    }

    fn check_mor(m: &ProbMor) -> Result<(), CatError> {
        if m.back.len() != m.dst.len() {
            return Err(CatError::InvalidMorphism(
                "underlying map must be total on the target's space".into(),
            ));
        }
        if m.back.iter().any(|&a| a >= m.src.len()) {
            return Err(CatError::InvalidMorphism("underlying map leaves the space".into()));
        }
        let mut pushed = vec![Rat::zero(); m.src.len()];
        for (b, &a) in m.back.iter().enumerate() {
            pushed[a] += &m.dst.weights[b];
        }
        if pushed != m.src.weights {
            return Err(CatError::InvalidMorphism(
                "underlying map does not push the measure forward correctly".into(),
            ));
        }
        Ok(())
    }

    fn unit() -> ProbObj {
        ProbObj { outcomes: vec!["*".into()], weights: vec![Rat::one()] }
    }

    fn tensor_obj(a: &ProbObj, b: &ProbObj) -> ProbObj {
        let mut outcomes = Vec::with_capacity(a.len() * b.len());
        let mut weights = Vec::with_capacity(a.len() * b.len());
        for (x, wx) in a.outcomes.iter().zip(&a.weights) {
            for (y, wy) in b.outcomes.iter().zip(&b.weights) {
                outcomes.push(pair_label(x, y));
                weights.push(wx * wy);
            }
        }
        ProbObj { outcomes, weights }
    }

    fn tensor_mor(f: &ProbMor, g: &ProbMor) -> Result<ProbMor, CatError> {
        let src = Self::tensor_obj(&f.src, &g.src);
        let dst = Self::tensor_obj(&f.dst, &g.dst);
        let mut back = Vec::with_capacity(dst.len());
        for i in 0..f.dst.len() {
            for j in 0..g.dst.len() {
                back.push(f.back[i] * g.src.len() + g.back[j]);
            }
        }
        Ok(ProbMor::new(src, dst, back))
    }

    // The product-space index (x,(y,z)) ↦ ((x,y),z) is numerically the
    // identity under row-major flattening; only the labels change.
    fn assoc(a: &ProbObj, b: &ProbObj, c: &ProbObj) -> ProbMor {
        let src = Self::tensor_obj(a, &Self::tensor_obj(b, c));
        let dst = Self::tensor_obj(&Self::tensor_obj(a, b), c);
        let back = (0..src.len()).collect();
        ProbMor::new(src, dst, back)
    }

    fn assoc_inv(a: &ProbObj, b: &ProbObj, c: &ProbObj) -> ProbMor {
        let fwd = Self::assoc(a, b, c);
        ProbMor::new(fwd.dst, fwd.src, fwd.back)
    }

    fn lunit(a: &ProbObj) -> ProbMor {
        let src = Self::tensor_obj(&Self::unit(), a);
        ProbMor::new(src, a.clone(), (0..a.len()).collect())
    }

    fn lunit_inv(a: &ProbObj) -> ProbMor {
        let dst = Self::tensor_obj(&Self::unit(), a);
        ProbMor::new(a.clone(), dst, (0..a.len()).collect())
    }

    fn runit(a: &ProbObj) -> ProbMor {
        let src = Self::tensor_obj(a, &Self::unit());
        ProbMor::new(src, a.clone(), (0..a.len()).collect())
    }

    fn runit_inv(a: &ProbObj) -> ProbMor {
        let dst = Self::tensor_obj(a, &Self::unit());
        ProbMor::new(a.clone(), dst, (0..a.len()).collect())
    }

    fn initial_mor(a: &ProbObj) -> ProbMor {
        ProbMor::new(Self::unit(), a.clone(), vec![0; a.len()])
    }
}

impl FindIndependence for ProbOp {
    /// The pairing ω ↦ (X₁(ω),…,Xₙ(ω)); a morphism exactly when the joint
    /// distribution is the product measure.
    fn find_independence_morphism(fs: &[ProbMor]) -> Result<Option<ProbMor>, CatError> {
        let first = fs.first().ok_or_else(|| CatError::Domain("empty family".into()))?;
        if fs.iter().any(|f| f.dst != first.dst) {
            return Err(CatError::Shape("the family must share its target".into()));
        }
        let sources: Vec<ProbObj> = fs.iter().map(ProbOp::source).collect();
        let joint = tensor_all::<ProbOp>(&sources);
        let back = (0..first.dst.len())
            .map(|omega| {
                // Left-associated product spaces flatten row-major, so the
                // tuple index accumulates factor by factor.
                fs.iter().zip(&sources).fold(0, |idx, (f, b)| idx * b.len() + f.back[omega])
            })
            .collect();
        let h = ProbMor::new(joint, first.dst.clone(), back);
        Ok(match ProbOp::check_mor(&h) {
            Ok(()) => Some(h),
            Err(_) => None,
        })
    }
}

/// Exact random weights: positive integer masses normalized by their sum.
fn random_weights(n: usize, rng: &mut ChaCha8Rng) -> Vec<Rat> {
    let masses: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=4)).collect();
    let total: i64 = masses.iter().sum();
    masses.into_iter().map(|m| rat(m, total)).collect()
}

impl InstanceGen for ProbOp {
    fn gen_obj(rng: &mut ChaCha8Rng) -> ProbObj {
        let n = rng.gen_range(1..=3);
        let outcomes = (0..n).map(|i| format!("o{i}")).collect();
        ProbObj { outcomes, weights: random_weights(n, rng) }
    }

    fn gen_mor(rng: &mut ChaCha8Rng) -> ProbMor {
        let src = Self::gen_obj(rng);
        Self::gen_mor_from(&src, rng)
    }

    /// A random refinement: every source outcome splits into one or two
    /// target outcomes carrying an exact share of its weight.
    fn gen_mor_from(source: &ProbObj, rng: &mut ChaCha8Rng) -> ProbMor {
        let mut outcomes = Vec::new();
        let mut weights = Vec::new();
        let mut back = Vec::new();
        for (a, w) in source.weights.iter().enumerate() {
            let pieces = if w.is_zero() { 1 } else { rng.gen_range(1..=2) };
            if pieces == 1 {
                outcomes.push(format!("s{a}"));
                weights.push(w.clone());
                back.push(a);
            } else {
                let share = rat(1, rng.gen_range(2..=4));
                outcomes.push(format!("s{a}a"));
                weights.push(w * &share);
                back.push(a);
                outcomes.push(format!("s{a}b"));
                weights.push(w * &(Rat::one() - share));
                back.push(a);
            }
        }
        ProbMor::new(source.clone(), ProbObj { outcomes, weights }, back)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::{suite::coherence_suite, suite::seeded, verify_independence};
    use crate::rat::rat_int;

    fn uniform(n: usize, prefix: &str) -> ProbObj {
        ProbObj {
            outcomes: (0..n).map(|i| format!("{prefix}{i}")).collect(),
            weights: vec![rat(1, n as i64); n],
        }
    }

    #[test]
    fn coin_coordinates_of_a_uniform_four_point_space_are_independent() {
        let four = uniform(4, "w");
        let coin = uniform(2, "c");
        // First and second binary digit of the outcome index.
        let x1 = ProbMor::new(coin.clone(), four.clone(), vec![0, 0, 1, 1]);
        let x2 = ProbMor::new(coin.clone(), four.clone(), vec![0, 1, 0, 1]);
        ProbOp::check_mor(&x1).unwrap();
        ProbOp::check_mor(&x2).unwrap();
        let h = ProbOp::find_independence_morphism(&[x1.clone(), x2.clone()]).unwrap().unwrap();
        assert!(verify_independence::<ProbOp>(&[x1.clone(), x2], &h).unwrap());

        // The same coordinate twice concentrates on the diagonal.
        assert_eq!(ProbOp::find_independence_morphism(&[x1.clone(), x1]).unwrap(), None);
    }

    #[test]
    fn constant_variables_are_independent_of_anything() {
        let four = uniform(4, "w");
        let coin = uniform(2, "c");
        let point = ProbObj::new(vec!["k".into()], vec![Rat::one()]).unwrap();
        let x = ProbMor::new(coin, four.clone(), vec![0, 1, 0, 1]);
        let c = ProbMor::new(point, four, vec![0, 0, 0, 0]);
        let h = ProbOp::find_independence_morphism(&[x.clone(), c.clone()]).unwrap().unwrap();
        assert!(verify_independence::<ProbOp>(&[x, c], &h).unwrap());
    }

    #[test]
    fn measure_preservation_is_checked_exactly() {
        let src = ProbObj::new(vec!["a".into(), "b".into()], vec![rat(1, 3), rat(2, 3)]).unwrap();
        let dst = uniform(2, "d");
        // Identity map on points does not push uniform to (1/3, 2/3).
        let bad = ProbMor::new(src, dst, vec![0, 1]);
        assert!(ProbOp::check_mor(&bad).is_err());
    }

    #[test]
    fn zero_weights_are_legal_and_preserved() {
        let point_mass =
            ProbObj::new(vec!["0".into(), "1".into()], vec![rat_int(1), rat_int(0)]).unwrap();
        let m = ProbOp::initial_mor(&point_mass);
        ProbOp::check_mor(&m).unwrap();
    }

    #[test]
    fn generated_morphisms_are_measure_preserving() {
        let mut rng = seeded(5);
        for _ in 0..40 {
            let m = ProbOp::gen_mor(&mut rng);
            ProbOp::check_mor(&m).unwrap();
        }
    }

    #[test]
    fn law_suite_passes() {
        let report = coherence_suite::<ProbOp>(17, 25);
        assert!(report.passed(), "{}", report.render_text());
    }
}
