//! Finite sets under disjoint union.
//!
//! Objects are finite sets of named elements, morphisms are injective total
//! maps, and the tensor is the tagged disjoint union (`l:`/`r:` prefixes keep
//! the cofactors apart, so the tensor is genuinely non-strict). The unit is
//! the empty set, whose unique outgoing map makes it initial. A family of
//! morphisms into a common target is independent exactly when the images are
//! pairwise disjoint: the only candidate mediating morphism is the copairing,
//! and disjointness is what keeps it injective.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::catcore::{
    multi_inclusion, tensor_all, CatError, FindIndependence, InstanceGen, TensorCategory,
};

pub type FinObj = BTreeSet<String>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinMor {
    pub src: FinObj,
    pub dst: FinObj,
    pub map: BTreeMap<String, String>,
}

impl FinMor {
    pub fn new(src: FinObj, dst: FinObj, map: BTreeMap<String, String>) -> FinMor {
        FinMor { src, dst, map }
    }
}

/// Finite sets, injective maps, tensor = tagged disjoint union.
pub struct FinSet;

fn tag(side: char, x: &str) -> String {
    format!("{side}:{x}")
}

fn tagged(a: &FinObj, b: &FinObj) -> FinObj {
    a.iter().map(|x| tag('l', x)).chain(b.iter().map(|x| tag('r', x))).collect()
}

impl TensorCategory for FinSet {
    type Obj = FinObj;
    type Mor = FinMor;

    const NAME: &'static str = "set";

    fn source(m: &FinMor) -> FinObj {
        m.src.clone()
    }

    fn target(m: &FinMor) -> FinObj {
        m.dst.clone()
    }

    fn identity(a: &FinObj) -> FinMor {
        FinMor::new(a.clone(), a.clone(), a.iter().map(|x| (x.clone(), x.clone())).collect())
    }

    fn compose(g: &FinMor, f: &FinMor) -> Result<FinMor, CatError> {
        if f.dst != g.src {
            return Err(CatError::NotComposable(format!(
                "target {:?} differs from source {:?}",
                f.dst, g.src
            )));
        }
        let mut map = BTreeMap::new();
        for (x, y) in &f.map {
            let z = g
                .map
                .get(y)
                .ok_or_else(|| CatError::InvalidMorphism(format!("no value for `{y}`")))?;
            map.insert(x.clone(), z.clone());
        }
        Ok(FinMor::new(f.src.clone(), g.dst.clone(), map))
    }

    fn check_mor(m: &FinMor) -> Result<(), CatError> {
        if m.map.len() != m.src.len() {
            return Err(CatError::InvalidMorphism("map is not total on the source".into()));
        }
        let mut image = BTreeSet::new();
        for (x, y) in &m.map {
            if !m.src.contains(x) {
                return Err(CatError::InvalidMorphism(format!("`{x}` is not in the source")));
            }
            if !m.dst.contains(y) {
                return Err(CatError::InvalidMorphism(format!("`{y}` is not in the target")));
            }
            if !image.insert(y) {
                return Err(CatError::InvalidMorphism(format!("not injective: `{y}` hit twice")));
            }
        }
        Ok(())
    }

    fn unit() -> FinObj {
        BTreeSet::new()
    }

    fn tensor_obj(a: &FinObj, b: &FinObj) -> FinObj {
        tagged(a, b)
    }

    fn tensor_mor(f: &FinMor, g: &FinMor) -> Result<FinMor, CatError> {
        let mut map = BTreeMap::new();
        for (x, y) in &f.map {
            map.insert(tag('l', x), tag('l', y));
        }
        for (x, y) in &g.map {
            map.insert(tag('r', x), tag('r', y));
        }
        Ok(FinMor::new(tagged(&f.src, &g.src), tagged(&f.dst, &g.dst), map))
    }

    fn assoc(a: &FinObj, b: &FinObj, c: &FinObj) -> FinMor {
        let src = tagged(a, &tagged(b, c));
        let dst = tagged(&tagged(a, b), c);
        let mut map = BTreeMap::new();
        for x in a {
            map.insert(tag('l', x), tag('l', &tag('l', x)));
        }
        for x in b {
            map.insert(tag('r', &tag('l', x)), tag('l', &tag('r', x)));
        }
        for x in c {
            map.insert(tag('r', &tag('r', x)), tag('r', x));
        }
        FinMor::new(src, dst, map)
    }

    fn assoc_inv(a: &FinObj, b: &FinObj, c: &FinObj) -> FinMor {
        let fwd = Self::assoc(a, b, c);
        let map = fwd.map.iter().map(|(x, y)| (y.clone(), x.clone())).collect();
        FinMor::new(fwd.dst, fwd.src, map)
    }

    fn lunit(a: &FinObj) -> FinMor {
        let src = tagged(&Self::unit(), a);
        FinMor::new(src, a.clone(), a.iter().map(|x| (tag('r', x), x.clone())).collect())
    }

    fn lunit_inv(a: &FinObj) -> FinMor {
        let dst = tagged(&Self::unit(), a);
        FinMor::new(a.clone(), dst, a.iter().map(|x| (x.clone(), tag('r', x))).collect())
    }

    fn runit(a: &FinObj) -> FinMor {
        let src = tagged(a, &Self::unit());
        FinMor::new(src, a.clone(), a.iter().map(|x| (tag('l', x), x.clone())).collect())
    }

    fn runit_inv(a: &FinObj) -> FinMor {
        let dst = tagged(a, &Self::unit());
        FinMor::new(a.clone(), dst, a.iter().map(|x| (x.clone(), tag('l', x))).collect())
    }

    fn initial_mor(a: &FinObj) -> FinMor {
        FinMor::new(Self::unit(), a.clone(), BTreeMap::new())
    }
}

impl FindIndependence for FinSet {
    /// The copairing out of the disjoint union, which is a morphism exactly
    /// when the images of the given maps are pairwise disjoint.
    fn find_independence_morphism(fs: &[FinMor]) -> Result<Option<FinMor>, CatError> {
        let first = fs.first().ok_or_else(|| CatError::Domain("empty family".into()))?;
        if fs.iter().any(|f| f.dst != first.dst) {
            return Err(CatError::Shape("the family must share its target".into()));
        }
        let sources: Vec<FinObj> = fs.iter().map(FinSet::source).collect();
        let mut map = BTreeMap::new();
        let mut image = BTreeSet::new();
        for (i, f) in fs.iter().enumerate() {
            let inc = multi_inclusion::<FinSet>(&sources, &[i])?;
            for (x, slot) in &inc.map {
                let y = f
                    .map
                    .get(x)
                    .ok_or_else(|| CatError::InvalidMorphism(format!("no value for `{x}`")))?;
                if !image.insert(y.clone()) {
                    return Ok(None);
                }
                map.insert(slot.clone(), y.clone());
            }
        }
        Ok(Some(FinMor::new(tensor_all::<FinSet>(&sources), first.dst.clone(), map)))
    }
}

const NAMES: [&str; 8] = ["p", "q", "u", "v", "w", "x", "y", "z"];

impl InstanceGen for FinSet {
    fn gen_obj(rng: &mut ChaCha8Rng) -> FinObj {
        let k = rng.gen_range(0..=3);
        let mut pool: Vec<&str> = NAMES.to_vec();
        pool.shuffle(rng);
        pool.into_iter().take(k).map(String::from).collect()
    }

    fn gen_mor(rng: &mut ChaCha8Rng) -> FinMor {
        let src = Self::gen_obj(rng);
        Self::gen_mor_from(&src, rng)
    }

    fn gen_mor_from(source: &FinObj, rng: &mut ChaCha8Rng) -> FinMor {
        let mut dst = Self::gen_obj(rng);
        let mut fresh = 0;
        while dst.len() < source.len() {
            dst.insert(format!("n{fresh}"));
            fresh += 1;
        }
        let mut slots: Vec<String> = dst.iter().cloned().collect();
        slots.shuffle(rng);
        let map = source.iter().cloned().zip(slots).collect();
        FinMor::new(source.clone(), dst, map)
    }
}
