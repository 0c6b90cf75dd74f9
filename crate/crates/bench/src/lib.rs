//! Shared fixtures for the benches: the flagship processes built exactly the
//! way the CLI builds them, so the numbers track end-to-end pipeline cost.

use std::collections::BTreeMap;

use catlevy_core::instances::{FreeProd, ProbOp, Qps, TensorAlg};
use catlevy_core::rat::{rat, rat_int};
use catlevy_core::uniprod::Comultiplication;
use catlevy_core::{
    convolution_powers, cyclic_walk_system, state_system_from_semigroup, Element, Letter,
    LevyProcess, MomentFunctional, Monoid, ProductKind,
};

/// The lazy walk on Z/2 with step distribution (2/3, 1/3).
pub fn walk_process(horizon: usize) -> LevyProcess<ProbOp> {
    let system = cyclic_walk_system(Monoid::nat_add(), &[rat(2, 3), rat(1, 3)], horizon)
        .expect("a convolution semigroup");
    LevyProcess::build(system).expect("weight-complete window")
}

/// Splitting of a single group-like generator: g maps to g ⊗ g.
pub fn group_like_comult() -> Comultiplication {
    Comultiplication {
        symbols: vec!["g".into()],
        images: vec![Element::word(vec![Letter { leg: 0, sym: 0 }, Letter { leg: 1, sym: 0 }])],
    }
}

/// Splitting of a single primitive generator: x maps to x ⊗ 1 + 1 ⊗ x.
pub fn primitive_comult() -> Comultiplication {
    let left = Element::word(vec![Letter { leg: 0, sym: 0 }]);
    let right = Element::word(vec![Letter { leg: 1, sym: 0 }]);
    Comultiplication { symbols: vec!["x".into()], images: vec![left.add(&right)] }
}

/// One-step state with E[g^k] = 1/3 for odd k and 1 for even k.
pub fn fourier_state(degree: usize) -> MomentFunctional {
    let mut values = BTreeMap::new();
    for len in 1..=degree {
        let m = if len % 2 == 1 { rat(1, 3) } else { rat_int(1) };
        values.insert(vec![0usize; len], m);
    }
    MomentFunctional::new(vec!["g".into()], degree, values).expect("complete table")
}

/// Centered one-step state with unit variance and fourth moment 2.
pub fn centered_state(degree: usize) -> MomentFunctional {
    let mut values = BTreeMap::new();
    values.insert(vec![0], rat_int(0));
    values.insert(vec![0, 0], rat_int(1));
    if degree >= 3 {
        values.insert(vec![0, 0, 0], rat_int(0));
    }
    if degree >= 4 {
        values.insert(vec![0, 0, 0, 0], rat_int(2));
    }
    MomentFunctional::new(vec!["x".into()], degree, values).expect("complete table")
}

/// Group-like state-space process under the tensor product.
pub fn tensor_process(horizon: usize, degree: usize) -> LevyProcess<Qps<TensorAlg>> {
    let comult = group_like_comult();
    let eps = [rat_int(1)];
    let states =
        convolution_powers(ProductKind::Tensor, &fourier_state(degree), &comult, &eps, horizon)
            .expect("a convolution semigroup");
    let system = state_system_from_semigroup::<TensorAlg>(Monoid::nat_add(), &comult, &eps, &states)
        .expect("states match the splitting");
    LevyProcess::build(system).expect("weight-complete window")
}

/// Centered state-space process under the free product.
pub fn free_process(horizon: usize, degree: usize) -> LevyProcess<Qps<FreeProd>> {
    let comult = primitive_comult();
    let eps = [rat_int(0)];
    let states =
        convolution_powers(ProductKind::Free, &centered_state(degree), &comult, &eps, horizon)
            .expect("a convolution semigroup");
    let system = state_system_from_semigroup::<FreeProd>(Monoid::nat_add(), &comult, &eps, &states)
        .expect("states match the splitting");
    LevyProcess::build(system).expect("weight-complete window")
}
