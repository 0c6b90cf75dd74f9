//! Exact-arithmetic toolkit for tensor categories with an initial unit,
//! n-ary categorical independence, comonoidal systems indexed by
//! factorization monoids, and the inductive-limit constructions that extract
//! Lévy processes from them.
//!
//! Everything is computed over arbitrary-precision rationals: law checks,
//! independence tests and limit comparisons are exact morphism equalities,
//! never approximations.

pub mod catcore;
pub mod comonoidal;
pub mod instances;
pub mod levy;
pub mod limits;
pub mod monoid;
pub mod rat;
pub mod ratmat;
pub mod report;
pub mod uniprod;
pub mod words;

pub use catcore::{
    canonical_inclusions, multi_inclusion, pipeline, tensor_all, tensor_all_mor,
    verify_independence, CatError, FindIndependence, InstanceGen, TensorCategory,
};
pub use comonoidal::{
    check_cotensor_laws, convolution_powers, cyclic_convolution, cyclic_system_from_marginals,
    cyclic_walk_marginals, cyclic_walk_system, map_system, multiplicative_state,
    state_system_from_semigroup, transpose_system, ComonoidalSystem, ComposedFunctor,
    CotensorFunctor, ForgetIsometry, FreeSetVectors, IdentityFunctor, MonoidalSystem,
};
pub use instances::{run_suite, INSTANCE_NAMES};
pub use levy::{increment_law, increment_moment, JointLaw, LevyProcess};
pub use limits::{tensor_systems, AttainedLimit, InductiveSystem, NestedLimit};
pub use monoid::{Factorization, Monoid, MonoidError, MonoidKind, MonoidValue, RefinementBlocks};
pub use rat::Rat;
pub use ratmat::Mat;
pub use report::{Failure, Report};
pub use uniprod::{JointFunctional, MomentFunctional, ProductKind, UniprodError};
pub use words::{Element, Letter, Word};
