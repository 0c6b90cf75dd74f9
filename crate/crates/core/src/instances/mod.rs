//! Concrete tensor categories with an initial unit.
//!
//! Each submodule implements [`TensorCategory`](crate::TensorCategory) plus
//! independence search and deterministic generation for one mathematical
//! universe:
//!
//! * [`finset`] — finite sets with injective maps and disjoint union;
//! * [`vecq`] — rational vector spaces with injective linear maps
//!   ([`VecInj`]) or all linear maps ([`VecLin`]) under direct sum;
//! * [`hilbq`] — rational inner-product spaces with exact isometries;
//! * [`probop`] — finite probability spaces with measure-preserving maps,
//!   composed backwards, under the product space;
//! * [`qps`] — algebraic probability spaces under the four universal
//!   products (tensor, free, boolean, monotone);
//! * [`mixvec`] — vector spaces under `A ⊕ B ⊕ (A ⊗ B)`, a deliberately
//!   non-strict test instance whose independence morphisms are not unique.
//!
//! [`run_suite`] dispatches the seeded coherence suite by instance name; the
//! accepted names double as the CLI vocabulary.

pub mod finset;
pub mod hilbq;
pub mod mixvec;
pub mod probop;
pub mod qps;
pub mod vecq;

pub use finset::{FinMor, FinObj, FinSet};
pub use hilbq::HilbIsom;
pub use mixvec::MixVec;
pub use probop::{ProbMor, ProbObj, ProbOp};
pub use qps::{
    normal_form, BoolProd, FreeProd, MonoProd, ProductPolicy, Qps, QpsBoolean, QpsFree, QpsMor,
    QpsMonotone, QpsObj, QpsTensor, TensorAlg,
};
pub use vecq::{VecInj, VecLin, VecMor};

use crate::catcore::suite::coherence_suite;
use crate::report::Report;

/// Every instance name [`run_suite`] accepts, in dispatch order.
pub const INSTANCE_NAMES: [&str; 10] = [
    "set",
    "vec",
    "veclin",
    "hilb",
    "prob",
    "qps-tensor",
    "qps-free",
    "qps-boolean",
    "qps-monotone",
    "mixvec",
];

/// Runs the seeded coherence suite for the named instance, or `None` when
/// the name is unknown.
pub fn run_suite(name: &str, seed: u64, cases: usize) -> Option<Report> {
    let report = match name {
        "set" => coherence_suite::<FinSet>(seed, cases),
        "vec" => coherence_suite::<VecInj>(seed, cases),
        "veclin" => coherence_suite::<VecLin>(seed, cases),
        "hilb" => coherence_suite::<HilbIsom>(seed, cases),
        "prob" => coherence_suite::<ProbOp>(seed, cases),
        "qps-tensor" => coherence_suite::<QpsTensor>(seed, cases),
        "qps-free" => coherence_suite::<QpsFree>(seed, cases),
        "qps-boolean" => coherence_suite::<QpsBoolean>(seed, cases),
        "qps-monotone" => coherence_suite::<QpsMonotone>(seed, cases),
        "mixvec" => coherence_suite::<MixVec>(seed, cases),
        _ => return None,
    };
    Some(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_listed_instance_dispatches() {
        for name in INSTANCE_NAMES {
            let report = run_suite(name, 1, 2).unwrap_or_else(|| panic!("unknown `{name}`"));
            assert!(report.passed(), "{}", report.render_text());
        }
        assert!(run_suite("nope", 1, 2).is_none());
    }
}
