//! Computational toolkit for measures of noncompactness on a finitely
//! parameterized block sequence-space model.
//!
//! The ambient space is `k` blocks of a null-sequence space under the
//! blockwise sup-norm. Bounded sets are finite unions of box-with-tail
//! convex bodies, a class on which support functions, the Hausdorff metric,
//! measures of noncompactness, set-valued integrals, and a certified
//! initial-value-problem solver are all exactly or verifiably computable.
//!
//! Modules:
//! * [`sets`] — the structured set class, its semigroup algebra, and the
//!   radii-cone embedding with the ball-covering measure.
//! * [`support`] — support functions over the dual ball, set norms, the
//!   Hausdorff distance, and an independent inflation oracle.
//! * [`mnc`] — the measure catalog, axiom fuzzer, Lipschitz witnesses, and
//!   positive-functional representations of sublinear measures.
//! * [`family`] / [`inequality`] — parametric set families, their set-valued
//!   integrals, and the integral-inequality verifier.
//! * [`cauchy`] — the fixed-point solver with a noncompactness decay
//!   certificate.
//! * [`poly`], [`quad`], [`interval`], [`sample`] — paths, quadrature,
//!   interval arithmetic, and deterministic generators.

pub mod cauchy;
pub mod error;
pub mod family;
pub mod inequality;
pub mod interval;
pub mod mnc;
pub mod poly;
pub mod quad;
pub mod sample;
pub mod sets;
pub mod support;

pub use error::{Error, Result};
pub use family::{aumann_integral, family_eval, support_path, RegularityTag, SetFamily};
pub use inequality::{verify_inequality, InequalityReport};
pub use mnc::{
    check_axioms, lipschitz_witness, make_mnc, mnc_eval, represent_sublinear, AxiomReport,
    FunctionalSet, Mnc, MncClass, MncSpec, PhiSpec, WitnessReport,
};
pub use sets::{BlockBox, BoxTail, StructuredSet, VElement};
pub use support::{
    brute_force_hausdorff_oracle, eval_support, hausdorff_distance, hausdorff_distance_with,
    set_norm, DirectionVector, Hausdorff, SupportValue,
};
