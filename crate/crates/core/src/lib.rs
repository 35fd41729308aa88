//! Exact stability certificates for finitely generated quadratic
//! modules in the rational polynomial ring.
//!
//! Given generators of a quadratic module, the library decides whether
//! the module is stable with respect to gradings of the polynomial ring,
//! producing certificates that can be re-verified with exact rational
//! arithmetic: per-grading strict-positivity witnesses for the
//! highest-degree parts of the generators, nonnegative integer
//! multipliers combining grading directions into a strictly positive
//! vector, sign analyses of leading coefficients under term orders,
//! and Farkas witnesses for the obstructions. Stability of a module
//! implies that it is closed and, in two or more variables, that it
//! fails the strong moment property; the verdict records these
//! consequences.
//!
//! Everything is exact: coefficients are arbitrary-precision
//! rationals, feasibility questions are settled by Fourier-Motzkin
//! elimination, and no verdict ever rests on floating point. The
//! search loops are data-parallel under the default `parallel`
//! feature, with a sequential fallback that produces byte-identical
//! results.

mod error;
mod exec;
pub mod feasibility;
pub mod grading;
mod parse;
pub mod poly;
pub mod rational;
pub mod stability;
pub mod witness;

pub use error::{Error, ParseError, ParseErrorKind};
pub use parse::parse_polynomial;

pub use feasibility::{
    bounded_monomials, covering_check, positive_combination, rational_feasible, verify_covering,
    verify_farkas_witness, verify_multipliers, BoundedMonomials, CoveringCertificate,
    CoveringOutcome, FeasibilityOutcome, LinearRow, LinearSystem, Relation,
};
pub use grading::{
    compare_exponents, term_order_leading, z_degree, z_homogeneous_decomposition, z_max_part,
    GradedDegree, GradingSpec, TermOrder, TermOrderKind, ZVector,
};
pub use poly::{ExponentVector, Polynomial, VariableContext};
pub use rational::Rational;
pub use stability::{
    partition_mod_two, stability_verdict, suggest_z_vectors, tentacle_sample_check,
    term_order_total_stability, verify_certificate, z_total_stability, ChainStep, ClassPartition,
    ClassSignAnalysis, ClassWitness, Consequences, DirectionCertificate, Evidence,
    GeneratorSystem, ResidueClass, StabilityCertificate, StabilityStatus, StabilityVerdict,
    TentacleReport, TentacleSpec, TentacleViolation, VerdictScope,
};
pub use witness::{find_positivity_witness, PositivityWitness, SearchConfig};
