//! Comparison of constant-coefficient matrix differential operators in L2.
//!
//! Given matrix symbols P and Q, the library decides - with exact
//! certificates or explicit witness curves - whether the estimate
//! ||Q(D)u|| <= C ||P(D)u|| holds for all smooth compactly supported u
//! (domination), and whether the induced embedding is compact (compact
//! domination). The reduction goes through an exact rational
//! representation of the pointwise Moore-Penrose pseudoinverse
//! P^+ = A / Delta and Hoermander weight functions of the resulting scalar
//! entries. A spectral probe on a periodic grid cross-checks verdicts
//! numerically; it never feeds back into the symbolic path.
//!
//! All symbolic computation is exact over the Gaussian rationals.
//! Deciders are sound but not complete: the outcome is three-valued and
//! `Unknown` is an honest answer.

pub mod domination;
pub mod error;
pub mod gaussian;
pub mod matrix;
pub mod multiindex;
pub mod parse;
pub mod poly;
pub mod probe;
pub mod report;
pub mod scalar_dom;
pub mod sturm;

pub use domination::{
    decide_compact_domination, decide_domination, decide_matrix, derivative_operator,
    kernel_inclusion, lsc_hypothesis_check, reduced_matrix, reduced_matrix_with_rep,
    DominationReport, LscReport, LscStatus, ReducedPair,
};
pub use error::{Error, Result};
pub use gaussian::GaussianRational;
pub use matrix::{penrose_verify, MatrixPoly, PseudoinverseRep};
pub use multiindex::MultiIndex;
pub use parse::{parse_matrix_poly, parse_matrix_str, parse_scalar_str, ParseError, ParseInput};
pub use poly::ScalarPoly;
pub use probe::{
    apply_operator, ratio_estimate, ray_oscillation_probe, synth_test_function, GridFunction,
    ProbeParams, ProbeReport,
};
pub use scalar_dom::{
    curve_refute, decide, elliptic_certify, even_coefficient_certify, scalar_compactly_dominates,
    scalar_dominates, univariate_decide, Certificate, DecisionConfig, Mode, Outcome,
    ScalarVerdict, WitnessCurve,
};
