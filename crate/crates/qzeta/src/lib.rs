//! Arbitrary-precision evaluation of the q-analogue Hurwitz zeta function
//! and its first two Laurent coefficients at s = 1 (the q-Stieltjes
//! constants gamma_0 and gamma_1), exact cyclotomic verification of the
//! cotangent identities those constants satisfy, and lattice-based
//! integer-relation probing of their conjectured linear independence.
//!
//! Layout:
//! - [`precision`], [`bounded`], [`series`]: certified-bound numerics
//!   (budgets, error propagation, geometric-tail summation, Richardson
//!   extrapolation).
//! - [`exact`], [`special`], [`cyclotomic`]: Bernoulli/Stirling exact
//!   combinatorics, digamma and cotangent with certified bounds, exact
//!   arithmetic and Galois action in Q(zeta_b).
//! - [`qzeta`]: the q-bracket machinery, zeta_q for Re(s) > 1, closed
//!   forms for gamma_0/gamma_1, and the extraction oracle.
//! - [`identity`]: reflection formula checks, the cotangent-Bernoulli sum,
//!   L-function values of odd period functions, kappa invariants and
//!   their Galois orbits.
//! - [`relation`]: LLL-based integer relation detection, conjecture
//!   probes over Q and over number fields, dimension-bound reports.
//! - [`input`]: parsers for every textual input form (fuzzed).

pub mod bounded;
pub mod complex;
pub mod cyclotomic;
pub mod error;
pub mod exact;
pub mod identity;
pub mod input;
pub mod precision;
pub mod qzeta;
pub mod relation;
pub mod series;
pub mod special;

pub use bounded::{bound_string, decimal_string, BoundedValue};
pub use complex::ComplexBounded;
pub use cyclotomic::{
    cyclotomic_polynomial, euler_phi, icot_exact, CyclotomicElement, ResidueSystem,
};
pub use error::{Error, Result};
pub use exact::{bernoulli_polynomial, factorial, harmonic, stirling_first_unsigned};
pub use identity::{
    cot_bernoulli_sum, galois_orbit_check, kappa, kappa_exact_candidate, l_delta_digamma,
    l_delta_partial, l_periodic_partial, reflection_lhs, reflection_rhs, reflection_theta,
    verify_cot_bernoulli, verify_t2, AffineForm, DeltaFunction, IdentityReport, KappaResult,
    Verdict,
};
pub use input::{
    parse_coefficient_bound, parse_complex, parse_minpoly, parse_q_literal, parse_rational,
    rational_string,
};
pub use precision::PrecisionBudget;
pub use qzeta::{
    extract_laurent, gamma0, gamma1, lambert_q, q_bracket, q_shifted_factorial,
    residue_closed_form, zeta_q, Gamma1Form, LaurentData, LaurentSource, PochhammerOrder, QPoint,
    QValue,
};
pub use relation::{
    dimension_report, find_relation, lll_reduce, precision_floor, probe_conjecture_a,
    probe_number_field, recover_t2_relation, ControlColumn, DimensionReport, FnBasis,
    Gamma0Basis, LiteralBasis, NumberFieldSpec, ProbeOutcome, RealVector, RelationBasis,
    RelationCertificate, RelationStatus,
};
pub use series::{richardson_limit, sum_geometric_tail, SeriesTerms};
pub use special::{cot_value, digamma, euler_gamma};

/// Artifact version embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
