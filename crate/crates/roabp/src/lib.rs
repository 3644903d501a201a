//! Exact arithmetic for read-once oblivious arithmetic branching programs
//! (ROABPs) over prime fields.
//!
//! An ROABP computes a polynomial as a product of matrices
//! `D_1(x_{pi(1)}) * D_2(x_{pi(2)}) * ... * D_n(x_{pi(n)})` whose entries are
//! univariate polynomials, one variable per layer. This crate provides:
//!
//! * [`algebra`] — prime-field scalars, univariate polynomials, matrices,
//!   and exact rank/solve kernels (Gaussian and fraction-free elimination).
//! * [`roabp_core`] — the ROABP data model, evaluation, coefficient
//!   extraction, dense expansion, coefficient operators, variable shifts and
//!   width-composing linear combinations.
//! * [`nisan`] — spanning/dependency profiles at every layer cut, the
//!   single-program zero test, and reconstruction of a width-minimal
//!   program in a prescribed variable order.
//! * [`pit`] — whitebox identity testing: equivalence of two programs, the
//!   recursive zero test for sums of constantly many programs, and the
//!   common-prefix decomposition of a non-representable pair.
//! * [`concentration`] — low-support rank concentration, basis-isolating
//!   weight assignments, shifts by powers of an auxiliary variable, the
//!   binomial transfer matrix, hitting-set enumeration and the blackbox
//!   zero test for sums of programs.
//! * [`sampling`] — deterministic random instance generators used by the
//!   test suites and by batch tooling.

pub mod algebra;
pub mod concentration;
pub mod error;
pub mod nisan;
pub mod pit;
pub mod roabp_core;
pub mod sampling;

pub use algebra::field::{Field, Fp, DEFAULT_MODULUS};
pub use algebra::matrix::Matrix;
pub use algebra::poly::{UniPoly, Var};
pub use algebra::Scalar;
pub use error::{Error, Result};
pub use roabp_core::dense::DensePoly;
pub use roabp_core::exponent::Exponent;
pub use roabp_core::roabp::Roabp;
