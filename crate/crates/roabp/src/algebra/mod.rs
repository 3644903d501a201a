//! Exact arithmetic foundation: prime fields, univariate polynomials,
//! matrices, and rank/solve kernels.

pub mod field;
pub mod linalg;
pub mod matrix;
pub mod poly;

use crate::algebra::field::{Field, Fp};

/// Coefficient domain shared by the polynomial and matrix machinery.
///
/// Implemented by [`Fp`] (plain field scalars) and by [`poly::UniPoly`]
/// over a scalar (polynomials in an auxiliary variable, as produced by
/// polynomial shifts). Values are self-describing: each one knows its field
/// and can manufacture a zero or one of its own kind, so empty matrices and
/// zero polynomials keep enough context to participate in arithmetic.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug + std::fmt::Display {
    fn field(&self) -> Field;
    /// A zero with the same field (and, for polynomials, the same variable).
    fn zero_like(&self) -> Self;
    /// A one with the same field and variable context.
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplication by a base-field constant.
    fn scale(&self, k: Fp) -> Self;
}
