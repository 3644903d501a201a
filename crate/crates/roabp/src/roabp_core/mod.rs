//! The ROABP data model and its basic algebra: evaluation, coefficient
//! extraction, dense expansion (the brute-force ground truth), coefficient
//! operators, shifts, and width-composing linear combinations.

pub mod dense;
pub mod exponent;
pub mod roabp;
