//! Crate-wide error type.

/// Errors reported by fallible operations.
///
/// Arithmetic itself is exact and infallible; errors arise from structural
/// misuse (dimension or order mismatches), from configured resource budgets,
/// and from fields too small to supply the distinct constants an operation
/// needs.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime in the supported range")]
    NotPrime(u64),

    #[error("field too small: need {needed} distinct elements, modulus is {modulus}")]
    FieldTooSmall { needed: u128, modulus: u64 },

    #[error("dimension mismatch in {context}")]
    DimensionMismatch { context: &'static str },

    #[error("variable orders or headers do not match")]
    OrderMismatch,

    #[error("monomial budget exceeded: instance needs {required}, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("constructed layer of {entries} entries exceeds the recursion cap of {cap}; instance too large")]
    WidthCapExceeded { entries: usize, cap: usize },

    #[error("not representable at this width in this order: dependency fails at layer {layer} for prefix {prefix}")]
    NotRepresentable { layer: usize, prefix: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parameter overflow while computing {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
