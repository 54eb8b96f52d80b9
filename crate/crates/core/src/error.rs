use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    #[error("{field}: {reason} (got {value:e})")]
    Domain {
        field: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// The result would underflow the floating-point range.
    #[error("{function}({x:e}) underflows; supported arguments are x <= {limit}")]
    Underflow {
        function: &'static str,
        x: f64,
        limit: f64,
    },

    /// The dispersion function has a pole at the evaluation point.
    #[error("dispersion function has a pole at u = {u:e}")]
    Pole { u: f64 },

    /// A sweep or run specification failed validation.
    #[error("invalid specification: {}", .0.join("; "))]
    Validation(Vec<String>),

    /// A solver failed where the physics guarantees a solution.
    #[error("internal solver failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn domain(field: &'static str, value: f64, reason: &'static str) -> Self {
        Error::Domain {
            field,
            value,
            reason,
        }
    }
}

/// Checks `value > 0` and finite.
pub(crate) fn require_positive(field: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::domain(field, value, "must be positive and finite"))
    }
}

/// Checks `value >= 0` and finite.
pub(crate) fn require_non_negative(field: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::domain(
            field,
            value,
            "must be non-negative and finite",
        ))
    }
}
