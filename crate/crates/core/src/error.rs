use thiserror::Error;

/// Failures raised by the entropy computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical integral did not reach the requested tolerance.
    #[error("accuracy error: best estimate {estimate:e} with error bound {error:e}")]
    Accuracy { estimate: f64, error: f64 },

    /// An exact multi-sum exceeds the supported size.
    #[error("exact sum too large for (l={l}, m={m}, p={p})")]
    UnboundedGrowth { l: u32, m: i32, p: f64 },

    /// An integral diverges for the requested parameters.
    #[error("divergent integral: {0}")]
    Divergence(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
