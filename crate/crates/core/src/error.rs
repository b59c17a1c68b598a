use thiserror::Error;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function (x = 0, |p| >= 1, mismatched sizes).
    #[error("domain error: {0}")]
    Domain(String),
    /// A denominator vanished (to working precision).
    #[error("singular denominator in {0}")]
    Singular(String),
    /// A NaN or infinity appeared in an intermediate or final value.
    #[error("non-finite value in {0}")]
    Numeric(String),
    /// A brute-force enumeration would exceed its size cap.
    #[error("{what} of size {size} exceeds the cap {cap}")]
    Capacity {
        what: &'static str,
        size: usize,
        cap: usize,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
