use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter lies outside the documented domain of an operation.
    Domain(String),
    /// The point lies on the branch cut `(-∞, 0)` of the principal logarithm.
    BranchCut { re: f64 },
    /// A quadrature or series did not reach the requested accuracy.
    Accuracy { achieved: f64, requested: f64 },
    /// A least-squares matrix has numerical rank below its column count.
    RankDeficient { effective_rank: usize, cols: usize },
    /// Arnoldi orthogonalization broke down while building the given degree.
    Breakdown { degree: usize },
    /// Evaluation point too close to a pole.
    PoleProximity { index: usize },
    /// Polygon geometry is degenerate or inconsistent.
    Geometry(String),
    /// Not enough usable samples for a rate fit.
    Fit { usable: usize, required: usize },
}

impl Error {
    /// True for failures caused by invalid input rather than by the numerics.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Domain(_) | Error::BranchCut { .. } | Error::Geometry(_)
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::BranchCut { re } => {
                write!(f, "point {re} lies on the branch cut (-inf, 0)")
            }
            Error::Accuracy {
                achieved,
                requested,
            } => write!(
                f,
                "accuracy not reached: estimate {achieved:e} exceeds tolerance {requested:e}"
            ),
            Error::RankDeficient {
                effective_rank,
                cols,
            } => write!(
                f,
                "least-squares matrix is rank deficient: rank {effective_rank} < {cols} columns"
            ),
            Error::Breakdown { degree } => {
                write!(f, "orthogonalization broke down at degree {degree}")
            }
            Error::PoleProximity { index } => {
                write!(f, "evaluation point coincides with pole {index}")
            }
            Error::Geometry(msg) => write!(f, "geometry error: {msg}"),
            Error::Fit { usable, required } => write!(
                f,
                "rate fit needs {required} in-window samples, found {usable}"
            ),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
