use thiserror::Error;

use crate::ExerciseStyle;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("{operation} does not support {style} exercise")]
    UnsupportedStyle {
        operation: &'static str,
        style: ExerciseStyle,
    },

    /// The risk-neutral probability of a binomial step left `[0, 1]`.
    #[error(
        "no-arbitrage bound d0 < e^(r h) < u0 violated: d0 = {down}, e^(r h) = {growth}, u0 = {up}"
    )]
    NoArbitrage { down: f64, growth: f64, up: f64 },

    #[error("node index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("trajectory index {0} out of range 1..=3")]
    TrajectoryIndex(usize),

    #[error("path count for n = {0} does not fit in u64")]
    PathCountOverflow(usize),

    #[error("at sweep point {key}: {source}")]
    SweepPoint { key: f64, source: Box<Error> },
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field,
            reason: reason.into(),
        }
    }

    pub(crate) fn at_point(self, key: f64) -> Self {
        Error::SweepPoint {
            key,
            source: Box::new(self),
        }
    }
}
