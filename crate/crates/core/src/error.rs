use thiserror::Error;

use crate::rat::Rat;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("point {0} lies outside [0, 1]")]
    OutOfDomain(Rat),

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("endpoint slopes differ (initial {} vs {}, final {} vs {})", .0.y_initial, .0.z_initial, .0.y_final, .0.z_final)]
    SlopeMismatch(Box<EndSlopes>),

    #[error("map is not one-bump (it meets the diagonal inside (0, 1))")]
    NotOneBump,

    #[error("maps lie on opposite sides of the diagonal")]
    ClassMismatch,

    #[error("map is not above the diagonal")]
    NotAboveDiagonal,

    #[error("map is not below the diagonal")]
    NotBelowDiagonal,

    #[error("invalid slope {0}")]
    InvalidSlope(Rat),

    #[error("maps differ on the prescribed prefix interval")]
    PrefixMismatch,

    #[error("germ scales differ")]
    ScaleMismatch,

    #[error("evaluation point needs more than {0} period reductions")]
    OutOfRange(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// Endpoint slopes of a pair `(y, z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndSlopes {
    pub y_initial: Rat,
    pub z_initial: Rat,
    pub y_final: Rat,
    pub z_final: Rat,
}
