use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

/// Every failure the engine can report.
///
/// Exponents are given in lattice units (1/24 of a q-power).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series is not invertible: no nonzero coefficient below precision {prec}")]
    NotInvertible { prec: i64 },
    #[error("division by zero in the Gaussian rationals")]
    DivisionByZero,
    #[error("coefficient at exponent {requested} requested but precision is {prec}")]
    InsufficientPrecision { requested: i64, prec: i64 },
    #[error("computation needs absolute order {needed} but input only has {available}")]
    NeedsOrder { needed: i64, available: i64 },
    #[error("exponent {exp} * {num}/{den} is not on the 1/24 lattice")]
    LatticeError { exp: i64, num: i64, den: i64 },
    #[error("unsupported lattice denominator {0}; only 24 is used")]
    LatticeMismatch(i64),
    #[error("exponent {exp} is not an integral power of q")]
    FractionalExponent { exp: i64 },
    #[error("coefficient at exponent {exp} has nonzero imaginary part")]
    NonRealCoefficient { exp: i64 },
    #[error("phase is not a fourth root of unity: argument component {0} has denominator > 2")]
    PhaseError(&'static str),
    #[error("Appell-Lerch sum has a pole at this argument")]
    PoleAtArgument,
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("route mismatch at (m, n) = ({m}, {n})")]
    RouteMismatch { m: u32, n: u32 },
    #[error("series has a nonzero term at exponent {exp}, outside C((q^2))")]
    OddExponent { exp: i64 },
    #[error("remainder after Z0 reduction is nonzero at exponent {exp}")]
    NotPolynomialInZ0 { exp: i64 },
    #[error("pole of order {order} exceeds maximum Z0 degree {max_degree}")]
    PoleOrderExceeded { order: i64, max_degree: u32 },
}
