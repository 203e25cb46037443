//! Exact numbers: rationals, real quadratic surds, the point at infinity and
//! rational intervals.

mod interval;
mod surd;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};
use thiserror::Error;

pub use interval::{enclose, interval_eval, Interval, IntervalExpr};
pub use surd::{rational_sqrt, square_part, QuadSurd};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("negative radicand {0}")]
    NegativeRadicand(BigInt),
    #[error("incompatible radicands sqrt({0}) and sqrt({1})")]
    IncompatibleRadicands(BigInt, BigInt),
    #[error("empty interval")]
    EmptyInterval,
    #[error("interval division by an interval containing zero")]
    EnclosureDivision,
    #[error("arithmetic with infinity is not defined here")]
    InfiniteOperand,
}

/// `n/m`, or just `n` when `m = 1` unless `always_den` is set.
pub fn rational_to_string(x: &BigRational, always_den: bool) -> String {
    if always_den || !x.is_integer() {
        format!("{}/{}", x.numer(), x.denom())
    } else {
        x.numer().to_string()
    }
}

pub fn ratio(n: i64, m: i64) -> BigRational {
    BigRational::new(n.into(), m.into())
}

/// A real number or `∞`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ExtendedReal {
    Finite(QuadSurd),
    Infinity,
}

impl ExtendedReal {
    pub fn finite(&self) -> Option<&QuadSurd> {
        match self {
            ExtendedReal::Finite(x) => Some(x),
            ExtendedReal::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedReal::Infinity)
    }

    pub fn expect_finite(&self) -> Result<&QuadSurd, ExactError> {
        self.finite().ok_or(ExactError::InfiniteOperand)
    }

    pub fn is_rational(&self) -> bool {
        self.finite().is_some_and(QuadSurd::is_rational)
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtendedReal::Finite(x) => x.to_f64(),
            ExtendedReal::Infinity => f64::INFINITY,
        }
    }

    pub fn to_decimal(&self, digits: usize) -> String {
        match self {
            ExtendedReal::Finite(x) => x.to_decimal(digits),
            ExtendedReal::Infinity => "inf".to_string(),
        }
    }

    pub fn to_json(&self, digits: usize) -> Value {
        match self {
            ExtendedReal::Finite(x) => x.to_json(digits),
            ExtendedReal::Infinity => json!("inf"),
        }
    }
}

impl From<QuadSurd> for ExtendedReal {
    fn from(x: QuadSurd) -> Self {
        ExtendedReal::Finite(x)
    }
}

impl Ord for ExtendedReal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtendedReal::Infinity, ExtendedReal::Infinity) => Ordering::Equal,
            (ExtendedReal::Infinity, _) => Ordering::Greater,
            (_, ExtendedReal::Infinity) => Ordering::Less,
            (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for ExtendedReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedReal::Finite(x) => write!(f, "{x}"),
            ExtendedReal::Infinity => write!(f, "inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_tops_the_order() {
        let big = ExtendedReal::Finite(QuadSurd::from_int(10i64.pow(12)));
        assert!(ExtendedReal::Infinity > big);
        assert_eq!(ExtendedReal::Infinity.to_json(15), json!("inf"));
        assert_eq!(ExtendedReal::Infinity.expect_finite(), Err(ExactError::InfiniteOperand));
    }
}
