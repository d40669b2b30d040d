//! Exact rational scalars used throughout the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Scalar type for all weight coordinates and form entries.
pub type Q = BigRational;

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_ratio(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Returns `Some(n)` when `q` is an integer that fits in `i64`.
pub fn q_to_i64(q: &Q) -> Option<i64> {
    if q.is_integer() {
        num_traits::ToPrimitive::to_i64(&q.to_integer())
    } else {
        None
    }
}

pub fn q_is_integer(q: &Q) -> bool {
    q.is_integer()
}

pub fn q_zero() -> Q {
    Q::zero()
}

pub fn q_one() -> Q {
    Q::one()
}

pub fn q_sign(q: &Q) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Parses "3", "-1/2" style rationals.
pub fn q_parse(s: &str) -> Option<Q> {
    s.trim().parse::<Q>().ok()
}
