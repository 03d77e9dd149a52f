//! Exact scalars: rationals, real-quadratic numbers and complex numbers over either.

mod complex;
mod quad;

pub use complex::Complex;
pub use quad::QuadRational;

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Complex number with rational real and imaginary parts.
pub type ComplexRational = Complex<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumericError {
    #[error("cannot parse `{0}` as a rational number")]
    BadRational(String),
    #[error("cannot parse `{0}` as a quadratic number")]
    BadQuadratic(String),
    #[error("discriminant {0} is not a squarefree integer greater than 1")]
    BadDiscriminant(u32),
    #[error("mixed discriminants sqrt({0}) and sqrt({1})")]
    DiscriminantMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
}

/// `n/d` as a rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, NumericError> {
    let t = s.trim();
    let bad = || NumericError::BadRational(s.to_string());
    let r = match t.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Rational::new(p, q)
        }
        None => Rational::from_integer(BigInt::from_str(t).map_err(|_| bad())?),
    };
    Ok(r)
}

/// Operations shared by the exact scalar fields, so that complex numbers and
/// matrices can be written once for both `Q` and `Q(sqrt D)`.
///
/// Method names carry an `f` prefix to stay clear of the `std::ops` methods.
pub trait Field: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    /// Embeds a rational into the same field as `self`.
    fn embed(&self, r: &Rational) -> Self;
    fn fis_zero(&self) -> bool;
    fn fadd(&self, rhs: &Self) -> Self;
    fn fsub(&self, rhs: &Self) -> Self;
    fn fmul(&self, rhs: &Self) -> Self;
    fn fneg(&self) -> Self;
    fn finv(&self) -> Option<Self>;
    fn fis_positive(&self) -> bool;
}

impl Field for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn embed(&self, r: &Rational) -> Self {
        r.clone()
    }
    fn fis_zero(&self) -> bool {
        self.is_zero()
    }
    fn fadd(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn fsub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn fmul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn fneg(&self) -> Self {
        -self
    }
    fn finv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
    fn fis_positive(&self) -> bool {
        self.is_positive()
    }
}

/// Least common multiple of two positive integers.
pub(crate) fn lcm_u32(a: u32, b: u32) -> u32 {
    num_integer::lcm(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        for s in ["0", "-3", "5/7", "-12/8"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(parse_rational(&r.to_string()).unwrap(), r);
        }
        assert_eq!(parse_rational("-12/8").unwrap().to_string(), "-3/2");
        assert_eq!(int(4).to_string(), "4");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn rationals_normalize_eagerly() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
    }
}
