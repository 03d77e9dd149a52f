use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use super::{parse_rational, Field, NumericError, Rational};

/// `rational + surd * sqrt(disc)` for a squarefree `disc > 1`.
///
/// Values with different discriminants never mix; the `std::ops` impls panic
/// on a mismatch and the `try_*` methods report it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadRational {
    rational: Rational,
    surd: Rational,
    disc: u32,
}

fn squarefree(d: u32) -> bool {
    let mut p = 2u32;
    while p * p <= d {
        if d % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

impl QuadRational {
    pub fn new(rational: Rational, surd: Rational, disc: u32) -> Result<Self, NumericError> {
        if disc < 2 || !squarefree(disc) {
            return Err(NumericError::BadDiscriminant(disc));
        }
        Ok(Self { rational, surd, disc })
    }

    pub fn from_rational(r: Rational, disc: u32) -> Result<Self, NumericError> {
        Self::new(r, Rational::zero(), disc)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    pub fn surd_part(&self) -> &Rational {
        &self.surd
    }

    pub fn discriminant(&self) -> u32 {
        self.disc
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.surd.is_zero()
    }

    /// Galois conjugate: `sqrt(D) -> -sqrt(D)`.
    pub fn conjugate(&self) -> Self {
        Self { rational: self.rational.clone(), surd: -&self.surd, disc: self.disc }
    }

    pub fn trace(&self) -> Rational {
        &self.rational + &self.rational
    }

    pub fn norm(&self) -> Rational {
        &self.rational * &self.rational - &self.surd * &self.surd * Rational::from_integer(self.disc.into())
    }

    /// Sign of the real number `a + b sqrt(D)`, decided by comparing squares.
    pub fn signum(&self) -> Ordering {
        let a = &self.rational;
        let b = &self.surd;
        match (a.cmp(&Rational::zero()), b.cmp(&Rational::zero())) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
            (Ordering::Less, Ordering::Less) => Ordering::Less,
            (sa, _) => {
                // opposite signs: compare a^2 with D b^2
                let a2 = a * a;
                let b2d = b * b * Rational::from_integer(self.disc.into());
                match a2.cmp(&b2d) {
                    Ordering::Greater => sa,
                    Ordering::Less => sa.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    /// Both real embeddings are `>= 0`.
    pub fn is_totally_nonnegative(&self) -> bool {
        self.signum() != Ordering::Less && self.conjugate().signum() != Ordering::Less
    }

    fn check(&self, rhs: &Self) -> Result<(), NumericError> {
        if self.disc == rhs.disc {
            Ok(())
        } else {
            Err(NumericError::DiscriminantMismatch(self.disc, rhs.disc))
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, NumericError> {
        self.check(rhs)?;
        Ok(Self { rational: &self.rational + &rhs.rational, surd: &self.surd + &rhs.surd, disc: self.disc })
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, NumericError> {
        self.check(rhs)?;
        Ok(Self { rational: &self.rational - &rhs.rational, surd: &self.surd - &rhs.surd, disc: self.disc })
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, NumericError> {
        self.check(rhs)?;
        let d = Rational::from_integer(self.disc.into());
        Ok(Self {
            rational: &self.rational * &rhs.rational + &self.surd * &rhs.surd * d,
            surd: &self.rational * &rhs.surd + &self.surd * &rhs.rational,
            disc: self.disc,
        })
    }

    pub fn inv(&self) -> Result<Self, NumericError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        let c = self.conjugate();
        Ok(Self { rational: c.rational / &n, surd: c.surd / &n, disc: self.disc })
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self, NumericError> {
        self.check(rhs)?;
        self.try_mul(&rhs.inv()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self { rational: &self.rational * r, surd: &self.surd * r, disc: self.disc }
    }
}

impl fmt::Display for QuadRational {
    /// `p/q+r/s*sqrt(D)`, with `-` in place of `+` for a negative surd part.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.surd.is_negative() {
            write!(f, "{}-{}*sqrt({})", self.rational, -&self.surd, self.disc)
        } else {
            write!(f, "{}+{}*sqrt({})", self.rational, self.surd, self.disc)
        }
    }
}

impl FromStr for QuadRational {
    type Err = NumericError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || NumericError::BadQuadratic(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = t.strip_suffix(')').ok_or_else(bad)?;
        let (head, d) = body.rsplit_once("*sqrt(").ok_or_else(bad)?;
        let disc: u32 = d.parse().map_err(|_| bad())?;
        // the separator is the last sign that is not the leading one
        let split = head
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last()
            .ok_or_else(bad)?;
        let (a, b) = head.split_at(split);
        let a = parse_rational(a).map_err(|_| bad())?;
        let b = parse_rational(b.strip_prefix('+').unwrap_or(b)).map_err(|_| bad())?;
        Self::new(a, b, disc)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&QuadRational> for &QuadRational {
            type Output = QuadRational;
            /// # Panics
            /// On mixed discriminants.
            fn $method(self, rhs: &QuadRational) -> QuadRational {
                self.$checked(rhs).expect("quadratic arithmetic")
            }
        }
        impl $tr<QuadRational> for QuadRational {
            type Output = QuadRational;
            fn $method(self, rhs: QuadRational) -> QuadRational {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &QuadRational {
    type Output = QuadRational;
    fn neg(self) -> QuadRational {
        QuadRational { rational: -&self.rational, surd: -&self.surd, disc: self.disc }
    }
}

impl Neg for QuadRational {
    type Output = QuadRational;
    fn neg(self) -> QuadRational {
        -&self
    }
}

impl Field for QuadRational {
    fn zero_like(&self) -> Self {
        Self { rational: Rational::zero(), surd: Rational::zero(), disc: self.disc }
    }
    fn one_like(&self) -> Self {
        Self { rational: Rational::one(), surd: Rational::zero(), disc: self.disc }
    }
    fn embed(&self, r: &Rational) -> Self {
        Self { rational: r.clone(), surd: Rational::zero(), disc: self.disc }
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
        self.inv().ok()
    }
    fn fis_positive(&self) -> bool {
        self.is_positive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};

    fn q(a: Rational, b: Rational, d: u32) -> QuadRational {
        QuadRational::new(a, b, d).unwrap()
    }

    #[test]
    fn conjugates() {
        let lambda = q(rat(1, 2), rat(-1, 10), 5);
        assert_eq!(lambda.conjugate(), q(rat(1, 2), rat(1, 10), 5));
        let three = q(int(3), int(0), 5);
        assert_eq!(three.conjugate(), three);
        let l8 = q(int(1), rat(-1, 4), 2);
        assert_eq!(l8.conjugate(), q(int(1), rat(1, 4), 2));
        assert_eq!(l8.conjugate().conjugate(), l8);
    }

    #[test]
    fn positivity() {
        assert!(q(int(1), rat(-1, 4), 2).is_positive());
        assert!(!q(int(0), int(0), 2).is_positive());
        assert!(q(int(-1), rat(1, 2), 5).is_positive());
        assert!(!q(int(-1), rat(1, 3), 5).is_positive());
        assert!(!q(int(2), int(-1), 5).is_positive());
    }

    #[test]
    fn lambda_satisfies_its_quadratic() {
        // 5 l^2 - 5 l + 1 = 0 for l = (5 - sqrt 5)/10
        let l = q(rat(1, 2), rat(-1, 10), 5);
        let five = l.embed(&int(5));
        let v = &(&(&five * &(&l * &l)) - &(&five * &l)) + &l.one_like();
        assert!(v.is_zero());
    }

    #[test]
    fn display_and_parse() {
        for (a, b, d) in [(rat(1, 2), rat(-1, 10), 5), (int(3), int(0), 5), (rat(-7, 3), rat(1, 4), 2)] {
            let x = q(a, b, d);
            let s = x.to_string();
            assert_eq!(s.parse::<QuadRational>().unwrap(), x, "{s}");
        }
        assert_eq!(q(rat(1, 2), rat(1, 4), 2).to_string(), "1/2+1/4*sqrt(2)");
        assert_eq!(q(rat(1, 2), rat(-1, 10), 5).to_string(), "1/2-1/10*sqrt(5)");
        assert!("1/2+1/4*sqrt(4)".parse::<QuadRational>().is_err());
    }

    #[test]
    fn mixed_discriminants_are_errors() {
        let a = q(int(1), int(1), 2);
        let b = q(int(1), int(1), 5);
        assert_eq!(a.try_add(&b), Err(NumericError::DiscriminantMismatch(2, 5)));
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn inverse() {
        let a = q(int(3), int(-2), 2);
        let one = a.try_mul(&a.inv().unwrap()).unwrap();
        assert_eq!(one, a.one_like());
        assert!(a.zero_like().inv().is_err());
    }
}
