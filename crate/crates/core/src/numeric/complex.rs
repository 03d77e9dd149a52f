use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Field, Rational};

/// `re + im * i` over an exact field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Complex<F> {
    pub re: F,
    pub im: F,
}

impl<F: Field> Complex<F> {
    pub fn new(re: F, im: F) -> Self {
        Self { re, im }
    }

    pub fn from_real(re: F) -> Self {
        let im = re.zero_like();
        Self { re, im }
    }

    /// A rational embedded next to `like` (same field, same discriminant).
    pub fn embed(like: &F, r: &Rational) -> Self {
        Self::from_real(like.embed(r))
    }

    pub fn zero_like(&self) -> Self {
        Self::from_real(self.re.zero_like())
    }

    pub fn one_like(&self) -> Self {
        Self::from_real(self.re.one_like())
    }

    pub fn is_zero(&self) -> bool {
        self.re.fis_zero() && self.im.fis_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: self.im.fneg() }
    }

    /// `|z|^2`, an element of the base field.
    pub fn norm_sqr(&self) -> F {
        self.re.fmul(&self.re).fadd(&self.im.fmul(&self.im))
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr().finv()?;
        Some(Self { re: self.re.fmul(&n), im: self.im.fneg().fmul(&n) })
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        Some(self * &rhs.inv()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let c = self.re.embed(r);
        Self { re: self.re.fmul(&c), im: self.im.fmul(&c) }
    }
}

impl<F: Field> Add for &Complex<F> {
    type Output = Complex<F>;
    fn add(self, rhs: Self) -> Complex<F> {
        Complex { re: self.re.fadd(&rhs.re), im: self.im.fadd(&rhs.im) }
    }
}

impl<F: Field> Sub for &Complex<F> {
    type Output = Complex<F>;
    fn sub(self, rhs: Self) -> Complex<F> {
        Complex { re: self.re.fsub(&rhs.re), im: self.im.fsub(&rhs.im) }
    }
}

impl<F: Field> Mul for &Complex<F> {
    type Output = Complex<F>;
    fn mul(self, rhs: Self) -> Complex<F> {
        Complex {
            re: self.re.fmul(&rhs.re).fsub(&self.im.fmul(&rhs.im)),
            im: self.re.fmul(&rhs.im).fadd(&self.im.fmul(&rhs.re)),
        }
    }
}

impl<F: Field> Neg for &Complex<F> {
    type Output = Complex<F>;
    fn neg(self) -> Complex<F> {
        Complex { re: self.re.fneg(), im: self.im.fneg() }
    }
}

impl<F: Field + fmt::Display> fmt::Display for Complex<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})i", self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat, QuadRational};

    #[test]
    fn rational_complex_division() {
        let a = Complex::new(rat(1, 2), int(3));
        let b = Complex::new(int(-2), rat(5, 7));
        let q = a.checked_div(&b).unwrap();
        assert_eq!(&q * &b, a);
        assert!(a.zero_like().inv().is_none());
    }

    #[test]
    fn quadratic_complex_arithmetic() {
        let s = QuadRational::new(int(0), int(1), 5).unwrap();
        let z = Complex::new(s.clone(), s.one_like());
        // (sqrt5 + i)(sqrt5 - i) = 6
        let w = &z * &z.conj();
        assert_eq!(w, Complex::embed(&s, &int(6)));
        let q = z.inv().unwrap();
        assert_eq!(&q * &z, z.one_like());
    }
}
