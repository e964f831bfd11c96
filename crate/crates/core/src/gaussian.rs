//! Exact complex rational numbers (Gaussian rationals).
//!
//! `BigRational` keeps numerator and denominator coprime with a positive
//! denominator, so values are always in canonical form.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A complex number with exact rational real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// |z|^2 = re^2 + im^2, a nonnegative rational.
    pub fn abs_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact division. Panics if `rhs` is zero.
    pub fn div(&self, rhs: &Self) -> Self {
        let d = rhs.abs_sq();
        assert!(!d.is_zero(), "division by zero GaussianRational");
        let num = self * &rhs.conj();
        Self::new(num.re / &d, num.im / &d)
    }

    pub fn scale(&self, f: &BigRational) -> Self {
        Self::new(&self.re * f, &self.im * f)
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

/// Renders a rational without a denominator when it is integral.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", format_rational(&self.re));
        }
        if self.re.is_zero() {
            return write!(f, "{}*i", format_rational(&self.im));
        }
        let im = if self.im.is_negative() {
            format!("-{}*i", format_rational(&-self.im.clone()))
        } else {
            format!("+{}*i", format_rational(&self.im))
        };
        write!(f, "({}{})", format_rational(&self.re), im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conj_involution_and_abs_sq() {
        let z = GaussianRational::new(
            BigRational::new(BigInt::from(3), BigInt::from(2)),
            BigRational::new(BigInt::from(-1), BigInt::from(4)),
        );
        assert_eq!(z.conj().conj(), z);
        // (3/2)^2 + (1/4)^2 = 9/4 + 1/16 = 37/16
        assert_eq!(
            z.abs_sq(),
            BigRational::new(BigInt::from(37), BigInt::from(16))
        );
        assert!(!z.abs_sq().is_negative());
    }

    #[test]
    fn field_ops() {
        let i = GaussianRational::i();
        let one = GaussianRational::one();
        // i * i = -1
        assert_eq!(&i * &i, -&one);
        // (1 + i)(1 - i) = 2
        let z = &one + &i;
        assert_eq!(&z * &z.conj(), GaussianRational::from_int(2));
        // division round trip
        let w = GaussianRational::from_ratio(7, 3);
        assert_eq!((&z * &w).div(&w), z);
    }
}
