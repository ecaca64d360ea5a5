//! Gaussian rational scalars: the exact coefficient field for all symbolic work.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

/// An exact complex number with arbitrary-precision rational real and
/// imaginary parts. `BigRational` keeps both parts reduced with a positive
/// denominator, so equality is plain structural equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct CScalar {
    re: BigRational,
    im: BigRational,
}

impl CScalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        CScalar { re, im }
    }

    pub fn zero() -> Self {
        CScalar::default()
    }

    pub fn one() -> Self {
        CScalar::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        CScalar::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        CScalar::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// `num/den` as a real scalar. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        CScalar::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn from_real(re: BigRational) -> Self {
        CScalar::new(re, BigRational::zero())
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
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

    /// True when the value is a non-negative integer small enough to use as
    /// an exponent.
    pub fn as_small_uint(&self) -> Option<u32> {
        if !self.im.is_zero() || !self.re.denom().is_one() || self.re.is_negative() {
            return None;
        }
        self.re.numer().to_u32()
    }

    pub fn conj(&self) -> Self {
        CScalar::new(self.re.clone(), -self.im.clone())
    }

    /// |z|^2 as an exact rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact reciprocal; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(CScalar::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut out = CScalar::one();
        for _ in 0..exp {
            out = &out * self;
        }
        out
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Add for &CScalar {
    type Output = CScalar;
    fn add(self, rhs: &CScalar) -> CScalar {
        CScalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &CScalar {
    type Output = CScalar;
    fn sub(self, rhs: &CScalar) -> CScalar {
        CScalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &CScalar {
    type Output = CScalar;
    fn mul(self, rhs: &CScalar) -> CScalar {
        CScalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for &CScalar {
    type Output = CScalar;
    /// Exact complex division. Panics on a zero divisor; fallible callers
    /// should use [`CScalar::recip`].
    fn div(self, rhs: &CScalar) -> CScalar {
        let inv = rhs.recip().expect("division by zero CScalar");
        self * &inv
    }
}

impl Neg for &CScalar {
    type Output = CScalar;
    fn neg(self) -> CScalar {
        CScalar::new(-self.re.clone(), -self.im.clone())
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for CScalar {
            type Output = CScalar;
            fn $method(self, rhs: CScalar) -> CScalar {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for CScalar {
    type Output = CScalar;
    fn neg(self) -> CScalar {
        -&self
    }
}

/// Prints within the expression grammar: `3`, `-1/2`, `i`, `-2i`, `3/4i`,
/// and `1/2 + 3i` for mixed values.
impl fmt::Display for CScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn imag(r: &BigRational) -> String {
            if r.is_one() {
                "i".to_string()
            } else if (-r).is_one() {
                "-i".to_string()
            } else {
                format!("{r}i")
            }
        }
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}", imag(&self.im)),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{} - {}", self.re, imag(&-self.im.clone()))
                } else {
                    write!(f, "{} + {}", self.re, imag(&self.im))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss(re_n: i64, re_d: i64, im_n: i64, im_d: i64) -> CScalar {
        CScalar::new(
            BigRational::new(BigInt::from(re_n), BigInt::from(re_d)),
            BigRational::new(BigInt::from(im_n), BigInt::from(im_d)),
        )
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = gauss(1, 2, 3, 1); // 1/2 + 3i
        let b = gauss(-2, 3, 1, 6);
        let prod = &a * &b;
        // (1/2 + 3i)(-2/3 + i/6) = (-1/3 - 1/2) + i(1/12 - 2) = -5/6 - 23/12 i
        assert_eq!(prod, gauss(-5, 6, -23, 12));
        let back = &prod / &b;
        assert_eq!(back, a);
    }

    #[test]
    fn i_squares_to_minus_one() {
        assert_eq!(CScalar::i().pow(2), CScalar::from_int(-1));
    }

    #[test]
    fn recip_of_zero_is_none() {
        assert!(CScalar::zero().recip().is_none());
    }

    #[test]
    fn display_forms() {
        assert_eq!(CScalar::zero().to_string(), "0");
        assert_eq!(CScalar::from_ratio(-3, 2).to_string(), "-3/2");
        assert_eq!(CScalar::i().to_string(), "i");
        assert_eq!((-CScalar::i()).to_string(), "-i");
        assert_eq!(gauss(1, 2, 3, 1).to_string(), "1/2 + 3i");
        assert_eq!(gauss(1, 1, -1, 2).to_string(), "1 - 1/2i");
    }

    #[test]
    fn small_uint_recognition() {
        assert_eq!(CScalar::from_int(7).as_small_uint(), Some(7));
        assert_eq!(CScalar::from_ratio(1, 2).as_small_uint(), None);
        assert_eq!(CScalar::from_int(-1).as_small_uint(), None);
        assert_eq!(CScalar::i().as_small_uint(), None);
    }
}
