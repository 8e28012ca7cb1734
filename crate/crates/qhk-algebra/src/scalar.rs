use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::AlgebraError;

/// An exact Gaussian rational `re + im * i`.
///
/// Both parts are arbitrary-precision rationals kept in canonical form
/// (reduced, positive denominator) by `BigRational` itself, so equality is
/// plain structural equality and no rounding happens anywhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
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

    pub fn from_int(v: i64) -> Self {
        Self::new(BigRational::from_integer(BigInt::from(v)), BigRational::zero())
    }

    /// Real rational `num/den`.  Panics on `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
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

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `re^2 + im^2`, the rational square norm.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "division by zero scalar");
        Self::new(&self.re / &n, -(&self.im / &n))
    }

    /// Multiplication by a small integer, used for sign bookkeeping.
    pub fn scale_int(&self, k: i64) -> Self {
        match k {
            0 => Self::zero(),
            1 => self.clone(),
            -1 => Self::new(-self.re.clone(), -self.im.clone()),
            _ => {
                let f = BigRational::from_integer(BigInt::from(k));
                Self::new(&self.re * &f, &self.im * &f)
            }
        }
    }

    /// Exact serialization `p/q+r/s*i` (or `p/q-r/s*i`), losslessly parsable
    /// by `FromStr`.
    pub fn to_exact_string(&self) -> String {
        let (im_sign, im_abs) = if self.im.is_negative() {
            ('-', -self.im.clone())
        } else {
            ('+', self.im.clone())
        };
        format!(
            "{}/{}{}{}/{}*i",
            self.re.numer(),
            self.re.denom(),
            im_sign,
            im_abs.numer(),
            im_abs.denom()
        )
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_exact_string())
    }
}

fn parse_ratio(text: &str, full: &str) -> Result<BigRational, AlgebraError> {
    let bad = || AlgebraError::ParseError(full.to_string());
    let (num, den) = text.split_once('/').ok_or_else(bad)?;
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den <= BigInt::zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

impl FromStr for Scalar {
    type Err = AlgebraError;

    /// Parses the canonical form `p/q+r/s*i` / `p/q-r/s*i`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AlgebraError::ParseError(s.to_string());
        let body = s.strip_suffix("*i").ok_or_else(bad)?;
        // The separator is the sign that follows the first denominator.
        let slash = body.find('/').ok_or_else(bad)?;
        let sep = body[slash..]
            .find(['+', '-'])
            .map(|k| k + slash)
            .ok_or_else(bad)?;
        let re = parse_ratio(&body[..sep], s)?;
        let sign = if body.as_bytes()[sep] == b'-' { -1 } else { 1 };
        let im = parse_ratio(&body[sep + 1..], s)?;
        Ok(Self::new(re, im * BigRational::from_integer(BigInt::from(sign))))
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl<'a> Add<&'a Scalar> for Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        Scalar::new(self.re + &rhs.re, self.im + &rhs.im)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        Scalar::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Div for Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)] // division through the reciprocal
    fn div(self, rhs: Scalar) -> Scalar {
        &self * &rhs.inv()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}
