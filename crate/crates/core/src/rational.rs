//! Exact scalars: rationals and Gaussian rationals, plus their JSON shape.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shorthand for building a rational from small integers.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `base^exp` for any integer exponent; `base` must be nonzero when `exp < 0`.
pub fn pow_i(base: &BigRational, exp: i64) -> BigRational {
    let p = num_traits::pow(base.clone(), exp.unsigned_abs() as usize);
    if exp < 0 {
        p.recip()
    } else {
        p
    }
}

/// An element a + b·i of ℚ(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussRat {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::real(BigRational::from_integer(v.into()))
    }

    pub fn i() -> Self {
        GaussRat {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn conj(&self) -> Self {
        GaussRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(GaussRat {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        GaussRat {
            re: &self.re * r,
            im: &self.im * r,
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl Zero for GaussRat {
    fn zero() -> Self {
        GaussRat::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRat {
    fn one() -> Self {
        GaussRat::real(BigRational::one())
    }
}

impl From<BigRational> for GaussRat {
    fn from(r: BigRational) -> Self {
        GaussRat::real(r)
    }
}

impl From<i64> for GaussRat {
    fn from(v: i64) -> Self {
        GaussRat::from_int(v)
    }
}

impl<'a> Add<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn add(self, o: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, o: GaussRat) -> GaussRat {
        &self + &o
    }
}

impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, o: &GaussRat) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl<'a> Sub<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn sub(self, o: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, o: GaussRat) -> GaussRat {
        &self - &o
    }
}

impl<'a> Mul<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn mul(self, o: &GaussRat) -> GaussRat {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussRat::real(&self.re * &o.re);
        }
        GaussRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, o: GaussRat) -> GaussRat {
        &self * &o
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        -self.clone()
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => {
                if self.im.is_one() {
                    write!(f, "i")
                } else if (-self.im.clone()).is_one() {
                    write!(f, "-i")
                } else {
                    write!(f, "{}i", self.im)
                }
            }
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "({} {} {}i)", self.re, sign, self.im.abs())
            }
        }
    }
}

/// JSON integer that falls back to a decimal string beyond 64 bits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonInt {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for JsonInt {
    fn from(v: &BigInt) -> Self {
        match v.to_i64() {
            Some(s) => JsonInt::Small(s),
            None => JsonInt::Big(v.to_string()),
        }
    }
}

impl JsonInt {
    fn to_bigint(&self, field: &str) -> Result<BigInt> {
        match self {
            JsonInt::Small(v) => Ok(BigInt::from(*v)),
            JsonInt::Big(s) => s
                .trim()
                .parse::<BigInt>()
                .map_err(|_| Error::input(field, format!("`{s}` is not a decimal integer"))),
        }
    }
}

/// `{"num": .., "den": ..}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonRational {
    pub num: JsonInt,
    pub den: JsonInt,
}

impl From<&BigRational> for JsonRational {
    fn from(r: &BigRational) -> Self {
        JsonRational {
            num: r.numer().into(),
            den: r.denom().into(),
        }
    }
}

impl JsonRational {
    pub fn to_rational(&self, field: &str) -> Result<BigRational> {
        let num = self.num.to_bigint(field)?;
        let den = self.den.to_bigint(field)?;
        if den.is_zero() {
            return Err(Error::input(field, "zero denominator"));
        }
        Ok(BigRational::new(num, den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_field_ops() {
        let a = GaussRat::new(rat(1, 2), rat(3, 1));
        let b = GaussRat::new(rat(-2, 1), rat(1, 3));
        let prod = &a * &b;
        // (1/2 + 3i)(-2 + i/3) = -1 - 1 + (1/6 - 6) i
        assert_eq!(prod, GaussRat::new(rat(-2, 1), rat(-35, 6)));
        let inv = a.inv().unwrap();
        assert_eq!(&a * &inv, GaussRat::one());
        assert!(GaussRat::zero().inv().is_none());
        assert_eq!(&GaussRat::i() * &GaussRat::i(), GaussRat::from_int(-1));
    }

    #[test]
    fn negative_powers() {
        assert_eq!(pow_i(&rat(1, 2), -3), rat(8, 1));
        assert_eq!(pow_i(&rat(2, 3), 0), rat(1, 1));
    }

    #[test]
    fn json_rational_big_values_use_strings() {
        let big = BigRational::new(BigInt::from(u64::MAX) * 7, BigInt::from(3));
        let j = JsonRational::from(&big);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains('"'));
        let back: JsonRational = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_rational("x").unwrap(), big);

        let small: JsonRational = serde_json::from_str(r#"{"num":1,"den":6}"#).unwrap();
        assert_eq!(small.to_rational("x").unwrap(), rat(1, 6));
        let zero_den: JsonRational = serde_json::from_str(r#"{"num":1,"den":0}"#).unwrap();
        assert!(zero_den.to_rational("mu[1]").is_err());
    }
}
