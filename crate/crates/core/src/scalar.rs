//! Gaussian-rational scalars.
//!
//! Every pairing and cochain computation in this crate runs over the field
//! Q(i): all the formulas involved only ever produce integers, halves and
//! factors of i, so exact arithmetic is both achievable and required for the
//! integer-valued outputs.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element a + bi of the Gaussian rationals.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub re: BigRational,
    pub im: BigRational,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn i() -> Self {
        Scalar {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    /// n/d with d != 0.
    pub fn from_ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Scalar {
            re: BigRational::new(BigInt::from(n), BigInt::from(d)),
            im: BigRational::zero(),
        }
    }

    pub fn half() -> Self {
        Scalar::from_ratio(1, 2)
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

    /// Complex conjugate a - bi.
    pub fn conj(&self) -> Self {
        Scalar {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Ok(Scalar {
            re: &self.re / &norm,
            im: -&self.im / &norm,
        })
    }

    /// The integer value of a rational-integral real scalar, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.im.is_zero() && self.re.is_integer() {
            Some(self.re.to_integer())
        } else {
            None
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        fn conv(r: &BigRational) -> f64 {
            let n: f64 = rational_part_to_f64(r.numer());
            let d: f64 = rational_part_to_f64(r.denom());
            n / d
        }
        (conv(&self.re), conv(&self.im))
    }

    /// Rational as a decimal-free string: "p/q", or just "p" when integral.
    pub fn rational_to_string(r: &BigRational) -> String {
        if r.is_integer() {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    }

    /// Compact exact string: "p/q" when real, "p/qi" when imaginary,
    /// "p/q+r/si" in general.
    pub fn to_compact_string(&self) -> String {
        format!("{}", self)
            .replace(' ', "")
    }

    pub fn from_compact_str(s: &str) -> Result<Scalar> {
        let s = s.trim().replace(' ', "");
        if let Some(body) = s.strip_suffix('i') {
            // split at the last +/- that is not the leading sign
            let split = body
                .char_indices()
                .skip(1)
                .filter(|(i, c)| {
                    (*c == '+' || *c == '-') && body.as_bytes()[i - 1] != b'/'
                })
                .map(|(i, _)| i)
                .last();
            match split {
                Some(i) => {
                    let (re, im) = body.split_at(i);
                    let im = im.strip_prefix('+').unwrap_or(im);
                    Ok(Scalar {
                        re: Scalar::rational_from_str(re)?,
                        im: Scalar::rational_from_str(im)?,
                    })
                }
                None => {
                    let body = if body.is_empty() || body == "-" || body == "+" {
                        format!("{body}1")
                    } else {
                        body.to_string()
                    };
                    Ok(Scalar {
                        re: BigRational::zero(),
                        im: Scalar::rational_from_str(&body)?,
                    })
                }
            }
        } else {
            Ok(Scalar {
                re: Scalar::rational_from_str(&s)?,
                im: BigRational::zero(),
            })
        }
    }

    pub fn rational_from_str(s: &str) -> Result<BigRational> {
        let parse = |t: &str| -> Result<BigInt> {
            BigInt::from_str(t.trim()).map_err(|_| Error::BadRational(s.to_string()))
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let d = parse(d)?;
                if d.is_zero() {
                    return Err(Error::BadRational(s.to_string()));
                }
                Ok(BigRational::new(parse(n)?, d))
            }
            None => Ok(BigRational::from_integer(parse(s)?)),
        }
    }
}

fn rational_part_to_f64(n: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    n.to_f64().unwrap_or(f64::NAN)
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", Scalar::rational_to_string(&self.re));
        }
        if self.re.is_zero() {
            return write!(f, "{}i", Scalar::rational_to_string(&self.im));
        }
        let im = Scalar::rational_to_string(&self.im.abs());
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{} {} {}i",
            Scalar::rational_to_string(&self.re),
            sign,
            im
        )
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl<'a> Add<&'a Scalar> for Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: self.re + &rhs.re,
            im: self.im + &rhs.im,
        }
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
        Scalar {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl<'a> Sub<&'a Scalar> for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: self.re - &rhs.re,
            im: self.im - &rhs.im,
        }
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

impl<'a, 'b> Mul<&'b Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl<'a> Neg for &'a Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugation_is_involutive() {
        let s = Scalar::from_ratio(3, 7) + Scalar::i() * Scalar::from_ratio(-2, 5);
        assert_eq!(s.conj().conj(), s);
    }

    #[test]
    fn inverse_roundtrip() {
        let s = Scalar::from_ratio(1, 2) + Scalar::i() * Scalar::from_int(3);
        assert!((s.clone() * s.inv().unwrap()).is_one());
        assert!(Scalar::zero().inv().is_err());
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(Scalar::i() * Scalar::i(), Scalar::from_int(-1));
    }

    #[test]
    fn rational_string_roundtrip() {
        for s in ["0", "-3", "1/2", "-7/12"] {
            let r = Scalar::rational_from_str(s).unwrap();
            assert_eq!(Scalar::rational_to_string(&r), s);
        }
        assert!(Scalar::rational_from_str("1/0").is_err());
        assert!(Scalar::rational_from_str("0.5").is_err());
    }

    #[test]
    fn as_integer() {
        assert_eq!(Scalar::from_int(-4).as_integer(), Some(BigInt::from(-4)));
        assert_eq!(Scalar::half().as_integer(), None);
        assert_eq!(Scalar::i().as_integer(), None);
    }
}
