//! Exact scalar fields: the rationals and the Gaussian rationals ℚ(i).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ParseScalarError;

/// Arbitrary precision rational number.
pub type Rational = BigRational;

/// An exact field usable by the dense linear algebra in [`super::matrix`].
///
/// Every operation is exact; `is_zero` is a true equality test.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
{
    /// Field involution; the identity on real fields.
    fn conj(&self) -> Self;

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }

    fn from_i64(n: i64) -> Self;
}

impl Field for BigRational {
    fn conj(&self) -> Self {
        self.clone()
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

/// Parses `"p"`, `"p/q"` or `"-p/q"` into a rational in lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational, ParseScalarError> {
    let t = s.trim();
    let bad = || ParseScalarError(s.to_string());
    if t.is_empty() {
        return Err(bad());
    }
    match t.split_once('/') {
        None => Ok(Rational::from_integer(t.parse::<BigInt>().map_err(|_| bad())?)),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() || d.is_negative() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Element `re + im·i` of the Gaussian rationals.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussScalar {
    pub re: Rational,
    pub im: Rational,
}

impl GaussScalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussScalar { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussScalar { re, im: Rational::zero() }
    }

    pub fn i() -> Self {
        GaussScalar { re: Rational::zero(), im: Rational::one() }
    }

    /// `n/d` as a real Gaussian scalar.
    pub fn ratio(n: i64, d: i64) -> Self {
        Self::real(Rational::new(n.into(), d.into()))
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => -Self::one(),
            _ => -Self::i(),
        }
    }

    /// `|x|² = re² + im²`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        GaussScalar { re: &self.re * r, im: &self.im * r }
    }
}

impl Field for GaussScalar {
    fn conj(&self) -> Self {
        GaussScalar { re: self.re.clone(), im: -&self.im }
    }

    fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(GaussScalar { re: &self.re / &n, im: -&self.im / &n })
    }

    fn from_i64(n: i64) -> Self {
        Self::real(Rational::from_i64(n))
    }
}

impl From<Rational> for GaussScalar {
    fn from(r: Rational) -> Self {
        Self::real(r)
    }
}

impl From<i64> for GaussScalar {
    fn from(n: i64) -> Self {
        Self::from_i64(n)
    }
}

impl Zero for GaussScalar {
    fn zero() -> Self {
        GaussScalar { re: Rational::zero(), im: Rational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussScalar {
    fn one() -> Self {
        GaussScalar { re: Rational::one(), im: Rational::zero() }
    }
}

impl Neg for GaussScalar {
    type Output = Self;
    fn neg(self) -> Self {
        GaussScalar { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussScalar {
    type Output = GaussScalar;
    fn neg(self) -> GaussScalar {
        GaussScalar { re: -&self.re, im: -&self.im }
    }
}

impl<'a> Add<&'a GaussScalar> for &'a GaussScalar {
    type Output = GaussScalar;
    fn add(self, o: &GaussScalar) -> GaussScalar {
        GaussScalar { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a GaussScalar> for &'a GaussScalar {
    type Output = GaussScalar;
    fn sub(self, o: &GaussScalar) -> GaussScalar {
        GaussScalar { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a GaussScalar> for &'a GaussScalar {
    type Output = GaussScalar;
    fn mul(self, o: &GaussScalar) -> GaussScalar {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussScalar::real(&self.re * &o.re);
        }
        GaussScalar {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl<'a> Div<&'a GaussScalar> for &'a GaussScalar {
    type Output = GaussScalar;
    fn div(self, o: &GaussScalar) -> GaussScalar {
        self * &o.inv().expect("division by zero Gaussian scalar")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for GaussScalar {
            type Output = GaussScalar;
            fn $f(self, o: GaussScalar) -> GaussScalar {
                (&self).$f(&o)
            }
        }
        impl<'a> $tr<&'a GaussScalar> for GaussScalar {
            type Output = GaussScalar;
            fn $f(self, o: &GaussScalar) -> GaussScalar {
                (&self).$f(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&GaussScalar> for GaussScalar {
    fn add_assign(&mut self, o: &GaussScalar) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&GaussScalar> for GaussScalar {
    fn sub_assign(&mut self, o: &GaussScalar) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&GaussScalar> for GaussScalar {
    fn mul_assign(&mut self, o: &GaussScalar) {
        *self = &*self * o;
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical text form: `"3/2"`, `"-i"`, `"1/2i"` (meaning (1/2)·i), `"1-3/4i"`.
impl fmt::Display for GaussScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |r: &Rational| -> String {
            if r.is_one() {
                "i".to_string()
            } else if (-r).is_one() {
                "-i".to_string()
            } else {
                format!("{}i", fmt_rational(r))
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => write!(f, "{}", imag(&self.im)),
            (false, false) => {
                let im = imag(&self.im);
                if im.starts_with('-') {
                    write!(f, "{}{}", fmt_rational(&self.re), im)
                } else {
                    write!(f, "{}+{}", fmt_rational(&self.re), im)
                }
            }
        }
    }
}

impl fmt::Debug for GaussScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GaussScalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || ParseScalarError(s.to_string());
        if t.is_empty() {
            return Err(bad());
        }
        let Some(body) = t.strip_suffix('i') else {
            return Ok(GaussScalar::real(parse_rational(&t)?));
        };
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .last();
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let im = match im {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => parse_rational(other.strip_prefix('+').unwrap_or(other))?,
        };
        let re = if re.is_empty() { Rational::zero() } else { parse_rational(re)? };
        Ok(GaussScalar { re, im })
    }
}

impl serde::Serialize for GaussScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for GaussScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussScalar {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        for s in ["0", "3/2", "-7", "i", "-i", "1/2i", "-1/2i", "1+i", "1-3/4i", "-2/3+5i"] {
            assert_eq!(g(s).to_string(), s);
        }
        assert_eq!(g("2/4"), GaussScalar::ratio(1, 2));
        assert!("1/0".parse::<GaussScalar>().is_err());
        assert!("abc".parse::<GaussScalar>().is_err());
        assert!("".parse::<GaussScalar>().is_err());
    }

    #[test]
    fn field_ops() {
        let a = g("1+2i");
        let b = g("3-i");
        assert_eq!(&a * &b, g("5+5i"));
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(a.conj().conj(), a);
        assert_eq!(a.norm_sqr(), Rational::from_i64(5));
        assert!(GaussScalar::zero().inv().is_none());
        assert_eq!(GaussScalar::i_pow(2), -GaussScalar::one());
        assert_eq!(GaussScalar::i_pow(-1), -GaussScalar::i());
    }
}
