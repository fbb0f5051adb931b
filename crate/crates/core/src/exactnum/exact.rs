use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::MathError;

/// Gaussian rational `re + im*i` with arbitrary-precision parts.
///
/// `BigRational` keeps itself in lowest terms with a positive denominator,
/// so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    re: BigRational,
    im: BigRational,
}

impl ExactScalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        ExactScalar { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        ExactScalar { re, im: BigRational::zero() }
    }

    pub fn integer(v: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn i() -> Self {
        ExactScalar { re: BigRational::zero(), im: BigRational::one() }
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

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ExactScalar { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `|z|^2`, always a nonnegative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(Self::real(self.re.recip()));
        }
        let d = self.norm_sqr();
        Some(ExactScalar { re: &self.re / &d, im: -(&self.im / &d) })
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|inv| self * &inv)
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = ExactScalar::integer(1);
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        Some(acc)
    }

    /// An exact square root if one exists among the Gaussian rationals.
    ///
    /// The root with positive real part (or positive imaginary part when
    /// the real part vanishes) is returned.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        if self.im.is_zero() {
            return if self.re.is_positive() {
                rational_sqrt(&self.re).map(Self::real)
            } else {
                rational_sqrt(&(-self.re.clone())).map(|y| ExactScalar { re: BigRational::zero(), im: y })
            };
        }
        // (x + iy)^2 = a + ib  =>  x^2 = (a + |z|)/2, y = b/(2x)
        let modulus = rational_sqrt(&self.norm_sqr())?;
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let x = rational_sqrt(&((&self.re + &modulus) * &half))?;
        if x.is_zero() {
            return None;
        }
        let y = &self.im / (&x * BigRational::from_integer(BigInt::from(2)));
        Some(ExactScalar { re: x, im: y })
    }

    /// The dyadic rational equal to a finite float pair.
    pub fn from_f64_pair(re: f64, im: f64) -> Option<Self> {
        Some(ExactScalar { re: BigRational::from_float(re)?, im: BigRational::from_float(im)? })
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    /// Bit length of the largest numerator or denominator; a size proxy.
    pub fn height_bits(&self) -> u64 {
        [self.re.numer(), self.re.denom(), self.im.numer(), self.im.denom()]
            .iter()
            .map(|b| b.bits())
            .max()
            .unwrap_or(0)
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Shift both parts into f64 range; only the leading bits matter.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift_n = (nb - 60).max(0) as usize;
    let shift_d = (db - 60).max(0) as usize;
    let n = (r.numer() >> shift_n).to_f64().unwrap_or(0.0);
    let d = (r.denom() >> shift_d).to_f64().unwrap_or(1.0);
    n / d * 2f64.powi((shift_n as i64 - shift_d as i64) as i32)
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        if self.re.is_zero() {
            return write!(f, "{}*i", fmt_rational(&self.im));
        }
        if self.im.is_negative() {
            write!(f, "{}-{}*i", fmt_rational(&self.re), fmt_rational(&-self.im.clone()))
        } else {
            write!(f, "{}+{}*i", fmt_rational(&self.re), fmt_rational(&self.im))
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn parse_rational(s: &str) -> Result<BigRational, MathError> {
    let bad = || MathError::Parse(format!("not a rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num = num.strip_prefix('+').unwrap_or(num);
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() || den.starts_with('-') || den.starts_with('+') {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

fn parse_imag(s: &str) -> Result<BigRational, MathError> {
    let body = s
        .strip_suffix("*i")
        .or_else(|| s.strip_suffix('i'))
        .ok_or_else(|| MathError::Parse(format!("imaginary part must end in i: {s:?}")))?;
    match body {
        "" | "+" => Ok(BigRational::one()),
        "-" => Ok(-BigRational::one()),
        b => parse_rational(b),
    }
}

impl FromStr for ExactScalar {
    type Err = MathError;

    /// Accepts `p`, `p/q`, `r/s*i`, `p/q+r/s*i`, `p/q-r/s*i`, `i`, `-i`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(MathError::Parse("empty scalar".into()));
        }
        if !s.ends_with('i') {
            return Ok(ExactScalar::real(parse_rational(&s)?));
        }
        let split = s
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-') && !s[..k].ends_with('/'))
            .map(|(k, _)| k)
            .next_back();
        match split {
            Some(k) => Ok(ExactScalar { re: parse_rational(&s[..k])?, im: parse_imag(&s[k..])? }),
            None => Ok(ExactScalar { re: BigRational::zero(), im: parse_imag(&s)? }),
        }
    }
}

impl serde::Serialize for ExactScalar {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for ExactScalar {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for ExactScalar {
    fn from(v: i64) -> Self {
        ExactScalar::integer(v)
    }
}

impl<'a> Add<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn add(self, o: &ExactScalar) -> ExactScalar {
        ExactScalar { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn sub(self, o: &ExactScalar) -> ExactScalar {
        ExactScalar { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, o: &ExactScalar) -> ExactScalar {
        if self.im.is_zero() && o.im.is_zero() {
            return ExactScalar::real(&self.re * &o.re);
        }
        if self.im.is_zero() {
            return ExactScalar { re: &self.re * &o.re, im: &self.re * &o.im };
        }
        if o.im.is_zero() {
            return ExactScalar { re: &self.re * &o.re, im: &self.im * &o.re };
        }
        ExactScalar {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar { re: -self.re.clone(), im: -self.im.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, o: ExactScalar) -> ExactScalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, o: &ExactScalar) -> ExactScalar {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar { re: -self.re, im: -self.im }
    }
}

/// Least common multiple of all denominators appearing in `row`.
pub(crate) fn common_denominator<'a, I: IntoIterator<Item = &'a ExactScalar>>(row: I) -> BigInt {
    let mut l = BigInt::one();
    for x in row {
        l = l.lcm(x.re.denom());
        l = l.lcm(x.im.denom());
    }
    l
}
