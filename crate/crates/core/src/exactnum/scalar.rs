use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::{ExactScalar, FloatScalar};
use crate::error::{MathError, Result};
use crate::linalg;

/// The field operations shared by the exact pipeline and its float mirror.
///
/// Everything generic in the crate (operators, the triangular solve,
/// Pieri coefficients) is written against this trait so the limit harness
/// can rerun the exact algorithm in `FloatScalar`.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn imag_unit() -> Self;
    fn from_exact(x: &ExactScalar) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn conj(&self) -> Self;
    fn to_complex(&self) -> Complex64;
    /// Size used for pivoting and tolerance decisions.
    fn magnitude(&self) -> f64;
    /// True if this value is zero relative to `scale` (exactly zero for exact scalars).
    fn negligible(&self, scale: f64) -> bool;
    fn invert_matrix(m: &[Vec<Self>]) -> Option<Vec<Vec<Self>>>;
    /// Deterministic interpolation coordinate number `coord` of point `seq`.
    /// `salt` selects a fallback sequence after a failed attempt.
    fn sample_coordinate(multiplicative: bool, seq: usize, coord: usize, salt: usize) -> Self;

    fn div_or_pole(&self, den: &Self, what: &str) -> Result<Self> {
        match den.inv() {
            Some(i) => Ok(self.clone() * i),
            None => Err(MathError::Pole(what.to_string())),
        }
    }

    fn powi(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc * &base;
        }
        Some(acc)
    }
}

const PRIMES: [i64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

impl Scalar for ExactScalar {
    const EXACT: bool = true;

    fn zero() -> Self {
        ExactScalar::integer(0)
    }
    fn one() -> Self {
        ExactScalar::integer(1)
    }
    fn from_i64(v: i64) -> Self {
        ExactScalar::integer(v)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        ExactScalar::ratio(num, den)
    }
    fn imag_unit() -> Self {
        ExactScalar::i()
    }
    fn from_exact(x: &ExactScalar) -> Self {
        x.clone()
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        ExactScalar::inv(self)
    }
    fn conj(&self) -> Self {
        ExactScalar::conj(self)
    }
    fn to_complex(&self) -> Complex64 {
        let (re, im) = self.to_f64_pair();
        Complex64::new(re, im)
    }
    fn magnitude(&self) -> f64 {
        self.to_complex().norm()
    }
    fn negligible(&self, _scale: f64) -> bool {
        ExactScalar::is_zero(self)
    }
    fn invert_matrix(m: &[Vec<Self>]) -> Option<Vec<Vec<Self>>> {
        linalg::invert_exact(m)
    }
    /// Powers of distinct primes: coordinate j of point k is `p_j^(k+1)`.
    fn sample_coordinate(_multiplicative: bool, seq: usize, coord: usize, salt: usize) -> Self {
        let p = PRIMES[(coord + salt) % PRIMES.len()];
        ExactScalar::integer(p).pow(seq as i64 + 1).expect("nonzero base")
    }
    fn powi(&self, e: i64) -> Option<Self> {
        self.pow(e)
    }
}

impl Scalar for FloatScalar {
    const EXACT: bool = false;

    fn zero() -> Self {
        FloatScalar::real(0.0)
    }
    fn one() -> Self {
        FloatScalar::real(1.0)
    }
    fn from_i64(v: i64) -> Self {
        FloatScalar::real(v as f64)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        FloatScalar::real(num as f64 / den as f64)
    }
    fn imag_unit() -> Self {
        FloatScalar::new(0.0, 1.0)
    }
    fn from_exact(x: &ExactScalar) -> Self {
        let (re, im) = x.to_f64_pair();
        FloatScalar::new(re, im)
    }
    fn is_zero(&self) -> bool {
        self.0.re == 0.0 && self.0.im == 0.0
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(FloatScalar(self.0.inv()))
        }
    }
    fn conj(&self) -> Self {
        FloatScalar(self.0.conj())
    }
    fn to_complex(&self) -> Complex64 {
        self.0
    }
    fn magnitude(&self) -> f64 {
        self.0.norm()
    }
    fn negligible(&self, scale: f64) -> bool {
        self.0.norm() <= 1e-9 * scale.max(1.0)
    }
    fn invert_matrix(m: &[Vec<Self>]) -> Option<Vec<Vec<Self>>> {
        linalg::invert_float(m)
    }
    /// Unit-circle angles (multiplicative) or points of (0.3, 3) (additive)
    /// drawn from a golden-ratio sequence; keeps the float systems well scaled.
    fn sample_coordinate(multiplicative: bool, seq: usize, coord: usize, salt: usize) -> Self {
        let golden = 0.618_033_988_749_894_9_f64;
        let silver = std::f64::consts::SQRT_2 - 1.0;
        let frac = ((seq + 1) as f64 * golden + coord as f64 * silver + salt as f64 * 0.271_828).fract();
        if multiplicative {
            let theta = 0.15 + 2.8 * frac;
            FloatScalar::new(theta.cos(), theta.sin())
        } else {
            FloatScalar::real(0.3 + 2.7 * frac)
        }
    }
}
