use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{MathError, Result};

/// Double-precision complex number used by the quadrature and limit harnesses.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct FloatScalar(pub Complex64);

impl FloatScalar {
    /// Rejects NaN and infinite parts.
    pub fn try_new(re: f64, im: f64) -> Result<Self> {
        if re.is_finite() && im.is_finite() {
            Ok(FloatScalar(Complex64::new(re, im)))
        } else {
            Err(MathError::Domain(format!("non-finite float scalar ({re}, {im})")))
        }
    }

    pub fn new(re: f64, im: f64) -> Self {
        FloatScalar(Complex64::new(re, im))
    }

    pub fn real(re: f64) -> Self {
        FloatScalar(Complex64::new(re, 0.0))
    }

    pub fn re(&self) -> f64 {
        self.0.re
    }

    pub fn im(&self) -> f64 {
        self.0.im
    }

    pub fn abs(&self) -> f64 {
        self.0.norm()
    }

    pub fn is_finite(&self) -> bool {
        self.0.re.is_finite() && self.0.im.is_finite()
    }

    pub fn exp(&self) -> Self {
        FloatScalar(self.0.exp())
    }

    pub fn ln(&self) -> Self {
        FloatScalar(self.0.ln())
    }

    pub fn powf(&self, e: f64) -> Self {
        FloatScalar(self.0.powf(e))
    }
}

impl fmt::Debug for FloatScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i", self.0.re, self.0.im)
    }
}

impl fmt::Display for FloatScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.im == 0.0 {
            write!(f, "{:e}", self.0.re)
        } else {
            write!(f, "{:e}{:+e}*i", self.0.re, self.0.im)
        }
    }
}

impl From<Complex64> for FloatScalar {
    fn from(c: Complex64) -> Self {
        FloatScalar(c)
    }
}

macro_rules! float_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<FloatScalar> for FloatScalar {
            type Output = FloatScalar;
            fn $m(self, o: FloatScalar) -> FloatScalar {
                FloatScalar(self.0.$m(o.0))
            }
        }
        impl<'a> $tr<&'a FloatScalar> for FloatScalar {
            type Output = FloatScalar;
            fn $m(self, o: &FloatScalar) -> FloatScalar {
                FloatScalar(self.0.$m(o.0))
            }
        }
        impl<'a> $tr<&'a FloatScalar> for &'a FloatScalar {
            type Output = FloatScalar;
            fn $m(self, o: &FloatScalar) -> FloatScalar {
                FloatScalar(self.0.$m(o.0))
            }
        }
    };
}
float_ops!(Add, add);
float_ops!(Sub, sub);
float_ops!(Mul, mul);

impl Neg for FloatScalar {
    type Output = FloatScalar;
    fn neg(self) -> FloatScalar {
        FloatScalar(-self.0)
    }
}

impl Neg for &FloatScalar {
    type Output = FloatScalar;
    fn neg(self) -> FloatScalar {
        FloatScalar(-self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nan() {
        assert!(FloatScalar::try_new(f64::NAN, 0.0).is_err());
        assert!(FloatScalar::try_new(1.0, f64::INFINITY).is_err());
        assert!(FloatScalar::try_new(1.0, 2.0).is_ok());
    }
}
