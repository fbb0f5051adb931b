use std::f64::consts::PI;

use num_complex::Complex64;

use super::{FloatScalar, Scalar};
use crate::error::{MathError, Result};

/// Rising factorial `(a)_k = a(a+1)...(a+k-1)`.
pub fn pochhammer<S: Scalar>(a: &S, k: usize) -> S {
    let mut acc = S::one();
    let mut term = a.clone();
    for _ in 0..k {
        acc = acc * &term;
        term = term + &S::one();
    }
    acc
}

/// q-shifted factorial `(a;q)_k = (1-a)(1-aq)...(1-aq^(k-1))`.
pub fn qpochhammer<S: Scalar>(a: &S, q: &S, k: usize) -> S {
    let mut acc = S::one();
    let mut term = a.clone();
    for _ in 0..k {
        acc = acc * (S::one() - &term);
        term = term * q;
    }
    acc
}

pub fn pochhammer_exact(a: &super::ExactScalar, k: usize) -> super::ExactScalar {
    pochhammer(a, k)
}

pub fn qpochhammer_exact(a: &super::ExactScalar, q: &super::ExactScalar, k: usize) -> super::ExactScalar {
    qpochhammer(a, q, k)
}

/// Truncated infinite product `(a;q)_inf`, stopping once `|a q^M| < tol`.
pub fn qpochhammer_inf_float(a: FloatScalar, q: FloatScalar, tol: f64) -> Result<FloatScalar> {
    if q.abs() >= 1.0 {
        return Err(MathError::Domain(format!("|q| = {} >= 1 in infinite q-product", q.abs())));
    }
    if !(tol > 0.0) {
        return Err(MathError::Domain("tolerance must be positive".into()));
    }
    let mut acc = Complex64::new(1.0, 0.0);
    let mut term = a.0;
    while term.norm() >= tol {
        acc *= Complex64::new(1.0, 0.0) - term;
        term *= q.0;
    }
    Ok(FloatScalar(acc))
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// `ln Gamma(z)` on the principal branch for `Re z >= 1/2` (Lanczos, g = 7).
fn ln_gamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (k, c) in LANCZOS.iter().enumerate().skip(1) {
        x += *c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// A logarithm of `Gamma(z)`; reflection handles `Re z < 1/2`.
///
/// Only `exp` of the result is meaningful (the branch is not continuous
/// across the reflection line), which is all the weight functions need.
pub fn ln_gamma_float(z: FloatScalar) -> Result<FloatScalar> {
    let z = z.0;
    if is_nonpositive_integer(z) {
        return Err(MathError::Pole(format!("Gamma at nonpositive integer {}", z.re)));
    }
    if z.re >= 0.5 {
        return Ok(FloatScalar(ln_gamma_right(z)));
    }
    // Gamma(z) = pi / (sin(pi z) Gamma(1-z))
    let s = (Complex64::new(PI, 0.0) * z).sin();
    Ok(FloatScalar(Complex64::new(PI.ln(), 0.0) - s.ln() - ln_gamma_right(1.0 - z)))
}

/// Complex gamma function.
pub fn gamma_float(z: FloatScalar) -> Result<FloatScalar> {
    let zc = z.0;
    if is_nonpositive_integer(zc) {
        return Err(MathError::Pole(format!("Gamma at nonpositive integer {}", zc.re)));
    }
    if zc.re >= 0.5 {
        return Ok(FloatScalar(ln_gamma_right(zc).exp()));
    }
    let s = (Complex64::new(PI, 0.0) * zc).sin();
    Ok(FloatScalar(PI / (s * ln_gamma_right(1.0 - zc).exp())))
}

/// `1 / (Gamma(iy) Gamma(-iy)) = y sinh(pi y) / pi`, entire in `y`.
pub fn recip_gamma_imag_pair(y: f64) -> f64 {
    y * (PI * y).sinh() / PI
}

/// Logarithm of [`recip_gamma_imag_pair`]; `-inf` at `y = 0`.
pub fn ln_recip_gamma_imag_pair(y: f64) -> f64 {
    let a = y.abs();
    if a == 0.0 {
        return f64::NEG_INFINITY;
    }
    if a > 5.0 {
        // sinh(pi a) = e^{pi a}(1 - e^{-2 pi a})/2
        a.ln() + PI * a + (-(-2.0 * PI * a).exp()).ln_1p() - 2f64.ln() - PI.ln()
    } else {
        (a * (PI * a).sinh() / PI).ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ExactScalar;

    fn ex(s: &str) -> ExactScalar {
        s.parse().unwrap()
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer_exact(&ex("1"), 0), ex("1"));
        assert_eq!(pochhammer_exact(&ex("1"), 4), ex("24"));
        assert_eq!(pochhammer_exact(&ex("-2"), 4), ex("0"));
    }

    #[test]
    fn qpochhammer_examples() {
        assert_eq!(qpochhammer_exact(&ex("7/3"), &ex("5"), 0), ex("1"));
        assert_eq!(qpochhammer_exact(&ex("1"), &ex("1/2"), 3), ex("0"));
        assert_eq!(qpochhammer_exact(&ex("1/2"), &ex("1/2"), 2), ex("3/8"));
    }

    #[test]
    fn qpochhammer_inf_examples() {
        let q = FloatScalar::real(0.5);
        assert_eq!(qpochhammer_inf_float(FloatScalar::real(0.0), q, 1e-17).unwrap().re(), 1.0);
        assert_eq!(qpochhammer_inf_float(FloatScalar::real(1.0), q, 1e-17).unwrap().re(), 0.0);
        let v = qpochhammer_inf_float(FloatScalar::real(0.5), q, 1e-17).unwrap().re();
        assert!((v - 0.288_788_095_086_602_4).abs() < 1e-12, "{v}");
        assert!(qpochhammer_inf_float(FloatScalar::real(0.5), FloatScalar::real(1.0), 1e-17).is_err());
    }

    #[test]
    fn gamma_examples() {
        let g = |x: f64| gamma_float(FloatScalar::real(x)).unwrap().re();
        assert!((g(1.0) - 1.0).abs() < 1e-13);
        assert!((g(0.5) - PI.sqrt()).abs() < 1e-13);
        assert!((g(5.0) - 24.0).abs() < 1e-11);
        assert!((g(-0.5) + 2.0 * PI.sqrt()).abs() < 1e-12);
        assert!(gamma_float(FloatScalar::real(-3.0)).is_err());
        assert!(gamma_float(FloatScalar::real(0.0)).is_err());
    }

    #[test]
    fn reciprocal_gamma_pair_matches_gamma() {
        for &y in &[0.3, 1.0, 2.5, 7.0] {
            let g1 = gamma_float(FloatScalar::new(0.0, y)).unwrap().0;
            let g2 = gamma_float(FloatScalar::new(0.0, -y)).unwrap().0;
            let direct = 1.0 / (g1 * g2).re;
            assert!((recip_gamma_imag_pair(y) / direct - 1.0).abs() < 1e-11);
            assert!((ln_recip_gamma_imag_pair(y) - direct.ln()).abs() < 1e-10);
        }
    }
}
