//! Dense square inverses: fraction-free (Bareiss) elimination over the
//! Gaussian integers for exact input, partial pivoting for floats.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exactnum::{common_denominator, ExactScalar, FloatScalar};

#[derive(Clone, Debug, PartialEq)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn from_scaled(x: &ExactScalar, scale: &BigInt) -> GaussInt {
        let part = |r: &BigRational| -> BigInt {
            let v = r * BigRational::from_integer(scale.clone());
            debug_assert!(v.is_integer());
            v.to_integer()
        };
        GaussInt { re: part(x.re()), im: part(x.im()) }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &GaussInt) -> GaussInt {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussInt { re: &self.re * &o.re, im: BigInt::zero() };
        }
        GaussInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn sub(&self, o: &GaussInt) -> GaussInt {
        GaussInt { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    /// Division known to be exact (Bareiss invariant).
    fn div_exact(&self, d: &GaussInt) -> GaussInt {
        if d.im.is_zero() {
            let (qr, rr) = self.re.div_rem(&d.re);
            let (qi, ri) = self.im.div_rem(&d.re);
            debug_assert!(rr.is_zero() && ri.is_zero(), "inexact Bareiss division");
            return GaussInt { re: qr, im: qi };
        }
        let norm = &d.re * &d.re + &d.im * &d.im;
        let num_re = &self.re * &d.re + &self.im * &d.im;
        let num_im = &self.im * &d.re - &self.re * &d.im;
        let (qr, rr) = num_re.div_rem(&norm);
        let (qi, ri) = num_im.div_rem(&norm);
        debug_assert!(rr.is_zero() && ri.is_zero(), "inexact Bareiss division");
        GaussInt { re: qr, im: qi }
    }

    fn to_exact(&self) -> ExactScalar {
        ExactScalar::new(BigRational::from_integer(self.re.clone()), BigRational::from_integer(self.im.clone()))
    }
}

/// Exact inverse, or `None` if the matrix is singular.
pub(crate) fn invert_exact(m: &[Vec<ExactScalar>]) -> Option<Vec<Vec<ExactScalar>>> {
    let n = m.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut a: Vec<Vec<GaussInt>> = Vec::with_capacity(n);
    let mut b: Vec<Vec<GaussInt>> = Vec::with_capacity(n);
    for (i, row) in m.iter().enumerate() {
        assert_eq!(row.len(), n, "matrix must be square");
        let l = common_denominator(row.iter());
        a.push(row.iter().map(|x| GaussInt::from_scaled(x, &l)).collect());
        let mut brow = vec![GaussInt { re: BigInt::zero(), im: BigInt::zero() }; n];
        brow[i] = GaussInt { re: l, im: BigInt::zero() };
        b.push(brow);
    }
    let mut prev = GaussInt { re: BigInt::one(), im: BigInt::zero() };
    for k in 0..n {
        let p = (k..n).find(|&p| !a[p][k].is_zero())?;
        a.swap(k, p);
        b.swap(k, p);
        for i in k + 1..n {
            let aik = a[i][k].clone();
            for j in k + 1..n {
                let v = a[k][k].mul(&a[i][j]).sub(&aik.mul(&a[k][j]));
                a[i][j] = v.div_exact(&prev);
            }
            for c in 0..n {
                let v = a[k][k].mul(&b[i][c]).sub(&aik.mul(&b[k][c]));
                b[i][c] = v.div_exact(&prev);
            }
            a[i][k] = GaussInt { re: BigInt::zero(), im: BigInt::zero() };
        }
        prev = a[k][k].clone();
    }
    let mut x = vec![vec![ExactScalar::integer(0); n]; n];
    for i in (0..n).rev() {
        let inv_pivot = a[i][i].to_exact().inv()?;
        for c in 0..n {
            let mut acc = b[i][c].to_exact();
            for j in i + 1..n {
                if !a[i][j].is_zero() {
                    acc = acc - a[i][j].to_exact() * &x[j][c];
                }
            }
            x[i][c] = acc * &inv_pivot;
        }
    }
    Some(x)
}

/// Gauss-Jordan with partial pivoting; `None` if a pivot falls below
/// `1e-13` of the largest entry.
pub(crate) fn invert_float(m: &[Vec<FloatScalar>]) -> Option<Vec<Vec<FloatScalar>>> {
    let n = m.len();
    let scale = m.iter().flatten().map(|x| x.abs()).fold(0.0, f64::max);
    if n == 0 {
        return Some(Vec::new());
    }
    if scale == 0.0 {
        return None;
    }
    let mut a: Vec<Vec<FloatScalar>> = m.to_vec();
    let mut inv: Vec<Vec<FloatScalar>> =
        (0..n).map(|i| (0..n).map(|j| FloatScalar::real(if i == j { 1.0 } else { 0.0 })).collect()).collect();
    for k in 0..n {
        let p = (k..n).max_by(|&x, &y| a[x][k].abs().total_cmp(&a[y][k].abs()))?;
        if a[p][k].abs() < 1e-13 * scale {
            return None;
        }
        a.swap(k, p);
        inv.swap(k, p);
        let piv = FloatScalar(a[k][k].0.inv());
        for j in 0..n {
            a[k][j] = a[k][j] * piv;
            inv[k][j] = inv[k][j] * piv;
        }
        for i in 0..n {
            if i == k {
                continue;
            }
            let f = a[i][k];
            if f.abs() == 0.0 {
                continue;
            }
            for j in 0..n {
                a[i][j] = a[i][j] - f * a[k][j];
                inv[i][j] = inv[i][j] - f * inv[k][j];
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(s: &str) -> ExactScalar {
        s.parse().unwrap()
    }

    fn mat_mul(a: &[Vec<ExactScalar>], b: &[Vec<ExactScalar>]) -> Vec<Vec<ExactScalar>> {
        let n = a.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(ExactScalar::integer(0), |acc, k| acc + &a[i][k] * &b[k][j]))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn exact_inverse_with_pivoting_and_complex_entries() {
        let m = vec![
            vec![ex("0"), ex("1/2"), ex("3")],
            vec![ex("2+1*i"), ex("-1/3"), ex("0")],
            vec![ex("1"), ex("1"), ex("1/7*i")],
        ];
        let inv = invert_exact(&m).unwrap();
        let id = mat_mul(&m, &inv);
        for (i, row) in id.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(*v, ExactScalar::integer((i == j) as i64));
            }
        }
    }

    #[test]
    fn exact_singular_detected() {
        let m = vec![vec![ex("1"), ex("2")], vec![ex("1/2"), ex("1")]];
        assert!(invert_exact(&m).is_none());
    }

    #[test]
    fn float_inverse() {
        let m = vec![
            vec![FloatScalar::real(0.0), FloatScalar::real(2.0)],
            vec![FloatScalar::new(1.0, 1.0), FloatScalar::real(1.0)],
        ];
        let inv = invert_float(&m).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let v = (0..2).fold(FloatScalar::real(0.0), |acc, k| acc + m[i][k] * inv[k][j]);
                assert!((v.0 - num_complex::Complex64::new((i == j) as u8 as f64, 0.0)).norm() < 1e-14);
            }
        }
        assert!(invert_float(&[vec![FloatScalar::real(1.0), FloatScalar::real(1.0)], vec![FloatScalar::real(1.0), FloatScalar::real(1.0)]]).is_none());
    }
}
