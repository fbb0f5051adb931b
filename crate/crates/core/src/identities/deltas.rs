//! Closed-form ratios `d^(z + k) / d^(z)` of the four `d^` functions, read
//! off from their gamma / infinite-product definitions.

use crate::error::{MathError, Result};
use crate::exactnum::special::{pochhammer, qpochhammer};
use crate::exactnum::Scalar;
use crate::params::{Family, FamilyParams, ParamSet};
use crate::partitions::Partition;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

pub(crate) enum Closed<S> {
    Additive { nu: S, hat: Vec<S> },
    Aw { q: S, t: S, t0: S, radicand: S, h: [S; 4] },
}

/// A ratio value `x t^{half/2}`; `half` is always zero for additive families.
#[derive(Clone, Debug)]
pub(crate) struct WithHalfPower<S> {
    pub value: S,
    pub half: i64,
}

impl<S: Scalar> Closed<S> {
    pub(crate) fn new(params: &FamilyParams<S>) -> Result<Self> {
        Ok(match params.set() {
            ParamSet::AskeyWilson { q, t, tr } => {
                let radicand = params.aw_radicand().expect("AW");
                let rinv = radicand.inv().ok_or_else(|| MathError::VanishingFactor("t0 t1 t2 t3".into()))?;
                let h = [
                    S::one(),
                    tr[0].clone() * &tr[1] * &rinv,
                    tr[0].clone() * &tr[2] * &rinv,
                    tr[0].clone() * &tr[3] * &rinv,
                ];
                Closed::Aw { q: q.clone(), t: t.clone(), t0: tr[0].clone(), radicand, h }
            }
            _ => {
                let used = match params.family() {
                    Family::Wilson => 4,
                    Family::ContinuousHahn => 3,
                    _ => 2,
                };
                let mut hat = params.nu_hat().expect("additive");
                hat.truncate(used);
                Closed::Additive { nu: params.coupling().clone(), hat }
            }
        })
    }

    /// `d^_{v,+-}(z + k) / d^_{v,+-}(z)`; `x` is `z` (additive) or `q^z` (AW).
    pub(crate) fn v_ratio(&self, x: &S, k: usize, branch: Branch) -> Result<WithHalfPower<S>> {
        let one = S::one();
        let ki = k as i64;
        let (num, den, half) = match (self, branch) {
            (Closed::Additive { nu, .. }, Branch::Plus) => (pochhammer(&(nu.clone() + x), k), pochhammer(x, k), 0),
            (Closed::Additive { nu, .. }, Branch::Minus) => {
                (pochhammer(&(one.clone() - nu + x), k), pochhammer(&(x.clone() + &one), k), 0)
            }
            (Closed::Aw { q, t, .. }, Branch::Plus) => (qpochhammer(&(t.clone() * x), q, k), qpochhammer(x, q, k), -ki),
            (Closed::Aw { q, t, .. }, Branch::Minus) => {
                let tinv = t.inv().expect("t != 0");
                (qpochhammer(&(tinv * q * x), q, k), qpochhammer(&(q.clone() * x), q, k), ki)
            }
        };
        Ok(WithHalfPower { value: num.div_or_pole(&den, "").map_err(|_| MathError::VanishingFactor("d^_v".into()))?, half })
    }

    /// `d^_{w,+-}(z + k) / d^_{w,+-}(z)`; `x` is `z` (additive) or `c` with `q^z = c s` (AW).
    pub(crate) fn w_ratio(&self, x: &S, k: usize, branch: Branch) -> Result<S> {
        let one = S::one();
        let two_x = x.clone() + x;
        let (num, den) = match (self, branch) {
            (Closed::Additive { hat, .. }, Branch::Plus) => {
                (hat.iter().fold(one.clone(), |a, h| a * pochhammer(&(h.clone() + x), k)), pochhammer(&two_x, 2 * k))
            }
            (Closed::Additive { hat, .. }, Branch::Minus) => (
                hat.iter().fold(one.clone(), |a, h| a * pochhammer(&(one.clone() - h + x), k)),
                pochhammer(&(two_x + &one), 2 * k),
            ),
            (Closed::Aw { q, t0, radicand, h, .. }, Branch::Plus) => {
                let cs = x.clone() * radicand;
                let num = h.iter().fold(one.clone(), |a, hr| a * qpochhammer(&(hr.clone() * &cs), q, k));
                let den = qpochhammer(&(x.clone() * &cs), q, 2 * k) * t0.powi(k as i64).expect("t0^k");
                (num, den)
            }
            (Closed::Aw { q, t0, radicand, h, .. }, Branch::Minus) => {
                let qc = q.clone() * x;
                let num = h.iter().try_fold(one.clone(), |a, hr| {
                    Ok::<S, MathError>(a * qpochhammer(&qc.clone().div_or_pole(hr, "t^_r = 0")?, q, k))
                })?;
                let num = num * t0.powi(k as i64).expect("t0^k");
                (num, qpochhammer(&(qc * x * radicand), q, 2 * k))
            }
        };
        num.div_or_pole(&den, "").map_err(|_| MathError::VanishingFactor("d^_w".into()))
    }

    /// `Delta^_+-(rho + lambda) / Delta^_+-(rho)` in closed form.
    pub(crate) fn delta_ratio(&self, params: &FamilyParams<S>, lambda: &Partition, branch: Branch) -> Result<S> {
        let n = params.n();
        let l: Vec<usize> = lambda.parts().iter().map(|&x| x as usize).collect();
        let mut acc = S::one();
        let mut half = 0i64;
        match self {
            Closed::Additive { .. } => {
                let rho = params.rho().expect("additive");
                for j in 0..n {
                    for k in j + 1..n {
                        let a = self.v_ratio(&(rho[j].clone() + &rho[k]), l[j] + l[k], branch)?;
                        let b = self.v_ratio(&(rho[j].clone() - &rho[k]), l[j] - l[k], branch)?;
                        acc = acc * a.value * b.value;
                    }
                    acc = acc * self.w_ratio(&rho[j], l[j], branch)?;
                }
            }
            Closed::Aw { t, radicand, .. } => {
                let tp = |e: usize| t.powi(e as i64).expect("t^k");
                for j in 0..n {
                    for k in j + 1..n {
                        let a = self.v_ratio(&(radicand.clone() * tp(2 * n - 2 - j - k)), l[j] + l[k], branch)?;
                        let b = self.v_ratio(&tp(k - j), l[j] - l[k], branch)?;
                        half += a.half + b.half;
                        acc = acc * a.value * b.value;
                    }
                    acc = acc * self.w_ratio(&tp(n - 1 - j), l[j], branch)?;
                }
                debug_assert!(half % 2 == 0);
                acc = acc * t.powi(half / 2).ok_or_else(|| MathError::Pole("t = 0".into()))?;
            }
        }
        Ok(acc)
    }
}
