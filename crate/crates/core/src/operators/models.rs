//! Point actions of the four operator families.

use super::uv::{uv_coefficient, SignedCoord, UvModel};
use crate::error::{MathError, Result};
use crate::exactnum::Scalar;
use crate::params::{FamilyParams, ParamSet};
use crate::partitions::{Partition, SignedIndexSet};
use crate::sympoly::{basis_jets, basis_values, VariableKind};

/// Rationalized AW building blocks in the multiplicative variable `A`.
pub(crate) struct AwModel<S> {
    pub q: S,
    pub t: S,
    pub tr: [S; 4],
}

impl<S: Scalar> UvModel for AwModel<S> {
    type Value = S;
    type Arg = S;

    fn combine(&self, a: &S, b: &S) -> S {
        a.clone() * b
    }
    fn step(&self, a: &S, k: i64) -> S {
        a.clone() * self.q.powi(k).expect("q != 0")
    }
    fn v(&self, a: &S) -> Result<S> {
        (S::one() - self.t.clone() * a).div_or_pole(&(S::one() - a), "v: A = 1")
    }
    fn w(&self, a: &S) -> Result<S> {
        let num = self.tr.iter().fold(S::one(), |acc, tr| acc * (S::one() - tr.clone() * a));
        let a2 = a.clone() * a;
        let den = (S::one() - &a2) * (S::one() - self.q.clone() * &a2);
        num.div_or_pole(&den, "w: A^2 in {1, 1/q}")
    }
}

pub(crate) struct WilsonModel<S> {
    pub nu: S,
    pub nur: [S; 4],
}

impl<S: Scalar> UvModel for WilsonModel<S> {
    type Value = S;
    type Arg = S;

    fn combine(&self, a: &S, b: &S) -> S {
        a.clone() + b
    }
    fn step(&self, a: &S, k: i64) -> S {
        a.clone() + S::from_i64(k) * S::imag_unit()
    }
    fn v(&self, z: &S) -> Result<S> {
        (S::imag_unit() * &self.nu + z).div_or_pole(z, "v: z = 0")
    }
    fn w(&self, z: &S) -> Result<S> {
        let i = S::imag_unit();
        let num = self.nur.iter().fold(S::one(), |acc, nr| acc * (i.clone() * nr + z));
        let two_iz = S::from_i64(2) * &i * z;
        let den = two_iz.clone() * (two_iz - S::one());
        num.div_or_pole(&den, "w: 2iz in {0, 1}")
    }
}

/// `sum_{eps J} U V f(T_{eps J} x)` for the generic families, for every `m_mu` in `span`.
fn generic_action<M: UvModel<Arg = S, Value = S>, S: Scalar>(
    model: &M,
    kind: VariableKind,
    r: usize,
    span: &[Partition],
    xs: &[SignedCoord<S>],
    shift: impl Fn(&S, i8) -> S,
) -> Result<Vec<S>> {
    let n = xs.len();
    let mut acc = vec![S::zero(); span.len()];
    for eps in SignedIndexSet::all_up_to(n, r) {
        let c = uv_coefficient(model, xs, &eps, r)?;
        if c.is_zero() {
            continue;
        }
        let mut pt: Vec<S> = xs.iter().map(|(p, _)| p.clone()).collect();
        for &(j, e) in eps.entries() {
            pt[j] = shift(&pt[j], e);
        }
        let vals = basis_values(span, &kind.basis_coordinates(&pt)?);
        for (a, v) in acc.iter_mut().zip(vals) {
            *a = a.clone() + c.clone() * v;
        }
    }
    Ok(acc)
}

fn aw_action<S: Scalar>(q: &S, t: &S, tr: &[S; 4], r: usize, span: &[Partition], z: &[S]) -> Result<Vec<S>> {
    let model = AwModel { q: q.clone(), t: t.clone(), tr: tr.clone() };
    let xs: Vec<SignedCoord<S>> = z
        .iter()
        .map(|zj| Ok((zj.clone(), zj.inv().ok_or_else(|| MathError::Pole("z = 0".into()))?)))
        .collect::<Result<_>>()?;
    let qinv = q.inv().expect("q != 0");
    generic_action(&model, VariableKind::AwTrig, r, span, &xs, |zj, e| {
        if e > 0 {
            zj.clone() * q
        } else {
            zj.clone() * &qinv
        }
    })
}

fn wilson_action<S: Scalar>(nu: &S, nur: &[S; 4], r: usize, span: &[Partition], x: &[S]) -> Result<Vec<S>> {
    let model = WilsonModel { nu: nu.clone(), nur: nur.clone() };
    let xs: Vec<SignedCoord<S>> = x.iter().map(|xj| (xj.clone(), -xj.clone())).collect();
    let i = S::imag_unit();
    generic_action(&model, VariableKind::WEven, r, span, &xs, |xj, e| {
        if e > 0 {
            xj.clone() + &i
        } else {
            xj.clone() - &i
        }
    })
}

struct ChBlocks<'a, S> {
    nu: &'a S,
    plus: &'a [S; 2],
    minus: &'a [S; 2],
    x: &'a [S],
}

impl<S: Scalar> ChBlocks<'_, S> {
    fn v(&self, z: S) -> Result<S> {
        let iz = S::imag_unit() * z;
        Ok(S::one() + self.nu.clone().div_or_pole(&iz, "v: z = 0")?)
    }
    fn w_plus(&self, j: usize) -> S {
        let iz = S::imag_unit() * &self.x[j];
        (self.plus[0].clone() + &iz) * (self.plus[1].clone() + &iz)
    }
    fn w_minus(&self, j: usize) -> S {
        let iz = S::imag_unit() * &self.x[j];
        (self.minus[0].clone() - &iz) * (self.minus[1].clone() - &iz)
    }
    fn d(&self, a: usize, b: usize) -> S {
        self.x[a].clone() - &self.x[b]
    }

    /// Product over the signed set (`+` for `J_+`, `-` for `J_-`) against
    /// the rest `k`; `second` gives the argument of the second pair factor.
    fn block(&self, set: &[(usize, i8)], k: &[usize], second: impl Fn(usize, usize) -> S) -> Result<S> {
        let mut acc = S::one();
        for &(j, e) in set {
            acc = acc * if e > 0 { self.w_plus(j) } else { self.w_minus(j) };
            for &kk in k {
                acc = acc * if e > 0 { self.v(self.d(j, kk))? } else { self.v(self.d(kk, j))? };
            }
        }
        for &(j, _) in set.iter().filter(|(_, e)| *e > 0) {
            for &(jp, _) in set.iter().filter(|(_, e)| *e < 0) {
                acc = acc * self.v(self.d(j, jp))? * self.v(second(j, jp))?;
            }
        }
        Ok(acc)
    }
}

fn ch_action<S: Scalar>(
    nu: &S,
    plus: &[S; 2],
    minus: &[S; 2],
    r: usize,
    span: &[Partition],
    x: &[S],
) -> Result<Vec<S>> {
    let n = x.len();
    let blocks = ChBlocks { nu, plus, minus, x };
    let i = S::imag_unit();
    let mut acc = vec![S::zero(); span.len()];
    for eps in SignedIndexSet::all_up_to(n, r) {
        let k: Vec<usize> = (0..n).filter(|j| !eps.contains(*j)).collect();
        let p = r - eps.len();
        let mut u = S::zero();
        for l in super::uv::signed_subsets(&k, p) {
            let rest: Vec<usize> = k.iter().copied().filter(|a| !l.iter().any(|(b, _)| b == a)).collect();
            u = u + blocks.block(&l, &rest, |j, jp| blocks.d(jp, j) + &i)?;
        }
        if p % 2 == 1 {
            u = -u;
        }
        if u.is_zero() {
            continue;
        }
        let c = u * blocks.block(eps.entries(), &k, |j, jp| blocks.d(j, jp) - &i)?;
        let mut pt = x.to_vec();
        for &(j, e) in eps.entries() {
            pt[j] = if e > 0 { pt[j].clone() - &i } else { pt[j].clone() + &i };
        }
        let vals = basis_values(span, &pt);
        for (a, v) in acc.iter_mut().zip(vals) {
            *a = a.clone() + c.clone() * v;
        }
    }
    Ok(acc)
}

/// The alpha-free form of the second order Jacobi operator in `z_j`,
/// acting on `f(X)` with `X_j = z_j + 1/z_j`.
fn jacobi_action<S: Scalar>(nu: &S, nu0: &S, nu1: &S, span: &[Partition], z: &[S]) -> Result<Vec<S>> {
    let n = z.len();
    let one = S::one();
    let zinv: Vec<S> = z.iter().map(|c| c.inv().ok_or_else(|| MathError::Pole("z = 0".into()))).collect::<Result<_>>()?;
    let xs: Vec<S> = z.iter().zip(&zinv).map(|(a, b)| a.clone() + b).collect();
    let diff: Vec<S> = z.iter().zip(&zinv).map(|(a, b)| a.clone() - b).collect();
    // i cot(a/2) with z = e^{ia}
    let cot = |u: S| (u.clone() + &one).div_or_pole(&(u - &one), "coordinate collision");
    let mut b = Vec::with_capacity(n);
    for j in 0..n {
        let zj = &z[j];
        let mut bj = nu0.clone() * (zj.clone() + &one).div_or_pole(&(zj.clone() - &one), "z = 1")?
            + nu1.clone() * (zj.clone() - &one).div_or_pole(&(zj.clone() + &one), "z = -1")?;
        for k in 0..n {
            if k != j {
                bj = bj + nu.clone() * (cot(zj.clone() * &z[k])? + cot(zj.clone() * &zinv[k])?);
            }
        }
        b.push(bj);
    }
    let jets = basis_jets(span, &xs);
    Ok(jets
        .into_iter()
        .map(|jet| {
            (0..n).fold(S::zero(), |acc, j| {
                let first = xs[j].clone() + b[j].clone() * &diff[j];
                acc + diff[j].clone() * &diff[j] * &jet.d2[j] + first * &jet.d1[j]
            })
        })
        .collect())
}

/// `(D_r m_mu)(point)` for every `mu` in `span`.
pub(crate) fn act_on_basis<S: Scalar>(
    params: &FamilyParams<S>,
    r: usize,
    span: &[Partition],
    point: &[S],
) -> Result<Vec<S>> {
    match params.set() {
        ParamSet::AskeyWilson { q, t, tr } => aw_action(q, t, tr, r, span, point),
        ParamSet::Wilson { nu, nur } => wilson_action(nu, nur, r, span, point),
        ParamSet::ContinuousHahn { nu, plus, minus } => ch_action(nu, plus, minus, r, span, point),
        ParamSet::Jacobi { nu, nu0, nu1 } => {
            if r != 1 {
                return Err(MathError::Unsupported("Jacobi operators exist only for r = 1".into()));
            }
            jacobi_action(nu, nu0, nu1, span, point)
        }
    }
}
