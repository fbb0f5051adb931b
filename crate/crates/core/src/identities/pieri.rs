//! Recurrence coefficient models: `v^`, `w^` evaluated on `rho + lambda`.
//!
//! For AW the coordinates `q^{rho_j + m}` carry the square root
//! `s = (t0 t1 t2 t3 / q)^{1/2}`; they are kept as `c s^e` and only the
//! combinations that are rational are ever evaluated.

use crate::operators::uv::{uv_coefficient, v_coefficient, SignedCoord, UvModel};
use crate::error::{MathError, Result};
use crate::exactnum::Scalar;
use crate::params::{Family, FamilyParams, ParamSet};
use crate::partitions::{Partition, SignedIndexSet};

/// `c s^e` with `s^2` known.
#[derive(Clone, Debug)]
pub(crate) struct SqrtMono<S> {
    c: S,
    e: i64,
}

pub(crate) trait PieriModel: UvModel {
    /// `rho_j + m` and its negative.
    fn coord(&self, j: usize, m: i64) -> SignedCoord<Self::Arg>;
    /// Constant carried by each pair of `v^` factors.
    fn v_pair_constant(&self) -> Self::Value;
    /// Constant carried by each `w^` factor.
    fn w_constant(&self) -> Self::Value;
}

pub(crate) struct AdditivePieri<S> {
    nu: S,
    hat: Vec<S>,
    rho: Vec<S>,
}

impl<S: Scalar> UvModel for AdditivePieri<S> {
    type Value = S;
    type Arg = S;

    fn combine(&self, a: &S, b: &S) -> S {
        a.clone() + b
    }
    fn step(&self, a: &S, k: i64) -> S {
        a.clone() + S::from_i64(k)
    }
    fn v(&self, z: &S) -> Result<S> {
        (self.nu.clone() + z).div_or_pole(z, "v^: z = 0")
    }
    fn w(&self, z: &S) -> Result<S> {
        let num = self.hat.iter().fold(S::one(), |acc, h| acc * (h.clone() + z));
        let two_z = S::from_i64(2) * z;
        num.div_or_pole(&(two_z.clone() * (two_z + S::one())), "w^: 2z in {0, -1}")
    }
}

impl<S: Scalar> PieriModel for AdditivePieri<S> {
    fn coord(&self, j: usize, m: i64) -> SignedCoord<S> {
        let x = self.rho[j].clone() + S::from_i64(m);
        (x.clone(), -x)
    }
    fn v_pair_constant(&self) -> S {
        S::one()
    }
    fn w_constant(&self) -> S {
        S::one()
    }
}

pub(crate) struct AwPieri<S> {
    n: usize,
    q: S,
    t: S,
    t0: S,
    /// `s^2`
    radicand: S,
    /// `t^_r = h_r s`
    h: [S; 4],
}

impl<S: Scalar> AwPieri<S> {
    fn rational(&self, a: &SqrtMono<S>, what: &str) -> Result<S> {
        if a.e % 2 != 0 {
            return Err(MathError::Unsupported(format!("{what}: argument not rational in the parameters")));
        }
        let pow = self.radicand.powi(a.e / 2).ok_or_else(|| MathError::Pole("t0 t1 t2 t3 = 0".into()))?;
        Ok(a.c.clone() * pow)
    }
}

impl<S: Scalar> UvModel for AwPieri<S> {
    type Value = S;
    type Arg = SqrtMono<S>;

    fn combine(&self, a: &SqrtMono<S>, b: &SqrtMono<S>) -> SqrtMono<S> {
        SqrtMono { c: a.c.clone() * &b.c, e: a.e + b.e }
    }
    fn step(&self, a: &SqrtMono<S>, k: i64) -> SqrtMono<S> {
        SqrtMono { c: a.c.clone() * self.q.powi(k).expect("q != 0"), e: a.e }
    }
    fn v(&self, a: &SqrtMono<S>) -> Result<S> {
        let x = self.rational(a, "v^")?;
        (S::one() - self.t.clone() * &x).div_or_pole(&(S::one() - x), "v^: q^z = 1")
    }
    fn w(&self, a: &SqrtMono<S>) -> Result<S> {
        let shifted = SqrtMono { c: a.c.clone(), e: a.e + 1 };
        let hx = self.rational(&shifted, "w^")?;
        let num = self.h.iter().fold(S::one(), |acc, h| acc * (S::one() - h.clone() * &hx));
        let sq = self.rational(&SqrtMono { c: a.c.clone() * &a.c, e: 2 * a.e }, "w^")?;
        num.div_or_pole(&((S::one() - &sq) * (S::one() - self.q.clone() * &sq)), "w^: q^{2z} in {1, 1/q}")
    }
}

impl<S: Scalar> PieriModel for AwPieri<S> {
    fn coord(&self, j: usize, m: i64) -> SignedCoord<SqrtMono<S>> {
        let c = self.t.powi((self.n - 1 - j) as i64).expect("t^k") * self.q.powi(m).expect("q != 0");
        let inv = c.inv().expect("t != 0 and q != 0");
        (SqrtMono { c, e: 1 }, SqrtMono { c: inv, e: -1 })
    }
    fn v_pair_constant(&self) -> S {
        self.t.inv().expect("t != 0")
    }
    fn w_constant(&self) -> S {
        self.t0.inv().expect("t0 != 0")
    }
}

/// The recurrence model of one parameter set.
pub(crate) enum AnyPieri<S> {
    Additive(AdditivePieri<S>),
    Aw(AwPieri<S>),
}

macro_rules! dispatch {
    ($self:expr, $m:ident => $body:expr) => {
        match $self {
            AnyPieri::Additive($m) => $body,
            AnyPieri::Aw($m) => $body,
        }
    };
}

impl<S: Scalar> AnyPieri<S> {
    pub(crate) fn new(params: &FamilyParams<S>) -> Result<Self> {
        match params.set() {
            ParamSet::AskeyWilson { q, t, tr } => {
                if t.is_zero() || tr.iter().any(|x| x.is_zero()) {
                    return Err(MathError::VanishingFactor("t and t0..t3 must be nonzero".into()));
                }
                let radicand = params.aw_radicand().expect("AW");
                let rinv = radicand.inv().expect("nonzero parameters");
                let h = [
                    S::one(),
                    tr[0].clone() * &tr[1] * &rinv,
                    tr[0].clone() * &tr[2] * &rinv,
                    tr[0].clone() * &tr[3] * &rinv,
                ];
                Ok(AnyPieri::Aw(AwPieri {
                    n: params.n(),
                    q: q.clone(),
                    t: t.clone(),
                    t0: tr[0].clone(),
                    radicand,
                    h,
                }))
            }
            _ => {
                let used = match params.family() {
                    Family::Wilson => 4,
                    Family::ContinuousHahn => 3,
                    _ => 2,
                };
                let mut hat = params.nu_hat().expect("additive family");
                hat.truncate(used);
                Ok(AnyPieri::Additive(AdditivePieri {
                    nu: params.coupling().clone(),
                    hat,
                    rho: params.rho().expect("additive family"),
                }))
            }
        }
    }

    /// `U^_{J^c, r-|J|}(rho + lambda) V^_{eps J, J^c}(rho + lambda)`.
    pub(crate) fn coefficient(&self, lambda: &Partition, eps: &SignedIndexSet, r: usize) -> Result<S> {
        dispatch!(self, m => coefficient(m, lambda, eps, r))
    }

    /// `V^_{{1..r},{r+1..n}}` at `rho + lambda`, or at `-rho - lambda - omega_r` when `reflected`.
    pub(crate) fn top_block(&self, lambda: &Partition, r: usize, reflected: bool) -> Result<S> {
        dispatch!(self, m => top_block(m, lambda, r, reflected))
    }

    /// `Delta^_+(rho + lambda) / Delta^_+(rho)` through the difference equations.
    #[cfg(test)]
    pub(crate) fn delta_plus(&self, lambda: &Partition) -> Result<S> {
        dispatch!(self, m => telescope(m, lambda, false))
    }

    /// `Delta^_-(rho + lambda) / Delta^_-(rho)` through the difference equations.
    #[cfg(test)]
    pub(crate) fn delta_minus(&self, lambda: &Partition) -> Result<S> {
        dispatch!(self, m => telescope(m, lambda, true))
    }

    /// `v^` at `eps_j (rho_j + m_j) + eps_k (rho_k + m_k) + step`.
    pub(crate) fn v_at(&self, j: (usize, i64, i8), k: (usize, i64, i8), step: i64) -> Result<S> {
        dispatch!(self, m => {
            let a = pick(&m.coord(j.0, j.1), j.2);
            let b = pick(&m.coord(k.0, k.1), k.2);
            m.v(&m.step(&m.combine(&a, &b), step))
        })
    }

    /// `w^` at `eps (rho_j + m) + step`.
    pub(crate) fn w_at(&self, j: usize, m_j: i64, eps: i8, step: i64) -> Result<S> {
        dispatch!(self, m => m.w(&m.step(&pick(&m.coord(j, m_j), eps), step)))
    }

    /// The constants dropped by `v_at` (per pair) and `w_at`.
    pub(crate) fn constants(&self) -> (S, S) {
        dispatch!(self, m => (m.v_pair_constant(), m.w_constant()))
    }
}

fn pick<A: Clone>(c: &SignedCoord<A>, eps: i8) -> A {
    if eps > 0 {
        c.0.clone()
    } else {
        c.1.clone()
    }
}

fn coords<M: PieriModel>(m: &M, lambda: &Partition) -> Vec<SignedCoord<M::Arg>> {
    lambda.parts().iter().enumerate().map(|(j, &l)| m.coord(j, l as i64)).collect()
}

/// The constants of `r` `w^` factors and `r(2n - r - 1)` `v^` factors.
fn block_constant<M: PieriModel>(m: &M, n: usize, r: usize) -> M::Value {
    let pairs = r * (2 * n - r - 1) / 2;
    let vp = m.v_pair_constant().powi(pairs as i64).expect("nonzero");
    vp * m.w_constant().powi(r as i64).expect("nonzero")
}

fn coefficient<M: PieriModel>(m: &M, lambda: &Partition, eps: &SignedIndexSet, r: usize) -> Result<M::Value> {
    let n = lambda.len();
    if r == 0 || r > n {
        return Err(MathError::DimensionMismatch { expected: n, found: r });
    }
    let c = uv_coefficient(m, &coords(m, lambda), eps, r)?;
    Ok(c * block_constant(m, n, r))
}

fn top_block<M: PieriModel>(m: &M, lambda: &Partition, r: usize, reflected: bool) -> Result<M::Value> {
    let n = lambda.len();
    let omega = Partition::omega(n, r);
    let xs: Vec<SignedCoord<M::Arg>> = if reflected {
        coords(m, &lambda.plus(&omega)).into_iter().map(|(a, b)| (b, a)).collect()
    } else {
        coords(m, lambda)
    };
    let top = SignedIndexSet::new((0..r).map(|j| (j, 1)).collect())?;
    let rest: Vec<usize> = (r..n).collect();
    Ok(v_coefficient(m, &xs, &top, &rest)? * block_constant(m, n, r))
}

#[cfg(test)]
fn telescope<M: PieriModel>(m: &M, lambda: &Partition, minus: bool) -> Result<M::Value> {
    let n = lambda.len();
    let l: Vec<i64> = lambda.parts().iter().map(|&x| x as i64).collect();
    let zero = |j: usize| m.coord(j, 0);
    // z + k for the + functions, -z - k - 1 for the - functions
    let arg = |base_plus: M::Arg, base_minus: M::Arg, k: i64| {
        if minus {
            m.step(&base_minus, -k - 1)
        } else {
            m.step(&base_plus, k)
        }
    };
    let mut acc = M::Value::one();
    let mut pairs = 0i64;
    for j in 0..n {
        let (pj, mj) = zero(j);
        for k in j + 1..n {
            let (pk, mk) = zero(k);
            for s in 0..l[j] + l[k] {
                acc = acc * m.v(&arg(m.combine(&pj, &pk), m.combine(&mj, &mk), s))?;
            }
            for s in 0..l[j] - l[k] {
                acc = acc * m.v(&arg(m.combine(&pj, &mk), m.combine(&mj, &pk), s))?;
            }
            pairs += l[j];
        }
        for s in 0..l[j] {
            acc = acc * m.w(&arg(pj.clone(), mj.clone(), s))?;
        }
    }
    let total: i64 = l.iter().sum();
    let constant = m.v_pair_constant().powi(pairs).expect("nonzero") * m.w_constant().powi(total).expect("nonzero");
    Ok(acc * constant)
}
