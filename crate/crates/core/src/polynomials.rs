//! Monic polynomials `p_lambda` from the triangular eigenproblem of `D_1`,
//! their renormalization constants `c_lambda`, and the one-variable
//! hypergeometric reference polynomials.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{MathError, Result};
use crate::exactnum::special::{pochhammer, qpochhammer};
use crate::exactnum::{ExactScalar, Scalar};
use crate::operators::{DifferenceOperator, OperatorMatrix};
use crate::params::{Family, FamilyParams, ParamSet};
use crate::partitions::{ideal, Partition};
use crate::sympoly::SymPoly;

/// The `D_1` matrix over all partitions up to a size, from which every
/// monic polynomial of that size or smaller is back-substituted.
pub struct MonicBasis<S = ExactScalar> {
    params: FamilyParams<S>,
    matrix: OperatorMatrix<S>,
    eigen: BTreeMap<Partition, S>,
}

impl<S: Scalar> MonicBasis<S> {
    pub fn new(params: &FamilyParams<S>, max_size: u32) -> Result<Self> {
        let op = DifferenceOperator::new(params, 1)?;
        let matrix = op.matrix(max_size)?;
        let eigen = matrix.span().iter().map(|mu| Ok((mu.clone(), op.eigenvalue(mu)?))).collect::<Result<_>>()?;
        Ok(MonicBasis { params: params.clone(), matrix, eigen })
    }

    pub fn params(&self) -> &FamilyParams<S> {
        &self.params
    }

    pub fn matrix(&self) -> &OperatorMatrix<S> {
        &self.matrix
    }

    /// `p_lambda`: solves `(E_lambda - E_mu) c_mu = sum_{mu < nu <= lambda} [D]_{nu,mu} c_nu`
    /// from the top of the ideal down.
    pub fn monic(&self, lambda: &Partition) -> Result<SymPoly<S>> {
        if !self.matrix.contains(lambda) {
            return Err(MathError::InvalidPartition(format!("{lambda} is outside the prepared span")));
        }
        let below = ideal(lambda);
        let e_lambda = &self.eigen[lambda];
        let mut solved: Vec<(Partition, S)> = vec![(lambda.clone(), S::one())];
        for mu in below.iter().rev().skip(1) {
            let rhs = solved.iter().fold(S::zero(), |acc, (nu, c)| acc + c.clone() * self.matrix.entry(nu, mu));
            let gap = e_lambda.clone() - &self.eigen[mu];
            let scale = e_lambda.magnitude().max(self.eigen[mu].magnitude()).max(1.0);
            if gap.negligible(scale) {
                return Err(MathError::EigenvalueCollision { lambda: lambda.to_string(), mu: mu.to_string() });
            }
            let c = rhs.div_or_pole(&gap, "eigenvalue gap")?;
            solved.push((mu.clone(), c));
        }
        SymPoly::from_terms(self.params.kind(), self.params.n(), solved)
    }
}

/// `p_lambda` in any scalar type.
pub fn monic_polynomial<S: Scalar>(params: &FamilyParams<S>, lambda: &Partition) -> Result<SymPoly<S>> {
    MonicBasis::new(params, lambda.size())?.monic(lambda)
}

/// A monic polynomial together with its renormalization constant.
#[derive(Clone, Debug, Serialize)]
pub struct OrthoPoly {
    pub family: Family,
    pub params: FamilyParams,
    pub lambda: Partition,
    pub monic: SymPoly<ExactScalar>,
    pub cnorm: ExactScalar,
}

impl OrthoPoly {
    /// `P_lambda = c_lambda p_lambda`.
    pub fn renormalized(&self) -> SymPoly<ExactScalar> {
        self.monic.scale(&self.cnorm)
    }
}

pub fn build_monic(params: &FamilyParams, lambda: &Partition) -> Result<OrthoPoly> {
    check_length(params, lambda)?;
    let monic = monic_polynomial(params, lambda)?;
    let cnorm = renorm_constant(params, lambda)?;
    Ok(OrthoPoly { family: params.family(), params: params.clone(), lambda: lambda.clone(), monic, cnorm })
}

pub fn renormalized(params: &FamilyParams, lambda: &Partition) -> Result<SymPoly<ExactScalar>> {
    Ok(build_monic(params, lambda)?.renormalized())
}

fn check_length<S: Scalar>(params: &FamilyParams<S>, lambda: &Partition) -> Result<()> {
    if lambda.len() != params.n() {
        return Err(MathError::DimensionMismatch { expected: params.n(), found: lambda.len() });
    }
    Ok(())
}

/// Running product of `num/den` factors that names the first vanishing denominator.
struct RatioProduct<S> {
    num: S,
    den: S,
}

impl<S: Scalar> RatioProduct<S> {
    fn new() -> Self {
        RatioProduct { num: S::one(), den: S::one() }
    }

    fn times(&mut self, num: S, den: S, what: impl FnOnce() -> String) -> Result<()> {
        if den.is_zero() {
            return Err(MathError::VanishingFactor(what()));
        }
        self.num = self.num.clone() * num;
        self.den = self.den.clone() * den;
        Ok(())
    }

    fn value(self) -> S {
        self.num.div_or_pole(&self.den, "renormalization").expect("denominators checked")
    }
}

/// `c_lambda`, the constant with `P_lambda = c_lambda p_lambda`, from the
/// finite Pochhammer ratio forms.
pub fn renorm_constant<S: Scalar>(params: &FamilyParams<S>, lambda: &Partition) -> Result<S> {
    check_length(params, lambda)?;
    let n = params.n();
    let l: Vec<usize> = lambda.parts().iter().map(|&x| x as usize).collect();
    let mut acc = RatioProduct::new();
    match params.set() {
        ParamSet::AskeyWilson { q, t, tr } => {
            let s = params.aw_radicand().expect("AW");
            let tp = |e: usize| t.powi(e as i64).expect("nonnegative power");
            let qp = |a: &S, k: usize| qpochhammer(a, q, k);
            for j in 0..n {
                for k in j + 1..n {
                    let sum = s.clone() * tp(2 * n - 2 - j - k);
                    let ratio = tp(k - j);
                    acc.times(qp(&sum, l[j] + l[k]), qp(&(t.clone() * &sum), l[j] + l[k]), || {
                        format!("(t tau_{} tau_{}; q)", j + 1, k + 1)
                    })?;
                    acc.times(qp(&ratio, l[j] - l[k]), qp(&(t.clone() * &ratio), l[j] - l[k]), || {
                        format!("(t tau_{} / tau_{}; q)", j + 1, k + 1)
                    })?;
                }
            }
            for j in 0..n {
                let sq = s.clone() * tp(2 * (n - 1 - j));
                let mut den = qp(&(s.clone() * tp(n - 1 - j)), l[j]);
                for r in 1..4 {
                    den = den * qp(&(tr[0].clone() * &tr[r] * tp(n - 1 - j)), l[j]);
                }
                acc.times(qp(&sq, 2 * l[j]), den, || format!("(t^_r tau_{}; q)", j + 1))?;
                let c = (tr[0].clone() * tp(n - 1 - j)).powi(l[j] as i64).expect("nonnegative power");
                acc.times(c, S::one(), String::new)?;
            }
        }
        _ => {
            let rho = params.rho().expect("additive family");
            let hat = params.nu_hat().expect("additive family");
            let nu = params.coupling().clone();
            let (prefactor, used) = match params.family() {
                Family::Wilson => (-S::one(), 4),
                Family::ContinuousHahn => (-S::imag_unit(), 3),
                Family::Jacobi => (S::from_ratio(1, 4), 2),
                Family::AskeyWilson => unreachable!(),
            };
            for j in 0..n {
                for k in j + 1..n {
                    let sum = rho[j].clone() + &rho[k];
                    let diff = rho[j].clone() - &rho[k];
                    acc.times(pochhammer(&sum, l[j] + l[k]), pochhammer(&(nu.clone() + &sum), l[j] + l[k]), || {
                        format!("(nu + rho_{} + rho_{})", j + 1, k + 1)
                    })?;
                    acc.times(pochhammer(&diff, l[j] - l[k]), pochhammer(&(nu.clone() + &diff), l[j] - l[k]), || {
                        format!("(nu + rho_{} - rho_{})", j + 1, k + 1)
                    })?;
                }
            }
            for j in 0..n {
                let two_rho = rho[j].clone() + &rho[j];
                let den = hat[..used].iter().fold(S::one(), |a, h| a * pochhammer(&(h.clone() + &rho[j]), l[j]));
                acc.times(pochhammer(&two_rho, 2 * l[j]), den, || format!("(nu^_r + rho_{})", j + 1))?;
            }
            let total: usize = l.iter().sum();
            acc.times(prefactor.powi(total as i64).expect("nonzero"), S::one(), String::new)?;
        }
    }
    Ok(acc.value())
}

/// Dense polynomial in one basis coordinate, lowest degree first.
type Dense<S> = Vec<S>;

fn dense_mul<S: Scalar>(a: &Dense<S>, b: &Dense<S>) -> Dense<S> {
    let mut out = vec![S::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y;
        }
    }
    out
}

fn dense_to_sympoly<S: Scalar>(params: &FamilyParams<S>, d: Dense<S>) -> Result<SymPoly<S>> {
    let terms = d.into_iter().enumerate().map(|(k, c)| (Partition::new(vec![k as u32]).expect("single part"), c));
    SymPoly::from_terms(params.kind(), 1, terms)
}

/// Terminating series `sum_k coef_k poly_k`, where `poly_k` is the product
/// of the first `k` variable factors: returns the series and its leading
/// normalization prefactor for the monic polynomial.
fn onevar_series<S: Scalar>(params: &FamilyParams<S>, l: usize) -> Result<(Dense<S>, S)> {
    if params.n() != 1 {
        return Err(MathError::DimensionMismatch { expected: 1, found: params.n() });
    }
    let one = S::one();
    let vanishing = |what: &str| MathError::VanishingFactor(what.to_string());
    // per family: coefficient of step k, variable factor of step k, prefactor
    let (coef, factor, prefactor): (Box<dyn Fn(usize) -> Result<S> + '_>, Box<dyn Fn(usize) -> Dense<S> + '_>, S) =
        match params.set() {
            ParamSet::AskeyWilson { q, tr, .. } => {
                let abcd = tr.iter().fold(one.clone(), |a, x| a * x);
                let top = abcd.clone() * q.powi(l as i64 - 1).ok_or_else(|| vanishing("q"))?;
                let qinv_l = q.powi(-(l as i64)).ok_or_else(|| vanishing("q"))?;
                let bottoms: Vec<S> = (1..4).map(|r| tr[0].clone() * &tr[r]).collect();
                let qq = q.clone();
                let bottoms_c = bottoms.clone();
                let top_c = top.clone();
                let coef = move |k: usize| -> Result<S> {
                    let num = qpochhammer(&qinv_l, &qq, k) * qpochhammer(&top_c, &qq, k) * qq.powi(k as i64).expect("q != 0");
                    let den = bottoms_c.iter().fold(qpochhammer(&qq, &qq, k), |a, b| a * qpochhammer(b, &qq, k));
                    num.div_or_pole(&den, "").map_err(|_| MathError::VanishingFactor("(t0 t_r; q)_k".into()))
                };
                let (t0, qf) = (tr[0].clone(), q.clone());
                let factor = move |m: usize| -> Dense<S> {
                    let c = t0.clone() * qf.powi(m as i64).expect("q != 0");
                    vec![S::one() + c.clone() * &c, -c]
                };
                let num = bottoms.iter().fold(one.clone(), |a, b| a * qpochhammer(b, q, l));
                let den = tr[0].powi(l as i64).ok_or_else(|| vanishing("t0"))? * qpochhammer(&top, q, l);
                (Box::new(coef), Box::new(factor), num.div_or_pole(&den, "").map_err(|_| vanishing("(t0t1t2t3 q^{l-1}; q)_l"))?)
            }
            ParamSet::Wilson { nur, .. } => {
                let sigma = nur.iter().fold(S::zero(), |a, x| a + x);
                let top = sigma - &one + S::from_i64(l as i64);
                let bottoms: Vec<S> = (1..4).map(|r| nur[0].clone() + &nur[r]).collect();
                let (bc, tc) = (bottoms.clone(), top.clone());
                let coef = move |k: usize| hyper_coef(l, &tc, &bc, k);
                let a = nur[0].clone();
                let factor = move |m: usize| -> Dense<S> {
                    let s = a.clone() + S::from_i64(m as i64);
                    vec![s.clone() * &s, S::one()]
                };
                let num = bottoms.iter().fold(one.clone(), |a, b| a * pochhammer(b, l));
                let den = S::from_i64(if l.is_multiple_of(2) { 1 } else { -1 }) * pochhammer(&top, l);
                (Box::new(coef), Box::new(factor), num.div_or_pole(&den, "").map_err(|_| vanishing("(sigma + l - 1)_l"))?)
            }
            ParamSet::ContinuousHahn { plus, minus, .. } => {
                let sigma = plus.iter().chain(minus.iter()).fold(S::zero(), |a, x| a + x);
                let top = sigma - &one + S::from_i64(l as i64);
                let bottoms: Vec<S> = minus.iter().map(|m| plus[0].clone() + m).collect();
                let (bc, tc) = (bottoms.clone(), top.clone());
                let coef = move |k: usize| hyper_coef(l, &tc, &bc, k);
                let a = plus[0].clone();
                let factor = move |m: usize| -> Dense<S> { vec![a.clone() + S::from_i64(m as i64), S::imag_unit()] };
                let num = bottoms.iter().fold(S::imag_unit().powi(l as i64).expect("i != 0"), |a, b| a * pochhammer(b, l));
                (Box::new(coef), Box::new(factor), num.div_or_pole(&pochhammer(&top, l), "").map_err(|_| vanishing("(sigma + l - 1)_l"))?)
            }
            ParamSet::Jacobi { nu0, nu1, .. } => {
                let top = nu0.clone() + nu1 + S::from_i64(l as i64);
                let bottom = nu0.clone() + S::from_ratio(1, 2);
                let (bc, tc) = (vec![bottom.clone()], top.clone());
                let coef = move |k: usize| hyper_coef(l, &tc, &bc, k);
                // sin^2 = (2 - X) / 4
                let factor = |_: usize| -> Dense<S> { vec![S::from_ratio(1, 2), S::from_ratio(-1, 4)] };
                let num = S::from_i64(4).powi(l as i64).expect("nonzero") * pochhammer(&bottom, l);
                (Box::new(coef), Box::new(factor), num.div_or_pole(&pochhammer(&top, l), "").map_err(|_| vanishing("(nu0 + nu1 + l)_l"))?)
            }
        };
    let mut series: Dense<S> = vec![S::zero(); l + 1];
    let mut running: Dense<S> = vec![S::one()];
    for k in 0..=l {
        let c = coef(k)?;
        for (i, x) in running.iter().enumerate() {
            series[i] = series[i].clone() + c.clone() * x;
        }
        running = dense_mul(&running, &factor(k));
    }
    Ok((series, prefactor))
}

/// `(-l)_k (top)_k / ((bottoms)_k k!)`.
fn hyper_coef<S: Scalar>(l: usize, top: &S, bottoms: &[S], k: usize) -> Result<S> {
    let num = pochhammer(&S::from_i64(-(l as i64)), k) * pochhammer(top, k);
    let den = bottoms.iter().fold(pochhammer(&S::one(), k), |a, b| a * pochhammer(b, k));
    num.div_or_pole(&den, "").map_err(|_| MathError::VanishingFactor("lower series parameter".into()))
}

/// The normalized one-variable polynomial `P_l`, straight from the series.
pub fn onevar_normalized<S: Scalar>(params: &FamilyParams<S>, l: usize) -> Result<SymPoly<S>> {
    let (series, _) = onevar_series(params, l)?;
    dense_to_sympoly(params, series)
}

/// The monic one-variable polynomial `p_l` from its hypergeometric form.
pub fn onevar_reference<S: Scalar>(params: &FamilyParams<S>, l: usize) -> Result<SymPoly<S>> {
    let (series, prefactor) = onevar_series(params, l)?;
    let monic: Dense<S> = series.into_iter().map(|c| c * &prefactor).collect();
    let lead = monic[l].clone() - S::one();
    assert!(lead.negligible(1.0), "one-variable reference is not monic: leading coefficient off by {lead}");
    dense_to_sympoly(params, monic)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(s: &str) -> ExactScalar {
        s.parse().unwrap()
    }

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn jacobi() -> FamilyParams {
        FamilyParams::parse(Family::Jacobi, 1, "nu0=1,nu1=1/2").unwrap()
    }

    fn samples() -> Vec<FamilyParams> {
        vec![
            FamilyParams::parse(Family::AskeyWilson, 1, "q=1/3,t0=1/2,t1=1/5,t2=2/7,t3=-1/3").unwrap(),
            FamilyParams::parse(Family::Wilson, 1, "nu0=1,nu1=2/3,nu2=1/2,nu3=3/2").unwrap(),
            FamilyParams::parse(Family::ContinuousHahn, 1, "nu0p=1/2+i,nu1p=2/3,nu0m=1/2-i,nu1m=2/3").unwrap(),
            jacobi(),
        ]
    }

    #[test]
    fn jacobi_examples() {
        let p = build_monic(&jacobi(), &part(&[1])).unwrap();
        let want = SymPoly::from_terms(p.monic.kind(), 1, [(part(&[1]), ex("1")), (part(&[0]), ex("2/5"))]).unwrap();
        assert_eq!(p.monic, want);
        assert_eq!(p.cnorm, ex("5/12"));
        assert_eq!(p.renormalized(), want.scale(&ex("5/12")));
        assert_eq!(onevar_reference(&jacobi(), 1).unwrap(), want);
    }

    #[test]
    fn zero_partition_is_one() {
        for params in samples() {
            let p = build_monic(&params, &part(&[0])).unwrap();
            assert_eq!(p.monic, SymPoly::constant(params.kind(), 1, ex("1")));
            assert_eq!(p.cnorm, ex("1"));
            assert_eq!(onevar_reference(&params, 0).unwrap(), p.monic);
        }
    }

    #[test]
    fn one_variable_polynomials_match_series() {
        for params in samples() {
            let basis = MonicBasis::new(&params, 4).unwrap();
            for l in 1..=4u32 {
                let lam = part(&[l]);
                let got = basis.monic(&lam).unwrap();
                assert_eq!(got, onevar_reference(&params, l as usize).unwrap(), "{} l={l}", params.family());
                let c = renorm_constant(&params, &lam).unwrap();
                assert_eq!(got.scale(&c), onevar_normalized(&params, l as usize).unwrap(), "{} c_{l}", params.family());
            }
        }
    }

    #[test]
    fn wilson_degree_one_constant() {
        let p = FamilyParams::parse(Family::Wilson, 1, "nu0=1,nu1=1,nu2=1,nu3=1").unwrap();
        // p_1 = x^2 - (a+b)(a+c)(a+d)/(sigma) + a^2 with all parameters 1
        let want = SymPoly::from_terms(p.kind(), 1, [(part(&[1]), ex("1")), (part(&[0]), ex("-1"))]).unwrap();
        assert_eq!(onevar_reference(&p, 1).unwrap(), want);
    }

    #[test]
    fn two_variable_monic_is_eigenfunction() {
        let params = FamilyParams::parse(Family::Wilson, 2, "nu=1/3,nu0=1,nu1=2/3,nu2=1/2,nu3=3/2").unwrap();
        let basis = MonicBasis::new(&params, 3).unwrap();
        let lam = part(&[2, 1]);
        let p = basis.monic(&lam).unwrap();
        assert_eq!(p.coeff(&lam), ex("1"));
        assert!(p.support().iter().all(|mu| ideal(&lam).contains(mu)));
        for r in 1..=2 {
            let op = DifferenceOperator::new(&params, r).unwrap();
            assert_eq!(op.apply(&p).unwrap(), p.scale(&op.eigenvalue(&lam).unwrap()));
        }
    }

    #[test]
    fn collision_reported() {
        // nu0 + nu1 = -1 makes E_(1) = 1 * (1 + nu0 + nu1) collide with E_(0) = 0
        let params = FamilyParams::parse(Family::Jacobi, 1, "nu0=-1/2,nu1=-1/2").unwrap();
        assert!(matches!(monic_polynomial(&params, &part(&[1])), Err(MathError::EigenvalueCollision { .. })));
    }
}
