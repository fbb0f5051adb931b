//! Exact checks of the recurrence (Pieri) formulas, duality,
//! specialization and the norm-ratio formulas.

mod deltas;
mod pieri;

use serde::Serialize;

pub use deltas::Branch;
use deltas::Closed;
use pieri::AnyPieri;

use crate::error::{MathError, Result};
use crate::exactnum::special::{pochhammer, qpochhammer};
use crate::exactnum::{ExactScalar, Scalar};
use crate::operators::complete;
use crate::params::{hat_parameters, Family, FamilyParams, ParamSet};
use crate::partitions::{pieri_neighbors, Partition, SignedIndexSet};
use crate::polynomials::{monic_polynomial, renorm_constant, renormalized, MonicBasis};
use crate::report::{Conditions, ResidualTerm, VerificationReport};
use crate::sympoly::{SymPoly, VariableKind};

/// `(1, .., 1, 0, .., 0)` with `k` ones.
fn column(n: usize, k: usize) -> Partition {
    Partition::new((0..n).map(|j| u32::from(j < k)).collect()).expect("decreasing")
}

fn sign<S: Scalar>(k: usize) -> S {
    if k.is_multiple_of(2) {
        S::one()
    } else {
        -S::one()
    }
}

fn check_r<S: Scalar>(params: &FamilyParams<S>, r: usize) -> Result<()> {
    if r == 0 || r > params.n() {
        return Err(MathError::DimensionMismatch { expected: params.n(), found: r });
    }
    Ok(())
}

fn check_length<S: Scalar>(params: &FamilyParams<S>, lambda: &Partition) -> Result<()> {
    if lambda.len() != params.n() {
        return Err(MathError::DimensionMismatch { expected: params.n(), found: lambda.len() });
    }
    Ok(())
}

/// The dual shift vector: AW `t^{n-j} t0`, W `(n-j) nu + nu0`, cH `(n-j) nu + nu0+`, J `rho`.
pub fn rho_hat<S: Scalar>(params: &FamilyParams<S>) -> Vec<S> {
    let n = params.n();
    let nu = params.coupling();
    let shifted = |base: &S| (0..n).map(|j| S::from_i64((n - 1 - j) as i64) * nu + base).collect();
    match params.set() {
        ParamSet::AskeyWilson { t, tr, .. } => {
            (0..n).map(|j| t.powi((n - 1 - j) as i64).expect("nonnegative") * &tr[0]).collect()
        }
        ParamSet::Wilson { nur, .. } => shifted(&nur[0]),
        ParamSet::ContinuousHahn { plus, .. } => shifted(&plus[0]),
        ParamSet::Jacobi { .. } => params.rho().expect("additive"),
    }
}

/// The multiplier `E^_r` of the recurrences, in the family's basis.
pub fn ehat_poly<S: Scalar>(params: &FamilyParams<S>, r: usize) -> Result<SymPoly<S>> {
    check_r(params, r)?;
    let n = params.n();
    let kind = params.kind();
    let hat = rho_hat(params);
    let tail = &hat[r - 1..];
    let terms = |ys: Vec<S>, coef: &dyn Fn(usize) -> S| {
        let h = complete(&ys, r);
        SymPoly::from_terms(kind, n, (0..=r).map(|k| (column(n, k), coef(k) * &h[r - k])))
    };
    match params.family() {
        Family::AskeyWilson => {
            let ys = tail
                .iter()
                .map(|x| Ok(x.clone() + x.inv().ok_or_else(|| MathError::Pole("t^_j = 0".into()))?))
                .collect::<Result<Vec<S>>>()?;
            terms(ys, &|k| sign(r - k))
        }
        Family::Wilson => terms(tail.iter().map(|x| x.clone() * x).collect(), &|_| sign(r)),
        Family::ContinuousHahn => {
            let i = S::imag_unit();
            terms(tail.to_vec(), &|k| sign::<S>(r) * i.powi(k as i64).expect("i != 0"))
        }
        Family::Jacobi => {
            // (-1)^r e_r(sin^2), with sin^2 = 1/2 - X/4
            let e = SymPoly::monomial(kind, column(n, r)).scale(&sign(r));
            Ok(e.substitute_affine(&S::from_ratio(1, 2), &S::from_ratio(-1, 4), VariableKind::JTrig))
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PieriTerm {
    pub eps: SignedIndexSet,
    pub coefficient: ExactScalar,
    pub target: Partition,
}

/// The expansion coefficients of `E^_r P_lambda` in the `P` basis.
#[derive(Clone, Debug, Serialize)]
pub struct PieriData {
    pub family: Family,
    pub r: usize,
    pub lambda: Partition,
    pub terms: Vec<PieriTerm>,
}

/// `U^_{J^c, r-|J|} V^_{eps J, J^c}` at `rho + lambda`.
pub fn pieri_coefficient<S: Scalar>(
    params: &FamilyParams<S>,
    r: usize,
    lambda: &Partition,
    eps: &SignedIndexSet,
) -> Result<S> {
    check_length(params, lambda)?;
    check_r(params, r)?;
    if eps.len() > r || lambda.shifted(eps).is_none() {
        return Err(MathError::InvalidPartition(format!("{lambda} shifted by {eps:?} leaves the cone")));
    }
    AnyPieri::new(params)?.coefficient(lambda, eps, r)
}

pub fn pieri_data(params: &FamilyParams, r: usize, lambda: &Partition) -> Result<PieriData> {
    check_length(params, lambda)?;
    check_r(params, r)?;
    let model = AnyPieri::new(params)?;
    let terms = pieri_neighbors(lambda, r)
        .into_iter()
        .map(|(eps, target)| Ok(PieriTerm { coefficient: model.coefficient(lambda, &eps, r)?, eps, target }))
        .collect::<Result<_>>()?;
    Ok(PieriData { family: params.family(), r, lambda: lambda.clone(), terms })
}

fn recurrence_conditions(params: &FamilyParams, allow_override: bool) -> Result<Conditions> {
    let self_dual = params.self_dual();
    match params.recurrence_condition() {
        Ok(()) => Ok(Conditions { self_dual, enforced: true, overridden: false }),
        Err(e) if !allow_override => Err(e),
        Err(_) => Ok(Conditions { self_dual, enforced: true, overridden: true }),
    }
}

fn residual_into(report: &mut VerificationReport, residual: &SymPoly<ExactScalar>) {
    for (mu, c) in residual.terms() {
        report.fail(ResidualTerm::new(format!("m{mu}"), c, c.magnitude()));
    }
}

/// Expands `E^_r P_lambda - sum coefficient P_target`; passes iff it is the zero polynomial.
pub fn verify_recurrence(
    params: &FamilyParams,
    r: usize,
    lambda: &Partition,
    allow_override: bool,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("recurrence", params.family()).with_lambda(lambda).with_r(r);
    report.conditions = recurrence_conditions(params, allow_override)?;
    let data = pieri_data(params, r, lambda)?;
    let basis = MonicBasis::new(params, lambda.size() + r as u32)?;
    let big_p = |mu: &Partition| -> Result<SymPoly<ExactScalar>> {
        Ok(basis.monic(mu)?.scale(&renorm_constant(params, mu)?))
    };
    let lhs = ehat_poly(params, r)?.mul(&big_p(lambda)?)?;
    let mut rhs = SymPoly::zero(params.kind(), params.n());
    for term in &data.terms {
        rhs = rhs.add(&big_p(&term.target)?.scale(&term.coefficient))?;
    }
    residual_into(&mut report, &lhs.sub(&rhs)?);
    Ok(report)
}

/// The point at which `p_lambda` specializes: AW `z = tau^`, W and cH `x = i rho^`, J `z = 1`.
pub fn special_point<S: Scalar>(params: &FamilyParams<S>) -> Vec<S> {
    match params.family() {
        Family::AskeyWilson => rho_hat(params),
        Family::Wilson | Family::ContinuousHahn => rho_hat(params).into_iter().map(|x| S::imag_unit() * x).collect(),
        Family::Jacobi => vec![S::one(); params.n()],
    }
}

/// `(p_lambda(special point), prefactor^{|lambda|} Delta^_+(rho + lambda) / Delta^_+(rho))`.
pub fn specialization_value<S: Scalar>(params: &FamilyParams<S>, lambda: &Partition) -> Result<(S, S)> {
    check_length(params, lambda)?;
    let lhs = monic_polynomial(params, lambda)?.eval(&special_point(params))?;
    let prefactor = match params.family() {
        Family::AskeyWilson => S::one(),
        Family::Wilson => -S::one(),
        Family::ContinuousHahn => S::imag_unit(),
        Family::Jacobi => S::from_i64(4),
    };
    let rhs = prefactor.powi(lambda.size() as i64).expect("nonzero")
        * Closed::new(params)?.delta_ratio(params, lambda, Branch::Plus)?;
    Ok((lhs, rhs))
}

pub fn specialization_check(params: &FamilyParams, lambda: &Partition) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("specialization", params.family()).with_lambda(lambda);
    report.conditions.self_dual = params.self_dual();
    let (lhs, rhs) = specialization_value(params, lambda)?;
    if lhs != rhs {
        let d = lhs.clone() - &rhs;
        report.fail(ResidualTerm::new(format!("lhs {lhs} vs rhs {rhs}"), &d, d.magnitude()));
    }
    Ok(report)
}

fn dual_params(params: &FamilyParams) -> Result<FamilyParams> {
    let hat = hat_parameters(params)?.hat;
    let four = || [hat[0].clone(), hat[1].clone(), hat[2].clone(), hat[3].clone()];
    let set = match params.set() {
        ParamSet::AskeyWilson { q, t, .. } => ParamSet::AskeyWilson { q: q.clone(), t: t.clone(), tr: four() },
        ParamSet::Wilson { nu, .. } => ParamSet::Wilson { nu: nu.clone(), nur: four() },
        _ => return Err(MathError::Unsupported("duality is stated for AW and W".into())),
    };
    FamilyParams::new(params.n(), set)
}

/// `P_lambda(rho^ + mu) = P^_mu(rho + lambda)`, both sides in their multiplicative
/// (AW) or imaginary additive (W) realization.
pub fn duality_check(params: &FamilyParams, lambda: &Partition, mu: &Partition) -> Result<VerificationReport> {
    check_length(params, lambda)?;
    check_length(params, mu)?;
    let mut report = VerificationReport::new("duality", params.family()).with_lambda(lambda).with_mu(mu);
    report.conditions.self_dual = params.self_dual();
    let dual = dual_params(params)?;
    let hat = hat_parameters(params)?;
    let at = |base: &[ExactScalar], shift: &Partition| -> Vec<ExactScalar> {
        match params.set() {
            ParamSet::AskeyWilson { q, .. } => base
                .iter()
                .zip(shift.parts())
                .map(|(b, &m)| b.clone() * q.powi(m as i64).expect("q != 0"))
                .collect(),
            _ => base
                .iter()
                .zip(shift.parts())
                .map(|(b, &m)| ExactScalar::i() * (b.clone() + ExactScalar::integer(m as i64)))
                .collect(),
        }
    };
    let lhs = renormalized(params, lambda)?.eval(&at(&hat.rho_hat, mu))?;
    let rhs = renormalized(&dual, mu)?.eval(&at(&hat.rho, lambda))?;
    if lhs != rhs {
        let d = lhs.clone() - &rhs;
        report.fail(ResidualTerm::new(format!("lhs {lhs} vs rhs {rhs}"), &d, d.magnitude()));
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct DeltaHatRatio {
    pub family: Family,
    pub lambda: Partition,
    pub plus_ratio: ExactScalar,
    pub minus_ratio: ExactScalar,
}

/// `Delta^_+-(rho + lambda) / Delta^_+-(rho)` as finite Pochhammer products.
pub fn delta_hat_ratio(params: &FamilyParams, lambda: &Partition) -> Result<DeltaHatRatio> {
    check_length(params, lambda)?;
    let closed = Closed::new(params)?;
    Ok(DeltaHatRatio {
        family: params.family(),
        lambda: lambda.clone(),
        plus_ratio: closed.delta_ratio(params, lambda, Branch::Plus)?,
        minus_ratio: closed.delta_ratio(params, lambda, Branch::Minus)?,
    })
}

/// `<p_lambda, p_lambda> / <1, 1> = |c|^{-2|lambda|} Delta^_+ Delta^_-` ratios.
pub fn norm_ratio<S: Scalar>(params: &FamilyParams<S>, lambda: &Partition) -> Result<S> {
    check_length(params, lambda)?;
    let closed = Closed::new(params)?;
    let scale = match params.family() {
        Family::Jacobi => S::from_i64(16),
        _ => S::one(),
    };
    Ok(scale.powi(lambda.size() as i64).expect("nonzero")
        * closed.delta_ratio(params, lambda, Branch::Plus)?
        * closed.delta_ratio(params, lambda, Branch::Minus)?)
}

pub fn norm_ratio_exact(params: &FamilyParams, lambda: &Partition) -> Result<ExactScalar> {
    norm_ratio(params, lambda)
}

/// The classical one-variable ratio `<p_l, p_l> / <1, 1>`.
pub fn onevar_norm_reference<S: Scalar>(params: &FamilyParams<S>, l: usize) -> Result<S> {
    if params.n() != 1 {
        return Err(MathError::DimensionMismatch { expected: 1, found: params.n() });
    }
    let poch = |a: &S, k: usize| pochhammer(a, k);
    let fact = poch(&S::one(), l);
    let (num, den) = match params.set() {
        ParamSet::AskeyWilson { q, tr, .. } => {
            let abcd = tr.iter().fold(S::one(), |a, x| a * x);
            let mut num = qpochhammer(q, q, l);
            for r in 0..4 {
                for s in r + 1..4 {
                    num = num * qpochhammer(&(tr[r].clone() * &tr[s]), q, l);
                }
            }
            let shifted = abcd.clone() * q.powi(l as i64 - 1).ok_or_else(|| MathError::Pole("q = 0".into()))?;
            (num, qpochhammer(&shifted, q, l) * qpochhammer(&abcd, q, 2 * l))
        }
        ParamSet::Wilson { nur, .. } => {
            let sigma = nur.iter().fold(S::zero(), |a, x| a + x);
            let mut num = fact;
            for r in 0..4 {
                for s in r + 1..4 {
                    num = num * poch(&(nur[r].clone() + &nur[s]), l);
                }
            }
            (num, poch(&(sigma.clone() + S::from_i64(l as i64 - 1)), l) * poch(&sigma, 2 * l))
        }
        ParamSet::ContinuousHahn { plus, minus, .. } => {
            let sigma = plus.iter().chain(minus.iter()).fold(S::zero(), |a, x| a + x);
            let mut num = fact;
            for p in plus {
                for m in minus {
                    num = num * poch(&(p.clone() + m), l);
                }
            }
            (num, poch(&(sigma.clone() + S::from_i64(l as i64 - 1)), l) * poch(&sigma, 2 * l))
        }
        ParamSet::Jacobi { nu0, nu1, .. } => {
            let half = S::from_ratio(1, 2);
            let sigma = nu0.clone() + nu1;
            let num = S::from_i64(16).powi(l as i64).expect("nonzero")
                * fact
                * poch(&(nu0.clone() + &half), l)
                * poch(&(nu1.clone() + &half), l);
            let den = poch(&(sigma.clone() + S::from_i64(l as i64)), l) * poch(&(sigma + S::one()), 2 * l);
            (num, den)
        }
    };
    num.div_or_pole(&den, "").map_err(|_| MathError::VanishingFactor("one-variable norm denominator".into()))
}

fn ratio_or_fail(report: &mut VerificationReport, label: String, lhs: ExactScalar, rhs: ExactScalar) {
    if lhs != rhs {
        let d = lhs.clone() - &rhs;
        report.fail(ResidualTerm::new(format!("{label}: {lhs} vs {rhs}"), &d, d.magnitude()));
    }
}

fn quotient(a: ExactScalar, b: &ExactScalar) -> Result<ExactScalar> {
    a.div_or_pole(b, "").map_err(|_| MathError::VanishingFactor("zero denominator in a ratio".into()))
}

/// `N(lambda + omega_r) / N(lambda) (c_{lambda+omega_r} / c_lambda)^2` against
/// `V^_{1..r}(-rho - lambda - omega_r) / V^_{1..r}(rho + lambda)`.
pub fn step_relation_check(params: &FamilyParams, lambda: &Partition, r: usize) -> Result<VerificationReport> {
    check_length(params, lambda)?;
    check_r(params, r)?;
    let mut report = VerificationReport::new("norm-step", params.family()).with_lambda(lambda).with_r(r);
    report.conditions.self_dual = params.self_dual();
    let up = lambda.plus(&Partition::omega(params.n(), r));
    let c_ratio = quotient(renorm_constant(params, &up)?, &renorm_constant(params, lambda)?)?;
    let lhs = quotient(norm_ratio(params, &up)?, &norm_ratio(params, lambda)?)? * &c_ratio * &c_ratio;
    let model = AnyPieri::new(params)?;
    let rhs = quotient(model.top_block(lambda, r, true)?, &model.top_block(lambda, r, false)?)?;
    ratio_or_fail(&mut report, format!("omega_{r}"), lhs, rhs);
    Ok(report)
}

/// The order of adding `omega_r` and `omega_s` does not change the product of `V^` quotients.
pub fn path_independence_check(
    params: &FamilyParams,
    lambda: &Partition,
    r: usize,
    s: usize,
) -> Result<VerificationReport> {
    check_length(params, lambda)?;
    check_r(params, r)?;
    check_r(params, s)?;
    let mut report = VerificationReport::new("path-independence", params.family()).with_lambda(lambda).with_r(r);
    let model = AnyPieri::new(params)?;
    let n = params.n();
    let q = |mu: &Partition, k: usize| -> Result<ExactScalar> {
        quotient(model.top_block(mu, k, true)?, &model.top_block(mu, k, false)?)
    };
    let lhs = q(&lambda.plus(&Partition::omega(n, s)), r)? * q(lambda, s)?;
    let rhs = q(&lambda.plus(&Partition::omega(n, r)), s)? * q(lambda, r)?;
    ratio_or_fail(&mut report, format!("omega_{r} then omega_{s}"), lhs, rhs);
    Ok(report)
}

/// `d^(z + k) / d^(z)` in closed form against the product of `v^` or `w^`
/// factors from the difference equations, at `z` built from `rho`, `k <= kmax`.
pub fn difference_equation_check(params: &FamilyParams, kmax: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("difference-equations", params.family());
    report.conditions.self_dual = params.self_dual();
    let closed = Closed::new(params)?;
    let model = AnyPieri::new(params)?;
    let (_, w_const) = model.constants();
    let n = params.n();
    let one = ExactScalar::integer(1);
    // AW v^ factors each carry t^{-1/2}: the rational parts differ by t^{(half + k)/2}
    let half_base = match params.set() {
        ParamSet::AskeyWilson { t, .. } => Some(t.clone()),
        _ => None,
    };
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (j + 1..n).map(move |k| (j, k))).collect();
    let (v_plus, v_minus, w_arg): (Vec<ExactScalar>, Vec<ExactScalar>, Vec<ExactScalar>) =
        match params.set() {
            ParamSet::AskeyWilson { t, .. } => {
                let s = params.aw_radicand().expect("AW");
                let tp = |e: usize| t.powi(e as i64).expect("nonnegative");
                (
                    pairs.iter().map(|&(j, k)| s.clone() * tp(2 * n - 2 - j - k)).collect(),
                    pairs.iter().map(|&(j, k)| tp(k - j)).collect(),
                    (0..n).map(|j| tp(n - 1 - j)).collect(),
                )
            }
            _ => {
                let rho = params.rho().expect("additive");
                (
                    pairs.iter().map(|&(j, k)| rho[j].clone() + &rho[k]).collect(),
                    pairs.iter().map(|&(j, k)| rho[j].clone() - &rho[k]).collect(),
                    rho.clone(),
                )
            }
        };
    let mut compare = |label: String, tele: ExactScalar, display: ExactScalar| {
        if tele != display {
            let ratio = tele.checked_div(&display).unwrap_or_else(|| ExactScalar::integer(0));
            report.fail(ResidualTerm::new(label, &ratio, (ratio.clone() - &one).magnitude()));
        }
    };
    for branch in [Branch::Plus, Branch::Minus] {
        let tag = if branch == Branch::Plus { "+" } else { "-" };
        // eps sign on the first coordinate of the argument
        let e: i8 = if branch == Branch::Plus { 1 } else { -1 };
        let arg_step = |s: i64| if branch == Branch::Plus { s } else { -s - 1 };
        for k in 1..=kmax {
            for (idx, &(j, kk)) in pairs.iter().enumerate() {
                for (which, second, x) in [("sum", e, &v_plus[idx]), ("difference", -e, &v_minus[idx])] {
                    let mut tele = one.clone();
                    for s in 0..k as i64 {
                        tele = tele * model.v_at((j, 0, e), (kk, 0, second), arg_step(s))?;
                    }
                    let disp = closed.v_ratio(x, k, branch)?;
                    let disp_value = match &half_base {
                        Some(t) => disp.value * t.powi((disp.half + k as i64) / 2).expect("t != 0"),
                        None => disp.value,
                    };
                    compare(format!("d_v{tag} at rho_{} {which} rho_{}, k={k}", j + 1, kk + 1), tele, disp_value);
                }
            }
            for (j, x) in w_arg.iter().enumerate() {
                let mut tele = one.clone();
                for s in 0..k as i64 {
                    tele = tele * model.w_at(j, 0, e, arg_step(s))? * &w_const;
                }
                compare(format!("d_w{tag} at rho_{}, k={k}", j + 1), tele, closed.w_ratio(x, k, branch)?);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests;
