//! Float checks of the limits from AW polynomials to W, cH and J polynomials.
//!
//! The substituted AW parameters are transcendental in the scale. They are
//! rounded to `f64` once and the AW side is then solved exactly over those
//! dyadic rationals, so the only float error is the parameter rounding.
//! (A float triangular solve loses about `1e-16 / alpha^6` to cancellation
//! near `q = 1`, which swamps the signal below `alpha = 1/32`.)

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{MathError, Result};
use crate::exactnum::{ExactScalar, FloatScalar, Scalar};
use crate::operators::eigenvalue;
use crate::params::{Family, FamilyParams, ParamSet};
use crate::partitions::Partition;
use crate::polynomials::monic_polynomial;
use crate::report::{ResidualTerm, VerificationReport};
use crate::sympoly::SymPoly;

/// Largest final discrepancy accepted by [`limit_report`].
pub const FINAL_DISCREPANCY: f64 = 1e-2;
/// W with `|lambda| = 2` still sits near 0.2 at scale 1/16; second-order
/// convergence brings it below 1e-2 by 1/128.
pub const DEFAULT_FIRST_SCALE: f64 = 1.0 / 16.0;
/// Values below this count as already converged.
const CONVERGED: f64 = 1e-12;

/// A limit from AW to `target`.
///
/// `scales` are `alpha` (W, cH: `q = e^{-alpha}`) or `beta` (J: `q = e^{-beta}`).
#[derive(Clone, Debug, Serialize)]
pub struct LimitCase {
    pub target: FamilyParams,
    pub scales: Vec<f64>,
    pub lambdas: Vec<Partition>,
}

impl LimitCase {
    pub fn new(target: FamilyParams, scales: Vec<f64>, lambdas: Vec<Partition>) -> Result<Self> {
        if target.family() == Family::AskeyWilson {
            return Err(MathError::Unsupported("the limit target must be W, cH or J".into()));
        }
        if scales.iter().any(|s| !(*s > 0.0 && *s < 1.0)) {
            return Err(MathError::Domain("scales must lie in (0, 1)".into()));
        }
        for lambda in &lambdas {
            if lambda.len() != target.n() {
                return Err(MathError::DimensionMismatch { expected: target.n(), found: lambda.len() });
            }
        }
        Ok(LimitCase { target, scales, lambdas })
    }

    /// Four halving scales from `first`.
    pub fn halving_from(target: FamilyParams, first: f64, lambdas: Vec<Partition>) -> Result<Self> {
        Self::new(target, (0..4).map(|k| first / f64::from(1 << k)).collect(), lambdas)
    }

    /// Four halving scales from [`DEFAULT_FIRST_SCALE`].
    pub fn halving(target: FamilyParams, lambdas: Vec<Partition>) -> Result<Self> {
        Self::halving_from(target, DEFAULT_FIRST_SCALE, lambdas)
    }
}

fn e_minus(scale: f64, nu: &FloatScalar) -> Complex64 {
    (-scale * nu.0).exp()
}

/// The AW parameters of `case` at one scale.
pub fn substitute_aw_params(case: &LimitCase, scale: f64) -> Result<FamilyParams<FloatScalar>> {
    let target = case.target.to_float();
    let f = FloatScalar;
    let i = Complex64::i();
    let q = FloatScalar::real((-scale).exp());
    let set = match target.set() {
        ParamSet::Wilson { nu, nur } => ParamSet::AskeyWilson {
            q,
            t: f(e_minus(scale, nu)),
            tr: [
                f(e_minus(scale, &nur[0])),
                f(e_minus(scale, &nur[1])),
                f(e_minus(scale, &nur[2])),
                f(e_minus(scale, &nur[3])),
            ],
        },
        ParamSet::ContinuousHahn { nu, plus, minus } => ParamSet::AskeyWilson {
            q,
            t: f(e_minus(scale, nu)),
            tr: [
                f(-i * e_minus(scale, &plus[0])),
                f(-i * e_minus(scale, &plus[1])),
                f(i * e_minus(scale, &minus[0])),
                f(i * e_minus(scale, &minus[1])),
            ],
        },
        // g = nu, g0 = nu0, g1 = nu1, g0' = g1' = 0
        ParamSet::Jacobi { nu, nu0, nu1 } => {
            let half = FloatScalar::real(0.5);
            ParamSet::AskeyWilson {
                q,
                t: f(e_minus(scale, nu)),
                tr: [
                    f(e_minus(scale, nu0)),
                    f(-e_minus(scale, nu1)),
                    f(e_minus(scale, &half)),
                    f(-e_minus(scale, &half)),
                ],
            }
        }
        ParamSet::AskeyWilson { .. } => unreachable!("rejected by LimitCase::new"),
    };
    FamilyParams::new(target.n(), set)
}

/// The parameters of [`substitute_aw_params`] as exact dyadic rationals.
pub fn dyadic_aw_params(case: &LimitCase, scale: f64) -> Result<FamilyParams> {
    let float = substitute_aw_params(case, scale)?;
    let set = float.map(|x| ExactScalar::from_f64_pair(x.re(), x.im()).expect("finite")).set().clone();
    FamilyParams::new(float.n(), set)
}

fn dyadic(x: f64) -> ExactScalar {
    ExactScalar::from_f64_pair(x, 0.0).expect("finite scale")
}

/// The AW polynomial at one scale, rescaled and rewritten in the target's basis.
pub fn scaled_aw_polynomial(case: &LimitCase, scale: f64, lambda: &Partition) -> Result<SymPoly<FloatScalar>> {
    let aw = dyadic_aw_params(case, scale)?;
    let p = monic_polynomial(&aw, lambda)?;
    let size = lambda.size() as i64;
    let kind = case.target.kind();
    let a = dyadic(scale);
    Ok(match case.target.family() {
        // X = z + 1/z = 2 - alpha^2 (2/alpha)^2 sin^2(alpha x / 2)
        Family::Wilson => {
            let a2 = a.clone() * &a;
            let lead = (-a2.clone()).pow(-size).expect("nonzero");
            p.substitute_affine(&ExactScalar::integer(2), &(-a2), kind).scale(&lead)
        }
        // after the half-period shift X = 2 sin(alpha x) = 2 alpha (sin(alpha x) / alpha)
        Family::ContinuousHahn => {
            let b = ExactScalar::integer(2) * &a;
            let lead = b.pow(-size).expect("nonzero");
            p.substitute_affine(&ExactScalar::integer(0), &b, kind).scale(&lead)
        }
        Family::Jacobi => p.with_kind(kind),
        Family::AskeyWilson => unreachable!("rejected by LimitCase::new"),
    }
    .to_float())
}

/// `(scale, max coefficient distance)` for every scale of `case`.
pub fn limit_discrepancy(case: &LimitCase, lambda: &Partition) -> Result<Vec<(f64, f64)>> {
    let target = monic_polynomial(&case.target, lambda)?.to_float();
    case.scales
        .par_iter()
        .map(|&s| Ok((s, scaled_aw_polynomial(case, s, lambda)?.max_coeff_distance(&target))))
        .collect()
}

/// `(scale, |scale^{-2} E^AW_{1,lambda} - E_{1,lambda}|)` for every scale.
pub fn eigenvalue_discrepancy(case: &LimitCase, lambda: &Partition) -> Result<Vec<(f64, f64)>> {
    let target = eigenvalue(&case.target.to_float(), 1, lambda)?;
    case.scales
        .par_iter()
        .map(|&s| {
            let aw = eigenvalue(&dyadic_aw_params(case, s)?, 1, lambda)?;
            let scaled = FloatScalar::from_exact(&(aw * dyadic(s * s).inv().expect("nonzero")));
            Ok((s, (scaled - target).abs()))
        })
        .collect()
}

/// The last three entries strictly decrease (or are all negligible).
pub fn tail_decreasing(seq: &[(f64, f64)]) -> bool {
    let tail = &seq[seq.len().saturating_sub(3)..];
    tail.iter().all(|(_, d)| *d < CONVERGED) || tail.windows(2).all(|w| w[1].1 < w[0].1)
}

fn orders(seq: &[(f64, f64)]) -> String {
    seq.windows(2)
        .map(|w| {
            let order = (w[0].1 / w[1].1).ln() / (w[0].0 / w[1].0).ln();
            format!("{order:.2}")
        })
        .collect::<Vec<_>>()
        .join(", ")
}

/// Tail decrease and final size of the coefficient discrepancies for every
/// `lambda` of `case`. The eigenvalue limit converges only at first order,
/// so its sequence is held to tail decrease alone.
pub fn limit_report(case: &LimitCase) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("limits", case.target.family());
    let mut notes = Vec::new();
    for lambda in &case.lambdas {
        for (what, seq) in [("coefficients", limit_discrepancy(case, lambda)?), ("eigenvalue", eigenvalue_discrepancy(case, lambda)?)] {
            let last = seq.last().map(|(_, d)| *d).unwrap_or(0.0);
            let label = format!("{what} {lambda}: {:?}", seq.iter().map(|(_, d)| *d).collect::<Vec<_>>());
            let too_big = what == "coefficients" && last >= FINAL_DISCREPANCY;
            if !tail_decreasing(&seq) || too_big {
                report.fail(ResidualTerm::new(label, last, last));
            } else {
                report.record(ResidualTerm::new(label, last, last));
            }
            if last >= CONVERGED {
                notes.push(format!("{what} {lambda}: observed orders {}", orders(&seq)));
            }
        }
    }
    if !notes.is_empty() {
        report.note = Some(notes.join("; "));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(family: Family, n: usize, text: &str) -> FamilyParams {
        FamilyParams::parse(family, n, text).unwrap()
    }

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn substitution_examples() {
        let j = LimitCase::new(params(Family::Jacobi, 1, "nu=1,nu0=1,nu1=1/2"), vec![0.5], vec![]).unwrap();
        let aw = substitute_aw_params(&j, 4f64.ln()).unwrap();
        let ParamSet::AskeyWilson { q, t, tr } = aw.set() else { panic!() };
        assert!((q.re() - 0.25).abs() < 1e-15 && (t.re() - 0.25).abs() < 1e-15);
        assert!((tr[1].re() + 0.5).abs() < 1e-15);

        let ch = LimitCase::new(params(Family::ContinuousHahn, 1, "nu0p=1,nu1p=1,nu0m=1,nu1m=1"), vec![0.5], vec![]).unwrap();
        let aw = substitute_aw_params(&ch, 2f64.ln()).unwrap();
        let ParamSet::AskeyWilson { tr, .. } = aw.set() else { panic!() };
        assert!(tr[0].re().abs() < 1e-15 && (tr[0].im() + 0.5).abs() < 1e-15);

        let w = LimitCase::new(params(Family::Wilson, 1, "nu0=1,nu1=1,nu2=1,nu3=1"), vec![1e-9], vec![]).unwrap();
        let ParamSet::AskeyWilson { q, tr, .. } = substitute_aw_params(&w, 1e-9).unwrap().set().clone() else { panic!() };
        assert!((q.re() - 1.0).abs() < 1e-8 && (tr[3].re() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn wilson_starting_at_one_half_is_not_yet_close() {
        let case = LimitCase::halving_from(params(Family::Wilson, 2, "nu=1/2,nu0=1,nu1=1/2,nu2=3/2,nu3=2"), 0.5, vec![part(&[2, 0])]).unwrap();
        let seq = limit_discrepancy(&case, &part(&[2, 0])).unwrap();
        assert!(tail_decreasing(&seq));
        assert!(seq[3].1 > FINAL_DISCREPANCY);
    }

    #[test]
    fn zero_partition_has_no_discrepancy() {
        let case = LimitCase::halving(params(Family::Wilson, 2, "nu=1/2,nu0=1,nu1=1/2,nu2=3/2,nu3=2"), vec![]).unwrap();
        assert!(limit_discrepancy(&case, &part(&[0, 0])).unwrap().iter().all(|(_, d)| *d == 0.0));
    }

    #[test]
    fn jacobi_one_variable_limit() {
        let case = LimitCase::halving_from(params(Family::Jacobi, 1, "nu0=1,nu1=1/2"), 0.5, vec![part(&[1])]).unwrap();
        let seq = limit_discrepancy(&case, &part(&[1])).unwrap();
        assert!(tail_decreasing(&seq), "{seq:?}");
        let p = scaled_aw_polynomial(&case, 1e-3, &part(&[1])).unwrap();
        assert!((p.coeff(&part(&[0])).re() - 0.4).abs() < 1e-2);
    }

    #[test]
    fn limits_converge_in_two_variables() {
        let lambdas = vec![part(&[1, 0]), part(&[1, 1]), part(&[2, 0])];
        for target in [
            params(Family::Wilson, 2, "nu=1/2,nu0=1,nu1=1/2,nu2=3/2,nu3=2"),
            params(Family::ContinuousHahn, 2, "nu=1/2,nu0p=1/2+1/2i,nu1p=1,nu0m=1/2-1/2i,nu1m=1"),
            params(Family::Jacobi, 2, "nu=1/2,nu0=1,nu1=1/2"),
        ] {
            let case = LimitCase::halving(target, lambdas.clone()).unwrap();
            let report = limit_report(&case).unwrap();
            assert!(report.pass, "{:?}: {:#?}", case.target.family(), report.residual_terms);
        }
    }
}
