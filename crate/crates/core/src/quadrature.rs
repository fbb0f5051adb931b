//! Float weight functions and tensor quadrature, used to check
//! orthogonality and the norm ratios independently of the exact algebra.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{MathError, Result};
use crate::exactnum::special::{ln_gamma_float, ln_recip_gamma_imag_pair, qpochhammer_inf_float};
use crate::exactnum::{FloatScalar, Scalar};
use crate::identities::norm_ratio_exact;
use crate::params::{Family, FamilyParams, ParamSet};
use crate::partitions::{ideal, Partition};
use crate::polynomials::MonicBasis;
use crate::report::{ResidualTerm, VerificationReport};
use crate::sympoly::{basis_values, SymPoly};

type C = Complex64;

/// Largest allowed `|<p_lambda, p_mu>| / (|p_lambda| |p_mu|)` for `lambda != mu`.
pub const OFFDIAGONAL_TOLERANCE: f64 = 1e-8;
/// Largest allowed relative gap between numeric and exact norm ratios.
pub const NORM_RATIO_TOLERANCE: f64 = 1e-6;

const CHUNK: usize = 512;

/// Quadrature grid.
///
/// AW: trapezoid rule with `points` nodes per period. J: Gauss-Legendre of
/// order `points` in every coordinate of the Weyl chamber
/// `pi >= x_1 >= .. >= x_n >= 0`. W and cH: `panels` Gauss-Legendre panels
/// on `[-radius, radius]` with `points` nodes in total per coordinate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridSpec {
    pub family: Family,
    pub n: usize,
    pub points: usize,
    pub radius: f64,
    pub panels: usize,
    /// Truncation tolerance of the q-products, also the convergence tolerance.
    pub tol: f64,
}

impl GridSpec {
    pub fn default_for(family: Family, n: usize) -> Self {
        let (points, panels) = match family {
            Family::AskeyWilson => (64, 1),
            Family::Jacobi => (32, 1),
            Family::Wilson | Family::ContinuousHahn => (2048, 64),
        };
        GridSpec { family, n, points, radius: 40.0, panels, tol: 1e-12 }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.points.is_power_of_two() {
            return Err(MathError::Domain(format!("grid size {} is not a power of two", self.points)));
        }
        if !(self.radius > 0.0) {
            return Err(MathError::Domain("truncation radius must be positive".into()));
        }
        if !(self.tol > 0.0 && self.tol <= 1e-8) {
            return Err(MathError::Domain(format!("tolerance {} outside (0, 1e-8]", self.tol)));
        }
        if matches!(self.family, Family::Wilson | Family::ContinuousHahn)
            && (self.panels == 0 || !self.points.is_multiple_of(self.panels))
        {
            return Err(MathError::Domain("points must be a multiple of panels".into()));
        }
        Ok(())
    }

    /// The same rule with twice as many nodes per coordinate.
    pub fn doubled(&self) -> Self {
        let panels = match self.family {
            Family::Wilson | Family::ContinuousHahn => self.panels * 2,
            _ => self.panels,
        };
        GridSpec { points: self.points * 2, panels, ..self.clone() }
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; order];
    let mut weights = vec![0.0; order];
    for i in 0..order.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (order as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=order {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = order as f64 * (x * p1 - p0) / (x * x - 1.0);
            let step = p1 / dp;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[order - 1 - i] = x;
        weights[i] = w;
        weights[order - 1 - i] = w;
    }
    (nodes, weights)
}

/// The weight function of one parameter set, in float.
pub struct Weight {
    params: FamilyParams<FloatScalar>,
    tol: f64,
}

impl Weight {
    pub fn new(params: &FamilyParams, tol: f64) -> Result<Self> {
        params.check_analytic_domain()?;
        Ok(Weight { params: params.to_float(), tol })
    }

    pub fn n(&self) -> usize {
        self.params.n()
    }

    /// `Delta(x)`, checked to be real and nonnegative.
    pub fn value(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.n() {
            return Err(MathError::DimensionMismatch { expected: self.n(), found: x.len() });
        }
        let v = match self.params.set() {
            ParamSet::AskeyWilson { q, t, tr } => aw_weight(q.0, t.0, tr, self.tol, x)?,
            ParamSet::Wilson { nu, nur } => wilson_weight(nu.0, nur, x)?,
            ParamSet::ContinuousHahn { nu, plus, minus } => hahn_weight(nu.0, plus, minus, x)?,
            ParamSet::Jacobi { nu, nu0, nu1 } => C::new(jacobi_weight(nu.re(), nu0.re(), nu1.re(), x), 0.0),
        };
        let scale = v.norm();
        if v.im.abs() > 1e-10 * scale || v.re < -1e-10 * scale {
            return Err(MathError::Domain(format!("weight not real and nonnegative at {x:?}: {v}")));
        }
        Ok(v.re.max(0.0))
    }
}

pub fn weight_value(params: &FamilyParams, x: &[f64]) -> Result<FloatScalar> {
    Ok(FloatScalar::real(Weight::new(params, 1e-12)?.value(x)?))
}

fn aw_weight(q: C, t: C, tr: &[FloatScalar; 4], tol: f64, x: &[f64]) -> Result<C> {
    let qinf = |a: C| qpochhammer_inf_float(FloatScalar(a), FloatScalar(q), tol).map(|v| v.0);
    let e = |theta: f64| C::from_polar(1.0, theta);
    let mut num = C::new(1.0, 0.0);
    let mut den = C::new(1.0, 0.0);
    let n = x.len();
    for j in 0..n {
        for k in j + 1..n {
            for (e1, e2) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                let z = e(e1 * x[j] + e2 * x[k]);
                num *= qinf(z)?;
                den *= qinf(t * z)?;
            }
        }
        for eps in [1.0, -1.0] {
            num *= qinf(e(2.0 * eps * x[j]))?;
            for t_r in tr {
                den *= qinf(t_r.0 * e(eps * x[j]))?;
            }
        }
    }
    if den.norm() == 0.0 {
        return Err(MathError::Pole(format!("AW weight denominator vanishes at {x:?}")));
    }
    Ok(num / den)
}

fn ln_gamma(z: C) -> Result<C> {
    Ok(ln_gamma_float(FloatScalar(z))?.0)
}

fn wilson_weight(nu: C, nur: &[FloatScalar; 4], x: &[f64]) -> Result<C> {
    let n = x.len();
    let mut ln = C::new(0.0, 0.0);
    let i = C::i();
    for j in 0..n {
        for k in j + 1..n {
            for s in [x[j] + x[k], x[j] - x[k]] {
                ln += ln_gamma(nu + i * s)? + ln_gamma(nu - i * s)? + ln_recip_gamma_imag_pair(s);
            }
        }
        for nr in nur {
            ln += ln_gamma(nr.0 + i * x[j])? + ln_gamma(nr.0 - i * x[j])?;
        }
        ln += ln_recip_gamma_imag_pair(2.0 * x[j]);
    }
    Ok(exp_or_zero(ln))
}

fn hahn_weight(nu: C, plus: &[FloatScalar; 2], minus: &[FloatScalar; 2], x: &[f64]) -> Result<C> {
    let n = x.len();
    let mut ln = C::new(0.0, 0.0);
    let i = C::i();
    for j in 0..n {
        for k in j + 1..n {
            let s = x[j] - x[k];
            ln += ln_gamma(nu + i * s)? + ln_gamma(nu - i * s)? + ln_recip_gamma_imag_pair(s);
        }
        for p in plus {
            ln += ln_gamma(p.0 + i * x[j])?;
        }
        for m in minus {
            ln += ln_gamma(m.0 - i * x[j])?;
        }
    }
    Ok(exp_or_zero(ln))
}

fn exp_or_zero(ln: C) -> C {
    if ln.re == f64::NEG_INFINITY {
        C::new(0.0, 0.0)
    } else {
        ln.exp()
    }
}

fn jacobi_weight(nu: f64, nu0: f64, nu1: f64, x: &[f64]) -> f64 {
    let n = x.len();
    let mut acc = 1.0;
    for j in 0..n {
        for k in j + 1..n {
            acc *= ((0.5 * (x[j] + x[k])).sin() * (0.5 * (x[j] - x[k])).sin()).abs().powf(2.0 * nu);
        }
        acc *= (0.5 * x[j]).sin().abs().powf(2.0 * nu0) * (0.5 * x[j]).cos().abs().powf(2.0 * nu1);
    }
    acc
}

/// Nodes (as points `x`) and weights of a grid.
fn nodes(grid: &GridSpec) -> Vec<(Vec<f64>, f64)> {
    let n = grid.n;
    match grid.family {
        Family::AskeyWilson => {
            let h = 2.0 * PI / grid.points as f64;
            let line: Vec<(f64, f64)> = (0..grid.points).map(|k| (-PI + h * k as f64, h)).collect();
            tensor(&line, n)
        }
        Family::Wilson | Family::ContinuousHahn => {
            let order = grid.points / grid.panels;
            let (gx, gw) = gauss_legendre(order);
            let width = 2.0 * grid.radius / grid.panels as f64;
            let line: Vec<(f64, f64)> = (0..grid.panels)
                .flat_map(|p| {
                    let mid = -grid.radius + width * (p as f64 + 0.5);
                    gx.iter().zip(&gw).map(move |(x, w)| (mid + 0.5 * width * x, 0.5 * width * w)).collect::<Vec<_>>()
                })
                .collect();
            tensor(&line, n)
        }
        Family::Jacobi => {
            // x_1 = pi u_1, x_k = x_{k-1} u_k on the chamber, times its 2^n n! images
            let (gx, gw) = gauss_legendre(grid.points);
            let line: Vec<(f64, f64)> = gx.iter().zip(&gw).map(|(x, w)| (0.5 * (x + 1.0), 0.5 * w)).collect();
            let images = (1..=n).fold(1.0, |a, k| a * 2.0 * k as f64);
            tensor(&line, n)
                .into_iter()
                .map(|(u, w)| {
                    let mut x = Vec::with_capacity(n);
                    let mut jac = PI;
                    let mut prev = PI;
                    for (k, uk) in u.iter().enumerate() {
                        let xk = if k == 0 { PI * uk } else { prev * uk };
                        if k > 0 {
                            jac *= prev;
                        }
                        x.push(xk);
                        prev = xk;
                    }
                    (x, w * jac * images)
                })
                .collect()
        }
    }
}

fn tensor(line: &[(f64, f64)], n: usize) -> Vec<(Vec<f64>, f64)> {
    let mut out: Vec<(Vec<f64>, f64)> = vec![(Vec::new(), 1.0)];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|(x, w)| {
                line.iter().map(move |&(y, v)| {
                    let mut next = x.clone();
                    next.push(y);
                    (next, w * v)
                })
            })
            .collect();
    }
    out
}

fn pairwise_sum(mut parts: Vec<Vec<C>>) -> Vec<C> {
    while parts.len() > 1 {
        parts = parts
            .chunks(2)
            .map(|pair| match pair {
                [a, b] => a.iter().zip(b).map(|(x, y)| x + y).collect(),
                [a] => a.clone(),
                _ => unreachable!(),
            })
            .collect();
    }
    parts.pop().unwrap_or_default()
}

/// `G_ab = int f_a conj(f_b) Delta` over the grid.
pub fn gram(params: &FamilyParams, polys: &[SymPoly<FloatScalar>], grid: &GridSpec) -> Result<Vec<Vec<FloatScalar>>> {
    grid.validate()?;
    if grid.family != params.family() || grid.n != params.n() {
        return Err(MathError::Domain("grid does not match the parameter family or dimension".into()));
    }
    let weight = Weight::new(params, grid.tol)?;
    let kind = params.kind();
    let mut span: Vec<Partition> = polys.iter().flat_map(|p| p.support()).collect();
    span.sort();
    span.dedup();
    let coeffs: Vec<Vec<C>> =
        polys.iter().map(|p| span.iter().map(|mu| p.coeff(mu).to_complex()).collect()).collect();
    let m = polys.len();
    let pts = nodes(grid);
    let partial: Vec<Vec<C>> = pts
        .par_chunks(CHUNK)
        .map(|chunk| -> Result<Vec<C>> {
            let mut acc = vec![C::new(0.0, 0.0); m * m];
            for (x, w) in chunk {
                let dw = weight.value(x)? * w;
                if dw == 0.0 {
                    continue;
                }
                let point: Vec<FloatScalar> = x
                    .iter()
                    .map(|&xj| if kind.is_trig() { FloatScalar(C::from_polar(1.0, xj)) } else { FloatScalar::real(xj) })
                    .collect();
                let basis: Vec<C> =
                    basis_values(&span, &kind.basis_coordinates(&point)?).into_iter().map(|v| v.0).collect();
                let vals: Vec<C> = coeffs.iter().map(|c| c.iter().zip(&basis).map(|(a, b)| a * b).sum()).collect();
                for a in 0..m {
                    for b in 0..m {
                        acc[a * m + b] += vals[a] * vals[b].conj() * dw;
                    }
                }
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let total = pairwise_sum(partial);
    Ok((0..m).map(|a| (0..m).map(|b| FloatScalar(total[a * m + b])).collect()).collect())
}

pub fn inner_product_numeric(
    params: &FamilyParams,
    f: &SymPoly<FloatScalar>,
    g: &SymPoly<FloatScalar>,
    grid: &GridSpec,
) -> Result<FloatScalar> {
    Ok(gram(params, &[f.clone(), g.clone()], grid)?[0][1])
}

/// Largest change of a Gram matrix between a grid and its doubling, relative to the diagonal.
fn gram_with_monitor(
    params: &FamilyParams,
    polys: &[SymPoly<FloatScalar>],
    grid: &GridSpec,
) -> Result<(Vec<Vec<FloatScalar>>, f64)> {
    let coarse = gram(params, polys, grid)?;
    let fine = gram(params, polys, &grid.doubled())?;
    let m = polys.len();
    let mut change: f64 = 0.0;
    for a in 0..m {
        for b in 0..m {
            let scale = (fine[a][a].re() * fine[b][b].re()).sqrt();
            change = change.max((fine[a][b].0 - coarse[a][b].0).norm() / scale);
        }
    }
    Ok((fine, change))
}

/// Gram matrix of `p_mu`, `mu <= lambda_max`: off-diagonal defect and norm
/// ratios against [`norm_ratio_exact`].
pub fn orthogonality_report(params: &FamilyParams, lambda_max: &Partition, grid: &GridSpec) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("orthogonality", params.family()).with_lambda(lambda_max);
    report.conditions.self_dual = params.self_dual();
    let span = ideal(lambda_max);
    let basis = MonicBasis::new(params, lambda_max.size())?;
    let polys: Vec<SymPoly<FloatScalar>> =
        span.iter().map(|mu| Ok(basis.monic(mu)?.to_float())).collect::<Result<_>>()?;
    let (g, change) = gram_with_monitor(params, &polys, grid)?;
    if change > 10.0 * grid.tol {
        report.fail(ResidualTerm::new("grid doubling change", change, change));
    }
    let zero = span.iter().position(|mu| mu.is_zero()).expect("the ideal contains 0");
    let mut off: f64 = 0.0;
    let mut ratio: f64 = 0.0;
    for (a, la) in span.iter().enumerate() {
        for b in 0..span.len() {
            if a != b {
                off = off.max(g[a][b].abs() / (g[a][a].re() * g[b][b].re()).sqrt());
            }
        }
        let exact = norm_ratio_exact(params, la)?.to_complex();
        let numeric = g[a][a].0 / g[zero][zero].0;
        let defect = (numeric - exact).norm() / exact.norm();
        ratio = ratio.max(defect);
        if defect > NORM_RATIO_TOLERANCE {
            report.fail(ResidualTerm::new(format!("norm ratio {la}"), format!("{numeric} vs {exact}"), defect));
        }
    }
    let off_term = ResidualTerm::new("max off-diagonal", off, off);
    if off > OFFDIAGONAL_TOLERANCE {
        report.fail(off_term);
    } else {
        report.record(off_term);
    }
    report.record(ResidualTerm::new("max norm-ratio defect", ratio, ratio));
    report.record(ResidualTerm::new("<1,1>", g[zero][zero], g[zero][zero].abs()));
    if matches!(params.family(), Family::Wilson | Family::ContinuousHahn) {
        let edge: Vec<f64> = (0..params.n()).map(|j| if j == 0 { grid.radius } else { 1.0 / (j + 1) as f64 }).collect();
        let w = Weight::new(params, grid.tol)?.value(&edge)?;
        report.record(ResidualTerm::new("weight at truncation edge", w, w));
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
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(8);
        let int = |k: i32| x.iter().zip(&w).map(|(a, b)| a.powi(k) * b).sum::<f64>();
        assert!((int(0) - 2.0).abs() < 1e-14);
        assert!((int(14) - 2.0 / 15.0).abs() < 1e-14);
        assert!(int(7).abs() < 1e-14);
    }

    #[test]
    fn weight_examples() {
        let j = params(Family::Jacobi, 1, "nu0=1/2,nu1=1/2");
        let v = weight_value(&j, &[PI / 2.0]).unwrap();
        assert!((v.re() - 0.5).abs() < 1e-14);

        let aw = params(Family::AskeyWilson, 1, "q=1/2,t0=0,t1=0,t2=0,t3=0");
        let v = weight_value(&aw, &[PI / 2.0]).unwrap();
        // (e^{2ix}; q)(e^{-2ix}; q) = (-1; q)^2
        let expected = qpochhammer_inf_float(FloatScalar::real(-1.0), FloatScalar::real(0.5), 1e-16).unwrap().re().powi(2);
        assert!((v.re() - expected).abs() < 1e-10 * expected);

        let w = params(Family::Wilson, 2, "nu=1,nu0=1,nu1=1,nu2=1/2,nu3=3/2");
        assert_eq!(weight_value(&w, &[0.0, 1.0]).unwrap().re(), 0.0);
        assert!(weight_value(&w, &[0.3, 1.0]).unwrap().re() > 0.0);
    }

    #[test]
    fn weights_are_positive_inside() {
        let samples = [
            params(Family::AskeyWilson, 2, "q=1/2,t=1/2,t0=1/4,t1=1/2+1/3i,t2=1/2-1/3i,t3=-1/2"),
            params(Family::Wilson, 2, "nu=1/2,nu0=1,nu1=1/2+1i,nu2=1/2-1i,nu3=3/2"),
            params(Family::ContinuousHahn, 2, "nu=1,nu0p=1/2+1i,nu1p=1,nu0m=1/2-1i,nu1m=1"),
            params(Family::Jacobi, 2, "nu=1/2,nu0=1,nu1=3/2"),
        ];
        for p in &samples {
            let w = Weight::new(p, 1e-12).unwrap();
            for k in 0..20 {
                let x = [0.1 + 0.13 * k as f64, 0.05 + 0.07 * k as f64];
                assert!(w.value(&x).unwrap() > 0.0, "{:?} at {x:?}", p.family());
            }
        }
    }

    #[test]
    fn domain_is_enforced() {
        let aw = params(Family::AskeyWilson, 1, "q=1/2,t0=2,t1=0,t2=0,t3=0");
        assert!(matches!(weight_value(&aw, &[0.3]), Err(MathError::Domain(_))));
        let grid = GridSpec { points: 48, ..GridSpec::default_for(Family::Jacobi, 1) };
        assert!(grid.validate().is_err());
    }

    #[test]
    fn one_variable_orthogonality() {
        let samples = [
            params(Family::AskeyWilson, 1, "q=1/2,t0=1/2,t1=1/3,t2=-1/2,t3=1/5"),
            params(Family::Wilson, 1, "nu0=1,nu1=1/2,nu2=3/2,nu3=2"),
            params(Family::ContinuousHahn, 1, "nu0p=1/2+1/2i,nu1p=1,nu0m=1/2-1/2i,nu1m=1"),
            params(Family::Jacobi, 1, "nu0=1/2,nu1=3/2"),
        ];
        for p in &samples {
            let report = orthogonality_report(p, &part(&[3]), &GridSpec::default_for(p.family(), 1)).unwrap();
            assert!(report.pass, "{:?}: {:?}", p.family(), report.residual_terms);
        }
    }

    #[test]
    fn two_variable_orthogonality() {
        let samples = [
            params(Family::AskeyWilson, 2, "q=1/2,t=1/2,t0=1/4,t1=1/2,t2=1/2,t3=1/2"),
            params(Family::Jacobi, 2, "nu=1/2,nu0=1/2,nu1=3/2"),
        ];
        for p in &samples {
            let report = orthogonality_report(p, &part(&[2, 1]), &GridSpec::default_for(p.family(), 2)).unwrap();
            assert!(report.pass, "{:?}: {:?}", p.family(), report.residual_terms);
        }
    }

    #[test]
    fn trivial_gram() {
        let p = params(Family::Jacobi, 1, "nu0=1,nu1=1");
        let report = orthogonality_report(&p, &part(&[0]), &GridSpec::default_for(Family::Jacobi, 1)).unwrap();
        assert!(report.pass);
    }
}
