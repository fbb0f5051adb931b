//! The commuting difference operators `D_r` (and the second order Jacobi
//! differential operator), their eigenvalues, and their matrices on the
//! monomial basis.

mod models;
pub(crate) mod uv;

use std::collections::BTreeMap;

use crate::error::{MathError, Result};
use crate::exactnum::Scalar;
use crate::params::{FamilyParams, ParamSet};
use crate::partitions::{dominance_leq, partitions_up_to, Partition};
use crate::sympoly::{Interpolator, SymPoly};

/// `E_r(x; y) = sum_{|J| <= r} (-1)^{r-|J|} prod_J x_j h_{r-|J|}(y_r, .., y_n)`,
/// with `y` holding the `n - r + 1` entries `y_r..y_n`.
pub fn er_kernel<S: Scalar>(x: &[S], y: &[S], r: usize) -> Result<S> {
    let n = x.len();
    if r == 0 || r > n {
        return Err(MathError::DimensionMismatch { expected: n, found: r });
    }
    if y.len() != n - r + 1 {
        return Err(MathError::DimensionMismatch { expected: n - r + 1, found: y.len() });
    }
    let e = elementary(x, r);
    let h = complete(y, r);
    Ok((0..=r).fold(S::zero(), |acc, k| {
        let term = e[k].clone() * &h[r - k];
        if (r - k) % 2 == 1 {
            acc - term
        } else {
            acc + term
        }
    }))
}

/// `e_0..e_max` of `x`.
pub(crate) fn elementary<S: Scalar>(x: &[S], max: usize) -> Vec<S> {
    let mut e = vec![S::zero(); max + 1];
    e[0] = S::one();
    for xi in x {
        for k in (1..=max).rev() {
            e[k] = e[k].clone() + e[k - 1].clone() * xi;
        }
    }
    e
}

/// `h_0..h_max` of `y`.
pub(crate) fn complete<S: Scalar>(y: &[S], max: usize) -> Vec<S> {
    let mut h = vec![S::zero(); max + 1];
    h[0] = S::one();
    for yi in y {
        for k in 1..=max {
            h[k] = h[k].clone() + h[k - 1].clone() * yi;
        }
    }
    h
}

/// Eigenvalue of `D_r` on `p_lambda` (AW: of the rationalized operator).
pub fn eigenvalue<S: Scalar>(params: &FamilyParams<S>, r: usize, lambda: &Partition) -> Result<S> {
    let n = params.n();
    if lambda.len() != n {
        return Err(MathError::DimensionMismatch { expected: n, found: lambda.len() });
    }
    if r == 0 || r > n {
        return Err(MathError::DimensionMismatch { expected: n, found: r });
    }
    match params.set() {
        ParamSet::AskeyWilson { q, t, .. } => {
            let (tp, tm) = (params.tau_plus(), params.tau_minus());
            let x: Vec<S> = (0..n)
                .map(|j| {
                    let l = lambda.parts()[j] as i64;
                    tp[j].clone() * q.powi(l).expect("q != 0") + tm[j].clone() * q.powi(-l).expect("q != 0")
                })
                .collect();
            let y: Vec<S> = (r - 1..n).map(|j| tp[j].clone() + &tm[j]).collect();
            let scale = t.powi(-((r * (r - 1) / 2) as i64)).ok_or_else(|| MathError::Pole("t = 0".into()))?;
            Ok(scale * er_kernel(&x, &y, r)?)
        }
        _ => {
            let rho = params.rho().expect("additive family");
            let x: Vec<S> = rho
                .iter()
                .zip(lambda.parts())
                .map(|(p, &l)| {
                    let s = p.clone() + S::from_i64(l as i64);
                    s.clone() * s
                })
                .collect();
            let y: Vec<S> = rho[r - 1..].iter().map(|p| p.clone() * p).collect();
            er_kernel(&x, &y, r)
        }
    }
}

/// `D_r` of one family, as a point evaluator plus its basis matrix.
#[derive(Clone, Debug)]
pub struct DifferenceOperator<S = crate::ExactScalar> {
    params: FamilyParams<S>,
    r: usize,
}

impl<S: Scalar> DifferenceOperator<S> {
    pub fn new(params: &FamilyParams<S>, r: usize) -> Result<Self> {
        if r == 0 || r > params.n() {
            return Err(MathError::DimensionMismatch { expected: params.n(), found: r });
        }
        if matches!(params.set(), ParamSet::Jacobi { .. }) && r != 1 {
            return Err(MathError::Unsupported("Jacobi operators exist only for r = 1".into()));
        }
        Ok(DifferenceOperator { params: params.clone(), r })
    }

    pub fn params(&self) -> &FamilyParams<S> {
        &self.params
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn eigenvalue(&self, lambda: &Partition) -> Result<S> {
        eigenvalue(&self.params, self.r, lambda)
    }

    /// `(D m_mu)(point)` for each `mu` in `span`.
    pub fn act_on_basis(&self, span: &[Partition], point: &[S]) -> Result<Vec<S>> {
        models::act_on_basis(&self.params, self.r, span, point)
    }

    /// `(D f)(point)`.
    pub fn act(&self, f: &SymPoly<S>, point: &[S]) -> Result<S> {
        let support = f.support();
        let vals = self.act_on_basis(&support, point)?;
        Ok(support.iter().zip(vals).fold(S::zero(), |acc, (mu, v)| acc + f.coeff(mu) * v))
    }

    /// Matrix of `D` on all `m_mu` with `|mu| <= max_size`, certified
    /// triangular with the eigenvalues on the diagonal.
    pub fn matrix(&self, max_size: u32) -> Result<OperatorMatrix<S>> {
        let span = partitions_up_to(self.params.n(), max_size);
        let m = match self.expand_span(&span, &span) {
            Err(MathError::ResidualNonzero(_)) => {
                let wider = partitions_up_to(self.params.n(), max_size + 1);
                self.expand_span(&span, &wider)?
            }
            other => other?,
        };
        m.check_triangular()?;
        for lambda in &m.span {
            let diag = m.entry(lambda, lambda);
            let e = self.eigenvalue(lambda)?;
            let scale = diag.magnitude().max(e.magnitude());
            if !(diag - &e).negligible(scale) {
                return Err(MathError::DiagonalMismatch { lambda: lambda.to_string() });
            }
        }
        Ok(m)
    }

    /// Images of the `m_nu`, `nu` in `sources`, expanded over `target` (a
    /// superset of `sources`); only the `sources` rows and columns are kept
    /// once the images are shown to stay inside them.
    fn expand_span(&self, sources: &[Partition], target: &[Partition]) -> Result<OperatorMatrix<S>> {
        let n = self.params.n();
        let (interp, rows) =
            Interpolator::select(self.params.kind(), n, target, |pt| self.act_on_basis(sources, pt).ok())?;
        let mut entries = Vec::with_capacity(sources.len());
        for (col, nu) in sources.iter().enumerate() {
            let values: Vec<S> = rows.iter().map(|row| row[col].clone()).collect();
            let coeffs = interp.solve_coeffs(&values)?;
            let mut row = vec![S::zero(); sources.len()];
            for (mu, c) in target.iter().zip(coeffs) {
                match sources.iter().position(|s| s == mu) {
                    Some(k) => row[k] = c,
                    None if c.negligible(1.0) => {}
                    None => return Err(MathError::TriangularityViolation { from: nu.to_string(), to: mu.to_string() }),
                }
            }
            entries.push(row);
        }
        Ok(OperatorMatrix::from_rows(sources.to_vec(), entries))
    }

    /// `D f`, expanded over the ideal generated by the support of `f`
    /// (enlarged by one size layer if that fails).
    pub fn apply(&self, f: &SymPoly<S>) -> Result<SymPoly<S>> {
        let n = self.params.n();
        let support = f.support();
        let max = support.iter().map(|p| p.size()).max().unwrap_or(0);
        let mut span = crate::partitions::ideal_union(&support);
        if span.is_empty() {
            span.push(Partition::zero(n));
        }
        let run = |span: &[Partition]| -> Result<SymPoly<S>> {
            let (interp, values) = Interpolator::select(self.params.kind(), n, span, |pt| self.act(f, pt).ok())?;
            interp.solve(&values)
        };
        match run(&span) {
            Err(MathError::ResidualNonzero(_)) => {
                let mut wider = span.clone();
                wider.extend(partitions_up_to(n, max + 1).into_iter().filter(|p| p.size() == max + 1));
                wider.sort_by(crate::partitions::graded_lex_cmp);
                wider.dedup();
                run(&wider)
            }
            other => other,
        }
    }
}

/// `entries[nu][mu]` is the coefficient of `m_mu` in `D m_nu`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix<S> {
    span: Vec<Partition>,
    index: BTreeMap<Partition, usize>,
    entries: Vec<Vec<S>>,
}

impl<S: Scalar> OperatorMatrix<S> {
    fn from_rows(span: Vec<Partition>, entries: Vec<Vec<S>>) -> Self {
        let index = span.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        OperatorMatrix { span, index, entries }
    }

    pub fn span(&self) -> &[Partition] {
        &self.span
    }

    pub fn contains(&self, p: &Partition) -> bool {
        self.index.contains_key(p)
    }

    pub fn entry(&self, nu: &Partition, mu: &Partition) -> S {
        match (self.index.get(nu), self.index.get(mu)) {
            (Some(&a), Some(&b)) => self.entries[a][b].clone(),
            _ => S::zero(),
        }
    }

    fn check_triangular(&self) -> Result<()> {
        for (a, nu) in self.span.iter().enumerate() {
            for (b, mu) in self.span.iter().enumerate() {
                let c = &self.entries[a][b];
                let scale = self.entries[a].iter().map(|x| x.magnitude()).fold(1.0, f64::max);
                if !c.negligible(scale) && !dominance_leq(mu, nu)? {
                    return Err(MathError::TriangularityViolation { from: nu.to_string(), to: mu.to_string() });
                }
            }
        }
        Ok(())
    }

    /// `D m_nu` as a polynomial.
    pub fn image(&self, nu: &Partition, kind: crate::VariableKind) -> Result<SymPoly<S>> {
        let a = *self.index.get(nu).ok_or_else(|| MathError::InvalidPartition(format!("{nu} outside the matrix span")))?;
        SymPoly::from_terms(kind, nu.len(), self.span.iter().cloned().zip(self.entries[a].iter().cloned()))
    }

    /// `D f` for `f` supported on the span.
    pub fn apply(&self, f: &SymPoly<S>) -> Result<SymPoly<S>> {
        let mut out = SymPoly::zero(f.kind(), f.n());
        for (nu, c) in f.terms() {
            let a = *self.index.get(nu).ok_or_else(|| MathError::InvalidPartition(format!("{nu} outside the matrix span")))?;
            for (mu, e) in self.span.iter().zip(&self.entries[a]) {
                if !e.is_zero() {
                    out.add_term(mu.clone(), c.clone() * e);
                }
            }
        }
        Ok(out)
    }

    /// The matrix of `self` after `first` (`self . first`), on the common span.
    pub fn after(&self, first: &OperatorMatrix<S>) -> Result<OperatorMatrix<S>> {
        if self.span != first.span {
            return Err(MathError::DimensionMismatch { expected: self.span.len(), found: first.span.len() });
        }
        let m = self.span.len();
        let entries = (0..m)
            .map(|nu| {
                (0..m)
                    .map(|mu| (0..m).fold(S::zero(), |acc, k| acc + first.entries[nu][k].clone() * &self.entries[k][mu]))
                    .collect()
            })
            .collect();
        Ok(OperatorMatrix::from_rows(self.span.clone(), entries))
    }

    /// Largest entry modulus of `self - other`.
    pub fn max_distance(&self, other: &OperatorMatrix<S>) -> f64 {
        self.entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .map(|(a, b)| (a.clone() - b).magnitude())
            .fold(0.0, f64::max)
    }
}

/// `D_r f`, expanded over `span` (the caller's dominance ideal containing the support of `f`).
pub fn apply_difference_operator<S: Scalar>(
    params: &FamilyParams<S>,
    r: usize,
    f: &SymPoly<S>,
    span: &[Partition],
) -> Result<SymPoly<S>> {
    let op = DifferenceOperator::new(params, r)?;
    if let Some(mu) = f.support().into_iter().find(|mu| !span.contains(mu)) {
        return Err(MathError::InvalidPartition(format!("support element {mu} outside the span")));
    }
    let (interp, values) = Interpolator::select(params.kind(), params.n(), span, |pt| op.act(f, pt).ok())?;
    interp.solve(&values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ExactScalar;
    use crate::params::Family;
    use crate::partitions::ideal;
    use crate::sympoly::VariableKind;

    fn ex(s: &str) -> ExactScalar {
        s.parse().unwrap()
    }

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(er_kernel(&[ex("5")], &[ex("3")], 1).unwrap(), ex("2"));
        let (a, b, c, d) = (ex("2"), ex("7"), ex("1/3"), ex("5"));
        let got = er_kernel(&[a.clone(), b.clone()], &[c.clone(), d.clone()], 1).unwrap();
        assert_eq!(got, a.clone() + &b - &c - &d);
        let y2 = ex("3/4");
        let got = er_kernel(&[a.clone(), b.clone()], std::slice::from_ref(&y2), 2).unwrap();
        assert_eq!(got, a.clone() * &b - (a + &b) * &y2 + y2.clone() * &y2);
        assert!(er_kernel(&[ex("1")], &[ex("1"), ex("2")], 1).is_err());
    }

    #[test]
    fn eigenvalue_examples() {
        let w = FamilyParams::parse(Family::Wilson, 1, "nu0=1/2,nu1=1/2,nu2=1,nu3=1").unwrap();
        assert_eq!(eigenvalue(&w, 1, &p(&[2])).unwrap(), ex("8"));
        assert_eq!(eigenvalue(&w, 1, &p(&[0])).unwrap(), ex("0"));
        let j = FamilyParams::parse(Family::Jacobi, 2, "nu=1,nu0=1,nu1=1/2").unwrap();
        assert_eq!(eigenvalue(&j, 1, &p(&[1, 0])).unwrap(), ex("9/2"));
        let aw = FamilyParams::parse(Family::AskeyWilson, 2, "q=1/3,t=1/2,t0=1/2,t1=1/3,t2=1/5,t3=2/7").unwrap();
        for r in 1..=2 {
            assert_eq!(eigenvalue(&aw, r, &p(&[0, 0])).unwrap(), ex("0"));
        }
        // second order formula: sum_j S t^{2n-j-1}(q^l - 1) + t^{j-1}(q^-l - 1)
        let s = ex("1/2") * ex("1/3") * ex("1/5") * ex("2/7") * ex("3");
        let want = s.clone() * ex("1/4") * (ex("1/9") - ex("1")) + (ex("9") - ex("1"))
            + s * ex("1/2") * (ex("1/3") - ex("1")) + ex("1/2") * (ex("3") - ex("1"));
        assert_eq!(eigenvalue(&aw, 1, &p(&[2, 1])).unwrap(), want);
    }

    #[test]
    fn constants_are_annihilated() {
        let sets = [
            FamilyParams::parse(Family::AskeyWilson, 2, "q=1/3,t=1/2,t0=1/2,t1=1/3,t2=1/5,t3=2/7").unwrap(),
            FamilyParams::parse(Family::Wilson, 2, "nu=1/2,nu0=1/2,nu1=1/3,nu2=1,nu3=2").unwrap(),
            FamilyParams::parse(Family::ContinuousHahn, 2, "nu=1/2,nu0p=1/2+1*i,nu1p=1,nu0m=1/2-1*i,nu1m=1").unwrap(),
            FamilyParams::parse(Family::Jacobi, 2, "nu=1/2,nu0=1/2,nu1=3/2").unwrap(),
        ];
        for params in &sets {
            let one = SymPoly::constant(params.kind(), 2, ex("1"));
            for r in 1..=if params.family() == Family::Jacobi { 1 } else { 2 } {
                let d = apply_difference_operator(params, r, &one, &[p(&[0, 0])]).unwrap();
                assert!(d.is_zero(), "{:?} r={r}", params.family());
            }
        }
    }

    #[test]
    fn jacobi_first_monomial() {
        let j = FamilyParams::parse(Family::Jacobi, 1, "nu0=1,nu1=1/2").unwrap();
        let m1 = SymPoly::monomial(VariableKind::JTrig, p(&[1]));
        let d = apply_difference_operator(&j, 1, &m1, &ideal(&p(&[1]))).unwrap();
        // (1 + nu0 + nu1) m_1 + 2 (nu0 - nu1)
        assert_eq!(d.coeff(&p(&[1])), ex("5/2"));
        assert_eq!(d.coeff(&p(&[0])), ex("1"));
    }

    #[test]
    fn matrices_are_triangular_with_eigenvalue_diagonal() {
        let sets = [
            FamilyParams::parse(Family::AskeyWilson, 2, "q=1/3,t=1/2,t0=1/2,t1=1/3,t2=1/5,t3=2/7").unwrap(),
            FamilyParams::parse(Family::Wilson, 2, "nu=1/2,nu0=1/2,nu1=1/3,nu2=1,nu3=2").unwrap(),
            FamilyParams::parse(Family::ContinuousHahn, 2, "nu=1/2,nu0p=1/2+1*i,nu1p=1,nu0m=1/2-1*i,nu1m=1").unwrap(),
            FamilyParams::parse(Family::Jacobi, 2, "nu=1/2,nu0=1/2,nu1=3/2").unwrap(),
        ];
        for params in &sets {
            let rmax = if params.family() == Family::Jacobi { 1 } else { 2 };
            for r in 1..=rmax {
                let m = DifferenceOperator::new(params, r).unwrap().matrix(3).unwrap();
                assert_eq!(m.span().len(), 6);
            }
        }
    }

    #[test]
    fn operators_commute_in_two_variables() {
        let params = FamilyParams::parse(Family::Wilson, 2, "nu=1/2,nu0=1/2,nu1=1/3,nu2=1,nu3=2").unwrap();
        let d1 = DifferenceOperator::new(&params, 1).unwrap().matrix(2).unwrap();
        let d2 = DifferenceOperator::new(&params, 2).unwrap().matrix(2).unwrap();
        assert_eq!(d1.after(&d2).unwrap(), d2.after(&d1).unwrap());
    }

    #[test]
    fn jacobi_higher_operators_unsupported() {
        let j = FamilyParams::parse(Family::Jacobi, 2, "nu=1/2,nu0=1/2,nu1=3/2").unwrap();
        assert!(matches!(DifferenceOperator::new(&j, 2), Err(MathError::Unsupported(_))));
        assert!(eigenvalue(&j, 2, &p(&[1, 1])).is_ok());
    }
}
