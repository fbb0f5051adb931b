//! Symmetric polynomials as coefficient maps over the monomial basis
//! `m_lambda(X_1, .., X_n)`, where the basis coordinates X_j depend on the
//! variable kind (`z + 1/z`, `x^2` or `x`), plus exact interpolation of
//! black-box symmetric functions back into that basis.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{MathError, Result};
use crate::exactnum::{ExactScalar, FloatScalar, Scalar};
use crate::partitions::{graded_lex_cmp, orbit, Partition};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum VariableKind {
    #[serde(rename = "AW_TRIG")]
    AwTrig,
    #[serde(rename = "J_TRIG")]
    JTrig,
    #[serde(rename = "W_EVEN")]
    WEven,
    #[serde(rename = "CH_PLAIN")]
    ChPlain,
}

impl VariableKind {
    /// Trig kinds take multiplicative coordinates `z_j = e^{i alpha x_j}`.
    pub fn is_trig(self) -> bool {
        matches!(self, VariableKind::AwTrig | VariableKind::JTrig)
    }

    /// Basis coordinate X_j of one point coordinate.
    pub fn basis_coordinate<S: Scalar>(self, c: &S) -> Result<S> {
        match self {
            VariableKind::AwTrig | VariableKind::JTrig => {
                let inv = c.inv().ok_or_else(|| MathError::Pole("zero coordinate for a trig kind".into()))?;
                Ok(c.clone() + inv)
            }
            VariableKind::WEven => Ok(c.clone() * c),
            VariableKind::ChPlain => Ok(c.clone()),
        }
    }

    pub fn basis_coordinates<S: Scalar>(self, point: &[S]) -> Result<Vec<S>> {
        point.iter().map(|c| self.basis_coordinate(c)).collect()
    }
}

/// A point at which a symmetric function is evaluated: `z` for trig kinds, `x` otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalPoint<S>(pub Vec<S>);

/// Symmetric polynomial `sum_lambda c_lambda m_lambda`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct SymPoly<S> {
    kind: VariableKind,
    n: usize,
    coeffs: BTreeMap<Partition, S>,
}

/// Powers `X_j^k` for `k <= max_degree`, shared by many basis evaluations.
struct PowerTable<S> {
    pows: Vec<Vec<S>>,
}

impl<S: Scalar> PowerTable<S> {
    fn new(xs: &[S], max_degree: u32) -> Self {
        let pows = xs
            .iter()
            .map(|x| {
                let mut row = Vec::with_capacity(max_degree as usize + 1);
                row.push(S::one());
                for k in 1..=max_degree as usize {
                    let next = row[k - 1].clone() * x;
                    row.push(next);
                }
                row
            })
            .collect();
        PowerTable { pows }
    }

    fn get(&self, j: usize, e: i64) -> S {
        if e < 0 {
            S::zero()
        } else {
            self.pows[j][e as usize].clone()
        }
    }

    fn monomial(&self, exps: &[u32]) -> S {
        let mut acc = S::one();
        for (j, &e) in exps.iter().enumerate() {
            if e > 0 {
                acc = acc * &self.pows[j][e as usize];
            }
        }
        acc
    }
}

fn max_part(parts: &[Partition]) -> u32 {
    parts.iter().map(|p| p.parts().first().copied().unwrap_or(0)).max().unwrap_or(0)
}

/// `m_mu(X)` for every `mu` in `span`.
pub fn basis_values<S: Scalar>(span: &[Partition], xs: &[S]) -> Vec<S> {
    let table = PowerTable::new(xs, max_part(span));
    span.iter()
        .map(|mu| orbit(mu.parts()).iter().fold(S::zero(), |acc, e| acc + table.monomial(e)))
        .collect()
}

/// Value, gradient and diagonal second derivatives of `m_mu` in the basis coordinates.
pub struct BasisJet<S> {
    pub value: S,
    pub d1: Vec<S>,
    pub d2: Vec<S>,
}

pub fn basis_jets<S: Scalar>(span: &[Partition], xs: &[S]) -> Vec<BasisJet<S>> {
    let n = xs.len();
    let table = PowerTable::new(xs, max_part(span));
    span.iter()
        .map(|mu| {
            let mut jet = BasisJet { value: S::zero(), d1: vec![S::zero(); n], d2: vec![S::zero(); n] };
            for e in orbit(mu.parts()) {
                jet.value = jet.value.clone() + table.monomial(&e);
                for j in 0..n {
                    let ej = e[j] as i64;
                    if ej == 0 {
                        continue;
                    }
                    let mut rest = S::one();
                    for (k, &ek) in e.iter().enumerate() {
                        if k != j && ek > 0 {
                            rest = rest * table.get(k, ek as i64);
                        }
                    }
                    jet.d1[j] = jet.d1[j].clone() + S::from_i64(ej) * table.get(j, ej - 1) * &rest;
                    if ej >= 2 {
                        jet.d2[j] = jet.d2[j].clone() + S::from_i64(ej * (ej - 1)) * table.get(j, ej - 2) * &rest;
                    }
                }
            }
            jet
        })
        .collect()
}

fn binomial(n: u32, k: u32) -> i64 {
    let mut acc: i64 = 1;
    for i in 0..k as i64 {
        acc = acc * (n as i64 - i) / (i + 1);
    }
    acc
}

impl<S: Scalar> SymPoly<S> {
    pub fn zero(kind: VariableKind, n: usize) -> Self {
        SymPoly { kind, n, coeffs: BTreeMap::new() }
    }

    pub fn constant(kind: VariableKind, n: usize, c: S) -> Self {
        let mut p = Self::zero(kind, n);
        p.add_term(Partition::zero(n), c);
        p
    }

    pub fn monomial(kind: VariableKind, lambda: Partition) -> Self {
        let n = lambda.len();
        let mut p = Self::zero(kind, n);
        p.add_term(lambda, S::one());
        p
    }

    pub fn from_terms(kind: VariableKind, n: usize, terms: impl IntoIterator<Item = (Partition, S)>) -> Result<Self> {
        let mut p = Self::zero(kind, n);
        for (lambda, c) in terms {
            if lambda.len() != n {
                return Err(MathError::DimensionMismatch { expected: n, found: lambda.len() });
            }
            p.add_term(lambda, c);
        }
        Ok(p)
    }

    pub fn kind(&self) -> VariableKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &S)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, lambda: &Partition) -> S {
        self.coeffs.get(lambda).cloned().unwrap_or_else(S::zero)
    }

    pub fn support(&self) -> Vec<Partition> {
        let mut s: Vec<Partition> = self.coeffs.keys().cloned().collect();
        s.sort_by(graded_lex_cmp);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, lambda: Partition, c: S) {
        let v = match self.coeffs.remove(&lambda) {
            Some(old) => old + c,
            None => c,
        };
        if !v.is_zero() {
            self.coeffs.insert(lambda, v);
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(MathError::DimensionMismatch { expected: self.n, found: other.n });
        }
        if self.kind != other.kind {
            return Err(MathError::Unsupported(format!("mixing kinds {:?} and {:?}", self.kind, other.kind)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.kind, self.n);
        for (k, v) in &self.coeffs {
            out.add_term(k.clone(), v.clone() * c);
        }
        out
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> SymPoly<T> {
        let mut out = SymPoly::zero(self.kind, self.n);
        for (k, v) in &self.coeffs {
            out.add_term(k.clone(), f(v));
        }
        out
    }

    pub fn with_kind(&self, kind: VariableKind) -> Self {
        SymPoly { kind, n: self.n, coeffs: self.coeffs.clone() }
    }

    /// Evaluation at basis coordinates X.
    pub fn eval_basis(&self, xs: &[S]) -> Result<S> {
        if xs.len() != self.n {
            return Err(MathError::DimensionMismatch { expected: self.n, found: xs.len() });
        }
        let support: Vec<Partition> = self.coeffs.keys().cloned().collect();
        let vals = basis_values(&support, xs);
        Ok(support.iter().zip(vals).fold(S::zero(), |acc, (k, v)| acc + v * &self.coeffs[k]))
    }

    /// Evaluation at a point (`z` for trig kinds, `x` otherwise).
    pub fn eval(&self, point: &[S]) -> Result<S> {
        self.eval_basis(&self.kind.basis_coordinates(point)?)
    }

    /// Exact product, via orbit expansion: the coefficient of `m_nu` in a
    /// product equals the coefficient of the monomial `X^nu`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.kind, self.n);
        for (a, ca) in &self.coeffs {
            let orbit_a = orbit(a.parts());
            for (b, cb) in &other.coeffs {
                let c = ca.clone() * cb;
                let mut hits: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
                for ea in &orbit_a {
                    for eb in orbit(b.parts()) {
                        let sum: Vec<u32> = ea.iter().zip(&eb).map(|(x, y)| x + y).collect();
                        if sum.windows(2).all(|w| w[0] >= w[1]) {
                            *hits.entry(sum).or_insert(0) += 1;
                        }
                    }
                }
                for (nu, count) in hits {
                    out.add_term(Partition::new(nu).expect("sorted"), c.clone() * S::from_i64(count));
                }
            }
        }
        Ok(out)
    }

    /// Re-expansion under the affine change `X_j = a + b Y_j`, returned in `new_kind`.
    pub fn substitute_affine(&self, a: &S, b: &S, new_kind: VariableKind) -> Self {
        let mut out = SymPoly::zero(new_kind, self.n);
        let degree = max_part(&self.support());
        let a_pows: Vec<S> = std::iter::successors(Some(S::one()), |p| Some(p.clone() * a)).take(degree as usize + 1).collect();
        let b_pows: Vec<S> = std::iter::successors(Some(S::one()), |p| Some(p.clone() * b)).take(degree as usize + 1).collect();
        for (mu, c) in &self.coeffs {
            for e in orbit(mu.parts()) {
                // all weakly decreasing k with k_j <= e_j
                let mut stack: Vec<(Vec<u32>, S)> = vec![(Vec::new(), c.clone())];
                while let Some((prefix, acc)) = stack.pop() {
                    let j = prefix.len();
                    if j == self.n {
                        out.add_term(Partition::new(prefix).expect("decreasing"), acc);
                        continue;
                    }
                    let cap = if j == 0 { e[0] } else { prefix[j - 1].min(e[j]) };
                    for k in 0..=cap {
                        let f = S::from_i64(binomial(e[j], k)) * &a_pows[(e[j] - k) as usize] * &b_pows[k as usize];
                        let mut next = prefix.clone();
                        next.push(k);
                        stack.push((next, acc.clone() * f));
                    }
                }
            }
        }
        out
    }

    /// Largest coefficient modulus of `self - other` (float-valued).
    pub fn max_coeff_distance(&self, other: &Self) -> f64 {
        let mut keys: Vec<&Partition> = self.coeffs.keys().chain(other.coeffs.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .map(|k| (self.coeff(k) - other.coeff(k)).magnitude())
            .fold(0.0, f64::max)
    }
}

impl SymPoly<ExactScalar> {
    pub fn to_float(&self) -> SymPoly<FloatScalar> {
        self.map_coeffs(FloatScalar::from_exact)
    }
}

#[derive(Serialize)]
struct TermJson<'a, S> {
    partition: &'a Partition,
    value: String,
    #[serde(skip)]
    _p: std::marker::PhantomData<S>,
}

impl<S: Scalar> Serialize for SymPoly<S> {
    fn serialize<Ser: serde::Serializer>(&self, ser: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        use serde::ser::SerializeStruct;
        let mut keys: Vec<&Partition> = self.coeffs.keys().collect();
        keys.sort_by(|a, b| graded_lex_cmp(b, a));
        let terms: Vec<TermJson<S>> = keys
            .into_iter()
            .map(|k| TermJson { partition: k, value: self.coeffs[k].to_string(), _p: std::marker::PhantomData })
            .collect();
        let mut st = ser.serialize_struct("SymPoly", 3)?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("coeffs", &terms)?;
        st.end()
    }
}

const MAX_ATTEMPTS: usize = 6;
const EXTRA_CANDIDATES: usize = 64;

/// A solved interpolation system for one span: `|span|` points plus one check point.
#[derive(Clone, Debug)]
pub struct Interpolator<S> {
    kind: VariableKind,
    n: usize,
    span: Vec<Partition>,
    points: Vec<Vec<S>>,
    inverse: Vec<Vec<S>>,
    check_basis: Vec<S>,
}

impl<S: Scalar> Interpolator<S> {
    /// Chooses points from the deterministic sequence. `prepare` may reject a
    /// point (returning `None`, e.g. at an operator pole) or attach data to it.
    pub fn select<T>(
        kind: VariableKind,
        n: usize,
        span: &[Partition],
        mut prepare: impl FnMut(&[S]) -> Option<T>,
    ) -> Result<(Self, Vec<T>)> {
        let size = span.len();
        for salt in 0..MAX_ATTEMPTS {
            let mut points: Vec<Vec<S>> = Vec::new();
            let mut payloads: Vec<T> = Vec::new();
            let mut rows: Vec<Vec<S>> = Vec::new();
            for seq in 0..size + 1 + EXTRA_CANDIDATES {
                if points.len() == size + 1 {
                    break;
                }
                let pt: Vec<S> = (0..n).map(|j| S::sample_coordinate(kind.is_trig(), seq, j, salt)).collect();
                let Ok(xs) = kind.basis_coordinates(&pt) else { continue };
                let Some(payload) = prepare(&pt) else { continue };
                rows.push(basis_values(span, &xs));
                points.push(pt);
                payloads.push(payload);
            }
            if points.len() < size + 1 {
                continue;
            }
            let check_basis = rows.pop().expect("size + 1 rows");
            let Some(inverse) = S::invert_matrix(&rows) else { continue };
            return Ok((Interpolator { kind, n, span: span.to_vec(), points, inverse, check_basis }, payloads));
        }
        Err(MathError::SingularSystem { attempts: MAX_ATTEMPTS })
    }

    pub fn span(&self) -> &[Partition] {
        &self.span
    }

    /// The `|span| + 1` points; the last is the check point.
    pub fn points(&self) -> &[Vec<S>] {
        &self.points
    }

    /// Coefficients reproducing `values` (one per point, check point last).
    pub fn solve(&self, values: &[S]) -> Result<SymPoly<S>> {
        let coeffs = self.solve_coeffs(values)?;
        SymPoly::from_terms(self.kind, self.n, self.span.iter().cloned().zip(coeffs))
    }

    /// Like [`Interpolator::solve`], aligned with `span()`.
    pub fn solve_coeffs(&self, values: &[S]) -> Result<Vec<S>> {
        let size = self.span.len();
        if values.len() != size + 1 {
            return Err(MathError::DimensionMismatch { expected: size + 1, found: values.len() });
        }
        let coeffs: Vec<S> = (0..size)
            .map(|i| (0..size).fold(S::zero(), |acc, k| acc + self.inverse[i][k].clone() * &values[k]))
            .collect();
        let predicted = coeffs.iter().zip(&self.check_basis).fold(S::zero(), |acc, (c, b)| acc + c.clone() * b);
        let scale = values.iter().map(|v| v.magnitude()).fold(1.0, f64::max);
        let residual = predicted - &values[size];
        if !residual.negligible(scale) {
            return Err(MathError::ResidualNonzero(format!(
                "span of {} partitions, |residual| ~ {:e}",
                size,
                residual.magnitude()
            )));
        }
        Ok(coeffs)
    }
}

/// The unique expansion of `f` over `span`, certified at one extra point.
pub fn expand_in_msym<S: Scalar>(
    f: impl Fn(&[S]) -> Result<S>,
    span: &[Partition],
    kind: VariableKind,
    n: usize,
) -> Result<SymPoly<S>> {
    let (interp, values) = Interpolator::select(kind, n, span, |pt| f(pt).ok())?;
    interp.solve(&values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::ideal;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn ex(s: &str) -> ExactScalar {
        s.parse().unwrap()
    }

    #[test]
    fn eval_examples() {
        let one = SymPoly::constant(VariableKind::AwTrig, 2, ex("1"));
        assert_eq!(one.eval(&[ex("2"), ex("3")]).unwrap(), ex("1"));
        let m10 = SymPoly::<ExactScalar>::monomial(VariableKind::AwTrig, p(&[1, 0]));
        assert_eq!(m10.eval(&[ex("2"), ex("3")]).unwrap(), ex("35/6"));
        let w = SymPoly::<ExactScalar>::monomial(VariableKind::WEven, p(&[1]));
        assert_eq!(w.eval(&[ex("3")]).unwrap(), ex("9"));
        assert!(m10.eval(&[ex("0"), ex("3")]).is_err());
    }

    #[test]
    fn expand_examples() {
        let seven = expand_in_msym(|_| Ok(ex("7")), &[p(&[0, 0])], VariableKind::AwTrig, 2).unwrap();
        assert_eq!(seven, SymPoly::constant(VariableKind::AwTrig, 2, ex("7")));

        let f = SymPoly::from_terms(VariableKind::AwTrig, 2, [(p(&[1, 1]), ex("1")), (p(&[0, 0]), ex("2"))]).unwrap();
        let back = expand_in_msym(|z| f.eval(z), &ideal(&p(&[1, 1])), VariableKind::AwTrig, 2).unwrap();
        assert_eq!(back, f);

        // (z1 + 1/z1)(z2 + 1/z2) is exactly m_(1,1) in the trig basis
        let prod = expand_in_msym(
            |z: &[ExactScalar]| Ok((z[0].clone() + z[0].inv().unwrap()) * (z[1].clone() + z[1].inv().unwrap())),
            &ideal(&p(&[1, 1])),
            VariableKind::AwTrig,
            2,
        )
        .unwrap();
        assert_eq!(prod, SymPoly::monomial(VariableKind::AwTrig, p(&[1, 1])));
    }

    #[test]
    fn residual_detects_wrong_span() {
        let f = SymPoly::<ExactScalar>::monomial(VariableKind::ChPlain, p(&[2, 0]));
        let err = expand_in_msym(|x| f.eval(x), &ideal(&p(&[1, 1])), VariableKind::ChPlain, 2).unwrap_err();
        assert!(matches!(err, MathError::ResidualNonzero(_)));
    }

    #[test]
    fn product_matches_pointwise() {
        let a = SymPoly::from_terms(VariableKind::WEven, 2, [(p(&[1, 0]), ex("2")), (p(&[0, 0]), ex("1/3"))]).unwrap();
        let b = SymPoly::from_terms(VariableKind::WEven, 2, [(p(&[1, 1]), ex("-1")), (p(&[2, 0]), ex("1+1*i"))]).unwrap();
        let ab = a.mul(&b).unwrap();
        let pt = [ex("5/2"), ex("-7/3")];
        assert_eq!(ab.eval(&pt).unwrap(), a.eval(&pt).unwrap() * b.eval(&pt).unwrap());
        // m_(1,0)^2 = m_(2,0) + 2 m_(1,1)
        let m = SymPoly::<ExactScalar>::monomial(VariableKind::ChPlain, p(&[1, 0]));
        let sq = m.mul(&m).unwrap();
        assert_eq!(sq.coeff(&p(&[2, 0])), ex("1"));
        assert_eq!(sq.coeff(&p(&[1, 1])), ex("2"));
    }

    #[test]
    fn affine_substitution_matches_pointwise() {
        let f = SymPoly::from_terms(VariableKind::AwTrig, 2, [(p(&[2, 1]), ex("3")), (p(&[1, 0]), ex("-1/2"))]).unwrap();
        let (a, b) = (ex("2"), ex("-1/9"));
        let g = f.substitute_affine(&a, &b, VariableKind::WEven);
        let ys = [ex("3/7"), ex("11")];
        let xs: Vec<ExactScalar> = ys.iter().map(|y| a.clone() + b.clone() * y).collect();
        assert_eq!(g.eval_basis(&ys).unwrap(), f.eval_basis(&xs).unwrap());
    }

    #[test]
    fn jets_match_finite_structure() {
        let span = [p(&[2, 1])];
        let xs = [ex("2"), ex("3")];
        let jet = &basis_jets(&span, &xs)[0];
        // m = x^2 y + x y^2 ; d/dx = 2xy + y^2 = 21 ; d2/dx2 = 2y = 6
        assert_eq!(jet.value, ex("30"));
        assert_eq!(jet.d1[0], ex("21"));
        assert_eq!(jet.d2[0], ex("6"));
        assert_eq!(jet.d1[1], ex("16"));
        assert_eq!(jet.d2[1], ex("4"));
    }

    #[test]
    fn json_shape() {
        let f = SymPoly::from_terms(VariableKind::JTrig, 1, [(p(&[1]), ex("1")), (p(&[0]), ex("2/5"))]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"kind":"J_TRIG","n":1,"coeffs":[{"partition":[1],"value":"1"},{"partition":[0],"value":"2/5"}]}"#);
    }
}
