//! The `U_{K,p} V_{eps J,K}` coefficient products shared by the higher
//! difference operators and the Pieri recurrences.
//!
//! A model supplies the two building blocks `v`, `w`, how two signed
//! coordinates combine, and the unit step used inside the pair factors.

use crate::error::Result;
use crate::exactnum::Scalar;
use crate::partitions::SignedIndexSet;

pub(crate) trait UvModel {
    type Value: Scalar;
    type Arg: Clone;

    /// `a + b` in the model's (additive or multiplicative) notation.
    fn combine(&self, a: &Self::Arg, b: &Self::Arg) -> Self::Arg;
    /// `a + k * unit`.
    fn step(&self, a: &Self::Arg, k: i64) -> Self::Arg;
    fn v(&self, a: &Self::Arg) -> Result<Self::Value>;
    fn w(&self, a: &Self::Arg) -> Result<Self::Value>;
}

/// Coordinate `j` with both signs: `(x_j, -x_j)`.
pub(crate) type SignedCoord<A> = (A, A);

fn pick<A: Clone>(xs: &[SignedCoord<A>], j: usize, eps: i8) -> A {
    if eps > 0 {
        xs[j].0.clone()
    } else {
        xs[j].1.clone()
    }
}

/// `prod_J w(eps x) * prod_{j<j'} v(a) v(a+1) * prod_{J x K} v(eps x_j + x_k) v(eps x_j - x_k)`.
pub(crate) fn v_coefficient<M: UvModel>(
    m: &M,
    xs: &[SignedCoord<M::Arg>],
    eps_j: &SignedIndexSet,
    k: &[usize],
) -> Result<M::Value> {
    let entries = eps_j.entries();
    let mut acc = M::Value::one();
    for (a, &(j, e)) in entries.iter().enumerate() {
        let xj = pick(xs, j, e);
        acc = acc * m.w(&xj)?;
        for &(jp, ep) in &entries[a + 1..] {
            let sum = m.combine(&xj, &pick(xs, jp, ep));
            acc = acc * m.v(&sum)? * m.v(&m.step(&sum, 1))?;
        }
        for &kk in k {
            acc = acc * m.v(&m.combine(&xj, &xs[kk].0))? * m.v(&m.combine(&xj, &xs[kk].1))?;
        }
    }
    Ok(acc)
}

/// `(-1)^p sum_{L in K, |L| = p, eps} (...)`, the diagonal-type factor.
pub(crate) fn u_coefficient<M: UvModel>(m: &M, xs: &[SignedCoord<M::Arg>], k: &[usize], p: usize) -> Result<M::Value> {
    if p == 0 {
        return Ok(M::Value::one());
    }
    let mut total = M::Value::zero();
    for l in signed_subsets(k, p) {
        let rest: Vec<usize> = k.iter().copied().filter(|x| !l.iter().any(|(y, _)| y == x)).collect();
        let mut acc = M::Value::one();
        for (a, &(j, e)) in l.iter().enumerate() {
            let xj = pick(xs, j, e);
            acc = acc * m.w(&xj)?;
            for &(jp, ep) in &l[a + 1..] {
                let sum = m.combine(&xj, &pick(xs, jp, ep));
                let neg = m.combine(&pick(xs, j, -e), &pick(xs, jp, -ep));
                acc = acc * m.v(&sum)? * m.v(&m.step(&neg, -1))?;
            }
            for &kk in &rest {
                acc = acc * m.v(&m.combine(&xj, &xs[kk].0))? * m.v(&m.combine(&xj, &xs[kk].1))?;
            }
        }
        total = total + acc;
    }
    Ok(if p % 2 == 1 { -total } else { total })
}

/// `U_{J^c, r-|J|} V_{eps J, J^c}`.
pub(crate) fn uv_coefficient<M: UvModel>(
    m: &M,
    xs: &[SignedCoord<M::Arg>],
    eps_j: &SignedIndexSet,
    r: usize,
) -> Result<M::Value> {
    let k: Vec<usize> = (0..xs.len()).filter(|j| !eps_j.contains(*j)).collect();
    let u = u_coefficient(m, xs, &k, r - eps_j.len())?;
    if u.is_zero() {
        return Ok(u);
    }
    Ok(u * v_coefficient(m, xs, eps_j, &k)?)
}

/// All sign-decorated subsets of `k` of size `p`.
pub(crate) fn signed_subsets(k: &[usize], p: usize) -> Vec<Vec<(usize, i8)>> {
    let mut out = Vec::new();
    let m = k.len();
    for mask in 0u32..(1 << m) {
        if mask.count_ones() as usize != p {
            continue;
        }
        let idx: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).map(|i| k[i]).collect();
        for signs in 0u32..(1 << p) {
            out.push(idx.iter().enumerate().map(|(b, &j)| (j, if signs & (1 << b) != 0 { -1 } else { 1 })).collect());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ExactScalar;

    /// v = 1 + 1/z, w = z: small enough to expand by hand.
    struct Toy;

    impl UvModel for Toy {
        type Value = ExactScalar;
        type Arg = ExactScalar;
        fn combine(&self, a: &ExactScalar, b: &ExactScalar) -> ExactScalar {
            a.clone() + b
        }
        fn step(&self, a: &ExactScalar, k: i64) -> ExactScalar {
            a.clone() + ExactScalar::integer(k)
        }
        fn v(&self, a: &ExactScalar) -> Result<ExactScalar> {
            Ok(ExactScalar::integer(1) + a.inv().unwrap())
        }
        fn w(&self, a: &ExactScalar) -> Result<ExactScalar> {
            Ok(a.clone())
        }
    }

    fn coords(v: &[i64]) -> Vec<SignedCoord<ExactScalar>> {
        v.iter().map(|&x| (ExactScalar::integer(x), ExactScalar::integer(-x))).collect()
    }

    #[test]
    fn one_variable_u_is_minus_sum_of_w() {
        let xs = coords(&[3]);
        // U_{{1},1} = -(w(3) + w(-3)) = 0
        assert_eq!(u_coefficient(&Toy, &xs, &[0], 1).unwrap(), ExactScalar::integer(0));
        let v = v_coefficient(&Toy, &xs, &SignedIndexSet::new(vec![(0, -1)]).unwrap(), &[]).unwrap();
        assert_eq!(v, ExactScalar::integer(-3));
    }

    #[test]
    fn two_variable_v_by_hand() {
        let xs = coords(&[2, 5]);
        // w(2) v(2+5) v(2-5)
        let got = v_coefficient(&Toy, &xs, &SignedIndexSet::new(vec![(0, 1)]).unwrap(), &[1]).unwrap();
        let want = ExactScalar::integer(2) * ExactScalar::ratio(8, 7) * ExactScalar::ratio(2, 3);
        assert_eq!(got, want);
        // w(2) w(-5) v(-3) v(-2)
        let got = v_coefficient(&Toy, &xs, &SignedIndexSet::new(vec![(0, 1), (1, -1)]).unwrap(), &[]).unwrap();
        let want = ExactScalar::integer(-10) * ExactScalar::ratio(2, 3) * ExactScalar::ratio(1, 2);
        assert_eq!(got, want);
    }

    #[test]
    fn subsets_counted() {
        assert_eq!(signed_subsets(&[0, 1, 2], 2).len(), 3 * 4);
        assert_eq!(signed_subsets(&[0, 2], 0).len(), 1);
    }
}
