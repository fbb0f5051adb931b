//! Partitions in the cone `lambda_1 >= ... >= lambda_n >= 0`, the dominance
//! order, dominance ideals, Pieri neighbour sets and monomial symmetric
//! functions.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{MathError, Result};
use crate::exactnum::Scalar;

/// A weakly decreasing vector of nonnegative integers of fixed length n.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(MathError::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn zero(n: usize) -> Self {
        Partition(vec![0; n])
    }

    /// `omega_r = (1,..,1,0,..,0)` with r ones.
    pub fn omega(n: usize, r: usize) -> Self {
        Partition((0..n).map(|j| (j < r) as u32).collect())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&p| p == 0)
    }

    pub fn plus(&self, other: &Partition) -> Partition {
        Partition(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self + e_{eps J}` if the result is still in the cone.
    pub fn shifted(&self, eps: &SignedIndexSet) -> Option<Partition> {
        let mut v: Vec<i64> = self.0.iter().map(|&p| p as i64).collect();
        for &(j, s) in eps.entries() {
            v[j] += s as i64;
        }
        if v.iter().any(|&x| x < 0) || v.windows(2).any(|w| w[0] < w[1]) {
            return None;
        }
        Some(Partition(v.into_iter().map(|x| x as u32).collect()))
    }

    /// Parses `"2,1,0"`, padding with zeros up to length `n`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut parts: Vec<u32> = Vec::new();
        for piece in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            parts.push(piece.parse().map_err(|_| MathError::Parse(format!("bad partition entry {piece:?}")))?);
        }
        if parts.len() > n {
            return Err(MathError::DimensionMismatch { expected: n, found: parts.len() });
        }
        parts.resize(n, 0);
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", body.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(de)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// Total order used as the linear extension of dominance: by size, then lexicographic.
pub fn graded_lex_cmp(a: &Partition, b: &Partition) -> Ordering {
    a.size().cmp(&b.size()).then_with(|| a.0.cmp(&b.0))
}

/// Index set `J` with signs, i.e. the vector `e_{eps J}`; indices are 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct SignedIndexSet(Vec<(usize, i8)>);

impl SignedIndexSet {
    pub fn new(mut entries: Vec<(usize, i8)>) -> Result<Self> {
        entries.sort();
        if entries.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(MathError::InvalidPartition("repeated index in signed index set".into()));
        }
        if entries.iter().any(|&(_, s)| s != 1 && s != -1) {
            return Err(MathError::InvalidPartition("signs must be +1 or -1".into()));
        }
        Ok(SignedIndexSet(entries))
    }

    pub fn empty() -> Self {
        SignedIndexSet(Vec::new())
    }

    pub fn entries(&self) -> &[(usize, i8)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.0.iter().any(|&(i, _)| i == j)
    }

    /// The shift vector `e_{eps J}` in R^n.
    pub fn vector(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        for &(j, s) in &self.0 {
            v[j] = s as i64;
        }
        v
    }

    /// Every signed set with `|J| <= r`, in a fixed order.
    pub fn all_up_to(n: usize, r: usize) -> Vec<SignedIndexSet> {
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            let idx: Vec<usize> = (0..n).filter(|j| mask & (1 << j) != 0).collect();
            if idx.len() > r {
                continue;
            }
            for signs in 0u32..(1 << idx.len()) {
                let entries =
                    idx.iter().enumerate().map(|(k, &j)| (j, if signs & (1 << k) != 0 { -1 } else { 1 })).collect();
                out.push(SignedIndexSet(entries));
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }
}

impl fmt::Display for SignedIndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "{{}}");
        }
        let body: Vec<String> =
            self.0.iter().map(|&(j, s)| format!("{}{}", if s > 0 { '+' } else { '-' }, j + 1)).collect();
        write!(f, "{{{}}}", body.join(","))
    }
}

impl Serialize for SignedIndexSet {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

/// True iff every leading partial sum of `mu` is at most that of `lambda`.
pub fn dominance_leq(mu: &Partition, lambda: &Partition) -> Result<bool> {
    if mu.len() != lambda.len() {
        return Err(MathError::DimensionMismatch { expected: lambda.len(), found: mu.len() });
    }
    let (mut sm, mut sl) = (0u64, 0u64);
    for (a, b) in mu.0.iter().zip(&lambda.0) {
        sm += *a as u64;
        sl += *b as u64;
        if sm > sl {
            return Ok(false);
        }
    }
    Ok(true)
}

fn dominated(mu: &Partition, lambda: &Partition) -> bool {
    dominance_leq(mu, lambda).unwrap_or(false)
}

/// All partitions of length n with size at most `max_size`, graded-lex.
pub fn partitions_up_to(n: usize, max_size: u32) -> Vec<Partition> {
    fn rec(n: usize, remaining: u32, cap: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if prefix.len() == n {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in 0..=cap.min(remaining) {
            prefix.push(p);
            rec(n, remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_size, max_size, &mut Vec::new(), &mut out);
    out.sort_by(graded_lex_cmp);
    out
}

/// `{mu in cone : mu <= lambda}` in graded-lex order (sizes may differ).
pub fn ideal(lambda: &Partition) -> Vec<Partition> {
    partitions_up_to(lambda.len(), lambda.size()).into_iter().filter(|mu| dominated(mu, lambda)).collect()
}

/// Union of the ideals of several partitions, graded-lex.
pub fn ideal_union(tops: &[Partition]) -> Vec<Partition> {
    let mut all: Vec<Partition> = tops.iter().flat_map(ideal).collect();
    all.sort_by(graded_lex_cmp);
    all.dedup();
    all
}

/// All `(eps J, lambda + e_{eps J})` with `|J| <= r` staying in the cone.
pub fn pieri_neighbors(lambda: &Partition, r: usize) -> Vec<(SignedIndexSet, Partition)> {
    SignedIndexSet::all_up_to(lambda.len(), r)
        .into_iter()
        .filter_map(|e| lambda.shifted(&e).map(|p| (e, p)))
        .collect()
}

/// The distinct permutations of `parts`.
pub fn orbit(parts: &[u32]) -> Vec<Vec<u32>> {
    let mut cur: Vec<u32> = parts.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // lexicographic next-permutation
    loop {
        let Some(i) = (0..cur.len().saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
    out
}

/// `m_{sym,lambda}(point)`: the sum of `prod z_j^{mu_j}` over the orbit of lambda.
pub fn msym_eval<S: Scalar>(lambda: &Partition, point: &[S]) -> Result<S> {
    if point.len() != lambda.len() {
        return Err(MathError::DimensionMismatch { expected: lambda.len(), found: point.len() });
    }
    let mut total = S::zero();
    for mono in orbit(lambda.parts()) {
        let mut term = S::one();
        for (z, &e) in point.iter().zip(&mono) {
            for _ in 0..e {
                term = term * z;
            }
        }
        total = total + term;
    }
    Ok(total)
}

/// Orbit sum with signed exponents; a zero coordinate under a negative
/// exponent is an error.
pub fn laurent_orbit_eval<S: Scalar>(exponents: &[i64], point: &[S]) -> Result<S> {
    if point.len() != exponents.len() {
        return Err(MathError::DimensionMismatch { expected: exponents.len(), found: point.len() });
    }
    let mut sorted = exponents.to_vec();
    sorted.sort_unstable();
    let shift = sorted.first().copied().unwrap_or(0).min(0);
    let nonneg: Vec<u32> = sorted.iter().map(|&e| (e - shift) as u32).collect();
    let mut total = S::zero();
    for mono in orbit(&nonneg) {
        let mut term = S::one();
        for (z, &e) in point.iter().zip(&mono) {
            let e = e as i64 + shift;
            term = term * z.powi(e).ok_or_else(|| MathError::Pole("zero coordinate under negative exponent".into()))?;
        }
        total = total + term;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ExactScalar;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_leq(&p(&[1, 1]), &p(&[2, 0])).unwrap());
        assert!(!dominance_leq(&p(&[2, 0]), &p(&[1, 1])).unwrap());
        assert!(dominance_leq(&p(&[1, 1, 1]), &p(&[3, 0, 0])).unwrap());
        assert!(dominance_leq(&p(&[1]), &p(&[1, 0])).is_err());
    }

    #[test]
    fn ideal_examples() {
        assert_eq!(ideal(&p(&[0, 0])), vec![p(&[0, 0])]);
        assert_eq!(ideal(&p(&[1, 1])), vec![p(&[0, 0]), p(&[1, 0]), p(&[1, 1])]);
        assert_eq!(ideal(&p(&[2, 0])), vec![p(&[0, 0]), p(&[1, 0]), p(&[1, 1]), p(&[2, 0])]);
    }

    #[test]
    fn pieri_examples() {
        let got: Vec<Partition> = pieri_neighbors(&p(&[0, 0]), 1).into_iter().map(|x| x.1).collect();
        assert_eq!(got, vec![p(&[0, 0]), p(&[1, 0])]);
        let mut got: Vec<Partition> = pieri_neighbors(&p(&[1, 0]), 1).into_iter().map(|x| x.1).collect();
        got.sort();
        assert_eq!(got, vec![p(&[0, 0]), p(&[1, 0]), p(&[1, 1]), p(&[2, 0])]);
        let both_down = SignedIndexSet::new(vec![(0, -1), (1, -1)]).unwrap();
        assert!(pieri_neighbors(&p(&[1, 1]), 2).contains(&(both_down, p(&[0, 0]))));
    }

    #[test]
    fn msym_examples() {
        let z = [ExactScalar::integer(2), ExactScalar::integer(3)];
        assert_eq!(msym_eval(&p(&[0, 0]), &z).unwrap(), ExactScalar::integer(1));
        assert_eq!(msym_eval(&p(&[1, 0]), &z).unwrap(), ExactScalar::integer(5));
        assert_eq!(msym_eval(&p(&[2, 1]), &z).unwrap(), ExactScalar::integer(30));
    }

    #[test]
    fn laurent_orbit() {
        let z = [ExactScalar::integer(2), ExactScalar::integer(3)];
        // z1/z2 + z2/z1
        assert_eq!(laurent_orbit_eval(&[1, -1], &z).unwrap(), ExactScalar::ratio(13, 6));
        let z0 = [ExactScalar::integer(0), ExactScalar::integer(3)];
        assert!(laurent_orbit_eval(&[1, -1], &z0).is_err());
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(orbit(&[2, 1, 0]).len(), 6);
        assert_eq!(orbit(&[1, 1, 0]).len(), 3);
        assert_eq!(orbit(&[0, 0, 0]).len(), 1);
    }

    #[test]
    fn invalid_partition_rejected() {
        assert!(Partition::new(vec![0, 1]).is_err());
        assert_eq!(Partition::parse("2,1", 3).unwrap(), p(&[2, 1, 0]));
        assert!(Partition::parse("1,2", 2).is_err());
    }
}
