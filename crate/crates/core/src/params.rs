//! Family tags, parameter sets and the derived (hat) parameters.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Serialize, Serializer};

use crate::error::{MathError, Result};
use crate::exactnum::{ExactScalar, FloatScalar, Scalar};
use crate::sympoly::VariableKind;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Family {
    AskeyWilson,
    Wilson,
    ContinuousHahn,
    Jacobi,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::AskeyWilson, Family::Wilson, Family::ContinuousHahn, Family::Jacobi];

    pub fn tag(self) -> &'static str {
        match self {
            Family::AskeyWilson => "AW",
            Family::Wilson => "W",
            Family::ContinuousHahn => "CH",
            Family::Jacobi => "J",
        }
    }

    pub fn kind(self) -> VariableKind {
        match self {
            Family::AskeyWilson => VariableKind::AwTrig,
            Family::Wilson => VariableKind::WEven,
            Family::ContinuousHahn => VariableKind::ChPlain,
            Family::Jacobi => VariableKind::JTrig,
        }
    }

    /// Parameter names in the order used by [`FamilyParams::named_values`].
    pub fn parameter_names(self) -> &'static [&'static str] {
        match self {
            Family::AskeyWilson => &["q", "t", "t0", "t1", "t2", "t3"],
            Family::Wilson => &["nu", "nu0", "nu1", "nu2", "nu3"],
            Family::ContinuousHahn => &["nu", "nu0p", "nu1p", "nu0m", "nu1m"],
            Family::Jacobi => &["nu", "nu0", "nu1"],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = MathError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "AW" => Ok(Family::AskeyWilson),
            "W" => Ok(Family::Wilson),
            "CH" => Ok(Family::ContinuousHahn),
            "J" => Ok(Family::Jacobi),
            other => Err(MathError::Parse(format!("unknown family '{other}' (expected AW, W, CH or J)"))),
        }
    }
}

impl Serialize for Family {
    fn serialize<Ser: Serializer>(&self, ser: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        ser.serialize_str(self.tag())
    }
}

/// Raw parameters of one family.
#[derive(Clone, PartialEq, Debug)]
pub enum ParamSet<S> {
    AskeyWilson { q: S, t: S, tr: [S; 4] },
    Wilson { nu: S, nur: [S; 4] },
    /// `plus = [nu0+, nu1+]`, `minus = [nu0-, nu1-]`.
    ContinuousHahn { nu: S, plus: [S; 2], minus: [S; 2] },
    Jacobi { nu: S, nu0: S, nu1: S },
}

#[derive(Clone, PartialEq, Debug)]
pub struct FamilyParams<S = ExactScalar> {
    n: usize,
    set: ParamSet<S>,
}

impl<S: Scalar> FamilyParams<S> {
    pub fn new(n: usize, set: ParamSet<S>) -> Result<Self> {
        if n == 0 {
            return Err(MathError::DimensionMismatch { expected: 1, found: 0 });
        }
        if let ParamSet::AskeyWilson { q, .. } = &set {
            if q.is_zero() || (q.clone() - S::one()).is_zero() {
                return Err(MathError::Domain("q must differ from 0 and 1".into()));
            }
        }
        Ok(FamilyParams { n, set })
    }

    pub fn family(&self) -> Family {
        match self.set {
            ParamSet::AskeyWilson { .. } => Family::AskeyWilson,
            ParamSet::Wilson { .. } => Family::Wilson,
            ParamSet::ContinuousHahn { .. } => Family::ContinuousHahn,
            ParamSet::Jacobi { .. } => Family::Jacobi,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set(&self) -> &ParamSet<S> {
        &self.set
    }

    pub fn kind(&self) -> VariableKind {
        self.family().kind()
    }

    /// Same parameters in a different number of variables.
    pub fn with_n(&self, n: usize) -> Result<Self> {
        Self::new(n, self.set.clone())
    }

    pub fn named_values(&self) -> Vec<(&'static str, S)> {
        let vals: Vec<S> = match &self.set {
            ParamSet::AskeyWilson { q, t, tr } => [q.clone(), t.clone()].into_iter().chain(tr.iter().cloned()).collect(),
            ParamSet::Wilson { nu, nur } => std::iter::once(nu.clone()).chain(nur.iter().cloned()).collect(),
            ParamSet::ContinuousHahn { nu, plus, minus } => {
                std::iter::once(nu.clone()).chain(plus.iter().cloned()).chain(minus.iter().cloned()).collect()
            }
            ParamSet::Jacobi { nu, nu0, nu1 } => vec![nu.clone(), nu0.clone(), nu1.clone()],
        };
        self.family().parameter_names().iter().copied().zip(vals).collect()
    }

    /// The coupling parameter: `t` for AW, `nu` otherwise.
    pub fn coupling(&self) -> &S {
        match &self.set {
            ParamSet::AskeyWilson { t, .. } => t,
            ParamSet::Wilson { nu, .. } | ParamSet::ContinuousHahn { nu, .. } | ParamSet::Jacobi { nu, .. } => nu,
        }
    }

    /// `t0 t1 t2 t3 / q`, whose square root is the AW hat parameter `t^_0`.
    pub fn aw_radicand(&self) -> Option<S> {
        match &self.set {
            ParamSet::AskeyWilson { q, tr, .. } => {
                let prod = tr.iter().fold(S::one(), |acc, x| acc * x);
                Some(prod * q.inv().expect("q != 0 checked at construction"))
            }
            _ => None,
        }
    }

    /// AW: `tau_j^+ = (t0 t1 t2 t3/q) t^{2n-1-j}` (1-based j).
    pub fn tau_plus(&self) -> Vec<S> {
        match (&self.set, self.aw_radicand()) {
            (ParamSet::AskeyWilson { t, .. }, Some(s)) => (0..self.n)
                .map(|j| s.clone() * t.powi((2 * self.n - 2 - j) as i64).expect("nonnegative power"))
                .collect(),
            _ => Vec::new(),
        }
    }

    /// AW: `tau_j^- = t^{j-1}`.
    pub fn tau_minus(&self) -> Vec<S> {
        match &self.set {
            ParamSet::AskeyWilson { t, .. } => (0..self.n).map(|j| t.powi(j as i64).expect("nonnegative power")).collect(),
            _ => Vec::new(),
        }
    }

    /// The additive shift vector rho of the W, cH and J families.
    pub fn rho(&self) -> Option<Vec<S>> {
        let half = S::from_ratio(1, 2);
        let base = match &self.set {
            ParamSet::AskeyWilson { .. } => return None,
            ParamSet::Wilson { nur, .. } => {
                (nur.iter().fold(S::zero(), |acc, x| acc + x) - S::one()) * &half
            }
            ParamSet::ContinuousHahn { plus, minus, .. } => {
                (plus.iter().chain(minus.iter()).fold(S::zero(), |acc, x| acc + x) - S::one()) * &half
            }
            ParamSet::Jacobi { nu0, nu1, .. } => (nu0.clone() + nu1) * &half,
        };
        let nu = self.coupling();
        Some((0..self.n).map(|j| S::from_i64((self.n - 1 - j) as i64) * nu + &base).collect())
    }

    /// Dependent parameters `nu^_r` of the W, cH and J families (four, three
    /// used plus one, and two entries respectively).
    pub fn nu_hat(&self) -> Option<Vec<S>> {
        let half = S::from_ratio(1, 2);
        let one = S::one();
        let table = |a: &S, b: &S, c: &S, d: &S, order: [(i64, i64, i64); 4]| -> Vec<S> {
            order
                .iter()
                .enumerate()
                .map(|(k, &(sb, sc, sd))| {
                    let sign = |s: i64, x: &S| if s > 0 { x.clone() } else { -x.clone() };
                    let tail = if k == 0 { -one.clone() } else { one.clone() };
                    (a.clone() + sign(sb, b) + sign(sc, c) + sign(sd, d) + tail) * &half
                })
                .collect()
        };
        match &self.set {
            ParamSet::AskeyWilson { .. } => None,
            ParamSet::Wilson { nur, .. } => Some(table(
                &nur[0],
                &nur[1],
                &nur[2],
                &nur[3],
                [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)],
            )),
            ParamSet::ContinuousHahn { plus, minus, .. } => Some(table(
                &plus[0],
                &plus[1],
                &minus[0],
                &minus[1],
                [(1, 1, 1), (-1, 1, -1), (-1, -1, 1), (1, -1, -1)],
            )),
            ParamSet::Jacobi { nu0, nu1, .. } => {
                Some(vec![(nu0.clone() + nu1) * &half, (nu0.clone() - nu1 + one) * &half])
            }
        }
    }

    /// The family's self-duality relation, as a value that vanishes exactly when it holds.
    pub fn self_duality_defect(&self) -> S {
        match &self.set {
            ParamSet::AskeyWilson { q, tr, .. } => q.clone() * &tr[0] - tr[1].clone() * &tr[2] * &tr[3],
            ParamSet::Wilson { nur, .. } => nur[0].clone() - &nur[1] - &nur[2] - &nur[3] + S::one(),
            ParamSet::ContinuousHahn { plus, minus, .. } => {
                plus[0].clone() - &plus[1] - &minus[0] - &minus[1] + S::one()
            }
            ParamSet::Jacobi { .. } => S::zero(),
        }
    }

    pub fn self_dual(&self) -> bool {
        self.self_duality_defect().is_zero()
    }

    /// The condition under which the recurrences are proven (self-duality,
    /// or nothing for J).
    pub fn recurrence_condition(&self) -> Result<()> {
        if self.self_dual() {
            Ok(())
        } else {
            let what = match self.family() {
                Family::AskeyWilson => "q t0 = t1 t2 t3",
                Family::Wilson => "nu0 - nu1 - nu2 - nu3 + 1 = 0",
                Family::ContinuousHahn => "nu0p - nu1p - nu0m - nu1m + 1 = 0",
                Family::Jacobi => unreachable!("J is always self-dual"),
            };
            Err(MathError::ConditionViolated(what.into()))
        }
    }

    /// The parameters adjusted along the self-duality condition by solving it
    /// for `t0` (AW), `nu0` (W) or `nu0+` (cH).
    pub fn make_self_dual(&self) -> Self {
        let set = match &self.set {
            ParamSet::AskeyWilson { q, t, tr } => {
                let t0 = tr[1].clone() * &tr[2] * &tr[3] * q.inv().expect("q != 0");
                ParamSet::AskeyWilson { q: q.clone(), t: t.clone(), tr: [t0, tr[1].clone(), tr[2].clone(), tr[3].clone()] }
            }
            ParamSet::Wilson { nu, nur } => {
                let nu0 = nur[1].clone() + &nur[2] + &nur[3] - S::one();
                ParamSet::Wilson { nu: nu.clone(), nur: [nu0, nur[1].clone(), nur[2].clone(), nur[3].clone()] }
            }
            ParamSet::ContinuousHahn { nu, plus, minus } => {
                let p0 = plus[1].clone() + &minus[0] + &minus[1] - S::one();
                ParamSet::ContinuousHahn { nu: nu.clone(), plus: [p0, plus[1].clone()], minus: minus.clone() }
            }
            ParamSet::Jacobi { .. } => self.set.clone(),
        };
        FamilyParams { n: self.n, set }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> FamilyParams<T> {
        let set = match &self.set {
            ParamSet::AskeyWilson { q, t, tr } => {
                ParamSet::AskeyWilson { q: f(q), t: f(t), tr: [f(&tr[0]), f(&tr[1]), f(&tr[2]), f(&tr[3])] }
            }
            ParamSet::Wilson { nu, nur } => {
                ParamSet::Wilson { nu: f(nu), nur: [f(&nur[0]), f(&nur[1]), f(&nur[2]), f(&nur[3])] }
            }
            ParamSet::ContinuousHahn { nu, plus, minus } => ParamSet::ContinuousHahn {
                nu: f(nu),
                plus: [f(&plus[0]), f(&plus[1])],
                minus: [f(&minus[0]), f(&minus[1])],
            },
            ParamSet::Jacobi { nu, nu0, nu1 } => ParamSet::Jacobi { nu: f(nu), nu0: f(nu0), nu1: f(nu1) },
        };
        FamilyParams { n: self.n, set }
    }
}

impl FamilyParams<ExactScalar> {
    /// Builds a parameter set from `name = value` pairs. `nu` defaults to 0
    /// and the AW coupling `t` to 1; everything else is required.
    pub fn from_pairs(family: Family, n: usize, pairs: &[(String, ExactScalar)]) -> Result<Self> {
        let names = family.parameter_names();
        for (k, _) in pairs {
            if !names.contains(&k.as_str()) {
                return Err(MathError::Parse(format!("unknown parameter '{k}' for family {family}")));
            }
        }
        let get = |name: &str| -> Result<ExactScalar> {
            match pairs.iter().rev().find(|(k, _)| k == name) {
                Some((_, v)) => Ok(v.clone()),
                None => match name {
                    "nu" => Ok(ExactScalar::integer(0)),
                    "t" => Ok(ExactScalar::integer(1)),
                    _ => Err(MathError::Parse(format!("missing parameter '{name}' for family {family}"))),
                },
            }
        };
        let set = match family {
            Family::AskeyWilson => ParamSet::AskeyWilson {
                q: get("q")?,
                t: get("t")?,
                tr: [get("t0")?, get("t1")?, get("t2")?, get("t3")?],
            },
            Family::Wilson => ParamSet::Wilson { nu: get("nu")?, nur: [get("nu0")?, get("nu1")?, get("nu2")?, get("nu3")?] },
            Family::ContinuousHahn => ParamSet::ContinuousHahn {
                nu: get("nu")?,
                plus: [get("nu0p")?, get("nu1p")?],
                minus: [get("nu0m")?, get("nu1m")?],
            },
            Family::Jacobi => ParamSet::Jacobi { nu: get("nu")?, nu0: get("nu0")?, nu1: get("nu1")? },
        };
        Self::new(n, set)
    }

    /// Parses `k=v,k=v,...`.
    pub fn parse(family: Family, n: usize, text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| MathError::Parse(format!("expected name=value, got '{item}'")))?;
            pairs.push((k.trim().to_string(), v.trim().parse::<ExactScalar>()?));
        }
        Self::from_pairs(family, n, &pairs)
    }

    pub fn to_float(&self) -> FamilyParams<FloatScalar> {
        self.map(FloatScalar::from_exact)
    }

    /// The analytic domain where the weight function is positive and the
    /// inner product converges. Only the quadrature checks need it.
    pub fn check_analytic_domain(&self) -> Result<()> {
        let real_in = |x: &ExactScalar, what: &str, lo: Option<(i64, i64, bool)>, hi: Option<(i64, i64, bool)>| {
            let fail = || Err(MathError::Domain(format!("{what} = {x}")));
            if !x.is_real() {
                return fail();
            }
            let v = x.re();
            if let Some((p, q, strict)) = lo {
                let b = ExactScalar::ratio(p, q);
                if v < b.re() || (strict && v == b.re()) {
                    return fail();
                }
            }
            if let Some((p, q, strict)) = hi {
                let b = ExactScalar::ratio(p, q);
                if v > b.re() || (strict && v == b.re()) {
                    return fail();
                }
            }
            Ok(())
        };
        // real, or paired with its conjugate inside the list
        let conj_closed = |xs: &[ExactScalar], what: &str| {
            let mut pool: Vec<ExactScalar> = xs.to_vec();
            while let Some(x) = pool.pop() {
                if x.is_real() {
                    continue;
                }
                match pool.iter().position(|y| *y == x.conj()) {
                    Some(p) => {
                        pool.remove(p);
                    }
                    None => return Err(MathError::Domain(format!("{what}: {x} has no conjugate partner"))),
                }
            }
            Ok(())
        };
        match &self.set {
            ParamSet::AskeyWilson { q, t, tr } => {
                real_in(q, "q", Some((0, 1, true)), Some((1, 1, true)))?;
                real_in(t, "t", Some((-1, 1, false)), Some((1, 1, false)))?;
                for (r, x) in tr.iter().enumerate() {
                    if x.norm_sqr() > BigRational::one() {
                        return Err(MathError::Domain(format!("|t{r}| > 1")));
                    }
                }
                conj_closed(tr, "t_r")
            }
            ParamSet::Wilson { nu, nur } => {
                real_in(nu, "nu", Some((0, 1, false)), None)?;
                for (r, x) in nur.iter().enumerate() {
                    if !x.re().is_positive() {
                        return Err(MathError::Domain(format!("Re nu{r} <= 0")));
                    }
                }
                conj_closed(nur, "nu_r")
            }
            ParamSet::ContinuousHahn { nu, plus, minus } => {
                real_in(nu, "nu", Some((0, 1, false)), None)?;
                for k in 0..2 {
                    if minus[k] != plus[k].conj() {
                        return Err(MathError::Domain(format!("nu{k}m must be the conjugate of nu{k}p")));
                    }
                    if !plus[k].re().is_positive() {
                        return Err(MathError::Domain(format!("Re nu{k}p <= 0")));
                    }
                }
                Ok(())
            }
            ParamSet::Jacobi { nu, nu0, nu1 } => {
                real_in(nu, "nu", Some((0, 1, false)), None)?;
                real_in(nu0, "nu0", Some((-1, 2, true)), None)?;
                real_in(nu1, "nu1", Some((-1, 2, true)), None)
            }
        }
    }
}

impl<S: Scalar> Serialize for FamilyParams<S> {
    fn serialize<Ser: Serializer>(&self, ser: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        use serde::ser::{SerializeMap, SerializeStruct};
        struct Values<'a, S>(&'a [(&'static str, S)]);
        impl<S: Scalar> Serialize for Values<'_, S> {
            fn serialize<Ser: Serializer>(&self, ser: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
                let mut m = ser.serialize_map(Some(self.0.len()))?;
                for (k, v) in self.0 {
                    m.serialize_entry(k, &v.to_string())?;
                }
                m.end()
            }
        }
        let values = self.named_values();
        let mut st = ser.serialize_struct("FamilyParams", 3)?;
        st.serialize_field("family", &self.family())?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("params", &Values(&values))?;
        st.end()
    }
}

/// Derived parameters entering recurrences, duality and norms.
///
/// For AW, `rho` holds `tau_j = t^{n-j} t^_0` and `rho_hat` holds
/// `tau^_j = t^{n-j} t0`; for the other families both are additive.
/// J is self-dual and leaves `rho_hat` equal to `rho`.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct HatParams {
    pub family: Family,
    pub self_dual: bool,
    pub hat: Vec<ExactScalar>,
    pub rho: Vec<ExactScalar>,
    pub rho_hat: Vec<ExactScalar>,
    pub tau_plus: Vec<ExactScalar>,
    pub tau_minus: Vec<ExactScalar>,
}

fn sqrt_named(x: &ExactScalar, name: &str) -> Result<ExactScalar> {
    x.sqrt().ok_or_else(|| MathError::NotSquare { product: format!("{name} = {x}") })
}

pub fn hat_parameters(params: &FamilyParams) -> Result<HatParams> {
    let n = params.n();
    let self_dual = params.self_dual();
    let shifted = |base: &ExactScalar| -> Vec<ExactScalar> {
        (0..n).map(|j| ExactScalar::integer((n - 1 - j) as i64) * params.coupling() + base).collect()
    };
    let (hat, rho, rho_hat) = match params.set() {
        ParamSet::AskeyWilson { q, t, tr } => {
            let hat = if self_dual {
                tr.to_vec()
            } else {
                let qinv = q.inv().expect("q != 0");
                let r1 = tr[0].clone() * &tr[1] * q * (tr[2].clone() * &tr[3]).inv().ok_or_else(|| MathError::Pole("t2 t3 = 0".into()))?;
                let r2 = tr[0].clone() * &tr[2] * q * (tr[1].clone() * &tr[3]).inv().ok_or_else(|| MathError::Pole("t1 t3 = 0".into()))?;
                let r3 = tr[0].clone() * &tr[3] * q * (tr[1].clone() * &tr[2]).inv().ok_or_else(|| MathError::Pole("t1 t2 = 0".into()))?;
                let radicand = tr.iter().fold(ExactScalar::integer(1), |a, x| a * x) * &qinv;
                sqrt_named(&radicand, "t0 t1 t2 t3 / q")?;
                let h1 = sqrt_named(&r1, "t0 t1 q / (t2 t3)")?;
                let h2 = sqrt_named(&r2, "t0 t2 q / (t1 t3)")?;
                let h3 = sqrt_named(&r3, "t0 t3 q / (t1 t2)")?;
                // fixes the branch of t^_0 so that t^_0 t^_1 t^_2 t^_3 / q = t0^2
                let h0 = tr[0].clone() * &tr[0] * q * (h1.clone() * &h2 * &h3).inv().ok_or_else(|| MathError::Pole("t^_r = 0".into()))?;
                vec![h0, h1, h2, h3]
            };
            let tpow = |j: usize| t.powi((n - 1 - j) as i64).expect("nonnegative power");
            let rho = (0..n).map(|j| tpow(j) * &hat[0]).collect();
            let rho_hat = (0..n).map(|j| tpow(j) * &tr[0]).collect();
            (hat, rho, rho_hat)
        }
        ParamSet::Wilson { nur, .. } => (params.nu_hat().expect("additive"), params.rho().expect("additive"), shifted(&nur[0])),
        ParamSet::ContinuousHahn { plus, .. } => {
            (params.nu_hat().expect("additive"), params.rho().expect("additive"), shifted(&plus[0]))
        }
        ParamSet::Jacobi { .. } => {
            let rho = params.rho().expect("additive");
            (params.nu_hat().expect("additive"), rho.clone(), rho)
        }
    };
    Ok(HatParams {
        family: params.family(),
        self_dual,
        hat,
        rho,
        rho_hat,
        tau_plus: params.tau_plus(),
        tau_minus: params.tau_minus(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(s: &str) -> ExactScalar {
        s.parse().unwrap()
    }

    #[test]
    fn wilson_hat_parameters() {
        let p = FamilyParams::parse(Family::Wilson, 2, "nu=1/3,nu0=1,nu1=1,nu2=1,nu3=1").unwrap();
        let h = hat_parameters(&p).unwrap();
        assert_eq!(h.hat, vec![ex("3/2"), ex("1/2"), ex("1/2"), ex("1/2")]);
        assert_eq!(h.rho, vec![ex("1/3") + ex("3/2"), ex("3/2")]);
        assert_eq!(h.rho_hat, vec![ex("4/3"), ex("1")]);
        assert!(!h.self_dual);
    }

    #[test]
    fn jacobi_hat_parameters() {
        let p = FamilyParams::parse(Family::Jacobi, 1, "nu0=1,nu1=1/2").unwrap();
        let h = hat_parameters(&p).unwrap();
        assert_eq!(h.hat, vec![ex("3/4"), ex("3/4")]);
        assert_eq!(h.rho, vec![ex("3/4")]);
        assert!(h.self_dual);
    }

    #[test]
    fn aw_self_dual_fixes_hats() {
        let p = FamilyParams::parse(Family::AskeyWilson, 2, "q=1/4,t=1/3,t0=1/2,t1=1/2,t2=1/2,t3=1/2").unwrap();
        assert!(p.self_dual());
        let h = hat_parameters(&p).unwrap();
        assert_eq!(h.hat, vec![ex("1/2"); 4]);
        assert_eq!(h.rho, h.rho_hat);
        assert_eq!(h.rho_hat, vec![ex("1/6"), ex("1/2")]);
    }

    #[test]
    fn aw_hats_from_square_radicands() {
        // t0 t1 t2 t3 / q = 1/64 and the three other radicands are squares
        let p = FamilyParams::parse(Family::AskeyWilson, 1, "q=1/4,t0=1/4,t1=1/4,t2=1/4,t3=1/4").unwrap();
        let h = hat_parameters(&p).unwrap();
        let prod = h.hat.iter().fold(ex("1"), |a, x| a * x) * ex("4");
        assert_eq!(prod, ex("1/16"));
        assert_eq!(h.hat[0].clone() * &h.hat[0], ex("1/64"));
        let bad = FamilyParams::parse(Family::AskeyWilson, 1, "q=1/3,t0=1/2,t1=1/2,t2=1/2,t3=1/5").unwrap();
        assert!(matches!(hat_parameters(&bad), Err(MathError::NotSquare { .. })));
    }

    #[test]
    fn continuous_hahn_hats_and_condition() {
        let p = FamilyParams::parse(Family::ContinuousHahn, 1, "nu0p=1+1*i,nu1p=1/2,nu0m=1-1*i,nu1m=1/2").unwrap();
        let h = hat_parameters(&p).unwrap();
        assert_eq!(h.hat[0], ex("1"));
        assert_eq!(h.hat[1], ex("1"));
        assert_eq!(h.hat[2], ex("1/2+1*i"));
        assert_eq!(h.hat[3], ex("1/2+1*i"));
        assert!(p.check_analytic_domain().is_ok());
        let sd = p.make_self_dual();
        assert!(sd.self_dual());
        assert!(sd.recurrence_condition().is_ok());
    }

    #[test]
    fn tau_vectors() {
        let p = FamilyParams::parse(Family::AskeyWilson, 2, "q=1/2,t=1/3,t0=1/2,t1=1/3,t2=1/5,t3=1/7").unwrap();
        let s = ex("1/105");
        assert_eq!(p.tau_plus(), vec![s.clone() * ex("1/9"), s * ex("1/3")]);
        assert_eq!(p.tau_minus(), vec![ex("1"), ex("1/3")]);
    }

    #[test]
    fn parsing_and_domains() {
        assert!(FamilyParams::parse(Family::Jacobi, 1, "nu0=1").is_err());
        assert!(FamilyParams::parse(Family::Jacobi, 1, "nu0=1,nu1=1,bogus=2").is_err());
        let j = FamilyParams::parse(Family::Jacobi, 1, "nu0=-1/2,nu1=1").unwrap();
        assert!(j.check_analytic_domain().is_err());
        let aw = FamilyParams::parse(Family::AskeyWilson, 1, "q=2,t0=0,t1=0,t2=0,t3=0").unwrap();
        assert!(aw.check_analytic_domain().is_err());
        assert_eq!("ch".parse::<Family>().unwrap(), Family::ContinuousHahn);
        let json = serde_json::to_string(&j).unwrap();
        assert_eq!(json, r#"{"family":"J","n":1,"params":{"nu":"0","nu0":"-1/2","nu1":"1"}}"#);
    }
}
