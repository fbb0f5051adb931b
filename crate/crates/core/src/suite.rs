//! The acceptance battery: one entry per criterion, each split into named
//! sub-results. Criteria run concurrently; the output order is fixed.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::identities::{
    duality_check, norm_ratio_exact, onevar_norm_reference, pieri_data, specialization_check, step_relation_check,
    verify_recurrence,
};
use crate::limits::{limit_report, LimitCase};
use crate::operators::DifferenceOperator;
use crate::params::{Family, FamilyParams};
use crate::partitions::{partitions_up_to, Partition};
use crate::polynomials::{build_monic, onevar_reference, MonicBasis};
use crate::quadrature::{orthogonality_report, GridSpec};
use crate::report::VerificationReport;
use crate::ExactScalar;

const MAX_LISTED_FAILURES: usize = 20;

#[derive(Clone, Debug, Serialize)]
pub struct SubResult {
    pub name: String,
    pub pass: bool,
    pub checks: usize,
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub sub_results: Vec<SubResult>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub pass: bool,
    pub criteria: Vec<CriterionResult>,
}

pub const CRITERIA: [(u8, &str); 8] = [
    (1, "onevar-reduction"),
    (2, "eigen-systems"),
    (3, "commutativity"),
    (4, "recurrences"),
    (5, "duality-specialization"),
    (6, "norm-ratios"),
    (7, "numeric-orthogonality"),
    (8, "limit-transitions"),
];

struct Tally {
    sub: SubResult,
    failed: usize,
}

impl Tally {
    fn new(name: impl Into<String>) -> Self {
        Tally {
            sub: SubResult { name: name.into(), pass: true, checks: 0, failures: Vec::new(), notes: Vec::new() },
            failed: 0,
        }
    }

    fn fail(&mut self, label: String) {
        self.sub.pass = false;
        self.failed += 1;
        if self.sub.failures.len() < MAX_LISTED_FAILURES {
            self.sub.failures.push(label);
        }
    }

    fn expect(&mut self, label: impl FnOnce() -> String, outcome: Result<bool>) {
        self.sub.checks += 1;
        match outcome {
            Ok(true) => {}
            Ok(false) => self.fail(label()),
            Err(e) => self.fail(format!("{}: {e}", label())),
        }
    }

    fn report(&mut self, label: impl FnOnce() -> String, outcome: Result<VerificationReport>) {
        let label = label();
        if let Ok(VerificationReport { note: Some(note), .. }) = &outcome {
            self.sub.notes.push(format!("{label}: {note}"));
        }
        self.expect(|| label, outcome.map(|r| r.pass));
    }

    fn finish(mut self) -> SubResult {
        if self.failed > self.sub.failures.len() {
            self.sub.failures.push(format!("... {} failures in total", self.failed));
        }
        self.sub
    }
}

fn params(family: Family, n: usize, text: &str) -> FamilyParams {
    FamilyParams::parse(family, n, text).expect("suite parameters parse")
}

fn part(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).expect("suite partition")
}

fn tag(p: &FamilyParams) -> String {
    format!("{} n={}", p.family().tag(), p.n())
}

/// The five exact one-variable draws of each family.
pub fn reduction_draws(family: Family) -> Vec<FamilyParams> {
    let texts: [&str; 5] = match family {
        Family::AskeyWilson => [
            "q=1/2,t0=1/3,t1=1/5,t2=2/7,t3=-1/3",
            "q=1/3,t0=1/2,t1=1/5,t2=2/7,t3=-1/3",
            "q=1/4,t0=2/3,t1=-1/2,t2=1/7,t3=3/5",
            "q=2/5,t0=1/6,t1=3/4,t2=-2/9,t3=1/8",
            "q=1/7,t0=5/6,t1=1/3,t2=1/4,t3=-3/7",
        ],
        Family::Wilson => [
            "nu0=1,nu1=2/3,nu2=1/2,nu3=3/2",
            "nu0=1/3,nu1=1/4,nu2=5/2,nu3=2",
            "nu0=3/5,nu1=7/4,nu2=1/6,nu3=1",
            "nu0=2,nu1=1/2,nu2=1/3,nu3=5/4",
            "nu0=1/7,nu1=4/3,nu2=3/2,nu3=2/5",
        ],
        Family::ContinuousHahn => [
            "nu0p=1/2+1i,nu1p=2/3,nu0m=1/2-1i,nu1m=2/3",
            "nu0p=1+1/3i,nu1p=1/2-1/4i,nu0m=1-1/3i,nu1m=1/2+1/4i",
            "nu0p=3/4,nu1p=1/5+2i,nu0m=3/4,nu1m=1/5-2i",
            "nu0p=2+1/2i,nu1p=1,nu0m=2-1/2i,nu1m=1",
            "nu0p=1/3-1/5i,nu1p=3/2+1/3i,nu0m=1/3+1/5i,nu1m=3/2-1/3i",
        ],
        Family::Jacobi => [
            "nu0=1,nu1=1/2",
            "nu0=1/3,nu1=3/2",
            "nu0=5/2,nu1=2/5",
            "nu0=3/4,nu1=1/6",
            "nu0=2,nu1=7/3",
        ],
    };
    texts.iter().map(|t| params(family, 1, t)).collect()
}

/// Generic parameters for the operator criteria.
fn generic(family: Family, n: usize) -> FamilyParams {
    let text = match family {
        Family::AskeyWilson => "q=1/3,t=1/2,t0=1/2,t1=1/3,t2=1/5,t3=2/7",
        Family::Wilson => "nu=1/2,nu0=1/2,nu1=1/3,nu2=1,nu3=2",
        Family::ContinuousHahn => "nu=1/2,nu0p=1/2+1i,nu1p=1,nu0m=1/2-1i,nu1m=1",
        Family::Jacobi => "nu=1/2,nu0=1/2,nu1=3/2",
    };
    params(family, n, text)
}

/// Parameters satisfying each family's recurrence condition.
fn conditioned(family: Family, n: usize) -> FamilyParams {
    let text = match family {
        Family::AskeyWilson => "q=1/3,t=1/2,t0=1,t1=1/5,t2=2/7,t3=-1/3",
        Family::Wilson => "nu=1/3,nu0=1,nu1=2/3,nu2=1/2,nu3=3/2",
        Family::ContinuousHahn => "nu=1/2,nu0p=1,nu1p=2/3+1/2i,nu0m=1/3,nu1m=2/3-1/2i",
        Family::Jacobi => return params(family, n, "nu=1/2,nu0=1,nu1=3/2"),
    };
    params(family, n, text).make_self_dual()
}

const FAMILIES: [Family; 4] = [Family::AskeyWilson, Family::Wilson, Family::ContinuousHahn, Family::Jacobi];

fn onevar_reduction() -> Vec<SubResult> {
    FAMILIES
        .iter()
        .map(|&family| {
            let mut t = Tally::new(format!("{} l<=6", family.tag()));
            for (k, p) in reduction_draws(family).iter().enumerate() {
                for l in 0..=6u32 {
                    let outcome = build_monic(p, &part(&[l]))
                        .and_then(|built| Ok(built.monic == onevar_reference(p, l as usize)?));
                    t.expect(|| format!("draw {k} l={l}"), outcome);
                }
            }
            t.finish()
        })
        .collect()
}

fn eigen_systems() -> Vec<SubResult> {
    let cases = FAMILIES.iter().flat_map(|&f| [2, 3].map(|n| (f, n))).collect::<Vec<_>>();
    cases
        .par_iter()
        .map(|&(family, n)| {
            let p = generic(family, n);
            let mut t = Tally::new(format!("{} |lambda|<=4", tag(&p)));
            let basis = match MonicBasis::new(&p, 4) {
                Ok(b) => b,
                Err(e) => {
                    t.expect(|| "monic basis".into(), Err(e));
                    return t.finish();
                }
            };
            let rmax = if family == Family::Jacobi { 1 } else { n };
            for r in 1..=rmax {
                let op = DifferenceOperator::new(&p, r).and_then(|op| Ok((op.matrix(4)?, op)));
                let (matrix, op) = match op {
                    Ok(m) => m,
                    Err(e) => {
                        t.expect(|| format!("D_{r} matrix"), Err(e));
                        continue;
                    }
                };
                for lambda in partitions_up_to(n, 4) {
                    let outcome = (|| {
                        let poly = basis.monic(&lambda)?;
                        let image = matrix.apply(&poly)?;
                        Ok(image.sub(&poly.scale(&op.eigenvalue(&lambda)?))?.is_zero())
                    })();
                    t.expect(|| format!("r={r} {lambda}"), outcome);
                }
            }
            t.finish()
        })
        .collect()
}

fn commutativity() -> Vec<SubResult> {
    [Family::AskeyWilson, Family::Wilson, Family::ContinuousHahn]
        .iter()
        .map(|&family| {
            let p = generic(family, 2);
            let mut t = Tally::new(format!("{} |mu|<=3", tag(&p)));
            let outcome = (|| {
                let d1 = DifferenceOperator::new(&p, 1)?.matrix(3)?;
                let d2 = DifferenceOperator::new(&p, 2)?.matrix(3)?;
                Ok(d2.after(&d1)? == d1.after(&d2)?)
            })();
            t.expect(|| "D1 D2 = D2 D1".into(), outcome);
            t.finish()
        })
        .collect()
}

/// The displayed J three-term coefficients for `x p_l`, upward and downward.
fn jacobi_three_term(nu0: &ExactScalar, nu1: &ExactScalar, l: i64) -> (ExactScalar, ExactScalar) {
    let int = ExactScalar::integer;
    let half = ExactScalar::ratio(1, 2);
    let s = nu0.clone() + nu1;
    let two_l = int(2 * l);
    let up = (int(l) + &s) * (int(l) + nu0 + &half)
        * ((two_l.clone() + &s) * (two_l.clone() + &s + int(1))).inv().expect("generic");
    let down = if l == 0 {
        int(0)
    } else {
        int(l) * (int(l) + nu1 - &half) * ((two_l.clone() + &s) * (two_l + &s - int(1))).inv().expect("generic")
    };
    (up, down)
}

fn recurrences() -> Vec<SubResult> {
    let mut out: Vec<SubResult> = FAMILIES
        .par_iter()
        .map(|&family| {
            let p = conditioned(family, 2);
            let mut t = Tally::new(format!("{} r<=2 |lambda|<=3", tag(&p)));
            for lambda in partitions_up_to(2, 3) {
                for r in 1..=2 {
                    t.report(|| format!("r={r} {lambda}"), verify_recurrence(&p, r, &lambda, false));
                }
            }
            t.finish()
        })
        .collect();
    let mut t = Tally::new("n=1 three-term");
    for family in FAMILIES {
        for p in reduction_draws(family).iter().take(2) {
            for l in 0..=3u32 {
                t.report(|| format!("{} l={l}", p.family().tag()), verify_recurrence(p, 1, &part(&[l]), true));
            }
        }
    }
    for p in reduction_draws(Family::Jacobi) {
        let named = p.named_values();
        let value = |name: &str| named.iter().find(|(k, _)| *k == name).map(|(_, v)| v.clone()).expect("J parameter");
        let (nu0, nu1) = (value("nu0"), value("nu1"));
        for l in 0..=3i64 {
            let (up, down) = jacobi_three_term(&nu0, &nu1, l);
            let outcome = pieri_data(&p, 1, &part(&[l as u32])).map(|data| {
                data.terms.iter().all(|term| match term.target.parts()[0] as i64 - l {
                    1 => term.coefficient == up,
                    -1 => term.coefficient == down,
                    _ => term.coefficient == -(up.clone() + &down),
                })
            });
            t.expect(|| format!("J displayed l={l} nu0={nu0} nu1={nu1}"), outcome);
        }
    }
    out.push(t.finish());
    out
}

fn duality_specialization() -> Vec<SubResult> {
    let mut out = Vec::new();
    for family in [Family::AskeyWilson, Family::Wilson] {
        let mut dual = Tally::new(format!("{} duality n<=2", family.tag()));
        let mut spec = Tally::new(format!("{} specialization n<=2", family.tag()));
        for n in 1..=2 {
            let p = conditioned(family, n);
            for lambda in partitions_up_to(n, 2) {
                spec.report(|| format!("n={n} {lambda}"), specialization_check(&p, &lambda));
                for mu in partitions_up_to(n, 2) {
                    dual.report(|| format!("n={n} {lambda} {mu}"), duality_check(&p, &lambda, &mu));
                }
            }
        }
        out.push(dual.finish());
        out.push(spec.finish());
    }
    let mut t = Tally::new("J specialization |lambda|<=3");
    for n in 1..=3 {
        let p = conditioned(Family::Jacobi, n);
        for lambda in partitions_up_to(n, 3) {
            t.report(|| format!("n={n} {lambda}"), specialization_check(&p, &lambda));
        }
    }
    out.push(t.finish());
    out
}

fn norm_ratios() -> Vec<SubResult> {
    let mut out: Vec<SubResult> = FAMILIES
        .par_iter()
        .map(|&family| {
            let mut t = Tally::new(format!("{} step relation n<=3 |lambda|<=3", family.tag()));
            for n in 1..=3 {
                let p = conditioned(family, n);
                for lambda in partitions_up_to(n, 3) {
                    for r in 1..=n {
                        t.report(|| format!("n={n} {lambda} r={r}"), step_relation_check(&p, &lambda, r));
                    }
                }
            }
            t.finish()
        })
        .collect();
    let mut t = Tally::new("n=1 displayed norms l<=6");
    for family in FAMILIES {
        for (k, p) in reduction_draws(family).iter().enumerate() {
            for l in 0..=6u32 {
                let outcome = (|| Ok(norm_ratio_exact(p, &part(&[l]))? == onevar_norm_reference(p, l as usize)?))();
                t.expect(|| format!("{} draw {k} l={l}", family.tag()), outcome);
            }
        }
    }
    out.push(t.finish());
    out
}

fn numeric_orthogonality() -> Vec<SubResult> {
    let cases = vec![
        (params(Family::AskeyWilson, 1, "q=1/2,t0=1/2,t1=1/3,t2=-1/2,t3=1/5"), part(&[3])),
        (params(Family::Wilson, 1, "nu0=1,nu1=1/2,nu2=3/2,nu3=2"), part(&[3])),
        (params(Family::ContinuousHahn, 1, "nu0p=1/2+1/2i,nu1p=1,nu0m=1/2-1/2i,nu1m=1"), part(&[3])),
        (params(Family::Jacobi, 1, "nu0=1/2,nu1=3/2"), part(&[3])),
        (params(Family::AskeyWilson, 2, "q=1/2,t=1/2,t0=1/4,t1=1/2,t2=1/2,t3=1/2"), part(&[2, 1])),
        (params(Family::Jacobi, 2, "nu=1/2,nu0=1/2,nu1=3/2"), part(&[2, 1])),
    ];
    cases
        .par_iter()
        .map(|(p, lambda_max)| {
            let mut t = Tally::new(format!("{} lambda<={lambda_max}", tag(p)));
            let grid = GridSpec::default_for(p.family(), p.n());
            t.report(|| "gram".into(), orthogonality_report(p, lambda_max, &grid));
            t.finish()
        })
        .collect()
}

fn limit_transitions() -> Vec<SubResult> {
    let targets = [
        generic(Family::Wilson, 1),
        generic(Family::Wilson, 2),
        generic(Family::ContinuousHahn, 1),
        generic(Family::ContinuousHahn, 2),
        generic(Family::Jacobi, 1),
        generic(Family::Jacobi, 2),
    ];
    targets
        .par_iter()
        .map(|target| {
            let mut t = Tally::new(format!("AW->{}", tag(target)));
            let lambdas = partitions_up_to(target.n(), 2);
            t.report(
                || "|lambda|<=2".into(),
                LimitCase::halving(target.clone(), lambdas).and_then(|case| limit_report(&case)),
            );
            t.finish()
        })
        .collect()
}

/// Runs one criterion, or `None` for an unknown id.
pub fn criterion(id: u8) -> Option<CriterionResult> {
    let (_, name) = *CRITERIA.iter().find(|(k, _)| *k == id)?;
    let sub_results = match id {
        1 => onevar_reduction(),
        2 => eigen_systems(),
        3 => commutativity(),
        4 => recurrences(),
        5 => duality_specialization(),
        6 => norm_ratios(),
        7 => numeric_orthogonality(),
        8 => limit_transitions(),
        _ => unreachable!(),
    };
    Some(CriterionResult { id, name, pass: sub_results.iter().all(|s| s.pass), sub_results })
}

pub fn run_suite() -> SuiteReport {
    let criteria: Vec<CriterionResult> =
        CRITERIA.par_iter().map(|(id, _)| criterion(*id).expect("listed criterion")).collect();
    SuiteReport { pass: criteria.iter().all(|c| c.pass), criteria }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_respect_the_stated_ranges() {
        for p in reduction_draws(Family::AskeyWilson) {
            let q = p.named_values()[0].1.clone();
            assert!(q.is_real() && q.re() > &num_rational::BigRational::from_integer(0.into()));
            assert!(q.re() <= &num_rational::BigRational::new(1.into(), 2.into()));
        }
        for p in reduction_draws(Family::ContinuousHahn) {
            let v = p.named_values();
            let get = |name| v.iter().find(|(k, _)| *k == name).unwrap().1.clone();
            assert_eq!(get("nu0m"), get("nu0p").conj());
            assert_eq!(get("nu1m"), get("nu1p").conj());
        }
    }

    #[test]
    fn unknown_criterion() {
        assert!(criterion(9).is_none());
    }

    #[test]
    fn commutativity_criterion_passes() {
        let c = criterion(3).unwrap();
        assert!(c.pass, "{:?}", c.sub_results);
        assert_eq!(c.sub_results.len(), 3);
    }
}
