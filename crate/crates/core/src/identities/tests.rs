use super::*;

fn ex(s: &str) -> ExactScalar {
    s.parse().unwrap()
}

fn part(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn params(family: Family, n: usize, text: &str) -> FamilyParams {
    FamilyParams::parse(family, n, text).unwrap()
}

fn jacobi1() -> FamilyParams {
    params(Family::Jacobi, 1, "nu0=1,nu1=1/2")
}

fn aw_self_dual(n: usize) -> FamilyParams {
    params(Family::AskeyWilson, n, "q=1/3,t=1/2,t0=1,t1=1/5,t2=2/7,t3=-1/3").make_self_dual()
}

fn wilson_self_dual(n: usize) -> FamilyParams {
    params(Family::Wilson, n, "nu=1/3,nu0=1,nu1=2/3,nu2=1/2,nu3=3/2").make_self_dual()
}

fn hahn_self_dual(n: usize) -> FamilyParams {
    params(Family::ContinuousHahn, n, "nu=1/2,nu0p=1,nu1p=2/3+1/2i,nu0m=1/3,nu1m=2/3-1/2i").make_self_dual()
}

fn partitions(n: usize, max: u32) -> Vec<Partition> {
    crate::partitions::partitions_up_to(n, max)
}

#[test]
fn ehat_examples() {
    let j = ehat_poly(&jacobi1(), 1).unwrap();
    assert_eq!(j.coeff(&part(&[1])), ex("1/4"));
    assert_eq!(j.coeff(&part(&[0])), ex("-1/2"));

    let w = params(Family::Wilson, 2, "nu=1/3,nu0=1,nu1=1,nu2=1,nu3=1");
    let e = ehat_poly(&w, 1).unwrap();
    assert_eq!(e.coeff(&part(&[1, 0])), ex("-1"));
    // rho^ = (4/3, 1)
    assert_eq!(e.coeff(&part(&[0, 0])), -(ex("16/9") + ex("1")));

    let aw = params(Family::AskeyWilson, 1, "q=1/3,t0=1/2,t1=1/5,t2=2/7,t3=-1/3");
    let e = ehat_poly(&aw, 1).unwrap();
    assert_eq!(e.coeff(&part(&[1])), ex("1"));
    assert_eq!(e.coeff(&part(&[0])), ex("-5/2"));
}

#[test]
fn jacobi_three_term_coefficients() {
    let p = jacobi1();
    let (nu0, nu1) = (ex("1"), ex("1/2"));
    let half = ex("1/2");
    for l in 0..4i64 {
        let lx = ExactScalar::integer(l);
        let s = nu0.clone() + &nu1;
        let two_l = ExactScalar::integer(2 * l);
        let up = (lx.clone() + &s) * (lx.clone() + &nu0 + &half)
            * ((two_l.clone() + &s) * (two_l.clone() + &s + ExactScalar::integer(1))).inv().unwrap();
        let down = if l == 0 {
            ExactScalar::integer(0)
        } else {
            lx.clone() * (lx.clone() + &nu1 - &half)
                * ((two_l.clone() + &s) * (two_l + &s - ExactScalar::integer(1))).inv().unwrap()
        };
        let data = pieri_data(&p, 1, &part(&[l as u32])).unwrap();
        for term in &data.terms {
            let expected = match term.target.parts()[0] as i64 - l {
                1 => up.clone(),
                -1 => down.clone(),
                _ => -(up.clone() + &down),
            };
            assert_eq!(term.coefficient, expected, "l = {l}, target {}", term.target);
        }
        assert!(verify_recurrence(&p, 1, &part(&[l as u32]), false).unwrap().pass);
    }
}

#[test]
fn one_variable_recurrences_need_no_condition() {
    let w = params(Family::Wilson, 1, "nu0=1,nu1=2/3,nu2=1/2,nu3=3/2");
    assert!(!w.self_dual());
    assert!(matches!(verify_recurrence(&w, 1, &part(&[2]), false), Err(MathError::ConditionViolated(_))));
    let report = verify_recurrence(&w, 1, &part(&[2]), true).unwrap();
    assert!(report.pass, "{:?}", report.residual_terms);
    assert!(report.conditions.overridden);
}

#[test]
fn recurrences_hold_in_two_variables() {
    for p in [aw_self_dual(2), wilson_self_dual(2), hahn_self_dual(2)] {
        for lambda in partitions(2, 2) {
            for r in 1..=2 {
                let report = verify_recurrence(&p, r, &lambda, false).unwrap();
                assert!(report.pass, "{:?} r={r} {lambda}: {:?}", p.family(), report.residual_terms);
            }
        }
    }
    let j = params(Family::Jacobi, 2, "nu=1/2,nu0=1,nu1=1/2");
    for lambda in partitions(2, 2) {
        for r in 1..=2 {
            assert!(verify_recurrence(&j, r, &lambda, false).unwrap().pass);
        }
    }
}

#[test]
fn empty_set_term_is_minus_the_rest_in_one_variable() {
    for p in [wilson_self_dual(1), aw_self_dual(1)] {
        let data = pieri_data(&p, 1, &part(&[2])).unwrap();
        let total = data.terms.iter().fold(ExactScalar::integer(0), |a, t| a + &t.coefficient);
        assert!(total.is_zero());
    }
}

#[test]
fn specialization_matches() {
    let (lhs, rhs) = specialization_value(&jacobi1(), &part(&[1])).unwrap();
    assert_eq!(lhs, ex("12/5"));
    assert_eq!(rhs, lhs);
    for p in [aw_self_dual(2), wilson_self_dual(2), hahn_self_dual(2), params(Family::Jacobi, 2, "nu=1,nu0=1,nu1=1/2")] {
        for lambda in partitions(2, 3) {
            let report = specialization_check(&p, &lambda).unwrap();
            assert!(report.pass, "{:?} {lambda}: {:?}", p.family(), report.residual_terms);
        }
    }
}

#[test]
fn duality_holds_for_self_dual_parameters() {
    for p in [aw_self_dual(2), wilson_self_dual(2)] {
        for lambda in partitions(2, 2) {
            for mu in partitions(2, 2) {
                let report = duality_check(&p, &lambda, &mu).unwrap();
                assert!(report.pass, "{:?} {lambda} {mu}: {:?}", p.family(), report.residual_terms);
            }
        }
    }
    assert!(matches!(duality_check(&hahn_self_dual(1), &part(&[1]), &part(&[1])), Err(MathError::Unsupported(_))));
}

#[test]
fn wilson_duality_without_self_duality() {
    let p = params(Family::Wilson, 2, "nu=1/3,nu0=1,nu1=2/3,nu2=1/2,nu3=3/2");
    assert!(!p.self_dual());
    let report = duality_check(&p, &part(&[1, 0]), &part(&[1, 1])).unwrap();
    assert!(report.pass, "{:?}", report.residual_terms);
}

#[test]
fn one_variable_norms_match_the_classical_ratio() {
    let samples = [
        params(Family::AskeyWilson, 1, "q=1/3,t0=1/2,t1=1/5,t2=2/7,t3=-1/3"),
        params(Family::Wilson, 1, "nu0=1,nu1=2/3,nu2=1/2,nu3=3/2"),
        params(Family::ContinuousHahn, 1, "nu0p=1/2+i,nu1p=2/3,nu0m=1/2-i,nu1m=2/3"),
        jacobi1(),
    ];
    for p in &samples {
        for l in 0..5u32 {
            let lhs = norm_ratio_exact(p, &part(&[l])).unwrap();
            let rhs = onevar_norm_reference(p, l as usize).unwrap();
            assert_eq!(lhs, rhs, "{:?} l={l}", p.family());
        }
    }
}

#[test]
fn jacobi_norm_needs_the_half_shifted_factors() {
    // the variant without (nu0 + 1/2)_l (nu1 + 1/2)_l disagrees already at l = 1
    let p = jacobi1();
    let literal = ExactScalar::integer(16) * (ex("5/2") * ex("5/2") * ex("7/2")).inv().unwrap();
    assert_ne!(norm_ratio_exact(&p, &part(&[1])).unwrap(), literal);
}

#[test]
fn norm_step_relation_and_path_independence() {
    for p in [aw_self_dual(3), wilson_self_dual(3), hahn_self_dual(3), params(Family::Jacobi, 3, "nu=1/2,nu0=1,nu1=3/2")] {
        for lambda in partitions(3, 2) {
            for r in 1..=3 {
                let report = step_relation_check(&p, &lambda, r).unwrap();
                assert!(report.pass, "{:?} {lambda} r={r}: {:?}", p.family(), report.residual_terms);
                for s in 1..=3 {
                    assert!(path_independence_check(&p, &lambda, r, s).unwrap().pass);
                }
            }
        }
    }
}

#[test]
fn difference_equations() {
    for p in [aw_self_dual(2), wilson_self_dual(2), params(Family::Jacobi, 2, "nu=1/2,nu0=1,nu1=3/2")] {
        let report = difference_equation_check(&p, 4).unwrap();
        assert!(report.pass, "{:?}: {:?}", p.family(), report.residual_terms);
    }
}

#[test]
fn hahn_minus_w_factor_carries_a_sign() {
    let report = difference_equation_check(&hahn_self_dual(2), 4).unwrap();
    assert!(!report.pass);
    for term in &report.residual_terms {
        assert!(term.label.starts_with("d_w-"), "{}", term.label);
        let k: i64 = term.label.rsplit('=').next().unwrap().parse().unwrap();
        assert_eq!(term.value, if k % 2 == 0 { "1" } else { "-1" }.to_string());
    }
    // only odd k disagree
    assert_eq!(report.residual_terms.len(), 2 * 2);
}

#[test]
fn delta_ratio_matches_the_telescoped_products() {
    let p = wilson_self_dual(2);
    let model = AnyPieri::new(&p).unwrap();
    for lambda in partitions(2, 3) {
        let d = delta_hat_ratio(&p, &lambda).unwrap();
        assert_eq!(d.plus_ratio, model.delta_plus(&lambda).unwrap());
        assert_eq!(d.minus_ratio, model.delta_minus(&lambda).unwrap());
    }
}
