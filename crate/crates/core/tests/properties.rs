use proptest::prelude::*;

use mvop::identities::{path_independence_check, step_relation_check};
use mvop::partitions::{dominance_leq, ideal, partitions_up_to};
use mvop::polynomials::{build_monic, onevar_reference};
use mvop::{ExactScalar, Family, FamilyParams, Partition, SymPoly, VariableKind};

fn rational() -> impl Strategy<Value = ExactScalar> {
    (-30i64..30, 1i64..12).prop_map(|(a, b)| ExactScalar::ratio(a, b))
}

fn gaussian() -> impl Strategy<Value = ExactScalar> {
    (rational(), rational()).prop_map(|(a, b)| a + b * ExactScalar::i())
}

fn positive(max_num: i64) -> impl Strategy<Value = ExactScalar> {
    (1i64..max_num, 1i64..8).prop_map(|(a, b)| ExactScalar::ratio(a, b))
}

fn partition(n: usize, max: u32) -> impl Strategy<Value = Partition> {
    let all = partitions_up_to(n, max);
    (0..all.len()).prop_map(move |k| all[k].clone())
}

fn sympoly(n: usize) -> impl Strategy<Value = SymPoly<ExactScalar>> {
    proptest::collection::vec((partition(n, 3), gaussian()), 0..5)
        .prop_map(move |terms| SymPoly::from_terms(VariableKind::WEven, n, terms).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalar_display_round_trips(x in gaussian()) {
        prop_assert_eq!(x.to_string().parse::<ExactScalar>().unwrap(), x);
    }

    #[test]
    fn scalar_inverse(x in gaussian()) {
        prop_assume!(!x.is_zero());
        prop_assert_eq!(x.clone() * x.inv().unwrap(), ExactScalar::integer(1));
    }

    #[test]
    fn dominance_is_a_partial_order(a in partition(3, 4), b in partition(3, 4)) {
        let ab = a.size() == b.size() && dominance_leq(&a, &b).unwrap();
        let ba = a.size() == b.size() && dominance_leq(&b, &a).unwrap();
        prop_assert_eq!(ab && ba, a == b);
        prop_assert!(ideal(&a).contains(&a));
    }

    #[test]
    fn ideal_is_down_closed(a in partition(3, 4)) {
        let down = ideal(&a);
        for mu in &down {
            for nu in ideal(mu) {
                prop_assert!(down.contains(&nu));
            }
        }
    }

    #[test]
    fn sympoly_ring_laws(f in sympoly(2), g in sympoly(2), h in sympoly(2)) {
        prop_assert_eq!(f.add(&g).unwrap(), g.add(&f).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        let left = f.mul(&g.add(&h).unwrap()).unwrap();
        let right = f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert!(f.sub(&f).unwrap().is_zero());
    }

    #[test]
    fn affine_substitution_inverts(f in sympoly(2), a in rational(), b in rational()) {
        prop_assume!(!b.is_zero());
        let binv = b.inv().unwrap();
        let back = f
            .substitute_affine(&a, &b, VariableKind::ChPlain)
            .substitute_affine(&(-(a.clone() * &binv)), &binv, VariableKind::WEven);
        prop_assert_eq!(back, f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn jacobi_one_variable_reduction(nu0 in positive(20), nu1 in positive(20), l in 0u32..4) {
        let p = FamilyParams::parse(Family::Jacobi, 1, &format!("nu0={nu0},nu1={nu1}")).unwrap();
        let lambda = Partition::new(vec![l]).unwrap();
        prop_assert_eq!(build_monic(&p, &lambda).unwrap().monic, onevar_reference(&p, l as usize).unwrap());
    }

    #[test]
    fn wilson_norm_step_relation(
        nu in positive(6), nu1 in positive(12), nu2 in positive(12), nu3 in positive(12),
        lambda in partition(2, 3), r in 1usize..=2,
    ) {
        let text = format!("nu={nu},nu0=1,nu1={nu1},nu2={nu2},nu3={nu3}");
        let p = FamilyParams::parse(Family::Wilson, 2, &text).unwrap().make_self_dual();
        if let Ok(report) = step_relation_check(&p, &lambda, r) {
            prop_assert!(report.pass, "{:?}", report.residual_terms);
        }
        if let Ok(report) = path_independence_check(&p, &lambda, 1, 2) {
            prop_assert!(report.pass, "{:?}", report.residual_terms);
        }
    }

    #[test]
    fn askey_wilson_norm_step_relation(
        q in (2i64..6).prop_map(|d| ExactScalar::ratio(1, d)),
        t in (2i64..6).prop_map(|d| ExactScalar::ratio(1, d)),
        t1 in rational(), t2 in rational(), t3 in rational(),
        lambda in partition(2, 2), r in 1usize..=2,
    ) {
        let text = format!("q={q},t={t},t0=1,t1={t1},t2={t2},t3={t3}");
        let p = FamilyParams::parse(Family::AskeyWilson, 2, &text).unwrap().make_self_dual();
        if let Ok(report) = step_relation_check(&p, &lambda, r) {
            prop_assert!(report.pass, "{:?}", report.residual_terms);
        }
    }
}
