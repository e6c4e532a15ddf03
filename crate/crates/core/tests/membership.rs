use bincov::covariant::{is_covariant, lower_order, BinaryFormSpec, Covariant};
use bincov::fixtures;
use bincov::membership::{in_algebra, operator_closure_step};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn fx(name: &str) -> Covariant {
    fixtures::by_name(name).unwrap().covariant().unwrap()
}

#[test]
fn closure_outputs_are_covariants() {
    let spec = BinaryFormSpec::with_char(4, 3).unwrap();
    let found = operator_closure_step(&[Covariant::form(&spec)], 2, 3).unwrap();
    assert!(!found.is_empty());
    for c in &found {
        assert!(is_covariant(c.spec(), c.poly()).unwrap().covariant, "{}", c.poly());
    }
    assert_eq!(found[0].poly().monic(), fx("c01_char3").poly().monic());
}

#[test]
fn closure_on_sextic_reaches_degree_two_order_six() {
    let gens = [fx("sextic_f5_form"), fx("sextic_f5_c1")];
    let found = operator_closure_step(&gens, 3, 2).unwrap();
    let target = fx("sextic_f5_target").poly().monic();
    assert!(found.iter().any(|c| c.poly().monic() == target));
    for c in &found {
        assert!(is_covariant(c.spec(), c.poly()).unwrap().covariant, "{}", c.poly());
    }
}

#[test]
fn closure_without_valid_pairs_is_empty() {
    // on f alone the only l <= 1 needs 3 | 4
    let spec = BinaryFormSpec::with_char(4, 3).unwrap();
    assert!(operator_closure_step(&[Covariant::form(&spec)], 1, 1).unwrap().is_empty());
}

#[test]
fn invariant_product_lowers_to_power_of_a2() {
    let c01 = fx("c01_char3");
    let q = c01.pow(5).mul(&fx("c41_char3")).unwrap();
    let out = lower_order(&q, 2).unwrap();
    assert!(!out.is_zero());
    assert_eq!(out.poly().monic(), c01.pow(6).poly().monic());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Adding generators never turns a member into a non-member.
    #[test]
    fn membership_is_monotone(
        base in subsequence(vec!["c01_char3", "c41_char3", "c43_char3", "c63_char3", "c06_char3"], 0..=5),
        extra in subsequence(vec!["c01_char3", "c41_char3", "c43_char3", "c44_char3"], 0..=4),
        target in prop::sample::select(vec!["c44_char3", "c84_char3", "c43_char3", "c01_char3"]),
    ) {
        let small: Vec<Covariant> = base.iter().map(|n| fx(n)).collect();
        let mut large = small.clone();
        large.extend(extra.iter().map(|n| fx(n)));
        let t = fx(target);
        if in_algebra(&t, &small).unwrap().is_member() {
            prop_assert!(in_algebra(&t, &large).unwrap().is_member());
        }
    }
}
