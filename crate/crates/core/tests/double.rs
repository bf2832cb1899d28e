mod common;

use common::*;
use qdeform::bosonize::{group_sample, normal_monomials};
use qdeform::double::*;
use qdeform::freealg::Monomial;
use qdeform::Scalar;

fn pairing(name: &str, same_group: bool) -> SkewPairing {
    let job = job(name);
    SkewPairing::new(job.datum.clone(), job.lambda.clone(), job.relations.clone(), same_group, 6)
        .unwrap()
}

#[test]
fn sl2_pairing_values() {
    let p = pairing("sl2", false);
    let (md, pd) = (p.minus().datum(), p.plus().datum());
    let f = mono(md, &["f"]);
    let e = mono(pd, &["e"]);
    assert_eq!(p.eval(&f, &e).unwrap(), -c());
    let k = Monomial::from_group(pd.group().generator(0));
    let k1 = Monomial::from_group(md.group().generator(0));
    assert_eq!(p.eval(&k1, &k).unwrap(), Scalar::q_pow(-2));
    assert!(p.eval(&k1, &e).unwrap().is_zero());
    assert!(p.eval(&f, &k).unwrap().is_zero());
    assert!(p.eval(&Monomial::one(md), &Monomial::one(pd)).unwrap().is_one());
    let inv = p.inverse(&f, &e).unwrap();
    assert!(!inv.is_zero());
}

#[test]
fn skew_pairing_laws() {
    for (name, same) in [("sl2", false), ("sl2", true), ("sl3", false), ("uq-sl2-N5", false)] {
        let p = pairing(name, same);
        let report = p.check_laws(3).unwrap();
        assert!(report.passed(), "{name}: {:?}", report.first_failure());
    }
}

#[test]
fn sl2_double_and_quotient() {
    let job = job("sl2");
    let dp = deformation(&job, 6);
    let double = DoublePresentation::build(pairing("sl2", false), 5).unwrap();
    assert!(double.generator_rules_check().passed());
    assert!(double.pairing_product_check(2).unwrap().passed());
    let tensor = double.tensor();
    let basis = normal_monomials(tensor.presentation(), 3, &group_sample(tensor.datum(), false)).unwrap();
    assert!(double.cocycle().cocycle_identities(&basis, 3).unwrap().passed());
    let q = double.quotient_central().unwrap();
    assert!(q.presentation().render_rules().contains("e*f -> q^-2*f*e"));
    assert!(verify_double_iso(&q, &dp, 5).unwrap().passed());
    assert!(extraction_consistency(&double, &dp).unwrap().passed());
}

#[test]
fn same_group_double_matches() {
    let job = job("sl2");
    let dp = deformation(&job, 6);
    let double = DoublePresentation::build(pairing("sl2", true), 5).unwrap();
    assert!(double.generator_rules_check().passed());
    let q = double.quotient_central().unwrap();
    assert!(verify_double_iso(&q, &dp, 5).unwrap().passed());
}

#[test]
fn wrong_sign_link_is_rejected() {
    let job = job("sl2");
    let negated = qdeform::deform::DeformedPresentation::build(
        job.datum.clone(),
        job.lambda.scaled(&Scalar::from_i64(-1)),
        vec![],
        6,
    )
    .unwrap();
    let double = DoublePresentation::build(pairing("sl2", false), 5).unwrap();
    let q = double.quotient_central().unwrap();
    let report = verify_double_iso(&q, &negated, 5).unwrap();
    assert!(!report.passed());
    let bad = report.failures().find(|f| f.check == "ISO_RELATION").unwrap();
    let residue = bad.residue.clone().unwrap();
    assert!(residue.contains("K^2"), "{residue}");
}

#[test]
fn sl3_double_is_the_deformation() {
    let job = job("sl3");
    let dp = deformation(&job, 6);
    let double = DoublePresentation::build(pairing("sl3", false), 5).unwrap();
    assert!(double.generator_rules_check().passed());
    let q = double.quotient_central().unwrap();
    assert!(verify_double_iso(&q, &dp, 5).unwrap().passed());
}

#[test]
fn single_component_is_rejected() {
    let job = job("sl3-plus");
    let err = SkewPairing::new(job.datum.clone(), job.lambda.clone(), vec![], false, 4).unwrap_err();
    assert!(matches!(err, DoubleError::ComponentCount(1)), "{err:?}");
}
