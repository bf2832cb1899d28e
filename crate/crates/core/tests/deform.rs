mod common;

use common::*;
use qdeform::deform::*;
use qdeform::freealg::{Monomial, NcPoly};
use qdeform::groebner::Presentation;
use qdeform::Scalar;

#[test]
fn sl2_sections() {
    let job = job("sl2");
    let dp = deformation(&job, 6);
    let d = dp.datum();
    let e = mono(d, &["e"]);
    assert_eq!(dp.phi_inverse(&e).unwrap(), poly(d, "-q^-2*e*K^-1"));
    let ef = dp.graded().presentation().normal_form_word(&word(d, &["e", "f"]));
    assert_eq!(
        dp.phi_inverse_poly(&ef).unwrap(),
        poly(d, "q^-2*f*e*K^-2").sub(&poly(d, "K^-2").scale(&c()))
    );
    for m in dp.basis(3).unwrap() {
        let phi = dp.phi(&m);
        assert_eq!(dp.eta_inverse(&dp.eta(&m)).unwrap(), NcPoly::monomial(m.clone(), Scalar::one()));
        assert!(!phi.is_zero());
    }
}

#[test]
fn sl2_cocycle_values() {
    let job = job("sl2");
    let dp = deformation(&job, 6);
    let d = dp.datum();
    let sigma = dp.extracted_cocycle();
    let (e, f) = (mono(d, &["e"]), mono(d, &["f"]));
    assert_eq!(sigma.value(&e, &f).unwrap(), -c());
    assert!(sigma.value(&f, &e).unwrap().is_zero());
    let one = Monomial::one(d);
    let k = group_monomial(d.group().generator(0));
    for x in [&one, &k, &e, &f] {
        assert_eq!(sigma.value(&one, x).unwrap(), if x.word.is_empty() { Scalar::one() } else { Scalar::zero() });
    }
    assert!(sigma.value(&k, &k).unwrap().is_one());
    let basis = dp.basis(3).unwrap();
    assert!(sigma.cocycle_identities(&basis, 3).unwrap().passed());
    assert!(sigma.convolution_check(&basis, 3).unwrap().passed());
    assert!(dp.transport_check(&sigma, 2).unwrap().passed());
    let table = sigma.table(&basis, 2).unwrap();
    assert_eq!(table.get(&e, &f), Some(&-c()));
    assert!(table.render(d).contains("sigma(e ; f) = -q/(q^2 - 1)"));
}

#[test]
fn sl2_deformed_product() {
    let job = job("sl2");
    let dp = deformation(&job, 6);
    let d = dp.datum();
    let sigma = dp.extracted_cocycle();
    let (e, f) = (mono(d, &["e"]), mono(d, &["f"]));
    let ef = sigma.deformed_product(&e, &f).unwrap();
    let fe = sigma.deformed_product(&f, &e).unwrap();
    let comm = ef.sub(&fe.scale(&Scalar::q_pow(-2)));
    assert_eq!(comm, poly(d, "K^2 - 1").scale(&c()));
}

#[test]
fn comodule_and_filtration_checks() {
    for name in ["sl2", "uq-sl2-N5"] {
        let dp = deformation(&job(name), 6);
        assert!(dp.comodule_check(3).unwrap().passed(), "{name}");
        assert!(dp.colinearity_check(3).unwrap().passed(), "{name}");
        assert!(dp.filtration_check().passed(), "{name}");
    }
}

#[test]
fn corrupted_cleft_constant_is_detected() {
    let job = job("sl2");
    let mut dp = deformation(&job, 6);
    let datum = dp.datum_arc().clone();
    let rels = cross_relations(&datum, &dp.lambda().scaled(&Scalar::from_i64(2)), Variant::Cleft);
    let wrong = Presentation::from_relations(datum, &rels).unwrap().complete(6).unwrap();
    dp.replace_cleft(wrong);
    let report = dp.comodule_check(2).unwrap();
    assert!(!report.passed());
    let first = report.first_failure().unwrap();
    assert!(first.residue.is_some());
}

#[test]
fn corrupted_link_breaks_the_coproduct() {
    let dp = corrupted_link();
    let report = dp.deformed().check_hopf_axioms(4).unwrap();
    assert!(!report.passed());
    let bad = report.first_failure().unwrap();
    assert!(bad.residue.as_deref().is_some_and(|r| r != "0"), "{bad:?}");
    assert!(bad.subject.contains("e*f"), "{bad:?}");
    assert!(dp.graded().check_hopf_axioms(3).unwrap().passed());
}

#[test]
fn zero_link_gives_identical_rules() {
    let job = job("sl2-zero");
    let dp = deformation(&job, 6);
    assert_eq!(
        dp.graded().presentation().render_rules(),
        dp.deformed().presentation().render_rules()
    );
    assert_eq!(dp.graded().presentation().render_rules(), dp.cleft().render_rules());
    let sigma = dp.extracted_cocycle();
    let basis = dp.basis(2).unwrap();
    for x in &basis {
        for y in &basis {
            let trivial = x.word.is_empty() && y.word.is_empty();
            let want = if trivial { Scalar::one() } else { Scalar::zero() };
            assert_eq!(sigma.value(x, y).unwrap(), want);
        }
    }
}

#[test]
fn sl3_cocycle_and_hopf() {
    let job = job("sl3");
    let dp = deformation(&job, 6);
    assert!(dp.deformed().check_hopf_axioms(4).unwrap().passed());
    let sigma = dp.extracted_cocycle();
    let basis = dp.basis(3).unwrap();
    assert!(sigma.cocycle_identities(&basis, 3).unwrap().passed());
    assert!(dp.transport_check(&sigma, 2).unwrap().passed());
    let d = dp.datum();
    let (e1, f1, f2) = (mono(d, &["E1"]), mono(d, &["F1"]), mono(d, &["F2"]));
    assert_eq!(sigma.value(&e1, &f1).unwrap(), -c());
    assert!(sigma.value(&e1, &f2).unwrap().is_zero());
}

#[test]
fn degree_bound_is_enforced() {
    let dp = deformation(&job("sl2"), 6);
    assert!(matches!(
        dp.graded_dims(9),
        Err(DeformError::DegreeExceedsBound { .. }) | Err(DeformError::Rewrite(_))
    ));
    let reports = dp.completion_reports();
    assert_eq!(reports.len(), 3);
    assert!(reports.iter().all(|r| r.rules_added == 0));
}

#[test]
fn dimension_table_rendering() {
    let dims = deformation(&job("uq-sl2-N5"), 10).graded_dims(10).unwrap();
    let text = dims.to_string();
    assert!(text.contains("total 125 125"), "{text}");
    assert!(dims.all_equal());
}
