mod common;

use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use qdeform::abgroup::GroupSpec;
use qdeform::braided::*;
use qdeform::freealg::{NcPoly, Word};
use qdeform::groebner::Presentation;
use qdeform::yd::{LetterSpec, YdDatum};
use qdeform::Scalar;

fn free(name: &str) -> Presentation {
    free_presentation(&job(name).datum)
}

/// Applies `Delta` to one leg of a tensor, giving three legs.
fn expand(datum: &YdDatum, t: &BraidedTensor, left: bool) -> Vec<(Word, Word, Word, Scalar)> {
    let mut out = Vec::new();
    for ((a, b), c) in t.terms() {
        let inner = word_coproduct(datum, if left { a } else { b });
        for ((x, y), d) in inner.terms() {
            let v = c * d;
            if left {
                out.push((x.clone(), y.clone(), b.clone(), v));
            } else {
                out.push((a.clone(), x.clone(), y.clone(), v));
            }
        }
    }
    out.sort_by(|p, q| (&p.0, &p.1, &p.2).cmp(&(&q.0, &q.1, &q.2)));
    let mut merged: Vec<(Word, Word, Word, Scalar)> = Vec::new();
    for t in out {
        match merged.last_mut() {
            Some(last) if (&last.0, &last.1, &last.2) == (&t.0, &t.1, &t.2) => last.3 += &t.3,
            _ => merged.push(t),
        }
    }
    merged.retain(|t| !t.3.is_zero());
    merged
}

proptest! {
    #[test]
    fn coproduct_is_an_algebra_map(a in prop::collection::vec(0u16..4, 0..4), b in prop::collection::vec(0u16..4, 0..4)) {
        let job = job("sl3");
        let d = &job.datum;
        let (a, b) = (Word::new(a), Word::new(b));
        let lhs = word_coproduct(d, &a.concat(&b));
        let rhs = braided_mul_t2(d, &word_coproduct(d, &a), &word_coproduct(d, &b));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn coproduct_is_coassociative() {
    let job = job("sl2");
    let d = &job.datum;
    let pres = free("sl2");
    for n in 0..=4 {
        for w in pres.normal_words(n).unwrap() {
            let t = word_coproduct(d, &w);
            assert_eq!(expand(d, &t, true), expand(d, &t, false), "{}", w.render(d));
        }
    }
}

#[test]
fn tensor_square_product() {
    let job = job("sl2");
    let d = &job.datum;
    let (e, f) = (word(d, &["e"]), word(d, &["f"]));
    let one = Word::empty();
    let x = BraidedTensor::pure(one.clone(), e.clone(), Scalar::one());
    let y = BraidedTensor::pure(f.clone(), one.clone(), Scalar::one());
    assert_eq!(
        braided_mul_t2(d, &x, &y),
        BraidedTensor::pure(f.clone(), e.clone(), Scalar::q_pow(-2))
    );
    let x = BraidedTensor::pure(e.clone(), one.clone(), Scalar::one());
    let y = BraidedTensor::pure(one.clone(), f.clone(), Scalar::one());
    assert_eq!(braided_mul_t2(d, &x, &y), BraidedTensor::pure(e, f, Scalar::one()));
}

#[test]
fn coproduct_of_ef() {
    let job = job("sl2");
    let d = &job.datum;
    let t = braided_coproduct(d, &poly(d, "e*f")).unwrap();
    let (e, f, ef, fe) = (
        word(d, &["e"]),
        word(d, &["f"]),
        word(d, &["e", "f"]),
        word(d, &["f", "e"]),
    );
    let mut want = BraidedTensor::pure(ef.clone(), Word::empty(), Scalar::one());
    want.add_term(e.clone(), f.clone(), Scalar::one());
    want.add_term(f, e, Scalar::q_pow(-2));
    want.add_term(Word::empty(), ef, Scalar::one());
    assert_eq!(t, want);
    assert!(!t.terms().contains_key(&(fe, Word::empty())));
    assert!(braided_coproduct(d, &poly(d, "e*K")).is_err());
}

#[test]
fn commutators() {
    let job = job("sl2");
    let d = &job.datum;
    let (e, f) = (poly(d, "e"), poly(d, "f"));
    assert_eq!(braided_commutator(d, &e, &f), poly(d, "e*f - q^-2*f*e"));
    assert_eq!(braided_commutator(d, &e, &e), poly(d, "(1 - q^2)*e*e"));
    assert_eq!(
        braided_commutator(d, &f, &e),
        braided_commutator(d, &e, &f).scale(&Scalar::q_pow(2).neg_ref())
    );
}

#[test]
fn commutator_defect_is_one_minus_double_braiding() {
    for name in ["sl2", "sl3", "uq-sl2-N5"] {
        let job = job(name);
        let d = &job.datum;
        let pres = free_presentation(&job.datum);
        for v in 0..d.len() {
            for w in 0..d.len() {
                let (pv, pw) = (NcPoly::letter(d, v), NcPoly::letter(d, w));
                let defect = primitivity_defect(&pres, &braided_commutator(d, &pv, &pw)).unwrap();
                let c2 = d.q(v, w) * d.q(w, v);
                let coef = Scalar::one() - c2;
                let want = if coef.is_zero() {
                    BraidedTensor::zero()
                } else {
                    BraidedTensor::pure(Word::letter(v), Word::letter(w), coef)
                };
                assert_eq!(defect, want, "{name} ({v},{w})");
                let cross = d.component_of(v) != d.component_of(w);
                assert_eq!(defect.is_zero(), cross, "{name} ({v},{w})");
            }
        }
    }
}

#[test]
fn serre_elements_are_primitive() {
    for name in ["sl3-plus", "sl3"] {
        for order in [["minus", "plus"], ["plus", "minus"]] {
            let mut job = common::job(name);
            if job.datum.components().len() == 2 {
                job = job
                    .with_component_order(&order.map(String::from))
                    .unwrap();
            }
            let d = &job.datum;
            let pres = free_presentation(&job.datum);
            for i in 0..d.len() {
                for j in 0..d.len() {
                    if i == j || d.component_of(i) != d.component_of(j) {
                        continue;
                    }
                    let u = serre_element(d, i, j, -1).unwrap();
                    assert!(is_primitive(&pres, &u).unwrap(), "{}", u.render(d));
                }
            }
        }
    }
    let job = job("sl3");
    let d = &job.datum;
    let u = serre_element(d, letter(d, "E1"), letter(d, "E2"), -1).unwrap();
    assert_eq!(u, poly(d, "E1*E1*E2 - (q + q^-1)*E1*E2*E1 + E2*E1*E1"));
}

#[test]
fn serre_commutes_primitively_with_cross_letters() {
    let job = job("sl3");
    let d = &job.datum;
    let pres = free_presentation(&job.datum);
    let u = serre_element(d, letter(d, "E1"), letter(d, "E2"), -1).unwrap();
    for name in ["F1", "F2"] {
        let x = poly(d, name);
        let br = braided_commutator(d, &u, &x);
        assert!(is_primitive(&pres, &br).unwrap());
    }
}

#[test]
fn serre_element_errors() {
    let job = job("sl3");
    let d = &job.datum;
    assert!(matches!(
        serre_element(d, letter(d, "E1"), letter(d, "F2"), -1),
        Err(BraidedError::DifferentComponents(..))
    ));
    assert!(serre_element(d, 0, 0, -1).is_err());
    let job2 = common::job("sl3-plus");
    let d2 = &job2.datum;
    let u0 = serre_element(d2, 0, 1, 0).unwrap();
    assert_eq!(u0, braided_commutator(d2, &NcPoly::letter(d2, 0), &NcPoly::letter(d2, 1)));
}

#[test]
fn primitives_of_the_free_algebra() {
    let pres = free("sl3-plus");
    let d = pres.datum();
    assert!(find_primitives(&pres, None, 2).unwrap().is_empty());
    let three = find_primitives(&pres, None, 3).unwrap();
    assert_eq!(three.len(), 2);
    for (i, j) in [(0, 1), (1, 0)] {
        let u = serre_element(d, i, j, -1).unwrap();
        assert!(three.contains(&u), "{}", u.render(d));
    }
    assert!(!is_primitive(&pres, &poly(d, "E1*E1")).unwrap());
    assert!(is_primitive(&pres, &poly(d, "E1")).unwrap());
}

#[test]
fn root_of_unity_power_is_primitive() {
    let t = GroupSpec::new(&[], &[("K", 5)]).unwrap();
    let e = LetterSpec {
        name: "e".into(),
        component: "plus".into(),
        g: t.generator(0),
        chi: t.character(vec![Scalar::zeta_pow(5, 2)]).unwrap(),
    };
    let d = Arc::new(YdDatum::new(t, vec!["plus".into()], vec![e]).unwrap());
    let pres = free_presentation(&d);
    let prims = find_primitives(&pres, None, 5).unwrap();
    assert_eq!(prims, vec![poly(&d, "e^5")]);
    for n in 2..5 {
        assert!(find_primitives(&pres, None, n).unwrap().is_empty());
    }
    let (sat, added) = saturate(&pres, 6).unwrap();
    assert_eq!(added, vec![poly(&d, "e^5")]);
    assert_eq!(sat.normal_word_counts(6).unwrap(), [1, 1, 1, 1, 1, 0, 0]);
}

#[test]
fn rendering_of_tensors() {
    let job = job("sl2");
    let d = &job.datum;
    let t = braided_coproduct(d, &poly(d, "e")).unwrap();
    let s = t.render(d);
    assert!(s.contains("e (x) 1") && s.contains("1 (x) e"), "{s}");
}
