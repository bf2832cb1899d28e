use num_rational::BigRational;
use proptest::prelude::*;
use qdeform::poly::QPoly;
use qdeform::scalar::{gauss_binomial, gauss_binomial_unbalanced, q_integer};
use qdeform::{Field, Scalar, ScalarError};

fn rational_function() -> impl Strategy<Value = Scalar> {
    (
        prop::collection::vec(-4i64..=4, 0..4),
        prop::collection::vec(-3i64..=3, 1..3),
        -3i64..=3,
    )
        .prop_filter_map("nonzero denominator", |(num, den, shift)| {
            let den = QPoly::from_i64s(&den);
            if den.is_zero() {
                return None;
            }
            let s = Scalar::rational_function(QPoly::from_i64s(&num), den).ok()?;
            Some(s * Scalar::q_pow(shift))
        })
}

fn cyclotomic() -> impl Strategy<Value = Scalar> {
    prop::collection::vec(-5i64..=5, 0..6)
        .prop_map(|c| Scalar::cyclotomic(5, QPoly::from_i64s(&c)))
}

fn field_axioms(a: &Scalar, b: &Scalar, c: &Scalar) {
    assert_eq!(a + b, b + a);
    assert_eq!(a * b, b * a);
    assert_eq!(&(a + b) + c, a + &(b + c));
    assert_eq!(&(a * b) * c, a * &(b * c));
    assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    assert!((a - a).is_zero());
    assert_eq!(a + &Scalar::zero(), a.clone());
    assert_eq!(a * &Scalar::one(), a.clone());
    if !a.is_zero() {
        assert!((a * &a.inv().unwrap()).is_one());
    }
}

proptest! {
    #[test]
    fn rational_functions_form_a_field(a in rational_function(), b in rational_function(), c in rational_function()) {
        field_axioms(&a, &b, &c);
    }

    #[test]
    fn cyclotomic_elements_form_a_field(a in cyclotomic(), b in cyclotomic(), c in cyclotomic()) {
        field_axioms(&a, &b, &c);
    }

    #[test]
    fn canonical_form_is_unique(a in rational_function(), b in rational_function()) {
        if !b.is_zero() {
            prop_assert_eq!(&(&a * &b) / &b, a.clone());
        }
        prop_assert_eq!(a.normalize(), a.clone());
        if let Scalar::RationalFunction(f) = &a {
            prop_assert_eq!(f.denominator().lead(), BigRational::from_integer(1.into()));
        }
    }

    #[test]
    fn specialization_is_a_ring_map(a in rational_function(), b in rational_function()) {
        let (Ok(sa), Ok(sb)) = (a.specialize(5), b.specialize(5)) else { return Ok(()) };
        prop_assert_eq!((&a + &b).specialize(5).unwrap(), &sa + &sb);
        if let Ok(sab) = (&a * &b).specialize(5) {
            prop_assert_eq!(sab, &sa * &sb);
        }
    }

    #[test]
    fn q_binomial_pascal_rule(n in 1u32..7, k in 0u32..7) {
        prop_assume!(k <= n);
        let q = Scalar::q();
        let lhs = gauss_binomial(n, k, &q).unwrap();
        let left = if k <= n - 1 {
            Scalar::q_pow(k as i64) * gauss_binomial(n - 1, k, &q).unwrap()
        } else {
            Scalar::zero()
        };
        let right = if k >= 1 {
            Scalar::q_pow(-((n - k) as i64)) * gauss_binomial(n - 1, k - 1, &q).unwrap()
        } else {
            Scalar::zero()
        };
        prop_assert_eq!(lhs, left + right);
    }

    #[test]
    fn power_laws(a in rational_function(), m in -3i64..=3, n in -3i64..=3) {
        prop_assume!(!a.is_zero());
        prop_assert_eq!(a.pow(m).unwrap() * a.pow(n).unwrap(), a.pow(m + n).unwrap());
    }
}

#[test]
fn constants_collapse_to_rationals() {
    let x = Scalar::q() - Scalar::q() + Scalar::from_ratio(3, 4);
    assert_eq!(x.field(), Field::Rational);
    assert_eq!(x.to_string(), "3/4");
    let z = Scalar::zeta_pow(5, 2) * Scalar::zeta_pow(5, 3);
    assert!(z.is_one());
    assert_eq!(z.field(), Field::Rational);
}

#[test]
fn rendering() {
    assert_eq!(Scalar::q_pow(-2).to_string(), "q^-2");
    assert_eq!((Scalar::q() + Scalar::q_pow(-1)).to_string(), "q + q^-1");
    let c = (Scalar::q() - Scalar::q_pow(-1)).inv().unwrap();
    assert_eq!(c.to_string(), "q/(q^2 - 1)");
    assert_eq!((-c).to_string(), "-q/(q^2 - 1)");
}

#[test]
fn root_of_unity_identities() {
    let z = Scalar::zeta_pow(5, 1);
    let mut sum = Scalar::zero();
    for k in 0..5 {
        sum += &z.pow(k).unwrap();
    }
    assert!(sum.is_zero());
    assert!(z.pow(5).unwrap().is_one());
    assert!(!z.pow(2).unwrap().is_one());
    for k in 1..5 {
        assert!(gauss_binomial_unbalanced(5, k, &z.pow(2).unwrap()).unwrap().is_zero());
    }
    assert!(q_integer(5, &z).unwrap().is_zero());
    assert_eq!(
        gauss_binomial(5, 5, &z).unwrap(),
        Scalar::one()
    );
}

#[test]
fn q_integers_and_binomials() {
    let q = Scalar::q();
    assert_eq!(q_integer(2, &q).unwrap(), &q + &q.inv().unwrap());
    assert_eq!(
        gauss_binomial(3, 1, &q).unwrap(),
        Scalar::q_pow(2) + Scalar::one() + Scalar::q_pow(-2)
    );
    assert_eq!(
        gauss_binomial_unbalanced(2, 1, &Scalar::q_pow(2)).unwrap(),
        Scalar::one() + Scalar::q_pow(2)
    );
    assert_eq!(gauss_binomial_unbalanced(4, 2, &Scalar::one()).unwrap(), Scalar::from_i64(6));
}

#[test]
fn errors() {
    assert_eq!(Scalar::zero().inv(), Err(ScalarError::DivisionByZero));
    assert!(Scalar::q().checked_add(&Scalar::zeta_pow(5, 1)).is_err());
    let pole = (Scalar::q_pow(2) + Scalar::q() + Scalar::one()).inv().unwrap();
    assert!(pole.specialize(3).is_err());
    assert!(pole.specialize(5).is_ok());
}
