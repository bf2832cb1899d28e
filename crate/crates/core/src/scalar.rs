//! Exact scalars: rationals, rational functions in `q`, and cyclotomic numbers.
//!
//! Every value is kept in a canonical form so that derived equality and
//! hashing are value equality. Constants always collapse to the rational
//! kind, which lets rationals combine freely with either of the other kinds.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::QPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot combine scalars from {left} and {right}")]
    KindMismatch { left: Field, right: Field },
    #[error("pole at a primitive {order}-th root of unity")]
    Pole { order: u32 },
    #[error("q-integer [{m}] vanishes, so the binomial coefficient is undefined")]
    VanishingQInteger { m: u32 },
}

/// The coefficient field a scalar lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    RationalFunction,
    Cyclotomic(u32),
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("Q"),
            Field::RationalFunction => f.write_str("Q(q)"),
            Field::Cyclotomic(n) => write!(f, "Q(zeta_{n})"),
        }
    }
}

impl Field {
    /// `q^k` or `zeta^k`; the rational field has no generator and yields 1.
    pub fn gen_pow(self, k: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::one(),
            Field::RationalFunction => Scalar::q_pow(k),
            Field::Cyclotomic(n) => Scalar::zeta_pow(n, k),
        }
    }

    /// The smallest field containing both, if any.
    pub fn join(self, other: Field) -> Result<Field, ScalarError> {
        match (self, other) {
            (Field::Rational, f) | (f, Field::Rational) => Ok(f),
            (a, b) if a == b => Ok(a),
            (left, right) => Err(ScalarError::KindMismatch { left, right }),
        }
    }
}

/// A reduced fraction of polynomials with monic denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: QPoly,
    den: QPoly,
}

impl RatFunc {
    pub fn numerator(&self) -> &QPoly {
        &self.num
    }

    pub fn denominator(&self) -> &QPoly {
        &self.den
    }
}

/// A residue modulo the `order`-th cyclotomic polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cyclo {
    order: u32,
    residue: QPoly,
}

impl Cyclo {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn residue(&self) -> &QPoly {
        &self.residue
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    RationalFunction(RatFunc),
    Cyclotomic(Cyclo),
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u32, QPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, QPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The `n`-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: u32) -> QPoly {
    assert!(n >= 1, "cyclotomic order must be positive");
    if let Some(p) = cyclotomic_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut p = QPoly::monomial(BigRational::one(), n as usize).sub(&QPoly::one());
    for d in 1..n {
        if n % d == 0 {
            p = p.div_rem(&cyclotomic_poly(d)).0;
        }
    }
    cyclotomic_cache().lock().unwrap().insert(n, p.clone());
    p
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_i64(n: i64) -> Self {
        Scalar::Rational(rat(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Scalar::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::Rational(r)
    }

    /// The indeterminate `q` of the rational function field.
    pub fn q() -> Self {
        Scalar::q_pow(1)
    }

    pub fn q_pow(k: i64) -> Self {
        let m = QPoly::monomial(BigRational::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Scalar::from_fraction_parts(m, QPoly::one())
        } else {
            Scalar::from_fraction_parts(QPoly::one(), m)
        }
    }

    /// A primitive `n`-th root of unity raised to the `k`-th power.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        Scalar::from_cyclo_residue(n, QPoly::monomial(BigRational::one(), e))
    }

    /// Builds `num/den` in the rational function field.
    pub fn rational_function(num: QPoly, den: QPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::from_fraction_parts(num, den))
    }

    /// Reduces a polynomial modulo the `n`-th cyclotomic polynomial.
    pub fn cyclotomic(n: u32, residue: QPoly) -> Self {
        Scalar::from_cyclo_residue(n, residue)
    }

    fn from_cyclo_residue(n: u32, p: QPoly) -> Self {
        let phi = cyclotomic_poly(n);
        let residue = if p.degree() >= phi.degree() { p.rem(&phi) } else { p };
        if residue.is_constant() {
            Scalar::Rational(residue.coeff(0))
        } else {
            Scalar::Cyclotomic(Cyclo { order: n, residue })
        }
    }

    fn from_fraction_parts(num: QPoly, den: QPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Scalar::zero();
        }
        let (num, den) = normalize_fraction(num, den);
        if den.is_one() && num.is_constant() {
            Scalar::Rational(num.coeff(0))
        } else {
            Scalar::RationalFunction(RatFunc { num, den })
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::RationalFunction(_) => Field::RationalFunction,
            Scalar::Cyclotomic(c) => Field::Cyclotomic(c.order),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (Scalar::Rational(a), _) if a.is_zero() => Ok(other.clone()),
            (_, Scalar::Rational(b)) if b.is_zero() => Ok(self.clone()),
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) if a.order == b.order => {
                Ok(Scalar::from_cyclo_residue(a.order, a.residue.add(&b.residue)))
            }
            (Scalar::Cyclotomic(a), Scalar::Rational(r))
            | (Scalar::Rational(r), Scalar::Cyclotomic(a)) => Ok(Scalar::from_cyclo_residue(
                a.order,
                a.residue.add(&QPoly::constant(r.clone())),
            )),
            _ => {
                self.field().join(other.field())?;
                let (an, ad) = self.fraction_parts();
                let (bn, bd) = other.fraction_parts();
                Ok(add_fractions(&an, &ad, &bn, &bd))
            }
        }
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Rational(a), _) | (_, Scalar::Rational(a)) if a.is_zero() => {
                Ok(Scalar::zero())
            }
            (Scalar::Rational(a), _) if a.is_one() => Ok(other.clone()),
            (_, Scalar::Rational(b)) if b.is_one() => Ok(self.clone()),
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) if a.order == b.order => {
                Ok(Scalar::from_cyclo_residue(a.order, a.residue.mul(&b.residue)))
            }
            (Scalar::Cyclotomic(a), Scalar::Rational(r))
            | (Scalar::Rational(r), Scalar::Cyclotomic(a)) => {
                Ok(Scalar::from_cyclo_residue(a.order, a.residue.scale(r)))
            }
            (Scalar::RationalFunction(a), Scalar::Rational(r))
            | (Scalar::Rational(r), Scalar::RationalFunction(a)) => {
                Ok(Scalar::RationalFunction(RatFunc {
                    num: a.num.scale(r),
                    den: a.den.clone(),
                }))
            }
            (Scalar::RationalFunction(a), Scalar::RationalFunction(b)) => {
                Ok(mul_fractions(&a.num, &a.den, &b.num, &b.den))
            }
            _ => Err(ScalarError::KindMismatch {
                left: self.field(),
                right: other.field(),
            }),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    Err(ScalarError::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(r.recip()))
                }
            }
            Scalar::RationalFunction(f) => {
                Ok(Scalar::from_fraction_parts(f.den.clone(), f.num.clone()))
            }
            Scalar::Cyclotomic(c) => {
                let phi = cyclotomic_poly(c.order);
                let (g, s, _) = QPoly::ext_gcd(&c.residue, &phi);
                debug_assert!(g.is_one(), "cyclotomic polynomial is irreducible");
                Ok(Scalar::from_cyclo_residue(c.order, s))
            }
        }
    }

    pub fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::RationalFunction(f) => Scalar::RationalFunction(RatFunc {
                num: f.num.neg(),
                den: f.den.clone(),
            }),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(Cyclo {
                order: c.order,
                residue: c.residue.neg(),
            }),
        }
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Scalar, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Scalar::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&b)?;
            }
            e >>= 1;
            if e > 0 {
                b = b.checked_mul(&b)?;
            }
        }
        Ok(acc)
    }

    /// Re-canonicalizes; values are always canonical so this is a clone.
    pub fn normalize(&self) -> Scalar {
        match self {
            Scalar::Rational(_) => self.clone(),
            Scalar::RationalFunction(f) => {
                Scalar::from_fraction_parts(f.num.clone(), f.den.clone())
            }
            Scalar::Cyclotomic(c) => Scalar::from_cyclo_residue(c.order, c.residue.clone()),
        }
    }

    /// Numerator and denominator for the rational and rational-function kinds.
    fn fraction_parts(&self) -> (QPoly, QPoly) {
        match self {
            Scalar::Rational(r) => (QPoly::constant(r.clone()), QPoly::one()),
            Scalar::RationalFunction(f) => (f.num.clone(), f.den.clone()),
            Scalar::Cyclotomic(_) => unreachable!("cyclotomic scalars have no fraction form"),
        }
    }

    /// Substitutes a primitive `n`-th root of unity for `q`.
    pub fn specialize(&self, n: u32) -> Result<Scalar, ScalarError> {
        match self {
            Scalar::Rational(_) => Ok(self.clone()),
            Scalar::RationalFunction(f) => {
                let phi = cyclotomic_poly(n);
                let den = f.den.rem(&phi);
                if den.is_zero() {
                    return Err(ScalarError::Pole { order: n });
                }
                let num = Scalar::from_cyclo_residue(n, f.num.clone());
                let den = Scalar::from_cyclo_residue(n, den);
                num.checked_div(&den)
            }
            Scalar::Cyclotomic(c) if c.order == n => Ok(self.clone()),
            Scalar::Cyclotomic(_) => Err(ScalarError::KindMismatch {
                left: self.field(),
                right: Field::Cyclotomic(n),
            }),
        }
    }

    /// True when the rendering is a single signed atom needing no parentheses
    /// as a product factor.
    pub fn is_atomic(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_integer(),
            Scalar::RationalFunction(f) => f.den.is_monomial() && f.num.term_count() == 1,
            Scalar::Cyclotomic(c) => c.residue.term_count() == 1,
        }
    }

    /// True for values whose rendering starts with a minus sign.
    pub fn is_negative_rendered(&self) -> bool {
        self.to_string().starts_with('-')
    }
}

fn strip_common_power(num: QPoly, den: QPoly) -> (QPoly, QPoly) {
    let k = num.valuation().min(den.valuation());
    if k == 0 {
        (num, den)
    } else {
        (num.shift_down(k), den.shift_down(k))
    }
}

fn normalize_fraction(num: QPoly, den: QPoly) -> (QPoly, QPoly) {
    let (mut num, mut den) = strip_common_power(num, den);
    if !den.is_monomial() && !num.is_constant() {
        let g = QPoly::gcd(&num, &den);
        if !g.is_one() {
            num = num.div_rem(&g).0;
            den = den.div_rem(&g).0;
        }
    }
    let lead = den.lead();
    if !lead.is_one() {
        let inv = lead.recip();
        num = num.scale(&inv);
        den = den.scale(&inv);
    }
    (num, den)
}

fn add_fractions(an: &QPoly, ad: &QPoly, bn: &QPoly, bd: &QPoly) -> Scalar {
    if ad == bd {
        return Scalar::from_fraction_parts(an.add(bn), ad.clone());
    }
    if ad.is_monomial() && bd.is_monomial() {
        let (da, db) = (ad.valuation(), bd.valuation());
        let d = da.max(db);
        let num = an.shift_up(d - da).add(&bn.shift_up(d - db));
        return Scalar::from_fraction_parts(num, QPoly::monomial(BigRational::one(), d));
    }
    let g = QPoly::gcd(ad, bd);
    let ad_g = ad.div_rem(&g).0;
    let bd_g = bd.div_rem(&g).0;
    let num = an.mul(&bd_g).add(&bn.mul(&ad_g));
    Scalar::from_fraction_parts(num, ad.mul(&bd_g))
}

fn mul_fractions(an: &QPoly, ad: &QPoly, bn: &QPoly, bd: &QPoly) -> Scalar {
    if ad.is_monomial() && bd.is_monomial() {
        return Scalar::from_fraction_parts(an.mul(bn), ad.mul(bd));
    }
    let g1 = QPoly::gcd(an, bd);
    let g2 = QPoly::gcd(bn, ad);
    let (an, bd) = (an.div_rem(&g1).0, bd.div_rem(&g1).0);
    let (bn, ad) = (bn.div_rem(&g2).0, ad.div_rem(&g2).0);
    Scalar::from_fraction_parts(an.mul(&bn), ad.mul(&bd))
}

/// Balanced q-integer `[m]_v = (v^m - v^-m)/(v - v^-1)`.
pub fn q_integer(m: u32, v: &Scalar) -> Result<Scalar, ScalarError> {
    let vinv = v.inv()?;
    let diff = v.checked_sub(&vinv)?;
    if diff.is_zero() {
        // v = ±1: the limit is m * v^(m-1)
        return Scalar::from_i64(m as i64).checked_mul(&v.pow(m as i64 - 1)?);
    }
    v.pow(m as i64)?
        .checked_sub(&v.pow(-(m as i64))?)?
        .checked_div(&diff)
}

/// Balanced Gaussian binomial `[n choose k]_v`.
pub fn gauss_binomial(n: u32, k: u32, v: &Scalar) -> Result<Scalar, ScalarError> {
    assert!(k <= n, "binomial index out of range");
    let k = k.min(n - k);
    let mut acc = Scalar::one();
    for i in 1..=k {
        let den = q_integer(i, v)?;
        if den.is_zero() {
            return Err(ScalarError::VanishingQInteger { m: i });
        }
        acc = acc.checked_mul(&q_integer(n - k + i, v)?)?.checked_div(&den)?;
    }
    Ok(acc)
}

/// Unbalanced Gaussian binomial `(n choose k)_t = prod (1 - t^(n-k+i)) / (1 - t^i)`.
pub fn gauss_binomial_unbalanced(n: u32, k: u32, t: &Scalar) -> Result<Scalar, ScalarError> {
    assert!(k <= n, "binomial index out of range");
    let k = k.min(n - k);
    let one = Scalar::one();
    let mut acc = Scalar::one();
    for i in 1..=k {
        let den = one.checked_sub(&t.pow(i as i64)?)?;
        if den.is_zero() {
            if t.is_one() {
                acc = acc.checked_mul(&Scalar::from_ratio((n - k + i) as i64, i as i64))?;
                continue;
            }
            return Err(ScalarError::VanishingQInteger { m: i });
        }
        let num = one.checked_sub(&t.pow((n - k + i) as i64)?)?;
        acc = acc.checked_mul(&num)?.checked_div(&den)?;
    }
    Ok(acc)
}

fn write_fraction(f: &mut fmt::Formatter<'_>, num: &QPoly, den: &QPoly) -> fmt::Result {
    if den.is_one() {
        return f.write_str(&num.render("q"));
    }
    if den.is_monomial() {
        // A pure power of q in the denominator reads best as a Laurent polynomial.
        return f.write_str(&render_laurent(num, den.valuation()));
    }
    let n = num.render("q");
    if num.term_count() > 1 && num.lead().is_negative() {
        write!(f, "-({})", num.neg().render("q"))?;
    } else if num.term_count() > 1 {
        write!(f, "({n})")?;
    } else {
        f.write_str(&n)?;
    }
    write!(f, "/({})", den.render("q"))
}

fn render_laurent(num: &QPoly, shift: usize) -> String {
    let mut out = String::new();
    for (i, c) in num.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let e = i as i64 - shift as i64;
        let neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let var = match e {
            0 => String::new(),
            1 => "q".to_string(),
            _ => format!("q^{e}"),
        };
        if var.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&var);
        } else {
            out.push_str(&format!("{abs}*{var}"));
        }
    }
    out
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::RationalFunction(r) => write_fraction(f, &r.num, &r.den),
            Scalar::Cyclotomic(c) => f.write_str(&c.residue.render("z")),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_i64(n)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs)
                    .unwrap_or_else(|e| panic!("scalar arithmetic failed: {e}"))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}
