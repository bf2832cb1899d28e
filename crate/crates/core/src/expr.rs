//! Recursive-descent parser for scalar, group and polynomial expressions.
//!
//! Grammar, shared by all three kinds:
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" "-"? integer)?
//! atom   := integer | name | "(" expr ")"
//! ```
//!
//! `q` is the deformation parameter; in a cyclotomic field `z` is accepted as
//! well. Division is only allowed by scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::abgroup::{GroupElement, GroupSpec};
use crate::freealg::NcPoly;
use crate::scalar::{Field, Scalar, ScalarError};
use crate::yd::YdDatum;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("column {column}: unknown symbol `{name}`")]
    UnknownSymbol { column: usize, name: String },
    #[error("column {column}: division by a non-scalar")]
    NonScalarDivision { column: usize },
    #[error("column {column}: negative power of a non-invertible element")]
    NegativePower { column: usize },
    #[error("column {column}: {source}")]
    Scalar { column: usize, source: ScalarError },
}

impl ExprError {
    /// 1-based column of the offending token.
    pub fn column(&self) -> usize {
        match self {
            ExprError::Syntax { column, .. }
            | ExprError::UnknownSymbol { column, .. }
            | ExprError::NonScalarDivision { column }
            | ExprError::NegativePower { column }
            | ExprError::Scalar { column, .. } => *column,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Tok::Int(digits.parse().expect("digits")), col));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
            {
                i += 1;
            }
            out.push((Tok::Name(chars[start..i].iter().collect()), col));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), col));
            i += 1;
        } else {
            return Err(ExprError::Syntax {
                column: col,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

/// The value domain a parse evaluates into.
trait Domain {
    type Value: Clone;
    fn integer(&self, n: BigInt) -> Self::Value;
    fn symbol(&self, name: &str) -> Option<Self::Value>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, ScalarError>;
    fn neg(&self, a: Self::Value) -> Self::Value;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, ScalarError>;
    fn as_scalar(&self, a: &Self::Value) -> Option<Scalar>;
    fn scale(&self, a: Self::Value, c: &Scalar) -> Self::Value;
    fn one(&self) -> Self::Value;
    /// Multiplicative inverse when the value is invertible.
    fn inverse(&self, a: &Self::Value) -> Option<Result<Self::Value, ScalarError>>;
}

struct Parser<'a, D: Domain> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    domain: &'a D,
}

impl<D: Domain> Parser<'_, D> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, c)| *c)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn lift<T>(&self, column: usize, r: Result<T, ScalarError>) -> Result<T, ExprError> {
        r.map_err(|source| ExprError::Scalar { column, source })
    }

    fn expr(&mut self) -> Result<D::Value, ExprError> {
        let mut acc = self.term()?;
        loop {
            let col = self.column();
            if self.eat('+') {
                let t = self.term()?;
                acc = self.lift(col, self.domain.add(acc, t))?;
            } else if self.eat('-') {
                let t = self.term()?;
                acc = self.lift(col, self.domain.add(acc, self.domain.neg(t)))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<D::Value, ExprError> {
        let mut acc = self.unary()?;
        loop {
            let col = self.column();
            if self.eat('*') {
                let t = self.unary()?;
                acc = self.lift(col, self.domain.mul(acc, t))?;
            } else if self.eat('/') {
                let t = self.unary()?;
                let c = self
                    .domain
                    .as_scalar(&t)
                    .ok_or(ExprError::NonScalarDivision { column: col })?;
                let inv = self.lift(col, c.inv())?;
                acc = self.domain.scale(acc, &inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<D::Value, ExprError> {
        if self.eat('-') {
            let v = self.unary()?;
            Ok(self.domain.neg(v))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<D::Value, ExprError> {
        let base = self.atom()?;
        let col = self.column();
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        let n = match self.peek() {
            Some(Tok::Int(n)) => {
                let n: i64 = n.try_into().map_err(|_| ExprError::Syntax {
                    column: self.column(),
                    message: "exponent too large".into(),
                })?;
                self.pos += 1;
                n
            }
            _ => {
                return Err(ExprError::Syntax {
                    column: self.column(),
                    message: "expected an integer exponent".into(),
                })
            }
        };
        let b = if negative {
            match self.domain.inverse(&base) {
                Some(r) => self.lift(col, r)?,
                None => return Err(ExprError::NegativePower { column: col }),
            }
        } else {
            base
        };
        let mut acc = self.domain.one();
        for _ in 0..n {
            acc = self.lift(col, self.domain.mul(acc, b.clone()))?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<D::Value, ExprError> {
        let col = self.column();
        match self.toks.get(self.pos).map(|(t, _)| t.clone()) {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(self.domain.integer(n))
            }
            Some(Tok::Name(name)) => {
                self.pos += 1;
                self.domain
                    .symbol(&name)
                    .ok_or(ExprError::UnknownSymbol { column: col, name })
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(ExprError::Syntax {
                        column: self.column(),
                        message: "expected `)`".into(),
                    });
                }
                Ok(v)
            }
            Some(Tok::Op(c)) => Err(ExprError::Syntax {
                column: col,
                message: format!("unexpected `{c}`"),
            }),
            None => Err(ExprError::Syntax {
                column: col,
                message: "unexpected end of input".into(),
            }),
        }
    }
}

fn parse_with<D: Domain>(src: &str, domain: &D) -> Result<D::Value, ExprError> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.chars().count() + 1,
        domain,
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ExprError::Syntax {
            column: p.column(),
            message: "trailing input".into(),
        });
    }
    Ok(v)
}

fn parameter(field: Field, name: &str) -> Option<Scalar> {
    match (field, name) {
        (Field::Cyclotomic(_), "q" | "z") => Some(field.gen_pow(1)),
        (_, "q") => Some(Scalar::q()),
        _ => None,
    }
}

struct ScalarDomain {
    field: Field,
}

impl Domain for ScalarDomain {
    type Value = Scalar;

    fn integer(&self, n: BigInt) -> Scalar {
        Scalar::from_rational(BigRational::from_integer(n))
    }

    fn symbol(&self, name: &str) -> Option<Scalar> {
        parameter(self.field, name)
    }

    fn add(&self, a: Scalar, b: Scalar) -> Result<Scalar, ScalarError> {
        a.checked_add(&b)
    }

    fn neg(&self, a: Scalar) -> Scalar {
        -a
    }

    fn mul(&self, a: Scalar, b: Scalar) -> Result<Scalar, ScalarError> {
        a.checked_mul(&b)
    }

    fn as_scalar(&self, a: &Scalar) -> Option<Scalar> {
        Some(a.clone())
    }

    fn scale(&self, a: Scalar, c: &Scalar) -> Scalar {
        &a * c
    }

    fn one(&self) -> Scalar {
        Scalar::one()
    }

    fn inverse(&self, a: &Scalar) -> Option<Result<Scalar, ScalarError>> {
        Some(a.inv())
    }
}

/// Parses a scalar in `field`, e.g. `1/(q - q^-1)`.
pub fn parse_scalar(src: &str, field: Field) -> Result<Scalar, ExprError> {
    parse_with(src, &ScalarDomain { field })
}

struct GroupDomain<'a> {
    group: &'a GroupSpec,
}

impl Domain for GroupDomain<'_> {
    type Value = Option<GroupElement>;

    fn integer(&self, n: BigInt) -> Self::Value {
        (n == BigInt::from(1)).then(|| self.group.identity())
    }

    fn symbol(&self, name: &str) -> Option<Self::Value> {
        let i = self.group.index_of(name).ok()?;
        Some(Some(self.group.generator(i)))
    }

    fn add(&self, _: Self::Value, _: Self::Value) -> Result<Self::Value, ScalarError> {
        Ok(None)
    }

    fn neg(&self, _: Self::Value) -> Self::Value {
        None
    }

    fn mul(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, ScalarError> {
        Ok(a.zip(b).map(|(a, b)| self.group.mul(&a, &b)))
    }

    fn as_scalar(&self, _: &Self::Value) -> Option<Scalar> {
        None
    }

    fn scale(&self, _: Self::Value, _: &Scalar) -> Self::Value {
        None
    }

    fn one(&self) -> Self::Value {
        Some(self.group.identity())
    }

    fn inverse(&self, a: &Self::Value) -> Option<Result<Self::Value, ScalarError>> {
        a.as_ref().map(|g| Ok(Some(self.group.inverse(g))))
    }
}

/// Parses a group element written multiplicatively, e.g. `K1^2*K2^-1` or `1`.
pub fn parse_group_element(src: &str, group: &GroupSpec) -> Result<GroupElement, ExprError> {
    parse_with(src, &GroupDomain { group })?.ok_or_else(|| ExprError::Syntax {
        column: 1,
        message: format!("`{src}` is not a group element"),
    })
}

struct PolyDomain<'a> {
    datum: &'a YdDatum,
}

impl Domain for PolyDomain<'_> {
    type Value = NcPoly;

    fn integer(&self, n: BigInt) -> NcPoly {
        NcPoly::constant(self.datum, Scalar::from_rational(BigRational::from_integer(n)))
    }

    fn symbol(&self, name: &str) -> Option<NcPoly> {
        if let Ok(i) = self.datum.letter_index(name) {
            return Some(NcPoly::letter(self.datum, i));
        }
        if let Ok(k) = self.datum.group().index_of(name) {
            return Some(NcPoly::group_element(self.datum.group().generator(k)));
        }
        parameter(self.datum.field(), name).map(|c| NcPoly::constant(self.datum, c))
    }

    fn add(&self, a: NcPoly, b: NcPoly) -> Result<NcPoly, ScalarError> {
        Ok(a.add(&b))
    }

    fn neg(&self, a: NcPoly) -> NcPoly {
        a.neg()
    }

    fn mul(&self, a: NcPoly, b: NcPoly) -> Result<NcPoly, ScalarError> {
        Ok(a.mul(&b, self.datum))
    }

    fn as_scalar(&self, a: &NcPoly) -> Option<Scalar> {
        a.as_scalar()
    }

    fn scale(&self, a: NcPoly, c: &Scalar) -> NcPoly {
        a.scale(c)
    }

    fn one(&self) -> NcPoly {
        NcPoly::one(self.datum)
    }

    fn inverse(&self, a: &NcPoly) -> Option<Result<NcPoly, ScalarError>> {
        if a.len() != 1 {
            return None;
        }
        let (m, c) = a.iter().next()?;
        if !m.word.is_empty() {
            return None;
        }
        let g = NcPoly::group_element(self.datum.group().inverse(&m.group));
        Some(c.inv().map(|ci| g.scale(&ci)))
    }
}

/// Parses an element of the free smash product over `datum`, e.g. `e*f - q^-2*f*e`.
pub fn parse_poly(src: &str, datum: &YdDatum) -> Result<NcPoly, ExprError> {
    parse_with(src, &PolyDomain { datum })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalars() {
        let c = parse_scalar("1/(q - q^-1)", Field::RationalFunction).unwrap();
        assert_eq!(c, (Scalar::q() - Scalar::q_pow(-1)).inv().unwrap());
        assert_eq!(
            parse_scalar("-2*q^2 + 3", Field::RationalFunction).unwrap(),
            Scalar::from_i64(3) - Scalar::q_pow(2) * Scalar::from_i64(2)
        );
        assert_eq!(
            parse_scalar("z^7", Field::Cyclotomic(5)).unwrap(),
            Scalar::zeta_pow(5, 2)
        );
    }

    #[test]
    fn group_elements() {
        let g = GroupSpec::free(&["K1", "K2"]).unwrap();
        let e = parse_group_element("K1^2*K2^-1", &g).unwrap();
        assert_eq!(e.exponents(), &[2, -1]);
        assert!(parse_group_element("1", &g).unwrap().is_identity());
        assert!(parse_group_element("K1 + K2", &g).is_err());
    }

    #[test]
    fn errors_carry_columns() {
        let err = parse_scalar("q + w", Field::RationalFunction).unwrap_err();
        assert_eq!(err.column(), 5);
        let err = parse_scalar("(q + 1", Field::RationalFunction).unwrap_err();
        assert_eq!(err.column(), 7);
        assert!(matches!(
            parse_scalar("1/(q - q)", Field::RationalFunction),
            Err(ExprError::Scalar { .. })
        ));
    }
}
