//! Finitely generated abelian groups, their elements and characters.

use std::fmt;

use thiserror::Error;

use crate::scalar::{Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("unknown group generator `{0}`")]
    UnknownGenerator(String),
    #[error("torsion order of `{0}` must be at least 2")]
    BadOrder(String),
    #[error("expected {expected} components, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("character value {value} on `{generator}` is not a root of unity of order dividing {order}")]
    TorsionCharacter {
        generator: String,
        order: u32,
        value: String,
    },
    #[error("character value on `{0}` is zero")]
    ZeroCharacter(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Generators of `Z^r x Z/n_1 x ... x Z/n_s`, free generators first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    names: Vec<String>,
    orders: Vec<Option<u32>>,
}

impl GroupSpec {
    pub fn new<S: AsRef<str>>(free: &[S], torsion: &[(S, u32)]) -> Result<Self, GroupError> {
        let mut names = Vec::new();
        let mut orders = Vec::new();
        for n in free {
            names.push(n.as_ref().to_string());
            orders.push(None);
        }
        for (n, o) in torsion {
            if *o < 2 {
                return Err(GroupError::BadOrder(n.as_ref().to_string()));
            }
            names.push(n.as_ref().to_string());
            orders.push(Some(*o));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(GroupError::DuplicateName(n.clone()));
            }
        }
        Ok(GroupSpec { names, orders })
    }

    /// Free abelian group on the given generator names.
    pub fn free<S: AsRef<str>>(names: &[S]) -> Result<Self, GroupError> {
        GroupSpec::new(names, &[])
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    /// Group order, `None` when some generator is free.
    pub fn order(&self) -> Option<u64> {
        self.orders
            .iter()
            .try_fold(1u64, |acc, o| o.map(|o| acc * o as u64))
    }

    pub fn free_rank(&self) -> usize {
        self.orders.iter().filter(|o| o.is_none()).count()
    }

    pub fn torsion_orders(&self) -> Vec<u32> {
        self.orders.iter().filter_map(|o| *o).collect()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order_of(&self, gen: usize) -> Option<u32> {
        self.orders[gen]
    }

    pub fn index_of(&self, name: &str) -> Result<usize, GroupError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| GroupError::UnknownGenerator(name.to_string()))
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        self.element(e).expect("arity matches")
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.rank()).map(|i| self.generator(i)).collect()
    }

    /// Builds an element from raw exponents, reducing torsion coordinates.
    pub fn element(&self, mut exps: Vec<i64>) -> Result<GroupElement, GroupError> {
        if exps.len() != self.rank() {
            return Err(GroupError::Arity {
                expected: self.rank(),
                got: exps.len(),
            });
        }
        for (e, o) in exps.iter_mut().zip(&self.orders) {
            if let Some(o) = o {
                *e = e.rem_euclid(*o as i64);
            }
        }
        Ok(GroupElement(exps))
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        debug_assert_eq!(a.0.len(), self.rank());
        debug_assert_eq!(b.0.len(), self.rank());
        let exps = a
            .0
            .iter()
            .zip(&b.0)
            .zip(&self.orders)
            .map(|((x, y), o)| match o {
                Some(o) => (x + y).rem_euclid(*o as i64),
                None => x + y,
            })
            .collect();
        GroupElement(exps)
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        let exps = a
            .0
            .iter()
            .zip(&self.orders)
            .map(|(x, o)| match o {
                Some(o) => (-x).rem_euclid(*o as i64),
                None => -x,
            })
            .collect();
        GroupElement(exps)
    }

    pub fn pow(&self, a: &GroupElement, k: i64) -> GroupElement {
        let exps = a.0.iter().map(|x| x * k).collect();
        self.element(exps).expect("arity preserved")
    }

    /// Validates character values: nonzero, and roots of unity on torsion generators.
    pub fn character(&self, values: Vec<Scalar>) -> Result<Character, GroupError> {
        if values.len() != self.rank() {
            return Err(GroupError::Arity {
                expected: self.rank(),
                got: values.len(),
            });
        }
        for (i, v) in values.iter().enumerate() {
            if v.is_zero() {
                return Err(GroupError::ZeroCharacter(self.names[i].clone()));
            }
            if let Some(o) = self.orders[i] {
                if !v.pow(o as i64)?.is_one() {
                    return Err(GroupError::TorsionCharacter {
                        generator: self.names[i].clone(),
                        order: o,
                        value: v.to_string(),
                    });
                }
            }
        }
        Ok(Character(values))
    }

    pub fn trivial_character(&self) -> Character {
        Character(vec![Scalar::one(); self.rank()])
    }

    pub fn render(&self, g: &GroupElement) -> String {
        let parts: Vec<String> = g
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.names[i].clone()
                } else {
                    format!("{}^{}", self.names[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Exponent vector over a [`GroupSpec`], torsion coordinates in `[0, order)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<i64>);

impl GroupElement {
    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

/// A group homomorphism into the multiplicative group, given on generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Character(Vec<Scalar>);

impl Character {
    pub fn values(&self) -> &[Scalar] {
        &self.0
    }

    pub fn eval(&self, g: &GroupElement) -> Scalar {
        let mut acc = Scalar::one();
        for (v, &e) in self.0.iter().zip(&g.0) {
            if e != 0 {
                acc *= &v.pow(e).expect("character values are nonzero");
            }
        }
        acc
    }

    pub fn mul(&self, other: &Character) -> Character {
        Character(self.0.iter().zip(&other.0).map(|(a, b)| a * b).collect())
    }

    pub fn inverse(&self) -> Character {
        Character(
            self.0
                .iter()
                .map(|a| a.inv().expect("character values are nonzero"))
                .collect(),
        )
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(Scalar::is_one)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", vals.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_arithmetic() {
        let z = GroupSpec::free(&["K"]).unwrap();
        let a = z.element(vec![2]).unwrap();
        let b = z.element(vec![-3]).unwrap();
        assert_eq!(z.render(&z.mul(&a, &b)), "K^-1");

        let c5 = GroupSpec::new::<&str>(&[], &[("K", 5)]).unwrap();
        let a = c5.element(vec![3]).unwrap();
        let b = c5.element(vec![4]).unwrap();
        assert_eq!(c5.mul(&a, &b).exponents(), &[2]);

        let mixed = GroupSpec::new(&["A"], &[("B", 3)]).unwrap();
        let x = mixed.element(vec![2, 1]).unwrap();
        assert_eq!(mixed.inverse(&x).exponents(), &[-2, 2]);
    }

    #[test]
    fn characters() {
        let z = GroupSpec::free(&["K"]).unwrap();
        let chi_e = z.character(vec![Scalar::q_pow(2)]).unwrap();
        let chi_f = z.character(vec![Scalar::q_pow(-2)]).unwrap();
        let k = z.generator(0);
        assert_eq!(chi_e.eval(&k), Scalar::q_pow(2));
        assert!(chi_e.mul(&chi_f).eval(&k).is_one());
        assert!(z.trivial_character().eval(&z.pow(&k, 7)).is_one());
    }

    #[test]
    fn torsion_characters_are_checked() {
        let c5 = GroupSpec::new::<&str>(&[], &[("K", 5)]).unwrap();
        assert!(c5.character(vec![Scalar::zeta_pow(5, 2)]).is_ok());
        assert!(matches!(
            c5.character(vec![Scalar::q()]),
            Err(GroupError::TorsionCharacter { .. })
        ));
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(matches!(
            GroupSpec::new(&["K"], &[("K", 2)]),
            Err(GroupError::DuplicateName(_))
        ));
    }
}
