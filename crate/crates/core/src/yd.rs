//! Yetter-Drinfeld data of diagonal type and linking parameters.
//!
//! Letters are stored sorted by (component position, declaration index), so
//! comparing letter indices is the same as comparing letters in the monomial
//! order.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::abgroup::{Character, GroupElement, GroupError, GroupSpec};
use crate::scalar::{Field, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum YdError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("duplicate letter `{0}`")]
    DuplicateLetter(String),
    #[error("duplicate component `{0}`")]
    DuplicateComponent(String),
    #[error("unknown component `{0}`")]
    UnknownComponent(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("a letter name must not coincide with group generator `{0}`")]
    NameClash(String),
    #[error("table is not a bicharacter: {0}")]
    NotBicharacter(String),
    #[error("component order must be a permutation of the declared components")]
    BadPermutation,
}

/// User-facing description of one letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetterSpec {
    pub name: String,
    pub component: String,
    pub g: GroupElement,
    pub chi: Character,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Letter {
    pub name: String,
    /// Position of the component in the declared order.
    pub component: usize,
    pub g: GroupElement,
    pub chi: Character,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YdDatum {
    group: GroupSpec,
    components: Vec<String>,
    letters: Vec<Letter>,
    braiding: Vec<Vec<Scalar>>,
    field: Field,
}

impl YdDatum {
    pub fn new(
        group: GroupSpec,
        components: Vec<String>,
        letters: Vec<LetterSpec>,
    ) -> Result<Self, YdError> {
        for (i, c) in components.iter().enumerate() {
            if components[..i].contains(c) {
                return Err(YdError::DuplicateComponent(c.clone()));
            }
        }
        let mut keyed = Vec::with_capacity(letters.len());
        for (decl, l) in letters.into_iter().enumerate() {
            if group.index_of(&l.name).is_ok() {
                return Err(YdError::NameClash(l.name));
            }
            let comp = components
                .iter()
                .position(|c| *c == l.component)
                .ok_or_else(|| YdError::UnknownComponent(l.component.clone()))?;
            if l.g.exponents().len() != group.rank() {
                return Err(GroupError::Arity {
                    expected: group.rank(),
                    got: l.g.exponents().len(),
                }
                .into());
            }
            let chi = group.character(l.chi.values().to_vec())?;
            keyed.push((
                comp,
                decl,
                Letter {
                    name: l.name,
                    component: comp,
                    g: group.element(l.g.exponents().to_vec())?,
                    chi,
                },
            ));
        }
        keyed.sort_by_key(|(c, d, _)| (*c, *d));
        let letters: Vec<Letter> = keyed.into_iter().map(|(_, _, l)| l).collect();
        for (i, l) in letters.iter().enumerate() {
            if letters[..i].iter().any(|m| m.name == l.name) {
                return Err(YdError::DuplicateLetter(l.name.clone()));
            }
        }
        let mut field = Field::Rational;
        for l in &letters {
            for v in l.chi.values() {
                field = field.join(v.field())?;
            }
        }
        let braiding = letters
            .iter()
            .map(|li| letters.iter().map(|lj| lj.chi.eval(&li.g)).collect())
            .collect();
        Ok(YdDatum {
            group,
            components,
            letters,
            braiding,
            field,
        })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn components(&self) -> &[String] {
        &self.components
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letter(&self, i: usize) -> &Letter {
        &self.letters[i]
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn letter_index(&self, name: &str) -> Result<usize, YdError> {
        self.letters
            .iter()
            .position(|l| l.name == name)
            .ok_or_else(|| YdError::UnknownLetter(name.to_string()))
    }

    pub fn component_of(&self, i: usize) -> usize {
        self.letters[i].component
    }

    /// `q_ij = chi_j(g_i)`.
    pub fn q(&self, i: usize, j: usize) -> &Scalar {
        &self.braiding[i][j]
    }

    pub fn braiding_matrix(&self) -> &[Vec<Scalar>] {
        &self.braiding
    }

    /// Letters (by index) belonging to component position `c`.
    pub fn component_letters(&self, c: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.letters[i].component == c).collect()
    }

    /// The letter specs in declaration-independent (sorted) order.
    pub fn letter_specs(&self) -> Vec<LetterSpec> {
        self.letters
            .iter()
            .map(|l| LetterSpec {
                name: l.name.clone(),
                component: self.components[l.component].clone(),
                g: l.g.clone(),
                chi: l.chi.clone(),
            })
            .collect()
    }

    /// The same datum with the component order permuted.
    pub fn with_component_order(&self, order: &[String]) -> Result<YdDatum, YdError> {
        let mut a = order.to_vec();
        let mut b = self.components.clone();
        a.sort();
        b.sort();
        if a != b {
            return Err(YdError::BadPermutation);
        }
        YdDatum::new(self.group.clone(), order.to_vec(), self.letter_specs())
    }

    /// `chi_i(g)` for a letter index and group element.
    pub fn chi_at(&self, i: usize, g: &GroupElement) -> Scalar {
        self.letters[i].chi.eval(g)
    }

    /// Checks cross-component symmetry and linking admissibility.
    pub fn validate(&self, lambda: &LinkingParameters) -> ValidationReport {
        let mut issues = Vec::new();
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                if self.component_of(i) == self.component_of(j) {
                    continue;
                }
                let product = self.q(i, j) * self.q(j, i);
                if !product.is_one() {
                    issues.push(Issue::Symmetry {
                        i: self.letters[i].name.clone(),
                        j: self.letters[j].name.clone(),
                        q_ij: self.q(i, j).clone(),
                        q_ji: self.q(j, i).clone(),
                        product,
                    });
                }
            }
        }
        for (&(i, j), v) in &lambda.values {
            if v.is_zero() {
                continue;
            }
            let (li, lj) = (&self.letters[i], &self.letters[j]);
            if li.component == lj.component {
                issues.push(Issue::SameComponent {
                    i: li.name.clone(),
                    j: lj.name.clone(),
                });
                continue;
            }
            let prod = li.chi.mul(&lj.chi);
            if !prod.is_trivial() {
                issues.push(Issue::Linking {
                    i: li.name.clone(),
                    j: lj.name.clone(),
                    value: v.clone(),
                    chi_product: prod,
                });
            }
        }
        ValidationReport { issues }
    }

    /// Twists the characters by a bicharacter:
    /// `chi'_i(h) = beta(h, g_i) / beta(g_i, h) * chi_i(h)`.
    pub fn twist(&self, beta: &Bicharacter) -> Result<YdDatum, YdError> {
        let gens = self.group.generators();
        let specs = self
            .letters
            .iter()
            .map(|l| {
                let values = gens
                    .iter()
                    .map(|h| {
                        let num = beta.eval(h, &l.g);
                        let den = beta.eval(&l.g, h);
                        Ok(num.checked_div(&den)?.checked_mul(&l.chi.eval(h))?)
                    })
                    .collect::<Result<Vec<_>, ScalarError>>()?;
                Ok(LetterSpec {
                    name: l.name.clone(),
                    component: self.components[l.component].clone(),
                    g: l.g.clone(),
                    chi: self.group.character(values)?,
                })
            })
            .collect::<Result<Vec<_>, YdError>>()?;
        YdDatum::new(self.group.clone(), self.components.clone(), specs)
    }
}

/// One failed identity in a [`ValidationReport`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Issue {
    Symmetry {
        i: String,
        j: String,
        q_ij: Scalar,
        q_ji: Scalar,
        product: Scalar,
    },
    Linking {
        i: String,
        j: String,
        value: Scalar,
        chi_product: Character,
    },
    SameComponent {
        i: String,
        j: String,
    },
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::Symmetry {
                i,
                j,
                q_ij,
                q_ji,
                product,
            } => write!(
                f,
                "symmetry ({i},{j}): q_{i}{j} * q_{j}{i} = ({q_ij}) * ({q_ji}) = {product}, expected 1"
            ),
            Issue::Linking {
                i,
                j,
                value,
                chi_product,
            } => write!(
                f,
                "linking ({i},{j}): lambda = {value} but chi_{i}*chi_{j} = {chi_product} is not trivial"
            ),
            Issue::SameComponent { i, j } => {
                write!(f, "linking ({i},{j}): letters lie in the same component")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn has_symmetry_failure(&self) -> bool {
        self.issues.iter().any(|i| matches!(i, Issue::Symmetry { .. }))
    }

    pub fn has_linking_failure(&self) -> bool {
        self.issues
            .iter()
            .any(|i| matches!(i, Issue::Linking { .. } | Issue::SameComponent { .. }))
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            return writeln!(f, "validation PASS");
        }
        for issue in &self.issues {
            writeln!(f, "validation FAIL {issue}")?;
        }
        Ok(())
    }
}

/// Linking parameters `lambda_ij`, stored only for `component(i) > component(j)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinkingParameters {
    values: BTreeMap<(usize, usize), Scalar>,
}

impl LinkingParameters {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `lambda_ij = value`; a pair given in the opposite orientation is
    /// converted through `lambda_ij = -q_ij * lambda_ji`.
    pub fn set(
        &mut self,
        datum: &YdDatum,
        i: usize,
        j: usize,
        value: Scalar,
    ) -> Result<(), YdError> {
        let (ci, cj) = (datum.component_of(i), datum.component_of(j));
        let (key, v) = if ci >= cj {
            ((i, j), value)
        } else {
            let stored = value.neg_ref().checked_div(datum.q(i, j))?;
            ((j, i), stored)
        };
        if v.is_zero() {
            self.values.remove(&key);
        } else {
            self.values.insert(key, v);
        }
        Ok(())
    }

    /// `lambda_ij` for any ordered pair, deriving the reversed orientation.
    pub fn get(&self, datum: &YdDatum, i: usize, j: usize) -> Scalar {
        if let Some(v) = self.values.get(&(i, j)) {
            return v.clone();
        }
        if datum.component_of(i) < datum.component_of(j) {
            if let Some(v) = self.values.get(&(j, i)) {
                return -(datum.q(i, j) * v);
            }
        }
        Scalar::zero()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Stored pairs `(i, j)` with their values.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.values.iter()
    }

    /// Multiplies every value by `c`.
    pub fn scaled(&self, c: &Scalar) -> LinkingParameters {
        let values = self
            .values
            .iter()
            .filter_map(|(k, v)| {
                let w = v * c;
                (!w.is_zero()).then(|| (*k, w))
            })
            .collect();
        LinkingParameters { values }
    }

    /// Re-indexes letters after the datum was rebuilt, by matching names.
    pub fn transport(&self, from: &YdDatum, to: &YdDatum) -> Result<LinkingParameters, YdError> {
        let mut out = LinkingParameters::new();
        for (&(i, j), v) in &self.values {
            let a = to.letter_index(&from.letter(i).name)?;
            let b = to.letter_index(&from.letter(j).name)?;
            out.set(to, a, b, v.clone())?;
        }
        Ok(out)
    }
}

/// A bicharacter on the group, given by its values on generator pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bicharacter {
    table: Vec<Vec<Scalar>>,
}

impl Bicharacter {
    pub fn new(group: &GroupSpec, table: Vec<Vec<Scalar>>) -> Result<Self, YdError> {
        let n = group.rank();
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(YdError::NotBicharacter(format!("table must be {n} x {n}")));
        }
        for a in 0..n {
            for b in 0..n {
                let v = &table[a][b];
                if v.is_zero() {
                    return Err(YdError::NotBicharacter(format!(
                        "zero value on ({}, {})",
                        group.names()[a],
                        group.names()[b]
                    )));
                }
                for o in [group.order_of(a), group.order_of(b)].into_iter().flatten() {
                    if !v.pow(o as i64)?.is_one() {
                        return Err(YdError::NotBicharacter(format!(
                            "value {v} on ({}, {}) is not compatible with torsion order {o}",
                            group.names()[a],
                            group.names()[b]
                        )));
                    }
                }
            }
        }
        Ok(Bicharacter { table })
    }

    pub fn trivial(group: &GroupSpec) -> Self {
        let n = group.rank();
        Bicharacter {
            table: vec![vec![Scalar::one(); n]; n],
        }
    }

    pub fn eval(&self, g: &GroupElement, h: &GroupElement) -> Scalar {
        let mut acc = Scalar::one();
        for (a, &ea) in g.exponents().iter().enumerate() {
            for (b, &eb) in h.exponents().iter().enumerate() {
                if ea != 0 && eb != 0 {
                    acc *= &self.table[a][b].pow(ea * eb).expect("nonzero values");
                }
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2() -> YdDatum {
        let g = GroupSpec::free(&["K"]).unwrap();
        let k = g.generator(0);
        YdDatum::new(
            g.clone(),
            vec!["minus".into(), "plus".into()],
            vec![
                LetterSpec {
                    name: "e".into(),
                    component: "plus".into(),
                    g: k.clone(),
                    chi: g.character(vec![Scalar::q_pow(2)]).unwrap(),
                },
                LetterSpec {
                    name: "f".into(),
                    component: "minus".into(),
                    g: k,
                    chi: g.character(vec![Scalar::q_pow(-2)]).unwrap(),
                },
            ],
        )
        .unwrap()
    }

    #[test]
    fn letters_sorted_by_component() {
        let d = sl2();
        assert_eq!(d.letter(0).name, "f");
        assert_eq!(d.letter(1).name, "e");
    }

    #[test]
    fn braiding_values() {
        let d = sl2();
        let (e, f) = (1, 0);
        assert_eq!(d.q(e, e), &Scalar::q_pow(2));
        assert_eq!(d.q(e, f), &Scalar::q_pow(-2));
        assert_eq!(d.q(f, e), &Scalar::q_pow(2));
        assert_eq!(d.q(f, f), &Scalar::q_pow(-2));
    }

    #[test]
    fn reversed_linking_is_derived() {
        let d = sl2();
        let mut lam = LinkingParameters::new();
        lam.set(&d, 1, 0, Scalar::one()).unwrap();
        // lambda_fe = -q_fe * lambda_ef
        assert_eq!(lam.get(&d, 0, 1), -Scalar::q_pow(2));
        let mut other = LinkingParameters::new();
        other.set(&d, 0, 1, -Scalar::q_pow(2)).unwrap();
        assert_eq!(other, lam);
        assert!(d.validate(&lam).passed());
    }
}
