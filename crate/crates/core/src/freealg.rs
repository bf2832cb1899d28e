//! Noncommutative polynomials with group-algebra coefficients: the smash
//! product of the tensor algebra with the group algebra.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::abgroup::GroupElement;
use crate::scalar::Scalar;
use crate::yd::{YdDatum, YdError};

/// A word in the letters of a datum; ordered by length, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u16>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<u16>) -> Self {
        Word(letters)
    }

    pub fn letter(i: usize) -> Self {
        Word(vec![i as u16])
    }

    pub fn letters(&self) -> &[u16] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// First position where `pat` occurs as a contiguous subword.
    pub fn find(&self, pat: &Word) -> Option<usize> {
        if pat.0.len() > self.0.len() {
            return None;
        }
        (0..=self.0.len() - pat.0.len()).find(|&i| self.0[i..i + pat.0.len()] == pat.0[..])
    }

    pub fn contains(&self, pat: &Word) -> bool {
        self.find(pat).is_some()
    }

    pub fn render(&self, datum: &YdDatum) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|&i| datum.letter(i as usize).name.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A word followed by a group element: the basis of the smash product.
/// The derived order is deg-lex on the word, then the group exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub word: Word,
    pub group: GroupElement,
}

impl Monomial {
    pub fn new(word: Word, group: GroupElement) -> Self {
        Monomial { word, group }
    }

    pub fn one(datum: &YdDatum) -> Self {
        Monomial::new(Word::empty(), datum.group().identity())
    }

    pub fn from_word(datum: &YdDatum, word: Word) -> Self {
        Monomial::new(word, datum.group().identity())
    }

    pub fn from_group(g: GroupElement) -> Self {
        Monomial::new(Word::empty(), g)
    }

    pub fn degree(&self) -> usize {
        self.word.len()
    }

    pub fn is_group_like(&self) -> bool {
        self.word.is_empty()
    }

    pub fn render(&self, datum: &YdDatum) -> String {
        match (self.word.is_empty(), self.group.is_identity()) {
            (true, true) => "1".to_string(),
            (true, false) => datum.group().render(&self.group),
            (false, true) => self.word.render(datum),
            (false, false) => format!(
                "{}*{}",
                self.word.render(datum),
                datum.group().render(&self.group)
            ),
        }
    }
}

/// Total order on monomials used for leading terms.
pub fn deglex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.cmp(b)
}

/// `prod_{y in w} chi_y(g)`, the scalar picked up when `g` moves right past `w`.
pub fn chi_word_at(datum: &YdDatum, w: &Word, g: &GroupElement) -> Scalar {
    if g.is_identity() || w.is_empty() {
        return Scalar::one();
    }
    let mut counts = vec![0i64; datum.len()];
    for &l in w.letters() {
        counts[l as usize] += 1;
    }
    let mut acc = Scalar::one();
    for (i, &c) in counts.iter().enumerate() {
        if c > 0 {
            acc *= &datum.chi_at(i, g).pow(c).expect("character values are nonzero");
        }
    }
    acc
}

/// Product of two basis monomials: `(w,g)(w',g') = chi_{w'}(g) (ww', gg')`.
pub fn mul_monomials(datum: &YdDatum, a: &Monomial, b: &Monomial) -> (Monomial, Scalar) {
    let c = chi_word_at(datum, &b.word, &a.group);
    let m = Monomial::new(
        a.word.concat(&b.word),
        datum.group().mul(&a.group, &b.group),
    );
    (m, c)
}

/// A finite linear combination of monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct NcPoly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl NcPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one(datum: &YdDatum) -> Self {
        NcPoly::monomial(Monomial::one(datum), Scalar::one())
    }

    pub fn constant(datum: &YdDatum, c: Scalar) -> Self {
        NcPoly::monomial(Monomial::one(datum), c)
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn letter(datum: &YdDatum, i: usize) -> Self {
        NcPoly::monomial(Monomial::from_word(datum, Word::letter(i)), Scalar::one())
    }

    pub fn word(datum: &YdDatum, w: Word) -> Self {
        NcPoly::monomial(Monomial::from_word(datum, w), Scalar::one())
    }

    pub fn group_element(g: GroupElement) -> Self {
        NcPoly::monomial(Monomial::from_group(g), Scalar::one())
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &NcPoly, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Scalar> {
        self.terms
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The greatest monomial and its coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Maximal letter-degree, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// True when every monomial has the identity as group part.
    pub fn is_group_free(&self) -> bool {
        self.terms.keys().all(|m| m.group.is_identity())
    }

    /// Terms of exactly the given letter-degree.
    pub fn homogeneous_part(&self, n: usize) -> NcPoly {
        NcPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// If the polynomial is `c * 1`, returns `c`.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.word.is_empty() && m.group.is_identity()).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_i64(-1));
        out
    }

    pub fn neg(&self) -> NcPoly {
        self.scale(&Scalar::from_i64(-1))
    }

    pub fn scale(&self, c: &Scalar) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero();
        }
        NcPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &NcPoly, datum: &YdDatum) -> NcPoly {
        let mut out = NcPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let (m, c) = mul_monomials(datum, a, b);
                out.add_term(m, &(ca * cb) * &c);
            }
        }
        out
    }

    /// Applies a map to every monomial, summing the results.
    pub fn map_monomials(&self, mut f: impl FnMut(&Monomial) -> NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (m, c) in &self.terms {
            out.add_scaled(&f(m), c);
        }
        out
    }

    /// Renders terms in descending monomial order.
    pub fn render(&self, datum: &YdDatum) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let mono = m.render(datum);
            let is_unit = m.word.is_empty() && m.group.is_identity();
            let fraction = c.to_string().contains('/') && !(-c).is_negative_rendered();
            let (neg, abs) = if (c.is_atomic() || fraction) && c.is_negative_rendered() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if is_unit {
                if abs.is_atomic() {
                    write!(out, "{abs}").unwrap();
                } else {
                    write!(out, "({abs})").unwrap();
                }
            } else if abs.is_one() {
                out.push_str(&mono);
            } else if abs.is_atomic() {
                write!(out, "{abs}*{mono}").unwrap();
            } else {
                write!(out, "({abs})*{mono}").unwrap();
            }
        }
        out
    }
}

/// Re-expresses a polynomial over another datum, matching letters by name.
pub fn transport_poly(
    p: &NcPoly,
    from: &YdDatum,
    to: &YdDatum,
    group: impl Fn(&GroupElement) -> GroupElement,
) -> Result<NcPoly, YdError> {
    let mut out = NcPoly::zero();
    for (m, c) in p.iter() {
        let letters = m
            .word
            .letters()
            .iter()
            .map(|&l| to.letter_index(&from.letter(l as usize).name).map(|i| i as u16))
            .collect::<Result<Vec<_>, _>>()?;
        out.add_term(Monomial::new(Word::new(letters), group(&m.group)), c.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::GroupSpec;
    use crate::yd::LetterSpec;

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
    fn straightening_picks_up_character() {
        let d = sl2();
        let (e, f) = (1, 0);
        let k = d.group().generator(0);
        let ek = NcPoly::monomial(Monomial::new(Word::letter(e), k.clone()), Scalar::one());
        let prod = ek.mul(&NcPoly::letter(&d, f), &d);
        let expected = NcPoly::monomial(Monomial::new(Word::new(vec![1, 0]), k), Scalar::q_pow(-2));
        assert_eq!(prod, expected);
        assert_eq!(prod.render(&d), "q^-2*e*f*K");
    }

    #[test]
    fn order_examples() {
        let d = sl2();
        let ef = Monomial::from_word(&d, Word::new(vec![1, 0]));
        let fe = Monomial::from_word(&d, Word::new(vec![0, 1]));
        let fee = Monomial::from_word(&d, Word::new(vec![0, 1, 1]));
        assert!(fee > ef);
        assert!(ef > fe);
        let k = d.group().generator(0);
        assert!(Monomial::new(ef.word.clone(), k) > ef);
    }
}
