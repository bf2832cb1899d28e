//! The braided Hopf structure on the tensor algebra of a diagonal braided
//! vector space: braided tensor square, coproduct, commutators, primitive
//! elements and quantum Serre elements.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::abgroup::GroupElement;
use crate::freealg::{Monomial, NcPoly, Word};
use crate::groebner::{Presentation, RewriteError};
use crate::linalg;
use crate::scalar::{gauss_binomial_unbalanced, Scalar, ScalarError};
use crate::yd::YdDatum;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidedError {
    #[error("element `{0}` has a nontrivial group part")]
    GroupPart(String),
    #[error("no Serre relation between a letter and itself")]
    SameLetter,
    #[error("letters `{0}` and `{1}` lie in different components")]
    DifferentComponents(String, String),
    #[error("Cartan entry must be nonpositive, got {0}")]
    PositiveCartanEntry(i64),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

/// `q(u, v) = prod_{a in u, b in v} q_ab`, the scalar of the braiding `u (x) v -> v (x) u`.
pub fn q_words(datum: &YdDatum, u: &Word, v: &Word) -> Scalar {
    let mut acc = Scalar::one();
    for &a in u.letters() {
        for &b in v.letters() {
            acc *= datum.q(a as usize, b as usize);
        }
    }
    acc
}

/// An element of the braided tensor square `T(V) (x) T(V)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BraidedTensor {
    terms: BTreeMap<(Word, Word), Scalar>,
}

impl BraidedTensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn pure(a: Word, b: Word, c: Scalar) -> Self {
        let mut t = BraidedTensor::zero();
        t.add_term(a, b, c);
        t
    }

    pub fn add_term(&mut self, a: Word, b: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((a, b)) {
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

    pub fn add_scaled(&mut self, other: &BraidedTensor, c: &Scalar) {
        for ((a, b), v) in &other.terms {
            self.add_term(a.clone(), b.clone(), v * c);
        }
    }

    pub fn terms(&self) -> &BTreeMap<(Word, Word), Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sub(&self, other: &BraidedTensor) -> BraidedTensor {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_i64(-1));
        out
    }

    /// `p (x) 1`.
    pub fn left(p: &NcPoly) -> BraidedTensor {
        let mut t = BraidedTensor::zero();
        for (m, c) in p.iter() {
            t.add_term(m.word.clone(), Word::empty(), c.clone());
        }
        t
    }

    /// `1 (x) p`.
    pub fn right(p: &NcPoly) -> BraidedTensor {
        let mut t = BraidedTensor::zero();
        for (m, c) in p.iter() {
            t.add_term(Word::empty(), m.word.clone(), c.clone());
        }
        t
    }

    /// Reduces both legs in a group-free presentation.
    pub fn reduce(&self, pres: &Presentation) -> Result<BraidedTensor, BraidedError> {
        let datum = pres.datum();
        let mut out = BraidedTensor::zero();
        for ((a, b), c) in &self.terms {
            let na = pres.normal_form_word(a);
            let nb = pres.normal_form_word(b);
            for (ma, ca) in na.iter() {
                if !ma.group.is_identity() {
                    return Err(BraidedError::GroupPart(na.render(datum)));
                }
                for (mb, cb) in nb.iter() {
                    if !mb.group.is_identity() {
                        return Err(BraidedError::GroupPart(nb.render(datum)));
                    }
                    out.add_term(ma.word.clone(), mb.word.clone(), &(c * ca) * cb);
                }
            }
        }
        Ok(out)
    }

    pub fn render(&self, datum: &YdDatum) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for ((a, b), c) in self.terms.iter().rev() {
            let body = format!("{} (x) {}", a.render(datum), b.render(datum));
            let (neg, abs) = if c.is_atomic() && c.is_negative_rendered() {
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
            if abs.is_one() {
                out.push_str(&body);
            } else if abs.is_atomic() {
                write!(out, "{abs}*{body}").unwrap();
            } else {
                write!(out, "({abs})*{body}").unwrap();
            }
        }
        out
    }
}

/// `(a (x) b)(a' (x) b') = q(b, a') (aa' (x) bb')`.
pub fn braided_mul_t2(datum: &YdDatum, x: &BraidedTensor, y: &BraidedTensor) -> BraidedTensor {
    let mut out = BraidedTensor::zero();
    for ((a, b), c) in &x.terms {
        for ((a2, b2), c2) in &y.terms {
            let q = q_words(datum, b, a2);
            out.add_term(a.concat(a2), b.concat(b2), &(c * c2) * &q);
        }
    }
    out
}

/// Braided coproduct of a word: the sum over splittings of the positions into
/// a left and a right leg, weighted by the braiding of every right-leg letter
/// that has to pass a later left-leg letter.
pub fn word_coproduct(datum: &YdDatum, w: &Word) -> BraidedTensor {
    let n = w.len();
    assert!(n < 32, "word too long for the coproduct expansion");
    let letters = w.letters();
    let mut out = BraidedTensor::zero();
    for mask in 0u32..(1 << n) {
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut coeff = Scalar::one();
        for (t, &l) in letters.iter().enumerate() {
            if mask & (1 << t) != 0 {
                for &r in &right {
                    coeff *= datum.q(r as usize, l as usize);
                }
                left.push(l);
            } else {
                right.push(l);
            }
        }
        out.add_term(Word::new(left), Word::new(right), coeff);
    }
    out
}

/// Extends `x_i -> x_i (x) 1 + 1 (x) x_i` multiplicatively.
pub fn braided_coproduct(datum: &YdDatum, p: &NcPoly) -> Result<BraidedTensor, BraidedError> {
    if !p.is_group_free() {
        return Err(BraidedError::GroupPart(p.render(datum)));
    }
    let mut out = BraidedTensor::zero();
    for (m, c) in p.iter() {
        out.add_scaled(&word_coproduct(datum, &m.word), c);
    }
    Ok(out)
}

/// `[v, w] = vw - m(c(v (x) w))`, bilinear in both arguments.
pub fn braided_commutator(datum: &YdDatum, v: &NcPoly, w: &NcPoly) -> NcPoly {
    let mut out = v.mul(w, datum);
    for (a, ca) in v.iter() {
        for (b, cb) in w.iter() {
            let q = q_words(datum, &a.word, &b.word);
            let m = Monomial::from_word(datum, b.word.concat(&a.word));
            out.add_term(m, -(&(ca * cb) * &q));
        }
    }
    out
}

/// `Delta(p) - p (x) 1 - 1 (x) p` with both legs reduced.
pub fn primitivity_defect(pres: &Presentation, p: &NcPoly) -> Result<BraidedTensor, BraidedError> {
    let datum = pres.datum();
    let d = braided_coproduct(datum, p)?
        .sub(&BraidedTensor::left(p))
        .sub(&BraidedTensor::right(p));
    d.reduce(pres)
}

pub fn is_primitive(pres: &Presentation, p: &NcPoly) -> Result<bool, BraidedError> {
    Ok(primitivity_defect(pres, p)?.is_zero())
}

/// Grading key preserved by the coproduct: coweight and the character
/// values on generators.
fn gamma_weight(datum: &YdDatum, w: &Word) -> (GroupElement, Vec<String>) {
    let group = datum.group();
    let mut g = group.identity();
    for &l in w.letters() {
        g = group.mul(&g, &datum.letter(l as usize).g);
    }
    let chars = group
        .generators()
        .iter()
        .map(|h| crate::freealg::chi_word_at(datum, w, h).to_string())
        .collect();
    (g, chars)
}

/// Basis of the primitive elements of degree `n` in the quotient `pres`,
/// optionally restricted to elements that vanish in `ideal`.
pub fn find_primitives(
    pres: &Presentation,
    ideal: Option<&Presentation>,
    n: usize,
) -> Result<Vec<NcPoly>, BraidedError> {
    let datum = pres.datum();
    let words = pres.normal_words(n)?;
    let mut blocks: BTreeMap<(GroupElement, Vec<String>), Vec<Word>> = BTreeMap::new();
    for w in words {
        blocks.entry(gamma_weight(datum, &w)).or_default().push(w);
    }
    let mut out = Vec::new();
    for basis in blocks.values() {
        let mut images: Vec<BraidedTensor> = Vec::with_capacity(basis.len());
        let mut ideal_images: Vec<NcPoly> = Vec::new();
        for w in basis {
            let p = NcPoly::word(datum, w.clone());
            images.push(primitivity_defect(pres, &p)?);
            if let Some(ideal) = ideal {
                ideal_images.push(ideal.reduce(&p));
            }
        }
        let mut row_keys: BTreeSet<(Word, Word)> = BTreeSet::new();
        for t in &images {
            row_keys.extend(t.terms().keys().cloned());
        }
        let mut ideal_keys: BTreeSet<Monomial> = BTreeSet::new();
        for p in &ideal_images {
            ideal_keys.extend(p.terms().keys().cloned());
        }
        let mut rows: Vec<Vec<Scalar>> = row_keys
            .iter()
            .map(|k| {
                images
                    .iter()
                    .map(|t| t.terms().get(k).cloned().unwrap_or_else(Scalar::zero))
                    .collect()
            })
            .collect();
        rows.extend(
            ideal_keys
                .iter()
                .map(|k| ideal_images.iter().map(|p| p.coeff(k)).collect()),
        );
        for v in linalg::nullspace(&rows, basis.len()) {
            let mut p = NcPoly::zero();
            for (w, c) in basis.iter().zip(&v) {
                p.add_term(Monomial::from_word(datum, w.clone()), c.clone());
            }
            let lead = p.leading().map(|(_, c)| c.clone()).expect("kernel vectors are nonzero");
            out.push(p.scale(&lead.inv()?));
        }
    }
    Ok(out)
}

/// One saturation pass per degree: primitives of degree `2..=max_degree` in
/// the current quotient are added as relations, and the quotient is completed.
pub fn saturate(
    pres: &Presentation,
    max_degree: usize,
) -> Result<(Presentation, Vec<NcPoly>), BraidedError> {
    let datum = pres.datum_arc().clone();
    let mut current = pres.complete(max_degree)?;
    let mut added = Vec::new();
    for n in 2..=max_degree {
        let prims = find_primitives(&current, None, n)?;
        if prims.is_empty() {
            continue;
        }
        let mut relations: Vec<NcPoly> =
            current.rules().iter().map(|r| r.relation(&datum)).collect();
        relations.extend(prims.iter().cloned());
        added.extend(prims);
        current = Presentation::from_relations(datum.clone(), &relations)?.complete(max_degree)?;
    }
    Ok((current, added))
}

/// The quantum Serre element `(ad x_i)^{1-a}(x_j)`:
/// `sum_k (-1)^k (m choose k)_{q_ii} q_ii^{k(k-1)/2} q_ij^k x_i^{m-k} x_j x_i^k`, `m = 1 - a`.
pub fn serre_element(
    datum: &YdDatum,
    i: usize,
    j: usize,
    a_ij: i64,
) -> Result<NcPoly, BraidedError> {
    if i == j {
        return Err(BraidedError::SameLetter);
    }
    if datum.component_of(i) != datum.component_of(j) {
        return Err(BraidedError::DifferentComponents(
            datum.letter(i).name.clone(),
            datum.letter(j).name.clone(),
        ));
    }
    if a_ij > 0 {
        return Err(BraidedError::PositiveCartanEntry(a_ij));
    }
    let m = (1 - a_ij) as u32;
    let qii = datum.q(i, i);
    let qij = datum.q(i, j);
    let mut out = NcPoly::zero();
    for k in 0..=m {
        let sign = if k % 2 == 0 { Scalar::one() } else { Scalar::from_i64(-1) };
        let c = sign
            .checked_mul(&gauss_binomial_unbalanced(m, k, qii)?)?
            .checked_mul(&qii.pow((k * k.saturating_sub(1) / 2) as i64)?)?
            .checked_mul(&qij.pow(k as i64)?)?;
        let mut w = vec![i as u16; (m - k) as usize];
        w.push(j as u16);
        w.extend(std::iter::repeat(i as u16).take(k as usize));
        out.add_term(Monomial::from_word(datum, Word::new(w)), c);
    }
    Ok(out)
}

/// The free braided algebra on the datum, as a presentation.
pub fn free_presentation(datum: &Arc<YdDatum>) -> Presentation {
    Presentation::free(datum.clone())
}
