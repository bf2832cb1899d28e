//! Ordinary Hopf structure on a bosonization `R # kG`: coproduct, counit,
//! antipode, and a degree-bounded Hopf axiom verifier.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::RwLock;

use thiserror::Error;

use crate::abgroup::GroupElement;
use crate::freealg::{mul_monomials, Monomial, NcPoly, Word};
use crate::groebner::{right_mul_group, Presentation, RewriteError};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::yd::YdDatum;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("coproduct is not well defined: {check} on {subject} leaves {residue}")]
    NotWellDefined {
        check: String,
        subject: String,
        residue: String,
    },
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

/// A finite sum of pure tensors of monomials, all of the same arity.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Tensor {
    terms: BTreeMap<Vec<Monomial>, Scalar>,
}

impl Tensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn pure(legs: Vec<Monomial>, c: Scalar) -> Self {
        let mut t = Tensor::zero();
        t.add_term(legs, c);
        t
    }

    pub fn add_term(&mut self, legs: Vec<Monomial>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(legs) {
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

    pub fn add_scaled(&mut self, other: &Tensor, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_i64(-1));
        out
    }

    pub fn scale(&self, c: &Scalar) -> Tensor {
        let mut out = Tensor::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Monomial>, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Tensor product of polynomials.
    pub fn from_polys(polys: &[&NcPoly]) -> Tensor {
        let mut out = Tensor::pure(Vec::new(), Scalar::one());
        for p in polys {
            let mut next = Tensor::zero();
            for (legs, c) in &out.terms {
                for (m, v) in p.iter() {
                    let mut l = legs.clone();
                    l.push(m.clone());
                    next.add_term(l, c * v);
                }
            }
            out = next;
        }
        out
    }

    /// Leg-wise product in the free smash product (no reduction).
    pub fn mul(&self, other: &Tensor, datums: &[&YdDatum]) -> Tensor {
        let mut out = Tensor::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut c = ca * cb;
                let mut legs = Vec::with_capacity(a.len());
                for (k, (x, y)) in a.iter().zip(b).enumerate() {
                    let (m, s) = mul_monomials(datums[k], x, y);
                    c *= &s;
                    legs.push(m);
                }
                out.add_term(legs, c);
            }
        }
        out
    }

    /// Reduces leg `k` in `presentations[k]`.
    pub fn reduce_legs(&self, presentations: &[&Presentation]) -> Tensor {
        let mut out = Tensor::zero();
        for (legs, c) in &self.terms {
            let reduced: Vec<NcPoly> = legs
                .iter()
                .zip(presentations)
                .map(|(m, p)| {
                    let nf = p.normal_form_word(&m.word);
                    right_mul_group(&nf, &m.group, p.datum())
                })
                .collect();
            let refs: Vec<&NcPoly> = reduced.iter().collect();
            out.add_scaled(&Tensor::from_polys(&refs), c);
        }
        out
    }

    /// Replaces leg `k` of every term by the tensor `f(leg)`.
    pub fn expand_leg(&self, k: usize, mut f: impl FnMut(&Monomial) -> Tensor) -> Tensor {
        let mut cache: HashMap<Monomial, Tensor> = HashMap::new();
        let mut out = Tensor::zero();
        for (legs, c) in &self.terms {
            let img = cache
                .entry(legs[k].clone())
                .or_insert_with(|| f(&legs[k]))
                .clone();
            for (inner, v) in &img.terms {
                let mut l = Vec::with_capacity(legs.len() + inner.len() - 1);
                l.extend_from_slice(&legs[..k]);
                l.extend(inner.iter().cloned());
                l.extend_from_slice(&legs[k + 1..]);
                out.add_term(l, c * v);
            }
        }
        out
    }

    /// Multiplies the legs together (all legs over the same datum), unreduced.
    pub fn multiply_out(&self, datum: &YdDatum) -> NcPoly {
        let mut out = NcPoly::zero();
        for (legs, c) in &self.terms {
            let mut acc = Monomial::one(datum);
            let mut coeff = c.clone();
            for m in legs {
                let (next, s) = mul_monomials(datum, &acc, m);
                acc = next;
                coeff *= &s;
            }
            out.add_term(acc, coeff);
        }
        out
    }

    pub fn render(&self, datums: &[&YdDatum]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (legs, c) in self.terms.iter().rev() {
            let body = legs
                .iter()
                .enumerate()
                .map(|(k, m)| m.render(datums[k.min(datums.len() - 1)]))
                .collect::<Vec<_>>()
                .join(" (x) ");
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

/// Coproduct of a word in the free smash product, from
/// `Delta(x_i) = x_i (x) 1 + g_i (x) x_i`.
pub fn free_coproduct_word(datum: &YdDatum, w: &Word) -> Tensor {
    let n = w.len();
    assert!(n < 32, "word too long for the coproduct expansion");
    let group = datum.group();
    let letters = w.letters();
    let mut out = Tensor::zero();
    for mask in 0u32..(1 << n) {
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut right_letters: Vec<u16> = Vec::new();
        let mut g = group.identity();
        let mut coeff = Scalar::one();
        for (t, &l) in letters.iter().enumerate() {
            if mask & (1 << t) != 0 {
                for &r in &right_letters {
                    coeff *= datum.q(r as usize, l as usize);
                }
                left.push(l);
            } else {
                g = group.mul(&g, &datum.letter(l as usize).g);
                right_letters.push(l);
                right.push(l);
            }
        }
        out.add_term(
            vec![
                Monomial::new(Word::new(left), g),
                Monomial::from_word(datum, Word::new(right)),
            ],
            coeff,
        );
    }
    out
}

/// Coproduct of a monomial `(w, g)`: `Delta(w) (g (x) g)`.
pub fn free_coproduct_monomial(datum: &YdDatum, m: &Monomial) -> Tensor {
    let base = free_coproduct_word(datum, &m.word);
    if m.group.is_identity() {
        return base;
    }
    right_mul_group_legs(&base, &m.group, datum)
}

fn right_mul_group_legs(t: &Tensor, g: &GroupElement, datum: &YdDatum) -> Tensor {
    let group = datum.group();
    let mut out = Tensor::zero();
    for (legs, c) in t.terms() {
        let legs = legs
            .iter()
            .map(|m| Monomial::new(m.word.clone(), group.mul(&m.group, g)))
            .collect();
        out.add_term(legs, c.clone());
    }
    out
}

/// Coproduct with the legs reduced in possibly different presentations.
pub fn coproduct_between(p: &NcPoly, left: &Presentation, right: &Presentation) -> Tensor {
    let datum = left.datum();
    let mut free = Tensor::zero();
    for (m, c) in p.iter() {
        free.add_scaled(&free_coproduct_monomial(datum, m), c);
    }
    free.reduce_legs(&[left, right])
}

/// `epsilon(x_i) = 0`, `epsilon(g) = 1`.
pub fn counit(p: &NcPoly) -> Scalar {
    let mut acc = Scalar::zero();
    for (m, c) in p.iter() {
        if m.word.is_empty() {
            acc += c;
        }
    }
    acc
}

fn counit_monomial(m: &Monomial) -> Scalar {
    if m.word.is_empty() {
        Scalar::one()
    } else {
        Scalar::zero()
    }
}

/// A presentation together with its generator coproducts, counit and antipode.
#[derive(Debug)]
pub struct HopfPresentation {
    pres: Presentation,
    coproducts: RwLock<HashMap<Word, Tensor>>,
    antipodes: RwLock<HashMap<Word, NcPoly>>,
}

impl Clone for HopfPresentation {
    fn clone(&self) -> Self {
        HopfPresentation {
            pres: self.pres.clone(),
            coproducts: RwLock::new(self.coproducts.read().unwrap().clone()),
            antipodes: RwLock::new(self.antipodes.read().unwrap().clone()),
        }
    }
}

impl HopfPresentation {
    /// Checks that the coproduct respects every rule, including the rules
    /// conjugated by group generators, before accepting the presentation.
    pub fn new(pres: Presentation) -> Result<Self, HopfError> {
        let hp = HopfPresentation::new_unchecked(pres);
        let report = hp.well_definedness();
        if let Some(e) = report.first_failure() {
            return Err(HopfError::NotWellDefined {
                check: e.check.clone(),
                subject: e.subject.clone(),
                residue: e.residue.clone().unwrap_or_default(),
            });
        }
        Ok(hp)
    }

    /// Skips the well-definedness check; used for deliberately broken inputs.
    pub fn new_unchecked(pres: Presentation) -> Self {
        HopfPresentation {
            pres,
            coproducts: RwLock::new(HashMap::new()),
            antipodes: RwLock::new(HashMap::new()),
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn datum(&self) -> &YdDatum {
        self.pres.datum()
    }

    fn word_coproduct(&self, w: &Word) -> Tensor {
        if let Some(t) = self.coproducts.read().unwrap().get(w) {
            return t.clone();
        }
        let t = free_coproduct_word(self.datum(), w).reduce_legs(&[&self.pres, &self.pres]);
        self.coproducts
            .write()
            .unwrap()
            .insert(w.clone(), t.clone());
        t
    }

    pub fn coproduct_monomial(&self, m: &Monomial) -> Tensor {
        let base = self.word_coproduct(&m.word);
        if m.group.is_identity() {
            base
        } else {
            right_mul_group_legs(&base, &m.group, self.datum())
        }
    }

    /// Multiplicative extension of the generator coproducts, legs reduced.
    pub fn coproduct(&self, p: &NcPoly) -> Tensor {
        let mut out = Tensor::zero();
        for (m, c) in p.iter() {
            out.add_scaled(&self.coproduct_monomial(m), c);
        }
        out
    }

    pub fn counit(&self, p: &NcPoly) -> Scalar {
        counit(p)
    }

    fn word_antipode(&self, w: &Word) -> NcPoly {
        if w.is_empty() {
            return NcPoly::one(self.datum());
        }
        if let Some(p) = self.antipodes.read().unwrap().get(w) {
            return p.clone();
        }
        let datum = self.datum();
        let n = w.len();
        let last = w.letters()[n - 1] as usize;
        let g = &datum.letter(last).g;
        let ginv = datum.group().inverse(g);
        // S(x) = -g^-1 x
        let s_last = NcPoly::group_element(ginv)
            .mul(&NcPoly::word(datum, Word::letter(last)), datum)
            .scale(&Scalar::from_i64(-1));
        let rest = self.word_antipode(&w.slice(0, n - 1));
        let result = self.pres.mul(&s_last, &rest);
        self.antipodes
            .write()
            .unwrap()
            .insert(w.clone(), result.clone());
        result
    }

    /// Anti-multiplicative extension of `S(g) = g^-1`, `S(x_i) = -g_i^-1 x_i`.
    pub fn antipode_monomial(&self, m: &Monomial) -> NcPoly {
        let datum = self.datum();
        let ginv = NcPoly::group_element(datum.group().inverse(&m.group));
        self.pres.mul(&ginv, &self.word_antipode(&m.word))
    }

    pub fn antipode(&self, p: &NcPoly) -> NcPoly {
        p.map_monomials(|m| self.antipode_monomial(m))
    }

    fn render_t(&self, t: &Tensor) -> String {
        t.render(&[self.datum()])
    }

    /// Coproduct compatibility with each rule, plain and conjugated by group
    /// generators and their inverses.
    pub fn well_definedness(&self) -> Report {
        let datum = self.datum();
        let mut report = Report::new();
        for rule in self.pres.rules() {
            let lhs = NcPoly::word(datum, rule.lhs.clone());
            let subject = format!("rule {}", rule.lhs.render(datum));
            let free_lhs = free_coproduct_word(datum, &rule.lhs).reduce_legs(&[&self.pres, &self.pres]);
            let residue = free_lhs.sub(&self.coproduct(&rule.rhs));
            report.record(
                "DELTA_RULE",
                subject.clone(),
                (!residue.is_zero()).then(|| self.render_t(&residue)),
            );
            for h in group_sample(datum, true).into_iter().skip(1) {
                let hp = NcPoly::group_element(h.clone());
                let left = self.coproduct(&self.pres.mul(&hp, &lhs));
                let right = Tensor::pure(
                    vec![Monomial::from_group(h.clone()), Monomial::from_group(h.clone())],
                    Scalar::one(),
                )
                .mul(&self.coproduct(&self.pres.reduce(&lhs)), &[datum, datum])
                .reduce_legs(&[&self.pres, &self.pres]);
                let residue = left.sub(&right);
                report.record(
                    "DELTA_MULT",
                    format!("{subject} h={}", datum.group().render(&h)),
                    (!residue.is_zero()).then(|| self.render_t(&residue)),
                );
            }
        }
        report
    }

    /// Verifies the Hopf axioms on normal monomials of degree at most `d`
    /// with group parts from `{1} + generators`.
    pub fn check_hopf_axioms(&self, d: usize) -> Result<Report, HopfError> {
        let datum = self.datum();
        let pres = &self.pres;
        let mut report = self.well_definedness();
        let basis = normal_monomials(pres, d, &group_sample(datum, false))?;

        for rule in pres.rules() {
            let lhs = NcPoly::word(datum, rule.lhs.clone());
            let residue = self.antipode(&lhs).sub(&self.antipode(&rule.rhs));
            let residue = pres.reduce(&residue);
            report.record(
                "ANTIPODE_RULE",
                format!("rule {}", rule.lhs.render(datum)),
                (!residue.is_zero()).then(|| residue.render(datum)),
            );
        }

        for m in &basis {
            let subject = m.render(datum);
            let delta = self.coproduct_monomial(m);

            let left = delta.expand_leg(0, |a| self.coproduct_monomial(a));
            let right = delta.expand_leg(1, |b| self.coproduct_monomial(b));
            let residue = left.sub(&right);
            report.record(
                "COASSOC",
                subject.clone(),
                (!residue.is_zero()).then(|| self.render_t(&residue)),
            );

            let mut eps_left = NcPoly::zero();
            let mut eps_right = NcPoly::zero();
            for (legs, c) in delta.terms() {
                eps_left.add_term(legs[1].clone(), c * &counit_monomial(&legs[0]));
                eps_right.add_term(legs[0].clone(), c * &counit_monomial(&legs[1]));
            }
            let mp = NcPoly::monomial(m.clone(), Scalar::one());
            let bad = [eps_left.sub(&mp), eps_right.sub(&mp)]
                .into_iter()
                .find(|r| !r.is_zero());
            report.record("COUNIT", subject.clone(), bad.map(|r| r.render(datum)));

            let eps = NcPoly::constant(datum, counit_monomial(m));
            let mut s_left = NcPoly::zero();
            let mut s_right = NcPoly::zero();
            for (legs, c) in delta.terms() {
                let a = self.antipode_monomial(&legs[0]);
                let b = NcPoly::monomial(legs[1].clone(), Scalar::one());
                s_left.add_scaled(&pres.mul(&a, &b), c);
                let a = NcPoly::monomial(legs[0].clone(), Scalar::one());
                let b = self.antipode_monomial(&legs[1]);
                s_right.add_scaled(&pres.mul(&a, &b), c);
            }
            let r1 = s_left.sub(&eps);
            report.record(
                "ANTIPODE_LEFT",
                subject.clone(),
                (!r1.is_zero()).then(|| r1.render(datum)),
            );
            let r2 = s_right.sub(&eps);
            report.record(
                "ANTIPODE_RIGHT",
                subject.clone(),
                (!r2.is_zero()).then(|| r2.render(datum)),
            );
        }

        let gens = generator_sample(datum);
        for a in &gens {
            let da = self.coproduct(a);
            for m in basis.iter().filter(|m| m.degree() < d) {
                let b = NcPoly::monomial(m.clone(), Scalar::one());
                let prod = pres.mul(a, &b);
                let left = self.coproduct(&prod);
                let right = da
                    .mul(&self.coproduct_monomial(m), &[datum, datum])
                    .reduce_legs(&[pres, pres]);
                let residue = left.sub(&right);
                report.record(
                    "DELTA_MULT",
                    format!("{} * {}", a.render(datum), m.render(datum)),
                    (!residue.is_zero()).then(|| self.render_t(&residue)),
                );
            }
        }
        Ok(report)
    }
}

/// `{1}` followed by the group generators (and their inverses if asked).
pub fn group_sample(datum: &YdDatum, with_inverses: bool) -> Vec<GroupElement> {
    let group = datum.group();
    let mut out = vec![group.identity()];
    for g in group.generators() {
        let inv = group.inverse(&g);
        out.push(g.clone());
        if with_inverses && inv != g {
            out.push(inv);
        }
    }
    out
}

/// Algebra generators: letters, group generators and their inverses.
pub fn generator_sample(datum: &YdDatum) -> Vec<NcPoly> {
    let mut out: Vec<NcPoly> = (0..datum.len()).map(|i| NcPoly::letter(datum, i)).collect();
    out.extend(
        group_sample(datum, true)
            .into_iter()
            .skip(1)
            .map(NcPoly::group_element),
    );
    out
}

/// Normal monomials of degree at most `d` with the given group parts.
pub fn normal_monomials(
    pres: &Presentation,
    d: usize,
    groups: &[GroupElement],
) -> Result<Vec<Monomial>, RewriteError> {
    let mut out = Vec::new();
    for n in 0..=d {
        for w in pres.normal_words(n)? {
            for g in groups {
                out.push(Monomial::new(w.clone(), g.clone()));
            }
        }
    }
    Ok(out)
}
