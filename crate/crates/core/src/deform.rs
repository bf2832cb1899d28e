//! Deformation by linking parameters: the graded algebra, its deformation,
//! the cleft object between them, the section and its convolution inverse,
//! the extracted 2-cocycle and the deformed product.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use thiserror::Error;

use crate::abgroup::GroupElement;
use crate::bosonize::{
    coproduct_between, counit, group_sample, normal_monomials, HopfError, HopfPresentation,
    Tensor,
};
use crate::freealg::{chi_word_at, Monomial, NcPoly, Word};
use crate::groebner::{right_mul_group, CompletionReport, Presentation, RewriteError};
use crate::report::Report;
use crate::scalar::{Scalar, ScalarError};
use crate::yd::{LinkingParameters, YdDatum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeformError {
    #[error("invalid datum:\n{0}")]
    Validation(String),
    #[error("extra relation `{0}` must be free of group parts and homogeneous for the group action")]
    InhomogeneousRelation(String),
    #[error("{what} is not a scalar: {residue}")]
    NonScalar { what: String, residue: String },
    #[error("degree {requested} exceeds the bound {bound}")]
    DegreeExceedsBound { requested: usize, bound: usize },
    #[error("`{0}` is not triangular with respect to the normal basis")]
    NotTriangular(String),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Which of the three algebras a cross-component relation is built for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// `x_i x_j = q_ij x_j x_i`
    Graded,
    /// `x_i x_j = q_ij x_j x_i + lambda_ij (g_i g_j - 1)`
    Deformed,
    /// `x_i x_j = q_ij x_j x_i - lambda_ij`
    Cleft,
}

/// Cross-component relations for every pair `component(i) > component(j)`.
pub fn cross_relations(
    datum: &YdDatum,
    lambda: &LinkingParameters,
    variant: Variant,
) -> Vec<NcPoly> {
    let mut out = Vec::new();
    for i in 0..datum.len() {
        for j in 0..datum.len() {
            if datum.component_of(i) <= datum.component_of(j) {
                continue;
            }
            let mut rel = NcPoly::word(datum, Word::new(vec![i as u16, j as u16]));
            rel.add_term(
                Monomial::from_word(datum, Word::new(vec![j as u16, i as u16])),
                -datum.q(i, j),
            );
            let l = lambda.get(datum, i, j);
            match variant {
                Variant::Graded => {}
                Variant::Deformed => {
                    let gij = datum.group().mul(&datum.letter(i).g, &datum.letter(j).g);
                    rel.add_term(Monomial::from_group(gij), -&l);
                    rel.add_term(Monomial::one(datum), l);
                }
                Variant::Cleft => rel.add_term(Monomial::one(datum), l),
            }
            out.push(rel);
        }
    }
    out
}

fn check_extra(datum: &YdDatum, rel: &NcPoly) -> Result<(), DeformError> {
    let gens = datum.group().generators();
    let weight = |w: &Word| gens.iter().map(|g| chi_word_at(datum, w, g)).collect::<Vec<_>>();
    let mut target = None;
    for (m, _) in rel.iter() {
        let w = weight(&m.word);
        let same = target.get_or_insert_with(|| w.clone()) == &w;
        if !m.group.is_identity() || !same {
            return Err(DeformError::InhomogeneousRelation(rel.render(datum)));
        }
    }
    Ok(())
}

/// The graded algebra, its deformation and the cleft object, completed to a
/// common degree bound.
#[derive(Debug)]
pub struct DeformedPresentation {
    datum: Arc<YdDatum>,
    lambda: LinkingParameters,
    extra: Vec<NcPoly>,
    h: HopfPresentation,
    h_lambda: HopfPresentation,
    cleft: Presentation,
    completions: Vec<CompletionReport>,
    max_degree: usize,
    phi_inv: RwLock<HashMap<Monomial, NcPoly>>,
}

impl DeformedPresentation {
    pub fn build(
        datum: Arc<YdDatum>,
        lambda: LinkingParameters,
        extra: Vec<NcPoly>,
        max_degree: usize,
    ) -> Result<Self, DeformError> {
        let report = datum.validate(&lambda);
        if !report.passed() {
            return Err(DeformError::Validation(report.to_string()));
        }
        Self::build_inner(datum, lambda, extra, max_degree, true)
    }

    /// Skips datum validation and the coproduct well-definedness check.
    pub fn build_unchecked(
        datum: Arc<YdDatum>,
        lambda: LinkingParameters,
        extra: Vec<NcPoly>,
        max_degree: usize,
    ) -> Result<Self, DeformError> {
        Self::build_inner(datum, lambda, extra, max_degree, false)
    }

    fn build_inner(
        datum: Arc<YdDatum>,
        lambda: LinkingParameters,
        extra: Vec<NcPoly>,
        max_degree: usize,
        checked: bool,
    ) -> Result<Self, DeformError> {
        for rel in &extra {
            check_extra(&datum, rel)?;
        }
        let mut completions = Vec::new();
        let mut make = |variant| -> Result<Presentation, DeformError> {
            let mut rels = extra.clone();
            rels.extend(cross_relations(&datum, &lambda, variant));
            let (p, report) =
                Presentation::from_relations(datum.clone(), &rels)?.complete_with_report(max_degree)?;
            completions.push(report);
            Ok(p)
        };
        let hopf = |p: Presentation| -> Result<HopfPresentation, DeformError> {
            if checked {
                Ok(HopfPresentation::new(p)?)
            } else {
                Ok(HopfPresentation::new_unchecked(p))
            }
        };
        let h = hopf(make(Variant::Graded)?)?;
        let h_lambda = hopf(make(Variant::Deformed)?)?;
        let cleft = make(Variant::Cleft)?;
        Ok(DeformedPresentation {
            completions,
            datum,
            lambda,
            extra,
            h,
            h_lambda,
            cleft,
            max_degree,
            phi_inv: RwLock::new(HashMap::new()),
        })
    }

    pub fn datum(&self) -> &YdDatum {
        &self.datum
    }

    pub fn datum_arc(&self) -> &Arc<YdDatum> {
        &self.datum
    }

    pub fn lambda(&self) -> &LinkingParameters {
        &self.lambda
    }

    pub fn extra_relations(&self) -> &[NcPoly] {
        &self.extra
    }

    /// The graded Hopf algebra (all linking parameters zero).
    pub fn graded(&self) -> &HopfPresentation {
        &self.h
    }

    /// The deformed Hopf algebra.
    pub fn deformed(&self) -> &HopfPresentation {
        &self.h_lambda
    }

    /// The cleft object.
    pub fn cleft(&self) -> &Presentation {
        &self.cleft
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Completion statistics for the graded, deformed and cleft presentations.
    pub fn completion_reports(&self) -> &[CompletionReport] {
        &self.completions
    }

    /// Substitutes another cleft object, e.g. a deliberately corrupted one.
    pub fn replace_cleft(&mut self, cleft: Presentation) {
        self.cleft = cleft;
        self.phi_inv.write().unwrap().clear();
    }

    /// Sends a normal monomial `(w, g)` of the graded algebra to the product
    /// of its component blocks in `target`, which is `NF_target(w) g`.
    pub fn section_into(&self, m: &Monomial, target: &Presentation) -> NcPoly {
        right_mul_group(&target.normal_form_word(&m.word), &m.group, &self.datum)
    }

    /// The colinear section into the cleft object.
    pub fn phi(&self, m: &Monomial) -> NcPoly {
        self.section_into(m, &self.cleft)
    }

    /// The section into the deformed Hopf algebra.
    pub fn eta(&self, m: &Monomial) -> NcPoly {
        self.section_into(m, self.h_lambda.presentation())
    }

    pub fn eta_poly(&self, p: &NcPoly) -> NcPoly {
        p.map_monomials(|m| self.eta(m))
    }

    pub fn phi_poly(&self, p: &NcPoly) -> NcPoly {
        p.map_monomials(|m| self.phi(m))
    }

    /// Convolution inverse of the section on a normal monomial, by recursion
    /// on letter-degree.
    pub fn phi_inverse(&self, m: &Monomial) -> Result<NcPoly, DeformError> {
        if m.degree() > self.max_degree {
            return Err(DeformError::DegreeExceedsBound {
                requested: m.degree(),
                bound: self.max_degree,
            });
        }
        if let Some(p) = self.phi_inv.read().unwrap().get(m) {
            return Ok(p.clone());
        }
        let datum = &*self.datum;
        let ginv = datum.group().inverse(&m.group);
        let result = if m.word.is_empty() {
            NcPoly::group_element(ginv)
        } else {
            let mut acc = NcPoly::zero();
            for (legs, c) in self.h.coproduct_monomial(m).terms() {
                if legs[0].degree() == m.degree() {
                    continue;
                }
                let left = self.phi_inverse(&legs[0])?;
                let prod = self.cleft.mul(&left, &self.phi(&legs[1]));
                acc.add_scaled(&prod, c);
            }
            let rhs = NcPoly::zero().sub(&acc);
            self.cleft.mul(&rhs, &NcPoly::group_element(ginv))
        };
        self.phi_inv
            .write()
            .unwrap()
            .insert(m.clone(), result.clone());
        Ok(result)
    }

    pub fn phi_inverse_poly(&self, p: &NcPoly) -> Result<NcPoly, DeformError> {
        let mut out = NcPoly::zero();
        for (m, c) in p.iter() {
            out.add_scaled(&self.phi_inverse(m)?, c);
        }
        Ok(out)
    }

    /// Inverse of the section into the deformed algebra, by peeling off leading
    /// terms (the section is the identity plus lower terms on normal monomials).
    pub fn eta_inverse(&self, p: &NcPoly) -> Result<NcPoly, DeformError> {
        let target = self.h_lambda.presentation();
        let mut rest = target.reduce(p);
        let mut out = NcPoly::zero();
        while let Some((m, c)) = rest.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !self.h.presentation().is_normal(&m.word) {
                return Err(DeformError::NotTriangular(m.render(&self.datum)));
            }
            let img = self.eta(&m);
            if img.coeff(&m) != Scalar::one() || img.leading().map(|(l, _)| l) != Some(&m) {
                return Err(DeformError::NotTriangular(m.render(&self.datum)));
            }
            rest.add_scaled(&img, &-&c);
            out.add_term(m, c);
        }
        Ok(out)
    }

    /// The 2-cocycle `sigma(x, y) = phi(x1) phi(y1) phi^-1(x2 y2)`.
    pub fn extracted_cocycle(&self) -> Cocycle<ExtractedSource<'_>> {
        Cocycle::new(ExtractedSource { dp: self })
    }

    /// Normal monomials of the graded algebra of degree at most `d` with
    /// group parts `1` and the group generators.
    pub fn basis(&self, d: usize) -> Result<Vec<Monomial>, DeformError> {
        Ok(normal_monomials(
            self.h.presentation(),
            d,
            &group_sample(&self.datum, false),
        )?)
    }

    /// Checks that the coactions of the deformed and graded algebras on the
    /// cleft object are well defined and commute.
    pub fn comodule_check(&self, d: usize) -> Result<Report, DeformError> {
        let datum = &*self.datum;
        let h = self.h.presentation();
        let hl = self.h_lambda.presentation();
        let a = &self.cleft;
        let mut report = Report::new();
        for rule in a.rules() {
            let rel = rule.relation(datum);
            let subject = format!("rule {}", rule.lhs.render(datum));
            let right = coproduct_between(&rel, a, h);
            report.record(
                "RIGHT_COACTION",
                subject.clone(),
                (!right.is_zero()).then(|| right.render(&[datum])),
            );
            let left = coproduct_between(&rel, hl, a);
            report.record(
                "LEFT_COACTION",
                subject,
                (!left.is_zero()).then(|| left.render(&[datum])),
            );
        }
        let basis = normal_monomials(a, d, &group_sample(datum, false))?;
        for m in &basis {
            let p = NcPoly::monomial(m.clone(), Scalar::one());
            let one = |x: &Monomial| NcPoly::monomial(x.clone(), Scalar::one());
            let first = coproduct_between(&p, a, h)
                .expand_leg(0, |x| coproduct_between(&one(x), hl, a));
            let second = coproduct_between(&p, hl, a)
                .expand_leg(1, |x| coproduct_between(&one(x), a, h));
            let residue = first.sub(&second);
            report.record(
                "BICOMODULE",
                m.render(datum),
                (!residue.is_zero()).then(|| residue.render(&[datum])),
            );
        }
        Ok(report)
    }

    /// `(phi (x) id) Delta = delta_R phi` on the basis up to degree `d`.
    pub fn colinearity_check(&self, d: usize) -> Result<Report, DeformError> {
        let datum = &*self.datum;
        let h = self.h.presentation();
        let mut report = Report::new();
        for m in self.basis(d)? {
            let lhs = self.h.coproduct_monomial(&m).expand_leg(0, |x| {
                Tensor::from_polys(&[&self.phi(x)])
            });
            let rhs = coproduct_between(&self.phi(&m), &self.cleft, h);
            let residue = lhs.sub(&rhs);
            report.record(
                "COLINEAR",
                m.render(datum),
                (!residue.is_zero()).then(|| residue.render(&[datum])),
            );
        }
        Ok(report)
    }

    /// `x . y = eta^-1(eta(x) eta(y))` on basis pairs of total degree at most `d`.
    pub fn transport_check<S: CocycleSource>(
        &self,
        sigma: &Cocycle<S>,
        d: usize,
    ) -> Result<Report, DeformError> {
        let datum = &*self.datum;
        let hl = self.h_lambda.presentation();
        let basis = self.basis(d)?;
        let mut report = Report::new();
        for x in &basis {
            for y in &basis {
                if x.degree() + y.degree() > d {
                    continue;
                }
                let lhs = sigma.deformed_product(x, y)?;
                let rhs = self.eta_inverse(&hl.mul(&self.eta(x), &self.eta(y)))?;
                let residue = lhs.sub(&rhs);
                report.record(
                    "TRANSPORT",
                    format!("{} * {}", x.render(datum), y.render(datum)),
                    (!residue.is_zero()).then(|| residue.render(datum)),
                );
            }
        }
        Ok(report)
    }

    /// Normal-word counts per degree for the graded and deformed algebras.
    pub fn graded_dims(&self, n_max: usize) -> Result<DimTable, DeformError> {
        let mut rows = Vec::new();
        for n in 0..=n_max {
            let a = self.h.presentation().normal_words(n)?.len();
            let b = self.h_lambda.presentation().normal_words(n)?.len();
            rows.push(DimRow {
                degree: n,
                graded: a,
                deformed: b,
            });
        }
        Ok(DimTable {
            rows,
            group_order: self.datum.group().order(),
        })
    }

    /// Dropping the lower-degree terms of each deformed rule must give the
    /// graded rule with the same left-hand side.
    pub fn filtration_check(&self) -> Report {
        let datum = &*self.datum;
        let graded: BTreeMap<&Word, &NcPoly> = self
            .h
            .presentation()
            .rules()
            .iter()
            .map(|r| (&r.lhs, &r.rhs))
            .collect();
        let mut report = Report::new();
        for rule in self.h_lambda.presentation().rules() {
            let top = rule.rhs.homogeneous_part(rule.lhs.len());
            let subject = format!("rule {}", rule.lhs.render(datum));
            match graded.get(&rule.lhs) {
                Some(&g) if *g == top => report.pass("FILTRATION", subject),
                Some(&g) => report.fail(
                    "FILTRATION",
                    subject,
                    format!("top part {} differs from {}", top.render(datum), g.render(datum)),
                ),
                None => report.fail("FILTRATION", subject, "no graded rule with this lhs"),
            }
        }
        report
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimRow {
    pub degree: usize,
    pub graded: usize,
    pub deformed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimTable {
    pub rows: Vec<DimRow>,
    pub group_order: Option<u64>,
}

impl DimTable {
    pub fn all_equal(&self) -> bool {
        self.rows.iter().all(|r| r.graded == r.deformed)
    }

    pub fn graded_counts(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.graded).collect()
    }

    pub fn deformed_counts(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.deformed).collect()
    }

    /// Total dimensions (normal words times group order) when the group is finite.
    pub fn totals(&self) -> Option<(u64, u64)> {
        let g = self.group_order?;
        let a: u64 = self.rows.iter().map(|r| r.graded as u64).sum();
        let b: u64 = self.rows.iter().map(|r| r.deformed as u64).sum();
        Some((a * g, b * g))
    }
}

impl fmt::Display for DimTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "degree graded deformed equal")?;
        for r in &self.rows {
            let eq = if r.graded == r.deformed { "yes" } else { "no" };
            writeln!(f, "{} {} {} {}", r.degree, r.graded, r.deformed, eq)?;
        }
        if let Some((a, b)) = self.totals() {
            writeln!(f, "total {a} {b}")?;
        }
        Ok(())
    }
}

/// Where a cocycle's values come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CocycleKind {
    Extracted,
    PairingInduced,
}

impl fmt::Display for CocycleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CocycleKind::Extracted => f.write_str("extracted"),
            CocycleKind::PairingInduced => f.write_str("pairing-induced"),
        }
    }
}

/// A bilinear form on a Hopf algebra, evaluated on normal monomials.
pub trait CocycleSource {
    fn hopf(&self) -> &HopfPresentation;
    fn kind(&self) -> CocycleKind;
    fn raw_value(&self, x: &Monomial, y: &Monomial) -> Result<Scalar, DeformError>;
}

pub struct ExtractedSource<'a> {
    dp: &'a DeformedPresentation,
}

impl CocycleSource for ExtractedSource<'_> {
    fn hopf(&self) -> &HopfPresentation {
        &self.dp.h
    }

    fn kind(&self) -> CocycleKind {
        CocycleKind::Extracted
    }

    fn raw_value(&self, x: &Monomial, y: &Monomial) -> Result<Scalar, DeformError> {
        let dp = self.dp;
        let h = dp.h.presentation();
        let a = &dp.cleft;
        let dx = dp.h.coproduct_monomial(x);
        let dy = dp.h.coproduct_monomial(y);
        let mut acc = NcPoly::zero();
        for (lx, cx) in dx.terms() {
            for (ly, cy) in dy.terms() {
                let prod = h.mul(
                    &NcPoly::monomial(lx[1].clone(), Scalar::one()),
                    &NcPoly::monomial(ly[1].clone(), Scalar::one()),
                );
                let inv = dp.phi_inverse_poly(&prod)?;
                let front = a.mul(&dp.phi(&lx[0]), &dp.phi(&ly[0]));
                acc.add_scaled(&a.mul(&front, &inv), &(cx * cy));
            }
        }
        acc.as_scalar().ok_or_else(|| DeformError::NonScalar {
            what: format!(
                "sigma({} ; {})",
                x.render(&dp.datum),
                y.render(&dp.datum)
            ),
            residue: acc.render(&dp.datum),
        })
    }
}

/// A 2-cocycle with memoized values and convolution inverse.
pub struct Cocycle<S> {
    source: S,
    values: RwLock<HashMap<(Monomial, Monomial), Scalar>>,
    inverses: RwLock<HashMap<(Monomial, Monomial), Scalar>>,
}

impl<S: CocycleSource> Cocycle<S> {
    pub fn new(source: S) -> Self {
        Cocycle {
            source,
            values: RwLock::new(HashMap::new()),
            inverses: RwLock::new(HashMap::new()),
        }
    }

    pub fn source(&self) -> &S {
        &self.source
    }

    pub fn hopf(&self) -> &HopfPresentation {
        self.source.hopf()
    }

    pub fn value(&self, x: &Monomial, y: &Monomial) -> Result<Scalar, DeformError> {
        let key = (x.clone(), y.clone());
        if let Some(v) = self.values.read().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = self.source.raw_value(x, y)?;
        self.values.write().unwrap().insert(key, v.clone());
        Ok(v)
    }

    /// Bilinear extension to polynomials given in normal form.
    pub fn value_poly(&self, p: &NcPoly, r: &NcPoly) -> Result<Scalar, DeformError> {
        let mut acc = Scalar::zero();
        for (x, cx) in p.iter() {
            for (y, cy) in r.iter() {
                let v = self.value(x, y)?;
                if !v.is_zero() {
                    acc += &(&(cx * cy) * &v);
                }
            }
        }
        Ok(acc)
    }

    /// Convolution inverse: `sum sigma(x1, y1) sigma^-1(x2, y2) = eps(x) eps(y)`,
    /// solved by recursion on the total degree of the second legs.
    pub fn inverse(&self, x: &Monomial, y: &Monomial) -> Result<Scalar, DeformError> {
        let key = (x.clone(), y.clone());
        if let Some(v) = self.inverses.read().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let hp = self.hopf();
        let dx = hp.coproduct_monomial(x);
        let dy = hp.coproduct_monomial(y);
        let eps = |m: &Monomial| {
            if m.word.is_empty() {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        };
        let mut acc = &eps(x) * &eps(y);
        let mut pivot = None;
        for (lx, cx) in dx.terms() {
            for (ly, cy) in dy.terms() {
                if lx[0].word.is_empty() && ly[0].word.is_empty() {
                    debug_assert!(lx[1] == *x && ly[1] == *y);
                    pivot = Some((&(cx * cy)) * &self.value(&lx[0], &ly[0])?);
                    continue;
                }
                let s = self.value(&lx[0], &ly[0])?;
                if s.is_zero() {
                    continue;
                }
                let t = self.inverse(&lx[1], &ly[1])?;
                acc -= &(&(cx * cy) * &(&s * &t));
            }
        }
        let pivot = pivot.expect("coproduct has a group-like first leg");
        let v = acc.checked_div(&pivot)?;
        self.inverses.write().unwrap().insert(key, v.clone());
        Ok(v)
    }

    /// `x . y = sigma(x1, y1) x2 y2 sigma^-1(x3, y3)`.
    pub fn deformed_product(&self, x: &Monomial, y: &Monomial) -> Result<NcPoly, DeformError> {
        let hp = self.hopf();
        let pres = hp.presentation();
        let d2 = |m: &Monomial| {
            hp.coproduct_monomial(m)
                .expand_leg(0, |a| hp.coproduct_monomial(a))
        };
        let tx = d2(x);
        let ty = d2(y);
        let mut out = NcPoly::zero();
        for (lx, cx) in tx.terms() {
            for (ly, cy) in ty.terms() {
                let s = self.value(&lx[0], &ly[0])?;
                if s.is_zero() {
                    continue;
                }
                let t = self.inverse(&lx[2], &ly[2])?;
                if t.is_zero() {
                    continue;
                }
                let prod = pres.mul(
                    &NcPoly::monomial(lx[1].clone(), Scalar::one()),
                    &NcPoly::monomial(ly[1].clone(), Scalar::one()),
                );
                out.add_scaled(&prod, &(&(cx * cy) * &(&s * &t)));
            }
        }
        Ok(out)
    }

    /// Values on all pairs from `basis` with total degree at most `d`.
    pub fn table(&self, basis: &[Monomial], d: usize) -> Result<CocycleTable, DeformError> {
        let mut entries = Vec::new();
        for x in basis {
            for y in basis {
                if x.degree() + y.degree() <= d {
                    entries.push((x.clone(), y.clone(), self.value(x, y)?));
                }
            }
        }
        Ok(CocycleTable {
            kind: self.source.kind(),
            max_degree: d,
            entries,
        })
    }

    /// Normalization and the 2-cocycle identity
    /// `sigma(x1, y1) sigma(x2 y2, z) = sigma(y1, z1) sigma(x, y2 z2)` on
    /// triples of total degree at most `d`.
    pub fn cocycle_identities(&self, basis: &[Monomial], d: usize) -> Result<Report, DeformError> {
        let hp = self.hopf();
        let pres = hp.presentation();
        let datum = pres.datum();
        let one_m = Monomial::one(datum);
        let mono = |m: &Monomial| NcPoly::monomial(m.clone(), Scalar::one());
        let mut report = Report::new();
        for x in basis.iter().filter(|m| m.degree() <= d) {
            let eps = counit(&mono(x));
            let a = self.value(x, &one_m)?;
            let b = self.value(&one_m, x)?;
            let bad = (a != eps || b != eps).then(|| format!("sigma(x,1) = {a}, sigma(1,x) = {b}"));
            report.record("COCYCLE_UNIT", x.render(datum), bad);
        }
        for x in basis {
            for y in basis {
                for z in basis {
                    if x.degree() + y.degree() + z.degree() > d {
                        continue;
                    }
                    let dx = hp.coproduct_monomial(x);
                    let dy = hp.coproduct_monomial(y);
                    let dz = hp.coproduct_monomial(z);
                    let mut left = Scalar::zero();
                    for (lx, cx) in dx.terms() {
                        for (ly, cy) in dy.terms() {
                            let s = self.value(&lx[0], &ly[0])?;
                            if s.is_zero() {
                                continue;
                            }
                            let prod = pres.mul(&mono(&lx[1]), &mono(&ly[1]));
                            let t = self.value_poly(&prod, &mono(z))?;
                            left += &(&(cx * cy) * &(&s * &t));
                        }
                    }
                    let mut right = Scalar::zero();
                    for (ly, cy) in dy.terms() {
                        for (lz, cz) in dz.terms() {
                            let s = self.value(&ly[0], &lz[0])?;
                            if s.is_zero() {
                                continue;
                            }
                            let prod = pres.mul(&mono(&ly[1]), &mono(&lz[1]));
                            let t = self.value_poly(&mono(x), &prod)?;
                            right += &(&(cy * cz) * &(&s * &t));
                        }
                    }
                    let residue = &left - &right;
                    report.record(
                        "COCYCLE",
                        format!(
                            "({} ; {} ; {})",
                            x.render(datum),
                            y.render(datum),
                            z.render(datum)
                        ),
                        (!residue.is_zero()).then(|| residue.to_string()),
                    );
                }
            }
        }
        Ok(report)
    }

    /// `sum sigma(x1, y1) sigma^-1(x2, y2) = eps(x) eps(y)` on pairs of total
    /// degree at most `d`, recomputed independently of the recursion order.
    pub fn convolution_check(&self, basis: &[Monomial], d: usize) -> Result<Report, DeformError> {
        let hp = self.hopf();
        let datum = hp.datum();
        let mut report = Report::new();
        for x in basis {
            for y in basis {
                if x.degree() + y.degree() > d {
                    continue;
                }
                let mut acc = Scalar::zero();
                for (lx, cx) in hp.coproduct_monomial(x).terms() {
                    for (ly, cy) in hp.coproduct_monomial(y).terms() {
                        let s = self.value(&lx[0], &ly[0])?;
                        if s.is_zero() {
                            continue;
                        }
                        let t = self.inverse(&lx[1], &ly[1])?;
                        acc += &(&(cx * cy) * &(&s * &t));
                    }
                }
                let expected = if x.word.is_empty() && y.word.is_empty() {
                    Scalar::one()
                } else {
                    Scalar::zero()
                };
                let residue = &acc - &expected;
                report.record(
                    "CONVOLUTION",
                    format!("({} ; {})", x.render(datum), y.render(datum)),
                    (!residue.is_zero()).then(|| residue.to_string()),
                );
            }
        }
        Ok(report)
    }
}

/// A cocycle restricted to basis pairs, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleTable {
    pub kind: CocycleKind,
    pub max_degree: usize,
    pub entries: Vec<(Monomial, Monomial, Scalar)>,
}

impl CocycleTable {
    pub fn get(&self, x: &Monomial, y: &Monomial) -> Option<&Scalar> {
        self.entries
            .iter()
            .find(|(a, b, _)| a == x && b == y)
            .map(|(_, _, v)| v)
    }

    pub fn render(&self, datum: &YdDatum) -> String {
        let mut out = String::new();
        for (x, y, v) in &self.entries {
            out.push_str(&format!(
                "sigma({} ; {}) = {}\n",
                x.render(datum),
                y.render(datum),
                v
            ));
        }
        out
    }
}

/// A group element as a monomial.
pub fn group_monomial(g: GroupElement) -> Monomial {
    Monomial::from_group(g)
}
