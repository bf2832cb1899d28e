//! Skew pairings between the two halves of a two-component datum, the
//! 2-cocycle they induce, the generalized quantum double and its quotient by
//! the central group-likes.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use thiserror::Error;

use crate::abgroup::{Character, GroupElement, GroupError, GroupSpec};
use crate::bosonize::{
    counit, group_sample, normal_monomials, HopfError, HopfPresentation,
};
use crate::deform::{
    cross_relations, Cocycle, CocycleKind, CocycleSource, DeformError, DeformedPresentation,
    Variant,
};
use crate::freealg::{mul_monomials, transport_poly, Monomial, NcPoly, Word};
use crate::groebner::{Presentation, RewriteError};
use crate::report::Report;
use crate::scalar::{Scalar, ScalarError};
use crate::yd::{LetterSpec, LinkingParameters, YdDatum, YdError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DoubleError {
    #[error("a double needs exactly two components, found {0}")]
    ComponentCount(usize),
    #[error("relation `{0}` mixes letters of both components")]
    MixedRelation(String),
    #[error("same-group doubles need every lower-component letter to sit on a group generator: {0}")]
    SameGroupUnsupported(String),
    #[error("pairing on `{generator}` is not compatible with its order {order}")]
    TorsionPairing { generator: String, order: u32 },
    #[error("`{element}` does not commute with `{generator}`: {residue}")]
    NotCentral {
        element: String,
        generator: String,
        residue: String,
    },
    #[error("invalid datum:\n{0}")]
    Validation(String),
    #[error(transparent)]
    Yd(#[from] YdError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Deform(#[from] DeformError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Direct product of two groups; free generators of both come first.
#[derive(Debug, Clone)]
struct ProductGroup {
    spec: GroupSpec,
    left: Vec<usize>,
    right: Vec<usize>,
}

impl ProductGroup {
    fn new(a: &GroupSpec, b: &GroupSpec) -> Result<Self, GroupError> {
        let mut free = Vec::new();
        let mut torsion = Vec::new();
        for (side, g) in [a, b].into_iter().enumerate() {
            for k in 0..g.rank() {
                let name = g.names()[k].clone();
                match g.order_of(k) {
                    None => free.push((side, k, name)),
                    Some(o) => torsion.push((side, k, name, o)),
                }
            }
        }
        let mut left = vec![0; a.rank()];
        let mut right = vec![0; b.rank()];
        let slots = free
            .iter()
            .map(|(s, k, _)| (*s, *k))
            .chain(torsion.iter().map(|(s, k, _, _)| (*s, *k)));
        for (pos, (side, k)) in slots.enumerate() {
            if side == 0 {
                left[k] = pos;
            } else {
                right[k] = pos;
            }
        }
        let free_names: Vec<&str> = free.iter().map(|(_, _, n)| n.as_str()).collect();
        let tors: Vec<(&str, u32)> = torsion.iter().map(|(_, _, n, o)| (n.as_str(), *o)).collect();
        Ok(ProductGroup {
            spec: GroupSpec::new(&free_names, &tors)?,
            left,
            right,
        })
    }

    fn embed(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let mut exps = vec![0; self.spec.rank()];
        for (k, &e) in a.exponents().iter().enumerate() {
            exps[self.left[k]] = e;
        }
        for (k, &e) in b.exponents().iter().enumerate() {
            exps[self.right[k]] = e;
        }
        self.spec.element(exps).expect("arity matches")
    }

    fn split(&self, g: &GroupElement) -> (Vec<i64>, Vec<i64>) {
        let e = g.exponents();
        (
            self.left.iter().map(|&p| e[p]).collect(),
            self.right.iter().map(|&p| e[p]).collect(),
        )
    }

    /// Character on the product from characters on the factors.
    fn character(
        &self,
        a: &[Scalar],
        b: &[Scalar],
    ) -> Result<Character, GroupError> {
        let mut values = vec![Scalar::one(); self.spec.rank()];
        for (k, v) in a.iter().enumerate() {
            values[self.left[k]] = v.clone();
        }
        for (k, v) in b.iter().enumerate() {
            values[self.right[k]] = v.clone();
        }
        self.spec.character(values)
    }
}

fn side_datum(
    group: GroupSpec,
    component: &str,
    letters: Vec<LetterSpec>,
) -> Result<Arc<YdDatum>, YdError> {
    Ok(Arc::new(YdDatum::new(group, vec![component.to_string()], letters)?))
}

/// The skew pairing between the lower half `H- = R- # kG'` and the upper
/// half `H+ = R+ # kG` of a two-component datum.
#[derive(Debug)]
pub struct SkewPairing {
    source: Arc<YdDatum>,
    lambda: LinkingParameters,
    extras: Vec<NcPoly>,
    same_group: bool,
    gamma_prime: GroupSpec,
    /// Image in `G` of each generator of `G'`.
    projection: Vec<GroupElement>,
    /// `tau(k', -)` on `G` for each generator `k'` of `G'`.
    prime_chars: Vec<Character>,
    minus: HopfPresentation,
    plus: HopfPresentation,
    max_degree: usize,
    memo: RwLock<HashMap<(Monomial, Monomial), Scalar>>,
    inverse_memo: RwLock<HashMap<(Monomial, Monomial), Scalar>>,
}

impl SkewPairing {
    /// With `same_group` the lower half uses a copy of `G` instead of the
    /// free group on one generator per lower letter.
    pub fn new(
        source: Arc<YdDatum>,
        lambda: LinkingParameters,
        extras: Vec<NcPoly>,
        same_group: bool,
        max_degree: usize,
    ) -> Result<Self, DoubleError> {
        let report = source.validate(&lambda);
        if !report.passed() {
            return Err(DoubleError::Validation(report.to_string()));
        }
        let comps = source.components();
        if comps.len() != 2 {
            return Err(DoubleError::ComponentCount(comps.len()));
        }
        let group = source.group();
        let lower = source.component_letters(0);
        let upper = source.component_letters(1);

        let (gamma_prime, projection, prime_chars, letter_g) = if same_group {
            let free: Vec<String> = (0..group.rank())
                .filter(|&k| group.order_of(k).is_none())
                .map(|k| format!("{}'", group.names()[k]))
                .collect();
            let tors: Vec<(String, u32)> = (0..group.rank())
                .filter_map(|k| group.order_of(k).map(|o| (format!("{}'", group.names()[k]), o)))
                .collect();
            let gp = GroupSpec::new(&free, &tors)?;
            let projection: Vec<GroupElement> = gp
                .names()
                .iter()
                .map(|n| Ok(group.generator(group.index_of(n.trim_end_matches('\''))?)))
                .collect::<Result<_, GroupError>>()?;
            let mut chars = vec![group.trivial_character(); gp.rank()];
            let mut letter_g = Vec::new();
            for &j in &lower {
                let l = source.letter(j);
                let k = projection.iter().position(|p| *p == l.g).ok_or_else(|| {
                    DoubleError::SameGroupUnsupported(l.name.clone())
                })?;
                if !chars[k].is_trivial() && chars[k] != l.chi {
                    return Err(DoubleError::SameGroupUnsupported(l.name.clone()));
                }
                chars[k] = l.chi.clone();
                letter_g.push(gp.generator(k));
            }
            (gp, projection, chars, letter_g)
        } else {
            let names: Vec<String> = lower
                .iter()
                .map(|&j| format!("g_{}'", source.letter(j).name))
                .collect();
            let gp = GroupSpec::free(&names)?;
            let projection = lower.iter().map(|&j| source.letter(j).g.clone()).collect();
            let chars = lower.iter().map(|&j| source.letter(j).chi.clone()).collect();
            let letter_g = (0..lower.len()).map(|k| gp.generator(k)).collect();
            (gp, projection, chars, letter_g)
        };
        for k in 0..gamma_prime.rank() {
            if let Some(o) = gamma_prime.order_of(k) {
                for g in group.generators() {
                    if !prime_chars[k].eval(&group.pow(&g, o as i64)).is_one()
                        || !prime_chars[k].eval(&g).pow(o as i64)?.is_one()
                    {
                        return Err(DoubleError::TorsionPairing {
                            generator: gamma_prime.names()[k].clone(),
                            order: o,
                        });
                    }
                }
            }
        }

        let project = |h: &GroupElement| -> GroupElement {
            h.exponents()
                .iter()
                .zip(&projection)
                .fold(group.identity(), |acc, (&e, p)| group.mul(&acc, &group.pow(p, e)))
        };
        let minus_letters = lower
            .iter()
            .zip(&letter_g)
            .map(|(&j, g)| {
                let chi = source.letter(j).chi.clone();
                let values = gamma_prime
                    .generators()
                    .iter()
                    .map(|k| chi.eval(&project(k)))
                    .collect();
                Ok(LetterSpec {
                    name: source.letter(j).name.clone(),
                    component: comps[0].clone(),
                    g: g.clone(),
                    chi: gamma_prime.character(values)?,
                })
            })
            .collect::<Result<Vec<_>, GroupError>>()?;
        let plus_letters = upper
            .iter()
            .map(|&i| {
                let l = source.letter(i);
                LetterSpec {
                    name: l.name.clone(),
                    component: comps[1].clone(),
                    g: l.g.clone(),
                    chi: l.chi.clone(),
                }
            })
            .collect();
        let minus_datum = side_datum(gamma_prime.clone(), &comps[0], minus_letters)?;
        let plus_datum = side_datum(group.clone(), &comps[1], plus_letters)?;

        let (mut minus_rels, mut plus_rels) = (Vec::new(), Vec::new());
        for rel in &extras {
            let comps_used: Vec<usize> = rel
                .iter()
                .flat_map(|(m, _)| m.word.letters().iter().map(|&l| source.component_of(l as usize)))
                .collect();
            if comps_used.iter().all(|&c| c == 0) {
                minus_rels.push(transport_poly(rel, &source, &minus_datum, |_| {
                    gamma_prime.identity()
                })?);
            } else if comps_used.iter().all(|&c| c == 1) {
                plus_rels.push(transport_poly(rel, &source, &plus_datum, |g| g.clone())?);
            } else {
                return Err(DoubleError::MixedRelation(rel.render(&source)));
            }
        }
        let minus = HopfPresentation::new(
            Presentation::from_relations(minus_datum, &minus_rels)?.complete(max_degree)?,
        )?;
        let plus = HopfPresentation::new(
            Presentation::from_relations(plus_datum, &plus_rels)?.complete(max_degree)?,
        )?;
        Ok(SkewPairing {
            source,
            lambda,
            extras,
            same_group,
            gamma_prime,
            projection,
            prime_chars,
            minus,
            plus,
            max_degree,
            memo: RwLock::new(HashMap::new()),
            inverse_memo: RwLock::new(HashMap::new()),
        })
    }

    pub fn source(&self) -> &Arc<YdDatum> {
        &self.source
    }

    pub fn lambda(&self) -> &LinkingParameters {
        &self.lambda
    }

    pub fn extra_relations(&self) -> &[NcPoly] {
        &self.extras
    }

    pub fn same_group(&self) -> bool {
        self.same_group
    }

    pub fn gamma_prime(&self) -> &GroupSpec {
        &self.gamma_prime
    }

    /// The lower half `H-`.
    pub fn minus(&self) -> &HopfPresentation {
        &self.minus
    }

    /// The upper half `H+`.
    pub fn plus(&self) -> &HopfPresentation {
        &self.plus
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Image of an element of `G'` in `G`.
    pub fn project(&self, h: &GroupElement) -> GroupElement {
        let group = self.source.group();
        h.exponents()
            .iter()
            .zip(&self.projection)
            .fold(group.identity(), |acc, (&e, p)| group.mul(&acc, &group.pow(p, e)))
    }

    fn tau_group(&self, h: &GroupElement, g: &GroupElement) -> Scalar {
        let mut acc = Scalar::one();
        for (&e, chi) in h.exponents().iter().zip(&self.prime_chars) {
            if e != 0 {
                acc *= &chi.eval(g).pow(e).expect("character values are nonzero");
            }
        }
        acc
    }

    /// `tau(x_j, (v, g))`, nonzero only when `v` is a single letter.
    fn tau_letter(&self, j: usize, x: &Monomial) -> Scalar {
        if x.word.len() != 1 {
            return Scalar::zero();
        }
        let md = self.minus.datum();
        let pd = self.plus.datum();
        let sj = self.source.letter_index(&md.letter(j).name).expect("same letters");
        let si = self
            .source
            .letter_index(&pd.letter(x.word.letters()[0] as usize).name)
            .expect("same letters");
        let lam = self.lambda.get(&self.source, si, sj);
        if lam.is_zero() {
            return lam;
        }
        -(&self.source.letter(sj).chi.eval(&x.group) * &lam)
    }

    /// `tau(a, x)` for normal monomials `a` of `H-` and `x` of `H+`.
    pub fn eval(&self, a: &Monomial, x: &Monomial) -> Result<Scalar, DoubleError> {
        let total = a.degree() + x.degree();
        if total > self.max_degree {
            return Err(DeformError::DegreeExceedsBound {
                requested: total,
                bound: self.max_degree,
            }
            .into());
        }
        let key = (a.clone(), x.clone());
        if let Some(v) = self.memo.read().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let value = if a.word.is_empty() {
            if x.word.is_empty() {
                self.tau_group(&a.group, &x.group)
            } else {
                Scalar::zero()
            }
        } else {
            // tau(l b, x) = tau(l, x1) tau(b, x2)
            let first = a.word.letters()[0] as usize;
            let rest = Monomial::new(a.word.slice(1, a.word.len()), a.group.clone());
            let mut acc = Scalar::zero();
            for (legs, c) in self.plus.coproduct_monomial(x).terms() {
                let s = self.tau_letter(first, &legs[0]);
                if s.is_zero() {
                    continue;
                }
                acc += &(c * &(&s * &self.eval(&rest, &legs[1])?));
            }
            acc
        };
        self.memo.write().unwrap().insert(key, value.clone());
        Ok(value)
    }

    /// Bilinear extension of [`SkewPairing::eval`].
    pub fn eval_poly(&self, a: &NcPoly, x: &NcPoly) -> Result<Scalar, DoubleError> {
        let mut acc = Scalar::zero();
        for (m, c) in a.iter() {
            for (n, d) in x.iter() {
                let v = self.eval(m, n)?;
                if !v.is_zero() {
                    acc += &(&(c * d) * &v);
                }
            }
        }
        Ok(acc)
    }

    /// Convolution inverse of `tau` by recursion on the second legs.
    pub fn inverse(&self, a: &Monomial, x: &Monomial) -> Result<Scalar, DoubleError> {
        let key = (a.clone(), x.clone());
        if let Some(v) = self.inverse_memo.read().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let eps = |m: &Monomial| counit(&NcPoly::monomial(m.clone(), Scalar::one()));
        let mut acc = &eps(a) * &eps(x);
        let mut pivot = None;
        for (la, ca) in self.minus.coproduct_monomial(a).terms() {
            for (lx, cx) in self.plus.coproduct_monomial(x).terms() {
                let s = self.eval(&la[0], &lx[0])?;
                if la[0].word.is_empty() && lx[0].word.is_empty() {
                    pivot = Some(&(ca * cx) * &s);
                    continue;
                }
                if s.is_zero() {
                    continue;
                }
                acc -= &(&(ca * cx) * &(&s * &self.inverse(&la[1], &lx[1])?));
            }
        }
        let v = acc.checked_div(&pivot.expect("group-like first legs exist"))?;
        self.inverse_memo.write().unwrap().insert(key, v.clone());
        Ok(v)
    }

    /// Normal monomials of `H-` and `H+` up to degree `d`.
    pub fn bases(&self, d: usize) -> Result<(Vec<Monomial>, Vec<Monomial>), DoubleError> {
        let m = normal_monomials(
            self.minus.presentation(),
            d,
            &group_sample(self.minus.datum(), false),
        )?;
        let p = normal_monomials(
            self.plus.presentation(),
            d,
            &group_sample(self.plus.datum(), false),
        )?;
        Ok((m, p))
    }

    /// Unit, multiplicativity in both slots and the inverse law on basis
    /// pairs and triples of total degree at most `d`.
    pub fn check_laws(&self, d: usize) -> Result<Report, DoubleError> {
        let (bm, bp) = self.bases(d)?;
        let md = self.minus.datum();
        let pd = self.plus.datum();
        let one_m = Monomial::one(md);
        let one_p = Monomial::one(pd);
        let mono = |m: &Monomial| NcPoly::monomial(m.clone(), Scalar::one());
        let eps = |m: &Monomial| counit(&mono(m));
        let mut report = Report::new();
        for x in &bp {
            let v = self.eval(&one_m, x)?;
            let bad = (v != eps(x)).then(|| format!("tau(1, x) = {v}"));
            report.record("SKEW_UNIT", format!("(1 ; {})", x.render(pd)), bad);
        }
        for a in &bm {
            let v = self.eval(a, &one_p)?;
            let bad = (v != eps(a)).then(|| format!("tau(a, 1) = {v}"));
            report.record("SKEW_UNIT", format!("({} ; 1)", a.render(md)), bad);
        }
        for a in &bm {
            for b in &bm {
                for x in &bp {
                    if a.degree() + b.degree() + x.degree() > d {
                        continue;
                    }
                    let ab = self.minus.presentation().mul(&mono(a), &mono(b));
                    let left = self.eval_poly(&ab, &mono(x))?;
                    let mut right = Scalar::zero();
                    for (lx, c) in self.plus.coproduct_monomial(x).terms() {
                        let s = self.eval(a, &lx[0])?;
                        if !s.is_zero() {
                            right += &(c * &(&s * &self.eval(b, &lx[1])?));
                        }
                    }
                    let residue = &left - &right;
                    report.record(
                        "SKEW_LEFT",
                        format!("({} ; {} ; {})", a.render(md), b.render(md), x.render(pd)),
                        (!residue.is_zero()).then(|| residue.to_string()),
                    );
                }
            }
        }
        for a in &bm {
            for x in &bp {
                for y in &bp {
                    if a.degree() + x.degree() + y.degree() > d {
                        continue;
                    }
                    let xy = self.plus.presentation().mul(&mono(x), &mono(y));
                    let left = self.eval_poly(&mono(a), &xy)?;
                    let mut right = Scalar::zero();
                    for (la, c) in self.minus.coproduct_monomial(a).terms() {
                        let s = self.eval(&la[0], y)?;
                        if !s.is_zero() {
                            right += &(c * &(&s * &self.eval(&la[1], x)?));
                        }
                    }
                    let residue = &left - &right;
                    report.record(
                        "SKEW_RIGHT",
                        format!("({} ; {} ; {})", a.render(md), x.render(pd), y.render(pd)),
                        (!residue.is_zero()).then(|| residue.to_string()),
                    );
                }
            }
        }
        for a in &bm {
            for x in &bp {
                if a.degree() + x.degree() > d {
                    continue;
                }
                let inv = self.inverse(a, x)?;
                let via_antipode = self.eval_poly(&self.minus.antipode_monomial(a), &mono(x))?;
                let residue = &inv - &via_antipode;
                report.record(
                    "SKEW_INVERSE",
                    format!("({} ; {})", a.render(md), x.render(pd)),
                    (!residue.is_zero()).then(|| residue.to_string()),
                );
            }
        }
        Ok(report)
    }
}

/// The tensor product `H- (x) H+`, the double `(H- (x) H+)^sigma` and the
/// data relating them.
#[derive(Debug)]
pub struct DoublePresentation {
    pairing: SkewPairing,
    product: ProductGroup,
    tensor: HopfPresentation,
    double: HopfPresentation,
    max_degree: usize,
}

impl DoublePresentation {
    pub fn build(pairing: SkewPairing, max_degree: usize) -> Result<Self, DoubleError> {
        let source = pairing.source.clone();
        let md = pairing.minus.datum();
        let pd = pairing.plus.datum();
        let product = ProductGroup::new(md.group(), pd.group())?;
        let gp_gens = md.group().generators();
        let g_gens = pd.group().generators();
        let comps = source.components().to_vec();

        let mut tensor_letters = Vec::new();
        let mut double_letters = Vec::new();
        for i in 0..source.len() {
            let name = &source.letter(i).name;
            if source.component_of(i) == 0 {
                let l = md.letter(md.letter_index(name)?);
                let g = product.embed(&l.g, &pd.group().identity());
                let prime: Vec<Scalar> = l.chi.values().to_vec();
                let own: Vec<Scalar> = g_gens.iter().map(|g| source.letter(i).chi.eval(g)).collect();
                let trivial = vec![Scalar::one(); g_gens.len()];
                tensor_letters.push(LetterSpec {
                    name: name.clone(),
                    component: comps[0].clone(),
                    g: g.clone(),
                    chi: product.character(&prime, &trivial)?,
                });
                double_letters.push(LetterSpec {
                    name: name.clone(),
                    component: comps[0].clone(),
                    g,
                    chi: product.character(&prime, &own)?,
                });
            } else {
                let l = pd.letter(pd.letter_index(name)?);
                let g = product.embed(&md.group().identity(), &l.g);
                let own: Vec<Scalar> = l.chi.values().to_vec();
                let trivial = vec![Scalar::one(); gp_gens.len()];
                let prime = gp_gens
                    .iter()
                    .map(|k| pairing.tau_group(k, &l.g).inv())
                    .collect::<Result<Vec<_>, _>>()?;
                tensor_letters.push(LetterSpec {
                    name: name.clone(),
                    component: comps[1].clone(),
                    g: g.clone(),
                    chi: product.character(&trivial, &own)?,
                });
                double_letters.push(LetterSpec {
                    name: name.clone(),
                    component: comps[1].clone(),
                    g,
                    chi: product.character(&prime, &own)?,
                });
            }
        }
        let tensor_datum = Arc::new(YdDatum::new(product.spec.clone(), comps.clone(), tensor_letters)?);
        let double_datum = Arc::new(YdDatum::new(product.spec.clone(), comps, double_letters)?);

        let mut internal = Vec::new();
        for rule in pairing.minus.presentation().rules() {
            let rel = rule.relation(md);
            internal.push((rel, 0usize));
        }
        for rule in pairing.plus.presentation().rules() {
            internal.push((rule.relation(pd), 1usize));
        }
        let lift = |target: &YdDatum| -> Result<Vec<NcPoly>, DoubleError> {
            internal
                .iter()
                .map(|(rel, side)| {
                    let from = if *side == 0 { md } else { pd };
                    Ok(transport_poly(rel, from, target, |g| {
                        if *side == 0 {
                            product.embed(g, &pd.group().identity())
                        } else {
                            product.embed(&md.group().identity(), g)
                        }
                    })?)
                })
                .collect()
        };

        let mut tensor_rels = lift(&tensor_datum)?;
        tensor_rels.extend(cross_relations(
            &tensor_datum,
            &LinkingParameters::new(),
            Variant::Graded,
        ));
        let tensor = HopfPresentation::new(
            Presentation::from_relations(tensor_datum.clone(), &tensor_rels)?.complete(max_degree)?,
        )?;

        let lambda = pairing.lambda.transport(&source, &double_datum)?;
        let report = double_datum.validate(&lambda);
        if !report.passed() {
            return Err(DoubleError::Validation(report.to_string()));
        }
        let mut double_rels = lift(&double_datum)?;
        double_rels.extend(cross_relations(&double_datum, &lambda, Variant::Deformed));
        let double = HopfPresentation::new(
            Presentation::from_relations(double_datum, &double_rels)?.complete(max_degree)?,
        )?;
        Ok(DoublePresentation {
            pairing,
            product,
            tensor,
            double,
            max_degree,
        })
    }

    pub fn pairing(&self) -> &SkewPairing {
        &self.pairing
    }

    /// The tensor product Hopf algebra `H- (x) H+`.
    pub fn tensor(&self) -> &HopfPresentation {
        &self.tensor
    }

    /// The double, presented with lower letters before upper letters.
    pub fn double(&self) -> &HopfPresentation {
        &self.double
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// `sigma(a (x) x, b (x) y) = eps(a) tau(b, x) eps(y)` on the tensor product.
    pub fn cocycle(&self) -> Cocycle<PairingSource<'_>> {
        Cocycle::new(PairingSource { double: self })
    }

    /// Splits a normal monomial of the tensor product into its two factors.
    pub fn split(&self, m: &Monomial) -> (Monomial, Monomial) {
        let td = self.tensor.datum();
        let md = self.pairing.minus.datum();
        let pd = self.pairing.plus.datum();
        let (mut lo, mut hi) = (Vec::new(), Vec::new());
        for &l in m.word.letters() {
            let name = &td.letter(l as usize).name;
            match md.letter_index(name) {
                Ok(i) => lo.push(i as u16),
                Err(_) => hi.push(pd.letter_index(name).expect("letter of one side") as u16),
            }
        }
        let (a, b) = self.product.split(&m.group);
        (
            Monomial::new(Word::new(lo), md.group().element(a).expect("arity")),
            Monomial::new(Word::new(hi), pd.group().element(b).expect("arity")),
        )
    }

    /// Sends `a (x) x` to the product `a x` in the double.
    pub fn tensor_to_double(&self, m: &Monomial) -> NcPoly {
        let dd = self.double.datum();
        let (a, x) = self.split(m);
        let (lo, hi) = (
            Monomial::new(
                m.word.slice(0, a.word.len()),
                self.product.embed(&a.group, &self.pairing.plus.datum().group().identity()),
            ),
            Monomial::new(
                m.word.slice(a.word.len(), m.word.len()),
                self.product.embed(&self.pairing.minus.datum().group().identity(), &x.group),
            ),
        );
        let (prod, c) = mul_monomials(dd, &lo, &hi);
        NcPoly::monomial(prod, c)
    }

    pub fn tensor_to_double_poly(&self, p: &NcPoly) -> NcPoly {
        p.map_monomials(|m| self.tensor_to_double(m))
    }

    /// Checks the cross rules of the double on generators against their
    /// closed forms.
    pub fn generator_rules_check(&self) -> Report {
        let dd = self.double.datum();
        let pres = self.double.presentation();
        let src = &self.pairing.source;
        let md = self.pairing.minus.datum();
        let pd = self.pairing.plus.datum();
        let lambda = self.pairing.lambda.transport(src, dd).expect("same letters");
        let mut report = Report::new();
        let mut record = |subject: String, lhs: NcPoly, rhs: NcPoly| {
            let residue = pres.reduce(&lhs.sub(&rhs));
            report.record(
                "DOUBLE_RULE",
                subject,
                (!residue.is_zero()).then(|| residue.render(dd)),
            );
        };
        let lower: Vec<usize> = (0..dd.len()).filter(|&i| dd.component_of(i) == 0).collect();
        let upper: Vec<usize> = (0..dd.len()).filter(|&i| dd.component_of(i) == 1).collect();
        let lift_prime = |h: &GroupElement| {
            NcPoly::group_element(self.product.embed(h, &pd.group().identity()))
        };
        let lift_g = |g: &GroupElement| {
            NcPoly::group_element(self.product.embed(&md.group().identity(), g))
        };
        for &i in &upper {
            let xi = NcPoly::letter(dd, i);
            let gi = &pd.letter(pd.letter_index(&dd.letter(i).name).unwrap()).g;
            for &j in &lower {
                let xj = NcPoly::letter(dd, j);
                let sj = src.letter_index(&dd.letter(j).name).unwrap();
                let gj_prime = &md.letter(md.letter_index(&dd.letter(j).name).unwrap()).g;
                let chi_j_gi = src.letter(sj).chi.eval(gi);
                // x_i x_j = chi_j(g_i) x_j x_i + lambda_ij (g_j' g_i - 1)
                let mut rhs = pres.mul(&xj, &xi).scale(&chi_j_gi);
                let l = lambda.get(dd, i, j);
                let gg = pres.mul(&lift_prime(gj_prime), &lift_g(gi));
                rhs.add_scaled(&gg, &l);
                rhs.add_scaled(&NcPoly::one(dd), &-&l);
                record(
                    format!("{} * {}", dd.letter(i).name, dd.letter(j).name),
                    pres.mul(&xi, &xj),
                    rhs,
                );
                // x_i g_j' = chi_j(g_i) g_j' x_i
                let gp = lift_prime(gj_prime);
                record(
                    format!("{} * {}", dd.letter(i).name, md.group().render(gj_prime)),
                    pres.mul(&xi, &gp),
                    pres.mul(&gp, &xi).scale(&chi_j_gi),
                );
            }
        }
        for &j in &lower {
            let xj = NcPoly::letter(dd, j);
            let sj = src.letter_index(&dd.letter(j).name).unwrap();
            for g in pd.group().generators() {
                // g x_j = chi_j(g) x_j g
                let gl = lift_g(&g);
                record(
                    format!("{} * {}", pd.group().render(&g), dd.letter(j).name),
                    pres.mul(&gl, &xj),
                    pres.mul(&xj, &gl).scale(&src.letter(sj).chi.eval(&g)),
                );
            }
        }
        for h in md.group().generators() {
            for g in pd.group().generators() {
                let (a, b) = (lift_g(&g), lift_prime(&h));
                record(
                    format!("{} * {}", pd.group().render(&g), md.group().render(&h)),
                    pres.mul(&a, &b),
                    pres.mul(&b, &a),
                );
            }
        }
        report
    }

    /// The cocycle-deformed product of the tensor product agrees with the
    /// product of the double on basis pairs of total degree at most `d`.
    pub fn pairing_product_check(&self, d: usize) -> Result<Report, DoubleError> {
        let sigma = self.cocycle();
        let td = self.tensor.datum();
        let pres = self.double.presentation();
        let basis = normal_monomials(self.tensor.presentation(), d, &group_sample(td, false))?;
        let mut report = Report::new();
        for x in &basis {
            for y in &basis {
                if x.degree() + y.degree() > d {
                    continue;
                }
                let lhs = self.tensor_to_double_poly(&sigma.deformed_product(x, y)?);
                let rhs = pres.mul(&self.tensor_to_double(x), &self.tensor_to_double(y));
                let residue = lhs.sub(&rhs);
                report.record(
                    "PAIRING_PRODUCT",
                    format!("{} * {}", x.render(td), y.render(td)),
                    (!residue.is_zero()).then(|| residue.render(self.double.datum())),
                );
            }
        }
        Ok(report)
    }

    /// Image of a group element of the double under `g_j' -> g_j`.
    pub fn collapse_group(&self, g: &GroupElement) -> GroupElement {
        let (a, b) = self.product.split(g);
        let group = self.pairing.source.group();
        let md = self.pairing.minus.datum();
        let a = md.group().element(a).expect("arity");
        let b = group.element(b).expect("arity");
        group.mul(&self.pairing.project(&a), &b)
    }

    /// Image of a polynomial of the double in the source datum.
    pub fn collapse(&self, p: &NcPoly) -> NcPoly {
        transport_poly(p, self.double.datum(), &self.pairing.source, |g| {
            self.collapse_group(g)
        })
        .expect("same letters")
    }

    /// Quotient by the ideal generated by `g' g^-1 - 1` for each generator
    /// `g'` of `G'`, after checking that these elements are central.
    pub fn quotient_central(&self) -> Result<HopfPresentation, DoubleError> {
        let dd = self.double.datum();
        let pres = self.double.presentation();
        let md = self.pairing.minus.datum();
        for (k, h) in md.group().generators().iter().enumerate() {
            let g = self.pairing.projection[k].clone();
            let z = NcPoly::group_element(
                self.product.embed(h, &self.pairing.source.group().inverse(&g)),
            );
            for i in 0..dd.len() {
                let x = NcPoly::letter(dd, i);
                let residue = pres.mul(&z, &x).sub(&pres.mul(&x, &z));
                if !residue.is_zero() {
                    return Err(DoubleError::NotCentral {
                        element: z.render(dd),
                        generator: dd.letter(i).name.clone(),
                        residue: residue.render(dd),
                    });
                }
            }
        }
        let source = self.pairing.source.clone();
        let rels: Vec<NcPoly> = pres
            .rules()
            .iter()
            .map(|r| self.collapse(&r.relation(dd)))
            .filter(|r| !r.is_zero())
            .collect();
        let quotient = Presentation::from_relations(source, &rels)?.complete(self.max_degree)?;
        Ok(HopfPresentation::new(quotient)?)
    }
}

pub struct PairingSource<'a> {
    double: &'a DoublePresentation,
}

impl CocycleSource for PairingSource<'_> {
    fn hopf(&self) -> &HopfPresentation {
        &self.double.tensor
    }

    fn kind(&self) -> CocycleKind {
        CocycleKind::PairingInduced
    }

    fn raw_value(&self, x: &Monomial, y: &Monomial) -> Result<Scalar, DeformError> {
        let (a, xx) = self.double.split(x);
        let (b, yy) = self.double.split(y);
        if !a.word.is_empty() || !yy.word.is_empty() {
            return Ok(Scalar::zero());
        }
        self.double.pairing.eval(&b, &xx).map_err(|e| match e {
            DoubleError::Deform(d) => d,
            other => DeformError::NonScalar {
                what: "pairing".into(),
                residue: other.to_string(),
            },
        })
    }
}

/// Transports relations both ways between the quotient of the double and
/// the deformed algebra, and compares normal-word counts per degree.
pub fn verify_double_iso(
    quotient: &HopfPresentation,
    dp: &DeformedPresentation,
    d: usize,
) -> Result<Report, DoubleError> {
    let qd = quotient.datum();
    let hd = dp.datum();
    let hl = dp.deformed().presentation();
    let qp = quotient.presentation();
    let mut report = Report::new();
    if qd.group() != hd.group() {
        report.fail("ISO_GROUP", "group", "the two sides use different groups");
        return Ok(report);
    }
    for rule in hl.rules() {
        let rel = transport_poly(&rule.relation(hd), hd, qd, |g| g.clone())?;
        let residue = qp.reduce(&rel);
        report.record(
            "ISO_RELATION",
            format!("deformed rule {}", rule.lhs.render(hd)),
            (!residue.is_zero()).then(|| residue.render(qd)),
        );
    }
    for rule in qp.rules() {
        let rel = transport_poly(&rule.relation(qd), qd, hd, |g| g.clone())?;
        let residue = hl.reduce(&rel);
        report.record(
            "ISO_RELATION",
            format!("quotient rule {}", rule.lhs.render(qd)),
            (!residue.is_zero()).then(|| residue.render(hd)),
        );
    }
    for n in 0..=d {
        let a = qp.normal_words(n)?.len();
        let b = hl.normal_words(n)?.len();
        report.record(
            "ISO_COUNT",
            format!("degree {n} ({a})"),
            (a != b).then(|| format!("quotient {a} deformed {b}")),
        );
    }
    Ok(report)
}

/// The pairing-induced and the extracted cocycles give the same deformed
/// product on generator pairs, compared in the deformed algebra.
pub fn extraction_consistency(
    double: &DoublePresentation,
    dp: &DeformedPresentation,
) -> Result<Report, DoubleError> {
    let hd = dp.datum();
    let td = double.tensor.datum();
    let extracted = dp.extracted_cocycle();
    let pairing = double.cocycle();
    let hl = dp.deformed().presentation();
    let md = double.pairing.minus.datum();
    let mut gens: Vec<Monomial> = (0..hd.len())
        .map(|i| Monomial::from_word(hd, Word::letter(i)))
        .collect();
    gens.extend(hd.group().generators().into_iter().map(Monomial::from_group));
    let to_tensor = |m: &Monomial| -> Result<Monomial, DoubleError> {
        let letters = m
            .word
            .letters()
            .iter()
            .map(|&l| td.letter_index(&hd.letter(l as usize).name).map(|i| i as u16))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Monomial::new(
            Word::new(letters),
            double.product.embed(&md.group().identity(), &m.group),
        ))
    };
    let mut report = Report::new();
    for x in &gens {
        for y in &gens {
            let lhs = dp.eta_poly(&extracted.deformed_product(x, y)?);
            let lhs = hl.reduce(&lhs);
            let prod = pairing.deformed_product(&to_tensor(x)?, &to_tensor(y)?)?;
            let collapsed = double.collapse(&double.tensor_to_double_poly(&prod));
            let rhs = hl.reduce(&transport_poly(&collapsed, &double.pairing.source, hd, |g| {
                g.clone()
            })?);
            let residue = lhs.sub(&rhs);
            report.record(
                "EXTRACTION_CONSISTENCY",
                format!("{} * {}", x.render(hd), y.render(hd)),
                (!residue.is_zero()).then(|| residue.render(hd)),
            );
        }
    }
    Ok(report)
}
