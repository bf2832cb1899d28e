//! Degree-bounded noncommutative rewriting: orientation of relations, normal
//! forms, overlap resolution and completion.

use std::borrow::Borrow;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, RwLock};

use thiserror::Error;

use crate::abgroup::GroupElement;
use crate::freealg::{chi_word_at, transport_poly, Monomial, NcPoly, Word};
use crate::report::Report;
use crate::yd::{YdDatum, YdError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("cannot orient the zero relation")]
    ZeroRelation,
    #[error("leading monomial of `{relation}` has a nontrivial group part")]
    GroupLeading { relation: String },
    #[error("relation `{relation}` has a lower term on its own leading word")]
    LeadingWordRepeated { relation: String },
    #[error("degree {requested} exceeds the validated confluence bound {validated}")]
    DegreeExceedsBound { requested: usize, validated: usize },
    #[error("completion failed at overlap `{overlap}`: {source}")]
    Completion {
        overlap: String,
        #[source]
        source: Box<RewriteError>,
    },
    #[error("completion did not stabilize within {0} rounds")]
    NoFixpoint(usize),
}

impl Borrow<[u16]> for Word {
    fn borrow(&self) -> &[u16] {
        self.letters()
    }
}

/// `lhs -> rhs` with every monomial of `rhs` smaller than `lhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: NcPoly,
}

impl RewriteRule {
    /// The relation `lhs - rhs`.
    pub fn relation(&self, datum: &YdDatum) -> NcPoly {
        NcPoly::word(datum, self.lhs.clone()).sub(&self.rhs)
    }

    pub fn render(&self, datum: &YdDatum) -> String {
        format!("{} -> {}", self.lhs.render(datum), self.rhs.render(datum))
    }
}

/// Makes a rule from a relation by solving for its leading word.
pub fn orient(relation: &NcPoly, datum: &YdDatum) -> Result<RewriteRule, RewriteError> {
    let (lead, c) = relation.leading().ok_or(RewriteError::ZeroRelation)?;
    if !lead.group.is_identity() {
        return Err(RewriteError::GroupLeading {
            relation: relation.render(datum),
        });
    }
    let lhs = lead.word.clone();
    let inv = c.inv().expect("leading coefficient is nonzero");
    let mut rhs = NcPoly::zero();
    for (m, v) in relation.iter() {
        if m.word == lhs {
            if m.group.is_identity() {
                continue;
            }
            return Err(RewriteError::LeadingWordRepeated {
                relation: relation.render(datum),
            });
        }
        rhs.add_term(m.clone(), -(v * &inv));
    }
    Ok(RewriteRule { lhs, rhs })
}

/// Right multiplication by a group element, which never produces scalars.
pub fn right_mul_group(p: &NcPoly, g: &GroupElement, datum: &YdDatum) -> NcPoly {
    if g.is_identity() {
        return p.clone();
    }
    let mut out = NcPoly::zero();
    for (m, c) in p.iter() {
        out.add_term(
            Monomial::new(m.word.clone(), datum.group().mul(&m.group, g)),
            c.clone(),
        );
    }
    out
}

/// A rule set with a lookup index and a normal-form cache.
#[derive(Debug, Default)]
struct Rewriter {
    rules: Vec<RewriteRule>,
    index: HashMap<Word, usize>,
    lengths: Vec<usize>,
    cache: RwLock<HashMap<Word, NcPoly>>,
}

impl Rewriter {
    fn new(rules: Vec<RewriteRule>) -> Self {
        let mut index = HashMap::new();
        for (i, r) in rules.iter().enumerate() {
            index.entry(r.lhs.clone()).or_insert(i);
        }
        let mut lengths: Vec<usize> = rules.iter().map(|r| r.lhs.len()).collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths.dedup();
        Rewriter {
            rules,
            index,
            lengths,
            cache: RwLock::new(HashMap::new()),
        }
    }

    /// Leftmost occurrence of a rule lhs, preferring the longest lhs there.
    fn find_redex(&self, w: &[u16]) -> Option<(usize, usize)> {
        for i in 0..w.len() {
            for &l in &self.lengths {
                if i + l <= w.len() {
                    if let Some(&r) = self.index.get(&w[i..i + l]) {
                        return Some((i, r));
                    }
                }
            }
        }
        None
    }

    /// A redex ending exactly at the last letter, if any.
    fn suffix_redex(&self, w: &[u16]) -> bool {
        self.lengths
            .iter()
            .any(|&l| l <= w.len() && self.index.contains_key(&w[w.len() - l..]))
    }

    fn is_normal(&self, w: &Word) -> bool {
        self.find_redex(w.letters()).is_none()
    }

    fn normal_form_word(&self, datum: &YdDatum, w: &Word) -> NcPoly {
        if let Some(p) = self.cache.read().unwrap().get(w) {
            return p.clone();
        }
        let result = match self.find_redex(w.letters()) {
            None => NcPoly::word(datum, w.clone()),
            Some((i, r)) => {
                let rule = &self.rules[r];
                let u = w.slice(0, i);
                let v = w.slice(i + rule.lhs.len(), w.len());
                let mut out = NcPoly::zero();
                for (m, c) in rule.rhs.iter() {
                    let coeff = c * &chi_word_at(datum, &v, &m.group);
                    let inner = u.concat(&m.word).concat(&v);
                    let nf = self.normal_form_word(datum, &inner);
                    out.add_scaled(&right_mul_group(&nf, &m.group, datum), &coeff);
                }
                out
            }
        };
        self.cache
            .write()
            .unwrap()
            .insert(w.clone(), result.clone());
        result
    }

    fn reduce(&self, datum: &YdDatum, p: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (m, c) in p.iter() {
            let nf = self.normal_form_word(datum, &m.word);
            out.add_scaled(&right_mul_group(&nf, &m.group, datum), c);
        }
        out
    }
}

impl Clone for Rewriter {
    fn clone(&self) -> Self {
        Rewriter {
            rules: self.rules.clone(),
            index: self.index.clone(),
            lengths: self.lengths.clone(),
            cache: RwLock::new(self.cache.read().unwrap().clone()),
        }
    }
}

/// An ambiguity: a word reducible in two ways.
#[derive(Debug, Clone)]
pub struct Overlap {
    pub word: Word,
    pub rules: (usize, usize),
    pub first: NcPoly,
    pub second: NcPoly,
}

/// Outcome of a completion run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CompletionReport {
    pub rounds: usize,
    pub overlaps_checked: usize,
    pub rules_added: usize,
    pub rules_before: usize,
    pub rules_after: usize,
}

/// A quotient of the smash product of the tensor algebra with the group
/// algebra, given by word rewriting rules.
#[derive(Debug, Clone)]
pub struct Presentation {
    datum: Arc<YdDatum>,
    rw: Rewriter,
    confluence_checked_to: usize,
}

impl Presentation {
    /// The free smash product, trivially confluent in every degree.
    pub fn free(datum: Arc<YdDatum>) -> Self {
        Presentation {
            datum,
            rw: Rewriter::default(),
            confluence_checked_to: usize::MAX,
        }
    }

    /// Orients and interreduces the relations. Confluence is only recorded
    /// below the shortest left-hand side until [`Presentation::complete`] runs.
    pub fn from_relations(
        datum: Arc<YdDatum>,
        relations: &[NcPoly],
    ) -> Result<Self, RewriteError> {
        let mut rules = Vec::new();
        for r in relations {
            if r.is_zero() {
                continue;
            }
            rules.push(orient(r, &datum)?);
        }
        Presentation::from_rules(datum, rules)
    }

    pub fn from_rules(datum: Arc<YdDatum>, rules: Vec<RewriteRule>) -> Result<Self, RewriteError> {
        let rules = interreduce(&datum, rules)?;
        Ok(Presentation::assemble(datum, rules, None))
    }

    /// Uses the rules exactly as given, without interreduction.
    pub fn from_rules_unchecked(datum: Arc<YdDatum>, rules: Vec<RewriteRule>) -> Self {
        Presentation::assemble(datum, rules, None)
    }

    fn assemble(datum: Arc<YdDatum>, mut rules: Vec<RewriteRule>, checked: Option<usize>) -> Self {
        rules.sort_by(|a, b| a.lhs.cmp(&b.lhs));
        let checked = checked.unwrap_or_else(|| {
            rules
                .iter()
                .map(|r| r.lhs.len())
                .min()
                .map_or(usize::MAX, |l| l.saturating_sub(1))
        });
        Presentation {
            datum,
            rw: Rewriter::new(rules),
            confluence_checked_to: checked,
        }
    }

    pub fn datum(&self) -> &YdDatum {
        &self.datum
    }

    pub fn datum_arc(&self) -> &Arc<YdDatum> {
        &self.datum
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rw.rules
    }

    pub fn confluence_checked_to(&self) -> usize {
        self.confluence_checked_to
    }

    pub fn reduce(&self, p: &NcPoly) -> NcPoly {
        self.rw.reduce(&self.datum, p)
    }

    pub fn normal_form_word(&self, w: &Word) -> NcPoly {
        self.rw.normal_form_word(&self.datum, w)
    }

    /// Product followed by reduction.
    pub fn mul(&self, a: &NcPoly, b: &NcPoly) -> NcPoly {
        self.reduce(&a.mul(b, &self.datum))
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.rw.is_normal(w)
    }

    /// All words of length `n` avoiding every left-hand side, in deg-lex order.
    pub fn normal_words(&self, n: usize) -> Result<Vec<Word>, RewriteError> {
        if n > self.confluence_checked_to {
            return Err(RewriteError::DegreeExceedsBound {
                requested: n,
                validated: self.confluence_checked_to,
            });
        }
        Ok(self.normal_words_unchecked(n))
    }

    /// Like [`Presentation::normal_words`] but without the confluence guard.
    pub fn normal_words_unchecked(&self, n: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        self.dfs_words(n, &mut cur, &mut out);
        out
    }

    fn dfs_words(&self, n: usize, cur: &mut Vec<u16>, out: &mut Vec<Word>) {
        if cur.len() == n {
            out.push(Word::new(cur.clone()));
            return;
        }
        for l in 0..self.datum.len() as u16 {
            cur.push(l);
            if !self.rw.suffix_redex(cur) {
                self.dfs_words(n, cur, out);
            }
            cur.pop();
        }
    }

    /// Normal-word counts for degrees `0..=n`.
    pub fn normal_word_counts(&self, n: usize) -> Result<Vec<usize>, RewriteError> {
        (0..=n).map(|k| self.normal_words(k).map(|w| w.len())).collect()
    }

    /// Enumerates all overlap and inclusion ambiguities of length at most `d`,
    /// ordered by word length.
    pub fn overlaps(&self, d: usize) -> Vec<Overlap> {
        let datum = &*self.datum;
        let rules = &self.rw.rules;
        let mut out = Vec::new();
        for (i, r1) in rules.iter().enumerate() {
            for (j, r2) in rules.iter().enumerate() {
                let (l1, l2) = (r1.lhs.len(), r2.lhs.len());
                for k in 1..l1.min(l2) {
                    if l1 + l2 - k > d {
                        continue;
                    }
                    if r1.lhs.letters()[l1 - k..] != r2.lhs.letters()[..k] {
                        continue;
                    }
                    let a = r1.lhs.slice(0, l1 - k);
                    let c = r2.lhs.slice(k, l2);
                    let word = r1.lhs.concat(&c);
                    let first = r1.rhs.mul(&NcPoly::word(datum, c), datum);
                    let second = NcPoly::word(datum, a).mul(&r2.rhs, datum);
                    out.push(Overlap {
                        word,
                        rules: (i, j),
                        first,
                        second,
                    });
                }
                if i != j && l2 <= l1 && l1 <= d {
                    if let Some(p) = r1.lhs.find(&r2.lhs) {
                        let u = r1.lhs.slice(0, p);
                        let v = r1.lhs.slice(p + l2, l1);
                        let second = NcPoly::word(datum, u)
                            .mul(&r2.rhs, datum)
                            .mul(&NcPoly::word(datum, v), datum);
                        out.push(Overlap {
                            word: r1.lhs.clone(),
                            rules: (i, j),
                            first: r1.rhs.clone(),
                            second,
                        });
                    }
                }
            }
        }
        out.sort_by(|a, b| a.word.len().cmp(&b.word.len()));
        out
    }

    /// Difference of the two normal forms of an ambiguity.
    pub fn resolve(&self, o: &Overlap) -> NcPoly {
        self.reduce(&o.first).sub(&self.reduce(&o.second))
    }

    /// Unresolved ambiguities of length at most `d`.
    pub fn unresolved_overlaps(&self, d: usize) -> Vec<(Overlap, NcPoly)> {
        self.overlaps(d)
            .into_iter()
            .filter_map(|o| {
                let diff = self.resolve(&o);
                (!diff.is_zero()).then_some((o, diff))
            })
            .collect()
    }

    pub fn complete(&self, d: usize) -> Result<Presentation, RewriteError> {
        self.complete_with_report(d).map(|(p, _)| p)
    }

    /// Adds oriented overlap differences until every ambiguity of length at
    /// most `d` resolves.
    pub fn complete_with_report(
        &self,
        d: usize,
    ) -> Result<(Presentation, CompletionReport), RewriteError> {
        const MAX_ROUNDS: usize = 1000;
        let datum = self.datum.clone();
        let mut report = CompletionReport {
            rules_before: self.rules().len(),
            ..Default::default()
        };
        let mut current = Presentation::assemble(
            datum.clone(),
            interreduce(&datum, self.rw.rules.clone())?,
            None,
        );
        loop {
            report.rounds += 1;
            if report.rounds > MAX_ROUNDS {
                return Err(RewriteError::NoFixpoint(MAX_ROUNDS));
            }
            let overlaps = current.overlaps(d);
            let mut diffs: Vec<(Word, NcPoly)> = Vec::new();
            let mut degree_hit = None;
            for o in &overlaps {
                if degree_hit.is_some_and(|dh| o.word.len() > dh) {
                    break;
                }
                report.overlaps_checked += 1;
                let diff = current.resolve(o);
                if !diff.is_zero() {
                    degree_hit.get_or_insert(o.word.len());
                    diffs.push((o.word.clone(), diff));
                }
            }
            if diffs.is_empty() {
                report.rules_after = current.rules().len();
                let checked = current.confluence_checked_to.max(d);
                let done = Presentation {
                    confluence_checked_to: checked,
                    ..current
                };
                return Ok((done, report));
            }
            let mut rules = current.rw.rules.clone();
            for (word, diff) in diffs {
                let tmp = Presentation::assemble(datum.clone(), rules.clone(), None);
                let reduced = tmp.reduce(&diff);
                if reduced.is_zero() {
                    continue;
                }
                let rule = orient(&reduced, &datum).map_err(|e| RewriteError::Completion {
                    overlap: word.render(&datum),
                    source: Box::new(e),
                })?;
                rules.push(rule);
                report.rules_added += 1;
            }
            current = Presentation::assemble(datum.clone(), interreduce(&datum, rules)?, None);
        }
    }

    /// Rules rendered one per line as `LHS -> RHS`.
    pub fn render_rules(&self) -> String {
        let mut s = String::new();
        for r in &self.rw.rules {
            s.push_str(&r.render(&self.datum));
            s.push('\n');
        }
        s
    }

    /// Left-hand sides as a set, for comparisons.
    pub fn lhs_set(&self) -> HashSet<Word> {
        self.rw.rules.iter().map(|r| r.lhs.clone()).collect()
    }

    /// Checks that every rule is homogeneous for the conjugation action: all
    /// monomials of a relation carry the same product of letter characters.
    pub fn gamma_homogeneous(&self) -> bool {
        let datum = &*self.datum;
        let gens = datum.group().generators();
        let weight = |w: &Word| {
            gens.iter()
                .map(|g| chi_word_at(datum, w, g))
                .collect::<Vec<_>>()
        };
        self.rw.rules.iter().all(|r| {
            let target = weight(&r.lhs);
            r.rhs.iter().all(|(m, _)| weight(&m.word) == target)
        })
    }
}

/// Removes rules whose left side contains another rule's left side
/// (re-adding their reduced relations) and reduces every right side.
pub fn interreduce(
    datum: &Arc<YdDatum>,
    rules: Vec<RewriteRule>,
) -> Result<Vec<RewriteRule>, RewriteError> {
    let mut rules = rules;
    loop {
        rules.sort_by(|a, b| a.lhs.cmp(&b.lhs));
        let victim = (0..rules.len()).find(|&i| {
            rules.iter().enumerate().any(|(j, r)| {
                j != i
                    && rules[i].lhs.contains(&r.lhs)
                    && (r.lhs.len() < rules[i].lhs.len() || j < i)
            })
        });
        let Some(i) = victim else { break };
        let removed = rules.remove(i);
        let tmp = Rewriter::new(rules.clone());
        let rel = tmp.reduce(datum, &removed.relation(datum));
        if !rel.is_zero() {
            rules.push(orient(&rel, datum)?);
        }
    }
    let rw = Rewriter::new(rules.clone());
    let reduced = rules
        .into_iter()
        .map(|r| RewriteRule {
            rhs: rw.reduce(datum, &r.rhs),
            lhs: r.lhs,
        })
        .collect();
    Ok(reduced)
}

impl fmt::Display for CompletionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rounds={} overlaps_checked={} rules_before={} rules_added={} rules_after={}",
            self.rounds, self.overlaps_checked, self.rules_before, self.rules_added, self.rules_after
        )
    }
}

/// Checks that two presentations over data with the same letter names and
/// group define the same ideal: every relation of each reduces to zero in
/// the other.
pub fn same_ideal(a: &Presentation, b: &Presentation) -> Result<Report, YdError> {
    let mut report = Report::new();
    for (from, to, tag) in [(a, b, "first"), (b, a, "second")] {
        let (fd, td) = (from.datum(), to.datum());
        for rule in from.rules() {
            let rel = transport_poly(&rule.relation(fd), fd, td, |g| g.clone())?;
            let residue = to.reduce(&rel);
            report.record(
                "SAME_IDEAL",
                format!("{tag} rule {}", rule.lhs.render(fd)),
                (!residue.is_zero()).then(|| residue.render(td)),
            );
        }
    }
    Ok(report)
}
