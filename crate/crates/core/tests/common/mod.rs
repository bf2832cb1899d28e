#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use qdeform::abgroup::GroupSpec;
use qdeform::config::{load_spec, JobSpec};
use qdeform::deform::DeformedPresentation;
use qdeform::freealg::{Monomial, NcPoly, Word};
use qdeform::yd::{LetterSpec, LinkingParameters, YdDatum};
use qdeform::Scalar;

pub fn job(name: &str) -> JobSpec {
    load_spec(name).unwrap_or_else(|e| panic!("preset {name}: {e}"))
}

pub fn deformation(job: &JobSpec, d: usize) -> DeformedPresentation {
    DeformedPresentation::build(
        job.datum.clone(),
        job.lambda.clone(),
        job.relations.clone(),
        d.max(job.max_degree),
    )
    .unwrap()
}

pub fn letter(datum: &YdDatum, name: &str) -> usize {
    datum.letter_index(name).unwrap()
}

pub fn word(datum: &YdDatum, names: &[&str]) -> Word {
    Word::new(names.iter().map(|n| letter(datum, n) as u16).collect())
}

pub fn mono(datum: &YdDatum, names: &[&str]) -> Monomial {
    Monomial::from_word(datum, word(datum, names))
}

pub fn poly(datum: &YdDatum, src: &str) -> NcPoly {
    qdeform::expr::parse_poly(src, datum).unwrap()
}

/// `1/(q - q^-1)`
pub fn c() -> Scalar {
    (Scalar::q() - Scalar::q_pow(-1)).inv().unwrap()
}

/// `e` and `f` over `Z^2 = <K, L>` with a symmetric braiding, linked by `c`
/// although `chi_e chi_f` is nontrivial on `L`.
pub fn corrupted_link() -> DeformedPresentation {
    let g = GroupSpec::free(&["K", "L"]).unwrap();
    let spec = |name: &str, comp: &str, chi: [i64; 2]| LetterSpec {
        name: name.into(),
        component: comp.into(),
        g: g.generator(0),
        chi: g.character(chi.map(Scalar::q_pow).to_vec()).unwrap(),
    };
    let d = Arc::new(
        YdDatum::new(
            g.clone(),
            vec!["minus".into(), "plus".into()],
            vec![spec("e", "plus", [2, 1]), spec("f", "minus", [-2, 0])],
        )
        .unwrap(),
    );
    let mut lam = LinkingParameters::new();
    lam.set(&d, letter(&d, "e"), letter(&d, "f"), c()).unwrap();
    let issues = d.validate(&lam);
    assert!(issues.has_linking_failure() && !issues.has_symmetry_failure());
    assert!(DeformedPresentation::build(d.clone(), lam.clone(), vec![], 6).is_err());
    DeformedPresentation::build_unchecked(d, lam, vec![], 6).unwrap()
}

/// A plain Gaussian elimination kept apart from the library's linear algebra.
/// Rows are sparse maps from column to value; returns the rank.
pub fn sparse_rank(rows: Vec<BTreeMap<usize, Scalar>>) -> usize {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Scalar>> = BTreeMap::new();
    for mut row in rows {
        loop {
            let Some((&col, _)) = row.iter().next() else { break };
            match pivots.get(&col) {
                Some(p) => {
                    let factor = row[&col].clone();
                    for (k, v) in p {
                        let cur = row.remove(k).unwrap_or_else(Scalar::zero);
                        let next = cur - &(&factor * v);
                        if !next.is_zero() {
                            row.insert(*k, next);
                        }
                    }
                }
                None => {
                    let inv = row[&col].inv().unwrap();
                    let normed = row.into_iter().map(|(k, v)| (k, v * &inv)).collect();
                    pivots.insert(col, normed);
                    break;
                }
            }
        }
    }
    pivots.len()
}

fn all_words(letters: usize, n: usize) -> Vec<Vec<u16>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..letters as u16).map(move |l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
    }
    out
}

/// Dimension of the degree-`n` part of the free algebra modulo the two-sided
/// ideal of the given group-free homogeneous relations, block by letter content.
pub fn dense_dimension(letters: usize, relations: &[Vec<(Vec<u16>, Scalar)>], n: usize) -> usize {
    let words = all_words(letters, n);
    let content = |w: &[u16]| {
        let mut c = vec![0u8; letters];
        for &l in w {
            c[l as usize] += 1;
        }
        c
    };
    let mut index: BTreeMap<Vec<u16>, usize> = BTreeMap::new();
    for (i, w) in words.iter().enumerate() {
        index.insert(w.clone(), i);
    }
    let mut blocks: BTreeMap<Vec<u8>, Vec<BTreeMap<usize, Scalar>>> = BTreeMap::new();
    for rel in relations {
        let len = rel[0].0.len();
        if len > n {
            continue;
        }
        for outer in all_words(letters, n - len) {
            for split in 0..=outer.len() {
                let mut row: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (w, coef) in rel {
                    let mut full = outer[..split].to_vec();
                    full.extend_from_slice(w);
                    full.extend_from_slice(&outer[split..]);
                    let e = row.entry(index[&full]).or_insert_with(Scalar::zero);
                    *e += coef;
                }
                row.retain(|_, v| !v.is_zero());
                if let Some((&k, _)) = row.iter().next() {
                    blocks.entry(content(&words[k])).or_default().push(row);
                }
            }
        }
    }
    let rank: usize = blocks.into_values().map(sparse_rank).sum();
    words.len() - rank
}

/// The group-free relations of the graded algebra, rebuilt from the braiding
/// matrix: `x_i x_j - q_ij x_j x_i` across components, plus the job's extras.
pub fn graded_relations(job: &JobSpec) -> Vec<Vec<(Vec<u16>, Scalar)>> {
    let d = &job.datum;
    let mut out = Vec::new();
    for i in 0..d.len() {
        for j in 0..d.len() {
            if d.component_of(i) > d.component_of(j) {
                out.push(vec![
                    (vec![i as u16, j as u16], Scalar::one()),
                    (vec![j as u16, i as u16], -d.q(i, j)),
                ]);
            }
        }
    }
    for r in &job.relations {
        out.push(
            r.iter()
                .map(|(m, c)| (m.word.letters().to_vec(), c.clone()))
                .collect(),
        );
    }
    out
}
