//! One pass/fail line per acceptance criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use common::*;
use qdeform::bosonize::group_sample;
use qdeform::braided::{
    braided_commutator, find_primitives, free_presentation, is_primitive, primitivity_defect,
    serre_element, BraidedTensor,
};
use qdeform::config::JobSpec;
use qdeform::deform::group_monomial;
use qdeform::double::{verify_double_iso, DoublePresentation, SkewPairing};
use qdeform::freealg::{transport_poly, NcPoly, Word};
use qdeform::groebner::{same_ideal, Presentation};
use qdeform::Scalar;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn first_failure(report: &qdeform::report::Report) -> String {
    report
        .first_failure()
        .map(|f| format!("{} {} residue {}", f.check, f.subject, f.residue.clone().unwrap_or_default()))
        .unwrap_or_default()
}

fn commutator_relation() -> Outcome {
    let job = job("sl2-lambda");
    let dp = deformation(&job, 6);
    let d = dp.datum();
    let pres = dp.deformed().presentation();
    let got = pres.reduce(&poly(d, "e*f - q^-2*f*e"));
    let want = poly(d, "K^2 - 1").scale(&c());
    ensure!(got == want, "ef - q^-2 fe reduced to {}", got.render(d));
    let big_e = poly(d, "e");
    let big_f = poly(d, "f*K^-1");
    let comm = pres.reduce(&pres.mul(&big_e, &big_f).sub(&pres.mul(&big_f, &big_e)));
    let want = poly(d, "K - K^-1").scale(&c());
    ensure!(comm == want, "EF - FE reduced to {}", comm.render(d));
    Ok(format!("ef - q^-2*fe = {}", got.render(d)))
}

fn degeneration() -> Outcome {
    let dp = deformation(&job("sl2-zero"), 6);
    let d = dp.datum();
    let graded = dp.graded().presentation();
    let deformed = dp.deformed().presentation();
    ensure!(
        graded.render_rules() == deformed.render_rules(),
        "rule sets differ:\n{}\n{}",
        graded.render_rules(),
        deformed.render_rules()
    );
    let r = deformed.reduce(&poly(d, "e*f - q^-2*f*e"));
    ensure!(r.is_zero(), "ef - q^-2 fe reduced to {}", r.render(d));
    Ok("identical rules, commutator reduces to 0".into())
}

fn dimensions() -> Outcome {
    let sl2 = deformation(&job("sl2-lambda"), 6).graded_dims(6).map_err(|e| e.to_string())?;
    let expected: Vec<usize> = (0..=6).map(|n| n + 1).collect();
    ensure!(sl2.graded_counts() == expected, "sl2 graded {:?}", sl2.graded_counts());
    ensure!(sl2.deformed_counts() == expected, "sl2 deformed {:?}", sl2.deformed_counts());
    let job = job("sl3-lambda");
    let sl3 = deformation(&job, 6).graded_dims(6).map_err(|e| e.to_string())?;
    let rels = graded_relations(&job);
    let oracle: Vec<usize> = (0..=6).map(|n| dense_dimension(job.datum.len(), &rels, n)).collect();
    ensure!(sl3.graded_counts() == oracle, "sl3 graded {:?} oracle {:?}", sl3.graded_counts(), oracle);
    ensure!(sl3.deformed_counts() == oracle, "sl3 deformed {:?} oracle {:?}", sl3.deformed_counts(), oracle);
    Ok(format!("sl3 counts {oracle:?}"))
}

fn hopf_axioms() -> Outcome {
    for name in ["sl2-lambda", "sl3-lambda"] {
        let dp = deformation(&job(name), 6);
        let report = dp.deformed().check_hopf_axioms(4).map_err(|e| e.to_string())?;
        ensure!(report.passed(), "{name}: {}", first_failure(&report));
    }
    let dp = corrupted_link();
    let report = dp.deformed().check_hopf_axioms(4).map_err(|e| e.to_string())?;
    let bad = report.first_failure();
    ensure!(
        bad.is_some_and(|f| f.residue.as_deref().is_some_and(|r| r != "0")),
        "corrupted fixture passed"
    );
    Ok(format!("corrupted fixture fails at {}", first_failure(&report)))
}

fn cocycle() -> Outcome {
    let dp = deformation(&job("sl2-lambda"), 6);
    let d = dp.datum();
    let sigma = dp.extracted_cocycle();
    let err = |e: qdeform::deform::DeformError| e.to_string();
    let (e, f) = (mono(d, &["e"]), mono(d, &["f"]));
    let ef = sigma.value(&e, &f).map_err(err)?;
    ensure!(ef == -c(), "sigma(e,f) = {ef}");
    let fe = sigma.value(&f, &e).map_err(err)?;
    ensure!(fe.is_zero(), "sigma(f,e) = {fe}");
    let group = d.group();
    let mut sample = group_sample(d, true);
    sample.push(group.pow(&group.generator(0), 3));
    for g in &sample {
        for h in &sample {
            let v = sigma.value(&group_monomial(g.clone()), &group_monomial(h.clone())).map_err(err)?;
            ensure!(v.is_one(), "sigma on group-likes = {v}");
        }
    }
    let basis = dp.basis(3).map_err(err)?;
    let identities = sigma.cocycle_identities(&basis, 3).map_err(err)?;
    ensure!(identities.passed(), "{}", first_failure(&identities));
    let transport = dp.transport_check(&sigma, 2).map_err(err)?;
    ensure!(transport.passed(), "{}", first_failure(&transport));
    Ok(format!(
        "sigma(e,f) = {ef}, {} identities, {} transported products",
        identities.count(),
        transport.count()
    ))
}

fn confluence() -> Outcome {
    let mut notes = Vec::new();
    for name in qdeform::config::preset_names() {
        if name.ends_with("-lambda") {
            continue;
        }
        let job = job(name);
        let dp = deformation(&job, 6);
        for (label, pres) in [
            ("graded", dp.graded().presentation()),
            ("deformed", dp.deformed().presentation()),
            ("cleft", dp.cleft()),
        ] {
            let open = pres.unresolved_overlaps(5);
            ensure!(open.is_empty(), "{name} {label}: {} unresolved overlaps", open.len());
        }
        let fixpoint = match name {
            "sl2" | "sl2-zero" => {
                let added: usize = dp.completion_reports().iter().map(|r| r.rules_added).sum();
                ensure!(added == 0, "{name}: completion added {added} rules");
                None
            }
            "sl3" | "sl3-zero" => Some(6),
            "uq-sl2-N5" | "uq-sl2-N5-zero" => Some(10),
            _ => None,
        };
        if let Some(bound) = fixpoint {
            for pres in [dp.graded().presentation(), dp.deformed().presentation(), dp.cleft()] {
                let (_, again) = pres.complete_with_report(bound).map_err(|e| e.to_string())?;
                ensure!(again.rules_added == 0, "{name}: not a fixed point at degree {bound}");
            }
            notes.push(format!("{name} {} rules", dp.deformed().presentation().rules().len()));
        }
    }
    Ok(format!("all presets confluent to length 5; {}", notes.join(", ")))
}

fn skew_pairing() -> Outcome {
    let job = job("sl2-lambda");
    let pairing = SkewPairing::new(job.datum.clone(), job.lambda.clone(), vec![], false, 6)
        .map_err(|e| e.to_string())?;
    let laws = pairing.check_laws(3).map_err(|e| e.to_string())?;
    ensure!(laws.passed(), "{}", first_failure(&laws));
    let double = DoublePresentation::build(pairing, 5).map_err(|e| e.to_string())?;
    let rules = double.generator_rules_check();
    ensure!(rules.passed(), "{}", first_failure(&rules));
    Ok(format!("{} law instances, {} generator rules", laws.count(), rules.count()))
}

fn double_quotient() -> Outcome {
    let job = job("sl2-lambda");
    let dp = deformation(&job, 6);
    let pairing = SkewPairing::new(job.datum.clone(), job.lambda.clone(), vec![], false, 6)
        .map_err(|e| e.to_string())?;
    let double = DoublePresentation::build(pairing, 5).map_err(|e| e.to_string())?;
    let quotient = double.quotient_central().map_err(|e| e.to_string())?;
    let iso = verify_double_iso(&quotient, &dp, 5).map_err(|e| e.to_string())?;
    ensure!(iso.passed(), "{}", first_failure(&iso));
    Ok(format!("{} checks at degree 5", iso.count()))
}

fn root_of_unity() -> Outcome {
    let job = job("uq-sl2-N5-lambda");
    let dp = deformation(&job, 10);
    let hopf = dp.deformed().check_hopf_axioms(4).map_err(|e| e.to_string())?;
    ensure!(hopf.passed(), "{}", first_failure(&hopf));
    let dims = dp.graded_dims(10).map_err(|e| e.to_string())?;
    ensure!(dims.totals() == Some((125, 125)), "totals {:?}", dims.totals());
    let d = dp.datum();
    let (e, f) = (letter(d, "e") as u16, letter(d, "f") as u16);
    let mut enumerated = Vec::new();
    for a in 0..5 {
        for b in 0..5 {
            let mut w = vec![f; a];
            w.extend(vec![e; b]);
            enumerated.push(Word::new(w));
        }
    }
    let order = d.group().order().unwrap_or(0) as usize;
    ensure!(enumerated.len() * order == 125, "enumeration gives {}", enumerated.len() * order);
    for pres in [dp.graded().presentation(), dp.deformed().presentation()] {
        let mut normal: Vec<Word> = (0..=10)
            .flat_map(|n| pres.normal_words(n).unwrap())
            .collect();
        normal.sort();
        enumerated.sort();
        ensure!(normal == enumerated, "normal words differ from f^a e^b");
    }
    Ok("total 125 for both algebras".into())
}

fn primitivity() -> Outcome {
    let sl3 = job("sl3");
    for order in [["minus", "plus"], ["plus", "minus"]] {
        let job = sl3.with_component_order(&order.map(String::from)).map_err(|e| e.to_string())?;
        let d = &job.datum;
        let free = free_presentation(d);
        for i in 0..d.len() {
            for j in 0..d.len() {
                if i == j || d.component_of(i) != d.component_of(j) {
                    continue;
                }
                let u = serre_element(d, i, j, -1).map_err(|e| e.to_string())?;
                ensure!(is_primitive(&free, &u).map_err(|e| e.to_string())?, "{} not primitive", u.render(d));
            }
        }
    }
    let plus = job("sl3-plus");
    let free = free_presentation(&plus.datum);
    let prims = find_primitives(&free, None, 2).map_err(|e| e.to_string())?;
    ensure!(prims.is_empty(), "{} degree-2 primitives", prims.len());
    let d = &sl3.datum;
    let free = free_presentation(d);
    for v in 0..d.len() {
        for w in 0..d.len() {
            let (pv, pw) = (NcPoly::letter(d, v), NcPoly::letter(d, w));
            let defect = primitivity_defect(&free, &braided_commutator(d, &pv, &pw)).map_err(|e| e.to_string())?;
            let coef = Scalar::one() - d.q(v, w) * d.q(w, v);
            let expected = if coef.is_zero() {
                BraidedTensor::zero()
            } else {
                BraidedTensor::pure(Word::letter(v), Word::letter(w), coef)
            };
            ensure!(defect == expected, "defect of [{v},{w}] is {}", defect.render(d));
            let cross = d.component_of(v) != d.component_of(w);
            ensure!(defect.is_zero() == cross, "defect of [{v},{w}] vanishes off cross pairs");
        }
    }
    Ok("Serre elements primitive, no degree-2 primitives, commutator defects match".into())
}

fn order_independence() -> Outcome {
    for name in ["sl2-lambda", "sl3-lambda", "uq-sl2-N5-lambda"] {
        let job = job(name);
        let rev = job
            .with_component_order(&["plus".to_string(), "minus".to_string()])
            .map_err(|e| e.to_string())?;
        let bound = job.max_degree;
        let a = deformation(&job, bound);
        let b = deformation(&rev, bound);
        let (da, db) = (
            a.graded_dims(bound).map_err(|e| e.to_string())?,
            b.graded_dims(bound).map_err(|e| e.to_string())?,
        );
        ensure!(da.to_string() == db.to_string(), "{name}: dimension tables differ");
        for (pa, pb) in [
            (a.graded().presentation(), b.graded().presentation()),
            (a.deformed().presentation(), b.deformed().presentation()),
            (a.cleft(), b.cleft()),
        ] {
            let moved = reindex(pa, &rev, bound)?;
            let report = same_ideal(&moved, pb).map_err(|e| e.to_string())?;
            ensure!(report.passed(), "{name}: {}", first_failure(&report));
        }
    }
    Ok("dimension tables and ideals agree after reindexing".into())
}

fn reindex(p: &Presentation, to: &JobSpec, bound: usize) -> Result<Presentation, String> {
    let rels = p
        .rules()
        .iter()
        .map(|r| transport_poly(&r.relation(p.datum()), p.datum(), &to.datum, |g| g.clone()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    Presentation::from_relations(to.datum.clone(), &rels)
        .and_then(|p| p.complete(bound))
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("deformed sl2 commutator relation", commutator_relation),
        ("zero linking degenerates to the graded algebra", degeneration),
        ("graded and deformed dimensions agree", dimensions),
        ("Hopf axioms and corrupted linking fixture", hopf_axioms),
        ("extracted 2-cocycle", cocycle),
        ("confluence of every preset", confluence),
        ("skew pairing laws and double generator rules", skew_pairing),
        ("double quotient is the deformation", double_quotient),
        ("small quantum group at a fifth root of unity", root_of_unity),
        ("Serre primitivity and commutator defect", primitivity),
        ("component order independence", order_independence),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut all = true;
    for (i, (label, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {label}: {detail}", i + 1),
            Err(why) => {
                all = false;
                println!("criterion {:>2} FAIL {label}: {}", i + 1, why.replace('\n', " | "));
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
