//! Command-line front end: argument parsing, dispatch and report output.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::bosonize::HopfError;
use crate::braided::{find_primitives, is_primitive, BraidedError};
use crate::config::{load_spec, ConfigError, JobSpec};
use crate::deform::{DeformError, DeformedPresentation};
use crate::double::{
    extraction_consistency, verify_double_iso, DoubleError, DoublePresentation, SkewPairing,
};
use crate::expr::{parse_poly, ExprError};
use crate::groebner::{Presentation, RewriteError};
use crate::report::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("pass either --preset or --spec")]
    NoJob,
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("expression: {0}")]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Deform(#[from] DeformError),
    #[error(transparent)]
    Double(#[from] DoubleError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Braided(#[from] BraidedError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Parser)]
#[command(name = "qdeform", version, about = "Exact deformations of pointed Hopf algebras by linking parameters")]
pub struct Cli {
    /// Built-in job (see `qdeform presets`)
    #[arg(long, global = true)]
    pub preset: Option<String>,
    /// Job file in the sectioned text format
    #[arg(long, global = true)]
    pub spec: Option<PathBuf>,
    /// Degree bound for the command
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,
    /// Print only a machine-readable dump
    #[arg(long, global = true, value_enum)]
    pub emit: Option<Emit>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Rules,
    Cocycle,
    Dims,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algebra {
    Graded,
    Deformed,
    Cleft,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Hopf,
    Cocycle,
    Double,
    Confluence,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the built-in presets
    Presets,
    /// Complete the graded, deformed and cleft presentations
    Build,
    /// Reduce an expression to normal form
    Reduce {
        expr: String,
        #[arg(long, value_enum, default_value = "deformed")]
        algebra: Algebra,
    },
    /// Normal-word counts per degree, graded against deformed
    Dims,
    /// Primitive elements of the free braided algebra in one degree
    Primitives {
        #[arg(long)]
        degree: usize,
    },
    /// Extract the 2-cocycle from the cleft object
    Deform,
    /// Build the double from the skew pairing
    Double {
        /// Also form the quotient by the central group-likes
        #[arg(long)]
        quotient: bool,
        /// Compare the quotient with the deformed algebra
        #[arg(long)]
        verify: bool,
        /// Use a copy of the group for the lower half
        #[arg(long)]
        same_group: bool,
    },
    /// Run a verification suite
    Verify {
        #[arg(value_enum)]
        target: Target,
    },
}

const HOPF_DEGREE: usize = 4;
const COCYCLE_DEGREE: usize = 3;
const DOUBLE_DEGREE: usize = 5;
const CONFLUENCE_DEGREE: usize = 5;

fn job(cli: &Cli) -> Result<JobSpec, CliError> {
    match (&cli.preset, &cli.spec) {
        (Some(p), _) => Ok(load_spec(p)?),
        (None, Some(path)) => Ok(load_spec(&path.to_string_lossy())?),
        (None, None) => Err(CliError::NoJob),
    }
}

fn deformation(job: &JobSpec, degree: usize) -> Result<DeformedPresentation, CliError> {
    Ok(DeformedPresentation::build(
        job.datum.clone(),
        job.lambda.clone(),
        job.relations.clone(),
        degree.max(job.max_degree),
    )?)
}

fn write_report(out: &mut dyn Write, title: &str, report: &Report) -> Result<bool, CliError> {
    writeln!(out, "== {title}")?;
    write!(out, "{}", report.summary())?;
    Ok(report.passed())
}

/// Runs one command; the result is `true` when every check passed.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<bool, CliError> {
    if let Command::Presets = cli.command {
        for name in crate::config::preset_names() {
            writeln!(out, "{name}")?;
        }
        return Ok(true);
    }
    let job = job(cli)?;
    let datum = &*job.datum;
    match &cli.command {
        Command::Presets => unreachable!("handled above"),
        Command::Build => {
            let d = cli.max_degree.unwrap_or(job.max_degree);
            let dp = deformation(&job, d)?;
            if cli.emit == Some(Emit::Rules) {
                write!(out, "{}", dp.deformed().presentation().render_rules())?;
                return Ok(true);
            }
            writeln!(out, "job {}", job.name)?;
            writeln!(out, "field {:?}", datum.field())?;
            writeln!(out, "group {}", datum.group().names().join(", "))?;
            for l in datum.letters() {
                writeln!(
                    out,
                    "letter {} component={} degree={} character={}",
                    l.name,
                    datum.components()[l.component],
                    datum.group().render(&l.g),
                    l.chi
                )?;
            }
            writeln!(out, "{}", datum.validate(&job.lambda))?;
            let names = ["graded", "deformed", "cleft"];
            let pres = [
                dp.graded().presentation(),
                dp.deformed().presentation(),
                dp.cleft(),
            ];
            for ((name, p), rep) in names.iter().zip(pres).zip(dp.completion_reports()) {
                writeln!(out, "== {name} ({rep})")?;
                write!(out, "{}", p.render_rules())?;
            }
            Ok(true)
        }
        Command::Reduce { expr, algebra } => {
            let dp = deformation(&job, job.max_degree)?;
            let p = parse_poly(expr, datum)?;
            let pres = match algebra {
                Algebra::Graded => dp.graded().presentation(),
                Algebra::Deformed => dp.deformed().presentation(),
                Algebra::Cleft => dp.cleft(),
            };
            writeln!(out, "{}", pres.reduce(&p).render(datum))?;
            Ok(true)
        }
        Command::Dims => {
            let d = cli.max_degree.unwrap_or(job.max_degree);
            let dp = deformation(&job, d)?;
            let table = dp.graded_dims(d)?;
            if cli.emit == Some(Emit::Dims) {
                for r in &table.rows {
                    writeln!(out, "{} {} {}", r.degree, r.graded, r.deformed)?;
                }
            } else {
                write!(out, "{table}")?;
            }
            Ok(table.all_equal())
        }
        Command::Primitives { degree } => {
            let free = Presentation::free(job.datum.clone());
            let prims = find_primitives(&free, None, *degree)?;
            writeln!(out, "degree {degree} dimension {}", prims.len())?;
            let mut ok = true;
            for p in &prims {
                let prim = is_primitive(&free, p)?;
                ok &= prim;
                writeln!(out, "{}", p.render(datum))?;
            }
            Ok(ok)
        }
        Command::Deform => {
            let d = cli.max_degree.unwrap_or(COCYCLE_DEGREE);
            let dp = deformation(&job, 2 * d)?;
            let sigma = dp.extracted_cocycle();
            let basis = dp.basis(d)?;
            let table = sigma.table(&basis, d)?;
            if cli.emit == Some(Emit::Cocycle) {
                write!(out, "{}", table.render(datum))?;
                return Ok(true);
            }
            writeln!(out, "== cocycle ({}, degree <= {d})", table.kind)?;
            write!(out, "{}", table.render(datum))?;
            let report = sigma.cocycle_identities(&basis, d)?;
            write_report(out, "cocycle identities", &report)
        }
        Command::Double {
            quotient,
            verify,
            same_group,
        } => {
            let d = cli.max_degree.unwrap_or(DOUBLE_DEGREE);
            let pairing = SkewPairing::new(
                job.datum.clone(),
                job.lambda.clone(),
                job.relations.clone(),
                *same_group || job.same_group,
                d.max(COCYCLE_DEGREE),
            )?;
            let double = DoublePresentation::build(pairing, d)?;
            if cli.emit == Some(Emit::Rules) && !quotient {
                write!(out, "{}", double.double().presentation().render_rules())?;
                return Ok(true);
            }
            let mut ok = true;
            if cli.emit.is_none() {
                writeln!(out, "== double")?;
                write!(out, "{}", double.double().presentation().render_rules())?;
                ok &= write_report(out, "generator rules", &double.generator_rules_check())?;
            }
            if *quotient || *verify {
                let q = double.quotient_central()?;
                if cli.emit == Some(Emit::Rules) {
                    write!(out, "{}", q.presentation().render_rules())?;
                    return Ok(true);
                }
                writeln!(out, "== quotient")?;
                write!(out, "{}", q.presentation().render_rules())?;
                if *verify {
                    let dp = deformation(&job, d)?;
                    ok &= write_report(out, "isomorphism", &verify_double_iso(&q, &dp, d)?)?;
                }
            }
            Ok(ok)
        }
        Command::Verify { target } => verify(cli, &job, *target, out),
    }
}

fn verify(cli: &Cli, job: &JobSpec, target: Target, out: &mut dyn Write) -> Result<bool, CliError> {
    let mut ok = true;
    let all = target == Target::All;
    if all || target == Target::Confluence {
        let d = cli.max_degree.unwrap_or(CONFLUENCE_DEGREE);
        let dp = deformation(job, d)?;
        let mut report = Report::new();
        let names = ["graded", "deformed", "cleft"];
        let pres = [
            dp.graded().presentation(),
            dp.deformed().presentation(),
            dp.cleft(),
        ];
        for (name, p) in names.iter().zip(pres) {
            let bad = p.unresolved_overlaps(d);
            let total = p.overlaps(d).len();
            report.record(
                "CONFLUENCE",
                format!("{name} overlaps={total}"),
                bad.first().map(|(o, r)| {
                    format!("{} -> {}", o.word.render(p.datum()), r.render(p.datum()))
                }),
            );
        }
        ok &= write_report(out, "confluence", &report)?;
        for (name, rep) in names.iter().zip(dp.completion_reports()) {
            writeln!(out, "completion {name} {rep}")?;
        }
    }
    if all || target == Target::Hopf {
        let d = cli.max_degree.unwrap_or(HOPF_DEGREE);
        let dp = deformation(job, d)?;
        ok &= write_report(out, "hopf graded", &dp.graded().check_hopf_axioms(d)?)?;
        ok &= write_report(out, "hopf deformed", &dp.deformed().check_hopf_axioms(d)?)?;
    }
    if all || target == Target::Cocycle {
        let d = cli.max_degree.unwrap_or(COCYCLE_DEGREE);
        let dp = deformation(job, 2 * d)?;
        let sigma = dp.extracted_cocycle();
        let basis = dp.basis(d)?;
        let mut report = sigma.cocycle_identities(&basis, d)?;
        report.extend(sigma.convolution_check(&basis, d)?);
        report.extend(dp.transport_check(&sigma, d.min(2))?);
        report.extend(dp.comodule_check(d)?);
        report.extend(dp.colinearity_check(d)?);
        report.extend(dp.filtration_check());
        ok &= write_report(out, "cocycle", &report)?;
        let table = dp.graded_dims(dp.max_degree())?;
        ok &= table.all_equal();
        writeln!(
            out,
            "dims graded={:?} deformed={:?} {}",
            table.graded_counts(),
            table.deformed_counts(),
            if table.all_equal() { "PASS" } else { "FAIL" }
        )?;
    }
    if all || target == Target::Double {
        if job.datum.components().len() != 2 {
            writeln!(out, "== double")?;
            writeln!(out, "DOUBLE SKIP needs two components")?;
        } else {
            let d = cli.max_degree.unwrap_or(DOUBLE_DEGREE);
            let pairing = SkewPairing::new(
                job.datum.clone(),
                job.lambda.clone(),
                job.relations.clone(),
                job.same_group,
                d.max(COCYCLE_DEGREE),
            )?;
            let mut report = pairing.check_laws(COCYCLE_DEGREE.min(d))?;
            let double = DoublePresentation::build(pairing, d)?;
            report.extend(double.generator_rules_check());
            report.extend(double.pairing_product_check(2)?);
            let q = double.quotient_central()?;
            let dp = deformation(job, d)?;
            report.extend(verify_double_iso(&q, &dp, d)?);
            report.extend(extraction_consistency(&double, &dp)?);
            ok &= write_report(out, "double", &report)?;
        }
    }
    writeln!(out, "{}", if ok { "ALL PASS" } else { "SOME CHECKS FAILED" })?;
    Ok(ok)
}
