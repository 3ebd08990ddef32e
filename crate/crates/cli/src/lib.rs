//! Front end for `coincide`: loads a problem file, runs one subcommand and
//! renders the report as JSON or text.
//!
//! Text output is rendered from the same JSON value, so both formats carry
//! the same facts.

pub mod report;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use coincide_core::coincidence::coincidence_candidates;
use coincide_core::homology::{cohomology, homology, Coefficients};
use coincide_core::problem::{ProblemFile, ProblemSpec, ZSpec};
use coincide_core::removability::{
    condition_a, condition_a_star, coincidence_producing_verdict, removability_verdict, FiberDescription,
    HomotopyGroupTable,
};
use coincide_core::{CoincidenceError, PairHomology, SimplicialPair, DEGREE_ZERO_SIGN};

use report::*;

#[derive(Parser, Debug, Clone)]
#[command(name = "coincide", version, about = "Coincidence invariants of simplicial maps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Extra homotopy groups of spheres, one `pi <k> S <j> = ...` entry per line.
    #[arg(long, global = true)]
    pub table: Option<PathBuf>,
    /// Include reason traces for three-valued verdicts.
    #[arg(long, global = true)]
    pub verbose: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Integral homology and cohomology of every pair and complex.
    Homology { file: PathBuf },
    /// Theta matrices, Lefschetz numbers and index pairings of every problem.
    Lefschetz { file: PathBuf },
    /// Local removability verdict of every problem.
    Removability { file: PathBuf },
    /// Weakly coincidence-producing verdict for the map f of every problem.
    Produce { file: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

fn internal(problem: &str, e: CoincidenceError) -> CliError {
    CliError::Internal(format!("problem {problem}: {e}"))
}

fn load(file: &Path, table: Option<&Path>) -> Result<ProblemFile, CliError> {
    let base = match table {
        Some(p) => HomotopyGroupTable::load(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?,
        None => HomotopyGroupTable::builtin(),
    };
    ProblemFile::load_with_table(file, base).map_err(|e| CliError::Input(e.to_string()))
}

/// Runs the command and returns the rendered report.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let table = cli.table.as_deref();
    let value = match &cli.command {
        Command::Homology { file } => envelope("homology", file, homology_report(&load(file, table)?)),
        Command::Lefschetz { file } => envelope("lefschetz", file, lefschetz_report(&load(file, table)?, cli.verbose)?),
        Command::Removability { file } => {
            envelope("removability", file, removability_report(&load(file, table)?, cli.verbose)?)
        }
        Command::Produce { file } => envelope("produce", file, produce_report(&load(file, table)?, cli.verbose)?),
    };
    Ok(match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&value).map_err(|e| CliError::Internal(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Text => render_text(&value),
    })
}

fn envelope<T: Serialize>(command: &'static str, file: &Path, results: Vec<T>) -> Value {
    serde_json::to_value(Envelope {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION"),
        command,
        file: file.display().to_string(),
        results,
    })
    .expect("reports serialize")
}

pub fn homology_report(pf: &ProblemFile) -> Vec<HomologyEntry> {
    let entry = |name: &str, kind, complex: &str, sub: Option<String>, pair: &SimplicialPair| {
        let h = homology(pair, Coefficients::Integers);
        let c = cohomology(pair, Coefficients::Integers);
        let q = homology(pair, Coefficients::Rationals);
        HomologyEntry {
            name: name.to_string(),
            kind,
            complex: complex.to_string(),
            subcomplex: sub,
            dimension: pair.dimension(),
            f_vector: pair.total().f_vector(),
            homology: h.groups().iter().map(Group::from).collect(),
            cohomology: c.groups().iter().map(Group::from).collect(),
            rational_betti_numbers: q.betti_numbers(),
            euler_characteristic: pair.is_absolute().then(|| pair.total().euler_characteristic()),
        }
    };
    let mut jobs: Vec<(String, &'static str, String, Option<String>, SimplicialPair)> = Vec::new();
    for (name, k) in &pf.complexes {
        jobs.push((name.clone(), "complex", name.clone(), None, SimplicialPair::absolute(k.clone())));
    }
    for (name, np) in &pf.pairs {
        jobs.push((name.clone(), "pair", np.complex.clone(), np.sub.clone(), (*np.pair).clone()));
    }
    jobs.par_iter().map(|(n, kind, c, s, p)| entry(n, kind, c, s.clone(), p)).collect()
}

fn z_label(spec: &ZSpec, i: usize) -> String {
    match spec {
        ZSpec::Fundamental => "fundamental".into(),
        ZSpec::Chain(terms) => format!("chain #{} ({} terms)", i + 1, terms.len()),
    }
}

fn lefschetz_entry(spec: &ProblemSpec, verbose: bool) -> Result<LefschetzEntry, CliError> {
    let setup = spec.setup.clone();
    let closed_classical = spec.codimension() == 0
        && setup.domain().pair().is_absolute()
        && setup.target().pair().is_absolute();
    let mut classes = Vec::new();
    for (i, (zs, problem)) in spec.z_specs.iter().zip(spec.problems()).enumerate() {
        let r = problem.evaluate().map_err(|e| internal(&spec.name, e))?;
        if closed_classical && *zs == ZSpec::Fundamental && !r.index_pairing.is_integer() {
            return Err(internal(&spec.name, CoincidenceError::NonIntegerResult(r.index_pairing)));
        }
        let lam = problem.lefschetz_homomorphism().map_err(|e| internal(&spec.name, e))?;
        let theta = r
            .theta_matrices
            .iter()
            .enumerate()
            .map(|(q, t)| ThetaOut {
                degree: q,
                matrix: matrix(t),
                trace: Rational::from(&coincide_core::algebra::trace(t).expect("square")),
            })
            .collect();
        let candidates = verbose.then(|| {
            let k = setup.f().source();
            coincidence_candidates(setup.f(), setup.g()).iter().map(|s| k.labels_of(s)).collect()
        });
        classes.push(ClassOut {
            z: z_label(zs, i),
            theta,
            lefschetz_number: Rational::from(&r.lefschetz_number),
            index_pairing: Rational::from(&r.index_pairing),
            existence_verdict: match r.existence_verdict {
                coincide_core::ExistenceVerdict::CoincidenceExists => "coincidence_exists",
                coincide_core::ExistenceVerdict::Indeterminate => "indeterminate",
            },
            lefschetz_homomorphism_degree0: rationals(&lam.coords),
            lefschetz_homomorphism_augmentation: Rational::from(&lam.augmentation),
            coincidence_candidates: candidates,
        });
    }
    Ok(LefschetzEntry {
        problem: spec.name.clone(),
        domain: spec.domain.clone(),
        target: spec.target.clone(),
        f: spec.f.clone(),
        g: spec.g.clone(),
        n: spec.n(),
        codimension: spec.codimension(),
        sign_convention_epsilon: DEGREE_ZERO_SIGN,
        classes,
        citations: citations(&[coincide_core::removability::Citation::NormalizationTheorem]),
    })
}

pub fn lefschetz_report(pf: &ProblemFile, verbose: bool) -> Result<Vec<LefschetzEntry>, CliError> {
    pf.problems.par_iter().map(|s| lefschetz_entry(s, verbose)).collect()
}

fn fiber_label(f: &FiberDescription) -> String {
    match f {
        FiberDescription::Acyclic => "acyclic".into(),
        FiberDescription::HomologySpheres => "homology spheres".into(),
        FiberDescription::Unspecified => "unspecified".into(),
        FiberDescription::Cohomology(groups) => {
            let parts: Vec<String> = groups.iter().enumerate().map(|(p, g)| format!("H^{p} = {g}")).collect();
            format!("cohomology [{}]", parts.join(", "))
        }
    }
}

fn removability_entry(spec: &ProblemSpec, table: &HomotopyGroupTable, verbose: bool) -> Result<RemovabilityEntry, CliError> {
    let pairings = spec
        .problems()
        .iter()
        .map(|p| p.index_pairing())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| internal(&spec.name, e))?;
    let n = spec.n();
    let m = spec.codimension();
    let a = condition_a(&spec.fiber, m as i64, n as u32, table);
    let report = removability_verdict(&pairings, &a).map_err(|e| CliError::Input(format!("problem {}: {e}", spec.name)))?;
    let star = (m >= 1 && n >= 2).then(|| condition_a_star(m as u32, n as u32, table).as_str());
    Ok(RemovabilityEntry {
        problem: spec.name.clone(),
        n,
        codimension: m,
        fiber: fiber_label(&spec.fiber),
        index_pairings: rationals(&pairings),
        spanning_set_size: report.spanning_set_size,
        spanning_set_assumption: "the listed z classes are taken to span H_n(W, W\\V; Q)",
        index_zero: report.index_zero.as_str(),
        condition_a_star: star,
        condition_a: ConditionOut::new(&report.condition_a, verbose),
        final_verdict: report.final_verdict.as_str(),
        summary: report.summary,
        citations: citations(&report.citations),
    })
}

pub fn removability_report(pf: &ProblemFile, verbose: bool) -> Result<Vec<RemovabilityEntry>, CliError> {
    pf.problems.par_iter().map(|s| removability_entry(s, &pf.table, verbose)).collect()
}

fn produce_entry(spec: &ProblemSpec, table: &HomotopyGroupTable, verbose: bool) -> Result<ProduceEntry, CliError> {
    let setup = &spec.setup;
    let n = spec.n();
    let m = spec.codimension();
    let a = condition_a(&spec.fiber, m as i64, n as u32, table);
    let source = PairHomology::new(setup.domain().pair().clone());
    let target = PairHomology::new(setup.target().pair().clone());
    let r = coincidence_producing_verdict(setup.f(), &source, &target, a.verdict)
        .map_err(|e| CliError::Input(format!("problem {}: {e}", spec.name)))?;
    let mut cites = r.citations.clone();
    cites.extend(a.citations.iter().copied());
    cites.dedup();
    Ok(ProduceEntry {
        problem: spec.name.clone(),
        f: spec.f.clone(),
        source: spec.domain.clone(),
        target: spec.target.clone(),
        n,
        codimension: m,
        top_degree_map: matrix(&r.top_degree_map),
        condition_a: ConditionOut::new(&a, verbose),
        verdict: r.verdict.as_str(),
        citations: citations(&cites),
    })
}

pub fn produce_report(pf: &ProblemFile, verbose: bool) -> Result<Vec<ProduceEntry>, CliError> {
    pf.problems.par_iter().map(|s| produce_entry(s, &pf.table, verbose)).collect()
}

fn is_rational(v: &Value) -> Option<String> {
    let o = v.as_object()?;
    if o.len() != 2 {
        return None;
    }
    let (num, den) = (o.get("num")?.as_str()?, o.get("den")?.as_str()?);
    Some(if den == "1" { num.to_string() } else { format!("{num}/{den}") })
}

fn inline(v: &Value) -> Option<String> {
    if let Some(r) = is_rational(v) {
        return Some(r);
    }
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) => {
            let parts: Option<Vec<String>> = items.iter().map(inline).collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        Value::Object(map) if map.len() <= 4 => {
            let parts: Option<Vec<String>> =
                map.iter().map(|(k, v)| inline(v).filter(|s| !s.contains('{')).map(|s| format!("{k}={s}"))).collect();
            parts.map(|p| format!("{{{}}}", p.join(", ")))
        }
        Value::Object(_) => None,
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match inline(val) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(val, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match inline(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render(item, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other).unwrap_or_default())),
    }
}

/// Indented `key: value` rendering of a report value.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out
}
