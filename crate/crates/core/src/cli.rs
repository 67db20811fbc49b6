//! Command-line interface and the built-in corpus.
//!
//! Exit codes: 0 when every evaluated check holds, 1 on a violated check or
//! a golden mismatch, 2 on malformed input, 3 when nothing could be checked.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::blowup::resolve_germ;
use crate::bounds::{build_report, BoundReport, BoundsError, Options, ReportInput, Verdict};
use crate::curve::{analyze, invariant_record, CurveError, CurveFile, CurveSpec};
use crate::exactalg::field::{Field, FieldSpec, Gf, Rationals};
use crate::exactalg::parse::{parse_poly, parse_rational_terms};
use crate::exactalg::scheme::local_germ;
use crate::exactalg::AlgError;
use crate::foliation::{min_annihilator_degree, singular_scheme, FoliationError, FoliationFile, VectorField};
use crate::localring::{hn_check, NumericalSemigroup, SemigroupError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NOTHING_CHECKED: i32 = 3;

/// Environment variable naming the default directory for written reports.
pub const OUT_DIR_ENV: &str = "PLANELEAF_OUT_DIR";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: invalid JSON: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Foliation(#[from] FoliationError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error("the foliation is over {0} but the curve is over {1}")]
    FieldMismatch(String, String),
    #[error("invalid point {0}")]
    BadPoint(String),
    #[error("the point {0} is not on the curve")]
    PointNotOnCurve(String),
    #[error("corpus entry id {0} is used twice")]
    DuplicateId(String),
}

#[derive(Parser, Debug)]
#[command(name = "planeleaf", version, about = "Invariants of plane curves and leaves of plane foliations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Genus, Tjurina, Milnor and δ invariants of a curve.
    Invariants { curve: PathBuf },
    /// Resolution trees at the singular points, or at one given point.
    Resolve {
        curve: PathBuf,
        /// Homogeneous coordinates such as `0,0,1`.
        #[arg(long)]
        point: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Blowup length bound for a numerical semigroup, e.g. `3,4,5`.
    Semigroup { generators: String },
    #[command(subcommand)]
    Foliation(FoliationCommand),
    /// Evaluate every check for a curve with an optional foliation.
    Check {
        pair: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Use `≤` instead of `<` in the reduced annihilator bound.
        #[arg(long)]
        no_strict: bool,
    },
    #[command(subcommand)]
    Corpus(CorpusCommand),
}

#[derive(Subcommand, Debug)]
enum FoliationCommand {
    /// Least degree of a vector field annihilating the curve equation.
    MinDegree { curve: PathBuf },
    /// Singular scheme of a foliation.
    Singular { foliation: PathBuf },
}

#[derive(Subcommand, Debug)]
enum CorpusCommand {
    /// Check every corpus entry and compare with the stored reports.
    Verify {
        #[arg(long)]
        dir: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Overwrite the stored reports with the computed ones.
        #[arg(long)]
        bless: bool,
        /// Directory receiving one report per entry.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Split {
    pub a: String,
    pub b: String,
}

/// A curve with optional foliation, divisor and two-part split.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairFile {
    pub curve: CurveFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub foliation: Option<FoliationFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divisor: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<Split>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub id: String,
    #[serde(default)]
    pub tags: Vec<String>,
    pub curve: CurveFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub foliation: Option<FoliationFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divisor: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<Split>,
}

impl CorpusEntry {
    pub fn pair(&self) -> PairFile {
        PairFile {
            curve: self.curve.clone(),
            foliation: self.foliation.clone(),
            divisor: self.divisor.clone(),
            split: self.split.clone(),
        }
    }
}

macro_rules! corpus_item {
    ($id:literal) => {
        (
            include_str!(concat!("../corpus/", $id, ".json")),
            include_str!(concat!("../corpus/golden/", $id, ".json")),
        )
    };
}

/// Built-in corpus: entry text and stored report, in corpus order.
pub const BUILTIN_CORPUS: &[(&str, &str)] = &[
    corpus_item!("smooth_conic"),
    corpus_item!("smooth_cubic"),
    corpus_item!("smooth_quartic"),
    corpus_item!("nodal_cubic"),
    corpus_item!("cuspidal_cubic"),
    corpus_item!("cuspidal_cubic_divisor"),
    corpus_item!("tacnodal_quartic"),
    corpus_item!("triple_point_quartic"),
    corpus_item!("concurrent_lines"),
    corpus_item!("transverse_lines"),
    corpus_item!("conic_secant"),
    corpus_item!("conic_tangent"),
    corpus_item!("line_cusp"),
    corpus_item!("cusp_f5"),
    corpus_item!("cusp_f2"),
    corpus_item!("cusp_f3"),
    corpus_item!("wild_cusp_f3"),
    corpus_item!("wild_cusp_f2"),
];

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &str, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|source| CliError::Json { path: path.to_string(), source })
}

fn load<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    parse_json(&path.display().to_string(), &read(path)?)
}

/// Run a computation generic in the field named by a [`FieldSpec`].
macro_rules! with_field {
    ($spec:expr, |$k:ident| $body:expr) => {
        match $spec {
            FieldSpec::Q => {
                let $k = Rationals;
                $body
            }
            FieldSpec::Fq { p, k: deg } => {
                let $k = Gf::new(*p, *deg)?;
                $body
            }
        }
    };
}

fn report_in<F: Field>(field: &F, id: &str, pair: &PairFile, options: Options) -> Result<BoundReport, CliError> {
    let curve = CurveSpec::from_file(field, &pair.curve)?;
    let foliation = match &pair.foliation {
        Some(f) if f.field != pair.curve.field => {
            return Err(CliError::FieldMismatch(f.field.label(), pair.curve.field.label()));
        }
        Some(f) => Some(VectorField::from_file(field, f)?),
        None => None,
    };
    let divisor = match &pair.divisor {
        Some(text) => {
            let a = parse_poly(field, text)?;
            if a.is_zero() || !a.is_homogeneous() || a.is_constant() {
                return Err(BoundsError::BadDivisor(text.clone()).into());
            }
            Some(a)
        }
        None => None,
    };
    let split = match &pair.split {
        Some(s) => {
            let (a, b) = (parse_poly(field, &s.a)?, parse_poly(field, &s.b)?);
            let ok = a.is_homogeneous() && b.is_homogeneous() && a.mul(&b).div_exact(&curve.u).is_some_and(|r| r.is_constant());
            if !ok {
                return Err(BoundsError::BadSplit.into());
            }
            Some((a, b))
        }
        None => None,
    };
    let input = ReportInput {
        id: id.to_string(),
        field_label: pair.curve.field.label(),
        curve,
        foliation,
        divisor,
        split,
        options,
    };
    Ok(build_report(&input)?)
}

pub fn report_for(id: &str, pair: &PairFile, options: Options) -> Result<BoundReport, CliError> {
    with_field!(&pair.curve.field, |k| report_in(&k, id, pair, options))
}

fn summary_line(r: &BoundReport) -> String {
    let count = |v: Verdict| r.checks.iter().filter(|c| c.verdict == v).count();
    format!(
        "{:<28} {:<6} checks={:<3} holds={:<3} equality={:<3} skipped={:<3} violated={} external={}",
        r.curve,
        r.field,
        r.checks.len(),
        count(Verdict::Holds),
        count(Verdict::Equality),
        count(Verdict::Skipped),
        count(Verdict::Violated),
        count(Verdict::ExternalViolation)
    )
}

fn check_table(r: &BoundReport) -> String {
    let show = |v: Option<i64>| v.map_or("-".to_string(), |x| x.to_string());
    let mut out = String::new();
    for c in &r.checks {
        let rel = serde_json::to_value(c.relation).unwrap();
        let verdict = serde_json::to_value(c.verdict).unwrap();
        out.push_str(&format!(
            "{:<44} {:>6} {:<2} {:<6} {}",
            c.name,
            show(c.lhs),
            rel.as_str().unwrap(),
            show(c.rhs),
            verdict.as_str().unwrap()
        ));
        if let Some(reason) = &c.reason {
            out.push_str(&format!(" ({reason})"));
        }
        out.push('\n');
    }
    out
}

fn report_exit(r: &BoundReport) -> i32 {
    if r.violations() > 0 {
        EXIT_VIOLATION
    } else if r.evaluated() == 0 {
        EXIT_NOTHING_CHECKED
    } else {
        EXIT_OK
    }
}

fn invariants_in<F: Field>(field: &F, file: &CurveFile) -> Result<String, CliError> {
    let curve = CurveSpec::from_file(field, file)?;
    let analysis = analyze(&curve)?;
    let rec = invariant_record(&curve, &analysis);
    Ok(serde_json::to_string_pretty(&rec).unwrap() + "\n")
}

fn parse_point<F: Field>(field: &F, text: &str) -> Result<[F::Elem; 3], CliError> {
    let bad = || CliError::BadPoint(text.to_string());
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let mut coords = Vec::new();
    for part in parts {
        let terms = parse_rational_terms(part).map_err(|_| bad())?;
        let c = match terms.len() {
            0 => num_rational::BigRational::from_integer(0.into()),
            1 => {
                let (m, c) = terms.iter().next().unwrap();
                if !m.is_one() {
                    return Err(bad());
                }
                c.clone()
            }
            _ => return Err(bad()),
        };
        coords.push(field.from_rational(&c).ok_or_else(bad)?);
    }
    let point: [F::Elem; 3] = coords.try_into().map_err(|_| bad())?;
    if point.iter().all(|c| field.is_zero(c)) {
        return Err(bad());
    }
    Ok(point)
}

fn resolve_in<F: Field>(field: &F, file: &CurveFile, point: Option<&str>, json: bool) -> Result<String, CliError> {
    let curve = CurveSpec::from_file(field, file)?;
    let trees = match point {
        Some(text) => {
            let pt = parse_point(field, text)?;
            let full = [pt[0].clone(), pt[1].clone(), pt[2].clone(), field.zero()];
            if !field.is_zero(&curve.u.eval(&full)) {
                return Err(CliError::PointNotOnCurve(text.to_string()));
            }
            let label = format!("({})", pt.iter().map(|c| field.format(c)).collect::<Vec<_>>().join(":"));
            let (_, tree) = resolve_germ(&local_germ(&curve.u, &pt), &label).map_err(CurveError::from)?;
            vec![(tree.to_json(), tree.render())]
        }
        None => analyze(&curve)?.points.iter().map(|p| (p.tree.to_json(), p.tree.render())).collect(),
    };
    if json {
        let all: Vec<serde_json::Value> = trees.into_iter().map(|t| t.0).collect();
        Ok(serde_json::to_string_pretty(&all).unwrap() + "\n")
    } else {
        Ok(trees.into_iter().map(|t| t.1).collect())
    }
}

fn min_degree_in<F: Field>(field: &F, file: &CurveFile) -> Result<String, CliError> {
    let curve = CurveSpec::from_file(field, file)?;
    let ann = min_annihilator_degree(&curve)?;
    Ok(format!("m={} witness={} kernel_dim={}\n", ann.m, ann.witness.format(), ann.kernel_dim))
}

fn singular_in<F: Field>(field: &F, file: &FoliationFile) -> Result<String, CliError> {
    let fol = VectorField::from_file(field, file)?;
    let s = singular_scheme(&fol);
    let degree = match s.degree.finite() {
        Some(n) => n.to_string(),
        None => "INFINITE".to_string(),
    };
    let minors: Vec<String> = s.minors.iter().map(|m| m.to_string()).collect();
    Ok(format!(
        "m={} deg_S={} expected={} finite={} divisorial_part={} minors=[{}]\n",
        fol.m,
        degree,
        1 + fol.m + fol.m * fol.m,
        s.is_finite(),
        s.divisorial_part,
        minors.join(", ")
    ))
}

/// One corpus entry after evaluation.
struct Outcome {
    id: String,
    report: Result<BoundReport, String>,
    golden: Option<String>,
}

fn load_corpus_dir(dir: &Path) -> Result<Vec<(CorpusEntry, Option<String>)>, CliError> {
    let listing = std::fs::read_dir(dir).map_err(|source| CliError::Io { path: dir.display().to_string(), source })?;
    let mut files: Vec<PathBuf> = listing
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let mut out = Vec::new();
    for f in files {
        let entry: CorpusEntry = load(&f)?;
        let golden_path = dir.join("golden").join(format!("{}.json", entry.id));
        let golden = golden_path.is_file().then(|| read(&golden_path)).transpose()?;
        out.push((entry, golden));
    }
    Ok(out)
}

fn builtin_corpus() -> Vec<(CorpusEntry, Option<String>)> {
    BUILTIN_CORPUS
        .iter()
        .map(|(entry, golden)| {
            let e: CorpusEntry = serde_json::from_str(entry).expect("built-in corpus entries are valid");
            (e, Some(golden.to_string()))
        })
        .collect()
}

fn corpus_verify(
    dir: Option<&Path>,
    jobs: Option<usize>,
    bless: bool,
    out_dir: Option<PathBuf>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let entries = match dir {
        Some(d) => load_corpus_dir(d)?,
        None => builtin_corpus(),
    };
    if entries.is_empty() {
        writeln!(err, "no corpus entries found").ok();
        return Ok(EXIT_NOTHING_CHECKED);
    }
    let mut seen = std::collections::BTreeSet::new();
    for (e, _) in &entries {
        if !seen.insert(e.id.clone()) {
            return Err(CliError::DuplicateId(e.id.clone()));
        }
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.unwrap_or(0)).build().expect("thread pool");
    let outcomes: Vec<Outcome> = pool.install(|| {
        entries
            .par_iter()
            .map(|(entry, golden)| Outcome {
                id: entry.id.clone(),
                report: report_for(&entry.id, &entry.pair(), Options::default()).map_err(|e| e.to_string()),
                golden: golden.clone(),
            })
            .collect()
    });

    let mut code = EXIT_OK;
    let mut evaluated = 0;
    let (mut violations, mut mismatches, mut errors, mut external) = (0, 0, 0, 0);
    for o in &outcomes {
        let r = match &o.report {
            Ok(r) => r,
            Err(msg) => {
                writeln!(out, "{:<28} input error: {msg}", o.id).ok();
                errors += 1;
                continue;
            }
        };
        let json = r.to_json();
        let golden_state = match (&o.golden, bless) {
            (_, true) => "blessed",
            (Some(g), false) if *g == json => "golden=match",
            (Some(_), false) => {
                mismatches += 1;
                "golden=MISMATCH"
            }
            (None, false) => "golden=none",
        };
        writeln!(out, "{} {golden_state}", summary_line(r)).ok();
        violations += r.violations();
        external += r.external_violations();
        evaluated += r.evaluated();
        if bless {
            let d = dir.expect("blessing needs a corpus directory").join("golden");
            std::fs::create_dir_all(&d).map_err(|source| CliError::Io { path: d.display().to_string(), source })?;
            let p = d.join(format!("{}.json", o.id));
            std::fs::write(&p, &json).map_err(|source| CliError::Io { path: p.display().to_string(), source })?;
        }
        if let Some(od) = &out_dir {
            std::fs::create_dir_all(od).map_err(|source| CliError::Io { path: od.display().to_string(), source })?;
            let p = od.join(format!("{}.json", o.id));
            std::fs::write(&p, &json).map_err(|source| CliError::Io { path: p.display().to_string(), source })?;
        }
    }
    writeln!(
        out,
        "entries={} violations={violations} golden_mismatches={mismatches} input_errors={errors} external_violations={external}",
        outcomes.len()
    )
    .ok();
    if errors > 0 {
        code = EXIT_INPUT;
    }
    if violations > 0 || mismatches > 0 {
        code = EXIT_VIOLATION;
    } else if code == EXIT_OK && evaluated == 0 {
        code = EXIT_NOTHING_CHECKED;
    }
    Ok(code)
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Invariants { curve } => {
            let file: CurveFile = load(&curve)?;
            let text = with_field!(&file.field, |k| invariants_in(&k, &file))?;
            write!(out, "{text}").ok();
            Ok(EXIT_OK)
        }
        Command::Resolve { curve, point, json } => {
            let file: CurveFile = load(&curve)?;
            let text = with_field!(&file.field, |k| resolve_in(&k, &file, point.as_deref(), json))?;
            write!(out, "{text}").ok();
            Ok(EXIT_OK)
        }
        Command::Semigroup { generators } => {
            let s = NumericalSemigroup::parse(&generators)?;
            let v = hn_check(&s)?;
            writeln!(out, "{}", v.summary()).ok();
            Ok(if v.consistent { EXIT_OK } else { EXIT_VIOLATION })
        }
        Command::Foliation(FoliationCommand::MinDegree { curve }) => {
            let file: CurveFile = load(&curve)?;
            let text = with_field!(&file.field, |k| min_degree_in(&k, &file))?;
            write!(out, "{text}").ok();
            Ok(EXIT_OK)
        }
        Command::Foliation(FoliationCommand::Singular { foliation }) => {
            let file: FoliationFile = load(&foliation)?;
            let text = with_field!(&file.field, |k| singular_in(&k, &file))?;
            write!(out, "{text}").ok();
            Ok(EXIT_OK)
        }
        Command::Check { pair, report, no_strict } => {
            let text = read(&pair)?;
            let path = pair.display().to_string();
            let value: serde_json::Value = parse_json(&path, &text)?;
            let (id, file) = if value.get("id").is_some() {
                let entry: CorpusEntry = parse_json(&path, &text)?;
                (entry.id.clone(), entry.pair())
            } else {
                let id = pair.file_stem().map_or("input".to_string(), |s| s.to_string_lossy().into_owned());
                (id, parse_json::<PairFile>(&path, &text)?)
            };
            let r = report_for(&id, &file, Options { reduced_strict: !no_strict })?;
            write!(out, "{}", check_table(&r)).ok();
            writeln!(out, "{}", summary_line(&r)).ok();
            if let Some(path) = report {
                std::fs::write(&path, r.to_json())
                    .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
            }
            Ok(report_exit(&r))
        }
        Command::Corpus(CorpusCommand::Verify { dir, jobs, bless, out: out_dir }) => {
            if bless && dir.is_none() {
                writeln!(err, "--bless requires --dir").ok();
                return Ok(EXIT_INPUT);
            }
            let out_dir = out_dir.or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from));
            corpus_verify(dir.as_deref(), jobs, bless, out_dir, out, err)
        }
    }
}

/// Parse arguments and run; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            if e.use_stderr() {
                write!(err, "{e}").ok();
            } else {
                write!(out, "{e}").ok();
            }
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            writeln!(err, "error: {e}").ok();
            EXIT_INPUT
        }
    }
}
