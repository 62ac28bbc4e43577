//! Command-line front end. `run_command` is the whole tool; the binary only parses
//! arguments and prints.
//!
//! Exit codes: 0 success, 1 input error, 2 evidence refuted, 3 budget exhausted.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::bounds::{bounds_table, d_of_presentation, genus_bounds, kotschick_bounds, standard_families, table_to_csv, table_to_json, BoundsError, BoundsRow, GroupFamilyDescriptor};
use crate::loops::{theorem_main_pipeline, CExponentChoice, LoopError, PipelineOptions};
use crate::monodromy::{build_w, fiber_sum, homology_image, is_identity, is_symplectic, resolve_c_exponent, FiberConjugator, FiberSumSpec, MonodromyError};
use crate::pi1::{pi1_of_fiber_sum, Pi1Error};
use crate::presentation::{abelianization, iso_evidence, parse_presentation, tietze_simplify, FiniteGroupTable, GroupPresentation, PresentationError, Verdict};
use crate::surface::{curve_catalog, CurveConfig, SurfaceError, SurfaceModel};
use crate::Budgets;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_REFUTED: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Budget(_) => EXIT_BUDGET,
            _ => EXIT_INPUT,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Io { .. } => "io",
            CliError::Budget(_) => "budget",
        }
    }

    /// Machine-readable error object.
    pub fn to_json(&self) -> String {
        json!({ "error": { "kind": self.kind(), "message": self.to_string() } }).to_string()
    }
}

impl From<PresentationError> for CliError {
    fn from(e: PresentationError) -> Self {
        match e {
            PresentationError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<LoopError> for CliError {
    fn from(e: LoopError) -> Self {
        match e {
            LoopError::Presentation(p) => p.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

macro_rules! input_error {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Input(e.to_string())
            }
        })*
    };
}

input_error!(BoundsError, MonodromyError, Pi1Error, SurfaceError);

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum CExponentArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[default]
    Auto,
}

impl From<CExponentArg> for CExponentChoice {
    fn from(c: CExponentArg) -> Self {
        match c {
            CExponentArg::One => CExponentChoice::Fixed(1),
            CExponentArg::Two => CExponentChoice::Fixed(2),
            CExponentArg::Auto => CExponentChoice::Auto,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum CommandKind {
    /// Parse and normalize a presentation.
    Parse,
    /// Genus bounds for a family, a presentation, or the standard table.
    Bounds,
    /// Presentation to fiber sum to fundamental group, with evidence against the input.
    Construct,
    /// Fundamental group presentation of a fiber sum of W.
    Pi1,
    /// Tietze-simplify a presentation.
    Simplify,
    /// Compare two presentations with decidable invariants.
    Verify,
    /// Check that W acts trivially on homology and resolve the exponent of t_c.
    HomologyCheck,
    /// Export a factorization as JSON.
    Export,
}

#[derive(Debug, Clone, Args, Default)]
pub struct Flags {
    /// Inline presentation, e.g. "x, y | x^2 y^3, x^4".
    #[arg(long, global = true)]
    pub presentation: Option<String>,
    /// Presentation file (.gp).
    #[arg(long, global = true)]
    pub file: Option<PathBuf>,
    /// Genus, or an inclusive range `a..b` for homology-check.
    #[arg(long, global = true)]
    pub genus: Option<String>,
    #[arg(long, value_enum, global = true, default_value_t = CExponentArg::Auto)]
    pub c_exponent: CExponentArg,
    /// Comma-separated target groups for homomorphism counts.
    #[arg(long, global = true, default_value = "S3,Z4")]
    pub targets: String,
    #[arg(long, global = true, default_value_t = crate::presentation::DEFAULT_TIETZE_BUDGET)]
    pub tietze_budget: u64,
    #[arg(long, global = true, default_value_t = crate::presentation::DEFAULT_HOM_BUDGET)]
    pub hom_budget: u64,
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Family descriptor for `bounds`, e.g. `sl2z`, `free:3`, `abelian:2:2`.
    #[arg(long, global = true)]
    pub family: Option<String>,
    /// Second Betti number, enables Kotschick ranges in `bounds`.
    #[arg(long, global = true)]
    pub b2: Option<u64>,
    /// Second presentation for `verify`.
    #[arg(long, global = true)]
    pub against: Option<String>,
    #[arg(long, global = true)]
    pub against_file: Option<PathBuf>,
    /// Copies for `pi1`/`export`, separated by `;`: `1`, a curve label, or `twist:<word>`.
    #[arg(long, global = true)]
    pub conjugators: Option<String>,
    /// JSON curve configuration (odd-genus curves `a`, `b`, user curves).
    #[arg(long, global = true)]
    pub curves: Option<PathBuf>,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "lefschetz", version, about = "Lefschetz fibrations from finite presentations")]
pub struct CommandRequest {
    #[command(subcommand)]
    pub command: CommandKind,
    #[command(flatten)]
    pub flags: Flags,
}

impl CommandRequest {
    pub fn new(command: CommandKind) -> Self {
        CommandRequest { command, flags: Flags { targets: "S3,Z4".into(), tietze_budget: crate::presentation::DEFAULT_TIETZE_BUDGET, hom_budget: crate::presentation::DEFAULT_HOM_BUDGET, ..Flags::default() } }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    /// Report text, empty when written to `--out`, or an error object.
    pub output: String,
    /// `output` is an error object rather than a report.
    pub error: bool,
}

pub fn run_command(req: &CommandRequest) -> CommandOutcome {
    match dispatch(req) {
        Ok((exit_code, report)) => match &req.flags.out {
            Some(path) => match fs::write(path, &report) {
                Ok(()) => CommandOutcome { exit_code, output: String::new(), error: false },
                Err(e) => failure(CliError::Io { path: path.display().to_string(), message: e.to_string() }),
            },
            None => CommandOutcome { exit_code, output: report, error: false },
        },
        Err(e) => failure(e),
    }
}

fn failure(e: CliError) -> CommandOutcome {
    CommandOutcome { exit_code: e.exit_code(), output: e.to_json(), error: true }
}

fn dispatch(req: &CommandRequest) -> Result<(i32, String), CliError> {
    let f = &req.flags;
    if f.format == Format::Csv && req.command != CommandKind::Bounds {
        return Err(CliError::Input("--format csv is only available for bounds".into()));
    }
    match req.command {
        CommandKind::Parse => parse_cmd(f),
        CommandKind::Bounds => bounds_cmd(f),
        CommandKind::Construct => construct_cmd(f),
        CommandKind::Pi1 => pi1_cmd(f),
        CommandKind::Simplify => simplify_cmd(f),
        CommandKind::Verify => verify_cmd(f),
        CommandKind::HomologyCheck => homology_cmd(f),
        CommandKind::Export => export_cmd(f),
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })
}

fn presentation_from(inline: &Option<String>, file: &Option<PathBuf>, what: &str) -> Result<Option<GroupPresentation>, CliError> {
    let text = match (inline, file) {
        (Some(_), Some(_)) => return Err(CliError::Input(format!("give either the inline {what} or a file, not both"))),
        (Some(t), None) => t.clone(),
        (None, Some(path)) => read_file(path)?,
        (None, None) => return Ok(None),
    };
    parse_presentation(&text).map(Some).map_err(|e| CliError::Input(format!("{what}: {e}")))
}

fn required_presentation(f: &Flags) -> Result<GroupPresentation, CliError> {
    presentation_from(&f.presentation, &f.file, "presentation")?
        .ok_or_else(|| CliError::Input("a presentation is required (--presentation or --file)".into()))
}

fn budgets(f: &Flags) -> Budgets {
    Budgets { tietze: f.tietze_budget, hom: f.hom_budget }
}

fn targets(f: &Flags) -> Result<Vec<FiniteGroupTable>, CliError> {
    f.targets
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| FiniteGroupTable::builtin(t).map_err(CliError::from))
        .collect()
}

fn single_genus(f: &Flags) -> Result<Option<usize>, CliError> {
    f.genus
        .as_deref()
        .map(|g| g.trim().parse().map_err(|_| CliError::Input(format!("--genus: expected an integer, got `{g}`"))))
        .transpose()
}

fn genus_range(f: &Flags) -> Result<Vec<usize>, CliError> {
    let Some(spec) = f.genus.as_deref() else { return Ok(vec![2, 4, 6, 8]) };
    let bad = || CliError::Input(format!("--genus: expected `g` or `a..b`, got `{spec}`"));
    match spec.split_once("..") {
        Some((a, b)) => {
            let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if a > b {
                return Err(bad());
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![spec.trim().parse().map_err(|_| bad())?]),
    }
}

fn curve_config(f: &Flags) -> Result<Option<CurveConfig>, CliError> {
    f.curves.as_deref().map(|p| CurveConfig::from_json(&read_file(p)?).map_err(CliError::from)).transpose()
}

fn render<T: Serialize>(f: &Flags, value: &T, text: impl FnOnce() -> String) -> String {
    match f.format {
        Format::Json => serde_json::to_string_pretty(value).expect("reports are serializable") + "\n",
        _ => text(),
    }
}

fn parse_cmd(f: &Flags) -> Result<(i32, String), CliError> {
    let p = required_presentation(f)?;
    let ab = abelianization(&p);
    let report = json!({
        "presentation": p.to_string(),
        "generators": p.generator_count(),
        "relators": p.relator_count(),
        "total_syllable_length": p.total_syllable_length(),
        "d": d_of_presentation(&p),
        "abelianization": ab.to_string(),
    });
    let text = format!(
        "{}\ngenerators: {}\nrelators: {}\nd: {}\nabelianization: {}\n",
        p,
        p.generator_count(),
        p.relator_count(),
        d_of_presentation(&p),
        ab
    );
    Ok((EXIT_OK, render(f, &report, || text)))
}

#[derive(Serialize)]
struct PresentationBoundsReport {
    row: BoundsRow,
    kotschick: Option<crate::bounds::KotschickBounds>,
}

fn bounds_cmd(f: &Flags) -> Result<(i32, String), CliError> {
    let presentation = presentation_from(&f.presentation, &f.file, "presentation")?;
    let descriptors: Vec<GroupFamilyDescriptor> = match (&f.family, presentation) {
        (Some(_), Some(_)) => return Err(CliError::Input("give either --family or a presentation, not both".into())),
        (Some(family), None) => vec![family.parse()?],
        (None, Some(p)) => {
            let desc = GroupFamilyDescriptor::Presentation(p.clone());
            let row = BoundsRow::new(&desc)?;
            let kotschick = f.b2.map(|b2| {
                let ab = abelianization(&p);
                kotschick_bounds(ab.betti() as u64, b2, d_of_presentation(&p), &genus_bounds(&desc).expect("presentations are valid"))
            });
            if f.format == Format::Json {
                let report = PresentationBoundsReport { row, kotschick };
                return Ok((EXIT_OK, serde_json::to_string_pretty(&report).expect("serializable") + "\n"));
            }
            let mut out = if f.format == Format::Csv { table_to_csv(std::slice::from_ref(&row))? } else { format!("{row}\n") };
            if let Some(k) = kotschick {
                if f.format == Format::Text {
                    let _ = writeln!(out, "q in [{}, {}]{}", k.q_lower, k.q_upper, if k.q_feasible { "" } else { " (empty: d too large)" });
                    let _ = writeln!(out, "p in [{}, {}]", k.p_lower, k.p_upper);
                }
            }
            return Ok((EXIT_OK, out));
        }
        (None, None) => standard_families(),
    };
    let rows = bounds_table(&descriptors)?;
    let out = match f.format {
        Format::Csv => table_to_csv(&rows)?,
        Format::Json => table_to_json(&rows) + "\n",
        Format::Text => rows.iter().map(|r| format!("{r}\n")).collect(),
    };
    Ok((EXIT_OK, out))
}

fn construct_cmd(f: &Flags) -> Result<(i32, String), CliError> {
    let p = required_presentation(f)?;
    let options = PipelineOptions { genus: single_genus(f)?, c_exponent: f.c_exponent.into(), targets: targets(f)?, budgets: budgets(f) };
    let outcome = theorem_main_pipeline(&p, &options)?;
    let report = outcome.report()?;
    let code = if report.evidence.verdict == Verdict::Refuted { EXIT_REFUTED } else { EXIT_OK };
    let text = || {
        let mut s = String::new();
        let _ = writeln!(s, "input: {}", report.input);
        let _ = writeln!(s, "h = n + l - k = {} + {} - {} = {}", report.n, report.l, report.k, report.h);
        let _ = writeln!(s, "genus: {}  c exponent: {}", report.genus, report.c_exponent);
        let _ = writeln!(s, "copies of W: {}  singular fibers: {}", report.copies, report.singular_fibers);
        for l in &report.loops {
            let _ = writeln!(s, "loop {l}");
        }
        let _ = writeln!(s, "loops project to relators: {}", report.projection_matches);
        let _ = writeln!(s, "pi1: {} generators, {} relators", report.pi1_generators, report.pi1_relators);
        let _ = writeln!(s, "simplified: {}{}", report.simplified, if report.tietze_exhausted { " (budget exhausted)" } else { "" });
        write_evidence(&mut s, &report.evidence);
        s
    };
    Ok((code, render(f, &report, text)))
}

fn write_evidence(s: &mut String, e: &crate::presentation::IsoEvidence) {
    let _ = writeln!(s, "abelianization: {} vs {}", e.left_abelianization, e.right_abelianization);
    for row in &e.hom_counts {
        let _ = writeln!(s, "|Hom(-, {})|: {} vs {}", row.target, row.left, row.right);
    }
    let verdict = match e.verdict {
        Verdict::Consistent => "consistent",
        Verdict::Refuted => "refuted",
    };
    let _ = writeln!(s, "verdict: {verdict} (not a proof of isomorphism)");
}

/// `1`, a curve label, or `twist:<word in a_i, b_i>`, separated by `;`.
fn parse_conjugators(text: &str, genus: usize, config: Option<&CurveConfig>) -> Result<Vec<FiberConjugator>, CliError> {
    let model = SurfaceModel::new(genus)?;
    let catalog = curve_catalog(genus, config)?;
    let names = model.generator_names();
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            if item == "1" {
                Ok(FiberConjugator::Identity)
            } else if let Some(word) = item.strip_prefix("twist:") {
                let w = model.parse_word(word).map_err(|e| CliError::Input(format!("conjugator `{item}`: {e}")))?;
                Ok(FiberConjugator::Standard(w.letters().iter().map(|l| (names[l.generator].clone(), l.exponent)).collect()))
            } else {
                catalog
                    .get(item)
                    .cloned()
                    .map(FiberConjugator::Curve)
                    .ok_or_else(|| CliError::Input(format!("conjugator `{item}`: no such curve in genus {genus}")))
            }
        })
        .collect()
}

/// Fiber sum from `--presentation` (pipeline) or from `--genus` and `--conjugators`.
fn fiber_sum_from_flags(f: &Flags) -> Result<(FiberSumSpec, Option<u32>), CliError> {
    if let Some(p) = presentation_from(&f.presentation, &f.file, "presentation")? {
        let options = PipelineOptions { genus: single_genus(f)?, c_exponent: f.c_exponent.into(), targets: vec![], budgets: budgets(f) };
        let outcome = theorem_main_pipeline(&p, &options)?;
        return Ok((outcome.spec, Some(outcome.c_exponent)));
    }
    let genus = single_genus(f)?.ok_or_else(|| CliError::Input("--genus or a presentation is required".into()))?;
    let config = curve_config(f)?;
    let exponent = match (genus % 2, f.c_exponent) {
        (1, _) => 2,
        (_, CExponentArg::Auto) => resolve_c_exponent(genus)?.exponent,
        (_, CExponentArg::One) => 1,
        (_, CExponentArg::Two) => 2,
    };
    let base = build_w(genus, exponent, config.as_ref())?;
    let conjugators = match &f.conjugators {
        Some(text) => parse_conjugators(text, genus, config.as_ref())?,
        None => vec![FiberConjugator::Identity],
    };
    Ok((FiberSumSpec::new(base, conjugators)?, Some(exponent)))
}

fn pi1_cmd(f: &Flags) -> Result<(i32, String), CliError> {
    let (spec, _) = fiber_sum_from_flags(f)?;
    let p = pi1_of_fiber_sum(&spec)?;
    let simplified = tietze_simplify(&p, f.tietze_budget);
    let report = json!({
        "genus": spec.base.genus,
        "copies": spec.copies(),
        "presentation": p.to_string(),
        "abelianization": abelianization(&p).to_string(),
        "simplified": simplified.presentation.to_string(),
        "tietze_exhausted": simplified.exhausted,
    });
    let text = format!(
        "{}\nabelianization: {}\nsimplified: {}\n",
        p,
        abelianization(&p),
        simplified.presentation
    );
    let code = if simplified.exhausted { EXIT_BUDGET } else { EXIT_OK };
    Ok((code, render(f, &report, || text)))
}

fn simplify_cmd(f: &Flags) -> Result<(i32, String), CliError> {
    let p = required_presentation(f)?;
    let out = tietze_simplify(&p, f.tietze_budget);
    let report = json!({
        "input": p.to_string(),
        "simplified": out.presentation.to_string(),
        "steps": out.steps,
        "exhausted": out.exhausted,
    });
    let text = format!("{}\n", out.presentation);
    let code = if out.exhausted { EXIT_BUDGET } else { EXIT_OK };
    Ok((code, render(f, &report, || text)))
}

fn verify_cmd(f: &Flags) -> Result<(i32, String), CliError> {
    let left = required_presentation(f)?;
    let right = presentation_from(&f.against, &f.against_file, "--against presentation")?
        .ok_or_else(|| CliError::Input("verify needs --against or --against-file".into()))?;
    let evidence = iso_evidence(&left, &right, &targets(f)?, budgets(f))?;
    let code = if evidence.verdict == Verdict::Refuted { EXIT_REFUTED } else { EXIT_OK };
    let mut text = String::new();
    write_evidence(&mut text, &evidence);
    Ok((code, render(f, &evidence, || text)))
}

#[derive(Serialize)]
struct HomologyRow {
    genus: usize,
    exponent: Option<u32>,
    exponent_one_passes: Option<bool>,
    exponent_two_passes: Option<bool>,
    identity: Option<bool>,
    symplectic: Option<bool>,
    factors: Option<usize>,
    note: Option<String>,
}

fn homology_cmd(f: &Flags) -> Result<(i32, String), CliError> {
    let config = curve_config(f)?;
    let mut rows = Vec::new();
    for genus in genus_range(f)? {
        if genus < 2 {
            return Err(CliError::Input(format!("--genus: W needs genus at least 2, got {genus}")));
        }
        if genus % 2 == 1 {
            let Some(config) = config.as_ref() else {
                rows.push(HomologyRow { genus, exponent: None, exponent_one_passes: None, exponent_two_passes: None, identity: None, symplectic: None, factors: None, note: Some("skipped: odd genus needs --curves with a and b".into()) });
                continue;
            };
            let w = build_w(genus, 2, Some(config))?;
            let m = homology_image(&w);
            rows.push(HomologyRow { genus, exponent: None, exponent_one_passes: None, exponent_two_passes: None, identity: Some(is_identity(&m)), symplectic: Some(is_symplectic(&w.model(), &m)), factors: Some(w.len()), note: None });
            continue;
        }
        let r = resolve_c_exponent(genus)?;
        let exponent = match f.c_exponent {
            CExponentArg::One => 1,
            CExponentArg::Two => 2,
            CExponentArg::Auto => r.exponent,
        };
        let w = build_w(genus, exponent, None)?;
        let m = homology_image(&w);
        rows.push(HomologyRow {
            genus,
            exponent: Some(exponent),
            exponent_one_passes: Some(r.exponent_one_passes),
            exponent_two_passes: Some(r.exponent_two_passes),
            identity: Some(is_identity(&m)),
            symplectic: Some(is_symplectic(&w.model(), &m)),
            factors: Some(w.len()),
            note: r.warning,
        });
    }
    let ok = rows.iter().all(|r| r.identity != Some(false) && r.symplectic != Some(false));
    let code = if ok { EXIT_OK } else { EXIT_REFUTED };
    let text = || {
        let mut s = String::new();
        for r in &rows {
            match (r.exponent, r.identity) {
                (_, None) => {
                    let _ = writeln!(s, "genus {}: {}", r.genus, r.note.as_deref().unwrap_or(""));
                }
                (e, Some(id)) => {
                    let _ = write!(s, "genus {}: {} factors, identity on H_1: {id}, symplectic: {}", r.genus, r.factors.unwrap_or(0), r.symplectic == Some(true));
                    if let Some(e) = e {
                        let _ = write!(s, ", c exponent {e} (1 passes: {}, 2 passes: {})", r.exponent_one_passes == Some(true), r.exponent_two_passes == Some(true));
                    }
                    s.push('\n');
                    if let (Some(note), Some(_)) = (&r.note, e) {
                        let _ = writeln!(s, "  warning: {note}");
                    }
                }
            }
        }
        s
    };
    Ok((code, render(f, &rows, text)))
}

fn export_cmd(f: &Flags) -> Result<(i32, String), CliError> {
    let (spec, _) = fiber_sum_from_flags(f)?;
    let factorization = fiber_sum(&spec)?;
    Ok((EXIT_OK, factorization.to_json() + "\n"))
}

/// Entry point used by the binary.
pub fn main_with_args<I, T>(args: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match CommandRequest::try_parse_from(args) {
        Ok(req) => run_command(&req),
        Err(e) => {
            use clap::error::ErrorKind;
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandOutcome { exit_code: EXIT_OK, output: e.to_string(), error: false },
                _ => failure(CliError::Input(e.to_string().trim().to_string())),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> CommandOutcome {
        main_with_args(std::iter::once("lefschetz").chain(args.iter().copied()))
    }

    #[test]
    fn construct_cyclic() {
        let out = run(&["construct", "--presentation", "x | x^3", "--targets", "S3,Z3", "--genus", "2"]);
        assert_eq!(out.exit_code, EXIT_OK, "{}", out.output);
        assert!(out.output.contains("verdict: consistent"));
    }

    #[test]
    fn bounds_sl2z() {
        let out = run(&["bounds", "--family", "sl2z", "--format", "csv"]);
        assert_eq!(out.exit_code, EXIT_OK);
        assert!(out.output.lines().nth(1).unwrap().starts_with("sl2z,,2,4,,"));
    }

    #[test]
    fn homology_check_range() {
        let out = run(&["homology-check", "--genus", "2..8", "--format", "json"]);
        assert_eq!(out.exit_code, EXIT_OK, "{}", out.output);
        let v: serde_json::Value = serde_json::from_str(&out.output).unwrap();
        let rows = v.as_array().unwrap();
        assert_eq!(rows.len(), 7);
        assert_eq!(rows[0]["exponent"], 2);
        assert_eq!(rows[1]["identity"], serde_json::Value::Null);
    }

    #[test]
    fn errors_are_objects() {
        let out = run(&["parse", "--presentation", "x | x^0"]);
        assert_eq!(out.exit_code, EXIT_INPUT);
        let v: serde_json::Value = serde_json::from_str(&out.output).unwrap();
        assert_eq!(v["error"]["kind"], "input");
        assert!(v["error"]["message"].as_str().unwrap().contains("column 7"));
        let out = run(&["frobnicate"]);
        assert_eq!(out.exit_code, EXIT_INPUT);
        let out = run(&["parse"]);
        assert_eq!(out.exit_code, EXIT_INPUT);
        let out = run(&["simplify", "--presentation", "x | x", "--format", "csv"]);
        assert_eq!(out.exit_code, EXIT_INPUT);
    }

    #[test]
    fn verify_refuted_and_budget() {
        let out = run(&["verify", "--presentation", "x | x^2", "--against", "x | x^3"]);
        assert_eq!(out.exit_code, EXIT_REFUTED);
        let out = run(&["verify", "--presentation", "x, y | x y x^-1 y^-1", "--against", "x, y | x y x^-1 y^-1", "--targets", "A5", "--hom-budget", "10"]);
        assert_eq!(out.exit_code, EXIT_BUDGET);
        let out = run(&["simplify", "--presentation", "a, b, c | a, b, c", "--tietze-budget", "1"]);
        assert_eq!(out.exit_code, EXIT_BUDGET);
    }

    #[test]
    fn pi1_with_conjugators() {
        let out = run(&["pi1", "--genus", "2", "--conjugators", "1; a1; twist:b1^3", "--format", "json"]);
        assert_eq!(out.exit_code, EXIT_OK, "{}", out.output);
        let v: serde_json::Value = serde_json::from_str(&out.output).unwrap();
        assert_eq!(v["abelianization"], "Z_3");
        assert_eq!(v["copies"], 3);
        let bad = run(&["pi1", "--genus", "2", "--conjugators", "1; nope"]);
        assert_eq!(bad.exit_code, EXIT_INPUT);
        assert!(bad.output.contains("nope"));
    }

    #[test]
    fn json_is_deterministic() {
        let args = ["construct", "--presentation", "x, y | x^2, y^3, x y x y", "--format", "json", "--targets", "S3"];
        assert_eq!(run(&args), run(&args));
    }
}
