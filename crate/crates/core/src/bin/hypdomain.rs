use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::Signed;

use hypdomain::bianchi::{bianchi_input, df_survey, squarefree_up_to, survey_csv, survey_json};
use hypdomain::df::{
    axis_of_centers, bianchi_reflection_extension, coxeter_extension, df_check, reflection_extension, trace_axis_check,
};
use hypdomain::domain::{dirichlet_domain_at_height, ford_domain, DomainKind, FundamentalPolyhedron, GroupInput, ReductionOptions};
use hypdomain::io::{error_json, polyhedron_from_json, polyhedron_json, CheckReport, GeneratorFile};
use hypdomain::scalar::{parse_scalar, ScalarKind};
use hypdomain::{init_threads, svg, Error, Model};

/// Dirichlet and Ford fundamental domains, DF checks and the Bianchi survey.
#[derive(Parser, Debug)]
#[command(name = "hypdomain", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a fundamental domain and write it as polyhedron JSON.
    Domain(DomainArgs),
    /// Build or load a domain and run DF and extension checks.
    Check(CheckArgs),
    /// DF survey over Bianchi groups.
    Survey(SurveyArgs),
}

#[derive(Args, Debug)]
struct GroupArgs {
    /// `psl2z`, `bianchi:D` or `file:PATH` (generator file).
    #[arg(long, conflicts_with = "bianchi")]
    group: Option<String>,
    /// Shorthand for `--group bianchi:D`.
    #[arg(long)]
    bianchi: Option<u64>,
    /// Dirichlet center: `i`, `2i`, `3/2j`, a bare height such as `2`, or `inf` for the Ford domain.
    #[arg(long, default_value = "1")]
    center: String,
    #[arg(long)]
    bound_init: Option<f64>,
    #[arg(long)]
    bound_max: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args, Debug)]
struct DomainArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Polyhedron JSON destination (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Check a saved polyhedron instead of building one.
    #[arg(long, conflicts_with_all = ["group", "bianchi"])]
    poly: Option<PathBuf>,
    #[arg(long)]
    df: bool,
    #[arg(long)]
    coxeter: bool,
    #[arg(long)]
    reflection: bool,
    /// Report destination; the table is printed to stdout regardless.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args, Debug)]
struct SurveyArgs {
    /// Every squarefree d up to this value.
    #[arg(long)]
    dmax: Option<u64>,
    /// Individual discriminants (repeatable).
    #[arg(long = "d")]
    d: Vec<u64>,
    /// Comma-separated discriminants.
    #[arg(long, value_delimiter = ',')]
    survey: Vec<u64>,
    #[arg(long)]
    bound_init: Option<f64>,
    #[arg(long)]
    bound_max: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

enum Failure {
    Checks,
    Err(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Err(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Config(_) | Error::NotSquarefree(_) => 2,
        Error::Io(_) | Error::Json(_) => 4,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let detail = e.to_string();
            let first = detail.lines().next().unwrap_or_default();
            let doc = serde_json::json!({ "error": { "code": "usage", "message": first.trim_start_matches("error: ") } });
            eprintln!("{doc}");
            return ExitCode::from(2);
        }
    };
    let run = init_threads().map_err(Failure::from).and_then(|_| match cli.command {
        Command::Domain(a) => cmd_domain(a),
        Command::Check(a) => cmd_check(a),
        Command::Survey(a) => cmd_survey(a),
    });
    match run {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Err(e)) => {
            let mut doc = error_json(&e);
            if let Error::BoundExhausted { bound, partial } = &e {
                doc["error"]["bound"] = hypdomain::io::num(*bound);
                doc["error"]["faces"] = serde_json::json!(partial.faces.len());
            }
            eprintln!("{doc}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn options(init: Option<f64>, max: Option<f64>, tol: Option<f64>, base: ReductionOptions) -> Result<ReductionOptions, Error> {
    let mut o = base;
    if let Some(x) = init {
        o.norm_bound_initial = x;
    }
    if let Some(x) = max {
        o.norm_bound_max = x;
    }
    if let Some(x) = tol {
        o.tol = x;
    }
    o.validate()?;
    Ok(o)
}

fn group_input(a: &GroupArgs) -> Result<GroupInput, Error> {
    let source = match (&a.group, a.bianchi) {
        (Some(g), None) => g.clone(),
        (None, Some(d)) => format!("bianchi:{d}"),
        (None, None) => return Err(Error::Config("a group source is required (--group or --bianchi)".into())),
        (Some(_), Some(_)) => return Err(Error::Config("--group and --bianchi are exclusive".into())),
    };
    if source == "psl2z" {
        return Ok(GroupInput::psl2z());
    }
    if let Some(d) = source.strip_prefix("bianchi:") {
        let d: u64 = d.parse().map_err(|_| Error::Parse(format!("bad discriminant {d:?}")))?;
        return bianchi_input(d);
    }
    if let Some(path) = source.strip_prefix("file:") {
        let text = std::fs::read_to_string(path)?;
        return GeneratorFile::parse(&text)?.to_input();
    }
    Err(Error::Config(format!("unknown group {source:?}; expected psl2z, bianchi:D or file:PATH")))
}

enum Center {
    Height(BigRational),
    Infinity,
}

fn parse_center(s: &str, model: Model) -> Result<Center, Error> {
    let s = s.trim();
    if s == "inf" || s == "infinity" {
        return Ok(Center::Infinity);
    }
    let unit = match model {
        Model::H2 => 'i',
        Model::H3 => 'j',
    };
    let body = match s.strip_suffix(unit) {
        Some("") => "1",
        Some(b) => b.strip_suffix('*').unwrap_or(b),
        None if s.ends_with('i') || s.ends_with('j') => {
            return Err(Error::Config(format!("center {s:?} must lie on the axis above 0, written with {unit}")))
        }
        None => s,
    };
    let t = parse_scalar(body)?
        .exact_parts()
        .filter(|(_, im, _)| num_traits::Zero::is_zero(im))
        .map(|(re, _, _)| re)
        .ok_or_else(|| Error::Parse(format!("center height {body:?} must be an exact rational")))?;
    if !t.is_positive() {
        return Err(Error::Config(format!("center height must be positive, got {t}")));
    }
    Ok(Center::Height(t))
}

fn build(a: &GroupArgs) -> Result<(FundamentalPolyhedron, GroupInput), Error> {
    let input = group_input(a)?;
    let base = if input.bianchi_d.is_some() { ReductionOptions::survey() } else { ReductionOptions::default() };
    let opts = options(a.bound_init, a.bound_max, a.tol, base)?;
    let poly = match parse_center(&a.center, input.model)? {
        Center::Infinity => ford_domain(&input, &opts)?,
        Center::Height(t) => dirichlet_domain_at_height(&input, &t, &opts)?,
    };
    Ok((poly, input))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn cmd_domain(a: DomainArgs) -> Result<(), Failure> {
    if a.format == Some(Format::Csv) {
        return Err(Error::Config("domain output is JSON only".into()).into());
    }
    let (poly, _) = build(&a.group)?;
    if let Some(p) = &a.svg {
        std::fs::write(p, svg::render(&poly)).map_err(Error::from)?;
    }
    write_out(a.out.as_deref(), &pretty(&polyhedron_json(&poly)))?;
    if poly.report.passed {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

/// Discriminant of the imaginary quadratic field the pairings live in.
fn field_of(poly: &FundamentalPolyhedron) -> Option<u64> {
    poly.faces.iter().filter_map(|f| f.pairing.as_ref()).find_map(|g| match g.kind() {
        ScalarKind::Quad(d) => Some(d),
        _ => None,
    })
}

fn cmd_check(a: CheckArgs) -> Result<(), Failure> {
    let (poly, bianchi_d) = match &a.poly {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(Error::from)?;
            let doc: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            let tol = a.group.tol.unwrap_or(ReductionOptions::default().tol);
            let poly = polyhedron_from_json(&doc, tol)?;
            let d = if poly.model == Model::H3 { field_of(&poly) } else { None };
            (poly, d)
        }
        None => {
            let (poly, input) = build(&a.group)?;
            (poly, input.bianchi_d)
        }
    };
    let run_df = a.df || !(a.coxeter || a.reflection);
    let mut rep = CheckReport::default();
    if run_df {
        let v = df_check(&poly, &poly.stabilizer);
        if v.is_df {
            if matches!(poly.kind, DomainKind::Dirichlet { .. }) {
                rep.axis = Some(axis_of_centers(&poly));
            }
            rep.trace_axis = Some(trace_axis_check(&poly));
        }
        rep.df = Some(v);
    }
    if a.reflection {
        rep.reflection = Some(match (poly.model, bianchi_d) {
            (Model::H3, Some(d)) => bianchi_reflection_extension(d, &poly),
            (Model::H3, None) => Err(Error::Config("the H3 reflection extension needs a Bianchi group".into())),
            (Model::H2, _) => reflection_extension(&poly),
        });
    }
    if a.coxeter {
        rep.coxeter = Some(coxeter_extension(&poly));
    }
    if let Some(p) = &a.svg {
        std::fs::write(p, svg::render(&poly)).map_err(Error::from)?;
    }
    let text = match a.format {
        None => rep.table(&poly),
        Some(Format::Json) => pretty(&rep.to_json(&poly)),
        Some(Format::Csv) => {
            let mut s = String::from("check,status\n");
            for line in rep.table(&poly).lines() {
                let mut it = line.splitn(2, char::is_whitespace);
                let (k, v) = (it.next().unwrap_or_default(), it.next().unwrap_or_default().trim());
                s += &format!("{k},\"{v}\"\n");
            }
            s
        }
    };
    match &a.out {
        Some(p) => {
            std::fs::write(p, pretty(&rep.to_json(&poly))).map_err(Error::from)?;
            print!("{text}");
        }
        None => print!("{text}"),
    }
    if rep.passed(&poly) {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn cmd_survey(a: SurveyArgs) -> Result<(), Failure> {
    let mut ds: Vec<u64> = a.d.iter().chain(&a.survey).copied().collect();
    if let Some(m) = a.dmax {
        ds.extend(squarefree_up_to(m));
    }
    if ds.is_empty() {
        ds = squarefree_up_to(19);
    }
    ds.sort_unstable();
    ds.dedup();
    let opts = options(a.bound_init, a.bound_max, a.tol, ReductionOptions::survey())?;
    let rows = df_survey(&ds, &opts);
    let text = match a.format {
        Format::Csv => survey_csv(&rows),
        Format::Json => pretty(&survey_json(&rows)),
    };
    write_out(a.out.as_deref(), &text)?;
    Ok(())
}
