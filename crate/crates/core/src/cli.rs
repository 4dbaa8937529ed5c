//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a check came out red, 2 bad flags or input,
//! 3 degenerate quotient, 4 no Calabi-Yau period found.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::calabi_yau::{applicable_formulas, cy_brute, FormulaId};
use crate::dot::to_dot;
use crate::dynkin::{DynkinType, Family, Sign};
use crate::error::{Result, StabError};
use crate::mesh_hom::{hom_dim_quotient, hom_dim_z};
use crate::parallel::Execution;
use crate::stable_quiver::{quotient, stable_quiver_of, AdmissibleGroup, AlgebraLabel};
use crate::theorem_suite::{eligible_instances, verify_batch, Bounds, InstanceReport, Theorem};
use crate::zquiver::{ChartA, ChartD, ZVertex};

#[derive(Debug, Parser)]
#[command(
    name = "stabcat",
    version,
    about = "Stable AR quivers, mesh Homs and higher cluster category checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the quotient quiver as a DOT digraph.
    Build(BuildArgs),
    /// Print a Hom dimension in ZΔ or in a quotient.
    Hom(HomArgs),
    /// Calabi-Yau dimension of an algebra label.
    Cy(CyArgs),
    /// Verify theorem instances and write a JSON report.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    #[value(name = "A")]
    A,
    #[value(name = "D")]
    D,
    #[value(name = "E")]
    E,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::A => Family::A,
            FamilyArg::D => Family::D,
            FamilyArg::E => Family::E,
        }
    }
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[arg(long = "type", ignore_case = true)]
    pub family: FamilyArg,
    #[arg(long)]
    pub rank: usize,
    #[arg(long)]
    pub circumference: u64,
    #[arg(long)]
    pub flip: bool,
    #[arg(long)]
    pub show_tau: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct HomArgs {
    #[arg(long = "type", ignore_case = true)]
    pub family: FamilyArg,
    #[arg(long)]
    pub rank: usize,
    /// Work in the quotient of this circumference instead of ZΔ.
    #[arg(long)]
    pub circumference: Option<u64>,
    #[arg(long, requires = "circumference")]
    pub flip: bool,
    /// `(i,j)`, `(i,j,+)` or `t:node`.
    #[arg(long, allow_hyphen_values = true)]
    pub from: String,
    #[arg(long, allow_hyphen_values = true)]
    pub to: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Formula,
    Brute,
    Both,
}

#[derive(Debug, Args)]
pub struct CyArgs {
    #[arg(long)]
    pub label: String,
    #[arg(long, value_enum, default_value = "both")]
    pub method: Method,
    /// Print a JSON object instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    #[value(name = "A")]
    A,
    #[value(name = "D")]
    D,
    #[value(name = "E")]
    E,
    #[value(name = "all")]
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, ignore_case = true)]
    pub theorem: TheoremArg,
    #[arg(long)]
    pub u_max: u64,
    #[arg(long, default_value_t = 8)]
    pub rank_max: usize,
    #[arg(long)]
    pub json: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaEntry {
    pub formula_id: FormulaId,
    pub d: u64,
}

/// One line of the `verify` JSON report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub label: String,
    pub u: u64,
    pub circumference: u64,
    pub flip: bool,
    pub cy_formula: Vec<FormulaEntry>,
    pub cy_brute: u64,
    pub tilting_ok: bool,
    pub endo_ok: bool,
    pub negext_ok: bool,
    pub shape_ok: bool,
    pub elapsed_ms: u64,
}

impl ReportRecord {
    pub fn cy_ok(&self) -> bool {
        self.cy_brute == self.u + 1 && self.cy_formula.iter().any(|f| f.d == self.u + 1)
    }

    pub fn all_green(&self) -> bool {
        self.cy_ok() && self.tilting_ok && self.endo_ok && self.negext_ok && self.shape_ok
    }
}

impl From<&InstanceReport> for ReportRecord {
    fn from(r: &InstanceReport) -> Self {
        ReportRecord {
            label: r.label.to_string(),
            u: r.u,
            circumference: r.circumference,
            flip: r.flip,
            cy_formula: r
                .report
                .cy_formulas
                .iter()
                .map(|f| FormulaEntry {
                    formula_id: f.formula_id,
                    d: f.d,
                })
                .collect(),
            cy_brute: r.report.cy_value,
            tilting_ok: r.report.tilting_ok,
            endo_ok: r.report.endo_ok,
            negext_ok: r.report.negext_ok,
            shape_ok: r.shape_ok,
            elapsed_ms: r.elapsed_ms,
        }
    }
}

pub fn exit_code(e: &StabError) -> i32 {
    match e {
        StabError::DegenerateQuotient(_) => 3,
        StabError::NoQuiverPeriod(_) => 4,
        StabError::InvalidDynkin { .. }
        | StabError::NoInvolution(_)
        | StabError::UnsupportedFlip(_)
        | StabError::MalformedLabel(_)
        | StabError::OutOfChart(_)
        | StabError::BadCoordinate(_)
        | StabError::IllFormedWord { .. } => 2,
        _ => 1,
    }
}

/// Parses `(i,j)`, `(i,j,+)`, `(i,j,-)` or `t:node`.
pub fn parse_vertex(d: DynkinType, text: &str) -> Result<ZVertex> {
    let bad = || StabError::BadCoordinate(text.to_string());
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some((t, node)) = s.split_once(':') {
        let t: i64 = t.parse().map_err(|_| bad())?;
        let node = d.parse_node(node).ok_or_else(bad)?;
        return Ok(ZVertex::new(t, node));
    }
    let body = s
        .strip_prefix('(')
        .and_then(|b| b.strip_suffix(')'))
        .ok_or_else(bad)?;
    let parts: Vec<&str> = body.split(',').collect();
    let (i, j): (i64, i64) = match parts.as_slice() {
        [i, j] | [i, j, _] => (i.parse().map_err(|_| bad())?, j.parse().map_err(|_| bad())?),
        _ => return Err(bad()),
    };
    let sign = match parts.get(2) {
        None => None,
        Some(&"+") | Some(&"p") => Some(Sign::Plus),
        Some(&"-") | Some(&"m") => Some(Sign::Minus),
        Some(_) => return Err(bad()),
    };
    match (d.family(), sign) {
        (Family::A, None) => ChartA::new(d.rank(), i, j)?.to_vertex(d),
        (Family::D, _) => ChartD::new(d.rank(), i, j, sign)?.to_vertex(d),
        _ => Err(bad()),
    }
}

pub fn run(cli: Cli) -> i32 {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let res = match cli.command {
        Command::Build(a) => cmd_build(&a, &mut out),
        Command::Hom(a) => cmd_hom(&a, &mut out),
        Command::Cy(a) => cmd_cy(&a, &mut out),
        Command::Verify(a) => cmd_verify(&a, &mut out),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn io_err(e: std::io::Error) -> StabError {
    StabError::BadCoordinate(format!("i/o: {e}"))
}

pub fn cmd_build(a: &BuildArgs, out: &mut impl Write) -> Result<i32> {
    let d = DynkinType::new(a.family.into(), a.rank)?;
    let q = quotient(d, AdmissibleGroup::new(a.circumference, a.flip))?;
    fs::write(&a.out, to_dot(&q, a.show_tau)).map_err(io_err)?;
    writeln!(
        out,
        "{}: {} vertices, {} arrows -> {}",
        q,
        q.vertex_count(),
        q.arrows().len(),
        a.out.display()
    )
    .map_err(io_err)?;
    Ok(0)
}

pub fn cmd_hom(a: &HomArgs, out: &mut impl Write) -> Result<i32> {
    let d = DynkinType::new(a.family.into(), a.rank)?;
    let x = parse_vertex(d, &a.from)?;
    let y = parse_vertex(d, &a.to)?;
    let dim = match a.circumference {
        Some(l) => hom_dim_quotient(&quotient(d, AdmissibleGroup::new(l, a.flip))?, x, y),
        None => hom_dim_z(d, x, y),
    };
    writeln!(out, "{dim}").map_err(io_err)?;
    Ok(0)
}

#[derive(Serialize)]
struct CyJson {
    label: String,
    circumference: u64,
    flip: bool,
    formulas: Vec<crate::calabi_yau::CyFormulaResult>,
    brute: Option<u64>,
}

pub fn cmd_cy(a: &CyArgs, out: &mut impl Write) -> Result<i32> {
    let label: AlgebraLabel = a.label.parse()?;
    let q = stable_quiver_of(&label)?;
    let formulas = match a.method {
        Method::Brute => Vec::new(),
        _ => applicable_formulas(&q),
    };
    let brute = match a.method {
        Method::Formula => None,
        _ => Some(cy_brute(&q)?),
    };
    if a.json {
        let j = CyJson {
            label: label.to_string(),
            circumference: label.circumference(),
            flip: label.flip(),
            formulas,
            brute,
        };
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&j).expect("serializable")
        )
        .map_err(io_err)?;
        return Ok(0);
    }
    writeln!(
        out,
        "label {label} circumference {} flip {}",
        label.circumference(),
        label.flip()
    )
    .map_err(io_err)?;
    if a.method != Method::Brute {
        if formulas.is_empty() {
            writeln!(out, "formula none").map_err(io_err)?;
        }
        for f in &formulas {
            let r = f.r.map_or(String::new(), |r| format!(" r={r}"));
            writeln!(
                out,
                "formula {} d={}{r} modulus={}",
                f.formula_id, f.d, f.modulus
            )
            .map_err(io_err)?;
        }
    }
    if let Some(b) = brute {
        writeln!(out, "brute {b}").map_err(io_err)?;
    }
    Ok(0)
}

fn theorems_for(t: TheoremArg) -> Vec<Theorem> {
    Theorem::ALL
        .into_iter()
        .filter(|th| match t {
            TheoremArg::A => th.family_letter() == 'A',
            TheoremArg::D => th.family_letter() == 'D',
            TheoremArg::E => th.family_letter() == 'E',
            TheoremArg::All => true,
        })
        .collect()
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut impl Write) -> Result<i32> {
    let bounds = Bounds {
        u_max: a.u_max,
        rank_max: a.rank_max,
    };
    let instances: Vec<_> = theorems_for(a.theorem)
        .into_iter()
        .flat_map(|t| eligible_instances(t, bounds))
        .collect();
    let mut records = Vec::new();
    for r in verify_batch(&instances, Execution::default()) {
        records.push(ReportRecord::from(&r?));
    }
    let json = serde_json::to_string_pretty(&records).expect("serializable");
    fs::write(&a.json, json).map_err(io_err)?;
    let red: Vec<_> = records.iter().filter(|r| !r.all_green()).collect();
    writeln!(out, "{} instances, {} red", records.len(), red.len()).map_err(io_err)?;
    for r in &red {
        writeln!(out, "red: {} u={}", r.label, r.u).map_err(io_err)?;
    }
    Ok(if red.is_empty() { 0 } else { 1 })
}
