//! The `icmod` command line.
//!
//! Inputs are ideal JSON `{"gens": [[a, b], ...]}` or matrix JSON
//! `{"rank": e, "cols": [...]}`, given inline (starting with `{`), as a file
//! path, or as `-` for stdin. Exit codes: 0 success, 2 input error,
//! 3 certificate failure, 4 bounds guardrail.

pub mod atlas;
pub mod render;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::classify::{
    audit_lemma55, audit_prop51, audit_thm42_hypotheses, audit_thm44, classify, normalize,
    AuditError,
};
use crate::modmat::{build_mie, colength_module_with, ModError, PresMatrix, DEFAULT_TRUNC_CAP};
use crate::multiplicity::{
    check_km, mult_ideal_area, mult_ideal_reduction, mult_module, MultError, Sampling,
    DEFAULT_TRIALS,
};
use crate::staircase::{
    integral_closure, is_simple, newton_vertices, zariski_factor, MonomialIdeal, StaircaseError,
};

use atlas::{atlas_rows, write_csv, write_jsonl, AtlasFilter, MAX_BOX};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("certificate failure: {0}")]
    Certificate(String),
    #[error("bounds: {0}")]
    Bounds(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io(_) => 2,
            CliError::Certificate(_) => 3,
            CliError::Bounds(_) => 4,
        }
    }
}

impl From<StaircaseError> for CliError {
    fn from(e: StaircaseError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ModError> for CliError {
    fn from(e: ModError) -> Self {
        match e {
            ModError::NonMonomialIdeal { .. }
            | ModError::ZeroFittingIdeal { .. }
            | ModError::NotFiniteColength { .. } => CliError::Certificate(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<MultError> for CliError {
    fn from(e: MultError) -> Self {
        match e {
            MultError::Uncertified { .. } => CliError::Certificate(e.to_string()),
            MultError::Module(m) => m.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<AuditError> for CliError {
    fn from(e: AuditError) -> Self {
        match e {
            AuditError::Module(m) => m.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "icmod",
    version,
    about = "Exact workbench for modules built from bivariate monomial ideals"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized reductions.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Trials for randomized reductions.
    #[arg(long, global = true, default_value_t = DEFAULT_TRIALS)]
    pub trials: usize,
    /// Largest truncation level for length certificates.
    #[arg(long = "trunc-cap", global = true, default_value_t = DEFAULT_TRUNC_CAP)]
    pub trunc_cap: u32,
    #[command(subcommand)]
    pub command: Command,
}

/// A rank or every admissible rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankSel {
    All,
    One(usize),
}

impl FromStr for RankSel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            return Ok(RankSel::All);
        }
        s.parse()
            .map(RankSel::One)
            .map_err(|_| format!("expected a rank or `all`, got `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Area,
    Reduction,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AuditKind {
    Prop51,
    Thm44,
    Lemma55,
    Thm42,
    Km,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AtlasFormat {
    Csv,
    Jsonl,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Integral closure and Newton polygon of an ideal.
    Closure { input: String },
    /// Factorization of a complete ideal into simple complete ideals.
    Factor { input: String },
    /// Integral closedness and indecomposability of M(I; e).
    Classify {
        input: String,
        #[arg(long, default_value = "all")]
        e: RankSel,
    },
    /// Presentation matrix of M(I; e).
    Construct {
        input: String,
        #[arg(long)]
        e: usize,
    },
    /// Certified length of R/I, of F/M(I; e), or of a matrix cokernel.
    Length {
        input: String,
        #[arg(long)]
        e: Option<usize>,
    },
    /// Multiplicity of an ideal or module.
    Mult {
        input: String,
        #[arg(long)]
        e: Option<usize>,
        #[arg(long, value_enum, default_value = "both")]
        route: Route,
    },
    /// Numeric audits of the length and multiplicity identities.
    Audit {
        input: String,
        #[arg(long, value_enum)]
        kind: AuditKind,
        #[arg(long)]
        e: Option<usize>,
        /// Factor indices forming the first part, e.g. `0,2`; all splits when omitted.
        #[arg(long, value_delimiter = ',')]
        split: Option<Vec<usize>>,
    },
    /// Verdict rows for every complete normalized staircase in a box.
    Atlas {
        #[arg(long = "max-a")]
        max_a: u32,
        #[arg(long = "max-b")]
        max_b: u32,
        #[arg(long, value_enum, default_value = "csv")]
        format: AtlasFormat,
        /// Include staircases that are not complete.
        #[arg(long)]
        all_staircases: bool,
        /// Keep only non-simple ideals.
        #[arg(long)]
        nonsimple: bool,
        /// Restrict to one rank.
        #[arg(long)]
        e: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// SVG drawing of the staircase and its Newton polygon.
    Render {
        input: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A parsed command input.
#[derive(Clone, Debug)]
pub enum Input {
    Ideal(MonomialIdeal),
    Matrix(PresMatrix),
}

fn read_source(src: &str, stdin: &mut dyn Read) -> Result<String, CliError> {
    let trimmed = src.trim_start();
    if trimmed.starts_with('{') {
        Ok(src.to_string())
    } else if src == "-" {
        let mut s = String::new();
        stdin
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(src).map_err(|e| CliError::Input(format!("{src}: {e}")))
    }
}

pub fn parse_input(text: &str) -> Result<Input, CliError> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed JSON: {e}")))?;
    let bad = |e: serde_json::Error| CliError::Input(e.to_string());
    if v.get("gens").is_some() {
        Ok(Input::Ideal(serde_json::from_value(v).map_err(bad)?))
    } else if v.get("rank").is_some() {
        Ok(Input::Matrix(serde_json::from_value(v).map_err(bad)?))
    } else {
        Err(CliError::Input(
            "expected an object with `gens` or `rank`".into(),
        ))
    }
}

fn load(src: &str, stdin: &mut dyn Read) -> Result<Input, CliError> {
    parse_input(&read_source(src, stdin)?)
}

fn load_ideal(src: &str, stdin: &mut dyn Read) -> Result<MonomialIdeal, CliError> {
    match load(src, stdin)? {
        Input::Ideal(i) if i.is_primary() => Ok(i),
        Input::Ideal(_) => Err(StaircaseError::NotPrimary.into()),
        Input::Matrix(_) => Err(CliError::Input("expected an ideal, got a matrix".into())),
    }
}

/// A matrix input, or `M(I; e)` for an ideal input with a rank.
fn load_module(
    src: &str,
    e: Option<usize>,
    stdin: &mut dyn Read,
) -> Result<(PresMatrix, Option<MonomialIdeal>), CliError> {
    match (load(src, stdin)?, e) {
        (Input::Matrix(p), _) => Ok((p, None)),
        (Input::Ideal(i), Some(e)) => {
            let (n, _) = normalize(&i);
            Ok((build_mie(&n, e)?, Some(n)))
        }
        (Input::Ideal(_), None) => Err(CliError::Input("an ideal input needs --e here".into())),
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn sampling(&self) -> Sampling {
        Sampling {
            trials: self.cli.trials,
            seed: self.cli.seed,
            trunc_cap: self.cli.trunc_cap,
        }
    }

    /// Writes `value` as one JSON line, or `text` otherwise.
    fn emit<T: Serialize>(
        &mut self,
        value: &T,
        text: impl FnOnce() -> String,
    ) -> Result<(), CliError> {
        if self.cli.json {
            writeln!(
                self.out,
                "{}",
                serde_json::to_string(value).expect("serializable")
            )?;
        } else {
            writeln!(self.out, "{}", text())?;
        }
        Ok(())
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<(), CliError> {
    let mut ctx = Ctx { cli, out };
    match &cli.command {
        Command::Closure { input } => cmd_closure(&mut ctx, &load_ideal(input, stdin)?),
        Command::Factor { input } => cmd_factor(&mut ctx, &load_ideal(input, stdin)?),
        Command::Classify { input, e } => cmd_classify(&mut ctx, &load_ideal(input, stdin)?, *e),
        Command::Construct { input, e } => {
            let (n, _) = normalize(&load_ideal(input, stdin)?);
            let p = build_mie(&n, *e)?;
            ctx.emit(&p, || format_matrix(&p))
        }
        Command::Length { input, e } => cmd_length(&mut ctx, input, *e, stdin),
        Command::Mult { input, e, route } => cmd_mult(&mut ctx, input, *e, *route, stdin),
        Command::Audit {
            input,
            kind,
            e,
            split,
        } => cmd_audit(&mut ctx, input, *kind, *e, split.as_deref(), stdin),
        Command::Atlas {
            max_a,
            max_b,
            format,
            all_staircases,
            nonsimple,
            e,
            out,
        } => {
            if *max_a > MAX_BOX || *max_b > MAX_BOX {
                return Err(CliError::Bounds(format!(
                    "box sides are limited to {MAX_BOX}"
                )));
            }
            let filter = AtlasFilter {
                include_incomplete: *all_staircases,
                nonsimple_only: *nonsimple,
                e: *e,
            };
            let rows = atlas_rows(*max_a, *max_b, filter);
            let mut buf = Vec::new();
            match format {
                AtlasFormat::Csv => write_csv(&rows, &mut buf)?,
                AtlasFormat::Jsonl => write_jsonl(&rows, &mut buf)?,
            }
            match out {
                Some(path) => std::fs::write(path, buf)?,
                None => ctx.out.write_all(&buf)?,
            }
            Ok(())
        }
        Command::Render { input, out } => {
            let svg = render::render_svg(&load_ideal(input, stdin)?);
            match out {
                Some(path) => std::fs::write(path, svg)?,
                None => ctx.out.write_all(svg.as_bytes())?,
            }
            Ok(())
        }
    }
}

fn cmd_closure(ctx: &mut Ctx, i: &MonomialIdeal) -> Result<(), CliError> {
    let closure = integral_closure(i);
    let vertices: Vec<(u32, u32)> = newton_vertices(i)
        .vertices
        .iter()
        .map(|&m| m.into())
        .collect();
    let gap: Vec<(u32, u32)> = i.closure_gap().iter().map(|&m| m.into()).collect();
    let value = json!({
        "ideal": i,
        "closure": closure,
        "vertices": vertices,
        "complete": closure == *i,
        "gap": gap,
    });
    ctx.emit(&value, || {
        format!(
            "closure {closure}\nvertices {vertices:?}\ncomplete {}",
            closure == *i
        )
    })
}

fn cmd_factor(ctx: &mut Ctx, i: &MonomialIdeal) -> Result<(), CliError> {
    let f = zariski_factor(i)?;
    let value = json!({ "ideal": i, "factors": f.factors, "simple": is_simple(i) });
    ctx.emit(&value, || {
        f.factors
            .iter()
            .map(|s| format!("closure<x^{}, y^{}>^{}", s.p, s.q, s.mult))
            .collect::<Vec<_>>()
            .join(" * ")
    })
}

fn cmd_classify(ctx: &mut Ctx, i: &MonomialIdeal, sel: RankSel) -> Result<(), CliError> {
    let r = normalize(i).0.r();
    let ranks: Vec<usize> = match sel {
        RankSel::All => (2..=r).collect(),
        RankSel::One(e) => vec![e],
    };
    for e in ranks {
        let v = classify(i, e);
        if !v.construction_ok {
            return Err(CliError::Input(v.error.unwrap_or_default()));
        }
        if let Some(err) = &v.error {
            return Err(CliError::Certificate(err.clone()));
        }
        ctx.emit(&v, || {
            let fit = v
                .fitting
                .as_ref()
                .map(|f| f.to_string())
                .unwrap_or_default();
            let mut line = format!(
                "e={} integrally_closed={} verdict={} fitting={fit}",
                v.e,
                v.integrally_closed,
                v.indecomposable.label()
            );
            if let Some(w) = v.witnesses.first() {
                line.push_str(&format!(" witness={w}"));
            }
            line
        })?;
    }
    Ok(())
}

fn format_matrix(p: &PresMatrix) -> String {
    let mut lines = Vec::with_capacity(p.rank());
    for row in 0..p.rank() {
        let cells: Vec<String> = (0..p.ncols())
            .map(|c| p.entry(row, c).to_string())
            .collect();
        lines.push(cells.join("\t"));
    }
    lines.join("\n")
}

fn cmd_length(
    ctx: &mut Ctx,
    input: &str,
    e: Option<usize>,
    stdin: &mut dyn Read,
) -> Result<(), CliError> {
    let cap = ctx.cli.trunc_cap;
    let parsed = load(input, stdin)?;
    let (p, lattice) = match (parsed, e) {
        (Input::Ideal(i), None) => {
            if !i.is_primary() {
                return Err(StaircaseError::NotPrimary.into());
            }
            (PresMatrix::from_ideal(&i), Some(i.colength()))
        }
        (Input::Ideal(i), Some(e)) => (build_mie(&normalize(&i).0, e)?, None),
        (Input::Matrix(p), _) => (p, None),
    };
    let cert = colength_module_with(&p, cap)?;
    let value = json!({ "length": cert.length, "lattice_count": lattice, "certificate": cert });
    ctx.emit(&value, || {
        format!("length {} (certified at level {})", cert.length, cert.level)
    })
}

fn cmd_mult(
    ctx: &mut Ctx,
    input: &str,
    e: Option<usize>,
    route: Route,
    stdin: &mut dyn Read,
) -> Result<(), CliError> {
    let s = ctx.sampling();
    match (load(input, stdin)?, e) {
        (Input::Ideal(i), None) => {
            if !i.is_primary() {
                return Err(StaircaseError::NotPrimary.into());
            }
            let area = matches!(route, Route::Area | Route::Both)
                .then(|| mult_ideal_area(&i))
                .transpose()?;
            let reduction = matches!(route, Route::Reduction | Route::Both)
                .then(|| mult_ideal_reduction(&i, s))
                .transpose()?;
            let agree = match (&area, &reduction) {
                (Some(a), Some(r)) => Some(*a == r.value),
                _ => None,
            };
            let value = json!({ "area": area, "reduction": reduction, "agree": agree });
            ctx.emit(&value, || {
                let mut parts = Vec::new();
                if let Some(a) = area {
                    parts.push(format!("area {a}"));
                }
                if let Some(r) = &reduction {
                    parts.push(format!("reduction {} (certified {})", r.value, r.certified));
                }
                parts.join(", ")
            })
        }
        (parsed, e) => {
            if route == Route::Area {
                return Err(CliError::Input(
                    "the area route applies to ideals only".into(),
                ));
            }
            let p = match (parsed, e) {
                (Input::Matrix(p), _) => p,
                (Input::Ideal(i), Some(e)) => build_mie(&normalize(&i).0, e)?,
                (Input::Ideal(_), None) => unreachable!(),
            };
            let sample = mult_module(&p, s)?;
            ctx.emit(&sample, || {
                format!(
                    "multiplicity {} (certified {})",
                    sample.value, sample.certified
                )
            })
        }
    }
}

fn cmd_audit(
    ctx: &mut Ctx,
    input: &str,
    kind: AuditKind,
    e: Option<usize>,
    split: Option<&[usize]>,
    stdin: &mut dyn Read,
) -> Result<(), CliError> {
    match kind {
        AuditKind::Prop51 => {
            let i = load_ideal(input, stdin)?;
            let e = e.ok_or_else(|| CliError::Input("prop51 needs --e".into()))?;
            let a = audit_prop51(&i, e)?;
            ctx.emit(&a, || {
                format!("lhs {} expected {} pass {}", a.lhs, a.expected, a.pass)
            })
        }
        AuditKind::Thm44 => {
            let (p, _) = load_module(input, e, stdin)?;
            let a = audit_thm44(&p)?;
            ctx.emit(&a, || {
                format!("diff {} bound {} pass {}", a.diff, a.bound, a.pass)
            })
        }
        AuditKind::Thm42 => {
            let (p, _) = load_module(input, e, stdin)?;
            let h = audit_thm42_hypotheses(&p)?;
            ctx.emit(&h, || {
                format!(
                    "ord_ge_e_plus_1 {} i1_closure_is_m_pow {}",
                    h.ord_ge_e_plus_1, h.i1_closure_is_m_pow
                )
            })
        }
        AuditKind::Km => {
            let (p, _) = load_module(input, e, stdin)?;
            let k = check_km(&p, ctx.sampling())?;
            ctx.emit(&k, || {
                format!("lhs {} rhs {} equal {}", k.lhs, k.rhs, k.equal)
            })
        }
        AuditKind::Lemma55 => {
            let i = load_ideal(input, stdin)?;
            let splits: Vec<Vec<usize>> = match split {
                Some(s) => vec![s.to_vec()],
                None => {
                    crate::classify::lemma55_hypotheses(&i)?;
                    let n = zariski_factor(&i)?.expanded().len();
                    proper_splits(n)
                }
            };
            for part in splits {
                let a = audit_lemma55(&i, &part)?;
                let value = json!({ "split": part, "audit": a });
                ctx.emit(&value, || {
                    format!(
                        "split {part:?} lhs {} rhs {} strict {}",
                        a.lhs, a.rhs, a.strict
                    )
                })?;
            }
            Ok(())
        }
    }
}

/// Every proper nonempty subset of `0..n` that contains index 0, so each
/// unordered split appears once.
pub fn proper_splits(n: usize) -> Vec<Vec<usize>> {
    (1u64..(1u64 << n) - 1)
        .filter(|m| m & 1 == 1)
        .map(|m| (0..n).filter(|k| m >> k & 1 == 1).collect())
        .collect()
}

/// Parses `args` and runs them; returns the process exit code. Errors go to `err`.
pub fn main_with<I, T>(
    args: I,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match run(&cli, stdin, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "icmod: {e}");
            e.exit_code()
        }
    }
}
