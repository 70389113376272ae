//! `hschw`: batch front end for harmonic-schwarzian.
//!
//! Exit codes: 0 success, 1 usage, 2 parse error, 3 domain error,
//! 4 numerical failure. Failures print one JSON record on stderr.

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use harmonic_schwarzian::analytic::AnalyticFunction;
use harmonic_schwarzian::harmonic::{catalog_map, render_grid, shear, QuadConfig, CATALOG_NAMES};
use harmonic_schwarzian::norms::{becker_check, hyperbolic_sup, NormOp, SearchConfig};
use harmonic_schwarzian::operators::{evaluate_op, Op};
use harmonic_schwarzian::verify::{run_suite, SUITES};
use harmonic_schwarzian::{Error, HarmonicMap, C64};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "hschw", version, about = "Schwarzian derivatives of planar harmonic mappings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List catalog names, or print one catalog map as JSON
    Catalog { name: Option<String> },
    /// Evaluate an operator at points
    Eval(EvalArgs),
    /// Estimate the hyperbolic norm of P_f or S_f
    Norm(NormArgs),
    /// Check the Becker-type univalence criterion on a grid
    Becker(BeckerArgs),
    /// Build a map by the shear construction and print it as JSON
    Shear(ShearArgs),
    /// Print images of a polar grid
    Render(RenderArgs),
    /// Run a self-check suite
    Verify { suite: String },
}

#[derive(Args)]
struct MapArgs {
    /// Catalog name (k, l, s, q2, K, L, S1, S2, K2)
    #[arg(long, conflicts_with_all = ["h", "spec"])]
    map: Option<String>,
    /// Analytic part h
    #[arg(long, requires = "second", allow_hyphen_values = true)]
    h: Option<String>,
    /// Co-analytic part g (with --h)
    #[arg(long, group = "second", allow_hyphen_values = true)]
    g: Option<String>,
    /// Dilatation ω (with --h)
    #[arg(long, group = "second", allow_hyphen_values = true)]
    omega: Option<String>,
    /// Map in the JSON interchange format
    #[arg(long, conflicts_with = "h")]
    spec: Option<String>,
}

impl MapArgs {
    fn resolve(&self) -> Result<HarmonicMap, Error> {
        if let Some(name) = &self.map {
            return catalog_map(name);
        }
        if let Some(text) = &self.spec {
            return HarmonicMap::from_json(text);
        }
        let h = match &self.h {
            Some(h) => AnalyticFunction::parse(h)?,
            None => {
                return Err(Error::InvalidConfig(
                    "give one of --map, --spec or --h with --g/--omega".into(),
                ))
            }
        };
        match (&self.g, &self.omega) {
            (Some(g), None) => Ok(HarmonicMap::from_parts(h, AnalyticFunction::parse(g)?)),
            (None, Some(w)) => Ok(HarmonicMap::from_dilatation(h, AnalyticFunction::parse(w)?)),
            _ => Err(Error::InvalidConfig("--h needs exactly one of --g, --omega".into())),
        }
    }
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, default_value_t = 256)]
    rays: usize,
    #[arg(long, default_value_t = 128)]
    radial: usize,
    #[arg(long, default_value_t = 1.0 - 1e-6)]
    rmax: f64,
    /// Skip the simplex refinement
    #[arg(long)]
    no_refine: bool,
    #[arg(long, default_value_t = 60)]
    iterations: usize,
}

impl SearchArgs {
    fn config(&self) -> SearchConfig {
        SearchConfig {
            rays: self.rays,
            radial: self.radial,
            rmax: self.rmax,
            refine: !self.no_refine,
            refine_iters: self.iterations,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpArg {
    Pre,
    Schw,
    Cdo,
    Jac,
    Dbarpre,
    Lap,
}

impl OpArg {
    fn op(self) -> Op {
        match self {
            OpArg::Pre => Op::Pre,
            OpArg::Schw => Op::Schw,
            OpArg::Cdo => Op::Cdo,
            OpArg::Jac => Op::Jac,
            OpArg::Dbarpre => Op::DbarPre,
            OpArg::Lap => Op::Lap,
        }
    }
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    map: MapArgs,
    #[arg(long, value_enum)]
    op: OpArg,
    /// Point as "re,im"; repeatable
    #[arg(long = "at", required = true, allow_hyphen_values = true, value_parser = parse_point)]
    at: Vec<C64>,
    /// Square root of ω, for --op cdo
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormOpArg {
    #[value(name = "P")]
    P,
    #[value(name = "S")]
    S,
}

#[derive(Args)]
struct NormArgs {
    #[command(flatten)]
    map: MapArgs,
    #[arg(long, value_enum)]
    op: NormOpArg,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct BeckerArgs {
    #[command(flatten)]
    map: MapArgs,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct ShearArgs {
    #[arg(long, allow_hyphen_values = true)]
    phi: String,
    #[arg(long, allow_hyphen_values = true)]
    omega: String,
    /// Shear direction in radians
    #[arg(long, allow_hyphen_values = true)]
    theta: f64,
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    map: MapArgs,
    #[arg(long, default_value_t = 64)]
    rays: usize,
    #[arg(long, default_value_t = 64)]
    circles: usize,
    #[arg(long, default_value_t = 1.0 - 1e-6)]
    rmax: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

fn parse_point(s: &str) -> Result<C64, String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("`{s}` is not of the form re,im"))?;
    let re: f64 = re.trim().parse().map_err(|_| format!("bad real part in `{s}`"))?;
    let im: f64 = im.trim().parse().map_err(|_| format!("bad imaginary part in `{s}`"))?;
    if !(re.is_finite() && im.is_finite()) {
        return Err(format!("`{s}` is not finite"));
    }
    Ok(C64::new(re, im))
}

/// Drops the sign of zero so output does not depend on how a zero arose.
fn clean(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

fn pair(z: C64) -> [f64; 2] {
    [clean(z.re), clean(z.im)]
}

#[derive(Serialize)]
struct EvalRecord {
    z: [f64; 2],
    op: &'static str,
    value: [f64; 2],
}

#[derive(Serialize)]
struct ErrorRecord {
    code: i32,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    at: Option<[f64; 2]>,
}

enum Failure {
    Lib(Error),
    Usage(String),
    Verify(i32),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("output error: {e}"))
    }
}

fn json_line(out: &mut impl Write, v: &impl Serialize) -> Result<(), Failure> {
    serde_json::to_writer(&mut *out, v).map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn inside_disk(z: C64) -> Result<(), Error> {
    if z.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            at: z,
            reason: "point is outside the unit disk".into(),
        })
    }
}

fn cmd_catalog(name: Option<String>, out: &mut impl Write) -> Result<(), Failure> {
    match name {
        None => json_line(out, &CATALOG_NAMES),
        Some(n) => {
            let f = catalog_map(&n)?;
            writeln!(out, "{}", f.to_json())?;
            Ok(())
        }
    }
}

fn cmd_eval(args: EvalArgs, out: &mut impl Write) -> Result<(), Failure> {
    let f = args.map.resolve()?;
    let q = match &args.q {
        Some(q) => Some(AnalyticFunction::parse(q)?),
        None => None,
    };
    let op = args.op.op();
    if let Format::Csv = args.format {
        writeln!(out, "re_z,im_z,re_value,im_value")?;
    }
    for z in args.at {
        inside_disk(z)?;
        let v = evaluate_op(&f, op, z, q.as_ref())?;
        match args.format {
            Format::Json => json_line(
                out,
                &EvalRecord {
                    z: pair(z),
                    op: op.name(),
                    value: pair(v.value),
                },
            )?,
            Format::Csv => {
                let (a, b) = (pair(z), pair(v.value));
                writeln!(out, "{:?},{:?},{:?},{:?}", a[0], a[1], b[0], b[1])?;
            }
        }
    }
    Ok(())
}

fn cmd_norm(args: NormArgs, out: &mut impl Write) -> Result<(), Failure> {
    let f = args.map.resolve()?;
    let op = match args.op {
        NormOpArg::P => NormOp::P,
        NormOpArg::S => NormOp::S,
    };
    let mut r = hyperbolic_sup(&f, op, &args.search.config())?;
    r.argmax = C64::new(clean(r.argmax.re), clean(r.argmax.im));
    json_line(out, &r)
}

fn cmd_becker(args: BeckerArgs, out: &mut impl Write) -> Result<(), Failure> {
    let f = args.map.resolve()?;
    let mut r = becker_check(&f, &args.search.config())?;
    r.witness = C64::new(clean(r.witness.re), clean(r.witness.im));
    json_line(out, &r)
}

fn cmd_shear(args: ShearArgs, out: &mut impl Write) -> Result<(), Failure> {
    let phi = AnalyticFunction::parse(&args.phi)?;
    let omega = AnalyticFunction::parse(&args.omega)?;
    let f = shear(&phi, &omega, args.theta)?;
    writeln!(out, "{}", f.to_json())?;
    Ok(())
}

#[derive(Serialize)]
struct RenderRecord {
    z: [f64; 2],
    f: [f64; 2],
}

fn cmd_render(args: RenderArgs, out: &mut impl Write) -> Result<(), Failure> {
    let f = args.map.resolve()?;
    let pts = render_grid(&f, args.rays, args.circles, args.rmax, &QuadConfig::default())?;
    match args.format {
        Format::Csv => {
            writeln!(out, "re_z,im_z,re_f,im_f")?;
            for p in pts {
                let (a, b) = (pair(p.z), pair(p.f));
                writeln!(out, "{:?},{:?},{:?},{:?}", a[0], a[1], b[0], b[1])?;
            }
        }
        Format::Json => {
            for p in pts {
                json_line(
                    out,
                    &RenderRecord {
                        z: pair(p.z),
                        f: pair(p.f),
                    },
                )?;
            }
        }
    }
    Ok(())
}

fn cmd_verify(suite: String, out: &mut impl Write) -> Result<(), Failure> {
    let summary = run_suite(&suite).ok_or_else(|| {
        Failure::Usage(format!("unknown suite `{suite}` (expected one of {})", SUITES.join(", ")))
    })?;
    json_line(out, &summary)?;
    if summary.failed > 0 {
        return Err(Failure::Verify(1));
    }
    Ok(())
}

fn report(code: i32, message: String, at: Option<C64>) -> ExitCode {
    let rec = ErrorRecord {
        code,
        message,
        at: at.map(pair),
    };
    eprintln!("{}", serde_json::to_string(&rec).expect("error record serializes"));
    ExitCode::from(code as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("usage error");
            return report(1, first.trim_start_matches("error: ").to_string(), None);
        }
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = match cli.command {
        Command::Catalog { name } => cmd_catalog(name, &mut out),
        Command::Eval(a) => cmd_eval(a, &mut out),
        Command::Norm(a) => cmd_norm(a, &mut out),
        Command::Becker(a) => cmd_becker(a, &mut out),
        Command::Shear(a) => cmd_shear(a, &mut out),
        Command::Render(a) => cmd_render(a, &mut out),
        Command::Verify { suite } => cmd_verify(suite, &mut out),
    };
    let flushed = out.flush();
    match result {
        Ok(()) => match flushed {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => report(1, format!("output error: {e}"), None),
        },
        Err(Failure::Lib(e)) => report(e.class().exit_code(), e.to_string(), e.at()),
        Err(Failure::Usage(m)) => report(1, m, None),
        Err(Failure::Verify(code)) => ExitCode::from(code as u8),
    }
}
