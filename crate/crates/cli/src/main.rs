//! `sgrr`: virtual dimensions of supermap moduli, super Riemann-Roch on split
//! supercurves, and the randomized identity suites.
//!
//! Exit codes: 0 on success, 1 on invalid input, 2 when an identity or
//! consistency check fails.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sgrr_core::bundle::BundleSpec;
use sgrr_core::grr::{check_sgrr, chi_closed_form, chi_super, rr_oracle};
use sgrr_core::modulidim::{SweepRanges, VdimRequest};
use sgrr_core::scalar::{frac, parse_rational, rat, rational_serde, Rational};
use sgrr_core::suite::{run_grr, run_identities, SuiteReport};
use sgrr_core::{ChowModel, ModuliParams, OddPartConvention, SplitSupercurve, SuperEuler, TargetSpec, VdimReport};

#[derive(Parser)]
#[command(name = "sgrr", version, about = "Super Riemann-Roch and supermap moduli dimensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Virtual dimension of the stable supermap stack, closed and assembled.
    Vdim(VdimArgs),
    /// Super Euler characteristic of a bundle on a split supercurve.
    Chi(ChiArgs),
    /// Randomized super Riemann-Roch check on split supercurves.
    GrrCheck(SuiteArgs),
    /// Sweep P^{r|s} targets and write a CSV table.
    Table(TableArgs),
    /// Run the characteristic-class identity suites.
    Identities(SuiteArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TargetKind {
    Psuper,
    Custom,
    Point,
}

#[derive(Args)]
struct VdimArgs {
    #[arg(long, value_enum, default_value = "psuper")]
    target: TargetKind,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    s: Option<u32>,
    #[arg(long)]
    d: Option<u32>,
    /// int ch_1(T_Y) over beta_0 (custom targets).
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    tau: Option<Rational>,
    /// int ch_1(F_Y) over beta_0 (custom targets).
    #[arg(long = "phi-int", value_parser = rational_arg, allow_hyphen_values = true)]
    phi_int: Option<Rational>,
    #[arg(long, default_value_t = 0)]
    g: u32,
    #[arg(long, default_value_t = 0)]
    ns: u32,
    #[arg(long, default_value_t = 0)]
    rr: u32,
    /// Read a {"params":..,"target":..} request instead of flags ("-" for stdin).
    #[arg(long, conflicts_with_all = ["r", "s", "d", "tau", "phi_int"])]
    request: Option<PathBuf>,
    /// Print only the JSON report.
    #[arg(long)]
    json: bool,
    /// Use (1-g)(s+2) in the odd part, as printed for P^{r|s} targets.
    #[arg(long)]
    use_paper_dimmod2_sign: bool,
}

#[derive(Args)]
struct ChiArgs {
    #[arg(long, default_value_t = 0)]
    g: u32,
    /// Ramond punctures; sets deg L = g - 1 + rr/2.
    #[arg(long, default_value_t = 0)]
    rr: u32,
    /// Explicit deg L, overriding --rr.
    #[arg(long = "deg-l", value_parser = rational_arg, allow_hyphen_values = true)]
    deg_l: Option<Rational>,
    /// Degrees of the even line summands of E/JE.
    #[arg(long = "even-degs", value_delimiter = ',', value_parser = rational_arg, allow_hyphen_values = true)]
    even_degs: Vec<Rational>,
    /// Degrees of the P-shifted odd line summands of E/JE.
    #[arg(long = "odd-degs", value_delimiter = ',', value_parser = rational_arg, allow_hyphen_values = true)]
    odd_degs: Vec<Rational>,
    /// JSON bundle spec ("-" for stdin), replacing --even-degs/--odd-degs.
    #[arg(long, conflicts_with_all = ["even_degs", "odd_degs"])]
    bundle: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    cases: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct TableArgs {
    /// Values as `a..b` (inclusive), `a,b,c` or a single value.
    #[arg(long, default_value = "0..3", value_parser = values_arg)]
    g: Axis,
    #[arg(long, default_value = "0..4", value_parser = values_arg)]
    ns: Axis,
    #[arg(long, default_value = "0,2,4,6", value_parser = values_arg)]
    rr: Axis,
    #[arg(long, default_value = "1..4", value_parser = values_arg)]
    r: Axis,
    #[arg(long, default_value = "0..3", value_parser = values_arg)]
    s: Axis,
    #[arg(long, default_value = "0..3", value_parser = values_arg)]
    d: Axis,
    /// Output path; stdout when omitted.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    use_paper_dimmod2_sign: bool,
}

enum Failure {
    Invalid(String),
    Identity(String),
}

impl From<sgrr_core::Error> for Failure {
    fn from(e: sgrr_core::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// One sweep axis as given on the command line.
#[derive(Clone)]
struct Axis(Vec<u32>);

fn values_arg(s: &str) -> Result<Axis, String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("not a count: {t:?}"));
    if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
        if a > b {
            return Err(format!("empty range {s:?}"));
        }
        Ok(Axis((a..=b).collect()))
    } else {
        s.split(',').map(num).collect::<Result<_, _>>().map(Axis)
    }
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("report types serialize")
}

fn convention(printed: bool) -> OddPartConvention {
    if printed {
        OddPartConvention::PrintedProjective
    } else {
        OddPartConvention::Derived
    }
}

fn vdim(args: VdimArgs) -> CmdResult {
    let (params, target) = match &args.request {
        Some(path) => {
            let req: VdimRequest = serde_json::from_str(&read_input(path)?)
                .map_err(|e| Failure::Invalid(format!("bad request: {e}")))?;
            (req.params, req.target)
        }
        None => {
            let need = |v: Option<u32>, flag: &str| {
                v.ok_or_else(|| Failure::Invalid(format!("--target needs --{flag}")))
            };
            let target = match args.target {
                TargetKind::Psuper => TargetSpec::PSuper {
                    r: need(args.r, "r")?,
                    s: args.s.unwrap_or(0),
                    d: args.d.unwrap_or(0),
                },
                TargetKind::Custom => TargetSpec::Custom {
                    r: need(args.r, "r")?,
                    s: args.s.unwrap_or(0),
                    tau: args.tau.clone().ok_or_else(|| Failure::Invalid("custom target needs --tau".into()))?,
                    phi_int: args
                        .phi_int
                        .clone()
                        .ok_or_else(|| Failure::Invalid("custom target needs --phi-int".into()))?,
                },
                TargetKind::Point => TargetSpec::Point,
            };
            (ModuliParams::new(args.g, args.ns, args.rr), target)
        }
    };
    let report = VdimReport::evaluate(&params, &target, convention(args.use_paper_dimmod2_sign))?;
    let mut out = io::stdout().lock();
    if !args.json {
        writeln!(out, "{}", report.closed)?;
        if let Some(a) = &report.assembled {
            writeln!(out, "assembled: {a}")?;
        }
        if let Some(b) = &report.bosonic_dimension {
            writeln!(out, "bosonic_dimension: {b}")?;
        }
        if let Some(p) = &report.properness_hint {
            writeln!(out, "properness_hint: {}", to_json(p).trim_matches('"'))?;
        }
        match report.consistency {
            Some(c) => writeln!(out, "consistency: {c}")?,
            None => writeln!(out, "consistency: unavailable")?,
        }
    }
    writeln!(out, "{}", to_json(&report))?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    match report.mismatch_note() {
        Some(note) => Err(Failure::Identity(note)),
        None => Ok(()),
    }
}

#[derive(Serialize)]
struct ChiReport {
    curve: SplitSupercurve,
    #[serde(with = "rational_serde")]
    deg_l: Rational,
    chi_super: SuperEuler,
    closed_form: SuperEuler,
    rr_oracle: SuperEuler,
    consistent: bool,
}

fn chi(args: ChiArgs) -> CmdResult {
    let deg_l = args
        .deg_l
        .clone()
        .unwrap_or_else(|| rat(args.g as i64 - 1) + frac(args.rr as i64, 2));
    let curve = SplitSupercurve::new(args.g, deg_l.clone());
    let model = ChowModel::Curve { genus: args.g };
    let spec = match &args.bundle {
        Some(path) => serde_json::from_str::<BundleSpec>(&read_input(path)?)
            .map_err(|e| Failure::Invalid(format!("bad bundle spec: {e}")))?,
        None => BundleSpec::CurveDegrees {
            model: None,
            even_degs: args.even_degs.clone(),
            odd_degs: args.odd_degs.clone(),
        },
    };
    let u = spec.resolve(Some(model))?;
    let report = ChiReport {
        chi_super: chi_super(&curve, &u)?,
        closed_form: chi_closed_form(&curve, &u)?,
        rr_oracle: rr_oracle(&curve, &u)?,
        consistent: check_sgrr(&curve, &u)?,
        curve,
        deg_l,
    };
    let mut out = io::stdout().lock();
    if !args.json {
        writeln!(out, "{}", report.chi_super)?;
        writeln!(out, "closed_form: {}", report.closed_form)?;
        writeln!(out, "rr_oracle: {}", report.rr_oracle)?;
        writeln!(out, "consistency: {}", report.consistent)?;
    }
    writeln!(out, "{}", to_json(&report))?;
    if report.consistent && report.closed_form == report.chi_super {
        Ok(())
    } else {
        Err(Failure::Identity(format!(
            "chi^S mismatch: todd route {}, componentwise {}, closed form {}",
            report.chi_super, report.rr_oracle, report.closed_form
        )))
    }
}

fn print_suites(reports: &[SuiteReport], json: bool) -> CmdResult {
    let mut out = io::stdout().lock();
    if json {
        writeln!(out, "{}", to_json(&reports))?;
    } else {
        for r in reports {
            writeln!(out, "{r}")?;
        }
    }
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.ok())
        .map(|r| match &r.counterexample {
            Some(c) => format!("{} failed (seed {}): {c}", r.name, r.seed),
            None => format!("{} failed (seed {})", r.name, r.seed),
        })
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Identity(failed.join("\n")))
    }
}

fn table(args: TableArgs) -> CmdResult {
    let ranges = SweepRanges {
        g: args.g.0,
        n_ns: args.ns.0,
        n_rr: args.rr.0,
        r: args.r.0,
        s: args.s.0,
        d: args.d.0,
    };
    let conv = convention(args.use_paper_dimmod2_sign);
    let sink: Box<dyn Write> = match &args.csv {
        Some(path) => Box::new(fs::File::create(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(sink);
    let header = ["g", "n_ns", "n_rr", "r", "s", "d", "vdim_body", "vdim_soul", "bosonic_dim", "proper"];
    w.write_record(header).map_err(|e| Failure::Invalid(e.to_string()))?;
    let mut first_mismatch = None;
    let mut mismatches = 0usize;
    for (p, t) in ranges.points() {
        let rep = VdimReport::evaluate(&p, &t, conv)?;
        let TargetSpec::PSuper { r, s, d } = t else { unreachable!("sweeps use P^{{r|s}}") };
        let proper = rep.properness_hint.map(|h| h == sgrr_core::Properness::Proper);
        let row = [
            p.g.to_string(),
            p.n_ns.to_string(),
            p.n_rr.to_string(),
            r.to_string(),
            s.to_string(),
            d.to_string(),
            rep.closed.body.to_string(),
            rep.closed.soul.to_string(),
            rep.bosonic_dimension.as_ref().map(ToString::to_string).unwrap_or_default(),
            proper.map(|b| b.to_string()).unwrap_or_default(),
        ];
        w.write_record(&row).map_err(|e| Failure::Invalid(e.to_string()))?;
        if let Some(note) = rep.mismatch_note() {
            mismatches += 1;
            first_mismatch.get_or_insert(note);
        }
        for warning in rep.warnings {
            eprintln!("warning: {warning}");
        }
    }
    w.flush()?;
    match first_mismatch {
        Some(note) => Err(Failure::Identity(format!(
            "{mismatches} inconsistent sweep points; first: {note}"
        ))),
        None => Ok(()),
    }
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Vdim(a) => vdim(a),
        Command::Chi(a) => chi(a),
        Command::GrrCheck(a) => print_suites(&[run_grr(a.seed, a.cases.unwrap_or(1000))], a.json),
        Command::Table(a) => table(a),
        Command::Identities(a) => print_suites(&run_identities(a.seed, a.cases.unwrap_or(500)), a.json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Identity(msg)) => {
            eprintln!("identity failure: {msg}");
            ExitCode::from(2)
        }
    }
}
