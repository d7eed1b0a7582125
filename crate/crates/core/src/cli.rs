//! Batch command-line frontend.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cover::{minimize, Cover, MinimizeReport};
use crate::cube::ProblemSpec;
use crate::error::Error;
use crate::io::{
    emit_expression, emit_json, emit_pla, parse_minterm_spec, parse_pla, VariableNaming,
};
use crate::oracle;
use crate::primes::generate_primes;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_GUARD: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "qmin",
    version,
    about = "Quine-McCluskey minimizer for single-output functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimize a function and print the cover.
    Minimize(InputArgs),
    /// Print the prime implicants.
    Primes(InputArgs),
    /// Minimize, then check the result against the brute-force oracle.
    Verify(InputArgs),
    /// Time random problems and print CSV statistics.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
#[group(id = "source", required = true, multiple = false)]
struct Source {
    /// Inline spec: `vars=<n>; minterms=<list>; dontcares=<list>`.
    #[arg(long, group = "source")]
    spec: Option<String>,
    /// File containing a minterm spec.
    #[arg(long, group = "source")]
    spec_file: Option<PathBuf>,
    /// Single-output PLA file.
    #[arg(long, group = "source")]
    pla: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct InputArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value_t = Format::Expr)]
    format: Format,
    #[arg(long, value_enum, default_value_t = Naming::Letters)]
    naming: Naming,
    /// Print reduction columns and charts before the result.
    #[arg(long)]
    show_trace: bool,
    /// Accept inputs whose onset is empty after removing don't-cares.
    #[arg(long)]
    allow_empty_onset: bool,
    /// Refuse problems with more variables than this.
    #[arg(long, default_value_t = 32)]
    max_vars: u32,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, default_value_t = 8)]
    vars: u32,
    /// Probability that a minterm is in the onset.
    #[arg(long, default_value_t = 0.25)]
    density: f64,
    /// Probability that a non-onset minterm is a don't-care.
    #[arg(long, default_value_t = 0.0)]
    dc_density: f64,
    #[arg(long, default_value_t = 10)]
    trials: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 16)]
    max_vars: u32,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Expr,
    Pla,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Naming {
    Letters,
    Indexed,
}

impl From<Naming> for VariableNaming {
    fn from(n: Naming) -> Self {
        match n {
            Naming::Letters => VariableNaming::Letters,
            Naming::Indexed => VariableNaming::Indexed,
        }
    }
}

/// Failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn guard(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_GUARD,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::OracleCap(_) => Failure::guard(e.to_string()),
            _ => Failure::input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::input(e.to_string())
    }
}

/// Runs the CLI with the given arguments (including the program name) and
/// returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Minimize(args) => cmd_minimize(args, out),
        Command::Primes(args) => cmd_primes(args, out),
        Command::Verify(args) => cmd_verify(args, out),
        Command::Bench(args) => cmd_bench(args, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn load(args: &InputArgs) -> Result<ProblemSpec, Failure> {
    let src = &args.source;
    let problem = if let Some(text) = &src.spec {
        parse_minterm_spec(text, args.allow_empty_onset)
            .map_err(|e| Failure::input(format!("--spec: {e}")))?
    } else if let Some(path) = &src.spec_file {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        parse_minterm_spec(&text, args.allow_empty_onset)
            .map_err(|e| Failure::input(format!("{}:{e}", path.display())))?
    } else if let Some(path) = &src.pla {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        let p = parse_pla(&text).map_err(|e| Failure::input(format!("{}:{e}", path.display())))?;
        if p.onset().is_empty() && !args.allow_empty_onset {
            return Err(Failure::input(format!(
                "{}: no onset minterms (use --allow-empty-onset)",
                path.display()
            )));
        }
        p
    } else {
        return Err(Failure::input("no input given"));
    };
    if problem.vars() > args.max_vars {
        return Err(Failure::guard(format!(
            "{} variables exceeds --max-vars {}",
            problem.vars(),
            args.max_vars
        )));
    }
    Ok(problem)
}

fn write_trace(report: &MinimizeReport, out: &mut dyn Write) -> std::io::Result<()> {
    for col in &report.columns {
        writeln!(out, "{col}")?;
    }
    let primes: Vec<String> = report.primes.iter().map(|p| p.to_string()).collect();
    writeln!(out, "Prime implicants: {}\n", primes.join(" "))?;
    writeln!(out, "PI chart")?;
    writeln!(out, "{}", report.chart)?;
    let ess: Vec<String> = report.essentials.iter().map(|p| p.to_string()).collect();
    writeln!(out, "Essential prime implicants: {}\n", ess.join(" "))?;
    writeln!(out, "Reduced PI chart")?;
    writeln!(out, "{}", report.reduced)?;
    let sel: Vec<String> = report.selected.iter().map(|p| p.to_string()).collect();
    writeln!(out, "Selected from reduced chart: {}\n", sel.join(" "))?;
    Ok(())
}

fn write_cover(
    cover: &Cover,
    args: &InputArgs,
    report: &MinimizeReport,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    match args.format {
        Format::Expr => writeln!(out, "{}", emit_expression(cover, args.naming.into())?)?,
        Format::Pla => out.write_all(emit_pla(cover).as_bytes())?,
        Format::Json => out.write_all(emit_json(report).as_bytes())?,
    }
    Ok(())
}

fn cmd_minimize(args: &InputArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let problem = load(args)?;
    let report = minimize(&problem)?;
    if args.show_trace {
        write_trace(&report, out)?;
    }
    write_cover(&report.cover, args, &report, out)?;
    Ok(EXIT_OK)
}

fn cmd_primes(args: &InputArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let problem = load(args)?;
    if args.show_trace || args.format == Format::Json {
        let report = minimize(&problem)?;
        if args.show_trace {
            write_trace(&report, out)?;
        }
        if args.format == Format::Json {
            let primes: Vec<String> = report.primes.iter().map(|p| p.to_string()).collect();
            let doc = serde_json::json!({ "primes": primes });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
            return Ok(EXIT_OK);
        }
    }
    let primes = if problem.onset().is_empty() && problem.dontcare().is_empty() {
        Vec::new()
    } else {
        generate_primes(&problem)?.into_vec()
    };
    match args.format {
        Format::Pla => out.write_all(emit_pla(&Cover::new(problem.vars(), primes)).as_bytes())?,
        _ => {
            for p in &primes {
                writeln!(out, "{p}")?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(args: &InputArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let problem = load(args)?;
    let report = minimize(&problem)?;
    if args.show_trace {
        write_trace(&report, out)?;
    }
    let cover = &report.cover;
    writeln!(
        out,
        "cover: {}",
        emit_expression(cover, args.naming.into())?
    )?;
    let verdict = oracle::check_equivalence(cover, &problem)?;
    let mut ok = verdict.ok();
    if ok {
        writeln!(out, "equivalence: ok")?;
    } else {
        writeln!(out, "equivalence: FAILED")?;
        for v in &verdict.violations {
            writeln!(out, "  {v}")?;
        }
    }
    writeln!(out, "cover size: {}", cover.len())?;
    match oracle::exhaustive_min_cover_size(&problem) {
        Ok(min) => {
            writeln!(out, "minimum size: {min}")?;
            if min != cover.len() {
                ok = false;
                writeln!(out, "minimality: FAILED")?;
            } else {
                writeln!(out, "minimality: ok")?;
            }
        }
        Err(Error::OracleCap(why)) => writeln!(out, "minimum size: skipped ({why})")?,
        Err(e) => return Err(e.into()),
    }
    writeln!(out, "verdict: {}", if ok { "ok" } else { "FAILED" })?;
    Ok(if ok { EXIT_OK } else { EXIT_GUARD })
}

/// Draws a random problem: each minterm is onset with probability
/// `density`, otherwise don't-care with probability `dc_density`.
pub fn random_problem(rng: &mut impl Rng, vars: u32, density: f64, dc_density: f64) -> ProblemSpec {
    let mut onset = Vec::new();
    let mut dc = Vec::new();
    for m in 0..1u64 << vars {
        if rng.gen_bool(density) {
            onset.push(m);
        } else if rng.gen_bool(dc_density) {
            dc.push(m);
        }
    }
    ProblemSpec::new(vars, onset, dc).expect("generated in range")
}

fn cmd_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    if args.vars == 0 {
        return Err(Failure::input("--vars must be at least 1"));
    }
    if args.vars > args.max_vars {
        return Err(Failure::guard(format!(
            "{} variables exceeds --max-vars {}",
            args.vars, args.max_vars
        )));
    }
    for (name, p) in [
        ("--density", args.density),
        ("--dc-density", args.dc_density),
    ] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Failure::input(format!("{name} must be within [0, 1]")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    writeln!(
        out,
        "n,onset_density,primes,cover_size,micros_primes,micros_cover"
    )?;
    for _ in 0..args.trials {
        let problem = random_problem(&mut rng, args.vars, args.density, args.dc_density);
        let t0 = Instant::now();
        let primes = if problem.onset().is_empty() && problem.dontcare().is_empty() {
            0
        } else {
            generate_primes(&problem)?.len()
        };
        let micros_primes = t0.elapsed().as_micros();
        let t1 = Instant::now();
        let report = minimize(&problem)?;
        let micros_cover = t1.elapsed().as_micros().saturating_sub(micros_primes);
        let density = problem.onset().len() as f64 / problem.space() as f64;
        writeln!(
            out,
            "{},{:.4},{},{},{},{}",
            args.vars,
            density,
            primes,
            report.cover.len(),
            micros_primes,
            micros_cover
        )?;
    }
    Ok(EXIT_OK)
}
