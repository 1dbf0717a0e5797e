//! Subcommands. Each writes its payload to `out` and its report lines to `log`
//! and returns the process exit code.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use geomean::harness::{gen_tuple, run_suite, CheckReport, GenSpec, Structure};
use geomean::{karcher_residual, mean, InitPolicy, MeanKind, SolverConfig};

use crate::error::CliError;
use crate::io::{Format, MatrixFile};

#[derive(Debug, Parser)]
#[command(name = "geomean", version, about = "Geometric means of SPD matrices and their property checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the mean of the matrices in a file, in file order.
    Mean(MeanArgs),
    /// Run randomized property checks.
    Check(CheckArgs),
    /// Write a seeded random tuple of SPD matrices.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
pub struct MeanArgs {
    #[arg(long, value_parser = parse_kind)]
    pub kind: MeanKind,
    #[arg(long)]
    pub input: PathBuf,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Format of both input and output.
    #[arg(long, default_value = "json")]
    pub format: Format,
    /// Karcher residual tolerance (Frobenius norm).
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 500)]
    pub max_iter: usize,
    /// Karcher step scale in (0, 1].
    #[arg(long, default_value_t = 1.0)]
    pub step: f64,
    #[arg(long, default_value = "arithmetic", value_parser = parse_init)]
    pub init: InitPolicy,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Comma-separated check names, or `all`.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Comma-separated mean kinds, or `all`.
    #[arg(long, default_value = "all")]
    pub kinds: String,
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = 100.0)]
    pub cond: f64,
    #[arg(long, default_value = "generic", value_parser = parse_structure)]
    pub structure: Structure,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 100.0)]
    pub cond: f64,
    #[arg(long, default_value = "generic", value_parser = parse_structure)]
    pub structure: Structure,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value = "json")]
    pub format: Format,
}

fn parse_kind(s: &str) -> Result<MeanKind, String> {
    s.parse().map_err(|e: geomean::Error| e.to_string())
}

fn parse_init(s: &str) -> Result<InitPolicy, String> {
    s.parse().map_err(|e: geomean::Error| e.to_string())
}

fn parse_structure(s: &str) -> Result<Structure, String> {
    s.parse().map_err(|e: geomean::Error| e.to_string())
}

fn parse_kinds(list: &str) -> Result<Vec<MeanKind>, CliError> {
    if list == "all" {
        return Ok(MeanKind::ALL.to_vec());
    }
    list.split(',')
        .map(|s| s.trim().parse::<MeanKind>().map_err(CliError::from))
        .collect()
}

fn io_error(what: &str, path: &std::path::Path, e: std::io::Error) -> CliError {
    CliError::Input(format!("cannot {what} {}: {e}", path.display()))
}

fn emit(out: &mut dyn Write, path: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| io_error("write", p, e)),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Input(format!("cannot write output: {e}"))),
    }
}

fn mean_cmd(args: &MeanArgs, out: &mut dyn Write, log: &mut Vec<String>) -> Result<(), CliError> {
    let text = fs::read_to_string(&args.input).map_err(|e| io_error("read", &args.input, e))?;
    let file = MatrixFile::parse(&text, args.format)?;
    let tuple = file.to_tuple()?;
    log.push(format!("k={} dim={}", tuple.len(), tuple.dim()));
    let cfg = SolverConfig {
        residual_tol: args.tol,
        max_iter: args.max_iter,
        step: args.step,
        init: args.init,
    };
    cfg.validate()?;
    let result = mean(args.kind, &tuple, &cfg)?;
    if args.kind == MeanKind::Karcher {
        let r = karcher_residual(&result, &tuple)?.frobenius();
        log.push(format!("residual={r:e}"));
    }
    let label = format!("{} mean", args.kind);
    let rendered = MatrixFile::new(vec![result.into_sym()], Some(vec![label]))?.render(args.format);
    emit(out, args.output.as_ref(), &rendered)
}

fn check_cmd(args: &CheckArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let names: Vec<&str> = args.suite.split(',').map(str::trim).collect();
    let kinds = parse_kinds(&args.kinds)?;
    let spec = GenSpec {
        dim: args.dim,
        k: args.k,
        seed: args.seed,
        cond_bound: args.cond,
        structure: args.structure,
    };
    let reports = run_suite(&names, &kinds, &spec, args.trials as usize, args.tol)?;
    let mut text = String::new();
    for r in &reports {
        text.push_str(&r.to_string());
        text.push('\n');
    }
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::Input(format!("cannot write output: {e}")))?;
    let failed = reports.iter().filter(|r| !CheckReport::passed(r)).count();
    if failed > 0 {
        return Err(CliError::ChecksFailed {
            failed,
            total: reports.len(),
        });
    }
    Ok(())
}

fn gen_cmd(args: &GenArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let spec = GenSpec {
        dim: args.dim,
        k: args.k,
        seed: args.seed,
        cond_bound: args.cond,
        structure: args.structure,
    };
    let tuple = gen_tuple(&spec)?;
    let labels = (1..=tuple.len()).map(|i| format!("A{i}")).collect();
    let file = MatrixFile::from_tuple(&tuple, Some(labels))?;
    emit(out, args.output.as_ref(), &file.render(args.format))
}

fn echo(command: &Command) -> String {
    match command {
        Command::Mean(a) => format!(
            "command=mean kind={} input={} format={} tol={:e} max_iter={} step={} init={}",
            a.kind,
            a.input.display(),
            a.format,
            a.tol,
            a.max_iter,
            a.step,
            a.init
        ),
        Command::Check(a) => format!(
            "command=check suite={} kinds={} dim={} k={} trials={} seed={} tol={:e} cond={} structure={}",
            a.suite, a.kinds, a.dim, a.k, a.trials, a.seed, a.tol, a.cond, a.structure
        ),
        Command::Gen(a) => format!(
            "command=gen dim={} k={} seed={} cond={} structure={} format={}",
            a.dim, a.k, a.seed, a.cond, a.structure, a.format
        ),
    }
}

/// Runs a parsed command line. Check reports go to `out`, as do result
/// matrices without `--output`; the echo, diagnostics and timing go to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let start = Instant::now();
    let mut log = vec![echo(&cli.command)];
    let result = match &cli.command {
        Command::Mean(a) => mean_cmd(a, out, &mut log),
        Command::Check(a) => check_cmd(a, out),
        Command::Gen(a) => gen_cmd(a, out),
    };
    let code = match &result {
        Ok(()) => 0,
        Err(e) => {
            log.push(format!("error: {e}"));
            e.exit_code()
        }
    };
    log.push(format!(
        "wall_ms={} exit={code}",
        start.elapsed().as_millis()
    ));
    let _ = out.flush();
    let _ = writeln!(err, "{}", log.join("\n"));
    code
}
