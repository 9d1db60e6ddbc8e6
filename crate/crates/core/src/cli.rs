//! Command-line front end.
//!
//! Exit codes: 0 success, 1 I/O, parse and other errors, 2 `SpectraOverlap`,
//! 3 `QuadratureNotConverged` (the report with the best `X` is still written).

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::certify::{certify, HKind, NormControlFn};
use crate::domain::build_domain;
use crate::domain::evaluate_domain;
use crate::error::{Error, Result};
use crate::generators::{generate, shifted_copy, Family, GenSpec};
use crate::matrix::{CMatrix, C64};
use crate::norms::{
    algebra_norm, differential_ratio, inclusion_check, op_norm, AlgebraSpec, Exponent,
};
use crate::oracle::{eig_solve_normal, kron_solve};
use crate::report::{
    to_pretty_json, BenchRow, BenchRun, DomainRun, NormsRun, OracleCheck, SolveRun,
};
use crate::solver::{solve_lyapunov, solve_sylvester, SolveOptions, SolveReport};
use crate::spectra::{separation, spectrum};
use crate::suite::{family_name, oracle_suite, SIZES};
use crate::svg::render_svg;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_OVERLAP: i32 = 2;
pub const EXIT_NOT_CONVERGED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "sylvan",
    version,
    about = "Contour-integral Sylvester solver for normal matrices"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a seeded matrix as JSON.
    Gen(GenArgs),
    /// Solve BX - XA = Q.
    Solve(SolveArgs),
    /// Solve AᵀX + XA + Q = 0.
    Lyapunov(SolveArgs),
    /// Report the localized-algebra norms of A.
    Norms(NormsArgs),
    /// Build and verify the contour domain for (A, B).
    Domain(DomainArgs),
    /// Solve (or take --X) and report only the norm certificate.
    Certify(CertifyArgs),
    /// Run the seeded oracle suite and write a timing/accuracy table.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FamilyArg {
    Diagonal,
    HermitianBanded,
    Circulant,
    ShiftedCopy,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum HArg {
    Identity,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OracleArg {
    Kron,
    Eig,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub bandwidth: usize,
    #[arg(long = "decay-alpha", default_value_t = 0.0)]
    pub decay_alpha: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0)]
    pub stream: u64,
    /// Shift `re,im` for shifted-copy.
    #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
    pub shift: String,
    /// Base matrix for shifted-copy.
    #[arg(long = "A")]
    pub a: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long = "A")]
    pub a: PathBuf,
    /// Required for `solve`; ignored by `lyapunov`.
    #[arg(long = "B")]
    pub b: Option<PathBuf>,
    #[arg(long = "Q")]
    pub q: PathBuf,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 2)]
    pub q0: usize,
    #[arg(long, default_value_t = 64)]
    pub qmax: usize,
    /// Algebra for the certificate, `kind:p:alpha` or `op`.
    #[arg(long, default_value = "op")]
    pub spec: String,
    #[arg(long, value_enum, default_value_t = HArg::Identity)]
    pub h: HArg,
    /// Cross-check against a direct solver and report the deviation.
    #[arg(long, value_enum, num_args = 0..=1, default_missing_value = "kron")]
    pub oracle: Option<OracleArg>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Omit timing fields.
    #[arg(long)]
    pub deterministic: bool,
}

#[derive(Debug, Args)]
pub struct NormsArgs {
    #[arg(long = "A")]
    pub a: PathBuf,
    #[arg(long, default_value = "1")]
    pub p: String,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    /// Also evaluate one algebra norm, `kind:p:alpha`.
    #[arg(long)]
    pub spec: Option<String>,
    /// Report `‖A^m‖ / (‖A‖^(m-θ) ‖A‖_op^θ)` for m = 2..=4 under --spec.
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DomainArgs {
    #[arg(long = "A")]
    pub a: PathBuf,
    #[arg(long = "B")]
    pub b: PathBuf,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long = "A")]
    pub a: PathBuf,
    #[arg(long = "B")]
    pub b: PathBuf,
    #[arg(long = "Q")]
    pub q: PathBuf,
    /// Certify this solution instead of solving.
    #[arg(long = "X")]
    pub x: Option<PathBuf>,
    #[arg(long, default_value = "op")]
    pub spec: String,
    #[arg(long, value_enum, default_value_t = HArg::Identity)]
    pub h: HArg,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 2)]
    pub q0: usize,
    #[arg(long, default_value_t = 64)]
    pub qmax: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Seeds per (family, size) cell.
    #[arg(long, default_value_t = 5)]
    pub per_cell: u64,
    /// Comma-separated sizes.
    #[arg(long, default_value = "4,8,12,24")]
    pub sizes: String,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub deterministic: bool,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SpectraOverlap { .. } => EXIT_OVERLAP,
        Error::QuadratureNotConverged(_) => EXIT_NOT_CONVERGED,
        _ => EXIT_ERROR,
    }
}

/// Parses `args` (including the program name) and runs; never panics on
/// bad input.
pub fn run_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => run(cfg),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                EXIT_ERROR
            } else {
                EXIT_OK
            }
        }
    }
}

pub fn run(cfg: RunConfig) -> i32 {
    match dispatch(cfg.command) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cmd: Command) -> Result<()> {
    match cmd {
        Command::Gen(a) => cmd_gen(a),
        Command::Solve(a) => cmd_solve(a, false),
        Command::Lyapunov(a) => cmd_solve(a, true),
        Command::Norms(a) => cmd_norms(a),
        Command::Domain(a) => cmd_domain(a),
        Command::Certify(a) => cmd_certify(a),
        Command::Bench(a) => cmd_bench(a),
    }
}

fn read_matrix(path: &Path) -> Result<CMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })?;
    CMatrix::from_json(&text)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn parse_shift(s: &str) -> Result<C64> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| {
        t.parse::<f64>()
            .map_err(|_| Error::InvalidSpec(format!("bad shift component {t:?}")))
    };
    match parts.as_slice() {
        [re] => Ok(C64::new(num(re)?, 0.0)),
        [re, im] => Ok(C64::new(num(re)?, num(im)?)),
        _ => Err(Error::InvalidSpec(format!(
            "shift must be `re` or `re,im`, got {s:?}"
        ))),
    }
}

fn control_fn(h: HArg) -> NormControlFn {
    match h {
        HArg::Identity => NormControlFn::identity(),
    }
}

fn cmd_gen(args: GenArgs) -> Result<()> {
    let m = match args.family {
        FamilyArg::ShiftedCopy => {
            let base = args
                .a
                .as_deref()
                .ok_or_else(|| Error::InvalidSpec("shifted-copy needs --A base.json".into()))?;
            shifted_copy(&read_matrix(base)?, parse_shift(&args.shift)?)?
        }
        f => {
            let family = match f {
                FamilyArg::Diagonal => Family::Diagonal,
                FamilyArg::HermitianBanded => Family::HermitianBanded,
                _ => Family::Circulant,
            };
            generate(&GenSpec {
                bandwidth: args.bandwidth,
                decay_alpha: args.decay_alpha,
                stream: args.stream,
                ..GenSpec::new(family, args.n, args.seed)
            })?
        }
    };
    let mut text = m.to_json();
    text.push('\n');
    emit(args.out.as_deref(), &text)
}

fn oracle_check(
    which: OracleArg,
    a: &CMatrix,
    b: &CMatrix,
    q: &CMatrix,
    x: &CMatrix,
) -> Result<OracleCheck> {
    let (method, reference) = match which {
        OracleArg::Kron => ("kron", kron_solve(a, b, q)?),
        OracleArg::Eig => ("eig", eig_solve_normal(a, b, q)?),
    };
    let diff = x.sub(&reference)?;
    let denom = reference.frobenius();
    Ok(OracleCheck {
        method,
        rel_deviation: if denom > 0.0 {
            diff.frobenius() / denom
        } else {
            diff.frobenius()
        },
        max_abs_deviation: diff.max_abs(),
    })
}

fn cmd_solve(args: SolveArgs, lyapunov: bool) -> Result<()> {
    let start = Instant::now();
    let a = read_matrix(&args.a)?;
    let q = read_matrix(&args.q)?;
    let b = if lyapunov {
        a.transpose().scale(C64::new(-1.0, 0.0))
    } else {
        let path = args
            .b
            .as_deref()
            .ok_or_else(|| Error::InvalidSpec("solve needs --B".into()))?;
        read_matrix(path)?
    };
    let opts = SolveOptions {
        tol: args.tol,
        q0: args.q0,
        q_max: args.qmax,
        certify: true,
        spec: args.spec.parse()?,
        h: HKind::Identity,
        user_h: None,
    };
    let result = if lyapunov {
        solve_lyapunov(&a, &q, &opts)
    } else {
        solve_sylvester(&a, &b, &q, &opts)
    };
    let (report, failure): (SolveReport, Option<Error>) = match result {
        Ok(r) => (r, None),
        Err(Error::QuadratureNotConverged(r)) => {
            let copy = (*r).clone();
            (copy, Some(Error::QuadratureNotConverged(r)))
        }
        Err(e) => return Err(e),
    };
    let oracle = match args.oracle {
        Some(which) => Some(oracle_check(which, &a, &b, &q, &report.x)?),
        None => None,
    };
    if let Some(path) = &args.svg {
        let svg = render_svg(
            &report.domain,
            &report.spectrum_a,
            &report.spectrum_b,
            report.separation.delta_cheb,
        );
        std::fs::write(path, svg)?;
    }
    let run = SolveRun {
        command: if lyapunov { "lyapunov" } else { "solve" },
        report,
        oracle,
        elapsed_ms: (!args.deterministic).then(|| start.elapsed().as_secs_f64() * 1e3),
    };
    emit(args.out.as_deref(), &to_pretty_json(&run)?)?;
    match failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn cmd_norms(args: NormsArgs) -> Result<()> {
    let a = read_matrix(&args.a)?;
    let p: Exponent = args.p.parse()?;
    let inclusion = inclusion_check(&a, p, args.alpha)?;
    let probe = AlgebraSpec {
        kind: crate::norms::NormKind::GrochenigSchur,
        p,
        alpha: args.alpha,
    };
    let spec: Option<AlgebraSpec> = args.spec.as_deref().map(str::parse).transpose()?;
    let spec_norm = spec.as_ref().map(|s| algebra_norm(&a, s)).transpose()?;
    let mut differential = Vec::new();
    if let (Some(theta), Some(s)) = (args.theta, spec.as_ref()) {
        for m in 2..=4 {
            differential.push(differential_ratio(&a, s, m, theta)?);
        }
    }
    let run = NormsRun {
        nrows: a.nrows(),
        ncols: a.ncols(),
        p,
        alpha: args.alpha,
        op: op_norm(&a),
        inclusion,
        admissible: probe.admissible(),
        spec,
        spec_norm,
        differential,
    };
    emit(args.out.as_deref(), &to_pretty_json(&run)?)
}

fn cmd_domain(args: DomainArgs) -> Result<()> {
    let a = read_matrix(&args.a)?;
    let b = read_matrix(&args.b)?;
    let sa = spectrum(&a)?;
    let sb = spectrum(&b)?;
    let sep = separation(&sa, &sb, op_norm(&a))?;
    let domain = build_domain(&sa, &sep)?;
    let verification = evaluate_domain(&domain, &sa, &sb, &sep);
    if let Some(path) = &args.svg {
        std::fs::write(path, render_svg(&domain, &sa, &sb, sep.delta_cheb))?;
    }
    let failure = verification.first_failure().map(|c| Error::DomainInvalid {
        check: c.name.clone(),
        detail: format!("value {} vs bound {}", c.value, c.bound),
    });
    let run = DomainRun {
        spectrum_a: sa,
        spectrum_b: sb,
        separation: sep,
        domain,
        verification,
    };
    emit(args.out.as_deref(), &to_pretty_json(&run)?)?;
    match failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn cmd_certify(args: CertifyArgs) -> Result<()> {
    let a = read_matrix(&args.a)?;
    let b = read_matrix(&args.b)?;
    let q = read_matrix(&args.q)?;
    let spec: AlgebraSpec = args.spec.parse()?;
    let h = control_fn(args.h);
    let cert = match &args.x {
        Some(path) => {
            let x = read_matrix(path)?;
            let sep = separation(&spectrum(&a)?, &spectrum(&b)?, op_norm(&a))?;
            certify(&a, &b, &q, &x, &spec, &h, &sep)?
        }
        None => {
            let opts = SolveOptions {
                tol: args.tol,
                q0: args.q0,
                q_max: args.qmax,
                certify: true,
                spec,
                ..SolveOptions::default()
            };
            let report = solve_sylvester(&a, &b, &q, &opts)?;
            match report.certificate {
                Some(c) => c,
                None => {
                    let sep = report.separation;
                    certify(&a, &b, &q, &report.x, &spec, &h, &sep)?
                }
            }
        }
    };
    emit(args.out.as_deref(), &to_pretty_json(&cert)?)
}

fn cmd_bench(args: BenchArgs) -> Result<()> {
    let sizes: Vec<usize> = if args.sizes.trim().is_empty() {
        SIZES.to_vec()
    } else {
        args.sizes
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidSpec(format!("bad size {s:?}")))
            })
            .collect::<Result<_>>()?
    };
    let total = Instant::now();
    let opts = SolveOptions {
        tol: args.tol,
        ..SolveOptions::default()
    };
    let mut rows = Vec::new();
    for inst in oracle_suite(args.seed, args.per_cell, &sizes)? {
        let start = Instant::now();
        let (report, converged) = match solve_sylvester(&inst.a, &inst.b, &inst.q, &opts) {
            Ok(r) => (r, true),
            Err(Error::QuadratureNotConverged(r)) => (*r, false),
            Err(e) => return Err(e),
        };
        let elapsed = start.elapsed().as_secs_f64() * 1e3;
        let reference = kron_solve(&inst.a, &inst.b, &inst.q)?;
        let rel = report.x.sub(&reference)?.frobenius() / reference.frobenius();
        rows.push(BenchRow {
            family: family_name(inst.family).into(),
            n: inst.n,
            seed: inst.seed,
            delta: report.separation.delta_cheb,
            converged,
            order_used: report.order_used,
            residual_fro: report.residual_fro,
            rel_error_vs_kron: rel,
            elapsed_ms: (!args.deterministic).then_some(elapsed),
        });
    }
    let run = BenchRun {
        max_rel_error: rows.iter().map(|r| r.rel_error_vs_kron).fold(0.0, f64::max),
        all_converged: rows.iter().all(|r| r.converged),
        rows,
        total_ms: (!args.deterministic).then(|| total.elapsed().as_secs_f64() * 1e3),
    };
    emit(args.out.as_deref(), &to_pretty_json(&run)?)
}
