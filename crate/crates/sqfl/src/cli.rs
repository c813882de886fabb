//! Command-line surface: one subcommand per library operation, plain
//! `key = value` config files merged under explicit flags, and stable
//! CSV/JSON artifacts.
//!
//! Contract (kept by [`main_entry`]):
//!
//! * exit 0 — success, artifact on stdout (or `--output PATH`, written
//!   only after the computation finished: no partial files);
//! * exit 2 — domain error (bad parameter, missing parameter);
//! * exit 3 — capacity error (budget exceeded, table too small);
//! * exit 64 — unknown or missing subcommand, with usage on stderr.
//!
//! Diagnostics go to stderr, never into the data stream.  A config file
//! named by `--config` (or by `SQFL_CONFIG` when the flag is absent)
//! supplies defaults for any flag not given explicitly; flags win.

use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num::complex::Complex64;
use serde::Serialize;

use crate::counting::{
    count_a, count_ad, count_qp, count_squarefree, sifted_count, LambdaSpec, SiftingContext,
};
use crate::error::{Error, Result};
use crate::euler_products::{
    mertens_product, psi_ratio_product, requirement_check, sieve_density_product, zeta2_partial,
};
use crate::primes::{Budget, PrimeTable};
use crate::report::{json_object_string, OutputFormat, ScanReport};
use crate::scans::{
    a_ratio_scan, abel_scan, qp_ratio_scan, residual_exp_scan, residual_power_scan, ScanBudget,
};
use crate::selberg_delange::{g_coeffs, g_eval, lambda0_rational, m_constant};
use crate::ZETA2;

/// Exit code for an unknown or missing subcommand.
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "sqfl",
    version,
    about = "Exact counts, Euler-product bounds, and verification scans for square-free numbers generated by bounded prime sets",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Shared option surface.  Every field is optional at parse time; each
/// subcommand validates the fields it needs after the config merge, so
/// an invalid invocation never produces a partial artifact.
#[derive(Args, Debug, Clone, Default)]
struct Opts {
    /// Evaluation point x (counting bound).
    #[arg(long)]
    x: Option<f64>,
    /// Exponent of the sifting boundary lambda(x) = C * x^epsilon.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Coefficient C of the sifting boundary (default 1).
    #[arg(long)]
    coefficient: Option<f64>,
    /// Explicit sifting boundary lambda (overrides epsilon for `density`).
    #[arg(long)]
    lambda: Option<f64>,
    /// Modulus d (square-free where the operation demands it).
    #[arg(long)]
    d: Option<u64>,
    /// Secondary bound y (count-a, phi, product boundaries).
    #[arg(long)]
    y: Option<f64>,
    /// Roughness threshold z for `phi`.
    #[arg(long)]
    z: Option<f64>,
    /// Dirichlet-series abscissa s.
    #[arg(long)]
    s: Option<f64>,
    /// Real part of the complex weight z for sd-* subcommands.
    #[arg(long)]
    z_re: Option<f64>,
    /// Imaginary part of the complex weight z for sd-* subcommands.
    #[arg(long)]
    z_im: Option<f64>,
    /// Whether the local factor sits at a prime dividing d (sd-gcoeffs).
    #[arg(long)]
    divides: Option<bool>,
    /// Series truncation order for sd-gcoeffs (max 64).
    #[arg(long)]
    nu_max: Option<u32>,
    /// Weight-disc radius A for sd-mconst.
    #[arg(long)]
    a: Option<f64>,
    /// Grid density per axis for sd-mconst.
    #[arg(long)]
    density: Option<u32>,
    /// Lower requirement boundary eta.
    #[arg(long)]
    eta: Option<f64>,
    /// Upper requirement boundary xi.
    #[arg(long)]
    xi: Option<f64>,
    /// Sieve dimension kappa.
    #[arg(long)]
    kappa: Option<f64>,
    /// Sieve dimension companion kappa'.
    #[arg(long)]
    kappa_prime: Option<f64>,
    /// Exponential decay constant c (scan-lemma23 reference, scan-abel).
    #[arg(long)]
    c: Option<f64>,
    /// Power-law slack delta for scan-lemma22.
    #[arg(long)]
    delta: Option<f64>,
    /// Cap on d as a power of x for scan-lemma22 (default 0.6, max 2/3).
    #[arg(long)]
    d_exponent_cap: Option<f64>,
    /// Comma-separated x grid for scan-* subcommands.
    #[arg(long)]
    x_grid: Option<String>,
    /// Comma-separated epsilon grid for scan-proposition.
    #[arg(long)]
    eps_grid: Option<String>,
    /// Comma-separated d sample for scan-lemma22/scan-lemma23.
    #[arg(long)]
    d_list: Option<String>,
    /// Generate the d sample as all square-free d up to this bound.
    #[arg(long)]
    d_max: Option<u64>,
    /// Log-uniform y samples per x for scan-aratio.
    #[arg(long)]
    samples: Option<u32>,
    /// Largest x a scan accepts before truncating the grid (default 1e7).
    #[arg(long)]
    max_x: Option<f64>,
    /// Divisor-enumeration cap (default 100000000).
    #[arg(long)]
    cap: Option<u64>,
    /// Prime-table limit / Euler-product truncation override.
    #[arg(long)]
    truncation_prime: Option<u64>,
    /// Prime-table memory budget in bytes.
    #[arg(long)]
    max_bytes: Option<u64>,
    /// Include n = 1 in count-qp / count-a (default true).
    #[arg(long)]
    include_one: Option<bool>,
    /// Worker threads for scan grids (default: available parallelism).
    #[arg(long)]
    threads: Option<usize>,
    /// Artifact format: json (default) or csv (scan-* only).
    #[arg(long)]
    format: Option<String>,
    /// Write the artifact to this path instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Config file with `key = value` lines (defaults for absent flags).
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact count of square-free integers up to x with its main term.
    #[command(name = "count-q")]
    CountQ(Opts),
    /// Exact count of square-free multiples of d up to x.
    #[command(name = "count-ad")]
    CountAd(Opts),
    /// Exact count of square-free numbers generated by the primes <= lambda(x).
    #[command(name = "count-qp")]
    CountQp(Opts),
    /// Inclusion-exclusion sifted count (must equal count-qp).
    #[command(name = "sift")]
    Sift(Opts),
    /// Sifted counting function A(y) below the context bound x.
    #[command(name = "count-a")]
    CountA(Opts),
    /// Rough-number count Phi(y, z).
    #[command(name = "phi")]
    Phi(Opts),
    /// Mertens product over primes <= y with explicit enclosure.
    #[command(name = "mertens")]
    Mertens(Opts),
    /// Dedekind-psi ratio product over primes <= y with enclosure.
    #[command(name = "psi-product")]
    PsiProduct(Opts),
    /// Partial zeta(2) Euler product over primes <= y.
    #[command(name = "zeta2")]
    Zeta2(Opts),
    /// Sifting density product over lambda < p <= x.
    #[command(name = "density")]
    Density(Opts),
    /// Sieve-dimension requirement check at (eta, xi, kappa, kappa').
    #[command(name = "requirement")]
    Requirement(Opts),
    /// Local-factor Taylor coefficients g(p^nu).
    #[command(name = "sd-gcoeffs")]
    SdGcoeffs(Opts),
    /// Truncated compensated Euler product G_d(s; z) with tail bound.
    #[command(name = "sd-geval")]
    SdGeval(Opts),
    /// Leading density constant lambda_0(d) = d/(zeta(2) psi(d)).
    #[command(name = "sd-lambda0")]
    SdLambda0(Opts),
    /// Grid estimate of the local-factor supremum M(A).
    #[command(name = "sd-mconst")]
    SdMconst(Opts),
    /// Ratio scan for the generated-count asymptotic.
    #[command(name = "scan-proposition")]
    ScanProposition(Opts),
    /// Power-law residual scan for |A_d|.
    #[command(name = "scan-lemma22")]
    ScanLemma22(Opts),
    /// Exponential residual scan with least-squares decay fit.
    #[command(name = "scan-lemma23")]
    ScanLemma23(Opts),
    /// Abel-summation divisor tail sums against 1/ln x.
    #[command(name = "scan-abel")]
    ScanAbel(Opts),
    /// Sandwich scan for the sifted counting function A(y).
    #[command(name = "scan-aratio")]
    ScanAratio(Opts),
}

impl Command {
    fn opts(&self) -> &Opts {
        match self {
            Command::CountQ(o)
            | Command::CountAd(o)
            | Command::CountQp(o)
            | Command::Sift(o)
            | Command::CountA(o)
            | Command::Phi(o)
            | Command::Mertens(o)
            | Command::PsiProduct(o)
            | Command::Zeta2(o)
            | Command::Density(o)
            | Command::Requirement(o)
            | Command::SdGcoeffs(o)
            | Command::SdGeval(o)
            | Command::SdLambda0(o)
            | Command::SdMconst(o)
            | Command::ScanProposition(o)
            | Command::ScanLemma22(o)
            | Command::ScanLemma23(o)
            | Command::ScanAbel(o)
            | Command::ScanAratio(o) => o,
        }
    }
}

fn req<T: Copy>(v: Option<T>, name: &str) -> Result<T> {
    v.ok_or_else(|| Error::domain(format!("missing required parameter --{name}")))
}

fn parse_f64_list(text: &str, name: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|tok| {
            tok.trim().parse::<f64>().map_err(|_| {
                Error::domain(format!("cannot parse '{tok}' in --{name} as a number"))
            })
        })
        .collect()
}

fn parse_u64_list(text: &str, name: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(|tok| {
            tok.trim().parse::<u64>().map_err(|_| {
                Error::domain(format!("cannot parse '{tok}' in --{name} as an integer"))
            })
        })
        .collect()
}

/// Parse one config value into the typed slot it belongs to.
fn apply_config_entry(opts: &mut Opts, key: &str, value: &str) -> Result<()> {
    fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
        value
            .parse::<T>()
            .map_err(|_| Error::domain(format!("config value '{value}' invalid for key '{key}'")))
    }
    macro_rules! fill {
        ($slot:expr) => {{
            if $slot.is_none() {
                $slot = Some(parse(key, value)?);
            }
        }};
    }
    match key {
        "x" => fill!(opts.x),
        "epsilon" => fill!(opts.epsilon),
        "coefficient" => fill!(opts.coefficient),
        "lambda" => fill!(opts.lambda),
        "d" => fill!(opts.d),
        "y" => fill!(opts.y),
        "z" => fill!(opts.z),
        "s" => fill!(opts.s),
        "z_re" => fill!(opts.z_re),
        "z_im" => fill!(opts.z_im),
        "divides" => fill!(opts.divides),
        "nu_max" => fill!(opts.nu_max),
        "a" => fill!(opts.a),
        "density" => fill!(opts.density),
        "eta" => fill!(opts.eta),
        "xi" => fill!(opts.xi),
        "kappa" => fill!(opts.kappa),
        "kappa_prime" => fill!(opts.kappa_prime),
        "c" => fill!(opts.c),
        "delta" => fill!(opts.delta),
        "d_exponent_cap" => fill!(opts.d_exponent_cap),
        "x_grid" => fill!(opts.x_grid),
        "eps_grid" => fill!(opts.eps_grid),
        "d_list" => fill!(opts.d_list),
        "d_max" => fill!(opts.d_max),
        "samples" => fill!(opts.samples),
        "max_x" => fill!(opts.max_x),
        "cap" => fill!(opts.cap),
        "truncation_prime" => fill!(opts.truncation_prime),
        "max_bytes" => fill!(opts.max_bytes),
        "include_one" => fill!(opts.include_one),
        "threads" => fill!(opts.threads),
        "format" => fill!(opts.format),
        "output" => {
            if opts.output.is_none() {
                opts.output = Some(PathBuf::from(value));
            }
        }
        other => {
            return Err(Error::domain(format!(
                "unknown config key '{other}' (config keys use the flag names with underscores)"
            )))
        }
    }
    Ok(())
}

/// Parse `key = value` config text and fill any still-empty options.
fn merge_config_text(opts: &mut Opts, text: &str, source: &str) -> Result<()> {
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::domain(format!(
                "{source}:{}: expected 'key = value', got '{line}'",
                lineno + 1
            )));
        };
        apply_config_entry(opts, key.trim(), value.trim())?;
    }
    Ok(())
}

/// Resolve the config file (flag first, then SQFL_CONFIG) and merge it
/// under the explicit flags.
fn merge_config(mut opts: Opts) -> Result<Opts> {
    let path = opts
        .config
        .clone()
        .or_else(|| std::env::var_os("SQFL_CONFIG").map(PathBuf::from));
    if let Some(path) = path {
        let text = std::fs::read_to_string(&path).map_err(|e| {
            Error::domain(format!("cannot read config file {}: {e}", path.display()))
        })?;
        merge_config_text(&mut opts, &text, &path.display().to_string())?;
    }
    Ok(opts)
}

fn output_format(opts: &Opts) -> Result<OutputFormat> {
    match opts.format.as_deref() {
        None => Ok(OutputFormat::Json),
        Some(text) => text.parse(),
    }
}

fn require_json_only(opts: &Opts, what: &str) -> Result<()> {
    if output_format(opts)? == OutputFormat::Csv {
        return Err(Error::domain(format!(
            "{what} emits a single JSON object; --format csv applies to scan-* subcommands"
        )));
    }
    Ok(())
}

fn build_table(opts: &Opts, default_limit: u64) -> Result<PrimeTable> {
    let limit = opts.truncation_prime.unwrap_or(default_limit).max(3);
    let mut budget = Budget::default();
    if let Some(bytes) = opts.max_bytes {
        budget.max_bytes = bytes;
    }
    PrimeTable::build_with(limit, budget)
}

fn lambda_spec(opts: &Opts) -> Result<LambdaSpec> {
    LambdaSpec::new(
        opts.coefficient.unwrap_or(1.0),
        req(opts.epsilon, "epsilon")?,
    )
}

fn scan_budget(opts: &Opts) -> ScanBudget {
    let mut b = ScanBudget::default();
    if let Some(max_x) = opts.max_x {
        b.max_x = max_x;
    }
    if let Some(cap) = opts.cap {
        b.divisor_cap = cap;
    }
    if let Some(threads) = opts.threads {
        b.threads = threads.max(1);
    }
    b
}

fn render_scan(opts: &Opts, report: &ScanReport) -> Result<String> {
    Ok(report.render(output_format(opts)?))
}

fn x_grid(opts: &Opts, default: &[f64]) -> Result<Vec<f64>> {
    match &opts.x_grid {
        Some(text) => parse_f64_list(text, "x-grid"),
        None => Ok(default.to_vec()),
    }
}

/// d sample for the residual scans: explicit list wins, otherwise all
/// square-free d up to --d-max (default 100).
fn d_sample(opts: &Opts, table: &PrimeTable) -> Result<Vec<u64>> {
    if let Some(text) = &opts.d_list {
        return parse_u64_list(text, "d-list");
    }
    let d_max = opts.d_max.unwrap_or(100);
    let mut out = Vec::new();
    for d in 1..=d_max {
        if crate::multiplicative::mobius(table, d)? != 0 {
            out.push(d);
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct CountOut {
    count: u64,
}

#[derive(Serialize)]
struct PhiOut {
    y: u64,
    z: f64,
    count: u64,
}

#[derive(Serialize)]
struct DensityOut {
    x: f64,
    lambda: f64,
    value: f64,
}

#[derive(Serialize)]
struct Lambda0Out {
    d: u64,
    numerator: i64,
    denominator: i64,
    value: f64,
}

#[derive(Serialize)]
struct GcoeffsOut {
    z_re: f64,
    z_im: f64,
    divides: bool,
    coeffs: Vec<[f64; 2]>,
}

fn include_one_adjust(count: u64, opts: &Opts) -> u64 {
    if opts.include_one.unwrap_or(true) {
        count
    } else {
        count.saturating_sub(1)
    }
}

fn dispatch(cmd: &Command) -> Result<String> {
    let opts = merge_config(cmd.opts().clone())?;
    match cmd {
        Command::CountQ(_) => {
            require_json_only(&opts, "count-q")?;
            let x = req(opts.x, "x")?;
            if !x.is_finite() || x < 0.0 {
                return Err(Error::domain(format!("--x must be a finite number >= 0, got {x}")));
            }
            let table = build_table(&opts, (x.floor() as u64).isqrt() + 1)?;
            Ok(json_object_string(&count_squarefree(x, &table)?))
        }
        Command::CountAd(_) => {
            require_json_only(&opts, "count-ad")?;
            let x = req(opts.x, "x")?;
            let d = req(opts.d, "d")?;
            if !x.is_finite() || x < 0.0 {
                return Err(Error::domain(format!("--x must be a finite number >= 0, got {x}")));
            }
            let need = ((x.floor() as u64).isqrt()).max(d.isqrt() + 1) + 1;
            let table = build_table(&opts, need)?;
            Ok(json_object_string(&count_ad(x, d, &table)?))
        }
        Command::CountQp(_) => {
            require_json_only(&opts, "count-qp")?;
            let x = req(opts.x, "x")?;
            let spec = lambda_spec(&opts)?;
            if !x.is_finite() || x < 0.0 {
                return Err(Error::domain(format!("--x must be a finite number >= 0, got {x}")));
            }
            let lambda = spec.eval(x);
            let table = build_table(&opts, lambda.min(x).max(2.0).ceil() as u64 + 1)?;
            let p = table.primes_between(1.0, lambda.min(x).min(table.limit() as f64))?;
            let count = count_qp(x, p)?;
            Ok(json_object_string(&CountOut {
                count: include_one_adjust(count, &opts),
            }))
        }
        Command::Sift(_) => {
            require_json_only(&opts, "sift")?;
            let x = req(opts.x, "x")?;
            let spec = lambda_spec(&opts)?;
            let table = build_table(&opts, x.floor() as u64 + 1)?;
            let ctx = SiftingContext::new(x, spec, &table)?;
            let count = sifted_count(&ctx, opts.cap.unwrap_or(100_000_000))?;
            Ok(json_object_string(&CountOut { count }))
        }
        Command::CountA(_) => {
            require_json_only(&opts, "count-a")?;
            let x = req(opts.x, "x")?;
            let y = opts.y.unwrap_or(x);
            let spec = lambda_spec(&opts)?;
            let table = build_table(&opts, x.floor() as u64 + 1)?;
            let ctx = SiftingContext::new(x, spec, &table)?;
            let count = count_a(y, &ctx, opts.cap.unwrap_or(100_000_000))?;
            Ok(json_object_string(&CountOut {
                count: include_one_adjust(count, &opts),
            }))
        }
        Command::Phi(_) => {
            require_json_only(&opts, "phi")?;
            let y = req(opts.y, "y")?;
            let z = req(opts.z, "z")?;
            if !y.is_finite() || y < 1.0 {
                return Err(Error::domain(format!("--y must be a finite number >= 1, got {y}")));
            }
            let yi = y.floor() as u64;
            let table = build_table(&opts, yi + 1)?;
            Ok(json_object_string(&PhiOut {
                y: yi,
                z,
                count: table.rough_count(yi, z)?,
            }))
        }
        Command::Mertens(_) => {
            require_json_only(&opts, "mertens")?;
            let y = req(opts.y, "y")?;
            let table = build_table(&opts, boundary_limit(y))?;
            Ok(json_object_string(&mertens_product(y, &table)?))
        }
        Command::PsiProduct(_) => {
            require_json_only(&opts, "psi-product")?;
            let y = req(opts.y, "y")?;
            let table = build_table(&opts, boundary_limit(y))?;
            Ok(json_object_string(&psi_ratio_product(y, &table)?))
        }
        Command::Zeta2(_) => {
            require_json_only(&opts, "zeta2")?;
            let y = req(opts.y, "y")?;
            let table = build_table(&opts, boundary_limit(y))?;
            Ok(json_object_string(&zeta2_partial(y, &table)?))
        }
        Command::Density(_) => {
            require_json_only(&opts, "density")?;
            let x = req(opts.x, "x")?;
            let lambda = match opts.lambda {
                Some(l) => l,
                None => lambda_spec(&opts)?.eval(x),
            };
            let table = build_table(&opts, boundary_limit(x))?;
            let value = sieve_density_product(x, lambda, &table)?;
            Ok(json_object_string(&DensityOut { x, lambda, value }))
        }
        Command::Requirement(_) => {
            require_json_only(&opts, "requirement")?;
            let eta = req(opts.eta, "eta")?;
            let xi = req(opts.xi, "xi")?;
            let kappa = opts.kappa.unwrap_or(3.0);
            let kappa_prime = opts.kappa_prime.unwrap_or(14.0);
            let table = build_table(&opts, boundary_limit(xi))?;
            Ok(json_object_string(&requirement_check(
                eta,
                xi,
                kappa,
                kappa_prime,
                &table,
            )?))
        }
        Command::SdGcoeffs(_) => {
            require_json_only(&opts, "sd-gcoeffs")?;
            let z = Complex64::new(opts.z_re.unwrap_or(1.0), opts.z_im.unwrap_or(0.0));
            let divides = opts.divides.unwrap_or(false);
            let nu_max = opts.nu_max.unwrap_or(16);
            let series = g_coeffs(z, divides, nu_max as usize)?;
            Ok(json_object_string(&GcoeffsOut {
                z_re: z.re,
                z_im: z.im,
                divides,
                coeffs: series.coeffs.iter().map(|c| [c.re, c.im]).collect(),
            }))
        }
        Command::SdGeval(_) => {
            require_json_only(&opts, "sd-geval")?;
            let d = opts.d.unwrap_or(1);
            let s = req(opts.s, "s")?;
            let z = Complex64::new(opts.z_re.unwrap_or(1.0), opts.z_im.unwrap_or(0.0));
            let table = build_table(&opts, 1_000_000)?;
            Ok(json_object_string(&g_eval(d, s, z, &table)?))
        }
        Command::SdLambda0(_) => {
            require_json_only(&opts, "sd-lambda0")?;
            let d = req(opts.d, "d")?;
            let table = build_table(&opts, d.isqrt() + 64)?;
            let r = lambda0_rational(d, &table)?;
            Ok(json_object_string(&Lambda0Out {
                d,
                numerator: *r.numer(),
                denominator: *r.denom(),
                value: (*r.numer() as f64) / (*r.denom() as f64) / ZETA2,
            }))
        }
        Command::SdMconst(_) => {
            require_json_only(&opts, "sd-mconst")?;
            let a = opts.a.unwrap_or(1.0);
            let density = opts.density.unwrap_or(200);
            Ok(json_object_string(&m_constant(a, density)?))
        }
        Command::ScanProposition(_) => {
            let eps_list = match &opts.eps_grid {
                Some(text) => parse_f64_list(text, "eps-grid")?,
                None => vec![0.3, 0.5, 0.7],
            };
            let xs = x_grid(&opts, &[1e3, 1e4, 1e5, 1e6])?;
            let coefficient = opts.coefficient.unwrap_or(1.0);
            let budget = scan_budget(&opts);
            // The DFS only needs primes up to the largest sifting
            // boundary among grid points inside the budget.
            let mut need = 3.0f64;
            for &x in xs.iter().filter(|&&x| x <= budget.max_x) {
                for &eps in &eps_list {
                    if (0.0..1.0).contains(&eps) {
                        need = need.max((coefficient * x.powf(eps)).min(x));
                    }
                }
            }
            let table = build_table(&opts, need.ceil() as u64 + 1)?;
            let report = qp_ratio_scan(&eps_list, &xs, coefficient, &budget, &table)?;
            render_scan(&opts, &report)
        }
        Command::ScanLemma22(_) => {
            let xs = x_grid(&opts, &[1e4, 1e5, 1e6])?;
            let budget = scan_budget(&opts);
            let max_x = xs.iter().cloned().fold(1.0f64, f64::max);
            let table = build_table(&opts, (max_x.floor() as u64).isqrt() + 1_000)?;
            let ds = d_sample(&opts, &table)?;
            let report = residual_power_scan(
                &xs,
                &ds,
                opts.delta.unwrap_or(0.01),
                opts.d_exponent_cap.unwrap_or(0.6),
                &budget,
                &table,
            )?;
            render_scan(&opts, &report)
        }
        Command::ScanLemma23(_) => {
            let xs = x_grid(&opts, &[1e4, 1e5, 1e6])?;
            let budget = scan_budget(&opts);
            let max_x = xs.iter().cloned().fold(1.0f64, f64::max);
            let table = build_table(&opts, (max_x.floor() as u64).isqrt() + 1_000)?;
            let ds = match &opts.d_list {
                Some(text) => parse_u64_list(text, "d-list")?,
                None => vec![2, 6, 30, 210],
            };
            let report = residual_exp_scan(&xs, &ds, &budget, &table)?;
            render_scan(&opts, &report)
        }
        Command::ScanAbel(_) => {
            let xs = x_grid(&opts, &[1e3, 1e4, 1e5, 1e6])?;
            let epsilon = opts.epsilon.unwrap_or(0.5);
            let c = opts.c.unwrap_or(1.0);
            let coefficient = opts.coefficient.unwrap_or(1.0);
            let budget = scan_budget(&opts);
            let max_x = xs.iter().cloned().fold(2.0f64, f64::max);
            let table = build_table(&opts, max_x.floor() as u64 + 1)?;
            let report = abel_scan(&xs, epsilon, c, coefficient, &budget, &table)?;
            render_scan(&opts, &report)
        }
        Command::ScanAratio(_) => {
            let xs = x_grid(&opts, &[1e3, 1e4, 1e5])?;
            let epsilon = opts.epsilon.unwrap_or(0.5);
            let samples = opts.samples.unwrap_or(16);
            let coefficient = opts.coefficient.unwrap_or(1.0);
            let budget = scan_budget(&opts);
            let max_x = xs.iter().cloned().fold(4.0f64, f64::max);
            let table = build_table(&opts, max_x.floor() as u64 + 1)?;
            let report = a_ratio_scan(&xs, epsilon, samples, coefficient, &budget, &table)?;
            render_scan(&opts, &report)
        }
    }
}

/// Table limit needed for a product boundary y (primes <= y).
fn boundary_limit(y: f64) -> u64 {
    if !y.is_finite() || y < 2.0 {
        // Let the operation itself produce the precise domain error.
        return 3;
    }
    y.floor() as u64 + 1
}

/// Single entry point for the binary: parse, dispatch, write, exit code.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    // Help/version are successful outcomes.
                    let _ = err.print();
                    0
                }
                ErrorKind::InvalidSubcommand
                | ErrorKind::MissingSubcommand
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = err.print();
                    EXIT_USAGE
                }
                // Bad flag values and unknown flags are domain errors.
                _ => {
                    let _ = err.print();
                    2
                }
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(artifact) => {
            let opts = cli.command.opts();
            match &opts.output {
                // Compute-then-write: the artifact string is complete
                // before the file is created, so a failed run never
                // leaves a partial file behind.
                Some(path) => {
                    if let Err(e) = std::fs::write(path, artifact) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return 3;
                    }
                }
                None => {
                    print!("{artifact}");
                }
            }
            0
        }
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}
