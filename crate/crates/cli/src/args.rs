use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

#[derive(Parser, Debug)]
#[command(name = "lll", version, about = "Lowest Landau Level energy: block certificates and constrained minimization")]
pub struct Cli {
    /// Seed for every random start.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dump the exact block B^(j) (or E^(j)) with its reduction.
    Block {
        #[arg(long)]
        j: usize,
        /// Use E^(j) instead of B^(j).
        #[arg(long = "E")]
        e: bool,
    },
    /// Certify positivity of every S^(j) for j <= max-j.
    Certify {
        #[arg(long = "max-j")]
        max_j: usize,
        /// Run exact null-vector and eigenvalue checks up to this j.
        #[arg(long = "exact-limit", default_value_t = lll_core::certify::DEFAULT_EXACT_LIMIT)]
        exact_limit: usize,
    },
    /// Evaluate M, P, Q, H, B, E, F and G on a coefficient file.
    Functionals {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 0.5)]
        mu: f64,
    },
    /// Write coefficients of a catalog wave.
    Catalog(CatalogArgs),
    /// Minimize G_mu on the unit mass sphere.
    Minimize {
        #[arg(long)]
        mu: f64,
        #[command(flatten)]
        opt: OptArgs,
        /// Also write the minimizer's coefficients here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimize over a grid of mu and emit the table with closed-form lines.
    Scan {
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        step: f64,
        #[command(flatten)]
        opt: OptArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bracket the threshold above which phi_1 is the global minimizer.
    Mu0 {
        /// Target bracket width.
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
        #[command(flatten)]
        opt: OptArgs,
    },
    /// Semi-classical regime report.
    Semiclassical {
        #[arg(long = "Na")]
        na: f64,
        #[arg(long)]
        h: f64,
    },
    /// Zeros of the polynomial part of a coefficient file.
    Zeros {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "R", default_value_t = lll_core::minimize::DEFAULT_ZERO_RADIUS)]
        radius: f64,
    },
}

#[derive(Args, Debug, Clone)]
pub struct OptArgs {
    #[arg(long = "trunc", default_value_t = 48)]
    pub truncation: usize,
    #[arg(long, default_value_t = 8)]
    pub restarts: usize,
    #[arg(long = "max-iters", default_value_t = 20_000)]
    pub max_iters: usize,
    #[arg(long = "grad-tol", default_value_t = 1e-9)]
    pub grad_tol: f64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Wave {
    PhiN,
    PhiNAlpha,
    PsiB,
    Equality,
    Semiclassical,
}

#[derive(Args, Debug)]
pub struct CatalogArgs {
    #[arg(long, value_enum)]
    pub wave: Wave,
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    /// Complex parameter as `re,im`.
    #[arg(long, value_parser = parse_complex, default_value = "0,0")]
    pub alpha: Complex64,
    #[arg(long, default_value_t = 1.0)]
    pub b: f64,
    #[arg(long, value_parser = parse_complex, default_value = "1,0")]
    pub a0: Complex64,
    #[arg(long, value_parser = parse_complex, default_value = "0,0")]
    pub a1: Complex64,
    #[arg(long, value_parser = parse_complex, default_value = "0,0")]
    pub c: Complex64,
    #[arg(long, default_value_t = 0.5)]
    pub h: f64,
    #[arg(long = "trunc", default_value_t = 64)]
    pub truncation: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = s.split_once(',').unwrap_or((s, "0"));
    let re: f64 = re.trim().parse().map_err(|e| format!("bad real part {re:?}: {e}"))?;
    let im: f64 = im.trim().parse().map_err(|e| format!("bad imaginary part {im:?}: {e}"))?;
    Ok(Complex64::new(re, im))
}
