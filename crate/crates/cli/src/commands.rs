use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use lll_core::certify::{certify_range, BlockCertificate};
use lll_core::fock::{catalog_coefficients, functionals, FockCoefficients, WaveSpec};
use lll_core::minimize::{
    count_zeros, estimate_mu0, minimize_g, rows_to_csv, scan_mu, semiclassical, MinimizationResult,
    OptimizerConfig,
};
use lll_core::spectra::{build_b_block, build_e_block, centro_decompose, rank_one_split, BlockMatrix};
use lll_core::{Error, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{CatalogArgs, Command, Format, OptArgs, Wave};

/// Rendered output plus the exit status it should produce.
pub struct Outcome {
    pub stdout: String,
    pub status: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, status: 0 }
    }
}

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_CERTIFICATE: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;

pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::CertificateFailed { .. } => EXIT_CERTIFICATE,
        Error::NoConvergence | Error::InconsistentBracket(_) => EXIT_NUMERICAL,
        _ => EXIT_USAGE,
    }
}

pub fn run(command: Command, format: Format, seed: u64) -> Result<Outcome> {
    match command {
        Command::Block { j, e } => block(j, e, format),
        Command::Certify { max_j, exact_limit } => certify(max_j, exact_limit, format),
        Command::Functionals { input, mu } => {
            let u = FockCoefficients::read_json(input)?;
            let report = functionals(&u, mu);
            if format == Format::Pretty {
                let q = report.q();
                Ok(Outcome::ok(format!(
                    "M = {:.15e}\nP = {:.15e}\nQ = {:.15e} {:+.15e}i\nH = {:.15e}\nB = {:.15e}\nE = {:.15e}\nG = {:.15e}  (mu = {})\nF = {:.15e}\n",
                    report.mass, report.angular_momentum, q.re, q.im, report.hamiltonian,
                    report.b, report.e, report.g, mu, report.f
                )))
            } else {
                Ok(Outcome::ok(to_json(&report)?))
            }
        }
        Command::Catalog(args) => catalog(args),
        Command::Minimize { mu, opt, out } => {
            let r = minimize_g(mu, &config(&opt, seed))?;
            if let Some(path) = out {
                r.u.write_json(path)?;
            }
            let status = if r.converged { 0 } else { EXIT_NUMERICAL };
            let stdout = if format == Format::Pretty { pretty_result(&r) } else { to_json(&r)? };
            Ok(Outcome { stdout, status })
        }
        Command::Scan { from, to, step, opt, out } => {
            let grid = grid(from, to, step)?;
            let rows = scan_mu(&grid, &config(&opt, seed))?;
            let text = if format == Format::Json { to_json(&rows)? } else { rows_to_csv(&rows) };
            let status = if rows.iter().all(|r| r.converged) { 0 } else { EXIT_NUMERICAL };
            match out {
                Some(path) => {
                    write(&path, &text)?;
                    Ok(Outcome { stdout: String::new(), status })
                }
                None => Ok(Outcome { stdout: text, status }),
            }
        }
        Command::Mu0 { tol, opt } => {
            let est = estimate_mu0(&config(&opt, seed), tol)?;
            if format == Format::Pretty {
                let mut s = format!(
                    "mu0 in [{:.6}, {:.6}]  (empirical, truncation {})\n",
                    est.lower, est.upper, est.truncation
                );
                for p in &est.probes {
                    let _ = writeln!(
                        s,
                        "  mu = {:.8}  G_min = {:.12}  G(phi1) = {:.12}  {}  zeros = {}",
                        p.mu, p.g_min, p.g_phi1, p.class, p.n_zeros
                    );
                }
                Ok(Outcome::ok(s))
            } else {
                Ok(Outcome::ok(to_json(&est)?))
            }
        }
        Command::Semiclassical { na, h } => {
            let r = semiclassical(na, h)?;
            if format == Format::Pretty {
                Ok(Outcome::ok(format!(
                    "Na = {}  h = {}  Omega_h^2 = {:.12}\nmu_eff = {:.12}\nh at kappa = 5/32: {:.12}\nh at kappa = 1/2:  {:.12}\nE_h(phi_0h) = {:.12}\nE_h(phi_1h) = {:.12}\nregime: {:?}\n",
                    r.na, r.h, r.omega_sq, r.mu_eff, r.h_kappa_inf, r.h_kappa_zero, r.e_phi0, r.e_phi1, r.regime
                )))
            } else {
                Ok(Outcome::ok(to_json(&r)?))
            }
        }
        Command::Zeros { input, radius } => {
            let u = FockCoefficients::read_json(input)?;
            let z = count_zeros(&u, radius)?;
            if format == Format::Pretty {
                let mut s = format!("{} zeros with |z| <= {} (degree {})\n", z.count, radius, z.degree);
                let mut idx: Vec<usize> = (0..z.roots.len()).collect();
                idx.sort_by(|&a, &b| z.roots[a].norm().total_cmp(&z.roots[b].norm()));
                for i in idx {
                    let r = z.roots[i];
                    let _ = writeln!(s, "  {:+.12e} {:+.12e}i  |z| = {:.6}  residual = {:.1e}", r.re, r.im, r.norm(), z.residuals[i]);
                }
                Ok(Outcome::ok(s))
            } else {
                Ok(Outcome::ok(to_json(&z)?))
            }
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text)?;
    Ok(())
}

fn config(opt: &OptArgs, seed: u64) -> OptimizerConfig {
    OptimizerConfig {
        truncation: opt.truncation,
        restarts: opt.restarts,
        max_iters: opt.max_iters,
        grad_tol: opt.grad_tol,
        seed,
        ..OptimizerConfig::default()
    }
}

/// `from, from + step, …` up to `to`, computed by index to avoid drift.
fn grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(to >= from) || !from.is_finite() || !to.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "need from <= to and step > 0 (got {from}, {to}, {step})"
        )));
    }
    let n = ((to - from) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| from + i as f64 * step).collect())
}

fn matrix_json(m: &BlockMatrix) -> Value {
    let (g, rest) = m.common_factor();
    json!({
        "kind": m.kind,
        "order": m.order(),
        "entries": m.to_strings(),
        "factor": g.to_string(),
        "factored": rest.to_strings(),
    })
}

fn matrix_pretty(name: &str, m: &BlockMatrix, out: &mut String) {
    let (g, rest) = m.common_factor();
    let cells = rest.to_strings();
    let width = cells.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(1);
    let _ = writeln!(out, "{name} = ({g}) ×");
    for row in cells {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(out, "  [ {} ]", line.join("  "));
    }
}

fn block(j: usize, e: bool, format: Format) -> Result<Outcome> {
    let full = if e { build_e_block(j) } else { build_b_block(j) };
    let letter = if e { "E" } else { "B" };
    let d = centro_decompose(&full)?;
    let split = rank_one_split(&d)?;
    if format == Format::Pretty {
        let mut s = String::new();
        matrix_pretty(&format!("{letter}^({j})"), &full, &mut s);
        matrix_pretty(&format!("S^({j})"), &d.s, &mut s);
        if let Some(r) = &d.r {
            matrix_pretty(&format!("R^({j})"), r, &mut s);
        }
        matrix_pretty(&format!("A-JC ({j})"), &d.skew, &mut s);
        matrix_pretty(&format!("T^({j})"), &split.t, &mut s);
        let _ = writeln!(s, "K^({j}) = ({}) × ones", split.k.get(0, 0));
        let _ = writeln!(s, "delta = {}", split.delta);
        return Ok(Outcome::ok(s));
    }
    let value = json!({
        "j": j,
        "block": matrix_json(&full),
        "s": matrix_json(&d.s),
        "r": d.r.as_ref().map(matrix_json),
        "skew": matrix_json(&d.skew),
        "t": matrix_json(&split.t),
        "k": matrix_json(&split.k),
        "delta": split.delta.to_string(),
    });
    Ok(Outcome::ok(to_json(&value)?))
}

fn certify_line(c: &BlockCertificate) -> String {
    let verdict = if c.pass { "pass" } else { "FAIL" };
    let mut s = format!("{verdict} j={} parity={:?}", c.j, c.parity);
    if let Some(st) = &c.sturm {
        let w = &st.roots_window;
        let _ = write!(
            s,
            " transition={} window=({:.4},{:.4}] agreements={}",
            st.transition_index.map_or("none".into(), |t| t.to_string()),
            w.lower,
            w.lower + 1.0,
            st.sign_agreements
        );
    }
    if let Some(v) = c.null_vectors {
        let _ = write!(s, " null_vectors={}", if v { "exact" } else { "failed" });
    }
    if let Some(m) = c.min_eigenvalue {
        let _ = write!(s, " min_eig={m:.3e}");
    }
    if let Some(r) = &c.reason {
        let _ = write!(s, " reason=\"{r}\"");
    }
    s
}

fn certify(max_j: usize, exact_limit: usize, format: Format) -> Result<Outcome> {
    let certs = certify_range(max_j, exact_limit)?;
    let mut s = String::new();
    for c in certs.iter().filter(|c| c.j >= 6) {
        match format {
            Format::Pretty | Format::Csv => {
                s.push_str(&certify_line(c));
                s.push('\n');
            }
            Format::Json => {
                let line = match c.summary() {
                    Some(summary) => serde_json::to_string(&summary)?,
                    None => serde_json::to_string(c)?,
                };
                s.push_str(&line);
                s.push('\n');
            }
        }
    }
    let low_ok = certs.iter().filter(|c| c.j < 6).all(|c| c.pass);
    let all_ok = certs.iter().all(|c| c.pass);
    if !low_ok {
        for c in certs.iter().filter(|c| c.j < 6 && !c.pass) {
            s.push_str(&certify_line(c));
            s.push('\n');
        }
    }
    Ok(Outcome { stdout: s, status: if all_ok { 0 } else { EXIT_CERTIFICATE } })
}

fn catalog(args: CatalogArgs) -> Result<Outcome> {
    let spec = match args.wave {
        Wave::PhiN => WaveSpec::PhiN { n: args.n },
        Wave::PhiNAlpha => WaveSpec::PhiNAlpha { n: args.n, alpha: args.alpha },
        Wave::PsiB => WaveSpec::PsiB { b: args.b },
        Wave::Equality => WaveSpec::EqualityFamily { a0: args.a0, a1: args.a1, c: args.c },
        Wave::Semiclassical => WaveSpec::SemiclassicalPhi { k: args.n, h: args.h },
    };
    let u = catalog_coefficients(&spec, args.truncation)?;
    match args.out {
        Some(path) => {
            u.write_json(path)?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(u.to_json_string()? + "\n")),
    }
}

fn pretty_result(r: &MinimizationResult) -> String {
    let b = r.b_fit.map_or("-".into(), |b| format!("{b:.9}"));
    format!(
        "mu = {}\nG = {:.12}\nP = {:.12}\n|Q| = {:.3e}\nH = {:.12}\nresidual = {:.3e}\nclass = {}  overlap = {:.12}  b_fit = {}\nzeros in |z| <= {}: {}\nconverged = {}  iterations = {}  start = {}\n",
        r.mu, r.g_value, r.p_value, r.q().norm(), r.h_value, r.lagrange_residual, r.class, r.overlap, b,
        r.zero_radius, r.zero_count, r.converged, r.iterations, r.restart
    )
}
