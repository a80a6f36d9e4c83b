//! Command-line interface: ray tracing, geometry verification, wiggle-tract
//! certification, Cauchy realization and escape-time rendering.
//!
//! Exit codes: 0 on success, 1 when a verification fails (violations found,
//! a condition or starred inequality not certified), 2 on usage errors.

use crate::config::{read_json, write_json, ModelConfig, RenderConfig};
use crate::error::Error;
use crate::models::parse_tract_id;
use crate::rays::{
    check_bounded_slope, check_wiggling, delta_constants_growth, finite_order_constants,
    fit_growth_constants, headstart_verify_pair, trace_ray, ExternalAddress, HeadStartParams,
    SlopeParams,
};
use crate::realize::{
    realization_report, ContourSpec, PrescribedTract, PsiFamily, RealizationOptions,
};
use crate::render::{render_julia, render_ray_overlay, write_pgm};
use crate::wiggle::{certify, find_min_xi0, folding_lower_bound, growth_exponent_check};
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use std::f64::consts::PI;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "tracts",
    about = "Escaping dynamics of entire functions in logarithmic coordinates",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Trace a dynamic ray by iterated pullback and write it as CSV.
    Ray(RayArgs),
    /// Run a sampling verifier for a tract-geometry condition.
    Verify(VerifyArgs),
    /// Certify the wiggle-tract conditions in tower-interval arithmetic.
    Counterexample(CounterArgs),
    /// Realize a prescribed tract via the Cauchy-integral construction.
    Realize(RealizeArgs),
    /// Render an escape-time image as binary PGM.
    Render(RenderArgs),
}

#[derive(Args, Debug)]
struct RayArgs {
    /// Model configuration JSON.
    #[arg(long)]
    model: PathBuf,
    /// External address, e.g. "0" or "0,1|2".
    #[arg(long)]
    address: String,
    /// Pullback depth.
    #[arg(long)]
    depth: usize,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
    /// Comma-separated potentials (default "0,1,…,10").
    #[arg(long)]
    potentials: Option<String>,
    /// Real part of the seed line.
    #[arg(long, default_value_t = 50.0)]
    seed_re: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(subcommand)]
    kind: VerifyKind,
}

#[derive(Subcommand, Debug)]
enum VerifyKind {
    /// Fit bounded-slope constants and check user-supplied ones.
    Slope(SlopeArgs),
    /// Check bounded wiggling along sampled geodesics.
    Wiggling(WigglingArgs),
    /// Check the pairwise head-start condition by sampling.
    Headstart(HeadstartArgs),
}

#[derive(Args, Debug)]
struct CommonVerify {
    #[arg(long)]
    model: PathBuf,
    /// Tract id (e.g. "0" or "1:0").
    #[arg(long, default_value = "0")]
    tract: String,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct SlopeArgs {
    #[command(flatten)]
    common: CommonVerify,
    #[arg(long, default_value_t = 10.0)]
    alpha_cap: f64,
    /// β cap for the fit (default 2π + 1).
    #[arg(long)]
    beta_cap: Option<f64>,
    /// Optional user constants to test for violations.
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
}

#[derive(Args, Debug)]
struct WigglingArgs {
    #[command(flatten)]
    common: CommonVerify,
    /// Wiggling constant K (> 1); fitted from the model when omitted.
    #[arg(long = "K")]
    k: Option<f64>,
    /// Wiggling constant μ (> 0); fitted from the model when omitted.
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long, default_value_t = 32)]
    points: usize,
}

#[derive(Args, Debug)]
struct HeadstartArgs {
    #[command(flatten)]
    common: CommonVerify,
    /// Head-start constant K (> 1).
    #[arg(long = "K", default_value_t = 2.0)]
    k: f64,
    /// Head-start constant M (> 0); the separation constant δ when omitted.
    #[arg(long = "M")]
    m: Option<f64>,
    /// Image tract id (defaults to --tract).
    #[arg(long)]
    image_tract: Option<String>,
}

#[derive(Args, Debug)]
struct CounterArgs {
    /// Scale parameter M ∈ (1, 1.75).
    #[arg(long = "M")]
    m: f64,
    /// Base scale ξ₀; searched via doubling/bisection when omitted.
    #[arg(long)]
    xi0: Option<f64>,
    #[arg(long)]
    kmax: usize,
    /// Folding induction depth for the 2^k certificate.
    #[arg(long, default_value_t = 10)]
    fold_k: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RealizeArgs {
    /// Conformal model of the prescribed tract: id | quadrant | strip.
    #[arg(long)]
    psi: String,
    #[arg(long)]
    rho: f64,
    #[arg(long)]
    eta: f64,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Which checks to run: "all" or "quick" (skips the big grid scan).
    #[arg(long, default_value = "all")]
    checks: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RenderArgs {
    /// Render configuration JSON.
    #[arg(long)]
    spec: PathBuf,
    /// Output PGM path.
    #[arg(long)]
    out: PathBuf,
    /// Optional ray CSV to overlay.
    #[arg(long)]
    ray: Option<PathBuf>,
}

/// True for failures of the verified property (exit 1), as opposed to usage
/// or environment errors (exit 2).
fn is_verification_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::StarredInequality { .. }
            | Error::WellFormedness { .. }
            | Error::NoPassingXi0 { .. }
            | Error::NotCertified { .. }
            | Error::NotExpansive { .. }
            | Error::RayPullback { .. }
            | Error::LeftAddress { .. }
    )
}

/// Entry point used by the binary and by tests; returns the process exit code.
pub fn dispatch<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            if is_verification_failure(&e) {
                1
            } else {
                2
            }
        }
    }
}

fn run(cli: Cli) -> crate::error::Result<bool> {
    match cli.command {
        Command::Ray(a) => run_ray(a),
        Command::Verify(a) => match a.kind {
            VerifyKind::Slope(s) => run_slope(s),
            VerifyKind::Wiggling(w) => run_wiggling(w),
            VerifyKind::Headstart(h) => run_headstart(h),
        },
        Command::Counterexample(a) => run_counterexample(a),
        Command::Realize(a) => run_realize(a),
        Command::Render(a) => run_render(a),
    }
}

fn run_ray(a: RayArgs) -> crate::error::Result<bool> {
    let cfg: ModelConfig = read_json(&a.model)?;
    let model = cfg.build_blog(a.seed)?;
    let address = ExternalAddress::parse(&a.address)?;
    let potentials: Vec<f64> = match &a.potentials {
        Some(s) => s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::InvalidParameter(format!("bad potential {p:?}")))
            })
            .collect::<crate::error::Result<_>>()?,
        None => (0..=10).map(|i| i as f64).collect(),
    };
    let ray = trace_ray(&model, &address, a.depth, a.seed_re, &potentials)?;
    std::fs::write(&a.out, ray.to_csv())?;
    println!(
        "ray: {} points at depth {}, error bound {:.3e} -> {}",
        ray.points.len(),
        ray.depth,
        ray.error_bound,
        a.out.display()
    );
    Ok(true)
}

fn run_slope(s: SlopeArgs) -> crate::error::Result<bool> {
    let cfg: ModelConfig = read_json(&s.common.model)?;
    let model = cfg.build_blog(s.common.seed)?;
    let tract = parse_tract_id(&s.common.tract)?;
    let beta_cap = s.beta_cap.unwrap_or(2.0 * PI + 1.0);
    let user = match (s.alpha, s.beta) {
        (Some(alpha), Some(beta)) => Some(SlopeParams { alpha, beta }),
        _ => None,
    };
    let report = check_bounded_slope(
        &model,
        &tract,
        s.common.samples,
        s.common.seed,
        s.alpha_cap,
        beta_cap,
        user,
    )?;
    let pass = !report.unbounded_slope_suspicion && report.violations.is_empty();
    write_json(
        &s.common.out,
        &json!({
            "schema_version": 1,
            "kind": "slope",
            "seed": s.common.seed,
            "pass": pass,
            "report": report,
        }),
    )?;
    println!(
        "slope: fitted {:?}, suspicion {}, {} violations -> {}",
        report.fitted,
        report.unbounded_slope_suspicion,
        report.violations.len(),
        s.common.out.display()
    );
    Ok(pass)
}

fn run_wiggling(w: WigglingArgs) -> crate::error::Result<bool> {
    let cfg: ModelConfig = read_json(&w.common.model)?;
    let model = cfg.build_blog(w.common.seed)?;
    let tract = parse_tract_id(&w.common.tract)?;
    let (k, mu) = match (w.k, w.mu) {
        (Some(k), Some(mu)) => (k, mu),
        _ => {
            let (rho, m) = fit_growth_constants(&model, &tract, 2000, w.common.seed)?;
            finite_order_constants(rho, m)?
        }
    };
    let report = check_wiggling(
        &model,
        &tract,
        k,
        mu,
        w.common.samples,
        w.points,
        w.common.seed,
    )?;
    let pass = report.violations.is_empty();
    write_json(
        &w.common.out,
        &json!({
            "schema_version": 1,
            "kind": "wiggling",
            "seed": w.common.seed,
            "pass": pass,
            "report": report,
        }),
    )?;
    println!(
        "wiggling: K = {k:.4}, μ = {mu:.4}, {} violations -> {}",
        report.violations.len(),
        w.common.out.display()
    );
    Ok(pass)
}

fn run_headstart(h: HeadstartArgs) -> crate::error::Result<bool> {
    let cfg: ModelConfig = read_json(&h.common.model)?;
    let model = cfg.build_blog(h.common.seed)?;
    let tract = parse_tract_id(&h.common.tract)?;
    let image = match &h.image_tract {
        Some(t) => parse_tract_id(t)?,
        None => tract.clone(),
    };
    let m = match h.m {
        Some(m) => m,
        None => {
            let slope = check_bounded_slope(
                &model,
                &tract,
                2000,
                h.common.seed,
                10.0,
                2.0 * PI + 1.0,
                None,
            )?;
            let sp = slope.fitted.ok_or_else(|| {
                Error::Other("no slope fit available to derive M; pass --M".into())
            })?;
            delta_constants_growth(sp.alpha.max(0.05), sp.beta, h.k, 0.0)?
        }
    };
    let phi = HeadStartParams::new(h.k, m)?;
    let report = headstart_verify_pair(
        &model,
        &tract,
        &image,
        &phi,
        h.common.samples,
        h.common.seed,
    )?;
    let pass = report.violations.is_empty();
    write_json(
        &h.common.out,
        &json!({
            "schema_version": 1,
            "kind": "headstart",
            "seed": h.common.seed,
            "pass": pass,
            "report": report,
        }),
    )?;
    println!(
        "headstart: K = {:.4}, M = {:.4}, {} admissible, {} violations, vacuous {} -> {}",
        phi.k,
        phi.m,
        report.admissible,
        report.violations.len(),
        report.vacuous,
        h.common.out.display()
    );
    Ok(pass)
}

fn run_counterexample(a: CounterArgs) -> crate::error::Result<bool> {
    let xi0 = match a.xi0 {
        Some(x) => x,
        None => find_min_xi0(a.m, a.kmax)?,
    };
    let report = certify(a.m, xi0, a.kmax)?;
    let spec = crate::wiggle::build_sequences(a.m, xi0, a.kmax)?;
    let bounds = crate::wiggle::rho_bounds(&spec)?;
    let exponent = spec.exponent();
    let growth = growth_exponent_check(&spec, &bounds, exponent)?;
    let growth_probe = growth_exponent_check(&spec, &bounds, exponent - 1.0)?;
    let folding = folding_lower_bound(a.fold_k, &report)?;
    let pass = report.all_pass && growth.passes && growth_probe.fails_certified;
    let payload = json!({
        "schema_version": 1,
        "kind": "counterexample",
        "M": a.m,
        "xi0": xi0,
        "k_max": a.kmax,
        "pass": pass,
        "conditions": report.conditions,
        "starred": report.starred,
        "assumptions": report.assumptions,
        "robust": report.robust,
        "folding": { "k": folding.k, "bound": folding.lower_bound },
        "growth": {
            "exponent": exponent,
            "verdict": growth.passes,
            "sharpness_probe_exponent": exponent - 1.0,
            "sharpness_probe_fails": growth_probe.fails_certified,
        },
    });
    match &a.out {
        Some(p) => write_json(p, &payload)?,
        None => println!("{}", serde_json::to_string_pretty(&payload)?),
    }
    if let Some(fail) = report.failing_checks().first() {
        eprintln!(
            "condition {} fails at k = {} ({:?})",
            fail.name, fail.k, fail.verdict
        );
    }
    println!(
        "counterexample: M = {}, ξ₀ = {xi0:.6}, k ≤ {}: pass = {pass}, folding 2^{} = {}",
        a.m, a.kmax, folding.k, folding.lower_bound
    );
    Ok(pass)
}

fn run_realize(a: RealizeArgs) -> crate::error::Result<bool> {
    let family = match a.psi.as_str() {
        "id" | "identity" => PsiFamily::Identity,
        "quadrant" => PsiFamily::Quadrant,
        "strip" => PsiFamily::Strip,
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown psi family {other:?} (use id | quadrant | strip)"
            )))
        }
    };
    let spec = ContourSpec::new(PrescribedTract { family }, a.rho, a.eta, a.tol)?;
    let mut opts = RealizationOptions::default();
    if a.checks == "quick" {
        opts.scan = None;
        opts.residual_nodes = vec![16, 64, 256];
        opts.m_grid = 30;
    }
    let report = realization_report(&spec, &opts)?;
    let jump_ok = report
        .jump_table
        .iter()
        .filter(|r| r.epsilon <= 1.1e-4)
        .all(|r| r.error_rel <= 1e-3);
    let residual_ok = report
        .entire_residuals
        .last()
        .map(|c| c.residual <= 1e-6)
        .unwrap_or(false)
        && report
            .entire_residuals
            .windows(2)
            .any(|w| w[0].residual >= 4.0 * w[1].residual);
    let m_stable = report.m_est_rel_change < 0.05;
    let scan_ok = report
        .tract_check
        .as_ref()
        .map(|s| s.exceptions_outside_v.is_empty())
        .unwrap_or(true);
    let pass = jump_ok && residual_ok && m_stable && scan_ok;
    let payload = json!({
        "schema_version": 1,
        "kind": "realize",
        "pass": pass,
        "report": report,
    });
    match &a.out {
        Some(p) => write_json(p, &payload)?,
        None => println!("{}", serde_json::to_string_pretty(&payload)?),
    }
    println!(
        "realize: M_est = {:.4} (Δ {:.2}%), residual {:.3e}, jump ok {jump_ok}, pass = {pass}",
        report.m_est,
        100.0 * report.m_est_rel_change,
        report
            .entire_residuals
            .last()
            .map(|c| c.residual)
            .unwrap_or(f64::NAN)
    );
    Ok(pass)
}

fn run_render(a: RenderArgs) -> crate::error::Result<bool> {
    let cfg: RenderConfig = read_json(&a.spec)?;
    let model = cfg.model.build_entire()?;
    let spec = cfg.spec();
    let mut image = render_julia(&spec, &model)?;
    if let Some(ray_path) = &a.ray {
        let text = std::fs::read_to_string(ray_path)?;
        let pts = crate::rays::parse_ray_csv(&text)?;
        let marked = render_ray_overlay(&mut image, &pts, &spec);
        println!("overlay: {marked} pixels marked");
    }
    std::fs::write(&a.out, write_pgm(&image))?;
    println!(
        "render: {}x{} px, maxiter {} -> {}",
        spec.width,
        spec.height,
        spec.maxiter,
        a.out.display()
    );
    Ok(true)
}
