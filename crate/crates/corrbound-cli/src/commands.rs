//! Subcommand implementations: flag → config layering, the solve pipeline
//! and its artifact files, the reference-table reproduction, the kernel
//! dump, and the stand-alone fixed-point run.
//!
//! Every run writes its artifacts under one output directory together with
//! a `manifest.txt` naming them and carrying the SHA-256 of the canonical
//! config text, so a report can always be traced back to the exact
//! settings that produced it.

use crate::config::{self, Method, Mode, Partial, RadiusModeArg, Resolved};
use anyhow::{bail, Context, Result};
use clap::Args;
use corrbound::certify::{bootstrap_lower_bound, plan_grid, support_radius_bound};
use corrbound::fixedpoint::{self, FixedPointResult};
use corrbound::report::{self, fmt_f64, JsonObject};
use corrbound::weight::gaussian_means_constant;
use corrbound::{sweep, BoundsReport, DiscretizedKernel, SweepConfig, SweepOptions};
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Args)]
pub struct SolveArgs {
    /// Weight: `box`, `gaussian`, `gaussian:<a>`, or a path to a tabulated
    /// symmetric-decreasing weight file.
    #[arg(long)]
    weight: Option<String>,
    /// Flat key=value config file; command-line flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Resource tier: `ci` (seconds per weight) or `paper` (fine mesh,
    /// long-running).
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// `spectral` (certified two-sided bounds), `fixedpoint` (fast lower
    /// bound only), or `both`.
    #[arg(long, value_enum)]
    method: Option<Method>,
    /// Mesh width δ. Mutually exclusive with --eps-target.
    #[arg(long)]
    delta: Option<f64>,
    /// Target per-λ discretization error; δ is derived from it through the
    /// certified error formula. Mutually exclusive with --delta.
    #[arg(long)]
    eps_target: Option<f64>,
    /// Lower end of the λ grid.
    #[arg(long)]
    lambda_lo: Option<f64>,
    /// Upper end of the λ grid.
    #[arg(long)]
    lambda_hi: Option<f64>,
    /// λ grid spacing Δλ.
    #[arg(long)]
    lambda_step: Option<f64>,
    /// Override the truncation half-width (0 = derive from the support
    /// bound).
    #[arg(long)]
    radius: Option<f64>,
    /// Which a-priori support bound derives the radius.
    #[arg(long, value_enum)]
    radius_mode: Option<RadiusModeArg>,
    /// A-priori lower bound on the constant (0 = bootstrap with a cheap
    /// preliminary solve).
    #[arg(long)]
    c_lb: Option<f64>,
    /// Skip the Δλ/10 refinement pass around the first-pass maximizer.
    #[arg(long)]
    no_refine: bool,
    /// Exhaustive support-size scan at every λ (slow; for cross-checks).
    #[arg(long)]
    full_scan: bool,
    /// Fixed-point damping θ ∈ (0, 1]; 1 = undamped.
    #[arg(long)]
    theta: Option<f64>,
    /// Fixed-point stopping tolerance (relative sup-change and value
    /// change).
    #[arg(long)]
    fp_tol: Option<f64>,
    /// Fixed-point iteration cap.
    #[arg(long)]
    fp_max_iter: Option<usize>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl SolveArgs {
    fn into_layers(self) -> (Option<PathBuf>, Partial) {
        let flags = Partial {
            weight: self.weight,
            mode: self.mode,
            method: self.method,
            delta: self.delta,
            eps_target: self.eps_target,
            lambda_lo: self.lambda_lo,
            lambda_hi: self.lambda_hi,
            lambda_step: self.lambda_step,
            radius: self.radius,
            radius_mode: self.radius_mode,
            c_lb: self.c_lb,
            refine: if self.no_refine { Some(false) } else { None },
            full_scan: if self.full_scan { Some(true) } else { None },
            theta: self.theta,
            fp_tol: self.fp_tol,
            fp_max_iter: self.fp_max_iter,
            out: self.out,
        };
        (self.config, flags)
    }
}

fn layered(config_file: Option<PathBuf>, flags: Partial) -> Result<Resolved> {
    let base = match config_file {
        Some(path) => Partial::from_file(&path)?,
        None => Partial::default(),
    };
    config::resolve(base.overlay(flags))
}

pub fn solve(args: SolveArgs) -> Result<ExitCode> {
    let (config_file, flags) = args.into_layers();
    let resolved = layered(config_file, flags)?;
    let outcome = run_one(&resolved)?;
    Ok(ExitCode::from(outcome.exit))
}

/// What one run produced, for callers that compose runs.
struct RunOutcome {
    report: Option<BoundsReport>,
    fp: Option<FixedPointResult>,
    /// 0 = clean; 2 = fixed point did not converge; 3 = some λ points were
    /// infeasible (3 wins when both apply — the spectral report is the
    /// primary artifact).
    exit: u8,
}

fn write_artifact(
    dir: &Path,
    name: &str,
    content: &str,
    artifacts: &mut Vec<String>,
) -> Result<()> {
    std::fs::write(dir.join(name), content)
        .with_context(|| format!("cannot write {}", dir.join(name).display()))?;
    artifacts.push(name.to_string());
    Ok(())
}

fn sha256_hex(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    let mut hex = String::with_capacity(64);
    for byte in digest {
        let _ = write!(hex, "{byte:02x}");
    }
    hex
}

/// Grid for a fixed-point run: reuse the sweep's mesh when a sweep ran
/// (so the two methods see the same discretization), otherwise derive the
/// radius the same way the sweep would.
fn fp_grid(r: &Resolved, report: Option<&BoundsReport>) -> Result<(usize, f64)> {
    if let Some(rep) = report {
        return Ok((rep.extremizer.len(), rep.radius));
    }
    let radius = if r.radius > 0.0 {
        r.radius
    } else {
        let prior = if r.c_lb > 0.0 {
            r.c_lb
        } else {
            bootstrap_lower_bound(&r.weight)?.c0
        };
        support_radius_bound(&r.weight.norms(), prior, r.radius_mode)?.a
    };
    let (n, a_grid) = plan_grid(radius, r.delta);
    Ok((n, a_grid))
}

/// Execute one resolved run: sweep and/or fixed point, all artifact files,
/// and the manifest.
fn run_one(r: &Resolved) -> Result<RunOutcome> {
    std::fs::create_dir_all(&r.out)
        .with_context(|| format!("cannot create output directory {}", r.out.display()))?;
    let canonical = config::canonical_text(r);
    let mut artifacts = Vec::new();
    write_artifact(&r.out, "config.txt", &canonical, &mut artifacts)?;

    let mut exit = 0u8;
    let mut report_opt = None;
    if r.method.runs_spectral() {
        let cfg = SweepConfig {
            delta: r.delta,
            lambda_lo: r.lambda_lo,
            lambda_hi: r.lambda_hi,
            lambda_step: r.lambda_step,
            radius: r.radius,
            c_lb_prior: r.c_lb,
        };
        let opts = SweepOptions {
            refine: r.refine,
            radius_mode: r.radius_mode,
            full_scan: r.full_scan,
            progress: false,
        };
        let report = sweep(&r.weight, &cfg, &opts)?;
        write_artifact(
            &r.out,
            "report.json",
            &report::bounds_report_json(&report, "per_lambda.tsv", "extremizer.tsv"),
            &mut artifacts,
        )?;
        write_artifact(
            &r.out,
            "per_lambda.tsv",
            &report::per_lambda_table(&report),
            &mut artifacts,
        )?;
        write_artifact(
            &r.out,
            "extremizer.tsv",
            &report::extremizer_table(&report.extremizer, report.lambda_star, "spectral"),
            &mut artifacts,
        )?;
        println!(
            "{}: lower {:.7}  upper {:.7}  lambda* {:.5}  (delta {:.6e}, {} lambda points)",
            report.weight_label,
            report.lower,
            report.upper,
            report.lambda_star,
            report.delta,
            report.per_lambda.len()
        );
        if !report.infeasible_lambdas.is_empty() {
            println!(
                "warning: {} infeasible lambda point(s); their rows are excluded from the \
                 bounds (see infeasible_lambdas in report.json)",
                report.infeasible_lambdas.len()
            );
            exit = 3;
        }
        report_opt = Some(report);
    }

    let mut fp_opt = None;
    if r.method.runs_fixed_point() {
        let (n, radius_used) = fp_grid(r, report_opt.as_ref())?;
        let kernel = DiscretizedKernel::build(&r.weight, r.delta, n)?;
        let start = fixedpoint::default_start(r.delta, n);
        let fp = fixedpoint::fixed_point_iterate_damped(&kernel, &start, r.fp_tol, r.fp_max_iter, r.theta)?;
        let files = JsonObject::new()
            .string("trace", "fixedpoint_trace.tsv")
            .string("extremizer", "fixedpoint_extremizer.tsv")
            .render_inline();
        let doc = JsonObject::new()
            .string("weight", &r.weight.label())
            .real("delta", r.delta)
            .integer("cells", n)
            .real("radius", radius_used)
            .real("theta", r.theta)
            .real("tol", r.fp_tol)
            .integer("max_iter", r.fp_max_iter)
            .real("value", fp.value)
            .integer("iterations", fp.iterations)
            .boolean("converged", fp.converged)
            .real("last_delta", fp.last_delta)
            .raw("files", files)
            .string(
                "float_format",
                "all reals: 17 significant digits, scientific; rounding not interval-tracked",
            )
            .render();
        write_artifact(&r.out, "fixedpoint.json", &(doc + "\n"), &mut artifacts)?;
        write_artifact(
            &r.out,
            "fixedpoint_trace.tsv",
            &report::trace_table(&fp.trace),
            &mut artifacts,
        )?;
        write_artifact(
            &r.out,
            "fixedpoint_extremizer.tsv",
            &report::extremizer_table(&fp.extremizer, f64::NAN, "fixed-point"),
            &mut artifacts,
        )?;
        println!(
            "fixed point: value {:.7} after {} iteration(s) (converged: {})",
            fp.value, fp.iterations, fp.converged
        );
        if let Some(rep) = &report_opt {
            println!(
                "cross-check: |fixed_point - spectral_lower| = {:.3e}",
                (fp.value - rep.lower).abs()
            );
        }
        if !fp.converged && exit != 3 {
            exit = 2;
        }
        fp_opt = Some(fp);
    }

    if let Some(a) = r.gaussian_exponent {
        let mut doc = JsonObject::new().real("exponent", a).string(
            "note",
            "bounds for the unit-mass gaussian sqrt(a/pi)*exp(-a*x^2), obtained from the \
             canonical exp(-pi*x^2) ones by the exact scaling factor (a/pi)^(1/4)",
        );
        if let Some(rep) = &report_opt {
            doc = doc
                .real("canonical_lower", rep.lower)
                .real("canonical_upper", rep.upper)
                .real("lower", gaussian_means_constant(a, rep.lower))
                .real("upper", gaussian_means_constant(a, rep.upper));
        }
        if let Some(fp) = &fp_opt {
            doc = doc
                .real("canonical_fixed_point", fp.value)
                .real("fixed_point", gaussian_means_constant(a, fp.value));
        }
        write_artifact(
            &r.out,
            "gaussian_rescaled.json",
            &(doc.render() + "\n"),
            &mut artifacts,
        )?;
    }

    let mut manifest = format!("config_sha256={}\n", sha256_hex(&canonical));
    for name in &artifacts {
        let _ = writeln!(manifest, "artifact={name}");
    }
    std::fs::write(r.out.join("manifest.txt"), manifest)
        .with_context(|| format!("cannot write {}", r.out.join("manifest.txt").display()))?;

    Ok(RunOutcome {
        report: report_opt,
        fp: fp_opt,
        exit,
    })
}

#[derive(Args)]
pub struct ReproduceArgs {
    /// Output directory; gets one subdirectory per weight plus
    /// comparison.tsv.
    #[arg(long, default_value = "table1")]
    out: PathBuf,
}

struct ReferenceRow {
    weight: &'static str,
    lower: f64,
    upper: f64,
    gap_bound: f64,
    fixed_point: f64,
}

/// Published reference digits the fine-mesh run is compared against.
const REFERENCE: [ReferenceRow; 2] = [
    ReferenceRow {
        weight: "box",
        lower: 0.805_580_9,
        upper: 0.805_589_6,
        gap_bound: 9e-6,
        fixed_point: 0.805_580_9,
    },
    ReferenceRow {
        weight: "gaussian",
        lower: 0.715_247_4,
        upper: 0.715_257_6,
        gap_bound: 1.2e-5,
        fixed_point: 0.715_247_5,
    },
];

pub fn reproduce_table1(args: ReproduceArgs) -> Result<ExitCode> {
    let mut exit = 0u8;
    let mut table = String::from(
        "# weight\tlower\tupper\tgap\tfixed_point\tref_lower\tref_upper\tref_fixed_point\
         \tdev_lower\tdev_upper\tdev_fixed_point\n",
    );
    println!("fine-mesh reproduction run; expect minutes per weight on one core");
    for row in &REFERENCE {
        let resolved = config::resolve(Partial {
            weight: Some(row.weight.to_string()),
            mode: Some(Mode::Paper),
            method: Some(Method::Both),
            out: Some(args.out.join(row.weight)),
            ..Partial::default()
        })?;
        println!(
            "--- {} (delta {:.6e}, lambda step {:.0e}) ---",
            row.weight, resolved.delta, resolved.lambda_step
        );
        let outcome = run_one(&resolved)?;
        exit = exit.max(outcome.exit);
        let rep = outcome.report.expect("method `both` runs the sweep");
        let fp = outcome.fp.expect("method `both` runs the fixed point");
        let gap = rep.upper - rep.lower;
        let dev_lower = (rep.lower - row.lower).abs();
        let dev_upper = (rep.upper - row.upper).abs();
        let dev_fp = (fp.value - row.fixed_point).abs();
        let _ = writeln!(
            table,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            row.weight,
            fmt_f64(rep.lower),
            fmt_f64(rep.upper),
            fmt_f64(gap),
            fmt_f64(fp.value),
            fmt_f64(row.lower),
            fmt_f64(row.upper),
            fmt_f64(row.fixed_point),
            fmt_f64(dev_lower),
            fmt_f64(dev_upper),
            fmt_f64(dev_fp)
        );
        println!(
            "{}: lower {:.7} (ref {:.7}, dev {:.1e})  upper {:.7} (ref {:.7}, dev {:.1e})",
            row.weight, rep.lower, row.lower, dev_lower, rep.upper, row.upper, dev_upper
        );
        println!(
            "{}: gap {:.3e} (bound {:.1e})  fixed point {:.7} (ref {:.7}, dev {:.1e})",
            row.weight, gap, row.gap_bound, fp.value, row.fixed_point, dev_fp
        );
        if gap >= row.gap_bound {
            println!(
                "warning: certified gap {:.3e} exceeds the reference gap bound {:.1e}",
                gap, row.gap_bound
            );
        }
    }
    std::fs::create_dir_all(&args.out)
        .with_context(|| format!("cannot create output directory {}", args.out.display()))?;
    let path = args.out.join("comparison.tsv");
    std::fs::write(&path, &table).with_context(|| format!("cannot write {}", path.display()))?;
    println!("comparison table written to {}", path.display());
    Ok(ExitCode::from(exit))
}

#[derive(Args)]
pub struct KernelDumpArgs {
    /// Weight: `box`, `gaussian`, `gaussian:<a>`, or a tabulated-file path.
    #[arg(long)]
    weight: String,
    /// Mesh width δ.
    #[arg(long, default_value_t = 0.01)]
    delta: f64,
    /// Number of lags to print (default: cover the weight's support plus a
    /// two-cell margin; unbounded supports are cut at 4).
    #[arg(long)]
    cells: Option<usize>,
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn kernel_dump(args: KernelDumpArgs) -> Result<ExitCode> {
    if !(args.delta > 0.0) {
        bail!("delta must be positive, got {}", args.delta);
    }
    let (weight, _) = config::parse_weight(&args.weight)?;
    let n = args
        .cells
        .unwrap_or_else(|| {
            let r_eff = weight.support_radius().unwrap_or(4.0);
            ((r_eff + 2.0 * args.delta) / args.delta).ceil() as usize
        })
        .max(1);
    let kernel = DiscretizedKernel::build(&weight, args.delta, n)?;
    let mut text = format!(
        "# kernel {}  delta {}  lags {}\n# lag\ts\tvalue\n",
        weight.label(),
        fmt_f64(args.delta),
        kernel.len()
    );
    for lag in 0..kernel.len() {
        let _ = writeln!(
            text,
            "{lag}\t{}\t{}",
            fmt_f64(lag as f64 * args.delta),
            fmt_f64(kernel.value(lag))
        );
    }
    match args.out {
        Some(path) => std::fs::write(&path, text)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Args)]
pub struct FixedPointArgs {
    /// Weight: `box`, `gaussian`, `gaussian:<a>`, or a tabulated-file path.
    #[arg(long)]
    weight: Option<String>,
    /// Flat key=value config file; command-line flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Resource tier: `ci` or `paper` (sets the default δ).
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Mesh width δ. Mutually exclusive with --eps-target.
    #[arg(long)]
    delta: Option<f64>,
    /// Target discretization error; δ is derived from it.
    #[arg(long)]
    eps_target: Option<f64>,
    /// Override the truncation half-width (0 = derive from the support
    /// bound).
    #[arg(long)]
    radius: Option<f64>,
    /// Which a-priori support bound derives the radius.
    #[arg(long, value_enum)]
    radius_mode: Option<RadiusModeArg>,
    /// A-priori lower bound on the constant (0 = bootstrap).
    #[arg(long)]
    c_lb: Option<f64>,
    /// Damping θ ∈ (0, 1]; 1 = undamped.
    #[arg(long)]
    theta: Option<f64>,
    /// Stopping tolerance (relative sup-change and value change).
    #[arg(long)]
    fp_tol: Option<f64>,
    /// Iteration cap.
    #[arg(long)]
    fp_max_iter: Option<usize>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn fixed_point(args: FixedPointArgs) -> Result<ExitCode> {
    let flags = Partial {
        weight: args.weight,
        mode: args.mode,
        method: Some(Method::Fixedpoint),
        delta: args.delta,
        eps_target: args.eps_target,
        radius: args.radius,
        radius_mode: args.radius_mode,
        c_lb: args.c_lb,
        theta: args.theta,
        fp_tol: args.fp_tol,
        fp_max_iter: args.fp_max_iter,
        out: args.out,
        ..Partial::default()
    };
    let resolved = layered(args.config, flags)?;
    let outcome = run_one(&resolved)?;
    Ok(ExitCode::from(outcome.exit))
}
