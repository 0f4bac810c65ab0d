//! Run configuration: defaults per resource tier, flat key=value config
//! files, command-line overrides, and the canonical config text whose
//! SHA-256 identifies a run in the output manifest.

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use corrbound::certify::{choose_delta, RadiusMode};
use corrbound::report::fmt_f64;
use corrbound::weight::TabulatedWeight;
use corrbound::WeightSpec;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// Resource tier. `ci` finishes each weight in seconds; `paper` runs the
/// fine mesh the reference digits were produced at and takes much longer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Ci,
    Paper,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Ci => "ci",
            Mode::Paper => "paper",
        }
    }

    /// (δ, Δλ) defaults for the tier. The `paper` mesh is the largest δ
    /// whose per-λ discretization error stays below 1e−5 across a sweep
    /// starting at λ = 0.7 with a conservative lower bound 0.7.
    pub fn default_mesh(self) -> (f64, f64) {
        match self {
            Mode::Ci => (0.01, 0.01),
            Mode::Paper => (choose_delta(1e-5, 0.7, 0.7), 0.001),
        }
    }
}

/// Which solver(s) to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Spectral,
    Fixedpoint,
    Both,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Spectral => "spectral",
            Method::Fixedpoint => "fixedpoint",
            Method::Both => "both",
        }
    }

    pub fn runs_spectral(self) -> bool {
        matches!(self, Method::Spectral | Method::Both)
    }

    pub fn runs_fixed_point(self) -> bool {
        matches!(self, Method::Fixedpoint | Method::Both)
    }
}

/// Mirror of [`RadiusMode`] that clap can parse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RadiusModeArg {
    Coarse,
    Fine,
}

impl From<RadiusModeArg> for RadiusMode {
    fn from(m: RadiusModeArg) -> Self {
        match m {
            RadiusModeArg::Coarse => RadiusMode::Coarse,
            RadiusModeArg::Fine => RadiusMode::Fine,
        }
    }
}

impl RadiusModeArg {
    pub fn as_str(self) -> &'static str {
        match self {
            RadiusModeArg::Coarse => "coarse",
            RadiusModeArg::Fine => "fine",
        }
    }
}

/// One layer of settings; `None` means "not given here". Layers stack:
/// config file first, then command-line flags, then tier defaults.
#[derive(Debug, Default, Clone)]
pub struct Partial {
    pub weight: Option<String>,
    pub mode: Option<Mode>,
    pub method: Option<Method>,
    pub delta: Option<f64>,
    pub eps_target: Option<f64>,
    pub lambda_lo: Option<f64>,
    pub lambda_hi: Option<f64>,
    pub lambda_step: Option<f64>,
    pub radius: Option<f64>,
    pub radius_mode: Option<RadiusModeArg>,
    pub c_lb: Option<f64>,
    pub refine: Option<bool>,
    pub full_scan: Option<bool>,
    pub theta: Option<f64>,
    pub fp_tol: Option<f64>,
    pub fp_max_iter: Option<usize>,
    pub out: Option<PathBuf>,
}

impl Partial {
    /// Parse a flat `key=value` config file. Blank lines and `#` comments
    /// are skipped; unknown keys are errors so that typos cannot silently
    /// change a run.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?;
        let mut p = Partial::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("{}:{}: expected key=value, got {raw:?}", path.display(), lineno + 1);
            };
            let (key, value) = (key.trim(), value.trim());
            let ctx = || format!("{}:{}: bad value for {key}", path.display(), lineno + 1);
            match key {
                "weight" => p.weight = Some(value.to_string()),
                "mode" => {
                    p.mode = Some(match value {
                        "ci" => Mode::Ci,
                        "paper" => Mode::Paper,
                        other => bail!("{}: unknown mode {other:?}", ctx()),
                    })
                }
                "method" => {
                    p.method = Some(match value {
                        "spectral" => Method::Spectral,
                        "fixedpoint" => Method::Fixedpoint,
                        "both" => Method::Both,
                        other => bail!("{}: unknown method {other:?}", ctx()),
                    })
                }
                "delta" => p.delta = Some(value.parse().with_context(ctx)?),
                "eps_target" => p.eps_target = Some(value.parse().with_context(ctx)?),
                "lambda_lo" => p.lambda_lo = Some(value.parse().with_context(ctx)?),
                "lambda_hi" => p.lambda_hi = Some(value.parse().with_context(ctx)?),
                "lambda_step" => p.lambda_step = Some(value.parse().with_context(ctx)?),
                "radius" => p.radius = Some(value.parse().with_context(ctx)?),
                "radius_mode" => {
                    p.radius_mode = Some(match value {
                        "coarse" => RadiusModeArg::Coarse,
                        "fine" => RadiusModeArg::Fine,
                        other => bail!("{}: unknown radius mode {other:?}", ctx()),
                    })
                }
                "c_lb" => p.c_lb = Some(value.parse().with_context(ctx)?),
                "refine" => p.refine = Some(value.parse().with_context(ctx)?),
                "full_scan" => p.full_scan = Some(value.parse().with_context(ctx)?),
                "theta" => p.theta = Some(value.parse().with_context(ctx)?),
                "fp_tol" => p.fp_tol = Some(value.parse().with_context(ctx)?),
                "fp_max_iter" => p.fp_max_iter = Some(value.parse().with_context(ctx)?),
                "out" => p.out = Some(PathBuf::from(value)),
                other => bail!(
                    "{}:{}: unknown config key {other:?}",
                    path.display(),
                    lineno + 1
                ),
            }
        }
        Ok(p)
    }

    /// Stack `over` on top of `self`; values in `over` win.
    pub fn overlay(mut self, over: Partial) -> Partial {
        macro_rules! take {
            ($($f:ident),*) => { $( if over.$f.is_some() { self.$f = over.$f; } )* };
        }
        take!(
            weight,
            mode,
            method,
            delta,
            eps_target,
            lambda_lo,
            lambda_hi,
            lambda_step,
            radius,
            radius_mode,
            c_lb,
            refine,
            full_scan,
            theta,
            fp_tol,
            fp_max_iter,
            out
        );
        self
    }
}

/// Fully resolved run settings.
#[derive(Debug, Clone)]
pub struct Resolved {
    /// The weight descriptor as given (kept for the canonical text).
    pub weight_text: String,
    pub weight: WeightSpec,
    /// Set when the descriptor was `gaussian:<a>`: bounds for the unit-mass
    /// Gaussian with that exponent follow from the canonical ones by the
    /// rescaling factor `(a/π)^{1/4}`.
    pub gaussian_exponent: Option<f64>,
    pub mode: Mode,
    pub method: Method,
    pub delta: f64,
    pub eps_target: Option<f64>,
    pub lambda_lo: f64,
    pub lambda_hi: f64,
    pub lambda_step: f64,
    /// 0 means "derive from the support bound".
    pub radius: f64,
    pub radius_mode: RadiusMode,
    pub radius_mode_arg: RadiusModeArg,
    /// 0 means "bootstrap".
    pub c_lb: f64,
    pub refine: bool,
    pub full_scan: bool,
    pub theta: f64,
    pub fp_tol: f64,
    pub fp_max_iter: usize,
    pub out: PathBuf,
}

/// Parse a weight descriptor: `box`, `gaussian`, `gaussian:<a>`, or a path
/// to a tabulated weight file.
pub fn parse_weight(text: &str) -> Result<(WeightSpec, Option<f64>)> {
    match text {
        "box" => Ok((WeightSpec::Box, None)),
        "gaussian" => Ok((WeightSpec::Gaussian, None)),
        _ => {
            if let Some(rest) = text.strip_prefix("gaussian:") {
                let a: f64 = rest
                    .parse()
                    .with_context(|| format!("bad gaussian exponent {rest:?}"))?;
                if !(a > 0.0) {
                    bail!("gaussian exponent must be positive, got {a}");
                }
                return Ok((WeightSpec::Gaussian, Some(a)));
            }
            let path = Path::new(text);
            let table = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read weight table {}", path.display()))?;
            let w = TabulatedWeight::parse(&table)
                .with_context(|| format!("bad weight table {}", path.display()))?;
            Ok((WeightSpec::Tabulated(w), None))
        }
    }
}

/// The lower-bound prior that is known a priori for the built-in weights;
/// tabulated weights have none and are bootstrapped.
fn default_prior(weight: &WeightSpec) -> f64 {
    match weight {
        WeightSpec::Box => 0.8,
        WeightSpec::Gaussian => std::f64::consts::FRAC_1_SQRT_2,
        WeightSpec::Tabulated(_) => 0.0,
    }
}

pub fn resolve(layers: Partial) -> Result<Resolved> {
    let Some(weight_text) = layers.weight.clone() else {
        bail!("no weight given (use --weight box|gaussian|gaussian:<a>|<path>)");
    };
    let (weight, gaussian_exponent) = parse_weight(&weight_text)?;

    let mode = layers.mode.unwrap_or(Mode::Ci);
    let (default_delta, default_step) = mode.default_mesh();
    let method = layers.method.unwrap_or(Method::Spectral);

    let c_lb = layers.c_lb.unwrap_or_else(|| default_prior(&weight));
    let lambda_lo = layers.lambda_lo.unwrap_or(0.7);
    let lambda_hi = layers.lambda_hi.unwrap_or(2.0 / 0.7);

    let delta = match (layers.delta, layers.eps_target) {
        (Some(_), Some(_)) => bail!("give exactly one of delta and eps_target, not both"),
        (Some(d), None) => d,
        (None, Some(eps)) => {
            if !(eps > 0.0) {
                bail!("eps_target must be positive, got {eps}");
            }
            let c_design = if c_lb > 0.0 { c_lb } else { 0.7 };
            choose_delta(eps, lambda_lo, c_design)
        }
        (None, None) => default_delta,
    };

    let resolved = Resolved {
        weight_text,
        weight,
        gaussian_exponent,
        mode,
        method,
        delta,
        eps_target: layers.eps_target,
        lambda_lo,
        lambda_hi,
        lambda_step: layers.lambda_step.unwrap_or(default_step),
        radius: layers.radius.unwrap_or(0.0),
        radius_mode: layers.radius_mode.unwrap_or(RadiusModeArg::Coarse).into(),
        radius_mode_arg: layers.radius_mode.unwrap_or(RadiusModeArg::Coarse),
        c_lb,
        refine: layers.refine.unwrap_or(true),
        full_scan: layers.full_scan.unwrap_or(false),
        theta: layers.theta.unwrap_or(1.0),
        fp_tol: layers.fp_tol.unwrap_or(1e-12),
        fp_max_iter: layers.fp_max_iter.unwrap_or(100_000),
        out: layers.out.unwrap_or_else(|| PathBuf::from("out")),
    };

    if !(resolved.delta > 0.0) {
        bail!("delta must be positive, got {}", resolved.delta);
    }
    if !(resolved.lambda_step > 0.0) {
        bail!("lambda_step must be positive, got {}", resolved.lambda_step);
    }
    if !(resolved.lambda_lo > 0.0 && resolved.lambda_hi > resolved.lambda_lo) {
        bail!(
            "need 0 < lambda_lo < lambda_hi, got [{}, {}]",
            resolved.lambda_lo,
            resolved.lambda_hi
        );
    }
    if !(resolved.theta > 0.0 && resolved.theta <= 1.0) {
        bail!("theta must be in (0, 1], got {}", resolved.theta);
    }
    if !(resolved.fp_tol > 0.0) {
        bail!("fp_tol must be positive, got {}", resolved.fp_tol);
    }
    if resolved.fp_max_iter == 0 {
        bail!("fp_max_iter must be at least 1");
    }
    Ok(resolved)
}

/// Canonical settings text: sorted `key=value` lines covering everything
/// that can change the computed numbers. Output location and thread count
/// are deliberately excluded. Identical text ⟹ byte-identical reports.
pub fn canonical_text(r: &Resolved) -> String {
    let mut s = String::new();
    let mut kv = |k: &str, v: String| {
        let _ = writeln!(s, "{k}={v}");
    };
    kv("c_lb", fmt_f64(r.c_lb));
    kv("delta", fmt_f64(r.delta));
    if let Some(eps) = r.eps_target {
        kv("eps_target", fmt_f64(eps));
    }
    kv("fp_max_iter", r.fp_max_iter.to_string());
    kv("fp_tol", fmt_f64(r.fp_tol));
    kv("full_scan", r.full_scan.to_string());
    kv("lambda_hi", fmt_f64(r.lambda_hi));
    kv("lambda_lo", fmt_f64(r.lambda_lo));
    kv("lambda_step", fmt_f64(r.lambda_step));
    kv("method", r.method.as_str().to_string());
    kv("mode", r.mode.as_str().to_string());
    kv("radius", fmt_f64(r.radius));
    kv("radius_mode", r.radius_mode_arg.as_str().to_string());
    kv("refine", r.refine.to_string());
    kv("theta", fmt_f64(r.theta));
    kv("weight", r.weight_text.clone());
    s
}
