//! Deterministic report serialization: a small JSON writer plus the tabular
//! dumps (per-`λ` table, extremizer profile, convergence trace).
//!
//! Reports must be byte-identical across runs and thread counts, so every
//! real is printed with a fixed 17-significant-digit scientific format (the
//! shortest width that round-trips every `f64`), keys are emitted in a fixed
//! order, and no timestamps or environment details are included. A compact
//! hand-rolled writer keeps that format contract explicit.

use crate::certify::BoundsReport;
use crate::fixedpoint::TraceRow;
use crate::stepspace::StepFunction;
use std::fmt::Write as _;

/// Fixed float format for every serialized real: 17 significant digits,
/// scientific notation. Round-trips any `f64` bit pattern.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Ordered JSON object builder; values are appended pre-rendered.
#[derive(Default)]
pub struct JsonObject {
    fields: Vec<(String, String)>,
}

impl JsonObject {
    pub fn new() -> Self {
        JsonObject::default()
    }

    pub fn real(mut self, key: &str, value: f64) -> Self {
        self.fields.push((key.to_string(), fmt_f64(value)));
        self
    }

    pub fn integer(mut self, key: &str, value: usize) -> Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn boolean(mut self, key: &str, value: bool) -> Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn string(mut self, key: &str, value: &str) -> Self {
        self.fields.push((key.to_string(), json_escape(value)));
        self
    }

    pub fn raw(mut self, key: &str, rendered: String) -> Self {
        self.fields.push((key.to_string(), rendered));
        self
    }

    pub fn real_array(mut self, key: &str, values: &[f64]) -> Self {
        let inner: Vec<String> = values.iter().map(|&v| fmt_f64(v)).collect();
        self.fields
            .push((key.to_string(), format!("[{}]", inner.join(","))));
        self
    }

    /// Render with one field per line (stable, diff-friendly).
    pub fn render(self) -> String {
        let mut out = String::from("{\n");
        let last = self.fields.len().saturating_sub(1);
        for (i, (k, v)) in self.fields.iter().enumerate() {
            let comma = if i == last { "" } else { "," };
            let _ = writeln!(out, "  {}: {}{}", json_escape(k), indent_cont(v), comma);
        }
        out.push('}');
        out
    }

    /// Render inline, for nesting inside another object.
    pub fn render_inline(self) -> String {
        let inner: Vec<String> = self
            .fields
            .iter()
            .map(|(k, v)| format!("{}: {}", json_escape(k), v))
            .collect();
        format!("{{{}}}", inner.join(", "))
    }
}

fn indent_cont(v: &str) -> String {
    if v.contains('\n') {
        v.replace('\n', "\n  ")
    } else {
        v.to_string()
    }
}

/// The top-level bounds report as a JSON document. `per_lambda_path` and
/// `extremizer_path` name the sibling table files the caller writes.
pub fn bounds_report_json(
    report: &BoundsReport,
    per_lambda_path: &str,
    extremizer_path: &str,
) -> String {
    let bootstrap = match &report.bootstrap {
        None => "null".to_string(),
        Some(b) => JsonObject::new()
            .real("c0", b.c0)
            .real("delta0", b.delta0)
            .real("lambda0", b.lambda0)
            .real("radius0", b.radius0)
            .render_inline(),
    };
    let error_terms = JsonObject::new()
        .real("discretization", report.error_terms.discretization)
        .real("lambda_grid", report.error_terms.lambda_grid)
        .string("radius_note", &report.error_terms.radius_note)
        .render_inline();
    let files = JsonObject::new()
        .string("per_lambda_table", per_lambda_path)
        .string("extremizer", extremizer_path)
        .render_inline();
    let mut doc = JsonObject::new()
        .string("weight", &report.weight_label)
        .real("lower", report.lower)
        .real("upper", report.upper)
        .real("lambda_star", report.lambda_star)
        .real("delta", report.delta)
        .real("lambda_step", report.lambda_step)
        .real("radius", report.radius)
        .string("radius_mode", report.radius_mode.label())
        .real("c_lb", report.c_lb)
        .raw("bootstrap", bootstrap)
        .real("lambda_star_identity", report.lambda_star_identity)
        .real("witnessed_lower", report.witnessed_lower)
        .integer("grid_points", report.per_lambda.len())
        .real_array("infeasible_lambdas", &report.infeasible_lambdas)
        .real_array("degenerate_lambdas", &report.degenerate_lambdas)
        .raw("error_terms", error_terms)
        .raw("files", files);
    doc = doc.string(
        "float_format",
        "all reals: 17 significant digits, scientific; rounding not interval-tracked",
    );
    let mut out = doc.render();
    out.push('\n');
    out
}

/// Per-`λ` grid table, tab-separated with a commented header.
pub fn per_lambda_table(report: &BoundsReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# weight {}  delta {}  lambda_step {}",
        report.weight_label,
        fmt_f64(report.delta),
        fmt_f64(report.lambda_step)
    );
    out.push_str(
        "# lambda\tc_lambda_delta\tdiscretization_error\tsupport_cells\tfeasible\tconverged\tdegenerate\titerations\tresidual\trefined\n",
    );
    for r in &report.per_lambda {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            fmt_f64(r.lambda),
            fmt_f64(r.c_lambda_delta),
            fmt_f64(r.discretization_error),
            r.support_cells,
            r.feasible,
            r.converged,
            r.degenerate,
            r.iterations,
            fmt_f64(r.residual),
            r.refined
        );
    }
    out
}

/// Extremizer profile `(x, f(x))` at cell midpoints, for plotting. The
/// header records the mesh, half-width, the `λ` the profile came from, and
/// the normalization `‖f‖₁‖f‖₂ = 1`.
pub fn extremizer_table(f: &StepFunction, lambda: f64, source: &str) -> String {
    let g = f
        .normalized_l1l2()
        .expect("extremizer tables require a nonzero function");
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# {source} extremizer  delta {}  half_width {}  lambda {}  normalization l1*l2=1",
        fmt_f64(g.delta()),
        fmt_f64(g.support_radius()),
        fmt_f64(lambda)
    );
    out.push_str("# x\tf\n");
    for i in 0..g.len() {
        let _ = writeln!(
            out,
            "{}\t{}",
            fmt_f64(g.cell_midpoint(i)),
            fmt_f64(g.values()[i])
        );
    }
    out
}

/// Fixed-point convergence trace, tab-separated.
pub fn trace_table(trace: &[TraceRow]) -> String {
    let mut out = String::from("# iteration\tvalue\tsup_change\n");
    for row in trace {
        let _ = writeln!(
            out,
            "{}\t{}\t{}",
            row.iteration,
            fmt_f64(row.value),
            fmt_f64(row.sup_change)
        );
    }
    out
}
