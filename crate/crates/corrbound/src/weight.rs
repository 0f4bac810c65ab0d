//! Weight functions: the box and Gaussian built-ins plus user-supplied
//! tables, with the exact norms the certification formulas consume.
//!
//! Every weight is assumed symmetric (`w(x) = w(−x)`), non-increasing in
//! `|x|`, and normalized to `‖w‖₁ = ‖w‖∞ = 1`. The built-ins satisfy this by
//! construction; tabulated weights are validated on load. Any weight of the
//! right shape can be brought to this normalization by rescaling the axis,
//! see [`gaussian_means_constant`] for the Gaussian family.

use thiserror::Error;

/// Norms of a weight used by the error formulas and support bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightNorms {
    /// `∫ |w|`.
    pub l1: f64,
    /// `∫ w²`.
    pub l2_squared: f64,
    /// `sup |w|`, attained at the origin for symmetric decreasing weights.
    pub linf: f64,
    /// Total variation; equals `2‖w‖∞` for symmetric decreasing weights.
    pub tv: f64,
}

/// A supported weight function.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightSpec {
    /// Indicator of `[−1/2, 1/2]`.
    Box,
    /// `exp(−πx²)`; the unique Gaussian with `‖w‖₁ = ‖w‖∞ = 1`.
    Gaussian,
    /// Piecewise-linear interpolation of user samples.
    Tabulated(TabulatedWeight),
}

#[derive(Debug, Error)]
pub enum WeightError {
    #[error("tabulated weight needs at least 3 samples, got {0}")]
    TooFewSamples(usize),
    #[error("sample abscissae must be strictly increasing (violated at index {0})")]
    GridNotIncreasing(usize),
    #[error("non-finite sample at index {0}")]
    NonFinite(usize),
    #[error("sample grid is not symmetric about 0 (index {0})")]
    GridNotSymmetric(usize),
    #[error("sample values are not even ({left} vs {right})")]
    ValuesNotEven { left: f64, right: f64 },
    #[error("weight is negative at x = {x}: {value}")]
    Negative { x: f64, value: f64 },
    #[error("weight is not non-increasing on x ≥ 0 (between x = {x0} and x = {x1})")]
    NotDecreasing { x0: f64, x1: f64 },
    #[error("peak value w(0) must be 1, got {0}")]
    BadPeak(f64),
    #[error("‖w‖₁ must be 1 within 1e-12, got {0}")]
    BadMass(f64),
    #[error("cannot parse table line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

impl WeightSpec {
    /// Evaluate the weight at `x`. Tabulated weights return 0 outside their
    /// sample range; use [`WeightSpec::eval_flagged`] to detect that.
    pub fn eval(&self, x: f64) -> f64 {
        self.eval_flagged(x).0
    }

    /// Evaluate the weight; the flag is true when a tabulated weight was
    /// queried outside its sample range (the value is then 0).
    pub fn eval_flagged(&self, x: f64) -> (f64, bool) {
        match self {
            WeightSpec::Box => (if x.abs() <= 0.5 { 1.0 } else { 0.0 }, false),
            WeightSpec::Gaussian => ((-std::f64::consts::PI * x * x).exp(), false),
            WeightSpec::Tabulated(t) => t.eval_flagged(x),
        }
    }

    /// The exact norms of the weight. Piecewise-linear tables are integrated
    /// in closed form, so no quadrature error enters here.
    pub fn norms(&self) -> WeightNorms {
        match self {
            WeightSpec::Box => WeightNorms {
                l1: 1.0,
                l2_squared: 1.0,
                linf: 1.0,
                tv: 2.0,
            },
            WeightSpec::Gaussian => WeightNorms {
                // ∫ e^{−2πx²} dx = 1/√2
                l1: 1.0,
                l2_squared: std::f64::consts::FRAC_1_SQRT_2,
                linf: 1.0,
                tv: 2.0,
            },
            WeightSpec::Tabulated(t) => t.norms(),
        }
    }

    /// Largest `|x|` with `w(x) > 0` (`None` means unbounded support).
    pub fn support_radius(&self) -> Option<f64> {
        match self {
            WeightSpec::Box => Some(0.5),
            WeightSpec::Gaussian => None,
            WeightSpec::Tabulated(t) => Some(t.xs[t.xs.len() - 1]),
        }
    }

    /// Short identifier used in reports and file headers.
    pub fn label(&self) -> String {
        match self {
            WeightSpec::Box => "box".to_string(),
            WeightSpec::Gaussian => "gaussian".to_string(),
            WeightSpec::Tabulated(t) => format!("tabulated({} samples)", t.xs.len()),
        }
    }
}

/// Sharp constant for the general Gaussian family `(a/π)^{1/2} e^{−a x²}`
/// (unit mass, arbitrary exponent), given the constant `c_canonical`
/// computed for the canonical weight `exp(−πx²)`.
///
/// Rescaling the axis by `s > 0` maps a weight `w` to `s·w(s·)` and scales
/// the sharp constant by `√s`; the Gaussian family corresponds to
/// `s = (a/π)^{1/2}`, hence the factor `(a/π)^{1/4}`.
pub fn gaussian_means_constant(a: f64, c_canonical: f64) -> f64 {
    assert!(a > 0.0, "exponent must be positive");
    (a / std::f64::consts::PI).powf(0.25) * c_canonical
}

/// A symmetric, non-increasing, piecewise-linear weight given by samples.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedWeight {
    xs: Vec<f64>,
    ws: Vec<f64>,
}

impl TabulatedWeight {
    /// Build and validate a tabulated weight from `(x, w(x))` samples.
    ///
    /// Requirements: strictly increasing `x` on a grid symmetric about 0,
    /// even values, `w ≥ 0`, non-increasing for `x ≥ 0`, `w(0) = 1`, and
    /// unit mass within `1e-12` (the trapezoid rule is exact here).
    pub fn from_samples(samples: &[(f64, f64)]) -> Result<Self, WeightError> {
        if samples.len() < 3 {
            return Err(WeightError::TooFewSamples(samples.len()));
        }
        let xs: Vec<f64> = samples.iter().map(|s| s.0).collect();
        let ws: Vec<f64> = samples.iter().map(|s| s.1).collect();
        let n = xs.len();
        for i in 0..n {
            if !xs[i].is_finite() || !ws[i].is_finite() {
                return Err(WeightError::NonFinite(i));
            }
            if i + 1 < n && xs[i + 1] <= xs[i] {
                return Err(WeightError::GridNotIncreasing(i + 1));
            }
        }
        let scale = xs[n - 1].abs().max(1.0);
        for i in 0..n {
            let j = n - 1 - i;
            if (xs[i] + xs[j]).abs() > 1e-12 * scale {
                return Err(WeightError::GridNotSymmetric(i));
            }
            if (ws[i] - ws[j]).abs() > 1e-12 {
                return Err(WeightError::ValuesNotEven {
                    left: ws[i],
                    right: ws[j],
                });
            }
        }
        for i in 0..n {
            if ws[i] < -1e-15 {
                return Err(WeightError::Negative {
                    x: xs[i],
                    value: ws[i],
                });
            }
        }
        // Non-increasing on x ≥ 0 (the mirror side follows by evenness).
        for i in 0..n - 1 {
            if xs[i] >= -1e-12 * scale && ws[i + 1] > ws[i] + 1e-12 {
                return Err(WeightError::NotDecreasing {
                    x0: xs[i],
                    x1: xs[i + 1],
                });
            }
        }
        let t = TabulatedWeight { xs, ws };
        let peak = t.eval_flagged(0.0).0;
        if (peak - 1.0).abs() > 1e-12 {
            return Err(WeightError::BadPeak(peak));
        }
        let norms = t.norms();
        if (norms.l1 - 1.0).abs() > 1e-12 {
            return Err(WeightError::BadMass(norms.l1));
        }
        Ok(t)
    }

    /// Parse a two-column whitespace-separated table; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, WeightError> {
        let mut samples = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let parse = |s: Option<&str>| -> Result<f64, WeightError> {
                s.ok_or_else(|| WeightError::Parse {
                    line: idx + 1,
                    reason: "expected two columns".into(),
                })?
                .parse()
                .map_err(|e| WeightError::Parse {
                    line: idx + 1,
                    reason: format!("{e}"),
                })
            };
            let x = parse(parts.next())?;
            let w = parse(parts.next())?;
            if parts.next().is_some() {
                return Err(WeightError::Parse {
                    line: idx + 1,
                    reason: "expected exactly two columns".into(),
                });
            }
            samples.push((x, w));
        }
        Self::from_samples(&samples)
    }

    /// Sample abscissae.
    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    fn eval_flagged(&self, x: f64) -> (f64, bool) {
        let n = self.xs.len();
        if x < self.xs[0] || x > self.xs[n - 1] {
            return (0.0, true);
        }
        // Index of the last sample ≤ x.
        let i = match self
            .xs
            .binary_search_by(|p| p.partial_cmp(&x).expect("finite"))
        {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        if i + 1 >= n {
            return (self.ws[n - 1], false);
        }
        let (x0, x1) = (self.xs[i], self.xs[i + 1]);
        let t = (x - x0) / (x1 - x0);
        (self.ws[i] + t * (self.ws[i + 1] - self.ws[i]), false)
    }

    fn norms(&self) -> WeightNorms {
        let mut l1 = 0.0;
        let mut l2 = 0.0;
        for i in 0..self.xs.len() - 1 {
            let h = self.xs[i + 1] - self.xs[i];
            let (a, b) = (self.ws[i], self.ws[i + 1]);
            l1 += h * 0.5 * (a + b);
            // ∫ (a + t(b−a))² over the segment, exact.
            l2 += h * (a * a + a * b + b * b) / 3.0;
        }
        let linf = self.ws.iter().cloned().fold(0.0, f64::max);
        WeightNorms {
            l1,
            l2_squared: l2,
            linf,
            tv: 2.0 * linf,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The triangular "hat" weight max(1 − |x|, 0) as a 5-point table; it is
    /// exactly piecewise linear, so every norm below is exact.
    pub(crate) fn hat_weight() -> WeightSpec {
        WeightSpec::Tabulated(
            TabulatedWeight::from_samples(&[
                (-1.0, 0.0),
                (-0.5, 0.5),
                (0.0, 1.0),
                (0.5, 0.5),
                (1.0, 0.0),
            ])
            .unwrap(),
        )
    }

    #[test]
    fn box_eval() {
        let w = WeightSpec::Box;
        assert_eq!(w.eval(0.0), 1.0);
        assert_eq!(w.eval(0.5), 1.0);
        assert_eq!(w.eval(-0.3), 1.0);
        assert_eq!(w.eval(0.500001), 0.0);
    }

    #[test]
    fn gaussian_eval_at_one() {
        // e^{−π} = 1/23.140692632779267 = 0.04321391826377224
        let w = WeightSpec::Gaussian;
        assert!((w.eval(1.0) - 0.04321391826377224).abs() < 1e-15);
        assert_eq!(w.eval(0.0), 1.0);
    }

    #[test]
    fn evenness_on_random_points() {
        let weights = [WeightSpec::Box, WeightSpec::Gaussian, hat_weight()];
        for w in &weights {
            for i in 0..100 {
                let x = -3.0 + 6.0 * (i as f64 + 0.41) / 100.0;
                assert_eq!(w.eval(x), w.eval(-x), "{} at {x}", w.label());
            }
        }
    }

    #[test]
    fn box_norms() {
        let n = WeightSpec::Box.norms();
        assert_eq!(
            (n.l1, n.l2_squared, n.linf, n.tv),
            (1.0, 1.0, 1.0, 2.0)
        );
    }

    #[test]
    fn gaussian_norms() {
        let n = WeightSpec::Gaussian.norms();
        assert_eq!(n.l1, 1.0);
        assert!((n.l2_squared - 0.7071067811865476).abs() < 1e-16);
        assert_eq!(n.linf, 1.0);
        assert_eq!(n.tv, 2.0);
    }

    #[test]
    fn hat_norms_are_exact() {
        let n = hat_weight().norms();
        assert!((n.l1 - 1.0).abs() < 1e-15);
        assert!((n.l2_squared - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(n.linf, 1.0);
        assert_eq!(n.tv, 2.0);
    }

    #[test]
    fn tabulated_interpolates_and_flags_extrapolation() {
        let w = hat_weight();
        assert!((w.eval(0.25) - 0.75).abs() < 1e-15);
        assert_eq!(w.eval_flagged(2.0), (0.0, true));
        assert_eq!(w.eval_flagged(1.0), (0.0, false));
    }

    #[test]
    fn tabulated_rejects_bad_input() {
        // increasing tail
        let r = TabulatedWeight::from_samples(&[(-1.0, 0.5), (0.0, 1.0), (1.0, 0.5)]);
        assert!(matches!(r, Err(WeightError::BadMass(_))), "{r:?}");
        let r = TabulatedWeight::from_samples(&[
            (-1.0, 0.0),
            (-0.5, 0.7),
            (0.0, 1.0),
            (0.5, 0.7),
            (1.0, 0.8),
        ]);
        assert!(matches!(r, Err(WeightError::ValuesNotEven { .. })), "{r:?}");
        let r = TabulatedWeight::from_samples(&[
            (-1.0, 0.0),
            (0.0, 1.0),
            (0.5, 0.4),
            (0.75, 0.5),
            (1.0, 0.0),
        ]);
        assert!(
            matches!(
                r,
                Err(WeightError::GridNotSymmetric(_)) | Err(WeightError::NotDecreasing { .. })
            ),
            "{r:?}"
        );
        let r = TabulatedWeight::from_samples(&[(-1.0, 0.0), (0.0, 0.9), (1.0, 0.0)]);
        assert!(matches!(r, Err(WeightError::BadPeak(_))), "{r:?}");
    }

    #[test]
    fn parse_table_with_comments() {
        let text = "# x  w\n-1 0\n-0.5 0.5\n0 1 # peak\n0.5 0.5\n1 0\n";
        let t = TabulatedWeight::parse(text).unwrap();
        let w = WeightSpec::Tabulated(t);
        assert!((w.eval(0.25) - 0.75).abs() < 1e-15);
        assert!(TabulatedWeight::parse("1 2 3\n").is_err());
        assert!(TabulatedWeight::parse("0.0 abc\n").is_err());
    }

    #[test]
    fn gaussian_means_rescaling() {
        // a = π is the canonical weight itself.
        assert_eq!(gaussian_means_constant(std::f64::consts::PI, 0.7), 0.7);
        // a = 16π scales the constant by (16)^{1/4} = 2.
        let c = gaussian_means_constant(16.0 * std::f64::consts::PI, 0.7);
        assert!((c - 1.4).abs() < 1e-14);
    }
}
