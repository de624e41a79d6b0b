//! Machine-readable reports and their text rendering.
//!
//! Forms are serialized in the `e^{ij}` shorthand (`"-e12 - 1/2 e34"`), so
//! JSON and text output can be compared directly against the algebraic
//! tables.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Exit code meaning a mathematical check failed.
pub const EXIT_CHECK_FAILED: i32 = 1;
/// Exit code for unusable input or usage errors.
pub const EXIT_INPUT_ERROR: i32 = 2;

/// One verification stage: did it pass, and a short diagnostic.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct StageVerdict {
    pub passed: bool,
    pub detail: String,
}

impl StageVerdict {
    pub fn pass(detail: impl Into<String>) -> Self {
        StageVerdict {
            passed: true,
            detail: detail.into(),
        }
    }

    pub fn fail(detail: impl Into<String>) -> Self {
        StageVerdict {
            passed: false,
            detail: detail.into(),
        }
    }
}

/// Lee-form stage payload.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct LeeStage {
    pub theta: String,
    pub consistent: bool,
    pub closed: bool,
    pub rank: usize,
    pub residuals: [String; 3],
}

/// A single tolerance check line in the coordinate stage.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub max_deviation: f64,
    pub tolerance: f64,
}

/// Pointwise ratio between the rescaled metric and the closed-form
/// expression over the sampled points: entrywise quotients over the
/// nonzero entries, summarized by their range.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RatioReport {
    pub min: f64,
    pub max: f64,
    /// The ratio is the same for every entry and point.
    pub constant: bool,
    /// The ratio is constantly one (the two expressions agree).
    pub unit: bool,
    /// Set when the comparison is not a constant factor of one; reported,
    /// never fatal.
    pub flagged: bool,
}

impl RatioReport {
    pub fn from_samples(ratios: &[f64]) -> Self {
        let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
        let max = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let constant = ratios.is_empty() || (max - min).abs() <= 1e-9 * max.abs().max(1.0);
        let unit = constant && (max - 1.0).abs() <= 1e-9;
        RatioReport {
            min,
            max,
            constant,
            unit,
            flagged: !unit,
        }
    }
}

/// Summary of the curvature checks run by `verify` on a catalog case.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CurvatureSummary {
    pub points: usize,
    pub rescaled_ricci_max: f64,
    pub rescaled_riemann_max: f64,
    pub rescaled_ricci_flat: bool,
}

/// Coordinate-stage results for catalog cases.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CoordinateStage {
    pub structure_equations: Vec<CheckLine>,
    pub left_invariance: CheckLine,
    pub hyperkahler_closedness: Vec<CheckLine>,
    pub curvature: CurvatureSummary,
    pub closed_form_ratio: RatioReport,
}

impl CoordinateStage {
    pub fn all_passed(&self) -> bool {
        self.structure_equations.iter().all(|c| c.passed)
            && self.left_invariance.passed
            && self.hyperkahler_closedness.iter().all(|c| c.passed)
            && self.curvature.rescaled_ricci_flat
        // closed_form_ratio is informative only, never a failure
    }
}

/// Full verification report: per-stage verdicts in pipeline order plus the
/// optional coordinate stage. The classification is present when the
/// Lee-form stage could run; hard failures (non-Lie input, degenerate or
/// non-antisymmetric forms) suppress it, soft algebraic failures do not.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct VerificationReport {
    pub input: String,
    pub jacobi: StageVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quaternion: Option<StageVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub integrability: Option<StageVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hermitian: Option<StageVerdict>,
    /// The computed `dω_α`, rendered as forms.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_omega: Option<[String; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lee_form: Option<LeeStage>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coordinate: Option<CoordinateStage>,
    /// Diagnostic for a hard stop (degenerate forms and the like).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub exit_code: i32,
}

impl VerificationReport {
    /// Recomputes the exit code from the recorded verdicts: zero iff every
    /// recorded check passed.
    pub fn seal(mut self) -> Self {
        let mut ok = self.jacobi.passed;
        for stage in [&self.quaternion, &self.integrability, &self.hermitian]
            .into_iter()
            .flatten()
        {
            ok &= stage.passed;
        }
        match &self.lee_form {
            Some(lee) => ok &= lee.consistent && lee.closed,
            // the Lee stage is part of every run; not reaching it means a
            // hard failure upstream
            None => ok = false,
        }
        if let Some(coord) = &self.coordinate {
            ok &= coord.all_passed();
        }
        self.exit_code = if ok { 0 } else { EXIT_CHECK_FAILED };
        self
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        let mark = |p: bool| if p { "PASS" } else { "FAIL" };
        line(format!("input: {}", self.input));
        line(format!(
            "{:<15}{} ({})",
            "jacobi:",
            mark(self.jacobi.passed),
            self.jacobi.detail
        ));
        for (name, stage) in [
            ("quaternion:", &self.quaternion),
            ("integrability:", &self.integrability),
            ("hermitian:", &self.hermitian),
        ] {
            if let Some(v) = stage {
                line(format!("{name:<15}{} ({})", mark(v.passed), v.detail));
            }
        }
        if let Some(d) = &self.d_omega {
            for (alpha, form) in d.iter().enumerate() {
                line(format!("d omega_{}:     {}", alpha + 1, form));
            }
        }
        if let Some(lee) = &self.lee_form {
            line(format!(
                "lee form:      theta = {} (consistent: {}, closed: {}, rank {})",
                lee.theta, lee.consistent, lee.closed, lee.rank
            ));
            if !lee.consistent {
                for (alpha, r) in lee.residuals.iter().enumerate() {
                    line(format!("  residual_{}:  {}", alpha + 1, r));
                }
            }
        }
        if let Some(class) = &self.classification {
            line(format!("classification: {class}"));
        }
        if let Some(coord) = &self.coordinate {
            line("coordinate checks:".to_string());
            for c in &coord.structure_equations {
                line(format!(
                    "  {:<28}{} (max dev {:.2e}, tol {:.0e})",
                    c.name, mark(c.passed), c.max_deviation, c.tolerance
                ));
            }
            let c = &coord.left_invariance;
            line(format!(
                "  {:<28}{} (max dev {:.2e}, tol {:.0e})",
                c.name, mark(c.passed), c.max_deviation, c.tolerance
            ));
            for c in &coord.hyperkahler_closedness {
                line(format!(
                    "  {:<28}{} (max dev {:.2e}, tol {:.0e})",
                    c.name, mark(c.passed), c.max_deviation, c.tolerance
                ));
            }
            line(format!(
                "  rescaled curvature:         ricci_max {:.2e}, riemann_max {:.2e} ({} points)",
                coord.curvature.rescaled_ricci_max,
                coord.curvature.rescaled_riemann_max,
                coord.curvature.points
            ));
            let r = &coord.closed_form_ratio;
            line(format!(
                "  closed-form ratio:          [{:.6}, {:.6}]{}",
                r.min,
                r.max,
                if r.flagged {
                    " -- flagged: rescaled metric and closed form differ beyond a unit factor"
                } else {
                    ""
                }
            ));
        }
        if let Some(note) = &self.note {
            line(format!("note: {note}"));
        }
        line(format!("exit code: {}", self.exit_code));
        out
    }
}

/// Curvature data for one requested point; a domain violation is recorded
/// without aborting the batch.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PointEntry {
    pub point: [f64; 4],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    pub data: Option<PointCurvature>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PointCurvature {
    pub ricci_max: f64,
    pub riemann_max: f64,
    pub scalar: f64,
    /// Sectional curvatures of the six coordinate planes.
    pub sectional: Vec<f64>,
    pub verdicts: BTreeMap<String, bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CurvatureRunSummary {
    pub ricci_max: f64,
    pub riemann_max: f64,
    pub sectional_min: f64,
    pub sectional_max: f64,
}

/// Report of a `curvature` run over a batch of points.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CurvatureRunReport {
    pub case: String,
    pub metric: String,
    pub step: f64,
    pub tolerance: f64,
    pub points: Vec<PointEntry>,
    pub summary: CurvatureRunSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form_ratio: Option<RatioReport>,
}

impl CurvatureRunReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "case {} / metric {} (step {:.0e}, tol {:.0e})\n",
            self.case, self.metric, self.step, self.tolerance
        ));
        for entry in &self.points {
            match (&entry.error, &entry.data) {
                (Some(err), _) => {
                    out.push_str(&format!("  point {:?}: error: {err}\n", entry.point))
                }
                (None, Some(d)) => {
                    out.push_str(&format!(
                        "  point [{:+.3}, {:+.3}, {:+.3}, {:+.3}]: |Ric| {:.2e}, |Rm| {:.2e}, scal {:+.4e}\n",
                        entry.point[0], entry.point[1], entry.point[2], entry.point[3],
                        d.ricci_max, d.riemann_max, d.scalar
                    ));
                    out.push_str(&format!(
                        "    sectional (coordinate planes): {}\n",
                        d.sectional
                            .iter()
                            .map(|k| format!("{k:+.4}"))
                            .collect::<Vec<_>>()
                            .join(", ")
                    ));
                }
                (None, None) => out.push_str(&format!("  point {:?}: no data\n", entry.point)),
            }
        }
        out.push_str(&format!(
            "summary: ricci_max {:.3e}, riemann_max {:.3e}, sectional range [{:+.4}, {:+.4}]\n",
            self.summary.ricci_max,
            self.summary.riemann_max,
            self.summary.sectional_min,
            self.summary.sectional_max
        ));
        if let Some(r) = &self.closed_form_ratio {
            out.push_str(&format!(
                "closed-form ratio over sampled points: [{:.6}, {:.6}]{}\n",
                r.min,
                r.max,
                if r.flagged {
                    " -- flagged: not a constant unit factor"
                } else {
                    ""
                }
            ));
        }
        out
    }
}
