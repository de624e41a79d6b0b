//! The verification pipeline behind the CLI subcommands.
//!
//! Stage order is fixed: validate → jacobi → quaternion → integrability →
//! hermitian → dω tables → lee form → classification → coordinate checks
//! (catalog cases only). Hard validation failures (unparseable input, a
//! non-Lie bracket table, degenerate or non-antisymmetric fundamental
//! forms) short-circuit; soft failures (a violated quaternion identity, a
//! non-Hermitian metric) are recorded and the remaining stages still run,
//! so the final classification can describe what the data actually is.

use std::fmt;
use std::path::Path;

use hyperlie::catalog::{get_case, CaseId};
use hyperlie::coordgeom::{
    cross_validate_curvature, hyperkahler_closedness_check, left_invariance_check,
    metric_at, model_space, numeric_curvature, seeded_pairs, seeded_points,
    structure_equation_check, MetricKind, ModelSpace, Point, CURVATURE_STEP, DEFAULT_SEED,
    FIRST_ORDER_STEP,
};
use hyperlie::ingest::InputDoc;
use hyperlie::liealg::{LieAlgebra, MetricOnAlgebra};
use hyperlie::quatstruct::{
    conformal_class_verdict, fundamental_form, hermitian_check, integrability_check,
    lee_form, quaternion_check, HypercomplexStructure, HyperHermitianData,
};

use crate::report::{
    CheckLine, CoordinateStage, CurvatureRunReport, CurvatureRunSummary, CurvatureSummary,
    LeeStage, PointCurvature, PointEntry, RatioReport, StageVerdict, VerificationReport,
};

/// Errors that abort a run before any report exists.
#[derive(Debug)]
pub enum PipelineError {
    /// Unusable input: unknown case, unreadable file, schema violation.
    Input(String),
    /// A computation failed in a way valid input should never trigger.
    Internal(String),
}

impl fmt::Display for PipelineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PipelineError::Input(m) => write!(f, "input error: {m}"),
            PipelineError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl std::error::Error for PipelineError {}

fn internal(e: hyperlie::Error) -> PipelineError {
    PipelineError::Internal(e.to_string())
}

/// What `verify` was pointed at.
pub enum VerifyTarget {
    Catalog(CaseId),
    File(String),
}

impl VerifyTarget {
    /// Catalog names win; anything else is treated as a path.
    pub fn parse(raw: &str) -> VerifyTarget {
        match raw.parse::<CaseId>() {
            Ok(id) => VerifyTarget::Catalog(id),
            Err(_) => VerifyTarget::File(raw.to_string()),
        }
    }
}

/// Tunables shared by the subcommands.
#[derive(Clone, Copy, Debug)]
pub struct Options {
    /// Tolerance for the first-order coordinate checks.
    pub tol: f64,
    /// Step for first-order finite differences.
    pub step: f64,
    /// Step for the curvature oracle (Richardson-extrapolated).
    pub curvature_step: f64,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            tol: 1e-6,
            step: FIRST_ORDER_STEP,
            curvature_step: CURVATURE_STEP,
            seed: DEFAULT_SEED,
        }
    }
}

/// Tolerance for second-derivative (curvature) quantities.
pub const CURVATURE_TOL: f64 = 1e-4;

/// Runs the full verification pipeline on a catalog case or an input file.
pub fn run_verify(
    target: &VerifyTarget,
    opts: &Options,
) -> Result<VerificationReport, PipelineError> {
    let (description, algebra, metric, structure, catalog_id) = match target {
        VerifyTarget::Catalog(id) => {
            let case = get_case(*id);
            (
                format!("catalog {} ({})", id, case.description),
                case.data.algebra().clone(),
                case.data.metric().clone(),
                case.data.structure().clone(),
                Some(*id),
            )
        }
        VerifyTarget::File(path) => {
            let text = std::fs::read_to_string(Path::new(path)).map_err(|e| {
                PipelineError::Input(format!("cannot read {path}: {e}"))
            })?;
            let doc =
                InputDoc::from_json(&text).map_err(|e| PipelineError::Input(e.to_string()))?;
            let (algebra, metric, structure) =
                doc.build().map_err(|e| PipelineError::Input(e.to_string()))?;
            (format!("file {path}"), algebra, metric, structure, None)
        }
    };
    verify_data(description, algebra, metric, structure, catalog_id, opts)
}

fn verify_data(
    description: String,
    algebra: LieAlgebra,
    metric: MetricOnAlgebra,
    structure: HypercomplexStructure,
    catalog_id: Option<CaseId>,
    opts: &Options,
) -> Result<VerificationReport, PipelineError> {
    let mut report = VerificationReport {
        input: description,
        jacobi: StageVerdict::fail("not run"),
        quaternion: None,
        integrability: None,
        hermitian: None,
        d_omega: None,
        lee_form: None,
        classification: None,
        coordinate: None,
        note: None,
        exit_code: 0,
    };

    // 1. Jacobi: hard gate; nothing downstream means anything without it.
    let jacobi = algebra.jacobi_check();
    report.jacobi = if jacobi.holds {
        StageVerdict::pass("bracket table satisfies the Jacobi identity; d∘d = 0")
    } else {
        let w = jacobi.witness.as_ref().expect("failing witness");
        StageVerdict::fail(format!(
            "cyclic sum over basis triple {:?} is nonzero",
            w.triple
        ))
    };
    if !jacobi.holds {
        return Ok(report.seal());
    }

    // 2-4. Algebraic structure checks: soft, recorded.
    let quaternion = quaternion_check(structure.j(1), structure.j(2), structure.j(3))
        .map_err(internal)?;
    report.quaternion = Some(if quaternion.holds {
        StageVerdict::pass("all five quaternion identities hold")
    } else {
        StageVerdict::fail(format!(
            "identity {} violated",
            quaternion.failed.expect("failed identity")
        ))
    });

    let integrability = integrability_check(&algebra, &structure).map_err(internal)?;
    report.integrability = Some(if integrability.holds {
        StageVerdict::pass("Nijenhuis tensors vanish on all basis pairs")
    } else {
        let (alpha, i, j, _) = integrability.witness.as_ref().expect("witness");
        StageVerdict::fail(format!("N_{alpha}(e{i}, e{j}) is nonzero"))
    });

    let hermitian = hermitian_check(&metric, &structure).map_err(internal)?;
    report.hermitian = Some(if hermitian.holds {
        StageVerdict::pass("metric is Hermitian for each J")
    } else {
        StageVerdict::fail(format!(
            "J{}ᵀ g J{} ≠ g",
            hermitian.failed_alpha.expect("alpha"),
            hermitian.failed_alpha.expect("alpha")
        ))
    });

    // 5. Fundamental forms and their differentials. A non-antisymmetric
    // g·J cannot be packed into a form at all: hard stop.
    let mut omegas = Vec::new();
    for alpha in 1..=3 {
        match fundamental_form(&metric, structure.j(alpha)) {
            Ok(omega) => omegas.push(omega),
            Err(e) => {
                report.hermitian = Some(StageVerdict::fail(format!(
                    "ω_{alpha} cannot be formed: {e}"
                )));
                return Ok(report.seal());
            }
        }
    }
    let omegas: [hyperlie::KForm; 3] = omegas.try_into().expect("three forms");
    let d_omega_forms: Vec<hyperlie::KForm> = omegas
        .iter()
        .map(|o| algebra.ce_differential(o))
        .collect::<hyperlie::Result<_>>()
        .map_err(internal)?;
    report.d_omega = Some([
        d_omega_forms[0].to_string(),
        d_omega_forms[1].to_string(),
        d_omega_forms[2].to_string(),
    ]);

    // 6. Lee form; degenerate ω is a hard stop.
    let data = HyperHermitianData::from_raw_parts(
        algebra.clone(),
        metric.clone(),
        structure,
        omegas,
    );
    let lee = match lee_form(&data) {
        Ok(lee) => lee,
        Err(e) => {
            report.note = Some(format!("lee-form stage aborted: {e}"));
            return Ok(report.seal());
        }
    };
    report.lee_form = Some(LeeStage {
        theta: lee.theta.to_string(),
        consistent: lee.consistent,
        closed: lee.closed,
        rank: lee.rank,
        residuals: [
            lee.residuals[0].to_string(),
            lee.residuals[1].to_string(),
            lee.residuals[2].to_string(),
        ],
    });

    // 7. Classification.
    report.classification = Some(conformal_class_verdict(&lee).to_string());

    // 8. Coordinate checks for catalog cases with a model.
    if let Some(id) = catalog_id {
        if id != CaseId::Abelian {
            let model = model_space(id).map_err(internal)?;
            report.coordinate =
                Some(coordinate_stage(&model, &data, opts).map_err(internal)?);
        }
    }
    Ok(report.seal())
}

fn coordinate_stage(
    model: &ModelSpace,
    data: &HyperHermitianData,
    opts: &Options,
) -> hyperlie::Result<CoordinateStage> {
    let id = model.id();
    let points = seeded_points(id, 20, opts.seed)?;
    let structure_equations =
        structure_equation_check(model, data.algebra(), &points, opts.step, opts.tol)?
            .into_iter()
            .enumerate()
            .map(|(j, v)| CheckLine {
                name: format!("structure equation de^{}", j + 1),
                passed: v.pass,
                max_deviation: v.max_deviation,
                tolerance: v.tolerance,
            })
            .collect();

    let mut invariance_worst = 0.0f64;
    for (p, q) in seeded_pairs(id, 5, opts.seed)? {
        let v = left_invariance_check(model, &p, &q, opts.step, opts.tol)?;
        invariance_worst = invariance_worst.max(v.max_deviation);
    }
    let left_invariance = CheckLine {
        name: "left invariance of coframe".to_string(),
        passed: invariance_worst < opts.tol,
        max_deviation: invariance_worst,
        tolerance: opts.tol,
    };

    let closedness =
        hyperkahler_closedness_check(model, data, &points, opts.step, opts.tol)?
            .into_iter()
            .enumerate()
            .map(|(alpha, v)| CheckLine {
                name: format!("d(e^-f ω_{}) = 0", alpha + 1),
                passed: v.pass,
                max_deviation: v.max_deviation,
                tolerance: v.tolerance,
            })
            .collect();

    let curvature_points = &points[..3.min(points.len())];
    let mut ricci_max = 0.0f64;
    let mut riemann_max = 0.0f64;
    for p in curvature_points {
        let report = numeric_curvature(
            |pt| metric_at(model, pt, MetricKind::HyperKahlerRescaled),
            p,
            opts.curvature_step,
        )?;
        ricci_max = ricci_max.max(report.max_abs_ricci());
        riemann_max = riemann_max.max(report.max_abs_riemann);
    }
    let curvature = CurvatureSummary {
        points: curvature_points.len(),
        rescaled_ricci_max: ricci_max,
        rescaled_riemann_max: riemann_max,
        rescaled_ricci_flat: ricci_max < CURVATURE_TOL,
    };

    let closed_form_ratio = closed_form_ratio(model, &points)?;
    Ok(CoordinateStage {
        structure_equations,
        left_invariance,
        hyperkahler_closedness: closedness,
        curvature,
        closed_form_ratio,
    })
}

/// Entrywise quotients rescaled/closed-form over the nonzero entries at
/// the sampled points.
fn closed_form_ratio(model: &ModelSpace, points: &[Point]) -> hyperlie::Result<RatioReport> {
    let mut ratios = Vec::new();
    for p in points {
        let rescaled = metric_at(model, p, MetricKind::HyperKahlerRescaled)?;
        let closed = metric_at(model, p, MetricKind::HyperKahlerClosedForm)?;
        for i in 0..4 {
            for j in 0..4 {
                if closed[(i, j)].abs() > 1e-12 {
                    ratios.push(rescaled[(i, j)] / closed[(i, j)]);
                }
            }
        }
    }
    Ok(RatioReport::from_samples(&ratios))
}

/// Points specification for `curvature`: explicit list or seeded count.
pub enum PointsSpec {
    Explicit(Vec<Point>),
    Seeded(usize),
}

impl PointsSpec {
    /// Parses `"x,y,z,t; x,y,z,t; ..."`.
    pub fn parse_explicit(text: &str) -> Result<PointsSpec, PipelineError> {
        let mut points = Vec::new();
        for chunk in text.split(';') {
            let coords: Vec<f64> = chunk
                .split(',')
                .map(|c| {
                    c.trim().parse::<f64>().map_err(|e| {
                        PipelineError::Input(format!("bad coordinate {c:?}: {e}"))
                    })
                })
                .collect::<Result<_, _>>()?;
            if coords.len() != 4 {
                return Err(PipelineError::Input(format!(
                    "point {chunk:?} must have 4 coordinates"
                )));
            }
            points.push([coords[0], coords[1], coords[2], coords[3]]);
        }
        if points.is_empty() {
            return Err(PipelineError::Input("no points given".to_string()));
        }
        Ok(PointsSpec::Explicit(points))
    }
}

/// Runs the curvature oracle over a batch of points and summarizes.
pub fn run_curvature(
    id: CaseId,
    kind: MetricKind,
    spec: &PointsSpec,
    opts: &Options,
) -> Result<CurvatureRunReport, PipelineError> {
    let model = model_space(id).map_err(|e| PipelineError::Input(e.to_string()))?;
    let points = match spec {
        PointsSpec::Explicit(points) => points.clone(),
        PointsSpec::Seeded(count) => {
            seeded_points(id, *count, opts.seed).map_err(|e| PipelineError::Input(e.to_string()))?
        }
    };
    let mut entries = Vec::new();
    let mut ricci_max = 0.0f64;
    let mut riemann_max = 0.0f64;
    let mut sect_min = f64::INFINITY;
    let mut sect_max = f64::NEG_INFINITY;
    let mut successes = 0usize;
    for p in &points {
        match numeric_curvature(|pt| metric_at(&model, pt, kind), p, opts.curvature_step) {
            Ok(report) => {
                successes += 1;
                let sectional: Vec<f64> =
                    report.sectional.iter().map(|s| s.curvature).collect();
                for k in &sectional {
                    sect_min = sect_min.min(*k);
                    sect_max = sect_max.max(*k);
                }
                let pr = report.max_abs_ricci();
                ricci_max = ricci_max.max(pr);
                riemann_max = riemann_max.max(report.max_abs_riemann);
                let mut verdicts = std::collections::BTreeMap::new();
                verdicts.insert("ricci_flat".to_string(), pr < CURVATURE_TOL);
                verdicts.insert(
                    "flat".to_string(),
                    report.max_abs_riemann < CURVATURE_TOL,
                );
                verdicts.insert(
                    "negative_sectional".to_string(),
                    sectional.iter().all(|k| *k < 0.0),
                );
                entries.push(PointEntry {
                    point: *p,
                    error: None,
                    data: Some(PointCurvature {
                        ricci_max: pr,
                        riemann_max: report.max_abs_riemann,
                        scalar: report.scalar,
                        sectional,
                        verdicts,
                    }),
                });
            }
            // per-point domain problems are recorded, not fatal
            Err(e) => entries.push(PointEntry {
                point: *p,
                error: Some(e.to_string()),
                data: None,
            }),
        }
    }
    if successes == 0 {
        return Err(PipelineError::Input(
            "no requested point admitted a curvature evaluation".to_string(),
        ));
    }
    let closed_form_ratio = match kind {
        MetricKind::HyperKahlerRescaled => Some(
            closed_form_ratio(&model, &points)
                .map_err(|e| PipelineError::Internal(e.to_string()))?,
        ),
        _ => None,
    };
    Ok(CurvatureRunReport {
        case: id.to_string(),
        metric: kind.name().to_string(),
        step: opts.curvature_step,
        tolerance: CURVATURE_TOL,
        points: entries,
        summary: CurvatureRunSummary {
            ricci_max,
            riemann_max,
            sectional_min: sect_min,
            sectional_max: sect_max,
        },
        closed_form_ratio,
    })
}

/// Exact-vs-numeric curvature agreement at seeded points; used by the
/// acceptance suite and exposed for completeness.
pub fn run_cross_validation(
    id: CaseId,
    count: usize,
    opts: &Options,
) -> Result<Vec<(Point, f64, bool)>, PipelineError> {
    let model = model_space(id).map_err(|e| PipelineError::Input(e.to_string()))?;
    let case = get_case(id);
    let points =
        seeded_points(id, count, opts.seed).map_err(|e| PipelineError::Input(e.to_string()))?;
    let mut out = Vec::new();
    for p in points {
        let verdict = cross_validate_curvature(
            &model,
            case.data.algebra(),
            case.data.metric(),
            &p,
            opts.curvature_step,
            CURVATURE_TOL,
        )
        .map_err(|e| PipelineError::Internal(e.to_string()))?;
        out.push((p, verdict.max_deviation, verdict.pass));
    }
    Ok(out)
}

/// Emits a catalog fixture in the shared JSON input schema.
pub fn catalog_dump(id: CaseId) -> InputDoc {
    InputDoc::from_case(get_case(id))
}
