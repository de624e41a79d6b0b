//! Finite-difference Levi-Civita curvature oracle.
//!
//! Christoffel symbols come from central differences of the metric; their
//! derivatives are assembled analytically from first and second metric
//! differences (no nested differencing). The Riemann tensor is Richardson
//! extrapolated from steps `h` and `h/2`, cancelling the O(h²) truncation
//! term. Second differences amplify roundoff like eps/h², so the default
//! curvature step is 1e-3 rather than the 1e-5 used for first-derivative
//! checks; with extrapolation both error sources sit far below the 1e-4
//! tolerances.
//!
//! Index conventions match the exact computer: `christoffel[i][j][k]` is
//! the coefficient of `∂_k` in `∇_{∂_i} ∂_j`, and `riemann[i][j][k][l]` the
//! `∂_l` component of `R(∂_i, ∂_j) ∂_k` with
//! `R(x,y)z = ∇_x ∇_y z - ∇_y ∇_x z - ∇_[x,y] z`.

use nalgebra::{Cholesky, Matrix4, Vector4};

use crate::coordgeom::models::{MetricKind, ModelSpace, Point};
use crate::error::{Error, Result};
use crate::liealg::{curvature_exact, LieAlgebra, MetricOnAlgebra};

/// Default step for curvature differencing (see module docs).
pub const CURVATURE_STEP: f64 = 1e-3;

/// Default step for first-derivative checks.
pub const FIRST_ORDER_STEP: f64 = 1e-5;

type Riemann = [[[[f64; 4]; 4]; 4]; 4];

/// Sectional curvature of one sampled plane.
#[derive(Clone, Copy, Debug)]
pub struct SectionalSample {
    pub u: [f64; 4],
    pub v: [f64; 4],
    pub curvature: f64,
}

/// Curvature data of a metric field at a point.
#[derive(Clone, Debug)]
pub struct CurvatureReport {
    pub point: Point,
    /// Metric value at the point (exact evaluation, no differencing).
    pub metric: Matrix4<f64>,
    pub christoffel: [[[f64; 4]; 4]; 4],
    pub riemann: Riemann,
    pub ricci: [[f64; 4]; 4],
    pub scalar: f64,
    pub max_abs_riemann: f64,
    /// The six coordinate planes, in lexicographic order.
    pub sectional: Vec<SectionalSample>,
}

impl CurvatureReport {
    pub fn max_abs_ricci(&self) -> f64 {
        self.ricci
            .iter()
            .flatten()
            .fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Sectional curvature of the plane spanned by arbitrary vectors,
    /// `None` when the pair is (numerically) degenerate.
    pub fn sectional_of_plane(&self, u: &[f64; 4], v: &[f64; 4]) -> Option<f64> {
        sectional_curvature(&self.riemann, &self.metric, u, v)
    }

    /// Eigenvalues of the Ricci endomorphism `g⁻¹ Ric`, ascending. These
    /// are frame-independent, unlike raw coordinate components.
    pub fn ricci_endomorphism_eigenvalues(&self) -> Result<[f64; 4]> {
        let ric = Matrix4::from_fn(|i, j| self.ricci[i][j]);
        let chol = Cholesky::new(self.metric).ok_or(Error::NumericNotSpd {
            point: self.point,
        })?;
        let l_inv = chol
            .l()
            .try_inverse()
            .ok_or(Error::NumericNotSpd { point: self.point })?;
        let symmetric = l_inv * ric * l_inv.transpose();
        let symmetric = (symmetric + symmetric.transpose()) / 2.0;
        let mut eigen: Vec<f64> = symmetric
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .collect();
        eigen.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
        Ok([eigen[0], eigen[1], eigen[2], eigen[3]])
    }
}

/// Curvature of a pointwise metric field, Richardson extrapolated from
/// steps `step` and `step/2`.
pub fn numeric_curvature<F>(metric_field: F, p: &Point, step: f64) -> Result<CurvatureReport>
where
    F: Fn(&Point) -> Result<Matrix4<f64>>,
{
    let metric = metric_field(p)?;
    if Cholesky::new(metric).is_none() {
        return Err(Error::NumericNotSpd { point: *p });
    }
    let coarse = raw_curvature(&metric_field, p, step)?;
    let fine = raw_curvature(&metric_field, p, step / 2.0)?;

    let mut christoffel = [[[0.0; 4]; 4]; 4];
    let mut riemann = [[[[0.0; 4]; 4]; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                christoffel[i][j][k] =
                    (4.0 * fine.christoffel[i][j][k] - coarse.christoffel[i][j][k]) / 3.0;
                for l in 0..4 {
                    riemann[i][j][k][l] =
                        (4.0 * fine.riemann[i][j][k][l] - coarse.riemann[i][j][k][l]) / 3.0;
                }
            }
        }
    }

    let mut ricci = [[0.0; 4]; 4];
    for j in 0..4 {
        for k in 0..4 {
            ricci[j][k] = (0..4).map(|i| riemann[i][j][k][i]).sum();
        }
    }
    let g_inv = metric.try_inverse().ok_or(Error::NumericNotSpd { point: *p })?;
    let mut scalar = 0.0;
    for j in 0..4 {
        for k in 0..4 {
            scalar += g_inv[(j, k)] * ricci[j][k];
        }
    }
    let max_abs_riemann = riemann
        .iter()
        .flatten()
        .flatten()
        .flatten()
        .fold(0.0f64, |m, v| m.max(v.abs()));

    let mut sectional = Vec::new();
    for i in 0..4 {
        for j in (i + 1)..4 {
            let mut u = [0.0; 4];
            let mut v = [0.0; 4];
            u[i] = 1.0;
            v[j] = 1.0;
            if let Some(k) = sectional_curvature(&riemann, &metric, &u, &v) {
                sectional.push(SectionalSample { u, v, curvature: k });
            }
        }
    }

    Ok(CurvatureReport {
        point: *p,
        metric,
        christoffel,
        riemann,
        ricci,
        scalar,
        max_abs_riemann,
        sectional,
    })
}

struct RawCurvature {
    christoffel: [[[f64; 4]; 4]; 4],
    riemann: Riemann,
}

fn raw_curvature<F>(metric_field: &F, p: &Point, h: f64) -> Result<RawCurvature>
where
    F: Fn(&Point) -> Result<Matrix4<f64>>,
{
    let shift = |mu: usize, amount: f64| -> Point {
        let mut q = *p;
        q[mu] += amount;
        q
    };
    let g0 = metric_field(p)?;
    let g_inv = g0.try_inverse().ok_or(Error::NumericNotSpd { point: *p })?;
    let mut g_plus = Vec::with_capacity(4);
    let mut g_minus = Vec::with_capacity(4);
    for mu in 0..4 {
        g_plus.push(metric_field(&shift(mu, h))?);
        g_minus.push(metric_field(&shift(mu, -h))?);
    }
    // first partials ∂_mu g
    let dg: Vec<Matrix4<f64>> = (0..4)
        .map(|mu| (g_plus[mu] - g_minus[mu]) / (2.0 * h))
        .collect();
    // second partials ∂_mu ∂_nu g
    let mut d2g = vec![vec![Matrix4::zeros(); 4]; 4];
    for mu in 0..4 {
        d2g[mu][mu] = (g_plus[mu] - 2.0 * g0 + g_minus[mu]) / (h * h);
        for nu in (mu + 1)..4 {
            let pp = metric_field(&{
                let mut q = shift(mu, h);
                q[nu] += h;
                q
            })?;
            let pm = metric_field(&{
                let mut q = shift(mu, h);
                q[nu] -= h;
                q
            })?;
            let mp = metric_field(&{
                let mut q = shift(mu, -h);
                q[nu] += h;
                q
            })?;
            let mm = metric_field(&{
                let mut q = shift(mu, -h);
                q[nu] -= h;
                q
            })?;
            let mixed = (pp - pm - mp + mm) / (4.0 * h * h);
            d2g[mu][nu] = mixed;
            d2g[nu][mu] = mixed;
        }
    }
    // ∂_mu g⁻¹ = -g⁻¹ (∂_mu g) g⁻¹
    let dg_inv: Vec<Matrix4<f64>> = (0..4).map(|mu| -g_inv * dg[mu] * g_inv).collect();

    let gamma_lower =
        |i: usize, j: usize, m: usize, dg: &[Matrix4<f64>]| -> f64 {
            dg[i][(j, m)] + dg[j][(i, m)] - dg[m][(i, j)]
        };
    let mut christoffel = [[[0.0; 4]; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                christoffel[i][j][k] = 0.5
                    * (0..4)
                        .map(|m| g_inv[(k, m)] * gamma_lower(i, j, m, &dg))
                        .sum::<f64>();
            }
        }
    }
    // ∂_a Γ^k_{ij}
    let mut dgamma = [[[[0.0; 4]; 4]; 4]; 4]; // [a][i][j][k]
    for a in 0..4 {
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let mut value = 0.0;
                    for m in 0..4 {
                        value += dg_inv[a][(k, m)] * gamma_lower(i, j, m, &dg);
                        value += g_inv[(k, m)]
                            * (d2g[a][i][(j, m)] + d2g[a][j][(i, m)] - d2g[a][m][(i, j)]);
                    }
                    dgamma[a][i][j][k] = 0.5 * value;
                }
            }
        }
    }
    let mut riemann = [[[[0.0; 4]; 4]; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    let mut value = dgamma[i][j][k][l] - dgamma[j][i][k][l];
                    for m in 0..4 {
                        value += christoffel[j][k][m] * christoffel[i][m][l]
                            - christoffel[i][k][m] * christoffel[j][m][l];
                    }
                    riemann[i][j][k][l] = value;
                }
            }
        }
    }
    Ok(RawCurvature {
        christoffel,
        riemann,
    })
}

/// `K(u, v) = g(R(u,v)v, u) / (|u|²|v|² - g(u,v)²)`; `None` for degenerate
/// pairs.
pub fn sectional_curvature(
    riemann: &Riemann,
    metric: &Matrix4<f64>,
    u: &[f64; 4],
    v: &[f64; 4],
) -> Option<f64> {
    let uv = Vector4::from_row_slice(u);
    let vv = Vector4::from_row_slice(v);
    let gu = metric * uv;
    let gv = metric * vv;
    let uu = uv.dot(&gu);
    let vvn = vv.dot(&gv);
    let uvn = uv.dot(&gv);
    let denom = uu * vvn - uvn * uvn;
    if denom.abs() < 1e-9 {
        return None;
    }
    let mut r_uvv = [0.0; 4];
    for (mu, &a) in u.iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        for (nu, &b) in v.iter().enumerate() {
            if b == 0.0 {
                continue;
            }
            for (ka, &c) in v.iter().enumerate() {
                if c == 0.0 {
                    continue;
                }
                let w = a * b * c;
                for l in 0..4 {
                    r_uvv[l] += w * riemann[mu][nu][ka][l];
                }
            }
        }
    }
    let numerator: f64 = (0..4).map(|l| r_uvv[l] * gu[l]).sum();
    Some(numerator / denom)
}

/// Result of comparing the numeric Riemann tensor, re-expressed in the
/// left-invariant frame, against the exact left-invariant curvature.
#[derive(Clone, Copy, Debug)]
pub struct CrossValidation {
    pub pass: bool,
    pub max_deviation: f64,
    pub tolerance: f64,
}

/// Ties the two curvature paths together at a point: the hyper-Hermitian
/// metric field is differentiated numerically, converted to the coframe
/// basis, and compared entry by entry with the exact Koszul curvature.
pub fn cross_validate_curvature(
    model: &ModelSpace,
    algebra: &LieAlgebra,
    metric: &MetricOnAlgebra,
    p: &Point,
    step: f64,
    tol: f64,
) -> Result<CrossValidation> {
    let report = numeric_curvature(
        |pt| model.metric(pt, MetricKind::HyperHermitian),
        p,
        step,
    )?;
    let coframe = model.coframe(p)?;
    let frame = coframe
        .try_inverse()
        .ok_or(Error::NumericNotSpd { point: *p })?;
    let exact = curvature_exact(algebra, metric)?;
    let mut deviation: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    // R_frame(i,j,k,l) = F^μ_i F^ν_j F^κ_k C^l_δ R^δ_{μνκ}
                    let mut value = 0.0;
                    for mu in 0..4 {
                        let fi = frame[(mu, i)];
                        if fi == 0.0 {
                            continue;
                        }
                        for nu in 0..4 {
                            let fj = frame[(nu, j)];
                            if fj == 0.0 {
                                continue;
                            }
                            for ka in 0..4 {
                                let fk = frame[(ka, k)];
                                if fk == 0.0 {
                                    continue;
                                }
                                for delta in 0..4 {
                                    value += fi
                                        * fj
                                        * fk
                                        * coframe[(l, delta)]
                                        * report.riemann[mu][nu][ka][delta];
                                }
                            }
                        }
                    }
                    let expected = exact.riemann(i + 1, j + 1, k + 1, l + 1).to_f64();
                    deviation = deviation.max((value - expected).abs());
                }
            }
        }
    }
    Ok(CrossValidation {
        pass: deviation < tol,
        max_deviation: deviation,
        tolerance: tol,
    })
}

/// Gram-Schmidt with respect to `metric`, returning `None` when the pair
/// is too close to degenerate to normalize stably.
pub fn orthonormalize_plane(
    metric: &Matrix4<f64>,
    u: &[f64; 4],
    v: &[f64; 4],
) -> Option<([f64; 4], [f64; 4])> {
    let uv = Vector4::from_row_slice(u);
    let vv = Vector4::from_row_slice(v);
    let norm_u = (uv.dot(&(metric * uv))).sqrt();
    if !norm_u.is_finite() || norm_u <= 1e-6 {
        return None;
    }
    let e1 = uv / norm_u;
    let proj = vv - (vv.dot(&(metric * e1))) * e1;
    let norm_p = (proj.dot(&(metric * proj))).sqrt();
    if !norm_p.is_finite() || norm_p <= 1e-6 {
        return None;
    }
    let e2 = proj / norm_p;
    Some((
        [e1[0], e1[1], e1[2], e1[3]],
        [e2[0], e2[1], e2[2], e2[3]],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{get_case, CaseId};
    use crate::coordgeom::models::model_space;

    #[test]
    fn euclidean_metric_is_flat() {
        let report = numeric_curvature(
            |_: &Point| Ok(Matrix4::identity()),
            &[0.3, 0.1, -0.2, 0.5],
            CURVATURE_STEP,
        )
        .unwrap();
        assert!(report.max_abs_riemann < 1e-8);
        assert!(report.max_abs_ricci() < 1e-8);
        assert!(report.scalar.abs() < 1e-8);
    }

    #[test]
    fn round_sphere_metric_recovers_its_curvature() {
        // 2-sphere of radius 2 as a warped block, dx² + 4 sin²(x/2) dy²:
        // K = 1/4 on the (x, y) plane; analytic check of the whole pipeline
        let field = |p: &Point| {
            let mut g = Matrix4::identity();
            g[(1, 1)] = (p[0] / 2.0).sin().powi(2) * 4.0;
            Ok(g)
        };
        let p = [0.9, 0.4, 0.0, 0.0];
        let report = numeric_curvature(field, &p, CURVATURE_STEP).unwrap();
        let k = report
            .sectional_of_plane(&[1.0, 0.0, 0.0, 0.0], &[0.0, 1.0, 0.0, 0.0])
            .unwrap();
        assert!((k - 0.25).abs() < 1e-6, "K = {k}");
    }

    #[test]
    fn case3_metric_has_constant_negative_curvature() {
        let model = model_space(CaseId::Case3).unwrap();
        let p = [0.4, -0.8, 1.2, 0.5];
        let report = numeric_curvature(
            |pt| model.metric(pt, MetricKind::HyperHermitian),
            &p,
            CURVATURE_STEP,
        )
        .unwrap();
        for s in &report.sectional {
            assert!((s.curvature + 1.0).abs() < 1e-4, "K = {}", s.curvature);
        }
    }

    #[test]
    fn case4_rescaled_metric_is_ricci_flat_but_curved() {
        let model = model_space(CaseId::Case4).unwrap();
        let p = [0.6, -0.4, 0.9, 0.3];
        let report = numeric_curvature(
            |pt| model.metric(pt, MetricKind::HyperKahlerRescaled),
            &p,
            CURVATURE_STEP,
        )
        .unwrap();
        assert!(report.max_abs_ricci() < 1e-4, "ricci {}", report.max_abs_ricci());
        assert!(report.max_abs_riemann > 1e-2, "riemann {}", report.max_abs_riemann);
    }

    #[test]
    fn cases_one_to_three_rescaled_metrics_are_flat() {
        for id in [CaseId::Case1, CaseId::Case2, CaseId::Case3] {
            let model = model_space(id).unwrap();
            let p = [0.8, -0.5, 0.7, 0.9];
            let report = numeric_curvature(
                |pt| model.metric(pt, MetricKind::HyperKahlerRescaled),
                &p,
                CURVATURE_STEP,
            )
            .unwrap();
            assert!(
                report.max_abs_riemann < 1e-4,
                "{id}: riemann {}",
                report.max_abs_riemann
            );
        }
    }

    #[test]
    fn cross_validation_ties_both_curvature_paths() {
        for (id, p) in [
            (CaseId::Case1, [1.0, 0.0, 0.0, 0.0]),
            (CaseId::Case4, [0.5, -0.3, 0.8, 0.4]),
        ] {
            let model = model_space(id).unwrap();
            let case = get_case(id);
            let verdict = cross_validate_curvature(
                &model,
                case.data.algebra(),
                case.data.metric(),
                &p,
                CURVATURE_STEP,
                1e-4,
            )
            .unwrap();
            assert!(verdict.pass, "{id}: deviation {}", verdict.max_deviation);
        }
    }

    #[test]
    fn case1_ricci_pattern_matches_the_product_geometry() {
        let model = model_space(CaseId::Case1).unwrap();
        let p = [1.3, -0.4, 0.6, 0.2];
        let report = numeric_curvature(
            |pt| model.metric(pt, MetricKind::HyperHermitian),
            &p,
            CURVATURE_STEP,
        )
        .unwrap();
        let eigen = report.ricci_endomorphism_eigenvalues().unwrap();
        assert!(eigen[0].abs() < 1e-4, "flat direction: {eigen:?}");
        for pair in eigen[1..].windows(2) {
            assert!((pair[0] - pair[1]).abs() < 1e-4, "{eigen:?}");
        }
        assert!(eigen[1] > 0.1, "{eigen:?}");
    }

    #[test]
    fn orthonormalization_rejects_degenerate_pairs() {
        let g = Matrix4::identity();
        let u = [1.0, 0.0, 0.0, 0.0];
        assert!(orthonormalize_plane(&g, &u, &u).is_none());
        let (e1, e2) = orthonormalize_plane(&g, &u, &[1.0, 1.0, 0.0, 0.0]).unwrap();
        assert!((e1[0] - 1.0).abs() < 1e-12);
        assert!((e2[1] - 1.0).abs() < 1e-12);
    }
}
