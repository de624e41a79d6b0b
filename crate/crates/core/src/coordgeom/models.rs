//! The four coordinate realizations: chart domains, group products,
//! left-invariant coframes, conformal potentials and the closed-form
//! rescaled metrics.
//!
//! Conventions, fixed for the whole numeric layer:
//! - a [`Point`] is `(x, y, z, t)` with coordinate indices `0..4` in that
//!   order; 1-forms and metrics are expressed in the cobasis
//!   `(dx, dy, dz, dt)` with the same ordering;
//! - `coframe(p)` returns the 4x4 matrix whose row `j-1` holds the
//!   components of the left-invariant 1-form `e^j` at `p`;
//! - the conformal potential `f` satisfies `g = e^f · ĥ` with `θ = df`, so
//!   the rescaled metric is `ĥ = e^{-f} · g`.

use nalgebra::Matrix4;

use crate::catalog::CaseId;
use crate::error::{Error, Result};

/// Chart coordinates `(x, y, z, t)`.
pub type Point = [f64; 4];

/// Which metric to evaluate at a point.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MetricKind {
    /// `g = Σ_j (e^j)²`, the sum of squared coframe rows.
    HyperHermitian,
    /// `ĥ = e^{-f(p)} g(p)`, computed literally as that product.
    HyperKahlerRescaled,
    /// The closed-form expression for `ĥ`, pulled back to this chart
    /// through the substitution (`s = e^z`, `s = e^t` or `s = e^{t/2}`)
    /// that relates the two coordinate systems.
    HyperKahlerClosedForm,
}

impl MetricKind {
    pub fn name(&self) -> &'static str {
        match self {
            MetricKind::HyperHermitian => "hyperhermitian",
            MetricKind::HyperKahlerRescaled => "hyperkahler-rescaled",
            MetricKind::HyperKahlerClosedForm => "hyperkahler-closed-form",
        }
    }
}

impl std::str::FromStr for MetricKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "hyperhermitian" | "hh" => Ok(MetricKind::HyperHermitian),
            "hyperkahler-rescaled" | "rescaled" | "hk" => Ok(MetricKind::HyperKahlerRescaled),
            "hyperkahler-closed-form" | "closed-form" => Ok(MetricKind::HyperKahlerClosedForm),
            other => Err(Error::InvalidInput(format!(
                "unknown metric selector {other:?}"
            ))),
        }
    }
}

/// One of the four coordinate models.
#[derive(Clone, Copy, Debug)]
pub struct ModelSpace {
    id: CaseId,
}

/// Frozen coordinate model for a case; errors for the abelian baseline,
/// which has no chart here.
pub fn model_space(id: CaseId) -> Result<ModelSpace> {
    ModelSpace::new(id)
}

/// The displayed group product `p · q`; both points must lie in the chart.
pub fn group_mul(model: &ModelSpace, p: &Point, q: &Point) -> Result<Point> {
    model.product(p, q)
}

/// Metric matrix of the selected kind at `p`.
pub fn metric_at(model: &ModelSpace, p: &Point, which: MetricKind) -> Result<Matrix4<f64>> {
    model.metric(p, which)
}

impl ModelSpace {
    pub fn new(id: CaseId) -> Result<Self> {
        if id == CaseId::Abelian {
            return Err(Error::NoCoordinateModel(id.to_string()));
        }
        Ok(ModelSpace { id })
    }

    pub fn id(&self) -> CaseId {
        self.id
    }

    /// Chart membership: the punctured space for the quaternionic case,
    /// all of the coordinate space otherwise.
    pub fn contains(&self, p: &Point) -> bool {
        p.iter().all(|c| c.is_finite())
            && match self.id {
                CaseId::Case1 => radius_squared(p) > 0.0,
                _ => true,
            }
    }

    /// The group unit of the chart.
    pub fn unit(&self) -> Point {
        match self.id {
            CaseId::Case1 => [1.0, 0.0, 0.0, 0.0],
            _ => [0.0, 0.0, 0.0, 0.0],
        }
    }

    fn check_domain(&self, p: &Point) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::OutsideDomain {
                model: self.id.to_string(),
                point: *p,
            })
        }
    }

    /// The displayed group product; linear in the second argument in every
    /// chart, which keeps the finite-difference Jacobians sharp.
    pub fn product(&self, p: &Point, q: &Point) -> Result<Point> {
        self.check_domain(p)?;
        self.check_domain(q)?;
        let [x, y, z, t] = *p;
        let [qx, qy, qz, qt] = *q;
        let out = match self.id {
            // quaternion multiplication with (1, i, j, k) = (x, y, z, t)
            CaseId::Case1 => [
                x * qx - y * qy - z * qz - t * qt,
                x * qy + y * qx + z * qt - t * qz,
                x * qz - y * qt + z * qx + t * qy,
                x * qt + y * qz - z * qy + t * qx,
            ],
            CaseId::Case2 => [
                x + z.exp() * (qx * t.cos() - qy * t.sin()),
                y + z.exp() * (qx * t.sin() + qy * t.cos()),
                z + qz,
                t + qt,
            ],
            CaseId::Case3 => [
                x + t.exp() * qx,
                y + t.exp() * qy,
                z + t.exp() * qz,
                t + qt,
            ],
            CaseId::Case4 => [
                x + (t / 2.0).exp() * qx,
                y + (t / 2.0).exp() * qy,
                z + t.exp() * qz + (t / 2.0).exp() / 4.0 * (x * qy - y * qx),
                t + qt,
            ],
            CaseId::Abelian => unreachable!("no abelian model"),
        };
        Ok(out)
    }

    /// Rows are `e^1..e^4` in the `(dx, dy, dz, dt)` cobasis.
    pub fn coframe(&self, p: &Point) -> Result<Matrix4<f64>> {
        self.check_domain(p)?;
        let [x, y, z, t] = *p;
        let m = match self.id {
            CaseId::Case1 => {
                let s = 2.0 / radius_squared(p);
                Matrix4::new(
                    s * x, s * y, s * z, s * t, //
                    -s * y, s * x, s * t, -s * z, //
                    -s * z, -s * t, s * x, s * y, //
                    -s * t, s * z, -s * y, s * x,
                )
            }
            CaseId::Case2 => {
                let ez = (-z).exp();
                Matrix4::new(
                    ez * t.cos(), ez * t.sin(), 0.0, 0.0, //
                    -ez * t.sin(), ez * t.cos(), 0.0, 0.0, //
                    0.0, 0.0, -1.0, 0.0, //
                    0.0, 0.0, 0.0, -1.0,
                )
            }
            CaseId::Case3 => {
                let et = (-t).exp();
                Matrix4::new(
                    0.0, 0.0, 0.0, 1.0, //
                    et, 0.0, 0.0, 0.0, //
                    0.0, et, 0.0, 0.0, //
                    0.0, 0.0, et, 0.0,
                )
            }
            CaseId::Case4 => {
                let et = (-t).exp();
                let eh = (-t / 2.0).exp();
                Matrix4::new(
                    0.0, 0.0, 0.0, 1.0, //
                    et * y / 4.0, -et * x / 4.0, et, 0.0, //
                    eh, 0.0, 0.0, 0.0, //
                    0.0, eh, 0.0, 0.0,
                )
            }
            CaseId::Abelian => unreachable!("no abelian model"),
        };
        Ok(m)
    }

    /// Conformal potential `f` with `g = e^f ĥ` and `θ = df`.
    pub fn potential(&self, p: &Point) -> Result<f64> {
        self.check_domain(p)?;
        let [_, _, z, t] = *p;
        Ok(match self.id {
            CaseId::Case1 => radius_squared(p).ln(), // 2 log r
            CaseId::Case2 => -2.0 * z,
            CaseId::Case3 => -2.0 * t,
            CaseId::Case4 => -1.5 * t,
            CaseId::Abelian => unreachable!("no abelian model"),
        })
    }

    pub fn metric(&self, p: &Point, which: MetricKind) -> Result<Matrix4<f64>> {
        match which {
            MetricKind::HyperHermitian => {
                let c = self.coframe(p)?;
                Ok(c.transpose() * c)
            }
            MetricKind::HyperKahlerRescaled => {
                let g = self.metric(p, MetricKind::HyperHermitian)?;
                let factor = (-self.potential(p)?).exp();
                Ok(factor * g)
            }
            MetricKind::HyperKahlerClosedForm => self.closed_form_metric(p),
        }
    }

    fn closed_form_metric(&self, p: &Point) -> Result<Matrix4<f64>> {
        self.check_domain(p)?;
        let [x, y, z, t] = *p;
        let m = match self.id {
            // h = r^{-4} (dx² + dy² + dz² + dt²)
            CaseId::Case1 => {
                let r4 = radius_squared(p).powi(2);
                Matrix4::identity() / r4
            }
            // h = (dx² + dy²) + (ds² + s² dt²) with s = e^z
            CaseId::Case2 => {
                let e2z = (2.0 * z).exp();
                Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, 1.0, e2z, e2z))
            }
            // h = ds² + dx² + dy² + dz² with s = e^t
            CaseId::Case3 => {
                let e2t = (2.0 * t).exp();
                Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, 1.0, 1.0, e2t))
            }
            // h = s (ds² + dx² + dy²) + s^{-1} (dz - (x dy - y dx)/4)²
            // with s = e^{t/2}, so s ds² pulls back to e^{3t/2}/4 dt²
            CaseId::Case4 => {
                let s = (t / 2.0).exp();
                let mut m = Matrix4::from_diagonal(&nalgebra::Vector4::new(
                    s,
                    s,
                    0.0,
                    s.powi(3) / 4.0,
                ));
                let w = nalgebra::Vector4::new(y / 4.0, -x / 4.0, 1.0, 0.0);
                m += (w * w.transpose()) / s;
                m
            }
            CaseId::Abelian => unreachable!("no abelian model"),
        };
        Ok(m)
    }
}

fn radius_squared(p: &Point) -> f64 {
    p.iter().map(|c| c * c).sum()
}
