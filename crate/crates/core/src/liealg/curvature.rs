//! Exact Levi-Civita connection and curvature of a left-invariant metric.
//!
//! For left-invariant vector fields the Koszul formula is purely algebraic:
//! `2 g(∇_x y, z) = g([x,y],z) - g([y,z],x) + g([z,x],y)`. Everything here
//! stays in exact rational arithmetic.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exalg::Scalar;
use crate::liealg::LieAlgebra;
use crate::matrix::ScalarMatrix;

/// An inner product on the algebra: a symmetric positive definite matrix of
/// exact rationals (positive definiteness is checked via leading principal
/// minors, exactly).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MetricOnAlgebra {
    matrix: ScalarMatrix,
}

impl MetricOnAlgebra {
    pub fn new(matrix: ScalarMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        if !matrix.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        for (order, minor) in matrix.leading_principal_minors()?.iter().enumerate() {
            if !minor.is_positive() {
                return Err(Error::NotPositiveDefinite {
                    order: order + 1,
                    value: minor.to_string(),
                });
            }
        }
        Ok(MetricOnAlgebra { matrix })
    }

    /// The orthonormal-basis metric used throughout the catalog.
    pub fn identity(dimension: usize) -> Self {
        MetricOnAlgebra {
            matrix: ScalarMatrix::identity(dimension),
        }
    }

    /// The metric scaled by a positive rational constant.
    pub fn scaled(&self, c: &Scalar) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::InvalidInput(
                "metric scale factor must be positive".to_string(),
            ));
        }
        Ok(MetricOnAlgebra {
            matrix: self.matrix.scale(c),
        })
    }

    pub fn dimension(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &ScalarMatrix {
        &self.matrix
    }

    /// `g(e_i, e_j)` (1-based).
    pub fn inner_basis(&self, i: usize, j: usize) -> &Scalar {
        self.matrix.get(i - 1, j - 1)
    }

    /// `g(x, y)` for coefficient vectors.
    pub fn inner(&self, x: &[Scalar], y: &[Scalar]) -> Result<Scalar> {
        let gy = self.matrix.mul_vec(y)?;
        if x.len() != gy.len() {
            return Err(Error::LengthMismatch {
                expected: gy.len(),
                found: x.len(),
            });
        }
        Ok(x.iter().zip(&gy).map(|(a, b)| a * b).sum())
    }
}

/// Levi-Civita connection coefficients `∇_{e_i} e_j = Σ_k Γ[i][j][k] e_k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Connection {
    dimension: usize,
    coeffs: Vec<Vec<Vec<Scalar>>>,
}

impl Connection {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// `Γ[i][j][k]` (1-based).
    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.coeffs[i - 1][j - 1][k - 1]
    }

    /// `∇_{e_i} e_j` as a coefficient vector (1-based).
    pub fn nabla_basis(&self, i: usize, j: usize) -> &[Scalar] {
        &self.coeffs[i - 1][j - 1]
    }

    /// Covariant derivative of a constant-coefficient field along another:
    /// `∇_x (Σ v_l e_l) = Σ_m Σ_l x_m v_l Γ[m][l][·]`.
    pub fn nabla(&self, x: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let n = self.dimension;
        let mut out = vec![Scalar::zero(); n];
        for m in 0..n {
            if x[m].is_zero() {
                continue;
            }
            for l in 0..n {
                if v[l].is_zero() {
                    continue;
                }
                let factor = &x[m] * &v[l];
                for k in 0..n {
                    let g = &self.coeffs[m][l][k];
                    if !g.is_zero() {
                        out[k] += &(&factor * g);
                    }
                }
            }
        }
        out
    }
}

/// Levi-Civita connection of a left-invariant metric via the Koszul
/// formula. Requires a genuine Lie algebra (callers validate Jacobi) and a
/// positive definite metric.
pub fn levi_civita(algebra: &LieAlgebra, metric: &MetricOnAlgebra) -> Result<Connection> {
    let n = algebra.dimension();
    if metric.dimension() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: metric.dimension(),
        });
    }
    let g_inv = metric.matrix().try_inverse()?;
    let half = Scalar::ratio(1, 2);
    // c_low[i][j][k] = g([e_i, e_j], e_k)
    let mut c_low = vec![vec![vec![Scalar::zero(); n]; n]; n];
    for i in 1..=n {
        for j in 1..=n {
            let bracket = algebra.bracket_basis(i, j);
            let lowered = metric.matrix().mul_vec(&bracket)?;
            c_low[i - 1][j - 1] = lowered;
        }
    }
    let mut coeffs = vec![vec![vec![Scalar::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            // rhs_k = 1/2 ( c_low[i][j][k] - c_low[j][k][i] + c_low[k][i][j] )
            let rhs: Vec<Scalar> = (0..n)
                .map(|k| {
                    let sum = &c_low[i][j][k] - &c_low[j][k][i] + &c_low[k][i][j];
                    &half * &sum
                })
                .collect();
            coeffs[i][j] = g_inv.mul_vec(&rhs)?;
        }
    }
    Ok(Connection {
        dimension: n,
        coeffs,
    })
}

/// Exact curvature data of `(algebra, metric)`.
///
/// Index conventions (all 1-based on accessors): `riemann(i,j,k,l)` is the
/// `e_l` component of `R(e_i, e_j) e_k`; `basis_sectional` maps each pair
/// `i < j` to the sectional curvature of `span(e_i, e_j)`.
#[derive(Clone, Debug)]
pub struct ExactCurvature {
    dimension: usize,
    connection: Connection,
    riemann: Vec<Vec<Vec<Vec<Scalar>>>>,
    ricci: ScalarMatrix,
    scalar_curvature: Scalar,
    basis_sectional: BTreeMap<(usize, usize), Scalar>,
}

impl ExactCurvature {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn connection(&self) -> &Connection {
        &self.connection
    }

    pub fn riemann(&self, i: usize, j: usize, k: usize, l: usize) -> &Scalar {
        &self.riemann[i - 1][j - 1][k - 1][l - 1]
    }

    pub fn ricci(&self) -> &ScalarMatrix {
        &self.ricci
    }

    pub fn scalar_curvature(&self) -> &Scalar {
        &self.scalar_curvature
    }

    pub fn basis_sectional(&self) -> &BTreeMap<(usize, usize), Scalar> {
        &self.basis_sectional
    }

    pub fn is_flat(&self) -> bool {
        self.riemann
            .iter()
            .flatten()
            .flatten()
            .flatten()
            .all(Scalar::is_zero)
    }
}

/// Computes connection, Riemann tensor, Ricci, scalar curvature and the
/// sectional curvatures of all basis planes, exactly.
pub fn curvature_exact(
    algebra: &LieAlgebra,
    metric: &MetricOnAlgebra,
) -> Result<ExactCurvature> {
    let n = algebra.dimension();
    let connection = levi_civita(algebra, metric)?;
    let unit = |i: usize| {
        let mut v = vec![Scalar::zero(); n];
        v[i - 1] = Scalar::one();
        v
    };
    let mut riemann = vec![vec![vec![vec![Scalar::zero(); n]; n]; n]; n];
    for i in 1..=n {
        for j in 1..=n {
            let bracket_ij = algebra.bracket_basis(i, j);
            for k in 1..=n {
                let ek = unit(k);
                let t1 = connection.nabla(&unit(i), &connection.nabla(&unit(j), &ek));
                let t2 = connection.nabla(&unit(j), &connection.nabla(&unit(i), &ek));
                let t3 = connection.nabla(&bracket_ij, &ek);
                for l in 0..n {
                    riemann[i - 1][j - 1][k - 1][l] = &t1[l] - &t2[l] - &t3[l];
                }
            }
        }
    }
    // Ricci(x, y) = trace of z ↦ R(z, x) y; basis-trace form, no metric
    let mut ricci = ScalarMatrix::zeros(n, n);
    for j in 0..n {
        for k in 0..n {
            let value: Scalar = (0..n).map(|i| riemann[i][j][k][i].clone()).sum();
            ricci.set(j, k, value);
        }
    }
    let g_inv = metric.matrix().try_inverse()?;
    let scalar_curvature = {
        let prod = g_inv.mul(&ricci)?;
        (0..n).map(|i| prod.get(i, i).clone()).sum()
    };
    let mut basis_sectional = BTreeMap::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            // K = g(R(e_i,e_j)e_j, e_i) / (g_ii g_jj - g_ij^2)
            let numerator: Scalar = (0..n)
                .map(|l| &riemann[i - 1][j - 1][j - 1][l] * metric.matrix().get(l, i - 1))
                .sum();
            let gii = metric.inner_basis(i, i);
            let gjj = metric.inner_basis(j, j);
            let gij = metric.inner_basis(i, j);
            let denominator = &(gii * gjj) - &(gij * gij);
            basis_sectional.insert((i, j), numerator / denominator);
        }
    }
    Ok(ExactCurvature {
        dimension: n,
        connection,
        riemann,
        ricci,
        scalar_curvature,
        basis_sectional,
    })
}
