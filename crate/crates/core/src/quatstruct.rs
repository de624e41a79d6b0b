//! Quaternionic triples of endomorphisms, integrability and Hermitian
//! compatibility checks, fundamental 2-forms, and the Lee-form solver.
//!
//! The chain of checks mirrors how a structure is validated end to end:
//! quaternion relations, vanishing Nijenhuis tensors, Hermitian metric,
//! then the single 1-form `θ` with `dω_α = θ ∧ ω_α` for all three α at
//! once. Inconsistency of that system is data (a residual), not an error,
//! so arbitrary user input can be classified.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exalg::{IndexTuple, KForm, Scalar};
use crate::liealg::{LieAlgebra, MetricOnAlgebra};
use crate::matrix::{solve_linear_system, ScalarMatrix};

/// An endomorphism of the algebra: column `j` holds the image of `e_j`,
/// i.e. `J e_j = Σ_i matrix[i][j] e_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Endo {
    matrix: ScalarMatrix,
}

impl Endo {
    pub fn new(matrix: ScalarMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        Ok(Endo { matrix })
    }

    pub fn dimension(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &ScalarMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.matrix.mul_vec(v)
    }

    /// Image of the basis vector `e_j` (1-based).
    pub fn apply_basis(&self, j: usize) -> Vec<Scalar> {
        (0..self.dimension())
            .map(|i| self.matrix.get(i, j - 1).clone())
            .collect()
    }
}

/// An ordered triple `(J1, J2, J3)` of endomorphisms. The quaternion
/// relations and integrability are validated by the check operations, not
/// at construction, so diagnostics survive for bad input.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HypercomplexStructure {
    j1: Endo,
    j2: Endo,
    j3: Endo,
}

impl HypercomplexStructure {
    pub fn new(j1: Endo, j2: Endo, j3: Endo) -> Result<Self> {
        let n = j1.dimension();
        for j in [&j2, &j3] {
            if j.dimension() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: j.dimension(),
                });
            }
        }
        Ok(HypercomplexStructure { j1, j2, j3 })
    }

    pub fn dimension(&self) -> usize {
        self.j1.dimension()
    }

    pub fn j(&self, alpha: usize) -> &Endo {
        match alpha {
            1 => &self.j1,
            2 => &self.j2,
            3 => &self.j3,
            _ => panic!("alpha must be 1, 2 or 3"),
        }
    }

    pub fn endos(&self) -> [&Endo; 3] {
        [&self.j1, &self.j2, &self.j3]
    }
}

/// The five quaternion relations: `J_α² = -I` for each α, `J1 J2 = J3` and
/// `J2 J1 = -J3`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QuaternionIdentity {
    J1Squared,
    J2Squared,
    J3Squared,
    J1J2IsJ3,
    J2J1IsMinusJ3,
}

impl fmt::Display for QuaternionIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            QuaternionIdentity::J1Squared => "J1^2 = -I",
            QuaternionIdentity::J2Squared => "J2^2 = -I",
            QuaternionIdentity::J3Squared => "J3^2 = -I",
            QuaternionIdentity::J1J2IsJ3 => "J1 J2 = J3",
            QuaternionIdentity::J2J1IsMinusJ3 => "J2 J1 = -J3",
        };
        write!(f, "{text}")
    }
}

#[derive(Clone, Debug)]
pub struct QuaternionVerdict {
    pub holds: bool,
    /// First violated identity, if any.
    pub failed: Option<QuaternionIdentity>,
}

/// Checks the five matrix identities of the quaternion relations exactly.
pub fn quaternion_check(j1: &Endo, j2: &Endo, j3: &Endo) -> Result<QuaternionVerdict> {
    let n = j1.dimension();
    for j in [j2, j3] {
        if j.dimension() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: j.dimension(),
            });
        }
    }
    let minus_identity = ScalarMatrix::identity(n).neg();
    let checks: [(QuaternionIdentity, ScalarMatrix, &ScalarMatrix); 5] = [
        (
            QuaternionIdentity::J1Squared,
            j1.matrix().mul(j1.matrix())?,
            &minus_identity,
        ),
        (
            QuaternionIdentity::J2Squared,
            j2.matrix().mul(j2.matrix())?,
            &minus_identity,
        ),
        (
            QuaternionIdentity::J3Squared,
            j3.matrix().mul(j3.matrix())?,
            &minus_identity,
        ),
        (
            QuaternionIdentity::J1J2IsJ3,
            j1.matrix().mul(j2.matrix())?,
            j3.matrix(),
        ),
        (
            QuaternionIdentity::J2J1IsMinusJ3,
            j2.matrix().mul(j1.matrix())?,
            &j3.matrix().neg(),
        ),
    ];
    for (identity, lhs, rhs) in &checks {
        if lhs != *rhs {
            return Ok(QuaternionVerdict {
                holds: false,
                failed: Some(*identity),
            });
        }
    }
    Ok(QuaternionVerdict {
        holds: true,
        failed: None,
    })
}

/// Nijenhuis tensor of `J` on the algebra, evaluated verbatim:
/// `N(x,y) = [Jx, Jy] - [x,y] - J([x, Jy] + [Jx, y])`.
pub fn nijenhuis(
    algebra: &LieAlgebra,
    j: &Endo,
    x: &[Scalar],
    y: &[Scalar],
) -> Result<Vec<Scalar>> {
    if j.dimension() != algebra.dimension() {
        return Err(Error::DimensionMismatch {
            expected: algebra.dimension(),
            found: j.dimension(),
        });
    }
    let jx = j.apply(x)?;
    let jy = j.apply(y)?;
    let term1 = algebra.bracket(&jx, &jy)?;
    let term2 = algebra.bracket(x, y)?;
    let inner1 = algebra.bracket(x, &jy)?;
    let inner2 = algebra.bracket(&jx, y)?;
    let inner: Vec<Scalar> = inner1
        .iter()
        .zip(&inner2)
        .map(|(a, b)| a + b)
        .collect();
    let term3 = j.apply(&inner)?;
    Ok(term1
        .iter()
        .zip(&term2)
        .zip(&term3)
        .map(|((a, b), c)| &(a - b) - c)
        .collect())
}

#[derive(Clone, Debug)]
pub struct IntegrabilityVerdict {
    pub holds: bool,
    /// `(alpha, i, j, N(e_i, e_j))` for the first nonzero value found.
    pub witness: Option<(usize, usize, usize, Vec<Scalar>)>,
}

/// Checks that the Nijenhuis tensor of each `J_α` vanishes on all basis
/// pairs; by bilinearity and antisymmetry this is sufficient.
pub fn integrability_check(
    algebra: &LieAlgebra,
    structure: &HypercomplexStructure,
) -> Result<IntegrabilityVerdict> {
    let n = algebra.dimension();
    let unit = |i: usize| {
        let mut v = vec![Scalar::zero(); n];
        v[i - 1] = Scalar::one();
        v
    };
    for (alpha, j) in structure.endos().into_iter().enumerate() {
        for a in 1..=n {
            for b in (a + 1)..=n {
                let value = nijenhuis(algebra, j, &unit(a), &unit(b))?;
                if value.iter().any(|c| !c.is_zero()) {
                    return Ok(IntegrabilityVerdict {
                        holds: false,
                        witness: Some((alpha + 1, a, b, value)),
                    });
                }
            }
        }
    }
    Ok(IntegrabilityVerdict {
        holds: true,
        witness: None,
    })
}

#[derive(Clone, Debug)]
pub struct HermitianVerdict {
    pub holds: bool,
    /// Index α of the first endomorphism with `J_αᵀ g J_α ≠ g`, if any.
    pub failed_alpha: Option<usize>,
}

/// Checks `J_αᵀ g J_α = g` exactly for each of the three endomorphisms.
pub fn hermitian_check(
    metric: &MetricOnAlgebra,
    structure: &HypercomplexStructure,
) -> Result<HermitianVerdict> {
    for (alpha, j) in structure.endos().into_iter().enumerate() {
        if j.dimension() != metric.dimension() {
            return Err(Error::DimensionMismatch {
                expected: metric.dimension(),
                found: j.dimension(),
            });
        }
        let conj = j
            .matrix()
            .transpose()
            .mul(metric.matrix())?
            .mul(j.matrix())?;
        if &conj != metric.matrix() {
            return Ok(HermitianVerdict {
                holds: false,
                failed_alpha: Some(alpha + 1),
            });
        }
    }
    Ok(HermitianVerdict {
        holds: true,
        failed_alpha: None,
    })
}

/// Fundamental 2-form `ω(X, Y) = g(X, J Y)`, packed into canonical form.
///
/// The matrix `gJ` must be antisymmetric; a symmetric defect means the
/// metric is not Hermitian for `J` and is reported as an error.
pub fn fundamental_form(metric: &MetricOnAlgebra, j: &Endo) -> Result<KForm> {
    let n = metric.dimension();
    if j.dimension() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: j.dimension(),
        });
    }
    let omega_matrix = metric.matrix().mul(j.matrix())?;
    if !omega_matrix.is_antisymmetric() {
        return Err(Error::NotAntisymmetric);
    }
    let mut terms = Vec::new();
    for i in 1..=n {
        for k in (i + 1)..=n {
            let c = omega_matrix.get(i - 1, k - 1).clone();
            if !c.is_zero() {
                terms.push((IndexTuple::new(&[i, k])?, c));
            }
        }
    }
    KForm::from_terms(n, 2, terms)
}

/// A validated hyper-Hermitian package: algebra, metric, structure and the
/// three cached fundamental forms.
#[derive(Clone, Debug)]
pub struct HyperHermitianData {
    algebra: LieAlgebra,
    metric: MetricOnAlgebra,
    structure: HypercomplexStructure,
    omegas: [KForm; 3],
}

impl HyperHermitianData {
    /// Validates Hermitian compatibility for each `J_α` and caches the
    /// fundamental forms.
    pub fn new(
        algebra: LieAlgebra,
        metric: MetricOnAlgebra,
        structure: HypercomplexStructure,
    ) -> Result<Self> {
        if metric.dimension() != algebra.dimension()
            || structure.dimension() != algebra.dimension()
        {
            return Err(Error::DimensionMismatch {
                expected: algebra.dimension(),
                found: metric.dimension().min(structure.dimension()),
            });
        }
        let hermitian = hermitian_check(&metric, &structure)?;
        if !hermitian.holds {
            return Err(Error::NotAntisymmetric);
        }
        let omegas = [
            fundamental_form(&metric, structure.j(1))?,
            fundamental_form(&metric, structure.j(2))?,
            fundamental_form(&metric, structure.j(3))?,
        ];
        Ok(HyperHermitianData {
            algebra,
            metric,
            structure,
            omegas,
        })
    }

    /// Assembles the package without validation and with caller-supplied
    /// `omegas`. Diagnostic paths (perturbed fixtures, soft-failing CLI
    /// input) use this to reach the Lee-form stage anyway.
    pub fn from_raw_parts(
        algebra: LieAlgebra,
        metric: MetricOnAlgebra,
        structure: HypercomplexStructure,
        omegas: [KForm; 3],
    ) -> Self {
        HyperHermitianData {
            algebra,
            metric,
            structure,
            omegas,
        }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn metric(&self) -> &MetricOnAlgebra {
        &self.metric
    }

    pub fn structure(&self) -> &HypercomplexStructure {
        &self.structure
    }

    pub fn omegas(&self) -> &[KForm; 3] {
        &self.omegas
    }

    pub fn omega(&self, alpha: usize) -> &KForm {
        &self.omegas[alpha - 1]
    }
}

/// Result of solving `dω_α = θ ∧ ω_α` for a single 1-form `θ`.
#[derive(Clone, Debug)]
pub struct LeeFormResult {
    pub theta: KForm,
    /// All three residuals vanish.
    pub consistent: bool,
    /// `dθ = 0`.
    pub closed: bool,
    /// Defects `dω_α - θ ∧ ω_α`, one grade-3 form per α.
    pub residuals: [KForm; 3],
    /// Rank of the stacked coefficient matrix (all α, all basis triples).
    pub rank: usize,
}

/// Solves the exact linear system for the Lee form.
///
/// The unknowns are the coefficients of `θ`; the equations stack
/// `(θ ∧ ω_α)(triple) = dω_α(triple)` over all α and all increasing basis
/// triples. In dimension 4 each nondegenerate `ω_α` makes `θ ↦ θ ∧ ω_α`
/// a bijection, so the α = 1 block alone pins `θ`; the residuals of the
/// remaining equations decide consistency. Degenerate `ω_α` is an error.
pub fn lee_form(data: &HyperHermitianData) -> Result<LeeFormResult> {
    let algebra = data.algebra();
    let n = algebra.dimension();
    // nondegeneracy: the coefficient matrix of each ω must be invertible
    for omega in data.omegas() {
        let mut matrix = ScalarMatrix::zeros(n, n);
        for i in 1..=n {
            for j in 1..=n {
                matrix.set(i - 1, j - 1, omega.contract_basis(&[i, j])?);
            }
        }
        if matrix.try_inverse().is_err() {
            return Err(Error::DegenerateForm);
        }
    }

    let triples: Vec<[usize; 3]> = {
        let mut out = Vec::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                for k in (j + 1)..=n {
                    out.push([i, j, k]);
                }
            }
        }
        out
    };
    let basis_one_forms: Vec<KForm> = (1..=n)
        .map(|m| KForm::basis(n, &[m]).expect("basis 1-form"))
        .collect();

    // rows: (α, triple); columns: coefficients of θ
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    let mut d_omegas = Vec::new();
    for omega in data.omegas() {
        let d_omega = algebra.ce_differential(omega)?;
        let wedges: Vec<KForm> = basis_one_forms
            .iter()
            .map(|em| em.wedge(omega))
            .collect::<Result<_>>()?;
        for triple in &triples {
            let row: Vec<Scalar> = wedges
                .iter()
                .map(|w| w.contract_basis(triple))
                .collect::<Result<_>>()?;
            rows.push(row);
            rhs.push(d_omega.contract_basis(triple)?);
        }
        d_omegas.push(d_omega);
    }
    let stacked = ScalarMatrix::from_rows(rows)?;
    let full = solve_linear_system(&stacked, &rhs)?;

    let theta_coeffs = match &full.solution {
        Some(solution) => solution.clone(),
        None => {
            // inconsistent: take the unique solution of the α = 1 block as
            // the canonical candidate and let the residuals tell the story
            let block_rows: Vec<Vec<Scalar>> = (0..triples.len())
                .map(|r| {
                    (0..n)
                        .map(|c| stacked.get(r, c).clone())
                        .collect()
                })
                .collect();
            let block = ScalarMatrix::from_rows(block_rows)?;
            solve_linear_system(&block, &rhs[..triples.len()])?
                .solution
                .ok_or(Error::DegenerateForm)?
        }
    };
    let theta = KForm::from_terms(
        n,
        1,
        theta_coeffs
            .iter()
            .enumerate()
            .map(|(m, c)| (IndexTuple::new(&[m + 1]).expect("index"), c.clone())),
    )?;

    let mut residuals = Vec::new();
    for (omega, d_omega) in data.omegas().iter().zip(&d_omegas) {
        residuals.push(d_omega.sub(&theta.wedge(omega)?)?);
    }
    let residuals: [KForm; 3] = residuals.try_into().expect("three residuals");
    let consistent = residuals.iter().all(KForm::is_zero);
    let closed = algebra.ce_differential(&theta)?.is_zero();
    Ok(LeeFormResult {
        theta,
        consistent,
        closed,
        residuals,
        rank: full.rank,
    })
}

/// Conformal classification of a hyper-Hermitian structure from its
/// Lee-form solution. On simply connected spaces closed 1-forms are exact,
/// so `closed` upgrades "locally conformally" to "conformally"; the verdict
/// text records that assumption.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum ConformalClass {
    #[serde(rename = "HYPERKAHLER")]
    HyperKahler,
    #[serde(rename = "CONFORMALLY_HYPERKAHLER")]
    ConformallyHyperKahler,
    #[serde(rename = "LCK_ONLY")]
    LckOnly,
    #[serde(rename = "NOT_LCK")]
    NotLck,
}

impl fmt::Display for ConformalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            ConformalClass::HyperKahler => "HYPERKAHLER",
            ConformalClass::ConformallyHyperKahler => "CONFORMALLY_HYPERKAHLER",
            ConformalClass::LckOnly => "LCK_ONLY",
            ConformalClass::NotLck => "NOT_LCK",
        };
        write!(f, "{text}")
    }
}

impl ConformalClass {
    /// Human-readable reading of the verdict, including the simple
    /// connectedness assumption behind "closed ⇒ exact".
    pub fn description(&self) -> &'static str {
        match self {
            ConformalClass::HyperKahler => "all fundamental forms are closed (θ = 0)",
            ConformalClass::ConformallyHyperKahler => {
                "θ ≠ 0 and dθ = 0; conformally hyper-Kähler assuming simple connectedness \
                 (closed forms are exact)"
            }
            ConformalClass::LckOnly => "dω = θ ∧ ω holds but dθ ≠ 0",
            ConformalClass::NotLck => "no single θ satisfies dω_α = θ ∧ ω_α for all α",
        }
    }
}

pub fn conformal_class_verdict(result: &LeeFormResult) -> ConformalClass {
    if !result.consistent {
        ConformalClass::NotLck
    } else if result.theta.is_zero() {
        ConformalClass::HyperKahler
    } else if result.closed {
        ConformalClass::ConformallyHyperKahler
    } else {
        ConformalClass::LckOnly
    }
}

/// JSON ingestion schema for a hypercomplex triple, shared with the CLI:
/// `{"J1": [["0","-1",...], ...], "J2": ..., "J3": ...}` with
/// rational-string entries (columns are images of basis vectors).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StructureSpec {
    #[serde(rename = "J1")]
    pub j1: Vec<Vec<String>>,
    #[serde(rename = "J2")]
    pub j2: Vec<Vec<String>>,
    #[serde(rename = "J3")]
    pub j3: Vec<Vec<String>>,
}

impl StructureSpec {
    pub fn build(&self) -> Result<HypercomplexStructure> {
        let parse = |rows: &Vec<Vec<String>>| -> Result<Endo> {
            Endo::new(ScalarMatrix::parse_rows(rows)?)
        };
        HypercomplexStructure::new(parse(&self.j1)?, parse(&self.j2)?, parse(&self.j3)?)
    }

    pub fn from_structure(structure: &HypercomplexStructure) -> Self {
        let render = |endo: &Endo| -> Vec<Vec<String>> {
            let m = endo.matrix();
            (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| m.get(i, j).to_string()).collect())
                .collect()
        };
        StructureSpec {
            j1: render(structure.j(1)),
            j2: render(structure.j(2)),
            j3: render(structure.j(3)),
        }
    }
}
