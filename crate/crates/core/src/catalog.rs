//! Frozen fixtures for the four left-invariant geometries and the abelian
//! baseline.
//!
//! Each case carries the structure constants, the orthonormal metric, the
//! fundamental 2-forms, and the expected differentials and Lee form that
//! every golden test asserts. The ω tables are the single source of truth:
//! the endomorphism triples are derived from them by [`induce_structure`]
//! at build time, never hand-typed, which removes the dominant failure mode
//! here (transcription sign slips).

use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exalg::KForm;
use crate::liealg::{LieAlgebra, MetricOnAlgebra};
use crate::matrix::ScalarMatrix;
use crate::quatstruct::{
    quaternion_check, Endo, HypercomplexStructure, HyperHermitianData,
};
use crate::exalg::Scalar;

/// Identifier of a catalog case.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseId {
    Abelian,
    Case1,
    Case2,
    Case3,
    Case4,
}

impl CaseId {
    pub fn all() -> [CaseId; 5] {
        [
            CaseId::Abelian,
            CaseId::Case1,
            CaseId::Case2,
            CaseId::Case3,
            CaseId::Case4,
        ]
    }

    /// The cases with a coordinate model (all but the abelian baseline).
    pub fn coordinate_cases() -> [CaseId; 4] {
        [CaseId::Case1, CaseId::Case2, CaseId::Case3, CaseId::Case4]
    }

    pub fn name(&self) -> &'static str {
        match self {
            CaseId::Abelian => "abelian",
            CaseId::Case1 => "case1",
            CaseId::Case2 => "case2",
            CaseId::Case3 => "case3",
            CaseId::Case4 => "case4",
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "abelian" | "0" => Ok(CaseId::Abelian),
            "case1" | "1" => Ok(CaseId::Case1),
            "case2" | "2" => Ok(CaseId::Case2),
            "case3" | "3" => Ok(CaseId::Case3),
            "case4" | "4" => Ok(CaseId::Case4),
            other => Err(Error::UnknownCase(other.to_string())),
        }
    }
}

/// A frozen fixture: the validated hyper-Hermitian package plus every
/// expected value the golden tests compare against.
#[derive(Clone, Debug)]
pub struct CatalogCase {
    pub id: CaseId,
    pub description: &'static str,
    pub data: HyperHermitianData,
    /// `de^j` for j = 1..4 (index `j - 1`).
    pub expected_de: Vec<KForm>,
    /// `dω_α` for α = 1..3.
    pub expected_domega: [KForm; 3],
    pub expected_theta: KForm,
}

/// Inverts the defining relation `ω(X, Y) = g(X, J Y)`: reads each `J_α`
/// off its 2-form as `J_α = g⁻¹ Ω_α` and validates the quaternion
/// relations, naming the first violated identity on failure.
pub fn induce_structure(
    omegas: &[KForm; 3],
    metric: &MetricOnAlgebra,
) -> Result<HypercomplexStructure> {
    let n = metric.dimension();
    let g_inv = metric.matrix().try_inverse()?;
    let mut endos = Vec::new();
    for omega in omegas {
        if omega.dimension() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: omega.dimension(),
            });
        }
        if omega.grade() != 2 {
            return Err(Error::GradeMismatch {
                expected: 2,
                found: omega.grade(),
            });
        }
        let mut omega_matrix = ScalarMatrix::zeros(n, n);
        for i in 1..=n {
            for j in 1..=n {
                omega_matrix.set(i - 1, j - 1, omega.contract_basis(&[i, j])?);
            }
        }
        endos.push(Endo::new(g_inv.mul(&omega_matrix)?)?);
    }
    let [j1, j2, j3]: [Endo; 3] = endos.try_into().expect("three endomorphisms");
    let verdict = quaternion_check(&j1, &j2, &j3)?;
    if !verdict.holds {
        return Err(Error::QuaternionRelation {
            identity: verdict.failed.expect("failed identity").to_string(),
        });
    }
    HypercomplexStructure::new(j1, j2, j3)
}

fn two_form(text: &str) -> KForm {
    KForm::parse(text, 4, 2).expect("catalog 2-form")
}

fn three_form(text: &str) -> KForm {
    KForm::parse(text, 4, 3).expect("catalog 3-form")
}

fn one_form(text: &str) -> KForm {
    KForm::parse(text, 4, 1).expect("catalog 1-form")
}

fn assemble(
    id: CaseId,
    description: &'static str,
    algebra: LieAlgebra,
    omega_table: [&str; 3],
    de_table: [&str; 4],
    domega_table: [&str; 3],
    theta: &str,
) -> CatalogCase {
    let metric = MetricOnAlgebra::identity(4);
    let omegas = [
        two_form(omega_table[0]),
        two_form(omega_table[1]),
        two_form(omega_table[2]),
    ];
    let structure = induce_structure(&omegas, &metric).expect("catalog structure");
    let data = HyperHermitianData::new(algebra, metric, structure).expect("catalog data");
    debug_assert_eq!(data.omegas(), &omegas, "ω read-off must round-trip");
    CatalogCase {
        id,
        description,
        data,
        expected_de: de_table.iter().map(|t| two_form(t)).collect(),
        expected_domega: [
            three_form(domega_table[0]),
            three_form(domega_table[1]),
            three_form(domega_table[2]),
        ],
        expected_theta: one_form(theta),
    }
}

fn one() -> Scalar {
    Scalar::one()
}

fn half() -> Scalar {
    Scalar::ratio(1, 2)
}

static CASES: LazyLock<Vec<CatalogCase>> = LazyLock::new(|| {
    vec![
        assemble(
            CaseId::Abelian,
            "flat abelian baseline",
            LieAlgebra::abelian(4),
            ["-e12 - e34", "-e13 + e24", "-e14 - e23"],
            ["0", "0", "0", "0"],
            ["0", "0", "0"],
            "0",
        ),
        assemble(
            CaseId::Case1,
            "product of the line with the round 3-sphere (su(2) plus a central direction)",
            LieAlgebra::from_brackets(
                4,
                [
                    (2, 3, vec![(4, one())]),
                    (3, 4, vec![(2, one())]),
                    (4, 2, vec![(3, one())]),
                ],
            )
            .expect("case 1 brackets"),
            ["-e12 - e34", "-e13 + e24", "-e14 - e23"],
            ["0", "-e34", "e24", "-e23"],
            ["-e134", "e124", "-e123"],
            "e1",
        ),
        assemble(
            CaseId::Case2,
            "product of the line with real hyperbolic 3-space",
            LieAlgebra::from_brackets(
                4,
                [
                    (1, 3, vec![(1, one())]),
                    (2, 3, vec![(2, one())]),
                    (1, 4, vec![(2, one())]),
                    (2, 4, vec![(1, -one())]),
                ],
            )
            .expect("case 2 brackets"),
            ["e14 - e23", "-e12 + e34", "-e13 - e24"],
            ["-e13 + e24", "-e23 - e14", "0", "0"],
            ["-2 e134", "-2 e123", "2 e234"],
            "2 e3",
        ),
        assemble(
            CaseId::Case3,
            "real hyperbolic 4-space",
            LieAlgebra::from_brackets(
                4,
                [
                    (1, 2, vec![(2, one())]),
                    (1, 3, vec![(3, one())]),
                    (1, 4, vec![(4, one())]),
                ],
            )
            .expect("case 3 brackets"),
            ["-e12 - e34", "-e13 + e24", "-e14 - e23"],
            ["0", "-e12", "-e13", "-e14"],
            // dω3 = +2 e123 is forced by dω = θ ∧ ω with θ = -2 e1 and is
            // what the differential of the ω table above evaluates to.
            ["2 e134", "-2 e124", "2 e123"],
            "-2 e1",
        ),
        assemble(
            CaseId::Case4,
            "solvable group whose conformal class carries a Gibbons-Hawking metric",
            LieAlgebra::from_brackets(
                4,
                [
                    (3, 4, vec![(2, half())]),
                    (1, 2, vec![(2, one())]),
                    (1, 3, vec![(3, half())]),
                    (1, 4, vec![(4, half())]),
                ],
            )
            .expect("case 4 brackets"),
            ["-e12 + e34", "-e13 - e24", "e14 - e23"],
            ["0", "-e12 - 1/2 e34", "-1/2 e13", "-1/2 e14"],
            ["-3/2 e134", "3/2 e124", "3/2 e123"],
            "-3/2 e1",
        ),
    ]
});

/// Returns the frozen fixture for a case.
pub fn get_case(id: CaseId) -> &'static CatalogCase {
    CASES
        .iter()
        .find(|c| c.id == id)
        .expect("every CaseId has a fixture")
}

/// All five fixtures, abelian first.
pub fn all_cases() -> impl Iterator<Item = &'static CatalogCase> {
    CASES.iter()
}
