//! Lie algebras given by structure constants, the Chevalley-Eilenberg
//! differential on the exterior algebra of the dual, and exact Levi-Civita
//! curvature for left-invariant metrics.
//!
//! Conventions, fixed project-wide:
//! - `dσ(x, y) = -σ([x, y])` on 1-forms, extended to higher grade by the
//!   graded Leibniz rule; grade-0 forms (constants) have `d = 0`.
//! - `R(x, y)z = ∇_x ∇_y z - ∇_y ∇_x z - ∇_[x,y] z`, under which the round
//!   sphere has positive sectional curvature.

mod curvature;

pub use curvature::{curvature_exact, levi_civita};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exalg::{IndexTuple, KForm, Scalar};

pub use curvature::{Connection, ExactCurvature, MetricOnAlgebra};

/// A finite-dimensional real Lie algebra described by structure constants
/// `[e_i, e_j] = Σ_k c[i][j][k] e_k` over a fixed basis (1-based indices on
/// the public surface).
///
/// Construction enforces antisymmetry by completion; the Jacobi identity is
/// a separate validation step ([`LieAlgebra::jacobi_check`]) so that bad
/// user input yields a diagnosable verdict rather than a constructor panic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieAlgebra {
    dimension: usize,
    // constants[i][j][k], 0-based
    constants: Vec<Vec<Vec<Scalar>>>,
}

impl LieAlgebra {
    /// Algebra with all brackets zero.
    pub fn abelian(dimension: usize) -> Self {
        LieAlgebra {
            dimension,
            constants: vec![vec![vec![Scalar::zero(); dimension]; dimension]; dimension],
        }
    }

    /// Builds an algebra from bracket entries `(i, j, [(k, c), ...])`
    /// meaning `[e_i, e_j] = Σ c e_k`. Unlisted pairs are zero and the
    /// antisymmetric completion `[e_j, e_i] = -[e_i, e_j]` is automatic.
    /// Listing an unordered pair twice or a self-bracket is an error.
    pub fn from_brackets<I>(dimension: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Vec<(usize, Scalar)>)>,
    {
        let mut algebra = Self::abelian(dimension);
        let mut seen: BTreeMap<(usize, usize), ()> = BTreeMap::new();
        for (i, j, coeffs) in entries {
            for &index in &[i, j] {
                if index == 0 || index > dimension {
                    return Err(Error::IndexOutOfRange {
                        index,
                        dimension,
                    });
                }
            }
            if i == j {
                return Err(Error::SelfBracket { i });
            }
            let key = (i.min(j), i.max(j));
            if seen.insert(key, ()).is_some() {
                return Err(Error::DuplicateBracket { i, j });
            }
            for (k, c) in coeffs {
                if k == 0 || k > dimension {
                    return Err(Error::IndexOutOfRange {
                        index: k,
                        dimension,
                    });
                }
                algebra.constants[i - 1][j - 1][k - 1] = c.clone();
                algebra.constants[j - 1][i - 1][k - 1] = -c;
            }
        }
        Ok(algebra)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Coefficient of `e_k` in `[e_i, e_j]` (1-based).
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.constants[i - 1][j - 1][k - 1]
    }

    /// `[e_i, e_j]` as a coefficient vector (1-based basis indices).
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        self.constants[i - 1][j - 1].clone()
    }

    /// Bilinear antisymmetric extension of the structure constants to
    /// arbitrary coefficient vectors.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        for v in [x, y] {
            if v.len() != self.dimension {
                return Err(Error::LengthMismatch {
                    expected: self.dimension,
                    found: v.len(),
                });
            }
        }
        let mut out = vec![Scalar::zero(); self.dimension];
        for i in 0..self.dimension {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dimension {
                if y[j].is_zero() {
                    continue;
                }
                let factor = &x[i] * &y[j];
                for k in 0..self.dimension {
                    let c = &self.constants[i][j][k];
                    if !c.is_zero() {
                        out[k] += &(&factor * c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Differential of the basis 1-form `e^j`:
    /// `de^j = Σ_{p<q} -c[p][q][j] e^{pq}`.
    pub fn differential_of_basis(&self, j: usize) -> Result<KForm> {
        if j == 0 || j > self.dimension {
            return Err(Error::IndexOutOfRange {
                index: j,
                dimension: self.dimension,
            });
        }
        let mut terms = Vec::new();
        for p in 1..=self.dimension {
            for q in (p + 1)..=self.dimension {
                let c = self.structure_constant(p, q, j);
                if !c.is_zero() {
                    terms.push((IndexTuple::new(&[p, q])?, -c.clone()));
                }
            }
        }
        KForm::from_terms(self.dimension, 2, terms)
    }

    /// Chevalley-Eilenberg differential, raising the grade by one.
    ///
    /// Monomials are expanded by the graded Leibniz rule
    /// `d(σ ∧ τ) = dσ ∧ τ + (-1)^r σ ∧ dτ`; the grade-0 case is zero.
    pub fn ce_differential(&self, f: &KForm) -> Result<KForm> {
        if f.dimension() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: f.dimension(),
            });
        }
        let mut out = KForm::zero(self.dimension, f.grade() + 1);
        if f.grade() == 0 {
            return Ok(out);
        }
        for (tuple, coeff) in f.terms() {
            let indices = tuple.indices();
            for (pos, &index) in indices.iter().enumerate() {
                // prefix ∧ de^{index} ∧ suffix, with the Leibniz sign (-1)^pos
                let prefix = KForm::basis(self.dimension, &indices[..pos])?;
                let suffix = KForm::basis(self.dimension, &indices[pos + 1..])?;
                let middle = self.differential_of_basis(index)?;
                let wedge = prefix.wedge(&middle)?.wedge(&suffix)?;
                let sign = if pos % 2 == 0 {
                    coeff.clone()
                } else {
                    -coeff.clone()
                };
                out = out.add(&wedge.scale(&sign))?;
            }
        }
        Ok(out)
    }

    /// Validates the Jacobi identity by brute force over basis triples and
    /// cross-checks it against `d ∘ d = 0` on every basis 1-form (the two
    /// are equivalent and must agree).
    pub fn jacobi_check(&self) -> JacobiVerdict {
        let mut witness = None;
        'outer: for i in 1..=self.dimension {
            for j in (i + 1)..=self.dimension {
                for k in (j + 1)..=self.dimension {
                    let defect = self.jacobi_cyclic_sum(i, j, k);
                    if defect.iter().any(|c| !c.is_zero()) {
                        witness = Some(JacobiWitness {
                            triple: (i, j, k),
                            defect,
                        });
                        break 'outer;
                    }
                }
            }
        }
        let d_squared_vanishes = (1..=self.dimension).all(|j| {
            let ej = KForm::basis(self.dimension, &[j]).expect("basis 1-form");
            let dd = self
                .ce_differential(&self.ce_differential(&ej).expect("d e^j"))
                .expect("d d e^j");
            dd.is_zero()
        });
        assert_eq!(
            witness.is_none(),
            d_squared_vanishes,
            "Jacobi brute-force check and d∘d = 0 disagree; this is a bug"
        );
        JacobiVerdict {
            holds: witness.is_none(),
            witness,
        }
    }

    /// `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`.
    fn jacobi_cyclic_sum(&self, i: usize, j: usize, k: usize) -> Vec<Scalar> {
        let unit = |index: usize| {
            let mut v = vec![Scalar::zero(); self.dimension];
            v[index - 1] = Scalar::one();
            v
        };
        let mut total = vec![Scalar::zero(); self.dimension];
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            let inner = self.bracket(&unit(a), &unit(b)).expect("basis bracket");
            let outer = self.bracket(&inner, &unit(c)).expect("nested bracket");
            for (t, o) in total.iter_mut().zip(&outer) {
                *t += o;
            }
        }
        total
    }
}

/// Outcome of [`LieAlgebra::jacobi_check`].
#[derive(Clone, Debug)]
pub struct JacobiVerdict {
    pub holds: bool,
    /// First violating triple with its nonzero cyclic sum, if any.
    pub witness: Option<JacobiWitness>,
}

#[derive(Clone, Debug)]
pub struct JacobiWitness {
    pub triple: (usize, usize, usize),
    pub defect: Vec<Scalar>,
}

/// JSON ingestion schema for a Lie algebra, shared with the CLI:
/// `{"dim": 4, "brackets": [{"i": 2, "j": 3, "coeffs": {"4": "1"}}, ...]}`
/// with rational coefficients as strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub dim: usize,
    pub brackets: Vec<BracketEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: BTreeMap<String, String>,
}

impl AlgebraSpec {
    pub fn build(&self) -> Result<LieAlgebra> {
        let mut entries = Vec::new();
        for entry in &self.brackets {
            let mut coeffs = Vec::new();
            for (key, value) in &entry.coeffs {
                let k: usize = key.parse().map_err(|_| {
                    Error::InvalidInput(format!(
                        "bracket ({},{}): target index {key:?} is not an integer",
                        entry.i, entry.j
                    ))
                })?;
                let c: Scalar = value.parse()?;
                coeffs.push((k, c));
            }
            entries.push((entry.i, entry.j, coeffs));
        }
        LieAlgebra::from_brackets(self.dim, entries)
    }

    /// Lossless description of an algebra in the ingestion schema; only the
    /// pairs `i < j` with a nonzero bracket are listed.
    pub fn from_algebra(algebra: &LieAlgebra) -> Self {
        let n = algebra.dimension();
        let mut brackets = Vec::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                let mut coeffs = BTreeMap::new();
                for k in 1..=n {
                    let c = algebra.structure_constant(i, j, k);
                    if !c.is_zero() {
                        coeffs.insert(k.to_string(), c.to_string());
                    }
                }
                if !coeffs.is_empty() {
                    brackets.push(BracketEntry { i, j, coeffs });
                }
            }
        }
        AlgebraSpec { dim: n, brackets }
    }
}
