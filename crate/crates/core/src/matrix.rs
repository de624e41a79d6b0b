//! Dense matrices of exact rationals with exact elimination.
//!
//! Small sizes only (the geometry lives in dimension 4), so plain
//! fraction-arithmetic Gaussian elimination is the right tool.

use crate::error::{Error, Result};
use crate::exalg::Scalar;

/// Row-major matrix of exact rational entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScalarMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ScalarMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::InvalidInput("ragged matrix rows".to_string()));
        }
        Ok(ScalarMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Parses a matrix of rational strings, e.g. from the JSON schema.
    pub fn parse_rows(rows: &[Vec<String>]) -> Result<Self> {
        let parsed: Result<Vec<Vec<Scalar>>> = rows
            .iter()
            .map(|r| r.iter().map(|s| s.parse()).collect())
            .collect();
        Self::from_rows(parsed?)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &Scalar {
        &self.data[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Scalar) {
        self.data[row * self.cols + col] = value;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..=i).all(|j| (self.get(i, j) + self.get(j, i)).is_zero())
            })
    }

    pub fn transpose(&self) -> ScalarMatrix {
        let mut out = ScalarMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn add(&self, other: &ScalarMatrix) -> Result<ScalarMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: other.rows,
            });
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &ScalarMatrix) -> Result<ScalarMatrix> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> ScalarMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = &*a * c;
        }
        out
    }

    pub fn neg(&self) -> ScalarMatrix {
        self.scale(&-Scalar::one())
    }

    pub fn mul(&self, other: &ScalarMatrix) -> Result<ScalarMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = ScalarMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * other.get(k, j);
                    let cur = out.get(i, j) + &prod;
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect())
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn try_inverse(&self) -> Result<ScalarMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = ScalarMatrix::identity(n);
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(Error::SingularMatrix)?;
            if pivot_row != col {
                a.swap_rows(pivot_row, col);
                inv.swap_rows(pivot_row, col);
            }
            let pivot = a.get(col, col).clone();
            a.scale_row(col, &pivot.recip());
            inv.scale_row(col, &pivot.recip());
            for r in 0..n {
                if r != col && !a.get(r, col).is_zero() {
                    let factor = a.get(r, col).clone();
                    a.add_scaled_row(col, r, &-factor.clone());
                    inv.add_scaled_row(col, r, &-factor);
                }
            }
        }
        Ok(inv)
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Scalar::one();
        for col in 0..n {
            let pivot_row = match (col..n).find(|&r| !a.get(r, col).is_zero()) {
                Some(r) => r,
                None => return Ok(Scalar::zero()),
            };
            if pivot_row != col {
                a.swap_rows(pivot_row, col);
                det = -det;
            }
            let pivot = a.get(col, col).clone();
            det = det * &pivot;
            for r in (col + 1)..n {
                if !a.get(r, col).is_zero() {
                    let factor = a.get(r, col) / &pivot;
                    a.add_scaled_row(col, r, &-factor);
                }
            }
        }
        Ok(det)
    }

    /// Determinants of the leading principal submatrices, sizes 1..=n.
    pub fn leading_principal_minors(&self) -> Result<Vec<Scalar>> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        (1..=self.rows)
            .map(|k| {
                let rows: Vec<Vec<Scalar>> = (0..k)
                    .map(|i| (0..k).map(|j| self.get(i, j).clone()).collect())
                    .collect();
                ScalarMatrix::from_rows(rows)?.determinant()
            })
            .collect()
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_f64()).collect())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, row: usize, c: &Scalar) {
        for j in 0..self.cols {
            let v = self.get(row, j) * c;
            self.set(row, j, v);
        }
    }

    /// row[target] += c * row[source]
    fn add_scaled_row(&mut self, source: usize, target: usize, c: &Scalar) {
        for j in 0..self.cols {
            let v = self.get(target, j) + &(self.get(source, j) * c);
            self.set(target, j, v);
        }
    }
}

/// Outcome of exact elimination on a stacked linear system `A x = b`.
#[derive(Clone, Debug)]
pub struct LinearSolution {
    /// Rank of the coefficient matrix.
    pub rank: usize,
    /// A solution when the system is consistent (free variables set to
    /// zero), `None` otherwise.
    pub solution: Option<Vec<Scalar>>,
}

/// Solves `A x = b` exactly for a rectangular `A`, reporting the rank of
/// `A` and a solution when one exists.
pub fn solve_linear_system(a: &ScalarMatrix, b: &[Scalar]) -> Result<LinearSolution> {
    if b.len() != a.nrows() {
        return Err(Error::LengthMismatch {
            expected: a.nrows(),
            found: b.len(),
        });
    }
    let rows = a.nrows();
    let cols = a.ncols();
    // augmented matrix [A | b]
    let mut aug = ScalarMatrix::zeros(rows, cols + 1);
    for i in 0..rows {
        for j in 0..cols {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, cols, b[i].clone());
    }
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let pivot_row = match (row..rows).find(|&r| !aug.get(r, col).is_zero()) {
            Some(r) => r,
            None => continue,
        };
        aug.swap_rows(pivot_row, row);
        let pivot = aug.get(row, col).clone();
        aug.scale_row(row, &pivot.recip());
        for r in 0..rows {
            if r != row && !aug.get(r, col).is_zero() {
                let factor = aug.get(r, col).clone();
                aug.add_scaled_row(row, r, &-factor);
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    let rank = pivot_cols.len();
    // inconsistent iff a zero row of A maps to a nonzero entry of b
    let consistent = (rank..rows).all(|r| aug.get(r, cols).is_zero());
    let solution = consistent.then(|| {
        let mut x = vec![Scalar::zero(); cols];
        for (r, &col) in pivot_cols.iter().enumerate() {
            x[col] = aug.get(r, cols).clone();
        }
        x
    });
    Ok(LinearSolution { rank, solution })
}
