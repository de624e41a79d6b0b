//! Finite-difference exterior calculus and the coordinate-vs-algebra
//! consistency checks.
//!
//! First-derivative quantities use central differences at the caller's
//! step (default 1e-5), which leaves truncation and roundoff several
//! orders below the 1e-6 tolerances used by the checks.

use nalgebra::Matrix4;
use std::collections::BTreeMap;

use crate::coordgeom::models::{ModelSpace, Point};
use crate::error::{Error, Result};
use crate::exalg::{IndexTuple, KForm};
use crate::liealg::LieAlgebra;
use crate::quatstruct::HyperHermitianData;

/// Numeric counterpart of a `KForm` at a single point: antisymmetric
/// coefficients over strictly increasing coordinate index tuples (1-based,
/// in the `(dx, dy, dz, dt)` ordering of the chart).
#[derive(Clone, Debug)]
pub struct NumericForm {
    grade: usize,
    point: Point,
    coeffs: BTreeMap<IndexTuple, f64>,
}

impl NumericForm {
    pub fn zero(grade: usize, point: Point) -> Self {
        NumericForm {
            grade,
            point,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn point(&self) -> &Point {
        &self.point
    }

    /// Sets the coefficient of a strictly increasing tuple.
    pub fn set(&mut self, indices: &[usize], value: f64) -> Result<()> {
        if indices.len() != self.grade {
            return Err(Error::GradeMismatch {
                expected: self.grade,
                found: indices.len(),
            });
        }
        let tuple = IndexTuple::new(indices)?;
        self.coeffs.insert(tuple, value);
        Ok(())
    }

    /// Antisymmetric component lookup; unsorted index sequences pick up
    /// the permutation sign, repeated indices give zero.
    pub fn component(&self, indices: &[usize]) -> f64 {
        match IndexTuple::from_unsorted(indices) {
            None => 0.0,
            Some((tuple, sign)) => {
                let c = self.coeffs.get(&tuple).copied().unwrap_or(0.0);
                if sign < 0 {
                    -c
                } else {
                    c
                }
            }
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn scale(&self, factor: f64) -> NumericForm {
        NumericForm {
            grade: self.grade,
            point: self.point,
            coeffs: self
                .coeffs
                .iter()
                .map(|(t, c)| (t.clone(), c * factor))
                .collect(),
        }
    }

    pub fn sub(&self, other: &NumericForm) -> Result<NumericForm> {
        if self.grade != other.grade {
            return Err(Error::GradeMismatch {
                expected: self.grade,
                found: other.grade,
            });
        }
        let mut out = self.clone();
        for (tuple, c) in &other.coeffs {
            *out.coeffs.entry(tuple.clone()).or_insert(0.0) -= c;
        }
        Ok(out)
    }
}

/// All strictly increasing `k`-tuples over `1..=n`.
pub(crate) fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn recurse(n: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..=n {
            current.push(i);
            recurse(n, k, i + 1, current, out);
            current.pop();
        }
    }
    recurse(n, k, 1, &mut current, &mut out);
    out
}

/// Central-difference exterior derivative of a pointwise form field:
/// `(dσ)_{i0..ik} = Σ_m (-1)^m ∂_{i_m} σ_{i0..î_m..ik}`.
///
/// The whole stencil `p ± step·e_μ` must lie in the field's domain; the
/// field's own domain errors propagate.
pub fn fd_exterior_derivative<F>(field: F, p: &Point, step: f64) -> Result<NumericForm>
where
    F: Fn(&Point) -> Result<NumericForm>,
{
    let probe = field(p)?;
    let grade = probe.grade();
    let mut plus = Vec::with_capacity(4);
    let mut minus = Vec::with_capacity(4);
    for mu in 0..4 {
        let mut fwd = *p;
        fwd[mu] += step;
        let mut bwd = *p;
        bwd[mu] -= step;
        plus.push(field(&fwd)?);
        minus.push(field(&bwd)?);
    }
    let partial = |mu: usize, indices: &[usize]| -> f64 {
        (plus[mu].component(indices) - minus[mu].component(indices)) / (2.0 * step)
    };
    let mut out = NumericForm::zero(grade + 1, *p);
    for tuple in increasing_tuples(4, grade + 1) {
        let mut value = 0.0;
        for (m, &index) in tuple.iter().enumerate() {
            let rest: Vec<usize> = tuple
                .iter()
                .enumerate()
                .filter(|(pos, _)| *pos != m)
                .map(|(_, &i)| i)
                .collect();
            let d = partial(index - 1, &rest);
            value += if m % 2 == 0 { d } else { -d };
        }
        out.set(&tuple, value)?;
    }
    Ok(out)
}

/// Expresses an exact frame-basis form in chart coordinates at a point:
/// each frame monomial `e^{i1..ik}` becomes the k x k minor determinant of
/// the coframe rows `i1..ik`.
pub fn frame_form_to_coords(form: &KForm, coframe: &Matrix4<f64>, point: Point) -> NumericForm {
    let k = form.grade();
    let mut out = NumericForm::zero(k, point);
    for tuple in increasing_tuples(4, k) {
        let mut value = 0.0;
        for (frame_tuple, coeff) in form.terms() {
            let rows = frame_tuple.indices();
            value += coeff.to_f64() * minor_det(coframe, rows, &tuple);
        }
        out.set(&tuple, value).expect("increasing tuple");
    }
    out
}

/// Determinant of the minor `coframe[rows x cols]` for sizes 0..=3
/// (1-based index slices).
fn minor_det(m: &Matrix4<f64>, rows: &[usize], cols: &[usize]) -> f64 {
    debug_assert_eq!(rows.len(), cols.len());
    let a = |i: usize, j: usize| m[(rows[i] - 1, cols[j] - 1)];
    match rows.len() {
        0 => 1.0,
        1 => a(0, 0),
        2 => a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0),
        3 => {
            a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
                - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
                + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
        }
        n => panic!("minors of size {n} are not needed in dimension 4"),
    }
}

/// Verdict of a tolerance comparison.
#[derive(Clone, Copy, Debug)]
pub struct DeviationVerdict {
    pub pass: bool,
    pub max_deviation: f64,
    pub tolerance: f64,
}

impl DeviationVerdict {
    fn from(max_deviation: f64, tolerance: f64) -> Self {
        DeviationVerdict {
            pass: max_deviation < tolerance,
            max_deviation,
            tolerance,
        }
    }
}

/// Checks that the coframe is left-invariant under the translation by `p`:
/// the pullback of `coframe(p·q)` through the finite-difference Jacobian
/// of `q ↦ p·q` must reproduce `coframe(q)`.
pub fn left_invariance_check(
    model: &ModelSpace,
    p: &Point,
    q: &Point,
    step: f64,
    tol: f64,
) -> Result<DeviationVerdict> {
    let deviation = left_invariance_defect(model, &|pt| model.coframe(pt), p, q, step)?;
    Ok(DeviationVerdict::from(deviation, tol))
}

/// Shared worker, generic in the coframe so that corrupted-coframe
/// negative controls can drive it from the tests.
pub(crate) fn left_invariance_defect(
    model: &ModelSpace,
    coframe: &dyn Fn(&Point) -> Result<Matrix4<f64>>,
    p: &Point,
    q: &Point,
    step: f64,
) -> Result<f64> {
    let translated = model.product(p, q)?;
    let frame_at_translated = coframe(&translated)?;
    let frame_at_q = coframe(q)?;
    // Jacobian of L_p at q by central differences
    let mut jacobian = Matrix4::zeros();
    for nu in 0..4 {
        let mut fwd = *q;
        fwd[nu] += step;
        let mut bwd = *q;
        bwd[nu] -= step;
        let pf = model.product(p, &fwd)?;
        let pb = model.product(p, &bwd)?;
        for mu in 0..4 {
            jacobian[(mu, nu)] = (pf[mu] - pb[mu]) / (2.0 * step);
        }
    }
    let pulled_back = frame_at_translated * jacobian;
    let mut deviation: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            deviation = deviation.max((pulled_back[(i, j)] - frame_at_q[(i, j)]).abs());
        }
    }
    Ok(deviation)
}

/// Compares, for each basis index, the finite-difference `d` of the
/// coframe row against the structure-constant prediction re-expressed
/// through pointwise wedges of the coframe. One verdict per `e^j`.
pub fn structure_equation_check(
    model: &ModelSpace,
    algebra: &LieAlgebra,
    points: &[Point],
    step: f64,
    tol: f64,
) -> Result<Vec<DeviationVerdict>> {
    structure_equation_verdicts(&|pt| model.coframe(pt), algebra, points, step, tol)
}

pub(crate) fn structure_equation_verdicts(
    coframe: &dyn Fn(&Point) -> Result<Matrix4<f64>>,
    algebra: &LieAlgebra,
    points: &[Point],
    step: f64,
    tol: f64,
) -> Result<Vec<DeviationVerdict>> {
    let n = algebra.dimension();
    let mut worst = vec![0.0f64; n];
    for j in 1..=n {
        let ej = KForm::basis(n, &[j])?;
        let dej = algebra.ce_differential(&ej)?;
        let row_field = |pt: &Point| -> Result<NumericForm> {
            let c = coframe(pt)?;
            let mut form = NumericForm::zero(1, *pt);
            for mu in 1..=4 {
                form.set(&[mu], c[(j - 1, mu - 1)])?;
            }
            Ok(form)
        };
        for p in points {
            let numeric = fd_exterior_derivative(row_field, p, step)?;
            let algebraic = frame_form_to_coords(&dej, &coframe(p)?, *p);
            let defect = numeric.sub(&algebraic)?.max_abs();
            worst[j - 1] = worst[j - 1].max(defect);
        }
    }
    Ok(worst
        .into_iter()
        .map(|w| DeviationVerdict::from(w, tol))
        .collect())
}

/// Checks that the conformally rescaled fundamental forms
/// `ω̂_α = e^{-f} ω_α` are closed: the finite-difference `d` of each
/// coordinate 2-form field must vanish within `tol` at every point.
pub fn hyperkahler_closedness_check(
    model: &ModelSpace,
    data: &HyperHermitianData,
    points: &[Point],
    step: f64,
    tol: f64,
) -> Result<[DeviationVerdict; 3]> {
    let defects = closedness_defects(model, data, points, step, true)?;
    Ok(defects.map(|d| DeviationVerdict::from(d, tol)))
}

/// Maximum `|dω_α|` components for the *unrescaled* forms; the negative
/// control showing that the conformal factor is doing real work.
pub fn unrescaled_closedness_defect(
    model: &ModelSpace,
    data: &HyperHermitianData,
    points: &[Point],
    step: f64,
) -> Result<[f64; 3]> {
    closedness_defects(model, data, points, step, false)
}

fn closedness_defects(
    model: &ModelSpace,
    data: &HyperHermitianData,
    points: &[Point],
    step: f64,
    rescaled: bool,
) -> Result<[f64; 3]> {
    let mut out = [0.0f64; 3];
    for alpha in 1..=3 {
        let omega = data.omega(alpha);
        let field = |pt: &Point| -> Result<NumericForm> {
            let c = model.coframe(pt)?;
            let form = frame_form_to_coords(omega, &c, *pt);
            if rescaled {
                Ok(form.scale((-model.potential(pt)?).exp()))
            } else {
                Ok(form)
            }
        };
        for p in points {
            let d = fd_exterior_derivative(field, p, step)?;
            out[alpha - 1] = out[alpha - 1].max(d.max_abs());
        }
    }
    Ok(out)
}
