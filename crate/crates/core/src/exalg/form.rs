//! Antisymmetric multilinear forms over a fixed basis.
//!
//! A [`KForm`] is an exact k-form on an n-dimensional space, stored as a
//! sorted map from strictly increasing basis index tuples to rational
//! coefficients. The canonical form never keeps a zero coefficient, so
//! structural equality equals semantic equality.
//!
//! The external string notation follows the usual shorthand for wedge
//! monomials: `e12` means `e^1 ∧ e^2`, so a full form prints like
//! `-e12 - 1/2 e34`. Parsing is whitespace-insensitive.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exalg::Scalar;

/// Strictly increasing tuple of 1-based basis indices; the empty tuple is
/// the (unique) grade-0 monomial.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct IndexTuple(Vec<usize>);

impl IndexTuple {
    /// Builds a tuple from already strictly increasing indices.
    pub fn new(indices: &[usize]) -> Result<Self> {
        if indices.contains(&0) {
            return Err(Error::IndexOutOfRange {
                index: 0,
                dimension: 0,
            });
        }
        if !indices.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::NotIncreasing(indices.to_vec()));
        }
        Ok(IndexTuple(indices.to_vec()))
    }

    pub fn empty() -> Self {
        IndexTuple(Vec::new())
    }

    /// Sorts `indices` into a tuple, returning the permutation sign, or
    /// `None` when an index repeats (the monomial vanishes).
    pub fn from_unsorted(indices: &[usize]) -> Option<(Self, i32)> {
        let mut v = indices.to_vec();
        let mut sign = 1;
        // insertion sort, counting transpositions; tuples are tiny
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((IndexTuple(v), sign))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn max_index(&self) -> usize {
        self.0.last().copied().unwrap_or(0)
    }
}

/// Exact antisymmetric k-form on an n-dimensional space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KForm {
    dimension: usize,
    grade: usize,
    terms: BTreeMap<IndexTuple, Scalar>,
}

impl KForm {
    /// The zero form of the given grade. Grades above the dimension are
    /// allowed and are necessarily zero; `wedge` produces them.
    pub fn zero(dimension: usize, grade: usize) -> Self {
        KForm {
            dimension,
            grade,
            terms: BTreeMap::new(),
        }
    }

    /// Basis monomial `e^{i1...ik}` with coefficient one.
    pub fn basis(dimension: usize, indices: &[usize]) -> Result<Self> {
        Self::monomial(dimension, Scalar::one(), indices)
    }

    /// `coeff · e^{i1...ik}` for strictly increasing indices.
    pub fn monomial(dimension: usize, coeff: Scalar, indices: &[usize]) -> Result<Self> {
        let tuple = IndexTuple::new(indices)?;
        let mut form = KForm::zero(dimension, indices.len());
        form.check_tuple(&tuple)?;
        form.add_term(&tuple, &coeff);
        Ok(form)
    }

    /// Builds a form from raw terms, canonicalizing on the way in:
    /// coefficients of equal tuples accumulate and zeros are dropped.
    pub fn from_terms<I>(dimension: usize, grade: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (IndexTuple, Scalar)>,
    {
        let mut form = KForm::zero(dimension, grade);
        for (tuple, coeff) in terms {
            if tuple.len() != grade {
                return Err(Error::GradeMismatch {
                    expected: grade,
                    found: tuple.len(),
                });
            }
            form.check_tuple(&tuple)?;
            form.add_term(&tuple, &coeff);
        }
        Ok(form)
    }

    fn check_tuple(&self, tuple: &IndexTuple) -> Result<()> {
        if tuple.max_index() > self.dimension {
            return Err(Error::IndexOutOfRange {
                index: tuple.max_index(),
                dimension: self.dimension,
            });
        }
        Ok(())
    }

    fn add_term(&mut self, tuple: &IndexTuple, coeff: &Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(tuple) {
            Some(existing) => {
                *existing += coeff;
                if existing.is_zero() {
                    self.terms.remove(tuple);
                }
            }
            None => {
                self.terms.insert(tuple.clone(), coeff.clone());
            }
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexTuple, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of the sorted tuple, zero when absent.
    pub fn coefficient(&self, tuple: &IndexTuple) -> Scalar {
        self.terms.get(tuple).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Exterior product. The grade adds; a repeated index annihilates the
    /// term; the sign is the parity of the sort permutation.
    pub fn wedge(&self, other: &KForm) -> Result<KForm> {
        if self.dimension != other.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: other.dimension,
            });
        }
        let mut out = KForm::zero(self.dimension, self.grade + other.grade);
        for (left, a) in &self.terms {
            for (right, b) in &other.terms {
                let mut concat = left.indices().to_vec();
                concat.extend_from_slice(right.indices());
                if let Some((tuple, sign)) = IndexTuple::from_unsorted(&concat) {
                    let mut coeff = a * b;
                    if sign < 0 {
                        coeff = -coeff;
                    }
                    out.add_term(&tuple, &coeff);
                }
            }
        }
        Ok(out)
    }

    /// Exact linear combination `Σ coeffs[i] · forms[i]`; all forms must
    /// share dimension and grade and the sequences must have equal length.
    pub fn linear_combine(coeffs: &[Scalar], forms: &[KForm]) -> Result<KForm> {
        if coeffs.len() != forms.len() {
            return Err(Error::LengthMismatch {
                expected: coeffs.len(),
                found: forms.len(),
            });
        }
        let first = forms.first().ok_or_else(|| {
            Error::InvalidInput("linear_combine needs at least one form".to_string())
        })?;
        let mut out = KForm::zero(first.dimension, first.grade);
        for (c, f) in coeffs.iter().zip(forms) {
            if f.dimension != first.dimension {
                return Err(Error::DimensionMismatch {
                    expected: first.dimension,
                    found: f.dimension,
                });
            }
            if f.grade != first.grade {
                return Err(Error::GradeMismatch {
                    expected: first.grade,
                    found: f.grade,
                });
            }
            for (tuple, coeff) in &f.terms {
                out.add_term(tuple, &(c * coeff));
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &KForm) -> Result<KForm> {
        KForm::linear_combine(
            &[Scalar::one(), Scalar::one()],
            &[self.clone(), other.clone()],
        )
    }

    pub fn sub(&self, other: &KForm) -> Result<KForm> {
        KForm::linear_combine(
            &[Scalar::one(), -Scalar::one()],
            &[self.clone(), other.clone()],
        )
    }

    pub fn scale(&self, c: &Scalar) -> KForm {
        let mut out = KForm::zero(self.dimension, self.grade);
        for (tuple, coeff) in &self.terms {
            out.add_term(tuple, &(c * coeff));
        }
        out
    }

    pub fn neg(&self) -> KForm {
        self.scale(&-Scalar::one())
    }

    /// Evaluates the form on basis vectors `e_{args[0]}, ..., e_{args[k-1]}`
    /// (fully antisymmetric), returning the signed coefficient.
    pub fn contract_basis(&self, args: &[usize]) -> Result<Scalar> {
        if args.len() != self.grade {
            return Err(Error::WrongArity {
                expected: self.grade,
                found: args.len(),
            });
        }
        for &index in args {
            if index == 0 || index > self.dimension {
                return Err(Error::IndexOutOfRange {
                    index,
                    dimension: self.dimension,
                });
            }
        }
        match IndexTuple::from_unsorted(args) {
            None => Ok(Scalar::zero()),
            Some((tuple, sign)) => {
                let coeff = self.coefficient(&tuple);
                Ok(if sign < 0 { -coeff } else { coeff })
            }
        }
    }

    /// Parses the string notation, e.g. `"-e12 - 1/2 e34"`, `"2 e3"`, `"0"`.
    ///
    /// Whitespace is ignored. Monomial indices are single digits (the crate
    /// works in dimension ≤ 9) and must be strictly increasing. The expected
    /// grade disambiguates `"0"`.
    pub fn parse(input: &str, dimension: usize, grade: usize) -> Result<KForm> {
        let fail = |reason: &str| Error::InvalidForm {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        if dimension > 9 {
            return Err(fail("string notation supports dimensions up to 9"));
        }
        let text: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(fail("empty expression"));
        }
        if text.len() == 1 && text[0] == '0' {
            return Ok(KForm::zero(dimension, grade));
        }

        let mut form = KForm::zero(dimension, grade);
        let mut pos = 0;
        let mut sign = Scalar::one();
        if text[pos] == '+' || text[pos] == '-' {
            if text[pos] == '-' {
                sign = -sign;
            }
            pos += 1;
        }
        loop {
            // optional rational coefficient
            let mut coeff: Option<Scalar> = None;
            let start = pos;
            while pos < text.len() && text[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos > start {
                let numer: String = text[start..pos].iter().collect();
                let mut literal = numer;
                if pos < text.len() && text[pos] == '/' {
                    pos += 1;
                    let dstart = pos;
                    while pos < text.len() && text[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if pos == dstart {
                        return Err(fail("missing denominator"));
                    }
                    let denom: String = text[dstart..pos].iter().collect();
                    literal = format!("{literal}/{denom}");
                }
                coeff = Some(literal.parse().map_err(|e| fail(&format!("{e}")))?);
            }
            // optional monomial
            let mut tuple: Option<IndexTuple> = None;
            if pos < text.len() && text[pos] == 'e' {
                pos += 1;
                let istart = pos;
                while pos < text.len() && text[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos == istart {
                    return Err(fail("monomial 'e' without indices"));
                }
                let indices: Vec<usize> = text[istart..pos]
                    .iter()
                    .map(|c| c.to_digit(10).unwrap() as usize)
                    .collect();
                let t = IndexTuple::new(&indices)?;
                if t.max_index() > dimension {
                    return Err(Error::IndexOutOfRange {
                        index: t.max_index(),
                        dimension,
                    });
                }
                tuple = Some(t);
            }

            let coeff = match (&coeff, &tuple) {
                (None, None) => return Err(fail("expected a coefficient or a monomial")),
                (None, Some(_)) => sign.clone(),
                (Some(c), _) => &sign * c,
            };
            let tuple = tuple.unwrap_or_else(IndexTuple::empty);
            if tuple.len() != grade {
                return Err(Error::GradeMismatch {
                    expected: grade,
                    found: tuple.len(),
                });
            }
            form.add_term(&tuple, &coeff);

            if pos == text.len() {
                break;
            }
            match text[pos] {
                '+' => sign = Scalar::one(),
                '-' => sign = -Scalar::one(),
                other => return Err(fail(&format!("unexpected character {other:?}"))),
            }
            pos += 1;
            if pos == text.len() {
                return Err(fail("trailing sign"));
            }
        }
        Ok(form)
    }
}

impl fmt::Display for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (pos, (tuple, coeff)) in self.terms.iter().enumerate() {
            let negative = coeff.is_negative();
            if pos == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let magnitude = coeff.abs();
            if tuple.is_empty() {
                write!(f, "{magnitude}")?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{magnitude} ")?;
                }
                write!(f, "e")?;
                for index in tuple.indices() {
                    write!(f, "{index}")?;
                }
            }
        }
        Ok(())
    }
}
