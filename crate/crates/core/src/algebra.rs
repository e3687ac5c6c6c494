//! Finite-dimensional associative algebras given by structure constants.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{Echelon, Matrix, Subspace};
use crate::scalar::{Field, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("duplicate structure constant for ({0}, {1}, {2})")]
    DuplicateConstant(usize, usize, usize),
    #[error("scalar field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: Field, found: Field },
    #[error("element has length {found}, algebra has dimension {dim}")]
    ElementMismatch { dim: usize, found: usize },
    #[error("algebra must have positive dimension")]
    ZeroDimension,
}

/// A coefficient vector with respect to an algebra basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element(Vec<Scalar>);

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "Element[{}]", s.join(", "))
    }
}

impl Element {
    pub fn new(coeffs: Vec<Scalar>) -> Element {
        Element(coeffs)
    }

    pub fn zero(field: Field, dim: usize) -> Element {
        Element(vec![field.zero(); dim])
    }

    pub fn basis(field: Field, dim: usize, i: usize) -> Element {
        let mut v = vec![field.zero(); dim];
        v[i] = field.one();
        Element(v)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i)
    }

    pub fn add(&self, other: &Element) -> Element {
        Element(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Element) -> Element {
        Element(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Scalar) -> Element {
        Element(self.0.iter().map(|a| a * k).collect())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(|x| x.to_string()).collect()
    }
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// A violated algebra axiom on basis vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AxiomViolation {
    Associativity { i: usize, j: usize, k: usize },
    LeftUnit { i: usize },
    RightUnit { i: usize },
}

/// Associative unital algebra with basis `b_0..b_{dim-1}` and products
/// `b_i b_j = Σ_k c[i][j][k] b_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    dim: usize,
    /// Sparse constants, sorted by `(i, j, k)`, zeros dropped.
    constants: Vec<(usize, usize, usize, Scalar)>,
    /// `table[i * dim + j]` = nonzero `(k, c)` of `b_i b_j`.
    table: Vec<Vec<(usize, Scalar)>>,
    unit: Element,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("field", &self.field)
            .field("dim", &self.dim)
            .field("constants", &self.constants.len())
            .finish()
    }
}

impl Algebra {
    /// Builds the multiplication table. Index ranges, fields and duplicate
    /// entries are checked here; the ring axioms by [`Algebra::axiom_violations`].
    pub fn new(
        field: Field,
        dim: usize,
        constants: Vec<(usize, usize, usize, Scalar)>,
        unit: Element,
    ) -> Result<Algebra, AlgebraError> {
        if dim == 0 {
            return Err(AlgebraError::ZeroDimension);
        }
        if unit.len() != dim {
            return Err(AlgebraError::ElementMismatch { dim, found: unit.len() });
        }
        for x in unit.coeffs() {
            if x.field() != field {
                return Err(AlgebraError::FieldMismatch {
                    expected: field,
                    found: x.field(),
                });
            }
        }
        let mut constants: Vec<_> = constants.into_iter().filter(|c| !c.3.is_zero()).collect();
        constants.sort_by_key(|c| (c.0, c.1, c.2));
        let mut table = vec![Vec::new(); dim * dim];
        for w in constants.windows(2) {
            if (w[0].0, w[0].1, w[0].2) == (w[1].0, w[1].1, w[1].2) {
                return Err(AlgebraError::DuplicateConstant(w[0].0, w[0].1, w[0].2));
            }
        }
        for (i, j, k, c) in &constants {
            for &index in [i, j, k] {
                if index >= dim {
                    return Err(AlgebraError::IndexOutOfRange { index, dim });
                }
            }
            if c.field() != field {
                return Err(AlgebraError::FieldMismatch {
                    expected: field,
                    found: c.field(),
                });
            }
            table[i * dim + j].push((*k, c.clone()));
        }
        Ok(Algebra {
            field,
            dim,
            constants,
            table,
            unit,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &Element {
        &self.unit
    }

    pub fn constants(&self) -> &[(usize, usize, usize, Scalar)] {
        &self.constants
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.field, self.dim)
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element::basis(self.field, self.dim, i)
    }

    /// `b_i b_j` as sparse `(k, coefficient)` pairs.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim + j]
    }

    pub fn check_element(&self, x: &Element) -> Result<(), AlgebraError> {
        if x.len() != self.dim {
            return Err(AlgebraError::ElementMismatch {
                dim: self.dim,
                found: x.len(),
            });
        }
        if let Some(bad) = x.coeffs().iter().find(|c| c.field() != self.field) {
            return Err(AlgebraError::FieldMismatch {
                expected: self.field,
                found: bad.field(),
            });
        }
        Ok(())
    }

    pub fn try_mul(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(self.mul(x, y))
    }

    /// Bilinear product. Panics if an operand has the wrong length; use
    /// [`Algebra::try_mul`] for unchecked input.
    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        Element(self.mul_slices(x.coeffs(), y.coeffs()))
    }

    pub fn mul_slices(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.dim, "left operand has wrong dimension");
        assert_eq!(y.len(), self.dim, "right operand has wrong dimension");
        let mut out = vec![self.field.zero(); self.dim];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let entries = &self.table[i * self.dim + j];
                if entries.is_empty() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in entries {
                    out[*k] = &out[*k] + &(&ab * c);
                }
            }
        }
        out
    }

    pub fn commutator(&self, x: &Element, y: &Element) -> Element {
        self.mul(x, y).sub(&self.mul(y, x))
    }

    pub fn axiom_violations(&self) -> Vec<AxiomViolation> {
        let mut v = Vec::new();
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !self.associates(i, j, k) {
                        v.push(AxiomViolation::Associativity { i, j, k });
                    }
                }
            }
        }
        for i in 0..n {
            let bi = self.basis_element(i);
            if self.mul(&self.unit, &bi) != bi {
                v.push(AxiomViolation::LeftUnit { i });
            }
            if self.mul(&bi, &self.unit) != bi {
                v.push(AxiomViolation::RightUnit { i });
            }
        }
        v
    }

    /// `(b_i b_j) b_k == b_i (b_j b_k)`, evaluated on the sparse table.
    pub fn associates(&self, i: usize, j: usize, k: usize) -> bool {
        let n = self.dim;
        let mut left = vec![self.field.zero(); n];
        for (l, c) in self.basis_product(i, j) {
            for (m, d) in self.basis_product(*l, k) {
                left[*m] = &left[*m] + &(c * d);
            }
        }
        let mut right = vec![self.field.zero(); n];
        for (l, c) in self.basis_product(j, k) {
            for (m, d) in self.basis_product(i, *l) {
                right[*m] = &right[*m] + &(c * d);
            }
        }
        left == right
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// Matrix of `x ↦ x·y` (rows = images of basis vectors).
    pub fn right_mult_matrix(&self, y: &Element) -> Matrix {
        let mut m = Matrix::zeros(self.field, 0, self.dim);
        for i in 0..self.dim {
            m.push_row(&self.mul(&self.basis_element(i), y).into_coeffs());
        }
        m
    }

    /// Whether left multiplication by `a` is injective on the whole algebra.
    pub fn is_left_zero_divisor_free(&self, a: &Element) -> bool {
        let mut e = Echelon::new(self.field, self.dim);
        (0..self.dim).all(|i| e.insert(&self.mul(a, &self.basis_element(i)).into_coeffs()))
    }

    /// Whether `a` is a zero divisor: `a·x = 0` or `x·a = 0` for some `x ≠ 0`.
    pub fn is_zero_divisor(&self, a: &Element) -> bool {
        let mut right = Echelon::new(self.field, self.dim);
        let right_ok = (0..self.dim).all(|i| right.insert(&self.mul(&self.basis_element(i), a).into_coeffs()));
        !(right_ok && self.is_left_zero_divisor_free(a))
    }

    /// Span of `{x·y : x ∈ left, y ∈ right}`.
    pub fn product_span(&self, left: &Subspace, right: &Subspace) -> Subspace {
        let mut e = Echelon::new(self.field, self.dim);
        for x in left.vectors() {
            for y in right.vectors() {
                e.insert(&self.mul_slices(x, y));
            }
        }
        e.into_subspace()
    }

    /// Field `K` as a one-dimensional algebra.
    pub fn ground_field(field: Field) -> Algebra {
        Algebra::new(field, 1, vec![(0, 0, 0, field.one())], Element::basis(field, 1, 0)).unwrap()
    }

    /// `K^n` with componentwise product (orthogonal idempotents).
    pub fn split(field: Field, n: usize) -> Algebra {
        let constants = (0..n).map(|i| (i, i, i, field.one())).collect();
        Algebra::new(field, n, constants, Element::new(vec![field.one(); n])).unwrap()
    }
}
