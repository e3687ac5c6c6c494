//! Dense exact linear algebra: reduced row echelon form, nullspaces,
//! rowspace intersections and an rref-normalized [`Subspace`] type.
//!
//! Pivoting is deterministic: columns are scanned left to right and the
//! first row (top to bottom) with a nonzero entry becomes the pivot row, so
//! every derived basis is reproducible.

use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};
use thiserror::Error;

use crate::scalar::{Field, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("column count mismatch: {left} vs {right}")]
    ColumnMismatch { left: usize, right: usize },
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },
    #[error("row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("entry ({row}, {col}) is not in field {field}")]
    EntryField { row: usize, col: usize, field: Field },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Matrix, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(LinalgError::Ragged {
                    row: r,
                    len: row.len(),
                    expected: cols,
                });
            }
            for (c, x) in row.iter().enumerate() {
                if x.field() != field {
                    return Err(LinalgError::EntryField { row: r, col: c, field });
                }
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n,
            cols,
            field,
            data,
        })
    }

    /// Builds a matrix from small integers, reduced into `field`.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged integer matrix");
                r.iter().map(|&x| field.from_i64(x))
            })
            .collect();
        Matrix {
            rows: rows.len(),
            cols,
            field,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Scalar) {
        debug_assert_eq!(x.field(), self.field);
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn push_row(&mut self, row: &[Scalar]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.compatible(other)?;
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            field: self.field,
            data,
        })
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        if self.field != rhs.field {
            return Err(LinalgError::FieldMismatch {
                left: self.field,
                right: rhs.field,
            });
        }
        if self.cols != rhs.rows {
            return Err(LinalgError::ColumnMismatch {
                left: self.cols,
                right: rhs.rows,
            });
        }
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c) + &(a * b);
                        out.set(r, c, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix: `v * self`.
    pub fn apply_row(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![self.field.zero(); self.cols];
        for (r, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                let b = self.get(r, c);
                if !b.is_zero() {
                    *o = &*o + &(a * b);
                }
            }
        }
        out
    }

    fn compatible(&self, other: &Matrix) -> Result<(), LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        if self.cols != other.cols {
            return Err(LinalgError::ColumnMismatch {
                left: self.cols,
                right: other.cols,
            });
        }
        Ok(())
    }

    /// Reduced row echelon form, pivot columns and rank. The result has the
    /// same shape as `self`; zero rows sit at the bottom.
    pub fn rref(&self) -> (Matrix, Vec<usize>, usize) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..m.cols {
            if pr == m.rows {
                break;
            }
            let Some(r) = (pr..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(pr, r);
            let inv = m.get(pr, c).inv().expect("nonzero pivot");
            m.scale_row(pr, &inv);
            for r2 in 0..m.rows {
                if r2 != pr && !m.get(r2, c).is_zero() {
                    let factor = m.get(r2, c).clone();
                    m.sub_row_multiple(r2, pr, &factor);
                }
            }
            pivots.push(c);
            pr += 1;
        }
        (m, pivots, pr)
    }

    pub fn rank(&self) -> usize {
        self.rref().2
    }

    /// Basis (as rows) of `{x : self * x^T = 0}`, one row per free column of
    /// the rref.
    pub fn nullspace(&self) -> Matrix {
        let (r, pivots, rank) = self.rref();
        let mut out = Matrix::zeros(self.field, 0, self.cols);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (i, &p) in pivots.iter().enumerate().take(rank) {
                v[p] = -r.get(i, free);
            }
            out.push_row(&v);
        }
        out
    }

    /// A solution `x` of `self * x^T = rhs^T`, with every free variable set
    /// to zero, or `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(rhs.len(), self.rows, "right-hand side length");
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, rhs[r].clone());
        }
        let (red, pivots, _) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = red.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// Nonzero rows of the rref.
    pub fn row_basis(&self) -> Matrix {
        let (r, _, rank) = self.rref();
        Matrix {
            rows: rank,
            cols: self.cols,
            field: self.field,
            data: r.data[..rank * self.cols].to_vec(),
        }
    }

    /// Rows spanning `rowspace(self) ∩ rowspace(other)`, in rref without
    /// zero rows. Uses the left nullspace of the stacked matrix: every
    /// `(y, z)` with `y·A + z·B = 0` gives the common vector `y·A`.
    pub fn rowspace_intersect(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.compatible(other)?;
        let stacked = self.vstack(other)?;
        let left_null = stacked.transpose().nullspace();
        let mut common = Matrix::zeros(self.field, 0, self.cols);
        for k in 0..left_null.rows() {
            let y = &left_null.row(k)[..self.rows];
            common.push_row(&self.apply_row(y));
        }
        Ok(common.row_basis())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, k: &Scalar) {
        for c in 0..self.cols {
            let i = r * self.cols + c;
            if !self.data[i].is_zero() {
                self.data[i] = &self.data[i] * k;
            }
        }
    }

    /// row[target] -= factor * row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, factor: &Scalar) {
        for c in 0..self.cols {
            let s = &self.data[source * self.cols + c];
            if s.is_zero() {
                continue;
            }
            let d = s * factor;
            let t = target * self.cols + c;
            self.data[t] = &self.data[t] - &d;
        }
    }
}

/// Incrementally maintained reduced echelon basis.
///
/// Rows stay fully reduced against each other, so the stored basis always
/// equals the rref of everything inserted so far (up to row order, which
/// [`Echelon::into_subspace`] normalizes).
#[derive(Debug, Clone)]
pub struct Echelon {
    field: Field,
    cols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: Field, cols: usize) -> Echelon {
        Echelon {
            field,
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Reduces `v` against the current rows; the residual is zero iff `v` is
    /// in the span.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = &*x - &(y * &f);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Adds `v` to the span. Returns `true` if the rank grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        debug_assert_eq!(v.len(), self.cols);
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x = &*x - &(y * &f);
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn into_subspace(self) -> Subspace {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let mut m = Matrix::zeros(self.field, 0, self.cols);
        for i in order {
            m.push_row(&self.rows[i]);
        }
        Subspace { basis: m }
    }
}

/// A linear subspace of `field^n`, stored as the nonzero rows of its rref.
/// Two subspaces are equal iff their stored matrices are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {}) ", self.dim())?;
        self.basis.fmt(f)
    }
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace {
            basis: Matrix::zeros(field, 0, ambient),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace {
            basis: Matrix::identity(field, ambient),
        }
    }

    pub fn span(m: &Matrix) -> Subspace {
        Subspace { basis: m.row_basis() }
    }

    pub fn span_of<'a, I>(field: Field, ambient: usize, vectors: I) -> Subspace
    where
        I: IntoIterator<Item = &'a [Scalar]>,
    {
        let mut e = Echelon::new(field, ambient);
        for v in vectors {
            e.insert(v);
        }
        e.into_subspace()
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn vectors(&self) -> impl Iterator<Item = &[Scalar]> {
        (0..self.dim()).map(|r| self.basis.row(r))
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        self.vectors()
            .map(|v| v.iter().position(|x| !x.is_zero()).expect("nonzero row"))
            .collect()
    }

    pub fn echelon(&self) -> Echelon {
        Echelon {
            field: self.field(),
            cols: self.ambient(),
            rows: self.vectors().map(<[Scalar]>::to_vec).collect(),
            pivots: self.pivots(),
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.echelon().contains(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        let e = self.echelon();
        other.vectors().all(|v| e.contains(v))
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` is outside.
    /// With an rref basis the coordinates are the entries at pivot columns.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots().into_iter().map(|p| v[p].clone()).collect())
    }

    /// Linear combination of the basis rows.
    pub fn combine(&self, coords: &[Scalar]) -> Vec<Scalar> {
        self.basis.apply_row(coords)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        Ok(Subspace::span(&self.basis.vstack(&other.basis)?))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        Ok(Subspace {
            basis: self.basis.rowspace_intersect(&other.basis)?,
        })
    }
}

/// Number of vectors in `field^dim`, `None` when infinite or above `u64`.
pub fn space_size(field: Field, dim: usize) -> Option<u64> {
    let p = field.size()?;
    let mut n: u64 = 1;
    for _ in 0..dim {
        n = n.checked_mul(p)?;
    }
    Some(n)
}

/// The `index`-th vector of `GF(p)^dim` in base-`p` digit order (digit `i`
/// is coordinate `i`). Index 0 is the zero vector.
pub fn vector_from_index(field: Field, dim: usize, mut index: u64) -> Vec<Scalar> {
    let p = field.size().expect("finite field");
    (0..dim)
        .map(|_| {
            let d = index % p;
            index /= p;
            field.element(d)
        })
        .collect()
}

/// A matrix serializes as its list of rows, each a list of scalar strings.
impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for r in 0..self.rows {
            seq.serialize_element(self.row(r))?;
        }
        seq.end()
    }
}

/// A subspace serializes as its rref basis rows.
impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.basis.serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> Field {
        Field::Prime(2)
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = Matrix::identity(Field::Rational, 2);
        let (r, piv, rank) = id.rref();
        assert_eq!(r, id);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(rank, 2);

        let z = Matrix::zeros(Field::Rational, 3, 3);
        let (r, piv, rank) = z.rref();
        assert_eq!(r, z);
        assert!(piv.is_empty());
        assert_eq!(rank, 0);
    }

    #[test]
    fn rref_gf2_repeated_row() {
        // Hand reduction: subtract row 0 from row 1.
        let m = Matrix::from_i64(gf2(), &[&[1, 1], &[1, 1]]);
        let (r, piv, rank) = m.rref();
        assert_eq!(r, Matrix::from_i64(gf2(), &[&[1, 1], &[0, 0]]));
        assert_eq!(piv, vec![0]);
        assert_eq!(rank, 1);
    }

    #[test]
    fn rref_rational_normalizes_pivots() {
        let m = Matrix::from_i64(Field::Rational, &[&[0, 2, 4], &[3, 0, 3]]);
        let (r, piv, _) = m.rref();
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(r, Matrix::from_i64(Field::Rational, &[&[1, 0, 1], &[0, 1, 2]]));
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(Matrix::identity(Field::Rational, 3).nullspace().rows(), 0);
        assert_eq!(Matrix::zeros(Field::Rational, 2, 3).nullspace().rows(), 3);
        // Enumerating all four vectors of GF(2)^2 against [1 1]: only 00 and 11 vanish.
        let m = Matrix::from_i64(gf2(), &[&[1, 1]]);
        let mut kernel = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                if (a + b) % 2 == 0 && (a, b) != (0, 0) {
                    kernel.push(vec![a, b]);
                }
            }
        }
        assert_eq!(kernel, vec![vec![1, 1]]);
        assert_eq!(m.nullspace(), Matrix::from_i64(gf2(), &[&[1, 1]]));
    }

    #[test]
    fn intersect_examples() {
        let id = Matrix::identity(Field::Rational, 2);
        assert_eq!(id.rowspace_intersect(&id).unwrap(), id);

        let e1 = Matrix::from_i64(Field::Rational, &[&[1, 0]]);
        let e2 = Matrix::from_i64(Field::Rational, &[&[0, 1]]);
        assert_eq!(e1.rowspace_intersect(&e2).unwrap().rows(), 0);

        // span{e1+e2, e2} = all of GF(2)^2 by enumeration, so ∩ span{e1} = span{e1}.
        let a = Matrix::from_i64(gf2(), &[&[1, 1], &[0, 1]]);
        let b = Matrix::from_i64(gf2(), &[&[1, 0]]);
        assert_eq!(a.rowspace_intersect(&b).unwrap(), b);
    }

    #[test]
    fn intersect_errors() {
        let a = Matrix::from_i64(gf2(), &[&[1, 1]]);
        let b = Matrix::from_i64(gf2(), &[&[1, 1, 0]]);
        assert_eq!(
            a.rowspace_intersect(&b),
            Err(LinalgError::ColumnMismatch { left: 2, right: 3 })
        );
        let c = Matrix::from_i64(Field::Prime(3), &[&[1, 1]]);
        assert!(matches!(
            a.rowspace_intersect(&c),
            Err(LinalgError::FieldMismatch { .. })
        ));
    }

    #[test]
    fn echelon_matches_batch_rref() {
        let m = Matrix::from_i64(
            Field::Rational,
            &[&[0, 1, 1, 2], &[1, 0, 1, 0], &[1, 1, 2, 2], &[2, -1, 1, -2]],
        );
        let batch = Subspace::span(&m);
        let inc = Subspace::span_of(Field::Rational, 4, (0..4).map(|r| m.row(r)));
        assert_eq!(batch, inc);
        assert_eq!(batch.dim(), 2);
    }

    #[test]
    fn enumeration_covers_the_space() {
        let f = Field::Prime(3);
        assert_eq!(space_size(f, 2), Some(9));
        assert_eq!(space_size(Field::Rational, 2), None);
        let all: std::collections::HashSet<_> = (0..9).map(|i| vector_from_index(f, 2, i)).collect();
        assert_eq!(all.len(), 9);
        assert!(vector_from_index(f, 2, 0).iter().all(Scalar::is_zero));
    }

    #[test]
    fn subspace_coordinates() {
        let s = Subspace::span(&Matrix::from_i64(Field::Rational, &[&[1, 0, 2], &[0, 1, 3]]));
        let v: Vec<Scalar> = [2, -1, 1].iter().map(|&x| Field::Rational.from_i64(x)).collect();
        let c = s.coordinates(&v).unwrap();
        assert_eq!(s.combine(&c), v);
        let w: Vec<Scalar> = [0, 0, 1].iter().map(|&x| Field::Rational.from_i64(x)).collect();
        assert!(s.coordinates(&w).is_none());
    }

    #[test]
    fn solve_sets_free_variables_to_zero() {
        let f = Field::Rational;
        let m = Matrix::from_i64(f, &[&[1, 1, 0], &[0, 0, 1]]);
        let rhs = vec![f.from_i64(2), f.from_i64(3)];
        let x = m.solve(&rhs).unwrap();
        assert_eq!(x, vec![f.from_i64(2), f.zero(), f.from_i64(3)]);
        let inconsistent = Matrix::from_i64(f, &[&[1, 1], &[1, 1]]);
        assert!(inconsistent.solve(&[f.one(), f.zero()]).is_none());
    }
}
