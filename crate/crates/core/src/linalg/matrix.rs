use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::linalg::{Field, Subspace};

/// Dense row-major matrix over a prime field.
///
/// `0 x n` and `n x 0` shapes are legal and stand for the maps to and from
/// the zero space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Output of row reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<u64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        let data = data.into_iter().map(|x| field.reduce(x)).collect();
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from rows of integers; entries are reduced mod p.
    /// An empty list yields a `0 x cols` matrix.
    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<u64>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} entries, expected {}",
                    i,
                    r.len(),
                    cols
                )));
            }
            data.extend(r.iter().map(|&x| field.reduce(x)));
        }
        Ok(Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Single column matrix.
    pub fn column_vector(field: Field, v: &[u64]) -> Self {
        Matrix {
            field,
            rows: v.len(),
            cols: 1,
            data: v.iter().map(|&x| field.reduce(x)).collect(),
        }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<u64>]) -> Self {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, &x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = field.reduce(x);
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: u64) {
        self.data[i * self.cols + j] = self.field.reduce(value);
    }

    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn scale(&self, c: u64) -> Matrix {
        let f = self.field;
        let c = f.reduce(c);
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f.mul(x, c)).collect(),
        }
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows || self.field != rhs.field {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let f = self.field;
        let p = f.modulus();
        let mut out = Matrix::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let rrow = rhs.row(k);
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, &b) in orow.iter_mut().zip(rrow) {
                    *o = (*o + a * b) % p;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn pow(&self, e: usize) -> Matrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows, "hstack row mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * out.cols + j] = self.get(i, j);
            }
            for j in 0..rhs.cols {
                out.data[i * out.cols + self.cols + j] = rhs.get(i, j);
            }
        }
        out
    }

    /// Vertical concatenation.
    pub fn vstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Matrix {
            field: self.field,
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn block_diag(field: Field, blocks: &[Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.paste(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = block.get(i, j);
            }
        }
    }

    pub fn submatrix(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> Matrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        let mut out = Matrix::zeros(self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.data[i * cols + j] = self.get(r0 + i, c0 + j);
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix {
            field: self.field,
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    /// Unique reduced row echelon form, pivot columns and rank.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, piv);
            let inv = f.inv(m.get(r, c));
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.data[r * m.cols + j] = v;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.data[i * m.cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            rank: pivots.len(),
            pivots,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Canonical basis of `{x : self * x = 0}`.
    pub fn kernel_basis(&self) -> Subspace {
        let f = self.field;
        let Rref { matrix, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut vectors = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(matrix.get(r, free));
            }
            vectors.push(v);
        }
        Subspace::from_vectors(f, self.cols, &vectors)
    }

    /// Column space as a subspace of `F_p^rows`.
    pub fn image_basis(&self) -> Subspace {
        Subspace::from_rows(&self.transpose())
    }

    /// Row space as a subspace of `F_p^cols`.
    pub fn row_space(&self) -> Subspace {
        Subspace::from_rows(self)
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[u64]) -> Result<Option<Vec<u64>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {}, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let aug = self.hstack(&Matrix::column_vector(self.field, b));
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = matrix.get(r, self.cols);
        }
        Ok(Some(x))
    }

    /// Some `X` with `self * X = rhs`, column by column.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Result<Option<Matrix>> {
        if rhs.rows != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has {} rows, matrix has {}",
                rhs.rows, self.rows
            )));
        }
        let mut cols = Vec::with_capacity(rhs.cols);
        for j in 0..rhs.cols {
            match self.solve(&rhs.column(j))? {
                Some(x) => cols.push(x),
                None => return Ok(None),
            }
        }
        Ok(Some(Matrix::from_columns(self.field, self.cols, &cols)))
    }

    /// Some `X` with `X * self = rhs`.
    pub fn solve_left(&self, rhs: &Matrix) -> Result<Option<Matrix>> {
        Ok(self
            .transpose()
            .solve_matrix(&rhs.transpose())?
            .map(|x| x.transpose()))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = self.hstack(&Matrix::identity(self.field, n));
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(matrix.submatrix(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn is_nilpotent(&self) -> bool {
        self.is_square() && self.pow(self.rows).is_zero()
    }

    pub fn trace(&self) -> u64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        let f = self.field;
        (0..self.rows).fold(0, |acc, i| f.add(acc, self.get(i, i)))
    }

    /// Row-major flattening; the coordinates used for Hom-space computations.
    pub fn flatten(&self) -> Vec<u64> {
        self.data.clone()
    }

    pub fn from_flat(field: Field, rows: usize, cols: usize, v: &[u64]) -> Matrix {
        assert_eq!(v.len(), rows * cols, "flat length mismatch");
        Matrix {
            field,
            rows,
            cols,
            data: v.to_vec(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}x{} over {}]", self.rows, self.cols, self.field)?;
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &'a Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix shapes must agree")
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;

    fn add(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix shapes must agree");
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix shapes must agree");
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        self.scale(self.field.modulus() - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::all_vectors;

    fn m(p: u64, rows: &[&[u64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<u64>> = rows.iter().map(|r| r.to_vec()).collect();
        Matrix::from_rows(Field::prime(p), cols, &rows).unwrap()
    }

    #[test]
    fn rref_of_identity_is_identity() {
        let id = Matrix::identity(Field::prime(2), 2);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn rref_of_zero_has_no_pivots() {
        let z = Matrix::zeros(Field::prime(3), 3, 2);
        let r = z.rref();
        assert_eq!(r.matrix, z);
        assert!(r.pivots.is_empty());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rref_of_equal_rows() {
        let r = m(2, &[&[1, 1], &[1, 1]]).rref();
        assert_eq!(r.matrix, m(2, &[&[1, 1], &[0, 0]]));
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn kernel_examples() {
        let f2 = Field::prime(2);
        assert_eq!(Matrix::identity(f2, 2).kernel_basis().dim(), 0);
        let k = Matrix::zeros(f2, 2, 3).kernel_basis();
        assert_eq!(k.dim(), 3);
        let k = m(2, &[&[1, 1]]).kernel_basis();
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&[1, 1]));
    }

    #[test]
    fn solve_examples() {
        let f5 = Field::prime(5);
        let id = Matrix::identity(f5, 3);
        assert_eq!(id.solve(&[4, 0, 2]).unwrap(), Some(vec![4, 0, 2]));
        assert_eq!(Matrix::zeros(f5, 2, 2).solve(&[1, 0]).unwrap(), None);
        assert!(id.solve(&[1]).is_err());
    }

    #[test]
    fn solve_matches_enumeration_over_f2() {
        // Brute force: every x in F_2^2 with [[1,1],[0,0]] x = (1,0).
        let a = m(2, &[&[1, 1], &[0, 0]]);
        let f2 = Field::prime(2);
        let oracle: Vec<Vec<u64>> = all_vectors(f2, 2)
            .filter(|x| a.mul_vec(x) == vec![1, 0])
            .collect();
        assert_eq!(oracle, vec![vec![0, 1], vec![1, 0]]);
        let x = a.solve(&[1, 0]).unwrap().unwrap();
        assert!(oracle.contains(&x));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(3, &[&[1, 2], &[0, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(Field::prime(3), 2));
        assert!(m(3, &[&[1, 2], &[2, 1]]).inverse().is_none());
    }

    #[test]
    fn empty_shapes_compose() {
        let f = Field::prime(2);
        let a = Matrix::zeros(f, 0, 3);
        let b = Matrix::zeros(f, 3, 0);
        assert_eq!((&b * &a).shape(), (3, 3));
        assert_eq!((&a * &b).shape(), (0, 0));
        assert_eq!(a.kernel_basis().dim(), 3);
        assert_eq!(b.image_basis().dim(), 0);
        assert_eq!(
            Matrix::identity(f, 0).inverse(),
            Some(Matrix::identity(f, 0))
        );
    }

    #[test]
    fn new_rejects_bad_length() {
        assert!(Matrix::new(Field::prime(2), 2, 2, vec![1, 0, 1]).is_err());
        assert!(Matrix::from_rows(Field::prime(2), 2, &[vec![1]]).is_err());
    }
}
