use std::fmt;

use crate::error::{Error, Result};
use crate::exactlin::{FieldSpec, Scalar};

/// Dense matrix over a [`FieldSpec`], stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    data: Vec<Scalar>,
}

/// Output of [`Mat::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub rank: usize,
    pub reduced: Mat,
    /// Invertible matrix with `transform * m == reduced`.
    pub transform: Mat,
    /// Pivot column of each of the first `rank` rows.
    pub pivots: Vec<usize>,
}

/// A surjection onto the quotient of `F^n` by a subspace, with a section.
///
/// `map * basis == 0` and `map * section == I`. The section picks the standard
/// basis vectors outside the pivot columns of the subspace, so quotient
/// coordinates are deterministic.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub map: Mat,
    pub section: Mat,
}

impl Mat {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(field: FieldSpec, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat {
            rows,
            cols,
            field,
            data,
        }
    }

    /// Builds a matrix from integer rows, reducing into the field.
    pub fn from_rows(field: FieldSpec, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Mat::from_fn(field, rows.len(), cols, |i, j| field.from_i64(rows[i][j])))
    }

    /// Builds an `rows x cols` matrix with the given integer entries in row-major order.
    pub fn from_ints(field: FieldSpec, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count");
        Mat::from_fn(field, rows, cols, |i, j| field.from_i64(entries[i * cols + j]))
    }

    pub fn from_scalars(field: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| !field.contains(s)) {
            return Err(Error::InvalidScalar(format!("{bad} is not an element of {field}")));
        }
        Ok(Mat {
            rows,
            cols,
            field,
            data,
        })
    }

    /// Column vector.
    pub fn column(field: FieldSpec, entries: Vec<Scalar>) -> Self {
        let n = entries.len();
        Mat {
            rows: n,
            cols: 1,
            field,
            data: entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert!(self.field.contains(&v));
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| self.field.is_zero(s))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Mat::identity(self.field, self.rows)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self.data.iter().map(|x| self.field.mul(c, x)).collect(),
        }
    }

    pub fn neg(&self) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self.data.iter().map(|x| self.field.neg(x)).collect(),
        }
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape");
        Mat {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| self.field.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!(self.shape(), other.shape(), "matrix difference shape");
        Mat {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| self.field.sub(a, b))
                .collect(),
        }
    }

    /// Matrix product; panics on incompatible shapes.
    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let f = self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn try_mul(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul(other))
    }

    pub fn pow(&self, mut e: u32) -> Mat {
        assert!(self.is_square());
        let mut acc = Mat::identity(self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "hstack rows");
        Mat::from_fn(self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "vstack cols");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat {
            rows: self.rows + other.rows,
            cols: self.cols,
            field: self.field,
            data,
        }
    }

    pub fn hconcat(field: FieldSpec, rows: usize, blocks: &[Mat]) -> Mat {
        blocks.iter().fold(Mat::zeros(field, rows, 0), |acc, b| acc.hstack(b))
    }

    pub fn vconcat(field: FieldSpec, cols: usize, blocks: &[Mat]) -> Mat {
        blocks.iter().fold(Mat::zeros(field, 0, cols), |acc, b| acc.vstack(b))
    }

    pub fn block_diag(field: FieldSpec, blocks: &[Mat]) -> Mat {
        let rows: usize = blocks.iter().map(Mat::rows).sum();
        let cols: usize = blocks.iter().map(Mat::cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.paste(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Kronecker product. With row-major vectorization,
    /// `vec(a * x * b) == a.kron(&b.transpose()) * vec(x)`.
    pub fn kron(&self, other: &Mat) -> Mat {
        let f = self.field;
        Mat::from_fn(f, self.rows * other.rows, self.cols * other.cols, |i, j| {
            f.mul(
                self.get(i / other.rows, j / other.cols),
                other.get(i % other.rows, j % other.cols),
            )
        })
    }

    /// Overwrites the block starting at `(r0, c0)` with `block`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Mat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Mat {
        let (r0, c0) = (rows.start, cols.start);
        Mat::from_fn(self.field, rows.len(), cols.len(), |i, j| {
            self.get(r0 + i, c0 + j).clone()
        })
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.field, idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    /// Gauss-Jordan elimination. Pivots are the first nonzero entry in column order.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let (n, m) = (self.rows, self.cols);
        let mut a: Vec<Vec<Scalar>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut t: Vec<Vec<Scalar>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m {
            if r == n {
                break;
            }
            let Some(pr) = (r..n).find(|&i| !f.is_zero(&a[i][c])) else {
                continue;
            };
            a.swap(r, pr);
            t.swap(r, pr);
            let inv = f.inv(&a[r][c]).expect("pivot is nonzero");
            if !f.is_one(&inv) {
                for x in a[r].iter_mut().chain(t[r].iter_mut()) {
                    *x = f.mul(x, &inv);
                }
            }
            for i in 0..n {
                if i == r || f.is_zero(&a[i][c]) {
                    continue;
                }
                let factor = a[i][c].clone();
                let (pivot_a, pivot_t) = (a[r].clone(), t[r].clone());
                for (x, y) in a[i].iter_mut().zip(&pivot_a) {
                    if !f.is_zero(y) {
                        *x = f.sub(x, &f.mul(&factor, y));
                    }
                }
                for (x, y) in t[i].iter_mut().zip(&pivot_t) {
                    if !f.is_zero(y) {
                        *x = f.sub(x, &f.mul(&factor, y));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            rank: r,
            reduced: Mat {
                rows: n,
                cols: m,
                field: f,
                data: a.into_iter().flatten().collect(),
            },
            transform: Mat {
                rows: n,
                cols: n,
                field: f,
                data: t.into_iter().flatten().collect(),
            },
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right null space, as columns. One column per free variable,
    /// in column order.
    pub fn kernel_basis(&self) -> Mat {
        let f = self.field;
        let rr = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !rr.pivots.contains(c)).collect();
        let mut k = Mat::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, f.one());
            for (r, &pc) in rr.pivots.iter().enumerate() {
                k.set(pc, j, f.neg(rr.reduced.get(r, fc)));
            }
        }
        k
    }

    /// Columns of `self` at the pivot positions: a basis of the column space.
    pub fn column_space_basis(&self) -> Mat {
        let rr = self.rref();
        self.select_cols(&rr.pivots)
    }

    /// A solution of `self * x == b`, or `None` when inconsistent.
    pub fn solve(&self, b: &Mat) -> Result<Option<Mat>> {
        if b.rows != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has {} rows, matrix has {}",
                b.rows, self.rows
            )));
        }
        let f = self.field;
        let rr = self.hstack(b).rref();
        if rr.pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Mat::zeros(f, self.cols, b.cols);
        for (r, &pc) in rr.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, rr.reduced.get(r, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let rr = self.rref();
        (rr.rank == self.rows).then_some(rr.transform)
    }

    /// Reduced row-echelon basis (as rows) of the column span of `self`.
    /// Two matrices span the same subspace iff their canonical spans agree.
    pub fn canonical_span(&self) -> Mat {
        let rr = self.transpose().rref();
        rr.reduced.submatrix(0..rr.rank, 0..self.rows)
    }

    /// Whether the column span of `self` contains that of `other`.
    pub fn span_contains(&self, other: &Mat) -> bool {
        assert_eq!(self.rows, other.rows);
        self.hstack(other).rank() == self.rank()
    }

    /// Quotient of `F^rows` by the column span of `self`.
    pub fn quotient(&self) -> Quotient {
        let f = self.field;
        let n = self.rows;
        let basis = self.column_space_basis();
        let k = basis.cols;
        let pivots = basis.transpose().rref().pivots;
        let complement: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let section = Mat::from_fn(f, n, complement.len(), |i, j| {
            if complement[j] == i {
                f.one()
            } else {
                f.zero()
            }
        });
        let full = basis.hstack(&section);
        let inv = full.inverse().expect("basis plus complement is invertible");
        Quotient {
            map: inv.submatrix(k..n, 0..n),
            section,
        }
    }

    /// Row-major entries flattened into a column vector.
    pub fn vectorize(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn unvectorize(field: FieldSpec, rows: usize, cols: usize, v: &[Scalar]) -> Mat {
        Mat {
            rows,
            cols,
            field,
            data: v.to_vec(),
        }
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> FieldSpec {
        FieldSpec::Prime(p)
    }

    #[test]
    fn kron_vectorization_identity() {
        let a = Mat::from_ints(f(7), 2, 3, &[1, 2, 3, 4, 5, 6]);
        let x = Mat::from_ints(f(7), 3, 2, &[1, 0, 2, 1, 0, 3]);
        let b = Mat::from_ints(f(7), 2, 2, &[2, 1, 1, 5]);
        let lhs = a.mul(&x).mul(&b).vectorize();
        let rhs = a.kron(&b.transpose()).mul(&Mat::column(f(7), x.vectorize())).col(0);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = Mat::identity(f(5), 2);
        let rr = id.rref();
        assert_eq!(rr.rank, 2);
        assert_eq!(rr.reduced, id);
        let z = Mat::zeros(f(5), 3, 2);
        assert_eq!(z.rref().rank, 0);
    }

    #[test]
    fn rref_transform_reproduces_reduced() {
        let m = Mat::from_rows(f(7), &[vec![2, 4], vec![1, 2]]).unwrap();
        let rr = m.rref();
        assert_eq!(rr.rank, 1);
        assert_eq!(rr.transform.mul(&m), rr.reduced);
        assert!(rr.transform.is_invertible());
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        assert_eq!(Mat::identity(f(3), 3).kernel_basis().cols(), 0);
        let k = Mat::zeros(f(3), 2, 3).kernel_basis();
        assert_eq!(k.shape(), (3, 3));
        assert_eq!(k.rank(), 3);
    }

    #[test]
    fn kernel_of_all_ones_row_over_f2() {
        let m = Mat::from_rows(f(2), &[vec![1, 1]]).unwrap();
        let k = m.kernel_basis();
        assert_eq!(k, Mat::from_rows(f(2), &[vec![1], vec![1]]).unwrap());
    }

    #[test]
    fn solve_cases() {
        let id = Mat::identity(f(3), 2);
        let b = Mat::from_rows(f(3), &[vec![1], vec![2]]).unwrap();
        assert_eq!(id.solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(Mat::zeros(f(3), 2, 2).solve(&b).unwrap(), None);
        let m = Mat::from_rows(f(3), &[vec![1, 2], vec![0, 0]]).unwrap();
        let rhs = Mat::from_rows(f(3), &[vec![1], vec![0]]).unwrap();
        let x = m.solve(&rhs).unwrap().unwrap();
        assert_eq!(m.mul(&x), rhs);
        assert!(m.solve(&Mat::zeros(f(3), 3, 1)).is_err());
    }

    #[test]
    fn quotient_kills_subspace_and_splits() {
        let sub = Mat::from_rows(f(5), &[vec![1], vec![2], vec![0]]).unwrap();
        let q = sub.quotient();
        assert!(q.map.mul(&sub).is_zero());
        assert!(q.map.mul(&q.section).is_identity());
        assert_eq!(q.map.shape(), (2, 3));
    }

    #[test]
    fn rationals_exact() {
        let q = FieldSpec::Rationals;
        let m = Mat::from_rows(q, &[vec![2, 1], vec![1, 3]]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(inv.get(0, 0).to_string(), "3/5");
    }
}
