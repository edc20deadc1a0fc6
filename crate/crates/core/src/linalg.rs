//! Dense exact linear algebra: matrices, reduced row echelon form, kernels and
//! subspaces given by spanning vectors.
//!
//! Pivoting is deterministic (first nonzero entry in column order), so every
//! result is reproducible bit for bit.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use crate::error::Error;
use crate::field::{Field, Scalar};

pub type Vector = Vec<Scalar>;

pub fn zero_vector(field: Field, len: usize) -> Vector {
    vec![field.zero(); len]
}

pub fn unit_vector(field: Field, len: usize, at: usize) -> Vector {
    let mut v = zero_vector(field, len);
    v[at] = field.one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `acc += factor * v`.
pub fn axpy(acc: &mut [Scalar], factor: &Scalar, v: &[Scalar]) {
    if factor.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            a.add_mul_assign(factor, x);
        }
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat[{}x{} over {}](", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str("; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
        }
        f.write_str(")")
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Mat { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vector>) -> Result<Self, Error> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { left: row.len(), right: cols });
            }
            data.extend(row);
        }
        Ok(Mat { field, rows: n, cols, data })
    }

    /// Builds a matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: Field, rows: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (r, x) in col.iter().enumerate() {
                m[(r, c)] = x.clone();
            }
        }
        m
    }

    pub fn from_i64(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Mat { field, rows, cols, data: entries.iter().map(|&x| field.from_i64(x)).collect() }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat, Error> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { left: self.cols, right: other.rows });
        }
        let mut out = Mat::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out.data[r * other.cols + c].add_mul_assign(a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "vector length");
        let mut out = zero_vector(self.field, self.rows);
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = &self[(r, c)];
                if !a.is_zero() {
                    o.add_mul_assign(a, x);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        Mat { field: self.field, rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    /// Block diagonal sum.
    pub fn block_diag(&self, other: &Mat) -> Mat {
        let mut m = Mat::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        m
    }

    pub fn set_block(&mut self, row: usize, col: usize, block: &Mat) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self[(row + r, col + c)] = block[(r, c)].clone();
            }
        }
    }

    pub fn block(&self, row: usize, col: usize, rows: usize, cols: usize) -> Mat {
        let mut m = Mat::zeros(self.field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = self[(row + r, col + c)].clone();
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    /// Flattened entries, row-major.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }
}

/// Reduced row echelon form by Gauss-Jordan elimination, with the pivot
/// columns in increasing order. The row space is preserved.
pub fn rref(m: &Mat) -> (Mat, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut lead = 0;
    for col in 0..a.cols {
        if lead == a.rows {
            break;
        }
        let Some(p) = (lead..a.rows).find(|&r| !a[(r, col)].is_zero()) else {
            continue;
        };
        if p != lead {
            for c in 0..a.cols {
                a.data.swap(p * a.cols + c, lead * a.cols + c);
            }
        }
        let inv = a[(lead, col)].inverse().expect("pivot is nonzero");
        for c in col..a.cols {
            let v = &a[(lead, c)] * &inv;
            a[(lead, c)] = v;
        }
        let pivot_row: Vector = a.row(lead).to_vec();
        for r in 0..a.rows {
            if r == lead || a[(r, col)].is_zero() {
                continue;
            }
            let factor = -&a[(r, col)];
            let start = r * a.cols;
            axpy(&mut a.data[start..start + a.cols], &factor, &pivot_row);
        }
        pivots.push(col);
        lead += 1;
    }
    (a, pivots)
}

/// Basis of the right null space `{v : m v = 0}`, one vector per free column.
pub fn kernel_basis(m: &Mat) -> Vec<Vector> {
    let (r, pivots) = rref(m);
    let field = m.field;
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = unit_vector(field, m.cols, free);
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -&r[(row, free)];
            }
            v
        })
        .collect()
}

/// A subspace of `K^n`, stored as the nonzero rows of its reduced row echelon
/// basis. Two subspaces are equal iff their stored bases are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}", self.dim(), self.ambient)?;
        for r in &self.rows {
            f.write_str("; ")?;
            for (i, x) in r.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
        }
        f.write_str(")")
    }
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        let mut s = Self::zero(field, ambient);
        for i in 0..ambient {
            s.rows.push(unit_vector(field, ambient, i));
            s.pivots.push(i);
        }
        s
    }

    pub fn span<I>(field: Field, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator,
        I::Item: AsRef<[Scalar]>,
    {
        let mut s = Self::zero(field, ambient);
        for v in vectors {
            s.insert(v.as_ref());
        }
        s
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    /// Reduced echelon basis vectors.
    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns that are not pivots; unit vectors at these positions span a
    /// complement, and reduced vectors are supported on them.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Remainder of `v` after elimination against the basis; zero iff `v` lies
    /// in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.ambient, "vector length");
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let factor = -&out[p];
            axpy(&mut out, &factor, row);
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Adds a vector to the span, keeping the basis fully reduced. Returns
    /// whether the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut r = self.reduce(v);
        let Some(lead) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[lead].inverse().expect("nonzero lead");
        for x in r.iter_mut().skip(lead) {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in &mut self.rows {
            if !row[lead].is_zero() {
                let factor = -&row[lead];
                axpy(row, &factor, &r);
            }
        }
        let at = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(at, lead);
        self.rows.insert(at, r);
        true
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), Error> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { left: self.ambient, right: other.ambient });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.check_ambient(other)?;
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v);
        }
        Ok(s)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.field, self.ambient));
        }
        // (a, b) with a.U = b.V; the intersection is spanned by a.U.
        let k = self.dim();
        let columns: Vec<Vector> =
            self.rows.iter().cloned().chain(other.rows.iter().map(|r| r.iter().map(|x| -x).collect())).collect();
        let system = Mat::from_columns(self.field, self.ambient, &columns);
        let vectors = kernel_basis(&system).into_iter().map(|coeffs| {
            let mut v = zero_vector(self.field, self.ambient);
            for (c, row) in coeffs[..k].iter().zip(&self.rows) {
                axpy(&mut v, c, row);
            }
            v
        });
        Ok(Subspace::span(self.field, self.ambient, vectors))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.rows.iter().all(|r| other.contains(r))
    }

    /// `dim V - dim U` for `U ⊆ V`.
    pub fn quotient_dim(&self, sup: &Subspace) -> Result<usize, Error> {
        self.check_ambient(sup)?;
        if !self.is_subspace_of(sup) {
            return Err(Error::InclusionViolation);
        }
        Ok(sup.dim() - self.dim())
    }

    /// Image under a linear map given as a matrix acting on column vectors.
    pub fn image(&self, map: &Mat) -> Subspace {
        assert_eq!(map.cols(), self.ambient, "map source dimension");
        Subspace::span(self.field, map.rows(), self.rows.iter().map(|r| map.apply(r)))
    }

    /// Preimage of this subspace under `map`.
    pub fn preimage(&self, map: &Mat) -> Subspace {
        assert_eq!(map.rows(), self.ambient, "map target dimension");
        // v with map(v) reduced to zero: the reduction is linear, so take the
        // kernel of (free-coordinate projection) ∘ map.
        let free = self.free_columns();
        let mut proj = Mat::zeros(self.field, free.len(), map.cols());
        for c in 0..map.cols() {
            let col = self.reduce(&map.column(c));
            for (i, &f) in free.iter().enumerate() {
                proj[(i, c)] = col[f].clone();
            }
        }
        Subspace::span(self.field, map.cols(), kernel_basis(&proj))
    }
}
