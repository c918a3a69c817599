//! Dense matrices over the integers and over `F_q`.
//!
//! Vectors are row vectors and matrices act on the right, so the row space
//! of a matrix is the subspace it spans.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldSpec;

/// Dense integer matrix with overflow-checked arithmetic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// The all-ones matrix `J_n`.
    pub fn ones(n: usize) -> Self {
        IntMatrix { rows: n, cols: n, data: vec![1; n * n] }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!("row {bad} has the wrong length")));
        }
        Ok(IntMatrix { rows: rows.len(), cols, data: rows.concat() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn data(&self) -> &[i64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let out_row = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in out_row.iter_mut().zip(brow) {
                    let term = a.checked_mul(b).ok_or(Error::Overflow("matrix product"))?;
                    *o = o.checked_add(term).ok_or(Error::Overflow("matrix product"))?;
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &IntMatrix, what: &'static str, f: impl Fn(i64, i64) -> Option<i64>) -> Result<IntMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{what} of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b).ok_or(Error::Overflow(what)))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(other, "matrix sum", i64::checked_add)
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(other, "matrix difference", i64::checked_sub)
    }

    pub fn scale(&self, k: i64) -> Result<IntMatrix> {
        let data = self
            .data
            .iter()
            .map(|&a| a.checked_mul(k).ok_or(Error::Overflow("scalar multiple")))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &IntMatrix) -> Result<IntMatrix> {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let v = a.checked_mul(other.get(k, l)).ok_or(Error::Overflow("Kronecker product"))?;
                        out.data[(i * other.rows + k) * cols + j * other.cols + l] = v;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Block matrix from a grid of equally sized blocks.
    pub fn from_blocks(blocks: &[Vec<&IntMatrix>]) -> Result<IntMatrix> {
        let br = blocks.len();
        let bc = blocks.first().map_or(0, |r| r.len());
        if br == 0 || bc == 0 {
            return Ok(Self::zeros(0, 0));
        }
        let (h, w) = (blocks[0][0].rows, blocks[0][0].cols);
        if blocks.iter().any(|r| r.len() != bc || r.iter().any(|b| b.rows != h || b.cols != w)) {
            return Err(Error::DimensionMismatch("ragged block matrix".into()));
        }
        let mut out = Self::zeros(br * h, bc * w);
        for (bi, brow) in blocks.iter().enumerate() {
            for (bj, b) in brow.iter().enumerate() {
                for r in 0..h {
                    let dst = (bi * h + r) * out.cols + bj * w;
                    out.data[dst..dst + w].copy_from_slice(b.row(r));
                }
            }
        }
        Ok(out)
    }

    /// The `h x w` block at block coordinates `(bi, bj)`.
    pub fn block(&self, bi: usize, bj: usize, h: usize, w: usize) -> IntMatrix {
        let mut out = Self::zeros(h, w);
        for r in 0..h {
            let src = (bi * h + r) * self.cols + bj * w;
            out.data[r * w..(r + 1) * w].copy_from_slice(&self.data[src..src + w]);
        }
        out
    }

    pub fn row_sums(&self) -> Vec<i64> {
        (0..self.rows).map(|r| self.row(r).iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<i64> {
        let mut s = vec![0i64; self.cols];
        for r in 0..self.rows {
            for (acc, &v) in s.iter_mut().zip(self.row(r)) {
                *acc += v;
            }
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Entrywise image in `F_q` (integers map through `F_p`).
    pub fn reduce_mod(&self, field: &FieldSpec) -> MatrixFq {
        MatrixFq {
            field: field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| field.from_int(v)).collect(),
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Dense matrix over a finite field.
#[derive(Clone)]
pub struct MatrixFq {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: MatrixFq,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl MatrixFq {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        MatrixFq { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_vec(field: &FieldSpec, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&v| !field.contains(v)) {
            return Err(Error::InvalidElement(bad as u64));
        }
        Ok(MatrixFq { field: field.clone(), rows, cols, data })
    }

    /// Rows of equal length `cols` (needed to express a matrix with no rows).
    pub fn from_rows(field: &FieldSpec, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!("row {bad} does not have length {cols}")));
        }
        Self::from_vec(field, rows.len(), cols, rows.concat())
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        debug_assert!(self.field.contains(v));
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    fn check_field(&self, other: &MatrixFq) -> Result<()> {
        if self.field.same(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &MatrixFq) -> Result<MatrixFq> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.field, self.rows, other.cols);
        for r in 0..self.rows {
            let out_row = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                self.field.axpy(out_row, &other.data[k * other.cols..(k + 1) * other.cols], a);
            }
        }
        Ok(out)
    }

    /// `v * self` for a row vector `v`.
    pub fn left_mul_vec(&self, v: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; self.cols];
        for (k, &a) in v.iter().enumerate().take(self.rows) {
            self.field.axpy(&mut out, self.row(k), a);
        }
        out
    }

    pub fn add(&self, other: &MatrixFq) -> Result<MatrixFq> {
        self.check_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| self.field.add(a, b)).collect();
        Ok(MatrixFq { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: u32) -> MatrixFq {
        let mut out = self.clone();
        self.field.scale(&mut out.data, c);
        out
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &MatrixFq) -> Result<MatrixFq> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(MatrixFq { field: self.field.clone(), rows: self.rows, cols, data })
    }

    /// `self` on top of `other`.
    pub fn vstack(&self, other: &MatrixFq) -> Result<MatrixFq> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(MatrixFq { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Gauss-Jordan elimination in place; returns pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..cols {
            if pr == self.rows {
                break;
            }
            let Some(sel) = (pr..self.rows).find(|&r| self.data[r * cols + c] != 0) else {
                continue;
            };
            if sel != pr {
                for k in 0..cols {
                    self.data.swap(sel * cols + k, pr * cols + k);
                }
            }
            let inv = f.inv(self.data[pr * cols + c]).expect("pivot is nonzero");
            f.scale(&mut self.data[pr * cols..(pr + 1) * cols], inv);
            let pivot_row = self.data[pr * cols..(pr + 1) * cols].to_vec();
            for r in 0..self.rows {
                if r == pr {
                    continue;
                }
                let v = self.data[r * cols + c];
                if v != 0 {
                    f.axpy(&mut self.data[r * cols..(r + 1) * cols], &pivot_row, f.neg(v));
                }
            }
            pivots.push(c);
            pr += 1;
        }
        pivots
    }

    /// The unique reduced row echelon form (zero rows kept at the bottom).
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// First `k` rows.
    pub fn top_rows(&self, k: usize) -> MatrixFq {
        MatrixFq {
            field: self.field.clone(),
            rows: k,
            cols: self.cols,
            data: self.data[..k * self.cols].to_vec(),
        }
    }

    pub fn det(&self) -> Result<u32> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let f = &self.field;
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det = 1u32;
        for c in 0..n {
            let Some(sel) = (c..n).find(|&r| m[r * n + c] != 0) else {
                return Ok(0);
            };
            if sel != c {
                for k in 0..n {
                    m.swap(sel * n + k, c * n + k);
                }
                det = f.neg(det);
            }
            let pivot = m[c * n + c];
            det = f.mul(det, pivot);
            let inv = f.inv(pivot).expect("nonzero pivot");
            let pivot_row = m[c * n..(c + 1) * n].to_vec();
            for r in c + 1..n {
                let v = m[r * n + c];
                if v != 0 {
                    f.axpy(&mut m[r * n..(r + 1) * n], &pivot_row, f.neg(f.mul(v, inv)));
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Option<MatrixFq>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = self.hstack(&MatrixFq::identity(&self.field, n))?.rref();
        if aug.pivots.len() < n || aug.pivots[n - 1] >= n {
            return Ok(None);
        }
        let mut inv = MatrixFq::zeros(&self.field, n, n);
        for r in 0..n {
            inv.data[r * n..(r + 1) * n].copy_from_slice(&aug.matrix.row(r)[n..]);
        }
        Ok(Some(inv))
    }

    /// Basis (rows, in RREF) of the right null space `{x : self * x^T = 0}`.
    pub fn kernel(&self) -> MatrixFq {
        let f = &self.field;
        let Rref { matrix: r, pivots } = self.rref();
        let n = self.cols;
        let mut is_pivot = vec![None; n];
        for (i, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(i);
        }
        let mut basis = Vec::new();
        for free in (0..n).filter(|&c| is_pivot[c].is_none()) {
            let mut v = vec![0u32; n];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        let k = MatrixFq::from_rows(f, n, &basis).expect("well-formed kernel rows");
        let rr = k.rref();
        rr.matrix.top_rows(rr.rank())
    }

    /// One solution `x` of `self * x^T = b^T`, or `None` when inconsistent.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!("right-hand side of length {} for {} rows", b.len(), self.rows)));
        }
        let col = MatrixFq::from_vec(&self.field, self.rows, 1, b.to_vec())?;
        let Rref { matrix: r, pivots } = self.hstack(&col)?.rref();
        let n = self.cols;
        if pivots.last() == Some(&n) {
            return Ok(None);
        }
        let mut x = vec![0u32; n];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, n);
        }
        Ok(Some(x))
    }
}

impl PartialEq for MatrixFq {
    fn eq(&self, other: &Self) -> bool {
        self.field.same(&other.field) && self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}
impl Eq for MatrixFq {}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixFq {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fq(p: u64, r: u32) -> FieldSpec {
        FieldSpec::new(p, r).unwrap()
    }

    fn m(f: &FieldSpec, rows: &[&[u32]]) -> MatrixFq {
        let cols = rows.first().map_or(0, |r| r.len());
        MatrixFq::from_rows(f, cols, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    /// Independent row reduction by exhaustive enumeration of the row space:
    /// the RREF basis is determined by the set of vectors it spans.
    fn brute_row_space(f: &FieldSpec, mat: &MatrixFq) -> std::collections::BTreeSet<Vec<u32>> {
        let q = f.order();
        let mut out = std::collections::BTreeSet::new();
        let k = mat.rows();
        let total = (q as u64).pow(k as u32);
        for idx in 0..total {
            let mut coeffs = Vec::with_capacity(k);
            let mut t = idx;
            for _ in 0..k {
                coeffs.push((t % q as u64) as u32);
                t /= q as u64;
            }
            out.insert(mat.left_mul_vec(&coeffs));
        }
        out
    }

    #[test]
    fn rref_examples() {
        let f2 = fq(2, 1);
        let r = m(&f2, &[&[1, 1], &[1, 1]]).rref();
        assert_eq!(r.matrix, m(&f2, &[&[1, 1], &[0, 0]]));
        assert_eq!(r.rank(), 1);

        let f3 = fq(3, 1);
        let id = MatrixFq::identity(&f3, 3);
        assert_eq!(id.rref().matrix, id);
        assert_eq!(id.rank(), 3);

        // det [[1,2],[2,1]] = 1 - 4 = -3 = 0 over F_3, so the rank is 1.
        let a = m(&f3, &[&[1, 2], &[2, 1]]);
        let oracle = brute_row_space(&f3, &a);
        assert_eq!(oracle.len(), 3);
        let r = a.rref();
        assert_eq!(r.matrix, m(&f3, &[&[1, 2], &[0, 0]]));
        assert_eq!(brute_row_space(&f3, &r.matrix.top_rows(r.rank())), oracle);
        assert_eq!(a.det().unwrap(), 0);
    }

    #[test]
    fn det_kernel_solve() {
        let f3 = fq(3, 1);
        assert_eq!(MatrixFq::identity(&f3, 2).det().unwrap(), 1);
        let f2 = fq(2, 1);
        assert_eq!(m(&f2, &[&[1, 1]]).kernel(), m(&f2, &[&[1, 1]]));
        let a = m(&f3, &[&[1, 1], &[0, 1]]);
        let x = a.solve(&[2, 1]).unwrap().unwrap();
        assert_eq!(x, vec![1, 1]);
        let sing = m(&f3, &[&[1, 1], &[2, 2]]);
        assert_eq!(sing.solve(&[1, 0]).unwrap(), None);
        assert!(sing.inverse().unwrap().is_none());
        let inv = a.inverse().unwrap().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), MatrixFq::identity(&f3, 2));
        assert!(m(&f3, &[&[1, 2]]).det().is_err());
    }

    #[test]
    fn kron_of_ones_and_identity() {
        let k = IntMatrix::ones(2).kron(&IntMatrix::identity(2)).unwrap();
        let expect = IntMatrix::from_rows(&[
            vec![1, 0, 1, 0],
            vec![0, 1, 0, 1],
            vec![1, 0, 1, 0],
            vec![0, 1, 0, 1],
        ])
        .unwrap();
        assert_eq!(k, expect);
    }

    #[test]
    fn overflow_is_detected() {
        let big = IntMatrix::from_rows(&[vec![i64::MAX / 2 + 1]]).unwrap();
        assert_eq!(big.mul(&IntMatrix::from_rows(&[vec![2]]).unwrap()).unwrap_err(), Error::Overflow("matrix product"));
        assert!(big.scale(4).is_err());
    }

    #[test]
    fn reduce_mod_maps_negatives() {
        let f3 = fq(3, 1);
        let a = IntMatrix::from_rows(&[vec![-1, 4], vec![3, -5]]).unwrap();
        assert_eq!(a.reduce_mod(&f3), m(&f3, &[&[2, 1], &[0, 1]]));
        let f4 = fq(2, 2);
        assert_eq!(a.reduce_mod(&f4), m(&f4, &[&[1, 0], &[1, 1]]));
    }

    #[test]
    fn dimension_errors() {
        let f2 = fq(2, 1);
        let a = MatrixFq::zeros(&f2, 2, 3);
        assert!(a.mul(&a).is_err());
        assert!(MatrixFq::from_vec(&f2, 2, 2, vec![0, 1, 2, 0]).is_err());
        let f3 = fq(3, 1);
        assert_eq!(a.mul(&MatrixFq::zeros(&f3, 3, 1)).unwrap_err(), Error::FieldMismatch);
    }

    #[test]
    fn blocks_round_trip() {
        let a = IntMatrix::identity(2);
        let z = IntMatrix::zeros(2, 2);
        let j = IntMatrix::ones(2);
        let b = IntMatrix::from_blocks(&[vec![&a, &z], vec![&j, &a]]).unwrap();
        assert_eq!(b.block(1, 0, 2, 2), j);
        assert_eq!(b.block(0, 1, 2, 2), z);
    }
}
