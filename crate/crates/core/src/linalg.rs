//! Dense exact matrices, Gaussian elimination and quotient presentations.
//!
//! A linear map `V -> W` is stored as a `dim W x dim V` matrix acting on
//! column vectors. Tensor indices follow `(i ⊗ j) -> i * dim_b + j`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { field, rows, cols, data }
    }

    /// Row-major integer entries.
    pub fn from_i64(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Mat {
        assert_eq!(entries.len(), rows * cols, "entry count");
        Mat { field, rows, cols, data: entries.iter().map(|&n| field.int(n)).collect() }
    }

    pub fn from_data(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Mat {
        assert_eq!(data.len(), rows * cols, "entry count");
        Mat { field, rows, cols, data }
    }

    /// Standard basis column vector `e_i` of length `n`.
    pub fn unit(field: Field, n: usize, i: usize) -> Mat {
        let mut m = Mat::zeros(field, n, 1);
        m.data[i] = field.one();
        m
    }

    /// The `rows x cols` matrix with a single 1 at `(i, j)`.
    pub fn elementary(field: Field, rows: usize, cols: usize, i: usize, j: usize) -> Mat {
        let mut m = Mat::zeros(field, rows, cols);
        m.data[i * cols + j] = field.one();
        m
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
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "mul shape {:?} x {:?}", self.shape(), o.shape());
        let f = self.field;
        let mut out = Mat::zeros(f, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let one = a.is_one();
                for j in 0..o.cols {
                    let b = &o.data[k * o.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    let t = if one { b.clone() } else { f.mul(a, b) };
                    out.data[idx] = f.add(&out.data[idx], &t);
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!(self.shape(), o.shape(), "add shape");
        let f = self.field;
        Mat { field: f, rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| f.add(a, b)).collect() }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        assert_eq!(self.shape(), o.shape(), "sub shape {:?} vs {:?}", self.shape(), o.shape());
        let f = self.field;
        Mat { field: f, rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| f.sub(a, b)).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        let f = self.field;
        Mat { field: f, rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| f.mul(a, s)).collect() }
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn kron(&self, o: &Mat) -> Mat {
        let f = self.field;
        let (r, c) = (self.rows * o.rows, self.cols * o.cols);
        let mut out = Mat::zeros(f, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = o.get(k, l);
                        if b.is_zero() {
                            continue;
                        }
                        out.data[(i * o.rows + k) * c + j * o.cols + l] = f.mul(a, b);
                    }
                }
            }
        }
        out
    }

    /// Column `j` as a column vector.
    pub fn col(&self, j: usize) -> Mat {
        Mat::from_fn(self.field, self.rows, 1, |i, _| self.get(i, j).clone())
    }

    pub fn select_cols(&self, cols: &[usize]) -> Mat {
        Mat::from_fn(self.field, self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Mat {
        Mat::from_fn(self.field, rows.len(), self.cols, |i, j| self.get(rows[i], j).clone())
    }

    /// Horizontal concatenation; `rows` is used when `parts` is empty.
    pub fn hstack(field: Field, rows: usize, parts: &[Mat]) -> Mat {
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.rows, rows, "hstack rows");
            for i in 0..rows {
                for j in 0..p.cols {
                    out.data[i * cols + off + j] = p.get(i, j).clone();
                }
            }
            off += p.cols;
        }
        out
    }

    /// Vertical concatenation; `cols` is used when `parts` is empty.
    pub fn vstack(field: Field, cols: usize, parts: &[Mat]) -> Mat {
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for p in parts {
            assert_eq!(p.cols, cols, "vstack cols");
            data.extend(p.data.iter().cloned());
        }
        Mat { field, rows, cols, data }
    }

    /// Row-major flattening into a column vector.
    pub fn vectorize(&self) -> Mat {
        Mat { field: self.field, rows: self.rows * self.cols, cols: 1, data: self.data.clone() }
    }

    /// Inverse of [`Mat::vectorize`].
    pub fn reshape(&self, rows: usize, cols: usize) -> Mat {
        assert_eq!(self.data.len(), rows * cols, "reshape");
        Mat { field: self.field, rows, cols, data: self.data.clone() }
    }

    /// Reduced row echelon form and pivot columns, pivoting only among the
    /// first `limit` columns.
    pub fn rref_limited(&self, limit: usize) -> (Mat, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..limit.min(self.cols) {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else { continue };
            if p != row {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, row * m.cols + j);
                }
            }
            let inv = f.inv(m.get(row, col)).unwrap();
            if !inv.is_one() {
                for j in col..m.cols {
                    let v = f.mul(m.get(row, j), &inv);
                    m.set(row, j, v);
                }
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let pv = m.get(row, j);
                    if pv.is_zero() {
                        continue;
                    }
                    let v = f.sub(m.get(r, j), &f.mul(&factor, pv));
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rref(&self) -> (Mat, Vec<usize>) {
        self.rref_limited(self.cols)
    }

    pub fn rank(&self) -> usize {
        if self.rows > self.cols {
            return self.transpose().rref().1.len();
        }
        self.rref().1.len()
    }

    /// Null-space basis as columns. Each basis vector has a 1 in its own free
    /// column and 0 in every other free column.
    pub fn kernel_basis(&self) -> Mat {
        let (r, pivots) = self.rref();
        let f = self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Mat::zeros(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, f.one());
            for (i, &pc) in pivots.iter().enumerate() {
                let v = r.get(i, fc);
                if !v.is_zero() {
                    out.set(pc, k, f.neg(v));
                }
            }
        }
        out
    }

    /// Some `X` with `self · X = rhs`, free variables set to zero.
    pub fn solve(&self, rhs: &Mat) -> Result<Option<Mat>, Error> {
        if self.rows != rhs.rows {
            return Err(Error::Shape(format!("solve: {} rows vs rhs {} rows", self.rows, rhs.rows)));
        }
        let f = self.field;
        let aug = Mat::hstack(f, self.rows, &[self.clone(), rhs.clone()]);
        let (r, pivots) = aug.rref_limited(self.cols);
        for i in pivots.len()..r.rows {
            for j in 0..rhs.cols {
                if !r.get(i, self.cols + j).is_zero() {
                    return Ok(None);
                }
            }
        }
        let mut x = Mat::zeros(f, self.cols, rhs.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, r.get(i, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() || self.rank() != self.rows {
            return None;
        }
        self.solve(&Mat::identity(self.field, self.rows)).ok().flatten()
    }

    /// A basis of the column space: the pivot columns of `self`.
    pub fn column_basis(&self) -> Mat {
        let (_, pivots) = self.rref();
        self.select_cols(&pivots)
    }

    /// Whether every column of `o` lies in the column space of `self`.
    pub fn spans(&self, o: &Mat) -> bool {
        let f = self.field;
        let both = Mat::hstack(f, self.rows, &[self.clone(), o.clone()]);
        both.rank() == self.rank()
    }

    /// First `(row, col)` where the two matrices differ.
    pub fn first_difference(&self, o: &Mat) -> Option<(usize, usize)> {
        assert_eq!(self.shape(), o.shape(), "compare shape {:?} vs {:?}", self.shape(), o.shape());
        let idx = self.data.iter().zip(&o.data).position(|(a, b)| a != b)?;
        Some((idx / self.cols, idx % self.cols))
    }

    /// Injective as a linear map (rank equals the domain dimension).
    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn is_bijective(&self) -> bool {
        self.is_square() && self.rank() == self.cols
    }

    /// Kronecker product of a list, `I_1` for the empty list.
    pub fn kron_all(field: Field, parts: &[&Mat]) -> Mat {
        parts.iter().fold(Mat::identity(field, 1), |acc, m| acc.kron(m))
    }

    /// The flip `V ⊗ W -> W ⊗ V`.
    pub fn swap(field: Field, dv: usize, dw: usize) -> Mat {
        tensor_permutation(field, &[dv, dw], &[1, 0])
    }
}

/// Permutation of tensor factors: output factor `k` is input factor `perm[k]`.
pub fn tensor_permutation(field: Field, dims: &[usize], perm: &[usize]) -> Mat {
    assert_eq!(dims.len(), perm.len(), "permutation arity");
    let total: usize = dims.iter().product();
    let out_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let mut m = Mat::zeros(field, total, total);
    let mut idx = vec![0usize; dims.len()];
    for input in 0..total {
        let mut rem = input;
        for k in (0..dims.len()).rev() {
            idx[k] = rem % dims[k];
            rem /= dims[k];
        }
        let mut out = 0;
        for k in 0..perm.len() {
            out = out * out_dims[k] + idx[perm[k]];
        }
        m.set(out, input, field.one());
    }
    m
}

/// Split a flat tensor index into per-factor indices.
pub fn decode_index(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        if dims[k] == 0 {
            return out;
        }
        out[k] = index % dims[k];
        index /= dims[k];
    }
    out
}

pub fn rank(m: &Mat) -> usize {
    m.rank()
}

pub fn solve(m: &Mat, rhs: &Mat) -> Result<Option<Mat>, Error> {
    m.solve(rhs)
}

pub fn kernel_basis(m: &Mat) -> Mat {
    m.kernel_basis()
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    a.kron(b)
}

/// `ambient / span(relations rows)` with echelon-chosen representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub ambient_dim: usize,
    pub relations: Mat,
    pub projection: Mat,
    pub section: Mat,
}

pub fn quotient_by(field: Field, ambient_dim: usize, relations: &Mat) -> Quotient {
    assert_eq!(relations.cols(), ambient_dim, "relation width");
    let (r, pivots) = relations.rref();
    let free: Vec<usize> = (0..ambient_dim).filter(|c| !pivots.contains(c)).collect();
    let q = free.len();
    let mut section = Mat::zeros(field, ambient_dim, q);
    let mut projection = Mat::zeros(field, q, ambient_dim);
    for (k, &j) in free.iter().enumerate() {
        section.set(j, k, field.one());
        projection.set(k, j, field.one());
        for (i, &c) in pivots.iter().enumerate() {
            let v = r.get(i, j);
            if !v.is_zero() {
                projection.set(k, c, field.neg(v));
            }
        }
    }
    Quotient { ambient_dim, relations: relations.clone(), projection, section }
}

impl Quotient {
    /// The trivial quotient of a space by nothing.
    pub fn full(field: Field, n: usize) -> Quotient {
        quotient_by(field, n, &Mat::zeros(field, 0, n))
    }

    pub fn dim(&self) -> usize {
        self.section.cols()
    }

    pub fn field(&self) -> Field {
        self.section.field()
    }

    /// Whether an ambient map (columns = ambient basis) kills every relation.
    pub fn kills_relations(&self, map: &Mat) -> bool {
        map.mul(&self.relations.transpose()).is_zero()
    }

    /// Factor an ambient map through the quotient, checking it is well defined.
    pub fn descend(&self, map: &Mat) -> Result<Mat, Error> {
        if !self.kills_relations(map) {
            return Err(Error::IllDefined(format!("{}x{} map does not vanish on relations", map.rows(), map.cols())));
        }
        Ok(map.mul(&self.section))
    }

    /// The map `self -> target` induced by an ambient map between the two
    /// ambient spaces; it must send relations into relations.
    pub fn induced(&self, target: &Quotient, map: &Mat) -> Result<Mat, Error> {
        let projected = target.projection.mul(map);
        self.descend(&projected)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Mat::identity(q(), 2).rank(), 2);
        assert_eq!(Mat::zeros(q(), 2, 2).rank(), 0);
        assert_eq!(Mat::from_i64(q(), 2, 2, &[1, 2, 2, 4]).rank(), 1);
    }

    #[test]
    fn solve_examples() {
        let v = Mat::from_i64(q(), 2, 1, &[5, -3]);
        assert_eq!(Mat::identity(q(), 2).solve(&v).unwrap(), Some(v.clone()));
        assert_eq!(Mat::zeros(q(), 2, 2).solve(&v).unwrap(), None);
        let m = Mat::from_i64(q(), 2, 2, &[1, 1, 0, 1]);
        let rhs = Mat::from_i64(q(), 2, 1, &[3, 1]);
        assert_eq!(m.solve(&rhs).unwrap(), Some(Mat::from_i64(q(), 2, 1, &[2, 1])));
        assert!(m.solve(&Mat::zeros(q(), 3, 1)).is_err());
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Mat::identity(q(), 3).kernel_basis().cols(), 0);
        assert_eq!(Mat::zeros(q(), 3, 3).kernel_basis(), Mat::identity(q(), 3));
        assert_eq!(Mat::from_i64(q(), 1, 2, &[1, 1]).kernel_basis(), Mat::from_i64(q(), 2, 1, &[-1, 1]));
    }

    #[test]
    fn kron_examples() {
        assert_eq!(Mat::identity(q(), 2).kron(&Mat::identity(q(), 3)), Mat::identity(q(), 6));
        assert_eq!(Mat::from_i64(q(), 1, 1, &[2]).kron(&Mat::from_i64(q(), 1, 1, &[3])), Mat::from_i64(q(), 1, 1, &[6]));
        let flip = Mat::from_i64(q(), 2, 2, &[0, 1, 1, 0]);
        let e = Mat::from_i64(q(), 2, 1, &[1, 0]);
        assert_eq!(flip.kron(&e), Mat::from_i64(q(), 4, 2, &[0, 1, 0, 0, 1, 0, 0, 0]));
    }

    #[test]
    fn quotient_examples() {
        let full = quotient_by(q(), 3, &Mat::zeros(q(), 0, 3));
        assert_eq!(full.projection, Mat::identity(q(), 3));
        assert_eq!(full.section, Mat::identity(q(), 3));
        let diag = quotient_by(q(), 2, &Mat::from_i64(q(), 1, 2, &[1, -1]));
        assert_eq!(diag.dim(), 1);
        assert_eq!(diag.projection.col(0), diag.projection.col(1));
        let all = quotient_by(q(), 2, &Mat::identity(q(), 2));
        assert_eq!(all.dim(), 0);
    }

    #[test]
    fn swap_is_involution() {
        let s = Mat::swap(q(), 2, 3);
        let t = Mat::swap(q(), 3, 2);
        assert_eq!(t.mul(&s), Mat::identity(q(), 6));
        let a = Mat::from_i64(q(), 2, 1, &[1, 2]);
        let b = Mat::from_i64(q(), 3, 1, &[3, 4, 5]);
        assert_eq!(s.mul(&a.kron(&b)), b.kron(&a));
    }
}
