//! Exact linear algebra over [`Scalar`]: sparse row reduction, kernels,
//! column spaces, and small dense matrix helpers.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

pub type SparseRow = BTreeMap<usize, Scalar>;

/// Dense matrix, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows);
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Kronecker product `self ⊗ o`.
    pub fn kron(&self, o: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        out.set(i * o.rows + k, j * o.cols + l, a * o.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_sparse_rows(&self) -> Vec<SparseRow> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| !self.get(i, j).is_zero())
                    .map(|j| (j, self.get(i, j).clone()))
                    .collect()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        rref(self.to_sparse_rows()).len()
    }

    /// Basis of the null space `{x : Mx = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        kernel(&self.to_sparse_rows(), self.cols)
    }

    /// Basis of the column space, as reduced row vectors of the transpose.
    pub fn column_space(&self) -> Vec<SparseRow> {
        rref(self.transpose().to_sparse_rows())
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Scalar::one());
        }
        let red = rref(aug.to_sparse_rows());
        if red.len() < n || red.iter().enumerate().any(|(i, r)| r.keys().next() != Some(&i)) {
            return None;
        }
        let mut out = Matrix::zeros(n, n);
        for (i, r) in red.iter().enumerate() {
            for (&j, v) in r {
                if j >= n {
                    out.set(i, j - n, v.clone());
                }
            }
        }
        Some(out)
    }
}

fn axpy(target: &mut SparseRow, factor: &Scalar, row: &SparseRow) {
    for (&j, v) in row {
        let nv = target.get(&j).unwrap_or(&Scalar::zero()) - &(factor * v);
        if nv.is_zero() {
            target.remove(&j);
        } else {
            target.insert(j, nv);
        }
    }
}

/// Reduced row echelon form; returns nonzero rows with leading coefficient 1,
/// sorted by pivot column.
pub fn rref(rows: Vec<SparseRow>) -> Vec<SparseRow> {
    let mut basis: Vec<SparseRow> = Vec::new();
    for mut r in rows {
        for b in &basis {
            let p = *b.keys().next().expect("pivot");
            if let Some(f) = r.get(&p).cloned() {
                axpy(&mut r, &f, b);
            }
        }
        let Some((&p, lead)) = r.iter().next() else { continue };
        let inv = lead.inv();
        let r: SparseRow = r.iter().map(|(&j, v)| (j, v * &inv)).collect();
        for b in basis.iter_mut() {
            if let Some(f) = b.get(&p).cloned() {
                axpy(b, &f, &r);
            }
        }
        basis.push(r);
        let _ = p;
    }
    basis.sort_by_key(|r| *r.keys().next().expect("pivot"));
    basis
}

/// Null-space basis of the system given by sparse rows over `ncols` unknowns.
pub fn kernel(rows: &[SparseRow], ncols: usize) -> Vec<Vec<Scalar>> {
    let red = rref(rows.to_vec());
    let pivots: BTreeMap<usize, &SparseRow> = red.iter().map(|r| (*r.keys().next().expect("pivot"), r)).collect();
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains_key(c)) {
        let mut v = vec![Scalar::zero(); ncols];
        v[free] = Scalar::one();
        for (&p, r) in &pivots {
            if let Some(x) = r.get(&free) {
                v[p] = -x;
            }
        }
        out.push(v);
    }
    out
}

/// Whether `v` lies in the span of the (reduced) rows `basis`.
pub fn in_span(basis: &[SparseRow], v: &SparseRow) -> bool {
    let mut r = v.clone();
    for b in basis {
        let p = *b.keys().next().expect("pivot");
        if let Some(f) = r.get(&p).cloned() {
            axpy(&mut r, &f, b);
        }
    }
    r.is_empty()
}

/// Reduces `v` against reduced rows; returns the remainder.
pub fn reduce(basis: &[SparseRow], v: &SparseRow) -> SparseRow {
    let mut r = v.clone();
    for b in basis {
        let p = *b.keys().next().expect("pivot");
        if let Some(f) = r.get(&p).cloned() {
            axpy(&mut r, &f, b);
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn kernel_of_rank_one() {
        let mut m = Matrix::zeros(2, 3);
        for (j, v) in [1, 2, 3].iter().enumerate() {
            m.set(0, j, s(*v));
            m.set(1, j, s(2 * v));
        }
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            let dot = (0..3).fold(Scalar::zero(), |acc, j| &acc + &(m.get(0, j) * &v[j]));
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let mut m = Matrix::zeros(2, 2);
        m.set(0, 0, s(2));
        m.set(0, 1, s(1));
        m.set(1, 0, s(1));
        m.set(1, 1, s(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
    }
}
