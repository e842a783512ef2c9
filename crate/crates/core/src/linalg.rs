//! Dense matrices over `F` and the row-space algebra built on Gaussian
//! elimination. Matrices whose entries lie in a subfield stay in it under
//! every routine here, so the same code serves `K_i`-linear algebra.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// Row-major matrix. The column count is stored so that `0 × n` matrices
/// keep their shape.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Matrix {
    cols: usize,
    rows: Vec<Vec<Elem>>,
}

impl Matrix {
    pub fn from_rows(cols: usize, rows: Vec<Vec<Elem>>) -> Matrix {
        debug_assert!(rows.iter().all(|r| r.len() == cols));
        Matrix { cols, rows }
    }

    /// Like [`Matrix::from_rows`] but checks row lengths.
    pub fn try_from_rows(cols: usize, rows: Vec<Vec<Elem>>) -> Result<Matrix> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
        }
        Ok(Matrix { cols, rows })
    }

    pub fn empty(cols: usize) -> Matrix {
        Matrix { cols, rows: Vec::new() }
    }

    pub fn zeros(nrows: usize, cols: usize) -> Matrix {
        Matrix { cols, rows: vec![vec![Elem::ZERO; cols]; nrows] }
    }

    pub fn identity(n: usize) -> Matrix {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Elem::ONE } else { Elem::ZERO }).collect())
            .collect();
        Matrix { cols: n, rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<Elem>> {
        self.rows
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.rows[i][j] = v;
    }

    pub fn push_row(&mut self, row: Vec<Elem>) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|e| e.is_zero()))
    }

    pub fn transpose(&self) -> Matrix {
        let rows = (0..self.cols).map(|j| self.rows.iter().map(|r| r[j]).collect()).collect();
        Matrix { cols: self.rows.len(), rows }
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Matrix { cols: self.cols, rows }
    }

    /// Columns `range` of every row.
    pub fn columns(&self, range: std::ops::Range<usize>) -> Matrix {
        let cols = range.len();
        let rows = self.rows.iter().map(|r| r[range.clone()].to_vec()).collect();
        Matrix { cols, rows }
    }

    /// Block-diagonal matrix from the given blocks.
    pub fn block_diag(blocks: &[Matrix]) -> Matrix {
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut rows = Vec::new();
        let mut offset = 0;
        for b in blocks {
            for r in &b.rows {
                let mut row = vec![Elem::ZERO; cols];
                row[offset..offset + b.cols].copy_from_slice(r);
                rows.push(row);
            }
            offset += b.cols;
        }
        Matrix { cols, rows }
    }

    /// Entries flattened row by row.
    pub fn flat(&self) -> Vec<Elem> {
        self.rows.iter().flatten().copied().collect()
    }
}

/// Reduces `m` to reduced row echelon form in place, dropping zero rows, and
/// returns the pivot columns.
pub fn rref(f: &Field, m: &mut Matrix) -> Vec<usize> {
    let ncols = m.cols;
    let rows = &mut m.rows;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(rows[r][c]).expect("pivot is nonzero");
        if inv != Elem::ONE {
            for x in rows[r].iter_mut() {
                *x = f.mul(*x, inv);
            }
        }
        for i in 0..rows.len() {
            if i == r {
                continue;
            }
            let factor = rows[i][c];
            if factor.is_zero() {
                continue;
            }
            let neg = f.neg(factor);
            for j in c..ncols {
                let pv = rows[r][j];
                if !pv.is_zero() {
                    rows[i][j] = f.add(rows[i][j], f.mul(neg, pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Canonical basis (RREF, no zero rows) of the row space.
pub fn row_space(f: &Field, m: &Matrix) -> Matrix {
    let mut out = m.clone();
    rref(f, &mut out);
    out
}

pub fn rank(f: &Field, m: &Matrix) -> usize {
    let mut t = m.clone();
    rref(f, &mut t).len()
}

/// Pivot columns of a matrix already in RREF.
pub fn pivots_of(m: &Matrix) -> Vec<usize> {
    m.rows.iter().map(|r| r.iter().position(|e| !e.is_zero()).expect("RREF rows are nonzero")).collect()
}

/// RREF basis of `{v : m v^T = 0}`, the orthogonal complement of the row
/// space under the standard bilinear form.
pub fn nullspace(f: &Field, m: &Matrix) -> Matrix {
    let mut r = m.clone();
    let pivots = rref(f, &mut r);
    let n = m.cols;
    let mut out = Matrix::empty(n);
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Elem::ZERO; n];
        v[free] = Elem::ONE;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(r.rows[i][free]);
        }
        out.rows.push(v);
    }
    rref(f, &mut out);
    out
}

/// RREF basis of the intersection of two row spaces.
pub fn intersect(f: &Field, a: &Matrix, b: &Matrix) -> Matrix {
    nullspace(f, &nullspace(f, a).stack(&nullspace(f, b)))
}

/// RREF basis of the sum of two row spaces.
pub fn sum(f: &Field, a: &Matrix, b: &Matrix) -> Matrix {
    row_space(f, &a.stack(b))
}

/// Whether `v` lies in the row space of `m`.
pub fn in_row_space(f: &Field, m: &Matrix, v: &[Elem]) -> bool {
    let mut t = m.clone();
    let base = rref(f, &mut t).len();
    t.push_row(v.to_vec());
    rref(f, &mut t).len() == base
}

pub fn mul(f: &Field, a: &Matrix, b: &Matrix) -> Matrix {
    assert_eq!(a.cols, b.nrows());
    let rows = a
        .rows
        .iter()
        .map(|r| {
            (0..b.cols)
                .map(|j| {
                    r.iter().enumerate().fold(Elem::ZERO, |acc, (k, &x)| {
                        if x.is_zero() {
                            acc
                        } else {
                            f.add(acc, f.mul(x, b.rows[k][j]))
                        }
                    })
                })
                .collect()
        })
        .collect();
    Matrix { cols: b.cols, rows }
}

/// `v · m` for a row vector `v`.
pub fn vec_mul(f: &Field, v: &[Elem], m: &Matrix) -> Vec<Elem> {
    assert_eq!(v.len(), m.nrows());
    let mut out = vec![Elem::ZERO; m.cols];
    for (x, row) in v.iter().zip(&m.rows) {
        if x.is_zero() {
            continue;
        }
        for (o, &y) in out.iter_mut().zip(row) {
            *o = f.add(*o, f.mul(*x, y));
        }
    }
    out
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse(f: &Field, m: &Matrix) -> Option<Matrix> {
    let n = m.nrows();
    if m.cols != n {
        return None;
    }
    let mut aug = Matrix::empty(2 * n);
    for (i, r) in m.rows.iter().enumerate() {
        let mut row = r.clone();
        row.extend((0..n).map(|j| if i == j { Elem::ONE } else { Elem::ZERO }));
        aug.rows.push(row);
    }
    let pivots = rref(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(Matrix { cols: n, rows: aug.rows.into_iter().map(|r| r[n..].to_vec()).collect() })
}

/// Solves `m x = b` for square invertible `m`.
pub fn solve(f: &Field, m: &Matrix, b: &[Elem]) -> Result<Vec<Elem>> {
    let inv = inverse(f, m).ok_or(Error::SingularMatrix)?;
    Ok(inv.rows.iter().map(|r| f.dot(r, b)).collect())
}
