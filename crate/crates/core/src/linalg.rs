//! Dense vectors and matrices over a [`Field`], with reduced row echelon
//! form, kernels, and solving. Vectors are rows throughout the crate; a
//! matrix acts on a row vector by `v * M`.

use crate::error::{Error, Result};
use crate::field::{El, Field};

pub fn vec_is_zero(v: &[El]) -> bool {
    v.iter().all(|e| e.is_zero())
}

pub fn vec_add(f: &Field, a: &[El], b: &[El]) -> Vec<El> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

pub fn vec_sub(f: &Field, a: &[El], b: &[El]) -> Vec<El> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect()
}

pub fn vec_scale(f: &Field, c: El, a: &[El]) -> Vec<El> {
    a.iter().map(|&x| f.mul(c, x)).collect()
}

/// a + c*b
pub fn vec_add_scaled(f: &Field, a: &[El], c: El, b: &[El]) -> Vec<El> {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(&x, &y)| f.add(x, f.mul(c, y)))
        .collect()
}

pub fn dot(f: &Field, a: &[El], b: &[El]) -> El {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = El::ZERO;
    for (&x, &y) in a.iter().zip(b) {
        acc = f.add(acc, f.mul(x, y));
    }
    acc
}

/// A dense rows×cols matrix over a field, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<El>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![El::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, El::ONE);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<El>]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        debug_assert!(rows.iter().all(|v| v.len() == c));
        Matrix {
            rows: r,
            cols: c,
            data: rows.concat(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> El {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: El) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[El] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<El>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Entrywise Frobenius power x -> x^(p^k).
    pub fn frobenius(&self, f: &Field, k: u32) -> Matrix {
        let mut m = self.clone();
        for e in m.data.iter_mut() {
            *e = f.frobenius(*e, k);
        }
        m
    }

    pub fn mul(&self, f: &Field, other: &Matrix) -> Matrix {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Row vector times matrix: returns v * M.
    pub fn apply_row(&self, f: &Field, v: &[El]) -> Vec<El> {
        debug_assert_eq!(v.len(), self.rows);
        let mut out = vec![El::ZERO; self.cols];
        for (i, &vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                out[j] = f.add(out[j], f.mul(vi, self.get(i, j)));
            }
        }
        out
    }

    /// Matrix times column vector: returns M * w^T as a row of length rows.
    pub fn apply_col(&self, f: &Field, w: &[El]) -> Vec<El> {
        debug_assert_eq!(w.len(), self.cols);
        (0..self.rows).map(|i| dot(f, self.row(i), w)).collect()
    }

    /// In-place reduced row echelon form; returns the pivot column of each
    /// nonzero row. Zero rows are dropped.
    pub fn rref(&mut self, f: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            // swap rows r and pr
            if pr != r {
                for j in 0..self.cols {
                    let (a, b) = (self.get(r, j), self.get(pr, j));
                    self.set(r, j, b);
                    self.set(pr, j, a);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("pivot nonzero");
            for j in 0..self.cols {
                self.set(r, j, f.mul(inv, self.get(r, j)));
            }
            for i in 0..self.rows {
                if i != r && !self.get(i, c).is_zero() {
                    let factor = self.get(i, c);
                    for j in 0..self.cols {
                        let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        self.data.truncate(r * self.cols);
        self.rows = r;
        pivots
    }

    pub fn rank(&self, f: &Field) -> usize {
        let mut m = self.clone();
        m.rref(f);
        m.rows
    }

    /// Basis (RREF rows) of the right kernel {x : M x^T = 0}.
    pub fn kernel(&self, f: &Field) -> Matrix {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let rank = m.rows;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![El::ZERO; self.cols];
            v[fc] = El::ONE;
            for r in 0..rank {
                // pivot column pivots[r]: x_pivot = -sum(free coeffs)
                let coeff = m.get(r, fc);
                if !coeff.is_zero() {
                    v[pivots[r]] = f.neg(coeff);
                }
            }
            rows.push(v);
        }
        let mut k = Matrix::from_rows(&rows);
        if k.rows == 0 {
            k = Matrix::zero(0, self.cols);
        }
        k.rref(f);
        k
    }

    /// Solves x * self = b for a row vector x, if consistent.
    pub fn solve_left(&self, f: &Field, b: &[El]) -> Option<Vec<El>> {
        debug_assert_eq!(b.len(), self.cols);
        // augment transpose: solve self^T x^T = b^T
        let t = self.transpose();
        let mut aug = Matrix::zero(t.rows, t.cols + 1);
        for i in 0..t.rows {
            for j in 0..t.cols {
                aug.set(i, j, t.get(i, j));
            }
            aug.set(i, t.cols, b[i]);
        }
        let pivots = aug.rref(f);
        // inconsistent if a pivot lands in the augmented column
        if pivots.contains(&t.cols) {
            return None;
        }
        let mut x = vec![El::ZERO; self.rows];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, t.cols);
        }
        Some(x)
    }

    pub fn inverse(&self, f: &Field) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = Matrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, El::ONE);
        }
        let pivots = aug.rref(f);
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return Err(Error::Precondition("matrix is singular".into()));
        }
        let mut inv = Matrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Ok(inv)
    }

    pub fn det_is_zero(&self, f: &Field) -> bool {
        self.rank(f) < self.rows.min(self.cols) || self.rows != self.cols
    }

    /// Vertically stacks two matrices with equal column counts.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn gf4() -> Arc<Field> {
        Field::new(2, 2).unwrap()
    }

    fn el(v: u32) -> El {
        El(v)
    }

    #[test]
    fn rref_and_rank() {
        let f = gf4();
        let mut m = Matrix::from_rows(&[
            vec![el(1), el(2), el(3)],
            vec![el(2), el(3), el(1)],
            vec![el(3), el(1), el(2)],
        ]);
        let r = m.clone().rank(&f);
        let pivots = m.rref(&f);
        assert_eq!(r, m.rows);
        assert_eq!(pivots.len(), m.rows);
        // every pivot column has a single 1
        for (row, &c) in pivots.iter().enumerate() {
            assert_eq!(m.get(row, c), El::ONE);
            for other in 0..m.rows {
                if other != row {
                    assert!(m.get(other, c).is_zero());
                }
            }
        }
    }

    #[test]
    fn kernel_is_annihilated() {
        let f = gf4();
        let m = Matrix::from_rows(&[vec![el(1), el(1), el(0), el(2)], vec![el(0), el(0), el(1), el(3)]]);
        let k = m.kernel(&f);
        assert_eq!(k.rows, 2);
        for i in 0..k.rows {
            let out = m.apply_col(&f, k.row(i));
            assert!(vec_is_zero(&out));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let f = gf4();
        let m = Matrix::from_rows(&[
            vec![el(2), el(1), el(0)],
            vec![el(1), el(1), el(1)],
            vec![el(0), el(3), el(1)],
        ]);
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&f, &inv), Matrix::identity(3));
        assert_eq!(inv.mul(&f, &m), Matrix::identity(3));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let f = gf4();
        let m = Matrix::from_rows(&[vec![el(1), el(2)], vec![el(2), el(3)]]);
        // rows are proportional: (2)*(1,2) = (2, 2*2=3)
        assert!(m.inverse(&f).is_err());
        assert_eq!(m.rank(&f), 1);
    }

    #[test]
    fn solve_left_consistency() {
        let f = gf4();
        let m = Matrix::from_rows(&[
            vec![el(1), el(0), el(2)],
            vec![el(0), el(1), el(3)],
        ]);
        let x = vec![el(2), el(3)];
        let b = m.apply_row(&f, &x);
        let sol = m.solve_left(&f, &b).unwrap();
        assert_eq!(m.apply_row(&f, &sol), b);
        // inconsistent target
        let bad = vec![el(0), el(0), el(1)];
        assert!(m.solve_left(&f, &bad).is_none());
    }

    #[test]
    fn frobenius_entrywise() {
        let f = gf4();
        let m = Matrix::from_rows(&[vec![el(2), el(3)]]);
        let fm = m.frobenius(&f, 1);
        assert_eq!(fm.get(0, 0), el(3));
        assert_eq!(fm.get(0, 1), el(2));
    }
}
