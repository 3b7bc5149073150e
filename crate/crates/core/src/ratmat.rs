//! Dense exact-rational matrices: row reduction, rank, linear solving, and
//! row-space membership. Small sizes only (tens of rows/columns) — used for
//! spanning checks and orbit-space linear systems.

use num::{BigRational, One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigRational>,
}

impl RatMat {
    pub fn zero(rows: usize, cols: usize) -> RatMat {
        RatMat {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<BigRational>]) -> RatMat {
        if rows.is_empty() {
            return RatMat::zero(0, 0);
        }
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols));
        RatMat {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> RatMat {
        let mut out = RatMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    /// Zero rows are dropped.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = self.get(r, c).recip();
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !self.get(i, c).is_zero() {
                    let factor = self.get(i, c).clone();
                    for j in c..self.cols {
                        let v = self.get(i, j) - &factor * self.get(r, j);
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

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref();
        m.rows
    }

    /// Appends a row.
    pub fn push_row(&mut self, row: Vec<BigRational>) {
        assert_eq!(row.len(), self.cols);
        self.data.extend(row);
        self.rows += 1;
    }

    /// True iff `v` lies in the row space.
    pub fn row_space_contains(&self, v: &[BigRational]) -> bool {
        assert_eq!(v.len(), self.cols);
        let base = self.rank();
        let mut ext = self.clone();
        ext.push_row(v.to_vec());
        ext.rank() == base
    }

    /// Solves M·x = b (column convention). Returns a particular solution,
    /// or None when inconsistent.
    pub fn solve(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = RatMat::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the constants column: inconsistent
        }
        let mut x = vec![BigRational::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// Basis of the kernel {x : M·x = 0}, RREF'd.
    pub fn kernel(&self) -> RatMat {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::new();
        for &fc in &free {
            let mut v = vec![BigRational::zero(); self.cols];
            v[fc] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.get(r, fc).clone();
            }
            rows.push(v);
        }
        let mut out = RatMat::from_rows(&rows);
        out.rref();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn rank_and_solve() {
        let m = RatMat::from_rows(&[
            vec![r(1), r(2), r(3)],
            vec![r(2), r(4), r(6)],
            vec![r(0), r(1), r(1)],
        ]);
        assert_eq!(m.rank(), 2);
        let b = vec![r(6), r(12), r(2)];
        let x = m.solve(&b).unwrap();
        // verify M·x = b
        for i in 0..3 {
            let acc: BigRational = (0..3).map(|j| m.get(i, j) * &x[j]).sum();
            assert_eq!(acc, b[i]);
        }
        assert!(m.solve(&[r(1), r(0), r(0)]).is_none());
    }

    #[test]
    fn kernel_annihilates() {
        let m = RatMat::from_rows(&[vec![r(1), r(2), r(3)], vec![r(0), r(1), r(1)]]);
        let k = m.kernel();
        assert_eq!(k.rows, 1);
        for i in 0..m.rows {
            let acc: BigRational = (0..3).map(|j| m.get(i, j) * k.get(0, j)).sum();
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn row_space_membership() {
        let m = RatMat::from_rows(&[vec![r(1), r(0), r(1)], vec![r(0), r(1), r(1)]]);
        assert!(m.row_space_contains(&[r(2), r(3), r(5)]));
        assert!(!m.row_space_contains(&[r(0), r(0), r(1)]));
    }
}
