//! Dense matrices over GF(p) with Gaussian elimination.

use crate::prime::{mod_inv, mod_mul};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    p: u32,
    data: Vec<u32>, // row-major
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, p: u32) -> Self {
        Matrix {
            rows,
            cols,
            p,
            data: vec![0; rows * cols],
        }
    }

    /// Rows must all have length `cols`; entries are reduced mod p.
    pub fn from_rows(rows: &[Vec<u32>], cols: usize, p: u32) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r.iter().map(|&v| v % p));
        }
        Matrix {
            rows: rows.len(),
            cols,
            p,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows, self.p);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let p = u64::from(self.p);
        let mut out = Matrix::zeros(self.rows, other.cols, self.p);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let s: u64 = (0..self.cols)
                    .map(|k| u64::from(self.get(i, k)) * u64::from(other.get(k, j)) % p)
                    .sum();
                out.data[i * other.cols + j] = (s % p) as u32;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    /// Zero rows end up at the bottom.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = mod_inv(self.get(r, c), p).expect("nonzero pivot");
            for j in c..self.cols {
                let v = mod_mul(self.get(r, j), inv, p);
                self.data[r * self.cols + j] = v;
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let sub = mod_mul(f, self.get(r, j), p);
                    let v = (self.get(i, j) + p - sub) % p;
                    self.data[i * self.cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Nonzero rows of the RREF: a canonical basis of the row space.
    pub fn row_space_basis(&self) -> Matrix {
        let mut m = self.clone();
        let k = m.rref().len();
        m.data.truncate(k * m.cols);
        m.rows = k;
        m
    }

    /// Basis of `{x : self * x^T = 0}` as the rows of a matrix in RREF.
    pub fn null_space(&self) -> Matrix {
        let p = self.p;
        let mut red = self.clone();
        let pivots = red.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(free.len(), self.cols, p);
        for (bi, &f) in free.iter().enumerate() {
            basis.set(bi, f, 1);
            for (ri, &pc) in pivots.iter().enumerate() {
                let v = red.get(ri, f);
                basis.set(bi, pc, (p - v) % p);
            }
        }
        basis.rref();
        basis
    }

    /// Some solution `x` of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1, self.p);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, b[r]);
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (ri, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(ri, self.cols);
        }
        Some(x)
    }

    /// `self * v^T` for a vector `v` of length `cols`.
    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = u64::from(self.p);
        (0..self.rows)
            .map(|r| {
                let s: u64 = self
                    .row(r)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| u64::from(a) * u64::from(b) % p)
                    .sum();
                (s % p) as u32
            })
            .collect()
    }

    /// `v * self` for a row vector `v`.
    pub fn left_mul(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows);
        let p = u64::from(self.p);
        let mut out = vec![0u64; self.cols];
        for (r, &coef) in v.iter().enumerate() {
            if coef == 0 {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o = (*o + u64::from(coef) * u64::from(self.get(r, c))) % p;
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_rank() {
        let m = Matrix::from_rows(
            &[vec![1, 2, 0, 1], vec![2, 1, 0, 2], vec![0, 0, 0, 0]],
            4,
            3,
        );
        // row 2 = 2 * row 1 + ... check: 2*(1,2,0,1) = (2,1,0,2)
        assert_eq!(m.rank(), 1);
        let mut r = m.clone();
        assert_eq!(r.rref(), vec![0]);
        assert_eq!(r.row(0), &[1, 2, 0, 1]);
    }

    #[test]
    fn null_space_is_orthogonal_and_full() {
        let g = Matrix::from_rows(
            &[
                vec![1, 0, 2, 3, 4],
                vec![0, 1, 1, 1, 2],
                vec![1, 1, 3, 4, 1],
            ],
            5,
            5,
        );
        let h = g.null_space();
        assert_eq!(h.rows() + g.rank(), 5);
        assert!(g.mul(&h.transpose()).is_zero());
        assert_eq!(h.rank(), h.rows());
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = Matrix::from_rows(&[vec![1, 1], vec![0, 0]], 2, 3);
        assert!(a.solve(&[1, 1]).is_none());
        let x = a.solve(&[2, 0]).unwrap();
        assert_eq!((x[0] + x[1]) % 3, 2);
    }
}
