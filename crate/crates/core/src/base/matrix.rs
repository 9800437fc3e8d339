//! Dense matrices over the prime field F_p with exact Gaussian elimination.
//!
//! Everything downstream (kernels for limits, cokernels for colimits,
//! lifting solvers) reduces to `rref`, `kernel_basis`, `left_kernel_basis`
//! and `solve` here. Entries are stored row-major, always reduced mod p.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub p: u64,
    data: Vec<u64>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime and a != 0 mod p
    let mut result = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize, p: u64) -> Self {
        assert!(p >= 2);
        Mat { rows, cols, p, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, p: u64) -> Self {
        let mut m = Mat::zeros(n, n, p);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u64, rows: &[Vec<u64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = Mat::zeros(r, c, p);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Matrix product self * other.
    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows || self.p != other.p {
            return Err(Error::Endpoint(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Mat::zeros(self.rows, other.cols, self.p);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = (out.get(i, j) + a * other.get(k, j)) % self.p;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product with row-major flattening: index (i1,i2) -> i1*other.rows + i2.
    pub fn kronecker(&self, other: &Mat) -> Mat {
        assert_eq!(self.p, other.p);
        let mut out = Mat::zeros(self.rows * other.rows, self.cols * other.cols, self.p);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a == 0 {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let v = a * other.get(i2, j2) % self.p;
                        out.set(i1 * other.rows + i2, j1 * other.cols + j2, v);
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Horizontal stack [self | other].
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.p, other.p);
        let mut out = Mat::zeros(self.rows, self.cols + other.cols, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    /// Vertical stack [self; other].
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        assert_eq!(self.p, other.p);
        let mut out = Mat::zeros(self.rows + other.rows, self.cols, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..self.cols {
                out.set(self.rows + i, j, other.get(i, j));
            }
        }
        out
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let mut pivot = None;
            for i in r..m.rows {
                if m.get(i, c) != 0 {
                    pivot = Some(i);
                    break;
                }
            }
            let Some(pi) = pivot else { continue };
            // swap rows
            if pi != r {
                for j in 0..m.cols {
                    let a = m.get(r, j);
                    let b = m.get(pi, j);
                    m.set(r, j, b);
                    m.set(pi, j, a);
                }
            }
            let inv = inv_mod(m.get(r, c), p);
            for j in 0..m.cols {
                let v = m.get(r, j) * inv % p;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && m.get(i, c) != 0 {
                    let f = m.get(i, c);
                    for j in 0..m.cols {
                        let v = (m.get(i, j) + p - f * m.get(r, j) % p) % p;
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel {x : self * x = 0}, as columns of a
    /// cols x nullity matrix in the canonical (free-variable) form derived
    /// from the RREF, ordered by increasing free column.
    pub fn kernel_basis(&self) -> Mat {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = Mat::zeros(self.cols, free.len(), self.p);
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, 1);
            for (ri, &pc) in pivots.iter().enumerate() {
                let v = r.get(ri, fc);
                if v != 0 {
                    basis.set(pc, k, (self.p - v) % self.p);
                }
            }
        }
        basis
    }

    /// Basis of the left kernel {y : y * self = 0}, as rows of a matrix.
    pub fn left_kernel_basis(&self) -> Mat {
        self.transpose().kernel_basis().transpose()
    }

    /// Solve self * X = rhs for X (all columns at once). Returns the
    /// canonical solution with free variables set to zero, or None.
    pub fn solve(&self, rhs: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, rhs.rows);
        assert_eq!(self.p, rhs.p);
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref();
        // consistency: no pivot may fall in the rhs block
        for &c in &pivots {
            if c >= self.cols {
                return None;
            }
        }
        let mut x = Mat::zeros(self.cols, rhs.cols, self.p);
        for (ri, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, r.get(ri, self.cols + j));
            }
        }
        Some(x)
    }

    /// All vectors of F_p^n in lexicographic order as column matrices.
    pub fn enumerate_vectors(n: usize, p: u64) -> Vec<Mat> {
        let total = (p as u128).checked_pow(n as u32).expect("vector space too large");
        let mut out = Vec::with_capacity(total as usize);
        let mut idx = vec![0u64; n];
        loop {
            let mut m = Mat::zeros(n, 1, p);
            for (i, &v) in idx.iter().enumerate() {
                m.set(i, 0, v);
            }
            out.push(m);
            let mut carry = true;
            for i in (0..n).rev() {
                if carry {
                    idx[i] += 1;
                    if idx[i] == p {
                        idx[i] = 0;
                    } else {
                        carry = false;
                    }
                }
            }
            if carry {
                break;
            }
            if n == 0 {
                break;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_rank() {
        let m = Mat::from_rows(2, &[vec![1, 1, 0], vec![1, 1, 1], vec![0, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.cols, 1);
        assert!(m.mul(&k).unwrap().is_zero());
    }

    #[test]
    fn kernel_times_matrix_is_zero_f3() {
        let m = Mat::from_rows(3, &[vec![1, 2, 0, 1], vec![2, 1, 1, 0]]);
        let k = m.kernel_basis();
        assert_eq!(k.cols, 2);
        assert!(m.mul(&k).unwrap().is_zero());
        let lk = m.left_kernel_basis();
        assert!(lk.mul(&m).unwrap().is_zero());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = Mat::from_rows(2, &[vec![1, 1], vec![0, 0]]);
        let b = Mat::from_rows(2, &[vec![1], vec![0]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x).unwrap(), b);
        let bad = Mat::from_rows(2, &[vec![0], vec![1]]);
        assert!(a.solve(&bad).is_none());
    }

    #[test]
    fn kronecker_hand_example() {
        // [[1,0]] (x) [[1],[1]] = [[1,0],[1,0]] over F_2
        let a = Mat::from_rows(2, &[vec![1, 0]]);
        let b = Mat::from_rows(2, &[vec![1], vec![1]]);
        let k = a.kronecker(&b);
        assert_eq!(k, Mat::from_rows(2, &[vec![1, 0], vec![1, 0]]));
    }

    #[test]
    fn kronecker_associative() {
        let a = Mat::from_rows(5, &[vec![1, 2], vec![3, 4]]);
        let b = Mat::from_rows(5, &[vec![0, 1]]);
        let c = Mat::from_rows(5, &[vec![2], vec![3]]);
        assert_eq!(a.kronecker(&b).kronecker(&c), a.kronecker(&b.kronecker(&c)));
    }
}
