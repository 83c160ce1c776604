//! Dense matrices over the prime field F_p, p < 2^16.
//!
//! All arithmetic is exact modular arithmetic; entries are canonical
//! representatives in `[0, p)`. Row reduction is the workhorse: kernels,
//! images, solving, and inversion all go through reduced row echelon form,
//! and every subspace handed out by this module is presented by its unique
//! RREF basis so that independently computed presentations of the same
//! subspace agree entry for entry.

use crate::error::{Error, Result};

/// Row-major matrix over F_p. The prime is carried alongside rather than
/// inside each entry; mixing primes is a caller bug.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2) mod p, p prime, a != 0.
    debug_assert!(a % p != 0);
    let mut base = u64::from(a % p);
    let mut exp = p - 2;
    let mut acc: u64 = 1;
    let p64 = u64::from(p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p64;
        }
        base = base * base % p64;
        exp >>= 1;
    }
    acc as u32
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<u32>>, cols: usize, p: u32) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r.into_iter().map(|x| x % p));
        }
        Mat {
            rows: n,
            cols,
            data,
        }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.at(i, j)).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j));
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// `self * other` mod p.
    pub fn mul(&self, other: &Mat, p: u32) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        let p64 = u64::from(p);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = u64::from(self.at(i, k));
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = u64::from(out.at(i, j));
                    let v = (cur + a * u64::from(other.at(k, j))) % p64;
                    out.set(i, j, v as u32);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat, p: u32) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        Mat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Mat, p: u32) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        Mat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Kronecker product with row-major pairing: block (i,k),(j,l) of
    /// `self ⊗ other` is `self[i,j] * other[k,l]`.
    pub fn kronecker(&self, other: &Mat, p: u32) -> Mat {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Mat::zeros(rows, cols);
        let p64 = u64::from(p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = u64::from(self.at(i, j));
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let v = a * u64::from(other.at(k, l)) % p64;
                        out.set(i * other.rows + k, j * other.cols + l, v as u32);
                    }
                }
            }
        }
        out
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self, p: u32) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pivot_row) = (r..self.rows).find(|&i| self.at(i, c) != 0) else {
                continue;
            };
            if pivot_row != r {
                for j in 0..self.cols {
                    let tmp = self.at(r, j);
                    self.set(r, j, self.at(pivot_row, j));
                    self.set(pivot_row, j, tmp);
                }
            }
            let inv = inv_mod(self.at(r, c), p);
            for j in 0..self.cols {
                let v = (u64::from(self.at(r, j)) * u64::from(inv) % u64::from(p)) as u32;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && self.at(i, c) != 0 {
                    let factor = self.at(i, c);
                    for j in 0..self.cols {
                        let v = (u64::from(self.at(i, j)) + u64::from(p - factor)
                            * u64::from(self.at(r, j)))
                            % u64::from(p);
                        self.set(i, j, v as u32);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, p: u32) -> usize {
        let mut m = self.clone();
        m.rref(p).len()
    }

    /// The canonical basis of the row space: nonzero rows of the RREF.
    /// This presentation is unique per subspace, independent of the
    /// spanning set it was computed from.
    pub fn row_space_basis(&self, p: u32) -> Mat {
        let mut m = self.clone();
        let pivots = m.rref(p);
        let rank = pivots.len();
        Mat {
            rows: rank,
            cols: self.cols,
            data: m.data[..rank * self.cols].to_vec(),
        }
    }

    /// Canonical basis of the column space, one column per basis vector.
    pub fn column_space_basis(&self, p: u32) -> Mat {
        self.transpose().row_space_basis(p).transpose()
    }

    /// Canonical basis of the kernel (right null space), one column per
    /// basis vector, presented in RREF-canonical form.
    pub fn kernel_basis(&self, p: u32) -> Mat {
        let mut m = self.clone();
        let pivots = m.rref(p);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![0u32; self.cols];
            v[f] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                // x_pivot = -sum coeff * x_free
                v[c] = (p - m.at(r, f)) % p;
            }
            rows.push(v);
        }
        let span = Mat::from_rows(rows, self.cols, p);
        span.row_space_basis(p).transpose()
    }

    /// Solve `self * x = rhs` exactly for all columns of `rhs` at once.
    /// Errors with `ShapeMismatch` when inconsistent.
    pub fn solve(&self, rhs: &Mat, p: u32) -> Result<Mat> {
        assert_eq!(self.rows, rhs.rows, "solve: row count mismatch");
        let mut aug = Mat::zeros(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j));
            }
            for j in 0..rhs.cols {
                aug.set(i, self.cols + j, rhs.at(i, j));
            }
        }
        let pivots = aug.rref(p);
        if pivots.iter().any(|&c| c >= self.cols) {
            return Err(Error::ShapeMismatch(
                "linear system has no solution".into(),
            ));
        }
        let mut x = Mat::zeros(self.cols, rhs.cols);
        for (r, &c) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(c, j, aug.at(r, self.cols + j));
            }
        }
        Ok(x)
    }

    /// Two-sided inverse, if the matrix is square and invertible.
    pub fn inverse(&self, p: u32) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let inv = self.solve(&Mat::identity(self.rows), p).ok()?;
        if self.mul(&inv, p) == Mat::identity(self.rows) {
            Some(inv)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_canonical_for_subspace() {
        // Two spanning sets of the same plane in F_3^3 reduce identically.
        let a = Mat::from_rows(vec![vec![1, 2, 0], vec![0, 1, 1]], 3, 3);
        let b = Mat::from_rows(vec![vec![1, 0, 1], vec![2, 2, 1]], 3, 3);
        assert_eq!(a.row_space_basis(3), b.row_space_basis(3));
    }

    #[test]
    fn kernel_of_projection_f2() {
        // f = [1 0] : F_2^2 -> F_2, kernel spanned by the second basis vector.
        let f = Mat::from_rows(vec![vec![1, 0]], 2, 2);
        let k = f.kernel_basis(2);
        assert_eq!((k.rows, k.cols), (2, 1));
        assert_eq!(k.col(0), vec![0, 1]);
    }

    #[test]
    fn solve_and_inverse() {
        let m = Mat::from_rows(vec![vec![1, 1], vec![0, 1]], 2, 5);
        let inv = m.inverse(5).unwrap();
        assert_eq!(m.mul(&inv, 5), Mat::identity(2));
        assert_eq!(inv.mul(&m, 5), Mat::identity(2));
        let rhs = Mat::from_rows(vec![vec![3], vec![4]], 1, 5);
        let x = m.solve(&rhs, 5).unwrap();
        assert_eq!(m.mul(&x, 5), rhs);
    }

    #[test]
    fn inconsistent_system_errors() {
        let m = Mat::from_rows(vec![vec![1, 0], vec![1, 0]], 2, 2);
        let rhs = Mat::from_rows(vec![vec![1], vec![0]], 1, 2);
        assert!(m.solve(&rhs, 2).is_err());
    }

    #[test]
    fn kronecker_dims_and_values() {
        let a = Mat::from_rows(vec![vec![1, 2]], 2, 3);
        let b = Mat::from_rows(vec![vec![1], vec![2]], 1, 3);
        let k = a.kronecker(&b, 3);
        assert_eq!((k.rows, k.cols), (2, 2));
        assert_eq!(k.data, vec![1, 2, 2, 4 % 3]);
    }
}
