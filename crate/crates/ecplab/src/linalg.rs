//! Dense exact matrices over a finite field, with entries stored as field
//! indices. Gaussian elimination uses a deterministic pivot rule: leftmost
//! column, first nonzero row from the top.

use std::fmt;

use crate::gf::Field;

#[derive(Clone)]
pub struct Matrix {
    spec: Field,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Outcome of solving a linear system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solve {
    Unique(Vec<u64>),
    Inconsistent,
    Underdetermined,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
            && self.spec.as_ref() == other.spec.as_ref()
    }
}
impl Eq for Matrix {}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            writeln!(f, "{:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zero(spec: &Field, rows: usize, cols: usize) -> Self {
        Matrix { spec: spec.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(spec: &Field, n: usize) -> Self {
        let mut m = Self::zero(spec, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(spec: &Field, rows: Vec<Vec<u64>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let nrows = rows.len();
        let data = rows.into_iter().flatten().collect();
        Matrix { spec: spec.clone(), rows: nrows, cols, data }
    }

    pub fn spec(&self) -> &Field {
        &self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(&self.spec, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { spec: self.spec.clone(), rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Submatrix keeping the given columns, in the given order.
    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zero(&self.spec, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m.set(r, j, self.get(r, c));
            }
        }
        m
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let f = &self.spec;
        let mut out = Matrix::zero(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let t = f.mul(a, other.get(k, c));
                    let cur = out.get(r, c);
                    out.set(r, c, f.add(cur, t));
                }
            }
        }
        out
    }

    /// `v * self` for a row vector `v` of length `rows`.
    pub fn left_mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.rows);
        let f = &self.spec;
        let mut out = vec![0u64; self.cols];
        for (r, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let row = self.row(r);
            for (c, &g) in row.iter().enumerate() {
                out[c] = f.add(out[c], f.mul(a, g));
            }
        }
        out
    }

    /// `self * v^T` for a vector `v` of length `cols`.
    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let f = &self.spec;
        (0..self.rows)
            .map(|r| {
                let mut acc = 0u64;
                for (c, &x) in v.iter().enumerate() {
                    acc = f.add(acc, f.mul(self.get(r, c), x));
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// In-place reduction to reduced row echelon form; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.spec.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let pivot_row = (r..self.rows).find(|&i| self.get(i, c) != 0);
            let Some(pr) = pivot_row else { continue };
            self.swap_rows(r, pr);
            let inv = f.inv(self.get(r, c)).expect("pivot nonzero");
            for j in c..self.cols {
                let v = self.get(r, j);
                self.set(r, j, f.mul(v, inv));
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let t = f.mul(factor, self.get(r, j));
                    let v = self.get(i, j);
                    self.set(i, j, f.sub(v, t));
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// RREF with zero rows removed.
    pub fn rref(&self) -> Matrix {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        m.data.truncate(rank * m.cols);
        m.rows = rank;
        m
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Basis of the right null space `{x : self * x^T = 0}`, rows of the
    /// returned matrix, in the canonical RREF free-column order.
    pub fn kernel(&self) -> Matrix {
        let f = self.spec.clone();
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zero(&f, free.len(), self.cols);
        for (bi, &fc) in free.iter().enumerate() {
            out.set(bi, fc, 1);
            for (pi, &pc) in pivots.iter().enumerate() {
                out.set(bi, pc, f.neg(m.get(pi, fc)));
            }
        }
        out
    }

    /// Solve `self * x^T = rhs^T`, distinguishing a unique solution from an
    /// inconsistent or underdetermined system.
    pub fn solve(&self, rhs: &[u64]) -> Solve {
        assert_eq!(rhs.len(), self.rows, "dimension mismatch");
        let mut aug = Matrix::zero(&self.spec, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, rhs[r]);
        }
        let pivots = aug.rref_in_place();
        if pivots.contains(&self.cols) {
            return Solve::Inconsistent;
        }
        if pivots.len() < self.cols {
            return Solve::Underdetermined;
        }
        let mut x = vec![0u64; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols);
        }
        Solve::Unique(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;

    #[test]
    fn rref_of_reduced_is_identity_block() {
        let f = FieldSpec::make(7, 1).unwrap();
        let m = Matrix::from_rows(&f, vec![vec![1, 0, 3, 4], vec![0, 1, 5, 6]]);
        assert_eq!(m.rref(), m);
    }

    #[test]
    fn kernel_dimension_rank_nullity() {
        let f = FieldSpec::make(7, 1).unwrap();
        let mut rng_state = 12345u64;
        let mut next = || {
            rng_state = rng_state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (rng_state >> 33) % 7
        };
        for _ in 0..20 {
            let rows: Vec<Vec<u64>> = (0..3).map(|_| (0..6).map(|_| next()).collect()).collect();
            let m = Matrix::from_rows(&f, rows);
            let rank = m.rank();
            let ker = m.kernel();
            assert_eq!(ker.rows(), 6 - rank);
            // kernel rows really are in the null space
            for r in 0..ker.rows() {
                assert!(m.mul_vec(ker.row(r)).iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn solve_identity() {
        let f = FieldSpec::make(7, 1).unwrap();
        let id = Matrix::identity(&f, 2);
        assert_eq!(id.solve(&[3, 4]), Solve::Unique(vec![3, 4]));
    }

    #[test]
    fn solve_reports_inconsistent_and_underdetermined() {
        let f = FieldSpec::make(5, 1).unwrap();
        let m = Matrix::from_rows(&f, vec![vec![1, 1], vec![2, 2]]);
        assert_eq!(m.solve(&[1, 3]), Solve::Inconsistent);
        assert_eq!(m.solve(&[1, 2]), Solve::Underdetermined);
    }
}
