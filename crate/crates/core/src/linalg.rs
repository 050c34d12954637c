//! Dense exact linear algebra over the rationals.
//!
//! Matrices here stay small (weight blocks, derivation blocks, isotropy maps),
//! so plain Gauss-Jordan elimination over [`Q`] is used throughout.

use num_traits::Zero;

use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: Vec<Vec<Q>>,
    ncols: usize,
}

impl Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            rows: vec![vec![Q::zero(); ncols]; nrows],
            ncols,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Q>>, ncols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        Self { rows, ncols }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = crate::rational::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Q) {
        self.rows[i][j] = value;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ncols, self.nrows());
        for (i, row) in self.rows.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                t.rows[j][i] = x.clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols, other.nrows());
        let mut out = Self::zeros(self.nrows(), other.ncols);
        for (i, row) in self.rows.iter().enumerate() {
            for (k, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.rows[k].iter().enumerate() {
                    if !b.is_zero() {
                        out.rows[i][j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.ncols, v.len());
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Reduced row echelon form and pivot columns. Zero rows are dropped.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][c].recip();
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let factor = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &factor * y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        (Matrix::from_rows(rows, self.ncols), pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : A x = 0}`, one vector per free column, with a 1 in that column.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); self.ncols];
                v[f] = crate::rational::one();
                for (row, &p) in r.rows.iter().zip(&pivots) {
                    v[p] = -row[f].clone();
                }
                v
            })
            .collect()
    }

    /// Some solution of `A x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.nrows());
        let mut aug = self.rows.clone();
        for (row, bi) in aug.iter_mut().zip(b) {
            row.push(bi.clone());
        }
        let (r, pivots) = Matrix::from_rows(aug, self.ncols + 1).rref();
        if pivots.last() == Some(&self.ncols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.ncols];
        for (row, &p) in r.rows.iter().zip(&pivots) {
            x[p] = row[self.ncols].clone();
        }
        Some(x)
    }

    /// Row spaces of `self` and `other` coincide.
    pub fn same_row_space(&self, other: &Matrix) -> bool {
        self.ncols == other.ncols && self.rref().0 == other.rref().0
    }
}

/// Incrementally maintained echelon basis of a row space, remembering how each
/// reduced row was formed from the accepted input rows.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    width: usize,
    // (pivot column, reduced row, combination of accepted rows giving it)
    rows: Vec<(usize, Vec<Q>, Vec<Q>)>,
    accepted: usize,
}

impl EchelonBasis {
    pub fn new(width: usize) -> Self {
        Self {
            width,
            rows: Vec::new(),
            accepted: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.accepted
    }

    pub fn is_empty(&self) -> bool {
        self.accepted == 0
    }

    /// Reduces `v` against the basis; returns the residual and the combination
    /// `c` of accepted rows with `v = residual + sum c_i row_i`.
    fn reduce(&self, v: &[Q]) -> (Vec<Q>, Vec<Q>) {
        let mut residual = v.to_vec();
        let mut combo = vec![Q::zero(); self.accepted];
        for (p, row, how) in &self.rows {
            if residual[*p].is_zero() {
                continue;
            }
            let f = residual[*p].clone();
            for (x, y) in residual.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            for (c, h) in combo.iter_mut().zip(how) {
                if !h.is_zero() {
                    *c += &f * h;
                }
            }
        }
        (residual, combo)
    }

    /// Adds `v` if it is independent of the current basis. Returns whether it was added.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        assert_eq!(v.len(), self.width);
        let (residual, combo) = self.reduce(v);
        let Some(p) = residual.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = residual[p].recip();
        let row: Vec<Q> = residual.iter().map(|x| x * &inv).collect();
        // row = (v - sum combo_i acc_i) / residual[p]
        let mut how: Vec<Q> = combo.iter().map(|c| -(c * &inv)).collect();
        how.push(inv);
        for (_, _, h) in self.rows.iter_mut() {
            h.push(Q::zero());
        }
        self.accepted += 1;
        // keep earlier rows reduced at the new pivot so reduce() stays one pass
        for i in 0..self.rows.len() {
            let f = self.rows[i].1[p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in self.rows[i].1.iter_mut().zip(&row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            for (x, y) in self.rows[i].2.iter_mut().zip(&how) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push((p, row, how));
        true
    }

    /// Coefficients expressing `v` in the accepted rows, if `v` lies in their span.
    pub fn express(&self, v: &[Q]) -> Option<Vec<Q>> {
        let (residual, combo) = self.reduce(v);
        residual.iter().all(Zero::is_zero).then_some(combo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        let n = rows[0].len();
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect(), n)
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = m(&[&[1, 1], &[2, 2]]);
        assert!(a.solve(&[q(1), q(3)]).is_none());
        let x = a.solve(&[q(1), q(2)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![q(1), q(2)]);
    }

    #[test]
    fn echelon_basis_expresses_dependent_rows() {
        let mut e = EchelonBasis::new(3);
        assert!(e.insert(&[q(1), q(1), q(0)]));
        assert!(e.insert(&[q(0), q(2), q(1)]));
        assert!(!e.insert(&[q(1), q(3), q(1)]));
        let c = e.express(&[q(2), q(0), q(-1)]).unwrap();
        assert_eq!(c, vec![q(2), q(-1)]);
        assert!(e.express(&[q(0), q(0), q(1)]).is_none());
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in proptest::collection::vec(-3i64..=3, 12)) {
            let a = Matrix::from_rows(entries.chunks(4).map(|r| r.iter().map(|&x| q(x)).collect()).collect(), 4);
            let ns = a.nullspace();
            prop_assert_eq!(a.rank() + ns.len(), 4);
            for v in &ns {
                prop_assert!(a.mul_vec(v).iter().all(Zero::is_zero));
            }
        }
    }
}
