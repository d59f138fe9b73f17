//! Exact-rational simplex for 0/1 covering programs.
//!
//! The covering LP `min sum(e) s.t. sum_{j covers i} e_j >= 1, e >= 0` is
//! solved through its dual packing LP `max sum(y) s.t. sum_{i in col j} y_i
//! <= 1, y >= 0`, whose slack basis is feasible from the start, so no
//! phase one is needed. At optimality the covering solution is read off the
//! reduced costs of the slack columns and is a basic (vertex) solution.
//! Bland's rule rules out cycling. All arithmetic is over `BigRational`.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fraction::Fraction;

/// A covering problem: `columns[j]` lists the rows covered by column `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringMatrix {
    num_rows: usize,
    columns: Vec<Vec<usize>>,
}

impl CoveringMatrix {
    pub fn new(num_rows: usize, columns: Vec<Vec<usize>>) -> Result<Self> {
        for col in &columns {
            if let Some(&i) = col.iter().find(|&&i| i >= num_rows) {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    num_vars: num_rows,
                });
            }
        }
        for i in 0..num_rows {
            if !columns.iter().any(|c| c.contains(&i)) {
                return Err(Error::InvalidArgument(format!(
                    "row {i} is not covered by any column"
                )));
            }
        }
        Ok(CoveringMatrix { num_rows, columns })
    }

    pub fn num_rows(&self) -> usize {
        self.num_rows
    }

    pub fn columns(&self) -> &[Vec<usize>] {
        &self.columns
    }

    /// Row sums `sum_{j covers i} x_j`.
    pub fn row_coverage<T>(&self, x: &[T]) -> Vec<T>
    where
        T: Clone + Default + for<'a> std::ops::AddAssign<&'a T>,
    {
        let mut cov = vec![T::default(); self.num_rows];
        for (col, v) in self.columns.iter().zip(x) {
            for &i in col {
                cov[i] += v;
            }
        }
        cov
    }
}

/// Optimal primal/dual pair of the covering LP.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringLpSolution {
    pub value: Fraction,
    /// Covering solution, one entry per column.
    pub cover: Vec<Fraction>,
    /// Packing (dual) solution, one entry per row.
    pub packing: Vec<Fraction>,
}

impl CoveringLpSolution {
    /// Check primal feasibility, dual feasibility and equal objectives.
    /// Together these prove optimality by weak duality.
    pub fn certify(&self, matrix: &CoveringMatrix) -> Result<()> {
        let fail = |msg: &str| Err(Error::Inconsistent(format!("LP certificate: {msg}")));
        if self.cover.len() != matrix.columns.len() || self.packing.len() != matrix.num_rows {
            return fail("dimension mismatch");
        }
        if self.cover.iter().chain(&self.packing).any(Fraction::is_negative) {
            return fail("negative entry");
        }
        let one = Fraction::one();
        if matrix.row_coverage(&self.cover).iter().any(|c| c < &one) {
            return fail("covering constraint violated");
        }
        for col in &matrix.columns {
            let load: Fraction = col.iter().map(|&i| self.packing[i].clone()).sum();
            if load > one {
                return fail("packing constraint violated");
            }
        }
        let primal: Fraction = self.cover.iter().cloned().sum();
        let dual: Fraction = self.packing.iter().cloned().sum();
        if primal != self.value || dual != self.value {
            return fail("objective mismatch");
        }
        Ok(())
    }
}

/// Solve the covering LP exactly.
pub fn solve_covering_lp(matrix: &CoveringMatrix) -> Result<CoveringLpSolution> {
    let rows = matrix.num_rows;
    let cons = matrix.columns.len();
    let width = rows + cons + 1;
    let rhs = width - 1;
    let zero = BigRational::zero();
    let one = BigRational::one();

    let mut tab: Vec<Vec<BigRational>> = Vec::with_capacity(cons);
    for (j, col) in matrix.columns.iter().enumerate() {
        let mut row = vec![zero.clone(); width];
        for &i in col {
            row[i] = one.clone();
        }
        row[rows + j] = one.clone();
        row[rhs] = one.clone();
        tab.push(row);
    }
    let mut obj = vec![zero.clone(); width];
    for v in obj.iter_mut().take(rows) {
        *v = -one.clone();
    }
    let mut basis: Vec<usize> = (rows..rows + cons).collect();

    while let Some(enter) = (0..rhs).find(|&k| obj[k].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for (r, row) in tab.iter().enumerate() {
            if !row[enter].is_positive() {
                continue;
            }
            let ratio = &row[rhs] / &row[enter];
            let better = match &leave {
                None => true,
                Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        let Some((pr, _)) = leave else {
            return Err(Error::InvalidArgument("covering LP is infeasible".into()));
        };
        let piv = tab[pr][enter].clone();
        for v in tab[pr].iter_mut() {
            *v = &*v / &piv;
        }
        let pivot_row = tab[pr].clone();
        for (r, row) in tab.iter_mut().enumerate() {
            if r == pr || row[enter].is_zero() {
                continue;
            }
            let factor = row[enter].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v = &*v - &factor * p;
                }
            }
        }
        let factor = obj[enter].clone();
        for (v, p) in obj.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *v = &*v - &factor * p;
            }
        }
        basis[pr] = enter;
    }

    let mut packing = vec![Fraction::zero(); rows];
    for (r, &b) in basis.iter().enumerate() {
        if b < rows {
            packing[b] = Fraction::from(tab[r][rhs].clone());
        }
    }
    let cover = (0..cons).map(|j| Fraction::from(obj[rows + j].clone())).collect();
    let solution = CoveringLpSolution {
        value: Fraction::from(obj[rhs].clone()),
        cover,
        packing,
    };
    solution.certify(matrix)?;
    Ok(solution)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_row() {
        let m = CoveringMatrix::new(1, vec![vec![0], vec![0]]).unwrap();
        let s = solve_covering_lp(&m).unwrap();
        assert_eq!(s.value, Fraction::one());
    }

    #[test]
    fn triangle_cover() {
        // Rows = edges of a triangle as "points", columns hit two rows each.
        let m = CoveringMatrix::new(3, vec![vec![1, 2], vec![0, 2], vec![0, 1]]).unwrap();
        let s = solve_covering_lp(&m).unwrap();
        assert_eq!(s.value, Fraction::new(3, 2));
        s.certify(&m).unwrap();
    }

    #[test]
    fn uncovered_row_rejected() {
        assert!(CoveringMatrix::new(2, vec![vec![0]]).is_err());
    }

    #[test]
    fn degenerate_problem_terminates() {
        // Many identical and nested columns give a degenerate dual.
        let cols = vec![vec![0, 1], vec![0, 1], vec![0], vec![1], vec![0, 1, 2], vec![2]];
        let m = CoveringMatrix::new(3, cols).unwrap();
        let s = solve_covering_lp(&m).unwrap();
        assert_eq!(s.value, Fraction::one());
    }

    #[test]
    fn tampered_certificate_fails() {
        let m = CoveringMatrix::new(3, vec![vec![1, 2], vec![0, 2], vec![0, 1]]).unwrap();
        let mut s = solve_covering_lp(&m).unwrap();
        s.value = Fraction::new(4, 3);
        assert!(s.certify(&m).is_err());
    }
}
