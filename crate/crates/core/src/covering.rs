//! Exact branch and bound for uniform-demand covering integer programs.
//!
//! Solves `min sum(w) s.t. sum_{t covers i} w_t >= d for every row i`,
//! `w` a nonnegative integer vector, over the columns of a
//! [`CoveringMatrix`]. Columns whose row set is contained in another
//! column's are dropped up front; they never improve an optimum. The search
//! walks the remaining columns depth first, largest first, trying high
//! counts before low ones so good incumbents appear early.
//!
//! Pruning uses the root packing optimum `y` of the LP relaxation: `y` is
//! feasible for every packing subproblem, so `ceil(sum_i y_i * residual_i)`
//! bounds the remaining cost from below at every node.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::fraction::{common_denominator, Fraction};
use crate::simplex::{solve_covering_lp, CoveringLpSolution, CoveringMatrix};

/// Optimal integer solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IlpSolution {
    pub optimum: u64,
    /// Optimal counts, one per column of the original matrix.
    pub counts: Vec<u64>,
}

/// A covering program prepared for repeated solves at different demands.
#[derive(Debug, Clone)]
pub struct CoveringIlp {
    matrix: CoveringMatrix,
    lp: CoveringLpSolution,
    // Surviving columns, sorted by size descending.
    order: Vec<usize>,
    // Integer packing weights `y_i * scale`.
    weights: Vec<u128>,
    scale: u128,
}

impl CoveringIlp {
    pub fn new(matrix: CoveringMatrix) -> Result<Self> {
        let lp = solve_covering_lp(&matrix)?;
        let scale_big = common_denominator(&lp.packing);
        let to_u128 = |b: &BigInt| {
            b.to_u128()
                .ok_or_else(|| Error::InvalidArgument("packing weights too large".into()))
        };
        let scale = to_u128(&scale_big)?;
        let weights = lp
            .packing
            .iter()
            .map(|y| to_u128(&(y.numer() * (&scale_big / y.denom()))))
            .collect::<Result<Vec<_>>>()?;

        let cols = matrix.columns();
        let mut order: Vec<usize> = Vec::new();
        for (j, col) in cols.iter().enumerate() {
            let dominated = cols.iter().enumerate().any(|(k, other)| {
                k != j
                    && col.iter().all(|i| other.contains(i))
                    && (other.len() > col.len() || (other.len() == col.len() && k < j))
            });
            if !dominated {
                order.push(j);
            }
        }
        order.sort_by(|&a, &b| cols[b].len().cmp(&cols[a].len()).then(a.cmp(&b)));
        Ok(CoveringIlp {
            matrix,
            lp,
            order,
            weights,
            scale,
        })
    }

    pub fn matrix(&self) -> &CoveringMatrix {
        &self.matrix
    }

    /// The certified LP relaxation at unit demand.
    pub fn lp(&self) -> &CoveringLpSolution {
        &self.lp
    }

    /// Optimal integer solution at uniform demand `demand`.
    pub fn solve(&self, demand: u64) -> IlpSolution {
        let cols = self.matrix.columns();
        let rows = self.matrix.num_rows();
        let mut counts = vec![0u64; cols.len()];
        if demand == 0 {
            return IlpSolution { optimum: 0, counts };
        }
        // suffix_cover[k][i]: some column at position >= k covers row i.
        let mut suffix_cover = vec![vec![false; rows]; self.order.len() + 1];
        for k in (0..self.order.len()).rev() {
            suffix_cover[k] = suffix_cover[k + 1].clone();
            for &i in &cols[self.order[k]] {
                suffix_cover[k][i] = true;
            }
        }
        let mut search = Search {
            cols,
            order: &self.order,
            weights: &self.weights,
            scale: self.scale,
            suffix_cover: &suffix_cover,
            best: u64::MAX,
            best_counts: Vec::new(),
            current: vec![0; self.order.len()],
        };
        let mut residual = vec![demand; rows];
        search.dfs(0, &mut residual, 0);
        for (pos, &j) in self.order.iter().enumerate() {
            counts[j] = search.best_counts[pos];
        }
        IlpSolution {
            optimum: search.best,
            counts,
        }
    }

    /// The LP optimum at unit demand.
    pub fn lp_value(&self) -> &Fraction {
        &self.lp.value
    }
}

struct Search<'a> {
    cols: &'a [Vec<usize>],
    order: &'a [usize],
    weights: &'a [u128],
    scale: u128,
    suffix_cover: &'a [Vec<bool>],
    best: u64,
    best_counts: Vec<u64>,
    current: Vec<u64>,
}

impl Search<'_> {
    fn lower_bound(&self, residual: &[u64]) -> u64 {
        let weighted: u128 = residual
            .iter()
            .zip(self.weights)
            .map(|(&d, &y)| d as u128 * y)
            .sum();
        let lp = weighted.div_ceil(self.scale) as u64;
        lp.max(residual.iter().copied().max().unwrap_or(0))
    }

    fn dfs(&mut self, pos: usize, residual: &mut [u64], used: u64) {
        if residual.iter().all(|&d| d == 0) {
            if used < self.best {
                self.best = used;
                self.best_counts = self.current.clone();
            }
            return;
        }
        if pos == self.order.len() {
            return;
        }
        if used + self.lower_bound(residual) >= self.best {
            return;
        }
        if residual
            .iter()
            .zip(&self.suffix_cover[pos])
            .any(|(&d, &c)| d > 0 && !c)
        {
            return;
        }
        let col = &self.cols[self.order[pos]];
        let hi = col.iter().map(|&i| residual[i]).max().unwrap_or(0);
        let last = pos + 1 == self.order.len();
        let lo = if last { hi } else { 0 };
        for w in (lo..=hi).rev() {
            let saved: Vec<u64> = col.iter().map(|&i| residual[i]).collect();
            for &i in col {
                residual[i] = residual[i].saturating_sub(w);
            }
            self.current[pos] = w;
            self.dfs(pos + 1, residual, used + w);
            for (&i, &d) in col.iter().zip(&saved) {
                residual[i] = d;
            }
        }
        self.current[pos] = 0;
    }
}
