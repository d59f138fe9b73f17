//! Incidence types of an arrangement and type-compressed symbolic powers.
//!
//! Two variables have the same incidence type when they lie in exactly the
//! same primes. Membership of a monomial in a symbolic power depends only on
//! its type vector `w`, where `w_t` is the total exponent over variables of
//! type `t`. A monomial is a minimal generator exactly when its type vector
//! is minimal: it satisfies every prime, and lowering any positive entry by
//! one breaks some prime. Minimal generators are therefore enumerated by
//! minimal type vectors, and each vector lifts to
//! `prod_t C(w_t + k_t - 1, k_t - 1)` monomials, `k_t` the size of type `t`.
//! Variables lying in no prime never occur in a minimal generator.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::ideal::{Limits, MonomialIdeal};
use crate::monomial::Monomial;
use crate::simplex::CoveringMatrix;

/// Variables sharing one set of incident primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceType {
    /// Indices of the primes containing these variables, ascending.
    pub components: Vec<usize>,
    /// The variables of this type, ascending.
    pub vars: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Incidence {
    num_vars: usize,
    num_components: usize,
    types: Vec<IncidenceType>,
}

impl Incidence {
    pub fn of(arrangement: &Arrangement) -> Self {
        let mut by_set: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for j in 0..arrangement.num_vars() {
            let comps: Vec<usize> = arrangement
                .primes()
                .iter()
                .enumerate()
                .filter(|(_, p)| p.binary_search(&j).is_ok())
                .map(|(i, _)| i)
                .collect();
            if !comps.is_empty() {
                by_set.entry(comps).or_default().push(j);
            }
        }
        let mut types: Vec<IncidenceType> = by_set
            .into_iter()
            .map(|(components, vars)| IncidenceType { components, vars })
            .collect();
        types.sort_by(|a, b| a.vars[0].cmp(&b.vars[0]));
        Incidence {
            num_vars: arrangement.num_vars(),
            num_components: arrangement.num_components(),
            types,
        }
    }

    pub fn types(&self) -> &[IncidenceType] {
        &self.types
    }

    pub fn num_components(&self) -> usize {
        self.num_components
    }

    /// Rows are components, columns are incidence types.
    pub fn covering_matrix(&self) -> Result<CoveringMatrix> {
        CoveringMatrix::new(
            self.num_components,
            self.types.iter().map(|t| t.components.clone()).collect(),
        )
    }

    /// All minimal type vectors of the `m`-th symbolic power, in DFS order.
    /// Aborts once more than `limit` vectors have been found.
    pub fn minimal_type_vectors(&self, m: u64, limit: u64) -> Result<Vec<Vec<u64>>> {
        let mut out = Vec::new();
        self.visit_minimal(m, &mut |w| {
            if out.len() as u64 >= limit {
                return Err(Error::ResourceGuard {
                    pairs: out.len() as u128 + 1,
                    limit,
                });
            }
            out.push(w.to_vec());
            Ok(())
        })?;
        Ok(out)
    }

    /// Calls `f` on every minimal type vector of the `m`-th symbolic power.
    pub fn visit_minimal<F>(&self, m: u64, f: &mut F) -> Result<()>
    where
        F: FnMut(&[u64]) -> Result<()>,
    {
        if m == 0 {
            return f(&vec![0; self.types.len()]);
        }
        let mut suffix_cover = vec![vec![false; self.num_components]; self.types.len() + 1];
        for k in (0..self.types.len()).rev() {
            suffix_cover[k] = suffix_cover[k + 1].clone();
            for &i in &self.types[k].components {
                suffix_cover[k][i] = true;
            }
        }
        let mut residual = vec![m; self.num_components];
        let mut w = vec![0u64; self.types.len()];
        self.enumerate(0, m, &suffix_cover, &mut residual, &mut w, f)
    }

    fn enumerate<F>(
        &self,
        pos: usize,
        m: u64,
        suffix_cover: &[Vec<bool>],
        residual: &mut [u64],
        w: &mut [u64],
        f: &mut F,
    ) -> Result<()>
    where
        F: FnMut(&[u64]) -> Result<()>,
    {
        if residual
            .iter()
            .zip(&suffix_cover[pos])
            .any(|(&d, &c)| d > 0 && !c)
        {
            return Ok(());
        }
        if pos == self.types.len() {
            if self.is_minimal(m, w) {
                f(w)?;
            }
            return Ok(());
        }
        let comps = &self.types[pos].components;
        // More than the largest residual over this type's primes would leave
        // a unit removable from this type.
        let hi = comps.iter().map(|&i| residual[i]).max().unwrap_or(0);
        for v in 0..=hi {
            let saved: Vec<u64> = comps.iter().map(|&i| residual[i]).collect();
            for &i in comps {
                residual[i] = residual[i].saturating_sub(v);
            }
            w[pos] = v;
            self.enumerate(pos + 1, m, suffix_cover, residual, w, f)?;
            for (&i, &d) in comps.iter().zip(&saved) {
                residual[i] = d;
            }
        }
        w[pos] = 0;
        Ok(())
    }

    fn coverage(&self, w: &[u64]) -> Vec<u64> {
        let mut cov = vec![0u64; self.num_components];
        for (t, &v) in self.types.iter().zip(w) {
            for &i in &t.components {
                cov[i] += v;
            }
        }
        cov
    }

    /// Whether `w` satisfies every prime at level `m` and no positive entry
    /// can be lowered.
    pub fn is_minimal(&self, m: u64, w: &[u64]) -> bool {
        let cov = self.coverage(w);
        if cov.iter().any(|&c| c < m) {
            return false;
        }
        self.types
            .iter()
            .zip(w)
            .filter(|(_, &v)| v > 0)
            .all(|(t, _)| t.components.iter().any(|&i| cov[i] == m))
    }

    /// Number of monomials with type vector `w`.
    pub fn lift_count(&self, w: &[u64]) -> BigUint {
        self.types
            .iter()
            .zip(w)
            .map(|(t, &v)| {
                let k = t.vars.len() as u64;
                num_integer::binomial(BigUint::from(v + k - 1), BigUint::from(k - 1))
            })
            .fold(BigUint::one(), |a, b| a * b)
    }

    /// Number of minimal generators of the `m`-th symbolic power.
    pub fn generator_count(&self, m: u64) -> Result<BigUint> {
        let mut total = BigUint::zero();
        self.visit_minimal(m, &mut |w| {
            total += self.lift_count(w);
            Ok(())
        })?;
        Ok(total)
    }

    /// Least degree of a minimal generator, by enumeration.
    pub fn alpha_by_enumeration(&self, m: u64) -> Result<u64> {
        let mut best = u64::MAX;
        self.visit_minimal(m, &mut |w| {
            best = best.min(w.iter().sum());
            Ok(())
        })?;
        Ok(best)
    }

    /// The monomials with type vector `w`.
    pub fn lift(&self, w: &[u64]) -> Result<Vec<Monomial>> {
        let mut partial = vec![vec![0u64; self.num_vars]];
        for (t, &v) in self.types.iter().zip(w) {
            let mut next = Vec::new();
            for base in &partial {
                let mut exps = base.clone();
                compositions(&t.vars, 0, v, &mut exps, &mut next);
            }
            partial = next;
        }
        partial.into_iter().map(Monomial::new).collect()
    }

    /// The `m`-th symbolic power, generated by lifting minimal type vectors.
    /// The guard applies to the total generator count.
    pub fn symbolic_power(&self, m: u64, limits: &Limits) -> Result<MonomialIdeal> {
        let count = self.generator_count(m)?;
        if count > BigUint::from(limits.max_pairs) {
            return Err(Error::ResourceGuard {
                pairs: u128::try_from(&count).unwrap_or(u128::MAX),
                limit: limits.max_pairs,
            });
        }
        let mut gens = Vec::new();
        self.visit_minimal(m, &mut |w| {
            gens.extend(self.lift(w)?);
            Ok(())
        })?;
        MonomialIdeal::minimalize(gens, self.num_vars)
    }
}

fn compositions(vars: &[usize], at: usize, left: u64, exps: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if at + 1 == vars.len() {
        exps[vars[at]] = left;
        out.push(exps.clone());
        exps[vars[at]] = 0;
        return;
    }
    for v in 0..=left {
        exps[vars[at]] = v;
        compositions(vars, at + 1, left - v, exps, out);
    }
    exps[vars[at]] = 0;
}
