//! Monomial ideals held as canonical minimal generating sets.
//!
//! A [`MonomialIdeal`] stores its irredundant generators sorted by the
//! graded order of [`Monomial`]. The empty list is the zero ideal and the
//! single generator `1` is the unit ideal; both behave totally under every
//! operation. Products and intersections expand all generator pairs and
//! minimalize; a [`Limits`] guard aborts a step before the expansion when
//! the pair count exceeds the configured bound.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// Expansion budget for pairwise ideal operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of generator pairs expanded in one product or
    /// intersection step, counted before minimalization.
    pub max_pairs: u64,
}

impl Limits {
    pub const DEFAULT_MAX_PAIRS: u64 = 5_000_000;

    pub fn new(max_pairs: u64) -> Self {
        Limits { max_pairs }
    }

    fn check(&self, left: usize, right: usize) -> Result<()> {
        let pairs = left as u128 * right as u128;
        if pairs > self.max_pairs as u128 {
            return Err(Error::ResourceGuard {
                pairs,
                limit: self.max_pairs,
            });
        }
        Ok(())
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits::new(Self::DEFAULT_MAX_PAIRS)
    }
}

// Expansion below this many pairs stays on the calling thread.
const PARALLEL_THRESHOLD: usize = 1 << 14;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "IdealRepr", into = "IdealRepr")]
pub struct MonomialIdeal {
    num_vars: usize,
    generators: Vec<Monomial>,
}

#[derive(Serialize, Deserialize)]
struct IdealRepr {
    num_vars: usize,
    generators: Vec<Monomial>,
}

impl TryFrom<IdealRepr> for MonomialIdeal {
    type Error = Error;
    fn try_from(repr: IdealRepr) -> Result<Self> {
        MonomialIdeal::minimalize(repr.generators, repr.num_vars)
    }
}

impl From<MonomialIdeal> for IdealRepr {
    fn from(ideal: MonomialIdeal) -> Self {
        IdealRepr {
            num_vars: ideal.num_vars,
            generators: ideal.generators,
        }
    }
}

/// Sort, dedup and drop every monomial divisible by a different one.
///
/// Works degree layer by layer: a monomial can only be divided by a distinct
/// monomial of strictly smaller degree, and the survivors of all lower layers
/// are final by the time a layer is examined.
fn minimal_sorted(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    if gens.par_iter().any(|g| g.is_one()) {
        let n = gens[0].num_vars();
        return vec![Monomial::one(n)];
    }
    gens.par_sort_unstable();
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::new();
    let mut start = 0;
    while start < gens.len() {
        let degree = gens[start].degree();
        let end = start + gens[start..].iter().take_while(|g| g.degree() == degree).count();
        let layer = &gens[start..end];
        let survivors: Vec<Monomial> = if layer.len() * kept.len().max(1) >= PARALLEL_THRESHOLD {
            layer
                .par_iter()
                .filter(|g| !kept.iter().any(|h| h.divides_raw(g)))
                .cloned()
                .collect()
        } else {
            layer
                .iter()
                .filter(|g| !kept.iter().any(|h| h.divides_raw(g)))
                .cloned()
                .collect()
        };
        kept.extend(survivors);
        start = end;
    }
    kept
}

fn pairwise<F>(left: &[Monomial], right: &[Monomial], op: F) -> Result<Vec<Monomial>>
where
    F: Fn(&Monomial, &Monomial) -> Result<Monomial> + Sync,
{
    if left.len() * right.len() >= PARALLEL_THRESHOLD {
        left.par_iter()
            .flat_map_iter(|a| right.iter().map(|b| op(a, b)).collect::<Vec<_>>())
            .collect()
    } else {
        left.iter().flat_map(|a| right.iter().map(|b| op(a, b))).collect()
    }
}

impl MonomialIdeal {
    /// The irredundant, canonically sorted generating set of `gens`.
    pub fn minimalize(gens: Vec<Monomial>, num_vars: usize) -> Result<Self> {
        if num_vars == 0 {
            return Err(Error::InvalidArgument("num_vars must be positive".into()));
        }
        if let Some(g) = gens.iter().find(|g| g.num_vars() != num_vars) {
            return Err(Error::LengthMismatch {
                expected: num_vars,
                found: g.num_vars(),
            });
        }
        Ok(MonomialIdeal {
            num_vars,
            generators: minimal_sorted(gens),
        })
    }

    pub fn zero(num_vars: usize) -> Self {
        MonomialIdeal {
            num_vars,
            generators: Vec::new(),
        }
    }

    pub fn unit(num_vars: usize) -> Self {
        MonomialIdeal {
            num_vars,
            generators: vec![Monomial::one(num_vars)],
        }
    }

    /// The ideal generated by a set of variables.
    pub fn from_variables(num_vars: usize, vars: &[usize]) -> Result<Self> {
        let gens = vars
            .iter()
            .map(|&j| Monomial::variable(num_vars, j, 1))
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::minimalize(gens, num_vars)
    }

    /// `(vars)^m`, generated directly by the degree-`m` monomials in `vars`.
    pub fn variable_power(num_vars: usize, vars: &[usize], m: u64) -> Result<Self> {
        if let Some(&j) = vars.iter().find(|&&j| j >= num_vars) {
            return Err(Error::IndexOutOfRange { index: j, num_vars });
        }
        if m == 0 {
            return Ok(MonomialIdeal::unit(num_vars));
        }
        if vars.is_empty() {
            return Ok(MonomialIdeal::zero(num_vars));
        }
        let mut gens = Vec::new();
        let mut exps = vec![0u64; num_vars];
        fill_compositions(vars, 0, m, &mut exps, &mut gens)?;
        MonomialIdeal::minimalize(gens, num_vars)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_one()
    }

    fn check_vars(&self, other: &MonomialIdeal) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::LengthMismatch {
                expected: self.num_vars,
                found: other.num_vars,
            });
        }
        Ok(())
    }

    pub fn contains_monomial(&self, mu: &Monomial) -> Result<bool> {
        if mu.num_vars() != self.num_vars {
            return Err(Error::LengthMismatch {
                expected: self.num_vars,
                found: mu.num_vars(),
            });
        }
        Ok(self.contains_raw(mu))
    }

    pub(crate) fn contains_raw(&self, mu: &Monomial) -> bool {
        // Generators are sorted by degree, so stop at the first one too large.
        self.generators
            .iter()
            .take_while(|g| g.degree() <= mu.degree())
            .any(|g| g.divides_raw(mu))
    }

    pub fn product(&self, other: &MonomialIdeal, limits: &Limits) -> Result<MonomialIdeal> {
        self.check_vars(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(MonomialIdeal::zero(self.num_vars));
        }
        if self.is_unit() {
            return Ok(other.clone());
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        limits.check(self.len(), other.len())?;
        let gens = pairwise(&self.generators, &other.generators, |a, b| a.mul_raw(b))?;
        Ok(MonomialIdeal {
            num_vars: self.num_vars,
            generators: minimal_sorted(gens),
        })
    }

    /// `self^r` by iterated multiplication, minimalizing after every step.
    pub fn power(&self, r: u64, limits: &Limits) -> Result<MonomialIdeal> {
        let mut acc = MonomialIdeal::unit(self.num_vars);
        for _ in 0..r {
            acc = acc.product(self, limits)?;
        }
        Ok(acc)
    }

    pub fn intersect(&self, other: &MonomialIdeal, limits: &Limits) -> Result<MonomialIdeal> {
        self.check_vars(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(MonomialIdeal::zero(self.num_vars));
        }
        if self.is_unit() {
            return Ok(other.clone());
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        limits.check(self.len(), other.len())?;
        let gens = pairwise(&self.generators, &other.generators, |a, b| a.lcm_raw(b))?;
        Ok(MonomialIdeal {
            num_vars: self.num_vars,
            generators: minimal_sorted(gens),
        })
    }

    /// Intersection of several ideals, folded smallest first. The empty
    /// intersection is the unit ideal.
    pub fn intersect_all(
        num_vars: usize,
        ideals: Vec<MonomialIdeal>,
        limits: &Limits,
    ) -> Result<MonomialIdeal> {
        let mut ideals = ideals;
        ideals.sort_by_key(|i| i.len());
        let mut acc = MonomialIdeal::unit(num_vars);
        for ideal in &ideals {
            acc = acc.intersect(ideal, limits)?;
        }
        Ok(acc)
    }

    pub fn is_subideal(&self, other: &MonomialIdeal) -> Result<bool> {
        self.check_vars(other)?;
        let check = |g: &Monomial| other.contains_raw(g);
        Ok(if self.len() * other.len().max(1) >= PARALLEL_THRESHOLD {
            self.generators.par_iter().all(check)
        } else {
            self.generators.iter().all(check)
        })
    }

    /// Least generator degree.
    pub fn alpha(&self) -> Result<u64> {
        self.generators
            .first()
            .map(Monomial::degree)
            .ok_or(Error::ZeroIdeal)
    }

    /// Largest degree in the minimal generating set.
    pub fn omega(&self) -> Result<u64> {
        self.generators
            .last()
            .map(Monomial::degree)
            .ok_or(Error::ZeroIdeal)
    }
}

fn fill_compositions(
    vars: &[usize],
    pos: usize,
    remaining: u64,
    exps: &mut Vec<u64>,
    out: &mut Vec<Monomial>,
) -> Result<()> {
    let j = vars[pos];
    if pos + 1 == vars.len() {
        exps[j] = remaining;
        out.push(Monomial::new(exps.clone())?);
        exps[j] = 0;
        return Ok(());
    }
    for e in (0..=remaining).rev() {
        exps[j] = e;
        fill_compositions(vars, pos + 1, remaining - e, exps, out)?;
    }
    exps[j] = 0;
    Ok(())
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, g) in self.generators.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self}) in {} vars", self.num_vars)
    }
}
