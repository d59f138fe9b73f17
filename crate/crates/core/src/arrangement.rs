//! Coordinate-subspace arrangements.
//!
//! Each component of an [`Arrangement`] is a linear subspace cut out by a
//! set of coordinate variables, its *prime*. The radical ideal of the union
//! is the intersection of the primes, and its `m`-th symbolic power is the
//! intersection of the `m`-th powers of the primes. A monomial lies in that
//! symbolic power exactly when its degree in every prime's variables is at
//! least `m`.
//!
//! The builders cover the two families with closed-form theory: disjoint
//! coordinate lines pairing up consecutive variables, and the coordinate
//! vertices of a simplex.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{Limits, MonomialIdeal};
use crate::monomial::Monomial;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ArrangementRepr", into = "ArrangementRepr")]
pub struct Arrangement {
    num_vars: usize,
    primes: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct ArrangementRepr {
    num_vars: usize,
    primes: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl TryFrom<ArrangementRepr> for Arrangement {
    type Error = Error;
    fn try_from(repr: ArrangementRepr) -> Result<Self> {
        Arrangement::new(repr.num_vars, repr.primes, repr.labels)
    }
}

impl From<Arrangement> for ArrangementRepr {
    fn from(a: Arrangement) -> Self {
        ArrangementRepr {
            num_vars: a.num_vars,
            primes: a.primes,
            labels: a.labels,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Properties {
    /// Largest number of variables in a prime (the maximal height).
    pub h: usize,
    /// Whether every two components have disjoint free supports.
    pub pairwise_disjoint: bool,
}

/// The monomial map that sums exponents within each component's free
/// support, sending a pair-lines arrangement onto coordinate points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiMap {
    source_vars: usize,
    blocks: Vec<Vec<usize>>,
}

impl PhiMap {
    pub fn apply(&self, mu: &Monomial) -> Result<Monomial> {
        if mu.num_vars() != self.source_vars {
            return Err(Error::LengthMismatch {
                expected: self.source_vars,
                found: mu.num_vars(),
            });
        }
        let exps = self
            .blocks
            .iter()
            .map(|b| mu.degree_in(b))
            .collect::<Result<Vec<_>>>()?;
        Monomial::new(exps)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }
}

impl Arrangement {
    /// Validate and build. Each prime is sorted; component order is kept.
    pub fn new(num_vars: usize, primes: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidArrangement(msg));
        if num_vars == 0 {
            return bad("num_vars must be positive".into());
        }
        if primes.is_empty() {
            return bad("at least one component is required".into());
        }
        let mut sorted = Vec::with_capacity(primes.len());
        for (i, p) in primes.into_iter().enumerate() {
            let mut p = p;
            p.sort_unstable();
            if p.is_empty() {
                return bad(format!("component {i} has an empty prime"));
            }
            if p.windows(2).any(|w| w[0] == w[1]) {
                return bad(format!("component {i} repeats a variable"));
            }
            if let Some(&j) = p.iter().find(|&&j| j >= num_vars) {
                return Err(Error::IndexOutOfRange { index: j, num_vars });
            }
            if p.len() == num_vars {
                return bad(format!("component {i} uses every variable (empty subspace)"));
            }
            sorted.push(p);
        }
        for i in 0..sorted.len() {
            for k in (i + 1)..sorted.len() {
                if sorted[i] == sorted[k] {
                    return bad(format!("components {i} and {k} coincide"));
                }
            }
        }
        if let Some(l) = &labels {
            if l.len() != sorted.len() {
                return bad(format!("{} labels for {} components", l.len(), sorted.len()));
            }
        }
        Ok(Arrangement {
            num_vars,
            primes: sorted,
            labels,
        })
    }

    /// `s` disjoint coordinate lines in projective `big_n`-space; line `i`
    /// (zero-based) is spanned by `x_{2i}` and `x_{2i+1}`.
    pub fn pair_lines(s: usize, big_n: usize) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidArgument("s must be positive".into()));
        }
        let num_vars = big_n + 1;
        if 2 * s > num_vars {
            return Err(Error::InvalidArgument(format!(
                "{s} disjoint coordinate lines need 2s <= N+1, got N = {big_n}"
            )));
        }
        let primes = (0..s)
            .map(|i| (0..num_vars).filter(|&j| j / 2 != i).collect())
            .collect();
        let labels = (1..=s).map(|i| format!("L{i}")).collect();
        Arrangement::new(num_vars, primes, Some(labels))
    }

    /// The `n` coordinate vertices of projective `(n-1)`-space.
    pub fn coordinate_points(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "coordinate points need n >= 2, got {n}"
            )));
        }
        let primes = (0..n).map(|i| (0..n).filter(|&j| j != i).collect()).collect();
        let labels = (0..n).map(|i| format!("p{i}")).collect();
        Arrangement::new(n, primes, Some(labels))
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn primes(&self) -> &[Vec<usize>] {
        &self.primes
    }

    pub fn num_components(&self) -> usize {
        self.primes.len()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Variables spanning each component (complements of the primes).
    pub fn free_supports(&self) -> Vec<Vec<usize>> {
        self.primes
            .iter()
            .map(|p| {
                (0..self.num_vars)
                    .filter(|j| p.binary_search(j).is_err())
                    .collect()
            })
            .collect()
    }

    /// Whether `mu` lies in the `m`-th symbolic power. Nonpositive `m`
    /// denotes the unit ideal.
    pub fn membership(&self, m: i64, mu: &Monomial) -> Result<bool> {
        if mu.num_vars() != self.num_vars {
            return Err(Error::LengthMismatch {
                expected: self.num_vars,
                found: mu.num_vars(),
            });
        }
        if m <= 0 {
            return Ok(true);
        }
        let m = m as u64;
        for p in &self.primes {
            if mu.degree_in(p)? < m {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The `m`-th symbolic power as an explicit minimal generating set.
    pub fn symbolic_power(&self, m: u64, limits: &Limits) -> Result<MonomialIdeal> {
        if m == 0 {
            return Ok(MonomialIdeal::unit(self.num_vars));
        }
        let powers = self
            .primes
            .iter()
            .map(|p| MonomialIdeal::variable_power(self.num_vars, p, m))
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::intersect_all(self.num_vars, powers, limits)
    }

    /// The radical ideal of the arrangement (first symbolic power).
    pub fn ideal(&self, limits: &Limits) -> Result<MonomialIdeal> {
        self.symbolic_power(1, limits)
    }

    /// For a pair-type arrangement whose free supports are 2-element blocks
    /// partitioning the variables, return the coordinate-points arrangement
    /// with one point per component and the block-summing monomial map.
    pub fn flatten_phi(&self) -> Result<(Arrangement, PhiMap)> {
        let free = self.free_supports();
        let s = free.len();
        let not_pairs = || {
            Err(Error::InvalidArrangement(
                "flatten_phi needs free supports of size 2 partitioning the variables".into(),
            ))
        };
        if s < 2 || 2 * s != self.num_vars || free.iter().any(|f| f.len() != 2) {
            return not_pairs();
        }
        let mut seen = vec![false; self.num_vars];
        for &j in free.iter().flatten() {
            if seen[j] {
                return not_pairs();
            }
            seen[j] = true;
        }
        let points = Arrangement::coordinate_points(s)?;
        Ok((
            points,
            PhiMap {
                source_vars: self.num_vars,
                blocks: free,
            },
        ))
    }

    /// The same components inside a space with `extra_vars` more
    /// coordinates; every new variable joins every prime.
    pub fn embed(&self, extra_vars: usize) -> Arrangement {
        let num_vars = self.num_vars + extra_vars;
        let primes = self
            .primes
            .iter()
            .map(|p| p.iter().copied().chain(self.num_vars..num_vars).collect())
            .collect();
        Arrangement {
            num_vars,
            primes,
            labels: self.labels.clone(),
        }
    }

    pub fn properties(&self) -> Properties {
        let h = self.primes.iter().map(Vec::len).max().unwrap_or(0);
        let free = self.free_supports();
        let mut pairwise_disjoint = true;
        'outer: for i in 0..free.len() {
            for k in (i + 1)..free.len() {
                if free[i].iter().any(|j| free[k].binary_search(j).is_ok()) {
                    pairwise_disjoint = false;
                    break 'outer;
                }
            }
        }
        Properties { h, pairwise_disjoint }
    }

    /// Canonical JSON form, used for hashing.
    pub fn canonical_json(&self) -> String {
        let mut primes = self.primes.clone();
        primes.sort();
        let primes: Vec<String> = primes
            .iter()
            .map(|p| {
                let items: Vec<String> = p.iter().map(|j| j.to_string()).collect();
                format!("[{}]", items.join(","))
            })
            .collect();
        format!(
            "{{\"num_vars\":{},\"primes\":[{}]}}",
            self.num_vars,
            primes.join(",")
        )
    }
}
