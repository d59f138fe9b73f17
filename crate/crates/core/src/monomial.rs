//! Exponent-vector monomials.
//!
//! A [`Monomial`] over `n` variables is a vector of `n` nonnegative `u64`
//! exponents. Arithmetic is checked: exponent or degree overflow is an
//! error, never a wraparound. The total order is graded: total degree
//! first, then lexicographic with `x0 > x1 > ...`, larger first. Sorting
//! ascending under this order lists `x0*x2` before `x0*x3` before `x1*x2`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u64]>,
    degree: u64,
    // Bit j set iff exps[j] > 0, for j < 64. Only used as a divisibility prefilter.
    support: u64,
}

fn support_mask(exps: &[u64]) -> u64 {
    exps.iter()
        .take(64)
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .fold(0u64, |acc, (j, _)| acc | (1u64 << j))
}

impl Monomial {
    pub fn new(exps: Vec<u64>) -> Result<Self> {
        let degree = exps
            .iter()
            .try_fold(0u64, |acc, &e| acc.checked_add(e))
            .ok_or(Error::ExponentOverflow)?;
        let support = support_mask(&exps);
        Ok(Monomial {
            exps: exps.into_boxed_slice(),
            degree,
            support,
        })
    }

    /// The unit monomial `1` in `num_vars` variables.
    pub fn one(num_vars: usize) -> Self {
        Monomial {
            exps: vec![0; num_vars].into_boxed_slice(),
            degree: 0,
            support: 0,
        }
    }

    /// `x_index^exponent`.
    pub fn variable(num_vars: usize, index: usize, exponent: u64) -> Result<Self> {
        if index >= num_vars {
            return Err(Error::IndexOutOfRange { index, num_vars });
        }
        let mut exps = vec![0; num_vars];
        exps[index] = exponent;
        Monomial::new(exps)
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exps
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Total degree.
    pub fn degree(&self) -> u64 {
        self.degree
    }

    /// Degree over a subset of the variables.
    pub fn degree_in(&self, vars: &[usize]) -> Result<u64> {
        let mut total = 0u64;
        for &j in vars {
            let e = *self.exps.get(j).ok_or(Error::IndexOutOfRange {
                index: j,
                num_vars: self.exps.len(),
            })?;
            total = total.checked_add(e).ok_or(Error::ExponentOverflow)?;
        }
        Ok(total)
    }

    fn check_len(&self, other: &Monomial) -> Result<()> {
        if self.exps.len() != other.exps.len() {
            return Err(Error::LengthMismatch {
                expected: self.exps.len(),
                found: other.exps.len(),
            });
        }
        Ok(())
    }

    pub fn multiply(&self, other: &Monomial) -> Result<Monomial> {
        self.check_len(other)?;
        self.mul_raw(other)
    }

    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.divides_raw(other))
    }

    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check_len(other)?;
        self.lcm_raw(other)
    }

    /// Product without the length check. Callers guarantee equal lengths.
    pub(crate) fn mul_raw(&self, other: &Monomial) -> Result<Monomial> {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<Vec<u64>>>()
            .ok_or(Error::ExponentOverflow)?;
        let degree = self
            .degree
            .checked_add(other.degree)
            .ok_or(Error::ExponentOverflow)?;
        Ok(Monomial {
            exps: exps.into_boxed_slice(),
            degree,
            support: self.support | other.support,
        })
    }

    #[inline]
    pub(crate) fn divides_raw(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        if self.degree > other.degree || self.support & !other.support != 0 {
            return false;
        }
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub(crate) fn lcm_raw(&self, other: &Monomial) -> Result<Monomial> {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps: Vec<u64> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| *a.max(b))
            .collect();
        let degree = exps
            .iter()
            .try_fold(0u64, |acc, &e| acc.checked_add(e))
            .ok_or(Error::ExponentOverflow)?;
        Ok(Monomial {
            exps: exps.into_boxed_slice(),
            degree,
            support: self.support | other.support,
        })
    }

    /// Parse the textual form (`x0^2*x3`, `1`) into a monomial over
    /// `num_vars` variables. Repeated factors accumulate.
    pub fn parse(text: &str, num_vars: usize) -> Result<Monomial> {
        let text = text.trim();
        let mut exps = vec![0u64; num_vars];
        if text == "1" {
            return Monomial::new(exps);
        }
        for factor in text.split('*') {
            let factor = factor.trim();
            let bad = || Error::Parse(format!("bad monomial factor {factor:?}"));
            let rest = factor.strip_prefix('x').ok_or_else(bad)?;
            let (idx, exp) = match rest.split_once('^') {
                Some((i, e)) => (i, e.parse::<u64>().map_err(|_| bad())?),
                None => (rest, 1),
            };
            let idx: usize = idx.parse().map_err(|_| bad())?;
            if idx >= num_vars {
                return Err(Error::IndexOutOfRange { index: idx, num_vars });
            }
            exps[idx] = exps[idx].checked_add(exp).ok_or(Error::ExponentOverflow)?;
        }
        Monomial::new(exps)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (j, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{j}")?;
            } else {
                write!(f, "x{j}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}{:?}", self.exps)
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.exps.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let exps = Vec::<u64>::deserialize(deserializer)?;
        Monomial::new(exps).map_err(serde::de::Error::custom)
    }
}
