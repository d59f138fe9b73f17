//! Arithmetic for deriving containments from known ones.
//!
//! A [`FactLedger`] holds facts `(c, b)` meaning `I^(c) ⊆ I^b`. If in
//! addition `I^(cm) = (I^(c))^m` for all `m`, then `I^(m) ⊆ I^r` whenever
//! `r <= m*b/c - b`, and the asymptotic resurgence is at most `c/b`.
//! Combining several facts under a factorization assumption
//! `I^(c_1 + ... + c_k) = I^(c_1) ... I^(c_k)` gives `I^(m) ⊆ I^(b_1 + ...
//! + b_k)`, which is an unbounded knapsack over the facts.
//!
//! Every derived containment is conditional on the ledger and the
//! factorization assumption; [`DerivedFact`] carries both.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fraction::Fraction;

/// Largest `m` solved by dynamic programming.
pub const DP_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LedgerRepr", into = "LedgerRepr")]
pub struct FactLedger {
    facts: BTreeSet<(u64, u64)>,
    factorization_assumed: bool,
}

#[derive(Serialize, Deserialize)]
struct LedgerRepr {
    facts: Vec<(u64, u64)>,
    #[serde(default)]
    factorization_assumed: bool,
}

impl TryFrom<LedgerRepr> for FactLedger {
    type Error = Error;
    fn try_from(repr: LedgerRepr) -> Result<Self> {
        FactLedger::new(repr.facts, repr.factorization_assumed)
    }
}

impl From<FactLedger> for LedgerRepr {
    fn from(l: FactLedger) -> Self {
        LedgerRepr {
            facts: l.facts.into_iter().collect(),
            factorization_assumed: l.factorization_assumed,
        }
    }
}

impl FactLedger {
    /// A ledger of `(c, b)` facts; `(1, 1)` is always added.
    pub fn new<I: IntoIterator<Item = (u64, u64)>>(facts: I, factorization_assumed: bool) -> Result<Self> {
        let mut ledger = FactLedger {
            facts: BTreeSet::from([(1, 1)]),
            factorization_assumed,
        };
        for (c, b) in facts {
            ledger.insert(c, b)?;
        }
        Ok(ledger)
    }

    pub fn insert(&mut self, c: u64, b: u64) -> Result<()> {
        if c == 0 || b == 0 {
            return Err(Error::InvalidLedger(format!(
                "fact ({c}, {b}) must have c, b >= 1"
            )));
        }
        if b > c {
            return Err(Error::InvalidLedger(format!(
                "fact ({c}, {b}) has b > c, but I^(m) is never inside I^r for m < r"
            )));
        }
        self.facts.insert((c, b));
        Ok(())
    }

    pub fn facts(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.facts.iter().copied()
    }

    /// Facts other than the trivial `(1, 1)`.
    pub fn nontrivial(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.facts().filter(|&f| f != (1, 1))
    }

    pub fn factorization_assumed(&self) -> bool {
        self.factorization_assumed
    }

    fn require_factorization(&self) -> Result<()> {
        if self.factorization_assumed {
            Ok(())
        } else {
            Err(Error::InvalidLedger(
                "derivation needs factorization_assumed = true".into(),
            ))
        }
    }
}

/// Whether `r <= m*b/c - b`, in exact arithmetic.
pub fn criterion_mbcb(c: u64, b: u64, m: u64, r: u64) -> bool {
    let (c, b, m, r) = (c as u128, b as u128, m as u128, r as u128);
    r * c + b * c <= m * b
}

/// The best conditional bound `min c/b` over the nontrivial facts.
pub fn asymptotic_bound(ledger: &FactLedger) -> Result<Fraction> {
    ledger
        .nontrivial()
        .map(|(c, b)| Fraction::from(c) / Fraction::from(b))
        .min()
        .ok_or_else(|| Error::InvalidLedger("ledger has no nontrivial facts".into()))
}

/// Largest `r` with `I^(m) ⊆ I^r` derivable by choosing fact sizes `c_k`
/// with sum at most `m` and adding the matching `b_k`. Unused remainder
/// contributes nothing, and the trivial fact `(1, 1)` never takes part,
/// since using it would assume `I^(k) = I^k`. Beyond [`DP_CAP`] the best
/// single fact repeated is used.
pub fn knapsack_derive(ledger: &FactLedger, m: u64) -> Result<u64> {
    ledger.require_factorization()?;
    let facts: Vec<(u64, u64)> = ledger.nontrivial().collect();
    if m > DP_CAP {
        return Ok(facts.iter().map(|&(c, b)| b * (m / c)).max().unwrap_or(0));
    }
    let table = knapsack_table(&facts, m);
    Ok(table[m as usize])
}

/// `best[k]` = max `sum b` with `sum c <= k`.
fn knapsack_table(facts: &[(u64, u64)], m: u64) -> Vec<u64> {
    let mut best = vec![0u64; m as usize + 1];
    for k in 1..=m as usize {
        let mut v = best[k - 1];
        for &(c, b) in facts {
            if c as usize <= k {
                v = v.max(best[k - c as usize] + b);
            }
        }
        best[k] = v;
    }
    best
}

/// Variant with a tail: `m = sum c_k + i` with `0 <= i` below the smallest
/// nontrivial `c`, giving `r = sum b_k + i`. This needs the stronger
/// assumption `I^(sum c_k + i) = prod I^(c_k) * I^i`.
pub fn knapsack_derive_with_tail(ledger: &FactLedger, m: u64) -> Result<u64> {
    ledger.require_factorization()?;
    let facts: Vec<(u64, u64)> = ledger.nontrivial().collect();
    let Some(min_c) = facts.iter().map(|&(c, _)| c).min() else {
        return Ok(m);
    };
    if m > DP_CAP {
        return Err(Error::InvalidArgument(format!("m exceeds {DP_CAP}")));
    }
    // exact[k] = max sum b with sum c == k exactly.
    let mut exact: Vec<Option<u64>> = vec![None; m as usize + 1];
    exact[0] = Some(0);
    for k in 1..=m as usize {
        exact[k] = facts
            .iter()
            .filter(|&&(c, _)| c as usize <= k)
            .filter_map(|&(c, b)| exact[k - c as usize].map(|v| v + b))
            .max();
    }
    Ok((0..min_c.min(m + 1))
        .filter_map(|i| exact[(m - i) as usize].map(|v| v + i))
        .max()
        .unwrap_or(0))
}

/// A containment derived from a ledger, never to be mixed up with a
/// generator-verified one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedFact {
    pub m: u64,
    pub r: u64,
    pub status: String,
    pub hypotheses: FactLedger,
}

pub fn derive_fact(ledger: &FactLedger, m: u64) -> Result<DerivedFact> {
    Ok(DerivedFact {
        m,
        r: knapsack_derive(ledger, m)?,
        status: "conditional".into(),
        hypotheses: ledger.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mod_nine_ledger() -> FactLedger {
        FactLedger::new([(9, 8), (3, 2), (6, 5)], true).unwrap()
    }

    #[test]
    fn criterion_examples() {
        assert!(criterion_mbcb(10, 8, 15, 4));
        assert!(!criterion_mbcb(10, 8, 10, 1));
        assert!(criterion_mbcb(2, 1, 4, 1));
    }

    #[test]
    fn bound_examples() {
        let b = |c, b| asymptotic_bound(&FactLedger::new([(c, b)], false).unwrap()).unwrap();
        assert_eq!(b(10, 8), Fraction::new(5, 4));
        assert_eq!(b(24, 21), Fraction::new(8, 7));
        assert_eq!(b(102, 72), Fraction::new(17, 12));
        assert!(asymptotic_bound(&FactLedger::new([], false).unwrap()).is_err());
    }

    #[test]
    fn ledger_validation() {
        assert!(FactLedger::new([(2, 3)], true).is_err());
        assert!(FactLedger::new([(0, 0)], true).is_err());
        let l = FactLedger::new([], false).unwrap();
        assert!(l.facts().any(|f| f == (1, 1)));
        assert!(knapsack_derive(&l, 5).is_err());
    }

    #[test]
    fn ledger_json() {
        let l: FactLedger =
            serde_json::from_str(r#"{"facts":[[9,8],[3,2]],"factorization_assumed":true}"#).unwrap();
        assert_eq!(l.facts().count(), 3);
        let text = serde_json::to_string(&l).unwrap();
        assert_eq!(
            text,
            r#"{"facts":[[1,1],[3,2],[9,8]],"factorization_assumed":true}"#
        );
        assert!(serde_json::from_str::<FactLedger>(r#"{"facts":[[1,2]]}"#).is_err());
    }

    #[test]
    fn knapsack_examples() {
        let l = mod_nine_ledger();
        assert_eq!(knapsack_derive(&l, 9).unwrap(), 8);
        assert_eq!(knapsack_derive(&l, 12).unwrap(), 10);
        assert_eq!(knapsack_derive(&l, 21).unwrap(), 18);
    }

    #[test]
    fn knapsack_ratio_threshold() {
        let l = mod_nine_ledger();
        for m in 1..=500u64 {
            let r = knapsack_derive(&l, m).unwrap();
            assert!(9 * r <= 8 * m, "m={m} r={r}");
            if m % 9 == 0 {
                assert_eq!(9 * r, 8 * m);
            }
        }
    }

    #[test]
    fn tail_variant_reaches_floor() {
        let l = FactLedger::new([(3, 2)], true).unwrap();
        for m in 1..=200u64 {
            let r = knapsack_derive_with_tail(&l, m).unwrap();
            assert_eq!(r, 2 * (m / 3) + m % 3);
        }
        let l = mod_nine_ledger();
        for m in 1..=200u64 {
            assert!(knapsack_derive_with_tail(&l, m).unwrap() >= 8 * m / 9);
        }
    }

    #[test]
    fn closed_form_beyond_cap() {
        let l = mod_nine_ledger();
        assert_eq!(knapsack_derive(&l, 9 * 200_000).unwrap(), 8 * 200_000);
        assert_eq!(knapsack_derive(&l, DP_CAP + 9).unwrap(), 8 * ((DP_CAP + 9) / 9));
    }

    #[test]
    fn derived_fact_is_conditional() {
        let d = derive_fact(&mod_nine_ledger(), 9).unwrap();
        assert_eq!(d.status, "conditional");
        assert_eq!(d.r, 8);
    }

    proptest! {
        #[test]
        fn superadditive(m1 in 1u64..200, m2 in 1u64..200) {
            let l = mod_nine_ledger();
            let d = |m| knapsack_derive(&l, m).unwrap();
            prop_assert!(d(m1) + d(m2) <= d(m1 + m2));
        }

        #[test]
        fn dominates_criterion(c in 1u64..20, b0 in 1u64..20, m in 1u64..200, r in 1u64..200) {
            let b = b0.min(c);
            prop_assume!((c, b) != (1, 1));
            let l = FactLedger::new([(c, b)], true).unwrap();
            if criterion_mbcb(c, b, m, r) {
                prop_assert!(knapsack_derive(&l, m).unwrap() >= r);
            }
        }
    }
}
