//! Certified invariants of an arrangement: initial degrees of symbolic
//! powers, the Waldschmidt constant, containment decisions and resurgence
//! windows.
//!
//! `alpha(I^(m))` is the optimum of the covering integer program
//! `min sum(e) s.t. sum_{j in P_i} e_j >= m`, solved over incidence types.
//!
//! The Waldschmidt constant equals the LP optimum `L` of the same program at
//! `m = 1`. Scaling any feasible `e` shows `alpha(I^(m)) >= m*L` for all `m`.
//! Conversely, if `e*` is an optimal vertex and `q` the common denominator
//! of its entries, then `k*q*e*` is an integral feasible point at level
//! `k*q`, so `alpha(I^(kq)) = kqL` and the limit is exactly `L`. The
//! [`GammaCertificate`] stores `e*`, the dual packing, `q` and the ILP value
//! at level `q`; [`GammaCertificate::validate`] rechecks all of it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::covering::CoveringIlp;
use crate::error::{Error, Result};
use crate::fraction::{common_denominator, Fraction};
use crate::ideal::{Limits, MonomialIdeal};
use crate::incidence::Incidence;

/// An exact interval `[lo, hi]` with the rule behind each endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundInterval {
    pub lo: Fraction,
    pub hi: Fraction,
    pub lo_provenance: String,
    pub hi_provenance: String,
}

impl BoundInterval {
    pub fn new(
        lo: Fraction,
        hi: Fraction,
        lo_provenance: impl Into<String>,
        hi_provenance: impl Into<String>,
    ) -> Result<Self> {
        if lo > hi {
            return Err(Error::Inconsistent(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(BoundInterval {
            lo,
            hi,
            lo_provenance: lo_provenance.into(),
            hi_provenance: hi_provenance.into(),
        })
    }

    pub fn contains(&self, x: &Fraction) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn width(&self) -> Fraction {
        &self.hi - &self.lo
    }
}

/// Initial-degree solver for one arrangement, reusable across `m`.
#[derive(Debug, Clone)]
pub struct AlphaSolver {
    incidence: Incidence,
    ilp: CoveringIlp,
}

impl AlphaSolver {
    pub fn new(arrangement: &Arrangement) -> Result<Self> {
        let incidence = Incidence::of(arrangement);
        let ilp = CoveringIlp::new(incidence.covering_matrix()?)?;
        Ok(AlphaSolver { incidence, ilp })
    }

    pub fn incidence(&self) -> &Incidence {
        &self.incidence
    }

    pub fn ilp(&self) -> &CoveringIlp {
        &self.ilp
    }

    /// `alpha(I^(m))`; zero at `m = 0`.
    pub fn alpha(&self, m: u64) -> u64 {
        self.ilp.solve(m).optimum
    }
}

/// `alpha(I^(m))` by the covering integer program.
pub fn alpha_symbolic(arrangement: &Arrangement, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    Ok(AlphaSolver::new(arrangement)?.alpha(m))
}

/// Machine-checkable proof of an exact Waldschmidt constant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaCertificate {
    pub value: Fraction,
    /// Optimal covering vertex, one entry per variable.
    pub vertex: Vec<Fraction>,
    /// Optimal packing, one entry per component.
    pub dual: Vec<Fraction>,
    /// Common denominator `q` of the vertex.
    pub level: u64,
    /// `alpha(I^(q))` from the integer program; equals `q * value`.
    pub alpha_at_level: u64,
    pub provenance: String,
}

impl GammaCertificate {
    /// Recheck feasibility, duality, integrality at level `q` and agreement
    /// with the integer program.
    pub fn validate(&self, arrangement: &Arrangement) -> Result<()> {
        let fail = |msg: String| Err(Error::Inconsistent(format!("gamma certificate: {msg}")));
        let n = arrangement.num_vars();
        let primes = arrangement.primes();
        if self.vertex.len() != n || self.dual.len() != primes.len() {
            return fail("dimension mismatch".into());
        }
        if self.vertex.iter().chain(&self.dual).any(Fraction::is_negative) {
            return fail("negative entry".into());
        }
        let one = Fraction::one();
        for (i, p) in primes.iter().enumerate() {
            let load: Fraction = p.iter().map(|&j| self.vertex[j].clone()).sum();
            if load < one {
                return fail(format!("component {i} is not covered"));
            }
        }
        for j in 0..n {
            let load: Fraction = primes
                .iter()
                .zip(&self.dual)
                .filter(|(p, _)| p.binary_search(&j).is_ok())
                .map(|(_, y)| y.clone())
                .sum();
            if load > one {
                return fail(format!("packing overloads variable {j}"));
            }
        }
        let primal: Fraction = self.vertex.iter().cloned().sum();
        let dual: Fraction = self.dual.iter().cloned().sum();
        if primal != self.value || dual != self.value {
            return fail("objective mismatch".into());
        }
        let q = common_denominator(&self.vertex);
        if q != BigInt::from(self.level) {
            return fail(format!("level {} is not the vertex denominator {q}", self.level));
        }
        let q_frac = Fraction::from(self.level);
        let scaled: Vec<Fraction> = self.vertex.iter().map(|e| e * &q_frac).collect();
        if scaled.iter().any(|e| !e.is_integer()) {
            return fail("scaled vertex is not integral".into());
        }
        let target = &self.value * &q_frac;
        if target != Fraction::from(self.alpha_at_level) {
            return fail(format!(
                "alpha at level {} is {}, expected {target}",
                self.level, self.alpha_at_level
            ));
        }
        let recomputed = AlphaSolver::new(arrangement)?.alpha(self.level);
        if recomputed != self.alpha_at_level {
            return fail(format!(
                "integer program gives {recomputed} at level {}",
                self.level
            ));
        }
        Ok(())
    }
}

/// The exact Waldschmidt constant with its certificate.
pub fn gamma_exact(arrangement: &Arrangement) -> Result<GammaCertificate> {
    let n = arrangement.num_vars();
    if arrangement.num_components() == 1 {
        let mut vertex = vec![Fraction::zero(); n];
        vertex[arrangement.primes()[0][0]] = Fraction::one();
        return Ok(GammaCertificate {
            value: Fraction::one(),
            vertex,
            dual: vec![Fraction::one()],
            level: 1,
            alpha_at_level: 1,
            provenance: "complete intersection".into(),
        });
    }
    let solver = AlphaSolver::new(arrangement)?;
    let lp = solver.ilp().lp();
    let mut vertex = vec![Fraction::zero(); n];
    for (t, e) in solver.incidence().types().iter().zip(&lp.cover) {
        vertex[t.vars[0]] = e.clone();
    }
    let level = common_denominator(&vertex)
        .to_u64()
        .ok_or_else(|| Error::InvalidArgument("vertex denominator too large".into()))?;
    let cert = GammaCertificate {
        value: lp.value.clone(),
        vertex,
        dual: lp.packing.clone(),
        level,
        alpha_at_level: solver.alpha(level),
        provenance: "covering LP".into(),
    };
    cert.validate(arrangement)?;
    Ok(cert)
}

/// Intersection over `m = 1..=max_m` of
/// `[alpha(I^(m)) / (m + h - 1), alpha(I^(m)) / m]`.
pub fn gamma_window(arrangement: &Arrangement, max_m: u64) -> Result<BoundInterval> {
    if max_m == 0 {
        return Err(Error::InvalidArgument("M must be at least 1".into()));
    }
    let solver = AlphaSolver::new(arrangement)?;
    let h = arrangement.properties().h as u64;
    let alphas: Vec<u64> = (1..=max_m).into_par_iter().map(|m| solver.alpha(m)).collect();
    gamma_window_from_table(&alphas, h)
}

/// Window from `alphas[m-1] = alpha(I^(m))`.
pub fn gamma_window_from_table(alphas: &[u64], h: u64) -> Result<BoundInterval> {
    let mut lo: Option<(Fraction, u64)> = None;
    let mut hi: Option<(Fraction, u64)> = None;
    for (k, &a) in alphas.iter().enumerate() {
        let m = k as u64 + 1;
        let l = Fraction::from(a) / Fraction::from(m + h - 1);
        let u = Fraction::from(a) / Fraction::from(m);
        if lo.as_ref().is_none_or(|(best, _)| &l > best) {
            lo = Some((l, m));
        }
        if hi.as_ref().is_none_or(|(best, _)| &u < best) {
            hi = Some((u, m));
        }
    }
    let (Some((lo, lm)), Some((hi, hm))) = (lo, hi) else {
        return Err(Error::InvalidArgument("empty alpha table".into()));
    };
    BoundInterval::new(
        lo,
        hi,
        format!("alpha(I^({lm}))/({lm}+h-1)"),
        format!("alpha(I^({hm}))/{hm}"),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContainmentStatus {
    Contained,
    NotContained,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContainmentMethod {
    GeneratorCheck,
    AlphaRefutation,
    MLessR,
    Derived,
}

impl ContainmentMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            ContainmentMethod::GeneratorCheck => "generator_check",
            ContainmentMethod::AlphaRefutation => "alpha_refutation",
            ContainmentMethod::MLessR => "m_less_r_rule",
            ContainmentMethod::Derived => "derived",
        }
    }
}

impl ContainmentStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ContainmentStatus::Contained => "contained",
            ContainmentStatus::NotContained => "not_contained",
        }
    }
}

/// Whether `I^(m)` lies in `I^r`, and how that was decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ContainmentFact {
    pub m: u64,
    pub r: u64,
    pub status: ContainmentStatus,
    #[serde(serialize_with = "ser_method", deserialize_with = "de_method")]
    pub method: ContainmentMethod,
}

fn ser_method<S: serde::Serializer>(m: &ContainmentMethod, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(m.as_str())
}

fn de_method<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<ContainmentMethod, D::Error> {
    let s = String::deserialize(d)?;
    match s.as_str() {
        "generator_check" => Ok(ContainmentMethod::GeneratorCheck),
        "alpha_refutation" => Ok(ContainmentMethod::AlphaRefutation),
        "m_less_r_rule" => Ok(ContainmentMethod::MLessR),
        "derived" => Ok(ContainmentMethod::Derived),
        other => Err(serde::de::Error::custom(format!("unknown method {other:?}"))),
    }
}

impl ContainmentFact {
    pub fn is_contained(&self) -> bool {
        self.status == ContainmentStatus::Contained
    }
}

/// Containment decisions for one arrangement, caching ideals between
/// queries.
#[derive(Debug)]
pub struct ContainmentEngine {
    arrangement: Arrangement,
    limits: Limits,
    solver: AlphaSolver,
    alpha_i: u64,
    symbolic: BTreeMap<u64, MonomialIdeal>,
    // powers[r-1] = I^r
    powers: Vec<MonomialIdeal>,
}

impl ContainmentEngine {
    pub fn new(arrangement: &Arrangement, limits: Limits) -> Result<Self> {
        let solver = AlphaSolver::new(arrangement)?;
        let alpha_i = solver.alpha(1);
        Ok(ContainmentEngine {
            arrangement: arrangement.clone(),
            limits,
            solver,
            alpha_i,
            symbolic: BTreeMap::new(),
            powers: Vec::new(),
        })
    }

    pub fn alpha_solver(&self) -> &AlphaSolver {
        &self.solver
    }

    pub fn symbolic_power(&mut self, m: u64) -> Result<&MonomialIdeal> {
        if !self.symbolic.contains_key(&m) {
            let ideal = self.arrangement.symbolic_power(m, &self.limits)?;
            self.symbolic.insert(m, ideal);
        }
        Ok(&self.symbolic[&m])
    }

    pub fn ordinary_power(&mut self, r: u64) -> Result<&MonomialIdeal> {
        if r == 0 {
            return Err(Error::InvalidArgument("r must be at least 1".into()));
        }
        if self.powers.is_empty() {
            let base = self.symbolic_power(1)?.clone();
            self.powers.push(base);
        }
        while (self.powers.len() as u64) < r {
            let next = self.powers[self.powers.len() - 1].product(&self.powers[0], &self.limits)?;
            self.powers.push(next);
        }
        Ok(&self.powers[r as usize - 1])
    }

    /// Decide `I^(m) ⊆ I^r`: first `m < r`, then the initial-degree
    /// refutation, then the full generator check.
    pub fn check(&mut self, m: u64, r: u64) -> Result<ContainmentFact> {
        if m == 0 || r == 0 {
            return Err(Error::InvalidArgument("m and r must be at least 1".into()));
        }
        let fact = |status, method| ContainmentFact { m, r, status, method };
        if m < r {
            return Ok(fact(ContainmentStatus::NotContained, ContainmentMethod::MLessR));
        }
        if (self.solver.alpha(m) as u128) < r as u128 * self.alpha_i as u128 {
            return Ok(fact(
                ContainmentStatus::NotContained,
                ContainmentMethod::AlphaRefutation,
            ));
        }
        let big = self.symbolic_power(m)?.clone();
        let small = self.ordinary_power(r)?;
        let status = if big.is_subideal(small)? {
            ContainmentStatus::Contained
        } else {
            ContainmentStatus::NotContained
        };
        Ok(fact(status, ContainmentMethod::GeneratorCheck))
    }
}

/// One-shot containment decision.
pub fn containment_check(
    arrangement: &Arrangement,
    m: u64,
    r: u64,
    limits: &Limits,
) -> Result<ContainmentFact> {
    ContainmentEngine::new(arrangement, *limits)?.check(m, r)
}

/// Containment facts for all `1 <= m <= max_m`, `1 <= r <= max_r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainmentMatrix {
    pub max_m: u64,
    pub max_r: u64,
    /// `facts[m-1][r-1]`.
    pub facts: Vec<Vec<ContainmentFact>>,
}

impl ContainmentMatrix {
    pub fn get(&self, m: u64, r: u64) -> Option<&ContainmentFact> {
        self.facts
            .get(m.checked_sub(1)? as usize)?
            .get(r.checked_sub(1)? as usize)
    }

    /// Status grid, ignoring the deciding method.
    pub fn statuses(&self) -> Vec<Vec<ContainmentStatus>> {
        self.facts
            .iter()
            .map(|row| row.iter().map(|f| f.status).collect())
            .collect()
    }

    /// Check the order laws: `m < r` never contains, containment is
    /// monotone in increasing `m` and decreasing `r`, and every
    /// non-containment has `m / r <= h`.
    pub fn check_order_laws(&self, h: u64) -> std::result::Result<(), String> {
        for row in &self.facts {
            for f in row {
                if f.m < f.r && f.is_contained() {
                    return Err(format!("({}, {}) contained with m < r", f.m, f.r));
                }
                if !f.is_contained() && f.m > h * f.r {
                    return Err(format!("({}, {}) not contained with m/r > h = {h}", f.m, f.r));
                }
                if f.is_contained() {
                    if let Some(g) = self.get(f.m + 1, f.r) {
                        if !g.is_contained() {
                            return Err(format!("monotonicity fails at ({}, {})", f.m + 1, f.r));
                        }
                    }
                    if f.r >= 2 && !self.get(f.m, f.r - 1).is_some_and(ContainmentFact::is_contained) {
                        return Err(format!("monotonicity fails at ({}, {})", f.m, f.r - 1));
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn containment_matrix(
    arrangement: &Arrangement,
    max_m: u64,
    max_r: u64,
    limits: &Limits,
) -> Result<ContainmentMatrix> {
    let mut engine = ContainmentEngine::new(arrangement, *limits)?;
    let mut facts = Vec::with_capacity(max_m as usize);
    for m in 1..=max_m {
        let row = (1..=max_r)
            .map(|r| engine.check(m, r))
            .collect::<Result<Vec<_>>>()?;
        facts.push(row);
    }
    Ok(ContainmentMatrix { max_m, max_r, facts })
}

/// Resurgence window together with the invariants it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResurgenceReport {
    pub alpha: u64,
    pub omega: u64,
    pub h: u64,
    pub gamma: GammaCertificate,
    pub window: BoundInterval,
}

/// Exact bracket for the asymptotic resurgence: `alpha(I)/gamma` from
/// below; from above `omega(I)/gamma` for pairwise disjoint components,
/// the maximal height `h` otherwise, whichever is smaller when both apply.
pub fn resurgence_window(arrangement: &Arrangement, limits: &Limits) -> Result<ResurgenceReport> {
    let props = arrangement.properties();
    let ideal = Incidence::of(arrangement).symbolic_power(1, limits)?;
    let alpha = ideal.alpha()?;
    let omega = ideal.omega()?;
    let h = props.h as u64;
    let gamma = gamma_exact(arrangement)?;
    if arrangement.num_components() == 1 {
        let window = BoundInterval::new(
            Fraction::one(),
            Fraction::one(),
            "complete intersection",
            "complete intersection",
        )?;
        return Ok(ResurgenceReport {
            alpha,
            omega,
            h,
            gamma,
            window,
        });
    }
    let lo = Fraction::from(alpha) / &gamma.value;
    let height = Fraction::from(h);
    let (hi, hi_rule) = if props.pairwise_disjoint {
        let by_omega = Fraction::from(omega) / &gamma.value;
        if height < by_omega {
            (height, "height")
        } else {
            (by_omega, "omega_over_gamma")
        }
    } else {
        (height, "height")
    };
    let window = BoundInterval::new(lo, hi, "alpha_over_gamma", hi_rule)?;
    Ok(ResurgenceReport {
        alpha,
        omega,
        h,
        gamma,
        window,
    })
}

/// Evidence that `I^(cm) = (I^(c))^m` and `I^(c) ⊆ I^b`, which together
/// bound the asymptotic resurgence by `c/b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceReport {
    pub c: u64,
    pub b: u64,
    /// `(m, I^(cm) == (I^(c))^m)` for each checked `m`.
    pub equalities: Vec<(u64, bool)>,
    pub containment: ContainmentFact,
    /// `c/b`, present only when every check passed.
    pub bound: Option<Fraction>,
    pub status: String,
}

pub fn noetherian_evidence(
    arrangement: &Arrangement,
    c: u64,
    b: u64,
    max_m: u64,
    limits: &Limits,
) -> Result<EvidenceReport> {
    if c == 0 || b == 0 || max_m == 0 {
        return Err(Error::InvalidArgument("c, b and M must be at least 1".into()));
    }
    let mut engine = ContainmentEngine::new(arrangement, *limits)?;
    let containment = engine.check(c, b)?;
    let base = engine.symbolic_power(c)?.clone();
    let mut power = base.clone();
    let mut equalities = Vec::new();
    for m in 1..=max_m {
        if m > 1 {
            power = power.product(&base, limits)?;
        }
        let cm = c
            .checked_mul(m)
            .ok_or_else(|| Error::InvalidArgument("c*m overflows".into()))?;
        let symbolic = arrangement.symbolic_power(cm, limits)?;
        equalities.push((m, symbolic == power));
    }
    let all_equal = equalities.iter().all(|&(_, eq)| eq);
    let (bound, status) = if !containment.is_contained() {
        (None, format!("I^({c}) is not contained in I^{b}; no bound"))
    } else if !all_equal {
        (None, format!("factorization fails within m <= {max_m}; no bound"))
    } else {
        (
            Some(Fraction::from(c) / Fraction::from(b)),
            format!("verified up to M={max_m}"),
        )
    };
    Ok(EvidenceReport {
        c,
        b,
        equalities,
        containment,
        bound,
        status,
    })
}

/// Summary invariants of an arrangement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub alpha_i: u64,
    pub omega_i: u64,
    pub h: u64,
    pub alpha_symbolic_table: BTreeMap<u64, u64>,
    pub gamma: Fraction,
}

pub fn invariant_record(arrangement: &Arrangement, max_m: u64, limits: &Limits) -> Result<InvariantRecord> {
    let solver = AlphaSolver::new(arrangement)?;
    let ideal = solver.incidence().symbolic_power(1, limits)?;
    let alpha_symbolic_table = (1..=max_m)
        .into_par_iter()
        .map(|m| (m, solver.alpha(m)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    Ok(InvariantRecord {
        alpha_i: ideal.alpha()?,
        omega_i: ideal.omega()?,
        h: arrangement.properties().h as u64,
        alpha_symbolic_table,
        gamma: gamma_exact(arrangement)?.value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn pairs(s: usize, n: usize) -> Arrangement {
        Arrangement::pair_lines(s, n).unwrap()
    }

    fn points(n: usize) -> Arrangement {
        Arrangement::coordinate_points(n).unwrap()
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha_symbolic(&pairs(2, 3), 5).unwrap(), 10);
        assert_eq!(alpha_symbolic(&pairs(3, 5), 2).unwrap(), 3);
        assert_eq!(alpha_symbolic(&pairs(3, 5), 4).unwrap(), 6);
        assert!(alpha_symbolic(&pairs(3, 5), 0).is_err());
    }

    #[test]
    fn alpha_matches_brute_force() {
        let a = pairs(3, 5);
        for m in 1..=4 {
            assert_eq!(
                alpha_symbolic(&a, m).unwrap(),
                oracle::alpha_brute(&a, m).unwrap()
            );
        }
        let p = points(3);
        for m in 1..=6 {
            assert_eq!(alpha_symbolic(&p, m).unwrap(), (3 * m).div_ceil(2));
            assert_eq!(
                alpha_symbolic(&p, m).unwrap(),
                oracle::alpha_brute(&p, m).unwrap()
            );
        }
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_exact(&pairs(3, 5)).unwrap().value, Fraction::new(3, 2));
        let single = Arrangement::new(4, vec![vec![2, 3]], None).unwrap();
        let g = gamma_exact(&single).unwrap();
        assert_eq!(g.value, Fraction::one());
        assert_eq!(g.provenance, "complete intersection");
        g.validate(&single).unwrap();
        let p = gamma_exact(&points(3)).unwrap();
        assert_eq!(p.value, Fraction::new(3, 2));
        assert_eq!(p.level, 2);
        assert_eq!(p.alpha_at_level, 3);
    }

    #[test]
    fn tampered_gamma_certificate_fails() {
        let a = points(3);
        let mut g = gamma_exact(&a).unwrap();
        g.alpha_at_level += 1;
        assert!(g.validate(&a).is_err());
        let mut g = gamma_exact(&a).unwrap();
        g.value = Fraction::new(4, 3);
        assert!(g.validate(&a).is_err());
    }

    #[test]
    fn gamma_window_examples() {
        let w = gamma_window(&pairs(3, 5), 4).unwrap();
        assert_eq!(
            (w.lo.clone(), w.hi.clone()),
            (Fraction::new(6, 7), Fraction::new(3, 2))
        );
        let w = gamma_window(&pairs(2, 3), 3).unwrap();
        assert_eq!(
            (w.lo.clone(), w.hi.clone()),
            (Fraction::new(3, 2), Fraction::from(2u64))
        );
        let a = points(4);
        let w = gamma_window(&a, 1).unwrap();
        let alpha = Fraction::from(alpha_symbolic(&a, 1).unwrap());
        assert_eq!(w.lo, &alpha / Fraction::from(3u64));
        assert_eq!(w.hi, alpha);
    }

    #[test]
    fn gamma_sandwich_and_monotone_upper() {
        for a in [pairs(2, 3), pairs(3, 5), points(3), points(4)] {
            let g = gamma_exact(&a).unwrap().value;
            let mut prev_hi: Option<Fraction> = None;
            for big_m in 1..=8 {
                let w = gamma_window(&a, big_m).unwrap();
                assert!(w.contains(&g), "{a:?} M={big_m}");
                if let Some(p) = &prev_hi {
                    assert!(&w.hi <= p);
                }
                prev_hi = Some(w.hi);
            }
            assert!(g >= Fraction::one());
        }
    }

    #[test]
    fn subadditive_alpha_table() {
        for a in [pairs(3, 5), points(4)] {
            let solver = AlphaSolver::new(&a).unwrap();
            for x in 1..=8 {
                for y in 1..=8 {
                    assert!(solver.alpha(x + y) <= solver.alpha(x) + solver.alpha(y));
                }
            }
        }
    }

    #[test]
    fn containment_examples() {
        let limits = Limits::default();
        let f = containment_check(&pairs(2, 3), 2, 2, &limits).unwrap();
        assert!(f.is_contained());
        let f = containment_check(&points(3), 2, 2, &limits).unwrap();
        assert_eq!(f.status, ContainmentStatus::NotContained);
        assert_eq!(f.method, ContainmentMethod::AlphaRefutation);
        let f = containment_check(&points(3), 3, 2, &limits).unwrap();
        assert!(f.is_contained());
        assert_eq!(f.method, ContainmentMethod::GeneratorCheck);
        let f = containment_check(&points(3), 1, 2, &limits).unwrap();
        assert_eq!(f.method, ContainmentMethod::MLessR);
    }

    #[test]
    fn containment_fact_json() {
        let f = containment_check(&points(3), 2, 2, &Limits::default()).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(
            json,
            r#"{"m":2,"r":2,"status":"not_contained","method":"alpha_refutation"}"#
        );
        let back: ContainmentFact = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn matrix_order_laws() {
        for a in [pairs(2, 3), pairs(3, 5), points(3), points(4)] {
            let mx = containment_matrix(&a, 5, 5, &Limits::default()).unwrap();
            mx.check_order_laws(a.properties().h as u64).unwrap();
        }
    }

    #[test]
    fn resurgence_examples() {
        let limits = Limits::default();
        let r = resurgence_window(&pairs(3, 5), &limits).unwrap();
        assert_eq!(
            (r.window.lo.clone(), r.window.hi.clone()),
            (Fraction::new(4, 3), Fraction::new(4, 3))
        );
        let r = resurgence_window(&pairs(2, 3), &limits).unwrap();
        assert_eq!(
            (r.window.lo.clone(), r.window.hi.clone()),
            (Fraction::one(), Fraction::one())
        );
        let line = Arrangement::new(4, vec![vec![2, 3]], None).unwrap();
        let r = resurgence_window(&line, &limits).unwrap();
        assert_eq!(
            (r.window.lo.clone(), r.window.hi.clone()),
            (Fraction::one(), Fraction::one())
        );
        assert_eq!(r.window.lo_provenance, "complete intersection");
    }

    #[test]
    fn resurgence_pairs_collapse() {
        let limits = Limits::default();
        for s in 2..=6usize {
            let r = resurgence_window(&pairs(s, 2 * s - 1), &limits).unwrap();
            let expect = Fraction::new(2 * (s as i64 - 1), s as i64).max(Fraction::one());
            assert_eq!(r.window.lo, expect);
            assert_eq!(r.window.hi, expect);
        }
    }

    #[test]
    fn non_disjoint_uses_height() {
        let a = Arrangement::new(4, vec![vec![0, 1], vec![1, 2]], None).unwrap();
        let r = resurgence_window(&a, &Limits::default()).unwrap();
        assert_eq!(r.window.hi_provenance, "height");
        assert_eq!(r.window.hi, Fraction::from(2u64));
    }

    #[test]
    fn evidence_examples() {
        let limits = Limits::default();
        let e = noetherian_evidence(&pairs(2, 3), 1, 1, 5, &limits).unwrap();
        assert!(e.equalities.iter().all(|&(_, eq)| eq));
        assert_eq!(e.bound, Some(Fraction::one()));
        assert_eq!(e.status, "verified up to M=5");
        let e = noetherian_evidence(&points(3), 2, 1, 4, &limits).unwrap();
        assert!(e.equalities.iter().all(|&(_, eq)| eq));
        assert_eq!(e.bound, Some(Fraction::from(2u64)));
        let e = noetherian_evidence(&points(3), 2, 2, 1, &limits).unwrap();
        assert_eq!(e.containment.method, ContainmentMethod::AlphaRefutation);
        assert_eq!(e.bound, None);
    }

    #[test]
    fn invariant_record_table() {
        let rec = invariant_record(&pairs(3, 5), 4, &Limits::default()).unwrap();
        assert_eq!(
            rec.alpha_symbolic_table.values().copied().collect::<Vec<_>>(),
            vec![2, 3, 5, 6]
        );
        assert_eq!(rec.alpha_symbolic_table[&1], rec.alpha_i);
        assert_eq!(rec.gamma, Fraction::new(3, 2));
    }
}
