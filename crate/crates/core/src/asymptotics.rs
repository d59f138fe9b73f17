//! Closed-form Hilbert functions and the cubic governing line
//! configurations in three-space.
//!
//! Every formula is evaluated over exact integers or rationals. The cubic
//! `f(τ) = τ³ - 3sτ + 2s` has its largest real root `g` in
//! `(√(3s) - 3/4, √(3s))`; [`largest_root_g`] brackets it by dyadic
//! bisection and checks both ends of that interval by squaring.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fraction::Fraction;

fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

fn to_u64(x: BigInt) -> Result<u64> {
    x.to_u64()
        .ok_or_else(|| Error::InvalidArgument(format!("value {x} does not fit in 64 bits")))
}

fn clamp_nonneg(x: BigInt) -> Result<u64> {
    if x < BigInt::zero() {
        Ok(0)
    } else {
        to_u64(x)
    }
}

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidArgument(msg.into()))
    }
}

/// `dim (I(p)^m)_t = max(0, C(t+N, N) - C(m+N-1, N))` for a point in `P^N`.
pub fn point_power_hilbert(big_n: u64, m: u64, t: u64) -> Result<u64> {
    require(big_n >= 1 && m >= 1, "need N >= 1 and m >= 1")?;
    clamp_nonneg(binom(t + big_n, big_n) - binom(m + big_n - 1, big_n))
}

/// `dim I_t = max(0, C(t+N, N) - s(t+1))` for `s` generic lines in `P^N`.
pub fn generic_lines_hilbert(big_n: u64, s: u64, t: u64) -> Result<u64> {
    require(big_n >= 3 && s >= 1, "need N >= 3 and s >= 1")?;
    clamp_nonneg(binom(t + big_n, big_n) - BigInt::from(s) * BigInt::from(t + 1))
}

/// Least `t` with a nonzero generic-lines Hilbert function value.
pub fn generic_lines_alpha(big_n: u64, s: u64) -> Result<u64> {
    let mut t = 0;
    while generic_lines_hilbert(big_n, s, t)? == 0 {
        t += 1;
    }
    Ok(t)
}

/// `C(t+3, 3) - s((t+2) - (2m+1)/3) C(m+1, 2)`, before clamping.
fn expected_raw(s: u64, m: u64, t: u64) -> Result<BigInt> {
    let total = Fraction::from_big(binom(t + 3, 3), BigInt::one());
    let middle = Fraction::from(t + 2) - Fraction::new(2 * m as i64 + 1, 3);
    let sub = Fraction::from(s) * middle * Fraction::from_big(binom(m + 1, 2), BigInt::one());
    let value = total - sub;
    if !value.is_integer() {
        return Err(Error::Inconsistent(format!(
            "Hilbert expression is not integral at s={s}, m={m}, t={t}"
        )));
    }
    Ok(value.numer().clone())
}

/// `dim (I(L)^m)_t` for a line `L` in `P^3`; zero for `t < m`.
pub fn line_power_hilbert_p3(m: u64, t: u64) -> Result<u64> {
    require(m >= 1, "need m >= 1")?;
    if t < m {
        return Ok(0);
    }
    clamp_nonneg(expected_raw(1, m, t)?)
}

/// Expected lower bound on `dim (I^(m))_t` for `s` disjoint lines in `P^3`.
pub fn expected_symbolic_dim(s: u64, m: u64, t: u64) -> Result<u64> {
    require(s >= 1 && m >= 1, "need s >= 1 and m >= 1")?;
    if t < m {
        return Ok(0);
    }
    clamp_nonneg(expected_raw(s, m, t)?)
}

/// Parameters of the family of `s = C(t+N, N)/(t+1)` general lines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    #[serde(rename = "N")]
    pub big_n: u64,
    pub t: u64,
    pub s: u64,
    pub alpha: u64,
    pub reg: u64,
    /// Asymptotic resurgence as a formula in the Waldschmidt constant.
    pub rho_a_formula: String,
}

pub fn line_family(big_n: u64, t: u64) -> Result<FamilyRecord> {
    require(big_n >= 3, "need N >= 3")?;
    let total = binom(t + big_n, big_n);
    let (s, rem) = num_integer::Integer::div_rem(&total, &BigInt::from(t + 1));
    if !rem.is_zero() {
        return Err(Error::InvalidArgument(format!(
            "C({}, {big_n}) / {} = {total}/{} is not an integer",
            t + big_n,
            t + 1,
            t + 1
        )));
    }
    Ok(FamilyRecord {
        big_n,
        t,
        s: to_u64(s)?,
        alpha: t + 1,
        reg: t + 1,
        rho_a_formula: format!("{}/gamma", t + 1),
    })
}

/// Certified bracket around the largest real root of `τ³ - 3sτ + 2s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicRootResult {
    pub s: u64,
    pub g_lo: Fraction,
    pub g_hi: Fraction,
    pub tolerance: Fraction,
}

/// Default bisection tolerance `2^-30`.
pub fn default_tolerance() -> Fraction {
    Fraction::from_big(BigInt::one(), BigInt::one() << 30)
}

pub fn cubic(s: u64, tau: &Fraction) -> Fraction {
    let s = Fraction::from(s);
    tau.pow(3) - Fraction::from(3u64) * &s * tau + Fraction::from(2u64) * s
}

// Bits of precision for the initial square-root approximations.
const SQRT_BITS: u32 = 64;

pub fn largest_root_g(s: u64, tolerance: &Fraction) -> Result<CubicRootResult> {
    require(s >= 1, "need s >= 1")?;
    require(tolerance.is_positive(), "tolerance must be positive")?;
    let three_s = Fraction::from(3 * s);
    let (g_lo, g_hi) = if s == 1 {
        // τ³ - 3τ + 2 = (τ - 1)²(τ + 2).
        (Fraction::one(), Fraction::one())
    } else {
        let scale = BigInt::one() << SQRT_BITS;
        let root = (BigInt::from(3 * s) * &scale * &scale).sqrt();
        let under = Fraction::from_big(root.clone(), scale.clone());
        let over = Fraction::from_big(root + 1, scale);
        let mut lo = (under - Fraction::new(3, 4)).max(Fraction::one());
        let mut hi = over;
        if !cubic(s, &lo).is_negative() || !cubic(s, &hi).is_positive() {
            return Err(Error::Inconsistent(format!(
                "initial bracket has no sign change at s={s}"
            )));
        }
        let two = Fraction::from(2u64);
        while &hi - &lo > *tolerance {
            let mid = (&lo + &hi) / &two;
            let v = cubic(s, &mid);
            if v.is_zero() {
                lo = mid.clone();
                hi = mid;
                break;
            }
            if v.is_negative() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo, hi)
    };
    if g_hi.pow(2) >= three_s || (&g_lo + Fraction::new(3, 4)).pow(2) <= three_s {
        return Err(Error::Inconsistent(format!(
            "bracket [{g_lo}, {g_hi}] leaves (sqrt(3s) - 3/4, sqrt(3s)) at s={s}"
        )));
    }
    Ok(CubicRootResult {
        s,
        g_lo,
        g_hi,
        tolerance: tolerance.clone(),
    })
}

/// `i³m³(τ³-3sτ+2s) + i²m²(6τ²-3sτ-3s) + im(11τ-5s) + 6`.
pub fn degree_test_poly(s: u64, m: u64, tau: &Fraction, i: u64) -> Fraction {
    let (a3, a2, a1) = degree_test_coefficients(s, m, tau);
    let i = Fraction::from(i);
    a3 * i.pow(3) + a2 * i.pow(2) + a1 * i + Fraction::from(6u64)
}

/// Coefficients of `i³, i², i` in [`degree_test_poly`].
pub fn degree_test_coefficients(s: u64, m: u64, tau: &Fraction) -> (Fraction, Fraction, Fraction) {
    let sf = Fraction::from(s);
    let mf = Fraction::from(m);
    let c = |k: u64| Fraction::from(k);
    let a3 = mf.pow(3) * cubic(s, tau);
    let a2 = mf.pow(2) * (c(6) * tau.pow(2) - c(3) * &sf * tau - c(3) * &sf);
    let a1 = &mf * (c(11) * tau - c(5) * &sf);
    (a3, a2, a1)
}

/// `6 [C(it+3, 3) - s((it+2) - (2im+1)/3) C(im+1, 2)]`, which equals
/// [`degree_test_poly`] at `τ = t/m`.
pub fn degree_test_binomial_side(s: u64, m: u64, t: u64, i: u64) -> Fraction {
    let it = i * t;
    let im = i * m;
    let total = Fraction::from_big(binom(it + 3, 3), BigInt::one());
    let middle = Fraction::from(it + 2) - Fraction::new(2 * im as i64 + 1, 3);
    let pairs = Fraction::from_big(binom(im + 1, 2), BigInt::one());
    Fraction::from(6u64) * (total - Fraction::from(s) * middle * pairs)
}

/// Largest `i` searched by [`degree_test_i0`].
pub const DEGREE_TEST_I_CAP: u64 = 1_000_000;

/// Least `i0 >= 1` with [`degree_test_poly`] positive for every `i >= i0`.
/// Needs a positive leading coefficient, that is `τ > g`.
pub fn degree_test_i0(s: u64, m: u64, tau: &Fraction) -> Result<u64> {
    require(m >= 1, "need m >= 1")?;
    let (a3, a2, a1) = degree_test_coefficients(s, m, tau);
    if !a3.is_positive() {
        return Err(Error::InvalidArgument(
            "leading coefficient is not positive; tau must exceed the largest root".into(),
        ));
    }
    // Cauchy bound: every real root lies below 1 + max|a_k| / a3.
    let biggest = a2.abs().max(a1.abs()).max(Fraction::from(6u64));
    let bound = (Fraction::one() + biggest / &a3).ceil();
    let bound = bound
        .to_u64()
        .filter(|&b| b <= DEGREE_TEST_I_CAP)
        .ok_or_else(|| Error::InvalidArgument(format!("root bound exceeds {DEGREE_TEST_I_CAP}")))?;
    let mut i0 = 1;
    for i in (1..=bound).rev() {
        if !degree_test_poly(s, m, tau, i).is_positive() {
            i0 = i + 1;
            break;
        }
    }
    Ok(i0)
}

/// One row of the exploration table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExploreRow {
    pub m: u64,
    /// Least `t` with positive expected dimension; conjectural.
    pub alpha_hat: u64,
    pub alpha_hat_over_m: Fraction,
    pub g_lo: Fraction,
    pub g_hi: Fraction,
    pub sqrt3s: String,
    /// `alpha_hat / m < g_lo - slack`.
    pub violation: bool,
}

/// `√(3s)` as an integer when exact, otherwise truncated to nine decimals.
pub fn sqrt3s_text(s: u64) -> String {
    let scale = BigInt::from(10u64).pow(18);
    let root = (BigInt::from(3 * s) * scale).sqrt();
    let int = &root / BigInt::from(1_000_000_000u64);
    let frac = &root % BigInt::from(1_000_000_000u64);
    if frac.is_zero() && (&int * &int) == BigInt::from(3 * s) {
        int.to_string()
    } else {
        format!("{int}.{frac:0>9}")
    }
}

pub fn conjecture_explore(s: u64, m_max: u64, slack: &Fraction) -> Result<Vec<ExploreRow>> {
    require(s >= 1 && m_max >= 1, "need s >= 1 and m_max >= 1")?;
    let root = largest_root_g(s, &default_tolerance())?;
    let threshold = &root.g_lo - slack;
    let sqrt3s = sqrt3s_text(s);
    (1..=m_max)
        .map(|m| {
            let mut t = m;
            while expected_symbolic_dim(s, m, t)? == 0 {
                t += 1;
            }
            let ratio = Fraction::from(t) / Fraction::from(m);
            Ok(ExploreRow {
                m,
                alpha_hat: t,
                violation: ratio < threshold,
                alpha_hat_over_m: ratio,
                g_lo: root.g_lo.clone(),
                g_hi: root.g_hi.clone(),
                sqrt3s: sqrt3s.clone(),
            })
        })
        .collect()
}

pub const EXPLORE_CSV_HEADER: &str = "m,alpha_hat,alpha_hat_over_m,g_lo,g_hi,sqrt3s";

pub fn explore_csv(rows: &[ExploreRow]) -> String {
    let mut out = String::from(EXPLORE_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.m, r.alpha_hat, r.alpha_hat_over_m, r.g_lo, r.g_hi, r.sqrt3s
        ));
    }
    out
}
