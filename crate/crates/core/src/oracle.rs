//! Brute-force reference computations.
//!
//! These enumerate every monomial up to a degree cap and test membership
//! with the per-prime degree criterion directly. They share no code with
//! the ideal arithmetic and serve as independent oracles in tests and in
//! the CLI's cross-check mode.

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::monomial::Monomial;

const MAX_ENUMERATED: u64 = 20_000_000;

/// Calls `f` on every exponent vector in `n` variables of degree `<= cap`.
pub fn for_each_exponent<F: FnMut(&[u64])>(n: usize, cap: u64, mut f: F) {
    let mut exps = vec![0u64; n];
    fn go<F: FnMut(&[u64])>(exps: &mut Vec<u64>, at: usize, left: u64, f: &mut F) {
        if at == exps.len() {
            f(exps);
            return;
        }
        for v in 0..=left {
            exps[at] = v;
            go(exps, at + 1, left - v, f);
        }
        exps[at] = 0;
    }
    go(&mut exps, 0, cap, &mut f);
}

fn member(primes: &[Vec<usize>], m: u64, exps: &[u64]) -> bool {
    primes
        .iter()
        .all(|p| p.iter().map(|&j| exps[j]).sum::<u64>() >= m)
}

fn count_up_to(n: usize, cap: u64) -> u64 {
    // C(cap + n, n), saturating.
    let mut c: u128 = 1;
    for k in 1..=n as u128 {
        c = c * (cap as u128 + k) / k;
        if c > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    c as u64
}

/// Minimal monomials of the `m`-th symbolic power, found by enumerating all
/// monomials of degree at most `m` times the number of components, sorted
/// in the canonical order.
pub fn minimal_generators(arrangement: &Arrangement, m: u64) -> Result<Vec<Monomial>> {
    let n = arrangement.num_vars();
    let cap = m * arrangement.num_components() as u64;
    if count_up_to(n, cap) > MAX_ENUMERATED {
        return Err(Error::InvalidArgument(format!(
            "oracle would enumerate more than {MAX_ENUMERATED} monomials"
        )));
    }
    let primes = arrangement.primes();
    let mut out = Vec::new();
    for_each_exponent(n, cap, |e| {
        if !member(primes, m, e) {
            return;
        }
        let mut lowered = e.to_vec();
        for j in 0..n {
            if e[j] == 0 {
                continue;
            }
            lowered[j] -= 1;
            let still = member(primes, m, &lowered);
            lowered[j] += 1;
            if still {
                return;
            }
        }
        out.push(e.to_vec());
    });
    let mut gens = out.into_iter().map(Monomial::new).collect::<Result<Vec<_>>>()?;
    gens.sort();
    Ok(gens)
}

/// Least degree of a monomial in the `m`-th symbolic power.
pub fn alpha_brute(arrangement: &Arrangement, m: u64) -> Result<u64> {
    let gens = minimal_generators(arrangement, m)?;
    gens.iter().map(Monomial::degree).min().ok_or(Error::ZeroIdeal)
}

/// Number of degree-`t` monomials in `n` variables whose degree over `vars`
/// is at least `m`.
pub fn count_degree_at_least(n: usize, vars: &[usize], m: u64, t: u64) -> u64 {
    let mut count = 0;
    for_each_exponent(n, t, |e| {
        if e.iter().sum::<u64>() == t && vars.iter().map(|&j| e[j]).sum::<u64>() >= m {
            count += 1;
        }
    });
    count
}
