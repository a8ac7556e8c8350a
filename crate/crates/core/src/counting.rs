//! Counting aperiodic words.
//!
//! `tau(m, N)` is the number of words of length `N` over `m` symbols that are
//! not a whole power of a shorter word. Every word of length `N` has exactly
//! one exact period `J | N`, and the words with exact period `J` are in
//! bijection with the aperiodic words of length `J`, so
//!
//! ```text
//! m^N = sum over J | N of tau(m, J)
//! ```
//!
//! Three routes evaluate `tau` independently:
//!
//! * [`tau_mobius`] inverts the divisor sum with the Möbius function;
//! * [`tau_inclusion_exclusion`] removes, by inclusion–exclusion over the
//!   distinct primes of `N`, every word that repeats with length `N / p`;
//! * [`tau_prime_power`] is the closed form `m^(p^a) - m^(p^(a-1))`.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::{BigInt, Sign};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numtheory::{
    divisors_of, factorize, is_prime, mobius_of, mod_pow_unchecked, pow_u64, BigCount,
    Factorization, SizeGuard,
};

fn check_params(m: u64, n: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::Range {
            what: "alphabet size m",
            value: m,
            limit: "must be >= 1".into(),
        });
    }
    if n == 0 {
        return Err(Error::Range {
            what: "length N",
            value: n,
            limit: "must be >= 1".into(),
        });
    }
    Ok(())
}

fn into_count(total: BigInt, route: &str, m: u64, n: u64) -> BigCount {
    match total.into_parts() {
        (Sign::Minus, mag) => {
            panic!("{route} produced a negative count -{mag} for m = {m}, N = {n}")
        }
        (_, mag) => BigCount::from(mag),
    }
}

/// `tau(m, N) = sum over d | N of mu(N / d) * m^d`.
pub fn tau_mobius(m: u64, n: u64, guard: SizeGuard) -> Result<BigCount> {
    check_params(m, n)?;
    guard.admit_pow(m, n)?;
    let f = factorize(n)?;
    let mut total = BigInt::default();
    for d in divisors_of(&f) {
        let mu = mobius_of(&factorize(n / d)?);
        if mu == 0 {
            continue;
        }
        let term = BigInt::from(pow_u64(m, d));
        if mu > 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(into_count(total, "Möbius inversion", m, n))
}

/// Inclusion–exclusion over the distinct primes of `N`.
///
/// With `N = p_1^a_1 ... p_n^a_n` and `R = p_1^(a_1-1) ... p_n^(a_n-1)`:
///
/// ```text
/// tau = (-1)^n m^R + sum_{j=0}^{n-1} sum_{i_1<...<i_{n-j}} (-1)^j m^(p_i_1 ... p_i_{n-j} R)
/// ```
///
/// Subsets are visited in lexicographic index order. For `N = 1` the empty
/// product gives `R = 1`, the sum is empty and the result is `m`.
pub fn tau_inclusion_exclusion(
    m: u64,
    factored: &Factorization,
    guard: SizeGuard,
) -> Result<BigCount> {
    let n_value = factored.value();
    check_params(m, n_value)?;
    guard.admit_pow(m, n_value)?;

    let primes: Vec<u64> = factored.primes().collect();
    let k = primes.len();
    let reduced: u64 = factored
        .factors()
        .iter()
        .map(|&(p, a)| p.pow(a - 1))
        .product();

    let signed_pow = |negative: bool, exp: u64| {
        let v = BigInt::from(pow_u64(m, exp));
        if negative {
            -v
        } else {
            v
        }
    };

    let mut total = signed_pow(k % 2 == 1, reduced);
    for j in 0..k {
        for subset in (0..k).combinations(k - j) {
            let prod: u64 = subset.iter().map(|&i| primes[i]).product();
            total += signed_pow(j % 2 == 1, prod * reduced);
        }
    }
    Ok(into_count(total, "inclusion-exclusion", m, n_value))
}

/// Closed form for prime powers: `m^(p^alpha) - m^(p^(alpha-1))`.
pub fn tau_prime_power(m: u64, p: u64, alpha: u32, guard: SizeGuard) -> Result<BigCount> {
    if !is_prime(p) {
        return Err(Error::argument(format!("{p} is not prime")));
    }
    if alpha == 0 {
        return Err(Error::argument("prime-power exponent must be >= 1"));
    }
    let n = p.checked_pow(alpha).ok_or_else(|| Error::Range {
        what: "p^alpha",
        value: p,
        limit: format!("{p}^{alpha} overflows u64"),
    })?;
    check_params(m, n)?;
    guard.admit_pow(m, n)?;
    let hi = pow_u64(m, n);
    let lo = pow_u64(m, n / p);
    Ok(BigCount::from(hi - lo))
}

/// `tau(m, N) mod modulus` by Möbius inversion in modular arithmetic.
///
/// Needs no size guard, which lets divisibility and primality checks reach
/// lengths whose exact counts would be far too large to materialize.
pub fn tau_mod(m: u64, n: u64, modulus: u64) -> Result<u64> {
    check_params(m, n)?;
    if modulus == 0 {
        return Err(Error::Range {
            what: "modulus",
            value: 0,
            limit: "must be >= 1".into(),
        });
    }
    let f = factorize(n)?;
    let q = i128::from(modulus);
    let mut acc: i128 = 0;
    for d in divisors_of(&f) {
        let mu = i128::from(mobius_of(&factorize(n / d)?));
        if mu != 0 {
            acc = (acc + mu * i128::from(mod_pow_unchecked(m, d, modulus))).rem_euclid(q);
        }
    }
    Ok(acc as u64)
}

/// How the `m^N` words of length `N` split by exact period.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TauBreakdown {
    pub alphabet_size: u64,
    pub length: u64,
    /// Exact period `J` to number of words with that exact period, i.e. `tau(m, J)`.
    pub per_period: BTreeMap<u64, BigCount>,
    /// `m^N`.
    pub total: BigCount,
}

impl TauBreakdown {
    /// Checks the divisor keys, the sum identity and `J | per_period[J]`.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let divs = divisors_of(&factorize(self.length).map_err(|e| e.to_string())?);
        if !self.per_period.keys().copied().eq(divs.iter().copied()) {
            return Err(format!("keys are not the divisors of {}", self.length));
        }
        let sum: BigCount = self.per_period.values().sum();
        if sum != self.total {
            return Err(format!("per-period sum {sum} != total {}", self.total));
        }
        for (&j, c) in &self.per_period {
            if c.rem_u64(j) != 0 {
                return Err(format!("{j} does not divide tau = {c}"));
            }
        }
        Ok(())
    }

    /// Number of words of length `N` whose exact period is shorter than `N`.
    pub fn symmetries(&self) -> BigCount {
        self.per_period
            .iter()
            .filter(|(&j, _)| j < self.length)
            .map(|(_, c)| c)
            .sum()
    }

    pub fn asymmetries(&self) -> &BigCount {
        &self.per_period[&self.length]
    }
}

/// Per-period counts for every divisor of `N`, together with `m^N`.
pub fn tau_breakdown(m: u64, n: u64, guard: SizeGuard) -> Result<TauBreakdown> {
    check_params(m, n)?;
    guard.admit_pow(m, n)?;
    let per_period = divisors_of(&factorize(n)?)
        .into_iter()
        .map(|j| Ok((j, tau_mobius(m, j, guard)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let breakdown = TauBreakdown {
        alphabet_size: m,
        length: n,
        per_period,
        total: BigCount::from(pow_u64(m, n)),
    };
    if let Err(e) = breakdown.check_invariants() {
        panic!("tau breakdown invariant violated for m = {m}, N = {n}: {e}");
    }
    Ok(breakdown)
}

/// Words of length `N` with a proper period: `m^N - tau(m, N)`.
pub fn symmetry_count(m: u64, n: u64, guard: SizeGuard) -> Result<BigCount> {
    let tau = tau_mobius(m, n, guard)?;
    let total = BigCount::from(pow_u64(m, n));
    Ok(&total - &tau)
}

/// Number of rotation classes of aperiodic words (Lyndon words): `tau(m, N) / N`.
///
/// # Panics
///
/// If `N` does not divide `tau(m, N)`, which would mean the counting code is wrong.
pub fn lyndon_count(m: u64, n: u64, guard: SizeGuard) -> Result<BigCount> {
    let tau = tau_mobius(m, n, guard)?;
    match tau.div_exact(n) {
        Some(q) => Ok(q),
        None => panic!("tau({m}, {n}) = {tau} is not divisible by {n}"),
    }
}
