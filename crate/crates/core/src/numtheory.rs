//! Integer primitives: trial-division factorization, divisors, Möbius and
//! totient functions, and exact/modular exponentiation.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Sub};
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest `n` accepted by [`factorize`].
pub const FACTORIZE_LIMIT: u64 = 1_000_000_000_000;

/// Exact, arbitrary-precision nonnegative count.
///
/// Serializes as a decimal string so consumers never see a rounded value.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn zero() -> Self {
        BigCount(BigUint::zero())
    }

    pub fn one() -> Self {
        BigCount(BigUint::one())
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn into_biguint(self) -> BigUint {
        self.0
    }

    pub fn bits(&self) -> u64 {
        self.0.bits()
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Remainder modulo a machine-word divisor. Panics if `modulus == 0`.
    pub fn rem_u64(&self, modulus: u64) -> u64 {
        (&self.0 % modulus).to_u64().expect("remainder fits in u64")
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: u64) -> Option<BigCount> {
        if divisor == 0 {
            return None;
        }
        let (q, r) = self.0.div_rem(&BigUint::from(divisor));
        r.is_zero().then_some(BigCount(q))
    }

    /// `self - rhs`, or `None` if that would be negative.
    pub fn checked_sub(&self, rhs: &BigCount) -> Option<BigCount> {
        (self.0 >= rhs.0).then(|| BigCount(&self.0 - &rhs.0))
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl PartialEq<u64> for BigCount {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl Add for BigCount {
    type Output = BigCount;
    fn add(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a BigCount> for &'a BigCount {
    type Output = BigCount;
    fn add(self, rhs: &BigCount) -> BigCount {
        BigCount(&self.0 + &rhs.0)
    }
}

/// Panics on underflow; use [`BigCount::checked_sub`] when the sign is not known.
impl<'a> Sub<&'a BigCount> for &'a BigCount {
    type Output = BigCount;
    fn sub(self, rhs: &BigCount) -> BigCount {
        BigCount(&self.0 - &rhs.0)
    }
}

impl Sum for BigCount {
    fn sum<I: Iterator<Item = BigCount>>(iter: I) -> Self {
        BigCount(iter.map(|c| c.0).sum())
    }
}

impl<'a> Sum<&'a BigCount> for BigCount {
    fn sum<I: Iterator<Item = &'a BigCount>>(iter: I) -> Self {
        let mut acc = BigUint::zero();
        for c in iter {
            acc += &c.0;
        }
        BigCount(acc)
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for BigCount {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.parse::<BigUint>()
            .map(BigCount)
            .map_err(|e| Error::argument(format!("not a decimal count {s:?}: {e}")))
    }
}

impl Serialize for BigCount {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

/// Bit budget for exact big-integer results.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeGuard {
    pub max_bits: u64,
}

impl SizeGuard {
    pub const DEFAULT_BITS: u64 = 1 << 20;

    pub const fn new(max_bits: u64) -> Self {
        SizeGuard { max_bits }
    }

    /// Fails unless `base^exp` fits in the budget.
    pub fn admit_pow(&self, base: u64, exp: u64) -> Result<()> {
        let (fits, bits) = pow_fits(&BigUint::from(base), exp, self.max_bits);
        if !fits {
            return Err(self.exceeded(format!(
                "{base}^{exp} needs at least {bits} bits, budget is {}",
                self.max_bits
            )));
        }
        Ok(())
    }

    fn exceeded(&self, detail: String) -> Error {
        Error::Size {
            guard: "exact-size guard (--guard-bits)",
            detail,
        }
    }
}

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard::new(Self::DEFAULT_BITS)
    }
}

/// Bounds on the bit length of `base^exp`: exact for 0, 1 and powers of two,
/// otherwise `[e*(b-1)+1, e*b]` where `b` is the bit length of `base`.
fn pow_bit_bounds(base: &BigUint, exp: u64) -> (u64, u64) {
    if exp == 0 || base.is_one() {
        return (1, 1);
    }
    if base.is_zero() {
        return (0, 0);
    }
    let b = base.bits();
    let lower = exp.saturating_mul(b - 1).saturating_add(1);
    if base.count_ones() == 1 {
        return (lower, lower);
    }
    (lower, exp.saturating_mul(b))
}

/// Whether `base^exp` has at most `max_bits` bits, plus the bit count used in diagnostics.
fn pow_fits(base: &BigUint, exp: u64, max_bits: u64) -> (bool, u64) {
    let (lower, upper) = pow_bit_bounds(base, exp);
    if upper <= max_bits {
        return (true, upper);
    }
    if lower > max_bits {
        return (false, lower);
    }
    // Ambiguous band: lower <= max_bits, so the exponent is small enough to evaluate.
    let Ok(e) = u32::try_from(exp) else {
        return (false, lower);
    };
    let bits = base.pow(e).bits();
    (bits <= max_bits, bits)
}

/// Prime factorization `N = p_1^a_1 ... p_k^a_k`, primes strictly ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Builds a factorization from explicit pairs, checking every invariant.
    pub fn from_pairs(pairs: Vec<(u64, u32)>) -> Result<Self> {
        let mut value: u64 = 1;
        for (i, &(p, a)) in pairs.iter().enumerate() {
            if a == 0 {
                return Err(Error::argument(format!("exponent of {p} must be >= 1")));
            }
            if !is_prime(p) {
                return Err(Error::argument(format!("{p} is not prime")));
            }
            if i > 0 && pairs[i - 1].0 >= p {
                return Err(Error::argument(
                    "primes must be distinct and strictly ascending",
                ));
            }
            value = p
                .checked_pow(a)
                .and_then(|pa| value.checked_mul(pa))
                .ok_or_else(|| Error::argument("factorization value overflows u64"))?;
        }
        Ok(Factorization { factors: pairs })
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Number of distinct primes.
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// The integer this factorization represents.
    pub fn value(&self) -> u64 {
        self.factors.iter().map(|&(p, a)| p.pow(a)).product()
    }

    /// `Some((p, a))` when the value is `p^a` with `a >= 1`.
    pub fn as_prime_power(&self) -> Option<(u64, u32)> {
        match self.factors.as_slice() {
            [single] => Some(*single),
            _ => None,
        }
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, a)| a == 1)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (p, a)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            if *a == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{a}")?;
            }
        }
        Ok(())
    }
}

fn check_positive(what: &'static str, n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::Range {
            what,
            value: n,
            limit: "must be >= 1".into(),
        });
    }
    Ok(())
}

/// Trial division by 2, 3, then 6k +/- 1 up to sqrt(n).
pub fn factorize(n: u64) -> Result<Factorization> {
    check_positive("n", n)?;
    if n > FACTORIZE_LIMIT {
        return Err(Error::Range {
            what: "n",
            value: n,
            limit: format!("factorization limit is {FACTORIZE_LIMIT}"),
        });
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut take = |p: u64, rest: &mut u64| {
        let mut a = 0;
        while (*rest).is_multiple_of(p) {
            *rest /= p;
            a += 1;
        }
        if a > 0 {
            factors.push((p, a));
        }
    };
    take(2, &mut rest);
    take(3, &mut rest);
    let mut k = 5;
    while k * k <= rest {
        take(k, &mut rest);
        take(k + 2, &mut rest);
        k += 6;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { factors })
}

/// Deterministic trial-division primality test, valid for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut k: u64 = 5;
    while k.checked_mul(k).is_some_and(|sq| sq <= n) {
        if n.is_multiple_of(k) || n.is_multiple_of(k + 2) {
            return false;
        }
        k += 6;
    }
    true
}

/// All divisors of `n`, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    Ok(divisors_of(&factorize(n)?))
}

pub(crate) fn divisors_of(f: &Factorization) -> Vec<u64> {
    let mut out = vec![1u64];
    for &(p, a) in f.factors() {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..a {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Möbius function.
pub fn mobius(n: u64) -> Result<i8> {
    Ok(mobius_of(&factorize(n)?))
}

pub(crate) fn mobius_of(f: &Factorization) -> i8 {
    if !f.is_squarefree() {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Euler's totient via the product formula over `n`'s factorization.
pub fn totient(n: u64) -> Result<BigCount> {
    Ok(BigCount::from(totient_of(&factorize(n)?)))
}

pub(crate) fn totient_of(f: &Factorization) -> u64 {
    f.factors()
        .iter()
        .map(|&(p, a)| p.pow(a) - p.pow(a - 1))
        .product()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// `base^exp mod modulus` by square-and-multiply.
pub fn mod_pow(base: u64, exp: u64, modulus: u64) -> Result<u64> {
    if modulus == 0 {
        return Err(Error::Range {
            what: "modulus",
            value: 0,
            limit: "must be >= 1".into(),
        });
    }
    Ok(mod_pow_unchecked(base, exp, modulus))
}

pub(crate) fn mod_pow_unchecked(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = u128::from(modulus);
    let mut acc: u128 = 1 % m;
    let mut b = u128::from(base) % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Exact `base^exp`, refused when the result would exceed `guard`.
pub fn big_pow(base: &BigCount, exp: u64, guard: SizeGuard) -> Result<BigCount> {
    let (fits, bits) = pow_fits(base.as_biguint(), exp, guard.max_bits);
    if !fits {
        return Err(guard.exceeded(format!(
            "{base}^{exp} needs at least {bits} bits, budget is {}",
            guard.max_bits
        )));
    }
    let e = u32::try_from(exp).map_err(|_| guard.exceeded(format!("exponent {exp} too large")))?;
    Ok(BigCount(base.as_biguint().pow(e)))
}

/// `m^e` for a machine-word base; callers have already admitted `m^e` through the guard.
pub(crate) fn pow_u64(m: u64, e: u64) -> BigUint {
    BigUint::from(m).pow(u32::try_from(e).expect("exponent admitted by size guard"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_oracle(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut p = 2;
        while n > 1 {
            let mut a = 0;
            while n.is_multiple_of(p) {
                n /= p;
                a += 1;
            }
            if a > 0 {
                out.push((p, a));
            }
            p += 1;
        }
        out
    }

    fn gcd_scan(n: u64) -> u64 {
        (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).unwrap().is_empty());
        assert_eq!(trial_division_oracle(12), vec![(2, 2), (3, 1)]);
        assert_eq!(trial_division_oracle(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(360).unwrap().factors(), &[(2, 3), (3, 2), (5, 1)]);
    }

    #[test]
    fn factorize_range_errors() {
        assert!(matches!(factorize(0), Err(Error::Range { .. })));
        assert!(matches!(
            factorize(FACTORIZE_LIMIT + 1),
            Err(Error::Range { .. })
        ));
        // Largest prime below 10^12 exercises the full trial-division loop.
        let f = factorize(999_999_999_989).unwrap();
        assert_eq!(f.factors(), &[(999_999_999_989, 1)]);
        let f = factorize(FACTORIZE_LIMIT).unwrap();
        assert_eq!(f.factors(), &[(2, 12), (5, 12)]);
    }

    #[test]
    fn factorize_reconstructs_small_n() {
        for n in 1..=10_000u64 {
            let f = factorize(n).unwrap();
            assert_eq!(f.value(), n);
            assert_eq!(f.factors(), trial_division_oracle(n).as_slice(), "n = {n}");
            assert!(f.primes().all(is_prime));
        }
    }

    #[test]
    fn from_pairs_validates() {
        assert!(Factorization::from_pairs(vec![(2, 3), (3, 1)]).is_ok());
        assert!(Factorization::from_pairs(vec![(4, 1)]).is_err());
        assert!(Factorization::from_pairs(vec![(3, 1), (2, 1)]).is_err());
        assert!(Factorization::from_pairs(vec![(2, 0)]).is_err());
        assert!(Factorization::from_pairs(vec![]).unwrap().is_empty());
    }

    #[test]
    fn divisors_examples() {
        assert_eq!(divisors(1).unwrap(), vec![1]);
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(7).unwrap(), vec![1, 7]);
        for n in 1..=500u64 {
            let scan: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
            assert_eq!(divisors(n).unwrap(), scan);
        }
    }

    #[test]
    fn mobius_examples_and_sum() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(12).unwrap(), 0);
        assert_eq!(mobius(30).unwrap(), -1);
        for n in 1..=10_000u64 {
            let s: i64 = divisors(n)
                .unwrap()
                .into_iter()
                .map(|d| i64::from(mobius(d).unwrap()))
                .sum();
            assert_eq!(s, i64::from(n == 1), "n = {n}");
        }
    }

    #[test]
    fn totient_examples_and_scan() {
        assert_eq!(totient(1).unwrap(), 1);
        assert_eq!(gcd_scan(12), 4);
        assert_eq!(totient(12).unwrap(), 4);
        assert_eq!(gcd_scan(9), 6);
        assert_eq!(totient(9).unwrap(), 6);
        for n in 1..=2000 {
            assert_eq!(totient(n).unwrap(), gcd_scan(n), "n = {n}");
        }
    }

    #[test]
    fn mod_pow_examples() {
        assert_eq!(mod_pow(5, 0, 7).unwrap(), 1);
        assert_eq!(mod_pow(2, 10, 1000).unwrap(), 24);
        assert_eq!(mod_pow(3, 4, 10).unwrap(), 1);
        assert_eq!(mod_pow(9, 0, 1).unwrap(), 0);
        assert!(matches!(mod_pow(2, 3, 0), Err(Error::Range { .. })));
        // Near-u64 modulus must not overflow intermediate products.
        let m = u64::MAX - 58;
        assert_eq!(mod_pow(m - 1, 2, m).unwrap(), 1);
    }

    #[test]
    fn big_pow_examples() {
        let g = SizeGuard::default();
        assert_eq!(big_pow(&2.into(), 10, g).unwrap(), 1024);
        assert_eq!(big_pow(&10.into(), 0, g).unwrap(), 1);
        assert_eq!(big_pow(&3.into(), 5, g).unwrap(), 243);
        assert_eq!(big_pow(&0.into(), 0, g).unwrap(), 1);
        assert_eq!(big_pow(&0.into(), 9, g).unwrap(), 0);
    }

    #[test]
    fn big_pow_guard_is_exact_at_boundary() {
        let g = SizeGuard::new(64);
        // 2^63 has 64 bits, 2^64 has 65.
        assert!(big_pow(&2.into(), 63, g).is_ok());
        let err = big_pow(&2.into(), 64, g).unwrap_err();
        assert!(err.is_size());
        assert!(err.to_string().contains("guard-bits"));
        // 3^40 has 64 bits, 3^41 has 65.
        assert!(big_pow(&3.into(), 40, g).is_ok());
        assert!(big_pow(&3.into(), 41, g).is_err());
        assert!(big_pow(&2.into(), u64::MAX, SizeGuard::default()).is_err());
        assert!(SizeGuard::default().admit_pow(2, 1 << 20).is_err());
        assert!(SizeGuard::default().admit_pow(2, (1 << 20) - 1).is_ok());
    }

    #[test]
    fn bigcount_helpers() {
        let c = BigCount::from(54);
        assert_eq!(c.div_exact(6).unwrap(), 9);
        assert!(c.div_exact(5).is_none());
        assert!(c.div_exact(0).is_none());
        assert_eq!(c.rem_u64(5), 4);
        assert!(BigCount::from(3).checked_sub(&4.into()).is_none());
        assert_eq!(
            "123456789012345678901234567890"
                .parse::<BigCount>()
                .unwrap()
                .to_string(),
            "123456789012345678901234567890"
        );
        assert!("-1".parse::<BigCount>().is_err());
    }

    proptest::proptest! {
        #[test]
        fn mod_pow_matches_big_pow(b in 0u64..=64, e in 0u64..=64, m in 1u64..=1_000_000) {
            let exact = big_pow(&b.into(), e, SizeGuard::default()).unwrap();
            proptest::prop_assert_eq!(mod_pow(b, e, m).unwrap(), exact.rem_u64(m));
        }

        #[test]
        fn is_prime_agrees_with_factorize(n in 1u64..2_000_000) {
            let f = factorize(n).unwrap();
            proptest::prop_assert_eq!(is_prime(n), f.as_prime_power() == Some((n, 1)));
        }
    }
}
