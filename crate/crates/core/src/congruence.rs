//! Fermat's and Euler's congruences, derived from the word counts, and
//! exhaustive sweeps that check the counting identities over parameter grids.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::counting::{tau_mobius, tau_mod};
use crate::error::{Error, Result};
use crate::numtheory::{
    big_pow, divisors_of, factorize, gcd, is_prime, mod_pow_unchecked, totient_of, BigCount,
    SizeGuard,
};

/// `p | m^p - m`. Meaningful for prime `p`; composite `p` may or may not pass.
pub fn fermat_check(p: u64, m: u64) -> bool {
    assert!(p >= 2, "fermat_check needs p >= 2");
    mod_pow_unchecked(m, p, p) == m % p
}

/// `n | m^phi(n) - 1`; `gcd(m, n) != 1` is a caller error.
pub fn euler_check(n: u64, m: u64) -> Result<bool> {
    if n == 0 || m == 0 {
        return Err(Error::argument("euler_check needs n >= 1 and m >= 1"));
    }
    if gcd(m, n) != 1 {
        return Err(Error::argument(format!("gcd({m}, {n}) != 1")));
    }
    let phi = totient_of(&factorize(n)?);
    Ok(mod_pow_unchecked(m, phi, n) == 1 % n)
}

/// `p^alpha | m^(s * (p^alpha - p^(alpha-1))) - 1`, the per-prime-power step of
/// Euler's congruence.
pub fn euler_prime_power_witness(m: u64, p: u64, alpha: u32, s: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::argument(format!("{p} is not prime")));
    }
    if alpha == 0 || s == 0 || m == 0 {
        return Err(Error::argument("m, alpha and s must be >= 1"));
    }
    if gcd(m, p) != 1 {
        return Err(Error::argument(format!("gcd({m}, {p}) != 1")));
    }
    let pa = p.checked_pow(alpha).ok_or_else(|| Error::Range {
        what: "p^alpha",
        value: p,
        limit: format!("{p}^{alpha} overflows u64"),
    })?;
    let local_phi = pa - pa / p;
    let exp = s.checked_mul(local_phi).ok_or_else(|| Error::Range {
        what: "s",
        value: s,
        limit: "s * phi(p^alpha) overflows u64".into(),
    })?;
    Ok(mod_pow_unchecked(m, exp, pa) == 1 % pa)
}

/// One prime-power factor of `n` with its cofactor exponent
/// `s = phi(n) / phi(p^alpha)` and whether the witness holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrimeWitness {
    pub prime: u64,
    pub exponent: u32,
    pub s: u64,
    pub holds: bool,
}

impl PrimeWitness {
    pub fn prime_power(&self) -> u64 {
        self.prime.pow(self.exponent)
    }
}

/// The witness for every prime power dividing `n`.
pub fn euler_witnesses(n: u64, m: u64) -> Result<Vec<PrimeWitness>> {
    if gcd(m, n) != 1 {
        return Err(Error::argument(format!("gcd({m}, {n}) != 1")));
    }
    let f = factorize(n)?;
    let phi = totient_of(&f);
    f.factors()
        .iter()
        .map(|&(p, a)| {
            let local = p.pow(a) - p.pow(a - 1);
            let s = phi / local;
            Ok(PrimeWitness {
                prime: p,
                exponent: a,
                s,
                holds: euler_prime_power_witness(m, p, a, s)?,
            })
        })
        .collect()
}

/// The prime powers are pairwise coprime, so their product divides
/// `m^phi(n) - 1` exactly when each one does.
pub fn combine_witnesses(witnesses: &[PrimeWitness]) -> u64 {
    witnesses
        .iter()
        .filter(|w| w.holds)
        .map(PrimeWitness::prime_power)
        .product()
}

fn check_primality_args(n: u64, m: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::Range {
            what: "N",
            value: n,
            limit: "must be >= 2".into(),
        });
    }
    if m < 2 {
        return Err(Error::Range {
            what: "m",
            value: m,
            limit: "must be >= 2".into(),
        });
    }
    Ok(())
}

/// `tau(m, N) == m^N - m`, which for a fixed `m >= 2` holds exactly when `N` is prime.
pub fn tau_primality_test(n: u64, m: u64, guard: SizeGuard) -> Result<bool> {
    check_primality_args(n, m)?;
    let tau = tau_mobius(m, n, guard)?;
    let total = big_pow(&BigCount::from(m), n, guard)?;
    Ok(total.checked_sub(&m.into()) == Some(tau))
}

/// Moduli for [`tau_primality_test_mod`]: the Mersenne primes 2^61 - 1 and
/// 2^31 - 1 and two common NTT primes.
pub const PRIMALITY_MODULI: [u64; 4] = [(1 << 61) - 1, (1 << 31) - 1, 1_000_000_007, 998_244_353];

/// [`tau_primality_test`] evaluated modulo each of [`PRIMALITY_MODULI`].
///
/// A prime `N` always passes. A composite `N` passes only if `m^N - tau - m`
/// is divisible by every modulus, which never happens for the lengths this
/// crate checks.
pub fn tau_primality_test_mod(n: u64, m: u64) -> Result<bool> {
    check_primality_args(n, m)?;
    for q in PRIMALITY_MODULI {
        let tau = tau_mod(m, n, q)?;
        let target = (i128::from(mod_pow_unchecked(m, n, q)) - i128::from(m % q))
            .rem_euclid(i128::from(q)) as u64;
        if tau != target {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    /// `p | m^p - m` over primes `p <= max_n`, `1 <= m <= max_m`.
    Fermat,
    /// `n | m^phi(n) - 1` over `n <= max_n`, coprime `m <= max_m`.
    Euler,
    /// `sum over J | N of tau(m, J) = m^N` over `m <= max_m`, `N <= max_n`.
    DivisorSum,
    /// `J | tau(m, J)` over `m <= max_m`, `J <= max_n`.
    PeriodDivisibility,
    /// `tau(m, N) == m^N - m` iff `N` prime, over `2 <= m <= max_m`, `2 <= N <= max_n`.
    TauPrimality,
}

impl Identity {
    pub const ALL: [Identity; 5] = [
        Identity::Fermat,
        Identity::Euler,
        Identity::DivisorSum,
        Identity::PeriodDivisibility,
        Identity::TauPrimality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Fermat => "fermat",
            Identity::Euler => "euler",
            Identity::DivisorSum => "divisor-sum",
            Identity::PeriodDivisibility => "period-divisibility",
            Identity::TauPrimality => "tau-primality",
        }
    }

    /// Names of the two swept parameters, outer loop first.
    pub fn params(self) -> [&'static str; 2] {
        match self {
            Identity::Fermat => ["p", "m"],
            Identity::Euler => ["n", "m"],
            Identity::DivisorSum => ["m", "N"],
            Identity::PeriodDivisibility => ["m", "J"],
            Identity::TauPrimality => ["m", "N"],
        }
    }

    pub fn default_bounds(self) -> Bounds {
        let (max_m, max_n) = match self {
            Identity::Fermat => (1000, 97),
            Identity::Euler => (200, 200),
            Identity::DivisorSum => (5, 24),
            Identity::PeriodDivisibility => (5, 30),
            Identity::TauPrimality => (2, 64),
        };
        Bounds {
            max_m,
            max_n,
            guard: SizeGuard::default(),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Identity::ALL.iter().map(|i| i.name()).collect();
                Error::argument(format!(
                    "unknown identity {s:?}; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

/// Upper bounds of a sweep grid. `max_n` bounds `p` for Fermat and the
/// modulus or length for the other identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub max_m: u64,
    pub max_n: u64,
    pub guard: SizeGuard,
}

/// One checked instance of a sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub params: [(&'static str, u64); 2],
    pub observed: String,
    pub expected: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub parameters: BTreeMap<String, u64>,
    pub observed: String,
    pub expected: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub identity_name: String,
    pub parameter_range: String,
    pub checked: u64,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

/// Runs a sweep and returns only the report.
pub fn sweep(identity: Identity, bounds: Bounds) -> Result<VerificationReport> {
    sweep_with(identity, bounds, |_| {})
}

/// Runs a sweep in lexicographic parameter order, handing every row to `on_row`.
/// The report keeps the first failing row.
pub fn sweep_with(
    identity: Identity,
    bounds: Bounds,
    mut on_row: impl FnMut(&SweepRow),
) -> Result<VerificationReport> {
    let [a, b] = identity.params();
    let (min_m, min_n) = match identity {
        Identity::Fermat => (1, 2),
        Identity::TauPrimality => (2, 2),
        _ => (1, 1),
    };
    if bounds.max_m < min_m || bounds.max_n < min_n {
        return Err(Error::argument(format!(
            "empty grid for {identity}: need max-m >= {min_m} and max-n >= {min_n}"
        )));
    }
    let parameter_range = match identity {
        Identity::Fermat => format!("prime p <= {}, 1 <= m <= {}", bounds.max_n, bounds.max_m),
        Identity::Euler => format!(
            "1 <= n <= {}, 1 <= m <= {} with gcd(m, n) = 1",
            bounds.max_n, bounds.max_m
        ),
        Identity::TauPrimality => format!("2 <= m <= {}, 2 <= N <= {}", bounds.max_m, bounds.max_n),
        _ => format!("1 <= {a} <= {}, 1 <= {b} <= {}", bounds.max_m, bounds.max_n),
    };

    let mut rec = Recorder::new(identity, &mut on_row);
    let mut record = |x, y, observed, expected| rec.record(x, y, observed, expected);

    match identity {
        Identity::Fermat => {
            for p in (2..=bounds.max_n).filter(|&p| is_prime(p)) {
                for m in 1..=bounds.max_m {
                    let observed = mod_pow_unchecked(m, p, p);
                    record(p, m, observed.to_string(), (m % p).to_string());
                }
            }
        }
        Identity::Euler => {
            for n in 1..=bounds.max_n {
                let phi = totient_of(&factorize(n)?);
                for m in (1..=bounds.max_m).filter(|&m| gcd(m, n) == 1) {
                    let observed = mod_pow_unchecked(m, phi, n);
                    record(n, m, observed.to_string(), (1 % n).to_string());
                }
            }
        }
        Identity::DivisorSum => {
            for m in 1..=bounds.max_m {
                for n in 1..=bounds.max_n {
                    let total = big_pow(&m.into(), n, bounds.guard)?;
                    let sum = divisors_of(&factorize(n)?)
                        .into_iter()
                        .map(|j| tau_mobius(m, j, bounds.guard))
                        .sum::<Result<BigCount>>()?;
                    record(m, n, sum.to_string(), total.to_string());
                }
            }
        }
        Identity::PeriodDivisibility => {
            for m in 1..=bounds.max_m {
                for j in 1..=bounds.max_n {
                    let residue = if bounds.guard.admit_pow(m, j).is_ok() {
                        tau_mobius(m, j, bounds.guard)?.rem_u64(j)
                    } else {
                        tau_mod(m, j, j)?
                    };
                    record(m, j, residue.to_string(), "0".into());
                }
            }
        }
        Identity::TauPrimality => {
            for m in 2..=bounds.max_m {
                for n in 2..=bounds.max_n {
                    let observed = if bounds.guard.admit_pow(m, n).is_ok() {
                        tau_primality_test(n, m, bounds.guard)?
                    } else {
                        tau_primality_test_mod(n, m)?
                    };
                    record(m, n, observed.to_string(), is_prime(n).to_string());
                }
            }
        }
    }

    Ok(rec.finish(parameter_range))
}

struct Recorder<F> {
    identity: Identity,
    on_row: F,
    checked: u64,
    counterexample: Option<Counterexample>,
}

impl<F: FnMut(&SweepRow)> Recorder<F> {
    fn new(identity: Identity, on_row: F) -> Self {
        Recorder {
            identity,
            on_row,
            checked: 0,
            counterexample: None,
        }
    }

    fn record(&mut self, x: u64, y: u64, observed: String, expected: String) {
        let [a, b] = self.identity.params();
        let row = SweepRow {
            params: [(a, x), (b, y)],
            ok: observed == expected,
            observed,
            expected,
        };
        self.checked += 1;
        if !row.ok && self.counterexample.is_none() {
            self.counterexample = Some(Counterexample {
                parameters: row
                    .params
                    .iter()
                    .map(|&(k, v)| (k.to_string(), v))
                    .collect(),
                observed: row.observed.clone(),
                expected: row.expected.clone(),
            });
        }
        (self.on_row)(&row);
    }

    fn finish(self, parameter_range: String) -> VerificationReport {
        VerificationReport {
            identity_name: self.identity.name().to_string(),
            parameter_range,
            checked: self.checked,
            passed: self.counterexample.is_none(),
            counterexample: self.counterexample,
        }
    }
}
