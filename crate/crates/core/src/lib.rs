//! Exact counting of aperiodic ("translation-asymmetric") words.
//!
//! A word of length `N` over an alphabet of `m` symbols is *periodic* when it
//! is a whole power of a shorter word and *aperiodic* (primitive) otherwise.
//! The number of aperiodic words, written `tau(m, N)` throughout this crate,
//! is computed three independent ways in [`counting`]; [`words`] provides
//! concrete period detection and exhaustive enumeration to check those counts,
//! and [`congruence`] derives Fermat's and Euler's congruences from them.

pub mod congruence;
pub mod counting;
mod error;
pub mod numtheory;
pub mod words;

pub use congruence::{
    euler_check, euler_prime_power_witness, euler_witnesses, fermat_check, sweep, sweep_with,
    tau_primality_test, tau_primality_test_mod, Bounds, Counterexample, Identity, PrimeWitness,
    SweepRow, VerificationReport,
};
pub use counting::{
    lyndon_count, symmetry_count, tau_breakdown, tau_inclusion_exclusion, tau_mobius, tau_mod,
    tau_prime_power, TauBreakdown,
};
pub use error::{Error, Result};
pub use numtheory::{
    big_pow, divisors, factorize, gcd, is_prime, mobius, mod_pow, totient, BigCount, Factorization,
    SizeGuard, FACTORIZE_LIMIT,
};
pub use words::{
    canonical_rotation, duval_lyndon, enumerate_by_period, exact_period, exact_period_border,
    exact_period_divisor_scan, period_histogram, rotate, rotation_class_size, EnumerationGuard,
    LyndonWords, PeriodReport, Word, WordOdometer,
};
