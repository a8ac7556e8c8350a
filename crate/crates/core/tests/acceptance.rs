//! Acceptance suite: every criterion runs at its stated exactness and time
//! budget and prints one PASS/FAIL line. Run with
//! `cargo test -p aperiodic --test acceptance -- --nocapture`.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use aperiodic::congruence::combine_witnesses;
use aperiodic::{
    big_pow, canonical_rotation, divisors, duval_lyndon, euler_check, euler_witnesses,
    exact_period_border, exact_period_divisor_scan, factorize, fermat_check, gcd, is_prime,
    period_histogram, rotation_class_size, tau_breakdown, tau_inclusion_exclusion, tau_mobius,
    tau_primality_test, tau_primality_test_mod, tau_prime_power, BigCount, EnumerationGuard,
    SizeGuard, Word, WordOdometer,
};

const G: SizeGuard = SizeGuard::new(SizeGuard::DEFAULT_BITS);

/// Largest number of words any exhaustive criterion enumerates for one (m, N).
const ORACLE_WORDS: u64 = 2_000_000;

/// Alphabet sizes swept by the brute-force oracle criterion.
const ORACLE_MAX_M: u32 = 16;

/// Lengths swept for the unary alphabet, where every N satisfies 1^N <= ORACLE_WORDS.
const ORACLE_UNARY_MAX_N: usize = 30;

struct Outcome {
    id: u32,
    name: &'static str,
    budget: Duration,
    elapsed: Duration,
    checked: u64,
    failure: Option<String>,
}

impl Outcome {
    fn passed(&self) -> bool {
        self.failure.is_none() && self.elapsed <= self.budget
    }
}

fn run(
    id: u32,
    name: &'static str,
    budget: Duration,
    body: impl FnOnce(&mut u64) -> Result<(), String>,
) -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let result = body(&mut checked);
    Outcome {
        id,
        name,
        budget,
        elapsed: start.elapsed(),
        checked,
        failure: result.err(),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_divisor_sum(checked: &mut u64) -> Result<(), String> {
    for m in 1..=5u64 {
        for n in 1..=24u64 {
            let sum: BigCount = divisors(n)
                .unwrap()
                .into_iter()
                .map(|j| tau_mobius(m, j, G).unwrap())
                .sum();
            let total = big_pow(&m.into(), n, G).unwrap();
            ensure(sum == total, || {
                format!("m={m} N={n}: sum {sum} != m^N {total}")
            })?;
            *checked += 1;
        }
    }
    ensure(*checked == 120, || {
        format!("expected 120 cases, ran {checked}")
    })
}

fn criterion_divisibility(checked: &mut u64) -> Result<(), String> {
    for m in 1..=5u64 {
        for j in 1..=30u64 {
            let tau = tau_mobius(m, j, G).unwrap();
            ensure(tau.rem_u64(j) == 0, || {
                format!("m={m} J={j}: {j} does not divide {tau}")
            })?;
            *checked += 1;
        }
    }
    Ok(())
}

fn criterion_three_routes(checked: &mut u64) -> Result<(), String> {
    for m in 1..=4u64 {
        for n in 1..=30u64 {
            let f = factorize(n).unwrap();
            let mob = tau_mobius(m, n, G).unwrap();
            let ie = tau_inclusion_exclusion(m, &f, G).unwrap();
            ensure(mob == ie, || {
                format!("m={m} N={n}: mobius {mob} != inclusion-exclusion {ie}")
            })?;
            *checked += 1;
            if let Some((p, a)) = f.as_prime_power() {
                let pp = tau_prime_power(m, p, a, G).unwrap();
                ensure(mob == pp, || {
                    format!("m={m} N={n}: mobius {mob} != prime-power {pp}")
                })?;
                *checked += 1;
            }
        }
    }
    Ok(())
}

fn oracle_pairs() -> Vec<(u32, usize)> {
    let mut pairs: Vec<(u32, usize)> = (1..=ORACLE_UNARY_MAX_N).map(|n| (1, n)).collect();
    for m in 2..=ORACLE_MAX_M {
        let mut n = 1usize;
        while u64::from(m).pow(n as u32) <= ORACLE_WORDS {
            pairs.push((m, n));
            n += 1;
        }
    }
    pairs
}

fn check_oracle_pair(m: u32, n: usize, guard: EnumerationGuard) -> Result<(), String> {
    let hist = period_histogram(m, n, guard).map_err(|e| e.to_string())?;
    let breakdown = tau_breakdown(u64::from(m), n as u64, G).map_err(|e| e.to_string())?;
    let expected: BTreeMap<u64, u64> = breakdown
        .per_period
        .iter()
        .map(|(&j, c)| (j, c.to_u64().unwrap()))
        .filter(|&(_, c)| c > 0)
        .collect();
    ensure(hist == expected, || {
        format!("m={m} N={n}: enumeration {hist:?} != breakdown {expected:?}")
    })
}

fn criterion_brute_force(checked: &mut u64) -> Result<(), String> {
    let guard = EnumerationGuard::new(ORACLE_WORDS);
    for (m, n) in oracle_pairs() {
        check_oracle_pair(m, n, guard)?;
        *checked += 1;
    }
    // 2^21 = 2,097,152 words: just past the cap, enumerated with a widened guard.
    check_oracle_pair(2, 21, EnumerationGuard::new(1 << 21))?;
    *checked += 1;
    Ok(())
}

fn criterion_worked_example(checked: &mut u64) -> Result<(), String> {
    let w = Word::new(vec![1, 2, 1, 2, 1, 2, 1, 2], 3).unwrap();
    for (label, r) in [
        ("divisor-scan", exact_period_divisor_scan(&w)),
        ("border", exact_period_border(&w)),
    ] {
        ensure(
            r.exact_period == 2 && r.is_symmetry && r.admissible_periods == [2, 4, 8],
            || format!("{label}: {r:?}"),
        )?;
        *checked += 1;
    }
    Ok(())
}

fn criterion_fermat(checked: &mut u64) -> Result<(), String> {
    for p in (2..=997u64).filter(|&p| is_prime(p)) {
        for m in 1..=100u64 {
            ensure(fermat_check(p, m), || format!("p={p} m={m}"))?;
            *checked += 1;
        }
    }
    ensure(*checked == 168 * 100, || {
        format!("expected 16800 checks, ran {checked}")
    })
}

fn criterion_euler(checked: &mut u64) -> Result<(), String> {
    for n in 1..=500u64 {
        for m in (1..=500u64).filter(|&m| gcd(m, n) == 1) {
            ensure(euler_check(n, m).unwrap(), || format!("n={n} m={m}"))?;
            *checked += 1;
        }
    }
    for n in 1..=200u64 {
        for m in (1..=50u64).filter(|&m| gcd(m, n) == 1) {
            let ws = euler_witnesses(n, m).unwrap();
            ensure(ws.iter().all(|w| w.holds), || {
                format!("witness failed n={n} m={m}: {ws:?}")
            })?;
            ensure(combine_witnesses(&ws) == n, || {
                format!("witnesses do not combine to n={n}")
            })?;
            *checked += 1;
        }
    }
    Ok(())
}

fn criterion_primality(checked: &mut u64) -> Result<(), String> {
    for n in 2..=64u64 {
        let got = tau_primality_test(n, 2, G).unwrap();
        ensure(got == is_prime(n), || format!("exact route N={n}: {got}"))?;
        *checked += 1;
    }
    for n in 2..=1000u64 {
        let got = tau_primality_test_mod(n, 2).unwrap();
        ensure(got == is_prime(n), || format!("modular route N={n}: {got}"))?;
        *checked += 1;
    }
    Ok(())
}

fn criterion_cyclic_class(checked: &mut u64) -> Result<(), String> {
    for n in 1..=12 {
        for w in WordOdometer::new(2, n).unwrap() {
            let size = rotation_class_size(&w) as u64;
            let period = exact_period_border(&w).exact_period;
            ensure(size == period, || {
                format!("{w}: class size {size} != period {period}")
            })?;
            *checked += 1;
        }
    }
    ensure(*checked == 8190, || {
        format!("expected 8190 words, ran {checked}")
    })
}

fn criterion_lyndon(checked: &mut u64) -> Result<(), String> {
    for m in 1..=3u32 {
        for n in 1..=12usize {
            let words = duval_lyndon(m, n, EnumerationGuard::default()).unwrap();
            let tau = tau_mobius(u64::from(m), n as u64, G).unwrap();
            ensure(tau == (words.len() * n) as u64, || {
                format!("m={m} N={n}: {} Lyndon words * N != tau {tau}", words.len())
            })?;
            for w in &words {
                ensure(canonical_rotation(w) == *w, || {
                    format!("{w} is not its least rotation")
                })?;
            }
            *checked += 1;
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    let secs = Duration::from_secs;
    let outcomes = vec![
        run(
            1,
            "divisor-sum identity, m<=5, N<=24",
            secs(1),
            criterion_divisor_sum,
        ),
        run(
            2,
            "J | tau(m, J), m<=5, J<=30",
            secs(1),
            criterion_divisibility,
        ),
        run(
            3,
            "inclusion-exclusion == Mobius == prime-power, m<=4, N<=30",
            secs(1),
            criterion_three_routes,
        ),
        run(
            4,
            "exhaustive period classification, m^N <= 2e6",
            secs(30),
            criterion_brute_force,
        ),
        run(
            5,
            "worked example (1,2,1,2,1,2,1,2) -> period 2, {2,4,8}",
            secs(1),
            criterion_worked_example,
        ),
        run(
            6,
            "Fermat p | m^p - m, p<=997, m<=100",
            secs(1),
            criterion_fermat,
        ),
        run(
            7,
            "Euler n | m^phi(n) - 1, n,m<=500; witnesses n<=200, m<=50",
            secs(5),
            criterion_euler,
        ),
        run(
            8,
            "tau primality == trial division, N<=64 exact, N<=1000 modular",
            secs(2),
            criterion_primality,
        ),
        run(
            9,
            "rotation class size == exact period, binary N<=12",
            secs(2),
            criterion_cyclic_class,
        ),
        run(
            10,
            "|Lyndon(m,N)| * N == tau(m,N), m<=3, N<=12",
            secs(2),
            criterion_lyndon,
        ),
    ];

    for o in &outcomes {
        let status = if o.passed() { "PASS" } else { "FAIL" };
        println!(
            "[{status}] criterion {:>2}: {} ({} checks, {:.3}s of {}s)",
            o.id,
            o.name,
            o.checked,
            o.elapsed.as_secs_f64(),
            o.budget.as_secs()
        );
        if let Some(f) = &o.failure {
            println!("         {f}");
        } else if o.elapsed > o.budget {
            println!("         over time budget");
        }
    }
    let failed: Vec<u32> = outcomes
        .iter()
        .filter(|o| !o.passed())
        .map(|o| o.id)
        .collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
