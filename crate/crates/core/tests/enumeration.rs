use std::collections::HashSet;

use aperiodic::{
    enumerate_by_period, exact_period_divisor_scan, tau_breakdown, EnumerationGuard, SizeGuard,
};

const PARTITION_WORDS: u64 = 100_000;

#[test]
fn period_classes_partition_the_word_space() {
    for m in 1..=8u32 {
        let max_n = if m == 1 {
            20
        } else {
            (1..)
                .take_while(|&n| u64::from(m).pow(n) <= PARTITION_WORDS)
                .last()
                .unwrap()
        };
        for n in 1..=max_n as usize {
            let classes =
                enumerate_by_period(m, n, EnumerationGuard::new(PARTITION_WORDS)).unwrap();
            let breakdown = tau_breakdown(u64::from(m), n as u64, SizeGuard::default()).unwrap();

            let mut seen = HashSet::new();
            for (&j, words) in &classes {
                assert!(
                    words.windows(2).all(|p| p[0] < p[1]),
                    "class {j} not in lexicographic order"
                );
                assert_eq!(
                    breakdown.per_period[&j],
                    words.len() as u64,
                    "m={m} N={n} J={j}"
                );
                for w in words {
                    assert_eq!(exact_period_divisor_scan(w).exact_period, j);
                    assert!(seen.insert(w.symbols().to_vec()), "{w} listed twice");
                }
            }
            assert_eq!(
                breakdown.total,
                seen.len() as u64,
                "m={m} N={n}: classes do not cover X^N"
            );
            for (j, c) in &breakdown.per_period {
                if !c.is_zero() {
                    assert!(classes.contains_key(j));
                }
            }
        }
    }
}

#[test]
fn counting_is_safe_across_threads() {
    let handles: Vec<_> = (1..=8u64)
        .map(|m| {
            std::thread::spawn(move || {
                (1..=40u64)
                    .map(|n| aperiodic::tau_mobius(m, n, SizeGuard::default()).unwrap())
                    .collect::<Vec<_>>()
            })
        })
        .collect();
    for (m, h) in (1..=8u64).zip(handles) {
        let parallel = h.join().unwrap();
        for (n, v) in (1..=40u64).zip(parallel) {
            assert_eq!(
                v,
                aperiodic::tau_mobius(m, n, SizeGuard::default()).unwrap()
            );
        }
    }
}
