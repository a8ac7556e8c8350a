//! Shared input generators for the criterion benches.

use aperiodic::Word;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Uniformly random word, reproducible from `seed`.
pub fn random_word(seed: u64, alphabet_size: u32, len: usize) -> Word {
    let mut rng = StdRng::seed_from_u64(seed);
    let symbols = (0..len).map(|_| rng.gen_range(0..alphabet_size)).collect();
    Word::new(symbols, alphabet_size).expect("generated symbols are in range")
}

/// `block` repeated `reps` times: a periodic word with a known exact period
/// (when `block` itself is primitive).
pub fn power_word(seed: u64, alphabet_size: u32, block_len: usize, reps: usize) -> Word {
    let block = random_word(seed, alphabet_size, block_len);
    Word::new(block.symbols().repeat(reps), alphabet_size).expect("symbols are in range")
}
