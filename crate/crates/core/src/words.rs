//! Concrete words over a finite alphabet `{0, .., m-1}`.
//!
//! A word `w` of length `N` repeats with length `J` when `J | N` and
//! `w[i] == w[i mod J]` for every position `i`. The smallest such `J` is the
//! exact period; `N` itself always qualifies, so every word has one. Words
//! with exact period `N` are aperiodic (primitive); the rest are periodic.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::counting::lyndon_count;
use crate::error::{Error, Result};
use crate::numtheory::{divisors, SizeGuard};

/// Largest alphabet that has a single-character-per-symbol text form.
pub const COMPACT_ALPHABET_LIMIT: u32 = 36;

const COMPACT_DIGITS: &[u8; 36] = b"0123456789abcdefghijklmnopqrstuvwxyz";

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    symbols: Vec<u32>,
    alphabet_size: u32,
}

impl Word {
    pub fn new(symbols: Vec<u32>, alphabet_size: u32) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::argument("a word must have at least one symbol"));
        }
        if let Some((i, &s)) = symbols
            .iter()
            .enumerate()
            .find(|(_, &s)| s >= alphabet_size)
        {
            return Err(Error::argument(format!(
                "symbol {s} at index {i} is outside the alphabet of size {alphabet_size}"
            )));
        }
        Ok(Word {
            symbols,
            alphabet_size,
        })
    }

    /// Parses either the compact form `01011` (one character per symbol,
    /// `0-9a-z`) or the list form `0,1,0,1,1`, optionally parenthesized.
    /// Alphabets larger than 36 always use the list form.
    ///
    /// Error positions are 0-based character offsets into `text`.
    pub fn parse(text: &str, alphabet_size: u32) -> Result<Self> {
        let lead = text.len() - text.trim_start().len();
        let body = text.trim();
        let parens = body.starts_with('(') && body.ends_with(')') && body.len() >= 2;
        let (body, offset) = if parens {
            (&body[1..body.len() - 1], lead + 1)
        } else {
            (body, lead)
        };
        if body.trim().is_empty() {
            return Err(Error::Parse {
                position: offset,
                message: "empty word".into(),
            });
        }

        let list = parens || body.contains(',') || alphabet_size > COMPACT_ALPHABET_LIMIT;
        let symbols = if list {
            parse_list(body, offset)?
        } else {
            parse_compact(body, offset)?
        };

        let char_positions = symbol_positions(body, offset, list);
        if let Some((i, &s)) = symbols
            .iter()
            .enumerate()
            .find(|(_, &s)| s >= alphabet_size)
        {
            return Err(Error::Parse {
                position: char_positions[i],
                message: format!("symbol {s} is outside the alphabet of size {alphabet_size}"),
            });
        }
        Word::new(symbols, alphabet_size)
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    /// Always false; words have at least one symbol.
    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn to_compact_string(&self) -> Option<String> {
        (self.alphabet_size <= COMPACT_ALPHABET_LIMIT).then(|| {
            self.symbols
                .iter()
                .map(|&s| COMPACT_DIGITS[s as usize] as char)
                .collect()
        })
    }

    pub fn to_list_string(&self) -> String {
        let parts: Vec<String> = self.symbols.iter().map(u32::to_string).collect();
        parts.join(",")
    }
}

/// Compact form when the alphabet allows it, list form otherwise.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_compact_string() {
            Some(s) => f.write_str(&s),
            None => f.write_str(&self.to_list_string()),
        }
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn parse_compact(body: &str, offset: usize) -> Result<Vec<u32>> {
    body.chars()
        .enumerate()
        .map(|(i, c)| {
            c.to_digit(36)
                .filter(|_| !c.is_ascii_uppercase())
                .ok_or_else(|| Error::Parse {
                    position: offset + i,
                    message: format!("{c:?} is not a symbol (expected 0-9 or a-z)"),
                })
        })
        .collect()
}

fn parse_list(body: &str, offset: usize) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    let mut start = 0;
    for token in body.split(',') {
        let trimmed = token.trim();
        let pos = offset + body[..start].chars().count() + (token.len() - token.trim_start().len());
        let value = trimmed.parse::<u32>().map_err(|_| Error::Parse {
            position: pos,
            message: format!("{trimmed:?} is not a nonnegative integer symbol"),
        })?;
        out.push(value);
        start += token.len() + 1;
    }
    Ok(out)
}

fn symbol_positions(body: &str, offset: usize, list: bool) -> Vec<usize> {
    if !list {
        return (0..body.chars().count()).map(|i| offset + i).collect();
    }
    let mut out = Vec::new();
    let mut start = 0;
    for token in body.split(',') {
        out.push(offset + body[..start].chars().count() + (token.len() - token.trim_start().len()));
        start += token.len() + 1;
    }
    out
}

/// Exact period, symmetry flag and every length the word repeats with.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodReport {
    pub exact_period: u64,
    /// True when the exact period is shorter than the word.
    pub is_symmetry: bool,
    /// Ascending divisors `J` of `N` with `w[i] == w[i mod J]` for all `i`.
    pub admissible_periods: Vec<u64>,
}

impl PeriodReport {
    fn from_exact(exact_period: u64, len: u64) -> Self {
        let admissible_periods = word_length_divisors(len)
            .into_iter()
            .filter(|d| d % exact_period == 0)
            .collect();
        PeriodReport {
            exact_period,
            is_symmetry: exact_period < len,
            admissible_periods,
        }
    }
}

fn word_length_divisors(len: u64) -> Vec<u64> {
    divisors(len).expect("word lengths are within the factorization limit")
}

fn repeats_with(w: &[u32], j: usize) -> bool {
    w.iter().enumerate().all(|(i, &s)| s == w[i % j])
}

/// Checks every divisor of `N` directly.
pub fn exact_period_divisor_scan(w: &Word) -> PeriodReport {
    let len = w.len() as u64;
    let admissible_periods: Vec<u64> = word_length_divisors(len)
        .into_iter()
        .filter(|&j| repeats_with(w.symbols(), j as usize))
        .collect();
    let exact_period = admissible_periods[0];
    PeriodReport {
        exact_period,
        is_symmetry: exact_period < len,
        admissible_periods,
    }
}

/// Linear-time detection from the longest proper border.
pub fn exact_period_border(w: &Word) -> PeriodReport {
    let mut fail = Vec::new();
    PeriodReport::from_exact(border_period(w.symbols(), &mut fail) as u64, w.len() as u64)
}

/// Exact period of a nonempty symbol slice.
pub fn exact_period(symbols: &[u32]) -> usize {
    assert!(!symbols.is_empty(), "exact_period of an empty slice");
    border_period(symbols, &mut Vec::with_capacity(symbols.len()))
}

/// Exact period of a nonempty slice via the failure function; `fail` is scratch space.
pub(crate) fn border_period(w: &[u32], fail: &mut Vec<usize>) -> usize {
    let n = w.len();
    fail.clear();
    fail.resize(n, 0);
    let mut b = 0;
    for i in 1..n {
        while b > 0 && w[i] != w[b] {
            b = fail[b - 1];
        }
        if w[i] == w[b] {
            b += 1;
        }
        fail[i] = b;
    }
    let p = n - fail[n - 1];
    if n.is_multiple_of(p) {
        p
    } else {
        n
    }
}

/// Cyclic left shift: `out[i] = w[(i + k) mod N]`.
pub fn rotate(w: &Word, k: usize) -> Word {
    let mut symbols = w.symbols.clone();
    symbols.rotate_left(k % w.len());
    Word {
        symbols,
        alphabet_size: w.alphabet_size,
    }
}

/// Number of distinct rotations, found by listing them.
pub fn rotation_class_size(w: &Word) -> usize {
    (0..w.len())
        .map(|k| rotate(w, k).symbols)
        .collect::<HashSet<_>>()
        .len()
}

/// Lexicographically least rotation (Booth's algorithm).
pub fn canonical_rotation(w: &Word) -> Word {
    rotate(w, least_rotation(w.symbols()))
}

fn least_rotation(s: &[u32]) -> usize {
    let n = s.len();
    let mut fail: Vec<isize> = vec![-1; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = s[j % n];
        let mut i = fail[j - k - 1];
        while i != -1 && sj != s[(k + i as usize + 1) % n] {
            if sj < s[(k + i as usize + 1) % n] {
                k = j - i as usize - 1;
            }
            i = fail[i as usize];
        }
        if i == -1 && sj != s[k % n] {
            if sj < s[k % n] {
                k = j;
            }
            fail[j - k] = -1;
        } else {
            fail[j - k] = i + 1;
        }
    }
    k % n
}

/// Cap on how many words an exhaustive operation may produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationGuard {
    pub max_words: u64,
}

impl EnumerationGuard {
    pub const DEFAULT_WORDS: u64 = 2_000_000;

    pub const fn new(max_words: u64) -> Self {
        EnumerationGuard { max_words }
    }

    /// Fails unless `m^N` words fit under the cap.
    pub fn admit(&self, m: u32, n: usize) -> Result<u64> {
        let count = u32::try_from(n)
            .ok()
            .and_then(|n| u64::from(m).checked_pow(n));
        match count {
            Some(c) if c <= self.max_words => Ok(c),
            _ => Err(self.exceeded(format!(
                "{m}^{n} words exceed the cap of {}",
                self.max_words
            ))),
        }
    }

    fn exceeded(&self, detail: String) -> Error {
        Error::Size {
            guard: "enumeration guard (--guard-words)",
            detail,
        }
    }
}

impl Default for EnumerationGuard {
    fn default() -> Self {
        EnumerationGuard::new(Self::DEFAULT_WORDS)
    }
}

fn check_shape(m: u32, n: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::Range {
            what: "alphabet size m",
            value: 0,
            limit: "must be >= 1".into(),
        });
    }
    if n == 0 {
        return Err(Error::Range {
            what: "length N",
            value: 0,
            limit: "must be >= 1".into(),
        });
    }
    Ok(())
}

/// All words of `X^N` in lexicographic order.
#[derive(Debug, Clone)]
pub struct WordOdometer {
    alphabet_size: u32,
    current: Option<Vec<u32>>,
}

impl WordOdometer {
    pub fn new(alphabet_size: u32, len: usize) -> Result<Self> {
        check_shape(alphabet_size, len)?;
        Ok(WordOdometer {
            alphabet_size,
            current: Some(vec![0; len]),
        })
    }

    /// Visits each word in place without allocating per word.
    pub fn for_each(mut self, mut f: impl FnMut(&[u32])) {
        while let Some(w) = self.current.as_deref() {
            f(w);
            self.step();
        }
    }

    fn step(&mut self) {
        let Some(w) = self.current.as_mut() else {
            return;
        };
        for s in w.iter_mut().rev() {
            *s += 1;
            if *s < self.alphabet_size {
                return;
            }
            *s = 0;
        }
        self.current = None;
    }
}

impl Iterator for WordOdometer {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let symbols = self.current.clone()?;
        self.step();
        Some(Word {
            symbols,
            alphabet_size: self.alphabet_size,
        })
    }
}

/// Every word of `X^N`, grouped by exact period. Keys with no words are omitted.
pub fn enumerate_by_period(
    m: u32,
    n: usize,
    guard: EnumerationGuard,
) -> Result<BTreeMap<u64, Vec<Word>>> {
    check_shape(m, n)?;
    guard.admit(m, n)?;
    let mut out: BTreeMap<u64, Vec<Word>> = BTreeMap::new();
    let mut fail = Vec::with_capacity(n);
    for w in WordOdometer::new(m, n)? {
        let j = border_period(w.symbols(), &mut fail) as u64;
        out.entry(j).or_default().push(w);
    }
    Ok(out)
}

/// Counts of `X^N` words by exact period, without keeping the words.
pub fn period_histogram(m: u32, n: usize, guard: EnumerationGuard) -> Result<BTreeMap<u64, u64>> {
    check_shape(m, n)?;
    guard.admit(m, n)?;
    let mut out = BTreeMap::new();
    let mut fail = Vec::with_capacity(n);
    WordOdometer::new(m, n)?.for_each(|w| {
        *out.entry(border_period(w, &mut fail) as u64).or_insert(0) += 1;
    });
    Ok(out)
}

/// Lyndon words of one length in lexicographic order, generated by Duval's
/// successor rule: extend periodically, drop trailing maximal symbols,
/// increment the last symbol.
#[derive(Debug, Clone)]
pub struct LyndonWords {
    alphabet_size: u32,
    len: usize,
    buf: Vec<u32>,
    started: bool,
}

impl LyndonWords {
    pub fn new(alphabet_size: u32, len: usize) -> Result<Self> {
        check_shape(alphabet_size, len)?;
        Ok(LyndonWords {
            alphabet_size,
            len,
            buf: Vec::with_capacity(len),
            started: false,
        })
    }
}

impl Iterator for LyndonWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        loop {
            if !self.started {
                self.started = true;
                self.buf.push(0);
            } else {
                if self.buf.is_empty() {
                    return None;
                }
                let k = self.buf.len();
                while self.buf.len() < self.len {
                    self.buf.push(self.buf[self.buf.len() - k]);
                }
                while self.buf.last() == Some(&(self.alphabet_size - 1)) {
                    self.buf.pop();
                }
                let last = self.buf.last_mut()?;
                *last += 1;
            }
            if self.buf.len() == self.len {
                return Some(Word {
                    symbols: self.buf.clone(),
                    alphabet_size: self.alphabet_size,
                });
            }
        }
    }
}

/// All Lyndon words of length `N`, refused when their count exceeds `cap`.
pub fn duval_lyndon(m: u32, n: usize, cap: EnumerationGuard) -> Result<Vec<Word>> {
    check_shape(m, n)?;
    let count = lyndon_count(u64::from(m), n as u64, SizeGuard::default())
        .ok()
        .and_then(|c| c.to_u64());
    match count {
        Some(c) if c <= cap.max_words => {}
        _ => {
            return Err(cap.exceeded(format!(
                "Lyndon words of length {n} over {m} symbols exceed the cap of {}",
                cap.max_words
            )))
        }
    }
    Ok(LyndonWords::new(m, n)?.collect())
}
