//! Pattern sets, occurrence counting and the brute-force enumeration oracle.
//!
//! Letters are 1-based integers in `{1, ..., m}`; in coin examples H = 1 and
//! T = 2.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::tripoly::TriPoly;
use crate::{Error, Int};

/// Default ceiling on `m^n` for [`brute_enumerator`].
pub const DEFAULT_BRUTE_BUDGET: u64 = 10_000_000;

/// A single pattern: a nonempty word over `{1, ..., m}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Pattern {
    letters: Vec<u32>,
}

impl Pattern {
    pub fn new(letters: Vec<u32>) -> Pattern {
        assert!(!letters.is_empty(), "empty pattern");
        Pattern { letters }
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn reversed(&self) -> Pattern {
        let mut letters = self.letters.clone();
        letters.reverse();
        Pattern { letters }
    }

    /// Applies an alphabet permutation given as `perm[letter - 1]`.
    pub fn relabeled(&self, perm: &[u32]) -> Pattern {
        Pattern {
            letters: self
                .letters
                .iter()
                .map(|&l| perm[(l - 1) as usize])
                .collect(),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.iter().all(|&l| l <= 9) {
            for l in &self.letters {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            write!(f, "[")?;
            for (i, l) in self.letters.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{l}")?;
            }
            write!(f, "]")
        }
    }
}

/// A bet: alphabet size, common pattern length, and the two pattern sets.
///
/// Pattern sets may be empty (generating-function-only use) and may overlap;
/// a pattern in both sets carries both the `a` and the `b` mark.
#[derive(Clone, Debug)]
pub struct BetSpec {
    m: u32,
    k: usize,
    alice: Vec<Pattern>,
    bob: Vec<Pattern>,
}

impl BetSpec {
    pub fn new(m: u32, alice: Vec<Pattern>, bob: Vec<Pattern>) -> Result<BetSpec, Error> {
        if m < 2 {
            return Err(Error::AlphabetTooSmall);
        }
        let mut alice = alice;
        let mut bob = bob;
        alice.sort();
        alice.dedup();
        bob.sort();
        bob.dedup();
        let k = alice
            .first()
            .or_else(|| bob.first())
            .map(Pattern::len)
            .unwrap_or(0);
        for p in alice.iter().chain(&bob) {
            if p.len() != k {
                return Err(Error::MixedLengths);
            }
            if p.letters().iter().any(|&l| l == 0 || l > m) {
                return Err(Error::LetterOutOfRange);
            }
        }
        Ok(BetSpec { m, k, alice, bob })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Common pattern length (0 when both sets are empty).
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn alice(&self) -> &[Pattern] {
        &self.alice
    }

    pub fn bob(&self) -> &[Pattern] {
        &self.bob
    }

    pub fn in_alice(&self, p: &Pattern) -> bool {
        self.alice.binary_search(p).is_ok()
    }

    pub fn in_bob(&self, p: &Pattern) -> bool {
        self.bob.binary_search(p).is_ok()
    }

    /// Sorted union of the two pattern sets.
    pub fn marked_patterns(&self) -> Vec<Pattern> {
        let mut all = self.alice.clone();
        all.extend(self.bob.iter().cloned());
        all.sort();
        all.dedup();
        all
    }

    pub fn shares_patterns(&self) -> bool {
        self.alice.iter().any(|p| self.in_bob(p))
    }

    /// The spec with Alice's and Bob's sets exchanged.
    pub fn swapped(&self) -> BetSpec {
        BetSpec {
            m: self.m,
            k: self.k,
            alice: self.bob.clone(),
            bob: self.alice.clone(),
        }
    }

    /// Applies an alphabet permutation to every pattern.
    pub fn relabeled(&self, perm: &[u32]) -> BetSpec {
        let map = |ps: &[Pattern]| {
            let mut v: Vec<Pattern> = ps.iter().map(|p| p.relabeled(perm)).collect();
            v.sort();
            v
        };
        BetSpec {
            m: self.m,
            k: self.k,
            alice: map(&self.alice),
            bob: map(&self.bob),
        }
    }

    /// Weight of the `k`-window check for one pattern: `a^{in A} b^{in B}`.
    pub fn mark_monomial(&self, p: &Pattern) -> TriPoly {
        TriPoly::monomial(
            1,
            0,
            u32::from(self.in_alice(p)),
            u32::from(self.in_bob(p)),
        )
    }
}

/// Number of (possibly overlapping) windows of `word` that lie in `patterns`.
pub fn count_occurrences(word: &[u32], patterns: &[Pattern]) -> usize {
    let Some(k) = patterns.first().map(Pattern::len) else {
        return 0;
    };
    if word.len() < k {
        return 0;
    }
    word.windows(k)
        .filter(|w| patterns.iter().any(|p| p.letters() == *w))
        .count()
}

/// Weight monomial exponents of a word: `(n, occurrences in A, occurrences in B)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct WeightMonomial {
    pub word_len: usize,
    pub alice_count: usize,
    pub bob_count: usize,
}

pub fn word_weight(word: &[u32], spec: &BetSpec) -> WeightMonomial {
    WeightMonomial {
        word_len: word.len(),
        alice_count: count_occurrences(word, spec.alice()),
        bob_count: count_occurrences(word, spec.bob()),
    }
}

/// Brute-force weight enumeration over all `m^n` words: the map
/// `(alice_count, bob_count) -> number of words`.
///
/// This is a test oracle, not a production path; it refuses to enumerate
/// more than `budget` words.
pub fn brute_enumerator(
    spec: &BetSpec,
    n: usize,
    budget: u64,
) -> Result<BTreeMap<(u32, u32), Int>, Error> {
    let m = spec.m as u64;
    let mut total: u64 = 1;
    for _ in 0..n {
        total = total
            .checked_mul(m)
            .filter(|&t| t <= budget)
            .ok_or(Error::OracleTooLarge)?;
    }
    let mut counts: BTreeMap<(u32, u32), Int> = BTreeMap::new();
    let mut word = vec![1u32; n];
    loop {
        let w = word_weight(&word, spec);
        *counts
            .entry((w.alice_count as u32, w.bob_count as u32))
            .or_insert_with(Int::zero) += 1;
        // odometer step
        let mut i = n;
        loop {
            if i == 0 {
                let mass: Int = counts.values().sum();
                debug_assert_eq!(mass, Int::from(total));
                return Ok(counts);
            }
            i -= 1;
            if word[i] < spec.m {
                word[i] += 1;
                break;
            }
            word[i] = 1;
        }
    }
}

/// Brute-force (alice-wins, ties, bob-wins) word counts at length `n`.
pub fn brute_split(spec: &BetSpec, n: usize, budget: u64) -> Result<(Int, Int, Int), Error> {
    let counts = brute_enumerator(spec, n, budget)?;
    let mut plus = Int::zero();
    let mut zero = Int::zero();
    let mut minus = Int::zero();
    for ((ea, eb), c) in counts {
        match ea.cmp(&eb) {
            std::cmp::Ordering::Greater => plus += c,
            std::cmp::Ordering::Equal => zero += c,
            std::cmp::Ordering::Less => minus += c,
        }
    }
    Ok((plus, zero, minus))
}

/// Overlap polynomial `O(u, v) = sum of x^j` over the offsets `1 <= j < k`
/// at which a fresh occurrence of `v` can chain onto `u` (the length-(k-j)
/// suffix of `u` equals the length-(k-j) prefix of `v`).
pub fn overlap_poly(u: &Pattern, v: &Pattern) -> TriPoly {
    assert_eq!(u.len(), v.len());
    let k = u.len();
    let mut out = TriPoly::zero();
    for j in 1..k {
        if u.letters()[j..] == v.letters()[..k - j] {
            out = &out + &TriPoly::x_power(j as u32);
        }
    }
    out
}
