//! Estimation of the constants in `Pr = 1/2 - c/sqrt(n)` from long exact
//! deficit sequences, and the counter-bet ranking built on top of it.
//!
//! The fitter never touches floats: sequence terms stay exact rationals,
//! `sqrt(n)` is replaced by a fixed-point rational accurate to the working
//! precision, and the `(J+1)`-point linear system for `c_0..c_J` is solved
//! exactly.  Reliability is judged by re-fitting on a shifted sample window
//! and counting agreeing leading digits per coefficient.

use num_traits::Zero;
use rayon::prelude::*;

use crate::pattern::{BetSpec, Pattern};
use crate::rational::{agreement_digits, sqrt_approx};
use crate::recurrence::{
    deficit_sequence, extend, guess, ExactSequence, GuessConfig, Side,
};
use crate::series::{tie_splits, Favored};
use crate::{Error, Rat};

/// Default working precision (decimal digits) inside the fitter.
pub const DEFAULT_PRECISION: usize = 50;

/// Expansion coefficients `c_0..c_J` of `s_n ~ n^{-1/2}(c_0 + c_1/n + ...)`,
/// with the per-coefficient count of leading digits on which two independent
/// sample windows agree.
#[derive(Clone, Debug)]
pub struct AsymptoticFit {
    coeffs: Vec<Rat>,
    stability: Vec<u32>,
}

impl AsymptoticFit {
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn stability(&self) -> &[u32] {
        &self.stability
    }

    /// The leading constant `c_0`.
    pub fn c0(&self) -> &Rat {
        &self.coeffs[0]
    }
}

/// Dense exact Gaussian elimination; `None` on a singular system.
fn solve_dense(mut m: Vec<Vec<Rat>>, mut rhs: Vec<Rat>) -> Option<Vec<Rat>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &m[col][col];
            for c in col..n {
                let t = &m[col][c] * &f;
                m[r][c] -= t;
            }
            let t = &rhs[col] * &f;
            rhs[r] -= t;
        }
    }
    let mut x = vec![Rat::zero(); n];
    for r in (0..n).rev() {
        let mut acc = rhs[r].clone();
        for c in r + 1..n {
            acc -= &m[r][c] * &x[c];
        }
        x[r] = acc / &m[r][r];
    }
    Some(x)
}

/// Fits `c_0..c_J` at the `J+1` sample points `top, top - s, ...`.
fn fit_window(
    seq: &ExactSequence,
    top: i64,
    stride: i64,
    j_max: usize,
    precision: usize,
) -> Result<Vec<Rat>, Error> {
    let mut matrix = Vec::with_capacity(j_max + 1);
    let mut rhs = Vec::with_capacity(j_max + 1);
    for t in 0..=j_max as i64 {
        let n = top - t * stride;
        let s_n = seq.get(n).ok_or(Error::NotEnoughTerms {
            need: n.max(0) as usize,
            have: seq.len(),
        })?;
        let inv_n = Rat::new(1.into(), n.into());
        let mut row = Vec::with_capacity(j_max + 1);
        let mut p = Rat::new(1.into(), 1.into());
        for _ in 0..=j_max {
            row.push(p.clone());
            p *= &inv_n;
        }
        matrix.push(row);
        rhs.push(s_n * sqrt_approx(n as u64, precision));
    }
    solve_dense(matrix, rhs).ok_or(Error::FitUnstable)
}

/// Fits the expansion on the window `{K, K-s, ...}` with stride
/// `s = floor(K / (4(J+2)))`, re-fits on a window shifted by `s/2`, and
/// reports per-coefficient agreement digits.
///
/// Requires `K >= 100 (J+2)` terms; errors with "fit unstable" when the two
/// windows do not even agree on the leading digit of `c_0`.
pub fn fit_expansion(
    seq: &ExactSequence,
    j_max: usize,
    precision: usize,
) -> Result<AsymptoticFit, Error> {
    let k = seq.end();
    let need = 100 * (j_max + 2);
    if k < need as i64 {
        return Err(Error::NotEnoughTerms {
            need,
            have: k.max(0) as usize,
        });
    }
    let stride = k / (4 * (j_max as i64 + 2));
    let primary = fit_window(seq, k, stride, j_max, precision)?;
    let shifted = fit_window(seq, k - stride / 2, stride, j_max, precision)?;
    let stability: Vec<u32> = primary
        .iter()
        .zip(&shifted)
        .map(|(a, b)| agreement_digits(a, b, precision as u32))
        .collect();
    if stability[0] == 0 {
        return Err(Error::FitUnstable);
    }
    Ok(AsymptoticFit {
        coeffs: primary,
        stability,
    })
}

/// Budgets for the series -> guess -> extend -> fit pipeline.
#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub guess: GuessConfig,
    /// Longest sequence computed straight from the series when no
    /// recurrence is found.
    pub direct_budget: usize,
    /// Series terms fed to the guesser.
    pub guess_terms: usize,
    /// Fitter working precision in decimal digits.
    pub precision: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            guess: GuessConfig::default(),
            direct_budget: 400,
            guess_terms: 200,
            precision: DEFAULT_PRECISION,
        }
    }
}

/// A deficit sequence out to `n = K`: directly from the series when `K` is
/// small, otherwise guessed-recurrence iteration seeded by the series.
pub fn extended_deficit(
    spec: &BetSpec,
    side: Side,
    k_terms: usize,
    cfg: &PipelineConfig,
) -> Result<ExactSequence, Error> {
    if k_terms <= cfg.guess_terms {
        return deficit_sequence(spec, side, k_terms);
    }
    let base = deficit_sequence(spec, side, cfg.guess_terms)?;
    match guess(&base, &cfg.guess) {
        Some(rec) => extend(&rec, &base, k_terms as i64),
        None if k_terms <= cfg.direct_budget => deficit_sequence(spec, side, k_terms),
        None => Err(Error::NoRecurrenceFound),
    }
}

/// The asymptotic analogue of a game verdict: fitted deficit expansions for
/// both sides, and which side wins as `n -> infinity` at order `n^{-1/2}`.
#[derive(Clone, Debug)]
pub struct AsymptoticVerdict {
    pub favored: Favored,
    /// Fit of Alice's deficit `1/2 - Pr(Alice wins at n)`; `c_0` is `c_alice`.
    pub alice: AsymptoticFit,
    /// Fit of Bob's deficit; `c_0` is `c_bob`.
    pub bob: AsymptoticFit,
}

/// Runs the full pipeline for both deficit sequences and compares the
/// leading constants: the side with the smaller `c` has the larger limiting
/// probability; constants equal to the reported stability count as a tie.
pub fn whowon_asymptotic(
    spec: &BetSpec,
    k_terms: usize,
    j_max: usize,
    cfg: &PipelineConfig,
) -> Result<AsymptoticVerdict, Error> {
    let (alice_seq, bob_seq) = rayon::join(
        || extended_deficit(spec, Side::Alice, k_terms, cfg),
        || extended_deficit(spec, Side::Bob, k_terms, cfg),
    );
    let alice = fit_expansion(&alice_seq?, j_max, cfg.precision)?;
    let bob = fit_expansion(&bob_seq?, j_max, cfg.precision)?;
    let cap = alice.stability[0].min(bob.stability[0]);
    let favored = if agreement_digits(alice.c0(), bob.c0(), cap) >= cap {
        Favored::Equal
    } else if alice.c0() < bob.c0() {
        // smaller deficit constant = larger win probability
        Favored::Alice
    } else {
        Favored::Bob
    };
    Ok(AsymptoticVerdict {
        favored,
        alice,
        bob,
    })
}

/// An alphabet permutation exchanging the two patterns, if one exists:
/// `sigma(a) = b` and `sigma(b) = a` letterwise.  Such a bet is a fair game.
fn swap_permutation(m: u32, a: &Pattern, b: &Pattern) -> Option<Vec<u32>> {
    let mut perm = vec![0u32; m as usize];
    let set = |from: u32, to: u32, perm: &mut Vec<u32>| -> bool {
        let slot = &mut perm[(from - 1) as usize];
        if *slot == 0 {
            *slot = to;
            true
        } else {
            *slot == to
        }
    };
    for (&x, &y) in a.letters().iter().zip(b.letters()) {
        if !set(x, y, &mut perm) || !set(y, x, &mut perm) {
            return None;
        }
    }
    // fill unconstrained letters with the unused targets, checking that the
    // constrained part was injective
    let mut used = vec![false; m as usize];
    for &v in perm.iter().filter(|&&v| v != 0) {
        let u = &mut used[(v - 1) as usize];
        if *u {
            return None;
        }
        *u = true;
    }
    let mut free = (1..=m).filter(|&v| !used[(v - 1) as usize]);
    for slot in perm.iter_mut().filter(|v| **v == 0) {
        *slot = free.next().expect("permutation fill");
    }
    Some(perm)
}

/// One row of the counter-bet table: a group of equivalent bets for Bob and
/// Bob's asymptotic advantage `c_alice - c_bob` against them.
#[derive(Clone, Debug)]
pub struct RankedBet {
    /// The equivalent patterns (a pattern and its reversal when Alice's bet
    /// is a palindrome), sorted.
    pub bobs: Vec<Pattern>,
    pub advantage: Rat,
    /// True when the advantage is exactly zero by an alphabet symmetry,
    /// certified on the exact series rather than fitted.
    pub exact_zero: bool,
    pub stability: u32,
}

/// Ranks every possible length-`k` counter bet for Bob against Alice's
/// single pattern, best first.
///
/// Bets that are alphabet-symmetric to Alice's are reported as exactly fair
/// after checking `Pr(Alice) = Pr(Bob)` on the exact series for all
/// `n <= 100`; everything else goes through the full fitting pipeline.
/// When Alice's pattern is a palindrome, a bet and its reversal are
/// equivalent and share a row.
pub fn rank_counter_bets(
    m: u32,
    alice: &Pattern,
    k_terms: usize,
    j_max: usize,
    cfg: &PipelineConfig,
) -> Result<Vec<RankedBet>, Error> {
    let k = alice.len();
    let group_reversals = alice.reversed() == *alice;
    let mut groups: Vec<Vec<Pattern>> = Vec::new();
    let mut word = vec![1u32; k];
    'next: loop {
        let p = Pattern::new(word.clone());
        let skip = p == *alice || (group_reversals && p.reversed() < p);
        if !skip {
            let mut group = vec![p.clone()];
            if group_reversals && p.reversed() != p {
                group.push(p.reversed());
            }
            groups.push(group);
        }
        let mut i = k;
        loop {
            if i == 0 {
                break 'next;
            }
            i -= 1;
            if word[i] < m {
                word[i] += 1;
                break;
            }
            word[i] = 1;
        }
    }
    let mut rows: Vec<RankedBet> = groups
        .into_par_iter()
        .map(|group| -> Result<RankedBet, Error> {
            let bob = &group[0];
            let spec = BetSpec::new(m, vec![alice.clone()], vec![bob.clone()])?;
            if swap_permutation(m, alice, bob).is_some() {
                for (n, s) in tie_splits(&spec, 100)?.iter().enumerate() {
                    assert_eq!(s.plus, s.minus, "symmetric bet not fair at n={n}");
                }
                return Ok(RankedBet {
                    bobs: group,
                    advantage: Rat::zero(),
                    exact_zero: true,
                    stability: cfg.precision as u32,
                });
            }
            let v = whowon_asymptotic(&spec, k_terms, j_max, cfg)?;
            Ok(RankedBet {
                bobs: group,
                advantage: v.alice.c0() - v.bob.c0(),
                exact_zero: false,
                stability: v.alice.stability[0].min(v.bob.stability[0]),
            })
        })
        .collect::<Result<_, _>>()?;
    rows.sort_by(|x, y| y.advantage.cmp(&x.advantage).then(x.bobs.cmp(&y.bobs)));
    Ok(rows)
}
