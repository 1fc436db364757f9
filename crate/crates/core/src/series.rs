//! Specialization `a = t`, `b = 1/t` and the exact game verdicts.
//!
//! With both pattern sets the same length, every word's `t`-exponent is
//! (occurrences in A) - (occurrences in B), so the Maclaurin coefficients
//! `f_n(t)` of `F(x; t, 1/t)` are Laurent polynomials whose positive-power
//! mass counts Alice-winning words, constant term the ties, and
//! negative-power mass Bob-winning words.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed};

use crate::coeff::Coeff;
use crate::gf::cluster_gf;
use crate::laurent::LaurentPoly;
use crate::pattern::BetSpec;
use crate::rational::decimal_sig;
use crate::tripoly::TriRat;
use crate::{Error, Int, Rat};

/// Significant digits used when rendering probabilities.
pub const DISPLAY_DIGITS: usize = 10;

/// `F(x; t, 1/t)` as numerator/denominator coefficient lists in `x`,
/// normalized so the denominator's `x^0` coefficient is 1.
#[derive(Clone, Debug)]
pub struct SpecializedGF<T> {
    num: Vec<LaurentPoly<T>>,
    den: Vec<LaurentPoly<T>>,
}

impl<T: Coeff> SpecializedGF<T> {
    pub fn num_coeffs(&self) -> &[LaurentPoly<T>] {
        &self.num
    }

    pub fn den_coeffs(&self) -> &[LaurentPoly<T>] {
        &self.den
    }
}

fn substitute(poly: &crate::tripoly::TriPoly) -> Vec<LaurentPoly<Int>> {
    let deg = poly.x_degree().unwrap_or(0) as usize;
    let mut out = vec![LaurentPoly::zero(); deg + 1];
    for (&(ex, ea, eb), c) in poly.terms() {
        out[ex as usize].add_term(i64::from(ea) - i64::from(eb), c.clone());
    }
    out
}

/// The single normalizer monomial `c * t^e` of the substituted denominator's
/// `x^0` coefficient.
fn normalizer(den0: &LaurentPoly<Int>) -> Result<(i64, Int), Error> {
    if den0.num_terms() != 1 {
        return Err(Error::CannotNormalizeSpecialization);
    }
    let (&e, c) = den0.terms().next().unwrap();
    Ok((e, c.clone()))
}

/// Specializes `F(x; a, b)` at `a = t`, `b = 1/t`, dividing through so the
/// denominator's `x^0` coefficient is exactly 1.
pub fn specialize(f: &TriRat) -> Result<SpecializedGF<Rat>, Error> {
    let num = substitute(f.num());
    let den = substitute(f.den());
    let (e, c) = normalizer(&den[0])?;
    let inv = Rat::new(Int::one(), c);
    let fix = |polys: &[LaurentPoly<Int>]| {
        polys
            .iter()
            .map(|p| p.shift(-e).map_coeffs(|x| Rat::from_integer(x.clone()) * inv.clone()))
            .collect()
    };
    Ok(SpecializedGF {
        num: fix(&num),
        den: fix(&den),
    })
}

/// Integer-coefficient specialization; requires the normalizer coefficient
/// to be a unit, which always holds for [`cluster_gf`] output in canonical
/// form.
pub fn specialize_int(f: &TriRat) -> Result<SpecializedGF<Int>, Error> {
    let num = substitute(f.num());
    let den = substitute(f.den());
    let (e, c) = normalizer(&den[0])?;
    if !c.abs().is_one() {
        return Err(Error::CannotNormalizeSpecialization);
    }
    let fix = |polys: &[LaurentPoly<Int>]| {
        polys
            .iter()
            .map(|p| {
                let shifted = p.shift(-e);
                if c.is_negative() {
                    shifted.neg()
                } else {
                    shifted
                }
            })
            .collect()
    };
    Ok(SpecializedGF {
        num: fix(&num),
        den: fix(&den),
    })
}

/// Maclaurin coefficients `f_0 .. f_N` of a specialized enumerator via the
/// linear recurrence `f_n = p_n - sum_{i>=1} q_i f_{n-i}`.
pub fn coefficients<T: Coeff>(gf: &SpecializedGF<T>, n_max: usize) -> Vec<LaurentPoly<T>> {
    let mut out: Vec<LaurentPoly<T>> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut f = gf.num.get(n).cloned().unwrap_or_else(LaurentPoly::zero);
        for i in 1..gf.den.len().min(n + 1) {
            if gf.den[i].is_zero() {
                continue;
            }
            f.sub_mul_assign(&gf.den[i], &out[n - i]);
        }
        out.push(f);
    }
    out
}

/// The three-way mass split of one Laurent coefficient `f_n(t)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TieSplit {
    /// Sum of coefficients of positive powers of `t` (Alice-winning words).
    pub plus: Int,
    /// Coefficient of `t^0` (ties).
    pub zero: Int,
    /// Sum of coefficients of negative powers of `t` (Bob-winning words).
    pub minus: Int,
}

/// Splits `f_n(t)` into Alice/tie/Bob word counts, checking the total mass
/// `f_n(1) = m^n`.
pub fn split_at_one(f: &LaurentPoly<Int>, n: usize, m: u32) -> Result<TieSplit, Error> {
    let (plus, zero, minus) = f.sign_masses();
    let total = Int::from(m).pow(n as u32);
    if &plus + &zero + &minus != total {
        return Err(Error::SeriesCorrupt);
    }
    Ok(TieSplit { plus, zero, minus })
}

/// Which side the exact probabilities favor.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Favored {
    Alice,
    Bob,
    Equal,
}

impl fmt::Display for Favored {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Favored::Alice => write!(f, "alice"),
            Favored::Bob => write!(f, "bob"),
            Favored::Equal => write!(f, "equal"),
        }
    }
}

/// Exact verdict of one game: who is favored after `n` rolls, with exact
/// probabilities and their 10-digit decimal renderings
/// `[p_alice, p_bob, p_tie]`.
#[derive(Clone, Debug)]
pub struct GameVerdict {
    pub favored: Favored,
    pub p_alice: Rat,
    pub p_bob: Rat,
    pub p_tie: Rat,
    pub display: [String; 3],
}

impl GameVerdict {
    /// Verdict from a three-way word-count split (series- or oracle-derived).
    pub fn from_split(split: &TieSplit, n: usize, m: u32) -> GameVerdict {
        let total = Rat::from_integer(Int::from(m).pow(n as u32));
        let p_alice = Rat::from_integer(split.plus.clone()) / total.clone();
        let p_bob = Rat::from_integer(split.minus.clone()) / total.clone();
        let p_tie = Rat::from_integer(split.zero.clone()) / total;
        let favored = match split.plus.cmp(&split.minus) {
            Ordering::Greater => Favored::Alice,
            Ordering::Less => Favored::Bob,
            Ordering::Equal => Favored::Equal,
        };
        // exact 0 and 1 render without a fractional tail
        let render = |p: &Rat| {
            if p.is_integer() {
                p.numer().to_string()
            } else {
                decimal_sig(p, DISPLAY_DIGITS)
            }
        };
        let display = [render(&p_alice), render(&p_bob), render(&p_tie)];
        GameVerdict {
            favored,
            p_alice,
            p_bob,
            p_tie,
            display,
        }
    }
}

/// Tie splits `f_0 .. f_N` for a spec, via the cluster enumerator.
pub fn tie_splits(spec: &BetSpec, n_max: usize) -> Result<Vec<TieSplit>, Error> {
    let gf = specialize_int(&cluster_gf(spec))?;
    let coeffs = coefficients(&gf, n_max);
    coeffs
        .iter()
        .enumerate()
        .map(|(n, f)| split_at_one(f, n, spec.m()))
        .collect()
}

/// Exact game verdict after `n` rolls.
pub fn verdict(spec: &BetSpec, n: usize) -> Result<GameVerdict, Error> {
    let splits = tie_splits(spec, n)?;
    Ok(GameVerdict::from_split(&splits[n], n, spec.m()))
}

/// All verdicts for `n = 0 ..= n_max` in one series pass.
pub fn verdicts_upto(spec: &BetSpec, n_max: usize) -> Result<Vec<GameVerdict>, Error> {
    let splits = tie_splits(spec, n_max)?;
    Ok(splits
        .iter()
        .enumerate()
        .map(|(n, s)| GameVerdict::from_split(s, n, spec.m()))
        .collect())
}
