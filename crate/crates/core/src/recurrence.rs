//! Linear recurrences with polynomial coefficients: guess-and-verify
//! discovery from exact sequence terms, and fast exact iteration.
//!
//! A candidate `(order r, degree d)` is fitted by solving the exact
//! homogeneous system `sum_{i,j} c_{i,j} n^j s_{n+i} = 0` over a window of
//! terms for a nontrivial nullspace element, and accepted only if it also
//! annihilates a held-out guard window.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::pattern::BetSpec;
use crate::series::tie_splits;
use crate::{Error, Int, Rat};

/// Dense integer polynomial in the index variable `n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPolyN {
    coeffs: Vec<Int>,
}

impl UniPolyN {
    /// From low-to-high coefficients; trailing zeros are trimmed.
    pub fn new(coeffs: Vec<Int>) -> UniPolyN {
        let mut coeffs = coeffs;
        while coeffs.last().map(Zero::is_zero) == Some(true) {
            coeffs.pop();
        }
        UniPolyN { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> UniPolyN {
        UniPolyN::new(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn zero() -> UniPolyN {
        UniPolyN { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn eval(&self, n: i64) -> Int {
        let mut acc = Int::zero();
        let n = Int::from(n);
        for c in self.coeffs.iter().rev() {
            acc = acc * &n + c;
        }
        acc
    }
}

impl fmt::Display for UniPolyN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match j {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if j == 1 {
                        write!(f, "n")?;
                    } else {
                        write!(f, "n^{j}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Order-`r` recurrence `sum_{i=0..r} p_i(n) s_{n+i} = 0` for all
/// `n >= n_0`, with primitive integer coefficient polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PRecurrence {
    coeffs: Vec<UniPolyN>,
    n0: i64,
}

impl PRecurrence {
    /// Panics if the leading polynomial is zero.
    pub fn new(coeffs: Vec<UniPolyN>, n0: i64) -> PRecurrence {
        assert!(coeffs.len() >= 2, "recurrence order must be >= 1");
        assert!(!coeffs.last().unwrap().is_zero(), "zero leading coefficient");
        let mut rec = PRecurrence { coeffs, n0 };
        rec.normalize();
        rec
    }

    /// Divides out the common integer content and fixes the sign so the
    /// leading polynomial's leading coefficient is positive.
    fn normalize(&mut self) {
        let mut g = Int::zero();
        for p in &self.coeffs {
            for c in p.coeffs() {
                g = g.gcd(c);
            }
        }
        let lead_sign = self
            .coeffs
            .last()
            .unwrap()
            .coeffs()
            .last()
            .unwrap()
            .is_negative();
        if lead_sign {
            g = -g;
        }
        if !g.is_zero() && !g.is_one() {
            for p in &mut self.coeffs {
                *p = UniPolyN::new(p.coeffs().iter().map(|c| c / &g).collect());
            }
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn degree(&self) -> usize {
        self.coeffs.iter().map(UniPolyN::degree).max().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[UniPolyN] {
        &self.coeffs
    }

    pub fn n0(&self) -> i64 {
        self.n0
    }

    /// `sum_i p_i(n) s_{n+i}` for terms `s[0..=r]` taken at offset `n`.
    fn apply(&self, n: i64, window: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (i, p) in self.coeffs.iter().enumerate() {
            acc += Rat::from_integer(p.eval(n)) * &window[i];
        }
        acc
    }

    /// Stable one-line text form: `p_0(n); p_1(n); ...; p_r(n)`.
    pub fn serialize_coeffs(&self) -> String {
        self.coeffs
            .iter()
            .map(UniPolyN::to_string)
            .collect::<Vec<_>>()
            .join("; ")
    }
}

impl fmt::Display for PRecurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.serialize_coeffs())
    }
}

/// Budget for [`guess`].
#[derive(Clone, Copy, Debug)]
pub struct GuessConfig {
    pub max_order: usize,
    pub max_degree: usize,
    /// Held-out terms a candidate must also annihilate.
    pub guard_terms: usize,
}

impl Default for GuessConfig {
    fn default() -> Self {
        GuessConfig {
            max_order: 8,
            max_degree: 8,
            guard_terms: 20,
        }
    }
}

/// How a sequence was obtained.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Provenance {
    SeriesDirect,
    RecurrenceExtended,
}

/// Internal term storage.  Deficit sequences always have the shape
/// `s_{start+i} = v_i / (base * ratio^i)` with integer `v_i`; keeping that
/// representation lets recurrence iteration run on integers, with reduced
/// rationals produced only at the indices actually read.
#[derive(Clone, Debug)]
enum Terms {
    Exact(Vec<Rat>),
    Scaled {
        v: Vec<Int>,
        base: Int,
        ratio: Int,
    },
}

impl Terms {
    fn len(&self) -> usize {
        match self {
            Terms::Exact(t) => t.len(),
            Terms::Scaled { v, .. } => v.len(),
        }
    }
}

/// A contiguous run of exact rational terms indexed from `start`.
#[derive(Clone, Debug)]
pub struct ExactSequence {
    start: i64,
    terms: Terms,
    provenance: Provenance,
}

impl ExactSequence {
    pub fn new(start: i64, terms: Vec<Rat>, provenance: Provenance) -> ExactSequence {
        ExactSequence {
            start,
            terms: Terms::Exact(terms),
            provenance,
        }
    }

    fn new_scaled(
        start: i64,
        v: Vec<Int>,
        base: Int,
        ratio: Int,
        provenance: Provenance,
    ) -> ExactSequence {
        ExactSequence {
            start,
            terms: Terms::Scaled { v, base, ratio },
            provenance,
        }
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    /// Last covered index.
    pub fn end(&self) -> i64 {
        self.start + self.terms.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.len() == 0
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// The reduced term at index `n`.
    pub fn get(&self, n: i64) -> Option<Rat> {
        if n < self.start {
            return None;
        }
        let i = (n - self.start) as usize;
        match &self.terms {
            Terms::Exact(t) => t.get(i).cloned(),
            Terms::Scaled { v, base, ratio } => {
                Some(Rat::new(v.get(i)?.clone(), base * ratio.pow(i as u32)))
            }
        }
    }

    /// All terms, reduced.  Cheap for series-direct sequences; for long
    /// extended sequences prefer pointwise [`ExactSequence::get`].
    pub fn terms(&self) -> Vec<Rat> {
        (self.start..=self.end()).map(|n| self.get(n).unwrap()).collect()
    }

    /// First `count` terms as a new sequence.
    pub fn prefix(&self, count: usize) -> ExactSequence {
        let count = count.min(self.len());
        let terms = match &self.terms {
            Terms::Exact(t) => Terms::Exact(t[..count].to_vec()),
            Terms::Scaled { v, base, ratio } => Terms::Scaled {
                v: v[..count].to_vec(),
                base: base.clone(),
                ratio: ratio.clone(),
            },
        };
        ExactSequence {
            start: self.start,
            terms,
            provenance: self.provenance,
        }
    }

    pub fn scaled(&self, factor: &Rat) -> ExactSequence {
        ExactSequence::new(
            self.start,
            self.terms().iter().map(|t| t * factor).collect(),
            self.provenance,
        )
    }
}

/// Which deficit to track.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Alice,
    Bob,
    Tie,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Alice => write!(f, "alice"),
            Side::Bob => write!(f, "bob"),
            Side::Tie => write!(f, "tie"),
        }
    }
}

/// Deficit sequence from the direct series, indexed from `n = 1`:
/// `1/2 - Pr(side wins at n)` for Alice/Bob, or `Pr(tie at n)` for `Tie`.
pub fn deficit_sequence(spec: &BetSpec, side: Side, n_max: usize) -> Result<ExactSequence, Error> {
    let splits = tie_splits(spec, n_max)?;
    let m = Int::from(spec.m());
    // s_n = v_{n-1} / (2m * m^{n-1}) with integer v: the deficits are
    // (m^n - 2 count)/(2 m^n) and the tie mass is 2 zero/(2 m^n)
    let mut v = Vec::with_capacity(n_max);
    let mut m_pow = m.clone();
    for s in splits.iter().skip(1) {
        v.push(match side {
            Side::Alice => &m_pow - &s.plus * 2,
            Side::Bob => &m_pow - &s.minus * 2,
            Side::Tie => &s.zero * 2,
        });
        m_pow *= &m;
    }
    Ok(ExactSequence::new_scaled(
        1,
        v,
        &m * 2,
        m,
        Provenance::SeriesDirect,
    ))
}

/// Reduced-row-echelon form over the rationals; returns pivot columns.
fn rref(matrix: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = matrix.len();
    let cols = if rows == 0 { 0 } else { matrix[0].len() };
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..rows).find(|&i| !matrix[i][c].is_zero()) else {
            continue;
        };
        matrix.swap(rank, pr);
        let inv = matrix[rank][c].recip();
        for x in &mut matrix[rank] {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != rank && !matrix[i][c].is_zero() {
                let f = matrix[i][c].clone();
                for j in 0..cols {
                    let t = &matrix[rank][j] * &f;
                    matrix[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    pivots
}

/// Nullspace vectors of the rational matrix, one canonical vector per free
/// column, in column order.
fn nullspace(matrix: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
    let cols = if matrix.is_empty() { 0 } else { matrix[0].len() };
    let mut m = matrix;
    let pivots = rref(&mut m);
    let mut out = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[row][free].clone();
        }
        out.push(v);
    }
    out
}

/// Prescreen modulus: candidate systems are first rank-checked modulo this
/// Mersenne prime; full-column-rank there proves an empty nullspace, so the
/// expensive exact elimination only runs on genuine candidates.
const SCREEN_PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % SCREEN_PRIME as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

/// Residue of a rational modulo the screen prime, `None` when the
/// denominator vanishes there.
fn rat_mod(x: &Rat) -> Option<u64> {
    use num_traits::ToPrimitive;
    let p = Int::from(SCREEN_PRIME);
    let den = x.denom().mod_floor(&p).to_u64().unwrap();
    if den == 0 {
        return None;
    }
    let num = x.numer().mod_floor(&p).to_u64().unwrap();
    Some(mul_mod(num, pow_mod(den, SCREEN_PRIME - 2)))
}

/// True when the matrix has full column rank modulo the screen prime
/// (which certifies an empty rational nullspace).
fn full_column_rank_mod_p(mut m: Vec<Vec<u64>>) -> bool {
    let rows = m.len();
    let cols = if rows == 0 { return true } else { m[0].len() };
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..rows).find(|&i| m[i][c] != 0) else {
            return false;
        };
        m.swap(rank, pr);
        let inv = pow_mod(m[rank][c], SCREEN_PRIME - 2);
        for i in rank + 1..rows {
            if m[i][c] == 0 {
                continue;
            }
            let f = mul_mod(m[i][c], inv);
            for j in c..cols {
                let sub = mul_mod(f, m[rank][j]);
                m[i][j] = (m[i][j] + SCREEN_PRIME - sub) % SCREEN_PRIME;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank == cols
}

/// Clears denominators and divides by the integer content; fixes the sign
/// so the first nonzero entry is positive.
fn primitive_ints(v: &[Rat]) -> Vec<Int> {
    let mut den = Int::one();
    for x in v {
        den = den.lcm(x.denom());
    }
    let ints: Vec<Int> = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    let mut g = Int::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return ints;
    }
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            g = -g;
        }
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Searches for the minimal recurrence annihilating `seq`: order first,
/// then degree; every candidate must also kill `guard_terms` held-out
/// terms.  Returns `None` when nothing within the budget fits.
pub fn guess(seq: &ExactSequence, cfg: &GuessConfig) -> Option<PRecurrence> {
    let terms = seq.terms();
    let residues: Vec<Option<u64>> = terms.iter().map(rat_mod).collect();
    for r in 1..=cfg.max_order {
        for d in 0..=cfg.max_degree {
            let unknowns = (r + 1) * (d + 1);
            let fit_rows = unknowns + 2;
            let needed = fit_rows + r + cfg.guard_terms;
            if seq.len() < needed {
                continue;
            }
            let start = seq.start();
            let screened: Option<Vec<Vec<u64>>> = (0..fit_rows)
                .map(|t| {
                    let n = start + t as i64;
                    let n_mod = (n as u64) % SCREEN_PRIME;
                    let mut row = Vec::with_capacity(unknowns);
                    for i in 0..=r {
                        let s = residues[t + i]?;
                        let mut npow = 1;
                        for _ in 0..=d {
                            row.push(mul_mod(npow, s));
                            npow = mul_mod(npow, n_mod);
                        }
                    }
                    Some(row)
                })
                .collect();
            if let Some(m) = screened {
                if full_column_rank_mod_p(m) {
                    continue;
                }
            }
            let mut matrix = Vec::with_capacity(fit_rows);
            for n in start..start + fit_rows as i64 {
                let mut row = Vec::with_capacity(unknowns);
                for i in 0..=r {
                    let s = &terms[(n - start) as usize + i];
                    let mut npow = Rat::one();
                    for _ in 0..=d {
                        row.push(&npow * s);
                        npow *= Rat::from_integer(Int::from(n));
                    }
                }
                // each row is one homogeneous equation: clear its common
                // denominator so elimination runs on small integers
                let mut den = Int::one();
                for x in &row {
                    den = den.lcm(x.denom());
                }
                let den = Rat::from_integer(den);
                for x in &mut row {
                    *x *= &den;
                }
                matrix.push(row);
            }
            for v in nullspace(matrix) {
                let ints = primitive_ints(&v);
                let coeffs: Vec<UniPolyN> = (0..=r)
                    .map(|i| UniPolyN::new(ints[i * (d + 1)..(i + 1) * (d + 1)].to_vec()))
                    .collect();
                if coeffs.last().unwrap().is_zero() {
                    continue;
                }
                let rec = PRecurrence::new(coeffs, start);
                let guard_from = start + fit_rows as i64;
                let guard_ok = (guard_from..guard_from + cfg.guard_terms as i64).all(|n| {
                    let from = (n - start) as usize;
                    rec.apply(n, &terms[from..=from + r]).is_zero()
                });
                if guard_ok {
                    return Some(rec);
                }
            }
        }
    }
    None
}

/// True iff the recurrence annihilates every full window of `seq` at
/// indices `n >= max(n_0, seq.start)`.
pub fn annihilates(rec: &PRecurrence, seq: &ExactSequence) -> bool {
    let r = rec.order();
    let terms = seq.terms();
    let first = rec.n0().max(seq.start());
    let last = seq.end() - r as i64;
    (first..=last).all(|n| {
        let from = (n - seq.start()) as usize;
        rec.apply(n, &terms[from..=from + r]).is_zero()
    })
}

/// Iterates the recurrence forward from `seed` up to index `n_max`.
///
/// Errors with [`Error::SingularLeadingCoefficient`] if `p_r(n)` vanishes at
/// a needed shift (callers fall back to the direct series through that
/// point).
pub fn extend(rec: &PRecurrence, seed: &ExactSequence, n_max: i64) -> Result<ExactSequence, Error> {
    let r = rec.order();
    if seed.len() < r {
        return Err(Error::NotEnoughTerms {
            need: r,
            have: seed.len(),
        });
    }
    if let Terms::Scaled { v, base, ratio } = &seed.terms {
        if let Some(out) = extend_scaled(rec, seed.start(), v, base, ratio, n_max)? {
            return Ok(out);
        }
    }
    extend_exact(rec, seed, n_max)
}

/// Integer fast path: with `s_{start+i} = v_i / (base ratio^i)` the step
/// becomes `v_{i+r} = -sum_j p_j(n) ratio^{r-j} v_{i+j} / p_r(n)`, and the
/// division stays exact as long as the denominator shape persists.  Returns
/// `Ok(None)` to hand over to exact arithmetic when it does not.
fn extend_scaled(
    rec: &PRecurrence,
    start: i64,
    v: &[Int],
    base: &Int,
    ratio: &Int,
    n_max: i64,
) -> Result<Option<ExactSequence>, Error> {
    let r = rec.order();
    let mut v = v.to_vec();
    while start + (v.len() as i64) <= n_max {
        let next = v.len();
        let n = start + next as i64 - r as i64;
        let lead = rec.coeffs()[r].eval(n);
        if lead.is_zero() {
            return Err(Error::SingularLeadingCoefficient(n));
        }
        let mut acc = Int::zero();
        let mut scale = Int::one();
        for j in (0..r).rev() {
            scale *= ratio;
            acc += rec.coeffs()[j].eval(n) * &scale * &v[next - r + j];
        }
        let (q, rem) = (-acc).div_rem(&lead);
        if !rem.is_zero() {
            return Ok(None);
        }
        v.push(q);
    }
    Ok(Some(ExactSequence::new_scaled(
        start,
        v,
        base.clone(),
        ratio.clone(),
        Provenance::RecurrenceExtended,
    )))
}

fn extend_exact(
    rec: &PRecurrence,
    seed: &ExactSequence,
    n_max: i64,
) -> Result<ExactSequence, Error> {
    let r = rec.order();
    let mut terms = seed.terms();
    let start = seed.start();
    while start + (terms.len() as i64) <= n_max {
        let next_idx = terms.len();
        let n = start + next_idx as i64 - r as i64;
        let lead = rec.coeffs()[r].eval(n);
        if lead.is_zero() {
            return Err(Error::SingularLeadingCoefficient(n));
        }
        let mut acc = Rat::zero();
        for i in 0..r {
            acc += Rat::from_integer(rec.coeffs()[i].eval(n)) * &terms[next_idx - r + i];
        }
        terms.push(-acc / Rat::from_integer(lead));
    }
    Ok(ExactSequence::new(
        start,
        terms,
        Provenance::RecurrenceExtended,
    ))
}

/// The coin-game recurrence for the deficit of HT beating HH
/// (order 5, linear coefficients, valid from n = 1).
pub fn coin_ht_deficit_recurrence() -> PRecurrence {
    PRecurrence::new(
        vec![
            UniPolyN::from_i64(&[-1, -1]),
            UniPolyN::from_i64(&[7, 4]),
            UniPolyN::from_i64(&[-12, -5]),
            UniPolyN::from_i64(&[16, 6]),
            UniPolyN::from_i64(&[-40, -12]),
            UniPolyN::from_i64(&[32, 8]),
        ],
        1,
    )
}

/// The coin-game recurrence for the deficit of HH beating HT
/// (order 5, linear coefficients, valid from n = 1).
pub fn coin_hh_deficit_recurrence() -> PRecurrence {
    PRecurrence::new(
        vec![
            UniPolyN::from_i64(&[1, 1]),
            UniPolyN::from_i64(&[3, 0]),
            UniPolyN::from_i64(&[-12, -3]),
            UniPolyN::from_i64(&[-2, -2]),
            UniPolyN::from_i64(&[-24, -4]),
            UniPolyN::from_i64(&[40, 8]),
        ],
        1,
    )
}
