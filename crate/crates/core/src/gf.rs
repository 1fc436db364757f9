//! The weight-enumerator `F(x; a, b)` of all words over `{1, ..., m}`.
//!
//! Two independent constructions of the same rational function:
//!
//! * [`cluster_gf`] — inclusion-exclusion over chains of overlapping marked
//!   occurrences (one unknown per pattern);
//! * [`transfer_gf`] — the prefix transfer system with one unknown per
//!   `(k-1)`-letter state.
//!
//! The Maclaurin coefficient of `x^n a^i b^j` counts `n`-letter words with
//! `i` occurrences of Alice's patterns and `j` of Bob's.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::linalg::fraction_free_solve_parts;
use crate::pattern::{overlap_poly, BetSpec};
use crate::tripoly::{TriPoly, TriRat};
use crate::{Error, Int};

/// Default ceiling on the `m^{k-1}` transfer-state count.
pub const DEFAULT_TRANSFER_BUDGET: usize = 4096;

/// Cluster-method weight enumerator.
///
/// Solves the linear system `C_v = (w_v - 1) (x^k + sum_u O(u, v) C_u)` for
/// the per-pattern cluster enumerators and assembles
/// `F = 1 / (1 - m x - sum_v C_v)`.
pub fn cluster_gf(spec: &BetSpec) -> TriRat {
    let unrestricted = &TriPoly::one() - &TriPoly::monomial(i64::from(spec.m()), 1, 0, 0);
    let pats = spec.marked_patterns();
    if pats.is_empty() {
        return TriRat::new(TriPoly::one(), unrestricted);
    }
    let k = spec.k() as u32;
    let n = pats.len();
    let mut matrix = vec![vec![TriPoly::zero(); n]; n];
    let mut rhs = vec![TriPoly::zero(); n];
    for (vi, v) in pats.iter().enumerate() {
        let w_minus_1 = &spec.mark_monomial(v) - &TriPoly::one();
        for (ui, u) in pats.iter().enumerate() {
            let mut entry = if ui == vi {
                TriPoly::one()
            } else {
                TriPoly::zero()
            };
            entry = &entry - &(&w_minus_1 * &overlap_poly(u, v));
            matrix[vi][ui] = entry;
        }
        rhs[vi] = &w_minus_1 * &TriPoly::x_power(k);
    }
    // the system matrix is I + x * (...), hence never singular
    let (nums, den) = fraction_free_solve_parts(&matrix, &rhs).expect("cluster system singular");
    let mut cluster_num = TriPoly::zero();
    for c in &nums {
        cluster_num = &cluster_num + c;
    }
    // F = den / (den * (1 - m x) - cluster_num)
    TriRat::new(den.clone(), &(&den * &unrestricted) - &cluster_num)
}

/// Transfer-matrix weight enumerator: one unknown `Weight(W_m(v))` per
/// `(k-1)`-letter prefix `v`, solved exactly with fraction-free elimination.
///
/// Requires `k >= 2` and at most `budget` states; agrees with
/// [`cluster_gf`] as a rational function.
pub fn transfer_gf(spec: &BetSpec, budget: usize) -> Result<TriRat, Error> {
    let k = spec.k();
    if k < 2 {
        return Err(Error::TransferNeedsLength2);
    }
    let m = spec.m() as usize;
    let mut states: usize = 1;
    for _ in 0..k - 1 {
        states = states
            .checked_mul(m)
            .filter(|&s| s <= budget)
            .ok_or(Error::StateSpaceTooLarge)?;
    }
    // states enumerated as base-m digit strings, letter = digit + 1
    let index_of = |word: &[u32]| -> usize {
        word.iter().fold(0usize, |acc, &l| acc * m + (l as usize - 1))
    };
    let mut matrix = vec![vec![TriPoly::zero(); states]; states];
    let rhs = vec![TriPoly::x_power(k as u32 - 1); states];
    let mut word = vec![1u32; k - 1];
    for vi in 0..states {
        // decode vi into `word`
        let mut rem = vi;
        for d in (0..k - 1).rev() {
            word[d] = (rem % m) as u32 + 1;
            rem /= m;
        }
        matrix[vi][vi] = TriPoly::one();
        let mut extended = word.clone();
        extended.push(0);
        for i in 1..=spec.m() {
            extended[k - 1] = i;
            let pat = crate::pattern::Pattern::new(extended.clone());
            let weight = &spec.mark_monomial(&pat) * &TriPoly::x_power(1);
            let next = index_of(&extended[1..]);
            matrix[vi][next] = &matrix[vi][next] - &weight;
        }
    }
    let (nums, den) = fraction_free_solve_parts(&matrix, &rhs)?;
    // F = sum_{i=0}^{k-2} m^i x^i + sum_v Weight(W_m(v))
    let mut head = TriPoly::zero();
    let mut coeff = Int::one();
    for i in 0..k - 1 {
        head.add_term((i as u32, 0, 0), &coeff);
        coeff *= spec.m();
    }
    let mut tail = TriPoly::zero();
    for c in &nums {
        tail = &tail + c;
    }
    Ok(TriRat::new(&(&head * &den) + &tail, den))
}

/// Maclaurin coefficients of `F` in `x`, each a polynomial in `a`, `b`
/// represented as a map `(e_a, e_b) -> coefficient`.
///
/// Requires the denominator's `x`-constant term to be the constant 1, which
/// holds for both constructions above.
pub fn series_in_ab(f: &TriRat, n_max: usize) -> Vec<BTreeMap<(u32, u32), Int>> {
    type AbPoly = BTreeMap<(u32, u32), Int>;
    let add_scaled = |acc: &mut AbPoly, p: &AbPoly, q: &AbPoly, negate: bool| {
        for (&(a1, b1), c1) in p {
            for (&(a2, b2), c2) in q {
                let key = (a1 + a2, b1 + b2);
                let term = c1 * c2;
                let entry = acc.entry(key).or_insert_with(Int::zero);
                if negate {
                    *entry -= term;
                } else {
                    *entry += term;
                }
                if entry.is_zero() {
                    acc.remove(&key);
                }
            }
        }
    };
    let q0 = f.den().x_coefficient(0);
    assert!(
        q0.len() == 1 && q0.get(&(0, 0)).map(One::is_one) == Some(true),
        "denominator x-constant term must be 1"
    );
    let dp = f.num().x_degree().unwrap_or(0) as usize;
    let dq = f.den().x_degree().unwrap_or(0) as usize;
    let mut out: Vec<AbPoly> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut fn_ab: AbPoly = if n <= dp {
            f.num().x_coefficient(n as u32)
        } else {
            AbPoly::new()
        };
        for i in 1..=dq.min(n) {
            let qi = f.den().x_coefficient(i as u32);
            if qi.is_empty() {
                continue;
            }
            add_scaled(&mut fn_ab, &qi, &out[n - i], true);
        }
        out.push(fn_ab);
    }
    out
}
