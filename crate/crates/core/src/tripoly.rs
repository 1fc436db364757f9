//! Sparse integer polynomials and rational functions in `x`, `a`, `b`.
//!
//! `TriPoly` stores nonzero integer coefficients keyed by exponent triples
//! `(e_x, e_a, e_b)`; the `BTreeMap` key order doubles as the canonical
//! lexicographic term order used for printing and sign conventions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Int;

/// Exponent triple `(e_x, e_a, e_b)`.
pub type Expt = (u32, u32, u32);

/// Sparse trivariate polynomial over the integers.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TriPoly {
    terms: BTreeMap<Expt, Int>,
}

impl TriPoly {
    pub fn zero() -> Self {
        TriPoly::default()
    }

    pub fn one() -> Self {
        TriPoly::constant(1)
    }

    pub fn constant<T: Into<Int>>(c: T) -> Self {
        TriPoly::monomial(c, 0, 0, 0)
    }

    pub fn monomial<T: Into<Int>>(c: T, e_x: u32, e_a: u32, e_b: u32) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((e_x, e_a, e_b), c);
        }
        TriPoly { terms }
    }

    pub fn x_power(e: u32) -> Self {
        TriPoly::monomial(1, e, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expt, &Int)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: Expt) -> Int {
        self.terms.get(&e).cloned().unwrap_or_else(Int::zero)
    }

    /// Lexicographically least term, if any.
    pub fn least_term(&self) -> Option<(&Expt, &Int)> {
        self.terms.iter().next()
    }

    fn lead_term(&self) -> Option<(&Expt, &Int)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, e: Expt, c: &Int) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Int::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Maximum exponent of `x`.
    pub fn x_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(ex, _, _)| ex).max()
    }

    /// GCD of all integer coefficients (0 for the zero polynomial).
    pub fn content(&self) -> Int {
        let mut g = Int::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides every coefficient by `d`; panics if any division is inexact.
    pub fn div_int_exact(&self, d: &Int) -> TriPoly {
        assert!(!d.is_zero());
        let terms = self
            .terms
            .iter()
            .map(|(&e, c)| {
                let (q, r) = c.div_rem(d);
                assert!(r.is_zero(), "inexact integer division in TriPoly");
                (e, q)
            })
            .collect();
        TriPoly { terms }
    }

    /// Exact polynomial division; panics if `self` is not a multiple of `d`.
    ///
    /// Only exact cases arise here (Bareiss minors), so a failed division is
    /// an internal invariant violation.
    pub fn div_exact(&self, d: &TriPoly) -> TriPoly {
        let (dk, dc) = d.lead_term().expect("division by zero TriPoly");
        let mut rem = self.clone();
        let mut out = TriPoly::zero();
        while let Some((rk, rc)) = rem.lead_term() {
            let (rx, ra, rb) = *rk;
            assert!(
                rx >= dk.0 && ra >= dk.1 && rb >= dk.2,
                "inexact polynomial division in TriPoly"
            );
            let ek = (rx - dk.0, ra - dk.1, rb - dk.2);
            let (qc, qr) = rc.div_rem(dc);
            assert!(qr.is_zero(), "inexact polynomial division in TriPoly");
            let q = TriPoly::monomial(qc, ek.0, ek.1, ek.2);
            rem = &rem - &(&q * d);
            out = &out + &q;
        }
        out
    }

    /// Substitutes `a = 1`, `b = 1`, collapsing to a polynomial in `x` alone.
    pub fn subst_ab_one(&self) -> TriPoly {
        let mut out = TriPoly::zero();
        for (&(ex, _, _), c) in &self.terms {
            out.add_term((ex, 0, 0), c);
        }
        out
    }

    /// Coefficient of `x^e_x` as a map `(e_a, e_b) -> coefficient`.
    pub fn x_coefficient(&self, e_x: u32) -> BTreeMap<(u32, u32), Int> {
        self.terms
            .iter()
            .filter(|(&(ex, _, _), _)| ex == e_x)
            .map(|(&(_, ea, eb), c)| ((ea, eb), c.clone()))
            .collect()
    }

    /// Renames formal variables `a` and `b` into each other.
    pub fn swap_ab(&self) -> TriPoly {
        let terms = self
            .terms
            .iter()
            .map(|(&(ex, ea, eb), c)| ((ex, eb, ea), c.clone()))
            .collect();
        TriPoly { terms }
    }
}

impl Add for &TriPoly {
    type Output = TriPoly;
    fn add(self, rhs: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &TriPoly {
    type Output = TriPoly;
    fn sub(self, rhs: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            let neg = -c.clone();
            out.add_term(e, &neg);
        }
        out
    }
}

impl Neg for &TriPoly {
    type Output = TriPoly;
    fn neg(self) -> TriPoly {
        let terms = self
            .terms
            .iter()
            .map(|(&e, c)| (e, -c.clone()))
            .collect();
        TriPoly { terms }
    }
}

impl Mul for &TriPoly {
    type Output = TriPoly;
    fn mul(self, rhs: &TriPoly) -> TriPoly {
        let mut out = TriPoly::zero();
        for (&(x1, a1, b1), c1) in &self.terms {
            for (&(x2, a2, b2), c2) in &rhs.terms {
                out.add_term((x1 + x2, a1 + a2, b1 + b2), &(c1 * c2));
            }
        }
        out
    }
}

fn fmt_term(f: &mut fmt::Formatter<'_>, e: Expt, c: &Int, first: bool) -> fmt::Result {
    let mag = c.abs();
    if first {
        if c.is_negative() {
            write!(f, "-")?;
        }
    } else if c.is_negative() {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    let vars: Vec<String> = [("x", e.0), ("a", e.1), ("b", e.2)]
        .iter()
        .filter(|&&(_, p)| p > 0)
        .map(|&(v, p)| if p == 1 { v.to_string() } else { format!("{v}^{p}") })
        .collect();
    if vars.is_empty() {
        write!(f, "{mag}")
    } else {
        if !mag.is_one() {
            write!(f, "{mag}*")?;
        }
        write!(f, "{}", vars.join("*"))
    }
}

impl fmt::Display for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            fmt_term(f, e, c, i == 0)?;
        }
        Ok(())
    }
}

/// Rational function in `x`, `a`, `b`, kept in the canonical form: the
/// integer content of numerator and denominator together is 1 and the
/// denominator's lexicographically least term is positive.
///
/// No polynomial GCD is removed; equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct TriRat {
    num: TriPoly,
    den: TriPoly,
}

impl TriRat {
    /// Builds `num / den` in canonical form.  Panics if `den` is zero.
    pub fn new(num: TriPoly, den: TriPoly) -> TriRat {
        assert!(!den.is_zero(), "zero denominator in TriRat");
        let mut num = num;
        let mut den = den;
        let g = num.content().gcd(&den.content());
        if !g.is_zero() && !g.is_one() {
            num = num.div_int_exact(&g);
            den = den.div_int_exact(&g);
        }
        let (_, lc) = den.least_term().unwrap();
        if lc.is_negative() {
            num = -&num;
            den = -&den;
        }
        TriRat { num, den }
    }

    pub fn from_poly(p: TriPoly) -> TriRat {
        TriRat::new(p, TriPoly::one())
    }

    pub fn one() -> TriRat {
        TriRat::from_poly(TriPoly::one())
    }

    pub fn num(&self) -> &TriPoly {
        &self.num
    }

    pub fn den(&self) -> &TriPoly {
        &self.den
    }

    /// Equality as rational functions: `F.num * G.den == G.num * F.den`.
    pub fn equal(&self, other: &TriRat) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn swap_ab(&self) -> TriRat {
        TriRat::new(self.num.swap_ab(), self.den.swap_ab())
    }
}

impl Add for &TriRat {
    type Output = TriRat;
    fn add(self, rhs: &TriRat) -> TriRat {
        TriRat::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &TriRat {
    type Output = TriRat;
    fn sub(self, rhs: &TriRat) -> TriRat {
        TriRat::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &TriRat {
    type Output = TriRat;
    fn mul(self, rhs: &TriRat) -> TriRat {
        TriRat::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl fmt::Display for TriRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> TriPoly {
        TriPoly::x_power(1)
    }

    #[test]
    fn difference_of_squares() {
        let p = &x() + &TriPoly::one();
        let q = &x() - &TriPoly::one();
        let expect = &TriPoly::monomial(1, 2, 0, 0) - &TriPoly::one();
        assert_eq!(&p * &q, expect);
    }

    #[test]
    fn additive_identity() {
        let p = &TriPoly::monomial(3, 1, 2, 0) + &TriPoly::constant(-7);
        assert_eq!(&p + &TriPoly::zero(), p);
    }

    #[test]
    fn monomial_distribution() {
        // (a - b) * x^2 = a x^2 - b x^2
        let amb = &TriPoly::monomial(1, 0, 1, 0) - &TriPoly::monomial(1, 0, 0, 1);
        let x2 = TriPoly::x_power(2);
        let expect = &TriPoly::monomial(1, 2, 1, 0) - &TriPoly::monomial(1, 2, 0, 1);
        assert_eq!(&amb * &x2, expect);
    }

    #[test]
    fn exact_division_roundtrip() {
        let p = &(&x() + &TriPoly::monomial(2, 0, 1, 0)) * &(&x() - &TriPoly::constant(5));
        let d = &x() + &TriPoly::monomial(2, 0, 1, 0);
        assert_eq!(p.div_exact(&d), &x() - &TriPoly::constant(5));
    }

    #[test]
    fn trirat_cancellation() {
        // x/x == 1/1
        let f = TriRat::new(x(), x());
        assert!(f.equal(&TriRat::one()));
    }

    #[test]
    fn distinct_geometric_series_differ() {
        let f = TriRat::new(TriPoly::one(), &TriPoly::one() - &TriPoly::monomial(2, 1, 0, 0));
        let g = TriRat::new(TriPoly::one(), &TriPoly::one() - &TriPoly::monomial(3, 1, 0, 0));
        assert!(!f.equal(&g));
    }

    #[test]
    fn canonical_sign_and_content() {
        // (-2x) / (-4 + 2x): least denominator term must come out positive
        let f = TriRat::new(
            TriPoly::monomial(-2, 1, 0, 0),
            &TriPoly::monomial(2, 1, 0, 0) - &TriPoly::constant(4),
        );
        let (_, lc) = f.den().least_term().unwrap();
        assert!(lc.is_positive());
        assert!(f.num().content().gcd(&f.den().content()).is_one());
    }

    #[test]
    fn display_is_lexicographic() {
        let p = &(&TriPoly::one() - &x()) - &TriPoly::monomial(1, 2, 0, 1);
        assert_eq!(p.to_string(), "1 - x - x^2*b");
    }
}
