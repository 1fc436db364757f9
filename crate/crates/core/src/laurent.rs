//! Sparse Laurent polynomials in one variable `t`, generic over the
//! coefficient ring.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::Coeff;

/// Laurent polynomial: a finite map from integer exponents of `t` (possibly
/// negative) to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly<T> {
    terms: BTreeMap<i64, T>,
}

impl<T: Coeff> Default for LaurentPoly<T> {
    fn default() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }
}

impl<T: Coeff> LaurentPoly<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: T) -> Self {
        Self::term(0, c)
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn term(exp: i64, c: T) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, T)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &T)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: i64) -> T {
        self.terms.get(&exp).cloned().unwrap_or_else(T::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, exp: i64, c: T) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = std::mem::replace(o.get_mut(), T::zero()) + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c.clone());
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero();
        for (&e, c) in &self.terms {
            out.add_term(e, -c.clone());
        }
        out
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self::zero();
        for (&e, c) in &self.terms {
            out.add_term(e, c.clone() * s.clone());
        }
        out
    }

    /// Multiplies by `t^shift`.
    pub fn shift(&self, delta: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e + delta, c.clone())).collect(),
        }
    }

    /// `self -= q * f`; the workhorse of the series recurrence.
    pub fn sub_mul_assign(&mut self, q: &Self, f: &Self) {
        for (&e1, c1) in &q.terms {
            for (&e2, c2) in &f.terms {
                self.add_term(e1 + e2, -(c1.clone() * c2.clone()));
            }
        }
    }

    /// Evaluation at `t = 1`: the sum of all coefficients.
    pub fn eval_one(&self) -> T {
        let mut acc = T::zero();
        for c in self.terms.values() {
            acc = acc + c.clone();
        }
        acc
    }

    /// Sums of coefficients over positive, zero and negative exponents.
    pub fn sign_masses(&self) -> (T, T, T) {
        let mut plus = T::zero();
        let mut minus = T::zero();
        let mut zero = T::zero();
        for (&e, c) in &self.terms {
            if e > 0 {
                plus = plus + c.clone();
            } else if e < 0 {
                minus = minus + c.clone();
            } else {
                zero = c.clone();
            }
        }
        (plus, zero, minus)
    }

    pub fn map_coeffs<U: Coeff>(&self, f: impl Fn(&T) -> U) -> LaurentPoly<U> {
        let mut out = LaurentPoly::zero();
        for (&e, c) in &self.terms {
            out.add_term(e, f(c));
        }
        out
    }
}

impl<T: Coeff + fmt::Display> fmt::Display for LaurentPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Int;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly<Int> {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, Int::from(c))))
    }

    #[test]
    fn mixed_sign_exponents_multiply() {
        // (t + 1)(t^{-1} + 1) = t + 2 + t^{-1}
        let f = p(&[(1, 1), (0, 1)]);
        let g = p(&[(-1, 1), (0, 1)]);
        assert_eq!(f.mul(&g), p(&[(1, 1), (0, 2), (-1, 1)]));
    }

    #[test]
    fn zero_terms_pruned() {
        let f = p(&[(2, 5)]).sub(&p(&[(2, 5)]));
        assert!(f.is_zero());
        assert_eq!(f.num_terms(), 0);
    }

    #[test]
    fn sign_masses_split() {
        let f = p(&[(1, 1), (0, 2), (-1, 1)]);
        let (plus, zero, minus) = f.sign_masses();
        assert_eq!(plus, Int::from(1));
        assert_eq!(zero, Int::from(2));
        assert_eq!(minus, Int::from(1));
        assert_eq!(f.eval_one(), Int::from(4));
    }
}
