//! Fraction-free linear solving over polynomial matrices.
//!
//! One-step fraction-free Gauss-Jordan elimination (Bareiss-style): every
//! intermediate entry is a minor of the input matrix, so the division by the
//! previous pivot is always exact and coefficient growth stays under
//! control.  After the full pass the diagonal holds `det(M)` (up to a global
//! sign) and the augmented column holds `det(M) * x_i`.

use crate::tripoly::{TriPoly, TriRat};
use crate::Error;

/// Solves `M x = rhs` exactly over the rational-function field.
///
/// Errors with [`Error::SingularSystem`] when `M` is singular.
pub fn fraction_free_solve(m: &[Vec<TriPoly>], rhs: &[TriPoly]) -> Result<Vec<TriRat>, Error> {
    let (nums, den) = fraction_free_solve_parts(m, rhs)?;
    Ok(nums
        .into_iter()
        .map(|n| TriRat::new(n, den.clone()))
        .collect())
}

/// Like [`fraction_free_solve`] but returns the solution as numerators over
/// one shared denominator, `x_i = nums[i] / den`, without canonicalizing
/// each entry separately.
pub fn fraction_free_solve_parts(
    m: &[Vec<TriPoly>],
    rhs: &[TriPoly],
) -> Result<(Vec<TriPoly>, TriPoly), Error> {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n) && rhs.len() == n);
    if n == 0 {
        return Ok((Vec::new(), TriPoly::one()));
    }
    // augmented working matrix
    let mut a: Vec<Vec<TriPoly>> = m
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            let mut row = row.clone();
            row.push(r.clone());
            row
        })
        .collect();
    let mut prev = TriPoly::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !a[i][k].is_zero());
            match swap {
                Some(i) => a.swap(k, i),
                None => return Err(Error::SingularSystem),
            }
        }
        let pivot = a[k][k].clone();
        let pivot_row: Vec<TriPoly> = a[k].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let factor = row[k].clone();
            for (j, entry) in row.iter_mut().enumerate() {
                if j == k {
                    continue;
                }
                let t = &(&pivot * entry) - &(&factor * &pivot_row[j]);
                *entry = if t.is_zero() { t } else { t.div_exact(&prev) };
            }
            row[k] = TriPoly::zero();
        }
        prev = pivot;
    }
    let det = a[n - 1][n - 1].clone();
    if det.is_zero() {
        return Err(Error::SingularSystem);
    }
    // every diagonal entry equals +-det; fold the sign into the numerator
    let neg_det = -&det;
    let mut nums = Vec::with_capacity(n);
    for (i, row) in a.iter().enumerate() {
        if row[i] == det {
            nums.push(row[n].clone());
        } else if row[i] == neg_det {
            nums.push(-&row[n]);
        } else {
            unreachable!("fraction-free Gauss-Jordan diagonal is not +-det");
        }
    }
    Ok((nums, det))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: i64) -> TriPoly {
        TriPoly::constant(v)
    }

    fn x() -> TriPoly {
        TriPoly::x_power(1)
    }

    #[test]
    fn identity_system() {
        let m = vec![vec![c(1), c(0)], vec![c(0), c(1)]];
        let rhs = vec![c(1), x()];
        let sol = fraction_free_solve(&m, &rhs).unwrap();
        assert!(sol[0].equal(&TriRat::from_poly(c(1))));
        assert!(sol[1].equal(&TriRat::from_poly(x())));
    }

    #[test]
    fn back_substitution_case() {
        // [[1, -x], [0, 1]] * (1+x, 1) = (1, 1)
        let m = vec![vec![c(1), -&x()], vec![c(0), c(1)]];
        let rhs = vec![c(1), c(1)];
        let sol = fraction_free_solve(&m, &rhs).unwrap();
        assert!(sol[0].equal(&TriRat::from_poly(&c(1) + &x())));
        assert!(sol[1].equal(&TriRat::from_poly(c(1))));
    }

    #[test]
    fn singular_matrix_reports_error() {
        let m = vec![vec![c(1), c(2)], vec![c(2), c(4)]];
        let rhs = vec![c(1), c(1)];
        assert!(matches!(
            fraction_free_solve(&m, &rhs),
            Err(Error::SingularSystem)
        ));
    }

    #[test]
    fn pivoting_handles_zero_leading_entry() {
        let m = vec![vec![c(0), c(1)], vec![c(1), c(0)]];
        let rhs = vec![c(3), c(5)];
        let sol = fraction_free_solve(&m, &rhs).unwrap();
        assert!(sol[0].equal(&TriRat::from_poly(c(5))));
        assert!(sol[1].equal(&TriRat::from_poly(c(3))));
    }

    /// Residual check on a dense polynomial system: M * sol = rhs after
    /// clearing denominators.
    #[test]
    fn residual_vanishes_on_polynomial_system() {
        let a = TriPoly::monomial(1, 0, 1, 0);
        let b = TriPoly::monomial(1, 0, 0, 1);
        let m = vec![
            vec![&c(1) + &x(), a.clone(), c(2)],
            vec![b.clone(), &c(3) - &x(), x()],
            vec![c(1), &a * &b, &c(1) + &a],
        ];
        let rhs = vec![c(1), x(), b.clone()];
        let (nums, den) = fraction_free_solve_parts(&m, &rhs).unwrap();
        for (row, r) in m.iter().zip(&rhs) {
            let mut acc = TriPoly::zero();
            for (mij, numj) in row.iter().zip(&nums) {
                acc = &acc + &(mij * numj);
            }
            assert_eq!(acc, r * &den);
        }
    }
}
