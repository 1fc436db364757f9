//! Exact-rational helpers: decimal rendering and high-precision square roots.
//!
//! Floats never enter the engine; decimal digits are produced directly from
//! exact rationals at render time, with round-half-even.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::{Int, Rat};

/// 10^k as a big integer.
pub fn pow10(k: usize) -> Int {
    BigInt::from(10u32).pow(k as u32)
}

/// Rounds `p / q` (with `q > 0`) to the nearest integer, ties to even.
pub fn div_round_half_even(p: &Int, q: &Int) -> Int {
    let (mut t, r) = p.div_mod_floor(q);
    let twice: Int = &r * 2;
    match twice.cmp(q) {
        std::cmp::Ordering::Less => {}
        std::cmp::Ordering::Greater => t += 1,
        std::cmp::Ordering::Equal => {
            if t.is_odd() {
                t += 1;
            }
        }
    }
    t
}

/// Decimal exponent `e` with `10^e <= |r| < 10^{e+1}`; `r` must be nonzero.
fn decimal_exponent(r: &Rat) -> i64 {
    let p = r.numer().abs();
    let q = r.denom().clone();
    // initial estimate from digit counts, then correct by comparison
    let mut e = p.to_string().len() as i64 - q.to_string().len() as i64;
    loop {
        // compare 10^e <= p/q  i.e.  10^e * q <= p   (handle negative e)
        let (lhs, rhs) = if e >= 0 {
            (pow10(e as usize) * &q, p.clone())
        } else {
            (q.clone(), pow10((-e) as usize) * &p)
        };
        if lhs > rhs {
            e -= 1;
            continue;
        }
        let e1 = e + 1;
        let (lhs, rhs) = if e1 >= 0 {
            (pow10(e1 as usize) * &q, p.clone())
        } else {
            (q.clone(), pow10((-e1) as usize) * &p)
        };
        if lhs <= rhs {
            e += 1;
            continue;
        }
        return e;
    }
}

/// Renders `r` to `sig` significant decimal digits, round-half-even.
///
/// Zero renders as `"0"`; trailing zeros within the significant digits are
/// kept (`0.4576402592`, not `0.45764026`).
pub fn decimal_sig(r: &Rat, sig: usize) -> String {
    assert!(sig >= 1);
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let abs = r.abs();
    let mut e = decimal_exponent(&abs);
    // scaled = round(|r| * 10^{sig-1-e}) has exactly `sig` digits, unless
    // rounding carried it to 10^sig
    let shift = sig as i64 - 1 - e;
    let (p, q) = if shift >= 0 {
        (abs.numer() * pow10(shift as usize), abs.denom().clone())
    } else {
        (abs.numer().clone(), abs.denom() * pow10((-shift) as usize))
    };
    let mut digits = div_round_half_even(&p, &q).to_string();
    if digits.len() > sig {
        digits.truncate(sig);
        e += 1;
    }
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if e < 0 {
        out.push_str("0.");
        for _ in 0..(-e - 1) {
            out.push('0');
        }
        out.push_str(&digits);
    } else if (e as usize) >= sig - 1 {
        out.push_str(&digits);
        for _ in 0..(e as usize - (sig - 1)) {
            out.push('0');
        }
    } else {
        let split = e as usize + 1;
        out.push_str(&digits[..split]);
        out.push('.');
        out.push_str(&digits[split..]);
    }
    out
}

/// `sqrt(n)` as an exact rational accurate to `digits` decimal digits:
/// `isqrt(n * 10^{2 digits}) / 10^{digits}`.
pub fn sqrt_approx(n: u64, digits: usize) -> Rat {
    let scaled = BigInt::from(n) * pow10(2 * digits);
    Rat::new(scaled.sqrt(), pow10(digits))
}

/// Number of agreeing leading significant digits between two estimates.
///
/// Returns `cap` when the values are exactly equal; 0 when they do not even
/// share the leading digit's magnitude.
pub fn agreement_digits(a: &Rat, b: &Rat, cap: u32) -> u32 {
    if a == b {
        return cap;
    }
    let scale = if a.is_zero() { b.abs() } else { a.abs() };
    if scale.is_zero() {
        return 0;
    }
    let rel = (a - b).abs() / scale;
    // digits = -e - 1 where 10^e <= rel < 10^{e+1}
    let e = decimal_exponent(&rel);
    if e >= -1 {
        0
    } else {
        ((-e - 1) as u32).min(cap)
    }
}

/// Convenience: best-effort f64 view of a huge rational (render via decimals
/// to avoid overflowing f64 conversion of the raw numerator/denominator).
pub fn to_f64(r: &Rat) -> f64 {
    decimal_sig(r, 17).parse().unwrap_or_else(|_| {
        r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
    })
}
