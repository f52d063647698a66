//! Exact rational scalars.
//!
//! Every probability in this crate is a [`Rational`]: an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator. The arithmetic
//! comes from `num-rational`; this module adds the parsing, formatting, and
//! conversion helpers the rest of the crate needs.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

/// Builds a rational from machine integers. Panics if `denom` is zero.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// `base^exp` for a nonnegative exponent.
pub fn pow(base: &Rational, exp: u64) -> Rational {
    assert!(exp <= i32::MAX as u64, "exponent too large");
    base.pow(exp as i32)
}

/// Parses `p/q` or a bare integer. The result is reduced; the input need not
/// be in lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational".to_string());
    }
    let parse_int = |t: &str| -> Result<BigInt, String> {
        t.parse::<BigInt>()
            .map_err(|_| format!("bad integer `{t}`"))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let p = parse_int(p)?;
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(format!("zero denominator in `{s}`"));
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Formats as `p/q`, always with an explicit denominator: `1/2`, `3/1`, `0/1`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Greatest common divisor tuned for the numbers this crate produces.
///
/// The `gcd` that comes with the bignum crate is a subtract-and-shift loop
/// whose running time is quadratic in the bit length whenever one operand
/// ends up small and odd against a huge odd one; at the megabit sizes long
/// word evaluations reach that means minutes per reduction. This variant
/// strips shared powers of two first (so power-of-two-heavy denominators
/// reduce in linear time) and falls back to the division-based loop.
pub(crate) fn big_gcd(a: &BigUint, b: &BigUint) -> BigUint {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let ta = a.trailing_zeros().unwrap_or(0);
    let tb = b.trailing_zeros().unwrap_or(0);
    let common_twos = ta.min(tb);
    let mut a = a >> ta;
    let mut b = b >> tb;
    let odd_part = loop {
        if a.is_one() || b.is_one() {
            break BigUint::one();
        }
        if a == b {
            break a;
        }
        if a < b {
            std::mem::swap(&mut a, &mut b);
        }
        a %= &b;
        if a.is_zero() {
            break b;
        }
        a >>= a.trailing_zeros().unwrap_or(0);
    };
    odd_part << common_twos
}

/// Builds the canonical rational `num / den` with a single gcd pass. This is
/// how scaled integer computations hand their result back as a [`Rational`];
/// it never goes through the slow reduction path described at
/// [`big_gcd`].
pub(crate) fn reduced_ratio(num: BigInt, den: BigInt) -> Rational {
    assert!(!den.is_zero(), "zero denominator");
    if num.is_zero() {
        return Rational::zero();
    }
    let (mut num, mut den) = if den.is_negative() {
        (-num, -den)
    } else {
        (num, den)
    };
    let g = BigInt::from(big_gcd(num.magnitude(), den.magnitude()));
    if !g.is_one() {
        num /= &g;
        den /= &g;
    }
    Rational::new_raw(num, den)
}

/// `1 - r` for `r` in `[0, 1]`, without any reduction: if `n/d` is in lowest
/// terms then so is `(d - n)/d`. Plain subtraction would re-reduce and hit
/// the quadratic gcd on large values.
pub(crate) fn one_minus(r: &Rational) -> Rational {
    debug_assert!(!r.is_negative() && r.numer() <= r.denom());
    if r.is_zero() {
        Rational::one()
    } else if r.numer() == r.denom() {
        Rational::zero()
    } else {
        Rational::new_raw(r.denom() - r.numer(), r.denom().clone())
    }
}

/// Nearest `f64`, robust for numerators and denominators far beyond the
/// `f64` range: both sides are shifted down together before dividing.
pub fn to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let numer = r.numer();
    let denom = r.denom();
    let nb = numer.bits();
    let db = denom.bits();
    if nb < 900 && db < 900 {
        let n = numer.to_f64().unwrap_or(f64::NAN);
        let d = denom.to_f64().unwrap_or(f64::NAN);
        return n / d;
    }
    let shift = nb.max(db) - 512;
    let n = (numer.abs() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (denom >> shift).to_f64().unwrap_or(f64::NAN);
    let v = n / d;
    if numer.is_negative() {
        -v
    } else {
        v
    }
}

/// Decimal rendering with six decimal places, for display only.
pub fn decimal_string(r: &Rational) -> String {
    let v = to_f64(r);
    if v == 0.0 {
        "0".to_string()
    } else if v.abs() >= 1e-4 && v.abs() < 1e9 {
        let s = format!("{:.6}", v);
        let s = s.trim_end_matches('0').trim_end_matches('.');
        s.to_string()
    } else {
        format!("{:.5e}", v)
    }
}
