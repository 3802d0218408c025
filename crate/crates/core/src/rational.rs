//! Helpers around [`BigRational`], the exact scalar used everywhere.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_bigint(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Sign as -1, 0 or 1.
pub fn sign(q: &Rational) -> i8 {
    match q.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Bit length of the larger of numerator and denominator.
pub fn bit_length(q: &Rational) -> u64 {
    q.numer().bits().max(q.denom().bits())
}

pub fn lcm_denominators<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

pub fn gcd_numerators<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::zero(), |acc, q| acc.gcd(q.numer()))
}

/// Renders `p/q`, or `p` when the denominator is one.
pub fn to_string(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// The rational with the smallest denominator in the open interval `(lo, hi)`,
/// preferring the integer of least magnitude when one fits.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo < hi);
    if lo.is_negative() && hi.is_positive() {
        return Rational::zero();
    }
    if !lo.is_negative() {
        simplest_positive(lo, hi)
    } else {
        -simplest_positive(&-hi, &-lo)
    }
}

// Stern-Brocot descent on 0 <= lo < hi.
fn simplest_positive(lo: &Rational, hi: &Rational) -> Rational {
    let fl = lo.floor();
    let candidate = &fl + Rational::one();
    if candidate < *hi {
        return candidate;
    }
    // lo and hi share the integer part (or hi is exactly fl + 1).
    let lo_frac = lo - &fl;
    let hi_frac = hi - &fl;
    if lo_frac.is_zero() {
        // (fl, fl + hi_frac): need 1/n < hi_frac
        let n = (hi_frac.recip()).floor() + Rational::one();
        return fl + n.recip();
    }
    // recurse on reciprocals of the fractional parts
    let inner = simplest_positive(&hi_frac.recip(), &lo_frac.recip());
    fl + inner.recip()
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplest_between_prefers_small_denominators() {
        assert_eq!(simplest_between(&frac(1, 3), &frac(2, 3)), frac(1, 2));
        assert_eq!(simplest_between(&int(-5), &int(5)), int(0));
        assert_eq!(simplest_between(&frac(7, 5), &frac(3, 2)), frac(10, 7));
        assert_eq!(simplest_between(&int(2), &int(3)), frac(5, 2));
        assert_eq!(simplest_between(&frac(-3, 2), &frac(-7, 5)), frac(-10, 7));
        assert_eq!(simplest_between(&int(0), &frac(1, 10)), frac(1, 11));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(parse("-6/4"), Some(frac(-3, 2)));
        assert_eq!(parse("7"), Some(int(7)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(to_string(&frac(3, -6)), "-1/2");
        assert_eq!(to_string(&int(4)), "4");
    }
}
