use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use super::factor::factor_over_q;
use super::sturm::{refine_once, Interval, SturmSequence};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::unipoly::UniPoly;

/// A real algebraic number: an irreducible primitive integer polynomial with
/// positive leading coefficient, and a closed interval containing exactly one
/// of its real roots. The interval is a point exactly when the number is
/// rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraicNumber {
    minpoly: UniPoly,
    interval: Interval,
}

impl AlgebraicNumber {
    pub fn from_rational(q: Rational) -> Self {
        let minpoly = UniPoly::linear_root(&q).primitive();
        AlgebraicNumber { minpoly, interval: Interval::point(q) }
    }

    /// The unique root of `p` in `[lo, hi]`, reduced to its minimal polynomial.
    pub fn new(p: UniPoly, lo: Rational, hi: Rational) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::UndefinedInput("algebraic number from the zero polynomial"));
        }
        if lo > hi {
            return Err(Error::InvariantViolation("interval with lo > hi".into()));
        }
        let sf = p.squarefree_part();
        if lo == hi {
            return if sf.eval(&lo).is_zero() {
                Ok(Self::from_rational(lo))
            } else {
                Err(Error::InvariantViolation("point interval is not a root".into()))
            };
        }
        if sf.deg() == 0 {
            return Err(Error::InvariantViolation("constant polynomial has no roots".into()));
        }
        let lo_root = sf.eval(&lo).is_zero();
        let hi_root = sf.eval(&hi).is_zero();
        if lo_root {
            let rest = sf.exact_div(&UniPoly::linear_root(&lo));
            let others = if rest.deg() == 0 { 0 } else { SturmSequence::new(&rest)?.count(&lo, &hi) };
            return if others == 0 {
                Ok(Self::from_rational(lo))
            } else {
                Err(Error::InvariantViolation("interval is not isolating".into()))
            };
        }
        let count = SturmSequence::new(&sf)?.count(&lo, &hi);
        if count != 1 {
            return Err(Error::InvariantViolation(format!("interval contains {count} roots")));
        }
        if hi_root {
            return Ok(Self::from_rational(hi));
        }
        for (f, _) in factor_over_q(&sf)?.factors {
            let n = if f.deg() == 1 {
                let r = -f.coeff(0) / f.coeff(1);
                usize::from(lo < r && r < hi)
            } else {
                SturmSequence::new(&f)?.count(&lo, &hi)
            };
            if n == 1 {
                if f.deg() == 1 {
                    return Ok(Self::from_rational(-f.coeff(0) / f.coeff(1)));
                }
                return Ok(AlgebraicNumber { minpoly: f, interval: Interval::new(lo, hi) });
            }
        }
        Err(Error::InvariantViolation("no irreducible factor owns the root".into()))
    }

    /// Trusted constructor for an irreducible primitive `minpoly` and an
    /// interval already known to isolate one of its roots.
    pub(crate) fn from_parts(minpoly: UniPoly, interval: Interval) -> Self {
        if minpoly.deg() == 1 {
            return Self::from_rational(-minpoly.coeff(0) / minpoly.coeff(1));
        }
        AlgebraicNumber { minpoly, interval }
    }

    pub fn minpoly(&self) -> &UniPoly {
        &self.minpoly
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    pub fn degree(&self) -> usize {
        self.minpoly.deg()
    }

    pub fn is_rational(&self) -> bool {
        self.interval.is_point()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.interval.lo.clone())
    }

    pub fn refined(&self) -> Self {
        AlgebraicNumber { minpoly: self.minpoly.clone(), interval: refine_once(&self.minpoly, &self.interval) }
    }

    pub fn refined_to(&self, width: &Rational) -> Self {
        let mut a = self.clone();
        while !a.is_rational() && &a.interval.width() >= width {
            a = a.refined();
        }
        a
    }

    /// Sign of `p` at this number; exact.
    pub fn sign_of(&self, p: &UniPoly) -> i8 {
        if let Some(q) = self.to_rational() {
            return p.sign_at(&q);
        }
        let r = p.rem(&self.minpoly);
        if r.is_zero() {
            return 0;
        }
        if r.deg() == 0 {
            return rational::sign(&r.coeff(0));
        }
        let sturm = SturmSequence::new(&r).expect("nonzero");
        let mut iv = self.interval.clone();
        loop {
            if r.sign_at(&iv.lo) != 0 && sturm.count(&iv.lo, &iv.hi) == 0 {
                return r.sign_at(&iv.lo);
            }
            iv = refine_once(&self.minpoly, &iv);
        }
    }

    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        let mut a = self.clone();
        loop {
            if let Some(r) = a.to_rational() {
                return r.cmp(q);
            }
            if q < &a.interval.lo {
                return Ordering::Greater;
            }
            if q > &a.interval.hi {
                return Ordering::Less;
            }
            a = a.refined();
        }
    }

    /// Approximation: midpoint of an interval narrower than `width`.
    pub fn approx(&self, width: &Rational) -> Rational {
        self.refined_to(width).interval.midpoint()
    }
}

impl Ord for AlgebraicNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        if let Some(q) = other.to_rational() {
            return self.cmp_rational(&q);
        }
        if let Some(q) = self.to_rational() {
            return other.cmp_rational(&q).reverse();
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        loop {
            if a.interval.hi < b.interval.lo {
                return Ordering::Less;
            }
            if b.interval.hi < a.interval.lo {
                return Ordering::Greater;
            }
            if a.minpoly == b.minpoly {
                let lo = a.interval.lo.clone().min(b.interval.lo.clone());
                let hi = a.interval.hi.clone().max(b.interval.hi.clone());
                let s = SturmSequence::new(&a.minpoly).expect("nonzero");
                if s.count(&lo, &hi) == 1 {
                    return Ordering::Equal;
                }
            }
            a = a.refined();
            b = b.refined();
        }
    }
}

impl PartialOrd for AlgebraicNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_rational() {
            Some(q) => f.write_str(&rational::to_string(&q)),
            None => write!(
                f,
                "root of {} in [{}, {}]",
                self.minpoly,
                rational::to_string(&self.interval.lo),
                rational::to_string(&self.interval.hi)
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn reduces_to_minimal_polynomial() {
        // (T^2 - 2)(T - 5) on [1, 2] is sqrt(2)
        let p = &UniPoly::from_ints(&[-2, 0, 1]) * &UniPoly::from_ints(&[-5, 1]);
        let a = AlgebraicNumber::new(p, int(1), int(2)).unwrap();
        assert_eq!(a.minpoly(), &UniPoly::from_ints(&[-2, 0, 1]));
        let b = AlgebraicNumber::new(UniPoly::from_ints(&[-6, 2]), int(0), int(5)).unwrap();
        assert_eq!(b.to_rational(), Some(int(3)));
    }

    #[test]
    fn ordering() {
        let s2 = AlgebraicNumber::new(UniPoly::from_ints(&[-2, 0, 1]), int(1), int(2)).unwrap();
        let s3 = AlgebraicNumber::new(UniPoly::from_ints(&[-3, 0, 1]), int(1), int(2)).unwrap();
        assert!(s2 < s3);
        assert_eq!(s2.cmp(&s2.refined().refined()), Ordering::Equal);
        assert_eq!(s2.cmp_rational(&rational::frac(3, 2)), Ordering::Less);
    }

    #[test]
    fn sign_is_refinement_invariant() {
        let s2 = AlgebraicNumber::new(UniPoly::from_ints(&[-2, 0, 1]), int(0), int(2)).unwrap();
        let p = UniPoly::from_ints(&[-7, 0, 0, 2]); // 2T^3 - 7 at sqrt2: 4 sqrt2 - 7 < 0
        let mut a = s2.clone();
        for _ in 0..10 {
            assert_eq!(a.sign_of(&p), -1);
            a = a.refined();
        }
    }
}
