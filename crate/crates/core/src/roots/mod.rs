//! Univariate real-root machinery over Q.

mod algebraic;
mod factor;
mod sturm;

pub use algebraic::AlgebraicNumber;
pub use factor::{factor_over_q, squarefree_decomposition, Factorization};
pub use sturm::{isolate_real_roots, refine_once, refine_to, sturm_count, Interval, SturmSequence};

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::unipoly::UniPoly;

/// All distinct rational roots, ascending.
///
/// Candidates `±a/b` with `a | p(0)` and `b | lc` are tried inside the
/// isolating intervals of the real roots; when the extreme coefficients are
/// too large to enumerate divisors cheaply, linear factors are read off the
/// factorization instead.
pub fn rational_roots(p: &UniPoly) -> Result<Vec<Rational>> {
    if p.is_zero() {
        return Err(Error::UndefinedInput("rational_roots of the zero polynomial"));
    }
    let mut sf = p.squarefree_part();
    let mut roots = Vec::new();
    if sf.deg() == 0 {
        return Ok(roots);
    }
    if sf.coeff(0).is_zero() {
        roots.push(Rational::zero());
        sf = sf.exact_div(&UniPoly::x());
    }
    if sf.deg() > 0 {
        let (_, prim) = sf.primitive_integer();
        let a0 = prim[0].abs();
        let an = prim.last().unwrap().abs();
        match (divisors(&a0), divisors(&an)) {
            (Some(da), Some(dn)) => {
                let intervals = isolate_real_roots(&sf)?;
                for iv in intervals {
                    if iv.is_point() {
                        roots.push(iv.lo.clone());
                        continue;
                    }
                    let hit = dn.iter().flat_map(|b| {
                        da.iter().flat_map(move |a| {
                            let q = Rational::new(a.clone(), b.clone());
                            [q.clone(), -q]
                        })
                    });
                    for q in hit {
                        if iv.contains(&q) && sf.eval(&q).is_zero() {
                            roots.push(q);
                            break;
                        }
                    }
                }
            }
            _ => {
                for (f, _) in factor_over_q(&sf)?.factors {
                    if f.deg() == 1 {
                        roots.push(-f.coeff(0) / f.coeff(1));
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

// Positive divisors by trial division, when the number is small enough.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let v = n.to_u64().filter(|&v| v < (1u64 << 40))?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let r = v.sqrt();
    for d in 1..=r {
        if v % d == 0 {
            small.push(BigInt::from(d));
            if d != v / d {
                large.push(BigInt::from(v / d));
            }
        }
    }
    large.reverse();
    small.extend(large);
    Some(small)
}

/// True iff every complex root is real.
pub fn all_roots_real(p: &UniPoly) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::UndefinedInput("all_roots_real of the zero polynomial"));
    }
    let sf = p.squarefree_part();
    if sf.deg() == 0 {
        return Ok(true);
    }
    Ok(SturmSequence::new(&sf)?.count_all() == sf.deg())
}

/// Newton power sums `p_0..p_{n-1}` of the complex roots (with multiplicity).
pub fn power_sums(g: &UniPoly) -> Vec<Rational> {
    let n = g.deg();
    let m = g.monic();
    // m = T^n + a_{n-1} T^{n-1} + … + a_0
    let a = |i: usize| m.coeff(i);
    let mut p = vec![Rational::from_integer(BigInt::from(n))];
    for k in 1..n {
        let mut s = -Rational::from_integer(BigInt::from(k)) * a(n - k);
        for j in 1..k {
            s -= a(n - j) * &p[k - j];
        }
        p.push(s);
    }
    p
}

/// `Σ_{G(ϑ)=0} H(ϑ)` over the complex roots of `G` with multiplicity.
pub fn root_sum_evaluate(g: &UniPoly, h: &UniPoly) -> Result<Rational> {
    if g.deg() == 0 {
        return Err(Error::UndefinedInput("root_sum_evaluate needs a non-constant G"));
    }
    let r = h.rem(g);
    let ps = power_sums(g);
    Ok(r.coeffs().iter().zip(&ps).map(|(c, p)| c * p).sum())
}

/// Sign of `p(α)`.
pub fn sign_at(p: &UniPoly, alpha: &AlgebraicNumber) -> i8 {
    alpha.sign_of(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn sturm_count_examples() {
        assert_eq!(sturm_count(&p(&[-2, 0, 1]), &int(-2), &int(2)).unwrap(), 2);
        assert_eq!(sturm_count(&p(&[1, 0, 1]), &int(-10), &int(10)).unwrap(), 0);
        assert_eq!(sturm_count(&p(&[0, -1, 0, 1]), &int(-2), &int(0)).unwrap(), 2);
        assert!(sturm_count(&UniPoly::zero(), &int(0), &int(1)).is_err());
    }

    #[test]
    fn isolation_examples() {
        let ivs = isolate_real_roots(&p(&[-2, 0, 1])).unwrap();
        assert_eq!(ivs.len(), 2);
        assert!(ivs[0].hi < int(0) && ivs[1].lo > int(0));
        assert!(isolate_real_roots(&p(&[1, 0, 1])).unwrap().is_empty());
        // (T-1)^2 (T+3)
        let f = &p(&[-1, 1]).pow(2) * &p(&[3, 1]);
        let ivs = isolate_real_roots(&f).unwrap();
        assert_eq!(ivs.len(), 2);
        assert!(ivs[0].contains(&int(-3)) && ivs[1].contains(&int(1)));
    }

    #[test]
    fn rational_root_examples() {
        assert_eq!(rational_roots(&p(&[1, -3, 2])).unwrap(), vec![frac(1, 2), int(1)]);
        assert!(rational_roots(&p(&[-2, 0, 1])).unwrap().is_empty());
        assert_eq!(rational_roots(&p(&[0, 1])).unwrap(), vec![int(0)]);
    }

    #[test]
    fn totally_real_examples() {
        assert!(all_roots_real(&p(&[-2, 0, 1])).unwrap());
        assert!(!all_roots_real(&p(&[1, 0, 1])).unwrap());
        assert!(all_roots_real(&p(&[0, -1, 0, 1])).unwrap());
    }

    #[test]
    fn root_sum_examples() {
        assert_eq!(root_sum_evaluate(&p(&[-2, 0, 1]), &p(&[1, 1])).unwrap(), int(2));
        assert_eq!(root_sum_evaluate(&p(&[-3, 1]), &p(&[0, 0, 1])).unwrap(), int(9));
        assert_eq!(root_sum_evaluate(&p(&[2, -3, 1]), &p(&[0, 1])).unwrap(), int(3));
        assert!(root_sum_evaluate(&p(&[5]), &p(&[0, 1])).is_err());
    }

    #[test]
    fn sign_at_examples() {
        let sqrt2 = AlgebraicNumber::new(p(&[-2, 0, 1]), int(1), int(2)).unwrap();
        assert_eq!(sign_at(&p(&[0, 1]), &sqrt2), 1);
        assert_eq!(sign_at(&p(&[-2, 0, 1]), &sqrt2), 0);
        assert_eq!(sign_at(&p(&[-2, 1]), &sqrt2), -1);
        let bad = AlgebraicNumber::new(p(&[-2, 0, 1]), int(-2), int(2));
        assert!(matches!(bad, Err(Error::InvariantViolation(_))));
    }
}
