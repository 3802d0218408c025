//! Arithmetic in a real number field Q(θ) = Q[T]/(m) with a fixed real
//! embedding, and univariate polynomials over it.

use num_traits::{One, Zero};

use crate::rational::{self, Rational};
use crate::roots::AlgebraicNumber;
use crate::unipoly::{interpolate, resultant, UniPoly};

/// Elements are `UniPoly`s in θ of degree below `degree()`.
#[derive(Clone, Debug)]
pub(crate) struct Field {
    monic: UniPoly,
    theta: AlgebraicNumber,
}

impl Field {
    /// Q with θ = r; every element is a constant.
    pub fn rational(r: Rational) -> Self {
        Field { monic: UniPoly::linear_root(&r), theta: AlgebraicNumber::from_rational(r) }
    }

    pub fn from_algebraic(theta: AlgebraicNumber) -> Self {
        let theta = theta.refined_to(&Rational::new(1.into(), (1u64 << 20).into()));
        Field { monic: theta.minpoly().monic(), theta }
    }

    pub fn degree(&self) -> usize {
        self.monic.deg()
    }

    pub fn monic(&self) -> &UniPoly {
        &self.monic
    }

    pub fn theta(&self) -> &AlgebraicNumber {
        &self.theta
    }

    pub fn reduce(&self, a: &UniPoly) -> UniPoly {
        if a.degree().is_some_and(|d| d >= self.degree()) {
            a.rem(&self.monic)
        } else {
            a.clone()
        }
    }

    pub fn mul(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        self.reduce(&(a * b))
    }

    pub fn inv(&self, a: &UniPoly) -> Option<UniPoly> {
        if a.is_zero() {
            return None;
        }
        if a.deg() == 0 {
            return Some(UniPoly::constant(a.coeff(0).recip()));
        }
        let (g, s, _) = a.ext_gcd(&self.monic);
        // m irreducible, so g is a nonzero constant
        debug_assert_eq!(g.deg(), 0);
        Some(s.scale(&g.coeff(0).recip()))
    }

    pub fn sign(&self, a: &UniPoly) -> i8 {
        if a.degree().is_none_or(|d| d == 0) {
            return rational::sign(&a.coeff(0));
        }
        self.theta.sign_of(a)
    }
}

/// Polynomial in x with coefficients in a `Field`, ascending, trimmed.
pub(crate) type KPoly = Vec<UniPoly>;

pub(crate) fn kp_trim(mut p: KPoly) -> KPoly {
    while p.last().is_some_and(UniPoly::is_zero) {
        p.pop();
    }
    p
}

pub(crate) fn kp_deg(p: &KPoly) -> Option<usize> {
    p.len().checked_sub(1)
}

pub(crate) fn kp_eval(k: &Field, p: &KPoly, x: &Rational) -> UniPoly {
    let mut acc = UniPoly::zero();
    for c in p.iter().rev() {
        acc = &acc.scale(x) + c;
    }
    k.reduce(&acc)
}

pub(crate) fn kp_derivative(p: &KPoly) -> KPoly {
    kp_trim(p.iter().enumerate().skip(1).map(|(i, c)| c.scale(&rational::int(i as i64))).collect())
}

pub(crate) fn kp_rem(k: &Field, a: &KPoly, b: &KPoly) -> KPoly {
    let db = kp_deg(b).expect("division by zero polynomial");
    let inv_lc = k.inv(&b[db]).expect("nonzero leading coefficient");
    let mut r = a.clone();
    while let Some(dr) = kp_deg(&r) {
        if dr < db {
            break;
        }
        let q = k.mul(&r[dr], &inv_lc);
        for (i, bc) in b.iter().enumerate() {
            let t = k.mul(&q, bc);
            r[dr - db + i] = &r[dr - db + i] - &t;
        }
        r[dr] = UniPoly::zero();
        r = kp_trim(r);
    }
    r
}

pub(crate) fn kp_monic(k: &Field, p: &KPoly) -> KPoly {
    match p.last() {
        None => Vec::new(),
        Some(lc) => {
            let inv = k.inv(lc).expect("nonzero");
            p.iter().map(|c| k.mul(c, &inv)).collect()
        }
    }
}

pub(crate) fn kp_gcd(k: &Field, a: &KPoly, b: &KPoly) -> KPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = kp_rem(k, &a, &b);
        a = b;
        b = r;
    }
    kp_monic(k, &a)
}

/// Signed remainder sequence of `p` over K.
pub(crate) struct KSturm {
    seq: Vec<KPoly>,
}

impl KSturm {
    pub fn new(k: &Field, p: &KPoly) -> Self {
        let mut seq = vec![p.clone()];
        let d = kp_derivative(p);
        if !d.is_empty() {
            seq.push(d);
        }
        while seq.len() >= 2 {
            let n = seq.len();
            let r = kp_rem(k, &seq[n - 2], &seq[n - 1]);
            if r.is_empty() {
                break;
            }
            seq.push(r.into_iter().map(|c| -c).collect());
        }
        KSturm { seq }
    }

    fn variations(&self, k: &Field, x: &Rational) -> usize {
        let signs: Vec<i8> = self.seq.iter().map(|p| k.sign(&kp_eval(k, p, x))).filter(|&s| s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count(&self, k: &Field, lo: &Rational, hi: &Rational) -> usize {
        self.variations(k, lo).saturating_sub(self.variations(k, hi))
    }
}

/// `Π g_{θ'}(x)` over all conjugates θ' of θ: a nonzero polynomial over Q
/// whose roots include every root of `g` in the real embedding.
pub(crate) fn norm(k: &Field, g: &KPoly) -> UniPoly {
    let e = kp_deg(g).expect("nonzero");
    if k.degree() == 1 {
        return UniPoly::new(g.iter().map(|c| c.coeff(0)).collect());
    }
    let n = k.degree() * e;
    let xs: Vec<Rational> = (0..=n).map(|i| rational::int(i as i64)).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|x| {
            let mut at = UniPoly::zero();
            for c in g.iter().rev() {
                at = &at.scale(x) + c;
            }
            resultant(k.monic(), &at)
        })
        .collect();
    interpolate(&xs, &ys)
}

/// `f(z − c·t)` as a polynomial in t whose coefficients are polynomials in z.
pub(crate) fn shifted_in_t(f: &UniPoly, c: &Rational) -> Vec<UniPoly> {
    let e = f.deg();
    let mut out = vec![UniPoly::zero(); e + 1];
    // (z − c t)^k = Σ_j C(k, j) z^{k−j} (−c)^j t^j
    for (k, fk) in f.coeffs().iter().enumerate() {
        if fk.is_zero() {
            continue;
        }
        let mut binom = Rational::one();
        let mut negc = Rational::one();
        for (j, o) in out.iter_mut().enumerate().take(k + 1) {
            let coef = fk * &binom * &negc;
            *o = &*o + &UniPoly::monomial(coef, k - j);
            binom = binom * rational::int((k - j) as i64) / rational::int((j + 1) as i64);
            negc *= -c;
        }
    }
    out
}

/// `Res_t(m(t), f(z − c·t))` for monic `m`.
pub(crate) fn shifted_resultant(m: &UniPoly, f: &UniPoly, c: &Rational) -> UniPoly {
    let n = m.deg() * f.deg();
    let xs: Vec<Rational> = (0..=n).map(|i| rational::int(i as i64)).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|z| {
            let lin = UniPoly::new(vec![z.clone(), -c.clone()]);
            resultant(m, &f.compose(&lin))
        })
        .collect();
    interpolate(&xs, &ys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn sqrt2() -> Field {
        Field::from_algebraic(AlgebraicNumber::new(UniPoly::from_ints(&[-2, 0, 1]), int(1), int(2)).unwrap())
    }

    #[test]
    fn inverse_and_sign() {
        let k = sqrt2();
        let a = UniPoly::from_ints(&[1, 1]); // 1 + √2
        let inv = k.inv(&a).unwrap();
        assert_eq!(k.mul(&a, &inv), UniPoly::one());
        assert_eq!(k.sign(&UniPoly::from_ints(&[-1, 1])), 1);
        assert_eq!(k.sign(&UniPoly::from_ints(&[3, -2])), 1); // 3 − 2√2 > 0
        assert_eq!(k.sign(&UniPoly::from_ints(&[-3, 2])), -1);
    }

    #[test]
    fn norm_and_sturm_over_k() {
        let k = sqrt2();
        // x^2 − √2: norm x^4 − 2, two real roots, both roots of g in this embedding
        let g: KPoly = vec![UniPoly::from_ints(&[0, -1]), UniPoly::zero(), UniPoly::one()];
        assert_eq!(norm(&k, &g), UniPoly::from_ints(&[-2, 0, 0, 0, 1]));
        let s = KSturm::new(&k, &g);
        assert_eq!(s.count(&k, &int(-2), &int(2)), 2);
        assert_eq!(s.count(&k, &int(0), &int(2)), 1);
        // conjugate embedding θ = −√2: x^2 + √2 has no real roots
        let c = Field::from_algebraic(AlgebraicNumber::new(UniPoly::from_ints(&[-2, 0, 1]), int(-2), int(-1)).unwrap());
        assert_eq!(KSturm::new(&c, &g).count(&c, &int(-2), &int(2)), 0);
    }

    #[test]
    fn shifted_resultant_is_sum_field_polynomial() {
        // m = t^2 − 2, f = z^2 − 3: roots ±√3 + c·(±√2)
        let r = shifted_resultant(&UniPoly::from_ints(&[-2, 0, 1]), &UniPoly::from_ints(&[-3, 0, 1]), &int(1));
        assert_eq!(r, UniPoly::from_ints(&[1, 0, -10, 0, 1]));
        let coeffs = shifted_in_t(&UniPoly::from_ints(&[-3, 0, 1]), &int(1));
        // (z − t)^2 − 3 = (z^2 − 3) − 2z t + t^2
        assert_eq!(coeffs, vec![UniPoly::from_ints(&[-3, 0, 1]), UniPoly::from_ints(&[0, -2]), UniPoly::one()]);
    }
}
