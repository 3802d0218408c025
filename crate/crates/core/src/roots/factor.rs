//! Factorization over Q: Yun's squarefree decomposition, then Zassenhaus
//! (factor modulo a small prime, quadratic Hensel lifting, subset
//! recombination).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::unipoly::UniPoly;

/// `p = unit · Π factorᵢ^multiplicityᵢ`; factors are primitive integer
/// polynomials with positive leading coefficient, irreducible over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<(UniPoly, u32)>,
}

impl Factorization {
    pub fn recompose(&self) -> UniPoly {
        self.factors
            .iter()
            .fold(UniPoly::constant(self.unit.clone()), |acc, (f, m)| &acc * &f.pow(*m))
    }
}

/// Squarefree decomposition `p = c · Π gᵢ^i` with monic, pairwise coprime `gᵢ`.
pub fn squarefree_decomposition(p: &UniPoly) -> Vec<(UniPoly, u32)> {
    let mut out = Vec::new();
    if p.deg() == 0 {
        return out;
    }
    let a = p.monic();
    let b = a.derivative();
    let c = a.gcd(&b);
    let mut w = a.exact_div(&c);
    let mut y = b.exact_div(&c);
    let mut z = &y - &w.derivative();
    let mut i = 1;
    while w.deg() > 0 {
        let g = w.gcd(&z);
        if g.deg() > 0 {
            out.push((g.clone(), i));
        }
        w = w.exact_div(&g);
        y = z.exact_div(&g);
        z = &y - &w.derivative();
        i += 1;
    }
    out
}

pub fn factor_over_q(p: &UniPoly) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::UndefinedInput("factor_over_Q of the zero polynomial"));
    }
    let mut factors = Vec::new();
    for (g, m) in squarefree_decomposition(p) {
        let (_, prim) = g.primitive_integer();
        for f in zassenhaus(&prim) {
            factors.push((UniPoly::from_bigints(&f), m));
        }
    }
    factors.sort_by(|(a, ma), (b, mb)| {
        a.deg()
            .cmp(&b.deg())
            .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
            .then(ma.cmp(mb))
    });
    let prod = factors.iter().fold(UniPoly::one(), |acc, (f, m)| &acc * &f.pow(*m));
    let unit = p.lc() / prod.lc();
    Ok(Factorization { unit, factors })
}

/// Irreducible factors of a squarefree primitive integer polynomial.
fn zassenhaus(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    // pull out x
    if f[0].is_zero() {
        let mut rest = zassenhaus(&f[1..]);
        rest.push(vec![BigInt::zero(), BigInt::one()]);
        return rest;
    }
    let (p, modular) = choose_prime(f);
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    let lc = f[n].clone();
    let bound = factor_coefficient_bound(f);
    let target = BigInt::from(2) * &bound * lc.abs() + BigInt::one();
    let mut modulus = BigInt::from(p);
    let mut steps = 0;
    while modulus < target {
        modulus = &modulus * &modulus;
        steps += 1;
    }
    let lifted = multifactor_lift(f, &modular, p, steps);
    recombine(f, lifted, &modulus)
}

// Landau-Mignotte style bound on coefficients of any integer factor.
fn factor_coefficient_bound(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + BigInt::one();
    (BigInt::one() << n) * norm
}

fn choose_prime(f: &[BigInt]) -> (u64, Vec<Vec<u64>>) {
    let n = f.len() - 1;
    let mut best: Option<(u64, Vec<Vec<u64>>)> = None;
    let mut tried = 0;
    let mut p = 3u64;
    while tried < 5 {
        p = next_prime(p + 1);
        let fp = reduce(f, p);
        if fp.len() != n + 1 {
            continue; // p divides the leading coefficient
        }
        let d = derivative(&fp, p);
        if poly_gcd(&fp, &d, p).len() != 1 {
            continue;
        }
        tried += 1;
        let facs = factor_mod_p(&fp, p);
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        if best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    best.expect("some prime works")
}

fn next_prime(mut n: u64) -> u64 {
    loop {
        if is_prime(n) {
            return n;
        }
        n += 1;
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// ---------- arithmetic in F_p[x], ascending coefficients, trimmed ----------

type Fp = Vec<u64>;

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn reduce(f: &[BigInt], p: u64) -> Fp {
    let pb = BigInt::from(p);
    trim(f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

fn mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), a.clone());
    }
    let inv = inv_mod(*b.last().unwrap(), p);
    let mut r = a.clone();
    let mut q = vec![0u64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db] * inv % p;
        q[i] = c;
        if c != 0 {
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + p - c * y % p) % p;
            }
        }
    }
    r.truncate(db);
    (trim(q), trim(r))
}

fn monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let inv = inv_mod(l, p);
            a.iter().map(|&c| c * inv % p).collect()
        }
    }
}

fn poly_gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = divrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    monic(&a, p)
}

fn derivative(a: &Fp, p: u64) -> Fp {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % p) * c % p).collect())
}

fn powmod_poly(base: &Fp, e: &BigUint, m: &Fp, p: u64) -> Fp {
    let mut acc: Fp = vec![1];
    let base = divrem(base, m, p).1;
    for i in (0..e.bits()).rev() {
        acc = divrem(&mul(&acc, &acc, p), m, p).1;
        if e.bit(i) {
            acc = divrem(&mul(&acc, &base, p), m, p).1;
        }
    }
    acc
}

/// Monic irreducible factors of a squarefree polynomial modulo an odd prime.
fn factor_mod_p(f: &Fp, p: u64) -> Vec<Fp> {
    let f = monic(f, p);
    let mut out = Vec::new();
    // distinct-degree factorization
    let mut rest = f.clone();
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let mut d = 1;
    let pb = BigUint::from(p);
    while rest.len() > 2 * d {
        h = powmod_poly(&h, &pb, &rest, p);
        let g = poly_gcd(&rest, &sub(&h, &x, p), p);
        if g.len() > 1 {
            equal_degree_split(&g, d, p, &mut out);
            rest = divrem(&rest, &g, p).0;
            h = divrem(&h, &rest, p).1;
        }
        d += 1;
    }
    if rest.len() > 1 {
        out.push(monic(&rest, p));
    }
    out.sort();
    out
}

fn equal_degree_split(g: &Fp, d: usize, p: u64, out: &mut Vec<Fp>) {
    let n = g.len() - 1;
    if n == d {
        out.push(g.clone());
        return;
    }
    let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    let mut seed = 0x9e37_79b9_7f4a_7c15u64 ^ (n as u64) ^ (p << 17);
    loop {
        let a: Fp = trim(
            (0..n)
                .map(|_| {
                    seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    (seed >> 33) % p
                })
                .collect(),
        );
        if a.len() < 2 {
            continue;
        }
        let b = sub(&powmod_poly(&a, &e, g, p), &vec![1], p);
        let h = poly_gcd(g, &b, p);
        if h.len() > 1 && h.len() < g.len() {
            let other = divrem(g, &h, p).0;
            equal_degree_split(&h, d, p, out);
            equal_degree_split(&monic(&other, p), d, p, out);
            return;
        }
    }
}

// ---------- Hensel lifting over Z / m ----------

type Zp = Vec<BigInt>;

fn zp_trim(mut a: Zp) -> Zp {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn zp_mod(a: &[BigInt], m: &BigInt) -> Zp {
    zp_trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zp_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Zp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zp_mod(&out, m)
}

fn zp_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Zp {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zp_mod(&(0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect::<Vec<_>>(), m)
}

fn zp_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Zp {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zp_mod(&(0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect::<Vec<_>>(), m)
}

// division by a monic polynomial modulo m
fn zp_divrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Zp, Zp) {
    let db = b.len() - 1;
    let mut r = zp_mod(a, m);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].clone();
        if !c.is_zero() {
            for (j, y) in b.iter().enumerate() {
                r[i + j] = (&r[i + j] - &c * y).mod_floor(m);
            }
        }
        q[i] = c;
    }
    r.truncate(db);
    (zp_trim(q), zp_trim(r))
}

fn fp_to_zp(a: &Fp) -> Zp {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

// Extended gcd in F_p[x] for coprime a, b: s*a + t*b = 1.
fn fp_bezout(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (Fp, Fp) = (vec![1], Vec::new());
    let (mut t0, mut t1): (Fp, Fp) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        let t = sub(&t0, &mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = inv_mod(*r0.last().expect("coprime inputs"), p);
    let sc = |v: &Fp| trim(v.iter().map(|&c| c * inv % p).collect());
    (sc(&s0), sc(&t0))
}

/// Lifts `f ≡ g·h (mod m)` (h monic, `s·g + t·h ≡ 1`) to modulus `m²`.
#[allow(clippy::too_many_arguments)]
fn hensel_step(f: &[BigInt], g: &Zp, h: &Zp, s: &Zp, t: &Zp, m: &BigInt) -> (Zp, Zp, Zp, Zp) {
    let m2 = m * m;
    let e = zp_sub(f, &zp_mul(g, h, &m2), &m2);
    let (q, r) = zp_divrem_monic(&zp_mul(s, &e, &m2), h, &m2);
    let g2 = zp_add(&zp_add(g, &zp_mul(t, &e, &m2), &m2), &zp_mul(&q, g, &m2), &m2);
    let h2 = zp_add(h, &r, &m2);
    let b = zp_sub(&zp_add(&zp_mul(s, &g2, &m2), &zp_mul(t, &h2, &m2), &m2), &[BigInt::one()], &m2);
    let (c, d) = zp_divrem_monic(&zp_mul(s, &b, &m2), &h2, &m2);
    let s2 = zp_sub(s, &d, &m2);
    let t2 = zp_sub(&zp_sub(t, &zp_mul(t, &b, &m2), &m2), &zp_mul(&c, &g2, &m2), &m2);
    (g2, h2, s2, t2)
}

/// Lifts the monic modular factors of `f` to modulus `p^(2^steps)`; returns
/// monic lifted factors.
fn multifactor_lift(f: &[BigInt], factors: &[Fp], p: u64, steps: u32) -> Vec<Zp> {
    if factors.len() == 1 {
        let mut m = BigInt::from(p);
        for _ in 0..steps {
            m = &m * &m;
        }
        let lc = f.last().unwrap().clone();
        let inv = lc.modinv(&m).expect("lc invertible modulo p^k");
        return vec![zp_mod(&f.iter().map(|c| c * &inv).collect::<Vec<_>>(), &m)];
    }
    let half = factors.len() / 2;
    let (left, right) = factors.split_at(half);
    let lc_p = (f.last().unwrap().mod_floor(&BigInt::from(p))).to_u64().unwrap();
    let g0 = left.iter().fold(vec![lc_p], |acc, x| mul(&acc, x, p));
    let h0 = right.iter().fold(vec![1u64], |acc, x| mul(&acc, x, p));
    let (s0, t0) = fp_bezout(&g0, &h0, p);
    let (mut g, mut h, mut s, mut t) = (fp_to_zp(&g0), fp_to_zp(&h0), fp_to_zp(&s0), fp_to_zp(&t0));
    let mut m = BigInt::from(p);
    for _ in 0..steps {
        (g, h, s, t) = hensel_step(f, &g, &h, &s, &t, &m);
        m = &m * &m;
    }
    let mut out = multifactor_lift(&g, left, p, steps);
    out.extend(multifactor_lift(&h, right, p, steps));
    out
}

fn symmetric(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half: BigInt = m / 2;
    a.iter()
        .map(|c| {
            let c = c.mod_floor(m);
            if c > half {
                c - m
            } else {
                c
            }
        })
        .collect()
}

fn primitive_int(a: &[BigInt]) -> Vec<BigInt> {
    let g = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if a.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
    a.iter().map(|c| c / &g * &sign).collect()
}

fn int_divides(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    let (q, r) = UniPoly::from_bigints(f).div_rem(&UniPoly::from_bigints(g));
    if !r.is_zero() || !q.is_integral() {
        return None;
    }
    Some(q.coeffs().iter().map(|c| c.to_integer()).collect())
}

fn recombine(f: &[BigInt], mut lifted: Vec<Zp>, m: &BigInt) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = false;
        for subset in subsets(lifted.len(), size) {
            let lc = f.last().unwrap().clone();
            let prod = subset.iter().fold(vec![lc.clone()], |acc, &i| zp_mul(&acc, &lifted[i], m));
            let cand = primitive_int(&symmetric(&prod, m));
            if let Some(q) = int_divides(&f, &cand) {
                out.push(cand);
                f = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    out.push(primitive_int(&f));
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}
