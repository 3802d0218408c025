//! Sparse multivariate polynomials over Q in a fixed number of variables.
//!
//! Variables are addressed by index; names live with the formulas and parsers
//! that own them. Terms are kept in graded lexicographic order with variable 0
//! most significant.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{self, Rational};
use crate::unipoly::UniPoly;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::from_terms(nvars, [(e, Rational::one())])
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.total_degree() == 0)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.0[v]).max().unwrap_or(0)
    }

    /// Largest variable index occurring, `None` for constants.
    pub fn max_var(&self) -> Option<usize> {
        (0..self.nvars).rev().find(|&v| self.degree_in(v) > 0)
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.degree_in(v) > 0
    }

    /// Leading term in graded lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars, "evaluation point dimension");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= x.pow(e as i32);
                }
            }
            acc += t;
        }
        acc
    }

    /// Coefficients with respect to variable `v`: `self = sum_i c_i * x_v^i`.
    pub fn coeffs_in(&self, v: usize) -> Vec<MultiPoly> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![MultiPoly::zero(self.nvars); if self.is_zero() { 0 } else { d + 1 }];
        for (m, c) in &self.terms {
            let i = m.0[v] as usize;
            let mut e = m.0.clone();
            e[v] = 0;
            out[i].add_term(Monomial(e), c.clone());
        }
        out
    }

    pub fn from_coeffs_in(v: usize, nvars: usize, coeffs: &[MultiPoly]) -> Self {
        let mut p = Self::zero(nvars);
        for (i, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                debug_assert_eq!(m.0[v], 0);
                let mut e = m.0.clone();
                e[v] += i as u32;
                p.add_term(Monomial(e), a.clone());
            }
        }
        p
    }

    /// Leading coefficient with respect to `v`.
    pub fn lc_in(&self, v: usize) -> MultiPoly {
        self.coeffs_in(v).pop().unwrap_or_else(|| MultiPoly::zero(self.nvars))
    }

    pub fn derivative(&self, v: usize) -> Self {
        let mut p = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.0[v] > 0 {
                let mut e = m.0.clone();
                e[v] -= 1;
                p.add_term(Monomial(e), c * rational::int(m.0[v] as i64));
            }
        }
        p
    }

    /// Replaces `x_v` by `h`; the result keeps the same variable count.
    pub fn substitute(&self, v: usize, h: &MultiPoly) -> Self {
        let coeffs = self.coeffs_in(v);
        let mut acc = MultiPoly::zero(self.nvars);
        for c in coeffs.iter().rev() {
            acc = &(&acc * h) + c;
        }
        acc
    }

    /// Fixes `x_v = value`.
    pub fn substitute_value(&self, v: usize, value: &Rational) -> Self {
        self.substitute(v, &MultiPoly::constant(self.nvars, value.clone()))
    }

    /// Drops variable `v`, which must not occur.
    pub fn remove_var(&self, v: usize) -> Self {
        assert!(!self.uses_var(v), "remove_var on a variable in use");
        let mut p = Self::zero(self.nvars - 1);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.remove(v);
            p.terms.insert(Monomial(e), c.clone());
        }
        p
    }

    /// Inserts a fresh unused variable at index `v`.
    pub fn insert_var(&self, v: usize) -> Self {
        let mut p = Self::zero(self.nvars + 1);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.insert(v, 0);
            p.terms.insert(Monomial(e), c.clone());
        }
        p
    }

    /// Reinterprets the polynomial in `nvars >= self.nvars` variables,
    /// appending unused ones.
    pub fn extend_vars(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        let mut p = Self::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.resize(nvars, 0);
            p.terms.insert(Monomial(e), c.clone());
        }
        p
    }

    /// Renames variables: old variable `i` becomes `map[i]` in a ring of
    /// `nvars` variables.
    pub fn remap_vars(&self, map: &[usize], nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] += x;
            }
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    /// Univariate view when only variable `v` occurs.
    pub fn to_univariate(&self, v: usize) -> Option<UniPoly> {
        let cs = self.coeffs_in(v);
        let mut out = Vec::with_capacity(cs.len());
        for c in cs {
            out.push(c.constant_value()?);
        }
        Some(UniPoly::new(out))
    }

    pub fn from_univariate(p: &UniPoly, v: usize, nvars: usize) -> Self {
        let mut out = Self::zero(nvars);
        for (i, c) in p.coeffs().iter().enumerate() {
            let mut e = vec![0; nvars];
            e[v] = i as u32;
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// `(content, primitive)` with `self = content * primitive`, the primitive
    /// part having coprime integer coefficients. The content is positive, so
    /// signs are preserved.
    pub fn primitive_positive_scaling(&self) -> (Rational, MultiPoly) {
        if self.is_zero() {
            return (Rational::one(), self.clone());
        }
        let l = rational::lcm_denominators(self.terms.values());
        let g = self
            .terms
            .values()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .fold(BigInt::zero(), |acc, c| acc.gcd(&c));
        let content = Rational::new(g, l);
        (content.clone(), self.scale(&content.recip()))
    }

    /// Integer primitive with positive leading coefficient in graded lex order;
    /// the canonical representative up to a nonzero rational factor.
    pub fn normalized(&self) -> MultiPoly {
        let (_, p) = self.primitive_positive_scaling();
        match p.leading_term() {
            Some((_, c)) if c.is_negative() => -&p,
            _ => p,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (dm, dc) = d.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            if !dm.divides(&m) {
                return None;
            }
            let qm = m.div(&dm);
            let qc = c / &dc;
            for (dm2, dc2) in d.terms() {
                let prod = Monomial(qm.0.iter().zip(&dm2.0).map(|(a, b)| a + b).collect());
                rem.add_term(prod, -(&qc * dc2));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Pseudo-remainder of `self` by `d` with respect to variable `v`.
    pub fn prem(&self, d: &MultiPoly, v: usize) -> MultiPoly {
        self.prem_with(d, v, &mut Fuel::unlimited()).expect("unlimited fuel")
    }

    fn prem_with(&self, d: &MultiPoly, v: usize, fuel: &mut Fuel) -> Option<MultiPoly> {
        let dd = d.degree_in(v);
        let lc = d.lc_in(v);
        let mut r = self.clone();
        let xv = MultiPoly::var(self.nvars, v);
        while !r.is_zero() && r.degree_in(v) >= dd {
            let dr = r.degree_in(v);
            let lr = r.lc_in(v);
            fuel.burn(mul_cost(&r, &lc) + mul_cost(&lr, d))?;
            let shift = xv.pow(dr - dd);
            r = &(&r * &lc) - &(&(&lr * &shift) * d);
        }
        Some(r)
    }

    /// Gcd of the coefficients with respect to `v`.
    pub fn content_in(&self, v: usize) -> MultiPoly {
        self.content_in_with(v, &mut Fuel::unlimited()).expect("unlimited fuel")
    }

    pub(crate) fn content_in_with(&self, v: usize, fuel: &mut Fuel) -> Option<MultiPoly> {
        let mut g = MultiPoly::zero(self.nvars);
        for c in self.coeffs_in(v) {
            if c.is_zero() {
                continue;
            }
            g = gcd_with(&g, &c, fuel)?;
            if g.is_constant() {
                break;
            }
        }
        Some(g)
    }

    /// Squarefree part (normalized).
    pub fn squarefree_part(&self) -> MultiPoly {
        self.squarefree_part_with(&mut Fuel::unlimited()).expect("unlimited fuel")
    }

    pub(crate) fn squarefree_part_with(&self, fuel: &mut Fuel) -> Option<MultiPoly> {
        let Some(v) = self.max_var() else {
            return Some(self.normalized());
        };
        // split off the content in the main variable, then the primitive part
        // has no factor free of v
        let c = self.content_in_with(v, fuel)?;
        let pp = fuel.div(self, &c)?;
        let g = gcd_with(&pp, &pp.derivative(v), fuel)?;
        let pp = fuel.div(&pp, &g)?;
        Some((&c.squarefree_part_with(fuel)? * &pp).normalized())
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{}", names[i], e)
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&rational::to_string(&a));
            } else {
                if !a.is_one() {
                    out.push_str(&rational::to_string(&a));
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }

    /// Default names `x0, x1, ...`.
    pub fn default_names(nvars: usize) -> Vec<String> {
        (0..nvars).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&Self::default_names(self.nvars)))
    }
}

fn words(p: &MultiPoly) -> usize {
    p.terms.values().map(|c| rational::bit_length(c) as usize / 64 + 1).max().unwrap_or(1)
}

/// Rough cost of `a * b` in machine-word multiplications.
pub(crate) fn mul_cost(a: &MultiPoly, b: &MultiPoly) -> usize {
    a.num_terms().saturating_mul(b.num_terms()).saturating_mul(words(a) * words(b))
}

/// Allowance of word multiplications for the gcd family, so callers with a
/// budget can give up instead of running unboundedly.
#[derive(Debug)]
pub(crate) struct Fuel(u64);

impl Fuel {
    pub(crate) fn new(n: u64) -> Self {
        Fuel(n)
    }

    pub(crate) fn unlimited() -> Self {
        Fuel(u64::MAX)
    }

    pub(crate) fn burn(&mut self, n: usize) -> Option<()> {
        self.0 = self.0.saturating_sub(n as u64);
        (self.0 > 0).then_some(())
    }

    // exact division, charged after the fact
    pub(crate) fn div(&mut self, a: &MultiPoly, d: &MultiPoly) -> Option<MultiPoly> {
        self.burn(mul_cost(a, d))?;
        let q = a.div_exact(d).expect("divisor divides");
        Some(q)
    }
}

/// Gcd over Q, normalized (integer primitive, positive leading coefficient).
/// `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    gcd_with(a, b, &mut Fuel::unlimited()).expect("unlimited fuel")
}

pub(crate) fn gcd_with(a: &MultiPoly, b: &MultiPoly, fuel: &mut Fuel) -> Option<MultiPoly> {
    let n = a.nvars;
    if a.is_zero() {
        return Some(b.normalized());
    }
    if b.is_zero() {
        return Some(a.normalized());
    }
    if a.is_constant() || b.is_constant() {
        return Some(MultiPoly::one(n));
    }
    fuel.burn(mul_cost(a, b))?;
    if (0..n).filter(|&u| a.uses_var(u) && b.uses_var(u)).all(|u| gcd_free_of(a, b, u)) {
        return Some(MultiPoly::one(n));
    }
    let va = a.max_var().unwrap();
    let vb = b.max_var().unwrap();
    let v = va.max(vb);
    if va == vb && gcd_free_of(a, b, v) {
        return gcd_with(&a.content_in_with(v, fuel)?, &b.content_in_with(v, fuel)?, fuel);
    }
    if va != vb {
        // one side is free of v: the gcd divides every coefficient of the other
        let (with_v, without) = if va > vb { (a, b) } else { (b, a) };
        return gcd_with(&with_v.content_in_with(v, fuel)?, without, fuel);
    }
    let ca = a.content_in_with(v, fuel)?;
    let cb = b.content_in_with(v, fuel)?;
    let content = gcd_with(&ca, &cb, fuel)?;
    let mut p = fuel.div(a, &ca)?;
    let mut q = fuel.div(b, &cb)?;
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    // primitive PRS
    while !q.is_zero() {
        let r = p.prem_with(&q, v, fuel)?;
        p = q;
        q = if r.is_zero() {
            r
        } else if !r.uses_var(v) {
            // nonzero remainder free of v: primitive parts are coprime
            return Some(content.normalized());
        } else {
            let c = r.content_in_with(v, fuel)?;
            fuel.div(&r, &c)?.normalized()
        };
    }
    Some((&content * &p).normalized())
}

const GCD_PRIME: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % GCD_PRIME as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn to_mod(c: &BigInt) -> u64 {
    let m = BigInt::from(GCD_PRIME);
    c.mod_floor(&m).to_u64_digits().1.first().copied().unwrap_or(0)
}

// Image of the integer polynomial `p` in F_p[x_u], other variables at `point`.
fn image_mod(p: &MultiPoly, u: usize, point: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; p.degree_in(u) as usize + 1];
    for (m, c) in p.terms() {
        let mut x = to_mod(c.numer());
        for (i, &e) in m.0.iter().enumerate() {
            if i != u && e > 0 {
                x = mulmod(x, powmod(point[i], e as u64));
            }
        }
        let slot = &mut out[m.0[u] as usize];
        *slot = (*slot + x) % GCD_PRIME;
    }
    out
}

fn trim_mod(p: &mut Vec<u64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

// Degree of the gcd in F_p[x]; both inputs nonzero.
fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    trim_mod(&mut a);
    trim_mod(&mut b);
    while !b.is_empty() {
        let inv = powmod(*b.last().unwrap(), GCD_PRIME - 2);
        while a.len() >= b.len() {
            let f = mulmod(*a.last().unwrap(), inv);
            let shift = a.len() - b.len();
            for (i, &bi) in b.iter().enumerate() {
                a[shift + i] = (a[shift + i] + GCD_PRIME - mulmod(f, bi)) % GCD_PRIME;
            }
            trim_mod(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Sound test that `gcd(a, b)` does not involve `x_u`, working modulo a prime
/// at a point where both leading coefficients in `x_u` survive: there the
/// image of the gcd divides both images with its degree intact. `false`
/// means "unknown".
fn gcd_free_of(a: &MultiPoly, b: &MultiPoly, u: usize) -> bool {
    let (_, a) = a.primitive_positive_scaling();
    let (_, b) = b.primitive_positive_scaling();
    let n = a.nvars;
    for shift in 0..3u64 {
        let point: Vec<u64> = (0..n as u64).map(|i| (1_000_003 * (i + 1) + 7919 * shift * shift + 17) % GCD_PRIME).collect();
        let (ia, ib) = (image_mod(&a, u, &point), image_mod(&b, u, &point));
        if ia.last() == Some(&0) || ib.last() == Some(&0) {
            continue;
        }
        return gcd_degree_mod(ia, ib) == 0;
    }
    false
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = MultiPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use proptest::prelude::*;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    fn c(n: usize, v: i64) -> MultiPoly {
        MultiPoly::constant(n, int(v))
    }

    #[test]
    fn graded_lex_leading_term() {
        let p = &(&x(2, 0) * &x(2, 1)) + &x(2, 0).pow(2);
        // x0^2 and x0*x1 have degree 2; x0^2 is lex-larger
        assert_eq!(p.leading_term().unwrap().0, &Monomial(vec![2, 0]));
    }

    #[test]
    fn exact_division_and_gcd() {
        let a = &x(2, 0) + &x(2, 1);
        let b = &x(2, 0) - &x(2, 1);
        let ab = &a * &b;
        assert_eq!(ab.div_exact(&a), Some(b.clone()));
        assert_eq!(ab.div_exact(&(&a + &c(2, 1))), None);
        let g = gcd(&(&ab * &a), &(&a * &a));
        assert_eq!(g, (&a * &a).normalized());
        assert_eq!(gcd(&a, &b), MultiPoly::one(2));
    }

    #[test]
    fn gcd_with_contents() {
        // (y+1)(x - y) and (y+1)(x + 2)
        let y1 = &x(2, 1) + &c(2, 1);
        let f = &y1 * &(&x(2, 0) - &x(2, 1));
        let g = &y1 * &(&x(2, 0) + &c(2, 2));
        assert_eq!(gcd(&f, &g), y1.normalized());
        let h = f.scale(&frac(-3, 2));
        assert_eq!(gcd(&h, &f), f.normalized());
    }

    #[test]
    fn squarefree_part_removes_powers() {
        let a = &x(2, 0) - &x(2, 1);
        let p = &(&a * &a) * &x(2, 0);
        assert_eq!(p.squarefree_part(), (&a * &x(2, 0)).normalized());
    }

    #[test]
    fn substitution_and_coefficient_views() {
        let p = &x(2, 0).pow(2) + &(&x(2, 0) * &x(2, 1));
        let s = p.substitute(0, &(&x(2, 1) + &c(2, 1)));
        let expected = &(&x(2, 1) + &c(2, 1)).pow(2) + &(&(&x(2, 1) + &c(2, 1)) * &x(2, 1));
        assert_eq!(s, expected);
        let cs = p.coeffs_in(0);
        assert_eq!(MultiPoly::from_coeffs_in(0, 2, &cs), p);
        assert_eq!(p.lc_in(1), x(2, 0));
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(((0u32..3, 0u32..3), -5i64..6), 0..5).prop_map(|ts| {
            MultiPoly::from_terms(2, ts.into_iter().map(|((a, b), c)| (vec![a, b], int(c))))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
            if !p.is_zero() && !q.is_zero() {
                prop_assert_eq!((&p * &q).total_degree(), p.total_degree() + q.total_degree());
            }
        }

        #[test]
        fn product_divides_exactly(p in arb_poly(), q in arb_poly()) {
            prop_assume!(!q.is_zero());
            prop_assert_eq!((&p * &q).div_exact(&q), Some(p));
        }
    }
}
