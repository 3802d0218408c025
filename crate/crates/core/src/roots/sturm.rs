use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::unipoly::UniPoly;

/// Signed remainder sequence `p, p', -rem(p, p'), …`, each term scaled by a
/// positive constant.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    seq: Vec<UniPoly>,
}

impl SturmSequence {
    pub fn new(p: &UniPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::UndefinedInput("Sturm sequence of the zero polynomial"));
        }
        let mut seq = vec![normalize(p), normalize(&p.derivative())];
        if seq[1].is_zero() {
            seq.pop();
        }
        while seq.len() >= 2 {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(normalize(&-&r));
        }
        Ok(SturmSequence { seq })
    }

    fn variations(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        Self::variations(self.seq.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::variations(self.seq.iter().map(UniPoly::sign_at_pos_inf))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        Self::variations(self.seq.iter().map(UniPoly::sign_at_neg_inf))
    }

    /// Distinct real roots in `(a, b]`, assuming `p(a) != 0`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// Distinct real roots on the whole line.
    pub fn count_all(&self) -> usize {
        self.variations_at_neg_inf().saturating_sub(self.variations_at_pos_inf())
    }

    pub fn poly(&self) -> &UniPoly {
        &self.seq[0]
    }
}

fn normalize(p: &UniPoly) -> UniPoly {
    if p.is_zero() {
        return p.clone();
    }
    let (c, _) = p.primitive_integer();
    p.scale(&c.abs().recip())
}

/// Number of distinct real roots of `p` in `(a, b]`.
pub fn sturm_count(p: &UniPoly, a: &Rational, b: &Rational) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::UndefinedInput("sturm_count of the zero polynomial"));
    }
    if a >= b {
        return Err(Error::InvariantViolation("sturm_count needs a < b".into()));
    }
    if p.eval(a).is_zero() {
        return Err(Error::InvariantViolation("sturm_count needs p(a) != 0".into()));
    }
    Ok(SturmSequence::new(p)?.count(a, b))
}

/// A closed interval with rational endpoints isolating one real root.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rational::int(2)
    }
}

/// Sorted, pairwise disjoint isolating intervals for the distinct real roots.
/// A root that is hit exactly during bisection is reported as a point
/// interval; every other interval has endpoints that are not roots.
pub fn isolate_real_roots(p: &UniPoly) -> Result<Vec<Interval>> {
    if p.is_zero() {
        return Err(Error::UndefinedInput("isolate_real_roots of the zero polynomial"));
    }
    let sf = p.squarefree_part();
    if sf.deg() == 0 {
        return Ok(Vec::new());
    }
    let sturm = SturmSequence::new(&sf)?;
    let b = sf.cauchy_bound();
    let lo = -b.clone();
    let total = sturm.count_all();
    let mut out = Vec::with_capacity(total);
    bisect(&sf, &sturm, lo, b, total, &mut out);
    // separate neighbours that share an endpoint
    for i in 1..out.len() {
        while out[i - 1].hi >= out[i].lo {
            out[i - 1] = refine_once(&sf, &out[i - 1]);
            out[i] = refine_once(&sf, &out[i]);
        }
    }
    Ok(out)
}

// `lo`, `hi` are not roots; `count` roots lie strictly between them.
fn bisect(p: &UniPoly, s: &SturmSequence, lo: Rational, hi: Rational, count: usize, out: &mut Vec<Interval>) {
    if count == 0 {
        return;
    }
    if count == 1 {
        out.push(Interval::new(lo, hi));
        return;
    }
    let mid = (&lo + &hi) / rational::int(2);
    if p.eval(&mid).is_zero() {
        // isolate the exact root from both sides
        let mut eps = (&hi - &lo) / rational::int(4);
        loop {
            let (l, r) = (&mid - &eps, &mid + &eps);
            if !p.eval(&l).is_zero() && !p.eval(&r).is_zero() && s.count(&l, &r) == 1 {
                let left = s.count(&lo, &l);
                bisect(p, s, lo, l, left, out);
                out.push(Interval::point(mid));
                let right = count - left - 1;
                bisect(p, s, r, hi, right, out);
                return;
            }
            eps /= rational::int(2);
        }
    }
    let left = s.count(&lo, &mid);
    bisect(p, s, lo, mid.clone(), left, out);
    bisect(p, s, mid, hi, count - left, out);
}

/// Halves an isolating interval of a root of the squarefree `p`, collapsing
/// onto the root if the midpoint hits it.
pub fn refine_once(p: &UniPoly, iv: &Interval) -> Interval {
    if iv.is_point() {
        return iv.clone();
    }
    let mid = iv.midpoint();
    let sm = p.sign_at(&mid);
    if sm == 0 {
        return Interval::point(mid);
    }
    let sl = p.sign_at(&iv.lo);
    if sl == 0 {
        // root at the left endpoint
        return Interval::point(iv.lo.clone());
    }
    if sl != sm {
        Interval::new(iv.lo.clone(), mid)
    } else {
        Interval::new(mid, iv.hi.clone())
    }
}

/// Refines until the width is below `width`.
pub fn refine_to(p: &UniPoly, iv: &Interval, width: &Rational) -> Interval {
    let mut iv = iv.clone();
    while !iv.is_point() && &iv.width() >= width {
        iv = refine_once(p, &iv);
    }
    iv
}
