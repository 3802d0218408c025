//! Cylindrical algebraic decomposition: cells, samples, and one-level
//! lifting.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::field::{kp_deg, kp_eval, kp_gcd, kp_trim, norm, shifted_in_t, shifted_resultant, Field, KPoly, KSturm};
use super::projection::Projection;
use super::Budget;
use crate::error::{Error, Result};
use crate::formula::Node;
use crate::multipoly::MultiPoly;
use crate::rational::{self, Rational};
use crate::roots::{factor_over_q, isolate_real_roots, refine_once, AlgebraicNumber, Interval, SturmSequence};
use crate::unipoly::UniPoly;

/// A point whose coordinates are polynomials in the primitive element of
/// `field`.
#[derive(Clone, Debug)]
pub(crate) struct Sample {
    pub field: Arc<Field>,
    pub coords: Vec<UniPoly>,
}

impl Sample {
    pub fn origin() -> Self {
        Sample { field: Arc::new(Field::rational(Rational::zero())), coords: Vec::new() }
    }

    pub fn level(&self) -> usize {
        self.coords.len()
    }

    pub fn rational_coords(&self) -> Option<Vec<Rational>> {
        self.coords.iter().map(|c| (c.degree().is_none_or(|d| d == 0)).then(|| c.coeff(0))).collect()
    }

    /// Value of `p`, which may only use variables below `level()`.
    pub fn eval(&self, p: &MultiPoly) -> UniPoly {
        if let Some(mut q) = self.rational_coords() {
            q.resize(p.nvars().max(q.len()), Rational::zero());
            return UniPoly::constant(p.eval(&q[..p.nvars()]));
        }
        let k = &self.field;
        let mut powers: Vec<Vec<UniPoly>> = self.coords.iter().map(|c| vec![UniPoly::one(), c.clone()]).collect();
        let mut acc = UniPoly::zero();
        for (m, c) in p.terms() {
            let mut t = UniPoly::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                let pw = &mut powers[i];
                while pw.len() <= e {
                    let next = k.mul(pw.last().unwrap(), &pw[1]);
                    pw.push(next);
                }
                t = k.mul(&t, &pw[e]);
            }
            acc = &acc + &t;
        }
        acc
    }

    pub fn sign(&self, p: &MultiPoly) -> i8 {
        self.field.sign(&self.eval(p))
    }

    /// `p` as a polynomial in variable `level()` over the sample's field.
    pub fn specialize(&self, p: &MultiPoly) -> KPoly {
        kp_trim(p.coeffs_in(self.level()).iter().map(|c| self.eval(c)).collect())
    }

    pub fn pushed(&self, field: Arc<Field>, coord: UniPoly) -> Sample {
        let mut coords = self.coords.clone();
        coords.push(coord);
        Sample { field, coords }
    }

    /// Completes the sample with zeros up to `n` coordinates.
    pub fn padded(&self, n: usize) -> Sample {
        let mut s = self.clone();
        s.coords.resize(n, UniPoly::zero());
        s
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Cell {
    pub sample: Sample,
    /// Signs of the projection polynomials, one vector per level so far.
    pub signs: Vec<Vec<i8>>,
}

impl Cell {
    pub fn root() -> Self {
        Cell { sample: Sample::origin(), signs: Vec::new() }
    }

    pub fn level(&self) -> usize {
        self.sample.level()
    }
}

/// A real root of the lifting polynomials and which of them vanish there.
#[derive(Clone, Debug)]
pub(crate) struct Root {
    pub value: AlgebraicNumber,
    pub vanishing: Vec<bool>,
}

/// Real roots, ascending, of the nonzero polynomials `polys` over the
/// sample's field in its real embedding.
pub(crate) fn roots_over(k: &Field, polys: &[KPoly], budget: &Budget) -> Result<Vec<Root>> {
    let mut factors: Vec<UniPoly> = Vec::new();
    let mut owners: Vec<Vec<usize>> = Vec::new();
    for (gi, g) in polys.iter().enumerate() {
        if kp_deg(g).is_none_or(|d| d == 0) {
            continue;
        }
        let n = norm(k, g);
        if n.deg() > budget.max_degree as usize {
            return Err(Error::BudgetExhausted(format!(
                "lifting polynomial of degree {} exceeds the degree budget {}",
                n.deg(),
                budget.max_degree
            )));
        }
        for (f, _) in factor_over_q(&n.squarefree_part())?.factors {
            if f.deg() == 0 {
                continue;
            }
            match factors.iter().position(|x| *x == f) {
                Some(i) => owners[i].push(gi),
                None => {
                    factors.push(f);
                    owners.push(vec![gi]);
                }
            }
        }
    }
    let mut items: Vec<(usize, Interval)> = Vec::new();
    for (fi, f) in factors.iter().enumerate() {
        for iv in isolate_real_roots(f)? {
            items.push((fi, iv));
        }
    }
    separate(&factors, &mut items);

    let sturms: Vec<Option<KSturm>> = if k.degree() == 1 {
        polys.iter().map(|_| None).collect()
    } else {
        polys.iter().map(|g| (kp_deg(g).is_some_and(|d| d > 0)).then(|| KSturm::new(k, g))).collect()
    };
    let mut out = Vec::new();
    for (fi, iv) in items {
        let f = &factors[fi];
        let mut vanishing = vec![false; polys.len()];
        for &gi in &owners[fi] {
            vanishing[gi] = if k.degree() == 1 {
                true
            } else if iv.is_point() {
                kp_eval(k, &polys[gi], &iv.lo).is_zero()
            } else {
                sturms[gi].as_ref().expect("non-constant").count(k, &iv.lo, &iv.hi) > 0
            };
        }
        if vanishing.iter().any(|&v| v) {
            let value = if iv.is_point() {
                AlgebraicNumber::from_rational(iv.lo.clone())
            } else {
                AlgebraicNumber::from_parts(f.clone(), iv)
            };
            out.push(Root { value, vanishing });
        }
    }
    Ok(out)
}

// Refines until intervals are strictly disjoint and sorted; distinct
// irreducible factors share no roots, so this terminates.
fn separate(factors: &[UniPoly], items: &mut [(usize, Interval)]) {
    loop {
        items.sort_by(|a, b| a.1.lo.cmp(&b.1.lo).then_with(|| a.1.hi.cmp(&b.1.hi)));
        let clash = (1..items.len()).find(|&i| items[i - 1].1.hi >= items[i].1.lo);
        let Some(i) = clash else { return };
        for j in [i - 1, i] {
            let (fi, iv) = &items[j];
            if !iv.is_point() {
                items[j].1 = refine_once(&factors[*fi], iv);
            }
        }
    }
}

/// Sample for the section through `root`, a root of `g` over the base
/// sample's field.
pub(crate) fn section_sample(base: &Sample, root: &AlgebraicNumber, g: &KPoly, budget: &Budget) -> Result<Sample> {
    let k = &base.field;
    if let Some(r) = root.to_rational() {
        let field = if k.degree() == 1 { Arc::new(Field::rational(r.clone())) } else { k.clone() };
        return Ok(base.pushed(field, UniPoly::constant(r)));
    }
    if k.degree() == 1 {
        return Ok(base.pushed(Arc::new(Field::from_algebraic(root.clone())), UniPoly::x()));
    }
    let f = root.minpoly();
    let f_k: KPoly = f.coeffs().iter().map(|c| UniPoly::constant(c.clone())).collect();
    let h = kp_gcd(k, g, &f_k);
    if kp_deg(&h) == Some(1) {
        return Ok(base.pushed(k.clone(), k.reduce(&-&h[0])));
    }
    primitive_element(base, root, budget)
}

fn primitive_element(base: &Sample, root: &AlgebraicNumber, budget: &Budget) -> Result<Sample> {
    let k = &base.field;
    let (m, f) = (k.monic(), root.minpoly());
    if m.deg() * f.deg() > budget.max_degree as usize {
        return Err(Error::BudgetExhausted(format!(
            "primitive element of degree {} exceeds the degree budget {}",
            m.deg() * f.deg(),
            budget.max_degree
        )));
    }
    let (c, r) = (1..=32i64)
        .flat_map(|i| [i, -i])
        .map(rational::int)
        .find_map(|c| {
            let r = shifted_resultant(m, f, &c);
            (r.gcd(&r.derivative()).deg() == 0).then_some((c, r))
        })
        .ok_or_else(|| Error::InvariantViolation("no separating primitive element found".into()))?;

    let sturm = SturmSequence::new(&r)?;
    let (mut rho, mut th) = (root.clone(), k.theta().clone());
    let (lo, hi) = loop {
        let (ri, ti) = (rho.interval(), th.interval());
        let (lo, hi) = if c > Rational::zero() {
            (&ri.lo + &c * &ti.lo, &ri.hi + &c * &ti.hi)
        } else {
            (&ri.lo + &c * &ti.hi, &ri.hi + &c * &ti.lo)
        };
        if !r.eval(&lo).is_zero() && !r.eval(&hi).is_zero() && sturm.count(&lo, &hi) == 1 {
            break (lo, hi);
        }
        rho = rho.refined();
        th = th.refined();
    };
    let gamma = AlgebraicNumber::new(r, lo, hi)?;
    let l = Field::from_algebraic(gamma);
    let fz: KPoly = shifted_in_t(f, &c).iter().map(|p| l.reduce(p)).collect();
    let m_l: KPoly = m.coeffs().iter().map(|q| UniPoly::constant(q.clone())).collect();
    let lin = kp_gcd(&l, &m_l, &fz);
    if kp_deg(&lin) != Some(1) {
        return Err(Error::InvariantViolation("primitive element does not recover the base generator".into()));
    }
    let theta_l = l.reduce(&-&lin[0]);
    let rho_l = l.reduce(&(&UniPoly::x() - &theta_l.scale(&c)));
    let mut coords: Vec<UniPoly> = base
        .coords
        .iter()
        .map(|u| {
            let mut acc = UniPoly::zero();
            for a in u.coeffs().iter().rev() {
                acc = &l.mul(&acc, &theta_l) + &UniPoly::constant(a.clone());
            }
            acc
        })
        .collect();
    coords.push(rho_l);
    Ok(Sample { field: Arc::new(l), coords })
}

/// Shared lifting context.
pub(crate) struct Cad<'a> {
    pub proj: Projection,
    pub formula: &'a Node,
    pub nvars: usize,
    pub budget: Budget,
    pub parallel: bool,
    cells: AtomicU64,
}

impl<'a> Cad<'a> {
    pub fn new(proj: Projection, formula: &'a Node, nvars: usize, budget: Budget, parallel: bool) -> Self {
        Cad { proj, formula, nvars, budget, parallel, cells: AtomicU64::new(0) }
    }

    fn charge(&self, n: usize) -> Result<()> {
        let used = self.cells.fetch_add(n as u64, Ordering::Relaxed) + n as u64;
        if used > self.budget.max_cells {
            return Err(Error::BudgetExhausted(format!("more than {} CAD cells", self.budget.max_cells)));
        }
        Ok(())
    }

    /// Truth of the formula over the whole cylinder above `sample`, if the
    /// atoms already decide it.
    pub fn partial_truth(&self, sample: &Sample) -> Option<bool> {
        let level = sample.level();
        self.formula.eval_partial(&mut |p| {
            (p.max_var().is_none_or(|v| v < level)).then(|| sample.sign(p))
        })
    }

    /// Children of `cell` in the cylinder over it, bottom to top.
    pub fn lift(&self, cell: &Cell, sectors_only: bool) -> Result<Vec<Cell>> {
        let level = cell.level();
        let basis = &self.proj.levels[level];
        let base = &cell.sample;
        let k = &base.field;
        let specialized: Vec<KPoly> = basis.iter().map(|p| base.specialize(p)).collect();
        let roots = roots_over(k, &specialized, &self.budget)?;

        let mut samples: Vec<(Sample, Option<usize>)> = Vec::new();
        let sector = |s: Rational| (base.pushed(k.clone(), UniPoly::constant(s)), None);
        if roots.is_empty() {
            samples.push(sector(Rational::zero()));
        } else {
            let first = roots[0].value.interval().lo.floor() - Rational::one();
            samples.push(sector(first));
            for (i, r) in roots.iter().enumerate() {
                if !sectors_only {
                    let g = r.vanishing.iter().position(|&v| v).expect("kept roots vanish somewhere");
                    samples.push((section_sample(base, &r.value, &specialized[g], &self.budget)?, Some(i)));
                }
                let above = match roots.get(i + 1) {
                    Some(next) => rational::simplest_between(&r.value.interval().hi, &next.value.interval().lo),
                    None => r.value.interval().hi.ceil() + Rational::one(),
                };
                samples.push(sector(above));
            }
        }
        self.charge(samples.len())?;
        Ok(samples
            .into_iter()
            .map(|(sample, on)| {
                let signs = basis
                    .iter()
                    .enumerate()
                    .map(|(j, p)| {
                        if specialized[j].is_empty() || on.is_some_and(|i| roots[i].vanishing[j]) {
                            0
                        } else {
                            sample.sign(p)
                        }
                    })
                    .collect();
                let mut all = cell.signs.clone();
                all.push(signs);
                Cell { sample, signs: all }
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn roots_over_extension_field() {
        let k = Field::from_algebraic(AlgebraicNumber::new(UniPoly::from_ints(&[-2, 0, 1]), int(1), int(2)).unwrap());
        // (x − √2)(x + 1) and x^2 − 2: roots −√2, −1, √2; the first vanishes at −1 and √2 only
        let lin: KPoly = vec![UniPoly::from_ints(&[0, -1]), UniPoly::one()];
        let g = vec![
            k.mul(&lin[0], &UniPoly::one()),
            &lin[0] + &UniPoly::one(),
            UniPoly::one(),
        ];
        let h: KPoly = vec![UniPoly::from_ints(&[-2]), UniPoly::zero(), UniPoly::one()];
        let roots = roots_over(&k, &[g, h], &Budget::default()).unwrap();
        assert_eq!(roots.len(), 3);
        assert_eq!(roots[0].vanishing, vec![false, true]);
        assert_eq!(roots[1].value.to_rational(), Some(int(-1)));
        assert_eq!(roots[1].vanishing, vec![true, false]);
        assert_eq!(roots[2].vanishing, vec![true, true]);
    }

    #[test]
    fn primitive_element_for_sqrt2_sqrt3() {
        let s2 = AlgebraicNumber::new(UniPoly::from_ints(&[-2, 0, 1]), int(1), int(2)).unwrap();
        let s3 = AlgebraicNumber::new(UniPoly::from_ints(&[-3, 0, 1]), int(1), int(2)).unwrap();
        let base = Sample::origin().pushed(Arc::new(Field::from_algebraic(s2)), UniPoly::x());
        let g: KPoly = vec![UniPoly::constant(int(-3)), UniPoly::zero(), UniPoly::one()];
        let s = section_sample(&base, &s3, &g, &Budget::default()).unwrap();
        assert_eq!(s.field.degree(), 4);
        // coordinates still square to 2 and 3, and are positive
        let k = &s.field;
        assert_eq!(k.mul(&s.coords[0], &s.coords[0]), UniPoly::constant(int(2)));
        assert_eq!(k.mul(&s.coords[1], &s.coords[1]), UniPoly::constant(int(3)));
        assert_eq!(k.sign(&s.coords[0]), 1);
        assert_eq!(k.sign(&s.coords[1]), 1);
    }
}
