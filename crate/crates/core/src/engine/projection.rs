//! Projection phase: squarefree coprime bases per level, with reducta,
//! discriminant-type and pairwise principal subresultant coefficients.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::multipoly::{gcd_with, mul_cost, Fuel, MultiPoly};

use super::Budget;

/// `levels[j]` holds the basis polynomials whose highest variable is `j`,
/// each primitive in that variable, normalized, pairwise coprime.
#[derive(Clone, Debug)]
pub(crate) struct Projection {
    pub levels: Vec<Vec<MultiPoly>>,
}

impl Projection {
    pub fn build(polys: &[MultiPoly], nvars: usize, augment: impl Fn(usize) -> bool, budget: &Budget) -> Result<Self> {
        let mut buckets: Vec<Vec<MultiPoly>> = vec![Vec::new(); nvars];
        for p in polys {
            push_poly(&mut buckets, p);
        }
        let mut levels = vec![Vec::new(); nvars];
        let mut fuel = Fuel::new(budget.max_work);
        for level in (0..nvars).rev() {
            let raw = std::mem::take(&mut buckets[level]);
            let mut basis: Vec<MultiPoly> = Vec::new();
            for p in raw {
                let content = p.content_in_with(level, &mut fuel).ok_or_else(out_of_fuel)?;
                push_poly(&mut buckets, &content);
                let prim = p.div_exact(&content).expect("content divides");
                add_to_basis(&mut basis, &prim, &mut fuel)?;
            }
            if augment(level) {
                let mut frontier = basis.clone();
                while let Some(f) = frontier.pop() {
                    let d = f.derivative(level);
                    if d.degree_in(level) == 0 {
                        continue;
                    }
                    let before = basis.clone();
                    add_to_basis(&mut basis, &d, &mut fuel)?;
                    frontier.extend(basis.iter().filter(|b| !before.contains(b)).cloned());
                }
            }
            basis.sort_by(canonical_cmp);
            for b in &basis {
                if b.total_degree() > budget.max_degree {
                    return Err(Error::BudgetExhausted(format!(
                        "projection polynomial of degree {} exceeds the degree budget {}",
                        b.total_degree(),
                        budget.max_degree
                    )));
                }
            }
            if level > 0 {
                for q in project(&basis, level, budget, &mut fuel)? {
                    push_poly(&mut buckets, &q);
                }
            }
            levels[level] = basis;
        }
        Ok(Projection { levels })
    }
}

fn push_poly(buckets: &mut [Vec<MultiPoly>], p: &MultiPoly) {
    if let Some(v) = p.max_var() {
        let q = p.normalized();
        if !buckets[v].contains(&q) {
            buckets[v].push(q);
        }
    }
}

/// Deterministic order: lower degree in the level variable first, then
/// fewer terms, then term-wise.
fn canonical_cmp(a: &MultiPoly, b: &MultiPoly) -> Ordering {
    let v = a.max_var().unwrap_or(0);
    (a.degree_in(v), a.total_degree(), a.num_terms())
        .cmp(&(b.degree_in(v), b.total_degree(), b.num_terms()))
        .then_with(|| {
            for ((ma, ca), (mb, cb)) in a.terms().zip(b.terms()) {
                let o = ma.cmp(mb).then_with(|| ca.cmp(cb));
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
}

/// Inserts the squarefree part of `p`, splitting against existing members so
/// the basis stays pairwise coprime.
pub(crate) fn add_to_basis(basis: &mut Vec<MultiPoly>, p: &MultiPoly, fuel: &mut Fuel) -> Result<()> {
    let mut work = vec![p.squarefree_part_with(fuel).ok_or_else(out_of_fuel)?.normalized()];
    while let Some(p) = work.pop() {
        if p.is_constant() {
            continue;
        }
        let mut hit = None;
        for (i, b) in basis.iter().enumerate() {
            let g = gcd_with(&p, b, fuel).ok_or_else(out_of_fuel)?;
            if !g.is_constant() {
                hit = Some((i, g));
                break;
            }
        }
        match hit {
            None => basis.push(p),
            Some((i, g)) => {
                let b = basis.swap_remove(i);
                if g == b && b == p {
                    basis.push(b);
                    continue;
                }
                for piece in [b.div_exact(&g).expect("gcd divides"), p.div_exact(&g).expect("gcd divides"), g] {
                    if !piece.is_constant() {
                        work.push(piece.normalized());
                    }
                }
            }
        }
    }
    Ok(())
}

fn out_of_fuel() -> Error {
    Error::BudgetExhausted("projection work exceeds the budget".into())
}

fn reductum(p: &MultiPoly, v: usize) -> MultiPoly {
    let d = p.degree_in(v);
    let mut coeffs = p.coeffs_in(v);
    coeffs.truncate(d as usize);
    MultiPoly::from_coeffs_in(v, p.nvars(), &coeffs)
}

/// Reducta of `f` in `v` down to (and including) the first one whose leading
/// coefficient is a nonzero constant.
fn reducta(f: &MultiPoly, v: usize) -> Vec<MultiPoly> {
    let mut out = Vec::new();
    let mut r = f.clone();
    while !r.is_zero() {
        let stop = r.lc_in(v).is_constant();
        out.push(r.clone());
        if stop || r.degree_in(v) == 0 {
            break;
        }
        r = reductum(&r, v);
    }
    out
}

fn project(basis: &[MultiPoly], v: usize, budget: &Budget, fuel: &mut Fuel) -> Result<Vec<MultiPoly>> {
    let mut out = Vec::new();
    let mut keep = |q: MultiPoly| {
        if !q.is_constant() {
            out.push(q);
        }
    };
    let reds: Vec<Vec<MultiPoly>> = basis.iter().map(|f| reducta(f, v)).collect();
    for rs in &reds {
        for r in rs {
            keep(r.lc_in(v));
            let d = r.derivative(v);
            let dd = d.degree_in(v);
            if r.degree_in(v) >= 2 {
                for j in 0..dd {
                    keep(psc(r, &d, v, j, budget.max_terms, fuel)?);
                }
            }
        }
    }
    for (i, rs) in reds.iter().enumerate() {
        for g in &basis[i + 1..] {
            for r in rs {
                let m = r.degree_in(v).min(g.degree_in(v));
                for k in 0..m {
                    keep(psc(r, g, v, k, budget.max_terms, fuel)?);
                }
            }
        }
    }
    Ok(out)
}

/// j-th principal subresultant coefficient of `a` and `b` in `v`.
pub(crate) fn psc(a: &MultiPoly, b: &MultiPoly, v: usize, j: u32, max_terms: usize, fuel: &mut Fuel) -> Result<MultiPoly> {
    let (m, n) = (a.degree_in(v) as usize, b.degree_in(v) as usize);
    let j = j as usize;
    let size = m + n - 2 * j;
    let (ac, bc) = (a.coeffs_in(v), b.coeffs_in(v));
    let zero = MultiPoly::zero(a.nvars());
    // rows x^i·a for i < n − j, then x^i·b for i < m − j; column c holds the
    // coefficient of x^{m+n−j−1−c}
    let top = m + n - j - 1;
    let mut rows = Vec::with_capacity(size);
    for (coeffs, deg, count) in [(&ac, m, n - j), (&bc, n, m - j)] {
        for i in (0..count).rev() {
            let row = (0..size)
                .map(|c| {
                    let power = top - c;
                    power.checked_sub(i).filter(|&e| e <= deg).map_or(zero.clone(), |e| coeffs[e].clone())
                })
                .collect();
            rows.push(row);
        }
    }
    det(rows, max_terms, fuel)
}

/// Fraction-free (Bareiss) determinant; gives up once an entry exceeds
/// `max_terms`.
pub(crate) fn det(mut a: Vec<Vec<MultiPoly>>, max_terms: usize, fuel: &mut Fuel) -> Result<MultiPoly> {
    let n = a.len();
    if n == 0 {
        return Ok(MultiPoly::one(0));
    }
    let nv = a[0][0].nvars();
    let mut negate = false;
    let mut prev = MultiPoly::one(nv);
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return Ok(MultiPoly::zero(nv)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                fuel.burn(mul_cost(&a[i][j], &a[k][k]) + mul_cost(&a[i][k], &a[k][j]))
                    .ok_or_else(out_of_fuel)?;
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
                if a[i][j].num_terms() > max_terms {
                    return Err(Error::BudgetExhausted(format!(
                        "projection polynomial with more than {max_terms} terms"
                    )));
                }
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}
