//! Monomial bases for Gram matrices: membership in the half Newton polytope
//! by an exact phase-one simplex.

use num_traits::{One, Signed, Zero};

use crate::multipoly::Monomial;
use crate::rational::{self, Rational};

/// Whether `p` is a convex combination of `pts`.
pub(crate) fn in_convex_hull(p: &[Rational], pts: &[Vec<Rational>]) -> bool {
    if pts.iter().any(|q| q.as_slice() == p) {
        return true;
    }
    let m = pts.len();
    let rows = p.len() + 1;
    // rows: Σ λ_j q_j = p, Σ λ_j = 1; columns: λ (m), artificials (rows), rhs
    let cols = m + rows + 1;
    let mut t = vec![vec![Rational::zero(); cols]; rows];
    for i in 0..rows {
        for (j, q) in pts.iter().enumerate() {
            t[i][j] = if i < p.len() { q[i].clone() } else { Rational::one() };
        }
        t[i][cols - 1] = if i < p.len() { p[i].clone() } else { Rational::one() };
        if t[i][cols - 1].is_negative() {
            for x in t[i].iter_mut() {
                *x = -x.clone();
            }
        }
        t[i][m + i] = Rational::one();
    }
    let mut basis: Vec<usize> = (m..m + rows).collect();
    // reduced costs of the phase-one objective Σ artificials
    let mut obj = vec![Rational::zero(); cols];
    for row in &t {
        for j in 0..cols {
            if j < m || j == cols - 1 {
                obj[j] -= &row[j];
            }
        }
    }
    // Bland's rule: lowest entering and leaving indices
    while let Some(enter) = (0..cols - 1).find(|&j| obj[j].is_negative()) {
        let leave = (0..rows)
            .filter(|&i| t[i][enter].is_positive())
            .min_by(|&a, &b| {
                let ra = &t[a][cols - 1] / &t[a][enter];
                let rb = &t[b][cols - 1] / &t[b][enter];
                ra.cmp(&rb).then(basis[a].cmp(&basis[b]))
            });
        let Some(r) = leave else { break };
        let piv = t[r][enter].clone();
        for x in t[r].iter_mut() {
            *x /= &piv;
        }
        let prow = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for j in 0..cols {
                    row[j] -= &f * &prow[j];
                }
            }
        }
        let f = obj[enter].clone();
        for j in 0..cols {
            obj[j] -= &f * &prow[j];
        }
        basis[r] = enter;
    }
    obj[cols - 1].is_zero()
}

/// Monomials of degree ≤ d in `n` variables, ordered by degree, then
/// descending in the first variable.
pub(crate) fn all_monomials(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == cur.len() {
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, d, &mut cur, &mut out);
    sort_basis(&mut out);
    out
}

pub(crate) fn sort_basis(v: &mut [Monomial]) {
    v.sort_by(|a, b| a.total_degree().cmp(&b.total_degree()).then_with(|| b.0.cmp(&a.0)));
}

/// Monomials α with 2α in the Newton polytope of the support.
pub(crate) fn half_newton(n: usize, support: &[Monomial]) -> Vec<Monomial> {
    let d = support.iter().map(Monomial::total_degree).max().unwrap_or(0) / 2;
    let pts: Vec<Vec<Rational>> =
        support.iter().map(|m| m.0.iter().map(|&e| rational::int(e as i64)).collect()).collect();
    let lo: Vec<u32> = (0..n).map(|i| support.iter().map(|m| m.0[i]).min().unwrap_or(0)).collect();
    let hi: Vec<u32> = (0..n).map(|i| support.iter().map(|m| m.0[i]).max().unwrap_or(0)).collect();
    let low_deg = support.iter().map(Monomial::total_degree).min().unwrap_or(0);
    all_monomials(n, d)
        .into_iter()
        .filter(|a| {
            let twice: Vec<u32> = a.0.iter().map(|e| 2 * e).collect();
            let deg: u32 = twice.iter().sum();
            deg >= low_deg
                && (0..n).all(|i| lo[i] <= twice[i] && twice[i] <= hi[i])
                && in_convex_hull(&twice.iter().map(|&e| rational::int(e as i64)).collect::<Vec<_>>(), &pts)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn hull_membership() {
        let tri = vec![vec![int(0), int(0)], vec![int(4), int(2)], vec![int(2), int(4)]];
        assert!(in_convex_hull(&[int(2), int(2)], &tri));
        assert!(in_convex_hull(&[int(2), int(1)], &tri));
        assert!(!in_convex_hull(&[int(2), int(0)], &tri));
        assert!(!in_convex_hull(&[int(4), int(4)], &tri));
        assert!(in_convex_hull(&[frac(1, 2), frac(1, 2)], &tri));
    }

    #[test]
    fn motzkin_half_polytope() {
        let support = [vec![4, 2], vec![2, 4], vec![2, 2], vec![0, 0]].map(Monomial);
        let v = half_newton(2, &support);
        assert_eq!(v, [vec![0, 0], vec![1, 1], vec![2, 1], vec![1, 2]].map(Monomial).to_vec());
    }

    #[test]
    fn full_basis_order() {
        let v = all_monomials(2, 2);
        let expect = [vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]].map(Monomial);
        assert_eq!(v, expect.to_vec());
    }
}
