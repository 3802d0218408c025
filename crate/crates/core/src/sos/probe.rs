//! Floating-point search for an interior point of `{Y : M0 + Σ Y_l M_l ⪰ 0}`.
//! Only proposes candidates; every candidate is rounded and checked exactly
//! by the caller.

// negated float comparisons below are deliberate: NaN must stop the search
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use nalgebra::{Cholesky, DMatrix, DVector};
use num_traits::ToPrimitive;

use crate::matrix::RationalMatrix;

fn to_f64(m: &RationalMatrix, scale: f64) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)].to_f64().unwrap_or(f64::NAN) / scale)
}

struct Barrier {
    a0: DMatrix<f64>,
    dirs: Vec<DMatrix<f64>>,
    cost: DVector<f64>,
}

impl Barrier {
    fn at(&self, z: &DVector<f64>) -> DMatrix<f64> {
        let mut f = self.a0.clone();
        for (a, &zi) in self.dirs.iter().zip(z.iter()) {
            f += a * zi;
        }
        f
    }

    // cᵀz − log det F(z); None outside the open cone
    fn value(&self, z: &DVector<f64>) -> Option<f64> {
        let ch = Cholesky::new(self.at(z))?;
        let logdet: f64 = 2.0 * ch.l_dirty().diagonal().iter().map(|d| d.ln()).sum::<f64>();
        let v = self.cost.dot(z) - logdet;
        v.is_finite().then_some(v)
    }

    fn newton(&self, mut z: DVector<f64>, iters: usize) -> DVector<f64> {
        let k = z.len();
        for _ in 0..iters {
            let Some(ch) = Cholesky::new(self.at(&z)) else { break };
            let finv = ch.inverse();
            let g: Vec<DMatrix<f64>> = self.dirs.iter().map(|a| &finv * a).collect();
            let grad = DVector::from_fn(k, |i, _| self.cost[i] - g[i].trace());
            let hess = DMatrix::from_fn(k, k, |i, j| (&g[i] * &g[j]).trace());
            let Some(step) = Cholesky::new(hess).map(|h| -h.solve(&grad)) else { break };
            let dec = -grad.dot(&step);
            if !(dec > 1e-14) {
                break;
            }
            let f0 = self.value(&z).unwrap_or(f64::INFINITY);
            let mut s = 1.0;
            let mut moved = false;
            for _ in 0..60 {
                let cand = &z + &step * s;
                if self.value(&cand).is_some_and(|f| f <= f0 - 0.25 * s * dec) {
                    z = cand;
                    moved = true;
                    break;
                }
                s *= 0.5;
            }
            if !moved || dec < 1e-12 {
                break;
            }
        }
        z
    }
}

/// An approximate analytic center, or `None` when no strictly feasible point
/// was found.
pub(crate) fn interior_point(m0: &RationalMatrix, basis: &[RationalMatrix]) -> Option<Vec<f64>> {
    let n = m0.rows();
    let k = basis.len();
    let scale = [m0].into_iter().chain(basis).flat_map(|m| (0..n).flat_map(move |i| (0..n).map(move |j| (i, j, m))))
        .filter_map(|(i, j, m)| m[(i, j)].to_f64())
        .fold(0.0f64, |a, x| a.max(x.abs()));
    if !(scale > 0.0) {
        return None;
    }
    let a0 = to_f64(m0, scale);
    let dirs: Vec<DMatrix<f64>> = basis.iter().map(|m| to_f64(m, scale)).collect();

    // phase one: maximize t subject to M(Y) − tI ≻ 0
    let lmin = a0.clone().symmetric_eigenvalues().min();
    let mut z = DVector::zeros(k + 1);
    z[k] = lmin - 1.0;
    let mut phase1 = dirs.clone();
    phase1.push(-DMatrix::identity(n, n));
    let mut sigma = 1.0;
    let mut found = false;
    for _ in 0..40 {
        let mut cost = DVector::zeros(k + 1);
        cost[k] = -sigma;
        let b = Barrier { a0: a0.clone(), dirs: phase1.clone(), cost };
        z = b.newton(z, 100);
        if z[k] > 1e-9 {
            found = true;
            break;
        }
        // the barrier optimum is within n/σ of the best t
        if z[k] + n as f64 / sigma < -1e-10 {
            return None;
        }
        sigma *= 4.0;
    }
    if !found {
        return None;
    }

    // phase two: analytic center of the spectrahedron
    let y = z.rows(0, k).into_owned();
    let b = Barrier { a0, dirs, cost: DVector::zeros(k) };
    let y = b.newton(y, 200);
    Some(y.iter().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn centers_an_interval() {
        // [[1, 0, 1 − Y/2], [0, Y, 0], [1 − Y/2, 0, 1]] is PSD for Y in [0, 4]
        let m0 = RationalMatrix::from_ints(&[&[1, 0, 1], &[0, 0, 0], &[1, 0, 1]]);
        let mut m1 = RationalMatrix::zeros(3, 3);
        m1[(1, 1)] = int(1);
        m1[(0, 2)] = crate::rational::frac(-1, 2);
        m1[(2, 0)] = crate::rational::frac(-1, 2);
        let y = interior_point(&m0, &[m1]).unwrap();
        assert!(y[0] > 0.5 && y[0] < 3.5, "{y:?}");
    }

    #[test]
    fn infeasible_family() {
        // diag(Y, −1 − Y) is never PSD
        let m0 = RationalMatrix::from_ints(&[&[0, 0], &[0, -1]]);
        let m1 = RationalMatrix::from_ints(&[&[1, 0], &[0, -1]]);
        assert!(interior_point(&m0, &[m1]).is_none());
    }
}
