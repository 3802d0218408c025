//! Exact rational matrices: symmetric LDLᵀ with a PSD verdict, affine
//! solution spaces, and characteristic polynomials over Q[Y].

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::multipoly::MultiPoly;
use crate::rational::{self, Rational};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(RationalMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| rational::int(v)).collect()).collect(),
        )
        .expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn add(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    /// `wᵀ M w`
    pub fn quadratic_form(&self, w: &[Rational]) -> Rational {
        self.mul_vec(w).iter().zip(w).map(|(a, b)| a * b).sum()
    }

    /// Determinant by Gaussian elimination over Q.
    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != k {
                a.swap_rows(p, k);
                det = -det;
            }
            let piv = a[(k, k)].clone();
            det *= &piv;
            for i in k + 1..n {
                let f = &a[(i, k)] / &piv;
                if f.is_zero() {
                    continue;
                }
                for j in k..n {
                    let t = &f * &a[(k, j)];
                    a[(i, j)] -= t;
                }
            }
        }
        Ok(det)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Symmetric permutation `(PᵀMP)_{ij} = M_{perm[i], perm[j]}`.
    pub fn permute_symmetric(&self, perm: &[usize]) -> RationalMatrix {
        let n = self.rows;
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = self[(perm[i], perm[j])].clone();
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(rational::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Successful LDLᵀ of a PSD matrix: `PᵀMP = L·diag(pivots, 0, …)·Lᵀ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ldlt {
    pub perm: Vec<usize>,
    /// Unit lower triangular, `n × n`.
    pub l: RationalMatrix,
    /// Strictly positive; `pivots.len()` is the rank.
    pub pivots: Vec<Rational>,
}

impl Ldlt {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// `L·D·Lᵀ`, to compare against `PᵀMP`.
    pub fn recompose(&self) -> RationalMatrix {
        let n = self.l.rows();
        let mut out = RationalMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut s = Rational::zero();
                for (k, d) in self.pivots.iter().enumerate() {
                    s += &self.l[(i, k)] * d * &self.l[(j, k)];
                }
                out[(i, j)] = s;
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PsdVerdict {
    Psd(Ldlt),
    /// `wᵀMw < 0` exactly.
    NotPsd { witness: Vec<Rational> },
}

impl PsdVerdict {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdVerdict::Psd(_))
    }
}

/// Exact LDLᵀ with diagonal pivoting on the largest remaining diagonal entry.
pub fn ldlt_psd(m: &RationalMatrix) -> Result<PsdVerdict> {
    if !m.is_symmetric() {
        return Err(Error::Shape("ldlt_psd expects a symmetric matrix".into()));
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut l = RationalMatrix::identity(n);
    let mut pivots = Vec::new();

    for k in 0..n {
        let (best, best_val) = (k..n)
            .map(|i| (i, a[(i, i)].clone()))
            .max_by(|x, y| x.1.cmp(&y.1).then(y.0.cmp(&x.0)))
            .expect("nonempty range");
        if let Some(neg) = (k..n).find(|&i| a[(i, i)].is_negative()) {
            let mut u = vec![Rational::zero(); n];
            u[neg] = Rational::one();
            return Ok(not_psd(m, &l, &perm, k, u));
        }
        if best_val.is_zero() {
            // remaining block must vanish entirely
            for i in k..n {
                for j in k..n {
                    if i != j && !a[(i, j)].is_zero() {
                        let mut u = vec![Rational::zero(); n];
                        u[i] = Rational::one();
                        u[j] = if a[(i, j)].is_positive() { -Rational::one() } else { Rational::one() };
                        return Ok(not_psd(m, &l, &perm, k, u));
                    }
                }
            }
            break;
        }
        symmetric_swap(&mut a, k, best);
        perm.swap(k, best);
        // swap the already computed part of L
        for j in 0..k {
            let t = l[(k, j)].clone();
            l[(k, j)] = l[(best, j)].clone();
            l[(best, j)] = t;
        }
        let piv = a[(k, k)].clone();
        for i in k + 1..n {
            l[(i, k)] = &a[(i, k)] / &piv;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &l[(i, k)] * &a[(k, j)];
                a[(i, j)] -= t;
            }
        }
        for i in k + 1..n {
            a[(i, k)] = Rational::zero();
            a[(k, i)] = Rational::zero();
        }
        pivots.push(piv);
    }
    Ok(PsdVerdict::Psd(Ldlt { perm, l, pivots }))
}

fn symmetric_swap(a: &mut RationalMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    let n = a.rows();
    for c in 0..n {
        a.entries.swap(i * n + c, j * n + c);
    }
    for r in 0..n {
        a.entries.swap(r * n + i, r * n + j);
    }
}

// Maps a vector `u` (supported on the trailing Schur block after `k` steps,
// in permuted coordinates) back to original coordinates via `L⁻ᵀ`.
fn not_psd(m: &RationalMatrix, l: &RationalMatrix, perm: &[usize], k: usize, u: Vec<Rational>) -> PsdVerdict {
    let n = u.len();
    let mut w = u;
    for i in (0..k).rev() {
        let mut s = w[i].clone();
        for j in i + 1..n {
            s -= &l[(j, i)] * &w[j];
        }
        w[i] = s;
    }
    let mut orig = vec![Rational::zero(); n];
    for (i, &p) in perm.iter().enumerate() {
        orig[p] = w[i].clone();
    }
    debug_assert!(m.quadratic_form(&orig).is_negative());
    PsdVerdict::NotPsd { witness: orig }
}

/// `{x : Ax = b} = particular + span(basis)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSpace {
    pub particular: Vec<Rational>,
    pub basis: Vec<Vec<Rational>>,
}

/// Solves `Ax = b` by Gauss-Jordan elimination; `None` when inconsistent.
/// Basis vectors come from the reduced echelon form, one per free column,
/// with a unit entry at that column.
pub fn affine_solution_space(a: &RationalMatrix, b: &[Rational]) -> Result<Option<AffineSpace>> {
    if a.rows() != b.len() {
        return Err(Error::Dimension(format!("{} rows but rhs of length {}", a.rows(), b.len())));
    }
    let (rows, cols) = (a.rows(), a.cols());
    let mut aug = RationalMatrix::zeros(rows, cols + 1);
    for i in 0..rows {
        for j in 0..cols {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, cols)] = b[i].clone();
    }
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !aug[(i, c)].is_zero()) else { continue };
        aug.swap_rows(p, r);
        let inv = aug[(r, c)].recip();
        for j in c..=cols {
            aug[(r, j)] *= &inv;
        }
        for i in 0..rows {
            if i == r || aug[(i, c)].is_zero() {
                continue;
            }
            let f = aug[(i, c)].clone();
            for j in c..=cols {
                let t = &f * &aug[(r, j)];
                aug[(i, j)] -= t;
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if (r..rows).any(|i| !aug[(i, cols)].is_zero()) {
        return Ok(None);
    }
    let mut particular = vec![Rational::zero(); cols];
    for (i, &c) in pivot_cols.iter().enumerate() {
        particular[c] = aug[(i, cols)].clone();
    }
    let mut basis = Vec::new();
    for f in (0..cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[f] = Rational::one();
        for (i, &c) in pivot_cols.iter().enumerate() {
            v[c] = -aug[(i, f)].clone();
        }
        if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            v.iter_mut().for_each(|x| *x = -x.clone());
        }
        basis.push(v);
    }
    Ok(Some(AffineSpace { particular, basis }))
}

/// Square matrix with polynomial entries in a shared ring.
pub type PolyMatrix = Vec<Vec<MultiPoly>>;

/// Coefficients `c_0..c_n` of `det(λI − M) = Σ c_i λ^i` (so `c_n = 1`), by
/// the Faddeev–LeVerrier recurrence; the only divisions are by integers.
pub fn char_poly(m: &PolyMatrix) -> Result<Vec<MultiPoly>> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::Dimension("characteristic polynomial of a non-square matrix".into()));
    }
    if n == 0 {
        return Err(Error::Dimension("empty matrix".into()));
    }
    let nv = m[0][0].nvars();
    let zero = MultiPoly::zero(nv);
    let mut coeffs = vec![zero.clone(); n + 1];
    coeffs[n] = MultiPoly::one(nv);
    // mk = M_k, starting from M_1 = I
    let mut mk: PolyMatrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { MultiPoly::one(nv) } else { zero.clone() }).collect())
        .collect();
    for k in 1..=n {
        if k > 1 {
            let mut next = poly_mat_mul(m, &mk);
            for (i, row) in next.iter_mut().enumerate() {
                row[i] = &row[i] + &coeffs[n - k + 1];
            }
            mk = next;
        }
        let am = poly_mat_mul(m, &mk);
        let tr = (0..n).fold(zero.clone(), |acc, i| &acc + &am[i][i]);
        coeffs[n - k] = tr.scale(&-rational::int(k as i64).recip());
    }
    Ok(coeffs)
}

fn poly_mat_mul(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let n = a.len();
    let nv = a[0][0].nvars();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(MultiPoly::zero(nv), |acc, k| {
                        if a[i][k].is_zero() || b[k][j].is_zero() {
                            acc
                        } else {
                            &acc + &(&a[i][k] * &b[k][j])
                        }
                    })
                })
                .collect()
        })
        .collect()
}
