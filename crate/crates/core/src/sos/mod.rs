//! Rational sums of squares through Gram matrices.

mod newton;
mod probe;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::engine::{semialgebraic_solve, EngineConfig};
use crate::error::{Error, Result};
use crate::formula::{Formula, Node, Relation};
use crate::matrix::{affine_solution_space, char_poly, ldlt_psd, PolyMatrix, PsdVerdict, RationalMatrix};
use crate::multipoly::{Monomial, MultiPoly};
use crate::ratpoints::{find_rational_points, RationalParametrization, RationalPoint};
use crate::rational::{self, Rational};
use crate::roots::{all_roots_real, root_sum_evaluate};

/// `f = vᵀ(M0 + Σ Y_l M_l)v` for every `Y`; the `M_l` are independent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramSpace {
    pub nvars: usize,
    pub v: Vec<Monomial>,
    pub m0: RationalMatrix,
    pub basis: Vec<RationalMatrix>,
}

impl GramSpace {
    pub fn k(&self) -> usize {
        self.basis.len()
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }

    pub fn matrix_at(&self, y: &[Rational]) -> Result<RationalMatrix> {
        if y.len() != self.k() {
            return Err(Error::Dimension(format!("{} Gram parameters, expected {}", y.len(), self.k())));
        }
        Ok(y.iter().zip(&self.basis).fold(self.m0.clone(), |acc, (c, m)| acc.add(&m.scale(c))))
    }

    /// `M0 + Σ Y_l M_l` with entries in `Q[Y_1..Y_k]`.
    pub fn poly_matrix(&self) -> PolyMatrix {
        let (d, k) = (self.dim(), self.k());
        (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let mut e = MultiPoly::constant(k, self.m0[(i, j)].clone());
                        for (l, m) in self.basis.iter().enumerate() {
                            if !m[(i, j)].is_zero() {
                                e = &e + &MultiPoly::var(k, l).scale(&m[(i, j)]);
                            }
                        }
                        e
                    })
                    .collect()
            })
            .collect()
    }

    pub fn param_names(&self) -> Vec<String> {
        (1..=self.k()).map(|l| format!("Y{l}")).collect()
    }
}

fn monomial_poly(nvars: usize, m: &Monomial, c: Rational) -> MultiPoly {
    MultiPoly::from_terms(nvars, [(m.0.clone(), c)])
}

fn add_exps(a: &Monomial, b: &Monomial) -> Monomial {
    Monomial(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
}

// Extreme points of the support in a few directions; each must be an even
// exponent with positive coefficient for f to be bounded below.
fn vertices_ok(f: &MultiPoly) -> bool {
    let n = f.nvars();
    let terms: Vec<(&Monomial, &Rational)> = f.terms().collect();
    let mut dirs: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        for s in [1, -1] {
            let mut w = vec![0; n];
            w[i] = s;
            dirs.push(w);
        }
    }
    dirs.push(vec![1; n]);
    dirs.push(vec![-1; n]);
    for w in dirs {
        let score = |m: &Monomial| m.0.iter().zip(&w).map(|(&e, &c)| e as i64 * c).sum::<i64>();
        let best = terms.iter().map(|(m, _)| score(m)).max().unwrap_or(0);
        let mut top = terms.iter().filter(|(m, _)| score(m) == best);
        if let (Some((m, c)), None) = (top.next(), top.next()) {
            if !c.is_positive() || m.0.iter().any(|e| e % 2 == 1) {
                return false;
            }
        }
    }
    true
}

/// Gram space of `f` over the half Newton polytope (`prune`) or over all
/// monomials of degree at most `deg f / 2`.
pub fn build_gram_space(f: &MultiPoly, prune: bool) -> Result<GramSpace> {
    if f.is_zero() {
        return Err(Error::UndefinedInput("Gram space of the zero polynomial"));
    }
    let n = f.nvars();
    let deg = f.total_degree();
    if deg % 2 == 1 || !vertices_ok(f) {
        return Err(Error::OddDegree);
    }
    let support: Vec<Monomial> = f.terms().map(|(m, _)| m.clone()).collect();
    let v = if prune { newton::half_newton(n, &support) } else { newton::all_monomials(n, deg / 2) };
    let d = v.len();
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).collect();
    let mut rows: BTreeMap<Monomial, Vec<(usize, Rational)>> = BTreeMap::new();
    for (u, &(i, j)) in pairs.iter().enumerate() {
        let w = if i == j { Rational::one() } else { rational::int(2) };
        rows.entry(add_exps(&v[i], &v[j])).or_default().push((u, w));
    }
    if support.iter().any(|m| !rows.contains_key(m)) {
        return Err(Error::InfeasibleGram);
    }
    let coeff: BTreeMap<&Monomial, &Rational> = f.terms().collect();
    let mut a = RationalMatrix::zeros(rows.len(), pairs.len());
    let mut b = Vec::with_capacity(rows.len());
    for (r, (m, entries)) in rows.iter().rev().enumerate() {
        for (u, w) in entries {
            a[(r, *u)] = w.clone();
        }
        b.push(coeff.get(m).map_or_else(Rational::zero, |c| (*c).clone()));
    }
    let space = affine_solution_space(&a, &b)?.ok_or(Error::InfeasibleGram)?;
    let to_matrix = |x: &[Rational]| {
        let mut m = RationalMatrix::zeros(d, d);
        for (u, &(i, j)) in pairs.iter().enumerate() {
            m[(i, j)] = x[u].clone();
            m[(j, i)] = x[u].clone();
        }
        m
    };
    Ok(GramSpace {
        nvars: n,
        m0: to_matrix(&space.particular),
        basis: space.basis.iter().map(|x| to_matrix(x)).collect(),
        v,
    })
}

/// `M(Y) ⪰ 0` as sign conditions on the characteristic polynomial:
/// `(−1)^(i+D) m_i(Y) ≥ 0` for each coefficient below the leading one.
pub fn build_psd_formula(gs: &GramSpace) -> Result<Formula> {
    let d = gs.dim();
    let coeffs = char_poly(&gs.poly_matrix())?;
    let atoms = coeffs[..d]
        .iter()
        .enumerate()
        .map(|(i, c)| Node::atom(if (i + d).is_multiple_of(2) { c.clone() } else { -c }, Relation::Ge))
        .collect();
    Formula::and(gs.param_names(), atoms)
}

/// `f = Σ c_i g_i²` with positive rational weights.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SOSCertificate {
    pub terms: Vec<(Rational, MultiPoly)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateMismatch {
    NonPositiveWeight { index: usize },
    VariableCount { index: usize },
    Coefficient { monomial: Monomial, expected: Rational, found: Rational },
}

impl fmt::Display for CertificateMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateMismatch::NonPositiveWeight { index } => write!(f, "term {index} has a non-positive weight"),
            CertificateMismatch::VariableCount { index } => write!(f, "term {index} lives in the wrong ring"),
            CertificateMismatch::Coefficient { monomial, expected, found } => write!(
                f,
                "coefficient of {:?} is {} but the certificate gives {}",
                monomial.0,
                rational::to_string(expected),
                rational::to_string(found)
            ),
        }
    }
}

impl SOSCertificate {
    pub fn recompose(&self, nvars: usize) -> MultiPoly {
        self.terms.iter().fold(MultiPoly::zero(nvars), |acc, (c, g)| &acc + &(g * g).scale(c))
    }

    /// Exact comparison with `f`; reports the leading differing monomial.
    #[allow(clippy::result_large_err)]
    pub fn check(&self, f: &MultiPoly) -> std::result::Result<(), CertificateMismatch> {
        for (index, (c, g)) in self.terms.iter().enumerate() {
            if !c.is_positive() {
                return Err(CertificateMismatch::NonPositiveWeight { index });
            }
            if g.nvars() != f.nvars() {
                return Err(CertificateMismatch::VariableCount { index });
            }
        }
        let diff = &self.recompose(f.nvars()) - f;
        match diff.leading_term() {
            None => Ok(()),
            Some((m, _)) => {
                let expected = f.terms().find(|(fm, _)| *fm == m).map_or_else(Rational::zero, |(_, c)| c.clone());
                let found = self.recompose(f.nvars()).terms().find(|(r, _)| *r == m).map_or_else(Rational::zero, |(_, c)| c.clone());
                Err(CertificateMismatch::Coefficient { monomial: m.clone(), expected, found })
            }
        }
    }
}

/// Weighted squares from the LDLᵀ of a PSD Gram matrix.
pub fn extract_sos(m: &RationalMatrix, v: &[Monomial], nvars: usize) -> Result<SOSCertificate> {
    if m.rows() != v.len() {
        return Err(Error::Dimension(format!("{}×{} matrix for {} monomials", m.rows(), m.cols(), v.len())));
    }
    let ldlt = match ldlt_psd(m)? {
        PsdVerdict::Psd(l) => l,
        PsdVerdict::NotPsd { .. } => return Err(Error::CertificateExtraction),
    };
    let terms = ldlt
        .pivots
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let g = (k..v.len())
                .filter(|&i| !ldlt.l[(i, k)].is_zero())
                .fold(MultiPoly::zero(nvars), |acc, i| &acc + &monomial_poly(nvars, &v[ldlt.perm[i]], ldlt.l[(i, k)].clone()));
            (c.clone(), g)
        })
        .collect();
    Ok(SOSCertificate { terms })
}

/// `(1 / deg G) Σ Y(ϑ)` over all complex roots of `G`, when they are all
/// real; `None` otherwise.
pub fn totally_real_average(p: &RationalParametrization) -> Result<Option<RationalPoint>> {
    if let Some(pt) = p.rational_point() {
        return Ok(Some(pt));
    }
    if !all_roots_real(&p.g)? {
        return Ok(None);
    }
    let denom = Rational::from_integer(&p.q * BigInt::from(p.g.deg()));
    let coords = p.coords.iter().map(|gj| Ok(root_sum_evaluate(&p.g, gj)? / &denom)).collect::<Result<Vec<_>>>()?;
    Ok(Some(RationalPoint(coords)))
}

// First average of a flagged, totally real parametrization that lies in Φ.
fn total_real_point(params: &[RationalParametrization], phi: &Formula) -> Result<Option<RationalPoint>> {
    for p in params.iter().filter(|p| !p.flagged.is_empty()) {
        if let Some(pt) = totally_real_average(p)? {
            if phi.evaluate(pt.coords())? {
                return Ok(Some(pt));
            }
        }
    }
    Ok(None)
}

/// A rational point of the Gram spectrahedron from a totally real
/// parametrization, when one exists.
pub fn rational_total_real_solve(gs: &GramSpace, cfg: &EngineConfig) -> Result<Option<RationalPoint>> {
    let phi = build_psd_formula(gs)?;
    let params = semialgebraic_solve(&phi, cfg)?;
    total_real_point(&params, &phi)
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum SOSDecision {
    NotSOSOverR,
    SOSOverROnly { witness: RationalParametrization },
    SOSOverQ { point: RationalPoint, certificate: SOSCertificate },
}

#[derive(Clone, Debug)]
pub struct SosOptions {
    pub prune: bool,
    /// Try a floating-point interior point, verified exactly, before the
    /// exact search.
    pub probe: bool,
    pub engine: EngineConfig,
}

impl Default for SosOptions {
    fn default() -> Self {
        SosOptions { prune: true, probe: true, engine: EngineConfig::default() }
    }
}

pub fn decide_rational_sos(f: &MultiPoly, prune: bool) -> Result<SOSDecision> {
    decide_rational_sos_with(f, &SosOptions { prune, ..SosOptions::default() })
}

fn round_to(x: f64, den: u64) -> Option<Rational> {
    let n = (x * den as f64).round();
    n.is_finite().then(|| Rational::new(BigInt::from(n as i64), BigInt::from(den)))
}

fn probe_point(gs: &GramSpace) -> Result<Option<Vec<Rational>>> {
    let Some(y) = probe::interior_point(&gs.m0, &gs.basis) else { return Ok(None) };
    for bits in 0..=40 {
        let den = 1u64 << bits;
        let Some(cand) = y.iter().map(|&x| round_to(x, den)).collect::<Option<Vec<_>>>() else { return Ok(None) };
        if ldlt_psd(&gs.matrix_at(&cand)?)?.is_psd() {
            return Ok(Some(cand));
        }
    }
    Ok(None)
}

pub fn decide_rational_sos_with(f: &MultiPoly, opts: &SosOptions) -> Result<SOSDecision> {
    if f.is_zero() {
        return Ok(SOSDecision::SOSOverQ { point: RationalPoint(Vec::new()), certificate: SOSCertificate::default() });
    }
    let gs = match build_gram_space(f, opts.prune) {
        Ok(gs) => gs,
        Err(Error::OddDegree | Error::InfeasibleGram) => return Ok(SOSDecision::NotSOSOverR),
        Err(e) => return Err(e),
    };
    let finish = |y: Vec<Rational>| -> Result<SOSDecision> {
        let certificate = extract_sos(&gs.matrix_at(&y)?, &gs.v, gs.nvars)?;
        certificate.check(f).map_err(|e| Error::InvariantViolation(format!("certificate does not recompose: {e}")))?;
        Ok(SOSDecision::SOSOverQ { point: RationalPoint(y), certificate })
    };
    if gs.k() == 0 {
        return if ldlt_psd(&gs.m0)?.is_psd() { finish(Vec::new()) } else { Ok(SOSDecision::NotSOSOverR) };
    }
    if opts.probe {
        if let Some(y) = probe_point(&gs)? {
            return finish(y);
        }
    }
    let phi = build_psd_formula(&gs)?;
    let params = semialgebraic_solve(&phi, &opts.engine)?;
    let Some(witness) = params.iter().find(|p| !p.flagged.is_empty()) else {
        return Ok(SOSDecision::NotSOSOverR);
    };
    if let Some(pt) = total_real_point(&params, &phi)? {
        return finish(pt.0);
    }
    match find_rational_points(&phi, &opts.engine)? {
        Some(pt) => finish(pt.0),
        None => Ok(SOSDecision::SOSOverROnly { witness: witness.clone() }),
    }
}

/// Largest bit length among the certificate's weights and coefficients.
pub fn certificate_bit_length(c: &SOSCertificate) -> u64 {
    c.terms
        .iter()
        .flat_map(|(w, g)| std::iter::once(rational::bit_length(w)).chain(g.terms().map(|(_, x)| rational::bit_length(x))))
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_polynomial_in;
    use crate::rational::{frac, int};
    use proptest::prelude::*;

    fn poly(src: &str) -> MultiPoly {
        parse_polynomial_in(src, &["x".to_string(), "y".to_string()]).unwrap()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    fn sq_family() -> GramSpace {
        build_gram_space(&poly("x^4 + 2*x^2*y^2 + y^4"), true).unwrap()
    }

    #[test]
    fn gram_space_examples() {
        let gs = build_gram_space(&parse_polynomial_in("x^2", &["x".to_string()]).unwrap(), true).unwrap();
        assert_eq!((gs.v.clone(), gs.k()), (vec![mono(&[1])], 0));
        assert_eq!(gs.m0, RationalMatrix::from_ints(&[&[1]]));

        let gs = sq_family();
        assert_eq!(gs.v, vec![mono(&[2, 0]), mono(&[1, 1]), mono(&[0, 2])]);
        assert_eq!(gs.k(), 1);

        let motzkin = poly("x^4*y^2 + x^2*y^4 - 3*x^2*y^2 + 1");
        let gs = build_gram_space(&motzkin, true).unwrap();
        assert_eq!(gs.v, vec![mono(&[0, 0]), mono(&[1, 1]), mono(&[2, 1]), mono(&[1, 2])]);
        assert_eq!(gs.k(), 0);
        assert_eq!(build_gram_space(&motzkin, false).unwrap().dim(), 10);
    }

    #[test]
    fn gram_space_errors() {
        assert_eq!(build_gram_space(&poly("x^3 + y^2"), true), Err(Error::OddDegree));
        assert_eq!(build_gram_space(&poly("x^2 - y^4"), true), Err(Error::OddDegree));
        assert_eq!(build_gram_space(&poly("x^2*y^2 + x*y + 1"), true).map(|g| g.k()), Ok(0));
        // 21 upper-triangle unknowns against 15 monomials of degree ≤ 4
        assert_eq!(build_gram_space(&poly("x^2*y^2 + x*y + 1"), false).map(|g| g.k()), Ok(6));
    }

    // vᵀ M(Y) v − f vanishes in Q[x, y, Y]
    fn gram_identity_holds(f: &MultiPoly, gs: &GramSpace) -> bool {
        let n = gs.nvars;
        let total = n + gs.k();
        let pm = gs.poly_matrix();
        let lift_y = |p: &MultiPoly| p.remap_vars(&(n..total).collect::<Vec<_>>(), total);
        let vx: Vec<MultiPoly> = gs.v.iter().map(|m| monomial_poly(n, m, int(1)).extend_vars(total)).collect();
        let mut acc = MultiPoly::zero(total);
        for i in 0..gs.dim() {
            for j in 0..gs.dim() {
                acc = &acc + &(&(&vx[i] * &vx[j]) * &lift_y(&pm[i][j]));
            }
        }
        (&acc - &f.extend_vars(total)).is_zero()
    }

    #[test]
    fn gram_identity_is_symbolic() {
        for src in ["x^4 + 2*x^2*y^2 + y^4", "x^2 + y^2", "x^4 - 2*x^3*y + 5*y^4 + x^2 + 1"] {
            let f = poly(src);
            for prune in [true, false] {
                let gs = build_gram_space(&f, prune).unwrap();
                assert!(gram_identity_holds(&f, &gs), "{src}");
                for m in &gs.basis {
                    assert!(m.is_symmetric());
                }
            }
        }
    }

    #[test]
    fn psd_formula_examples() {
        // M(Y) = [[Y, 0], [0, 1]]
        let gs = GramSpace {
            nvars: 2,
            v: vec![mono(&[1, 0]), mono(&[0, 1])],
            m0: RationalMatrix::from_ints(&[&[0, 0], &[0, 1]]),
            basis: vec![RationalMatrix::from_ints(&[&[1, 0], &[0, 0]])],
        };
        let phi = build_psd_formula(&gs).unwrap();
        let atoms: Vec<String> = phi.atoms().iter().map(|(p, r)| format!("{} {}", p.fmt_with(phi.vars()), r.symbol())).collect();
        assert_eq!(atoms, ["Y1 >=", "Y1 + 1 >="]);
        assert!(phi.evaluate(&[int(0)]).unwrap());
        assert!(!phi.evaluate(&[frac(-1, 3)]).unwrap());

        let id = GramSpace { basis: vec![], m0: RationalMatrix::identity(2), ..gs };
        let phi = build_psd_formula(&id).unwrap();
        let consts: Vec<Option<Rational>> = phi.atoms().iter().map(|(p, _)| p.constant_value()).collect();
        assert_eq!(consts, [Some(int(1)), Some(int(2))]);
        assert!(phi.evaluate(&[]).unwrap());
    }

    #[test]
    fn psd_set_of_square_family_is_an_interval() {
        // M(Y) = [[1, 0, 1 + Y/2], [0, −Y, 0], [1 + Y/2, 0, 1]], PSD on [−4, 0]
        let gs = sq_family();
        let phi = build_psd_formula(&gs).unwrap();
        for (y, want) in [(int(0), true), (int(-4), true), (int(-2), true), (frac(1, 100), false), (frac(-401, 100), false)] {
            assert_eq!(phi.evaluate(std::slice::from_ref(&y)).unwrap(), want, "{y}");
        }
    }

    #[test]
    fn extract_examples() {
        let v = [mono(&[1, 0]), mono(&[0, 1])];
        let c = extract_sos(&RationalMatrix::from_ints(&[&[2, 1], &[1, 2]]), &v, 2).unwrap();
        assert_eq!(c.terms, vec![(int(2), poly("x + 1/2*y")), (frac(3, 2), poly("y"))]);
        let c = extract_sos(&RationalMatrix::identity(2), &v, 2).unwrap();
        assert_eq!(c.terms, vec![(int(1), poly("x")), (int(1), poly("y"))]);
        let c = extract_sos(&RationalMatrix::from_ints(&[&[1, 1], &[1, 1]]), &v, 2).unwrap();
        assert_eq!(c.terms, vec![(int(1), poly("x + y"))]);
        assert_eq!(
            extract_sos(&RationalMatrix::from_ints(&[&[1, 2], &[2, 1]]), &v, 2),
            Err(Error::CertificateExtraction)
        );
    }

    #[test]
    fn check_reports_leading_mismatch() {
        let c = SOSCertificate { terms: vec![(int(1), poly("x + y"))] };
        assert_eq!(c.check(&poly("x^2 + 2*x*y + y^2")), Ok(()));
        match c.check(&poly("x^2 + y^2")) {
            Err(CertificateMismatch::Coefficient { monomial, expected, found }) => {
                assert_eq!((monomial, expected, found), (mono(&[1, 1]), int(0), int(2)));
            }
            other => panic!("{other:?}"),
        }
        let bad = SOSCertificate { terms: vec![(int(-1), poly("x"))] };
        assert_eq!(bad.check(&poly("-x^2")), Err(CertificateMismatch::NonPositiveWeight { index: 0 }));
    }

    fn decide_both(src: &str) -> Vec<SOSDecision> {
        [true, false]
            .into_iter()
            .map(|probe| decide_rational_sos_with(&poly(src), &SosOptions { probe, ..SosOptions::default() }).unwrap())
            .collect()
    }

    #[test]
    fn decision_examples() {
        for d in decide_both("x^2 + y^2") {
            let SOSDecision::SOSOverQ { certificate, .. } = d else { panic!("{d:?}") };
            assert_eq!(certificate.terms, vec![(int(1), poly("x")), (int(1), poly("y"))]);
        }
        for d in decide_both("x^4 + 2*x^2*y^2 + y^4") {
            let SOSDecision::SOSOverQ { certificate, .. } = d else { panic!("{d:?}") };
            assert_eq!(certificate.recompose(2), poly("x^4 + 2*x^2*y^2 + y^4"));
        }
        for src in ["x^4*y^2 + x^2*y^4 - 3*x^2*y^2 + 1", "x^2 - 1", "x^3", "x^2*y^2 - 4*x*y + 1"] {
            for d in decide_both(src) {
                assert_eq!(d, SOSDecision::NotSOSOverR, "{src}");
            }
        }
        let zero = decide_rational_sos(&MultiPoly::zero(2), true).unwrap();
        assert!(matches!(zero, SOSDecision::SOSOverQ { certificate, .. } if certificate.terms.is_empty()));
    }

    #[test]
    fn total_real_average() {
        // det [[Y, 1], [1, 4 − Y]] ≥ 0 on [2 − √3, 2 + √3]; the mean of the
        // endpoints is 2
        let gs = GramSpace {
            nvars: 2,
            v: vec![mono(&[1, 0]), mono(&[0, 1])],
            m0: RationalMatrix::from_ints(&[&[0, 1], &[1, 4]]),
            basis: vec![RationalMatrix::from_ints(&[&[1, 0], &[0, -1]])],
        };
        let phi = build_psd_formula(&gs).unwrap();
        let params = semialgebraic_solve(&phi, &EngineConfig::default()).unwrap();
        let quad = params.iter().find(|p| p.g.deg() == 2).expect("irrational endpoints");
        assert_eq!(quad.flagged.len(), 2);
        for iv in &quad.flagged {
            assert!(quad.satisfies_at(&phi, iv).unwrap());
        }
        let pt = total_real_point(std::slice::from_ref(quad), &phi).unwrap().unwrap();
        assert_eq!(pt.0, vec![int(2)]);
        assert!(rational_total_real_solve(&gs, &EngineConfig::default()).unwrap().is_some());
    }

    fn principal_minors_psd(m: &RationalMatrix) -> bool {
        let n = m.rows();
        (1u32..(1 << n)).all(|mask| {
            let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let rows = idx.iter().map(|&i| idx.iter().map(|&j| m[(i, j)].clone()).collect()).collect();
            !RationalMatrix::from_rows(rows).unwrap().det().unwrap().is_negative()
        })
    }

    #[test]
    fn face_without_interior_ends_within_budget() {
        // (x^2 − 1)^2 + (y^2 − 1)^2 vanishes at four points, so no Gram
        // matrix is definite and the probe cannot help; six Gram parameters
        // are beyond the exact search, which must stop on its budget
        let f = poly("(x^2 - 1)^2 + (y^2 - 1)^2");
        match decide_rational_sos(&f, true) {
            Err(Error::BudgetExhausted(_)) => {}
            Ok(SOSDecision::SOSOverQ { certificate, .. }) => assert_eq!(certificate.check(&f), Ok(())),
            other => panic!("{other:?}"),
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn psd_formula_matches_minors(num in -300i64..=300, den in 1i64..=100) {
            let gs = sq_family();
            let y = frac(num, den);
            let m = gs.matrix_at(std::slice::from_ref(&y)).unwrap();
            let phi = build_psd_formula(&gs).unwrap();
            let by_formula = phi.evaluate(&[y]).unwrap();
            prop_assert_eq!(by_formula, principal_minors_psd(&m));
            prop_assert_eq!(by_formula, ldlt_psd(&m).unwrap().is_psd());
        }

        // three dense squares plus the identity Gram term: the squares alone
        // can share a real zero (small coefficients make that common), which
        // leaves the Gram set without interior
        #[test]
        fn weighted_squares_round_trip(
            c in proptest::collection::vec(1i64..=9, 3),
            g in proptest::collection::vec(proptest::collection::vec(-9i64..=9, 6), 3),
        ) {
            let x = ["x".to_string(), "y".to_string()];
            let mut f = parse_polynomial_in("1 + x^2 + y^2 + x^4 + x^2*y^2 + y^4", &x).unwrap();
            for (ci, gi) in c.iter().zip(&g) {
                let src = format!("{}*x^2 + {}*x*y + {}*y^2 + {}*x + {}*y + {}", gi[0], gi[1], gi[2], gi[3], gi[4], gi[5]);
                let gp = parse_polynomial_in(&src, &x).unwrap();
                f = &f + &(&gp * &gp).scale(&int(*ci));
            }
            match decide_rational_sos(&f, true).unwrap() {
                SOSDecision::SOSOverQ { certificate, .. } => prop_assert_eq!(certificate.recompose(2), f),
                other => prop_assert!(false, "{:?}", other),
            }
        }
    }
}
