//! Rational points of convex semi-algebraic sets: sample, test the
//! zero-dimensional case, otherwise descend into a rational hyperplane that
//! contains every rational point of the set.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::engine::{quantifier_elimination, rational_open_solve, semialgebraic_solve, EngineConfig};
use crate::engine::internal::{Field, Sample};
use crate::error::{Error, Result};
use crate::formula::{Formula, Node, QuantifiedFormula, Quantifier, Relation};
use crate::multipoly::MultiPoly;
use crate::rational::{self, Rational};
use crate::roots::{factor_over_q, AlgebraicNumber, Interval, SturmSequence};
use crate::unipoly::UniPoly;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPoint(pub Vec<Rational>);

impl RationalPoint {
    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Largest bit length of any numerator or denominator.
    pub fn max_bit_length(&self) -> u64 {
        self.0.iter().map(rational::bit_length).max().unwrap_or(0)
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(rational::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Points `(1/q)(G_1(ϑ), …, G_m(ϑ))` for the real roots ϑ of `G`, with the
/// roots of interest isolated in `flagged`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalParametrization {
    /// Irreducible, primitive, positive leading coefficient.
    pub g: UniPoly,
    pub q: BigInt,
    /// Integer coefficients, each of degree below `deg g`.
    pub coords: Vec<UniPoly>,
    pub flagged: Vec<Interval>,
}

impl RationalParametrization {
    pub fn new(g: UniPoly, q: BigInt, coords: Vec<UniPoly>, flagged: Vec<Interval>) -> Result<Self> {
        if g.degree().is_none_or(|d| d == 0) {
            return Err(Error::InvariantViolation("G must be non-constant".into()));
        }
        if !g.is_integral() || !g.lc().is_positive() || g.primitive() != g {
            return Err(Error::InvariantViolation("G must be a primitive integer polynomial with positive leading coefficient".into()));
        }
        if factor_over_q(&g)?.factors.len() != 1 || factor_over_q(&g)?.factors[0].1 != 1 {
            return Err(Error::InvariantViolation("G must be irreducible".into()));
        }
        if !q.is_positive() {
            return Err(Error::InvariantViolation("q must be positive".into()));
        }
        for c in &coords {
            if !c.is_integral() || c.degree().is_some_and(|d| d >= g.deg()) {
                return Err(Error::InvariantViolation("coordinates must be integer polynomials of degree < deg G".into()));
            }
        }
        let sturm = SturmSequence::new(&g)?;
        for iv in &flagged {
            let ok = if iv.is_point() {
                g.eval(&iv.lo).is_zero()
            } else {
                !g.eval(&iv.lo).is_zero() && sturm.count(&iv.lo, &iv.hi) == 1
            };
            if !ok {
                return Err(Error::InvariantViolation("flagged interval does not isolate a root of G".into()));
            }
        }
        Ok(RationalParametrization { g, q, coords, flagged })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn root(&self, iv: &Interval) -> AlgebraicNumber {
        if iv.is_point() {
            AlgebraicNumber::from_rational(iv.lo.clone())
        } else {
            AlgebraicNumber::from_parts(self.g.clone(), iv.clone())
        }
    }

    pub(crate) fn sample_at(&self, iv: &Interval) -> Sample {
        let field = Field::from_algebraic(self.root(iv));
        let inv_q = rational::from_bigint(self.q.clone()).recip();
        let coords = self.coords.iter().map(|c| field.reduce(&c.scale(&inv_q))).collect();
        Sample { field: Arc::new(field), coords }
    }

    /// Whether the point at the root isolated by `iv` satisfies `phi`.
    pub fn satisfies_at(&self, phi: &Formula, iv: &Interval) -> Result<bool> {
        if phi.nvars() != self.dim() {
            return Err(Error::Shape(format!(
                "parametrization has {} coordinates, formula has {} variables",
                self.dim(),
                phi.nvars()
            )));
        }
        let s = self.sample_at(iv);
        Ok(phi.root().eval_with(&mut |p| s.sign(p)))
    }

    /// The encoded point when `G` is linear.
    pub fn rational_point(&self) -> Option<RationalPoint> {
        if self.g.deg() != 1 {
            return None;
        }
        let theta = -self.g.coeff(0) / self.g.coeff(1);
        let q = rational::from_bigint(self.q.clone());
        Some(RationalPoint(self.coords.iter().map(|c| c.eval(&theta) / &q).collect()))
    }
}

/// The point of a degree-one parametrization, when it satisfies `phi`.
pub fn rational_zero_dim_solve(param: &RationalParametrization, phi: &Formula) -> Option<RationalPoint> {
    let p = param.rational_point()?;
    phi.evaluate(&p.0).ok()?.then_some(p)
}

/// For a parametrization over `(A_1..A_k, B)`: the integer pairs `(a_i, b_i)`
/// of `T^i` coefficients, `i = 0..deg G − 1`.
pub fn generate_vectors(param: &RationalParametrization, k: usize) -> Result<Vec<(Vec<BigInt>, BigInt)>> {
    if param.dim() != k + 1 {
        return Err(Error::Shape(format!("expected {} coordinates (A_1..A_k, B), got {}", k + 1, param.dim())));
    }
    let int = |c: &UniPoly, i: usize| c.coeff(i).to_integer();
    Ok((0..param.g.deg())
        .map(|i| {
            let a = param.coords[..k].iter().map(|c| int(c, i)).collect();
            (a, int(&param.coords[k], i))
        })
        .collect())
}

/// `∀Y (¬Φ(Y) ∨ A·Y = B)` over free `(A_1..A_k, B)`.
fn hyperplane_formula(phi: &Formula) -> Result<QuantifiedFormula> {
    let k = phi.nvars();
    let n = 2 * k + 1;
    let mut free: Vec<String> = (1..=k).map(|i| format!("__a{i}")).collect();
    free.push("__b".into());
    let mut all = free.clone();
    all.extend(phi.vars().iter().cloned());
    let map: Vec<usize> = (0..k).map(|i| k + 1 + i).collect();
    let inner = phi.embed(all.clone(), &map);
    let mut lin = -&MultiPoly::var(n, k);
    for i in 0..k {
        lin = &lin + &(&MultiPoly::var(n, i) * &MultiPoly::var(n, k + 1 + i));
    }
    let root = Node::Or(vec![Node::Not(Box::new(inner.root().clone())), Node::Atom(lin, Relation::Eq)]);
    QuantifiedFormula::new(free, vec![(Quantifier::Forall, phi.vars().to_vec())], Formula::new(all, root)?)
}

/// A rational point of the set defined by `phi`, or `None` when it has none.
/// `None` is only meaningful when the set is convex; a returned point always
/// satisfies `phi`.
pub fn find_rational_points(phi: &Formula, cfg: &EngineConfig) -> Result<Option<RationalPoint>> {
    let k = phi.nvars();
    if k == 0 {
        return Ok(phi.evaluate(&[])?.then(|| RationalPoint(Vec::new())));
    }
    if let Some(p) = rational_open_solve(&phi.open_relaxation(), cfg)? {
        return Ok(Some(p));
    }
    let params = semialgebraic_solve(phi, cfg)?;
    if params.is_empty() {
        return Ok(None);
    }
    if let Some(p) = params.iter().find_map(|p| rational_zero_dim_solve(p, phi)) {
        return Ok(Some(p));
    }
    if k == 1 {
        return Ok(None);
    }

    let theta = hyperplane_formula(phi)?;
    let psis = quantifier_elimination(&theta, cfg)?;
    let mut sum_sq = MultiPoly::zero(k + 1);
    for i in 0..k {
        sum_sq = &sum_sq + &MultiPoly::var(k + 1, i).pow(2);
    }
    let mut hyper = None;
    for psi in psis {
        let mut conj = match psi.root() {
            Node::And(cs) => cs.clone(),
            other => vec![other.clone()],
        };
        conj.push(Node::Atom(sum_sq.clone(), Relation::Gt));
        let params = semialgebraic_solve(&Formula::new(psi.vars().to_vec(), Node::And(conj))?, cfg)?;
        if !params.is_empty() {
            hyper = Some(params);
            break;
        }
    }
    // a non-full-dimensional convex set lies in some hyperplane
    let params = hyper.ok_or(Error::ConvexitySuspect)?;
    let (a, b) = params
        .iter()
        .filter_map(|p| generate_vectors(p, k).ok())
        .flatten()
        .find(|(a, _)| a.iter().any(|x| !x.is_zero()))
        .ok_or_else(|| Error::InvariantViolation("hyperplane parametrization has A = 0".into()))?;

    let r = (0..k).rev().find(|&j| !a[j].is_zero()).expect("a is nonzero");
    let ar = rational::from_bigint(a[r].clone());
    let mut num = MultiPoly::constant(k, rational::from_bigint(b));
    for (j, aj) in a.iter().enumerate().take(r) {
        num = &num - &MultiPoly::var(k, j).scale(&rational::from_bigint(aj.clone()));
    }
    let h = num.scale(&ar.recip());
    let reduced = phi.substitute(r, &h)?.remove_denominators();
    let Some(sub) = find_rational_points(&reduced, cfg)? else {
        return Ok(None);
    };
    let mut point = sub.0;
    point.insert(r, Rational::zero());
    point[r] = h.eval(&point);
    if phi.evaluate(&point)? {
        Ok(Some(RationalPoint(point)))
    } else {
        Err(Error::ConvexitySuspect)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use crate::rational::{frac, int};

    fn param(g: &[i64], q: i64, coords: &[&[i64]]) -> RationalParametrization {
        let g = UniPoly::from_ints(g);
        let flagged = crate::roots::isolate_real_roots(&g).unwrap();
        RationalParametrization::new(g, q.into(), coords.iter().map(|c| UniPoly::from_ints(c)).collect(), flagged)
            .unwrap()
    }

    #[test]
    fn zero_dim_examples() {
        let tangent = parse_formula("(and (<= (+ (^ y1 2) (^ y2 2)) 1) (>= (+ (* 3 y1) (* 4 y2)) 5))").unwrap();
        let p = param(&[-1, 1], 5, &[&[3], &[4]]);
        assert_eq!(rational_zero_dim_solve(&p, &tangent).unwrap().0, vec![frac(3, 5), frac(4, 5)]);
        let p = param(&[-2, 0, 1], 1, &[&[0, 1], &[0, 1]]);
        assert!(rational_zero_dim_solve(&p, &tangent).is_none());
        let p = param(&[-1, 1], 1, &[&[0], &[0]]);
        assert!(rational_zero_dim_solve(&p, &tangent).is_none());
    }

    #[test]
    fn generate_vectors_examples() {
        let p = param(&[-1, 1], 1, &[&[3], &[4], &[5]]);
        assert_eq!(generate_vectors(&p, 2).unwrap(), vec![(vec![3.into(), 4.into()], 5.into())]);
        let p = param(&[-2, 0, 1], 1, &[&[0, 1], &[2], &[0, 1]]);
        assert_eq!(
            generate_vectors(&p, 2).unwrap(),
            vec![(vec![0.into(), 2.into()], 0.into()), (vec![1.into(), 0.into()], 1.into())]
        );
        let p = param(&[-1, 1], 1, &[&[0], &[0], &[7]]);
        assert!(generate_vectors(&p, 2).unwrap().iter().all(|(a, _)| a.iter().all(|x| x.is_zero())));
        assert!(matches!(generate_vectors(&p, 3), Err(Error::Shape(_))));
    }

    #[test]
    fn parametrization_invariants_are_checked() {
        let g = UniPoly::from_ints(&[-2, 0, 1]);
        assert!(RationalParametrization::new(g.clone(), 1.into(), vec![UniPoly::from_ints(&[0, 0, 1])], vec![]).is_err());
        assert!(RationalParametrization::new(UniPoly::from_ints(&[-1, 0, 1]), 1.into(), vec![], vec![]).is_err());
        let bad = Interval::new(int(-2), int(2));
        assert!(RationalParametrization::new(g, 1.into(), vec![], vec![bad]).is_err());
    }

    fn find(src: &str) -> Option<RationalPoint> {
        find_rational_points(&parse_formula(src).unwrap(), &EngineConfig::default()).unwrap()
    }

    #[test]
    fn find_examples() {
        assert_eq!(
            find("(and (<= (+ (^ y1 2) (^ y2 2)) 1) (>= (+ (* 3 y1) (* 4 y2)) 5))").unwrap().0,
            vec![frac(3, 5), frac(4, 5)]
        );
        assert!(find("(and (= (^ y 2) 2) (>= y 0))").is_none());
        let disk = parse_formula("(< (+ (^ y1 2) (^ y2 2)) 1)").unwrap();
        let p = find_rational_points(&disk, &EngineConfig::default()).unwrap().unwrap();
        assert!(disk.evaluate(&p.0).unwrap());
        assert!(find("(< (^ y 2) 0)").is_none());
    }

    #[test]
    fn find_on_degenerate_segment() {
        let phi = parse_formula("(and (<= (^ (- y1 y2) 2) 0) (<= (^ y1 2) 2))").unwrap();
        let p = find_rational_points(&phi, &EngineConfig::default()).unwrap().unwrap();
        assert_eq!(p.0[0], p.0[1]);
        assert!(phi.evaluate(&p.0).unwrap());
    }
}
