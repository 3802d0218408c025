//! Sampling of semi-algebraic sets: all sample points of a formula, and a
//! rational point of an open one.

use std::collections::HashMap;
use std::sync::Arc;

use super::cad::{Cad, Cell, Sample};
use super::field::Field;
use super::projection::Projection;
use super::{par_find_first, par_map, EngineConfig};
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::rational;
use crate::ratpoints::{RationalParametrization, RationalPoint};
use crate::roots::isolate_real_roots;
use crate::unipoly::UniPoly;

fn build_cad<'a>(phi: &'a Formula, cfg: &EngineConfig) -> Result<Cad<'a>> {
    cfg.budget.check_vars(phi.nvars())?;
    let proj = Projection::build(&phi.polynomials(), phi.nvars(), |_| false, &cfg.budget)?;
    Ok(Cad::new(proj, phi.root(), phi.nvars(), cfg.budget.clone(), cfg.parallel))
}

fn true_samples(cad: &Cad, cell: Cell) -> Result<Vec<Sample>> {
    match cad.partial_truth(&cell.sample) {
        Some(false) => Ok(Vec::new()),
        Some(true) => Ok(vec![cell.sample.padded(cad.nvars)]),
        None => {
            let children = cad.lift(&cell, false)?;
            let parts = par_map(cad.parallel, children, |c| true_samples(cad, c))?;
            Ok(parts.into_iter().flatten().collect())
        }
    }
}

/// Sample points of every cell of a decomposition adapted to `phi` on which
/// `phi` holds, as parametrizations grouped by primitive element. Each
/// parametrization flags exactly the real roots of `G` whose point satisfies
/// `phi`; an empty result means the set is empty.
pub fn semialgebraic_solve(phi: &Formula, cfg: &EngineConfig) -> Result<Vec<RationalParametrization>> {
    let phi = phi.remove_denominators();
    let cad = build_cad(&phi, cfg)?;
    let samples = true_samples(&cad, Cell::root())?;

    let mut order: Vec<(Arc<Field>, Vec<UniPoly>)> = Vec::new();
    let mut seen: HashMap<(UniPoly, Vec<UniPoly>), ()> = HashMap::new();
    for s in samples {
        let key = (s.field.monic().clone(), s.coords.clone());
        if seen.insert(key, ()).is_none() {
            order.push((s.field, s.coords));
        }
    }
    par_map(cfg.parallel, order, |(field, coords)| parametrize(&phi, &field, &coords))
}

fn parametrize(phi: &Formula, field: &Field, coords: &[UniPoly]) -> Result<RationalParametrization> {
    let g = field.theta().minpoly().clone();
    let q = rational::lcm_denominators(coords.iter().flat_map(|c| c.coeffs().iter()));
    let scale = rational::from_bigint(q.clone());
    let gs: Vec<UniPoly> = coords.iter().map(|c| c.scale(&scale)).collect();
    let mut param = RationalParametrization { g: g.clone(), q, coords: gs, flagged: Vec::new() };
    let candidates = if g.deg() == 1 {
        vec![field.theta().interval().clone()]
    } else {
        isolate_real_roots(&g)?
    };
    for iv in candidates {
        if param.satisfies_at(phi, &iv)? {
            param.flagged.push(iv);
        }
    }
    debug_assert!(!param.flagged.is_empty());
    Ok(param)
}

fn open_search(cad: &Cad, cell: Cell) -> Result<Option<Sample>> {
    match cad.partial_truth(&cell.sample) {
        Some(false) => Ok(None),
        Some(true) => Ok(Some(cell.sample.padded(cad.nvars))),
        None => {
            let children = cad.lift(&cell, true)?;
            par_find_first(cad.parallel, children, |c| open_search(cad, c))
        }
    }
}

/// A rational point of the open set defined by `phi` (strict atoms only), or
/// `None` when it is empty. Only full-dimensional cells are visited, so every
/// sample is rational.
pub fn rational_open_solve(phi: &Formula, cfg: &EngineConfig) -> Result<Option<RationalPoint>> {
    if !phi.all_atoms_strict() {
        return Err(Error::Shape("rational_open_solve takes strict atoms only".into()));
    }
    let phi = phi.remove_denominators();
    let cad = build_cad(&phi, cfg)?;
    let Some(sample) = open_search(&cad, Cell::root())? else {
        return Ok(None);
    };
    let point = sample
        .rational_coords()
        .ok_or_else(|| Error::InvariantViolation("sector sample is not rational".into()))?;
    if !phi.evaluate(&point)? {
        return Err(Error::InvariantViolation("open-cell sample fails the formula".into()));
    }
    Ok(Some(RationalPoint(point)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use crate::rational::{frac, int};
    use num_bigint::BigInt;
    use num_traits::One;

    fn cfg() -> EngineConfig {
        EngineConfig::default()
    }

    #[test]
    fn solve_single_rational_point() {
        let params = semialgebraic_solve(&parse_formula("(= y 1)").unwrap(), &cfg()).unwrap();
        assert_eq!(params.len(), 1);
        let p = &params[0];
        assert_eq!(p.g, UniPoly::from_ints(&[-1, 1]));
        assert_eq!(p.q, BigInt::one());
        assert_eq!(p.coords, vec![UniPoly::one()]);
        assert_eq!(p.flagged.len(), 1);
    }

    #[test]
    fn solve_flags_only_the_positive_root() {
        let params = semialgebraic_solve(&parse_formula("(and (= (^ y 2) 2) (> y 0))").unwrap(), &cfg()).unwrap();
        assert_eq!(params.len(), 1);
        let p = &params[0];
        assert_eq!(p.g, UniPoly::from_ints(&[-2, 0, 1]));
        assert_eq!(p.flagged.len(), 1);
        assert_eq!(p.root(&p.flagged[0]).cmp_rational(&int(0)), std::cmp::Ordering::Greater);
    }

    #[test]
    fn solve_empty_set() {
        assert!(semialgebraic_solve(&parse_formula("(< (^ y 2) 0)").unwrap(), &cfg()).unwrap().is_empty());
    }

    #[test]
    fn solve_tangent_point() {
        let phi = parse_formula("(and (<= (+ (^ y1 2) (^ y2 2)) 1) (>= (+ (* 3 y1) (* 4 y2)) 5))").unwrap();
        let params = semialgebraic_solve(&phi, &cfg()).unwrap();
        assert_eq!(params.len(), 1);
        let p = &params[0];
        assert_eq!(p.g.deg(), 1);
        let point = p.rational_point().unwrap();
        assert_eq!(point.0, vec![frac(3, 5), frac(4, 5)]);
    }

    #[test]
    fn open_solve_examples() {
        let phi = parse_formula("(and (> y 0) (< y 1))").unwrap();
        let q = rational_open_solve(&phi, &cfg()).unwrap().unwrap();
        assert!(phi.evaluate(&q.0).unwrap());
        assert!(rational_open_solve(&parse_formula("(and (> y 0) (< y 0))").unwrap(), &cfg()).unwrap().is_none());
        let disk = parse_formula("(< (+ (^ y1 2) (^ y2 2)) 1)").unwrap();
        let q = rational_open_solve(&disk, &cfg()).unwrap().unwrap();
        assert!(disk.evaluate(&q.0).unwrap());
        assert!(rational_open_solve(&parse_formula("(<= y 0)").unwrap(), &cfg()).is_err());
    }

    #[test]
    fn solve_curve_in_plane_flags_irrational_points() {
        // y1^2 = 2 and y2 = y1: two points (±√2, ±√2); only the positive one with y2 > 0
        let phi = parse_formula("(and (= (^ y1 2) 2) (= y2 y1) (> y2 0))").unwrap();
        let params = semialgebraic_solve(&phi, &cfg()).unwrap();
        let flagged: usize = params.iter().map(|p| p.flagged.len()).sum();
        assert_eq!(flagged, 1);
    }
}
