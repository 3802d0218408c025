//! Quantifier elimination: decide quantified levels cell by cell, then
//! describe the true free cells by sign conditions on the free-level
//! projection polynomials.

use super::cad::{Cad, Cell};
use super::projection::Projection;
use super::{par_find_first, par_map, EngineConfig};
use crate::error::{Error, Result};
use crate::formula::{Formula, Node, QuantifiedFormula, Quantifier, Relation};
use crate::multipoly::MultiPoly;

struct Leaf {
    signs: Vec<Vec<i8>>,
    truth: bool,
}

impl Leaf {
    fn level(&self) -> usize {
        self.signs.len()
    }
}

struct Run<'a> {
    cad: Cad<'a>,
    nfree: usize,
    quantifiers: Vec<Quantifier>,
    truncate: bool,
}

impl Run<'_> {
    fn free_leaves(&self, cell: Cell) -> Result<Vec<Leaf>> {
        let level = cell.level();
        if self.truncate || level == self.nfree {
            if let Some(truth) = self.cad.partial_truth(&cell.sample) {
                return Ok(vec![Leaf { signs: cell.signs, truth }]);
            }
        }
        if level == self.nfree {
            let truth = self.decide(&cell)?;
            return Ok(vec![Leaf { signs: cell.signs, truth }]);
        }
        let children = self.cad.lift(&cell, false)?;
        let parts = par_map(self.cad.parallel, children, |c| self.free_leaves(c))?;
        Ok(parts.into_iter().flatten().collect())
    }

    fn decide(&self, cell: &Cell) -> Result<bool> {
        if let Some(t) = self.cad.partial_truth(&cell.sample) {
            return Ok(t);
        }
        let q = self.quantifiers[cell.level() - self.nfree];
        let children = self.cad.lift(cell, false)?;
        // a witness is a true child for ∃ and a false child for ∀
        let witness_truth = q == Quantifier::Exists;
        let found = par_find_first(self.cad.parallel, children, |c| {
            Ok((self.decide(&c)? == witness_truth).then_some(()))
        })?;
        Ok(found.is_some() == witness_truth)
    }
}

fn restrict(p: &MultiPoly, n: usize) -> MultiPoly {
    MultiPoly::from_terms(n, p.terms().map(|(m, c)| (m.0[..n].to_vec(), c.clone())))
}

/// Conjunctions describing the true leaves, or `None` when some true and
/// false leaf cannot be told apart by their signs.
fn describe(proj: &Projection, leaves: &[Leaf], names: &[String]) -> Option<Vec<Formula>> {
    let (trues, falses): (Vec<&Leaf>, Vec<&Leaf>) = leaves.iter().partition(|l| l.truth);
    for t in &trues {
        for u in &falses {
            let l = t.level().min(u.level());
            if t.signs[..l] == u.signs[..l] {
                return None;
            }
        }
    }
    let n = names.len();
    let mut out: Vec<Formula> = Vec::new();
    for t in trues {
        let atoms: Vec<(usize, usize, i8)> = t
            .signs
            .iter()
            .enumerate()
            .flat_map(|(lvl, ss)| ss.iter().enumerate().map(move |(i, &s)| (lvl, i, s)))
            .collect();
        let excludes = |a: &(usize, usize, i8), u: &Leaf| a.0 < u.level() && u.signs[a.0][a.1] != a.2;
        let mut count: Vec<usize> = falses.iter().map(|u| atoms.iter().filter(|a| excludes(a, u)).count()).collect();
        let mut keep = vec![true; atoms.len()];
        // drop atoms greedily, highest level first, while every false leaf
        // stays excluded
        for (ai, a) in atoms.iter().enumerate().rev() {
            let needed = falses.iter().zip(&count).any(|(u, &c)| c == 1 && excludes(a, u));
            if !needed {
                keep[ai] = false;
                for (u, c) in falses.iter().zip(count.iter_mut()) {
                    if excludes(a, u) {
                        *c -= 1;
                    }
                }
            }
        }
        let conj: Vec<Node> = atoms
            .iter()
            .zip(&keep)
            .filter(|(_, &k)| k)
            .map(|(&(lvl, i, s), _)| {
                let h = restrict(&proj.levels[lvl][i], n);
                match s {
                    0 => Node::Atom(h, Relation::Eq),
                    1 => Node::Atom(h, Relation::Gt),
                    _ => Node::Atom(-h, Relation::Gt),
                }
            })
            .collect();
        let f = Formula::new(names.to_vec(), Node::And(conj)).expect("free-level polynomials");
        if !out.contains(&f) {
            out.push(f);
        }
    }
    Some(out)
}

/// Quantifier-free conjunctions `Ψ_1..Ψ_I` over the free variables whose
/// disjunction is equivalent to `f`; each atom is `h = 0` or `h > 0`. An
/// empty list means `f` is false everywhere.
pub fn quantifier_elimination(f: &QuantifiedFormula, cfg: &EngineConfig) -> Result<Vec<Formula>> {
    let matrix = f.matrix().remove_denominators();
    let n = matrix.nvars();
    let nfree = f.free().len();
    cfg.budget.check_vars(n)?;
    let polys = matrix.polynomials();
    // derivative closure makes free cells sign-distinguishable; full lifting
    // of free levels removes the conservative truncation check
    for (augment, truncate) in [(false, true), (true, true), (true, false)] {
        let proj = Projection::build(&polys, n, |lvl| augment && lvl < nfree, &cfg.budget)?;
        let run = Run {
            cad: Cad::new(proj, matrix.root(), n, cfg.budget.clone(), cfg.parallel),
            nfree,
            quantifiers: f.bound_quantifiers(),
            truncate,
        };
        let leaves = run.free_leaves(Cell::root())?;
        if let Some(out) = describe(&run.cad.proj, &leaves, f.free()) {
            return Ok(out);
        }
    }
    Err(Error::InvariantViolation("free cells could not be separated by sign conditions".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use crate::rational::{frac, int, Rational};

    fn quantified(src: &str, free: &[&str], q: Quantifier, bound: &[&str]) -> QuantifiedFormula {
        let phi = parse_formula(src).unwrap();
        let order: Vec<String> = free.iter().chain(bound).map(|s| s.to_string()).collect();
        let map: Vec<usize> = phi.vars().iter().map(|v| order.iter().position(|o| o == v).unwrap()).collect();
        let m = phi.embed(order, &map);
        QuantifiedFormula::new(
            free.iter().map(|s| s.to_string()).collect(),
            vec![(q, bound.iter().map(|s| s.to_string()).collect())],
            m,
        )
        .unwrap()
    }

    fn holds(psis: &[Formula], point: &[Rational]) -> bool {
        psis.iter().any(|p| p.evaluate(point).unwrap())
    }

    fn shape_ok(psis: &[Formula]) {
        for p in psis {
            for (_, r) in p.atoms() {
                assert!(matches!(r, Relation::Eq | Relation::Gt));
            }
        }
    }

    #[test]
    fn discriminant() {
        let f = quantified("(= (+ (^ x 2) (* b x) c) 0)", &["b", "c"], Quantifier::Exists, &["x"]);
        let psis = quantifier_elimination(&f, &EngineConfig::default()).unwrap();
        shape_ok(&psis);
        for (b, c) in [(0, 0), (0, 1), (0, -1), (2, 1), (3, 2), (1, 1)] {
            let expect = b * b - 4 * c >= 0;
            assert_eq!(holds(&psis, &[int(b), int(c)]), expect, "b={b} c={c}");
        }
        assert!(!holds(&psis, &[frac(1, 2), frac(1, 8)]));
        assert!(holds(&psis, &[frac(1, 2), frac(1, 16)]));
    }

    #[test]
    fn universal_positivity() {
        let f = quantified("(> (+ (^ y 2) a) 0)", &["a"], Quantifier::Forall, &["y"]);
        let psis = quantifier_elimination(&f, &EngineConfig::default()).unwrap();
        shape_ok(&psis);
        assert_eq!(psis.len(), 1);
        assert!(holds(&psis, &[frac(1, 100)]));
        assert!(!holds(&psis, &[int(0)]));
        assert!(!holds(&psis, &[int(-1)]));
    }
}
