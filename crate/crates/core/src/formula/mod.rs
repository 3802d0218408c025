//! Quantifier-free formulas over polynomial sign conditions, and the
//! syntactic transformations the rational-point search applies to them.

mod parse;

pub use parse::{natural_order, parse_formula, parse_polynomial, parse_polynomial_in, ParsedPolynomial};

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::multipoly::MultiPoly;
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Eq,
    Ne,
    Lt,
    Gt,
    Le,
    Ge,
}

impl Relation {
    /// Whether a value of the given sign satisfies `value REL 0`.
    pub fn holds(self, sign: i8) -> bool {
        match self {
            Relation::Eq => sign == 0,
            Relation::Ne => sign != 0,
            Relation::Lt => sign < 0,
            Relation::Gt => sign > 0,
            Relation::Le => sign <= 0,
            Relation::Ge => sign >= 0,
        }
    }

    pub fn is_strict(self) -> bool {
        matches!(self, Relation::Ne | Relation::Lt | Relation::Gt)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Ne => "!=",
            Relation::Lt => "<",
            Relation::Gt => ">",
            Relation::Le => "<=",
            Relation::Ge => ">=",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Atom(MultiPoly, Relation),
    And(Vec<Node>),
    Or(Vec<Node>),
    Not(Box<Node>),
    True,
    False,
}

impl Node {
    pub fn atom(p: MultiPoly, rel: Relation) -> Node {
        Node::Atom(p, rel)
    }

    fn map_atoms(&self, f: &mut impl FnMut(&MultiPoly, Relation) -> Node) -> Node {
        match self {
            Node::Atom(p, r) => f(p, *r),
            Node::And(cs) => Node::And(cs.iter().map(|c| c.map_atoms(f)).collect()),
            Node::Or(cs) => Node::Or(cs.iter().map(|c| c.map_atoms(f)).collect()),
            Node::Not(c) => Node::Not(Box::new(c.map_atoms(f))),
            Node::True => Node::True,
            Node::False => Node::False,
        }
    }

    fn for_each_atom<'a>(&'a self, f: &mut impl FnMut(&'a MultiPoly, Relation)) {
        match self {
            Node::Atom(p, r) => f(p, *r),
            Node::And(cs) | Node::Or(cs) => cs.iter().for_each(|c| c.for_each_atom(f)),
            Node::Not(c) => c.for_each_atom(f),
            Node::True | Node::False => {}
        }
    }

    /// Three-valued evaluation: atoms whose sign is unknown make the result
    /// unknown unless the connectives decide it anyway.
    pub fn eval_partial(&self, sign: &mut impl FnMut(&MultiPoly) -> Option<i8>) -> Option<bool> {
        match self {
            Node::Atom(p, r) => sign(p).map(|s| r.holds(s)),
            Node::True => Some(true),
            Node::False => Some(false),
            Node::Not(c) => c.eval_partial(sign).map(|b| !b),
            Node::And(cs) => {
                let mut unknown = false;
                for c in cs {
                    match c.eval_partial(sign) {
                        Some(false) => return Some(false),
                        None => unknown = true,
                        Some(true) => {}
                    }
                }
                (!unknown).then_some(true)
            }
            Node::Or(cs) => {
                let mut unknown = false;
                for c in cs {
                    match c.eval_partial(sign) {
                        Some(true) => return Some(true),
                        None => unknown = true,
                        Some(false) => {}
                    }
                }
                (!unknown).then_some(false)
            }
        }
    }

    pub fn eval_with(&self, sign: &mut impl FnMut(&MultiPoly) -> i8) -> bool {
        self.eval_partial(&mut |p| Some(sign(p))).expect("all atoms decided")
    }

    fn fmt_sexpr(&self, names: &[String], out: &mut String) {
        match self {
            Node::Atom(p, r) => {
                out.push_str(&format!("({} {} 0)", r.symbol(), sexpr_poly(p, names)));
            }
            Node::And(cs) | Node::Or(cs) => {
                out.push_str(if matches!(self, Node::And(_)) { "(and" } else { "(or" });
                for c in cs {
                    out.push(' ');
                    c.fmt_sexpr(names, out);
                }
                out.push(')');
            }
            Node::Not(c) => {
                out.push_str("(not ");
                c.fmt_sexpr(names, out);
                out.push(')');
            }
            Node::True => out.push_str("true"),
            Node::False => out.push_str("false"),
        }
    }
}

fn sexpr_poly(p: &MultiPoly, names: &[String]) -> String {
    let terms: Vec<String> = p
        .terms()
        .rev()
        .map(|(m, c)| {
            let mut factors = Vec::new();
            let coef = rational::to_string(c);
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("(^ {} {})", names[i], e)),
                }
            }
            if factors.is_empty() {
                coef
            } else {
                let mut all = Vec::new();
                if coef != "1" {
                    all.push(coef);
                }
                all.extend(factors);
                if all.len() == 1 {
                    all.pop().unwrap()
                } else {
                    format!("(* {})", all.join(" "))
                }
            }
        })
        .collect();
    match terms.len() {
        0 => "0".into(),
        1 => terms[0].clone(),
        _ => format!("(+ {})", terms.join(" ")),
    }
}

/// A quantifier-free formula over an ordered list of named variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Formula {
    vars: Vec<String>,
    root: Node,
}

impl Formula {
    pub fn new(vars: Vec<String>, root: Node) -> Result<Self> {
        let n = vars.len();
        let mut bad = false;
        root.for_each_atom(&mut |p, _| bad |= p.nvars() != n);
        if bad {
            return Err(Error::Shape("atom polynomial ring does not match the variable list".into()));
        }
        Ok(Formula { vars, root })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    /// Distinct atom polynomials, in first-occurrence order.
    pub fn polynomials(&self) -> Vec<MultiPoly> {
        let mut out: Vec<MultiPoly> = Vec::new();
        self.root.for_each_atom(&mut |p, _| {
            if !out.contains(p) {
                out.push(p.clone());
            }
        });
        out
    }

    pub fn atoms(&self) -> Vec<(MultiPoly, Relation)> {
        let mut out = Vec::new();
        self.root.for_each_atom(&mut |p, r| out.push((p.clone(), r)));
        out
    }

    pub fn all_atoms_strict(&self) -> bool {
        let mut strict = true;
        self.root.for_each_atom(&mut |_, r| strict &= r.is_strict());
        strict
    }

    /// Max total degree over atoms.
    pub fn degree(&self) -> u32 {
        let mut d = 0;
        self.root.for_each_atom(&mut |p, _| d = d.max(p.total_degree()));
        d
    }

    /// `≥ → >`, `≤ → <`, `= → false`; other atoms unchanged. The result
    /// defines an open subset of the original set.
    pub fn open_relaxation(&self) -> Formula {
        let root = self.root.map_atoms(&mut |p, r| match r {
            Relation::Ge => Node::Atom(p.clone(), Relation::Gt),
            Relation::Le => Node::Atom(p.clone(), Relation::Lt),
            Relation::Eq => Node::False,
            _ => Node::Atom(p.clone(), r),
        });
        Formula { vars: self.vars.clone(), root }
    }

    /// Replaces variable `var` by `h` (given over the same variable list and
    /// free of `var`) and drops `var` from the variable list.
    pub fn substitute(&self, var: usize, h: &MultiPoly) -> Result<Formula> {
        if var >= self.nvars() {
            return Err(Error::InvalidSubstitution(format!("no variable with index {var}")));
        }
        if h.nvars() != self.nvars() {
            return Err(Error::Shape("substituted polynomial lives in a different ring".into()));
        }
        if h.uses_var(var) {
            return Err(Error::InvalidSubstitution(format!(
                "replacement for {} mentions {}",
                self.vars[var], self.vars[var]
            )));
        }
        let root = self
            .root
            .map_atoms(&mut |p, r| Node::Atom(p.substitute(var, h).remove_var(var), r));
        let mut vars = self.vars.clone();
        vars.remove(var);
        Ok(Formula { vars, root })
    }

    pub fn substitute_named(&self, var: &str, h: &MultiPoly) -> Result<Formula> {
        let i = self
            .var_index(var)
            .ok_or_else(|| Error::InvalidSubstitution(format!("unknown variable {var}")))?;
        self.substitute(i, h)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Scales every atom polynomial by a positive rational so its coefficients
    /// are coprime integers; relations are unchanged.
    pub fn remove_denominators(&self) -> Formula {
        let root = self
            .root
            .map_atoms(&mut |p, r| Node::Atom(p.primitive_positive_scaling().1, r));
        Formula { vars: self.vars.clone(), root }
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<bool> {
        if point.len() != self.nvars() {
            return Err(Error::Shape(format!(
                "point has {} coordinates, formula has {} variables",
                point.len(),
                self.nvars()
            )));
        }
        Ok(self.root.eval_with(&mut |p| rational::sign(&p.eval(point))))
    }

    /// The same formula over a longer variable list; `map[i]` is the new
    /// index of old variable `i`.
    pub fn embed(&self, vars: Vec<String>, map: &[usize]) -> Formula {
        let n = vars.len();
        let root = self.root.map_atoms(&mut |p, r| Node::Atom(p.remap_vars(map, n), r));
        Formula { vars, root }
    }

    pub fn to_sexpr(&self) -> String {
        let mut s = String::new();
        self.root.fmt_sexpr(&self.vars, &mut s);
        s
    }

    pub fn and(vars: Vec<String>, children: Vec<Node>) -> Result<Formula> {
        Formula::new(vars, Node::And(children))
    }

    pub fn is_trivially_false(&self) -> bool {
        matches!(self.root, Node::False)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sexpr())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Exists,
    Forall,
}

/// Prenex formula: the matrix is over `free ++ (block variables in order)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantifiedFormula {
    free: Vec<String>,
    blocks: Vec<(Quantifier, Vec<String>)>,
    matrix: Formula,
}

impl QuantifiedFormula {
    pub fn new(free: Vec<String>, blocks: Vec<(Quantifier, Vec<String>)>, matrix: Formula) -> Result<Self> {
        let mut all = free.clone();
        for (_, vs) in &blocks {
            for v in vs {
                if all.contains(v) {
                    return Err(Error::Shape(format!("variable {v} bound twice or both free and bound")));
                }
                all.push(v.clone());
            }
        }
        if all != matrix.vars {
            return Err(Error::Shape("matrix variables must be free ++ bound in block order".into()));
        }
        Ok(QuantifiedFormula { free, blocks, matrix })
    }

    pub fn free(&self) -> &[String] {
        &self.free
    }

    pub fn blocks(&self) -> &[(Quantifier, Vec<String>)] {
        &self.blocks
    }

    pub fn matrix(&self) -> &Formula {
        &self.matrix
    }

    /// Quantifier of each bound variable, innermost last.
    pub fn bound_quantifiers(&self) -> Vec<Quantifier> {
        self.blocks.iter().flat_map(|(q, vs)| std::iter::repeat_n(*q, vs.len())).collect()
    }
}

/// Whether `p` is the zero polynomial (constant atoms are common after
/// substitution).
pub fn is_zero_poly(p: &MultiPoly) -> bool {
    p.constant_value().is_some_and(|c| c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use proptest::prelude::*;

    fn y(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    fn c(n: usize, v: Rational) -> MultiPoly {
        MultiPoly::constant(n, v)
    }

    fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("y{i}")).collect()
    }

    #[test]
    fn open_relaxation_examples() {
        let f = Formula::new(names(1), Node::atom(y(1, 0), Relation::Ge)).unwrap();
        assert_eq!(f.open_relaxation().root, Node::atom(y(1, 0), Relation::Gt));
        let f = Formula::new(names(1), Node::atom(y(1, 0), Relation::Eq)).unwrap();
        assert_eq!(f.open_relaxation().root, Node::False);
        let disk = &y(1, 0).pow(2) - &c(1, int(2));
        let f = Formula::new(
            names(1),
            Node::And(vec![Node::atom(disk.clone(), Relation::Le), Node::atom(y(1, 0), Relation::Ge)]),
        )
        .unwrap();
        assert_eq!(
            f.open_relaxation().root,
            Node::And(vec![Node::atom(disk, Relation::Lt), Node::atom(y(1, 0), Relation::Gt)])
        );
    }

    #[test]
    fn substitute_examples() {
        let f = Formula::new(names(2), Node::atom(&y(2, 0) + &y(2, 1), Relation::Ge)).unwrap();
        let h = &c(2, int(1)) - &y(2, 0);
        let g = f.substitute(1, &h).unwrap();
        assert_eq!(g.vars(), &["y1".to_string()]);
        assert_eq!(g.root, Node::atom(MultiPoly::one(1), Relation::Ge));

        let f = Formula::new(names(2), Node::atom(&(&y(2, 0) * &y(2, 1)) - &c(2, int(1)), Relation::Eq)).unwrap();
        let g = f.substitute(0, &y(2, 1)).unwrap();
        assert_eq!(g.root, Node::atom(&y(1, 0).pow(2) - &c(1, int(1)), Relation::Eq));

        assert!(matches!(f.substitute(0, &y(2, 0)), Err(Error::InvalidSubstitution(_))));
    }

    #[test]
    fn remove_denominators_examples() {
        // y/2 - 1/3 >= 0  ->  3y - 2 >= 0
        let p = &y(1, 0).scale(&frac(1, 2)) - &c(1, frac(1, 3));
        let f = Formula::new(names(1), Node::atom(p, Relation::Ge)).unwrap();
        let expected = &y(1, 0).scale(&int(3)) - &c(1, int(2));
        assert_eq!(f.remove_denominators().root, Node::atom(expected, Relation::Ge));
        // never flips sign
        let f = Formula::new(names(1), Node::atom(y(1, 0).scale(&frac(-1, 4)), Relation::Gt)).unwrap();
        assert_eq!(f.remove_denominators().root, Node::atom(-&y(1, 0), Relation::Gt));
    }

    #[test]
    fn evaluate_examples() {
        let p = &y(1, 0).pow(2) - &c(1, int(2));
        let f = Formula::new(names(1), Node::atom(p, Relation::Le)).unwrap();
        assert!(f.evaluate(&[int(1)]).unwrap());
        assert!(!f.evaluate(&[frac(3, 2)]).unwrap());
        assert!(f.evaluate(&[int(1), int(2)]).is_err());

        let tangent = parse_formula("(and (>= (+ (* 3 y1) (* 4 y2)) 5) (<= (+ (^ y1 2) (^ y2 2)) 1))").unwrap();
        assert!(tangent.evaluate(&[frac(3, 5), frac(4, 5)]).unwrap());
    }

    fn arb_formula() -> impl Strategy<Value = Formula> {
        let rel = prop_oneof![
            Just(Relation::Eq),
            Just(Relation::Ne),
            Just(Relation::Lt),
            Just(Relation::Gt),
            Just(Relation::Le),
            Just(Relation::Ge)
        ];
        let poly = prop::collection::vec(((0u32..3, 0u32..3), -4i64..5), 1..4).prop_map(|ts| {
            MultiPoly::from_terms(2, ts.into_iter().map(|((a, b), c)| (vec![a, b], frac(c, 2))))
        });
        let atom = (poly, rel).prop_map(|(p, r)| Node::Atom(p, r));
        let node = atom.prop_recursive(3, 12, 3, |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 1..3).prop_map(Node::And),
                prop::collection::vec(inner.clone(), 1..3).prop_map(Node::Or),
            ]
        });
        node.prop_map(|n| Formula::new(names(2), n).unwrap())
    }

    fn arb_point() -> impl Strategy<Value = Vec<Rational>> {
        prop::collection::vec((-6i64..7, 1i64..4), 2).prop_map(|v| v.into_iter().map(|(a, b)| frac(a, b)).collect())
    }

    proptest! {
        #[test]
        fn open_relaxation_is_contained(f in arb_formula(), q in arb_point()) {
            if f.open_relaxation().evaluate(&q).unwrap() {
                prop_assert!(f.evaluate(&q).unwrap());
            }
        }

        #[test]
        fn remove_denominators_preserves_truth(f in arb_formula(), q in arb_point()) {
            prop_assert_eq!(f.remove_denominators().evaluate(&q).unwrap(), f.evaluate(&q).unwrap());
        }

        #[test]
        fn substitute_then_evaluate_matches_lift(f in arb_formula(), q in arb_point(), a in -3i64..4, b in -3i64..4) {
            // y2 := a*y1 + b
            let h = &y(2, 0).scale(&int(a)) + &c(2, int(b));
            let g = f.substitute(1, &h).unwrap();
            let lifted = vec![q[0].clone(), h.eval(&[q[0].clone(), int(0)])];
            prop_assert_eq!(g.evaluate(&q[..1]).unwrap(), f.evaluate(&lifted).unwrap());
        }
    }
}
