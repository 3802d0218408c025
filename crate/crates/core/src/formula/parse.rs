//! Text grammars: prefix s-expressions for formulas, infix for polynomials.
//! Variables are ordered naturally: alphabetic prefix first, then numeric
//! suffix by value, so `y2 < y10`.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{Formula, Node, Relation};
use crate::error::{Error, Result};
use crate::multipoly::MultiPoly;
use crate::rational::Rational;

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { pos, msg: msg.into() })
}

fn natural_key(name: &str) -> (&str, Option<BigInt>, &str) {
    let split = name.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let (prefix, digits) = name.split_at(split);
    (prefix, digits.parse::<BigInt>().ok(), name)
}

fn natural_cmp(a: &str, b: &str) -> Ordering {
    natural_key(a).cmp(&natural_key(b))
}

/// Sorts and deduplicates variable names in natural order.
pub fn natural_order(names: impl IntoIterator<Item = String>) -> Vec<String> {
    let mut v: Vec<String> = names.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    v.sort_by(|a, b| natural_cmp(a, b));
    v
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(|c| c.is_ascii_alphabetic()) && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_literal(s: &str) -> Option<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = |t: &str| !t.is_empty() && t.chars().all(|c| c.is_ascii_digit());
    let unsigned = num.strip_prefix('-').unwrap_or(num);
    if !digits(unsigned) || den.is_some_and(|d| !digits(d)) {
        return None;
    }
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.map_or(Some(BigInt::from(1)), |d| d.parse().ok())?;
    (!d.is_zero()).then(|| Rational::new(n, d))
}

// Polynomial expressions shared by both grammars; positions point into the
// source text.
#[derive(Debug)]
enum Expr {
    Num(Rational),
    Var(String, usize),
    Add(Vec<Expr>),
    Neg(Box<Expr>),
    Mul(Vec<Expr>),
    Pow(Box<Expr>, u32),
    Div(Box<Expr>, Box<Expr>, usize),
}

impl Expr {
    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var(v, _) => out.push(v.clone()),
            Expr::Add(es) | Expr::Mul(es) => es.iter().for_each(|e| e.collect_vars(out)),
            Expr::Neg(e) | Expr::Pow(e, _) => e.collect_vars(out),
            Expr::Div(a, b, _) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    fn build(&self, vars: &[String]) -> Result<MultiPoly> {
        let n = vars.len();
        Ok(match self {
            Expr::Num(q) => MultiPoly::constant(n, q.clone()),
            Expr::Var(v, pos) => match vars.iter().position(|x| x == v) {
                Some(i) => MultiPoly::var(n, i),
                None => return err(*pos, format!("unknown variable '{v}'")),
            },
            Expr::Add(es) => {
                let mut acc = MultiPoly::zero(n);
                for e in es {
                    acc = &acc + &e.build(vars)?;
                }
                acc
            }
            Expr::Mul(es) => {
                let mut acc = MultiPoly::one(n);
                for e in es {
                    acc = &acc * &e.build(vars)?;
                }
                acc
            }
            Expr::Neg(e) => -&e.build(vars)?,
            Expr::Pow(e, k) => e.build(vars)?.pow(*k),
            Expr::Div(a, b, pos) => {
                let d = b.build(vars)?;
                match d.constant_value() {
                    Some(c) if !c.is_zero() => a.build(vars)?.scale(&(Rational::from_integer(1.into()) / c)),
                    Some(_) => return err(*pos, "division by zero"),
                    None => return err(*pos, "division by a non-constant polynomial"),
                }
            }
        })
    }
}

// ---------- infix polynomials ----------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
    End,
}

fn lex_infix(src: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Num(src[start..i].parse().expect("digits")), start));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(src[start..i].to_string()), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else {
            let ch = src[i..].chars().next().unwrap();
            return err(i, format!("unexpected character '{ch}'"));
        }
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Infix {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Infix {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if t.0 != Tok::End {
            self.at += 1;
        }
        t
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Num(n) => format!("'{n}'"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Op(c) => format!("'{c}'"),
            Tok::End => "end of input".into(),
        }
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<Expr> {
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.bump();
                    terms.push(self.term()?);
                }
                Tok::Op('-') => {
                    self.bump();
                    terms.push(Expr::Neg(Box::new(self.term()?)));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::Add(terms) })
    }

    // term := unary (('*' | '/') unary)*
    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    acc = Expr::Mul(vec![acc, self.unary()?]);
                }
                Tok::Op('/') => {
                    let pos = self.bump().1;
                    let rhs = self.unary()?;
                    acc = Expr::Div(Box::new(acc), Box::new(rhs), pos);
                }
                _ => return Ok(acc),
            }
        }
    }

    // unary := '-' unary | '+' unary | power
    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Tok::Op('-') => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Tok::Op('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    // power := atom ('^' integer)?   (right operand must be a literal)
    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() != &Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        let (t, pos) = self.bump();
        match t {
            Tok::Num(n) => match n.to_u32() {
                Some(k) => Ok(Expr::Pow(Box::new(base), k)),
                None => err(pos, format!("exponent '{n}' is too large")),
            },
            other => err(pos, format!("expected a non-negative integer exponent, found {}", Self::describe(&other))),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let (t, pos) = self.bump();
        match t {
            Tok::Num(n) => Ok(Expr::Num(Rational::from_integer(n))),
            Tok::Ident(s) => Ok(Expr::Var(s, pos)),
            Tok::Op('(') => {
                let e = self.expr()?;
                match self.bump() {
                    (Tok::Op(')'), _) => Ok(e),
                    (other, p) => err(p, format!("expected ')', found {}", Self::describe(&other))),
                }
            }
            other => err(pos, format!("unexpected {}", Self::describe(&other))),
        }
    }
}

fn parse_infix_expr(src: &str) -> Result<Expr> {
    let mut p = Infix { toks: lex_infix(src)?, at: 0 };
    let e = p.expr()?;
    if p.peek() != &Tok::End {
        let pos = p.pos();
        let t = Infix::describe(p.peek());
        return err(pos, format!("unexpected {t} after a complete expression"));
    }
    Ok(e)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedPolynomial {
    pub vars: Vec<String>,
    pub poly: MultiPoly,
}

/// Parses an infix polynomial such as `x^4 + 2*x^2*y^2 - 1/3*y`; its
/// variables are those that occur, in natural order.
pub fn parse_polynomial(src: &str) -> Result<ParsedPolynomial> {
    let e = parse_infix_expr(src)?;
    let mut names = Vec::new();
    e.collect_vars(&mut names);
    let vars = natural_order(names);
    let poly = e.build(&vars)?;
    Ok(ParsedPolynomial { vars, poly })
}

/// Parses an infix polynomial over a fixed variable list.
pub fn parse_polynomial_in(src: &str, vars: &[String]) -> Result<MultiPoly> {
    parse_infix_expr(src)?.build(vars)
}

// ---------- s-expression formulas ----------

#[derive(Debug)]
enum Sexp {
    Atom(String, usize),
    List(Vec<Sexp>, usize),
}

impl Sexp {
    fn pos(&self) -> usize {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }
}

fn read_sexp(src: &str) -> Result<Sexp> {
    let mut stack: Vec<(Vec<Sexp>, usize)> = Vec::new();
    let mut done: Option<Sexp> = None;
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == b';' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        if done.is_some() && stack.is_empty() {
            return err(i, "unexpected input after a complete formula");
        }
        let item = match c {
            b'(' => {
                stack.push((Vec::new(), i));
                i += 1;
                continue;
            }
            b')' => {
                let Some((items, start)) = stack.pop() else {
                    return err(i, "unbalanced ')'");
                };
                i += 1;
                Sexp::List(items, start)
            }
            _ => {
                let start = i;
                while i < bytes.len() && !bytes[i].is_ascii_whitespace() && bytes[i] != b'(' && bytes[i] != b')' {
                    i += 1;
                }
                Sexp::Atom(src[start..i].to_string(), start)
            }
        };
        match stack.last_mut() {
            Some((items, _)) => items.push(item),
            None => done = Some(item),
        }
    }
    if let Some((_, start)) = stack.last() {
        return err(*start, "unclosed '('");
    }
    done.ok_or(Error::Parse { pos: src.len(), msg: "empty input".into() })
}

fn relation(op: &str) -> Option<Relation> {
    Some(match op {
        "=" => Relation::Eq,
        "!=" | "/=" | "distinct" => Relation::Ne,
        "<" => Relation::Lt,
        ">" => Relation::Gt,
        "<=" => Relation::Le,
        ">=" => Relation::Ge,
        _ => return None,
    })
}

enum Shape {
    Atom(Expr, Relation),
    And(Vec<Shape>),
    Or(Vec<Shape>),
    Not(Box<Shape>),
    Const(bool),
}

impl Shape {
    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Shape::Atom(e, _) => e.collect_vars(out),
            Shape::And(cs) | Shape::Or(cs) => cs.iter().for_each(|c| c.collect_vars(out)),
            Shape::Not(c) => c.collect_vars(out),
            Shape::Const(_) => {}
        }
    }

    fn build(&self, vars: &[String]) -> Result<Node> {
        Ok(match self {
            Shape::Atom(e, r) => Node::Atom(e.build(vars)?, *r),
            Shape::And(cs) => Node::And(cs.iter().map(|c| c.build(vars)).collect::<Result<_>>()?),
            Shape::Or(cs) => Node::Or(cs.iter().map(|c| c.build(vars)).collect::<Result<_>>()?),
            Shape::Not(c) => Node::Not(Box::new(c.build(vars)?)),
            Shape::Const(true) => Node::True,
            Shape::Const(false) => Node::False,
        })
    }
}

fn head(items: &[Sexp], pos: usize) -> Result<(&str, usize)> {
    match items.first() {
        Some(Sexp::Atom(s, p)) => Ok((s.as_str(), *p)),
        Some(other) => err(other.pos(), "expected an operator"),
        None => err(pos, "empty list"),
    }
}

fn formula_shape(s: &Sexp) -> Result<Shape> {
    match s {
        Sexp::Atom(a, p) => match a.as_str() {
            "true" => Ok(Shape::Const(true)),
            "false" => Ok(Shape::Const(false)),
            _ => err(*p, format!("expected a formula, found '{a}'")),
        },
        Sexp::List(items, pos) => {
            let (op, op_pos) = head(items, *pos)?;
            let args = &items[1..];
            match op {
                "and" | "or" => {
                    let cs = args.iter().map(formula_shape).collect::<Result<Vec<_>>>()?;
                    Ok(if op == "and" { Shape::And(cs) } else { Shape::Or(cs) })
                }
                "not" => match args {
                    [c] => Ok(Shape::Not(Box::new(formula_shape(c)?))),
                    _ => err(op_pos, "'not' takes exactly one argument"),
                },
                _ => match relation(op) {
                    Some(r) => match args {
                        [a, b] => {
                            let lhs = term(a)?;
                            let rhs = term(b)?;
                            Ok(Shape::Atom(Expr::Add(vec![lhs, Expr::Neg(Box::new(rhs))]), r))
                        }
                        _ => err(op_pos, format!("relation '{op}' takes exactly two arguments")),
                    },
                    None => err(op_pos, format!("unknown formula operator '{op}'")),
                },
            }
        }
    }
}

fn term(s: &Sexp) -> Result<Expr> {
    match s {
        Sexp::Atom(a, p) => {
            if let Some(q) = parse_literal(a) {
                Ok(Expr::Num(q))
            } else if is_ident(a) {
                Ok(Expr::Var(a.clone(), *p))
            } else {
                err(*p, format!("expected a number or variable, found '{a}'"))
            }
        }
        Sexp::List(items, pos) => {
            let (op, op_pos) = head(items, *pos)?;
            let args = items[1..].iter().map(term).collect::<Result<Vec<_>>>()?;
            match op {
                "+" => Ok(Expr::Add(args)),
                "*" => Ok(Expr::Mul(args)),
                "-" => {
                    let mut it = args.into_iter();
                    let Some(first) = it.next() else {
                        return err(op_pos, "'-' needs at least one argument");
                    };
                    let rest: Vec<Expr> = it.map(|e| Expr::Neg(Box::new(e))).collect();
                    if rest.is_empty() {
                        Ok(Expr::Neg(Box::new(first)))
                    } else {
                        Ok(Expr::Add(std::iter::once(first).chain(rest).collect()))
                    }
                }
                "^" => {
                    let exp = match &items[..] {
                        [_, _, Sexp::Atom(e, p)] => e
                            .parse::<u32>()
                            .map_err(|_| Error::Parse { pos: *p, msg: format!("bad exponent '{e}'") })?,
                        _ => return err(op_pos, "'^' takes a base and a non-negative integer exponent"),
                    };
                    let base = args.into_iter().next().unwrap();
                    Ok(Expr::Pow(Box::new(base), exp))
                }
                "/" => match <[Expr; 2]>::try_from(args) {
                    Ok([a, b]) => Ok(Expr::Div(Box::new(a), Box::new(b), op_pos)),
                    Err(_) => err(op_pos, "'/' takes exactly two arguments"),
                },
                _ => err(op_pos, format!("unknown arithmetic operator '{op}'")),
            }
        }
    }
}

/// Parses an s-expression formula; its variables are those that occur, in
/// natural order.
pub fn parse_formula(src: &str) -> Result<Formula> {
    let shape = formula_shape(&read_sexp(src)?)?;
    let mut names = Vec::new();
    shape.collect_vars(&mut names);
    let vars = natural_order(names);
    let root = shape.build(&vars)?;
    Formula::new(vars, root)
}
