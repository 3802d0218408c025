//! Exact rational points in convex semi-algebraic sets, and rational
//! sum-of-squares certificates.

pub mod engine;
pub mod error;
pub mod formula;
pub mod matrix;
pub mod multipoly;
pub mod rational;
pub mod ratpoints;
pub mod roots;
pub mod sos;
pub mod unipoly;

pub use engine::{quantifier_elimination, rational_open_solve, semialgebraic_solve, Budget, EngineConfig};
pub use error::{Error, Result};
pub use formula::{Formula, Node, QuantifiedFormula, Quantifier, Relation};
pub use matrix::{affine_solution_space, char_poly, ldlt_psd, AffineSpace, Ldlt, PsdVerdict, RationalMatrix};
pub use multipoly::{Monomial, MultiPoly};
pub use rational::Rational;
pub use ratpoints::{find_rational_points, generate_vectors, rational_zero_dim_solve, RationalParametrization, RationalPoint};
pub use roots::{AlgebraicNumber, Factorization, Interval};
pub use sos::{
    build_gram_space, build_psd_formula, decide_rational_sos, decide_rational_sos_with, extract_sos,
    rational_total_real_solve, totally_real_average, GramSpace, SOSCertificate, SOSDecision, SosOptions,
};
pub use unipoly::UniPoly;
