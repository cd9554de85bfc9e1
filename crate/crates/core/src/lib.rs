//! Equality, normal forms, rewriting and Frobenius-algebra evaluation for
//! 3-dimensional bordisms between disjoint unions of 2-spheres.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod cospan;
pub mod diagram;
pub mod eval;
pub mod linmap;
pub mod normal;
pub mod parse;
pub mod rational;
pub mod rewrite;
pub mod search;
pub mod term;

pub use algebra::{AlgebraError, FrobeniusAlgebraSpec, IdempotentDecomposition, LAlgebra};
pub use cospan::{cospan_of_term, manifold_signature, terms_equal, CospanError, LabelledCospan};
pub use eval::{eval_semantic, eval_term, EvalError, ManifoldSpec};
pub use linmap::LinearMap;
pub use normal::{normalize_g1, normalize_g2, Presentation};
pub use parse::{parse, parse_pattern, SyntaxError};
pub use term::{print, Generator, MorphismType, PrimeLabel, Term, TermError};
pub use rewrite::{builtin_rules, RewriteRule, RuleSet, RuleSetName};
pub use search::{find_path, RewriteTrace, SearchOutcome};
