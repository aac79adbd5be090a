//! Exact arithmetic toolkit for the superelliptic equation `y^q = x^2 + ax + b`
//! with negative discriminant.
//!
//! The crate is organised bottom-up:
//!
//! - [`qint`]: the ring of integers of an imaginary quadratic field.
//! - [`classnum`]: class numbers by enumerating reduced binary quadratic forms.
//! - [`lucas`]: Lucas sequences, primitive prime divisors and the table of
//!   exceptional pairs for `4 < n <= 30`.
//! - [`bound`]: which prime exponents must be examined for a given polynomial.
//! - [`solver`]: the per-exponent solvers and their aggregation.
//! - [`sylvester`]: perfect powers in iterated quadratic sequences.

pub mod bound;
pub mod classnum;
mod error;
pub mod lucas;
pub mod poly;
pub mod qint;
pub mod quadratic;
pub mod solver;
pub mod sylvester;

pub use error::{Error, Result};
pub use quadratic::MonicQuadratic;
pub use solver::{Completeness, SearchVariable, Solution, SolutionSet, SolveOptions};

/// Default search bound used by the bounded solvers.
pub const DEFAULT_SEARCH_BOUND: u64 = 10_000;
