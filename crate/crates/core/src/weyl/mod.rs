//! Exact arithmetic and Groebner bases in the Weyl algebra and in free
//! modules over it, plus the commutative polynomial and rational function
//! types its operators act on.

mod element;
mod groebner;
mod linear;
mod order;
mod parse;
mod poly;
mod rational_function;

pub use element::WeylElement;
pub use groebner::{ideal_intersection, FreeSubmodule, LeftIdeal, ModuleElement};
pub use linear::{eliminate_linear, LinearSystem};
pub use order::{MonomialOrder, PositionOrder, TermOrder};
pub use parse::{parse_poly, parse_weyl};
pub use poly::{gcd, Poly};
pub use rational_function::RationalFunction;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("term orders differ")]
    OrderMismatch,
    #[error("linear system is underdetermined for the requested unknown")]
    Underdetermined,
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, WeylError>;
