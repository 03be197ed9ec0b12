//! Computer algebra for noncommutative Novikov algebras: the free
//! associative differential algebra, the embedding of free algebras with
//! products `≺`, `≻` as its weight −1 part, finite-dimensional examples, and
//! the rewriting system presenting their differential associative envelopes.

pub mod basis;
pub mod dasterm;
pub mod diffalg;
pub mod envelope;
pub mod error;
pub mod experiments;
pub mod fdalgebra;
pub mod linalg;
pub mod parse;
pub mod rational;

pub use dasterm::{DasPoly, DasTerm, Op};
pub use diffalg::{Alphabet, DiffLetter, DiffMonomial, DiffPoly, Generator, Potential};
pub use error::{Error, Result};
pub use fdalgebra::{AssocDerAlgebra, DasAlgebra};
pub use rational::Rational;
