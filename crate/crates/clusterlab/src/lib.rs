//! Exact cluster algebra computations: exchange matrices and quivers,
//! seed mutation with Laurent polynomial arithmetic, Y-patterns, exchange
//! graph exploration and the classical models built on them.

pub mod canon;
pub mod error;
pub mod gen;
pub mod matrix;
pub mod models;
pub mod poly;
pub mod quiver;
pub mod rational;
pub mod search;
pub mod seed;
pub mod sequences;
pub mod tp;
pub mod tropical;
pub mod ypattern;

pub use error::{Error, Result};
pub use matrix::ExchangeMatrix;
pub use poly::LaurentPolynomial;
pub use quiver::Quiver;
pub use rational::RationalFunction;
pub use tropical::TropicalMonomial;
