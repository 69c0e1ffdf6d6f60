//! Exact series calculus for the Heisenberg Fock space of partitions.
//!
//! Every quantity is a truncated multivariate Laurent series with rational
//! coefficients ([`Series`]). On top of that ring the crate builds partition
//! combinatorics and symmetric-group characters, the bosonic Fock space with
//! its Heisenberg action, diagonal operators on the fixed-point (Schur)
//! basis, N-point correlators, q-traces with theta functions, and 2-Toda
//! tau functions. Each closed formula has an independent brute-force
//! counterpart, and the [`verify`] module cross-checks them exactly.

pub mod correlators;
pub mod error;
pub mod fock;
pub mod operators;
pub mod partitions;
pub mod rational;
pub mod series;
pub mod toda;
pub mod traces;
pub mod verify;

pub use error::{Error, Result};
pub use fock::{Basis, Coefficient, FockVector};
pub use partitions::{CharTable, Partition};
pub use rational::Rational;
pub use series::{DegreeCap, Series, VarSpec, Window};
