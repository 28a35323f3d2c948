//! Avoidability of the unary patterns `x π^i(x) π^j(x) π^k(x)` where `π`
//! ranges over morphic permutations.
//!
//! - [`words`]: letters, words, permutations, morphisms, fixed points and
//!   repetition scanners.
//! - [`params`]: the fourteen divisibility parameters and their equality
//!   representations.
//! - [`families`]: the ten rule-defined collections of unavoidable parameter
//!   sets, σ and the final classification.
//! - [`search`]: instance detection and backtracking search for long words
//!   avoiding a set of equality patterns.
//! - [`verify`]: bounded avoidance certificates for prefixes of morphic words.

pub mod error;
pub mod families;
pub mod params;
pub mod search;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
