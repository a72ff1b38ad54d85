//! Trinomial data, the rings `k[Δ]` they define, and the lattice and monoid
//! machinery behind their gradings.
//!
//! Everything is exact: integers are `BigInt`, scalars are `BigRational`.

pub mod error;
pub mod grading;
pub mod json;
pub mod lattice;
pub mod monoid;
pub mod ring;
pub mod signature;
pub mod trinomial;

pub use error::Error;
