//! Exact size measures for symbolically defined subsets of the natural
//! numbers `ℕ = {1, 2, 3, …}`.
//!
//! Six ways of sizing a set are supported: cardinality, infinite lottery
//! valuations, natural density, the generalised-density hull,
//! α-numerosity (as a symbolic term algebra in `α`) and c-numerosity
//! (eventual comparison of counting sequences modulo the co-finite filter).
//!
//! Sets are written as [`SetExpr`] trees, usually via the small DSL in
//! [`dsl`]:
//!
//! ```
//! use nsize::{dsl, density};
//!
//! let evens = dsl::parse("mod 2 0").unwrap();
//! assert_eq!(density::natural_density(&evens).to_string(), "exact 1/2");
//! ```

pub mod alpha;
pub mod decimal;
pub mod density;
pub mod dsl;
mod error;
pub mod experiments;
pub mod numerosity;
pub mod par;
mod periodic;
pub mod primes;
pub mod scales;
pub mod seq;
pub mod set;

pub use alpha::AlphaExpr;
pub use error::{Error, Limits, Result};
pub use par::Execution;
pub use set::{BlockSchedule, Boundary, FinitenessClass, Parity, SetExpr};
