//! Exact all-terminal reliability polynomials of multigraphs, their complex
//! roots, and Schur-Cohn certificates for roots outside the unit disk.
//!
//! ```
//! use relroots::{graph::Multigraph, reliability};
//!
//! let k3 = Multigraph::complete(3);
//! let rel = reliability::rel_bruteforce(&k3, reliability::DEFAULT_GUARD).unwrap();
//! assert_eq!(rel.to_string(), "1 - 3q^2 + 2q^3");
//! ```

#![allow(clippy::needless_range_loop)]

pub mod bigfloat;
pub mod binomial;
pub mod chip_firing;
pub mod closed_forms;
pub mod driver;
pub mod error;
pub mod graph;
pub mod poly;
pub mod reliability;
pub mod roots;
pub mod stability;
pub mod substitution;

pub use error::{Error, Result};
pub use graph::Multigraph;
pub use poly::{FVector, HVector, RatPoly};
