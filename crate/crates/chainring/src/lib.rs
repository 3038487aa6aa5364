//! Exact arithmetic for chain-supported monomial rings over tree posets, the
//! attached multigraded module and its Nagata idealizer, plus a lab of
//! finite-dimensional algebras for instance-testing flatness, intersection
//! flatness, content, and prime-extension criteria.
//!
//! Everything is computed over an exact field (rationals or GF(p)); all
//! enumerations carry explicit height and degree bounds, and every report is
//! byte-deterministic for a fixed configuration and seed.
//!
//! The `examples/` directory has one runnable walk-through per capability;
//! the `chainring` binary exposes the same suites as subcommands
//! (`verify-construction`, `finalg`, `enumerate`, `describe`).

pub mod error;
pub mod finalg;
pub mod idealizer;
pub mod module;
pub mod poset;
pub mod ring;
pub mod scalar;

pub use error::{Error, Result};
