//! A workbench for finite pseudo hoops.
//!
//! Algebras are stored as validated `⊙`, `→`, `⇝` tables ([`FiniteHoop`]). On top of
//! them the crate provides exhaustive enumeration of small models, filter theory
//! (prime filters, values, covers, quotients), the Riesz decomposition witnesses,
//! the equational basis for normal-valuedness together with its direct definition,
//! and a representation by order-preserving maps of a finite chain.

pub mod algebra;
pub mod cones;
pub mod elemset;
pub mod enumerate;
pub mod error;
pub mod filters;
pub mod format;
pub mod holland;
pub mod named;
pub mod normalvalued;
pub mod rdp;

/// Index of an element of a finite carrier, `0..size`.
pub type Elem = usize;

pub use algebra::{classify, validate, ClassFlags, FiniteHoop, Flag, HoopTables, Validation};
pub use elemset::{ElemSet, MAX_SIZE};
pub use error::{Error, InputError, Result};
pub use filters::Filter;
