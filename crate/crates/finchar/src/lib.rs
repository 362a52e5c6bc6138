//! An executable finite-model workbench: closure operators between list
//! predicates and subset predicates, finite-character and openness decision
//! procedures, maximal-element extraction, order/chain reductions, maximal
//! partial choice functions, and greatest-fixed-point choice constructions,
//! all decidable by exhaustive enumeration on small universes and
//! cross-checked against brute-force oracles.
//!
//! Models are described either programmatically or in the line-oriented
//! `.fch` text format (see [`dsl`]); the `finchar` binary exposes every
//! check with deterministic text or JSON reports.

pub mod closures;
pub mod dsl;
pub mod error;
pub mod fuzz;
pub mod gdc;
pub mod maximality;
pub mod model;
pub mod oracle;
pub mod pfun;
pub mod report;
pub mod zorn;

pub use error::{Error, Result};
pub use model::{
    canonicalize, enumerate_subsets, hat, list_subseteq, lp_member, star, CanonicalList,
    ListPredicate, RawList, Subset, SubsetPredicate, Universe, UniverseKind, UniverseRef,
    DEFAULT_CAP, MAX_UNIVERSE_SIZE,
};
