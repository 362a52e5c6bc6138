//! Finite universes, subsets, lists with their set-like algebra, and the
//! representations of predicates over lists and over subsets.

mod list;
mod pred;
mod subset;
mod universe;

pub use list::{canonicalize, hat, list_subseteq, star, CanonicalList, RawList};
pub(crate) use pred::mask_is_functional;
pub use pred::{lp_member, ListPredicate, SubsetPredicate};
pub use subset::{enumerate_subsets, Subset};
pub use universe::{Universe, UniverseKind, UniverseRef, DEFAULT_CAP, MAX_UNIVERSE_SIZE};
