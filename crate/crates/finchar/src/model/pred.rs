use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::gdc::Relation;
use crate::zorn::OrderedModel;

use super::list::{hat, CanonicalList, RawList};
use super::subset::Subset;
use super::universe::{Universe, UniverseRef};

/// A finitely represented predicate on lists with set-semantics membership:
/// whether a list belongs depends only on the set of its elements, never on
/// order or duplication. Queries are canonicalized before evaluation, which
/// makes every representation below agree with the worked closure examples.
#[derive(Debug, Clone, PartialEq)]
pub struct ListPredicate {
    universe: UniverseRef,
    repr: Repr,
}

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    /// Canonical image of a finite set of lists, stored as element masks.
    Explicit(BTreeSet<u64>),
    /// Truth table on canonical lists, indexed by element mask.
    SetBased(Vec<bool>),
    /// Membership: the queried list's elements are covered by some stored list.
    DownwardClosure {
        lists: BTreeSet<Vec<usize>>,
        hulls: Vec<u64>,
    },
    /// Membership: every pair of the list satisfies the relation.
    Alignment(Relation),
    /// Membership: the list's element set is a subchain of the model's carrier.
    Subchains(OrderedModel),
    Complement(Box<ListPredicate>),
    /// Adapter over `A x unit`: drops the unit component (an index identity).
    DropUnit(Box<ListPredicate>),
    /// Adapter over a product: members must also be partial-function shaped.
    FunctionalOnly(Box<ListPredicate>),
}

impl ListPredicate {
    /// Explicit predicate; the given lists are canonicalized on construction.
    pub fn explicit(
        universe: &UniverseRef,
        lists: impl IntoIterator<Item = RawList>,
    ) -> Result<ListPredicate> {
        let mut masks = BTreeSet::new();
        for l in lists {
            universe.check_same(l.universe())?;
            masks.insert(hat(&l).mask());
        }
        Ok(ListPredicate {
            universe: universe.clone(),
            repr: Repr::Explicit(masks),
        })
    }

    /// Explicit predicate from canonical element masks.
    pub fn explicit_masks(
        universe: &UniverseRef,
        masks: impl IntoIterator<Item = u64>,
    ) -> ListPredicate {
        let masks: BTreeSet<u64> = masks.into_iter().collect();
        debug_assert!(masks.iter().all(|m| m >> universe.size() == 0));
        ListPredicate {
            universe: universe.clone(),
            repr: Repr::Explicit(masks),
        }
    }

    /// Table-backed predicate on canonical lists; `table[mask]` decides
    /// membership of the canonical list with that element mask.
    pub fn set_based(universe: &UniverseRef, table: Vec<bool>) -> ListPredicate {
        assert_eq!(
            table.len(),
            1usize << universe.size(),
            "set-based table must cover every canonical list"
        );
        ListPredicate {
            universe: universe.clone(),
            repr: Repr::SetBased(table),
        }
    }

    /// Downward closure of the given lists under element-wise inclusion.
    pub fn downward_closure(
        universe: &UniverseRef,
        lists: impl IntoIterator<Item = RawList>,
    ) -> Result<ListPredicate> {
        let mut stored = BTreeSet::new();
        for l in lists {
            universe.check_same(l.universe())?;
            stored.insert(l.items().to_vec());
        }
        let hulls = hull_masks(&stored);
        Ok(ListPredicate {
            universe: universe.clone(),
            repr: Repr::DownwardClosure {
                lists: stored,
                hulls,
            },
        })
    }

    pub fn alignment(relation: Relation) -> ListPredicate {
        ListPredicate {
            universe: relation.product().clone(),
            repr: Repr::Alignment(relation),
        }
    }

    pub fn subchains(model: OrderedModel) -> ListPredicate {
        ListPredicate {
            universe: model.universe().clone(),
            repr: Repr::Subchains(model),
        }
    }

    pub fn complement(self) -> ListPredicate {
        ListPredicate {
            universe: self.universe.clone(),
            repr: Repr::Complement(Box::new(self)),
        }
    }

    /// The predicate containing every list.
    pub fn all(universe: &UniverseRef) -> ListPredicate {
        ListPredicate::explicit_masks(universe, []).complement()
    }

    /// The empty predicate.
    pub fn none(universe: &UniverseRef) -> ListPredicate {
        ListPredicate::explicit_masks(universe, [])
    }

    /// Pullback along the projection `(A x unit)* -> A*`. Pair indices over
    /// `A x unit` coincide with element indices of `A`, so membership is an
    /// index-preserving delegation to the inner predicate.
    pub(crate) fn drop_unit(inner: ListPredicate) -> ListPredicate {
        let product = Universe::product_of(inner.universe(), &Universe::unit())
            .expect("a product with the unit universe has the same size");
        ListPredicate {
            universe: product,
            repr: Repr::DropUnit(Box::new(inner)),
        }
    }

    /// Restriction of a predicate over a product to partial-function-shaped
    /// lists (no two pairs sharing a left component).
    pub(crate) fn functional_only(inner: ListPredicate) -> Result<ListPredicate> {
        if inner.universe().as_product().is_none() {
            return Err(Error::NotProduct {
                universe: inner.universe().name().to_string(),
            });
        }
        Ok(ListPredicate {
            universe: inner.universe().clone(),
            repr: Repr::FunctionalOnly(Box::new(inner)),
        })
    }

    pub fn universe(&self) -> &UniverseRef {
        &self.universe
    }

    /// Set-semantics membership of a raw list.
    pub fn member(&self, u: &RawList) -> Result<bool> {
        self.universe.check_same(u.universe())?;
        Ok(self.member_mask(hat(u).mask()))
    }

    pub fn member_canonical(&self, u: &CanonicalList) -> Result<bool> {
        self.universe.check_same(u.universe())?;
        Ok(self.member_mask(u.mask()))
    }

    /// Whether the empty list belongs.
    pub fn contains_empty(&self) -> bool {
        self.member_mask(0)
    }

    /// Membership of the canonical list with the given element mask.
    pub fn member_mask(&self, mask: u64) -> bool {
        match &self.repr {
            Repr::Explicit(masks) => masks.contains(&mask),
            Repr::SetBased(table) => table[mask as usize],
            Repr::DownwardClosure { hulls, .. } => hulls.iter().any(|h| mask & !h == 0),
            Repr::Alignment(rel) => {
                let mut m = mask;
                while m != 0 {
                    let i = m.trailing_zeros() as usize;
                    let (a, b) = self
                        .universe
                        .split_index(i)
                        .expect("alignment universe is a product");
                    if !rel.contains(a, b) {
                        return false;
                    }
                    m &= m - 1;
                }
                true
            }
            Repr::Subchains(model) => model.is_subchain_mask(mask),
            Repr::Complement(inner) => !inner.member_mask(mask),
            Repr::DropUnit(inner) => inner.member_mask(mask),
            Repr::FunctionalOnly(inner) => {
                mask_is_functional(&self.universe, mask) && inner.member_mask(mask)
            }
        }
    }

    /// Membership table over all `2^size` canonical lists, indexed by mask.
    pub fn canonical_table(&self, cap: usize) -> Result<Vec<bool>> {
        self.universe.check_cap(cap)?;
        Ok((0..1u64 << self.universe.size())
            .map(|m| self.member_mask(m))
            .collect())
    }

    /// Extensional equality on canonical lists.
    pub fn table_eq(&self, other: &ListPredicate, cap: usize) -> Result<bool> {
        if self.universe != other.universe {
            return Ok(false);
        }
        Ok(self.canonical_table(cap)? == other.canonical_table(cap)?)
    }

    /// Masks of the member canonical lists, ascending.
    pub fn member_masks(&self, cap: usize) -> Result<Vec<u64>> {
        Ok(self
            .canonical_table(cap)?
            .iter()
            .enumerate()
            .filter(|(_, &v)| v)
            .map(|(m, _)| m as u64)
            .collect())
    }

    /// Stored lists of a downward-closure predicate, when that is the
    /// representation (used by the spec-file serializer).
    pub(crate) fn downward_lists(&self) -> Option<&BTreeSet<Vec<usize>>> {
        match &self.repr {
            Repr::DownwardClosure { lists, .. } => Some(lists),
            _ => None,
        }
    }

    /// Explicit canonical masks, when that is the representation.
    pub(crate) fn explicit_set(&self) -> Option<&BTreeSet<u64>> {
        match &self.repr {
            Repr::Explicit(masks) => Some(masks),
            _ => None,
        }
    }
}

/// Membership of a raw list in a list predicate (set semantics).
pub fn lp_member(t: &ListPredicate, u: &RawList) -> Result<bool> {
    t.member(u)
}

fn hull_masks(lists: &BTreeSet<Vec<usize>>) -> Vec<u64> {
    lists
        .iter()
        .map(|items| items.iter().fold(0u64, |m, &i| m | 1 << i))
        .collect()
}

/// Whether a mask over a product universe is partial-function shaped: each
/// left component appears in at most one pair.
pub(crate) fn mask_is_functional(universe: &Universe, mask: u64) -> bool {
    let Some((left, right)) = universe.as_product() else {
        return true;
    };
    let row = (1u64 << right.size()) - 1;
    (0..left.size()).all(|a| (mask >> (a * right.size()) & row).count_ones() <= 1)
}

/// An explicit truth table over all subsets of a universe. Extensional:
/// equality is table equality over structurally equal universes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetPredicate {
    universe: UniverseRef,
    table: Vec<bool>,
}

impl SubsetPredicate {
    pub fn from_table(universe: &UniverseRef, table: Vec<bool>) -> SubsetPredicate {
        assert_eq!(
            table.len(),
            1usize << universe.size(),
            "subset table must cover every subset"
        );
        SubsetPredicate {
            universe: universe.clone(),
            table,
        }
    }

    pub fn from_fn(
        universe: &UniverseRef,
        cap: usize,
        mut holds: impl FnMut(u64) -> bool,
    ) -> Result<SubsetPredicate> {
        universe.check_cap(cap)?;
        let table = (0..1u64 << universe.size()).map(&mut holds).collect();
        Ok(SubsetPredicate {
            universe: universe.clone(),
            table,
        })
    }

    /// The canonical table of a list predicate read as a predicate on
    /// subsets, through the bijection between subsets and canonical lists.
    pub fn from_list_table(t: &ListPredicate, cap: usize) -> Result<SubsetPredicate> {
        Ok(SubsetPredicate {
            universe: t.universe().clone(),
            table: t.canonical_table(cap)?,
        })
    }

    pub fn universe(&self) -> &UniverseRef {
        &self.universe
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    pub fn holds_mask(&self, mask: u64) -> bool {
        self.table[mask as usize]
    }

    pub fn holds(&self, subset: &Subset) -> Result<bool> {
        self.universe.check_same(subset.universe())?;
        Ok(self.holds_mask(subset.mask()))
    }

    pub fn complement(&self) -> SubsetPredicate {
        SubsetPredicate {
            universe: self.universe.clone(),
            table: self.table.iter().map(|v| !v).collect(),
        }
    }

    pub fn is_inhabited(&self) -> bool {
        self.table.iter().any(|&v| v)
    }

    pub fn count(&self) -> usize {
        self.table.iter().filter(|&&v| v).count()
    }

    /// Masks of the member subsets, ascending.
    pub fn true_masks(&self) -> impl Iterator<Item = u64> + '_ {
        self.table
            .iter()
            .enumerate()
            .filter(|(_, &v)| v)
            .map(|(m, _)| m as u64)
    }
}
