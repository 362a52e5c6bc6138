//! Relations and their alignments, downward primality, the one-step
//! extension operator with its greatest fixed point, total choice functions,
//! and the bottom-lifting construction that turns any inhabited predicate
//! into an approximable one.

use std::collections::BTreeSet;

use crate::closures::eng;
use crate::error::{Error, Result};
use crate::model::{
    mask_is_functional, CanonicalList, ListPredicate, RawList, Universe, UniverseRef,
};
use crate::pfun::PFun;

/// A relation between two finite universes, carried by their product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    product: UniverseRef,
    pairs: BTreeSet<(usize, usize)>,
}

impl Relation {
    pub fn new(
        left: &UniverseRef,
        right: &UniverseRef,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Relation> {
        let product = Universe::product_of(left, right)?;
        let pairs: BTreeSet<(usize, usize)> = pairs.into_iter().collect();
        for &(a, b) in &pairs {
            left.check_index(a)?;
            right.check_index(b)?;
        }
        Ok(Relation { product, pairs })
    }

    /// Same relation, carried by an explicitly given product universe.
    pub fn over_product(
        product: &UniverseRef,
        pairs: BTreeSet<(usize, usize)>,
    ) -> Result<Relation> {
        let (left, right) = product.as_product().ok_or_else(|| Error::NotProduct {
            universe: product.name().to_string(),
        })?;
        for &(a, b) in &pairs {
            left.check_index(a)?;
            right.check_index(b)?;
        }
        Ok(Relation {
            product: product.clone(),
            pairs,
        })
    }

    pub fn product(&self) -> &UniverseRef {
        &self.product
    }

    pub fn left(&self) -> &UniverseRef {
        self.product.as_product().expect("built from a product").0
    }

    pub fn right(&self) -> &UniverseRef {
        self.product.as_product().expect("built from a product").1
    }

    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(a, b))
    }
}

/// The alignment of `r`: a list belongs iff all of its pairs satisfy `r`.
pub fn positive_alignment(r: &Relation) -> ListPredicate {
    ListPredicate::alignment(r.clone())
}

/// The relation of singleton members: `(a, b)` belongs iff the one-pair list
/// does.
pub fn relation_of(t: &ListPredicate) -> Result<Relation> {
    let (left, right) = t.universe().as_product().ok_or_else(|| Error::NotProduct {
        universe: t.universe().name().to_string(),
    })?;
    let (lsize, rsize) = (left.size(), right.size());
    let mut pairs = BTreeSet::new();
    for a in 0..lsize {
        for b in 0..rsize {
            if t.member_mask(1 << (a * rsize + b)) {
                pairs.insert((a, b));
            }
        }
    }
    Relation::over_product(t.universe(), pairs)
}

/// Whether concatenation characterizes membership both ways: members
/// concatenate to members, and every splitting of a member is a pair of
/// members. On canonical lists this is closure of the member masks under
/// union together with downward closure under inclusion, which is exactly
/// what makes a predicate the alignment of its singleton relation.
pub fn is_downward_prime(t: &ListPredicate, cap: usize) -> Result<bool> {
    let n = t.universe().size();
    let members = t.member_masks(cap)?;
    for &m in &members {
        for a in 0..n {
            if m >> a & 1 == 1 && !t.member_mask(m & !(1 << a)) {
                return Ok(false);
            }
        }
    }
    for &m1 in &members {
        for &m2 in &members {
            if !t.member_mask(m1 | m2) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn check_product(t: &ListPredicate) -> Result<(UniverseRef, UniverseRef)> {
    let (left, right) = t.universe().as_product().ok_or_else(|| Error::NotProduct {
        universe: t.universe().name().to_string(),
    })?;
    Ok((left.clone(), right.clone()))
}

/// All partial-function-shaped masks over a product universe, ascending.
fn functional_masks(universe: &UniverseRef) -> Vec<u64> {
    (0..1u64 << universe.size())
        .filter(|&m| mask_is_functional(universe, m))
        .collect()
}

fn phi_filter(
    universe: &UniverseRef,
    floor: &dyn Fn(u64) -> bool,
    x: &BTreeSet<u64>,
) -> BTreeSet<u64> {
    let (left, right) = universe.as_product().expect("checked by callers");
    let (lsize, rsize) = (left.size(), right.size());
    let row = if rsize == 0 { 0 } else { (1u64 << rsize) - 1 };
    x.iter()
        .copied()
        .filter(|&m| {
            floor(m)
                && (0..lsize).all(|a| {
                    m >> (a * rsize) & row != 0
                        || (0..rsize).any(|b| x.contains(&(m | 1 << (a * rsize + b))))
                })
        })
        .collect()
}

/// One application of the extension operator: keep the members of `x` that
/// are in the restricted lifting of `t` and whose every fresh left component
/// extends by some pair back into `x`. Monotone in `x`.
pub fn phi_step(t: &ListPredicate, x: &[CanonicalList], cap: usize) -> Result<Vec<CanonicalList>> {
    check_product(t)?;
    let closure = eng(t, cap)?;
    let mut masks = BTreeSet::new();
    for c in x {
        t.universe().check_same(c.universe())?;
        masks.insert(c.mask());
    }
    let kept = phi_filter(t.universe(), &|m| closure.holds_mask(m), &masks);
    Ok(kept
        .into_iter()
        .map(|m| CanonicalList::from_mask(t.universe(), m))
        .collect())
}

fn approximation_masks(t: &ListPredicate, cap: usize) -> Result<BTreeSet<u64>> {
    check_product(t)?;
    let closure = eng(t, cap)?;
    let floor = |m: u64| closure.holds_mask(m);
    let mut x: BTreeSet<u64> = functional_masks(t.universe())
        .into_iter()
        .filter(|&m| floor(m))
        .collect();
    loop {
        let next = phi_filter(t.universe(), &floor, &x);
        if next == x {
            return Ok(x);
        }
        x = next;
    }
}

/// The greatest fixed point of the extension operator, as canonical lists in
/// ascending mask order, together with whether the empty list survived
/// (approximability).
pub fn approximation(t: &ListPredicate, cap: usize) -> Result<(Vec<CanonicalList>, bool)> {
    let gfp = approximation_masks(t, cap)?;
    let approximable = gfp.contains(&0);
    let lists = gfp
        .into_iter()
        .map(|m| CanonicalList::from_mask(t.universe(), m))
        .collect();
    Ok((lists, approximable))
}

/// Total choice function extracted by extending the empty list inside the
/// greatest fixed point, smallest left component first, then smallest right.
/// Absent exactly when `t` is not approximable.
pub fn choice_witness(t: &ListPredicate, cap: usize) -> Result<Option<PFun>> {
    let (left, right) = check_product(t)?;
    let gfp = approximation_masks(t, cap)?;
    if !gfp.contains(&0) {
        return Ok(None);
    }
    let rsize = right.size();
    let mut mask = 0u64;
    let mut table = Vec::with_capacity(left.size());
    for a in 0..left.size() {
        let b = (0..rsize)
            .find(|&b| gfp.contains(&(mask | 1 << (a * rsize + b))))
            .expect("fixed point members extend at every fresh left component");
        mask |= 1 << (a * rsize + b);
        table.push(Some(b));
    }
    Ok(Some(PFun::new(&left, &right, table)?))
}

/// Deletes the bottom-valued pairs of a list over `A x (B + bottom)` and
/// re-indexes the rest over `A x B`.
pub fn erase_bottom(u: &RawList) -> Result<RawList> {
    let (left, lifted) = u.universe().as_product().ok_or_else(|| Error::NotProduct {
        universe: u.universe().name().to_string(),
    })?;
    let base = lifted
        .as_bottom_extended()
        .ok_or_else(|| Error::NotBottomExtended {
            universe: lifted.name().to_string(),
        })?;
    let product = Universe::product_of(left, base)?;
    let bot = base.size();
    let lifted_width = lifted.size();
    let items = u
        .items()
        .iter()
        .filter_map(|&i| {
            let (a, c) = (i / lifted_width, i % lifted_width);
            (c != bot).then_some(a * base.size() + c)
        })
        .collect();
    RawList::new(&product, items)
}

/// Stage-by-stage lifting of `t` into `A x (B + bottom)`: each left component
/// in index order is given every value that keeps the erased list inside the
/// restricted lifting of `t`, or bottom when none does. The result is the
/// downward closure of all stage lists and is approximable whenever `t`
/// contains the empty list.
pub fn lift_bottom(t: &ListPredicate, cap: usize) -> Result<ListPredicate> {
    let (left, right) = check_product(t)?;
    let closure = eng(t, cap)?;
    let lifted = Universe::bottom_of(&right)?;
    let product = Universe::product_of(&left, &lifted)?;
    let rsize = right.size();
    let lifted_width = lifted.size();
    let bot = rsize;

    // Frontier entries carry the stage list (as flat pair indices over the
    // lifted product) and the mask of its erasure over the base product.
    let mut frontier: Vec<(Vec<usize>, u64)> = vec![(Vec::new(), 0)];
    let mut stage_lists: Vec<RawList> = vec![RawList::empty(&product)];
    for a in 0..left.size() {
        let mut next = Vec::new();
        for (items, erased) in &frontier {
            let mut extended = false;
            for b in 0..rsize {
                let candidate = erased | 1 << (a * rsize + b);
                if closure.holds_mask(candidate) {
                    let mut longer = items.clone();
                    longer.push(a * lifted_width + b);
                    next.push((longer, candidate));
                    extended = true;
                }
            }
            if !extended {
                let mut longer = items.clone();
                longer.push(a * lifted_width + bot);
                next.push((longer, *erased));
            }
        }
        for (items, _) in &next {
            stage_lists.push(RawList::new(&product, items.clone())?);
        }
        frontier = next;
    }
    ListPredicate::downward_closure(&product, stage_lists)
}
