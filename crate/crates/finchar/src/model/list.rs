use crate::error::Result;

use super::subset::Subset;
use super::universe::UniverseRef;

/// An ordered list of element indices, duplicates allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawList {
    universe: UniverseRef,
    items: Vec<usize>,
}

impl RawList {
    pub fn new(universe: &UniverseRef, items: Vec<usize>) -> Result<RawList> {
        for &i in &items {
            universe.check_index(i)?;
        }
        Ok(RawList {
            universe: universe.clone(),
            items,
        })
    }

    pub fn empty(universe: &UniverseRef) -> RawList {
        RawList {
            universe: universe.clone(),
            items: Vec::new(),
        }
    }

    pub fn universe(&self) -> &UniverseRef {
        &self.universe
    }

    pub fn items(&self) -> &[usize] {
        &self.items
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }
}

/// Sorted, duplicate-free representative of a list's element set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalList {
    universe: UniverseRef,
    items: Vec<usize>,
}

impl CanonicalList {
    pub fn from_mask(universe: &UniverseRef, mask: u64) -> CanonicalList {
        debug_assert!(mask >> universe.size() == 0);
        CanonicalList {
            universe: universe.clone(),
            items: (0..universe.size())
                .filter(|&i| mask >> i & 1 == 1)
                .collect(),
        }
    }

    pub fn universe(&self) -> &UniverseRef {
        &self.universe
    }

    pub fn items(&self) -> &[usize] {
        &self.items
    }

    pub fn mask(&self) -> u64 {
        self.items.iter().fold(0u64, |m, &i| m | 1 << i)
    }

    pub fn to_raw(&self) -> RawList {
        RawList {
            universe: self.universe.clone(),
            items: self.items.clone(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

/// Concatenation. The empty list is the identity and `star` is associative.
pub fn star(u: &RawList, v: &RawList) -> Result<RawList> {
    u.universe.check_same(v.universe())?;
    let mut items = u.items.clone();
    items.extend_from_slice(&v.items);
    Ok(RawList {
        universe: u.universe.clone(),
        items,
    })
}

/// `u ⊆ v`: every element occurring in `u` occurs in `v`.
pub fn list_subseteq(u: &RawList, v: &RawList) -> Result<bool> {
    u.universe.check_same(v.universe())?;
    Ok(hat(u).mask() & !hat(v).mask() == 0)
}

/// The set of elements occurring in the list.
pub fn hat(u: &RawList) -> Subset {
    let mask = u.items.iter().fold(0u64, |m, &i| m | 1 << i);
    Subset::from_mask(&u.universe, mask)
}

/// Sorted, duplicate-free list with the same element set. Idempotent.
pub fn canonicalize(u: &RawList) -> CanonicalList {
    CanonicalList::from_mask(&u.universe, hat(u).mask())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::model::Universe;

    fn raw(u: &UniverseRef, items: &[usize]) -> RawList {
        RawList::new(u, items.to_vec()).unwrap()
    }

    #[test]
    fn star_concatenates() {
        let b = Universe::boolean();
        let joined = star(&raw(&b, &[1, 0]), &raw(&b, &[1])).unwrap();
        assert_eq!(joined.items(), &[1, 0, 1]);
    }

    #[test]
    fn star_identity_and_associativity() {
        let b = Universe::boolean();
        let u = raw(&b, &[1, 0, 0]);
        assert_eq!(star(&RawList::empty(&b), &u).unwrap(), u);
        assert_eq!(star(&u, &RawList::empty(&b)).unwrap(), u);

        let (x, y, z) = (raw(&b, &[0]), raw(&b, &[1]), raw(&b, &[0, 1]));
        let left = star(&star(&x, &y).unwrap(), &z).unwrap();
        let right = star(&x, &star(&y, &z).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn star_rejects_mixed_universes() {
        let b = Universe::boolean();
        let t = Universe::atomic("T", 3).unwrap();
        assert!(matches!(
            star(&raw(&b, &[0]), &raw(&t, &[2])),
            Err(Error::UniverseMismatch { .. })
        ));
    }

    #[test]
    fn subseteq_is_element_wise() {
        let b = Universe::boolean();
        assert!(list_subseteq(&raw(&b, &[1, 1]), &raw(&b, &[1, 0])).unwrap());
        assert!(!list_subseteq(&raw(&b, &[0]), &raw(&b, &[1])).unwrap());
        for items in [&[][..], &[0][..], &[1, 0, 1][..]] {
            assert!(list_subseteq(&RawList::empty(&b), &raw(&b, items)).unwrap());
        }
    }

    #[test]
    fn hat_collects_occurring_elements() {
        let b = Universe::boolean();
        assert_eq!(hat(&raw(&b, &[1, 0, 1])).members(), vec![0, 1]);
        assert!(hat(&RawList::empty(&b)).is_empty());
        let u = raw(&b, &[1, 1, 0]);
        assert_eq!(hat(&canonicalize(&u).to_raw()), hat(&u));
    }

    #[test]
    fn canonicalize_sorts_and_dedups() {
        let b = Universe::boolean();
        assert_eq!(canonicalize(&raw(&b, &[1, 0, 1, 1])).items(), &[0, 1]);
        assert!(canonicalize(&RawList::empty(&b)).is_empty());

        let t = Universe::atomic("T", 3).unwrap();
        let c = canonicalize(&raw(&t, &[2, 2, 0]));
        assert_eq!(c.items(), &[0, 2]);
        assert_eq!(canonicalize(&c.to_raw()), c);
    }
}
