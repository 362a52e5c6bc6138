use crate::error::Result;

use super::universe::UniverseRef;

/// An element set over a universe, the finite stand-in for a predicate on
/// elements. Equality is extensional: same universe shape, same members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subset {
    universe: UniverseRef,
    mask: u64,
}

impl Subset {
    pub fn empty(universe: &UniverseRef) -> Subset {
        Subset {
            universe: universe.clone(),
            mask: 0,
        }
    }

    pub fn full(universe: &UniverseRef) -> Subset {
        let mask = if universe.size() == 0 {
            0
        } else {
            (1u64 << universe.size()) - 1
        };
        Subset {
            universe: universe.clone(),
            mask,
        }
    }

    pub fn from_mask(universe: &UniverseRef, mask: u64) -> Subset {
        debug_assert!(mask >> universe.size() == 0, "mask out of range");
        Subset {
            universe: universe.clone(),
            mask,
        }
    }

    pub fn from_members(
        universe: &UniverseRef,
        members: impl IntoIterator<Item = usize>,
    ) -> Result<Subset> {
        let mut mask = 0u64;
        for m in members {
            universe.check_index(m)?;
            mask |= 1 << m;
        }
        Ok(Subset {
            universe: universe.clone(),
            mask,
        })
    }

    pub fn universe(&self) -> &UniverseRef {
        &self.universe
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains(&self, element: usize) -> bool {
        element < self.universe.size() && self.mask >> element & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    /// Members in ascending index order.
    pub fn members(&self) -> Vec<usize> {
        (0..self.universe.size())
            .filter(|&i| self.mask >> i & 1 == 1)
            .collect()
    }

    pub fn with_element(&self, element: usize) -> Subset {
        debug_assert!(element < self.universe.size());
        Subset {
            universe: self.universe.clone(),
            mask: self.mask | 1 << element,
        }
    }

    pub fn is_subset_of(&self, other: &Subset) -> Result<bool> {
        self.universe.check_same(other.universe())?;
        Ok(self.mask & !other.mask == 0)
    }
}

/// All `2^size` subsets in ascending binary-value order of their member masks.
pub fn enumerate_subsets(universe: &UniverseRef, cap: usize) -> Result<Vec<Subset>> {
    universe.check_cap(cap)?;
    Ok((0..1u64 << universe.size())
        .map(|m| Subset::from_mask(universe, m))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::model::Universe;

    #[test]
    fn boolean_universe_has_four_subsets() {
        let b = Universe::boolean();
        let all = enumerate_subsets(&b, 16).unwrap();
        let members: Vec<Vec<usize>> = all.iter().map(Subset::members).collect();
        assert_eq!(members, vec![vec![], vec![0], vec![1], vec![0, 1]]);
    }

    #[test]
    fn empty_universe_has_exactly_the_empty_subset() {
        let z = Universe::atomic("Z", 0).unwrap();
        let all = enumerate_subsets(&z, 16).unwrap();
        assert_eq!(all.len(), 1);
        assert!(all[0].is_empty());
    }

    #[test]
    fn size_three_enumeration_has_no_repeats() {
        let u = Universe::atomic("U", 3).unwrap();
        let all = enumerate_subsets(&u, 16).unwrap();
        assert_eq!(all.len(), 8);
        for (i, s) in all.iter().enumerate() {
            assert_eq!(s.mask(), i as u64);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let u = Universe::atomic("U", 5).unwrap();
        assert!(matches!(
            enumerate_subsets(&u, 4),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn member_range_is_checked() {
        let b = Universe::boolean();
        assert!(Subset::from_members(&b, [2]).is_err());
        let s = Subset::from_members(&b, [1, 1, 0]).unwrap();
        assert_eq!(s.members(), vec![0, 1]);
    }
}
