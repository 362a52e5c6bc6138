//! Closure operators between the list world and the subset world, plus the
//! finite-character and open-predicate decision procedures.

use crate::error::Result;
use crate::model::{ListPredicate, SubsetPredicate};

/// Universal lifting: a subset belongs iff every canonical list over its
/// elements belongs to `t`.
///
/// Computed by a subset-sum recurrence: a subset qualifies when its own
/// canonical list is a member and every one-element-smaller subset qualifies.
pub fn eng(t: &ListPredicate, cap: usize) -> Result<SubsetPredicate> {
    let ct = t.canonical_table(cap)?;
    let n = t.universe().size();
    let mut table = vec![false; ct.len()];
    for m in 0..ct.len() {
        let mut ok = ct[m];
        if ok {
            for a in 0..n {
                if m >> a & 1 == 1 && !table[m & !(1 << a)] {
                    ok = false;
                    break;
                }
            }
        }
        table[m] = ok;
    }
    Ok(SubsetPredicate::from_table(t.universe(), table))
}

/// Existential lifting: a subset belongs iff some canonical list over its
/// elements belongs to `t`.
pub fn eng_exists(t: &ListPredicate, cap: usize) -> Result<SubsetPredicate> {
    let ct = t.canonical_table(cap)?;
    let n = t.universe().size();
    let mut table = vec![false; ct.len()];
    for m in 0..ct.len() {
        let mut ok = ct[m];
        if !ok {
            for a in 0..n {
                if m >> a & 1 == 1 && table[m & !(1 << a)] {
                    ok = true;
                    break;
                }
            }
        }
        table[m] = ok;
    }
    Ok(SubsetPredicate::from_table(t.universe(), table))
}

/// Restriction of a subset predicate to lists: a list belongs iff its element
/// set satisfies `p`.
pub fn restrict(p: &SubsetPredicate) -> ListPredicate {
    ListPredicate::set_based(p.universe(), p.table().to_vec())
}

/// Decides whether `p` equals the universal lifting of its own restriction.
/// On success the restriction is returned as the minimal list-predicate
/// witness.
pub fn is_finite_character(
    p: &SubsetPredicate,
    cap: usize,
) -> Result<(bool, Option<ListPredicate>)> {
    let t = restrict(p);
    if eng(&t, cap)? == *p {
        Ok((true, Some(t)))
    } else {
        Ok((false, None))
    }
}

/// Dual decision: whether `p` equals the existential lifting of its own
/// restriction.
pub fn is_open(p: &SubsetPredicate, cap: usize) -> Result<(bool, Option<ListPredicate>)> {
    let t = restrict(p);
    if eng_exists(&t, cap)? == *p {
        Ok((true, Some(t)))
    } else {
        Ok((false, None))
    }
}

/// De Morgan bridge between the two liftings: the complement of the universal
/// lifting of `t` must equal the existential lifting of the complement of
/// `t`. A `false` return signals an implementation fault.
pub fn complement_duality_check(t: &ListPredicate, cap: usize) -> Result<bool> {
    let lhs = eng(t, cap)?.complement();
    let rhs = eng_exists(&t.clone().complement(), cap)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{RawList, Universe, UniverseRef};

    const CAP: usize = 16;

    fn raw(u: &UniverseRef, items: &[usize]) -> RawList {
        RawList::new(u, items.to_vec()).unwrap()
    }

    fn explicit(u: &UniverseRef, lists: &[&[usize]]) -> ListPredicate {
        ListPredicate::explicit(u, lists.iter().map(|l| raw(u, l))).unwrap()
    }

    fn true_masks(p: &SubsetPredicate) -> Vec<u64> {
        p.true_masks().collect()
    }

    #[test]
    fn eng_of_the_full_length_two_predicate_is_everything() {
        let b = Universe::boolean();
        let t = explicit(&b, &[&[1, 0], &[1], &[0], &[]]);
        assert_eq!(
            true_masks(&eng(&t, CAP).unwrap()),
            vec![0b00, 0b01, 0b10, 0b11]
        );
    }

    #[test]
    fn eng_without_the_empty_list_is_empty() {
        let b = Universe::boolean();
        let t = explicit(&b, &[&[1, 0], &[1], &[0]]);
        assert!(!eng(&t, CAP).unwrap().is_inhabited());
    }

    #[test]
    fn eng_keeps_only_the_empty_set_and_the_singleton_one() {
        let b = Universe::boolean();
        let t = explicit(&b, &[&[], &[1], &[1, 0]]);
        assert_eq!(true_masks(&eng(&t, CAP).unwrap()), vec![0b00, 0b10]);
    }

    #[test]
    fn eng_ignores_duplications_and_permutations() {
        let b = Universe::boolean();
        let t = explicit(&b, &[&[], &[1], &[1, 0]]);
        let t_prime = explicit(&b, &[&[], &[1], &[1, 1], &[0, 1], &[1, 0, 1, 1]]);
        assert_eq!(eng(&t, CAP).unwrap(), eng(&t_prime, CAP).unwrap());
    }

    #[test]
    fn eng_exists_of_a_singleton_requirement() {
        let n4 = Universe::atomic("N", 4).unwrap();
        let t = explicit(&n4, &[&[1]]);
        let p = eng_exists(&t, CAP).unwrap();
        // Exactly the 8 subsets containing element 1.
        assert_eq!(p.count(), 8);
        for m in p.true_masks() {
            assert_eq!(m >> 1 & 1, 1);
        }
    }

    #[test]
    fn eng_exists_with_the_empty_list_is_everything() {
        let b = Universe::boolean();
        let t = explicit(&b, &[&[]]);
        assert_eq!(eng_exists(&t, CAP).unwrap().count(), 4);
    }

    #[test]
    fn eng_exists_of_the_empty_predicate_is_empty() {
        let b = Universe::boolean();
        let t = ListPredicate::none(&b);
        assert!(!eng_exists(&t, CAP).unwrap().is_inhabited());
    }

    #[test]
    fn restrict_of_eng_gives_the_lists_over_one() {
        let b = Universe::boolean();
        let t = explicit(&b, &[&[], &[1], &[1, 0]]);
        let floor = restrict(&eng(&t, CAP).unwrap());
        assert!(floor.member(&RawList::empty(&b)).unwrap());
        assert!(floor.member(&raw(&b, &[1])).unwrap());
        assert!(floor.member(&raw(&b, &[1, 1, 1])).unwrap());
        assert!(!floor.member(&raw(&b, &[0])).unwrap());
        assert!(!floor.member(&raw(&b, &[1, 0])).unwrap());
    }

    #[test]
    fn restrict_of_eng_of_everything_is_all_lists() {
        let b = Universe::boolean();
        let t = explicit(&b, &[&[], &[1], &[0], &[1, 0]]);
        let floor = restrict(&eng(&t, CAP).unwrap());
        assert_eq!(floor.canonical_table(CAP).unwrap(), vec![true; 4]);
    }

    #[test]
    fn restrict_of_eng_exists_keeps_lists_containing_one() {
        let b = Universe::boolean();
        let t = explicit(&b, &[&[1]]);
        let floor = restrict(&eng_exists(&t, CAP).unwrap());
        assert!(floor.member(&raw(&b, &[1])).unwrap());
        assert!(floor.member(&raw(&b, &[0, 1, 0])).unwrap());
        assert!(!floor.member(&raw(&b, &[0])).unwrap());
        assert!(!floor.member(&RawList::empty(&b)).unwrap());
    }

    #[test]
    fn finite_character_accepts_the_closure_image() {
        let b = Universe::boolean();
        let p = SubsetPredicate::from_table(&b, vec![true, false, true, false]);
        let (is_fc, witness) = is_finite_character(&p, CAP).unwrap();
        assert!(is_fc);
        let w = witness.unwrap();
        assert!(w.member(&RawList::empty(&b)).unwrap());
        assert!(w.member(&raw(&b, &[1])).unwrap());
        assert!(!w.member(&raw(&b, &[0])).unwrap());
    }

    #[test]
    fn finite_character_rejects_a_singleton_without_the_empty_set() {
        let b = Universe::boolean();
        // {{1}}: the empty subset is forced in by the empty list.
        let p = SubsetPredicate::from_table(&b, vec![false, false, true, false]);
        let (is_fc, witness) = is_finite_character(&p, CAP).unwrap();
        assert!(!is_fc);
        assert!(witness.is_none());
        // The closure image is in fact empty.
        assert!(!eng(&restrict(&p), CAP).unwrap().is_inhabited());
    }

    #[test]
    fn finite_character_accepts_everything() {
        let b = Universe::boolean();
        let p = SubsetPredicate::from_table(&b, vec![true; 4]);
        assert!(is_finite_character(&p, CAP).unwrap().0);
    }

    #[test]
    fn open_accepts_the_upward_closed_singleton_requirement() {
        let b = Universe::boolean();
        // Subsets containing element 1.
        let p = SubsetPredicate::from_table(&b, vec![false, false, true, true]);
        let (open, witness) = is_open(&p, CAP).unwrap();
        assert!(open);
        let w = witness.unwrap();
        assert!(w.member(&raw(&b, &[1])).unwrap());
        assert!(!w.member(&raw(&b, &[0])).unwrap());
    }

    #[test]
    fn open_rejects_the_lone_empty_set() {
        let b = Universe::boolean();
        let p = SubsetPredicate::from_table(&b, vec![true, false, false, false]);
        let (open, witness) = is_open(&p, CAP).unwrap();
        assert!(!open);
        assert!(witness.is_none());
        // Upward closure fails: the image is all subsets.
        assert_eq!(eng_exists(&restrict(&p), CAP).unwrap().count(), 4);
    }

    #[test]
    fn open_accepts_everything() {
        let b = Universe::boolean();
        let p = SubsetPredicate::from_table(&b, vec![true; 4]);
        assert!(is_open(&p, CAP).unwrap().0);
    }

    #[test]
    fn duality_bridge_holds_on_the_worked_example() {
        let b = Universe::boolean();
        assert!(complement_duality_check(&explicit(&b, &[&[], &[1], &[1, 0]]), CAP).unwrap());
        assert!(complement_duality_check(&ListPredicate::all(&b), CAP).unwrap());
        assert!(complement_duality_check(&ListPredicate::none(&b), CAP).unwrap());
    }

    #[test]
    fn liftings_respect_the_cap() {
        let u = Universe::atomic("U", 6).unwrap();
        let t = ListPredicate::all(&u);
        assert!(matches!(
            eng(&t, 4),
            Err(crate::error::Error::CapExceeded { .. })
        ));
        assert!(matches!(
            eng_exists(&t, 4),
            Err(crate::error::Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn closure_image_is_inhabited_iff_the_empty_list_belongs() {
        let b = Universe::boolean();
        for bits in 0..16u64 {
            let t = ListPredicate::explicit_masks(&b, (0..4).filter(|i| bits >> i & 1 == 1));
            assert_eq!(
                eng(&t, CAP).unwrap().is_inhabited(),
                t.contains_empty(),
                "bits {bits:04b}"
            );
        }
    }
}
