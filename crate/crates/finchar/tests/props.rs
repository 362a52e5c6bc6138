//! Property and exhaustive-invariant tests: the list algebra laws, canonical
//! membership semantics across every predicate representation, closure
//! directions of the liftings, the subsets-ordered-by-inclusion route to
//! maximal elements, and containment of fixed points in the greatest one.

use std::collections::BTreeSet;

use proptest::prelude::*;

use finchar::closures::{eng, eng_exists, is_finite_character, restrict};
use finchar::gdc::{approximation, phi_step, positive_alignment, Relation};
use finchar::maximality::{is_maximal, max_elements};
use finchar::model::{
    canonicalize, hat, list_subseteq, star, CanonicalList, ListPredicate, RawList, Subset,
    SubsetPredicate, Universe, UniverseRef,
};
use finchar::oracle;
use finchar::pfun::pfun_filter;
use finchar::zorn::{zorn_witness, OrderedModel};

const CAP: usize = 16;

fn raw(u: &UniverseRef, items: &[usize]) -> RawList {
    RawList::new(u, items.to_vec()).unwrap()
}

/// All raw lists over `u` with length at most `max_len`.
fn all_raw_lists(u: &UniverseRef, max_len: usize) -> Vec<RawList> {
    let n = u.size();
    let mut out = vec![RawList::empty(u)];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for items in &frontier {
            for a in 0..n {
                let mut longer = items.clone();
                longer.push(a);
                out.push(raw(u, &longer));
                next.push(longer);
            }
        }
        frontier = next;
    }
    out
}

proptest! {
    #[test]
    fn star_is_associative_with_identity(
        (n, xs, ys, zs) in (1..=4usize).prop_flat_map(|n| (
            Just(n),
            prop::collection::vec(0..n, 0..6),
            prop::collection::vec(0..n, 0..6),
            prop::collection::vec(0..n, 0..6),
        ))
    ) {
        let u = Universe::atomic("A", n).unwrap();
        let (x, y, z) = (raw(&u, &xs), raw(&u, &ys), raw(&u, &zs));
        let left = star(&star(&x, &y).unwrap(), &z).unwrap();
        let right = star(&x, &star(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        let e = RawList::empty(&u);
        prop_assert_eq!(&star(&e, &x).unwrap(), &x);
        prop_assert_eq!(&star(&x, &e).unwrap(), &x);
        // Concatenation merges element sets.
        prop_assert!(list_subseteq(&x, &left).unwrap());
        prop_assert_eq!(hat(&left).mask(), hat(&x).mask() | hat(&y).mask() | hat(&z).mask());
    }

    #[test]
    fn membership_ignores_order_and_duplication(
        (n, bits, items) in (1..=3usize).prop_flat_map(|n| (
            Just(n),
            0..1u64 << (1usize << n),
            prop::collection::vec(0..n, 0..8),
        ))
    ) {
        let u = Universe::atomic("A", n).unwrap();
        let slots = 1u64 << n;
        let t = ListPredicate::explicit_masks(&u, (0..slots).filter(|i| bits >> i & 1 == 1));
        let list = raw(&u, &items);
        let canon = canonicalize(&list).to_raw();
        prop_assert_eq!(t.member(&list).unwrap(), t.member(&canon).unwrap());
        let doubled = star(&list, &list).unwrap();
        prop_assert_eq!(t.member(&list).unwrap(), t.member(&doubled).unwrap());
    }
}

#[test]
fn membership_is_canonical_across_every_representation() {
    let u = Universe::atomic("U", 3).unwrap();
    let explicit = ListPredicate::explicit_masks(&u, [0b000, 0b010, 0b011, 0b110]);
    let down = ListPredicate::downward_closure(&u, [raw(&u, &[2, 0]), raw(&u, &[1])]).unwrap();
    let class = OrderedModel::new(&u, [(0, 1), (1, 2), (0, 2)], Subset::full(&u)).unwrap();
    let sub = ListPredicate::subchains(class);
    let comp = explicit.clone().complement();
    for t in [&explicit, &down, &sub, &comp] {
        // Every raw list up to twice the universe size.
        for list in all_raw_lists(&u, 6) {
            let canon = canonicalize(&list).to_raw();
            assert_eq!(t.member(&list).unwrap(), t.member(&canon).unwrap());
            assert_eq!(t.member(&list).unwrap(), t.member_mask(hat(&list).mask()));
        }
    }

    let b = Universe::boolean();
    let rel = Relation::new(&b, &b, [(0, 1), (1, 0)]).unwrap();
    let aligned = positive_alignment(&rel);
    let pu = aligned.universe().clone();
    let functional = pfun_filter(&aligned).unwrap();
    for t in [&aligned, &functional] {
        for list in all_raw_lists(&pu, 4) {
            let canon = canonicalize(&list).to_raw();
            assert_eq!(t.member(&list).unwrap(), t.member(&canon).unwrap());
        }
    }
}

#[test]
fn downward_closure_membership_depends_only_on_element_sets() {
    let u = Universe::atomic("U", 3).unwrap();
    let t = ListPredicate::downward_closure(&u, [raw(&u, &[0, 2]), raw(&u, &[1])]).unwrap();
    for list in all_raw_lists(&u, 6) {
        let expected = t.member_mask(hat(&list).mask());
        assert_eq!(t.member(&list).unwrap(), expected);
    }
}

#[test]
fn liftings_are_closed_in_their_directions() {
    for size in 1..=3usize {
        let u = Universe::atomic("U", size).unwrap();
        let slots = 1u64 << size;
        for bits in 0..1u64 << slots {
            let t = ListPredicate::explicit_masks(&u, (0..slots).filter(|i| bits >> i & 1 == 1));
            let p = eng(&t, CAP).unwrap();
            let q = eng_exists(&t, CAP).unwrap();
            assert_eq!(p.is_inhabited(), t.contains_empty());
            // Minimality holds for both liftings: restricting and lifting
            // again is the identity on images.
            assert_eq!(eng(&restrict(&p), CAP).unwrap(), p);
            assert_eq!(eng_exists(&restrict(&q), CAP).unwrap(), q);
            for m in p.true_masks() {
                for a in 0..size {
                    if m >> a & 1 == 1 {
                        assert!(p.holds_mask(m & !(1 << a)), "downward at {m:03b}");
                    }
                }
            }
            for m in q.true_masks() {
                for a in 0..size {
                    if m >> a & 1 == 0 {
                        assert!(q.holds_mask(m | 1 << a), "upward at {m:03b}");
                    }
                }
            }
        }
    }
}

/// The lifting of an inhabited predicate, seen as a carrier of subsets
/// ordered by strict inclusion, is inductive: every inclusion-chain inside
/// it has its union inside it. A maximal element then falls out of the
/// order-theoretic pipeline run on that meta-model.
#[test]
fn subset_order_route_to_maximal_elements() {
    for size in 1..=3usize {
        let u = Universe::atomic("U", size).unwrap();
        let slots = 1usize << size;
        let meta = Universe::atomic("PU", slots).unwrap();
        let inclusion: Vec<(usize, usize)> = (0..slots as u64)
            .flat_map(|m1| {
                (0..slots as u64)
                    .filter(move |&m2| m1 != m2 && m1 & !m2 == 0)
                    .map(move |m2| (m1 as usize, m2 as usize))
            })
            .collect();
        for bits in 0..1u64 << slots {
            let t =
                ListPredicate::explicit_masks(&u, (0..slots as u64).filter(|i| bits >> i & 1 == 1));
            if !t.contains_empty() {
                continue;
            }
            let p = eng(&t, CAP).unwrap();
            let members: Vec<u64> = p.true_masks().collect();

            // Union-closure of chains, checked over every family of members.
            for family_bits in 0..1u64 << members.len() {
                let family: Vec<u64> = members
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| family_bits >> i & 1 == 1)
                    .map(|(_, &m)| m)
                    .collect();
                let is_chain = family
                    .iter()
                    .all(|&x| family.iter().all(|&y| x & !y == 0 || y & !x == 0));
                if is_chain {
                    let union = family.iter().fold(0u64, |acc, &m| acc | m);
                    assert!(p.holds_mask(union), "union of a chain escaped the lifting");
                }
            }

            // The meta-model is inductive and its maximal element is one of
            // the lifting's maximal elements.
            let carrier = Subset::from_members(&meta, members.iter().map(|&m| m as usize)).unwrap();
            let model = OrderedModel::new(&meta, inclusion.iter().copied(), carrier).unwrap();
            assert!(finchar::zorn::is_inductive(&model, CAP).unwrap());
            let w = zorn_witness(&model, CAP).unwrap().expect("inductive");
            assert!(oracle::maximal_masks(&p).contains(&(w as u64)));
        }
    }
}

/// Any fixed point of the extension operator is contained in the greatest
/// one. Starting sets are seeded pseudo-random subsets of the carrier.
#[test]
fn fixed_points_sit_under_the_greatest_one() {
    use rand::{Rng, SeedableRng};
    let b = Universe::boolean();
    let prod = Universe::product_of(&b, &b).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    for bits in 0..1u32 << 16 {
        // Sample a quarter of the predicates to keep the walk brisk.
        if bits % 4 != 0 {
            continue;
        }
        let t = ListPredicate::explicit_masks(&prod, (0..16u64).filter(|i| bits >> i & 1 == 1));
        let (gfp, _) = approximation(&t, CAP).unwrap();
        let gfp_masks: BTreeSet<u64> = gfp.iter().map(CanonicalList::mask).collect();

        let closure = eng(&t, CAP).unwrap();
        let functional = pfun_filter(&t).unwrap();
        let carrier: Vec<u64> = (0..16u64)
            .filter(|&m| functional.member_mask(m) && closure.holds_mask(m))
            .collect();
        for _ in 0..2 {
            let start: Vec<CanonicalList> = carrier
                .iter()
                .filter(|_| rng.gen_bool(0.6))
                .map(|&m| CanonicalList::from_mask(&prod, m))
                .collect();
            let mut x = start;
            loop {
                let next = phi_step(&t, &x, CAP).unwrap();
                if next == x {
                    break;
                }
                x = next;
            }
            let fixed: BTreeSet<u64> = x.iter().map(CanonicalList::mask).collect();
            assert!(
                fixed.is_subset(&gfp_masks),
                "fixed point escapes the greatest one for bits {bits:016b}"
            );
        }
    }
}

/// Being partial-function shaped is itself a finite-character condition.
#[test]
fn functional_shape_is_finite_character() {
    for asize in 1..=2usize {
        for bsize in 1..=2usize {
            let a = Universe::atomic("A", asize).unwrap();
            let b = Universe::atomic("B", bsize).unwrap();
            let prod = Universe::product_of(&a, &b).unwrap();
            let q = pfun_filter(&ListPredicate::all(&prod)).unwrap();
            let p = eng(&q, CAP).unwrap();
            let (is_fc, witness) = is_finite_character(&p, CAP).unwrap();
            assert!(is_fc, "{asize}x{bsize}");
            assert!(witness.is_some());
        }
    }
}

/// Pointwise maximality agrees with the enumerated maximal set on every
/// subset-predicate table over universes of size up to three.
#[test]
fn maximality_test_agrees_with_enumeration() {
    for size in 1..=3usize {
        let u = Universe::atomic("U", size).unwrap();
        let slots = 1usize << size;
        for bits in 0..1u64 << slots {
            let table: Vec<bool> = (0..slots).map(|i| bits >> i & 1 == 1).collect();
            let p = SubsetPredicate::from_table(&u, table);
            let enumerated: Vec<u64> = max_elements(&p).iter().map(Subset::mask).collect();
            for m in 0..slots as u64 {
                let s = Subset::from_mask(&u, m);
                assert_eq!(is_maximal(&p, &s).unwrap(), enumerated.contains(&m));
            }
            assert_eq!(enumerated, oracle::maximal_masks(&p));
        }
    }
}

/// The two decision procedures agree with brute-force witness search on
/// every subset-predicate table over a two-element universe.
#[test]
fn openness_matches_brute_force_search() {
    let b = Universe::boolean();
    for bits in 0..16u64 {
        let table: Vec<bool> = (0..4).map(|i| bits >> i & 1 == 1).collect();
        let p = SubsetPredicate::from_table(&b, table);
        let direct = finchar::closures::is_open(&p, CAP).unwrap().0;
        let searched = oracle::open_by_search(&p, CAP).unwrap();
        assert_eq!(direct, searched, "table {bits:04b}");
    }
}
