//! Independent reference evaluators. Everything here recomputes a result by
//! direct definition unfolding (submask loops, exhaustive scans over all
//! functions or predicates) with no shared code path into the optimized
//! operations, so the fuzz runner and the test suites can cross-check the
//! two routes against each other.

use crate::error::Result;
use crate::model::{ListPredicate, SubsetPredicate, UniverseRef};
use crate::pfun::{pf_updates, PFun};
use crate::zorn::OrderedModel;

/// Universal lifting by definition: walk every submask of every subset.
pub fn eng_table(t: &ListPredicate, cap: usize) -> Result<Vec<bool>> {
    let ct = t.canonical_table(cap)?;
    let table = (0..ct.len() as u64)
        .map(|alpha| {
            let mut m = alpha;
            loop {
                if !ct[m as usize] {
                    return false;
                }
                if m == 0 {
                    return true;
                }
                m = (m - 1) & alpha;
            }
        })
        .collect();
    Ok(table)
}

/// Existential lifting by definition.
pub fn eng_exists_table(t: &ListPredicate, cap: usize) -> Result<Vec<bool>> {
    let ct = t.canonical_table(cap)?;
    let table = (0..ct.len() as u64)
        .map(|alpha| {
            let mut m = alpha;
            loop {
                if ct[m as usize] {
                    return true;
                }
                if m == 0 {
                    return false;
                }
                m = (m - 1) & alpha;
            }
        })
        .collect();
    Ok(table)
}

/// Maximal elements by scanning every subset and every one-element extension.
pub fn maximal_masks(p: &SubsetPredicate) -> Vec<u64> {
    let n = p.universe().size();
    (0..p.table().len() as u64)
        .filter(|&m| {
            p.holds_mask(m) && (0..n).all(|a| m >> a & 1 == 1 || !p.holds_mask(m | 1 << a))
        })
        .collect()
}

/// Maximal carrier elements of a strict order, by definition.
pub fn strict_maxima(m: &OrderedModel) -> Vec<usize> {
    let members = m.carrier().members();
    members
        .iter()
        .copied()
        .filter(|&a| members.iter().all(|&b| !m.lt_holds(a, b)))
        .collect()
}

/// Subchain truth table computed pair-by-pair from the order, bypassing the
/// grammar construction.
pub fn subchain_table(m: &OrderedModel, cap: usize) -> Result<Vec<bool>> {
    m.universe().check_cap(cap)?;
    let n = m.universe().size();
    let carrier = m.carrier().mask();
    let table = (0..1u64 << n)
        .map(|f| {
            if f & !carrier != 0 {
                return false;
            }
            let members: Vec<usize> = (0..n).filter(|&i| f >> i & 1 == 1).collect();
            members.iter().enumerate().all(|(i, &a)| {
                members[i + 1..]
                    .iter()
                    .all(|&b| m.lt_holds(a, b) || m.lt_holds(b, a))
            })
        })
        .collect();
    Ok(table)
}

/// Every partial function between the universes, in mixed-radix counter
/// order: `(|B|+1)^|A|` functions.
pub fn all_pfuns(domain: &UniverseRef, codomain: &UniverseRef) -> Vec<PFun> {
    let radix = codomain.size() + 1;
    let mut out = Vec::new();
    let mut digits = vec![0usize; domain.size()];
    loop {
        let table: Vec<Option<usize>> = digits
            .iter()
            .map(|&d| if d == 0 { None } else { Some(d - 1) })
            .collect();
        out.push(PFun::new(domain, codomain, table).expect("digits are in range"));
        let mut i = 0;
        loop {
            if i == digits.len() {
                return out;
            }
            digits[i] += 1;
            if digits[i] < radix {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Every total function between the universes: `|B|^|A|` functions.
pub fn all_total_functions(domain: &UniverseRef, codomain: &UniverseRef) -> Vec<PFun> {
    all_pfuns(domain, codomain)
        .into_iter()
        .filter(PFun::is_total)
        .collect()
}

/// Maximal partial choice functions for `t`, by exhaustive scan: the graph
/// satisfies the lifting oracle and every one-point extension leaves it.
pub fn maximal_partial_choice_functions(t: &ListPredicate, cap: usize) -> Result<Vec<PFun>> {
    let (domain, codomain) = t
        .universe()
        .as_product()
        .expect("choice oracles need a product universe");
    let closure = eng_table(t, cap)?;
    Ok(all_pfuns(domain, codomain)
        .into_iter()
        .filter(|f| {
            closure[f.graph_mask() as usize]
                && pf_updates(f)
                    .iter()
                    .all(|g| !closure[g.graph_mask() as usize])
        })
        .collect())
}

/// Total choice functions for `t`, by exhaustive scan over all totals.
pub fn total_choice_functions(t: &ListPredicate, cap: usize) -> Result<Vec<PFun>> {
    let (domain, codomain) = t
        .universe()
        .as_product()
        .expect("choice oracles need a product universe");
    let closure = eng_table(t, cap)?;
    Ok(all_total_functions(domain, codomain)
        .into_iter()
        .filter(|f| closure[f.graph_mask() as usize])
        .collect())
}

/// Brute-force witness search for finite character: does any explicit list
/// predicate lift to exactly `p`? Feasible for universes of size at most 4.
pub fn finite_character_by_search(p: &SubsetPredicate, cap: usize) -> Result<bool> {
    exists_lifting_to(p, cap, eng_table)
}

/// Dual brute-force search with the existential lifting.
pub fn open_by_search(p: &SubsetPredicate, cap: usize) -> Result<bool> {
    exists_lifting_to(p, cap, eng_exists_table)
}

fn exists_lifting_to(
    p: &SubsetPredicate,
    cap: usize,
    lift: fn(&ListPredicate, usize) -> Result<Vec<bool>>,
) -> Result<bool> {
    let n = p.universe().size();
    assert!(n <= 4, "witness search scans 2^(2^n) predicates");
    let slots = 1u64 << n;
    for bits in 0..1u64 << slots {
        let t =
            ListPredicate::explicit_masks(p.universe(), (0..slots).filter(|i| bits >> i & 1 == 1));
        if lift(&t, cap)? == p.table() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Subset, Universe};

    #[test]
    fn oracle_routes_agree_with_definitions_on_a_spot_check() {
        let b = Universe::boolean();
        let t = ListPredicate::explicit_masks(&b, [0b00, 0b10, 0b11]);
        assert_eq!(eng_table(&t, 16).unwrap(), vec![true, false, true, false]);
        // The empty list is a member, so every subset has a witness.
        assert_eq!(eng_exists_table(&t, 16).unwrap(), vec![true; 4]);
        let only_one = ListPredicate::explicit_masks(&b, [0b10]);
        assert_eq!(
            eng_exists_table(&only_one, 16).unwrap(),
            vec![false, false, true, true]
        );
        let p = SubsetPredicate::from_table(&b, vec![true, false, true, false]);
        assert_eq!(maximal_masks(&p), vec![0b10]);
    }

    #[test]
    fn pfun_enumeration_counts() {
        let a = Universe::boolean();
        let v = Universe::atomic("V", 1).unwrap();
        assert_eq!(all_pfuns(&a, &a).len(), 9);
        assert_eq!(all_total_functions(&a, &a).len(), 4);
        assert_eq!(all_pfuns(&a, &v).len(), 4);
    }

    #[test]
    fn strict_maxima_by_scan() {
        let u = Universe::atomic("U", 3).unwrap();
        let m = OrderedModel::new(&u, [(0, 1)], Subset::full(&u)).unwrap();
        assert_eq!(strict_maxima(&m), vec![1, 2]);
    }
}
