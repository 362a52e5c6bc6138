//! Strict orders with carriers, chains and inductive sets, maximal-element
//! extraction through the greedy witness pipeline, and the list-of-chains
//! grammar with its reconstruction of the underlying order.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::maximality::ttl_witness;
use crate::model::{ListPredicate, RawList, Subset, UniverseRef};

/// A strict order together with a carrier subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedModel {
    universe: UniverseRef,
    lt: BTreeSet<(usize, usize)>,
    carrier: Subset,
}

impl OrderedModel {
    /// Validates irreflexivity and transitivity on construction.
    pub fn new(
        universe: &UniverseRef,
        lt: impl IntoIterator<Item = (usize, usize)>,
        carrier: Subset,
    ) -> Result<OrderedModel> {
        universe.check_same(carrier.universe())?;
        let lt: BTreeSet<(usize, usize)> = lt.into_iter().collect();
        for &(a, b) in &lt {
            universe.check_index(a)?;
            universe.check_index(b)?;
            if a == b {
                return Err(Error::NotStrictOrder {
                    reason: format!("{a} < {a} is reflexive"),
                });
            }
        }
        for &(a, b) in &lt {
            for &(b2, c) in lt.range((b, 0)..(b + 1, 0)) {
                debug_assert_eq!(b, b2);
                if !lt.contains(&(a, c)) {
                    return Err(Error::NotStrictOrder {
                        reason: format!("{a} < {b} and {b} < {c} but not {a} < {c}"),
                    });
                }
            }
        }
        Ok(OrderedModel {
            universe: universe.clone(),
            lt,
            carrier,
        })
    }

    pub fn universe(&self) -> &UniverseRef {
        &self.universe
    }

    pub fn lt(&self) -> &BTreeSet<(usize, usize)> {
        &self.lt
    }

    pub fn carrier(&self) -> &Subset {
        &self.carrier
    }

    pub fn lt_holds(&self, a: usize, b: usize) -> bool {
        self.lt.contains(&(a, b))
    }

    /// Reflexive closure of the strict order.
    pub fn le(&self, a: usize, b: usize) -> bool {
        a == b || self.lt_holds(a, b)
    }

    pub(crate) fn is_subchain_mask(&self, mask: u64) -> bool {
        if mask & !self.carrier.mask() != 0 {
            return false;
        }
        let members: Vec<usize> = (0..self.universe.size())
            .filter(|&i| mask >> i & 1 == 1)
            .collect();
        members.iter().enumerate().all(|(i, &a)| {
            members[i + 1..]
                .iter()
                .all(|&b| self.lt_holds(a, b) || self.lt_holds(b, a))
        })
    }
}

/// A candidate core for the list-of-chains grammar. Construction only checks
/// index ranges; the grammar axioms are decided by [`chain_grammar_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainGrammar {
    universe: UniverseRef,
    core: BTreeSet<Vec<usize>>,
}

impl ChainGrammar {
    pub fn new(
        universe: &UniverseRef,
        core: impl IntoIterator<Item = Vec<usize>>,
    ) -> Result<ChainGrammar> {
        let core: BTreeSet<Vec<usize>> = core.into_iter().collect();
        for list in &core {
            for &i in list {
                universe.check_index(i)?;
            }
        }
        Ok(ChainGrammar {
            universe: universe.clone(),
            core,
        })
    }

    pub fn universe(&self) -> &UniverseRef {
        &self.universe
    }

    pub fn core(&self) -> &BTreeSet<Vec<usize>> {
        &self.core
    }
}

/// Whether `f` is contained in the carrier and totally ordered by the model.
pub fn is_subchain(m: &OrderedModel, f: &Subset) -> Result<bool> {
    m.universe().check_same(f.universe())?;
    Ok(m.is_subchain_mask(f.mask()))
}

/// Whether every subchain of the carrier has an upper bound in the carrier.
/// The empty chain needs a bound too, so an empty carrier is never inductive.
pub fn is_inductive(m: &OrderedModel, cap: usize) -> Result<bool> {
    m.universe().check_cap(cap)?;
    let carrier = m.carrier().mask();
    let members = m.carrier().members();
    // Walk the submasks of the carrier, including the empty one.
    let mut f = carrier;
    loop {
        if m.is_subchain_mask(f) {
            let bounded = members
                .iter()
                .any(|&a| (0..m.universe().size()).all(|b| f >> b & 1 == 0 || m.le(b, a)));
            if !bounded {
                return Ok(false);
            }
        }
        if f == 0 {
            break;
        }
        f = (f - 1) & carrier;
    }
    Ok(true)
}

/// The inductively generated core: the empty list, `[a]` for each carrier
/// element, and every extension of a core list by a strictly larger carrier
/// element. These are exactly the increasing enumerations of the carrier's
/// chains, so no list repeats an element and lengths stay within the carrier
/// size.
pub fn subchain_grammar(m: &OrderedModel) -> ChainGrammar {
    let mut core: BTreeSet<Vec<usize>> = BTreeSet::new();
    core.insert(Vec::new());
    let members = m.carrier().members();
    let mut stack: Vec<Vec<usize>> = members.iter().map(|&a| vec![a]).collect();
    while let Some(list) = stack.pop() {
        let last = *list.last().expect("stack holds nonempty lists");
        for &b in &members {
            if m.lt_holds(last, b) {
                let mut longer = list.clone();
                longer.push(b);
                stack.push(longer);
            }
        }
        core.insert(list);
    }
    ChainGrammar {
        universe: m.universe().clone(),
        core,
    }
}

/// The subchain predicate of `m` presented as the downward closure of the
/// generated core.
pub fn subchains_as_listpred(m: &OrderedModel) -> ListPredicate {
    let grammar = subchain_grammar(m);
    let universe = m.universe().clone();
    let lists = grammar
        .core
        .into_iter()
        .map(|items| RawList::new(&universe, items).expect("core indices are in range"));
    ListPredicate::downward_closure(&universe, lists).expect("single universe")
}

/// First violated grammar axiom, if any.
pub fn grammar_violation(g: &ChainGrammar) -> Option<String> {
    let core = &g.core;
    if !core.contains(&Vec::new()) {
        return Some("the empty list is missing".to_string());
    }
    // Exchange, right to left: a core list yields all of its prefixes and
    // suffixes around any position.
    for list in core {
        for i in 0..list.len() {
            let prefix = list[..=i].to_vec();
            if !core.contains(&prefix) {
                return Some(format!("prefix {prefix:?} of {list:?} is missing"));
            }
            let suffix = list[i..].to_vec();
            if !core.contains(&suffix) {
                return Some(format!("suffix {suffix:?} of {list:?} is missing"));
            }
        }
    }
    // Exchange, left to right: a list ending in `a` joined with a list
    // starting at `a` must be present.
    for p in core.iter().filter(|l| !l.is_empty()) {
        let a = *p.last().expect("nonempty");
        for q in core.iter().filter(|l| l.first() == Some(&a)) {
            let mut joined = p.clone();
            joined.extend_from_slice(&q[1..]);
            if !core.contains(&joined) {
                return Some(format!(
                    "{p:?} and {q:?} are present but their join {joined:?} is missing"
                ));
            }
        }
    }
    // Deletion.
    for list in core {
        for i in 0..list.len() {
            let mut shorter = list.clone();
            shorter.remove(i);
            if !core.contains(&shorter) {
                return Some(format!("{list:?} without position {i} is missing"));
            }
        }
    }
    // Antisymmetry of the induced precedence, over all splittings.
    let mut precedes: BTreeSet<(usize, usize)> = BTreeSet::new();
    for list in core {
        for i in 0..list.len() {
            for j in i + 1..list.len() {
                if list[i] != list[j] {
                    precedes.insert((list[i], list[j]));
                }
            }
        }
    }
    for &(a, b) in &precedes {
        if precedes.contains(&(b, a)) {
            return Some(format!("both {a} before {b} and {b} before {a} occur"));
        }
    }
    None
}

/// Whether the core satisfies all four list-of-chains axioms.
pub fn chain_grammar_check(g: &ChainGrammar) -> bool {
    grammar_violation(g).is_none()
}

/// Reads the strict order and carrier back off a checked grammar:
/// `a < b` iff `[a, b]` is in the core, and the carrier collects every
/// element occurring in the core.
pub fn order_of_grammar(g: &ChainGrammar) -> Result<OrderedModel> {
    if let Some(reason) = grammar_violation(g) {
        return Err(Error::GrammarViolation { reason });
    }
    let lt: BTreeSet<(usize, usize)> = g
        .core
        .iter()
        .filter(|l| l.len() == 2)
        .map(|l| (l[0], l[1]))
        .collect();
    let mut carrier_mask = 0u64;
    for list in &g.core {
        for &i in list {
            carrier_mask |= 1 << i;
        }
    }
    let carrier = Subset::from_mask(g.universe(), carrier_mask);
    OrderedModel::new(g.universe(), lt, carrier)
}

/// Maximal element of an inductive carrier, computed through the pipeline:
/// take a maximal subchain of the carrier via the greedy witness, then return
/// its smallest-index upper bound in the carrier. Absent exactly when the
/// model is not inductive (an empty carrier).
pub fn zorn_witness(m: &OrderedModel, cap: usize) -> Result<Option<usize>> {
    if !is_inductive(m, cap)? {
        return Ok(None);
    }
    let t = subchains_as_listpred(m);
    let chain = ttl_witness(&t, cap)?.expect("the empty list is always a subchain");
    let bound = m
        .carrier()
        .members()
        .into_iter()
        .find(|&a| chain.members().into_iter().all(|b| m.le(b, a)))
        .expect("an inductive carrier bounds its maximal subchain");
    Ok(Some(bound))
}
