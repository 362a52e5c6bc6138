//! Partial functions between finite universes, their one-point update order,
//! maximal partial choice functions, and the projection / functional-filter
//! reductions that tie them back to the subset world.

use crate::error::{Error, Result};
use crate::maximality::ttl_witness;
use crate::model::{ListPredicate, Subset, Universe, UniverseRef};

/// A decidable partial function: a total table into codomain-or-undefined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PFun {
    domain: UniverseRef,
    codomain: UniverseRef,
    table: Vec<Option<usize>>,
}

impl PFun {
    pub fn new(
        domain: &UniverseRef,
        codomain: &UniverseRef,
        table: Vec<Option<usize>>,
    ) -> Result<PFun> {
        if table.len() != domain.size() {
            return Err(Error::IndexOutOfRange {
                universe: domain.name().to_string(),
                index: table.len(),
                size: domain.size(),
            });
        }
        for b in table.iter().flatten() {
            codomain.check_index(*b)?;
        }
        // The graph lives in the product universe, which must exist.
        Universe::product_of(domain, codomain)?;
        Ok(PFun {
            domain: domain.clone(),
            codomain: codomain.clone(),
            table,
        })
    }

    /// The everywhere-undefined function.
    pub fn undefined(domain: &UniverseRef, codomain: &UniverseRef) -> Result<PFun> {
        PFun::new(domain, codomain, vec![None; domain.size()])
    }

    pub fn domain_universe(&self) -> &UniverseRef {
        &self.domain
    }

    pub fn codomain_universe(&self) -> &UniverseRef {
        &self.codomain
    }

    pub fn get(&self, a: usize) -> Option<usize> {
        self.table.get(a).copied().flatten()
    }

    pub fn assignments(&self) -> &[Option<usize>] {
        &self.table
    }

    pub fn with(&self, a: usize, b: usize) -> PFun {
        debug_assert!(a < self.domain.size() && b < self.codomain.size());
        let mut table = self.table.clone();
        table[a] = Some(b);
        PFun {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            table,
        }
    }

    pub fn is_total(&self) -> bool {
        self.table.iter().all(Option::is_some)
    }

    pub fn domain_mask(&self) -> u64 {
        self.table
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_some())
            .fold(0u64, |m, (a, _)| m | 1 << a)
    }

    /// Subset of the domain universe where the function is defined.
    pub fn domain_subset(&self) -> Subset {
        Subset::from_mask(&self.domain, self.domain_mask())
    }

    pub fn product_universe(&self) -> UniverseRef {
        Universe::product_of(&self.domain, &self.codomain).expect("validated on construction")
    }

    pub fn graph_mask(&self) -> u64 {
        let bsize = self.codomain.size();
        self.table
            .iter()
            .enumerate()
            .filter_map(|(a, v)| v.map(|b| a * bsize + b))
            .fold(0u64, |m, i| m | 1 << i)
    }

    /// Decodes a partial-function-shaped graph mask; `None` if some left
    /// component carries two pairs.
    pub fn from_graph_mask(
        domain: &UniverseRef,
        codomain: &UniverseRef,
        mask: u64,
    ) -> Option<PFun> {
        let bsize = codomain.size();
        let row = if bsize == 0 { 0 } else { (1u64 << bsize) - 1 };
        let mut table = Vec::with_capacity(domain.size());
        for a in 0..domain.size() {
            let bits = mask >> (a * bsize) & row;
            match bits.count_ones() {
                0 => table.push(None),
                1 => table.push(Some(bits.trailing_zeros() as usize)),
                _ => return None,
            }
        }
        PFun::new(domain, codomain, table).ok()
    }
}

/// Graph of `f` as a subset of the product universe.
pub fn pf_graph(f: &PFun) -> Subset {
    Subset::from_mask(&f.product_universe(), f.graph_mask())
}

/// All one-point extensions of `f`, ordered left-component major.
pub fn pf_updates(f: &PFun) -> Vec<PFun> {
    let mut out = Vec::new();
    for a in 0..f.domain.size() {
        if f.get(a).is_none() {
            for b in 0..f.codomain.size() {
                out.push(f.with(a, b));
            }
        }
    }
    out
}

/// Restriction of a predicate over a product universe to partial-function
/// shaped lists. Preserves the empty list.
pub fn pfun_filter(t: &ListPredicate) -> Result<ListPredicate> {
    ListPredicate::functional_only(t.clone())
}

/// Pullback of a predicate over `A` along the projection that drops the unit
/// component of `A x unit` lists.
pub fn project_unit(t: &ListPredicate) -> ListPredicate {
    ListPredicate::drop_unit(t.clone())
}

/// Maximal partial choice function for `t`: the greedy witness of the
/// functional restriction of `t`, read back as a function. The result's graph
/// is in the universal lifting of `t` and every one-point extension leaves
/// it. Absent exactly when the empty list is not in `t`.
pub fn empcf_witness(t: &ListPredicate, cap: usize) -> Result<Option<PFun>> {
    let (domain, codomain) = t.universe().as_product().ok_or_else(|| Error::NotProduct {
        universe: t.universe().name().to_string(),
    })?;
    let (domain, codomain) = (domain.clone(), codomain.clone());
    let q = pfun_filter(t)?;
    if !q.contains_empty() {
        return Ok(None);
    }
    let witness = ttl_witness(&q, cap)?.expect("inhabited lifting yields a witness");
    let f = PFun::from_graph_mask(&domain, &codomain, witness.mask())
        .expect("members of the functional restriction are function shaped");
    Ok(Some(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closures::eng;
    use crate::gdc::{positive_alignment, Relation};
    use crate::maximality::{max_elements, ttl_witness};
    use crate::model::RawList;

    const CAP: usize = 16;

    fn bb() -> (UniverseRef, UniverseRef) {
        (Universe::boolean(), Universe::boolean())
    }

    #[test]
    fn graph_of_named_functions() {
        let (a, b) = bb();
        let f = PFun::new(&a, &b, vec![Some(1), None]).unwrap();
        assert_eq!(pf_graph(&f).members(), vec![1]); // pair (0,1) has index 1

        let bot = PFun::undefined(&a, &b).unwrap();
        assert!(pf_graph(&bot).is_empty());

        let total = PFun::new(&a, &b, vec![Some(0), Some(1)]).unwrap();
        assert_eq!(pf_graph(&total).len(), a.size());
    }

    #[test]
    fn updates_extend_at_one_fresh_point() {
        let (a, b) = bb();
        let bot = PFun::undefined(&a, &b).unwrap();
        assert_eq!(pf_updates(&bot).len(), 4);

        let total = PFun::new(&a, &b, vec![Some(0), Some(1)]).unwrap();
        assert!(pf_updates(&total).is_empty());

        let f = PFun::new(&a, &b, vec![Some(1), None]).unwrap();
        let succ: Vec<PFun> = pf_updates(&f);
        assert_eq!(
            succ,
            vec![
                PFun::new(&a, &b, vec![Some(1), Some(0)]).unwrap(),
                PFun::new(&a, &b, vec![Some(1), Some(1)]).unwrap(),
            ]
        );
    }

    #[test]
    fn functional_filter_cases() {
        let (a, b) = bb();
        let prod = Universe::product_of(&a, &b).unwrap();
        let all = ListPredicate::all(&prod);
        let q = pfun_filter(&all).unwrap();
        // (0,0) and (0,1) together violate functionality for any base predicate.
        let clash = RawList::new(&prod, vec![0, 1]).unwrap();
        assert!(!q.member(&clash).unwrap());
        let graph = RawList::new(&prod, vec![0, 3]).unwrap();
        assert!(q.member(&graph).unwrap());
        // Count of partial-function graphs over 2x2: (|B|+1)^|A| = 9.
        assert_eq!(eng(&q, CAP).unwrap().count(), 9);
    }

    #[test]
    fn maximal_choice_function_for_an_alignment() {
        let (a, b) = bb();
        let r = Relation::new(&a, &b, [(0, 1), (1, 0), (1, 1)]).unwrap();
        let t = positive_alignment(&r);
        let f = empcf_witness(&t, CAP).unwrap().unwrap();
        assert_eq!(f.assignments(), &[Some(1), Some(0)]);
        // Graph is in the lifting, and no update stays inside.
        let p = eng(&t, CAP).unwrap();
        assert!(p.holds_mask(f.graph_mask()));
        for g in pf_updates(&f) {
            assert!(!p.holds_mask(g.graph_mask()));
        }
    }

    #[test]
    fn maximal_choice_function_edge_cases() {
        let (a, b) = bb();
        let prod = Universe::product_of(&a, &b).unwrap();

        let f = empcf_witness(&ListPredicate::all(&prod), CAP)
            .unwrap()
            .unwrap();
        assert_eq!(f.assignments(), &[Some(0), Some(0)]);

        let only_empty = ListPredicate::explicit_masks(&prod, [0]);
        let f = empcf_witness(&only_empty, CAP).unwrap().unwrap();
        assert_eq!(f.assignments(), &[None, None]);

        assert!(empcf_witness(&ListPredicate::none(&prod), CAP)
            .unwrap()
            .is_none());

        assert!(matches!(
            empcf_witness(&ListPredicate::all(&a), CAP),
            Err(Error::NotProduct { .. })
        ));
    }

    #[test]
    fn unit_projection_preserves_membership() {
        let b = Universe::boolean();
        let t =
            ListPredicate::explicit(&b, [RawList::empty(&b), RawList::new(&b, vec![1]).unwrap()])
                .unwrap();
        let lifted = project_unit(&t);
        let pu = lifted.universe().clone();
        // Pair (1, unit) has flat index 1.
        assert!(lifted.member(&RawList::new(&pu, vec![1]).unwrap()).unwrap());
        assert!(!lifted.member(&RawList::new(&pu, vec![0]).unwrap()).unwrap());
        assert_eq!(lifted.contains_empty(), t.contains_empty());
    }

    #[test]
    fn projected_choice_function_has_the_greedy_witness_domain() {
        let b = Universe::boolean();
        let t = ListPredicate::explicit(
            &b,
            [
                RawList::empty(&b),
                RawList::new(&b, vec![1]).unwrap(),
                RawList::new(&b, vec![1, 0]).unwrap(),
            ],
        )
        .unwrap();
        let f = empcf_witness(&project_unit(&t), CAP).unwrap().unwrap();
        let w = ttl_witness(&t, CAP).unwrap().unwrap();
        assert_eq!(f.domain_mask(), w.mask());
        assert!(max_elements(&eng(&t, CAP).unwrap())
            .iter()
            .any(|s| s.mask() == f.domain_mask()));
    }
}
