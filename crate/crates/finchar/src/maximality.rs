//! The one-element update relation on subsets, maximal elements, greedy
//! witness extraction, and truth evaluation of the maximality / induction
//! statement family on a finite model.

use crate::closures::{eng, eng_exists};
use crate::error::Result;
use crate::model::{ListPredicate, Subset, SubsetPredicate};

/// The statement family evaluated by [`evaluate_principle`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Principle {
    /// Inhabited implies a maximal element exists.
    Ttl,
    /// Every member has a member update implies the predicate is empty.
    TtlCo,
    /// Update induction on the existential lifting.
    Gui,
}

/// All one-element extensions of `alpha`, in element-index order.
pub fn updates(alpha: &Subset) -> Vec<Subset> {
    (0..alpha.universe().size())
        .filter(|&a| !alpha.contains(a))
        .map(|a| alpha.with_element(a))
        .collect()
}

/// Whether `alpha` satisfies `p` and no one-element extension does.
pub fn is_maximal(p: &SubsetPredicate, alpha: &Subset) -> Result<bool> {
    p.universe().check_same(alpha.universe())?;
    Ok(p.holds_mask(alpha.mask()) && updates(alpha).iter().all(|beta| !p.holds_mask(beta.mask())))
}

/// All maximal elements of `p`, in subset enumeration order.
pub fn max_elements(p: &SubsetPredicate) -> Vec<Subset> {
    let n = p.universe().size();
    p.true_masks()
        .filter(|&m| (0..n).all(|a| m >> a & 1 == 1 || !p.holds_mask(m | 1 << a)))
        .map(|m| Subset::from_mask(p.universe(), m))
        .collect()
}

/// Greedy maximal-element extraction for the universal lifting of `t`:
/// start from the empty subset and repeatedly add the smallest-index element
/// that keeps membership. Absent exactly when the empty list is not in `t`
/// (the lifting is then uninhabited).
pub fn ttl_witness(t: &ListPredicate, cap: usize) -> Result<Option<Subset>> {
    if !t.contains_empty() {
        return Ok(None);
    }
    let p = eng(t, cap)?;
    let n = t.universe().size();
    let mut mask = 0u64;
    while let Some(a) = (0..n).find(|&a| mask >> a & 1 == 0 && p.holds_mask(mask | 1 << a)) {
        mask |= 1 << a;
    }
    Ok(Some(Subset::from_mask(t.universe(), mask)))
}

/// Evaluates the closed statement on the finite model by brute-force
/// quantifier evaluation over all subsets.
pub fn evaluate_principle(t: &ListPredicate, kind: Principle, cap: usize) -> Result<bool> {
    let n = t.universe().size();
    let masks = || 0..1u64 << n;
    let ext = |m: u64| {
        (0..n)
            .filter(move |&a| m >> a & 1 == 0)
            .map(move |a| m | 1 << a)
    };
    Ok(match kind {
        Principle::Ttl => {
            let p = eng(t, cap)?;
            let inhabited = p.is_inhabited();
            let has_max = masks().any(|m| p.holds_mask(m) && ext(m).all(|b| !p.holds_mask(b)));
            !inhabited || has_max
        }
        Principle::TtlCo => {
            let p = eng(t, cap)?;
            let premise = masks().all(|m| !p.holds_mask(m) || ext(m).any(|b| p.holds_mask(b)));
            let empty = !p.is_inhabited();
            !premise || empty
        }
        Principle::Gui => {
            let q = eng_exists(t, cap)?;
            let premise = masks().all(|m| !ext(m).all(|b| q.holds_mask(b)) || q.holds_mask(m));
            let all = masks().all(|m| q.holds_mask(m));
            !premise || all
        }
    })
}
