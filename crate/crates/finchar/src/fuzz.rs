//! Seeded randomized execution of the module invariants. Every iteration
//! generates small models, replays the invariant battery against the
//! independent oracle routes, and reports the first failure as a pasteable
//! spec-file reproduction. Per-iteration RNG streams are derived from
//! `(seed, iteration index)`, so results do not depend on execution order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closures::{complement_duality_check, eng, eng_exists, restrict};
use crate::dsl::{self, Decl, ModelSpec, OrderDecl};
use crate::error::{Error, Result};
use crate::gdc::{
    approximation, choice_witness, erase_bottom, is_downward_prime, lift_bottom, phi_step,
    positive_alignment, relation_of, Relation,
};
use crate::maximality::{evaluate_principle, is_maximal, ttl_witness, Principle};
use crate::model::{
    hat, CanonicalList, ListPredicate, Subset, SubsetPredicate, Universe, UniverseRef,
    MAX_UNIVERSE_SIZE,
};
use crate::oracle;
use crate::pfun::{empcf_witness, pf_updates};
use crate::zorn::{
    chain_grammar_check, is_inductive, order_of_grammar, subchain_grammar, subchains_as_listpred,
    zorn_witness, OrderedModel,
};

#[derive(Debug, Clone)]
pub struct FuzzConfig {
    pub seed: u64,
    pub size: usize,
    pub iters: u64,
    pub cap: usize,
}

/// A failed invariant with a spec-file reproduction of the generating model.
#[derive(Debug, Clone)]
pub struct Violation {
    pub check: &'static str,
    pub detail: String,
    pub repro: String,
}

#[derive(Debug, Clone)]
pub struct FuzzOutcome {
    pub iterations: u64,
    pub violation: Option<Violation>,
}

/// Per-iteration stream: a splitmix64 scramble of seed and index feeds the
/// stream cipher generator.
fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut x = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^= x >> 31;
    ChaCha8Rng::seed_from_u64(x)
}

pub fn run(cfg: &FuzzConfig) -> Result<FuzzOutcome> {
    if cfg.size == 0 || cfg.size > cfg.cap || cfg.size > MAX_UNIVERSE_SIZE {
        return Err(Error::CapExceeded {
            universe: "fuzz size bound".to_string(),
            size: cfg.size,
            cap: cfg.cap.min(MAX_UNIVERSE_SIZE),
        });
    }
    for i in 0..cfg.iters {
        let mut rng = stream(cfg.seed, i);
        if let Some(violation) = run_iteration(&mut rng, cfg.size, cfg.cap)? {
            return Ok(FuzzOutcome {
                iterations: i + 1,
                violation: Some(violation),
            });
        }
    }
    Ok(FuzzOutcome {
        iterations: cfg.iters,
        violation: None,
    })
}

fn run_iteration(rng: &mut ChaCha8Rng, bound: usize, cap: usize) -> Result<Option<Violation>> {
    let n = rng.gen_range(1..=bound);
    let u = Universe::atomic("A", n)?;
    let t = gen_explicit(rng, &u);
    if let Some(v) = predicate_suite(&u, &t, cap)? {
        return Ok(Some(v));
    }

    let m = gen_order_model(rng, &u)?;
    if let Some(v) = order_suite(&m, cap)? {
        return Ok(Some(v));
    }

    let asize = rng.gen_range(1..=bound.min(3));
    let bsize = rng.gen_range(1..=bound.min(2));
    let ua = Universe::atomic("PA", asize)?;
    let ub = Universe::atomic("PB", bsize)?;
    let rel = gen_relation(rng, &ua, &ub);
    let t2 = gen_product_pred(rng, &rel);
    if let Some(v) = product_suite(&rel, &t2, cap)? {
        return Ok(Some(v));
    }

    if let Some(v) = dsl_suite(&u, &t, &m, &rel)? {
        return Ok(Some(v));
    }
    Ok(None)
}

fn gen_explicit(rng: &mut ChaCha8Rng, u: &UniverseRef) -> ListPredicate {
    let slots = 1u64 << u.size();
    let mut masks: Vec<u64> = (0..slots).filter(|_| rng.gen_bool(0.5)).collect();
    if rng.gen_bool(0.5) {
        masks.push(0);
    }
    ListPredicate::explicit_masks(u, masks)
}

fn gen_order_model(rng: &mut ChaCha8Rng, u: &UniverseRef) -> Result<OrderedModel> {
    let n = u.size();
    // Random permutation, random forward edges, then transitive closure:
    // acyclic by construction, so the result is a strict order.
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    let mut lt = vec![false; n * n];
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.4) {
                lt[perm[i] * n + perm[j]] = true;
            }
        }
    }
    for k in 0..n {
        for a in 0..n {
            for b in 0..n {
                if lt[a * n + k] && lt[k * n + b] {
                    lt[a * n + b] = true;
                }
            }
        }
    }
    let pairs = (0..n * n).filter(|&i| lt[i]).map(|i| (i / n, i % n));
    let carrier = Subset::from_mask(u, rng.gen_range(0..1u64 << n));
    OrderedModel::new(u, pairs, carrier)
}

fn gen_relation(rng: &mut ChaCha8Rng, left: &UniverseRef, right: &UniverseRef) -> Relation {
    let pairs = (0..left.size())
        .flat_map(|a| (0..right.size()).map(move |b| (a, b)))
        .filter(|_| rng.gen_bool(0.5))
        .collect::<Vec<_>>();
    Relation::new(left, right, pairs).expect("indices in range")
}

fn gen_product_pred(rng: &mut ChaCha8Rng, rel: &Relation) -> ListPredicate {
    if rng.gen_bool(0.5) {
        positive_alignment(rel)
    } else {
        gen_explicit(rng, rel.product())
    }
}

fn first_mismatch(a: &[bool], b: &[bool]) -> Option<u64> {
    a.iter()
        .zip(b.iter())
        .position(|(x, y)| x != y)
        .map(|m| m as u64)
}

/// Differential check of the optimized universal lifting against the
/// definitional oracle; returns the first disagreeing subset mask.
pub(crate) fn eng_differential(
    t: &ListPredicate,
    claimed: &SubsetPredicate,
    cap: usize,
) -> Result<Option<u64>> {
    Ok(first_mismatch(claimed.table(), &oracle::eng_table(t, cap)?))
}

fn predicate_suite(u: &UniverseRef, t: &ListPredicate, cap: usize) -> Result<Option<Violation>> {
    let repro = repro_pred(u, t);
    let fail = |check: &'static str, detail: String| {
        Ok(Some(Violation {
            check,
            detail,
            repro: repro.clone(),
        }))
    };

    let closure = eng(t, cap)?;
    if let Some(m) = eng_differential(t, &closure, cap)? {
        return fail(
            "eng_differential",
            format!("first mismatch at subset mask {m}"),
        );
    }
    let exists = eng_exists(t, cap)?;
    if let Some(m) = first_mismatch(exists.table(), &oracle::eng_exists_table(t, cap)?) {
        return fail(
            "eng_exists_differential",
            format!("first mismatch at subset mask {m}"),
        );
    }

    let again = eng(&restrict(&closure), cap)?;
    if again != closure {
        return fail(
            "minimal_witness_idempotence",
            "lifting the restriction changed the table".to_string(),
        );
    }

    if closure.is_inhabited() != t.contains_empty() {
        return fail(
            "inhabited_iff_empty_list",
            "inhabitation disagrees with empty-list membership".to_string(),
        );
    }

    for m in closure.true_masks() {
        for a in 0..u.size() {
            if m >> a & 1 == 1 && !closure.holds_mask(m & !(1 << a)) {
                return fail("eng_downward_closed", format!("mask {m} minus {a}"));
            }
        }
    }
    for m in exists.true_masks() {
        for a in 0..u.size() {
            if m >> a & 1 == 0 && !exists.holds_mask(m | 1 << a) {
                return fail("eng_exists_upward_closed", format!("mask {m} plus {a}"));
            }
        }
    }

    if !complement_duality_check(t, cap)? {
        return fail(
            "complement_duality",
            "complement of the lifting differs from the lifting of the complement".to_string(),
        );
    }

    let ttl = evaluate_principle(t, Principle::Ttl, cap)?;
    let ttlco = evaluate_principle(t, Principle::TtlCo, cap)?;
    let gui = evaluate_principle(&t.clone().complement(), Principle::Gui, cap)?;
    if ttl != ttlco || ttl != gui {
        return fail(
            "principle_duality_chain",
            format!("ttl={ttl} ttlco={ttlco} gui-on-complement={gui}"),
        );
    }

    if t.contains_empty() {
        let w = ttl_witness(t, cap)?.expect("inhabited");
        if !is_maximal(&closure, &w)? {
            return fail(
                "greedy_witness_maximal",
                format!("witness mask {}", w.mask()),
            );
        }
        if !oracle::maximal_masks(&closure).contains(&w.mask()) {
            return fail(
                "greedy_witness_in_scan",
                format!("witness mask {}", w.mask()),
            );
        }
    }
    Ok(None)
}

fn order_suite(m: &OrderedModel, cap: usize) -> Result<Option<Violation>> {
    let repro = repro_order(m);
    let fail = |check: &'static str, detail: String| {
        Ok(Some(Violation {
            check,
            detail,
            repro: repro.clone(),
        }))
    };

    let sch = oracle::subchain_table(m, cap)?;
    let lp = subchains_as_listpred(m);
    if let Some(d) = first_mismatch(eng(&lp, cap)?.table(), &sch) {
        return fail("subchain_predicate_table", format!("subset mask {d}"));
    }
    // Subsets of chains are chains, so lifting the direct representation is
    // the identity on the table.
    let direct = ListPredicate::subchains(m.clone());
    if let Some(d) = first_mismatch(eng(&direct, cap)?.table(), &sch) {
        return fail("subchain_lifting_identity", format!("subset mask {d}"));
    }

    let g = subchain_grammar(m);
    if !chain_grammar_check(&g) {
        return fail(
            "grammar_accepts_constructed",
            "constructed core fails the axioms".to_string(),
        );
    }
    let back = order_of_grammar(&g)?;
    let carrier = m.carrier().mask();
    let expected: std::collections::BTreeSet<(usize, usize)> = m
        .lt()
        .iter()
        .copied()
        .filter(|&(a, b)| carrier >> a & 1 == 1 && carrier >> b & 1 == 1)
        .collect();
    if *back.lt() != expected || back.carrier() != m.carrier() {
        return fail(
            "grammar_order_round_trip",
            "recovered order differs from the restriction".to_string(),
        );
    }

    if is_inductive(m, cap)? {
        let w = zorn_witness(m, cap)?.expect("inductive");
        if !oracle::strict_maxima(m).contains(&w) {
            return fail("zorn_matches_scan", format!("witness {w}"));
        }
    } else if !m.carrier().is_empty() {
        return fail(
            "inductive_iff_nonempty",
            "nonempty finite carrier reported non-inductive".to_string(),
        );
    }
    Ok(None)
}

fn product_suite(rel: &Relation, t2: &ListPredicate, cap: usize) -> Result<Option<Violation>> {
    let repro = repro_product(rel, t2);
    let fail = |check: &'static str, detail: String| {
        Ok(Some(Violation {
            check,
            detail,
            repro: repro.clone(),
        }))
    };

    let alignment = positive_alignment(rel);
    if relation_of(&alignment)? != *rel {
        return fail(
            "alignment_round_trip",
            "singleton relation differs".to_string(),
        );
    }
    if !is_downward_prime(&alignment, cap)? {
        return fail(
            "alignment_downward_prime",
            "concatenation escapes".to_string(),
        );
    }

    let (gfp, approximable) = approximation(t2, cap)?;
    let witness = choice_witness(t2, cap)?;
    if approximable != witness.is_some() {
        return fail(
            "approximable_iff_witness",
            format!("approximable={approximable} witness={}", witness.is_some()),
        );
    }
    let brute = oracle::total_choice_functions(t2, cap)?;
    if approximable != !brute.is_empty() {
        return fail(
            "approximable_iff_choice",
            format!("approximable={approximable} brute={}", brute.len()),
        );
    }
    let closure = eng(t2, cap)?;
    if let Some(f) = &witness {
        if !closure.holds_mask(f.graph_mask()) {
            return fail(
                "choice_graph_in_closure",
                format!("graph {}", f.graph_mask()),
            );
        }
    }
    if phi_step(t2, &gfp, cap)? != gfp {
        return fail(
            "gfp_fixed_point",
            "one more step changed the set".to_string(),
        );
    }

    if t2.contains_empty() {
        let f = empcf_witness(t2, cap)?.expect("inhabited");
        let maximal = closure.holds_mask(f.graph_mask())
            && pf_updates(&f)
                .iter()
                .all(|g| !closure.holds_mask(g.graph_mask()));
        if !maximal {
            return fail("empcf_maximal", format!("graph {}", f.graph_mask()));
        }

        let lifted = lift_bottom(t2, cap)?;
        let (_, lifted_ok) = approximation(&lifted, cap)?;
        if !lifted_ok {
            return fail(
                "lift_approximable",
                "lifted predicate not approximable".to_string(),
            );
        }
        let fb = choice_witness(&lifted, cap)?.expect("approximable");
        let graph = CanonicalList::from_mask(&fb.product_universe(), fb.graph_mask());
        let erased_mask = hat(&erase_bottom(&graph.to_raw())?).mask();
        let scan = oracle::maximal_partial_choice_functions(t2, cap)?;
        if !scan.iter().any(|g| g.graph_mask() == erased_mask) {
            return fail(
                "lift_erases_to_maximal",
                format!("erased graph {erased_mask}"),
            );
        }
    }
    Ok(None)
}

fn dsl_suite(
    u: &UniverseRef,
    t: &ListPredicate,
    m: &OrderedModel,
    rel: &Relation,
) -> Result<Option<Violation>> {
    let spec = assemble_spec(u, t, m, rel)?;
    let text = dsl::serialize(&spec);
    match dsl::parse(&text) {
        Ok(round) if round == spec => Ok(None),
        Ok(_) => Ok(Some(Violation {
            check: "dsl_round_trip",
            detail: "reparsed spec differs".to_string(),
            repro: text,
        })),
        Err(e) => Ok(Some(Violation {
            check: "dsl_round_trip",
            detail: format!("canonical form fails to parse: {e}"),
            repro: text,
        })),
    }
}

fn assemble_spec(
    u: &UniverseRef,
    t: &ListPredicate,
    m: &OrderedModel,
    rel: &Relation,
) -> Result<ModelSpec> {
    let mut spec = ModelSpec::new();
    spec.declare("A", Decl::Universe(u.clone()))?;
    spec.declare("T", Decl::ExplicitPred(t.clone()))?;
    spec.declare(
        "LT",
        Decl::Order(OrderDecl {
            universe: u.clone(),
            pairs: m.lt().clone(),
        }),
    )?;
    spec.declare("E", Decl::Subset(m.carrier().clone()))?;
    spec.declare("G", Decl::Grammar(crate::zorn::subchain_grammar(m)))?;
    spec.declare("PA", Decl::Universe(rel.left().clone()))?;
    spec.declare("PB", Decl::Universe(rel.right().clone()))?;
    spec.declare("R", Decl::Relation(rel.clone()))?;
    spec.declare(
        "AL",
        Decl::AlignPred {
            pred: positive_alignment(rel),
            relation: "R".to_string(),
        },
    )?;
    Ok(spec)
}

fn repro_pred(u: &UniverseRef, t: &ListPredicate) -> String {
    let mut spec = ModelSpec::new();
    spec.declare("A", Decl::Universe(u.clone())).expect("fresh");
    spec.declare("T", Decl::ExplicitPred(t.clone()))
        .expect("fresh");
    dsl::serialize(&spec)
}

fn repro_order(m: &OrderedModel) -> String {
    let mut spec = ModelSpec::new();
    spec.declare("A", Decl::Universe(m.universe().clone()))
        .expect("fresh");
    spec.declare(
        "LT",
        Decl::Order(OrderDecl {
            universe: m.universe().clone(),
            pairs: m.lt().clone(),
        }),
    )
    .expect("fresh");
    spec.declare("E", Decl::Subset(m.carrier().clone()))
        .expect("fresh");
    dsl::serialize(&spec)
}

fn repro_product(rel: &Relation, t2: &ListPredicate) -> String {
    let mut spec = ModelSpec::new();
    spec.declare("PA", Decl::Universe(rel.left().clone()))
        .expect("fresh");
    spec.declare("PB", Decl::Universe(rel.right().clone()))
        .expect("fresh");
    spec.declare("R", Decl::Relation(rel.clone()))
        .expect("fresh");
    if t2.explicit_set().is_some() {
        let mut with_product = ModelSpec::new();
        with_product
            .declare("PA", Decl::Universe(rel.left().clone()))
            .expect("fresh");
        with_product
            .declare("PB", Decl::Universe(rel.right().clone()))
            .expect("fresh");
        with_product
            .declare("P", Decl::Universe(t2.universe().clone()))
            .expect("fresh");
        with_product
            .declare("T", Decl::ExplicitPred(t2.clone()))
            .expect("fresh");
        return dsl::serialize(&with_product);
    }
    spec.declare(
        "AL",
        Decl::AlignPred {
            pred: t2.clone(),
            relation: "R".to_string(),
        },
    )
    .expect("fresh");
    dsl::serialize(&spec)
}
