//! Cross-module invariants: the graded ring law, set-algebra closure in
//! both universe modes, least-fixpoint minimality of the generated
//! algebra, lattice structure of the hereditary-saturated collections,
//! sigma-table validation, and oracle-backed equality.

use proptest::prelude::*;
use std::sync::Arc;
use ulpa_core::analysis::hereditary_saturated_ultragraph;
use ulpa_core::construct::{build_eg, EgOptions, SigmaStrategy};
use ulpa_core::element::{Eq3, UElem};
use ulpa_core::graph::{Ultragraph, UniverseMode};
use ulpa_core::oracle::acyclic_matrix_rep;
use ulpa_core::sets::{disjointify, generate_g0, r_lambda_mu, Universe, VertexSet};
use ulpa_core::{corpus, EdgeId, Error, Ring, VertexId};

#[test]
fn graded_ring_law_graph_engine() {
    // The degree-d part of a product is the convolution of the factors'
    // parts.
    let g = corpus::parallel_graph(3);
    let r = Ring::IntegersMod(4);
    let mut rng = corpus::seeded(21);
    for _ in 0..200 {
        let a = corpus::random_gelem(&g, &r, &mut rng, 2);
        let b = corpus::random_gelem(&g, &r, &mut rng, 2);
        let prod = a.mul(&b).unwrap();
        let pa = a.degree_components();
        let pb = b.degree_components();
        for (d, part) in prod.degree_components() {
            let mut acc = ulpa_core::element::GElem::zero(g.clone(), r.clone());
            for (i, ai) in &pa {
                if let Some(bj) = pb.get(&(d - i)) {
                    acc = acc.add(&ai.mul(bj).unwrap()).unwrap();
                }
            }
            assert!(part.equal(&acc).unwrap(), "degree {d}");
        }
    }
}

#[test]
fn graded_ring_law_ultragraph_engine() {
    let g = corpus::two_range();
    let r = Ring::IntegersMod(4);
    let mut rng = corpus::seeded(22);
    for _ in 0..100 {
        let a = corpus::random_uelem(&g, &r, &mut rng, 2);
        let b = corpus::random_uelem(&g, &r, &mut rng, 2);
        let prod = a.mul(&b).unwrap();
        let pa = a.degree_components();
        let pb = b.degree_components();
        // the components sum back to the element
        let mut total = UElem::zero(g.clone(), r.clone());
        for part in prod.degree_components().values() {
            total = total.add(part).unwrap();
        }
        assert_eq!(total, prod);
        for (d, part) in prod.degree_components() {
            let mut acc = UElem::zero(g.clone(), r.clone());
            for (i, ai) in &pa {
                if let Some(bj) = pb.get(&(d - i)) {
                    acc = acc.add(&ai.mul(bj).unwrap()).unwrap();
                }
            }
            assert_eq!(part.equal(&acc).unwrap(), Eq3::True, "degree {d}");
        }
    }
}

#[test]
fn star_is_an_antihomomorphism() {
    let g = corpus::two_range();
    let r = Ring::Integers;
    let mut rng = corpus::seeded(23);
    for _ in 0..100 {
        let a = corpus::random_uelem(&g, &r, &mut rng, 2);
        let b = corpus::random_uelem(&g, &r, &mut rng, 2);
        assert_eq!(a.star().star(), a);
        let lhs = a.mul(&b).unwrap().star();
        let rhs = b.star().mul(&a.star()).unwrap();
        assert_eq!(lhs.equal(&rhs).unwrap(), Eq3::True);
    }
}

#[test]
fn scalar_multiples_of_vertices_are_faithful() {
    // r q_v = 0 iff r = 0, and real paths compose iff their product is
    // nonzero.
    let g = corpus::line_graph(3);
    for r in [Ring::Integers, Ring::IntegersMod(4), Ring::PrimeField(3)] {
        for n in -4i64..=4 {
            let x = ulpa_core::element::GElem::vertex(g.clone(), r.clone(), VertexId(0)).scale(n);
            assert_eq!(x.is_zero(), r.is_zero(&r.from_i64(n)), "ring {r}, n={n}");
        }
    }
    let r = Ring::Integers;
    let e1 = ulpa_core::element::GElem::edge(g.clone(), r.clone(), EdgeId(0));
    let e2 = ulpa_core::element::GElem::edge(g.clone(), r.clone(), EdgeId(1));
    assert!(!e1.mul(&e2).unwrap().is_zero()); // e1 e2 composes
    assert!(e2.mul(&e1).unwrap().is_zero()); // e2 e1 does not
}

#[test]
fn engine_equality_agrees_with_matrix_oracle() {
    let g = corpus::parallel_graph(2);
    let r = Ring::PrimeField(3);
    let rep = acyclic_matrix_rep(&g, &r).unwrap();
    let mut rng = corpus::seeded(24);
    for _ in 0..300 {
        let a = corpus::random_gelem(&g, &r, &mut rng, 2);
        let b = corpus::random_gelem(&g, &r, &mut rng, 2);
        let engine_eq = a.equal(&b).unwrap();
        let oracle_eq = rep.apply(&a).unwrap() == rep.apply(&b).unwrap();
        assert_eq!(engine_eq, oracle_eq);
    }
}

#[test]
fn generated_algebra_is_a_least_fixpoint() {
    // Removing any non-generator member breaks closure.
    let mut rng = corpus::seeded(25);
    for _ in 0..10 {
        let g = corpus::random_finite_ultragraph(&mut rng, 4, 3);
        let algebra = generate_g0(&g).unwrap();
        let members = algebra.members().unwrap();
        if members.len() > 64 {
            continue;
        }
        let u = g.universe;
        let generators: Vec<VertexSet> = algebra
            .generators
            .iter()
            .map(|s| s.clone().canonical(&u))
            .collect();
        for x in members {
            if x.is_empty() || generators.contains(x) {
                continue;
            }
            let rest: Vec<&VertexSet> = members.iter().filter(|m| *m != x).collect();
            let mut reachable = false;
            'scan: for a in &rest {
                for b in &rest {
                    for op in 0..3 {
                        let out = match op {
                            0 => a.union(b, &u),
                            1 => a.intersect(b, &u),
                            _ => a.difference(b, &u),
                        };
                        if out == *x {
                            reachable = true;
                            break 'scan;
                        }
                    }
                }
            }
            assert!(
                reachable,
                "member {x:?} of the closure is not produced by the rest"
            );
        }
    }
}

#[test]
fn hereditary_saturated_collections_form_a_lattice() {
    let mut rng = corpus::seeded(26);
    for _ in 0..15 {
        let g = corpus::random_finite_ultragraph(&mut rng, 4, 3);
        let Ok(hs) = hereditary_saturated_ultragraph(&g) else {
            continue;
        };
        let u = g.universe;
        for a in &hs {
            for b in &hs {
                let meet = a.intersect(b, &u);
                assert!(hs.contains(&meet), "meet closed");
                // the join exists: some member contains both, and the least
                // such member is unique
                let uppers: Vec<&VertexSet> = hs
                    .iter()
                    .filter(|h| a.is_subset(h, &u) && b.is_subset(h, &u))
                    .collect();
                assert!(!uppers.is_empty(), "join exists");
                let least = uppers
                    .iter()
                    .find(|l| uppers.iter().all(|h| l.is_subset(h, &u)));
                assert!(least.is_some(), "least upper bound unique");
            }
        }
    }
}

#[test]
fn r_lambda_mu_on_cofinite_range() {
    let g = corpus::ugr1();
    let r = r_lambda_mu(&g, &[EdgeId(0)], &[]);
    assert_eq!(r, VertexSet::cofinite([VertexId(0)]));
}

#[test]
fn sigma_table_mode_validates() {
    // A correct user table reproduces the greedy assignment.
    let base = corpus::grugrex();
    let greedy = build_eg(&base, &corpus::grugrex_options()).unwrap();
    let mut with_table = (*base).clone();
    for (v, w) in &greedy.sigma {
        with_table.sigma_table.insert(*v, w.0.clone());
    }
    let with_table = Arc::new(with_table);
    let opts = EgOptions {
        window: 4,
        depth: None,
        sigma: SigmaStrategy::Table,
    };
    let eg = build_eg(&with_table, &opts).unwrap();
    assert_eq!(eg.sigma, greedy.sigma);
    // every assignment satisfies v in r(sigma(v))
    for (v, w) in &eg.sigma {
        let range = eg.delta_range(w).unwrap();
        assert!(range.contains(*v));
    }
    // An invalid table is a hard error.
    let mut bad = (*base).clone();
    let v1 = bad.vertex_by_name("v1").unwrap();
    bad.sigma_table.insert(v1, vec![true, false]); // v1 wants (10), taken rules aside it is valid; corrupt instead with an all-zero word
    bad.sigma_table.insert(v1, vec![false, false]);
    let bad = Arc::new(bad);
    match build_eg(&bad, &opts) {
        Err(Error::SigmaStrategyFailed(_)) => {}
        other => panic!("expected SigmaStrategyFailed, got {other:?}"),
    }
}

#[test]
fn finite_eg_matches_identification() {
    // For finite ultragraphs the constructed graph is the pair
    // identification: same vertex count and the same source/target pairs.
    let mut rng = corpus::seeded(27);
    for _ in 0..10 {
        let g = corpus::random_finite_ultragraph(&mut rng, 4, 4);
        let eg = build_eg(&g, &EgOptions::default()).unwrap();
        assert!(eg.delta.is_empty());
        let (ident, pairs) = ulpa_core::element::identification_graph(&g).unwrap();
        assert_eq!(eg.graph.vertex_count(), ident.vertex_count());
        assert_eq!(eg.graph.edge_count(), ident.edge_count());
        for ((e, v), id) in pairs {
            let mine = eg
                .pair_edge(e, &ulpa_core::construct::EgVertex::Vx(v))
                .expect("pair edge exists");
            assert_eq!(eg.graph.source(mine), ident.source(id));
            assert_eq!(eg.graph.target(mine), ident.target(id));
        }
    }
}

#[test]
fn desingularization_removes_singular_vertices() {
    let mut rng = corpus::seeded(28);
    for _ in 0..15 {
        let g = corpus::random_singular_ultragraph(&mut rng, 4);
        let d = ulpa_core::construct::desingularize(&g, 3).unwrap();
        let out = &d.result;
        for v in out.finite_vertices().unwrap() {
            if out.frontier.contains(&v) {
                continue;
            }
            assert!(
                !out.is_singular(v),
                "{} is singular off the frontier",
                out.vertex_name(v)
            );
        }
    }
}

#[test]
fn simplicity_verdict_agrees_between_graph_and_ultragraph_views() {
    for g in corpus::all_graphs(3, 3, false) {
        let as_graph = ulpa_core::analysis::simplicity_verdict_graph(&g);
        let as_ultra =
            ulpa_core::analysis::simplicity_verdict_ultragraph(&g.to_ultragraph());
        assert_eq!(as_graph.result, as_ultra.result, "{}", g.name);
    }
}

#[test]
fn disjointify_retains_empty_positions() {
    let u = Universe::Finite(2);
    let a = VertexSet::singleton(VertexId(0));
    let out = disjointify(&[a.clone(), a.clone(), a], &u);
    assert_eq!(out.len(), 3);
    assert!(out[1].is_empty());
    assert!(out[2].is_empty());
}

fn arb_nat_set() -> impl Strategy<Value = VertexSet> {
    prop_oneof![
        proptest::collection::btree_set(0u32..12, 0..6)
            .prop_map(|s| VertexSet::from_iter(s.into_iter().map(VertexId))),
        proptest::collection::btree_set(0u32..12, 0..6)
            .prop_map(|s| VertexSet::cofinite(s.into_iter().map(VertexId))),
    ]
}

proptest! {
    #[test]
    fn nat_mode_ops_agree_with_membership(a in arb_nat_set(), b in arb_nat_set()) {
        let u = Universe::Nat;
        // Closure: results are again finite or cofinite by construction;
        // agreement with pointwise membership on a window that includes
        // every excluded index.
        for k in 0..16u32 {
            let v = VertexId(k);
            prop_assert_eq!(a.union(&b, &u).contains(v), a.contains(v) || b.contains(v));
            prop_assert_eq!(a.intersect(&b, &u).contains(v), a.contains(v) && b.contains(v));
            prop_assert_eq!(a.difference(&b, &u).contains(v), a.contains(v) && !b.contains(v));
        }
        // cofinite-ness is decided correctly
        let inf = |s: &VertexSet| s.size_class().is_infinite();
        prop_assert_eq!(inf(&a.union(&b, &u)), inf(&a) || inf(&b));
        prop_assert_eq!(inf(&a.intersect(&b, &u)), inf(&a) && inf(&b));
    }

    #[test]
    fn ulp_identities_hold_on_random_sets(
        xs in proptest::collection::vec(proptest::collection::btree_set(0u32..3, 0..3), 2)
    ) {
        // p_{A u B} = p_A + p_B - p_{A n B} in the engine, random sets.
        let g = corpus::two_range();
        let r = Ring::Integers;
        let u = g.universe;
        let a = VertexSet::from_iter(xs[0].iter().map(|&k| VertexId(k)));
        let b = VertexSet::from_iter(xs[1].iter().map(|&k| VertexId(k)));
        let lhs = UElem::p(g.clone(), r.clone(), a.union(&b, &u));
        let mut rhs = UElem::p(g.clone(), r.clone(), a.clone())
            .add(&UElem::p(g.clone(), r.clone(), b.clone())).unwrap();
        rhs = rhs.sub(&UElem::p(g.clone(), r.clone(), a.intersect(&b, &u))).unwrap();
        prop_assert_eq!(lhs.equal(&rhs).unwrap(), Eq3::True);
    }
}

#[test]
fn gf2_associativity_fuzz() {
    let r = Ring::PrimeField(2);
    let mut rng = corpus::seeded(29);
    let g = corpus::random_graph(&mut rng, 5, 6);
    for _ in 0..300 {
        let a = corpus::random_gelem(&g, &r, &mut rng, 2);
        let b = corpus::random_gelem(&g, &r, &mut rng, 2);
        let c = corpus::random_gelem(&g, &r, &mut rng, 2);
        let lhs = a.mul(&b).unwrap().mul(&c).unwrap();
        let rhs = a.mul(&b.mul(&c).unwrap()).unwrap();
        assert!(lhs.equal(&rhs).unwrap());
    }
    let ug = corpus::two_range();
    for _ in 0..300 {
        let a = corpus::random_uelem(&ug, &r, &mut rng, 2);
        let b = corpus::random_uelem(&ug, &r, &mut rng, 2);
        let c = corpus::random_uelem(&ug, &r, &mut rng, 2);
        let lhs = a.mul(&b).unwrap().mul(&c).unwrap();
        let rhs = a.mul(&b.mul(&c).unwrap()).unwrap();
        if lhs != rhs {
            assert_eq!(lhs.equal(&rhs).unwrap(), Eq3::True);
        }
    }
}

#[test]
fn nat_mode_ultragraph_must_have_finite_or_cofinite_ranges() {
    // The type system enforces this: every VertexSet is finite or
    // cofinite, so Nat-mode ranges are always admissible. What must hold
    // is canonicalization in finite universes.
    let mut g = Ultragraph::new("g", UniverseMode::Finite);
    let v = g.add_vertex("v");
    let w = g.add_vertex("w");
    g.add_edge("e", v, VertexSet::cofinite([v]));
    assert_eq!(g.range(EdgeId(0)), &VertexSet::singleton(w));
}

#[test]
fn multiplication_commutes_with_the_canonical_surjections() {
    // The product tables of the three engines validate one another: the
    // identification and the Exel-Laca surjection are multiplicative, so
    // images of products must equal products of images.
    let mut rng = corpus::seeded(30);
    for trial in 0..60 {
        let g = corpus::random_no_singular_ultragraph(&mut rng, 4, 2);
        let r = Ring::IntegersMod(6);
        // Ultragraph engine against the trusted graph engine.
        let a = corpus::random_uelem(&g, &r, &mut rng, 2);
        let b = corpus::random_uelem(&g, &r, &mut rng, 2);
        let lhs = a.mul(&b).unwrap().to_identification_graph().unwrap();
        let rhs = a
            .to_identification_graph()
            .unwrap()
            .mul(&b.to_identification_graph().unwrap())
            .unwrap();
        assert!(lhs.equal(&rhs).unwrap(), "U product vs graph, trial {trial}");
        // Exel-Laca engine against the ultragraph engine.
        let m = ulpa_core::hom::llgex2(&g, &r);
        let a = corpus::random_el_elem(&g, &r, &mut rng, 2);
        let b = corpus::random_el_elem(&g, &r, &mut rng, 2);
        let prod = a.mul(&b).unwrap();
        if prod.is_zero() {
            // images of the factors must multiply to zero as well
            if let (Ok(fa), Ok(fb)) = (m.apply_el(&a), m.apply_el(&b)) {
                let img = fa.mul(&fb).unwrap();
                let z = UElem::zero(g.clone(), r.clone());
                assert_eq!(
                    img.as_u().unwrap().equal(&z).unwrap(),
                    Eq3::True,
                    "EL zero product, trial {trial}"
                );
            }
            continue;
        }
        if let (Ok(fp), Ok(fa), Ok(fb)) =
            (m.apply_el(&prod), m.apply_el(&a), m.apply_el(&b))
        {
            let rhs = fa.mul(&fb).unwrap();
            assert_eq!(
                fp.as_u().unwrap().equal(rhs.as_u().unwrap()).unwrap(),
                Eq3::True,
                "EL product vs U, trial {trial}"
            );
        }
    }
}
