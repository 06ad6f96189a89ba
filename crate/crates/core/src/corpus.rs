//! Named fixtures and seeded random structure generators shared by the
//! test suites, the acceptance battery, and the benchmarks.

use crate::construct::EgOptions;
use crate::element::{ELElem, GElem, UElem};
use crate::graph::{Graph, Path, Ultragraph, UniverseMode};
use crate::ring::Ring;
use crate::sets::{EdgeId, VertexId, VertexSet};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::sync::Arc;

pub fn seeded(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// v1 -> v2 -> ... -> vn.
pub fn line_graph(n: usize) -> Arc<Graph> {
    let mut g = Graph::new(format!("line{n}"));
    let vs: Vec<VertexId> = (1..=n).map(|i| g.add_vertex(format!("v{i}"))).collect();
    for i in 1..n {
        g.add_edge(format!("e{i}"), vs[i - 1], vs[i]);
    }
    Arc::new(g)
}

/// n loops at one vertex.
pub fn rose(n: usize) -> Arc<Graph> {
    let mut g = Graph::new(format!("rose{n}"));
    let v = g.add_vertex("v");
    for i in 1..=n {
        g.add_edge(format!("e{i}"), v, v);
    }
    Arc::new(g)
}

/// m parallel edges from v to w.
pub fn parallel_graph(m: usize) -> Arc<Graph> {
    let mut g = Graph::new(format!("parallel{m}"));
    let v = g.add_vertex("v");
    let w = g.add_vertex("w");
    for i in 1..=m {
        g.add_edge(format!("e{i}"), v, w);
    }
    Arc::new(g)
}

/// Finite ultragraph with one edge v0 -> {v1, v2}.
pub fn fan_out() -> Arc<Ultragraph> {
    let mut g = Ultragraph::new("fan", UniverseMode::Finite);
    let v0 = g.add_vertex("v0");
    let v1 = g.add_vertex("v1");
    let v2 = g.add_vertex("v2");
    g.add_edge("e", v0, VertexSet::from_iter([v1, v2]));
    Arc::new(g)
}

/// Finite ultragraph with no singular vertices:
/// e1: v0 -> {v1, v2}, e2: v1 -> {v0}, e3: v2 -> {v0}.
pub fn two_range() -> Arc<Ultragraph> {
    let mut g = Ultragraph::new("two_range", UniverseMode::Finite);
    let v0 = g.add_vertex("v0");
    let v1 = g.add_vertex("v1");
    let v2 = g.add_vertex("v2");
    g.add_edge("e1", v0, VertexSet::from_iter([v1, v2]));
    g.add_edge("e2", v1, VertexSet::singleton(v0));
    g.add_edge("e3", v2, VertexSet::singleton(v0));
    Arc::new(g)
}

/// One edge from v0 onto the cofinite complement of {v0}: every other
/// vertex is a sink.
pub fn ugr1() -> Arc<Ultragraph> {
    let mut g = Ultragraph::new("ugr1", UniverseMode::Nat);
    let v0 = g.add_vertex("v0");
    g.add_edge("e", v0, VertexSet::cofinite([v0]));
    Arc::new(g)
}

/// The running infinite example: v0 emits one edge onto all of v1, v2, ...,
/// and a diagonal enumeration of singleton edges walks through the w
/// vertices. Named vertices: v0 at index 0, w1..w13 at 1..13, v1..v4 at
/// 14..17; the unnamed rest of the universe are the higher v's.
pub fn grugrex() -> Arc<Ultragraph> {
    let mut g = Ultragraph::new("grugrex", UniverseMode::Nat);
    let v0 = g.add_vertex("v0");
    let w: Vec<VertexId> = (1..=13).map(|i| g.add_vertex(format!("w{i}"))).collect();
    let v: Vec<VertexId> = (1..=4).map(|i| g.add_vertex(format!("v{i}"))).collect();
    let wi = |i: usize| w[i - 1];
    let vi = |i: usize| v[i - 1];
    // r(e1) = everything except v0 and the w's.
    let mut excluded = vec![v0];
    excluded.extend(w.iter().copied());
    g.add_edge("e1", v0, VertexSet::cofinite(excluded));
    let singleton_edges = [
        (vi(1), wi(1)),  // e2
        (vi(2), wi(2)),  // e3
        (wi(1), wi(3)),  // e4
        (wi(3), wi(4)),  // e5
        (wi(2), wi(5)),  // e6
        (vi(3), wi(6)),  // e7
        (vi(4), wi(7)),  // e8
        (wi(6), wi(8)),  // e9
        (wi(5), wi(9)),  // e10
        (wi(4), wi(10)), // e11
        (wi(9), wi(11)), // e12
        (wi(8), wi(12)), // e13
        (wi(7), wi(13)), // e14
    ];
    for (k, (s, t)) in singleton_edges.into_iter().enumerate() {
        g.add_edge(format!("e{}", k + 2), s, VertexSet::singleton(t));
    }
    Arc::new(g)
}

pub fn grugrex_options() -> EgOptions {
    EgOptions {
        window: 4,
        ..Default::default()
    }
}

/// Exhaustive labeled multigraphs with at most `max_v` vertices and at most
/// `max_e` edges (self-loops allowed unless `acyclic_only`).
pub fn all_graphs(max_v: usize, max_e: usize, acyclic_only: bool) -> Vec<Arc<Graph>> {
    let mut out = Vec::new();
    for nv in 1..=max_v {
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for s in 0..nv {
            for t in 0..nv {
                if acyclic_only && s == t {
                    continue;
                }
                pairs.push((s, t));
            }
        }
        // Multisets of pairs, nondecreasing by pair index.
        fn rec(
            pairs: &[(usize, usize)],
            start: usize,
            left: usize,
            acc: &mut Vec<(usize, usize)>,
            sink: &mut Vec<Vec<(usize, usize)>>,
        ) {
            sink.push(acc.clone());
            if left == 0 {
                return;
            }
            for k in start..pairs.len() {
                acc.push(pairs[k]);
                rec(pairs, k, left - 1, acc, sink);
                acc.pop();
            }
        }
        let mut edge_lists = Vec::new();
        rec(&pairs, 0, max_e, &mut Vec::new(), &mut edge_lists);
        for edges in edge_lists {
            // Avoid double-counting across vertex counts: the top vertex
            // must be touched, except at the smallest count.
            if nv > 1 && !edges.iter().any(|&(s, t)| s == nv - 1 || t == nv - 1) {
                continue;
            }
            let mut g = Graph::new(format!("g{nv}"));
            let vs: Vec<VertexId> = (1..=nv).map(|i| g.add_vertex(format!("v{i}"))).collect();
            for (k, &(s, t)) in edges.iter().enumerate() {
                g.add_edge(format!("e{}", k + 1), vs[s], vs[t]);
            }
            if acyclic_only && !g.is_acyclic() {
                continue;
            }
            out.push(Arc::new(g));
        }
    }
    out
}

/// A random labeled multigraph (self-loops allowed).
pub fn random_graph(rng: &mut StdRng, max_v: usize, max_e: usize) -> Arc<Graph> {
    let nv = rng.gen_range(1..=max_v);
    let ne = rng.gen_range(0..=max_e);
    let mut g = Graph::new("rand_graph");
    let vs: Vec<VertexId> = (0..nv).map(|i| g.add_vertex(format!("v{i}"))).collect();
    for k in 0..ne {
        let s = vs[rng.gen_range(0..nv)];
        let t = vs[rng.gen_range(0..nv)];
        g.add_edge(format!("e{}", k + 1), s, t);
    }
    Arc::new(g)
}

/// A random finite ultragraph; may contain sinks.
pub fn random_finite_ultragraph(rng: &mut StdRng, max_v: usize, max_e: usize) -> Arc<Ultragraph> {
    let nv = rng.gen_range(1..=max_v);
    let ne = rng.gen_range(0..=max_e);
    let mut g = Ultragraph::new("rand", UniverseMode::Finite);
    let vs: Vec<VertexId> = (0..nv).map(|i| g.add_vertex(format!("v{i}"))).collect();
    for k in 0..ne {
        let src = vs[rng.gen_range(0..nv)];
        let mut members = Vec::new();
        for &v in &vs {
            if rng.gen_bool(0.4) {
                members.push(v);
            }
        }
        if members.is_empty() {
            members.push(vs[rng.gen_range(0..nv)]);
        }
        g.add_edge(format!("e{}", k + 1), src, VertexSet::from_iter(members));
    }
    Arc::new(g)
}

/// A random finite ultragraph in which every vertex emits at least one
/// edge (no singular vertices).
pub fn random_no_singular_ultragraph(
    rng: &mut StdRng,
    max_v: usize,
    extra_edges: usize,
) -> Arc<Ultragraph> {
    let nv = rng.gen_range(1..=max_v);
    let mut g = Ultragraph::new("rand_ns", UniverseMode::Finite);
    let vs: Vec<VertexId> = (0..nv).map(|i| g.add_vertex(format!("v{i}"))).collect();
    let mut k = 0;
    let add = |g: &mut Ultragraph, src: VertexId, rng: &mut StdRng, k: &mut usize| {
        let mut members = Vec::new();
        for &v in &vs {
            if rng.gen_bool(0.4) {
                members.push(v);
            }
        }
        if members.is_empty() {
            members.push(vs[rng.gen_range(0..nv)]);
        }
        *k += 1;
        g.add_edge(format!("e{k}"), src, VertexSet::from_iter(members));
    };
    for &v in &vs {
        add(&mut g, v, rng, &mut k);
    }
    for _ in 0..rng.gen_range(0..=extra_edges) {
        let src = vs[rng.gen_range(0..nv)];
        add(&mut g, src, rng, &mut k);
    }
    Arc::new(g)
}

/// A random finite ultragraph guaranteed to contain a singular vertex,
/// mixing sinks, regular emitters, and declared infinite emitters with a
/// short declared prefix.
pub fn random_singular_ultragraph(rng: &mut StdRng, max_v: usize) -> Arc<Ultragraph> {
    loop {
        let nv = rng.gen_range(2..=max_v.max(2));
        let mut g = Ultragraph::new("rand_sng", UniverseMode::Finite);
        let vs: Vec<VertexId> = (0..nv).map(|i| g.add_vertex(format!("v{i}"))).collect();
        let mut k = 0;
        for &v in &vs {
            match rng.gen_range(0..3) {
                0 => {} // sink
                1 => {
                    let mut members = Vec::new();
                    for &t in &vs {
                        if rng.gen_bool(0.4) {
                            members.push(t);
                        }
                    }
                    if members.is_empty() {
                        members.push(vs[rng.gen_range(0..nv)]);
                    }
                    k += 1;
                    g.add_edge(format!("e{k}"), v, VertexSet::from_iter(members));
                }
                _ => {
                    let prefix = rng.gen_range(1..=2);
                    for _ in 0..prefix {
                        let t = vs[rng.gen_range(0..nv)];
                        k += 1;
                        g.add_edge(format!("e{k}"), v, VertexSet::singleton(t));
                    }
                    g.declare_infinite(v);
                }
            }
        }
        if g.has_singular_vertices() {
            return Arc::new(g);
        }
    }
}

/// A random graph path starting anywhere, of length <= max_len.
pub fn random_graph_path(g: &Graph, rng: &mut StdRng, max_len: usize) -> Path {
    let nv = g.vertex_count() as u32;
    let mut base = VertexId(rng.gen_range(0..nv));
    let mut edges = Vec::new();
    let len = rng.gen_range(0..=max_len);
    let mut cur = base;
    for _ in 0..len {
        let outs = g.out_edges(cur);
        if outs.is_empty() {
            break;
        }
        let e = outs[rng.gen_range(0..outs.len())];
        edges.push(e);
        cur = g.target(e);
    }
    if let Some(&first) = edges.first() {
        base = g.source(first);
    }
    Path { base, edges }
}

/// A random normalized graph element with a few terms.
pub fn random_gelem(g: &Arc<Graph>, ring: &Ring, rng: &mut StdRng, max_len: usize) -> GElem {
    let mut out = GElem::zero(g.clone(), ring.clone());
    let terms = rng.gen_range(1..=3);
    for _ in 0..terms {
        // A pair of paths sharing their range: extend beta backwards from
        // alpha's endpoint.
        let alpha = random_graph_path(g, rng, max_len);
        let end = match alpha.edges.last() {
            Some(&e) => g.target(e),
            None => alpha.base,
        };
        let mut beta_edges: Vec<EdgeId> = Vec::new();
        let mut cur = end;
        for _ in 0..rng.gen_range(0..=max_len) {
            let ins: Vec<EdgeId> = g
                .edges()
                .filter(|(_, ed)| ed.target == cur)
                .map(|(id, _)| id)
                .collect();
            if ins.is_empty() {
                break;
            }
            let e = ins[rng.gen_range(0..ins.len())];
            cur = g.source(e);
            beta_edges.insert(0, e);
        }
        let beta = Path {
            base: cur,
            edges: beta_edges,
        };
        let coeff = ring.from_i64(rng.gen_range(-3..=3i64));
        let term = GElem::from_monomial(g.clone(), ring.clone(), alpha, beta, coeff);
        out = out.add(&term).expect("same graph");
    }
    out
}

/// A random composable ultragraph edge sequence of length <= max_len.
pub fn random_upath(g: &Ultragraph, rng: &mut StdRng, max_len: usize) -> Vec<EdgeId> {
    let edge_ids: Vec<EdgeId> = g.edge_ids().collect();
    if edge_ids.is_empty() {
        return Vec::new();
    }
    let mut edges = Vec::new();
    let len = rng.gen_range(0..=max_len);
    for _ in 0..len {
        let candidates: Vec<EdgeId> = match edges.last() {
            None => edge_ids.clone(),
            Some(&last) => edge_ids
                .iter()
                .copied()
                .filter(|&f| g.range(last).contains(g.source(f)))
                .collect(),
        };
        if candidates.is_empty() {
            break;
        }
        edges.push(candidates[rng.gen_range(0..candidates.len())]);
    }
    edges
}

/// The vertices a random generator may mention: the whole universe in
/// finite mode, the named aliases in Nat mode.
fn sample_vertices(g: &Ultragraph) -> Vec<VertexId> {
    match g.finite_vertices() {
        Ok(vs) => vs,
        Err(_) => g.named_vertices().collect(),
    }
}

fn random_subset(g: &Ultragraph, rng: &mut StdRng) -> VertexSet {
    let vs = sample_vertices(g);
    if !g.universe.is_finite() && rng.gen_bool(0.3) {
        return VertexSet::cofinite(vs.into_iter().filter(|_| rng.gen_bool(0.5)));
    }
    VertexSet::from_iter(vs.into_iter().filter(|_| rng.gen_bool(0.5)))
}

/// A random ultragraph element over a finite structure.
pub fn random_uelem(g: &Arc<Ultragraph>, ring: &Ring, rng: &mut StdRng, max_len: usize) -> UElem {
    let mut out = UElem::zero(g.clone(), ring.clone());
    let terms = rng.gen_range(1..=3);
    for _ in 0..terms {
        let alpha = random_upath(g, rng, max_len);
        let beta = random_upath(g, rng, max_len);
        let set = random_subset(g, rng);
        let coeff = ring.from_i64(rng.gen_range(-3..=3i64));
        out = out
            .add(&UElem::monomial(
                g.clone(),
                ring.clone(),
                alpha,
                set,
                beta,
                coeff,
            ))
            .expect("same structure");
    }
    out
}

/// A random Exel-Laca element over a finite structure.
pub fn random_el_elem(
    g: &Arc<Ultragraph>,
    ring: &Ring,
    rng: &mut StdRng,
    max_len: usize,
) -> ELElem {
    let mut out = ELElem::zero(g.clone(), ring.clone());
    let terms = rng.gen_range(1..=3);
    for _ in 0..terms {
        let coeff = rng.gen_range(-3..=3i64);
        let kind = if g.edge_count() == 0 {
            0
        } else {
            rng.gen_range(0..3)
        };
        let mut factor = match kind {
            0 => {
                let vs = sample_vertices(g);
                ELElem::p_vertex(g.clone(), ring.clone(), vs[rng.gen_range(0..vs.len())])
            }
            1 => {
                let e = EdgeId(rng.gen_range(0..g.edge_count() as u32));
                ELElem::range_idempotent(g.clone(), ring.clone(), e)
            }
            _ => {
                let alpha = random_upath(g, rng, max_len);
                match ELElem::s_path(g.clone(), ring.clone(), alpha) {
                    Ok(x) => {
                        if rng.gen_bool(0.5) {
                            x.star()
                        } else {
                            x
                        }
                    }
                    Err(_) => {
                        let vs = sample_vertices(g);
                        ELElem::p_vertex(
                            g.clone(),
                            ring.clone(),
                            vs[rng.gen_range(0..vs.len())],
                        )
                    }
                }
            }
        };
        if g.edge_count() > 0 && rng.gen_bool(0.3) {
            let e = EdgeId(rng.gen_range(0..g.edge_count() as u32));
            factor = factor
                .mul(&ELElem::s_edge(g.clone(), ring.clone(), e))
                .expect("same structure");
        }
        out = out.add(&factor.scale(coeff)).expect("same structure");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grugrex_shape() {
        let g = grugrex();
        assert_eq!(g.edge_count(), 14);
        let r1 = g.range(EdgeId(0));
        assert!(r1.contains(g.vertex_by_name("v1").unwrap()));
        assert!(!r1.contains(g.vertex_by_name("w1").unwrap()));
        assert!(r1.size_class().is_infinite());
    }

    #[test]
    fn exhaustive_graph_counts_are_sane() {
        let all = all_graphs(2, 2, false);
        assert!(all.len() > 5);
        let acyclic = all_graphs(2, 2, true);
        assert!(acyclic.iter().all(|g| g.is_acyclic()));
        assert!(acyclic.len() < all.len());
    }

    #[test]
    fn random_generators_are_deterministic() {
        let mut a = seeded(3);
        let mut b = seeded(3);
        let ga = random_finite_ultragraph(&mut a, 4, 4);
        let gb = random_finite_ultragraph(&mut b, 4, 4);
        assert_eq!(ga, gb);
    }

    #[test]
    fn no_singular_generator_has_no_singular() {
        let mut rng = seeded(11);
        for _ in 0..20 {
            let g = random_no_singular_ultragraph(&mut rng, 4, 2);
            assert!(!g.has_singular_vertices());
        }
    }

    #[test]
    fn singular_generator_has_singular() {
        let mut rng = seeded(12);
        for _ in 0..20 {
            let g = random_singular_ultragraph(&mut rng, 4);
            assert!(g.has_singular_vertices());
        }
    }
}
