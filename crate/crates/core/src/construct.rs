//! Structure-level constructions: the graph built from an ultragraph via
//! the word/sigma machinery, its distinguished subgraph, the finite graph
//! approximant attached to an edge set, desingularization by tails, the
//! corner projection, and sigma-units.
//!
//! Truncation is explicit and first-class: every operation that touches a
//! truncated region returns data plus warnings and never extrapolates.

use crate::element::{GElem, UElem};
use crate::error::{Error, Result};
use crate::graph::{Graph, Path, Ultragraph};
use crate::ring::Ring;
use crate::sets::{EdgeId, SizeClass, Universe, VertexId, VertexSet};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

/// A nonempty word over {0,1}; words of length n classify membership in the
/// ranges of the first n edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<bool>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bit(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn prefix(&self, m: usize) -> Word {
        Word(self.0[..m].to_vec())
    }

    pub fn extend(&self, bit: bool) -> Word {
        let mut v = self.0.clone();
        v.push(bit);
        Word(v)
    }

    pub fn is_all_zero(&self) -> bool {
        self.0.iter().all(|b| !b)
    }

    /// Whether the word has the shape (0^{n-1}, 1).
    pub fn is_zeros_then_one(&self) -> bool {
        let n = self.0.len();
        n >= 1 && self.0[n - 1] && self.0[..n - 1].iter().all(|b| !b)
    }

    pub fn parse(text: &str) -> Option<Word> {
        if text.is_empty() {
            return None;
        }
        let mut bits = Vec::with_capacity(text.len());
        for ch in text.chars() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return None,
            }
        }
        Some(Word(bits))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.len(), &self.0).cmp(&(other.len(), &other.0))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// A vertex of the constructed graph: either an original vertex or a word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EgVertex {
    Vx(VertexId),
    Word(Word),
}

/// Options for `build_eg`.
#[derive(Debug, Clone)]
pub struct EgOptions {
    /// Nat mode only: universe indices below this bound are materialized in
    /// addition to every named vertex.
    pub window: u32,
    /// Word depth bound; defaults to the edge count.
    pub depth: Option<usize>,
    pub sigma: SigmaStrategy,
}

#[derive(Debug, Clone)]
pub enum SigmaStrategy {
    /// Assign vertices in index order; each vertex takes the shortest word
    /// whose preimage is still below the capacity.
    Greedy { capacity: usize },
    /// Use (and validate) the structure's own sigma table.
    Table,
}

impl Default for EgOptions {
    fn default() -> Self {
        EgOptions {
            window: 0,
            depth: None,
            sigma: SigmaStrategy::Greedy { capacity: 1 },
        }
    }
}

/// The constructed graph together with all auxiliary data of the
/// construction.
#[derive(Debug, Clone)]
pub struct EGData {
    pub source: Arc<Ultragraph>,
    pub graph: Arc<Graph>,
    /// All words with infinite range within depth, with their ranges,
    /// ordered by (length, bits).
    pub delta: Vec<(Word, VertexSet)>,
    pub gamma0: Vec<Word>,
    pub gamma_plus: Vec<Word>,
    pub w_plus: VertexSet,
    pub w_zero: VertexSet,
    pub sigma: BTreeMap<VertexId, Word>,
    /// X(e_n) per edge, in edge order.
    pub x_table: Vec<Vec<EgVertex>>,
    pub window: u32,
    pub depth: usize,
    pub warnings: Vec<String>,
    /// Sigma words whose preimage may grow beyond the window.
    pub unsettled_words: BTreeSet<Word>,
    vert_of: BTreeMap<EgVertex, VertexId>,
    class_of: Vec<EgVertex>,
    edge_ev: BTreeMap<VertexId, EdgeId>,
    edge_ew: BTreeMap<Word, EdgeId>,
    edge_pair: BTreeMap<(EdgeId, EgVertex), EdgeId>,
}

impl EGData {
    pub fn vertex_of(&self, x: &EgVertex) -> Result<VertexId> {
        self.vert_of
            .get(x)
            .copied()
            .ok_or_else(|| Error::NotReachable(format!("{x:?} not materialized")))
    }

    pub fn class_of(&self, v: VertexId) -> &EgVertex {
        &self.class_of[v.0 as usize]
    }

    pub fn ev_edge(&self, v: VertexId) -> Option<EdgeId> {
        self.edge_ev.get(&v).copied()
    }

    pub fn ew_edge(&self, w: &Word) -> Option<EdgeId> {
        self.edge_ew.get(w).copied()
    }

    pub fn pair_edge(&self, e: EdgeId, x: &EgVertex) -> Option<EdgeId> {
        self.edge_pair.get(&(e, x.clone())).copied()
    }

    pub fn pair_edges(&self) -> impl Iterator<Item = (&(EdgeId, EgVertex), &EdgeId)> + '_ {
        self.edge_pair.iter()
    }

    pub fn delta_range(&self, w: &Word) -> Option<&VertexSet> {
        self.delta.iter().find(|(d, _)| d == w).map(|(_, r)| r)
    }

    pub fn in_gamma0(&self, w: &Word) -> bool {
        self.gamma0.contains(w)
    }

    /// Whether an E-graph vertex lies in the corner acceptor W0 u Gamma0.
    pub fn accepts(&self, v: VertexId) -> bool {
        match self.class_of(v) {
            EgVertex::Vx(x) => self.w_zero.contains(*x),
            EgVertex::Word(w) => self.in_gamma0(w),
        }
    }
}

fn edge_name_of(g: &Ultragraph, e: EdgeId) -> String {
    g.edge_name(e).to_string()
}

/// Builds the graph associated to an ultragraph for a fixed edge
/// enumeration and sigma assignment.
pub fn build_eg(g: &Arc<Ultragraph>, opts: &EgOptions) -> Result<EGData> {
    let u = g.universe;
    let edge_count = g.edge_count();
    let depth = opts.depth.unwrap_or(edge_count).min(edge_count);
    let mut warnings: Vec<String> = Vec::new();

    // Materialized source vertices, in index order.
    let materialized: Vec<VertexId> = match u {
        Universe::Finite(n) => (0..n).map(VertexId).collect(),
        Universe::Nat => {
            let mut set: BTreeSet<VertexId> = g.named_vertices().collect();
            set.extend((0..opts.window).map(VertexId));
            set.into_iter().collect()
        }
    };
    let materialized_set: BTreeSet<VertexId> = materialized.iter().copied().collect();

    // Word-cell refinement. Cells at level n partition the universe by
    // membership in r(e_1)..r(e_n); only infinite cells can refine into
    // infinite cells, so finite cells are dropped. One extra level
    // certifies which depth-D words still refine.
    let mut delta: Vec<(Word, VertexSet)> = Vec::new();
    let mut next_level_infinite: BTreeSet<Word> = BTreeSet::new();
    {
        let mut cells: Vec<(Word, VertexSet)> = vec![(Word(Vec::new()), VertexSet::full(&u))];
        for n in 1..=depth.saturating_add(1).min(edge_count) {
            let rn = g.range(EdgeId((n - 1) as u32));
            let mut next: Vec<(Word, VertexSet)> = Vec::new();
            for (w, r) in &cells {
                for bit in [false, true] {
                    let cell = if bit {
                        r.intersect(rn, &u)
                    } else {
                        r.difference(rn, &u)
                    };
                    if cell.is_empty() || !cell.size_class().is_infinite() {
                        continue;
                    }
                    let word = w.extend(bit);
                    if !word.is_all_zero() {
                        if n <= depth {
                            delta.push((word.clone(), cell.clone()));
                        } else {
                            next_level_infinite.insert(word.prefix(n - 1));
                        }
                    }
                    next.push((word, cell));
                }
            }
            cells = next;
        }
    }
    delta.sort_by(|(a, _), (b, _)| a.cmp(b));

    let gamma0: Vec<Word> = delta
        .iter()
        .filter(|(w, _)| w.is_zeros_then_one())
        .map(|(w, _)| w.clone())
        .collect();
    let gamma_plus: Vec<Word> = delta
        .iter()
        .filter(|(w, _)| !w.is_zeros_then_one())
        .map(|(w, _)| w.clone())
        .collect();

    let mut w_plus = VertexSet::empty();
    for (_, r) in &delta {
        w_plus = w_plus.union(r, &u);
    }
    let w_zero = VertexSet::full(&u).difference(&w_plus, &u);

    // Sigma assignment.
    let mut sigma: BTreeMap<VertexId, Word> = BTreeMap::new();
    let mut unsettled_words: BTreeSet<Word> = BTreeSet::new();
    match &opts.sigma {
        SigmaStrategy::Greedy { capacity } => {
            let mut load: BTreeMap<Word, usize> = BTreeMap::new();
            for &v in &materialized {
                if !w_plus.contains(v) {
                    continue;
                }
                let slot = delta.iter().find(|(w, r)| {
                    r.contains(v) && load.get(w).copied().unwrap_or(0) < *capacity
                });
                match slot {
                    Some((w, _)) => {
                        *load.entry(w.clone()).or_insert(0) += 1;
                        sigma.insert(v, w.clone());
                    }
                    None => warnings.push(format!(
                        "sigma: vertex {} unassigned within depth {depth}",
                        g.vertex_name(v)
                    )),
                }
            }
            if w_plus.size_class().is_infinite() {
                warnings.push(format!(
                    "finite-preimage contract unsatisfiable: W+ is infinite but sigma \
                     provides {} slot(s) within depth {depth}",
                    delta.len() * capacity
                ));
            }
            // A word below capacity whose range extends beyond the window
            // may still receive vertices we cannot see.
            for (w, r) in &delta {
                if load.get(w).copied().unwrap_or(0) < *capacity {
                    let beyond = match r {
                        VertexSet::Cofinite(_) => true,
                        VertexSet::Finite(members) => {
                            members.iter().any(|v| !materialized_set.contains(v))
                        }
                    };
                    if beyond {
                        unsettled_words.insert(w.clone());
                        warnings.push(format!("sigma: word {w} unsettled within window"));
                    }
                }
            }
        }
        SigmaStrategy::Table => {
            for (&v, bits) in &g.sigma_table {
                let w = Word(bits.clone());
                let Some((_, r)) = delta.iter().find(|(d, _)| *d == w) else {
                    return Err(Error::SigmaStrategyFailed(format!(
                        "sigma table assigns {} to {w}, which is not a Delta word",
                        g.vertex_name(v)
                    )));
                };
                if !r.contains(v) {
                    return Err(Error::SigmaStrategyFailed(format!(
                        "sigma table violates v in r(sigma(v)) at {}",
                        g.vertex_name(v)
                    )));
                }
                sigma.insert(v, w);
            }
            for &v in &materialized {
                if w_plus.contains(v) && !sigma.contains_key(&v) {
                    return Err(Error::SigmaStrategyFailed(format!(
                        "sigma table misses vertex {} in W+",
                        g.vertex_name(v)
                    )));
                }
            }
        }
    }

    // X(e_n) per edge.
    let mut x_table: Vec<Vec<EgVertex>> = Vec::with_capacity(edge_count);
    for n in 1..=edge_count {
        let e = EdgeId((n - 1) as u32);
        let mut x: Vec<EgVertex> = Vec::new();
        // Vertices of r(e_n) with no sigma word; they count as length 0.
        let sigma_free = g.range(e).intersect(&w_zero, &u);
        match sigma_free.size_class() {
            SizeClass::Finite(_) => {
                for v in sigma_free.iter_finite() {
                    x.push(EgVertex::Vx(v));
                }
            }
            SizeClass::Infinite => {
                warnings.push(format!(
                    "lemxen: X({}) has infinitely many sigma-free members; truncated \
                     to the window",
                    edge_name_of(g, e)
                ));
                for &v in &materialized {
                    if sigma_free.contains(v) {
                        x.push(EgVertex::Vx(v));
                    }
                }
            }
        }
        for (&v, w) in &sigma {
            if w.len() < n && g.range(e).contains(v) {
                x.push(EgVertex::Vx(v));
            }
        }
        if n <= depth {
            for (w, _) in &delta {
                if w.len() == n && w.bit(n - 1) {
                    x.push(EgVertex::Word(w.clone()));
                }
            }
        } else {
            warnings.push(format!(
                "X({}) incomplete: edge index {n} exceeds depth {depth}",
                edge_name_of(g, e)
            ));
        }
        x.sort();
        x.dedup();
        if x.is_empty() {
            warnings.push(format!("lemxen: X({}) is empty", edge_name_of(g, e)));
        }
        x_table.push(x);
    }

    // Emit the graph.
    let mut graph = Graph::new(format!("eg_{}", g.name));
    let mut used_names: BTreeSet<String> = BTreeSet::new();
    let fresh_name = |base: String, used: &mut BTreeSet<String>| -> String {
        let mut name = base;
        while used.contains(&name) {
            name.push('_');
        }
        used.insert(name.clone());
        name
    };
    let mut vert_of: BTreeMap<EgVertex, VertexId> = BTreeMap::new();
    let mut class_of: Vec<EgVertex> = Vec::new();
    for &v in &materialized {
        let base = match g.vertex_name_raw(v) {
            Some(n) => n.to_string(),
            None => format!("ix{}", v.0),
        };
        let name = fresh_name(base, &mut used_names);
        let id = graph.add_vertex(name);
        vert_of.insert(EgVertex::Vx(v), id);
        class_of.push(EgVertex::Vx(v));
    }
    for (w, _) in &delta {
        let name = fresh_name(format!("b{w}"), &mut used_names);
        let id = graph.add_vertex(name);
        vert_of.insert(EgVertex::Word(w.clone()), id);
        class_of.push(EgVertex::Word(w.clone()));
    }

    let mut edge_ev = BTreeMap::new();
    for (&v, w) in &sigma {
        let src = vert_of[&EgVertex::Word(w.clone())];
        let tgt = vert_of[&EgVertex::Vx(v)];
        let id = graph.add_edge(format!("ev_{}", g.vertex_name(v)), src, tgt);
        edge_ev.insert(tgt, id);
    }
    let mut edge_ew = BTreeMap::new();
    for w in &gamma_plus {
        let parent = w.prefix(w.len() - 1);
        let src = vert_of[&EgVertex::Word(parent)];
        let tgt = vert_of[&EgVertex::Word(w.clone())];
        let id = graph.add_edge(format!("ew_b{w}"), src, tgt);
        edge_ew.insert(w.clone(), id);
    }
    let mut edge_pair = BTreeMap::new();
    for (k, xs) in x_table.iter().enumerate() {
        let e = EdgeId(k as u32);
        let src_v = g.source(e);
        let Some(&src) = vert_of.get(&EgVertex::Vx(src_v)) else {
            warnings.push(format!(
                "edge family ({}) dropped: source {} outside window",
                edge_name_of(g, e),
                g.vertex_name(src_v)
            ));
            continue;
        };
        for x in xs {
            let Some(&tgt) = vert_of.get(x) else {
                warnings.push(format!(
                    "edge ({}, {:?}) dropped: target outside window",
                    edge_name_of(g, e),
                    x
                ));
                continue;
            };
            let label = match x {
                EgVertex::Vx(v) => format!("x_{}_{}", edge_name_of(g, e), g.vertex_name(*v)),
                EgVertex::Word(w) => format!("x_{}_b{w}", edge_name_of(g, e)),
            };
            let id = graph.add_edge(label, src, tgt);
            edge_pair.insert((e, x.clone()), id);
        }
    }

    // Frontier marks: incomplete emitters of the constructed graph.
    for (w, _) in &delta {
        if w.len() == depth && depth < edge_count && next_level_infinite.contains(w) {
            graph.mark_frontier(vert_of[&EgVertex::Word(w.clone())]);
        }
    }
    for w in &unsettled_words {
        graph.mark_frontier(vert_of[&EgVertex::Word(w.clone())]);
    }
    for k in 0..x_table.len() {
        let e = EdgeId(k as u32);
        if k + 1 > depth {
            if let Some(&v) = vert_of.get(&EgVertex::Vx(g.source(e))) {
                graph.mark_frontier(v);
            }
        }
    }
    for &v in g.declared_infinite.iter().chain(g.frontier.iter()) {
        if let Some(&id) = vert_of.get(&EgVertex::Vx(v)) {
            graph.mark_frontier(id);
        }
    }

    // The sigma assignment travels with the constructed graph.
    for (&v, w) in &sigma {
        let id = vert_of[&EgVertex::Vx(v)];
        graph.sigma_table.insert(id, w.0.clone());
    }

    // Every vertex has at most one incoming subgraph-F edge, which is what
    // makes alpha paths unique.
    debug_assert!({
        let mut indeg: BTreeMap<VertexId, usize> = BTreeMap::new();
        for id in edge_ev.values().chain(edge_ew.values()) {
            *indeg.entry(graph.target(*id)).or_insert(0) += 1;
        }
        indeg.values().all(|&d| d <= 1)
    });

    Ok(EGData {
        source: g.clone(),
        graph: Arc::new(graph),
        delta,
        gamma0,
        gamma_plus,
        w_plus,
        w_zero,
        sigma,
        x_table,
        window: opts.window,
        depth,
        warnings,
        unsettled_words,
        vert_of,
        class_of,
        edge_ev,
        edge_ew,
        edge_pair,
    })
}

/// The distinguished subgraph: all vertices, only the sigma and word edges.
pub fn subgraph_f(eg: &EGData) -> Graph {
    let mut f = Graph::new(format!("f_{}", eg.source.name));
    for v in eg.graph.vertices() {
        f.add_vertex(eg.graph.vertex_name(v));
    }
    let keep: BTreeSet<EdgeId> = eg
        .edge_ev
        .values()
        .chain(eg.edge_ew.values())
        .copied()
        .collect();
    for (id, e) in eg.graph.edges() {
        if keep.contains(&id) {
            f.add_edge(e.name.clone(), e.source, e.target);
        }
    }
    f
}

/// The unique subgraph-F path ending at `x` and starting in W0 u Gamma0.
pub fn alpha_path(eg: &EGData, x: &EgVertex) -> Result<Path> {
    let target = eg.vertex_of(x)?;
    let mut edges_rev: Vec<EdgeId> = Vec::new();
    let mut cur = x.clone();
    loop {
        match &cur {
            EgVertex::Vx(v) => {
                if eg.w_zero.contains(*v) {
                    break;
                }
                let word = eg.sigma.get(v).ok_or_else(|| {
                    Error::NotReachable(format!(
                        "sigma undefined for {} within the window",
                        eg.source.vertex_name(*v)
                    ))
                })?;
                let ev = eg.ev_edge(eg.vertex_of(&cur)?).ok_or_else(|| {
                    Error::NotReachable(format!(
                        "sigma edge missing for {}",
                        eg.source.vertex_name(*v)
                    ))
                })?;
                edges_rev.push(ev);
                cur = EgVertex::Word(word.clone());
            }
            EgVertex::Word(w) => {
                if w.is_zeros_then_one() {
                    if !eg.in_gamma0(w) {
                        return Err(Error::NotReachable(format!(
                            "word {w} is outside Gamma0"
                        )));
                    }
                    break;
                }
                let ew = eg
                    .ew_edge(w)
                    .ok_or_else(|| Error::NotReachable(format!("word edge missing for {w}")))?;
                edges_rev.push(ew);
                cur = EgVertex::Word(w.prefix(w.len() - 1));
            }
        }
    }
    edges_rev.reverse();
    let base = match edges_rev.first() {
        Some(&e) => eg.graph.source(e),
        None => target,
    };
    Ok(Path {
        base,
        edges: edges_rev,
    })
}

/// What a vertex of the finite graph approximant stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GfVertexKind {
    Edge(EdgeId),
    Subset(Vec<EdgeId>),
}

/// The finite graph approximant attached to a finite edge set F. Vertices
/// are the edges of F plus the qualifying nonempty subsets X of F; edges
/// are the composable pairs and the membership pairs.
pub fn build_gf(g: &Ultragraph, f_set: &[EdgeId]) -> Graph {
    build_gf_detailed(g, f_set).0
}

/// As `build_gf`, also reporting what each vertex stands for, in vertex
/// order.
pub fn build_gf_detailed(g: &Ultragraph, f_set: &[EdgeId]) -> (Graph, Vec<GfVertexKind>) {
    let f: Vec<EdgeId> = f_set.to_vec();
    assert!(f.len() <= 16, "approximant subsets scan caps at 16 edges");
    let f_lookup: BTreeSet<EdgeId> = f.iter().copied().collect();
    let mut gf = Graph::new(format!("gf_{}", g.name));
    let mut kinds: Vec<GfVertexKind> = Vec::new();
    let mut vert_of_edge: BTreeMap<EdgeId, VertexId> = BTreeMap::new();
    for &e in &f {
        let id = gf.add_vertex(g.edge_name(e).to_string());
        kinds.push(GfVertexKind::Edge(e));
        vert_of_edge.insert(e, id);
    }
    // Qualifying subsets: some edge outside F has its source in
    // r(X, F \ X).
    let mut subset_vertices: Vec<(Vec<EdgeId>, VertexId)> = Vec::new();
    let n = f.len();
    for mask in 1..(1u32 << n) {
        let x: Vec<EdgeId> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| f[i])
            .collect();
        let complement: Vec<EdgeId> =
            f.iter().copied().filter(|e| !x.contains(e)).collect();
        let r = crate::sets::r_lambda_mu(g, &x, &complement);
        let escapes = g
            .edge_ids()
            .any(|e| !f_lookup.contains(&e) && r.contains(g.source(e)));
        // A declared-infinite or frontier source inside r(X, F \ X) hides
        // undeclared edges, which also escape F.
        let hidden = g
            .declared_infinite
            .iter()
            .chain(g.frontier.iter())
            .any(|&v| r.contains(v));
        if escapes || hidden {
            let label = format!(
                "X_{}",
                x.iter()
                    .map(|&e| g.edge_name(e).to_string())
                    .collect::<Vec<_>>()
                    .join("_")
            );
            let id = gf.add_vertex(label);
            kinds.push(GfVertexKind::Subset(x.clone()));
            subset_vertices.push((x, id));
        }
    }
    for &e in &f {
        for &f2 in &f {
            if g.range(e).contains(g.source(f2)) {
                gf.add_edge(
                    format!("p_{}_{}", g.edge_name(e), g.edge_name(f2)),
                    vert_of_edge[&e],
                    vert_of_edge[&f2],
                );
            }
        }
    }
    for (x, id) in &subset_vertices {
        for &e in x {
            gf.add_edge(
                format!("p_{}_{}", g.edge_name(e), gf.vertex_name(*id)),
                vert_of_edge[&e],
                *id,
            );
        }
    }
    (gf, kinds)
}

/// Where an original edge went under desingularization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DesingEdgeImage {
    /// The edge survives unchanged.
    Kept(EdgeId),
    /// The edge was rerouted through a tail: the image is the path
    /// f_1 .. f_{i-1} g_i.
    TailPath(Vec<EdgeId>),
    /// The tail is too short to carry this edge.
    Truncated,
}

#[derive(Debug, Clone)]
pub struct Desingularization {
    pub original: Arc<Ultragraph>,
    pub result: Arc<Ultragraph>,
    pub edge_map: BTreeMap<EdgeId, DesingEdgeImage>,
    /// The truncation frontier: tail vertices whose emissions were cut.
    pub frontier: VertexSet,
    /// The added tail vertices.
    pub new_vertices: BTreeSet<VertexId>,
    pub warnings: Vec<String>,
}

impl Desingularization {
    /// Reinterprets an original vertex set inside the desingularization: a
    /// cofinite description must exclude the added tail vertices.
    pub fn patch_set(&self, s: &VertexSet) -> VertexSet {
        match s {
            VertexSet::Finite(_) => s.clone(),
            VertexSet::Cofinite(ex) => {
                let mut ex = ex.clone();
                ex.extend(self.new_vertices.iter().copied());
                VertexSet::Cofinite(ex)
            }
        }
    }
}

/// Adds a tail (truncated at `depth` new vertices) to every singular vertex
/// in scope. At infinite emitters the declared edges are the consumed
/// prefix of the enumeration and are rerouted through the tail.
pub fn desingularize(g: &Arc<Ultragraph>, depth: usize) -> Result<Desingularization> {
    let mut warnings = Vec::new();
    let singular = g.singular_vertices();
    let scope: Vec<VertexId> = match &singular {
        VertexSet::Finite(set) => set.iter().copied().collect(),
        VertexSet::Cofinite(_) => {
            warnings.push(
                "infinite sink set: tails added to explicitly named sinks only".to_string(),
            );
            g.named_vertices().filter(|&v| g.is_singular(v)).collect()
        }
    };

    let mut out = Ultragraph::new(format!("desing_{}", g.name), g.mode());
    // Original vertices keep their indices.
    match g.universe {
        Universe::Finite(n) => {
            for k in 0..n {
                out.add_vertex(g.vertex_name(VertexId(k)));
            }
        }
        Universe::Nat => {
            for v in g.named_vertices() {
                out.add_vertex_at(g.vertex_name(v), v.0)?;
            }
        }
    }

    // New tail vertices. In Nat mode their indices were anonymous universe
    // members before, so every original cofinite range must exclude them.
    let mut tails: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    let mut new_vertices: BTreeSet<VertexId> = BTreeSet::new();
    for &v0 in &scope {
        let mut tail = Vec::with_capacity(depth);
        for i in 1..=depth {
            let w = out.add_vertex(format!("{}_t{}", g.vertex_name(v0), i));
            new_vertices.insert(w);
            tail.push(w);
        }
        tails.insert(v0, tail);
    }
    let patch = |set: &VertexSet| -> VertexSet {
        match set {
            VertexSet::Finite(_) => set.clone(),
            VertexSet::Cofinite(ex) => {
                let mut ex = ex.clone();
                ex.extend(new_vertices.iter().copied());
                VertexSet::Cofinite(ex)
            }
        }
    };

    // Kept edges first, in declaration order; rerouted edges get their
    // tail paths below.
    let mut edge_map: BTreeMap<EdgeId, DesingEdgeImage> = BTreeMap::new();
    for e in g.edge_ids() {
        let src = g.source(e);
        if g.is_infinite_emitter(src) && scope.contains(&src) {
            continue; // rerouted below
        }
        let id = out.add_edge(g.edge_name(e).to_string(), src, patch(g.range(e)));
        edge_map.insert(e, DesingEdgeImage::Kept(id));
    }
    for &v0 in &scope {
        let tail = &tails[&v0];
        let emitted: Vec<EdgeId> = if g.is_infinite_emitter(v0) {
            g.out_edges(v0)
        } else {
            Vec::new()
        };
        let mut f_edges: Vec<EdgeId> = Vec::with_capacity(depth);
        for i in 1..=depth {
            let src = if i == 1 { v0 } else { tail[i - 2] };
            let fi = out.add_edge(
                format!("{}_f{}", g.vertex_name(v0), i),
                src,
                VertexSet::singleton(tail[i - 1]),
            );
            f_edges.push(fi);
            if i <= emitted.len() {
                let gi = out.add_edge(
                    format!("{}_g{}", g.vertex_name(v0), i),
                    src,
                    patch(g.range(emitted[i - 1])),
                );
                let mut path: Vec<EdgeId> = f_edges[..i - 1].to_vec();
                path.push(gi);
                edge_map.insert(emitted[i - 1], DesingEdgeImage::TailPath(path));
            }
        }
        for (i, &e) in emitted.iter().enumerate() {
            if i + 1 > depth {
                warnings.push(format!(
                    "tail at {} truncated before edge {}",
                    g.vertex_name(v0),
                    g.edge_name(e)
                ));
                edge_map.insert(e, DesingEdgeImage::Truncated);
            }
        }
        // Frontier: the deepest tail vertex always; for infinite emitters
        // also every tail vertex missing its g edge.
        let complete_upto = emitted.len().min(depth);
        for (i, &w) in tail.iter().enumerate() {
            let idx = i + 1; // w = w_idx, emits f_{idx+1} (and g_{idx+1})
            let missing_g = g.is_infinite_emitter(v0) && idx + 1 > complete_upto;
            if idx == depth || missing_g {
                out.mark_frontier(w);
            }
        }
    }

    let frontier = VertexSet::from_iter(out.frontier.iter().copied());
    Ok(Desingularization {
        original: g.clone(),
        result: Arc::new(out),
        edge_map,
        frontier,
        new_vertices,
        warnings,
    })
}

/// The corner projection determined by the full idempotent: it keeps the
/// monomials whose chosen side starts in W0 u Gamma0.
#[derive(Debug, Clone)]
pub struct CornerQ {
    pub eg: Arc<EGData>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CornerSide {
    Left,
    Right,
    Both,
}

impl CornerQ {
    pub fn new(eg: Arc<EGData>) -> Self {
        CornerQ { eg }
    }

    pub fn project(&self, x: &GElem, side: CornerSide) -> GElem {
        let mut out = GElem::zero(x.graph.clone(), x.ring.clone());
        for (m, c) in x.monomials() {
            let keep_left = self.eg.accepts(m.alpha.base);
            let keep_right = self.eg.accepts(m.beta.base);
            let keep = match side {
                CornerSide::Left => keep_left,
                CornerSide::Right => keep_right,
                CornerSide::Both => keep_left && keep_right,
            };
            if keep {
                out = out
                    .add(&GElem::from_monomial(
                        x.graph.clone(),
                        x.ring.clone(),
                        m.alpha.clone(),
                        m.beta.clone(),
                        c.clone(),
                    ))
                    .expect("same graph");
            }
        }
        out
    }
}

/// The k-th sigma-unit t_k: the sum of the idempotents of the first k
/// disjointified members of the canonical G0 enumeration.
pub fn sigma_unit(g: &Arc<Ultragraph>, ring: &Ring, k: usize) -> Result<UElem> {
    let algebra = crate::sets::generate_g0(g)?;
    let members = algebra.members()?.to_vec();
    sigma_unit_with(g, ring, &members, k)
}

/// Sigma-unit over an explicit enumeration of G0 members.
pub fn sigma_unit_with(
    g: &Arc<Ultragraph>,
    ring: &Ring,
    enumeration: &[VertexSet],
    k: usize,
) -> Result<UElem> {
    if k == 0 || k > enumeration.len() {
        return Err(Error::Unsupported(format!(
            "sigma-unit index {k} outside 1..={}",
            enumeration.len()
        )));
    }
    let atoms = crate::sets::disjointify(enumeration, &g.universe);
    let mut out = UElem::zero(g.clone(), ring.clone());
    for atom in atoms.iter().take(k) {
        out = out.add(&UElem::p(g.clone(), ring.clone(), atom.clone()))?;
    }
    Ok(out)
}

/// r'(omega): the vertices whose sigma word extends omega.
pub fn r_prime(eg: &EGData, w: &Word) -> VertexSet {
    let n = w.len();
    VertexSet::from_iter(
        eg.sigma
            .iter()
            .filter(|(_, s)| s.len() >= n && s.prefix(n) == *w)
            .map(|(&v, _)| v),
    )
}
