//! Combinatorial data model for graphs, ultragraphs, paths, and cycles.
//!
//! Edge enumeration order is the declaration order and is part of a
//! structure's identity: the word/sigma constructions downstream depend on
//! it, so it is serialized with the structure.

use crate::error::{Error, Result};
use crate::sets::{EdgeId, SizeClass, Universe, VertexId, VertexSet};
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// A structural invariant violation, reported as data rather than a fault.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub location: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphEdge {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// A directed graph with named vertices and enumerated edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    pub name: String,
    vertex_names: Vec<String>,
    vertex_lookup: HashMap<String, VertexId>,
    edges: Vec<GraphEdge>,
    edge_lookup: HashMap<String, EdgeId>,
    /// Vertices whose emitted edges were cut by a truncation; no LP4
    /// relation applies at them.
    pub frontier: BTreeSet<VertexId>,
    /// An optional sigma table documenting a word construction (vertex ->
    /// word bits); serialized with the graph.
    pub sigma_table: BTreeMap<VertexId, Vec<bool>>,
    /// Vertices mentioned but never declared (kept for validate()).
    undeclared: BTreeSet<VertexId>,
}

impl Graph {
    pub fn new(name: impl Into<String>) -> Self {
        Graph {
            name: name.into(),
            vertex_names: Vec::new(),
            vertex_lookup: HashMap::new(),
            edges: Vec::new(),
            edge_lookup: HashMap::new(),
            frontier: BTreeSet::new(),
            sigma_table: BTreeMap::new(),
            undeclared: BTreeSet::new(),
        }
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> VertexId {
        let name = name.into();
        if let Some(&v) = self.vertex_lookup.get(&name) {
            return v;
        }
        let v = VertexId(self.vertex_names.len() as u32);
        self.vertex_lookup.insert(name.clone(), v);
        self.vertex_names.push(name);
        v
    }

    /// Interns a vertex mentioned without declaration; validate() reports it.
    pub fn mention_vertex(&mut self, name: &str) -> VertexId {
        if let Some(&v) = self.vertex_lookup.get(name) {
            return v;
        }
        let v = self.add_vertex(name);
        self.undeclared.insert(v);
        v
    }

    pub fn add_edge(
        &mut self,
        name: impl Into<String>,
        source: VertexId,
        target: VertexId,
    ) -> EdgeId {
        let name = name.into();
        let e = EdgeId(self.edges.len() as u32);
        self.edge_lookup.insert(name.clone(), e);
        self.edges.push(GraphEdge {
            name,
            source,
            target,
        });
        e
    }

    pub fn mark_frontier(&mut self, v: VertexId) {
        self.frontier.insert(v);
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn universe(&self) -> Universe {
        Universe::Finite(self.vertex_names.len() as u32)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_names.len() as u32).map(VertexId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0 as usize]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_lookup.get(name).copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, &GraphEdge)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .map(|(k, e)| (EdgeId(k as u32), e))
    }

    pub fn edge(&self, e: EdgeId) -> &GraphEdge {
        &self.edges[e.0 as usize]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0 as usize].name
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edge_lookup.get(name).copied()
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edge(e).source
    }

    pub fn target(&self, e: EdgeId) -> VertexId {
        self.edge(e).target
    }

    pub fn out_edges(&self, v: VertexId) -> Vec<EdgeId> {
        self.edges()
            .filter(|(_, e)| e.source == v)
            .map(|(id, _)| id)
            .collect()
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        !self.frontier.contains(&v) && self.out_edges(v).is_empty()
    }

    /// 0 < |s^-1(v)| < infinity, with frontier vertices treated as infinite
    /// emitters.
    pub fn is_regular(&self, v: VertexId) -> bool {
        !self.frontier.contains(&v) && !self.out_edges(v).is_empty()
    }

    /// The designated edge used to orient LP4 rewriting: least edge index
    /// in s^-1(v).
    pub fn special_edge(&self, v: VertexId) -> Option<EdgeId> {
        if self.is_regular(v) {
            self.out_edges(v).into_iter().next()
        } else {
            None
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for &v in &self.undeclared {
            out.push(Violation {
                location: format!("vertex {}", self.vertex_name(v)),
                message: "unknown vertex".into(),
            });
        }
        out
    }

    pub fn is_acyclic(&self) -> bool {
        find_cycles_graph(self, self.edge_count().max(1)).is_empty()
    }

    /// Views the graph as an ultragraph with singleton ranges.
    pub fn to_ultragraph(&self) -> Ultragraph {
        let mut g = Ultragraph::new(self.name.clone(), UniverseMode::Finite);
        for v in self.vertices() {
            g.add_vertex(self.vertex_name(v).to_string());
        }
        for (_, e) in self.edges() {
            g.add_edge(
                e.name.clone(),
                e.source,
                VertexSet::singleton(e.target),
            );
        }
        for &v in &self.frontier {
            g.mark_frontier(v);
        }
        g
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UniverseMode {
    Finite,
    Nat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UltraEdge {
    pub name: String,
    pub source: VertexId,
    pub range: VertexSet,
}

/// An ultragraph: edges point from a vertex to a nonempty vertex set. In
/// Nat mode the universe is the natural numbers and named vertices alias
/// indices; ranges are then finite or cofinite sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ultragraph {
    pub name: String,
    pub universe: Universe,
    mode: UniverseMode,
    vertex_names: BTreeMap<VertexId, String>,
    vertex_lookup: HashMap<String, VertexId>,
    next_auto_index: u32,
    edges: Vec<UltraEdge>,
    edge_lookup: HashMap<String, EdgeId>,
    /// Vertices declared to emit infinitely many edges; the declared edge
    /// list is a finite prefix of that enumeration.
    pub declared_infinite: BTreeSet<VertexId>,
    /// Truncation frontier: no uLP4 relation applies at these vertices.
    pub frontier: BTreeSet<VertexId>,
    /// Optional user-supplied sigma table (vertex -> word bits).
    pub sigma_table: BTreeMap<VertexId, Vec<bool>>,
    undeclared: BTreeSet<VertexId>,
}

impl Ultragraph {
    pub fn new(name: impl Into<String>, mode: UniverseMode) -> Self {
        Ultragraph {
            name: name.into(),
            universe: match mode {
                UniverseMode::Finite => Universe::Finite(0),
                UniverseMode::Nat => Universe::Nat,
            },
            mode,
            vertex_names: BTreeMap::new(),
            vertex_lookup: HashMap::new(),
            next_auto_index: 0,
            edges: Vec::new(),
            edge_lookup: HashMap::new(),
            declared_infinite: BTreeSet::new(),
            frontier: BTreeSet::new(),
            sigma_table: BTreeMap::new(),
            undeclared: BTreeSet::new(),
        }
    }

    pub fn mode(&self) -> UniverseMode {
        self.mode
    }

    fn bump_universe(&mut self) {
        if self.mode == UniverseMode::Finite {
            self.universe = Universe::Finite(self.next_auto_index);
        }
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> VertexId {
        let name = name.into();
        if let Some(&v) = self.vertex_lookup.get(&name) {
            return v;
        }
        while self.vertex_names.contains_key(&VertexId(self.next_auto_index)) {
            self.next_auto_index += 1;
        }
        let v = VertexId(self.next_auto_index);
        self.next_auto_index += 1;
        self.vertex_lookup.insert(name.clone(), v);
        self.vertex_names.insert(v, name);
        self.bump_universe();
        v
    }

    /// Declares a vertex at an explicit universe index (Nat mode `@index`).
    pub fn add_vertex_at(&mut self, name: impl Into<String>, index: u32) -> Result<VertexId> {
        let name = name.into();
        let v = VertexId(index);
        if self.vertex_names.contains_key(&v) {
            return Err(Error::Unsupported(format!(
                "index {index} already taken by {}",
                self.vertex_names[&v]
            )));
        }
        self.vertex_lookup.insert(name.clone(), v);
        self.vertex_names.insert(v, name);
        if index >= self.next_auto_index {
            self.next_auto_index = index + 1;
        }
        self.bump_universe();
        Ok(v)
    }

    pub fn mention_vertex(&mut self, name: &str) -> VertexId {
        if let Some(&v) = self.vertex_lookup.get(name) {
            return v;
        }
        let v = self.add_vertex(name);
        self.undeclared.insert(v);
        v
    }

    pub fn add_edge(
        &mut self,
        name: impl Into<String>,
        source: VertexId,
        range: VertexSet,
    ) -> EdgeId {
        let name = name.into();
        let e = EdgeId(self.edges.len() as u32);
        self.edge_lookup.insert(name.clone(), e);
        let range = range.canonical(&self.universe);
        self.edges.push(UltraEdge {
            name,
            source,
            range,
        });
        e
    }

    pub fn declare_infinite(&mut self, v: VertexId) {
        self.declared_infinite.insert(v);
    }

    pub fn mark_frontier(&mut self, v: VertexId) {
        self.frontier.insert(v);
    }

    pub fn named_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertex_names.keys().copied()
    }

    pub fn vertex_name(&self, v: VertexId) -> String {
        match self.vertex_names.get(&v) {
            Some(n) => n.clone(),
            None => format!("@{}", v.0),
        }
    }

    pub fn vertex_name_raw(&self, v: VertexId) -> Option<&str> {
        self.vertex_names.get(&v).map(|s| s.as_str())
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_lookup.get(name).copied()
    }

    pub fn vertex_count(&self) -> Option<usize> {
        match self.universe {
            Universe::Finite(n) => Some(n as usize),
            Universe::Nat => None,
        }
    }

    /// All vertices in a finite universe, in index order.
    pub fn finite_vertices(&self) -> Result<Vec<VertexId>> {
        match self.universe {
            Universe::Finite(n) => Ok((0..n).map(VertexId).collect()),
            Universe::Nat => Err(Error::TruncationExceeded(
                "Nat-mode vertex universe cannot be listed".into(),
            )),
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = &UltraEdge> + '_ {
        self.edges.iter()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    pub fn edge(&self, e: EdgeId) -> &UltraEdge {
        &self.edges[e.0 as usize]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0 as usize].name
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edge_lookup.get(name).copied()
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edge(e).source
    }

    pub fn range(&self, e: EdgeId) -> &VertexSet {
        &self.edge(e).range
    }

    pub fn out_edges(&self, v: VertexId) -> Vec<EdgeId> {
        self.edges()
            .enumerate()
            .filter(|(_, e)| e.source == v)
            .map(|(k, _)| EdgeId(k as u32))
            .collect()
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out_edges(v).is_empty()
            && !self.declared_infinite.contains(&v)
            && !self.frontier.contains(&v)
    }

    pub fn is_infinite_emitter(&self, v: VertexId) -> bool {
        self.declared_infinite.contains(&v) || self.frontier.contains(&v)
    }

    /// 0 < |s^-1(v)| < infinity.
    pub fn is_regular(&self, v: VertexId) -> bool {
        !self.out_edges(v).is_empty() && !self.is_infinite_emitter(v)
    }

    pub fn is_singular(&self, v: VertexId) -> bool {
        self.is_sink(v) || self.is_infinite_emitter(v)
    }

    /// Whether any vertex is singular. In Nat mode a cofinite crowd of
    /// sinks counts.
    pub fn has_singular_vertices(&self) -> bool {
        !self.singular_vertices().is_empty()
    }

    /// The set of sinks and infinite emitters, as a finite or cofinite set.
    pub fn singular_vertices(&self) -> VertexSet {
        let emitters: BTreeSet<VertexId> = self.edges().map(|e| e.source).collect();
        match self.universe {
            Universe::Finite(n) => VertexSet::from_iter((0..n).map(VertexId).filter(|v| {
                !emitters.contains(v)
                    || self.declared_infinite.contains(v)
                    || self.frontier.contains(v)
            })),
            Universe::Nat => {
                // Complement of the regular emitters.
                let regular: BTreeSet<VertexId> = emitters
                    .into_iter()
                    .filter(|v| {
                        !self.declared_infinite.contains(v) && !self.frontier.contains(v)
                    })
                    .collect();
                VertexSet::cofinite(regular)
            }
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for &v in &self.undeclared {
            out.push(Violation {
                location: format!("vertex {}", self.vertex_name(v)),
                message: "unknown vertex".into(),
            });
        }
        for (k, e) in self.edges.iter().enumerate() {
            if e.range.is_empty() {
                out.push(Violation {
                    location: format!("edge {}", e.name),
                    message: "empty range".into(),
                });
            }
            if let Universe::Finite(n) = self.universe {
                if e.source.0 >= n {
                    out.push(Violation {
                        location: format!("edge {}", e.name),
                        message: "source outside universe".into(),
                    });
                }
            }
            let _ = k;
        }
        for (v, bits) in &self.sigma_table {
            if bits.is_empty() || bits.iter().all(|b| !b) {
                out.push(Violation {
                    location: format!("sigma {}", self.vertex_name(*v)),
                    message: "sigma word must contain a 1".into(),
                });
            }
        }
        out
    }

    /// Interprets the ultragraph as a graph when every range is a singleton.
    pub fn try_to_graph(&self) -> Option<Graph> {
        if self.universe == Universe::Nat {
            return None;
        }
        let mut g = Graph::new(self.name.clone());
        for v in self.named_vertices() {
            g.add_vertex(self.vertex_name(v));
        }
        for e in self.edges() {
            match e.range.size_class() {
                SizeClass::Finite(1) => {
                    let t = e.range.pick().unwrap();
                    g.add_edge(e.name.clone(), e.source, t);
                }
                _ => return None,
            }
        }
        for &v in &self.frontier {
            g.mark_frontier(v);
        }
        if !self.declared_infinite.is_empty() {
            return None;
        }
        Some(g)
    }
}

/// A finite path: a base vertex and a composable edge sequence. Length-0
/// paths carry an empty edge list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub base: VertexId,
    pub edges: Vec<EdgeId>,
}

impl Path {
    pub fn vertex(v: VertexId) -> Self {
        Path {
            base: v,
            edges: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Uniform access to the walk structure of graphs and ultragraphs.
pub trait Walkable {
    /// Edges that may follow `e` in a path.
    fn composes(&self, e: EdgeId, f: EdgeId) -> bool;
    fn edge_source(&self, e: EdgeId) -> VertexId;
    fn out_edge_ids(&self, v: VertexId) -> Vec<EdgeId>;
    /// Whether the path closing predicate holds: the source of the first
    /// edge lies in (or equals) the range of the last.
    fn closes_cycle(&self, first: EdgeId, last: EdgeId) -> bool;
    fn all_edge_ids(&self) -> Vec<EdgeId>;
}

impl Walkable for Graph {
    fn composes(&self, e: EdgeId, f: EdgeId) -> bool {
        self.target(e) == self.source(f)
    }
    fn edge_source(&self, e: EdgeId) -> VertexId {
        self.source(e)
    }
    fn out_edge_ids(&self, v: VertexId) -> Vec<EdgeId> {
        self.out_edges(v)
    }
    fn closes_cycle(&self, first: EdgeId, last: EdgeId) -> bool {
        self.source(first) == self.target(last)
    }
    fn all_edge_ids(&self) -> Vec<EdgeId> {
        (0..self.edge_count() as u32).map(EdgeId).collect()
    }
}

impl Walkable for Ultragraph {
    fn composes(&self, e: EdgeId, f: EdgeId) -> bool {
        self.range(e).contains(self.source(f))
    }
    fn edge_source(&self, e: EdgeId) -> VertexId {
        self.source(e)
    }
    fn out_edge_ids(&self, v: VertexId) -> Vec<EdgeId> {
        self.out_edges(v)
    }
    fn closes_cycle(&self, first: EdgeId, last: EdgeId) -> bool {
        self.range(last).contains(self.source(first))
    }
    fn all_edge_ids(&self) -> Vec<EdgeId> {
        self.edge_ids().collect()
    }
}

/// All cycles of length <= max_len, base-pointed: rotations are distinct
/// records, matching the base-pointed usage of exits.
pub fn find_cycles<W: Walkable>(w: &W, max_len: usize) -> Vec<Path> {
    let mut out = Vec::new();
    for first in w.all_edge_ids() {
        let mut stack = vec![vec![first]];
        while let Some(path) = stack.pop() {
            let last = *path.last().unwrap();
            if w.closes_cycle(path[0], last) {
                out.push(Path {
                    base: w.edge_source(path[0]),
                    edges: path.clone(),
                });
            }
            if path.len() < max_len {
                for next in w.all_edge_ids() {
                    if w.composes(last, next) {
                        let mut ext = path.clone();
                        ext.push(next);
                        stack.push(ext);
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn find_cycles_graph(g: &Graph, max_len: usize) -> Vec<Path> {
    find_cycles(g, max_len)
}

/// All composable paths of length <= max_len starting at `from`, in
/// lexicographic order by edge index (the length-0 path first).
pub fn enumerate_paths<W: Walkable>(w: &W, from: VertexId, max_len: usize) -> Vec<Path> {
    let mut out = vec![Path::vertex(from)];
    fn extend<W: Walkable>(
        w: &W,
        prefix: &mut Vec<EdgeId>,
        out: &mut Vec<Path>,
        base: VertexId,
        max_len: usize,
    ) {
        if prefix.len() >= max_len {
            return;
        }
        let nexts: Vec<EdgeId> = match prefix.last() {
            None => w.out_edge_ids(base),
            Some(&last) => w
                .all_edge_ids()
                .into_iter()
                .filter(|&f| w.composes(last, f))
                .collect(),
        };
        for f in nexts {
            prefix.push(f);
            out.push(Path {
                base,
                edges: prefix.clone(),
            });
            extend(w, prefix, out, base, max_len);
            prefix.pop();
        }
    }
    let mut prefix = Vec::new();
    extend(w, &mut prefix, &mut out, from, max_len);
    out
}

/// Simple cycles only: no strictly earlier edge range already contains the
/// base. Every cycle factors into simple cycles, so these suffice for
/// Condition (L).
pub fn find_simple_cycles<W: Walkable>(w: &W, max_len: usize) -> Vec<Path> {
    find_cycles(w, max_len)
        .into_iter()
        .filter(|c| {
            // no proper prefix closes at the base
            (0..c.edges.len() - 1).all(|i| !w.closes_cycle(c.edges[0], c.edges[i]))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn line_graph(n: usize) -> Graph {
        let mut g = Graph::new(format!("line{n}"));
        let vs: Vec<VertexId> = (1..=n).map(|i| g.add_vertex(format!("v{i}"))).collect();
        for i in 1..n {
            g.add_edge(format!("e{i}"), vs[i - 1], vs[i]);
        }
        g
    }

    pub fn rose(n: usize) -> Graph {
        let mut g = Graph::new(format!("rose{n}"));
        let v = g.add_vertex("v");
        for i in 1..=n {
            g.add_edge(format!("e{i}"), v, v);
        }
        g
    }

    #[test]
    fn single_loop_validates() {
        let g = rose(1);
        assert!(g.validate().is_empty());
    }

    #[test]
    fn singular_vertices_line() {
        let g = line_graph(3).to_ultragraph();
        let sv = g.singular_vertices();
        assert_eq!(sv, VertexSet::singleton(VertexId(2)));
    }

    #[test]
    fn singular_vertices_rose() {
        let g = rose(2).to_ultragraph();
        assert!(g.singular_vertices().is_empty());
    }

    #[test]
    fn singular_vertices_ugr1_cofinite() {
        // One edge v0 -> cofinite{v0}: every vertex but v0 is a sink.
        let mut g = Ultragraph::new("ugr1", UniverseMode::Nat);
        let v0 = g.add_vertex("v0");
        g.add_edge("e", v0, VertexSet::cofinite([v0]));
        assert_eq!(g.singular_vertices(), VertexSet::cofinite([v0]));
    }

    #[test]
    fn empty_range_violation() {
        let mut g = Ultragraph::new("bad", UniverseMode::Finite);
        let v = g.add_vertex("v");
        g.add_edge("e", v, VertexSet::empty());
        let viol = g.validate();
        assert_eq!(viol.len(), 1);
        assert_eq!(viol[0].message, "empty range");
    }

    #[test]
    fn undeclared_vertex_violation() {
        let mut g = Graph::new("bad");
        let u = g.add_vertex("u");
        let w = g.mention_vertex("w");
        g.add_edge("f", u, w);
        let viol = g.validate();
        assert_eq!(viol.len(), 1);
        assert_eq!(viol[0].message, "unknown vertex");
    }

    #[test]
    fn line_graph_acyclic() {
        assert!(find_cycles(&line_graph(3), 3).is_empty());
    }

    #[test]
    fn rose2_cycles_exhaustive() {
        // Oracle: filter enumerate_paths by the cycle predicate.
        let g = rose(2);
        let cycles = find_cycles(&g, 2);
        let mut expected = Vec::new();
        for p in enumerate_paths(&g, VertexId(0), 2) {
            if !p.is_empty() && g.closes_cycle(p.edges[0], *p.edges.last().unwrap()) {
                expected.push(p);
            }
        }
        expected.sort();
        assert_eq!(cycles, expected);
        assert_eq!(cycles.len(), 6); // e1, e2, e1e1, e1e2, e2e1, e2e2
    }

    #[test]
    fn ultragraph_self_cycle() {
        // e: v -> {v, w}: s(e) = v lies in r(e), so e is a cycle.
        let mut g = Ultragraph::new("g", UniverseMode::Finite);
        let v = g.add_vertex("v");
        let w = g.add_vertex("w");
        g.add_edge("e", v, VertexSet::from_iter([v, w]));
        let cycles = find_cycles(&g, 1);
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].edges, vec![EdgeId(0)]);
    }

    #[test]
    fn enumerate_paths_line() {
        let g = line_graph(3);
        let ps = enumerate_paths(&g, VertexId(0), 2);
        let shapes: Vec<Vec<EdgeId>> = ps.into_iter().map(|p| p.edges).collect();
        assert_eq!(
            shapes,
            vec![vec![], vec![EdgeId(0)], vec![EdgeId(0), EdgeId(1)]]
        );
    }

    #[test]
    fn enumerate_paths_from_sink() {
        let g = line_graph(2);
        let ps = enumerate_paths(&g, VertexId(1), 4);
        assert_eq!(ps.len(), 1);
        assert!(ps[0].is_empty());
    }

    #[test]
    fn enumerate_paths_rose1_unique_extension() {
        let g = rose(1);
        let ps = enumerate_paths(&g, VertexId(0), 3);
        assert_eq!(ps.len(), 4); // v, e, ee, eee
    }

    #[test]
    fn cycles_equal_bruteforce_on_corpus() {
        for g in [rose(1), rose(2), line_graph(4)] {
            for n in 1..=4 {
                let fast = find_cycles(&g, n);
                let mut slow = Vec::new();
                for v in g.vertices() {
                    for p in enumerate_paths(&g, v, n) {
                        if !p.is_empty()
                            && g.closes_cycle(p.edges[0], *p.edges.last().unwrap())
                        {
                            slow.push(p);
                        }
                    }
                }
                slow.sort();
                slow.dedup();
                assert_eq!(fast, slow);
            }
        }
    }
}
