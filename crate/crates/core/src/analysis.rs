//! Decidable structure analysis: Condition (L), hereditary/saturated
//! collections, breaking vertices, simplicity verdicts, family axiom
//! checking, and the supporting-vertex / pin-down procedures.

use crate::element::{Eq3, UElem};
use crate::error::{Error, Result};
use crate::graph::{Graph, Path, Ultragraph};
use crate::hom::{AnyElem, GenMap, SourceKind};
use crate::ring::Coeff;
use crate::sets::{EdgeId, Universe, VertexId, VertexSet, CLOSURE_CAP};
use std::collections::BTreeSet;
use std::sync::Arc;

/// Outcome of a decidable check, with witnesses on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub result: Eq3,
    pub witnesses: Vec<String>,
}

impl Verdict {
    fn holds() -> Self {
        Verdict {
            result: Eq3::True,
            witnesses: Vec::new(),
        }
    }

    fn fails(witnesses: Vec<String>) -> Self {
        debug_assert!(!witnesses.is_empty());
        Verdict {
            result: Eq3::False,
            witnesses,
        }
    }

    fn unknown(note: String) -> Self {
        Verdict {
            result: Eq3::Unknown,
            witnesses: vec![note],
        }
    }
}

fn path_display_u(g: &Ultragraph, p: &Path) -> String {
    p.edges
        .iter()
        .map(|&e| g.edge_name(e).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn set_display(g: &Ultragraph, s: &VertexSet) -> String {
    match s {
        VertexSet::Finite(members) => format!(
            "{{{}}}",
            members
                .iter()
                .map(|&v| g.vertex_name(v))
                .collect::<Vec<_>>()
                .join(" ")
        ),
        VertexSet::Cofinite(excluded) => format!(
            "cofinite{{{}}}",
            excluded
                .iter()
                .map(|&v| g.vertex_name(v))
                .collect::<Vec<_>>()
                .join(" ")
        ),
    }
}

fn path_display_g(g: &Graph, p: &Path) -> String {
    p.edges
        .iter()
        .map(|&e| g.edge_name(e).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Condition (L) for ultragraphs: every cycle has an exit, or some range
/// along it contains a sink. An exit for e_1..e_n is an edge f != e_{i+1}
/// (cyclically) with s(f) in r(e_i). A violating cycle is edge-functional:
/// each range emits exactly the unique successor and hides nothing, so the
/// witnesses are precisely the orbit cycles of that partial successor map
/// restricted to sink-free ranges. The search is linear in the edge count.
pub fn condition_l_ultragraph(g: &Ultragraph) -> Verdict {
    let sinks = sink_set(g);
    let u = g.universe;
    let edges: Vec<EdgeId> = g.edge_ids().collect();
    // e is tight when its range emits exactly one edge, hides no
    // undeclared emitters, and contains no sink.
    let succ: Vec<Option<EdgeId>> = edges
        .iter()
        .map(|&e| {
            let range = g.range(e);
            let hidden = g
                .declared_infinite
                .iter()
                .chain(g.frontier.iter())
                .any(|&v| range.contains(v));
            if hidden || !range.intersect(&sinks, &u).is_empty() {
                return None;
            }
            let mut out = None;
            for &f in &edges {
                if range.contains(g.source(f)) {
                    if out.is_some() {
                        return None;
                    }
                    out = Some(f);
                }
            }
            out
        })
        .collect();
    let witnesses = functional_orbit_witnesses(&edges, &succ, |c| {
        format!("cycle {}", path_display_u(g, c))
    });
    if witnesses.is_empty() {
        Verdict::holds()
    } else {
        Verdict::fails(witnesses)
    }
}

/// Orbit cycles of a partial successor map on edges, rendered through the
/// given formatter. Every orbit is a simple violating cycle.
fn functional_orbit_witnesses(
    edges: &[EdgeId],
    succ: &[Option<EdgeId>],
    render: impl Fn(&Path) -> String,
) -> Vec<String> {
    let index_of = |e: EdgeId| edges.iter().position(|&x| x == e).unwrap();
    let mut state = vec![0u8; edges.len()]; // 0 unseen, 1 on stack, 2 done
    let mut witnesses = Vec::new();
    for start in 0..edges.len() {
        if state[start] != 0 {
            continue;
        }
        let mut trail: Vec<usize> = Vec::new();
        let mut k = start;
        loop {
            if state[k] == 1 {
                // found a new orbit: the tail of the trail from k
                let pos = trail.iter().position(|&t| t == k).unwrap();
                let cycle: Vec<EdgeId> = trail[pos..].iter().map(|&t| edges[t]).collect();
                witnesses.push(render(&Path {
                    base: VertexId(0),
                    edges: cycle,
                }));
                break;
            }
            if state[k] == 2 {
                break;
            }
            state[k] = 1;
            trail.push(k);
            match succ[k] {
                Some(next) => k = index_of(next),
                None => break,
            }
        }
        for &t in &trail {
            state[t] = 2;
        }
    }
    witnesses
}

/// The sinks of an ultragraph as a vertex set (cofinite in Nat mode).
pub fn sink_set(g: &Ultragraph) -> VertexSet {
    let non_sinks: BTreeSet<VertexId> = g
        .edges()
        .map(|e| e.source)
        .chain(g.declared_infinite.iter().copied())
        .chain(g.frontier.iter().copied())
        .collect();
    match g.universe {
        Universe::Finite(n) => VertexSet::from_iter(
            (0..n).map(VertexId).filter(|v| !non_sinks.contains(v)),
        ),
        Universe::Nat => VertexSet::cofinite(non_sinks),
    }
}

/// Condition (L) for graphs: every cycle has an exit. A violating cycle
/// only visits sources of out-degree one, so the witnesses are the orbit
/// cycles of the forced-successor map.
pub fn condition_l_graph(g: &Graph) -> Verdict {
    let edges: Vec<EdgeId> = g.edges().map(|(id, _)| id).collect();
    let succ: Vec<Option<EdgeId>> = edges
        .iter()
        .map(|&e| {
            let v = g.target(e);
            if g.frontier.contains(&v) {
                return None;
            }
            match g.out_edges(v).as_slice() {
                [f] => Some(*f),
                _ => None,
            }
        })
        .collect();
    // The source of the first orbit edge must itself be forced: crossing
    // into the orbit is free, but every on-cycle source needs out-degree
    // one, which the orbit closure already guarantees for all of them.
    let tight: Vec<Option<EdgeId>> = edges
        .iter()
        .zip(&succ)
        .map(|(&e, &s)| {
            let v = g.source(e);
            if g.frontier.contains(&v) || g.out_edges(v).len() != 1 {
                None
            } else {
                let _ = e;
                s
            }
        })
        .collect();
    let witnesses = functional_orbit_witnesses(&edges, &tight, |c| {
        format!("cycle {}", path_display_g(g, c))
    });
    if witnesses.is_empty() {
        Verdict::holds()
    } else {
        Verdict::fails(witnesses)
    }
}

/// All hereditary saturated subsets of a graph's vertex set, exhaustively.
pub fn hereditary_saturated_graph(g: &Graph) -> Result<Vec<BTreeSet<VertexId>>> {
    let n = g.vertex_count();
    if n >= 16 || (1usize << n) > CLOSURE_CAP {
        return Err(Error::TruncationExceeded(format!(
            "2^{n} subsets exceed the scan cap"
        )));
    }
    let verts: Vec<VertexId> = g.vertices().collect();
    let mut out = Vec::new();
    for mask in 0..(1usize << n) {
        let h: BTreeSet<VertexId> = verts
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, &v)| v)
            .collect();
        let hereditary = g
            .edges()
            .all(|(_, e)| !h.contains(&e.source) || h.contains(&e.target));
        let saturated = g.vertices().all(|v| {
            if !g.is_regular(v) || h.contains(&v) {
                return true;
            }
            !g.out_edges(v).iter().all(|&e| h.contains(&g.target(e)))
        });
        if hereditary && saturated {
            out.push(h);
        }
    }
    Ok(out)
}

/// All hereditary saturated collections H of the set algebra, each
/// represented by its maximal element: union- and downward-closure force
/// H = { B in G0 : B contained in A } for A the union of H's members.
pub fn hereditary_saturated_ultragraph(g: &Ultragraph) -> Result<Vec<VertexSet>> {
    let algebra = crate::sets::generate_g0(g)?;
    let members = algebra.members()?;
    let u = g.universe;
    let mut out = Vec::new();
    for a in members {
        let hereditary = g
            .edges()
            .all(|e| !a.contains(e.source) || e.range.is_subset(&a.clone(), &u));
        let saturated = match u {
            Universe::Finite(n) => (0..n).map(VertexId).all(|v| {
                if g.is_singular(v) || a.contains(v) {
                    return true;
                }
                !g.out_edges(v)
                    .iter()
                    .all(|&e| g.range(e).is_subset(a, &u))
            }),
            Universe::Nat => unreachable!("members() rejects Nat mode"),
        };
        if hereditary && saturated {
            out.push(a.clone());
        }
    }
    Ok(out)
}

/// Breaking vertices of H: declared infinite emitters with finitely many
/// (but at least one) declared edges escaping H. Undeclared edges are
/// modeled as staying inside H.
pub fn breaking_vertices(g: &Ultragraph, h_max: &VertexSet) -> VertexSet {
    let u = g.universe;
    VertexSet::from_iter(g.declared_infinite.iter().copied().filter(|&v| {
        let escaping = g
            .out_edges(v)
            .into_iter()
            .filter(|&e| !g.range(e).is_subset(h_max, &u))
            .count();
        escaping > 0
    }))
}

/// A hereditary saturated collection (by its maximal set) together with a
/// subset of its breaking vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissiblePair {
    pub h: VertexSet,
    pub s: VertexSet,
}

/// Admissible pairs (H, S) with S a subset of the breaking vertices.
pub fn admissible_pairs(g: &Ultragraph) -> Result<Vec<AdmissiblePair>> {
    let hs = hereditary_saturated_ultragraph(g)?;
    let mut out = Vec::new();
    for h in hs {
        let b = breaking_vertices(g, &h);
        let members: Vec<VertexId> = match &b {
            VertexSet::Finite(set) => set.iter().copied().collect(),
            VertexSet::Cofinite(_) => unreachable!("breaking set is finite"),
        };
        for mask in 0..(1usize << members.len()) {
            let s = VertexSet::from_iter(
                members
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask & (1 << k) != 0)
                    .map(|(_, &v)| v),
            );
            out.push(AdmissiblePair { h: h.clone(), s });
        }
    }
    Ok(out)
}

/// Simplicity over a field: Condition (L) together with triviality of the
/// hereditary-saturated lattice.
pub fn simplicity_verdict_ultragraph(g: &Ultragraph) -> Verdict {
    let cl = condition_l_ultragraph(g);
    if cl.result == Eq3::False {
        return Verdict::fails(cl.witnesses);
    }
    let lattice = match hereditary_saturated_ultragraph(g) {
        Ok(hs) => hs,
        Err(e) => return Verdict::unknown(format!("lattice scan unavailable: {e}")),
    };
    let full = VertexSet::full(&g.universe);
    let mut witnesses = Vec::new();
    for h in &lattice {
        if !h.is_empty() && *h != full {
            witnesses.push(format!(
                "proper hereditary saturated {}",
                set_display(g, h)
            ));
        }
    }
    if cl.result == Eq3::Unknown {
        return Verdict::unknown("Condition (L) undecided".into());
    }
    if witnesses.is_empty() {
        Verdict::holds()
    } else {
        Verdict::fails(witnesses)
    }
}

/// Graph-mode simplicity verdict.
pub fn simplicity_verdict_graph(g: &Graph) -> Verdict {
    let cl = condition_l_graph(g);
    if cl.result == Eq3::False {
        return Verdict::fails(cl.witnesses);
    }
    let lattice = match hereditary_saturated_graph(g) {
        Ok(hs) => hs,
        Err(e) => return Verdict::unknown(format!("lattice scan unavailable: {e}")),
    };
    let all: BTreeSet<VertexId> = g.vertices().collect();
    let mut witnesses = Vec::new();
    for h in &lattice {
        if !h.is_empty() && *h != all {
            let names: Vec<&str> = h.iter().map(|&v| g.vertex_name(v)).collect();
            witnesses.push(format!("proper hereditary saturated {{{}}}", names.join(" ")));
        }
    }
    if witnesses.is_empty() {
        Verdict::holds()
    } else {
        Verdict::fails(witnesses)
    }
}

/// Which axiom family a generator map is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomSet {
    LP,
    ULP,
    ExL,
    EL,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceStatus {
    Pass,
    Fail,
    Skip,
    Unknown,
}

#[derive(Debug, Clone)]
pub struct InstanceResult {
    pub id: String,
    pub status: InstanceStatus,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Default)]
pub struct FamilyReport {
    pub instances: Vec<InstanceResult>,
}

impl FamilyReport {
    pub fn count(&self, status: InstanceStatus) -> usize {
        self.instances.iter().filter(|i| i.status == status).count()
    }

    pub fn passed(&self) -> bool {
        self.count(InstanceStatus::Fail) == 0 && self.count(InstanceStatus::Unknown) == 0
    }

    fn record(&mut self, id: String, outcome: Result<Eq3>) {
        let inst = match outcome {
            Ok(Eq3::True) => InstanceResult {
                id,
                status: InstanceStatus::Pass,
                detail: None,
            },
            Ok(Eq3::False) => InstanceResult {
                id,
                status: InstanceStatus::Fail,
                detail: None,
            },
            Ok(Eq3::Unknown) => InstanceResult {
                id,
                status: InstanceStatus::Unknown,
                detail: None,
            },
            Err(Error::NotReachable(msg)) | Err(Error::MissingGeneratorAssignment(msg)) => {
                InstanceResult {
                    id,
                    status: InstanceStatus::Skip,
                    detail: Some(msg),
                }
            }
            Err(e) => InstanceResult {
                id,
                status: InstanceStatus::Fail,
                detail: Some(e.to_string()),
            },
        };
        self.instances.push(inst);
    }

    fn skip(&mut self, id: String, detail: String) {
        self.instances.push(InstanceResult {
            id,
            status: InstanceStatus::Skip,
            detail: Some(detail),
        });
    }
}

fn eq_of(a: &AnyElem, b: &AnyElem) -> Result<Eq3> {
    a.equal(b)
}

/// Checks every axiom instance of the given family through the target
/// engine's equality. Instances cut by the truncation are reported as
/// skips, never fabricated.
pub fn check_family(m: &GenMap, axioms: AxiomSet) -> Result<FamilyReport> {
    let mut report = FamilyReport::default();
    match axioms {
        AxiomSet::LP => check_lp(m, &mut report)?,
        AxiomSet::ULP => check_ulp(m, &mut report)?,
        AxiomSet::ExL => {
            check_exl(m, &mut report)?;
            check_el(m, &mut report)?;
        }
        AxiomSet::EL => check_el(m, &mut report)?,
    }
    Ok(report)
}

fn source_graph_of(m: &GenMap) -> Result<Arc<Graph>> {
    match m {
        GenMap::Lfg { gf, .. } => Ok(gf.clone()),
        GenMap::GegisoFromGraph { eg, .. } => Ok(eg.graph.clone()),
        GenMap::SelfGraph { graph, .. } => Ok(graph.clone()),
        _ => Err(Error::EngineMismatch(format!(
            "{} is not a graph-source family",
            m.name()
        ))),
    }
}

fn source_ultragraph_of(m: &GenMap) -> Result<Arc<Ultragraph>> {
    match m {
        GenMap::Glugl { ug, .. }
        | GenMap::Llgex2 { ug, .. }
        | GenMap::SelfUltragraph { ug, .. }
        | GenMap::SelfExelLaca { ug, .. } => Ok(ug.clone()),
        GenMap::GegisoToGraph { eg, .. } | GenMap::Lex3 { eg, .. } => Ok(eg.source.clone()),
        GenMap::Desing { d, .. } => Ok(d.original.clone()),
        _ => Err(Error::EngineMismatch(format!(
            "{} is not an ultragraph-source family",
            m.name()
        ))),
    }
}

/// The vertices a family actually carries images for.
fn carried_vertices(m: &GenMap, g: &Ultragraph) -> Vec<VertexId> {
    match m {
        GenMap::Lex3 { p, .. } => p.keys().copied().collect(),
        _ => match g.universe {
            Universe::Finite(n) => (0..n).map(VertexId).collect(),
            Universe::Nat => g.named_vertices().collect(),
        },
    }
}

fn check_lp(m: &GenMap, report: &mut FamilyReport) -> Result<()> {
    if m.source_kind() != Some(SourceKind::Graph) {
        return Err(Error::EngineMismatch("LP axioms need a graph source".into()));
    }
    let g = source_graph_of(m)?;
    let verts: Vec<VertexId> = g.vertices().collect();
    let edges: Vec<EdgeId> = g.edges().map(|(id, _)| id).collect();
    for &v in &verts {
        for &w in &verts {
            let id = format!("LP1 {} {}", g.vertex_name(v), g.vertex_name(w));
            let out = (|| {
                let qv = m.image_vertex(v)?;
                let qw = m.image_vertex(w)?;
                let prod = qv.mul(&qw)?;
                if v == w {
                    eq_of(&prod, &qv)
                } else {
                    eq_of(&prod, &prod.sub(&prod)?)
                }
            })();
            report.record(id, out);
        }
    }
    for &e in &edges {
        let id = format!("LP2 {}", g.edge_name(e));
        let out = (|| {
            let te = m.image_edge(e)?;
            let tes = m.image_ghost(e)?;
            let qs = m.image_vertex(g.source(e))?;
            let qr = m.image_vertex(g.target(e))?;
            let mut ok = eq_of(&qs.mul(&te)?, &te)?;
            ok = ok.and(eq_of(&te.mul(&qr)?, &te)?);
            ok = ok.and(eq_of(&qr.mul(&tes)?, &tes)?);
            ok = ok.and(eq_of(&tes.mul(&qs)?, &tes)?);
            Ok(ok)
        })();
        report.record(id, out);
    }
    for &e in &edges {
        for &f in &edges {
            let id = format!("LP3 {} {}", g.edge_name(e), g.edge_name(f));
            let out = (|| {
                let prod = m.image_ghost(e)?.mul(&m.image_edge(f)?)?;
                if e == f {
                    eq_of(&prod, &m.image_vertex(g.target(e))?)
                } else {
                    eq_of(&prod, &prod.sub(&prod)?)
                }
            })();
            report.record(id, out);
        }
    }
    for &v in &verts {
        let id = format!("LP4 {}", g.vertex_name(v));
        if g.frontier.contains(&v) {
            report.skip(id, "truncation frontier".into());
            continue;
        }
        if !g.is_regular(v) {
            continue;
        }
        let out = (|| {
            let qv = m.image_vertex(v)?;
            let mut sum: Option<AnyElem> = None;
            for e in g.out_edges(v) {
                let t = m.image_edge(e)?.mul(&m.image_ghost(e)?)?;
                sum = Some(match sum {
                    None => t,
                    Some(s) => s.add(&t)?,
                });
            }
            eq_of(&sum.expect("regular vertex emits"), &qv)
        })();
        report.record(id, out);
    }
    Ok(())
}

fn check_ulp(m: &GenMap, report: &mut FamilyReport) -> Result<()> {
    if m.source_kind() != Some(SourceKind::Ultragraph) {
        return Err(Error::EngineMismatch("uLP axioms need an ultragraph source".into()));
    }
    let g = source_ultragraph_of(m)?;
    let u = g.universe;
    // uLP1 over pairs of set-algebra members (the generating sets plus the
    // closure when small).
    let algebra = crate::sets::generate_g0(&g)?;
    let sets: Vec<VertexSet> = match algebra.members() {
        Ok(all) if all.len() <= 32 => all.to_vec(),
        _ => {
            let mut out = vec![VertexSet::empty()];
            out.extend(algebra.generators.iter().cloned());
            out
        }
    };
    {
        let id = "uLP1 empty".to_string();
        let out = match m.image_set(&VertexSet::empty()) {
                Err(Error::MissingGeneratorAssignment(_)) => Ok(Eq3::True),
                Ok(x) if x.is_zero() => Ok(Eq3::True),
                Ok(_) => Ok(Eq3::False),
                Err(e) => Err(e),
            };
        report.record(id, out);
    }
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate() {
            if a.is_empty() || b.is_empty() {
                continue;
            }
            let id = format!("uLP1 {i} {j}");
            let out = (|| {
                let pa = m.image_set(a)?;
                let pb = m.image_set(b)?;
                let cap = a.intersect(b, &u);
                let lhs = pa.mul(&pb)?;
                let ok1 = if cap.is_empty() {
                    if lhs.is_zero() {
                        Eq3::True
                    } else {
                        eq_of(&lhs, &lhs.sub(&lhs)?)?
                    }
                } else {
                    eq_of(&lhs, &m.image_set(&cap)?)?
                };
                let cup = a.union(b, &u);
                let mut rhs = pa.add(&pb)?;
                if !cap.is_empty() {
                    rhs = rhs.sub(&m.image_set(&cap)?)?;
                }
                let ok2 = eq_of(&m.image_set(&cup)?, &rhs)?;
                Ok(ok1.and(ok2))
            })();
            report.record(id, out);
        }
    }
    for e in g.edge_ids() {
        let id = format!("uLP2 {}", g.edge_name(e));
        let out = (|| {
            let se = m.image_edge(e)?;
            let ses = m.image_ghost(e)?;
            let ps = m.image_vertex(g.source(e))?;
            let pr = m.image_set(g.range(e))?;
            let mut ok = eq_of(&ps.mul(&se)?, &se)?;
            ok = ok.and(eq_of(&se.mul(&pr)?, &se)?);
            ok = ok.and(eq_of(&pr.mul(&ses)?, &ses)?);
            ok = ok.and(eq_of(&ses.mul(&ps)?, &ses)?);
            Ok(ok)
        })();
        report.record(id, out);
    }
    for e in g.edge_ids() {
        for f in g.edge_ids() {
            let id = format!("uLP3 {} {}", g.edge_name(e), g.edge_name(f));
            let out = (|| {
                let prod = m.image_ghost(e)?.mul(&m.image_edge(f)?)?;
                if e == f {
                    eq_of(&prod, &m.image_set(g.range(e))?)
                } else if prod.is_zero() {
                    Ok(Eq3::True)
                } else {
                    eq_of(&prod, &prod.sub(&prod)?)
                }
            })();
            report.record(id, out);
        }
    }
    let verts = carried_vertices(m, &g);
    for v in verts {
        let id = format!("uLP4 {}", g.vertex_name(v));
        if g.frontier.contains(&v) {
            report.skip(id, "truncation frontier".into());
            continue;
        }
        if !g.is_regular(v) {
            continue;
        }
        let out = (|| {
            let pv = m.image_vertex(v)?;
            let mut sum: Option<AnyElem> = None;
            for e in g.out_edges(v) {
                let t = m.image_edge(e)?.mul(&m.image_ghost(e)?)?;
                sum = Some(match sum {
                    None => t,
                    Some(s) => s.add(&t)?,
                });
            }
            eq_of(&sum.expect("regular vertex emits"), &pv)
        })();
        report.record(id, out);
    }
    Ok(())
}

fn check_exl(m: &GenMap, report: &mut FamilyReport) -> Result<()> {
    if m.source_kind() != Some(SourceKind::ExelLaca) {
        return Err(Error::EngineMismatch("ExL axioms need an Exel-Laca source".into()));
    }
    let g = source_ultragraph_of(m)?;
    for e in g.edge_ids() {
        let id = format!("ExL2 {}", g.edge_name(e));
        let out = (|| {
            let se = m.image_edge(e)?;
            let ses = m.image_ghost(e)?;
            let ps = m.image_vertex(g.source(e))?;
            let mut ok = eq_of(&ps.mul(&se)?, &se)?;
            ok = ok.and(eq_of(&se.mul(&ses.mul(&se)?)?, &se)?);
            ok = ok.and(eq_of(&ses.mul(&se.mul(&ses)?)?, &ses)?);
            ok = ok.and(eq_of(&ses.mul(&ps)?, &ses)?);
            Ok(ok)
        })();
        report.record(id, out);
    }
    for e in g.edge_ids() {
        for f in g.edge_ids() {
            if e == f {
                continue;
            }
            let id = format!("ExL3 {} {}", g.edge_name(e), g.edge_name(f));
            let out = (|| {
                let prod = m.image_ghost(f)?.mul(&m.image_edge(e)?)?;
                if prod.is_zero() {
                    Ok(Eq3::True)
                } else {
                    eq_of(&prod, &prod.sub(&prod)?)
                }
            })();
            report.record(id, out);
        }
    }
    for v in carried_vertices(m, &g) {
        let id = format!("ExL4 {}", g.vertex_name(v));
        if g.frontier.contains(&v) {
            report.skip(id, "truncation frontier".into());
            continue;
        }
        if !g.is_regular(v) {
            continue;
        }
        let out = (|| {
            let pv = m.image_vertex(v)?;
            let mut sum: Option<AnyElem> = None;
            for e in g.out_edges(v) {
                let t = m.image_edge(e)?.mul(&m.image_ghost(e)?)?;
                sum = Some(match sum {
                    None => t,
                    Some(s) => s.add(&t)?,
                });
            }
            eq_of(&sum.expect("regular vertex emits"), &pv)
        })();
        report.record(id, out);
    }
    Ok(())
}

/// The condition (EL) checks on {P_v} and Q_e = S_{e*} S_e, with EL4
/// restricted to disjoint finite lambda/mu with finite r(lambda, mu).
fn check_el(m: &GenMap, report: &mut FamilyReport) -> Result<()> {
    let g = source_ultragraph_of(m)?;
    let _u = g.universe;
    let verts = carried_vertices(m, &g);
    let q_of = |e: EdgeId| -> Result<AnyElem> { m.image_ghost(e)?.mul(&m.image_edge(e)?) };
    for (k, &v) in verts.iter().enumerate() {
        for &w in verts.iter().skip(k + 1) {
            let id = format!("EL1 {} {}", g.vertex_name(v), g.vertex_name(w));
            let out = (|| {
                let prod = m.image_vertex(v)?.mul(&m.image_vertex(w)?)?;
                if prod.is_zero() {
                    Ok(Eq3::True)
                } else {
                    eq_of(&prod, &prod.sub(&prod)?)
                }
            })();
            report.record(id, out);
        }
    }
    for e in g.edge_ids() {
        for f in g.edge_ids() {
            if e >= f {
                continue;
            }
            let id = format!("EL2 {} {}", g.edge_name(e), g.edge_name(f));
            let out = (|| {
                let qe = q_of(e)?;
                let qf = q_of(f)?;
                eq_of(&qe.mul(&qf)?, &qf.mul(&qe)?)
            })();
            report.record(id, out);
        }
    }
    for &v in &verts {
        for e in g.edge_ids() {
            let id = format!("EL3 {} {}", g.vertex_name(v), g.edge_name(e));
            let out = (|| {
                let pv = m.image_vertex(v)?;
                let qe = q_of(e)?;
                let lhs = pv.mul(&qe)?;
                let rhs = qe.mul(&pv)?;
                let ok1 = eq_of(&lhs, &rhs)?;
                let ok2 = if g.range(e).contains(v) {
                    eq_of(&lhs, &pv)?
                } else if lhs.is_zero() {
                    Eq3::True
                } else {
                    eq_of(&lhs, &lhs.sub(&lhs)?)?
                };
                Ok(ok1.and(ok2))
            })();
            report.record(id, out);
        }
    }
    // EL4 over small disjoint (lambda, mu) with finite r(lambda, mu).
    let edges: Vec<EdgeId> = g.edge_ids().collect();
    let bound = 3usize.min(edges.len());
    let mut choices: Vec<(Vec<EdgeId>, Vec<EdgeId>)> = Vec::new();
    fn splits(
        edges: &[EdgeId],
        k: usize,
        cur: &mut (Vec<EdgeId>, Vec<EdgeId>),
        out: &mut Vec<(Vec<EdgeId>, Vec<EdgeId>)>,
    ) {
        if k == edges.len() || cur.0.len() + cur.1.len() >= 3 {
            if !cur.0.is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        if !cur.0.is_empty() {
            out.push(cur.clone());
        }
        for assign in 0..3 {
            match assign {
                0 => splits(edges, k + 1, cur, out),
                1 => {
                    cur.0.push(edges[k]);
                    splits(edges, k + 1, cur, out);
                    cur.0.pop();
                }
                _ => {
                    cur.1.push(edges[k]);
                    splits(edges, k + 1, cur, out);
                    cur.1.pop();
                }
            }
        }
    }
    splits(&edges[..], 0, &mut (Vec::new(), Vec::new()), &mut choices);
    choices.sort();
    choices.dedup();
    let _ = bound;
    for (lambda, mu) in choices {
        let r = crate::sets::r_lambda_mu(&g, &lambda, &mu);
        if r.size_class().is_infinite() {
            continue;
        }
        let id = format!(
            "EL4 [{}] [{}]",
            lambda
                .iter()
                .map(|&e| g.edge_name(e).to_string())
                .collect::<Vec<_>>()
                .join(" "),
            mu.iter()
                .map(|&e| g.edge_name(e).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        );
        // Skip instances whose vertex sum needs unmaterialized images.
        let mut missing = None;
        for v in r.iter_finite() {
            if m.image_vertex(v).is_err() {
                missing = Some(v);
            }
        }
        if let Some(v) = missing {
            report.skip(id, format!("P_{} outside window", g.vertex_name(v)));
            continue;
        }
        let out = (|| {
            // Expand prod over mu of (1 - Q_f) by inclusion-exclusion;
            // lambda is nonempty so every term is a pure product.
            let mut lhs: Option<AnyElem> = None;
            let mut base: Option<AnyElem> = None;
            for &e in &lambda {
                let q = q_of(e)?;
                base = Some(match base {
                    None => q,
                    Some(b) => b.mul(&q)?,
                });
            }
            let base = base.expect("lambda nonempty");
            for mask in 0..(1usize << mu.len()) {
                let mut term = base.clone();
                let mut sign = 1i64;
                for (k, &f) in mu.iter().enumerate() {
                    if mask & (1 << k) != 0 {
                        term = term.mul(&q_of(f)?)?;
                        sign = -sign;
                    }
                }
                let term = term.scale(sign);
                lhs = Some(match lhs {
                    None => term,
                    Some(l) => l.add(&term)?,
                });
            }
            let lhs = lhs.expect("at least the empty mask");
            let mut rhs = lhs.sub(&lhs)?; // zero of the right engine
            for v in r.iter_finite() {
                rhs = rhs.add(&m.image_vertex(v)?)?;
            }
            eq_of(&lhs, &rhs)
        })();
        report.record(id, out);
    }
    Ok(())
}

/// A vertex v with x p_v nonzero, located by the three-case analysis of the
/// supporting-vertex argument and verified by the engine.
pub fn find_supporting_vertex(x: &UElem) -> Result<VertexId> {
    let g = &x.g;
    if g.universe == Universe::Nat {
        return Err(Error::TruncationExceeded(
            "supporting-vertex search needs a finite structure".into(),
        ));
    }
    let zero = UElem::zero(x.g.clone(), x.ring.clone());
    if x.equal(&zero)? == Eq3::True {
        return Err(Error::ZeroElement);
    }
    let mut candidates: Vec<VertexId> = Vec::new();
    let mut ghost_sources: Vec<VertexId> = Vec::new();
    let mut real_sets: Vec<&VertexSet> = Vec::new();
    for (m, _) in x.monomials() {
        match m.beta.first() {
            Some(&e) => ghost_sources.push(g.source(e)),
            None => real_sets.push(&m.set),
        }
    }
    // Case 1: every ghost side has a concrete finite source.
    candidates.extend(ghost_sources.iter().copied());
    // Cases 2 and 3: vertices of the real-edge terms' sets, after removing
    // the ghost sources (the A_1 \ V step).
    let v_set = VertexSet::from_iter(ghost_sources.iter().copied());
    for set in &real_sets {
        let trimmed = set.difference(&v_set, &g.universe);
        for v in trimmed.iter_finite() {
            candidates.push(v);
        }
    }
    // Backstop: the whole (finite) vertex set.
    candidates.extend(g.finite_vertices()?);
    for v in candidates {
        let pv = UElem::p_vertex(g.clone(), x.ring.clone(), v);
        let prod = x.mul(&pv)?;
        if prod.equal(&zero)? == Eq3::False {
            return Ok(v);
        }
    }
    Err(Error::ZeroElement)
}

/// The normal form pin-down lands in.
#[derive(Debug, Clone)]
pub enum PinForm {
    /// a x b = r p_v.
    ScalarVertex(Coeff, VertexId),
    /// a x b = sum of r_i s_alpha^i p_v for a cycle alpha based at v.
    CyclePolynomial {
        cycle: Vec<EdgeId>,
        base: VertexId,
        coeffs: Vec<Coeff>,
    },
}

#[derive(Debug, Clone)]
pub struct PinDown {
    pub a: UElem,
    pub b: UElem,
    pub form: PinForm,
}

impl PinForm {
    pub fn to_element(&self, g: &Arc<Ultragraph>, ring: &crate::ring::Ring) -> Result<UElem> {
        match self {
            PinForm::ScalarVertex(r, v) => {
                Ok(UElem::p_vertex(g.clone(), ring.clone(), *v).scale_coeff(r))
            }
            PinForm::CyclePolynomial { cycle, base, coeffs } => {
                let pv = UElem::p_vertex(g.clone(), ring.clone(), *base);
                let mut acc = pv.scale_coeff(&coeffs[0]);
                let mut power = pv.clone();
                let step = UElem::s_path(g.clone(), ring.clone(), cycle.clone())?;
                for c in coeffs.iter().skip(1) {
                    power = power.mul(&step)?;
                    acc = acc.add(&power.mul(&pv)?.scale_coeff(c))?;
                }
                Ok(acc)
            }
        }
    }
}

fn max_ghost_degree(x: &UElem) -> usize {
    x.monomials().map(|(m, _)| m.beta.len()).max().unwrap_or(0)
}

/// Pins a nonzero element down to a scalar vertex idempotent or a cycle
/// polynomial: first kill ghost edges by right multiplication, then reduce
/// the summand count; every step is engine-verified.
pub fn pin_down(x: &UElem) -> Result<PinDown> {
    let g = x.g.clone();
    let ring = x.ring.clone();
    if !ring.is_field() {
        return Err(Error::Unsupported("pin-down runs over a field".into()));
    }
    let zero = UElem::zero(g.clone(), ring.clone());
    if x.equal(&zero)? == Eq3::True {
        return Err(Error::ZeroElement);
    }
    let mut a = None::<UElem>; // left factor, built outermost-last
    let mut b = None::<UElem>;
    let mut cur = x.clone();
    let mul_left = |acc: Option<UElem>, f: &UElem| -> Result<Option<UElem>> {
        Ok(Some(match acc {
            None => f.clone(),
            Some(a) => f.mul(&a)?,
        }))
    };
    let mul_right = |acc: Option<UElem>, f: &UElem| -> Result<Option<UElem>> {
        Ok(Some(match acc {
            None => f.clone(),
            Some(b) => b.mul(f)?,
        }))
    };

    // Phase 1: strictly decrease the ghost degree.
    let mut fuel = 4 * max_ghost_degree(&cur) + 8;
    while max_ghost_degree(&cur) > 0 {
        fuel -= 1;
        if fuel == 0 {
            return Err(Error::Unsupported("ghost elimination did not settle".into()));
        }
        let v = find_supporting_vertex(&cur)?;
        let pv = UElem::p_vertex(g.clone(), ring.clone(), v);
        let xpv = cur.mul(&pv)?;
        let mut first_edges: Vec<EdgeId> = xpv
            .monomials()
            .filter_map(|(m, _)| m.beta.first().copied())
            .collect();
        first_edges.sort();
        first_edges.dedup();
        if first_edges.is_empty() {
            b = mul_right(b, &pv)?;
            cur = xpv;
            continue;
        }
        let mut advanced = false;
        for &e in &first_edges {
            let se = UElem::s_edge(g.clone(), ring.clone(), e);
            let next = xpv.mul(&se)?;
            if next.equal(&zero)? == Eq3::False && max_ghost_degree(&next) < max_ghost_degree(&cur)
            {
                b = mul_right(mul_right(b, &pv)?, &se)?;
                cur = next;
                advanced = true;
                break;
            }
        }
        if advanced {
            continue;
        }
        // All beta heads annihilate; uLP4 guarantees another edge at v
        // whose product is ghost-free.
        let mut found = false;
        for e in g.out_edges(v) {
            if first_edges.contains(&e) {
                continue;
            }
            let se = UElem::s_edge(g.clone(), ring.clone(), e);
            let next = xpv.mul(&se)?;
            if next.equal(&zero)? == Eq3::False {
                b = mul_right(mul_right(b, &pv)?, &se)?;
                cur = next;
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::Unsupported(
                "ghost elimination found no escaping edge".into(),
            ));
        }
    }

    // Phase 2: land on a supporting vertex and reduce the summand count.
    // Progress at each pass: the landing or sandwich drops a term, the
    // prefix strip shortens the minimal exponent, or a conjugation enables
    // a strictly smaller landing.
    let mut fuel = 16 * cur.monomials().count() + 32;
    let mut landed_vertex;
    let form = loop {
        fuel -= 1;
        if fuel == 0 {
            return Err(Error::Unsupported("summand reduction did not settle".into()));
        }
        // Land on a supporting vertex.
        let v = find_supporting_vertex(&cur)?;
        landed_vertex = v;
        let pv = UElem::p_vertex(g.clone(), ring.clone(), v);
        let landed = cur.mul(&pv)?;
        if landed != cur {
            cur = landed;
            b = mul_right(b, &pv)?;
            continue;
        }
        let mut terms: Vec<(Vec<EdgeId>, Coeff)> = cur
            .monomials()
            .map(|(m, c)| (m.alpha.clone(), c.clone()))
            .collect();
        terms.sort_by_key(|(alpha, _)| (alpha.len(), alpha.clone()));
        let shortest = terms[0].0.clone();
        if !shortest.is_empty() {
            // Strip a common prefix: multiply by the star of the shortest.
            let s1 = UElem::s_path(g.clone(), ring.clone(), shortest)?;
            cur = s1.star().mul(&cur)?;
            a = mul_left(a, &s1.star())?;
            continue;
        }
        if terms.len() == 1 {
            break PinForm::ScalarVertex(terms[0].1.clone(), v);
        }
        // cur = r1 p_v + sum r_i s_{beta_i} p_v; exponents not based at v
        // die under the left sandwich.
        let sandwich = pv.mul(&cur)?;
        if sandwich.monomials().count() < terms.len() {
            cur = sandwich;
            a = mul_left(a, &pv)?;
            continue;
        }
        // All exponents are cycles at v. If they are literal powers of one
        // simple cycle, we have a cycle polynomial.
        let beta2 = terms[1].0.clone();
        let alpha = simple_cycle_prefix(&g, &beta2);
        let all_powers = terms.iter().all(|(t, _)| is_power_of(t, &alpha));
        if all_powers {
            let max_pow = terms
                .iter()
                .map(|(t, _)| t.len() / alpha.len())
                .max()
                .unwrap_or(0);
            let mut coeffs = vec![ring.zero(); max_pow + 1];
            for (t, c) in &terms {
                coeffs[t.len() / alpha.len()] = c.clone();
            }
            break PinForm::CyclePolynomial {
                cycle: alpha,
                base: v,
                coeffs,
            };
        }
        // Otherwise conjugate by a path that annihilates some but not all
        // exponents, accepting when the subsequent landing strictly
        // shrinks. Simple-cycle factors of the exponents come first,
        // bounded path enumeration from v covers the rest.
        let mut factors: Vec<Vec<EdgeId>> = Vec::new();
        for (t, _) in &terms {
            if t.is_empty() {
                continue;
            }
            let mut rest: &[EdgeId] = t;
            while !rest.is_empty() {
                let gamma = simple_cycle_prefix(&g, rest);
                let len = gamma.len();
                factors.push(gamma);
                rest = &rest[len..];
            }
        }
        factors.sort();
        factors.dedup();
        let max_len = terms.iter().map(|(t, _)| t.len()).max().unwrap_or(1);
        let walk = crate::graph::enumerate_paths(g.as_ref(), v, max_len);
        if walk.len() > 4096 {
            return Err(Error::Unsupported(
                "conjugation candidate enumeration too large".into(),
            ));
        }
        factors.extend(walk.into_iter().filter(|p| !p.is_empty()).map(|p| p.edges));
        let mut conjugated = false;
        for nu in factors {
            let Ok(snu) = UElem::s_path(g.clone(), ring.clone(), nu) else {
                continue;
            };
            let next = snu.star().mul(&cur)?.mul(&snu)?;
            if next.is_zero() || next.equal(&zero)? == Eq3::True {
                continue;
            }
            let w = find_supporting_vertex(&next)?;
            let pw = UElem::p_vertex(g.clone(), ring.clone(), w);
            let next_landed = next.mul(&pw)?;
            if next_landed.monomials().count() < terms.len() {
                a = mul_left(a, &snu.star())?;
                b = mul_right(mul_right(b, &snu)?, &pw)?;
                cur = next_landed;
                conjugated = true;
                break;
            }
        }
        if !conjugated {
            return Err(Error::Unsupported(
                "summand reduction found no separating conjugation".into(),
            ));
        }
    };

    let last = landed_vertex;
    let a = a.unwrap_or_else(|| UElem::p_vertex(g.clone(), ring.clone(), last));
    let b = b.unwrap_or_else(|| UElem::p_vertex(g.clone(), ring.clone(), last));
    // Re-verify: a x b must equal the returned form.
    let axb = a.mul(x)?.mul(&b)?;
    let expected = form.to_element(&g, &ring)?;
    if axb.equal(&expected)? != Eq3::True {
        return Err(Error::Unsupported("pin-down verification failed".into()));
    }
    Ok(PinDown { a, b, form })
}

/// The shortest prefix of a cycle that is itself a cycle at the base.
fn simple_cycle_prefix(g: &Ultragraph, beta: &[EdgeId]) -> Vec<EdgeId> {
    let base = g.source(beta[0]);
    for i in 0..beta.len() {
        if g.range(beta[i]).contains(base) {
            return beta[..=i].to_vec();
        }
    }
    beta.to_vec()
}

fn is_power_of(t: &[EdgeId], alpha: &[EdgeId]) -> bool {
    if alpha.is_empty() {
        return t.is_empty();
    }
    if !t.len().is_multiple_of(alpha.len()) {
        return false;
    }
    t.chunks(alpha.len()).all(|c| c == alpha)
}
