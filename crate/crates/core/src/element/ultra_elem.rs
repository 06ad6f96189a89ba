//! The ultragraph engine: exact elements spanned by s_alpha p_A s_{beta*}.
//!
//! Multiplication follows the reduction table for s_{beta*} s_gamma together
//! with the vertex/set absorption rules. Equality is decided by pushing both
//! sides through the finite-case graph identification; on Nat-mode
//! structures only the sound `True`/`Unknown` channel is available.

use super::graph_elem::GElem;
use super::Eq3;
use crate::error::{Error, Result};
use crate::graph::{Graph, Ultragraph};
use crate::ring::{Coeff, Ring};
use crate::sets::{EdgeId, Universe, VertexId, VertexSet};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// s_alpha p_A s_{beta*} with A canonical: A contained in r(alpha) and
/// r(beta), nonempty.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UMonomial {
    pub alpha: Vec<EdgeId>,
    pub set: VertexSet,
    pub beta: Vec<EdgeId>,
}

impl UMonomial {
    pub fn degree(&self) -> i64 {
        self.alpha.len() as i64 - self.beta.len() as i64
    }
}

fn edge_path_range(g: &Ultragraph, p: &[EdgeId]) -> Option<VertexSet> {
    p.last().map(|&e| g.range(e).clone())
}

fn path_composable(g: &Ultragraph, p: &[EdgeId]) -> bool {
    p.windows(2).all(|w| g.range(w[0]).contains(g.source(w[1])))
}

/// An exact R-linear combination of ultragraph monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UElem {
    pub g: Arc<Ultragraph>,
    pub ring: Ring,
    pub terms: BTreeMap<UMonomial, Coeff>,
}

impl UElem {
    pub fn zero(g: Arc<Ultragraph>, ring: Ring) -> Self {
        UElem {
            g,
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// p_A; the empty set yields 0 (uLP1).
    pub fn p(g: Arc<Ultragraph>, ring: Ring, set: VertexSet) -> Self {
        let mut out = Self::zero(g.clone(), ring.clone());
        let one = ring.one();
        out.accumulate_canonical(Vec::new(), set, Vec::new(), one);
        out
    }

    pub fn p_vertex(g: Arc<Ultragraph>, ring: Ring, v: VertexId) -> Self {
        Self::p(g, ring, VertexSet::singleton(v))
    }

    /// s_alpha for a composable nonempty real path.
    pub fn s_path(g: Arc<Ultragraph>, ring: Ring, alpha: Vec<EdgeId>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::Unsupported(
                "length-0 paths are set idempotents; use p".into(),
            ));
        }
        if !path_composable(&g, &alpha) {
            return Err(Error::Unsupported("path does not compose".into()));
        }
        let mut out = Self::zero(g.clone(), ring.clone());
        let full = VertexSet::full(&g.universe);
        let one = ring.one();
        out.accumulate_canonical(alpha, full, Vec::new(), one);
        Ok(out)
    }

    pub fn s_edge(g: Arc<Ultragraph>, ring: Ring, e: EdgeId) -> Self {
        Self::s_path(g, ring, vec![e]).expect("single edges always compose")
    }

    pub fn s_ghost(g: Arc<Ultragraph>, ring: Ring, e: EdgeId) -> Self {
        Self::s_edge(g, ring, e).star()
    }

    pub fn monomial(
        g: Arc<Ultragraph>,
        ring: Ring,
        alpha: Vec<EdgeId>,
        set: VertexSet,
        beta: Vec<EdgeId>,
        coeff: Coeff,
    ) -> Self {
        let mut out = Self::zero(g, ring);
        out.accumulate_canonical(alpha, set, beta, coeff);
        out
    }

    /// Canonicalizes the middle set against both path ranges and drops the
    /// term when it collapses to the empty set.
    fn accumulate_canonical(
        &mut self,
        alpha: Vec<EdgeId>,
        set: VertexSet,
        beta: Vec<EdgeId>,
        coeff: Coeff,
    ) {
        let u = self.g.universe;
        let mut s = set;
        if let Some(r) = edge_path_range(&self.g, &alpha) {
            s = s.intersect(&r, &u);
        }
        if let Some(r) = edge_path_range(&self.g, &beta) {
            s = s.intersect(&r, &u);
        }
        if s.is_empty() {
            return;
        }
        self.accumulate(UMonomial { alpha, set: s, beta }, coeff);
    }

    fn accumulate(&mut self, m: UMonomial, c: Coeff) {
        let entry = self.terms.remove(&m);
        let total = match entry {
            Some(prev) => self.ring.add(&prev, &c),
            None => c,
        };
        if !self.ring.is_zero(&total) {
            self.terms.insert(m, total);
        }
    }

    fn check_compatible(&self, other: &UElem) -> Result<()> {
        if !Arc::ptr_eq(&self.g, &other.g) && self.g != other.g {
            return Err(Error::EngineMismatch(
                "ultragraph elements over different structures".into(),
            ));
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                expected: self.ring.to_string(),
                got: other.ring.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &UElem) -> Result<UElem> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &UElem) -> Result<UElem> {
        self.add(&other.scale_coeff(&other.ring.neg(&other.ring.one())))
    }

    pub fn scale(&self, n: i64) -> UElem {
        self.scale_coeff(&self.ring.from_i64(n))
    }

    pub fn scale_coeff(&self, c: &Coeff) -> UElem {
        let mut out = UElem::zero(self.g.clone(), self.ring.clone());
        for (m, k) in &self.terms {
            out.accumulate(m.clone(), self.ring.mul(k, c));
        }
        out
    }

    /// Formal transpose s_alpha p_A s_{beta*} -> s_beta p_A s_{alpha*}.
    pub fn star(&self) -> UElem {
        let mut out = UElem::zero(self.g.clone(), self.ring.clone());
        for (m, c) in &self.terms {
            out.accumulate(
                UMonomial {
                    alpha: m.beta.clone(),
                    set: m.set.clone(),
                    beta: m.alpha.clone(),
                },
                c.clone(),
            );
        }
        out
    }

    fn mul_monomials(&self, m1: &UMonomial, m2: &UMonomial, out: &mut UElem, c: Coeff) {
        let g = &self.g;
        let beta1 = &m1.beta;
        let alpha2 = &m2.alpha;
        if alpha2.len() >= beta1.len() && alpha2[..beta1.len()] == beta1[..] {
            let rest = &alpha2[beta1.len()..];
            match rest.first() {
                None => {
                    // beta1 == alpha2: middle sets meet.
                    let set = m1.set.intersect(&m2.set, &g.universe);
                    out.accumulate_canonical(m1.alpha.clone(), set, m2.beta.clone(), c);
                }
                Some(&first) => {
                    // alpha2 = beta1 rest: p_{A1} s_rest needs s(rest) in A1.
                    if m1.set.contains(g.source(first)) {
                        let mut alpha = m1.alpha.clone();
                        alpha.extend_from_slice(rest);
                        out.accumulate_canonical(alpha, m2.set.clone(), m2.beta.clone(), c);
                    }
                }
            }
        } else if beta1.len() > alpha2.len() && beta1[..alpha2.len()] == alpha2[..] {
            // beta1 = alpha2 rest: s_{rest*} p_{A2} needs s(rest) in A2.
            let rest = &beta1[alpha2.len()..];
            let first = rest[0];
            if m2.set.contains(g.source(first)) {
                let mut beta = m2.beta.clone();
                beta.extend_from_slice(rest);
                out.accumulate_canonical(m1.alpha.clone(), m1.set.clone(), beta, c);
            }
        }
    }

    pub fn mul(&self, other: &UElem) -> Result<UElem> {
        self.check_compatible(other)?;
        let mut out = UElem::zero(self.g.clone(), self.ring.clone());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                self.mul_monomials(m1, m2, &mut out, self.ring.mul(c1, c2));
            }
        }
        Ok(out)
    }

    pub fn degree_components(&self) -> BTreeMap<i64, UElem> {
        let mut out: BTreeMap<i64, UElem> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| UElem::zero(self.g.clone(), self.ring.clone()))
                .accumulate(m.clone(), c.clone());
        }
        out
    }

    /// Rewrites every middle set over the atoms of the finite subalgebra
    /// generated by all sets occurring in the element. Identities that hold
    /// by pure set algebra cancel after this step.
    pub fn atomized(&self) -> UElem {
        let u = self.g.universe;
        let mut atoms: Vec<VertexSet> = vec![VertexSet::full(&u)];
        for m in self.terms.keys() {
            let mut next = Vec::new();
            for a in atoms {
                let inside = a.intersect(&m.set, &u);
                let outside = a.difference(&m.set, &u);
                if !inside.is_empty() {
                    next.push(inside);
                }
                if !outside.is_empty() {
                    next.push(outside);
                }
            }
            atoms = next;
        }
        let mut out = UElem::zero(self.g.clone(), self.ring.clone());
        for (m, c) in &self.terms {
            for a in &atoms {
                if a.is_subset(&m.set, &u) {
                    out.accumulate(
                        UMonomial {
                            alpha: m.alpha.clone(),
                            set: a.clone(),
                            beta: m.beta.clone(),
                        },
                        c.clone(),
                    );
                }
            }
        }
        out
    }

    /// The finite-case identification: the graph whose edges are the pairs
    /// (e, v) with v in r(e), plus the translation of this element into its
    /// Leavitt path algebra.
    pub fn to_identification_graph(&self) -> Result<GElem> {
        let (graph, edge_of_pair) = identification_graph(&self.g)?;
        let mut out = GElem::zero(graph.clone(), self.ring.clone());
        for (m, c) in &self.terms {
            let mut img = gelem_p(&graph, &self.ring, &self.g, &m.set);
            for &e in m.alpha.iter().rev() {
                let factor = gelem_s(&graph, &self.ring, &self.g, e, &edge_of_pair);
                img = factor.mul(&img)?;
            }
            for &e in m.beta.iter().rev() {
                let factor = gelem_s(&graph, &self.ring, &self.g, e, &edge_of_pair).star();
                img = img.mul(&factor)?;
            }
            out = out.add(&img.scale_coeff(c))?;
        }
        Ok(out)
    }

    /// One-pass expansion of the defining relation at regular vertices:
    /// each finite middle set splits into singletons, and the singleton of
    /// a regular vertex becomes its edge sum. Cofinite sets stay.
    fn ulp4_expand_once(&self) -> UElem {
        let g = &self.g;
        let mut out = UElem::zero(g.clone(), self.ring.clone());
        for (m, c) in &self.terms {
            match &m.set {
                VertexSet::Finite(members) => {
                    for &v in members {
                        if g.is_regular(v) {
                            for e in g.out_edges(v) {
                                let mut alpha = m.alpha.clone();
                                alpha.push(e);
                                let mut beta = m.beta.clone();
                                beta.push(e);
                                out.accumulate_canonical(
                                    alpha,
                                    g.range(e).clone(),
                                    beta,
                                    c.clone(),
                                );
                            }
                        } else {
                            out.accumulate(
                                UMonomial {
                                    alpha: m.alpha.clone(),
                                    set: VertexSet::singleton(v),
                                    beta: m.beta.clone(),
                                },
                                c.clone(),
                            );
                        }
                    }
                }
                VertexSet::Cofinite(_) => out.accumulate(m.clone(), c.clone()),
            }
        }
        out
    }

    /// A sound nonzero certificate for a canonical atomized element: some
    /// degree component either is a single spanning monomial, or all of its
    /// terms share one path pair with pairwise disjoint sets (so one set
    /// idempotent isolates a single monomial).
    fn certified_nonzero(&self) -> bool {
        for part in self.degree_components().values() {
            let terms: Vec<&UMonomial> = part.terms.keys().collect();
            if terms.len() == 1 {
                return true;
            }
            let (a0, b0) = (&terms[0].alpha, &terms[0].beta);
            let uniform = terms.iter().all(|m| &m.alpha == a0 && &m.beta == b0);
            let disjoint = || {
                let u = self.g.universe;
                terms.iter().enumerate().all(|(i, m)| {
                    terms[..i]
                        .iter()
                        .all(|n| m.set.intersect(&n.set, &u).is_empty())
                })
            };
            if uniform && disjoint() {
                return true;
            }
        }
        false
    }

    /// Three-valued equality. Finite structures are decided through the
    /// graph identification; in Nat mode the sound channels are atomized
    /// cancellation (plus one defining-relation expansion) for `True` and
    /// the isolated-monomial certificate for `False`.
    pub fn equal(&self, other: &UElem) -> Result<Eq3> {
        self.check_compatible(other)?;
        let d = self.sub(other)?;
        if d.is_zero() {
            return Ok(Eq3::True);
        }
        let atomized = d.atomized();
        if atomized.is_zero() {
            return Ok(Eq3::True);
        }
        match self.g.universe {
            Universe::Finite(_) => {
                let img = d.to_identification_graph()?;
                Ok(if img.is_zero() { Eq3::True } else { Eq3::False })
            }
            Universe::Nat => {
                // Bounded fixpoint of the defining-relation expansion: a
                // cancellation at any depth certifies equality.
                let mut cur = atomized.clone();
                for _ in 0..=self.g.edge_count() + 1 {
                    let next = cur.ulp4_expand_once().atomized();
                    if next.is_zero() {
                        return Ok(Eq3::True);
                    }
                    if next == cur || next.terms.len() > 4096 {
                        break;
                    }
                    cur = next;
                }
                if atomized.certified_nonzero() {
                    return Ok(Eq3::False);
                }
                Ok(Eq3::Unknown)
            }
        }
    }

    pub fn monomials(&self) -> impl Iterator<Item = (&UMonomial, &Coeff)> + '_ {
        self.terms.iter()
    }
}

/// The edge table of the finite-case identification: pair -> graph edge.
pub type PairEdges = BTreeMap<(EdgeId, VertexId), EdgeId>;

/// Builds the finite-case graph with one edge per pair (e, v), v in r(e).
pub fn identification_graph(g: &Ultragraph) -> Result<(Arc<Graph>, PairEdges)> {
    if g.universe == Universe::Nat {
        return Err(Error::TruncationExceeded(
            "identification graph needs a finite structure".into(),
        ));
    }
    let mut out = Graph::new(format!("{}__pairs", g.name));
    for v in g.finite_vertices()? {
        out.add_vertex(g.vertex_name(v));
    }
    let mut edge_of_pair = BTreeMap::new();
    for e in g.edge_ids() {
        for v in g.range(e).iter_finite() {
            let id = out.add_edge(
                format!("{}__{}", g.edge_name(e), g.vertex_name(v)),
                g.source(e),
                v,
            );
            edge_of_pair.insert((e, v), id);
        }
    }
    // An incomplete emitter in the ultragraph is an incomplete emitter in
    // the identification: no LP4 applies there either.
    for &v in g.declared_infinite.iter().chain(g.frontier.iter()) {
        out.mark_frontier(v);
    }
    Ok((Arc::new(out), edge_of_pair))
}

fn gelem_p(graph: &Arc<Graph>, ring: &Ring, g: &Ultragraph, set: &VertexSet) -> GElem {
    let mut out = GElem::zero(graph.clone(), ring.clone());
    let _ = g;
    for v in set.iter_finite() {
        out = out
            .add(&GElem::vertex(graph.clone(), ring.clone(), v))
            .expect("same graph");
    }
    out
}

fn gelem_s(
    graph: &Arc<Graph>,
    ring: &Ring,
    g: &Ultragraph,
    e: EdgeId,
    edge_of_pair: &BTreeMap<(EdgeId, VertexId), EdgeId>,
) -> GElem {
    let mut out = GElem::zero(graph.clone(), ring.clone());
    for v in g.range(e).iter_finite() {
        let id = edge_of_pair[&(e, v)];
        out = out
            .add(&GElem::edge(graph.clone(), ring.clone(), id))
            .expect("same graph");
    }
    out
}

fn fmt_set(g: &Ultragraph, s: &VertexSet, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match s {
        VertexSet::Finite(members) => {
            let inner = members
                .iter()
                .map(|&v| g.vertex_name(v))
                .collect::<Vec<_>>()
                .join(" ");
            write!(f, "{{{inner}}}")
        }
        VertexSet::Cofinite(excluded) => {
            let inner = excluded
                .iter()
                .map(|&v| g.vertex_name(v))
                .collect::<Vec<_>>()
                .join(" ");
            write!(f, "cofinite{{{inner}}}")
        }
    }
}

impl fmt::Display for UElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let u = self.g.universe;
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if !self.ring.is_one(c) {
                write!(f, "{} ", self.ring.format(c))?;
            }
            // The set is elided when it is the canonical full intersection.
            let mut implied = VertexSet::full(&u);
            if let Some(r) = edge_path_range(&self.g, &m.alpha) {
                implied = implied.intersect(&r, &u);
            }
            if let Some(r) = edge_path_range(&self.g, &m.beta) {
                implied = implied.intersect(&r, &u);
            }
            let show_set = m.set != implied || (m.alpha.is_empty() && m.beta.is_empty());
            let mut printed = false;
            if !m.alpha.is_empty() {
                let inner = m
                    .alpha
                    .iter()
                    .map(|&e| self.g.edge_name(e).to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                write!(f, "s({inner})")?;
                printed = true;
            }
            if show_set {
                if printed {
                    write!(f, " ")?;
                }
                write!(f, "p(")?;
                fmt_set(&self.g, &m.set, f)?;
                write!(f, ")")?;
                printed = true;
            }
            if !m.beta.is_empty() {
                if printed {
                    write!(f, " ")?;
                }
                let inner = m
                    .beta
                    .iter()
                    .map(|&e| self.g.edge_name(e).to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                write!(f, "star(s({inner}))")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::UniverseMode;

    fn ugr1() -> Arc<Ultragraph> {
        let mut g = Ultragraph::new("ugr1", UniverseMode::Nat);
        let v0 = g.add_vertex("v0");
        g.add_edge("e", v0, VertexSet::cofinite([v0]));
        Arc::new(g)
    }

    fn small_finite() -> Arc<Ultragraph> {
        // e1: v0 -> {v1, v2}, e2: v1 -> {v0}
        let mut g = Ultragraph::new("g", UniverseMode::Finite);
        let v0 = g.add_vertex("v0");
        let v1 = g.add_vertex("v1");
        let v2 = g.add_vertex("v2");
        g.add_edge("e1", v0, VertexSet::from_iter([v1, v2]));
        g.add_edge("e2", v1, VertexSet::singleton(v0));
        let _ = v2;
        Arc::new(g)
    }

    #[test]
    fn ulp3_ghost_real_gives_range() {
        // star(s(e)) * s(e) = p(r(e)) on ugr1.
        let g = ugr1();
        let r = Ring::Integers;
        let se = UElem::s_edge(g.clone(), r.clone(), EdgeId(0));
        let prod = se.star().mul(&se).unwrap();
        let pr = UElem::p(g.clone(), r, g.range(EdgeId(0)).clone());
        assert_eq!(prod, pr);
    }

    #[test]
    fn p_empty_is_zero() {
        let g = small_finite();
        let z = UElem::p(g, Ring::Integers, VertexSet::empty());
        assert!(z.is_zero());
    }

    #[test]
    fn ulve_set_absorbs_edge() {
        // p_A s_e = s_e if s(e) in A else 0.
        let g = small_finite();
        let r = Ring::Integers;
        let e1 = UElem::s_edge(g.clone(), r.clone(), EdgeId(0));
        let pa = UElem::p(g.clone(), r.clone(), VertexSet::singleton(VertexId(0)));
        assert_eq!(pa.mul(&e1).unwrap(), e1);
        let pb = UElem::p(g, r, VertexSet::singleton(VertexId(1)));
        assert!(pb.mul(&e1).unwrap().is_zero());
    }

    #[test]
    fn s_alpha_p_disjoint_is_zero() {
        // s_e1 p_{v0} = 0 because r(e1) does not contain v0.
        let g = small_finite();
        let r = Ring::Integers;
        let e1 = UElem::s_edge(g.clone(), r.clone(), EdgeId(0));
        let pa = UElem::p(g, r, VertexSet::singleton(VertexId(0)));
        assert!(e1.mul(&pa).unwrap().is_zero());
    }

    #[test]
    fn ulp1_union_identity() {
        // p_{A u B} = p_A + p_B - p_{A n B}
        let g = small_finite();
        let r = Ring::Integers;
        let u = g.universe;
        let a = VertexSet::from_iter([VertexId(0), VertexId(1)]);
        let b = VertexSet::from_iter([VertexId(1), VertexId(2)]);
        let lhs = UElem::p(g.clone(), r.clone(), a.union(&b, &u));
        let rhs = UElem::p(g.clone(), r.clone(), a.clone())
            .add(&UElem::p(g.clone(), r.clone(), b.clone()))
            .unwrap()
            .sub(&UElem::p(g.clone(), r.clone(), a.intersect(&b, &u)))
            .unwrap();
        assert_eq!(lhs.equal(&rhs).unwrap(), Eq3::True);
    }

    #[test]
    fn ulp1_union_identity_nat_mode() {
        let g = ugr1();
        let r = Ring::Integers;
        let u = g.universe;
        let a = VertexSet::cofinite([VertexId(0)]);
        let b = VertexSet::singleton(VertexId(0));
        let lhs = UElem::p(g.clone(), r.clone(), a.union(&b, &u));
        let rhs = UElem::p(g.clone(), r.clone(), a.clone())
            .add(&UElem::p(g.clone(), r.clone(), b.clone()))
            .unwrap()
            .sub(&UElem::p(g.clone(), r.clone(), a.intersect(&b, &u)))
            .unwrap();
        assert_eq!(lhs.equal(&rhs).unwrap(), Eq3::True);
    }

    #[test]
    fn ulp4_decided_through_identification() {
        // p_v = sum of s_e s_{e*} over s^-1(v) at a regular vertex.
        let g = small_finite();
        let r = Ring::Integers;
        let pv = UElem::p_vertex(g.clone(), r.clone(), VertexId(0));
        let e1 = UElem::s_edge(g.clone(), r.clone(), EdgeId(0));
        let rhs = e1.mul(&e1.star()).unwrap();
        assert_eq!(pv.equal(&rhs).unwrap(), Eq3::True);
    }

    #[test]
    fn distinct_vertices_differ() {
        let g = small_finite();
        let r = Ring::Integers;
        let pv = UElem::p_vertex(g.clone(), r.clone(), VertexId(0));
        let pw = UElem::p_vertex(g, r, VertexId(1));
        assert_eq!(pv.equal(&pw).unwrap(), Eq3::False);
    }

    #[test]
    fn nat_mode_ulp4_decided_by_expansion() {
        // v0 emits exactly one edge, so p_{v0} = s_e s_{e*} is a defining
        // relation the expansion settles even in Nat mode.
        let g = ugr1();
        let r = Ring::Integers;
        let pv = UElem::p_vertex(g.clone(), r.clone(), VertexId(0));
        let e = UElem::s_edge(g, r, EdgeId(0));
        let rhs = e.mul(&e.star()).unwrap();
        assert_eq!(pv.equal(&rhs).unwrap(), Eq3::True);
    }

    #[test]
    fn nat_mode_unknown_channel() {
        // With v0 a declared infinite emitter no relation applies at it,
        // and the engine must answer Unknown rather than a wrong verdict.
        let mut g = Ultragraph::new("ugr1inf", UniverseMode::Nat);
        let v0 = g.add_vertex("v0");
        g.add_edge("e", v0, VertexSet::cofinite([v0]));
        g.declare_infinite(v0);
        let g = Arc::new(g);
        let r = Ring::Integers;
        let pv = UElem::p_vertex(g.clone(), r.clone(), VertexId(0));
        let e = UElem::s_edge(g, r, EdgeId(0));
        let rhs = e.mul(&e.star()).unwrap();
        assert_eq!(pv.equal(&rhs).unwrap(), Eq3::Unknown);
    }

    #[test]
    fn nat_mode_certified_nonzero() {
        // Distinct vertex idempotents separate even in Nat mode: the
        // atomized difference is a uniform pair over disjoint atoms.
        let g = ugr1();
        let r = Ring::Integers;
        let a = UElem::p_vertex(g.clone(), r.clone(), VertexId(0));
        let b = UElem::p_vertex(g.clone(), r.clone(), VertexId(1));
        assert_eq!(a.equal(&b).unwrap(), Eq3::False);
        // A single surviving monomial is also a certificate.
        let e = UElem::s_edge(g.clone(), r, EdgeId(0));
        let zero = UElem::zero(g, e.ring.clone());
        assert_eq!(e.equal(&zero).unwrap(), Eq3::False);
    }

    #[test]
    fn star_involutive_and_antimultiplicative() {
        let g = small_finite();
        let r = Ring::Integers;
        let a = UElem::s_edge(g.clone(), r.clone(), EdgeId(0));
        let b = UElem::s_edge(g.clone(), r.clone(), EdgeId(1));
        assert_eq!(a.star().star(), a);
        let lhs = a.mul(&b).unwrap().star();
        let rhs = b.star().mul(&a.star()).unwrap();
        assert_eq!(lhs.equal(&rhs).unwrap(), Eq3::True);
    }

    #[test]
    fn print_examples() {
        let g = ugr1();
        let r = Ring::Integers;
        let se = UElem::s_edge(g.clone(), r.clone(), EdgeId(0));
        let prod = se.star().mul(&se).unwrap();
        assert_eq!(prod.to_string(), "p(cofinite{v0})");
        let zero = UElem::zero(g, r);
        assert_eq!(zero.to_string(), "0");
    }
}
