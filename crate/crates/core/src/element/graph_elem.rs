//! The graph engine: exact elements of the Leavitt path algebra of a finite
//! graph, kept in a canonical normal form.
//!
//! The normal form fixes, for each regular vertex v, the designated edge
//! g_v with least index in s^-1(v), and contracts every monomial whose
//! upward and downward paths both end in the same designated edge:
//!
//!   t_{a g_v} t_{(b g_v)*}  ->  t_a t_{b*} - sum over e in s^-1(v), e != g_v
//!                               of t_{a e} t_{(b e)*}
//!
//! The contracted branch strictly decreases |a|+|b| and the remaining
//! branches leave the pattern, so the rewriting terminates; irreducible
//! monomials form the canonical basis.

use crate::error::{Error, Result};
use crate::graph::{Graph, Path};
use crate::ring::{Coeff, Ring};
use crate::sets::{EdgeId, VertexId};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// A spanning monomial t_alpha t_{beta*} with r(alpha) = r(beta).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphMonomial {
    pub alpha: Path,
    pub beta: Path,
}

impl GraphMonomial {
    pub fn degree(&self) -> i64 {
        self.alpha.len() as i64 - self.beta.len() as i64
    }
}

pub(crate) fn path_range(g: &Graph, p: &Path) -> VertexId {
    match p.edges.last() {
        Some(&e) => g.target(e),
        None => p.base,
    }
}

fn path_composes(g: &Graph, p: &Path, first_next: EdgeId) -> bool {
    path_range(g, p) == g.source(first_next)
}

/// An exact R-linear combination of graph monomials, stored normalized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GElem {
    pub graph: Arc<Graph>,
    pub ring: Ring,
    pub terms: BTreeMap<GraphMonomial, Coeff>,
}

impl GElem {
    pub fn zero(graph: Arc<Graph>, ring: Ring) -> Self {
        GElem {
            graph,
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// q_v
    pub fn vertex(graph: Arc<Graph>, ring: Ring, v: VertexId) -> Self {
        let one = ring.one();
        Self::from_monomial(graph, ring, Path::vertex(v), Path::vertex(v), one)
    }

    /// t_alpha for a real path.
    pub fn path(graph: Arc<Graph>, ring: Ring, alpha: Path) -> Self {
        let one = ring.one();
        let r = path_range(&graph, &alpha);
        Self::from_monomial(graph, ring, alpha, Path::vertex(r), one)
    }

    /// t_e
    pub fn edge(graph: Arc<Graph>, ring: Ring, e: EdgeId) -> Self {
        let alpha = Path {
            base: graph.source(e),
            edges: vec![e],
        };
        Self::path(graph, ring, alpha)
    }

    /// t_{e*}
    pub fn ghost_edge(graph: Arc<Graph>, ring: Ring, e: EdgeId) -> Self {
        Self::edge(graph, ring, e).star()
    }

    pub fn from_monomial(
        graph: Arc<Graph>,
        ring: Ring,
        alpha: Path,
        beta: Path,
        coeff: Coeff,
    ) -> Self {
        let mut out = Self::zero(graph, ring);
        out.accumulate(GraphMonomial { alpha, beta }, coeff);
        out.normalize_in_place();
        out
    }

    /// 1 = sum of q_v over all vertices; the unit of a finite graph's
    /// algebra.
    pub fn unit(graph: Arc<Graph>, ring: Ring) -> Self {
        let mut out = Self::zero(graph.clone(), ring.clone());
        for v in graph.vertices() {
            out.accumulate(
                GraphMonomial {
                    alpha: Path::vertex(v),
                    beta: Path::vertex(v),
                },
                ring.one(),
            );
        }
        out
    }

    fn accumulate(&mut self, m: GraphMonomial, c: Coeff) {
        debug_assert_eq!(
            path_range(&self.graph, &m.alpha),
            path_range(&self.graph, &m.beta),
            "monomial sides must share a range"
        );
        let entry = self.terms.remove(&m);
        let total = match entry {
            Some(prev) => self.ring.add(&prev, &c),
            None => c,
        };
        if !self.ring.is_zero(&total) {
            self.terms.insert(m, total);
        }
    }

    fn check_compatible(&self, other: &GElem) -> Result<()> {
        if !Arc::ptr_eq(&self.graph, &other.graph) && self.graph != other.graph {
            return Err(Error::EngineMismatch(
                "graph elements over different graphs".into(),
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

    pub fn add(&self, other: &GElem) -> Result<GElem> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GElem) -> Result<GElem> {
        self.add(&other.scale_coeff(&other.ring.neg(&other.ring.one())))
    }

    pub fn scale(&self, n: i64) -> GElem {
        self.scale_coeff(&self.ring.from_i64(n))
    }

    pub fn scale_coeff(&self, c: &Coeff) -> GElem {
        let mut out = GElem::zero(self.graph.clone(), self.ring.clone());
        for (m, k) in &self.terms {
            out.accumulate(m.clone(), self.ring.mul(k, c));
        }
        out
    }

    /// Formal transpose: t_alpha t_{beta*} -> t_beta t_{alpha*}.
    pub fn star(&self) -> GElem {
        let mut out = GElem::zero(self.graph.clone(), self.ring.clone());
        for (m, c) in &self.terms {
            out.accumulate(
                GraphMonomial {
                    alpha: m.beta.clone(),
                    beta: m.alpha.clone(),
                },
                c.clone(),
            );
        }
        out.normalize_in_place();
        out
    }

    /// Product of two monomials by the reduction table for t_{beta*} t_gamma:
    /// t_gamma' when gamma extends beta, t_{beta'*} when beta extends gamma,
    /// q when equal, 0 otherwise.
    fn mul_monomials(&self, m1: &GraphMonomial, m2: &GraphMonomial) -> Option<GraphMonomial> {
        let g = &self.graph;
        let beta = &m1.beta;
        let gamma = &m2.alpha;
        if beta.base != gamma.base {
            return None;
        }
        if gamma.edges.len() >= beta.edges.len() {
            if gamma.edges[..beta.edges.len()] != beta.edges[..] {
                return None;
            }
            // gamma = beta gamma'; left side becomes alpha gamma'.
            let rest = &gamma.edges[beta.edges.len()..];
            if let Some(&first) = rest.first() {
                debug_assert!(path_composes(g, &m1.alpha, first));
            }
            let mut alpha = m1.alpha.clone();
            alpha.edges.extend_from_slice(rest);
            Some(GraphMonomial {
                alpha,
                beta: m2.beta.clone(),
            })
        } else {
            if beta.edges[..gamma.edges.len()] != gamma.edges[..] {
                return None;
            }
            // beta = gamma beta'; right side becomes delta beta'.
            let rest = &beta.edges[gamma.edges.len()..];
            let mut beta_out = m2.beta.clone();
            beta_out.edges.extend_from_slice(rest);
            Some(GraphMonomial {
                alpha: m1.alpha.clone(),
                beta: beta_out,
            })
        }
    }

    pub fn mul(&self, other: &GElem) -> Result<GElem> {
        self.check_compatible(other)?;
        let mut out = GElem::zero(self.graph.clone(), self.ring.clone());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some(m) = self.mul_monomials(m1, m2) {
                    out.accumulate(m, self.ring.mul(c1, c2));
                }
            }
        }
        out.normalize_in_place();
        Ok(out)
    }

    /// Whether the monomial carries the contractible pattern: both sides end
    /// in the designated edge of some regular vertex.
    fn reducible_at(&self, m: &GraphMonomial) -> Option<(EdgeId, VertexId)> {
        let la = *m.alpha.edges.last()?;
        let lb = *m.beta.edges.last()?;
        if la != lb {
            return None;
        }
        let v = self.graph.source(la);
        if self.graph.special_edge(v) == Some(la) {
            Some((la, v))
        } else {
            None
        }
    }

    fn normalize_in_place(&mut self) {
        loop {
            let target = self
                .terms
                .keys()
                .find(|m| self.reducible_at(m).is_some())
                .cloned();
            let Some(m) = target else { break };
            let (special, v) = self.reducible_at(&m).unwrap();
            let c = self.terms.remove(&m).unwrap();
            let mut alpha = m.alpha.clone();
            alpha.edges.pop();
            let mut beta = m.beta.clone();
            beta.edges.pop();
            self.accumulate(
                GraphMonomial {
                    alpha: alpha.clone(),
                    beta: beta.clone(),
                },
                c.clone(),
            );
            let neg = self.ring.neg(&c);
            for e in self.graph.out_edges(v) {
                if e == special {
                    continue;
                }
                let mut a = alpha.clone();
                a.edges.push(e);
                let mut b = beta.clone();
                b.edges.push(e);
                self.accumulate(GraphMonomial { alpha: a, beta: b }, neg.clone());
            }
        }
    }

    /// Decision procedure on finite graphs: normal forms are canonical.
    pub fn equal(&self, other: &GElem) -> Result<bool> {
        Ok(self.sub(other)?.is_zero())
    }

    /// Partition of the terms by |alpha| - |beta|.
    pub fn degree_components(&self) -> BTreeMap<i64, GElem> {
        let mut out: BTreeMap<i64, GElem> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| GElem::zero(self.graph.clone(), self.ring.clone()))
                .accumulate(m.clone(), c.clone());
        }
        out
    }

    /// The irreducible monomials with both paths ending at a sink, for
    /// basis-count cross-checks on acyclic graphs.
    pub fn monomials(&self) -> impl Iterator<Item = (&GraphMonomial, &Coeff)> + '_ {
        self.terms.iter()
    }
}

fn fmt_path(g: &Graph, p: &Path, f: &mut fmt::Formatter<'_>, ghost: bool) -> fmt::Result {
    let inner = p
        .edges
        .iter()
        .map(|&e| g.edge_name(e).to_string())
        .collect::<Vec<_>>()
        .join(" ");
    if ghost {
        write!(f, "star(s({inner}))")
    } else {
        write!(f, "s({inner})")
    }
}

impl fmt::Display for GElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if !self.ring.is_one(c) {
                write!(f, "{} ", self.ring.format(c))?;
            }
            let mut printed = false;
            if !m.alpha.edges.is_empty() {
                fmt_path(&self.graph, &m.alpha, f, false)?;
                printed = true;
            }
            if !m.beta.edges.is_empty() {
                if printed {
                    write!(f, " ")?;
                }
                fmt_path(&self.graph, &m.beta, f, true)?;
                printed = true;
            }
            if !printed {
                write!(f, "q({})", self.graph.vertex_name(m.alpha.base))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn rose(n: usize) -> Arc<Graph> {
        let mut g = Graph::new(format!("rose{n}"));
        let v = g.add_vertex("v");
        for i in 1..=n {
            g.add_edge(format!("e{i}"), v, v);
        }
        Arc::new(g)
    }

    fn line(n: usize) -> Arc<Graph> {
        let mut g = Graph::new(format!("line{n}"));
        let vs: Vec<VertexId> = (1..=n).map(|i| g.add_vertex(format!("v{i}"))).collect();
        for i in 1..n {
            g.add_edge(format!("e{i}"), vs[i - 1], vs[i]);
        }
        Arc::new(g)
    }

    #[test]
    fn rose1_lp4_contracts() {
        // t_e t_{e*} = q_v when s^-1(v) = {e}.
        let g = rose(1);
        let r = Ring::Integers;
        let te = GElem::edge(g.clone(), r.clone(), EdgeId(0));
        let tes = te.star();
        let prod = te.mul(&tes).unwrap();
        let qv = GElem::vertex(g, r, VertexId(0));
        assert!(prod.equal(&qv).unwrap());
    }

    #[test]
    fn lp1_orthogonal_vertices() {
        let g = line(2);
        let r = Ring::Integers;
        let qv = GElem::vertex(g.clone(), r.clone(), VertexId(0));
        let qw = GElem::vertex(g, r, VertexId(1));
        assert!(qv.mul(&qw).unwrap().is_zero());
        assert!(qv.mul(&qv).unwrap().equal(&qv).unwrap());
    }

    #[test]
    fn line2_contraction_matches_matrix_units() {
        // t_{e1} t_{e1*} = q_{v1}, mirroring E12 E21 = E11.
        let g = line(2);
        let r = Ring::Integers;
        let te = GElem::edge(g.clone(), r.clone(), EdgeId(0));
        let prod = te.mul(&te.star()).unwrap();
        let qv1 = GElem::vertex(g, r, VertexId(0));
        assert!(prod.equal(&qv1).unwrap());
    }

    #[test]
    fn lp3_ghost_then_real() {
        let g = rose(2);
        let r = Ring::Integers;
        let t1 = GElem::edge(g.clone(), r.clone(), EdgeId(0));
        let t2 = GElem::edge(g.clone(), r.clone(), EdgeId(1));
        // t_{e1*} t_{e1} = q_v, t_{e1*} t_{e2} = 0
        let qv = GElem::vertex(g, r, VertexId(0));
        assert!(t1.star().mul(&t1).unwrap().equal(&qv).unwrap());
        assert!(t1.star().mul(&t2).unwrap().is_zero());
    }

    #[test]
    fn lp4_regular_vertex() {
        // q_v = sum of t_e t_{e*} over s^-1(v) at every regular v.
        let g = rose(3);
        let r = Ring::Integers;
        let mut sum = GElem::zero(g.clone(), r.clone());
        for i in 0..3 {
            let te = GElem::edge(g.clone(), r.clone(), EdgeId(i));
            sum = sum.add(&te.mul(&te.star()).unwrap()).unwrap();
        }
        let qv = GElem::vertex(g, r, VertexId(0));
        assert!(sum.equal(&qv).unwrap());
    }

    #[test]
    fn ghost_real_composition_table() {
        // t_{beta*} t_alpha = t_gamma when alpha = beta gamma.
        let g = line(3);
        let r = Ring::Integers;
        let e1 = GElem::edge(g.clone(), r.clone(), EdgeId(0));
        let e2 = GElem::edge(g.clone(), r.clone(), EdgeId(1));
        let alpha = e1.mul(&e2).unwrap(); // t_{e1 e2}
        let got = e1.star().mul(&alpha).unwrap();
        assert!(got.equal(&e2).unwrap());
    }

    #[test]
    fn degree_components_partition() {
        let g = rose(1);
        let r = Ring::Integers;
        let qv = GElem::vertex(g.clone(), r.clone(), VertexId(0));
        let te = GElem::edge(g, r, EdgeId(0));
        let x = qv.add(&te).unwrap();
        let comps = x.degree_components();
        assert_eq!(comps.len(), 2);
        assert!(comps[&0].equal(&qv).unwrap());
        assert!(comps[&1].equal(&te).unwrap());
    }

    #[test]
    fn star_antimultiplicative() {
        let g = rose(2);
        let r = Ring::Integers;
        let a = GElem::edge(g.clone(), r.clone(), EdgeId(0));
        let b = GElem::edge(g.clone(), r.clone(), EdgeId(1)).star();
        let lhs = a.mul(&b).unwrap().star();
        let rhs = b.star().mul(&a.star()).unwrap();
        assert!(lhs.equal(&rhs).unwrap());
    }

    #[test]
    fn frontier_vertex_gets_no_lp4() {
        let mut g = Graph::new("trunc");
        let v = g.add_vertex("v");
        g.add_edge("e", v, v);
        g.mark_frontier(v);
        let g = Arc::new(g);
        let r = Ring::Integers;
        let te = GElem::edge(g.clone(), r.clone(), EdgeId(0));
        let prod = te.mul(&te.star()).unwrap();
        let qv = GElem::vertex(g, r, VertexId(0));
        // without LP4 the product must stay irreducible
        assert!(!prod.equal(&qv).unwrap());
    }
}
