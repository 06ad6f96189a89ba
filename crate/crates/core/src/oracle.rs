//! Independent finite-dimensional representations anchoring the symbolic
//! engines: the block representation of an acyclic graph's algebra on the
//! paths into its sinks, the Laurent evaluation of the single-loop graph,
//! and a brute-force simplicity decision by two-sided ideal closure.

use crate::element::GElem;
use crate::error::{Error, Result};
use crate::graph::{enumerate_paths, Graph, Path};
use crate::ring::{Coeff, Ring};
use crate::sets::VertexId;
use rand::rngs::StdRng;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A dense square matrix over an explicit ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub dim: usize,
    pub ring: Ring,
    pub entries: Vec<Coeff>,
}

impl Matrix {
    pub fn zero(ring: Ring, dim: usize) -> Self {
        Matrix {
            dim,
            entries: vec![ring.zero(); dim * dim],
            ring,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Coeff {
        &self.entries[i * self.dim + j]
    }

    pub fn add_at(&mut self, i: usize, j: usize, c: &Coeff) {
        let cur = self.entries[i * self.dim + j].clone();
        self.entries[i * self.dim + j] = self.ring.add(&cur, c);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|c| self.ring.is_zero(c))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim);
        let mut out = Matrix::zero(self.ring.clone(), self.dim);
        for i in 0..self.dim {
            for k in 0..self.dim {
                let a = self.get(i, k);
                if self.ring.is_zero(a) {
                    continue;
                }
                for j in 0..self.dim {
                    let b = other.get(k, j);
                    if self.ring.is_zero(b) {
                        continue;
                    }
                    let prod = self.ring.mul(a, b);
                    out.add_at(i, j, &prod);
                }
            }
        }
        out
    }
}

/// One block per sink; the basis of a block is the set of paths ending at
/// its sink, ordered by descending length and then by edge sequence.
#[derive(Debug, Clone)]
pub struct MatrixRep {
    pub graph: Arc<Graph>,
    pub ring: Ring,
    pub blocks: Vec<(VertexId, Vec<Path>)>,
    /// Flat index of each basis path.
    index: BTreeMap<Path, usize>,
    pub dim: usize,
}

fn path_range(g: &Graph, p: &Path) -> VertexId {
    match p.edges.last() {
        Some(&e) => g.target(e),
        None => p.base,
    }
}

/// The faithful block representation of a finite acyclic graph.
pub fn acyclic_matrix_rep(graph: &Arc<Graph>, ring: &Ring) -> Result<MatrixRep> {
    if !graph.is_acyclic() {
        return Err(Error::NotAcyclic(graph.name.clone()));
    }
    if !graph.frontier.is_empty() {
        return Err(Error::Unsupported(
            "matrix oracle needs a graph without truncation frontier".into(),
        ));
    }
    let max_len = graph.edge_count();
    let mut blocks = Vec::new();
    let mut index = BTreeMap::new();
    let mut dim = 0usize;
    for sink in graph.vertices().filter(|&v| graph.is_sink(v)) {
        let mut basis: Vec<Path> = Vec::new();
        for v in graph.vertices() {
            for p in enumerate_paths(graph.as_ref(), v, max_len) {
                if path_range(graph, &p) == sink {
                    basis.push(p);
                }
            }
        }
        basis.sort_by(|a, b| {
            b.edges
                .len()
                .cmp(&a.edges.len())
                .then_with(|| a.edges.cmp(&b.edges))
        });
        for p in &basis {
            index.insert(p.clone(), dim);
            dim += 1;
        }
        blocks.push((sink, basis));
    }
    let rep = MatrixRep {
        graph: graph.clone(),
        ring: ring.clone(),
        blocks,
        index,
        dim,
    };
    rep.assert_leavitt_family()?;
    Ok(rep)
}

impl MatrixRep {
    /// The dimension of the represented algebra: the sum of the squared
    /// block sizes.
    pub fn algebra_dim(&self) -> usize {
        self.blocks.iter().map(|(_, b)| b.len() * b.len()).sum()
    }

    /// Applies a normalized element: the monomial t_alpha t_{beta*} maps a
    /// basis path beta pi' to alpha pi'.
    pub fn apply(&self, x: &GElem) -> Result<Matrix> {
        if x.graph != self.graph {
            return Err(Error::EngineMismatch("element over a different graph".into()));
        }
        let mut out = Matrix::zero(self.ring.clone(), self.dim);
        for (m, c) in x.monomials() {
            for (p, &col) in &self.index {
                // does p factor as beta p'?
                let b = &m.beta;
                let matches = if b.edges.is_empty() {
                    p.base == b.base
                } else {
                    p.edges.len() >= b.edges.len() && p.edges[..b.edges.len()] == b.edges[..]
                };
                if !matches {
                    continue;
                }
                let mut edges = m.alpha.edges.clone();
                edges.extend_from_slice(&p.edges[b.edges.len()..]);
                let image = Path {
                    base: m.alpha.base,
                    edges,
                };
                let row = *self
                    .index
                    .get(&image)
                    .expect("image path must end at the same sink");
                out.add_at(row, col, c);
            }
        }
        Ok(out)
    }

    pub fn q(&self, v: VertexId) -> Matrix {
        self.apply(&GElem::vertex(self.graph.clone(), self.ring.clone(), v))
            .expect("same graph")
    }

    pub fn t(&self, e: crate::sets::EdgeId) -> Matrix {
        self.apply(&GElem::edge(self.graph.clone(), self.ring.clone(), e))
            .expect("same graph")
    }

    pub fn t_star(&self, e: crate::sets::EdgeId) -> Matrix {
        self.apply(&GElem::ghost_edge(self.graph.clone(), self.ring.clone(), e))
            .expect("same graph")
    }

    /// Checks LP1-LP4 for the generator images, exactly.
    fn assert_leavitt_family(&self) -> Result<()> {
        let g = &self.graph;
        let edge_ids: Vec<_> = g.edges().map(|(id, _)| id).collect();
        for v in g.vertices() {
            for w in g.vertices() {
                let prod = self.q(v).mul(&self.q(w));
                let expect = if v == w {
                    self.q(v)
                } else {
                    Matrix::zero(self.ring.clone(), self.dim)
                };
                if prod != expect {
                    return Err(Error::Unsupported("LP1 fails in the oracle".into()));
                }
            }
        }
        for &e in &edge_ids {
            let te = self.t(e);
            let tes = self.t_star(e);
            if self.q(g.source(e)).mul(&te) != te || te.mul(&self.q(g.target(e))) != te {
                return Err(Error::Unsupported("LP2 fails in the oracle".into()));
            }
            if self.q(g.target(e)).mul(&tes) != tes || tes.mul(&self.q(g.source(e))) != tes {
                return Err(Error::Unsupported("LP2* fails in the oracle".into()));
            }
            for &f in &edge_ids {
                let prod = self.t_star(e).mul(&self.t(f));
                let expect = if e == f {
                    self.q(g.target(e))
                } else {
                    Matrix::zero(self.ring.clone(), self.dim)
                };
                if prod != expect {
                    return Err(Error::Unsupported("LP3 fails in the oracle".into()));
                }
            }
        }
        for v in g.vertices() {
            if !g.is_regular(v) {
                continue;
            }
            let mut sum = Matrix::zero(self.ring.clone(), self.dim);
            for e in g.out_edges(v) {
                let m = self.t(e).mul(&self.t_star(e));
                for (k, c) in m.entries.iter().enumerate() {
                    let cur = sum.entries[k].clone();
                    sum.entries[k] = self.ring.add(&cur, c);
                }
            }
            if sum != self.q(v) {
                return Err(Error::Unsupported("LP4 fails in the oracle".into()));
            }
        }
        Ok(())
    }
}

/// Basis count from the spanning set: the sum over sinks of the squared
/// number of paths ending there.
pub fn dim_acyclic(graph: &Graph) -> Result<usize> {
    if !graph.is_acyclic() {
        return Err(Error::NotAcyclic(graph.name.clone()));
    }
    let max_len = graph.edge_count();
    let mut total = 0usize;
    for sink in graph.vertices().filter(|&v| graph.is_sink(v)) {
        let mut count = 0usize;
        for v in graph.vertices() {
            for p in enumerate_paths(graph, v, max_len) {
                if path_range(graph, &p) == sink {
                    count += 1;
                }
            }
        }
        total += count * count;
    }
    Ok(total)
}

/// Exact Laurent polynomials, as degree -> coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Laurent {
    pub ring: Ring,
    pub coeffs: BTreeMap<i64, Coeff>,
}

impl Laurent {
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let mut coeffs: BTreeMap<i64, Coeff> = BTreeMap::new();
        for (d1, c1) in &self.coeffs {
            for (d2, c2) in &other.coeffs {
                let d = d1 + d2;
                let prod = self.ring.mul(c1, c2);
                let cur = coeffs.remove(&d).unwrap_or_else(|| self.ring.zero());
                let total = self.ring.add(&cur, &prod);
                if !self.ring.is_zero(&total) {
                    coeffs.insert(d, total);
                }
            }
        }
        Laurent {
            ring: self.ring.clone(),
            coeffs,
        }
    }
}

/// Evaluation of the single-loop graph's algebra in Laurent polynomials:
/// t_e -> x, t_{e*} -> x^{-1}, q_v -> 1.
pub fn laurent_rep(x: &GElem) -> Result<Laurent> {
    let g = &x.graph;
    if g.vertex_count() != 1 || g.edge_count() != 1 || !g.frontier.is_empty() {
        return Err(Error::WrongShape(
            "Laurent evaluation needs one vertex and one loop".into(),
        ));
    }
    let mut coeffs: BTreeMap<i64, Coeff> = BTreeMap::new();
    for (m, c) in x.monomials() {
        let d = m.alpha.edges.len() as i64 - m.beta.edges.len() as i64;
        let cur = coeffs.remove(&d).unwrap_or_else(|| x.ring.zero());
        let total = x.ring.add(&cur, c);
        if !x.ring.is_zero(&total) {
            coeffs.insert(d, total);
        }
    }
    Ok(Laurent {
        ring: x.ring.clone(),
        coeffs,
    })
}

/// Row-echelon span tracker over a field.
struct Span {
    ring: Ring,
    rows: Vec<Vec<Coeff>>,
    pivots: Vec<usize>,
}

impl Span {
    fn new(ring: Ring) -> Self {
        Span {
            ring,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Inserts a vector, reducing against the span; returns true if it was
    /// independent.
    fn insert(&mut self, mut v: Vec<Coeff>) -> bool {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let factor = v[p].clone();
            if self.ring.is_zero(&factor) {
                continue;
            }
            for (x, y) in v.iter_mut().zip(row) {
                let sub = self.ring.mul(&factor, y);
                *x = self.ring.sub(x, &sub);
            }
        }
        let Some(p) = v.iter().position(|c| !self.ring.is_zero(c)) else {
            return false;
        };
        let inv = self.ring.inv(&v[p]).expect("field inverse");
        for x in v.iter_mut() {
            *x = self.ring.mul(x, &inv);
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }
}

/// Whether the represented algebra is simple: the two-sided ideal generated
/// by every nonzero basis matrix must exhaust the algebra.
pub fn brute_force_simple(rep: &MatrixRep) -> Result<bool> {
    if !rep.ring.is_field() {
        return Err(Error::Unsupported("ideal closure needs a field".into()));
    }
    // The algebra is the block-diagonal span of all matrix units.
    let mut units: Vec<(usize, usize)> = Vec::new();
    let mut offset = 0usize;
    for (_, basis) in &rep.blocks {
        let n = basis.len();
        for i in 0..n {
            for j in 0..n {
                units.push((offset + i, offset + j));
            }
        }
        offset += n;
    }
    let algebra_dim = units.len();
    let flat = |m: &Matrix| -> Vec<Coeff> {
        units.iter().map(|&(i, j)| m.get(i, j).clone()).collect()
    };
    let unit_matrix = |&(i, j): &(usize, usize)| -> Matrix {
        let mut m = Matrix::zero(rep.ring.clone(), rep.dim);
        m.add_at(i, j, &rep.ring.one());
        m
    };
    for seed in &units {
        let x = unit_matrix(seed);
        let mut span = Span::new(rep.ring.clone());
        let mut frontier = vec![x];
        span.insert(flat(&frontier[0]));
        while let Some(y) = frontier.pop() {
            for u in &units {
                let um = unit_matrix(u);
                for z in [um.mul(&y), y.mul(&um)] {
                    if span.insert(flat(&z)) {
                        frontier.push(z);
                    }
                }
            }
        }
        if span.dim() != algebra_dim {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The number of irreducible spanning monomials of a finite acyclic
/// graph: pairs of paths with a common range, excluding those whose sides
/// both end in the designated edge of a regular vertex.
pub fn normal_form_basis_count(g: &Graph) -> Result<usize> {
    if !g.is_acyclic() {
        return Err(Error::NotAcyclic(g.name.clone()));
    }
    let max_len = g.edge_count();
    let mut count = 0usize;
    for v in g.vertices() {
        for alpha in enumerate_paths(g, v, max_len) {
            let ra = path_range(g, &alpha);
            for w in g.vertices() {
                for beta in enumerate_paths(g, w, max_len) {
                    if path_range(g, &beta) != ra {
                        continue;
                    }
                    let reducible = match (alpha.edges.last(), beta.edges.last()) {
                        (Some(&x), Some(&y)) => {
                            x == y && g.special_edge(g.source(x)) == Some(x)
                        }
                        _ => false,
                    };
                    if !reducible {
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(count)
}

/// Outcome of a randomized engine-vs-representation comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompareReport {
    pub samples: usize,
    pub disagreements: usize,
}

/// For random element pairs: the representation of the normalized product
/// must equal the product of the representations, and an element normalizes
/// to zero exactly when its representation vanishes.
pub fn compare(
    graph: &Arc<Graph>,
    rep: &MatrixRep,
    ring: &Ring,
    samples: usize,
    rng: &mut StdRng,
) -> Result<CompareReport> {
    let mut disagreements = 0usize;
    for _ in 0..samples {
        let a = crate::corpus::random_gelem(graph, ring, rng, 2);
        let b = crate::corpus::random_gelem(graph, ring, rng, 2);
        let prod = a.mul(&b)?;
        let lhs = rep.apply(&prod)?;
        let rhs = rep.apply(&a)?.mul(&rep.apply(&b)?);
        if lhs != rhs {
            disagreements += 1;
        }
        if prod.is_zero() != lhs.is_zero() {
            disagreements += 1;
        }
    }
    Ok(CompareReport {
        samples,
        disagreements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::element::GElem;
    use crate::sets::EdgeId;

    #[test]
    fn line3_rep_shape() {
        let g = corpus::line_graph(3);
        let r = Ring::Rationals;
        let rep = acyclic_matrix_rep(&g, &r).unwrap();
        assert_eq!(rep.dim, 3);
        assert_eq!(rep.blocks.len(), 1);
        // T_{e1} = E_{1,2} in 1-based matrix-unit notation.
        let t1 = rep.t(EdgeId(0));
        assert!(r.is_one(t1.get(0, 1)));
        assert_eq!(
            t1.entries.iter().filter(|c| !r.is_zero(c)).count(),
            1
        );
        // Q_{v_i} = E_{i,i}
        for i in 0..3 {
            let q = rep.q(VertexId(i as u32));
            assert!(r.is_one(q.get(i, i)));
            assert_eq!(q.entries.iter().filter(|c| !r.is_zero(c)).count(), 1);
        }
    }

    #[test]
    fn parallel_rep_shape() {
        // Two parallel edges: Q_v = Id_2 (top-left), T_{e_i} = E_{i,3}.
        let g = corpus::parallel_graph(2);
        let r = Ring::Rationals;
        let rep = acyclic_matrix_rep(&g, &r).unwrap();
        assert_eq!(rep.dim, 3);
        let qv = rep.q(VertexId(0));
        assert!(r.is_one(qv.get(0, 0)));
        assert!(r.is_one(qv.get(1, 1)));
        assert!(r.is_zero(qv.get(2, 2)));
        for i in 0..2u32 {
            let t = rep.t(EdgeId(i));
            assert!(r.is_one(t.get(i as usize, 2)));
        }
    }

    #[test]
    fn two_isolated_vertices_two_blocks() {
        let mut g = crate::graph::Graph::new("iso2");
        g.add_vertex("u");
        g.add_vertex("w");
        let g = Arc::new(g);
        let rep = acyclic_matrix_rep(&g, &Ring::PrimeField(2)).unwrap();
        assert_eq!(rep.blocks.len(), 2);
        assert_eq!(rep.dim, 2);
        assert_eq!(dim_acyclic(&g).unwrap(), 2);
    }

    #[test]
    fn dim_matches_examples() {
        assert_eq!(dim_acyclic(&corpus::line_graph(3)).unwrap(), 9);
        assert_eq!(dim_acyclic(&corpus::parallel_graph(2)).unwrap(), 9);
        assert_eq!(dim_acyclic(&corpus::line_graph(1)).unwrap(), 1);
    }

    #[test]
    fn rejects_cycles() {
        assert!(matches!(
            dim_acyclic(&corpus::rose(1)),
            Err(Error::NotAcyclic(_))
        ));
    }

    #[test]
    fn laurent_examples() {
        let g = corpus::rose(1);
        let r = Ring::Integers;
        let te = GElem::edge(g.clone(), r.clone(), EdgeId(0));
        let sq = te.mul(&te).unwrap();
        let l = laurent_rep(&sq).unwrap();
        assert_eq!(l.coeffs.len(), 1);
        assert!(r.is_one(&l.coeffs[&2]));
        // t_{e*} t_e = q_v -> 1
        let unit = te.star().mul(&te).unwrap();
        let l = laurent_rep(&unit).unwrap();
        assert!(r.is_one(&l.coeffs[&0]));
        // wrong shape rejected
        let g2 = corpus::line_graph(2);
        let q = GElem::vertex(g2, r, VertexId(0));
        assert!(matches!(laurent_rep(&q), Err(Error::WrongShape(_))));
    }

    #[test]
    fn laurent_evaluation_witnesses_non_simplicity() {
        // q_v + t_e is a nonzero element killed by evaluation at x = -1,
        // so the single loop's algebra has a proper quotient.
        let g = corpus::rose(1);
        let r = Ring::Rationals;
        let x = GElem::vertex(g.clone(), r.clone(), VertexId(0))
            .add(&GElem::edge(g, r.clone(), EdgeId(0)))
            .unwrap();
        assert!(!x.is_zero());
        let l = laurent_rep(&x).unwrap();
        // evaluate at -1: sum of coeff * (-1)^d
        let mut total = r.zero();
        for (d, c) in &l.coeffs {
            let sign = if d.rem_euclid(2) == 0 { 1 } else { -1 };
            total = r.add(&total, &r.mul(c, &r.from_i64(sign)));
        }
        assert!(r.is_zero(&total));
    }

    #[test]
    fn full_matrix_algebra_is_simple() {
        let rep = acyclic_matrix_rep(&corpus::line_graph(3), &Ring::PrimeField(2)).unwrap();
        assert!(brute_force_simple(&rep).unwrap());
    }

    #[test]
    fn simplicity_oracle_matches_block_count() {
        for g in corpus::all_graphs(3, 2, true) {
            let rep = acyclic_matrix_rep(&g, &Ring::PrimeField(2)).unwrap();
            assert_eq!(
                brute_force_simple(&rep).unwrap(),
                rep.blocks.len() == 1,
                "{}",
                g.name
            );
        }
    }

    #[test]
    fn block_sum_is_not_simple() {
        let mut g = crate::graph::Graph::new("split");
        let a = g.add_vertex("a");
        let b = g.add_vertex("b");
        let c = g.add_vertex("c");
        g.add_edge("e", a, b);
        let _ = c;
        let g = Arc::new(g);
        // blocks M_2 + M_1
        let rep = acyclic_matrix_rep(&g, &Ring::PrimeField(2)).unwrap();
        assert_eq!(rep.blocks.len(), 2);
        assert!(!brute_force_simple(&rep).unwrap());
    }

    #[test]
    fn compare_agrees_on_line4_gf3() {
        let g = corpus::line_graph(4);
        let r = Ring::PrimeField(3);
        let rep = acyclic_matrix_rep(&g, &r).unwrap();
        let mut rng = corpus::seeded(42);
        let report = compare(&g, &rep, &r, 500, &mut rng).unwrap();
        assert_eq!(report.disagreements, 0);
    }

    #[test]
    fn lp4_defect_is_zero_both_sides() {
        // q_v - sum t_e t_{e*} at a regular vertex: zero in engine and rep.
        let g = corpus::line_graph(3);
        let r = Ring::PrimeField(3);
        let rep = acyclic_matrix_rep(&g, &r).unwrap();
        let q = GElem::vertex(g.clone(), r.clone(), VertexId(0));
        let te = GElem::edge(g.clone(), r.clone(), EdgeId(0));
        let defect = q.sub(&te.mul(&te.star()).unwrap()).unwrap();
        assert!(defect.is_zero());
        assert!(rep.apply(&defect).unwrap().is_zero());
    }

    #[test]
    fn nonzero_scalar_multiple_stays_nonzero() {
        let g = corpus::line_graph(2);
        let r = Ring::Integers;
        let rep = acyclic_matrix_rep(&g, &r).unwrap();
        let q = GElem::vertex(g, r, VertexId(0)).scale(5);
        assert!(!q.is_zero());
        assert!(!rep.apply(&q).unwrap().is_zero());
    }

    #[test]
    fn normal_form_count_matches_dim_acyclic() {
        // The irreducible monomials of an acyclic graph form a basis of the
        // predicted size.
        for g in [
            corpus::line_graph(2),
            corpus::line_graph(3),
            corpus::parallel_graph(2),
            corpus::parallel_graph(3),
        ] {
            assert_eq!(
                normal_form_basis_count(&g).unwrap(),
                dim_acyclic(&g).unwrap(),
                "graph {}",
                g.name
            );
        }
    }
}
