//! The Exel-Laca engine: elements spanned by the forms
//! s_alpha (prod of s_{e*} s_e over a finite edge set) s_{beta*},
//! with vertex idempotents and the unitization's formal unit.

use super::ultra_elem::UElem;
use super::Eq3;
use crate::error::{Error, Result};
use crate::graph::Ultragraph;
use crate::ring::{Coeff, Ring};
use crate::sets::{EdgeId, SizeClass, Universe, VertexId, VertexSet};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

/// The middle factor of a spanning monomial.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ELMiddle {
    /// No middle idempotent: a bare s_alpha s_{beta*}.
    Empty,
    /// A vertex idempotent p_v.
    Vertex(VertexId),
    /// A commuting product of s_{e*} s_e over a finite edge set.
    Ranges(BTreeSet<EdgeId>),
    /// The unit of the unitization; only with empty paths.
    Unit,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ELMonomial {
    pub alpha: Vec<EdgeId>,
    pub middle: ELMiddle,
    pub beta: Vec<EdgeId>,
}

impl ELMonomial {
    pub fn degree(&self) -> i64 {
        self.alpha.len() as i64 - self.beta.len() as i64
    }

    pub fn unit() -> Self {
        ELMonomial {
            alpha: Vec::new(),
            middle: ELMiddle::Unit,
            beta: Vec::new(),
        }
    }
}

fn path_composable(g: &Ultragraph, p: &[EdgeId]) -> bool {
    p.windows(2).all(|w| g.range(w[0]).contains(g.source(w[1])))
}

/// The intersection constraint a middle imposes, together with the ranges
/// of the adjacent path ends.
fn constraint_set(
    g: &Ultragraph,
    alpha: &[EdgeId],
    middle: &ELMiddle,
    beta: &[EdgeId],
) -> VertexSet {
    let u = g.universe;
    let mut c = VertexSet::full(&u);
    if let Some(&e) = alpha.last() {
        c = c.intersect(g.range(e), &u);
    }
    if let Some(&e) = beta.last() {
        c = c.intersect(g.range(e), &u);
    }
    match middle {
        ELMiddle::Empty | ELMiddle::Unit => c,
        ELMiddle::Vertex(v) => c.intersect(&VertexSet::singleton(*v), &u),
        ELMiddle::Ranges(s) => {
            for &e in s {
                c = c.intersect(g.range(e), &u);
            }
            c
        }
    }
}

/// An exact R-linear combination over the Exel-Laca spanning forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ELElem {
    pub g: Arc<Ultragraph>,
    pub ring: Ring,
    pub terms: BTreeMap<ELMonomial, Coeff>,
}

impl ELElem {
    pub fn zero(g: Arc<Ultragraph>, ring: Ring) -> Self {
        ELElem {
            g,
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The unit of the unitization.
    pub fn one(g: Arc<Ultragraph>, ring: Ring) -> Self {
        let mut out = Self::zero(g, ring.clone());
        out.accumulate(ELMonomial::unit(), ring.one());
        out
    }

    /// p_v
    pub fn p_vertex(g: Arc<Ultragraph>, ring: Ring, v: VertexId) -> Self {
        let one = ring.one();
        let mut out = Self::zero(g, ring);
        out.accumulate_canonical(Vec::new(), ELMiddle::Vertex(v), Vec::new(), one);
        out
    }

    /// s_alpha
    pub fn s_path(g: Arc<Ultragraph>, ring: Ring, alpha: Vec<EdgeId>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::Unsupported("use p_vertex for length-0 paths".into()));
        }
        if !path_composable(&g, &alpha) {
            return Err(Error::Unsupported("path does not compose".into()));
        }
        let one = ring.one();
        let mut out = Self::zero(g, ring);
        out.accumulate_canonical(alpha, ELMiddle::Empty, Vec::new(), one);
        Ok(out)
    }

    pub fn s_edge(g: Arc<Ultragraph>, ring: Ring, e: EdgeId) -> Self {
        Self::s_path(g, ring, vec![e]).expect("single edges always compose")
    }

    pub fn s_ghost(g: Arc<Ultragraph>, ring: Ring, e: EdgeId) -> Self {
        Self::s_edge(g, ring, e).star()
    }

    /// The commuting idempotent s_{e*} s_e.
    pub fn range_idempotent(g: Arc<Ultragraph>, ring: Ring, e: EdgeId) -> Self {
        let one = ring.one();
        let mut out = Self::zero(g, ring);
        out.accumulate_canonical(
            Vec::new(),
            ELMiddle::Ranges([e].into_iter().collect()),
            Vec::new(),
            one,
        );
        out
    }

    /// Canonical accumulation: range products absorb the adjacent path
    /// edges, and terms whose intersection constraint is empty vanish.
    fn accumulate_canonical(
        &mut self,
        alpha: Vec<EdgeId>,
        middle: ELMiddle,
        beta: Vec<EdgeId>,
        coeff: Coeff,
    ) {
        let g = &self.g;
        let mut middle = middle;
        if let ELMiddle::Ranges(mut s) = middle {
            if let Some(&e) = alpha.last() {
                s.remove(&e);
            }
            if let Some(&e) = beta.last() {
                s.remove(&e);
            }
            middle = if s.is_empty() {
                ELMiddle::Empty
            } else {
                ELMiddle::Ranges(s)
            };
        }
        if middle == ELMiddle::Unit && (!alpha.is_empty() || !beta.is_empty()) {
            middle = ELMiddle::Empty;
        }
        if middle == ELMiddle::Empty && alpha.is_empty() && beta.is_empty() {
            debug_assert!(false, "scalar monomial must be Unit");
            return;
        }
        if middle != ELMiddle::Unit && constraint_set(g, &alpha, &middle, &beta).is_empty() {
            return;
        }
        self.accumulate(
            ELMonomial {
                alpha,
                middle,
                beta,
            },
            coeff,
        );
    }

    fn accumulate(&mut self, m: ELMonomial, c: Coeff) {
        let entry = self.terms.remove(&m);
        let total = match entry {
            Some(prev) => self.ring.add(&prev, &c),
            None => c,
        };
        if !self.ring.is_zero(&total) {
            self.terms.insert(m, total);
        }
    }

    fn check_compatible(&self, other: &ELElem) -> Result<()> {
        if !Arc::ptr_eq(&self.g, &other.g) && self.g != other.g {
            return Err(Error::EngineMismatch(
                "Exel-Laca elements over different structures".into(),
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

    pub fn add(&self, other: &ELElem) -> Result<ELElem> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &ELElem) -> Result<ELElem> {
        self.add(&other.scale_coeff(&other.ring.neg(&other.ring.one())))
    }

    pub fn scale(&self, n: i64) -> ELElem {
        self.scale_coeff(&self.ring.from_i64(n))
    }

    pub fn scale_coeff(&self, c: &Coeff) -> ELElem {
        let mut out = ELElem::zero(self.g.clone(), self.ring.clone());
        for (m, k) in &self.terms {
            out.accumulate(m.clone(), self.ring.mul(k, c));
        }
        out
    }

    pub fn star(&self) -> ELElem {
        let mut out = ELElem::zero(self.g.clone(), self.ring.clone());
        for (m, c) in &self.terms {
            out.accumulate(
                ELMonomial {
                    alpha: m.beta.clone(),
                    middle: m.middle.clone(),
                    beta: m.alpha.clone(),
                },
                c.clone(),
            );
        }
        out
    }

    /// Merge of two adjacent middles; None encodes zero.
    fn merge_middles(&self, a: &ELMiddle, b: &ELMiddle) -> Option<ELMiddle> {
        let g = &self.g;
        match (a, b) {
            (ELMiddle::Empty, x) | (x, ELMiddle::Empty) => Some(x.clone()),
            (ELMiddle::Unit, x) | (x, ELMiddle::Unit) => Some(x.clone()),
            (ELMiddle::Vertex(v), ELMiddle::Vertex(w)) => {
                if v == w {
                    Some(ELMiddle::Vertex(*v))
                } else {
                    None
                }
            }
            (ELMiddle::Vertex(v), ELMiddle::Ranges(s))
            | (ELMiddle::Ranges(s), ELMiddle::Vertex(v)) => {
                if s.iter().all(|&e| g.range(e).contains(*v)) {
                    Some(ELMiddle::Vertex(*v))
                } else {
                    None
                }
            }
            (ELMiddle::Ranges(s), ELMiddle::Ranges(t)) => {
                Some(ELMiddle::Ranges(s.union(t).cloned().collect()))
            }
        }
    }

    /// Whether a middle lets a real edge with source v pass through it.
    fn middle_passes(&self, mid: &ELMiddle, v: VertexId) -> bool {
        match mid {
            ELMiddle::Empty | ELMiddle::Unit => true,
            ELMiddle::Vertex(w) => *w == v,
            ELMiddle::Ranges(s) => s.iter().all(|&e| self.g.range(e).contains(v)),
        }
    }

    fn mul_monomials(&self, m1: &ELMonomial, m2: &ELMonomial, out: &mut ELElem, c: Coeff) {
        let g = &self.g;
        if m1.middle == ELMiddle::Unit {
            out.accumulate(m2.clone(), c);
            return;
        }
        if m2.middle == ELMiddle::Unit {
            out.accumulate(m1.clone(), c);
            return;
        }
        let beta1 = &m1.beta;
        let alpha2 = &m2.alpha;
        if alpha2.len() >= beta1.len() && alpha2[..beta1.len()] == beta1[..] {
            let rest = &alpha2[beta1.len()..];
            match rest.first() {
                None => {
                    // beta1 == alpha2: bridge contributes the range
                    // idempotent of the shared last edge.
                    let bridge = match beta1.last() {
                        Some(&e) => ELMiddle::Ranges([e].into_iter().collect()),
                        None => ELMiddle::Empty,
                    };
                    let Some(mid) = self
                        .merge_middles(&m1.middle, &bridge)
                        .and_then(|m| self.merge_middles(&m, &m2.middle))
                    else {
                        return;
                    };
                    out.accumulate_canonical(m1.alpha.clone(), mid, m2.beta.clone(), c);
                }
                Some(&first) => {
                    // alpha2 = beta1 rest: middle1 must pass s(rest).
                    let v = g.source(first);
                    if !self.middle_passes(&m1.middle, v) {
                        return;
                    }
                    if let Some(&e) = m1.alpha.last() {
                        if !g.range(e).contains(v) {
                            return;
                        }
                    }
                    let mut alpha = m1.alpha.clone();
                    alpha.extend_from_slice(rest);
                    out.accumulate_canonical(alpha, m2.middle.clone(), m2.beta.clone(), c);
                }
            }
        } else if beta1.len() > alpha2.len() && beta1[..alpha2.len()] == alpha2[..] {
            // beta1 = alpha2 rest: ghosts cross middle2.
            let rest = &beta1[alpha2.len()..];
            let v = g.source(rest[0]);
            if !self.middle_passes(&m2.middle, v) {
                return;
            }
            if let Some(&e) = m2.beta.last() {
                if !g.range(e).contains(v) {
                    return;
                }
            }
            let mut beta = m2.beta.clone();
            beta.extend_from_slice(rest);
            out.accumulate_canonical(m1.alpha.clone(), m1.middle.clone(), beta, c);
        }
    }

    pub fn mul(&self, other: &ELElem) -> Result<ELElem> {
        self.check_compatible(other)?;
        let mut out = ELElem::zero(self.g.clone(), self.ring.clone());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                self.mul_monomials(m1, m2, &mut out, self.ring.mul(c1, c2));
            }
        }
        Ok(out)
    }

    /// Reduction to the spanning forms: every range-product middle
    /// whose full intersection constraint is finite expands into a vertex
    /// sum (the finite case of EL4).
    pub fn el_reduce(&self) -> ELElem {
        let mut out = ELElem::zero(self.g.clone(), self.ring.clone());
        for (m, c) in &self.terms {
            match &m.middle {
                ELMiddle::Ranges(_) => {
                    let cset = constraint_set(&self.g, &m.alpha, &m.middle, &m.beta);
                    match cset.size_class() {
                        SizeClass::Finite(_) => {
                            for v in cset.iter_finite() {
                                out.accumulate_canonical(
                                    m.alpha.clone(),
                                    ELMiddle::Vertex(v),
                                    m.beta.clone(),
                                    c.clone(),
                                );
                            }
                        }
                        SizeClass::Infinite => out.accumulate(m.clone(), c.clone()),
                    }
                }
                _ => out.accumulate(m.clone(), c.clone()),
            }
        }
        out
    }

    pub fn degree_components(&self) -> BTreeMap<i64, ELElem> {
        let mut out: BTreeMap<i64, ELElem> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| ELElem::zero(self.g.clone(), self.ring.clone()))
                .accumulate(m.clone(), c.clone());
        }
        out
    }

    /// The canonical surjection onto the ultragraph engine: p_v -> p_v,
    /// s_e -> s_e. The formal unit has no image and is rejected.
    pub fn to_ultragraph(&self) -> Result<UElem> {
        let g = self.g.clone();
        let r = self.ring.clone();
        let mut out = UElem::zero(g.clone(), r.clone());
        for (m, c) in &self.terms {
            let mid: UElem = match &m.middle {
                ELMiddle::Unit => {
                    return Err(Error::Unsupported(
                        "the unitization's unit has no image in the path algebra".into(),
                    ))
                }
                ELMiddle::Vertex(v) => UElem::p_vertex(g.clone(), r.clone(), *v),
                ELMiddle::Ranges(s) => {
                    let mut acc = VertexSet::full(&g.universe);
                    for &e in s {
                        acc = acc.intersect(g.range(e), &g.universe);
                    }
                    UElem::p(g.clone(), r.clone(), acc)
                }
                ELMiddle::Empty => {
                    let mut acc = VertexSet::full(&g.universe);
                    if let Some(&e) = m.alpha.last() {
                        acc = acc.intersect(g.range(e), &g.universe);
                    }
                    if let Some(&e) = m.beta.last() {
                        acc = acc.intersect(g.range(e), &g.universe);
                    }
                    UElem::p(g.clone(), r.clone(), acc)
                }
            };
            let mut img = mid;
            for &e in m.alpha.iter().rev() {
                img = UElem::s_edge(g.clone(), r.clone(), e).mul(&img)?;
            }
            for &e in m.beta.iter().rev() {
                img = img.mul(&UElem::s_ghost(g.clone(), r.clone(), e))?;
            }
            out = out.add(&img.scale_coeff(c))?;
        }
        Ok(out)
    }

    /// One-pass expansion of the defining relation at regular vertices:
    /// every vertex middle p_v with 0 < |s^-1(v)| < infinity becomes the
    /// sum of s_e s_{e*} over the emitted edges.
    fn exl4_expand_once(&self) -> ELElem {
        let g = &self.g;
        let mut out = ELElem::zero(g.clone(), self.ring.clone());
        for (m, c) in &self.terms {
            match &m.middle {
                ELMiddle::Vertex(v) if g.is_regular(*v) => {
                    for e in g.out_edges(*v) {
                        let mut alpha = m.alpha.clone();
                        alpha.push(e);
                        let mut beta = m.beta.clone();
                        beta.push(e);
                        out.accumulate_canonical(alpha, ELMiddle::Empty, beta, c.clone());
                    }
                }
                _ => out.accumulate(m.clone(), c.clone()),
            }
        }
        out
    }

    /// Three-valued equality. Complete for finite structures with no
    /// singular vertices (through the path-algebra identification); sound
    /// `False` whenever the images differ; `Unknown` otherwise.
    pub fn equal(&self, other: &ELElem) -> Result<Eq3> {
        self.check_compatible(other)?;
        let d = self.sub(other)?;
        if d.is_zero() {
            return Ok(Eq3::True);
        }
        let d = d.el_reduce();
        if d.is_zero() {
            return Ok(Eq3::True);
        }
        if d.exl4_expand_once().el_reduce().is_zero() {
            return Ok(Eq3::True);
        }
        // The unitization is a direct sum: a leftover unit coefficient can
        // never cancel against the algebra part.
        if let Some(c) = d.terms.get(&ELMonomial::unit()) {
            if !self.ring.is_zero(c) {
                return Ok(Eq3::False);
            }
        }
        let mut algebra_part = d.clone();
        algebra_part.terms.remove(&ELMonomial::unit());
        let img = algebra_part.to_ultragraph()?;
        let zero = UElem::zero(self.g.clone(), self.ring.clone());
        match img.equal(&zero)? {
            Eq3::False => Ok(Eq3::False),
            Eq3::True => {
                let complete = self.g.universe != Universe::Nat
                    && !self.g.has_singular_vertices();
                Ok(if complete { Eq3::True } else { Eq3::Unknown })
            }
            Eq3::Unknown => Ok(Eq3::Unknown),
        }
    }

    pub fn monomials(&self) -> impl Iterator<Item = (&ELMonomial, &Coeff)> + '_ {
        self.terms.iter()
    }
}

impl fmt::Display for ELElem {
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
            let mut parts: Vec<String> = Vec::new();
            if !m.alpha.is_empty() {
                let inner = m
                    .alpha
                    .iter()
                    .map(|&e| self.g.edge_name(e).to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                parts.push(format!("s({inner})"));
            }
            match &m.middle {
                ELMiddle::Empty => {}
                ELMiddle::Unit => parts.push("one".into()),
                ELMiddle::Vertex(v) => parts.push(format!("p({})", self.g.vertex_name(*v))),
                ELMiddle::Ranges(s) => {
                    let inner = s
                        .iter()
                        .map(|&e| self.g.edge_name(e).to_string())
                        .collect::<Vec<_>>()
                        .join(" ");
                    parts.push(format!("z({inner})"));
                }
            }
            if !m.beta.is_empty() {
                let inner = m
                    .beta
                    .iter()
                    .map(|&e| self.g.edge_name(e).to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                parts.push(format!("star(s({inner}))"));
            }
            write!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}
