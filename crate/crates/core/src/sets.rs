//! Exact arithmetic in the Boolean-style algebra of vertex sets generated by
//! singletons and edge ranges, over finite or finite/cofinite universes.

use crate::error::{Error, Result};
use crate::graph::Ultragraph;
use std::collections::BTreeSet;

/// Index of a vertex within its structure's universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

/// Index of an edge in the declaration order; the enumeration order is part
/// of a structure's identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

/// The ambient vertex universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Universe {
    /// Exactly `0..n` vertices.
    Finite(u32),
    /// Countably many vertices addressed by natural index.
    Nat,
}

impl Universe {
    pub fn is_finite(&self) -> bool {
        matches!(self, Universe::Finite(_))
    }
}

/// Cardinality classification of a `VertexSet`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SizeClass {
    Finite(usize),
    Infinite,
}

impl SizeClass {
    pub fn is_infinite(&self) -> bool {
        matches!(self, SizeClass::Infinite)
    }
}

/// A finite or cofinite subset of the universe, kept canonical: sorted and
/// deduplicated by construction, and cofinite collapsed to finite whenever
/// the universe itself is finite.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexSet {
    Finite(BTreeSet<VertexId>),
    Cofinite(BTreeSet<VertexId>),
}

impl VertexSet {
    pub fn empty() -> Self {
        VertexSet::Finite(BTreeSet::new())
    }

    pub fn singleton(v: VertexId) -> Self {
        VertexSet::Finite([v].into_iter().collect())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        VertexSet::Finite(iter.into_iter().collect())
    }

    pub fn cofinite<I: IntoIterator<Item = VertexId>>(excluded: I) -> Self {
        VertexSet::Cofinite(excluded.into_iter().collect())
    }

    pub fn full(u: &Universe) -> Self {
        VertexSet::cofinite([]).canonical(u)
    }

    /// Canonical form relative to a universe: in a finite universe every
    /// cofinite description is rewritten as an explicit finite set, and
    /// members outside the universe are dropped.
    pub fn canonical(self, u: &Universe) -> Self {
        match (u, self) {
            (Universe::Finite(n), VertexSet::Finite(s)) => {
                VertexSet::Finite(s.into_iter().filter(|v| v.0 < *n).collect())
            }
            (Universe::Finite(n), VertexSet::Cofinite(ex)) => VertexSet::Finite(
                (0..*n)
                    .map(VertexId)
                    .filter(|v| !ex.contains(v))
                    .collect(),
            ),
            (Universe::Nat, s) => s,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, VertexSet::Finite(s) if s.is_empty())
    }

    pub fn contains(&self, v: VertexId) -> bool {
        match self {
            VertexSet::Finite(s) => s.contains(&v),
            VertexSet::Cofinite(ex) => !ex.contains(&v),
        }
    }

    pub fn size_class(&self) -> SizeClass {
        match self {
            VertexSet::Finite(s) => SizeClass::Finite(s.len()),
            VertexSet::Cofinite(_) => SizeClass::Infinite,
        }
    }

    pub fn union(&self, other: &VertexSet, u: &Universe) -> VertexSet {
        let out = match (self, other) {
            (VertexSet::Finite(a), VertexSet::Finite(b)) => {
                VertexSet::Finite(a.union(b).cloned().collect())
            }
            (VertexSet::Finite(a), VertexSet::Cofinite(b)) => {
                VertexSet::Cofinite(b.difference(a).cloned().collect())
            }
            (VertexSet::Cofinite(a), VertexSet::Finite(b)) => {
                VertexSet::Cofinite(a.difference(b).cloned().collect())
            }
            (VertexSet::Cofinite(a), VertexSet::Cofinite(b)) => {
                VertexSet::Cofinite(a.intersection(b).cloned().collect())
            }
        };
        out.canonical(u)
    }

    pub fn intersect(&self, other: &VertexSet, u: &Universe) -> VertexSet {
        let out = match (self, other) {
            (VertexSet::Finite(a), VertexSet::Finite(b)) => {
                VertexSet::Finite(a.intersection(b).cloned().collect())
            }
            (VertexSet::Finite(a), VertexSet::Cofinite(b)) => {
                VertexSet::Finite(a.difference(b).cloned().collect())
            }
            (VertexSet::Cofinite(a), VertexSet::Finite(b)) => {
                VertexSet::Finite(b.difference(a).cloned().collect())
            }
            (VertexSet::Cofinite(a), VertexSet::Cofinite(b)) => {
                VertexSet::Cofinite(a.union(b).cloned().collect())
            }
        };
        out.canonical(u)
    }

    pub fn difference(&self, other: &VertexSet, u: &Universe) -> VertexSet {
        let out = match (self, other) {
            (VertexSet::Finite(a), VertexSet::Finite(b)) => {
                VertexSet::Finite(a.difference(b).cloned().collect())
            }
            (VertexSet::Finite(a), VertexSet::Cofinite(b)) => {
                VertexSet::Finite(a.intersection(b).cloned().collect())
            }
            (VertexSet::Cofinite(a), VertexSet::Finite(b)) => {
                VertexSet::Cofinite(a.union(b).cloned().collect())
            }
            (VertexSet::Cofinite(a), VertexSet::Cofinite(b)) => {
                VertexSet::Finite(b.difference(a).cloned().collect())
            }
        };
        out.canonical(u)
    }

    pub fn is_subset(&self, other: &VertexSet, u: &Universe) -> bool {
        self.difference(other, u).is_empty()
    }

    /// Iterates the members of a finite set; panics on a cofinite one.
    pub fn iter_finite(&self) -> impl Iterator<Item = VertexId> + '_ {
        match self {
            VertexSet::Finite(s) => s.iter().copied(),
            VertexSet::Cofinite(_) => panic!("iter_finite on a cofinite set"),
        }
    }

    /// Some member of the set, if any. For cofinite sets this is the least
    /// universe index not excluded.
    pub fn pick(&self) -> Option<VertexId> {
        match self {
            VertexSet::Finite(s) => s.iter().next().copied(),
            VertexSet::Cofinite(ex) => {
                let mut k = 0u32;
                while ex.contains(&VertexId(k)) {
                    k += 1;
                }
                Some(VertexId(k))
            }
        }
    }
}

/// How membership in the set algebra G0 is decided.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Closure {
    /// Finite universe: the full closure, listed explicitly.
    Explicit(Vec<VertexSet>),
    /// Nat universe: every finite set belongs; cofinite sets belong exactly
    /// when some generator is cofinite.
    FiniteOrCofinite { cofinite_allowed: bool },
}

/// The set algebra generated by the singletons and the edge ranges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetAlgebra {
    pub universe: Universe,
    pub generators: Vec<VertexSet>,
    pub closure: Closure,
}

/// Hard cap on the explicit closure size (and on downstream lattice scans).
pub const CLOSURE_CAP: usize = 1 << 12;

impl SetAlgebra {
    pub fn contains(&self, s: &VertexSet) -> bool {
        match &self.closure {
            Closure::Explicit(all) => all.contains(s),
            Closure::FiniteOrCofinite { cofinite_allowed } => match s {
                VertexSet::Finite(_) => true,
                VertexSet::Cofinite(_) => *cofinite_allowed,
            },
        }
    }

    /// Whether the whole vertex universe is a member (unitality test).
    pub fn contains_full(&self) -> bool {
        self.contains(&VertexSet::full(&self.universe))
    }

    pub fn members(&self) -> Result<&[VertexSet]> {
        match &self.closure {
            Closure::Explicit(all) => Ok(all),
            Closure::FiniteOrCofinite { .. } => Err(Error::TruncationExceeded(
                "G0 of a Nat-mode structure cannot be listed".into(),
            )),
        }
    }
}

/// Computes the set algebra G0 of an ultragraph: the least collection
/// containing every singleton and every edge range, closed under finite
/// unions, intersections, and relative complements. The empty set is a
/// member (it arises as A \ A).
pub fn generate_g0(g: &Ultragraph) -> Result<SetAlgebra> {
    let u = g.universe;
    let mut generators: Vec<VertexSet> = Vec::new();
    match u {
        Universe::Finite(n) => {
            for k in 0..n {
                generators.push(VertexSet::singleton(VertexId(k)));
            }
        }
        Universe::Nat => {
            for v in g.named_vertices() {
                generators.push(VertexSet::singleton(v));
            }
        }
    }
    for e in g.edges() {
        generators.push(e.range.clone());
    }

    let closure = match u {
        Universe::Finite(_) => Closure::Explicit(close_under_ops(&u, &generators)?),
        Universe::Nat => {
            let cofinite_allowed = g
                .edges()
                .any(|e| matches!(e.range, VertexSet::Cofinite(_)));
            Closure::FiniteOrCofinite { cofinite_allowed }
        }
    };
    Ok(SetAlgebra {
        universe: u,
        generators,
        closure,
    })
}

/// Fixpoint closure of `seeds` under union, intersection, and difference.
fn close_under_ops(u: &Universe, seeds: &[VertexSet]) -> Result<Vec<VertexSet>> {
    let mut all: BTreeSet<VertexSet> = BTreeSet::new();
    all.insert(VertexSet::empty());
    for s in seeds {
        all.insert(s.clone().canonical(u));
    }
    loop {
        let snapshot: Vec<VertexSet> = all.iter().cloned().collect();
        let before = all.len();
        for a in &snapshot {
            for b in &snapshot {
                all.insert(a.union(b, u));
                all.insert(a.intersect(b, u));
                all.insert(a.difference(b, u));
                if all.len() > CLOSURE_CAP {
                    return Err(Error::TruncationExceeded(format!(
                        "G0 closure exceeds cap of {CLOSURE_CAP}"
                    )));
                }
            }
        }
        if all.len() == before {
            break;
        }
    }
    Ok(all.into_iter().collect())
}

/// Disjointification of an enumeration: `A_k = B_k \ (B_1 u ... u
/// B_{k-1})`. Empty results are retained positionally, and every prefix
/// union is preserved.
pub fn disjointify(sets: &[VertexSet], u: &Universe) -> Vec<VertexSet> {
    let mut out = Vec::with_capacity(sets.len());
    let mut acc = VertexSet::empty();
    for b in sets {
        out.push(b.difference(&acc, u));
        acc = acc.union(b, u);
    }
    out
}

/// `r(lambda, mu)`: the intersection of the ranges over `lambda` minus the
/// union of the ranges over `mu`. An empty `lambda` yields the full
/// universe before subtraction.
pub fn r_lambda_mu(g: &Ultragraph, lambda: &[EdgeId], mu: &[EdgeId]) -> VertexSet {
    let u = g.universe;
    let mut acc = VertexSet::full(&u);
    for e in lambda {
        acc = acc.intersect(g.range(*e), &u);
    }
    for f in mu {
        acc = acc.difference(g.range(*f), &u);
    }
    acc
}
