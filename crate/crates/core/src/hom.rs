//! Generator maps: assignments of source-algebra generators to elements of
//! a target engine, with multiplicative-linear application. Every named
//! family of the constructions is carried this way.

use crate::construct::{
    alpha_path, build_gf_detailed, Desingularization, DesingEdgeImage, EGData, EgVertex,
    GfVertexKind,
};
use crate::element::{ELElem, ELMiddle, Eq3, GElem, UElem};
use crate::error::{Error, Result};
use crate::graph::{Graph, Ultragraph};
use crate::ring::Ring;
use crate::sets::{EdgeId, SizeClass, VertexId, VertexSet};
use std::collections::BTreeMap;
use std::sync::Arc;

/// An element of whichever engine a map lands in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyElem {
    G(GElem),
    U(UElem),
    El(ELElem),
}

impl AnyElem {
    pub fn is_zero(&self) -> bool {
        match self {
            AnyElem::G(x) => x.is_zero(),
            AnyElem::U(x) => x.is_zero(),
            AnyElem::El(x) => x.is_zero(),
        }
    }

    pub fn add(&self, other: &AnyElem) -> Result<AnyElem> {
        match (self, other) {
            (AnyElem::G(a), AnyElem::G(b)) => Ok(AnyElem::G(a.add(b)?)),
            (AnyElem::U(a), AnyElem::U(b)) => Ok(AnyElem::U(a.add(b)?)),
            (AnyElem::El(a), AnyElem::El(b)) => Ok(AnyElem::El(a.add(b)?)),
            _ => Err(Error::EngineMismatch("mixed engines in add".into())),
        }
    }

    pub fn sub(&self, other: &AnyElem) -> Result<AnyElem> {
        match (self, other) {
            (AnyElem::G(a), AnyElem::G(b)) => Ok(AnyElem::G(a.sub(b)?)),
            (AnyElem::U(a), AnyElem::U(b)) => Ok(AnyElem::U(a.sub(b)?)),
            (AnyElem::El(a), AnyElem::El(b)) => Ok(AnyElem::El(a.sub(b)?)),
            _ => Err(Error::EngineMismatch("mixed engines in sub".into())),
        }
    }

    pub fn mul(&self, other: &AnyElem) -> Result<AnyElem> {
        match (self, other) {
            (AnyElem::G(a), AnyElem::G(b)) => Ok(AnyElem::G(a.mul(b)?)),
            (AnyElem::U(a), AnyElem::U(b)) => Ok(AnyElem::U(a.mul(b)?)),
            (AnyElem::El(a), AnyElem::El(b)) => Ok(AnyElem::El(a.mul(b)?)),
            _ => Err(Error::EngineMismatch("mixed engines in mul".into())),
        }
    }

    pub fn star(&self) -> AnyElem {
        match self {
            AnyElem::G(x) => AnyElem::G(x.star()),
            AnyElem::U(x) => AnyElem::U(x.star()),
            AnyElem::El(x) => AnyElem::El(x.star()),
        }
    }

    pub fn scale(&self, n: i64) -> AnyElem {
        match self {
            AnyElem::G(x) => AnyElem::G(x.scale(n)),
            AnyElem::U(x) => AnyElem::U(x.scale(n)),
            AnyElem::El(x) => AnyElem::El(x.scale(n)),
        }
    }

    pub fn scale_coeff(&self, c: &crate::ring::Coeff) -> AnyElem {
        match self {
            AnyElem::G(x) => AnyElem::G(x.scale_coeff(c)),
            AnyElem::U(x) => AnyElem::U(x.scale_coeff(c)),
            AnyElem::El(x) => AnyElem::El(x.scale_coeff(c)),
        }
    }

    pub fn equal(&self, other: &AnyElem) -> Result<Eq3> {
        match (self, other) {
            (AnyElem::G(a), AnyElem::G(b)) => Ok(if a.equal(b)? { Eq3::True } else { Eq3::False }),
            (AnyElem::U(a), AnyElem::U(b)) => a.equal(b),
            (AnyElem::El(a), AnyElem::El(b)) => a.equal(b),
            _ => Err(Error::EngineMismatch("mixed engines in equal".into())),
        }
    }

    pub fn as_g(&self) -> Result<&GElem> {
        match self {
            AnyElem::G(x) => Ok(x),
            _ => Err(Error::EngineMismatch("expected a graph element".into())),
        }
    }

    pub fn as_u(&self) -> Result<&UElem> {
        match self {
            AnyElem::U(x) => Ok(x),
            _ => Err(Error::EngineMismatch("expected an ultragraph element".into())),
        }
    }

    pub fn as_el(&self) -> Result<&ELElem> {
        match self {
            AnyElem::El(x) => Ok(x),
            _ => Err(Error::EngineMismatch("expected an Exel-Laca element".into())),
        }
    }
}

/// Which engine a map consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceKind {
    Graph,
    Ultragraph,
    ExelLaca,
}

/// A named generator assignment; the carrier for every family of the
/// constructions.
#[derive(Debug, Clone)]
pub enum GenMap {
    /// A graph viewed as an ultragraph: P_A = sum of q_v over A, S_e = t_e.
    Glugl {
        ug: Arc<Ultragraph>,
        graph: Arc<Graph>,
        ring: Ring,
    },
    /// Finite-case identification of the source ultragraph with its
    /// constructed graph: p_v -> q_v, s_e -> sum of t_{(e,v)}.
    GegisoToGraph { eg: Arc<EGData>, ring: Ring },
    /// The inverse identification: q_v -> p_v, t_{(e,v)} -> s_e p_v.
    GegisoFromGraph {
        eg: Arc<EGData>,
        ring: Ring,
        pair_of: BTreeMap<EdgeId, (EdgeId, VertexId)>,
    },
    /// Canonical surjection from the Exel-Laca engine onto the path
    /// algebra engine over the same structure.
    Llgex2 { ug: Arc<Ultragraph>, ring: Ring },
    /// The Leavitt family over the finite graph approximant, living in the
    /// Exel-Laca engine of the source ultragraph.
    Lfg {
        gf: Arc<Graph>,
        kinds: Vec<GfVertexKind>,
        p: BTreeMap<VertexId, ELElem>,
        s: BTreeMap<EdgeId, ELElem>,
    },
    /// The Exel-Laca family inside the constructed graph's algebra:
    /// P_v = t_{a_v} t_{a_v*}, S_e = sum over X(e) of
    /// t_{a_{s(e)}} t_{(e,x)} t_{a_x*}.
    Lex3 {
        eg: Arc<EGData>,
        ring: Ring,
        p: BTreeMap<VertexId, GElem>,
        s: BTreeMap<EdgeId, GElem>,
        pub_missing: Vec<String>,
    },
    /// The desingularization family: P_A = q_A (patched), S_e = t_e or the
    /// tail path.
    Desing { d: Arc<Desingularization>, ring: Ring },
    /// A graph's own generators in its own engine.
    SelfGraph { graph: Arc<Graph>, ring: Ring },
    /// An ultragraph's own generators in its own engine.
    SelfUltragraph { ug: Arc<Ultragraph>, ring: Ring },
    /// An ultragraph's Exel-Laca generators in the Exel-Laca engine.
    SelfExelLaca { ug: Arc<Ultragraph>, ring: Ring },
    /// The identity assignment.
    Identity,
}

impl GenMap {
    pub fn name(&self) -> &'static str {
        match self {
            GenMap::Glugl { .. } => "glugl",
            GenMap::GegisoToGraph { .. } => "gegiso",
            GenMap::GegisoFromGraph { .. } => "gegiso_inv",
            GenMap::Llgex2 { .. } => "llgex2",
            GenMap::Lfg { .. } => "lfg",
            GenMap::Lex3 { .. } => "lex3",
            GenMap::Desing { .. } => "desing",
            GenMap::SelfGraph { .. } => "self_graph",
            GenMap::SelfUltragraph { .. } => "self_ultragraph",
            GenMap::SelfExelLaca { .. } => "self_exel_laca",
            GenMap::Identity => "identity",
        }
    }

    pub fn source_kind(&self) -> Option<SourceKind> {
        match self {
            GenMap::Glugl { .. }
            | GenMap::GegisoToGraph { .. }
            | GenMap::Desing { .. }
            | GenMap::SelfUltragraph { .. } => Some(SourceKind::Ultragraph),
            GenMap::GegisoFromGraph { .. } | GenMap::Lfg { .. } | GenMap::SelfGraph { .. } => {
                Some(SourceKind::Graph)
            }
            GenMap::Llgex2 { .. } | GenMap::Lex3 { .. } | GenMap::SelfExelLaca { .. } => {
                Some(SourceKind::ExelLaca)
            }
            GenMap::Identity => None,
        }
    }

    /// Image of the vertex idempotent (q_v, p_v, or the Exel-Laca p_v).
    pub fn image_vertex(&self, v: VertexId) -> Result<AnyElem> {
        match self {
            GenMap::Glugl { graph, ring, .. } => {
                Ok(AnyElem::G(GElem::vertex(graph.clone(), ring.clone(), v)))
            }
            GenMap::GegisoToGraph { eg, ring } => {
                let id = eg.vertex_of(&EgVertex::Vx(v))?;
                Ok(AnyElem::G(GElem::vertex(eg.graph.clone(), ring.clone(), id)))
            }
            GenMap::GegisoFromGraph { eg, ring, .. } => match eg.class_of(v) {
                EgVertex::Vx(orig) => Ok(AnyElem::U(UElem::p_vertex(
                    eg.source.clone(),
                    ring.clone(),
                    *orig,
                ))),
                EgVertex::Word(w) => Err(Error::MissingGeneratorAssignment(format!(
                    "word vertex {w} has no finite-case preimage"
                ))),
            },
            GenMap::Llgex2 { ug, ring } => {
                Ok(AnyElem::U(UElem::p_vertex(ug.clone(), ring.clone(), v)))
            }
            GenMap::Lfg { p, gf, .. } => p.get(&v).map(|x| AnyElem::El(x.clone())).ok_or_else(|| {
                Error::MissingGeneratorAssignment(format!(
                    "no image for vertex {}",
                    gf.vertex_name(v)
                ))
            }),
            GenMap::Lex3 { p, eg, .. } => p.get(&v).map(|x| AnyElem::G(x.clone())).ok_or_else(|| {
                Error::MissingGeneratorAssignment(format!(
                    "no alpha path for {}",
                    eg.source.vertex_name(v)
                ))
            }),
            GenMap::Desing { d, ring } => Ok(AnyElem::U(UElem::p_vertex(
                d.result.clone(),
                ring.clone(),
                v,
            ))),
            GenMap::SelfGraph { graph, ring } => {
                Ok(AnyElem::G(GElem::vertex(graph.clone(), ring.clone(), v)))
            }
            GenMap::SelfUltragraph { ug, ring } => {
                Ok(AnyElem::U(UElem::p_vertex(ug.clone(), ring.clone(), v)))
            }
            GenMap::SelfExelLaca { ug, ring } => {
                Ok(AnyElem::El(ELElem::p_vertex(ug.clone(), ring.clone(), v)))
            }
            GenMap::Identity => Err(Error::Unsupported("identity map has no tables".into())),
        }
    }

    /// Image of a set idempotent p_A; only ultragraph sources carry these.
    pub fn image_set(&self, set: &VertexSet) -> Result<AnyElem> {
        match self {
            GenMap::Desing { d, ring } => Ok(AnyElem::U(UElem::p(
                d.result.clone(),
                ring.clone(),
                d.patch_set(set),
            ))),
            GenMap::SelfUltragraph { ug, ring } => {
                Ok(AnyElem::U(UElem::p(ug.clone(), ring.clone(), set.clone())))
            }
            GenMap::Glugl { .. } | GenMap::GegisoToGraph { .. } => {
                // Finite decomposition: p_A = sum of p_v over A.
                match set.size_class() {
                    SizeClass::Finite(_) => {
                        let mut acc: Option<AnyElem> = None;
                        for v in set.iter_finite() {
                            let img = self.image_vertex(v)?;
                            acc = Some(match acc {
                                None => img,
                                Some(a) => a.add(&img)?,
                            });
                        }
                        acc.ok_or_else(|| {
                            Error::MissingGeneratorAssignment("p of the empty set is 0".into())
                        })
                    }
                    SizeClass::Infinite => Err(Error::TruncationExceeded(
                        "infinite set idempotent needs a finite structure".into(),
                    )),
                }
            }
            _ => Err(Error::EngineMismatch(
                "set idempotents live in ultragraph sources".into(),
            )),
        }
    }

    pub fn image_edge(&self, e: EdgeId) -> Result<AnyElem> {
        match self {
            GenMap::Glugl { graph, ring, .. } => {
                Ok(AnyElem::G(GElem::edge(graph.clone(), ring.clone(), e)))
            }
            GenMap::GegisoToGraph { eg, ring } => {
                let mut acc = GElem::zero(eg.graph.clone(), ring.clone());
                for x in &eg.x_table[e.0 as usize] {
                    let id = eg.pair_edge(e, x).ok_or_else(|| {
                        Error::NotReachable(format!("pair edge ({e:?}, {x:?}) missing"))
                    })?;
                    acc = acc.add(&GElem::edge(eg.graph.clone(), ring.clone(), id))?;
                }
                Ok(AnyElem::G(acc))
            }
            GenMap::GegisoFromGraph { eg, ring, pair_of } => {
                let (orig, v) = pair_of.get(&e).ok_or_else(|| {
                    Error::MissingGeneratorAssignment(format!("edge {e:?} is not a pair edge"))
                })?;
                let s = UElem::s_edge(eg.source.clone(), ring.clone(), *orig);
                let p = UElem::p_vertex(eg.source.clone(), ring.clone(), *v);
                Ok(AnyElem::U(s.mul(&p)?))
            }
            GenMap::Llgex2 { ug, ring } => {
                Ok(AnyElem::U(UElem::s_edge(ug.clone(), ring.clone(), e)))
            }
            GenMap::Lfg { s, gf, .. } => s.get(&e).map(|x| AnyElem::El(x.clone())).ok_or_else(|| {
                Error::MissingGeneratorAssignment(format!("no image for edge {}", gf.edge_name(e)))
            }),
            GenMap::Lex3 { s, eg, .. } => {
                s.get(&e).map(|x| AnyElem::G(x.clone())).ok_or_else(|| {
                    Error::MissingGeneratorAssignment(format!(
                        "family edge {} unreachable",
                        eg.source.edge_name(e)
                    ))
                })
            }
            GenMap::Desing { d, ring } => match d.edge_map.get(&e) {
                Some(DesingEdgeImage::Kept(id)) => Ok(AnyElem::U(UElem::s_edge(
                    d.result.clone(),
                    ring.clone(),
                    *id,
                ))),
                Some(DesingEdgeImage::TailPath(path)) => Ok(AnyElem::U(UElem::s_path(
                    d.result.clone(),
                    ring.clone(),
                    path.clone(),
                )?)),
                Some(DesingEdgeImage::Truncated) => Err(Error::NotReachable(format!(
                    "tail truncated before edge {}",
                    d.original.edge_name(e)
                ))),
                None => Err(Error::MissingGeneratorAssignment(format!(
                    "edge {} has no image",
                    d.original.edge_name(e)
                ))),
            },
            GenMap::SelfGraph { graph, ring } => {
                Ok(AnyElem::G(GElem::edge(graph.clone(), ring.clone(), e)))
            }
            GenMap::SelfUltragraph { ug, ring } => {
                Ok(AnyElem::U(UElem::s_edge(ug.clone(), ring.clone(), e)))
            }
            GenMap::SelfExelLaca { ug, ring } => {
                Ok(AnyElem::El(ELElem::s_edge(ug.clone(), ring.clone(), e)))
            }
            GenMap::Identity => Err(Error::Unsupported("identity map has no tables".into())),
        }
    }

    pub fn image_ghost(&self, e: EdgeId) -> Result<AnyElem> {
        Ok(self.image_edge(e)?.star())
    }

    /// Multiplicative-linear extension over a graph element.
    pub fn apply_g(&self, x: &GElem) -> Result<AnyElem> {
        if self == &GenMap::Identity {
            return Ok(AnyElem::G(x.clone()));
        }
        let mut out: Option<AnyElem> = None;
        for (m, c) in x.monomials() {
            let mut img: Option<AnyElem> = None;
            for &e in &m.alpha.edges {
                let f = self.image_edge(e)?;
                img = Some(match img {
                    None => f,
                    Some(a) => a.mul(&f)?,
                });
            }
            if m.alpha.edges.is_empty() && m.beta.edges.is_empty() {
                img = Some(self.image_vertex(m.alpha.base)?);
            }
            for &e in m.beta.edges.iter().rev() {
                let f = self.image_ghost(e)?;
                img = Some(match img {
                    None => f,
                    Some(a) => a.mul(&f)?,
                });
            }
            let img = img.expect("monomial has at least one factor").scale_coeff(c);
            out = Some(match out {
                None => img,
                Some(a) => a.add(&img)?,
            });
        }
        out.ok_or(Error::ZeroElement)
    }

    /// Multiplicative-linear extension over an ultragraph element.
    pub fn apply_u(&self, x: &UElem) -> Result<AnyElem> {
        if self == &GenMap::Identity {
            return Ok(AnyElem::U(x.clone()));
        }
        let mut out: Option<AnyElem> = None;
        for (m, c) in x.monomials() {
            let mut img = self.image_set(&m.set)?;
            for &e in m.alpha.iter().rev() {
                img = self.image_edge(e)?.mul(&img)?;
            }
            for &e in m.beta.iter().rev() {
                img = img.mul(&self.image_ghost(e)?)?;
            }
            let img = img.scale_coeff(c);
            out = Some(match out {
                None => img,
                Some(a) => a.add(&img)?,
            });
        }
        out.ok_or(Error::ZeroElement)
    }

    /// Multiplicative-linear extension over an Exel-Laca element. The
    /// formal unit has no image.
    pub fn apply_el(&self, x: &ELElem) -> Result<AnyElem> {
        if self == &GenMap::Identity {
            return Ok(AnyElem::El(x.clone()));
        }
        let mut out: Option<AnyElem> = None;
        for (m, c) in x.monomials() {
            let mut img: Option<AnyElem> = None;
            let push = |img: &mut Option<AnyElem>, f: AnyElem| -> Result<()> {
                *img = Some(match img.take() {
                    None => f,
                    Some(a) => a.mul(&f)?,
                });
                Ok(())
            };
            for &e in &m.alpha {
                let f = self.image_edge(e)?;
                push(&mut img, f)?;
            }
            match &m.middle {
                ELMiddle::Empty => {}
                ELMiddle::Vertex(v) => push(&mut img, self.image_vertex(*v)?)?,
                ELMiddle::Ranges(set) => {
                    for &e in set {
                        let z = self.image_ghost(e)?.mul(&self.image_edge(e)?)?;
                        push(&mut img, z)?;
                    }
                }
                ELMiddle::Unit => {
                    return Err(Error::MissingGeneratorAssignment(
                        "the unitization's unit has no image".into(),
                    ))
                }
            }
            for &e in m.beta.iter().rev() {
                push(&mut img, self.image_ghost(e)?)?;
            }
            let img = img
                .expect("canonical monomials have a factor")
                .scale_coeff(c);
            out = Some(match out {
                None => img,
                Some(a) => a.add(&img)?,
            });
        }
        out.ok_or(Error::ZeroElement)
    }
}

impl PartialEq for GenMap {
    fn eq(&self, other: &Self) -> bool {
        matches!((self, other), (GenMap::Identity, GenMap::Identity))
    }
}

/// The graph-as-ultragraph family.
pub fn glugl(graph: &Arc<Graph>, ring: &Ring) -> GenMap {
    GenMap::Glugl {
        ug: Arc::new(graph.to_ultragraph()),
        graph: graph.clone(),
        ring: ring.clone(),
    }
}

/// The finite-case identification, source ultragraph to constructed graph.
pub fn gegiso(eg: &Arc<EGData>, ring: &Ring) -> GenMap {
    GenMap::GegisoToGraph {
        eg: eg.clone(),
        ring: ring.clone(),
    }
}

/// The inverse finite-case identification.
pub fn gegiso_inv(eg: &Arc<EGData>, ring: &Ring) -> GenMap {
    let pair_of = eg
        .pair_edges()
        .filter_map(|((e, x), id)| match x {
            EgVertex::Vx(v) => Some((*id, (*e, *v))),
            EgVertex::Word(_) => None,
        })
        .collect();
    GenMap::GegisoFromGraph {
        eg: eg.clone(),
        ring: ring.clone(),
        pair_of,
    }
}

/// The canonical surjection from the Exel-Laca engine.
pub fn llgex2(ug: &Arc<Ultragraph>, ring: &Ring) -> GenMap {
    GenMap::Llgex2 {
        ug: ug.clone(),
        ring: ring.clone(),
    }
}

/// The Leavitt family over the finite graph approximant, as elements of
/// the Exel-Laca engine:
/// P_e = s_e s_{e*},
/// P_X = (prod over X of s_{e*}s_e)(prod over F \ X of (1 - s_{e*}s_e))
///       (1 - sum over F of s_f s_{f*}),
/// S_{(e,x)} = s_e P_x.
pub fn lfg(g: &Arc<Ultragraph>, f_set: &[EdgeId], ring: &Ring) -> Result<GenMap> {
    let (gf, kinds) = build_gf_detailed(g, f_set);
    let gf = Arc::new(gf);
    let one = ELElem::one(g.clone(), ring.clone());
    let mut p: BTreeMap<VertexId, ELElem> = BTreeMap::new();
    for (k, kind) in kinds.iter().enumerate() {
        let v = VertexId(k as u32);
        let img = match kind {
            GfVertexKind::Edge(e) => {
                let s = ELElem::s_edge(g.clone(), ring.clone(), *e);
                s.mul(&s.star())?
            }
            GfVertexKind::Subset(x) => {
                let mut acc = one.clone();
                for &e in x {
                    acc = acc.mul(&ELElem::range_idempotent(g.clone(), ring.clone(), e))?;
                }
                for &e in f_set {
                    if x.contains(&e) {
                        continue;
                    }
                    let z = ELElem::range_idempotent(g.clone(), ring.clone(), e);
                    acc = acc.mul(&one.sub(&z)?)?;
                }
                let mut inner = one.clone();
                for &f in f_set {
                    let sf = ELElem::s_edge(g.clone(), ring.clone(), f);
                    inner = inner.sub(&sf.mul(&sf.star())?)?;
                }
                acc.mul(&inner)?
            }
        };
        p.insert(v, img);
    }
    let mut s: BTreeMap<EdgeId, ELElem> = BTreeMap::new();
    for (id, edge) in gf.edges() {
        // The source vertex of a pair edge is an edge-kind vertex of the
        // approximant; S_{(e,x)} = s_e P_x.
        let GfVertexKind::Edge(e) = &kinds[edge.source.0 as usize] else {
            return Err(Error::Unsupported("subset vertices are sinks".into()));
        };
        let img = ELElem::s_edge(g.clone(), ring.clone(), *e).mul(&p[&edge.target])?;
        s.insert(id, img);
    }
    Ok(GenMap::Lfg { gf, kinds, p, s })
}

/// The Exel-Laca family inside the constructed graph's algebra. Vertices
/// or edges whose alpha paths were cut by the truncation are recorded as
/// missing rather than fabricated.
pub fn lex3(eg: &Arc<EGData>, ring: &Ring) -> GenMap {
    let mut p: BTreeMap<VertexId, GElem> = BTreeMap::new();
    let mut s: BTreeMap<EdgeId, GElem> = BTreeMap::new();
    let mut missing: Vec<String> = Vec::new();
    let graph = eg.graph.clone();
    for v in eg.graph.vertices() {
        let EgVertex::Vx(orig) = eg.class_of(v).clone() else {
            continue;
        };
        match alpha_path(eg, &EgVertex::Vx(orig)) {
            Ok(path) => {
                let t = GElem::path(graph.clone(), ring.clone(), path);
                p.insert(orig, t.mul(&t.star()).expect("same graph"));
            }
            Err(e) => missing.push(format!("P_{}: {e}", eg.source.vertex_name(orig))),
        }
    }
    'edges: for e in eg.source.edge_ids() {
        let src = eg.source.source(e);
        let Ok(head) = alpha_path(eg, &EgVertex::Vx(src)) else {
            missing.push(format!("S_{}: source path cut", eg.source.edge_name(e)));
            continue;
        };
        let t_head = GElem::path(graph.clone(), ring.clone(), head);
        let mut acc = GElem::zero(graph.clone(), ring.clone());
        for x in &eg.x_table[e.0 as usize] {
            let Some(pair) = eg.pair_edge(e, x) else {
                missing.push(format!("S_{}: pair edge cut", eg.source.edge_name(e)));
                continue 'edges;
            };
            let Ok(tail) = alpha_path(eg, x) else {
                missing.push(format!("S_{}: member path cut", eg.source.edge_name(e)));
                continue 'edges;
            };
            let t_pair = GElem::edge(graph.clone(), ring.clone(), pair);
            let t_tail = GElem::path(graph.clone(), ring.clone(), tail);
            let term = t_head
                .mul(&t_pair)
                .and_then(|x| x.mul(&t_tail.star()))
                .expect("same graph");
            acc = acc.add(&term).expect("same graph");
        }
        s.insert(e, acc);
    }
    GenMap::Lex3 {
        eg: eg.clone(),
        ring: ring.clone(),
        p,
        s,
        pub_missing: missing,
    }
}

/// The desingularization family.
pub fn desing(d: &Arc<Desingularization>, ring: &Ring) -> GenMap {
    GenMap::Desing {
        d: d.clone(),
        ring: ring.clone(),
    }
}

/// The injective homomorphism determined by the approximant family; it is
/// the same assignment as `lfg`, exposed under the name the transfer
/// results use.
pub fn pi_f(g: &Arc<Ultragraph>, f_set: &[EdgeId], ring: &Ring) -> Result<GenMap> {
    lfg(g, f_set, ring)
}

/// A graph's own Leavitt family in its own engine.
pub fn self_graph(graph: &Arc<Graph>, ring: &Ring) -> GenMap {
    GenMap::SelfGraph {
        graph: graph.clone(),
        ring: ring.clone(),
    }
}

/// An ultragraph's own Leavitt family in its own engine.
pub fn self_ultragraph(ug: &Arc<Ultragraph>, ring: &Ring) -> GenMap {
    GenMap::SelfUltragraph {
        ug: ug.clone(),
        ring: ring.clone(),
    }
}

/// An ultragraph's own Exel-Laca family in the Exel-Laca engine.
pub fn self_exel_laca(ug: &Arc<Ultragraph>, ring: &Ring) -> GenMap {
    GenMap::SelfExelLaca {
        ug: ug.clone(),
        ring: ring.clone(),
    }
}
