//! Property test: parse and print are mutually inverse on documents.

use proptest::prelude::*;
use ulpa_cli::dsl::{self, Document, Item};
use ulpa_core::graph::UniverseMode;
use ulpa_core::{Graph, Ultragraph, VertexSet};

#[derive(Debug, Clone)]
enum TargetDesc {
    Single(usize),
    Set(Vec<usize>),
    Cofinite(Vec<usize>),
}

#[derive(Debug, Clone)]
struct UgDesc {
    nat: bool,
    vertices: usize,
    edges: Vec<(usize, TargetDesc)>,
    infinite: Vec<usize>,
    frontier: Vec<usize>,
    sigma: Vec<(usize, Vec<bool>)>,
}

fn arb_target(nv: usize) -> impl Strategy<Value = TargetDesc> {
    prop_oneof![
        (0..nv).prop_map(TargetDesc::Single),
        proptest::collection::vec(0..nv, 1..=nv).prop_map(TargetDesc::Set),
        proptest::collection::vec(0..nv, 0..=nv).prop_map(TargetDesc::Cofinite),
    ]
}

fn arb_ug() -> impl Strategy<Value = UgDesc> {
    (1usize..=5, any::<bool>()).prop_flat_map(|(nv, nat)| {
        let edges = proptest::collection::vec((0..nv, arb_target(nv)), 0..=6);
        let marks = proptest::collection::vec(0..nv, 0..=2);
        let sigma = proptest::collection::vec(
            (0..nv, proptest::collection::vec(any::<bool>(), 1..=3)),
            0..=2,
        );
        (edges, marks.clone(), marks, sigma).prop_map(move |(edges, infinite, frontier, sigma)| {
            UgDesc {
                nat,
                vertices: nv,
                edges,
                infinite,
                frontier,
                sigma,
            }
        })
    })
}

fn build_ug(name: &str, d: &UgDesc) -> Ultragraph {
    let mode = if d.nat {
        UniverseMode::Nat
    } else {
        UniverseMode::Finite
    };
    let mut g = Ultragraph::new(name, mode);
    let vs: Vec<_> = (0..d.vertices)
        .map(|k| g.add_vertex(format!("v{k}")))
        .collect();
    for (k, (src, target)) in d.edges.iter().enumerate() {
        let range = match target {
            TargetDesc::Single(t) => VertexSet::singleton(vs[*t]),
            TargetDesc::Set(ts) => VertexSet::from_iter(ts.iter().map(|&t| vs[t])),
            TargetDesc::Cofinite(ts) => {
                if d.nat {
                    VertexSet::cofinite(ts.iter().map(|&t| vs[t]))
                } else {
                    VertexSet::from_iter(ts.iter().map(|&t| vs[t]))
                }
            }
        };
        if range.is_empty() {
            continue; // the DSL rejects empty ranges
        }
        g.add_edge(format!("e{}", k + 1), vs[*src], range);
    }
    for &v in &d.infinite {
        g.declare_infinite(vs[v]);
    }
    for &v in &d.frontier {
        g.mark_frontier(vs[v]);
    }
    for (v, bits) in &d.sigma {
        if bits.iter().any(|&b| b) {
            g.sigma_table.insert(vs[*v], bits.clone());
        }
    }
    g
}

fn build_graph(name: &str, nv: usize, edges: &[(usize, usize)]) -> Graph {
    let mut g = Graph::new(name);
    let vs: Vec<_> = (0..nv).map(|k| g.add_vertex(format!("v{k}"))).collect();
    for (k, &(s, t)) in edges.iter().enumerate() {
        g.add_edge(format!("e{}", k + 1), vs[s], vs[t]);
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn parser_never_panics(text in "\\PC*") {
        let _ = dsl::parse(&text);
    }

    #[test]
    fn parser_never_panics_on_structured_noise(
        words in proptest::collection::vec(
            prop_oneof![
                Just("graph".to_string()),
                Just("ultragraph".to_string()),
                Just("vertices".to_string()),
                Just("edge".to_string()),
                Just("{".to_string()),
                Just("}".to_string()),
                Just(";".to_string()),
                Just("->".to_string()),
                Just("cofinite".to_string()),
                "[a-z][a-z0-9]{0,3}",
            ],
            0..24,
        )
    ) {
        let _ = dsl::parse(&words.join(" "));
    }

    #[test]
    fn ultragraph_documents_roundtrip(d in arb_ug()) {
        let doc = Document {
            items: vec![Item::Ultragraph(std::sync::Arc::new(build_ug("g", &d)))],
        };
        let printed = dsl::print_document(&doc);
        let reparsed = dsl::parse(&printed).expect("printed documents parse");
        prop_assert_eq!(doc, reparsed);
    }

    #[test]
    fn graph_documents_roundtrip(
        nv in 1usize..=5,
        edges in proptest::collection::vec((0usize..5, 0usize..5), 0..=6),
    ) {
        let edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(s, t)| (s % nv, t % nv))
            .collect();
        let doc = Document {
            items: vec![Item::Graph(std::sync::Arc::new(build_graph("g", nv, &edges)))],
        };
        let printed = dsl::print_document(&doc);
        let reparsed = dsl::parse(&printed).expect("printed documents parse");
        prop_assert_eq!(doc, reparsed);
    }

    #[test]
    fn mixed_documents_roundtrip(
        d in arb_ug(),
        nv in 1usize..=3,
        binding in "[a-z][a-z0-9_]{0,6}",
    ) {
        let doc = Document {
            items: vec![
                Item::Graph(std::sync::Arc::new(build_graph("a", nv, &[]))),
                Item::Ultragraph(std::sync::Arc::new(build_ug("b", &d))),
                Item::Element {
                    name: binding,
                    structure: "a".into(),
                    text: "q(v0) + 2 * q(v0)".into(),
                },
            ],
        };
        let printed = dsl::print_document(&doc);
        let reparsed = dsl::parse(&printed).expect("printed documents parse");
        prop_assert_eq!(doc, reparsed);
    }
}
