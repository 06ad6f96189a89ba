//! Command implementations and the exit-code discipline:
//! 0 success, 1 suite failure, 2 parse error, 3 truncation, 4 engine error.

use crate::dsl::{self, Document, Item};
use crate::dot;
use crate::expr::{self, Target};
use std::fmt::Write as _;
use std::sync::Arc;
use ulpa_core::analysis::{
    check_family, condition_l_graph, condition_l_ultragraph, hereditary_saturated_graph,
    hereditary_saturated_ultragraph, simplicity_verdict_graph, simplicity_verdict_ultragraph,
    AxiomSet, InstanceResult, InstanceStatus,
};
use ulpa_core::construct::{build_eg, build_gf, desingularize, EgOptions, SigmaStrategy};
use ulpa_core::element::Eq3;
use ulpa_core::hom;
use ulpa_core::suites::{run_suite, SuiteName, SuiteOptions, SuiteReport};
use ulpa_core::{Error as CoreError, Ring, Ultragraph, VertexSet};

#[derive(Debug)]
pub enum CmdError {
    Parse(String),
    Truncation(String),
    Engine(String),
    SuiteFailure,
    Io(String),
}

impl CmdError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CmdError::SuiteFailure => 1,
            CmdError::Parse(_) => 2,
            CmdError::Truncation(_) => 3,
            CmdError::Engine(_) => 4,
            CmdError::Io(_) => 4,
        }
    }
}

impl std::fmt::Display for CmdError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CmdError::Parse(m) => write!(f, "{m}"),
            CmdError::Truncation(m) => write!(f, "truncation: {m}"),
            CmdError::Engine(m) => write!(f, "engine: {m}"),
            CmdError::SuiteFailure => write!(f, "suite failure"),
            CmdError::Io(m) => write!(f, "io: {m}"),
        }
    }
}

impl From<CoreError> for CmdError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::TruncationExceeded(m) | CoreError::NotReachable(m) => {
                CmdError::Truncation(m)
            }
            other => CmdError::Engine(other.to_string()),
        }
    }
}

impl From<dsl::ParseError> for CmdError {
    fn from(e: dsl::ParseError) -> Self {
        CmdError::Parse(e.to_string())
    }
}

pub fn parse_ring(text: &str) -> Result<Ring, CmdError> {
    if text == "Z" {
        return Ok(Ring::Integers);
    }
    if text == "Q" {
        return Ok(Ring::Rationals);
    }
    if let Some(n) = text.strip_prefix("Zmod:") {
        let n: u64 = n
            .parse()
            .map_err(|_| CmdError::Parse(format!("bad modulus in {text}")))?;
        if n < 2 {
            return Err(CmdError::Parse("modulus must be at least 2".into()));
        }
        return Ok(Ring::IntegersMod(n));
    }
    if let Some(p) = text.strip_prefix("GF:") {
        let p: u64 = p
            .parse()
            .map_err(|_| CmdError::Parse(format!("bad prime in {text}")))?;
        let is_prime = p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
        if !is_prime {
            return Err(CmdError::Parse(format!("{p} is not prime")));
        }
        return Ok(Ring::PrimeField(p));
    }
    Err(CmdError::Parse(format!(
        "unknown ring {text}; expected Z, Zmod:N, Q, or GF:P"
    )))
}

pub fn load(path: &str) -> Result<Document, CmdError> {
    let text = std::fs::read_to_string(path).map_err(|e| CmdError::Io(format!("{path}: {e}")))?;
    Ok(dsl::parse(&text)?)
}

/// The structure a command operates on: the named one, or the only one.
fn select<'a>(doc: &'a Document, name: Option<&str>) -> Result<&'a Item, CmdError> {
    let structures: Vec<&Item> = doc
        .items
        .iter()
        .filter(|i| !matches!(i, Item::Element { .. }))
        .collect();
    match name {
        Some(n) => structures
            .into_iter()
            .find(|i| match i {
                Item::Graph(g) => g.name == n,
                Item::Ultragraph(g) => g.name == n,
                Item::Element { .. } => false,
            })
            .ok_or_else(|| CmdError::Parse(format!("no structure named {n}"))),
        None => structures
            .into_iter()
            .next()
            .ok_or_else(|| CmdError::Parse("document has no structures".into())),
    }
}

fn as_ultragraph(item: &Item) -> Arc<Ultragraph> {
    match item {
        Item::Graph(g) => Arc::new(g.to_ultragraph()),
        Item::Ultragraph(g) => g.clone(),
        Item::Element { .. } => unreachable!("select() filters bindings"),
    }
}

fn yesno(v: Eq3) -> &'static str {
    match v {
        Eq3::True => "yes",
        Eq3::False => "no",
        Eq3::Unknown => "unknown",
    }
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

/// Structural analysis of every structure in the document.
pub fn analyze(doc: &Document) -> Result<String, CmdError> {
    let mut out = String::new();
    for item in &doc.items {
        match item {
            Item::Graph(g) => {
                let _ = writeln!(out, "graph {}", g.name);
                let violations = g.validate();
                if violations.is_empty() {
                    let _ = writeln!(out, "  violations: none");
                } else {
                    for v in violations {
                        let _ = writeln!(out, "  violation: {} ({})", v.message, v.location);
                    }
                }
                let ug = g.to_ultragraph();
                let _ = writeln!(
                    out,
                    "  singular vertices: {}",
                    set_display(&ug, &ug.singular_vertices())
                );
                let _ = writeln!(out, "  unital: yes");
                let cl = condition_l_graph(g);
                let _ = writeln!(out, "  condition (L): {}", yesno(cl.result));
                for w in &cl.witnesses {
                    let _ = writeln!(out, "    witness: {w}");
                }
                match hereditary_saturated_graph(g) {
                    Ok(hs) => {
                        let _ = writeln!(out, "  hereditary saturated subsets: {}", hs.len());
                        for h in hs {
                            let names: Vec<&str> =
                                h.iter().map(|&v| g.vertex_name(v)).collect();
                            let _ = writeln!(out, "    {{{}}}", names.join(" "));
                        }
                    }
                    Err(e) => {
                        let _ = writeln!(out, "  hereditary saturated subsets: {e}");
                    }
                }
                let sv = simplicity_verdict_graph(g);
                let _ = writeln!(out, "  simple: {}", yesno(sv.result));
                for w in &sv.witnesses {
                    let _ = writeln!(out, "    witness: {w}");
                }
            }
            Item::Ultragraph(g) => {
                let _ = writeln!(out, "ultragraph {}", g.name);
                let violations = g.validate();
                if violations.is_empty() {
                    let _ = writeln!(out, "  violations: none");
                } else {
                    for v in violations {
                        let _ = writeln!(out, "  violation: {} ({})", v.message, v.location);
                    }
                }
                let _ = writeln!(
                    out,
                    "  singular vertices: {}",
                    set_display(g, &g.singular_vertices())
                );
                let unital = match ulpa_core::sets::generate_g0(g) {
                    Ok(a) => {
                        if a.contains_full() {
                            "yes"
                        } else {
                            "no"
                        }
                    }
                    Err(_) => "unknown",
                };
                let _ = writeln!(out, "  unital: {unital}");
                let cl = condition_l_ultragraph(g);
                let _ = writeln!(out, "  condition (L): {}", yesno(cl.result));
                for w in &cl.witnesses {
                    let _ = writeln!(out, "    witness: {w}");
                }
                match hereditary_saturated_ultragraph(g) {
                    Ok(hs) => {
                        let _ = writeln!(
                            out,
                            "  hereditary saturated collections (by maximal set): {}",
                            hs.len()
                        );
                        for h in hs {
                            let _ = writeln!(out, "    {}", set_display(g, &h));
                        }
                    }
                    Err(e) => {
                        let _ =
                            writeln!(out, "  hereditary saturated collections: {e}");
                    }
                }
                let sv = simplicity_verdict_ultragraph(g);
                let _ = writeln!(out, "  simple: {}", yesno(sv.result));
                for w in &sv.witnesses {
                    let _ = writeln!(out, "    witness: {w}");
                }
            }
            Item::Element { name, structure, .. } => {
                let _ = writeln!(out, "element {name} on {structure}");
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructKind {
    Eg,
    Gf,
    Desing,
}

pub struct ConstructArgs {
    pub kind: ConstructKind,
    pub structure: Option<String>,
    pub window: u32,
    pub depth: Option<usize>,
    pub sigma_from_file: bool,
    pub edges: Vec<String>,
}

pub fn construct(doc: &Document, args: &ConstructArgs) -> Result<String, CmdError> {
    let item = select(doc, args.structure.as_deref())?;
    let g = as_ultragraph(item);
    match args.kind {
        ConstructKind::Eg => {
            let opts = EgOptions {
                window: args.window,
                depth: args.depth,
                sigma: if args.sigma_from_file {
                    SigmaStrategy::Table
                } else {
                    SigmaStrategy::Greedy { capacity: 1 }
                },
            };
            let eg = build_eg(&g, &opts)?;
            let mut out = dsl::print_graph(&eg.graph);
            for w in &eg.warnings {
                let _ = writeln!(out, "# warning: {w}");
            }
            Ok(out)
        }
        ConstructKind::Gf => {
            let mut f = Vec::new();
            for name in &args.edges {
                let e = g
                    .edge_by_name(name)
                    .ok_or_else(|| CmdError::Parse(format!("no edge named {name}")))?;
                f.push(e);
            }
            if f.is_empty() {
                return Err(CmdError::Parse(
                    "construct gf needs --edges e1,e2,...".into(),
                ));
            }
            let gf = build_gf(&g, &f);
            Ok(dsl::print_graph(&gf))
        }
        ConstructKind::Desing => {
            let depth = args.depth.unwrap_or(3);
            let d = desingularize(&g, depth)?;
            let mut out = dsl::print_ultragraph(&d.result);
            for w in &d.warnings {
                let _ = writeln!(out, "# warning: {w}");
            }
            Ok(out)
        }
    }
}

pub struct VerifyArgs {
    pub suite: String,
    pub structure: Option<String>,
    pub ring: Ring,
    pub window: u32,
    pub depth: Option<usize>,
    pub degree_bound: usize,
    pub desing_depth: usize,
    pub seed: u64,
    pub samples: usize,
    pub edges: Vec<String>,
}

/// Runs one named suite or family check; the returned flag is whether it
/// passed.
pub fn verify(doc: &Document, args: &VerifyArgs) -> Result<(String, bool), CmdError> {
    let item = select(doc, args.structure.as_deref())?;
    let suite_opts = SuiteOptions {
        eg: EgOptions {
            window: args.window,
            depth: args.depth,
            sigma: SigmaStrategy::Greedy { capacity: 1 },
        },
        degree_bound: args.degree_bound,
        lci_max: args.degree_bound.max(2),
        lglg_max: args.degree_bound,
        samples: args.samples,
        desing_depth: args.desing_depth,
        seed: args.seed,
    };
    // Family checks over the structure's own generators.
    let family = |name: &str| -> Result<Option<SuiteReport>, CmdError> {
        let report = match (name, item) {
            ("lp", Item::Graph(g)) => {
                check_family(&hom::self_graph(g, &args.ring), AxiomSet::LP)?
            }
            ("lp", Item::Ultragraph(_)) => {
                return Err(CmdError::Engine(
                    "verify lp needs a graph structure".into(),
                ))
            }
            ("ulp", _) => check_family(
                &hom::self_ultragraph(&as_ultragraph(item), &args.ring),
                AxiomSet::ULP,
            )?,
            ("exl", _) => check_family(
                &hom::self_exel_laca(&as_ultragraph(item), &args.ring),
                AxiomSet::ExL,
            )?,
            ("lfg", _) => {
                let g = as_ultragraph(item);
                let mut f = Vec::new();
                for name in &args.edges {
                    let e = g
                        .edge_by_name(name)
                        .ok_or_else(|| CmdError::Parse(format!("no edge named {name}")))?;
                    f.push(e);
                }
                if f.is_empty() {
                    f = g.edge_ids().take(2).collect();
                }
                check_family(&hom::lfg(&g, &f, &args.ring)?, AxiomSet::LP)?
            }
            ("lex3", _) => {
                let g = as_ultragraph(item);
                let eg = Arc::new(build_eg(&g, &suite_opts.eg)?);
                check_family(&hom::lex3(&eg, &args.ring), AxiomSet::ExL)?
            }
            ("desing-family", _) => {
                let g = as_ultragraph(item);
                let d = Arc::new(desingularize(&g, args.desing_depth)?);
                check_family(&hom::desing(&d, &args.ring), AxiomSet::ULP)?
            }
            _ => return Ok(None),
        };
        let mut sr = SuiteReport {
            suite: name.to_string(),
            instances: Vec::new(),
        };
        sr.instances = report.instances;
        Ok(Some(sr))
    };
    let report = if let Some(r) = family(args.suite.as_str())? {
        r
    } else if let Some(name) = SuiteName::parse(&args.suite) {
        run_suite(name, &as_ultragraph(item), &args.ring, &suite_opts)?
    } else {
        return Err(CmdError::Parse(format!(
            "unknown suite {}; expected lp, ulp, exl, lfg, lex3, desing-family, or one of {}",
            args.suite,
            SuiteName::all()
                .iter()
                .map(|s| s.label())
                .collect::<Vec<_>>()
                .join(", ")
        )));
    };
    let passed = report.passed();
    Ok((format!("{report}"), passed))
}

pub fn export_dot(doc: &Document) -> String {
    let mut out = String::new();
    for item in &doc.items {
        match item {
            Item::Graph(g) => out.push_str(&dot::graph_dot(g)),
            Item::Ultragraph(g) => out.push_str(&dot::ultragraph_dot(g)),
            Item::Element { .. } => {}
        }
    }
    out
}

pub struct EvalArgs {
    pub structure: Option<String>,
    pub ring: Ring,
    pub expr: String,
}

pub fn eval(doc: &Document, args: &EvalArgs) -> Result<String, CmdError> {
    // A bare binding name evaluates the bound expression over its own
    // structure.
    let binding = doc.items.iter().find_map(|i| match i {
        Item::Element {
            name,
            structure,
            text,
        } if *name == args.expr => Some((structure.clone(), text.clone())),
        _ => None,
    });
    let (structure, text) = match binding {
        Some((s, t)) => (Some(s), t),
        None => (args.structure.clone(), args.expr.clone()),
    };
    let item = select(doc, structure.as_deref())?;
    let target = match item {
        Item::Graph(g) => Target::Graph(g.clone()),
        Item::Ultragraph(g) => Target::Ultragraph(g.clone()),
        Item::Element { .. } => unreachable!(),
    };
    match expr::eval(&target, &args.ring, &text) {
        Ok(v) => Ok(format!("{}\n", v.render())),
        Err(expr::EvalError::Parse(e)) => Err(CmdError::Parse(e.to_string())),
        Err(expr::EvalError::MissingGenerator(m)) => {
            Err(CmdError::Engine(format!("missing generator {m}")))
        }
        Err(expr::EvalError::Engine(m)) => Err(CmdError::Engine(m)),
    }
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

fn record_line(suite: &str, inst: &InstanceResult) -> String {
    let status = match inst.status {
        InstanceStatus::Pass => "pass",
        InstanceStatus::Fail => "fail",
        InstanceStatus::Skip => "skip",
        InstanceStatus::Unknown => "unknown",
    };
    format!(
        "{{\"suite\":\"{}\",\"instance\":\"{}\",\"status\":\"{}\",\"witness\":\"{}\"}}",
        json_escape(suite),
        json_escape(&inst.id),
        status,
        json_escape(inst.detail.as_deref().unwrap_or(""))
    )
}

pub struct ReportArgs {
    pub ring: Ring,
    pub seed: u64,
    pub window: u32,
    pub depth: Option<usize>,
}

/// Runs the whole applicable battery on every structure: structural
/// analysis plus each suite that makes sense for the structure's shape.
/// Returns the plain-text report, the structured record lines, and whether
/// everything passed.
pub fn report(doc: &Document, args: &ReportArgs) -> Result<(String, Vec<String>, bool), CmdError> {
    let mut text = analyze(doc)?;
    let mut records = Vec::new();
    let mut all_passed = true;
    let opts = SuiteOptions {
        eg: EgOptions {
            window: args.window,
            depth: args.depth,
            sigma: SigmaStrategy::Greedy { capacity: 1 },
        },
        seed: args.seed,
        ..Default::default()
    };
    for item in &doc.items {
        let (name, g) = match item {
            Item::Graph(g) => (g.name.clone(), Arc::new(g.to_ultragraph())),
            Item::Ultragraph(g) => (g.name.clone(), g.clone()),
            Item::Element { .. } => continue,
        };
        // Generator families first.
        let mut reports: Vec<SuiteReport> = Vec::new();
        if let Item::Graph(graph) = item {
            let fam = check_family(&hom::self_graph(graph, &args.ring), AxiomSet::LP)?;
            reports.push(SuiteReport {
                suite: "lp".into(),
                instances: fam.instances,
            });
        }
        let fam = check_family(&hom::self_ultragraph(&g, &args.ring), AxiomSet::ULP)?;
        reports.push(SuiteReport {
            suite: "ulp".into(),
            instances: fam.instances,
        });
        let fam = check_family(&hom::self_exel_laca(&g, &args.ring), AxiomSet::ExL)?;
        reports.push(SuiteReport {
            suite: "exl".into(),
            instances: fam.instances,
        });
        for suite in SuiteName::all() {
            match run_suite(*suite, &g, &args.ring, &opts) {
                Ok(r) => reports.push(r),
                Err(CoreError::TruncationExceeded(m)) | Err(CoreError::NotReachable(m)) => {
                    reports.push(SuiteReport {
                        suite: suite.label().into(),
                        instances: vec![InstanceResult {
                            id: format!("{} on {name}", suite.label()),
                            status: InstanceStatus::Skip,
                            detail: Some(m),
                        }],
                    })
                }
                Err(e) => return Err(e.into()),
            }
        }
        for r in reports {
            all_passed &= r.passed();
            let _ = write!(text, "[{name}] {r}");
            for inst in &r.instances {
                records.push(record_line(&format!("{name}/{}", r.suite), inst));
            }
        }
    }
    Ok((text, records, all_passed))
}
