//! The structure DSL: a whitespace-insensitive grammar with `#` line
//! comments. Documents hold named graphs and ultragraphs, optional sigma
//! tables, and optional element-expression bindings; parse and print are
//! mutually inverse on documents.
//!
//! structure := ("graph" | "ultragraph") NAME "{" decl* "}"
//! decl      := "universe" ("finite" | "nat") ";"
//!            | "vertices" (ID ("@" INT)?)+ ";"
//!            | "edge" ID ":" ID "->" target ";"
//!            | "sigma" "{" (ID "->" BITS ";")* "}"
//!            | "infinite" ID+ ";"
//!            | "frontier" ID+ ";"
//! target    := ID | "{" ID+ "}" | "cofinite" "{" ID* "}"
//! binding   := "element" NAME "on" NAME "=" TEXT ";"

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use ulpa_core::graph::UniverseMode;
use ulpa_core::sets::Universe;
use ulpa_core::{Graph, Ultragraph, VertexId, VertexSet};

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub expected: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at line {}, col {}: expected {}",
            self.line, self.col, self.expected
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
pub enum Item {
    Graph(Arc<Graph>),
    Ultragraph(Arc<Ultragraph>),
    /// A named element expression over a structure; evaluated on demand.
    Element {
        name: String,
        structure: String,
        text: String,
    },
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Document {
    pub items: Vec<Item>,
}

impl Document {
    pub fn structure_names(&self) -> Vec<&str> {
        self.items
            .iter()
            .filter_map(|i| match i {
                Item::Graph(g) => Some(g.name.as_str()),
                Item::Ultragraph(g) => Some(g.name.as_str()),
                Item::Element { .. } => None,
            })
            .collect()
    }

    pub fn find_graph(&self, name: &str) -> Option<&Arc<Graph>> {
        self.items.iter().find_map(|i| match i {
            Item::Graph(g) if g.name == name => Some(g),
            _ => None,
        })
    }

    pub fn find_ultragraph(&self, name: &str) -> Option<&Arc<Ultragraph>> {
        self.items.iter().find_map(|i| match i {
            Item::Ultragraph(g) if g.name == name => Some(g),
            _ => None,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Semi,
    Colon,
    Arrow,
    At,
    Equals,
    Star,
    Plus,
    Minus,
}

struct Lexer<'a> {
    source: &'a str,
    toks: Vec<(Tok, usize, usize, usize)>,
    pos: usize,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize, usize, usize)>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut byte = 0usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, co, b) = (line, col, byte);
        let bump = |c: char, line: &mut usize, col: &mut usize, byte: &mut usize| {
            *byte += c.len_utf8();
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        };
        match c {
            '#' => {
                while let Some(&c) = chars.peek() {
                    chars.next();
                    bump(c, &mut line, &mut col, &mut byte);
                    if c == '\n' {
                        break;
                    }
                }
            }
            c if c.is_whitespace() => {
                chars.next();
                bump(c, &mut line, &mut col, &mut byte);
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        s.push(c);
                        chars.next();
                        bump(c, &mut line, &mut col, &mut byte);
                    } else {
                        break;
                    }
                }
                out.push((Tok::Ident(s), l, co, b));
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        s.push(c);
                        chars.next();
                        bump(c, &mut line, &mut col, &mut byte);
                    } else {
                        break;
                    }
                }
                out.push((Tok::Number(s), l, co, b));
            }
            '-' => {
                chars.next();
                bump('-', &mut line, &mut col, &mut byte);
                if chars.peek() == Some(&'>') {
                    chars.next();
                    bump('>', &mut line, &mut col, &mut byte);
                    out.push((Tok::Arrow, l, co, b));
                } else {
                    out.push((Tok::Minus, l, co, b));
                }
            }
            '{' | '}' | '(' | ')' | ';' | ':' | '@' | '=' | '*' | '+' => {
                chars.next();
                bump(c, &mut line, &mut col, &mut byte);
                let tok = match c {
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ';' => Tok::Semi,
                    ':' => Tok::Colon,
                    '@' => Tok::At,
                    '=' => Tok::Equals,
                    '*' => Tok::Star,
                    _ => Tok::Plus,
                };
                out.push((tok, l, co, b));
            }
            other => {
                return Err(ParseError {
                    line,
                    col,
                    expected: format!("a token (found {other:?})"),
                })
            }
        }
    }
    Ok(out)
}

impl<'a> Lexer<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _, _)| t)
    }

    fn location(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map(|&(_, l, c, _)| (l, c))
            .unwrap_or((1, 1))
    }

    fn byte_offset(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|&(_, _, _, b)| b)
            .unwrap_or(self.source.len())
    }

    fn err(&self, expected: impl Into<String>) -> ParseError {
        let (line, col) = self.location();
        ParseError {
            line,
            col,
            expected: expected.into(),
        }
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _, _, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(what))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(_)) => {
                let Some(Tok::Ident(s)) = self.next() else {
                    unreachable!()
                };
                Ok(s)
            }
            _ => Err(self.err(what)),
        }
    }
}

pub fn parse(text: &str) -> Result<Document, ParseError> {
    let mut lex = Lexer {
        source: text,
        toks: lex(text)?,
        pos: 0,
    };
    let mut doc = Document::default();
    while let Some(tok) = lex.peek() {
        match tok {
            Tok::Ident(kw) if kw == "graph" => {
                lex.next();
                doc.items.push(Item::Graph(Arc::new(parse_graph(&mut lex)?)));
            }
            Tok::Ident(kw) if kw == "ultragraph" => {
                lex.next();
                doc.items
                    .push(Item::Ultragraph(Arc::new(parse_ultragraph(&mut lex)?)));
            }
            Tok::Ident(kw) if kw == "element" => {
                lex.next();
                let name = lex.ident("an element name")?;
                let kw = lex.ident("'on'")?;
                if kw != "on" {
                    return Err(lex.err("'on'"));
                }
                let structure = lex.ident("a structure name")?;
                lex.expect(Tok::Equals, "'='")?;
                let start = lex.byte_offset();
                let end;
                loop {
                    match lex.peek() {
                        Some(Tok::Semi) => {
                            end = lex.byte_offset();
                            lex.next();
                            break;
                        }
                        Some(_) => {
                            lex.next();
                        }
                        None => return Err(lex.err("';' ending the element binding")),
                    }
                }
                doc.items.push(Item::Element {
                    name,
                    structure,
                    text: lex.source[start..end].trim().to_string(),
                });
            }
            _ => return Err(lex.err("'graph', 'ultragraph', or 'element'")),
        }
    }
    // Names must be unique and bindings must resolve.
    let names = doc.structure_names();
    for (k, n) in names.iter().enumerate() {
        if names[..k].contains(n) {
            return Err(ParseError {
                line: 1,
                col: 1,
                expected: format!("unique structure names (duplicate {n})"),
            });
        }
    }
    for item in &doc.items {
        if let Item::Element { structure, name, .. } = item {
            if !names.contains(&structure.as_str()) {
                return Err(ParseError {
                    line: 1,
                    col: 1,
                    expected: format!("element {name} to reference a declared structure"),
                });
            }
        }
    }
    Ok(doc)
}

fn parse_sigma_block(
    lex: &mut Lexer,
    resolve: &mut dyn FnMut(&str) -> VertexId,
) -> Result<BTreeMap<VertexId, Vec<bool>>, ParseError> {
    let mut table = BTreeMap::new();
    lex.expect(Tok::LBrace, "'{' opening the sigma table")?;
    loop {
        match lex.peek() {
            Some(Tok::RBrace) => {
                lex.next();
                break;
            }
            Some(Tok::Ident(_)) => {
                let v = lex.ident("a vertex name")?;
                lex.expect(Tok::Arrow, "'->'")?;
                let bits = match lex.next() {
                    Some(Tok::Number(s)) if s.chars().all(|c| c == '0' || c == '1') => s,
                    _ => return Err(lex.err("a 0/1 word")),
                };
                lex.expect(Tok::Semi, "';'")?;
                table.insert(
                    resolve(&v),
                    bits.chars().map(|c| c == '1').collect::<Vec<bool>>(),
                );
            }
            _ => return Err(lex.err("a sigma entry or '}'")),
        }
    }
    Ok(table)
}

fn parse_graph(lex: &mut Lexer) -> Result<Graph, ParseError> {
    let name = lex.ident("a graph name")?;
    let mut g = Graph::new(name);
    lex.expect(Tok::LBrace, "'{'")?;
    loop {
        match lex.peek().cloned() {
            Some(Tok::RBrace) => {
                lex.next();
                break;
            }
            Some(Tok::Ident(kw)) => {
                lex.next();
                match kw.as_str() {
                    "universe" => {
                        let mode = lex.ident("'finite'")?;
                        if mode != "finite" {
                            return Err(lex.err("'finite' (graphs have finite universes)"));
                        }
                        lex.expect(Tok::Semi, "';'")?;
                    }
                    "vertices" => {
                        loop {
                            match lex.peek() {
                                Some(Tok::Ident(_)) => {
                                    let v = lex.ident("a vertex name")?;
                                    g.add_vertex(v);
                                }
                                Some(Tok::Semi) => {
                                    lex.next();
                                    break;
                                }
                                _ => return Err(lex.err("a vertex name or ';'")),
                            }
                        }
                    }
                    "edge" => {
                        let e = lex.ident("an edge name")?;
                        lex.expect(Tok::Colon, "':'")?;
                        let src = lex.ident("a source vertex")?;
                        lex.expect(Tok::Arrow, "'->'")?;
                        let tgt = lex.ident("a target vertex")?;
                        lex.expect(Tok::Semi, "';'")?;
                        let s = g.mention_vertex(&src);
                        let t = g.mention_vertex(&tgt);
                        g.add_edge(e, s, t);
                    }
                    "frontier" => loop {
                        match lex.peek() {
                            Some(Tok::Ident(_)) => {
                                let v = lex.ident("a vertex name")?;
                                let id = g.mention_vertex(&v);
                                g.mark_frontier(id);
                            }
                            Some(Tok::Semi) => {
                                lex.next();
                                break;
                            }
                            _ => return Err(lex.err("a vertex name or ';'")),
                        }
                    },
                    "sigma" => {
                        let table = parse_sigma_block(lex, &mut |n| g.mention_vertex(n))?;
                        g.sigma_table = table;
                    }
                    other => {
                        return Err(lex.err(format!(
                            "'vertices', 'edge', 'frontier', 'sigma', or '}}' (found {other})"
                        )))
                    }
                }
            }
            _ => return Err(lex.err("a declaration or '}'")),
        }
    }
    Ok(g)
}

fn parse_ultragraph(lex: &mut Lexer) -> Result<Ultragraph, ParseError> {
    let name = lex.ident("an ultragraph name")?;
    lex.expect(Tok::LBrace, "'{'")?;
    // The universe mode must be known before vertices are interned; default
    // is finite, and a leading `universe nat;` switches.
    let mut g: Option<Ultragraph> = None;
    let mut pending: Vec<(String, Option<u32>)> = Vec::new();
    fn take<'a>(g: &'a mut Option<Ultragraph>, name: &str) -> &'a mut Ultragraph {
        g.get_or_insert_with(|| Ultragraph::new(name, UniverseMode::Finite))
    }
    loop {
        match lex.peek().cloned() {
            Some(Tok::RBrace) => {
                lex.next();
                break;
            }
            Some(Tok::Ident(kw)) => {
                lex.next();
                match kw.as_str() {
                    "universe" => {
                        let mode = lex.ident("'finite' or 'nat'")?;
                        lex.expect(Tok::Semi, "';'")?;
                        if g.is_some() {
                            return Err(lex.err("'universe' before other declarations"));
                        }
                        let mode = match mode.as_str() {
                            "finite" => UniverseMode::Finite,
                            "nat" => UniverseMode::Nat,
                            _ => return Err(lex.err("'finite' or 'nat'")),
                        };
                        g = Some(Ultragraph::new(&name, mode));
                    }
                    "vertices" => {
                        loop {
                            match lex.peek() {
                                Some(Tok::Ident(_)) => {
                                    let v = lex.ident("a vertex name")?;
                                    let index = if lex.peek() == Some(&Tok::At) {
                                        lex.next();
                                        match lex.next() {
                                            Some(Tok::Number(s)) => {
                                                Some(s.parse::<u32>().map_err(|_| {
                                                    lex.err("a vertex index")
                                                })?)
                                            }
                                            _ => return Err(lex.err("a vertex index")),
                                        }
                                    } else {
                                        None
                                    };
                                    pending.push((v, index));
                                }
                                Some(Tok::Semi) => {
                                    lex.next();
                                    break;
                                }
                                _ => return Err(lex.err("a vertex name or ';'")),
                            }
                        }
                        let g = take(&mut g, &name);
                        for (v, index) in pending.drain(..) {
                            match index {
                                Some(k) => {
                                    g.add_vertex_at(&v, k)
                                        .map_err(|e| lex.err(e.to_string()))?;
                                }
                                None => {
                                    g.add_vertex(&v);
                                }
                            }
                        }
                    }
                    "edge" => {
                        let e = lex.ident("an edge name")?;
                        lex.expect(Tok::Colon, "':'")?;
                        let src = lex.ident("a source vertex")?;
                        lex.expect(Tok::Arrow, "'->'")?;
                        let g2 = take(&mut g, &name);
                        let range = parse_target(lex, g2)?;
                        lex.expect(Tok::Semi, "';'")?;
                        let s = resolve_vertex(g2, &src);
                        g2.add_edge(e, s, range);
                    }
                    "infinite" => {
                        let g2 = take(&mut g, &name);
                        loop {
                            match lex.peek() {
                                Some(Tok::Ident(_)) => {
                                    let v = lex.ident("a vertex name")?;
                                    let id = resolve_vertex(g2, &v);
                                    g2.declare_infinite(id);
                                }
                                Some(Tok::Semi) => {
                                    lex.next();
                                    break;
                                }
                                _ => return Err(lex.err("a vertex name or ';'")),
                            }
                        }
                    }
                    "frontier" => {
                        let g2 = take(&mut g, &name);
                        loop {
                            match lex.peek() {
                                Some(Tok::Ident(_)) => {
                                    let v = lex.ident("a vertex name")?;
                                    let id = resolve_vertex(g2, &v);
                                    g2.mark_frontier(id);
                                }
                                Some(Tok::Semi) => {
                                    lex.next();
                                    break;
                                }
                                _ => return Err(lex.err("a vertex name or ';'")),
                            }
                        }
                    }
                    "sigma" => {
                        let g2 = take(&mut g, &name);
                        let table = parse_sigma_block(lex, &mut |n| resolve_vertex(g2, n))?;
                        g2.sigma_table = table;
                    }
                    other => {
                        return Err(lex.err(format!(
                            "'universe', 'vertices', 'edge', 'infinite', 'frontier', \
                             'sigma', or '}}' (found {other})"
                        )))
                    }
                }
            }
            _ => return Err(lex.err("a declaration or '}'")),
        }
    }
    Ok(g.unwrap_or_else(|| Ultragraph::new(&name, UniverseMode::Finite)))
}

/// In Nat mode unseen names alias fresh indices; in finite mode they are
/// violations surfaced by validate().
fn resolve_vertex(g: &mut Ultragraph, name: &str) -> VertexId {
    match g.mode() {
        UniverseMode::Nat => g.add_vertex(name),
        UniverseMode::Finite => g.mention_vertex(name),
    }
}

fn parse_target(lex: &mut Lexer, g: &mut Ultragraph) -> Result<VertexSet, ParseError> {
    match lex.peek().cloned() {
        Some(Tok::Ident(kw)) if kw == "cofinite" => {
            lex.next();
            lex.expect(Tok::LBrace, "'{'")?;
            let mut excluded = Vec::new();
            loop {
                match lex.peek() {
                    Some(Tok::Ident(_)) => {
                        let v = lex.ident("a vertex name")?;
                        excluded.push(resolve_vertex(g, &v));
                    }
                    Some(Tok::RBrace) => {
                        lex.next();
                        break;
                    }
                    _ => return Err(lex.err("a vertex name or '}'")),
                }
            }
            Ok(VertexSet::cofinite(excluded))
        }
        Some(Tok::Ident(_)) => {
            let v = lex.ident("a vertex name")?;
            Ok(VertexSet::singleton(resolve_vertex(g, &v)))
        }
        Some(Tok::LBrace) => {
            lex.next();
            let mut members = Vec::new();
            loop {
                match lex.peek() {
                    Some(Tok::Ident(_)) => {
                        let v = lex.ident("a vertex name")?;
                        members.push(resolve_vertex(g, &v));
                    }
                    Some(Tok::RBrace) => {
                        lex.next();
                        break;
                    }
                    _ => return Err(lex.err("a vertex name or '}'")),
                }
            }
            if members.is_empty() {
                return Err(lex.err("empty range"));
            }
            Ok(VertexSet::from_iter(members))
        }
        _ => Err(lex.err("a target vertex, '{...}', or 'cofinite {...}'")),
    }
}

fn print_sigma(out: &mut String, table: &BTreeMap<VertexId, Vec<bool>>, name_of: &dyn Fn(VertexId) -> String) {
    if table.is_empty() {
        return;
    }
    out.push_str("  sigma {\n");
    for (v, bits) in table {
        let word: String = bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
        out.push_str(&format!("    {} -> {};\n", name_of(*v), word));
    }
    out.push_str("  }\n");
}

pub fn print_graph(g: &Graph) -> String {
    let mut out = format!("graph {} {{\n", g.name);
    if g.vertex_count() > 0 {
        out.push_str("  vertices");
        for v in g.vertices() {
            out.push_str(&format!(" {}", g.vertex_name(v)));
        }
        out.push_str(";\n");
    }
    for (_, e) in g.edges() {
        out.push_str(&format!(
            "  edge {}: {} -> {};\n",
            e.name,
            g.vertex_name(e.source),
            g.vertex_name(e.target)
        ));
    }
    if !g.frontier.is_empty() {
        out.push_str("  frontier");
        for &v in &g.frontier {
            out.push_str(&format!(" {}", g.vertex_name(v)));
        }
        out.push_str(";\n");
    }
    print_sigma(&mut out, &g.sigma_table, &|v| g.vertex_name(v).to_string());
    out.push_str("}\n");
    out
}

pub fn print_ultragraph(g: &Ultragraph) -> String {
    let mut out = format!("ultragraph {} {{\n", g.name);
    let nat = g.universe == Universe::Nat;
    out.push_str(&format!(
        "  universe {};\n",
        if nat { "nat" } else { "finite" }
    ));
    let named: Vec<VertexId> = g.named_vertices().collect();
    if !named.is_empty() {
        out.push_str("  vertices");
        for v in named {
            if nat {
                out.push_str(&format!(" {}@{}", g.vertex_name(v), v.0));
            } else {
                out.push_str(&format!(" {}", g.vertex_name(v)));
            }
        }
        out.push_str(";\n");
    }
    for e in g.edges() {
        let target = match &e.range {
            VertexSet::Finite(members) if members.len() == 1 => {
                g.vertex_name(*members.iter().next().unwrap())
            }
            VertexSet::Finite(members) => {
                let inner = members
                    .iter()
                    .map(|&v| g.vertex_name(v))
                    .collect::<Vec<_>>()
                    .join(" ");
                format!("{{{inner}}}")
            }
            VertexSet::Cofinite(excluded) => {
                let inner = excluded
                    .iter()
                    .map(|&v| g.vertex_name(v))
                    .collect::<Vec<_>>()
                    .join(" ");
                format!("cofinite {{{inner}}}")
            }
        };
        out.push_str(&format!(
            "  edge {}: {} -> {};\n",
            e.name,
            g.vertex_name(e.source),
            target
        ));
    }
    if !g.declared_infinite.is_empty() {
        out.push_str("  infinite");
        for &v in &g.declared_infinite {
            out.push_str(&format!(" {}", g.vertex_name(v)));
        }
        out.push_str(";\n");
    }
    if !g.frontier.is_empty() {
        out.push_str("  frontier");
        for &v in &g.frontier {
            out.push_str(&format!(" {}", g.vertex_name(v)));
        }
        out.push_str(";\n");
    }
    print_sigma(&mut out, &g.sigma_table, &|v| g.vertex_name(v));
    out.push_str("}\n");
    out
}

pub fn print_document(doc: &Document) -> String {
    let mut out = String::new();
    for (k, item) in doc.items.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        match item {
            Item::Graph(g) => out.push_str(&print_graph(g)),
            Item::Ultragraph(g) => out.push_str(&print_ultragraph(g)),
            Item::Element {
                name,
                structure,
                text,
            } => out.push_str(&format!("element {name} on {structure} = {text};\n")),
        }
    }
    out
}
