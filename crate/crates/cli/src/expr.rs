//! Element expressions over a named structure:
//!
//! expr   := term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := INT | atom
//! atom   := "s" "(" ID ")" | "star" "(" "s" "(" ID ")" ")"
//!         | "p" "(" set ")" | "q" "(" ID ")"
//! set    := ID | "{" ID* "}" | "cofinite" "{" ID* "}"
//!
//! q atoms evaluate in the graph engine, p atoms in the ultragraph engine;
//! s follows the structure's kind.

use crate::dsl::ParseError;
use std::sync::Arc;
use ulpa_core::element::{GElem, UElem};
use ulpa_core::{Graph, Ring, Ultragraph, VertexSet};

#[derive(Debug, Clone)]
pub enum Evaluated {
    G(GElem),
    U(UElem),
}

impl Evaluated {
    pub fn render(&self) -> String {
        match self {
            Evaluated::G(x) => x.to_string(),
            Evaluated::U(x) => x.to_string(),
        }
    }

    fn add(self, other: Evaluated) -> Result<Evaluated, EvalError> {
        match (self, other) {
            (Evaluated::G(a), Evaluated::G(b)) => Ok(Evaluated::G(a.add(&b)?)),
            (Evaluated::U(a), Evaluated::U(b)) => Ok(Evaluated::U(a.add(&b)?)),
            _ => Err(EvalError::Engine("mixed engines in a sum".into())),
        }
    }

    fn sub(self, other: Evaluated) -> Result<Evaluated, EvalError> {
        match (self, other) {
            (Evaluated::G(a), Evaluated::G(b)) => Ok(Evaluated::G(a.sub(&b)?)),
            (Evaluated::U(a), Evaluated::U(b)) => Ok(Evaluated::U(a.sub(&b)?)),
            _ => Err(EvalError::Engine("mixed engines in a difference".into())),
        }
    }

    fn mul(self, other: Evaluated) -> Result<Evaluated, EvalError> {
        match (self, other) {
            (Evaluated::G(a), Evaluated::G(b)) => Ok(Evaluated::G(a.mul(&b)?)),
            (Evaluated::U(a), Evaluated::U(b)) => Ok(Evaluated::U(a.mul(&b)?)),
            _ => Err(EvalError::Engine("mixed engines in a product".into())),
        }
    }

    fn scale(self, n: i64) -> Evaluated {
        match self {
            Evaluated::G(a) => Evaluated::G(a.scale(n)),
            Evaluated::U(a) => Evaluated::U(a.scale(n)),
        }
    }
}

#[derive(Debug)]
pub enum EvalError {
    Parse(ParseError),
    MissingGenerator(String),
    Engine(String),
}

impl std::fmt::Display for EvalError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EvalError::Parse(e) => write!(f, "{e}"),
            EvalError::MissingGenerator(m) => write!(f, "missing generator: {m}"),
            EvalError::Engine(m) => write!(f, "engine error: {m}"),
        }
    }
}

impl From<ulpa_core::Error> for EvalError {
    fn from(e: ulpa_core::Error) -> Self {
        EvalError::Engine(e.to_string())
    }
}

/// The structure an expression evaluates over.
#[derive(Clone)]
pub enum Target {
    Graph(Arc<Graph>),
    Ultragraph(Arc<Ultragraph>),
}

struct P<'a> {
    text: &'a [u8],
    pos: usize,
    target: &'a Target,
    ring: &'a Ring,
}

impl<'a> P<'a> {
    fn err(&self, expected: &str) -> EvalError {
        EvalError::Parse(ParseError {
            line: 1,
            col: self.pos + 1,
            expected: expected.into(),
        })
    }

    fn ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.ws();
        if self.pos < self.text.len() && self.text[self.pos] == c {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Option<String> {
        self.ws();
        let start = self.pos;
        while self.pos < self.text.len()
            && (self.text[self.pos].is_ascii_alphanumeric() || self.text[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if self.pos > start && !self.text[start].is_ascii_digit() {
            Some(String::from_utf8_lossy(&self.text[start..self.pos]).into_owned())
        } else {
            self.pos = start;
            None
        }
    }

    fn number(&mut self) -> Option<i64> {
        self.ws();
        let start = self.pos;
        let mut p = self.pos;
        if p < self.text.len() && self.text[p] == b'-' {
            p += 1;
        }
        let digits = p;
        while p < self.text.len() && self.text[p].is_ascii_digit() {
            p += 1;
        }
        if p == digits {
            self.pos = start;
            return None;
        }
        let s = String::from_utf8_lossy(&self.text[start..p]).into_owned();
        self.pos = p;
        s.parse().ok()
    }

    fn expr(&mut self) -> Result<Evaluated, EvalError> {
        let mut acc = self.term()?;
        loop {
            self.ws();
            if self.eat(b'+') {
                acc = acc.add(self.term()?)?;
            } else if self.eat(b'-') {
                acc = acc.sub(self.term()?)?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Evaluated, EvalError> {
        // Leading integer scalars multiply the rest of the term.
        let mut scalar: i64 = 1;
        let mut acc: Option<Evaluated> = None;
        loop {
            self.ws();
            if let Some(n) = self.number() {
                scalar = scalar.saturating_mul(n);
            } else {
                let atom = self.atom()?;
                acc = Some(match acc {
                    None => atom,
                    Some(a) => a.mul(atom)?,
                });
            }
            if !self.eat(b'*') {
                break;
            }
        }
        match acc {
            Some(a) => Ok(a.scale(scalar)),
            None => {
                // A bare scalar: meaningful only as a multiple of a vertex
                // sum; reject to keep the grammar honest.
                Err(self.err("an atom (bare integers have no element meaning)"))
            }
        }
    }

    fn atom(&mut self) -> Result<Evaluated, EvalError> {
        let Some(head) = self.ident() else {
            return Err(self.err("s(...), star(s(...)), p(...), or q(...)"));
        };
        match head.as_str() {
            "s" => {
                if !self.eat(b'(') {
                    return Err(self.err("'('"));
                }
                let e = self.ident().ok_or_else(|| self.err("an edge name"))?;
                if !self.eat(b')') {
                    return Err(self.err("')'"));
                }
                self.edge_atom(&e)
            }
            "star" => {
                if !self.eat(b'(') {
                    return Err(self.err("'('"));
                }
                let inner = self.atom()?;
                if !self.eat(b')') {
                    return Err(self.err("')'"));
                }
                Ok(match inner {
                    Evaluated::G(x) => Evaluated::G(x.star()),
                    Evaluated::U(x) => Evaluated::U(x.star()),
                })
            }
            "q" => {
                if !self.eat(b'(') {
                    return Err(self.err("'('"));
                }
                let v = self.ident().ok_or_else(|| self.err("a vertex name"))?;
                if !self.eat(b')') {
                    return Err(self.err("')'"));
                }
                match self.target {
                    Target::Graph(g) => {
                        let id = g
                            .vertex_by_name(&v)
                            .ok_or(EvalError::MissingGenerator(v))?;
                        Ok(Evaluated::G(GElem::vertex(g.clone(), self.ring.clone(), id)))
                    }
                    Target::Ultragraph(_) => Err(EvalError::Engine(
                        "q(...) is a graph atom; use p(...) on ultragraphs".into(),
                    )),
                }
            }
            "p" => {
                if !self.eat(b'(') {
                    return Err(self.err("'('"));
                }
                let set = self.set()?;
                if !self.eat(b')') {
                    return Err(self.err("')'"));
                }
                match self.target {
                    Target::Ultragraph(g) => {
                        Ok(Evaluated::U(UElem::p(g.clone(), self.ring.clone(), set)))
                    }
                    Target::Graph(_) => Err(EvalError::Engine(
                        "p(...) is an ultragraph atom; use q(...) on graphs".into(),
                    )),
                }
            }
            other => Err(self.err(&format!("an atom (found {other})"))),
        }
    }

    fn edge_atom(&mut self, name: &str) -> Result<Evaluated, EvalError> {
        match self.target {
            Target::Graph(g) => {
                let e = g
                    .edge_by_name(name)
                    .ok_or_else(|| EvalError::MissingGenerator(name.into()))?;
                Ok(Evaluated::G(GElem::edge(g.clone(), self.ring.clone(), e)))
            }
            Target::Ultragraph(g) => {
                let e = g
                    .edge_by_name(name)
                    .ok_or_else(|| EvalError::MissingGenerator(name.into()))?;
                Ok(Evaluated::U(UElem::s_edge(g.clone(), self.ring.clone(), e)))
            }
        }
    }

    fn set(&mut self) -> Result<VertexSet, EvalError> {
        let Target::Ultragraph(g) = self.target else {
            return Err(EvalError::Engine("sets live on ultragraphs".into()));
        };
        self.ws();
        let lookup = |name: &str| -> Result<ulpa_core::VertexId, EvalError> {
            g.vertex_by_name(name)
                .ok_or_else(|| EvalError::MissingGenerator(name.into()))
        };
        if self.eat(b'{') {
            let mut members = Vec::new();
            while let Some(v) = self.ident() {
                members.push(lookup(&v)?);
            }
            if !self.eat(b'}') {
                return Err(self.err("'}'"));
            }
            return Ok(VertexSet::from_iter(members));
        }
        let head = self.ident().ok_or_else(|| self.err("a set"))?;
        if head == "cofinite" {
            if !self.eat(b'{') {
                return Err(self.err("'{'"));
            }
            let mut excluded = Vec::new();
            while let Some(v) = self.ident() {
                excluded.push(lookup(&v)?);
            }
            if !self.eat(b'}') {
                return Err(self.err("'}'"));
            }
            Ok(VertexSet::cofinite(excluded))
        } else {
            Ok(VertexSet::singleton(lookup(&head)?))
        }
    }
}

pub fn eval(target: &Target, ring: &Ring, text: &str) -> Result<Evaluated, EvalError> {
    let mut p = P {
        text: text.as_bytes(),
        pos: 0,
        target,
        ring,
    };
    let out = p.expr()?;
    p.ws();
    if p.pos != p.text.len() {
        return Err(p.err("end of expression"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ulpa_core::corpus;

    #[test]
    fn ulp3_example() {
        let g = corpus::ugr1();
        let t = Target::Ultragraph(g);
        let out = eval(&t, &Ring::Integers, "star(s(e)) * s(e)").unwrap();
        assert_eq!(out.render(), "p(cofinite{v0})");
    }

    #[test]
    fn orthogonal_vertices_example() {
        let g = corpus::line_graph(2);
        let t = Target::Graph(g);
        let out = eval(&t, &Ring::Integers, "q(v1) * q(v2)").unwrap();
        assert_eq!(out.render(), "0");
    }

    #[test]
    fn loop_composition_example() {
        let g = corpus::rose(1);
        let t = Target::Graph(g);
        let out = eval(&t, &Ring::Integers, "s(e1) * s(e1)").unwrap();
        assert_eq!(out.render(), "s(e1 e1)");
    }

    #[test]
    fn scalars_and_sums() {
        let g = corpus::line_graph(2);
        let t = Target::Graph(g);
        let out = eval(&t, &Ring::Integers, "2 * q(v1) + s(e1)").unwrap();
        assert_eq!(out.render(), "2 q(v1) + s(e1)");
    }

    #[test]
    fn missing_generator_reported() {
        let g = corpus::line_graph(2);
        let t = Target::Graph(g);
        assert!(matches!(
            eval(&t, &Ring::Integers, "q(nope)"),
            Err(EvalError::MissingGenerator(_))
        ));
    }
}
