//! Line-oriented text formats for graphs, ordered bipartite graphs and
//! interval families, with optional `l <name> <v>...` landmark lines.
//!
//! ```text
//! p graph 3          p bigraph 2 4 strong      p intervals 2
//! e 0 1              e 0 0                     i 0 1 4
//! e 1 2              e 0 1                     i 1 3 7
//! ```
//! Blank lines and lines starting with `#` are skipped. Output is canonical:
//! no comments, edges sorted, intervals by id, landmarks last.

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::families::{FamilyInstance, Instance, Landmark};
use crate::graph::{Graph, Vertex};
use crate::structured::{Claim, Interval, IntervalFamily, OrderError, OrderedBipartite};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `p` header line")]
    NoHeader,
    #[error("{claim} claim rejected: {source}")]
    Claim { claim: Claim, source: OrderError },
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, msg: msg.into() }
}

/// A parsed file: the instance plus any landmark lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub instance: Instance,
    pub landmarks: Vec<Landmark>,
}

impl Document {
    pub fn new(instance: Instance) -> Self {
        Document { instance, landmarks: Vec::new() }
    }

    pub fn graph(&self) -> Graph {
        self.instance.graph()
    }

    pub fn landmark(&self, name: &str) -> Option<&[Vertex]> {
        self.landmarks.iter().find(|l| l.name == name).map(|l| l.vertices.as_slice())
    }
}

impl From<&FamilyInstance> for Document {
    fn from(f: &FamilyInstance) -> Self {
        Document { instance: f.instance.clone(), landmarks: f.landmarks.clone() }
    }
}

enum Header {
    Graph(usize),
    Bigraph(usize, usize, Claim),
    Intervals(usize),
}

fn num<T: std::str::FromStr>(line: usize, tok: Option<&str>, what: &str) -> Result<T, ParseError> {
    let tok = tok.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| syntax(line, format!("bad {what} `{tok}`")))
}

fn no_more<'a>(line: usize, mut toks: impl Iterator<Item = &'a str>) -> Result<(), ParseError> {
    match toks.next() {
        Some(t) => Err(syntax(line, format!("unexpected token `{t}`"))),
        None => Ok(()),
    }
}

fn header(line: usize, rest: &[&str]) -> Result<Header, ParseError> {
    let mut it = rest.iter().copied();
    let kind = it.next().ok_or_else(|| syntax(line, "empty header"))?;
    let h = match kind {
        "graph" => Header::Graph(num(line, it.next(), "vertex count")?),
        "bigraph" => {
            let nx = num(line, it.next(), "X size")?;
            let ny = num(line, it.next(), "Y size")?;
            let claim = it.next().ok_or_else(|| syntax(line, "missing claim"))?;
            let claim = claim.parse().map_err(|e: String| syntax(line, e))?;
            Header::Bigraph(nx, ny, claim)
        }
        "intervals" => Header::Intervals(num(line, it.next(), "interval count")?),
        other => return Err(syntax(line, format!("unknown format `{other}`"))),
    };
    no_more(line, it)?;
    Ok(h)
}

/// Parses any of the three formats. Bigraph claims run the matching validator.
pub fn parse(text: &str) -> Result<Document, ParseError> {
    let mut head: Option<(usize, Header)> = None;
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    let mut items = Vec::new();
    let mut ids = HashSet::new();
    let mut landmarks: Vec<(usize, Landmark)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        let Some(&tag) = toks.first() else { continue };
        if tag.starts_with('#') {
            continue;
        }
        if tag == "p" {
            if head.is_some() {
                return Err(syntax(line, "second header"));
            }
            head = Some((line, header(line, &toks[1..])?));
            continue;
        }
        let Some((_, h)) = &head else {
            return Err(syntax(line, "content before the `p` header"));
        };
        let mut it = toks[1..].iter().copied();
        match (tag, h) {
            ("e", Header::Graph(n)) => {
                let u: usize = num(line, it.next(), "vertex")?;
                let v: usize = num(line, it.next(), "vertex")?;
                no_more(line, it)?;
                for w in [u, v] {
                    if w >= *n {
                        return Err(syntax(line, format!("vertex {w} out of range for {n} vertices")));
                    }
                }
                if u == v {
                    return Err(syntax(line, format!("self-loop at {u}")));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(syntax(line, format!("duplicate edge {u} {v}")));
                }
                edges.push((u, v));
            }
            ("e", Header::Bigraph(nx, ny, _)) => {
                let x: usize = num(line, it.next(), "X index")?;
                let y: usize = num(line, it.next(), "Y index")?;
                no_more(line, it)?;
                if x >= *nx {
                    return Err(syntax(line, format!("x{x} out of range for {nx} X vertices")));
                }
                if y >= *ny {
                    return Err(syntax(line, format!("y{y} out of range for {ny} Y vertices")));
                }
                if !seen.insert((x, y)) {
                    return Err(syntax(line, format!("duplicate edge x{x} y{y}")));
                }
                edges.push((x, y));
            }
            ("i", Header::Intervals(n)) => {
                let id: usize = num(line, it.next(), "interval id")?;
                let left: i64 = num(line, it.next(), "left endpoint")?;
                let right: i64 = num(line, it.next(), "right endpoint")?;
                no_more(line, it)?;
                if id >= *n {
                    return Err(syntax(line, format!("interval id {id} out of range for {n} intervals")));
                }
                if !ids.insert(id) {
                    return Err(syntax(line, format!("interval {id} given twice")));
                }
                if left > right {
                    return Err(syntax(line, format!("interval {id} has left {left} > right {right}")));
                }
                items.push(Interval { id, left, right });
            }
            ("l", _) => {
                let name = it.next().ok_or_else(|| syntax(line, "landmark without a name"))?;
                let vertices = it.map(|t| num(line, Some(t), "landmark vertex")).collect::<Result<Vec<Vertex>, _>>()?;
                landmarks.push((line, Landmark { name: name.to_string(), vertices }));
            }
            (other, _) => return Err(syntax(line, format!("unexpected `{other}` line for this format"))),
        }
    }

    let (_, h) = head.ok_or(ParseError::NoHeader)?;
    let instance = match h {
        Header::Graph(n) => Instance::Graph(Graph::new(n, &edges).expect("edges checked per line")),
        Header::Bigraph(nx, ny, claim) => {
            let b = OrderedBipartite::new(nx, ny, &edges, claim).map_err(|source| ParseError::Claim { claim, source })?;
            Instance::Bipartite(b)
        }
        Header::Intervals(n) => {
            if items.len() != n {
                let missing = (0..n).find(|i| !ids.contains(i)).expect("fewer items than ids");
                return Err(syntax(text.lines().count().max(1), format!("interval {missing} missing")));
            }
            Instance::Intervals(IntervalFamily::new(items).expect("intervals checked per line"))
        }
    };
    let n = instance.graph().n();
    for (line, l) in &landmarks {
        if let Some(v) = l.vertices.iter().find(|&&v| v >= n) {
            return Err(syntax(*line, format!("landmark vertex {v} out of range for {n} vertices")));
        }
    }
    Ok(Document { instance, landmarks: landmarks.into_iter().map(|(_, l)| l).collect() })
}

/// Canonical text of a document.
pub fn serialize(doc: &Document) -> String {
    let mut out = String::new();
    match &doc.instance {
        Instance::Graph(g) => {
            let _ = writeln!(out, "p graph {}", g.n());
            for (u, v) in g.edges() {
                let _ = writeln!(out, "e {u} {v}");
            }
        }
        Instance::Bipartite(b) => {
            let _ = writeln!(out, "p bigraph {} {} {}", b.nx(), b.ny(), b.claim());
            for (x, y) in b.edges() {
                let _ = writeln!(out, "e {x} {y}");
            }
        }
        Instance::Intervals(f) => {
            let _ = writeln!(out, "p intervals {}", f.len());
            for it in f.items() {
                let _ = writeln!(out, "i {} {} {}", it.id, it.left, it.right);
            }
        }
    }
    for l in &doc.landmarks {
        out.push_str("l ");
        out.push_str(&l.name);
        for v in &l.vertices {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    out
}

/// Generated family as text: a `#` line naming the family and its
/// parameters, then the canonical document.
pub fn serialize_family(f: &FamilyInstance) -> String {
    let mut out = format!("# {}", f.name);
    for (k, v) in &f.params {
        let _ = write!(out, " {k}={v}");
    }
    out.push('\n');
    out + &serialize(&Document::from(f))
}
