//! Line-oriented text format for problem instances and reduction sources.
//!
//! ```text
//! # comment
//! p <kind> <n> <m>
//! w <v> <weight>        optional, default 1
//! e <u> <v>             exactly m lines
//! set <v1> <v2> ...     S or T; absent means empty
//! k <budget>            optional
//! ```
//!
//! Reduction sources use kind `vc3` with `part A|B|C <ids>` lines, or kind
//! `mcis` with `class <i> <ids>` lines, in place of `w` and `set`.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::oracle::{ProblemInstance, ProblemKind};
use crate::reductions::{MulticoloredInstance, TripartiteGraph};

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn number<T: FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| err(line, format!("invalid {what} '{tok}'")))
}

#[derive(Default)]
struct RawFile {
    kind: String,
    n: usize,
    m: usize,
    weights: Vec<u64>,
    edges: Vec<(Vertex, Vertex)>,
    set: Option<(usize, VertexSet)>,
    budget: Option<u64>,
    parts: Vec<(usize, String, VertexSet)>,
    classes: Vec<(usize, usize, VertexSet)>,
    last_line: usize,
}

impl RawFile {
    fn vertex(&self, tok: &str, line: usize) -> Result<Vertex> {
        let v: Vertex = number(tok, line, "vertex id")?;
        if v == 0 || v > self.n {
            return Err(err(line, format!("vertex {v} out of range 1..{}", self.n)));
        }
        Ok(v)
    }

    fn vertex_list(&self, toks: &[&str], line: usize) -> Result<VertexSet> {
        let ids = toks
            .iter()
            .map(|t| self.vertex(t, line))
            .collect::<Result<Vec<_>>>()?;
        let set: VertexSet = ids.iter().copied().collect();
        if set.len() != ids.len() {
            return Err(err(line, "repeated vertex in list"));
        }
        Ok(set)
    }

    fn graph(&self) -> Result<Graph> {
        Graph::with_weights(self.n, self.edges.iter().copied(), &self.weights[1..])
            .map_err(|e| err(self.last_line, e.to_string()))
    }
}

fn scan(text: &str, source: bool) -> Result<RawFile> {
    let mut raw: Option<RawFile> = None;
    let mut seen_edges = HashSet::new();
    let mut weighted = HashSet::new();
    let mut last_line = 0;
    for (idx, full) in text.lines().enumerate() {
        let line = idx + 1;
        let content = full.split('#').next().unwrap_or("");
        let toks: Vec<&str> = content.split_whitespace().collect();
        let Some((&directive, args)) = toks.split_first() else {
            continue;
        };
        last_line = line;
        let Some(f) = raw.as_mut() else {
            if directive != "p" {
                return Err(err(line, "expected header line 'p <kind> <n> <m>'"));
            }
            let [kind, n, m] = args else {
                return Err(err(line, "header must be 'p <kind> <n> <m>'"));
            };
            let n: usize = number(n, line, "vertex count")?;
            raw = Some(RawFile {
                kind: kind.to_string(),
                n,
                m: number(m, line, "edge count")?,
                weights: vec![1; n + 1],
                ..RawFile::default()
            });
            continue;
        };
        match (directive, args) {
            ("p", _) => return Err(err(line, "duplicate header")),
            ("e", [u, v]) => {
                let (u, v) = (f.vertex(u, line)?, f.vertex(v, line)?);
                if u == v {
                    return Err(err(line, format!("self-loop at {u}")));
                }
                if !seen_edges.insert((u.min(v), u.max(v))) {
                    return Err(err(line, format!("duplicate edge {u}-{v}")));
                }
                if f.edges.len() == f.m {
                    return Err(err(line, format!("more than the declared {} edges", f.m)));
                }
                f.edges.push((u, v));
            }
            ("w", [v, w]) if !source => {
                let v = f.vertex(v, line)?;
                let w: u64 = number(w, line, "weight")?;
                if w < 1 {
                    return Err(err(line, format!("weight of {v} must be at least 1")));
                }
                if !weighted.insert(v) {
                    return Err(err(line, format!("weight of {v} given twice")));
                }
                f.weights[v] = w;
            }
            ("set", ids) if !source => {
                if f.set.is_some() {
                    return Err(err(line, "duplicate set line"));
                }
                f.set = Some((line, f.vertex_list(ids, line)?));
            }
            ("k", [b]) => {
                if f.budget.is_some() {
                    return Err(err(line, "duplicate budget line"));
                }
                f.budget = Some(number(b, line, "budget")?);
            }
            ("part", [label, ids @ ..]) if source => {
                let set = f.vertex_list(ids, line)?;
                f.parts.push((line, label.to_string(), set));
            }
            ("class", [i, ids @ ..]) if source => {
                let i: usize = number(i, line, "class index")?;
                let set = f.vertex_list(ids, line)?;
                f.classes.push((line, i, set));
            }
            _ => return Err(err(line, format!("unrecognised line '{}'", content.trim()))),
        }
    }
    let mut f = raw.ok_or_else(|| err(last_line.max(1), "missing header line"))?;
    if f.edges.len() != f.m {
        return Err(err(
            last_line,
            format!("header declares {} edges but {} were given", f.m, f.edges.len()),
        ));
    }
    f.last_line = last_line;
    Ok(f)
}

/// Parses an instance file. Line numbers in errors are 1-based.
pub fn parse_instance(text: &str) -> Result<ProblemInstance> {
    let f = scan(text, false)?;
    let kind: ProblemKind = f.kind.parse().map_err(|e: String| err(1, e))?;
    let graph = f.graph()?;
    let special = match (&f.set, kind) {
        (Some((line, set)), ProblemKind::Fvs) if *set != graph.vertex_set() => {
            return Err(err(*line, "fvs instances take S = V; omit the set line"));
        }
        (_, ProblemKind::Fvs) => graph.vertex_set(),
        (Some((_, set)), _) => set.clone(),
        (None, _) => VertexSet::new(),
    };
    let line = f.set.as_ref().map_or(1, |(l, _)| *l);
    ProblemInstance::new(graph, special, kind, f.budget).map_err(|e| err(line, e.to_string()))
}

/// Canonical text: sorted edges, non-unit weights only, and no set line
/// for `fvs` or an empty set.
pub fn emit_instance(inst: &ProblemInstance) -> String {
    let g = &inst.graph;
    let mut out = format!("p {} {} {}\n", inst.kind, g.n(), g.m());
    for v in g.vertices().filter(|&v| g.weight(v) != 1) {
        writeln!(out, "w {v} {}", g.weight(v)).unwrap();
    }
    write_edges(&mut out, g);
    if inst.kind != ProblemKind::Fvs && !inst.special.is_empty() {
        writeln!(out, "set {}", join(&inst.special)).unwrap();
    }
    if let Some(b) = inst.budget {
        writeln!(out, "k {b}").unwrap();
    }
    out
}

fn write_edges(out: &mut String, g: &Graph) {
    for (u, v) in g.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
}

fn join(set: &VertexSet) -> String {
    set.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

/// A parsed reduction source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SourceInstance {
    Tripartite {
        tg: TripartiteGraph,
        budget: Option<u64>,
    },
    Multicolored(MulticoloredInstance),
}

/// Parses a `vc3` or `mcis` source file. Syntax problems are
/// [`Error::Parse`]; an invalid partition is [`Error::Precondition`].
pub fn parse_source(text: &str) -> Result<SourceInstance> {
    let f = scan(text, true)?;
    let graph = f.graph()?;
    match f.kind.as_str() {
        "vc3" => {
            if let Some((line, ..)) = f.classes.first() {
                return Err(err(*line, "class lines belong in mcis files"));
            }
            let mut parts = [VertexSet::new(), VertexSet::new(), VertexSet::new()];
            let mut given = [false; 3];
            for (line, label, set) in &f.parts {
                let i = match label.as_str() {
                    "A" => 0,
                    "B" => 1,
                    "C" => 2,
                    _ => return Err(err(*line, format!("unknown part '{label}'"))),
                };
                if std::mem::replace(&mut given[i], true) {
                    return Err(err(*line, format!("part {label} given twice")));
                }
                parts[i] = set.clone();
            }
            Ok(SourceInstance::Tripartite {
                tg: TripartiteGraph::new(graph, parts)?,
                budget: f.budget,
            })
        }
        "mcis" => {
            if let Some((line, ..)) = f.parts.first() {
                return Err(err(*line, "part lines belong in vc3 files"));
            }
            let k = f.classes.len();
            let mut classes = vec![None; k];
            for (line, i, set) in &f.classes {
                if *i == 0 || *i > k {
                    return Err(err(*line, format!("class index {i} outside 1..{k}")));
                }
                if classes[i - 1].replace(set.clone()).is_some() {
                    return Err(err(*line, format!("class {i} given twice")));
                }
            }
            let classes = classes.into_iter().map(Option::unwrap).collect();
            Ok(SourceInstance::Multicolored(MulticoloredInstance::new(graph, classes)?))
        }
        other => Err(err(1, format!("unknown source kind '{other}', expected vc3 or mcis"))),
    }
}

pub fn emit_tripartite(tg: &TripartiteGraph, budget: Option<u64>) -> String {
    let mut out = format!("p vc3 {} {}\n", tg.graph.n(), tg.graph.m());
    write_edges(&mut out, &tg.graph);
    for (label, part) in ["A", "B", "C"].iter().zip(&tg.parts) {
        writeln!(out, "part {label} {}", join(part)).unwrap();
    }
    if let Some(b) = budget {
        writeln!(out, "k {b}").unwrap();
    }
    out
}

pub fn emit_multicolored(mi: &MulticoloredInstance) -> String {
    let mut out = format!("p mcis {} {}\n", mi.graph.n(), mi.graph.m());
    write_edges(&mut out, &mi.graph);
    for (i, class) in mi.classes.iter().enumerate() {
        writeln!(out, "class {} {}", i + 1, join(class)).unwrap();
    }
    out
}

/// Reads a solution: whitespace-separated removed vertex ids.
pub fn parse_solution(text: &str, n: usize) -> Result<VertexSet> {
    let mut ids = Vec::new();
    for (idx, full) in text.lines().enumerate() {
        let line = idx + 1;
        for tok in full.split('#').next().unwrap_or("").split_whitespace() {
            let v: Vertex = number(tok, line, "vertex id")?;
            if v == 0 || v > n {
                return Err(err(line, format!("vertex {v} out of range 1..{n}")));
            }
            ids.push(v);
        }
    }
    Ok(ids.into_iter().collect())
}
