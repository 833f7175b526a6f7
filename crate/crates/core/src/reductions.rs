//! Instance generators for the hardness reductions, each paired with a
//! verifier that solves both sides exhaustively and checks the claimed
//! correspondence of optima.
//!
//! Fresh vertices are appended after the source vertices in a fixed order:
//! `r_A, r_B, r_C, s` for vertex cover reductions and `x_1, y_1, .., x_k,
//! y_k, z` for the multicolored independent set reduction.

use std::fmt::Write as _;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::{self, Graph, Vertex, VertexSet};
use crate::oracle::{self, ProblemInstance, ProblemKind};

/// A graph with a partition of its vertices into three independent sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripartiteGraph {
    pub graph: Graph,
    pub parts: [VertexSet; 3],
}

impl TripartiteGraph {
    pub fn new(graph: Graph, parts: [VertexSet; 3]) -> Result<Self> {
        check_partition(&graph, &parts)?;
        for (label, part) in ["A", "B", "C"].iter().zip(&parts) {
            if let Some((u, v)) = part
                .iter()
                .tuple_combinations()
                .find(|&(u, v)| graph.adjacent(u, v))
            {
                return Err(Error::Precondition(format!(
                    "part {label} is not independent: edge {u}-{v}"
                )));
            }
        }
        Ok(TripartiteGraph { graph, parts })
    }
}

/// A graph with its vertices partitioned into `k ≥ 1` colour classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulticoloredInstance {
    pub graph: Graph,
    pub classes: Vec<VertexSet>,
}

impl MulticoloredInstance {
    pub fn new(graph: Graph, classes: Vec<VertexSet>) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::Precondition("at least one colour class is required".into()));
        }
        check_partition(&graph, &classes)?;
        Ok(MulticoloredInstance { graph, classes })
    }

    pub fn k(&self) -> usize {
        self.classes.len()
    }
}

fn check_partition(g: &Graph, parts: &[VertexSet]) -> Result<()> {
    let mut owner = vec![usize::MAX; g.n() + 1];
    for (i, part) in parts.iter().enumerate() {
        g.check_set(part)?;
        for v in part.iter() {
            if owner[v] != usize::MAX {
                return Err(Error::Precondition(format!("vertex {v} lies in two parts")));
            }
            owner[v] = i;
        }
    }
    if let Some(v) = g.vertices().find(|&v| owner[v] == usize::MAX) {
        return Err(Error::Precondition(format!("vertex {v} lies in no part")));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionKind {
    /// Tripartite vertex cover to weighted SFVS on `α ≤ 4` graphs.
    Vc3ToWsfvs,
    /// Tripartite vertex cover to node multiway cut on `α ≤ 3` graphs.
    Vc3ToNmc,
    /// Multicolored independent set to feedback vertex set.
    McisToFvs,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOutput {
    pub kind: ReductionKind,
    pub instance: ProblemInstance,
    pub source_vertices: usize,
    /// Number of colour classes for [`ReductionKind::McisToFvs`], 0 otherwise.
    pub source_classes: usize,
    /// Added vertices as `(role, id)` in creation order.
    pub roles: Vec<(String, Vertex)>,
}

impl ReductionOutput {
    pub fn role(&self, name: &str) -> Option<Vertex> {
        self.roles.iter().find(|(r, _)| r == name).map(|&(_, v)| v)
    }

    /// Sidecar mapping file: one `role id` pair per line.
    pub fn mapping_text(&self) -> String {
        let mut out = String::new();
        for (role, v) in &self.roles {
            writeln!(out, "{role} {v}").expect("writing to a String");
        }
        out
    }
}

/// Completes each part into a clique and hangs one apex over each part.
fn cliques_with_apexes(tg: &TripartiteGraph, apex_weight: u64) -> Result<(Graph, [Vertex; 3])> {
    let n = tg.graph.n();
    let mut edges: Vec<(Vertex, Vertex)> = tg.graph.edges().collect();
    for part in &tg.parts {
        edges.extend(part.iter().tuple_combinations::<(Vertex, Vertex)>());
    }
    let apexes = [n + 1, n + 2, n + 3];
    for (apex, part) in apexes.iter().zip(&tg.parts) {
        edges.extend(part.iter().map(|v| (v, *apex)));
    }
    let mut weights = vec![1; n];
    weights.extend([apex_weight; 3]);
    Ok((Graph::with_weights(n + 3, edges, &weights)?, apexes))
}

fn check_budget(k: Option<u64>, n: usize) -> Result<()> {
    match k {
        Some(k) if n > 0 && k >= n as u64 => Err(Error::Precondition(format!(
            "budget {k} must be below the source vertex count {n}"
        ))),
        _ => Ok(()),
    }
}

/// Tripartite vertex cover to weighted subset feedback vertex set with `S = {s}`.
///
/// Parts become cliques with unit weights; apexes `r_A, r_B, r_C` of weight
/// `n` see their part; `s` of weight `n` sees the three apexes.
pub fn reduce_vc3_to_wsfvs(tg: &TripartiteGraph, k: Option<u64>) -> Result<ReductionOutput> {
    let n = tg.graph.n();
    check_budget(k, n)?;
    let (base, apexes) = cliques_with_apexes(tg, n.max(1) as u64)?;
    let s = n + 4;
    let g = base.extend(&[(n.max(1) as u64, apexes.into_iter().collect())])?;
    if g.n() != n + 4 {
        return Err(Error::Internal(format!("reduced graph has {} vertices, expected {}", g.n(), n + 4)));
    }
    if let Some(w) = graph::find_independent_set(&g, 5) {
        return Err(Error::Internal(format!("reduced graph has independent set {w}")));
    }
    let instance = ProblemInstance::new(g, VertexSet::from([s]), ProblemKind::Wsfvs, k)?;
    Ok(ReductionOutput {
        kind: ReductionKind::Vc3ToWsfvs,
        instance,
        source_vertices: n,
        source_classes: 0,
        roles: vec![
            ("r_A".into(), apexes[0]),
            ("r_B".into(), apexes[1]),
            ("r_C".into(), apexes[2]),
            ("s".into(), s),
        ],
    })
}

/// Tripartite vertex cover to node multiway cut with terminals `r_A, r_B, r_C`.
pub fn reduce_vc3_to_nmc(tg: &TripartiteGraph, k: Option<u64>) -> Result<ReductionOutput> {
    let n = tg.graph.n();
    let (g, apexes) = cliques_with_apexes(tg, 1)?;
    if let Some(w) = graph::find_independent_set(&g, 4) {
        return Err(Error::Internal(format!("reduced graph has independent set {w}")));
    }
    let instance = ProblemInstance::new(g, apexes.into_iter().collect(), ProblemKind::Nmc, k)?;
    Ok(ReductionOutput {
        kind: ReductionKind::Vc3ToNmc,
        instance,
        source_vertices: n,
        source_classes: 0,
        roles: vec![
            ("r_A".into(), apexes[0]),
            ("r_B".into(), apexes[1]),
            ("r_C".into(), apexes[2]),
        ],
    })
}

/// Multicolored independent set to feedback vertex set with budget `n − k`.
///
/// Classes become cliques, each gets two private vertices `x_i, y_i` seeing
/// the whole class, and `z` sees every source vertex.
pub fn reduce_mcis_to_fvs(mi: &MulticoloredInstance) -> Result<ReductionOutput> {
    let n = mi.graph.n();
    let k = mi.k();
    let mut edges: Vec<(Vertex, Vertex)> = mi.graph.edges().collect();
    let mut roles = Vec::with_capacity(2 * k + 1);
    let mut cover: Vec<VertexSet> = Vec::with_capacity(2 * k + 1);
    for (i, class) in mi.classes.iter().enumerate() {
        edges.extend(
            class
                .iter()
                .tuple_combinations::<(Vertex, Vertex)>()
                .filter(|&(u, v)| !mi.graph.adjacent(u, v)),
        );
        let (x, y) = (n + 2 * i + 1, n + 2 * i + 2);
        edges.extend(class.iter().flat_map(|v| [(v, x), (v, y)]));
        roles.push((format!("x_{}", i + 1), x));
        roles.push((format!("y_{}", i + 1), y));
        cover.push(class.union(&VertexSet::from([x])));
        cover.push(VertexSet::from([y]));
    }
    let z = n + 2 * k + 1;
    edges.extend(mi.graph.vertices().map(|v| (v, z)));
    roles.push(("z".into(), z));
    cover.push(VertexSet::from([z]));
    let h = Graph::new(z, edges)?;

    if h.n() != n + 2 * k + 1 {
        return Err(Error::Internal(format!("H has {} vertices, expected {}", h.n(), n + 2 * k + 1)));
    }
    let covers_exactly = cover.iter().map(VertexSet::len).sum::<usize>() == h.n()
        && cover.iter().fold(VertexSet::new(), |acc, c| acc.union(c)) == h.vertex_set()
        && cover.iter().all(|c| c.iter().tuple_combinations().all(|(u, v)| h.adjacent(u, v)));
    if !covers_exactly {
        return Err(Error::Internal("class cliques do not partition H".into()));
    }
    if h.n() <= oracle::DEFAULT_ORACLE_LIMIT && !oracle::oracle_clique_cover_at_most(&h, 2 * k + 1) {
        return Err(Error::Internal(format!("H has no clique cover of size {}", 2 * k + 1)));
    }
    let budget = (n as u64).saturating_sub(k as u64);
    Ok(ReductionOutput {
        kind: ReductionKind::McisToFvs,
        instance: ProblemInstance::fvs(h, Some(budget)),
        source_vertices: n,
        source_classes: k,
        roles,
    })
}

/// Minimum vertex cover size of the source graph, by exhaustive search.
pub fn vertex_cover_number(g: &Graph) -> Result<u64> {
    let inst = ProblemInstance::new(g.clone(), VertexSet::new(), ProblemKind::Vc, None)?;
    Ok(oracle::oracle_solve(&inst)?.objective)
}

/// Largest independent set using at most one vertex per class.
pub fn max_multicolored_independent_set(mi: &MulticoloredInstance) -> usize {
    fn go(mi: &MulticoloredInstance, i: usize, chosen: &mut Vec<Vertex>, best: &mut usize) {
        if chosen.len() + (mi.k() - i) <= *best {
            return;
        }
        if i == mi.k() {
            *best = chosen.len();
            return;
        }
        for v in mi.classes[i].iter() {
            if chosen.iter().all(|&u| !mi.graph.adjacent(u, v)) {
                chosen.push(v);
                go(mi, i + 1, chosen, best);
                chosen.pop();
            }
        }
        go(mi, i + 1, chosen, best);
    }
    let mut best = 0;
    go(mi, 0, &mut Vec::new(), &mut best);
    best
}

/// Solves the reduced instance exhaustively and checks it against the
/// source optimum: the minimum vertex cover size for the vertex cover
/// reductions, the largest partial multicolored independent set for the
/// multicolored reduction.
pub fn verify_reduction(out: &ReductionOutput, source_opt: u64) -> Result<bool> {
    let reduced = oracle::oracle_solve(&out.instance)?;
    if !reduced.feasible {
        return Ok(false);
    }
    let n = out.source_vertices as u64;
    Ok(match out.kind {
        // heavy apexes are never worth removing, so optima coincide
        ReductionKind::Vc3ToWsfvs => reduced.objective == source_opt && (n == 0 || reduced.objective < n),
        ReductionKind::Vc3ToNmc => reduced.objective == source_opt,
        ReductionKind::McisToFvs => {
            let k = out.source_classes as u64;
            (source_opt == k) == (reduced.objective <= n.saturating_sub(k))
        }
    })
}
