//! Brute-force reference implementations shared by the integration tests.
//! They deliberately avoid the library's own cycle, flow and search code.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sfvs_core::generate::bounded_alpha_graph;
use sfvs_core::{Graph, ProblemInstance, ProblemKind, Vertex, VertexSet};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random graph with `α ≤ d` (union of `d` cliques plus random edges).
pub fn bounded_graph(rng: &mut ChaCha8Rng, n: usize, d: usize, wmax: u64) -> Graph {
    let p = rng.gen_range(0.0..=1.0);
    bounded_alpha_graph(rng, n, d, p, wmax).expect("valid parameters")
}

/// Each vertex independently with probability `frac`.
pub fn random_subset(rng: &mut ChaCha8Rng, n: usize, frac: f64) -> VertexSet {
    (1..=n).filter(|_| rng.gen_bool(frac)).collect()
}

pub fn mask_set(mask: u64, n: usize) -> VertexSet {
    (1..=n).filter(|v| mask >> (v - 1) & 1 == 1).collect()
}

/// Every labelled simple graph on `n` vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(Vertex, Vertex)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        Graph::new(n, edges).unwrap()
    })
}

/// Largest independent set size by subset enumeration.
pub fn brute_alpha(g: &Graph) -> usize {
    let n = g.n();
    (0u64..1 << n)
        .filter(|&m| {
            let vs = mask_set(m, n);
            let independent = vs.iter().all(|u| vs.iter().all(|v| u == v || !g.adjacent(u, v)));
            independent
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// True iff `G[keep]` has a simple cycle (length ≥ 3) through `start`,
/// found by extending simple paths from it.
fn cycle_through(g: &Graph, keep: &[bool], start: Vertex) -> bool {
    let mut on_path = vec![false; g.n() + 1];
    on_path[start] = true;
    any_cycle_through(g, keep, start, start, 1, &mut on_path)
}

fn any_cycle_through(g: &Graph, keep: &[bool], start: Vertex, at: Vertex, len: usize, on_path: &mut Vec<bool>) -> bool {
    for &u in g.neighbors(at) {
        if !keep[u] {
            continue;
        }
        if u == start && len >= 3 {
            return true;
        }
        if !on_path[u] {
            on_path[u] = true;
            let found = any_cycle_through(g, keep, start, u, len + 1, on_path);
            on_path[u] = false;
            if found {
                return true;
            }
        }
    }
    false
}

/// Naive S-forest test: no vertex of `s ∩ x` lies on a cycle of `G[x]`.
pub fn naive_is_s_forest(g: &Graph, x: &VertexSet, s: &VertexSet) -> bool {
    let keep = x.flags(g.n());
    x.iter().filter(|&v| s.contains(v)).all(|v| !cycle_through(g, &keep, v))
}

/// Naive acyclicity of `G[x]`.
pub fn naive_has_cycle(g: &Graph, x: &VertexSet) -> bool {
    !naive_is_s_forest(g, x, x)
}

/// Vertices reachable from `from` in `G[keep]`.
pub fn reach(g: &Graph, keep: &[bool], from: &VertexSet) -> Vec<bool> {
    let mut seen = vec![false; g.n() + 1];
    let mut stack: Vec<Vertex> = from.iter().filter(|&v| keep[v]).collect();
    for &v in &stack {
        seen[v] = true;
    }
    while let Some(v) = stack.pop() {
        for &u in g.neighbors(v) {
            if keep[u] && !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    seen
}

/// Naive multiway check: no kept terminal reaches another kept terminal.
pub fn naive_separates(g: &Graph, t: &VertexSet, x: &VertexSet) -> bool {
    let keep = g.complement_of(x).flags(g.n());
    t.iter().filter(|&a| keep[a]).all(|a| {
        let seen = reach(g, &keep, &VertexSet::from([a]));
        t.iter().all(|b| b == a || !seen[b])
    })
}

/// Independent feasibility test for every problem kind.
pub fn naive_feasible(inst: &ProblemInstance, x: &VertexSet) -> bool {
    let g = &inst.graph;
    let kept = g.complement_of(x);
    match inst.kind {
        ProblemKind::Wsfvs | ProblemKind::Sfvs | ProblemKind::Fvs => naive_is_s_forest(g, &kept, &inst.special),
        ProblemKind::Nmc => x.is_disjoint(&inst.special) && naive_separates(g, &inst.special, x),
        ProblemKind::Nmcdt | ProblemKind::Wnmcdt => naive_separates(g, &inst.special, x),
        ProblemKind::Vc => g.edges().all(|(u, v)| x.contains(u) || x.contains(v)),
        ProblemKind::Mis => kept.iter().all(|u| kept.iter().all(|v| u == v || !g.adjacent(u, v))),
    }
}

pub fn naive_objective(inst: &ProblemInstance, x: &VertexSet) -> u64 {
    match inst.kind {
        ProblemKind::Wsfvs | ProblemKind::Wnmcdt => inst.graph.weight_of(x),
        _ => x.len() as u64,
    }
}

/// Optimum objective by full enumeration, `None` when nothing is feasible.
pub fn brute_optimum(inst: &ProblemInstance) -> Option<u64> {
    let n = inst.graph.n();
    (0u64..1 << n)
        .map(|m| mask_set(m, n))
        .filter(|x| naive_feasible(inst, x))
        .map(|x| naive_objective(inst, &x))
        .min()
}

/// Minimum weight of a vertex set touching every edge in `edges`.
pub fn brute_cover_weight(vertices: &[Vertex], edges: &[(Vertex, Vertex)], weight: impl Fn(Vertex) -> u64) -> u64 {
    let k = vertices.len();
    (0u64..1 << k)
        .filter_map(|m| {
            let chosen: Vec<Vertex> = (0..k).filter(|i| m >> i & 1 == 1).map(|i| vertices[i]).collect();
            edges
                .iter()
                .all(|(u, v)| chosen.contains(u) || chosen.contains(v))
                .then(|| chosen.iter().map(|&v| weight(v)).sum())
        })
        .min()
        .expect("taking every vertex covers all edges")
}

/// Minimum weight of `X ⊆ V ∖ (a ∪ b ∪ forbidden)` with no `a`-`b` path in
/// `G − X`; `None` when no such set exists.
pub fn brute_separator(g: &Graph, a: &VertexSet, b: &VertexSet, forbidden: &VertexSet) -> Option<u64> {
    let n = g.n();
    (0u64..1 << n)
        .map(|m| mask_set(m, n))
        .filter(|x| x.is_disjoint(a) && x.is_disjoint(b) && x.is_disjoint(forbidden))
        .filter(|x| {
            let keep = g.complement_of(x).flags(n);
            let seen = reach(g, &keep, a);
            b.iter().all(|v| !seen[v])
        })
        .map(|x| g.weight_of(&x))
        .min()
}
