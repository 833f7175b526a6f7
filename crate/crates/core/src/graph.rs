//! Simple undirected vertex-weighted graphs and the structural queries every
//! solver builds on: induced subgraphs, S-cycle detection, biconnected blocks
//! and independence-number searches.
//!
//! Vertex ids are 1-based and contiguous: a graph on `n` vertices has ids
//! `1..=n`. Graphs are immutable once built.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A 1-based vertex id.
pub type Vertex = usize;

/// A sorted, duplicate-free list of vertex ids.
///
/// The derived ordering is lexicographic on the sorted member list, which is
/// the tie-breaking order used throughout the crate.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    /// Builds a set from members that are already strictly ascending.
    pub(crate) fn from_sorted(members: Vec<Vertex>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet(members)
    }

    /// Collects the vertices whose flag is set; `flags` is indexed by vertex id.
    pub fn from_flags(flags: &[bool]) -> Self {
        VertexSet(
            flags
                .iter()
                .enumerate()
                .skip(1)
                .filter_map(|(v, &f)| f.then_some(v))
                .collect(),
        )
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + Clone + '_ {
        self.0.iter().copied()
    }

    pub fn first(&self) -> Option<Vertex> {
        self.0.first().copied()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        VertexSet(out)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| other.contains(v)).collect())
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    /// Membership flags indexed by vertex id, sized for a graph on `n` vertices.
    pub fn flags(&self, n: usize) -> Vec<bool> {
        let mut flags = vec![false; n + 1];
        for v in self.iter() {
            flags[v] = true;
        }
        flags
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut members: Vec<Vertex> = iter.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        VertexSet(members)
    }
}

impl<const N: usize> From<[Vertex; N]> for VertexSet {
    fn from(members: [Vertex; N]) -> Self {
        members.into_iter().collect()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// A simple undirected graph with positive integer vertex weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    // adj[v] sorted ascending; adj[0] unused.
    adj: Vec<Vec<Vertex>>,
    weights: Vec<u64>,
}

impl Graph {
    /// Builds a unit-weight graph. Self-loops, duplicate edges and ids outside
    /// `1..=n` are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n + 1];
        let mut m = 0;
        for (u, v) in edges {
            for x in [u, v] {
                if x == 0 || x > n {
                    return Err(Error::InvalidVertex { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
            m += 1;
        }
        for v in 1..=n {
            adj[v].sort_unstable();
            if let Some(w) = adj[v].windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(v.min(w[0]), v.max(w[0])));
            }
        }
        Ok(Graph {
            n,
            m,
            adj,
            weights: vec![1; n + 1],
        })
    }

    /// Builds a graph with explicit weights; `weights[i]` is the weight of vertex `i + 1`.
    pub fn with_weights<I>(n: usize, edges: I, weights: &[u64]) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        if weights.len() != n {
            return Err(Error::Precondition(format!(
                "expected {n} weights, got {}",
                weights.len()
            )));
        }
        let mut g = Graph::new(n, edges)?;
        for (i, &w) in weights.iter().enumerate() {
            g.set_weight(i + 1, w)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let edges = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("complete graph is simple")
    }

    pub fn empty(n: usize) -> Self {
        Graph::new(n, std::iter::empty()).expect("edgeless graph is simple")
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|v| (v, v + 1))).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Graph::new(n, (1..=n).map(|v| (v, v % n + 1))).expect("cycle is simple")
    }

    pub(crate) fn set_weight(&mut self, v: Vertex, w: u64) -> Result<()> {
        self.check_vertex(v)?;
        if w == 0 {
            return Err(Error::ZeroWeight(v));
        }
        self.weights[v] = w;
        Ok(())
    }

    /// Returns a copy with every weight set to 1.
    pub fn unit_weighted(&self) -> Graph {
        let mut g = self.clone();
        g.weights.iter_mut().for_each(|w| *w = 1);
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<Vertex> {
        1..=self.n
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet((1..=self.n).collect())
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn weight(&self, v: Vertex) -> u64 {
        self.weights[v]
    }

    /// Weights in vertex order (`[w(1), .., w(n)]`).
    pub fn weights(&self) -> &[u64] {
        &self.weights[1..]
    }

    pub fn weight_of(&self, x: &VertexSet) -> u64 {
        x.iter().map(|v| self.weights[v]).sum()
    }

    pub fn total_weight(&self) -> u64 {
        self.weights[1..].iter().sum()
    }

    pub fn has_unit_weights(&self) -> bool {
        self.weights[1..].iter().all(|&w| w == 1)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (1..=self.n).flat_map(move |u| {
            self.adj[u]
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn complement_of(&self, x: &VertexSet) -> VertexSet {
        VertexSet((1..=self.n).filter(|&v| !x.contains(v)).collect())
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::InvalidVertex { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn check_set(&self, x: &VertexSet) -> Result<()> {
        x.iter().try_for_each(|v| self.check_vertex(v))
    }

    /// Returns a graph with `extra` fresh vertices `n+1..=n+extra` appended,
    /// carrying the given weights and adjacent to the listed old vertices.
    pub(crate) fn extend(&self, additions: &[(u64, VertexSet)]) -> Result<Graph> {
        let n = self.n + additions.len();
        let mut edges: Vec<(Vertex, Vertex)> = self.edges().collect();
        let mut weights: Vec<u64> = self.weights().to_vec();
        for (i, (w, nbrs)) in additions.iter().enumerate() {
            let id = self.n + i + 1;
            edges.extend(nbrs.iter().map(|u| (u, id)));
            weights.push(*w);
        }
        Graph::with_weights(n, edges, &weights)
    }
}

/// `G[x]` together with the map from its (renumbered) vertices back to `G`.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `to_parent[i]` is the parent id of subgraph vertex `i + 1`.
    pub to_parent: Vec<Vertex>,
}

impl InducedSubgraph {
    pub fn parent(&self, v: Vertex) -> Vertex {
        self.to_parent[v - 1]
    }

    pub fn lift(&self, x: &VertexSet) -> VertexSet {
        x.iter().map(|v| self.parent(v)).collect()
    }
}

/// Induced subgraph on `x`. Vertex `x[i]` becomes `i + 1`.
pub fn induced_subgraph(g: &Graph, x: &VertexSet) -> Result<InducedSubgraph> {
    g.check_set(x)?;
    let mut local = vec![0; g.n + 1];
    for (i, v) in x.iter().enumerate() {
        local[v] = i + 1;
    }
    let mut edges = Vec::new();
    for u in x.iter() {
        for &v in g.neighbors(u) {
            if v > u && local[v] != 0 {
                edges.push((local[u], local[v]));
            }
        }
    }
    let weights: Vec<u64> = x.iter().map(|v| g.weight(v)).collect();
    Ok(InducedSubgraph {
        graph: Graph::with_weights(x.len(), edges, &weights)?,
        to_parent: x.as_slice().to_vec(),
    })
}

pub fn neighborhood(g: &Graph, x: &VertexSet, closed: bool) -> VertexSet {
    let mut flags = vec![false; g.n + 1];
    for v in x.iter() {
        for &u in g.neighbors(v) {
            flags[u] = true;
        }
    }
    for v in x.iter() {
        flags[v] = closed;
    }
    VertexSet::from_flags(&flags)
}

/// True iff no cycle of `G[x]` passes through a vertex of `s`.
///
/// Panics if `x` or `s` contain ids outside the graph.
pub fn is_s_forest(g: &Graph, x: &VertexSet, s: &VertexSet) -> bool {
    !has_s_cycle(g, &x.flags(g.n), &s.flags(g.n))
}

/// Flag-based core of [`is_s_forest`]. A vertex lies on a cycle of `G[keep]`
/// exactly when it is incident to a non-bridge edge, so one low-link pass
/// over `G[keep]` decides the question.
pub(crate) fn has_s_cycle(g: &Graph, keep: &[bool], special: &[bool]) -> bool {
    let n = g.n;
    let mut disc = vec![0usize; n + 1];
    let mut low = vec![0usize; n + 1];
    let mut timer = 0;
    // (vertex, dfs parent or 0, next neighbor index)
    let mut stack: Vec<(Vertex, Vertex, usize)> = Vec::new();
    for root in 1..=n {
        if !keep[root] || disc[root] != 0 {
            continue;
        }
        timer += 1;
        disc[root] = timer;
        low[root] = timer;
        stack.push((root, 0, 0));
        while let Some(top) = stack.last_mut() {
            let (v, parent, idx) = *top;
            if idx < g.adj[v].len() {
                top.2 += 1;
                let u = g.adj[v][idx];
                if !keep[u] || u == parent {
                    continue;
                }
                if disc[u] == 0 {
                    timer += 1;
                    disc[u] = timer;
                    low[u] = timer;
                    stack.push((u, v, 0));
                } else if disc[u] < disc[v] {
                    // back edge: always on a cycle
                    if special[u] || special[v] {
                        return true;
                    }
                    low[v] = low[v].min(disc[u]);
                }
            } else {
                stack.pop();
                if parent != 0 {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] <= disc[parent] && (special[v] || special[parent]) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Biconnected components of a graph together with its bridges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Edge-induced blocks, ordered by their sorted member lists. Isolated
    /// vertices belong to no block.
    pub blocks: Vec<VertexSet>,
    pub bridges: Vec<(Vertex, Vertex)>,
}

pub fn block_decomposition(g: &Graph) -> BlockDecomposition {
    let n = g.n;
    let mut disc = vec![0usize; n + 1];
    let mut low = vec![0usize; n + 1];
    let mut timer = 0;
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
    let mut blocks: Vec<(VertexSet, usize)> = Vec::new();
    let mut stack: Vec<(Vertex, Vertex, usize)> = Vec::new();
    for root in 1..=n {
        if disc[root] != 0 {
            continue;
        }
        timer += 1;
        disc[root] = timer;
        low[root] = timer;
        stack.push((root, 0, 0));
        while let Some(top) = stack.last_mut() {
            let (v, parent, idx) = *top;
            if idx < g.adj[v].len() {
                top.2 += 1;
                let u = g.adj[v][idx];
                if u == parent {
                    continue;
                }
                if disc[u] == 0 {
                    edge_stack.push((v, u));
                    timer += 1;
                    disc[u] = timer;
                    low[u] = timer;
                    stack.push((u, v, 0));
                } else if disc[u] < disc[v] {
                    edge_stack.push((v, u));
                    low[v] = low[v].min(disc[u]);
                }
            } else {
                stack.pop();
                if parent != 0 {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] >= disc[parent] {
                        let mut members = Vec::new();
                        let mut edges = 0;
                        while let Some((a, b)) = edge_stack.pop() {
                            members.push(a);
                            members.push(b);
                            edges += 1;
                            if (a, b) == (parent, v) {
                                break;
                            }
                        }
                        blocks.push((members.into_iter().collect(), edges));
                    }
                }
            }
        }
    }
    let mut bridges: Vec<(Vertex, Vertex)> = blocks
        .iter()
        .filter(|(_, edges)| *edges == 1)
        .map(|(b, _)| (b.0[0], b.0[1]))
        .collect();
    bridges.sort_unstable();
    let mut blocks: Vec<VertexSet> = blocks.into_iter().map(|(b, _)| b).collect();
    blocks.sort();
    BlockDecomposition { blocks, bridges }
}

/// Connected components of `G[keep]`, each sorted, ordered by smallest member.
pub(crate) fn components(g: &Graph, keep: &[bool]) -> Vec<VertexSet> {
    let mut seen = vec![false; g.n + 1];
    let mut out = Vec::new();
    let mut queue = Vec::new();
    for start in 1..=g.n {
        if !keep[start] || seen[start] {
            continue;
        }
        seen[start] = true;
        queue.clear();
        queue.push(start);
        let mut comp = Vec::new();
        while let Some(v) = queue.pop() {
            comp.push(v);
            for &u in g.neighbors(v) {
                if keep[u] && !seen[u] {
                    seen[u] = true;
                    queue.push(u);
                }
            }
        }
        out.push(comp.into_iter().collect());
    }
    out
}

/// The lexicographically first independent set of exactly `size` vertices, if any.
pub fn find_independent_set(g: &Graph, size: usize) -> Option<VertexSet> {
    fn grow(g: &Graph, chosen: &mut Vec<Vertex>, candidates: &[Vertex], size: usize) -> bool {
        if chosen.len() == size {
            return true;
        }
        for (i, &v) in candidates.iter().enumerate() {
            if chosen.len() + candidates.len() - i < size {
                return false;
            }
            let next: Vec<Vertex> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&u| !g.adjacent(u, v))
                .collect();
            chosen.push(v);
            if grow(g, chosen, &next, size) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let all: Vec<Vertex> = g.vertices().collect();
    let mut chosen = Vec::with_capacity(size);
    grow(g, &mut chosen, &all, size).then(|| VertexSet::from_sorted(chosen))
}

/// True iff `α(g) ≤ d`, i.e. `g` has no induced `(d+1)K1`.
pub fn independence_at_most(g: &Graph, d: usize) -> bool {
    find_independent_set(g, d + 1).is_none()
}

/// Checks `α(g) ≤ d`, returning the offending independent set on failure.
pub fn require_independence_at_most(g: &Graph, d: usize) -> Result<()> {
    match find_independent_set(g, d + 1) {
        None => Ok(()),
        Some(witness) => Err(Error::IndependenceBound { bound: d, witness }),
    }
}

/// A maximum independent set; among those, the lexicographically smallest.
pub fn max_independent_set(g: &Graph) -> VertexSet {
    struct Search<'a> {
        g: &'a Graph,
        chosen: Vec<Vertex>,
        best: Vec<Vertex>,
    }
    impl Search<'_> {
        // Include-first branching visits sets in lexicographic order, so
        // only strictly larger sets replace the incumbent.
        fn run(&mut self, candidates: &[Vertex]) {
            if self.chosen.len() > self.best.len() {
                self.best = self.chosen.clone();
            }
            for (i, &v) in candidates.iter().enumerate() {
                if self.chosen.len() + candidates.len() - i <= self.best.len() {
                    return;
                }
                let next: Vec<Vertex> = candidates[i + 1..]
                    .iter()
                    .copied()
                    .filter(|&u| !self.g.adjacent(u, v))
                    .collect();
                self.chosen.push(v);
                self.run(&next);
                self.chosen.pop();
            }
        }
    }
    let all: Vec<Vertex> = g.vertices().collect();
    let mut search = Search {
        g,
        chosen: Vec::new(),
        best: Vec::new(),
    };
    search.run(&all);
    VertexSet::from_sorted(search.best)
}
