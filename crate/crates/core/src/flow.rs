//! Integral max-flow / min-cut (Dinic) and the two solvers derived from it:
//! minimum-weight vertex cover in bipartite graphs and minimum-weight vertex
//! separators via node splitting.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Capacity {
    Finite(u64),
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub capacity: Capacity,
}

/// A directed capacitated network on nodes `0..node_count`.
#[derive(Clone, Debug)]
pub struct FlowNetwork {
    node_count: usize,
    arcs: Vec<Arc>,
    source: usize,
    sink: usize,
}

impl FlowNetwork {
    pub fn new(node_count: usize, source: usize, sink: usize) -> Result<Self> {
        if source >= node_count || sink >= node_count {
            return Err(Error::Precondition(format!(
                "source {source} / sink {sink} outside 0..{node_count}"
            )));
        }
        if source == sink {
            return Err(Error::Precondition("source equals sink".into()));
        }
        Ok(FlowNetwork {
            node_count,
            arcs: Vec::new(),
            source,
            sink,
        })
    }

    pub fn add_arc(&mut self, from: usize, to: usize, capacity: Capacity) -> Result<()> {
        if from >= self.node_count || to >= self.node_count {
            return Err(Error::Precondition(format!(
                "arc {from}->{to} outside 0..{}",
                self.node_count
            )));
        }
        self.arcs.push(Arc { from, to, capacity });
        Ok(())
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    /// Capacity standing in for "infinite": one more than every finite arc together.
    fn infinity(&self) -> u64 {
        1 + self
            .arcs
            .iter()
            .map(|a| match a.capacity {
                Capacity::Finite(c) => c,
                Capacity::Infinite => 0,
            })
            .sum::<u64>()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxFlow {
    pub value: u64,
    /// Arcs leaving the source side of the residual network.
    pub min_cut: Vec<Arc>,
    /// `source_side[v]` is true iff `v` is reachable from the source in the
    /// final residual network.
    pub source_side: Vec<bool>,
}

impl MaxFlow {
    pub fn cut_capacity(&self) -> u64 {
        self.min_cut
            .iter()
            .map(|a| match a.capacity {
                Capacity::Finite(c) => c,
                Capacity::Infinite => u64::MAX,
            })
            .fold(0u64, u64::saturating_add)
    }
}

struct Residual {
    head: Vec<usize>,
    cap: Vec<u64>,
    // adjacency lists of residual edge ids, in insertion order
    out: Vec<Vec<usize>>,
}

impl Residual {
    fn build(net: &FlowNetwork, inf: u64) -> Self {
        let mut r = Residual {
            head: Vec::with_capacity(2 * net.arcs.len()),
            cap: Vec::with_capacity(2 * net.arcs.len()),
            out: vec![Vec::new(); net.node_count],
        };
        for a in &net.arcs {
            let c = match a.capacity {
                Capacity::Finite(c) => c,
                Capacity::Infinite => inf,
            };
            r.out[a.from].push(r.head.len());
            r.head.push(a.to);
            r.cap.push(c);
            r.out[a.to].push(r.head.len());
            r.head.push(a.from);
            r.cap.push(0);
        }
        r
    }

    fn levels(&self, source: usize) -> Vec<usize> {
        let mut level = vec![usize::MAX; self.out.len()];
        level[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.out[v] {
                let u = self.head[e];
                if self.cap[e] > 0 && level[u] == usize::MAX {
                    level[u] = level[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        level
    }

    fn augment(&mut self, v: usize, sink: usize, limit: u64, level: &[usize], next: &mut [usize]) -> u64 {
        if v == sink {
            return limit;
        }
        while next[v] < self.out[v].len() {
            let e = self.out[v][next[v]];
            let u = self.head[e];
            if self.cap[e] > 0 && level[u] == level[v] + 1 {
                let pushed = self.augment(u, sink, limit.min(self.cap[e]), level, next);
                if pushed > 0 {
                    self.cap[e] -= pushed;
                    self.cap[e ^ 1] += pushed;
                    return pushed;
                }
            }
            next[v] += 1;
        }
        0
    }
}

/// Maximum flow with a minimum cut read off the final residual network.
///
/// Arcs are explored in insertion order, so the result is deterministic.
pub fn max_flow(net: &FlowNetwork) -> Result<MaxFlow> {
    let inf = net.infinity();
    let mut res = Residual::build(net, inf);
    let mut value: u64 = 0;
    loop {
        let level = res.levels(net.source);
        if level[net.sink] == usize::MAX {
            break;
        }
        let mut next = vec![0; net.node_count];
        loop {
            let pushed = res.augment(net.source, net.sink, u64::MAX, &level, &mut next);
            if pushed == 0 {
                break;
            }
            value += pushed;
            if value >= inf {
                return Err(Error::UnboundedFlow);
            }
        }
    }
    let source_side: Vec<bool> = res
        .levels(net.source)
        .into_iter()
        .map(|l| l != usize::MAX)
        .collect();
    let min_cut = net
        .arcs
        .iter()
        .filter(|a| source_side[a.from] && !source_side[a.to] && a.capacity != Capacity::Finite(0))
        .copied()
        .collect();
    Ok(MaxFlow {
        value,
        min_cut,
        source_side,
    })
}

/// Bipartite cover problem with per-vertex constraints, solved as a cut.
struct CoverNetwork<'a> {
    left: &'a [Vertex],
    right: &'a [Vertex],
    edges: Vec<(usize, usize)>, // (left index, right index)
    weights: Vec<u64>,          // left then right
}

impl CoverNetwork<'_> {
    /// Minimum cover weight when `forced[i] = Some(true)` vertices must be in
    /// the cover and `Some(false)` ones must stay out. `None` if no cover
    /// satisfies the constraints.
    fn min_weight(&self, forced: &[Option<bool>]) -> Option<u64> {
        let nl = self.left.len();
        let nodes = nl + self.right.len() + 2;
        let (src, snk) = (nodes - 2, nodes - 1);
        let mut net = FlowNetwork::new(nodes, src, snk).expect("valid endpoints");
        let mut fixed = 0;
        for i in 0..nodes - 2 {
            let cap = match forced[i] {
                Some(true) => {
                    fixed += self.weights[i];
                    Capacity::Finite(0)
                }
                Some(false) => Capacity::Infinite,
                None => Capacity::Finite(self.weights[i]),
            };
            if i < nl {
                net.add_arc(src, i, cap).expect("in range");
            } else {
                net.add_arc(i, snk, cap).expect("in range");
            }
        }
        for &(a, b) in &self.edges {
            net.add_arc(a, nl + b, Capacity::Infinite).expect("in range");
        }
        match max_flow(&net) {
            Ok(f) => Some(f.value + fixed),
            Err(_) => None,
        }
    }
}

/// Minimum-weight vertex cover of the bipartite graph `(left, right, cross_edges)`.
///
/// Among minimum covers the lexicographically smallest member list is
/// returned. Edges may be given in either orientation.
pub fn min_weight_bipartite_vertex_cover<W>(
    left: &VertexSet,
    right: &VertexSet,
    cross_edges: &[(Vertex, Vertex)],
    weight: W,
) -> Result<VertexSet>
where
    W: Fn(Vertex) -> u64,
{
    if !left.is_disjoint(right) {
        return Err(Error::Precondition("bipartition sides overlap".into()));
    }
    let mut edges = Vec::with_capacity(cross_edges.len());
    for &(u, v) in cross_edges {
        let (a, b) = if left.contains(u) && right.contains(v) {
            (u, v)
        } else if left.contains(v) && right.contains(u) {
            (v, u)
        } else {
            return Err(Error::Precondition(format!("edge {u}-{v} does not cross the bipartition")));
        };
        let ai = left.as_slice().binary_search(&a).expect("member");
        let bi = right.as_slice().binary_search(&b).expect("member");
        edges.push((ai, bi));
    }
    let net = CoverNetwork {
        left: left.as_slice(),
        right: right.as_slice(),
        weights: left.iter().chain(right.iter()).map(&weight).collect(),
        edges,
    };
    let total = net.left.len() + net.right.len();
    let mut forced = vec![None; total];
    let best = net.min_weight(&forced).expect("unconstrained cover exists");

    let mut incident = vec![false; total];
    for &(a, b) in &net.edges {
        incident[a] = true;
        incident[net.left.len() + b] = true;
    }
    // Greedy in ascending id order: a vertex joins the cover whenever some
    // optimal cover agrees with all earlier decisions and contains it.
    let mut order: Vec<(Vertex, usize)> = net
        .left
        .iter()
        .chain(net.right.iter())
        .copied()
        .zip(0..)
        .collect();
    order.sort_unstable();
    for (_, i) in order {
        if !incident[i] {
            forced[i] = Some(false);
            continue;
        }
        forced[i] = Some(true);
        if net.min_weight(&forced) != Some(best) {
            forced[i] = Some(false);
        }
    }
    let cover: VertexSet = net
        .left
        .iter()
        .chain(net.right.iter())
        .zip(&forced)
        .filter(|(_, f)| **f == Some(true))
        .map(|(&v, _)| v)
        .collect();
    debug_assert_eq!(cover.iter().map(&weight).sum::<u64>(), best);
    Ok(cover)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Separation {
    Cut(VertexSet),
    /// Some `s_side` vertex reaches a `t_side` vertex through protected vertices only.
    Infeasible,
}

/// Minimum-weight vertex set outside `s_side ∪ t_side ∪ forbidden` whose
/// removal leaves no path from `s_side` to `t_side`.
pub fn min_vertex_separator(
    g: &Graph,
    s_side: &VertexSet,
    t_side: &VertexSet,
    forbidden: &VertexSet,
) -> Result<Separation> {
    for x in [s_side, t_side, forbidden] {
        g.check_set(x)?;
    }
    if !s_side.is_disjoint(t_side) || !s_side.is_disjoint(forbidden) || !t_side.is_disjoint(forbidden) {
        return Err(Error::Precondition(
            "separator sides and forbidden set must be pairwise disjoint".into(),
        ));
    }
    let n = g.n();
    let (src, snk) = (2 * n, 2 * n + 1);
    let v_in = |v: Vertex| 2 * (v - 1);
    let v_out = |v: Vertex| 2 * (v - 1) + 1;
    let mut net = FlowNetwork::new(2 * n + 2, src, snk)?;
    for v in g.vertices() {
        let protected = s_side.contains(v) || t_side.contains(v) || forbidden.contains(v);
        let cap = if protected {
            Capacity::Infinite
        } else {
            Capacity::Finite(g.weight(v))
        };
        net.add_arc(v_in(v), v_out(v), cap)?;
    }
    for (u, v) in g.edges() {
        net.add_arc(v_out(u), v_in(v), Capacity::Infinite)?;
        net.add_arc(v_out(v), v_in(u), Capacity::Infinite)?;
    }
    for s in s_side.iter() {
        net.add_arc(src, v_in(s), Capacity::Infinite)?;
    }
    for t in t_side.iter() {
        net.add_arc(v_out(t), snk, Capacity::Infinite)?;
    }
    match max_flow(&net) {
        Err(Error::UnboundedFlow) => Ok(Separation::Infeasible),
        Err(e) => Err(e),
        Ok(flow) => Ok(Separation::Cut(
            g.vertices()
                .filter(|&v| flow.source_side[v_in(v)] && !flow.source_side[v_out(v)])
                .collect(),
        )),
    }
}
