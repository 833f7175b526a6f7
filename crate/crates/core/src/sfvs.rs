//! Subset feedback vertex set solvers for graphs of bounded independence
//! number.
//!
//! [`solve_wsfvs_alpha3`] handles the weighted problem in polynomial time
//! when `α(G) ≤ 3`. It guesses the part `S≤1` of an optimal S-forest lying
//! within distance one of its kept S-vertices, guesses how each of the (at
//! most two) remaining components attaches to that part, and completes the
//! forest greedily (one component) or through a bipartite vertex cover (two
//! components).
//!
//! [`solve_sfvs_xp`] handles the unweighted problem for any fixed bound
//! `α(G) ≤ d` by enumerating the at most `2d` kept S-vertices and the at
//! most `2d` removed non-S vertices.

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::flow::min_weight_bipartite_vertex_cover;
use crate::graph::{self, Graph, Vertex, VertexSet};
use crate::oracle::Solution;

/// An S-forest split into the closed neighbourhood of its kept S-vertices
/// (`s1`) and the components further away.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SDistancePartition {
    pub s1: VertexSet,
    /// `s1 ∩ S`.
    pub kept_s: VertexSet,
    pub far_components: Vec<VertexSet>,
}

impl SDistancePartition {
    /// All vertices of the forest.
    pub fn vertices(&self) -> VertexSet {
        self.far_components
            .iter()
            .fold(self.s1.clone(), |acc, c| acc.union(c))
    }
}

/// Attachment sets `(A_1, .., A_d')`: far component `i` may only touch `s1`
/// inside `parts[i]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CutTuple {
    pub parts: Vec<VertexSet>,
}

/// Vertices outside `s1 ∪ S` whose neighbours in `s1` lie inside `A_1`
/// (resp. `A_2`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutCandidateSets {
    pub b1: VertexSet,
    pub b2: Option<VertexSet>,
}

/// Size cap applied to `S≤1` candidates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CandidateBound {
    /// `4d − 2` while at most `2d − 2` S-vertices are kept, `2d` otherwise.
    #[default]
    Tight,
    /// `4d` throughout; only useful for differential testing.
    Wide,
}

impl CandidateBound {
    pub fn cap(self, d: usize, kept_s: usize) -> usize {
        match self {
            CandidateBound::Wide => 4 * d,
            CandidateBound::Tight if kept_s + 2 <= 2 * d => 4 * d - 2,
            CandidateBound::Tight => 2 * d,
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Alpha3Options {
    pub bound: CandidateBound,
}

/// Candidate sets for `S≤1`: every `X ⊆ N[S]` whose S-part has at most `2d`
/// vertices, whose other vertices all neighbour that S-part, that respects
/// the size cap and that induces an S-forest. The empty set comes first.
pub fn enumerate_s1_candidates(g: &Graph, s: &VertexSet, d: usize, bound: CandidateBound) -> Vec<VertexSet> {
    let mut out = vec![VertexSet::new()];
    let special = s.flags(g.n());
    for r in 1..=s.len().min(2 * d) {
        let cap = bound.cap(d, r);
        if r > cap {
            continue;
        }
        for core in s.iter().combinations(r) {
            let core: VertexSet = core.into_iter().collect();
            let mut keep = core.flags(g.n());
            if graph::has_s_cycle(g, &keep, &special) {
                continue;
            }
            let ring: Vec<Vertex> = graph::neighborhood(g, &core, false)
                .iter()
                .filter(|&v| !special[v])
                .collect();
            let mut chosen = Vec::new();
            extend_candidate(g, &special, &core, &ring, cap - r, &mut keep, &mut chosen, &mut out);
        }
    }
    out
}

// S-forests are closed under taking induced subgraphs, so a failing prefix
// prunes its whole subtree.
#[allow(clippy::too_many_arguments)]
fn extend_candidate(
    g: &Graph,
    special: &[bool],
    core: &VertexSet,
    ring: &[Vertex],
    room: usize,
    keep: &mut Vec<bool>,
    chosen: &mut Vec<Vertex>,
    out: &mut Vec<VertexSet>,
) {
    out.push(core.union(&VertexSet::from_sorted(chosen.clone())));
    if room == 0 {
        return;
    }
    for (i, &v) in ring.iter().enumerate() {
        keep[v] = true;
        if !graph::has_s_cycle(g, keep, special) {
            chosen.push(v);
            extend_candidate(g, special, core, &ring[i + 1..], room - 1, keep, chosen, out);
            chosen.pop();
        }
        keep[v] = false;
    }
}

/// `G[x]` plus one proxy vertex per tuple part, adjacent to exactly that part.
#[derive(Clone, Debug)]
pub struct HatGraph {
    /// Vertices `1..=|x|` are the members of `x` in order; proxies follow.
    pub graph: Graph,
    /// The S-vertices of `x`, renumbered.
    pub s: VertexSet,
    pub to_parent: Vec<Vertex>,
}

impl HatGraph {
    pub fn is_s_forest(&self) -> bool {
        graph::is_s_forest(&self.graph, &self.graph.vertex_set(), &self.s)
    }
}

pub fn build_hat_graph(g: &Graph, s: &VertexSet, x: &VertexSet, t: &CutTuple) -> Result<HatGraph> {
    for part in &t.parts {
        if !part.is_subset(x) || !part.is_disjoint(s) {
            return Err(Error::Precondition(format!("tuple part {part} is not inside x∖S")));
        }
    }
    let sub = graph::induced_subgraph(g, x)?;
    let local = |v: Vertex| x.as_slice().binary_search(&v).expect("part inside x") + 1;
    let additions: Vec<(u64, VertexSet)> = t
        .parts
        .iter()
        .map(|p| (1, p.iter().map(local).collect()))
        .collect();
    Ok(HatGraph {
        graph: sub.graph.extend(&additions)?,
        s: x.iter().enumerate().filter(|&(_, v)| s.contains(v)).map(|(i, _)| i + 1).collect(),
        to_parent: sub.to_parent,
    })
}

/// `G[x]` on local indices as adjacency bitmasks. Hat graphs are tested by
/// appending proxy vertices, without building a [`Graph`].
struct LocalHat {
    len: usize,
    adj: [u64; 64],
    special: u64,
}

impl LocalHat {
    fn new(g: &Graph, x: &VertexSet, s: &VertexSet) -> Self {
        let xs = x.as_slice();
        let mut adj = [0u64; 64];
        let mut special = 0;
        for (i, &v) in xs.iter().enumerate() {
            for u in g.neighbors(v) {
                if let Ok(j) = xs.binary_search(u) {
                    adj[i] |= 1 << j;
                }
            }
            if s.contains(v) {
                special |= 1 << i;
            }
        }
        LocalHat {
            len: xs.len(),
            adj,
            special,
        }
    }

    fn is_s_forest(&self, parts: &[u64]) -> bool {
        let mut adj = self.adj;
        for (k, &p) in parts.iter().enumerate() {
            let w = self.len + k;
            adj[w] = p;
            for i in bits(p) {
                adj[i] |= 1 << w;
            }
        }
        bits(self.special).all(|v| !on_cycle(&adj, v))
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            i
        })
    })
}

/// `v` lies on a cycle iff two of its neighbours are connected without it.
fn on_cycle(adj: &[u64; 64], v: usize) -> bool {
    let nb = adj[v];
    let mut unseen = nb;
    while unseen != 0 {
        let mut comp = 1u64 << unseen.trailing_zeros();
        let mut frontier = comp;
        while frontier != 0 {
            let u = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[u] & !comp & !(1 << v);
            comp |= fresh;
            frontier |= fresh;
        }
        if (comp & nb).count_ones() >= 2 {
            return true;
        }
        unseen &= !comp;
    }
    false
}

/// Every tuple of at most `d_prime_max` subsets of `x∖S` whose hat graph is an S-forest.
pub fn enumerate_valid_tuples(g: &Graph, x: &VertexSet, s: &VertexSet, d_prime_max: usize) -> Vec<CutTuple> {
    valid_tuples(g, x, s, d_prime_max, false)
}

// With `unordered`, only tuples with non-decreasing parts are produced; the
// completion problems are symmetric in the order of the parts.
fn valid_tuples(g: &Graph, x: &VertexSet, s: &VertexSet, d_prime_max: usize, unordered: bool) -> Vec<CutTuple> {
    let mut out = vec![CutTuple::default()];
    if d_prime_max == 0 {
        return out;
    }
    let local = (x.len() + d_prime_max <= 64).then(|| LocalHat::new(g, x, s));
    let xs = x.as_slice();
    let mask = |a: &VertexSet| a.iter().fold(0u64, |m, v| m | 1 << xs.binary_search(&v).expect("part inside x"));
    let valid = |parts: &[&VertexSet]| match &local {
        Some(h) => h.is_s_forest(&parts.iter().map(|a| mask(a)).collect::<Vec<_>>()),
        None => build_hat_graph(g, s, x, &CutTuple { parts: parts.iter().map(|&a| a.clone()).collect() })
            .map(|h| h.is_s_forest())
            .unwrap_or(false),
    };
    // Hat graphs only gain edges as parts grow, so valid sets are closed
    // under subsets and a failing prefix prunes its extensions.
    let free: Vec<Vertex> = x.difference(s).into_vec();
    let mut singles = Vec::new();
    let mut stack: Vec<(Vec<Vertex>, usize)> = vec![(Vec::new(), 0)];
    while let Some((chosen, from)) = stack.pop() {
        let set = VertexSet::from_sorted(chosen.clone());
        if !valid(&[&set]) {
            continue;
        }
        singles.push(set);
        for (i, &v) in free.iter().enumerate().skip(from) {
            let mut next = chosen.clone();
            next.push(v);
            stack.push((next, i + 1));
        }
    }
    singles.sort();
    // a sub-tuple of a valid tuple is valid, so tuples grow from valid ones
    let mut frontier: Vec<CutTuple> = vec![CutTuple::default()];
    for _ in 0..d_prime_max {
        let mut next = Vec::new();
        for t in &frontier {
            for a in &singles {
                if unordered && t.parts.last().is_some_and(|last| a < last) {
                    continue;
                }
                let fits = t.parts.is_empty() || {
                    let mut parts: Vec<&VertexSet> = t.parts.iter().collect();
                    parts.push(a);
                    valid(&parts)
                };
                if fits {
                    let mut parts = t.parts.clone();
                    parts.push(a.clone());
                    next.push(CutTuple { parts });
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// `B_i`: vertices outside `x ∪ S` with no neighbour in `x ∖ A_i`.
///
/// Excluding neighbours of every vertex of `x ∖ A_i` (S-vertices included)
/// is what "the cut satisfies the tuple" requires.
pub fn cut_candidate_sets(
    g: &Graph,
    s: &VertexSet,
    x: &VertexSet,
    a1: &VertexSet,
    a2: Option<&VertexSet>,
) -> CutCandidateSets {
    let outside: Vec<Vertex> = g.vertices().filter(|&v| !x.contains(v) && !s.contains(v)).collect();
    let b = |a: &VertexSet| -> VertexSet {
        outside
            .iter()
            .copied()
            .filter(|&v| g.neighbors(v).iter().all(|&u| !x.contains(u) || a.contains(u)))
            .collect()
    };
    CutCandidateSets {
        b1: b(a1),
        b2: a2.map(b),
    }
}

fn removed_if_kept(g: &Graph, kept: &VertexSet) -> VertexSet {
    g.complement_of(kept)
}

/// Best single far component attached through `a1`: the heaviest component
/// of `G[B_1]` (ties: lexicographically smallest removed set).
pub fn solve_case_a1(g: &Graph, s: &VertexSet, x: &VertexSet, a1: &VertexSet) -> SDistancePartition {
    let b = cut_candidate_sets(g, s, x, a1, None);
    let comps = graph::components(g, &b.b1.flags(g.n()));
    let mut best: Option<(u64, VertexSet, VertexSet)> = None;
    for c in comps {
        let w = g.weight_of(&c);
        let removed = removed_if_kept(g, &x.union(&c));
        let better = match &best {
            None => true,
            Some((bw, br, _)) => w > *bw || (w == *bw && removed < *br),
        };
        if better {
            best = Some((w, removed, c));
        }
    }
    SDistancePartition {
        s1: x.clone(),
        kept_s: x.intersection(s),
        far_components: best.map(|(_, _, c)| vec![c]).unwrap_or_default(),
    }
}

fn is_clique(g: &Graph, c: &VertexSet) -> bool {
    let v = c.as_slice();
    (0..v.len()).all(|i| (i + 1..v.len()).all(|j| g.adjacent(v[i], v[j])))
}

/// Best pair of far components attached through `a1` and `a2`.
///
/// For each non-adjacent pair `w1 ∈ B_1`, `w2 ∈ B_2` the components are
/// confined to the cliques `B_1 ∖ N[w2]` and `B_2 ∖ N[w1]`; the heaviest
/// conflict-free choice is the complement of a minimum-weight vertex cover
/// of the edges between them. `None` when no such pair exists.
pub fn solve_case_a1a2(
    g: &Graph,
    s: &VertexSet,
    x: &VertexSet,
    a1: &VertexSet,
    a2: &VertexSet,
) -> Result<Option<SDistancePartition>> {
    let kept_s = x.intersection(s);
    if kept_s.is_empty() {
        return Err(Error::Precondition("two-component completion needs a kept S-vertex".into()));
    }
    let sets = cut_candidate_sets(g, s, x, a1, Some(a2));
    let (b1, b2) = (sets.b1, sets.b2.expect("requested"));
    let mut best: Option<(u64, VertexSet, VertexSet, VertexSet)> = None;
    for w1 in b1.iter() {
        for w2 in b2.iter() {
            if w1 == w2 || g.adjacent(w1, w2) {
                continue;
            }
            let n1 = graph::neighborhood(g, &VertexSet::from([w1]), true);
            let n2 = graph::neighborhood(g, &VertexSet::from([w2]), true);
            let zone1 = b1.difference(&n2);
            let zone2 = b2.difference(&n1);
            if !is_clique(g, &zone1) || !is_clique(g, &zone2) {
                return Err(Error::Internal(format!(
                    "candidate zones {zone1} / {zone2} for pair ({w1},{w2}) are not cliques"
                )));
            }
            let rest1 = zone1.difference(&VertexSet::from([w1]));
            let rest2 = zone2.difference(&VertexSet::from([w2]));
            if !rest1.is_disjoint(&rest2) {
                return Err(Error::Internal(format!("candidate zones {rest1} / {rest2} overlap")));
            }
            let conflicts: Vec<(Vertex, Vertex)> = rest1
                .iter()
                .flat_map(|u| rest2.iter().filter(move |&v| g.adjacent(u, v)).map(move |v| (u, v)))
                .collect();
            let cover = min_weight_bipartite_vertex_cover(&rest1, &rest2, &conflicts, |v| g.weight(v))?;
            let c1 = rest1.difference(&cover).union(&VertexSet::from([w1]));
            let c2 = rest2.difference(&cover).union(&VertexSet::from([w2]));
            let w = g.weight_of(&c1) + g.weight_of(&c2);
            let removed = removed_if_kept(g, &x.union(&c1).union(&c2));
            let better = match &best {
                None => true,
                Some((bw, br, _, _)) => w > *bw || (w == *bw && removed < *br),
            };
            if better {
                best = Some((w, removed, c1, c2));
            }
        }
    }
    Ok(best.map(|(_, _, c1, c2)| SDistancePartition {
        s1: x.clone(),
        kept_s,
        far_components: vec![c1, c2],
    }))
}

/// Incumbent comparison: heavier forest first, then smaller removed set.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Forest {
    weight: u64,
    removed: VertexSet,
}

impl Forest {
    fn of(g: &Graph, kept: &VertexSet) -> Forest {
        Forest {
            weight: g.weight_of(kept),
            removed: g.complement_of(kept),
        }
    }

    fn beats(&self, other: &Forest) -> bool {
        self.weight > other.weight || (self.weight == other.weight && self.removed < other.removed)
    }
}

fn pick(a: Option<Forest>, b: Option<Forest>) -> Option<Forest> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => Some(if b.beats(&a) { b } else { a }),
    }
}

pub fn solve_wsfvs_alpha3(g: &Graph, s: &VertexSet) -> Result<Solution> {
    solve_wsfvs_alpha3_with(g, s, &Alpha3Options::default())
}

/// Minimum-weight subset feedback vertex set for `α(g) ≤ 3`.
pub fn solve_wsfvs_alpha3_with(g: &Graph, s: &VertexSet, opts: &Alpha3Options) -> Result<Solution> {
    g.check_set(s)?;
    graph::require_independence_at_most(g, 3)?;
    let baseline = Forest::of(g, &g.complement_of(s));
    let candidates = enumerate_s1_candidates(g, s, 3, opts.bound);
    let per_candidate: Vec<Option<Forest>> = candidates
        .par_iter()
        .filter(|x| !x.is_disjoint(s))
        .map(|x| best_completion(g, s, x))
        .collect::<Result<_>>()?;
    let best = per_candidate
        .into_iter()
        .fold(Some(baseline), pick)
        .expect("baseline present");
    let kept = g.complement_of(&best.removed);
    if !graph::is_s_forest(g, &kept, s) {
        return Err(Error::Internal(format!("removing {} leaves an S-cycle", best.removed)));
    }
    Ok(Solution {
        objective: g.weight_of(&best.removed),
        removed: best.removed,
        feasible: true,
    })
}

fn best_completion(g: &Graph, s: &VertexSet, x: &VertexSet) -> Result<Option<Forest>> {
    let mut best: Option<Forest> = None;
    for t in valid_tuples(g, x, s, 2, true) {
        let forest = match t.parts.as_slice() {
            [] => x.clone(),
            [a1] => solve_case_a1(g, s, x, a1).vertices(),
            [a1, a2] => match solve_case_a1a2(g, s, x, a1, a2)? {
                Some(p) => p.vertices(),
                None => continue,
            },
            _ => unreachable!("tuples have at most two parts"),
        };
        let weight = g.weight_of(&forest);
        if matches!(&best, Some(b) if b.weight > weight) {
            continue;
        }
        best = pick(best, Some(Forest { weight, removed: g.complement_of(&forest) }));
    }
    Ok(best)
}

/// Minimum-cardinality subset feedback vertex set for `α(g) ≤ d`, unit weights.
pub fn solve_sfvs_xp(g: &Graph, s: &VertexSet, d: usize) -> Result<Solution> {
    g.check_set(s)?;
    if !g.has_unit_weights() {
        return Err(Error::NonUnitWeights);
    }
    graph::require_independence_at_most(g, d)?;
    let others = g.complement_of(s);
    let special = s.flags(g.n());
    let mut best: Option<VertexSet> = None;
    for kept_s in (0..=s.len().min(2 * d)).flat_map(|r| s.iter().combinations(r)) {
        let kept_s: VertexSet = kept_s.into_iter().collect();
        let dropped_s = s.difference(&kept_s);
        for extra in (0..=others.len().min(2 * d)).flat_map(|r| others.iter().combinations(r)) {
            let x = dropped_s.union(&extra.into_iter().collect());
            if best
                .as_ref()
                .is_some_and(|b| (x.len(), &x) >= (b.len(), b))
            {
                continue;
            }
            let keep = g.complement_of(&x).flags(g.n());
            if !graph::has_s_cycle(g, &keep, &special) {
                best = Some(x);
            }
        }
    }
    let removed = best.ok_or_else(|| Error::Internal("removing all of S was not found feasible".into()))?;
    Ok(Solution {
        objective: removed.len() as u64,
        removed,
        feasible: true,
    })
}
