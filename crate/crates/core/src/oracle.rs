//! Exhaustive ground-truth solvers.
//!
//! Every problem is solved by walking all `2^n` vertex subsets and keeping
//! the feasible one that is smallest by `(objective, lexicographic order)`.
//! Nothing here is clever on purpose; the faster solvers are checked
//! against it.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{self, Graph, Vertex, VertexSet};
use crate::multiway;

pub const DEFAULT_ORACLE_LIMIT: usize = 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemKind {
    Wsfvs,
    Sfvs,
    Fvs,
    Nmc,
    Nmcdt,
    Wnmcdt,
    Vc,
    Mis,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 8] = [
        ProblemKind::Wsfvs,
        ProblemKind::Sfvs,
        ProblemKind::Fvs,
        ProblemKind::Nmc,
        ProblemKind::Nmcdt,
        ProblemKind::Wnmcdt,
        ProblemKind::Vc,
        ProblemKind::Mis,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::Wsfvs => "wsfvs",
            ProblemKind::Sfvs => "sfvs",
            ProblemKind::Fvs => "fvs",
            ProblemKind::Nmc => "nmc",
            ProblemKind::Nmcdt => "nmcdt",
            ProblemKind::Wnmcdt => "wnmcdt",
            ProblemKind::Vc => "vc",
            ProblemKind::Mis => "mis",
        }
    }

    /// Weighted kinds minimise total weight, the others cardinality.
    pub fn is_weighted(self) -> bool {
        matches!(self, ProblemKind::Wsfvs | ProblemKind::Wnmcdt)
    }

    pub fn is_cycle_problem(self) -> bool {
        matches!(self, ProblemKind::Wsfvs | ProblemKind::Sfvs | ProblemKind::Fvs)
    }

    pub fn is_multiway(self) -> bool {
        matches!(self, ProblemKind::Nmc | ProblemKind::Nmcdt | ProblemKind::Wnmcdt)
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        ProblemKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown problem kind `{s}`"))
    }
}

/// A graph with its distinguished set (S for cycle problems, T for
/// multiway problems) and an optional budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemInstance {
    pub graph: Graph,
    pub special: VertexSet,
    pub kind: ProblemKind,
    pub budget: Option<u64>,
}

impl ProblemInstance {
    pub fn new(graph: Graph, special: VertexSet, kind: ProblemKind, budget: Option<u64>) -> Result<Self> {
        graph.check_set(&special)?;
        match kind {
            ProblemKind::Fvs if special != graph.vertex_set() => {
                return Err(Error::Precondition("fvs instances use S = V".into()))
            }
            ProblemKind::Vc | ProblemKind::Mis if !special.is_empty() => {
                return Err(Error::Precondition(format!("{kind} instances carry no special set")))
            }
            _ => {}
        }
        Ok(ProblemInstance {
            graph,
            special,
            kind,
            budget,
        })
    }

    /// Feedback vertex set instance (`S = V`).
    pub fn fvs(graph: Graph, budget: Option<u64>) -> Self {
        let special = graph.vertex_set();
        ProblemInstance {
            graph,
            special,
            kind: ProblemKind::Fvs,
            budget,
        }
    }

    pub fn objective_of(&self, x: &VertexSet) -> u64 {
        if self.kind.is_weighted() {
            self.graph.weight_of(x)
        } else {
            x.len() as u64
        }
    }

    /// The problem's feasibility predicate for removing `x`.
    pub fn is_feasible(&self, x: &VertexSet) -> bool {
        let g = &self.graph;
        match self.kind {
            ProblemKind::Wsfvs | ProblemKind::Sfvs | ProblemKind::Fvs => {
                graph::is_s_forest(g, &g.complement_of(x), &self.special)
            }
            ProblemKind::Nmc => multiway::check_multiway(g, &self.special, x, false),
            ProblemKind::Nmcdt | ProblemKind::Wnmcdt => multiway::check_multiway(g, &self.special, x, true),
            ProblemKind::Vc | ProblemKind::Mis => g.edges().all(|(u, v)| x.contains(u) || x.contains(v)),
        }
    }

    /// Builds a feasibility-checked solution for `x`.
    pub fn solution(&self, x: VertexSet) -> Solution {
        Solution {
            objective: self.objective_of(&x),
            feasible: self.is_feasible(&x),
            removed: x,
        }
    }
}

/// A removed vertex set `X` with its objective value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub removed: VertexSet,
    /// `w(X)` for weighted kinds, `|X|` otherwise.
    pub objective: u64,
    pub feasible: bool,
}

impl Solution {
    pub fn infeasible() -> Self {
        Solution {
            removed: VertexSet::new(),
            objective: 0,
            feasible: false,
        }
    }

    pub fn kept(&self, g: &Graph) -> VertexSet {
        g.complement_of(&self.removed)
    }
}

/// True iff `a` precedes `b` as sorted member lists; bit `i` is vertex `i + 1`.
pub(crate) fn mask_lex_less(a: u64, b: u64) -> bool {
    if a == b {
        return false;
    }
    let m = (a ^ b).trailing_zeros();
    if a >> m & 1 == 1 {
        // b lacks m: b comes first only if it stops before m
        b >> m != 0
    } else {
        a >> m == 0
    }
}

fn mask_to_set(mask: u64) -> VertexSet {
    VertexSet::from_sorted((0..64).filter(|i| mask >> i & 1 == 1).map(|i| i as Vertex + 1).collect())
}

struct MaskChecker<'a> {
    inst: &'a ProblemInstance,
    special: Vec<bool>,
    weights: Vec<u64>,
}

impl MaskChecker<'_> {
    fn objective(&self, mask: u64) -> u64 {
        if self.inst.kind.is_weighted() {
            (0..self.weights.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| self.weights[i])
                .sum()
        } else {
            mask.count_ones() as u64
        }
    }

    fn feasible(&self, mask: u64) -> bool {
        let g = &self.inst.graph;
        let n = g.n();
        let removed = |v: Vertex| mask >> (v - 1) & 1 == 1;
        match self.inst.kind {
            ProblemKind::Wsfvs | ProblemKind::Sfvs | ProblemKind::Fvs => {
                let keep: Vec<bool> = (0..=n).map(|v| v > 0 && !removed(v)).collect();
                !graph::has_s_cycle(g, &keep, &self.special)
            }
            ProblemKind::Nmc | ProblemKind::Nmcdt | ProblemKind::Wnmcdt => {
                if self.inst.kind == ProblemKind::Nmc && self.inst.special.iter().any(removed) {
                    return false;
                }
                let keep: Vec<bool> = (0..=n).map(|v| v > 0 && !removed(v)).collect();
                multiway::at_most_one_terminal_per_component(g, &keep, &self.special)
            }
            ProblemKind::Vc | ProblemKind::Mis => g.edges().all(|(u, v)| removed(u) || removed(v)),
        }
    }

    /// Best feasible mask in `lo..hi`.
    fn best_in(&self, lo: u64, hi: u64) -> Option<(u64, u64)> {
        let mut best: Option<(u64, u64)> = None;
        for mask in lo..hi {
            let obj = self.objective(mask);
            if let Some((bo, bm)) = best {
                if obj > bo || (obj == bo && !mask_lex_less(mask, bm)) {
                    continue;
                }
            }
            if self.feasible(mask) {
                best = Some((obj, mask));
            }
        }
        best
    }
}

fn better(a: Option<(u64, u64)>, b: Option<(u64, u64)>) -> Option<(u64, u64)> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => {
            if y.0 < x.0 || (y.0 == x.0 && mask_lex_less(y.1, x.1)) {
                Some(y)
            } else {
                Some(x)
            }
        }
    }
}

pub fn oracle_solve(inst: &ProblemInstance) -> Result<Solution> {
    oracle_solve_with_limit(inst, DEFAULT_ORACLE_LIMIT)
}

/// Exhaustive solve refusing graphs with more than `limit` vertices (at most 63).
pub fn oracle_solve_with_limit(inst: &ProblemInstance, limit: usize) -> Result<Solution> {
    let n = inst.graph.n();
    if n > limit.min(63) {
        return Err(Error::TooLarge { n, limit: limit.min(63) });
    }
    let checker = MaskChecker {
        inst,
        special: inst.special.flags(n),
        weights: inst.graph.weights().to_vec(),
    };
    let total = 1u64 << n;
    let chunk = 1u64 << 12;
    let chunks = total.div_ceil(chunk);
    let best = (0..chunks)
        .into_par_iter()
        .map(|c| checker.best_in(c * chunk, ((c + 1) * chunk).min(total)))
        .reduce(|| None, better);
    Ok(match best {
        Some((objective, mask)) => Solution {
            removed: mask_to_set(mask),
            objective,
            feasible: true,
        },
        None => Solution::infeasible(),
    })
}

/// True iff `V(g)` partitions into at most `c` cliques.
pub fn oracle_clique_cover_at_most(g: &Graph, c: usize) -> bool {
    fn place(g: &Graph, v: Vertex, cliques: &mut Vec<Vec<Vertex>>, c: usize) -> bool {
        if v > g.n() {
            return true;
        }
        for i in 0..cliques.len() {
            if cliques[i].iter().all(|&u| g.adjacent(u, v)) {
                cliques[i].push(v);
                if place(g, v + 1, cliques, c) {
                    return true;
                }
                cliques[i].pop();
            }
        }
        if cliques.len() < c {
            cliques.push(vec![v]);
            if place(g, v + 1, cliques, c) {
                return true;
            }
            cliques.pop();
        }
        false
    }
    place(g, 1, &mut Vec::new(), c)
}
