//! Seeded random instances with a guaranteed independence bound: vertices
//! are split into `d` cliques, so no independent set can exceed `d`.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::oracle::{ProblemInstance, ProblemKind};

#[derive(Clone, Debug, PartialEq)]
pub struct GenParams {
    pub n: usize,
    pub alpha: usize,
    pub p: f64,
    pub seed: u64,
    pub kind: ProblemKind,
    pub special_frac: f64,
    pub wmax: u64,
}

impl GenParams {
    pub fn new(n: usize, alpha: usize, p: f64, seed: u64, kind: ProblemKind) -> Self {
        GenParams {
            n,
            alpha,
            p,
            seed,
            kind,
            special_frac: 0.5,
            wmax: 1,
        }
    }
}

/// Index (0-based) of the clique holding `v` when `1..=n` is cut into `d`
/// contiguous blocks whose sizes differ by at most one.
pub fn clique_of(v: Vertex, n: usize, d: usize) -> usize {
    let (q, r) = (n / d, n % d);
    let i = v - 1;
    if i < r * (q + 1) {
        i / (q + 1)
    } else {
        r + (i - r * (q + 1)) / q
    }
}

/// Union of `d` near-equal cliques plus each inter-clique edge with
/// probability `p`, vertex weights uniform in `1..=wmax`.
pub fn bounded_alpha_graph<R: Rng>(rng: &mut R, n: usize, d: usize, p: f64, wmax: u64) -> Result<Graph> {
    if d == 0 && n > 0 {
        return Err(Error::Precondition("alpha must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Precondition(format!("edge probability {p} outside [0, 1]")));
    }
    if wmax == 0 {
        return Err(Error::Precondition("wmax must be at least 1".into()));
    }
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if clique_of(u, n, d) == clique_of(v, n, d) || rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let weights: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=wmax)).collect();
    Graph::with_weights(n, edges, &weights)
}

/// Exactly `round(frac * n)` vertices chosen uniformly.
pub fn sample_special<R: Rng>(rng: &mut R, n: usize, frac: f64) -> Result<VertexSet> {
    if !(0.0..=1.0).contains(&frac) {
        return Err(Error::Precondition(format!("special fraction {frac} outside [0, 1]")));
    }
    let count = ((frac * n as f64).round() as usize).min(n);
    Ok(index::sample(rng, n, count).into_iter().map(|i| i + 1).collect())
}

/// Builds the instance described by `params`; identical params give
/// identical instances.
pub fn generate(params: &GenParams) -> Result<ProblemInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let g = bounded_alpha_graph(&mut rng, params.n, params.alpha, params.p, params.wmax)?;
    let special = match params.kind {
        ProblemKind::Fvs => g.vertex_set(),
        ProblemKind::Vc | ProblemKind::Mis => VertexSet::new(),
        _ => sample_special(&mut rng, params.n, params.special_frac)?,
    };
    ProblemInstance::new(g, special, params.kind, None)
}
