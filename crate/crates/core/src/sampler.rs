//! Random orderings and the two-phase independent set construction.
//!
//! For an ordering `<` of `V(G)`, phase one takes the local minima
//! `I1 = {v : v < u for every neighbor u}`. Removing `I1` and its
//! neighborhood leaves the residual graph `H`, and phase two takes the local
//! minima `I2` of `H` under the same ordering. `I1 ∪ I2` is independent in
//! `G`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, InducedSubgraph, VertexSet};
use crate::rational::{self, Rational};
use crate::rng::{derive_seed, SeededRng};

/// A total order on `0..n`, stored as `rank[v]` = position of `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ordering {
    rank: Vec<usize>,
}

impl Ordering {
    pub fn identity(n: usize) -> Self {
        Ordering {
            rank: (0..n).collect(),
        }
    }

    /// From `rank[v]`; fails unless `rank` is a permutation of `0..n`.
    pub fn from_ranks(rank: Vec<usize>) -> Result<Self> {
        let n = rank.len();
        let mut seen = vec![false; n];
        for &r in &rank {
            if r >= n || std::mem::replace(&mut seen[r], true) {
                return Err(Error::InvalidParameter(format!(
                    "rank array {rank:?} is not a permutation of 0..{n}"
                )));
            }
        }
        Ok(Ordering { rank })
    }

    /// From the list of vertices in increasing order: `positions[i]` is the
    /// vertex ranked `i`.
    pub fn from_positions(positions: &[usize]) -> Result<Self> {
        let n = positions.len();
        let mut rank = vec![usize::MAX; n];
        for (i, &v) in positions.iter().enumerate() {
            if v >= n || rank[v] != usize::MAX {
                return Err(Error::InvalidParameter(format!(
                    "position list {positions:?} is not a permutation of 0..{n}"
                )));
            }
            rank[v] = i;
        }
        Ok(Ordering { rank })
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// Vertices listed from smallest to largest.
    pub fn positions(&self) -> Vec<usize> {
        let mut positions = vec![0; self.len()];
        for (v, &r) in self.rank.iter().enumerate() {
            positions[r] = v;
        }
        positions
    }

    /// `u < v` in this ordering.
    pub fn precedes(&self, u: usize, v: usize) -> bool {
        self.rank[u] < self.rank[v]
    }

    /// The induced order on `keep`, renumbered so that vertex `i` of the
    /// result is `keep.as_slice()[i]`.
    pub fn restrict(&self, keep: &VertexSet) -> Ordering {
        let mut by_rank: Vec<usize> = (0..keep.len()).collect();
        by_rank.sort_unstable_by_key(|&i| self.rank[keep.as_slice()[i]]);
        Ordering::from_positions(&by_rank).expect("restriction of a permutation")
    }
}

/// A uniformly random ordering of `0..n` drawn from a Fisher-Yates shuffle
/// over [`SeededRng::new(seed)`](SeededRng::new).
pub fn sample_ordering(n: usize, seed: u64) -> Ordering {
    let mut rng = SeededRng::new(seed);
    sample_ordering_with(n, &mut rng)
}

pub fn sample_ordering_with(n: usize, rng: &mut SeededRng) -> Ordering {
    let mut positions: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut positions);
    Ordering::from_positions(&positions).expect("shuffle of 0..n")
}

/// Vertices ranked before all of their neighbors.
pub fn phase_one(graph: &Graph, ord: &Ordering) -> VertexSet {
    (0..graph.n())
        .filter(|&v| graph.neighbors(v).iter().all(|&u| ord.precedes(v, u)))
        .collect()
}

/// `V(G)` minus `i1` and its neighborhood, and the graph it induces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    pub vertices: VertexSet,
    pub graph: InducedSubgraph,
}

pub fn residual(graph: &Graph, i1: &VertexSet) -> Residual {
    let mut removed = vec![false; graph.n()];
    for v in i1.iter() {
        removed[v] = true;
        for &u in graph.neighbors(v) {
            removed[u] = true;
        }
    }
    let vertices: VertexSet = (0..graph.n()).filter(|&v| !removed[v]).collect();
    let sub = graph.induced_subgraph(&vertices);
    Residual {
        vertices,
        graph: sub,
    }
}

/// Local minima of the residual graph under `ord` (an ordering of the whole
/// of `G`), reported in `G`'s ids.
pub fn phase_two(residual: &Residual, ord: &Ordering) -> VertexSet {
    let h = &residual.graph;
    let local = ord.restrict(&h.original);
    h.lift(&phase_one(&h.graph, &local))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoPhaseResult {
    pub i1: VertexSet,
    pub h_vertices: VertexSet,
    pub i2: VertexSet,
    pub union_size: usize,
}

pub fn two_phase(graph: &Graph, ord: &Ordering) -> TwoPhaseResult {
    let i1 = phase_one(graph, ord);
    let res = residual(graph, &i1);
    let i2 = phase_two(&res, ord);
    TwoPhaseResult {
        union_size: i1.len() + i2.len(),
        i1,
        h_vertices: res.vertices,
        i2,
    }
}

/// Allocation-free evaluation of the two phases, for hot loops over many
/// orderings of one graph. Produces the same sets as [`two_phase`].
#[derive(Debug, Clone)]
pub struct TwoPhaseScratch {
    pub in_i1: Vec<bool>,
    pub in_h: Vec<bool>,
    pub in_i2: Vec<bool>,
    /// Degree in `H` for vertices of `H`; unspecified elsewhere.
    pub h_degree: Vec<usize>,
}

impl TwoPhaseScratch {
    pub fn new(n: usize) -> Self {
        TwoPhaseScratch {
            in_i1: vec![false; n],
            in_h: vec![false; n],
            in_i2: vec![false; n],
            h_degree: vec![0; n],
        }
    }

    /// Evaluates both phases for the ordering given by `rank`.
    pub fn run(&mut self, graph: &Graph, rank: &[usize]) {
        let n = graph.n();
        for v in 0..n {
            self.in_i1[v] = graph.neighbors(v).iter().all(|&u| rank[v] < rank[u]);
            self.in_h[v] = true;
        }
        for v in 0..n {
            if self.in_i1[v] {
                self.in_h[v] = false;
                for &u in graph.neighbors(v) {
                    self.in_h[u] = false;
                }
            }
        }
        for v in 0..n {
            if !self.in_h[v] {
                self.in_i2[v] = false;
                continue;
            }
            let mut deg = 0;
            let mut minimum = true;
            for &u in graph.neighbors(v) {
                if self.in_h[u] {
                    deg += 1;
                    minimum &= rank[v] < rank[u];
                }
            }
            self.h_degree[v] = deg;
            self.in_i2[v] = minimum;
        }
    }
}

/// Repeatedly takes a vertex of minimum current degree (smallest id on
/// ties) and deletes its closed neighborhood. The result has at least
/// `caro_wei(graph)` vertices.
pub fn min_degree_greedy(graph: &Graph) -> VertexSet {
    let n = graph.n();
    let mut alive = vec![true; n];
    let mut degree = graph.degrees();
    let mut chosen = Vec::new();
    let mut remaining = n;
    while remaining > 0 {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| degree[v])
            .expect("a live vertex remains");
        chosen.push(v);
        let doomed: Vec<usize> = std::iter::once(v)
            .chain(graph.neighbors(v).iter().copied().filter(|&u| alive[u]))
            .collect();
        for &u in &doomed {
            alive[u] = false;
        }
        for &u in &doomed {
            for &w in graph.neighbors(u) {
                if alive[w] {
                    degree[w] -= 1;
                }
            }
        }
        remaining -= doomed.len();
    }
    VertexSet::from_unsorted(chosen)
}

pub const DEFAULT_MAX_TRIALS: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LasVegasOutcome {
    /// Largest independent set found.
    pub best: VertexSet,
    /// Required size, `ceil(target)`.
    pub target_size: usize,
    /// Orderings sampled before stopping.
    pub trials: u64,
    pub reached: bool,
    pub seed: u64,
}

/// Samples orderings and, for each, completes `I1` with the min-degree
/// greedy set of the residual graph. Stops as soon as the union has at
/// least `ceil(target)` vertices (`target` defaults to Selkow's bound) or
/// after `max_trials` orderings. Trial `t` uses the ordering seeded with
/// `derive_seed(seed, t)`.
pub fn las_vegas_search(
    graph: &Graph,
    target: Option<&Rational>,
    max_trials: u64,
    seed: u64,
) -> Result<LasVegasOutcome> {
    if max_trials == 0 {
        return Err(Error::InvalidParameter("max_trials must be at least 1".into()));
    }
    let target = match target {
        Some(t) => t.clone(),
        None => crate::bounds::selkow_bound(graph).selkow,
    };
    let target_size = rational::ceil(&target).max(BigInt::from(0));
    let target_size: usize = target_size
        .try_into()
        .map_err(|_| Error::InvalidParameter("target exceeds the vertex count range".into()))?;

    let mut best = VertexSet::new();
    let mut trials = 0;
    while trials < max_trials {
        let ord = sample_ordering(graph.n(), derive_seed(seed, trials));
        trials += 1;
        let i1 = phase_one(graph, &ord);
        let res = residual(graph, &i1);
        let completion = res.graph.lift(&min_degree_greedy(&res.graph.graph));
        let candidate = i1.union(&completion);
        assert!(
            graph.is_independent(&candidate),
            "two-phase completion produced a dependent set"
        );
        if candidate.len() > best.len() || trials == 1 {
            best = candidate;
        }
        if best.len() >= target_size {
            break;
        }
    }
    Ok(LasVegasOutcome {
        reached: best.len() >= target_size,
        best,
        target_size,
        trials,
        seed,
    })
}

/// A quantity estimated by [`monte_carlo`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Estimand {
    /// `E|I1|`
    SizeI1,
    /// `E|I2|`
    SizeI2,
    /// `P(v ∈ I2)`
    InI2(usize),
    /// `P(v ∈ V(H))`
    InResidual(usize),
}

impl Estimand {
    pub fn name(&self) -> &'static str {
        match self {
            Estimand::SizeI1 => "i1",
            Estimand::SizeI2 => "i2",
            Estimand::InI2(_) => "p-i2",
            Estimand::InResidual(_) => "p-h",
        }
    }

    pub fn vertex(&self) -> Option<usize> {
        match *self {
            Estimand::InI2(v) | Estimand::InResidual(v) => Some(v),
            _ => None,
        }
    }

    /// Parses an estimand name; the probability estimands need `vertex`.
    pub fn parse(name: &str, vertex: Option<usize>) -> Result<Self> {
        let need_vertex = || {
            vertex.ok_or_else(|| {
                Error::InvalidParameter(format!("estimand `{name}` needs a target vertex"))
            })
        };
        match name {
            "i1" => Ok(Estimand::SizeI1),
            "i2" => Ok(Estimand::SizeI2),
            "p-i2" => Ok(Estimand::InI2(need_vertex()?)),
            "p-h" => Ok(Estimand::InResidual(need_vertex()?)),
            other => Err(Error::UnknownEstimand(other.to_string())),
        }
    }

    fn observe(&self, s: &TwoPhaseScratch) -> u64 {
        match *self {
            Estimand::SizeI1 => s.in_i1.iter().filter(|&&b| b).count() as u64,
            Estimand::SizeI2 => s.in_i2.iter().filter(|&&b| b).count() as u64,
            Estimand::InI2(v) => s.in_i2[v] as u64,
            Estimand::InResidual(v) => s.in_h[v] as u64,
        }
    }
}

impl FromStr for Estimand {
    type Err = Error;

    /// Accepts `i1`, `i2`, `p-i2:V` and `p-h:V`.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            Some((name, v)) => {
                let v = v
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("bad vertex id in `{s}`")))?;
                Estimand::parse(name, Some(v))
            }
            None => Estimand::parse(s, None),
        }
    }
}

impl fmt::Display for Estimand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.vertex() {
            Some(v) => write!(f, "{}:{v}", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateReport {
    pub estimand: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex: Option<usize>,
    pub trials: u64,
    /// Sum of observations over `trials`, exactly.
    #[serde(serialize_with = "rational::serialize")]
    pub mean: Rational,
    /// Sample standard deviation over `sqrt(trials)`; 0 when `trials == 1`.
    pub standard_error: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Moments {
    sum: u64,
    sum_sq: u128,
}

impl Moments {
    fn add(self, other: Moments) -> Moments {
        Moments {
            sum: self.sum + other.sum,
            sum_sq: self.sum_sq + other.sum_sq,
        }
    }
}

/// Estimates each estimand from `trials` orderings. Trial `t` uses the
/// ordering seeded with `derive_seed(seed, t)`. Observations are integers
/// and are summed exactly, so results do not depend on how rayon schedules
/// the trials.
pub fn monte_carlo(
    graph: &Graph,
    estimands: &[Estimand],
    trials: u64,
    seed: u64,
) -> Result<Vec<EstimateReport>> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    for e in estimands {
        if let Some(v) = e.vertex() {
            if v >= graph.n() {
                return Err(Error::VertexOutOfRange { id: v, n: graph.n() });
            }
        }
    }
    let n = graph.n();
    let zero = vec![Moments::default(); estimands.len()];
    let moments = (0..trials)
        .into_par_iter()
        .fold(
            || (TwoPhaseScratch::new(n), zero.clone()),
            |(mut scratch, mut acc), t| {
                let ord = sample_ordering(n, derive_seed(seed, t));
                scratch.run(graph, ord.ranks());
                for (m, e) in acc.iter_mut().zip(estimands) {
                    let x = e.observe(&scratch);
                    *m = m.add(Moments {
                        sum: x,
                        sum_sq: u128::from(x) * u128::from(x),
                    });
                }
                (scratch, acc)
            },
        )
        .map(|(_, acc)| acc)
        .reduce(
            || zero.clone(),
            |a, b| a.into_iter().zip(b).map(|(x, y)| x.add(y)).collect(),
        );

    Ok(estimands
        .iter()
        .zip(moments)
        .map(|(e, m)| EstimateReport {
            estimand: e.name().to_string(),
            vertex: e.vertex(),
            trials,
            mean: Rational::new(m.sum.into(), trials.into()),
            standard_error: standard_error(m, trials),
            seed,
        })
        .collect())
}

fn standard_error(m: Moments, trials: u64) -> f64 {
    if trials < 2 {
        return 0.0;
    }
    let t = u128::from(trials);
    // Sample variance is (t*sum_sq - sum^2) / (t(t-1)); divide once more by t.
    let spread = t * m.sum_sq - u128::from(m.sum) * u128::from(m.sum);
    (spread as f64 / ((t * t) as f64 * (t - 1) as f64)).sqrt()
}
