//! Named graph families, seeded random graphs, and the three-vertex
//! extension that breaks the per-vertex second-phase estimate.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::SeededRng;

pub fn path(n: usize) -> Graph {
    Graph::from_edge_list(n, (1..n).map(|v| (v - 1, v))).expect("valid path")
}

/// The cycle `0-1-...-(n-1)-0`. For `n < 3` this degenerates to a path.
pub fn cycle(n: usize) -> Graph {
    if n < 3 {
        return path(n);
    }
    Graph::from_edge_list(n, (0..n).map(|v| (v, (v + 1) % n))).expect("valid cycle")
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edge_list(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        .expect("valid complete graph")
}

/// `K_{1,leaves}`: center 0 joined to `1..=leaves`.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edge_list(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("valid star")
}

/// The `dim`-dimensional hypercube on `2^dim` vertices.
pub fn hypercube(dim: u32) -> Graph {
    let n = 1usize << dim;
    Graph::from_edge_list(
        n,
        (0..n).flat_map(|u| (0..dim).map(move |b| (u, u ^ (1 << b)))),
    )
    .expect("valid hypercube")
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::from_edge_list(10, outer.chain(spokes).chain(inner)).expect("valid Petersen graph")
}

/// Erdos-Renyi `G(n, p)`. Pairs `(u, v)`, `u < v`, are visited in
/// lexicographic order and each draws one `unit_f64` from a [`SeededRng`]
/// seeded with `seed`; the edge is present iff the draw is `< p`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "edge probability must lie in [0, 1], got {p}"
        )));
    }
    let mut rng = SeededRng::new(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.unit_f64() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, edges)
}

/// A generator invocation, written `kind:param:...` on the command line.
#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorSpec {
    Empty(usize),
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Star(usize),
    Hypercube(u32),
    Petersen,
    Gnp { n: usize, p: f64, seed: u64 },
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<Graph> {
        Ok(match *self {
            GeneratorSpec::Empty(n) => Graph::empty(n),
            GeneratorSpec::Path(n) => path(n),
            GeneratorSpec::Cycle(n) => cycle(n),
            GeneratorSpec::Complete(n) => complete(n),
            GeneratorSpec::Star(k) => star(k),
            GeneratorSpec::Hypercube(d) => hypercube(d),
            GeneratorSpec::Petersen => petersen(),
            GeneratorSpec::Gnp { n, p, seed } => gnp(n, p, seed)?,
        })
    }
}

fn param<T: FromStr>(parts: &[&str], i: usize, spec: &str) -> Result<T> {
    parts
        .get(i)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::InvalidParameter(format!("bad or missing parameter {i} in `{spec}`")))
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let arity = |k: usize| -> Result<()> {
            if parts.len() == k + 1 {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "`{}` takes {k} parameter(s), got `{s}`",
                    parts[0]
                )))
            }
        };
        let spec = match parts[0] {
            "empty" => {
                arity(1)?;
                GeneratorSpec::Empty(param(&parts, 1, s)?)
            }
            "path" => {
                arity(1)?;
                GeneratorSpec::Path(param(&parts, 1, s)?)
            }
            "cycle" => {
                arity(1)?;
                GeneratorSpec::Cycle(param(&parts, 1, s)?)
            }
            "complete" => {
                arity(1)?;
                GeneratorSpec::Complete(param(&parts, 1, s)?)
            }
            "star" => {
                arity(1)?;
                GeneratorSpec::Star(param(&parts, 1, s)?)
            }
            "hypercube" => {
                arity(1)?;
                GeneratorSpec::Hypercube(param(&parts, 1, s)?)
            }
            "petersen" => {
                arity(0)?;
                GeneratorSpec::Petersen
            }
            "gnp" => {
                arity(3)?;
                let p: f64 = param(&parts, 2, s)?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::InvalidParameter(format!(
                        "edge probability must lie in [0, 1], got {p}"
                    )));
                }
                GeneratorSpec::Gnp {
                    n: param(&parts, 1, s)?,
                    p,
                    seed: param(&parts, 3, s)?,
                }
            }
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown generator `{other}`"
                )))
            }
        };
        Ok(spec)
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Empty(n) => write!(f, "empty:{n}"),
            GeneratorSpec::Path(n) => write!(f, "path:{n}"),
            GeneratorSpec::Cycle(n) => write!(f, "cycle:{n}"),
            GeneratorSpec::Complete(n) => write!(f, "complete:{n}"),
            GeneratorSpec::Star(k) => write!(f, "star:{k}"),
            GeneratorSpec::Hypercube(d) => write!(f, "hypercube:{d}"),
            GeneratorSpec::Petersen => write!(f, "petersen"),
            GeneratorSpec::Gnp { n, p, seed } => write!(f, "gnp:{n}:{p}:{seed}"),
        }
    }
}

/// Input to [`counterexample_graph`]: the arbitrary base graph `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleSpec {
    pub base: Graph,
}

impl CounterexampleSpec {
    pub fn new(base: Graph) -> Self {
        CounterexampleSpec { base }
    }

    /// Total vertex count `|V(F)| + 3`.
    pub fn n(&self) -> usize {
        self.base.n() + 3
    }
}

/// The extended graph plus the ids of the three added vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    #[serde(skip)]
    pub graph: Graph,
    /// Pendant vertex, adjacent only to `w`.
    pub v: usize,
    /// Adjacent to `v` and `x`.
    pub w: usize,
    /// Adjacent to `w` and to every vertex of the base graph.
    pub x: usize,
}

/// Adds vertices `v = n-3`, `w = n-2`, `x = n-1` to the base graph `F`
/// (which keeps ids `0..n-3`) with edges `vw`, `wx` and `xy` for every `y`
/// in `F`.
pub fn counterexample_graph(spec: &CounterexampleSpec) -> Counterexample {
    let base = &spec.base;
    let n = spec.n();
    let (v, w, x) = (n - 3, n - 2, n - 1);
    let edges = base
        .edges()
        .chain([(v, w), (w, x)])
        .chain((0..base.n()).map(|y| (x, y)));
    let graph = Graph::from_edge_list(n, edges).expect("construction keeps the graph simple");
    Counterexample { graph, v, w, x }
}

/// Base-graph families accepted by the counterexample command.
#[derive(Debug, Clone, PartialEq)]
pub enum BaseFamily {
    Empty,
    Complete,
    Path,
    Gnp { p: f64, seed: u64 },
}

impl BaseFamily {
    pub fn build(&self, size: usize) -> Result<Graph> {
        Ok(match *self {
            BaseFamily::Empty => Graph::empty(size),
            BaseFamily::Complete => complete(size),
            BaseFamily::Path => path(size),
            BaseFamily::Gnp { p, seed } => gnp(size, p, seed)?,
        })
    }
}

impl FromStr for BaseFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["empty"] => Ok(BaseFamily::Empty),
            ["complete"] => Ok(BaseFamily::Complete),
            ["path"] => Ok(BaseFamily::Path),
            ["gnp", _, _] => {
                let p: f64 = param(&parts, 1, s)?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::InvalidParameter(format!(
                        "edge probability must lie in [0, 1], got {p}"
                    )));
                }
                Ok(BaseFamily::Gnp {
                    p,
                    seed: param(&parts, 2, s)?,
                })
            }
            _ => Err(Error::InvalidParameter(format!(
                "unknown base family `{s}` (expected empty, complete, path or gnp:P:SEED)"
            ))),
        }
    }
}

impl fmt::Display for BaseFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseFamily::Empty => write!(f, "empty"),
            BaseFamily::Complete => write!(f, "complete"),
            BaseFamily::Path => write!(f, "path"),
            BaseFamily::Gnp { p, seed } => write!(f, "gnp:{p}:{seed}"),
        }
    }
}
