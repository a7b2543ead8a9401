//! Named test corpora used by the verification commands and tests.

use crate::generate::{complete, cycle, gnp, hypercube, path, petersen, star};
use crate::graph::Graph;

pub const SUITE_EDGE_PROBABILITIES: [f64; 3] = [0.2, 0.5, 0.8];

#[derive(Debug, Clone)]
pub struct SuiteGraph {
    pub name: String,
    pub graph: Graph,
}

fn named(name: String, graph: Graph) -> SuiteGraph {
    SuiteGraph { name, graph }
}

/// Deterministic families on at most `max_n` vertices: paths, cycles,
/// stars and complete graphs of every size, plus `seeds_per_cell` random
/// `G(n, p)` graphs for each `n` and each `p` in
/// [`SUITE_EDGE_PROBABILITIES`].
pub fn suite(max_n: usize, seeds_per_cell: u64) -> Vec<SuiteGraph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.push(named(format!("path:{n}"), path(n)));
        if n >= 3 {
            out.push(named(format!("cycle:{n}"), cycle(n)));
        }
        out.push(named(format!("star:{}", n - 1), star(n - 1)));
        out.push(named(format!("complete:{n}"), complete(n)));
    }
    for n in 1..=max_n {
        for p in SUITE_EDGE_PROBABILITIES {
            for seed in 0..seeds_per_cell {
                let g = gnp(n, p, seed).expect("p in range");
                out.push(named(format!("gnp:{n}:{p}:{seed}"), g));
            }
        }
    }
    out
}

/// The exhaustive-enumeration corpus: everything in [`suite`] with
/// `n <= 8` and eight random graphs per `(n, p)` cell.
pub fn small_suite() -> Vec<SuiteGraph> {
    suite(8, 8)
}

/// [`small_suite`] extended to 16 vertices (four random graphs per cell
/// above `n = 8`) with the Petersen graph and the 3- and 4-cubes.
pub fn extended_suite() -> Vec<SuiteGraph> {
    let mut out = small_suite();
    for n in 9..=16 {
        out.push(named(format!("path:{n}"), path(n)));
        out.push(named(format!("cycle:{n}"), cycle(n)));
        out.push(named(format!("star:{}", n - 1), star(n - 1)));
        out.push(named(format!("complete:{n}"), complete(n)));
        for p in SUITE_EDGE_PROBABILITIES {
            for seed in 0..4 {
                let g = gnp(n, p, seed).expect("p in range");
                out.push(named(format!("gnp:{n}:{p}:{seed}"), g));
            }
        }
    }
    out.push(named("petersen".into(), petersen()));
    out.push(named("hypercube:3".into(), hypercube(3)));
    out.push(named("hypercube:4".into(), hypercube(4)));
    out
}
