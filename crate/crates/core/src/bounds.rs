//! Degree-based lower bounds on the independence number.

use num_traits::Zero;
use serde::Serialize;

use crate::graph::Graph;
use crate::rational::{self, inverse_succ, Rational};

/// Caro-Wei bound: the sum of `1/(d(v)+1)` over all vertices.
pub fn caro_wei(graph: &Graph) -> Rational {
    (0..graph.n())
        .map(|v| inverse_succ(graph.degree(v)))
        .fold(Rational::zero(), |acc, t| acc + t)
}

/// `(1/(d(v)+1)) * (d(v)/(d(v)+1) - sum over u in N(v) of 1/(d(u)+1))`,
/// without clamping at zero. Negative values are meaningful: this is the
/// per-vertex lower bound that was claimed for the second-phase
/// probability `P(v in I2)`.
pub fn neighborhood_excess(graph: &Graph, v: usize) -> Rational {
    let d = graph.degree(v);
    let own = Rational::new(d.into(), (d + 1).into());
    let neighbors = graph
        .neighbors(v)
        .iter()
        .map(|&u| inverse_succ(graph.degree(u)))
        .fold(Rational::zero(), |acc, t| acc + t);
    inverse_succ(d) * (own - neighbors)
}

/// Selkow's per-vertex correction, `neighborhood_excess` clamped at zero.
/// Isolated vertices get 0.
pub fn selkow_correction(graph: &Graph, v: usize) -> Rational {
    let excess = neighborhood_excess(graph, v);
    if excess > Rational::zero() {
        excess
    } else {
        Rational::zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    #[serde(serialize_with = "rational::serialize")]
    pub cw: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub selkow: Rational,
    #[serde(serialize_with = "rational::serialize_vec")]
    pub per_vertex_cw_term: Vec<Rational>,
    #[serde(serialize_with = "rational::serialize_vec")]
    pub per_vertex_correction: Vec<Rational>,
}

/// Selkow's bound `CW(G) + sum of selkow_correction(G, v)`, with every
/// per-vertex term.
pub fn selkow_bound(graph: &Graph) -> BoundReport {
    let per_vertex_cw_term: Vec<Rational> =
        (0..graph.n()).map(|v| inverse_succ(graph.degree(v))).collect();
    let per_vertex_correction: Vec<Rational> =
        (0..graph.n()).map(|v| selkow_correction(graph, v)).collect();
    let cw = per_vertex_cw_term
        .iter()
        .fold(Rational::zero(), |acc, t| acc + t);
    let selkow = per_vertex_correction
        .iter()
        .fold(cw.clone(), |acc, t| acc + t);
    BoundReport {
        cw,
        selkow,
        per_vertex_cw_term,
        per_vertex_correction,
    }
}
