//! Simple undirected graphs on the vertex ids `0..n`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite, simple, undirected graph stored as sorted adjacency lists.
///
/// Vertices are the contiguous ids `0..n`. Every constructor validates the
/// graph, so adjacency is always symmetric, loop-free and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// The graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) are collapsed; self-loops and out-of-range ids are errors.
    pub fn from_edge_list<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for id in [u, v] {
                if id >= n {
                    return Err(Error::VertexOutOfRange { id, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let graph = Graph { adj };
        debug_assert!(graph.is_well_formed());
        Ok(graph)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Sorted neighbor ids of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Each edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn is_regular(&self) -> bool {
        self.adj.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// A copy of the graph with the edge `uv` added.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        Graph::from_edge_list(self.n(), self.edges().chain(std::iter::once((u, v))))
    }

    /// True if no two vertices of `set` are adjacent.
    pub fn is_independent(&self, set: &VertexSet) -> bool {
        set.iter()
            .all(|v| self.adj[v].iter().all(|&u| !set.contains(u)))
    }

    /// The subgraph induced by `keep`. Vertex `i` of the result is
    /// `keep.as_slice()[i]` in `self`.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> InducedSubgraph {
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let adj = keep
            .iter()
            .map(|v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&u| (new_id[u] != usize::MAX).then_some(new_id[u]))
                    .collect()
            })
            .collect();
        InducedSubgraph {
            graph: Graph { adj },
            original: keep.clone(),
        }
    }

    /// Checks the structural invariants: symmetric, loop-free, sorted,
    /// duplicate-free adjacency with in-range ids.
    pub fn is_well_formed(&self) -> bool {
        let n = self.n();
        self.adj.iter().enumerate().all(|(v, list)| {
            list.windows(2).all(|w| w[0] < w[1])
                && list
                    .iter()
                    .all(|&u| u < n && u != v && self.adj[u].binary_search(&v).is_ok())
        })
    }
}

/// An induced subgraph together with the ids its vertices had in the parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `original.as_slice()[i]` is the parent id of vertex `i`.
    pub original: VertexSet,
}

impl InducedSubgraph {
    pub fn to_parent(&self, v: usize) -> usize {
        self.original.as_slice()[v]
    }

    /// Translates a set of subgraph ids into parent ids.
    pub fn lift(&self, set: &VertexSet) -> VertexSet {
        // `original` is increasing, so the image of an increasing list stays sorted.
        VertexSet(set.iter().map(|v| self.to_parent(v)).collect())
    }
}

/// A strictly increasing list of vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    /// Builds a set from ids in any order, dropping repeats.
    pub fn from_unsorted(mut ids: Vec<usize>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        VertexSet(ids)
    }

    /// The ids `v` with `mask[v]` set.
    pub fn from_mask(mask: &[bool]) -> Self {
        VertexSet(
            mask.iter()
                .enumerate()
                .filter_map(|(v, &b)| b.then_some(v))
                .collect(),
        )
    }

    pub fn all(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::from_unsorted(self.iter().chain(other.iter()).collect())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        VertexSet::from_unsorted(iter.into_iter().collect())
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(ids: Vec<usize>) -> Self {
        VertexSet::from_unsorted(ids)
    }
}
