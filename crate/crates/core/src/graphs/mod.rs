//! Finite graphs: Kneser and Cayley constructions, exact coloring, embeddings.

mod cayley;
mod coloring;
mod kneser;

pub use cayley::{cayley_cyclic, cayley_f2, cayley_graph, cayley_graph_interval, chromatic_bounds_z, ZBounds};
pub use coloring::{
    brute_force_colorable, chromatic_number_exact, greedy_clique, k_colorable, Budget, ChromaticResult,
    ColoringCertificate, Decision,
};
pub use kneser::{kneser_embedding_into_hamming_cayley, kneser_graph, subsets, KneserEmbedding};

use crate::error::{Error, Result};
use crate::f2core::BitVector;

/// Vertex label carried for reporting and serialization.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Subset(Vec<u32>),
    Bits(BitVector),
    Int(i64),
}

/// Loop-free undirected graph on vertices 0..n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
    edge_count: usize,
    labels: Option<Vec<Label>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], edge_count: 0, labels: None }
    }

    /// Builds from an edge list; duplicates are merged, loops rejected.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u == v {
                return Err(Error::invalid(format!("loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::invalid(format!("edge ({u}, {v}) outside 0..{n}")));
            }
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        let mut edge_count = 0;
        for a in adj.iter_mut() {
            a.sort_unstable();
            a.dedup();
            edge_count += a.len();
        }
        Ok(Graph { adj, edge_count: edge_count / 2, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<Label>) -> Result<Self> {
        if labels.len() != self.adj.len() {
            return Err(Error::invalid("label count differs from vertex count"));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&(v as u32)).is_ok()
    }

    pub fn labels(&self) -> Option<&[Label]> {
        self.labels.as_deref()
    }

    /// Edges as (u, v) with u < v, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (u, a) in self.adj.iter().enumerate() {
            for &v in a {
                if u < v as usize {
                    out.push((u, v as usize));
                }
            }
        }
        out
    }

    /// Subgraph induced on `keep`, renumbered in the given order.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.adj.len()];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in keep.iter().enumerate() {
            for &u in &self.adj[v] {
                let j = pos[u as usize];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        let mut g = Graph::from_edges(keep.len(), edges).expect("induced subgraph is loop-free");
        if let Some(l) = &self.labels {
            g.labels = Some(keep.iter().map(|&v| l[v].clone()).collect());
        }
        g
    }
}

/// True iff no edge is monochromatic; every vertex must be colored.
pub fn is_proper_coloring(g: &Graph, f: &[Option<u32>]) -> Result<bool> {
    if f.len() != g.vertex_count() || f.iter().any(|c| c.is_none()) {
        return Err(Error::invalid("coloring is not total"));
    }
    Ok(g.edges().iter().all(|&(u, v)| f[u] != f[v]))
}

/// Convenience form of [`is_proper_coloring`] for total colorings.
pub fn is_proper_total(g: &Graph, f: &[u32]) -> bool {
    f.len() == g.vertex_count() && g.edges().iter().all(|&(u, v)| f[u] != f[v])
}

/// True iff `map` sends every edge of `sub` to an edge of `host`.
pub fn verify_embedding(host: &Graph, sub: &Graph, map: &[usize]) -> Result<bool> {
    if map.len() != sub.vertex_count() {
        return Err(Error::invalid("map domain differs from subgraph vertices"));
    }
    let mut seen = std::collections::HashSet::new();
    for &x in map {
        if x >= host.vertex_count() {
            return Err(Error::invalid(format!("image {x} is not a host vertex")));
        }
        if !seen.insert(x) {
            return Err(Error::invalid(format!("map is not injective at {x}")));
        }
    }
    Ok(sub.edges().iter().all(|&(u, v)| host.has_edge(map[u], map[v])))
}
