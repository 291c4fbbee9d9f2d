//! Simple undirected graphs, generators for the graph families studied here,
//! and structural classification (triangles, diamonds, factors).

mod factor;
pub(crate) mod generators;
mod io;
mod structure;

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::vset::{VertexSet, MAX_BOARD};

pub use factor::{find_factor, FactorCertificate, FactorKind};
pub use generators::*;
pub use io::{
    adjacency_listing, graph_from_json_value, graph_to_json_value, parse_graph, parse_graph_auto,
    serialize_graph, GraphFormat,
};
pub use structure::{classify_structure, diamonds, raw_triangles, Diamond, StructureReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("malformed graph input: {0}")]
    Malformed(String),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameter(String),
    #[error("graph is not cubic")]
    NotCubic,
    #[error("graph has {0} vertices, more than the supported maximum")]
    TooLarge(usize),
    #[error("structural relation violated: {0}")]
    RelationViolated(String),
}

/// Labeled simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    labels: Vec<Option<String>>,
}

/// Degree, connectivity and bipartiteness flags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Validation {
    pub cubic: bool,
    pub connected: bool,
    pub bipartite: bool,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            labels: vec![None; n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<(), GraphError> {
        let n = self.n();
        for v in [a, b] {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
        }
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        match self.adjacency[a].binary_search(&b) {
            Ok(_) => Err(GraphError::DuplicateEdge(a.min(b), a.max(b))),
            Err(pos) => {
                self.adjacency[a].insert(pos, b);
                let pos = self.adjacency[b].binary_search(&a).unwrap_err();
                self.adjacency[b].insert(pos, a);
                Ok(())
            }
        }
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (i, row) in self.adjacency.iter().enumerate() {
            out.extend(row.iter().filter(|&&j| j > i).map(|&j| (i, j)));
        }
        out
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// Open neighbourhood as a bitmask. Only meaningful for boards of at most 64 vertices.
    pub fn neighbor_set(&self, v: usize) -> VertexSet {
        VertexSet::from_iter(self.adjacency[v].iter().copied())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels[v].as_deref()
    }

    /// The label of `v`, or its numeric id when unlabeled.
    pub fn display_name(&self, v: usize) -> String {
        self.label(v).map(str::to_string).unwrap_or_else(|| v.to_string())
    }

    pub fn set_label(&mut self, v: usize, label: impl Into<String>) {
        self.labels[v] = Some(label.into());
    }

    pub fn clear_labels(&mut self) {
        self.labels.iter_mut().for_each(|l| *l = None);
    }

    pub fn has_labels(&self) -> bool {
        self.labels.iter().any(Option::is_some)
    }

    /// First vertex carrying exactly this label.
    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.as_deref() == Some(label))
    }

    /// Vertex by label, panicking when absent. For generator-internal wiring.
    pub fn v(&self, label: &str) -> usize {
        self.vertex_by_label(label)
            .unwrap_or_else(|| panic!("no vertex labeled {label:?}"))
    }

    pub fn ensure_board_size(&self) -> Result<(), GraphError> {
        if self.n() > MAX_BOARD {
            Err(GraphError::TooLarge(self.n()))
        } else {
            Ok(())
        }
    }

    pub fn is_regular(&self, d: usize) -> bool {
        self.adjacency.iter().all(|row| row.len() == d)
    }

    pub fn is_cubic(&self) -> bool {
        self.is_regular(3)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n
    }

    /// A proper 2-colouring, if one exists.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let n = self.n();
        let mut color = vec![u8::MAX; n];
        for start in 0..n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adjacency[v] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[v];
                        queue.push_back(w);
                    } else if color[w] == color[v] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn validate(&self) -> Validation {
        Validation {
            cubic: self.is_cubic(),
            connected: self.is_connected(),
            bipartite: self.two_coloring().is_some(),
        }
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n();
        let mut best: Option<usize> = None;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adjacency[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    } else if parent[v] != w {
                        let len = dist[v] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Graph with vertex `v` renamed to `perm[v]`. Labels travel with their vertices.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n());
        let mut g = Graph::empty(self.n());
        for (a, b) in self.edges() {
            g.add_edge(perm[a], perm[b]).expect("relabeling preserves simplicity");
        }
        for v in 0..self.n() {
            g.labels[perm[v]] = self.labels[v].clone();
        }
        g
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::empty(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            g.labels[i] = self.labels[v].clone();
            for &w in &self.adjacency[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    g.add_edge(i, j).expect("induced subgraph is simple");
                }
            }
        }
        g
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut g = Graph::empty(off + other.n());
        for (a, b) in self.edges() {
            g.add_edge(a, b).unwrap();
        }
        for (a, b) in other.edges() {
            g.add_edge(a + off, b + off).unwrap();
        }
        for v in 0..off {
            g.labels[v] = self.labels[v].clone();
        }
        for v in 0..other.n() {
            g.labels[off + v] = other.labels[v].clone();
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            Graph::from_edges(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(Graph::from_edges(3, &[(2, 2)]), Err(GraphError::SelfLoop(2)));
        assert_eq!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn validate_flags() {
        let c4 = cycle(4);
        assert_eq!(
            c4.validate(),
            Validation { cubic: false, connected: true, bipartite: true }
        );
        let two_k4 = complete(4).disjoint_union(&complete(4));
        let v = two_k4.validate();
        assert!(v.cubic && !v.connected);
        let gp72 = generalized_petersen(7, 2).unwrap();
        let v = gp72.validate();
        assert!(v.cubic && v.connected && !v.bipartite);
    }

    #[test]
    fn girth_of_small_graphs() {
        assert_eq!(complete(4).girth(), Some(3));
        assert_eq!(cycle(7).girth(), Some(7));
        assert_eq!(star(3).girth(), None);
    }

    #[test]
    fn induced_keeps_labels() {
        let g = generalized_petersen(5, 1).unwrap();
        let sub = g.induced(&[g.v("u0"), g.v("u1"), g.v("v1"), g.v("v0")]);
        assert_eq!(sub.edge_count(), 4);
        assert_eq!(sub.label(2), Some("v1"));
    }
}
