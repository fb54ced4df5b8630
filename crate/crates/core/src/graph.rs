//! Labeled multigraphs with loops and parallel edges.
//!
//! Vertices carry opaque string labels but are addressed internally by dense
//! ids `0..n`. An edge's id is its position in the input list and never
//! changes, so parallel edges stay distinguishable.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::edgeset::EdgeSet;
use crate::error::{GraftError, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Multigraph {
    labels: Vec<String>,
    edges: Vec<(VertexId, VertexId)>,
    #[serde(skip)]
    incidence: Vec<Vec<EdgeId>>,
}

impl Multigraph {
    /// Builds a multigraph from distinct labels and label endpoint pairs.
    pub fn build<L, E, S>(labels: L, endpoint_pairs: E) -> Result<Self>
    where
        L: IntoIterator<Item = S>,
        E: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let labels: Vec<String> = labels.into_iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (id, label) in labels.iter().enumerate() {
            if index.insert(label.as_str(), id).is_some() {
                return Err(GraftError::DuplicateLabel(label.clone()));
            }
        }
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| GraftError::UnknownLabel(s.to_string()))
        };
        let mut edges = Vec::new();
        for (u, v) in endpoint_pairs {
            edges.push((lookup(u.as_ref())?, lookup(v.as_ref())?));
        }
        Self::from_ids(labels, edges)
    }

    /// Builds a multigraph from labels and id endpoint pairs.
    pub fn from_ids(labels: Vec<String>, edges: Vec<(VertexId, VertexId)>) -> Result<Self> {
        let n = labels.len();
        let mut seen = HashMap::with_capacity(n);
        for label in &labels {
            if seen.insert(label.as_str(), ()).is_some() {
                return Err(GraftError::DuplicateLabel(label.clone()));
            }
        }
        let mut incidence = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(GraftError::InvalidVertex(w));
                }
            }
            incidence[u].push(id);
            if u != v {
                incidence[v].push(id);
            }
        }
        Ok(Multigraph {
            labels,
            edges,
            incidence,
        })
    }

    /// Vertices labeled `v0..v{n-1}`.
    pub fn with_default_labels(n: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Self> {
        Self::from_ids((0..n).map(|i| format!("v{i}")).collect(), edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn vertex(&self, label: &str) -> Result<VertexId> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| GraftError::UnknownLabel(label.to_string()))
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.labels.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        let (u, v) = self.edges[e];
        u == v
    }

    /// The end of `e` opposite to `v` (`v` itself for a loop).
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    /// Edges incident to `v` in increasing id order; a loop appears once.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v]
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(GraftError::InvalidVertex(v))
        }
    }

    pub fn check_edge(&self, e: EdgeId) -> Result<()> {
        if e < self.edge_count() {
            Ok(())
        } else {
            Err(GraftError::InvalidEdge(e))
        }
    }

    /// Indicator vector for a vertex set.
    pub fn membership(&self, set: &[VertexId]) -> Result<Vec<bool>> {
        let mut inside = vec![false; self.vertex_count()];
        for &v in set {
            self.check_vertex(v)?;
            inside[v] = true;
        }
        Ok(inside)
    }

    /// Edges with exactly one end in `set`. Loops never cross.
    pub fn cut(&self, set: &[VertexId]) -> Result<EdgeSet> {
        let inside = self.membership(set)?;
        Ok(EdgeSet::from_ids(
            self.edge_count(),
            self.edges
                .iter()
                .enumerate()
                .filter(|(_, &(u, v))| inside[u] != inside[v])
                .map(|(e, _)| e),
        ))
    }

    /// Edges with one end in `x` and the other in `y`.
    pub fn edges_between(&self, x: &[VertexId], y: &[VertexId]) -> Result<EdgeSet> {
        let in_x = self.membership(x)?;
        let in_y = self.membership(y)?;
        Ok(EdgeSet::from_ids(
            self.edge_count(),
            self.edges
                .iter()
                .enumerate()
                .filter(|(_, &(u, v))| (in_x[u] && in_y[v]) || (in_x[v] && in_y[u]))
                .map(|(e, _)| e),
        ))
    }

    /// Vertices outside `set` adjacent to some vertex of `set`, sorted.
    pub fn neighbors(&self, set: &[VertexId]) -> Result<Vec<VertexId>> {
        let inside = self.membership(set)?;
        let mut out = vec![false; self.vertex_count()];
        for &(u, v) in &self.edges {
            if inside[u] && !inside[v] {
                out[v] = true;
            }
            if inside[v] && !inside[u] {
                out[u] = true;
            }
        }
        Ok(self.vertices().filter(|&v| out[v]).collect())
    }

    /// Component index per vertex, using only edges accepted by `keep`.
    /// Components are numbered in order of their smallest vertex.
    pub fn component_index_where(&self, keep: impl Fn(EdgeId) -> bool) -> Vec<usize> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &e in &self.incidence[v] {
                    if !keep(e) {
                        continue;
                    }
                    let w = self.opposite(e, v);
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn component_index(&self) -> Vec<usize> {
        self.component_index_where(|_| true)
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        group_by_index(&self.component_index())
    }

    /// A proper 2-coloring with the smallest vertex of every connected
    /// component colored `0`, or `None` if the graph has an odd circuit
    /// (a loop counts as one).
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let n = self.vertex_count();
        let mut color = vec![u8::MAX; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &e in &self.incidence[v] {
                    let w = self.opposite(e, v);
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

    /// Unweighted shortest path lengths from `source`, ignoring removed edges.
    /// Unreachable vertices get `u32::MAX`.
    pub(crate) fn bfs_lengths(&self, source: VertexId, removed: Option<&EdgeSet>) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.vertex_count()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.incidence[v] {
                if removed.is_some_and(|r| r.contains(e)) {
                    continue;
                }
                let w = self.opposite(e, v);
                if dist[w] == u32::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// Groups ids `0..index.len()` by their class index.
pub(crate) fn group_by_index(index: &[usize]) -> Vec<Vec<usize>> {
    let count = index.iter().map(|&c| c + 1).max().unwrap_or(0);
    let mut groups = vec![Vec::new(); count];
    for (v, &c) in index.iter().enumerate() {
        groups[c].push(v);
    }
    groups
}
