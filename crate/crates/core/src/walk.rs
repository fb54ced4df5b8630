use std::collections::HashSet;

use serde::Serialize;

use crate::edgeset::EdgeSet;
use crate::error::{GraftError, Result};
use crate::graft::weight;
use crate::graph::{EdgeId, Multigraph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum WalkKind {
    Path,
    Circuit,
}

/// Alternating vertex/edge sequence. A circuit repeats its first vertex at
/// the end. Edges are stored by id so parallel edges stay unambiguous.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Walk {
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
    kind: WalkKind,
}

impl Walk {
    pub fn path(g: &Multigraph, vertices: Vec<VertexId>, edges: Vec<EdgeId>) -> Result<Walk> {
        let walk = Walk {
            vertices,
            edges,
            kind: WalkKind::Path,
        };
        walk.validate(g)?;
        Ok(walk)
    }

    pub fn circuit(g: &Multigraph, vertices: Vec<VertexId>, edges: Vec<EdgeId>) -> Result<Walk> {
        let walk = Walk {
            vertices,
            edges,
            kind: WalkKind::Circuit,
        };
        walk.validate(g)?;
        Ok(walk)
    }

    /// Follows `edges` from `start`, recovering the vertex sequence.
    pub fn trace(g: &Multigraph, kind: WalkKind, start: VertexId, edges: Vec<EdgeId>) -> Result<Walk> {
        g.check_vertex(start)?;
        let mut vertices = vec![start];
        let mut at = start;
        for &e in &edges {
            g.check_edge(e)?;
            let (u, v) = g.endpoints(e);
            at = if u == at {
                v
            } else if v == at {
                u
            } else {
                return Err(GraftError::InvalidWalk(format!("edge {e} does not touch vertex {at}")));
            };
            vertices.push(at);
        }
        let walk = Walk { vertices, edges, kind };
        walk.validate(g)?;
        Ok(walk)
    }

    pub fn single_vertex(v: VertexId) -> Walk {
        Walk {
            vertices: vec![v],
            edges: Vec::new(),
            kind: WalkKind::Path,
        }
    }

    /// Unchecked constructor for enumerators that build valid walks by construction.
    pub(crate) fn from_parts(vertices: Vec<VertexId>, edges: Vec<EdgeId>, kind: WalkKind) -> Walk {
        debug_assert_eq!(vertices.len(), edges.len() + 1);
        Walk { vertices, edges, kind }
    }

    fn validate(&self, g: &Multigraph) -> Result<()> {
        let bad = |msg: String| Err(GraftError::InvalidWalk(msg));
        if self.vertices.len() != self.edges.len() + 1 {
            return bad("vertex and edge counts do not alternate".into());
        }
        for &v in &self.vertices {
            g.check_vertex(v)?;
        }
        for (i, &e) in self.edges.iter().enumerate() {
            g.check_edge(e)?;
            let (u, v) = g.endpoints(e);
            let (a, b) = (self.vertices[i], self.vertices[i + 1]);
            if !((u == a && v == b) || (u == b && v == a)) {
                return bad(format!("edge {e} does not join {a} and {b}"));
            }
        }
        let distinct = |vs: &[VertexId]| vs.iter().collect::<HashSet<_>>().len() == vs.len();
        match self.kind {
            WalkKind::Path => {
                if !distinct(&self.vertices) {
                    return bad("path repeats a vertex".into());
                }
            }
            WalkKind::Circuit => {
                if self.edges.is_empty() {
                    return bad("circuit without edges".into());
                }
                if self.vertices.first() != self.vertices.last() {
                    return bad("circuit does not close".into());
                }
                if !distinct(&self.vertices[1..]) {
                    return bad("circuit repeats a vertex".into());
                }
                if self.edges.iter().collect::<HashSet<_>>().len() != self.edges.len() {
                    return bad("circuit repeats an edge".into());
                }
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> WalkKind {
        self.kind
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn start(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn end(&self) -> VertexId {
        *self.vertices.last().unwrap()
    }

    /// Distinct vertices (a circuit's closing vertex once).
    pub fn vertex_set(&self) -> &[VertexId] {
        match self.kind {
            WalkKind::Path => &self.vertices,
            WalkKind::Circuit => &self.vertices[..self.vertices.len() - 1],
        }
    }

    pub fn edge_set(&self, universe: usize) -> EdgeSet {
        EdgeSet::from_ids(universe, self.edges.iter().copied())
    }

    pub fn weight(&self, f: &EdgeSet) -> i64 {
        weight(f, self.edges.iter().copied())
    }

    /// The subpath between positions `i <= j`.
    pub fn segment(&self, i: usize, j: usize) -> Walk {
        assert!(i <= j && j < self.vertices.len());
        Walk {
            vertices: self.vertices[i..=j].to_vec(),
            edges: self.edges[i..j].to_vec(),
            kind: WalkKind::Path,
        }
    }

    /// `xPy`: the subpath of a path between two of its vertices.
    pub fn subpath(&self, x: VertexId, y: VertexId) -> Option<Walk> {
        if self.kind != WalkKind::Path {
            return None;
        }
        let i = self.vertices.iter().position(|&v| v == x)?;
        let j = self.vertices.iter().position(|&v| v == y)?;
        Some(if i <= j {
            self.segment(i, j)
        } else {
            self.segment(j, i).reversed()
        })
    }

    pub fn reversed(&self) -> Walk {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        let mut edges = self.edges.clone();
        edges.reverse();
        Walk {
            vertices,
            edges,
            kind: self.kind,
        }
    }

    /// Pairs `(vertex, incoming edge, outgoing edge)` for every vertex of
    /// walk-degree two.
    fn degree_two_positions(&self) -> Vec<(VertexId, EdgeId, EdgeId)> {
        let k = self.edges.len();
        let mut out: Vec<_> = (1..k)
            .map(|i| (self.vertices[i], self.edges[i - 1], self.edges[i]))
            .collect();
        if self.kind == WalkKind::Circuit {
            out.push((self.vertices[0], self.edges[k - 1], self.edges[0]));
        }
        out
    }
}

/// True iff every vertex of walk-degree two meets exactly one walk edge in
/// `f` and one outside it.
pub fn is_balanced(w: &Walk, f: &EdgeSet) -> bool {
    w.degree_two_positions()
        .into_iter()
        .all(|(_, a, b)| a != b && f.contains(a) != f.contains(b))
}

/// Balance required only at tooth vertices. This is the form under which
/// the weight table for comb-bipartite grafts holds: spine vertices may be
/// passed through on two join edges.
pub fn is_tooth_balanced(w: &Walk, f: &EdgeSet, teeth: &[bool]) -> bool {
    w.degree_two_positions()
        .into_iter()
        .filter(|&(v, _, _)| teeth[v])
        .all(|(_, a, b)| a != b && f.contains(a) != f.contains(b))
}

/// Ear relative to `x`: a path with at least one edge, both ends in `x` and
/// every internal vertex outside, or a circuit meeting `x` in exactly one
/// vertex.
pub fn is_ear(g: &Multigraph, x: &[VertexId], w: &Walk) -> bool {
    let Ok(inside) = g.membership(x) else {
        return false;
    };
    match w.kind {
        WalkKind::Path => {
            let vs = &w.vertices;
            !w.edges.is_empty()
                && inside[vs[0]]
                && inside[vs[vs.len() - 1]]
                && vs[1..vs.len() - 1].iter().all(|&v| !inside[v])
        }
        WalkKind::Circuit => w.vertex_set().iter().filter(|&&v| inside[v]).count() == 1,
    }
}
