use serde::Serialize;

use crate::edgeset::EdgeSet;
use crate::error::{GraftError, Result};
use crate::graph::{EdgeId, Multigraph, VertexId};

/// A multigraph with a terminal set meeting every connected component in
/// an even number of vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Graft {
    graph: Multigraph,
    terminals: Vec<VertexId>,
    #[serde(skip)]
    is_terminal: Vec<bool>,
}

impl Graft {
    /// Checks per-component terminal parity.
    pub fn new(graph: Multigraph, terminals: &[VertexId]) -> Result<Self> {
        let is_terminal = graph.membership(terminals)?;
        let comp = graph.component_index();
        let ncomp = comp.iter().map(|&c| c + 1).max().unwrap_or(0);
        let mut parity = vec![false; ncomp];
        for v in graph.vertices().filter(|&v| is_terminal[v]) {
            parity[comp[v]] ^= true;
        }
        if let Some(odd) = parity.iter().position(|&p| p) {
            let members = graph.vertices().filter(|&v| comp[v] == odd).collect();
            return Err(GraftError::OddComponent(members));
        }
        let terminals = graph.vertices().filter(|&v| is_terminal[v]).collect();
        Ok(Graft {
            graph,
            terminals,
            is_terminal,
        })
    }

    /// Like [`Graft::new`] with terminals given by label.
    pub fn with_labels<S: AsRef<str>>(graph: Multigraph, terminals: &[S]) -> Result<Self> {
        let ids = terminals
            .iter()
            .map(|l| graph.vertex(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Graft::new(graph, &ids)
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    /// Terminal vertices, sorted.
    pub fn terminals(&self) -> &[VertexId] {
        &self.terminals
    }

    pub fn is_terminal(&self, v: VertexId) -> bool {
        self.is_terminal[v]
    }

    pub fn terminal_mask(&self) -> &[bool] {
        &self.is_terminal
    }

    /// Same graph with the terminal set replaced by `T Δ {x, y}`.
    pub fn toggled(&self, x: VertexId, y: VertexId) -> Result<Graft> {
        let mut mask = self.is_terminal.clone();
        mask[x] ^= true;
        mask[y] ^= true;
        let ts: Vec<_> = self.graph.vertices().filter(|&v| mask[v]).collect();
        Graft::new(self.graph.clone(), &ts)
    }

    /// True iff `|F ∩ δ(v)|` is odd exactly for the terminals. A loop counts
    /// twice at its vertex and so never affects parity.
    pub fn is_join(&self, f: &EdgeSet) -> bool {
        let mut odd = vec![false; self.graph.vertex_count()];
        for e in f.iter() {
            if e >= self.graph.edge_count() {
                return false;
            }
            let (u, v) = self.graph.endpoints(e);
            if u != v {
                odd[u] ^= true;
                odd[v] ^= true;
            }
        }
        odd == self.is_terminal
    }
}

/// `validate_graft`: wraps [`Graft::new`].
pub fn validate_graft(graph: Multigraph, terminals: &[VertexId]) -> Result<Graft> {
    Graft::new(graph, terminals)
}

/// Sum over `s` of `-1` for edges of `f` and `+1` otherwise.
pub fn weight<I: IntoIterator<Item = EdgeId>>(f: &EdgeSet, s: I) -> i64 {
    s.into_iter().map(|e| if f.contains(e) { -1 } else { 1 }).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named_instances;

    #[test]
    fn parity_validation() {
        let k2 = Multigraph::build(["u", "v"], [("u", "v")]).unwrap();
        assert!(Graft::new(k2.clone(), &[0, 1]).is_ok());
        assert_eq!(Graft::new(k2, &[0]), Err(GraftError::OddComponent(vec![0, 1])));
        let two_k2 = Multigraph::with_default_labels(4, vec![(0, 1), (2, 3)]).unwrap();
        assert_eq!(Graft::new(two_k2, &[0, 2]), Err(GraftError::OddComponent(vec![0, 1])));
    }

    #[test]
    fn weights() {
        let none = EdgeSet::new(5);
        assert_eq!(weight(&none, [0, 1, 2]), 3);
        let f = EdgeSet::from_ids(5, [1, 3]);
        assert_eq!(weight(&f, [1, 3]), -2);
        assert_eq!(weight(&f, [0, 1, 2, 3]), 0);
    }

    #[test]
    fn join_predicate() {
        let named = named_instances();
        let k2 = &named["K2"];
        assert!(k2.is_join(&EdgeSet::from_ids(1, [0])));
        assert!(!k2.is_join(&EdgeSet::new(1)));
        let c4 = &named["C4"];
        // a1b1, a2b2
        assert!(c4.is_join(&EdgeSet::from_ids(4, [0, 2])));
        assert!(!c4.is_join(&EdgeSet::from_ids(4, [0, 1])));
    }

    #[test]
    fn loops_do_not_change_parity() {
        let g = Multigraph::with_default_labels(2, vec![(0, 0), (0, 1)]).unwrap();
        let graft = Graft::new(g, &[0, 1]).unwrap();
        assert!(graft.is_join(&EdgeSet::from_ids(2, [1])));
        assert!(graft.is_join(&EdgeSet::from_ids(2, [0, 1])));
        assert!(!graft.is_join(&EdgeSet::from_ids(2, [0])));
    }
}
