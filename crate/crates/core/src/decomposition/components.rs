use serde::Serialize;

use crate::edgeset::EdgeSet;
use crate::error::Result;
use crate::graft::Graft;
use crate::graph::{group_by_index, EdgeId, Multigraph, VertexId};
use crate::options::EngineOptions;
use crate::tjoin::JoinEngine;

/// A connected component of the allowed-edge subgraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorComponent {
    pub id: usize,
    pub vertices: Vec<VertexId>,
    /// Allowed edges with both ends inside.
    pub edges: Vec<EdgeId>,
}

impl FactorComponent {
    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

/// Components of `(V, allowed)`, numbered by smallest vertex. Vertices
/// without allowed edges form singletons.
pub fn factor_components_from(g: &Multigraph, allowed: &EdgeSet) -> Vec<FactorComponent> {
    let index = g.component_index_where(|e| allowed.contains(e));
    group_by_index(&index)
        .into_iter()
        .enumerate()
        .map(|(id, vertices)| FactorComponent {
            id,
            edges: allowed.iter().filter(|&e| index[g.endpoints(e).0] == id).collect(),
            vertices,
        })
        .collect()
}

pub fn factor_components(graft: &Graft, opts: &EngineOptions) -> Result<Vec<FactorComponent>> {
    let allowed = JoinEngine::new(graft, opts)?.allowed_edges()?;
    Ok(factor_components_from(graft.graph(), &allowed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named_instances;

    fn vertex_sets(graft: &Graft) -> Vec<Vec<VertexId>> {
        factor_components(graft, &EngineOptions::default())
            .unwrap()
            .into_iter()
            .map(|c| c.vertices)
            .collect()
    }

    #[test]
    fn named_components() {
        let named = named_instances();
        assert_eq!(vertex_sets(&named["C4"]), vec![vec![0, 1, 2, 3]]);
        assert_eq!(vertex_sets(&named["P4"]), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(
            vertex_sets(&named["two-pendant"]),
            vec![vec![0, 1, 2], vec![3, 4], vec![5, 6]]
        );
    }

    #[test]
    fn isolated_vertex_is_a_singleton() {
        let g = Multigraph::build(["u", "v", "w"], [("u", "v")]).unwrap();
        let graft = Graft::new(g, &[0, 1]).unwrap();
        assert_eq!(vertex_sets(&graft), vec![vec![0, 1], vec![2]]);
    }
}
