use serde::Serialize;

use super::{FactorComponent, GraftAnalysis, UnionFind};
use crate::error::Result;
use crate::graft::Graft;
use crate::graph::{group_by_index, VertexId};
use crate::options::EngineOptions;

/// Classes of "same factor-component and distance zero".
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KLPartition {
    /// Sorted vertex lists, ordered by smallest vertex.
    pub classes: Vec<Vec<VertexId>>,
    pub class_of: Vec<usize>,
    /// Class ids inside each factor-component.
    pub component_classes: Vec<Vec<usize>>,
}

impl KLPartition {
    /// Closes the relation under transitivity; the verifier separately
    /// confirms no closure was needed.
    pub(crate) fn from_distances(
        component_of: &[usize],
        components: &[FactorComponent],
        distances: &[Vec<Option<i64>>],
    ) -> Self {
        let n = component_of.len();
        let mut uf = UnionFind::new(n);
        for c in components {
            for (i, &x) in c.vertices.iter().enumerate() {
                for &y in &c.vertices[i + 1..] {
                    if distances[x][y] == Some(0) {
                        uf.union(x, y);
                    }
                }
            }
        }
        let class_of = uf.classes();
        let classes = group_by_index(&class_of);
        let component_classes = components
            .iter()
            .map(|c| {
                let mut ids: Vec<usize> = c.vertices.iter().map(|&v| class_of[v]).collect();
                ids.sort_unstable();
                ids.dedup();
                ids
            })
            .collect();
        KLPartition {
            classes,
            class_of,
            component_classes,
        }
    }

    pub fn same_class(&self, x: VertexId, y: VertexId) -> bool {
        self.class_of[x] == self.class_of[y]
    }
}

pub fn kl_partition(graft: &Graft, opts: &EngineOptions) -> Result<KLPartition> {
    Ok(GraftAnalysis::new(graft, opts)?.kl)
}
