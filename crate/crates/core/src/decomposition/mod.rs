//! Canonical decompositions of a graft: factor-components, the general
//! Kotzig-Lovász partition, comb designations, the Dulmage-Mendelsohn poset
//! over factor-components and the attributes of upper bounds.

pub(crate) mod attributes;
mod classic;
mod comb;
mod components;
mod kl;
pub(crate) mod poset;

pub use attributes::{attributes, attributes_with, AttributeBucket, AttributeMap};
pub use classic::classic_dm;
pub use comb::{comb_designations, designation_from_spine, verify_comb_characterization, CombDesignation};
pub use components::{factor_components, factor_components_from, FactorComponent};
pub use kl::{kl_partition, KLPartition};
pub use poset::{defining_sequence, dm_relation, dm_relation_with, upper_bounds, DMPoset};

use crate::edgeset::EdgeSet;
use crate::error::Result;
use crate::graft::Graft;
use crate::graph::VertexId;
use crate::options::EngineOptions;
use crate::tjoin::{JoinEngine, MinJoinResult};

/// Everything the decompositions derive from the join engine, computed once.
pub struct GraftAnalysis<'a> {
    pub engine: JoinEngine<'a>,
    pub reference: MinJoinResult,
    pub allowed: EdgeSet,
    pub components: Vec<FactorComponent>,
    /// Factor-component id per vertex.
    pub component_of: Vec<usize>,
    /// `distances[x][y]`, `None` across connected components.
    pub distances: Vec<Vec<Option<i64>>>,
    pub kl: KLPartition,
}

impl<'a> GraftAnalysis<'a> {
    pub fn new(graft: &'a Graft, opts: &EngineOptions) -> Result<Self> {
        let engine = JoinEngine::new(graft, opts)?;
        let reference = engine.min_join()?;
        let allowed = engine.allowed_edges()?;
        let components = factor_components_from(graft.graph(), &allowed);
        let mut component_of = vec![0; graft.graph().vertex_count()];
        for c in &components {
            for &v in &c.vertices {
                component_of[v] = c.id;
            }
        }
        let distances = engine.distance_matrix();
        let kl = KLPartition::from_distances(&component_of, &components, &distances);
        Ok(GraftAnalysis {
            engine,
            reference,
            allowed,
            components,
            component_of,
            distances,
            kl,
        })
    }

    pub fn graft(&self) -> &Graft {
        self.engine.graft()
    }

    pub fn dist(&self, x: VertexId, y: VertexId) -> Option<i64> {
        self.distances[x][y]
    }
}

/// Union-find over `0..n` with path halving.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // the smaller root wins so class representatives are minimal
        if ra < rb {
            self.parent[rb] = ra;
        } else if rb < ra {
            self.parent[ra] = rb;
        }
    }

    /// Dense class index per element, numbered by smallest member.
    pub(crate) fn classes(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let mut id = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut next = 0;
        for x in 0..n {
            let r = self.find(x);
            if id[r] == usize::MAX {
                id[r] = next;
                next += 1;
            }
            out[x] = id[r];
        }
        out
    }
}
