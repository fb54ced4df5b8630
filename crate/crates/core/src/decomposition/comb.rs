use serde::Serialize;

use crate::error::{GraftError, Result};
use crate::graft::Graft;
use crate::graph::VertexId;
use crate::options::EngineOptions;
use crate::{oracle, tjoin};

/// Spine set `A` and tooth set `B` of a bipartite graft.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CombDesignation {
    pub spine: Vec<VertexId>,
    pub teeth: Vec<VertexId>,
}

impl CombDesignation {
    /// Spine = vertices colored `spine_color`.
    pub fn from_coloring(color: &[u8], spine_color: u8) -> Self {
        let (spine, teeth) = (0..color.len()).partition(|&v| color[v] == spine_color);
        CombDesignation { spine, teeth }
    }

    pub fn tooth_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &b in &self.teeth {
            mask[b] = true;
        }
        mask
    }

    pub fn is_tooth(&self, v: VertexId) -> bool {
        self.teeth.binary_search(&v).is_ok()
    }

    pub fn is_spine(&self, v: VertexId) -> bool {
        self.spine.binary_search(&v).is_ok()
    }

    /// Checks that `A`, `B` partition the vertices and every edge crosses.
    pub fn validate(&self, graft: &Graft) -> Result<()> {
        let g = graft.graph();
        let mut side = vec![None; g.vertex_count()];
        for (set, s) in [(&self.spine, 0u8), (&self.teeth, 1u8)] {
            if !set.windows(2).all(|w| w[0] < w[1]) {
                return Err(GraftError::InvalidDesignation(
                    "vertex lists must be sorted and distinct".into(),
                ));
            }
            for &v in set.iter() {
                g.check_vertex(v)?;
                if side[v].replace(s).is_some() {
                    return Err(GraftError::InvalidDesignation(format!(
                        "vertex {} is both spine and tooth",
                        g.label(v)
                    )));
                }
            }
        }
        if let Some(v) = side.iter().position(Option::is_none) {
            return Err(GraftError::InvalidDesignation(format!(
                "vertex {} is unassigned",
                g.label(v)
            )));
        }
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if side[u] == side[v] {
                return Err(GraftError::InvalidDesignation(format!("edge {e} does not cross A-B")));
            }
        }
        Ok(())
    }

    /// Validates the designation and checks ν(G, T) = |B| with every tooth
    /// a terminal. Without `B ⊆ T` the count alone does not force each
    /// minimum join to meet every tooth once.
    pub fn check_comb(&self, graft: &Graft, nu: usize) -> Result<()> {
        self.validate(graft)?;
        if nu != self.teeth.len() {
            return Err(GraftError::NotComb {
                nu,
                teeth: self.teeth.len(),
            });
        }
        if let Some(&b) = self.teeth.iter().find(|&&b| !graft.is_terminal(b)) {
            return Err(GraftError::ToothNotTerminal(graft.graph().label(b).to_string()));
        }
        Ok(())
    }
}

/// Designations under which the graft is comb-bipartite. The coloring puts
/// the smallest vertex of every connected component on side 0; both global
/// role assignments of that coloring are tested, side-0-as-spine first.
pub fn comb_designations(graft: &Graft, opts: &EngineOptions) -> Result<Vec<CombDesignation>> {
    let Some(color) = graft.graph().bipartition() else {
        return Ok(Vec::new());
    };
    let nu = tjoin::nu(graft, opts)?;
    Ok([0u8, 1u8]
        .into_iter()
        .map(|spine_color| CombDesignation::from_coloring(&color, spine_color))
        .filter(|d| d.check_comb(graft, nu).is_ok())
        .collect())
}

/// Designation with the given spine and every other vertex a tooth.
pub fn designation_from_spine(graft: &Graft, spine: &[VertexId]) -> Result<CombDesignation> {
    let inside = graft.graph().membership(spine)?;
    let (spine, teeth) = graft.graph().vertices().partition(|&v| inside[v]);
    let d = CombDesignation { spine, teeth };
    d.validate(graft)?;
    Ok(d)
}

/// Whether every minimum join meets every tooth's cut in exactly one edge
/// (exhaustive over all minimum joins).
pub fn verify_comb_characterization(graft: &Graft, d: &CombDesignation, opts: &EngineOptions) -> Result<bool> {
    d.validate(graft)?;
    let g = graft.graph();
    let (_, joins) = oracle::brute_min_joins(graft, opts)?;
    Ok(joins.iter().all(|f| {
        d.teeth
            .iter()
            .all(|&b| g.incident(b).iter().filter(|&&e| f.contains(e)).count() == 1)
    }))
}
