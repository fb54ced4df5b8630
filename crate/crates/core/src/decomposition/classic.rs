use super::{CombDesignation, DMPoset, GraftAnalysis};
use crate::error::{GraftError, Result};
use crate::graft::Graft;
use crate::graph::{Multigraph, VertexId};
use crate::options::EngineOptions;

/// Classical Dulmage-Mendelsohn poset of a factorizable bipartite graph,
/// obtained as the comb poset of the graft `(G, V(G))` with the side-0
/// color class as spine.
pub fn classic_dm(g: &Multigraph, opts: &EngineOptions) -> Result<DMPoset> {
    let color = g.bipartition().ok_or(GraftError::NotBipartite)?;
    let all: Vec<VertexId> = g.vertices().collect();
    let graft = match Graft::new(g.clone(), &all) {
        Ok(graft) => graft,
        Err(GraftError::OddComponent(_)) => return Err(GraftError::NotFactorizable),
        Err(e) => return Err(e),
    };
    let analysis = GraftAnalysis::new(&graft, opts)?;
    if 2 * analysis.engine.nu() != g.vertex_count() {
        return Err(GraftError::NotFactorizable);
    }
    let d = CombDesignation::from_coloring(&color, 0);
    super::poset::dm_relation_with(&analysis, &d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graphs() {
        let opts = EngineOptions::default();
        let c4 = Multigraph::with_default_labels(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(classic_dm(&c4, &opts).unwrap().len(), 1);

        let p4 = Multigraph::with_default_labels(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        let p = classic_dm(&p4, &opts).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.hasse, vec![(0, 1)]);

        let c6 = Multigraph::with_default_labels(6, (0..6).map(|i| (i, (i + 1) % 6)).collect()).unwrap();
        let p = classic_dm(&c6, &opts).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p.hasse.is_empty());
    }

    #[test]
    fn errors() {
        let opts = EngineOptions::default();
        let triangle = Multigraph::with_default_labels(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(classic_dm(&triangle, &opts), Err(GraftError::NotBipartite));
        let p3 = Multigraph::with_default_labels(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(classic_dm(&p3, &opts), Err(GraftError::NotFactorizable));
        let star = Multigraph::with_default_labels(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(classic_dm(&star, &opts), Err(GraftError::NotFactorizable));
    }
}
