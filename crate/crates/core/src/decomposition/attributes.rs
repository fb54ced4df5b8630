use std::collections::BTreeMap;

use serde::Serialize;

use super::{upper_bounds, CombDesignation, DMPoset, GraftAnalysis, UnionFind};
use crate::error::{GraftError, Result};
use crate::graft::Graft;
use crate::graph::VertexId;
use crate::options::EngineOptions;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AttributeBucket {
    /// KL class id; the class lies in the tooth part of the base component.
    pub class: usize,
    pub members: Vec<usize>,
}

/// Labels of the strict upper bounds of one component by KL classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AttributeMap {
    pub base: usize,
    /// Upper bound id → class id.
    pub labels: BTreeMap<usize, usize>,
    /// One bucket per tooth class of the base component, possibly empty.
    pub buckets: Vec<AttributeBucket>,
}

impl AttributeMap {
    pub fn label(&self, component: usize) -> Option<usize> {
        self.labels.get(&component).copied()
    }
}

/// KL classes contained in `B ∩ V(c0)`, sorted.
pub(crate) fn tooth_classes(analysis: &GraftAnalysis<'_>, d: &CombDesignation, c0: usize) -> Vec<usize> {
    analysis.kl.component_classes[c0]
        .iter()
        .copied()
        .filter(|&s| analysis.kl.classes[s].iter().all(|&v| d.is_tooth(v)))
        .collect()
}

/// Classes met by `N(D) ∩ V(c0)`.
pub(crate) fn seed_classes(analysis: &GraftAnalysis<'_>, upper: usize, c0: usize) -> Result<Vec<usize>> {
    let g = analysis.graft().graph();
    let touching: Vec<VertexId> = g
        .neighbors(&analysis.components[upper].vertices)?
        .into_iter()
        .filter(|&v| analysis.component_of[v] == c0)
        .collect();
    let mut classes: Vec<usize> = touching.iter().map(|&v| analysis.kl.class_of[v]).collect();
    classes.sort_unstable();
    classes.dedup();
    Ok(classes)
}

/// Seeds every upper bound adjacent to `c0` with the class its neighbors in
/// `c0` fall into, then spreads labels across adjacency inside the set of
/// upper bounds. Conflicting or missing labels are reported, not repaired.
pub fn attributes_with(analysis: &GraftAnalysis<'_>, p: &DMPoset, c0: usize) -> Result<AttributeMap> {
    let d = &p.designation;
    let ups = upper_bounds(p, c0)?;
    let keys = tooth_classes(analysis, d, c0);

    let mut seed: BTreeMap<usize, usize> = BTreeMap::new();
    for &up in &ups {
        let classes = seed_classes(analysis, up, c0)?;
        match classes.as_slice() {
            [] => {}
            [s] if keys.contains(s) => {
                seed.insert(up, *s);
            }
            _ => return Err(GraftError::InconsistentLabeling { component: up, classes }),
        }
    }

    let g = analysis.graft().graph();
    let pos: BTreeMap<usize, usize> = ups.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut uf = UnionFind::new(ups.len());
    for &(u, v) in g.edges() {
        let (cu, cv) = (analysis.component_of[u], analysis.component_of[v]);
        if let (Some(&i), Some(&j)) = (pos.get(&cu), pos.get(&cv)) {
            uf.union(i, j);
        }
    }
    let mut block_label: BTreeMap<usize, usize> = BTreeMap::new();
    for (&up, &s) in &seed {
        let root = uf.find(pos[&up]);
        if let Some(&prev) = block_label.get(&root) {
            if prev != s {
                return Err(GraftError::InconsistentLabeling {
                    component: up,
                    classes: vec![prev.min(s), prev.max(s)],
                });
            }
        }
        block_label.insert(root, s);
    }

    let mut labels = BTreeMap::new();
    for (i, &up) in ups.iter().enumerate() {
        let root = uf.find(i);
        let s = *block_label.get(&root).ok_or(GraftError::UnlabeledUpperBound(up))?;
        labels.insert(up, s);
    }
    let buckets = keys
        .iter()
        .map(|&class| AttributeBucket {
            class,
            members: labels.iter().filter(|&(_, &s)| s == class).map(|(&c, _)| c).collect(),
        })
        .collect();
    Ok(AttributeMap {
        base: c0,
        labels,
        buckets,
    })
}

pub fn attributes(graft: &Graft, d: &CombDesignation, c0: usize, opts: &EngineOptions) -> Result<AttributeMap> {
    let analysis = GraftAnalysis::new(graft, opts)?;
    let p = super::poset::dm_relation_with(&analysis, d)?;
    attributes_with(&analysis, &p, c0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named_instances;

    fn attrs(name: &str, c0: usize) -> (AttributeMap, Vec<Vec<VertexId>>) {
        let graft = &named_instances()[name];
        let color = graft.graph().bipartition().unwrap();
        let d = CombDesignation::from_coloring(&color, 0);
        let opts = EngineOptions::default();
        let analysis = GraftAnalysis::new(graft, &opts).unwrap();
        let p = super::super::poset::dm_relation_with(&analysis, &d).unwrap();
        (attributes_with(&analysis, &p, c0).unwrap(), analysis.kl.classes.clone())
    }

    #[test]
    fn two_pendant() {
        let (map, classes) = attrs("two-pendant", 0);
        // b1 = 1, b2 = 2
        assert_eq!(classes[map.label(1).unwrap()], vec![1]);
        assert_eq!(classes[map.label(2).unwrap()], vec![2]);
        assert_eq!(map.buckets.len(), 2);
        assert!(map.buckets.iter().all(|b| b.members.len() == 1));
    }

    #[test]
    fn chain_propagates() {
        let (map, classes) = attrs("chain", 0);
        assert_eq!(map.label(3), map.label(1));
        assert_eq!(classes[map.label(3).unwrap()], vec![1]);
    }

    #[test]
    fn p4_single_class() {
        let (map, classes) = attrs("P4", 0);
        assert_eq!(classes[map.label(1).unwrap()], vec![1]);
        let (top, _) = attrs("P4", 1);
        assert!(top.labels.is_empty());
    }
}
