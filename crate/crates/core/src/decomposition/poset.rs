use std::collections::VecDeque;

use serde::Serialize;

use super::{CombDesignation, FactorComponent, GraftAnalysis};
use crate::error::{GraftError, Result};
use crate::graft::Graft;
use crate::graph::Multigraph;
use crate::options::EngineOptions;

/// Dulmage-Mendelsohn relation over factor-components.
///
/// `base[i][j]` holds when `i == j` or some edge joins a spine vertex of
/// component `j` to a tooth vertex of component `i`; `order` is its
/// reflexive-transitive closure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DMPoset {
    pub designation: CombDesignation,
    pub components: Vec<FactorComponent>,
    pub base: Vec<Vec<bool>>,
    pub order: Vec<Vec<bool>>,
    /// Cover pairs `(lower, upper)` of the order, sorted.
    pub hasse: Vec<(usize, usize)>,
}

/// Base relation from the edges running between components.
pub(crate) fn base_relation(
    g: &Multigraph,
    d: &CombDesignation,
    component_of: &[usize],
    count: usize,
) -> Vec<Vec<bool>> {
    let mut base = vec![vec![false; count]; count];
    for (i, row) in base.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(u, v) in g.edges() {
        let (a, b) = if d.is_spine(u) { (u, v) } else { (v, u) };
        if d.is_spine(a) && d.is_tooth(b) {
            base[component_of[b]][component_of[a]] = true;
        }
    }
    base
}

pub(crate) fn transitive_closure(base: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let k = base.len();
    let mut reach = base.to_vec();
    for mid in 0..k {
        for i in 0..k {
            if reach[i][mid] {
                for j in 0..k {
                    if reach[mid][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    reach
}

/// Cover relation of a partial order given as a reachability matrix.
pub(crate) fn transitive_reduction(order: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let k = order.len();
    let mut out = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i == j || !order[i][j] {
                continue;
            }
            let covered = (0..k).any(|m| m != i && m != j && order[i][m] && order[m][j]);
            if !covered {
                out.push((i, j));
            }
        }
    }
    out
}

impl DMPoset {
    pub(crate) fn build(g: &Multigraph, d: &CombDesignation, components: &[FactorComponent]) -> Result<Self> {
        let mut component_of = vec![0; g.vertex_count()];
        for c in components {
            for &v in &c.vertices {
                component_of[v] = c.id;
            }
        }
        let base = base_relation(g, d, &component_of, components.len());
        let order = transitive_closure(&base);
        for i in 0..order.len() {
            for j in i + 1..order.len() {
                if order[i][j] && order[j][i] {
                    return Err(GraftError::AntisymmetryViolation(i, j));
                }
            }
        }
        let hasse = transitive_reduction(&order);
        Ok(DMPoset {
            designation: d.clone(),
            components: components.to_vec(),
            base,
            order,
            hasse,
        })
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn precedes(&self, lower: usize, upper: usize) -> bool {
        self.order[lower][upper]
    }

    fn check(&self, c: usize) -> Result<()> {
        if c < self.len() {
            Ok(())
        } else {
            Err(GraftError::UnknownComponent(c))
        }
    }
}

/// Builds the poset for a comb designation; fails with `NotComb` otherwise.
pub fn dm_relation(graft: &Graft, d: &CombDesignation, opts: &EngineOptions) -> Result<DMPoset> {
    let analysis = GraftAnalysis::new(graft, opts)?;
    dm_relation_with(&analysis, d)
}

pub fn dm_relation_with(analysis: &GraftAnalysis<'_>, d: &CombDesignation) -> Result<DMPoset> {
    d.check_comb(analysis.graft(), analysis.engine.nu())?;
    DMPoset::build(analysis.graft().graph(), d, &analysis.components)
}

/// Strict upper bounds of `c`, sorted.
pub fn upper_bounds(p: &DMPoset, c: usize) -> Result<Vec<usize>> {
    p.check(c)?;
    Ok((0..p.len()).filter(|&d| d != c && p.order[c][d]).collect())
}

/// Shortest chain of distinct components `c1 = D1, …, Dk = c2` with
/// consecutive base steps; among shortest chains the lexicographically
/// least.
pub fn defining_sequence(p: &DMPoset, c1: usize, c2: usize) -> Result<Vec<usize>> {
    p.check(c1)?;
    p.check(c2)?;
    if c1 == c2 || !p.order[c1][c2] {
        return Err(GraftError::NotRelated(c1, c2));
    }
    let k = p.len();
    // hops to c2 along base steps, searched backwards
    let mut hops = vec![usize::MAX; k];
    hops[c2] = 0;
    let mut queue = VecDeque::from([c2]);
    while let Some(v) = queue.pop_front() {
        for u in 0..k {
            if u != v && p.base[u][v] && hops[u] == usize::MAX {
                hops[u] = hops[v] + 1;
                queue.push_back(u);
            }
        }
    }
    let mut seq = vec![c1];
    let mut at = c1;
    while at != c2 {
        at = (0..k)
            .find(|&next| next != at && p.base[at][next] && hops[next] + 1 == hops[at])
            .expect("closure implies a base chain");
        seq.push(at);
    }
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::designation_from_spine;
    use crate::generators::named_instances;

    fn poset(name: &str) -> DMPoset {
        let graft = &named_instances()[name];
        let color = graft.graph().bipartition().unwrap();
        let d = CombDesignation::from_coloring(&color, 0);
        dm_relation(graft, &d, &EngineOptions::default()).unwrap()
    }

    #[test]
    fn p4_chain() {
        let p = poset("P4");
        assert_eq!(p.designation.spine, vec![0, 2]);
        assert_eq!(p.len(), 2);
        assert!(p.precedes(0, 1));
        assert!(!p.precedes(1, 0));
        assert_eq!(p.hasse, vec![(0, 1)]);
        assert_eq!(upper_bounds(&p, 0).unwrap(), vec![1]);
        assert!(upper_bounds(&p, 1).unwrap().is_empty());
        assert_eq!(defining_sequence(&p, 0, 1).unwrap(), vec![0, 1]);
        assert_eq!(defining_sequence(&p, 0, 0), Err(GraftError::NotRelated(0, 0)));
        assert_eq!(defining_sequence(&p, 1, 0), Err(GraftError::NotRelated(1, 0)));
    }

    #[test]
    fn c4_is_trivial() {
        let p = poset("C4");
        assert_eq!(p.len(), 1);
        assert!(p.hasse.is_empty());
    }

    #[test]
    fn pendants_and_chain() {
        let p = poset("two-pendant");
        assert_eq!(upper_bounds(&p, 0).unwrap(), vec![1, 2]);
        assert!(!p.precedes(1, 2) && !p.precedes(2, 1));
        assert_eq!(p.hasse, vec![(0, 1), (0, 2)]);

        let p = poset("chain");
        assert_eq!(upper_bounds(&p, 0).unwrap(), vec![1, 2, 3]);
        assert!(!p.base[0][3]);
        assert_eq!(defining_sequence(&p, 0, 3).unwrap(), vec![0, 1, 3]);
        assert_eq!(p.hasse, vec![(0, 1), (0, 2), (1, 3)]);
    }

    #[test]
    fn rejects_non_comb() {
        let graft = &named_instances()["star-4"];
        let d = designation_from_spine(graft, &[1, 2, 3, 4]).unwrap();
        assert_eq!(
            dm_relation(graft, &d, &EngineOptions::default()),
            Err(GraftError::NotComb { nu: 4, teeth: 1 })
        );
    }

    #[test]
    fn reduction_of_a_chain() {
        let order = transitive_closure(&[
            vec![true, true, false],
            vec![false, true, true],
            vec![false, false, true],
        ]);
        assert!(order[0][2]);
        assert_eq!(transitive_reduction(&order), vec![(0, 1), (1, 2)]);
    }
}
