//! Exhaustive ground truth for small instances.
//!
//! Nothing here calls into the join engine: joins and perfect matchings are
//! found by scanning all `2^|E|` edge subsets in Gray-code order, distances
//! by explicit path enumeration. [`cross_check`] then compares the two.

use serde::Serialize;

use crate::edgeset::EdgeSet;
use crate::enumerate::{circuits_through, simple_paths_between, Budget};
use crate::error::{GraftError, Result};
use crate::graft::Graft;
use crate::graph::{Multigraph, VertexId};
use crate::options::EngineOptions;
use crate::tjoin::JoinEngine;

/// Absolute limit on exhaustive scans regardless of configuration.
pub const HARD_EDGE_CAP: usize = 20;

fn check_cap(g: &Multigraph, opts: &EngineOptions) -> Result<()> {
    let limit = opts.max_edges.min(HARD_EDGE_CAP);
    if g.edge_count() > limit {
        return Err(GraftError::CapExceeded {
            what: "|E|",
            limit,
            actual: g.edge_count(),
        });
    }
    Ok(())
}

/// Visits every edge subset in Gray-code order. `flip(e, added)` updates the
/// caller's incremental state and reports whether the resulting subset is
/// wanted; `empty_wanted` covers the starting empty subset.
fn gray_scan(m: usize, empty_wanted: bool, mut flip: impl FnMut(usize, bool) -> bool) -> Vec<u64> {
    let mut hits = Vec::new();
    let mut mask = 0u64;
    if empty_wanted {
        hits.push(mask);
    }
    for i in 1u64..(1u64 << m) {
        let bit = i.trailing_zeros() as usize;
        mask ^= 1 << bit;
        if flip(bit, mask & (1 << bit) != 0) {
            hits.push(mask);
        }
    }
    hits
}

fn sorted_sets(m: usize, masks: Vec<u64>) -> Vec<EdgeSet> {
    let mut sets: Vec<EdgeSet> = masks.into_iter().map(|mk| EdgeSet::from_mask(m, mk)).collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    sets
}

/// Every join, sorted by size and then lexicographically.
pub fn enumerate_joins(graft: &Graft, opts: &EngineOptions) -> Result<Vec<EdgeSet>> {
    let g = graft.graph();
    check_cap(g, opts)?;
    let target = graft.terminal_mask();
    let mut odd = vec![false; g.vertex_count()];
    let mut mismatched = target.iter().filter(|&&t| t).count();
    let masks = gray_scan(g.edge_count(), mismatched == 0, |e, _| {
        let (u, v) = g.endpoints(e);
        if u == v {
            return mismatched == 0;
        }
        for w in [u, v] {
            odd[w] ^= true;
            if odd[w] == target[w] {
                mismatched -= 1;
            } else {
                mismatched += 1;
            }
        }
        mismatched == 0
    });
    Ok(sorted_sets(g.edge_count(), masks))
}

/// Minimum join size together with every join attaining it.
pub fn brute_min_joins(graft: &Graft, opts: &EngineOptions) -> Result<(usize, Vec<EdgeSet>)> {
    let joins = enumerate_joins(graft, opts)?;
    let nu = joins.first().map(EdgeSet::len).expect("a graft always has a join");
    let minimum = joins.into_iter().take_while(|j| j.len() == nu).collect();
    Ok((nu, minimum))
}

/// Union of all minimum joins.
pub fn brute_allowed(graft: &Graft, opts: &EngineOptions) -> Result<EdgeSet> {
    let (_, joins) = brute_min_joins(graft, opts)?;
    Ok(joins
        .iter()
        .fold(EdgeSet::new(graft.graph().edge_count()), |acc, j| acc.union(j)))
}

/// Minimum `f`-weight over simple `x`–`y` paths, or over circuits through `x`
/// when `x == y` (`None` when no circuit passes through `x`).
pub fn brute_dist_with(g: &Multigraph, f: &EdgeSet, x: VertexId, y: VertexId) -> Result<Option<i64>> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    let mut budget = Budget::unlimited();
    let walks = if x == y {
        circuits_through(g, x, g.edge_count(), &mut budget)
    } else {
        let paths = simple_paths_between(g, x, y, g.edge_count(), &mut budget);
        if paths.is_empty() {
            return Err(GraftError::Disconnected(x, y));
        }
        paths
    };
    Ok(walks.iter().map(|w| w.weight(f)).min())
}

/// [`brute_dist_with`] under the first oracle minimum join.
pub fn brute_dist(graft: &Graft, x: VertexId, y: VertexId, opts: &EngineOptions) -> Result<Option<i64>> {
    let (_, joins) = brute_min_joins(graft, opts)?;
    brute_dist_with(graft.graph(), &joins[0], x, y)
}

/// Every perfect matching (loops count twice toward degree).
pub fn enumerate_one_factors(g: &Multigraph, opts: &EngineOptions) -> Result<Vec<EdgeSet>> {
    check_cap(g, opts)?;
    let n = g.vertex_count();
    let mut degree = vec![0usize; n];
    let mut unit = 0usize;
    let masks = gray_scan(g.edge_count(), n == 0, |e, added| {
        let (u, v) = g.endpoints(e);
        let touched: &[VertexId] = if u == v { &[u, u] } else { &[u, v] };
        for &w in touched {
            if degree[w] == 1 {
                unit -= 1;
            }
            if added {
                degree[w] += 1;
            } else {
                degree[w] -= 1;
            }
            if degree[w] == 1 {
                unit += 1;
            }
        }
        unit == n
    });
    Ok(sorted_sets(g.edge_count(), masks))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub fingerprint: String,
    pub quantity: String,
    pub oracle: String,
    pub engine: String,
    pub matches: bool,
}

impl OracleReport {
    fn new(fingerprint: &str, quantity: String, oracle: String, engine: String) -> Self {
        let matches = oracle == engine;
        OracleReport {
            fingerprint: fingerprint.to_string(),
            quantity,
            oracle,
            engine,
            matches,
        }
    }
}

/// Stable FNV-1a fingerprint of a graft's vertex count, edges and terminals.
pub fn fingerprint(graft: &Graft) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut feed = |x: u64| {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    };
    let g = graft.graph();
    feed(g.vertex_count() as u64);
    for &(u, v) in g.edges() {
        feed(u as u64);
        feed(v as u64);
    }
    feed(u64::MAX);
    for &t in graft.terminals() {
        feed(t as u64);
    }
    format!("{h:016x}")
}

/// Compares ν, the engine's minimum join, the allowed-edge set and all
/// pairwise distances against exhaustive enumeration.
pub fn cross_check(graft: &Graft, opts: &EngineOptions) -> Result<Vec<OracleReport>> {
    let fp = fingerprint(graft);
    let g = graft.graph();
    let (nu, joins) = brute_min_joins(graft, opts)?;
    let engine = JoinEngine::new(graft, opts)?;
    let mut out = vec![OracleReport::new(
        &fp,
        "nu".into(),
        nu.to_string(),
        engine.nu().to_string(),
    )];

    let join = engine.min_join()?;
    let valid = graft.is_join(&join.join) && join.join.len() == nu && joins.contains(&join.join);
    out.push(OracleReport::new(
        &fp,
        "min_join".into(),
        "true".into(),
        valid.to_string(),
    ));

    let allowed = joins.iter().fold(EdgeSet::new(g.edge_count()), |acc, j| acc.union(j));
    out.push(OracleReport::new(
        &fp,
        "allowed".into(),
        format!("{:?}", allowed),
        format!("{:?}", engine.allowed_edges()?),
    ));

    let comp = g.component_index();
    for x in g.vertices() {
        for y in x + 1..g.vertex_count() {
            if comp[x] != comp[y] {
                continue;
            }
            let brute = brute_dist_with(g, &joins[0], x, y)?.expect("connected pair");
            out.push(OracleReport::new(
                &fp,
                format!("dist({x},{y})"),
                brute.to_string(),
                engine.dist(x, y)?.to_string(),
            ));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named_instances;

    #[test]
    fn joins_of_small_grafts() {
        let named = named_instances();
        let opts = EngineOptions::default();
        let k2 = &named["K2"];
        assert_eq!(enumerate_joins(k2, &opts).unwrap(), vec![EdgeSet::from_ids(1, [0])]);
        let k2_empty = Graft::new(k2.graph().clone(), &[]).unwrap();
        assert_eq!(enumerate_joins(&k2_empty, &opts).unwrap(), vec![EdgeSet::new(1)]);

        let c4 = &named["C4"];
        let all = enumerate_joins(c4, &opts).unwrap();
        // T = V: joins are the 2 perfect matchings plus complements-of-... all of odd degree
        assert_eq!(all[0], EdgeSet::from_ids(4, [0, 2]));
        assert_eq!(all[1], EdgeSet::from_ids(4, [1, 3]));
        assert!(all.iter().all(|j| c4.is_join(j)));
        let (nu, minimum) = brute_min_joins(c4, &opts).unwrap();
        assert_eq!((nu, minimum.len()), (2, 2));
    }

    #[test]
    fn star_has_a_unique_minimum_join() {
        let named = named_instances();
        let opts = EngineOptions::default();
        let (nu, joins) = brute_min_joins(&named["star-4"], &opts).unwrap();
        assert_eq!(nu, 4);
        assert_eq!(joins, vec![EdgeSet::full(4)]);
        let empty = Graft::new(named["star-4"].graph().clone(), &[]).unwrap();
        assert_eq!(brute_min_joins(&empty, &opts).unwrap(), (0, vec![EdgeSet::new(4)]));
    }

    #[test]
    fn distances_by_enumeration() {
        let named = named_instances();
        let opts = EngineOptions::default();
        assert_eq!(brute_dist(&named["K2"], 0, 1, &opts).unwrap(), Some(-1));
        let c4 = &named["C4"];
        let b1 = c4.graph().vertex("b1").unwrap();
        let b2 = c4.graph().vertex("b2").unwrap();
        assert_eq!(brute_dist(c4, b1, b2, &opts).unwrap(), Some(0));
        let star = &named["star-4"];
        assert_eq!(brute_dist(star, 1, 3, &opts).unwrap(), Some(-2));
        // no circuit through a K2 vertex
        assert_eq!(brute_dist(&named["K2"], 0, 0, &opts).unwrap(), None);
    }

    #[test]
    fn allowed_by_union() {
        let named = named_instances();
        let opts = EngineOptions::default();
        assert_eq!(brute_allowed(&named["P4"], &opts).unwrap().to_vec(), vec![0, 2]);
        assert_eq!(brute_allowed(&named["C4"], &opts).unwrap().to_vec(), vec![0, 1, 2, 3]);
        let empty = Graft::new(named["C4"].graph().clone(), &[]).unwrap();
        assert!(brute_allowed(&empty, &opts).unwrap().is_empty());
    }

    #[test]
    fn one_factors() {
        let opts = EngineOptions::default();
        let k2 = Multigraph::with_default_labels(2, vec![(0, 1)]).unwrap();
        assert_eq!(enumerate_one_factors(&k2, &opts).unwrap(), vec![EdgeSet::full(1)]);
        let c4 = Multigraph::with_default_labels(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(enumerate_one_factors(&c4, &opts).unwrap().len(), 2);
        let p3 = Multigraph::with_default_labels(3, vec![(0, 1), (1, 2)]).unwrap();
        assert!(enumerate_one_factors(&p3, &opts).unwrap().is_empty());
        let looped = Multigraph::with_default_labels(2, vec![(0, 1), (0, 0)]).unwrap();
        assert_eq!(
            enumerate_one_factors(&looped, &opts).unwrap(),
            vec![EdgeSet::from_ids(2, [0])]
        );
    }

    #[test]
    fn caps_fail_fast() {
        let g = Multigraph::with_default_labels(2, vec![(0, 1); 21]).unwrap();
        let graft = Graft::new(g, &[]).unwrap();
        assert!(matches!(
            enumerate_joins(&graft, &EngineOptions::default()),
            Err(GraftError::CapExceeded { .. })
        ));
    }
}
