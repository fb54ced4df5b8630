//! Named instances and seeded random grafts.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::decomposition::CombDesignation;
use crate::error::{GraftError, Result};
use crate::graft::Graft;
use crate::graph::{Multigraph, VertexId};
use crate::options::EngineOptions;
use crate::tjoin;

fn graft_from(labels: &[&str], edges: &[(&str, &str)], terminals: &[&str]) -> Graft {
    let g = Multigraph::build(labels.iter().copied(), edges.iter().copied()).expect("static instance");
    Graft::with_labels(g, terminals).expect("static instance")
}

fn two_pendant_parts() -> (Vec<&'static str>, Vec<(&'static str, &'static str)>, Vec<&'static str>) {
    (
        vec!["a0", "b1", "b2", "x1", "y1", "x2", "y2"],
        vec![
            ("a0", "b1"),
            ("a0", "b2"),
            ("x1", "y1"),
            ("x2", "y2"),
            ("x1", "b1"),
            ("x2", "b2"),
        ],
        vec!["b1", "b2", "x1", "y1", "x2", "y2"],
    )
}

/// The fixed instance catalogue, keyed by name.
pub fn named_instances() -> BTreeMap<String, Graft> {
    let mut out = BTreeMap::new();
    out.insert("K2".to_string(), graft_from(&["u", "v"], &[("u", "v")], &["u", "v"]));
    let p4 = ["v1", "v2", "v3", "v4"];
    out.insert(
        "P4".to_string(),
        graft_from(&p4, &[("v1", "v2"), ("v2", "v3"), ("v3", "v4")], &p4),
    );
    let c4 = ["a1", "b1", "a2", "b2"];
    out.insert(
        "C4".to_string(),
        graft_from(&c4, &[("a1", "b1"), ("b1", "a2"), ("a2", "b2"), ("b2", "a1")], &c4),
    );
    out.insert("C8".to_string(), cycle_graft(8));
    out.insert("star-4".to_string(), star_graft(4));

    let (labels, edges, terminals) = two_pendant_parts();
    out.insert("two-pendant".to_string(), graft_from(&labels, &edges, &terminals));

    let (mut labels, mut edges, mut terminals) = two_pendant_parts();
    labels.extend(["z1", "w1"]);
    edges.extend([("z1", "w1"), ("z1", "y1")]);
    terminals.extend(["z1", "w1"]);
    out.insert("chain".to_string(), graft_from(&labels, &edges, &terminals));
    out
}

/// Cycle `a1 b1 a2 b2 …` of even length with every vertex a terminal.
pub fn cycle_graft(len: usize) -> Graft {
    assert!(
        len >= 2 && len.is_multiple_of(2),
        "cycle length must be even and positive"
    );
    let labels: Vec<String> = (0..len)
        .map(|i| format!("{}{}", if i % 2 == 0 { 'a' } else { 'b' }, i / 2 + 1))
        .collect();
    let edges = (0..len).map(|i| (i, (i + 1) % len)).collect();
    let g = Multigraph::from_ids(labels, edges).unwrap();
    let all: Vec<VertexId> = g.vertices().collect();
    Graft::new(g, &all).unwrap()
}

/// Path `a1 b1 a2 b2 …` on `len` vertices with every vertex a terminal.
pub fn path_graft(len: usize) -> Graft {
    assert!(len.is_multiple_of(2), "path order must be even");
    let labels: Vec<String> = (0..len)
        .map(|i| format!("{}{}", if i % 2 == 0 { 'a' } else { 'b' }, i / 2 + 1))
        .collect();
    let edges = (1..len).map(|i| (i - 1, i)).collect();
    let g = Multigraph::from_ids(labels, edges).unwrap();
    let all: Vec<VertexId> = g.vertices().collect();
    Graft::new(g, &all).unwrap()
}

/// Star with center `a0` outside `T` and teeth `b1..bk` in `T`.
pub fn star_graft(teeth: usize) -> Graft {
    assert!(teeth.is_multiple_of(2), "tooth count must be even");
    let mut labels = vec!["a0".to_string()];
    labels.extend((1..=teeth).map(|i| format!("b{i}")));
    let edges = (1..=teeth).map(|i| (0, i)).collect();
    let g = Multigraph::from_ids(labels, edges).unwrap();
    let ts: Vec<VertexId> = (1..=teeth).collect();
    Graft::new(g, &ts).unwrap()
}

/// A graft together with a spine/tooth designation under which it is a comb.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CombInstance {
    pub graft: Graft,
    pub designation: CombDesignation,
}

impl CombInstance {
    fn from_coloring(graft: Graft) -> CombInstance {
        let color = graft.graph().bipartition().expect("constructive family is bipartite");
        let designation = CombDesignation::from_coloring(&color, 0);
        CombInstance { graft, designation }
    }
}

/// `P_{2k}` with `T = V`; a comb with ν = k.
pub fn comb_path(half: usize) -> CombInstance {
    CombInstance::from_coloring(path_graft(2 * half))
}

/// `C_{4k}` with `T = V`; a comb with ν = 2k.
pub fn comb_cycle(k: usize) -> CombInstance {
    CombInstance::from_coloring(cycle_graft(4 * k))
}

/// Star with `T` = teeth; a comb with ν = number of teeth.
pub fn comb_star(teeth: usize) -> CombInstance {
    CombInstance::from_coloring(star_graft(teeth))
}

/// Drops the smallest terminal of every component holding an odd number of them.
fn repair_parity(g: &Multigraph, terminal: &mut [bool]) {
    for comp in g.components() {
        let members: Vec<VertexId> = comp.into_iter().filter(|&v| terminal[v]).collect();
        if members.len() % 2 == 1 {
            terminal[members[0]] = false;
        }
    }
}

/// Seeded multigraph with `m` uniformly random edges (loops and parallel
/// edges allowed) and a terminal set sampled per vertex, then parity-repaired.
pub fn gen_random_graft(n: usize, m: usize, t_prob: f64, seed: u64) -> Graft {
    assert!(n >= 1, "at least one vertex");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
    let g = Multigraph::with_default_labels(n, edges).unwrap();
    let mut terminal: Vec<bool> = (0..n).map(|_| rng.gen_bool(t_prob)).collect();
    repair_parity(&g, &mut terminal);
    let ts: Vec<VertexId> = g.vertices().filter(|&v| terminal[v]).collect();
    Graft::new(g, &ts).unwrap()
}

fn bipartite_labels(spine: usize, teeth: usize) -> Vec<String> {
    (0..spine)
        .map(|i| format!("a{i}"))
        .chain((0..teeth).map(|i| format!("b{i}")))
        .collect()
}

fn spine_tooth_designation(spine: usize, teeth: usize) -> CombDesignation {
    CombDesignation {
        spine: (0..spine).collect(),
        teeth: (spine..spine + teeth).collect(),
    }
}

/// Rejection-samples bipartite grafts on spine `a0..` and teeth `b0..` until
/// ν(G, T) = |B|. Terminals are the teeth plus a random half of the spine,
/// parity-repaired through spine vertices.
pub fn gen_comb_random(
    spine: usize,
    teeth: usize,
    m: usize,
    seed: u64,
    max_tries: usize,
    opts: &EngineOptions,
) -> Result<CombInstance> {
    assert!(spine >= 1 && teeth >= 1, "both sides must be nonempty");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = spine + teeth;
    for _ in 0..max_tries {
        let edges: Vec<_> = (0..m)
            .map(|_| (rng.gen_range(0..spine), spine + rng.gen_range(0..teeth)))
            .collect();
        let g = Multigraph::from_ids(bipartite_labels(spine, teeth), edges).unwrap();
        let mut terminal: Vec<bool> = (0..n).map(|v| v >= spine || rng.gen_bool(0.5)).collect();
        let mut feasible = true;
        for comp in g.components() {
            let count = comp.iter().filter(|&&v| terminal[v]).count();
            if count % 2 == 0 {
                continue;
            }
            match comp.iter().copied().find(|&v| v < spine) {
                Some(a) => terminal[a] ^= true,
                None => feasible = false,
            }
        }
        if !feasible {
            continue;
        }
        let ts: Vec<VertexId> = g.vertices().filter(|&v| terminal[v]).collect();
        let graft = Graft::new(g, &ts)?;
        if tjoin::nu(&graft, opts)? == teeth {
            return Ok(CombInstance {
                graft,
                designation: spine_tooth_designation(spine, teeth),
            });
        }
    }
    Err(GraftError::Exhausted(max_tries))
}

/// Bipartite comb by construction: every tooth gets one planted edge to a
/// random spine vertex, `m − teeth` further random edges are added, and the
/// spine terminals are exactly the spine vertices of odd planted degree.
pub fn gen_comb_planted(spine: usize, teeth: usize, m: usize, seed: u64) -> CombInstance {
    assert!(spine >= 1 && m >= teeth, "need a spine and one edge per tooth");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut planted_degree = vec![0usize; spine];
    let mut edges = Vec::with_capacity(m);
    for b in 0..teeth {
        let a = rng.gen_range(0..spine);
        planted_degree[a] += 1;
        edges.push((a, spine + b));
    }
    for _ in teeth..m {
        edges.push((rng.gen_range(0..spine), spine + rng.gen_range(0..teeth.max(1))));
    }
    edges.shuffle(&mut rng);
    let g = Multigraph::from_ids(bipartite_labels(spine, teeth), edges).unwrap();
    let ts: Vec<VertexId> = (0..spine)
        .filter(|&a| planted_degree[a] % 2 == 1)
        .chain(spine..spine + teeth)
        .collect();
    let graft = Graft::new(g, &ts).expect("planted join certifies parity");
    CombInstance {
        graft,
        designation: spine_tooth_designation(spine, teeth),
    }
}

/// Bipartite graph on `a0..a{k-1}`, `b0..b{k-1}` containing a planted perfect
/// matching plus `extra` random edges, in shuffled edge order.
pub fn gen_factorizable_bipartite(k: usize, extra: usize, seed: u64) -> Multigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut partner: Vec<usize> = (0..k).collect();
    partner.shuffle(&mut rng);
    let mut edges: Vec<_> = (0..k).map(|a| (a, k + partner[a])).collect();
    for _ in 0..extra {
        edges.push((rng.gen_range(0..k), k + rng.gen_range(0..k)));
    }
    edges.shuffle(&mut rng);
    Multigraph::from_ids(bipartite_labels(k, k), edges).unwrap()
}

/// A reproducible description of one generated instance.
#[derive(Debug, Clone, PartialEq)]
pub enum InstanceSpec {
    Named(String),
    Random {
        n: usize,
        m: usize,
        t_prob: f64,
        seed: u64,
    },
    Comb {
        spine: usize,
        teeth: usize,
        m: usize,
        seed: u64,
        max_tries: usize,
    },
    Planted {
        spine: usize,
        teeth: usize,
        m: usize,
        seed: u64,
    },
    Path {
        half: usize,
    },
    Cycle {
        k: usize,
    },
    Star {
        teeth: usize,
    },
}

impl InstanceSpec {
    pub fn family(&self) -> &'static str {
        match self {
            InstanceSpec::Named(_) => "named",
            InstanceSpec::Random { .. } => "random",
            InstanceSpec::Comb { .. } => "comb",
            InstanceSpec::Planted { .. } => "planted",
            InstanceSpec::Path { .. } => "path",
            InstanceSpec::Cycle { .. } => "cycle",
            InstanceSpec::Star { .. } => "star",
        }
    }

    /// The graft and, for comb families, its designation.
    pub fn build(&self, opts: &EngineOptions) -> Result<(Graft, Option<CombDesignation>)> {
        let comb = |c: CombInstance| (c.graft, Some(c.designation));
        Ok(match self {
            InstanceSpec::Named(name) => {
                let graft = named_instances()
                    .remove(name)
                    .ok_or_else(|| GraftError::UnknownLabel(name.clone()))?;
                (graft, None)
            }
            &InstanceSpec::Random { n, m, t_prob, seed } => (gen_random_graft(n, m, t_prob, seed), None),
            &InstanceSpec::Comb {
                spine,
                teeth,
                m,
                seed,
                max_tries,
            } => comb(gen_comb_random(spine, teeth, m, seed, max_tries, opts)?),
            &InstanceSpec::Planted { spine, teeth, m, seed } => comb(gen_comb_planted(spine, teeth, m, seed)),
            &InstanceSpec::Path { half } => comb(comb_path(half)),
            &InstanceSpec::Cycle { k } => comb(comb_cycle(k)),
            &InstanceSpec::Star { teeth } => comb(comb_star(teeth)),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::comb_designations;

    #[test]
    fn catalogue_contents() {
        let named = named_instances();
        let names: Vec<_> = named.keys().cloned().collect();
        assert_eq!(names, vec!["C4", "C8", "K2", "P4", "chain", "star-4", "two-pendant"]);
        let chain = &named["chain"];
        assert_eq!(chain.graph().vertex_count(), 9);
        assert_eq!(chain.terminals().len(), 8);
    }

    #[test]
    fn random_grafts_are_valid_and_reproducible() {
        let a = gen_random_graft(4, 4, 0.5, 7);
        assert_eq!(a, gen_random_graft(4, 4, 0.5, 7));
        assert!(Graft::new(a.graph().clone(), a.terminals()).is_ok());
        let single = gen_random_graft(1, 0, 1.0, 3);
        assert!(single.terminals().is_empty());
        let edgeless = gen_random_graft(5, 0, 0.0, 11);
        assert_eq!(edgeless.graph().edge_count(), 0);
        assert!(edgeless.terminals().is_empty());
    }

    #[test]
    fn constructive_families_are_combs() {
        let opts = EngineOptions::default();
        let p6 = comb_path(3);
        assert_eq!(tjoin::nu(&p6.graft, &opts).unwrap(), 3);
        let c8 = comb_cycle(2);
        assert_eq!(tjoin::nu(&c8.graft, &opts).unwrap(), 4);
        for inst in [p6, c8, comb_star(6)] {
            assert!(!comb_designations(&inst.graft, &opts).unwrap().is_empty());
            assert_eq!(tjoin::nu(&inst.graft, &opts).unwrap(), inst.designation.teeth.len());
        }
    }

    #[test]
    fn sampled_combs() {
        let opts = EngineOptions::default();
        match gen_comb_random(2, 2, 4, 5, 1000, &opts) {
            Ok(inst) => assert_eq!(tjoin::nu(&inst.graft, &opts).unwrap(), 2),
            Err(e) => assert_eq!(e, GraftError::Exhausted(1000)),
        }
        for seed in 0..20 {
            let inst = gen_comb_planted(3, 4, 8, seed);
            assert_eq!(tjoin::nu(&inst.graft, &opts).unwrap(), 4);
            assert_eq!(inst, gen_comb_planted(3, 4, 8, seed));
        }
    }
}
