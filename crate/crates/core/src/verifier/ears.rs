use super::comb::balanced_step;
use super::{CheckResult, Counterexample, Tally, Verifier};
use super::{EAR_DISJOINTNESS, EAR_LEMMAS, RELATIVEPATH};
use crate::decomposition::CombDesignation;
use crate::edgeset::EdgeSet;
use crate::enumerate::{for_each_path_from, Frontier};
use crate::graph::{EdgeId, Multigraph, VertexId};
use crate::walk::{Walk, WalkKind};

/// Whether both ends of `e` lie in the component.
fn inside_edge(g: &Multigraph, inside: &[bool], e: EdgeId) -> bool {
    let (u, v) = g.endpoints(e);
    inside[u] && inside[v]
}

fn prefix_weight(fr: &Frontier<'_>, f: &EdgeSet) -> i64 {
    fr.edges.iter().map(|&e| if f.contains(e) { -1 } else { 1 }).sum()
}

fn edge_weight(f: &EdgeSet, e: EdgeId) -> i64 {
    if f.contains(e) {
        -1
    } else {
        1
    }
}

impl Verifier<'_> {
    /// Ears are enumerated with at least one vertex outside the component:
    /// an edge with both ends inside belongs to the component itself.
    /// Balanced ears must end at equivalent teeth and weigh 2; circuit ears
    /// are treated as ears whose two ends coincide.
    pub fn check_ear_lemmas(&self, d: &CombDesignation) -> CheckResult {
        let g = self.graft().graph();
        let a = &self.analysis;
        let f = &a.reference.join;
        let (teeth, inside_of) = self.comb_context(d);
        let mut t = Tally::new(&self.opts);
        let mut witnessed = 0;
        let mut bad: Option<Counterexample> = None;
        for c in &a.components {
            let inside = &inside_of[c.id];
            let mut balanced = balanced_step(f, &teeth);
            for &s in &c.vertices {
                let mut judge = |ear: &Walk| {
                    witnessed += 1;
                    let (s, e) = (ear.start(), ear.end());
                    let w = ear.weight(f);
                    let detail = if !teeth[s] || !teeth[e] {
                        "ear end on the spine".to_string()
                    } else if w != 2 {
                        format!("ear of weight {w}")
                    } else if !a.kl.same_class(s, e) {
                        "ear ends are not equivalent".to_string()
                    } else {
                        return;
                    };
                    bad.get_or_insert(Counterexample::Walk {
                        walk: ear.clone(),
                        detail,
                    });
                };
                for_each_path_from(
                    g,
                    s,
                    self.opts.max_path_len,
                    &mut t.budget,
                    &mut |fr, e, w| {
                        let at = *fr.vertices.last().unwrap();
                        if fr.edges.is_empty() {
                            return !inside[w];
                        }
                        !inside[at] && balanced(fr, e, w)
                    },
                    &mut |p| {
                        let end = p.end();
                        if inside[end] {
                            if s < end {
                                judge(p);
                            }
                            return;
                        }
                        // close back to s
                        let last = p.edges()[p.len() - 1];
                        let balanced_at_end = |e: EdgeId| !teeth[end] || f.contains(last) != f.contains(e);
                        for &e in g.incident(end) {
                            if e != last && g.opposite(e, end) == s && p.edges()[0] < e && balanced_at_end(e) {
                                let mut vertices = p.vertices().to_vec();
                                vertices.push(s);
                                let mut edges = p.edges().to_vec();
                                edges.push(e);
                                judge(&Walk::from_parts(vertices, edges, WalkKind::Circuit));
                            }
                        }
                    },
                );
            }
        }
        t.witnessed = witnessed;
        if let Some(c) = bad {
            t.fail(c);
        }
        t.finish(EAR_LEMMAS, Some(d))
    }

    /// Weight -2 paths between two vertices of a factor-component leave it
    /// only along weight-2 ears and run inside it along weight -2 segments.
    /// Candidates are pruned with the distance lower bound: a prefix ending at
    /// `v` with weight `w` cannot finish below `w + min d(v, y)` over `y` in
    /// the component.
    pub fn check_relativepath(&self, d: &CombDesignation) -> CheckResult {
        let g = self.graft().graph();
        let a = &self.analysis;
        let f = &a.reference.join;
        let (teeth, inside_of) = self.comb_context(d);
        let mut t = Tally::new(&self.opts);
        let mut witnessed = 0;
        let mut bad: Option<Counterexample> = None;
        for c in &a.components {
            if c.vertices.len() < 2 {
                continue;
            }
            let inside = &inside_of[c.id];
            let bound: Vec<i64> = g
                .vertices()
                .map(|v| {
                    c.vertices
                        .iter()
                        .filter_map(|&y| a.dist(v, y))
                        .min()
                        .unwrap_or(i64::MAX / 2)
                })
                .collect();
            for &x in &c.vertices {
                for_each_path_from(
                    g,
                    x,
                    self.opts.max_path_len,
                    &mut t.budget,
                    &mut |fr, e, w| prefix_weight(fr, f) + edge_weight(f, e) + bound[w] <= -2,
                    &mut |p| {
                        let y = p.end();
                        if !inside[y] || y < x || p.weight(f) != -2 {
                            return;
                        }
                        witnessed += 1;
                        if let Some(detail) = relativepath_violation(g, p, f, inside, &teeth) {
                            bad.get_or_insert(Counterexample::Walk {
                                walk: p.clone(),
                                detail,
                            });
                        }
                    },
                );
            }
        }
        t.witnessed = witnessed;
        if let Some(c) = bad {
            t.fail(c);
        }
        t.finish(RELATIVEPATH, Some(d))
    }

    /// For non-equivalent teeth `s`, `t` of a factor-component, a weight -2
    /// path `P` between them and a balanced path `Q` from `t` that otherwise
    /// avoids the component, `Q` misses every vertex of `P` outside it.
    pub fn check_ear_disjointness(&self, d: &CombDesignation) -> CheckResult {
        let g = self.graft().graph();
        let n = g.vertex_count();
        let a = &self.analysis;
        let f = &a.reference.join;
        let (teeth, inside_of) = self.comb_context(d);
        let mut t = Tally::new(&self.opts);
        let mut witnessed = 0;
        let mut bad: Option<Counterexample> = None;
        for c in &a.components {
            let inside = &inside_of[c.id];
            let ends: Vec<VertexId> = c.vertices.iter().copied().filter(|&v| teeth[v]).collect();
            for &end in &ends {
                // balanced paths leaving the component at `end`
                let mut outs: Vec<Walk> = Vec::new();
                let mut balanced = balanced_step(f, &teeth);
                for_each_path_from(
                    g,
                    end,
                    self.opts.max_path_len,
                    &mut t.budget,
                    &mut |fr, e, w| !inside[w] && balanced(fr, e, w),
                    &mut |q| outs.push(q.clone()),
                );
                if outs.is_empty() {
                    continue;
                }
                let mut reach = EdgeSet::new(n);
                for q in &outs {
                    for &v in &q.vertices()[1..] {
                        reach.insert(v);
                    }
                }
                for &s in &ends {
                    if s == end || a.kl.same_class(s, end) {
                        continue;
                    }
                    let to_end: Vec<i64> = g.vertices().map(|v| a.dist(v, end).unwrap_or(i64::MAX / 2)).collect();
                    for_each_path_from(
                        g,
                        s,
                        self.opts.max_path_len,
                        &mut t.budget,
                        &mut |fr, e, w| {
                            *fr.vertices.last().unwrap() != end
                                && prefix_weight(fr, f) + edge_weight(f, e) + to_end[w] <= -2
                        },
                        &mut |p| {
                            if p.end() != end || p.weight(f) != -2 {
                                return;
                            }
                            let outside: Vec<VertexId> = p.vertices().iter().copied().filter(|&v| !inside[v]).collect();
                            if outside.is_empty() {
                                return;
                            }
                            witnessed += outs.len();
                            if outside.iter().any(|&v| reach.contains(v)) {
                                let q = outs
                                    .iter()
                                    .find(|q| q.vertices().iter().any(|v| outside.contains(v)))
                                    .expect("reach is the union of the paths");
                                bad.get_or_insert(Counterexample::WalkPair {
                                    first: p.clone(),
                                    second: q.clone(),
                                    detail: "balanced path from an end meets the outside part of a -2 path".into(),
                                });
                            }
                        },
                    );
                }
            }
        }
        t.witnessed = witnessed;
        if let Some(c) = bad {
            t.fail(c);
        }
        t.finish(EAR_DISJOINTNESS, Some(d))
    }
}

/// Splits `p` into maximal runs of edges inside and outside the component
/// and checks each run.
fn relativepath_violation(g: &Multigraph, p: &Walk, f: &EdgeSet, inside: &[bool], teeth: &[bool]) -> Option<String> {
    if !teeth[p.start()] || !teeth[p.end()] {
        return Some("weight -2 path ends on the spine".into());
    }
    let edges = p.edges();
    let mut i = 0;
    while i < edges.len() {
        let kind = inside_edge(g, inside, edges[i]);
        let mut j = i;
        while j < edges.len() && inside_edge(g, inside, edges[j]) == kind {
            j += 1;
        }
        let run = p.segment(i, j);
        let w = run.weight(f);
        if kind && w != -2 {
            return Some(format!("segment inside the component has weight {w}"));
        }
        if !kind {
            let inner = &run.vertices()[1..run.vertices().len() - 1];
            if inner.iter().any(|&v| inside[v]) {
                return Some("segment outside the component is not an ear".into());
            }
            if w != 2 {
                return Some(format!("ear segment has weight {w}"));
            }
        }
        i = j;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{comb_cycle, comb_star, named_instances};
    use crate::options::EngineOptions;

    fn run(graft: &crate::graft::Graft, d: &CombDesignation) -> [super::super::CheckResult; 3] {
        let v = Verifier::new(graft, &EngineOptions::default()).unwrap();
        [
            v.check_ear_lemmas(d),
            v.check_relativepath(d),
            v.check_ear_disjointness(d),
        ]
    }

    #[test]
    fn star_has_internal_paths_only() {
        let inst = comb_star(4);
        let [ears, rel, disj] = run(&inst.graft, &inst.designation);
        assert!(ears.vacuous());
        assert!(rel.passed() && rel.witnessed == 6, "{rel:?}");
        assert!(disj.vacuous());
    }

    #[test]
    fn two_pendant_and_chain() {
        for name in ["two-pendant", "chain"] {
            let graft = &named_instances()[name];
            let d = CombDesignation::from_coloring(&graft.graph().bipartition().unwrap(), 0);
            for r in run(graft, &d) {
                assert!(r.passed(), "{name}: {r:?}");
            }
        }
    }

    #[test]
    fn cycle_combs() {
        for k in 1..=3 {
            let inst = comb_cycle(k);
            for r in run(&inst.graft, &inst.designation) {
                assert!(r.passed(), "C{}: {r:?}", 4 * k);
            }
        }
    }

    #[test]
    fn bridged_component_is_witnessed() {
        // factor-component: 4-cycle u a0 v a1 with pendant teeth s at a0 and
        // t at a1; spine x outside bridges u and v, spine y hangs off t
        let g = Multigraph::build(
            ["a0", "a1", "x", "y", "s", "u", "v", "t"].map(String::from).to_vec(),
            [
                ("u", "a0"),
                ("a0", "v"),
                ("v", "a1"),
                ("a1", "u"),
                ("s", "a0"),
                ("t", "a1"),
                ("u", "x"),
                ("x", "v"),
                ("t", "y"),
            ]
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .to_vec(),
        )
        .unwrap();
        let graft = crate::graft::Graft::new(g, &[4, 5, 6, 7]).unwrap();
        let d = CombDesignation {
            spine: vec![0, 1, 2, 3],
            teeth: vec![4, 5, 6, 7],
        };
        let [ears, rel, disj] = run(&graft, &d);
        assert!(ears.passed() && ears.witnessed > 0, "{ears:?}");
        assert!(rel.passed() && rel.witnessed > 0, "{rel:?}");
        assert!(disj.passed() && disj.witnessed > 0, "{disj:?}");
    }

    #[test]
    fn segments_of_a_path() {
        // path x - o - y leaving a two-vertex component {x, y}
        let g = Multigraph::with_default_labels(3, vec![(0, 1), (1, 2)]).unwrap();
        let p = Walk::trace(&g, WalkKind::Path, 0, vec![0, 1]).unwrap();
        let inside = [true, false, true];
        let teeth = [true, false, true];
        let none = EdgeSet::new(2);
        assert_eq!(relativepath_violation(&g, &p, &none, &inside, &teeth), None);
        let both = EdgeSet::from_ids(2, [0, 1]);
        assert!(relativepath_violation(&g, &p, &both, &inside, &teeth).is_some());
    }
}
