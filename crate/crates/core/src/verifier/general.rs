use super::{CheckResult, Counterexample, Tally, Verifier};
use super::{CIRCUIT_LEMMA, COMB_CHARACTERIZATION, DISTANCE_INVARIANCE, KL_EQUIVALENCE, NONPOSITIVE_DISTANCE};
use crate::decomposition::CombDesignation;
use crate::enumerate::{all_circuits, circuits_through, for_each_path_from, Budget};
use crate::error::GraftError;
use crate::oracle::brute_min_joins;

impl Verifier<'_> {
    /// Circuits never have negative weight under a minimum join, and
    /// switching a minimum join along a zero-weight circuit gives another
    /// minimum join, so every edge of such a circuit is allowed.
    pub fn check_circuit_lemma(&self) -> CheckResult {
        let a = &self.analysis;
        let g = self.graft().graph();
        let f = &a.reference.join;
        let mut t = Tally::new(&self.opts);
        for c in all_circuits(g, self.opts.max_path_len, &mut t.budget) {
            let w = c.weight(f);
            if w < 0 {
                t.fail(Counterexample::Walk {
                    walk: c,
                    detail: format!("circuit of weight {w}"),
                });
                continue;
            }
            if w > 0 {
                continue;
            }
            t.witnessed += 1;
            let switched = f.symmetric_difference(&c.edge_set(g.edge_count()));
            let detail = if !self.graft().is_join(&switched) {
                "F Δ E(C) is not a join"
            } else if switched.len() != a.reference.nu {
                "F Δ E(C) is not minimum"
            } else if c.edges().iter().any(|&e| !a.allowed.contains(e)) {
                "zero-weight circuit uses a non-allowed edge"
            } else {
                continue;
            };
            t.fail(Counterexample::Walk {
                walk: c,
                detail: detail.to_string(),
            });
        }
        t.finish(CIRCUIT_LEMMA, None)
    }

    /// Path-weight minima agree across every minimum join found by the
    /// oracle, for every vertex pair (circuit minima when the ends coincide),
    /// and with the engine's distances.
    pub fn check_distance_invariance(&self) -> CheckResult {
        let graft = self.graft();
        let g = graft.graph();
        let joins = match brute_min_joins(graft, &self.opts) {
            Ok((_, joins)) => joins,
            Err(e) => return CheckResult::from_error(DISTANCE_INVARIANCE, None, &e),
        };
        let n = g.vertex_count();
        let mut t = Tally::new(&self.opts);
        for x in g.vertices() {
            // best[j][y]: minimum weight under join j
            let mut best = vec![vec![None::<i64>; n]; joins.len()];
            let mut record = |y: usize, weights: &mut dyn Iterator<Item = i64>| {
                for (j, w) in weights.enumerate() {
                    let slot = &mut best[j][y];
                    *slot = Some(slot.map_or(w, |b: i64| b.min(w)));
                }
            };
            for_each_path_from(g, x, g.edge_count(), &mut t.budget, &mut |_, _, _| true, &mut |p| {
                record(p.end(), &mut joins.iter().map(|f| p.weight(f)))
            });
            let mut budget = Budget::new(self.opts.max_walks);
            for c in circuits_through(g, x, g.edge_count(), &mut budget) {
                record(x, &mut joins.iter().map(|f| c.weight(f)));
            }
            for y in x..n {
                t.witnessed += 1;
                if let Some(j) = (1..joins.len()).find(|&j| best[j][y] != best[0][y]) {
                    t.fail(Counterexample::VertexPair {
                        x,
                        y,
                        detail: format!(
                            "minimum weight {:?} under one join, {:?} under another",
                            best[0][y], best[j][y]
                        ),
                    });
                }
                let engine = self.analysis.dist(x, y);
                if x != y && engine != best[0][y] {
                    t.fail(Counterexample::VertexPair {
                        x,
                        y,
                        detail: format!("engine distance {engine:?}, path minimum {:?}", best[0][y]),
                    });
                }
            }
        }
        t.finish(DISTANCE_INVARIANCE, None)
    }

    /// Distances inside a factor-component are never positive.
    pub fn check_nonpositive_distance(&self) -> CheckResult {
        let a = &self.analysis;
        let mut t = Tally::new(&self.opts);
        for c in &a.components {
            for (i, &x) in c.vertices.iter().enumerate() {
                for &y in &c.vertices[i + 1..] {
                    t.witnessed += 1;
                    match a.dist(x, y) {
                        Some(d) if d <= 0 => {}
                        d => t.fail(Counterexample::VertexPair {
                            x,
                            y,
                            detail: format!("distance {d:?} inside a factor-component"),
                        }),
                    }
                }
            }
        }
        t.finish(NONPOSITIVE_DISTANCE, None)
    }

    /// "Same factor-component and distance zero" is transitive, and the
    /// computed partition is exactly that relation.
    pub fn check_kl_equivalence(&self) -> CheckResult {
        let a = &self.analysis;
        let n = self.graft().graph().vertex_count();
        let related =
            |x: usize, y: usize| x == y || (a.component_of[x] == a.component_of[y] && a.dist(x, y) == Some(0));
        let mut t = Tally::new(&self.opts);
        for x in 0..n {
            for y in 0..n {
                if related(x, y) != related(y, x) {
                    t.fail(Counterexample::VertexPair {
                        x,
                        y,
                        detail: "relation is not symmetric".into(),
                    });
                }
                if related(x, y) != a.kl.same_class(x, y) {
                    t.fail(Counterexample::VertexPair {
                        x,
                        y,
                        detail: "partition disagrees with the relation".into(),
                    });
                }
                if x == y || !related(x, y) {
                    continue;
                }
                t.witnessed += 1;
                for z in 0..n {
                    if related(y, z) && !related(x, z) {
                        t.fail(Counterexample::VertexPair {
                            x,
                            y: z,
                            detail: format!("both related to {y} but not to each other"),
                        });
                    }
                }
            }
        }
        t.finish(KL_EQUIVALENCE, None)
    }

    /// For both role assignments of a bipartite graft: being a comb, some
    /// minimum join meeting every tooth once, and every minimum join doing
    /// so are equivalent.
    pub fn check_comb_characterization(&self) -> CheckResult {
        let graft = self.graft();
        let g = graft.graph();
        let Some(color) = g.bipartition() else {
            return CheckResult::from_error(COMB_CHARACTERIZATION, None, &GraftError::NotBipartite);
        };
        let joins = match brute_min_joins(graft, &self.opts) {
            Ok((_, joins)) => joins,
            Err(e) => return CheckResult::from_error(COMB_CHARACTERIZATION, None, &e),
        };
        let mut t = Tally::new(&self.opts);
        for side in [0u8, 1] {
            let d = CombDesignation::from_coloring(&color, side);
            let once: Vec<bool> = joins
                .iter()
                .map(|f| {
                    d.teeth
                        .iter()
                        .all(|&b| g.incident(b).iter().filter(|&&e| f.contains(e)).count() == 1)
                })
                .collect();
            t.witnessed += joins.len();
            let comb = d.check_comb(graft, self.analysis.engine.nu()).is_ok();
            let some = once.iter().any(|&o| o);
            let every = once.iter().all(|&o| o);
            if comb != some || some != every {
                t.fail(Counterexample::Component {
                    component: 0,
                    detail: format!(
                        "spine {:?}: comb {comb}, some join meets teeth once {some}, every join {every}",
                        d.spine
                    ),
                });
            }
        }
        t.finish(COMB_CHARACTERIZATION, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named_instances;
    use crate::options::EngineOptions;

    fn verifier_for(name: &str) -> (crate::graft::Graft, EngineOptions) {
        (named_instances()[name].clone(), EngineOptions::default())
    }

    #[test]
    fn circuit_lemma_examples() {
        let (c4, opts) = verifier_for("C4");
        let r = Verifier::new(&c4, &opts).unwrap().check_circuit_lemma();
        assert!(r.passed());
        assert_eq!(r.witnessed, 1);
        for name in ["P4", "star-4"] {
            let (graft, opts) = verifier_for(name);
            assert!(Verifier::new(&graft, &opts).unwrap().check_circuit_lemma().vacuous());
        }
    }

    #[test]
    fn distance_and_kl_examples() {
        for name in ["C4", "K2", "star-4", "two-pendant", "chain"] {
            let (graft, opts) = verifier_for(name);
            let v = Verifier::new(&graft, &opts).unwrap();
            assert!(v.check_distance_invariance().passed(), "{name}");
            assert!(v.check_nonpositive_distance().passed(), "{name}");
            assert!(v.check_kl_equivalence().passed(), "{name}");
            assert!(v.check_comb_characterization().passed(), "{name}");
        }
    }

    #[test]
    fn distance_invariance_needs_oracle() {
        let (graft, _) = verifier_for("C8");
        let opts = EngineOptions {
            max_edges: 4,
            ..EngineOptions::default()
        };
        let r = Verifier::new(&graft, &opts).unwrap().check_distance_invariance();
        assert_eq!(r.status, super::super::CheckStatus::CapExceeded);
    }
}
