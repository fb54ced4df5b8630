use super::{CheckResult, Counterexample, Tally, Verifier};
use super::{BALANCED_WEIGHTS, DM_ANTISYMMETRY, INCOMPPATH};
use crate::decomposition::poset::{base_relation, transitive_closure};
use crate::decomposition::CombDesignation;
use crate::edgeset::EdgeSet;
use crate::enumerate::{for_each_path_from, Frontier};
use crate::graph::{EdgeId, VertexId};
use crate::walk::{is_tooth_balanced, Walk};

/// Step filter for paths that stay balanced at every tooth they pass.
pub(super) fn balanced_step<'a>(
    f: &'a EdgeSet,
    teeth: &'a [bool],
) -> impl FnMut(&Frontier<'_>, EdgeId, VertexId) -> bool + 'a {
    move |fr, e, _| {
        let Some(&last) = fr.edges.last() else {
            return true;
        };
        let at = *fr.vertices.last().unwrap();
        !teeth[at] || f.contains(last) != f.contains(e)
    }
}

/// Weight a balanced path must have: each tooth end contributes -1 if its
/// end edge is in `f` and +1 otherwise, spine ends contribute nothing.
pub(super) fn balanced_weight(w: &Walk, f: &EdgeSet, teeth: &[bool]) -> i64 {
    let term = |v: VertexId, e: EdgeId| match (teeth[v], f.contains(e)) {
        (false, _) => 0,
        (true, true) => -1,
        (true, false) => 1,
    };
    let edges = w.edges();
    term(w.start(), edges[0]) + term(w.end(), edges[edges.len() - 1])
}

impl Verifier<'_> {
    pub fn check_balanced_weights(&self, d: &CombDesignation) -> CheckResult {
        let g = self.graft().graph();
        let f = &self.analysis.reference.join;
        let (teeth, _) = self.comb_context(d);
        let mut t = Tally::new(&self.opts);
        let mut witnessed = 0;
        let mut bad = None;
        for s in g.vertices() {
            for_each_path_from(
                g,
                s,
                self.opts.max_path_len,
                &mut t.budget,
                &mut balanced_step(f, &teeth),
                &mut |p| {
                    if p.start() > p.end() {
                        return;
                    }
                    witnessed += 1;
                    let (want, got) = (balanced_weight(p, f, &teeth), p.weight(f));
                    if bad.is_none() && (want != got || !is_tooth_balanced(p, f, &teeth)) {
                        bad = Some(Counterexample::Walk {
                            walk: p.clone(),
                            detail: format!("balanced path of weight {got}, expected {want}"),
                        });
                    }
                },
            );
        }
        t.witnessed = witnessed;
        if let Some(c) = bad {
            t.fail(c);
        }
        t.finish(BALANCED_WEIGHTS, Some(d))
    }

    /// Inside a factor-component: spine-tooth pairs at -1, spine pairs at 0
    /// and tooth pairs at 0 or -2.
    pub fn check_incomppath(&self, d: &CombDesignation) -> CheckResult {
        let a = &self.analysis;
        let mut t = Tally::new(&self.opts);
        for c in &a.components {
            for (i, &x) in c.vertices.iter().enumerate() {
                for &y in &c.vertices[i + 1..] {
                    t.witnessed += 1;
                    let dist = a.dist(x, y);
                    let ok = matches!(
                        (d.is_tooth(x), d.is_tooth(y), dist),
                        (false, false, Some(0))
                            | (true, true, Some(0 | -2))
                            | (true, false, Some(-1))
                            | (false, true, Some(-1))
                    );
                    if !ok {
                        t.fail(Counterexample::VertexPair {
                            x,
                            y,
                            detail: format!("distance {dist:?} inside a factor-component"),
                        });
                    }
                }
            }
        }
        t.finish(INCOMPPATH, Some(d))
    }

    /// The closure of the base relation has no 2-cycle.
    pub fn check_dm_antisymmetry(&self, d: &CombDesignation) -> CheckResult {
        let a = &self.analysis;
        let k = a.components.len();
        let order = transitive_closure(&base_relation(self.graft().graph(), d, &a.component_of, k));
        let mut t = Tally::new(&self.opts);
        for i in 0..k {
            for j in 0..k {
                if i == j || !order[i][j] {
                    continue;
                }
                t.witnessed += 1;
                if order[j][i] && i < j {
                    t.fail(Counterexample::ComponentPair {
                        lower: i,
                        upper: j,
                        detail: "components precede each other".into(),
                    });
                }
            }
        }
        t.finish(DM_ANTISYMMETRY, Some(d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{comb_star, named_instances};
    use crate::graft::Graft;
    use crate::options::EngineOptions;

    fn designation(graft: &Graft) -> CombDesignation {
        CombDesignation::from_coloring(&graft.graph().bipartition().unwrap(), 0)
    }

    #[test]
    fn balanced_table_on_c4() {
        // C4 a1 b1 a2 b2 under the join {a1b1, a2b2}
        let c4 = &named_instances()["C4"];
        let g = c4.graph();
        let f = EdgeSet::from_ids(4, [0, 2]);
        let teeth = designation(c4).tooth_mask(4);
        let aa = Walk::trace(g, crate::WalkKind::Path, 0, vec![0, 1]).unwrap();
        assert_eq!(aa.weight(&f), 0);
        assert_eq!(balanced_weight(&aa, &f, &teeth), 0);
        // b1 a1 b2: exactly one end edge in F
        let bb = Walk::trace(g, crate::WalkKind::Path, 1, vec![0, 3]).unwrap();
        assert_eq!(bb.weight(&f), 0);
        assert_eq!(balanced_weight(&bb, &f, &teeth), 0);
    }

    #[test]
    fn star_teeth_at_minus_two() {
        let inst = comb_star(4);
        let opts = EngineOptions::default();
        let v = Verifier::new(&inst.graft, &opts).unwrap();
        let r = v.check_balanced_weights(&inst.designation);
        assert!(r.passed(), "{r:?}");
        assert!(r.witnessed >= 6);
        let r = v.check_incomppath(&inst.designation);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn named_examples() {
        let opts = EngineOptions::default();
        for name in ["C4", "K2", "P4", "two-pendant", "chain"] {
            let graft = &named_instances()[name];
            let d = designation(graft);
            let v = Verifier::new(graft, &opts).unwrap();
            assert!(v.check_incomppath(&d).passed(), "{name}");
            assert!(v.check_dm_antisymmetry(&d).passed(), "{name}");
            assert!(v.check_balanced_weights(&d).passed(), "{name}");
        }
    }
}
