use std::collections::BTreeMap;

use super::{CheckResult, Counterexample, Tally, Verifier, ATTRIBUTE_PARTITION};
use crate::decomposition::attributes::{seed_classes, tooth_classes};
use crate::decomposition::{attributes_with, upper_bounds, CombDesignation, DMPoset};
use crate::enumerate::Budget;

impl Verifier<'_> {
    /// For every component `c0`: the attribute labeling exists, satisfies
    /// the seeding and adjacency properties and is the only labeling that
    /// does; along every defining sequence the later members touch `c0`'s
    /// lower end inside a single tooth class; and upper bounds seeded by
    /// distinct classes have no common upper bound.
    pub fn check_attribute_partition(&self, d: &CombDesignation) -> CheckResult {
        let a = &self.analysis;
        let p = match crate::decomposition::dm_relation_with(a, d) {
            Ok(p) => p,
            Err(e) => return CheckResult::from_error(ATTRIBUTE_PARTITION, Some(d), &e),
        };
        let mut t = Tally::new(&self.opts);
        for c0 in 0..p.len() {
            self.labeling_at(&p, c0, &mut t);
            self.defining_sequences_from(&p, c0, &mut t);
            self.no_diamond_at(&p, c0, &mut t);
            if t.failed() {
                break;
            }
        }
        t.finish(ATTRIBUTE_PARTITION, Some(d))
    }

    fn labeling_at(&self, p: &DMPoset, c0: usize, t: &mut Tally) {
        let a = &self.analysis;
        let map = match attributes_with(a, p, c0) {
            Ok(map) => map,
            Err(e) => {
                let component = match e {
                    crate::GraftError::InconsistentLabeling { component, .. } => component,
                    crate::GraftError::UnlabeledUpperBound(component) => component,
                    _ => c0,
                };
                t.fail(Counterexample::Component {
                    component,
                    detail: format!("no attribute labeling above {c0}: {e}"),
                });
                return;
            }
        };
        let ups = upper_bounds(p, c0).expect("c0 is a component");
        let keys = tooth_classes(a, &p.designation, c0);
        let mut seeds = Vec::with_capacity(ups.len());
        for &up in &ups {
            t.witnessed += 1;
            let s = seed_classes(a, up, c0).expect("component vertices are valid");
            if let Some(&first) = s.first() {
                if s.len() > 1 || map.label(up) != Some(first) {
                    t.fail(Counterexample::ComponentPair {
                        lower: c0,
                        upper: up,
                        detail: format!("seeded by classes {s:?}, labeled {:?}", map.label(up)),
                    });
                }
            }
            seeds.push(s.first().copied());
        }
        let g = self.graft().graph();
        let pos: BTreeMap<usize, usize> = ups.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut adjacent = Vec::new();
        for &(u, v) in g.edges() {
            let (cu, cv) = (a.component_of[u], a.component_of[v]);
            if let (Some(&i), Some(&j)) = (pos.get(&cu), pos.get(&cv)) {
                if i != j {
                    adjacent.push((i.min(j), i.max(j)));
                    if map.label(cu) != map.label(cv) {
                        t.fail(Counterexample::ComponentPair {
                            lower: cu,
                            upper: cv,
                            detail: "adjacent upper bounds carry different labels".into(),
                        });
                    }
                }
            }
        }
        adjacent.sort_unstable();
        adjacent.dedup();

        let mut search = LabelSearch {
            keys: &keys,
            seeds: &seeds,
            adjacent: &adjacent,
            labels: vec![usize::MAX; ups.len()],
            found: 0,
            budget: Budget::new(self.opts.max_walks),
        };
        search.extend(0);
        if search.budget.truncated() {
            t.truncated = true;
            return;
        }
        if search.found != 1 {
            t.fail(Counterexample::Component {
                component: c0,
                detail: format!("{} labelings of the upper bounds satisfy both properties", search.found),
            });
        }
    }

    /// Every defining sequence `c0 = D1, …, Dk`: the neighbors of `D2..Dk`
    /// inside `c0` lie in one tooth class.
    fn defining_sequences_from(&self, p: &DMPoset, c0: usize, t: &mut Tally) {
        let a = &self.analysis;
        let g = self.graft().graph();
        let k = p.len();
        let touch: Vec<Vec<usize>> = (0..k)
            .map(|c| {
                let mut classes: Vec<usize> = g
                    .neighbors(&a.components[c].vertices)
                    .expect("component vertices are valid")
                    .into_iter()
                    .filter(|&v| a.component_of[v] == c0)
                    .map(|v| a.kl.class_of[v])
                    .collect();
                classes.sort_unstable();
                classes.dedup();
                classes
            })
            .collect();
        let keys = tooth_classes(a, &p.designation, c0);
        let mut seq = vec![c0];
        let mut on = vec![false; k];
        on[c0] = true;
        let mut budget = Budget::new(self.opts.max_walks);
        walk_sequences(p, &mut seq, &mut on, &mut budget, &mut |seq| {
            t.witnessed += 1;
            let mut met: Vec<usize> = seq[1..].iter().flat_map(|&c| touch[c].iter().copied()).collect();
            met.sort_unstable();
            met.dedup();
            if met.len() > 1 || met.iter().any(|s| !keys.contains(s)) {
                t.fail(Counterexample::ComponentPair {
                    lower: c0,
                    upper: *seq.last().unwrap(),
                    detail: format!("defining sequence {seq:?} meets classes {met:?}"),
                });
            }
        });
        t.truncated |= budget.truncated();
    }

    /// Components directly above `c0` seeded by different classes share no
    /// upper bound.
    fn no_diamond_at(&self, p: &DMPoset, c0: usize, t: &mut Tally) {
        let a = &self.analysis;
        let direct: Vec<(usize, Vec<usize>)> = (0..p.len())
            .filter(|&c| c != c0 && p.base[c0][c])
            .map(|c| (c, seed_classes(a, c, c0).expect("component vertices are valid")))
            .collect();
        for (i, (c1, s1)) in direct.iter().enumerate() {
            for (c2, s2) in &direct[i + 1..] {
                if s1 == s2 {
                    continue;
                }
                t.witnessed += 1;
                if let Some(top) = (0..p.len()).find(|&c| p.order[*c1][c] && p.order[*c2][c]) {
                    t.fail(Counterexample::ComponentPair {
                        lower: *c1,
                        upper: top,
                        detail: format!("{c1} and {c2} have distinct seeds above {c0} and share upper bound {top}"),
                    });
                }
            }
        }
    }
}

/// Extends `seq` along base steps through unused components, reporting
/// every sequence of length two or more.
fn walk_sequences(
    p: &DMPoset,
    seq: &mut Vec<usize>,
    on: &mut [bool],
    budget: &mut Budget,
    visit: &mut dyn FnMut(&[usize]),
) {
    let at = *seq.last().unwrap();
    for next in 0..p.len() {
        if on[next] || !p.base[at][next] {
            continue;
        }
        if !budget.spend() {
            return;
        }
        seq.push(next);
        on[next] = true;
        visit(seq);
        walk_sequences(p, seq, on, budget, visit);
        on[next] = false;
        seq.pop();
    }
}

/// Exhaustive count of labelings satisfying seeding and adjacency, stopped
/// once a second one is found.
struct LabelSearch<'a> {
    keys: &'a [usize],
    seeds: &'a [Option<usize>],
    adjacent: &'a [(usize, usize)],
    labels: Vec<usize>,
    found: usize,
    budget: Budget,
}

impl LabelSearch<'_> {
    fn extend(&mut self, i: usize) {
        if self.found > 1 || !self.budget.spend() {
            return;
        }
        if i == self.labels.len() {
            self.found += 1;
            return;
        }
        for &s in self.keys {
            if self.seeds[i].is_some_and(|seed| seed != s) {
                continue;
            }
            let clash = self.adjacent.iter().any(|&(j, k)| k == i && self.labels[j] != s);
            if clash {
                continue;
            }
            self.labels[i] = s;
            self.extend(i + 1);
        }
        self.labels[i] = usize::MAX;
    }
}
