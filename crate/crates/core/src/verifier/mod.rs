//! Executable forms of the structural statements about minimum joins,
//! distances and comb-bipartite decompositions.
//!
//! Each check enumerates the objects its statement quantifies over (paths,
//! circuits, ears, vertex pairs, defining sequences) up to the path-length
//! and walk caps of [`EngineOptions`], and reports how many were witnessed.
//! A pass with nothing witnessed is vacuous; a pass whose enumeration hit the
//! walk budget is marked truncated.

mod attributes;
mod comb;
mod ears;
mod general;

use serde::Serialize;

use crate::decomposition::{comb_designations, CombDesignation, GraftAnalysis};
use crate::enumerate::Budget;
use crate::error::{GraftError, Result};
use crate::graft::Graft;
use crate::graph::VertexId;
use crate::options::EngineOptions;
use crate::walk::Walk;

pub const CIRCUIT_LEMMA: &str = "circuit_lemma";
pub const DISTANCE_INVARIANCE: &str = "distance_invariance";
pub const NONPOSITIVE_DISTANCE: &str = "nonpositive_distance";
pub const KL_EQUIVALENCE: &str = "kl_equivalence";
pub const COMB_CHARACTERIZATION: &str = "comb_characterization";
pub const BALANCED_WEIGHTS: &str = "balanced_weights";
pub const INCOMPPATH: &str = "incomppath";
pub const DM_ANTISYMMETRY: &str = "dm_antisymmetry";
pub const EAR_LEMMAS: &str = "ear_lemmas";
pub const EAR_DISJOINTNESS: &str = "ear_disjointness";
pub const RELATIVEPATH: &str = "relativepath";
pub const ATTRIBUTE_PARTITION: &str = "attribute_partition";

/// Checks that only need the graft.
pub const GENERAL_CHECKS: [&str; 5] = [
    CIRCUIT_LEMMA,
    COMB_CHARACTERIZATION,
    DISTANCE_INVARIANCE,
    KL_EQUIVALENCE,
    NONPOSITIVE_DISTANCE,
];

/// Checks run once per comb designation.
pub const COMB_CHECKS: [&str; 7] = [
    ATTRIBUTE_PARTITION,
    BALANCED_WEIGHTS,
    DM_ANTISYMMETRY,
    EAR_DISJOINTNESS,
    EAR_LEMMAS,
    INCOMPPATH,
    RELATIVEPATH,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Passed,
    Failed,
    Skipped,
    CapExceeded,
}

/// Replayable evidence attached to a failing check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Counterexample {
    Walk { walk: Walk, detail: String },
    WalkPair { first: Walk, second: Walk, detail: String },
    VertexPair { x: VertexId, y: VertexId, detail: String },
    ComponentPair { lower: usize, upper: usize, detail: String },
    Component { component: usize, detail: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    /// Spine of the designation a comb check ran against.
    pub spine: Option<Vec<VertexId>>,
    pub status: CheckStatus,
    /// Objects the statement was exercised on.
    pub witnessed: usize,
    /// The enumeration stopped at the walk budget.
    pub truncated: bool,
    pub counterexample: Option<Counterexample>,
    pub note: Option<String>,
}

impl CheckResult {
    fn new(name: &str, spine: Option<&CombDesignation>, status: CheckStatus) -> Self {
        CheckResult {
            name: name.to_string(),
            spine: spine.map(|d| d.spine.clone()),
            status,
            witnessed: 0,
            truncated: false,
            counterexample: None,
            note: None,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    fn from_error(name: &str, spine: Option<&CombDesignation>, err: &GraftError) -> Self {
        let status = match err {
            GraftError::CapExceeded { .. } => CheckStatus::CapExceeded,
            GraftError::NotComb { .. } | GraftError::ToothNotTerminal(_) | GraftError::NotBipartite => {
                CheckStatus::Skipped
            }
            _ => CheckStatus::Failed,
        };
        let mut r = CheckResult::new(name, spine, status).with_note(err.to_string());
        if status == CheckStatus::Failed {
            r.counterexample = Some(match *err {
                GraftError::AntisymmetryViolation(i, j) => Counterexample::ComponentPair {
                    lower: i,
                    upper: j,
                    detail: err.to_string(),
                },
                GraftError::InconsistentLabeling { component, .. } | GraftError::UnlabeledUpperBound(component) => {
                    Counterexample::Component {
                        component,
                        detail: err.to_string(),
                    }
                }
                _ => Counterexample::Component {
                    component: 0,
                    detail: err.to_string(),
                },
            });
        }
        r
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Passed
    }

    pub fn failed(&self) -> bool {
        self.status == CheckStatus::Failed
    }

    pub fn vacuous(&self) -> bool {
        self.passed() && self.witnessed == 0
    }
}

/// Running state of one check.
struct Tally {
    witnessed: usize,
    counterexample: Option<Counterexample>,
    budget: Budget,
    /// Set by enumerations that keep their own budget.
    truncated: bool,
}

impl Tally {
    fn new(opts: &EngineOptions) -> Self {
        Tally {
            witnessed: 0,
            counterexample: None,
            budget: Budget::new(opts.max_walks),
            truncated: false,
        }
    }

    fn fail(&mut self, c: Counterexample) {
        if self.counterexample.is_none() {
            self.counterexample = Some(c);
        }
    }

    fn failed(&self) -> bool {
        self.counterexample.is_some()
    }

    fn finish(self, name: &str, spine: Option<&CombDesignation>) -> CheckResult {
        let status = if self.counterexample.is_some() {
            CheckStatus::Failed
        } else {
            CheckStatus::Passed
        };
        CheckResult {
            witnessed: self.witnessed,
            truncated: self.truncated || self.budget.truncated(),
            counterexample: self.counterexample,
            ..CheckResult::new(name, spine, status)
        }
    }
}

/// Shared analysis plus caps; every check borrows it.
pub struct Verifier<'a> {
    analysis: GraftAnalysis<'a>,
    opts: EngineOptions,
}

impl<'a> Verifier<'a> {
    pub fn new(graft: &'a Graft, opts: &EngineOptions) -> Result<Self> {
        Ok(Verifier {
            analysis: GraftAnalysis::new(graft, opts)?,
            opts: *opts,
        })
    }

    pub fn analysis(&self) -> &GraftAnalysis<'a> {
        &self.analysis
    }

    pub fn graft(&self) -> &Graft {
        self.analysis.graft()
    }

    /// Runs one check by name; comb checks need a designation.
    pub fn run(&self, name: &str, d: Option<&CombDesignation>) -> CheckResult {
        match (name, d) {
            (CIRCUIT_LEMMA, _) => self.check_circuit_lemma(),
            (DISTANCE_INVARIANCE, _) => self.check_distance_invariance(),
            (NONPOSITIVE_DISTANCE, _) => self.check_nonpositive_distance(),
            (KL_EQUIVALENCE, _) => self.check_kl_equivalence(),
            (COMB_CHARACTERIZATION, _) => self.check_comb_characterization(),
            (_, Some(d)) => self.run_comb(name, d),
            (_, None) => CheckResult::new(name, None, CheckStatus::Skipped).with_note("no comb designation"),
        }
    }

    fn run_comb(&self, name: &str, d: &CombDesignation) -> CheckResult {
        if let Err(e) = d
            .validate(self.graft())
            .and_then(|_| d.check_comb(self.graft(), self.analysis.engine.nu()))
        {
            return CheckResult::from_error(name, Some(d), &e);
        }
        match name {
            BALANCED_WEIGHTS => self.check_balanced_weights(d),
            INCOMPPATH => self.check_incomppath(d),
            DM_ANTISYMMETRY => self.check_dm_antisymmetry(d),
            EAR_LEMMAS => self.check_ear_lemmas(d),
            EAR_DISJOINTNESS => self.check_ear_disjointness(d),
            RELATIVEPATH => self.check_relativepath(d),
            ATTRIBUTE_PARTITION => self.check_attribute_partition(d),
            _ => CheckResult::new(name, Some(d), CheckStatus::Skipped).with_note("unknown check"),
        }
    }

    /// Teeth mask plus the induced edge set of each factor-component.
    fn comb_context(&self, d: &CombDesignation) -> (Vec<bool>, Vec<Vec<bool>>) {
        let g = self.graft().graph();
        let teeth = d.tooth_mask(g.vertex_count());
        let inside = self
            .analysis
            .components
            .iter()
            .map(|c| {
                let mut mask = vec![false; g.vertex_count()];
                for &v in &c.vertices {
                    mask[v] = true;
                }
                mask
            })
            .collect();
        (teeth, inside)
    }
}

/// Every applicable check on `graft`, with comb checks run for each comb
/// designation of its canonical coloring. Results are ordered by check name,
/// then spine.
pub fn verify_all(graft: &Graft, opts: &EngineOptions) -> Vec<CheckResult> {
    match comb_designations(graft, opts) {
        Ok(ds) => verify_all_with(graft, &ds, opts),
        Err(e) => capped(&e),
    }
}

/// [`verify_all`] against explicitly given designations.
pub fn verify_all_with(graft: &Graft, designations: &[CombDesignation], opts: &EngineOptions) -> Vec<CheckResult> {
    let verifier = match Verifier::new(graft, opts) {
        Ok(v) => v,
        Err(e) => return capped(&e),
    };
    let mut out: Vec<CheckResult> = GENERAL_CHECKS.iter().map(|name| verifier.run(name, None)).collect();
    for name in COMB_CHECKS {
        if designations.is_empty() {
            out.push(verifier.run(name, None));
        }
        for d in designations {
            out.push(verifier.run(name, Some(d)));
        }
    }
    out.sort_by(|a, b| (&a.name, &a.spine).cmp(&(&b.name, &b.spine)));
    out
}

fn capped(err: &GraftError) -> Vec<CheckResult> {
    let mut out: Vec<CheckResult> = GENERAL_CHECKS
        .iter()
        .chain(COMB_CHECKS.iter())
        .map(|name| CheckResult::from_error(name, None, err))
        .collect();
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{comb_cycle, named_instances};
    use crate::graph::Multigraph;

    fn all_pass(results: &[CheckResult]) -> bool {
        results.iter().all(|r| r.passed() || r.status == CheckStatus::Skipped)
    }

    #[test]
    fn named_instances_pass() {
        let opts = EngineOptions::default();
        for (name, graft) in named_instances() {
            let results = verify_all(&graft, &opts);
            assert!(all_pass(&results), "{name}: {results:#?}");
        }
    }

    #[test]
    fn sorted_by_name() {
        let results = verify_all(&named_instances()["P4"], &EngineOptions::default());
        let names: Vec<&str> = results.iter().map(|r| r.name.as_str()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
        // P4 is a comb under both role assignments
        assert_eq!(results.len(), GENERAL_CHECKS.len() + 2 * COMB_CHECKS.len());
    }

    #[test]
    fn non_comb_skips_comb_checks() {
        // C4 with two adjacent terminals: bipartite, ν = 1, two teeth either way
        let g = Multigraph::with_default_labels(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let graft = Graft::new(g, &[0, 1]).unwrap();
        let results = verify_all(&graft, &EngineOptions::default());
        for r in &results {
            if COMB_CHECKS.contains(&r.name.as_str()) {
                assert_eq!(r.status, CheckStatus::Skipped);
            } else {
                assert!(r.passed(), "{r:?}");
            }
        }
    }

    #[test]
    fn oversize_reports_cap() {
        let opts = EngineOptions {
            max_terminals: 2,
            ..EngineOptions::default()
        };
        let results = verify_all(&named_instances()["C8"], &opts);
        assert!(results.iter().all(|r| r.status == CheckStatus::CapExceeded));
        assert_eq!(results.len(), GENERAL_CHECKS.len() + COMB_CHECKS.len());
    }

    #[test]
    fn c8_comb_witnesses() {
        let inst = comb_cycle(2);
        let results = verify_all_with(
            &inst.graft,
            std::slice::from_ref(&inst.designation),
            &EngineOptions::default(),
        );
        assert!(all_pass(&results), "{results:#?}");
        let witnessed = |n: &str| results.iter().find(|r| r.name == n).unwrap().witnessed;
        assert!(witnessed(CIRCUIT_LEMMA) > 0);
        assert!(witnessed(BALANCED_WEIGHTS) > 0);
        assert!(witnessed(INCOMPPATH) > 0);
    }
}
