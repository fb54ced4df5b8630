use std::fmt::Write as _;

use graftdm::decomposition::{
    attributes_with, classic_dm, comb_designations, designation_from_spine, dm_relation_with, CombDesignation, DMPoset,
    GraftAnalysis,
};
use graftdm::generators::InstanceSpec;
use graftdm::tjoin::JoinEngine;
use graftdm::verifier::{verify_all, verify_all_with, CheckResult, CheckStatus};
use graftdm::{EngineOptions, Graft, GraftError, Multigraph, VertexId};
use serde_json::{json, Value};

use crate::document::GraftDocument;
use crate::dot;
use crate::error::{exit, CliError};

/// Output of one command: the machine report, the human summary and the
/// exit code the process should end with.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub exit: i32,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report {
            json,
            text,
            exit: exit::OK,
        }
    }
}

/// A parsed input graft plus the caps in force.
pub struct Input {
    pub graft: Graft,
    pub spine: Option<Vec<VertexId>>,
    pub opts: EngineOptions,
}

fn labels(g: &Multigraph, set: &[VertexId]) -> Vec<String> {
    set.iter().map(|&v| g.label(v).to_string()).collect()
}

fn braces(g: &Multigraph, set: &[VertexId]) -> String {
    format!("{{{}}}", labels(g, set).join(", "))
}

fn edge_json(g: &Multigraph, e: usize) -> Value {
    let (u, v) = g.endpoints(e);
    json!({ "id": e, "ends": [g.label(u), g.label(v)] })
}

fn edge_text(g: &Multigraph, e: usize) -> String {
    let (u, v) = g.endpoints(e);
    format!("e{e} {}-{}", g.label(u), g.label(v))
}

impl Input {
    fn g(&self) -> &Multigraph {
        self.graft.graph()
    }

    fn vertex(&self, label: &str) -> Result<VertexId, CliError> {
        Ok(self.g().vertex(label)?)
    }

    /// The hinted spine if the document has one, else the first comb
    /// designation of the canonical coloring. Fails with the reason the
    /// graft is not a comb.
    pub fn designation(&self, analysis: &GraftAnalysis<'_>) -> Result<CombDesignation, CliError> {
        let nu = analysis.engine.nu();
        if let Some(spine) = &self.spine {
            let d = designation_from_spine(&self.graft, spine)?;
            d.check_comb(&self.graft, nu)?;
            return Ok(d);
        }
        if let Some(d) = comb_designations(&self.graft, &self.opts)?.into_iter().next() {
            return Ok(d);
        }
        let color = self.g().bipartition().ok_or(GraftError::NotBipartite)?;
        let d = CombDesignation::from_coloring(&color, 0);
        d.check_comb(&self.graft, nu)?;
        Ok(d)
    }

    /// A component id given either as a vertex label or as a number.
    fn component(&self, analysis: &GraftAnalysis<'_>, key: &str) -> Result<usize, CliError> {
        if let Ok(v) = self.g().vertex(key) {
            return Ok(analysis.component_of[v]);
        }
        match key.parse::<usize>() {
            Ok(c) if c < analysis.components.len() => Ok(c),
            Ok(c) => Err(GraftError::UnknownComponent(c).into()),
            Err(_) => Err(GraftError::UnknownLabel(key.to_string()).into()),
        }
    }

    pub fn nu(&self) -> Result<Report, CliError> {
        let nu = JoinEngine::new(&self.graft, &self.opts)?.nu();
        Ok(Report::ok(json!({ "nu": nu }), format!("{nu}\n")))
    }

    pub fn minjoin(&self) -> Result<Report, CliError> {
        let r = JoinEngine::new(&self.graft, &self.opts)?.min_join()?;
        let g = self.g();
        let mut text = format!("nu = {}\n", r.nu);
        for e in r.join.iter() {
            writeln!(text, "{}", edge_text(g, e)).unwrap();
        }
        let join: Vec<Value> = r.join.iter().map(|e| edge_json(g, e)).collect();
        Ok(Report::ok(json!({ "nu": r.nu, "join": join }), text))
    }

    pub fn dist(&self, x: &str, y: &str) -> Result<Report, CliError> {
        let (vx, vy) = (self.vertex(x)?, self.vertex(y)?);
        let d = match JoinEngine::new(&self.graft, &self.opts)?.dist(vx, vy) {
            Ok(d) => Some(d),
            Err(GraftError::Disconnected(..)) => None,
            Err(e) => return Err(e.into()),
        };
        let text = match d {
            Some(d) => format!("{d}\n"),
            None => "unreachable\n".to_string(),
        };
        Ok(Report::ok(json!({ "x": x, "y": y, "dist": d }), text))
    }

    pub fn allowed(&self) -> Result<Report, CliError> {
        let allowed = JoinEngine::new(&self.graft, &self.opts)?.allowed_edges()?;
        let g = self.g();
        let mut text = String::new();
        let mut edges = Vec::new();
        for e in 0..g.edge_count() {
            let ok = allowed.contains(e);
            writeln!(text, "{} {}", edge_text(g, e), if ok { "allowed" } else { "-" }).unwrap();
            let mut v = edge_json(g, e);
            v["allowed"] = json!(ok);
            edges.push(v);
        }
        Ok(Report::ok(json!({ "edges": edges }), text))
    }

    pub fn components(&self) -> Result<Report, CliError> {
        let analysis = GraftAnalysis::new(&self.graft, &self.opts)?;
        let g = self.g();
        let mut text = String::new();
        let mut out = Vec::new();
        for c in &analysis.components {
            writeln!(text, "C{} {}", c.id, braces(g, &c.vertices)).unwrap();
            out.push(json!({ "id": c.id, "vertices": labels(g, &c.vertices), "edges": c.edges }));
        }
        Ok(Report::ok(json!({ "components": out }), text))
    }

    pub fn kl(&self) -> Result<Report, CliError> {
        let analysis = GraftAnalysis::new(&self.graft, &self.opts)?;
        let g = self.g();
        let mut text = String::new();
        let mut out = Vec::new();
        for (c, classes) in analysis.kl.component_classes.iter().enumerate() {
            let sets: Vec<String> = classes.iter().map(|&s| braces(g, &analysis.kl.classes[s])).collect();
            writeln!(text, "C{c}: {}", sets.join(" ")).unwrap();
            for &s in classes {
                out.push(json!({ "id": s, "component": c, "vertices": labels(g, &analysis.kl.classes[s]) }));
            }
        }
        out.sort_by_key(|v| v["id"].as_u64());
        Ok(Report::ok(json!({ "classes": out }), text))
    }

    pub fn comb(&self) -> Result<Report, CliError> {
        let g = self.g();
        let designations = match &self.spine {
            Some(spine) => {
                let nu = JoinEngine::new(&self.graft, &self.opts)?.nu();
                let d = designation_from_spine(&self.graft, spine)?;
                match d.check_comb(&self.graft, nu) {
                    Ok(()) => vec![d],
                    Err(GraftError::NotComb { .. } | GraftError::ToothNotTerminal(_)) => Vec::new(),
                    Err(e) => return Err(e.into()),
                }
            }
            None => comb_designations(&self.graft, &self.opts)?,
        };
        let mut text = format!(
            "comb-bipartite: {}\n",
            if designations.is_empty() { "no" } else { "yes" }
        );
        let mut out = Vec::new();
        for d in &designations {
            writeln!(text, "spine {} teeth {}", braces(g, &d.spine), braces(g, &d.teeth)).unwrap();
            out.push(json!({ "spine": labels(g, &d.spine), "teeth": labels(g, &d.teeth) }));
        }
        Ok(Report::ok(
            json!({ "comb": !designations.is_empty(), "designations": out }),
            text,
        ))
    }

    pub fn poset(&self) -> Result<Report, CliError> {
        let analysis = GraftAnalysis::new(&self.graft, &self.opts)?;
        let d = self.designation(&analysis)?;
        let p = dm_relation_with(&analysis, &d)?;
        Ok(poset_report(self.g(), &p))
    }

    pub fn attributes(&self, c0: &str) -> Result<Report, CliError> {
        let analysis = GraftAnalysis::new(&self.graft, &self.opts)?;
        let d = self.designation(&analysis)?;
        let p = dm_relation_with(&analysis, &d)?;
        let c0 = self.component(&analysis, c0)?;
        let map = attributes_with(&analysis, &p, c0)?;
        let g = self.g();
        let class = |s: usize| labels(g, &analysis.kl.classes[s]);
        let mut text = format!("C{c0} {}\n", braces(g, &p.components[c0].vertices));
        let mut buckets = Vec::new();
        for b in &map.buckets {
            let members: Vec<String> = b.members.iter().map(|c| format!("C{c}")).collect();
            writeln!(
                text,
                "{}: {}",
                braces(g, &analysis.kl.classes[b.class]),
                members.join(" ")
            )
            .unwrap();
            buckets.push(json!({ "class": class(b.class), "members": b.members }));
        }
        let labels_json: Vec<Value> = map
            .labels
            .iter()
            .map(|(&c, &s)| json!({ "component": c, "class": class(s) }))
            .collect();
        Ok(Report::ok(
            json!({ "base": c0, "buckets": buckets, "labels": labels_json }),
            text,
        ))
    }

    pub fn verify(&self) -> Result<Report, CliError> {
        let results = match &self.spine {
            Some(spine) => {
                let d = designation_from_spine(&self.graft, spine)?;
                verify_all_with(&self.graft, &[d], &self.opts)
            }
            None => verify_all(&self.graft, &self.opts),
        };
        Ok(verify_report(self.g(), &results))
    }

    pub fn dot(&self, c0: Option<&str>) -> Result<Report, CliError> {
        let analysis = GraftAnalysis::new(&self.graft, &self.opts)?;
        let mut text = dot::graft_dot(&analysis);
        let mut hasse = Value::Null;
        // the Hasse graph needs a comb; without one only the first graph is drawn
        let poset = match self.designation(&analysis) {
            Ok(d) => Some(dm_relation_with(&analysis, &d)?),
            Err(CliError::Graft(
                GraftError::NotComb { .. } | GraftError::ToothNotTerminal(_) | GraftError::NotBipartite,
            )) if c0.is_none() => None,
            Err(e) => return Err(e),
        };
        if let Some(p) = poset {
            let attrs = match c0 {
                Some(key) => {
                    let c0 = self.component(&analysis, key)?;
                    Some(attributes_with(&analysis, &p, c0)?)
                }
                None => None,
            };
            let h = dot::hasse_dot(&analysis, &p, attrs.as_ref());
            text.push('\n');
            text.push_str(&h);
            hasse = Value::String(h);
        }
        let json = json!({ "graft": dot::graft_dot(&analysis), "hasse": hasse });
        Ok(Report::ok(json, text))
    }
}

pub fn classic(g: &Multigraph, opts: &EngineOptions) -> Result<Report, CliError> {
    Ok(poset_report(g, &classic_dm(g, opts)?))
}

fn poset_report(g: &Multigraph, p: &DMPoset) -> Report {
    let mut text = format!("spine {}\n", braces(g, &p.designation.spine));
    let mut components = Vec::new();
    for c in &p.components {
        writeln!(text, "C{} {}", c.id, braces(g, &c.vertices)).unwrap();
        components.push(json!({ "id": c.id, "vertices": labels(g, &c.vertices) }));
    }
    let mut order = Vec::new();
    for i in 0..p.len() {
        for j in 0..p.len() {
            if i != j && p.order[i][j] {
                order.push(json!([i, j]));
            }
        }
    }
    for &(lo, hi) in &p.hasse {
        writeln!(text, "C{lo} < C{hi}").unwrap();
    }
    Report::ok(
        json!({
            "spine": labels(g, &p.designation.spine),
            "components": components,
            "order": order,
            "hasse": p.hasse,
        }),
        text,
    )
}

fn verify_report(g: &Multigraph, results: &[CheckResult]) -> Report {
    let mut text = String::new();
    for r in results {
        let status = match r.status {
            CheckStatus::Passed => "PASS",
            CheckStatus::Failed => "FAIL",
            CheckStatus::Skipped => "SKIP",
            CheckStatus::CapExceeded => "CAP ",
        };
        write!(text, "{status} {}", r.name).unwrap();
        if let Some(spine) = &r.spine {
            write!(text, " spine={}", braces(g, spine)).unwrap();
        }
        write!(text, " witnessed={}", r.witnessed).unwrap();
        if r.truncated {
            text.push_str(" truncated");
        }
        if let Some(note) = &r.note {
            write!(text, " ({note})").unwrap();
        }
        text.push('\n');
    }
    let exit = if results.iter().any(|r| r.status == CheckStatus::Failed) {
        exit::CHECK_FAILED
    } else if results.iter().any(|r| r.status == CheckStatus::CapExceeded) {
        exit::CAP
    } else {
        exit::OK
    };
    let json = json!({ "checks": serde_json::to_value(results).expect("results serialize") });
    Report { json, text, exit }
}

/// `gen <family> key=value…`: prints a graft document.
pub fn generate(family: &str, params: &[String], opts: &EngineOptions) -> Result<Report, CliError> {
    let mut kv = Params::parse(params)?;
    let spec = match family {
        "named" => InstanceSpec::Named(kv.text("name")?),
        "random" => InstanceSpec::Random {
            n: kv.num("n")?,
            m: kv.num("m")?,
            t_prob: kv.num_or("t", 0.5)?,
            seed: kv.num_or("seed", 0)?,
        },
        "comb" => InstanceSpec::Comb {
            spine: kv.num("spine")?,
            teeth: kv.num("teeth")?,
            m: kv.num("m")?,
            seed: kv.num_or("seed", 0)?,
            max_tries: kv.num_or("tries", 1000)?,
        },
        "planted" => InstanceSpec::Planted {
            spine: kv.num("spine")?,
            teeth: kv.num("teeth")?,
            m: kv.num("m")?,
            seed: kv.num_or("seed", 0)?,
        },
        "path" => InstanceSpec::Path { half: kv.num("half")? },
        "cycle" => InstanceSpec::Cycle { k: kv.num("k")? },
        "star" => InstanceSpec::Star {
            teeth: kv.num("teeth")?,
        },
        other => {
            return Err(CliError::Usage(format!(
                "unknown family `{other}` (expected named, random, comb, planted, path, cycle or star)"
            )))
        }
    };
    kv.finish()?;
    if let InstanceSpec::Star { teeth } = spec {
        if teeth % 2 == 1 {
            return Err(CliError::Usage("star needs an even number of teeth".into()));
        }
    }
    let (graft, designation) = spec.build(opts)?;
    let doc = GraftDocument::from_graft(&graft, designation.as_ref().map(|d| d.spine.as_slice()));
    let text = doc.to_json();
    let json = serde_json::to_value(&doc).expect("documents serialize");
    Ok(Report::ok(json, text))
}

struct Params(Vec<(String, String)>);

impl Params {
    fn parse(raw: &[String]) -> Result<Self, CliError> {
        let mut out: Vec<(String, String)> = Vec::new();
        for item in raw {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("parameter `{item}` is not key=value")))?;
            if out.iter().any(|(seen, _)| seen == k) {
                return Err(CliError::Usage(format!("parameter `{k}` given twice")));
            }
            out.push((k.to_string(), v.to_string()));
        }
        Ok(Params(out))
    }

    fn take(&mut self, key: &str) -> Option<String> {
        let i = self.0.iter().position(|(k, _)| k == key)?;
        Some(self.0.remove(i).1)
    }

    fn text(&mut self, key: &str) -> Result<String, CliError> {
        self.take(key)
            .ok_or_else(|| CliError::Usage(format!("missing parameter `{key}`")))
    }

    fn num<T: std::str::FromStr>(&mut self, key: &str) -> Result<T, CliError> {
        let raw = self.text(key)?;
        raw.parse()
            .map_err(|_| CliError::Usage(format!("parameter `{key}`: cannot parse `{raw}`")))
    }

    fn num_or<T: std::str::FromStr>(&mut self, key: &str, default: T) -> Result<T, CliError> {
        match self.0.iter().any(|(k, _)| k == key) {
            true => self.num(key),
            false => Ok(default),
        }
    }

    fn finish(self) -> Result<(), CliError> {
        match self.0.first() {
            Some((k, _)) => Err(CliError::Usage(format!("unknown parameter `{k}`"))),
            None => Ok(()),
        }
    }
}
