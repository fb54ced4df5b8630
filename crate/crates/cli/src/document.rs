//! The on-disk graft format: one JSON object per file.
//!
//! ```text
//! { "version": 1,
//!   "vertices": ["u", "v"],
//!   "edges": [["u", "v"]],
//!   "terminals": ["u", "v"],
//!   "spine": ["u"] }
//! ```
//!
//! Edge ids follow the order of `edges`. `spine` is optional and names the
//! spine side of a comb designation; every other vertex is a tooth.

use std::collections::HashMap;

use graftdm::{Graft, Multigraph, VertexId};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraftDocument {
    pub version: u32,
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
    pub terminals: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spine: Option<Vec<String>>,
}

impl GraftDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Syntax {
            line: e.line(),
            column: e.column(),
            message: strip_position(&e.to_string()),
        })
    }

    pub fn from_graft(graft: &Graft, spine: Option<&[VertexId]>) -> Self {
        let g = graft.graph();
        let label = |v: VertexId| g.label(v).to_string();
        GraftDocument {
            version: FORMAT_VERSION,
            vertices: g.labels().to_vec(),
            edges: g.edges().iter().map(|&(u, v)| [label(u), label(v)]).collect(),
            terminals: graft.terminals().iter().map(|&t| label(t)).collect(),
            spine: spine.map(|s| s.iter().map(|&v| label(v)).collect()),
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("documents always serialize");
        text.push('\n');
        text
    }

    /// Builds the graft and resolves the spine hint, if any.
    pub fn to_graft(&self) -> Result<(Graft, Option<Vec<VertexId>>), CliError> {
        if self.version != FORMAT_VERSION {
            return Err(CliError::semantic(
                "version",
                format!("unsupported version {}, expected {FORMAT_VERSION}", self.version),
            ));
        }
        let mut index = HashMap::with_capacity(self.vertices.len());
        for (i, label) in self.vertices.iter().enumerate() {
            if index.insert(label.as_str(), i).is_some() {
                return Err(CliError::semantic(
                    format!("vertices[{i}]"),
                    format!("duplicate label `{label}`"),
                ));
            }
        }
        let lookup = |path: String, label: &str| {
            index
                .get(label)
                .copied()
                .ok_or_else(|| CliError::semantic(path, format!("unknown label `{label}`")))
        };

        let mut edges = Vec::with_capacity(self.edges.len());
        for (i, [u, v]) in self.edges.iter().enumerate() {
            edges.push((
                lookup(format!("edges[{i}][0]"), u)?,
                lookup(format!("edges[{i}][1]"), v)?,
            ));
        }
        let terminals = self.resolve("terminals", &self.terminals, &lookup)?;
        let spine = match &self.spine {
            Some(s) => Some(self.resolve("spine", s, &lookup)?),
            None => None,
        };

        let g = Multigraph::from_ids(self.vertices.clone(), edges)?;
        let graft = Graft::new(g, &terminals).map_err(|e| match e {
            graftdm::GraftError::OddComponent(members) => {
                let names: Vec<&str> = members.iter().map(|&v| self.vertices[v].as_str()).collect();
                CliError::semantic(
                    "terminals",
                    format!("odd number of terminals in the component {{{}}}", names.join(", ")),
                )
            }
            other => other.into(),
        })?;
        Ok((graft, spine))
    }

    fn resolve(
        &self,
        field: &str,
        labels: &[String],
        lookup: &dyn Fn(String, &str) -> Result<VertexId, CliError>,
    ) -> Result<Vec<VertexId>, CliError> {
        let mut seen = vec![false; self.vertices.len()];
        let mut out = Vec::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            let v = lookup(format!("{field}[{i}]"), label)?;
            if std::mem::replace(&mut seen[v], true) {
                return Err(CliError::semantic(
                    format!("{field}[{i}]"),
                    format!("`{label}` listed twice"),
                ));
            }
            out.push(v);
        }
        Ok(out)
    }
}

/// serde_json appends " at line L column C"; we report those separately.
fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}
