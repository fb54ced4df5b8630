//! Command-line front end: reads a graft document, runs one computation and
//! writes a report. See [`document`] for the input format.

pub mod commands;
pub mod document;
pub mod dot;
pub mod error;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use graftdm::generators::named_instances;
use graftdm::EngineOptions;

use crate::commands::{Input, Report};
use crate::document::GraftDocument;
pub use crate::error::{exit, CliError};

#[derive(Debug, Parser)]
#[command(
    name = "graftdm",
    version,
    about = "Minimum joins and canonical decompositions of grafts"
)]
pub struct Cli {
    #[command(flatten)]
    pub source: Source,

    /// Print a JSON report instead of the human summary.
    #[arg(long, global = true)]
    pub json: bool,

    /// Largest terminal set the join engine accepts.
    #[arg(long, global = true, env = "GRAFT_MAX_T", default_value_t = EngineOptions::DEFAULT_MAX_TERMINALS)]
    pub max_t: usize,

    /// Largest edge count exhaustive enumeration accepts.
    #[arg(long, global = true, env = "GRAFT_MAX_E", default_value_t = EngineOptions::DEFAULT_MAX_EDGES)]
    pub max_e: usize,

    /// Longest path or circuit the verifier enumerates.
    #[arg(long, global = true, env = "GRAFT_MAX_PATH_LEN", default_value_t = EngineOptions::DEFAULT_MAX_PATH_LEN)]
    pub max_path_len: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(multiple = false)]
pub struct Source {
    /// Graft document to read.
    #[arg(long, short, global = true)]
    pub input: Option<PathBuf>,

    /// Built-in instance instead of a file.
    #[arg(long, global = true)]
    pub named: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Size of a minimum join.
    Nu,
    /// One minimum join.
    Minjoin,
    /// Distance between two vertices.
    Dist { x: String, y: String },
    /// Edges lying in some minimum join.
    Allowed,
    /// Factor-components.
    Components,
    /// Kotzig-Lovasz classes.
    Kl,
    /// Comb designations of the canonical coloring.
    Comb,
    /// Dulmage-Mendelsohn poset over factor-components.
    Poset,
    /// Attribute labels of the upper bounds of a component, given by
    /// component id or by one of its vertices.
    Attributes { c0: String },
    /// Classical Dulmage-Mendelsohn poset of the underlying graph.
    ClassicDm,
    /// Run every structural check.
    Verify,
    /// Generate a graft document: named, random, comb, planted, path, cycle, star.
    Gen {
        family: String,
        /// Parameters as key=value.
        params: Vec<String>,
    },
    /// Graphviz text for the components and the Hasse diagram.
    Dot {
        /// Annotate Hasse edges out of this component with attributes.
        #[arg(long)]
        c0: Option<String>,
    },
}

impl Cli {
    pub fn options(&self) -> EngineOptions {
        EngineOptions {
            max_terminals: self.max_t,
            max_edges: self.max_e,
            max_path_len: self.max_path_len,
            ..EngineOptions::default()
        }
    }

    fn load(&self) -> Result<GraftDocument, CliError> {
        match (&self.source.input, &self.source.named) {
            (Some(path), _) => {
                let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
                GraftDocument::parse(&text)
            }
            (None, Some(name)) => named_instances()
                .get(name)
                .map(|g| GraftDocument::from_graft(g, None))
                .ok_or_else(|| {
                    let known: Vec<String> = named_instances().into_keys().collect();
                    CliError::Usage(format!("unknown instance `{name}` (known: {})", known.join(", ")))
                }),
            (None, None) => Err(CliError::Usage("one of --input or --named is required".into())),
        }
    }

    pub fn execute(&self) -> Result<Report, CliError> {
        let opts = self.options();
        if let Command::Gen { family, params } = &self.command {
            return commands::generate(family, params, &opts);
        }
        let (graft, spine) = self.load()?.to_graft()?;
        if let Command::ClassicDm = self.command {
            return commands::classic(graft.graph(), &opts);
        }
        let input = Input { graft, spine, opts };
        match &self.command {
            Command::Nu => input.nu(),
            Command::Minjoin => input.minjoin(),
            Command::Dist { x, y } => input.dist(x, y),
            Command::Allowed => input.allowed(),
            Command::Components => input.components(),
            Command::Kl => input.kl(),
            Command::Comb => input.comb(),
            Command::Poset => input.poset(),
            Command::Attributes { c0 } => input.attributes(c0),
            Command::Verify => input.verify(),
            Command::Dot { c0 } => input.dot(c0.as_deref()),
            Command::Gen { .. } | Command::ClassicDm => unreachable!("handled above"),
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = match code {
                exit::OK => write!(out, "{}", e.render()),
                _ => write!(err, "{}", e.render()),
            };
            return code;
        }
    };
    let written = match cli.execute() {
        Ok(report) => emit(&cli, out, &report).map(|_| report.exit),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            let code = e.exit_code();
            if cli.json {
                let body = serde_json::json!({ "error": e.to_string(), "exit": code });
                emit_json(out, &body).map(|_| code)
            } else {
                Ok(code)
            }
        }
    };
    written.unwrap_or_else(|e| {
        let _ = writeln!(err, "error: writing output: {e}");
        exit::INPUT
    })
}

fn emit(cli: &Cli, out: &mut dyn Write, report: &Report) -> std::io::Result<()> {
    // gen always prints a document, which is already JSON
    if cli.json && !matches!(cli.command, Command::Gen { .. }) {
        emit_json(out, &report.json)
    } else {
        out.write_all(report.text.as_bytes())
    }
}

fn emit_json(out: &mut dyn Write, value: &serde_json::Value) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    writeln!(out, "{text}")
}
