//! Minimum joins in grafts and the canonical decompositions built on them:
//! factor-components, the general Kotzig-Lovász partition, comb-bipartite
//! designations, the Dulmage-Mendelsohn poset over factor-components and
//! the attributes of its upper bounds.
//!
//! Every engine result can be cross-checked against exhaustive enumeration
//! in [`oracle`], and [`verifier`] runs the structural theorems as
//! executable checks on any instance.

pub mod decomposition;
pub mod edgeset;
pub mod enumerate;
pub mod error;
pub mod generators;
pub mod graft;
pub mod graph;
pub mod options;
pub mod oracle;
pub mod tjoin;
pub mod verifier;
pub mod walk;

pub use edgeset::EdgeSet;
pub use error::{GraftError, Result};
pub use graft::{validate_graft, weight, Graft};
pub use graph::{EdgeId, Multigraph, VertexId};
pub use options::EngineOptions;
pub use walk::{is_balanced, is_ear, is_tooth_balanced, Walk, WalkKind};
