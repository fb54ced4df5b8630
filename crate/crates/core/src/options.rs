/// Size caps shared by the engine, the oracle and the verifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineOptions {
    /// Largest terminal set the subset matching table accepts.
    pub max_terminals: usize,
    /// Largest edge count exhaustive enumeration accepts.
    pub max_edges: usize,
    /// Longest path or circuit the verifier enumerates.
    pub max_path_len: usize,
    /// Most walks a single verifier enumeration may visit.
    pub max_walks: usize,
}

impl EngineOptions {
    pub const DEFAULT_MAX_TERMINALS: usize = 20;
    pub const DEFAULT_MAX_EDGES: usize = 20;
    pub const DEFAULT_MAX_PATH_LEN: usize = 12;
    pub const DEFAULT_MAX_WALKS: usize = 1_000_000;
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            max_terminals: Self::DEFAULT_MAX_TERMINALS,
            max_edges: Self::DEFAULT_MAX_EDGES,
            max_path_len: Self::DEFAULT_MAX_PATH_LEN,
            max_walks: Self::DEFAULT_MAX_WALKS,
        }
    }
}
