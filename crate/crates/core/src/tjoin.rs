//! Exact minimum joins at desk scale.
//!
//! ν(G, T) is a minimum-weight perfect matching on `T` under unit-edge
//! shortest path lengths. The matching is solved for every subset of `T` at
//! once by dynamic programming over bitmasks, which also answers
//! ν(G, T Δ {x, y}) for all pairs in `O(|T|²)` each. Distances follow from
//!
//! ```text
//! d(x, y) = ν(G, T Δ {x, y}) − ν(G, T)      (x ≠ y)
//! ```
//!
//! and concrete joins are produced greedily in lexicographic edge order, one
//! forced-edge ν recomputation per edge.

use std::collections::VecDeque;
use std::sync::OnceLock;

use serde::Serialize;

use crate::edgeset::EdgeSet;
use crate::error::{GraftError, Result};
use crate::graft::Graft;
use crate::graph::{EdgeId, Multigraph, VertexId};
use crate::options::EngineOptions;
use crate::walk::{Walk, WalkKind};

const INF: u32 = u32::MAX / 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinJoinResult {
    pub nu: usize,
    pub join: EdgeSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathWitness {
    pub walk: Walk,
    pub weight: i64,
}

/// Minimum perfect matching cost of every subset of a terminal list.
struct MatchingTable {
    terminals: Vec<VertexId>,
    /// `lengths[i][v]`: shortest path length from terminal `i` to `v`.
    lengths: Vec<Vec<u32>>,
    best: Vec<u32>,
}

impl MatchingTable {
    fn build(g: &Multigraph, is_terminal: &[bool], removed: Option<&EdgeSet>) -> Self {
        let terminals: Vec<VertexId> = g.vertices().filter(|&v| is_terminal[v]).collect();
        let lengths: Vec<Vec<u32>> = terminals
            .iter()
            .map(|&t| {
                g.bfs_lengths(t, removed)
                    .into_iter()
                    .map(|d| if d == u32::MAX { INF } else { d })
                    .collect()
            })
            .collect();
        let k = terminals.len();
        let pair: Vec<Vec<u32>> = (0..k)
            .map(|i| (0..k).map(|j| lengths[i][terminals[j]]).collect())
            .collect();
        let mut best = vec![INF; 1usize << k];
        best[0] = 0;
        for mask in 1usize..(1 << k) {
            if mask.count_ones() % 2 == 1 {
                continue;
            }
            let low = mask.trailing_zeros() as usize;
            let rest = mask ^ (1 << low);
            let mut b = INF;
            let mut r = rest;
            while r != 0 {
                let j = r.trailing_zeros() as usize;
                r &= r - 1;
                b = b.min(pair[low][j] + best[rest ^ (1 << j)]);
            }
            best[mask] = b.min(INF);
        }
        MatchingTable {
            terminals,
            lengths,
            best,
        }
    }

    fn full_mask(&self) -> usize {
        (1usize << self.terminals.len()) - 1
    }

    fn full(&self) -> u32 {
        self.best[self.full_mask()]
    }

    fn index(&self, v: VertexId) -> Option<usize> {
        self.terminals.binary_search(&v).ok()
    }

    /// ν for the terminal set `T Δ {x, y}`, `x ≠ y`. `pair_len` gives the
    /// distance between the two when neither is a terminal.
    fn toggled(&self, x: VertexId, y: VertexId, pair_len: u32) -> u32 {
        let full = self.full_mask();
        let k = self.terminals.len();
        let value = match (self.index(x), self.index(y)) {
            (Some(i), Some(j)) => self.best[full ^ (1 << i) ^ (1 << j)],
            (Some(i), None) | (None, Some(i)) => {
                let other = if self.index(x).is_some() { y } else { x };
                let rest = full ^ (1 << i);
                (0..k)
                    .filter(|&t| rest & (1 << t) != 0)
                    .map(|t| self.lengths[t][other] + self.best[rest ^ (1 << t)])
                    .min()
                    .unwrap_or(INF)
            }
            (None, None) => {
                let mut b = pair_len.min(INF) + self.best[full];
                for t in 0..k {
                    for s in 0..k {
                        if s != t {
                            let c = self.lengths[t][x] + self.lengths[s][y] + self.best[full ^ (1 << t) ^ (1 << s)];
                            b = b.min(c);
                        }
                    }
                }
                b
            }
        };
        value.min(INF)
    }
}

fn check_terminal_cap(count: usize, limit: usize) -> Result<()> {
    if count > limit {
        return Err(GraftError::CapExceeded {
            what: "|T|",
            limit,
            actual: count,
        });
    }
    Ok(())
}

/// Lexicographically least minimum join of `(g, mask)` with known size `nu`.
fn lex_min_join(g: &Multigraph, mask: &[bool], nu: usize) -> EdgeSet {
    let m = g.edge_count();
    let mut removed = EdgeSet::new(m);
    let mut terminals = mask.to_vec();
    let mut remaining = nu;
    let mut join = EdgeSet::new(m);
    for e in 0..m {
        if remaining == 0 {
            break;
        }
        removed.insert(e);
        if g.is_loop(e) {
            continue;
        }
        let (u, v) = g.endpoints(e);
        let mut forced = terminals.clone();
        forced[u] ^= true;
        forced[v] ^= true;
        let rest = MatchingTable::build(g, &forced, Some(&removed)).full();
        if (rest as usize) + 1 == remaining {
            terminals = forced;
            remaining -= 1;
            join.insert(e);
        }
    }
    debug_assert_eq!(remaining, 0);
    join
}

/// Minimum-join machinery for one graft. Construction fills the subset
/// table; concrete joins and allowed edges are computed on demand and the
/// reference join is cached.
pub struct JoinEngine<'a> {
    graft: &'a Graft,
    opts: EngineOptions,
    component: Vec<usize>,
    table: MatchingTable,
    reference: OnceLock<MinJoinResult>,
}

impl<'a> JoinEngine<'a> {
    pub fn new(graft: &'a Graft, opts: &EngineOptions) -> Result<Self> {
        check_terminal_cap(graft.terminals().len(), opts.max_terminals)?;
        let g = graft.graph();
        let table = MatchingTable::build(g, graft.terminal_mask(), None);
        debug_assert!(table.full() < INF, "graft parity guarantees a join");
        Ok(JoinEngine {
            graft,
            opts: *opts,
            component: g.component_index(),
            table,
            reference: OnceLock::new(),
        })
    }

    pub fn graft(&self) -> &Graft {
        self.graft
    }

    pub fn nu(&self) -> usize {
        self.table.full() as usize
    }

    /// The lexicographically least minimum join.
    pub fn min_join(&self) -> Result<MinJoinResult> {
        Ok(self.reference().clone())
    }

    fn reference(&self) -> &MinJoinResult {
        self.reference.get_or_init(|| {
            let join = lex_min_join(self.graft.graph(), self.graft.terminal_mask(), self.nu());
            MinJoinResult { nu: self.nu(), join }
        })
    }

    fn connected(&self, x: VertexId, y: VertexId) -> Result<()> {
        let g = self.graft.graph();
        g.check_vertex(x)?;
        g.check_vertex(y)?;
        if self.component[x] != self.component[y] {
            return Err(GraftError::Disconnected(x, y));
        }
        Ok(())
    }

    /// ν(G, T Δ {x, y}) for connected `x ≠ y`.
    fn nu_toggled(&self, x: VertexId, y: VertexId) -> usize {
        let pair_len = if self.table.index(x).is_none() && self.table.index(y).is_none() {
            self.graft.graph().bfs_lengths(x, None)[y]
        } else {
            INF
        };
        let v = self.table.toggled(x, y, pair_len);
        debug_assert!(v < INF);
        v as usize
    }

    /// Minimum weight of an `x`–`y` path under any minimum join; `d(x, x) = 0`.
    pub fn dist(&self, x: VertexId, y: VertexId) -> Result<i64> {
        self.connected(x, y)?;
        if x == y {
            return Ok(0);
        }
        Ok(self.nu_toggled(x, y) as i64 - self.nu() as i64)
    }

    /// All pairwise distances; `None` for pairs in different components.
    pub fn distance_matrix(&self) -> Vec<Vec<Option<i64>>> {
        let g = self.graft.graph();
        let n = g.vertex_count();
        let mut out = vec![vec![None; n]; n];
        for x in 0..n {
            let from_x = g.bfs_lengths(x, None);
            out[x][x] = Some(0);
            for y in x + 1..n {
                if self.component[x] != self.component[y] {
                    continue;
                }
                let d = self.table.toggled(x, y, from_x[y]) as i64 - self.nu() as i64;
                out[x][y] = Some(d);
                out[y][x] = Some(d);
            }
        }
        out
    }

    /// Whether some minimum join contains `e`: ν(G − e, T Δ ends(e)) = ν − 1.
    pub fn is_allowed(&self, e: EdgeId) -> Result<bool> {
        let g = self.graft.graph();
        g.check_edge(e)?;
        if g.is_loop(e) || self.nu() == 0 {
            return Ok(false);
        }
        if self.reference.get().is_some_and(|r| r.join.contains(e)) {
            return Ok(true);
        }
        let (u, v) = g.endpoints(e);
        let mut forced = self.graft.terminal_mask().to_vec();
        forced[u] ^= true;
        forced[v] ^= true;
        let count = forced.iter().filter(|&&t| t).count();
        check_terminal_cap(count, self.opts.max_terminals + 2)?;
        let removed = EdgeSet::from_ids(g.edge_count(), [e]);
        let rest = MatchingTable::build(g, &forced, Some(&removed)).full();
        // an infeasible residual graft shows up as INF
        Ok(rest < INF && rest as usize + 1 == self.nu())
    }

    pub fn allowed_edges(&self) -> Result<EdgeSet> {
        let g = self.graft.graph();
        let mut out = EdgeSet::new(g.edge_count());
        for e in 0..g.edge_count() {
            if self.is_allowed(e)? {
                out.insert(e);
            }
        }
        Ok(out)
    }

    /// A simple `x`–`y` path of weight `d(x, y)` under the reference join.
    ///
    /// With `F'` a minimum join of `(G, T Δ {x, y})`, `F Δ F'` splits into one
    /// `x`–`y` path and circuits of nonnegative weight summing to zero
    /// together with the path's excess, so any `x`–`y` path inside it works.
    pub fn shortest_path_witness(&self, x: VertexId, y: VertexId) -> Result<PathWitness> {
        self.connected(x, y)?;
        if x == y {
            return Err(GraftError::InvalidWalk("witness endpoints must differ".into()));
        }
        let g = self.graft.graph();
        let mut mask = self.graft.terminal_mask().to_vec();
        mask[x] ^= true;
        mask[y] ^= true;
        check_terminal_cap(mask.iter().filter(|&&t| t).count(), self.opts.max_terminals + 2)?;
        let toggled_nu = self.nu_toggled(x, y);
        let other = lex_min_join(g, &mask, toggled_nu);
        let reference = &self.reference().join;
        let diff = reference.symmetric_difference(&other);

        let mut parent: Vec<Option<EdgeId>> = vec![None; g.vertex_count()];
        let mut seen = vec![false; g.vertex_count()];
        seen[x] = true;
        let mut queue = VecDeque::from([x]);
        while let Some(v) = queue.pop_front() {
            for &e in g.incident(v) {
                if !diff.contains(e) {
                    continue;
                }
                let w = g.opposite(e, v);
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(e);
                    queue.push_back(w);
                }
            }
        }
        assert!(seen[y], "symmetric difference must connect x and y");
        let mut edges = Vec::new();
        let mut at = y;
        while at != x {
            let e = parent[at].unwrap();
            edges.push(e);
            at = g.opposite(e, at);
        }
        edges.reverse();
        let walk = Walk::trace(g, WalkKind::Path, x, edges)?;
        let weight = walk.weight(reference);
        debug_assert_eq!(weight, toggled_nu as i64 - self.nu() as i64);
        Ok(PathWitness { walk, weight })
    }
}

pub fn nu(graft: &Graft, opts: &EngineOptions) -> Result<usize> {
    Ok(JoinEngine::new(graft, opts)?.nu())
}

pub fn min_join(graft: &Graft, opts: &EngineOptions) -> Result<MinJoinResult> {
    JoinEngine::new(graft, opts)?.min_join()
}

pub fn is_allowed(graft: &Graft, e: EdgeId, opts: &EngineOptions) -> Result<bool> {
    JoinEngine::new(graft, opts)?.is_allowed(e)
}

pub fn allowed_edges(graft: &Graft, opts: &EngineOptions) -> Result<EdgeSet> {
    JoinEngine::new(graft, opts)?.allowed_edges()
}

pub fn dist(graft: &Graft, x: VertexId, y: VertexId, opts: &EngineOptions) -> Result<i64> {
    JoinEngine::new(graft, opts)?.dist(x, y)
}

pub fn shortest_path_witness(graft: &Graft, x: VertexId, y: VertexId, opts: &EngineOptions) -> Result<PathWitness> {
    JoinEngine::new(graft, opts)?.shortest_path_witness(x, y)
}
